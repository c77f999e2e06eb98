//! The N-computer: DNA-strand main memory, a control unit (the read, write,
//! delete, search and register transfer operations), a Game-of-Life ALU
//! and a self-replicating colony.

mod colony;
mod dna;
mod machine;
mod memory;
mod strandfile;

pub use colony::{Colony, ColonyEvent};
pub use dna::{binary_to_dna, dna_to_binary, Base, Bits, DnaStrand, EncodingStyle};
pub use machine::{register_names, AluConfig, MachineId, NComputer, Register};
pub use memory::{Address, DnaMemory, Hit, ADDRESS_BITS, DEFAULT_SEGMENT_LEN, PAYLOAD_BITS, STRAND_LEN};
pub use strandfile::{load_memory, parse_strands, write_strands, StrandFileError};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NcompError {
    #[error("invalid base {ch:?} at position {position}")]
    InvalidBase { ch: char, position: usize },
    #[error("invalid bit {ch:?} at position {position}")]
    InvalidBit { ch: char, position: usize },
    #[error("address {0} does not fit in {ADDRESS_BITS} bits")]
    AddressOutOfRange(u32),
    #[error("strand has {found} bases, expected {expected}")]
    StrandLength { expected: usize, found: usize },
    #[error("no strand stored at address {0}")]
    MissingStrand(Address),
    #[error("address {0} lies in the protected replication segment")]
    ProtectedRegion(Address),
    #[error("address {0} appears more than once")]
    DuplicateAddress(Address),
    #[error("expected {expected} bits, got {found}")]
    WidthMismatch { expected: usize, found: usize },
    #[error("{width} bits exceed the ALU grid capacity of {capacity} cells")]
    Capacity { width: usize, capacity: usize },
    #[error("no register named {0}")]
    UnknownRegister(String),
    #[error("machine {0} is dead")]
    DeadMachine(MachineId),
    #[error("machine {0} has an empty replication segment")]
    SterileMachine(MachineId),
    #[error("colony has no machine to replicate from")]
    ExtinctColony,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
