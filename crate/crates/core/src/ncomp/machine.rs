use std::fmt;

use super::dna::{binary_to_dna, dna_to_binary, Bits, EncodingStyle};
use super::memory::{Address, DnaMemory, PAYLOAD_BITS};
use super::NcompError;
use crate::lifeca::{Grid, Torus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MachineId(pub u64);

impl fmt::Display for MachineId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Register {
    name: String,
    bits: Bits,
}

impl Register {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn bits(&self) -> &Bits {
        &self.bits
    }

    pub fn width(&self) -> usize {
        self.bits.len()
    }
}

/// Toroidal Life grid the ALU runs and how many generations it runs for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AluConfig {
    pub width: usize,
    pub height: usize,
    pub steps: usize,
}

impl AluConfig {
    pub fn capacity(&self) -> usize {
        self.width * self.height
    }
}

impl Default for AluConfig {
    /// 12×8 grid, exactly one payload wide.
    fn default() -> Self {
        Self { width: 12, height: 8, steps: 4 }
    }
}

/// Names `AX, BX, CX, ...`.
pub fn register_names(count: usize) -> Vec<String> {
    (0..count).map(|i| format!("{}X", (b'A' + (i % 26) as u8) as char)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NComputer {
    id: MachineId,
    memory: DnaMemory,
    registers: Vec<Register>,
    alu: AluConfig,
    alive: bool,
}

impl NComputer {
    /// At least two registers, all `register_width` bits wide and no wider
    /// than the ALU grid.
    pub fn new(
        id: MachineId,
        memory: DnaMemory,
        register_names: &[String],
        register_width: usize,
        alu: AluConfig,
    ) -> Result<Self, NcompError> {
        if register_names.len() < 2 {
            return Err(NcompError::InvalidConfig("a machine needs at least two registers".into()));
        }
        if alu.width == 0 || alu.height == 0 {
            return Err(NcompError::InvalidConfig("ALU grid must be at least 1x1".into()));
        }
        if register_width > alu.capacity() {
            return Err(NcompError::Capacity { width: register_width, capacity: alu.capacity() });
        }
        let mut registers: Vec<Register> = Vec::with_capacity(register_names.len());
        for name in register_names {
            if registers.iter().any(|r| &r.name == name) {
                return Err(NcompError::InvalidConfig(format!("duplicate register {name}")));
            }
            registers.push(Register { name: name.clone(), bits: Bits::zeros(register_width) });
        }
        Ok(Self { id, memory, registers, alu, alive: true })
    }

    /// `AX` and `BX`, 96 bits wide, default ALU.
    pub fn with_memory(id: MachineId, memory: DnaMemory) -> Self {
        Self::new(id, memory, &register_names(2), PAYLOAD_BITS, AluConfig::default())
            .expect("default configuration is valid")
    }

    pub fn id(&self) -> MachineId {
        self.id
    }

    pub fn memory(&self) -> &DnaMemory {
        &self.memory
    }

    pub fn memory_mut(&mut self) -> &mut DnaMemory {
        &mut self.memory
    }

    pub fn registers(&self) -> &[Register] {
        &self.registers
    }

    pub fn alu(&self) -> AluConfig {
        self.alu
    }

    pub fn set_alu_steps(&mut self, steps: usize) {
        self.alu.steps = steps;
    }

    pub fn is_alive(&self) -> bool {
        self.alive
    }

    pub(crate) fn set_alive(&mut self, alive: bool) {
        self.alive = alive;
    }

    pub fn register(&self, name: &str) -> Result<&Register, NcompError> {
        self.registers
            .iter()
            .find(|r| r.name == name)
            .ok_or_else(|| NcompError::UnknownRegister(name.to_string()))
    }

    fn register_mut(&mut self, name: &str) -> Result<&mut Register, NcompError> {
        self.registers
            .iter_mut()
            .find(|r| r.name == name)
            .ok_or_else(|| NcompError::UnknownRegister(name.to_string()))
    }

    pub fn set_register(&mut self, name: &str, bits: Bits) -> Result<(), NcompError> {
        let reg = self.register_mut(name)?;
        if bits.len() != reg.width() {
            return Err(NcompError::WidthMismatch { expected: reg.width(), found: bits.len() });
        }
        reg.bits = bits;
        Ok(())
    }

    /// Register contents laid row-major from the top-left of the ALU torus;
    /// the remaining cells are dead.
    pub fn alu_layout(&self, bits: &Bits) -> Result<Torus, NcompError> {
        if bits.len() > self.alu.capacity() {
            return Err(NcompError::Capacity { width: bits.len(), capacity: self.alu.capacity() });
        }
        let mut cells = bits.as_slice().to_vec();
        cells.resize(self.alu.capacity(), false);
        Ok(Torus::from_cells(self.alu.width, self.alu.height, cells).expect("sized to capacity"))
    }

    /// Runs the register through the ALU automaton and writes the result back.
    pub fn alu_execute(&mut self, name: &str) -> Result<Bits, NcompError> {
        let input = self.register(name)?.bits.clone();
        let grid = Grid::from(self.alu_layout(&input)?).run(self.alu.steps);
        let Grid::Toroidal(out) = grid else { unreachable!("ALU grid is toroidal") };
        let output = Bits::new(out.cells()[..input.len()].to_vec());
        self.register_mut(name)?.bits = output.clone();
        Ok(output)
    }

    /// Decodes the payload at `address` into a 96-bit register.
    pub fn load_register(&mut self, name: &str, address: Address) -> Result<(), NcompError> {
        let width = self.register(name)?.width();
        if width != PAYLOAD_BITS {
            return Err(NcompError::WidthMismatch { expected: PAYLOAD_BITS, found: width });
        }
        let bits = self.memory.read(address)?;
        self.register_mut(name)?.bits = bits;
        Ok(())
    }

    /// Encodes a 96-bit register canonically and writes it at `address`.
    pub fn store_register(&mut self, name: &str, address: Address) -> Result<(), NcompError> {
        let reg = self.register(name)?;
        if reg.width() != PAYLOAD_BITS {
            return Err(NcompError::WidthMismatch { expected: PAYLOAD_BITS, found: reg.width() });
        }
        let bits = dna_to_binary(&binary_to_dna(&reg.bits, EncodingStyle::Canonical));
        self.memory.write(address, &bits)
    }

    /// 96-bit description of this machine's configuration: ALU width,
    /// height and steps (16 bits each), register count (8) and width (16);
    /// the remaining 24 bits are zero.
    pub fn blueprint(&self) -> Bits {
        let fields: [(u128, u32); 5] = [
            (self.alu.width as u128, 16),
            (self.alu.height as u128, 16),
            (self.alu.steps as u128, 16),
            (self.registers.len() as u128, 8),
            (self.registers.first().map_or(0, |r| r.width()) as u128, 16),
        ];
        let mut value = 0u128;
        let mut used = 0;
        for (v, bits) in fields {
            value = value << bits | (v & ((1 << bits) - 1));
            used += bits;
        }
        Bits::from_u128(value << (PAYLOAD_BITS as u32 - used), PAYLOAD_BITS)
    }

    /// Writes [`blueprint`](Self::blueprint) to the first address of the
    /// replication segment.
    pub fn install_blueprint(&mut self) -> Result<(), NcompError> {
        let bits = self.blueprint();
        let address = *self.memory.replication_segment().start();
        let was_unlocked = self.memory.is_unlocked();
        self.memory.set_unlocked(true);
        let result = self.memory.write(address, &bits);
        self.memory.set_unlocked(was_unlocked);
        result
    }

    pub fn is_fertile(&self) -> bool {
        self.memory.segment_strands().next().is_some()
    }

    /// Deep copy under a fresh id; the child starts alive.
    pub fn replicate(&self, new_id: MachineId) -> Result<NComputer, NcompError> {
        if !self.alive {
            return Err(NcompError::DeadMachine(self.id));
        }
        if !self.is_fertile() {
            return Err(NcompError::SterileMachine(self.id));
        }
        Ok(NComputer { id: new_id, alive: true, ..self.clone() })
    }
}
