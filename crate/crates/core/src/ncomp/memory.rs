//! Addressed DNA main memory.
//!
//! Each stored strand is 115 bases: a 19-base address followed by a 96-base
//! payload. A reserved address range, the replication segment, holds the
//! machine's own construction description and rejects ordinary writes
//! unless explicitly unlocked.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;

use super::dna::{binary_to_dna, dna_to_binary, Base, Bits, DnaStrand, EncodingStyle};
use super::NcompError;

pub const ADDRESS_BITS: usize = 19;
pub const PAYLOAD_BITS: usize = 96;
pub const STRAND_LEN: usize = ADDRESS_BITS + PAYLOAD_BITS;

/// Number of addresses reserved for the replication segment by default.
pub const DEFAULT_SEGMENT_LEN: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Address(u32);

impl Address {
    pub const MAX: Address = Address((1 << ADDRESS_BITS) - 1);

    pub fn new(value: u32) -> Result<Self, NcompError> {
        if value > Self::MAX.0 {
            return Err(NcompError::AddressOutOfRange(value));
        }
        Ok(Self(value))
    }

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn to_bits(self) -> Bits {
        Bits::from_u128(self.0 as u128, ADDRESS_BITS)
    }

    /// Reads the first 19 bases of a strand.
    pub fn from_strand(strand: &DnaStrand) -> Result<Self, NcompError> {
        if strand.len() < ADDRESS_BITS {
            return Err(NcompError::StrandLength { expected: STRAND_LEN, found: strand.len() });
        }
        let prefix = DnaStrand::new(strand.bases()[..ADDRESS_BITS].to_vec());
        Ok(Self(dna_to_binary(&prefix).to_u128().expect("19 bits") as u32))
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One search hit: `offset` is the base index inside the payload.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Hit {
    pub address: Address,
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DnaMemory {
    strands: BTreeMap<Address, DnaStrand>,
    replication_segment: RangeInclusive<Address>,
    unlocked: bool,
}

impl Default for DnaMemory {
    fn default() -> Self {
        Self::new()
    }
}

impl DnaMemory {
    /// Empty memory; the top 64 addresses form the replication segment.
    pub fn new() -> Self {
        let start = Address(Address::MAX.0 + 1 - DEFAULT_SEGMENT_LEN);
        Self::with_segment(start..=Address::MAX).expect("default segment is valid")
    }

    pub fn with_segment(segment: RangeInclusive<Address>) -> Result<Self, NcompError> {
        if segment.start() > segment.end() {
            return Err(NcompError::InvalidConfig("replication segment is empty".into()));
        }
        Ok(Self { strands: BTreeMap::new(), replication_segment: segment, unlocked: false })
    }

    /// Memory image from full 115-base strands. The image may populate the
    /// replication segment; duplicate addresses are rejected.
    pub fn from_strands(strands: impl IntoIterator<Item = DnaStrand>) -> Result<Self, NcompError> {
        let mut mem = Self::new();
        for strand in strands {
            let address = check_strand(&strand)?;
            if mem.strands.insert(address, strand).is_some() {
                return Err(NcompError::DuplicateAddress(address));
            }
        }
        Ok(mem)
    }

    pub fn replication_segment(&self) -> &RangeInclusive<Address> {
        &self.replication_segment
    }

    pub fn in_segment(&self, address: Address) -> bool {
        self.replication_segment.contains(&address)
    }

    pub fn set_unlocked(&mut self, unlocked: bool) {
        self.unlocked = unlocked;
    }

    pub fn is_unlocked(&self) -> bool {
        self.unlocked
    }

    pub fn len(&self) -> usize {
        self.strands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strands.is_empty()
    }

    pub fn strands(&self) -> impl Iterator<Item = (Address, &DnaStrand)> {
        self.strands.iter().map(|(&a, s)| (a, s))
    }

    pub fn strand(&self, address: Address) -> Option<&DnaStrand> {
        self.strands.get(&address)
    }

    /// Strands stored inside the replication segment.
    pub fn segment_strands(&self) -> impl Iterator<Item = (Address, &DnaStrand)> {
        self.strands.range(self.replication_segment.clone()).map(|(&a, s)| (a, s))
    }

    /// Lowest address outside the replication segment holding a strand.
    pub fn first_data_address(&self) -> Option<Address> {
        self.strands.keys().copied().find(|a| !self.in_segment(*a))
    }

    fn check_writable(&self, address: Address) -> Result<(), NcompError> {
        if self.in_segment(address) && !self.unlocked {
            return Err(NcompError::ProtectedRegion(address));
        }
        Ok(())
    }

    /// Stores `payload` at `address` with both parts encoded canonically,
    /// replacing any previous strand there.
    pub fn write(&mut self, address: Address, payload: &Bits) -> Result<(), NcompError> {
        self.write_styled(address, payload, EncodingStyle::Canonical)
    }

    /// Like [`write`](Self::write) but the payload bases follow `style`.
    pub fn write_styled(
        &mut self,
        address: Address,
        payload: &Bits,
        style: EncodingStyle,
    ) -> Result<(), NcompError> {
        if payload.len() != PAYLOAD_BITS {
            return Err(NcompError::WidthMismatch { expected: PAYLOAD_BITS, found: payload.len() });
        }
        self.check_writable(address)?;
        let strand = binary_to_dna(&address.to_bits(), EncodingStyle::Canonical)
            .concat(&binary_to_dna(payload, style));
        self.strands.insert(address, strand);
        Ok(())
    }

    /// Stores a full strand at the address it carries.
    pub fn write_strand(&mut self, strand: DnaStrand) -> Result<Address, NcompError> {
        let address = check_strand(&strand)?;
        self.check_writable(address)?;
        self.strands.insert(address, strand);
        Ok(address)
    }

    pub fn read(&self, address: Address) -> Result<Bits, NcompError> {
        self.strands
            .get(&address)
            .map(|s| dna_to_binary(&payload_of(s)))
            .ok_or(NcompError::MissingStrand(address))
    }

    pub fn delete(&mut self, address: Address) -> Result<DnaStrand, NcompError> {
        if !self.strands.contains_key(&address) {
            return Err(NcompError::MissingStrand(address));
        }
        self.check_writable(address)?;
        Ok(self.strands.remove(&address).expect("checked above"))
    }

    /// Every exact occurrence of `pattern` inside a payload, in ascending
    /// `(address, offset)` order. Overlapping matches are all reported.
    pub fn search(&self, pattern: &[Base]) -> Result<Vec<Hit>, NcompError> {
        if pattern.is_empty() {
            return Err(NcompError::InvalidConfig("search pattern must not be empty".into()));
        }
        let mut hits = Vec::new();
        for (&address, strand) in &self.strands {
            let payload = &strand.bases()[ADDRESS_BITS..];
            hits.extend(
                payload
                    .windows(pattern.len())
                    .enumerate()
                    .filter(|(_, w)| *w == pattern)
                    .map(|(offset, _)| Hit { address, offset }),
            );
        }
        Ok(hits)
    }
}

fn check_strand(strand: &DnaStrand) -> Result<Address, NcompError> {
    if strand.len() != STRAND_LEN {
        return Err(NcompError::StrandLength { expected: STRAND_LEN, found: strand.len() });
    }
    Address::from_strand(strand)
}

fn payload_of(strand: &DnaStrand) -> DnaStrand {
    DnaStrand::new(strand.bases()[ADDRESS_BITS..].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn addr(v: u32) -> Address {
        Address::new(v).unwrap()
    }

    fn payload(seed: u128) -> Bits {
        Bits::from_u128(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15_f39c_c060_5ced_c835), PAYLOAD_BITS)
    }

    #[test]
    fn write_read_roundtrip() {
        let mut m = DnaMemory::new();
        m.write(addr(5), &payload(1)).unwrap();
        assert_eq!(m.read(addr(5)).unwrap(), payload(1));
        let s = m.strand(addr(5)).unwrap();
        assert_eq!(s.len(), STRAND_LEN);
        assert_eq!(Address::from_strand(s).unwrap(), addr(5));
    }

    #[test]
    fn second_write_wins() {
        let mut m = DnaMemory::new();
        m.write(addr(5), &payload(1)).unwrap();
        m.write(addr(5), &payload(2)).unwrap();
        assert_eq!(m.read(addr(5)).unwrap(), payload(2));
        assert_eq!(m.len(), 1);
    }

    #[test]
    fn replication_segment_is_protected() {
        let mut m = DnaMemory::new();
        let a = *m.replication_segment().start();
        assert_eq!(m.write(a, &payload(1)), Err(NcompError::ProtectedRegion(a)));
        m.set_unlocked(true);
        m.write(a, &payload(1)).unwrap();
        m.set_unlocked(false);
        assert_eq!(m.delete(a), Err(NcompError::ProtectedRegion(a)));
        assert_eq!(m.segment_strands().count(), 1);
    }

    #[test]
    fn delete_and_missing() {
        let mut m = DnaMemory::new();
        m.write(addr(9), &payload(3)).unwrap();
        m.delete(addr(9)).unwrap();
        assert_eq!(m.read(addr(9)), Err(NcompError::MissingStrand(addr(9))));
        assert_eq!(m.delete(addr(9)), Err(NcompError::MissingStrand(addr(9))));
    }

    #[test]
    fn reads_do_not_mutate() {
        let mut m = DnaMemory::new();
        m.write(addr(1), &payload(4)).unwrap();
        let before = m.clone();
        assert_eq!(m.read(addr(1)).unwrap(), m.read(addr(1)).unwrap());
        assert_eq!(m, before);
    }

    #[test]
    fn wrong_width_is_rejected() {
        let mut m = DnaMemory::new();
        assert!(matches!(m.write(addr(0), &Bits::zeros(8)), Err(NcompError::WidthMismatch { .. })));
        assert!(Address::new(1 << 19).is_err());
    }

    fn strand_with_payload(a: u32, payload: &str) -> DnaStrand {
        let p = format!("{payload:A<96}");
        binary_to_dna(&addr(a).to_bits(), EncodingStyle::Canonical).concat(&p.parse().unwrap())
    }

    #[test]
    fn search_hits() {
        let m =
            DnaMemory::from_strands([strand_with_payload(2, "CCGGGCC"), strand_with_payload(1, "TTGGTT")])
                .unwrap();
        let gg: Vec<Base> = "GG".parse::<DnaStrand>().unwrap().bases().to_vec();
        let hits = m.search(&gg).unwrap();
        assert_eq!(
            hits,
            vec![
                Hit { address: addr(1), offset: 2 },
                Hit { address: addr(2), offset: 2 },
                Hit { address: addr(2), offset: 3 },
            ]
        );
        let none: Vec<Base> = "TTTTTTTTTTTTT".parse::<DnaStrand>().unwrap().bases().to_vec();
        assert!(m.search(&none).unwrap().is_empty());
        assert!(m.search(&[]).is_err());
    }

    #[test]
    fn search_whole_payload() {
        let mut m = DnaMemory::new();
        m.write(addr(7), &payload(11)).unwrap();
        let whole = binary_to_dna(&payload(11), EncodingStyle::Canonical);
        assert_eq!(m.search(whole.bases()).unwrap(), vec![Hit { address: addr(7), offset: 0 }]);
    }

    #[test]
    fn search_matches_sliding_window_oracle() {
        let mut m = DnaMemory::new();
        for a in 0..6 {
            m.write_styled(addr(a), &payload(a as u128), EncodingStyle::Randomized(a as u64)).unwrap();
        }
        for pat in ["A", "GT", "CAG", "TTTA"] {
            let p: Vec<Base> = pat.parse::<DnaStrand>().unwrap().bases().to_vec();
            let mut oracle = Vec::new();
            for (a, s) in m.strands() {
                let text = s.to_string()[ADDRESS_BITS..].to_string();
                for i in 0..=text.len() - pat.len() {
                    if &text[i..i + pat.len()] == pat {
                        oracle.push(Hit { address: a, offset: i });
                    }
                }
            }
            assert_eq!(m.search(&p).unwrap(), oracle, "{pat}");
        }
    }

    #[test]
    fn image_rejects_duplicates_and_bad_lengths() {
        let s = strand_with_payload(3, "");
        assert_eq!(DnaMemory::from_strands([s.clone(), s]), Err(NcompError::DuplicateAddress(addr(3))));
        assert!(DnaMemory::from_strands(["ACGT".parse::<DnaStrand>().unwrap()]).is_err());
    }
}
