//! One-bit-per-base DNA codec: A and C read as 0, G and T read as 1.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::NcompError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Base {
    A,
    C,
    G,
    T,
}

impl Base {
    pub const ALL: [Base; 4] = [Base::A, Base::C, Base::G, Base::T];

    pub fn bit(self) -> bool {
        matches!(self, Base::G | Base::T)
    }

    pub fn from_char(ch: char) -> Option<Base> {
        match ch {
            'A' => Some(Base::A),
            'C' => Some(Base::C),
            'G' => Some(Base::G),
            'T' => Some(Base::T),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Base::A => 'A',
            Base::C => 'C',
            Base::G => 'G',
            Base::T => 'T',
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Ordered base sequence of any length.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct DnaStrand(Vec<Base>);

impl DnaStrand {
    pub fn new(bases: Vec<Base>) -> Self {
        Self(bases)
    }

    pub fn bases(&self) -> &[Base] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &DnaStrand) -> DnaStrand {
        DnaStrand(self.0.iter().chain(&other.0).copied().collect())
    }
}

impl From<Vec<Base>> for DnaStrand {
    fn from(bases: Vec<Base>) -> Self {
        Self(bases)
    }
}

impl FromStr for DnaStrand {
    type Err = NcompError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .enumerate()
            .map(|(i, ch)| Base::from_char(ch).ok_or(NcompError::InvalidBase { ch, position: i }))
            .collect::<Result<Vec<_>, _>>()
            .map(DnaStrand)
    }
}

impl fmt::Display for DnaStrand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|b| write!(f, "{b}"))
    }
}

/// Bit vector, most significant bit first when read as a number.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Bits(Vec<bool>);

impl Bits {
    pub fn new(bits: Vec<bool>) -> Self {
        Self(bits)
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![false; len])
    }

    /// Low `width` bits of `value`, MSB first.
    pub fn from_u128(value: u128, width: usize) -> Self {
        assert!(width <= 128, "width {width} exceeds 128 bits");
        Self((0..width).rev().map(|i| value >> i & 1 == 1).collect())
    }

    /// `None` when longer than 128 bits.
    pub fn to_u128(&self) -> Option<u128> {
        (self.0.len() <= 128).then(|| self.0.iter().fold(0u128, |acc, &b| acc << 1 | b as u128))
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    /// Copy padded with zeros (or truncated) to `len` bits.
    pub fn resized(&self, len: usize) -> Self {
        let mut v = self.0.clone();
        v.resize(len, false);
        Self(v)
    }
}

impl From<Vec<bool>> for Bits {
    fn from(bits: Vec<bool>) -> Self {
        Self(bits)
    }
}

impl FromStr for Bits {
    type Err = NcompError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .enumerate()
            .map(|(i, ch)| match ch {
                '0' => Ok(false),
                '1' => Ok(true),
                ch => Err(NcompError::InvalidBit { ch, position: i }),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Bits)
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|&b| f.write_str(if b { "1" } else { "0" }))
    }
}

/// How a bit is turned into one of its two admissible bases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EncodingStyle {
    /// 0 → A, 1 → G.
    #[default]
    Canonical,
    /// Uniform choice between A/C or G/T from a seeded generator.
    Randomized(u64),
}

pub fn dna_to_binary(strand: &DnaStrand) -> Bits {
    Bits(strand.bases().iter().map(|b| b.bit()).collect())
}

pub fn binary_to_dna(bits: &Bits, style: EncodingStyle) -> DnaStrand {
    match style {
        EncodingStyle::Canonical => {
            DnaStrand(bits.as_slice().iter().map(|&b| if b { Base::G } else { Base::A }).collect())
        }
        EncodingStyle::Randomized(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            DnaStrand(
                bits.as_slice()
                    .iter()
                    .map(|&b| match (b, rng.random::<bool>()) {
                        (false, false) => Base::A,
                        (false, true) => Base::C,
                        (true, false) => Base::G,
                        (true, true) => Base::T,
                    })
                    .collect(),
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn strand(s: &str) -> DnaStrand {
        s.parse().unwrap()
    }

    #[test]
    fn worked_example() {
        assert_eq!(dna_to_binary(&strand("TATAGCCG")).to_string(), "10101001");
    }

    #[test]
    fn single_symbol_strands() {
        assert_eq!(dna_to_binary(&strand("AAAA")).to_string(), "0000");
        assert_eq!(dna_to_binary(&strand("GGGG")).to_string(), "1111");
        assert_eq!(dna_to_binary(&strand("CCTT")).to_string(), "0011");
        assert!(dna_to_binary(&DnaStrand::default()).is_empty());
    }

    #[test]
    fn canonical_encoding() {
        let bits: Bits = "10101001".parse().unwrap();
        assert_eq!(binary_to_dna(&bits, EncodingStyle::Canonical).to_string(), "GAGAGAAG");
        assert!(binary_to_dna(&Bits::default(), EncodingStyle::Canonical).is_empty());
    }

    #[test]
    fn randomized_encoding_uses_both_bases() {
        let bits = Bits::zeros(96);
        let s = binary_to_dna(&bits, EncodingStyle::Randomized(7));
        assert!(s.bases().contains(&Base::A) && s.bases().contains(&Base::C));
        assert_eq!(s, binary_to_dna(&bits, EncodingStyle::Randomized(7)));
    }

    #[test]
    fn parse_errors() {
        assert_eq!("ACGN".parse::<DnaStrand>(), Err(NcompError::InvalidBase { ch: 'N', position: 3 }));
        assert!("102".parse::<Bits>().is_err());
    }

    #[test]
    fn integer_conversions() {
        let b = Bits::from_u128(5, 19);
        assert_eq!(b.len(), 19);
        assert_eq!(b.to_string(), "0000000000000000101");
        assert_eq!(b.to_u128(), Some(5));
        assert_eq!(b.resized(3).to_string(), "000");
    }

    proptest! {
        #[test]
        fn roundtrip_both_styles(bits in prop::collection::vec(any::<bool>(), 0..200), seed in any::<u64>()) {
            let bits = Bits::new(bits);
            prop_assert_eq!(dna_to_binary(&binary_to_dna(&bits, EncodingStyle::Canonical)), bits.clone());
            prop_assert_eq!(dna_to_binary(&binary_to_dna(&bits, EncodingStyle::Randomized(seed))), bits);
        }

        #[test]
        fn decoding_depends_only_on_base_class(s in "[ACGT]{0,64}") {
            let strand: DnaStrand = s.parse().unwrap();
            let swapped: String = s.chars().map(|c| match c { 'A' => 'C', 'C' => 'A', 'G' => 'T', _ => 'G' }).collect();
            let bits = dna_to_binary(&strand);
            prop_assert_eq!(bits.len(), strand.len());
            prop_assert_eq!(dna_to_binary(&swapped.parse().unwrap()), bits);
        }
    }
}
