//! Strand files: one 115-base strand per line over `A`, `C`, `G`, `T`
//! (19-base address then 96-base payload). Lines starting with `#` are
//! comments and empty lines are skipped.

use std::fmt::Write as _;

use thiserror::Error;

use super::dna::{Base, DnaStrand};
use super::memory::{Address, DnaMemory, STRAND_LEN};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrandFileError {
    #[error("line {line}: strand has {found} bases, expected {STRAND_LEN}")]
    Length { line: usize, found: usize },
    #[error("line {line}: invalid base {ch:?}")]
    BadBase { line: usize, ch: char },
    #[error("line {line}: address {address} already defined")]
    Duplicate { line: usize, address: Address },
}

pub fn parse_strands(text: &str) -> Result<Vec<DnaStrand>, StrandFileError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim_end_matches('\r');
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let bases = l
            .chars()
            .map(|ch| Base::from_char(ch).ok_or(StrandFileError::BadBase { line, ch }))
            .collect::<Result<Vec<_>, _>>()?;
        if bases.len() != STRAND_LEN {
            return Err(StrandFileError::Length { line, found: bases.len() });
        }
        out.push(DnaStrand::new(bases));
    }
    Ok(out)
}

/// Memory image from a strand file; the file may fill the replication
/// segment.
pub fn load_memory(text: &str) -> Result<DnaMemory, StrandFileError> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let l = raw.trim_end_matches('\r');
        if !(l.is_empty() || l.starts_with('#')) {
            lines.push(i + 1);
        }
    }
    let strands = parse_strands(text)?;
    let mut seen = std::collections::BTreeSet::new();
    for (strand, &line) in strands.iter().zip(&lines) {
        let address = Address::from_strand(strand).expect("length checked");
        if !seen.insert(address) {
            return Err(StrandFileError::Duplicate { line, address });
        }
    }
    Ok(DnaMemory::from_strands(strands).expect("validated above"))
}

pub fn write_strands(memory: &DnaMemory) -> String {
    let mut out = String::new();
    for (_, strand) in memory.strands() {
        writeln!(out, "{strand}").expect("writing to a String");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncomp::dna::Bits;

    fn line(addr_bits: &str, payload: &str) -> String {
        let a: String = addr_bits.chars().map(|c| if c == '1' { 'G' } else { 'A' }).collect();
        format!("{a:A>19}{payload:A<96}")
    }

    #[test]
    fn parses_comments_and_strands() {
        let text = format!("# memory image\n{}\n\n{}\n", line("1", "TATAGCCG"), line("10", "C"));
        let mem = load_memory(&text).unwrap();
        assert_eq!(mem.len(), 2);
        let bits = mem.read(Address::new(1).unwrap()).unwrap();
        assert!(bits.to_string().starts_with("10101001"));
        assert_eq!(mem.read(Address::new(2).unwrap()).unwrap(), Bits::zeros(96));
    }

    #[test]
    fn empty_file_is_empty_memory() {
        assert!(load_memory("").unwrap().is_empty());
        assert!(load_memory("# nothing\n").unwrap().is_empty());
    }

    #[test]
    fn line_numbered_errors() {
        let text = format!("# c\n{}\nACGT\n", line("1", ""));
        assert_eq!(load_memory(&text), Err(StrandFileError::Length { line: 3, found: 4 }));
        let bad = format!("{}N", &line("1", "")[..114]);
        assert_eq!(parse_strands(&bad), Err(StrandFileError::BadBase { line: 1, ch: 'N' }));
        let dup = format!("{}\n# x\n{}\n", line("1", ""), line("1", "G"));
        assert!(matches!(load_memory(&dup), Err(StrandFileError::Duplicate { line: 3, .. })));
    }

    #[test]
    fn write_then_load() {
        let text = format!("{}\n{}\n", line("11", "GATTACA"), line("1", "TATAGCCG"));
        let mem = load_memory(&text).unwrap();
        assert_eq!(load_memory(&write_strands(&mem)).unwrap(), mem);
    }
}
