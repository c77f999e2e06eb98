//! Plain-text pattern files: `.` is dead, `#` is alive, lines starting with
//! `!` are comments, every row has the same length, and blank lines at the
//! start or end are ignored.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::{LifeError, Sparse, Torus};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatternError {
    #[error("line {line}: unexpected character {ch:?} (expected '.' or '#')")]
    BadChar { line: usize, ch: char },
    #[error("line {line}: row has {found} cells, expected {expected}")]
    Ragged { line: usize, expected: usize, found: usize },
    #[error("line {line}: blank line inside the pattern")]
    InteriorBlank { line: usize },
    #[error("pattern contains no rows")]
    Empty,
}

/// Rectangular cell block as read from a file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    width: usize,
    height: usize,
    cells: Vec<bool>,
}

impl Pattern {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.cells[row * self.width + col]
    }

    pub fn live_cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let w = self.width;
        self.cells.iter().enumerate().filter(|(_, &c)| c).map(move |(i, _)| (i / w, i % w))
    }

    /// Torus of exactly the pattern's size.
    pub fn to_torus(&self) -> Torus {
        Torus::from_cells(self.width, self.height, self.cells.clone()).expect("non-empty pattern")
    }

    /// Pattern placed at `(row, col)` on a larger torus.
    pub fn to_torus_padded(
        &self,
        width: usize,
        height: usize,
        row: usize,
        col: usize,
    ) -> Result<Torus, LifeError> {
        if row + self.height > height || col + self.width > width {
            return Err(LifeError::Invalid(format!(
                "{}x{} pattern does not fit at ({row}, {col}) in {width}x{height}",
                self.width, self.height
            )));
        }
        Torus::with_live(width, height, self.live_cells().map(|(r, c)| (r + row, c + col)))
    }

    /// Live cells on the plane with the pattern's top-left at the origin.
    pub fn to_sparse(&self) -> Sparse {
        Sparse::new(self.live_cells().map(|(r, c)| (r as i64, c as i64)))
    }

    pub fn from_torus(t: &Torus) -> Self {
        Self { width: t.width(), height: t.height(), cells: t.cells().to_vec() }
    }

    /// Bounding box of a live set; an empty set yields a single dead cell.
    pub fn from_sparse(s: &Sparse) -> Self {
        let Some((r0, c0, r1, c1)) = s.bounding_box() else {
            return Self { width: 1, height: 1, cells: vec![false] };
        };
        let width = (c1 - c0 + 1) as usize;
        let height = (r1 - r0 + 1) as usize;
        let mut cells = vec![false; width * height];
        for &(r, c) in s.live_cells() {
            cells[(r - r0) as usize * width + (c - c0) as usize] = true;
        }
        Self { width, height, cells }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.cells.chunks(self.width) {
            for &c in row {
                f.write_str(if c { "#" } else { "." })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FromStr for Pattern {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_pattern(s)
    }
}

pub fn parse_pattern(text: &str) -> Result<Pattern, PatternError> {
    // (1-based line number, row text) for every non-comment line.
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.starts_with('!'))
        .collect();
    let is_blank = |l: &str| l.trim().is_empty();
    let first = lines.iter().position(|(_, l)| !is_blank(l)).ok_or(PatternError::Empty)?;
    let last = lines.iter().rposition(|(_, l)| !is_blank(l)).expect("a non-blank line exists");

    let mut width = None;
    let mut cells = Vec::new();
    for &(line, row) in &lines[first..=last] {
        if is_blank(row) {
            return Err(PatternError::InteriorBlank { line });
        }
        let mut n = 0;
        for ch in row.chars() {
            match ch {
                '.' => cells.push(false),
                '#' => cells.push(true),
                ch => return Err(PatternError::BadChar { line, ch }),
            }
            n += 1;
        }
        match width {
            None => width = Some(n),
            Some(expected) if expected != n => {
                return Err(PatternError::Ragged { line, expected, found: n });
            }
            _ => {}
        }
    }
    let width = width.expect("at least one row");
    Ok(Pattern { width, height: cells.len() / width, cells })
}
