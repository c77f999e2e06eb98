//! Conway's Game of Life (B3/S23, Moore neighbourhood, synchronous update).
//!
//! Two universes are supported: a finite torus ([`Torus`]) and an unbounded
//! plane holding a finite live set ([`Sparse`]). [`Grid`] wraps either.

mod goe;
mod growth;
mod pattern;

pub use goe::{is_garden_of_eden, GOE_MAX_CELLS};
pub use growth::{growth_class, Growth, GrowthClass, MIN_GROWTH_HORIZON};
pub use pattern::{parse_pattern, Pattern, PatternError};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LifeError {
    #[error("grid has {cells} cells, exhaustive search is limited to {max}")]
    Capacity { cells: usize, max: usize },
    #[error("operation not supported on {0} grids")]
    Unsupported(&'static str),
    #[error("growth exponent {exponent:.3} falls outside every class band")]
    Unclassified { exponent: f64 },
    #[error("invalid argument: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    Toroidal,
    Unbounded,
}

#[inline]
fn next_state(alive: bool, neighbours: u8) -> bool {
    neighbours == 3 || (alive && neighbours == 2)
}

/// Finite grid with wrap-around edges. Cells are stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Torus {
    width: usize,
    height: usize,
    cells: Vec<bool>,
}

impl Torus {
    pub fn new(width: usize, height: usize) -> Result<Self, LifeError> {
        if width == 0 || height == 0 {
            return Err(LifeError::Invalid(format!("torus must be at least 1x1, got {width}x{height}")));
        }
        Ok(Self { width, height, cells: vec![false; width * height] })
    }

    pub fn from_cells(width: usize, height: usize, cells: Vec<bool>) -> Result<Self, LifeError> {
        if cells.len() != width * height {
            return Err(LifeError::Invalid(format!(
                "{} cells do not fill a {width}x{height} torus",
                cells.len()
            )));
        }
        let mut t = Self::new(width, height)?;
        t.cells = cells;
        Ok(t)
    }

    /// Bit `i` of `mask` is cell `i` in row-major order.
    pub fn from_mask(width: usize, height: usize, mask: u64) -> Result<Self, LifeError> {
        let n = width * height;
        if n > 64 {
            return Err(LifeError::Capacity { cells: n, max: 64 });
        }
        Self::from_cells(width, height, (0..n).map(|i| mask >> i & 1 == 1).collect())
    }

    pub fn with_live(
        width: usize,
        height: usize,
        live: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, LifeError> {
        let mut t = Self::new(width, height)?;
        for (r, c) in live {
            t.set(r, c, true);
        }
        Ok(t)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn cells(&self) -> &[bool] {
        &self.cells
    }

    /// Row and column wrap.
    pub fn get(&self, row: usize, col: usize) -> bool {
        self.cells[(row % self.height) * self.width + col % self.width]
    }

    pub fn set(&mut self, row: usize, col: usize, alive: bool) {
        let i = (row % self.height) * self.width + col % self.width;
        self.cells[i] = alive;
    }

    pub fn population(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    pub fn live_cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.cells.iter().enumerate().filter(|(_, &c)| c).map(|(i, _)| (i / self.width, i % self.width))
    }

    /// Row-major bitmask; `None` when the torus has more than 64 cells.
    pub fn to_mask(&self) -> Option<u64> {
        (self.cells.len() <= 64)
            .then(|| self.cells.iter().enumerate().fold(0u64, |m, (i, &c)| m | (c as u64) << i))
    }

    /// Cyclic shift by `dr` rows and `dc` columns.
    pub fn shifted(&self, dr: usize, dc: usize) -> Self {
        let mut out = Self { cells: vec![false; self.cells.len()], ..*self };
        for (r, c) in self.live_cells() {
            out.set(r + dr, c + dc, true);
        }
        out
    }

    pub fn step(&self) -> Self {
        let (w, h) = (self.width, self.height);
        let mut cells = Vec::with_capacity(w * h);
        for r in 0..h {
            let rows = [(r + h - 1) % h, r, (r + 1) % h];
            for c in 0..w {
                let cols = [(c + w - 1) % w, c, (c + 1) % w];
                let mut n = 0u8;
                for (i, &rr) in rows.iter().enumerate() {
                    for (j, &cc) in cols.iter().enumerate() {
                        if (i, j) != (1, 1) && self.cells[rr * w + cc] {
                            n += 1;
                        }
                    }
                }
                cells.push(next_state(self.cells[r * w + c], n));
            }
        }
        Self { cells, ..*self }
    }
}

/// Finite live set on the unbounded plane, kept sorted by `(row, col)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Sparse {
    live: Vec<(i64, i64)>,
}

impl Sparse {
    pub fn new(live: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut live: Vec<_> = live.into_iter().collect();
        live.sort_unstable();
        live.dedup();
        Self { live }
    }

    pub fn live_cells(&self) -> &[(i64, i64)] {
        &self.live
    }

    pub fn population(&self) -> usize {
        self.live.len()
    }

    pub fn is_alive(&self, row: i64, col: i64) -> bool {
        self.live.binary_search(&(row, col)).is_ok()
    }

    /// `(min_row, min_col, max_row, max_col)` of the live set.
    pub fn bounding_box(&self) -> Option<(i64, i64, i64, i64)> {
        let first = *self.live.first()?;
        let last = *self.live.last()?;
        let (min_c, max_c) =
            self.live.iter().fold((i64::MAX, i64::MIN), |(lo, hi), &(_, c)| (lo.min(c), hi.max(c)));
        Some((first.0, min_c, last.0, max_c))
    }

    pub fn translated(&self, dr: i64, dc: i64) -> Self {
        Self { live: self.live.iter().map(|&(r, c)| (r + dr, c + dc)).collect() }
    }

    /// Evaluates every cell in the live set's bounding box grown by one,
    /// which covers all live cells and all of their neighbours.
    pub fn step(&self) -> Self {
        let Some((r0, c0, r1, c1)) = self.bounding_box() else {
            return Self::default();
        };
        let (top, left) = (r0 - 1, c0 - 1);
        let h = (r1 - r0 + 3) as usize;
        let w = (c1 - c0 + 3) as usize;
        let mut alive = vec![false; w * h];
        let mut counts = vec![0u8; w * h];
        for &(r, c) in &self.live {
            let (rr, cc) = ((r - top) as usize, (c - left) as usize);
            alive[rr * w + cc] = true;
            for nr in rr - 1..=rr + 1 {
                let row = &mut counts[nr * w..(nr + 1) * w];
                row[cc - 1] += 1;
                row[cc] += 1;
                row[cc + 1] += 1;
            }
            counts[rr * w + cc] -= 1;
        }
        let live = (0..w * h)
            .filter(|&i| next_state(alive[i], counts[i]))
            .map(|i| (top + (i / w) as i64, left + (i % w) as i64))
            .collect();
        Self { live }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Grid {
    Toroidal(Torus),
    Unbounded(Sparse),
}

impl Grid {
    pub fn boundary(&self) -> Boundary {
        match self {
            Grid::Toroidal(_) => Boundary::Toroidal,
            Grid::Unbounded(_) => Boundary::Unbounded,
        }
    }

    pub fn population(&self) -> usize {
        match self {
            Grid::Toroidal(t) => t.population(),
            Grid::Unbounded(s) => s.population(),
        }
    }

    pub fn step(&self) -> Grid {
        match self {
            Grid::Toroidal(t) => Grid::Toroidal(t.step()),
            Grid::Unbounded(s) => Grid::Unbounded(s.step()),
        }
    }

    /// `n`-fold composition of [`step`](Self::step).
    pub fn run(&self, n: usize) -> Grid {
        let mut g = self.clone();
        for _ in 0..n {
            g = g.step();
        }
        g
    }

    /// Population at generations `0..=n`.
    pub fn population_history(&self, n: usize) -> Vec<usize> {
        let mut g = self.clone();
        let mut pops = Vec::with_capacity(n + 1);
        pops.push(g.population());
        for _ in 0..n {
            g = g.step();
            pops.push(g.population());
        }
        pops
    }
}

impl From<Torus> for Grid {
    fn from(t: Torus) -> Self {
        Grid::Toroidal(t)
    }
}

impl From<Sparse> for Grid {
    fn from(s: Sparse) -> Self {
        Grid::Unbounded(s)
    }
}

pub fn step(grid: &Grid) -> Grid {
    grid.step()
}

pub fn run(grid: &Grid, n: usize) -> Grid {
    grid.run(n)
}
