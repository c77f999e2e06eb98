//! Exhaustive Garden-of-Eden test on small tori.
//!
//! A torus configuration is an orphan when no configuration of the same
//! size steps to it. Candidates are enumerated as `u32` bitmasks; the
//! neighbour count of each cell is a popcount against a precomputed
//! neighbourhood mask, with multiplicity kept for tori narrower than three
//! cells so the result matches [`Torus::step`].

use super::{Grid, LifeError, Torus};

/// Largest torus (in cells) the exhaustive search accepts.
pub const GOE_MAX_CELLS: usize = 24;

struct MaskStepper {
    /// Per cell, the neighbour bits grouped by multiplicity.
    neighbours: Vec<[u32; 8]>,
}

impl MaskStepper {
    fn new(width: usize, height: usize) -> Self {
        let mut neighbours = Vec::with_capacity(width * height);
        for r in 0..height {
            for c in 0..width {
                let mut counts = vec![0usize; width * height];
                for dr in [height - 1, 0, 1] {
                    for dc in [width - 1, 0, 1] {
                        if (dr, dc) == (0, 0) {
                            continue;
                        }
                        counts[(r + dr) % height * width + (c + dc) % width] += 1;
                    }
                }
                let mut layers = [0u32; 8];
                for (i, &k) in counts.iter().enumerate() {
                    for layer in layers.iter_mut().take(k) {
                        *layer |= 1 << i;
                    }
                }
                neighbours.push(layers);
            }
        }
        Self { neighbours }
    }

    fn step(&self, mask: u32) -> u32 {
        let mut out = 0u32;
        for (i, layers) in self.neighbours.iter().enumerate() {
            let n: u32 = layers.iter().map(|l| (mask & l).count_ones()).sum();
            let alive = mask >> i & 1 == 1;
            if n == 3 || (alive && n == 2) {
                out |= 1 << i;
            }
        }
        out
    }
}

/// `true` iff no same-size toroidal grid steps to `grid`.
pub fn is_garden_of_eden(grid: &Grid) -> Result<bool, LifeError> {
    let torus = match grid {
        Grid::Toroidal(t) => t,
        Grid::Unbounded(_) => return Err(LifeError::Unsupported("unbounded")),
    };
    let cells = torus.width() * torus.height();
    if cells > GOE_MAX_CELLS {
        return Err(LifeError::Capacity { cells, max: GOE_MAX_CELLS });
    }
    Ok(!has_predecessor(torus))
}

fn has_predecessor(torus: &Torus) -> bool {
    let stepper = MaskStepper::new(torus.width(), torus.height());
    let target = torus.to_mask().expect("capacity checked") as u32;
    let n = torus.width() * torus.height();
    let total = 1u64 << n;
    // Split the candidate space into chunks scanned on scoped threads; any
    // hit ends the search.
    let workers = std::thread::available_parallelism().map_or(1, |p| p.get()).min(16) as u64;
    if total < 1 << 14 || workers == 1 {
        return (0..total).any(|m| stepper.step(m as u32) == target);
    }
    let found = std::sync::atomic::AtomicBool::new(false);
    let chunk = total.div_ceil(workers);
    std::thread::scope(|s| {
        for w in 0..workers {
            let (stepper, found) = (&stepper, &found);
            s.spawn(move || {
                let end = ((w + 1) * chunk).min(total);
                let mut m = w * chunk;
                while m < end {
                    if m.is_multiple_of(4096) && found.load(std::sync::atomic::Ordering::Relaxed) {
                        return;
                    }
                    if stepper.step(m as u32) == target {
                        found.store(true, std::sync::atomic::Ordering::Relaxed);
                        return;
                    }
                    m += 1;
                }
            });
        }
    });
    found.into_inner()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lifeca::Sparse;

    #[test]
    fn mask_step_matches_torus_step() {
        for (w, h) in [(1, 1), (2, 1), (2, 3), (3, 3), (4, 4), (5, 4)] {
            let stepper = MaskStepper::new(w, h);
            for mask in (0u64..1 << (w * h)).step_by(7) {
                let t = Torus::from_mask(w, h, mask).unwrap();
                assert_eq!(stepper.step(mask as u32) as u64, t.step().to_mask().unwrap(), "{w}x{h} {mask:b}");
            }
        }
    }

    #[test]
    fn empty_is_not_an_orphan() {
        let g = Grid::from(Torus::new(3, 3).unwrap());
        assert!(!is_garden_of_eden(&g).unwrap());
    }

    #[test]
    fn full_three_by_three_has_a_parent() {
        // Any three live cells: each live cell sees two, each dead cell three.
        let g = Grid::from(Torus::from_mask(3, 3, 0x1ff).unwrap());
        assert!(!is_garden_of_eden(&g).unwrap());
    }

    #[test]
    fn single_cell_is_an_orphan() {
        let g = Grid::from(Torus::from_mask(3, 3, 1).unwrap());
        assert!(is_garden_of_eden(&g).unwrap());
    }

    #[test]
    fn successors_are_never_orphans() {
        for mask in [0b1u64, 0b111000, 0b110_011_101, 0b1010_0101_1100_0011] {
            let t = Torus::from_mask(4, 4, mask).unwrap();
            assert!(!is_garden_of_eden(&Grid::from(t.step())).unwrap());
        }
    }

    #[test]
    fn parallel_path_finds_predecessor() {
        // 4x5 = 20 cells takes the threaded path.
        let t = Torus::with_live(5, 4, [(0, 0), (1, 1), (1, 2), (2, 1), (3, 4)]).unwrap();
        assert!(!is_garden_of_eden(&Grid::from(t.step())).unwrap());
    }

    #[test]
    fn errors() {
        let big = Grid::from(Torus::new(5, 5).unwrap());
        assert_eq!(is_garden_of_eden(&big), Err(LifeError::Capacity { cells: 25, max: 24 }));
        let sparse = Grid::from(Sparse::default());
        assert!(matches!(is_garden_of_eden(&sparse), Err(LifeError::Unsupported(_))));
    }
}
