use std::fmt;

use super::{Grid, LifeError};

pub const MIN_GROWTH_HORIZON: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthClass {
    Bounded,
    Linear,
    Quadratic,
}

impl fmt::Display for GrowthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GrowthClass::Bounded => "bounded",
            GrowthClass::Linear => "linear",
            GrowthClass::Quadratic => "quadratic",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Growth {
    pub class: GrowthClass,
    /// Least-squares slope of `ln(population)` against `ln(generation)`.
    pub fit_exponent: f64,
}

fn classify(exponent: f64) -> Result<GrowthClass, LifeError> {
    match exponent {
        e if e < 0.3 => Ok(GrowthClass::Bounded),
        e if (0.7..=1.3).contains(&e) => Ok(GrowthClass::Linear),
        e if (1.7..=2.3).contains(&e) => Ok(GrowthClass::Quadratic),
        e => Err(LifeError::Unclassified { exponent: e }),
    }
}

/// Fits a power law to the population over the second half of `horizon`
/// generations and classifies the exponent.
pub fn growth_class(pattern: &Grid, horizon: usize) -> Result<Growth, LifeError> {
    if matches!(pattern, Grid::Toroidal(_)) {
        return Err(LifeError::Unsupported("toroidal"));
    }
    if horizon < MIN_GROWTH_HORIZON {
        return Err(LifeError::Invalid(format!(
            "horizon {horizon} is below the minimum of {MIN_GROWTH_HORIZON}"
        )));
    }
    let pops = pattern.population_history(horizon);
    let start = horizon / 2;
    if pops[start..].contains(&0) {
        return Ok(Growth { class: GrowthClass::Bounded, fit_exponent: 0.0 });
    }
    let points: Vec<(f64, f64)> =
        (start..=horizon).map(|n| ((n as f64).ln(), (pops[n] as f64).ln())).collect();
    let fit_exponent = slope(&points);
    Ok(Growth { class: classify(fit_exponent)?, fit_exponent })
}

fn slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let (sxy, sxx) = points
        .iter()
        .fold((0.0, 0.0), |(sxy, sxx), &(x, y)| (sxy + (x - mx) * (y - my), sxx + (x - mx) * (x - mx)));
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lifeca::{Sparse, Torus};

    #[test]
    fn slope_of_exact_power_law() {
        let pts: Vec<_> = (32..=64).map(|n| ((n as f64).ln(), (3.0 * (n as f64).powi(2)).ln())).collect();
        assert!((slope(&pts) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn bands() {
        assert_eq!(classify(0.0).unwrap(), GrowthClass::Bounded);
        assert_eq!(classify(1.0).unwrap(), GrowthClass::Linear);
        assert_eq!(classify(2.0).unwrap(), GrowthClass::Quadratic);
        assert!(classify(0.5).is_err());
        assert!(classify(1.5).is_err());
        assert!(classify(3.0).is_err());
    }

    #[test]
    fn block_and_glider_are_bounded() {
        let block = Grid::from(Sparse::new([(0, 0), (0, 1), (1, 0), (1, 1)]));
        let g = growth_class(&block, 64).unwrap();
        assert_eq!(g.class, GrowthClass::Bounded);
        assert!(g.fit_exponent.abs() < 1e-12);

        let glider = Grid::from(Sparse::new([(0, 1), (1, 2), (2, 0), (2, 1), (2, 2)]));
        assert_eq!(growth_class(&glider, 128).unwrap().class, GrowthClass::Bounded);
    }

    #[test]
    fn dying_pattern_is_bounded() {
        let lone = Grid::from(Sparse::new([(0, 0)]));
        assert_eq!(
            growth_class(&lone, 64).unwrap(),
            Growth { class: GrowthClass::Bounded, fit_exponent: 0.0 }
        );
    }

    #[test]
    fn rejects_short_horizon_and_torus() {
        let g = Grid::from(Sparse::new([(0, 0)]));
        assert!(growth_class(&g, 10).is_err());
        let t = Grid::from(Torus::new(4, 4).unwrap());
        assert!(matches!(growth_class(&t, 64), Err(LifeError::Unsupported(_))));
    }
}
