//! Ready-made runs of the growth and Lotka–Volterra models plus the paradigm map.

use std::fmt;
use std::str::FromStr;

use crate::integrator::{
    integrate_rk4_substepped, iterate_map, IntegrationError, StateVector, TimeGrid, Trajectory,
};

use super::{
    exp_rhs, lv_rhs, paradigm_map, EnergyParadigmParams, ExponentialParams, LotkaVolterraParams, NoosimError,
};

/// Internal RK4 step used for the Lotka–Volterra scenarios; samples are
/// emitted on the coarser output grid.
pub const LV_INTERNAL_STEP: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scenario {
    /// Malthusian information growth.
    Exponential,
    /// Classical Lotka–Volterra coexistence.
    Coexistence,
    /// Lotka–Volterra with depletion pressure.
    Depletion,
    /// Energy-paradigm quadratic map.
    Paradigm,
}

impl Scenario {
    /// Parameters a caller may override for this scenario.
    pub fn parameters(self) -> &'static [&'static str] {
        match self {
            Scenario::Exponential => &["k1"],
            Scenario::Coexistence => &["k1", "k2", "k3"],
            Scenario::Depletion => &["k1", "k2", "k3", "k4"],
            Scenario::Paradigm => &["eps", "alpha", "A"],
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scenario::Exponential => "1",
            Scenario::Coexistence => "2",
            Scenario::Depletion => "3",
            Scenario::Paradigm => "paradigm",
        })
    }
}

impl FromStr for Scenario {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "1" => Ok(Scenario::Exponential),
            "2" => Ok(Scenario::Coexistence),
            "3" => Ok(Scenario::Depletion),
            "paradigm" => Ok(Scenario::Paradigm),
            other => Err(format!("unknown scenario '{other}' (expected 1, 2, 3 or paradigm)")),
        }
    }
}

/// Growth-rate convention for the exponential scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    /// One doubling per year (`k1 = ln 2`).
    #[default]
    Textbook,
    /// `k1 = 2`.
    Appendix,
}

impl Mode {
    pub fn exponential_params(self) -> ExponentialParams {
        match self {
            Mode::Textbook => ExponentialParams::textbook(),
            Mode::Appendix => ExponentialParams::appendix(),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Textbook => "textbook",
            Mode::Appendix => "appendix",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "textbook" => Ok(Mode::Textbook),
            "appendix" => Ok(Mode::Appendix),
            other => Err(format!("unknown mode '{other}' (expected textbook or appendix)")),
        }
    }
}

/// Fully resolved inputs for one scenario run.
#[derive(Debug, Clone, PartialEq)]
pub enum ScenarioSetup {
    Exponential { params: ExponentialParams, t_end: f64, h: f64 },
    LotkaVolterra { params: LotkaVolterraParams, y0: [f64; 2], t_end: f64, h: f64 },
    Paradigm { params: EnergyParadigmParams, y0: f64, steps: usize },
}

impl ScenarioSetup {
    /// Defaults: `t ∈ [0, 17]` for growth, `t ∈ [0, 100]` with
    /// `y0 = (0.02, 1)` for the Lotka–Volterra runs, all sampled every 0.01.
    pub fn defaults(scenario: Scenario, mode: Mode) -> Self {
        match scenario {
            Scenario::Exponential => {
                ScenarioSetup::Exponential { params: mode.exponential_params(), t_end: 17.0, h: 0.01 }
            }
            Scenario::Coexistence => ScenarioSetup::LotkaVolterra {
                params: LotkaVolterraParams::coexistence(),
                y0: [0.02, 1.0],
                t_end: 100.0,
                h: 0.01,
            },
            Scenario::Depletion => ScenarioSetup::LotkaVolterra {
                params: LotkaVolterraParams::depletion(),
                y0: [0.02, 1.0],
                t_end: 100.0,
                h: 0.01,
            },
            Scenario::Paradigm => ScenarioSetup::Paradigm {
                params: EnergyParadigmParams { epsilon: 2.0, alpha: 0.5, capacity: 100.0 },
                y0: 10.0,
                steps: 100,
            },
        }
    }

    pub fn validate(&self) -> Result<(), NoosimError> {
        match self {
            ScenarioSetup::Exponential { params, .. } => params.validate(),
            ScenarioSetup::LotkaVolterra { params, y0, .. } => {
                params.validate()?;
                if !(y0[0] > 0.0 && y0[1] > 0.0) {
                    return Err(NoosimError::InvalidParams(format!("y0 = {y0:?} must be positive")));
                }
                Ok(())
            }
            ScenarioSetup::Paradigm { params, .. } => params.validate(),
        }
    }

    pub fn run(&self) -> Result<Trajectory, ScenarioError> {
        self.validate()?;
        let traj = match *self {
            ScenarioSetup::Exponential { params, t_end, h } => {
                let grid = TimeGrid::new(0.0, t_end, h)?;
                integrate_rk4_substepped(&exp_rhs(&params), &StateVector::new([("y1", params.y0)]), &grid, 1)?
            }
            ScenarioSetup::LotkaVolterra { params, y0, t_end, h } => {
                let grid = TimeGrid::new(0.0, t_end, h)?;
                let substeps = ((grid.h() / LV_INTERNAL_STEP).round() as usize).max(1);
                integrate_rk4_substepped(
                    &lv_rhs(&params),
                    &StateVector::new([("y1", y0[0]), ("y2", y0[1])]),
                    &grid,
                    substeps,
                )?
            }
            ScenarioSetup::Paradigm { params, y0, steps } => {
                iterate_map(&paradigm_map(&params), &StateVector::new([("y1", y0)]), steps)?
            }
        };
        Ok(traj)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ScenarioError {
    #[error(transparent)]
    Model(#[from] NoosimError),
    #[error(transparent)]
    Integration(#[from] IntegrationError),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn appendix_growth_endpoint() {
        let traj = ScenarioSetup::defaults(Scenario::Exponential, Mode::Appendix).run().unwrap();
        assert_eq!(traj.len(), 1701);
        let (t, y) = traj.last().unwrap();
        assert_eq!(t, 17.0);
        assert!((y[0] / (1000.0 * 34f64.exp()) - 1.0).abs() < 1e-3);
    }

    #[test]
    fn coexistence_stays_positive() {
        let setup = ScenarioSetup::LotkaVolterra {
            params: LotkaVolterraParams::coexistence(),
            y0: [0.02, 1.0],
            t_end: 10.0,
            h: 0.01,
        };
        let traj = setup.run().unwrap();
        assert_eq!(traj.labels(), &["y1".to_string(), "y2".to_string()]);
        assert!(traj.samples().all(|(_, s)| s[0] > 0.0 && s[1] > 0.0));
    }

    #[test]
    fn paradigm_converges() {
        let traj = ScenarioSetup::defaults(Scenario::Paradigm, Mode::Textbook).run().unwrap();
        assert_eq!(traj.len(), 101);
        assert!((traj.last().unwrap().1[0] - 100.0).abs() < 1e-9);
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["1", "2", "3", "paradigm"] {
            assert_eq!(s.parse::<Scenario>().unwrap().to_string(), s);
        }
        assert!("4".parse::<Scenario>().is_err());
        assert_eq!("appendix".parse::<Mode>().unwrap(), Mode::Appendix);
    }

    #[test]
    fn invalid_setup() {
        let setup = ScenarioSetup::LotkaVolterra {
            params: LotkaVolterraParams::coexistence(),
            y0: [0.0, 1.0],
            t_end: 1.0,
            h: 0.01,
        };
        assert!(matches!(setup.run(), Err(ScenarioError::Model(_))));
    }
}
