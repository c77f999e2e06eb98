//! Noosphere growth models.
//!
//! * Malthusian growth of stored information, `y' = k1 y`.
//! * Lotka–Volterra coupling of electric energy (prey, `y1`) and the
//!   noosphere (predator, `y2`), optionally with a depletion term `-k4 y1²`.
//! * The energy-paradigm quadratic map.
//! * An information→energy accounting that turns EB into nuclear-plant
//!   equivalents and locates the year where demand reaches 100% of the
//!   world's electricity.

pub mod scenario;

use std::f64::consts::LN_2;

use thiserror::Error;

use crate::integrator::{DiscreteMap, VectorField, DIVERGENCE_BOUND};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NoosimError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("value overflowed at t = {t}")]
    Diverged { t: f64 },
    #[error("no coexistence equilibrium: y2* = {y2} is not positive")]
    NoCoexistence { y2: f64 },
}

type Result<T> = std::result::Result<T, NoosimError>;

/// Malthusian growth `y = y0 exp(k1 t)`, with `t` counted from `base_year`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentialParams {
    pub k1: f64,
    /// Initial information, EB.
    pub y0: f64,
    pub base_year: i32,
}

impl ExponentialParams {
    pub const BASE_YEAR: i32 = 2013;
    pub const BASE_INFO_EB: f64 = 1000.0;

    pub fn new(k1: f64, y0: f64, base_year: i32) -> Result<Self> {
        let p = Self { k1, y0, base_year };
        p.validate()?;
        Ok(p)
    }

    /// One doubling per year, `k1 = ln 2`.
    pub fn textbook() -> Self {
        Self { k1: LN_2, y0: Self::BASE_INFO_EB, base_year: Self::BASE_YEAR }
    }

    /// Fast-growth variant, `k1 = 2`.
    pub fn appendix() -> Self {
        Self { k1: 2.0, y0: Self::BASE_INFO_EB, base_year: Self::BASE_YEAR }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.k1.is_finite() && self.k1 > 0.0) {
            return Err(NoosimError::InvalidParams(format!("k1 = {} must be positive", self.k1)));
        }
        if !(self.y0.is_finite() && self.y0 > 0.0) {
            return Err(NoosimError::InvalidParams(format!("y0 = {} must be positive", self.y0)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LotkaVolterraParams {
    /// Prey (energy) growth rate.
    pub k1: f64,
    /// Predator (noosphere) loss rate.
    pub k2: f64,
    /// Interaction rate.
    pub k3: f64,
    /// Depletion pressure; zero gives the classical system.
    pub k4: f64,
}

impl LotkaVolterraParams {
    pub fn new(k1: f64, k2: f64, k3: f64, k4: f64) -> Result<Self> {
        let p = Self { k1, k2, k3, k4 };
        p.validate()?;
        Ok(p)
    }

    /// `k1 = 1, k2 = 10, k3 = 1`, no depletion.
    pub fn coexistence() -> Self {
        Self { k1: 1.0, k2: 10.0, k3: 1.0, k4: 0.0 }
    }

    /// [`coexistence`](Self::coexistence) with `k4 = 0.01`.
    pub fn depletion() -> Self {
        Self { k4: 0.01, ..Self::coexistence() }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("k1", self.k1), ("k2", self.k2), ("k3", self.k3)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(NoosimError::InvalidParams(format!("{name} = {v} must be positive")));
            }
        }
        if !(self.k4.is_finite() && self.k4 >= 0.0) {
            return Err(NoosimError::InvalidParams(format!("k4 = {} must be non-negative", self.k4)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyParadigmParams {
    pub epsilon: f64,
    pub alpha: f64,
    /// Capacity scale `A`.
    pub capacity: f64,
}

impl EnergyParadigmParams {
    pub fn new(epsilon: f64, alpha: f64, capacity: f64) -> Result<Self> {
        let p = Self { epsilon, alpha, capacity };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return Err(NoosimError::InvalidParams(format!("epsilon = {} must be positive", self.epsilon)));
        }
        if !(self.alpha.is_finite() && (0.0..1.0).contains(&self.alpha)) {
            return Err(NoosimError::InvalidParams(format!("alpha = {} must lie in [0, 1)", self.alpha)));
        }
        if !(self.capacity.is_finite() && self.capacity > 0.0) {
            return Err(NoosimError::InvalidParams(format!("A = {} must be positive", self.capacity)));
        }
        Ok(())
    }

    /// Non-trivial fixed point `A (ε - 1) / ((1 - α) ε)`.
    pub fn fixed_point(&self) -> f64 {
        self.capacity * (self.epsilon - 1.0) / ((1.0 - self.alpha) * self.epsilon)
    }
}

/// Information→energy accounting, in nuclear-plant equivalents.
///
/// Demand grows by `plants_per_doubling` for every doubling of stored
/// information above the baseline; `base_plants` correspond to
/// `base_percent` of world electricity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyModel {
    pub base_plants: u64,
    pub base_percent: f64,
    pub plants_per_doubling: u64,
}

impl Default for EnergyModel {
    fn default() -> Self {
        Self { base_plants: 30, base_percent: 2.0, plants_per_doubling: 30 }
    }
}

impl EnergyModel {
    /// Plants that would cover all of the world's electricity.
    pub fn world_plants(&self) -> f64 {
        self.base_plants as f64 * 100.0 / self.base_percent
    }

    pub fn percent_of_world(&self, plants: u64) -> f64 {
        plants as f64 * self.base_percent / self.base_plants as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlantDemand {
    pub plants: u64,
    pub percent: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReportRow {
    pub year: i32,
    pub info_eb: f64,
    pub plants: u64,
    pub percent: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SingularityReport {
    pub rows: Vec<ReportRow>,
    /// First year whose demand reaches 100%, if inside the horizon.
    pub collapse_year: Option<i32>,
}

impl SingularityReport {
    pub fn row(&self, year: i32) -> Option<&ReportRow> {
        self.rows.iter().find(|r| r.year == year)
    }
}

/// `y0 exp(k1 t)`.
pub fn exp_info(params: &ExponentialParams, t: f64) -> Result<f64> {
    params.validate()?;
    if !(t.is_finite() && t >= 0.0) {
        return Err(NoosimError::Domain(format!("t = {t} must be non-negative")));
    }
    let y = params.y0 * (params.k1 * t).exp();
    if !y.is_finite() || y > DIVERGENCE_BOUND {
        return Err(NoosimError::Diverged { t });
    }
    Ok(y)
}

/// `y' = k1 y`.
#[derive(Debug, Clone, Copy)]
pub struct ExponentialField {
    k1: f64,
}

impl VectorField for ExponentialField {
    fn eval(&self, _t: f64, y: &[f64], dy: &mut [f64]) {
        dy[0] = self.k1 * y[0];
    }
}

pub fn exp_rhs(params: &ExponentialParams) -> ExponentialField {
    ExponentialField { k1: params.k1 }
}

/// `y1' = y1 (k1 - k3 y2) - k4 y1²`, `y2' = y2 (-k2 + k3 y1)`.
#[derive(Debug, Clone, Copy)]
pub struct LotkaVolterraField {
    params: LotkaVolterraParams,
}

impl VectorField for LotkaVolterraField {
    fn eval(&self, _t: f64, y: &[f64], dy: &mut [f64]) {
        let LotkaVolterraParams { k1, k2, k3, k4 } = self.params;
        let (y1, y2) = (y[0], y[1]);
        // Grouped as the equilibrium formula so the coexistence point
        // evaluates to an exact zero.
        dy[0] = y1 * ((k1 - k4 * y1) - k3 * y2);
        dy[1] = y2 * (-k2 + k3 * y1);
    }
}

pub fn lv_rhs(params: &LotkaVolterraParams) -> LotkaVolterraField {
    LotkaVolterraField { params: *params }
}

/// First integral `H = k3 y1 - k2 ln y1 + k3 y2 - k1 ln y2` of the classical
/// (k4 = 0) system.
pub fn lv_invariant(params: &LotkaVolterraParams, y1: f64, y2: f64) -> Result<f64> {
    if params.k4 != 0.0 {
        return Err(NoosimError::Domain(format!("the invariant only exists for k4 = 0, got {}", params.k4)));
    }
    if !(y1 > 0.0 && y2 > 0.0) {
        return Err(NoosimError::Domain(format!("state ({y1}, {y2}) must be positive")));
    }
    let LotkaVolterraParams { k1, k2, k3, .. } = *params;
    Ok(k3 * y1 - k2 * y1.ln() + k3 * y2 - k1 * y2.ln())
}

/// Coexistence point `(k2/k3, (k1 - k4 k2/k3)/k3)`.
pub fn lv_equilibrium(params: &LotkaVolterraParams) -> Result<(f64, f64)> {
    if params.k3.is_nan() || params.k3 <= 0.0 {
        return Err(NoosimError::InvalidParams(format!("k3 = {} must be positive", params.k3)));
    }
    let y1 = params.k2 / params.k3;
    let y2 = (params.k1 - params.k4 * y1) / params.k3;
    if y2 <= 0.0 {
        return Err(NoosimError::NoCoexistence { y2 });
    }
    Ok((y1, y2))
}

/// `y → ε y - ((1 - α) ε / A) y²`.
#[derive(Debug, Clone, Copy)]
pub struct ParadigmMap {
    params: EnergyParadigmParams,
}

impl ParadigmMap {
    pub fn step(&self, y: f64) -> f64 {
        let EnergyParadigmParams { epsilon, alpha, capacity } = self.params;
        epsilon * y - ((1.0 - alpha) * epsilon / capacity) * y * y
    }
}

impl DiscreteMap for ParadigmMap {
    fn apply(&self, y: &[f64], next: &mut [f64]) {
        next[0] = self.step(y[0]);
    }
}

pub fn paradigm_map(params: &EnergyParadigmParams) -> ParadigmMap {
    ParadigmMap { params: *params }
}

/// Number of doublings, `log2(info / y0)`.
pub fn doublings(info: f64, params: &ExponentialParams) -> Result<f64> {
    params.validate()?;
    if !(info.is_finite() && info >= params.y0) {
        return Err(NoosimError::Domain(format!(
            "information {info} EB is below the baseline {} EB",
            params.y0
        )));
    }
    Ok((info / params.y0).log2())
}

/// Plants needed to power `info` EB, rounded to whole plants.
pub fn plants_required(info: f64, energy: &EnergyModel, params: &ExponentialParams) -> Result<PlantDemand> {
    let d = doublings(info, params)?;
    let plants = (energy.base_plants as f64 + energy.plants_per_doubling as f64 * d).round() as u64;
    Ok(PlantDemand { plants, percent: energy.percent_of_world(plants) })
}

/// Year-by-year information, plants and percent tables for
/// `base_year..=base_year + horizon`.
pub fn singularity_report(
    params: &ExponentialParams,
    energy: &EnergyModel,
    horizon: u32,
) -> Result<SingularityReport> {
    if horizon < 1 {
        return Err(NoosimError::Domain("horizon must be at least one year".into()));
    }
    let mut rows = Vec::with_capacity(horizon as usize + 1);
    let mut collapse_year = None;
    for t in 0..=horizon {
        let info = exp_info(params, t as f64)?;
        let demand = plants_required(info, energy, params)?;
        let year = params.base_year + t as i32;
        if collapse_year.is_none() && demand.percent >= 100.0 {
            collapse_year = Some(year);
        }
        rows.push(ReportRow { year, info_eb: info, plants: demand.plants, percent: demand.percent });
    }
    Ok(SingularityReport { rows, collapse_year })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrator::{integrate_rk4, StateVector, TimeGrid};

    #[test]
    fn exp_info_anchors() {
        let p = ExponentialParams::textbook();
        assert_eq!(exp_info(&p, 0.0).unwrap(), 1000.0);
        let y2045 = exp_info(&p, 32.0).unwrap();
        assert!((y2045 / 4.295e12 - 1.0).abs() < 1e-3);
        let y = exp_info(&ExponentialParams::appendix(), 17.0).unwrap();
        assert!((y / (1000.0 * 34f64.exp()) - 1.0).abs() < 1e-12);
        assert!((y / 5.834e17 - 1.0).abs() < 1e-3);
    }

    #[test]
    fn exp_info_overflow_and_domain() {
        let p = ExponentialParams::appendix();
        assert!(matches!(exp_info(&p, 400.0), Err(NoosimError::Diverged { .. })));
        assert!(matches!(exp_info(&p, -1.0), Err(NoosimError::Domain(_))));
    }

    #[test]
    fn exp_rhs_values() {
        let f = exp_rhs(&ExponentialParams::appendix());
        let mut dy = [0.0];
        f.eval(0.0, &[0.0], &mut dy);
        assert_eq!(dy[0], 0.0);
        f.eval(0.0, &[1000.0], &mut dy);
        assert_eq!(dy[0], 2000.0);
    }

    #[test]
    fn exp_rhs_one_doubling() {
        let p = ExponentialParams::textbook();
        let grid = TimeGrid::new(0.0, 1.0, 0.001).unwrap();
        let traj = integrate_rk4(&exp_rhs(&p), &StateVector::from_values(&[1000.0]), &grid).unwrap();
        assert!((traj.last().unwrap().1[0] - 2000.0).abs() < 1e-6);
    }

    #[test]
    fn lv_rhs_fixed_points() {
        let mut dy = [1.0, 1.0];
        lv_rhs(&LotkaVolterraParams::coexistence()).eval(0.0, &[0.0, 0.0], &mut dy);
        assert_eq!(dy, [0.0, 0.0]);
        lv_rhs(&LotkaVolterraParams::coexistence()).eval(0.0, &[10.0, 1.0], &mut dy);
        assert_eq!(dy, [0.0, 0.0]);
        lv_rhs(&LotkaVolterraParams::depletion()).eval(0.0, &[10.0, 0.9], &mut dy);
        assert_eq!(dy, [0.0, 0.0]);
    }

    #[test]
    fn invariant_values() {
        let p = LotkaVolterraParams::coexistence();
        let h = lv_invariant(&p, 10.0, 1.0).unwrap();
        assert!((h - (11.0 - 10.0 * 10f64.ln())).abs() < 1e-12);
        assert!((h - -12.0259).abs() < 1e-4);
        let h0 = lv_invariant(&p, 0.02, 1.0).unwrap();
        assert!((h0 - (1.02 - 10.0 * 0.02f64.ln())).abs() < 1e-12);
        assert!((h0 - 40.14023).abs() < 1e-5);
        assert!(lv_invariant(&p, 0.0, 1.0).is_err());
        assert!(lv_invariant(&LotkaVolterraParams::depletion(), 1.0, 1.0).is_err());
    }

    #[test]
    fn equilibria() {
        assert_eq!(lv_equilibrium(&LotkaVolterraParams::coexistence()).unwrap(), (10.0, 1.0));
        let (a, b) = lv_equilibrium(&LotkaVolterraParams::depletion()).unwrap();
        assert_eq!(a, 10.0);
        assert!((b - 0.9).abs() < 1e-15);
        let strong = LotkaVolterraParams { k4: 0.2, ..LotkaVolterraParams::coexistence() };
        assert!(matches!(lv_equilibrium(&strong), Err(NoosimError::NoCoexistence { .. })));
    }

    #[test]
    fn paradigm_fixed_point() {
        let p = EnergyParadigmParams::new(2.0, 0.5, 100.0).unwrap();
        let m = paradigm_map(&p);
        assert_eq!(m.step(0.0), 0.0);
        assert_eq!(p.fixed_point(), 100.0);
        assert_eq!(m.step(100.0), 100.0);
        let mut y = 10.0;
        for _ in 0..50 {
            y = m.step(y);
        }
        assert!((y - 100.0).abs() < 1e-9);
    }

    #[test]
    fn paradigm_params_validation() {
        assert!(EnergyParadigmParams::new(2.0, 1.0, 100.0).is_err());
        assert!(EnergyParadigmParams::new(0.0, 0.5, 100.0).is_err());
        assert!(EnergyParadigmParams::new(2.0, 0.5, -1.0).is_err());
    }

    #[test]
    fn doublings_values() {
        let p = ExponentialParams::textbook();
        assert_eq!(doublings(1000.0, &p).unwrap(), 0.0);
        assert_eq!(doublings(2000.0, &p).unwrap(), 1.0);
        assert!((doublings(4.295e12, &p).unwrap() - 32.0).abs() < 1e-3);
        assert!(doublings(999.0, &p).is_err());
    }

    // Linear-in-doublings coupling checked against the three published
    // anchors before anything else relies on it.
    #[test]
    fn thirty_plants_per_doubling_fits_anchors() {
        let anchor = |t: f64| 30.0 * (1.0 + t);
        assert_eq!(anchor(0.0), 30.0);
        assert_eq!(anchor(32.0), 990.0);
        assert_eq!(anchor(49.0), 1500.0);
        assert_eq!(anchor(0.0) / 15.0, 2.0);
        assert_eq!(anchor(32.0) / 15.0, 66.0);
        assert_eq!(anchor(49.0) / 15.0, 100.0);
    }

    #[test]
    fn plants_anchors() {
        let p = ExponentialParams::textbook();
        let e = EnergyModel::default();
        assert_eq!(e.world_plants(), 1500.0);
        for (t, plants, percent) in [(0.0, 30, 2.0), (32.0, 990, 66.0), (49.0, 1500, 100.0)] {
            let d = plants_required(exp_info(&p, t).unwrap(), &e, &p).unwrap();
            assert_eq!(d, PlantDemand { plants, percent });
        }
    }

    #[test]
    fn report_collapse() {
        let p = ExponentialParams::textbook();
        let e = EnergyModel::default();
        let r = singularity_report(&p, &e, 60).unwrap();
        assert_eq!(r.collapse_year, Some(2062));
        assert_eq!(r.row(2061).unwrap().plants, 1470);
        assert!(singularity_report(&p, &e, 10).unwrap().collapse_year.is_none());
        let eb2030 = r.row(2030).unwrap().info_eb;
        assert!((eb2030 / 1.311e8 - 1.0).abs() < 1e-3);
        assert!(singularity_report(&p, &e, 0).is_err());
    }

    #[test]
    fn report_collapse_is_scale_invariant() {
        let e = EnergyModel::default();
        let base = singularity_report(&ExponentialParams::textbook(), &e, 60).unwrap();
        for c in [1e-3, 0.5, 7.0, 1e6] {
            let p = ExponentialParams { y0: 1000.0 * c, ..ExponentialParams::textbook() };
            assert_eq!(singularity_report(&p, &e, 60).unwrap().collapse_year, base.collapse_year);
        }
    }
}
