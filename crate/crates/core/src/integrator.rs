//! Fixed-step integration of continuous systems and iteration of discrete maps.
//!
//! Everything here is a pure function of its inputs. Trajectories are sampled
//! on a uniform [`TimeGrid`]; a state is considered diverged once any
//! component is non-finite or exceeds [`DIVERGENCE_BOUND`] in magnitude.

use std::fmt;

use thiserror::Error;

/// Magnitude past which a state component counts as diverged.
pub const DIVERGENCE_BOUND: f64 = 1e300;

/// Relative tolerance for grid spacing and end-point exactness.
const GRID_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum IntegrationError {
    #[error("invalid time grid: {0}")]
    InvalidGrid(String),
    #[error("invalid initial state: {0}")]
    InvalidState(String),
    /// The partial trajectory ends at the last valid sample.
    #[error("integration diverged at t = {t} after {} valid samples", partial.len())]
    Diverged { t: f64, partial: Trajectory },
}

/// Uniform sampling grid `t0, t0 + h, ..., t_end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    t0: f64,
    t_end: f64,
    steps: usize,
}

impl TimeGrid {
    /// Builds a grid whose span is an integer multiple of `h` (to within one
    /// part in 10⁹).
    pub fn new(t0: f64, t_end: f64, h: f64) -> Result<Self, IntegrationError> {
        if !(t0.is_finite() && t_end.is_finite() && h.is_finite()) {
            return Err(IntegrationError::InvalidGrid("non-finite bound or step".into()));
        }
        if h <= 0.0 {
            return Err(IntegrationError::InvalidGrid(format!("step h = {h} must be positive")));
        }
        if t_end <= t0 {
            return Err(IntegrationError::InvalidGrid(format!("t_end = {t_end} must exceed t0 = {t0}")));
        }
        let span = t_end - t0;
        let ratio = (span / h).round();
        if ratio < 1.0 || ratio > u32::MAX as f64 {
            return Err(IntegrationError::InvalidGrid(format!("{ratio} steps is out of range")));
        }
        if (ratio * h - span).abs() > GRID_TOLERANCE * span {
            return Err(IntegrationError::InvalidGrid(format!(
                "span {span} is not a whole number of steps of {h}"
            )));
        }
        Ok(Self { t0, t_end, steps: ratio as usize })
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    /// Effective step, `(t_end - t0) / steps`.
    pub fn h(&self) -> f64 {
        (self.t_end - self.t0) / self.steps as f64
    }

    /// Sample count, `steps + 1`.
    pub fn len(&self) -> usize {
        self.steps + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Time stamp of sample `i`. The last stamp is exactly `t_end`.
    pub fn time(&self, i: usize) -> f64 {
        if i == self.steps {
            self.t_end
        } else {
            self.t0 + i as f64 * self.h()
        }
    }
}

/// Named, ordered real-valued state.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    labels: Vec<String>,
    values: Vec<f64>,
}

impl StateVector {
    pub fn new<S: Into<String>>(components: impl IntoIterator<Item = (S, f64)>) -> Self {
        let (labels, values) = components.into_iter().map(|(l, v)| (l.into(), v)).unzip();
        Self { labels, values }
    }

    /// Labels `y1, y2, ...` in order.
    pub fn from_values(values: &[f64]) -> Self {
        Self::new(values.iter().enumerate().map(|(i, &v)| (format!("y{}", i + 1), v)))
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn get(&self, label: &str) -> Option<f64> {
        self.labels.iter().position(|l| l == label).map(|i| self.values[i])
    }

    pub fn is_finite(&self) -> bool {
        is_valid(&self.values)
    }
}

/// Uniformly sampled time series of a [`StateVector`]. Samples are stored
/// row-major.
#[derive(Clone, PartialEq)]
pub struct Trajectory {
    labels: Vec<String>,
    times: Vec<f64>,
    values: Vec<f64>,
}

impl fmt::Debug for Trajectory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Trajectory")
            .field("labels", &self.labels)
            .field("samples", &self.times.len())
            .field("t_last", &self.times.last())
            .finish()
    }
}

impl Trajectory {
    fn with_capacity(labels: Vec<String>, samples: usize) -> Self {
        let dim = labels.len();
        Self { labels, times: Vec::with_capacity(samples), values: Vec::with_capacity(samples * dim) }
    }

    fn push(&mut self, t: f64, state: &[f64]) {
        debug_assert_eq!(state.len(), self.dim());
        self.times.push(t);
        self.values.extend_from_slice(state);
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    /// State at sample `i`.
    pub fn state(&self, i: usize) -> &[f64] {
        let d = self.dim();
        &self.values[i * d..(i + 1) * d]
    }

    pub fn last(&self) -> Option<(f64, &[f64])> {
        let n = self.len();
        (n > 0).then(|| (self.times[n - 1], self.state(n - 1)))
    }

    pub fn samples(&self) -> impl Iterator<Item = (f64, &[f64])> + '_ {
        let d = self.dim().max(1);
        self.times.iter().copied().zip(self.values.chunks_exact(d))
    }

    /// Time series of component `index`.
    pub fn component(&self, index: usize) -> Vec<f64> {
        self.samples().map(|(_, s)| s[index]).collect()
    }

    pub fn column(&self, label: &str) -> Option<Vec<f64>> {
        self.labels.iter().position(|l| l == label).map(|i| self.component(i))
    }
}

/// Right-hand side `dy = f(t, y)` of an autonomous or non-autonomous ODE.
pub trait VectorField {
    fn eval(&self, t: f64, y: &[f64], dy: &mut [f64]);
}

impl<F> VectorField for F
where
    F: Fn(f64, &[f64], &mut [f64]),
{
    fn eval(&self, t: f64, y: &[f64], dy: &mut [f64]) {
        self(t, y, dy)
    }
}

/// One-step recurrence `y(t) = g(y(t - 1))`.
pub trait DiscreteMap {
    fn apply(&self, y: &[f64], next: &mut [f64]);
}

impl<F> DiscreteMap for F
where
    F: Fn(&[f64], &mut [f64]),
{
    fn apply(&self, y: &[f64], next: &mut [f64]) {
        self(y, next)
    }
}

fn is_valid(state: &[f64]) -> bool {
    state.iter().all(|v| v.is_finite() && v.abs() <= DIVERGENCE_BOUND)
}

fn check_initial(y0: &StateVector) -> Result<(), IntegrationError> {
    if y0.dim() == 0 {
        return Err(IntegrationError::InvalidState("empty state".into()));
    }
    if !y0.is_finite() {
        return Err(IntegrationError::InvalidState(format!("{:?} is not finite", y0.values())));
    }
    Ok(())
}

/// Classical RK4 with fixed step; one scratch buffer set per integration.
struct Rk4 {
    k1: Vec<f64>,
    k2: Vec<f64>,
    k3: Vec<f64>,
    k4: Vec<f64>,
    tmp: Vec<f64>,
}

impl Rk4 {
    fn new(dim: usize) -> Self {
        Self {
            k1: vec![0.0; dim],
            k2: vec![0.0; dim],
            k3: vec![0.0; dim],
            k4: vec![0.0; dim],
            tmp: vec![0.0; dim],
        }
    }

    fn step<F: VectorField + ?Sized>(&mut self, rhs: &F, t: f64, h: f64, y: &mut [f64]) {
        let half = 0.5 * h;
        rhs.eval(t, y, &mut self.k1);
        for ((tmp, y), k) in self.tmp.iter_mut().zip(y.iter()).zip(&self.k1) {
            *tmp = y + half * k;
        }
        rhs.eval(t + half, &self.tmp, &mut self.k2);
        for ((tmp, y), k) in self.tmp.iter_mut().zip(y.iter()).zip(&self.k2) {
            *tmp = y + half * k;
        }
        rhs.eval(t + half, &self.tmp, &mut self.k3);
        for ((tmp, y), k) in self.tmp.iter_mut().zip(y.iter()).zip(&self.k3) {
            *tmp = y + h * k;
        }
        rhs.eval(t + h, &self.tmp, &mut self.k4);
        let sixth = h / 6.0;
        for (i, yi) in y.iter_mut().enumerate() {
            *yi += sixth * (self.k1[i] + 2.0 * self.k2[i] + 2.0 * self.k3[i] + self.k4[i]);
        }
    }
}

/// Integrates `rhs` from `y0` with classical RK4, emitting a sample at every
/// grid point (including both ends).
pub fn integrate_rk4<F: VectorField + ?Sized>(
    rhs: &F,
    y0: &StateVector,
    grid: &TimeGrid,
) -> Result<Trajectory, IntegrationError> {
    integrate_rk4_substepped(rhs, y0, grid, 1)
}

/// Like [`integrate_rk4`] but takes `substeps` internal RK4 steps of
/// `grid.h() / substeps` between consecutive samples.
pub fn integrate_rk4_substepped<F: VectorField + ?Sized>(
    rhs: &F,
    y0: &StateVector,
    grid: &TimeGrid,
    substeps: usize,
) -> Result<Trajectory, IntegrationError> {
    check_initial(y0)?;
    if substeps == 0 {
        return Err(IntegrationError::InvalidGrid("substeps must be at least 1".into()));
    }
    let dim = y0.dim();
    let mut traj = Trajectory::with_capacity(y0.labels().to_vec(), grid.len());
    let mut y = y0.values().to_vec();
    let mut scratch = y.clone();
    let mut rk = Rk4::new(dim);
    let total = grid.steps() * substeps;
    let inner_h = (grid.t_end() - grid.t0()) / total as f64;

    traj.push(grid.t0(), &y);
    for i in 1..=grid.steps() {
        scratch.copy_from_slice(&y);
        for j in 0..substeps {
            let k = (i - 1) * substeps + j;
            let t = grid.t0() + k as f64 * inner_h;
            rk.step(rhs, t, inner_h, &mut scratch);
        }
        let t = grid.time(i);
        if !is_valid(&scratch) {
            return Err(IntegrationError::Diverged { t, partial: traj });
        }
        y.copy_from_slice(&scratch);
        traj.push(t, &y);
    }
    Ok(traj)
}

/// Iterates `map` `steps` times from `y0`; samples are stamped `0..=steps`.
pub fn iterate_map<M: DiscreteMap + ?Sized>(
    map: &M,
    y0: &StateVector,
    steps: usize,
) -> Result<Trajectory, IntegrationError> {
    check_initial(y0)?;
    let mut traj = Trajectory::with_capacity(y0.labels().to_vec(), steps + 1);
    let mut y = y0.values().to_vec();
    let mut next = y.clone();
    traj.push(0.0, &y);
    for i in 1..=steps {
        map.apply(&y, &mut next);
        if !is_valid(&next) {
            return Err(IntegrationError::Diverged { t: i as f64, partial: traj });
        }
        std::mem::swap(&mut y, &mut next);
        traj.push(i as f64, &y);
    }
    Ok(traj)
}
