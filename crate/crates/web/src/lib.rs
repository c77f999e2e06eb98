//! wasm-bindgen bindings behind `www/index.html`.
//!
//! Errors cross the boundary as plain strings so everything here also runs
//! natively under `cargo test`.

use wasm_bindgen::prelude::*;

use noosphere::integrator::IntegrationError;
use noosphere::lifeca::{is_garden_of_eden, parse_pattern, Grid, Torus, GOE_MAX_CELLS};
use noosphere::noosim::scenario::{Mode, Scenario, ScenarioError, ScenarioSetup};
use noosphere::noosim::{singularity_report, EnergyModel, EnergyParadigmParams, LotkaVolterraParams};

const MAX_PATTERN: &str = include_str!("../../core/data/max.cells");

/// Sampled trajectory, row-major: `t, y1[, y2]` per sample.
#[wasm_bindgen]
pub struct Series {
    columns: usize,
    data: Vec<f64>,
    diverged: bool,
}

#[wasm_bindgen]
impl Series {
    /// Values per row including `t`.
    #[wasm_bindgen(getter)]
    pub fn columns(&self) -> usize {
        self.columns
    }

    #[wasm_bindgen(getter)]
    pub fn data(&self) -> Vec<f64> {
        self.data.clone()
    }

    /// True when the run blew up and `data` holds only the finite prefix.
    #[wasm_bindgen(getter)]
    pub fn diverged(&self) -> bool {
        self.diverged
    }
}

/// Runs scenario `"1"`, `"2"`, `"3"` or `"paradigm"`.
///
/// `params` follows the scenario's parameter list (`k1..k4` or `eps, alpha, A`);
/// an empty slice keeps the defaults. For the paradigm map `span` is the
/// number of iterations and `h` is ignored.
#[wasm_bindgen]
pub fn simulate(scenario: &str, appendix: bool, params: &[f64], span: f64, h: f64) -> Result<Series, String> {
    let scenario: Scenario = scenario.parse()?;
    let mode = if appendix { Mode::Appendix } else { Mode::Textbook };
    let expected = scenario.parameters().len();
    if !params.is_empty() && params.len() != expected {
        return Err(format!("scenario {scenario} takes {expected} parameters, got {}", params.len()));
    }
    let mut setup = ScenarioSetup::defaults(scenario, mode);
    match &mut setup {
        ScenarioSetup::Exponential { params: p, t_end, h: step } => {
            if let [k1] = params {
                p.k1 = *k1;
            }
            *t_end = span;
            *step = h;
        }
        ScenarioSetup::LotkaVolterra { params: p, t_end, h: step, .. } => {
            *p = match params {
                [k1, k2, k3] => LotkaVolterraParams { k1: *k1, k2: *k2, k3: *k3, k4: 0.0 },
                [k1, k2, k3, k4] => LotkaVolterraParams { k1: *k1, k2: *k2, k3: *k3, k4: *k4 },
                _ => *p,
            };
            *t_end = span;
            *step = h;
        }
        ScenarioSetup::Paradigm { params: p, steps, .. } => {
            if let [epsilon, alpha, capacity] = params {
                *p = EnergyParadigmParams { epsilon: *epsilon, alpha: *alpha, capacity: *capacity };
            }
            if !(0.0..=1e6).contains(&span) {
                return Err(format!("iteration count {span} out of range"));
            }
            *steps = span as usize;
        }
    }
    let (traj, diverged) = match setup.run() {
        Ok(t) => (t, false),
        Err(ScenarioError::Integration(IntegrationError::Diverged { partial, .. })) => (partial, true),
        Err(e) => return Err(e.to_string()),
    };
    let columns = traj.labels().len() + 1;
    let mut data = Vec::with_capacity(traj.len() * columns);
    for (t, y) in traj.samples() {
        data.push(t);
        data.extend_from_slice(y);
    }
    Ok(Series { columns, data, diverged })
}

/// Year-by-year table as CSV text with a trailing collapse line.
#[wasm_bindgen]
pub fn report(appendix: bool, horizon: u32) -> Result<String, String> {
    let mode = if appendix { Mode::Appendix } else { Mode::Textbook };
    let r = singularity_report(&mode.exponential_params(), &EnergyModel::default(), horizon)
        .map_err(|e| e.to_string())?;
    let mut out = String::from("year,EB,plants,percent\n");
    for row in &r.rows {
        out += &format!("{},{},{},{}\n", row.year, row.info_eb, row.plants, row.percent);
    }
    out += &match r.collapse_year {
        Some(y) => format!("collapse year: {y}\n"),
        None => "collapse: not reached\n".to_string(),
    };
    Ok(out)
}

/// Editable toroidal Life board.
#[wasm_bindgen]
pub struct LifeBoard {
    torus: Torus,
    generation: u64,
}

#[wasm_bindgen]
impl LifeBoard {
    #[wasm_bindgen(constructor)]
    pub fn new(width: usize, height: usize) -> Result<LifeBoard, String> {
        let torus = Torus::new(width, height).map_err(|e| e.to_string())?;
        Ok(LifeBoard { torus, generation: 0 })
    }

    #[wasm_bindgen(getter)]
    pub fn width(&self) -> usize {
        self.torus.width()
    }

    #[wasm_bindgen(getter)]
    pub fn height(&self) -> usize {
        self.torus.height()
    }

    #[wasm_bindgen(getter)]
    pub fn generation(&self) -> u64 {
        self.generation
    }

    #[wasm_bindgen(getter)]
    pub fn population(&self) -> usize {
        self.torus.population()
    }

    /// One byte per cell, row-major, 1 for alive.
    pub fn cells(&self) -> Vec<u8> {
        self.torus.cells().iter().map(|&c| c as u8).collect()
    }

    pub fn toggle(&mut self, row: usize, col: usize) {
        let alive = self.torus.get(row, col);
        self.torus.set(row, col, !alive);
    }

    pub fn clear(&mut self) {
        self.torus = Torus::new(self.width(), self.height()).expect("same size as before");
        self.generation = 0;
    }

    pub fn step(&mut self, n: u32) {
        for _ in 0..n {
            self.torus = self.torus.step();
        }
        self.generation += u64::from(n);
    }

    /// Replaces the board with a `.`/`#` pattern centred on it.
    pub fn load(&mut self, text: &str) -> Result<(), String> {
        let p = parse_pattern(text).map_err(|e| e.to_string())?;
        let (w, h) = (self.width(), self.height());
        let row = h.saturating_sub(p.height()) / 2;
        let col = w.saturating_sub(p.width()) / 2;
        self.torus = p.to_torus_padded(w, h, row, col).map_err(|e| e.to_string())?;
        self.generation = 0;
        Ok(())
    }

    pub fn load_max(&mut self) -> Result<(), String> {
        self.load(MAX_PATTERN)
    }

    /// Exhaustive predecessor search; boards above the cell limit are refused.
    pub fn garden_of_eden(&self) -> Result<bool, String> {
        if self.width() * self.height() > GOE_MAX_CELLS {
            return Err(format!("board has more than {GOE_MAX_CELLS} cells"));
        }
        is_garden_of_eden(&Grid::Toroidal(self.torus.clone())).map_err(|e| e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn growth_series_layout() {
        let s = simulate("1", true, &[], 17.0, 0.01).unwrap();
        assert_eq!(s.columns(), 2);
        assert_eq!(s.data().len(), 1701 * 2);
        assert!(!s.diverged());
    }

    #[test]
    fn lv_with_params() {
        let s = simulate("3", false, &[1.0, 10.0, 1.0, 0.01], 10.0, 0.01).unwrap();
        assert_eq!(s.columns(), 3);
        assert_eq!(s.data().len(), 1001 * 3);
        assert!(simulate("2", false, &[1.0], 10.0, 0.01).is_err());
    }

    #[test]
    fn paradigm_iterations() {
        let s = simulate("paradigm", false, &[], 60.0, 0.0).unwrap();
        assert_eq!(s.data().len(), 61 * 2);
        assert!((s.data()[121] - 100.0).abs() < 1e-9);
    }

    #[test]
    fn divergence_is_partial() {
        let s = simulate("1", true, &[], 400.0, 1.0).unwrap();
        assert!(s.diverged());
        assert!(s.data().iter().all(|v| v.is_finite()));
    }

    #[test]
    fn report_text() {
        let r = report(false, 60).unwrap();
        assert!(r.contains("\n2045,"));
        assert!(r.ends_with("collapse year: 2062\n"));
    }

    #[test]
    fn board_blinker_and_max() {
        let mut b = LifeBoard::new(5, 5).unwrap();
        for c in 1..4 {
            b.toggle(2, c);
        }
        let before = b.cells();
        b.step(2);
        assert_eq!(b.cells(), before);
        assert_eq!(b.generation(), 2);
        assert!(b.garden_of_eden().is_err());

        let mut big = LifeBoard::new(96, 96).unwrap();
        big.load_max().unwrap();
        assert_eq!(big.population(), 187);
    }

    #[test]
    fn small_board_goe() {
        let mut b = LifeBoard::new(3, 3).unwrap();
        assert!(!b.garden_of_eden().unwrap());
        b.toggle(0, 0);
        assert!(b.garden_of_eden().unwrap());
    }
}
