//! `noocli`: runs the noosphere scenarios, prints the singularity report and
//! drives the Life engine and the N-computer from files.
//!
//! Exit codes: 0 on success, 1 on usage or parse errors (and any other
//! non-numerical failure), 2 when an integration diverges. A diverged
//! scenario still writes its partial CSV.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Display;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use noosphere::integrator::{IntegrationError, Trajectory};
use noosphere::lifeca::{self, growth_class, is_garden_of_eden, parse_pattern, Grid, Pattern};
use noosphere::ncomp::{self, Address, MachineId, NComputer};
use noosphere::noosim::scenario::{Mode, Scenario, ScenarioError, ScenarioSetup};
use noosphere::noosim::{singularity_report, EnergyModel, LotkaVolterraParams, SingularityReport};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    #[error("{0}")]
    Failed(String),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("integration diverged at t = {t}; partial output has {samples} samples")]
    Diverged { t: f64, samples: usize },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Diverged { .. } => 2,
            _ => 1,
        }
    }

    fn io(path: impl AsRef<Path>, source: io::Error) -> Self {
        CliError::Io { path: path.as_ref().display().to_string(), source }
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "noocli", version, about = "Noosphere energy-dynamics simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a growth, Lotka–Volterra or paradigm scenario and emit CSV.
    Scenario(ScenarioArgs),
    /// Print the year-by-year information/energy table and collapse year.
    Report(ReportArgs),
    /// Evolve a plain-text Life pattern.
    Life(LifeArgs),
    /// Run the N-computer demo on a strand file.
    Ncomp(NcompArgs),
}

#[derive(Debug, Args, Default)]
pub struct ScenarioArgs {
    /// 1, 2, 3 or paradigm.
    #[arg(long)]
    pub scenario: Option<String>,
    /// textbook (k1 = ln 2) or appendix (k1 = 2).
    #[arg(long)]
    pub mode: Option<String>,
    #[arg(long)]
    pub k1: Option<f64>,
    #[arg(long)]
    pub k2: Option<f64>,
    #[arg(long)]
    pub k3: Option<f64>,
    #[arg(long)]
    pub k4: Option<f64>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long = "A")]
    pub capacity: Option<f64>,
    #[arg(long = "t-end")]
    pub t_end: Option<f64>,
    /// Output sampling step.
    #[arg(long)]
    pub h: Option<f64>,
    /// Iterations of the paradigm map.
    #[arg(long)]
    pub steps: Option<usize>,
    /// Write CSV here instead of standard output.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// key=value file; flags given on the command line take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(long, default_value = "textbook")]
    pub mode: String,
    /// Years after 2013 to tabulate.
    #[arg(long, default_value_t = 60)]
    pub horizon: u32,
}

#[derive(Debug, Args)]
pub struct LifeArgs {
    /// Pattern file ('.' dead, '#' alive, '!' comments).
    pub pattern: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub steps: usize,
    /// Report whether the pattern, on a torus of its own size, is a Garden of Eden.
    #[arg(long)]
    pub goe: bool,
    /// Classify population growth on the unbounded plane.
    #[arg(long)]
    pub classify: bool,
    /// Evolve on the unbounded plane instead of a torus of the file's size.
    #[arg(long)]
    pub unbounded: bool,
    /// Write the population CSV here instead of standard output.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct NcompArgs {
    /// Strand file (115 bases per line, '#' comments).
    pub strands: PathBuf,
    /// Generations per ALU execution.
    #[arg(long, default_value_t = 4)]
    pub steps: usize,
    /// Machines per unit of the predator population.
    #[arg(long, default_value_t = 10.0)]
    pub scale: f64,
    /// End of the driving Lotka–Volterra run.
    #[arg(long = "t-end", default_value_t = 100.0)]
    pub t_end: f64,
    /// Sampling step of the driving run.
    #[arg(long, default_value_t = 0.5)]
    pub h: f64,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from<I, T>(args: I, out: &mut dyn Write) -> Result<()>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| CliError::Usage(e.to_string()))?;
    run(cli, out)
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Scenario(args) => scenario_cmd(args, out),
        Command::Report(args) => {
            let mode = args.mode.parse::<Mode>().map_err(CliError::Usage)?;
            report_cmd(mode, args.horizon, out)
        }
        Command::Life(args) => life_cmd(&args, out),
        Command::Ncomp(args) => ncomp_demo(&args, out),
    }
}

fn stdout_err(e: io::Error) -> CliError {
    CliError::io("<stdout>", e)
}

// ---------------------------------------------------------------- scenario

/// Validated scenario request.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub scenario: Scenario,
    pub mode: Mode,
    pub overrides: BTreeMap<String, f64>,
    pub t_end: Option<f64>,
    pub h: Option<f64>,
    pub steps: Option<usize>,
    pub csv: Option<PathBuf>,
}

/// `key=value` lines; `#` starts a comment line.
pub fn parse_config_file(text: &str) -> std::result::Result<BTreeMap<String, String>, String> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| format!("line {}: expected key=value", i + 1))?;
        let key = k.trim().trim_start_matches("--").to_string();
        if map.insert(key.clone(), v.trim().to_string()).is_some() {
            return Err(format!("line {}: duplicate key {key}", i + 1));
        }
    }
    Ok(map)
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: Display,
{
    value.parse().map_err(|e| CliError::Usage(format!("invalid value '{value}' for {key}: {e}")))
}

impl RunConfig {
    /// Merges a config file (if any) under the command-line flags and checks
    /// that every override belongs to the chosen scenario.
    pub fn resolve(args: ScenarioArgs) -> Result<Self> {
        let mut file = match &args.config {
            Some(path) => {
                let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
                parse_config_file(&text)
                    .map_err(|message| CliError::Parse { path: path.display().to_string(), message })?
            }
            None => BTreeMap::new(),
        };
        let mut take = |key: &str| file.remove(key);

        let scenario_text = args
            .scenario
            .or_else(|| take("scenario"))
            .ok_or_else(|| CliError::Usage("--scenario is required".into()))?;
        let scenario = scenario_text.parse::<Scenario>().map_err(CliError::Usage)?;
        let mode = match args.mode.or_else(|| take("mode")) {
            Some(m) => m.parse::<Mode>().map_err(CliError::Usage)?,
            None => Mode::default(),
        };

        let flags = [
            ("k1", args.k1),
            ("k2", args.k2),
            ("k3", args.k3),
            ("k4", args.k4),
            ("eps", args.eps),
            ("alpha", args.alpha),
            ("A", args.capacity),
        ];
        let mut overrides = BTreeMap::new();
        for (name, flag) in flags {
            let value = match (flag, take(name)) {
                (Some(v), _) => Some(v),
                (None, Some(text)) => Some(parse_value::<f64>(name, &text)?),
                (None, None) => None,
            };
            if let Some(v) = value {
                if !scenario.parameters().contains(&name) {
                    return Err(CliError::Usage(format!(
                        "--{name} does not apply to scenario {scenario} (accepts {})",
                        scenario.parameters().join(", ")
                    )));
                }
                overrides.insert(name.to_string(), v);
            }
        }
        let t_end = match (args.t_end, take("t-end")) {
            (Some(v), _) => Some(v),
            (None, Some(t)) => Some(parse_value("t-end", &t)?),
            _ => None,
        };
        let h = match (args.h, take("h")) {
            (Some(v), _) => Some(v),
            (None, Some(t)) => Some(parse_value("h", &t)?),
            _ => None,
        };
        let steps = match (args.steps, take("steps")) {
            (Some(v), _) => Some(v),
            (None, Some(t)) => Some(parse_value("steps", &t)?),
            _ => None,
        };
        let csv = args.csv.or_else(|| take("csv").map(PathBuf::from));
        if let Some(key) = file.keys().next() {
            return Err(CliError::Usage(format!("unknown configuration key '{key}'")));
        }
        let is_map = scenario == Scenario::Paradigm;
        if is_map && (t_end.is_some() || h.is_some()) {
            return Err(CliError::Usage("the paradigm map takes --steps, not --t-end/--h".into()));
        }
        if !is_map && steps.is_some() {
            return Err(CliError::Usage(format!("--steps does not apply to scenario {scenario}")));
        }
        Ok(Self { scenario, mode, overrides, t_end, h, steps, csv })
    }

    pub fn setup(&self) -> Result<ScenarioSetup> {
        let mut setup = ScenarioSetup::defaults(self.scenario, self.mode);
        let get = |k: &str| self.overrides.get(k).copied();
        match &mut setup {
            ScenarioSetup::Exponential { params, t_end, h } => {
                params.k1 = get("k1").unwrap_or(params.k1);
                *t_end = self.t_end.unwrap_or(*t_end);
                *h = self.h.unwrap_or(*h);
            }
            ScenarioSetup::LotkaVolterra { params, t_end, h, .. } => {
                params.k1 = get("k1").unwrap_or(params.k1);
                params.k2 = get("k2").unwrap_or(params.k2);
                params.k3 = get("k3").unwrap_or(params.k3);
                params.k4 = get("k4").unwrap_or(params.k4);
                *t_end = self.t_end.unwrap_or(*t_end);
                *h = self.h.unwrap_or(*h);
            }
            ScenarioSetup::Paradigm { params, steps, .. } => {
                params.epsilon = get("eps").unwrap_or(params.epsilon);
                params.alpha = get("alpha").unwrap_or(params.alpha);
                params.capacity = get("A").unwrap_or(params.capacity);
                *steps = self.steps.unwrap_or(*steps);
            }
        }
        setup.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(setup)
    }
}

/// Header plus one row per sample, every number with 17 significant digits.
pub fn write_csv(traj: &Trajectory, w: &mut dyn Write) -> io::Result<()> {
    write!(w, "t")?;
    for label in traj.labels() {
        write!(w, ",{label}")?;
    }
    writeln!(w)?;
    for (t, state) in traj.samples() {
        write!(w, "{t:.16e}")?;
        for v in state {
            write!(w, ",{v:.16e}")?;
        }
        writeln!(w)?;
    }
    Ok(())
}

fn emit_csv(traj: &Trajectory, csv: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    match csv {
        Some(path) => {
            let mut buf = Vec::new();
            write_csv(traj, &mut buf).expect("writing to memory");
            fs::write(path, buf).map_err(|e| CliError::io(path, e))
        }
        None => write_csv(traj, out).map_err(stdout_err),
    }
}

/// Runs a scenario and writes its CSV; on divergence the partial trajectory
/// is written before the error is returned.
pub fn run_scenario(config: &RunConfig, out: &mut dyn Write) -> Result<Trajectory> {
    let setup = config.setup()?;
    match setup.run() {
        Ok(traj) => {
            emit_csv(&traj, config.csv.as_deref(), out)?;
            Ok(traj)
        }
        Err(ScenarioError::Integration(IntegrationError::Diverged { t, partial })) => {
            emit_csv(&partial, config.csv.as_deref(), out)?;
            Err(CliError::Diverged { t, samples: partial.len() })
        }
        Err(e) => Err(CliError::Usage(e.to_string())),
    }
}

fn scenario_cmd(args: ScenarioArgs, out: &mut dyn Write) -> Result<()> {
    let config = RunConfig::resolve(args)?;
    run_scenario(&config, out).map(|_| ())
}

// ------------------------------------------------------------------ report

pub fn format_report(mode: Mode, report: &SingularityReport, w: &mut dyn Write) -> io::Result<()> {
    let p = mode.exponential_params();
    writeln!(w, "# mode {mode}: k1 = {}, y0 = {} EB, base year {}", p.k1, p.y0, p.base_year)?;
    writeln!(w, "year,EB,plants,percent")?;
    for r in &report.rows {
        writeln!(w, "{},{:.16e},{},{}", r.year, r.info_eb, r.plants, r.percent)?;
    }
    match report.collapse_year {
        Some(year) => writeln!(w, "collapse year: {year}"),
        None => writeln!(w, "collapse: not reached"),
    }
}

pub fn report_cmd(mode: Mode, horizon: u32, out: &mut dyn Write) -> Result<()> {
    let report = singularity_report(&mode.exponential_params(), &EnergyModel::default(), horizon)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    format_report(mode, &report, out).map_err(stdout_err)
}

// -------------------------------------------------------------------- life

/// Classification horizon when `--steps` is below the minimum.
const DEFAULT_CLASSIFY_HORIZON: usize = 256;

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

pub fn life_cmd(args: &LifeArgs, out: &mut dyn Write) -> Result<()> {
    let text = read_file(&args.pattern)?;
    let pattern = parse_pattern(&text)
        .map_err(|e| CliError::Parse { path: args.pattern.display().to_string(), message: e.to_string() })?;
    let w = |e| stdout_err(e);

    if args.goe {
        let torus = Grid::from(pattern.to_torus());
        let verdict = is_garden_of_eden(&torus).map_err(|e| CliError::Failed(e.to_string()))?;
        writeln!(
            out,
            "{}x{} torus: {}",
            pattern.width(),
            pattern.height(),
            if verdict { "Garden of Eden" } else { "not a Garden of Eden" }
        )
        .map_err(w)?;
    }
    if args.classify {
        let horizon =
            if args.steps >= lifeca::MIN_GROWTH_HORIZON { args.steps } else { DEFAULT_CLASSIFY_HORIZON };
        let growth = growth_class(&Grid::from(pattern.to_sparse()), horizon)
            .map_err(|e| CliError::Failed(e.to_string()))?;
        // Keep "-0.0000" out of the output for flat populations.
        let exponent = if growth.fit_exponent.abs() < 5e-5 { 0.0 } else { growth.fit_exponent };
        writeln!(out, "growth: {} (exponent {exponent:.4}, horizon {horizon})", growth.class).map_err(w)?;
    }

    let start = if args.unbounded { Grid::from(pattern.to_sparse()) } else { Grid::from(pattern.to_torus()) };
    let mut grid = start;
    let mut csv = String::from("generation,population\n");
    csv.push_str(&format!("0,{}\n", grid.population()));
    for g in 1..=args.steps {
        grid = grid.step();
        csv.push_str(&format!("{g},{}\n", grid.population()));
    }
    let final_pattern = match &grid {
        Grid::Toroidal(t) => Pattern::from_torus(t),
        Grid::Unbounded(s) => Pattern::from_sparse(s),
    };
    writeln!(out, "! generation {}", args.steps).map_err(w)?;
    write!(out, "{final_pattern}").map_err(w)?;
    match &args.csv {
        Some(path) => fs::write(path, csv).map_err(|e| CliError::io(path, e))?,
        None => write!(out, "{csv}").map_err(w)?,
    }
    Ok(())
}

// ------------------------------------------------------------------- ncomp

pub fn ncomp_demo(args: &NcompArgs, out: &mut dyn Write) -> Result<()> {
    let text = read_file(&args.strands)?;
    let memory = ncomp::load_memory(&text)
        .map_err(|e| CliError::Parse { path: args.strands.display().to_string(), message: e.to_string() })?;
    let w = |e| stdout_err(e);
    let failed = |e: ncomp::NcompError| CliError::Failed(e.to_string());

    writeln!(
        out,
        "memory: {} strands, {} in the replication segment",
        memory.len(),
        memory.segment_strands().count()
    )
    .map_err(w)?;
    let mut machine = NComputer::with_memory(MachineId(0), memory);
    machine.set_alu_steps(args.steps);

    match machine.memory().first_data_address() {
        Some(source) => {
            machine.load_register("AX", source).map_err(failed)?;
            writeln!(out, "load AX <- @{source}: {}", machine.register("AX").map_err(failed)?.bits())
                .map_err(w)?;
            let alu = machine.alu();
            let result = machine.alu_execute("AX").map_err(failed)?;
            writeln!(out, "alu AX ({}x{} torus, {} steps): {result}", alu.width, alu.height, alu.steps)
                .map_err(w)?;
            let target = next_free_address(machine.memory(), source).map_err(failed)?;
            machine.store_register("AX", target).map_err(failed)?;
            writeln!(out, "store AX -> @{target}: {}", machine.memory().strand(target).expect("just stored"))
                .map_err(w)?;
        }
        None => writeln!(out, "memory holds no data strand; skipping load/alu/store").map_err(w)?,
    }

    let drive = ScenarioSetup::LotkaVolterra {
        params: LotkaVolterraParams::coexistence(),
        y0: [0.02, 1.0],
        t_end: args.t_end,
        h: args.h,
    };
    let traj = drive.run().map_err(|e| match e {
        ScenarioError::Integration(IntegrationError::Diverged { t, partial }) => {
            CliError::Diverged { t, samples: partial.len() }
        }
        other => CliError::Usage(other.to_string()),
    })?;
    let mut colony = ncomp::Colony::new([machine], LotkaVolterraParams::coexistence(), args.scale)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    writeln!(out, "t,y2,target,alive,events").map_err(w)?;
    for (t, state) in traj.samples() {
        let y2 = state[1];
        let events = colony.reconcile(y2).map_err(|e| {
            let _ = writeln!(out, "error at t = {t}: {e}");
            failed(e)
        })?;
        writeln!(out, "{t},{y2:.6e},{},{},{}", colony.target(y2), colony.alive_count(), events.len())
            .map_err(w)?;
        for e in &events {
            writeln!(out, "  {e}").map_err(w)?;
        }
    }
    writeln!(
        out,
        "final colony size: {} alive of {} machines",
        colony.alive_count(),
        colony.machines().count()
    )
    .map_err(w)?;
    Ok(())
}

fn next_free_address(
    memory: &ncomp::DnaMemory,
    after: Address,
) -> std::result::Result<Address, ncomp::NcompError> {
    let mut a = after.value() + 1;
    loop {
        let addr = Address::new(a)?;
        if memory.strand(addr).is_none() && !memory.in_segment(addr) {
            return Ok(addr);
        }
        a += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(scenario: &str) -> ScenarioArgs {
        ScenarioArgs { scenario: Some(scenario.into()), ..Default::default() }
    }

    #[test]
    fn config_file_parsing() {
        let m = parse_config_file("# c\nscenario = 2\n--k1=1.5\n").unwrap();
        assert_eq!(m["scenario"], "2");
        assert_eq!(m["k1"], "1.5");
        assert!(parse_config_file("k1").is_err());
        assert!(parse_config_file("k1=1\nk1=2").is_err());
    }

    #[test]
    fn overrides_are_scoped_to_the_scenario() {
        let mut a = args("2");
        a.k4 = Some(0.1);
        assert!(matches!(RunConfig::resolve(a), Err(CliError::Usage(_))));
        let mut b = args("3");
        b.k4 = Some(0.1);
        let cfg = RunConfig::resolve(b).unwrap();
        match cfg.setup().unwrap() {
            ScenarioSetup::LotkaVolterra { params, .. } => assert_eq!(params.k4, 0.1),
            other => panic!("{other:?}"),
        }
        let mut c = args("1");
        c.steps = Some(3);
        assert!(RunConfig::resolve(c).is_err());
        let mut d = args("paradigm");
        d.h = Some(0.1);
        assert!(RunConfig::resolve(d).is_err());
    }

    #[test]
    fn bad_values_are_usage_errors() {
        let mut a = args("paradigm");
        a.alpha = Some(1.5);
        let cfg = RunConfig::resolve(a).unwrap();
        assert!(matches!(cfg.setup(), Err(CliError::Usage(_))));
        assert!(RunConfig::resolve(args("7")).is_err());
        assert!(RunConfig::resolve(ScenarioArgs::default()).is_err());
    }

    #[test]
    fn csv_format() {
        let cfg = RunConfig::resolve(ScenarioArgs { t_end: Some(0.02), ..args("1") }).unwrap();
        let mut buf = Vec::new();
        run_scenario(&cfg, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "t,y1");
        assert_eq!(lines[1], "0.0000000000000000e0,1.0000000000000000e3");
        assert_eq!(lines.len(), 4);
        assert!(text.ends_with('\n'));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Usage("x".into()).exit_code(), 1);
        assert_eq!(CliError::Diverged { t: 1.0, samples: 2 }.exit_code(), 2);
    }
}
