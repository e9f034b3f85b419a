//! Argument model and report builders for the `metrocap` binary.
//!
//! Every command first produces a JSON [`Value`]; the CSV form is derived
//! from that value by [`table::to_csv`], so a JSON report re-parsed by a
//! downstream script regenerates exactly the CSV the binary prints.

pub mod table;

use std::fmt;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use metrocap::capacity::{baseline, capacity, model_capacity, optimal_input, scaling_fit, LogBase};
use metrocap::distinguish::{capacity_bracket, m_bounds_general};
use metrocap::oracle::{check_caps, run_experiment, StateTag};
use metrocap::rep_core::decompose;
use metrocap::{Model, RefDim};

/// Version tag written into every report.
pub const SCHEMA: &str = "1";

#[derive(Debug, Parser)]
#[command(
    name = "metrocap",
    version,
    about = "Capacities and distinguishability bounds for unitary metrology models"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Logarithm base of every reported information quantity.
    #[arg(long, global = true, default_value = "e", value_parser = parse_base)]
    pub base: LogBase,

    /// Output format.
    #[arg(long, global = true, env = "METROCAP_FORMAT", default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Isotypic decomposition of the n-fold tensor action.
    Decompose(ModelArgs),
    /// Capacity and the optimal block distribution.
    Capacity(ModelArgs),
    /// Bounds on the log-number of distinguishable group elements.
    Bounds(BoundsArgs),
    /// Dense-oracle simulation of one input state.
    Simulate(SimulateArgs),
    /// Capacity sweep over a range of n with a fitted log-slope.
    Scaling(ScalingArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    #[arg(long, value_parser = parse_model)]
    pub model: Model,
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub t: usize,
    /// Reference-system dimension, a positive integer or `inf`.
    #[arg(long, default_value = "inf", value_parser = parse_ref)]
    pub l: RefDim,
}

#[derive(Debug, Clone, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub system: ModelArgs,
    /// Allowed average decoding error, in (0, 1).
    #[arg(long)]
    pub eps: f64,
    /// Order of the lower Rényi bound, in (1, 2]. Needs `--beta`.
    #[arg(long, requires = "beta")]
    pub alpha: Option<f64>,
    /// Order of the upper Rényi bound, in (0, 1). Needs `--alpha`.
    #[arg(long, requires = "alpha")]
    pub beta: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[arg(long, value_parser = parse_model)]
    pub model: Model,
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub t: usize,
    #[arg(long, default_value = "bs4", value_parser = parse_state)]
    pub state: StateTag,
    /// Discriminate over a codebook; only `lattice` exists.
    #[arg(long)]
    pub codebook: Option<CodebookKind>,
    /// Recorded in the output for reproducibility.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CodebookKind {
    Lattice,
}

#[derive(Debug, Clone, Args)]
pub struct ScalingArgs {
    #[arg(long, value_parser = parse_model)]
    pub model: Model,
    #[arg(long)]
    pub t: usize,
    #[arg(long, default_value = "inf", value_parser = parse_ref)]
    pub l: RefDim,
    /// Inclusive range `start:stop:stride`.
    #[arg(long = "n-range")]
    pub n_range: NRange,
}

/// Inclusive `start:stop:stride` range of copy numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NRange {
    pub start: u64,
    pub stop: u64,
    pub stride: u64,
}

impl NRange {
    pub fn values(self) -> impl Iterator<Item = u64> {
        (self.start..=self.stop).step_by(self.stride as usize)
    }
}

impl FromStr for NRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, stop, stride] = parts.as_slice() else {
            return Err(format!("expected start:stop:stride, got {s:?}"));
        };
        let num = |x: &str| {
            x.parse::<u64>()
                .map_err(|_| format!("{x:?} is not a non-negative integer"))
        };
        let range = NRange {
            start: num(start)?,
            stop: num(stop)?,
            stride: num(stride)?,
        };
        if range.start == 0 || range.stride == 0 || range.stop < range.start {
            return Err(format!(
                "need 1 <= start <= stop and stride >= 1, got {s:?}"
            ));
        }
        Ok(range)
    }
}

fn parse_model(s: &str) -> Result<Model, String> {
    s.parse().map_err(|e: metrocap::Error| e.to_string())
}

fn parse_ref(s: &str) -> Result<RefDim, String> {
    s.parse().map_err(|e: metrocap::Error| e.to_string())
}

fn parse_base(s: &str) -> Result<LogBase, String> {
    s.parse().map_err(|e: metrocap::Error| e.to_string())
}

fn parse_state(s: &str) -> Result<StateTag, String> {
    s.parse().map_err(|e: metrocap::Error| e.to_string())
}

/// Why a command failed. Usage errors map to exit status 2.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Internal(String),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Internal(m) => f.write_str(m),
        }
    }
}

impl From<metrocap::Error> for Failure {
    fn from(e: metrocap::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Internal(_) => 1,
        }
    }
}

/// Runs the parsed command and renders it in the requested format.
pub fn run(cli: &Cli) -> Result<String, Failure> {
    let report = build_report(&cli.command, cli.base)?;
    match cli.format {
        Format::Json => {
            let mut text = serde_json::to_string_pretty(&report)
                .map_err(|e| Failure::Internal(e.to_string()))?;
            text.push('\n');
            Ok(text)
        }
        Format::Csv => table::to_csv(&report).map_err(Failure::Internal),
    }
}

/// Key of a logged quantity in the chosen unit, e.g. `capacity_bits`.
fn unit_key(stem: &str, base: LogBase) -> String {
    format!("{stem}_{}", base.unit())
}

/// Serializes a float, refusing non-finite values that JSON cannot carry.
fn number(x: f64) -> Result<Value, Failure> {
    serde_json::Number::from_f64(x)
        .map(Value::Number)
        .ok_or_else(|| Failure::Internal(format!("non-finite result {x}")))
}

fn header(command: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("command".into(), json!(command));
    m
}

fn to_value<S: serde::Serialize>(x: &S) -> Result<Value, Failure> {
    serde_json::to_value(x).map_err(|e| Failure::Internal(e.to_string()))
}

fn system_fields(m: &mut Map<String, Value>, a: &ModelArgs) -> Result<(), Failure> {
    m.insert("model".into(), json!(a.model.tag()));
    m.insert("n".into(), json!(a.n));
    m.insert("t".into(), json!(a.t));
    m.insert("l".into(), to_value(&a.l)?);
    Ok(())
}

/// Builds the JSON report of one command.
pub fn build_report(command: &Command, base: LogBase) -> Result<Value, Failure> {
    match command {
        Command::Decompose(a) => {
            let d = decompose(a.model, a.n, a.t, a.l)?;
            let mut m = header("decompose");
            system_fields(&mut m, a)?;
            m.insert("entries".into(), to_value(&d.entries)?);
            Ok(Value::Object(m))
        }
        Command::Capacity(a) => {
            let d = decompose(a.model, a.n, a.t, a.l)?;
            let report = capacity::<f64>(&d).in_base(base);
            let input = optimal_input(&d);
            let mut m = header("capacity");
            system_fields(&mut m, a)?;
            m.insert("log_base".into(), json!(base.tag()));
            m.insert("unit".into(), json!(base.unit()));
            m.insert("value".into(), number(report.value)?);
            let blocks: Vec<Value> = input
                .blocks
                .iter()
                .map(|b| {
                    let mut v = to_value(b)?;
                    v["descriptor"] = json!(b.descriptor());
                    Ok(v)
                })
                .collect::<Result<_, Failure>>()?;
            m.insert("optimal_p".into(), Value::Array(blocks));
            Ok(Value::Object(m))
        }
        Command::Bounds(a) => bounds_report(a, base),
        Command::Simulate(a) => simulate_report(a, base),
        Command::Scaling(a) => scaling_report(a, base),
    }
}

fn bounds_report(a: &BoundsArgs, base: LogBase) -> Result<Value, Failure> {
    let s = &a.system;
    let r: f64 = model_capacity(s.model, s.n, s.t, s.l)?;
    let mut rows = vec![capacity_bracket(r, a.eps)?];
    if let (Some(alpha), Some(beta)) = (a.alpha, a.beta) {
        // The averaged optimal state is flat on its support, so every Rényi
        // entropy equals the capacity.
        rows.push(m_bounds_general(r, r, alpha, beta, a.eps)?);
    }
    let mut m = header("bounds");
    system_fields(&mut m, s)?;
    m.insert("log_base".into(), json!(base.tag()));
    m.insert(unit_key("capacity", base), number(base.from_nats(r))?);
    let rows: Vec<Value> = rows
        .iter()
        .map(|b| {
            let mut row = Map::new();
            row.insert("alpha".into(), number(b.alpha)?);
            row.insert("beta".into(), number(b.beta)?);
            row.insert("epsilon".into(), number(b.epsilon)?);
            row.insert(
                unit_key("lower", base),
                number(base.from_nats(b.lower_log_m))?,
            );
            row.insert(
                unit_key("upper", base),
                number(base.from_nats(b.upper_log_m))?,
            );
            Ok(Value::Object(row))
        })
        .collect::<Result<_, Failure>>()?;
    m.insert("bounds".into(), Value::Array(rows));
    Ok(Value::Object(m))
}

fn simulate_report(a: &SimulateArgs, base: LogBase) -> Result<Value, Failure> {
    check_caps(a.model, a.n, a.t)?;
    let lattice = a.codebook == Some(CodebookKind::Lattice);
    let run = run_experiment(a.model, a.n, a.t, a.state, lattice, a.seed)?;
    let codebook_size = if lattice {
        json!((a.n + 1).pow(a.t as u32 - 1))
    } else {
        Value::Null
    };
    let mut m = header("simulate");
    m.insert("model".into(), json!(run.model.tag()));
    m.insert("n".into(), json!(run.n));
    m.insert("t".into(), json!(run.t));
    m.insert("state_tag".into(), json!(run.state_tag));
    m.insert("codebook_tag".into(), json!(run.codebook_tag));
    m.insert("seed".into(), json!(run.seed));
    m.insert("codebook_size".into(), codebook_size);
    m.insert(
        "success_prob".into(),
        run.success_prob
            .map(number)
            .transpose()?
            .unwrap_or(Value::Null),
    );
    m.insert(
        unit_key("entropy", base),
        number(base.from_nats(run.entropy_nats))?,
    );
    Ok(Value::Object(m))
}

fn scaling_report(a: &ScalingArgs, base: LogBase) -> Result<Value, Failure> {
    let mut points = Vec::new();
    let mut rows = Vec::new();
    for n in a.n_range.values() {
        let cap = base.from_nats(model_capacity::<f64>(a.model, n, a.t, a.l)?);
        let reference = base.from_nats(baseline::<f64>(a.model, a.t, n));
        points.push((n, cap));
        rows.push((n, cap, reference));
    }
    let slope = scaling_fit(&points)?;
    let mut m = header("scaling");
    m.insert("model".into(), json!(a.model.tag()));
    m.insert("t".into(), json!(a.t));
    m.insert("l".into(), to_value(&a.l)?);
    m.insert("log_base".into(), json!(base.tag()));
    m.insert("fitted_slope".into(), number(slope)?);
    let rows: Vec<Value> = rows
        .into_iter()
        .map(|(n, cap, reference)| {
            let mut row = Map::new();
            row.insert("n".into(), json!(n));
            row.insert(unit_key("capacity", base), number(cap)?);
            row.insert(unit_key("baseline", base), number(reference)?);
            Ok(Value::Object(row))
        })
        .collect::<Result<_, Failure>>()?;
    m.insert("rows".into(), Value::Array(rows));
    Ok(Value::Object(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_range_parsing() {
        let r: NRange = "10:30:10".parse().unwrap();
        assert_eq!(r.values().collect::<Vec<_>>(), [10, 20, 30]);
        let r: NRange = "5:5:3".parse().unwrap();
        assert_eq!(r.values().collect::<Vec<_>>(), [5]);
        for bad in ["", "1:2", "0:5:1", "5:1:1", "1:5:0", "a:5:1", "1:5:1:1"] {
            assert!(bad.parse::<NRange>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn unit_keys_follow_base() {
        assert_eq!(unit_key("capacity", LogBase::Natural), "capacity_nats");
        assert_eq!(unit_key("lower", LogBase::Two), "lower_bits");
    }

    #[test]
    fn non_finite_numbers_are_internal_failures() {
        assert!(number(1.5).is_ok());
        assert_eq!(number(f64::NAN).unwrap_err().exit_code(), 1);
        let usage: Failure = metrocap::Error::ZeroReference.into();
        assert_eq!(usage.exit_code(), 2);
    }

    #[test]
    fn reports_carry_schema() {
        let cmd = Command::Capacity(ModelArgs {
            model: Model::MultiPhase,
            n: 4,
            t: 2,
            l: RefDim::Finite(1),
        });
        let v = build_report(&cmd, LogBase::Natural).unwrap();
        assert_eq!(v["schema"], SCHEMA);
        assert!((v["value"].as_f64().unwrap() - 5f64.ln()).abs() < 1e-15);
    }
}
