//! Validated run configuration and field resolution.

use std::fmt;
use std::path::PathBuf;

use darboux_core::algebra::parse_rat;
use darboux_core::field::{parse_field_source, ParseError};
use darboux_core::search::GridAxis;
use darboux_core::{d2_field, Field, FieldSign, ParamPoint, ParamPoly, Rat};
use serde::Serialize;
use thiserror::Error;

use crate::cli::{Command, CommonArgs, FormatArg, NumericArgs};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("unknown field `{0}` (expected d2-neg, d2-pos or file:<path>)")]
    UnknownField(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{context}: {source}")]
    Parse { context: String, source: ParseError },
    #[error("parameter {name}: `{value}` is not a rational (floating point values are rejected; write p/q)")]
    NotRational { name: &'static str, value: String },
    #[error("parameters a and b cannot both be tied to each other")]
    CircularTie,
    #[error("degree bound must be at least 1")]
    DegreeBound,
    #[error("{0} must be positive and finite")]
    NotPositive(&'static str),
    #[error("bad grid `{0}` (expected amin:amax:steps,bmin:bmax:steps)")]
    Grid(String),
    #[error("bad initial condition `{0}` (expected x,y,z)")]
    InitialCondition(String),
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Search(#[from] darboux_core::search::SearchError),
    #[error(transparent)]
    Dynamics(#[from] darboux_core::dynamics::DynamicsError),
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
}

/// Where the vector field comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldSpec {
    D2(FieldSign),
    File(PathBuf),
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::D2(FieldSign::Negative) => f.write_str("d2-neg"),
            FieldSpec::D2(FieldSign::Positive) => f.write_str("d2-pos"),
            FieldSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

impl FieldSpec {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        match text {
            "d2-neg" => Ok(FieldSpec::D2(FieldSign::Negative)),
            "d2-pos" => Ok(FieldSpec::D2(FieldSign::Positive)),
            _ => match text.strip_prefix("file:") {
                Some(p) if !p.is_empty() => Ok(FieldSpec::File(PathBuf::from(p))),
                _ => Err(CliError::UnknownField(text.to_string())),
            },
        }
    }
}

/// Value given for one of the parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamValue {
    Rational(Rat),
    Symbolic,
    /// Equal to the other parameter.
    Tied,
}

impl ParamValue {
    pub fn parse(name: &'static str, text: &str) -> Result<Self, CliError> {
        let other = if name == "a" { "b" } else { "a" };
        match text.trim() {
            "sym" => Ok(ParamValue::Symbolic),
            t if t == other => Ok(ParamValue::Tied),
            t => parse_rat(t).map(ParamValue::Rational).ok_or_else(|| CliError::NotRational {
                name,
                value: text.to_string(),
            }),
        }
    }

    fn describe(value: &Option<ParamValue>, other: &'static str) -> String {
        match value {
            None => "unset".into(),
            Some(ParamValue::Rational(r)) => r.to_string(),
            Some(ParamValue::Symbolic) => "sym".into(),
            Some(ParamValue::Tied) => other.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

/// Grid of the parameter sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSpec {
    pub a: GridAxis,
    pub b: GridAxis,
}

impl GridSpec {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let bad = || CliError::Grid(text.to_string());
        let axis = |s: &str| -> Result<GridAxis, CliError> {
            let parts: Vec<&str> = s.split(':').collect();
            let [lo, hi, n] = parts[..] else { return Err(bad()) };
            let lo = parse_rat(lo).ok_or_else(bad)?;
            let hi = parse_rat(hi).ok_or_else(bad)?;
            let n: u32 = n.trim().parse().map_err(|_| bad())?;
            if n == 0 || lo > hi || (n == 1 && lo != hi) {
                return Err(bad());
            }
            Ok(GridAxis::new(lo, hi, n))
        };
        let (a, b) = text.split_once(',').ok_or_else(bad)?;
        Ok(GridSpec { a: axis(a)?, b: axis(b)? })
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}:{},{}:{}:{}",
            self.a.min, self.a.max, self.a.steps, self.b.min, self.b.max, self.b.steps
        )
    }
}

/// Numerical settings of the `dynamics` command.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NumericSettings {
    pub t_max: f64,
    pub step: f64,
    pub tol: f64,
    pub newton_tol: f64,
    pub hyperbolic_tol: f64,
    pub epsilon: f64,
    pub probe_t_max: f64,
    pub box_half_width: f64,
    pub x0: [f64; 3],
    pub samples: usize,
    pub seed: u64,
    #[serde(skip)]
    pub dump: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Task {
    Find { degree: u32 },
    Sweep { degree: u32, grid: GridSpec },
    Verify { f: String, k: String },
    Dynamics(NumericSettings),
    Parse { expr: Option<String> },
}

impl Task {
    pub fn name(&self) -> &'static str {
        match self {
            Task::Find { .. } => "find",
            Task::Sweep { .. } => "sweep",
            Task::Verify { .. } => "verify",
            Task::Dynamics(_) => "dynamics",
            Task::Parse { .. } => "parse",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub task: Task,
    pub field: FieldSpec,
    pub a: Option<ParamValue>,
    pub b: Option<ParamValue>,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub check_equivariance: bool,
}

/// Configuration echoed at the top of every report.
#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub command: &'static str,
    pub field: String,
    pub a: String,
    pub b: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numeric: Option<NumericSettings>,
    pub check_equivariance: bool,
}

fn positive(name: &'static str, v: f64) -> Result<f64, CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::NotPositive(name))
    }
}

fn parse_x0(text: &str) -> Result<[f64; 3], CliError> {
    let bad = || CliError::InitialCondition(text.to_string());
    let v: Vec<f64> = text
        .split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    let [x, y, z] = v[..] else { return Err(bad()) };
    if !(x.is_finite() && y.is_finite() && z.is_finite()) {
        return Err(bad());
    }
    Ok([x, y, z])
}

impl RunConfig {
    pub fn from_command(cmd: Command) -> Result<Self, CliError> {
        let (common, task) = match cmd {
            Command::Find { common, degree } => (common, Task::Find { degree }),
            Command::Sweep { common, degree, grid } => {
                let grid = GridSpec::parse(&grid)?;
                (common, Task::Sweep { degree, grid })
            }
            Command::Verify { common, f, k } => (common, Task::Verify { f, k }),
            Command::Dynamics { common, numeric } => {
                let settings = Self::numeric(numeric)?;
                (common, Task::Dynamics(settings))
            }
            Command::Parse { common, expr } => (common, Task::Parse { expr }),
        };
        if let Task::Find { degree } | Task::Sweep { degree, .. } = &task {
            if *degree == 0 {
                return Err(CliError::DegreeBound);
            }
        }
        let CommonArgs {
            field,
            a,
            b,
            format,
            output,
            check_equivariance,
        } = common;
        let a = a.map(|v| ParamValue::parse("a", &v)).transpose()?;
        let b = b.map(|v| ParamValue::parse("b", &v)).transpose()?;
        if a == Some(ParamValue::Tied) && b == Some(ParamValue::Tied) {
            return Err(CliError::CircularTie);
        }
        if matches!(task, Task::Sweep { .. }) && (a.is_some() || b.is_some()) {
            return Err(CliError::Unsupported(
                "sweep varies a and b over --grid; --a and --b are not accepted".into(),
            ));
        }
        Ok(RunConfig {
            task,
            field: FieldSpec::parse(&field)?,
            a,
            b,
            format: match format {
                FormatArg::Json => Format::Json,
                FormatArg::Text => Format::Text,
            },
            output,
            check_equivariance,
        })
    }

    fn numeric(n: NumericArgs) -> Result<NumericSettings, CliError> {
        Ok(NumericSettings {
            t_max: positive("--tmax", n.tmax)?,
            step: positive("--step", n.step)?,
            tol: positive("--tol", n.tol)?,
            newton_tol: positive("--newton-tol", n.newton_tol)?,
            hyperbolic_tol: positive("--hyperbolic-tol", n.hyperbolic_tol)?,
            epsilon: positive("--eps", n.eps)?,
            probe_t_max: positive("--probe-tmax", n.probe_tmax)?,
            box_half_width: positive("--box-half-width", n.box_half_width)?,
            x0: parse_x0(&n.x0)?,
            samples: n.samples,
            seed: n.seed,
            dump: n.dump,
        })
    }

    pub fn echo(&self) -> ConfigEcho {
        let (degree, grid, numeric) = match &self.task {
            Task::Find { degree } => (Some(*degree), None, None),
            Task::Sweep { degree, grid } => (Some(*degree), Some(grid.to_string()), None),
            Task::Dynamics(n) => (None, None, Some(n.clone())),
            Task::Verify { .. } | Task::Parse { .. } => (None, None, None),
        };
        ConfigEcho {
            command: self.task.name(),
            field: self.field.to_string(),
            a: ParamValue::describe(&self.a, "b"),
            b: ParamValue::describe(&self.b, "a"),
            degree,
            grid,
            numeric,
            check_equivariance: self.check_equivariance,
        }
    }

    /// Loads the field and applies the parameter settings.
    pub fn resolve(&self) -> Result<ResolvedField, CliError> {
        let (symbolic, file_a, file_b, sign) = match &self.field {
            FieldSpec::D2(sign) => (d2_field(*sign), None, None, Some(*sign)),
            FieldSpec::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                    path: path.clone(),
                    source,
                })?;
                let src = parse_field_source(&text).map_err(|source| CliError::Parse {
                    context: path.display().to_string(),
                    source,
                })?;
                (src.field, src.a, src.b, None)
            }
        };
        // Command line values take precedence over `param` lines.
        let a = self.a.clone().or(file_a.map(ParamValue::Rational));
        let b = self.b.clone().or(file_b.map(ParamValue::Rational));
        let own = |v: &Option<ParamValue>, sym: fn() -> ParamPoly| match v {
            Some(ParamValue::Rational(r)) => Some(ParamPoly::constant(r.clone())),
            None | Some(ParamValue::Symbolic) => Some(sym()),
            Some(ParamValue::Tied) => None,
        };
        let (pa, pb) = match (own(&a, ParamPoly::a), own(&b, ParamPoly::b)) {
            (Some(pa), Some(pb)) => (pa, pb),
            (Some(pa), None) => (pa.clone(), pa),
            (None, Some(pb)) => (pb.clone(), pb),
            (None, None) => return Err(CliError::CircularTie),
        };
        let point = match (pa.as_constant(), pb.as_constant()) {
            (Some(x), Some(y)) => Some(ParamPoint::new(x, y)),
            _ => None,
        };
        Ok(ResolvedField {
            field: symbolic.substitute_params(&pa, &pb),
            symbolic,
            a: pa,
            b: pb,
            point,
            d2_sign: sign,
        })
    }
}

/// The field as given and after substituting the parameter settings.
#[derive(Debug, Clone)]
pub struct ResolvedField {
    pub symbolic: Field,
    pub field: Field,
    pub a: ParamPoly,
    pub b: ParamPoly,
    /// Both parameters, when both are rational.
    pub point: Option<ParamPoint>,
    /// Sign of the builtin D2 field, when that is the source.
    pub d2_sign: Option<FieldSign>,
}

impl ResolvedField {
    /// The substituted field, which must be free of parameters.
    pub fn numeric_field(&self) -> Result<&Field, CliError> {
        if self.field.is_parameter_free() {
            Ok(&self.field)
        } else {
            Err(CliError::Unsupported(
                "this command needs rational values for the parameters (use --a p/q --b p/q)".into(),
            ))
        }
    }

    /// True when `a = b` after substitution.
    pub fn is_diagonal(&self) -> bool {
        self.a == self.b
    }
}

/// Points of the grid plus the special loci, sorted and deduplicated.
pub fn grid_points(grid: &GridSpec) -> Vec<ParamPoint> {
    let mut pts = darboux_core::search::grid(&grid.a, &grid.b);
    pts.extend(darboux_core::search::special_loci_points());
    pts.sort();
    pts.dedup();
    pts
}
