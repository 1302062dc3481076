//! Job descriptions from JSON or TOML.

use std::collections::BTreeMap;
use std::fmt;

use seifert_core::embdim::{Labeling, Params};
use seifert_core::{Error, Leg, SeifertData};
use serde::Deserialize;

/// Failure of a single job, already sorted into an exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Usage(String),
    Parse(String),
    Core(Error),
}

impl CliError {
    /// 1 usage/parse, 2 validation, 3 internal consistency.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) => 1,
            CliError::Core(e) if e.is_validation() => 2,
            CliError::Core(Error::NotApplicable(_)) => 2,
            CliError::Core(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Invariants,
    Hilbert,
    Embdim,
    Analyze,
    Check,
}

impl Command {
    pub fn parse(name: &str) -> Result<Self, CliError> {
        Ok(match name {
            "invariants" => Command::Invariants,
            "hilbert" => Command::Hilbert,
            "embdim" => Command::Embdim,
            "analyze" => Command::Analyze,
            "check" => Command::Check,
            other => return Err(CliError::Usage(format!("unknown command `{other}`"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Pretty,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub seifert: SeifertData,
    pub l_max: Option<i64>,
    pub trials: usize,
    pub seed: u64,
    /// Parameters of legs `3..=nu`, written `p3=..` on input.
    pub params: Option<Params>,
    pub command: Command,
    pub format: Format,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Scalar {
    Int(i64),
    Text(String),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawParams {
    Text(String),
    Map(BTreeMap<String, Scalar>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawJob {
    b0: i64,
    legs: Vec<(i64, i64)>,
    command: Option<String>,
    lmax: Option<i64>,
    trials: Option<usize>,
    seed: Option<u64>,
    params: Option<RawParams>,
}

/// Command-line values that take precedence over the input text.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub command: Option<Command>,
    pub l_max: Option<i64>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub params: Option<String>,
    pub format: Format,
}

/// Parses a job with no overrides; the command defaults to `embdim`.
pub fn parse_input(text: &str) -> Result<JobSpec, CliError> {
    parse_job(text, &Overrides::default())
}

pub fn parse_job(text: &str, over: &Overrides) -> Result<JobSpec, CliError> {
    let raw: RawJob = if text.trim_start().starts_with('{') {
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("JSON: {e}")))?
    } else {
        toml::from_str(text).map_err(|e| CliError::Parse(format!("TOML: {}", e.to_string().trim_end())))?
    };
    let legs = raw.legs.iter().map(|&(a, w)| Leg::new(a, w)).collect();
    let seifert = SeifertData::new(raw.b0, legs)?;
    let command = match (over.command, raw.command.as_deref()) {
        (Some(c), _) => c,
        (None, Some(name)) => Command::parse(name)?,
        (None, None) => Command::Embdim,
    };
    let params_text = over.params.clone().or(match raw.params {
        None => None,
        Some(RawParams::Text(t)) => Some(t),
        Some(RawParams::Map(m)) => Some(
            m.into_iter()
                .map(|(k, v)| match v {
                    Scalar::Int(n) => format!("{k}={n}"),
                    Scalar::Text(t) => format!("{k}={t}"),
                })
                .collect::<Vec<_>>()
                .join(","),
        ),
    });
    let params = params_text
        .map(|t| Params::parse(seifert.nu(), &t, Labeling::ByLeg))
        .transpose()?;
    let l_max = over.l_max.or(raw.lmax);
    if let Some(l) = l_max {
        if l < 0 {
            return Err(CliError::Core(Error::Domain(format!("lmax must be >= 0, got {l}"))));
        }
    }
    let trials = over.trials.or(raw.trials).unwrap_or(5);
    if trials == 0 {
        return Err(CliError::Core(Error::Domain("trials must be at least 1".into())));
    }
    Ok(JobSpec {
        seifert,
        l_max,
        trials,
        seed: over.seed.or(raw.seed).unwrap_or(0),
        params,
        command,
        format: over.format,
    })
}
