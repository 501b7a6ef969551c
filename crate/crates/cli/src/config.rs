//! Flat `key = value` configuration files.
//!
//! One assignment per line; `#` starts a comment; blank lines are ignored.
//! Keys are case-insensitive. Omitted keys keep their defaults.
//!
//! | key | aliases | meaning |
//! |-----|---------|---------|
//! | `k` | | interdependencies per decision |
//! | `p` | | learning / forgetting probability |
//! | `tau` | | auctions over the horizon |
//! | `t` | `t_horizon` | timesteps |
//! | `n` | | decisions |
//! | `m` | | subtasks (team slots) |
//! | `alpha`, `beta` | | utility weights, must sum to 1 |
//! | `r` | `runs` | replications |
//! | `j` | | candidates per slot |
//! | `q` | | initial memory size |
//! | `seed` | `master_seed` | master seed |
//! | `offteam_learning` | | `true`/`false` |

use std::str::FromStr;

use teamnk::ScenarioConfig;

use crate::CliError;

pub fn parse_config(text: &str) -> Result<ScenarioConfig, CliError> {
    let mut cfg = ScenarioConfig::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| CliError::Config {
            key: line.to_string(),
            message: format!("line {}: expected key = value", lineno + 1),
        })?;
        let key = key.trim();
        let value = value.trim();
        match key.to_ascii_lowercase().as_str() {
            "k" => cfg.k = num(key, value)?,
            "p" => cfg.p = num(key, value)?,
            "tau" => cfg.tau = num(key, value)?,
            "t" | "t_horizon" => cfg.t_horizon = num(key, value)?,
            "n" => cfg.n = num(key, value)?,
            "m" => cfg.m = num(key, value)?,
            "alpha" => cfg.alpha = num(key, value)?,
            "beta" => cfg.beta = num(key, value)?,
            "r" | "runs" => cfg.runs = num(key, value)?,
            "j" => cfg.j = num(key, value)?,
            "q" => cfg.q = num(key, value)?,
            "seed" | "master_seed" => cfg.master_seed = num(key, value)?,
            "offteam_learning" => cfg.offteam_learning = num(key, value)?,
            _ => {
                return Err(CliError::Config {
                    key: key.to_string(),
                    message: "unknown key".into(),
                })
            }
        }
    }
    cfg.validate().map_err(|e| CliError::Config {
        key: offending_key(&e).into(),
        message: e.to_string(),
    })?;
    Ok(cfg)
}

fn num<V: FromStr>(key: &str, value: &str) -> Result<V, CliError> {
    value.parse().map_err(|_| CliError::Config {
        key: key.to_string(),
        message: format!("cannot parse {value:?}"),
    })
}

pub(crate) fn offending_key(e: &teamnk::Error) -> &'static str {
    use teamnk::Error::*;
    match e {
        IndivisibleTask { .. } | InvalidDimension(_) => "m",
        ComplexityTooHigh { .. } => "k",
        SearchTooLarge { .. } => "n",
        WeightSum { .. } => "alpha",
        Probability(_) => "p",
        ZeroAuctions | ScheduleIndivisible { .. } => "tau",
        TooFewCandidates { .. } => "j",
        MemoryOutOfRange { .. } => "q",
        NoRuns => "runs",
        _ => "config",
    }
}
