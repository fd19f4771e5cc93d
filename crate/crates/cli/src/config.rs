//! `key = value` configuration files.
//!
//! Blank lines and lines starting with `#` are ignored. Keys are the long
//! flag names (`inner-iterations`, `seed`, ...); the short aliases `N`, `M`,
//! `p` and `A` are accepted too.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};

const KEYS: &[&str] = &[
    "inner-iterations",
    "outer-iterations",
    "candidates",
    "coefficient",
    "gamma",
    "seed",
    "tolerance",
    "trials",
    "threads",
    "benchmark",
    "benchmarks",
    "algorithm",
    "algorithms",
    "resolution",
    "output",
    "digits",
    "scalar",
];

#[derive(Debug, Default, Clone, PartialEq)]
pub struct ConfigFile {
    values: BTreeMap<String, String>,
}

fn canonical(key: &str) -> &str {
    match key {
        "N" => "inner-iterations",
        "M" => "outer-iterations",
        "p" => "candidates",
        "A" => "coefficient",
        other => other,
    }
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config file {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in config file {}", path.display()))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("line {}: expected 'key = value'", i + 1))?;
            let key = canonical(key.trim().trim_start_matches("--")).replace('_', "-");
            if !KEYS.contains(&key.as_str()) {
                bail!("line {}: unknown key '{}'", i + 1, key);
            }
            values.insert(key, value.trim().to_string());
        }
        Ok(Self { values })
    }

    pub fn get<T>(&self, key: &str) -> Result<Option<T>>
    where
        T: FromStr,
        T::Err: std::fmt::Display,
    {
        self.values
            .get(key)
            .map(|v| v.parse::<T>().map_err(|e| anyhow!("config key '{key}': {e}")))
            .transpose()
    }
}

/// Flag value if given, else config value, else the built-in default.
pub fn layer<T>(flag: Option<T>, config: &ConfigFile, key: &str, default: T) -> Result<T>
where
    T: FromStr,
    T::Err: std::fmt::Display,
{
    Ok(match flag {
        Some(v) => v,
        None => config.get(key)?.unwrap_or(default),
    })
}
