//! Line-oriented `key = value` configuration files and flag/file/default
//! resolution.

use std::collections::BTreeMap;
use std::str::FromStr;

use thiserror::Error;

use crate::error::CliError;
use crate::output::{fmt_float, Format};

/// Every key a config file may set. Keys use the long flag spelling;
/// underscores are accepted and normalized to dashes.
pub const KNOWN_KEYS: &[&str] = &[
    "mass-number",
    "v0",
    "q",
    "a",
    "r0",
    "two-mu-over-hbar2",
    "natural-units",
    "mu",
    "format",
    "out",
    "n-max",
    "l-max",
    "n",
    "l",
    "k",
    "tol",
    "z0",
    "rescale",
    "scan-step",
    "param",
    "from",
    "to",
    "steps",
    "numerov-h",
    "r-margin",
    "samples",
    "quad-tol",
    "with-aim",
];

/// How a resolved value is written into the output header. Floats use the
/// same 12-digit formatting as table cells.
pub trait Echo {
    fn echo(&self) -> String;
}

impl Echo for f64 {
    fn echo(&self) -> String {
        fmt_float(*self)
    }
}

macro_rules! echo_display {
    ($($t:ty),*) => {$(
        impl Echo for $t {
            fn echo(&self) -> String {
                self.to_string()
            }
        }
    )*};
}
echo_display!(u32, usize, bool, String, &str, Format);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("line {line}: empty key")]
    EmptyKey { line: usize },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: `{key}` set twice (first on line {first})")]
    Duplicate { line: usize, first: usize, key: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigEntry {
    pub value: String,
    pub line: usize,
}

pub type ConfigMap = BTreeMap<String, ConfigEntry>;

fn normalize_key(k: &str) -> String {
    k.trim().to_ascii_lowercase().replace('_', "-")
}

/// Parses a config file body.
///
/// Blank lines and lines whose first non-blank character is `#` are skipped;
/// a `#` after the value starts a trailing comment. Values are trimmed and
/// may not contain `#`.
pub fn parse_config_str(text: &str) -> Result<ConfigMap, ConfigError> {
    let mut map = ConfigMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (k, v) = body.split_once('=').ok_or(ConfigError::Syntax { line })?;
        let key = normalize_key(k);
        if key.is_empty() {
            return Err(ConfigError::EmptyKey { line });
        }
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(ConfigError::UnknownKey { line, key });
        }
        if let Some(prev) = map.get(&key) {
            return Err(ConfigError::Duplicate {
                line,
                first: prev.line,
                key,
            });
        }
        map.insert(
            key,
            ConfigEntry {
                value: v.trim().to_string(),
                line,
            },
        );
    }
    Ok(map)
}

/// Resolves settings as flag > config file > default and records every
/// resolved value for the output header.
#[derive(Debug)]
pub struct Resolver<'a> {
    file: &'a ConfigMap,
    echo: Vec<(String, String)>,
}

impl<'a> Resolver<'a> {
    pub fn new(file: &'a ConfigMap) -> Self {
        Self { file, echo: Vec::new() }
    }

    fn from_file<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        match self.file.get(key) {
            None => Ok(None),
            Some(entry) => entry.value.parse::<T>().map(Some).map_err(|_| {
                CliError::Usage(format!(
                    "config line {}: cannot parse `{}` for `{key}`",
                    entry.line, entry.value
                ))
            }),
        }
    }

    pub fn get<T: FromStr + Echo>(&mut self, key: &str, flag: Option<T>, default: T) -> Result<T, CliError> {
        let v = match flag {
            Some(v) => v,
            None => self.from_file(key)?.unwrap_or(default),
        };
        self.record(key, &v);
        Ok(v)
    }

    /// Like [`Resolver::get`] without a default; absent values are echoed as
    /// `none`.
    pub fn get_opt<T: FromStr + Echo>(&mut self, key: &str, flag: Option<T>) -> Result<Option<T>, CliError> {
        let v = match flag {
            Some(v) => Some(v),
            None => self.from_file(key)?,
        };
        match &v {
            Some(x) => self.record(key, x),
            None => self.record(key, &"none"),
        }
        Ok(v)
    }

    /// A switch: set by the flag, else the file (`true`/`false`), else
    /// `default`.
    pub fn switch(&mut self, key: &str, flag: bool, default: bool) -> Result<bool, CliError> {
        let v = if flag { true } else { self.from_file(key)?.unwrap_or(default) };
        self.record(key, &v);
        Ok(v)
    }

    /// Records a derived value for the header.
    pub fn record<T: Echo + ?Sized>(&mut self, key: &str, value: &T) {
        self.echo.push((key.to_string(), value.echo()));
    }

    pub fn into_echo(self) -> Vec<(String, String)> {
        self.echo
    }
}

/// Parses index lists such as `0-4`, `0,2,5` or `1-3,7` into a sorted,
/// de-duplicated list.
pub fn parse_index_list(s: &str) -> Result<Vec<u32>, CliError> {
    let bad = || CliError::Usage(format!("cannot parse index list `{s}` (use forms like 0-4 or 0,2,5)"));
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if part.is_empty() {
            return Err(bad());
        }
        match part.split_once('-') {
            Some((lo, hi)) => {
                let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
                let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
                if lo > hi || hi - lo > 10_000 {
                    return Err(bad());
                }
                out.extend(lo..=hi);
            }
            None => out.push(part.parse().map_err(|_| bad())?),
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}
