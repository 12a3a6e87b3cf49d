//! `key = value` configuration files merged with command-line flags.
//! Precedence: flag, then file, then built-in default.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{usage, CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Flag,
    File,
    Default,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Resolved {
    pub value: String,
    pub source: Source,
}

#[derive(Debug, Default)]
pub struct ConfigFile {
    entries: BTreeMap<String, (String, usize)>,
}

fn normalize_key(k: &str) -> String {
    k.trim().replace('_', "-")
}

impl ConfigFile {
    pub fn parse(text: &str) -> CliResult<Self> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return usage(format!("config line {line_no}: expected `key = value`, got {raw:?}"));
            };
            let key = normalize_key(k);
            if key.is_empty() {
                return usage(format!("config line {line_no}: empty key"));
            }
            if entries.insert(key.clone(), (v.trim().to_string(), line_no)).is_some() {
                return usage(format!("config line {line_no}: duplicate key {key:?}"));
            }
        }
        Ok(Self { entries })
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path.display().to_string(), e))?;
        Self::parse(&text)
    }
}

/// Resolves each parameter once, remembering its provenance, and rejects
/// file keys that no parameter asked for.
pub struct Resolver {
    file: ConfigFile,
    resolved: BTreeMap<String, Resolved>,
    known: BTreeSet<String>,
}

impl Resolver {
    pub fn new(file: ConfigFile) -> Self {
        Self {
            file,
            resolved: BTreeMap::new(),
            known: BTreeSet::new(),
        }
    }

    fn lookup<T: FromStr>(&mut self, key: &str, flag: Option<T>) -> CliResult<Option<(T, String, Source)>>
    where
        T: Display,
    {
        self.known.insert(key.to_string());
        if let Some(v) = flag {
            let s = v.to_string();
            return Ok(Some((v, s, Source::Flag)));
        }
        if let Some((raw, line)) = self.file.entries.get(key) {
            return match raw.parse::<T>() {
                Ok(v) => Ok(Some((v, raw.clone(), Source::File))),
                Err(_) => usage(format!(
                    "config line {line}: cannot parse {raw:?} as a value for {key:?} ({})",
                    std::any::type_name::<T>().rsplit("::").next().unwrap_or("value")
                )),
            };
        }
        Ok(None)
    }

    /// Required parameter with a default.
    pub fn get<T: FromStr + Display>(&mut self, key: &str, flag: Option<T>, default: T) -> CliResult<T> {
        let (v, s, src) = match self.lookup(key, flag)? {
            Some(found) => found,
            None => {
                let s = default.to_string();
                (default, s, Source::Default)
            }
        };
        self.resolved.insert(key.to_string(), Resolved { value: s, source: src });
        Ok(v)
    }

    /// Optional parameter; unset values are recorded as `none`.
    pub fn get_opt<T: FromStr + Display>(&mut self, key: &str, flag: Option<T>) -> CliResult<Option<T>> {
        match self.lookup(key, flag)? {
            Some((v, s, src)) => {
                self.resolved.insert(key.to_string(), Resolved { value: s, source: src });
                Ok(Some(v))
            }
            None => {
                self.resolved.insert(
                    key.to_string(),
                    Resolved {
                        value: "none".to_string(),
                        source: Source::Default,
                    },
                );
                Ok(None)
            }
        }
    }

    /// Parameter that must be supplied by flag or file.
    pub fn require<T: FromStr + Display>(&mut self, key: &str, flag: Option<T>) -> CliResult<T> {
        match self.get_opt(key, flag)? {
            Some(v) => Ok(v),
            None => usage(format!("missing required parameter --{key} (flag or config file)")),
        }
    }

    /// Errors on file keys no parameter consumed; returns the resolved set.
    pub fn finish(self) -> CliResult<BTreeMap<String, Resolved>> {
        let unknown: Vec<&String> = self.file.entries.keys().filter(|k| !self.known.contains(*k)).collect();
        if let Some(k) = unknown.first() {
            let line = self.file.entries[*k].1;
            let valid: Vec<&str> = self.known.iter().map(String::as_str).collect();
            return usage(format!(
                "config line {line}: unknown key {k:?}; valid keys: {}",
                valid.join(", ")
            ));
        }
        Ok(self.resolved)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_provenance() {
        let file = ConfigFile::parse("beta = 2\n# comment\nn=4\n").unwrap();
        let mut r = Resolver::new(file);
        assert_eq!(r.get("beta", Some(4.0), 1.0).unwrap(), 4.0);
        assert_eq!(r.get::<usize>("n", None, 1).unwrap(), 4);
        assert_eq!(r.get::<u64>("seed", None, 0).unwrap(), 0);
        let m = r.finish().unwrap();
        assert_eq!(m["beta"].source, Source::Flag);
        assert_eq!(m["beta"].value, "4");
        assert_eq!(m["n"].source, Source::File);
        assert_eq!(m["seed"].source, Source::Default);
    }

    #[test]
    fn empty_file_gives_defaults() {
        let mut r = Resolver::new(ConfigFile::parse("").unwrap());
        assert_eq!(r.get::<usize>("reps", None, 10).unwrap(), 10);
        assert!(r.finish().is_ok());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = ConfigFile::parse("n = 3\nthis line is bad\n").unwrap_err();
        assert!(e.to_string().contains("line 2"), "{e}");
        let mut r = Resolver::new(ConfigFile::parse("\nn = three\n").unwrap());
        let e = r.get::<usize>("n", None, 1).unwrap_err();
        assert!(e.to_string().contains("line 2"), "{e}");
        let mut r = Resolver::new(ConfigFile::parse("betta = 2\n").unwrap());
        r.get::<f64>("beta", None, 1.0).unwrap();
        let e = r.finish().unwrap_err().to_string();
        assert!(e.contains("betta") && e.contains("valid keys: beta"), "{e}");
    }

    #[test]
    fn underscores_match_dashes() {
        let mut r = Resolver::new(ConfigFile::parse("max_degree = 3").unwrap());
        assert_eq!(r.get::<u32>("max-degree", None, 1).unwrap(), 3);
    }
}
