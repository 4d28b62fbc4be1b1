//! Flat key = value configuration files with command-line overrides.
//!
//! One `key = value` pair per line; `#` starts a comment. Values parse on
//! demand; flags given on the command line win over the file.

use slowdiff::{Error, Result};
use std::collections::HashMap;
use std::path::Path;

#[derive(Debug, Default)]
pub struct Config {
    values: HashMap<String, String>,
}

impl Config {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let mut values = HashMap::new();
        if let Some(path) = path {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
            for (lineno, raw) in text.lines().enumerate() {
                let line = raw.split('#').next().unwrap_or("").trim();
                if line.is_empty() {
                    continue;
                }
                let (key, value) = line.split_once('=').ok_or_else(|| {
                    Error::Config(format!(
                        "{}:{}: expected `key = value`, got `{raw}`",
                        path.display(),
                        lineno + 1
                    ))
                })?;
                values.insert(key.trim().to_string(), value.trim().to_string());
            }
        }
        Ok(Self { values })
    }

    fn parse<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.values.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse()
                .map(Some)
                .map_err(|_| Error::Config(format!("config key `{key}`: cannot parse `{raw}`"))),
        }
    }

    pub fn f64(&self, cli: Option<f64>, key: &str, default: f64) -> Result<f64> {
        Ok(cli.or(self.parse(key)?).unwrap_or(default))
    }

    pub fn usize(&self, cli: Option<usize>, key: &str, default: usize) -> Result<usize> {
        Ok(cli.or(self.parse(key)?).unwrap_or(default))
    }

    pub fn u64(&self, cli: Option<u64>, key: &str, default: u64) -> Result<u64> {
        Ok(cli.or(self.parse(key)?).unwrap_or(default))
    }

    pub fn u32(&self, cli: Option<u32>, key: &str, default: u32) -> Result<u32> {
        Ok(cli.or(self.parse(key)?).unwrap_or(default))
    }

    pub fn string(&self, cli: Option<String>, key: &str, default: &str) -> Result<String> {
        Ok(cli
            .or_else(|| self.values.get(key).cloned())
            .unwrap_or_else(|| default.to_string()))
    }

    pub fn flag(&self, cli: bool, key: &str) -> Result<bool> {
        if cli {
            return Ok(true);
        }
        Ok(self.parse::<bool>(key)?.unwrap_or(false))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pairs_and_comments() {
        let dir = std::env::temp_dir().join("slowdiff-config-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.cfg");
        std::fs::write(&path, "p = 3.5\n# comment\ngrid = 256 # trailing\n").unwrap();
        let cfg = Config::load(Some(&path)).unwrap();
        assert_eq!(cfg.f64(None, "p", 0.0).unwrap(), 3.5);
        assert_eq!(cfg.usize(None, "grid", 0).unwrap(), 256);
        assert_eq!(cfg.f64(Some(4.0), "p", 0.0).unwrap(), 4.0);
        assert_eq!(cfg.f64(None, "missing", 7.0).unwrap(), 7.0);
    }

    #[test]
    fn bad_lines_are_config_errors() {
        let dir = std::env::temp_dir().join("slowdiff-config-test2");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.cfg");
        std::fs::write(&path, "p 3.5\n").unwrap();
        assert!(Config::load(Some(&path)).is_err());
    }
}
