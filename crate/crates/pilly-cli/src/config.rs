use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use pilly_rewrite::RewriteConfig;

use crate::CliError;

/// Settings read from a `pilly.toml` file. Command-line flags override them.
#[derive(Clone, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub fuel: Option<usize>,
    pub y_unroll: Option<usize>,
    pub strict: Option<bool>,
    /// Files or directories checked by `pilly check` when no file is given.
    /// Relative entries are resolved against the config file's directory.
    #[serde(default)]
    pub catalog: Vec<PathBuf>,
}

pub const DEFAULT_FILE: &str = "pilly.toml";

impl Config {
    pub fn parse(text: &str) -> Result<Config, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Config, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        let mut cfg = Config::parse(&text)?;
        let base = path.parent().unwrap_or(Path::new("."));
        for p in &mut cfg.catalog {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(cfg)
    }

    /// The explicit file if given, otherwise `pilly.toml` in the working
    /// directory when present.
    pub fn discover(explicit: Option<&Path>) -> Result<Config, CliError> {
        match explicit {
            Some(p) => Config::load(p),
            None if Path::new(DEFAULT_FILE).is_file() => Config::load(Path::new(DEFAULT_FILE)),
            None => Ok(Config::default()),
        }
    }

    pub fn rewrite(&self, fuel: Option<usize>, y_unroll: Option<usize>) -> RewriteConfig {
        let d = RewriteConfig::default();
        RewriteConfig {
            fuel: fuel.or(self.fuel).unwrap_or(d.fuel),
            y_unroll_budget: y_unroll.or(self.y_unroll).unwrap_or(d.y_unroll_budget),
            eta: d.eta,
        }
    }

    /// Every `.pilly` file named by the catalog entries, sorted.
    pub fn catalog_files(&self) -> Result<Vec<PathBuf>, CliError> {
        let mut out = Vec::new();
        for entry in &self.catalog {
            if entry.is_dir() {
                let dir = fs::read_dir(entry).map_err(|e| CliError::Io {
                    path: entry.display().to_string(),
                    message: e.to_string(),
                })?;
                let mut files: Vec<PathBuf> = dir
                    .filter_map(|e| e.ok().map(|e| e.path()))
                    .filter(|p| p.extension().is_some_and(|x| x == "pilly"))
                    .collect();
                files.sort();
                out.extend(files);
            } else {
                out.push(entry.clone());
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let cfg = Config::parse("fuel = 50\ny_unroll = 2\ncatalog = [\"catalog\"]").unwrap();
        assert_eq!(cfg.rewrite(None, None).fuel, 50);
        assert_eq!(cfg.rewrite(Some(7), None).fuel, 7);
        assert_eq!(cfg.rewrite(None, Some(0)).y_unroll_budget, 0);
        assert_eq!(cfg.rewrite(None, None).y_unroll_budget, 2);
    }

    #[test]
    fn defaults_without_file() {
        assert_eq!(Config::default().rewrite(None, None), RewriteConfig::default());
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(matches!(Config::parse("fule = 3"), Err(CliError::Config(_))));
    }
}
