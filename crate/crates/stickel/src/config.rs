//! Job parameters: flags over an INI config file over built-in defaults.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::CliError;

/// String-valued parameters with typed accessors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params(BTreeMap<String, String>);

impl Params {
    pub fn new() -> Self {
        Params::default()
    }

    pub fn set(&mut self, key: &str, value: impl ToString) {
        self.0.insert(key.to_string(), value.to_string());
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.set(key, value);
        self
    }

    /// Sets `key` only when it is absent.
    pub fn default_to(&mut self, key: &str, value: impl ToString) {
        self.0
            .entry(key.to_string())
            .or_insert_with(|| value.to_string());
    }

    /// Entries of `other` override ours.
    pub fn overlay(&mut self, other: &Params) {
        for (k, v) in &other.0 {
            self.0.insert(k.clone(), v.clone());
        }
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    pub fn map(&self) -> &BTreeMap<String, String> {
        &self.0
    }

    pub fn opt<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        match self.0.get(key) {
            None => Ok(None),
            Some(v) => v
                .trim()
                .parse()
                .map(Some)
                .map_err(|_| CliError::Usage(format!("cannot parse {key}={v}"))),
        }
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<T, CliError> {
        self.opt(key)?
            .ok_or_else(|| CliError::Usage(format!("missing parameter --{key}")))
    }

    /// Comma-separated list.
    pub fn list<T: FromStr>(&self, key: &str) -> Result<Option<Vec<T>>, CliError> {
        match self.0.get(key) {
            None => Ok(None),
            Some(v) => v
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| {
                    s.trim()
                        .parse()
                        .map_err(|_| CliError::Usage(format!("cannot parse {key}={v}")))
                })
                .collect::<Result<Vec<T>, _>>()
                .map(Some),
        }
    }

    /// Odd or even prime, as `key` demands.
    pub fn prime(&self, key: &str) -> Result<u64, CliError> {
        let p: u64 = self.get(key)?;
        if !stickel_core::ring::arith::is_prime(p) {
            return Err(CliError::Usage(format!("--{key} {p} is not prime")));
        }
        Ok(p)
    }

    pub fn odd_prime(&self, key: &str) -> Result<u64, CliError> {
        let p = self.prime(key)?;
        if p == 2 {
            return Err(CliError::Usage(format!("--{key} must be an odd prime")));
        }
        Ok(p)
    }
}

/// Reads `key = value` pairs: the top level applies to every command, a
/// `[command]` section only to that command.
pub fn load_config(path: &Path, command: &str) -> Result<Params, CliError> {
    let ini = ini::Ini::load_from_file(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    let mut out = Params::new();
    if let Some(general) = ini.section(None::<String>) {
        for (k, v) in general.iter() {
            out.set(k, v);
        }
    }
    if let Some(sec) = ini.section(Some(command)) {
        for (k, v) in sec.iter() {
            out.set(k, v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_sections() {
        let dir = std::env::temp_dir().join(format!("stickel-config-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("job.ini");
        std::fs::write(&path, "seed = 5\nc = 3\n[gauss]\nl = 7\n[jacobi]\nl = 11\n").unwrap();
        let cfg = load_config(&path, "gauss").unwrap();
        assert_eq!(cfg.get::<u64>("l").unwrap(), 7);
        let mut p = Params::new().with("seed", 1);
        p.default_to("c", 5);
        let mut merged = Params::new().with("c", 99);
        merged.overlay(&cfg);
        merged.overlay(&p);
        assert_eq!(merged.get::<u64>("seed").unwrap(), 1);
        assert_eq!(merged.get::<u64>("c").unwrap(), 5);
        assert_eq!(merged.list::<u64>("c").unwrap(), Some(vec![5]));
        std::fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn bad_values_are_usage_errors() {
        let p = Params::new().with("p", 9).with("x", "a");
        assert!(matches!(p.prime("p"), Err(CliError::Usage(_))));
        assert!(matches!(p.get::<u64>("x"), Err(CliError::Usage(_))));
        assert!(matches!(p.get::<u64>("missing"), Err(CliError::Usage(_))));
    }
}
