//! `key=value` defaults file. Blank lines and `#` comments are ignored;
//! unknown keys are an error.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::cli::Format;
use crate::CliError;

const KEYS: [&str; 9] =
    ["seed", "format", "threads", "restarts", "atoms", "max_iters", "tol", "lemma3_grid", "samples"];

#[derive(Debug, Default, PartialEq)]
pub struct FileConfig {
    values: BTreeMap<String, String>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected key=value", i + 1)))?;
            let k = k.trim();
            if !KEYS.contains(&k) {
                return Err(CliError::Usage(format!("config line {}: unknown key `{k}`", i + 1)));
            }
            if values.insert(k.to_string(), v.trim().to_string()).is_some() {
                return Err(CliError::Usage(format!("config line {}: duplicate key `{k}`", i + 1)));
            }
        }
        Ok(Self { values })
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        self.values
            .get(key)
            .map(|v| v.parse().map_err(|_| CliError::Usage(format!("config: invalid value `{v}` for `{key}`"))))
            .transpose()
    }

    pub fn format(&self) -> Result<Option<Format>, CliError> {
        match self.values.get("format").map(String::as_str) {
            None => Ok(None),
            Some("json") => Ok(Some(Format::Json)),
            Some("csv") => Ok(Some(Format::Csv)),
            Some("md") => Ok(Some(Format::Md)),
            Some(v) => Err(CliError::Usage(format!("config: invalid format `{v}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_known_keys() {
        let c = FileConfig::parse("# defaults\nseed = 7\n\nformat=md\ntol=1e-8\n").unwrap();
        assert_eq!(c.get::<u64>("seed").unwrap(), Some(7));
        assert_eq!(c.get::<f64>("tol").unwrap(), Some(1e-8));
        assert_eq!(c.format().unwrap(), Some(Format::Md));
        assert_eq!(c.get::<usize>("atoms").unwrap(), None);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(FileConfig::parse("colour=red").is_err());
        assert!(FileConfig::parse("seed").is_err());
        assert!(FileConfig::parse("seed=1\nseed=2").is_err());
        assert!(FileConfig::parse("seed=abc").unwrap().get::<u64>("seed").is_err());
        assert!(FileConfig::parse("format=xml").unwrap().format().is_err());
    }
}
