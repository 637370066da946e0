//! `key = value` run configuration.
//!
//! Blank lines and lines starting with `#` or `;` are ignored. An optional
//! `[verb]` header must name the verb being run. Keys not known to the verb
//! are rejected.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// A key a verb accepts, with its default ("" for none) and a one-line help.
#[derive(Debug, Clone, Copy)]
pub struct Key {
    pub name: &'static str,
    pub default: &'static str,
    pub help: &'static str,
}

pub const fn key(name: &'static str, default: &'static str, help: &'static str) -> Key {
    Key { name, default, help }
}

/// Raw key-value pairs in insertion-independent order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RawConfig {
    pub values: BTreeMap<String, String>,
}

impl RawConfig {
    pub fn parse(text: &str, verb: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with(';') {
                continue;
            }
            if let Some(sec) = line.strip_prefix('[') {
                let sec = sec
                    .strip_suffix(']')
                    .ok_or_else(|| Error::Config(format!("line {}: unterminated section header", i + 1)))?
                    .trim();
                if sec != verb {
                    return Err(Error::Config(format!("line {}: section [{sec}] does not match verb `{verb}`", i + 1)));
                }
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", i + 1)))?;
            let k = k.trim();
            if k.is_empty() {
                return Err(Error::Config(format!("line {}: empty key", i + 1)));
            }
            if values.insert(k.to_string(), v.trim().to_string()).is_some() {
                return Err(Error::Config(format!("line {}: duplicate key `{k}`", i + 1)));
            }
        }
        Ok(Self { values })
    }

    /// Applies `key=value` overrides from the command line.
    pub fn set(&mut self, assignment: &str) -> Result<()> {
        let (k, v) = assignment
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("--set expects key=value, got `{assignment}`")))?;
        self.values.insert(k.trim().to_string(), v.trim().to_string());
        Ok(())
    }

    /// Layers `self` over `base`.
    pub fn over(mut self, base: RawConfig) -> RawConfig {
        let mut out = base;
        out.values.append(&mut self.values);
        out
    }
}

/// Resolved parameters of one run: every accepted key with its value.
#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    verb: String,
    values: BTreeMap<String, String>,
}

impl Params {
    pub fn resolve(verb: &str, keys: &[Key], raw: &RawConfig) -> Result<Self> {
        let unknown: Vec<&str> =
            raw.values.keys().map(String::as_str).filter(|k| !keys.iter().any(|key| key.name == *k)).collect();
        if !unknown.is_empty() {
            let known: Vec<&str> = keys.iter().map(|k| k.name).collect();
            return Err(Error::Config(format!(
                "unknown key(s) for `{verb}`: {}; accepted: {}",
                unknown.join(", "),
                known.join(", ")
            )));
        }
        let mut values = BTreeMap::new();
        for k in keys {
            let v = raw.values.get(k.name).map_or(k.default, String::as_str);
            values.insert(k.name.to_string(), v.to_string());
        }
        Ok(Self { verb: verb.to_string(), values })
    }

    pub fn values(&self) -> &BTreeMap<String, String> {
        &self.values
    }

    fn raw(&self, k: &str) -> &str {
        self.values.get(k).map_or("", String::as_str)
    }

    fn bad(&self, k: &str, what: &str) -> Error {
        Error::Config(format!("{}: `{k} = {}` is not {what}", self.verb, self.raw(k)))
    }

    pub fn is_set(&self, k: &str) -> bool {
        !self.raw(k).is_empty()
    }

    pub fn str(&self, k: &str) -> &str {
        self.raw(k)
    }

    pub fn f64(&self, k: &str) -> Result<f64> {
        self.raw(k).parse::<f64>().map_err(|_| self.bad(k, "a number"))
    }

    pub fn opt_f64(&self, k: &str) -> Result<Option<f64>> {
        if self.is_set(k) {
            self.f64(k).map(Some)
        } else {
            Ok(None)
        }
    }

    pub fn usize(&self, k: &str) -> Result<usize> {
        let v = self.f64(k)?;
        if v >= 0.0 && v.fract() == 0.0 && v <= usize::MAX as f64 {
            Ok(v as usize)
        } else {
            Err(self.bad(k, "a non-negative integer"))
        }
    }

    pub fn bool(&self, k: &str) -> Result<bool> {
        match self.raw(k) {
            "true" | "yes" | "1" => Ok(true),
            "false" | "no" | "0" => Ok(false),
            _ => Err(self.bad(k, "true or false")),
        }
    }

    /// Comma-separated list of numbers.
    pub fn f64_list(&self, k: &str) -> Result<Vec<f64>> {
        self.raw(k)
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<f64>().map_err(|_| self.bad(k, "a comma-separated list of numbers")))
            .collect()
    }

    pub fn list(&self, k: &str) -> Vec<&str> {
        self.raw(k).split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const KEYS: &[Key] = &[key("a", "1", ""), key("b", "", ""), key("list", "1,2", "")];

    #[test]
    fn parse_and_resolve() {
        let raw = RawConfig::parse("# c\n[eg-curve]\n a = 2.5 \n; more\n", "eg-curve").unwrap();
        let p = Params::resolve("eg-curve", KEYS, &raw).unwrap();
        assert_eq!(p.f64("a").unwrap(), 2.5);
        assert!(!p.is_set("b"));
        assert_eq!(p.f64_list("list").unwrap(), vec![1.0, 2.0]);
    }

    #[test]
    fn rejects() {
        assert!(RawConfig::parse("[lifetime]\n", "eg-curve").is_err());
        assert!(RawConfig::parse("a = 1\na = 2\n", "x").is_err());
        assert!(RawConfig::parse("just text\n", "x").is_err());
        let raw = RawConfig::parse("zzz = 1\n", "x").unwrap();
        let e = Params::resolve("x", KEYS, &raw).unwrap_err();
        assert!(e.to_string().contains("zzz"));
        assert_eq!(e.exit_code(), 1);
    }

    #[test]
    fn overrides_layer() {
        let mut top = RawConfig::default();
        top.set("a=7").unwrap();
        let base = RawConfig::parse("a = 1\nb = 2\n", "x").unwrap();
        let m = top.over(base);
        assert_eq!(m.values["a"], "7");
        assert_eq!(m.values["b"], "2");
    }
}
