//! Coefficient tables and the shipped presets.
//!
//! Preset files are `key = value` records:
//!
//! ```text
//! n = 3            # ambient dimension
//! d = 2            # codimension
//! deg_w = 1
//! ks = 1, 1
//! k = m            # integer, `m`, or `m + c` / `m - c`
//! ell = m - 1
//! sigma.0 = 1      # rational
//! tau.0 = 1
//! chi = 2          # optional
//! ```

use std::collections::BTreeMap;

use super::AmbientSetup;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernCoefficientTable {
    pub sigma: BTreeMap<u32, Rational>,
    pub tau: BTreeMap<u32, Rational>,
    pub chi: Option<i64>,
}

impl ChernCoefficientTable {
    /// All entries present and zero, for codimension `d` and `n - d = top`.
    pub fn zero(d: u32, top: u32) -> Self {
        ChernCoefficientTable {
            sigma: (0..=d).map(|i| (i, rational::int(0))).collect(),
            tau: (0..=top).map(|i| (i, rational::int(0))).collect(),
            chi: None,
        }
    }

    pub fn sigma(&self, i: u32) -> Result<&Rational> {
        self.sigma
            .get(&i)
            .ok_or_else(|| Error::MissingTableEntry(format!("sigma.{i}")))
    }

    pub fn tau(&self, i: u32) -> Result<&Rational> {
        self.tau
            .get(&i)
            .ok_or_else(|| Error::MissingTableEntry(format!("tau.{i}")))
    }
}

/// A value that may depend on the field degree parameter `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Affine {
    Const(i64),
    MPlus(i64),
}

impl Affine {
    fn parse(s: &str) -> Option<Affine> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(rest) = s.strip_prefix('m') {
            if rest.is_empty() {
                return Some(Affine::MPlus(0));
            }
            let c: i64 = rest.strip_prefix('+').unwrap_or(rest).parse().ok()?;
            return Some(Affine::MPlus(c));
        }
        s.parse().ok().map(Affine::Const)
    }

    fn at(self, m: u32) -> Result<u32> {
        let v = match self {
            Affine::Const(c) => c,
            Affine::MPlus(c) => m as i64 + c,
        };
        u32::try_from(v).map_err(|_| Error::InvalidSetup(format!("negative value {v} at m = {m}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preset {
    pub name: String,
    n: u32,
    d: u32,
    deg_w: u32,
    ks: Vec<u32>,
    k: Affine,
    ell: Affine,
    pub table: ChernCoefficientTable,
}

impl Preset {
    pub fn parse(name: &str, text: &str) -> Result<Preset> {
        let mut fields: BTreeMap<String, String> = BTreeMap::new();
        let mut table = ChernCoefficientTable {
            sigma: BTreeMap::new(),
            tau: BTreeMap::new(),
            chi: None,
        };
        for (idx, raw) in text.lines().enumerate() {
            let err = |message: String| Error::Manifest {
                line: idx + 1,
                message,
            };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err("expected `key = value`".into()))?;
            let (key, value) = (key.trim(), value.trim());
            let index = |prefix: &str| -> Option<Result<u32>> {
                key.strip_prefix(prefix)
                    .map(|i| i.parse().map_err(|_| err(format!("bad index in `{key}`"))))
            };
            if let Some(i) = index("sigma.") {
                table
                    .sigma
                    .insert(i?, rational::parse(value).map_err(|e| err(e.to_string()))?);
            } else if let Some(i) = index("tau.") {
                table
                    .tau
                    .insert(i?, rational::parse(value).map_err(|e| err(e.to_string()))?);
            } else if key == "chi" {
                table.chi = Some(
                    value
                        .parse()
                        .map_err(|_| err(format!("bad chi `{value}`")))?,
                );
            } else if ["n", "d", "deg_w", "ks", "k", "ell"].contains(&key) {
                fields.insert(key.to_string(), value.to_string());
            } else {
                return Err(err(format!("unknown key `{key}`")));
            }
        }
        let get = |key: &str| {
            fields
                .get(key)
                .cloned()
                .ok_or_else(|| Error::MissingTableEntry(key.to_string()))
        };
        let int = |key: &str| -> Result<u32> {
            get(key)?
                .parse()
                .map_err(|_| Error::InvalidSetup(format!("`{key}` is not a nonnegative integer")))
        };
        let affine = |key: &str| -> Result<Affine> {
            let v = get(key)?;
            Affine::parse(&v)
                .ok_or_else(|| Error::InvalidSetup(format!("cannot read `{key} = {v}`")))
        };
        let ks = get("ks")?
            .split(',')
            .map(|s| s.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::InvalidSetup("`ks` must be a comma-separated list".into()))?;
        Ok(Preset {
            name: name.to_string(),
            n: int("n")?,
            d: int("d")?,
            deg_w: int("deg_w")?,
            ks,
            k: affine("k")?,
            ell: affine("ell")?,
            table,
        })
    }

    /// Setup and table at field-degree parameter `m`.
    pub fn instantiate(&self, m: u32) -> Result<(AmbientSetup, ChernCoefficientTable)> {
        let setup = AmbientSetup::new(
            self.n,
            self.d,
            self.k.at(m)?,
            self.deg_w,
            self.ks.clone(),
            self.ell.at(m)?,
        )?;
        Ok((setup, self.table.clone()))
    }
}

const PRESETS: &[(&str, &str)] = &[("p3-line", include_str!("../../presets/p3-line.txt"))];

pub fn preset_names() -> Vec<&'static str> {
    PRESETS.iter().map(|(n, _)| *n).collect()
}

pub fn preset(name: &str) -> Result<Preset> {
    let (_, text) = PRESETS
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::UnknownPreset(name.to_string()))?;
    Preset::parse(name, text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_values() {
        assert_eq!(Affine::parse("m - 1"), Some(Affine::MPlus(-1)));
        assert_eq!(Affine::parse("m+2"), Some(Affine::MPlus(2)));
        assert_eq!(Affine::parse("4"), Some(Affine::Const(4)));
        assert_eq!(Affine::parse("x"), None);
    }

    #[test]
    fn missing_entries_are_reported() {
        let p = Preset::parse(
            "t",
            "n = 3\nd = 2\ndeg_w = 1\nks = 1, 1\nk = m\nell = m - 1\nsigma.0 = 1\n",
        )
        .unwrap();
        let (setup, table) = p.instantiate(2).unwrap();
        assert_eq!(
            super::super::nu_value(&setup, &table),
            Err(Error::MissingTableEntry("tau.0".into()))
        );
        assert!(matches!(preset("nope"), Err(Error::UnknownPreset(_))));
    }
}
