//! INI-like problem files.
//!
//! ```text
//! [ring]
//! char = 7
//! vars = x y z
//! relations = x^3+y^3+z^3
//! [ideal]
//! gens = x^2 ; y^2 ; z^2
//! [assumptions]
//! flags = normal_domain cohen_macaulay omega_invertible strongly_semistable
//! [options]
//! order = grevlex
//! ```
//!
//! Lists of polynomials are separated by `;`. `#` starts a comment.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::assumptions::{Assumption, AssumptionSet};
use crate::engine::{EngineError, IdealSpec};
use crate::field::{FieldError, PrimeField};
use crate::graded_ring::{RingError, RingPresentation};
use crate::order::MonomialOrder;
use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}{}: {message}", section_suffix(.section))]
pub struct ProblemError {
    pub line: usize,
    pub section: Option<String>,
    pub message: String,
}

fn section_suffix(section: &Option<String>) -> String {
    section.as_ref().map(|s| format!(" [{s}]")).unwrap_or_default()
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ProblemOptions {
    pub order: MonomialOrder,
    pub cap: Option<u32>,
    pub emax: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemFile {
    pub characteristic: u64,
    pub vars: Vec<String>,
    pub relations: Vec<Polynomial>,
    pub gens: Vec<Polynomial>,
    pub flags: AssumptionSet,
    pub options: ProblemOptions,
}

const SECTIONS: [(&str, &[&str]); 4] = [
    ("ring", &["char", "vars", "relations"]),
    ("ideal", &["gens"]),
    ("assumptions", &["flags"]),
    ("options", &["order", "cap", "emax"]),
];

struct Entry {
    line: usize,
    value: String,
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self, ProblemError> {
        let mut entries: BTreeMap<(&'static str, &'static str), Entry> = BTreeMap::new();
        let mut headers: BTreeMap<&'static str, usize> = BTreeMap::new();
        let mut current: Option<(&'static str, &'static [&'static str])> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let err = |message: String| ProblemError { line, section: current.map(|c| c.0.to_string()), message };
            if let Some(name) = content.strip_prefix('[') {
                let name = name.strip_suffix(']').ok_or_else(|| err("unterminated section header".into()))?.trim();
                let found = SECTIONS
                    .iter()
                    .find(|(s, _)| *s == name)
                    .ok_or_else(|| err(format!("unknown section `{name}`")))?;
                if headers.insert(found.0, line).is_some() {
                    return Err(err(format!("duplicate section `{name}`")));
                }
                current = Some(*found);
                continue;
            }
            let Some((section, keys)) = current else {
                return Err(err("key outside of any section".into()));
            };
            let (key, value) = content.split_once('=').ok_or_else(|| err("expected `key = value`".into()))?;
            let key = key.trim();
            let key = *keys.iter().find(|k| **k == key).ok_or_else(|| err(format!("unknown key `{key}`")))?;
            let entry = Entry { line, value: value.trim().to_string() };
            if entries.insert((section, key), entry).is_some() {
                return Err(err(format!("duplicate key `{key}`")));
            }
        }

        let missing = |section: &'static str, key: &str| ProblemError {
            line: headers.get(section).copied().unwrap_or(0),
            section: Some(section.to_string()),
            message: format!("missing `{key}`"),
        };
        let at = |section: &'static str, e: &Entry, message: String| ProblemError {
            line: e.line,
            section: Some(section.to_string()),
            message,
        };

        let char_entry = entries.get(&("ring", "char")).ok_or_else(|| missing("ring", "char"))?;
        let characteristic: u64 = char_entry
            .value
            .parse()
            .map_err(|_| at("ring", char_entry, format!("`{}` is not an integer", char_entry.value)))?;
        let field = PrimeField::new(characteristic).map_err(|e| at("ring", char_entry, e.to_string()))?;

        let vars_entry = entries.get(&("ring", "vars")).ok_or_else(|| missing("ring", "vars"))?;
        let vars: Vec<String> = vars_entry.value.split_whitespace().map(str::to_string).collect();
        if vars.is_empty() {
            return Err(at("ring", vars_entry, "no variables declared".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            let mut chars = v.chars();
            let ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(at("ring", vars_entry, format!("invalid variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(at("ring", vars_entry, format!("variable `{v}` declared twice")));
            }
        }

        let poly_list = |section: &'static str, key: &'static str| -> Result<Vec<Polynomial>, ProblemError> {
            let Some(e) = entries.get(&(section, key)) else { return Ok(Vec::new()) };
            split_list(&e.value)
                .map(|item| {
                    Polynomial::parse(item, &vars, characteristic)
                        .map_err(|err| at(section, e, format!("`{item}`: {err}")))
                })
                .collect()
        };
        let relations = poly_list("ring", "relations")?;
        let gens_entry = entries.get(&("ideal", "gens")).ok_or_else(|| missing("ideal", "gens"))?;
        let gens = poly_list("ideal", "gens")?;
        if gens.is_empty() {
            return Err(at("ideal", gens_entry, "no generators".into()));
        }

        let mut flags = AssumptionSet::new();
        if let Some(e) = entries.get(&("assumptions", "flags")) {
            for word in e.value.split_whitespace() {
                flags.insert(word.parse::<Assumption>().map_err(|m| at("assumptions", e, m))?);
            }
        }

        let mut options = ProblemOptions::default();
        if let Some(e) = entries.get(&("options", "order")) {
            options.order = e.value.parse().map_err(|m: String| at("options", e, m))?;
        }
        for (key, slot) in [("cap", &mut options.cap), ("emax", &mut options.emax)] {
            if let Some(e) = entries.get(&("options", key)) {
                *slot = Some(
                    e.value.parse().map_err(|_| at("options", e, format!("`{key}` must be a non-negative integer")))?,
                );
            }
        }

        let pf = Self { characteristic, vars, relations, gens, flags, options };
        let ring = pf.ring().map_err(|err| match err {
            RingError::BadRelation { .. } | RingError::TooManyRelations { .. } => {
                let line = entries.get(&("ring", "relations")).map_or(char_entry.line, |e| e.line);
                ProblemError { line, section: Some("ring".into()), message: err.to_string() }
            }
            other => at("ring", char_entry, other.to_string()),
        })?;
        if let Err(err) = pf.ideal(&ring) {
            let message = match err {
                EngineError::GeneratorNotHomogeneous { index } => {
                    format!("generator not homogeneous: `{}`", ring.format_poly(&pf.gens[index]))
                }
                other => other.to_string(),
            };
            return Err(at("ideal", gens_entry, message));
        }
        debug_assert_eq!(field, ring.field());
        Ok(pf)
    }

    pub fn field(&self) -> Result<PrimeField, FieldError> {
        PrimeField::new(self.characteristic)
    }

    pub fn ring(&self) -> Result<RingPresentation, RingError> {
        let field = self.field().map_err(|e| RingError::Poly(e.into()))?;
        RingPresentation::new(field, self.vars.clone(), self.relations.clone(), self.flags.clone(), self.options.order)
    }

    pub fn ideal(&self, ring: &RingPresentation) -> Result<IdealSpec, EngineError> {
        IdealSpec::new(ring, self.gens.clone(), self.flags.contains(&Assumption::Primary))
    }

    /// Canonical text; `parse(format())` returns an equal value.
    pub fn format(&self) -> String {
        let join = |ps: &[Polynomial]| ps.iter().map(|p| p.format_with(&self.vars)).collect::<Vec<_>>().join(" ; ");
        let mut out = String::new();
        let _ = writeln!(out, "[ring]");
        let _ = writeln!(out, "char = {}", self.characteristic);
        let _ = writeln!(out, "vars = {}", self.vars.join(" "));
        if !self.relations.is_empty() {
            let _ = writeln!(out, "relations = {}", join(&self.relations));
        }
        let _ = writeln!(out, "[ideal]");
        let _ = writeln!(out, "gens = {}", join(&self.gens));
        let _ = writeln!(out, "[assumptions]");
        let flags: Vec<&str> = self.flags.iter().map(Assumption::as_str).collect();
        let _ = writeln!(out, "flags = {}", flags.join(" "));
        let _ = writeln!(out, "[options]");
        let _ = writeln!(out, "order = {}", self.options.order);
        if let Some(cap) = self.options.cap {
            let _ = writeln!(out, "cap = {cap}");
        }
        if let Some(emax) = self.options.emax {
            let _ = writeln!(out, "emax = {emax}");
        }
        out
    }
}

fn split_list(value: &str) -> impl Iterator<Item = &str> {
    value.split(';').map(str::trim).filter(|s| !s.is_empty())
}
