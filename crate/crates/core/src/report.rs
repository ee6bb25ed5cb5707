//! Twist reports: a list of components with their Picard and Brauer parts.

use std::fmt::Write as _;

use crate::abgrp::format_invariants;
use crate::error::{Error, Result};

pub const SCHEMA: &str = "twistforms-report/1";

/// Identification applied to the Brauer part of a component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quotient {
    None,
    /// `[A] ~ [A^op]`.
    Inversion,
    /// Whether `~` applies is not known; both counts are reported.
    Undecided,
    /// Quotient by the diagram automorphisms, bounded by inversion orbits.
    Theta,
}

impl Quotient {
    pub fn name(&self) -> &'static str {
        match self {
            Quotient::None => "none",
            Quotient::Inversion => "inversion",
            Quotient::Undecided => "undecided",
            Quotient::Theta => "theta",
        }
    }

    fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "none" => Quotient::None,
            "inversion" => Quotient::Inversion,
            "undecided" => Quotient::Undecided,
            "theta" => Quotient::Theta,
            _ => return Err(Error::Parse(format!("unknown quotient {s:?}"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    Exact,
    AtMost,
    AtLeast,
    Unknown,
}

impl Bound {
    pub fn name(&self) -> &'static str {
        match self {
            Bound::Exact => "exact",
            Bound::AtMost => "at-most",
            Bound::AtLeast => "at-least",
            Bound::Unknown => "unknown",
        }
    }

    fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "exact" => Bound::Exact,
            "at-most" => Bound::AtMost,
            "at-least" => Bound::AtLeast,
            "unknown" => Bound::Unknown,
            _ => return Err(Error::Parse(format!("unknown bound {s:?}"))),
        })
    }

    /// Bound of a sum of terms with these bounds.
    pub fn combine(self, o: Bound) -> Bound {
        match (self, o) {
            (Bound::Exact, b) | (b, Bound::Exact) => b,
            (a, b) if a == b => a,
            _ => Bound::Unknown,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    /// `inner`, `quadratic` or `cubic`.
    pub class: String,
    pub label: String,
    pub fundamental: String,
    /// Invariant factors of the Picard part, `None` if not computable.
    pub j: Option<Vec<i128>>,
    pub i: Option<Vec<i128>>,
    pub quotient: Quotient,
    /// Size with the quotient applied (the smaller count when undecided).
    pub size: Option<u128>,
    /// Size without the quotient, when the quotient is undecided.
    pub size_max: Option<u128>,
    pub exact: bool,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistReport {
    pub group: String,
    pub curve: String,
    pub places: String,
    pub theta: String,
    pub components: Vec<Component>,
    pub outer_forms: usize,
    pub total: Option<u128>,
    pub total_max: Option<u128>,
    pub bound: Bound,
    pub hasse_principle: Option<String>,
    pub notes: Vec<String>,
}

fn product(xs: &[i128]) -> u128 {
    xs.iter().map(|&d| d as u128).product()
}

impl TwistReport {
    /// Fills `total`, `total_max`, `bound` and `outer_forms` from the components.
    pub fn assemble(mut self, missing_classes: bool) -> Self {
        let mut total = Some(0u128);
        let mut total_max = Some(0u128);
        let mut undecided = false;
        let mut bound = Bound::Exact;
        for c in &self.components {
            total = total.zip(c.size).map(|(a, b)| a + b);
            total_max = total_max.zip(c.size_max.or(c.size)).map(|(a, b)| a + b);
            undecided |= c.size_max.is_some();
            if !c.exact {
                bound = bound.combine(Bound::AtMost);
            }
        }
        if missing_classes {
            bound = bound.combine(Bound::AtLeast);
        }
        if total.is_none() {
            bound = Bound::Unknown;
        }
        self.total = total;
        self.total_max = if undecided { total_max } else { None };
        self.bound = bound;
        self.outer_forms = self
            .components
            .iter()
            .filter(|c| c.class != "inner")
            .count();
        self
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "group: {}", self.group);
        let _ = writeln!(s, "curve: {}", self.curve);
        let _ = writeln!(s, "S: {}", self.places);
        let _ = writeln!(s, "theta: {}", self.theta);
        let _ = writeln!(s, "components: {}", self.components.len());
        let _ = writeln!(s, "outer forms: {}", self.outer_forms);
        for (k, c) in self.components.iter().enumerate() {
            let _ = writeln!(s, "component {} [{}] {}", k + 1, c.class, c.label);
            let _ = writeln!(s, "  fundamental group: {}", c.fundamental);
            let inv = |v: &Option<Vec<i128>>| match v {
                Some(v) if v.is_empty() => "trivial".to_string(),
                Some(v) => format!(
                    "{} (order {})",
                    v.iter()
                        .map(|d| format!("Z/{d}"))
                        .collect::<Vec<_>>()
                        .join(" x "),
                    product(v)
                ),
                None => "not computable".to_string(),
            };
            let _ = writeln!(s, "  Picard part: {}", inv(&c.j));
            let _ = writeln!(s, "  Brauer part: {}", inv(&c.i));
            if c.quotient != Quotient::None {
                let _ = writeln!(s, "  quotient: {}", c.quotient.name());
            }
            let size = match (c.size, c.size_max) {
                (Some(a), Some(b)) => format!("{a} to {b}"),
                (Some(a), None) => a.to_string(),
                _ => "unknown".into(),
            };
            let _ = writeln!(
                s,
                "  size: {size}{}",
                if c.exact { "" } else { " (upper bound)" }
            );
            if let Some(n) = &c.note {
                let _ = writeln!(s, "  note: {n}");
            }
        }
        let total = match (self.total, self.total_max) {
            (Some(a), Some(b)) => format!("{a} to {b}"),
            (Some(a), None) => a.to_string(),
            _ => "unknown".into(),
        };
        let _ = writeln!(s, "total: {total} ({})", self.bound.name());
        if let Some(h) = &self.hasse_principle {
            let _ = writeln!(s, "hasse principle: {h}");
        }
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        s
    }

    pub fn to_kv(&self) -> String {
        let mut s = String::new();
        let opt = |v: Option<u128>| v.map_or("none".to_string(), |x| x.to_string());
        let invs = |v: &Option<Vec<i128>>| {
            v.as_ref()
                .map_or("none".to_string(), |x| format_invariants(x))
        };
        let _ = writeln!(s, "schema={SCHEMA}");
        let _ = writeln!(s, "group={}", self.group);
        let _ = writeln!(s, "curve={}", self.curve);
        let _ = writeln!(s, "S={}", self.places);
        let _ = writeln!(s, "theta={}", self.theta);
        let _ = writeln!(s, "components={}", self.components.len());
        let _ = writeln!(s, "outer_forms={}", self.outer_forms);
        for (k, c) in self.components.iter().enumerate() {
            let p = format!("component.{}", k + 1);
            let _ = writeln!(s, "{p}.class={}", c.class);
            let _ = writeln!(s, "{p}.label={}", c.label);
            let _ = writeln!(s, "{p}.fundamental={}", c.fundamental);
            let _ = writeln!(s, "{p}.j={}", invs(&c.j));
            let _ = writeln!(s, "{p}.i={}", invs(&c.i));
            let _ = writeln!(s, "{p}.quotient={}", c.quotient.name());
            let _ = writeln!(s, "{p}.size={}", opt(c.size));
            let _ = writeln!(s, "{p}.size_max={}", opt(c.size_max));
            let _ = writeln!(s, "{p}.exact={}", c.exact);
            if let Some(n) = &c.note {
                let _ = writeln!(s, "{p}.note={n}");
            }
        }
        let _ = writeln!(s, "total={}", opt(self.total));
        let _ = writeln!(s, "total_max={}", opt(self.total_max));
        let _ = writeln!(s, "bound={}", self.bound.name());
        if let Some(h) = &self.hasse_principle {
            let _ = writeln!(s, "hasse_principle={h}");
        }
        for (k, n) in self.notes.iter().enumerate() {
            let _ = writeln!(s, "note.{}={n}", k + 1);
        }
        s
    }

    pub fn from_kv(text: &str) -> Result<Self> {
        let mut map = std::collections::BTreeMap::new();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad report line {line:?}")))?;
            map.insert(k.to_string(), v.to_string());
        }
        let get = |k: &str| {
            map.get(k)
                .cloned()
                .ok_or_else(|| Error::Parse(format!("report lacks {k}")))
        };
        if get("schema")? != SCHEMA {
            return Err(Error::Parse("unsupported report schema".into()));
        }
        let num = |v: String| {
            v.parse::<u128>()
                .map_err(|_| Error::Parse(format!("bad number {v:?}")))
        };
        let opt = |v: String| {
            if v == "none" {
                Ok(None)
            } else {
                num(v).map(Some)
            }
        };
        let invs = |v: String| -> Result<Option<Vec<i128>>> {
            if v == "none" {
                return Ok(None);
            }
            let body = v
                .strip_prefix('[')
                .and_then(|b| b.strip_suffix(']'))
                .ok_or_else(|| Error::Parse(format!("bad list {v:?}")))?;
            body.split(',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<i128>()
                        .map_err(|_| Error::Parse(format!("bad invariant {t:?}")))
                })
                .collect::<Result<Vec<_>>>()
                .map(Some)
        };
        let n = num(get("components")?)? as usize;
        let mut components = Vec::new();
        for k in 1..=n {
            let p = format!("component.{k}");
            let f = |s: &str| get(&format!("{p}.{s}"));
            components.push(Component {
                class: f("class")?,
                label: f("label")?,
                fundamental: f("fundamental")?,
                j: invs(f("j")?)?,
                i: invs(f("i")?)?,
                quotient: Quotient::parse(&f("quotient")?)?,
                size: opt(f("size")?)?,
                size_max: opt(f("size_max")?)?,
                exact: f("exact")? == "true",
                note: map.get(&format!("{p}.note")).cloned(),
            });
        }
        let mut notes = Vec::new();
        while let Some(v) = map.get(&format!("note.{}", notes.len() + 1)) {
            notes.push(v.clone());
        }
        Ok(TwistReport {
            group: get("group")?,
            curve: get("curve")?,
            places: get("S")?,
            theta: get("theta")?,
            components,
            outer_forms: num(get("outer_forms")?)? as usize,
            total: opt(get("total")?)?,
            total_max: opt(get("total_max")?)?,
            bound: Bound::parse(&get("bound")?)?,
            hasse_principle: map.get("hasse_principle").cloned(),
            notes,
        })
    }
}
