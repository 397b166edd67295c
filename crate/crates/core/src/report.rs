//! Degree reports: per-condition tautology degrees with replayable witnesses.

use std::fmt;

use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::truthval::{holds_at, Implication, TruthValue};

/// Convention labels carried by every report.
pub mod conventions {
    pub const EMPTY_WORD_IDENTITY: &str = "empty-word: diagonal identity (A*(a,0,a)=1, A*(a,0,b)=0, B* dual)";
    pub const DUAL_NU: &str = "convention: dual-nu-v1";
    pub const LUKASIEWICZ: &str = "implication: lukasiewicz";
    pub const GOEDEL: &str = "implication: goedel (comparison mode)";
    pub const STRUCTURE_PRODUCT: &str = "structure: product-subgroup";
    pub const STRUCTURE_NONE: &str = "structure: none";
}

/// A value bound to one quantified variable of a condition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundValue {
    State(usize),
    Letter(usize),
    Word(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Binding {
    pub var: String,
    pub value: BoundValue,
}

impl Binding {
    pub fn state(var: &str, x: usize) -> Self {
        Binding { var: var.into(), value: BoundValue::State(x) }
    }

    pub fn letter(var: &str, x: usize) -> Self {
        Binding { var: var.into(), value: BoundValue::Letter(x) }
    }

    pub fn word(var: &str, w: &[usize]) -> Self {
        Binding { var: var.into(), value: BoundValue::Word(w.to_vec()) }
    }
}

impl fmt::Display for Binding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            BoundValue::State(x) | BoundValue::Letter(x) => write!(f, "{}={}", self.var, x),
            BoundValue::Word(w) if w.is_empty() => write!(f, "{}=0", self.var),
            BoundValue::Word(w) => {
                let parts: Vec<String> = w.iter().map(usize::to_string).collect();
                write!(f, "{}=[{}]", self.var, parts.join(" "))
            }
        }
    }
}

/// One instantiation of a condition together with its evaluated truth values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Witness {
    pub condition: String,
    pub binding: Vec<Binding>,
    pub antecedent: TruthValue,
    pub consequent: TruthValue,
    pub degree: TruthValue,
}

impl Witness {
    pub fn get(&self, var: &str) -> Option<&BoundValue> {
        self.binding.iter().find(|b| b.var == var).map(|b| &b.value)
    }

    pub fn state(&self, var: &str) -> Option<usize> {
        match self.get(var)? {
            BoundValue::State(x) => Some(*x),
            _ => None,
        }
    }

    pub fn letter(&self, var: &str) -> Option<usize> {
        match self.get(var)? {
            BoundValue::Letter(x) => Some(*x),
            _ => None,
        }
    }

    pub fn word(&self, var: &str) -> Option<&[usize]> {
        match self.get(var)? {
            BoundValue::Word(w) => Some(w),
            _ => None,
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b: Vec<String> = self.binding.iter().map(Binding::to_string).collect();
        write!(f, "{} [{}]: {} -> {} = {}", self.condition, b.join(", "), self.antecedent, self.consequent, self.degree)
    }
}

/// Running infimum of one condition family over its instantiations.
///
/// Instantiations must be fed in lexicographic order; the recorded witness
/// is then the first one attaining the minimum.
#[derive(Debug, Clone)]
pub struct Scan {
    label: String,
    implication: Implication,
    degree: TruthValue,
    witness: Option<Witness>,
}

impl Scan {
    pub fn new(label: impl Into<String>, implication: Implication) -> Self {
        Scan { label: label.into(), implication, degree: TruthValue::ONE, witness: None }
    }

    #[inline]
    pub fn observe<F>(&mut self, antecedent: TruthValue, consequent: TruthValue, binding: F)
    where
        F: FnOnce() -> Vec<Binding>,
    {
        // Implication is 1 whenever the consequent dominates; skip the arithmetic.
        if consequent >= antecedent {
            return;
        }
        let d = self.implication.apply(antecedent, consequent);
        if d < self.degree {
            self.degree = d;
            self.witness =
                Some(Witness { condition: self.label.clone(), binding: binding(), antecedent, consequent, degree: d });
        }
    }

    pub fn degree(&self) -> TruthValue {
        self.degree
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn into_parts(self) -> (String, TruthValue, Option<Witness>) {
        (self.label, self.degree, self.witness)
    }
}

/// Per-condition degrees, their minimum, and the witnesses behind any
/// condition that is not a full tautology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeReport {
    pub conditions: Vec<(String, TruthValue)>,
    pub overall: TruthValue,
    pub witnesses: Vec<Witness>,
    pub conventions: Vec<String>,
    pub lambda: Option<TruthValue>,
}

impl DegreeReport {
    pub fn new(conventions: &[&str]) -> Self {
        DegreeReport {
            conditions: Vec::new(),
            overall: TruthValue::ONE,
            witnesses: Vec::new(),
            conventions: conventions.iter().map(|s| s.to_string()).collect(),
            lambda: None,
        }
    }

    pub fn push_scan(&mut self, scan: Scan) {
        let (label, degree, witness) = scan.into_parts();
        self.push(label, degree, witness);
    }

    pub fn push(&mut self, label: impl Into<String>, degree: TruthValue, witness: Option<Witness>) {
        self.conditions.push((label.into(), degree));
        self.overall = self.overall.min(degree);
        if let Some(w) = witness {
            self.witnesses.push(w);
        }
    }

    /// Appends all conditions and witnesses of `other` under a label prefix.
    pub fn absorb(&mut self, prefix: &str, other: DegreeReport) {
        for (label, degree) in other.conditions {
            self.conditions.push((format!("{prefix}{label}"), degree));
            self.overall = self.overall.min(degree);
        }
        for mut w in other.witnesses {
            w.condition = format!("{prefix}{}", w.condition);
            self.witnesses.push(w);
        }
        for c in other.conventions {
            if !self.conventions.contains(&c) {
                self.conventions.push(c);
            }
        }
    }

    pub fn degree(&self, label: &str) -> Option<TruthValue> {
        self.conditions.iter().find(|(l, _)| l == label).map(|(_, d)| *d)
    }

    /// Minimum over the conditions whose labels satisfy `pred`.
    pub fn min_over<P: Fn(&str) -> bool>(&self, pred: P) -> TruthValue {
        self.conditions.iter().filter(|(l, _)| pred(l)).map(|(_, d)| *d).min().unwrap_or(TruthValue::ONE)
    }

    /// Keeps only witnesses strictly below `lambda` and records the query.
    pub fn at_lambda(mut self, lambda: TruthValue) -> Self {
        self.witnesses.retain(|w| w.degree < lambda);
        self.lambda = Some(lambda);
        self
    }

    pub fn verdict(&self) -> Option<bool> {
        self.lambda.map(|l| holds_at(self.overall, l))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for DegreeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.conventions {
            writeln!(f, "# {c}")?;
        }
        let width = self.conditions.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
        for (label, degree) in &self.conditions {
            writeln!(f, "{label:<width$}  {degree}")?;
        }
        writeln!(f, "overall: {}", self.overall)?;
        for w in &self.witnesses {
            writeln!(f, "witness: {w}")?;
        }
        if let (Some(l), Some(v)) = (self.lambda, self.verdict()) {
            let (verdict, op) = if v { ("PASS", ">=") } else { ("FAIL", "<") };
            writeln!(f, "verdict: {verdict} ({} {op} {l})", self.overall)?;
        }
        Ok(())
    }
}

struct Conditions<'a>(&'a [(String, TruthValue)]);

impl Serialize for Conditions<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl Serialize for DegreeReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let extra = usize::from(self.lambda.is_some()) * 2;
        let mut map = serializer.serialize_map(Some(4 + extra))?;
        map.serialize_entry("conditions", &Conditions(&self.conditions))?;
        map.serialize_entry("overall", &self.overall)?;
        map.serialize_entry("witnesses", &self.witnesses)?;
        map.serialize_entry("conventions", &self.conventions)?;
        if let Some(l) = self.lambda {
            map.serialize_entry("lambda", &l)?;
            map.serialize_entry("verdict", if holds_at(self.overall, l) { "pass" } else { "fail" })?;
        }
        map.end()
    }
}

#[derive(Deserialize)]
struct RawReport {
    conditions: serde_json::Map<String, serde_json::Value>,
    overall: TruthValue,
    witnesses: Vec<Witness>,
    conventions: Vec<String>,
    #[serde(default)]
    lambda: Option<TruthValue>,
}

impl<'de> Deserialize<'de> for DegreeReport {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = RawReport::deserialize(deserializer)?;
        let conditions = raw
            .conditions
            .into_iter()
            .map(|(k, v)| Ok((k, TruthValue::deserialize(v).map_err(D::Error::custom)?)))
            .collect::<Result<Vec<_>, D::Error>>()?;
        Ok(DegreeReport {
            conditions,
            overall: raw.overall,
            witnesses: raw.witnesses,
            conventions: raw.conventions,
            lambda: raw.lambda,
        })
    }
}
