//! Exact truth values on the rational unit interval and the Łukasiewicz
//! evaluation kernel.
//!
//! Every fuzzy degree in the crate is a [`TruthValue`]: a reduced fraction
//! `p/q` with `0 <= p <= q`. Implications produce new denominators (at most
//! the lcm of the operands'), while `min`/`max` aggregation never does, so
//! a bound on input denominators is enough to rule out overflow.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Largest denominator accepted from user input.
pub const MAX_DENOMINATOR: i64 = (1 << 31) - 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TruthError {
    #[error("truth value {0} lies outside [0,1]")]
    OutOfRange(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("denominator {0} exceeds the supported maximum {MAX_DENOMINATOR}")]
    DenominatorTooLarge(i64),
    #[error("cannot parse {0:?} as a rational truth value")]
    Parse(String),
    #[error("empty carrier: an aggregate over no values is undefined here")]
    EmptyCarrier,
}

/// A degree in `[0,1]`, stored as a canonical fraction.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct TruthValue(Ratio<i64>);

impl Ord for TruthValue {
    #[inline]
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        if a.denom() == b.denom() {
            return a.numer().cmp(b.numer());
        }
        // Denominators are below 2^63, numerators no larger; the products fit.
        let l = i128::from(*a.numer()) * i128::from(*b.denom());
        let r = i128::from(*b.numer()) * i128::from(*a.denom());
        l.cmp(&r)
    }
}

impl PartialOrd for TruthValue {
    #[inline]
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl TruthValue {
    pub const ZERO: TruthValue = TruthValue(Ratio::new_raw(0, 1));
    pub const ONE: TruthValue = TruthValue(Ratio::new_raw(1, 1));

    pub fn new(numer: i64, denom: i64) -> Result<Self, TruthError> {
        if denom == 0 {
            return Err(TruthError::ZeroDenominator);
        }
        let (numer, denom) =
            if denom < 0 { (numer.checked_neg(), denom.checked_neg()) } else { (Some(numer), Some(denom)) };
        let (Some(numer), Some(denom)) = (numer, denom) else {
            return Err(TruthError::OutOfRange(format!("{numer:?}/{denom:?}")));
        };
        let r = Ratio::new(numer, denom);
        if *r.denom() > MAX_DENOMINATOR {
            return Err(TruthError::DenominatorTooLarge(*r.denom()));
        }
        if r < Ratio::zero() || r > Ratio::one() {
            return Err(TruthError::OutOfRange(format!("{numer}/{denom}")));
        }
        Ok(TruthValue(r))
    }

    /// `k/d`; panics when the result would leave `[0,1]`. For grid construction.
    pub fn frac(k: u32, d: u32) -> Self {
        Self::new(i64::from(k), i64::from(d)).expect("grid value outside [0,1]")
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_crisp(&self) -> bool {
        self.is_zero() || self.is_one()
    }

    /// `1 - a`.
    pub fn complement(self) -> Self {
        TruthValue(Ratio::one() - self.0)
    }

    /// Whether `self + other <= 1`, the intuitionistic consistency bound.
    pub fn consistent_with(self, other: TruthValue) -> bool {
        self <= other.complement()
    }

    pub fn as_ratio(&self) -> Ratio<i64> {
        self.0
    }

    pub fn to_f64(self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    fn from_wide(r: Ratio<i128>) -> Self {
        // Reduced results of implication/strong conjunction have denominators
        // dividing the product of two bounded input denominators.
        let n = i64::try_from(*r.numer()).expect("numerator overflow");
        let d = i64::try_from(*r.denom()).expect("denominator overflow");
        TruthValue(Ratio::new_raw(n, d))
    }

    fn wide(self) -> Ratio<i128> {
        Ratio::new_raw(i128::from(self.numer()), i128::from(self.denom()))
    }
}

impl Default for TruthValue {
    fn default() -> Self {
        TruthValue::ZERO
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for TruthValue {
    type Err = TruthError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let parse = |x: &str| x.trim().parse::<i64>().map_err(|_| TruthError::Parse(s.to_string()));
        match t.split_once('/') {
            Some((p, q)) => TruthValue::new(parse(p)?, parse(q)?),
            None => TruthValue::new(parse(t)?, 1),
        }
    }
}

impl Serialize for TruthValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TruthValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct TvVisitor;

        impl Visitor<'_> for TvVisitor {
            type Value = TruthValue;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational \"p/q\" in [0,1] or the integer 0 or 1")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<TruthValue, E> {
                v.parse().map_err(E::custom)
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<TruthValue, E> {
                let v = i64::try_from(v).map_err(E::custom)?;
                TruthValue::new(v, 1).map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<TruthValue, E> {
                TruthValue::new(v, 1).map_err(E::custom)
            }
        }

        deserializer.deserialize_any(TvVisitor)
    }
}

/// Łukasiewicz implication `min(1, 1 - a + b)`.
pub fn luk_implies(a: TruthValue, b: TruthValue) -> TruthValue {
    if b >= a {
        return TruthValue::ONE;
    }
    TruthValue::from_wide(Ratio::one() - a.wide() + b.wide())
}

/// Gödel implication: `1` if `a <= b`, else `b`.
pub fn goedel_implies(a: TruthValue, b: TruthValue) -> TruthValue {
    if a <= b {
        TruthValue::ONE
    } else {
        b
    }
}

pub fn conj(a: TruthValue, b: TruthValue) -> TruthValue {
    a.min(b)
}

pub fn disj(a: TruthValue, b: TruthValue) -> TruthValue {
    a.max(b)
}

/// Łukasiewicz strong conjunction `max(0, a + b - 1)`; the lower bound for
/// chaining two implications through a middle term.
pub fn strong_conj(a: TruthValue, b: TruthValue) -> TruthValue {
    let s = a.wide() + b.wide() - Ratio::one();
    if s <= Ratio::zero() {
        TruthValue::ZERO
    } else {
        TruthValue::from_wide(s)
    }
}

pub fn aggregate_forall<I>(values: I) -> Result<TruthValue, TruthError>
where
    I: IntoIterator<Item = TruthValue>,
{
    values.into_iter().min().ok_or(TruthError::EmptyCarrier)
}

pub fn aggregate_exists<I>(values: I) -> Result<TruthValue, TruthError>
where
    I: IntoIterator<Item = TruthValue>,
{
    values.into_iter().max().ok_or(TruthError::EmptyCarrier)
}

/// The supremal `λ` at which every `antecedent → consequent` instance is a
/// λ-tautology, i.e. the infimum of the implication values.
pub fn tautology_degree<I>(pairs: I) -> Result<TruthValue, TruthError>
where
    I: IntoIterator<Item = (TruthValue, TruthValue)>,
{
    aggregate_forall(pairs.into_iter().map(|(a, c)| luk_implies(a, c)))
}

/// Which residuated implication an evaluator uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Implication {
    #[default]
    Lukasiewicz,
    Goedel,
}

impl Implication {
    pub fn apply(self, a: TruthValue, b: TruthValue) -> TruthValue {
        match self {
            Implication::Lukasiewicz => luk_implies(a, b),
            Implication::Goedel => goedel_implies(a, b),
        }
    }
}

/// `⊨_λ` as a test on a computed degree.
pub fn holds_at(degree: TruthValue, lambda: TruthValue) -> bool {
    degree.cmp(&lambda) != Ordering::Less
}

/// All values `k/d` for `k = 0..=d`, ascending.
pub fn value_grid(d: u32) -> Vec<TruthValue> {
    (0..=d).map(|k| TruthValue::frac(k, d)).collect()
}
