//! Intuitionistic fuzzy subsets of a finite carrier and the graded
//! subgroup, normality, identity and homomorphism checks on a group.
//!
//! Nonmembership conditions dualize the membership ones: each implication
//! is reversed and `min` becomes `max`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{FiniteGroup, GroupHomomorphism};
use crate::report::{conventions, Binding, DegreeReport, Scan};
use crate::truthval::{Implication, TruthValue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IfsError {
    #[error("carrier has {carrier} elements but mu has {mu} and nu has {nu}")]
    LengthMismatch { carrier: usize, mu: usize, nu: usize },
    #[error("mu({0}) + nu({0}) > 1")]
    ConsistencyViolation(usize),
    #[error("subset is over a carrier of {got} elements, expected {expected}")]
    CarrierMismatch { expected: usize, got: usize },
    #[error("empty carrier")]
    EmptyCarrier,
}

/// `⟨μ, ν⟩` over a carrier `0..n` with `μ(x) + ν(x) <= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IFSubset {
    mu: Vec<TruthValue>,
    nu: Vec<TruthValue>,
}

impl IFSubset {
    pub fn new(carrier_size: usize, mu: Vec<TruthValue>, nu: Vec<TruthValue>) -> Result<Self, IfsError> {
        if carrier_size == 0 {
            return Err(IfsError::EmptyCarrier);
        }
        if mu.len() != carrier_size || nu.len() != carrier_size {
            return Err(IfsError::LengthMismatch { carrier: carrier_size, mu: mu.len(), nu: nu.len() });
        }
        if let Some(x) = (0..carrier_size).find(|&x| !mu[x].consistent_with(nu[x])) {
            return Err(IfsError::ConsistencyViolation(x));
        }
        Ok(IFSubset { mu, nu })
    }

    /// The whole carrier: `μ ≡ 1`, `ν ≡ 0`.
    pub fn total(n: usize) -> Self {
        IFSubset { mu: vec![TruthValue::ONE; n], nu: vec![TruthValue::ZERO; n] }
    }

    /// Crisp set with `ν = 1 - μ`.
    pub fn crisp(n: usize, members: &[usize]) -> Self {
        let mut mu = vec![TruthValue::ZERO; n];
        for &x in members {
            mu[x] = TruthValue::ONE;
        }
        let nu = mu.iter().map(|m| m.complement()).collect();
        IFSubset { mu, nu }
    }

    pub fn carrier_size(&self) -> usize {
        self.mu.len()
    }

    #[inline]
    pub fn mu(&self, x: usize) -> TruthValue {
        self.mu[x]
    }

    #[inline]
    pub fn nu(&self, x: usize) -> TruthValue {
        self.nu[x]
    }

    pub fn mu_values(&self) -> &[TruthValue] {
        &self.mu
    }

    pub fn nu_values(&self) -> &[TruthValue] {
        &self.nu
    }

    pub fn is_crisp(&self) -> bool {
        self.mu.iter().chain(&self.nu).all(TruthValue::is_crisp)
    }

    pub fn to_doc(&self, carrier: CarrierKind) -> IfsDoc {
        IfsDoc { carrier, mu: self.mu.clone(), nu: self.nu.clone() }
    }

    pub fn from_doc(doc: &IfsDoc) -> Result<Self, IfsError> {
        Self::new(doc.mu.len(), doc.mu.clone(), doc.nu.clone())
    }

    fn check_carrier(&self, g: &FiniteGroup) -> Result<(), IfsError> {
        if self.carrier_size() != g.order() {
            return Err(IfsError::CarrierMismatch { expected: g.order(), got: self.carrier_size() });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum CarrierKind {
    #[default]
    Group,
    Transitions,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IfsDoc {
    #[serde(default)]
    pub carrier: CarrierKind,
    pub mu: Vec<TruthValue>,
    pub nu: Vec<TruthValue>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupDegrees {
    pub closure_mu: TruthValue,
    pub inverse_mu: TruthValue,
    pub closure_nu: TruthValue,
    pub inverse_nu: TruthValue,
    pub overall: TruthValue,
}

pub const CLOSURE_MU: &str = "closure-mu";
pub const INVERSE_MU: &str = "inverse-mu";
pub const CLOSURE_NU: &str = "closure-nu";
pub const INVERSE_NU: &str = "inverse-nu";
pub const NORMAL_MU: &str = "normal-mu";
pub const NORMAL_NU: &str = "normal-nu";
pub const IDENTITY_MU: &str = "identity-mu";
pub const IDENTITY_NU: &str = "identity-nu";

fn base_conventions(imp: Implication) -> Vec<&'static str> {
    let logic = match imp {
        Implication::Lukasiewicz => conventions::LUKASIEWICZ,
        Implication::Goedel => conventions::GOEDEL,
    };
    vec![logic, conventions::DUAL_NU]
}

/// Subgroup conditions: `μξ ∧ μψ → μ(ξψ)`, `μξ → μ(ξ⁻¹)`,
/// `ν(ξψ) → νξ ∨ νψ`, `ν(ξ⁻¹) → νξ`.
pub fn subgroup_report_with(g: &FiniteGroup, s: &IFSubset, imp: Implication) -> Result<DegreeReport, IfsError> {
    s.check_carrier(g)?;
    let mut closure_mu = Scan::new(CLOSURE_MU, imp);
    let mut closure_nu = Scan::new(CLOSURE_NU, imp);
    let mut inverse_mu = Scan::new(INVERSE_MU, imp);
    let mut inverse_nu = Scan::new(INVERSE_NU, imp);
    let pair = |x, y| move || vec![Binding::state("xi", x), Binding::state("psi", y)];
    for x in g.elements() {
        for y in g.elements() {
            let xy = g.op(x, y);
            closure_mu.observe(s.mu(x).min(s.mu(y)), s.mu(xy), pair(x, y));
            closure_nu.observe(s.nu(xy), s.nu(x).max(s.nu(y)), pair(x, y));
        }
    }
    for x in g.elements() {
        let xi = g.inv(x);
        inverse_mu.observe(s.mu(x), s.mu(xi), || vec![Binding::state("xi", x)]);
        inverse_nu.observe(s.nu(xi), s.nu(x), || vec![Binding::state("xi", x)]);
    }
    let mut r = DegreeReport::new(&base_conventions(imp));
    for scan in [closure_mu, inverse_mu, closure_nu, inverse_nu] {
        r.push_scan(scan);
    }
    Ok(r)
}

pub fn subgroup_report(g: &FiniteGroup, s: &IFSubset) -> Result<DegreeReport, IfsError> {
    subgroup_report_with(g, s, Implication::Lukasiewicz)
}

pub fn subgroup_degree(g: &FiniteGroup, s: &IFSubset) -> Result<SubgroupDegrees, IfsError> {
    let r = subgroup_report(g, s)?;
    let d = |l| r.degree(l).expect("condition present");
    Ok(SubgroupDegrees {
        closure_mu: d(CLOSURE_MU),
        inverse_mu: d(INVERSE_MU),
        closure_nu: d(CLOSURE_NU),
        inverse_nu: d(INVERSE_NU),
        overall: r.overall,
    })
}

/// Normality: `μ(ξψ) → μ(ψξ)` and `ν(ψξ) → ν(ξψ)` for all pairs.
pub fn normal_report_with(g: &FiniteGroup, s: &IFSubset, imp: Implication) -> Result<DegreeReport, IfsError> {
    s.check_carrier(g)?;
    let mut mu = Scan::new(NORMAL_MU, imp);
    let mut nu = Scan::new(NORMAL_NU, imp);
    for x in g.elements() {
        for y in g.elements() {
            let (xy, yx) = (g.op(x, y), g.op(y, x));
            let b = || vec![Binding::state("xi", x), Binding::state("psi", y)];
            mu.observe(s.mu(xy), s.mu(yx), b);
            nu.observe(s.nu(yx), s.nu(xy), b);
        }
    }
    let mut r = DegreeReport::new(&base_conventions(imp));
    r.push_scan(mu);
    r.push_scan(nu);
    Ok(r)
}

pub fn normal_report(g: &FiniteGroup, s: &IFSubset) -> Result<DegreeReport, IfsError> {
    normal_report_with(g, s, Implication::Lukasiewicz)
}

pub fn normal_degree(g: &FiniteGroup, s: &IFSubset) -> Result<TruthValue, IfsError> {
    Ok(normal_report(g, s)?.overall)
}

/// Identity condition: `μξ → μ(ε)` and `ν(ε) → νξ`.
pub fn identity_report_with(g: &FiniteGroup, s: &IFSubset, imp: Implication) -> Result<DegreeReport, IfsError> {
    s.check_carrier(g)?;
    let e = g.identity();
    let mut mu = Scan::new(IDENTITY_MU, imp);
    let mut nu = Scan::new(IDENTITY_NU, imp);
    for x in g.elements() {
        mu.observe(s.mu(x), s.mu(e), || vec![Binding::state("xi", x)]);
        nu.observe(s.nu(e), s.nu(x), || vec![Binding::state("xi", x)]);
    }
    let mut r = DegreeReport::new(&base_conventions(imp));
    r.push_scan(mu);
    r.push_scan(nu);
    Ok(r)
}

pub fn identity_report(g: &FiniteGroup, s: &IFSubset) -> Result<DegreeReport, IfsError> {
    identity_report_with(g, s, Implication::Lukasiewicz)
}

pub fn identity_condition_degree(g: &FiniteGroup, s: &IFSubset) -> Result<TruthValue, IfsError> {
    Ok(identity_report(g, s)?.overall)
}

/// Image under `f`: fiberwise `max μ` and `min ν`; elements of the target
/// outside `f(source)` get `μ = 0`, `ν = 1`.
pub fn hom_image(f: &GroupHomomorphism, s: &IFSubset) -> Result<IFSubset, IfsError> {
    s.check_carrier(f.source())?;
    let n = f.target().order();
    let mut mu = vec![TruthValue::ZERO; n];
    let mut nu = vec![TruthValue::ONE; n];
    for x in f.source().elements() {
        let y = f.apply(x);
        mu[y] = mu[y].max(s.mu(x));
        nu[y] = nu[y].min(s.nu(x));
    }
    Ok(IFSubset { mu, nu })
}

/// Pre-image under `f`: `μ_A(ξ) = μ_B(f(ξ))`, likewise for `ν`.
pub fn hom_preimage(f: &GroupHomomorphism, s: &IFSubset) -> Result<IFSubset, IfsError> {
    s.check_carrier(f.target())?;
    let (mu, nu) = f.source().elements().map(|x| (s.mu(f.apply(x)), s.nu(f.apply(x)))).unzip();
    Ok(IFSubset { mu, nu })
}
