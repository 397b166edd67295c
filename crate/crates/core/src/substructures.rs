//! Graded subsemiautomaton and kernel conditions for a fuzzy subset of the
//! states, their word-extended forms, and the identity-state conditions.
//!
//! Condition labels are stable and double as replay keys:
//!
//! | label            | instantiation                  | implication |
//! |------------------|--------------------------------|-------------|
//! | `subsemi.ii`     | letter, alpha, beta            | `A(α,ξ,β) ∧ μ̄α → μ̄β` |
//! | `subsemi.iii`    | letter, alpha, beta            | `ν̄β → B(α,ξ,β) ∨ ν̄α` |
//! | `kernel.ii`      | letter, alpha, beta, gamma, kappa | `A(βκ,ξ,α) ∧ A(β,ξ,γ) ∧ μ̄κ → μ̄(αγ⁻¹)` |
//! | `kernel.iii`     | letter, alpha, beta, gamma, kappa | `ν̄(αγ⁻¹) → B(βκ,ξ,α) ∨ B(β,ξ,γ) ∨ ν̄κ` |
//! | `epsilon.i`      | letter, alpha                  | `A(ε,ξ,α) ∧ μ̄ε → μ̄α` |
//! | `epsilon.ii`     | letter, alpha                  | `ν̄α → B(ε,ξ,α) ∨ ν̄ε` |
//!
//! The starred families `subsemi*.ii` etc. replace the letter by a word and
//! the letter matrices by the extended ones.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ifs::{normal_report_with, subgroup_report_with, IFSubset, IfsError};
use crate::machine::{Composition, Extender, Machine, MachineError, Matrix, TransitionMatrixPair, Word};
use crate::report::{conventions, Binding, BoundValue, DegreeReport, Scan, Witness};
use crate::truthval::{holds_at, Implication, TruthValue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubstructureError {
    #[error(transparent)]
    Ifs(#[from] IfsError),
    #[error(transparent)]
    Machine(#[from] MachineError),
    #[error("cannot replay witness: {0}")]
    Replay(String),
}

pub const SUBSEMI_II: &str = "subsemi.ii";
pub const SUBSEMI_III: &str = "subsemi.iii";
pub const KERNEL_II: &str = "kernel.ii";
pub const KERNEL_III: &str = "kernel.iii";
pub const SUBSEMI_STAR_II: &str = "subsemi*.ii";
pub const SUBSEMI_STAR_III: &str = "subsemi*.iii";
pub const KERNEL_STAR_II: &str = "kernel*.ii";
pub const KERNEL_STAR_III: &str = "kernel*.iii";
pub const EPSILON_I: &str = "epsilon.i";
pub const EPSILON_II: &str = "epsilon.ii";

/// Evaluation settings shared by every checker in this module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Evaluator {
    pub implication: Implication,
    /// Used when extending words; `Corrupted` only for negative controls.
    pub composition: Composition,
}

impl Evaluator {
    pub fn mutated() -> Self {
        Evaluator { composition: Composition::Corrupted, ..Default::default() }
    }

    fn conventions(&self, m: &Machine) -> Vec<&'static str> {
        let logic = match self.implication {
            Implication::Lukasiewicz => conventions::LUKASIEWICZ,
            Implication::Goedel => conventions::GOEDEL,
        };
        vec![logic, conventions::DUAL_NU, conventions::EMPTY_WORD_IDENTITY, m.structure().convention()]
    }

    fn check(&self, m: &Machine, s: &IFSubset) -> Result<(), IfsError> {
        if s.carrier_size() != m.states() {
            return Err(IfsError::CarrierMismatch { expected: m.states(), got: s.carrier_size() });
        }
        Ok(())
    }

    pub fn subsemi(&self, m: &Machine, s: &IFSubset) -> Result<DegreeReport, IfsError> {
        self.check(m, s)?;
        let mut r = DegreeReport::new(&self.conventions(m));
        r.absorb("subsemi.i.", subgroup_report_with(m.group(), s, self.implication)?);
        let letters: Vec<_> = (0..m.alphabet().len()).map(|l| Step::Letter(l, m)).collect();
        let (ii, iii) = self.subsemi_scan(m, s, &letters, SUBSEMI_II, SUBSEMI_III);
        r.push_scan(ii);
        r.push_scan(iii);
        Ok(r)
    }

    pub fn subsemi_star(&self, m: &Machine, s: &IFSubset, max_len: usize) -> Result<DegreeReport, IfsError> {
        self.check(m, s)?;
        let pairs = Extender::with_composition(m, self.composition).all_up_to(max_len);
        let steps: Vec<_> = pairs.iter().map(Step::Word).collect();
        let (ii, iii) = self.subsemi_scan(m, s, &steps, SUBSEMI_STAR_II, SUBSEMI_STAR_III);
        let mut r = DegreeReport::new(&self.conventions(m));
        r.push_scan(ii);
        r.push_scan(iii);
        Ok(r)
    }

    fn subsemi_scan(&self, m: &Machine, s: &IFSubset, steps: &[Step<'_>], l2: &str, l3: &str) -> (Scan, Scan) {
        let n = m.states();
        let mut ii = Scan::new(l2, self.implication);
        let mut iii = Scan::new(l3, self.implication);
        for step in steps {
            let (a, b) = step.matrices();
            for alpha in 0..n {
                for beta in 0..n {
                    let bind = || vec![step.binding(), Binding::state("alpha", alpha), Binding::state("beta", beta)];
                    ii.observe(a[(alpha, beta)].min(s.mu(alpha)), s.mu(beta), bind);
                    iii.observe(s.nu(beta), b[(alpha, beta)].max(s.nu(alpha)), bind);
                }
            }
        }
        (ii, iii)
    }

    pub fn kernel(&self, m: &Machine, s: &IFSubset) -> Result<DegreeReport, IfsError> {
        self.check(m, s)?;
        let mut r = DegreeReport::new(&self.conventions(m));
        r.absorb("kernel.i.", subgroup_report_with(m.group(), s, self.implication)?);
        r.absorb("kernel.i.", normal_report_with(m.group(), s, self.implication)?);
        let letters: Vec<_> = (0..m.alphabet().len()).map(|l| Step::Letter(l, m)).collect();
        let (ii, iii) = self.kernel_scan(m, s, &letters, KERNEL_II, KERNEL_III);
        r.push_scan(ii);
        r.push_scan(iii);
        Ok(r)
    }

    pub fn kernel_star(&self, m: &Machine, s: &IFSubset, max_len: usize) -> Result<DegreeReport, IfsError> {
        self.check(m, s)?;
        let pairs = Extender::with_composition(m, self.composition).all_up_to(max_len);
        let steps: Vec<_> = pairs.iter().map(Step::Word).collect();
        let (ii, iii) = self.kernel_scan(m, s, &steps, KERNEL_STAR_II, KERNEL_STAR_III);
        let mut r = DegreeReport::new(&self.conventions(m));
        r.push_scan(ii);
        r.push_scan(iii);
        Ok(r)
    }

    fn kernel_scan(&self, m: &Machine, s: &IFSubset, steps: &[Step<'_>], l2: &str, l3: &str) -> (Scan, Scan) {
        let g = m.group();
        let n = m.states();
        let mut ii = Scan::new(l2, self.implication);
        let mut iii = Scan::new(l3, self.implication);
        for step in steps {
            let (a, b) = step.matrices();
            for alpha in 0..n {
                for beta in 0..n {
                    for gamma in 0..n {
                        let diff = g.op(alpha, g.inv(gamma));
                        let a_right = a[(beta, gamma)];
                        let b_right = b[(beta, gamma)];
                        for kappa in 0..n {
                            let bk = g.op(beta, kappa);
                            let bind = || {
                                vec![
                                    step.binding(),
                                    Binding::state("alpha", alpha),
                                    Binding::state("beta", beta),
                                    Binding::state("gamma", gamma),
                                    Binding::state("kappa", kappa),
                                ]
                            };
                            let ante = a[(bk, alpha)].min(a_right).min(s.mu(kappa));
                            ii.observe(ante, s.mu(diff), bind);
                            let cons = b[(bk, alpha)].max(b_right).max(s.nu(kappa));
                            iii.observe(s.nu(diff), cons, bind);
                        }
                    }
                }
            }
        }
        (ii, iii)
    }

    pub fn kernel_epsilon(&self, m: &Machine, s: &IFSubset) -> Result<DegreeReport, IfsError> {
        self.check(m, s)?;
        let e = m.group().identity();
        let mut i = Scan::new(EPSILON_I, self.implication);
        let mut ii = Scan::new(EPSILON_II, self.implication);
        for l in 0..m.alphabet().len() {
            for alpha in m.group().elements() {
                let bind = || vec![Binding::letter("xi", l), Binding::state("alpha", alpha)];
                i.observe(m.a(e, l, alpha).min(s.mu(e)), s.mu(alpha), bind);
                ii.observe(s.nu(alpha), m.b(e, l, alpha).max(s.nu(e)), bind);
            }
        }
        let mut r = DegreeReport::new(&self.conventions(m));
        r.push_scan(i);
        r.push_scan(ii);
        Ok(r)
    }

    pub fn relation(
        &self,
        m: &Machine,
        s: &IFSubset,
        which: Relation,
        max_len: usize,
    ) -> Result<RelationVerdict, IfsError> {
        let ii_iii = |r: &DegreeReport| r.min_over(|l| l.ends_with(".ii") || l.ends_with(".iii"));
        let (claimed, observed, witnesses) = match which {
            Relation::SubsemiStar => {
                let single = self.subsemi(m, s)?;
                let star = self.subsemi_star(m, s, max_len)?;
                (single.overall, ii_iii(&star), star.witnesses)
            }
            Relation::KernelStar => {
                let single = self.kernel(m, s)?;
                let star = self.kernel_star(m, s, max_len)?;
                (single.overall, ii_iii(&star), star.witnesses)
            }
            Relation::KernelImpliesSubsemi => {
                let k = self.kernel(m, s)?;
                let eps = self.kernel_epsilon(m, s)?;
                let sub = self.subsemi(m, s)?;
                let ws = sub
                    .witnesses
                    .into_iter()
                    .filter(|w| w.condition == SUBSEMI_II || w.condition == SUBSEMI_III)
                    .collect();
                let observed =
                    sub.conditions.iter().filter(|(l, _)| l == SUBSEMI_II || l == SUBSEMI_III).map(|(_, d)| *d).min();
                (k.overall.min(eps.overall), observed.unwrap_or(TruthValue::ONE), ws)
            }
            Relation::SubsemiImpliesEpsilon => {
                let sub = self.subsemi(m, s)?;
                let eps = self.kernel_epsilon(m, s)?;
                let claimed = sub.min_over(|l| l == SUBSEMI_II || l == SUBSEMI_III);
                (claimed, eps.overall, eps.witnesses)
            }
        };
        let holds = holds_at(observed, claimed);
        let witnesses = if holds { Vec::new() } else { witnesses.into_iter().filter(|w| w.degree < claimed).collect() };
        Ok(RelationVerdict { relation: which, claimed, observed, holds, witnesses })
    }
}

/// One quantified transition step: a letter or an extended word.
enum Step<'a> {
    Letter(usize, &'a Machine),
    Word(&'a TransitionMatrixPair),
}

impl Step<'_> {
    fn matrices(&self) -> (&Matrix, &Matrix) {
        match self {
            Step::Letter(l, m) => (m.a_matrix(*l), m.b_matrix(*l)),
            Step::Word(p) => (&p.a_star, &p.b_star),
        }
    }

    fn binding(&self) -> Binding {
        match self {
            Step::Letter(l, _) => Binding::letter("xi", *l),
            Step::Word(p) => Binding::word("xi", &p.word.0),
        }
    }
}

pub fn subsemi_degree(m: &Machine, s: &IFSubset) -> Result<DegreeReport, IfsError> {
    Evaluator::default().subsemi(m, s)
}

pub fn kernel_degree(m: &Machine, s: &IFSubset) -> Result<DegreeReport, IfsError> {
    Evaluator::default().kernel(m, s)
}

pub fn subsemi_star_degree(m: &Machine, s: &IFSubset, max_len: usize) -> Result<DegreeReport, IfsError> {
    Evaluator::default().subsemi_star(m, s, max_len)
}

pub fn kernel_star_degree(m: &Machine, s: &IFSubset, max_len: usize) -> Result<DegreeReport, IfsError> {
    Evaluator::default().kernel_star(m, s, max_len)
}

pub fn kernel_epsilon_degree(m: &Machine, s: &IFSubset) -> Result<DegreeReport, IfsError> {
    Evaluator::default().kernel_epsilon(m, s)
}

pub fn theorem_relation_check(
    m: &Machine,
    s: &IFSubset,
    which: Relation,
    max_len: usize,
) -> Result<RelationVerdict, IfsError> {
    Evaluator::default().relation(m, s, which, max_len)
}

/// Orderings between degree aggregates that the theorems assert.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    /// Starred (ii)/(iii) at least the single-letter subsemiautomaton degree.
    SubsemiStar,
    /// Starred (ii)/(iii) at least the single-letter kernel degree.
    KernelStar,
    /// Subsemiautomaton (ii)/(iii) at least `min(kernel, ε-conditions)`.
    KernelImpliesSubsemi,
    /// ε-conditions at least subsemiautomaton (ii)/(iii).
    SubsemiImpliesEpsilon,
}

impl Relation {
    pub const ALL: [Relation; 4] =
        [Relation::SubsemiStar, Relation::KernelStar, Relation::KernelImpliesSubsemi, Relation::SubsemiImpliesEpsilon];
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::SubsemiStar => "subsemi-star",
            Relation::KernelStar => "kernel-star",
            Relation::KernelImpliesSubsemi => "kernel-implies-subsemi",
            Relation::SubsemiImpliesEpsilon => "subsemi-implies-epsilon",
        })
    }
}

impl std::str::FromStr for Relation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Relation::ALL.into_iter().find(|r| r.to_string() == s).ok_or_else(|| format!("unknown relation {s:?}"))
    }
}

/// `observed >= claimed`, with the witnesses that pull `observed` below.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationVerdict {
    pub relation: Relation,
    pub claimed: TruthValue,
    pub observed: TruthValue,
    pub holds: bool,
    pub witnesses: Vec<Witness>,
}

/// Re-evaluates a witness from scratch: letters are read from the machine,
/// words are extended by an uncached fold, and the implication is applied
/// directly. Returns `(antecedent, consequent, degree)`.
pub fn replay_witness(
    m: &Machine,
    s: &IFSubset,
    w: &Witness,
    ev: Evaluator,
) -> Result<(TruthValue, TruthValue, TruthValue), SubstructureError> {
    let g = m.group();
    let missing = |v: &str| SubstructureError::Replay(format!("{}: missing binding {v}", w.condition));
    let st = |v: &str| w.state(v).ok_or_else(|| missing(v));
    // Transition pair for the bound step, letter or word.
    let step = |star: bool| -> Result<TransitionMatrixPair, SubstructureError> {
        match (star, w.get("xi")) {
            (false, Some(BoundValue::Letter(l))) if *l < m.alphabet().len() => Ok(m.letter_pair(*l)),
            (true, Some(BoundValue::Word(v))) => Ok(m.extend_word_with(&Word(v.clone()), ev.composition)?),
            _ => Err(missing("xi")),
        }
    };
    let (ante, cons) = match w.condition.as_str() {
        SUBSEMI_II | SUBSEMI_STAR_II | SUBSEMI_III | SUBSEMI_STAR_III => {
            let p = step(w.condition.starts_with("subsemi*"))?;
            let (alpha, beta) = (st("alpha")?, st("beta")?);
            if w.condition.ends_with(".ii") {
                (p.a_star[(alpha, beta)].min(s.mu(alpha)), s.mu(beta))
            } else {
                (s.nu(beta), p.b_star[(alpha, beta)].max(s.nu(alpha)))
            }
        }
        KERNEL_II | KERNEL_STAR_II | KERNEL_III | KERNEL_STAR_III => {
            let p = step(w.condition.starts_with("kernel*"))?;
            let (alpha, beta, gamma, kappa) = (st("alpha")?, st("beta")?, st("gamma")?, st("kappa")?);
            let bk = g.op(beta, kappa);
            let diff = g.op(alpha, g.inv(gamma));
            if w.condition.ends_with(".ii") {
                let ante = p.a_star[(bk, alpha)].min(p.a_star[(beta, gamma)]).min(s.mu(kappa));
                (ante, s.mu(diff))
            } else {
                let cons = p.b_star[(bk, alpha)].max(p.b_star[(beta, gamma)]).max(s.nu(kappa));
                (s.nu(diff), cons)
            }
        }
        EPSILON_I | EPSILON_II => {
            let p = step(false)?;
            let e = g.identity();
            let alpha = st("alpha")?;
            if w.condition == EPSILON_I {
                (p.a_star[(e, alpha)].min(s.mu(e)), s.mu(alpha))
            } else {
                (s.nu(alpha), p.b_star[(e, alpha)].max(s.nu(e)))
            }
        }
        label => {
            let base = label.rsplit('.').next().unwrap_or(label);
            let xi = st("xi")?;
            match base {
                "closure-mu" | "closure-nu" => {
                    let psi = st("psi")?;
                    let xy = g.op(xi, psi);
                    if base == "closure-mu" {
                        (s.mu(xi).min(s.mu(psi)), s.mu(xy))
                    } else {
                        (s.nu(xy), s.nu(xi).max(s.nu(psi)))
                    }
                }
                "inverse-mu" => (s.mu(xi), s.mu(g.inv(xi))),
                "inverse-nu" => (s.nu(g.inv(xi)), s.nu(xi)),
                "normal-mu" | "normal-nu" => {
                    let psi = st("psi")?;
                    let (xy, yx) = (g.op(xi, psi), g.op(psi, xi));
                    if base == "normal-mu" {
                        (s.mu(xy), s.mu(yx))
                    } else {
                        (s.nu(yx), s.nu(xy))
                    }
                }
                "identity-mu" => (s.mu(xi), s.mu(g.identity())),
                "identity-nu" => (s.nu(g.identity()), s.nu(xi)),
                _ => return Err(SubstructureError::Replay(format!("unknown condition {label:?}"))),
            }
        }
    };
    Ok((ante, cons, ev.implication.apply(ante, cons)))
}
