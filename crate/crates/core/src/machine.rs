//! Implication-based intuitionistic fuzzy semiautomata over a finite group
//! and the extension of their transitions from letters to words.
//!
//! Letter `ξ` carries a pair of `n x n` matrices `(A_ξ, B_ξ)`, row = source
//! state, column = target state. Words extend by max-min composition on `A`
//! and min-max composition on `B`; the empty word maps to the neutral pair
//! (identity matrix for `A`, its complement for `B`).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{FiniteGroup, GroupError, GroupSpec};
use crate::ifs::{subgroup_report_with, IFSubset};
use crate::report::{conventions, Binding, DegreeReport, Scan};
use crate::truthval::{Implication, TruthError, TruthValue};

/// Default bound on word length in exhaustive checks.
pub const DEFAULT_MAX_LEN: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MachineError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("A({alpha},{letter},{beta}) + B({alpha},{letter},{beta}) > 1")]
    ConsistencyViolation { alpha: usize, letter: String, beta: usize },
    #[error("lambda {0} outside (0,1]")]
    LambdaOutOfRange(TruthValue),
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("unknown state {0:?}")]
    UnknownState(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Truth(#[from] TruthError),
}

/// Square matrix of truth values, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    data: Vec<TruthValue>,
}

impl Matrix {
    pub fn filled(n: usize, v: TruthValue) -> Self {
        Matrix { n, data: vec![v; n * n] }
    }

    /// `on` on the diagonal, `off` elsewhere.
    pub fn diagonal(n: usize, on: TruthValue, off: TruthValue) -> Self {
        let data = (0..n * n).map(|i| if i / n == i % n { on } else { off }).collect();
        Matrix { n, data }
    }

    pub fn from_rows(rows: &[Vec<TruthValue>]) -> Result<Self, MachineError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(MachineError::ShapeMismatch(format!("row {i} has {} entries, expected {n}", r.len())));
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix { n, data })
    }

    pub fn from_fn<F: FnMut(usize, usize) -> TruthValue>(n: usize, mut f: F) -> Self {
        let data = (0..n * n).map(|i| f(i / n, i % n)).collect();
        Matrix { n, data }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> Vec<Vec<TruthValue>> {
        self.data.chunks(self.n).map(<[TruthValue]>::to_vec).collect()
    }

    pub fn values(&self) -> &[TruthValue] {
        &self.data
    }

    pub fn set(&mut self, r: usize, c: usize, v: TruthValue) {
        self.data[r * self.n + c] = v;
    }

    /// `(r, c) -> max_k min(self[r,k], other[k,c])`.
    pub fn max_min(&self, other: &Matrix) -> Matrix {
        let n = self.n;
        Matrix::from_fn(n, |r, c| (0..n).map(|k| self[(r, k)].min(other[(k, c)])).max().unwrap_or(TruthValue::ZERO))
    }

    /// `(r, c) -> min_k max(self[r,k], other[k,c])`.
    pub fn min_max(&self, other: &Matrix) -> Matrix {
        let n = self.n;
        Matrix::from_fn(n, |r, c| (0..n).map(|k| self[(r, k)].max(other[(k, c)])).min().unwrap_or(TruthValue::ONE))
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = TruthValue;

    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &TruthValue {
        &self.data[r * self.n + c]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(TruthValue::to_string).collect();
        let w = cells.iter().map(String::len).max().unwrap_or(1);
        for row in cells.chunks(self.n) {
            let padded: Vec<String> = row.iter().map(|c| format!("{c:>w$}")).collect();
            writeln!(f, "[{}]", padded.join(" "))?;
        }
        Ok(())
    }
}

/// A finite sequence of alphabet indices; empty is the empty word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[usize] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

/// `(A*, B*)` for one word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionMatrixPair {
    pub a_star: Matrix,
    pub b_star: Matrix,
    pub word: Word,
}

impl TransitionMatrixPair {
    pub fn size(&self) -> usize {
        self.a_star.size()
    }

    /// First entry where `a_star + b_star > 1`.
    pub fn consistency_violation(&self) -> Option<(usize, usize)> {
        let n = self.size();
        (0..n)
            .flat_map(|r| (0..n).map(move |c| (r, c)))
            .find(|&(r, c)| !self.a_star[(r, c)].consistent_with(self.b_star[(r, c)]))
    }
}

/// How two transition pairs are composed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Composition {
    /// Max-min on `A`, min-max on `B`.
    #[default]
    Exact,
    /// Negative control: drops the inner conjunction (max-max on `A`,
    /// min-min on `B`).
    Corrupted,
}

impl Composition {
    pub fn apply(
        self,
        p: &TransitionMatrixPair,
        q: &TransitionMatrixPair,
    ) -> Result<TransitionMatrixPair, MachineError> {
        if p.size() != q.size() {
            return Err(MachineError::ShapeMismatch(format!(
                "cannot compose {}x{} with {}x{}",
                p.size(),
                p.size(),
                q.size(),
                q.size()
            )));
        }
        let (a_star, b_star) = match self {
            Composition::Exact => (p.a_star.max_min(&q.a_star), p.b_star.min_max(&q.b_star)),
            Composition::Corrupted => {
                let n = p.size();
                let a =
                    Matrix::from_fn(n, |r, c| (0..n).map(|k| p.a_star[(r, k)].max(q.a_star[(k, c)])).max().unwrap());
                let b =
                    Matrix::from_fn(n, |r, c| (0..n).map(|k| p.b_star[(r, k)].min(q.b_star[(k, c)])).min().unwrap());
                (a, b)
            }
        };
        Ok(TransitionMatrixPair { a_star, b_star, word: p.word.concat(&q.word) })
    }
}

pub fn compose(p: &TransitionMatrixPair, q: &TransitionMatrixPair) -> Result<TransitionMatrixPair, MachineError> {
    Composition::Exact.apply(p, q)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StructureMode {
    /// Each letter's `⟨A_ξ, B_ξ⟩` must be a fuzzy subgroup of `Ω × Ω`.
    #[default]
    ProductSubgroup,
    None,
}

impl StructureMode {
    pub fn convention(self) -> &'static str {
        match self {
            StructureMode::ProductSubgroup => conventions::STRUCTURE_PRODUCT,
            StructureMode::None => conventions::STRUCTURE_NONE,
        }
    }
}

impl std::str::FromStr for StructureMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "product-subgroup" => Ok(StructureMode::ProductSubgroup),
            "none" => Ok(StructureMode::None),
            other => Err(format!("unknown structure mode {other:?} (product-subgroup|none)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Machine {
    group: FiniteGroup,
    alphabet: Vec<String>,
    a: Vec<Matrix>,
    b: Vec<Matrix>,
    lambda: TruthValue,
    structure: StructureMode,
}

impl Machine {
    /// Checks shapes, `λ ∈ (0,1]` and `A + B <= 1` entrywise.
    pub fn new(
        group: FiniteGroup,
        alphabet: Vec<String>,
        a: Vec<Matrix>,
        b: Vec<Matrix>,
        lambda: TruthValue,
        structure: StructureMode,
    ) -> Result<Self, MachineError> {
        let n = group.order();
        if alphabet.is_empty() {
            return Err(MachineError::ShapeMismatch("alphabet is empty".into()));
        }
        for (i, s) in alphabet.iter().enumerate() {
            if s.is_empty() || s.chars().any(char::is_whitespace) {
                return Err(MachineError::ShapeMismatch(format!("symbol {s:?} is empty or contains whitespace")));
            }
            if alphabet[..i].contains(s) {
                return Err(MachineError::ShapeMismatch(format!("duplicate symbol {s:?}")));
            }
        }
        if a.len() != alphabet.len() || b.len() != alphabet.len() {
            return Err(MachineError::ShapeMismatch(format!(
                "{} symbols but {} mu and {} nu matrices",
                alphabet.len(),
                a.len(),
                b.len()
            )));
        }
        for (l, m) in a.iter().chain(&b).enumerate() {
            if m.size() != n {
                let sym = &alphabet[l % alphabet.len()];
                return Err(MachineError::ShapeMismatch(format!(
                    "matrix for {sym:?} is {0}x{0}, group order is {n}",
                    m.size()
                )));
            }
        }
        if lambda.is_zero() {
            return Err(MachineError::LambdaOutOfRange(lambda));
        }
        for l in 0..alphabet.len() {
            for alpha in 0..n {
                for beta in 0..n {
                    if !a[l][(alpha, beta)].consistent_with(b[l][(alpha, beta)]) {
                        return Err(MachineError::ConsistencyViolation { alpha, letter: alphabet[l].clone(), beta });
                    }
                }
            }
        }
        Ok(Machine { group, alphabet, a, b, lambda, structure })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn states(&self) -> usize {
        self.group.order()
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn lambda(&self) -> TruthValue {
        self.lambda
    }

    pub fn structure(&self) -> StructureMode {
        self.structure
    }

    #[inline]
    pub fn a(&self, alpha: usize, letter: usize, beta: usize) -> TruthValue {
        self.a[letter][(alpha, beta)]
    }

    #[inline]
    pub fn b(&self, alpha: usize, letter: usize, beta: usize) -> TruthValue {
        self.b[letter][(alpha, beta)]
    }

    pub fn a_matrix(&self, letter: usize) -> &Matrix {
        &self.a[letter]
    }

    pub fn b_matrix(&self, letter: usize) -> &Matrix {
        &self.b[letter]
    }

    pub fn letter_pair(&self, letter: usize) -> TransitionMatrixPair {
        TransitionMatrixPair {
            a_star: self.a[letter].clone(),
            b_star: self.b[letter].clone(),
            word: Word(vec![letter]),
        }
    }

    pub fn symbol(&self, name: &str) -> Result<usize, MachineError> {
        self.alphabet.iter().position(|s| s == name).ok_or_else(|| MachineError::UnknownSymbol(name.to_string()))
    }

    pub fn state(&self, key: &str) -> Result<usize, MachineError> {
        self.group.element(key).map_err(|_| MachineError::UnknownState(key.to_string()))
    }

    /// Whitespace-separated symbols; the empty string is the empty word.
    pub fn parse_word(&self, s: &str) -> Result<Word, MachineError> {
        s.split_whitespace().map(|t| self.symbol(t)).collect::<Result<_, _>>().map(Word)
    }

    pub fn check_word(&self, w: &Word) -> Result<(), MachineError> {
        match w.0.iter().find(|&&l| l >= self.alphabet.len()) {
            Some(l) => Err(MachineError::UnknownSymbol(format!("#{l}"))),
            None => Ok(()),
        }
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "0".into();
        }
        w.0.iter().map(|&l| self.alphabet[l].as_str()).collect::<Vec<_>>().join(" ")
    }

    /// The neutral pair assigned to the empty word.
    pub fn empty_word_matrices(&self) -> TransitionMatrixPair {
        let n = self.states();
        TransitionMatrixPair {
            a_star: Matrix::diagonal(n, TruthValue::ONE, TruthValue::ZERO),
            b_star: Matrix::diagonal(n, TruthValue::ZERO, TruthValue::ONE),
            word: Word::empty(),
        }
    }

    /// Left fold of composition over the letters of `w`, uncached.
    pub fn extend_word(&self, w: &Word) -> Result<TransitionMatrixPair, MachineError> {
        self.extend_word_with(w, Composition::Exact)
    }

    pub fn extend_word_with(&self, w: &Word, comp: Composition) -> Result<TransitionMatrixPair, MachineError> {
        self.check_word(w)?;
        w.0.iter().try_fold(self.empty_word_matrices(), |acc, &l| comp.apply(&acc, &self.letter_pair(l)))
    }

    /// `(A*(start, w, end), B*(start, w, end))`.
    pub fn run_degree(&self, start: usize, w: &Word, end: usize) -> Result<(TruthValue, TruthValue), MachineError> {
        let n = self.states();
        for s in [start, end] {
            if s >= n {
                return Err(MachineError::UnknownState(s.to_string()));
            }
        }
        let p = self.extend_word(w)?;
        Ok((p.a_star[(start, end)], p.b_star[(start, end)]))
    }

    /// All words of length `<= max_len` in shortlex order.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        let k = self.alphabet.len();
        let mut out = vec![Word::empty()];
        let mut start = 0;
        for _ in 0..max_len {
            let end = out.len();
            for i in start..end {
                for l in 0..k {
                    let mut w = out[i].0.clone();
                    w.push(l);
                    out.push(Word(w));
                }
            }
            start = end;
        }
        out
    }

    /// Product-subgroup degrees of every letter, computed on `Ω × Ω`.
    pub fn structure_report(&self) -> DegreeReport {
        let pairs = self.group.product_unchecked(&self.group);
        self.structure_report_in(&pairs, Implication::Lukasiewicz)
    }

    /// As [`Machine::structure_report`] with a precomputed `Ω × Ω`.
    pub fn structure_report_in(&self, pairs: &FiniteGroup, imp: Implication) -> DegreeReport {
        let mut r =
            DegreeReport::new(&[conventions::LUKASIEWICZ, conventions::DUAL_NU, conventions::STRUCTURE_PRODUCT]);
        for l in 0..self.alphabet.len() {
            let s = IFSubset::new(pairs.order(), self.a[l].values().to_vec(), self.b[l].values().to_vec())
                .expect("validated machine is consistent");
            let sub = subgroup_report_with(pairs, &s, imp).expect("carrier is Ω×Ω");
            r.absorb(&format!("structure[{}].", self.alphabet[l]), sub);
        }
        r
    }

    pub fn to_doc(&self) -> MachineDoc {
        let by_symbol = |ms: &[Matrix]| self.alphabet.iter().cloned().zip(ms.iter().map(Matrix::rows)).collect();
        MachineDoc {
            group: GroupSpec::of(&self.group),
            alphabet: self.alphabet.clone(),
            lambda: self.lambda,
            mu: by_symbol(&self.a),
            nu: by_symbol(&self.b),
            structure: self.structure,
        }
    }

    /// Builds the machine without the structural check.
    pub fn from_doc(doc: &MachineDoc) -> Result<Self, MachineError> {
        let group = doc.group.resolve()?;
        let lookup = |m: &BTreeMap<String, Vec<Vec<TruthValue>>>, which: &str| {
            doc.alphabet
                .iter()
                .map(|s| {
                    let rows =
                        m.get(s).ok_or_else(|| MachineError::ShapeMismatch(format!("no {which} matrix for {s:?}")))?;
                    Matrix::from_rows(rows)
                })
                .collect::<Result<Vec<_>, _>>()
        };
        for key in doc.mu.keys().chain(doc.nu.keys()) {
            if !doc.alphabet.contains(key) {
                return Err(MachineError::UnknownSymbol(key.clone()));
            }
        }
        let a = lookup(&doc.mu, "mu")?;
        let b = lookup(&doc.nu, "nu")?;
        Machine::new(group, doc.alphabet.clone(), a, b, doc.lambda, doc.structure)
    }
}

/// Validates a machine and reports its structural degrees. Under
/// `StructureMode::None` only the consistency check runs.
pub fn validate_machine(
    group: FiniteGroup,
    alphabet: Vec<String>,
    a: Vec<Matrix>,
    b: Vec<Matrix>,
    lambda: TruthValue,
    structure: StructureMode,
) -> Result<(Machine, DegreeReport), MachineError> {
    let m = Machine::new(group, alphabet, a, b, lambda, structure)?;
    let report = structural_report(&m);
    Ok((m, report))
}

pub fn structural_report(m: &Machine) -> DegreeReport {
    match m.structure {
        StructureMode::ProductSubgroup => m.structure_report(),
        StructureMode::None => {
            let mut r = DegreeReport::new(&[conventions::LUKASIEWICZ, conventions::STRUCTURE_NONE]);
            r.push("consistency", TruthValue::ONE, None);
            r
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MachineDoc {
    pub group: GroupSpec,
    pub alphabet: Vec<String>,
    pub lambda: TruthValue,
    pub mu: BTreeMap<String, Vec<Vec<TruthValue>>>,
    pub nu: BTreeMap<String, Vec<Vec<TruthValue>>>,
    #[serde(default)]
    pub structure: StructureMode,
}

/// Memoizing word extension for one machine. Each worker owns its own.
#[derive(Debug)]
pub struct Extender<'m> {
    machine: &'m Machine,
    composition: Composition,
    cache: HashMap<Word, TransitionMatrixPair>,
}

impl<'m> Extender<'m> {
    pub fn new(machine: &'m Machine) -> Self {
        Self::with_composition(machine, Composition::Exact)
    }

    pub fn with_composition(machine: &'m Machine, composition: Composition) -> Self {
        Extender { machine, composition, cache: HashMap::new() }
    }

    pub fn machine(&self) -> &'m Machine {
        self.machine
    }

    pub fn extend(&mut self, w: &Word) -> Result<&TransitionMatrixPair, MachineError> {
        self.machine.check_word(w)?;
        self.fill(w);
        Ok(&self.cache[w])
    }

    fn fill(&mut self, w: &Word) {
        if self.cache.contains_key(w) {
            return;
        }
        let pair = match w.0.split_last() {
            None => self.machine.empty_word_matrices(),
            Some((&last, prefix)) => {
                let prefix = Word(prefix.to_vec());
                self.fill(&prefix);
                self.composition.apply(&self.cache[&prefix], &self.machine.letter_pair(last)).expect("same machine")
            }
        };
        self.cache.insert(w.clone(), pair);
    }

    /// Extensions of every word of length `<= max_len`, shortlex order.
    pub fn all_up_to(&mut self, max_len: usize) -> Vec<TransitionMatrixPair> {
        self.machine
            .words_up_to(max_len)
            .iter()
            .map(|w| {
                self.fill(w);
                self.cache[w].clone()
            })
            .collect()
    }
}

pub const CONCAT_A: &str = "concat-a";
pub const CONCAT_A_CONVERSE: &str = "concat-a-converse";
pub const CONCAT_B: &str = "concat-b";
pub const CONCAT_B_CONVERSE: &str = "concat-b-converse";

/// Checks that extending `ξ⊙ψ` letter by letter agrees with composing the
/// extensions of `ξ` and `ψ`, for every split with `|ξ| + |ψ| <= max_len`.
///
/// Equality is expressed as implications in both directions, so every
/// condition has degree 1 exactly when all entries agree.
pub fn concat_equality_check(m: &Machine, max_len: usize) -> DegreeReport {
    concat_equality_check_with(m, max_len, Composition::Exact)
}

/// `split_product` composes the two halves; the left fold always uses the
/// exact composition.
pub fn concat_equality_check_with(m: &Machine, max_len: usize, split_product: Composition) -> DegreeReport {
    let mut ext = Extender::new(m);
    let words = m.words_up_to(max_len);
    let pairs = ext.all_up_to(max_len);
    let index: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let n = m.states();
    let imp = Implication::Lukasiewicz;
    let mut fwd_a = Scan::new(CONCAT_A, imp);
    let mut rev_a = Scan::new(CONCAT_A_CONVERSE, imp);
    let mut fwd_b = Scan::new(CONCAT_B, imp);
    let mut rev_b = Scan::new(CONCAT_B_CONVERSE, imp);
    for (i, xi) in words.iter().enumerate() {
        for (j, psi) in words.iter().enumerate() {
            if xi.len() + psi.len() > max_len {
                continue;
            }
            let joined = &pairs[index[&xi.concat(psi)]];
            let product = split_product.apply(&pairs[i], &pairs[j]).expect("same machine");
            for beta in 0..n {
                for alpha in 0..n {
                    let b = || {
                        vec![
                            Binding::state("beta", beta),
                            Binding::word("xi", &xi.0),
                            Binding::word("psi", &psi.0),
                            Binding::state("alpha", alpha),
                        ]
                    };
                    let (pa, ja) = (product.a_star[(beta, alpha)], joined.a_star[(beta, alpha)]);
                    let (pb, jb) = (product.b_star[(beta, alpha)], joined.b_star[(beta, alpha)]);
                    fwd_a.observe(pa, ja, b);
                    rev_a.observe(ja, pa, b);
                    fwd_b.observe(pb, jb, b);
                    rev_b.observe(jb, pb, b);
                }
            }
        }
    }
    let mut r = DegreeReport::new(&[conventions::LUKASIEWICZ, conventions::EMPTY_WORD_IDENTITY]);
    for s in [fwd_a, rev_a, fwd_b, rev_b] {
        r.push_scan(s);
    }
    r
}
