//! Instance generation and counterexample search.
//!
//! Instances are `(Machine, IFSubset)` pairs drawn either from an exhaustive
//! grid of values `k/D` or from a seeded sampler. Both sources are random
//! access by instance index, so parallel evaluation partitions by index and
//! reports come out identical for any worker count.
//!
//! Each theorem id runs a fixed set of checks per instance. A failed check
//! is either a hard counterexample (a degree-1 claim or an exact equality
//! that must hold) or a finding (an ordering between fractional degrees
//! that Łukasiewicz chaining does not guarantee).

pub mod oracle;

use std::fmt;
use std::str::FromStr;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::group::{FiniteGroup, GroupError, GroupSpec};
use crate::ifs::{
    identity_report_with, normal_report_with, subgroup_report_with, CarrierKind, IFSubset, IfsDoc, IfsError,
};
use crate::machine::{
    concat_equality_check_with, Composition, Extender, Machine, MachineDoc, MachineError, Matrix, StructureMode,
};
use crate::report::{conventions, Binding, Witness};
use crate::substructures::{Evaluator, Relation};
use crate::truthval::{strong_conj, Implication, TruthValue};

/// Default bound on the number of instances a search may evaluate.
pub const DEFAULT_CAP: u64 = 10_000_000;

/// Instances per parallel batch; results are appended batch by batch in
/// index order.
const BATCH: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("grid has {count} instances, above the cap of {cap}")]
    GridTooLarge { count: BigUint, cap: u64 },
    #[error("degenerate grid: {0}")]
    Degenerate(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Machine(#[from] MachineError),
    #[error(transparent)]
    Ifs(#[from] IfsError),
}

/// Which state subsets a grid pairs with each machine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubsetSpace {
    /// Every consistent `(μ, ν)` on the value grid.
    #[default]
    All,
    /// Only subsets whose subgroup degree is 1.
    Subgroups,
    /// The single subset `μ = 1, ν = 0`; for machine-only checks.
    Total,
}

impl FromStr for SubsetSpace {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(SubsetSpace::All),
            "subgroups" => Ok(SubsetSpace::Subgroups),
            "total" => Ok(SubsetSpace::Total),
            _ => Err(HarnessError::InvalidParameter(format!("unknown subset space {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridParams {
    pub group: GroupSpec,
    pub alphabet: usize,
    pub denominator: u32,
    /// `ProductSubgroup` keeps only machines whose letters all have
    /// product-subgroup degree 1; `None` keeps every consistent machine.
    pub structure: StructureMode,
    pub subsets: SubsetSpace,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplerParams {
    pub group: GroupSpec,
    pub alphabet: usize,
    pub denominator: u32,
    pub count: u64,
    pub seed: u64,
}

/// A seeded subset of a grid's instances, for grids too slow to run in
/// full. Indices are distinct and visited in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSampleParams {
    pub grid: GridParams,
    pub count: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SourceParams {
    Grid(GridParams),
    Sampler(SamplerParams),
    GridSample(GridSampleParams),
}

/// One evaluated case.
#[derive(Debug, Clone)]
pub struct Instance {
    pub index: u64,
    pub machine: Machine,
    pub subset: IFSubset,
}

impl Instance {
    pub fn documents(&self) -> (MachineDoc, IfsDoc) {
        (self.machine.to_doc(), self.subset.to_doc(CarrierKind::Group))
    }

    /// SHA-256 of the canonical JSON of both documents, hex encoded.
    pub fn digest(&self) -> String {
        let (m, s) = self.documents();
        digest_of(&m, &s)
    }
}

fn digest_of(m: &MachineDoc, s: &IfsDoc) -> String {
    let mut h = Sha256::new();
    h.update(serde_json::to_vec(m).expect("machine doc serializes"));
    h.update(b"\n");
    h.update(serde_json::to_vec(s).expect("subset doc serializes"));
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

fn symbol(i: usize) -> String {
    const NAMES: [&str; 6] = ["u", "v", "w", "x", "y", "z"];
    NAMES.get(i).map_or_else(|| format!("s{i}"), |s| s.to_string())
}

fn alphabet(k: usize) -> Vec<String> {
    (0..k).map(symbol).collect()
}

/// Consistent `(μ, ν)` level pairs `(k, j)` with `k + j <= d`, in
/// lexicographic order.
pub fn legal_pairs(d: u32) -> Vec<(u32, u32)> {
    (0..=d).flat_map(|k| (0..=d - k).map(move |j| (k, j))).collect()
}

/// Closed-form number of legal pairs per entry: `sum_k (d - k + 1)`.
pub fn legal_pair_count(d: u32) -> u64 {
    (0..=u64::from(d)).map(|k| u64::from(d) - k + 1).sum()
}

/// Every membership function `G -> {0..=d}` (as levels) that satisfies
/// `μ(xy) >= min(μx, μy)` and `μ(x⁻¹) = μx`, in lexicographic order.
/// Backtracks over elements in index order, checking each constraint as
/// soon as all its elements are assigned.
pub fn membership_subgroups(g: &FiniteGroup, d: u32) -> Vec<Vec<u32>> {
    fn consistent(g: &FiniteGroup, lv: &[u32], x: usize) -> bool {
        let i = g.inv(x);
        if i <= x && lv[i] != lv[x] {
            return false;
        }
        for y in 0..=x {
            for z in 0..=x {
                let p = g.op(y, z);
                if p <= x && (y == x || z == x || p == x) && lv[p] < lv[y].min(lv[z]) {
                    return false;
                }
            }
        }
        true
    }
    fn go(g: &FiniteGroup, d: u32, x: usize, lv: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if x == g.order() {
            out.push(lv.clone());
            return;
        }
        for k in 0..=d {
            lv[x] = k;
            if consistent(g, lv, x) {
                go(g, d, x + 1, lv, out);
            }
        }
    }
    let mut out = Vec::new();
    go(g, d, 0, &mut vec![0; g.order()], &mut out);
    out
}

/// Level pairs `(μ, ν)` on `G` with both halves satisfying the subgroup
/// inequalities and `μ + ν <= d` pointwise. A `ν` satisfies the dual
/// inequalities exactly when `d - ν` is a membership subgroup.
pub fn subgroup_level_pairs(g: &FiniteGroup, d: u32) -> Vec<(Vec<u32>, Vec<u32>)> {
    let mus = membership_subgroups(g, d);
    let mut out = Vec::new();
    for mu in &mus {
        for co in &mus {
            if mu.iter().zip(co).all(|(m, c)| m <= c) {
                out.push((mu.clone(), co.iter().map(|c| d - c).collect()));
            }
        }
    }
    out
}

enum Space {
    /// Mixed radix over `entries` positions, each a legal pair.
    Free {
        entries: usize,
        count: u64,
    },
    Listed(Vec<(Vec<u32>, Vec<u32>)>),
}

impl Space {
    fn len(&self) -> u64 {
        match self {
            Space::Free { count, .. } => *count,
            Space::Listed(v) => v.len() as u64,
        }
    }

    fn levels(&self, mut idx: u64, pairs: &[(u32, u32)]) -> (Vec<u32>, Vec<u32>) {
        match self {
            Space::Free { entries, .. } => {
                let p = pairs.len() as u64;
                let mut mu = vec![0; *entries];
                let mut nu = vec![0; *entries];
                for e in (0..*entries).rev() {
                    let (k, j) = pairs[(idx % p) as usize];
                    mu[e] = k;
                    nu[e] = j;
                    idx /= p;
                }
                (mu, nu)
            }
            Space::Listed(v) => v[idx as usize].clone(),
        }
    }
}

fn to_values(levels: &[u32], d: u32) -> Vec<TruthValue> {
    levels.iter().map(|&k| TruthValue::frac(k, d)).collect()
}

fn big_pow(base: u64, exp: usize) -> BigUint {
    BigUint::from(base).pow(exp as u32)
}

fn within_cap(count: &BigUint, cap: u64) -> Result<u64, HarnessError> {
    match count.to_u64() {
        Some(c) if c <= cap => Ok(c),
        _ => Err(HarnessError::GridTooLarge { count: count.clone(), cap }),
    }
}

/// Exhaustive enumeration of every valid instance over the value grid.
pub struct InstanceGrid {
    params: GridParams,
    group: FiniteGroup,
    pairs: Vec<(u32, u32)>,
    letters: Space,
    subsets: Space,
    count: u64,
}

impl InstanceGrid {
    pub fn new(params: GridParams, cap: u64) -> Result<Self, HarnessError> {
        let d = params.denominator;
        if d == 0 {
            return Err(HarnessError::Degenerate("denominator must be at least 1".into()));
        }
        if params.alphabet == 0 {
            return Err(HarnessError::InvalidParameter("alphabet size must be at least 1".into()));
        }
        let group = params.group.resolve()?;
        let n = group.order();
        let pairs = legal_pairs(d);
        let p = pairs.len() as u64;
        let letter_count: BigUint;
        let letters = match params.structure {
            StructureMode::None => {
                letter_count = big_pow(p, n * n);
                let count = letter_count.to_u64().unwrap_or(u64::MAX);
                Space::Free { entries: n * n, count }
            }
            StructureMode::ProductSubgroup => {
                let sq = group.product_unchecked(&group);
                let v = subgroup_level_pairs(&sq, d);
                letter_count = BigUint::from(v.len());
                Space::Listed(v)
            }
        };
        let subsets = match params.subsets {
            SubsetSpace::All => {
                let c = big_pow(p, n);
                Space::Free { entries: n, count: c.to_u64().unwrap_or(u64::MAX) }
            }
            SubsetSpace::Subgroups => Space::Listed(subgroup_level_pairs(&group, d)),
            SubsetSpace::Total => Space::Listed(vec![(vec![d; n], vec![0; n])]),
        };
        let subset_count = match params.subsets {
            SubsetSpace::All => big_pow(p, n),
            _ => BigUint::from(subsets.len()),
        };
        let total = letter_count.pow(params.alphabet as u32) * subset_count;
        let count = within_cap(&total, cap)?;
        Ok(InstanceGrid { params, group, pairs, letters, subsets, count })
    }

    pub fn params(&self) -> &GridParams {
        &self.params
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    /// Number of distinct machines the grid ranges over.
    pub fn machine_count(&self) -> u64 {
        self.letters.len().pow(self.params.alphabet as u32)
    }

    pub fn subset_count(&self) -> u64 {
        self.subsets.len()
    }

    /// Closed-form count of the unfiltered grid:
    /// `P^(n² · k + n)` with `P` legal pairs per entry.
    pub fn closed_form_count(group_order: usize, alphabet: usize, d: u32) -> BigUint {
        big_pow(legal_pair_count(d), group_order * group_order * alphabet + group_order)
    }

    /// The instance at `index` in lexicographic order: letters most
    /// significant first, then the subset.
    pub fn instance(&self, index: u64) -> Result<Instance, HarnessError> {
        let d = self.params.denominator;
        let n = self.group.order();
        let s_count = self.subsets.len();
        let (mu, nu) = self.subsets.levels(index % s_count, &self.pairs);
        let subset = IFSubset::new(n, to_values(&mu, d), to_values(&nu, d))?;
        let l_count = self.letters.len();
        let mut rest = index / s_count;
        let k = self.params.alphabet;
        let mut a = vec![Matrix::filled(n, TruthValue::ZERO); k];
        let mut b = a.clone();
        for l in (0..k).rev() {
            let (am, bm) = self.letters.levels(rest % l_count, &self.pairs);
            rest /= l_count;
            a[l] = Matrix::from_fn(n, |r, c| TruthValue::frac(am[r * n + c], d));
            b[l] = Matrix::from_fn(n, |r, c| TruthValue::frac(bm[r * n + c], d));
        }
        let machine = Machine::new(self.group.clone(), alphabet(k), a, b, TruthValue::ONE, self.params.structure)?;
        Ok(Instance { index, machine, subset })
    }

    pub fn iter(&self) -> impl Iterator<Item = Instance> + '_ {
        (0..self.count).map(|i| self.instance(i).expect("grid instances are valid"))
    }
}

/// Seeded sampler. Instance `i` is drawn from its own ChaCha stream, so any
/// instance can be regenerated without the ones before it.
pub struct Sampler {
    params: SamplerParams,
    group: FiniteGroup,
}

impl Sampler {
    pub fn new(params: SamplerParams) -> Result<Self, HarnessError> {
        if params.denominator == 0 {
            return Err(HarnessError::Degenerate("denominator must be at least 1".into()));
        }
        if params.count == 0 || params.alphabet == 0 {
            return Err(HarnessError::InvalidParameter("sample count and alphabet size must be at least 1".into()));
        }
        let group = params.group.resolve()?;
        Ok(Sampler { params, group })
    }

    pub fn params(&self) -> &SamplerParams {
        &self.params
    }

    pub fn count(&self) -> u64 {
        self.params.count
    }

    pub fn instance(&self, index: u64) -> Result<Instance, HarnessError> {
        let d = self.params.denominator;
        let n = self.group.order();
        let mut rng = ChaCha8Rng::seed_from_u64(self.params.seed);
        rng.set_stream(index);
        let mut draw = || {
            let k = rng.random_range(0..=d);
            let j = rng.random_range(0..=d - k);
            (TruthValue::frac(k, d), TruthValue::frac(j, d))
        };
        let k = self.params.alphabet;
        let mut a = Vec::with_capacity(k);
        let mut b = Vec::with_capacity(k);
        for _ in 0..k {
            let mut am = Matrix::filled(n, TruthValue::ZERO);
            let mut bm = am.clone();
            for r in 0..n {
                for c in 0..n {
                    let (x, y) = draw();
                    am.set(r, c, x);
                    bm.set(r, c, y);
                }
            }
            a.push(am);
            b.push(bm);
        }
        let (mu, nu): (Vec<_>, Vec<_>) = (0..n).map(|_| draw()).unzip();
        let subset = IFSubset::new(n, mu, nu)?;
        let machine = Machine::new(self.group.clone(), alphabet(k), a, b, TruthValue::ONE, StructureMode::None)?;
        Ok(Instance { index, machine, subset })
    }

    pub fn iter(&self) -> impl Iterator<Item = Instance> + '_ {
        (0..self.count()).map(|i| self.instance(i).expect("sampled instances are valid"))
    }
}

pub enum Source {
    Grid(InstanceGrid),
    Sampler(Sampler),
    GridSample { grid: InstanceGrid, params: GridSampleParams, indices: Vec<u64> },
}

impl Source {
    pub fn build(params: SourceParams, cap: u64) -> Result<Self, HarnessError> {
        match params {
            SourceParams::Grid(p) => Ok(Source::Grid(InstanceGrid::new(p, cap)?)),
            SourceParams::Sampler(p) => {
                if p.count > cap {
                    return Err(HarnessError::GridTooLarge { count: BigUint::from(p.count), cap });
                }
                Ok(Source::Sampler(Sampler::new(p)?))
            }
            SourceParams::GridSample(p) => {
                if p.count == 0 {
                    return Err(HarnessError::InvalidParameter("sample count must be at least 1".into()));
                }
                // The full grid is never evaluated, only indexed.
                let grid = InstanceGrid::new(p.grid.clone(), u64::MAX)?;
                if p.count > cap {
                    return Err(HarnessError::GridTooLarge { count: BigUint::from(p.count), cap });
                }
                let len = usize::try_from(grid.count())
                    .map_err(|_| HarnessError::InvalidParameter("grid too large to subsample".into()))?;
                let amount = (p.count as usize).min(len);
                let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
                let mut indices: Vec<u64> =
                    rand::seq::index::sample(&mut rng, len, amount).into_iter().map(|i| i as u64).collect();
                indices.sort_unstable();
                Ok(Source::GridSample { grid, params: p, indices })
            }
        }
    }

    pub fn params(&self) -> SourceParams {
        match self {
            Source::Grid(g) => SourceParams::Grid(g.params().clone()),
            Source::Sampler(s) => SourceParams::Sampler(s.params().clone()),
            Source::GridSample { params, .. } => SourceParams::GridSample(params.clone()),
        }
    }

    pub fn count(&self) -> u64 {
        match self {
            Source::Grid(g) => g.count(),
            Source::Sampler(s) => s.count(),
            Source::GridSample { indices, .. } => indices.len() as u64,
        }
    }

    /// The `position`-th instance of this source. Its `index` field is the
    /// underlying grid index for subsampled grids.
    pub fn instance(&self, position: u64) -> Result<Instance, HarnessError> {
        match self {
            Source::Grid(g) => g.instance(position),
            Source::Sampler(s) => s.instance(position),
            Source::GridSample { grid, indices, .. } => grid.instance(indices[position as usize]),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Instance> + '_ {
        (0..self.count()).map(|i| self.instance(i).expect("source instances are valid"))
    }

    fn group(&self) -> &FiniteGroup {
        match self {
            Source::Grid(g) => &g.group,
            Source::Sampler(s) => &s.group,
            Source::GridSample { grid, .. } => &grid.group,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TheoremId {
    #[serde(rename = "thm-ext")]
    Extension,
    #[serde(rename = "thm-subsemi-star")]
    SubsemiStar,
    #[serde(rename = "thm-kernel-star")]
    KernelStar,
    #[serde(rename = "thm-kernel-subsemi")]
    KernelSubsemi,
    #[serde(rename = "prop-identity")]
    Identity,
}

impl TheoremId {
    pub const ALL: [TheoremId; 5] = [
        TheoremId::Extension,
        TheoremId::SubsemiStar,
        TheoremId::KernelStar,
        TheoremId::KernelSubsemi,
        TheoremId::Identity,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Extension => "thm-ext",
            TheoremId::SubsemiStar => "thm-subsemi-star",
            TheoremId::KernelStar => "thm-kernel-star",
            TheoremId::KernelSubsemi => "thm-kernel-subsemi",
            TheoremId::Identity => "prop-identity",
        }
    }

    /// Subset space a grid uses when none is requested. The extension law
    /// does not look at the subset.
    pub fn default_subsets(self) -> SubsetSpace {
        match self {
            TheoremId::Extension => SubsetSpace::Total,
            _ => SubsetSpace::All,
        }
    }

    /// Names of the checks this theorem runs on each instance.
    pub fn checks(self) -> &'static [&'static str] {
        match self {
            TheoremId::Extension => &[check::CONCAT, check::CONSISTENCY],
            TheoremId::SubsemiStar => &[check::SUBSEMI_STAR_ONE, check::SUBSEMI_STAR_ORDER],
            TheoremId::KernelStar => &[check::KERNEL_STAR_ONE, check::KERNEL_STAR_ORDER],
            TheoremId::KernelSubsemi => &[check::KERNEL_SUBSEMI_ONE, check::KERNEL_SUBSEMI_ORDER, check::SUBSET_LAW],
            TheoremId::Identity => &[
                check::IDENTITY_ONE,
                check::IDENTITY_CHAIN,
                check::IDENTITY_ORDER,
                check::ORACLE_SUBGROUP,
                check::ORACLE_NORMAL_ABELIAN,
                check::ORACLE_CRISP,
            ],
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| HarnessError::InvalidParameter(format!("unknown theorem id {s:?}")))
    }
}

/// Check names as they appear in reports.
pub mod check {
    pub const CONCAT: &str = "concat-equality";
    pub const CONSISTENCY: &str = "consistency-preserved";
    pub const SUBSEMI_STAR_ONE: &str = "subsemi=1 => subsemi*=1";
    pub const SUBSEMI_STAR_ORDER: &str = "subsemi* >= subsemi";
    pub const KERNEL_STAR_ONE: &str = "kernel=1 => kernel*=1";
    pub const KERNEL_STAR_ORDER: &str = "kernel* >= kernel";
    pub const KERNEL_SUBSEMI_ONE: &str = "kernel,epsilon,structure=1 => subsemi=1";
    pub const KERNEL_SUBSEMI_ORDER: &str = "subsemi >= min(kernel, epsilon)";
    pub const SUBSET_LAW: &str = "epsilon >= subsemi";
    pub const IDENTITY_ONE: &str = "subgroup=1 => identity=1";
    pub const IDENTITY_CHAIN: &str = "identity >= 2*subgroup-1";
    pub const IDENTITY_ORDER: &str = "identity >= subgroup";
    pub const ORACLE_SUBGROUP: &str = "oracle: subgroup=1 iff classical";
    pub const ORACLE_NORMAL_ABELIAN: &str = "oracle: abelian => normal=1";
    pub const ORACLE_CRISP: &str = "oracle: crisp semantics";
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Severity {
    Hard,
    Finding,
}

/// One failed check on one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub check: String,
    pub severity: Severity,
    pub claimed: TruthValue,
    pub observed: TruthValue,
    pub witnesses: Vec<Witness>,
}

/// An instance with at least one violation, with the documents needed to
/// replay it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub index: u64,
    pub digest: String,
    pub violations: Vec<Violation>,
    pub machine: MachineDoc,
    pub subset: IfsDoc,
}

impl Counterexample {
    pub fn instance(&self) -> Result<(Machine, IFSubset), HarnessError> {
        Ok((Machine::from_doc(&self.machine)?, IFSubset::from_doc(&self.subset)?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_len: usize,
    pub mutate: bool,
    pub implication: Implication,
    /// Thread count; `None` uses the global pool.
    pub workers: Option<usize>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_len: crate::machine::DEFAULT_MAX_LEN,
            mutate: false,
            implication: Implication::Lukasiewicz,
            workers: None,
        }
    }
}

impl SearchConfig {
    fn evaluator(&self) -> Evaluator {
        let composition = if self.mutate { Composition::Corrupted } else { Composition::Exact };
        Evaluator { implication: self.implication, composition }
    }
}

/// Run metadata that legitimately differs between identical runs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportHeader {
    /// Seconds since the Unix epoch at completion.
    pub timestamp: u64,
    pub wall_time_ms: u64,
    pub workers: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub header: ReportHeader,
    pub theorem: TheoremId,
    pub source: SourceParams,
    pub seed: Option<u64>,
    pub max_len: usize,
    pub mutate: bool,
    pub implication: Implication,
    pub instances_examined: u64,
    pub hard_failures: u64,
    pub findings: u64,
    pub checks: Vec<CheckTally>,
    pub conventions: Vec<String>,
    pub counterexamples: Vec<Counterexample>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckTally {
    pub check: String,
    /// Instances on which the check's premise held.
    pub applicable: u64,
    pub hard: u64,
    pub findings: u64,
}

impl SearchReport {
    /// 0 clean, 1 hard failure, 3 findings only.
    pub fn exit_code(&self) -> i32 {
        if self.hard_failures > 0 {
            1
        } else if self.findings > 0 {
            3
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON without the header; identical across repeated runs.
    pub fn canonical_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().expect("object").remove("header");
        serde_json::to_string_pretty(&v).expect("value serializes")
    }

    pub fn to_junit(&self) -> String {
        let esc = |s: &str| s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;");
        let failures = self.checks.iter().filter(|c| c.hard > 0).count();
        let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        out += &format!(
            "<testsuite name=\"{}\" tests=\"{}\" failures=\"{}\" errors=\"0\" time=\"{:.3}\">\n",
            self.theorem,
            self.checks.len(),
            failures,
            self.header.wall_time_ms as f64 / 1000.0
        );
        for c in &self.checks {
            out += &format!("  <testcase classname=\"{}\" name=\"{}\">\n", self.theorem, esc(&c.check));
            if c.hard > 0 {
                out += &format!("    <failure message=\"{} hard counterexamples\" type=\"counterexample\"/>\n", c.hard);
            }
            out += &format!(
                "    <system-out>instances={} applicable={} hard={} findings={}</system-out>\n",
                self.instances_examined, c.applicable, c.hard, c.findings
            );
            out += "  </testcase>\n";
        }
        out += "</testsuite>\n";
        out
    }
}

impl fmt::Display for SearchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "theorem: {}", self.theorem)?;
        for c in &self.conventions {
            writeln!(f, "# {c}")?;
        }
        writeln!(f, "instances examined: {}", self.instances_examined)?;
        for c in &self.checks {
            writeln!(f, "  {:<42} applicable={} hard={} findings={}", c.check, c.applicable, c.hard, c.findings)?;
        }
        writeln!(f, "counterexamples: {}", self.hard_failures)?;
        writeln!(f, "findings: {}", self.findings)?;
        for cx in self.counterexamples.iter().take(5) {
            for v in &cx.violations {
                writeln!(
                    f,
                    "  #{} {} [{:?}] {}: claimed {} observed {}",
                    cx.index,
                    &cx.digest[..12],
                    v.severity,
                    v.check,
                    v.claimed,
                    v.observed
                )?;
                if let Some(w) = v.witnesses.first() {
                    writeln!(f, "    {w}")?;
                }
            }
        }
        if self.counterexamples.len() > 5 {
            writeln!(f, "  ... {} more instances in the JSON report", self.counterexamples.len() - 5)?;
        }
        Ok(())
    }
}

/// Precomputed per-search state shared by all instances.
pub struct Context {
    pairs: FiniteGroup,
    abelian: bool,
}

impl Context {
    pub fn for_group(g: &FiniteGroup) -> Self {
        Context { pairs: g.product_unchecked(g), abelian: g.is_abelian() }
    }
}

fn hard(check: &str, claimed: TruthValue, observed: TruthValue, witnesses: Vec<Witness>) -> Violation {
    Violation { check: check.into(), severity: Severity::Hard, claimed, observed, witnesses }
}

fn finding(check: &str, claimed: TruthValue, observed: TruthValue, witnesses: Vec<Witness>) -> Violation {
    Violation { check: check.into(), severity: Severity::Finding, claimed, observed, witnesses }
}

fn bool_tv(b: bool) -> TruthValue {
    if b {
        TruthValue::ONE
    } else {
        TruthValue::ZERO
    }
}

/// Runs every check of `theorem` on one instance.
pub fn evaluate(
    theorem: TheoremId,
    m: &Machine,
    s: &IFSubset,
    ctx: &Context,
    cfg: &SearchConfig,
) -> Result<Vec<Violation>, HarnessError> {
    Ok(evaluate_counted(theorem, m, s, ctx, cfg)?.0)
}

/// As [`evaluate`], also returning the checks whose premise held on this
/// instance, so reports can show that a check was not vacuous.
fn evaluate_counted(
    theorem: TheoremId,
    m: &Machine,
    s: &IFSubset,
    ctx: &Context,
    cfg: &SearchConfig,
) -> Result<(Vec<Violation>, Vec<&'static str>), HarnessError> {
    let ev = cfg.evaluator();
    let one = TruthValue::ONE;
    let mut out = Vec::new();
    let mut applied = Vec::new();
    match theorem {
        TheoremId::Extension => {
            applied.extend([check::CONCAT, check::CONSISTENCY]);
            let r = concat_equality_check_with(m, cfg.max_len, ev.composition);
            if r.overall < one {
                out.push(hard(check::CONCAT, one, r.overall, r.witnesses));
            }
            let mut ext = Extender::with_composition(m, ev.composition);
            if let Some(w) = consistency_witness(&ext.all_up_to(cfg.max_len), cfg.implication) {
                out.push(hard(check::CONSISTENCY, one, w.degree, vec![w]));
            }
        }
        TheoremId::SubsemiStar | TheoremId::KernelStar => {
            let (rel, one_check, order_check) = if theorem == TheoremId::SubsemiStar {
                (Relation::SubsemiStar, check::SUBSEMI_STAR_ONE, check::SUBSEMI_STAR_ORDER)
            } else {
                (Relation::KernelStar, check::KERNEL_STAR_ONE, check::KERNEL_STAR_ORDER)
            };
            let v = ev.relation(m, s, rel, cfg.max_len)?;
            applied.push(if v.claimed == one { one_check } else { order_check });
            if !v.holds {
                let f = if v.claimed == one { hard } else { finding };
                let name = if v.claimed == one { one_check } else { order_check };
                out.push(f(name, v.claimed, v.observed, v.witnesses));
            }
        }
        TheoremId::KernelSubsemi => {
            let v = ev.relation(m, s, Relation::KernelImpliesSubsemi, cfg.max_len)?;
            let structured = v.claimed == one && m.structure_report_in(&ctx.pairs, cfg.implication).overall == one;
            applied.push(if structured { check::KERNEL_SUBSEMI_ONE } else { check::KERNEL_SUBSEMI_ORDER });
            applied.push(check::SUBSET_LAW);
            if !v.holds {
                if structured {
                    out.push(hard(check::KERNEL_SUBSEMI_ONE, v.claimed, v.observed, v.witnesses));
                } else {
                    out.push(finding(check::KERNEL_SUBSEMI_ORDER, v.claimed, v.observed, v.witnesses));
                }
            }
            let law = ev.relation(m, s, Relation::SubsemiImpliesEpsilon, cfg.max_len)?;
            if !law.holds {
                out.push(hard(check::SUBSET_LAW, law.claimed, law.observed, law.witnesses));
            }
        }
        TheoremId::Identity => {
            let g = m.group();
            let sub = subgroup_report_with(g, s, cfg.implication)?;
            let id = identity_report_with(g, s, cfg.implication)?;
            applied.extend([check::IDENTITY_ORDER, check::ORACLE_SUBGROUP]);
            if sub.overall == one {
                applied.push(check::IDENTITY_ONE);
            }
            if cfg.implication == Implication::Lukasiewicz {
                applied.push(check::IDENTITY_CHAIN);
            }
            if sub.overall == one && id.overall < one {
                out.push(hard(check::IDENTITY_ONE, one, id.overall, id.witnesses.clone()));
            }
            let chained = strong_conj(sub.overall, sub.overall);
            if cfg.implication == Implication::Lukasiewicz && id.overall < chained {
                let ws = id.witnesses.iter().filter(|w| w.degree < chained).cloned().collect();
                out.push(hard(check::IDENTITY_CHAIN, chained, id.overall, ws));
            }
            if id.overall < sub.overall {
                let ws = id.witnesses.iter().filter(|w| w.degree < sub.overall).cloned().collect();
                out.push(finding(check::IDENTITY_ORDER, sub.overall, id.overall, ws));
            }
            if oracle::classical_subgroup(g, s) != (sub.overall == one) {
                out.push(hard(
                    check::ORACLE_SUBGROUP,
                    bool_tv(oracle::classical_subgroup(g, s)),
                    sub.overall,
                    sub.witnesses.clone(),
                ));
            }
            if ctx.abelian {
                applied.push(check::ORACLE_NORMAL_ABELIAN);
                let normal = normal_report_with(g, s, cfg.implication)?;
                if normal.overall < one {
                    out.push(hard(check::ORACLE_NORMAL_ABELIAN, one, normal.overall, normal.witnesses));
                }
            }
            if s.is_crisp() && oracle::machine_is_crisp(m) {
                applied.push(check::ORACLE_CRISP);
                if let Some(v) = crisp_disagreement(m, s, &ev)? {
                    out.push(v);
                }
            }
        }
    }
    Ok((out, applied))
}

/// First entry of any extended pair with `A* + B* > 1`, phrased as the
/// failed implication `A* -> 1 - B*`.
fn consistency_witness(pairs: &[crate::machine::TransitionMatrixPair], imp: Implication) -> Option<Witness> {
    pairs.iter().find_map(|p| {
        p.consistency_violation().map(|(r, c)| {
            let ante = p.a_star[(r, c)];
            let cons = p.b_star[(r, c)].complement();
            Witness {
                condition: check::CONSISTENCY.into(),
                binding: vec![Binding::word("xi", &p.word.0), Binding::state("alpha", r), Binding::state("beta", c)],
                antecedent: ante,
                consequent: cons,
                degree: imp.apply(ante, cons),
            }
        })
    })
}

/// Compares every graded checker against its crisp reading. The reported
/// degrees are `(crisp verdict, graded degree)` of the first mismatch.
fn crisp_disagreement(m: &Machine, s: &IFSubset, ev: &Evaluator) -> Result<Option<Violation>, HarnessError> {
    let g = m.group();
    let imp = ev.implication;
    let graded: [(&str, bool, TruthValue); 6] = [
        ("subgroup", oracle::crisp::subgroup(g, s), subgroup_report_with(g, s, imp)?.overall),
        ("normal", oracle::crisp::normal(g, s), normal_report_with(g, s, imp)?.overall),
        ("identity", oracle::crisp::identity(g, s), identity_report_with(g, s, imp)?.overall),
        ("subsemi", oracle::crisp::subsemi(m, s), ev.subsemi(m, s)?.overall),
        ("kernel", oracle::crisp::kernel(m, s), ev.kernel(m, s)?.overall),
        ("epsilon", oracle::crisp::epsilon(m, s), ev.kernel_epsilon(m, s)?.overall),
    ];
    Ok(graded.into_iter().find(|(_, c, d)| bool_tv(*c) != *d).map(|(name, c, d)| {
        let w = Witness {
            condition: format!("crisp-{name}"),
            binding: Vec::new(),
            antecedent: bool_tv(c),
            consequent: d,
            degree: if bool_tv(c) == d { TruthValue::ONE } else { TruthValue::ZERO },
        };
        hard(check::ORACLE_CRISP, bool_tv(c), d, vec![w])
    }))
}

fn conventions_for(cfg: &SearchConfig, source: &SourceParams) -> Vec<String> {
    let logic = match cfg.implication {
        Implication::Lukasiewicz => conventions::LUKASIEWICZ,
        Implication::Goedel => conventions::GOEDEL,
    };
    let structure = match source {
        SourceParams::Grid(g) | SourceParams::GridSample(GridSampleParams { grid: g, .. }) => g.structure.convention(),
        SourceParams::Sampler(_) => StructureMode::None.convention(),
    };
    let mut v: Vec<String> = [logic, conventions::DUAL_NU, conventions::EMPTY_WORD_IDENTITY, structure]
        .iter()
        .map(|s| s.to_string())
        .collect();
    if cfg.mutate {
        v.push("mutation: corrupted word composition (negative control)".into());
    }
    v
}

/// Evaluates `theorem` on every instance of `source`.
pub fn search_counterexamples(
    theorem: TheoremId,
    source: &Source,
    cfg: &SearchConfig,
) -> Result<SearchReport, HarnessError> {
    let started = Instant::now();
    let mut checks: Vec<CheckTally> = theorem
        .checks()
        .iter()
        .map(|c| CheckTally { check: c.to_string(), applicable: 0, hard: 0, findings: 0 })
        .collect();
    let run = |checks: &mut Vec<CheckTally>| -> Result<Vec<Counterexample>, HarnessError> {
        let ctx = Context::for_group(source.group());
        let total = source.count();
        let mut out = Vec::new();
        let mut start = 0;
        while start < total {
            let end = (start + BATCH).min(total);
            let batch: Vec<(Option<Counterexample>, Vec<&'static str>)> = (start..end)
                .into_par_iter()
                .map(|i| {
                    let inst = source.instance(i)?;
                    let i = inst.index;
                    let (violations, applied) = evaluate_counted(theorem, &inst.machine, &inst.subset, &ctx, cfg)?;
                    if violations.is_empty() {
                        return Ok((None, applied));
                    }
                    let (machine, subset) = inst.documents();
                    let digest = digest_of(&machine, &subset);
                    Ok((Some(Counterexample { index: i, digest, violations, machine, subset }), applied))
                })
                .collect::<Result<_, HarnessError>>()?;
            for (cx, applied) in batch {
                for name in applied {
                    checks
                        .iter_mut()
                        .find(|t| t.check == name)
                        .expect("check is registered for its theorem")
                        .applicable += 1;
                }
                out.extend(cx);
            }
            start = end;
        }
        Ok(out)
    };
    let (counterexamples, workers) = match cfg.workers {
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w.max(1))
                .build()
                .map_err(|e| HarnessError::InvalidParameter(e.to_string()))?;
            (pool.install(|| run(&mut checks))?, w.max(1))
        }
        None => (run(&mut checks)?, rayon::current_num_threads()),
    };
    for v in counterexamples.iter().flat_map(|c| &c.violations) {
        let t = checks.iter_mut().find(|t| t.check == v.check).expect("check is registered for its theorem");
        match v.severity {
            Severity::Hard => t.hard += 1,
            Severity::Finding => t.findings += 1,
        }
    }
    let params = source.params();
    let seed = match &params {
        SourceParams::Sampler(p) => Some(p.seed),
        SourceParams::GridSample(p) => Some(p.seed),
        SourceParams::Grid(_) => None,
    };
    let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    Ok(SearchReport {
        header: ReportHeader { timestamp, wall_time_ms: started.elapsed().as_millis() as u64, workers },
        theorem,
        conventions: conventions_for(cfg, &params),
        source: params,
        seed,
        max_len: cfg.max_len,
        mutate: cfg.mutate,
        implication: cfg.implication,
        instances_examined: source.count(),
        hard_failures: checks.iter().map(|c| c.hard).sum(),
        findings: checks.iter().map(|c| c.findings).sum(),
        checks,
        counterexamples,
    })
}

/// Rebuilds a counterexample's instance from its documents and reruns the
/// theorem's checks on it.
pub fn replay(theorem: TheoremId, cx: &Counterexample, cfg: &SearchConfig) -> Result<Vec<Violation>, HarnessError> {
    let (m, s) = cx.instance()?;
    let ctx = Context::for_group(m.group());
    evaluate(theorem, &m, &s, &ctx, cfg)
}
