//! Finite groups presented by validated Cayley tables.
//!
//! Elements are dense indices `0..n`; names are for presentation only.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Groups larger than this are refused.
pub const MAX_ORDER: usize = 120;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("a group needs at least one element")]
    Empty,
    #[error("order {0} exceeds the supported maximum {MAX_ORDER}")]
    TooLarge(usize),
    #[error("declared order {order} but table has shape {rows}x{cols}")]
    NotSquare { order: usize, rows: usize, cols: usize },
    #[error("not closed: entry at ({row},{col}) is {value}, outside 0..{order}")]
    NotClosed { row: usize, col: usize, value: i64, order: usize },
    #[error("no identity element")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("{got} element names supplied for a group of order {order}")]
    NamesMismatch { got: usize, order: usize },
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("unknown group family {0:?}")]
    UnknownFamily(String),
    #[error("bad parameter for group family: {0}")]
    BadParameter(String),
    #[error("homomorphism map has {got} entries, source order is {expected}")]
    MapLength { got: usize, expected: usize },
    #[error("homomorphism map sends {0} outside the target group")]
    MapOutOfRange(usize),
    #[error("not a homomorphism: f({0}*{1}) != f({0})*f({1})")]
    NotHomomorphism(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    names: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Validates a Cayley table. Row `r`, column `c` holds the product `r*c`.
    pub fn from_cayley(
        name: impl Into<String>,
        table: &[Vec<i64>],
        names: Option<Vec<String>>,
    ) -> Result<Self, GroupError> {
        let order = table.len();
        if order == 0 {
            return Err(GroupError::Empty);
        }
        if order > MAX_ORDER {
            return Err(GroupError::TooLarge(order));
        }
        let mut flat = Vec::with_capacity(order * order);
        for (row, cells) in table.iter().enumerate() {
            if cells.len() != order {
                return Err(GroupError::NotSquare { order, rows: order, cols: cells.len() });
            }
            for (col, &value) in cells.iter().enumerate() {
                if value < 0 || value as usize >= order {
                    return Err(GroupError::NotClosed { row, col, value, order });
                }
                flat.push(value as usize);
            }
        }
        Self::from_flat(name.into(), order, flat, names)
    }

    fn from_flat(
        name: String,
        order: usize,
        table: Vec<usize>,
        names: Option<Vec<String>>,
    ) -> Result<Self, GroupError> {
        if let Some(ns) = &names {
            if ns.len() != order {
                return Err(GroupError::NamesMismatch { got: ns.len(), order });
            }
        }
        let at = |a: usize, b: usize| table[a * order + b];
        let identity =
            (0..order).find(|&e| (0..order).all(|x| at(e, x) == x && at(x, e) == x)).ok_or(GroupError::NoIdentity)?;
        let mut inverse = Vec::with_capacity(order);
        for x in 0..order {
            let y =
                (0..order).find(|&y| at(x, y) == identity && at(y, x) == identity).ok_or(GroupError::NoInverse(x))?;
            inverse.push(y);
        }
        for a in 0..order {
            for b in 0..order {
                let ab = at(a, b);
                for c in 0..order {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(FiniteGroup { name, order, table, identity, inverse, names })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverse
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn element_name(&self, x: usize) -> String {
        match &self.names {
            Some(ns) => ns[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Resolves an element given by name or by index.
    pub fn element(&self, key: &str) -> Result<usize, GroupError> {
        let key = key.trim();
        if let Some(ns) = &self.names {
            if let Some(i) = ns.iter().position(|n| n == key) {
                return Ok(i);
            }
        }
        match key.parse::<usize>() {
            Ok(i) if i < self.order => Ok(i),
            _ => Err(GroupError::UnknownElement(key.to_string())),
        }
    }

    /// First pair `(x, y)` with `xy != yx`, if any.
    pub fn noncommuting_pair(&self) -> Option<(usize, usize)> {
        self.elements()
            .flat_map(|x| self.elements().map(move |y| (x, y)))
            .find(|&(x, y)| self.op(x, y) != self.op(y, x))
    }

    pub fn is_abelian(&self) -> bool {
        self.noncommuting_pair().is_none()
    }

    /// `x^k`.
    pub fn pow(&self, x: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.op(acc, x))
    }

    /// Direct product with componentwise operation; element `(g, h)` has
    /// index `g * other.order() + h`.
    pub fn direct_product(&self, other: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
        let (n, m) = (self.order, other.order);
        let order = n * m;
        if order > MAX_ORDER {
            return Err(GroupError::TooLarge(order));
        }
        Ok(self.product_unchecked(other))
    }

    /// Direct product without the order cap. The result is a group by
    /// construction, so the table is not re-validated.
    pub(crate) fn product_unchecked(&self, other: &FiniteGroup) -> FiniteGroup {
        let (n, m) = (self.order, other.order);
        let order = n * m;
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                let (ag, ah) = (a / m, a % m);
                let (bg, bh) = (b / m, b % m);
                table.push(self.op(ag, bg) * m + other.op(ah, bh));
            }
        }
        let inverse = (0..order).map(|a| self.inv(a / m) * m + other.inv(a % m)).collect();
        let names = (self.names.is_some() || other.names.is_some()).then(|| {
            (0..order).map(|a| format!("({},{})", self.element_name(a / m), other.element_name(a % m))).collect()
        });
        FiniteGroup {
            name: format!("{}*{}", self.name, other.name),
            order,
            table,
            identity: self.identity * m + other.identity,
            inverse,
            names,
        }
    }

    pub fn to_doc(&self) -> GroupDoc {
        GroupDoc {
            name: self.name.clone(),
            order: self.order,
            table: self.table.chunks(self.order).map(|r| r.iter().map(|&v| v as i64).collect()).collect(),
            names: self.names.clone(),
        }
    }

    pub fn from_doc(doc: &GroupDoc) -> Result<Self, GroupError> {
        if doc.table.len() != doc.order {
            return Err(GroupError::NotSquare {
                order: doc.order,
                rows: doc.table.len(),
                cols: doc.table.first().map_or(0, Vec::len),
            });
        }
        Self::from_cayley(doc.name.clone(), &doc.table, doc.names.clone())
    }
}

/// Serialized Cayley-table presentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDoc {
    pub name: String,
    pub order: usize,
    pub table: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

/// A group given either by family shorthand (`"cyclic:4"`) or by a full
/// Cayley-table document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Family(String),
    Table(GroupDoc),
}

impl GroupSpec {
    pub fn resolve(&self) -> Result<FiniteGroup, GroupError> {
        match self {
            GroupSpec::Family(s) => s.parse::<Family>()?.build(),
            GroupSpec::Table(doc) => FiniteGroup::from_doc(doc),
        }
    }

    /// Shorthand when the group is exactly the family its name denotes,
    /// otherwise the full table.
    pub fn of(group: &FiniteGroup) -> Self {
        match group.name().parse::<Family>().and_then(|f| f.build()) {
            Ok(built) if &built == group => GroupSpec::Family(group.name().to_string()),
            _ => GroupSpec::Table(group.to_doc()),
        }
    }
}

/// Named constructions used as fixtures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Cyclic(usize),
    /// Symmetries of the regular `n`-gon, order `2n`.
    Dihedral(usize),
    Klein4,
    Symmetric(usize),
    Product(Box<Family>, Box<Family>),
}

impl Family {
    pub fn build(&self) -> Result<FiniteGroup, GroupError> {
        match *self {
            Family::Cyclic(n) => cyclic(n),
            Family::Dihedral(n) => dihedral(n),
            Family::Klein4 => Ok(klein4()),
            Family::Symmetric(n) => symmetric(n),
            Family::Product(ref g, ref h) => g.build()?.direct_product(&h.build()?),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Cyclic(n) => write!(f, "cyclic:{n}"),
            Family::Dihedral(n) => write!(f, "dihedral:{n}"),
            Family::Klein4 => f.write_str("klein4"),
            Family::Symmetric(n) => write!(f, "symmetric:{n}"),
            Family::Product(g, h) => write!(f, "{g}*{h}"),
        }
    }
}

impl FromStr for Family {
    type Err = GroupError;

    /// `cyclic:4`, `dihedral:4`, `klein4`, `symmetric:3`, and `*`-joined
    /// products such as `cyclic:2*cyclic:3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some((g, h)) = s.split_once('*') {
            return Ok(Family::Product(Box::new(g.parse()?), Box::new(h.parse()?)));
        }
        let (family, param) = match s.split_once(':') {
            Some((f, p)) => (f.trim(), Some(p.trim())),
            None => (s, None),
        };
        let n = || -> Result<usize, GroupError> {
            let p = param.ok_or_else(|| GroupError::BadParameter(format!("{family} needs :n")))?;
            p.parse::<usize>().map_err(|_| GroupError::BadParameter(format!("{p:?} is not a positive integer")))
        };
        match family {
            "cyclic" | "Z" => Ok(Family::Cyclic(n()?)),
            "dihedral" | "D" => Ok(Family::Dihedral(n()?)),
            "symmetric" | "S" => Ok(Family::Symmetric(n()?)),
            "klein4" | "klein" | "V4" => match param {
                None => Ok(Family::Klein4),
                Some(p) => Err(GroupError::BadParameter(format!("klein4 takes no parameter, got {p:?}"))),
            },
            other => Err(GroupError::UnknownFamily(other.to_string())),
        }
    }
}

pub fn make_standard(family: &Family) -> Result<FiniteGroup, GroupError> {
    family.build()
}

fn check_positive(n: usize) -> Result<(), GroupError> {
    if n == 0 {
        Err(GroupError::BadParameter("n must be at least 1".into()))
    } else {
        Ok(())
    }
}

pub fn cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
    check_positive(n)?;
    if n > MAX_ORDER {
        return Err(GroupError::TooLarge(n));
    }
    let table = (0..n).flat_map(|a| (0..n).map(move |b| (a + b) % n)).collect();
    FiniteGroup::from_flat(format!("cyclic:{n}"), n, table, None)
}

/// Elements `s^f r^k` at index `f * n + k`.
pub fn dihedral(n: usize) -> Result<FiniteGroup, GroupError> {
    check_positive(n)?;
    let order = 2 * n;
    if order > MAX_ORDER {
        return Err(GroupError::TooLarge(order));
    }
    let mul = |a: usize, b: usize| {
        let (f1, k1) = (a / n, a % n);
        let (f2, k2) = (b / n, b % n);
        if f2 == 0 {
            f1 * n + (k1 + k2) % n
        } else {
            ((f1 + 1) % 2) * n + (k2 + n - k1) % n
        }
    };
    let table = (0..order).flat_map(|a| (0..order).map(move |b| mul(a, b))).collect();
    let names = (0..order)
        .map(|a| match (a / n, a % n) {
            (0, 0) => "e".to_string(),
            (0, k) => format!("r{k}"),
            (_, 0) => "s".to_string(),
            (_, k) => format!("sr{k}"),
        })
        .collect();
    FiniteGroup::from_flat(format!("dihedral:{n}"), order, table, Some(names))
}

pub fn klein4() -> FiniteGroup {
    let table = (0..4).flat_map(|a| (0..4).map(move |b| a ^ b)).collect();
    let names = ["e", "a", "b", "c"].map(String::from).to_vec();
    FiniteGroup::from_flat("klein4".into(), 4, table, Some(names)).expect("klein4 is a group")
}

/// Permutations of `0..n` in lexicographic order; `(p*q)(i) = p(q(i))`.
pub fn symmetric(n: usize) -> Result<FiniteGroup, GroupError> {
    check_positive(n)?;
    if n > 5 {
        return Err(GroupError::TooLarge((1..=n).product()));
    }
    let perms = permutations(n);
    let index = |p: &[usize]| perms.iter().position(|q| q == p).expect("closed under composition");
    let order = perms.len();
    let mut table = Vec::with_capacity(order * order);
    for p in &perms {
        for q in &perms {
            let pq: Vec<usize> = q.iter().map(|&i| p[i]).collect();
            table.push(index(&pq));
        }
    }
    let names = perms.iter().map(|p| cycle_notation(p)).collect();
    FiniteGroup::from_flat(format!("symmetric:{n}"), order, table, Some(names))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

/// 1-based cycle notation, `e` for the identity.
fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cycle.push((i + 1).to_string());
            i = p[i];
        }
        out.push('(');
        out.push_str(&cycle.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        "e".into()
    } else {
        out
    }
}

/// A structure-preserving map between two finite groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHomomorphism {
    source: FiniteGroup,
    target: FiniteGroup,
    map: Vec<usize>,
}

/// Serialized homomorphism: `map[i]` is the image of source element `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomomorphismDoc {
    pub source: GroupSpec,
    pub target: GroupSpec,
    pub map: Vec<usize>,
}

impl GroupHomomorphism {
    pub fn from_doc(doc: &HomomorphismDoc) -> Result<Self, GroupError> {
        Self::new(doc.source.resolve()?, doc.target.resolve()?, doc.map.clone())
    }

    pub fn to_doc(&self) -> HomomorphismDoc {
        HomomorphismDoc {
            source: GroupSpec::of(&self.source),
            target: GroupSpec::of(&self.target),
            map: self.map.clone(),
        }
    }

    pub fn new(source: FiniteGroup, target: FiniteGroup, map: Vec<usize>) -> Result<Self, GroupError> {
        if map.len() != source.order() {
            return Err(GroupError::MapLength { got: map.len(), expected: source.order() });
        }
        if let Some(x) = map.iter().position(|&y| y >= target.order()) {
            return Err(GroupError::MapOutOfRange(x));
        }
        for x in source.elements() {
            for y in source.elements() {
                if map[source.op(x, y)] != target.op(map[x], map[y]) {
                    return Err(GroupError::NotHomomorphism(x, y));
                }
            }
        }
        Ok(GroupHomomorphism { source, target, map })
    }

    pub fn identity(group: FiniteGroup) -> Self {
        let map = group.elements().collect();
        GroupHomomorphism { source: group.clone(), target: group, map }
    }

    /// The map sending everything to the target identity.
    pub fn trivial(source: FiniteGroup, target: FiniteGroup) -> Self {
        let map = vec![target.identity(); source.order()];
        GroupHomomorphism { source, target, map }
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// Membership mask of `f(source)` in the target.
    pub fn image_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.target.order()];
        for &y in &self.map {
            mask[y] = true;
        }
        mask
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(t: &[&[i64]]) -> Vec<Vec<i64>> {
        t.iter().map(|r| r.to_vec()).collect()
    }

    fn assert_latin(g: &FiniteGroup) {
        for a in g.elements() {
            let mut row: Vec<_> = g.elements().map(|b| g.op(a, b)).collect();
            let mut col: Vec<_> = g.elements().map(|b| g.op(b, a)).collect();
            row.sort_unstable();
            col.sort_unstable();
            assert_eq!(row, g.elements().collect::<Vec<_>>());
            assert_eq!(col, g.elements().collect::<Vec<_>>());
        }
    }

    #[test]
    fn z3_validates() {
        let g = FiniteGroup::from_cayley("z3", &rows(&[&[0, 1, 2], &[1, 2, 0], &[2, 0, 1]]), None).unwrap();
        assert_eq!(g.identity(), 0);
        assert_eq!(g.inverses(), &[0, 2, 1]);
    }

    #[test]
    fn validation_errors() {
        assert_eq!(FiniteGroup::from_cayley("m", &rows(&[&[0, 1], &[1, 1]]), None), Err(GroupError::NoInverse(1)));
        assert!(matches!(
            FiniteGroup::from_cayley("m", &rows(&[&[0, 2], &[1, 0]]), None),
            Err(GroupError::NotClosed { row: 0, col: 1, value: 2, .. })
        ));
        assert!(matches!(
            FiniteGroup::from_cayley("m", &rows(&[&[0, 1], &[1]]), None),
            Err(GroupError::NotSquare { .. })
        ));
        assert_eq!(FiniteGroup::from_cayley("m", &rows(&[&[1, 1], &[0, 0]]), None), Err(GroupError::NoIdentity));
        assert_eq!(FiniteGroup::from_cayley("m", &[], None), Err(GroupError::Empty));
        // A Latin square with identity 0 and inverses, but not associative:
        // (1*1)*2 = 0*2 = 2 while 1*(1*2) = 1*3 = 4.
        let loop5 = rows(&[&[0, 1, 2, 3, 4], &[1, 0, 3, 4, 2], &[2, 4, 0, 1, 3], &[3, 2, 4, 0, 1], &[4, 3, 1, 2, 0]]);
        match FiniteGroup::from_cayley("loop", &loop5, None) {
            Err(GroupError::NotAssociative(a, b, c)) => {
                let t = |x: usize, y: usize| loop5[x][y] as usize;
                assert_ne!(t(t(a, b), c), t(a, t(b, c)));
            }
            other => panic!("expected NotAssociative, got {other:?}"),
        }
    }

    #[test]
    fn standard_families() {
        let c4 = cyclic(4).unwrap();
        assert_eq!(c4.order(), 4);
        assert!(c4.elements().all(|x| c4.pow(x, 4) == c4.identity()));

        let v = klein4();
        assert_eq!(v.order(), 4);
        assert!(v.elements().all(|x| v.inv(x) == x));

        let s3 = symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        let (x, y) = s3.noncommuting_pair().expect("S3 is non-abelian");
        assert_ne!(s3.op(x, y), s3.op(y, x));
        assert_eq!(s3.element_name(s3.identity()), "e");

        let d4 = dihedral(4).unwrap();
        assert_eq!(d4.order(), 8);
        assert!(!d4.is_abelian());

        assert_eq!(symmetric(6), Err(GroupError::TooLarge(720)));
        assert_eq!(cyclic(121), Err(GroupError::TooLarge(121)));
        assert!(cyclic(0).is_err());

        for g in [c4, v, s3, d4, symmetric(4).unwrap(), dihedral(1).unwrap(), cyclic(1).unwrap()] {
            assert_latin(&g);
            // Re-validate the generated table from scratch.
            let doc = g.to_doc();
            assert_eq!(FiniteGroup::from_doc(&doc).unwrap(), g);
        }
    }

    #[test]
    fn products() {
        let g = Family::Product(Box::new(Family::Cyclic(2)), Box::new(Family::Cyclic(3))).build().unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.is_abelian());
        let c2 = cyclic(2).unwrap();
        let c3 = cyclic(3).unwrap();
        for a in g.elements() {
            for b in g.elements() {
                let ab = g.op(a, b);
                assert_eq!(ab / 3, c2.op(a / 3, b / 3));
                assert_eq!(ab % 3, c3.op(a % 3, b % 3));
            }
        }
        assert_latin(&g);
        let s5 = symmetric(5).unwrap();
        assert_eq!(s5.direct_product(&c2), Err(GroupError::TooLarge(240)));
    }

    #[test]
    fn family_parsing() {
        assert_eq!("cyclic:4".parse::<Family>().unwrap(), Family::Cyclic(4));
        assert_eq!("klein4".parse::<Family>().unwrap(), Family::Klein4);
        assert_eq!("symmetric:3".parse::<Family>().unwrap(), Family::Symmetric(3));
        let p: Family = "cyclic:2*klein4".parse().unwrap();
        assert_eq!(p.to_string(), "cyclic:2*klein4");
        assert!(matches!("torus:3".parse::<Family>(), Err(GroupError::UnknownFamily(_))));
        assert!(matches!("cyclic:x".parse::<Family>(), Err(GroupError::BadParameter(_))));
        assert!(matches!("cyclic".parse::<Family>(), Err(GroupError::BadParameter(_))));
    }

    #[test]
    fn group_spec_forms() {
        let spec: GroupSpec = serde_json::from_str("\"cyclic:3\"").unwrap();
        assert_eq!(spec.resolve().unwrap().order(), 3);
        let g = symmetric(3).unwrap();
        assert_eq!(GroupSpec::of(&g), GroupSpec::Family("symmetric:3".into()));
        let custom = FiniteGroup::from_cayley("mine", &rows(&[&[0, 1], &[1, 0]]), None).unwrap();
        let spec = GroupSpec::of(&custom);
        let json = serde_json::to_string(&spec).unwrap();
        let back: GroupSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back.resolve().unwrap(), custom);
    }

    #[test]
    fn element_lookup() {
        let s3 = symmetric(3).unwrap();
        let t = s3.element("(1 2)").unwrap();
        assert_eq!(s3.element_name(t), "(1 2)");
        assert_eq!(s3.element("0").unwrap(), 0);
        assert!(s3.element("9").is_err());
    }

    #[test]
    fn homomorphisms() {
        let c4 = cyclic(4).unwrap();
        let c2 = cyclic(2).unwrap();
        let f = GroupHomomorphism::new(c4.clone(), c2.clone(), vec![0, 1, 0, 1]).unwrap();
        assert_eq!(f.image_mask(), vec![true, true]);
        assert_eq!(
            GroupHomomorphism::new(c4.clone(), c2.clone(), vec![0, 1, 1, 0]),
            Err(GroupError::NotHomomorphism(1, 1))
        );
        assert!(matches!(
            GroupHomomorphism::new(c4.clone(), c2.clone(), vec![0, 1]),
            Err(GroupError::MapLength { .. })
        ));
        let t = GroupHomomorphism::trivial(c4.clone(), c2);
        assert_eq!(t.image_mask(), vec![true, false]);
        let id = GroupHomomorphism::identity(c4);
        assert_eq!(id.map(), &[0, 1, 2, 3]);
    }
}
