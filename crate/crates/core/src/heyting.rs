//! Finite Heyting algebras and the twist pair algebra `H x H^op`.
//!
//! Elements are dense `usize` ids with a label side table; every operation
//! is a precomputed table lookup. The opposite algebra is never built: pair
//! operations read the base tables with the negative coordinate dualized.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::Deserialize;
use thiserror::Error;

use crate::pbit::Implication;

/// Upper bound on algebra size for construction and validation.
pub const MAX_ELEMENTS: usize = 256;

pub type Elem = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeytingError {
    #[error("unknown element `{0}`")]
    UnknownLabel(String),
    #[error("unknown element id {0}")]
    UnknownElement(Elem),
    #[error("duplicate element `{0}`")]
    DuplicateLabel(String),
    #[error("not a partial order: {0}")]
    NotPoset(String),
    #[error("algebra has {0} elements, more than the limit of {MAX_ELEMENTS}")]
    TooLarge(usize),
    #[error("tables are not a Heyting algebra: {0}")]
    Invalid(ValidationReport),
    #[error("invalid poset JSON: {0}")]
    Json(String),
}

/// A finite partial order given by its full `<=` relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
}

#[derive(Deserialize)]
struct PosetFile {
    elements: Vec<String>,
    #[serde(default)]
    covers: Vec<(String, String)>,
}

impl Poset {
    /// Builds a poset from covering pairs `a < b`, closing reflexively and
    /// transitively. A cycle among the covers is rejected.
    pub fn from_covers<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Result<Poset, HeytingError> {
        let labels: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let index = label_index(&labels)?;
        let n = labels.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in covers {
            let lookup = |s: &S| {
                index.get(s.as_ref()).copied().ok_or_else(|| HeytingError::UnknownLabel(s.as_ref().to_string()))
            };
            let (i, j) = (lookup(a)?, lookup(b)?);
            if i == j {
                return Err(HeytingError::NotPoset(format!(
                    "cover ({}, {}) relates an element to itself",
                    labels[i], labels[j]
                )));
            }
            leq[i][j] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    let row = leq[k].clone();
                    for (dst, &src) in leq[i].iter_mut().zip(&row) {
                        *dst |= src;
                    }
                }
            }
        }
        Poset::from_relation(labels, leq)
    }

    /// Validates a full relation as reflexive, antisymmetric and transitive.
    pub fn from_relation(labels: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Poset, HeytingError> {
        label_index(&labels)?;
        let n = labels.len();
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(HeytingError::NotPoset("relation is not square over the elements".into()));
        }
        for i in 0..n {
            if !leq[i][i] {
                return Err(HeytingError::NotPoset(format!("missing reflexive pair ({}, {})", labels[i], labels[i])));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(HeytingError::NotPoset(format!("cycle between {} and {}", labels[i], labels[j])));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if leq[i][j] && leq[j][k] && !leq[i][k] {
                        return Err(HeytingError::NotPoset(format!(
                            "transitivity fails for ({}, {}) via {}",
                            labels[i], labels[k], labels[j]
                        )));
                    }
                }
            }
        }
        Ok(Poset { labels, leq })
    }

    /// Parses `{"elements": [...], "covers": [["a","b"], ...]}`.
    pub fn from_json(text: &str) -> Result<Poset, HeytingError> {
        let file: PosetFile = serde_json::from_str(text).map_err(|e| HeytingError::Json(e.to_string()))?;
        Poset::from_covers(&file.elements, &file.covers)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }
}

fn label_index(labels: &[String]) -> Result<BTreeMap<&str, usize>, HeytingError> {
    let mut index = BTreeMap::new();
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.as_str(), i).is_some() {
            return Err(HeytingError::DuplicateLabel(l.clone()));
        }
    }
    Ok(index)
}

/// Raw lattice tables, possibly violating the Heyting laws.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeTables {
    pub labels: Vec<String>,
    pub leq: Vec<Vec<bool>>,
    pub meet: Vec<Vec<Elem>>,
    pub join: Vec<Vec<Elem>>,
    pub imp: Vec<Vec<Elem>>,
}

impl LatticeTables {
    /// Derives candidate tables from an order relation.
    ///
    /// `meet`/`join` are the greatest lower / least upper bound when one
    /// exists (otherwise some maximal lower / minimal upper bound, which
    /// [`validate`] will then flag). `imp(a, b)` is the join of all `c` with
    /// `c & a <= b`, which is the relative pseudo-complement in any
    /// distributive lattice.
    pub fn from_order(labels: Vec<String>, leq: Vec<Vec<bool>>) -> LatticeTables {
        let n = labels.len();
        let bound = |i: usize, j: usize, lower: bool| -> Elem {
            let candidates: Vec<Elem> =
                (0..n).filter(|&c| if lower { leq[c][i] && leq[c][j] } else { leq[i][c] && leq[j][c] }).collect();
            let best = candidates
                .iter()
                .copied()
                .find(|&c| candidates.iter().all(|&d| if lower { leq[d][c] } else { leq[c][d] }));
            best.or_else(|| {
                candidates
                    .iter()
                    .copied()
                    .find(|&c| !candidates.iter().any(|&d| d != c && if lower { leq[c][d] } else { leq[d][c] }))
            })
            .unwrap_or(i)
        };
        let meet: Vec<Vec<Elem>> = (0..n).map(|i| (0..n).map(|j| bound(i, j, true)).collect()).collect();
        let join: Vec<Vec<Elem>> = (0..n).map(|i| (0..n).map(|j| bound(i, j, false)).collect()).collect();
        let bottom = (0..n).find(|&b| (0..n).all(|x| leq[b][x]));
        let imp = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| (0..n).filter(|&c| leq[meet[c][a]][b]).fold(bottom.unwrap_or(0), |acc, c| join[acc][c]))
                    .collect()
            })
            .collect();
        LatticeTables { labels, leq, meet, join, imp }
    }

    fn len(&self) -> usize {
        self.labels.len()
    }
}

/// A law violated by candidate tables, with its witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Malformed(String),
    NotReflexive(Elem),
    NotAntisymmetric(Elem, Elem),
    NotTransitive(Elem, Elem, Elem),
    MeetNotGreatestLowerBound(Elem, Elem),
    JoinNotLeastUpperBound(Elem, Elem),
    NoBottom,
    NoTop,
    Distributivity(Elem, Elem, Elem),
    Residuation(Elem, Elem, Elem),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Malformed(m) => write!(f, "malformed tables: {m}"),
            Violation::NotReflexive(a) => write!(f, "reflexivity fails at {a}"),
            Violation::NotAntisymmetric(a, b) => write!(f, "antisymmetry fails for ({a}, {b})"),
            Violation::NotTransitive(a, b, c) => write!(f, "transitivity fails for ({a}, {b}, {c})"),
            Violation::MeetNotGreatestLowerBound(a, b) => {
                write!(f, "meet({a}, {b}) is not the greatest lower bound")
            }
            Violation::JoinNotLeastUpperBound(a, b) => {
                write!(f, "join({a}, {b}) is not the least upper bound")
            }
            Violation::NoBottom => write!(f, "no bottom element"),
            Violation::NoTop => write!(f, "no top element"),
            Violation::Distributivity(a, b, c) => {
                write!(f, "distributivity fails for ({a}, {b}, {c})")
            }
            Violation::Residuation(a, b, c) => {
                write!(f, "residuation fails: c={c} <= ({a} -> {b}) disagrees with c & {a} <= {b}")
            }
        }
    }
}

/// Every law violation found by [`validate`]; empty means a Heyting algebra.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "no violations");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Exhaustively checks the order, lattice, distributivity and residuation
/// laws. Reports the first witness for each kind of law per element tuple.
pub fn validate(t: &LatticeTables) -> Result<ValidationReport, HeytingError> {
    let n = t.len();
    if n > MAX_ELEMENTS {
        return Err(HeytingError::TooLarge(n));
    }
    let mut report = ValidationReport::default();
    let square = |m: &Vec<Vec<Elem>>| m.len() == n && m.iter().all(|r| r.len() == n && r.iter().all(|&e| e < n));
    if t.leq.len() != n || t.leq.iter().any(|r| r.len() != n) {
        report.violations.push(Violation::Malformed("leq is not n x n".into()));
        return Ok(report);
    }
    for (name, m) in [("meet", &t.meet), ("join", &t.join), ("imp", &t.imp)] {
        if !square(m) {
            report.violations.push(Violation::Malformed(format!("{name} is not a total n x n table")));
        }
    }
    if !report.is_empty() {
        return Ok(report);
    }
    let le = |a: Elem, b: Elem| t.leq[a][b];
    let v = &mut report.violations;
    for a in 0..n {
        if !le(a, a) {
            v.push(Violation::NotReflexive(a));
        }
        for b in 0..n {
            if a < b && le(a, b) && le(b, a) {
                v.push(Violation::NotAntisymmetric(a, b));
            }
            for c in 0..n {
                if le(a, b) && le(b, c) && !le(a, c) {
                    v.push(Violation::NotTransitive(a, b, c));
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            let m = t.meet[a][b];
            if !(le(m, a) && le(m, b) && (0..n).all(|c| !(le(c, a) && le(c, b)) || le(c, m))) {
                v.push(Violation::MeetNotGreatestLowerBound(a, b));
            }
            let j = t.join[a][b];
            if !(le(a, j) && le(b, j) && (0..n).all(|c| !(le(a, c) && le(b, c)) || le(j, c))) {
                v.push(Violation::JoinNotLeastUpperBound(a, b));
            }
        }
    }
    if n > 0 {
        if !(0..n).any(|b| (0..n).all(|x| le(b, x))) {
            v.push(Violation::NoBottom);
        }
        if !(0..n).any(|top| (0..n).all(|x| le(x, top))) {
            v.push(Violation::NoTop);
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if t.meet[a][t.join[b][c]] != t.join[t.meet[a][b]][t.meet[a][c]] {
                    v.push(Violation::Distributivity(a, b, c));
                }
                if le(c, t.imp[a][b]) != le(t.meet[c][a], b) {
                    v.push(Violation::Residuation(a, b, c));
                }
            }
        }
    }
    Ok(report)
}

/// A validated finite Heyting algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteHeyting {
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
    meet: Vec<Vec<Elem>>,
    join: Vec<Vec<Elem>>,
    imp: Vec<Vec<Elem>>,
    bottom: Elem,
    top: Elem,
}

impl FiniteHeyting {
    pub fn from_tables(t: LatticeTables) -> Result<FiniteHeyting, HeytingError> {
        let report = validate(&t)?;
        if !report.is_empty() {
            return Err(HeytingError::Invalid(report));
        }
        let n = t.len();
        if n == 0 {
            return Err(HeytingError::Invalid(ValidationReport {
                violations: vec![Violation::NoBottom, Violation::NoTop],
            }));
        }
        let bottom = (0..n).find(|&b| (0..n).all(|x| t.leq[b][x])).expect("validated");
        let top = (0..n).find(|&b| (0..n).all(|x| t.leq[x][b])).expect("validated");
        Ok(FiniteHeyting { labels: t.labels, leq: t.leq, meet: t.meet, join: t.join, imp: t.imp, bottom, top })
    }

    /// Builds and validates from an order relation alone.
    pub fn from_order(labels: Vec<String>, leq: Vec<Vec<bool>>) -> Result<FiniteHeyting, HeytingError> {
        if labels.len() > MAX_ELEMENTS {
            return Err(HeytingError::TooLarge(labels.len()));
        }
        FiniteHeyting::from_tables(LatticeTables::from_order(labels, leq))
    }

    /// The two-element Boolean algebra `{0, 1}`.
    pub fn boolean() -> FiniteHeyting {
        FiniteHeyting::chain(2)
    }

    /// The chain `0 < 1 < ... < n-1`, labelled by position.
    pub fn chain(n: usize) -> FiniteHeyting {
        assert!((1..=MAX_ELEMENTS).contains(&n), "chain length out of range");
        let labels = (0..n).map(|i| i.to_string()).collect();
        let leq = (0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect();
        FiniteHeyting::from_order(labels, leq).expect("chains are Heyting algebras")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.len()
    }

    pub fn label(&self, e: Elem) -> &str {
        &self.labels[e]
    }

    pub fn element(&self, label: &str) -> Result<Elem, HeytingError> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| HeytingError::UnknownLabel(label.to_string()))
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a][b]
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a][b]
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a][b]
    }

    /// Relative pseudo-complement, checked variant.
    pub fn implication(&self, a: Elem, b: Elem) -> Result<Elem, HeytingError> {
        let n = self.len();
        for e in [a, b] {
            if e >= n {
                return Err(HeytingError::UnknownElement(e));
            }
        }
        Ok(self.imp[a][b])
    }

    pub fn imp(&self, a: Elem, b: Elem) -> Elem {
        self.imp[a][b]
    }

    /// Pseudo-complement `a -> bottom`.
    pub fn complement(&self, a: Elem) -> Elem {
        self.imp[a][self.bottom]
    }

    pub fn tables(&self) -> LatticeTables {
        LatticeTables {
            labels: self.labels.clone(),
            leq: self.leq.clone(),
            meet: self.meet.clone(),
            join: self.join.clone(),
            imp: self.imp.clone(),
        }
    }
}

/// Lattice of down-sets of `poset` under inclusion.
///
/// Down-sets are generated breadth-first by adding one element whose strict
/// lower set is already present; the result is labelled by the sorted member
/// list, e.g. `{a,b}`.
pub fn downset_algebra(poset: &Poset) -> Result<FiniteHeyting, HeytingError> {
    let n = poset.len();
    let mut seen: BTreeSet<Vec<bool>> = BTreeSet::new();
    let mut queue = VecDeque::from([vec![false; n]]);
    seen.insert(vec![false; n]);
    while let Some(set) = queue.pop_front() {
        for x in 0..n {
            if set[x] {
                continue;
            }
            if (0..n).all(|y| y == x || !poset.leq(y, x) || set[y]) {
                let mut next = set.clone();
                next[x] = true;
                if seen.insert(next.clone()) {
                    if seen.len() > MAX_ELEMENTS {
                        return Err(HeytingError::TooLarge(seen.len()));
                    }
                    queue.push_back(next);
                }
            }
        }
    }
    let sets: Vec<Vec<bool>> = seen.into_iter().collect();
    let labels = sets
        .iter()
        .map(|s| {
            let members: Vec<&str> = (0..n).filter(|&i| s[i]).map(|i| poset.labels[i].as_str()).collect();
            format!("{{{}}}", members.join(","))
        })
        .collect::<Vec<_>>();
    let m = sets.len();
    let index: BTreeMap<&Vec<bool>, Elem> = sets.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let subset = |a: &[bool], b: &[bool]| a.iter().zip(b).all(|(&x, &y)| !x || y);
    let leq: Vec<Vec<bool>> = sets.iter().map(|a| sets.iter().map(|b| subset(a, b)).collect()).collect();
    let combine = |f: fn(bool, bool) -> bool| -> Vec<Vec<Elem>> {
        sets.iter()
            .map(|a| {
                sets.iter()
                    .map(|b| {
                        let c: Vec<bool> = a.iter().zip(b).map(|(&x, &y)| f(x, y)).collect();
                        index[&c]
                    })
                    .collect()
            })
            .collect()
    };
    let meet = combine(|x, y| x && y);
    let join = combine(|x, y| x || y);
    // largest down-set c with c & a <= b, i.e. the union of all such c
    let imp: Vec<Vec<Elem>> = (0..m)
        .map(|a| {
            (0..m)
                .map(|b| {
                    let mut acc = vec![false; n];
                    for c in 0..m {
                        if leq[meet[c][a]][b] {
                            for (slot, &bit) in acc.iter_mut().zip(&sets[c]) {
                                *slot |= bit;
                            }
                        }
                    }
                    index[&acc]
                })
                .collect()
        })
        .collect();
    FiniteHeyting::from_tables(LatticeTables { labels, leq, meet, join, imp })
}

/// An element of `H x H^op`: truth coordinate and falsity coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pair {
    pub pos: Elem,
    pub neg: Elem,
}

/// The CD-logic algebra on pairs of base elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairAlgebra {
    base: FiniteHeyting,
    implication: Implication,
}

impl PairAlgebra {
    pub fn new(base: FiniteHeyting) -> PairAlgebra {
        PairAlgebra { base, implication: Implication::Twist }
    }

    pub fn with_implication(base: FiniteHeyting, implication: Implication) -> PairAlgebra {
        PairAlgebra { base, implication }
    }

    pub fn base(&self) -> &FiniteHeyting {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.base.len() * self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = Pair> + '_ {
        self.base.elements().flat_map(move |pos| self.base.elements().map(move |neg| Pair { pos, neg }))
    }

    pub fn unit1(&self) -> Pair {
        Pair { pos: self.base.top(), neg: self.base.bottom() }
    }

    pub fn unit0(&self) -> Pair {
        Pair { pos: self.base.bottom(), neg: self.base.top() }
    }

    pub fn unit_dash(&self) -> Pair {
        Pair { pos: self.base.bottom(), neg: self.base.bottom() }
    }

    pub fn unit_i(&self) -> Pair {
        Pair { pos: self.base.top(), neg: self.base.top() }
    }

    pub fn meet(&self, a: Pair, b: Pair) -> Pair {
        Pair { pos: self.base.meet(a.pos, b.pos), neg: self.base.join(a.neg, b.neg) }
    }

    pub fn join(&self, a: Pair, b: Pair) -> Pair {
        Pair { pos: self.base.join(a.pos, b.pos), neg: self.base.meet(a.neg, b.neg) }
    }

    pub fn arrow(&self, a: Pair, b: Pair) -> Pair {
        let neg = match self.implication {
            Implication::Twist => self.base.meet(a.pos, b.neg),
            Implication::Literal => self.base.meet(a.neg, b.neg),
        };
        Pair { pos: self.base.imp(a.pos, b.pos), neg }
    }

    pub fn neg(&self, a: Pair) -> Pair {
        Pair { pos: a.neg, neg: a.pos }
    }

    pub fn demi(&self, a: Pair) -> Pair {
        Pair { pos: self.base.complement(a.neg), neg: a.pos }
    }

    pub fn strong_imp(&self, a: Pair, b: Pair) -> Pair {
        self.meet(self.arrow(a, b), self.arrow(self.neg(b), self.neg(a)))
    }

    pub fn tensor(&self, a: Pair, b: Pair) -> Pair {
        self.neg(self.strong_imp(a, self.neg(b)))
    }

    pub fn par(&self, a: Pair, b: Pair) -> Pair {
        self.neg(self.tensor(self.neg(a), self.neg(b)))
    }

    pub fn bang(&self, a: Pair) -> Pair {
        self.meet(a, self.unit_i())
    }

    pub fn gamma(&self, a: Pair) -> Pair {
        self.join(a, self.unit_i())
    }

    pub fn weak_bang(&self, a: Pair) -> Pair {
        self.meet(a, self.unit_dash())
    }

    pub fn weak_gamma(&self, a: Pair) -> Pair {
        self.join(a, self.unit_dash())
    }

    pub fn is_designated(&self, a: Pair) -> bool {
        a.pos == self.base.top()
    }

    pub fn format(&self, a: Pair) -> String {
        format!("({},{})", self.base.label(a.pos), self.base.label(a.neg))
    }
}
