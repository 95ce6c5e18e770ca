use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;
use std::hash::Hash;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::context::{DegreePair, FormalContext, GradeChain, ParaReading};
use super::FcaError;

/// Object limit of [`Strategy::BruteForce`] and of [`literal_fixpoints`].
pub const MAX_BRUTE_FORCE_OBJECTS: usize = 20;

/// Concept limit of closure enumeration.
pub const MAX_CONCEPTS: usize = 1 << 20;

/// Crisp or para concept.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Concept {
    pub extent: FixedBitSet,
    pub intent: FixedBitSet,
}

/// Fuzzy concept: grade pairs per object and per property.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FuzzyConcept {
    pub extent: Vec<DegreePair>,
    pub intent: Vec<DegreePair>,
}

/// Shared shape of crisp and fuzzy concepts, used by lattice operations.
pub trait LatticeConcept: Clone {
    type Set: Clone + Eq + Hash;

    fn extent(&self) -> &Self::Set;
    fn intent(&self) -> &Self::Set;
    /// Intersection, or pointwise minimum.
    fn glb(a: &Self::Set, b: &Self::Set) -> Self::Set;
    /// Inclusion, or pointwise `<=` on both components.
    fn subset(a: &Self::Set, b: &Self::Set) -> bool;
    /// Key giving the lexicographic extent order.
    fn sort_key(&self) -> Vec<u32>;
    fn extent_labels(&self, ctx: &FormalContext) -> Vec<String>;
    fn intent_labels(&self, ctx: &FormalContext) -> Vec<String>;

    /// Node label `extent|intent`.
    fn label(&self, ctx: &FormalContext) -> String {
        format!("{}|{}", self.extent_labels(ctx).join(","), self.intent_labels(ctx).join(","))
    }
}

impl LatticeConcept for Concept {
    type Set = FixedBitSet;

    fn extent(&self) -> &FixedBitSet {
        &self.extent
    }

    fn intent(&self) -> &FixedBitSet {
        &self.intent
    }

    fn glb(a: &FixedBitSet, b: &FixedBitSet) -> FixedBitSet {
        let mut out = a.clone();
        out.intersect_with(b);
        out
    }

    fn subset(a: &FixedBitSet, b: &FixedBitSet) -> bool {
        a.is_subset(b)
    }

    fn sort_key(&self) -> Vec<u32> {
        self.extent.ones().map(|i| i as u32).collect()
    }

    fn extent_labels(&self, ctx: &FormalContext) -> Vec<String> {
        ctx.object_names(&self.extent).into_iter().map(String::from).collect()
    }

    fn intent_labels(&self, ctx: &FormalContext) -> Vec<String> {
        ctx.property_names(&self.intent).into_iter().map(String::from).collect()
    }
}

fn format_degree(chain: GradeChain, g: u32) -> String {
    let s = format!("{:.6}", chain.value(g));
    let s = s.trim_end_matches('0');
    s.trim_end_matches('.').to_string()
}

fn fuzzy_labels(chain: GradeChain, names: &[String], set: &[DegreePair]) -> Vec<String> {
    names
        .iter()
        .zip(set)
        .filter(|(_, &(p, n))| p > 0 || n > 0)
        .map(|(name, &(p, n))| format!("{name}:({},{})", format_degree(chain, p), format_degree(chain, n)))
        .collect()
}

impl LatticeConcept for FuzzyConcept {
    type Set = Vec<DegreePair>;

    fn extent(&self) -> &Vec<DegreePair> {
        &self.extent
    }

    fn intent(&self) -> &Vec<DegreePair> {
        &self.intent
    }

    fn glb(a: &Vec<DegreePair>, b: &Vec<DegreePair>) -> Vec<DegreePair> {
        a.iter().zip(b).map(|(x, y)| (x.0.min(y.0), x.1.min(y.1))).collect()
    }

    fn subset(a: &Vec<DegreePair>, b: &Vec<DegreePair>) -> bool {
        a.iter().zip(b).all(|(x, y)| x.0 <= y.0 && x.1 <= y.1)
    }

    fn sort_key(&self) -> Vec<u32> {
        self.extent.iter().flat_map(|&(p, n)| [p, n]).collect()
    }

    fn extent_labels(&self, ctx: &FormalContext) -> Vec<String> {
        fuzzy_labels(ctx.chain().unwrap_or_default(), ctx.objects(), &self.extent)
    }

    fn intent_labels(&self, ctx: &FormalContext) -> Vec<String> {
        fuzzy_labels(ctx.chain().unwrap_or_default(), ctx.properties(), &self.intent)
    }
}

impl FuzzyConcept {
    /// Intent as a property map of real degrees.
    pub fn property_map(&self, ctx: &FormalContext) -> super::PropertyMap {
        let chain = ctx.chain().unwrap_or_default();
        ctx.properties()
            .iter()
            .zip(&self.intent)
            .map(|(p, &(a, b))| (p.clone(), (chain.value(a), chain.value(b))))
            .collect()
    }
}

/// Concepts ordered by extent inclusion.
#[derive(Debug, Clone, PartialEq)]
pub struct ConceptLattice<C> {
    concepts: Vec<C>,
}

impl<C: LatticeConcept> ConceptLattice<C> {
    /// Wraps a concept list as given, sorted by extent. No checks are made;
    /// see [`verify_lattice`].
    pub fn from_concepts(mut concepts: Vec<C>) -> Self {
        concepts.sort_by_cached_key(|c| c.sort_key());
        ConceptLattice { concepts }
    }

    pub fn concepts(&self) -> &[C] {
        &self.concepts
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    /// `concepts[i] <= concepts[j]` by extent.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        C::subset(self.concepts[i].extent(), self.concepts[j].extent())
    }

    /// Concept whose extent contains every other extent.
    pub fn top(&self) -> Option<usize> {
        (0..self.len()).find(|&i| (0..self.len()).all(|j| self.leq(j, i)))
    }

    /// Concept whose extent is contained in every other extent.
    pub fn bottom(&self) -> Option<usize> {
        (0..self.len()).find(|&i| (0..self.len()).all(|j| self.leq(i, j)))
    }

    /// Covering pairs `(lower, upper)`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let lt = |i: usize, j: usize| i != j && self.leq(i, j) && !self.leq(j, i);
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if lt(i, j) && !(0..n).any(|k| lt(i, k) && lt(k, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Graphviz digraph with one node per concept and one edge per cover.
    pub fn to_dot(&self, ctx: &FormalContext) -> String {
        let mut s = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n");
        for (i, c) in self.concepts.iter().enumerate() {
            let label = c.label(ctx).replace('\\', "\\\\").replace('"', "\\\"");
            let _ = writeln!(s, "  c{i} [label=\"{label}\"];");
        }
        for (lo, hi) in self.covers() {
            let _ = writeln!(s, "  c{lo} -> c{hi};");
        }
        s.push_str("}\n");
        s
    }
}

/// A failed lattice check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LatticeViolation {
    /// The extent intersection of two concepts is no concept's extent.
    MissingMeet {
        a: usize,
        b: usize,
    },
    /// The intent intersection of two concepts is no concept's intent.
    MissingJoin {
        a: usize,
        b: usize,
    },
    /// Two concepts share an extent.
    DuplicateExtent {
        a: usize,
        b: usize,
    },
    NoTop,
    NoBottom,
}

impl std::fmt::Display for LatticeViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LatticeViolation::MissingMeet { a, b } => write!(f, "no meet for concepts {a} and {b}"),
            LatticeViolation::MissingJoin { a, b } => write!(f, "no join for concepts {a} and {b}"),
            LatticeViolation::DuplicateExtent { a, b } => write!(f, "concepts {a} and {b} share an extent"),
            LatticeViolation::NoTop => f.write_str("no top concept"),
            LatticeViolation::NoBottom => f.write_str("no bottom concept"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct LatticeReport {
    pub violations: Vec<LatticeViolation>,
}

impl LatticeReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks pairwise meets and joins, uniqueness of extents, and the bounds.
pub fn verify_lattice<C: LatticeConcept>(l: &ConceptLattice<C>) -> LatticeReport {
    let cs = l.concepts();
    let mut violations = Vec::new();
    let mut extents: HashMap<&C::Set, usize> = HashMap::new();
    for (i, c) in cs.iter().enumerate() {
        if let Some(&j) = extents.get(c.extent()) {
            violations.push(LatticeViolation::DuplicateExtent { a: j, b: i });
        } else {
            extents.insert(c.extent(), i);
        }
    }
    let intents: HashSet<&C::Set> = cs.iter().map(|c| c.intent()).collect();
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            if !extents.contains_key(&C::glb(cs[i].extent(), cs[j].extent())) {
                violations.push(LatticeViolation::MissingMeet { a: i, b: j });
            }
            if !intents.contains(&C::glb(cs[i].intent(), cs[j].intent())) {
                violations.push(LatticeViolation::MissingJoin { a: i, b: j });
            }
        }
    }
    if l.top().is_none() {
        violations.push(LatticeViolation::NoTop);
    }
    if l.bottom().is_none() {
        violations.push(LatticeViolation::NoBottom);
    }
    LatticeReport { violations }
}

/// Enumeration procedure for crisp and para contexts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Closed extents in lectic order.
    #[default]
    Closure,
    /// Every subset of objects, kept when it is a fixpoint.
    BruteForce,
}

/// All concepts of a crisp or para context.
pub fn enumerate_concepts(ctx: &FormalContext) -> Result<ConceptLattice<Concept>, FcaError> {
    enumerate_concepts_with(ctx, Strategy::Closure)
}

pub fn enumerate_concepts_with(ctx: &FormalContext, strategy: Strategy) -> Result<ConceptLattice<Concept>, FcaError> {
    ctx.require_two_valued()?;
    let concepts = match strategy {
        Strategy::Closure => next_closure(ctx)?,
        Strategy::BruteForce => brute_force(ctx, ParaReading::Designated)?,
    };
    Ok(ConceptLattice::from_concepts(concepts))
}

fn next_closure(ctx: &FormalContext) -> Result<Vec<Concept>, FcaError> {
    let n = ctx.objects().len();
    let concept = |extent: FixedBitSet| -> Result<Concept, FcaError> {
        let intent = ctx.derive_properties(&extent)?;
        Ok(Concept { extent: ctx.derive_objects(&intent)?, intent })
    };
    let mut current = concept(FixedBitSet::with_capacity(n))?;
    let mut out = Vec::new();
    'outer: loop {
        if out.len() >= MAX_CONCEPTS {
            return Err(FcaError::Capacity(format!("more than {MAX_CONCEPTS} concepts")));
        }
        out.push(current.clone());
        for i in (0..n).rev() {
            if current.extent.contains(i) {
                continue;
            }
            let mut seed = current.extent.clone();
            for j in i..n {
                seed.set(j, false);
            }
            seed.insert(i);
            let next = concept(seed)?;
            if (0..i).all(|j| next.extent.contains(j) == current.extent.contains(j)) {
                current = next;
                continue 'outer;
            }
        }
        break;
    }
    Ok(out)
}

fn brute_force(ctx: &FormalContext, reading: ParaReading) -> Result<Vec<Concept>, FcaError> {
    let n = ctx.objects().len();
    if n > MAX_BRUTE_FORCE_OBJECTS {
        return Err(FcaError::Capacity(format!(
            "{n} objects exceed the brute-force limit of {MAX_BRUTE_FORCE_OBJECTS}; use closure enumeration"
        )));
    }
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << n) {
        let mut extent = FixedBitSet::with_capacity(n);
        for o in 0..n {
            if mask >> o & 1 == 1 {
                extent.insert(o);
            }
        }
        let intent = ctx.derive_properties(&extent)?;
        if ctx.derive_objects_with(&intent, reading)? == extent {
            out.push(Concept { extent, intent });
        }
    }
    Ok(out)
}

/// Fixpoints of the literal para reading, found by scanning every extent.
/// These need not form a lattice.
pub fn literal_fixpoints(ctx: &FormalContext) -> Result<ConceptLattice<Concept>, FcaError> {
    ctx.require_two_valued()?;
    Ok(ConceptLattice::from_concepts(brute_force(ctx, ParaReading::Literal)?))
}

type GradedConcept = (Vec<u32>, Vec<u32>);

/// Concepts of one fuzzy component: intents are meets of the generators
/// `({k/o})↑` together with the top intent.
fn fuzzy_component(
    chain: GradeChain,
    n_obj: usize,
    n_prop: usize,
    up: impl Fn(&[u32]) -> Vec<u32>,
    down: impl Fn(&[u32]) -> Vec<u32>,
) -> Result<Vec<GradedConcept>, FcaError> {
    let mut generators = Vec::new();
    for o in 0..n_obj {
        for k in 1..=chain.top() {
            let mut single = vec![0; n_obj];
            single[o] = k;
            generators.push(up(&single));
        }
    }
    let top = vec![chain.top(); n_prop];
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::from([top.clone()]);
    let mut work = vec![top];
    while let Some(x) = work.pop() {
        for g in &generators {
            let y: Vec<u32> = x.iter().zip(g).map(|(a, b)| *a.min(b)).collect();
            if seen.len() >= MAX_CONCEPTS {
                return Err(FcaError::Capacity(format!("more than {MAX_CONCEPTS} fuzzy intents")));
            }
            if seen.insert(y.clone()) {
                work.push(y);
            }
        }
    }
    Ok(seen.into_iter().map(|intent| (down(&intent), intent)).collect())
}

/// All concepts of a fuzzy context. The positive and negative grades form
/// independent Galois connections, so the concepts are all pairings of a
/// positive-component concept with a negative-component one.
pub fn enumerate_fuzzy_concepts(ctx: &FormalContext) -> Result<ConceptLattice<FuzzyConcept>, FcaError> {
    let (chain, _, _) = ctx.fuzzy_parts()?;
    let (no, np) = (ctx.objects().len(), ctx.properties().len());
    let lift =
        |v: &[u32], neg: bool| -> Vec<DegreePair> { v.iter().map(|&g| if neg { (0, g) } else { (g, 0) }).collect() };
    let pick =
        |v: Vec<DegreePair>, neg: bool| -> Vec<u32> { v.into_iter().map(|(p, n)| if neg { n } else { p }).collect() };
    let component = |neg: bool| {
        fuzzy_component(
            chain,
            no,
            np,
            |e| pick(ctx.derive_fuzzy_properties(&lift(e, neg)).expect("valid extent"), neg),
            |i| pick(ctx.derive_fuzzy_objects(&lift(i, neg)).expect("valid intent"), neg),
        )
    };
    let pos = component(false)?;
    let neg = component(true)?;
    if pos.len().saturating_mul(neg.len()) > MAX_CONCEPTS {
        return Err(FcaError::Capacity(format!("more than {MAX_CONCEPTS} fuzzy concepts")));
    }
    let zip = |a: &[u32], b: &[u32]| -> Vec<DegreePair> { a.iter().copied().zip(b.iter().copied()).collect() };
    let mut concepts = Vec::with_capacity(pos.len() * neg.len());
    for (pe, pi) in &pos {
        for (ne, ni) in &neg {
            concepts.push(FuzzyConcept { extent: zip(pe, ne), intent: zip(pi, ni) });
        }
    }
    Ok(ConceptLattice::from_concepts(concepts))
}
