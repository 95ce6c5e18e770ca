use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use serde_json::Value;

use super::FcaError;
use crate::pbit::PBit;

/// Incidence kind of a [`FormalContext`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Crisp,
    Para,
    Fuzzy,
}

impl Mode {
    pub const fn name(self) -> &'static str {
        match self {
            Mode::Crisp => "crisp",
            Mode::Para => "para",
            Mode::Fuzzy => "fuzzy",
        }
    }
}

/// How para-mode incidences enter the derivation operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ParaReading {
    /// Both operators require a designated incidence (`T` or `B`).
    #[default]
    Designated,
    /// Object derivation requires `N` or `F` on every property. Not a Galois
    /// connection; exposed for comparison.
    Literal,
}

/// Finite chain of fuzzy degrees `{0, 1/steps, ..., 1}`, stored as step indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GradeChain {
    steps: u32,
}

pub type Grade = u32;

/// Positive and negative membership grades.
pub type DegreePair = (Grade, Grade);

pub const DEFAULT_GRADES: u32 = 4;

impl Default for GradeChain {
    fn default() -> Self {
        GradeChain { steps: DEFAULT_GRADES }
    }
}

impl GradeChain {
    pub fn new(steps: u32) -> Result<Self, FcaError> {
        if steps == 0 {
            return Err(FcaError::Format("grade chain needs at least one step".into()));
        }
        Ok(GradeChain { steps })
    }

    pub fn steps(self) -> u32 {
        self.steps
    }

    pub fn top(self) -> Grade {
        self.steps
    }

    pub fn value(self, g: Grade) -> f64 {
        g as f64 / self.steps as f64
    }

    /// Snaps a degree in `[0, 1]` onto the chain, rejecting off-chain values.
    pub fn grade(self, value: f64) -> Result<Grade, FcaError> {
        let scaled = value * self.steps as f64;
        let g = scaled.round();
        if !(0.0..=1.0).contains(&value) || (scaled - g).abs() > 1e-9 {
            return Err(FcaError::OffChain { value, steps: self.steps });
        }
        Ok(g as Grade)
    }
}

/// Residuated implication on a grade chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum FuzzyImplication {
    /// `a -> b = 1` if `a <= b`, else `b`.
    #[default]
    Godel,
    /// `min(1, 1 - a + b)`.
    Lukasiewicz,
}

impl FuzzyImplication {
    pub fn apply(self, chain: GradeChain, a: Grade, b: Grade) -> Grade {
        match self {
            FuzzyImplication::Godel => {
                if a <= b {
                    chain.top()
                } else {
                    b
                }
            }
            FuzzyImplication::Lukasiewicz => chain.top().min(chain.top() - a + b),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Incidence {
    Crisp(Vec<Vec<bool>>),
    Para(Vec<Vec<PBit>>),
    Fuzzy { chain: GradeChain, implication: FuzzyImplication, table: Vec<Vec<DegreePair>> },
}

/// Objects x properties incidence table.
#[derive(Debug, Clone, PartialEq)]
pub struct FormalContext {
    objects: Vec<String>,
    properties: Vec<String>,
    incidence: Incidence,
}

fn check_unique(kind: &str, names: &[String]) -> Result<(), FcaError> {
    let mut seen = std::collections::BTreeSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(FcaError::Format(format!("duplicate {kind} `{n}`")));
        }
    }
    Ok(())
}

fn check_shape<T>(objects: &[String], properties: &[String], table: &[Vec<T>]) -> Result<(), FcaError> {
    if table.len() != objects.len() || table.iter().any(|r| r.len() != properties.len()) {
        return Err(FcaError::Format("incidence table does not match objects x properties".into()));
    }
    check_unique("object", objects)?;
    check_unique("property", properties)
}

impl FormalContext {
    pub fn crisp(objects: Vec<String>, properties: Vec<String>, table: Vec<Vec<bool>>) -> Result<Self, FcaError> {
        check_shape(&objects, &properties, &table)?;
        Ok(FormalContext { objects, properties, incidence: Incidence::Crisp(table) })
    }

    pub fn para(objects: Vec<String>, properties: Vec<String>, table: Vec<Vec<PBit>>) -> Result<Self, FcaError> {
        check_shape(&objects, &properties, &table)?;
        Ok(FormalContext { objects, properties, incidence: Incidence::Para(table) })
    }

    pub fn fuzzy(
        objects: Vec<String>,
        properties: Vec<String>,
        chain: GradeChain,
        implication: FuzzyImplication,
        table: Vec<Vec<DegreePair>>,
    ) -> Result<Self, FcaError> {
        check_shape(&objects, &properties, &table)?;
        if table.iter().flatten().any(|&(p, n)| p > chain.top() || n > chain.top()) {
            return Err(FcaError::Format("grade index beyond the chain top".into()));
        }
        Ok(FormalContext { objects, properties, incidence: Incidence::Fuzzy { chain, implication, table } })
    }

    /// Fuzzy context whose grades are the evidence bits of a para context.
    pub fn fuzzy_from_para(para: &FormalContext, implication: FuzzyImplication) -> Result<Self, FcaError> {
        let Incidence::Para(t) = &para.incidence else {
            return Err(FcaError::WrongMode { expected: "para", found: para.mode().name() });
        };
        let table = t.iter().map(|r| r.iter().map(|v| (v.pos() as Grade, v.neg() as Grade)).collect()).collect();
        FormalContext::fuzzy(para.objects.clone(), para.properties.clone(), GradeChain::new(1)?, implication, table)
    }

    /// Crisp context of the positive bits of a para context.
    pub fn positive_projection(&self) -> Result<Self, FcaError> {
        self.projection(PBit::pos)
    }

    /// Crisp context of the negative bits of a para context.
    pub fn negative_projection(&self) -> Result<Self, FcaError> {
        self.projection(PBit::neg)
    }

    fn projection(&self, bit: fn(PBit) -> bool) -> Result<Self, FcaError> {
        let Incidence::Para(t) = &self.incidence else {
            return Err(FcaError::WrongMode { expected: "para", found: self.mode().name() });
        };
        let table = t.iter().map(|r| r.iter().map(|&v| bit(v)).collect()).collect();
        FormalContext::crisp(self.objects.clone(), self.properties.clone(), table)
    }

    /// Parses the context JSON format.
    ///
    /// Entries are `[o, p]` or `[o, p, true|false|"T"|...]` in crisp mode,
    /// `[o, p, "B"]` in para mode and `[o, p, pos, neg]` in fuzzy mode.
    /// Missing entries are 0, `N` and `(0,0)` respectively. Fuzzy files may
    /// set `"grades"` (default 4) and `"implication"` (`"godel"` or
    /// `"lukasiewicz"`).
    pub fn from_json(text: &str) -> Result<Self, FcaError> {
        let root: Value = serde_json::from_str(text).map_err(|e| FcaError::Format(e.to_string()))?;
        let names = |key: &str| -> Result<Vec<String>, FcaError> {
            serde_json::from_value(root.get(key).cloned().unwrap_or(Value::Null))
                .map_err(|e| FcaError::Format(format!("`{key}`: {e}")))
        };
        let objects = names("objects")?;
        let properties = names("properties")?;
        check_unique("object", &objects)?;
        check_unique("property", &properties)?;
        let mode = match root.get("mode").and_then(Value::as_str) {
            Some("crisp") => Mode::Crisp,
            Some("para") | None => Mode::Para,
            Some("fuzzy") => Mode::Fuzzy,
            Some(other) => return Err(FcaError::Format(format!("unknown mode `{other}`"))),
        };
        let obj_index: BTreeMap<&str, usize> = objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
        let prop_index: BTreeMap<&str, usize> = properties.iter().enumerate().map(|(i, p)| (p.as_str(), i)).collect();
        let entries = match root.get("incidence") {
            None => Vec::new(),
            Some(Value::Array(a)) => a.clone(),
            Some(_) => return Err(FcaError::Format("`incidence` must be an array".into())),
        };
        let chain = match root.get("grades") {
            None => GradeChain::default(),
            Some(v) => GradeChain::new(
                v.as_u64()
                    .and_then(|g| u32::try_from(g).ok())
                    .ok_or_else(|| FcaError::Format("`grades` must be a positive integer".into()))?,
            )?,
        };
        let implication = match root.get("implication").and_then(Value::as_str) {
            None | Some("godel") => FuzzyImplication::Godel,
            Some("lukasiewicz") => FuzzyImplication::Lukasiewicz,
            Some(other) => return Err(FcaError::Format(format!("unknown implication `{other}`"))),
        };

        let (no, np) = (objects.len(), properties.len());
        let mut crisp = vec![vec![false; np]; no];
        let mut para = vec![vec![PBit::Neither; np]; no];
        let mut fuzzy = vec![vec![(0, 0); np]; no];
        for (k, entry) in entries.iter().enumerate() {
            let bad = |msg: &str| FcaError::Format(format!("incidence entry {k}: {msg}"));
            let fields = entry.as_array().ok_or_else(|| bad("not an array"))?;
            let (o, p) = match (fields.first().and_then(Value::as_str), fields.get(1).and_then(Value::as_str)) {
                (Some(o), Some(p)) => (o, p),
                _ => return Err(bad("expected object and property names")),
            };
            let oi = *obj_index.get(o).ok_or_else(|| FcaError::UnknownObject(o.to_string()))?;
            let pi = *prop_index.get(p).ok_or_else(|| FcaError::UnknownProperty(p.to_string()))?;
            match mode {
                Mode::Crisp => {
                    crisp[oi][pi] = match fields.get(2) {
                        None => true,
                        Some(Value::Bool(b)) => *b,
                        Some(Value::Number(n)) if n.as_f64() == Some(1.0) => true,
                        Some(Value::Number(n)) if n.as_f64() == Some(0.0) => false,
                        Some(Value::String(s)) => s.parse::<PBit>().map_err(|e| bad(&e.to_string()))?.pos(),
                        Some(_) => return Err(bad("crisp value must be a boolean, 0/1 or a p-bit")),
                    }
                }
                Mode::Para => {
                    let v = fields.get(2).and_then(Value::as_str).ok_or_else(|| bad("missing p-bit"))?;
                    para[oi][pi] = v.parse().map_err(|e: crate::pbit::PBitError| bad(&e.to_string()))?;
                }
                Mode::Fuzzy => {
                    let num =
                        |i: usize| fields.get(i).and_then(Value::as_f64).ok_or_else(|| bad("expected two degrees"));
                    fuzzy[oi][pi] = (chain.grade(num(2)?)?, chain.grade(num(3)?)?);
                }
            }
        }
        match mode {
            Mode::Crisp => FormalContext::crisp(objects, properties, crisp),
            Mode::Para => FormalContext::para(objects, properties, para),
            Mode::Fuzzy => FormalContext::fuzzy(objects, properties, chain, implication, fuzzy),
        }
    }

    pub fn mode(&self) -> Mode {
        match self.incidence {
            Incidence::Crisp(_) => Mode::Crisp,
            Incidence::Para(_) => Mode::Para,
            Incidence::Fuzzy { .. } => Mode::Fuzzy,
        }
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn properties(&self) -> &[String] {
        &self.properties
    }

    pub fn chain(&self) -> Option<GradeChain> {
        match self.incidence {
            Incidence::Fuzzy { chain, .. } => Some(chain),
            _ => None,
        }
    }

    pub fn implication(&self) -> Option<FuzzyImplication> {
        match self.incidence {
            Incidence::Fuzzy { implication, .. } => Some(implication),
            _ => None,
        }
    }

    /// Para-mode incidence value (crisp entries read as `T`/`F`).
    pub fn value(&self, o: usize, p: usize) -> Option<PBit> {
        match &self.incidence {
            Incidence::Crisp(t) => Some(if t[o][p] { PBit::True } else { PBit::False }),
            Incidence::Para(t) => Some(t[o][p]),
            Incidence::Fuzzy { .. } => None,
        }
    }

    /// Fuzzy incidence grades.
    pub fn degrees(&self, o: usize, p: usize) -> Option<DegreePair> {
        match &self.incidence {
            Incidence::Fuzzy { table, .. } => Some(table[o][p]),
            _ => None,
        }
    }

    fn holds(&self, o: usize, p: usize) -> bool {
        match &self.incidence {
            Incidence::Crisp(t) => t[o][p],
            Incidence::Para(t) => t[o][p].pos(),
            Incidence::Fuzzy { .. } => unreachable!("checked by require_two_valued"),
        }
    }

    pub(crate) fn require_two_valued(&self) -> Result<(), FcaError> {
        match self.mode() {
            Mode::Fuzzy => Err(FcaError::WrongMode { expected: "crisp or para", found: "fuzzy" }),
            _ => Ok(()),
        }
    }

    pub(crate) fn fuzzy_parts(&self) -> Result<(GradeChain, FuzzyImplication, &Vec<Vec<DegreePair>>), FcaError> {
        match &self.incidence {
            Incidence::Fuzzy { chain, implication, table } => Ok((*chain, *implication, table)),
            _ => Err(FcaError::WrongMode { expected: "fuzzy", found: self.mode().name() }),
        }
    }

    pub fn object_set<S: AsRef<str>>(&self, names: &[S]) -> Result<FixedBitSet, FcaError> {
        let mut set = FixedBitSet::with_capacity(self.objects.len());
        for n in names {
            let i = self
                .objects
                .iter()
                .position(|o| o == n.as_ref())
                .ok_or_else(|| FcaError::UnknownObject(n.as_ref().to_string()))?;
            set.insert(i);
        }
        Ok(set)
    }

    pub fn property_set<S: AsRef<str>>(&self, names: &[S]) -> Result<FixedBitSet, FcaError> {
        let mut set = FixedBitSet::with_capacity(self.properties.len());
        for n in names {
            let i = self
                .properties
                .iter()
                .position(|p| p == n.as_ref())
                .ok_or_else(|| FcaError::UnknownProperty(n.as_ref().to_string()))?;
            set.insert(i);
        }
        Ok(set)
    }

    pub fn object_names(&self, set: &FixedBitSet) -> Vec<&str> {
        set.ones().map(|i| self.objects[i].as_str()).collect()
    }

    pub fn property_names(&self, set: &FixedBitSet) -> Vec<&str> {
        set.ones().map(|i| self.properties[i].as_str()).collect()
    }

    /// Properties held by every object of `extent`.
    pub fn derive_properties(&self, extent: &FixedBitSet) -> Result<FixedBitSet, FcaError> {
        self.require_two_valued()?;
        let mut out = FixedBitSet::with_capacity(self.properties.len());
        for p in 0..self.properties.len() {
            if extent.ones().all(|o| self.holds(o, p)) {
                out.insert(p);
            }
        }
        Ok(out)
    }

    /// Objects holding every property of `intent`.
    pub fn derive_objects(&self, intent: &FixedBitSet) -> Result<FixedBitSet, FcaError> {
        self.derive_objects_with(intent, ParaReading::Designated)
    }

    pub fn derive_objects_with(&self, intent: &FixedBitSet, reading: ParaReading) -> Result<FixedBitSet, FcaError> {
        self.require_two_valued()?;
        let mut out = FixedBitSet::with_capacity(self.objects.len());
        for o in 0..self.objects.len() {
            let ok = match reading {
                ParaReading::Designated => intent.ones().all(|p| self.holds(o, p)),
                ParaReading::Literal => intent.ones().all(|p| !self.holds(o, p)),
            };
            if ok {
                out.insert(o);
            }
        }
        Ok(out)
    }

    /// `derive_objects(derive_properties(extent))`.
    pub fn close_extent(&self, extent: &FixedBitSet) -> Result<FixedBitSet, FcaError> {
        self.derive_objects(&self.derive_properties(extent)?)
    }

    /// Fuzzy intent of a fuzzy extent, componentwise:
    /// `inf_o (extent(o) -> I(o, p))` for the positive and negative grades.
    pub fn derive_fuzzy_properties(&self, extent: &[DegreePair]) -> Result<Vec<DegreePair>, FcaError> {
        let (chain, imp, table) = self.fuzzy_parts()?;
        self.check_degrees(chain, extent, self.objects.len())?;
        Ok((0..self.properties.len())
            .map(|p| {
                (0..self.objects.len()).fold((chain.top(), chain.top()), |(ap, an), o| {
                    let (ip, in_) = table[o][p];
                    (ap.min(imp.apply(chain, extent[o].0, ip)), an.min(imp.apply(chain, extent[o].1, in_)))
                })
            })
            .collect())
    }

    /// Fuzzy extent of a fuzzy intent, componentwise.
    pub fn derive_fuzzy_objects(&self, intent: &[DegreePair]) -> Result<Vec<DegreePair>, FcaError> {
        let (chain, imp, table) = self.fuzzy_parts()?;
        self.check_degrees(chain, intent, self.properties.len())?;
        Ok((0..self.objects.len())
            .map(|o| {
                (0..self.properties.len()).fold((chain.top(), chain.top()), |(ap, an), p| {
                    let (ip, in_) = table[o][p];
                    (ap.min(imp.apply(chain, intent[p].0, ip)), an.min(imp.apply(chain, intent[p].1, in_)))
                })
            })
            .collect())
    }

    fn check_degrees(&self, chain: GradeChain, set: &[DegreePair], len: usize) -> Result<(), FcaError> {
        if set.len() != len {
            return Err(FcaError::Format(format!("fuzzy set has {} entries, expected {len}", set.len())));
        }
        if let Some(&(p, n)) = set.iter().find(|&&(p, n)| p > chain.top() || n > chain.top()) {
            let bad = if p > chain.top() { p } else { n };
            return Err(FcaError::OffChain { value: chain.value(bad), steps: chain.steps() });
        }
        Ok(())
    }
}
