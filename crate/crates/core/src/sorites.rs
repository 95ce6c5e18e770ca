//! Paraconsistent concept boundaries for sorites series.
//!
//! A value `z` is a cutoff of `Psi` when `~Psi(z) & all y. (y < z -> Psi(y))`.
//! In a series whose boundary individuals are valued `B`, several values can
//! be cutoffs both truly and falsely, and "there is a cutoff" is itself `B`.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::Not;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cdlang::{EvalError, Evaluator, Expr, Valuation};
use crate::pbit::{BinaryOp, PBit, UnaryOp};

/// Predicate name under which the series values are exposed to `cdlang`.
pub const PREDICATE: &str = "Psi";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SoritesError {
    #[error("unknown individual `{0}`")]
    UnknownIndividual(String),
    #[error("individual `{0}` has no Psi value")]
    MissingPsi(String),
    #[error("duplicate individual `{0}`")]
    DuplicateIndividual(String),
    #[error("series domain is empty")]
    EmptyDomain,
    #[error("no situations to aggregate")]
    NoCases,
    #[error("case {0}: weight must be positive and finite")]
    InvalidWeight(usize),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("model: {0}")]
    Format(String),
}

/// An ordered series with p-bit values for `Psi` and for the order relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesModel {
    domain: Vec<String>,
    psi: BTreeMap<String, PBit>,
    less: BTreeMap<(String, String), PBit>,
}

#[derive(Deserialize)]
struct ModelFile {
    domain: Vec<String>,
    psi: BTreeMap<String, PBit>,
    #[serde(default)]
    less_true: Vec<(String, String)>,
    #[serde(default = "default_true")]
    transitive: bool,
}

fn default_true() -> bool {
    true
}

impl SeriesModel {
    /// Builds a model; order pairs not listed in `less` read as `F`.
    pub fn new(
        domain: Vec<String>,
        psi: BTreeMap<String, PBit>,
        less: BTreeMap<(String, String), PBit>,
    ) -> Result<Self, SoritesError> {
        let mut seen = BTreeSet::new();
        for d in &domain {
            if !seen.insert(d) {
                return Err(SoritesError::DuplicateIndividual(d.clone()));
            }
            if !psi.contains_key(d) {
                return Err(SoritesError::MissingPsi(d.clone()));
            }
        }
        for name in psi.keys().chain(less.keys().flat_map(|(a, b)| [a, b])) {
            if !seen.contains(name) {
                return Err(SoritesError::UnknownIndividual(name.clone()));
            }
        }
        Ok(SeriesModel { domain, psi, less })
    }

    /// Builds a model whose order is `T` on `less_true` (optionally closed
    /// transitively) and `F` everywhere else.
    pub fn with_true_pairs(
        domain: Vec<String>,
        psi: BTreeMap<String, PBit>,
        less_true: &[(String, String)],
        transitive: bool,
    ) -> Result<Self, SoritesError> {
        let index: BTreeMap<&str, usize> = domain.iter().enumerate().map(|(i, d)| (d.as_str(), i)).collect();
        let n = domain.len();
        let mut rel = vec![vec![false; n]; n];
        for (a, b) in less_true {
            let ia = *index.get(a.as_str()).ok_or_else(|| SoritesError::UnknownIndividual(a.clone()))?;
            let ib = *index.get(b.as_str()).ok_or_else(|| SoritesError::UnknownIndividual(b.clone()))?;
            rel[ia][ib] = true;
        }
        if transitive {
            for k in 0..n {
                for i in 0..n {
                    if rel[i][k] {
                        let row = rel[k].clone();
                        for (dst, &src) in rel[i].iter_mut().zip(&row) {
                            *dst |= src;
                        }
                    }
                }
            }
        }
        let mut less = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                if rel[i][j] {
                    less.insert((domain[i].clone(), domain[j].clone()), PBit::True);
                }
            }
        }
        SeriesModel::new(domain, psi, less)
    }

    /// A series in listed order: `a < b` is `T` exactly when `a` precedes `b`.
    pub fn linear(values: &[(&str, PBit)]) -> Result<Self, SoritesError> {
        let domain: Vec<String> = values.iter().map(|(d, _)| d.to_string()).collect();
        let psi = values.iter().map(|(d, v)| (d.to_string(), *v)).collect();
        let pairs: Vec<(String, String)> = domain.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
        SeriesModel::with_true_pairs(domain, psi, &pairs, true)
    }

    /// Parses `{"domain": [...], "psi": {...}, "less_true": [[a,b],...], "transitive": true}`.
    pub fn from_json(text: &str) -> Result<Self, SoritesError> {
        let file: ModelFile = serde_json::from_str(text).map_err(|e| SoritesError::Format(e.to_string()))?;
        SeriesModel::with_true_pairs(file.domain, file.psi, &file.less_true, file.transitive)
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn psi(&self, z: &str) -> Option<PBit> {
        self.psi.get(z).copied()
    }

    pub fn less(&self, a: &str, b: &str) -> PBit {
        self.less.get(&(a.to_string(), b.to_string())).copied().unwrap_or(PBit::False)
    }

    /// Total valuation with `Psi` and every order pair filled in.
    pub fn valuation(&self) -> Valuation {
        let mut v = Valuation { domain: self.domain.clone(), ..Valuation::default() };
        v.preds.insert(PREDICATE.to_string(), self.psi.clone());
        for a in &self.domain {
            for b in &self.domain {
                v.less.insert((a.clone(), b.clone()), self.less(a, b));
            }
        }
        v
    }
}

/// `~Psi(var) & all y. (y < var -> Psi(y))`.
pub fn cutoff_expr(var: &str) -> Expr {
    let bound = if var == "y" { "y_" } else { "y" };
    Expr::binary(
        BinaryOp::Meet,
        Expr::unary(UnaryOp::Neg, Expr::pred(PREDICATE, var)),
        Expr::forall(bound, Expr::binary(BinaryOp::Arrow, Expr::less(bound, var), Expr::pred(PREDICATE, bound))),
    )
}

pub fn cutoff_value(m: &SeriesModel, z: &str) -> Result<PBit, SoritesError> {
    if !m.psi.contains_key(z) {
        return Err(SoritesError::UnknownIndividual(z.to_string()));
    }
    let v = m.valuation();
    Ok(Evaluator::new(&v).bind("z", z).eval(&cutoff_expr("z"))?)
}

/// Cutoff values per individual plus the existential conclusion and its negation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExistentialCutoff {
    pub cutoffs: Vec<(String, PBit)>,
    /// `ex z. cutoff(Psi, z)`.
    pub exists: PBit,
    /// `~ex z. cutoff(Psi, z)`.
    pub not_exists: PBit,
}

pub fn existential_cutoff(m: &SeriesModel) -> Result<ExistentialCutoff, SoritesError> {
    if m.domain.is_empty() {
        return Err(SoritesError::EmptyDomain);
    }
    let cutoffs =
        m.domain.iter().map(|z| Ok((z.clone(), cutoff_value(m, z)?))).collect::<Result<Vec<_>, SoritesError>>()?;
    let exists = Evaluator::new(&m.valuation()).eval(&Expr::exists("z", cutoff_expr("z")))?;
    Ok(ExistentialCutoff { cutoffs, exists, not_exists: exists.not() })
}

/// How one situation classifies a value relative to the boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryLabel {
    /// `T`: high and not not-high.
    High,
    /// `F`.
    NotHigh,
    /// `B`: on the boundary.
    Cutoff,
}

impl BoundaryLabel {
    pub const fn pbit(self) -> PBit {
        match self {
            BoundaryLabel::High => PBit::True,
            BoundaryLabel::NotHigh => PBit::False,
            BoundaryLabel::Cutoff => PBit::Both,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SituationClassification {
    pub label: BoundaryLabel,
    #[serde(default = "unit_weight")]
    pub weight: f64,
}

fn unit_weight() -> f64 {
    1.0
}

impl SituationClassification {
    pub fn new(label: BoundaryLabel, weight: f64) -> Self {
        SituationClassification { label, weight }
    }
}

/// A value and its per-situation classifications.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct ClassificationFile {
    pub z: String,
    pub cases: Vec<SituationClassification>,
}

impl ClassificationFile {
    pub fn from_json(text: &str) -> Result<Self, SoritesError> {
        serde_json::from_str(text).map_err(|e| SoritesError::Format(e.to_string()))
    }
}

/// Raw weight fractions and their normalization by total evidence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Boundary {
    pub w_pos: f64,
    pub w_neg: f64,
    pub s_pos: f64,
    pub s_neg: f64,
}

/// Aggregates classifications into `(w+, w-) / (w+ + w-)`.
pub fn fuzzy_boundary(cases: &[SituationClassification]) -> Result<Boundary, SoritesError> {
    if cases.is_empty() {
        return Err(SoritesError::NoCases);
    }
    let (mut total, mut pos, mut neg) = (0.0, 0.0, 0.0);
    for (i, c) in cases.iter().enumerate() {
        if !(c.weight > 0.0 && c.weight.is_finite()) {
            return Err(SoritesError::InvalidWeight(i));
        }
        total += c.weight;
        let p = c.label.pbit();
        if p.pos() {
            pos += c.weight;
        }
        if p.neg() {
            neg += c.weight;
        }
    }
    let (w_pos, w_neg) = (pos / total, neg / total);
    let evidence = w_pos + w_neg;
    Ok(Boundary { w_pos, w_neg, s_pos: w_pos / evidence, s_neg: w_neg / evidence })
}

#[cfg(test)]
mod tests {
    use super::*;
    use BoundaryLabel::*;
    use PBit::*;

    fn weber() -> SeriesModel {
        SeriesModel::from_json(
            r#"{"domain":["a","b","c"],"psi":{"a":"T","b":"B","c":"B"},"less_true":[["a","b"],["b","c"]],"transitive":true}"#,
        )
        .unwrap()
    }

    #[test]
    fn weber_cutoffs() {
        let m = weber();
        assert_eq!(cutoff_value(&m, "b"), Ok(Both));
        assert_eq!(cutoff_value(&m, "c"), Ok(Both));
        assert_eq!(cutoff_value(&m, "a"), Ok(False));
        assert_eq!(m.less("c", "c"), False);
        assert_eq!(m.less("a", "c"), True);
    }

    #[test]
    fn weber_existential() {
        let r = existential_cutoff(&weber()).unwrap();
        assert_eq!(r.exists, Both);
        assert_eq!(r.not_exists, Both);
    }

    #[test]
    fn without_transitivity_c_is_still_both() {
        let m = SeriesModel::from_json(
            r#"{"domain":["a","b","c"],"psi":{"a":"T","b":"B","c":"B"},"less_true":[["a","b"],["b","c"]],"transitive":false}"#,
        )
        .unwrap();
        // a < c reads F, which does not change the outcome here
        assert_eq!(cutoff_value(&m, "c"), Ok(Both));
    }

    #[test]
    fn crisp_model() {
        let m = SeriesModel::linear(&[("a", True), ("b", False)]).unwrap();
        assert_eq!(existential_cutoff(&m).unwrap().exists, True);
        assert_eq!(cutoff_value(&m, "b"), Ok(True));
    }

    #[test]
    fn model_errors() {
        assert_eq!(cutoff_value(&weber(), "q"), Err(SoritesError::UnknownIndividual("q".into())));
        let missing = SeriesModel::from_json(r#"{"domain":["a","b"],"psi":{"a":"T"}}"#);
        assert_eq!(missing, Err(SoritesError::MissingPsi("b".into())));
        let bad_pair = SeriesModel::from_json(r#"{"domain":["a"],"psi":{"a":"T"},"less_true":[["a","z"]]}"#);
        assert_eq!(bad_pair, Err(SoritesError::UnknownIndividual("z".into())));
        let empty = SeriesModel::new(vec![], BTreeMap::new(), BTreeMap::new()).unwrap();
        assert_eq!(existential_cutoff(&empty), Err(SoritesError::EmptyDomain));
    }

    fn cases(rows: &[(BoundaryLabel, f64)]) -> Vec<SituationClassification> {
        rows.iter().map(|&(l, w)| SituationClassification::new(l, w)).collect()
    }

    #[test]
    fn boundary_bullets() {
        let b = fuzzy_boundary(&cases(&[(High, 1.0)])).unwrap();
        assert_eq!((b.s_pos, b.s_neg), (1.0, 0.0));
        let b = fuzzy_boundary(&cases(&[(NotHigh, 2.0)])).unwrap();
        assert_eq!((b.s_pos, b.s_neg), (0.0, 1.0));
        let b = fuzzy_boundary(&cases(&[(Cutoff, 1.0), (Cutoff, 1.0)])).unwrap();
        assert_eq!((b.s_pos, b.s_neg), (0.5, 0.5));
        let b = fuzzy_boundary(&cases(&[(Cutoff, 1.0), (High, 1.0), (NotHigh, 1.0)])).unwrap();
        assert!((b.s_pos - 0.5).abs() < 1e-12 && (b.s_neg - 0.5).abs() < 1e-12);
    }

    #[test]
    fn boundary_fifths() {
        let b = fuzzy_boundary(&cases(&[(Cutoff, 1.0), (High, 3.0), (NotHigh, 1.0)])).unwrap();
        assert!((b.w_pos - 0.8).abs() < 1e-12 && (b.w_neg - 0.4).abs() < 1e-12);
        assert!((b.s_pos - 2.0 / 3.0).abs() < 1e-12);
        let b = fuzzy_boundary(&cases(&[(Cutoff, 2.0), (High, 1.0), (NotHigh, 2.0)])).unwrap();
        assert!((b.s_pos - 3.0 / 7.0).abs() < 1e-12 && (b.s_neg - 4.0 / 7.0).abs() < 1e-12);
    }

    #[test]
    fn boundary_errors() {
        assert_eq!(fuzzy_boundary(&[]), Err(SoritesError::NoCases));
        assert_eq!(fuzzy_boundary(&cases(&[(High, 0.0)])), Err(SoritesError::InvalidWeight(0)));
    }

    #[test]
    fn classification_json() {
        let f = ClassificationFile::from_json(
            r#"{"z":"31C","cases":[{"label":"cutoff","weight":1},{"label":"not_high"},{"label":"high","weight":2.5}]}"#,
        )
        .unwrap();
        assert_eq!(f.z, "31C");
        assert_eq!(f.cases[1], SituationClassification::new(NotHigh, 1.0));
        assert!(ClassificationFile::from_json(r#"{"z":"x","cases":[{"label":"warm"}]}"#).is_err());
    }
}
