//! Aggregating p-bit evidence over ensembles of situations.
//!
//! Each situation assigns a p-bit to every atom. Evaluating a proposition in
//! every situation and counting positive bits (`T`, `B`) and negative bits
//! (`F`, `B`) gives the evidence counts from which the paraconsistent view
//! `(n+/N, n-/N)` and the PLN simple truth value `(s, n)` are derived.
//!
//! Subsampling uses `ChaCha8Rng::seed_from_u64(seed)` from `rand_chacha`
//! 0.3 and draws one `f64` per situation in order; a situation is kept when
//! its draw is `>= drop_rate`. Golden outputs depend on this choice.

use std::collections::BTreeMap;
use std::ops::Add;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cdlang::{EvalError, Evaluator, Expr, Valuation};
use crate::pbit::PBit;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProbError {
    #[error("ensemble is empty")]
    EmptyEnsemble,
    #[error("situation {index}: {source}")]
    Situation { index: usize, source: EvalError },
    #[error("no evidence: strength is undefined when n+ + n- = 0")]
    NoEvidence,
    #[error("personality parameter k must be positive, got {0}")]
    InvalidK(f64),
    #[error("evidence count {n} exceeds universe size {universe}")]
    ExceedsUniverse { n: f64, universe: f64 },
    #[error("drop rate {0} is outside [0, 1]")]
    InvalidRate(f64),
    #[error("joint table: {0}")]
    InvalidJoint(String),
    #[error("ensemble: {0}")]
    Format(String),
}

/// Situations over a shared atom vocabulary; each row is aligned with `atoms`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SituationEnsemble {
    atoms: Vec<String>,
    rows: Vec<Vec<PBit>>,
}

#[derive(Serialize, Deserialize)]
struct EnsembleFile {
    atoms: Vec<String>,
    situations: Vec<BTreeMap<String, PBit>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    open_world: bool,
}

impl SituationEnsemble {
    pub fn new(atoms: Vec<String>, rows: Vec<Vec<PBit>>) -> Result<Self, ProbError> {
        if let Some(i) = rows.iter().position(|r| r.len() != atoms.len()) {
            return Err(ProbError::Format(format!(
                "situation {i} has {} values for {} atoms",
                rows[i].len(),
                atoms.len()
            )));
        }
        Ok(SituationEnsemble { atoms, rows })
    }

    /// Single-atom ensemble from a column of values.
    pub fn column(atom: &str, values: &[PBit]) -> Self {
        SituationEnsemble { atoms: vec![atom.to_string()], rows: values.iter().map(|&v| vec![v]).collect() }
    }

    /// Parses `{"atoms": [...], "situations": [{"A": "T", ...}, ...]}`.
    ///
    /// Atoms missing from a row are an error unless `"open_world": true`,
    /// which reads them as `N`. Names outside the vocabulary are rejected.
    pub fn from_json(text: &str) -> Result<Self, ProbError> {
        let file: EnsembleFile = serde_json::from_str(text).map_err(|e| ProbError::Format(e.to_string()))?;
        let mut rows = Vec::with_capacity(file.situations.len());
        for (i, sit) in file.situations.iter().enumerate() {
            if let Some(extra) = sit.keys().find(|k| !file.atoms.contains(k)) {
                return Err(ProbError::Format(format!("situation {i}: unknown atom `{extra}`")));
            }
            let row = file
                .atoms
                .iter()
                .map(|a| match sit.get(a) {
                    Some(&v) => Ok(v),
                    None if file.open_world => Ok(PBit::Neither),
                    None => Err(ProbError::Format(format!("situation {i}: missing atom `{a}`"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        SituationEnsemble::new(file.atoms, rows)
    }

    pub fn to_json(&self) -> String {
        let file = EnsembleFile {
            atoms: self.atoms.clone(),
            situations: self.rows.iter().map(|r| self.atoms.iter().cloned().zip(r.iter().copied()).collect()).collect(),
            open_world: false,
        };
        serde_json::to_string_pretty(&file).expect("ensemble serializes")
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn rows(&self) -> &[Vec<PBit>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn valuation(&self, index: usize) -> Valuation {
        Valuation::with_atoms(self.atoms.iter().cloned().zip(self.rows[index].iter().copied()))
    }

    /// Concatenation; both ensembles must share the vocabulary.
    pub fn concat(&self, other: &SituationEnsemble) -> Result<Self, ProbError> {
        if self.atoms != other.atoms {
            return Err(ProbError::Format("ensembles have different atom vocabularies".into()));
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(SituationEnsemble { atoms: self.atoms.clone(), rows })
    }

    /// Splits rows by a predicate on the row index.
    pub fn partition(&self, mut left: impl FnMut(usize) -> bool) -> (Self, Self) {
        let (mut l, mut r) = (Vec::new(), Vec::new());
        for (i, row) in self.rows.iter().enumerate() {
            if left(i) {
                l.push(row.clone());
            } else {
                r.push(row.clone());
            }
        }
        (
            SituationEnsemble { atoms: self.atoms.clone(), rows: l },
            SituationEnsemble { atoms: self.atoms.clone(), rows: r },
        )
    }
}

/// Positive and negative evidence counts over an ensemble of size `n_total`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct EvidenceCounts {
    pub n_pos: u64,
    pub n_neg: u64,
    pub n_total: u64,
}

impl EvidenceCounts {
    pub fn record(&mut self, value: PBit) {
        self.n_pos += value.pos() as u64;
        self.n_neg += value.neg() as u64;
        self.n_total += 1;
    }

    /// `(n+/N, n-/N)`.
    pub fn para(&self) -> ParaTv {
        let n = self.n_total as f64;
        ParaTv { w_pos: self.n_pos as f64 / n, w_neg: self.n_neg as f64 / n }
    }

    /// `(n+, n-)`, the renormalization `N * t_para`.
    pub fn pln(&self) -> (u64, u64) {
        (self.n_pos, self.n_neg)
    }

    pub fn to_stv(&self) -> Result<Stv, ProbError> {
        to_stv(self)
    }
}

impl Add for EvidenceCounts {
    type Output = EvidenceCounts;

    fn add(self, rhs: EvidenceCounts) -> EvidenceCounts {
        EvidenceCounts {
            n_pos: self.n_pos + rhs.n_pos,
            n_neg: self.n_neg + rhs.n_neg,
            n_total: self.n_total + rhs.n_total,
        }
    }
}

/// Probabilized paraconsistent truth value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParaTv {
    pub w_pos: f64,
    pub w_neg: f64,
}

/// PLN simple truth value in `(strength, count)` form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Stv {
    pub s: f64,
    pub n: f64,
}

impl Stv {
    pub fn confidence(&self, k: f64) -> Result<f64, ProbError> {
        confidence(self.n, k)
    }
}

/// Evaluates `prop` in each situation and counts the evidence bits.
pub fn aggregate(ens: &SituationEnsemble, prop: &Expr) -> Result<EvidenceCounts, ProbError> {
    if ens.is_empty() {
        return Err(ProbError::EmptyEnsemble);
    }
    let mut counts = EvidenceCounts::default();
    for index in 0..ens.len() {
        let v = ens.valuation(index);
        let value = Evaluator::new(&v).eval(prop).map_err(|source| ProbError::Situation { index, source })?;
        counts.record(value);
    }
    Ok(counts)
}

pub fn to_stv(c: &EvidenceCounts) -> Result<Stv, ProbError> {
    let n = c.n_pos + c.n_neg;
    if n == 0 {
        return Err(ProbError::NoEvidence);
    }
    Ok(Stv { s: c.n_pos as f64 / n as f64, n: n as f64 })
}

/// `n / (n + k)`.
pub fn confidence(n: f64, k: f64) -> Result<f64, ProbError> {
    if k.is_nan() || k <= 0.0 {
        return Err(ProbError::InvalidK(k));
    }
    Ok(n / (n + k))
}

/// Conjunction of STVs with independent evidence in a universe of size `universe`.
pub fn conj_independent(a: Stv, b: Stv, universe: f64) -> Result<Stv, ProbError> {
    for n in [a.n, b.n] {
        if n > universe {
            return Err(ProbError::ExceedsUniverse { n, universe });
        }
    }
    Ok(Stv { s: a.s * b.s, n: a.n + b.n - a.n * b.n / universe })
}

/// Keeps each situation independently with probability `1 - drop_rate`.
pub fn subsample(ens: &SituationEnsemble, drop_rate: f64, seed: u64) -> Result<SituationEnsemble, ProbError> {
    if !(0.0..=1.0).contains(&drop_rate) {
        return Err(ProbError::InvalidRate(drop_rate));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = ens.rows.iter().filter(|_| rng.gen::<f64>() >= drop_rate).cloned().collect();
    Ok(SituationEnsemble { atoms: ens.atoms.clone(), rows })
}

/// Joint distribution of two p-bits, indexed by [`PBit::index`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointTable {
    p: [[f64; 4]; 4],
}

#[derive(Deserialize)]
struct JointFile {
    joint: Vec<(PBit, PBit, f64)>,
}

impl JointTable {
    pub fn new(entries: impl IntoIterator<Item = (PBit, PBit, f64)>) -> Result<Self, ProbError> {
        let mut p = [[0.0; 4]; 4];
        for (a, b, w) in entries {
            if !(w.is_finite() && w >= 0.0) {
                return Err(ProbError::InvalidJoint(format!("mass for ({a},{b}) is {w}")));
            }
            p[a.index()][b.index()] += w;
        }
        let total: f64 = p.iter().flatten().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(ProbError::InvalidJoint(format!("masses sum to {total}, not 1")));
        }
        Ok(JointTable { p })
    }

    /// Parses `{"joint": [["T","T",0.125], ...]}`; unlisted pairs have mass 0.
    pub fn from_json(text: &str) -> Result<Self, ProbError> {
        let file: JointFile = serde_json::from_str(text).map_err(|e| ProbError::InvalidJoint(e.to_string()))?;
        JointTable::new(file.joint)
    }

    pub fn prob(&self, a: PBit, b: PBit) -> f64 {
        self.p[a.index()][b.index()]
    }
}

/// Mutual information (bits) between two p-bits and between their components.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DependencyStats {
    pub mi_pbit: f64,
    pub mi_pos: f64,
    pub mi_neg: f64,
}

fn mutual_information<const R: usize, const C: usize>(joint: &[[f64; C]; R]) -> f64 {
    let mut row = [0.0; R];
    let mut col = [0.0; C];
    for i in 0..R {
        for j in 0..C {
            row[i] += joint[i][j];
            col[j] += joint[i][j];
        }
    }
    let mut mi = 0.0;
    for i in 0..R {
        for j in 0..C {
            let p = joint[i][j];
            if p > 0.0 {
                mi += p * (p / (row[i] * col[j])).log2();
            }
        }
    }
    mi.max(0.0)
}

pub fn dependency_stats(joint: &JointTable) -> DependencyStats {
    let mut pos = [[0.0; 2]; 2];
    let mut neg = [[0.0; 2]; 2];
    for a in PBit::ALL {
        for b in PBit::ALL {
            let w = joint.prob(a, b);
            pos[a.pos() as usize][b.pos() as usize] += w;
            neg[a.neg() as usize][b.neg() as usize] += w;
        }
    }
    DependencyStats {
        mi_pbit: mutual_information(&joint.p),
        mi_pos: mutual_information(&pos),
        mi_neg: mutual_information(&neg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdlang::parse;
    use PBit::*;

    fn five_rows() -> SituationEnsemble {
        SituationEnsemble::column("A", &[True, True, Both, Neither, False])
    }

    #[test]
    fn counting_five_rows() {
        let c = aggregate(&five_rows(), &parse("A").unwrap()).unwrap();
        assert_eq!(c, EvidenceCounts { n_pos: 3, n_neg: 2, n_total: 5 });
        assert_eq!(c.para(), ParaTv { w_pos: 0.6, w_neg: 0.4 });
        assert_eq!(c.pln(), (3, 2));
    }

    #[test]
    fn all_true() {
        let c = aggregate(&SituationEnsemble::column("A", &[True; 4]), &parse("A").unwrap()).unwrap();
        assert_eq!(c.para(), ParaTv { w_pos: 1.0, w_neg: 0.0 });
    }

    #[test]
    fn meet_then_count() {
        let ens =
            SituationEnsemble::new(vec!["A".into(), "B".into()], vec![vec![True, Both], vec![False, True]]).unwrap();
        let c = aggregate(&ens, &parse("A & B").unwrap()).unwrap();
        assert_eq!(c, EvidenceCounts { n_pos: 1, n_neg: 2, n_total: 2 });
    }

    #[test]
    fn aggregate_errors() {
        let empty = SituationEnsemble::column("A", &[]);
        assert_eq!(aggregate(&empty, &parse("A").unwrap()), Err(ProbError::EmptyEnsemble));
        let e = aggregate(&five_rows(), &parse("A & C").unwrap()).unwrap_err();
        assert!(matches!(e, ProbError::Situation { index: 0, .. }));
    }

    #[test]
    fn stv_and_confidence() {
        let stv = to_stv(&EvidenceCounts { n_pos: 3, n_neg: 2, n_total: 5 }).unwrap();
        assert_eq!(stv, Stv { s: 0.6, n: 5.0 });
        assert_eq!(confidence(80.0, 20.0), Ok(0.8));
        assert_eq!(to_stv(&EvidenceCounts { n_pos: 0, n_neg: 0, n_total: 3 }), Err(ProbError::NoEvidence));
        assert!(confidence(1.0, 0.0).is_err());
        assert!(confidence(1.0, f64::NAN).is_err());
    }

    #[test]
    fn independent_conjunction() {
        let r = conj_independent(Stv { s: 0.5, n: 10.0 }, Stv { s: 0.5, n: 10.0 }, 100.0).unwrap();
        assert_eq!(r, Stv { s: 0.25, n: 19.0 });
        let r = conj_independent(Stv { s: 0.6, n: 5.0 }, Stv { s: 0.5, n: 5.0 }, 10.0).unwrap();
        assert!((r.s - 0.3).abs() < 1e-15);
        assert_eq!(r.n, 7.5);
        let r = conj_independent(Stv { s: 1.0, n: 7.0 }, Stv { s: 1.0, n: 9.0 }, 1e12).unwrap();
        assert_eq!(r.s, 1.0);
        assert!((r.n - 16.0).abs() < 1e-9);
        assert!(conj_independent(Stv { s: 1.0, n: 11.0 }, Stv { s: 1.0, n: 1.0 }, 10.0).is_err());
    }

    #[test]
    fn subsample_edges() {
        let ens = five_rows();
        assert_eq!(subsample(&ens, 0.0, 7).unwrap(), ens);
        assert!(subsample(&ens, 1.0, 7).unwrap().is_empty());
        assert!(subsample(&ens, 1.5, 7).is_err());
    }

    #[test]
    fn subsample_half() {
        let ens = SituationEnsemble::column("A", &vec![True; 1000]);
        let a = subsample(&ens, 0.5, 42).unwrap();
        let b = subsample(&ens, 0.5, 42).unwrap();
        assert_eq!(a, b);
        assert!((400..=600).contains(&a.len()), "kept {}", a.len());
    }

    #[test]
    fn ensemble_json() {
        let text = r#"{"atoms":["A","B"],"situations":[{"A":"T","B":"B"},{"A":"F"}]}"#;
        assert!(SituationEnsemble::from_json(text).is_err());
        let open = r#"{"atoms":["A","B"],"situations":[{"A":"T","B":"B"},{"A":"F"}],"open_world":true}"#;
        let ens = SituationEnsemble::from_json(open).unwrap();
        assert_eq!(ens.rows()[1], vec![False, Neither]);
        assert_eq!(SituationEnsemble::from_json(&ens.to_json()).unwrap(), ens);
        let extra = r#"{"atoms":["A"],"situations":[{"A":"T","Z":"B"}]}"#;
        assert!(SituationEnsemble::from_json(extra).is_err());
    }

    #[test]
    fn coupled_pbits() {
        let mut entries = Vec::new();
        for (a, b) in [(True, True), (True, False), (False, True), (False, False)] {
            entries.push((a, b, 0.125));
        }
        for (a, b) in [(Both, Both), (Both, Neither), (Neither, Both), (Neither, Neither)] {
            entries.push((a, b, 0.125));
        }
        let s = dependency_stats(&JointTable::new(entries).unwrap());
        assert!((s.mi_pbit - 1.0).abs() < 1e-12);
        assert!(s.mi_pos.abs() < 1e-12 && s.mi_neg.abs() < 1e-12);
    }

    #[test]
    fn copied_and_independent_pbits() {
        let copied = JointTable::new(PBit::ALL.map(|a| (a, a, 0.25))).unwrap();
        let s = dependency_stats(&copied);
        assert!((s.mi_pbit - 2.0).abs() < 1e-12);
        assert!((s.mi_pos - 1.0).abs() < 1e-12 && (s.mi_neg - 1.0).abs() < 1e-12);
        let uniform =
            JointTable::new(PBit::ALL.iter().flat_map(|&a| PBit::ALL.map(move |b| (a, b, 1.0 / 16.0)))).unwrap();
        let s = dependency_stats(&uniform);
        assert_eq!((s.mi_pbit, s.mi_pos, s.mi_neg), (0.0, 0.0, 0.0));
    }

    #[test]
    fn joint_validation() {
        assert!(JointTable::new([(True, True, 0.5)]).is_err());
        assert!(JointTable::new([(True, True, 1.5), (False, False, -0.5)]).is_err());
        let t = JointTable::from_json(r#"{"joint":[["T","T",0.5],["(0,1)","B",0.5]]}"#).unwrap();
        assert_eq!(t.prob(False, Both), 0.5);
    }
}
