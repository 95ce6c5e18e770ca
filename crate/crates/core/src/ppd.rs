//! Paraconsistent probability distributions.
//!
//! A ppd is a pair of ordinary distributions over the same outcomes, one for
//! positive and one for negative evidence, treated as the product
//! `pos x neg`. Entropy and relative entropy therefore split into a positive
//! and a negative term. All quantities are in bits, summed left to right over
//! the stored outcome order.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default smoothing applied to the reference distribution of [`intension_degree`].
pub const DEFAULT_EPSILON: f64 = 1e-9;

const SUM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PpdError {
    #[error("{component} vector has {got} entries for {expected} outcomes")]
    Length { component: &'static str, got: usize, expected: usize },
    #[error("{component} vector has invalid entry {value} at `{outcome}`")]
    Negative { component: &'static str, outcome: String, value: f64 },
    #[error("{component} vector sums to {sum}, not 1")]
    NotNormalized { component: &'static str, sum: f64 },
    #[error("duplicate outcome `{0}`")]
    DuplicateOutcome(String),
    #[error("distributions are over different outcome sets")]
    OutcomeMismatch,
    #[error("{component} support violation: reference has zero mass at `{outcome}`")]
    Support { component: &'static str, outcome: String },
    #[error("smoothing epsilon must be finite and >= 0, got {0}")]
    InvalidEpsilon(f64),
    #[error("instance `{0}` is not in the context")]
    NotInContext(String),
    #[error("{component} weights of {which} are all zero")]
    ZeroWeights { component: &'static str, which: &'static str },
    #[error("invalid weight for `{0}`")]
    InvalidWeight(String),
    #[error("{0}")]
    Format(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ppd {
    outcomes: Vec<String>,
    pos: Vec<f64>,
    neg: Vec<f64>,
}

impl Ppd {
    pub fn new(outcomes: Vec<String>, pos: Vec<f64>, neg: Vec<f64>) -> Result<Ppd, PpdError> {
        let mut seen = BTreeSet::new();
        for o in &outcomes {
            if !seen.insert(o) {
                return Err(PpdError::DuplicateOutcome(o.clone()));
            }
        }
        for (component, v) in [("pos", &pos), ("neg", &neg)] {
            check_distribution(component, &outcomes, v)?;
        }
        Ok(Ppd { outcomes, pos, neg })
    }

    /// Parses `{"outcomes": [...], "pos": [...], "neg": [...]}`.
    pub fn from_json(text: &str) -> Result<Ppd, PpdError> {
        let raw: Ppd = serde_json::from_str(text).map_err(|e| PpdError::Format(e.to_string()))?;
        Ppd::new(raw.outcomes, raw.pos, raw.neg)
    }

    pub fn outcomes(&self) -> &[String] {
        &self.outcomes
    }

    pub fn pos(&self) -> &[f64] {
        &self.pos
    }

    pub fn neg(&self) -> &[f64] {
        &self.neg
    }

    /// Reorders `other`'s vectors into this ppd's outcome order.
    fn align(&self, other: &Ppd) -> Result<(Vec<f64>, Vec<f64>), PpdError> {
        if self.outcomes.len() != other.outcomes.len() {
            return Err(PpdError::OutcomeMismatch);
        }
        let index: BTreeMap<&str, usize> = other.outcomes.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
        let mut pos = Vec::with_capacity(self.outcomes.len());
        let mut neg = Vec::with_capacity(self.outcomes.len());
        for o in &self.outcomes {
            let &i = index.get(o.as_str()).ok_or(PpdError::OutcomeMismatch)?;
            pos.push(other.pos[i]);
            neg.push(other.neg[i]);
        }
        Ok((pos, neg))
    }
}

fn check_distribution(component: &'static str, outcomes: &[String], v: &[f64]) -> Result<(), PpdError> {
    if v.len() != outcomes.len() {
        return Err(PpdError::Length { component, got: v.len(), expected: outcomes.len() });
    }
    for (o, &p) in outcomes.iter().zip(v) {
        if !(p.is_finite() && p >= 0.0) {
            return Err(PpdError::Negative { component, outcome: o.clone(), value: p });
        }
    }
    let sum: f64 = v.iter().sum();
    if (sum - 1.0).abs() > SUM_TOLERANCE {
        return Err(PpdError::NotNormalized { component, sum });
    }
    Ok(())
}

/// Shannon entropy of one distribution in bits, with `0 log 0 = 0`.
pub fn shannon(p: &[f64]) -> f64 {
    p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.log2()).sum()
}

/// `H(pos) + H(neg)`.
pub fn entropy(p: &Ppd) -> f64 {
    shannon(&p.pos) + shannon(&p.neg)
}

fn smooth(v: &[f64], epsilon: f64) -> Vec<f64> {
    if epsilon == 0.0 {
        return v.to_vec();
    }
    let total = 1.0 + epsilon * v.len() as f64;
    v.iter().map(|&x| (x + epsilon) / total).collect()
}

fn kl(component: &'static str, outcomes: &[String], a: &[f64], b: &[f64]) -> Result<f64, PpdError> {
    let mut sum = 0.0;
    for ((o, &p), &q) in outcomes.iter().zip(a).zip(b) {
        if p > 0.0 {
            if q <= 0.0 {
                return Err(PpdError::Support { component, outcome: o.clone() });
            }
            sum += p * (p / q).log2();
        }
    }
    Ok(sum)
}

/// `KL(a.pos || b.pos) + KL(a.neg || b.neg)` in bits, after smoothing `b`
/// by adding `epsilon` to every entry and renormalizing.
pub fn relative_entropy(a: &Ppd, b: &Ppd, epsilon: f64) -> Result<f64, PpdError> {
    if !(epsilon.is_finite() && epsilon >= 0.0) {
        return Err(PpdError::InvalidEpsilon(epsilon));
    }
    let (b_pos, b_neg) = a.align(b)?;
    let b_pos = smooth(&b_pos, epsilon);
    let b_neg = smooth(&b_neg, epsilon);
    Ok(kl("pos", &a.outcomes, &a.pos, &b_pos)? + kl("neg", &a.outcomes, &a.neg, &b_neg)?)
}

/// Per-instance paraconsistent evidence weights `(w+, w-)`.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceEvidence {
    instances: Vec<(String, (f64, f64))>,
}

#[derive(Deserialize)]
struct InstanceFile {
    instances: BTreeMap<String, (f64, f64)>,
}

impl InstanceEvidence {
    pub fn new<I, S>(instances: I) -> Result<Self, PpdError>
    where
        I: IntoIterator<Item = (S, (f64, f64))>,
        S: Into<String>,
    {
        let instances: Vec<(String, (f64, f64))> = instances.into_iter().map(|(k, w)| (k.into(), w)).collect();
        let mut seen = BTreeSet::new();
        for (id, (p, n)) in &instances {
            if !seen.insert(id) {
                return Err(PpdError::DuplicateOutcome(id.clone()));
            }
            if !(*p >= 0.0 && *n >= 0.0 && p.is_finite() && n.is_finite()) {
                return Err(PpdError::InvalidWeight(id.clone()));
            }
        }
        Ok(InstanceEvidence { instances })
    }

    /// Parses `{"instances": {"moby": [1.0, 0.0], ...}}` (instances sorted by id).
    pub fn from_json(text: &str) -> Result<Self, PpdError> {
        let file: InstanceFile = serde_json::from_str(text).map_err(|e| PpdError::Format(e.to_string()))?;
        InstanceEvidence::new(file.instances)
    }

    pub fn instances(&self) -> &[(String, (f64, f64))] {
        &self.instances
    }

    fn weight(&self, id: &str) -> Option<(f64, f64)> {
        self.instances.iter().find(|(i, _)| i == id).map(|(_, w)| *w)
    }

    /// Normalizes each component over `support` (zero for absent ids).
    fn distribution(&self, support: &[String], which: &'static str) -> Result<(Vec<f64>, Vec<f64>), PpdError> {
        let weights: Vec<(f64, f64)> = support.iter().map(|id| self.weight(id).unwrap_or((0.0, 0.0))).collect();
        let normalize = |component: &'static str, v: Vec<f64>| {
            let total: f64 = v.iter().sum();
            if total <= 0.0 {
                return Err(PpdError::ZeroWeights { component, which });
            }
            Ok(v.into_iter().map(|x| x / total).collect::<Vec<f64>>())
        };
        Ok((
            normalize("pos", weights.iter().map(|w| w.0).collect())?,
            normalize("neg", weights.iter().map(|w| w.1).collect())?,
        ))
    }
}

/// Relative entropy of an entity's evidence distribution against its
/// context's, both spread over the context's instances.
pub fn intension_degree(x: &InstanceEvidence, c: &InstanceEvidence, epsilon: f64) -> Result<f64, PpdError> {
    for (id, _) in &x.instances {
        if c.weight(id).is_none() {
            return Err(PpdError::NotInContext(id.clone()));
        }
    }
    let support: Vec<String> = c.instances.iter().map(|(id, _)| id.clone()).collect();
    let (xp, xn) = x.distribution(&support, "x")?;
    let (cp, cn) = c.distribution(&support, "context")?;
    let xs = Ppd::new(support.clone(), xp, xn)?;
    let cs = Ppd::new(support, cp, cn)?;
    relative_entropy(&xs, &cs, epsilon)
}
