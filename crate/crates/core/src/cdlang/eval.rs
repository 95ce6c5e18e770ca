use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::ast::{Expr, Quantifier};
use crate::pbit::{apply_binary_with, BinaryOp, Implication, PBit};

/// Most atoms [`is_derivable`] will enumerate (4^12 valuations).
pub const MAX_DERIVABILITY_ATOMS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("no value for atom `{0}`")]
    MissingAtom(String),
    #[error("no value for `{0}({1})`")]
    MissingPred(String, String),
    #[error("no value for `{0} < {1}`")]
    MissingOrder(String, String),
    #[error("`{0}` is neither a bound variable nor a domain individual")]
    UnknownTerm(String),
    #[error("{0} atoms exceed the derivability limit of {MAX_DERIVABILITY_ATOMS}")]
    TooManyAtoms(usize),
    #[error("derivability is only checked for propositional expressions")]
    NotPropositional,
    #[error("invalid valuation: {0}")]
    Format(String),
}

/// Assignment of p-bits to every name an expression can mention.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Valuation {
    pub domain: Vec<String>,
    pub atoms: BTreeMap<String, PBit>,
    pub preds: BTreeMap<String, BTreeMap<String, PBit>>,
    pub less: BTreeMap<(String, String), PBit>,
    /// Missing entries read as `N` instead of failing.
    pub open_world: bool,
}

#[derive(Serialize, Deserialize)]
struct ValuationFile {
    #[serde(default)]
    domain: Vec<String>,
    #[serde(default)]
    atoms: BTreeMap<String, PBit>,
    #[serde(default)]
    preds: BTreeMap<String, BTreeMap<String, PBit>>,
    #[serde(default)]
    less: BTreeMap<String, PBit>,
    #[serde(default)]
    open_world: bool,
}

impl Valuation {
    pub fn with_atoms<I, S>(atoms: I) -> Valuation
    where
        I: IntoIterator<Item = (S, PBit)>,
        S: Into<String>,
    {
        Valuation { atoms: atoms.into_iter().map(|(k, v)| (k.into(), v)).collect(), ..Valuation::default() }
    }

    /// Parses the valuation JSON format; order keys are written `"a,b"`.
    pub fn from_json(text: &str) -> Result<Valuation, EvalError> {
        let file: ValuationFile = serde_json::from_str(text).map_err(|e| EvalError::Format(e.to_string()))?;
        let mut less = BTreeMap::new();
        for (key, v) in file.less {
            let (a, b) = key
                .split_once(',')
                .ok_or_else(|| EvalError::Format(format!("order key `{key}` is not of the form \"a,b\"")))?;
            less.insert((a.trim().to_string(), b.trim().to_string()), v);
        }
        Ok(Valuation { domain: file.domain, atoms: file.atoms, preds: file.preds, less, open_world: file.open_world })
    }

    pub fn to_json(&self) -> String {
        let file = ValuationFile {
            domain: self.domain.clone(),
            atoms: self.atoms.clone(),
            preds: self.preds.clone(),
            less: self.less.iter().map(|((a, b), v)| (format!("{a},{b}"), *v)).collect(),
            open_world: self.open_world,
        };
        serde_json::to_string_pretty(&file).expect("valuation serializes")
    }

    /// Domain individuals, usable as free names when parsing.
    pub fn individuals(&self) -> BTreeSet<String> {
        self.domain.iter().cloned().collect()
    }

    fn missing(&self, err: EvalError) -> Result<PBit, EvalError> {
        if self.open_world {
            Ok(PBit::Neither)
        } else {
            Err(err)
        }
    }
}

/// Evaluates `e` under `v` with the default (twist) implication.
pub fn evaluate(e: &Expr, v: &Valuation) -> Result<PBit, EvalError> {
    Evaluator::new(v).eval(e)
}

/// Compositional evaluator with variable bindings for quantifiers and free terms.
#[derive(Debug, Clone)]
pub struct Evaluator<'v> {
    valuation: &'v Valuation,
    implication: Implication,
    env: Vec<(String, String)>,
}

impl<'v> Evaluator<'v> {
    pub fn new(valuation: &'v Valuation) -> Self {
        Evaluator { valuation, implication: Implication::Twist, env: Vec::new() }
    }

    pub fn implication(mut self, implication: Implication) -> Self {
        self.implication = implication;
        self
    }

    /// Binds a free variable to a domain individual.
    pub fn bind(mut self, var: impl Into<String>, individual: impl Into<String>) -> Self {
        self.env.push((var.into(), individual.into()));
        self
    }

    fn resolve(&self, term: &str) -> Result<String, EvalError> {
        if let Some((_, ind)) = self.env.iter().rev().find(|(v, _)| v == term) {
            return Ok(ind.clone());
        }
        if self.valuation.domain.iter().any(|d| d == term) {
            return Ok(term.to_string());
        }
        Err(EvalError::UnknownTerm(term.to_string()))
    }

    pub fn eval(&mut self, e: &Expr) -> Result<PBit, EvalError> {
        let v = self.valuation;
        match e {
            Expr::Const(c) => Ok(*c),
            Expr::Atom(a) => match v.atoms.get(a) {
                Some(&b) => Ok(b),
                None => v.missing(EvalError::MissingAtom(a.clone())),
            },
            Expr::Pred(p, t) => {
                let ind = self.resolve(t)?;
                match v.preds.get(p).and_then(|m| m.get(&ind)) {
                    Some(&b) => Ok(b),
                    None => v.missing(EvalError::MissingPred(p.clone(), ind)),
                }
            }
            Expr::Less(a, b) => {
                let key = (self.resolve(a)?, self.resolve(b)?);
                match v.less.get(&key) {
                    Some(&b) => Ok(b),
                    None => v.missing(EvalError::MissingOrder(key.0, key.1)),
                }
            }
            Expr::Unary(op, inner) => Ok(self.eval(inner)?.apply(*op)),
            Expr::Binary(op, l, r) => {
                let a = self.eval(l)?;
                let b = self.eval(r)?;
                Ok(apply_binary_with(self.implication, *op, a, b))
            }
            Expr::Quant(q, var, body) => {
                let (op, mut acc) = match q {
                    Quantifier::Forall => (BinaryOp::Meet, PBit::True),
                    Quantifier::Exists => (BinaryOp::Join, PBit::False),
                };
                for ind in &v.domain {
                    self.env.push((var.clone(), ind.clone()));
                    let r = self.eval(body);
                    self.env.pop();
                    acc = apply_binary_with(self.implication, op, acc, r?);
                }
                Ok(acc)
            }
        }
    }
}

/// Outcome of a truth-table derivability check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivability {
    pub derivable: bool,
    /// First valuation (in enumeration order) giving a non-designated value.
    pub witness: Option<BTreeMap<String, PBit>>,
}

/// Checks designation under all `4^k` valuations of the `k` atoms of `e`.
///
/// Valuations are enumerated as an odometer over `T, F, B, N`, last atom
/// fastest.
pub fn is_derivable(e: &Expr) -> Result<Derivability, EvalError> {
    is_derivable_with(e, Implication::Twist)
}

pub fn is_derivable_with(e: &Expr, implication: Implication) -> Result<Derivability, EvalError> {
    if !e.is_propositional() {
        return Err(EvalError::NotPropositional);
    }
    let atoms: Vec<String> = e.atoms().into_iter().collect();
    if atoms.len() > MAX_DERIVABILITY_ATOMS {
        return Err(EvalError::TooManyAtoms(atoms.len()));
    }
    let mut v = Valuation::with_atoms(atoms.iter().map(|a| (a.clone(), PBit::ALL[0])));
    let mut digits = vec![0usize; atoms.len()];
    loop {
        for (a, &d) in atoms.iter().zip(&digits) {
            *v.atoms.get_mut(a).expect("atom present") = PBit::ALL[d];
        }
        if !Evaluator::new(&v).implication(implication).eval(e)?.is_designated() {
            return Ok(Derivability { derivable: false, witness: Some(v.atoms) });
        }
        // advance odometer
        let mut i = digits.len();
        loop {
            if i == 0 {
                return Ok(Derivability { derivable: true, witness: None });
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < 4 {
                break;
            }
            digits[i] = 0;
        }
    }
}
