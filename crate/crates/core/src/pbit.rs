//! Four-valued p-bits over the two-element Boolean base.
//!
//! A p-bit records a positive and a negative evidence bit independently:
//!
//! ```text
//!        B (1,1)
//!       /       \
//!  F (0,1)     T (1,0)        knowledge order, bottom to top
//!       \       /
//!        N (0,0)
//! ```
//!
//! All connectives are precomputed into 4x4 lookup tables from their bit
//! formulas. Implication uses the twist form `(x -> y, x & y')`; the variant
//! with negative part `x' & y'` is reachable through [`Implication::Literal`]
//! for comparison only (it breaks the tensor unit law).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Error parsing a p-bit or an operator name.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PBitError {
    #[error("invalid p-bit `{0}` (expected T, F, B, N or a pair like (1,0))")]
    Invalid(String),
    #[error("({x},{y}) is not one of the four admissible KC points")]
    InadmissibleKc { x: i8, y: i8 },
    #[error("unknown operator `{0}`")]
    UnknownOperator(String),
}

/// A paraconsistent truth value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PBit {
    /// `(0,0)`: neither true nor false.
    Neither,
    /// `(1,0)`.
    True,
    /// `(0,1)`.
    False,
    /// `(1,1)`: both true and false.
    Both,
}

use PBit::{Both, False, Neither, True};

impl PBit {
    pub const ALL: [PBit; 4] = [True, False, Both, Neither];

    pub const fn from_bits(pos: bool, neg: bool) -> PBit {
        match (pos, neg) {
            (true, false) => True,
            (false, true) => False,
            (true, true) => Both,
            (false, false) => Neither,
        }
    }

    /// Positive evidence component (truth coordinate).
    pub const fn pos(self) -> bool {
        matches!(self, True | Both)
    }

    /// Negative evidence component (falsity coordinate).
    pub const fn neg(self) -> bool {
        matches!(self, False | Both)
    }

    /// Dense index `pos + 2*neg` used by the lookup tables.
    pub const fn index(self) -> usize {
        self.pos() as usize | ((self.neg() as usize) << 1)
    }

    const fn from_index(i: usize) -> PBit {
        PBit::from_bits(i & 1 == 1, i & 2 == 2)
    }

    pub const fn symbol(self) -> char {
        match self {
            True => 'T',
            False => 'F',
            Both => 'B',
            Neither => 'N',
        }
    }

    /// Derivable formulas evaluate to `T` or `B`.
    pub const fn is_designated(self) -> bool {
        self.pos()
    }

    pub fn apply(self, op: UnaryOp) -> PBit {
        UNARY[op as usize][self.index()]
    }

    pub fn combine(self, op: BinaryOp, other: PBit) -> PBit {
        BINARY[op as usize][self.index()][other.index()]
    }

    pub fn demi(self) -> PBit {
        self.apply(UnaryOp::Demi)
    }

    pub fn bang(self) -> PBit {
        self.apply(UnaryOp::Bang)
    }

    pub fn gamma(self) -> PBit {
        self.apply(UnaryOp::Gamma)
    }

    pub fn meet(self, other: PBit) -> PBit {
        self.combine(BinaryOp::Meet, other)
    }

    pub fn join(self, other: PBit) -> PBit {
        self.combine(BinaryOp::Join, other)
    }

    pub fn arrow(self, other: PBit) -> PBit {
        self.combine(BinaryOp::Arrow, other)
    }

    pub fn strong_imp(self, other: PBit) -> PBit {
        self.combine(BinaryOp::StrongImp, other)
    }

    pub fn tensor(self, other: PBit) -> PBit {
        self.combine(BinaryOp::Tensor, other)
    }

    pub fn par(self, other: PBit) -> PBit {
        self.combine(BinaryOp::Par, other)
    }

    /// Belnap knowledge order: `N` at the bottom, `B` at the top.
    pub const fn knowledge_leq(self, other: PBit) -> bool {
        (!self.pos() || other.pos()) && (!self.neg() || other.neg())
    }

    /// Belnap truth order: `F` at the bottom, `T` at the top.
    pub const fn truth_leq(self, other: PBit) -> bool {
        (!self.pos() || other.pos()) && (!other.neg() || self.neg())
    }

    pub const fn to_kc(self) -> KcPoint {
        match self {
            True => KcPoint { x: 1, y: 0 },
            Neither => KcPoint { x: 0, y: 1 },
            Both => KcPoint { x: -1, y: 0 },
            False => KcPoint { x: 0, y: -1 },
        }
    }

    pub fn from_kc(p: KcPoint) -> Result<PBit, PBitError> {
        match (p.x, p.y) {
            (1, 0) => Ok(True),
            (0, 1) => Ok(Neither),
            (-1, 0) => Ok(Both),
            (0, -1) => Ok(False),
            (x, y) => Err(PBitError::InadmissibleKc { x, y }),
        }
    }

    pub const fn trace_status(self) -> TraceStatus {
        TraceStatus { positive_nonempty: self.pos(), negative_nonempty: self.neg() }
    }
}

impl fmt::Display for PBit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl FromStr for PBit {
    type Err = PBitError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        match t {
            "T" => return Ok(True),
            "F" => return Ok(False),
            "B" => return Ok(Both),
            "N" => return Ok(Neither),
            _ => {}
        }
        let inner =
            t.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(|| PBitError::Invalid(s.to_string()))?;
        let mut parts = inner.split(',').map(str::trim);
        let bit = |p: Option<&str>| match p {
            Some("0") => Ok(false),
            Some("1") => Ok(true),
            _ => Err(PBitError::Invalid(s.to_string())),
        };
        let pos = bit(parts.next())?;
        let neg = bit(parts.next())?;
        if parts.next().is_some() {
            return Err(PBitError::Invalid(s.to_string()));
        }
        Ok(PBit::from_bits(pos, neg))
    }
}

impl Serialize for PBit {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(match self {
            True => "T",
            False => "F",
            Both => "B",
            Neither => "N",
        })
    }
}

impl<'de> Deserialize<'de> for PBit {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Point in the planar representation where demi-negation is a quarter turn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KcPoint {
    pub x: i8,
    pub y: i8,
}

/// Emptiness of the positive/negative execution traces of a typed program.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TraceStatus {
    pub positive_nonempty: bool,
    pub negative_nonempty: bool,
}

impl TraceStatus {
    pub const fn to_pbit(self) -> PBit {
        PBit::from_bits(self.positive_nonempty, self.negative_nonempty)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UnaryOp {
    /// Component swap.
    Neg,
    /// Square root of negation: `(x,x') -> (!x', x)`.
    Demi,
    /// `a & B`, strips negative content.
    Bang,
    /// `a | B`.
    Gamma,
    /// `a & N`.
    WeakBang,
    /// `a | N`.
    WeakGamma,
}

impl UnaryOp {
    pub const ALL: [UnaryOp; 6] =
        [UnaryOp::Neg, UnaryOp::Demi, UnaryOp::Bang, UnaryOp::Gamma, UnaryOp::WeakBang, UnaryOp::WeakGamma];

    pub const fn name(self) -> &'static str {
        match self {
            UnaryOp::Neg => "neg",
            UnaryOp::Demi => "demi",
            UnaryOp::Bang => "bang",
            UnaryOp::Gamma => "gamma",
            UnaryOp::WeakBang => "weak_bang",
            UnaryOp::WeakGamma => "weak_gamma",
        }
    }

    /// Surface syntax of the prefix operator.
    pub const fn symbol(self) -> &'static str {
        match self {
            UnaryOp::Neg => "~",
            UnaryOp::Demi => "%",
            UnaryOp::Bang => "!",
            UnaryOp::Gamma => "?",
            UnaryOp::WeakBang => "!-",
            UnaryOp::WeakGamma => "?-",
        }
    }
}

impl FromStr for UnaryOp {
    type Err = PBitError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        UnaryOp::ALL.into_iter().find(|op| op.name() == s).ok_or_else(|| PBitError::UnknownOperator(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BinaryOp {
    Meet,
    Join,
    /// Weak (Heyting-style) implication `->`.
    Arrow,
    /// Substitutable implication `=>`: `(a -> b) & (~b -> ~a)`.
    StrongImp,
    /// `~(a => ~b)`, with unit `B`.
    Tensor,
    /// De Morgan dual of tensor.
    Par,
}

impl BinaryOp {
    pub const ALL: [BinaryOp; 6] =
        [BinaryOp::Meet, BinaryOp::Join, BinaryOp::Arrow, BinaryOp::StrongImp, BinaryOp::Tensor, BinaryOp::Par];

    pub const fn name(self) -> &'static str {
        match self {
            BinaryOp::Meet => "meet",
            BinaryOp::Join => "join",
            BinaryOp::Arrow => "arrow",
            BinaryOp::StrongImp => "strong_imp",
            BinaryOp::Tensor => "tensor",
            BinaryOp::Par => "par",
        }
    }

    pub const fn symbol(self) -> &'static str {
        match self {
            BinaryOp::Meet => "&",
            BinaryOp::Join => "|",
            BinaryOp::Arrow => "->",
            BinaryOp::StrongImp => "=>",
            BinaryOp::Tensor => "(*)",
            BinaryOp::Par => "(+)",
        }
    }
}

impl FromStr for BinaryOp {
    type Err = PBitError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BinaryOp::ALL.into_iter().find(|op| op.name() == s).ok_or_else(|| PBitError::UnknownOperator(s.to_string()))
    }
}

/// Which negative component the weak implication carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Implication {
    /// `(x -> y, x & y')`.
    #[default]
    Twist,
    /// `(x -> y, x' & y')`. Not a unit-preserving implication; kept for comparison.
    Literal,
}

const fn unary_formula(op: UnaryOp, a: PBit) -> PBit {
    let (x, xn) = (a.pos(), a.neg());
    match op {
        UnaryOp::Neg => PBit::from_bits(xn, x),
        UnaryOp::Demi => PBit::from_bits(!xn, x),
        UnaryOp::Bang => PBit::from_bits(x, true),
        UnaryOp::Gamma => PBit::from_bits(true, xn),
        UnaryOp::WeakBang => PBit::from_bits(false, xn),
        UnaryOp::WeakGamma => PBit::from_bits(x, false),
    }
}

const fn imp_bit(a: bool, b: bool) -> bool {
    !a || b
}

const fn arrow_formula(imp: Implication, a: PBit, b: PBit) -> PBit {
    let neg = match imp {
        Implication::Twist => a.pos() && b.neg(),
        Implication::Literal => a.neg() && b.neg(),
    };
    PBit::from_bits(imp_bit(a.pos(), b.pos()), neg)
}

const fn strong_imp_formula(imp: Implication, a: PBit, b: PBit) -> PBit {
    let forward = arrow_formula(imp, a, b);
    let back = arrow_formula(imp, unary_formula(UnaryOp::Neg, b), unary_formula(UnaryOp::Neg, a));
    PBit::from_bits(forward.pos() && back.pos(), forward.neg() || back.neg())
}

const fn tensor_formula(imp: Implication, a: PBit, b: PBit) -> PBit {
    unary_formula(UnaryOp::Neg, strong_imp_formula(imp, a, unary_formula(UnaryOp::Neg, b)))
}

const fn binary_formula(imp: Implication, op: BinaryOp, a: PBit, b: PBit) -> PBit {
    let (x, xn, y, yn) = (a.pos(), a.neg(), b.pos(), b.neg());
    match op {
        BinaryOp::Meet => PBit::from_bits(x && y, xn || yn),
        BinaryOp::Join => PBit::from_bits(x || y, xn && yn),
        BinaryOp::Arrow => arrow_formula(imp, a, b),
        BinaryOp::StrongImp => strong_imp_formula(imp, a, b),
        BinaryOp::Tensor => tensor_formula(imp, a, b),
        BinaryOp::Par => unary_formula(
            UnaryOp::Neg,
            tensor_formula(imp, unary_formula(UnaryOp::Neg, a), unary_formula(UnaryOp::Neg, b)),
        ),
    }
}

const fn unary_table() -> [[PBit; 4]; 6] {
    let mut t = [[Neither; 4]; 6];
    let mut o = 0;
    while o < 6 {
        let mut i = 0;
        while i < 4 {
            t[o][i] = unary_formula(UnaryOp::ALL[o], PBit::from_index(i));
            i += 1;
        }
        o += 1;
    }
    t
}

const fn binary_table(imp: Implication) -> [[[PBit; 4]; 4]; 6] {
    let mut t = [[[Neither; 4]; 4]; 6];
    let mut o = 0;
    while o < 6 {
        let mut i = 0;
        while i < 4 {
            let mut j = 0;
            while j < 4 {
                t[o][i][j] = binary_formula(imp, BinaryOp::ALL[o], PBit::from_index(i), PBit::from_index(j));
                j += 1;
            }
            i += 1;
        }
        o += 1;
    }
    t
}

static UNARY: [[PBit; 4]; 6] = unary_table();
static BINARY: [[[PBit; 4]; 4]; 6] = binary_table(Implication::Twist);
static BINARY_LITERAL: [[[PBit; 4]; 4]; 6] = binary_table(Implication::Literal);

pub fn apply_unary(op: UnaryOp, a: PBit) -> PBit {
    a.apply(op)
}

pub fn apply_binary(op: BinaryOp, a: PBit, b: PBit) -> PBit {
    a.combine(op, b)
}

/// Binary connective under an explicit implication variant.
pub fn apply_binary_with(imp: Implication, op: BinaryOp, a: PBit, b: PBit) -> PBit {
    match imp {
        Implication::Twist => BINARY[op as usize][a.index()][b.index()],
        Implication::Literal => BINARY_LITERAL[op as usize][a.index()][b.index()],
    }
}

impl std::ops::Not for PBit {
    type Output = PBit;

    fn not(self) -> PBit {
        self.apply(UnaryOp::Neg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Tables must agree with the formulas they were generated from.
    #[test]
    fn tables_match_formulas() {
        for a in PBit::ALL {
            for op in UnaryOp::ALL {
                assert_eq!(a.apply(op), unary_formula(op, a));
            }
            for b in PBit::ALL {
                for op in BinaryOp::ALL {
                    for imp in [Implication::Twist, Implication::Literal] {
                        assert_eq!(apply_binary_with(imp, op, a, b), binary_formula(imp, op, a, b));
                    }
                }
            }
        }
    }

    #[test]
    fn demi_examples() {
        assert_eq!(Neither.demi(), True);
        assert_eq!(True.demi(), Both);
        assert_eq!(Both.demi(), False);
        assert_eq!(False.demi(), Neither);
    }

    #[test]
    fn unary_examples() {
        assert_eq!(!Both, Both);
        assert_eq!(!Neither, Neither);
        assert_eq!(True.bang(), Both);
        assert_eq!(False.gamma(), Both);
        assert_eq!(True.apply(UnaryOp::WeakBang), Neither);
        assert_eq!(False.apply(UnaryOp::WeakGamma), Neither);
    }

    #[test]
    fn binary_examples() {
        assert_eq!(True.tensor(Both), True);
        assert_eq!(False.tensor(Both), False);
        assert_eq!(Neither.tensor(Both), Neither);
        assert_eq!(Both.tensor(Both), Both);
        assert_eq!(True.arrow(False), False);
        assert_eq!(Both.meet(True), Both);
        assert_eq!(Both.join(False), Both);
    }

    #[test]
    fn literal_arrow_differs_on_true_to_false() {
        assert_eq!(apply_binary_with(Implication::Literal, BinaryOp::Arrow, True, False), Neither);
        // and loses the tensor unit
        let broken = PBit::ALL.iter().any(|&a| apply_binary_with(Implication::Literal, BinaryOp::Tensor, a, Both) != a);
        assert!(broken);
    }

    #[test]
    fn belnap_orders() {
        assert!(Neither.knowledge_leq(Both));
        assert!(True.knowledge_leq(Both) && False.knowledge_leq(Both));
        assert!(!True.knowledge_leq(False));
        assert!(False.truth_leq(True));
        assert!(!Both.truth_leq(Neither));
        assert!(!Neither.truth_leq(Both));
        for a in PBit::ALL {
            assert!(Neither.knowledge_leq(a) && a.knowledge_leq(Both));
            assert!(False.truth_leq(a) && a.truth_leq(True));
        }
    }

    #[test]
    fn designation() {
        assert!(True.is_designated());
        assert!(Both.is_designated());
        assert!(!Neither.is_designated());
        assert!(!False.is_designated());
    }

    #[test]
    fn kc_bijection() {
        assert_eq!(Both.to_kc(), KcPoint { x: -1, y: 0 });
        assert_eq!(PBit::from_kc(KcPoint { x: 0, y: -1 }), Ok(False));
        for a in PBit::ALL {
            assert_eq!(PBit::from_kc(a.to_kc()), Ok(a));
        }
        assert!(PBit::from_kc(KcPoint { x: 1, y: 1 }).is_err());
        assert!(PBit::from_kc(KcPoint { x: 0, y: 0 }).is_err());
    }

    #[test]
    fn trace_table() {
        let t = True.trace_status();
        assert!(t.positive_nonempty && !t.negative_nonempty);
        let n = Neither.trace_status();
        assert!(!n.positive_nonempty && !n.negative_nonempty);
        let b = Both.trace_status();
        assert!(b.positive_nonempty && b.negative_nonempty);
        for a in PBit::ALL {
            assert_eq!(a.trace_status().to_pbit(), a);
        }
    }

    #[test]
    fn parse_forms() {
        assert_eq!("T".parse(), Ok(True));
        assert_eq!("(1,1)".parse(), Ok(Both));
        assert_eq!(" ( 0 , 1 ) ".parse(), Ok(False));
        assert_eq!("(0,0)".parse(), Ok(Neither));
        assert!("X".parse::<PBit>().is_err());
        assert!("(1,2)".parse::<PBit>().is_err());
        assert!("(1,0,1)".parse::<PBit>().is_err());
        assert_eq!(serde_json::to_string(&Both).unwrap(), "\"B\"");
        assert_eq!(serde_json::from_str::<PBit>("\"(1,0)\"").unwrap(), True);
    }

    #[test]
    fn operator_names_round_trip() {
        for op in UnaryOp::ALL {
            assert_eq!(op.name().parse(), Ok(op));
        }
        for op in BinaryOp::ALL {
            assert_eq!(op.name().parse(), Ok(op));
        }
        assert!("xor".parse::<BinaryOp>().is_err());
    }

    #[test]
    fn excluded_middle_fails() {
        let v = Neither.join(!Neither);
        assert_eq!(v, Neither);
        assert!(!v.is_designated());
    }
}
