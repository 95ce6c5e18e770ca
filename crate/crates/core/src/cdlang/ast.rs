use std::collections::BTreeSet;
use std::fmt;

use crate::pbit::{BinaryOp, PBit, UnaryOp};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantifier {
    /// Meet over the domain.
    Forall,
    /// Join over the domain.
    Exists,
}

impl Quantifier {
    pub const fn keyword(self) -> &'static str {
        match self {
            Quantifier::Forall => "all",
            Quantifier::Exists => "ex",
        }
    }
}

/// A CD-logic proposition.
///
/// Terms (predicate arguments and order operands) are plain names: either a
/// quantifier-bound variable, a declared free variable, or a domain
/// individual.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Atom(String),
    Pred(String, String),
    Const(PBit),
    Unary(UnaryOp, Box<Expr>),
    Binary(BinaryOp, Box<Expr>, Box<Expr>),
    Quant(Quantifier, String, Box<Expr>),
    Less(String, String),
}

impl Expr {
    pub fn atom(name: impl Into<String>) -> Expr {
        Expr::Atom(name.into())
    }

    pub fn pred(name: impl Into<String>, term: impl Into<String>) -> Expr {
        Expr::Pred(name.into(), term.into())
    }

    pub fn less(lhs: impl Into<String>, rhs: impl Into<String>) -> Expr {
        Expr::Less(lhs.into(), rhs.into())
    }

    pub fn unary(op: UnaryOp, e: Expr) -> Expr {
        Expr::Unary(op, Box::new(e))
    }

    pub fn binary(op: BinaryOp, l: Expr, r: Expr) -> Expr {
        Expr::Binary(op, Box::new(l), Box::new(r))
    }

    pub fn forall(var: impl Into<String>, body: Expr) -> Expr {
        Expr::Quant(Quantifier::Forall, var.into(), Box::new(body))
    }

    pub fn exists(var: impl Into<String>, body: Expr) -> Expr {
        Expr::Quant(Quantifier::Exists, var.into(), Box::new(body))
    }

    /// Distinct propositional atoms, sorted.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |e| {
            if let Expr::Atom(a) = e {
                out.insert(a.clone());
            }
        });
        out
    }

    /// True when the expression mentions no predicates, order atoms or quantifiers.
    pub fn is_propositional(&self) -> bool {
        let mut ok = true;
        self.visit(&mut |e| {
            if matches!(e, Expr::Pred(..) | Expr::Less(..) | Expr::Quant(..)) {
                ok = false;
            }
        });
        ok
    }

    pub fn depth(&self) -> usize {
        match self {
            Expr::Atom(_) | Expr::Pred(..) | Expr::Const(_) | Expr::Less(..) => 1,
            Expr::Unary(_, e) | Expr::Quant(_, _, e) => 1 + e.depth(),
            Expr::Binary(_, l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    fn visit(&self, f: &mut impl FnMut(&Expr)) {
        f(self);
        match self {
            Expr::Unary(_, e) | Expr::Quant(_, _, e) => e.visit(f),
            Expr::Binary(_, l, r) => {
                l.visit(f);
                r.visit(f);
            }
            _ => {}
        }
    }
}

/// Binding strength of binary operators, loosest first.
pub(crate) const fn level(op: BinaryOp) -> u8 {
    match op {
        BinaryOp::Arrow | BinaryOp::StrongImp => 1,
        BinaryOp::Join | BinaryOp::Par => 2,
        BinaryOp::Meet | BinaryOp::Tensor => 3,
    }
}

pub(crate) const fn right_assoc(op: BinaryOp) -> bool {
    level(op) == 1
}

fn write_child(f: &mut fmt::Formatter<'_>, e: &Expr, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Atom(a) => write!(f, "{a}"),
            Expr::Pred(p, t) => write!(f, "{p}({t})"),
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Less(a, b) => write!(f, "{a} < {b}"),
            Expr::Unary(op, e) => {
                write!(f, "{}", op.symbol())?;
                let parens = matches!(**e, Expr::Binary(..) | Expr::Quant(..) | Expr::Less(..));
                write_child(f, e, parens)
            }
            Expr::Binary(op, l, r) => {
                let lv = level(*op);
                let child_level = |e: &Expr| match e {
                    Expr::Binary(o, ..) => level(*o),
                    Expr::Quant(..) => 0,
                    _ => u8::MAX,
                };
                let (lp, rp) = if right_assoc(*op) {
                    (child_level(l) <= lv, child_level(r) < lv)
                } else {
                    (child_level(l) < lv, child_level(r) <= lv)
                };
                write_child(f, l, lp || matches!(**l, Expr::Quant(..)))?;
                write!(f, " {} ", op.symbol())?;
                write_child(f, r, rp || matches!(**r, Expr::Quant(..)))
            }
            Expr::Quant(q, v, e) => write!(f, "{} {v}. {e}", q.keyword()),
        }
    }
}
