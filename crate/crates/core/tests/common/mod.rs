//! Oracles shared by the integration tests and the acceptance runner.
//! Everything here is written against bare bit pairs and vectors, not the
//! library's tables, so it can catch mistakes there.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use paralogic::cdlang::Expr;
use paralogic::fca::FormalContext;
use paralogic::pbit::{BinaryOp, PBit, UnaryOp};
use rand::Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap()
}

/// `(positive, negative)` evidence bits.
pub type Bits = (bool, bool);

pub fn bits(p: PBit) -> Bits {
    match p {
        PBit::True => (true, false),
        PBit::False => (false, true),
        PBit::Both => (true, true),
        PBit::Neither => (false, false),
    }
}

pub fn unbits(b: Bits) -> PBit {
    match b {
        (true, false) => PBit::True,
        (false, true) => PBit::False,
        (true, true) => PBit::Both,
        (false, false) => PBit::Neither,
    }
}

pub fn o_not(a: Bits) -> Bits {
    (a.1, a.0)
}

pub fn o_meet(a: Bits, b: Bits) -> Bits {
    (a.0 && b.0, a.1 || b.1)
}

pub fn o_join(a: Bits, b: Bits) -> Bits {
    (a.0 || b.0, a.1 && b.1)
}

pub fn o_arrow(a: Bits, b: Bits) -> Bits {
    (!a.0 || b.0, a.0 && b.1)
}

pub fn o_strong(a: Bits, b: Bits) -> Bits {
    o_meet(o_arrow(a, b), o_arrow(o_not(b), o_not(a)))
}

pub fn o_tensor(a: Bits, b: Bits) -> Bits {
    o_not(o_strong(a, o_not(b)))
}

pub fn o_par(a: Bits, b: Bits) -> Bits {
    o_not(o_tensor(o_not(a), o_not(b)))
}

pub fn o_unary(op: UnaryOp, a: Bits) -> Bits {
    match op {
        UnaryOp::Neg => o_not(a),
        UnaryOp::Demi => (!a.1, a.0),
        UnaryOp::Bang => o_meet(a, (true, true)),
        UnaryOp::Gamma => o_join(a, (true, true)),
        UnaryOp::WeakBang => o_meet(a, (false, false)),
        UnaryOp::WeakGamma => o_join(a, (false, false)),
    }
}

pub fn o_binary(op: BinaryOp, a: Bits, b: Bits) -> Bits {
    match op {
        BinaryOp::Meet => o_meet(a, b),
        BinaryOp::Join => o_join(a, b),
        BinaryOp::Arrow => o_arrow(a, b),
        BinaryOp::StrongImp => o_strong(a, b),
        BinaryOp::Tensor => o_tensor(a, b),
        BinaryOp::Par => o_par(a, b),
    }
}

/// Propositional evaluator over bit pairs.
pub fn o_eval(e: &Expr, env: &BTreeMap<String, Bits>) -> Bits {
    match e {
        Expr::Atom(a) => env[a],
        Expr::Const(c) => bits(*c),
        Expr::Unary(op, x) => o_unary(*op, o_eval(x, env)),
        Expr::Binary(op, l, r) => o_binary(*op, o_eval(l, env), o_eval(r, env)),
        _ => panic!("oracle handles propositional expressions only"),
    }
}

/// Designated under every assignment of the four values to `atoms`.
pub fn o_derivable(e: &Expr, atoms: &[&str]) -> bool {
    let all = [(true, false), (false, true), (true, true), (false, false)];
    let mut idx = vec![0usize; atoms.len()];
    loop {
        let env: BTreeMap<String, Bits> = atoms.iter().zip(&idx).map(|(a, &i)| (a.to_string(), all[i])).collect();
        if !o_eval(e, &env).0 {
            return false;
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return true;
            }
            idx[k] += 1;
            if idx[k] < 4 {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

pub const UNARY: [UnaryOp; 6] =
    [UnaryOp::Neg, UnaryOp::Demi, UnaryOp::Bang, UnaryOp::Gamma, UnaryOp::WeakBang, UnaryOp::WeakGamma];
pub const BINARY: [BinaryOp; 6] =
    [BinaryOp::Meet, BinaryOp::Join, BinaryOp::Arrow, BinaryOp::StrongImp, BinaryOp::Tensor, BinaryOp::Par];

/// Every propositional expression of depth at most `depth` over `leaves`.
pub fn all_exprs(leaves: &[Expr], depth: usize) -> Vec<Expr> {
    let mut layers: Vec<Vec<Expr>> = vec![leaves.to_vec()];
    for d in 1..=depth {
        let below: Vec<Expr> = layers.iter().flatten().cloned().collect();
        let prev = &layers[d - 1];
        let fresh_set: std::collections::HashSet<&Expr> = prev.iter().collect();
        let mut next = Vec::new();
        for x in prev {
            for op in UNARY {
                next.push(Expr::unary(op, x.clone()));
            }
        }
        for l in &below {
            for r in &below {
                let fresh = fresh_set.contains(l) || fresh_set.contains(r);
                if fresh {
                    for op in BINARY {
                        next.push(Expr::binary(op, l.clone(), r.clone()));
                    }
                }
            }
        }
        layers.push(next);
    }
    layers.into_iter().flatten().collect()
}

/// Random propositional expression with depth at most `depth`.
pub fn random_expr(rng: &mut impl Rng, atoms: &[&str], depth: usize) -> Expr {
    if depth == 0 || rng.gen_bool(0.25) {
        return if rng.gen_bool(0.8) {
            Expr::atom(atoms[rng.gen_range(0..atoms.len())])
        } else {
            Expr::Const(PBit::ALL[rng.gen_range(0..4)])
        };
    }
    if rng.gen_bool(0.4) {
        Expr::unary(UNARY[rng.gen_range(0..6)], random_expr(rng, atoms, depth - 1))
    } else {
        Expr::binary(
            BINARY[rng.gen_range(0..6)],
            random_expr(rng, atoms, depth - 1),
            random_expr(rng, atoms, depth - 1),
        )
    }
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

pub fn random_para(rng: &mut impl Rng, max_o: usize, max_p: usize) -> FormalContext {
    let (no, np) = (rng.gen_range(0..=max_o), rng.gen_range(0..=max_p));
    let table = (0..no).map(|_| (0..np).map(|_| PBit::ALL[rng.gen_range(0..4)]).collect()).collect();
    FormalContext::para(names("o", no), names("p", np), table).unwrap()
}

pub fn random_crisp(rng: &mut impl Rng, max_o: usize, max_p: usize) -> FormalContext {
    let (no, np) = (rng.gen_range(0..=max_o), rng.gen_range(0..=max_p));
    let density = rng.gen_range(0.1..0.9);
    let table = (0..no).map(|_| (0..np).map(|_| rng.gen_bool(density)).collect()).collect();
    FormalContext::crisp(names("o", no), names("p", np), table).unwrap()
}

/// Incidence as designated/undesignated booleans.
pub fn holds_table(ctx: &FormalContext) -> Vec<Vec<bool>> {
    (0..ctx.objects().len())
        .map(|o| (0..ctx.properties().len()).map(|p| ctx.value(o, p).unwrap().pos()).collect())
        .collect()
}

pub fn o_up(t: &[Vec<bool>], np: usize, ext: &BTreeSet<usize>) -> BTreeSet<usize> {
    (0..np).filter(|&p| ext.iter().all(|&o| t[o][p])).collect()
}

pub fn o_down(t: &[Vec<bool>], int: &BTreeSet<usize>) -> BTreeSet<usize> {
    (0..t.len()).filter(|&o| int.iter().all(|&p| t[o][p])).collect()
}

/// Every fixpoint `(O, P)`, found by scanning all subsets of objects.
pub fn o_concepts(ctx: &FormalContext) -> BTreeSet<(BTreeSet<usize>, BTreeSet<usize>)> {
    let t = holds_table(ctx);
    let (no, np) = (ctx.objects().len(), ctx.properties().len());
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << no) {
        let ext: BTreeSet<usize> = (0..no).filter(|o| mask >> o & 1 == 1).collect();
        let int = o_up(&t, np, &ext);
        if o_down(&t, &int) == ext {
            out.insert((ext, int));
        }
    }
    out
}

pub fn as_sets(
    l: &paralogic::fca::ConceptLattice<paralogic::fca::Concept>,
) -> BTreeSet<(BTreeSet<usize>, BTreeSet<usize>)> {
    l.concepts().iter().map(|c| (c.extent.ones().collect(), c.intent.ones().collect())).collect()
}

/// Base-2 entropy of a probability vector, zero terms dropped.
pub fn o_entropy(p: &[f64]) -> f64 {
    p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.log2()).sum()
}

pub fn random_simplex(rng: &mut impl Rng, n: usize, zeros: bool) -> Vec<f64> {
    let mut v: Vec<f64> =
        (0..n).map(|_| if zeros && rng.gen_bool(0.2) { 0.0 } else { rng.gen_range(0.01..1.0) }).collect();
    if v.iter().all(|&x| x == 0.0) {
        v[0] = 1.0;
    }
    let s: f64 = v.iter().sum();
    v.iter_mut().for_each(|x| *x /= s);
    v
}

/// CLI invocations covered by golden files; `@name` is a fixture path.
pub const CASES: &[(&str, &[&str])] = &[
    ("eval_forall", &["eval", "--expr", "all x. Psi(x)", "--valuation", "@valuation.json"]),
    ("eval_order", &["eval", "--expr", "ex x. Psi(x) & x < b", "--valuation", "@valuation.json"]),
    ("eval_json", &["--json", "eval", "--expr", "A & C", "--valuation", "@valuation.json"]),
    ("taut_excluded_middle", &["taut", "--expr", "A | ~A"]),
    ("taut_bang", &["taut", "--expr", "!A => A"]),
    ("taut_json", &["--json", "taut", "--expr", "A -> C"]),
    ("probabilize_stv", &["probabilize", "--ensemble", "@e.json", "--prop", "A", "--stv", "--k", "20"]),
    ("probabilize_meet", &["probabilize", "--ensemble", "@ensemble_ab.json", "--prop", "A & C"]),
    ("probabilize_json", &["--json", "probabilize", "--ensemble", "@ensemble_ab.json", "--prop", "A (*) C", "--stv"]),
    ("subsample", &["subsample", "--ensemble", "@ensemble_ab.json", "--rate", "0.5", "--seed", "7"]),
    ("sorites", &["sorites", "--model", "@weber.json"]),
    ("sorites_z", &["sorites", "--model", "@weber.json", "--z", "b"]),
    ("sorites_json", &["--json", "sorites", "--model", "@weber.json"]),
    ("boundary_high", &["boundary", "--cases", "@cases_high.json"]),
    ("boundary_mixed", &["boundary", "--cases", "@cases_mixed.json"]),
    ("dep", &["dep", "--joint", "@joint_coupled.json"]),
    ("dep_json", &["--json", "dep", "--joint", "@joint_coupled.json"]),
    ("entropy", &["entropy", "--ppd", "@ppd_a.json"]),
    ("kl", &["kl", "--a", "@ppd_a.json", "--b", "@ppd_b.json"]),
    ("kl_json", &["--json", "kl", "--a", "@ppd_b.json", "--b", "@ppd_a.json", "--eps", "0.001"]),
    ("intension", &["intension", "--x", "@whale.json", "--context", "@mammals.json"]),
    ("fca_diagonal", &["fca", "--context", "@ctx_diagonal.json"]),
    ("fca_para_verify", &["fca", "--context", "@ctx_para.json", "--verify"]),
    ("fca_fuzzy", &["fca", "--context", "@ctx_fuzzy.json", "--verify"]),
    ("fca_json", &["--json", "fca", "--context", "@ctx_para.json", "--verify"]),
    ("blend_average", &["blend", "--c1", "@c1.json", "--c2", "@c2.json", "--strategy", "average"]),
    ("blend_first", &["blend", "--c1", "@c1.json", "--c2", "@c2.json", "--strategy", "select_first"]),
    ("blend_sample", &["blend", "--c1", "@c1.json", "--c2", "@c2.json", "--strategy", "sample", "--seed", "3"]),
    ("blend_json", &["--json", "blend", "--c1", "@c1.json", "--c2", "@c2.json", "--strategy", "select_second"]),
];

pub fn argv(args: &[&str]) -> Vec<String> {
    std::iter::once("paralogic".to_string())
        .chain(args.iter().map(|a| match a.strip_prefix('@') {
            Some(f) => fixture(f).display().to_string(),
            None => a.to_string(),
        }))
        .collect()
}

pub fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.txt"))
}

/// Golden-file form of a CLI result.
pub fn render(r: &paralogic::cli::CommandResult) -> String {
    format!("exit: {}\n{}", r.exit_code, r.stdout)
}
