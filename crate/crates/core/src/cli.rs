//! Command-line front end. [`run`] does all the work and returns the
//! process outcome, so it can be driven from tests without spawning.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cdlang::{self, Evaluator, Valuation};
use crate::fca::{self, BlendStrategy, FormalContext, LatticeConcept, LatticeReport, Mode};
use crate::ppd::{self, InstanceEvidence, Ppd};
use crate::probabilize::{self, JointTable, SituationEnsemble};
use crate::sorites::{self, ClassificationFile, SeriesModel};

/// Outcome of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Parser)]
#[command(name = "paralogic", version, about = "Four-valued evidence logic toolkit")]
struct Cli {
    /// Machine-readable output with full precision.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate an expression under a valuation file.
    Eval {
        #[arg(long)]
        expr: String,
        #[arg(long)]
        valuation: PathBuf,
    },
    /// Decide whether a propositional expression is always designated.
    Taut {
        #[arg(long)]
        expr: String,
    },
    /// Count evidence for a proposition over a situation ensemble.
    Probabilize {
        #[arg(long)]
        ensemble: PathBuf,
        #[arg(long)]
        prop: String,
        /// Confidence parameter for n/(n+k).
        #[arg(long)]
        k: Option<f64>,
        /// Also print the (strength, count) truth value.
        #[arg(long)]
        stv: bool,
    },
    /// Drop situations at random and print the remaining ensemble.
    Subsample {
        #[arg(long)]
        ensemble: PathBuf,
        #[arg(long)]
        rate: f64,
        #[arg(long)]
        seed: u64,
    },
    /// Cutoff values of a sorites series model.
    Sorites {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        z: Option<String>,
    },
    /// Aggregate boundary classifications of one value.
    Boundary {
        #[arg(long)]
        cases: PathBuf,
    },
    /// Mutual information of two p-bits from a joint table.
    Dep {
        #[arg(long)]
        joint: PathBuf,
    },
    /// Entropy of a paraconsistent distribution.
    Entropy {
        #[arg(long)]
        ppd: PathBuf,
    },
    /// Relative entropy of two paraconsistent distributions.
    Kl {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, default_value_t = ppd::DEFAULT_EPSILON)]
        eps: f64,
    },
    /// Intension degree of an instance against a context.
    Intension {
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        context: PathBuf,
        #[arg(long, default_value_t = ppd::DEFAULT_EPSILON)]
        eps: f64,
    },
    /// Enumerate the concept lattice of a formal context.
    Fca {
        #[arg(long)]
        context: PathBuf,
        /// Write the lattice as a Graphviz digraph.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Check meets and joins; exit 1 on any violation.
        #[arg(long)]
        verify: bool,
    },
    /// Blend two property maps.
    Blend {
        #[arg(long)]
        c1: PathBuf,
        #[arg(long)]
        c2: PathBuf,
        #[arg(long, value_enum)]
        strategy: StrategyArg,
        /// Required by the sample strategy.
        #[arg(long)]
        seed: Option<u64>,
        /// Weight of c1 under the average strategy.
        #[arg(long, default_value_t = 0.5)]
        weight: f64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum StrategyArg {
    SelectFirst,
    SelectSecond,
    Average,
    Sample,
}

enum Failure {
    Usage(String),
    Domain(String),
}

type Outcome = Result<String, Failure>;

fn domain(e: impl std::fmt::Display) -> Failure {
    Failure::Domain(e.to_string())
}

fn in_file(path: &Path) -> impl Fn(String) -> Failure + '_ {
    move |msg| Failure::Domain(format!("{}: {msg}", path.display()))
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
}

fn load<T, E: std::fmt::Display>(path: &Path, parse: impl FnOnce(&str) -> Result<T, E>) -> Result<T, Failure> {
    parse(&read(path)?).map_err(|e| in_file(path)(e.to_string()))
}

fn parse_expr(text: &str, free: &std::collections::BTreeSet<String>) -> Result<cdlang::Expr, Failure> {
    cdlang::parse_with_free(text, free).map_err(|e| Failure::Usage(format!("--expr: {e}")))
}

fn f6(x: f64) -> String {
    format!("{x:.6}")
}

fn count(x: f64) -> String {
    if x.fract() == 0.0 && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else {
        f6(x)
    }
}

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

/// Parses `argv` (including the program name) and executes the subcommand.
pub fn run<I, S>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                CommandResult { exit_code: 2, stdout: String::new(), stderr: rendered }
            } else {
                CommandResult { exit_code: 0, stdout: rendered, stderr: String::new() }
            };
        }
    };
    match dispatch(&cli) {
        Ok(stdout) => CommandResult { exit_code: 0, stdout, stderr: String::new() },
        Err(Failure::Usage(msg)) => {
            CommandResult { exit_code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") }
        }
        Err(Failure::Domain(msg)) => {
            CommandResult { exit_code: 1, stdout: String::new(), stderr: format!("error: {msg}\n") }
        }
    }
}

fn dispatch(cli: &Cli) -> Outcome {
    let json = cli.json;
    match &cli.command {
        Command::Eval { expr, valuation } => {
            let v = load(valuation, Valuation::from_json)?;
            let e = parse_expr(expr, &v.individuals())?;
            let value = Evaluator::new(&v).eval(&e).map_err(domain)?;
            Ok(if json { to_json(&json!({ "value": value })) } else { format!("value: {value}\n") })
        }
        Command::Taut { expr } => {
            let e = parse_expr(expr, &Default::default())?;
            let d = cdlang::is_derivable(&e).map_err(domain)?;
            if json {
                return Ok(to_json(&json!({ "derivable": d.derivable, "witness": d.witness })));
            }
            let mut out = format!("derivable: {}\n", d.derivable);
            if let Some(w) = d.witness {
                let parts: Vec<String> = w.iter().map(|(a, v)| format!("{a}={v}")).collect();
                let _ = writeln!(out, "witness: {}", parts.join(" "));
            }
            Ok(out)
        }
        Command::Probabilize { ensemble, prop, k, stv } => {
            let ens = load(ensemble, SituationEnsemble::from_json)?;
            let e = parse_expr(prop, &Default::default())?;
            let c = probabilize::aggregate(&ens, &e).map_err(domain)?;
            let t = c.para();
            let (pp, pn) = c.pln();
            let s = if *stv { Some(c.to_stv().map_err(domain)?) } else { None };
            let conf = match (s, k) {
                (Some(s), Some(k)) => Some(s.confidence(*k).map_err(domain)?),
                (None, Some(k)) => Some(probabilize::confidence((pp + pn) as f64, *k).map_err(domain)?),
                _ => None,
            };
            if json {
                let mut v = json!({
                    "counts": c,
                    "t_para": [t.w_pos, t.w_neg],
                    "t_pln": [pp, pn],
                });
                if let Some(s) = s {
                    v["stv"] = json!([s.s, s.n]);
                }
                if let Some(conf) = conf {
                    v["conf"] = json!(conf);
                }
                return Ok(to_json(&v));
            }
            let mut out = format!("t_para=({},{}) t_pln=({pp},{pn})", f6(t.w_pos), f6(t.w_neg));
            if let Some(s) = s {
                let _ = write!(out, " stv=({},{})", f6(s.s), count(s.n));
            }
            if let Some(conf) = conf {
                let _ = write!(out, " conf={}", f6(conf));
            }
            out.push('\n');
            Ok(out)
        }
        Command::Subsample { ensemble, rate, seed } => {
            let ens = load(ensemble, SituationEnsemble::from_json)?;
            let sub = probabilize::subsample(&ens, *rate, *seed).map_err(domain)?;
            let mut out = sub.to_json();
            out.push('\n');
            Ok(out)
        }
        Command::Sorites { model, z } => {
            let m = load(model, SeriesModel::from_json)?;
            if let Some(z) = z {
                let v = sorites::cutoff_value(&m, z).map_err(domain)?;
                return Ok(if json { to_json(&json!({ "z": z, "cutoff": v })) } else { format!("{z}: {v}\n") });
            }
            let r = sorites::existential_cutoff(&m).map_err(domain)?;
            if json {
                let cutoffs: serde_json::Map<String, Value> =
                    r.cutoffs.iter().map(|(z, v)| (z.clone(), json!(v))).collect();
                return Ok(to_json(&json!({
                    "cutoffs": cutoffs,
                    "exists_cutoff": r.exists,
                    "not_exists_cutoff": r.not_exists,
                })));
            }
            let mut out = String::new();
            for (z, v) in &r.cutoffs {
                let _ = writeln!(out, "{z}: {v}");
            }
            let _ = writeln!(out, "exists-cutoff: {} / not-exists-cutoff: {}", r.exists, r.not_exists);
            Ok(out)
        }
        Command::Boundary { cases } => {
            let file = load(cases, ClassificationFile::from_json)?;
            let b = sorites::fuzzy_boundary(&file.cases).map_err(domain)?;
            if json {
                return Ok(to_json(&json!({ "z": file.z, "raw": [b.w_pos, b.w_neg], "t": [b.s_pos, b.s_neg] })));
            }
            Ok(format!("z: {}\nraw=({},{})\nt=({},{})\n", file.z, f6(b.w_pos), f6(b.w_neg), f6(b.s_pos), f6(b.s_neg)))
        }
        Command::Dep { joint } => {
            let j = load(joint, JointTable::from_json)?;
            let d = probabilize::dependency_stats(&j);
            if json {
                return Ok(to_json(&json!(d)));
            }
            Ok(format!("mi_pbit: {}\nmi_pos: {}\nmi_neg: {}\n", f6(d.mi_pbit), f6(d.mi_pos), f6(d.mi_neg)))
        }
        Command::Entropy { ppd: path } => {
            let p = load(path, Ppd::from_json)?;
            let h = ppd::entropy(&p);
            Ok(if json { to_json(&json!({ "entropy": h })) } else { format!("entropy: {}\n", f6(h)) })
        }
        Command::Kl { a, b, eps } => {
            let pa = load(a, Ppd::from_json)?;
            let pb = load(b, Ppd::from_json)?;
            let d = ppd::relative_entropy(&pa, &pb, *eps).map_err(domain)?;
            Ok(if json { to_json(&json!({ "relative_entropy": d })) } else { format!("relative_entropy: {}\n", f6(d)) })
        }
        Command::Intension { x, context, eps } => {
            let ix = load(x, InstanceEvidence::from_json)?;
            let ic = load(context, InstanceEvidence::from_json)?;
            let d = ppd::intension_degree(&ix, &ic, *eps).map_err(domain)?;
            Ok(if json { to_json(&json!({ "intension_degree": d })) } else { format!("intension_degree: {}\n", f6(d)) })
        }
        Command::Fca { context, dot, verify } => {
            let ctx = load(context, FormalContext::from_json)?;
            match ctx.mode() {
                Mode::Fuzzy => {
                    let l = fca::enumerate_fuzzy_concepts(&ctx).map_err(domain)?;
                    fca_output(&ctx, &l, dot.as_deref(), *verify, json)
                }
                _ => {
                    let l = fca::enumerate_concepts(&ctx).map_err(domain)?;
                    fca_output(&ctx, &l, dot.as_deref(), *verify, json)
                }
            }
        }
        Command::Blend { c1, c2, strategy, seed, weight } => {
            let m1 = load(c1, fca::property_map_from_json)?;
            let m2 = load(c2, fca::property_map_from_json)?;
            let strategy = match strategy {
                StrategyArg::SelectFirst => BlendStrategy::SelectFirst,
                StrategyArg::SelectSecond => BlendStrategy::SelectSecond,
                StrategyArg::Average => BlendStrategy::Average { weight_first: *weight },
                StrategyArg::Sample => BlendStrategy::Sample {
                    seed: seed.ok_or_else(|| Failure::Usage("--strategy sample requires --seed".into()))?,
                },
            };
            let out = fca::blend(&m1, &m2, strategy).map_err(domain)?;
            if json {
                let mut s = fca::property_map_to_json(&out);
                s.push('\n');
                return Ok(s);
            }
            let mut s = String::new();
            for (p, (a, b)) in &out {
                let _ = writeln!(s, "{p}: ({},{})", f6(*a), f6(*b));
            }
            Ok(s)
        }
    }
}

fn fca_output<C: LatticeConcept>(
    ctx: &FormalContext,
    l: &fca::ConceptLattice<C>,
    dot: Option<&Path>,
    verify: bool,
    json: bool,
) -> Outcome {
    if let Some(path) = dot {
        std::fs::write(path, l.to_dot(ctx)).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
    }
    let report = if verify { Some(fca::verify_lattice(l)) } else { None };
    let text = if json {
        let concepts: Vec<Value> = l
            .concepts()
            .iter()
            .map(|c| json!({ "extent": c.extent_labels(ctx), "intent": c.intent_labels(ctx) }))
            .collect();
        let mut v = json!({ "mode": ctx.mode().name(), "concepts": concepts });
        if let Some(r) = &report {
            v["violations"] = json!(r.violations);
        }
        to_json(&v)
    } else {
        let mut out = format!("mode: {}\nconcepts: {}\n", ctx.mode().name(), l.len());
        for (i, c) in l.concepts().iter().enumerate() {
            let (e, n) = (c.extent_labels(ctx).join(", "), c.intent_labels(ctx).join(", "));
            let _ = writeln!(out, "{i}: {{{e}}} | {{{n}}}");
        }
        if let Some(r) = &report {
            write_report(&mut out, r);
        }
        out
    };
    match report {
        Some(r) if !r.is_empty() => Err(Failure::Domain(format!(
            "lattice verification failed with {} violation(s)\n{}",
            r.violations.len(),
            text.trim_end()
        ))),
        _ => Ok(text),
    }
}

fn write_report(out: &mut String, r: &LatticeReport) {
    if r.is_empty() {
        out.push_str("verify: ok\n");
    } else {
        for v in &r.violations {
            let _ = writeln!(out, "violation: {v}");
        }
    }
}
