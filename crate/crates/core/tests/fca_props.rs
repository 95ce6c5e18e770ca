mod common;

use std::collections::BTreeSet;

use common::{as_sets, o_concepts, random_crisp, random_para};
use fixedbitset::FixedBitSet;
use paralogic::fca::{
    enumerate_concepts, enumerate_concepts_with, enumerate_fuzzy_concepts, verify_lattice, FormalContext,
    FuzzyImplication, GradeChain, ParaReading, Strategy,
};
use paralogic::pbit::PBit;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_subset(rng: &mut impl Rng, n: usize) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    for i in 0..n {
        s.set(i, rng.gen_bool(0.5));
    }
    s
}

fn check_galois(ctx: &FormalContext, rng: &mut impl Rng) {
    let (no, np) = (ctx.objects().len(), ctx.properties().len());
    for _ in 0..8 {
        let o1 = random_subset(rng, no);
        let mut o2 = o1.clone();
        o2.union_with(&random_subset(rng, no));
        let (i1, i2) = (ctx.derive_properties(&o1).unwrap(), ctx.derive_properties(&o2).unwrap());
        assert!(i2.is_subset(&i1), "antitone");
        let closed = ctx.derive_objects(&i1).unwrap();
        assert!(o1.is_subset(&closed), "extensive");
        assert_eq!(ctx.derive_properties(&closed).unwrap(), i1, "idempotent");

        let p1 = random_subset(rng, np);
        let mut p2 = p1.clone();
        p2.union_with(&random_subset(rng, np));
        assert!(ctx.derive_objects(&p2).unwrap().is_subset(&ctx.derive_objects(&p1).unwrap()));
        let back = ctx.derive_properties(&ctx.derive_objects(&p1).unwrap()).unwrap();
        assert!(p1.is_subset(&back));
    }
}

#[test]
fn galois_connection_holds() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for i in 0..200 {
        let ctx = if i % 2 == 0 { random_crisp(&mut rng, 6, 6) } else { random_para(&mut rng, 6, 6) };
        check_galois(&ctx, &mut rng);
    }
}

#[test]
fn enumeration_matches_brute_force_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for i in 0..300 {
        let ctx = if i % 2 == 0 { random_crisp(&mut rng, 5, 5) } else { random_para(&mut rng, 5, 5) };
        let l = enumerate_concepts(&ctx).unwrap();
        assert_eq!(as_sets(&l), o_concepts(&ctx));
        assert_eq!(l.len(), o_concepts(&ctx).len(), "no duplicates");
        assert_eq!(l, enumerate_concepts_with(&ctx, Strategy::BruteForce).unwrap());
        assert!(verify_lattice(&l).is_empty());
    }
}

#[test]
fn para_equals_positive_projection_exhaustively() {
    for (no, np) in [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (3, 1)] {
        let cells = no * np;
        for code in 0..4usize.pow(cells as u32) {
            let mut c = code;
            let table: Vec<Vec<PBit>> = (0..no)
                .map(|_| {
                    (0..np)
                        .map(|_| {
                            let v = PBit::ALL[c % 4];
                            c /= 4;
                            v
                        })
                        .collect()
                })
                .collect();
            let objects = (0..no).map(|i| format!("o{i}")).collect();
            let properties = (0..np).map(|i| format!("p{i}")).collect();
            let para = FormalContext::para(objects, properties, table).unwrap();
            let crisp = para.positive_projection().unwrap();
            assert_eq!(enumerate_concepts(&para).unwrap(), enumerate_concepts(&crisp).unwrap());
        }
    }
}

#[test]
fn larger_contexts_verify() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..20 {
        let ctx = random_crisp(&mut rng, 14, 10);
        let l = enumerate_concepts(&ctx).unwrap();
        assert!(verify_lattice(&l).is_empty());
        assert!(l.top().is_some());
        assert!(l.bottom().is_some());
    }
}

type Fuzzy = Vec<(u32, u32)>;

/// Fixpoints over every fuzzy extent on the chain.
fn fuzzy_oracle(ctx: &FormalContext) -> BTreeSet<(Fuzzy, Fuzzy)> {
    let g = ctx.chain().unwrap().top();
    let no = ctx.objects().len();
    let base = (g + 1) * (g + 1);
    let mut out = BTreeSet::new();
    for code in 0..base.pow(no as u32) {
        let mut c = code;
        let ext: Fuzzy = (0..no)
            .map(|_| {
                let v = (c % (g + 1), (c / (g + 1)) % (g + 1));
                c /= base;
                v
            })
            .collect();
        let int = ctx.derive_fuzzy_properties(&ext).unwrap();
        if ctx.derive_fuzzy_objects(&int).unwrap() == ext {
            out.insert((ext, int));
        }
    }
    out
}

fn random_fuzzy(rng: &mut impl Rng, steps: u32, imp: FuzzyImplication) -> FormalContext {
    let (no, np) = (rng.gen_range(0..=2), rng.gen_range(0..=3));
    let table =
        (0..no).map(|_| (0..np).map(|_| (rng.gen_range(0..=steps), rng.gen_range(0..=steps))).collect()).collect();
    let objects = (0..no).map(|i| format!("o{i}")).collect();
    let properties = (0..np).map(|i| format!("p{i}")).collect();
    FormalContext::fuzzy(objects, properties, GradeChain::new(steps).unwrap(), imp, table).unwrap()
}

#[test]
fn fuzzy_enumeration_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for imp in [FuzzyImplication::Godel, FuzzyImplication::Lukasiewicz] {
        for _ in 0..40 {
            let ctx = random_fuzzy(&mut rng, 2, imp);
            let l = enumerate_fuzzy_concepts(&ctx).unwrap();
            let got: BTreeSet<(Fuzzy, Fuzzy)> =
                l.concepts().iter().map(|c| (c.extent.clone(), c.intent.clone())).collect();
            assert_eq!(got, fuzzy_oracle(&ctx));
            assert_eq!(got.len(), l.len());
            assert!(verify_lattice(&l).is_empty());
        }
    }
}

#[test]
fn fuzzy_binary_chain_degenerates_to_para() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for _ in 0..50 {
        let para = random_para(&mut rng, 5, 5);
        let fuzzy = FormalContext::fuzzy_from_para(&para, FuzzyImplication::Godel).unwrap();
        let fl = enumerate_fuzzy_concepts(&fuzzy).unwrap();
        let pos: BTreeSet<(BTreeSet<usize>, BTreeSet<usize>)> = fl
            .concepts()
            .iter()
            .map(|c| {
                (
                    c.extent.iter().enumerate().filter(|(_, d)| d.0 == 1).map(|(i, _)| i).collect(),
                    c.intent.iter().enumerate().filter(|(_, d)| d.0 == 1).map(|(i, _)| i).collect(),
                )
            })
            .collect();
        assert_eq!(pos, as_sets(&enumerate_concepts(&para).unwrap()));
        let neg = enumerate_concepts(&para.negative_projection().unwrap()).unwrap();
        assert_eq!(fl.len(), pos.len() * neg.len());
    }
}

#[test]
fn literal_reading_is_not_extensive() {
    let ctx = FormalContext::para(vec!["o1".into()], vec!["p1".into()], vec![vec![PBit::True]]).unwrap();
    let o = ctx.object_set(&["o1"]).unwrap();
    let back = ctx.derive_objects_with(&ctx.derive_properties(&o).unwrap(), ParaReading::Literal).unwrap();
    assert!(!o.is_subset(&back));
}
