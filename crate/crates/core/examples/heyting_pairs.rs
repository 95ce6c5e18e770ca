//! Builds the down-set algebra of a small poset, validates it and evaluates
//! connectives in the pair algebra over it.

use paralogic::heyting::{downset_algebra, validate, PairAlgebra, Poset};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // a < c, b < c
    let poset = Poset::from_covers(&["a", "b", "c"], &[("a", "c"), ("b", "c")])?;
    let h = downset_algebra(&poset)?;
    println!("{} elements", h.len());
    for x in h.elements() {
        println!("  {}  complement {}", h.label(x), h.label(h.complement(x)));
    }
    let report = validate(&h.tables())?;
    println!("validation violations: {}", report.violations.len());

    let alg = PairAlgebra::new(h);
    let (one, i) = (alg.unit1(), alg.unit_i());
    println!("1 = {}  I = {}", alg.format(one), alg.format(i));
    let mut designated = 0;
    for x in alg.elements() {
        assert_eq!(alg.tensor(x, i), x);
        designated += alg.is_designated(alg.strong_imp(alg.bang(x), x)) as usize;
    }
    println!("!x => x designated for {designated} of {} pairs", alg.len());
    Ok(())
}
