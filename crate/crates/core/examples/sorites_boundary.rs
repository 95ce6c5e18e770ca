//! Cutoff analysis of a three-point series with an overdetermined middle,
//! then boundary degrees aggregated across situations.

use std::collections::BTreeMap;

use paralogic::pbit::PBit;
use paralogic::sorites::{existential_cutoff, fuzzy_boundary, BoundaryLabel, SeriesModel, SituationClassification};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let domain: Vec<String> = ["a", "b", "c"].map(String::from).into();
    let psi: BTreeMap<String, PBit> =
        [("a", PBit::True), ("b", PBit::Both), ("c", PBit::Both)].map(|(k, v)| (k.to_string(), v)).into();
    let pairs = [("a", "b"), ("b", "c")].map(|(x, y)| (x.to_string(), y.to_string()));
    let model = SeriesModel::with_true_pairs(domain, psi, &pairs, true)?;

    let r = existential_cutoff(&model)?;
    for (z, v) in &r.cutoffs {
        println!("cutoff(Psi, {z}) = {v}");
    }
    println!("ex z. cutoff = {}   ~ex z. cutoff = {}", r.exists, r.not_exists);

    let crisp = SeriesModel::linear(&[("1", PBit::True), ("2", PBit::True), ("3", PBit::False)])?;
    println!("crisp series: ex z. cutoff = {}", existential_cutoff(&crisp)?.exists);

    use BoundaryLabel::*;
    for (label, cases) in [
        ("all high", vec![(High, 1.0)]),
        ("thirds", vec![(Cutoff, 1.0), (High, 1.0), (NotHigh, 1.0)]),
        ("fifths", vec![(Cutoff, 1.0), (High, 3.0), (NotHigh, 1.0)]),
    ] {
        let cases: Vec<_> = cases.into_iter().map(|(l, w)| SituationClassification::new(l, w)).collect();
        let b = fuzzy_boundary(&cases)?;
        println!("{label:<9} raw=({:.3},{:.3}) t=({:.3},{:.3})", b.w_pos, b.w_neg, b.s_pos, b.s_neg);
    }
    Ok(())
}
