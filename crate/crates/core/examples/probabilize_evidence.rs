//! Counts evidence for propositions over an ensemble of situations, maps it
//! to simple truth values and measures p-bit dependency.

use paralogic::cdlang::parse;
use paralogic::pbit::PBit::*;
use paralogic::probabilize::{aggregate, conj_independent, dependency_stats, subsample, JointTable, SituationEnsemble};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ens = SituationEnsemble::new(
        vec!["Rain".into(), "Wind".into()],
        vec![vec![True, True], vec![True, Both], vec![Both, Neither], vec![Neither, False], vec![False, True]],
    )?;
    for text in ["Rain", "Rain & Wind", "Rain (*) Wind", "!Rain"] {
        let c = aggregate(&ens, &parse(text)?)?;
        let t = c.para();
        let stv = c.to_stv()?;
        println!(
            "{text:<14} t_para=({:.3},{:.3}) t_pln={:?} stv=({:.3},{}) conf(k=10)={:.3}",
            t.w_pos,
            t.w_neg,
            c.pln(),
            stv.s,
            stv.n,
            stv.confidence(10.0)?
        );
    }

    let a = aggregate(&ens, &parse("Rain")?)?.to_stv()?;
    let b = aggregate(&ens, &parse("Wind")?)?.to_stv()?;
    let ab = conj_independent(a, b, 100.0)?;
    println!("independent conjunction: s={:.4} n={:.4}", ab.s, ab.n);

    let smaller = subsample(&ens, 0.4, 7)?;
    println!("subsample kept {} of {} situations", smaller.len(), ens.len());

    let coupled = JointTable::new([
        (True, True, 0.125),
        (True, False, 0.125),
        (False, True, 0.125),
        (False, False, 0.125),
        (Both, Both, 0.125),
        (Both, Neither, 0.125),
        (Neither, Both, 0.125),
        (Neither, Neither, 0.125),
    ])?;
    let d = dependency_stats(&coupled);
    println!("coupled p-bits: mi={:.3} mi_pos={:.3} mi_neg={:.3}", d.mi_pbit, d.mi_pos, d.mi_neg);
    Ok(())
}
