//! Entropy and relative entropy of paraconsistent distributions, and the
//! intension degree of an instance set within a context.

use paralogic::ppd::{entropy, intension_degree, relative_entropy, InstanceEvidence, Ppd, DEFAULT_EPSILON};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let outcomes: Vec<String> = ["sun", "cloud", "rain"].map(String::from).into();
    let a = Ppd::new(outcomes.clone(), vec![0.5, 0.25, 0.25], vec![0.9, 0.1, 0.0])?;
    let b = Ppd::new(outcomes, vec![0.25, 0.5, 0.25], vec![0.5, 0.25, 0.25])?;
    println!("H(a) = {:.6} bits", entropy(&a));
    println!("H(b) = {:.6} bits", entropy(&b));
    println!("KL(a || b) = {:.6} bits", relative_entropy(&a, &b, DEFAULT_EPSILON)?);
    match relative_entropy(&b, &a, 0.0) {
        Ok(d) => println!("KL(b || a) = {d:.6}"),
        Err(e) => println!("KL(b || a) without smoothing: {e}"),
    }

    let whales = InstanceEvidence::new([("moby", (1.0, 0.0)), ("orca", (0.75, 0.25)), ("shamu", (0.5, 0.5))])?;
    let mammals = InstanceEvidence::new([("moby", (1.0, 0.25)), ("orca", (1.0, 0.25)), ("shamu", (0.5, 0.75))])?;
    for eps in [1e-9, 1e-3, 1e-1] {
        println!("intension(whales | mammals, eps={eps:e}) = {:.6}", intension_degree(&whales, &mammals, eps)?);
    }
    Ok(())
}
