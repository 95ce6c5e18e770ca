//! Parses expressions, evaluates them under a valuation and checks
//! derivability.

use paralogic::cdlang::{evaluate, is_derivable, parse, parse_with_free, Valuation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for text in ["A | ~A", "A -> A", "!A => A", "(A (*) C) => D", "%%A => ~A"] {
        let e = parse(text)?;
        let d = is_derivable(&e)?;
        match d.witness {
            None => println!("{e:<24} derivable"),
            Some(w) => println!("{e:<24} fails at {w:?}"),
        }
    }

    let v = Valuation::from_json(
        r#"{"domain":["a","b"],"atoms":{"A":"B"},"preds":{"Psi":{"a":"T","b":"F"}},"less":{"a,a":"F","a,b":"T","b,a":"F","b,b":"F"}}"#,
    )?;
    let e = parse_with_free("A & (all x. Psi(x) | x < b)", &v.individuals())?;
    println!("{e} = {}", evaluate(&e, &v)?);
    println!("T & N = {}", evaluate(&parse("T & N")?, &v)?);

    if let Err(err) = parse("A & (C |") {
        println!("error: {err}");
    }
    Ok(())
}
