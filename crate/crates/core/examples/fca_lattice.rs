//! Concept lattices of a para context and of a fuzzy context, with lattice
//! verification and DOT output.

use paralogic::fca::{enumerate_concepts, enumerate_fuzzy_concepts, verify_lattice, FormalContext, LatticeConcept};

const PARA: &str = r#"{
  "mode": "para",
  "objects": ["sparrow", "penguin", "bat", "platypus"],
  "properties": ["flies", "lays_eggs", "mammal"],
  "incidence": [
    ["sparrow", "flies", "T"], ["sparrow", "lays_eggs", "T"],
    ["penguin", "flies", "F"], ["penguin", "lays_eggs", "T"],
    ["bat", "flies", "T"], ["bat", "mammal", "T"],
    ["platypus", "lays_eggs", "B"], ["platypus", "mammal", "B"]
  ]
}"#;

const FUZZY: &str = r#"{
  "mode": "fuzzy", "grades": 4, "implication": "lukasiewicz",
  "objects": ["o1", "o2"], "properties": ["tall", "heavy"],
  "incidence": [["o1", "tall", 1.0, 0.0], ["o1", "heavy", 0.5, 0.25], ["o2", "tall", 0.25, 0.75]]
}"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = FormalContext::from_json(PARA)?;
    let lattice = enumerate_concepts(&ctx)?;
    for c in lattice.concepts() {
        println!("{{{}}} | {{{}}}", c.extent_labels(&ctx).join(", "), c.intent_labels(&ctx).join(", "));
    }
    println!("covers: {:?}", lattice.covers());
    println!("violations: {}", verify_lattice(&lattice).violations.len());
    println!("{}", lattice.to_dot(&ctx));

    let fuzzy = FormalContext::from_json(FUZZY)?;
    let fl = enumerate_fuzzy_concepts(&fuzzy)?;
    println!("fuzzy concepts: {}, violations: {}", fl.len(), verify_lattice(&fl).violations.len());
    for c in fl.concepts().iter().take(5) {
        println!("  {}", c.label(&fuzzy));
    }
    Ok(())
}
