//! Blends two concepts' property maps under each strategy.

use paralogic::fca::{blend, BlendStrategy, PropertyMap};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fish: PropertyMap =
        [("fins", (1.0, 0.0)), ("lungs", (0.0, 1.0)), ("legs", (0.0, 1.0))].map(|(k, v)| (k.to_string(), v)).into();
    let horse: PropertyMap =
        [("fins", (0.0, 1.0)), ("lungs", (1.0, 0.0)), ("legs", (1.0, 0.0))].map(|(k, v)| (k.to_string(), v)).into();

    let strategies = [
        ("select_first", BlendStrategy::SelectFirst),
        ("select_second", BlendStrategy::SelectSecond),
        ("average", BlendStrategy::average()),
        ("average 0.8", BlendStrategy::Average { weight_first: 0.8 }),
        ("sample 1", BlendStrategy::Sample { seed: 1 }),
        ("sample 2", BlendStrategy::Sample { seed: 2 }),
    ];
    for (name, s) in strategies {
        let out = blend(&fish, &horse, s)?;
        let cells: Vec<String> = out.iter().map(|(p, (a, b))| format!("{p}=({a:.1},{b:.1})")).collect();
        println!("{name:<14} {}", cells.join(" "));
    }
    Ok(())
}
