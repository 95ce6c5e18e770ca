use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::FcaError;
use crate::pbit::PBit;

/// Property name to `(positive, negative)` degree.
pub type PropertyMap = BTreeMap<String, (f64, f64)>;

#[derive(Debug, Serialize, Deserialize)]
struct PropertyFile {
    properties: PropertyMap,
}

/// Reads `{"properties": {"p1": [1.0, 0.0], ...}}`.
pub fn property_map_from_json(text: &str) -> Result<PropertyMap, FcaError> {
    let file: PropertyFile = serde_json::from_str(text).map_err(|e| FcaError::Format(e.to_string()))?;
    for (name, &(p, n)) in &file.properties {
        if !(0.0..=1.0).contains(&p) || !(0.0..=1.0).contains(&n) {
            return Err(FcaError::Format(format!("degrees of `{name}` must lie in [0, 1]")));
        }
    }
    Ok(file.properties)
}

pub fn property_map_to_json(map: &PropertyMap) -> String {
    serde_json::to_string_pretty(&PropertyFile { properties: map.clone() }).expect("serializable")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BlendStrategy {
    SelectFirst,
    SelectSecond,
    /// `w * c1 + (1 - w) * c2` per component.
    Average {
        weight_first: f64,
    },
    /// Strict conflicts `(1,0)` against `(0,1)` become a uniformly drawn
    /// p-bit. Other differing properties take either side with equal
    /// probability. Draws follow sorted property order from one ChaCha8
    /// stream seeded with `seed`.
    Sample {
        seed: u64,
    },
}

impl BlendStrategy {
    pub const fn average() -> Self {
        BlendStrategy::Average { weight_first: 0.5 }
    }
}

fn is_conflict(a: (f64, f64), b: (f64, f64)) -> bool {
    (a == (1.0, 0.0) && b == (0.0, 1.0)) || (a == (0.0, 1.0) && b == (1.0, 0.0))
}

/// Combines two property maps over the same vocabulary.
pub fn blend(c1: &PropertyMap, c2: &PropertyMap, strategy: BlendStrategy) -> Result<PropertyMap, FcaError> {
    if !c1.keys().eq(c2.keys()) {
        let only: Vec<&str> = c1
            .keys()
            .filter(|k| !c2.contains_key(*k))
            .chain(c2.keys().filter(|k| !c1.contains_key(*k)))
            .map(String::as_str)
            .collect();
        return Err(FcaError::VocabularyMismatch(only.join(", ")));
    }
    let pairs = c1.iter().zip(c2.values());
    Ok(match strategy {
        BlendStrategy::SelectFirst => c1.clone(),
        BlendStrategy::SelectSecond => c2.clone(),
        BlendStrategy::Average { weight_first: w } => {
            if !(0.0..=1.0).contains(&w) {
                return Err(FcaError::InvalidWeight(w));
            }
            pairs.map(|((k, a), b)| (k.clone(), (w * a.0 + (1.0 - w) * b.0, w * a.1 + (1.0 - w) * b.1))).collect()
        }
        BlendStrategy::Sample { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            pairs
                .map(|((k, &a), &b)| {
                    let v = if a == b {
                        a
                    } else if is_conflict(a, b) {
                        let p = PBit::ALL[rng.gen_range(0..4)];
                        (p.pos() as u8 as f64, p.neg() as u8 as f64)
                    } else if rng.gen_bool(0.5) {
                        a
                    } else {
                        b
                    };
                    (k.clone(), v)
                })
                .collect()
        }
    })
}
