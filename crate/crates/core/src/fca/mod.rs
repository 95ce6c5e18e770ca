//! Formal concept analysis over crisp, para and fuzzy contexts.
//!
//! Para incidences enter the derivation operators through their positive
//! bit, so a para context has the same concepts as its positive projection.
//! Fuzzy contexts carry grade pairs on a finite chain; the positive grades
//! and the negative grades each induce their own Galois connection.

mod blend;
mod context;
mod lattice;

pub use blend::{blend, property_map_from_json, property_map_to_json, BlendStrategy, PropertyMap};
pub use context::{DegreePair, FormalContext, FuzzyImplication, Grade, GradeChain, Mode, ParaReading, DEFAULT_GRADES};
pub use lattice::{
    enumerate_concepts, enumerate_concepts_with, enumerate_fuzzy_concepts, literal_fixpoints, verify_lattice, Concept,
    ConceptLattice, FuzzyConcept, LatticeConcept, LatticeReport, LatticeViolation, Strategy, MAX_BRUTE_FORCE_OBJECTS,
    MAX_CONCEPTS,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FcaError {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown property `{0}`")]
    UnknownProperty(String),
    #[error("degree {value} is not on the grade chain with {steps} steps")]
    OffChain { value: f64, steps: u32 },
    #[error("expected a {expected} context, found {found}")]
    WrongMode { expected: &'static str, found: &'static str },
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("property vocabularies differ: {0}")]
    VocabularyMismatch(String),
    #[error("blend weight {0} outside [0, 1]")]
    InvalidWeight(f64),
    #[error("invalid context: {0}")]
    Format(String),
}
