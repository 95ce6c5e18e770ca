//! Four-valued evidence logic: p-bits, pair algebras over finite Heyting
//! algebras, a small expression language, probabilization into simple truth
//! values, sorites boundaries, paraconsistent distributions and formal
//! concept analysis.

pub mod cdlang;
pub mod cli;
pub mod fca;
pub mod heyting;
pub mod pbit;
pub mod ppd;
pub mod probabilize;
pub mod sorites;

pub use pbit::PBit;

/// Any error raised by the library.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Heyting(#[from] heyting::HeytingError),
    #[error(transparent)]
    PBit(#[from] pbit::PBitError),
    #[error(transparent)]
    Parse(#[from] cdlang::ParseError),
    #[error(transparent)]
    Eval(#[from] cdlang::EvalError),
    #[error(transparent)]
    Prob(#[from] probabilize::ProbError),
    #[error(transparent)]
    Sorites(#[from] sorites::SoritesError),
    #[error(transparent)]
    Ppd(#[from] ppd::PpdError),
    #[error(transparent)]
    Fca(#[from] fca::FcaError),
}
