//! Exact Graev quasi-prenorms and quasi-pseudometrics on free and free
//! Abelian groups over finite quasi-pseudometric spaces.
//!
//! The crate is organised bottom-up:
//!
//! * [`words`]: reduced words of the abstract free group and coefficient
//!   maps of the free Abelian group.
//! * [`qpspace`]: finite quasi-pseudometric spaces, the extensions to
//!   `X ∪ {e}` and to `X ∪ {e} ∪ X⁻¹`, and chain metrization.
//! * [`quniform`]: entourages, finite topologies and their fine
//!   quasi-uniformities, plus the group-chain product check.
//! * [`graev`]: schemes, the cost functional, the Graev norms (brute-force
//!   oracles and the fast evaluators) and the constructive lemmas.
//! * [`extend`]: extension of bounded quasi-pseudometrics from a subspace.
//! * [`checks`]: seeded property suites used by the command-line tool.
//!
//! All arithmetic is exact ([`Rational`]); nothing in the library uses
//! floating point.

pub mod checks;
pub mod error;
pub mod extend;
pub mod formats;
pub mod gen;
pub mod graev;
pub mod qpspace;
pub mod quniform;
pub mod rational;
pub mod words;

pub use error::{Error, Result};
pub use rational::Rational;
