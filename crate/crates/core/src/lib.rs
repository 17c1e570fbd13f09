//! Finite stochastic processes on causal partial orders.
//!
//! The crate checks the localised-events axioms and separability of a
//! region-indexed event assignment, the family of Bell-type locality
//! conditions for a two-wing experiment, and membership of the resulting
//! correlations in the CHSH local polytope. All probabilities are exact
//! rationals.

pub mod causal;
pub mod error;
pub mod gallery;
pub mod io;
pub mod locality;
pub mod model;
pub mod polytope;
pub mod rational;
pub mod report;
pub mod suite;

pub use causal::{CausalSite, PastSelector, Region, Slice};
pub use error::{Error, Result};
pub use io::{LoadedModel, ModelFile};
pub use model::{Algebra, Event, Generator, GeneratorSpec, Model};
pub use rational::Rational;
pub use report::{CheckReport, Verdict, Witness};
