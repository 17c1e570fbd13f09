//! Conditional-independence conditions on a model.
//!
//! Each checker returns a [`CheckReport`]. Conditional probabilities are only
//! compared where the conditioning event has positive probability; null
//! conditioning atoms are skipped and counted as vacuous.

pub mod bell;
pub mod conjecture;
pub mod eprb;
pub mod howard;
pub mod scenario;

use rayon::prelude::*;

pub use bell::{
    check_bell_locality, check_bell_locality_events, check_bell_locality_weakened, check_nouvelle_locality, check_srla,
    check_srla_all, srla_triples, weakened_conditioning_algebra,
};
pub use conjecture::{slice_blocks_past, test_equivalence_conjecture, ConjectureReport, Counterexample, SizeCaps};
pub use eprb::{
    check_factorisability, check_freedom_of_settings, check_jarrett_decomposition, check_no_signalling,
    check_outcome_independence, check_parameter_independence, factorisation_at, outcome_independence_at,
    parameter_independence_at, verify_derivation_chain,
};
pub use howard::{check_howard_separability_of_states, howard_at, howard_states, HowardState};
pub use scenario::{parse_past, EprbScenario, ScenarioSpec};

use crate::model::{Algebra, Event, Model};
use crate::rational::Rational;
use crate::report::CheckReport;

pub const BELL_LOCALITY: &str = "bell-locality";
pub const BELL_LOCALITY_WEAKENED: &str = "bell-locality-weakened";
pub const NOUVELLE_LOCALITY: &str = "nouvelle-locality";
pub const SRLA: &str = "srla";
pub const FREEDOM_OF_SETTINGS: &str = "freedom-of-settings";
pub const FACTORISABILITY: &str = "factorisability";
pub const DERIVATION_CHAIN: &str = "derivation-chain";
pub const NO_SIGNALLING: &str = "no-signalling";
pub const OUTCOME_INDEPENDENCE: &str = "outcome-independence";
pub const PARAMETER_INDEPENDENCE: &str = "parameter-independence";
pub const JARRETT_DECOMPOSITION: &str = "jarrett-decomposition";
pub const HOWARD_SEPARABILITY: &str = "howard-separability-of-states";

/// `μ(e | given)`, or `None` when `given` is null.
pub(crate) fn cond(model: &Model, e: &Event, given: &Event) -> Option<Rational> {
    model.conditional(e, given).ok()
}

/// Intersection of several events.
pub(crate) fn meet(events: &[&Event]) -> Event {
    let (first, rest) = events.split_first().expect("at least one event");
    rest.iter().fold((*first).clone(), |acc, e| acc.intersection(e))
}

/// Runs `check` on every non-null atom of `lambda`, in parallel, and merges
/// the partial reports in atom order.
pub(crate) fn over_atoms<F>(model: &Model, condition: &str, lambda: &Algebra, check: F) -> CheckReport
where
    F: Fn(&Event) -> CheckReport + Sync,
{
    let parts: Vec<CheckReport> = lambda
        .atoms()
        .par_iter()
        .map(|atom| {
            if model.is_null(atom) {
                let mut r = CheckReport::new(condition);
                r.vacuous_atoms = 1;
                r
            } else {
                check(atom)
            }
        })
        .collect();
    CheckReport::merged(condition, parts)
}
