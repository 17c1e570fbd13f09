//! Named groups of checks, as run by the command-line tool.

use crate::error::{Error, Result};
use crate::io::LoadedModel;
use crate::locality::{self as loc, parse_past, EprbScenario};
use crate::model::axioms::{check_localised_axioms, check_separability_universe, LOCALISED_EVENTS, SEPARABILITY};
use crate::report::CheckReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Axioms,
    Separability,
    Bell,
    Freedom,
    Factorisability,
    NoSignal,
    Jarrett,
    Howard,
    Srla,
    Nouvelle,
    Weakened,
}

impl Suite {
    pub const NAMES: [&'static str; 12] = [
        "all",
        "axioms",
        "separability",
        "bell",
        "freedom",
        "factorisability",
        "nosignal",
        "jarrett",
        "howard",
        "srla",
        "nouvelle",
        "weakened",
    ];

    pub fn parse(s: &str) -> Option<Suite> {
        use Suite::*;
        let all = [
            All,
            Axioms,
            Separability,
            Bell,
            Freedom,
            Factorisability,
            NoSignal,
            Jarrett,
            Howard,
            Srla,
            Nouvelle,
            Weakened,
        ];
        Suite::NAMES.iter().position(|n| *n == s).map(|i| all[i])
    }

    /// Conditions run by this suite, in report order.
    pub fn conditions(self) -> &'static [&'static str] {
        match self {
            Suite::All => &[
                LOCALISED_EVENTS,
                SEPARABILITY,
                loc::BELL_LOCALITY,
                loc::FREEDOM_OF_SETTINGS,
                loc::FACTORISABILITY,
                loc::DERIVATION_CHAIN,
                loc::NO_SIGNALLING,
                loc::OUTCOME_INDEPENDENCE,
                loc::PARAMETER_INDEPENDENCE,
                loc::JARRETT_DECOMPOSITION,
                loc::HOWARD_SEPARABILITY,
                loc::SRLA,
                loc::NOUVELLE_LOCALITY,
                loc::BELL_LOCALITY_WEAKENED,
            ],
            Suite::Axioms => &[LOCALISED_EVENTS],
            Suite::Separability => &[SEPARABILITY],
            Suite::Bell => &[loc::BELL_LOCALITY],
            Suite::Freedom => &[loc::FREEDOM_OF_SETTINGS],
            Suite::Factorisability => &[loc::FACTORISABILITY],
            Suite::NoSignal => &[loc::NO_SIGNALLING],
            Suite::Jarrett => &[
                loc::OUTCOME_INDEPENDENCE,
                loc::PARAMETER_INDEPENDENCE,
                loc::JARRETT_DECOMPOSITION,
            ],
            Suite::Howard => &[loc::HOWARD_SEPARABILITY],
            Suite::Srla => &[loc::SRLA],
            Suite::Nouvelle => &[loc::NOUVELLE_LOCALITY],
            Suite::Weakened => &[loc::BELL_LOCALITY_WEAKENED],
        }
    }
}

#[derive(Clone, Debug)]
pub enum Outcome {
    Ran(CheckReport),
    /// Not run because a precondition is unmet.
    Skipped {
        condition: String,
        reason: String,
    },
}

impl Outcome {
    pub fn condition(&self) -> &str {
        match self {
            Outcome::Ran(r) => &r.condition,
            Outcome::Skipped { condition, .. } => condition,
        }
    }

    /// `pass | fail | vacuous | skipped`
    pub fn verdict_str(&self) -> &'static str {
        match self {
            Outcome::Ran(r) => r.verdict().as_str(),
            Outcome::Skipped { .. } => "skipped",
        }
    }
}

fn scenario<'a>(loaded: &'a LoadedModel, override_: &'a Option<EprbScenario>) -> Result<&'a EprbScenario> {
    override_
        .as_ref()
        .or(loaded.scenario.as_ref())
        .ok_or_else(|| Error::Precondition("the model declares no two-wing scenario".into()))
}

/// Runs one condition against a loaded model.
pub fn run_condition(loaded: &LoadedModel, condition: &str, past: Option<&str>) -> Result<CheckReport> {
    let model = &loaded.model;
    let overridden = match (past, &loaded.scenario) {
        (Some(p), Some(s)) => Some(s.with_past(parse_past(model, p)?)),
        _ => None,
    };
    match condition {
        LOCALISED_EVENTS => Ok(check_localised_axioms(model)),
        SEPARABILITY => Ok(check_separability_universe(model)),
        loc::SRLA => loc::check_srla_all(model),
        _ => {
            let scen = scenario(loaded, &overridden)?;
            let (a, b) = (&scen.wing_a, &scen.wing_b);
            match condition {
                loc::BELL_LOCALITY => loc::check_bell_locality(model, a, b, &scen.past),
                loc::BELL_LOCALITY_WEAKENED => loc::check_bell_locality_weakened(model, a, b, &scen.past),
                loc::FREEDOM_OF_SETTINGS => loc::check_freedom_of_settings(model, scen),
                loc::FACTORISABILITY => loc::check_factorisability(model, scen),
                loc::DERIVATION_CHAIN => loc::verify_derivation_chain(model, scen),
                loc::NO_SIGNALLING => loc::check_no_signalling(model, scen),
                loc::OUTCOME_INDEPENDENCE => loc::check_outcome_independence(model, scen),
                loc::PARAMETER_INDEPENDENCE => loc::check_parameter_independence(model, scen),
                loc::JARRETT_DECOMPOSITION => loc::check_jarrett_decomposition(model, scen),
                loc::HOWARD_SEPARABILITY => loc::check_howard_separability_of_states(model, scen),
                loc::NOUVELLE_LOCALITY => {
                    if model.slices().is_empty() {
                        return Err(Error::Precondition("the model declares no slices".into()));
                    }
                    let parts = model
                        .slices()
                        .iter()
                        .map(|(name, s)| {
                            let mut r = loc::check_nouvelle_locality(model, a, b, s)?;
                            r.note(format!("slice {name}: {}", r.verdict().as_str()));
                            Ok(r)
                        })
                        .collect::<Result<Vec<_>>>()?;
                    Ok(CheckReport::merged(loc::NOUVELLE_LOCALITY, parts))
                }
                other => Err(Error::InvalidArgument(format!("unknown condition `{other}`"))),
            }
        }
    }
}

/// Runs a suite. For `all`, a check whose preconditions are unmet is
/// reported as skipped; for a single suite the error is returned.
pub fn run_suite(loaded: &LoadedModel, suite: Suite, past: Option<&str>) -> Result<Vec<Outcome>> {
    if let (Some(p), Some(_)) = (past, &loaded.scenario) {
        parse_past(&loaded.model, p)?;
    }
    let mut out = Vec::new();
    for &c in suite.conditions() {
        match run_condition(loaded, c, past) {
            Ok(r) => out.push(Outcome::Ran(r)),
            Err(e) if suite == Suite::All && skippable(&e) => out.push(Outcome::Skipped {
                condition: c.to_string(),
                reason: e.to_string(),
            }),
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

fn skippable(e: &Error) -> bool {
    matches!(
        e,
        Error::Precondition(_) | Error::NullSettingPair(..) | Error::Overlap(_)
    )
}
