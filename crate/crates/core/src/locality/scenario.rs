use serde::{Deserialize, Serialize};

use crate::causal::{PastSelector, Region};
use crate::error::{Error, Result};
use crate::model::{Event, Model};

/// Name-level description of a two-wing experiment, as stored in model files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSpec {
    pub wing_a: String,
    pub wing_b: String,
    pub setting_a: String,
    pub setting_b: String,
    pub outcome_a: String,
    pub outcome_b: String,
    /// `mutual | joint | past-a | past-b | slice:<name> | srla:<name> | custom:<region>`
    pub past: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub past_partition: Option<(String, String)>,
}

/// A resolved two-wing experiment.
///
/// Each binary variable ranges over `[event, complement]`: setting index 0 is
/// `A_s`, outcome index 0 is `A_o` (read as +1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EprbScenario {
    pub wing_a: Region,
    pub wing_b: Region,
    pub setting_a: Event,
    pub setting_b: Event,
    pub outcome_a: Event,
    pub outcome_b: Event,
    pub past: PastSelector,
    pub past_partition: Option<(Region, Region)>,
}

impl EprbScenario {
    pub fn a_s(&self) -> [Event; 2] {
        self.setting_a.values()
    }

    pub fn b_s(&self) -> [Event; 2] {
        self.setting_b.values()
    }

    pub fn a_o(&self) -> [Event; 2] {
        self.outcome_a.values()
    }

    pub fn b_o(&self) -> [Event; 2] {
        self.outcome_b.values()
    }

    /// The scenario with a different past selector.
    pub fn with_past(&self, past: PastSelector) -> EprbScenario {
        EprbScenario { past, ..self.clone() }
    }

    /// Resolves the selected past region for the two wings.
    pub fn past_region(&self, model: &Model) -> Result<Region> {
        model.site().resolve_past(&self.wing_a, &self.wing_b, &self.past)
    }

    /// Checks that each setting and outcome is an event of its own wing's
    /// algebra, and that the wings are spacelike unless the past selector
    /// tolerates timelike wings.
    pub fn validate(&self, model: &Model) -> Result<()> {
        let site = model.site();
        for (wing, events) in [
            (
                &self.wing_a,
                [("setting_a", &self.setting_a), ("outcome_a", &self.outcome_a)],
            ),
            (
                &self.wing_b,
                [("setting_b", &self.setting_b), ("outcome_b", &self.outcome_b)],
            ),
        ] {
            let alg = model.region_algebra(wing)?;
            for (label, e) in events {
                if !alg.contains(e) {
                    return Err(Error::NotLocalised {
                        event: label.to_string(),
                        wing: model.region_label(wing),
                    });
                }
            }
        }
        if !self.past.allows_timelike() && !site.spacelike(&self.wing_a, &self.wing_b)? {
            return Err(Error::NotSpacelike(
                model.region_label(&self.wing_a),
                model.region_label(&self.wing_b),
            ));
        }
        Ok(())
    }
}

/// Parses a past selector against a model's slices and regions.
pub fn parse_past(model: &Model, text: &str) -> Result<PastSelector> {
    let sel = match text {
        "mutual" => PastSelector::MutualPast,
        "joint" => PastSelector::JointPast,
        "past-a" => PastSelector::PastOfA,
        "past-b" => PastSelector::PastOfB,
        _ => match text.split_once(':') {
            Some(("slice", name)) => PastSelector::SliceBlock(model.slice(name)?.clone()),
            Some(("srla", name)) => PastSelector::SrlaBlock(model.slice(name)?.clone()),
            Some(("custom", name)) => PastSelector::Custom(model.region(name)?.clone()),
            _ => return Err(Error::InvalidArgument(format!("unknown past selector `{text}`"))),
        },
    };
    Ok(sel)
}

impl ScenarioSpec {
    pub fn resolve(&self, model: &Model) -> Result<EprbScenario> {
        let event = |name: &str| model.generator(name).map(|g| g.event.clone());
        let past_partition = match &self.past_partition {
            Some((pa, pb)) => Some((model.region(pa)?.clone(), model.region(pb)?.clone())),
            None => None,
        };
        let scen = EprbScenario {
            wing_a: model.region(&self.wing_a)?.clone(),
            wing_b: model.region(&self.wing_b)?.clone(),
            setting_a: event(&self.setting_a)?,
            setting_b: event(&self.setting_b)?,
            outcome_a: event(&self.outcome_a)?,
            outcome_b: event(&self.outcome_b)?,
            past: parse_past(model, &self.past)?,
            past_partition,
        };
        scen.validate(model)?;
        Ok(scen)
    }
}
