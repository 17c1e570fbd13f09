//! Random search for models on which Bell locality and its slice-based
//! variant disagree, among models satisfying the localised-events axioms and
//! strong relativistic local action.

use std::collections::BTreeMap;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{check_bell_locality, check_nouvelle_locality, check_srla_all};
use crate::causal::{PastSelector, Region, Slice};
use crate::error::Result;
use crate::gallery::random_model;
pub use crate::gallery::SizeCaps;
use crate::io::ModelFile;
use crate::model::axioms::check_localised_axioms;
use crate::model::Model;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub trial: usize,
    pub seed: u64,
    /// Bell locality over the joint past.
    pub bell: String,
    /// Slice-based locality, per declared slice.
    pub nouvelle: BTreeMap<String, String>,
    pub model: ModelFile,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub seed: u64,
    pub trials: usize,
    pub caps: SizeCaps,
    pub rejected_axioms: usize,
    pub rejected_srla: usize,
    /// Survivors without any slice blocking both backward light cones.
    pub no_blocking_slice: usize,
    pub survivors: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl ConjectureReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

/// Seed of trial `i`: the first word of stream `i` of the master generator.
pub fn trial_seed(seed: u64, trial: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng.next_u64()
}

/// True when the slice's block region `D` is nonempty and every point of
/// each wing's strict past either lies above `D` or reaches the wing only
/// through `D`.
pub fn slice_blocks_past(model: &Model, a: &Region, b: &Region, slice: &Slice) -> Result<bool> {
    let site = model.site();
    let d = site.resolve_past(a, b, &PastSelector::SliceBlock(slice.clone()))?;
    if d.is_empty() {
        return Ok(false);
    }
    let above = site.causal_future(&d)?;
    for wing in [a, b] {
        let past = site.causal_past(wing)?.difference(wing);
        for p in past.difference(&above).points() {
            if !site.blocks(&d, &Region::from_points(site.len(), [p]), wing) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

enum Trial {
    Axioms,
    Srla,
    NoBlockingSlice,
    Survivor(Option<Box<Counterexample>>),
}

fn run_trial(seed: u64, trial: usize, caps: &SizeCaps) -> Result<Trial> {
    let ts = trial_seed(seed, trial);
    let file = random_model(ts, caps)?;
    let loaded = file.build()?;
    let model = &loaded.model;
    if check_localised_axioms(model).failed() {
        return Ok(Trial::Axioms);
    }
    if check_srla_all(model)?.failed() {
        return Ok(Trial::Srla);
    }
    let scen = loaded.scenario.as_ref().expect("random models carry a scenario");
    let bell = check_bell_locality(model, &scen.wing_a, &scen.wing_b, &PastSelector::JointPast)?;
    let mut nouvelle = BTreeMap::new();
    let mut differs = false;
    for (name, s) in model.slices() {
        if !slice_blocks_past(model, &scen.wing_a, &scen.wing_b, s)? {
            continue;
        }
        let r = check_nouvelle_locality(model, &scen.wing_a, &scen.wing_b, s)?;
        differs |= r.passed() != bell.passed();
        nouvelle.insert(name.clone(), r.verdict().as_str().to_string());
    }
    if nouvelle.is_empty() {
        return Ok(Trial::NoBlockingSlice);
    }
    Ok(Trial::Survivor(differs.then(|| {
        Box::new(Counterexample {
            trial,
            seed: ts,
            bell: bell.verdict().as_str().to_string(),
            nouvelle,
            model: file,
        })
    })))
}

/// Generates `trials` random models, keeps those satisfying the axioms and
/// SRLA, and reports every survivor where Bell locality (joint past) and
/// slice-based locality disagree for some declared slice blocking both
/// backward light cones. Vacuous counts as passing. The output depends only
/// on the arguments.
pub fn test_equivalence_conjecture(seed: u64, trials: usize, caps: &SizeCaps) -> Result<ConjectureReport> {
    caps.validate()?;
    let results: Vec<Trial> = (0..trials)
        .into_par_iter()
        .map(|t| run_trial(seed, t, caps))
        .collect::<Result<_>>()?;
    let mut report = ConjectureReport {
        seed,
        trials,
        caps: *caps,
        rejected_axioms: 0,
        rejected_srla: 0,
        no_blocking_slice: 0,
        survivors: 0,
        counterexamples: Vec::new(),
    };
    for r in results {
        match r {
            Trial::Axioms => report.rejected_axioms += 1,
            Trial::Srla => report.rejected_srla += 1,
            Trial::NoBlockingSlice => report.no_blocking_slice += 1,
            Trial::Survivor(c) => {
                report.survivors += 1;
                report.counterexamples.extend(c.map(|c| *c));
            }
        }
    }
    Ok(report)
}
