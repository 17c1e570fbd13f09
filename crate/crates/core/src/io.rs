//! The JSON model file and machine-readable report documents.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::causal::{CausalSite, Region};
use crate::error::{Error, Result};
use crate::locality::{EprbScenario, ScenarioSpec};
use crate::model::{Event, GeneratorSpec, Model};
use crate::rational;
use crate::report::{CheckReport, Verdict, Witness};

pub const REPORT_SCHEMA: &str = "bellcheck-report/1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SliceSpec {
    pub lower: Vec<String>,
    pub upper: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorEntry {
    pub event: Vec<String>,
    pub home: String,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub nonseparable: bool,
}

/// On-disk model description. Precedence pairs are closed transitively and
/// the region family is closed under union and intersection at load time,
/// so a file may be minimal. Histories missing from `measure` have
/// probability zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub points: Vec<String>,
    #[serde(default)]
    pub order: Vec<(String, String)>,
    #[serde(default)]
    pub regions: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub slices: BTreeMap<String, SliceSpec>,
    pub histories: Vec<String>,
    #[serde(default)]
    pub generators: BTreeMap<String, GeneratorEntry>,
    pub measure: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scenario: Option<ScenarioSpec>,
}

/// A model file resolved into a checkable model.
#[derive(Clone, Debug)]
pub struct LoadedModel {
    pub model: Model,
    pub scenario: Option<EprbScenario>,
    pub scenario_spec: Option<ScenarioSpec>,
}

impl ModelFile {
    pub fn from_json(text: &str) -> Result<ModelFile> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn to_json_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("model files serialize");
        s.push('\n');
        s
    }

    pub fn build(&self) -> Result<LoadedModel> {
        let site = CausalSite::from_named(&self.points, &self.order)?;
        let region = |pts: &[String]| site.region(pts);
        let regions = self
            .regions
            .iter()
            .map(|(name, pts)| Ok((name.clone(), region(pts)?)))
            .collect::<Result<Vec<(String, Region)>>>()?;
        let slices = self
            .slices
            .iter()
            .map(|(name, s)| Ok((name.clone(), site.slice(region(&s.lower)?, region(&s.upper)?)?)))
            .collect::<Result<Vec<_>>>()?;
        let index: BTreeMap<&str, usize> = self
            .histories
            .iter()
            .enumerate()
            .map(|(i, h)| (h.as_str(), i))
            .collect();
        let n = self.histories.len();
        let lookup = |h: &str| {
            index
                .get(h)
                .copied()
                .ok_or_else(|| Error::UnknownHistory(h.to_string()))
        };
        let generators = self
            .generators
            .iter()
            .map(|(name, g)| {
                let members = g.event.iter().map(|h| lookup(h)).collect::<Result<Vec<_>>>()?;
                Ok(GeneratorSpec {
                    name: name.clone(),
                    event: Event::from_members(n, members),
                    home: g.home.clone(),
                    nonseparable: g.nonseparable,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut measure = vec![rational::zero(); n];
        for (h, p) in &self.measure {
            measure[lookup(h)?] = rational::parse(p)?;
        }
        let model = Model::new(site, self.histories.clone(), regions, generators, measure, slices)?;
        let scenario = match &self.scenario {
            Some(spec) => Some(spec.resolve(&model)?),
            None => None,
        };
        Ok(LoadedModel {
            model,
            scenario,
            scenario_spec: self.scenario.clone(),
        })
    }

    /// The file describing `model`: covering relations only, points and
    /// histories in model order, measure entries reduced and zeros dropped.
    pub fn from_model(model: &Model, scenario: Option<&ScenarioSpec>) -> ModelFile {
        let site = model.site();
        let names = |r: &Region| r.points().map(|p| site.name(p).to_string()).collect::<Vec<_>>();
        let order = site
            .covering_relations()
            .into_iter()
            .map(|(a, b)| (site.name(a).to_string(), site.name(b).to_string()))
            .collect();
        let regions = model
            .declared_regions()
            .iter()
            .map(|(n, r)| (n.clone(), names(r)))
            .collect();
        let slices = model
            .slices()
            .iter()
            .map(|(n, s)| {
                (
                    n.clone(),
                    SliceSpec {
                        lower: names(s.lower()),
                        upper: names(s.upper()),
                    },
                )
            })
            .collect();
        let hist = model.histories();
        let generators = model
            .generators()
            .iter()
            .map(|g| {
                (
                    g.name.clone(),
                    GeneratorEntry {
                        event: g.event.members().map(|h| hist[h].clone()).collect(),
                        home: g.home_name.clone(),
                        nonseparable: g.nonseparable,
                    },
                )
            })
            .collect();
        let measure = hist
            .iter()
            .zip(model.measure())
            .filter(|(_, p)| !num_traits::Zero::is_zero(*p))
            .map(|(h, p)| (h.clone(), rational::format(p)))
            .collect();
        ModelFile {
            points: site.names().to_vec(),
            order,
            regions,
            slices,
            histories: hist.to_vec(),
            generators,
            measure,
            scenario: scenario.cloned(),
        }
    }

    /// Loads and re-describes the model, fixing a unique form for equivalent
    /// files.
    pub fn canonical(&self) -> Result<ModelFile> {
        let loaded = self.build()?;
        Ok(ModelFile::from_model(&loaded.model, self.scenario.as_ref()))
    }

    pub fn canonical_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&self.canonical()?).expect("model files serialize"))
    }

    /// SHA-256 of the canonical JSON, hex encoded.
    pub fn digest(&self) -> Result<String> {
        Ok(hex::encode(Sha256::digest(self.canonical_json()?.as_bytes())))
    }
}

// ---------------------------------------------------------------------------
// Report documents

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedEvent {
    pub label: String,
    pub histories: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDoc {
    pub clause: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub atom: Option<Vec<String>>,
    #[serde(default)]
    pub events: Vec<NamedEvent>,
    #[serde(default)]
    pub regions: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckDoc {
    pub condition: String,
    /// `pass | fail | vacuous | skipped`
    pub verdict: String,
    pub checked: usize,
    pub violations: usize,
    pub vacuous_atoms: usize,
    #[serde(default)]
    pub notes: Vec<String>,
    #[serde(default)]
    pub witnesses: Vec<WitnessDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDoc {
    pub schema: String,
    pub tool_version: String,
    pub model_digest: String,
    /// Regions added by closing the declared family under ∪ and ∩.
    pub closure_added: Vec<Vec<String>>,
    pub checks: Vec<CheckDoc>,
    /// `pass | fail`
    pub summary: String,
}

fn event_names(model: &Model, e: &Event) -> Vec<String> {
    e.members().map(|h| model.histories()[h].clone()).collect()
}

fn region_names(model: &Model, r: &Region) -> Vec<String> {
    r.points().map(|p| model.site().name(p).to_string()).collect()
}

pub fn witness_doc(model: Option<&Model>, w: &Witness) -> WitnessDoc {
    let ev = |e: &Event| match model {
        Some(m) => event_names(m, e),
        None => e.members().map(|h| h.to_string()).collect(),
    };
    WitnessDoc {
        clause: w.clause.clone(),
        atom: w.atom.as_ref().map(ev),
        events: w
            .events
            .iter()
            .map(|(l, e)| NamedEvent {
                label: l.clone(),
                histories: ev(e),
            })
            .collect(),
        regions: w
            .regions
            .iter()
            .map(|r| match model {
                Some(m) => region_names(m, r),
                None => r.points().map(|p| p.to_string()).collect(),
            })
            .collect(),
        lhs: w.lhs.as_ref().map(rational::format),
        rhs: w.rhs.as_ref().map(rational::format),
    }
}

pub fn check_doc(model: Option<&Model>, r: &CheckReport) -> CheckDoc {
    CheckDoc {
        condition: r.condition.clone(),
        verdict: r.verdict().as_str().to_string(),
        checked: r.checked,
        violations: r.violations,
        vacuous_atoms: r.vacuous_atoms,
        notes: r.notes.clone(),
        witnesses: r.witnesses.iter().map(|w| witness_doc(model, w)).collect(),
    }
}

/// A check that did not run because a precondition was unmet.
pub fn skipped_doc(condition: &str, reason: &str) -> CheckDoc {
    CheckDoc {
        condition: condition.to_string(),
        verdict: "skipped".to_string(),
        checked: 0,
        violations: 0,
        vacuous_atoms: 0,
        notes: vec![reason.to_string()],
        witnesses: Vec::new(),
    }
}

impl ReportDoc {
    pub fn new(model: &Model, digest: String, checks: Vec<CheckDoc>) -> ReportDoc {
        let failed = checks.iter().any(|c| c.verdict == Verdict::Fail.as_str());
        ReportDoc {
            schema: REPORT_SCHEMA.to_string(),
            tool_version: TOOL_VERSION.to_string(),
            model_digest: digest,
            closure_added: model
                .universe()
                .closure_added()
                .map(|r| region_names(model, r))
                .collect(),
            checks,
            summary: if failed { "fail" } else { "pass" }.to_string(),
        }
    }
}

pub const CHSH_SCHEMA: &str = "bellcheck-chsh/1";
pub const GALLERY_SCHEMA: &str = "bellcheck-gallery/1";
pub const CONJECTURE_SCHEMA: &str = "bellcheck-conjecture/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrategyWeight {
    /// Deterministic strategy index; bits 0, 1 are A's outcomes for settings
    /// 0, 1 and bits 2, 3 are B's, a set bit meaning −1.
    pub strategy: usize,
    pub weight: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChshDoc {
    pub schema: String,
    pub tool_version: String,
    /// Digest of the model file, when the table came from one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model_digest: Option<String>,
    pub value: String,
    pub decimal: String,
    pub signs: String,
    /// `member | not-member`
    pub lhv: String,
    #[serde(default)]
    pub decomposition: Vec<StrategyWeight>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violated_facet: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signalling: Option<WitnessDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GalleryItemDoc {
    pub name: String,
    pub summary: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GalleryDoc {
    pub schema: String,
    pub tool_version: String,
    pub entries: Vec<GalleryItemDoc>,
}

// `deny_unknown_fields` does not combine with `flatten`; the schema
// closes the object instead.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureDoc {
    pub schema: String,
    pub tool_version: String,
    #[serde(flatten)]
    pub report: crate::locality::ConjectureReport,
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = r#"{
        "points": ["s", "a", "b"],
        "order": [["s", "a"], ["s", "b"]],
        "regions": {"A": ["a"], "B": ["b"], "S": ["s"]},
        "histories": ["h0", "h1"],
        "generators": {"L": {"event": ["h1"], "home": "S"}},
        "measure": {"h0": "1/2", "h1": "2/4"}
    }"#;

    #[test]
    fn parse_and_build() {
        let f = ModelFile::from_json(SMALL).unwrap();
        let m = f.build().unwrap().model;
        assert_eq!(m.history_count(), 2);
        assert_eq!(m.generators().len(), 1);
        // {a,b} and {s,a,b}, ... are closure additions
        assert!(m.universe().closure_added().count() > 0);
    }

    #[test]
    fn canonical_form_is_stable() {
        let f = ModelFile::from_json(SMALL).unwrap();
        let c = f.canonical().unwrap();
        assert_eq!(c.measure["h1"], "1/2");
        assert_eq!(c.canonical().unwrap(), c);
        assert_eq!(f.digest().unwrap(), c.digest().unwrap());
        let reparsed = ModelFile::from_json(&c.to_json_pretty()).unwrap();
        assert_eq!(reparsed.digest().unwrap(), f.digest().unwrap());
    }

    #[test]
    fn bad_files_are_rejected() {
        let zero_den = SMALL.replace("\"1/2\"", "\"1/0\"");
        assert!(matches!(
            ModelFile::from_json(&zero_den).unwrap().build(),
            Err(Error::BadRational(_))
        ));
        let unnormalized = SMALL.replace("\"2/4\"", "\"1/4\"");
        assert!(matches!(
            ModelFile::from_json(&unnormalized).unwrap().build(),
            Err(Error::MeasureNotNormalized(_))
        ));
        let unknown_key = SMALL.replace("\"points\"", "\"pts\"");
        assert!(ModelFile::from_json(&unknown_key).is_err());
        let bad_home = SMALL.replace("\"home\": \"S\"", "\"home\": \"Q\"");
        assert!(matches!(
            ModelFile::from_json(&bad_home).unwrap().build(),
            Err(Error::UnknownRegion(_))
        ));
        let cyclic = SMALL.replace("[\"s\", \"b\"]]", "[\"s\", \"b\"], [\"a\", \"s\"]]");
        assert!(matches!(
            ModelFile::from_json(&cyclic).unwrap().build(),
            Err(Error::NotAntisymmetric(..))
        ));
    }
}
