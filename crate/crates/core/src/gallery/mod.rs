//! Named models with known verdicts, and random model generation.

pub mod builder;
pub mod named;
pub mod random;

pub use builder::{uniform_if, Bits, FreeModel};
pub use named::*;
pub use random::{inject_nonseparable, random_model, random_ns_table, random_ns_tables, SizeCaps};

use crate::error::{Error, Result};
use crate::io::ModelFile;
use crate::polytope::BehaviorTable;

#[allow(clippy::large_enum_variant)]
pub enum Artifact {
    Model(ModelFile),
    Behavior(BehaviorTable),
}

/// A gallery item and the verdicts it is expected to produce, as
/// `(condition, verdict)` with verdicts `pass | fail | vacuous | skipped`.
pub struct GalleryEntry {
    pub name: &'static str,
    pub summary: &'static str,
    pub expected: &'static [(&'static str, &'static str)],
    build: fn() -> Artifact,
}

impl GalleryEntry {
    pub fn build(&self) -> Artifact {
        (self.build)()
    }
}

fn model(f: fn() -> ModelFile) -> Artifact {
    Artifact::Model(f())
}

pub fn entries() -> Vec<GalleryEntry> {
    vec![
        GalleryEntry {
            name: "nonseparable_minimal",
            summary: "localised events hold while separability fails",
            expected: &[("localised-events", "pass"), ("separability", "fail")],
            build: || model(nonseparable_minimal),
        },
        GalleryEntry {
            name: "deterministic_common_cause",
            summary: "a fair source bit screens off both outcomes; CHSH = 2",
            expected: &[
                ("localised-events", "pass"),
                ("separability", "pass"),
                ("bell-locality", "pass"),
                ("freedom-of-settings", "pass"),
                ("factorisability", "pass"),
                ("derivation-chain", "pass"),
                ("no-signalling", "pass"),
                ("outcome-independence", "pass"),
                ("parameter-independence", "pass"),
                ("jarrett-decomposition", "pass"),
                ("bell-locality-weakened", "pass"),
            ],
            build: || model(deterministic_common_cause),
        },
        GalleryEntry {
            name: "pr_box",
            summary: "maximal no-signalling correlations; CHSH = 4",
            expected: &[
                ("localised-events", "pass"),
                ("bell-locality", "fail"),
                ("freedom-of-settings", "pass"),
                ("factorisability", "fail"),
                ("no-signalling", "pass"),
                ("outcome-independence", "fail"),
                ("parameter-independence", "pass"),
                ("jarrett-decomposition", "pass"),
            ],
            build: || model(pr_box),
        },
        GalleryEntry {
            name: "pilot_wave_like",
            summary: "outcome depends on the distant setting without signalling",
            expected: &[
                ("bell-locality", "fail"),
                ("freedom-of-settings", "pass"),
                ("factorisability", "fail"),
                ("no-signalling", "pass"),
                ("outcome-independence", "pass"),
                ("parameter-independence", "fail"),
                ("jarrett-decomposition", "pass"),
            ],
            build: || model(pilot_wave_like),
        },
        GalleryEntry {
            name: "superdeterministic",
            summary: "settings read off the past: Bell locality holds, freedom fails",
            expected: &[
                ("bell-locality", "pass"),
                ("freedom-of-settings", "fail"),
                ("factorisability", "pass"),
                ("derivation-chain", "skipped"),
                ("no-signalling", "pass"),
                ("jarrett-decomposition", "skipped"),
            ],
            build: || model(superdeterministic),
        },
        GalleryEntry {
            name: "backyard_pingpong",
            summary: "timelike wings linked by a separable mechanism; Howard's condition fails",
            expected: &[
                ("localised-events", "pass"),
                ("separability", "pass"),
                ("howard-separability-of-states", "fail"),
                ("bell-locality", "fail"),
                ("no-signalling", "pass"),
                ("outcome-independence", "fail"),
                ("parameter-independence", "pass"),
            ],
            build: || model(backyard_pingpong),
        },
        GalleryEntry {
            name: "maudlin_bare_correlation",
            summary: "perfect correlation with an empty past algebra",
            expected: &[
                ("separability", "pass"),
                ("howard-separability-of-states", "fail"),
                ("bell-locality", "fail"),
                ("no-signalling", "pass"),
                ("outcome-independence", "fail"),
                ("parameter-independence", "pass"),
            ],
            build: || model(maudlin_bare_correlation),
        },
        GalleryEntry {
            name: "weakened_locality_signalling",
            summary: "weakened Bell locality holds for a signalling model",
            expected: &[
                ("localised-events", "pass"),
                ("separability", "fail"),
                ("bell-locality", "fail"),
                ("bell-locality-weakened", "pass"),
                ("freedom-of-settings", "pass"),
                ("no-signalling", "fail"),
                ("parameter-independence", "fail"),
            ],
            build: || model(weakened_locality_signalling),
        },
        GalleryEntry {
            name: "simpsons_slice",
            summary: "the full past screens off the correlation, the slice does not",
            expected: &[
                ("localised-events", "pass"),
                ("separability", "fail"),
                ("bell-locality", "pass"),
                ("nouvelle-locality", "fail"),
                ("srla", "fail"),
                ("freedom-of-settings", "pass"),
                ("factorisability", "pass"),
                ("no-signalling", "pass"),
            ],
            build: || model(simpsons_slice),
        },
        GalleryEntry {
            name: "tsirelson_approx",
            summary: "rounded singlet statistics at the CHSH-optimal angles",
            expected: &[("no-signalling", "pass")],
            build: || Artifact::Behavior(tsirelson_approx(TSIRELSON_DEFAULT_CAP).expect("default cap is valid")),
        },
    ]
}

pub fn lookup(name: &str) -> Result<GalleryEntry> {
    entries()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::InvalidArgument(format!("no gallery entry named `{name}`")))
}
