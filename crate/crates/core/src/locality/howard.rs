//! Howard's separability of states.
//!
//! The past region is split into parts `P_A`, `P_B` feeding the two wings.
//! The wing states α, β are taken to be full specifications of `Σ(P_A)` and
//! `Σ(P_B)`, and the state conditionals are `μ_α(a_o | a_s ∩ b_s) :=
//! μ(a_o | a_s ∩ b_s ∩ α)`. Whether λ enters the outcome conditionals only
//! through α (and β) is then a checkable property rather than an assumption.

use super::scenario::EprbScenario;
use super::{cond, meet, HOWARD_SEPARABILITY};
use crate::error::{Error, Result};
use crate::model::{Event, Model};
use crate::report::{CheckReport, Witness};

/// A joint state λ together with the wing states it refines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HowardState {
    pub lambda: Event,
    pub alpha: Event,
    pub beta: Event,
}

/// Pairs every atom λ of the past algebra with the atoms α of `Σ(P_A)` and
/// β of `Σ(P_B)` containing it.
pub fn howard_states(model: &Model, scen: &EprbScenario) -> Result<Vec<HowardState>> {
    let (pa, pb) = scen
        .past_partition
        .as_ref()
        .ok_or_else(|| Error::Precondition("scenario declares no past partition".into()))?;
    let site = model.site();
    if let Some(p) = pa.intersection(pb).points().next() {
        return Err(Error::Overlap(site.name(p).to_string()));
    }
    let past = scen.past_region(model)?;
    if pa.union(pb) != past {
        return Err(Error::Precondition(format!(
            "past partition covers {} but the past region is {}",
            site.describe(&pa.union(pb)),
            site.describe(&past)
        )));
    }
    let lambda = model.region_algebra(&past)?;
    let alpha = model.region_algebra(pa)?;
    let beta = model.region_algebra(pb)?;
    Ok(lambda
        .atoms()
        .iter()
        .map(|l| {
            let h = l.members().next().expect("atoms are nonempty");
            HowardState {
                lambda: l.clone(),
                alpha: alpha.atoms()[alpha.atom_of(h)].clone(),
                beta: beta.atoms()[beta.atom_of(h)].clone(),
            }
        })
        .collect())
}

/// Well-definedness of the wing states (clauses `alpha-state`, `beta-state`) and the
/// factorization through them (`state-product`) at one joint state.
#[allow(clippy::needless_range_loop)]
pub fn howard_at(model: &Model, scen: &EprbScenario, st: &HowardState) -> CheckReport {
    let mut r = CheckReport::new(HOWARD_SEPARABILITY);
    let (a_s, b_s, a_o, b_o) = (scen.a_s(), scen.b_s(), scen.a_o(), scen.b_o());
    let l = &st.lambda;
    for x in 0..2 {
        for y in 0..2 {
            let s = a_s[x].intersection(&b_s[y]);
            let sl = s.intersection(l);
            if model.is_null(&sl) {
                r.vacuous_atoms += 1;
                continue;
            }
            let sa = s.intersection(&st.alpha);
            let sb = s.intersection(&st.beta);
            let base = || {
                Witness::new("")
                    .atom(l)
                    .event("alpha", &st.alpha)
                    .event("beta", &st.beta)
                    .event("a_s", &a_s[x])
                    .event("b_s", &b_s[y])
            };
            for i in 0..2 {
                let lhs = cond(model, &a_o[i], &sl).expect("non-null");
                let rhs = cond(model, &a_o[i], &sa).expect("non-null");
                r.compare(lhs, rhs, || {
                    Witness {
                        clause: "alpha-state".into(),
                        ..base()
                    }
                    .event("a_o", &a_o[i])
                });
                let lhs = cond(model, &b_o[i], &sl).expect("non-null");
                let rhs = cond(model, &b_o[i], &sb).expect("non-null");
                r.compare(lhs, rhs, || {
                    Witness {
                        clause: "beta-state".into(),
                        ..base()
                    }
                    .event("b_o", &b_o[i])
                });
            }
            for i in 0..2 {
                for j in 0..2 {
                    let lhs = cond(model, &meet(&[&a_o[i], &b_o[j]]), &sl).expect("non-null");
                    let rhs =
                        cond(model, &a_o[i], &sa).expect("non-null") * cond(model, &b_o[j], &sb).expect("non-null");
                    r.compare(lhs, rhs, || {
                        Witness {
                            clause: "state-product".into(),
                            ..base()
                        }
                        .event("a_o", &a_o[i])
                        .event("b_o", &b_o[j])
                    });
                }
            }
        }
    }
    r
}

/// Separability of states over every joint state of the past region.
pub fn check_howard_separability_of_states(model: &Model, scen: &EprbScenario) -> Result<CheckReport> {
    let states = howard_states(model, scen)?;
    let mut report = CheckReport::new(HOWARD_SEPARABILITY);
    for st in &states {
        if model.is_null(&st.lambda) {
            report.vacuous_atoms += 1;
        } else {
            report.absorb(howard_at(model, scen, st));
        }
    }
    for clause in ["alpha-state", "beta-state", "state-product"] {
        if report.has_clause(clause) {
            report.note(format!("{clause} violated"));
        }
    }
    Ok(report)
}
