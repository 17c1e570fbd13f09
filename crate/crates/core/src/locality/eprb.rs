//! Conditions on the two-wing experiment: freedom of settings,
//! factorisability and its derivation, no-signalling, and Jarrett's split
//! into outcome and parameter independence.

use super::scenario::EprbScenario;
use super::{
    check_bell_locality, cond, meet, over_atoms, DERIVATION_CHAIN, FACTORISABILITY, FREEDOM_OF_SETTINGS,
    JARRETT_DECOMPOSITION, NO_SIGNALLING, OUTCOME_INDEPENDENCE, PARAMETER_INDEPENDENCE,
};
use crate::error::{Error, Result};
use crate::model::{Algebra, Event, Model};
use crate::rational;
use crate::report::{CheckReport, Verdict, Witness};

const BITS: [usize; 2] = [0, 1];

fn past_algebra(model: &Model, scen: &EprbScenario) -> Result<Algebra> {
    model.region_algebra(&scen.past_region(model)?)
}

struct Vars {
    a_s: [Event; 2],
    b_s: [Event; 2],
    a_o: [Event; 2],
    b_o: [Event; 2],
}

impl Vars {
    fn new(scen: &EprbScenario) -> Vars {
        Vars {
            a_s: scen.a_s(),
            b_s: scen.b_s(),
            a_o: scen.a_o(),
            b_o: scen.b_o(),
        }
    }

    fn witness(&self, clause: &str, l: Option<&Event>, x: usize, y: usize) -> Witness {
        let mut w = Witness::new(clause)
            .event("a_s", &self.a_s[x])
            .event("b_s", &self.b_s[y]);
        if let Some(l) = l {
            w = w.atom(l);
        }
        w
    }
}

/// Freedom of settings: `μ(a_s ∩ b_s | λ) = μ(a_s ∩ b_s)` for every non-null
/// full specification λ of the scenario's past region.
pub fn check_freedom_of_settings(model: &Model, scen: &EprbScenario) -> Result<CheckReport> {
    let lambda = past_algebra(model, scen)?;
    let v = Vars::new(scen);
    let mut report = over_atoms(model, FREEDOM_OF_SETTINGS, &lambda, |l| {
        let mut r = CheckReport::new(FREEDOM_OF_SETTINGS);
        for x in BITS {
            for y in BITS {
                let s = v.a_s[x].intersection(&v.b_s[y]);
                let lhs = cond(model, &s, l).expect("atom is non-null");
                r.compare(lhs, model.probability(&s), || v.witness("settings-free", Some(l), x, y));
            }
        }
        r
    });
    for (label, e) in [("A_s", &scen.setting_a), ("B_s", &scen.setting_b)] {
        let p = model.probability(e);
        if p == rational::zero() || p == rational::one() {
            report.note(format!(
                "setting {label} is degenerate: probability {}",
                rational::format(&p)
            ));
        }
    }
    Ok(report)
}

/// Factorisability at one atom λ.
pub fn factorisation_at(model: &Model, scen: &EprbScenario, l: &Event) -> CheckReport {
    let v = Vars::new(scen);
    let mut r = CheckReport::new(FACTORISABILITY);
    for x in BITS {
        for y in BITS {
            let s = meet(&[&v.a_s[x], &v.b_s[y], l]);
            if model.is_null(&s) {
                r.vacuous_atoms += 1;
                continue;
            }
            let al = v.a_s[x].intersection(l);
            let bl = v.b_s[y].intersection(l);
            for i in BITS {
                for j in BITS {
                    let ab = v.a_o[i].intersection(&v.b_o[j]);
                    let lhs = cond(model, &ab, &s).expect("non-null");
                    let rhs =
                        cond(model, &v.a_o[i], &al).expect("non-null") * cond(model, &v.b_o[j], &bl).expect("non-null");
                    r.compare(lhs, rhs, || {
                        v.witness("factorised", Some(l), x, y)
                            .event("a_o", &v.a_o[i])
                            .event("b_o", &v.b_o[j])
                    });
                }
            }
        }
    }
    r
}

/// Factorisability: `μ(a_o ∩ b_o | a_s ∩ b_s ∩ λ) = μ(a_o | a_s ∩ λ) μ(b_o | b_s ∩ λ)`.
pub fn check_factorisability(model: &Model, scen: &EprbScenario) -> Result<CheckReport> {
    let lambda = past_algebra(model, scen)?;
    Ok(over_atoms(model, FACTORISABILITY, &lambda, |l| {
        factorisation_at(model, scen, l)
    }))
}

/// Bell locality applied to setting/outcome conjunctions at one atom.
fn local_conjunctions_at(model: &Model, v: &Vars, l: &Event, r: &mut CheckReport) {
    for x in BITS {
        for y in BITS {
            for i in BITS {
                for j in BITS {
                    let a = v.a_o[i].intersection(&v.a_s[x]);
                    let b = v.b_o[j].intersection(&v.b_s[y]);
                    let lhs = cond(model, &a.intersection(&b), l).expect("non-null");
                    let rhs = cond(model, &a, l).expect("non-null") * cond(model, &b, l).expect("non-null");
                    r.compare(lhs, rhs, || {
                        v.witness("local-conjunction", Some(l), x, y)
                            .event("a_o", &v.a_o[i])
                            .event("b_o", &v.b_o[j])
                    });
                }
            }
        }
    }
}

/// Re-derives factorisability step by step from Bell locality and freedom
/// of settings, checking each intermediate identity. Any failure here is a
/// bug in the checker, not a property of the model.
pub fn verify_derivation_chain(model: &Model, scen: &EprbScenario) -> Result<CheckReport> {
    let bell = check_bell_locality(model, &scen.wing_a, &scen.wing_b, &scen.past)?;
    if bell.verdict() == Verdict::Fail {
        return Err(Error::Precondition(
            "bell-locality fails for this scenario; the derivation chain assumes it".into(),
        ));
    }
    let free = check_freedom_of_settings(model, scen)?;
    if free.verdict() == Verdict::Fail {
        return Err(Error::Precondition(
            "freedom-of-settings fails for this scenario; the derivation chain assumes it".into(),
        ));
    }
    let lambda = past_algebra(model, scen)?;
    let v = Vars::new(scen);
    let mut report = over_atoms(model, DERIVATION_CHAIN, &lambda, |l| {
        let mut r = CheckReport::new(DERIVATION_CHAIN);
        local_conjunctions_at(model, &v, l, &mut r);
        for x in BITS {
            for y in BITS {
                let pa = model.probability(&v.a_s[x]);
                let pb = model.probability(&v.b_s[y]);
                let s = v.a_s[x].intersection(&v.b_s[y]);
                let sl = cond(model, &s, l).expect("non-null");
                let al = cond(model, &v.a_s[x], l).expect("non-null");
                let bl = cond(model, &v.b_s[y], l).expect("non-null");
                r.compare(sl.clone(), &al * &bl, || v.witness("settings:product", Some(l), x, y));
                r.compare(sl, &pa * &pb, || v.witness("settings:free", Some(l), x, y));
                let sln = s.intersection(l);
                if model.is_null(&sln) {
                    r.vacuous_atoms += 1;
                    continue;
                }
                let asl = v.a_s[x].intersection(l);
                let bsl = v.b_s[y].intersection(l);
                for i in BITS {
                    for j in BITS {
                        let ab = v.a_o[i].intersection(&v.b_o[j]);
                        let w = || {
                            v.witness("", Some(l), x, y)
                                .event("a_o", &v.a_o[i])
                                .event("b_o", &v.b_o[j])
                        };
                        let joint = cond(model, &ab.intersection(&s), l).expect("non-null");
                        let via = cond(model, &ab, &sln).expect("non-null") * &pa * &pb;
                        r.compare(joint, via, || Witness {
                            clause: "outcomes:joint".into(),
                            ..w()
                        });
                        let a_side = cond(model, &v.a_o[i].intersection(&v.a_s[x]), l).expect("non-null");
                        let a_via = cond(model, &v.a_o[i], &asl).expect("non-null") * &pa;
                        r.compare(a_side, a_via, || Witness {
                            clause: "outcomes:a".into(),
                            ..w()
                        });
                        let b_side = cond(model, &v.b_o[j].intersection(&v.b_s[y]), l).expect("non-null");
                        let b_via = cond(model, &v.b_o[j], &bsl).expect("non-null") * &pb;
                        r.compare(b_side, b_via, || Witness {
                            clause: "outcomes:b".into(),
                            ..w()
                        });
                    }
                }
            }
        }
        r.absorb(factorisation_at(model, scen, l));
        r
    });
    report.note("internal-consistency suite: a failure indicates a checker bug");
    Ok(report)
}

/// No-signalling: `μ(a_o | a_s ∩ b_s) = μ(a_o | a_s)` and
/// `μ(b_o | a_s ∩ b_s) = μ(b_o | b_s)`.
pub fn check_no_signalling(model: &Model, scen: &EprbScenario) -> Result<CheckReport> {
    let v = Vars::new(scen);
    for x in BITS {
        for y in BITS {
            if model.is_null(&v.a_s[x].intersection(&v.b_s[y])) {
                return Err(Error::NullSettingPair(x, y));
            }
        }
    }
    let mut r = CheckReport::new(NO_SIGNALLING);
    for x in BITS {
        for y in BITS {
            let s = v.a_s[x].intersection(&v.b_s[y]);
            for i in BITS {
                let lhs = cond(model, &v.a_o[i], &s).expect("non-null");
                let rhs = cond(model, &v.a_o[i], &v.a_s[x]).expect("non-null");
                r.compare(lhs, rhs, || v.witness("marginal-a", None, x, y).event("a_o", &v.a_o[i]));
                let lhs = cond(model, &v.b_o[i], &s).expect("non-null");
                let rhs = cond(model, &v.b_o[i], &v.b_s[y]).expect("non-null");
                r.compare(lhs, rhs, || v.witness("marginal-b", None, x, y).event("b_o", &v.b_o[i]));
            }
        }
    }
    Ok(r)
}

/// Outcome independence at one atom λ.
pub fn outcome_independence_at(model: &Model, scen: &EprbScenario, l: &Event) -> CheckReport {
    let v = Vars::new(scen);
    let mut r = CheckReport::new(OUTCOME_INDEPENDENCE);
    for x in BITS {
        for y in BITS {
            let s = meet(&[&v.a_s[x], &v.b_s[y], l]);
            if model.is_null(&s) {
                r.vacuous_atoms += 1;
                continue;
            }
            for (clause, mine, theirs, mine_label, their_label) in [
                ("outcome-a", &v.a_o, &v.b_o, "a_o", "b_o"),
                ("outcome-b", &v.b_o, &v.a_o, "b_o", "a_o"),
            ] {
                for j in BITS {
                    let given = s.intersection(&theirs[j]);
                    if model.is_null(&given) {
                        r.vacuous_atoms += 1;
                        continue;
                    }
                    for i in BITS {
                        let lhs = cond(model, &mine[i], &given).expect("non-null");
                        let rhs = cond(model, &mine[i], &s).expect("non-null");
                        r.compare(lhs, rhs, || {
                            v.witness(clause, Some(l), x, y)
                                .event(mine_label, &mine[i])
                                .event(their_label, &theirs[j])
                        });
                    }
                }
            }
        }
    }
    r
}

/// Outcome independence: conditioning on the distant outcome changes nothing.
pub fn check_outcome_independence(model: &Model, scen: &EprbScenario) -> Result<CheckReport> {
    let lambda = past_algebra(model, scen)?;
    Ok(over_atoms(model, OUTCOME_INDEPENDENCE, &lambda, |l| {
        outcome_independence_at(model, scen, l)
    }))
}

/// Parameter independence at one atom λ.
pub fn parameter_independence_at(model: &Model, scen: &EprbScenario, l: &Event) -> CheckReport {
    let v = Vars::new(scen);
    let mut r = CheckReport::new(PARAMETER_INDEPENDENCE);
    for x in BITS {
        for y in BITS {
            let s = meet(&[&v.a_s[x], &v.b_s[y], l]);
            if model.is_null(&s) {
                r.vacuous_atoms += 1;
                continue;
            }
            let al = v.a_s[x].intersection(l);
            let bl = v.b_s[y].intersection(l);
            for i in BITS {
                let lhs = cond(model, &v.a_o[i], &s).expect("non-null");
                let rhs = cond(model, &v.a_o[i], &al).expect("non-null");
                r.compare(lhs, rhs, || v.witness("parameter-a", Some(l), x, y).event("a_o", &v.a_o[i]));
                let lhs = cond(model, &v.b_o[i], &s).expect("non-null");
                let rhs = cond(model, &v.b_o[i], &bl).expect("non-null");
                r.compare(lhs, rhs, || v.witness("parameter-b", Some(l), x, y).event("b_o", &v.b_o[i]));
            }
        }
    }
    r
}

/// Parameter independence: the local outcome ignores the distant setting.
pub fn check_parameter_independence(model: &Model, scen: &EprbScenario) -> Result<CheckReport> {
    let lambda = past_algebra(model, scen)?;
    Ok(over_atoms(model, PARAMETER_INDEPENDENCE, &lambda, |l| {
        parameter_independence_at(model, scen, l)
    }))
}

/// Checks, atom by atom, that Bell locality for the setting/outcome events
/// holds exactly when outcome and parameter independence both hold.
///
/// The equivalence needs the settings to be independent of λ and of each
/// other; without the second half it fails already for perfectly
/// correlated settings and a trivial past. Both are checked up front.
pub fn check_jarrett_decomposition(model: &Model, scen: &EprbScenario) -> Result<CheckReport> {
    let free = check_freedom_of_settings(model, scen)?;
    if free.verdict() == Verdict::Fail {
        return Err(Error::Precondition(
            "freedom-of-settings fails; the decomposition is only asserted for free settings".into(),
        ));
    }
    let v = Vars::new(scen);
    for x in BITS {
        for y in BITS {
            let joint = model.probability(&v.a_s[x].intersection(&v.b_s[y]));
            if joint != model.probability(&v.a_s[x]) * model.probability(&v.b_s[y]) {
                return Err(Error::Precondition("settings are not independent of each other".into()));
            }
        }
    }
    let lambda = past_algebra(model, scen)?;
    let mut report = CheckReport::new(JARRETT_DECOMPOSITION);
    let (mut n, mut n_local, mut n_oi, mut n_pi) = (0, 0, 0, 0);
    let truth = |b: bool| if b { rational::one() } else { rational::zero() };
    for l in lambda.atoms() {
        if model.is_null(l) {
            report.vacuous_atoms += 1;
            continue;
        }
        let mut conj = CheckReport::new("");
        local_conjunctions_at(model, &v, l, &mut conj);
        let local = conj.violations == 0;
        let oi = outcome_independence_at(model, scen, l).violations == 0;
        let pi = parameter_independence_at(model, scen, l).violations == 0;
        n += 1;
        n_local += local as usize;
        n_oi += oi as usize;
        n_pi += pi as usize;
        report.compare(truth(local), truth(oi && pi), || Witness::new("biconditional").atom(l));
    }
    report.note(format!(
        "locality holds at {n_local}/{n} atoms, outcome independence at {n_oi}/{n}, parameter independence at {n_pi}/{n}"
    ));
    Ok(report)
}
