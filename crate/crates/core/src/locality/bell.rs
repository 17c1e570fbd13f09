//! Screening-off conditions: Bell locality and its variants.
//!
//! All of them share one shape. Pick a conditioning region, take the atoms λ
//! of its algebra, and require the full specifications of two regions to be
//! independent given each non-null λ. Independence of atoms implies
//! independence of every pair of events, since events are disjoint unions of
//! atoms; [`check_bell_locality_events`] checks the event-level statement
//! directly for small models.

use super::{over_atoms, BELL_LOCALITY, BELL_LOCALITY_WEAKENED, NOUVELLE_LOCALITY, SRLA};
use crate::causal::{PastSelector, Region, Slice};
use crate::error::Result;
use crate::model::{Algebra, Event, Model};
use crate::rational::Rational;
use crate::report::{CheckReport, Witness};

#[allow(clippy::too_many_arguments)]
fn screening(
    model: &Model,
    condition: &str,
    clause: &str,
    x: &Region,
    y: &Region,
    lambda: &Algebra,
    xs: &[Event],
    ys: &[Event],
) -> CheckReport {
    over_atoms(model, condition, lambda, |l| {
        let mut r = CheckReport::new(condition);
        let ml = model.mass(l);
        for ex in xs {
            let xl = ex.intersection(l);
            let mxl = model.mass(&xl);
            for ey in ys {
                let mxyl = model.mass(&xl.intersection(ey));
                let myl = model.mass(&ey.intersection(l));
                r.checked += 1;
                if &mxyl * &ml != &mxl * &myl {
                    let lhs = Rational::new(mxyl, ml.clone());
                    let rhs = Rational::new(&mxl * &myl, &ml * &ml);
                    r.violate(
                        Witness::new(clause)
                            .atom(l)
                            .event("x", ex)
                            .event("y", ey)
                            .region(x)
                            .region(y)
                            .sides(lhs, rhs),
                    );
                }
            }
        }
        r
    })
}

fn atom_screening(
    model: &Model,
    condition: &str,
    clause: &str,
    x: &Region,
    y: &Region,
    lambda: &Algebra,
) -> Result<CheckReport> {
    let xs = model.full_specifications(x)?;
    let ys = model.full_specifications(y)?;
    Ok(screening(model, condition, clause, x, y, lambda, &xs, &ys))
}

/// Bell locality: full specifications of `a` and `b` are independent given
/// every full specification of the selected past region.
pub fn check_bell_locality(model: &Model, a: &Region, b: &Region, sel: &PastSelector) -> Result<CheckReport> {
    let past = model.site().resolve_past(a, b, sel)?;
    let lambda = model.region_algebra(&past)?;
    let mut report = atom_screening(model, BELL_LOCALITY, "screening-off", a, b, &lambda)?;
    report.note(format!(
        "past region ({}) {}",
        sel.label(),
        model.site().describe(&past)
    ));
    Ok(report)
}

/// Bell locality over every pair of events of `Σ(a) × Σ(b)` rather than atom
/// pairs. Exponential in the atom counts; meant for small models.
pub fn check_bell_locality_events(model: &Model, a: &Region, b: &Region, sel: &PastSelector) -> Result<CheckReport> {
    let past = model.site().resolve_past(a, b, sel)?;
    let lambda = model.region_algebra(&past)?;
    let xs = model.region_algebra(a)?.events();
    let ys = model.region_algebra(b)?.events();
    Ok(screening(model, BELL_LOCALITY, "screening-off", a, b, &lambda, &xs, &ys))
}

/// Bell locality with the past taken to be the part of a slice that blocks
/// both backward light cones.
pub fn check_nouvelle_locality(model: &Model, a: &Region, b: &Region, slice: &Slice) -> Result<CheckReport> {
    let sel = PastSelector::SliceBlock(slice.clone());
    let past = model.site().resolve_past(a, b, &sel)?;
    let lambda = model.region_algebra(&past)?;
    let mut report = atom_screening(model, NOUVELLE_LOCALITY, "slice-screening-off", a, b, &lambda)?;
    report.note(format!("slice region {}", model.site().describe(&past)));
    Ok(report)
}

/// The algebra the weakened condition conditions on: the past algebra
/// refined by every declared non-separable event whose intrinsic region
/// meets the past region.
pub fn weakened_conditioning_algebra(model: &Model, past: &Region) -> Result<Algebra> {
    let mut events: Vec<&Event> = model
        .generators()
        .iter()
        .filter(|g| g.home.is_subset(past))
        .map(|g| &g.event)
        .collect();
    for g in model.generators().iter().filter(|g| g.nonseparable) {
        let region = model.intrinsic_region(&g.event).unwrap_or_else(|_| g.home.clone());
        if region.intersects(past) && !g.home.is_subset(past) {
            events.push(&g.event);
        }
    }
    Ok(model.generated_algebra(events))
}

/// Bell locality weakened so that non-separable events lying only partly in
/// the past region also count as part of its full specification.
pub fn check_bell_locality_weakened(model: &Model, a: &Region, b: &Region, sel: &PastSelector) -> Result<CheckReport> {
    let past = model.site().resolve_past(a, b, sel)?;
    let lambda = weakened_conditioning_algebra(model, &past)?;
    let mut report = atom_screening(model, BELL_LOCALITY_WEAKENED, "weakened-screening-off", a, b, &lambda)?;
    report.note(format!(
        "past region ({}) {}",
        sel.label(),
        model.site().describe(&past)
    ));
    Ok(report)
}

/// Strong relativistic local action for one `(x, y, slice)` triple: the full
/// specifications of `x` and `y` are independent given every full
/// specification of the interposed part of the slice. With nothing
/// interposed there is nothing to screen by, and the report is vacuous.
pub fn check_srla(model: &Model, x: &Region, y: &Region, s: &Slice) -> Result<CheckReport> {
    let d = model.site().srla_region(x, y, s)?;
    if d.is_empty() {
        let mut report = CheckReport::new(SRLA);
        report.note("interposed region is empty");
        return Ok(report);
    }
    let lambda = model.region_algebra(&d)?;
    atom_screening(model, SRLA, "srla-screening-off", x, y, &lambda)
}

/// All admissible `(x, y, slice name)` triples: nonempty universe regions
/// with `x` entirely to the past of `y`, and a declared slice whose
/// interposed region is nonempty and blocks every causal chain from `x`
/// to `y`.
pub fn srla_triples(model: &Model) -> Vec<(Region, Region, String)> {
    let site = model.site();
    let regions: Vec<&Region> = model.universe().regions().filter(|r| !r.is_empty()).collect();
    let mut out = Vec::new();
    for x in &regions {
        for y in &regions {
            if !site.entirely_in_past(x, y) {
                continue;
            }
            for (name, s) in model.slices() {
                let d = match site.srla_region(x, y, s) {
                    Ok(d) => d,
                    Err(_) => continue,
                };
                if !d.is_empty() && site.blocks(&d, x, y) {
                    out.push(((*x).clone(), (*y).clone(), name.clone()));
                }
            }
        }
    }
    out
}

/// SRLA over every admissible triple.
pub fn check_srla_all(model: &Model) -> Result<CheckReport> {
    let mut report = CheckReport::new(SRLA);
    let triples = srla_triples(model);
    if triples.is_empty() {
        report.note("no admissible (x, y, slice) triple");
    }
    for (x, y, name) in &triples {
        report.absorb(check_srla(model, x, y, model.slice(name)?)?);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::causal::CausalSite;
    use crate::model::GeneratorSpec;
    use crate::rational::ratio;
    use crate::report::Verdict;

    /// Points l ≺ a, l ≺ b. Ω = bits (L, A, B). `joint` gives the weight of
    /// each history.
    fn common_cause(weights: [i64; 8]) -> Model {
        let site = CausalSite::from_named(&["l", "a", "b"], &[("l", "a"), ("l", "b")]).unwrap();
        let regions = ["l", "a", "b"]
            .iter()
            .map(|p| (p.to_uppercase(), site.region(&[*p]).unwrap()))
            .collect();
        let gens = ["L", "A", "B"]
            .iter()
            .enumerate()
            .map(|(i, name)| GeneratorSpec {
                name: name.to_string(),
                event: Event::from_fn(8, |h| h >> i & 1 == 1),
                home: name.to_string(),
                nonseparable: false,
            })
            .collect();
        let total: i64 = weights.iter().sum();
        let measure = weights.iter().map(|w| ratio(*w, total)).collect();
        let hs = (0..8).map(|h| format!("{h:03b}")).collect();
        Model::new(site, hs, regions, gens, measure, vec![]).unwrap()
    }

    fn regions(m: &Model) -> (Region, Region) {
        (m.region("A").unwrap().clone(), m.region("B").unwrap().clone())
    }

    #[test]
    fn copies_of_a_common_cause_are_screened() {
        // A = B = L, L fair.
        let m = common_cause([1, 0, 0, 0, 0, 0, 0, 1]);
        let (a, b) = regions(&m);
        let r = check_bell_locality(&m, &a, &b, &PastSelector::JointPast).unwrap();
        assert_eq!(r.verdict(), Verdict::Pass);
        let events = check_bell_locality_events(&m, &a, &b, &PastSelector::JointPast).unwrap();
        assert_eq!(events.verdict(), Verdict::Pass);
    }

    #[test]
    fn correlation_without_cause_fails() {
        // A = B fair; L constant in `m`, an independent fair coin in `m2`.
        let m = common_cause([1, 0, 0, 0, 0, 0, 1, 0]);
        let m2 = common_cause([1, 1, 0, 0, 0, 0, 1, 1]);
        let (a, b) = regions(&m2);
        let r = check_bell_locality(&m2, &a, &b, &PastSelector::JointPast).unwrap();
        assert_eq!(r.verdict(), Verdict::Fail);
        let w = &r.witnesses[0];
        assert!(w.atom.is_some());
        assert_ne!(w.lhs, w.rhs);
        let (a, b) = regions(&m);
        assert_eq!(
            check_bell_locality(&m, &a, &b, &PastSelector::JointPast)
                .unwrap()
                .verdict(),
            Verdict::Fail
        );
    }

    #[test]
    fn timelike_wings_rejected() {
        let m = common_cause([1; 8]);
        let l = m.region("L").unwrap().clone();
        let a = m.region("A").unwrap().clone();
        assert!(check_bell_locality(&m, &l, &a, &PastSelector::JointPast).is_err());
    }

    #[test]
    fn srla_on_a_chain() {
        // chain x ≺ m ≺ y, Markov: Y copies M copies X.
        let site = CausalSite::from_named(&["x", "m", "y"], &[("x", "m"), ("m", "y")]).unwrap();
        let regions = ["x", "m", "y"]
            .iter()
            .map(|p| (p.to_uppercase(), site.region(&[*p]).unwrap()))
            .collect();
        let gens = ["X", "M", "Y"]
            .iter()
            .enumerate()
            .map(|(i, name)| GeneratorSpec {
                name: name.to_string(),
                event: Event::from_fn(8, |h| h >> i & 1 == 1),
                home: name.to_string(),
                nonseparable: false,
            })
            .collect();
        let measure = (0..8)
            .map(|h| if h == 0 || h == 7 { ratio(1, 2) } else { ratio(0, 1) })
            .collect();
        let hs = (0..8).map(|h| format!("{h:03b}")).collect();
        let mid = site.region(&["m"]).unwrap();
        let slice = site.slice(mid.clone(), mid).unwrap();
        let m = Model::new(site, hs, regions, gens, measure, vec![("S".into(), slice.clone())]).unwrap();
        let (x, y) = (m.region("X").unwrap().clone(), m.region("Y").unwrap().clone());
        assert_eq!(check_srla(&m, &x, &y, &slice).unwrap().verdict(), Verdict::Pass);
        let triples = srla_triples(&m);
        assert!(triples.iter().any(|(tx, ty, _)| tx == &x && ty == &y));
        assert_eq!(check_srla_all(&m).unwrap().verdict(), Verdict::Pass);
        // y precedes x: precondition error
        assert!(check_srla(&m, &y, &x, &slice).is_err());
    }
}
