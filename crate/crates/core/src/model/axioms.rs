//! The localised-events axioms and separability.

use super::{Algebra, Model};
use crate::causal::Region;
use crate::error::{Error, Result};
use crate::report::{CheckReport, Witness};

pub const LOCALISED_EVENTS: &str = "localised-events";
pub const SEPARABILITY: &str = "separability";

/// Checks `Σ(A) ∩ Σ(B) = Σ(A ∩ B)` over all pairs and triples of universe
/// regions, that `Σ(∅)` is trivial, and the two derived consequences
/// (monotonicity and the union bound) under separate clause tags.
pub fn check_localised_axioms(model: &Model) -> CheckReport {
    let mut report = CheckReport::new(LOCALISED_EVENTS);
    let n = model.history_count();
    let universe = model.universe();
    let algebras = model.universe_algebras();
    let regions: Vec<&Region> = universe.regions().collect();
    let sigma = |r: &Region| &algebras[universe.index_of(r).expect("universe is closed")];

    let empty = model.site().empty_region();
    report.checked += 1;
    let sigma_empty = sigma(&empty);
    if !sigma_empty.is_trivial() {
        report.violate(
            Witness::new("empty-region")
                .event("event", &sigma_empty.atoms()[0])
                .region(&empty),
        );
    }

    for i in 0..regions.len() {
        for j in i + 1..regions.len() {
            let (a, b) = (regions[i], regions[j]);
            let (sa, sb) = (&algebras[i], &algebras[j]);
            report.checked += 1;
            let meet = Algebra::intersection(n, [sa, sb]);
            let expected = sigma(&a.intersection(b));
            if let Some(e) = meet.first_atom_outside(expected) {
                report.violate(Witness::new("intersection").event("event", e).region(a).region(b));
            }
            for (small, big, s_small, s_big) in [(a, b, sa, sb), (b, a, sb, sa)] {
                if small.is_subset(big) {
                    report.checked += 1;
                    if let Some(e) = s_small.first_atom_outside(s_big) {
                        report.violate(
                            Witness::new("derived:monotonicity")
                                .event("event", e)
                                .region(small)
                                .region(big),
                        );
                    }
                }
            }
            report.checked += 1;
            let joined = Algebra::join(n, [sa, sb]);
            if let Some(e) = joined.first_atom_outside(sigma(&a.union(b))) {
                report.violate(
                    Witness::new("derived:union-bound")
                        .event("event", e)
                        .region(a)
                        .region(b),
                );
            }
        }
    }

    for i in 0..regions.len() {
        for j in i + 1..regions.len() {
            for k in j + 1..regions.len() {
                report.checked += 1;
                let meet = Algebra::intersection(n, [&algebras[i], &algebras[j], &algebras[k]]);
                let inner = regions[i].intersection(regions[j]).intersection(regions[k]);
                if let Some(e) = meet.first_atom_outside(sigma(&inner)) {
                    report.violate(
                        Witness::new("triple")
                            .event("event", e)
                            .region(regions[i])
                            .region(regions[j])
                            .region(regions[k]),
                    );
                }
            }
        }
    }
    report
}

/// Checks `G(∪ᵢ Σ(Aᵢ)) = Σ(∪ᵢ Aᵢ)` for pairwise disjoint parts. A failure is
/// witnessed by a generator homed in the union that no combination of
/// events on the parts produces.
pub fn check_separability(model: &Model, parts: &[Region]) -> Result<CheckReport> {
    let mut report = CheckReport::new(SEPARABILITY);
    separability_into(model, parts, &mut report)?;
    Ok(report)
}

fn separability_into(model: &Model, parts: &[Region], report: &mut CheckReport) -> Result<()> {
    let site = model.site();
    for (i, p) in parts.iter().enumerate() {
        if p.size() != site.len() {
            return Err(Error::PointOutOfRange(p.size()));
        }
        for q in &parts[i + 1..] {
            if let Some(point) = p.intersection(q).points().next() {
                return Err(Error::Overlap(site.name(point).to_string()));
            }
        }
    }
    let n = model.history_count();
    let union = parts.iter().fold(site.empty_region(), |acc, p| acc.union(p));
    let part_algebras = parts
        .iter()
        .map(|p| model.region_algebra(p))
        .collect::<Result<Vec<_>>>()?;
    let joined = Algebra::join(n, &part_algebras);
    let whole = model.region_algebra(&union)?;
    report.checked += 1;
    if joined == whole {
        return Ok(());
    }
    let culprit = model
        .generators()
        .iter()
        .find(|g| g.home.is_subset(&union) && !joined.contains(&g.event));
    let mut w = Witness::new("join");
    w = match culprit {
        Some(g) => w.event(g.name.clone(), &g.event),
        None => w.event("event", whole.first_atom_outside(&joined).expect("algebras differ")),
    };
    for p in parts {
        w = w.region(p);
    }
    report.violate(w);
    Ok(())
}

/// Separability for every pair of disjoint nonempty universe regions.
pub fn check_separability_universe(model: &Model) -> CheckReport {
    let mut report = CheckReport::new(SEPARABILITY);
    let regions: Vec<&Region> = model.universe().regions().filter(|r| !r.is_empty()).collect();
    for i in 0..regions.len() {
        for j in i + 1..regions.len() {
            if regions[i].is_disjoint(regions[j]) {
                let parts = [regions[i].clone(), regions[j].clone()];
                separability_into(model, &parts, &mut report).expect("disjoint universe regions");
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::causal::CausalSite;
    use crate::model::{Event, GeneratorSpec};
    use crate::rational::ratio;
    use crate::report::Verdict;

    fn build(points: &[&str], regions: &[(&str, &[&str])], gens: &[(&str, &[usize], &str)], n: usize) -> Model {
        let site = CausalSite::from_named::<&str>(points, &[]).unwrap();
        let regions = regions
            .iter()
            .map(|(name, pts)| (name.to_string(), site.region(pts).unwrap()))
            .collect();
        let gens = gens
            .iter()
            .map(|(name, members, home)| GeneratorSpec {
                name: name.to_string(),
                event: Event::from_members(n, members.iter().copied()),
                home: home.to_string(),
                nonseparable: false,
            })
            .collect();
        let hs = (0..n).map(|i| format!("h{i}")).collect();
        Model::new(site, hs, regions, gens, vec![ratio(1, n as i64); n], vec![]).unwrap()
    }

    #[test]
    fn no_generators_pass() {
        let m = build(&["x", "y"], &[("X", &["x"]), ("Y", &["y"])], &[], 2);
        assert_eq!(check_localised_axioms(&m).verdict(), Verdict::Pass);
    }

    #[test]
    fn identical_events_on_disjoint_homes_violate_intersection() {
        let m = build(
            &["x", "y"],
            &[("X", &["x"]), ("Y", &["y"])],
            &[("g1", &[0], "X"), ("g2", &[0], "Y")],
            2,
        );
        let r = check_localised_axioms(&m);
        assert_eq!(r.verdict(), Verdict::Fail);
        assert!(r.has_clause("intersection"));
        assert!(!r.has_clause("derived:monotonicity"));
        assert!(!r.has_clause("derived:union-bound"));
    }

    #[test]
    fn generator_on_empty_region_violates_triviality() {
        let m = build(&["x"], &[("E", &[])], &[("g", &[0], "E")], 2);
        let r = check_localised_axioms(&m);
        assert!(r.has_clause("empty-region"));
    }

    #[test]
    fn product_model_is_separable() {
        let m = build(
            &["x", "y"],
            &[("X", &["x"]), ("Y", &["y"])],
            &[("gx", &[0, 1], "X"), ("gy", &[0, 2], "Y")],
            4,
        );
        assert_eq!(check_separability_universe(&m).verdict(), Verdict::Pass);
    }

    #[test]
    fn event_on_union_is_not_separable() {
        let m = build(&["x", "y"], &[("XY", &["x", "y"])], &[("g", &[0], "XY")], 2);
        let parts = [m.site().region(&["x"]).unwrap(), m.site().region(&["y"]).unwrap()];
        let r = check_separability(&m, &parts).unwrap();
        assert_eq!(r.verdict(), Verdict::Fail);
        assert_eq!(r.witnesses[0].events[0].0, "g");
        let overlap = [m.site().full_region(), parts[0].clone()];
        assert!(matches!(check_separability(&m, &overlap), Err(Error::Overlap(_))));
    }
}
