use bellcheck::gallery::{self, Artifact};
use bellcheck::model::axioms::check_separability;
use bellcheck::polytope::{behavior_from_model, check_no_signalling_behavior, chsh_value, lhv_membership};
use bellcheck::rational::int;
use bellcheck::suite::{run_suite, Suite};

#[test]
fn verdict_matrices_hold() {
    let mut mismatches = Vec::new();
    for entry in gallery::entries() {
        match entry.build() {
            Artifact::Model(file) => {
                let loaded = file.build().unwrap_or_else(|e| panic!("{}: {e}", entry.name));
                let outcomes = run_suite(&loaded, Suite::All, None).unwrap();
                for (cond, want) in entry.expected {
                    let got = outcomes
                        .iter()
                        .find(|o| o.condition() == *cond)
                        .map(|o| o.verdict_str())
                        .unwrap_or("missing");
                    if got != *want {
                        mismatches.push(format!("{} {cond}: expected {want}, got {got}", entry.name));
                    }
                }
            }
            Artifact::Behavior(t) => {
                for (cond, want) in entry.expected {
                    assert_eq!(*cond, "no-signalling");
                    assert_eq!(check_no_signalling_behavior(&t).verdict().as_str(), *want);
                }
            }
        }
    }
    assert!(mismatches.is_empty(), "{}", mismatches.join("\n"));
}

fn loaded(name: &str) -> bellcheck::LoadedModel {
    match gallery::lookup(name).unwrap().build() {
        Artifact::Model(f) => f.build().unwrap(),
        Artifact::Behavior(_) => panic!("{name} is a table"),
    }
}

#[test]
fn chsh_landmarks() {
    for (name, value) in [
        ("deterministic_common_cause", 2),
        ("pr_box", 4),
        ("superdeterministic", 4),
    ] {
        let l = loaded(name);
        let t = behavior_from_model(&l.model, l.scenario.as_ref().unwrap()).unwrap();
        assert_eq!(chsh_value(&t).value, int(value), "{name}");
    }
    let l = loaded("deterministic_common_cause");
    let t = behavior_from_model(&l.model, l.scenario.as_ref().unwrap()).unwrap();
    assert!(lhv_membership(&t).is_local());
}

#[test]
fn nonseparable_minimal_structure() {
    let l = loaded("nonseparable_minimal");
    let m = &l.model;
    let x1 = m.region("X1").unwrap().clone();
    let x23 = m.region("X23").unwrap().clone();
    let r = check_separability(m, &[x1, x23]).unwrap();
    assert!(r.failed());
    let full = m.global_algebra();
    for region in m.universe().regions() {
        let alg = m.region_algebra(region).unwrap();
        if m.region("XR").unwrap().is_subset(region) {
            assert_eq!(alg, full);
        } else {
            assert!(alg.is_trivial());
        }
    }
}
