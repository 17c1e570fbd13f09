use super::builder::{uniform_if, FreeModel};
use crate::io::ModelFile;
use crate::locality::ScenarioSpec;
use crate::polytope::{singlet_table, BehaviorTable, TSIRELSON_ANGLES};
use crate::rational;
use crate::Result;

fn two_wing(past: &str, partition: Option<(&str, &str)>) -> ScenarioSpec {
    ScenarioSpec {
        wing_a: "A".into(),
        wing_b: "B".into(),
        setting_a: "As".into(),
        setting_b: "Bs".into(),
        outcome_a: "Ao".into(),
        outcome_b: "Bo".into(),
        past: past.into(),
        past_partition: partition.map(|(a, b)| (a.into(), b.into())),
    }
}

/// Setting index: 0 when the setting event holds.
fn idx(holds: bool) -> usize {
    usize::from(!holds)
}

/// Three spacelike points whose union carries one event that none of its
/// parts, alone or together, can express.
pub fn nonseparable_minimal() -> ModelFile {
    FreeModel::new(&["x1", "x2", "x3", "o"], &[])
        .region("X1", &["x1"])
        .region("X2", &["x2"])
        .region("X3", &["x3"])
        .region("X23", &["x2", "x3"])
        .region("XR", &["x1", "x2", "x3"])
        .region("O", &["o"])
        .nonseparable("X", "XR")
        .build(|_| rational::ratio(1, 2), None)
}

/// A fair source bit fixes both outcomes up to the A-side setting. Sits on
/// the CHSH boundary.
pub fn deterministic_common_cause() -> ModelFile {
    FreeModel::new(&["s", "a", "b"], &[("s", "a"), ("s", "b")])
        .region("S", &["s"])
        .region("A", &["a"])
        .region("B", &["b"])
        .generator("L", "S")
        .generator("As", "A")
        .generator("Ao", "A")
        .generator("Bs", "B")
        .generator("Bo", "B")
        .build(
            |v| {
                let l = v.get("L");
                let a_plus = !l || idx(v.get("As")) == 1;
                uniform_if(v.get("Ao") == a_plus && v.get("Bo") == !l, 3)
            },
            Some(two_wing("joint", None)),
        )
}

/// Two spacelike wings with nothing in their past and PR-box statistics.
pub fn pr_box() -> ModelFile {
    let pr = BehaviorTable::pr_box();
    FreeModel::new(&["a", "b"], &[])
        .region("A", &["a"])
        .region("B", &["b"])
        .generator("As", "A")
        .generator("Ao", "A")
        .generator("Bs", "B")
        .generator("Bo", "B")
        .build(
            |v| {
                let out = |h: bool| if h { 1 } else { -1 };
                let p = pr.get(idx(v.get("As")), idx(v.get("Bs")), out(v.get("Ao")), out(v.get("Bo")));
                p * rational::ratio(1, 4)
            },
            Some(two_wing("joint", None)),
        )
}

/// A's outcome depends on the distant setting while the hidden bit keeps
/// marginals flat: parameter dependence without signalling.
pub fn pilot_wave_like() -> ModelFile {
    FreeModel::new(&["s", "a", "b"], &[("s", "a"), ("s", "b")])
        .region("S", &["s"])
        .region("A", &["a"])
        .region("B", &["b"])
        .generator("L", "S")
        .generator("As", "A")
        .generator("Ao", "A")
        .generator("Bs", "B")
        .generator("Bo", "B")
        .build(
            |v| {
                let l = v.get("L");
                let a = l ^ (idx(v.get("Bs")) == 1);
                uniform_if(v.get("Ao") == a && v.get("Bo") == l, 3)
            },
            Some(two_wing("joint", None)),
        )
}

/// Settings and outcomes are all read off past bits. Bell locality holds,
/// freedom of settings fails, and the correlations are a PR box.
pub fn superdeterministic() -> ModelFile {
    FreeModel::new(&["s", "a", "b"], &[("s", "a"), ("s", "b")])
        .region("S", &["s"])
        .region("A", &["a"])
        .region("B", &["b"])
        .generator("L1", "S")
        .generator("L2", "S")
        .generator("L3", "S")
        .generator("As", "A")
        .generator("Ao", "A")
        .generator("Bs", "B")
        .generator("Bo", "B")
        .build(
            |v| {
                let (l1, l2, l3) = (v.get("L1"), v.get("L2"), v.get("L3"));
                let both_one = idx(l1) == 1 && idx(l2) == 1;
                let ok = v.get("As") == l1 && v.get("Bs") == l2 && v.get("Ao") == l3 && v.get("Bo") == (l3 ^ both_one);
                uniform_if(ok, 3)
            },
            Some(two_wing("joint", None)),
        )
}

/// A timelike chain carries A's outcome to B through a separable mechanism
/// event. Howard's condition on the two-part past fails.
pub fn backyard_pingpong() -> ModelFile {
    FreeModel::new(
        &["pa", "pb", "a", "m", "b"],
        &[("pa", "a"), ("a", "m"), ("m", "b"), ("pb", "b")],
    )
    .region("PA", &["pa"])
    .region("PB", &["pb"])
    .region("P", &["pa", "pb"])
    .region("A", &["a"])
    .region("M", &["m"])
    .region("B", &["b"])
    .generator("Ca", "PA")
    .generator("Cb", "PB")
    .generator("As", "A")
    .generator("Ao", "A")
    .generator("F", "M")
    .generator("Bs", "B")
    .generator("Bo", "B")
    .build(
        |v| uniform_if(v.get("F") == v.get("Ao") && v.get("Bo") == v.get("F"), 5),
        Some(two_wing("custom:P", Some(("PA", "PB")))),
    )
}

/// Perfectly correlated outcomes with an empty past algebra on both sides.
pub fn maudlin_bare_correlation() -> ModelFile {
    FreeModel::new(&["pa", "pb", "a", "b"], &[("pa", "a"), ("pb", "b")])
        .region("PA", &["pa"])
        .region("PB", &["pb"])
        .region("A", &["a"])
        .region("B", &["b"])
        .generator("As", "A")
        .generator("Ao", "A")
        .generator("Bs", "B")
        .generator("Bo", "B")
        .build(
            |v| uniform_if(v.get("Ao") == v.get("Bo"), 3),
            Some(two_wing("joint", Some(("PA", "PB")))),
        )
}

/// A non-separable event straddling both lightcones copies A's setting to
/// B's outcome. The weakened condition passes although the model signals.
pub fn weakened_locality_signalling() -> ModelFile {
    FreeModel::new(&["a", "b", "c1", "c2"], &[("a", "c1"), ("c2", "b")])
        .region("A", &["a"])
        .region("B", &["b"])
        .region("C1", &["c1"])
        .region("C2", &["c2"])
        .region("C", &["c1", "c2"])
        .generator("As", "A")
        .generator("Ao", "A")
        .generator("Bs", "B")
        .generator("Bo", "B")
        .nonseparable("Cev", "C")
        .build(
            |v| uniform_if(v.get("Cev") == v.get("As") && v.get("Bo") == v.get("Cev"), 3),
            Some(two_wing("joint", None)),
        )
}

/// The common cause sits below the slice, so the full past screens off the
/// correlation but the slice does not.
pub fn simpsons_slice() -> ModelFile {
    FreeModel::new(
        &["r", "s1", "s2", "a", "b"],
        &[("r", "s1"), ("s1", "a"), ("r", "s2"), ("s2", "b")],
    )
    .region("R", &["r"])
    .region("S1", &["s1"])
    .region("S2", &["s2"])
    .region("A", &["a"])
    .region("B", &["b"])
    .region("RA", &["r", "a"])
    .slice("S", &["s1", "s2"], &["s1", "s2"])
    .generator("L", "R")
    .generator("N", "S1")
    .nonseparable("W", "RA")
    .generator("As", "A")
    .generator("Ao", "A")
    .generator("Bs", "B")
    .generator("Bo", "B")
    .build(
        |v| {
            let l = v.get("L");
            uniform_if(v.get("W") == l && v.get("Ao") == l && v.get("Bo") == l, 4)
        },
        Some(two_wing("joint", None)),
    )
}

pub const TSIRELSON_DEFAULT_CAP: u64 = 10_000;

/// Singlet statistics at the CHSH-optimal angles, rounded to denominators
/// at most `cap`.
pub fn tsirelson_approx(cap: u64) -> Result<BehaviorTable> {
    let (a, b) = TSIRELSON_ANGLES;
    Ok(singlet_table(a, b, cap)?.table)
}
