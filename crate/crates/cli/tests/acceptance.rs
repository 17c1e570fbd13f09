//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};

use bellcheck::gallery::{self, inject_nonseparable, random_model, random_ns_tables, Artifact, SizeCaps};
use bellcheck::locality::{
    check_bell_locality, check_factorisability, check_freedom_of_settings, check_howard_separability_of_states,
    check_jarrett_decomposition, check_no_signalling, check_nouvelle_locality, check_outcome_independence,
    check_parameter_independence, check_srla, howard_at, howard_states, outcome_independence_at,
    verify_derivation_chain, EprbScenario,
};
use bellcheck::model::axioms::{check_localised_axioms, check_separability};
use bellcheck::polytope::{
    behavior_from_model, chsh_facet_membership, chsh_value, lhv_membership, BehaviorTable, LhvVerdict,
};
use bellcheck::rational::{self, int};
use bellcheck::report::WITNESS_CAP;
use bellcheck::suite::{run_suite, Suite};
use bellcheck::{Error, LoadedModel, Model, PastSelector};

type Outcome = Result<String, String>;

const RANDOM_MODELS: usize = 1000;
const RANDOM_TABLES: usize = 1000;
const CONJECTURE_ARGS: [&str; 8] = [
    "--seed",
    "1",
    "--trials",
    "1000",
    "--max-histories",
    "64",
    "--max-generators",
    "7",
];

fn caps() -> SizeCaps {
    SizeCaps {
        max_points: 6,
        max_histories: 64,
        max_generators: 7,
    }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e2s(e: Error) -> String {
    e.to_string()
}

fn gallery_model(name: &str) -> LoadedModel {
    match gallery::lookup(name).expect("known entry").build() {
        Artifact::Model(f) => f.build().expect("gallery models load"),
        Artifact::Behavior(_) => panic!("{name} is a behavior table"),
    }
}

fn scenario(l: &LoadedModel) -> &EprbScenario {
    l.scenario.as_ref().expect("scenario declared")
}

fn settings_non_null(model: &Model, scen: &EprbScenario) -> bool {
    scen.a_s()
        .iter()
        .all(|a| scen.b_s().iter().all(|b| !model.is_null(&a.intersection(b))))
}

/// Random models from consecutive seeds, skipping those that fail the axioms.
fn axiom_models(from: u64) -> impl Iterator<Item = (u64, LoadedModel)> {
    (from..).map(|seed| {
        let l = random_model(seed, &caps())
            .and_then(|f| f.build())
            .expect("random models load");
        (seed, l)
    })
}

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_bellcheck")
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

fn run_bin(args: &[&str]) -> (Option<i32>, Vec<u8>) {
    let out = Command::new(bin()).args(args).output().expect("binary runs");
    (out.status.code(), out.stdout)
}

fn criterion_1() -> Outcome {
    let l = gallery_model("nonseparable_minimal");
    let m = &l.model;
    ensure(
        check_localised_axioms(m).passed(),
        "axioms fail on nonseparable_minimal",
    )?;
    let parts = [
        m.region("X1").map_err(e2s)?.clone(),
        m.region("X23").map_err(e2s)?.clone(),
    ];
    let sep = check_separability(m, &parts).map_err(e2s)?;
    ensure(sep.failed(), "separability holds on nonseparable_minimal")?;
    let w = &sep.witnesses[0];
    ensure(
        w.events.first().map(|e| e.0.as_str()) == Some("X"),
        "witness is not the event X",
    )?;
    ensure(w.regions == parts, "witness does not name X1, X23")?;

    let mut done = 0;
    for (seed, l) in axiom_models(0) {
        if done == 100 {
            break;
        }
        if check_localised_axioms(&l.model).failed() {
            continue;
        }
        let (m2, p1, p2) = inject_nonseparable(&l.model).map_err(e2s)?;
        ensure(
            check_localised_axioms(&m2).passed(),
            format!("seed {seed}: injection broke the axioms"),
        )?;
        let sep = check_separability(&m2, &[p1, p2]).map_err(e2s)?;
        ensure(sep.failed(), format!("seed {seed}: separability survived injection"))?;
        done += 1;
    }
    Ok(format!(
        "nonseparable_minimal witness X on X1|X23; {done} injected random models"
    ))
}

/// Random models satisfying Bell locality for the declared past, freedom of
/// settings, and with every setting pair of positive probability.
fn bell_free_models() -> Vec<(u64, LoadedModel)> {
    let mut out = Vec::new();
    for (seed, l) in axiom_models(0) {
        if out.len() == RANDOM_MODELS {
            break;
        }
        let m = &l.model;
        let s = scenario(&l);
        if check_localised_axioms(m).failed() || !settings_non_null(m, s) {
            continue;
        }
        let bell = check_bell_locality(m, &s.wing_a, &s.wing_b, &s.past).expect("bell runs");
        let free = check_freedom_of_settings(m, s).expect("freedom runs");
        if bell.passed() && free.passed() {
            out.push((seed, l));
        }
    }
    out
}

fn criterion_2(models: &[(u64, LoadedModel)]) -> Outcome {
    for (seed, l) in models {
        let (m, s) = (&l.model, scenario(l));
        ensure(
            verify_derivation_chain(m, s).map_err(e2s)?.passed(),
            format!("seed {seed}: derivation chain fails"),
        )?;
        ensure(
            check_factorisability(m, s).map_err(e2s)?.passed(),
            format!("seed {seed}: factorisability fails"),
        )?;
        let v = chsh_value(&behavior_from_model(m, s).map_err(e2s)?).value;
        ensure(v <= int(2), format!("seed {seed}: CHSH {}", rational::format(&v)))?;
    }
    Ok(format!(
        "{} Bell-local free models: chain, factorisability, CHSH <= 2",
        models.len()
    ))
}

fn criterion_3(models: &[(u64, LoadedModel)]) -> Outcome {
    for (seed, l) in models {
        let r = check_no_signalling(&l.model, scenario(l)).map_err(e2s)?;
        ensure(r.passed(), format!("seed {seed}: signalling"))?;
    }
    Ok(format!("{} Bell-local free models are non-signalling", models.len()))
}

fn criterion_4() -> Outcome {
    for k in 0..16 {
        let v = chsh_value(&BehaviorTable::deterministic(k)).value;
        ensure(v == int(2), format!("deterministic {k}: CHSH {}", rational::format(&v)))?;
    }
    let pr = chsh_value(&BehaviorTable::pr_box()).value;
    ensure(pr == int(4), format!("PR box CHSH {}", rational::format(&pr)))?;
    let t = gallery::tsirelson_approx(10_000).map_err(e2s)?;
    let v = rational::to_f64(&chsh_value(&t).value);
    ensure((v - 2.0 * 2f64.sqrt()).abs() <= 1e-3, format!("singlet CHSH {v}"))?;
    ensure(!lhv_membership(&t).is_local(), "singlet table judged local")?;
    Ok(format!("deterministic 2, PR 4, singlet {v:.6} and not local"))
}

fn criterion_5() -> Outcome {
    let mut tables = random_ns_tables(5, RANDOM_TABLES);
    tables.push(gallery::tsirelson_approx(10_000).map_err(e2s)?);
    for e in gallery::entries() {
        match e.build() {
            Artifact::Behavior(t) => tables.push(t),
            Artifact::Model(f) => {
                let l = f.build().map_err(e2s)?;
                if let Some(s) = &l.scenario {
                    tables.push(behavior_from_model(&l.model, s).map_err(e2s)?);
                }
            }
        }
    }
    let (mut local, mut nonlocal) = (0, 0);
    for (i, t) in tables.iter().enumerate() {
        let verdict = lhv_membership(t);
        ensure(
            verdict.is_local() == chsh_facet_membership(t),
            format!("table {i}: LP and facets disagree"),
        )?;
        match verdict {
            LhvVerdict::Local(d) => {
                ensure(
                    &d.reconstruct() == t,
                    format!("table {i}: decomposition does not reconstruct"),
                )?;
                local += 1;
            }
            LhvVerdict::NotLocal(_) => nonlocal += 1,
        }
    }
    ensure(local > 0 && nonlocal > 0, "sample lacks local or nonlocal tables")?;
    Ok(format!(
        "{} tables agree ({local} local, {nonlocal} not local)",
        tables.len()
    ))
}

fn criterion_6() -> Outcome {
    let mut applicable = 0;
    for (seed, l) in axiom_models(0).take(20 * RANDOM_MODELS) {
        if applicable == RANDOM_MODELS {
            break;
        }
        match check_jarrett_decomposition(&l.model, scenario(&l)) {
            Ok(r) => {
                ensure(r.violations == 0, format!("seed {seed}: Jarrett biconditional fails"))?;
                applicable += 1;
            }
            Err(Error::Precondition(_)) => {}
            Err(e) => return Err(format!("seed {seed}: {e}")),
        }
    }
    ensure(
        applicable == RANDOM_MODELS,
        format!("only {applicable} applicable models"),
    )?;
    let l = gallery_model("pilot_wave_like");
    let (m, s) = (&l.model, scenario(&l));
    ensure(
        check_parameter_independence(m, s).map_err(e2s)?.failed(),
        "pilot_wave_like satisfies PI",
    )?;
    ensure(
        check_outcome_independence(m, s).map_err(e2s)?.passed(),
        "pilot_wave_like violates OI",
    )?;
    ensure(
        check_no_signalling(m, s).map_err(e2s)?.passed(),
        "pilot_wave_like signals",
    )?;
    Ok(format!(
        "{applicable} applicable models, no violations; pilot_wave_like fails PI only"
    ))
}

fn criterion_7() -> Outcome {
    let by = gallery_model("backyard_pingpong");
    let (pa, pb) = scenario(&by).past_partition.clone().expect("partition");
    ensure(
        check_separability(&by.model, &[pa, pb]).map_err(e2s)?.passed(),
        "backyard is not separable",
    )?;
    let h = check_howard_separability_of_states(&by.model, scenario(&by)).map_err(e2s)?;
    ensure(
        h.witnesses.iter().any(|w| w.clause == "state-product"),
        "backyard: factorization through states holds",
    )?;

    let mb = gallery_model("maudlin_bare_correlation");
    let ms = scenario(&mb);
    let h = check_howard_separability_of_states(&mb.model, ms).map_err(e2s)?;
    ensure(
        h.witnesses.iter().any(|w| w.clause == "state-product"),
        "maudlin: factorization through states holds",
    )?;
    let past = ms.past_region(&mb.model).map_err(e2s)?;
    ensure(
        mb.model.region_algebra(&past).map_err(e2s)?.is_trivial(),
        "maudlin: past algebra is not trivial",
    )?;

    let mut states = 0;
    let mut well_defined = 0;
    let gallery_models = ["backyard_pingpong", "maudlin_bare_correlation"].map(gallery_model);
    let randoms = axiom_models(0)
        .take(RANDOM_MODELS)
        .filter(|(_, l)| scenario(l).past_partition.is_some())
        .map(|(_, l)| l);
    for l in gallery_models.into_iter().chain(randoms) {
        let (m, s) = (&l.model, scenario(&l));
        for st in howard_states(m, s).map_err(e2s)? {
            states += 1;
            let r = howard_at(m, s, &st);
            let wd = r.violations <= WITNESS_CAP && !r.witnesses.iter().any(|w| w.clause != "state-product");
            if !wd {
                continue;
            }
            well_defined += 1;
            let product_fails = r.violations > 0;
            let oi = outcome_independence_at(m, s, &st.lambda).failed();
            ensure(
                product_fails == oi,
                format!("state {}: state product fails {product_fails}, OI fails {oi}", m.describe_event(&st.lambda)),
            )?;
        }
    }
    Ok(format!(
        "backyard and maudlin fail; {well_defined}/{states} joint states with well-defined wing states agree with OI"
    ))
}

fn criterion_8() -> Outcome {
    let l = gallery_model("weakened_locality_signalling");
    let outcomes = run_suite(&l, Suite::All, None).map_err(e2s)?;
    let verdict = |c: &str| {
        outcomes
            .iter()
            .find(|o| o.condition() == c)
            .map(|o| o.verdict_str())
            .unwrap_or("missing")
    };
    ensure(verdict("bell-locality-weakened") == "pass", "weakened locality fails")?;
    ensure(verdict("no-signalling") == "fail", "no signalling detected")?;
    ensure(verdict("bell-locality") == "fail", "strict Bell locality holds")?;
    Ok("weakened passes, no-signalling and strict Bell locality fail".into())
}

fn criterion_9() -> Outcome {
    let l = gallery_model("simpsons_slice");
    let (m, s) = (&l.model, scenario(&l));
    let slice = m.slice("S").map_err(e2s)?;
    ensure(
        check_bell_locality(m, &s.wing_a, &s.wing_b, &PastSelector::JointPast)
            .map_err(e2s)?
            .passed(),
        "Bell fails",
    )?;
    ensure(
        check_nouvelle_locality(m, &s.wing_a, &s.wing_b, slice)
            .map_err(e2s)?
            .failed(),
        "slice locality holds",
    )?;
    let r = m.region("R").map_err(e2s)?;
    let a = m.region("A").map_err(e2s)?;
    ensure(check_srla(m, r, a, slice).map_err(e2s)?.failed(), "SRLA holds on R, A")?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = dir.path().to_str().expect("utf-8 path");
    let mut args = vec!["conjecture"];
    args.extend(CONJECTURE_ARGS);
    args.extend(["--format", "machine", "--out", out]);
    let (code, stdout) = run_bin(&args);
    ensure(code == Some(3), format!("conjecture exit code {code:?}"))?;
    let golden = fs::read(golden_dir().join("conjecture.json")).map_err(|e| e.to_string())?;
    ensure(stdout == golden, "conjecture report differs from golden")?;
    let doc: serde_json::Value = serde_json::from_slice(&stdout).map_err(|e| e.to_string())?;
    let found = doc["counterexamples"].as_array().map_or(0, Vec::len);
    ensure(found > 0, "no counterexamples")?;
    Ok(format!(
        "simpsons_slice separates the pasts; frozen search finds {found} counterexamples"
    ))
}

fn criterion_10() -> Outcome {
    for seed in [0, 1, 7, 1234] {
        let a = random_model(seed, &caps()).map_err(e2s)?.to_json_pretty();
        let b = random_model(seed, &caps()).map_err(e2s)?.to_json_pretty();
        ensure(a == b, format!("random model {seed} differs between calls"))?;
    }
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut compared = 0;
    for e in gallery::entries() {
        let path = dir.path().join(e.name);
        let p = path.to_str().expect("utf-8 path");
        let (code, _) = run_bin(&["gallery", "emit", e.name, p]);
        ensure(code == Some(0), format!("{}: emit exit {code:?}", e.name))?;
        let cmd: &[&str] = match e.build() {
            Artifact::Model(_) => &["check", p, "--format", "machine"],
            Artifact::Behavior(_) => &["chsh", p, "--format", "machine"],
        };
        let (_, first) = run_bin(cmd);
        let (_, second) = run_bin(cmd);
        ensure(first == second, format!("{}: report differs between runs", e.name))?;
        let golden = fs::read(golden_dir().join(format!("{}.json", e.name))).map_err(|e| e.to_string())?;
        ensure(first == golden, format!("{}: report differs from golden", e.name))?;
        let doc: serde_json::Value = serde_json::from_slice(&first).map_err(|e| e.to_string())?;
        if let Some(checks) = doc["checks"].as_array() {
            for (cond, want) in e.expected {
                let got = checks
                    .iter()
                    .find(|c| c["condition"] == *cond)
                    .and_then(|c| c["verdict"].as_str());
                ensure(
                    got == Some(want),
                    format!("{} {cond}: expected {want}, got {got:?}", e.name),
                )?;
            }
        }
        compared += 1;
    }
    Ok(format!(
        "random models stable; {compared} gallery reports match golden files and expected verdicts"
    ))
}

fn main() -> ExitCode {
    let models = bell_free_models();
    let results: Vec<(usize, &str, Outcome)> = vec![
        (1, "localised events without separability", criterion_1()),
        (
            2,
            "Bell locality and freedom imply factorisability",
            criterion_2(&models),
        ),
        (3, "Bell locality and freedom imply no-signalling", criterion_3(&models)),
        (4, "CHSH landmarks", criterion_4()),
        (5, "local polytope membership", criterion_5()),
        (6, "Jarrett decomposition", criterion_6()),
        (7, "Howard separability of states", criterion_7()),
        (8, "weakened locality admits signalling", criterion_8()),
        (9, "slice-based locality and the conjecture search", criterion_9()),
        (10, "determinism and golden reports", criterion_10()),
    ];
    let mut failed = false;
    for (n, name, r) in &results {
        match r {
            Ok(detail) => println!("PASS criterion {n}: {name}: {detail}"),
            Err(why) => {
                failed = true;
                println!("FAIL criterion {n}: {name}: {why}");
            }
        }
    }
    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
