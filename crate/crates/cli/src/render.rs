//! Human-readable output.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use bellcheck::io::ChshDoc;
use bellcheck::locality::ConjectureReport;
use bellcheck::rational;
use bellcheck::suite::Outcome;
use bellcheck::{Event, Model, Witness};

/// An event as a conjunction of generator literals when it is one, else its
/// history list (abbreviated past four histories).
fn describe(model: &Model, e: &Event) -> String {
    let mut cube = model.omega();
    let mut lits = Vec::new();
    for g in model.generators() {
        if e.is_subset(&g.event) {
            cube = cube.intersection(&g.event);
            lits.push(g.name.clone());
        } else if e.is_disjoint(&g.event) {
            cube = cube.intersection(&g.event.complement());
            lits.push(format!("!{}", g.name));
        }
    }
    if &cube == e && !lits.is_empty() {
        return lits.join("&");
    }
    let names: Vec<&str> = e.members().map(|h| model.histories()[h].as_str()).collect();
    if names.len() <= 4 {
        format!("{{{}}}", names.join(","))
    } else {
        format!("{{{},... {} histories}}", names[..3].join(","), names.len())
    }
}

fn witness_line(model: &Model, w: &Witness) -> String {
    let mut parts = vec![w.clause.clone()];
    if let Some(atom) = &w.atom {
        parts.push(format!("given {}", describe(model, atom)));
    }
    for (label, e) in &w.events {
        parts.push(format!("{label} = {}", describe(model, e)));
    }
    for r in &w.regions {
        parts.push(format!("region {}", model.site().describe(r)));
    }
    if let (Some(l), Some(r)) = (&w.lhs, &w.rhs) {
        parts.push(format!("{} != {}", rational::format(l), rational::format(r)));
    }
    parts.join("; ")
}

pub fn check_text(path: &Path, model: &Model, digest: &str, outcomes: &[Outcome]) -> String {
    let mut out = String::new();
    let w = &mut out;
    writeln!(w, "model  {}", path.display()).unwrap();
    writeln!(w, "digest {digest}").unwrap();
    let added: Vec<String> = model
        .universe()
        .closure_added()
        .map(|r| model.site().describe(r))
        .collect();
    if !added.is_empty() {
        writeln!(w, "closure added {} regions: {}", added.len(), added.join(" ")).unwrap();
    }
    let mut failed = false;
    for o in outcomes {
        match o {
            Outcome::Ran(r) => {
                let verdict = r.verdict().as_str().to_uppercase();
                write!(w, "{verdict:<8} {:<30} checked {}", r.condition, r.checked).unwrap();
                if r.vacuous_atoms > 0 {
                    write!(w, ", null atoms {}", r.vacuous_atoms).unwrap();
                }
                if r.violations > 0 {
                    write!(w, ", violations {}", r.violations).unwrap();
                    failed = true;
                }
                writeln!(w).unwrap();
                if r.checked == 0 && r.violations == 0 {
                    writeln!(w, "  warning: vacuous, nothing to check (counted as pass)").unwrap();
                }
                for n in &r.notes {
                    writeln!(w, "  note: {n}").unwrap();
                }
                for wit in &r.witnesses {
                    writeln!(w, "  witness: {}", witness_line(model, wit)).unwrap();
                }
                if r.violations > r.witnesses.len() {
                    writeln!(w, "  ... {} more", r.violations - r.witnesses.len()).unwrap();
                }
            }
            Outcome::Skipped { condition, reason } => {
                writeln!(w, "{:<8} {condition:<30} {reason}", "SKIPPED").unwrap();
            }
        }
    }
    writeln!(w, "summary: {}", if failed { "fail" } else { "pass" }).unwrap();
    out
}

pub fn chsh_text(doc: &ChshDoc) -> String {
    let mut out = String::new();
    let w = &mut out;
    let verdict = if doc.lhv == "member" { "member" } else { "NotLocal" };
    writeln!(w, "CHSH {} ({}), {verdict}", doc.value, doc.decimal).unwrap();
    writeln!(w, "maximizing expression: {}", doc.signs).unwrap();
    if !doc.decomposition.is_empty() {
        let terms: Vec<String> = doc
            .decomposition
            .iter()
            .map(|s| format!("d{}: {}", s.strategy, s.weight))
            .collect();
        writeln!(w, "decomposition: {}", terms.join(", ")).unwrap();
    }
    if let Some(f) = &doc.violated_facet {
        writeln!(w, "violated facet: {f}").unwrap();
    }
    if let Some(s) = &doc.signalling {
        writeln!(
            w,
            "signalling: {} ({} != {})",
            s.clause,
            s.lhs.as_deref().unwrap_or("?"),
            s.rhs.as_deref().unwrap_or("?")
        )
        .unwrap();
    }
    out
}

pub fn conjecture_text(r: &ConjectureReport, written: &[PathBuf]) -> String {
    let mut out = String::new();
    let w = &mut out;
    writeln!(
        w,
        "seed {}, trials {}, caps: points {}, histories {}, generators {}",
        r.seed, r.trials, r.caps.max_points, r.caps.max_histories, r.caps.max_generators
    )
    .unwrap();
    writeln!(
        w,
        "rejected by axioms {}, rejected by srla {}, no blocking slice {}, survivors {}",
        r.rejected_axioms, r.rejected_srla, r.no_blocking_slice, r.survivors
    )
    .unwrap();
    writeln!(w, "counterexamples: {}", r.counterexamples.len()).unwrap();
    for c in &r.counterexamples {
        let slices: Vec<String> = c.nouvelle.iter().map(|(s, v)| format!("{s}={v}")).collect();
        writeln!(
            w,
            "  trial {} (seed {}): bell {}, nouvelle {}",
            c.trial,
            c.seed,
            c.bell,
            slices.join(" ")
        )
        .unwrap();
    }
    for p in written {
        writeln!(w, "wrote {}", p.display()).unwrap();
    }
    out
}
