use std::fmt;

use crate::causal::Region;
use crate::model::Event;
use crate::rational::Rational;

/// Witnesses kept per report; further violations are only counted.
pub const WITNESS_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    Pass,
    Fail,
    /// Every conditioning event was null, so nothing was actually checked.
    Vacuous,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Vacuous => "vacuous",
        }
    }

    pub fn parse(s: &str) -> Option<Verdict> {
        match s {
            "pass" => Some(Verdict::Pass),
            "fail" => Some(Verdict::Fail),
            "vacuous" => Some(Verdict::Vacuous),
            _ => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One violated instance of a condition.
///
/// Probabilistic conditions fill `lhs`/`rhs` with the two sides of the
/// failed equality. Structural conditions (the algebra axioms, separability)
/// leave them empty and name the offending event instead.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Which equation or sub-clause failed.
    pub clause: String,
    /// Conditioning atom λ, if any.
    pub atom: Option<Event>,
    /// Value assignment, e.g. `("a_s", A_s)`.
    pub events: Vec<(String, Event)>,
    pub regions: Vec<Region>,
    pub lhs: Option<Rational>,
    pub rhs: Option<Rational>,
}

impl Witness {
    pub fn new(clause: impl Into<String>) -> Witness {
        Witness {
            clause: clause.into(),
            atom: None,
            events: Vec::new(),
            regions: Vec::new(),
            lhs: None,
            rhs: None,
        }
    }

    pub fn atom(mut self, atom: &Event) -> Witness {
        self.atom = Some(atom.clone());
        self
    }

    pub fn event(mut self, label: impl Into<String>, e: &Event) -> Witness {
        self.events.push((label.into(), e.clone()));
        self
    }

    pub fn region(mut self, r: &Region) -> Witness {
        self.regions.push(r.clone());
        self
    }

    pub fn sides(mut self, lhs: Rational, rhs: Rational) -> Witness {
        self.lhs = Some(lhs);
        self.rhs = Some(rhs);
        self
    }
}

/// Outcome of checking one named condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub condition: String,
    pub witnesses: Vec<Witness>,
    /// Total violations found, including those beyond [`WITNESS_CAP`].
    pub violations: usize,
    /// Conditioning atoms skipped because they have probability zero.
    pub vacuous_atoms: usize,
    /// Instances actually evaluated.
    pub checked: usize,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(condition: impl Into<String>) -> CheckReport {
        CheckReport {
            condition: condition.into(),
            witnesses: Vec::new(),
            violations: 0,
            vacuous_atoms: 0,
            checked: 0,
            notes: Vec::new(),
        }
    }

    pub fn verdict(&self) -> Verdict {
        if self.violations > 0 {
            Verdict::Fail
        } else if self.checked == 0 {
            Verdict::Vacuous
        } else {
            Verdict::Pass
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict() != Verdict::Fail
    }

    pub fn failed(&self) -> bool {
        self.verdict() == Verdict::Fail
    }

    pub fn violate(&mut self, w: Witness) {
        self.violations += 1;
        if self.witnesses.len() < WITNESS_CAP {
            self.witnesses.push(w);
        }
    }

    /// Records one evaluated instance, violating iff `lhs != rhs`.
    pub fn compare(&mut self, lhs: Rational, rhs: Rational, witness: impl FnOnce() -> Witness) {
        self.checked += 1;
        if lhs != rhs {
            self.violate(witness().sides(lhs, rhs));
        }
    }

    pub fn note(&mut self, text: impl Into<String>) {
        let text = text.into();
        if !self.notes.contains(&text) {
            self.notes.push(text);
        }
    }

    /// Folds another partial report for the same condition into this one.
    pub fn absorb(&mut self, other: CheckReport) {
        self.checked += other.checked;
        self.vacuous_atoms += other.vacuous_atoms;
        self.violations += other.violations;
        for w in other.witnesses {
            if self.witnesses.len() < WITNESS_CAP {
                self.witnesses.push(w);
            }
        }
        for n in other.notes {
            self.note(n);
        }
    }

    pub fn has_clause(&self, clause: &str) -> bool {
        self.witnesses.iter().any(|w| w.clause == clause)
    }

    /// Merges ordered partial reports into one.
    pub fn merged(condition: impl Into<String>, parts: impl IntoIterator<Item = CheckReport>) -> CheckReport {
        let mut out = CheckReport::new(condition);
        for p in parts {
            out.absorb(p);
        }
        out
    }
}
