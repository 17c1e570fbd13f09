//! CHSH values and membership in the local polytope.

use num_traits::Signed;

use super::behavior::{check_no_signalling_behavior, BehaviorTable};
use super::lp;
use crate::rational::{self, Rational};
use crate::report::Witness;

/// A CHSH expression `s₀₀E(0,0) + s₀₁E(0,1) + s₁₀E(1,0) + s₁₁E(1,1)` with an
/// odd number of minus signs.
pub type Signs = [i8; 4];

/// The eight odd-parity sign conventions, in a fixed order.
pub fn sign_conventions() -> Vec<Signs> {
    let mut out = Vec::with_capacity(8);
    for k in 0..16u8 {
        let signs: Signs = std::array::from_fn(|i| if k >> (3 - i) & 1 == 1 { -1 } else { 1 });
        if signs.iter().filter(|&&s| s < 0).count() % 2 == 1 {
            out.push(signs);
        }
    }
    out
}

pub fn format_signs(signs: &Signs) -> String {
    let terms = ["E00", "E01", "E10", "E11"];
    let mut out = String::new();
    for (i, (s, t)) in signs.iter().zip(terms).enumerate() {
        match (i, *s > 0) {
            (0, true) => out.push_str(t),
            (0, false) => out.push_str(&format!("-{t}")),
            (_, true) => out.push_str(&format!(" + {t}")),
            (_, false) => out.push_str(&format!(" - {t}")),
        }
    }
    out
}

/// The signed CHSH expression for one convention.
pub fn chsh_expression(t: &BehaviorTable, signs: &Signs) -> Rational {
    let e = t.correlators();
    let vals = [&e[0][0], &e[0][1], &e[1][0], &e[1][1]];
    vals.iter()
        .zip(signs)
        .map(|(v, &s)| if s > 0 { (*v).clone() } else { -(*v).clone() })
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChshValue {
    pub value: Rational,
    /// Maximizing convention; the first in [`sign_conventions`] order on ties.
    pub signs: Signs,
}

/// `max |s·E|` over the odd-parity sign conventions.
pub fn chsh_value(t: &BehaviorTable) -> ChshValue {
    let mut best: Option<ChshValue> = None;
    for signs in sign_conventions() {
        let v = chsh_expression(t, &signs);
        let (value, signs) = if v.is_negative() {
            (-v, signs.map(|s| -s))
        } else {
            (v, signs)
        };
        if best.as_ref().is_none_or(|b| value > b.value) {
            best = Some(ChshValue { value, signs });
        }
    }
    best.expect("eight conventions")
}

/// Weights on the 16 deterministic strategies (indexed as in
/// [`BehaviorTable::deterministic`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LhvDecomposition {
    pub weights: Vec<Rational>,
}

impl LhvDecomposition {
    pub fn reconstruct(&self) -> BehaviorTable {
        let verts: Vec<BehaviorTable> = (0..16).map(BehaviorTable::deterministic).collect();
        let parts: Vec<(Rational, &BehaviorTable)> = self.weights.iter().cloned().zip(verts.iter()).collect();
        BehaviorTable::mixture(&parts).expect("weights sum to one")
    }

    /// Nonzero weights as `(strategy, weight)`.
    pub fn support(&self) -> Vec<(usize, &Rational)> {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, w)| w.is_positive())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonLocalWitness {
    /// A wing marginal depends on the distant setting.
    Signalling(Witness),
    /// A CHSH inequality `s·E ≤ 2` is violated.
    ChshFacet { signs: Signs, value: Rational },
    /// Infeasible, yet no facet found. Cannot happen for a valid table.
    Unclassified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LhvVerdict {
    Local(LhvDecomposition),
    NotLocal(NonLocalWitness),
}

impl LhvVerdict {
    pub fn is_local(&self) -> bool {
        matches!(self, LhvVerdict::Local(_))
    }
}

/// Decides whether a table is a mixture of deterministic strategies by
/// exact linear feasibility. On failure the witness is a signalling
/// violation or a violated CHSH facet.
pub fn lhv_membership(t: &BehaviorTable) -> LhvVerdict {
    let verts: Vec<BehaviorTable> = (0..16).map(BehaviorTable::deterministic).collect();
    let mut a = Vec::with_capacity(16);
    let mut b = Vec::with_capacity(16);
    for (x, y, oa, ob, p) in t.entries() {
        a.push(verts.iter().map(|v| v.get(x, y, oa, ob).clone()).collect());
        b.push(p.clone());
    }
    if let Some(weights) = lp::feasible_point(&a, &b) {
        return LhvVerdict::Local(LhvDecomposition { weights });
    }
    let ns = check_no_signalling_behavior(t);
    if let Some(w) = ns.witnesses.into_iter().next() {
        return LhvVerdict::NotLocal(NonLocalWitness::Signalling(w));
    }
    let c = chsh_value(t);
    if c.value > rational::int(2) {
        return LhvVerdict::NotLocal(NonLocalWitness::ChshFacet {
            signs: c.signs,
            value: c.value,
        });
    }
    LhvVerdict::NotLocal(NonLocalWitness::Unclassified)
}

/// Membership by the facet description: positivity, no-signalling and all
/// eight CHSH inequalities.
pub fn chsh_facet_membership(t: &BehaviorTable) -> bool {
    let positive = t.entries().all(|e| !e.4.is_negative());
    positive && check_no_signalling_behavior(t).passed() && chsh_value(t).value <= rational::int(2)
}
