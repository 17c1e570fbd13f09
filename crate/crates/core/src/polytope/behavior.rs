use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::locality::{EprbScenario, NO_SIGNALLING};
use crate::model::Model;
use crate::rational::{self, Rational};
use crate::report::{CheckReport, Witness};

/// Outcome values, indexed so that `OUTCOMES[i]` is the value of outcome
/// index `i`.
pub const OUTCOMES: [i8; 2] = [1, -1];

fn outcome_index(v: i8) -> usize {
    if v == 1 {
        0
    } else {
        1
    }
}

/// `p(a_o, b_o | a_s, b_s)` for two settings and two outcomes per wing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BehaviorTable {
    // p[x][y][i][j] with outcome index i for A, j for B
    p: [[[[Rational; 2]; 2]; 2]; 2],
}

impl BehaviorTable {
    /// Builds a table from `f(a_s, b_s, a_o, b_o)` with `a_o, b_o ∈ {+1, -1}`,
    /// validating nonnegativity and normalization of each setting pair.
    pub fn from_fn(f: impl Fn(usize, usize, i8, i8) -> Rational) -> Result<BehaviorTable> {
        let p = std::array::from_fn(|x| {
            std::array::from_fn(|y| std::array::from_fn(|i| std::array::from_fn(|j| f(x, y, OUTCOMES[i], OUTCOMES[j]))))
        });
        let t = BehaviorTable { p };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<()> {
        for (x, y, a, b, v) in self.entries() {
            if v < &rational::zero() {
                return Err(Error::BadBehavior(format!(
                    "negative entry p({a:+},{b:+}|{x},{y}) = {}",
                    rational::format(v)
                )));
            }
        }
        for x in 0..2 {
            for y in 0..2 {
                let total: Rational = self.p[x][y].iter().flatten().sum();
                if total != rational::one() {
                    return Err(Error::BadBehavior(format!(
                        "setting pair ({x},{y}) sums to {}",
                        rational::format(&total)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn get(&self, x: usize, y: usize, a: i8, b: i8) -> &Rational {
        &self.p[x][y][outcome_index(a)][outcome_index(b)]
    }

    /// All 16 entries as `(a_s, b_s, a_o, b_o, p)` in canonical order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, i8, i8, &Rational)> {
        (0..16).map(move |k| {
            let (x, y, i, j) = (k >> 3 & 1, k >> 2 & 1, k >> 1 & 1, k & 1);
            (x, y, OUTCOMES[i], OUTCOMES[j], &self.p[x][y][i][j])
        })
    }

    /// `p(a_o | a_s, b_s)`, the A-wing marginal.
    pub fn marginal_a(&self, x: usize, y: usize, a: i8) -> Rational {
        OUTCOMES.iter().map(|&b| self.get(x, y, a, b)).sum()
    }

    pub fn marginal_b(&self, x: usize, y: usize, b: i8) -> Rational {
        OUTCOMES.iter().map(|&a| self.get(x, y, a, b)).sum()
    }

    /// `E(x, y) = Σ a·b·p(a, b | x, y)`.
    pub fn correlator(&self, x: usize, y: usize) -> Rational {
        let mut e = rational::zero();
        for a in OUTCOMES {
            for b in OUTCOMES {
                let v = self.get(x, y, a, b);
                if a * b > 0 {
                    e += v;
                } else {
                    e -= v;
                }
            }
        }
        e
    }

    pub fn correlators(&self) -> [[Rational; 2]; 2] {
        std::array::from_fn(|x| std::array::from_fn(|y| self.correlator(x, y)))
    }

    /// Deterministic strategy `k`: bit 0 gives A's outcome for setting 0,
    /// bit 1 for setting 1, bits 2 and 3 likewise for B; a set bit means −1.
    pub fn deterministic(k: usize) -> BehaviorTable {
        let out = |bit: usize| if k >> bit & 1 == 1 { -1 } else { 1 };
        BehaviorTable::from_fn(|x, y, a, b| {
            if a == out(x) && b == out(2 + y) {
                rational::one()
            } else {
                rational::zero()
            }
        })
        .expect("deterministic strategies are valid")
    }

    /// Every entry 1/4.
    pub fn white_noise() -> BehaviorTable {
        BehaviorTable::from_fn(|_, _, _, _| rational::ratio(1, 4)).expect("valid")
    }

    /// One of the eight PR boxes: outcomes agree iff
    /// `x·y ⊕ α·x ⊕ β·y ⊕ γ = 0` with `(α, β, γ)` the bits of `k`.
    pub fn pr_box_variant(k: usize) -> BehaviorTable {
        let (alpha, beta, gamma) = (k & 1, k >> 1 & 1, k >> 2 & 1);
        BehaviorTable::from_fn(|x, y, a, b| {
            let differ = (x & y) ^ (alpha & x) ^ (beta & y) ^ gamma == 1;
            if (a != b) == differ {
                rational::ratio(1, 2)
            } else {
                rational::zero()
            }
        })
        .expect("PR boxes are valid")
    }

    /// The standard PR box: equal outcomes except for settings (1, 1).
    pub fn pr_box() -> BehaviorTable {
        BehaviorTable::pr_box_variant(0)
    }

    /// Convex combination `Σ wᵢ tᵢ`; weights must be nonnegative and sum to 1.
    pub fn mixture(parts: &[(Rational, &BehaviorTable)]) -> Result<BehaviorTable> {
        let total: Rational = parts.iter().map(|(w, _)| w).sum();
        if total != rational::one() {
            return Err(Error::BadBehavior(format!(
                "mixture weights sum to {}",
                rational::format(&total)
            )));
        }
        BehaviorTable::from_fn(|x, y, a, b| parts.iter().map(|(w, t)| w * t.get(x, y, a, b)).sum())
    }

    /// Parses the 16-line text format `a_s b_s a_o b_o p/q`. Lines may come
    /// in any order; outcomes are written `+1`, `1` or `-1`; `#` starts a
    /// comment.
    pub fn parse(text: &str) -> Result<BehaviorTable> {
        let mut slots: [[[[Option<Rational>; 2]; 2]; 2]; 2] = Default::default();
        let mut count = 0;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: &str| Error::BadBehavior(format!("line {}: {msg}", lineno + 1));
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 5 {
                return Err(bad("expected `a_s b_s a_o b_o p/q`"));
            }
            let setting = |s: &str| match s {
                "0" => Ok(0usize),
                "1" => Ok(1),
                _ => Err(bad(&format!("setting must be 0 or 1, got `{s}`"))),
            };
            let outcome = |s: &str| match s {
                "+1" | "1" => Ok(0usize),
                "-1" => Ok(1),
                _ => Err(bad(&format!("outcome must be +1 or -1, got `{s}`"))),
            };
            let (x, y) = (setting(fields[0])?, setting(fields[1])?);
            let (i, j) = (outcome(fields[2])?, outcome(fields[3])?);
            let v = rational::parse(fields[4])?;
            let slot = &mut slots[x][y][i][j];
            if slot.is_some() {
                return Err(bad("duplicate entry"));
            }
            *slot = Some(v);
            count += 1;
        }
        if count != 16 {
            return Err(Error::BadBehavior(format!("expected 16 entries, found {count}")));
        }
        BehaviorTable::from_fn(|x, y, a, b| {
            slots[x][y][outcome_index(a)][outcome_index(b)]
                .clone()
                .expect("all 16 present")
        })
    }

    /// Canonical text form, one entry per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (x, y, a, b, v) in self.entries() {
            writeln!(out, "{x} {y} {a:+} {b:+} {}", rational::format(v)).expect("string write");
        }
        out
    }
}

/// `p(a_o, b_o | a_s, b_s)` computed exactly from a model.
#[allow(clippy::needless_range_loop)]
pub fn behavior_from_model(model: &Model, scen: &EprbScenario) -> Result<BehaviorTable> {
    let (a_s, b_s, a_o, b_o) = (scen.a_s(), scen.b_s(), scen.a_o(), scen.b_o());
    for x in 0..2 {
        for y in 0..2 {
            if model.is_null(&a_s[x].intersection(&b_s[y])) {
                return Err(Error::NullSettingPair(x, y));
            }
        }
    }
    BehaviorTable::from_fn(|x, y, a, b| {
        let s = a_s[x].intersection(&b_s[y]);
        let ab = a_o[outcome_index(a)].intersection(&b_o[outcome_index(b)]);
        model.conditional(&ab, &s).expect("setting pair is non-null")
    })
}

/// No-signalling for a bare table: each wing's marginal does not depend on
/// the distant setting.
pub fn check_no_signalling_behavior(t: &BehaviorTable) -> CheckReport {
    let mut r = CheckReport::new(NO_SIGNALLING);
    for s in 0..2 {
        for v in OUTCOMES {
            let (a0, a1) = (t.marginal_a(s, 0, v), t.marginal_a(s, 1, v));
            r.compare(a0, a1, || Witness::new(format!("marginal-a[a_s={s},a_o={v:+}]")));
            let (b0, b1) = (t.marginal_b(0, s, v), t.marginal_b(1, s, v));
            r.compare(b0, b1, || Witness::new(format!("marginal-b[b_s={s},b_o={v:+}]")));
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::report::Verdict;

    #[test]
    fn text_round_trip() {
        let t = BehaviorTable::pr_box();
        let text = t.to_text();
        assert_eq!(text.lines().count(), 16);
        assert_eq!(BehaviorTable::parse(&text).unwrap(), t);
        let mut reversed: Vec<&str> = text.lines().collect();
        reversed.reverse();
        let shuffled = format!("# comment\n{}\n", reversed.join("\n"));
        assert_eq!(BehaviorTable::parse(&shuffled).unwrap(), t);
    }

    #[test]
    fn parse_rejects_bad_tables() {
        let text = BehaviorTable::white_noise().to_text();
        let missing: String = text.lines().skip(1).map(|l| format!("{l}\n")).collect();
        assert!(BehaviorTable::parse(&missing).is_err());
        let dup = format!("{text}0 0 +1 +1 1/4\n");
        assert!(BehaviorTable::parse(&dup).is_err());
        let unnormalized = text.replacen("1/4", "1/2", 1);
        assert!(matches!(
            BehaviorTable::parse(&unnormalized),
            Err(Error::BadBehavior(_))
        ));
        assert!(BehaviorTable::parse(&text.replacen("1/4", "1/0", 1)).is_err());
    }

    #[test]
    fn pr_correlators() {
        let t = BehaviorTable::pr_box();
        assert_eq!(t.correlator(0, 0), ratio(1, 1));
        assert_eq!(t.correlator(1, 1), ratio(-1, 1));
        assert_eq!(*t.get(1, 1, 1, -1), ratio(1, 2));
        assert_eq!(check_no_signalling_behavior(&t).verdict(), Verdict::Pass);
    }

    #[test]
    fn signalling_table_detected() {
        // B copies A's setting.
        let t = BehaviorTable::from_fn(
            |x, _, _, b| {
                if (b == 1) == (x == 0) {
                    ratio(1, 2)
                } else {
                    ratio(0, 1)
                }
            },
        )
        .unwrap();
        assert_eq!(check_no_signalling_behavior(&t).verdict(), Verdict::Fail);
    }

    #[test]
    fn deterministic_tables() {
        for k in 0..16 {
            let t = BehaviorTable::deterministic(k);
            assert_eq!(t.entries().filter(|e| e.4 == &ratio(1, 1)).count(), 4);
        }
    }
}
