use super::behavior::BehaviorTable;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// A rational approximation of the singlet correlations.
#[derive(Clone, Debug, PartialEq)]
pub struct SingletTable {
    pub table: BehaviorTable,
    /// Largest `|rounded − exact|` over the 16 entries.
    pub max_deviation: f64,
}

/// Singlet correlations `E(θ_a, θ_b) = −cos(θ_a − θ_b)` with uniform
/// marginals, so `p(a, b) = (1 + a·b·E)/4`.
///
/// Equal-outcome entries are rounded to the nearest rational with
/// denominator at most `cap`; unequal-outcome entries are set to `1/2` minus
/// that value. Each setting pair then sums to one and both marginals stay
/// exactly uniform.
pub fn singlet_table(angles_a: [f64; 2], angles_b: [f64; 2], cap: u64) -> Result<SingletTable> {
    if cap < 2 {
        return Err(Error::InvalidArgument(format!(
            "denominator cap must be at least 2, got {cap}"
        )));
    }
    let mut equal = [
        [rational::zero(), rational::zero()],
        [rational::zero(), rational::zero()],
    ];
    let mut max_deviation: f64 = 0.0;
    for x in 0..2 {
        for y in 0..2 {
            let exact = (1.0 - (angles_a[x] - angles_b[y]).cos()) / 4.0;
            let r = rational::nearest_with_denominator(exact, cap);
            let half_minus: Rational = rational::ratio(1, 2) - &r;
            if r < rational::zero() || half_minus < rational::zero() {
                return Err(Error::InvalidArgument(format!(
                    "cap {cap} too coarse: rounding produced a negative entry"
                )));
            }
            max_deviation = max_deviation.max((rational::to_f64(&r) - exact).abs());
            equal[x][y] = r;
        }
    }
    let table = BehaviorTable::from_fn(|x, y, a, b| {
        if a == b {
            equal[x][y].clone()
        } else {
            rational::ratio(1, 2) - &equal[x][y]
        }
    })?;
    Ok(SingletTable { table, max_deviation })
}

/// Angles reaching the quantum maximum of CHSH: `a = 0, a′ = π/2,
/// b = π/4, b′ = −π/4`.
pub const TSIRELSON_ANGLES: ([f64; 2], [f64; 2]) = (
    [0.0, std::f64::consts::FRAC_PI_2],
    [std::f64::consts::FRAC_PI_4, -std::f64::consts::FRAC_PI_4],
);
