//! Exact linear feasibility by phase-one simplex.
//!
//! Rational pivoting with Bland's rule, so there is no tolerance anywhere
//! and cycling cannot occur.

use num_traits::{Signed, Zero};

use crate::rational::Rational;

/// Finds `x ≥ 0` with `A x = b`, or `None` if no such `x` exists.
pub fn feasible_point(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let m = a.len();
    assert_eq!(m, b.len(), "one right-hand side per row");
    let n = a.first().map_or(0, Vec::len);
    let width = n + m + 1;
    let rhs = n + m;

    // Rows with b ≥ 0, one artificial per row, then the phase-one objective
    // row holding the reduced costs of minimizing the artificial total.
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m + 1);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        assert_eq!(row.len(), n, "ragged constraint matrix");
        let flip = bi.is_negative();
        let mut r = vec![Rational::zero(); width];
        for (j, v) in row.iter().enumerate() {
            r[j] = if flip { -v } else { v.clone() };
        }
        r[n + i] = Rational::from_integer(1.into());
        r[rhs] = if flip { -bi } else { bi.clone() };
        t.push(r);
    }
    let mut obj = vec![Rational::zero(); width];
    for r in &t {
        for j in 0..n {
            obj[j] += &r[j];
        }
        obj[rhs] += &r[rhs];
    }
    t.push(obj);
    let mut basis: Vec<usize> = (n..n + m).collect();

    while let Some(enter) = (0..n).find(|&j| t[m][j].is_positive()) {
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][rhs] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (row, _) = leave.expect("phase one objective is bounded below");
        pivot(&mut t, row, enter);
        basis[row] = enter;
    }

    if !t[m][rhs].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &var) in basis.iter().enumerate() {
        if var < n {
            x[var] = t[i][rhs].clone();
        }
    }
    Some(x)
}

fn pivot(t: &mut [Vec<Rational>], row: usize, col: usize) {
    let p = t[row][col].clone();
    for v in t[row].iter_mut() {
        *v /= &p;
    }
    let pivot_row = t[row].clone();
    for (i, r) in t.iter_mut().enumerate() {
        if i == row || r[col].is_zero() {
            continue;
        }
        let factor = r[col].clone();
        for (v, pv) in r.iter_mut().zip(&pivot_row) {
            if !pv.is_zero() {
                *v -= &factor * pv;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn rows(data: &[&[i64]]) -> Vec<Vec<Rational>> {
        data.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn finds_feasible_point() {
        // x + y = 1, x - y = 1/2
        let a = rows(&[&[1, 1], &[1, -1]]);
        let b = vec![int(1), ratio(1, 2)];
        let x = feasible_point(&a, &b).unwrap();
        assert_eq!(x, vec![ratio(3, 4), ratio(1, 4)]);
    }

    #[test]
    fn detects_infeasibility() {
        // x + y = 1, x + y = 2
        let a = rows(&[&[1, 1], &[1, 1]]);
        assert!(feasible_point(&a, &[int(1), int(2)]).is_none());
        // x = -1 with x ≥ 0
        assert!(feasible_point(&rows(&[&[1]]), &[int(-1)]).is_none());
    }

    #[test]
    fn negative_rhs_rows_are_flipped() {
        let a = rows(&[&[-1, 0], &[0, 1]]);
        let x = feasible_point(&a, &[int(-2), int(3)]).unwrap();
        assert_eq!(x, vec![int(2), int(3)]);
    }

    #[test]
    fn redundant_rows() {
        let a = rows(&[&[1, 1, 1], &[1, 1, 1], &[1, 0, 0]]);
        let x = feasible_point(&a, &[int(1), int(1), ratio(1, 3)]).unwrap();
        assert_eq!(x.iter().sum::<Rational>(), int(1));
        assert_eq!(x[0], ratio(1, 3));
    }
}
