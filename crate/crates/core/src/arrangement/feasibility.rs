//! Exact feasibility of small systems of linear inequalities in two
//! variables, strict and non-strict mixed, via Fourier-Motzkin elimination
//! over arbitrary-precision integers.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::exact::Rat;

/// Constraint u*a + v*b (<= | <) rhs.
#[derive(Debug, Clone)]
pub(crate) struct Row2 {
    pub u: BigInt,
    pub v: BigInt,
    pub rhs: BigInt,
    pub strict: bool,
}

impl Row2 {
    pub fn new(u: i64, v: i64, rhs: i64, strict: bool) -> Self {
        Row2 {
            u: BigInt::from(u),
            v: BigInt::from(v),
            rhs: BigInt::from(rhs),
            strict,
        }
    }
}

/// Constraint u*a (<= | <) rhs.
#[derive(Debug, Clone)]
struct Row1 {
    u: BigInt,
    rhs: BigInt,
    strict: bool,
}

/// Eliminates the second variable: rows with v = 0 pass through, and every
/// (lower, upper) bound pair combines with positive multipliers, strict if
/// either parent is.
fn eliminate_second(rows: &[Row2]) -> Vec<Row1> {
    let mut kept: Vec<Row1> = Vec::new();
    let mut uppers: Vec<&Row2> = Vec::new();
    let mut lowers: Vec<&Row2> = Vec::new();
    for row in rows {
        if row.v.is_zero() {
            kept.push(Row1 {
                u: row.u.clone(),
                rhs: row.rhs.clone(),
                strict: row.strict,
            });
        } else if row.v.is_positive() {
            uppers.push(row);
        } else {
            lowers.push(row);
        }
    }
    // A one-sided variable can absorb any bound: only pairs constrain.
    for lo in &lowers {
        for up in &uppers {
            let m_lo = &up.v; // > 0
            let m_up = -&lo.v; // > 0
            kept.push(Row1 {
                u: m_lo * &lo.u + &m_up * &up.u,
                rhs: m_lo * &lo.rhs + &m_up * &up.rhs,
                strict: lo.strict || up.strict,
            });
        }
    }
    kept
}

fn feasible_one_var(rows: &[Row1]) -> bool {
    // (value, strict): tightest lower and upper bound seen so far.
    let mut lower: Option<(Rat, bool)> = None;
    let mut upper: Option<(Rat, bool)> = None;
    for row in rows {
        if row.u.is_zero() {
            let ok = if row.strict {
                row.rhs.is_positive()
            } else {
                !row.rhs.is_negative()
            };
            if !ok {
                return false;
            }
            continue;
        }
        let bound = Rat::new(row.rhs.clone(), row.u.clone());
        if row.u.is_positive() {
            // a <= bound (or <).
            let tighter = match &upper {
                None => true,
                Some((b, s)) => bound < *b || (bound == *b && row.strict && !s),
            };
            if tighter {
                upper = Some((bound, row.strict));
            }
        } else {
            // Dividing by a negative coefficient flips to a >= bound.
            let tighter = match &lower {
                None => true,
                Some((b, s)) => bound > *b || (bound == *b && row.strict && !s),
            };
            if tighter {
                lower = Some((bound, row.strict));
            }
        }
    }
    match (lower, upper) {
        (Some((lo, lo_strict)), Some((up, up_strict))) => {
            lo < up || (lo == up && !lo_strict && !up_strict)
        }
        _ => true,
    }
}

/// Whether the two-variable system has any real solution.
pub(crate) fn feasible_two_vars(rows: &[Row2]) -> bool {
    feasible_one_var(&eliminate_second(rows))
}

/// Whether the system has a solution with the first variable fixed.
pub(crate) fn feasible_with_first_fixed(rows: &[Row2], a: i64) -> bool {
    let a = BigInt::from(a);
    let reduced: Vec<Row1> = rows
        .iter()
        .map(|row| Row1 {
            u: row.v.clone(),
            rhs: &row.rhs - &row.u * &a,
            strict: row.strict,
        })
        .collect();
    feasible_one_var(&reduced)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infeasible_strict_triangle() {
        // a > 1, b > 1, a + b <= 1.
        let rows = vec![
            Row2::new(-1, 0, -1, true),
            Row2::new(0, -1, -1, true),
            Row2::new(1, 1, 1, false),
        ];
        assert!(!feasible_two_vars(&rows));
    }

    #[test]
    fn feasible_at_single_point() {
        // a >= 0, a <= 0, b < 5.
        let rows = vec![
            Row2::new(-1, 0, 0, false),
            Row2::new(1, 0, 0, false),
            Row2::new(0, 1, 5, true),
        ];
        assert!(feasible_two_vars(&rows));
    }

    #[test]
    fn strictness_at_shared_bound() {
        // a >= 1 together with a < 1 is infeasible, a <= 1 is fine.
        assert!(!feasible_two_vars(&[
            Row2::new(-1, 0, -1, false),
            Row2::new(1, 0, 1, true),
        ]));
        assert!(feasible_two_vars(&[
            Row2::new(-1, 0, -1, false),
            Row2::new(1, 0, 1, false),
        ]));
    }

    #[test]
    fn cross_variable_bounds() {
        // b >= a, b <= a - 1 is empty; b <= a + 1 is not.
        assert!(!feasible_two_vars(&[
            Row2::new(1, -1, 0, false),
            Row2::new(-1, 1, -1, false),
        ]));
        assert!(feasible_two_vars(&[
            Row2::new(1, -1, 0, false),
            Row2::new(-1, 1, 1, false),
        ]));
    }

    #[test]
    fn fixing_first_variable() {
        // a + b <= 3 with a fixed at 5 forces b <= -2; adding b > 0 kills it.
        let rows = vec![Row2::new(1, 1, 3, false), Row2::new(0, -1, 0, true)];
        assert!(!feasible_with_first_fixed(&rows, 5));
        assert!(feasible_with_first_fixed(&rows, 1));
    }

    #[test]
    fn constant_rows() {
        // 0 <= -1 is false regardless of variables.
        assert!(!feasible_two_vars(&[Row2::new(0, 0, -1, false)]));
        // 0 < 0 is false, 0 <= 0 holds.
        assert!(!feasible_two_vars(&[Row2::new(0, 0, 0, true)]));
        assert!(feasible_two_vars(&[Row2::new(0, 0, 0, false)]));
    }
}
