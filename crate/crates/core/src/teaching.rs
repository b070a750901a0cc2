//! Essential points, minimal teaching sets, per-function classification,
//! and grid-wide aggregation.
//!
//! The minimal teaching set of a threshold function is unique and equals
//! its set of essential points, so everything here reduces to flip-and-test
//! with the exact separability predicate.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::{IntPoint, Rat};
use crate::formulas::{s_count, CountReport, GridDims, UCounts};
use crate::gridfn::{
    adjacent_pairs_count, distinct_lines_with_counts, enumerate_threshold, is_threshold,
    pairs_with_gcd, BinaryGridFunction,
};

/// The minimal teaching set of a function together with its classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TeachingProfile {
    /// Teaching points with the function's value there, in row-major order.
    pub points: Vec<(IntPoint, bool)>,
    pub size: usize,
    /// Function value at the origin.
    pub nu: bool,
    /// Number of zeros among the teaching points.
    pub kappa: usize,
}

/// True when flipping the value at `p` yields another threshold function.
pub fn is_essential(f: &BinaryGridFunction, p: IntPoint) -> Result<bool> {
    if !f.dims().contains(p) {
        return Err(Error::PointOutsideGrid {
            x: p.x,
            y: p.y,
            m: f.dims().m(),
            n: f.dims().n(),
        });
    }
    if !is_threshold(f) {
        return Err(Error::NotThreshold);
    }
    Ok(is_threshold(&f.flipped(p)))
}

/// The minimal teaching set: all essential points with their values.
pub fn teaching_set(f: &BinaryGridFunction) -> Result<TeachingProfile> {
    if !is_threshold(f) {
        return Err(Error::NotThreshold);
    }
    let points: Vec<(IntPoint, bool)> = f
        .dims()
        .points()
        .filter(|&p| is_threshold(&f.flipped(p)))
        .map(|p| (p, f.get(p)))
        .collect();
    let kappa = points.iter().filter(|(_, v)| !v).count();
    Ok(TeachingProfile {
        size: points.len(),
        nu: f.get(IntPoint::new(0, 0)),
        kappa,
        points,
    })
}

const VERIFY_LIMIT: u64 = 144;

/// Definition-level check that `t` teaches `f`: no other threshold function
/// may agree with `f` on all of `t`. Enumerates every threshold function,
/// so it is guarded to small grids.
pub fn verify_teaching(f: &BinaryGridFunction, t: &[IntPoint]) -> Result<bool> {
    let total = f.dims().point_count();
    if total > VERIFY_LIMIT {
        return Err(Error::TooLarge {
            op: "verify_teaching",
            max: VERIFY_LIMIT,
            got: total,
        });
    }
    if !is_threshold(f) {
        return Err(Error::NotThreshold);
    }
    for h in enumerate_threshold(f.dims())? {
        if &h != f && t.iter().all(|&p| h.get(p) == f.get(p)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every threshold function together with its teaching profile, in the
/// canonical enumeration order.
pub fn profiles(dims: GridDims) -> Result<Vec<(BinaryGridFunction, TeachingProfile)>> {
    enumerate_threshold(dims)?
        .into_iter()
        .map(|f| {
            let profile = teaching_set(&f)?;
            Ok((f, profile))
        })
        .collect()
}

/// Enumerates all threshold functions and fills a [`CountReport`] with
/// empirical counts: t, t3, t4 and sigma from the teaching profiles, the u
/// table from size-3 profiles of non-constant functions, and f1, f2, l
/// from direct pair/line scans.
pub fn aggregate(dims: GridDims) -> Result<CountReport> {
    let all = profiles(dims)?;
    let t = all.len() as u64;
    let mut t3 = 0u64;
    let mut t4 = 0u64;
    let mut u = [[0u64; 2]; 2];
    for (f, profile) in &all {
        match profile.size {
            3 => t3 += 1,
            4 => t4 += 1,
            other => {
                return Err(Error::Inconsistency(format!(
                    "teaching set of size {other} on {dims}"
                )))
            }
        }
        if profile.size == 3 && f.constant_value().is_none() {
            let nu = profile.nu as usize;
            match profile.kappa {
                1 | 2 => u[nu][profile.kappa - 1] += 1,
                other => {
                    return Err(Error::Inconsistency(format!(
                        "size-3 teaching set with {other} zeros on {dims}"
                    )))
                }
            }
        }
    }
    Ok(CountReport {
        dims,
        f1: BigInt::from(adjacent_pairs_count(dims)),
        f2: BigInt::from(pairs_with_gcd(dims, 2)),
        s: s_count(dims),
        l: BigInt::from(distinct_lines_with_counts(dims).len()),
        t: BigInt::from(t),
        t3: BigInt::from(t3),
        t4: BigInt::from(t4),
        sigma_bar: Rat::new(BigInt::from(3 * t3 + 4 * t4), BigInt::from(t)),
        u: UCounts {
            u01: BigInt::from(u[0][0]),
            u02: BigInt::from(u[0][1]),
            u11: BigInt::from(u[1][0]),
            u12: BigInt::from(u[1][1]),
        },
    })
}
