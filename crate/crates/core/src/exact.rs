//! Exact integer and rational arithmetic with the geometric predicates the
//! rest of the crate builds on.
//!
//! Everything here is computed without rounding: integers are machine words
//! widened to `i128` where products appear, and derived coordinates are
//! arbitrary-precision rationals.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

/// Arbitrary-precision rational.
///
/// `BigRational` keeps the invariants this crate relies on: the denominator
/// is always positive and the fraction is stored in lowest terms.
pub type Rat = BigRational;

/// Builds the rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds the rational `n/1`.
pub fn rat_int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// A lattice point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntPoint {
    pub x: i64,
    pub y: i64,
}

impl IntPoint {
    pub fn new(x: i64, y: i64) -> Self {
        IntPoint { x, y }
    }
}

impl std::fmt::Display for IntPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A point with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatPoint {
    pub x: Rat,
    pub y: Rat,
}

impl RatPoint {
    pub fn new(x: Rat, y: Rat) -> Self {
        RatPoint { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        RatPoint {
            x: rat_int(x),
            y: rat_int(y),
        }
    }
}

impl std::fmt::Display for RatPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Greatest common divisor of the magnitudes, with `gcd(0, 0) = 0`.
///
/// The zero convention makes sums over "gcd(i,j) = q" exclude the pair
/// (0,0) for every q >= 1.
pub fn gcd(a: i64, b: i64) -> u64 {
    let mut a = a.unsigned_abs();
    let mut b = b.unsigned_abs();
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Sign of the cross product (q - p) x (r - p): +1 for a counter-clockwise
/// turn, -1 for clockwise, 0 for collinear. Exact for all `i64` inputs.
pub fn orientation(p: IntPoint, q: IntPoint, r: IntPoint) -> i32 {
    let cross = (q.x as i128 - p.x as i128) * (r.y as i128 - p.y as i128)
        - (q.y as i128 - p.y as i128) * (r.x as i128 - p.x as i128);
    match cross {
        c if c > 0 => 1,
        c if c < 0 => -1,
        _ => 0,
    }
}

/// Integer line `a1*x1 + a2*x2 = a0` in canonical form.
///
/// Canonical means gcd(|a0|, |a1|, |a2|) = 1 with a1 > 0, or a1 = 0 and
/// a2 > 0, so two `Line` values are equal exactly when they describe the
/// same line of the plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Line {
    a0: i64,
    a1: i64,
    a2: i64,
}

impl Line {
    /// Canonicalizes the coefficients; rejects (a1, a2) = (0, 0).
    pub fn new(a0: i64, a1: i64, a2: i64) -> Result<Self> {
        if a1 == 0 && a2 == 0 {
            return Err(Error::DegenerateLine);
        }
        let g = gcd(a0, gcd(a1, a2) as i64) as i64;
        let (mut a0, mut a1, mut a2) = (a0 / g, a1 / g, a2 / g);
        if a1 < 0 || (a1 == 0 && a2 < 0) {
            a0 = -a0;
            a1 = -a1;
            a2 = -a2;
        }
        Ok(Line { a0, a1, a2 })
    }

    /// The unique line through two distinct lattice points.
    pub fn through(p: IntPoint, q: IntPoint) -> Result<Self> {
        if p == q {
            return Err(Error::DegenerateLine);
        }
        let dx = q.x - p.x;
        let dy = q.y - p.y;
        // (y - py)*dx = (x - px)*dy  =>  dy*x - dx*y = dy*px - dx*py
        let a0 = dy as i128 * p.x as i128 - dx as i128 * p.y as i128;
        let a0 = i64::try_from(a0).expect("line offset overflows i64");
        Line::new(a0, dy, -dx)
    }

    pub fn a0(&self) -> i64 {
        self.a0
    }

    pub fn a1(&self) -> i64 {
        self.a1
    }

    pub fn a2(&self) -> i64 {
        self.a2
    }

    /// Value of the linear form at a lattice point.
    pub fn eval(&self, p: IntPoint) -> i128 {
        self.a1 as i128 * p.x as i128 + self.a2 as i128 * p.y as i128
    }

    pub fn contains(&self, p: IntPoint) -> bool {
        self.eval(p) == self.a0 as i128
    }

    pub fn contains_rat(&self, p: &RatPoint) -> bool {
        &p.x * rat_int(self.a1) + &p.y * rat_int(self.a2) == rat_int(self.a0)
    }

    /// Primitive direction class of the normal (a1, a2); two lines are
    /// parallel exactly when these classes coincide.
    pub fn slope_class(&self) -> (i64, i64) {
        let g = gcd(self.a1, self.a2) as i64;
        (self.a1 / g, self.a2 / g)
    }
}

impl std::fmt::Display for Line {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}*x1 + {}*x2 = {}", self.a1, self.a2, self.a0)
    }
}

/// Outcome of intersecting two lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LineIntersection {
    Point(RatPoint),
    Parallel,
    Identical,
}

/// Exact intersection of two canonical lines.
pub fn line_intersection(l1: &Line, l2: &Line) -> LineIntersection {
    let det = l1.a1 as i128 * l2.a2 as i128 - l1.a2 as i128 * l2.a1 as i128;
    if det == 0 {
        return if l1 == l2 {
            LineIntersection::Identical
        } else {
            LineIntersection::Parallel
        };
    }
    let det = BigInt::from(det);
    let x = BigInt::from(l1.a0 as i128 * l2.a2 as i128 - l1.a2 as i128 * l2.a0 as i128);
    let y = BigInt::from(l1.a1 as i128 * l2.a0 as i128 - l1.a0 as i128 * l2.a1 as i128);
    LineIntersection::Point(RatPoint::new(
        BigRational::new(x, det.clone()),
        BigRational::new(y, det),
    ))
}
