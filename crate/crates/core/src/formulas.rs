//! Closed-form counting functions over exact integers and rationals.
//!
//! All quantities are evaluated exactly; asymptotic statements are never
//! treated as equalities (callers check them as empirical trends).

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{gcd, rat_int, IntPoint, Rat};

/// Extents (m, n) of the grid E_m x E_n; both must be at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GridDims {
    m: u32,
    n: u32,
}

impl GridDims {
    pub fn new(m: u32, n: u32) -> Result<Self> {
        if m < 2 || n < 2 {
            return Err(Error::InvalidDims { m, n });
        }
        Ok(GridDims { m, n })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn point_count(&self) -> u64 {
        self.m as u64 * self.n as u64
    }

    pub fn contains(&self, p: IntPoint) -> bool {
        p.x >= 0 && p.x < self.m as i64 && p.y >= 0 && p.y < self.n as i64
    }

    /// Row-major index: x2-major, x1-minor.
    pub fn index_of(&self, p: IntPoint) -> usize {
        debug_assert!(self.contains(p));
        p.y as usize * self.m as usize + p.x as usize
    }

    /// Grid points in row-major order.
    pub fn points(&self) -> impl Iterator<Item = IntPoint> + '_ {
        let m = self.m as i64;
        let n = self.n as i64;
        (0..n).flat_map(move |y| (0..m).map(move |x| IntPoint::new(x, y)))
    }
}

impl std::fmt::Display for GridDims {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}x{}", self.m, self.n)
    }
}

fn index_bound(extent: &Rat) -> i64 {
    use num_traits::ToPrimitive;
    if extent.is_integer() {
        extent.to_integer().to_i64().expect("extent fits i64") - 1
    } else {
        extent
            .floor()
            .to_integer()
            .to_i64()
            .expect("extent fits i64")
    }
}

/// Sum of (mx - |i|)(nx - |j|) over integer pairs with |i| < mx, |j| < nx
/// and gcd(i, j) = q. Exact rational; an integer whenever mx and nx are.
pub fn f_sum(q: u64, mx: &Rat, nx: &Rat) -> Result<Rat> {
    if q == 0 {
        return Err(Error::InvalidGcdClass);
    }
    if !mx.is_positive() || !nx.is_positive() {
        return Err(Error::NonPositiveExtent);
    }
    let imax = index_bound(mx);
    let jmax = index_bound(nx);
    let mut total = Rat::zero();
    for i in -imax..=imax {
        let wi = mx - rat_int(i.abs());
        for j in -jmax..=jmax {
            if gcd(i, j) == q {
                total += &wi * (nx - rat_int(j.abs()));
            }
        }
    }
    Ok(total)
}

/// Integer fast path of [`f_sum`] for whole extents mw x nw (each >= 1).
pub fn f_int(q: u64, mw: u32, nw: u32) -> BigInt {
    assert!(q >= 1, "gcd class q must be at least 1");
    assert!(mw >= 1 && nw >= 1);
    let (mw, nw) = (mw as i64, nw as i64);
    let mut total: i128 = 0;
    for i in -(mw - 1)..=(mw - 1) {
        for j in -(nw - 1)..=(nw - 1) {
            if gcd(i, j) == q {
                total += ((mw - i.abs()) * (nw - j.abs())) as i128;
            }
        }
    }
    BigInt::from(total)
}

/// Number of coprime pairs (i, j) with 0 < i < m and 0 < j < n.
pub fn s_count(dims: GridDims) -> BigInt {
    let mut count: u64 = 0;
    for i in 1..dims.m as i64 {
        for j in 1..dims.n as i64 {
            if gcd(i, j) == 1 {
                count += 1;
            }
        }
    }
    BigInt::from(count)
}

/// The same quantity expressed through f_1 at shrunken extents; agrees with
/// [`s_count`] for every valid dims.
pub fn s_count_via_f1(dims: GridDims) -> BigInt {
    let (m, n) = (dims.m, dims.n);
    let combo = f_int(1, m, n) - f_int(1, m - 1, n) - f_int(1, m, n - 1) + f_int(1, m - 1, n - 1);
    let (quot, rem) = num_integer::Integer::div_rem(&combo, &BigInt::from(4));
    debug_assert!(rem.is_zero());
    quot - 1
}

/// Number of lines through at least two grid points: (f1 - f2) / 2.
pub fn line_count(dims: GridDims) -> BigInt {
    let diff = f_int(1, dims.m, dims.n) - f_int(2, dims.m, dims.n);
    let (quot, rem) = num_integer::Integer::div_rem(&diff, &BigInt::from(2));
    debug_assert!(rem.is_zero());
    quot
}

/// Total number of threshold functions: f1 + 2.
pub fn t_count(dims: GridDims) -> BigInt {
    f_int(1, dims.m, dims.n) + 2
}

/// Counts of threshold functions with minimal teaching sets of size 3 and 4.
pub fn t3_t4(dims: GridDims) -> (BigInt, BigInt) {
    let f1 = f_int(1, dims.m, dims.n);
    let f2 = f_int(2, dims.m, dims.n);
    let t3 = 2 * &f2 + 8;
    let t4 = f1 - 2 * f2 - 6;
    (t3, t4)
}

/// Exact average teaching-set cardinality: (4*f1 - 2*f2) / (f1 + 2).
pub fn sigma_bar(dims: GridDims) -> Rat {
    let f1 = f_int(1, dims.m, dims.n);
    let f2 = f_int(2, dims.m, dims.n);
    Rat::new(4 * &f1 - 2 * f2, f1 + 2)
}

/// The 2x2 table u[nu][kappa] of size-3 teaching-set classes: nu is the
/// function value at the origin, kappa the number of zeros in the set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UCounts {
    pub u01: BigInt,
    pub u02: BigInt,
    pub u11: BigInt,
    pub u12: BigInt,
}

impl UCounts {
    pub fn get(&self, nu: u8, kappa: u8) -> &BigInt {
        match (nu, kappa) {
            (0, 1) => &self.u01,
            (0, 2) => &self.u02,
            (1, 1) => &self.u11,
            (1, 2) => &self.u12,
            _ => panic!("u table is indexed by nu in {{0,1}} and kappa in {{1,2}}"),
        }
    }

    pub fn total(&self) -> BigInt {
        &self.u01 + &self.u02 + &self.u11 + &self.u12
    }
}

/// Closed forms for the u table. Fails only if a closed-form entry comes out
/// non-integral or negative, which would mean the formulas are inconsistent.
pub fn u_counts(dims: GridDims) -> Result<UCounts> {
    let half_m = Rat::new(BigInt::from(dims.m), BigInt::from(2));
    let half_n = Rat::new(BigInt::from(dims.n), BigInt::from(2));
    let f1_half = f_sum(1, &half_m, &half_n)?;
    let f2 = f_int(2, dims.m, dims.n);
    let s = s_count(dims);

    let unstable = rat_int(2) * &f1_half + rat_int(2) - Rat::from_integer(s.clone());
    let stable = Rat::from_integer(f2) + rat_int(2) - rat_int(2) * &f1_half + Rat::from_integer(s);

    let to_entry = |r: &Rat, which: &str| -> Result<BigInt> {
        if !r.is_integer() {
            return Err(Error::Inconsistency(format!(
                "u entry {which} is non-integral for {dims}: {r}"
            )));
        }
        let v = r.to_integer();
        if v.is_negative() {
            return Err(Error::Inconsistency(format!(
                "u entry {which} is negative for {dims}: {v}"
            )));
        }
        Ok(v)
    };

    let u01 = to_entry(&unstable, "u01")?;
    let u02 = to_entry(&stable, "u02")?;
    Ok(UCounts {
        u11: u02.clone(),
        u12: u01.clone(),
        u01,
        u02,
    })
}

/// Every counting quantity of the grid in one record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub dims: GridDims,
    pub f1: BigInt,
    pub f2: BigInt,
    pub s: BigInt,
    pub l: BigInt,
    pub t: BigInt,
    pub t3: BigInt,
    pub t4: BigInt,
    pub sigma_bar: Rat,
    pub u: UCounts,
}

impl CountReport {
    /// Structural invariants tying the fields together.
    pub fn validate(&self) -> std::result::Result<(), String> {
        if &self.t3 + &self.t4 != self.t {
            return Err(format!(
                "{}: t3 + t4 = {} != t = {}",
                self.dims,
                &self.t3 + &self.t4,
                self.t
            ));
        }
        let weighted = Rat::new(3 * &self.t3 + 4 * &self.t4, self.t.clone());
        if weighted != self.sigma_bar {
            return Err(format!(
                "{}: (3*t3 + 4*t4)/t = {} != sigma_bar = {}",
                self.dims, weighted, self.sigma_bar
            ));
        }
        if self.u.total() != self.t3 {
            return Err(format!(
                "{}: u total = {} != t3 = {}",
                self.dims,
                self.u.total(),
                self.t3
            ));
        }
        if self.u.u01 != self.u.u12 || self.u.u02 != self.u.u11 {
            return Err(format!("{}: u table breaks complement symmetry", self.dims));
        }
        for (nu, kappa) in [(0, 1), (0, 2), (1, 1), (1, 2)] {
            if self.u.get(nu, kappa).is_negative() {
                return Err(format!("{}: u[{nu}][{kappa}] is negative", self.dims));
            }
        }
        Ok(())
    }
}

/// Assembles the full closed-form report for the grid.
pub fn count_report(dims: GridDims) -> Result<CountReport> {
    let (t3, t4) = t3_t4(dims);
    Ok(CountReport {
        dims,
        f1: f_int(1, dims.m, dims.n),
        f2: f_int(2, dims.m, dims.n),
        s: s_count(dims),
        l: line_count(dims),
        t: t_count(dims),
        t3,
        t4,
        sigma_bar: sigma_bar(dims),
        u: u_counts(dims)?,
    })
}

/// Cell/edge/vertex counts of the full-plane parameter partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneStats {
    pub c: BigInt,
    pub c3: BigInt,
    pub c4: BigInt,
    pub e: BigInt,
    pub v: BigInt,
    pub v_inf: BigInt,
}

impl PlaneStats {
    pub fn validate(&self) -> std::result::Result<(), String> {
        if &self.c3 + &self.c4 != self.c {
            return Err(format!(
                "c3 + c4 != c ({} + {} != {})",
                self.c3, self.c4, self.c
            ));
        }
        if &self.v - &self.e + &self.c != BigInt::from(1) {
            return Err(format!(
                "euler relation broken: v - e + c = {}",
                &self.v - &self.e + &self.c
            ));
        }
        if 3 * &self.c3 + 4 * &self.c4 != 2 * &self.e + 2 * &self.v_inf {
            return Err("3*c3 + 4*c4 != 2*e + 2*v_inf".to_string());
        }
        Ok(())
    }
}

/// Cell/edge/vertex counts of the triangle partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleStats {
    pub c: BigInt,
    pub c3: BigInt,
    pub c4: BigInt,
    pub e: BigInt,
    pub v: BigInt,
}

impl TriangleStats {
    pub fn validate(&self, dims: GridDims) -> std::result::Result<(), String> {
        if &self.c3 + &self.c4 != self.c {
            return Err(format!(
                "c3 + c4 != c ({} + {} != {})",
                self.c3, self.c4, self.c
            ));
        }
        if &self.v - &self.e + &self.c != BigInt::from(1) {
            return Err(format!(
                "euler relation broken: v - e + c = {}",
                &self.v - &self.e + &self.c
            ));
        }
        let boundary = BigInt::from(dims.m as i64 + dims.n as i64 + 1);
        if 2 * &self.e != 3 * &self.c3 + 4 * &self.c4 + boundary {
            return Err("2*e != 3*c3 + 4*c4 + m + n + 1".to_string());
        }
        Ok(())
    }
}

/// Closed-form plane-partition statistics.
pub fn plane_stats_formula(dims: GridDims) -> PlaneStats {
    let f1 = f_int(1, dims.m, dims.n);
    let f2 = f_int(2, dims.m, dims.n);
    let s = s_count(dims);
    let half = |v: BigInt| -> BigInt {
        let (quot, rem) = num_integer::Integer::div_rem(&v, &BigInt::from(2));
        debug_assert!(rem.is_zero());
        quot
    };
    let c3 = &f2 + 4;
    let c4 = half(f1.clone()) - &f2 - 3;
    PlaneStats {
        c: &c3 + &c4,
        e: &f1 - half(f2.clone()) - &s - 2,
        v: half(&f1 - &f2) - &s - 2,
        v_inf: s + 2,
        c3,
        c4,
    }
}

/// Closed-form triangle-partition statistics. Individual terms can be
/// quarter-integers; only the assembled quantities must be whole, and a
/// fractional result is reported as an inconsistency.
pub fn triangle_stats_formula(dims: GridDims) -> Result<TriangleStats> {
    let f1 = Rat::from_integer(f_int(1, dims.m, dims.n));
    let f2 = Rat::from_integer(f_int(2, dims.m, dims.n));
    let m = rat_int(dims.m as i64);
    let n = rat_int(dims.n as i64);
    let half = Rat::new(BigInt::from(1), BigInt::from(2));
    let quarter = Rat::new(BigInt::from(1), BigInt::from(4));

    let c3 = &half * &f2 + &m + &n + rat_int(1);
    let c4 = &quarter * &f1 - &half * &f2 - &half * &m - &half * &n - rat_int(1);
    let e = &half * &f1 - &quarter * &f2 + &m + &n;
    let v = &quarter * &f1 - &quarter * &f2 + &half * &m + &half * &n + rat_int(1);

    let to_int = |r: &Rat, which: &str| -> Result<BigInt> {
        if !r.is_integer() {
            return Err(Error::Inconsistency(format!(
                "triangle quantity {which} is non-integral for {dims}: {r}"
            )));
        }
        Ok(r.to_integer())
    };
    let c3 = to_int(&c3, "c3")?;
    let c4 = to_int(&c4, "c4")?;
    Ok(TriangleStats {
        c: &c3 + &c4,
        c3,
        c4,
        e: to_int(&e, "e")?,
        v: to_int(&v, "v")?,
    })
}
