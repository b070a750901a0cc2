//! Exact construction of the parameter-space partitions: the partition of
//! the (a1, a2) plane by the lines a1*x1 + a2*x2 = 1 attached to the grid
//! points, and the partition of the triangle with vertices (0,0), (1,0),
//! (0,1) by the chords of those lines.
//!
//! Cells are counted through Euler's relation rather than a face data
//! structure; the 3-gon/4-gon split comes from two independent linear
//! identities, and a third route classifies cells by irredundant
//! constraint counts.

mod feasibility;
mod svg;

pub use svg::{arrangement_svg_string, emit_arrangement_svg, ArrangementMode, SvgOptions};

use std::collections::BTreeSet;

use num_bigint::BigInt;

use feasibility::{feasible_two_vars, feasible_with_first_fixed, Row2};

use crate::error::{Error, Result};
use crate::exact::{line_intersection, rat_int, IntPoint, Line, LineIntersection, Rat, RatPoint};
use crate::formulas::{GridDims, PlaneStats, TriangleStats};
use crate::gridfn::{enumerate_threshold, is_threshold, BinaryGridFunction};
use crate::teaching::teaching_set;

/// Geometric detail of the full-plane partition.
#[derive(Debug, Clone)]
pub struct PlaneArrangement {
    /// The mn - 1 pairwise distinct lines x1*a1 + x2*a2 = 1.
    pub lines: Vec<Line>,
    /// Deduplicated intersection points.
    pub vertices: Vec<RatPoint>,
    /// Distinct vertices lying on each line, parallel to `lines`.
    pub per_line_vertex_counts: Vec<usize>,
    /// Number of parallel classes among the lines.
    pub slope_classes: usize,
}

/// Builds the plane arrangement geometry for the grid.
pub fn plane_arrangement_detail(dims: GridDims) -> PlaneArrangement {
    let lines: Vec<Line> = dims
        .points()
        .filter(|p| !(p.x == 0 && p.y == 0))
        .map(|p| Line::new(1, p.x, p.y).expect("grid points other than the origin give lines"))
        .collect();
    debug_assert_eq!(
        lines.iter().collect::<BTreeSet<_>>().len(),
        lines.len(),
        "arrangement lines must be pairwise distinct"
    );

    let mut vertices: BTreeSet<RatPoint> = BTreeSet::new();
    for (i, l1) in lines.iter().enumerate() {
        for l2 in &lines[i + 1..] {
            if let LineIntersection::Point(p) = line_intersection(l1, l2) {
                vertices.insert(p);
            }
        }
    }
    let vertices: Vec<RatPoint> = vertices.into_iter().collect();

    let per_line_vertex_counts: Vec<usize> = lines
        .iter()
        .map(|l| vertices.iter().filter(|v| l.contains_rat(v)).count())
        .collect();

    let slope_classes = lines
        .iter()
        .map(Line::slope_class)
        .collect::<BTreeSet<_>>()
        .len();

    PlaneArrangement {
        lines,
        vertices,
        per_line_vertex_counts,
        slope_classes,
    }
}

/// Plane-partition statistics computed geometrically, with no closed forms:
/// vertices from exact pairwise intersections, edges by cutting each line at
/// its vertices (a line with k vertices carries k + 1 edges), cells from
/// Euler's relation, and the 3/4-gon split from the edge-count identity.
pub fn plane_arrangement(dims: GridDims) -> PlaneStats {
    let detail = plane_arrangement_detail(dims);
    let v = BigInt::from(detail.vertices.len());
    let e: BigInt = detail
        .per_line_vertex_counts
        .iter()
        .map(|&k| BigInt::from(k + 1))
        .sum();
    let v_inf = BigInt::from(detail.slope_classes);
    let c = BigInt::from(1) + &e - &v;
    let c3 = 4 * &c - 2 * &e - 2 * &v_inf;
    let c4 = &c - &c3;
    PlaneStats {
        c,
        c3,
        c4,
        e,
        v,
        v_inf,
    }
}

/// Geometric detail of the triangle partition.
#[derive(Debug, Clone)]
pub struct TriangleArrangement {
    /// The mn chords from (0, 1/x2) to (1/x1, 0) plus the two legs.
    pub segments: Vec<(RatPoint, RatPoint)>,
    /// Deduplicated endpoints and interior intersections.
    pub vertex_points: Vec<RatPoint>,
    pub vertices: usize,
    pub edges: usize,
    pub cells: usize,
}

fn on_closed_segment(p: &RatPoint, a: &RatPoint, b: &RatPoint, line: &Line) -> bool {
    if !line.contains_rat(p) {
        return false;
    }
    let (xlo, xhi) = if a.x <= b.x {
        (&a.x, &b.x)
    } else {
        (&b.x, &a.x)
    };
    let (ylo, yhi) = if a.y <= b.y {
        (&a.y, &b.y)
    } else {
        (&b.y, &a.y)
    };
    &p.x >= xlo && &p.x <= xhi && &p.y >= ylo && &p.y <= yhi
}

/// Builds the triangle arrangement geometry: chord segments for every
/// (x1, x2) in [1..m] x [1..n], the two legs, all endpoint and pairwise
/// intersection vertices, and the edge count from per-segment subdivision.
pub fn triangle_arrangement_detail(dims: GridDims) -> TriangleArrangement {
    struct Seg {
        line: Line,
        a: RatPoint,
        b: RatPoint,
    }

    let mut segs: Vec<Seg> = Vec::new();
    for x1 in 1..=dims.m() as i64 {
        for x2 in 1..=dims.n() as i64 {
            segs.push(Seg {
                line: Line::new(1, x1, x2).expect("chord coefficients are positive"),
                a: RatPoint::new(rat_int(0), Rat::new(BigInt::from(1), BigInt::from(x2))),
                b: RatPoint::new(Rat::new(BigInt::from(1), BigInt::from(x1)), rat_int(0)),
            });
        }
    }
    // The two legs of the triangle.
    segs.push(Seg {
        line: Line::new(0, 0, 1).expect("x axis"),
        a: RatPoint::from_ints(0, 0),
        b: RatPoint::from_ints(1, 0),
    });
    segs.push(Seg {
        line: Line::new(0, 1, 0).expect("y axis"),
        a: RatPoint::from_ints(0, 0),
        b: RatPoint::from_ints(0, 1),
    });

    let mut vertices: BTreeSet<RatPoint> = BTreeSet::new();
    for seg in &segs {
        vertices.insert(seg.a.clone());
        vertices.insert(seg.b.clone());
    }
    for (i, s1) in segs.iter().enumerate() {
        for s2 in &segs[i + 1..] {
            if let LineIntersection::Point(p) = line_intersection(&s1.line, &s2.line) {
                if on_closed_segment(&p, &s1.a, &s1.b, &s1.line)
                    && on_closed_segment(&p, &s2.a, &s2.b, &s2.line)
                {
                    vertices.insert(p);
                }
            }
        }
    }
    let vertex_points: Vec<RatPoint> = vertices.into_iter().collect();

    // No two segments are collinear, so a segment with k vertices on it is
    // cut into exactly k - 1 edges.
    let edges: usize = segs
        .iter()
        .map(|s| {
            let k = vertex_points
                .iter()
                .filter(|p| on_closed_segment(p, &s.a, &s.b, &s.line))
                .count();
            debug_assert!(k >= 2);
            k - 1
        })
        .sum();

    let vertices = vertex_points.len();
    TriangleArrangement {
        segments: segs.into_iter().map(|s| (s.a, s.b)).collect(),
        vertex_points,
        vertices,
        edges,
        cells: 1 + edges - vertices,
    }
}

/// Triangle-partition statistics computed geometrically, with the
/// 3/4-gon split from 2e = 3*c3 + 4*c4 + m + n + 1.
pub fn triangle_arrangement(dims: GridDims) -> TriangleStats {
    let detail = triangle_arrangement_detail(dims);
    let v = BigInt::from(detail.vertices);
    let e = BigInt::from(detail.edges);
    let c = BigInt::from(detail.cells);
    let boundary = BigInt::from(dims.m() as i64 + dims.n() as i64 + 1);
    let c3 = 4 * &c - (2 * &e - boundary);
    let c4 = &c - &c3;
    TriangleStats { c, c3, c4, e, v }
}

/// A cell of the plane partition, described through the threshold function
/// it corresponds to (value 0 at the origin).
#[derive(Debug, Clone)]
pub struct CellDescriptor {
    pub function: BinaryGridFunction,
    /// Number of irredundant constraints = size of the minimal teaching set.
    pub irredundant_count: usize,
    pub bounded: bool,
}

/// Builds the mixed constraint rows of the separating-cone system at a
/// fixed value of a0, with the point `negated` (if any) contributing the
/// negation of its constraint. The origin's constraint (0 <= a0) never
/// produces a row; callers account for it through the choice of a0.
fn cone_rows_at(f: &BinaryGridFunction, a0: i64, negated: Option<IntPoint>) -> Vec<Row2> {
    let mut rows = Vec::new();
    for p in f.dims().points() {
        if p.x == 0 && p.y == 0 {
            continue;
        }
        let zero_side = !f.get(p);
        let flip = negated == Some(p);
        // Zero constraint: p.a <= a0. One constraint: p.a > a0, i.e.
        // -p.a < -a0. Negation swaps the two.
        if zero_side != flip {
            rows.push(Row2::new(p.x, p.y, a0, false));
        } else {
            rows.push(Row2::new(-p.x, -p.y, -a0, true));
        }
    }
    rows
}

/// Whether the separating cone stays non-empty when the constraint of
/// `negated` is replaced by its negation. The full cone lives in
/// (a0, a1, a2); scale invariance reduces it to the slices a0 = 1 and
/// a0 = 0 (the origin's zero-constraint forces a0 >= 0), or a0 = -1 when
/// the origin constraint itself is the negated one.
fn relaxed_cone_feasible(f: &BinaryGridFunction, negated: IntPoint) -> bool {
    if negated.x == 0 && negated.y == 0 {
        let rows = cone_rows_at(f, -1, None);
        return feasible_two_vars(&rows);
    }
    feasible_two_vars(&cone_rows_at(f, 1, Some(negated)))
        || feasible_two_vars(&cone_rows_at(f, 0, Some(negated)))
}

/// The grid points whose constraint in the separating system cannot be
/// dropped without enlarging the solution cell, decided by exact rational
/// feasibility tests. Requires a threshold function with value 0 at the
/// origin; the result equals its minimal teaching set.
pub fn irredundant_constraints(f: &BinaryGridFunction) -> Result<BTreeSet<IntPoint>> {
    if !is_threshold(f) {
        return Err(Error::NotThreshold);
    }
    if f.get(IntPoint::new(0, 0)) {
        return Err(Error::OriginNotZero);
    }
    Ok(f.dims()
        .points()
        .filter(|&p| relaxed_cone_feasible(f, p))
        .collect())
}

/// Whether the a0 = 1 solution cell of `f` is bounded: the recession cone
/// of its closure must contain no nonzero direction.
pub fn is_cell_bounded(f: &BinaryGridFunction) -> Result<bool> {
    if !is_threshold(f) {
        return Err(Error::NotThreshold);
    }
    if f.get(IntPoint::new(0, 0)) {
        return Err(Error::OriginNotZero);
    }
    // Recession rows: d.x <= 0 for zeros, d.x >= 0 for ones.
    let mut rows = Vec::new();
    for p in f.dims().points() {
        if p.x == 0 && p.y == 0 {
            continue;
        }
        if !f.get(p) {
            rows.push(Row2::new(p.x, p.y, 0, false));
        } else {
            rows.push(Row2::new(-p.x, -p.y, 0, false));
        }
    }
    // A nonzero recession direction exists iff one survives on one of the
    // four half-axis slices.
    let unbounded =
        feasible_with_first_fixed(&rows, 1) || feasible_with_first_fixed(&rows, -1) || {
            let swapped: Vec<Row2> = rows
                .iter()
                .map(|r| Row2 {
                    u: r.v.clone(),
                    v: r.u.clone(),
                    rhs: r.rhs.clone(),
                    strict: r.strict,
                })
                .collect();
            feasible_with_first_fixed(&swapped, 1) || feasible_with_first_fixed(&swapped, -1)
        };
    Ok(!unbounded)
}

/// One descriptor per cell of the plane partition, i.e. per threshold
/// function with value 0 at the origin, in canonical function order.
pub fn cell_descriptors(dims: GridDims) -> Result<Vec<CellDescriptor>> {
    let origin = IntPoint::new(0, 0);
    enumerate_threshold(dims)?
        .into_iter()
        .filter(|f| !f.get(origin))
        .map(|f| {
            let irredundant = irredundant_constraints(&f)?;
            let bounded = is_cell_bounded(&f)?;
            Ok(CellDescriptor {
                irredundant_count: irredundant.len(),
                bounded,
                function: f,
            })
        })
        .collect()
}

/// Third route to (c3, c4): enumerate the threshold functions with value 0
/// at the origin and tally teaching-set sizes 3 versus 4.
pub fn cell_census(dims: GridDims) -> Result<(u64, u64)> {
    let origin = IntPoint::new(0, 0);
    let mut c3 = 0u64;
    let mut c4 = 0u64;
    for f in enumerate_threshold(dims)? {
        if f.get(origin) {
            continue;
        }
        match teaching_set(&f)?.size {
            3 => c3 += 1,
            4 => c4 += 1,
            other => {
                return Err(Error::Inconsistency(format!(
                    "teaching set of size {other} on {dims}"
                )))
            }
        }
    }
    Ok((c3, c4))
}
