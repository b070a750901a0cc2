//! Convex hulls of lattice point sets and an exact disjointness test,
//! built entirely on the integer orientation predicate.

use crate::exact::{orientation, IntPoint};

/// Monotone-chain convex hull in counter-clockwise order with collinear
/// points dropped. Degenerate inputs yield a single point or the two
/// endpoints of a segment.
pub(crate) fn convex_hull(points: &[IntPoint]) -> Vec<IntPoint> {
    let mut pts: Vec<IntPoint> = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    let n = pts.len();
    if n <= 2 {
        return pts;
    }

    let mut lower: Vec<IntPoint> = Vec::with_capacity(n);
    for &p in &pts {
        while lower.len() >= 2
            && orientation(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0
        {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<IntPoint> = Vec::with_capacity(n);
    for &p in pts.iter().rev() {
        while upper.len() >= 2
            && orientation(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0
        {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// True when `p` lies on the closed segment [a, b].
fn on_segment(a: IntPoint, b: IntPoint, p: IntPoint) -> bool {
    orientation(a, b, p) == 0
        && p.x >= a.x.min(b.x)
        && p.x <= a.x.max(b.x)
        && p.y >= a.y.min(b.y)
        && p.y <= a.y.max(b.y)
}

/// Closed-segment intersection test, touching and collinear overlap included.
fn segments_intersect(p1: IntPoint, p2: IntPoint, q1: IntPoint, q2: IntPoint) -> bool {
    let d1 = orientation(q1, q2, p1);
    let d2 = orientation(q1, q2, p2);
    let d3 = orientation(p1, p2, q1);
    let d4 = orientation(p1, p2, q2);
    if ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)) {
        return true;
    }
    (d1 == 0 && on_segment(q1, q2, p1))
        || (d2 == 0 && on_segment(q1, q2, p2))
        || (d3 == 0 && on_segment(p1, p2, q1))
        || (d4 == 0 && on_segment(p1, p2, q2))
}

/// True when `p` is inside or on a hull produced by [`convex_hull`].
fn point_in_hull(p: IntPoint, hull: &[IntPoint]) -> bool {
    match hull.len() {
        0 => false,
        1 => p == hull[0],
        2 => on_segment(hull[0], hull[1], p),
        k => (0..k).all(|i| orientation(hull[i], hull[(i + 1) % k], p) >= 0),
    }
}

fn edges(hull: &[IntPoint]) -> Vec<(IntPoint, IntPoint)> {
    match hull.len() {
        0 | 1 => Vec::new(),
        2 => vec![(hull[0], hull[1])],
        k => (0..k).map(|i| (hull[i], hull[(i + 1) % k])).collect(),
    }
}

/// Whether two convex hulls intersect as closed point sets. Two compact
/// convex sets meet exactly when an edge pair crosses or one contains a
/// vertex of the other.
pub(crate) fn hulls_intersect(a: &[IntPoint], b: &[IntPoint]) -> bool {
    if a.is_empty() || b.is_empty() {
        return false;
    }
    for &(p1, p2) in &edges(a) {
        for &(q1, q2) in &edges(b) {
            if segments_intersect(p1, p2, q1, q2) {
                return true;
            }
        }
    }
    point_in_hull(a[0], b) || point_in_hull(b[0], a)
}
