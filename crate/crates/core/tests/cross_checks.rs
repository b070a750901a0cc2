//! Module-spanning oracle checks: every closed form is confronted with an
//! independent computation route over a sweep of grid sizes.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;

use gridthresh::arrangement::{cell_census, plane_arrangement, triangle_arrangement};
use gridthresh::formulas::{
    count_report, f_int, line_count, plane_stats_formula, s_count, s_count_via_f1, t_count,
    triangle_stats_formula, GridDims,
};
use gridthresh::gridfn::{
    adjacent_pairs_count, distinct_lines_with_counts, enumerate_threshold, pairs_with_gcd,
};
use gridthresh::teaching::{aggregate, teaching_set};
use gridthresh::IntPoint;

fn dims(m: u32, n: u32) -> GridDims {
    GridDims::new(m, n).unwrap()
}

#[test]
fn pair_scan_oracles_up_to_10() {
    for m in 2..=10u32 {
        for n in 2..=10u32 {
            let d = dims(m, n);
            assert_eq!(BigInt::from(adjacent_pairs_count(d)), f_int(1, m, n));
            assert_eq!(BigInt::from(pairs_with_gcd(d, 2)), f_int(2, m, n));
            assert_eq!(s_count(d), s_count_via_f1(d));
        }
    }
}

#[test]
fn line_oracles_up_to_10() {
    for m in 2..=10u32 {
        for n in 2..=10u32 {
            let d = dims(m, n);
            let lines = distinct_lines_with_counts(d);
            assert_eq!(BigInt::from(lines.len()), line_count(d));
            let sum: u64 = lines.iter().map(|(_, z)| z - 1).sum();
            assert_eq!(BigInt::from(2 * sum), f_int(1, m, n));
        }
    }
}

#[test]
fn enumeration_cardinality_up_to_12() {
    let start = Instant::now();
    for m in 2..=12u32 {
        for n in 2..=12u32 {
            let d = dims(m, n);
            let len = enumerate_threshold(d).unwrap().len();
            assert_eq!(BigInt::from(len), t_count(d), "cardinality at {d}");
        }
    }
    eprintln!("enumeration sweep to 12x12 took {:?}", start.elapsed());
}

#[test]
fn aggregate_matches_formulas_up_to_6() {
    for m in 2..=6u32 {
        for n in 2..=6u32 {
            let d = dims(m, n);
            let empirical = aggregate(d).unwrap();
            let closed = count_report(d).unwrap();
            assert_eq!(empirical, closed, "aggregate vs formulas at {d}");
            empirical.validate().unwrap();
        }
    }
}

#[test]
fn arrangement_triple_agreement_up_to_6() {
    for m in 2..=6u32 {
        for n in 2..=6u32 {
            let d = dims(m, n);
            let plane_geo = plane_arrangement(d);
            let plane_formula = plane_stats_formula(d);
            assert_eq!(plane_geo, plane_formula, "plane routes at {d}");
            let (c3, c4) = cell_census(d).unwrap();
            assert_eq!(BigInt::from(c3), plane_formula.c3, "census c3 at {d}");
            assert_eq!(BigInt::from(c4), plane_formula.c4, "census c4 at {d}");

            let tri_geo = triangle_arrangement(d);
            assert_eq!(
                tri_geo,
                triangle_stats_formula(d).unwrap(),
                "triangle routes at {d}"
            );
        }
    }
}

#[test]
fn teaching_sets_have_size_3_or_4_up_to_7() {
    for m in 2..=7u32 {
        for n in 2..=7u32 {
            let d = dims(m, n);
            for f in enumerate_threshold(d).unwrap() {
                let size = teaching_set(&f).unwrap().size;
                assert!(size == 3 || size == 4, "|T| = {size} at {d}");
            }
        }
    }
}

#[test]
fn teaching_points_always_inside_grid() {
    let d = dims(5, 4);
    for f in enumerate_threshold(d).unwrap() {
        let profile = teaching_set(&f).unwrap();
        let pts: BTreeSet<IntPoint> = profile.points.iter().map(|(p, _)| *p).collect();
        assert_eq!(pts.len(), profile.size);
        for p in pts {
            assert!(d.contains(p));
        }
    }
}
