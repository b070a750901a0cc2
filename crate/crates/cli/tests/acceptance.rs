//! Acceptance suite: every criterion prints one PASS/FAIL line and pins its
//! expected values and tolerances in code. Run with `--nocapture` to see the
//! PASS lines of successful criteria.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use gridthresh::arrangement::{irredundant_constraints, plane_arrangement, triangle_arrangement};
use gridthresh::formulas::{
    count_report, f_int, line_count, plane_stats_formula, s_count, s_count_via_f1, sigma_bar,
    triangle_stats_formula, GridDims,
};
use gridthresh::gridfn::{
    adjacent_pairs_count, brute_force_threshold_count, distinct_lines_with_counts,
    enumerate_threshold, from_halfplane, lines_through_point, Side,
};
use gridthresh::teaching::{aggregate, profiles, teaching_set, verify_teaching};
use gridthresh::{IntPoint, Rat};

fn dims(m: u32, n: u32) -> GridDims {
    GridDims::new(m, n).unwrap()
}

fn criterion(name: &str, limit: Option<Duration>, body: impl FnOnce() -> Result<(), String>) {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    match &outcome {
        Ok(()) => println!("PASS  {name}  [{elapsed:.2?}]"),
        Err(e) => println!("FAIL  {name}: {e}"),
    }
    if let Err(e) = outcome {
        panic!("{name}: {e}");
    }
    if let Some(limit) = limit {
        assert!(
            elapsed <= limit,
            "{name} exceeded its runtime limit: {elapsed:?} > {limit:?}"
        );
    }
}

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

#[test]
fn acceptance_01_plane_partition_3x3() {
    criterion(
        "01 plane partition of 3x3 matches on both routes",
        Some(Duration::from_secs(1)),
        || {
            for (route, stats) in [
                ("geometric", plane_arrangement(dims(3, 3))),
                ("formula", plane_stats_formula(dims(3, 3))),
            ] {
                expect(&format!("{route} c"), stats.c.clone(), BigInt::from(29))?;
                expect(&format!("{route} c3"), stats.c3.clone(), BigInt::from(20))?;
                expect(&format!("{route} c4"), stats.c4.clone(), BigInt::from(9))?;
                expect(&format!("{route} e"), stats.e.clone(), BigInt::from(43))?;
                expect(&format!("{route} v"), stats.v.clone(), BigInt::from(15))?;
            }
            Ok(())
        },
    );
}

#[test]
fn acceptance_02_triangle_partition_4x4() {
    criterion(
        "02 triangle partition of 4x4 matches on both routes",
        Some(Duration::from_secs(1)),
        || {
            let formula = triangle_stats_formula(dims(4, 4)).map_err(|e| e.to_string())?;
            for (route, stats) in [
                ("geometric", triangle_arrangement(dims(4, 4))),
                ("formula", formula),
            ] {
                expect(&format!("{route} c"), stats.c.clone(), BigInt::from(47))?;
                expect(&format!("{route} c3"), stats.c3.clone(), BigInt::from(33))?;
                expect(&format!("{route} c4"), stats.c4.clone(), BigInt::from(14))?;
                expect(&format!("{route} e"), stats.e.clone(), BigInt::from(82))?;
                expect(&format!("{route} v"), stats.v.clone(), BigInt::from(36))?;
            }
            Ok(())
        },
    );
}

#[test]
fn acceptance_03_lines_through_inner_point_4x4() {
    criterion("03 lines through (1,1) on 4x4", None, || {
        expect(
            "line count",
            lines_through_point(dims(4, 4), IntPoint::new(1, 1)).map_err(|e| e.to_string())?,
            8,
        )
    });
}

#[test]
fn acceptance_04_teaching_sets_of_line_functions_10x10() {
    criterion(
        "04 teaching sets of the two 10x10 line functions",
        Some(Duration::from_secs(1)),
        || {
            let g = from_halfplane(55, 7, 5, dims(10, 10), Side::Le).map_err(|e| e.to_string())?;
            let profile = teaching_set(&g).map_err(|e| e.to_string())?;
            let got: BTreeSet<(IntPoint, bool)> = profile.points.iter().copied().collect();
            let want: BTreeSet<(IntPoint, bool)> = [
                (IntPoint::new(5, 4), false),
                (IntPoint::new(8, 0), true),
                (IntPoint::new(3, 7), true),
            ]
            .into_iter()
            .collect();
            expect("teaching set of 7*x1 + 5*x2 <= 55", got, want)?;

            let h = from_halfplane(22, 3, 2, dims(10, 10), Side::Le).map_err(|e| e.to_string())?;
            let profile = teaching_set(&h).map_err(|e| e.to_string())?;
            let got: BTreeSet<(IntPoint, bool)> = profile.points.iter().copied().collect();
            let want: BTreeSet<(IntPoint, bool)> = [
                (IntPoint::new(6, 2), false),
                (IntPoint::new(2, 8), false),
                (IntPoint::new(7, 1), true),
                (IntPoint::new(3, 7), true),
            ]
            .into_iter()
            .collect();
            expect("teaching set of 3*x1 + 2*x2 <= 22", got, want)
        },
    );
}

#[test]
fn acceptance_05_brute_force_count_up_to_4() {
    criterion(
        "05 brute-force threshold count equals f1 + 2 for m,n <= 4",
        Some(Duration::from_secs(30)),
        || {
            for m in 2..=4u32 {
                for n in 2..=4u32 {
                    let brute =
                        brute_force_threshold_count(dims(m, n)).map_err(|e| e.to_string())?;
                    let closed = f_int(1, m, n) + 2;
                    expect(&format!("count at {m}x{n}"), BigInt::from(brute), closed)?;
                }
            }
            Ok(())
        },
    );
}

#[test]
fn acceptance_06_aggregate_matches_closed_forms_up_to_8() {
    criterion(
        "06 enumerated aggregates equal closed forms for m,n <= 8",
        Some(Duration::from_secs(300)),
        || {
            for m in 2..=8u32 {
                for n in 2..=8u32 {
                    let d = dims(m, n);
                    let empirical = aggregate(d).map_err(|e| e.to_string())?;
                    let closed = count_report(d).map_err(|e| e.to_string())?;
                    expect(&format!("t at {d}"), empirical.t.clone(), closed.t.clone())?;
                    expect(
                        &format!("t3 at {d}"),
                        empirical.t3.clone(),
                        closed.t3.clone(),
                    )?;
                    expect(
                        &format!("t4 at {d}"),
                        empirical.t4.clone(),
                        closed.t4.clone(),
                    )?;
                    expect(
                        &format!("sigma at {d}"),
                        empirical.sigma_bar.clone(),
                        closed.sigma_bar.clone(),
                    )?;
                    expect(&format!("u at {d}"), empirical.u.clone(), closed.u.clone())?;
                }
            }
            Ok(())
        },
    );
}

#[test]
fn acceptance_07_teaching_structure_up_to_8() {
    criterion(
        "07 teaching-set structure for m,n <= 8 with definition-level check for m,n <= 4",
        None,
        || {
            for m in 2..=8u32 {
                for n in 2..=8u32 {
                    let d = dims(m, n);
                    for (f, profile) in profiles(d).map_err(|e| e.to_string())? {
                        if profile.size != 3 && profile.size != 4 {
                            return Err(format!(
                                "|T| = {} at {d} for {}",
                                profile.size,
                                f.to_hex()
                            ));
                        }
                        if profile.size == 4 && f.constant_value().is_none() && profile.kappa != 2 {
                            return Err(format!(
                                "size-4 set with kappa {} at {d} for {}",
                                profile.kappa,
                                f.to_hex()
                            ));
                        }
                    }
                }
            }
            for m in 2..=4u32 {
                for n in 2..=4u32 {
                    let d = dims(m, n);
                    for (f, profile) in profiles(d).map_err(|e| e.to_string())? {
                        let pts: Vec<IntPoint> = profile.points.iter().map(|(p, _)| *p).collect();
                        if !verify_teaching(&f, &pts).map_err(|e| e.to_string())? {
                            return Err(format!(
                                "teaching set fails to teach {} at {d}",
                                f.to_hex()
                            ));
                        }
                        for skip in 0..pts.len() {
                            let reduced: Vec<IntPoint> = pts
                                .iter()
                                .enumerate()
                                .filter(|(i, _)| *i != skip)
                                .map(|(_, p)| *p)
                                .collect();
                            if verify_teaching(&f, &reduced).map_err(|e| e.to_string())? {
                                return Err(format!(
                                    "teaching set of {} at {d} is not minimal",
                                    f.to_hex()
                                ));
                            }
                        }
                    }
                }
            }
            Ok(())
        },
    );
}

#[test]
fn acceptance_08_irredundant_equals_teaching_up_to_6() {
    criterion(
        "08 irredundant constraints equal teaching sets for m,n <= 6",
        None,
        || {
            let origin = IntPoint::new(0, 0);
            for m in 2..=6u32 {
                for n in 2..=6u32 {
                    let d = dims(m, n);
                    for f in enumerate_threshold(d).map_err(|e| e.to_string())? {
                        if f.get(origin) {
                            continue;
                        }
                        let irr = irredundant_constraints(&f).map_err(|e| e.to_string())?;
                        let teach: BTreeSet<IntPoint> = teaching_set(&f)
                            .map_err(|e| e.to_string())?
                            .points
                            .into_iter()
                            .map(|(p, _)| p)
                            .collect();
                        if irr != teach {
                            return Err(format!(
                                "routes disagree at {d} for {}: {irr:?} vs {teach:?}",
                                f.to_hex()
                            ));
                        }
                    }
                }
            }
            Ok(())
        },
    );
}

#[test]
fn acceptance_09_identity_suite_up_to_10() {
    criterion("09 pairwise identity suite for m,n <= 10", None, || {
        for m in 2..=10u32 {
            for n in 2..=10u32 {
                let d = dims(m, n);
                expect(
                    &format!("adjacent pairs at {d}"),
                    BigInt::from(adjacent_pairs_count(d)),
                    f_int(1, m, n),
                )?;
                let lines = distinct_lines_with_counts(d);
                expect(
                    &format!("distinct lines at {d}"),
                    BigInt::from(lines.len()),
                    line_count(d),
                )?;
                expect(
                    &format!("s expressions at {d}"),
                    s_count(d),
                    s_count_via_f1(d),
                )?;
                let sum: u64 = lines.iter().map(|(_, z)| z - 1).sum();
                expect(
                    &format!("incidence sum at {d}"),
                    BigInt::from(2 * sum),
                    f_int(1, m, n),
                )?;

                let plane_formula = plane_stats_formula(d);
                plane_formula
                    .validate()
                    .map_err(|e| format!("plane euler audit at {d}: {e}"))?;
                let plane_geo = plane_arrangement(d);
                plane_geo
                    .validate()
                    .map_err(|e| format!("geometric plane euler audit at {d}: {e}"))?;
                expect(&format!("plane routes at {d}"), plane_geo, plane_formula)?;

                let tri_formula = triangle_stats_formula(d).map_err(|e| e.to_string())?;
                tri_formula
                    .validate(d)
                    .map_err(|e| format!("triangle euler audit at {d}: {e}"))?;
                let tri_geo = triangle_arrangement(d);
                tri_geo
                    .validate(d)
                    .map_err(|e| format!("geometric triangle euler audit at {d}: {e}"))?;
                expect(&format!("triangle routes at {d}"), tri_geo, tri_formula)?;

                // Slope classes of the plane lines are s + 2.
                let detail = gridthresh::arrangement::plane_arrangement_detail(d);
                expect(
                    &format!("slope classes at {d}"),
                    BigInt::from(detail.slope_classes),
                    s_count(d) + 2,
                )?;
            }
        }
        Ok(())
    });
}

#[test]
fn acceptance_10_asymptotic_trends() {
    criterion(
        "10 asymptotic trends of sigma and f1",
        Some(Duration::from_secs(10)),
        || {
            let seven_halves = Rat::new(BigInt::from(7), BigInt::from(2));
            let gaps: Vec<Rat> = [10u32, 20, 40, 80]
                .iter()
                .map(|&n| (sigma_bar(dims(n, n)) - &seven_halves).abs())
                .collect();
            for w in gaps.windows(2) {
                if w[1] > w[0] {
                    return Err(format!("|sigma - 7/2| increased: {} -> {}", w[0], w[1]));
                }
            }
            let bound = Rat::new(BigInt::from(1), BigInt::from(20));
            if gaps[3] >= bound {
                return Err(format!("|sigma(80,80) - 7/2| = {} >= 1/20", gaps[3]));
            }

            let n = 200u32;
            let f1 = f_int(1, n, n).to_f64().ok_or("f1 does not fit f64")?;
            let ratio = f1 / (n as f64).powi(4);
            let target = 6.0 / (std::f64::consts::PI * std::f64::consts::PI);
            let rel = (ratio - target).abs() / target;
            if rel >= 0.05 {
                return Err(format!(
                    "f1(200,200)/200^4 = {ratio:.6} differs from 6/pi^2 = {target:.6} by {rel:.3}"
                ));
            }
            Ok(())
        },
    );
}

#[test]
fn acceptance_11_cli_determinism() {
    criterion("11 byte-identical CLI outputs across runs", None, || {
        let bin = env!("CARGO_BIN_EXE_gridthresh");
        let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;

        let run = |args: &[&str]| -> Result<(Vec<u8>, Vec<u8>), String> {
            let out = Command::new(bin)
                .args(args)
                .output()
                .map_err(|e| e.to_string())?;
            if !out.status.success() {
                return Err(format!(
                    "command {args:?} failed: {}",
                    String::from_utf8_lossy(&out.stderr)
                ));
            }
            Ok((out.stdout, out.stderr))
        };

        // enumerate
        let a = run(&["enumerate", "--m", "3", "--n", "4"])?;
        let b = run(&["enumerate", "--m", "3", "--n", "4"])?;
        if a != b {
            return Err("enumerate output differs between runs".into());
        }

        // arrange --svg
        let svg1 = tmp.path().join("a.svg");
        let svg2 = tmp.path().join("b.svg");
        let a = run(&[
            "arrange",
            "--m",
            "3",
            "--n",
            "3",
            "--mode",
            "plane",
            "--svg",
            svg1.to_str().unwrap(),
        ])?;
        let b = run(&[
            "arrange",
            "--m",
            "3",
            "--n",
            "3",
            "--mode",
            "plane",
            "--svg",
            svg2.to_str().unwrap(),
        ])?;
        let s1 = std::fs::read(&svg1).map_err(|e| e.to_string())?;
        let s2 = std::fs::read(&svg2).map_err(|e| e.to_string())?;
        // Stdout mentions differing paths; compare the table portion.
        let strip = |bytes: &[u8]| -> Vec<u8> {
            let text = String::from_utf8_lossy(bytes);
            text.lines()
                .filter(|l| !l.starts_with("svg written"))
                .collect::<Vec<_>>()
                .join("\n")
                .into_bytes()
        };
        if strip(&a.0) != strip(&b.0) || s1 != s2 {
            return Err("arrange output differs between runs".into());
        }

        // verify
        let a = run(&["verify", "--max-m", "4", "--max-n", "4", "--checks", "all"])?;
        let b = run(&["verify", "--max-m", "4", "--max-n", "4", "--checks", "all"])?;
        // Different job counts must agree too.
        let c = run(&[
            "verify", "--max-m", "4", "--max-n", "4", "--checks", "all", "--jobs", "1",
        ])?;
        if a != b || a.0 != c.0 {
            return Err("verify output differs between runs".into());
        }
        Ok(())
    });
}
