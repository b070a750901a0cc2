//! Cross-check sweep: every identity the crate exposes, run over a range
//! of grid dimensions with deterministic reporting.
//!
//! A check is a pure function of the dims that either passes or returns a
//! counterexample description. The runner evaluates (dims, check) cells,
//! optionally across threads, and aggregates per check with the smallest
//! failing dims reported first. Output never depends on the job count.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use crate::arrangement::{
    cell_census, irredundant_constraints, plane_arrangement, triangle_arrangement,
};
use crate::exact::IntPoint;
use crate::formulas::{
    count_report, f_int, line_count, plane_stats_formula, s_count, s_count_via_f1, t_count,
    triangle_stats_formula, GridDims,
};
use crate::gridfn::{
    adjacent_pairs_count, brute_force_threshold_count, distinct_lines_with_counts,
    enumerate_threshold, lines_through_point, pairs_with_gcd,
};
use crate::teaching::{aggregate, profiles, teaching_set, verify_teaching};

/// Check suites selectable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Formulas,
    Identities,
    Teaching,
    Arrangement,
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Formulas => "formulas",
            Suite::Identities => "identities",
            Suite::Teaching => "teaching",
            Suite::Arrangement => "arrangement",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "formulas" => Ok(Suite::Formulas),
            "identities" => Ok(Suite::Identities),
            "teaching" => Ok(Suite::Teaching),
            "arrangement" => Ok(Suite::Arrangement),
            other => Err(format!("unknown check suite '{other}'")),
        }
    }
}

type CheckFn = fn(GridDims) -> Result<(), String>;

/// One named cross-check, evaluated per dims cell.
pub struct Check {
    pub name: &'static str,
    pub suite: Suite,
    /// Cells with more grid points than this are skipped.
    pub max_points: Option<u64>,
    pub run: CheckFn,
}

/// Outcome of one check over the whole swept range.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub suite: &'static str,
    pub max_m: u32,
    pub max_n: u32,
    pub cells_run: usize,
    pub cells_skipped: usize,
    pub passed: bool,
    /// Failure from the smallest (m, n, check) cell, when any.
    pub first_counterexample: Option<String>,
    pub elapsed: Duration,
}

/// Results of a verification sweep.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub results: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    /// Plain-text rendering; timings are opt-in so that the default output
    /// is byte-identical across runs.
    pub fn render(&self, with_timings: bool) -> String {
        let mut out = String::new();
        for r in &self.results {
            let status = if r.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "{status}  {name}  dims<=({max_m},{max_n}) cells={cells}",
                name = r.name,
                max_m = r.max_m,
                max_n = r.max_n,
                cells = r.cells_run,
            ));
            if r.cells_skipped > 0 {
                out.push_str(&format!(" skipped={}", r.cells_skipped));
            }
            if with_timings {
                out.push_str(&format!(" elapsed={:?}", r.elapsed));
            }
            out.push('\n');
            if let Some(ce) = &r.first_counterexample {
                out.push_str(&format!("      counterexample: {ce}\n"));
            }
        }
        let status = if self.all_passed() {
            "all checks passed"
        } else {
            "CHECKS FAILED"
        };
        out.push_str(&format!("{status} ({} checks)\n", self.results.len()));
        out
    }
}

fn fail(dims: GridDims, what: impl std::fmt::Display) -> Result<(), String> {
    Err(format!("m={} n={}: {}", dims.m(), dims.n(), what))
}

fn check_count_report_invariants(dims: GridDims) -> Result<(), String> {
    let report = count_report(dims).map_err(|e| e.to_string())?;
    report
        .validate()
        .map_err(|e| format!("m={} n={}: {e}", dims.m(), dims.n()))
}

fn check_s_expressions(dims: GridDims) -> Result<(), String> {
    let direct = s_count(dims);
    let via_f1 = s_count_via_f1(dims);
    if direct != via_f1 {
        return fail(dims, format!("s direct={direct} via-f1={via_f1}"));
    }
    Ok(())
}

fn check_formula_euler_plane(dims: GridDims) -> Result<(), String> {
    plane_stats_formula(dims)
        .validate()
        .map_err(|e| format!("m={} n={}: {e}", dims.m(), dims.n()))
}

fn check_formula_euler_triangle(dims: GridDims) -> Result<(), String> {
    triangle_stats_formula(dims)
        .map_err(|e| e.to_string())?
        .validate(dims)
        .map_err(|e| format!("m={} n={}: {e}", dims.m(), dims.n()))
}

fn check_adjacent_pairs(dims: GridDims) -> Result<(), String> {
    let scanned = BigInt::from(adjacent_pairs_count(dims));
    let formula = f_int(1, dims.m(), dims.n());
    if scanned != formula {
        return fail(
            dims,
            format!("adjacent pairs scanned={scanned} f1={formula}"),
        );
    }
    Ok(())
}

fn check_gcd2_pairs(dims: GridDims) -> Result<(), String> {
    let scanned = BigInt::from(pairs_with_gcd(dims, 2));
    let formula = f_int(2, dims.m(), dims.n());
    if scanned != formula {
        return fail(dims, format!("gcd-2 pairs scanned={scanned} f2={formula}"));
    }
    Ok(())
}

fn check_line_count(dims: GridDims) -> Result<(), String> {
    let scanned = BigInt::from(distinct_lines_with_counts(dims).len());
    let formula = line_count(dims);
    if scanned != formula {
        return fail(
            dims,
            format!("distinct lines scanned={scanned} formula={formula}"),
        );
    }
    Ok(())
}

fn check_incidence_sum(dims: GridDims) -> Result<(), String> {
    let lines = distinct_lines_with_counts(dims);
    let sum: u64 = lines.iter().map(|(_, z)| z - 1).sum();
    let f1 = f_int(1, dims.m(), dims.n());
    if BigInt::from(2 * sum) != f1 {
        return fail(dims, format!("2 * sum of (z-1) = {} != f1 = {f1}", 2 * sum));
    }
    let sum_z: u64 = lines.iter().map(|(_, z)| z).sum();
    let mut per_point = 0u64;
    for p in dims.points() {
        per_point += lines_through_point(dims, p).map_err(|e| e.to_string())?;
    }
    if per_point != sum_z {
        return fail(
            dims,
            format!("incidences by points={per_point} by lines={sum_z}"),
        );
    }
    Ok(())
}

fn check_enumeration_count(dims: GridDims) -> Result<(), String> {
    let swept = enumerate_threshold(dims).map_err(|e| e.to_string())?.len();
    let closed = t_count(dims);
    if BigInt::from(swept) != closed {
        return fail(dims, format!("enumerated {swept} functions, t = {closed}"));
    }
    Ok(())
}

fn check_brute_force_count(dims: GridDims) -> Result<(), String> {
    let brute = brute_force_threshold_count(dims).map_err(|e| e.to_string())?;
    let closed = t_count(dims);
    if BigInt::from(brute) != closed {
        return fail(dims, format!("brute force {brute}, t = {closed}"));
    }
    Ok(())
}

fn check_aggregate_matches_formulas(dims: GridDims) -> Result<(), String> {
    let empirical = aggregate(dims).map_err(|e| e.to_string())?;
    let closed = count_report(dims).map_err(|e| e.to_string())?;
    if empirical != closed {
        return fail(
            dims,
            format!(
                "aggregate (t={}, t3={}, t4={}, sigma={}, u=({},{},{},{})) vs formulas (t={}, t3={}, t4={}, sigma={}, u=({},{},{},{}))",
                empirical.t, empirical.t3, empirical.t4, empirical.sigma_bar,
                empirical.u.u01, empirical.u.u02, empirical.u.u11, empirical.u.u12,
                closed.t, closed.t3, closed.t4, closed.sigma_bar,
                closed.u.u01, closed.u.u02, closed.u.u11, closed.u.u12,
            ),
        );
    }
    Ok(())
}

fn check_profile_structure(dims: GridDims) -> Result<(), String> {
    for (f, profile) in profiles(dims).map_err(|e| e.to_string())? {
        if profile.size != 3 && profile.size != 4 {
            return fail(dims, format!("|T| = {} for {}", profile.size, f.to_hex()));
        }
        if profile.size == 4 && f.constant_value().is_none() && profile.kappa != 2 {
            return fail(
                dims,
                format!(
                    "size-4 set with kappa = {} for {}",
                    profile.kappa,
                    f.to_hex()
                ),
            );
        }
        let complement = teaching_set(&f.complemented()).map_err(|e| e.to_string())?;
        if complement.size != profile.size {
            return fail(dims, format!("complement changes |T| for {}", f.to_hex()));
        }
    }
    Ok(())
}

fn check_definition_level_teaching(dims: GridDims) -> Result<(), String> {
    for (f, profile) in profiles(dims).map_err(|e| e.to_string())? {
        let pts: Vec<IntPoint> = profile.points.iter().map(|(p, _)| *p).collect();
        if !verify_teaching(&f, &pts).map_err(|e| e.to_string())? {
            return fail(dims, format!("teaching set fails to teach {}", f.to_hex()));
        }
        for skip in 0..pts.len() {
            let reduced: Vec<IntPoint> = pts
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, p)| *p)
                .collect();
            if verify_teaching(&f, &reduced).map_err(|e| e.to_string())? {
                return fail(
                    dims,
                    format!("dropping {} keeps {} taught", pts[skip], f.to_hex()),
                );
            }
        }
    }
    Ok(())
}

fn check_essential_incidence(dims: GridDims) -> Result<(), String> {
    // Sum over points of "functions where p is essential" must equal both
    // 4 * sum of lines-through-point and sigma * t.
    let all = profiles(dims).map_err(|e| e.to_string())?;
    let mut essential_total = 0u64;
    for (_, profile) in &all {
        essential_total += profile.size as u64;
    }
    let mut line_total = 0u64;
    for p in dims.points() {
        line_total += lines_through_point(dims, p).map_err(|e| e.to_string())?;
    }
    if essential_total != 4 * line_total {
        return fail(
            dims,
            format!(
                "sum |T| = {essential_total} != 4 * incidences = {}",
                4 * line_total
            ),
        );
    }
    let report = count_report(dims).map_err(|e| e.to_string())?;
    let sigma_t = &report.sigma_bar * crate::exact::Rat::from_integer(report.t.clone());
    if sigma_t != crate::exact::Rat::from_integer(BigInt::from(essential_total)) {
        return fail(
            dims,
            format!("sum |T| = {essential_total} != sigma * t = {sigma_t}"),
        );
    }
    Ok(())
}

fn check_plane_geometry(dims: GridDims) -> Result<(), String> {
    let geo = plane_arrangement(dims);
    geo.validate().map_err(|e| {
        format!(
            "m={} n={}: geometric plane stats invalid: {e}",
            dims.m(),
            dims.n()
        )
    })?;
    let formula = plane_stats_formula(dims);
    if geo != formula {
        return fail(
            dims,
            format!(
                "plane geometric c/c3/c4/e/v/vinf = {}/{}/{}/{}/{}/{} vs formula {}/{}/{}/{}/{}/{}",
                geo.c,
                geo.c3,
                geo.c4,
                geo.e,
                geo.v,
                geo.v_inf,
                formula.c,
                formula.c3,
                formula.c4,
                formula.e,
                formula.v,
                formula.v_inf
            ),
        );
    }
    let s = s_count(dims);
    if geo.v_inf != &s + 2 {
        return fail(
            dims,
            format!("slope classes {} != s + 2 = {}", geo.v_inf, s + 2),
        );
    }
    Ok(())
}

fn check_triangle_geometry(dims: GridDims) -> Result<(), String> {
    let geo = triangle_arrangement(dims);
    geo.validate(dims).map_err(|e| {
        format!(
            "m={} n={}: geometric triangle stats invalid: {e}",
            dims.m(),
            dims.n()
        )
    })?;
    let formula = triangle_stats_formula(dims).map_err(|e| e.to_string())?;
    if geo != formula {
        return fail(
            dims,
            format!(
                "triangle geometric c/c3/c4/e/v = {}/{}/{}/{}/{} vs formula {}/{}/{}/{}/{}",
                geo.c,
                geo.c3,
                geo.c4,
                geo.e,
                geo.v,
                formula.c,
                formula.c3,
                formula.c4,
                formula.e,
                formula.v
            ),
        );
    }
    Ok(())
}

fn check_cell_census(dims: GridDims) -> Result<(), String> {
    let (c3, c4) = cell_census(dims).map_err(|e| e.to_string())?;
    let formula = plane_stats_formula(dims);
    let geo = plane_arrangement(dims);
    if BigInt::from(c3) != formula.c3 || BigInt::from(c4) != formula.c4 {
        return fail(
            dims,
            format!(
                "census ({c3}, {c4}) vs formula ({}, {})",
                formula.c3, formula.c4
            ),
        );
    }
    if geo.c3 != formula.c3 || geo.c4 != formula.c4 {
        return fail(
            dims,
            format!(
                "geometric ({}, {}) vs formula ({}, {})",
                geo.c3, geo.c4, formula.c3, formula.c4
            ),
        );
    }
    Ok(())
}

fn check_irredundant_bijection(dims: GridDims) -> Result<(), String> {
    let origin = IntPoint::new(0, 0);
    for f in enumerate_threshold(dims).map_err(|e| e.to_string())? {
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
            return fail(
                dims,
                format!(
                    "irredundant {:?} != teaching {:?} for {}",
                    irr,
                    teach,
                    f.to_hex()
                ),
            );
        }
    }
    Ok(())
}

/// The full built-in check registry.
pub fn builtin_checks() -> Vec<Check> {
    vec![
        Check {
            name: "formulas/count-report-invariants",
            suite: Suite::Formulas,
            max_points: None,
            run: check_count_report_invariants,
        },
        Check {
            name: "formulas/s-expressions-agree",
            suite: Suite::Formulas,
            max_points: None,
            run: check_s_expressions,
        },
        Check {
            name: "formulas/euler-plane",
            suite: Suite::Formulas,
            max_points: None,
            run: check_formula_euler_plane,
        },
        Check {
            name: "formulas/euler-triangle",
            suite: Suite::Formulas,
            max_points: None,
            run: check_formula_euler_triangle,
        },
        Check {
            name: "identities/adjacent-pairs-f1",
            suite: Suite::Identities,
            max_points: None,
            run: check_adjacent_pairs,
        },
        Check {
            name: "identities/gcd2-pairs-f2",
            suite: Suite::Identities,
            max_points: None,
            run: check_gcd2_pairs,
        },
        Check {
            name: "identities/line-count",
            suite: Suite::Identities,
            max_points: None,
            run: check_line_count,
        },
        Check {
            name: "identities/incidence-sum",
            suite: Suite::Identities,
            max_points: None,
            run: check_incidence_sum,
        },
        Check {
            name: "teaching/enumeration-count",
            suite: Suite::Teaching,
            max_points: Some(100),
            run: check_enumeration_count,
        },
        Check {
            name: "teaching/bruteforce-count",
            suite: Suite::Teaching,
            max_points: Some(16),
            run: check_brute_force_count,
        },
        Check {
            name: "teaching/aggregate-matches-formulas",
            suite: Suite::Teaching,
            max_points: Some(100),
            run: check_aggregate_matches_formulas,
        },
        Check {
            name: "teaching/profile-structure",
            suite: Suite::Teaching,
            max_points: Some(100),
            run: check_profile_structure,
        },
        Check {
            name: "teaching/definition-verify",
            suite: Suite::Teaching,
            max_points: Some(16),
            run: check_definition_level_teaching,
        },
        Check {
            name: "teaching/essential-incidence",
            suite: Suite::Teaching,
            max_points: Some(100),
            run: check_essential_incidence,
        },
        Check {
            name: "arrangement/plane-geometric-vs-formula",
            suite: Suite::Arrangement,
            max_points: Some(150),
            run: check_plane_geometry,
        },
        Check {
            name: "arrangement/triangle-geometric-vs-formula",
            suite: Suite::Arrangement,
            max_points: Some(150),
            run: check_triangle_geometry,
        },
        Check {
            name: "arrangement/cell-census-triple",
            suite: Suite::Arrangement,
            max_points: Some(100),
            run: check_cell_census,
        },
        Check {
            name: "arrangement/irredundant-equals-teaching",
            suite: Suite::Arrangement,
            max_points: Some(36),
            run: check_irredundant_bijection,
        },
    ]
}

struct CellOutcome {
    m: u32,
    n: u32,
    check_idx: usize,
    error: Option<String>,
    elapsed: Duration,
}

/// Runs `checks` over every dims with 2 <= m <= max_m, 2 <= n <= max_n.
/// `jobs` threads share the cells; 0 means the available parallelism. The
/// report is identical whatever the job count.
pub fn run_checks(checks: &[Check], max_m: u32, max_n: u32, jobs: usize) -> VerifyReport {
    let mut cells: Vec<(u32, u32, usize)> = Vec::new();
    let mut skipped = vec![0usize; checks.len()];
    for m in 2..=max_m.max(2) {
        for n in 2..=max_n.max(2) {
            let points = m as u64 * n as u64;
            for (idx, check) in checks.iter().enumerate() {
                match check.max_points {
                    Some(cap) if points > cap => skipped[idx] += 1,
                    _ => cells.push((m, n, idx)),
                }
            }
        }
    }

    let jobs = if jobs == 0 {
        std::thread::available_parallelism()
            .map(|v| v.get())
            .unwrap_or(1)
    } else {
        jobs
    };
    let jobs = jobs.max(1).min(cells.len().max(1));

    let run_cell = |&(m, n, idx): &(u32, u32, usize)| -> CellOutcome {
        let dims = GridDims::new(m, n).expect("sweep dims are valid");
        let start = Instant::now();
        let error = (checks[idx].run)(dims).err();
        CellOutcome {
            m,
            n,
            check_idx: idx,
            error,
            elapsed: start.elapsed(),
        }
    };

    let mut outcomes: Vec<CellOutcome> = if jobs <= 1 {
        cells.iter().map(run_cell).collect()
    } else {
        std::thread::scope(|scope| {
            let mut handles = Vec::new();
            for worker in 0..jobs {
                let cells = &cells;
                let run_cell = &run_cell;
                handles.push(scope.spawn(move || {
                    cells
                        .iter()
                        .skip(worker)
                        .step_by(jobs)
                        .map(run_cell)
                        .collect::<Vec<_>>()
                }));
            }
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("verify worker panicked"))
                .collect()
        })
    };

    // Counterexamples are reported from the smallest (m, n, check) cell.
    outcomes.sort_by_key(|o| (o.m, o.n, o.check_idx));

    let mut results: Vec<CheckResult> = checks
        .iter()
        .enumerate()
        .map(|(idx, c)| CheckResult {
            name: c.name.to_string(),
            suite: c.suite.name(),
            max_m: max_m.max(2),
            max_n: max_n.max(2),
            cells_run: 0,
            cells_skipped: skipped[idx],
            passed: true,
            first_counterexample: None,
            elapsed: Duration::ZERO,
        })
        .collect();
    for outcome in outcomes {
        let result = &mut results[outcome.check_idx];
        result.cells_run += 1;
        result.elapsed += outcome.elapsed;
        if let Some(err) = outcome.error {
            result.passed = false;
            if result.first_counterexample.is_none() {
                result.first_counterexample = Some(err);
            }
        }
    }
    VerifyReport { results }
}

/// Runs the built-in checks restricted to the selected suites.
pub fn run_suites(suites: &[Suite], max_m: u32, max_n: u32, jobs: usize) -> VerifyReport {
    let checks: Vec<Check> = builtin_checks()
        .into_iter()
        .filter(|c| suites.contains(&c.suite))
        .collect();
    run_checks(&checks, max_m, max_n, jobs)
}
