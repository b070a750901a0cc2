//! Command-line front end: count tables, enumeration dumps, per-function
//! teaching queries, arrangement statistics and figures, and the full
//! verification sweep.
//!
//! Exit codes: 0 success (verify: all checks passed), 1 verification
//! failure, 2 usage or input error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use gridthresh::arrangement::{
    emit_arrangement_svg, plane_arrangement, triangle_arrangement, ArrangementMode, SvgOptions,
};
use gridthresh::formulas::{count_report, plane_stats_formula, triangle_stats_formula, GridDims};
use gridthresh::gridfn::{from_halfplane, Side};
use gridthresh::teaching::{profiles, teaching_set, TeachingProfile};
use gridthresh::verify::{run_suites, Suite};
use gridthresh::Rat;

#[derive(Parser)]
#[command(
    name = "gridthresh",
    about = "Exact counts, teaching sets and parameter-space arrangements of planar threshold functions",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print counting quantities for one grid as CSV or JSON.
    Count {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        /// Comma list of f1,f2,s,l,t,t3,t4,sigma,u,plane,triangle or 'all'.
        #[arg(long, default_value = "all")]
        quantities: String,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Write to a file instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Dump every threshold function with its teaching profile as JSONL.
    Enumerate {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Teaching profile of the function cut out by a line.
    Teach {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        /// Line coefficients "a0,a1,a2" for a1*x1 + a2*x2 = a0.
        #[arg(long)]
        line: String,
        /// Which side of the line carries the zeros.
        #[arg(long, default_value = "le")]
        side: String,
    },
    /// Geometric and closed-form partition statistics side by side.
    Arrange {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        mode: String,
        /// Also render the partition to this SVG file.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Run cross-check suites over a range of grid sizes.
    Verify {
        #[arg(long, default_value_t = 4)]
        max_m: u32,
        #[arg(long, default_value_t = 4)]
        max_n: u32,
        /// Comma list of formulas,identities,teaching,arrangement or 'all'.
        #[arg(long, default_value = "all")]
        checks: String,
        /// Worker threads for the sweep; 0 uses the available parallelism.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Include per-check elapsed times in the report.
        #[arg(long)]
        timings: bool,
    },
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run() -> anyhow::Result<ExitCode> {
    match Cli::parse().command {
        Command::Count {
            m,
            n,
            quantities,
            format,
            output,
        } => cmd_count(m, n, &quantities, format, output.as_deref()),
        Command::Enumerate { m, n, output } => cmd_enumerate(m, n, output.as_deref()),
        Command::Teach { m, n, line, side } => cmd_teach(m, n, &line, &side),
        Command::Arrange { m, n, mode, svg } => cmd_arrange(m, n, &mode, svg.as_deref()),
        Command::Verify {
            max_m,
            max_n,
            checks,
            jobs,
            timings,
        } => cmd_verify(max_m, max_n, &checks, jobs, timings),
    }
}

fn parse_dims(m: u32, n: u32) -> anyhow::Result<GridDims> {
    GridDims::new(m, n).map_err(|e| anyhow!(e))
}

fn open_sink(path: Option<&std::path::Path>) -> anyhow::Result<Box<dyn Write>> {
    match path {
        Some(p) => {
            let file = std::fs::File::create(p)
                .with_context(|| format!("could not write {}", p.display()))?;
            Ok(Box::new(std::io::BufWriter::new(file)))
        }
        None => Ok(Box::new(std::io::stdout().lock())),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Quantity {
    F1,
    F2,
    S,
    L,
    T,
    T3,
    T4,
    Sigma,
    U,
    Plane,
    Triangle,
}

const ALL_QUANTITIES: [Quantity; 11] = [
    Quantity::F1,
    Quantity::F2,
    Quantity::S,
    Quantity::L,
    Quantity::T,
    Quantity::T3,
    Quantity::T4,
    Quantity::Sigma,
    Quantity::U,
    Quantity::Plane,
    Quantity::Triangle,
];

fn parse_quantities(spec: &str) -> anyhow::Result<Vec<Quantity>> {
    if spec == "all" {
        return Ok(ALL_QUANTITIES.to_vec());
    }
    let mut out = Vec::new();
    for item in spec.split(',') {
        let q = match item.trim() {
            "f1" => Quantity::F1,
            "f2" => Quantity::F2,
            "s" => Quantity::S,
            "l" => Quantity::L,
            "t" => Quantity::T,
            "t3" => Quantity::T3,
            "t4" => Quantity::T4,
            "sigma" => Quantity::Sigma,
            "u" => Quantity::U,
            "plane" => Quantity::Plane,
            "triangle" => Quantity::Triangle,
            other => bail!("unknown quantity '{other}'"),
        };
        if !out.contains(&q) {
            out.push(q);
        }
    }
    Ok(out)
}

/// Fixed CSV column list; cells of unselected quantities stay empty.
const CSV_COLUMNS: [&str; 26] = [
    "m",
    "n",
    "f1",
    "f2",
    "s",
    "l",
    "t",
    "t3",
    "t4",
    "sigma_num",
    "sigma_den",
    "u01",
    "u02",
    "u11",
    "u12",
    "c",
    "c3",
    "c4",
    "e",
    "v",
    "v_inf",
    "tc",
    "tc3",
    "tc4",
    "te",
    "tv",
];

fn big_to_json(b: &num_bigint::BigInt) -> Value {
    match b.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(b.to_string()),
    }
}

fn sigma_decimal(sigma: &Rat) -> String {
    format!("{:.6}", sigma.to_f64().unwrap_or(f64::NAN))
}

fn cmd_count(
    m: u32,
    n: u32,
    quantities: &str,
    format: Format,
    output: Option<&std::path::Path>,
) -> anyhow::Result<ExitCode> {
    let dims = parse_dims(m, n)?;
    let selected = parse_quantities(quantities)?;
    let report = count_report(dims).map_err(|e| anyhow!(e))?;
    let plane = selected
        .contains(&Quantity::Plane)
        .then(|| plane_stats_formula(dims));
    let triangle = if selected.contains(&Quantity::Triangle) {
        Some(triangle_stats_formula(dims).map_err(|e| anyhow!(e))?)
    } else {
        None
    };

    let mut sink = open_sink(output)?;
    match format {
        Format::Csv => {
            let mut cells: Vec<String> = vec![String::new(); CSV_COLUMNS.len()];
            let mut put = |name: &str, value: String| {
                let idx = CSV_COLUMNS.iter().position(|c| *c == name).unwrap();
                cells[idx] = value;
            };
            put("m", m.to_string());
            put("n", n.to_string());
            for q in &selected {
                match q {
                    Quantity::F1 => put("f1", report.f1.to_string()),
                    Quantity::F2 => put("f2", report.f2.to_string()),
                    Quantity::S => put("s", report.s.to_string()),
                    Quantity::L => put("l", report.l.to_string()),
                    Quantity::T => put("t", report.t.to_string()),
                    Quantity::T3 => put("t3", report.t3.to_string()),
                    Quantity::T4 => put("t4", report.t4.to_string()),
                    Quantity::Sigma => {
                        put("sigma_num", report.sigma_bar.numer().to_string());
                        put("sigma_den", report.sigma_bar.denom().to_string());
                    }
                    Quantity::U => {
                        put("u01", report.u.u01.to_string());
                        put("u02", report.u.u02.to_string());
                        put("u11", report.u.u11.to_string());
                        put("u12", report.u.u12.to_string());
                    }
                    Quantity::Plane => {
                        let p = plane.as_ref().unwrap();
                        put("c", p.c.to_string());
                        put("c3", p.c3.to_string());
                        put("c4", p.c4.to_string());
                        put("e", p.e.to_string());
                        put("v", p.v.to_string());
                        put("v_inf", p.v_inf.to_string());
                    }
                    Quantity::Triangle => {
                        let t = triangle.as_ref().unwrap();
                        put("tc", t.c.to_string());
                        put("tc3", t.c3.to_string());
                        put("tc4", t.c4.to_string());
                        put("te", t.e.to_string());
                        put("tv", t.v.to_string());
                    }
                }
            }
            writeln!(sink, "{}", CSV_COLUMNS.join(","))?;
            writeln!(sink, "{}", cells.join(","))?;
        }
        Format::Json => {
            let mut obj = serde_json::Map::new();
            obj.insert("m".into(), Value::from(m));
            obj.insert("n".into(), Value::from(n));
            for q in &selected {
                match q {
                    Quantity::F1 => {
                        obj.insert("f1".into(), big_to_json(&report.f1));
                    }
                    Quantity::F2 => {
                        obj.insert("f2".into(), big_to_json(&report.f2));
                    }
                    Quantity::S => {
                        obj.insert("s".into(), big_to_json(&report.s));
                    }
                    Quantity::L => {
                        obj.insert("l".into(), big_to_json(&report.l));
                    }
                    Quantity::T => {
                        obj.insert("t".into(), big_to_json(&report.t));
                    }
                    Quantity::T3 => {
                        obj.insert("t3".into(), big_to_json(&report.t3));
                    }
                    Quantity::T4 => {
                        obj.insert("t4".into(), big_to_json(&report.t4));
                    }
                    Quantity::Sigma => {
                        obj.insert(
                            "sigma".into(),
                            json!({
                                "num": big_to_json(report.sigma_bar.numer()),
                                "den": big_to_json(report.sigma_bar.denom()),
                                "decimal": sigma_decimal(&report.sigma_bar),
                            }),
                        );
                    }
                    Quantity::U => {
                        obj.insert(
                            "u".into(),
                            json!({
                                "u01": big_to_json(&report.u.u01),
                                "u02": big_to_json(&report.u.u02),
                                "u11": big_to_json(&report.u.u11),
                                "u12": big_to_json(&report.u.u12),
                            }),
                        );
                    }
                    Quantity::Plane => {
                        let p = plane.as_ref().unwrap();
                        obj.insert(
                            "plane".into(),
                            json!({
                                "c": big_to_json(&p.c),
                                "c3": big_to_json(&p.c3),
                                "c4": big_to_json(&p.c4),
                                "e": big_to_json(&p.e),
                                "v": big_to_json(&p.v),
                                "v_inf": big_to_json(&p.v_inf),
                            }),
                        );
                    }
                    Quantity::Triangle => {
                        let t = triangle.as_ref().unwrap();
                        obj.insert(
                            "triangle".into(),
                            json!({
                                "c": big_to_json(&t.c),
                                "c3": big_to_json(&t.c3),
                                "c4": big_to_json(&t.c4),
                                "e": big_to_json(&t.e),
                                "v": big_to_json(&t.v),
                            }),
                        );
                    }
                }
            }
            writeln!(sink, "{}", Value::Object(obj))?;
        }
    }
    sink.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn profile_record(dims: GridDims, hex: &str, profile: &TeachingProfile) -> String {
    let mut teaching = String::from("[");
    for (i, (p, v)) in profile.points.iter().enumerate() {
        if i > 0 {
            teaching.push(',');
        }
        teaching.push_str(&format!(
            "{{\"x1\":{},\"x2\":{},\"value\":{}}}",
            p.x, p.y, *v as u8
        ));
    }
    teaching.push(']');
    format!(
        "{{\"m\":{},\"n\":{},\"bits\":\"{}\",\"teaching\":{},\"size\":{},\"nu\":{},\"kappa\":{}}}",
        dims.m(),
        dims.n(),
        hex,
        teaching,
        profile.size,
        profile.nu as u8,
        profile.kappa
    )
}

fn cmd_enumerate(m: u32, n: u32, output: Option<&std::path::Path>) -> anyhow::Result<ExitCode> {
    let dims = parse_dims(m, n)?;
    let all = profiles(dims).map_err(|e| anyhow!(e))?;
    let mut sink = open_sink(output)?;

    let mut t3 = 0u64;
    let mut t4 = 0u64;
    let mut u = [[0u64; 2]; 2];
    for (f, profile) in &all {
        writeln!(sink, "{}", profile_record(dims, &f.to_hex(), profile))?;
        match profile.size {
            3 => t3 += 1,
            _ => t4 += 1,
        }
        if profile.size == 3 && f.constant_value().is_none() {
            u[profile.nu as usize][profile.kappa - 1] += 1;
        }
    }
    let t = all.len() as u64;
    let sigma = Rat::new((3 * t3 + 4 * t4).into(), t.into());
    writeln!(
        sink,
        "{{\"summary\":{{\"t\":{},\"t3\":{},\"t4\":{},\"sigma_num\":{},\"sigma_den\":{},\"u01\":{},\"u02\":{},\"u11\":{},\"u12\":{}}}}}",
        t, t3, t4, sigma.numer(), sigma.denom(), u[0][0], u[0][1], u[1][0], u[1][1]
    )?;
    sink.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn parse_line_spec(spec: &str) -> anyhow::Result<(i64, i64, i64)> {
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        bail!("line spec must be 'a0,a1,a2', got '{spec}'");
    }
    let coeff = |s: &str| -> anyhow::Result<i64> {
        s.parse::<i64>()
            .with_context(|| format!("invalid line coefficient '{s}'"))
    };
    Ok((coeff(parts[0])?, coeff(parts[1])?, coeff(parts[2])?))
}

fn cmd_teach(m: u32, n: u32, line: &str, side: &str) -> anyhow::Result<ExitCode> {
    let dims = parse_dims(m, n)?;
    let (a0, a1, a2) = parse_line_spec(line)?;
    let side: Side = side.parse().map_err(|e: String| anyhow!(e))?;
    let f = from_halfplane(a0, a1, a2, dims, side).map_err(|e| anyhow!(e))?;
    let profile = teaching_set(&f).map_err(|e| anyhow!(e))?;

    println!(
        "function on {dims} from line {a1}*x1 + {a2}*x2 = {a0}, zeros on the '{}' side",
        match side {
            Side::Le => "le",
            Side::Gt => "gt",
        }
    );
    println!("teaching points:");
    for (p, v) in &profile.points {
        println!("  {p} -> {}", *v as u8);
    }
    println!(
        "size={} nu={} kappa={}",
        profile.size, profile.nu as u8, profile.kappa
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_arrange(
    m: u32,
    n: u32,
    mode: &str,
    svg: Option<&std::path::Path>,
) -> anyhow::Result<ExitCode> {
    let dims = parse_dims(m, n)?;
    let mode: ArrangementMode = mode.parse().map_err(|e: String| anyhow!(e))?;

    let (labels, geometric, formula): (Vec<&str>, Vec<String>, Vec<String>) = match mode {
        ArrangementMode::Plane => {
            let geo = plane_arrangement(dims);
            let form = plane_stats_formula(dims);
            (
                vec!["c", "c3", "c4", "e", "v", "v_inf"],
                vec![
                    geo.c.to_string(),
                    geo.c3.to_string(),
                    geo.c4.to_string(),
                    geo.e.to_string(),
                    geo.v.to_string(),
                    geo.v_inf.to_string(),
                ],
                vec![
                    form.c.to_string(),
                    form.c3.to_string(),
                    form.c4.to_string(),
                    form.e.to_string(),
                    form.v.to_string(),
                    form.v_inf.to_string(),
                ],
            )
        }
        ArrangementMode::Triangle => {
            let geo = triangle_arrangement(dims);
            let form = triangle_stats_formula(dims).map_err(|e| anyhow!(e))?;
            (
                vec!["c", "c3", "c4", "e", "v"],
                vec![
                    geo.c.to_string(),
                    geo.c3.to_string(),
                    geo.c4.to_string(),
                    geo.e.to_string(),
                    geo.v.to_string(),
                ],
                vec![
                    form.c.to_string(),
                    form.c3.to_string(),
                    form.c4.to_string(),
                    form.e.to_string(),
                    form.v.to_string(),
                ],
            )
        }
    };

    let mode_name = match mode {
        ArrangementMode::Plane => "plane",
        ArrangementMode::Triangle => "triangle",
    };
    println!("{mode_name} partition of {dims}");
    println!("{:<10}{:>12}{:>12}", "quantity", "geometric", "formula");
    let mut all_match = true;
    for ((label, geo), form) in labels.iter().zip(&geometric).zip(&formula) {
        println!("{label:<10}{geo:>12}{form:>12}");
        all_match &= geo == form;
    }
    println!("result: {}", if all_match { "MATCH" } else { "MISMATCH" });

    if let Some(path) = svg {
        emit_arrangement_svg(dims, mode, path, &SvgOptions::default()).map_err(|e| anyhow!(e))?;
        println!("svg written to {}", path.display());
    }
    Ok(if all_match {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn parse_suites(spec: &str) -> anyhow::Result<Vec<Suite>> {
    if spec == "all" {
        return Ok(vec![
            Suite::Formulas,
            Suite::Identities,
            Suite::Teaching,
            Suite::Arrangement,
        ]);
    }
    let mut suites = Vec::new();
    for item in spec.split(',') {
        let suite: Suite = item.trim().parse().map_err(|e: String| anyhow!(e))?;
        if !suites.contains(&suite) {
            suites.push(suite);
        }
    }
    Ok(suites)
}

fn cmd_verify(
    max_m: u32,
    max_n: u32,
    checks: &str,
    jobs: usize,
    timings: bool,
) -> anyhow::Result<ExitCode> {
    if max_m < 2 || max_n < 2 {
        bail!("--max-m and --max-n must be at least 2");
    }
    let suites = parse_suites(checks)?;
    let report = run_suites(&suites, max_m, max_n, jobs);
    print!("{}", report.render(timings));
    Ok(if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
