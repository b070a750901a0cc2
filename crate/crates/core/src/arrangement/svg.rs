//! Deterministic SVG rendering of the parameter-space partitions.

use std::io::Write;
use std::path::Path;

use num_traits::ToPrimitive;

use crate::error::Result;
use crate::exact::{line_intersection, rat_int, Line, LineIntersection, Rat, RatPoint};
use crate::formulas::GridDims;

use super::{plane_arrangement_detail, triangle_arrangement_detail};

/// Which partition to draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArrangementMode {
    Plane,
    Triangle,
}

impl std::str::FromStr for ArrangementMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "plane" => Ok(ArrangementMode::Plane),
            "triangle" => Ok(ArrangementMode::Triangle),
            other => Err(format!("mode must be 'plane' or 'triangle', got '{other}'")),
        }
    }
}

/// Rendering options. The viewport only matters in plane mode, where the
/// infinite lines are clipped to it; triangle mode always frames the unit
/// triangle.
#[derive(Debug, Clone)]
pub struct SvgOptions {
    pub view_min: i64,
    pub view_max: i64,
    pub size_px: u32,
    pub margin_px: u32,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            view_min: -2,
            view_max: 2,
            size_px: 800,
            margin_px: 40,
        }
    }
}

struct Mapper {
    xmin: f64,
    ymin: f64,
    span: f64,
    inner: f64,
    margin: f64,
}

impl Mapper {
    fn new(xmin: f64, ymin: f64, span: f64, opts: &SvgOptions) -> Self {
        Mapper {
            xmin,
            ymin,
            span,
            inner: (opts.size_px - 2 * opts.margin_px) as f64,
            margin: opts.margin_px as f64,
        }
    }

    fn x(&self, v: &Rat) -> f64 {
        self.margin + (v.to_f64().unwrap() - self.xmin) / self.span * self.inner
    }

    fn y(&self, v: &Rat) -> f64 {
        // SVG y grows downward.
        self.margin + (self.ymin + self.span - v.to_f64().unwrap()) / self.span * self.inner
    }
}

fn push_segment(out: &mut String, map: &Mapper, a: &RatPoint, b: &RatPoint) {
    out.push_str(&format!(
        "  <line x1=\"{:.4}\" y1=\"{:.4}\" x2=\"{:.4}\" y2=\"{:.4}\" stroke=\"black\" stroke-width=\"1\"/>\n",
        map.x(&a.x),
        map.y(&a.y),
        map.x(&b.x),
        map.y(&b.y)
    ));
}

fn push_vertex(out: &mut String, map: &Mapper, v: &RatPoint) {
    out.push_str(&format!(
        "  <circle cx=\"{:.4}\" cy=\"{:.4}\" r=\"3\" fill=\"red\"/>\n",
        map.x(&v.x),
        map.y(&v.y)
    ));
}

fn in_viewport(p: &RatPoint, lo: &Rat, hi: &Rat) -> bool {
    &p.x >= lo && &p.x <= hi && &p.y >= lo && &p.y <= hi
}

/// Clips a line to the square viewport [vmin, vmax]^2; None when it misses.
fn clip_line(line: &Line, vmin: i64, vmax: i64) -> Option<(RatPoint, RatPoint)> {
    let lo = rat_int(vmin);
    let hi = rat_int(vmax);
    let border_lines = [
        Line::new(vmin, 1, 0).unwrap(),
        Line::new(vmax, 1, 0).unwrap(),
        Line::new(vmin, 0, 1).unwrap(),
        Line::new(vmax, 0, 1).unwrap(),
    ];
    let mut hits: Vec<RatPoint> = Vec::new();
    for border in &border_lines {
        if let LineIntersection::Point(p) = line_intersection(line, border) {
            if in_viewport(&p, &lo, &hi) && !hits.contains(&p) {
                hits.push(p);
            }
        }
    }
    if hits.len() < 2 {
        return None;
    }
    // Along any line, lexicographic order on (x, y) is monotone, so the
    // extremes are the clipped endpoints.
    hits.sort();
    let last = hits.pop().unwrap();
    let first = hits.into_iter().next().unwrap();
    Some((first, last))
}

/// Renders the requested partition as an SVG document string. Byte-identical
/// for identical inputs.
pub fn arrangement_svg_string(dims: GridDims, mode: ArrangementMode, opts: &SvgOptions) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" viewBox=\"0 0 {0} {0}\">\n",
        opts.size_px
    ));
    out.push_str("  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    match mode {
        ArrangementMode::Plane => {
            let lo = rat_int(opts.view_min);
            let hi = rat_int(opts.view_max);
            let map = Mapper::new(
                opts.view_min as f64,
                opts.view_min as f64,
                (opts.view_max - opts.view_min) as f64,
                opts,
            );
            let detail = plane_arrangement_detail(dims);
            for line in &detail.lines {
                if let Some((a, b)) = clip_line(line, opts.view_min, opts.view_max) {
                    push_segment(&mut out, &map, &a, &b);
                }
            }
            for v in &detail.vertices {
                if in_viewport(v, &lo, &hi) {
                    push_vertex(&mut out, &map, v);
                }
            }
        }
        ArrangementMode::Triangle => {
            let map = Mapper::new(-0.1, -0.1, 1.2, opts);
            let detail = triangle_arrangement_detail(dims);
            for (a, b) in &detail.segments {
                push_segment(&mut out, &map, a, b);
            }
            for v in &detail.vertex_points {
                push_vertex(&mut out, &map, v);
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Writes the SVG to `path`.
pub fn emit_arrangement_svg(
    dims: GridDims,
    mode: ArrangementMode,
    path: &Path,
    opts: &SvgOptions,
) -> Result<()> {
    let svg = arrangement_svg_string(dims, mode, opts);
    let mut file = std::fs::File::create(path)?;
    file.write_all(svg.as_bytes())?;
    Ok(())
}
