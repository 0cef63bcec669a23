//! CSV, JSON, and SVG output for the binary.
//!
//! CSV: `\n` line endings, `.` decimal point, floats at 17 significant
//! digits (`{:.16e}`), so output bytes are deterministic and re-parse to the
//! exact f64. JSON: pretty-printed documents from [`crate::schema`]. SVG:
//! minimal polyline plots — axes, series, legend — for eyeballing shapes,
//! not publication.

use std::path::Path;

use aqrm::{DegeneracyReport, Error, Result, ScanTable, WavefunctionGrid};
use serde::Serialize;

/// One float, 17 significant digits, locale-independent.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Pretty JSON document plus trailing newline.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("plain data serializes");
    s.push('\n');
    s
}

/// Writes the finished output in one shot: to the path when given, else to
/// stdout.
pub fn write_output(path: Option<&Path>, content: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, content)
            .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

/// Scan CSV: header `axis,level_0,…,level_{k−1},method,basis`, one row per
/// point per method table.
pub fn csv_scan(tables: &[ScanTable]) -> Result<String> {
    let Some(first) = tables.first() else {
        return Err(Error::InvalidInput("scan produced no tables".into()));
    };
    let k = first.levels;
    let mut out = String::from("axis");
    for i in 0..k {
        out.push_str(&format!(",level_{i}"));
    }
    out.push_str(",method,basis\n");
    for table in tables {
        for p in &table.points {
            out.push_str(&fmt_float(p.value));
            for e in &p.spectrum.energies {
                out.push(',');
                out.push_str(&fmt_float(*e));
            }
            out.push_str(&format!(",{},{}\n", p.spectrum.method, p.spectrum.basis_size));
        }
    }
    Ok(out)
}

/// Potential CSV: header `xi,v`, one row per grid point.
pub fn csv_profile(xi: &[f64], v: &[f64]) -> String {
    let mut out = String::from("xi,v\n");
    for (x, y) in xi.iter().zip(v) {
        out.push_str(&fmt_float(*x));
        out.push(',');
        out.push_str(&fmt_float(*y));
        out.push('\n');
    }
    out
}

/// Wavefunction CSV: header `xi,up,down`, one row per grid point.
pub fn csv_wavefunction(grid: &WavefunctionGrid) -> String {
    let mut out = String::from("xi,up,down\n");
    for i in 0..grid.xi.len() {
        out.push_str(&fmt_float(grid.xi[i]));
        out.push(',');
        out.push_str(&fmt_float(grid.up[i]));
        out.push(',');
        out.push_str(&fmt_float(grid.down[i]));
        out.push('\n');
    }
    out
}

/// Degeneracy-map CSV: one report row per asymmetry value; optional fields
/// are empty when absent.
pub fn csv_degeneracy(reports: &[DegeneracyReport]) -> Result<String> {
    let Some(first) = reports.first() else {
        return Err(Error::InvalidInput("degeneracy map produced no reports".into()));
    };
    let mut out = String::from("eta,onset_level,predicted_onset,n_fock");
    for i in 0..first.gaps.len() {
        out.push_str(&format!(",gap_{i}"));
    }
    out.push('\n');
    for r in reports {
        out.push_str(&fmt_float(r.params.eta()));
        out.push(',');
        if let Some(l) = r.onset_level {
            out.push_str(&l.to_string());
        }
        out.push(',');
        if let Some(n) = r.predicted_onset {
            out.push_str(&n.to_string());
        }
        out.push_str(&format!(",{}", r.n_fock));
        for g in &r.gaps {
            out.push(',');
            out.push_str(&fmt_float(*g));
        }
        out.push('\n');
    }
    Ok(out)
}

/// One plotted curve.
pub struct Series {
    pub label: String,
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub color: &'static str,
    pub dashed: bool,
}

/// Fixed series palette (cycled).
pub const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f",
];

const SVG_W: f64 = 800.0;
const SVG_H: f64 = 520.0;
const PLOT_L: f64 = 70.0;
const PLOT_R: f64 = 620.0;
const PLOT_T: f64 = 40.0;
const PLOT_B: f64 = 470.0;

/// Minimal SVG line plot: frame, three ticks per axis, the series, a legend.
pub fn svg_plot(title: &str, x_label: &str, y_label: &str, series: &[Series]) -> String {
    let finite = |v: &f64| v.is_finite();
    let mut x_min = f64::INFINITY;
    let mut x_max = f64::NEG_INFINITY;
    let mut y_min = f64::INFINITY;
    let mut y_max = f64::NEG_INFINITY;
    for s in series {
        for x in s.xs.iter().filter(|v| finite(v)) {
            x_min = x_min.min(*x);
            x_max = x_max.max(*x);
        }
        for y in s.ys.iter().filter(|v| finite(v)) {
            y_min = y_min.min(*y);
            y_max = y_max.max(*y);
        }
    }
    if x_min >= x_max {
        x_min -= 1.0;
        x_max += 1.0;
    }
    let pad = 0.05 * (y_max - y_min);
    let (y_min, y_max) = if y_min < y_max { (y_min - pad, y_max + pad) } else { (y_min - 1.0, y_max + 1.0) };
    let sx = |x: f64| PLOT_L + (x - x_min) / (x_max - x_min) * (PLOT_R - PLOT_L);
    let sy = |y: f64| PLOT_B - (y - y_min) / (y_max - y_min) * (PLOT_B - PLOT_T);

    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {SVG_W} {SVG_H}\" \
         font-family=\"sans-serif\" font-size=\"12\">\n\
         <rect width=\"{SVG_W}\" height=\"{SVG_H}\" fill=\"white\"/>\n\
         <rect x=\"{PLOT_L}\" y=\"{PLOT_T}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#333\"/>\n\
         <text x=\"{}\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">{title}</text>\n",
        PLOT_R - PLOT_L,
        PLOT_B - PLOT_T,
        0.5 * (PLOT_L + PLOT_R),
    );
    // ticks at min, mid, max of each axis
    for t in [x_min, 0.5 * (x_min + x_max), x_max] {
        let x = sx(t);
        out.push_str(&format!(
            "<line x1=\"{x:.2}\" y1=\"{PLOT_B}\" x2=\"{x:.2}\" y2=\"{}\" stroke=\"#333\"/>\n\
             <text x=\"{x:.2}\" y=\"{}\" text-anchor=\"middle\">{t:.4}</text>\n",
            PLOT_B + 5.0,
            PLOT_B + 20.0,
        ));
    }
    for t in [y_min, 0.5 * (y_min + y_max), y_max] {
        let y = sy(t);
        out.push_str(&format!(
            "<line x1=\"{}\" y1=\"{y:.2}\" x2=\"{PLOT_L}\" y2=\"{y:.2}\" stroke=\"#333\"/>\n\
             <text x=\"{}\" y=\"{:.2}\" text-anchor=\"end\">{t:.4}</text>\n",
            PLOT_L - 5.0,
            PLOT_L - 8.0,
            y + 4.0,
        ));
    }
    out.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{x_label}</text>\n\
         <text x=\"16\" y=\"{}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {})\">{y_label}</text>\n",
        0.5 * (PLOT_L + PLOT_R),
        SVG_H - 10.0,
        0.5 * (PLOT_T + PLOT_B),
        0.5 * (PLOT_T + PLOT_B),
    ));
    for s in series {
        let pts: Vec<String> = s
            .xs
            .iter()
            .zip(&s.ys)
            .filter(|(x, y)| x.is_finite() && y.is_finite())
            .map(|(&x, &y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        let dash = if s.dashed { " stroke-dasharray=\"6 4\"" } else { "" };
        out.push_str(&format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"{dash}/>\n",
            pts.join(" "),
            s.color,
        ));
    }
    for (i, s) in series.iter().enumerate() {
        let y = PLOT_T + 10.0 + 18.0 * i as f64;
        let dash = if s.dashed { " stroke-dasharray=\"6 4\"" } else { "" };
        out.push_str(&format!(
            "<line x1=\"{}\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\" stroke=\"{}\" stroke-width=\"1.5\"{dash}/>\n\
             <text x=\"{}\" y=\"{}\">{}</text>\n",
            PLOT_R + 12.0,
            PLOT_R + 42.0,
            s.color,
            PLOT_R + 48.0,
            y + 4.0,
            s.label,
        ));
    }
    out.push_str("</svg>\n");
    out
}

/// Scan plot: one curve per level per method (dashed = second method).
pub fn svg_scan(tables: &[ScanTable]) -> Result<String> {
    let Some(first) = tables.first() else {
        return Err(Error::InvalidInput("scan produced no tables".into()));
    };
    let mut series = Vec::new();
    for (t_idx, table) in tables.iter().enumerate() {
        let xs: Vec<f64> = table.points.iter().map(|p| p.value).collect();
        let method = table.points[0].spectrum.method;
        for level in 0..table.levels {
            series.push(Series {
                label: format!("{method} level {level}"),
                xs: xs.clone(),
                ys: table.points.iter().map(|p| p.spectrum.energies[level]).collect(),
                color: PALETTE[level % PALETTE.len()],
                dashed: t_idx > 0,
            });
        }
    }
    Ok(svg_plot("energy levels", first.axis.label(), "E / ħω", &series))
}

/// Wavefunction plot: up (solid) and down (dashed) per method.
pub fn svg_wavefunction(grids: &[WavefunctionGrid]) -> String {
    let mut series = Vec::new();
    for (i, g) in grids.iter().enumerate() {
        series.push(Series {
            label: format!("{} up", g.method),
            xs: g.xi.clone(),
            ys: g.up.clone(),
            color: PALETTE[2 * i % PALETTE.len()],
            dashed: false,
        });
        series.push(Series {
            label: format!("{} down", g.method),
            xs: g.xi.clone(),
            ys: g.down.clone(),
            color: PALETTE[(2 * i + 1) % PALETTE.len()],
            dashed: true,
        });
    }
    let level = grids.first().map_or(0, |g| g.level);
    svg_plot(&format!("wavefunction, level {level}"), "ξ", "Ψ(ξ)", &series)
}

/// Effective-potential plot: a single curve.
pub fn svg_potential(xi: &[f64], v: &[f64]) -> String {
    let series = [Series {
        label: "V_eff".into(),
        xs: xi.to_vec(),
        ys: v.to_vec(),
        color: PALETTE[0],
        dashed: false,
    }];
    svg_plot("effective potential", "ξ", "V_eff(ξ)", &series)
}
