//! CSV and SVG renderings of sweep results.
//!
//! The CSV is the primary artifact and is byte-deterministic for a fixed
//! config and precision; the SVG is derived from the same rows and never
//! feeds back into them.

use galbox_core::experiment::SweepRow;
use galbox_core::numerics::PrecisionContext;

pub const CSV_HEADER: &str = "basis,m,bc,j,n,t,error,lambda_min,unitarity_defect";

/// Significant digits used for all floating-point CSV columns.
pub const CSV_DIGITS: usize = 30;

pub fn csv_row(row: &SweepRow, ctx: &PrecisionContext) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{}",
        row.basis_tag,
        row.m.unwrap_or(0),
        row.bc_tag,
        row.j,
        row.n,
        row.t.to_real(ctx).to_scientific(CSV_DIGITS),
        row.error.to_scientific(CSV_DIGITS),
        row.lambda_min.to_scientific(CSV_DIGITS),
        row.unitarity_defect.to_scientific(CSV_DIGITS),
    )
}

/// Render rows as a full CSV document. When `incomplete` is set a trailer
/// comment marks that some sweep points failed.
pub fn render_csv(rows: &[SweepRow], ctx: &PrecisionContext, incomplete: bool) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&csv_row(row, ctx));
        out.push('\n');
    }
    if incomplete {
        out.push_str("# INCOMPLETE\n");
    }
    out
}

/// Minimal log-y line plot: error over n, one polyline per time value.
pub fn render_svg(rows: &[SweepRow], ctx: &PrecisionContext) -> String {
    const W: f64 = 640.0;
    const H: f64 = 420.0;
    const ML: f64 = 70.0; // left margin
    const MR: f64 = 20.0;
    const MT: f64 = 30.0;
    const MB: f64 = 50.0;
    const PALETTE: [&str; 6] = [
        "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
    ];

    // Group by time tag, preserving first-seen order.
    let mut series: Vec<(String, Vec<(f64, f64)>)> = Vec::new();
    let mut n_min = f64::INFINITY;
    let mut n_max = f64::NEG_INFINITY;
    let mut log_min = f64::INFINITY;
    let mut log_max = f64::NEG_INFINITY;
    for row in rows {
        let tag = row.t.to_string();
        let err = row.error.to_f64();
        if err <= 0.0 {
            continue; // exact zeros have no place on a log axis
        }
        let x = row.n as f64;
        let y = err.log10();
        n_min = n_min.min(x);
        n_max = n_max.max(x);
        log_min = log_min.min(y);
        log_max = log_max.max(y);
        match series.iter_mut().find(|(t, _)| *t == tag) {
            Some((_, pts)) => pts.push((x, y)),
            None => series.push((tag, vec![(x, y)])),
        }
    }
    if series.is_empty() || n_max <= n_min {
        return format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\"><text x=\"20\" y=\"40\">no plottable points</text></svg>\n"
        );
    }
    if log_max - log_min < 0.5 {
        log_max += 0.25;
        log_min -= 0.25;
    }
    let sx = |x: f64| ML + (x - n_min) / (n_max - n_min) * (W - ML - MR);
    let sy = |y: f64| H - MB - (y - log_min) / (log_max - log_min) * (H - MT - MB);

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    // axes
    svg.push_str(&format!(
        "<line x1=\"{ML}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        H - MB,
        W - MR,
        H - MB
    ));
    svg.push_str(&format!(
        "<line x1=\"{ML}\" y1=\"{MT}\" x2=\"{ML}\" y2=\"{}\" stroke=\"black\"/>\n",
        H - MB
    ));
    // y ticks at integer powers of ten
    let mut p = log_min.ceil() as i64;
    while (p as f64) <= log_max {
        let y = sy(p as f64);
        svg.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{y:.2}\" x2=\"{ML}\" y2=\"{y:.2}\" stroke=\"black\"/>\n",
            ML - 5.0
        ));
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"end\">1e{p}</text>\n",
            ML - 8.0,
            y + 4.0
        ));
        p += 1;
    }
    // x ticks on the sampled n values of the first series
    for (x, _) in &series[0].1 {
        let px = sx(*x);
        svg.push_str(&format!(
            "<line x1=\"{px:.2}\" y1=\"{}\" x2=\"{px:.2}\" y2=\"{:.2}\" stroke=\"black\"/>\n",
            H - MB,
            H - MB + 5.0
        ));
        svg.push_str(&format!(
            "<text x=\"{px:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"middle\">{}</text>\n",
            H - MB + 18.0,
            *x as usize
        ));
    }
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"13\" text-anchor=\"middle\">n</text>\n",
        (ML + W - MR) / 2.0,
        H - 12.0
    ));
    svg.push_str(&format!(
        "<text x=\"16\" y=\"{:.2}\" font-size=\"13\" transform=\"rotate(-90 16 {:.2})\" text-anchor=\"middle\">error</text>\n",
        (MT + H - MB) / 2.0,
        (MT + H - MB) / 2.0
    ));
    if let Some(first) = rows.first() {
        svg.push_str(&format!(
            "<text x=\"{ML}\" y=\"20\" font-size=\"13\">{} m={} {} j={} ({} digits)</text>\n",
            first.basis_tag,
            first.m.unwrap_or(0),
            first.bc_tag,
            first.j,
            ctx.digits()
        ));
    }
    for (s, (tag, pts)) in series.iter().enumerate() {
        let color = PALETTE[s % PALETTE.len()];
        let path: Vec<String> = pts
            .iter()
            .map(|(x, y)| format!("{:.2},{:.2}", sx(*x), sy(*y)))
            .collect();
        svg.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
            path.join(" ")
        ));
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" fill=\"{color}\">t={tag}</text>\n",
            W - MR - 90.0,
            MT + 16.0 * (s as f64 + 1.0)
        ));
    }
    svg.push_str("</svg>\n");
    svg
}
