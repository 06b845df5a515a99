//! Minimal deterministic SVG writers: line charts for metric-vs-disorder
//! curves, heatmaps for phase diagrams and semi-log overlays of eigenvector
//! magnitudes. Numbers are formatted with fixed precision so repeated runs
//! are byte-identical.

use std::fmt::Write as _;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const MARGIN_L: f64 = 72.0;
const MARGIN_R: f64 = 24.0;
const MARGIN_T: f64 = 42.0;
const MARGIN_B: f64 = 56.0;

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

fn fmt(x: f64) -> String {
    format!("{x:.3}")
}

fn svg_open(out: &mut String) {
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    )
    .unwrap();
    writeln!(
        out,
        "<rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>"
    )
    .unwrap();
}

fn draw_frame(out: &mut String, title: &str, x_label: &str, y_label: &str) {
    writeln!(
        out,
        "<text x=\"{}\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\" text-anchor=\"middle\">{}</text>",
        WIDTH / 2.0,
        title
    )
    .unwrap();
    writeln!(
        out,
        "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">{}</text>",
        MARGIN_L + (WIDTH - MARGIN_L - MARGIN_R) / 2.0,
        HEIGHT - 14.0,
        x_label
    )
    .unwrap();
    writeln!(
        out,
        "<text x=\"18\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 18 {})\">{}</text>",
        MARGIN_T + (HEIGHT - MARGIN_T - MARGIN_B) / 2.0,
        MARGIN_T + (HEIGHT - MARGIN_T - MARGIN_B) / 2.0,
        y_label
    )
    .unwrap();
    writeln!(
        out,
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>",
        fmt(MARGIN_L),
        fmt(MARGIN_T),
        fmt(WIDTH - MARGIN_L - MARGIN_R),
        fmt(HEIGHT - MARGIN_T - MARGIN_B)
    )
    .unwrap();
}

struct Scale {
    lo: f64,
    hi: f64,
    pix_lo: f64,
    pix_hi: f64,
}

impl Scale {
    fn map(&self, x: f64) -> f64 {
        let t = if self.hi > self.lo {
            (x - self.lo) / (self.hi - self.lo)
        } else {
            0.5
        };
        self.pix_lo + t * (self.pix_hi - self.pix_lo)
    }
}

fn bounds<'a>(values: impl Iterator<Item = &'a f64>) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in values {
        if v.is_finite() {
            lo = lo.min(*v);
            hi = hi.max(*v);
        }
    }
    if !lo.is_finite() || !hi.is_finite() {
        return (0.0, 1.0);
    }
    if lo == hi {
        return (lo - 0.5, hi + 0.5);
    }
    (lo, hi)
}

fn draw_ticks(out: &mut String, xs: &Scale, ys: &Scale) {
    for i in 0..=4 {
        let t = i as f64 / 4.0;
        let xv = xs.lo + t * (xs.hi - xs.lo);
        let xp = xs.map(xv);
        writeln!(
            out,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>",
            fmt(xp),
            fmt(HEIGHT - MARGIN_B),
            fmt(xp),
            fmt(HEIGHT - MARGIN_B + 5.0)
        )
        .unwrap();
        writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">{}</text>",
            fmt(xp),
            fmt(HEIGHT - MARGIN_B + 17.0),
            fmt(xv)
        )
        .unwrap();
        let yv = ys.lo + t * (ys.hi - ys.lo);
        let yp = ys.map(yv);
        writeln!(
            out,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>",
            fmt(MARGIN_L - 5.0),
            fmt(yp),
            fmt(MARGIN_L),
            fmt(yp)
        )
        .unwrap();
        writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">{}</text>",
            fmt(MARGIN_L - 8.0),
            fmt(yp + 3.0),
            fmt(yv)
        )
        .unwrap();
    }
}

/// Multi-series line chart with a legend.
pub fn line_chart(title: &str, x_label: &str, y_label: &str, series: &[Series]) -> String {
    let mut out = String::new();
    svg_open(&mut out);
    draw_frame(&mut out, title, x_label, y_label);

    let (xlo, xhi) = bounds(series.iter().flat_map(|s| s.points.iter().map(|(x, _)| x)));
    let (ylo, yhi) = bounds(series.iter().flat_map(|s| s.points.iter().map(|(_, y)| y)));
    let xs = Scale { lo: xlo, hi: xhi, pix_lo: MARGIN_L, pix_hi: WIDTH - MARGIN_R };
    let ys = Scale { lo: ylo, hi: yhi, pix_lo: HEIGHT - MARGIN_B, pix_hi: MARGIN_T };
    draw_ticks(&mut out, &xs, &ys);

    for (i, s) in series.iter().enumerate() {
        let colour = PALETTE[i % PALETTE.len()];
        let path: Vec<String> = s
            .points
            .iter()
            .filter(|(x, y)| x.is_finite() && y.is_finite())
            .map(|(x, y)| format!("{},{}", fmt(xs.map(*x)), fmt(ys.map(*y))))
            .collect();
        if !path.is_empty() {
            writeln!(
                out,
                "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>",
                colour,
                path.join(" ")
            )
            .unwrap();
        }
        let ly = MARGIN_T + 14.0 + 16.0 * i as f64;
        writeln!(
            out,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"2\"/>",
            fmt(WIDTH - MARGIN_R - 150.0),
            fmt(ly - 4.0),
            fmt(WIDTH - MARGIN_R - 130.0),
            fmt(ly - 4.0),
            colour
        )
        .unwrap();
        writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\">{}</text>",
            fmt(WIDTH - MARGIN_R - 124.0),
            fmt(ly),
            s.name
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

/// Five-anchor approximation of the viridis colour map.
fn heat_colour(t: f64) -> String {
    const ANCHORS: [(f64, f64, f64); 5] = [
        (68.0, 1.0, 84.0),
        (59.0, 82.0, 139.0),
        (33.0, 145.0, 140.0),
        (94.0, 201.0, 98.0),
        (253.0, 231.0, 37.0),
    ];
    let t = t.clamp(0.0, 1.0) * (ANCHORS.len() - 1) as f64;
    let i = (t.floor() as usize).min(ANCHORS.len() - 2);
    let f = t - i as f64;
    let (r0, g0, b0) = ANCHORS[i];
    let (r1, g1, b1) = ANCHORS[i + 1];
    format!(
        "rgb({},{},{})",
        (r0 + f * (r1 - r0)).round() as u8,
        (g0 + f * (g1 - g0)).round() as u8,
        (b0 + f * (b1 - b0)).round() as u8
    )
}

/// Heatmap of `values[row][col]` over the given axis grids; NaN cells are
/// hatched grey. Colour range is fixed to [0, 1] when `unit_scale`, else the
/// data range.
pub fn heatmap(
    title: &str,
    x_label: &str,
    y_label: &str,
    x_values: &[f64],
    y_values: &[f64],
    values: &[Vec<f64>],
    unit_scale: bool,
) -> String {
    let mut out = String::new();
    svg_open(&mut out);
    draw_frame(&mut out, title, x_label, y_label);

    let cols = x_values.len().max(1);
    let rows = y_values.len().max(1);
    let plot_w = WIDTH - MARGIN_L - MARGIN_R;
    let plot_h = HEIGHT - MARGIN_T - MARGIN_B;
    let cell_w = plot_w / cols as f64;
    let cell_h = plot_h / rows as f64;

    let (vlo, vhi) = if unit_scale {
        (0.0, 1.0)
    } else {
        bounds(values.iter().flatten())
    };

    for (r, row) in values.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            let x = MARGIN_L + c as f64 * cell_w;
            // row 0 is the smallest axis value, drawn at the bottom
            let y = HEIGHT - MARGIN_B - (r + 1) as f64 * cell_h;
            let fill = if v.is_finite() {
                let t = if vhi > vlo { (v - vlo) / (vhi - vlo) } else { 0.5 };
                heat_colour(t)
            } else {
                "rgb(180,180,180)".to_string()
            };
            writeln!(
                out,
                "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\" stroke=\"white\" stroke-width=\"0.5\"/>",
                fmt(x),
                fmt(y),
                fmt(cell_w),
                fmt(cell_h),
                fill
            )
            .unwrap();
        }
    }

    // axis labels at the cell centres
    for (c, xv) in x_values.iter().enumerate() {
        writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">{}</text>",
            fmt(MARGIN_L + (c as f64 + 0.5) * cell_w),
            fmt(HEIGHT - MARGIN_B + 17.0),
            fmt(*xv)
        )
        .unwrap();
    }
    for (r, yv) in y_values.iter().enumerate() {
        writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">{}</text>",
            fmt(MARGIN_L - 8.0),
            fmt(HEIGHT - MARGIN_B - (r as f64 + 0.5) * cell_h + 3.0),
            fmt(*yv)
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

const LOG_FLOOR: f64 = -16.0;

/// Overlay of `log10 |v_j|` against the site index for a family of vectors;
/// `highlight[i]` draws vector `i` in red on top.
pub fn semilog_overlay(title: &str, vectors: &[Vec<f64>], highlight: &[bool]) -> String {
    let mut out = String::new();
    svg_open(&mut out);
    draw_frame(&mut out, title, "site index", "log10 |v|");

    let n = vectors.iter().map(|v| v.len()).max().unwrap_or(1);
    let mut ylo = f64::INFINITY;
    let mut yhi = f64::NEG_INFINITY;
    let logs: Vec<Vec<f64>> = vectors
        .iter()
        .map(|v| {
            v.iter()
                .map(|x| {
                    let l = x.abs().log10();
                    if l.is_finite() { l.max(LOG_FLOOR) } else { LOG_FLOOR }
                })
                .collect()
        })
        .collect();
    for l in logs.iter().flatten() {
        ylo = ylo.min(*l);
        yhi = yhi.max(*l);
    }
    if !ylo.is_finite() {
        ylo = LOG_FLOOR;
        yhi = 0.0;
    }
    if ylo == yhi {
        ylo -= 0.5;
        yhi += 0.5;
    }
    let xs = Scale { lo: 1.0, hi: n as f64, pix_lo: MARGIN_L, pix_hi: WIDTH - MARGIN_R };
    let ys = Scale { lo: ylo, hi: yhi, pix_lo: HEIGHT - MARGIN_B, pix_hi: MARGIN_T };
    draw_ticks(&mut out, &xs, &ys);

    let mut draw = |l: &[f64], colour: &str, width: &str, opacity: &str| {
        let path: Vec<String> = l
            .iter()
            .enumerate()
            .map(|(j, y)| format!("{},{}", fmt(xs.map((j + 1) as f64)), fmt(ys.map(*y))))
            .collect();
        writeln!(
            out,
            "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"{}\" stroke-opacity=\"{}\" points=\"{}\"/>",
            colour,
            width,
            opacity,
            path.join(" ")
        )
        .unwrap();
    };
    for (i, l) in logs.iter().enumerate() {
        if !highlight.get(i).copied().unwrap_or(false) {
            draw(l, "#1f77b4", "1", "0.45");
        }
    }
    for (i, l) in logs.iter().enumerate() {
        if highlight.get(i).copied().unwrap_or(false) {
            draw(l, "#d62728", "1.8", "0.9");
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_chart_contains_series_and_labels() {
        let s = vec![
            Series { name: "edge".into(), points: vec![(0.0, 1.0), (0.1, 0.9)] },
            Series { name: "protected".into(), points: vec![(0.0, 1.0), (0.1, 0.95)] },
        ];
        let svg = line_chart("metrics", "eps", "fraction", &s);
        assert!(svg.contains("<polyline"));
        assert!(svg.contains(">edge<"));
        assert!(svg.contains(">protected<"));
        assert!(svg.contains(">eps<"));
        assert_eq!(svg.matches("<polyline").count(), 2);
    }

    #[test]
    fn heatmap_draws_one_rect_per_cell_plus_frame() {
        let svg = heatmap(
            "phase",
            "eps_s",
            "eps_gamma",
            &[0.0, 0.1],
            &[0.0, 0.5],
            &[vec![1.0, 0.8], vec![0.6, f64::NAN]],
            true,
        );
        // 4 cells + background + frame
        assert_eq!(svg.matches("<rect").count(), 6);
        assert!(svg.contains("rgb(180,180,180)")); // NaN cell
        assert!(svg.contains(">eps_s<") && svg.contains(">eps_gamma<"));
    }

    #[test]
    fn heatmap_is_deterministic() {
        let make = || {
            heatmap(
                "p",
                "x",
                "y",
                &[0.0, 1.0],
                &[0.0, 1.0],
                &[vec![0.2, 0.4], vec![0.6, 0.8]],
                true,
            )
        };
        assert_eq!(make(), make());
    }

    #[test]
    fn semilog_overlay_highlights_in_red() {
        let v = vec![
            vec![1.0, 0.1, 0.01, 0.001],
            vec![0.5, 0.4, 0.45, 0.5],
        ];
        let svg = semilog_overlay("modes", &v, &[false, true]);
        assert!(svg.contains("#d62728"));
        assert!(svg.contains("#1f77b4"));
        assert!(svg.contains("log10 |v|"));
    }
}
