//! Minimal standalone SVG line plots and heat maps.

use std::fmt::Write as _;

const W: f64 = 640.0;
const H: f64 = 440.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 150.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 55.0;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];

#[derive(Debug, Clone)]
pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
    pub dashed: bool,
}

impl Series {
    pub fn new(name: impl Into<String>, points: Vec<(f64, f64)>) -> Self {
        Self {
            name: name.into(),
            points,
            dashed: false,
        }
    }

    pub fn dashed(mut self) -> Self {
        self.dashed = true;
        self
    }
}

#[derive(Debug, Clone, Default)]
pub struct LinePlot {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub log_x: bool,
    pub series: Vec<Series>,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn nice_ticks(lo: f64, hi: f64) -> Vec<f64> {
    let span = hi - lo;
    if !(span > 0.0) {
        return vec![lo];
    }
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|s| span / s <= 6.0)
        .unwrap_or(10.0 * mag);
    let mut t = (lo / step).ceil() * step;
    let mut out = Vec::new();
    while t <= hi + 1e-9 * span {
        out.push(if t.abs() < 1e-12 * span { 0.0 } else { t });
        t += step;
    }
    out
}

fn fmt_tick(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || (1e-3..1e4).contains(&a) {
        let s = format!("{v:.3}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        format!("{v:.0e}")
    }
}

impl LinePlot {
    pub fn render(&self) -> String {
        let pts: Vec<(f64, f64)> = self
            .series
            .iter()
            .flat_map(|s| s.points.iter().copied())
            .filter(|(x, y)| x.is_finite() && y.is_finite() && (!self.log_x || *x > 0.0))
            .collect();
        let tx = |x: f64| if self.log_x { x.log10() } else { x };
        let (mut x0, mut x1, mut y0, mut y1) = (
            f64::INFINITY,
            f64::NEG_INFINITY,
            f64::INFINITY,
            f64::NEG_INFINITY,
        );
        for &(x, y) in &pts {
            x0 = x0.min(tx(x));
            x1 = x1.max(tx(x));
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        if pts.is_empty() {
            (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
        }
        if x1 <= x0 {
            x1 = x0 + 1.0;
        }
        if y1 <= y0 {
            y1 = y0 + 1.0;
        }
        let pw = W - LEFT - RIGHT;
        let ph = H - TOP - BOTTOM;
        let px = |x: f64| LEFT + (tx(x) - x0) / (x1 - x0) * pw;
        let py = |y: f64| TOP + (1.0 - (y - y0) / (y1 - y0)) * ph;

        let mut s = String::new();
        writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#).unwrap();
        writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#).unwrap();
        writeln!(
            s,
            r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{}</text>"#,
            LEFT + pw / 2.0,
            escape(&self.title)
        )
        .unwrap();
        writeln!(
            s,
            r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
        )
        .unwrap();

        let xt: Vec<f64> = if self.log_x {
            (x0.ceil() as i32..=x1.floor() as i32)
                .map(f64::from)
                .collect()
        } else {
            nice_ticks(x0, x1)
        };
        for t in xt {
            let x = LEFT + (t - x0) / (x1 - x0) * pw;
            let label = if self.log_x {
                format!("1e{}", t as i32)
            } else {
                fmt_tick(t)
            };
            writeln!(
                s,
                r#"<line x1="{x:.2}" y1="{}" x2="{x:.2}" y2="{}" stroke="black"/>"#,
                TOP + ph,
                TOP + ph + 5.0
            )
            .unwrap();
            writeln!(
                s,
                r#"<text x="{x:.2}" y="{}" text-anchor="middle">{label}</text>"#,
                TOP + ph + 18.0
            )
            .unwrap();
        }
        for t in nice_ticks(y0, y1) {
            let y = py(t);
            writeln!(
                s,
                r#"<line x1="{}" y1="{y:.2}" x2="{LEFT}" y2="{y:.2}" stroke="black"/>"#,
                LEFT - 5.0
            )
            .unwrap();
            writeln!(
                s,
                r#"<text x="{}" y="{:.2}" text-anchor="end">{}</text>"#,
                LEFT - 8.0,
                y + 4.0,
                fmt_tick(t)
            )
            .unwrap();
        }
        writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
            LEFT + pw / 2.0,
            H - 12.0,
            escape(&self.x_label)
        )
        .unwrap();
        writeln!(
            s,
            r#"<text transform="translate(18 {}) rotate(-90)" text-anchor="middle">{}</text>"#,
            TOP + ph / 2.0,
            escape(&self.y_label)
        )
        .unwrap();

        for (k, series) in self.series.iter().enumerate() {
            let colour = PALETTE[k % PALETTE.len()];
            let mut d = String::new();
            let mut pen_down = false;
            for &(x, y) in &series.points {
                if !(x.is_finite() && y.is_finite()) || (self.log_x && x <= 0.0) {
                    pen_down = false;
                    continue;
                }
                write!(
                    d,
                    "{}{:.2},{:.2} ",
                    if pen_down { "L" } else { "M" },
                    px(x),
                    py(y)
                )
                .unwrap();
                pen_down = true;
            }
            let dash = if series.dashed {
                r#" stroke-dasharray="6 4""#
            } else {
                ""
            };
            writeln!(
                s,
                r#"<path d="{}" fill="none" stroke="{colour}" stroke-width="1.6"{dash}/>"#,
                d.trim_end()
            )
            .unwrap();
            let ly = TOP + 14.0 + 18.0 * k as f64;
            let lx = W - RIGHT + 12.0;
            writeln!(s, r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{colour}" stroke-width="1.6"{dash}/>"#, lx + 22.0).unwrap();
            writeln!(
                s,
                r#"<text x="{}" y="{}">{}</text>"#,
                lx + 28.0,
                ly + 4.0,
                escape(&series.name)
            )
            .unwrap();
        }
        s.push_str("</svg>\n");
        s
    }
}

/// Black-red-yellow colour ramp.
fn ramp(t: f64) -> (u8, u8, u8) {
    let t = t.clamp(0.0, 1.0);
    let r = (255.0 * (1.5 * t).min(1.0)) as u8;
    let g = (255.0 * ((t - 0.4) / 0.6).clamp(0.0, 1.0)) as u8;
    let b = (255.0 * (0.6 * (1.0 - 4.0 * (t - 0.15).abs())).max(0.0)) as u8;
    (r, g, b)
}

/// Heat map of `values` (row-major, `ny` rows of `nx`) over `[x0, x1] x [y0, y1]`,
/// block-averaged to at most `max_cells` per axis.
pub fn heatmap(
    title: &str,
    values: &[f64],
    nx: usize,
    ny: usize,
    extent: (f64, f64, f64, f64),
    unit: &str,
    max_cells: usize,
) -> String {
    let bx = nx.div_ceil(max_cells.max(1));
    let by = ny.div_ceil(max_cells.max(1));
    let (cx, cy) = (nx.div_ceil(bx), ny.div_ceil(by));
    let mut cells = vec![0.0; cx * cy];
    for j in 0..ny {
        for i in 0..nx {
            let v = values[j * nx + i];
            if v.is_finite() {
                cells[(j / by) * cx + i / bx] += v;
            }
        }
    }
    let vmax = cells.iter().copied().fold(0.0, f64::max);
    let side = 400.0;
    let (ox, oy) = (60.0, 40.0);
    let (w, h) = (side / cx as f64, side / cy as f64);
    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="520" height="500" viewBox="0 0 520 500" font-family="sans-serif" font-size="12">"#).unwrap();
    writeln!(s, r#"<rect width="520" height="500" fill="white"/>"#).unwrap();
    writeln!(
        s,
        r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{}</text>"#,
        ox + side / 2.0,
        escape(title)
    )
    .unwrap();
    for j in 0..cy {
        for i in 0..cx {
            let t = if vmax > 0.0 {
                cells[j * cx + i] / vmax
            } else {
                0.0
            };
            let (r, g, b) = ramp(t);
            // Row 0 is the smallest y; draw it at the bottom.
            let y = oy + side - (j + 1) as f64 * h;
            writeln!(s, r#"<rect x="{:.2}" y="{:.2}" width="{:.3}" height="{:.3}" fill="rgb({r},{g},{b})"/>"#, ox + i as f64 * w, y, w + 0.05, h + 0.05).unwrap();
        }
    }
    let (x0, x1, y0, y1) = extent;
    writeln!(
        s,
        r#"<rect x="{ox}" y="{oy}" width="{side}" height="{side}" fill="none" stroke="black"/>"#
    )
    .unwrap();
    writeln!(
        s,
        r#"<text x="{ox}" y="{}" text-anchor="middle">{}</text>"#,
        oy + side + 16.0,
        fmt_tick(x0)
    )
    .unwrap();
    writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        ox + side,
        oy + side + 16.0,
        fmt_tick(x1)
    )
    .unwrap();
    writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#,
        ox - 6.0,
        oy + side,
        fmt_tick(y0)
    )
    .unwrap();
    writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#,
        ox - 6.0,
        oy + 10.0,
        fmt_tick(y1)
    )
    .unwrap();
    writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">x ({})</text>"#,
        ox + side / 2.0,
        oy + side + 34.0,
        escape(unit)
    )
    .unwrap();
    writeln!(
        s,
        r#"<text transform="translate(20 {}) rotate(-90)" text-anchor="middle">y ({})</text>"#,
        oy + side / 2.0,
        escape(unit)
    )
    .unwrap();
    s.push_str("</svg>\n");
    s
}
