//! SVG output: level-set tessellations for the exact cases and float
//! preimages of the critical line for arbitrary α.
//!
//! Geometry decisions (which tiles meet the window) are exact; coordinates
//! become floats only when the document is written. Output is a pure
//! function of the inputs, so repeated runs are byte-identical.

use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::dynamics::Case;
use crate::error::{Error, Result};
use crate::necklace::cached_necklace;
use crate::tiling::{tile_center, tile_level, tile_polygon, tiles_in_window, TileAddress, Window};

pub type Pt = (f64, f64);

#[derive(Clone, Debug, PartialEq)]
pub struct ScenePolygon {
    pub vertices: Vec<Pt>,
    pub fill: String,
    pub stroke: String,
    pub level: u64,
    pub label: Option<(Pt, String)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SceneSegment {
    pub a: Pt,
    pub b: Pt,
    pub stroke: String,
    pub width: f64,
}

/// Everything drawn in one document; emitted in insertion order.
#[derive(Clone, Debug, PartialEq)]
pub struct Scene {
    /// `[x_min, x_max, y_min, y_max]`
    pub window: [f64; 4],
    pub polygons: Vec<ScenePolygon>,
    pub segments: Vec<SceneSegment>,
}

/// Fixed-precision coordinates keep the output stable and compact.
fn num(v: f64) -> String {
    let s = format!("{v:.5}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    match s {
        "-0" | "" => "0".to_string(),
        s => s.to_string(),
    }
}

impl Scene {
    pub fn new(window: [f64; 4]) -> Self {
        Scene {
            window,
            polygons: Vec::new(),
            segments: Vec::new(),
        }
    }

    /// SVG 1.1 document. The y axis points up, so every y is negated.
    pub fn to_svg(&self) -> String {
        let [x0, x1, y0, y1] = self.window;
        let (w, h) = (x1 - x0, y1 - y0);
        let px = 800.0;
        let mut s = String::new();
        s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(
            s,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\" width=\"{}\" height=\"{}\">",
            num(x0),
            num(-y1),
            num(w),
            num(h),
            num(px),
            num(px * h / w)
        );
        let _ = writeln!(
            s,
            "<defs><clipPath id=\"window\"><rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"/></clipPath></defs>",
            num(x0),
            num(-y1),
            num(w),
            num(h)
        );
        s.push_str("<g clip-path=\"url(#window)\">\n");
        for p in &self.polygons {
            let pts: Vec<String> = p
                .vertices
                .iter()
                .map(|&(x, y)| format!("{},{}", num(x), num(-y)))
                .collect();
            let _ = writeln!(
                s,
                "<polygon points=\"{}\" fill=\"{}\" stroke=\"{}\" stroke-width=\"0.02\" data-level=\"{}\"/>",
                pts.join(" "),
                p.fill,
                p.stroke,
                p.level
            );
        }
        for p in &self.polygons {
            if let Some(((x, y), text)) = &p.label {
                let _ = writeln!(
                    s,
                    "<text x=\"{}\" y=\"{}\" font-size=\"0.22\" font-family=\"sans-serif\" text-anchor=\"middle\" dominant-baseline=\"central\">{}</text>",
                    num(*x),
                    num(-y),
                    text
                );
            }
        }
        for g in &self.segments {
            let _ = writeln!(
                s,
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"{}\"/>",
                num(g.a.0),
                num(-g.a.1),
                num(g.b.0),
                num(-g.b.1),
                g.stroke,
                num(g.width)
            );
        }
        s.push_str("</g>\n</svg>\n");
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RenderOptions {
    pub labels: bool,
    /// Number of distinct fills before the palette repeats.
    pub palette_size: usize,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            labels: false,
            palette_size: 24,
        }
    }
}

fn hsl_to_hex(h: f64, s: f64, l: f64) -> String {
    let c = (1.0 - (2.0 * l - 1.0).abs()) * s;
    let hp = h / 60.0;
    let x = c * (1.0 - (hp % 2.0 - 1.0).abs());
    let (r, g, b) = match hp as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = l - c / 2.0;
    let byte = |v: f64| ((v + m) * 255.0).round().clamp(0.0, 255.0) as u8;
    format!("#{:02x}{:02x}{:02x}", byte(r), byte(g), byte(b))
}

/// Fill for level `c`: evenly spaced hues, repeating every `size` levels.
pub fn palette(c: u64, size: usize) -> String {
    let size = size.max(1) as u64;
    let hue = (c % size) as f64 * 360.0 / size as f64;
    hsl_to_hex(hue, 0.55, 0.72)
}

fn to_f64_poly(case: Case, t: &TileAddress) -> Vec<Pt> {
    tile_polygon(case, t)
        .expect("enumerated tile is valid")
        .iter()
        .map(|p| p.to_f64())
        .collect()
}

pub fn level_scene(case: Case, window: &Window, opts: &RenderOptions) -> Scene {
    let mut scene = Scene::new(window.to_f64());
    for t in tiles_in_window(case, window) {
        let c = tile_level(case, &t);
        let label = opts.labels.then(|| {
            let center = tile_center(case, &t).expect("valid tile").to_f64();
            let period = cached_necklace(case, c).center_period;
            (center, format!("{c} ({period})"))
        });
        scene.polygons.push(ScenePolygon {
            vertices: to_f64_poly(case, &t),
            fill: palette(c, opts.palette_size),
            stroke: "#333333".to_string(),
            level: c,
            label,
        });
    }
    scene
}

/// Every tile meeting the window, filled by level, optionally labeled
/// "level (center period)".
pub fn render_levels(case: Case, window: &Window, opts: &RenderOptions) -> String {
    level_scene(case, window, opts).to_svg()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment {
    pub a: Pt,
    pub b: Pt,
}

impl Segment {
    pub fn length(&self) -> f64 {
        (self.b.0 - self.a.0).hypot(self.b.1 - self.a.1)
    }
}

/// Float approximation of `LC₋ᵢ`, the `i`-th preimage of `y = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct SegmentSet {
    pub generation: usize,
    pub segments: Vec<Segment>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PreimageOptions {
    /// Tolerance on the branch function when locating split points.
    pub split_eps: f64,
    /// Shorter segments are dropped.
    pub min_length: f64,
}

impl Default for PreimageOptions {
    fn default() -> Self {
        PreimageOptions {
            split_eps: 1e-9,
            min_length: 1e-6,
        }
    }
}

/// Clips to `[-r, r]²` (Liang–Barsky).
fn clip(s: Segment, r: f64) -> Option<Segment> {
    let (dx, dy) = (s.b.0 - s.a.0, s.b.1 - s.a.1);
    let (mut t0, mut t1) = (0.0f64, 1.0f64);
    for (p, q) in [
        (-dx, s.a.0 + r),
        (dx, r - s.a.0),
        (-dy, s.a.1 + r),
        (dy, r - s.a.1),
    ] {
        if p == 0.0 {
            if q < 0.0 {
                return None;
            }
        } else {
            let t = q / p;
            if p < 0.0 {
                t0 = t0.max(t);
            } else {
                t1 = t1.min(t);
            }
        }
    }
    if t0 > t1 {
        return None;
    }
    let at = |t: f64| (s.a.0 + t * dx, s.a.1 + t * dy);
    Some(Segment {
        a: at(t0),
        b: at(t1),
    })
}

/// Preimages of the critical line, generation 0 through `depth`.
///
/// `F` moves points by at most one unit, so only points within distance
/// `d - i` of the window can enter it in the remaining steps; generation
/// `i` is clipped to the square of half-width `R + d - i`, `R` being the
/// largest corner norm of the window.
pub fn critical_preimages(
    alpha: f64,
    depth: usize,
    window: &Window,
    opts: &PreimageOptions,
) -> Result<Vec<SegmentSet>> {
    if !(alpha > 0.0 && alpha < PI) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    let [x0, x1, y0, y1] = window.to_f64();
    let r = [x0.abs(), x1.abs()]
        .iter()
        .flat_map(|x| [y0.abs(), y1.abs()].map(|y| x.hypot(y)))
        .fold(0.0, f64::max);
    let (sin, cos) = alpha.sin_cos();
    let branch = |p: Pt| sin * p.0 + cos * p.1;
    let inv = |p: Pt, s: f64| (cos * p.0 - sin * p.1 + s, sin * p.0 + cos * p.1);

    let reach = |i: usize| r + (depth - i) as f64;
    let base = Segment {
        a: (-reach(0), 0.0),
        b: (reach(0), 0.0),
    };
    let mut sets = vec![SegmentSet {
        generation: 0,
        segments: vec![base],
    }];
    for i in 1..=depth {
        let mut next = Vec::new();
        for s in &sets[i - 1].segments {
            let (f0, f1) = (branch(s.a), branch(s.b));
            let mut pieces = vec![*s];
            if (f0 < -opts.split_eps && f1 > opts.split_eps)
                || (f0 > opts.split_eps && f1 < -opts.split_eps)
            {
                let t = f0 / (f0 - f1);
                let m = (s.a.0 + t * (s.b.0 - s.a.0), s.a.1 + t * (s.b.1 - s.a.1));
                pieces = vec![Segment { a: s.a, b: m }, Segment { a: m, b: s.b }];
            }
            for piece in pieces {
                let mid = ((piece.a.0 + piece.b.0) / 2.0, (piece.a.1 + piece.b.1) / 2.0);
                let sign = if branch(mid) >= 0.0 { 1.0 } else { -1.0 };
                let image = Segment {
                    a: inv(piece.a, sign),
                    b: inv(piece.b, sign),
                };
                if let Some(c) = clip(image, reach(i)) {
                    if c.length() >= opts.min_length {
                        next.push(c);
                    }
                }
            }
        }
        sets.push(SegmentSet {
            generation: i,
            segments: next,
        });
    }
    Ok(sets)
}

pub fn fractal_scene(alpha: f64, depth: usize, window: &Window) -> Result<Scene> {
    let sets = critical_preimages(alpha, depth, window, &PreimageOptions::default())?;
    let mut scene = Scene::new(window.to_f64());
    let [x0, x1, y0, y1] = scene.window;
    let base_width = 0.004 * (x1 - x0).max(y1 - y0);
    for set in &sets {
        let i = set.generation as f64;
        let gray = (255.0 * (1.0 - 0.9 * 0.88f64.powf(i))).round() as u8;
        let stroke = format!("#{gray:02x}{gray:02x}{gray:02x}");
        let width = base_width * 0.9f64.powf(i);
        for s in &set.segments {
            scene.segments.push(SceneSegment {
                a: s.a,
                b: s.b,
                stroke: stroke.clone(),
                width,
            });
        }
    }
    Ok(scene)
}

/// All generations stroked, later ones thinner and lighter.
pub fn render_fractal(alpha: f64, depth: usize, window: &Window) -> Result<String> {
    Ok(fractal_scene(alpha, depth, window)?.to_svg())
}
