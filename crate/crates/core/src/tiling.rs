//! Tile addressing, tile geometry and the quantized first integrals.
//!
//! For α = π/2 the open tiles are the unit squares of the integer grid,
//! addressed by `(k, ℓ) = (⌊x⌋, ⌊y⌋)`. For α = 2π/3 and α = π/3 they are the
//! hexagons and triangles of a trihexagonal grid, addressed by the floors
//! `(k, ℓ, m) = (B, C, D)` of three linear forms, one per line family. A point
//! lies on the grid exactly when one of these forms is an integer.

use std::fmt;

use num::{BigInt, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::dynamics::{Case, ExactPoint};
use crate::error::{Error, Result};
use crate::exactnum::{Qs3, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TileAddress {
    Square { k: i64, l: i64 },
    TriHex { k: i64, l: i64, m: i64 },
}

impl fmt::Display for TileAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TileAddress::Square { k, l } => write!(f, "T[{k},{l}]"),
            TileAddress::TriHex { k, l, m } => write!(f, "T[{k},{l},{m}]"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TileShape {
    Square,
    Hexagon,
    TriangleUp,
    TriangleDown,
}

impl fmt::Display for TileShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TileShape::Square => "square",
            TileShape::Hexagon => "hexagon",
            TileShape::TriangleUp => "triangle-up",
            TileShape::TriangleDown => "triangle-down",
        })
    }
}

/// Closed axis-aligned rectangle with rational corners.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub x_min: Rat,
    pub x_max: Rat,
    pub y_min: Rat,
    pub y_max: Rat,
}

impl Window {
    pub fn new(x_min: Rat, x_max: Rat, y_min: Rat, y_max: Rat) -> Result<Self> {
        if x_min >= x_max || y_min >= y_max {
            return Err(Error::EmptyWindow);
        }
        Ok(Window {
            x_min,
            x_max,
            y_min,
            y_max,
        })
    }

    /// `[-r, r]²`.
    pub fn square(r: i64) -> Result<Self> {
        let r = Rat::from_integer(BigInt::from(r));
        Window::new(-r.clone(), r.clone(), -r.clone(), r)
    }

    pub fn contains(&self, p: &ExactPoint) -> bool {
        let (x0, x1) = (
            Qs3::from_rat(self.x_min.clone()),
            Qs3::from_rat(self.x_max.clone()),
        );
        let (y0, y1) = (
            Qs3::from_rat(self.y_min.clone()),
            Qs3::from_rat(self.y_max.clone()),
        );
        x0 <= p.x && p.x <= x1 && y0 <= p.y && p.y <= y1
    }

    fn corners(&self) -> [ExactPoint; 4] {
        let p = |x: &Rat, y: &Rat| ExactPoint::rational(x.clone(), y.clone());
        [
            p(&self.x_min, &self.y_min),
            p(&self.x_max, &self.y_min),
            p(&self.x_max, &self.y_max),
            p(&self.x_min, &self.y_max),
        ]
    }

    pub fn to_f64(&self) -> [f64; 4] {
        let f = |r: &Rat| r.to_f64().unwrap_or(f64::NAN);
        [
            f(&self.x_min),
            f(&self.x_max),
            f(&self.y_min),
            f(&self.y_max),
        ]
    }
}

impl std::str::FromStr for Window {
    type Err = Error;
    /// `x_min,x_max,y_min,y_max`, each a rational.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(Error::MalformedPoint {
                text: s.to_string(),
                reason: "window needs four rationals: x_min,x_max,y_min,y_max".to_string(),
            });
        }
        let r: Vec<Rat> = parts
            .iter()
            .map(|p| crate::exactnum::parse_rat(p))
            .collect::<std::result::Result<_, _>>()?;
        Window::new(r[0].clone(), r[1].clone(), r[2].clone(), r[3].clone())
    }
}

fn to_i64(n: BigInt) -> i64 {
    // Coordinates of this size (about 10^18) are far outside anything a
    // period computation could ever finish on.
    n.to_i64().expect("tile index exceeds 64 bits")
}

fn q(n1: i64, d1: i64, n2: i64, d2: i64) -> Qs3 {
    Qs3::from_ratios(n1, d1, n2, d2)
}

/// The linear forms whose floors are the tile indices. Each line family of
/// the grid is the set where one of them is an integer.
pub fn floor_arguments(case: Case, p: &ExactPoint) -> Vec<Qs3> {
    match case {
        Case::PiOver2 => vec![p.x.clone(), p.y.clone()],
        Case::TwoPiOver3 | Case::PiOver3 => {
            // x/2 ∓ √3y/6 (+1/2), √3y/3
            let half_x = p.x.half();
            let y_part = &p.y * &q(0, 1, 1, 6);
            let (b_shift, d_shift) = if case == Case::TwoPiOver3 {
                (Qs3::zero(), q(1, 2, 0, 1))
            } else {
                (q(1, 2, 0, 1), Qs3::zero())
            };
            let b = &half_x - &y_part + b_shift;
            let c = &p.y * &q(0, 1, 1, 3);
            let d = half_x + y_part + d_shift;
            vec![b, c, d]
        }
    }
}

pub fn is_critical(case: Case, p: &ExactPoint) -> bool {
    floor_arguments(case, p).iter().any(Qs3::is_integer)
}

/// Number of grid lines through `p`: 0 inside a tile, 1 on an open edge,
/// 2 at a vertex.
pub fn critical_multiplicity(case: Case, p: &ExactPoint) -> usize {
    floor_arguments(case, p)
        .iter()
        .filter(|a| a.is_integer())
        .count()
}

fn address_from_indices(case: Case, idx: &[i64]) -> TileAddress {
    match case {
        Case::PiOver2 => TileAddress::Square {
            k: idx[0],
            l: idx[1],
        },
        _ => TileAddress::TriHex {
            k: idx[0],
            l: idx[1],
            m: idx[2],
        },
    }
}

/// The open tile containing `p`.
pub fn locate(case: Case, p: &ExactPoint) -> Result<TileAddress> {
    let args = floor_arguments(case, p);
    if args.iter().any(Qs3::is_integer) {
        return Err(Error::CriticalPoint(p.to_string()));
    }
    let idx: Vec<i64> = args.iter().map(|a| to_i64(a.floor())).collect();
    let t = address_from_indices(case, &idx);
    debug_assert!(is_valid(case, &t));
    Ok(t)
}

/// Tiles whose closure contains `p`: one for interior points, two on an
/// edge, four at a vertex.
pub fn adjacent_tiles(case: Case, p: &ExactPoint) -> Vec<TileAddress> {
    let choices: Vec<Vec<i64>> = floor_arguments(case, p)
        .iter()
        .map(|a| {
            let f = to_i64(a.floor());
            if a.is_integer() {
                vec![f - 1, f]
            } else {
                vec![f]
            }
        })
        .collect();
    let mut combos: Vec<Vec<i64>> = vec![vec![]];
    for opts in &choices {
        combos = combos
            .into_iter()
            .flat_map(|prefix| {
                opts.iter().map(move |&o| {
                    let mut v = prefix.clone();
                    v.push(o);
                    v
                })
            })
            .collect();
    }
    combos
        .iter()
        .map(|idx| address_from_indices(case, idx))
        .filter(|t| is_valid(case, t))
        .collect()
}

pub fn is_valid(case: Case, t: &TileAddress) -> bool {
    match (case, *t) {
        (Case::PiOver2, TileAddress::Square { .. }) => true,
        (Case::TwoPiOver3, TileAddress::TriHex { k, l, m }) => (0..=2).contains(&(m - k - l)),
        (Case::PiOver3, TileAddress::TriHex { k, l, m }) => (-1..=1).contains(&(m - k - l)),
        _ => false,
    }
}

fn check(case: Case, t: &TileAddress) -> Result<()> {
    if is_valid(case, t) {
        Ok(())
    } else {
        Err(Error::InvalidAddress {
            address: t.to_string(),
            case: case.to_string(),
        })
    }
}

/// `V(p)` from the floors at `p`. Total, but only invariant off the grid.
pub fn level(case: Case, p: &ExactPoint) -> u64 {
    let idx: Vec<i64> = floor_arguments(case, p)
        .iter()
        .map(|a| to_i64(a.floor()))
        .collect();
    level_of_indices(case, &idx)
}

fn level_of_indices(case: Case, idx: &[i64]) -> u64 {
    let v = match case {
        Case::PiOver2 => {
            let (k, l) = (idx[0], idx[1]);
            ((k + l + 1).abs() - 1).max((k - l).abs())
        }
        Case::TwoPiOver3 => {
            let (k, l, m) = (idx[0], idx[1], idx[2]);
            (k - l + m)
                .abs()
                .max((k + l + m + 1).abs() - 1)
                .max((-k + l + m).abs())
        }
        Case::PiOver3 => {
            let (k, l, m) = (idx[0], idx[1], idx[2]);
            (k - l + m)
                .abs()
                .max((k + l + m + 1).abs() - 1)
                .max((-k + l + m + 1).abs() - 1)
        }
    };
    u64::try_from(v).expect("first integral is non-negative")
}

/// Level of a tile (the constant value of `V` on it).
pub fn tile_level(case: Case, t: &TileAddress) -> u64 {
    match *t {
        TileAddress::Square { k, l } => level_of_indices(case, &[k, l]),
        TileAddress::TriHex { k, l, m } => level_of_indices(case, &[k, l, m]),
    }
}

pub fn tile_shape(case: Case, t: &TileAddress) -> Result<TileShape> {
    check(case, t)?;
    Ok(match (case, *t) {
        (_, TileAddress::Square { .. }) => TileShape::Square,
        (Case::TwoPiOver3, TileAddress::TriHex { k, l, m }) => match m - k - l {
            0 => TileShape::TriangleUp,
            1 => TileShape::Hexagon,
            _ => TileShape::TriangleDown,
        },
        (_, TileAddress::TriHex { k, l, m }) => match m - k - l {
            -1 => TileShape::TriangleUp,
            0 => TileShape::Hexagon,
            _ => TileShape::TriangleDown,
        },
    })
}

pub fn tile_center(case: Case, t: &TileAddress) -> Result<ExactPoint> {
    let shape = tile_shape(case, t)?;
    Ok(match *t {
        TileAddress::Square { k, l } => {
            ExactPoint::new(q(2 * k + 1, 2, 0, 1), q(2 * l + 1, 2, 0, 1))
        }
        TileAddress::TriHex { k, l, .. } => {
            let base = 2 * (2 * k + l);
            // (x offset in halves, y = √3(ℓ + sixths/6))
            let (dx2, sixths) = match (case, shape) {
                (Case::TwoPiOver3, TileShape::Hexagon) => (3, 3),
                (Case::TwoPiOver3, TileShape::TriangleUp) => (1, 1),
                (Case::TwoPiOver3, _) => (5, 5),
                (_, TileShape::Hexagon) => (1, 3),
                (_, TileShape::TriangleUp) => (-1, 1),
                _ => (3, 5),
            };
            ExactPoint::new(q(base + dx2, 2, 0, 1), q(0, 1, 6 * l + sixths, 6))
        }
    })
}

/// Vertices of the closed tile, counter-clockwise. Squares, hexagons and
/// triangles all have unit sides.
pub fn tile_polygon(case: Case, t: &TileAddress) -> Result<Vec<ExactPoint>> {
    let shape = tile_shape(case, t)?;
    let c = tile_center(case, t)?;
    let off = |dx: Qs3, dy: Qs3| ExactPoint::new(&c.x + &dx, &c.y + &dy);
    let h = |n: i64| q(n, 2, 0, 1);
    Ok(match shape {
        TileShape::Square => vec![
            off(h(-1), h(-1)),
            off(h(1), h(-1)),
            off(h(1), h(1)),
            off(h(-1), h(1)),
        ],
        TileShape::Hexagon => {
            let r = q(0, 1, 1, 2);
            vec![
                off(h(2), Qs3::zero()),
                off(h(1), r.clone()),
                off(h(-1), r.clone()),
                off(h(-2), Qs3::zero()),
                off(h(-1), -&r),
                off(h(1), -r),
            ]
        }
        TileShape::TriangleUp => {
            let low = q(0, 1, -1, 6);
            vec![
                off(h(-1), low.clone()),
                off(h(1), low),
                off(Qs3::zero(), q(0, 1, 1, 3)),
            ]
        }
        TileShape::TriangleDown => {
            let high = q(0, 1, 1, 6);
            vec![
                off(Qs3::zero(), q(0, 1, -1, 3)),
                off(h(1), high.clone()),
                off(h(-1), high),
            ]
        }
    })
}

fn cross(o: &ExactPoint, a: &ExactPoint, b: &ExactPoint) -> Qs3 {
    (&a.x - &o.x) * (&b.y - &o.y) - (&a.y - &o.y) * (&b.x - &o.x)
}

/// Strict interior test for a counter-clockwise convex polygon.
pub fn strictly_inside(poly: &[ExactPoint], p: &ExactPoint) -> bool {
    (0..poly.len()).all(|i| cross(&poly[i], &poly[(i + 1) % poly.len()], p).sign() > 0)
}

/// True when the open tile and the window's interior overlap (separating
/// axis test on the window axes and the polygon's edge normals).
pub fn polygon_meets_window(poly: &[ExactPoint], w: &Window) -> bool {
    let wx0 = Qs3::from_rat(w.x_min.clone());
    let wx1 = Qs3::from_rat(w.x_max.clone());
    let wy0 = Qs3::from_rat(w.y_min.clone());
    let wy1 = Qs3::from_rat(w.y_max.clone());
    let px_min = poly.iter().map(|p| &p.x).min().expect("non-empty polygon");
    let px_max = poly.iter().map(|p| &p.x).max().expect("non-empty polygon");
    let py_min = poly.iter().map(|p| &p.y).min().expect("non-empty polygon");
    let py_max = poly.iter().map(|p| &p.y).max().expect("non-empty polygon");
    if *px_max <= wx0 || wx1 <= *px_min || *py_max <= wy0 || wy1 <= *py_min {
        return false;
    }
    let corners = w.corners();
    for i in 0..poly.len() {
        let a = &poly[i];
        let b = &poly[(i + 1) % poly.len()];
        // Outward side of a CCW edge is where cross < 0.
        if corners.iter().all(|c| cross(a, b, c).sign() <= 0) {
            return false;
        }
    }
    true
}

/// Candidate addresses covering `[x0, x1] × [y0, y1]` (not yet filtered).
fn candidate_tiles(case: Case, x0: i64, x1: i64, y0: i64, y1: i64) -> Vec<TileAddress> {
    let mut out = Vec::new();
    match case {
        Case::PiOver2 => {
            for k in x0 - 1..=x1 {
                for l in y0 - 1..=y1 {
                    out.push(TileAddress::Square { k, l });
                }
            }
        }
        _ => {
            // Strips have height √3 > 1, so ℓ ∈ [y0 - 1, y1] over-covers.
            for l in y0 - 1..=y1 {
                // x ranges over 2k + ℓ + [-1, 4].
                let k_lo = (x0 - l - 4).div_euclid(2) - 1;
                let k_hi = (x1 - l + 1).div_euclid(2) + 1;
                for k in k_lo..=k_hi {
                    let offsets: [i64; 3] = if case == Case::TwoPiOver3 {
                        [0, 1, 2]
                    } else {
                        [-1, 0, 1]
                    };
                    for d in offsets {
                        out.push(TileAddress::TriHex { k, l, m: k + l + d });
                    }
                }
            }
        }
    }
    out
}

/// Every tile whose interior meets the window, sorted by address.
pub fn tiles_in_window(case: Case, w: &Window) -> Vec<TileAddress> {
    let fl = |r: &Rat| to_i64(r.floor().to_integer());
    let ce = |r: &Rat| to_i64(r.ceil().to_integer());
    let mut tiles: Vec<TileAddress> =
        candidate_tiles(case, fl(&w.x_min), ce(&w.x_max), fl(&w.y_min), ce(&w.y_max))
            .into_iter()
            .filter(|t| {
                let poly = tile_polygon(case, t).expect("candidate is valid");
                polygon_meets_window(&poly, w)
            })
            .collect();
    tiles.sort();
    tiles
}

/// Every tile on level `c`, in address order.
pub fn tiles_at_level(case: Case, c: u64) -> Vec<TileAddress> {
    let r = i64::try_from(c).expect("level fits in i64") + 3;
    let mut tiles: Vec<TileAddress> = candidate_tiles(case, -r, r, -r, r)
        .into_iter()
        .filter(|t| tile_level(case, t) == c)
        .collect();
    tiles.sort();
    tiles.dedup();
    tiles
}
