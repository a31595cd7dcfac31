//! Level sets ("necklaces"), the shift `i ↦ i + u` that `F` induces on
//! their tiles, and the analytic period of every point of the plane.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num::Integer;
use serde::{Deserialize, Serialize};

use crate::dynamics::{f_step, Case, ExactPoint};
use crate::error::{Error, Result};
use crate::exactnum::Qs3;
use crate::tiling::{
    adjacent_tiles, locate, tile_center, tile_level, tile_shape, tiles_at_level, TileAddress,
    TileShape,
};

/// One level set `{V = c}` with its tiles in necklace order.
#[derive(Clone, Debug, Serialize)]
pub struct Necklace {
    pub case: Case,
    pub level: u64,
    /// Tiles in clockwise order; bead `i` (1-based) is `beads[i - 1]`.
    pub beads: Vec<TileAddress>,
    #[serde(skip)]
    pub centers: Vec<ExactPoint>,
    /// Bead count `M`.
    pub m: u64,
    /// Step constant: `F` maps bead `i` to bead `i + u (mod M)`.
    pub u: u64,
    pub center_period: u64,
    pub noncenter_period: u64,
    pub rotation_order: u32,
    pub center_orbit_count: u64,
    #[serde(skip)]
    index: HashMap<TileAddress, usize>,
}

impl Necklace {
    /// 1-based position of a tile in this necklace.
    pub fn bead_index(&self, t: &TileAddress) -> Option<usize> {
        self.index.get(t).map(|i| i + 1)
    }

    /// Index that bead `i` (1-based) is sent to.
    pub fn successor(&self, i: usize) -> usize {
        let m = self.m as usize;
        (i - 1 + self.u as usize) % m + 1
    }
}

/// `(M, u, center period, rotation order)` per case and parity of `c`.
fn parameters(case: Case, c: u64) -> (u64, u64, u64, u32) {
    match case {
        Case::PiOver2 if c.is_multiple_of(2) => (4 * c + 2, c, 2 * c + 1, 4),
        Case::PiOver2 => (4 * c + 2, c, 4 * c + 2, 2),
        Case::TwoPiOver3 if c % 2 == 1 => (3 * c + 1, c, 3 * c + 1, 3),
        Case::TwoPiOver3 => (6 * c + 2, 2 * c, 3 * c + 1, 3),
        Case::PiOver3 if c.is_multiple_of(4) => (3 * c + 2, c / 2, 3 * c / 2 + 1, 6),
        Case::PiOver3 if c.is_multiple_of(2) => (3 * c + 2, c / 2, 3 * c + 2, 3),
        Case::PiOver3 => (6 * c + 4, c, 6 * c + 4, 3),
    }
}

fn cross(a: &(Qs3, Qs3), b: &(Qs3, Qs3)) -> Qs3 {
    &a.0 * &b.1 - &a.1 * &b.0
}

fn dot(a: &(Qs3, Qs3), b: &(Qs3, Qs3)) -> Qs3 {
    &a.0 * &b.0 + &a.1 * &b.1
}

/// Sector of `v` measured clockwise from `d`: 0 on the ray of `d`, 1 in the
/// clockwise open half plane, 2 on the opposite ray, 3 in the other half.
fn sector(d: &(Qs3, Qs3), v: &(Qs3, Qs3)) -> u8 {
    match cross(d, v).sign() {
        0 if dot(d, v).sign() > 0 => 0,
        0 => 2,
        s if s < 0 => 1,
        _ => 3,
    }
}

/// Tile centers of level `c`, clockwise around their centroid, starting at
/// the upper half plane center with the smallest x (ties: largest y).
pub fn centers_at_level(case: Case, c: u64) -> Vec<ExactPoint> {
    ordered_tiles(case, c).into_iter().map(|(_, p)| p).collect()
}

fn ordered_tiles(case: Case, c: u64) -> Vec<(TileAddress, ExactPoint)> {
    let mut tiles: Vec<(TileAddress, ExactPoint)> = tiles_at_level(case, c)
        .into_iter()
        .map(|t| {
            let p = tile_center(case, &t).expect("enumerated tiles are valid");
            (t, p)
        })
        .collect();
    let n = Qs3::from_int(tiles.len() as i64);
    let inv_n = n.recip().expect("every level is non-empty");
    let (sx, sy) = tiles
        .iter()
        .fold((Qs3::zero(), Qs3::zero()), |(sx, sy), (_, p)| {
            (sx + &p.x, sy + &p.y)
        });
    let g = ExactPoint::new(sx * &inv_n, sy * &inv_n);

    let start = tiles
        .iter()
        .filter(|(_, p)| p.y.sign() >= 0)
        .min_by(|(_, a), (_, b)| a.x.cmp(&b.x).then_with(|| b.y.cmp(&a.y)))
        .expect("every level meets the upper half plane")
        .1
        .clone();
    let rel = |p: &ExactPoint| (&p.x - &g.x, &p.y - &g.y);
    let d = rel(&start);
    tiles.sort_by(|(_, a), (_, b)| {
        let (va, vb) = (rel(a), rel(b));
        sector(&d, &va).cmp(&sector(&d, &vb)).then_with(|| {
            // Same open half plane: `a` first when `b` lies clockwise of it.
            match cross(&va, &vb).sign() {
                s if s < 0 => Ordering::Less,
                0 => Ordering::Equal,
                _ => Ordering::Greater,
            }
        })
    });
    tiles
}

pub fn necklace(case: Case, c: u64) -> Necklace {
    let (m, u, center_period, rotation_order) = parameters(case, c);
    let ordered = ordered_tiles(case, c);
    debug_assert_eq!(ordered.len() as u64, m);
    let (beads, centers): (Vec<_>, Vec<_>) = ordered.into_iter().unzip();
    let index = beads.iter().enumerate().map(|(i, t)| (*t, i)).collect();
    Necklace {
        case,
        level: c,
        beads,
        centers,
        m,
        u,
        center_period,
        noncenter_period: center_period * u64::from(rotation_order),
        rotation_order,
        center_orbit_count: m / center_period,
        index,
    }
}

type Cache = RwLock<HashMap<(Case, u64), Arc<Necklace>>>;

/// Memoized `necklace`; classification looks up bead labels repeatedly.
pub fn cached_necklace(case: Case, c: u64) -> Arc<Necklace> {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(n) = cache
        .read()
        .expect("necklace cache poisoned")
        .get(&(case, c))
    {
        return Arc::clone(n);
    }
    let n = Arc::new(necklace(case, c));
    cache
        .write()
        .expect("necklace cache poisoned")
        .entry((case, c))
        .or_insert(n)
        .clone()
}

/// 1-based labels of the perfect beads of level `c`: tiles whose closure
/// travels around the necklace without touching the discontinuity from the
/// wrong side, so that their boundary shares the interior's period.
pub fn perfect_beads(case: Case, c: u64) -> Result<Vec<usize>> {
    let n = cached_necklace(case, c);
    let labels: Vec<usize> = match case {
        Case::PiOver2 if c.is_multiple_of(2) => (1..=n.beads.len()).step_by(2).collect(),
        Case::PiOver3 if c.is_multiple_of(4) => (1..=n.beads.len()).step_by(2).collect(),
        Case::TwoPiOver3 if c.is_multiple_of(2) => n
            .beads
            .iter()
            .enumerate()
            .filter(|(_, t)| tile_shape(case, t).ok() == Some(TileShape::TriangleUp))
            .map(|(i, _)| i + 1)
            .collect(),
        _ => Vec::new(),
    };
    if labels.is_empty() {
        return Err(Error::NoPerfectBeads {
            case: case.to_string(),
            level: c,
        });
    }
    Ok(labels)
}

pub fn is_perfect(case: Case, t: &TileAddress) -> bool {
    let c = tile_level(case, t);
    match case {
        Case::TwoPiOver3 => tile_shape(case, t).ok() == Some(TileShape::TriangleUp),
        Case::PiOver2 if c.is_multiple_of(2) => cached_necklace(case, c)
            .bead_index(t)
            .is_some_and(|i| i % 2 == 1),
        Case::PiOver3 if c.is_multiple_of(4) => {
            tile_shape(case, t).ok() == Some(TileShape::Hexagon)
                && cached_necklace(case, c)
                    .bead_index(t)
                    .is_some_and(|i| i % 2 == 1)
        }
        _ => false,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VertexKind {
    /// Vertex of a perfect tile; same period as that tile's interior.
    Perfect,
    /// Non-perfect vertex of period `18k + 9`.
    NonPerfectShort,
    /// Non-perfect vertex of period `18k + 15`.
    NonPerfectLong,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Category {
    FixedTileCenter,
    TileInterior,
    PerfectBoundary,
    NonPerfectEdge,
    Vertex(VertexKind),
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Category::FixedTileCenter => f.write_str("FixedTileCenter"),
            Category::TileInterior => f.write_str("TileInterior"),
            Category::PerfectBoundary => f.write_str("PerfectBoundary"),
            Category::NonPerfectEdge => f.write_str("NonPerfectEdge"),
            Category::Vertex(k) => write!(f, "Vertex({k:?})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AnalyticPeriod {
    Value(u64),
    /// No closed form applies; the period comes from the oracle alone.
    OracleOnly,
}

impl AnalyticPeriod {
    pub fn value(self) -> Option<u64> {
        match self {
            AnalyticPeriod::Value(v) => Some(v),
            AnalyticPeriod::OracleOnly => None,
        }
    }
}

impl fmt::Display for AnalyticPeriod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalyticPeriod::Value(v) => write!(f, "{v}"),
            AnalyticPeriod::OracleOnly => f.write_str("oracle-only"),
        }
    }
}

impl Serialize for AnalyticPeriod {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            AnalyticPeriod::Value(v) => s.serialize_u64(*v),
            AnalyticPeriod::OracleOnly => s.serialize_str("oracle-only"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodReport {
    pub case: Case,
    pub point: ExactPoint,
    pub category: Category,
    /// Level of the tile containing the point, or of the tile whose
    /// dynamics the boundary point follows.
    pub level: u64,
    pub analytic_period: AnalyticPeriod,
    pub oracle_period: Option<u64>,
}

impl PeriodReport {
    /// Analytic and oracle values disagree (false when either is missing).
    pub fn disagrees(&self) -> bool {
        matches!(
            (self.analytic_period, self.oracle_period),
            (AnalyticPeriod::Value(a), Some(o)) if a != o
        )
    }

    pub fn period(&self) -> Option<u64> {
        self.analytic_period.value().or(self.oracle_period)
    }
}

fn report(case: Case, p: &ExactPoint, category: Category, level: u64, period: u64) -> PeriodReport {
    PeriodReport {
        case,
        point: p.clone(),
        category,
        level,
        analytic_period: AnalyticPeriod::Value(period),
        oracle_period: None,
    }
}

/// Period of `p` from the level structure alone (no iteration, except the
/// transport of π/3 boundary points to the axis `y = 0`).
pub fn analytic_period(case: Case, p: &ExactPoint) -> PeriodReport {
    match locate(case, p) {
        Ok(t) => {
            let c = tile_level(case, &t);
            let n = cached_necklace(case, c);
            if tile_center(case, &t).expect("located tile is valid") == *p {
                report(case, p, Category::FixedTileCenter, c, n.center_period)
            } else {
                report(case, p, Category::TileInterior, c, n.noncenter_period)
            }
        }
        Err(_) => match case {
            Case::PiOver2 => square_boundary(p),
            Case::TwoPiOver3 => trihex_boundary(p),
            Case::PiOver3 => hexagonal_boundary(p),
        },
    }
}

fn square_boundary(p: &ExactPoint) -> PeriodReport {
    let case = Case::PiOver2;
    let k = crate::tiling::floor_arguments(case, p)[0].floor();
    let l = crate::tiling::floor_arguments(case, p)[1].floor();
    let to_i = |n: num::BigInt| -> i64 { num::ToPrimitive::to_i64(&n).expect("index fits i64") };
    let (mut k, mut l) = (to_i(k), to_i(l));
    let x_int = p.x.is_integer();
    let y_int = p.y.is_integer();
    // The square to the lower left of an odd grid line carries the period.
    if x_int && k.is_odd() {
        k -= 1;
    }
    if y_int && l.is_odd() {
        l -= 1;
    }
    let t = TileAddress::Square { k, l };
    let c = tile_level(case, &t);
    let perfect = adjacent_tiles(case, p).iter().any(|a| is_perfect(case, a));
    let category = match (x_int && y_int, perfect) {
        (true, true) => Category::Vertex(VertexKind::Perfect),
        (true, false) => Category::Vertex(VertexKind::NonPerfectShort),
        (false, true) => Category::PerfectBoundary,
        (false, false) => Category::NonPerfectEdge,
    };
    report(case, p, category, c, 8 * c + 4)
}

fn trihex_boundary(p: &ExactPoint) -> PeriodReport {
    let case = Case::TwoPiOver3;
    let adj = adjacent_tiles(case, p);
    let up = adj
        .iter()
        .find(|t| tile_shape(case, t).ok() == Some(TileShape::TriangleUp));
    let vertex = adj.len() == 4;
    let (t, category) = match (up, vertex) {
        (Some(t), true) => (*t, Category::Vertex(VertexKind::Perfect)),
        (Some(t), false) => (*t, Category::PerfectBoundary),
        (None, _) => {
            let hex = adj
                .iter()
                .find(|t| tile_shape(case, t).ok() == Some(TileShape::Hexagon))
                .expect("every edge borders a hexagon");
            (*hex, Category::NonPerfectEdge)
        }
    };
    let c = tile_level(case, &t);
    report(case, p, category, c, 9 * c + 3)
}

fn hexagonal_boundary(p: &ExactPoint) -> PeriodReport {
    let case = Case::PiOver3;
    let bound = crate::oracle::default_max_iter(crate::tiling::level(case, p));
    let mut q = p.clone();
    for _ in 0..=bound {
        if let Some((category, level, period)) = hexagonal_boundary_at(&q) {
            return report(case, p, category, level, period);
        }
        q = f_step(case, &q);
        if q == *p {
            break;
        }
    }
    let mut r = report(
        case,
        p,
        Category::NonPerfectEdge,
        crate::tiling::level(case, p),
        0,
    );
    r.analytic_period = AnalyticPeriod::OracleOnly;
    r.oracle_period = crate::oracle::brute_force_period(case, p, bound).ok();
    r
}

/// Closed-form period of a critical π/3 point that touches a perfect
/// hexagon or lies on `y = 0`.
fn hexagonal_boundary_at(p: &ExactPoint) -> Option<(Category, u64, u64)> {
    let case = Case::PiOver3;
    let adj = adjacent_tiles(case, p);
    let vertex = adj.len() == 4;
    if let Some(h) = adj.iter().find(|t| is_perfect(case, t)) {
        let c = tile_level(case, h);
        let category = if vertex {
            Category::Vertex(VertexKind::Perfect)
        } else {
            Category::PerfectBoundary
        };
        return Some((category, c, 9 * c + 6));
    }
    if !p.y.is_zero() {
        return None;
    }
    if !vertex {
        let tri = adj
            .iter()
            .find(|t| tile_shape(case, t).ok() != Some(TileShape::Hexagon))
            .expect("every edge borders a triangle");
        let t = tile_level(case, tri);
        let k = t / 4;
        return Some((Category::NonPerfectEdge, t, 108 * k + 72));
    }
    let above = |shape_is_hex: bool| {
        adj.iter()
            .find(|t| {
                let hex = tile_shape(case, t).ok() == Some(TileShape::Hexagon);
                hex == shape_is_hex && tile_center(case, t).expect("valid").y.sign() > 0
            })
            .map(|t| tile_level(case, t))
    };
    let h = above(true)?;
    let t = above(false)?;
    if h % 4 != 2 {
        return None;
    }
    let k = (h - 2) / 4;
    if t + 1 == h {
        Some((Category::Vertex(VertexKind::NonPerfectShort), h, 18 * k + 9))
    } else {
        Some((Category::Vertex(VertexKind::NonPerfectLong), h, 18 * k + 15))
    }
}

/// A residue class `modulus·n + offset`, `n ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PeriodFamily {
    pub modulus: u64,
    pub offset: u64,
}

impl PeriodFamily {
    pub const fn new(modulus: u64, offset: u64) -> Self {
        PeriodFamily { modulus, offset }
    }

    pub fn contains(&self, p: u64) -> bool {
        p >= self.offset && (p - self.offset).is_multiple_of(self.modulus)
    }

    pub fn nth(&self, n: u64) -> u64 {
        self.modulus * n + self.offset
    }
}

impl fmt::Display for PeriodFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}n+{}", self.modulus, self.offset)
    }
}

/// The period families of each case, centers first.
pub fn period_families(case: Case) -> &'static [PeriodFamily] {
    const PI2: [PeriodFamily; 3] = [
        PeriodFamily::new(4, 1),
        PeriodFamily::new(8, 6),
        PeriodFamily::new(8, 4),
    ];
    const TWO_PI3: [PeriodFamily; 2] = [PeriodFamily::new(3, 1), PeriodFamily::new(9, 3)];
    const PI3: [PeriodFamily; 9] = [
        PeriodFamily::new(6, 1),
        PeriodFamily::new(12, 8),
        PeriodFamily::new(12, 10),
        PeriodFamily::new(36, 6),
        PeriodFamily::new(36, 24),
        PeriodFamily::new(36, 30),
        PeriodFamily::new(18, 9),
        PeriodFamily::new(18, 15),
        PeriodFamily::new(108, 72),
    ];
    match case {
        Case::PiOver2 => &PI2,
        Case::TwoPiOver3 => &TWO_PI3,
        Case::PiOver3 => &PI3,
    }
}

pub fn family_of(case: Case, period: u64) -> Option<PeriodFamily> {
    period_families(case)
        .iter()
        .copied()
        .find(|f| f.contains(period))
}

/// Every period occurring on levels `0..=c_max`, with its family.
///
/// For π/3 the boundary cycles of index `k` (`18k+9`, `18k+15`, `108k+72`)
/// are counted once `4k <= c_max`.
pub fn period_set(case: Case, c_max: u64) -> Vec<(u64, PeriodFamily)> {
    let mut periods: Vec<u64> = Vec::new();
    for c in 0..=c_max {
        let (_, _, center, rot) = parameters(case, c);
        periods.push(center);
        periods.push(center * u64::from(rot));
    }
    if case == Case::PiOver3 {
        for k in 0..=c_max / 4 {
            periods.extend([18 * k + 9, 18 * k + 15, 108 * k + 72]);
        }
    }
    periods.sort_unstable();
    periods.dedup();
    periods
        .into_iter()
        .map(|p| {
            (
                p,
                family_of(case, p).expect("level periods lie in a family"),
            )
        })
        .collect()
}
