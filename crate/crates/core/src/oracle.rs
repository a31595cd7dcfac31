//! Brute-force ground truth: exact orbit periods and verification sweeps
//! for every analytic claim made by `tiling` and `necklace`.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::dynamics::{f_inv_step, f_step, itinerary, itinerary_affine, Case, ExactPoint};
use crate::error::{Error, Result};
use crate::exactnum::{Qs3, Rat};
use crate::necklace::{
    analytic_period, cached_necklace, family_of, period_families, PeriodFamily, PeriodReport,
};
use crate::tiling::{
    is_critical, level, locate, tile_center, tile_polygon, tiles_at_level, tiles_in_window,
    TileAddress, Window,
};

/// Stored failures per report; the total is always counted.
pub const MAX_STORED_FAILURES: usize = 32;

/// Iteration budget for a point of level about `c`; comfortably above the
/// largest period family, `108k + 72` with `4k <= c + 2`.
pub fn default_max_iter(c: u64) -> usize {
    120 * (c as usize + 2) + 100
}

/// Smallest `n >= 1` with `F^n(p) = p`.
pub fn brute_force_period(case: Case, p: &ExactPoint, max_iter: usize) -> Result<u64> {
    let mut q = f_step(case, p);
    for n in 1..=max_iter {
        if q == *p {
            return Ok(n as u64);
        }
        q = f_step(case, &q);
    }
    Err(Error::PeriodNotFound { max_iter })
}

/// The analytic report with the oracle value filled in.
pub fn period_report(case: Case, p: &ExactPoint, max_iter: Option<usize>) -> PeriodReport {
    let mut r = analytic_period(case, p);
    if r.oracle_period.is_none() {
        let budget = max_iter.unwrap_or_else(|| default_max_iter(level(case, p)));
        r.oracle_period = brute_force_period(case, p, budget).ok();
    }
    r
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleSpec {
    pub window: Window,
    pub max_denominator: u64,
    pub count: usize,
    pub seed: u64,
    pub exclude_critical: bool,
}

impl SampleSpec {
    pub fn new(window: Window, max_denominator: u64, count: usize, seed: u64) -> Self {
        SampleSpec {
            window,
            max_denominator: max_denominator.max(1),
            count,
            seed,
            exclude_critical: true,
        }
    }
}

fn random_rat_in(rng: &mut ChaCha8Rng, lo: &Rat, hi: &Rat, max_den: u64) -> Rat {
    loop {
        let d = rng.gen_range(1..=max_den as i64);
        let dd = BigInt::from(d);
        let n_lo = (lo * Rat::from_integer(dd.clone())).ceil().to_integer();
        let n_hi = (hi * Rat::from_integer(dd.clone())).floor().to_integer();
        if n_lo > n_hi {
            continue;
        }
        let span = &n_hi - &n_lo + 1;
        let span = num::ToPrimitive::to_u64(&span).expect("window span fits in 64 bits");
        let n = n_lo + BigInt::from(rng.gen_range(0..span));
        return Rat::new(n, dd);
    }
}

/// Deterministic rational sample: the same spec always yields the same
/// points in the same order.
pub fn sample_points(case: Case, spec: &SampleSpec) -> Vec<ExactPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let w = &spec.window;
    let mut out = Vec::with_capacity(spec.count);
    while out.len() < spec.count {
        let x = random_rat_in(&mut rng, &w.x_min, &w.x_max, spec.max_denominator);
        let y = random_rat_in(&mut rng, &w.y_min, &w.y_max, spec.max_denominator);
        let p = ExactPoint::rational(x, y);
        if spec.exclude_critical && is_critical(case, &p) {
            continue;
        }
        out.push(p);
    }
    out
}

/// `n` rational points strictly inside tile `t`, deterministic in `seed`.
pub fn sample_in_tile(case: Case, t: &TileAddress, n: usize, seed: u64) -> Vec<ExactPoint> {
    let poly = tile_polygon(case, t).expect("valid tile");
    let fl = |q: &Qs3| Rat::from_integer(q.floor());
    let x_lo = poly.iter().map(|p| fl(&p.x)).min().expect("polygon");
    let y_lo = poly.iter().map(|p| fl(&p.y)).min().expect("polygon");
    let x_hi = poly.iter().map(|p| fl(&p.x)).max().expect("polygon") + Rat::from_integer(1.into());
    let y_hi = poly.iter().map(|p| fl(&p.y)).max().expect("polygon") + Rat::from_integer(1.into());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let x = random_rat_in(&mut rng, &x_lo, &x_hi, 60);
        let y = random_rat_in(&mut rng, &y_lo, &y_hi, 60);
        let p = ExactPoint::rational(x, y);
        if locate(case, &p).ok() == Some(*t) {
            out.push(p);
        }
    }
    out
}

/// Points `i/d, j/d` of the window.
pub fn lattice_points(window: &Window, denominator: u64) -> Vec<ExactPoint> {
    let d = BigInt::from(denominator);
    let range = |lo: &Rat, hi: &Rat| {
        let a = (lo * Rat::from_integer(d.clone())).ceil().to_integer();
        let b = (hi * Rat::from_integer(d.clone())).floor().to_integer();
        num::range_inclusive(a, b)
            .map(|n| Rat::new(n, d.clone()))
            .collect::<Vec<_>>()
    };
    let xs = range(&window.x_min, &window.x_max);
    let ys = range(&window.y_min, &window.y_max);
    ys.iter()
        .flat_map(|y| {
            xs.iter()
                .map(move |x| ExactPoint::rational(x.clone(), y.clone()))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub point: ExactPoint,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub case: Case,
    pub checked: u64,
    pub failure_count: u64,
    /// At most `MAX_STORED_FAILURES`, in input order.
    pub failures: Vec<Failure>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    /// Equal apart from timing.
    pub fn same_outcome(&self, other: &VerifyReport) -> bool {
        self.suite == other.suite
            && self.case == other.case
            && self.checked == other.checked
            && self.failure_count == other.failure_count
            && self.failures == other.failures
    }

    /// One `failure` record per stored failure, then one `summary` record.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for f in &self.failures {
            let rec = json!({
                "record": "failure",
                "suite": self.suite,
                "case": self.case,
                "point": f.point,
                "expected": f.expected,
                "got": f.got,
            });
            out.push_str(&rec.to_string());
            out.push('\n');
        }
        let summary = json!({
            "record": "summary",
            "suite": self.suite,
            "case": self.case,
            "checked": self.checked,
            "failures": self.failure_count,
            "pass": self.passed(),
            "elapsed_ms": self.elapsed.as_millis() as u64,
        });
        out.push_str(&summary.to_string());
        out.push('\n');
        out
    }

    /// Concatenates two reports of the same suite, keeping input order.
    pub fn merge(mut self, other: VerifyReport) -> VerifyReport {
        self.checked += other.checked;
        self.failure_count += other.failure_count;
        let room = MAX_STORED_FAILURES.saturating_sub(self.failures.len());
        self.failures.extend(other.failures.into_iter().take(room));
        self.elapsed += other.elapsed;
        self
    }
}

/// Runs `check` on every item in parallel; the report is independent of
/// scheduling because results are collected in input order.
fn run_suite<T, F>(suite: &str, case: Case, items: &[T], check: F) -> VerifyReport
where
    T: Sync,
    F: Fn(&T) -> Option<Failure> + Sync,
{
    let start = Instant::now();
    let results: Vec<Option<Failure>> = items.par_iter().map(&check).collect();
    let failure_count = results.iter().filter(|r| r.is_some()).count() as u64;
    let failures = results
        .into_iter()
        .flatten()
        .take(MAX_STORED_FAILURES)
        .collect();
    VerifyReport {
        suite: suite.to_string(),
        case,
        checked: items.len() as u64,
        failure_count,
        failures,
        elapsed: start.elapsed(),
    }
}

fn fail(p: &ExactPoint, expected: impl ToString, got: impl ToString) -> Option<Failure> {
    Some(Failure {
        point: p.clone(),
        expected: expected.to_string(),
        got: got.to_string(),
    })
}

/// `V(F p) = V(p) = V(F⁻¹ p)` on the sample.
pub fn verify_integral(case: Case, spec: &SampleSpec) -> VerifyReport {
    let points = sample_points(case, spec);
    run_suite("invariance", case, &points, |p| {
        let v = level(case, p);
        let fwd = level(case, &f_step(case, p));
        let back = level(case, &f_inv_step(case, p));
        if fwd != v || back != v {
            fail(p, v, format!("forward {fwd}, backward {back}"))
        } else {
            None
        }
    })
}

/// `F` sends bead `i`'s center to bead `i + u`'s center, for levels `0..=c_max`.
pub fn verify_necklace(case: Case, c_max: u64) -> VerifyReport {
    let items: Vec<(u64, usize)> = (0..=c_max)
        .flat_map(|c| (1..=cached_necklace(case, c).beads.len()).map(move |i| (c, i)))
        .collect();
    run_suite("necklace", case, &items, |&(c, i)| {
        let n = cached_necklace(case, c);
        let image = f_step(case, &n.centers[i - 1]);
        let j = n.successor(i);
        if image != n.centers[j - 1] {
            fail(&n.centers[i - 1], n.centers[j - 1].to_string(), image)
        } else {
            None
        }
    })
}

/// The itinerary map over one tile cycle is a rotation of the stated order
/// whose only fixed point is the bead center.
pub fn verify_rotation_orders(case: Case, c_max: u64) -> VerifyReport {
    let items: Vec<(u64, usize)> = (0..=c_max)
        .flat_map(|c| (0..cached_necklace(case, c).beads.len()).map(move |i| (c, i)))
        .collect();
    run_suite("rotation", case, &items, |&(c, i)| {
        let n = cached_necklace(case, c);
        let center = &n.centers[i];
        let map = itinerary_affine(case, center, n.center_period as usize);
        let order = map.linear.order(12);
        let fixed = map.fixed_point();
        if order != Some(n.rotation_order) || fixed.as_ref() != Some(center) {
            let got = format!(
                "order {}, fixed point {}",
                order.map_or("none".to_string(), |o| o.to_string()),
                fixed.map_or("none".to_string(), |p| p.to_string())
            );
            fail(
                center,
                format!("order {}, fixed point {center}", n.rotation_order),
                got,
            )
        } else {
            None
        }
    })
}

/// Every sampled interior point of a level-`c` tile shares the center's
/// itinerary over one tile cycle.
pub fn verify_tile_itineraries(case: Case, c: u64, per_tile: usize, seed: u64) -> VerifyReport {
    let n = cached_necklace(case, c);
    let len = n.center_period as usize;
    let items: Vec<(ExactPoint, ExactPoint)> = n
        .beads
        .iter()
        .enumerate()
        .flat_map(|(i, t)| {
            let center = n.centers[i].clone();
            sample_in_tile(case, t, per_tile, seed.wrapping_add(i as u64))
                .into_iter()
                .map(move |p| (p, center.clone()))
        })
        .collect();
    run_suite("itineraries", case, &items, |(p, center)| {
        let want = itinerary(case, center, len);
        let got = itinerary(case, p, len);
        if want != got {
            fail(p, want, got)
        } else {
            None
        }
    })
}

fn compare_periods(case: Case, p: &ExactPoint) -> Option<Failure> {
    let r = period_report(case, p, None);
    match (r.analytic_period.value(), r.oracle_period) {
        (Some(a), Some(o)) if a == o => None,
        (None, Some(o)) if family_of(case, o).is_some() => None,
        (a, o) => fail(
            p,
            a.map_or("oracle-only".to_string(), |v| v.to_string()),
            o.map_or("not periodic".to_string(), |v| v.to_string()),
        ),
    }
}

/// Vertices, edge midpoints and edge third-points of the tiles meeting the
/// window, deduplicated and sorted.
pub fn boundary_points(case: Case, window: &Window) -> Vec<ExactPoint> {
    let third = Qs3::from_ratios(1, 3, 0, 1);
    let mut pts: Vec<ExactPoint> = Vec::new();
    for t in tiles_in_window(case, window) {
        let poly = tile_polygon(case, &t).expect("valid tile");
        for (i, a) in poly.iter().enumerate() {
            let b = &poly[(i + 1) % poly.len()];
            pts.push(a.clone());
            pts.push(a.midpoint(b));
            let on = ExactPoint::new(
                &a.x + &(&b.x - &a.x) * &third,
                &a.y + &(&b.y - &a.y) * &third,
            );
            pts.push(on);
        }
    }
    pts.retain(|p| window.contains(p));
    sort_points(&mut pts);
    pts
}

fn sort_points(pts: &mut Vec<ExactPoint>) {
    pts.sort_by(|a, b| a.y.cmp(&b.y).then_with(|| a.x.cmp(&b.x)));
    pts.dedup();
}

/// Parameters of the classifier-versus-oracle sweep.
#[derive(Clone, Debug)]
pub struct PeriodSweep {
    /// Every tile center of levels `0..=center_levels`.
    pub center_levels: u64,
    /// `samples_per_tile` interior points per tile of levels `0..=interior_levels`.
    pub interior_levels: u64,
    pub samples_per_tile: usize,
    /// Vertices and edge points of the tiles meeting this window.
    pub boundary_window: Window,
    pub seed: u64,
}

impl Default for PeriodSweep {
    fn default() -> Self {
        PeriodSweep {
            center_levels: 8,
            interior_levels: 5,
            samples_per_tile: 20,
            boundary_window: Window::square(8).expect("non-empty"),
            seed: 1,
        }
    }
}

pub fn sweep_points(case: Case, sweep: &PeriodSweep) -> Vec<ExactPoint> {
    let mut pts = Vec::new();
    for c in 0..=sweep.center_levels {
        pts.extend(cached_necklace(case, c).centers.iter().cloned());
    }
    for c in 0..=sweep.interior_levels {
        for (i, t) in tiles_at_level(case, c).iter().enumerate() {
            let seed = sweep.seed ^ (c << 32) ^ i as u64;
            pts.extend(sample_in_tile(case, t, sweep.samples_per_tile, seed));
        }
    }
    pts.extend(boundary_points(case, &sweep.boundary_window));
    pts
}

/// `analytic_period = brute_force_period` on centers, interiors and the grid.
pub fn verify_periods(case: Case, sweep: &PeriodSweep) -> VerifyReport {
    let pts = sweep_points(case, sweep);
    run_suite("periods", case, &pts, |p| compare_periods(case, p))
}

/// Boundary periods of every tile of levels `0..=c_max` agree with the
/// oracle; for π/3 they also lie in the boundary families.
pub fn verify_boundary(case: Case, c_max: u64) -> VerifyReport {
    let third = Qs3::from_ratios(1, 3, 0, 1);
    let mut pts = Vec::new();
    for c in 0..=c_max {
        for t in tiles_at_level(case, c) {
            let poly = tile_polygon(case, &t).expect("valid tile");
            for (i, a) in poly.iter().enumerate() {
                let b = &poly[(i + 1) % poly.len()];
                pts.push(a.clone());
                pts.push(a.midpoint(b));
                pts.push(ExactPoint::new(
                    &a.x + &(&b.x - &a.x) * &third,
                    &a.y + &(&b.y - &a.y) * &third,
                ));
            }
        }
    }
    sort_points(&mut pts);
    let boundary_families = [
        PeriodFamily::new(36, 6),
        PeriodFamily::new(18, 9),
        PeriodFamily::new(18, 15),
        PeriodFamily::new(108, 72),
    ];
    run_suite("boundary", case, &pts, |p| {
        if let Some(f) = compare_periods(case, p) {
            return Some(f);
        }
        if case == Case::PiOver3 {
            let o = brute_force_period(case, p, default_max_iter(level(case, p))).ok()?;
            if !boundary_families.iter().any(|f| f.contains(o)) {
                return fail(p, "36n+6 | 18n+9 | 18n+15 | 108n+72", o);
            }
        }
        None
    })
}

/// Histogram of oracle periods with the points that fall outside the case's
/// families.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Census {
    pub counts: BTreeMap<u64, u64>,
    /// Largest period per level, over the non-critical sample points.
    pub max_by_level: BTreeMap<u64, u64>,
    pub outside: Vec<(ExactPoint, u64)>,
    pub unresolved: Vec<ExactPoint>,
}

impl Census {
    pub fn passed(&self) -> bool {
        self.outside.is_empty() && self.unresolved.is_empty()
    }
}

pub fn period_census_points(case: Case, points: &[ExactPoint]) -> Census {
    let periods: Vec<(u64, bool, Option<u64>)> = points
        .par_iter()
        .map(|p| {
            let c = level(case, p);
            let period = brute_force_period(case, p, default_max_iter(c)).ok();
            (c, is_critical(case, p), period)
        })
        .collect();
    let mut census = Census::default();
    for (p, (c, critical, period)) in points.iter().zip(periods) {
        match period {
            Some(n) => {
                *census.counts.entry(n).or_default() += 1;
                if !critical {
                    let m = census.max_by_level.entry(c).or_default();
                    *m = (*m).max(n);
                }
                if !period_families(case).iter().any(|f| f.contains(n)) {
                    census.outside.push((p.clone(), n));
                }
            }
            None => census.unresolved.push(p.clone()),
        }
    }
    census
}

pub fn period_census(case: Case, spec: &SampleSpec) -> Census {
    period_census_points(case, &sample_points(case, spec))
}

/// Tile centers of levels `0..=c_max` with period 1.
pub fn fixed_centers(case: Case, c_max: u64) -> Vec<ExactPoint> {
    let centers: Vec<ExactPoint> = (0..=c_max)
        .flat_map(|c| tiles_at_level(case, c))
        .map(|t| tile_center(case, &t).expect("valid tile"))
        .collect();
    centers
        .into_par_iter()
        .filter(|p| {
            matches!(
                brute_force_period(case, p, default_max_iter(level(case, p))),
                Ok(1)
            )
        })
        .collect()
}

/// `n` is a multiple of the period of `p` exactly when `F^n(p) = p`.
pub fn returns_after(case: Case, p: &ExactPoint, n: u64) -> bool {
    crate::dynamics::iterate(case, p, n as usize) == *p
}
