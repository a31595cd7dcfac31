//! Acceptance run: one PASS/FAIL line per criterion, each with its pinned
//! tolerance and runtime budget. Exits non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use tessera_core::dynamics::{f_step, itinerary_affine};
use tessera_core::necklace::{analytic_period, cached_necklace, period_families};
use tessera_core::oracle::{
    brute_force_period, fixed_centers, lattice_points, period_census_points, verify_integral,
    verify_necklace, verify_periods, PeriodSweep, SampleSpec,
};
use tessera_core::render::{critical_preimages, level_scene, render_levels, PreimageOptions};
use tessera_core::tiling::{is_critical, level};
use tessera_core::{Case, ExactPoint, RenderOptions, Window};

type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn pt(s: &str) -> ExactPoint {
    s.parse().expect("literal point")
}

fn fixed_points() -> Outcome {
    let expected = [
        (Case::PiOver2, vec!["1/2,1/2", "-1/2,-1/2"]),
        (Case::TwoPiOver3, vec!["1/2,1/6s3", "-1/2,-1/6s3"]),
        (Case::PiOver3, vec!["1/2,1/2s3", "-1/2,-1/2s3"]),
    ];
    let mut notes = Vec::new();
    let mut ok = true;
    for (case, pts) in expected {
        let mut want: Vec<ExactPoint> = pts.iter().map(|s| pt(s)).collect();
        let substituted = want.iter().all(|p| f_step(case, p) == *p);
        let mut found = fixed_centers(case, 1);
        let key = |p: &ExactPoint| (p.x.clone(), p.y.clone());
        want.sort_by_key(key);
        found.sort_by_key(key);
        ok &= substituted && found == want;
        notes.push(format!("{case}: {} fixed", found.len()));
    }
    Outcome {
        ok,
        detail: notes.join(", "),
    }
}

fn first_integral() -> Outcome {
    let spec = SampleSpec::new(Window::square(15).expect("window"), 97, 1000, 20_240_601);
    let mut ok = true;
    let mut notes = Vec::new();
    for case in Case::ALL {
        let r = verify_integral(case, &spec);
        ok &= r.passed() && r.checked == 1000;
        notes.push(format!(
            "{case}: {}/{} failures",
            r.failure_count, r.checked
        ));
    }
    Outcome {
        ok,
        detail: notes.join(", "),
    }
}

fn necklace_congruence() -> Outcome {
    let mut ok = true;
    let mut beads = 0;
    for case in Case::ALL {
        let r = verify_necklace(case, 12);
        beads += r.checked;
        ok &= r.passed();
        for c in 0..=12u64 {
            let n = cached_necklace(case, c);
            let (m, u) = match case {
                Case::PiOver2 => (4 * c + 2, c),
                Case::TwoPiOver3 if c % 2 == 1 => (3 * c + 1, c),
                Case::TwoPiOver3 => (6 * c + 2, 2 * c),
                Case::PiOver3 if c % 2 == 0 => (3 * c + 2, c / 2),
                Case::PiOver3 => (6 * c + 4, c),
            };
            ok &= n.m == m && n.u == u && n.beads.len() as u64 == m;
        }
    }
    Outcome {
        ok,
        detail: format!("{beads} beads over c <= 12, exact"),
    }
}

fn classifier_vs_oracle() -> Outcome {
    let sweep = PeriodSweep::default();
    let mut ok = true;
    let mut notes = Vec::new();
    for case in Case::ALL {
        let r = verify_periods(case, &sweep);
        ok &= r.passed();
        notes.push(format!(
            "{case}: {}/{} failures",
            r.failure_count, r.checked
        ));
        for f in r.failures.iter().take(3) {
            notes.push(format!(
                "  {} expected {} got {}",
                f.point, f.expected, f.got
            ));
        }
    }
    // Values named by the criterion.
    let named = |case: Case, p: &str| analytic_period(case, &pt(p)).analytic_period.value();
    ok &= named(Case::PiOver2, "3/10,2/5") == Some(4);
    ok &= named(Case::PiOver2, "2,3/10") == Some(20);
    ok &=
        named(Case::TwoPiOver3, "3/2,0") == Some(9 * level(Case::TwoPiOver3, &pt("3/2,1/6s3")) + 3);
    for (c, want) in [(4u64, 7u64), (6, 20), (5, 34)] {
        ok &= cached_necklace(Case::PiOver3, c).center_period == want;
    }
    Outcome {
        ok,
        detail: notes.join(", "),
    }
}

fn edge_cycle() -> Outcome {
    let case = Case::PiOver3;
    let p = pt("-3/2,0");
    let period = brute_force_period(case, &p, 1000).ok();
    let mut on_edges = true;
    let mut q = p.clone();
    for _ in 0..72 {
        on_edges &= is_critical(case, &q);
        q = f_step(case, &q);
    }
    let a = brute_force_period(case, &pt("-1,0"), 1000).ok();
    let b = brute_force_period(case, &pt("-2,0"), 1000).ok();
    let mut vertices = [a.unwrap_or(0), b.unwrap_or(0)];
    vertices.sort_unstable();
    Outcome {
        ok: period == Some(72) && on_edges && vertices == [9, 15],
        detail: format!(
            "period {:?}, all 72 points critical: {on_edges}, vertex periods {:?}",
            period, vertices
        ),
    }
}

fn period_families_census() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for case in Case::ALL {
        let window = Window::square(if case == Case::PiOver2 { 5 } else { 7 }).expect("window");
        let pts: Vec<ExactPoint> = lattice_points(&window, 7)
            .into_iter()
            .filter(|p| level(case, p) <= 6)
            .collect();
        let census = period_census_points(case, &pts);
        let max: BTreeMap<u64, u64> = census.max_by_level.clone();
        // Interior periods alternate with parity for π/3, so growth is
        // measured between the two ends of the range.
        let growing = max.get(&6) > max.get(&2);
        ok &= census.passed() && growing;
        let families: Vec<String> = period_families(case)
            .iter()
            .map(|f| f.to_string())
            .collect();
        notes.push(format!(
            "{case}: {} points, {} distinct periods in {{{}}}, outside {}, max by level {:?}",
            pts.len(),
            census.counts.len(),
            families.join(", "),
            census.outside.len(),
            max.values().collect::<Vec<_>>()
        ));
    }
    Outcome {
        ok,
        detail: notes.join("; "),
    }
}

fn rotation_orders() -> Outcome {
    let mut ok = true;
    let mut checked = 0;
    for case in Case::ALL {
        for c in 0..=8u64 {
            let n = cached_necklace(case, c);
            let want = match case {
                Case::PiOver2 if c % 2 == 0 => 4,
                Case::PiOver2 => 2,
                Case::TwoPiOver3 => 3,
                Case::PiOver3 if c % 4 == 0 => 6,
                Case::PiOver3 => 3,
            };
            for center in &n.centers {
                let map = itinerary_affine(case, center, n.center_period as usize);
                ok &= map.linear.order(12) == Some(want);
                ok &= map.fixed_point().as_ref() == Some(center);
                checked += 1;
            }
        }
    }
    Outcome {
        ok,
        detail: format!("{checked} bead centers, exact"),
    }
}

fn on_grid(a: (f64, f64), b: (f64, f64), tol: f64) -> bool {
    let vertical = (a.0 - b.0).abs() < tol && (a.0 - a.0.round()).abs() < tol;
    let horizontal = (a.1 - b.1).abs() < tol && (a.1 - a.1.round()).abs() < tol;
    vertical || horizontal
}

fn rendering() -> Outcome {
    const STROKE: f64 = 0.02;
    let window = Window::square(5).expect("window");
    let opts = RenderOptions::default();
    let svg = render_levels(Case::PiOver2, &window, &opts);
    let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
    let mut fills: BTreeMap<u64, String> = BTreeMap::new();
    let mut consistent = true;
    for line in svg.lines().filter(|l| l.starts_with("<polygon")) {
        let attr = |name: &str| {
            let start = line.find(&format!("{name}=\"")).expect("attribute") + name.len() + 2;
            line[start..]
                .split('"')
                .next()
                .expect("closing quote")
                .to_string()
        };
        let c: u64 = attr("data-level").parse().expect("level");
        *counts.entry(c).or_default() += 1;
        let fill = attr("fill");
        consistent &= fills.entry(c).or_insert_with(|| fill.clone()) == &fill;
    }
    let distinct: std::collections::BTreeSet<&String> = fills.values().collect();
    consistent &= distinct.len() == fills.len();
    let census_ok = (0..=3u64).all(|c| counts.get(&c) == Some(&(4 * c as usize + 2)));
    let scene_ok =
        level_scene(Case::PiOver2, &window, &opts).polygons.len() == counts.values().sum::<usize>();

    let shallow = critical_preimages(FRAC_PI_2, 4, &window, &PreimageOptions::default())
        .expect("valid alpha");
    let sound = shallow
        .iter()
        .flat_map(|s| &s.segments)
        .all(|s| on_grid(s.a, s.b, STROKE / 2.0));
    // Completeness needs the preimages to reach every grid line of the
    // window; generation i only reaches lines about i units out.
    let deep = critical_preimages(FRAC_PI_2, 30, &window, &PreimageOptions::default())
        .expect("valid alpha");
    let segs: Vec<_> = deep.iter().flat_map(|s| s.segments.iter()).collect();
    let sound_deep = segs.iter().all(|s| on_grid(s.a, s.b, STROKE / 2.0));
    let covered = (-5..=5).all(|i| {
        (0..100).all(|j| {
            let t = -5.0 + 0.1 * j as f64 + 0.05;
            [(i as f64, t), (t, i as f64)].iter().all(|p| {
                segs.iter().any(|s| {
                    let (dx, dy) = (s.b.0 - s.a.0, s.b.1 - s.a.1);
                    let l2 = dx * dx + dy * dy;
                    let u = (((p.0 - s.a.0) * dx + (p.1 - s.a.1) * dy) / l2).clamp(0.0, 1.0);
                    (s.a.0 + u * dx - p.0).hypot(s.a.1 + u * dy - p.1) < STROKE / 2.0
                })
            })
        })
    });
    let repeat = render_levels(Case::PiOver2, &window, &opts) == svg
        && tessera_core::render_fractal(FRAC_PI_2, 4, &window).ok()
            == tessera_core::render_fractal(FRAC_PI_2, 4, &window).ok();
    Outcome {
        ok: census_ok && consistent && scene_ok && sound && sound_deep && covered && repeat,
        detail: format!(
            "tiles per level {:?}, fills keyed by level: {consistent}, depth 4 on grid: {sound}, depth 30 covers grid: {covered}, byte-identical: {repeat}",
            counts.iter().take(4).map(|(_, n)| n).collect::<Vec<_>>()
        ),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (1, "fixed points", Duration::from_secs(1), fixed_points),
        (
            2,
            "first-integral invariance",
            Duration::from_secs(5),
            first_integral,
        ),
        (
            3,
            "necklace congruence",
            Duration::from_secs(60),
            necklace_congruence,
        ),
        (
            4,
            "period classifier vs oracle",
            Duration::from_secs(60),
            classifier_vs_oracle,
        ),
        (5, "108k+72 edge cycle", Duration::from_secs(5), edge_cycle),
        (
            6,
            "period-set families",
            Duration::from_secs(120),
            period_families_census,
        ),
        (
            7,
            "rotation orders",
            Duration::from_secs(60),
            rotation_orders,
        ),
        (8, "rendering", Duration::from_secs(60), rendering),
    ];
    let mut all = true;
    for (n, name, budget, run) in criteria {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let ok = out.ok && elapsed <= budget;
        all &= ok;
        println!(
            "{} [{n}] {name} ({:.2} s, budget {} s): {}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs(),
            out.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
