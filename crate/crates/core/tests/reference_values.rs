//! Hand-checked values for small levels, exercised through the public API.

use tessera_core::dynamics::{
    f_inv_step, f_step, g_step, itinerary, itinerary_affine, orbit, Mat2,
};
use tessera_core::necklace::{centers_at_level, perfect_beads, period_set, Category};
use tessera_core::oracle::brute_force_period;
use tessera_core::render::{critical_preimages, level_scene, PreimageOptions};
use tessera_core::tiling::{is_critical, level, locate, tile_center, tile_shape, TileShape};
use tessera_core::{
    analytic_period, necklace, Case, ExactPoint, Qs3, RenderOptions, TileAddress, Window,
};

fn pt(s: &str) -> ExactPoint {
    s.parse().expect("literal point")
}

fn q(s: &str) -> Qs3 {
    s.parse().expect("literal scalar")
}

#[test]
fn quadratic_field_products_and_floors() {
    assert_eq!(&q("1+1s3") * &q("1-1s3"), q("-2"));
    assert_eq!(&q("1s3") * &q("1s3"), q("3"));
    assert_eq!(&q("1/2+1/2s3") + &q("1/2-1/2s3"), q("1"));
    assert_eq!(q("5-3s3").sign(), -1);
    assert_eq!(q("-2+2s3").sign(), 1);
    assert_eq!(q("1s3").floor(), 1.into());
    assert_eq!(q("-1s3").floor(), (-2).into());
    assert_eq!(q("1/2+1/2s3").floor(), 1.into());
    assert!(q("1") < q("1s3"));
    assert!(q("-3").is_integer());
}

#[test]
fn single_steps_of_each_case() {
    assert_eq!(f_step(Case::PiOver2, &pt("3/10,2/5")), pt("2/5,7/10"));
    assert_eq!(f_inv_step(Case::PiOver2, &pt("2/5,7/10")), pt("3/10,2/5"));
    assert_eq!(f_step(Case::TwoPiOver3, &pt("1/2,1/6s3")), pt("1/2,1/6s3"));
    assert_eq!(f_step(Case::PiOver3, &pt("1/2,1/2s3")), pt("1/2,1/2s3"));
    assert_eq!(g_step(1, &pt("0,0")).unwrap(), pt("0,1"));
}

#[test]
fn quadrille_four_cycle() {
    let o = orbit(Case::PiOver2, &pt("3/10,2/5"), 100).unwrap();
    let want: Vec<ExactPoint> = ["3/10,2/5", "2/5,7/10", "7/10,3/5", "3/5,3/10"]
        .iter()
        .map(|s| pt(s))
        .collect();
    assert_eq!(o.period(), 4);
    assert_eq!(o.points, want);
    assert_eq!(
        brute_force_period(Case::PiOver2, &pt("-1/2,1/2"), 100).unwrap(),
        6
    );
}

#[test]
fn center_itineraries_and_rotations() {
    let x1 = centers_at_level(Case::PiOver2, 2)[0].clone();
    assert_eq!(itinerary(Case::PiOver2, &x1, 5).to_string(), "+++--");
    assert_eq!(
        itinerary(Case::PiOver2, &pt("1/2,1/2"), 3).to_string(),
        "+++"
    );

    let one = itinerary_affine(Case::PiOver2, &pt("1/2,1/2"), 1);
    assert_eq!(one.linear, Case::PiOver2.rotation());
    assert_eq!(one.translation, [Qs3::zero(), Qs3::one()]);

    let m = itinerary_affine(Case::PiOver2, &x1, 5);
    assert_eq!(m.linear, Case::PiOver2.rotation());
    assert_eq!(m.fixed_point(), Some(x1));

    let c1 = centers_at_level(Case::PiOver2, 1)[0].clone();
    let half_turn = itinerary_affine(Case::PiOver2, &c1, 6).linear;
    assert_eq!(half_turn, Mat2::identity().scale(&Qs3::from_int(-1)));
}

#[test]
fn critical_set_membership() {
    assert!(is_critical(Case::PiOver2, &pt("2,3/10")));
    assert!(!is_critical(Case::TwoPiOver3, &pt("3/2,1/2s3")));
    assert!(is_critical(Case::PiOver3, &pt("-3/2,0")));
}

#[test]
fn tile_addresses_levels_and_centers() {
    assert_eq!(
        locate(Case::PiOver2, &pt("1/2,1/2")).unwrap(),
        TileAddress::Square { k: 0, l: 0 }
    );
    let hex = locate(Case::TwoPiOver3, &pt("3/2,1/2s3")).unwrap();
    assert_eq!(hex, TileAddress::TriHex { k: 0, l: 0, m: 1 });
    assert_eq!(
        tile_shape(Case::TwoPiOver3, &hex).unwrap(),
        TileShape::Hexagon
    );
    assert_eq!(
        locate(Case::PiOver3, &pt("1/2,1/2s3")).unwrap(),
        TileAddress::TriHex { k: 0, l: 0, m: 0 }
    );

    assert_eq!(level(Case::PiOver2, &pt("1/2,1/2")), 0);
    assert_eq!(level(Case::PiOver2, &pt("5/2,1/2")), 2);
    assert_eq!(level(Case::TwoPiOver3, &pt("3/2,1/2s3")), 1);
    assert_eq!(level(Case::PiOver3, &pt("1/2,1/2s3")), 0);

    let sq = TileAddress::Square { k: -1, l: -1 };
    assert_eq!(tile_center(Case::PiOver2, &sq).unwrap(), pt("-1/2,-1/2"));
    assert_eq!(
        tile_center(Case::TwoPiOver3, &hex).unwrap(),
        pt("3/2,1/2s3")
    );
    let down = TileAddress::TriHex { k: 0, l: 0, m: 1 };
    assert_eq!(tile_center(Case::PiOver3, &down).unwrap(), pt("3/2,5/6s3"));
    assert_eq!(
        tile_shape(Case::PiOver3, &down).unwrap(),
        TileShape::TriangleDown
    );
}

#[test]
fn first_centers_of_small_levels() {
    let c1 = centers_at_level(Case::PiOver2, 1);
    assert_eq!((c1.len(), &c1[0]), (6, &pt("-1/2,1/2")));
    let c3 = centers_at_level(Case::TwoPiOver3, 3);
    assert_eq!((c3.len(), &c3[0]), (10, &pt("-5/2,1/2s3")));
    assert_eq!(centers_at_level(Case::PiOver2, 0).len(), 2);
}

#[test]
fn necklace_parameters_for_small_levels() {
    let n = necklace(Case::PiOver2, 2);
    assert_eq!(
        (n.m, n.u, n.center_period, n.center_orbit_count),
        (10, 2, 5, 2)
    );
    assert_eq!((n.noncenter_period, n.rotation_order), (20, 4));

    let n = necklace(Case::TwoPiOver3, 4);
    assert_eq!((n.m, n.u, n.center_period), (26, 8, 13));
    assert_eq!((n.noncenter_period, n.rotation_order), (39, 3));

    let n = necklace(Case::PiOver3, 4);
    assert_eq!(
        (n.m, n.u, n.center_period, n.center_orbit_count),
        (14, 2, 7, 2)
    );
    assert_eq!((n.noncenter_period, n.rotation_order), (42, 6));

    let n = necklace(Case::TwoPiOver3, 3);
    assert_eq!((n.m, n.u), (10, 3));
}

#[test]
fn chain_of_level_three_squares() {
    let n = necklace(Case::PiOver2, 3);
    let mut i = 1;
    let mut chain = vec![i];
    for _ in 0..n.m {
        i = n.successor(i);
        chain.push(i);
    }
    assert_eq!(&chain[..5], &[1, 4, 7, 10, 13]);
    assert_eq!(chain[14], 1);
}

#[test]
fn analytic_periods_of_named_points() {
    let r = analytic_period(Case::PiOver2, &pt("1/2,1/2"));
    assert_eq!(
        (r.category, r.analytic_period.value()),
        (Category::FixedTileCenter, Some(1))
    );
    assert_eq!(
        analytic_period(Case::PiOver2, &pt("3/10,2/5"))
            .analytic_period
            .value(),
        Some(4)
    );
    assert_eq!(
        analytic_period(Case::PiOver2, &pt("2,3/10"))
            .analytic_period
            .value(),
        Some(20)
    );
    assert_eq!(
        analytic_period(Case::TwoPiOver3, &pt("1/2,1/6s3"))
            .analytic_period
            .value(),
        Some(1)
    );
    assert_eq!(
        analytic_period(Case::PiOver3, &pt("-3/2,0"))
            .analytic_period
            .value(),
        Some(72)
    );
    let mut v: Vec<u64> = ["-1,0", "-2,0"]
        .iter()
        .map(|s| {
            analytic_period(Case::PiOver3, &pt(s))
                .analytic_period
                .value()
                .unwrap()
        })
        .collect();
    v.sort_unstable();
    assert_eq!(v, vec![9, 15]);
}

#[test]
fn perfect_bead_labels() {
    assert_eq!(
        perfect_beads(Case::PiOver2, 2).unwrap(),
        vec![1, 3, 5, 7, 9]
    );
    assert_eq!(
        perfect_beads(Case::PiOver3, 4).unwrap(),
        (1..=13).step_by(2).collect::<Vec<_>>()
    );
    let ups = perfect_beads(Case::TwoPiOver3, 2).unwrap();
    assert_eq!(ups.len(), 7);
    let n = necklace(Case::TwoPiOver3, 2);
    for i in ups {
        assert_eq!(
            tile_shape(Case::TwoPiOver3, &n.beads[i - 1]).unwrap(),
            TileShape::TriangleUp
        );
    }
}

#[test]
fn period_sets_of_low_levels() {
    let only = |v: Vec<(u64, _)>| v.into_iter().map(|(p, _)| p).collect::<Vec<_>>();
    assert_eq!(only(period_set(Case::PiOver2, 1)), vec![1, 4, 6, 12]);
    assert_eq!(only(period_set(Case::TwoPiOver3, 0)), vec![1, 3]);
    assert_eq!(only(period_set(Case::PiOver3, 0)), vec![1, 6, 9, 15, 72]);
}

#[test]
fn level_pictures() {
    let opts = RenderOptions::default();
    let scene = level_scene(Case::PiOver2, &Window::square(5).unwrap(), &opts);
    assert_eq!(scene.polygons.iter().filter(|p| p.level == 2).count(), 10);

    let scene = level_scene(Case::TwoPiOver3, &Window::square(6).unwrap(), &opts);
    let hexagons = scene
        .polygons
        .iter()
        .filter(|p| p.level == 1 && p.vertices.len() == 6)
        .count();
    assert_eq!(hexagons, 4);

    let labelled = RenderOptions {
        labels: true,
        ..RenderOptions::default()
    };
    let scene = level_scene(Case::PiOver3, &Window::square(6).unwrap(), &labelled);
    let zero: Vec<_> = scene.polygons.iter().filter(|p| p.level == 0).collect();
    assert_eq!(zero.len(), 2);
    let s = 3f64.sqrt() / 2.0;
    for p in zero {
        let (c, text) = p.label.as_ref().unwrap();
        assert_eq!(text, "0 (1)");
        assert!((c.0.abs() - 0.5).abs() < 1e-12 && (c.1.abs() - s).abs() < 1e-12);
    }
}

#[test]
fn first_preimage_of_the_axis() {
    let w = Window::square(3).unwrap();
    let gens = critical_preimages(
        std::f64::consts::FRAC_PI_2,
        1,
        &w,
        &PreimageOptions::default(),
    )
    .unwrap();
    let g1 = &gens[1].segments;
    assert!(!g1.is_empty());
    for s in g1 {
        let (x, y0, y1) = (s.a.0, s.a.1.min(s.b.1), s.a.1.max(s.b.1));
        assert!((s.a.0 - s.b.0).abs() < 1e-9);
        if x > 0.0 {
            assert!((x - 1.0).abs() < 1e-9 && y0 >= -1e-9);
        } else {
            assert!((x + 1.0).abs() < 1e-9 && y1 <= 1e-9);
        }
    }
}
