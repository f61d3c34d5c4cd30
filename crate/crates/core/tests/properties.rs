use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use curvelab::classify::{curve_type, cut_along};
use curvelab::cover::DoubleCover;
use curvelab::curves::{flip_weights, intersect_reference, linking_intersection, Census, FlipTransport, NormalCurve};
use curvelab::suites::type_label;
use curvelab::surface::{EdgeFlip, IdealTriangulation, SurfaceKind};

struct Fixture {
    tri: Arc<IdealTriangulation>,
    census: Census,
}

fn fixtures() -> &'static [Fixture] {
    static CELL: OnceLock<Vec<Fixture>> = OnceLock::new();
    CELL.get_or_init(|| {
        [(0, 5, 12), (1, 2, 12), (1, 3, 10), (0, 6, 10), (1, 4, 9)]
            .into_iter()
            .map(|(g, n, b)| {
                let tri = Arc::new(IdealTriangulation::standard(SurfaceKind::new(g, n).unwrap()).unwrap());
                let census = Census::enumerate(tri.clone(), b);
                assert!(!census.is_empty());
                Fixture { tri, census }
            })
            .collect()
    })
}

fn cover(special: usize) -> &'static DoubleCover {
    static CELL: OnceLock<Vec<DoubleCover>> = OnceLock::new();
    &CELL.get_or_init(|| (0..5).map(|s| DoubleCover::build(fixtures()[0].tri.clone(), s).unwrap()).collect())[special]
}

/// (fixture, curve, curve) drawn by index.
fn pair() -> impl Strategy<Value = (usize, usize, usize)> {
    (0..fixtures().len(), any::<prop::sample::Index>(), any::<prop::sample::Index>()).prop_map(|(f, a, b)| {
        let n = fixtures()[f].census.len();
        (f, a.index(n), b.index(n))
    })
}

fn curves(f: usize, a: usize, b: usize) -> (&'static NormalCurve, &'static NormalCurve) {
    let c = &fixtures()[f].census;
    (c.get(a), c.get(b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn intersection_is_symmetric_and_engines_agree((f, a, b) in pair()) {
        let (x, y) = curves(f, a, b);
        let r = intersect_reference(x, y);
        prop_assert_eq!(r.crossings, intersect_reference(y, x).crossings);
        prop_assert_eq!(r.crossings, linking_intersection(x, y));
        prop_assert_eq!(r.crossings, linking_intersection(y, x));
        prop_assert_eq!(r.initial_crossings, r.crossings + 2 * r.bigons_removed);
        if a == b {
            prop_assert_eq!(r.crossings, 0);
        }
    }

    #[test]
    fn flips_preserve_intersection_and_type((f, a, b) in pair(), e in any::<prop::sample::Index>()) {
        let fx = &fixtures()[f];
        let edge = e.index(fx.tri.num_edges());
        let Ok(t) = FlipTransport::new(fx.tri.clone(), EdgeFlip::new(edge)) else { return Ok(()) };
        let (x, y) = curves(f, a, b);
        let (fx_, fy) = (t.forward(x).unwrap(), t.forward(y).unwrap());
        prop_assert_eq!(intersect_reference(x, y).crossings, intersect_reference(&fx_, &fy).crossings);
        prop_assert_eq!(type_label(&curve_type(x)), type_label(&curve_type(&fx_)));
        let back = t.backward(&fx_).unwrap();
        prop_assert_eq!(back.weights(), x.weights());
    }

    #[test]
    fn double_flip_returns_weights((f, a, _b) in pair(), e in any::<prop::sample::Index>()) {
        let fx = &fixtures()[f];
        let edge = e.index(fx.tri.num_edges());
        let Ok(once) = fx.tri.flip(EdgeFlip::new(edge)) else { return Ok(()) };
        let (x, _) = curves(f, a, a);
        let w1 = flip_weights(&fx.tri, x.weights(), EdgeFlip::new(edge)).unwrap();
        let w2 = flip_weights(&once, &w1, EdgeFlip::new(edge)).unwrap();
        prop_assert_eq!(w2.as_slice(), x.weights());
    }

    #[test]
    fn cutting_conserves_euler_characteristic((f, a, _b) in pair()) {
        let (x, _) = curves(f, a, a);
        let kind = fixtures()[f].tri.kind();
        let cut = cut_along(x);
        let chi: i64 = cut.components.iter().map(|c| c.euler_characteristic()).sum();
        prop_assert_eq!(chi, kind.euler_characteristic());
        let boundary: u32 = cut.components.iter().map(|c| c.boundary).sum();
        prop_assert_eq!(boundary, 2);
        let mut punctures: Vec<usize> = cut.components.iter().flat_map(|c| c.punctures.clone()).collect();
        punctures.sort_unstable();
        prop_assert_eq!(punctures, (0..kind.punctures as usize).collect::<Vec<_>>());
    }

    #[test]
    fn symmetries_preserve_intersection((f, a, b) in pair(), s in any::<prop::sample::Index>()) {
        let fx = &fixtures()[f];
        let syms = fx.tri.symmetries();
        let sym = &syms[s.index(syms.len())];
        let (x, y) = curves(f, a, b);
        let sx = NormalCurve::new(fx.tri.clone(), sym.apply(x.weights())).unwrap();
        let sy = NormalCurve::new(fx.tri.clone(), sym.apply(y.weights())).unwrap();
        prop_assert_eq!(linking_intersection(x, y), intersect_reference(&sx, &sy).crossings);
        prop_assert_eq!(type_label(&curve_type(x)), type_label(&curve_type(&sx)));
    }

    #[test]
    fn lifts_are_deck_equivariant(special in 0..5usize, a in any::<prop::sample::Index>()) {
        let cv = cover(special);
        let census = &fixtures()[0].census;
        let l = cv.lift_curve(census.get(a.index(census.len()))).unwrap();
        let mut up: Vec<Vec<u32>> = l.components.iter().map(|c| c.weights().to_vec()).collect();
        let mut moved: Vec<Vec<u32>> = l.components.iter().map(|c| cv.deck().apply(c.weights())).collect();
        up.sort();
        moved.sort();
        prop_assert_eq!(up, moved);
        let total: Vec<u32> = l.components.iter().fold(vec![0; cv.total().num_edges()], |mut acc, c| {
            for (s, w) in acc.iter_mut().zip(c.weights()) {
                *s += w;
            }
            acc
        });
        prop_assert_eq!(total, cv.pull_back(l.base.weights()));
    }

    #[test]
    fn meeting_curves_have_meeting_lifts(special in 0..5usize, a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let cv = cover(special);
        let census = &fixtures()[0].census;
        let (x, y) = (census.get(a.index(census.len())), census.get(b.index(census.len())));
        let i = linking_intersection(x, y);
        let (lx, ly) = (cv.lift_curve(x).unwrap(), cv.lift_curve(y).unwrap());
        let up: u32 = lx.components.iter().flat_map(|p| ly.components.iter().map(move |q| linking_intersection(p, q))).sum();
        // each crossing downstairs has two preimages
        if x != y {
            prop_assert_eq!(up, 2 * i);
        }
    }
}

#[test]
fn fixtures_admit_flips_and_have_meeting_pairs() {
    for fx in fixtures() {
        let flippable = (0..fx.tri.num_edges()).filter(|&e| fx.tri.flip(EdgeFlip::new(e)).is_ok()).count();
        assert!(flippable * 2 >= fx.tri.num_edges(), "{} of {} edges flippable", flippable, fx.tri.num_edges());
        let c = &fx.census;
        assert!((0..c.len()).any(|j| linking_intersection(c.get(0), c.get(j)) > 0));
    }
}
