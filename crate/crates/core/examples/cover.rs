//! The double cover S_{1,6} -> S_{0,5} branched over four punctures: lift
//! census curves and compare their type upstairs with the position of the
//! special puncture downstairs.
//!
//! `cargo run --release --example cover -- 0 12`

use std::collections::BTreeMap;
use std::sync::Arc;

use curvelab::classify::{curve_type, CurveType};
use curvelab::cover::DoubleCover;
use curvelab::curves::Census;
use curvelab::surface::{IdealTriangulation, SurfaceKind};

fn main() -> curvelab::Result<()> {
    let mut args = std::env::args().skip(1);
    let special: usize = args.next().map_or(0, |s| s.parse().expect("special is a puncture index"));
    let bound: u32 = args.next().map_or(12, |b| b.parse().expect("bound is an integer"));

    let base = Arc::new(IdealTriangulation::standard(SurfaceKind::new(0, 5)?)?);
    let cv = DoubleCover::build(base.clone(), special)?;
    println!("cocycle {:?}", cv.cocycle());
    println!(
        "total space {} with {} triangles; punctures over {special}: {:?}",
        cv.total().kind(),
        cv.total().num_triangles(),
        cv.special_lifts()
    );

    let mut table: BTreeMap<(bool, String), usize> = BTreeMap::new();
    let mut shown = 0;
    for c in Census::enumerate(base, bound).curves() {
        let l = cv.lift_curve(c)?;
        let special_on_two = match curve_type(c) {
            CurveType::Separating { sides, .. } => sides[0].punctures.len() == 2 && sides[0].punctures.contains(&special),
            CurveType::Nonseparating => false,
        };
        *table.entry((special_on_two, cv.type_in_s12(&l)?.to_string())).or_default() += 1;
        if shown < 2 && l.components.len() == 2 {
            shown += 1;
            println!("{:?} lifts to {:?} and {:?}", c.weights(), l.components[0].weights(), l.components[1].weights());
        }
    }
    for ((two, t), n) in &table {
        let side = if *two { "on the 2-side" } else { "on the 3-side" };
        println!("special {side}: {t} x{n}");
    }
    let first = Census::enumerate(cv.base().clone(), 6);
    if let Some(c) = first.curves().first() {
        let report = cv.report(&cv.lift_curve(c)?)?;
        println!("{}", serde_json::to_string(&report).expect("report serializes"));
    }
    Ok(())
}
