//! Cut the surface along curves and read off their topological types.
//!
//! `cargo run --release --example classify -- 1,4 10`

use std::sync::Arc;

use curvelab::classify::{curve_type, cut_along, CurveType};
use curvelab::curves::Census;
use curvelab::surface::{IdealTriangulation, SurfaceKind};

fn main() -> curvelab::Result<()> {
    let mut args = std::env::args().skip(1);
    let kind: SurfaceKind = args.next().as_deref().unwrap_or("1,4").parse()?;
    let bound: u32 = args.next().map_or(10, |b| b.parse().expect("bound is an integer"));

    let census = Census::enumerate(Arc::new(IdealTriangulation::standard(kind)?), bound);
    let mut shown = std::collections::BTreeSet::new();
    for c in census.curves() {
        let t = curve_type(c);
        if !shown.insert(t.to_string()) {
            continue;
        }
        println!("{:?}: {t}", c.weights());
        for comp in cut_along(c).components {
            println!(
                "    piece: genus {}, punctures {:?}, {} boundary, chi {}",
                comp.genus,
                comp.punctures,
                comp.boundary,
                comp.euler_characteristic()
            );
        }
        if let CurveType::Separating { sides, .. } = &t {
            println!("    sides: {:?} | {:?}", sides[0], sides[1]);
        }
    }
    Ok(())
}
