//! Move curves across edge flips and check that intersection numbers do not
//! change.
//!
//! `cargo run --release --example flips -- 1,2 8`

use std::sync::Arc;

use curvelab::curves::{geometric_intersection, Census, CurvePair, FlipTransport};
use curvelab::surface::{EdgeFlip, IdealTriangulation, SurfaceKind};

fn main() -> curvelab::Result<()> {
    let mut args = std::env::args().skip(1);
    let kind: SurfaceKind = args.next().as_deref().unwrap_or("1,2").parse()?;
    let bound: u32 = args.next().map_or(8, |b| b.parse().expect("bound is an integer"));

    let tri = Arc::new(IdealTriangulation::standard(kind)?);
    let census = Census::enumerate(tri.clone(), bound);
    let curves = census.curves();
    for e in 0..tri.num_edges() {
        let Ok(t) = FlipTransport::new(tri.clone(), EdgeFlip::new(e)) else {
            println!("edge {e}: not flippable");
            continue;
        };
        let moved: Vec<_> = curves.iter().map(|c| t.forward(c)).collect::<curvelab::Result<_>>()?;
        let mut changed = 0;
        for i in 0..curves.len() {
            for j in 0..i {
                let before = geometric_intersection(CurvePair::new(&curves[i], &curves[j])?);
                let after = geometric_intersection(CurvePair::new(&moved[i], &moved[j])?);
                changed += (before != after) as usize;
            }
            assert_eq!(t.backward(&moved[i])?.weights(), curves[i].weights());
        }
        println!("edge {e}: {} curves moved, {changed} intersection numbers changed", curves.len());
    }
    Ok(())
}
