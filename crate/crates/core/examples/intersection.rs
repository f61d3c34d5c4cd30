//! Geometric intersection numbers: bigon removal on an explicit overlay
//! against the linking count, on every pair of a small census.
//!
//! `cargo run --release --example intersection -- 0,5 10`

use std::sync::Arc;

use curvelab::curves::{intersect_reference, linking_intersection, Census};
use curvelab::surface::{IdealTriangulation, SurfaceKind};

fn main() -> curvelab::Result<()> {
    let mut args = std::env::args().skip(1);
    let kind: SurfaceKind = args.next().as_deref().unwrap_or("0,5").parse()?;
    let bound: u32 = args.next().map_or(10, |b| b.parse().expect("bound is an integer"));

    let census = Census::enumerate(Arc::new(IdealTriangulation::standard(kind)?), bound);
    let curves = census.curves();
    let (mut pairs, mut bigons, mut mismatches) = (0usize, 0u32, 0usize);
    let mut hardest = None;
    for (i, a) in curves.iter().enumerate() {
        for b in &curves[..i] {
            let r = intersect_reference(a, b);
            let fast = linking_intersection(a, b);
            pairs += 1;
            bigons += r.bigons_removed;
            if r.crossings != fast {
                mismatches += 1;
            }
            if hardest.as_ref().is_none_or(|(_, _, h): &(_, _, u32)| r.bigons_removed > *h) {
                hardest = Some((a.weights().to_vec(), b.weights().to_vec(), r.bigons_removed));
            }
        }
    }
    println!("{kind} bound {bound}: {} curves, {pairs} pairs", curves.len());
    println!("bigons removed in total: {bigons}");
    println!("engine mismatches: {mismatches}");
    if let Some((a, b, h)) = hardest {
        let ca = census.get(census.index_of(&a).unwrap());
        let cb = census.get(census.index_of(&b).unwrap());
        let r = intersect_reference(ca, cb);
        println!(
            "most bigons: {a:?} x {b:?}: {} -> {} crossings after {h} bigons in {} rounds",
            r.initial_crossings, r.crossings, r.rounds
        );
    }
    Ok(())
}
