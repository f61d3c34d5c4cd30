//! Vertex maps on a census snapshot: maps induced by triangulation
//! symmetries are superinjective, a constant map is not.
//!
//! `cargo run --release --example superinjective -- 1,2 10`

use std::sync::Arc;

use curvelab::curves::{Census, Engine};
use curvelab::maps::{is_superinjective, SubcomplexSnapshot, VertexMap};
use curvelab::surface::{IdealTriangulation, SurfaceKind};

fn main() -> curvelab::Result<()> {
    let mut args = std::env::args().skip(1);
    let kind: SurfaceKind = args.next().as_deref().unwrap_or("1,2").parse()?;
    let bound: u32 = args.next().map_or(10, |b| b.parse().expect("bound is an integer"));

    let tri = Arc::new(IdealTriangulation::standard(kind)?);
    let snap = SubcomplexSnapshot::build(&Census::enumerate(tri.clone(), bound), Engine::default());
    let symmetries = tri.symmetries();
    println!("{kind}: {} symmetries, snapshot of {} curves", symmetries.len(), snap.len());
    for (k, s) in symmetries.iter().enumerate() {
        let v = is_superinjective(&VertexMap::from_symmetry(&snap, s)?);
        println!(
            "  symmetry {k} (reflect {}): superinjective {}, injective {}",
            s.reflect, v.superinjective_on_snapshot, v.injective
        );
    }
    if !snap.is_empty() {
        let v = is_superinjective(&VertexMap::constant(&snap, 0)?);
        if let Some(p) = v.violation {
            println!(
                "constant map: {:?} and {:?} meet but their images are disjoint",
                snap.curves()[p.a].weights(),
                snap.curves()[p.b].weights()
            );
        }
    }
    Ok(())
}
