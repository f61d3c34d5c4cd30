//! Squares in finite pieces of the curve complex, and the adjacency lemma
//! for pants decompositions of S_{1,3}.
//!
//! `cargo run --release --example squares -- 12`

use std::sync::Arc;

use curvelab::curves::{Census, Engine};
use curvelab::maps::{find_squares, verify_adjacency_lemma, SubcomplexSnapshot};
use curvelab::pants::maximal_disjoint_sets;
use curvelab::search::{Escalation, Universe};
use curvelab::surface::{IdealTriangulation, SurfaceKind};

fn main() -> curvelab::Result<()> {
    let bound: u32 = std::env::args().nth(1).map_or(12, |b| b.parse().expect("bound is an integer"));

    for (g, n, b) in [(0, 5, bound), (1, 2, bound), (1, 3, bound + 2)] {
        let kind = SurfaceKind::new(g, n)?;
        let census = Census::enumerate(Arc::new(IdealTriangulation::standard(kind)?), b);
        let snap = SubcomplexSnapshot::build(&census, Engine::default());
        let sq = find_squares(&snap);
        println!("{kind} bound {b}: {} curves, {} disjoint pairs, {} squares", snap.len(), snap.edge_count(), sq.len());
        if let Some(t) = sq.first() {
            for &i in t {
                println!("    {:?}", snap.curves()[i].weights());
            }
        }
    }

    let kind = SurfaceKind::new(1, 3)?;
    let u = Universe::new(Arc::new(IdealTriangulation::standard(kind)?), bound, Escalation::default(), Engine::default());
    let sets = maximal_disjoint_sets(kind, &u.table().disjointness(u.objects().len()));
    let r = verify_adjacency_lemma(&u, &sets.decompositions)?;
    println!(
        "adjacency lemma on {kind}: {} decompositions, {} agree, {} disagree, {} inconclusive",
        sets.decompositions.len(),
        r.agreements,
        r.disagreements,
        r.inconclusive
    );
    Ok(())
}
