//! Dual pairs on S_{1,3}: witness searches and the disjoint-dual count that
//! tells nonseparating curves from 2-curves.
//!
//! `cargo run --release --example duality -- 12`

use std::sync::Arc;

use curvelab::curves::Engine;
use curvelab::duality::DualityContext;
use curvelab::search::{Escalation, SearchOutcome, Universe};
use curvelab::surface::{IdealTriangulation, SurfaceKind};

fn main() -> curvelab::Result<()> {
    let bound: u32 = std::env::args().nth(1).map_or(12, |b| b.parse().expect("bound is an integer"));

    let tri = Arc::new(IdealTriangulation::standard(SurfaceKind::new(1, 3)?)?);
    let u = Universe::new(tri, bound, Escalation::default(), Engine::default());
    let ctx = DualityContext::new(&u)?;
    let sets = ctx.class_sets();
    println!("objects {} (universe {}), N {}, N' {}", u.objects().len(), u.curves().len(), sets.n.len(), sets.n_prime.len());

    let mut shown = 0;
    'outer: for &a in &sets.n {
        for &b in &sets.n {
            if let Some(kind) = ctx.is_dual(a, b) {
                if let SearchOutcome::Found { witness, bound } = ctx.duality_witness(a, b)? {
                    println!("{kind:?}: {:?} / {:?}", u.curves()[a].weights(), u.curves()[b].weights());
                    println!("    z {:?} (bound {bound})", u.curves()[witness.z].weights());
                    shown += 1;
                    if shown == 3 {
                        break 'outer;
                    }
                }
            }
        }
    }

    let (mut lo, mut hi) = (usize::MAX, 0);
    for &c in &sets.n {
        let k = ctx.disjoint_dual_count(c)?;
        if ctx.curve_type(c).is_k_curve(2) {
            hi = hi.max(k);
        } else {
            lo = lo.min(k);
        }
    }
    println!("disjoint duals: nonseparating >= {lo}, 2-curves <= {hi}");
    println!("triangles of 2-curves: {}", ctx.find_triangles().len());
    Ok(())
}
