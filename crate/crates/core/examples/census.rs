//! Enumerate the curves of a surface up to a weight bound and tally types.
//!
//! `cargo run --release --example census -- 1,3 12`

use std::collections::BTreeMap;
use std::sync::Arc;

use curvelab::classify::curve_type;
use curvelab::curves::Census;
use curvelab::suites::type_label;
use curvelab::surface::{IdealTriangulation, SurfaceKind};

fn main() -> curvelab::Result<()> {
    let mut args = std::env::args().skip(1);
    let kind: SurfaceKind = args.next().as_deref().unwrap_or("1,3").parse()?;
    let bound: u32 = args.next().map_or(12, |b| b.parse().expect("bound is an integer"));

    let tri = Arc::new(IdealTriangulation::standard(kind)?);
    println!("{kind}: {} triangles, {} edges", tri.num_triangles(), tri.num_edges());
    let census = Census::enumerate(tri, bound);
    println!("{}", census.summary());

    let mut histogram: BTreeMap<String, usize> = BTreeMap::new();
    for c in census.curves() {
        *histogram.entry(type_label(&curve_type(c))).or_default() += 1;
    }
    for (t, n) in &histogram {
        println!("  {t:<20} {n}");
    }
    for c in census.curves().iter().take(5) {
        println!("  {:?} weight {}", c.weights(), c.total_weight());
    }
    Ok(())
}
