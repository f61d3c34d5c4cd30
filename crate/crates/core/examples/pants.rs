//! Pants decompositions: abstract classes on S_{1,n} with their shapes, and
//! concrete decompositions found among census curves.
//!
//! `cargo run --release --example pants -- 5`

use std::sync::Arc;

use curvelab::curves::{Census, Engine};
use curvelab::pants::{classify_shape, maximal_disjoint_sets, verify_linear_or_cyclic, PantsDecomposition};
use curvelab::search::IntersectionTable;
use curvelab::surface::{IdealTriangulation, SurfaceKind};

fn main() -> curvelab::Result<()> {
    let n: u32 = std::env::args().nth(1).map_or(5, |n| n.parse().expect("n is an integer"));

    let kind = SurfaceKind::new(1, n)?;
    let report = verify_linear_or_cyclic(kind)?;
    println!(
        "{kind}: {} classes, {} triangle-free ({} linear, {} cyclic), {} violations",
        report.classes.len(),
        report.triangle_free,
        report.linear,
        report.cyclic,
        report.violations.len()
    );
    for c in report.classes.iter().filter(|c| c.triangle_free) {
        println!("  {:?}: {:?}", c.shape, c.pants_types);
        println!("{}", c.decomposition.adjacency_graph().to_dot(&format!("{:?}", c.shape), None));
    }

    let small = SurfaceKind::new(1, 2)?;
    let census = Census::enumerate(Arc::new(IdealTriangulation::standard(small)?), 8);
    let table = IntersectionTable::compute(census.curves(), Engine::default());
    let sets = maximal_disjoint_sets(small, &table.disjointness(census.len()));
    println!("{small}: {} decompositions among {} curves", sets.decompositions.len(), census.len());
    if let Some(p) = sets.decompositions.first() {
        let pd = PantsDecomposition::new(p.iter().map(|&i| census.get(i).clone()).collect())?;
        for c in pd.curves() {
            println!("  curve {:?}", c.weights());
        }
        for pants in pd.pants() {
            println!("  pants: boundary {:?}, punctures {:?}", pants.boundary, pants.punctures);
        }
        println!("  shape {:?}", classify_shape(&pd.to_abstract())?);
    }
    Ok(())
}
