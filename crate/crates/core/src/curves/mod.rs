//! Essential simple closed curves in normal coordinates.
//!
//! A curve is stored as its vector of edge weights on a fixed ideal
//! triangulation. Normal forms on ideal triangulations are unique, so two
//! curves are isotopic iff their vectors are equal.

mod linking;
mod overlay;

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::{EdgeFlip, IdealTriangulation};

pub use linking::linking_intersection;
pub use overlay::{intersect_reference, Bigon, OverlayOutcome};

/// One pass of a curve through a triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Visit {
    pub triangle: u32,
    pub enter: u8,
    pub exit: u8,
}

/// A normal arc: a segment inside one triangle joining two distinct sides.
/// Endpoints are strands `(edge, k)` where `k` counts this curve's crossings
/// with the edge from its tail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct NormalArc {
    pub triangle: u32,
    pub corner: u8,
    /// Position among the arcs of its corner, innermost first.
    pub depth: u32,
    pub sides: [u8; 2],
    pub strands: [(u32, u32); 2],
}

/// Checks parity and corner nonnegativity at every triangle.
pub fn check_admissible(tri: &IdealTriangulation, weights: &[u32]) -> Result<()> {
    if weights.len() != tri.num_edges() {
        return Err(Error::WeightLength { expected: tri.num_edges(), found: weights.len() });
    }
    for (t, sides) in tri.triangles().iter().enumerate() {
        let w = sides.map(|s| weights[s.edge] as i64);
        if (w[0] + w[1] + w[2]) % 2 != 0 {
            return Err(Error::Inadmissible { triangle: t, reason: format!("odd side sum {w:?}") });
        }
        for c in 0..3 {
            if corner_count(&w, c) < 0 {
                return Err(Error::Inadmissible {
                    triangle: t,
                    reason: format!("negative corner count at corner {c}, sides {w:?}"),
                });
            }
        }
    }
    Ok(())
}

/// Arcs cutting off corner `c`, which lies between sides `c - 1` and `c`.
pub(crate) fn corner_count(w: &[i64; 3], c: usize) -> i64 {
    (w[(c + 2) % 3] + w[c] - w[(c + 1) % 3]) / 2
}

/// All normal arcs of an admissible weight vector, by triangle then corner,
/// innermost first.
pub(crate) fn normal_arcs(tri: &IdealTriangulation, weights: &[u32]) -> Result<Vec<NormalArc>> {
    check_admissible(tri, weights)?;
    let mut arcs = Vec::new();
    for (t, sides) in tri.triangles().iter().enumerate() {
        let w = sides.map(|s| weights[s.edge] as i64);
        for c in 0..3 {
            let prev = (c + 2) % 3;
            for m in 0..corner_count(&w, c) {
                // side c from its start; side c-1 from its end
                let a = side_to_edge(sides[c].orient, w[c], m);
                let b = side_to_edge(sides[prev].orient, w[prev], w[prev] - 1 - m);
                arcs.push(NormalArc {
                    triangle: t as u32,
                    corner: c as u8,
                    depth: m as u32,
                    sides: [c as u8, prev as u8],
                    strands: [(sides[c].edge as u32, a), (sides[prev].edge as u32, b)],
                });
            }
        }
    }
    Ok(arcs)
}

fn side_to_edge(orient: i8, len: i64, pos: i64) -> u32 {
    if orient > 0 {
        pos as u32
    } else {
        (len - 1 - pos) as u32
    }
}

/// Slot of side occurrence `(t, s)` on its edge: 0 for the `+` side.
fn slot_of(tri: &IdealTriangulation, t: usize, s: usize) -> usize {
    (tri.side(t, s).orient < 0) as usize
}

/// A connected component of a traced multicurve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TracedComponent {
    pub weights: Vec<u32>,
    /// Strands in the order the component passes them.
    pub strands: Vec<(u32, u32)>,
    #[serde(skip)]
    pub visits: Vec<Visit>,
    /// `Some(v)` when the component is the loop around puncture `v`.
    pub puncture_parallel: Option<usize>,
    #[serde(skip)]
    pub(crate) arcs: Vec<usize>,
}

/// Decomposition of a normal multicurve into components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiCurveTrace {
    pub components: Vec<TracedComponent>,
    /// Per edge, the component owning each strand (tail to head).
    pub strand_owner: Vec<Vec<usize>>,
    #[serde(skip)]
    pub(crate) arcs: Vec<NormalArc>,
    #[serde(skip)]
    pub(crate) arc_component: Vec<usize>,
}

/// Follows the normal arcs of `weights` into closed components.
pub fn trace_components(tri: &IdealTriangulation, weights: &[u32]) -> Result<MultiCurveTrace> {
    let arcs = normal_arcs(tri, weights)?;
    let mut offset = Vec::with_capacity(tri.num_edges() + 1);
    offset.push(0usize);
    for &w in weights {
        offset.push(offset.last().unwrap() + w as usize);
    }
    let npoints = *offset.last().unwrap();
    let pid = |(e, k): (u32, u32)| offset[e as usize] + k as usize;
    // point_arc[p][slot] = (arc, endpoint)
    let mut point_arc = vec![[(usize::MAX, 0u8); 2]; npoints];
    for (i, arc) in arcs.iter().enumerate() {
        for end in 0..2 {
            let slot = slot_of(tri, arc.triangle as usize, arc.sides[end] as usize);
            point_arc[pid(arc.strands[end])][slot] = (i, end as u8);
        }
    }
    let mut seen = vec![false; npoints];
    let mut arc_component = vec![usize::MAX; arcs.len()];
    let mut strand_owner: Vec<Vec<usize>> = weights.iter().map(|&w| vec![0; w as usize]).collect();
    let links: Vec<Vec<u32>> = (0..tri.num_punctures()).map(|v| tri.vertex_link(v)).collect();
    let mut components = Vec::new();
    for e in 0..tri.num_edges() {
        for k in 0..weights[e] {
            let start = offset[e] + k as usize;
            if seen[start] {
                continue;
            }
            let id = components.len();
            let mut comp = TracedComponent {
                weights: vec![0; tri.num_edges()],
                strands: Vec::new(),
                visits: Vec::new(),
                puncture_parallel: None,
                arcs: Vec::new(),
            };
            let (mut point, mut strand, mut slot) = (start, (e as u32, k), 1usize);
            loop {
                if !seen[point] {
                    seen[point] = true;
                    comp.weights[strand.0 as usize] += 1;
                    comp.strands.push(strand);
                    strand_owner[strand.0 as usize][strand.1 as usize] = id;
                }
                let (ai, end) = point_arc[point][slot];
                let arc = &arcs[ai];
                let other = 1 - end as usize;
                arc_component[ai] = id;
                comp.arcs.push(ai);
                comp.visits.push(Visit {
                    triangle: arc.triangle,
                    enter: arc.sides[end as usize],
                    exit: arc.sides[other],
                });
                strand = arc.strands[other];
                point = pid(strand);
                slot = 1 - slot_of(tri, arc.triangle as usize, arc.sides[other] as usize);
                if point == start && slot == 1 {
                    break;
                }
            }
            comp.puncture_parallel = links.iter().position(|l| *l == comp.weights);
            components.push(comp);
        }
    }
    Ok(MultiCurveTrace { components, strand_owner, arcs, arc_component })
}

/// True iff `weights` traces to a single component that is neither
/// null-homotopic nor parallel to a puncture.
pub fn is_essential_curve(tri: &IdealTriangulation, weights: &[u32]) -> bool {
    match trace_components(tri, weights) {
        Ok(trace) => single_essential(&trace).is_ok(),
        Err(_) => false,
    }
}

fn single_essential(trace: &MultiCurveTrace) -> Result<&TracedComponent> {
    match trace.components.as_slice() {
        [] => Err(Error::NotEssential("empty".into())),
        [c] => {
            if let Some(v) = c.puncture_parallel {
                return Err(Error::NotEssential(format!("parallel to puncture {v}")));
            }
            // A nonempty closed path through the dual spine that never
            // re-enters the side it left is reduced, hence nontrivial in π1.
            assert!(
                c.visits.iter().all(|v| v.enter != v.exit),
                "normal arcs join distinct sides"
            );
            Ok(c)
        }
        many => Err(Error::NotEssential(format!("{} components", many.len()))),
    }
}

/// Isotopy class of an essential simple closed curve.
#[derive(Clone)]
pub struct NormalCurve {
    tri: Arc<IdealTriangulation>,
    weights: Vec<u32>,
    visits: Vec<Visit>,
}

impl NormalCurve {
    pub fn new(tri: Arc<IdealTriangulation>, weights: Vec<u32>) -> Result<Self> {
        let trace = trace_components(&tri, &weights)?;
        let visits = single_essential(&trace)?.visits.clone();
        Ok(NormalCurve { tri, weights, visits })
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn total_weight(&self) -> u32 {
        self.weights.iter().sum()
    }

    pub fn triangulation(&self) -> &Arc<IdealTriangulation> {
        &self.tri
    }

    /// The cyclic passage through triangles; a reduced loop in the dual spine.
    pub fn visits(&self) -> &[Visit] {
        &self.visits
    }

    pub fn same_surface(&self, other: &NormalCurve) -> bool {
        Arc::ptr_eq(&self.tri, &other.tri) || *self.tri == *other.tri
    }
}

impl PartialEq for NormalCurve {
    fn eq(&self, other: &Self) -> bool {
        self.weights == other.weights && self.same_surface(other)
    }
}

impl Eq for NormalCurve {}

impl Hash for NormalCurve {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.weights.hash(state);
    }
}

impl fmt::Debug for NormalCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NormalCurve{:?}", self.weights)
    }
}

/// Two curves on the same triangulation.
#[derive(Clone, Copy, Debug)]
pub struct CurvePair<'a> {
    pub a: &'a NormalCurve,
    pub b: &'a NormalCurve,
}

impl<'a> CurvePair<'a> {
    pub fn new(a: &'a NormalCurve, b: &'a NormalCurve) -> Result<Self> {
        if !a.same_surface(b) {
            return Err(Error::MismatchedTriangulation);
        }
        Ok(CurvePair { a, b })
    }
}

/// Geometric intersection number by the overlay / bigon-removal reference.
pub fn geometric_intersection(p: CurvePair<'_>) -> u32 {
    intersect_reference(p.a, p.b).crossings
}

pub fn disjoint(p: CurvePair<'_>) -> bool {
    geometric_intersection(p) == 0
}

/// How intersection tables are filled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Engine {
    /// Overlay arrangement with bigon removal.
    Reference,
    /// Linked lifts in the universal cover of the dual spine.
    #[default]
    Linking,
}

impl Engine {
    pub fn intersection(self, a: &NormalCurve, b: &NormalCurve) -> u32 {
        match self {
            Engine::Reference => intersect_reference(a, b).crossings,
            Engine::Linking => linking_intersection(a, b),
        }
    }
}

/// Every essential curve of total weight at most `bound`, sorted by weight
/// then lexicographically.
#[derive(Clone)]
pub struct Census {
    tri: Arc<IdealTriangulation>,
    bound: u32,
    curves: Vec<NormalCurve>,
    index: HashMap<Vec<u32>, usize>,
}

impl Census {
    pub fn enumerate(tri: Arc<IdealTriangulation>, bound: u32) -> Census {
        let mut found = Vec::new();
        let mut w = vec![0u32; tri.num_edges()];
        // triangles whose last edge (in index order) is e
        let mut closes: Vec<Vec<usize>> = vec![Vec::new(); tri.num_edges()];
        for (t, sides) in tri.triangles().iter().enumerate() {
            let last = sides.iter().map(|s| s.edge).max().unwrap();
            closes[last].push(t);
        }
        lattice_search(&tri, &closes, 0, bound, &mut w, &mut found);
        let mut curves: Vec<NormalCurve> =
            found.into_iter().filter_map(|w| NormalCurve::new(tri.clone(), w).ok()).collect();
        curves.sort_by(|a, b| {
            a.total_weight().cmp(&b.total_weight()).then_with(|| a.weights.cmp(&b.weights))
        });
        Census::from_curves(tri, bound, curves)
    }

    fn from_curves(tri: Arc<IdealTriangulation>, bound: u32, curves: Vec<NormalCurve>) -> Census {
        let index = curves.iter().enumerate().map(|(i, c)| (c.weights.clone(), i)).collect();
        Census { tri, bound, curves, index }
    }

    /// Curves of weight at most `bound`, keeping order.
    pub fn restrict(&self, bound: u32) -> Census {
        let curves = self.curves.iter().filter(|c| c.total_weight() <= bound).cloned().collect();
        Census::from_curves(self.tri.clone(), bound.min(self.bound), curves)
    }

    pub fn triangulation(&self) -> &Arc<IdealTriangulation> {
        &self.tri
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn curves(&self) -> &[NormalCurve] {
        &self.curves
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn get(&self, i: usize) -> &NormalCurve {
        &self.curves[i]
    }

    pub fn index_of(&self, weights: &[u32]) -> Option<usize> {
        self.index.get(weights).copied()
    }

    /// Summary line for census dumps.
    pub fn summary(&self) -> String {
        format!("curves={} bound={}", self.len(), self.bound)
    }
}

fn lattice_search(
    tri: &IdealTriangulation,
    closes: &[Vec<usize>],
    e: usize,
    budget: u32,
    w: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if e == w.len() {
        if w.iter().any(|&x| x > 0) {
            out.push(w.clone());
        }
        return;
    }
    for x in 0..=budget {
        w[e] = x;
        let ok = closes[e].iter().all(|&t| {
            let s = tri.triangles()[t].map(|s| w[s.edge] as i64);
            (s[0] + s[1] + s[2]) % 2 == 0 && (0..3).all(|c| corner_count(&s, c) >= 0)
        });
        if ok {
            lattice_search(tri, closes, e + 1, budget - x, w, out);
        }
    }
    w[e] = 0;
}

/// Weight of the new diagonal after flipping `edge`:
/// `max(a + c, b + d) - e` over opposite sides of the quadrilateral.
pub fn flip_weights(tri: &IdealTriangulation, weights: &[u32], f: EdgeFlip) -> Result<Vec<u32>> {
    let q = tri.quad(f.edge)?;
    let w = |s: crate::surface::Side| weights[s.edge] as i64;
    let new = (w(q.ad) + w(q.bc)).max(w(q.db) + w(q.ca)) - weights[f.edge] as i64;
    let mut out = weights.to_vec();
    out[f.edge] = new as u32;
    Ok(out)
}

/// Carries curves across one flip and back.
pub struct FlipTransport {
    pub from: Arc<IdealTriangulation>,
    pub to: Arc<IdealTriangulation>,
    pub flip: EdgeFlip,
}

impl FlipTransport {
    pub fn new(from: Arc<IdealTriangulation>, flip: EdgeFlip) -> Result<Self> {
        let to = Arc::new(from.flip(flip)?);
        Ok(FlipTransport { from, to, flip })
    }

    pub fn forward(&self, c: &NormalCurve) -> Result<NormalCurve> {
        if *c.tri != *self.from {
            return Err(Error::MismatchedTriangulation);
        }
        NormalCurve::new(self.to.clone(), flip_weights(&self.from, &c.weights, self.flip)?)
    }

    pub fn backward(&self, c: &NormalCurve) -> Result<NormalCurve> {
        if *c.tri != *self.to {
            return Err(Error::MismatchedTriangulation);
        }
        NormalCurve::new(self.from.clone(), flip_weights(&self.to, &c.weights, self.flip)?)
    }
}

/// Convenience wrapper for a single curve.
pub fn transport_over_flip(c: &NormalCurve, f: EdgeFlip) -> Result<NormalCurve> {
    FlipTransport::new(c.tri.clone(), f)?.forward(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::SurfaceKind;

    fn std_tri(g: u32, n: u32) -> Arc<IdealTriangulation> {
        Arc::new(IdealTriangulation::standard(SurfaceKind::new(g, n).unwrap()).unwrap())
    }

    #[test]
    fn zero_vector_has_no_components() {
        let t = std_tri(1, 1);
        assert!(trace_components(&t, &[0, 0, 0]).unwrap().components.is_empty());
        assert!(!is_essential_curve(&t, &[0, 0, 0]));
    }

    #[test]
    fn vertex_link_is_puncture_parallel() {
        for (g, n) in [(1, 1), (0, 5), (1, 3)] {
            let t = std_tri(g, n);
            for v in 0..t.num_punctures() {
                let link = t.vertex_link(v);
                let trace = trace_components(&t, &link).unwrap();
                assert_eq!(trace.components.len(), 1);
                assert_eq!(trace.components[0].puncture_parallel, Some(v));
                assert!(!is_essential_curve(&t, &link));
            }
        }
    }

    #[test]
    fn torus_slopes() {
        let t = std_tri(1, 1);
        assert!(is_essential_curve(&t, &[0, 1, 1]));
        assert!(!is_essential_curve(&t, &[0, 2, 2]));
        let trace = trace_components(&t, &[0, 2, 2]).unwrap();
        assert_eq!(trace.components.len(), 2);
        assert!(trace.components.iter().all(|c| c.weights == vec![0, 1, 1]));
    }

    #[test]
    fn inadmissible_names_triangle() {
        let t = std_tri(1, 1);
        match trace_components(&t, &[1, 0, 0]) {
            Err(Error::Inadmissible { triangle, .. }) => assert_eq!(triangle, 0),
            other => panic!("{other:?}"),
        }
        assert!(matches!(check_admissible(&t, &[3, 0, 1]), Err(Error::Inadmissible { .. })));
    }

    #[test]
    fn torus_census_bound_two() {
        let c = Census::enumerate(std_tri(1, 1), 2);
        let ws: Vec<_> = c.curves().iter().map(|c| c.weights().to_vec()).collect();
        assert_eq!(ws, vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
        assert!(Census::enumerate(std_tri(1, 1), 0).is_empty());
    }

    #[test]
    fn census_monotone() {
        let t = std_tri(0, 5);
        let sizes: Vec<usize> = (0..=8).map(|b| Census::enumerate(t.clone(), b).len()).collect();
        assert!(sizes.windows(2).all(|w| w[0] <= w[1]), "{sizes:?}");
    }

    #[test]
    fn doubled_curve_splits() {
        let t = std_tri(1, 3);
        let census = Census::enumerate(t.clone(), 8);
        for c in census.curves() {
            let doubled: Vec<u32> = c.weights().iter().map(|x| 2 * x).collect();
            let trace = trace_components(&t, &doubled).unwrap();
            assert_eq!(trace.components.len(), 2);
            for comp in &trace.components {
                assert_eq!(comp.weights, c.weights());
            }
        }
    }

    #[test]
    fn flip_transport_round_trip() {
        let t = std_tri(1, 3);
        let census = Census::enumerate(t.clone(), 8);
        for e in 0..t.num_edges() {
            let Ok(ft) = FlipTransport::new(t.clone(), EdgeFlip::new(e)) else { continue };
            for c in census.curves() {
                let there = ft.forward(c).unwrap();
                let back = ft.backward(&there).unwrap();
                assert_eq!(back.weights(), c.weights());
                assert!(census.index_of(back.weights()).is_some());
            }
        }
    }

    #[test]
    fn flip_of_empty_quad_is_zero() {
        let t = std_tri(1, 3);
        let w = vec![0; t.num_edges()];
        assert_eq!(flip_weights(&t, &w, EdgeFlip::new(0)).unwrap(), w);
    }
}
