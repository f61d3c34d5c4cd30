//! Finite induced subcomplexes of the curve complex, vertex maps between
//! them, and squares.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

use crate::curves::{Census, Engine, NormalCurve};
use crate::error::{Error, Result};
use crate::pants::PantsDecomposition;
use crate::search::{IntersectionTable, SearchOutcome, Universe};
use crate::surface::Symmetry;

/// Census curves with their disjointness graph.
#[derive(Clone, Debug)]
pub struct SubcomplexSnapshot {
    curves: Vec<NormalCurve>,
    adj: Vec<FixedBitSet>,
    index: HashMap<Vec<u32>, usize>,
}

impl SubcomplexSnapshot {
    pub fn build(census: &Census, engine: Engine) -> Self {
        let table = IntersectionTable::compute(census.curves(), engine);
        Self::from_table(census.curves().to_vec(), &table)
    }

    /// Snapshot on the universe's objects.
    pub fn from_universe(u: &Universe) -> Self {
        Self::from_table(u.objects().to_vec(), u.table())
    }

    /// Uses the leading `curves.len()` rows of `table`.
    pub fn from_table(curves: Vec<NormalCurve>, table: &IntersectionTable) -> Self {
        let adj = table.disjointness(curves.len());
        let index = curves.iter().enumerate().map(|(i, c)| (c.weights().to_vec(), i)).collect();
        SubcomplexSnapshot { curves, adj, index }
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn curves(&self) -> &[NormalCurve] {
        &self.curves
    }

    /// Disjointness neighbourhoods, without self-loops.
    pub fn adjacency(&self) -> &[FixedBitSet] {
        &self.adj
    }

    /// `i(a, b) = 0`; true for `a == b`.
    pub fn disjoint(&self, a: usize, b: usize) -> bool {
        a == b || self.adj[a].contains(b)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.count_ones(..)).sum::<usize>() / 2
    }

    pub fn index_of(&self, weights: &[u32]) -> Option<usize> {
        self.index.get(weights).copied()
    }
}

/// A vertex map between two snapshots.
#[derive(Clone, Debug)]
pub struct VertexMap<'s> {
    pub domain: &'s SubcomplexSnapshot,
    pub codomain: &'s SubcomplexSnapshot,
    pub assignment: Vec<usize>,
}

impl<'s> VertexMap<'s> {
    pub fn new(domain: &'s SubcomplexSnapshot, codomain: &'s SubcomplexSnapshot, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != domain.len() || assignment.iter().any(|&v| v >= codomain.len()) {
            return Err(Error::Precondition("assignment must be total into the codomain".into()));
        }
        Ok(VertexMap { domain, codomain, assignment })
    }

    pub fn identity(s: &'s SubcomplexSnapshot) -> Self {
        VertexMap { domain: s, codomain: s, assignment: (0..s.len()).collect() }
    }

    pub fn constant(s: &'s SubcomplexSnapshot, v: usize) -> Result<Self> {
        VertexMap::new(s, s, vec![v; s.len()])
    }

    /// Map induced by a symmetry of the underlying triangulation. Symmetries
    /// keep total weight, so a census snapshot maps into itself.
    pub fn from_symmetry(s: &'s SubcomplexSnapshot, sym: &Symmetry) -> Result<Self> {
        let assignment = s
            .curves
            .iter()
            .map(|c| {
                let w = sym.apply(c.weights());
                s.index_of(&w).ok_or_else(|| Error::Invariant(format!("image {w:?} missing from snapshot")))
            })
            .collect::<Result<Vec<_>>>()?;
        VertexMap::new(s, s, assignment)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = FixedBitSet::with_capacity(self.codomain.len());
        self.assignment.iter().all(|&v| !seen.put(v))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairViolation {
    pub a: usize,
    pub b: usize,
    pub disjoint_before: bool,
    pub disjoint_after: bool,
}

/// Superinjectivity restricted to the snapshot's pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuperinjectivityVerdict {
    pub superinjective_on_snapshot: bool,
    pub violation: Option<PairViolation>,
    pub injective: bool,
}

pub fn is_superinjective(m: &VertexMap<'_>) -> SuperinjectivityVerdict {
    let n = m.domain.len();
    let violation = (0..n).into_par_iter().find_map_first(|a| {
        (a + 1..n).find_map(|b| {
            let before = m.domain.disjoint(a, b);
            let after = m.codomain.disjoint(m.assignment[a], m.assignment[b]);
            (before != after).then_some(PairViolation { a, b, disjoint_before: before, disjoint_after: after })
        })
    });
    SuperinjectivityVerdict {
        superinjective_on_snapshot: violation.is_none(),
        violation,
        injective: m.is_injective(),
    }
}

/// All `(a1, b1, a2, b2)` with consecutive entries disjoint and both
/// diagonals meeting.
pub fn find_squares(s: &SubcomplexSnapshot) -> Vec<[usize; 4]> {
    let adj = &s.adj;
    let mut out: Vec<[usize; 4]> = (0..s.len())
        .into_par_iter()
        .flat_map_iter(|a1| {
            let mut found = Vec::new();
            for b1 in adj[a1].ones() {
                for a2 in adj[b1].ones() {
                    if a2 == a1 || adj[a1].contains(a2) {
                        continue;
                    }
                    for b2 in adj[a2].intersection(&adj[a1]) {
                        if b2 != b1 && !adj[b1].contains(b2) {
                            found.push([a1, b1, a2, b2]);
                        }
                    }
                }
            }
            found
        })
        .collect();
    out.sort_unstable();
    out
}

/// One pair of curves in one decomposition.
#[derive(Clone, Debug, Serialize)]
pub struct PairCheck {
    pub decomposition: usize,
    pub a: usize,
    pub b: usize,
    pub adjacent_by_cut: bool,
    /// Curve meeting `a` and `b` and missing the rest of the decomposition.
    pub witness: SearchOutcome<usize>,
    /// `(a2, b2)` completing a square on `a, b` off the rest.
    pub square: SearchOutcome<[usize; 2]>,
    /// Witness weights from a deeper search, when the universe had none.
    pub deep_witness: Option<Vec<u32>>,
    /// `None` when the expected search was inconclusive.
    pub agrees: Option<bool>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct AdjacencyLemmaReport {
    pub checks: Vec<PairCheck>,
    pub agreements: usize,
    pub disagreements: usize,
    pub inconclusive: usize,
}

/// Checks, for each decomposition (object indices of `u`) and each pair in
/// it, that adjacency matches "witness exists" and non-adjacency matches
/// "square exists".
pub fn verify_adjacency_lemma(u: &Universe, decompositions: &[Vec<usize>]) -> Result<AdjacencyLemmaReport> {
    let mut report = AdjacencyLemmaReport::default();
    for (d, p) in decompositions.iter().enumerate() {
        let pd = PantsDecomposition::new(p.iter().map(|&c| u.curves()[c].clone()).collect())?;
        let graph = pd.adjacency_graph();
        for x in 0..p.len() {
            for y in x + 1..p.len() {
                let (a, b) = (p[x], p[y]);
                let adjacent_by_cut = graph.has_edge(x, y);
                let witness = crate::pants::adjacency_via_witness(u, p, a, b)?;
                let square = square_off(u, p, a, b);
                let (expected, contrary) =
                    if adjacent_by_cut { (witness.is_found(), square.is_found()) } else { (square.is_found(), witness.is_found()) };
                let agrees = if contrary {
                    Some(false)
                } else if expected {
                    Some(true)
                } else {
                    None
                };
                match agrees {
                    Some(true) => report.agreements += 1,
                    Some(false) => report.disagreements += 1,
                    None => report.inconclusive += 1,
                }
                report.checks.push(PairCheck {
                    decomposition: d,
                    a,
                    b,
                    adjacent_by_cut,
                    witness,
                    square,
                    deep_witness: None,
                    agrees,
                });
            }
        }
    }
    Ok(report)
}

/// Retries inconclusive witness searches of adjacent pairs on `deep`, a
/// census of the same surface with a larger bound. Only intersections with
/// the decomposition's curves are computed, so `deep` can be far beyond the
/// universe.
pub fn deepen_witnesses(
    report: &mut AdjacencyLemmaReport,
    u: &Universe,
    decompositions: &[Vec<usize>],
    deep: &Census,
    engine: Engine,
) -> Result<usize> {
    if deep.triangulation().as_ref() != u.census().triangulation().as_ref() {
        return Err(Error::MismatchedTriangulation);
    }
    let mut resolved = 0;
    for c in report.checks.iter_mut().filter(|c| c.adjacent_by_cut && c.agrees.is_none()) {
        let p = &decompositions[c.decomposition];
        let (a, b) = (&u.curves()[c.a], &u.curves()[c.b]);
        let rest: Vec<&NormalCurve> = p.iter().filter(|&&x| x != c.a && x != c.b).map(|&x| &u.curves()[x]).collect();
        let found = deep.curves().par_iter().find_first(|w| {
            rest.iter().all(|r| engine.intersection(w, r) == 0)
                && engine.intersection(w, a) > 0
                && engine.intersection(w, b) > 0
        });
        if let Some(w) = found {
            c.deep_witness = Some(w.weights().to_vec());
            c.agrees = Some(true);
            report.inconclusive -= 1;
            report.agreements += 1;
            resolved += 1;
        }
    }
    Ok(resolved)
}

/// First `(a2, b2)` (lightest `a2`) outside `p`, both disjoint from `p \ {a, b}`, with
/// `a, b, a2, b2` a square.
fn square_off(u: &Universe, p: &[usize], a: usize, b: usize) -> SearchOutcome<[usize; 2]> {
    let n = u.curves().len();
    let rest: Vec<usize> = p.iter().copied().filter(|&c| c != a && c != b).collect();
    let link: Vec<usize> = (0..n).filter(|&w| !p.contains(&w) && rest.iter().all(|&c| u.disjoint(w, c))).collect();
    for &a2 in &link {
        if u.disjoint(a2, a) || !u.disjoint(a2, b) {
            continue;
        }
        let found = link
            .iter()
            .find(|&&b2| b2 != a2 && !u.disjoint(b2, b) && u.disjoint(b2, a) && u.disjoint(b2, a2));
        if let Some(&b2) = found {
            return SearchOutcome::Found { witness: [a2, b2], bound: u.bound_for(a2).max(u.bound_for(b2)) };
        }
    }
    SearchOutcome::Inconclusive { bound: u.top_bound() }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::surface::{IdealTriangulation, SurfaceKind};

    fn snapshot(g: u32, n: u32, bound: u32) -> SubcomplexSnapshot {
        let t = Arc::new(IdealTriangulation::standard(SurfaceKind::new(g, n).unwrap()).unwrap());
        SubcomplexSnapshot::build(&Census::enumerate(t, bound), Engine::Linking)
    }

    #[test]
    fn once_punctured_torus_has_no_edges() {
        let s = snapshot(1, 1, 2);
        assert_eq!(s.len(), 3);
        assert_eq!(s.edge_count(), 0);
        assert!(find_squares(&s).is_empty());
    }

    #[test]
    fn empty_snapshot() {
        let t = Arc::new(IdealTriangulation::standard(SurfaceKind::new(1, 1).unwrap()).unwrap());
        let s = SubcomplexSnapshot::build(&Census::enumerate(t, 0), Engine::Linking);
        assert!(s.is_empty());
        assert!(find_squares(&s).is_empty());
        assert!(is_superinjective(&VertexMap::identity(&s)).superinjective_on_snapshot);
    }

    #[test]
    fn identity_and_constant() {
        let s = snapshot(0, 5, 8);
        assert!(s.edge_count() > 0);
        let id = is_superinjective(&VertexMap::identity(&s));
        assert!(id.superinjective_on_snapshot && id.injective);
        let k = is_superinjective(&VertexMap::constant(&s, 0).unwrap());
        let v = k.violation.unwrap();
        assert!(!v.disjoint_before && v.disjoint_after);
        assert!(!k.injective);
    }

    #[test]
    fn squares_in_s13_are_dihedrally_closed() {
        let s = snapshot(1, 3, 14);
        let sq = find_squares(&s);
        assert!(!sq.is_empty());
        for &[a1, b1, a2, b2] in &sq {
            for t in [[b1, a2, b2, a1], [b2, a2, b1, a1]] {
                assert!(sq.binary_search(&t).is_ok());
            }
        }
    }
}
