//! Census-wide intersection tables, clique search and bounded witness
//! searches with escalation.

use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

use crate::curves::{Census, Engine, NormalCurve};
use crate::surface::IdealTriangulation;

/// Symmetric table of intersection numbers over a list of curves.
#[derive(Clone, Debug)]
pub struct IntersectionTable {
    n: usize,
    data: Vec<u32>,
}

impl IntersectionTable {
    pub fn compute(curves: &[NormalCurve], engine: Engine) -> Self {
        let n = curves.len();
        let rows: Vec<Vec<u32>> = (0..n)
            .into_par_iter()
            .map(|i| (0..i).map(|j| engine.intersection(&curves[i], &curves[j])).collect())
            .collect();
        let mut data = vec![0u32; n * n];
        for (i, row) in rows.into_iter().enumerate() {
            for (j, x) in row.into_iter().enumerate() {
                data[i * n + j] = x;
                data[j * n + i] = x;
            }
        }
        IntersectionTable { n, data }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// Disjointness graph on the first `m` curves, without self-loops.
    pub fn disjointness(&self, m: usize) -> Vec<FixedBitSet> {
        (0..m)
            .map(|i| {
                let mut s = FixedBitSet::with_capacity(m);
                for j in 0..m {
                    if i != j && self.get(i, j) == 0 {
                        s.insert(j);
                    }
                }
                s
            })
            .collect()
    }
}

/// All maximal cliques of `adj` inside `within` (Bron–Kerbosch with pivot).
pub fn maximal_cliques(adj: &[FixedBitSet], within: &FixedBitSet) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut r = Vec::new();
    bron_kerbosch(adj, &mut r, within.clone(), FixedBitSet::with_capacity(adj.len()), &mut out);
    out.sort();
    out
}

fn bron_kerbosch(
    adj: &[FixedBitSet],
    r: &mut Vec<usize>,
    p: FixedBitSet,
    mut x: FixedBitSet,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_clear() && x.is_clear() {
        let mut c = r.clone();
        c.sort_unstable();
        out.push(c);
        return;
    }
    let pivot = p
        .ones()
        .chain(x.ones())
        .max_by_key(|&u| adj[u].intersection(&p).count())
        .unwrap();
    let mut p = p;
    let candidates: Vec<usize> = p.difference(&adj[pivot]).collect();
    for v in candidates {
        let mut p2 = p.clone();
        p2.intersect_with(&adj[v]);
        let mut x2 = x.clone();
        x2.intersect_with(&adj[v]);
        r.push(v);
        bron_kerbosch(adj, r, p2, x2, out);
        r.pop();
        p.set(v, false);
        x.insert(v);
    }
}

/// Size of a largest clique of `adj` inside `within`.
pub fn max_clique_size(adj: &[FixedBitSet], within: &FixedBitSet) -> usize {
    maximal_cliques(adj, within).iter().map(Vec::len).max().unwrap_or(0)
}

pub fn full_set(n: usize) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    s.insert_range(..);
    s
}

/// How far witness searches look beyond the object bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Escalation {
    pub step: u32,
    pub limit: u32,
}

impl Default for Escalation {
    fn default() -> Self {
        Escalation { step: 4, limit: 2 }
    }
}

/// Result of a bounded existence search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum SearchOutcome<T> {
    Found { witness: T, bound: u32 },
    /// Nothing up to `bound`; says nothing about larger curves.
    Inconclusive { bound: u32 },
}

impl<T> SearchOutcome<T> {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found { .. })
    }

    pub fn witness(&self) -> Option<&T> {
        match self {
            SearchOutcome::Found { witness, .. } => Some(witness),
            SearchOutcome::Inconclusive { .. } => None,
        }
    }
}

/// Objects are census curves up to `object_bound`; witnesses may come from
/// the larger census up to the escalated bound. Curves are sorted by weight,
/// so the objects are a prefix of the universe.
#[derive(Clone)]
pub struct Universe {
    census: Census,
    object_bound: u32,
    objects: usize,
    escalation: Escalation,
    table: IntersectionTable,
}

impl Universe {
    pub fn new(tri: Arc<IdealTriangulation>, object_bound: u32, escalation: Escalation, engine: Engine) -> Self {
        let top = object_bound + escalation.step * escalation.limit;
        let census = Census::enumerate(tri, top);
        let objects = census.curves().iter().take_while(|c| c.total_weight() <= object_bound).count();
        let table = IntersectionTable::compute(census.curves(), engine);
        Universe { census, object_bound, objects, escalation, table }
    }

    pub fn census(&self) -> &Census {
        &self.census
    }

    pub fn curves(&self) -> &[NormalCurve] {
        self.census.curves()
    }

    pub fn objects(&self) -> &[NormalCurve] {
        &self.census.curves()[..self.objects]
    }

    pub fn object_bound(&self) -> u32 {
        self.object_bound
    }

    pub fn top_bound(&self) -> u32 {
        self.census.bound()
    }

    pub fn escalation(&self) -> Escalation {
        self.escalation
    }

    pub fn table(&self) -> &IntersectionTable {
        &self.table
    }

    pub fn i(&self, a: usize, b: usize) -> u32 {
        self.table.get(a, b)
    }

    pub fn disjoint(&self, a: usize, b: usize) -> bool {
        self.table.get(a, b) == 0
    }

    /// Escalated bound at which curve `w` first becomes available.
    pub fn bound_for(&self, w: usize) -> u32 {
        let weight = self.census.get(w).total_weight();
        let mut b = self.object_bound;
        while b < weight {
            b += self.escalation.step.max(1);
        }
        b
    }

    /// First curve (lightest) satisfying `pred`.
    pub fn find_curve(&self, pred: impl Fn(usize) -> bool) -> SearchOutcome<usize> {
        match (0..self.census.len()).find(|&w| pred(w)) {
            Some(w) => SearchOutcome::Found { witness: w, bound: self.bound_for(w) },
            None => SearchOutcome::Inconclusive { bound: self.top_bound() },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::SurfaceKind;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Vec<FixedBitSet> {
        let mut g = vec![FixedBitSet::with_capacity(n); n];
        for &(a, b) in edges {
            g[a].insert(b);
            g[b].insert(a);
        }
        g
    }

    #[test]
    fn cliques_of_small_graphs() {
        let g = graph(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)]);
        assert_eq!(maximal_cliques(&g, &full_set(5)), vec![vec![0, 1, 2], vec![2, 3], vec![3, 4]]);
        assert_eq!(max_clique_size(&g, &full_set(5)), 3);
        assert_eq!(maximal_cliques(&graph(0, &[]), &full_set(0)), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn table_is_symmetric_with_zero_diagonal() {
        let tri = Arc::new(IdealTriangulation::standard(SurfaceKind::new(1, 2).unwrap()).unwrap());
        let c = Census::enumerate(tri, 8);
        let t = IntersectionTable::compute(c.curves(), Engine::Linking);
        for i in 0..t.len() {
            assert_eq!(t.get(i, i), 0);
            for j in 0..t.len() {
                assert_eq!(t.get(i, j), t.get(j, i));
            }
        }
    }

    #[test]
    fn universe_objects_are_prefix() {
        let tri = Arc::new(IdealTriangulation::standard(SurfaceKind::new(0, 5).unwrap()).unwrap());
        let u = Universe::new(tri.clone(), 8, Escalation::default(), Engine::Linking);
        assert_eq!(u.top_bound(), 16);
        let small = Census::enumerate(tri, 8);
        assert_eq!(u.objects(), small.curves());
        assert_eq!(u.bound_for(0), 8);
        assert_eq!(u.bound_for(u.census().len() - 1), 16);
    }
}
