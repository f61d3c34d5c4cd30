//! Pants decompositions: concrete ones found in a census, abstract ones as
//! trivalent graphs with legs, and their adjacency graphs.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::classify::{cut_system, CutResult};
use crate::curves::NormalCurve;
use crate::error::{Error, Result};
use crate::search::{full_set, maximal_cliques, SearchOutcome, Universe};
use crate::surface::SurfaceKind;

/// Topological type of one pair of pants inside a decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PantsType {
    /// One curve glued to itself plus one more curve.
    TorusWithBoundary,
    PuncturedAnnulus,
    TwicePuncturedDisk,
    /// Three distinct curves of the decomposition.
    ThreeCurves,
    /// The pants is the whole surface (S_{0,3} or S_{1,1}).
    WholeSurface,
}

/// Graph on the curves of a decomposition; two curves are adjacent when one
/// pair of pants has both in its boundary. No loops.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdjacencyGraph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl AdjacencyGraph {
    fn from_boundaries<'a>(vertices: usize, pants: impl Iterator<Item = &'a [usize]>) -> Self {
        let mut edges = BTreeSet::new();
        for boundary in pants {
            for &a in boundary {
                for &b in boundary {
                    if a < b {
                        edges.insert((a, b));
                    }
                }
            }
        }
        AdjacencyGraph { vertices, edges: edges.into_iter().collect() }
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn has_triangle(&self) -> bool {
        self.edges.iter().any(|&(a, b)| (0..self.vertices).any(|c| c != a && c != b && self.has_edge(a, c) && self.has_edge(b, c)))
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices == 0 {
            return true;
        }
        let mut seen = vec![false; self.vertices];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in &self.edges {
                let w = if a == v { b } else if b == v { a } else { continue };
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_path(&self) -> bool {
        self.is_connected()
            && self.edges.len() + 1 == self.vertices
            && (0..self.vertices).all(|v| self.degree(v) <= 2)
    }

    pub fn is_cycle(&self) -> bool {
        self.vertices >= 3
            && self.is_connected()
            && (0..self.vertices).all(|v| self.degree(v) == 2)
    }

    /// Graphviz rendering; `labels` defaults to vertex indices.
    pub fn to_dot(&self, name: &str, labels: Option<&[String]>) -> String {
        let mut s = format!("graph \"{name}\" {{\n");
        for v in 0..self.vertices {
            let label = labels.map_or_else(|| v.to_string(), |l| l[v].clone());
            let _ = writeln!(s, "  c{v} [label=\"{label}\"];");
        }
        for (a, b) in &self.edges {
            let _ = writeln!(s, "  c{a} -- c{b};");
        }
        s.push_str("}\n");
        s
    }
}

/// Decomposition shape on a genus-one surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Shape {
    Linear,
    Cyclic,
    Other,
}

/// A pants decomposition up to homeomorphism: pants are vertices, curves
/// are edges (loops allowed), punctures are legs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AbstractPants {
    /// Punctures on each pants.
    pub legs: Vec<u8>,
    /// Each curve joins the pants on its two sides, smaller index first.
    pub curves: Vec<(usize, usize)>,
}

impl AbstractPants {
    pub fn pants_count(&self) -> usize {
        self.legs.len()
    }

    pub fn genus(&self) -> usize {
        (self.curves.len() + 1).saturating_sub(self.legs.len())
    }

    pub fn punctures(&self) -> usize {
        self.legs.iter().map(|&l| l as usize).sum()
    }

    /// Curves meeting pants `v`, a loop listed twice.
    pub fn boundary(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, &(a, b)) in self.curves.iter().enumerate() {
            if a == v {
                out.push(i);
            }
            if b == v {
                out.push(i);
            }
        }
        out
    }

    pub fn pants_type(&self, v: usize) -> PantsType {
        let boundary = self.boundary(v);
        let has_loop = self.curves.iter().any(|&(a, b)| a == v && b == v);
        if self.legs.len() == 1 {
            PantsType::WholeSurface
        } else if has_loop {
            PantsType::TorusWithBoundary
        } else {
            match self.legs[v] {
                2 => PantsType::TwicePuncturedDisk,
                1 => PantsType::PuncturedAnnulus,
                _ => {
                    debug_assert_eq!(boundary.len(), 3);
                    PantsType::ThreeCurves
                }
            }
        }
    }

    pub fn pants_types(&self) -> Vec<PantsType> {
        let mut t: Vec<PantsType> = (0..self.legs.len()).map(|v| self.pants_type(v)).collect();
        t.sort();
        t
    }

    pub fn adjacency_graph(&self) -> AdjacencyGraph {
        let boundaries: Vec<Vec<usize>> = (0..self.legs.len()).map(|v| self.boundary(v)).collect();
        AdjacencyGraph::from_boundaries(self.curves.len(), boundaries.iter().map(Vec::as_slice))
    }

    fn matrix(&self) -> Vec<Vec<u8>> {
        let n = self.legs.len();
        let mut m = vec![vec![0u8; n]; n];
        for &(a, b) in &self.curves {
            m[a][b] += 1;
            if a != b {
                m[b][a] += 1;
            }
        }
        m
    }

    fn from_matrix(legs: Vec<u8>, m: &[Vec<u8>]) -> Self {
        let mut curves = Vec::new();
        for i in 0..legs.len() {
            for j in i..legs.len() {
                for _ in 0..m[i][j] {
                    curves.push((i, j));
                }
            }
        }
        AbstractPants { legs, curves }
    }

    /// Representative of the isomorphism class: colour refinement, then the
    /// least relabelling among those respecting the refined colours.
    pub fn canonical(&self) -> AbstractPants {
        let n = self.legs.len();
        let m = self.matrix();
        let mut colour: Vec<usize> = self.legs.iter().map(|&l| l as usize).collect();
        loop {
            let sigs: Vec<(usize, u8, Vec<(usize, u8)>)> = (0..n)
                .map(|v| {
                    let mut nb: Vec<(usize, u8)> =
                        (0..n).filter(|&w| w != v && m[v][w] > 0).map(|w| (colour[w], m[v][w])).collect();
                    nb.sort_unstable();
                    (colour[v], m[v][v], nb)
                })
                .collect();
            let mut distinct = sigs.clone();
            distinct.sort();
            distinct.dedup();
            let next: Vec<usize> = sigs.iter().map(|s| distinct.binary_search(s).unwrap()).collect();
            let classes = distinct.len();
            let before = {
                let mut c = colour.clone();
                c.sort_unstable();
                c.dedup();
                c.len()
            };
            colour = next;
            if classes == before {
                break;
            }
        }
        // vertices grouped by colour; permute within groups
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| colour[v]);
        let groups: Vec<(usize, usize)> = {
            let mut g = Vec::new();
            let mut start = 0;
            for i in 1..=n {
                if i == n || colour[order[i]] != colour[order[start]] {
                    g.push((start, i));
                    start = i;
                }
            }
            g
        };
        let mut best: Option<(Vec<u8>, Vec<usize>)> = None;
        let mut perm = order.clone();
        let m = &m;
        permute_groups(&mut perm, &groups, 0, &mut |p| {
            let code: Vec<u8> = p
                .iter()
                .flat_map(|&v| std::iter::once(self.legs[v]).chain(p.iter().map(move |&w| m[v][w])))
                .collect();
            if best.as_ref().is_none_or(|(b, _)| code < *b) {
                best = Some((code, p.to_vec()));
            }
        });
        let (_, p) = best.unwrap();
        let legs = p.iter().map(|&v| self.legs[v]).collect();
        let pm: Vec<Vec<u8>> = p.iter().map(|&v| p.iter().map(|&w| m[v][w]).collect()).collect();
        AbstractPants::from_matrix(legs, &pm)
    }
}

fn permute_groups(perm: &mut Vec<usize>, groups: &[(usize, usize)], g: usize, f: &mut impl FnMut(&[usize])) {
    if g == groups.len() {
        f(perm);
        return;
    }
    let (s, e) = groups[g];
    heap_permutations(perm, s, e - s, &mut |p| permute_groups(p, groups, g + 1, f));
}

fn heap_permutations(v: &mut Vec<usize>, s: usize, k: usize, f: &mut impl FnMut(&mut Vec<usize>)) {
    if k <= 1 {
        f(v);
        return;
    }
    for i in 0..k - 1 {
        heap_permutations(v, s, k - 1, f);
        if k.is_multiple_of(2) {
            v.swap(s + i, s + k - 1);
        } else {
            v.swap(s, s + k - 1);
        }
    }
    heap_permutations(v, s, k - 1, f);
}

/// All abstract pants decompositions of `kind`, one per isomorphism class,
/// sorted.
pub fn enumerate_abstract(kind: SurfaceKind) -> Result<Vec<AbstractPants>> {
    let v = kind.pants_count();
    if v == 0 || v > 8 {
        return Err(Error::Precondition(format!("{kind} needs {v} pants; enumeration supports 1..=8")));
    }
    let n = kind.punctures as usize;
    let mut classes = HashSet::new();
    let mut legs = vec![0u8; v];
    leg_sequences(&mut legs, 0, n, 3, &mut |legs| {
        let mut rem: Vec<u8> = legs.iter().map(|&l| 3 - l).collect();
        let mut m = vec![vec![0u8; v]; v];
        fill_matrix(&mut m, &mut rem, 0, 0, &mut |m| {
            let a = AbstractPants::from_matrix(legs.to_vec(), m);
            if a.adjacency_connected() {
                classes.insert(a.canonical());
            }
        });
    });
    let mut out: Vec<AbstractPants> = classes.into_iter().filter(|a| a.genus() == kind.genus as usize).collect();
    out.sort();
    Ok(out)
}

impl AbstractPants {
    fn adjacency_connected(&self) -> bool {
        let n = self.legs.len();
        let mut uf = crate::surface::UnionFind::new(n);
        for &(a, b) in &self.curves {
            uf.union(a, b);
        }
        (1..n).all(|i| uf.find(i) == uf.find(0))
    }
}

fn leg_sequences(legs: &mut Vec<u8>, i: usize, left: usize, max: u8, f: &mut impl FnMut(&[u8])) {
    if i == legs.len() {
        if left == 0 {
            f(legs);
        }
        return;
    }
    for l in (0..=max.min(left as u8)).rev() {
        legs[i] = l;
        leg_sequences(legs, i + 1, left - l as usize, l, f);
    }
}

fn fill_matrix(m: &mut Vec<Vec<u8>>, rem: &mut Vec<u8>, i: usize, j: usize, f: &mut impl FnMut(&[Vec<u8>])) {
    let n = m.len();
    if i == n {
        f(m);
        return;
    }
    if j == n {
        if rem[i] == 0 {
            fill_matrix(m, rem, i + 1, i + 1, f);
        }
        return;
    }
    let max = if i == j { rem[i] / 2 } else { rem[i].min(rem[j]) };
    for c in 0..=max {
        let used = if i == j { 2 * c } else { c };
        rem[i] -= used;
        if i != j {
            rem[j] -= c;
        }
        m[i][j] = c;
        m[j][i] = c;
        fill_matrix(m, rem, i, j + 1, f);
        rem[i] += used;
        if i != j {
            rem[j] += c;
        }
    }
    m[i][j] = 0;
    m[j][i] = 0;
}

/// Linear, cyclic or other, for decompositions of genus-one surfaces.
pub fn classify_shape(a: &AbstractPants) -> Result<Shape> {
    if a.genus() != 1 {
        return Err(Error::Precondition(format!("shape needs genus 1, got {}", a.genus())));
    }
    let g = a.adjacency_graph();
    if g.has_triangle() {
        return Ok(Shape::Other);
    }
    let types = a.pants_types();
    let count = |t| types.iter().filter(|&&x| x == t).count();
    let annuli = count(PantsType::PuncturedAnnulus);
    if count(PantsType::TorusWithBoundary) == 1
        && count(PantsType::TwicePuncturedDisk) == 1
        && annuli + 2 == types.len()
        && g.is_path()
    {
        Ok(Shape::Linear)
    } else if annuli == types.len() && g.is_cycle() {
        Ok(Shape::Cyclic)
    } else {
        Ok(Shape::Other)
    }
}

/// One abstract class in a report.
#[derive(Clone, Debug, Serialize)]
pub struct ClassSummary {
    pub shape: Shape,
    pub pants_types: Vec<PantsType>,
    pub triangle_free: bool,
    pub decomposition: AbstractPants,
}

#[derive(Clone, Debug, Serialize)]
pub struct LinearCyclicReport {
    pub surface: String,
    pub classes: Vec<ClassSummary>,
    pub triangle_free: usize,
    pub linear: usize,
    pub cyclic: usize,
    /// Triangle-free classes that are neither linear nor cyclic.
    pub violations: Vec<AbstractPants>,
}

impl LinearCyclicReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Enumerates all decompositions of `kind` and checks that triangle-free
/// adjacency graphs come only from linear or cyclic decompositions.
pub fn verify_linear_or_cyclic(kind: SurfaceKind) -> Result<LinearCyclicReport> {
    if kind.genus != 1 || kind.punctures < 4 {
        return Err(Error::Precondition(format!("linear-or-cyclic check needs S_{{1,n}} with n ≥ 4, got {kind}")));
    }
    let mut report = LinearCyclicReport {
        surface: kind.to_string(),
        classes: Vec::new(),
        triangle_free: 0,
        linear: 0,
        cyclic: 0,
        violations: Vec::new(),
    };
    for a in enumerate_abstract(kind)? {
        let shape = classify_shape(&a)?;
        let graph = a.adjacency_graph();
        let triangle_free = !graph.has_triangle();
        if triangle_free {
            report.triangle_free += 1;
            match shape {
                Shape::Linear => {
                    assert!(graph.is_path());
                    report.linear += 1;
                }
                Shape::Cyclic => {
                    assert!(graph.is_cycle());
                    report.cyclic += 1;
                }
                Shape::Other => report.violations.push(a.clone()),
            }
        }
        report.classes.push(ClassSummary { shape, pants_types: a.pants_types(), triangle_free, decomposition: a });
    }
    Ok(report)
}

/// One pair of pants of a concrete decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pants {
    /// Indices into the decomposition's curves; a curve with both sides here
    /// appears twice.
    pub boundary: Vec<usize>,
    pub punctures: Vec<usize>,
}

/// A pants decomposition built from census curves.
#[derive(Clone, Debug)]
pub struct PantsDecomposition {
    curves: Vec<NormalCurve>,
    cut: CutResult,
}

impl PantsDecomposition {
    pub fn new(curves: Vec<NormalCurve>) -> Result<Self> {
        let kind = curves
            .first()
            .map(|c| c.triangulation().kind())
            .ok_or_else(|| Error::Precondition("empty decomposition".into()))?;
        if curves.len() != kind.pants_curves() {
            return Err(Error::Precondition(format!(
                "{kind} needs {} curves, got {}",
                kind.pants_curves(),
                curves.len()
            )));
        }
        let refs: Vec<&NormalCurve> = curves.iter().collect();
        let cut = cut_system(&refs, &[])?.cut;
        for (i, c) in cut.components.iter().enumerate() {
            if c.genus != 0 || c.punctures.len() as u32 + c.boundary != 3 {
                return Err(Error::Invariant(format!("complementary piece {i} is not a pair of pants: {c:?}")));
            }
        }
        assert_eq!(cut.components.len(), kind.pants_count());
        Ok(PantsDecomposition { curves, cut })
    }

    pub fn curves(&self) -> &[NormalCurve] {
        &self.curves
    }

    pub fn cut(&self) -> &CutResult {
        &self.cut
    }

    pub fn pants(&self) -> Vec<Pants> {
        let mut out: Vec<Pants> = self
            .cut
            .components
            .iter()
            .map(|c| Pants { boundary: Vec::new(), punctures: c.punctures.clone() })
            .collect();
        for (i, sides) in self.cut.curve_sides.iter().enumerate() {
            out[sides[0]].boundary.push(i);
            out[sides[1]].boundary.push(i);
        }
        out
    }

    pub fn adjacency_graph(&self) -> AdjacencyGraph {
        let pants = self.pants();
        AdjacencyGraph::from_boundaries(self.curves.len(), pants.iter().map(|p| p.boundary.as_slice()))
    }

    pub fn to_abstract(&self) -> AbstractPants {
        AbstractPants {
            legs: self.cut.components.iter().map(|c| c.punctures.len() as u8).collect(),
            curves: self.cut.curve_sides.iter().map(|s| (s[0].min(s[1]), s[0].max(s[1]))).collect(),
        }
    }
}

/// Maximal disjoint sets among the universe's objects.
#[derive(Clone, Debug, Default, Serialize)]
pub struct MaximalSets {
    /// Full-size sets, as object indices.
    pub decompositions: Vec<Vec<usize>>,
    /// Maximal within the census but too small: truncation artifacts.
    pub truncated: Vec<Vec<usize>>,
}

/// All maximal cliques of the disjointness graph, split by size.
pub fn maximal_disjoint_sets(kind: SurfaceKind, disjointness: &[FixedBitSet]) -> MaximalSets {
    let full = kind.pants_curves();
    let mut out = MaximalSets::default();
    if disjointness.is_empty() {
        return out;
    }
    for c in maximal_cliques(disjointness, &full_set(disjointness.len())) {
        assert!(c.len() <= full, "disjoint set larger than a pants decomposition: {c:?}");
        if c.len() == full {
            out.decompositions.push(c);
        } else {
            out.truncated.push(c);
        }
    }
    out
}

/// Lightest universe curve meeting `a` and `b` and missing the rest of `p`.
pub fn adjacency_via_witness(u: &Universe, p: &[usize], a: usize, b: usize) -> Result<SearchOutcome<usize>> {
    if a == b {
        return Err(Error::Precondition("adjacency needs two distinct curves".into()));
    }
    if !p.contains(&a) || !p.contains(&b) {
        return Err(Error::Precondition("curves must belong to the decomposition".into()));
    }
    Ok(u.find_curve(|w| {
        u.i(w, a) > 0 && u.i(w, b) > 0 && p.iter().all(|&c| c == a || c == b || u.disjoint(w, c))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kind(g: u32, n: u32) -> SurfaceKind {
        SurfaceKind::new(g, n).unwrap()
    }

    #[test]
    fn four_punctured_sphere_has_one_class() {
        let all = enumerate_abstract(kind(0, 4)).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].pants_types(), vec![PantsType::TwicePuncturedDisk; 2]);
    }

    #[test]
    fn pants_counts_match_euler_characteristic() {
        for (g, n) in [(0, 5), (1, 2), (1, 3), (1, 4), (0, 6)] {
            let k = kind(g, n);
            let all = enumerate_abstract(k).unwrap();
            assert!(!all.is_empty());
            for a in &all {
                assert_eq!(a.pants_count() as i64, -k.euler_characteristic());
                assert_eq!(a.punctures(), n as usize);
                assert_eq!(a.genus(), g as usize);
            }
        }
    }

    #[test]
    fn twice_punctured_torus_includes_cyclic_gluing() {
        let all = enumerate_abstract(kind(1, 2)).unwrap();
        let cyc = AbstractPants { legs: vec![1, 1], curves: vec![(0, 1), (0, 1)] };
        assert!(all.contains(&cyc.canonical()));
        // linear: torus piece plus twice-punctured disk
        assert_eq!(all.len(), 2);
    }

    #[test]
    fn canonical_is_label_invariant() {
        let a = AbstractPants { legs: vec![0, 1, 2], curves: vec![(0, 0), (0, 1), (1, 2)] };
        let b = AbstractPants { legs: vec![2, 1, 0], curves: vec![(0, 1), (1, 2), (2, 2)] };
        assert_eq!(a.canonical(), b.canonical());
    }

    #[test]
    fn three_punctured_torus_shapes() {
        let all = enumerate_abstract(kind(1, 3)).unwrap();
        let shapes: Vec<Shape> = all.iter().map(|a| classify_shape(a).unwrap()).collect();
        assert!(shapes.contains(&Shape::Linear));
        // the 3-cycle of punctured annuli has a triangle graph
        let cyc = AbstractPants { legs: vec![1, 1, 1], curves: vec![(0, 1), (1, 2), (0, 2)] }.canonical();
        assert_eq!(classify_shape(&cyc).unwrap(), Shape::Other);
        assert!(all.iter().filter(|a| a.adjacency_graph().has_triangle()).count() >= 2);
    }

    #[test]
    fn shape_needs_genus_one() {
        let a = enumerate_abstract(kind(0, 5)).unwrap();
        assert!(classify_shape(&a[0]).is_err());
    }

    #[test]
    fn five_punctured_torus_has_both_shapes() {
        let r = verify_linear_or_cyclic(kind(1, 5)).unwrap();
        assert!(r.holds(), "{:?}", r.violations);
        assert!(r.linear >= 1 && r.cyclic >= 1);
    }

    #[test]
    fn dot_output_lists_edges() {
        let g = AdjacencyGraph { vertices: 3, edges: vec![(0, 1), (1, 2)] };
        let dot = g.to_dot("p", None);
        assert!(dot.contains("c0 -- c1;") && dot.contains("c1 -- c2;"));
        assert!(g.is_path() && !g.is_cycle() && !g.has_triangle());
    }
}
