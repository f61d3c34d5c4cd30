//! Punctured surfaces as ideal triangulations.
//!
//! A triangle lists its three sides in counterclockwise order. Side `i` runs
//! from corner `i` to corner `i + 1`, and carries an edge index together with
//! an orientation flag: `+1` when the edge's own direction agrees with the
//! counterclockwise traversal, `-1` otherwise. Every edge is used by exactly
//! two sides with opposite flags, which makes the surface orientable and fixes
//! the gluing.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Topological type `S_{g,n}` of a punctured surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SurfaceKind {
    pub genus: u32,
    pub punctures: u32,
}

impl SurfaceKind {
    pub fn new(genus: u32, punctures: u32) -> Result<Self> {
        let kind = SurfaceKind { genus, punctures };
        kind.check()?;
        Ok(kind)
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.punctures as i64
    }

    /// Number of curves in a pants decomposition, `3g - 3 + n`.
    pub fn pants_curves(&self) -> usize {
        (3 * self.genus as i64 - 3 + self.punctures as i64).max(0) as usize
    }

    /// Number of pairs of pants, `-χ`.
    pub fn pants_count(&self) -> usize {
        (-self.euler_characteristic()).max(0) as usize
    }

    pub fn triangle_count(&self) -> usize {
        (-2 * self.euler_characteristic()) as usize
    }

    pub fn edge_count(&self) -> usize {
        (-3 * self.euler_characteristic()) as usize
    }

    fn check(&self) -> Result<()> {
        if self.punctures == 0 {
            return Err(Error::UnsupportedSurface {
                kind: *self,
                reason: "closed surfaces have no ideal triangulation".into(),
            });
        }
        if self.euler_characteristic() >= 0 {
            return Err(Error::UnsupportedSurface {
                kind: *self,
                reason: "Euler characteristic must be negative".into(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S_{{{},{}}}", self.genus, self.punctures)
    }
}

impl std::str::FromStr for SurfaceKind {
    type Err = Error;

    /// Parses `g,n`.
    fn from_str(s: &str) -> Result<Self> {
        let parse = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::Usage(format!("expected `g,n`, got `{s}`")))
        };
        let (g, n) = s
            .split_once(',')
            .ok_or_else(|| Error::Usage(format!("expected `g,n`, got `{s}`")))?;
        SurfaceKind::new(parse(g)?, parse(n)?)
    }
}

/// One side of a triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Side {
    pub edge: usize,
    /// `+1` or `-1`.
    pub orient: i8,
}

impl Side {
    pub fn new(edge: usize, orient: i8) -> Self {
        Side { edge, orient }
    }
}

/// A side occurrence `(triangle, side index)`.
pub type SideRef = (usize, usize);

/// Violated invariant reported by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagnostic {
    UnsupportedKind(String),
    Empty,
    BadOrientation { triangle: usize, side: usize, value: i64 },
    EdgeOutOfRange { triangle: usize, side: usize, edge: usize },
    EdgeDegree { edge: usize, degree: usize },
    SameOrientation { edge: usize },
    NotConnected { components: usize },
    TriangleCount { expected: usize, found: usize },
    EdgeCount { expected: usize, found: usize },
    PunctureCount { expected: usize, found: usize },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::UnsupportedKind(r) => write!(f, "unsupported surface: {r}"),
            Diagnostic::Empty => write!(f, "no triangles"),
            Diagnostic::BadOrientation { triangle, side, value } => {
                write!(f, "triangle {triangle} side {side}: orientation {value} is not ±1")
            }
            Diagnostic::EdgeOutOfRange { triangle, side, edge } => {
                write!(f, "triangle {triangle} side {side}: edge {edge} out of range")
            }
            Diagnostic::EdgeDegree { edge, degree } => {
                write!(f, "edge degree ≠ 2: edge {edge} used {degree} times")
            }
            Diagnostic::SameOrientation { edge } => {
                write!(f, "edge {edge}: both sides carry the same orientation")
            }
            Diagnostic::NotConnected { components } => {
                write!(f, "not connected: gluing graph has {components} components")
            }
            Diagnostic::TriangleCount { expected, found } => {
                write!(f, "triangle count {found}, expected {expected}")
            }
            Diagnostic::EdgeCount { expected, found } => {
                write!(f, "edge count {found}, expected {expected}")
            }
            Diagnostic::PunctureCount { expected, found } => {
                write!(f, "vertex orbits {found}, expected {expected} punctures")
            }
        }
    }
}

/// Serialized form of a triangulation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangulationFile {
    pub genus: u32,
    pub punctures: u32,
    pub triangles: Vec<[usize; 3]>,
    pub orientations: Vec<[i64; 3]>,
}

impl TriangulationFile {
    /// Full list of violated invariants; empty means the data is a valid
    /// ideal triangulation of the declared surface.
    pub fn validate(&self) -> Vec<Diagnostic> {
        validate_parts(self.genus, self.punctures, &self.triangles, &self.orientations)
    }
}

fn validate_parts(
    genus: u32,
    punctures: u32,
    tris: &[[usize; 3]],
    orients: &[[i64; 3]],
) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let kind = SurfaceKind { genus, punctures };
    if let Err(e) = kind.check() {
        out.push(Diagnostic::UnsupportedKind(e.to_string()));
    }
    if tris.is_empty() {
        out.push(Diagnostic::Empty);
        return out;
    }
    if orients.len() != tris.len() {
        out.push(Diagnostic::TriangleCount { expected: tris.len(), found: orients.len() });
        return out;
    }
    let num_edges = tris.iter().flatten().copied().max().map_or(0, |m| m + 1);
    let mut uses: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new(); num_edges];
    for (t, (tri, ori)) in tris.iter().zip(orients).enumerate() {
        for s in 0..3 {
            if ori[s] != 1 && ori[s] != -1 {
                out.push(Diagnostic::BadOrientation { triangle: t, side: s, value: ori[s] });
            }
            uses[tri[s]].push((t, s, ori[s]));
        }
    }
    let mut glue_ok = true;
    for (e, u) in uses.iter().enumerate() {
        if u.len() != 2 {
            out.push(Diagnostic::EdgeDegree { edge: e, degree: u.len() });
            glue_ok = false;
        } else if u[0].2 == u[1].2 {
            out.push(Diagnostic::SameOrientation { edge: e });
            glue_ok = false;
        }
    }
    // connectivity of the dual gluing graph
    let mut seen = vec![false; tris.len()];
    let mut components = 0;
    for start in 0..tris.len() {
        if seen[start] {
            continue;
        }
        components += 1;
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(t) = queue.pop_front() {
            for &e in &tris[t] {
                for &(u, _, _) in &uses[e] {
                    if !seen[u] {
                        seen[u] = true;
                        queue.push_back(u);
                    }
                }
            }
        }
    }
    if components != 1 {
        out.push(Diagnostic::NotConnected { components });
    }
    if kind.check().is_ok() {
        if tris.len() != kind.triangle_count() {
            out.push(Diagnostic::TriangleCount {
                expected: kind.triangle_count(),
                found: tris.len(),
            });
        }
        if num_edges != kind.edge_count() {
            out.push(Diagnostic::EdgeCount { expected: kind.edge_count(), found: num_edges });
        }
    }
    if glue_ok && out.iter().all(|d| !matches!(d, Diagnostic::BadOrientation { .. })) {
        let sides: Vec<[Side; 3]> = tris
            .iter()
            .zip(orients)
            .map(|(t, o)| std::array::from_fn(|i| Side::new(t[i], o[i] as i8)))
            .collect();
        let (_, _, found) = vertex_orbits(&sides, &edge_uses(&sides, num_edges));
        if found != punctures as usize {
            out.push(Diagnostic::PunctureCount { expected: punctures as usize, found });
        }
    }
    out
}

fn edge_uses(triangles: &[[Side; 3]], num_edges: usize) -> Vec<[SideRef; 2]> {
    let mut plus = vec![None; num_edges];
    let mut minus = vec![None; num_edges];
    for (t, tri) in triangles.iter().enumerate() {
        for (s, side) in tri.iter().enumerate() {
            if side.orient > 0 {
                plus[side.edge] = Some((t, s));
            } else {
                minus[side.edge] = Some((t, s));
            }
        }
    }
    plus.into_iter()
        .zip(minus)
        .map(|(p, m)| [p.expect("edge has a + side"), m.expect("edge has a - side")])
        .collect()
}

/// Union-find over triangle corners. Returns per-corner puncture labels,
/// per-edge endpoint punctures `[tail, head]`, and the orbit count.
fn vertex_orbits(
    triangles: &[[Side; 3]],
    uses: &[[SideRef; 2]],
) -> (Vec<[usize; 3]>, Vec<[usize; 2]>, usize) {
    let mut uf = UnionFind::new(3 * triangles.len());
    for &[(tp, sp), (tm, sm)] in uses {
        // + side: tail = corner sp, head = corner sp+1
        // - side: tail = corner sm+1, head = corner sm
        uf.union(3 * tp + sp, 3 * tm + (sm + 1) % 3);
        uf.union(3 * tp + (sp + 1) % 3, 3 * tm + sm);
    }
    let mut label = vec![usize::MAX; 3 * triangles.len()];
    let mut count = 0;
    let mut corners = vec![[0; 3]; triangles.len()];
    for t in 0..triangles.len() {
        for c in 0..3 {
            let r = uf.find(3 * t + c);
            if label[r] == usize::MAX {
                label[r] = count;
                count += 1;
            }
            corners[t][c] = label[r];
        }
    }
    let ends = uses
        .iter()
        .map(|&[(tp, sp), _]| [corners[tp][sp], corners[tp][(sp + 1) % 3]])
        .collect();
    (corners, ends, count)
}

/// Minimal union-find with path halving.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// A validated ideal triangulation of a punctured surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealTriangulation {
    kind: SurfaceKind,
    triangles: Vec<[Side; 3]>,
    uses: Vec<[SideRef; 2]>,
    corners: Vec<[usize; 3]>,
    edge_ends: Vec<[usize; 2]>,
}

impl IdealTriangulation {
    /// Builds and validates; any diagnostic is an error.
    pub fn new(kind: SurfaceKind, triangles: Vec<[Side; 3]>) -> Result<Self> {
        let file = TriangulationFile {
            genus: kind.genus,
            punctures: kind.punctures,
            triangles: triangles.iter().map(|t| [t[0].edge, t[1].edge, t[2].edge]).collect(),
            orientations: triangles
                .iter()
                .map(|t| [t[0].orient as i64, t[1].orient as i64, t[2].orient as i64])
                .collect(),
        };
        IdealTriangulation::from_file(&file)
    }

    pub fn from_file(file: &TriangulationFile) -> Result<Self> {
        let diagnostics = file.validate();
        if !diagnostics.is_empty() {
            return Err(Error::InvalidTriangulation(diagnostics));
        }
        let kind = SurfaceKind { genus: file.genus, punctures: file.punctures };
        let triangles: Vec<[Side; 3]> = file
            .triangles
            .iter()
            .zip(&file.orientations)
            .map(|(t, o)| std::array::from_fn(|i| Side::new(t[i], o[i] as i8)))
            .collect();
        Ok(Self::assemble(kind, triangles))
    }

    fn assemble(kind: SurfaceKind, triangles: Vec<[Side; 3]>) -> Self {
        let num_edges = kind.edge_count();
        let uses = edge_uses(&triangles, num_edges);
        let (corners, edge_ends, _) = vertex_orbits(&triangles, &uses);
        IdealTriangulation { kind, triangles, uses, corners, edge_ends }
    }

    pub fn to_file(&self) -> TriangulationFile {
        TriangulationFile {
            genus: self.kind.genus,
            punctures: self.kind.punctures,
            triangles: self.triangles.iter().map(|t| [t[0].edge, t[1].edge, t[2].edge]).collect(),
            orientations: self
                .triangles
                .iter()
                .map(|t| [t[0].orient as i64, t[1].orient as i64, t[2].orient as i64])
                .collect(),
        }
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn num_triangles(&self) -> usize {
        self.triangles.len()
    }

    pub fn num_edges(&self) -> usize {
        self.uses.len()
    }

    pub fn num_punctures(&self) -> usize {
        self.kind.punctures as usize
    }

    pub fn triangles(&self) -> &[[Side; 3]] {
        &self.triangles
    }

    pub fn side(&self, t: usize, s: usize) -> Side {
        self.triangles[t][s]
    }

    /// The two side occurrences of an edge, `+` side first.
    pub fn edge_sides(&self, e: usize) -> [SideRef; 2] {
        self.uses[e]
    }

    /// The side glued to `(t, s)`.
    pub fn across(&self, t: usize, s: usize) -> SideRef {
        let side = self.triangles[t][s];
        let [p, m] = self.uses[side.edge];
        if side.orient > 0 {
            m
        } else {
            p
        }
    }

    /// Puncture at corner `c` of triangle `t`.
    pub fn corner_puncture(&self, t: usize, c: usize) -> usize {
        self.corners[t][c]
    }

    /// Punctures at the tail and head of edge `e`.
    pub fn edge_ends(&self, e: usize) -> [usize; 2] {
        self.edge_ends[e]
    }

    /// Weight vector of the loop around puncture `v`: the number of ends of
    /// each edge at `v`.
    pub fn vertex_link(&self, v: usize) -> Vec<u32> {
        self.edge_ends.iter().map(|ends| ends.iter().filter(|&&x| x == v).count() as u32).collect()
    }

    /// Re-runs the invariant checks.
    pub fn validate(&self) -> Vec<Diagnostic> {
        self.to_file().validate()
    }

    /// Whether both sides of `e` lie on one triangle.
    pub fn is_self_folded(&self, e: usize) -> bool {
        let [(a, _), (b, _)] = self.uses[e];
        a == b
    }

    /// Exchanges the diagonal of the quadrilateral around `e`. The new
    /// diagonal keeps the index `e`.
    pub fn flip(&self, f: EdgeFlip) -> Result<IdealTriangulation> {
        let q = self.quad(f.edge)?;
        let mut triangles = self.triangles.clone();
        let e = f.edge;
        triangles[q.t1] = [q.ca, q.ad, Side::new(e, -1)];
        triangles[q.t2] = [q.db, q.bc, Side::new(e, 1)];
        Ok(Self::assemble(self.kind, triangles))
    }

    /// The same gluing with the direction of edge `e` reversed.
    pub fn with_edge_reversed(&self, e: usize) -> IdealTriangulation {
        let mut triangles = self.triangles.clone();
        for t in &mut triangles {
            for s in t.iter_mut().filter(|s| s.edge == e) {
                s.orient = -s.orient;
            }
        }
        Self::assemble(self.kind, triangles)
    }

    /// Quadrilateral around an edge; errors on self-folded configurations.
    pub(crate) fn quad(&self, e: usize) -> Result<Quad> {
        if e >= self.num_edges() {
            return Err(Error::IllegalFlip { edge: e, triangles: (usize::MAX, usize::MAX) });
        }
        let [(t1, i), (t2, j)] = self.uses[e];
        if t1 == t2 {
            return Err(Error::IllegalFlip { edge: e, triangles: (t1, t2) });
        }
        let (a, b) = (&self.triangles[t1], &self.triangles[t2]);
        Ok(Quad {
            t1,
            t2,
            ca: a[(i + 2) % 3],
            bc: a[(i + 1) % 3],
            ad: b[(j + 1) % 3],
            db: b[(j + 2) % 3],
        })
    }

    /// Normal form with edge labels kept: each triangle rotated to its least
    /// side sequence, triangles sorted. Two triangulations with the same edge
    /// labels describe the same gluing iff their normal forms agree.
    pub fn relabel_normal_form(&self) -> Vec<[(usize, i8); 3]> {
        let mut tris: Vec<[(usize, i8); 3]> = self
            .triangles
            .iter()
            .map(|t| {
                (0..3)
                    .map(|r| std::array::from_fn(|i| (t[(i + r) % 3].edge, t[(i + r) % 3].orient)))
                    .min()
                    .unwrap()
            })
            .collect();
        tris.sort();
        tris
    }

    /// All combinatorial automorphisms, orientation-reversing ones included.
    pub fn symmetries(&self) -> Vec<Symmetry> {
        let mut out = Vec::new();
        for target in 0..self.num_triangles() {
            for rot in 0..3 {
                for reflect in [false, true] {
                    if let Some(s) = self.extend_symmetry(target, rot, reflect) {
                        out.push(s);
                    }
                }
            }
        }
        out
    }

    /// Image of side `s` under a triangle map with rotation `rot`.
    fn image_side(s: usize, rot: usize, reflect: bool) -> usize {
        if reflect {
            (rot + 6 - s - 1) % 3
        } else {
            (s + rot) % 3
        }
    }

    /// Propagates "triangle 0 goes to `target` with `rot`" along the gluing.
    pub(crate) fn extend_symmetry(&self, target: usize, rot: usize, reflect: bool) -> Option<Symmetry> {
        let n = self.num_triangles();
        let mut map: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut used = vec![false; n];
        map[0] = Some((target, rot));
        used[target] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(t) = queue.pop_front() {
            let (ti, r) = map[t].unwrap();
            for s in 0..3 {
                let (u, j) = self.across(t, s);
                let si = Self::image_side(s, r, reflect);
                let (ui, ji) = self.across(ti, si);
                // rotation for u sending side j to side ji
                let ru = if reflect { (ji + j + 1) % 3 } else { (ji + 3 - j) % 3 };
                match map[u] {
                    Some(existing) => {
                        if existing != (ui, ru) {
                            return None;
                        }
                    }
                    None => {
                        if used[ui] {
                            return None;
                        }
                        used[ui] = true;
                        map[u] = Some((ui, ru));
                        queue.push_back(u);
                    }
                }
            }
        }
        let triangle_map: Vec<(usize, usize)> = map.into_iter().map(Option::unwrap).collect();
        let mut edge_map = vec![usize::MAX; self.num_edges()];
        let mut edge_sign = vec![0i8; self.num_edges()];
        for (t, &(ti, r)) in triangle_map.iter().enumerate() {
            for s in 0..3 {
                let side = self.triangles[t][s];
                let img = self.triangles[ti][Self::image_side(s, r, reflect)];
                let sign = if reflect { -side.orient * img.orient } else { side.orient * img.orient };
                if edge_map[side.edge] == usize::MAX {
                    edge_map[side.edge] = img.edge;
                    edge_sign[side.edge] = sign;
                } else if edge_map[side.edge] != img.edge || edge_sign[side.edge] != sign {
                    return None;
                }
            }
        }
        let mut vertex_map = vec![usize::MAX; self.num_punctures()];
        for (t, &(ti, r)) in triangle_map.iter().enumerate() {
            for c in 0..3 {
                // corner c sits between sides c-1 and c
                let ci = if reflect { (r + 3 - c) % 3 } else { (c + r) % 3 };
                let v = self.corners[t][c];
                let vi = self.corners[ti][ci];
                if vertex_map[v] == usize::MAX {
                    vertex_map[v] = vi;
                } else if vertex_map[v] != vi {
                    return None;
                }
            }
        }
        let sym = Symmetry { triangle_map, reflect, edge_map, edge_sign, vertex_map };
        sym.verify(self).then_some(sym)
    }

    /// Standard triangulation for the supported kinds: `S_{1,n}` and `S_{0,n}`.
    pub fn standard(kind: SurfaceKind) -> Result<IdealTriangulation> {
        kind.check()?;
        let (base, seed_punctures) = match kind.genus {
            0 => {
                if kind.punctures < 3 {
                    unreachable!("checked by SurfaceKind");
                }
                // double of a triangle
                let t0 = [Side::new(0, 1), Side::new(1, 1), Side::new(2, 1)];
                let t1 = [Side::new(0, -1), Side::new(2, -1), Side::new(1, -1)];
                (vec![t0, t1], 3)
            }
            1 => {
                // square torus with a diagonal
                let t0 = [Side::new(0, 1), Side::new(1, 1), Side::new(2, 1)];
                let t1 = [Side::new(0, -1), Side::new(1, -1), Side::new(2, -1)];
                (vec![t0, t1], 1)
            }
            _ => {
                return Err(Error::UnsupportedSurface {
                    kind,
                    reason: "genus >= 2 is not supported by the standard construction".into(),
                })
            }
        };
        let mut tris = base;
        let mut next_edge = 3;
        for j in 0..(kind.punctures - seed_punctures) as usize {
            cone(&mut tris, j, &mut next_edge);
        }
        let t = Self::assemble(kind, tris);
        debug_assert!(t.validate().is_empty());
        Ok(t)
    }
}

/// Inserts a new puncture inside triangle `t`, splitting it into three.
fn cone(tris: &mut Vec<[Side; 3]>, t: usize, next_edge: &mut usize) {
    let [e0, e1, e2] = tris[t];
    let f = [*next_edge, *next_edge + 1, *next_edge + 2];
    *next_edge += 3;
    // f[i] runs from corner i to the new vertex
    tris[t] = [e0, Side::new(f[1], 1), Side::new(f[0], -1)];
    tris.push([e1, Side::new(f[2], 1), Side::new(f[1], -1)]);
    tris.push([e2, Side::new(f[0], 1), Side::new(f[2], -1)]);
}

/// Request to flip an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EdgeFlip {
    pub edge: usize,
}

impl EdgeFlip {
    pub fn new(edge: usize) -> Self {
        EdgeFlip { edge }
    }
}

/// Quadrilateral `A, D, B, C` (counterclockwise) around a flippable edge
/// `AB`, with `t1 = (A, B, C)` and `t2 = (B, A, D)`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Quad {
    pub t1: usize,
    pub t2: usize,
    pub ad: Side,
    pub db: Side,
    pub bc: Side,
    pub ca: Side,
}

/// A combinatorial automorphism of a triangulation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Symmetry {
    /// Triangle `t` goes to `triangle_map[t].0`, sides rotated by `.1`.
    pub triangle_map: Vec<(usize, usize)>,
    pub reflect: bool,
    pub edge_map: Vec<usize>,
    /// Whether the edge direction is preserved (`+1`) or reversed.
    pub edge_sign: Vec<i8>,
    pub vertex_map: Vec<usize>,
}

impl Symmetry {
    pub fn is_identity(&self) -> bool {
        !self.reflect && self.triangle_map.iter().enumerate().all(|(t, &(u, r))| t == u && r == 0)
    }

    /// Re-checks every gluing under the bijection.
    pub fn verify(&self, tri: &IdealTriangulation) -> bool {
        let n = tri.num_triangles();
        let mut hit = vec![false; n];
        for &(u, _) in &self.triangle_map {
            if u >= n || std::mem::replace(&mut hit[u], true) {
                return false;
            }
        }
        let mut edge_hit = vec![false; tri.num_edges()];
        for &e in &self.edge_map {
            if e >= edge_hit.len() || std::mem::replace(&mut edge_hit[e], true) {
                return false;
            }
        }
        for t in 0..n {
            let (ti, r) = self.triangle_map[t];
            for s in 0..3 {
                let (u, j) = tri.across(t, s);
                let (ui, ri) = self.triangle_map[u];
                let si = IdealTriangulation::image_side(s, r, self.reflect);
                let ji = IdealTriangulation::image_side(j, ri, self.reflect);
                if tri.across(ti, si) != (ui, ji) {
                    return false;
                }
                if tri.side(ti, si).edge != self.edge_map[tri.side(t, s).edge] {
                    return false;
                }
            }
        }
        true
    }

    /// Pushes a weight vector forward.
    pub fn apply(&self, weights: &[u32]) -> Vec<u32> {
        let mut out = vec![0; weights.len()];
        for (e, &w) in weights.iter().enumerate() {
            out[self.edge_map[e]] = w;
        }
        out
    }
}
