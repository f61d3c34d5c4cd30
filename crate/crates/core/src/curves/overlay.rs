//! Reference intersection engine: draw both curves in one triangulation,
//! build the planar arrangement inside every triangle, glue the faces across
//! edges and remove bigons until none remain.

use std::collections::HashSet;

use serde::Serialize;

use super::{normal_arcs, slot_of, NormalArc, NormalCurve};
use crate::surface::{IdealTriangulation, UnionFind};

/// Result of the overlay computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OverlayOutcome {
    /// Crossings in minimal position.
    pub crossings: u32,
    /// Crossings in the initial canonical drawing.
    pub initial_crossings: u32,
    pub bigons_removed: u32,
    pub rounds: u32,
}

/// A bigon region: a disk in the complement of both curves with two
/// crossing corners and no puncture.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bigon {
    /// Edge segments crossing the bigon, `(edge, segment)`; segment `s` lies
    /// between strand positions `s - 1` and `s`.
    pub rungs: Vec<(usize, usize)>,
    pub triangles: Vec<usize>,
}

/// Minimal crossing count of `a` and `b`.
pub fn intersect_reference(a: &NormalCurve, b: &NormalCurve) -> OverlayOutcome {
    assert!(a.same_surface(b), "curves on different triangulations");
    if a.weights() == b.weights() {
        return OverlayOutcome { crossings: 0, initial_crossings: 0, bigons_removed: 0, rounds: 0 };
    }
    let mut d = Drawing::new(a.triangulation(), a.weights(), b.weights());
    d.minimize()
}

pub(crate) struct Drawing<'t> {
    tri: &'t IdealTriangulation,
    arcs: [Vec<NormalArc>; 2],
    /// Arc index ranges by triangle.
    arc_start: [Vec<usize>; 2],
    offset: [Vec<usize>; 2],
    /// Per edge, tail to head: `(curve, strand)`.
    order: Vec<Vec<(u8, u32)>>,
    pos: [Vec<u32>; 2],
    /// `point_arc[c][strand id][slot] = (arc, endpoint)`.
    point_arc: [Vec<[(u32, u8); 2]>; 2],
}

struct Face {
    punctures: u32,
    corners: u32,
    triangle: u32,
}

#[derive(Default)]
struct Scratch {
    to: Vec<u32>,
    rot: Vec<[u32; 4]>,
    deg: Vec<u8>,
    idx: Vec<u8>,
    seen: Vec<bool>,
}

impl<'t> Drawing<'t> {
    pub(crate) fn new(tri: &'t IdealTriangulation, wa: &[u32], wb: &[u32]) -> Self {
        let arcs = [normal_arcs(tri, wa).unwrap(), normal_arcs(tri, wb).unwrap()];
        let arc_start = [0, 1].map(|c| {
            let mut start = vec![0usize; tri.num_triangles() + 1];
            for a in &arcs[c] {
                start[a.triangle as usize + 1] += 1;
            }
            for t in 0..tri.num_triangles() {
                start[t + 1] += start[t];
            }
            start
        });
        let offset = [wa, wb].map(|w| {
            let mut o = vec![0usize];
            for &x in w {
                o.push(o.last().unwrap() + x as usize);
            }
            o
        });
        let mut order = Vec::with_capacity(tri.num_edges());
        let mut pos = [vec![0; offset[0][tri.num_edges()]], vec![0; offset[1][tri.num_edges()]]];
        for e in 0..tri.num_edges() {
            let mut col = Vec::with_capacity((wa[e] + wb[e]) as usize);
            for k in 0..wa[e] {
                pos[0][offset[0][e] + k as usize] = col.len() as u32;
                col.push((0u8, k));
            }
            for k in 0..wb[e] {
                pos[1][offset[1][e] + k as usize] = col.len() as u32;
                col.push((1u8, k));
            }
            order.push(col);
        }
        let point_arc = [0, 1].map(|c| {
            let mut pa = vec![[(u32::MAX, 0u8); 2]; offset[c][tri.num_edges()]];
            for (i, arc) in arcs[c].iter().enumerate() {
                for end in 0..2 {
                    let (e, k) = arc.strands[end];
                    let slot = slot_of(tri, arc.triangle as usize, arc.sides[end] as usize);
                    pa[offset[c][e as usize] + k as usize][slot] = (i as u32, end as u8);
                }
            }
            pa
        });
        Drawing { tri, arcs, arc_start, offset, order, pos, point_arc }
    }

    fn position(&self, c: usize, (e, k): (u32, u32)) -> u32 {
        self.pos[c][self.offset[c][e as usize] + k as usize]
    }

    fn len(&self, e: usize) -> u32 {
        self.order[e].len() as u32
    }

    /// Boundary index of an arc endpoint within its triangle: corner `i` is
    /// `base[i]`, followed by the points of side `i`.
    fn boundary_index(&self, c: usize, arc: &NormalArc, end: usize, base: &[u32; 3]) -> u32 {
        let t = arc.triangle as usize;
        let s = arc.sides[end] as usize;
        let side = self.tri.side(t, s);
        let p = self.position(c, arc.strands[end]);
        let along = if side.orient > 0 { p } else { self.len(side.edge) - 1 - p };
        base[s] + 1 + along
    }

    fn bases(&self, t: usize) -> ([u32; 3], u32) {
        let m = self.tri.triangles()[t].map(|s| self.len(s.edge));
        let base = [0, m[0] + 1, m[0] + m[1] + 2];
        (base, m[0] + m[1] + m[2] + 3)
    }

    /// Chords of triangle `t` as `(p, q)` with `p < q`, curve `a` first.
    fn chords(&self, t: usize, base: &[u32; 3]) -> [Vec<(u32, u32)>; 2] {
        [0, 1].map(|c| {
            self.arcs[c][self.arc_start[c][t]..self.arc_start[c][t + 1]]
                .iter()
                .map(|arc| {
                    let x = self.boundary_index(c, arc, 0, base);
                    let y = self.boundary_index(c, arc, 1, base);
                    (x.min(y), x.max(y))
                })
                .collect()
        })
    }

    pub(crate) fn crossing_count(&self) -> u32 {
        let mut n = 0;
        for t in 0..self.tri.num_triangles() {
            let (base, _) = self.bases(t);
            let [ca, cb] = self.chords(t, &base);
            for a in &ca {
                n += cb.iter().filter(|b| interleave(*a, **b)).count() as u32;
            }
        }
        n
    }

    /// Faces of the arrangement in triangle `t`, appended to `faces`.
    /// `seg_face[e][s][slot]` receives the face on each side of each edge
    /// segment. Returns the number of crossings.
    fn triangle_faces(
        &self,
        t: usize,
        faces: &mut Vec<Face>,
        seg_face: &mut [Vec<[u32; 2]>],
        sc: &mut Scratch,
    ) -> u32 {
        let (base, nb) = self.bases(t);
        let chords = self.chords(t, &base);
        let (na, nbch) = (chords[0].len(), chords[1].len());
        let mut cross_id = vec![u32::MAX; na * nbch];
        // crossings along each chord, by the crossing chord's inner endpoint
        let mut along: [Vec<Vec<(u32, usize)>>; 2] = [vec![Vec::new(); na], vec![Vec::new(); nbch]];
        let mut ncross = 0u32;
        for (i, &a) in chords[0].iter().enumerate() {
            for (j, &b) in chords[1].iter().enumerate() {
                if interleave(a, b) {
                    cross_id[i * nbch + j] = nb + ncross;
                    ncross += 1;
                    along[0][i].push((inner(a, b), j));
                    along[1][j].push((inner(b, a), i));
                }
            }
        }
        let nv = (nb + ncross) as usize;
        sc.rot.clear();
        sc.rot.resize(nv, [u32::MAX; 4]);
        sc.deg.clear();
        sc.deg.resize(nv, 0);
        sc.to.clear();
        for b in 0..nb {
            sc.to.push((b + 1) % nb);
            sc.to.push(b);
        }
        for b in 0..nb as usize {
            let prev = (b + nb as usize - 1) % nb as usize;
            let is_corner = base.contains(&(b as u32));
            sc.rot[b][0] = 2 * b as u32;
            if is_corner {
                sc.rot[b][1] = 2 * prev as u32 + 1;
                sc.deg[b] = 2;
            } else {
                sc.rot[b][2] = 2 * prev as u32 + 1;
                sc.deg[b] = 3;
            }
        }
        for v in nb as usize..nv {
            sc.deg[v] = 4;
        }
        let mut verts = Vec::new();
        for c in 0..2 {
            for (i, &(p, q)) in chords[c].iter().enumerate() {
                let list = &mut along[c][i];
                list.sort_unstable();
                verts.clear();
                verts.push(p);
                for &(_, j) in list.iter() {
                    verts.push(if c == 0 { cross_id[i * nbch + j] } else { cross_id[j * nbch + i] });
                }
                verts.push(q);
                let first = sc.to.len() as u32;
                for w in verts.windows(2) {
                    sc.to.push(w[1]);
                    sc.to.push(w[0]);
                }
                let k = list.len() as u32;
                sc.rot[p as usize][1] = first;
                sc.rot[q as usize][1] = first + 2 * k + 1;
                for s in 1..=k as usize {
                    let out_fwd = first + 2 * s as u32;
                    let out_back = first + 2 * (s as u32 - 1) + 1;
                    self.set_cross_slot(sc, &chords, c, i, list[s - 1].1, verts[s], out_fwd, out_back);
                }
            }
        }
        let nh = sc.to.len();
        sc.idx.clear();
        sc.idx.resize(nh, 0);
        for v in 0..nv {
            for k in 0..sc.deg[v] as usize {
                let h = sc.rot[v][k];
                debug_assert!(h != u32::MAX, "incomplete rotation at vertex {v}");
                sc.idx[h as usize] = k as u8;
            }
        }
        sc.seen.clear();
        sc.seen.resize(nh, false);
        for b in 0..nb as usize {
            sc.seen[2 * b + 1] = true;
        }
        let sides = self.tri.triangles()[t];
        for start in 0..nh {
            if sc.seen[start] {
                continue;
            }
            let id = faces.len() as u32;
            let mut face = Face { punctures: 0, corners: 0, triangle: t as u32 };
            let mut h = start;
            loop {
                sc.seen[h] = true;
                let v = sc.to[h] as usize;
                if v >= nb as usize {
                    face.corners += 1;
                } else if base.contains(&(v as u32)) {
                    face.punctures += 1;
                }
                if h < 2 * nb as usize && h % 2 == 0 {
                    let b = (h / 2) as u32;
                    let i = if b >= base[2] { 2 } else if b >= base[1] { 1 } else { 0 };
                    let s = b - base[i];
                    let side = sides[i];
                    let m = self.len(side.edge);
                    let seg = if side.orient > 0 { s } else { m - s };
                    seg_face[side.edge][seg as usize][(side.orient < 0) as usize] = id;
                }
                let tw = h ^ 1;
                let d = sc.deg[v] as usize;
                h = sc.rot[v][(sc.idx[tw] as usize + d - 1) % d] as usize;
                if h == start {
                    break;
                }
            }
            faces.push(face);
        }
        ncross
    }

    /// Fills the four rotation slots of a crossing for chord `(c, i)` given
    /// its outgoing forward and backward half-edges there.
    #[allow(clippy::too_many_arguments)]
    fn set_cross_slot(
        &self,
        sc: &mut Scratch,
        chords: &[Vec<(u32, u32)>; 2],
        c: usize,
        i: usize,
        j: usize,
        x: u32,
        out_fwd: u32,
        out_back: u32,
    ) {
        let x = x as usize;
        if c == 0 {
            sc.rot[x][0] = out_fwd;
            sc.rot[x][2] = out_back;
        } else {
            // left of the a-chord (p, q) is the boundary outside (p, q)
            let (p, q) = chords[0][j];
            let head = chords[1][i].1;
            let head_left = !(p < head && head < q);
            let (l, r) = if head_left { (out_fwd, out_back) } else { (out_back, out_fwd) };
            sc.rot[x][1] = l;
            sc.rot[x][3] = r;
        }
    }

    /// Bigon regions of the current drawing, with the crossing count.
    pub(crate) fn bigons(&self) -> (Vec<Bigon>, u32) {
        let ne = self.tri.num_edges();
        let mut seg_face: Vec<Vec<[u32; 2]>> =
            (0..ne).map(|e| vec![[u32::MAX; 2]; self.len(e) as usize + 1]).collect();
        let mut faces = Vec::new();
        let mut sc = Scratch::default();
        let mut crossings = 0;
        for t in 0..self.tri.num_triangles() {
            crossings += self.triangle_faces(t, &mut faces, &mut seg_face, &mut sc);
        }
        if crossings == 0 {
            return (Vec::new(), 0);
        }
        let mut uf = UnionFind::new(faces.len());
        for segs in &seg_face {
            for &[f, g] in segs {
                uf.union(f as usize, g as usize);
            }
        }
        let n = faces.len();
        let mut stats = vec![(0i64, 0i64, 0u32, 0u32); n];
        for (f, face) in faces.iter().enumerate() {
            let r = uf.find(f);
            stats[r].0 += 1;
            stats[r].2 += face.punctures;
            stats[r].3 += face.corners;
        }
        for segs in &seg_face {
            for &[f, _] in segs {
                let r = uf.find(f as usize);
                stats[r].1 += 1;
            }
        }
        let mut out: Vec<Bigon> = Vec::new();
        let mut slot_of_root = vec![usize::MAX; n];
        for r in 0..n {
            let (fc, g, p, k) = stats[r];
            if uf.find(r) == r && p == 0 && fc - g == 1 && k == 2 {
                slot_of_root[r] = out.len();
                out.push(Bigon { rungs: Vec::new(), triangles: Vec::new() });
            }
        }
        for (e, segs) in seg_face.iter().enumerate() {
            for (s, &[f, _]) in segs.iter().enumerate() {
                let k = slot_of_root[uf.find(f as usize)];
                if k != usize::MAX {
                    out[k].rungs.push((e, s));
                }
            }
        }
        for (f, face) in faces.iter().enumerate() {
            let k = slot_of_root[uf.find(f)];
            if k != usize::MAX {
                out[k].triangles.push(face.triangle as usize);
            }
        }
        for b in &mut out {
            b.triangles.sort_unstable();
            b.triangles.dedup();
        }
        (out, crossings)
    }

    /// Pushes one curve across a bigon.
    fn remove(&mut self, bigon: &Bigon) {
        for &(e, s) in &bigon.rungs {
            let col = &mut self.order[e];
            assert!(s >= 1 && s < col.len(), "rung {s} on edge {e} touches a corner");
            let (x, y) = (col[s - 1], col[s]);
            assert!(x.0 != y.0, "rung {s} on edge {e} does not join the two curves");
            col.swap(s - 1, s);
            self.pos[x.0 as usize][self.offset[x.0 as usize][e] + x.1 as usize] = s as u32;
            self.pos[y.0 as usize][self.offset[y.0 as usize][e] + y.1 as usize] = s as u32 - 1;
        }
    }

    pub(crate) fn minimize(&mut self) -> OverlayOutcome {
        let mut rounds = 0;
        let mut removed = 0;
        let (mut bigons, mut crossings) = self.bigons();
        let initial = crossings;
        while !bigons.is_empty() {
            rounds += 1;
            let mut used = HashSet::new();
            let mut done = 0;
            for b in &bigons {
                if b.triangles.iter().any(|t| used.contains(t)) {
                    continue;
                }
                used.extend(b.triangles.iter().copied());
                self.remove(b);
                done += 1;
            }
            removed += done;
            let (next, after) = self.bigons();
            assert_eq!(after + 2 * done, crossings, "bigon removal must drop two crossings each");
            bigons = next;
            crossings = after;
        }
        assert!(self.ladder_bigon().is_none(), "ladder scan found a bigon the overlay missed");
        debug_assert_eq!(crossings, self.crossing_count());
        OverlayOutcome { crossings, initial_crossings: initial, bigons_removed: removed, rounds }
    }

    /// Independent bigon detector: from each crossing, walk the strip between
    /// the two curves through adjacent parallel arcs until it ends or meets
    /// another crossing. Returns the two crossings found.
    pub(crate) fn ladder_bigon(&self) -> Option<((u32, u32), (u32, u32))> {
        let limit = self.order.iter().map(Vec::len).sum::<usize>() + 1;
        for t in 0..self.tri.num_triangles() {
            let (base, _) = self.bases(t);
            for ia in self.arc_start[0][t]..self.arc_start[0][t + 1] {
                for ib in self.arc_start[1][t]..self.arc_start[1][t + 1] {
                    if !self.arcs_cross(ia, ib, &base) {
                        continue;
                    }
                    for ea in 0..2 {
                        for eb in 0..2 {
                            if let Some(end) = self.walk(ia, ea, ib, eb, limit) {
                                return Some(((ia as u32, ib as u32), end));
                            }
                        }
                    }
                }
            }
        }
        None
    }

    fn arcs_cross(&self, ia: usize, ib: usize, base: &[u32; 3]) -> bool {
        let (a, b) = (&self.arcs[0][ia], &self.arcs[1][ib]);
        let pa = (self.boundary_index(0, a, 0, base), self.boundary_index(0, a, 1, base));
        let pb = (self.boundary_index(1, b, 0, base), self.boundary_index(1, b, 1, base));
        interleave((pa.0.min(pa.1), pa.0.max(pa.1)), (pb.0.min(pb.1), pb.0.max(pb.1)))
    }

    fn adjacent_exit(&self, ia: usize, ea: usize, ib: usize, eb: usize) -> bool {
        let (a, b) = (&self.arcs[0][ia], &self.arcs[1][ib]);
        a.sides[ea] == b.sides[eb]
            && self.position(0, a.strands[ea]).abs_diff(self.position(1, b.strands[eb])) == 1
    }

    fn walk(&self, mut ia: usize, mut ea: usize, mut ib: usize, mut eb: usize, limit: usize) -> Option<(u32, u32)> {
        for _ in 0..limit {
            if !self.adjacent_exit(ia, ea, ib, eb) {
                return None;
            }
            let (a, b) = (self.arcs[0][ia], self.arcs[1][ib]);
            let slot = slot_of(self.tri, a.triangle as usize, a.sides[ea] as usize);
            let (sa, sb) = (a.strands[ea], b.strands[eb]);
            let (na, enter_a) = self.point_arc[0][self.offset[0][sa.0 as usize] + sa.1 as usize][1 - slot];
            let (nb, enter_b) = self.point_arc[1][self.offset[1][sb.0 as usize] + sb.1 as usize][1 - slot];
            let t = self.arcs[0][na as usize].triangle as usize;
            let (base, _) = self.bases(t);
            if self.arcs_cross(na as usize, nb as usize, &base) {
                return Some((na, nb));
            }
            ia = na as usize;
            ib = nb as usize;
            ea = 1 - enter_a as usize;
            eb = 1 - enter_b as usize;
        }
        None
    }
}

fn interleave((p, q): (u32, u32), (r, s): (u32, u32)) -> bool {
    (p < r && r < q) != (p < s && s < q)
}

/// Endpoint of `other` lying strictly inside `chord`'s interval.
fn inner((p, q): (u32, u32), (r, s): (u32, u32)) -> u32 {
    if p < r && r < q {
        r
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::curves::Census;
    use crate::surface::SurfaceKind;

    fn census(g: u32, n: u32, bound: u32) -> Census {
        let t = IdealTriangulation::standard(SurfaceKind::new(g, n).unwrap()).unwrap();
        Census::enumerate(Arc::new(t), bound)
    }

    #[test]
    fn torus_slopes_intersect_by_determinant() {
        // on S_{1,1}, weights (|q|, |p|, |p+q|)-style slopes; i = |det|
        let c = census(1, 1, 6);
        let get = |w: [u32; 3]| c.get(c.index_of(&w).unwrap());
        let x = get([0, 1, 1]);
        let y = get([1, 0, 1]);
        let z = get([1, 1, 0]);
        assert_eq!(intersect_reference(x, y).crossings, 1);
        assert_eq!(intersect_reference(y, z).crossings, 1);
        assert_eq!(intersect_reference(x, z).crossings, 1);
        let w = get([1, 2, 1]);
        assert_eq!(intersect_reference(x, w).crossings, 1);
        assert_eq!(intersect_reference(y, w).crossings, 2);
    }

    #[test]
    fn self_overlay_without_shortcut_is_zero() {
        let c = census(1, 2, 6);
        for x in c.curves() {
            let mut d = Drawing::new(x.triangulation(), x.weights(), x.weights());
            assert_eq!(d.minimize().crossings, 0, "{x:?}");
        }
    }

    #[test]
    fn outcome_counts_removed_bigons() {
        let c = census(0, 5, 8);
        for x in c.curves() {
            for y in c.curves() {
                let o = intersect_reference(x, y);
                assert_eq!(o.initial_crossings, o.crossings + 2 * o.bigons_removed);
                assert!(o.crossings.is_multiple_of(2), "planar curves meet evenly");
            }
        }
    }
}
