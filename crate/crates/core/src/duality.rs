//! Dual pairs of curves on S_{1,n}, the classes N and N′, small sides,
//! triangles of 2-curves and 2-curve ideal triangulations.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{curve_type, cut_system, CurveSide, CurveType};
use crate::curves::{geometric_intersection, CurvePair, NormalCurve};
use crate::error::{Error, Result};
use crate::search::{maximal_cliques, max_clique_size, SearchOutcome, Universe};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DualKind {
    /// Nonseparating curves meeting once.
    NonseparatingDual,
    /// 2-curves meeting twice.
    TwocurveDual,
}

/// Membership of a curve type in N (nonseparating or 2-curve).
pub fn in_n(t: &CurveType) -> bool {
    matches!(t, CurveType::Nonseparating) || t.is_k_curve(2)
}

/// Membership in N′ (3-curves and n-curves) on S_{1,n}.
pub fn in_n_prime(t: &CurveType, n: u32) -> bool {
    t.is_k_curve(3) || t.is_k_curve(n)
}

fn dual_kind(ta: &CurveType, tb: &CurveType, i: u32) -> Option<DualKind> {
    match (ta, tb) {
        (CurveType::Nonseparating, CurveType::Nonseparating) if i == 1 => Some(DualKind::NonseparatingDual),
        _ if ta.is_k_curve(2) && tb.is_k_curve(2) && i == 2 => Some(DualKind::TwocurveDual),
        _ => None,
    }
}

pub fn is_dual(a: &NormalCurve, b: &NormalCurve) -> Result<Option<DualKind>> {
    let i = geometric_intersection(CurvePair::new(a, b)?);
    Ok(dual_kind(&curve_type(a), &curve_type(b), i))
}

/// Sides of `z` homeomorphic to S_{1,1} (for an n-curve) or S_{0,4} (for a
/// 3-curve).
pub fn small_sides(z: &NormalCurve) -> Result<Vec<CurveSide>> {
    let n = z.triangulation().kind().punctures;
    let t = curve_type(z);
    if z.triangulation().kind().genus != 1 || !in_n_prime(&t, n) {
        return Err(Error::Precondition(format!("{z:?} is a {t}, not in N′")));
    }
    Ok(small_sides_of(&t))
}

fn small_sides_of(t: &CurveType) -> Vec<CurveSide> {
    match t {
        CurveType::Separating { sides, .. } => sides.iter().filter(|s| is_small(s)).cloned().collect(),
        CurveType::Nonseparating => Vec::new(),
    }
}

fn is_small(s: &CurveSide) -> bool {
    (s.genus == 1 && s.punctures.is_empty()) || (s.genus == 0 && s.punctures.len() == 3)
}

/// The puncture on the genus-0 side of both curves of a dual 2-curve pair.
pub fn shared_puncture(a: &NormalCurve, b: &NormalCurve) -> Result<usize> {
    if is_dual(a, b)? != Some(DualKind::TwocurveDual) {
        return Err(Error::Precondition("shared puncture needs a dual pair of 2-curves".into()));
    }
    shared_of(&curve_type(a), &curve_type(b))
}

fn shared_of(ta: &CurveType, tb: &CurveType) -> Result<usize> {
    let (pa, pb) = (&ta.genus_zero_side().unwrap().punctures, &tb.genus_zero_side().unwrap().punctures);
    let common: Vec<usize> = pa.iter().filter(|p| pb.contains(p)).copied().collect();
    match common.as_slice() {
        [p] => Ok(*p),
        _ => Err(Error::Invariant(format!("dual 2-curves share punctures {common:?}, expected exactly one"))),
    }
}

/// `a` and `b` on a common small side of `z`; `x` meets `z` and `a` but not
/// `b`; `y` meets `z` and `b` but not `a`. Universe indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DualityWitness {
    pub z: usize,
    pub x: usize,
    pub y: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Triangle {
    pub curves: [usize; 3],
    /// A 3-curve with all three on its genus-0 side.
    pub z: usize,
}

/// Maximal set of 2-curves that are pairwise disjoint or dual.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoCurveTriangulation {
    pub curves: Vec<usize>,
    /// Triangles among the curves, each with an enclosing 3-curve.
    pub triangles: Vec<[usize; 3]>,
}

impl TwoCurveTriangulation {
    /// Each curve borders exactly two triangles.
    pub fn each_curve_in_two_triangles(&self) -> bool {
        self.curves.iter().all(|c| self.triangles.iter().filter(|t| t.contains(c)).count() == 2)
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct TwoCurveTriangulations {
    /// Sets of the full size, the edge count of an ideal triangulation.
    pub complete: Vec<TwoCurveTriangulation>,
    /// Maximal only within the census.
    pub truncated: Vec<Vec<usize>>,
}

/// Class sets over the universe's objects.
#[derive(Clone, Debug, Serialize)]
pub struct ClassSets {
    pub n: Vec<usize>,
    pub n_prime: Vec<usize>,
}

/// Types, bitsets and side lookups over a universe of curves on S_{1,n}.
pub struct DualityContext<'u> {
    u: &'u Universe,
    punctures: u32,
    types: Vec<CurveType>,
    disjoint: Vec<FixedBitSet>,
    meets: Vec<FixedBitSet>,
    /// `(z, c) -> side of z containing c` for z in N′ and c disjoint from z.
    sides: HashMap<(usize, usize), CurveSide>,
}

impl<'u> DualityContext<'u> {
    pub fn new(u: &'u Universe) -> Result<Self> {
        let kind = u.census().triangulation().kind();
        if kind.genus != 1 || kind.punctures < 3 {
            return Err(Error::Precondition(format!("duality is defined here on S_{{1,n}}, n ≥ 3, got {kind}")));
        }
        let curves = u.curves();
        let m = curves.len();
        let types: Vec<CurveType> = curves.par_iter().map(curve_type).collect();
        let mut disjoint = vec![FixedBitSet::with_capacity(m); m];
        let mut meets = vec![FixedBitSet::with_capacity(m); m];
        for a in 0..m {
            for b in 0..m {
                if a != b {
                    if u.disjoint(a, b) {
                        disjoint[a].insert(b);
                    } else {
                        meets[a].insert(b);
                    }
                }
            }
        }
        let zs: Vec<usize> = (0..m).filter(|&z| in_n_prime(&types[z], kind.punctures)).collect();
        let sides = zs
            .par_iter()
            .flat_map_iter(|&z| {
                disjoint[z].ones().map(move |c| {
                    let sc = cut_system(&[&curves[z]], &[&curves[c]]).expect("disjoint pair");
                    let comp = &sc.cut.components[sc.passengers[0]];
                    ((z, c), CurveSide { genus: comp.genus, punctures: comp.punctures.clone() })
                })
            })
            .collect();
        Ok(DualityContext { u, punctures: kind.punctures, types, disjoint, meets, sides })
    }

    pub fn universe(&self) -> &Universe {
        self.u
    }

    pub fn curve_type(&self, c: usize) -> &CurveType {
        &self.types[c]
    }

    pub fn is_dual(&self, a: usize, b: usize) -> Option<DualKind> {
        dual_kind(&self.types[a], &self.types[b], self.u.i(a, b))
    }

    pub fn in_n(&self, c: usize) -> bool {
        in_n(&self.types[c])
    }

    pub fn in_n_prime(&self, c: usize) -> bool {
        in_n_prime(&self.types[c], self.punctures)
    }

    pub fn class_sets(&self) -> ClassSets {
        let objects = 0..self.u.objects().len();
        ClassSets {
            n: objects.clone().filter(|&c| self.in_n(c)).collect(),
            n_prime: objects.filter(|&c| self.in_n_prime(c)).collect(),
        }
    }

    pub fn small_sides(&self, z: usize) -> Result<Vec<CurveSide>> {
        if !self.in_n_prime(z) {
            return Err(Error::Precondition(format!("curve {z} is a {}, not in N′", self.types[z])));
        }
        Ok(small_sides_of(&self.types[z]))
    }

    /// Side of `z` containing `c`, for `z` in N′ and `c` disjoint from it.
    pub fn side(&self, z: usize, c: usize) -> Option<&CurveSide> {
        self.sides.get(&(z, c))
    }

    /// Lightest `(z, x, y)` in the universe; `a`, `b` must be in N.
    pub fn duality_witness(&self, a: usize, b: usize) -> Result<SearchOutcome<DualityWitness>> {
        if !self.in_n(a) || !self.in_n(b) {
            return Err(Error::Precondition("duality witnesses are defined for curves in N".into()));
        }
        let mut best: Option<DualityWitness> = None;
        let key = |w: &DualityWitness| w.z.max(w.x).max(w.y);
        let mut zs = self.disjoint[a].clone();
        zs.intersect_with(&self.disjoint[b]);
        for z in zs.ones() {
            if best.as_ref().is_some_and(|w| key(w) <= z) {
                break;
            }
            if !self.in_n_prime(z) {
                continue;
            }
            let (Some(sa), Some(sb)) = (self.side(z, a), self.side(z, b)) else { continue };
            if sa != sb || !is_small(sa) {
                continue;
            }
            let pick = |p: usize, q: usize| {
                let mut s = self.meets[z].clone();
                s.intersect_with(&self.meets[p]);
                s.intersect_with(&self.disjoint[q]);
                s.minimum()
            };
            if let (Some(x), Some(y)) = (pick(a, b), pick(b, a)) {
                let w = DualityWitness { z, x, y };
                if best.as_ref().is_none_or(|b| key(&w) < key(b)) {
                    best = Some(w);
                }
            }
        }
        Ok(match best {
            Some(w) => SearchOutcome::Found { witness: w, bound: self.u.bound_for(key(&w)) },
            None => SearchOutcome::Inconclusive { bound: self.u.top_bound() },
        })
    }

    /// Largest pairwise disjoint set of universe curves dual to `c`.
    pub fn disjoint_dual_count(&self, c: usize) -> Result<usize> {
        if !self.in_n(c) {
            return Err(Error::Precondition(format!("curve {c} is a {}, not in N", self.types[c])));
        }
        let mut duals = FixedBitSet::with_capacity(self.types.len());
        for w in self.meets[c].ones() {
            if self.is_dual(c, w).is_some() {
                duals.insert(w);
            }
        }
        Ok(max_clique_size(&self.disjoint, &duals))
    }

    /// Enclosing 3-curve for a triple of 2-curves, if the universe has one.
    fn enclosing(&self, t: [usize; 3]) -> Option<usize> {
        let mut zs = self.disjoint[t[0]].clone();
        zs.intersect_with(&self.disjoint[t[1]]);
        zs.intersect_with(&self.disjoint[t[2]]);
        zs.ones().find(|&z| {
            self.types[z].is_k_curve(3)
                && t.iter().all(|&c| self.side(z, c).is_some_and(|s| s.genus == 0))
        })
    }

    /// Triples of pairwise dual 2-curves among the objects that lie on the
    /// genus-0 side of some universe 3-curve.
    pub fn find_triangles(&self) -> Vec<Triangle> {
        let two: Vec<usize> =
            (0..self.u.objects().len()).filter(|&c| self.types[c].is_k_curve(2)).collect();
        self.triangles_among(&two)
    }

    fn triangles_among(&self, two: &[usize]) -> Vec<Triangle> {
        let dual = |a: usize, b: usize| self.is_dual(a, b) == Some(DualKind::TwocurveDual);
        let mut out = Vec::new();
        for (i, &a) in two.iter().enumerate() {
            for (j, &b) in two.iter().enumerate().skip(i + 1) {
                if !dual(a, b) {
                    continue;
                }
                for &c in &two[j + 1..] {
                    if dual(a, c) && dual(b, c) {
                        if let Some(z) = self.enclosing([a, b, c]) {
                            out.push(Triangle { curves: [a, b, c], z });
                        }
                    }
                }
            }
        }
        out
    }

    /// Shared puncture of a dual 2-curve pair of universe curves.
    pub fn shared_puncture(&self, a: usize, b: usize) -> Result<usize> {
        if self.is_dual(a, b) != Some(DualKind::TwocurveDual) {
            return Err(Error::Precondition("shared puncture needs a dual pair of 2-curves".into()));
        }
        shared_of(&self.types[a], &self.types[b])
    }

    /// Maximal sets of object 2-curves that are pairwise disjoint or dual.
    pub fn two_curve_triangulations(&self) -> TwoCurveTriangulations {
        let m = self.types.len();
        let two: Vec<usize> =
            (0..self.u.objects().len()).filter(|&c| self.types[c].is_k_curve(2)).collect();
        let mut within = FixedBitSet::with_capacity(m);
        for &c in &two {
            within.insert(c);
        }
        let compatible: Vec<FixedBitSet> = (0..m)
            .map(|a| {
                let mut s = FixedBitSet::with_capacity(m);
                if within.contains(a) {
                    for &b in &two {
                        if a != b && (self.u.disjoint(a, b) || self.is_dual(a, b).is_some()) {
                            s.insert(b);
                        }
                    }
                }
                s
            })
            .collect();
        let full = self.u.census().triangulation().num_edges();
        let mut out = TwoCurveTriangulations::default();
        if two.is_empty() {
            return out;
        }
        for clique in maximal_cliques(&compatible, &within) {
            if clique.len() == full {
                let triangles = self.triangles_among(&clique).into_iter().map(|t| t.curves).collect();
                out.complete.push(TwoCurveTriangulation { curves: clique, triangles });
            } else {
                out.truncated.push(clique);
            }
        }
        out
    }
}
