//! Topological type of curves by cellular cutting.
//!
//! The normal arcs of a multicurve cut every triangle into corner regions,
//! strips between parallel arcs and one central piece. Regluing the pieces
//! across edge segments gives the cut surface as a cell complex; genus of
//! each component follows from its Euler characteristic and boundary count.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::curves::{corner_count, trace_components, MultiCurveTrace, NormalCurve};
use crate::error::{Error, Result};
use crate::surface::{IdealTriangulation, UnionFind};

/// A component of a cut surface. Punctures are filled in for the genus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CutComponent {
    pub genus: u32,
    pub punctures: Vec<usize>,
    pub boundary: u32,
}

impl CutComponent {
    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary as i64 - self.punctures.len() as i64
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CutResult {
    pub components: Vec<CutComponent>,
    /// Component holding each puncture.
    pub puncture_component: Vec<usize>,
    /// For each cut curve, the components on its two sides.
    pub curve_sides: Vec<[usize; 2]>,
}

/// Cut along several pairwise disjoint curves, tracking where further
/// disjoint curves end up.
#[derive(Clone, Debug)]
pub struct SystemCut {
    pub cut: CutResult,
    /// Component containing each passenger curve.
    pub passengers: Vec<usize>,
}

/// Cuts along `cut` (pairwise disjoint, distinct) and reports the component
/// of each `passenger`, which must be disjoint from everything else.
pub fn cut_system(cut: &[&NormalCurve], passengers: &[&NormalCurve]) -> Result<SystemCut> {
    let first = cut.first().or(passengers.first()).ok_or_else(|| Error::Precondition("no curves".into()))?;
    let tri = first.triangulation().clone();
    let mut distinct: Vec<&NormalCurve> = Vec::new();
    for c in cut.iter().chain(passengers) {
        if !c.same_surface(first) {
            return Err(Error::MismatchedTriangulation);
        }
        if !distinct.iter().any(|d| d.weights() == c.weights()) {
            distinct.push(c);
        }
    }
    let mut total = vec![0u32; tri.num_edges()];
    for c in &distinct {
        for (t, w) in total.iter_mut().zip(c.weights()) {
            *t += w;
        }
    }
    let trace = trace_components(&tri, &total)?;
    // components of the sum are exactly the inputs iff they are disjoint
    let mut by_weights: HashMap<&[u32], usize> = HashMap::new();
    for (i, comp) in trace.components.iter().enumerate() {
        by_weights.insert(&comp.weights, i);
    }
    if trace.components.len() != distinct.len()
        || distinct.iter().any(|c| !by_weights.contains_key(c.weights()))
    {
        return Err(Error::Precondition("curves are not pairwise disjoint".into()));
    }
    let mut is_cut = vec![false; trace.components.len()];
    let cut_ids: Vec<usize> = cut.iter().map(|c| by_weights[c.weights()]).collect();
    for &i in &cut_ids {
        is_cut[i] = true;
    }
    if cut_ids.len() != cut.len() || {
        let mut s = cut_ids.clone();
        s.sort_unstable();
        s.dedup();
        s.len() != cut_ids.len()
    } {
        return Err(Error::Precondition("repeated curve in cut system".into()));
    }
    let cells = cellular_cut(&tri, &total, &trace, &is_cut);
    let curve_sides = cut_ids.iter().map(|&i| cells.sides[i]).collect();
    let passengers = passengers.iter().map(|c| cells.sides[by_weights[c.weights()]][0]).collect();
    Ok(SystemCut {
        cut: CutResult {
            components: cells.components,
            puncture_component: cells.puncture_component,
            curve_sides,
        },
        passengers,
    })
}

struct Cells {
    components: Vec<CutComponent>,
    puncture_component: Vec<usize>,
    /// Per traced component: components on its near and far side.
    sides: Vec<[usize; 2]>,
}

fn cellular_cut(
    tri: &IdealTriangulation,
    weights: &[u32],
    trace: &MultiCurveTrace,
    is_cut: &[bool],
) -> Cells {
    let nt = tri.num_triangles();
    let mut corner_k = vec![[0u32; 3]; nt];
    let mut piece_base = vec![0usize; nt + 1];
    for (t, sides) in tri.triangles().iter().enumerate() {
        let w = sides.map(|s| weights[s.edge] as i64);
        corner_k[t] = [0, 1, 2].map(|c| corner_count(&w, c) as u32);
        piece_base[t + 1] = piece_base[t] + corner_k[t].iter().sum::<u32>() as usize + 1;
    }
    let npieces = piece_base[nt];
    let piece = |t: usize, c: usize, m: u32| -> usize {
        let k = corner_k[t];
        piece_base[t] + k[..c].iter().sum::<u32>() as usize + m as usize
    };
    let central = |t: usize| piece_base[t + 1] - 1;
    let corner_piece = |t: usize, c: usize| if corner_k[t][c] > 0 { piece(t, c, 0) } else { central(t) };
    let side_piece = |t: usize, i: usize, s: u32| -> usize {
        let w = weights[tri.side(t, i).edge];
        let k = corner_k[t][i];
        if s < k {
            piece(t, i, s)
        } else if s == k {
            central(t)
        } else {
            piece(t, (i + 1) % 3, w - s)
        }
    };
    let near_far = |a: usize| -> [usize; 2] {
        let arc = &trace.arcs[a];
        let (t, c) = (arc.triangle as usize, arc.corner as usize);
        let far = if arc.depth + 1 < corner_k[t][c] { piece(t, c, arc.depth + 1) } else { central(t) };
        [piece(t, c, arc.depth), far]
    };
    // pieces on the + and - side of each edge segment
    let seg_pieces = |e: usize, s: u32| -> [usize; 2] {
        tri.edge_sides(e).map(|(t, i)| {
            let side = tri.side(t, i);
            side_piece(t, i, if side.orient > 0 { s } else { weights[e] - s })
        })
    };

    let mut uf = UnionFind::new(npieces);
    for e in 0..tri.num_edges() {
        for s in 0..=weights[e] {
            let [p, q] = seg_pieces(e, s);
            uf.union(p, q);
        }
    }
    for (a, &owner) in trace.arc_component.iter().enumerate() {
        if !is_cut[owner] {
            let [p, q] = near_far(a);
            uf.union(p, q);
        }
    }
    let mut comp_of_root = HashMap::new();
    let mut comp = vec![0usize; npieces];
    for (p, slot) in comp.iter_mut().enumerate() {
        let r = uf.find(p);
        let next = comp_of_root.len();
        *slot = *comp_of_root.entry(r).or_insert(next);
    }
    let nc = comp_of_root.len();
    // Euler characteristic of each filled component, V - E + F
    let mut chi = vec![0i64; nc];
    for &c in &comp {
        chi[c] += 1;
    }
    for e in 0..tri.num_edges() {
        for s in 0..=weights[e] {
            chi[comp[seg_pieces(e, s)[0]]] -= 1;
        }
        for p in 0..weights[e] {
            let before = comp[seg_pieces(e, p)[0]];
            chi[before] += 1;
            if is_cut[trace.strand_owner[e][p as usize]] {
                chi[comp[seg_pieces(e, p + 1)[0]]] += 1;
            }
        }
    }
    for (a, &owner) in trace.arc_component.iter().enumerate() {
        let [p, q] = near_far(a);
        chi[comp[p]] -= 1;
        if is_cut[owner] {
            chi[comp[q]] -= 1;
        }
    }
    let mut puncture_component = vec![usize::MAX; tri.num_punctures()];
    for t in 0..nt {
        for c in 0..3 {
            puncture_component[tri.corner_puncture(t, c)] = comp[corner_piece(t, c)];
        }
    }
    for &c in &puncture_component {
        chi[c] += 1;
    }
    let sides: Vec<[usize; 2]> = trace
        .components
        .iter()
        .map(|tc| near_far(tc.arcs[0]).map(|p| comp[p]))
        .collect();
    let mut boundary = vec![0u32; nc];
    for (i, s) in sides.iter().enumerate() {
        if is_cut[i] {
            boundary[s[0]] += 1;
            boundary[s[1]] += 1;
        }
    }
    let components = (0..nc)
        .map(|c| {
            let twice_genus = 2 - boundary[c] as i64 - chi[c];
            assert!(
                twice_genus >= 0 && twice_genus % 2 == 0,
                "cut component {c} has χ = {} with {} boundary circles",
                chi[c],
                boundary[c]
            );
            CutComponent {
                genus: (twice_genus / 2) as u32,
                punctures: (0..tri.num_punctures()).filter(|&v| puncture_component[v] == c).collect(),
                boundary: boundary[c],
            }
        })
        .collect();
    Cells { components, puncture_component, sides }
}

/// Cuts the surface along one essential curve.
pub fn cut_along(c: &NormalCurve) -> CutResult {
    cut_system(&[c], &[]).expect("a single essential curve is a valid cut system").cut
}

/// One side of a separating curve.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CurveSide {
    pub genus: u32,
    pub punctures: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CurveType {
    Nonseparating,
    /// `k` counts the punctures on the genus-0 side when the other side has
    /// positive genus. Sides are ordered genus-0 side first, then by size.
    Separating { k: Option<u32>, sides: [CurveSide; 2] },
}

impl CurveType {
    pub fn is_separating(&self) -> bool {
        matches!(self, CurveType::Separating { .. })
    }

    pub fn is_k_curve(&self, k: u32) -> bool {
        matches!(self, CurveType::Separating { k: Some(x), .. } if *x == k)
    }

    /// Puncture sets of the two sides, smaller first.
    pub fn puncture_split(&self) -> Option<(usize, usize)> {
        match self {
            CurveType::Nonseparating => None,
            CurveType::Separating { sides, .. } => {
                let (a, b) = (sides[0].punctures.len(), sides[1].punctures.len());
                Some((a.min(b), a.max(b)))
            }
        }
    }

    /// The genus-0 side of a k-curve.
    pub fn genus_zero_side(&self) -> Option<&CurveSide> {
        match self {
            CurveType::Separating { k: Some(_), sides } => Some(&sides[0]),
            _ => None,
        }
    }
}

impl fmt::Display for CurveType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveType::Nonseparating => write!(f, "nonseparating"),
            CurveType::Separating { k: Some(k), .. } => write!(f, "{k}-curve"),
            CurveType::Separating { sides, .. } => {
                write!(f, "separating {:?} | {:?}", sides[0].punctures, sides[1].punctures)
            }
        }
    }
}

pub fn curve_type(c: &NormalCurve) -> CurveType {
    type_from_cut(&cut_along(c))
}

pub(crate) fn type_from_cut(cut: &CutResult) -> CurveType {
    if cut.components.len() == 1 {
        return CurveType::Nonseparating;
    }
    assert_eq!(cut.components.len(), 2, "one curve cuts into at most two pieces");
    let mut sides = [0, 1].map(|i| CurveSide {
        genus: cut.components[i].genus,
        punctures: cut.components[i].punctures.clone(),
    });
    sides.sort_by_key(|s| (s.genus, s.punctures.len(), s.punctures.clone()));
    let k = (sides[0].genus == 0 && sides[1].genus > 0).then_some(sides[0].punctures.len() as u32);
    CurveType::Separating { k, sides }
}

/// Whether `a` and `b` lie on the same side of the separating curve `z`.
/// `a` and `b` need only be disjoint from `z`.
pub fn same_side(z: &NormalCurve, a: &NormalCurve, b: &NormalCurve) -> Result<bool> {
    if a == z || b == z {
        return Err(Error::Precondition("a and b must differ from z".into()));
    }
    if !curve_type(z).is_separating() {
        return Err(Error::Precondition("z is not separating".into()));
    }
    Ok(containing_side(z, a)? == containing_side(z, b)?)
}

/// Side of `z` containing the disjoint curve `a`.
pub fn containing_side(z: &NormalCurve, a: &NormalCurve) -> Result<CurveSide> {
    let sc = cut_system(&[z], &[a])?;
    let c = &sc.cut.components[sc.passengers[0]];
    Ok(CurveSide { genus: c.genus, punctures: c.punctures.clone() })
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
    fn torus_curve_is_nonseparating() {
        let c = census(1, 1, 2);
        for x in c.curves() {
            let cut = cut_along(x);
            assert_eq!(cut.components, vec![CutComponent { genus: 0, punctures: vec![0], boundary: 2 }]);
            assert_eq!(curve_type(x), CurveType::Nonseparating);
        }
    }

    #[test]
    fn euler_characteristic_conserved() {
        for (g, n) in [(1, 2), (1, 3), (0, 5), (0, 4)] {
            let c = census(g, n, 10);
            let chi = SurfaceKind::new(g, n).unwrap().euler_characteristic();
            for x in c.curves() {
                let cut = cut_along(x);
                let total: i64 = cut.components.iter().map(CutComponent::euler_characteristic).sum();
                assert_eq!(total, chi, "{x:?}");
                assert_eq!(cut.components.iter().map(|c| c.boundary).sum::<u32>(), 2);
                let mut ps: Vec<usize> = cut.components.iter().flat_map(|c| c.punctures.clone()).collect();
                ps.sort_unstable();
                assert_eq!(ps, (0..n as usize).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn two_curve_sides() {
        let c = census(1, 3, 12);
        let two: Vec<_> = c.curves().iter().filter(|x| curve_type(x).is_k_curve(2)).collect();
        assert!(!two.is_empty());
        for x in two {
            let mut comps = cut_along(x).components;
            comps.sort_by_key(|c| c.genus);
            assert_eq!((comps[0].genus, comps[0].punctures.len(), comps[0].boundary), (0, 2, 1));
            assert_eq!((comps[1].genus, comps[1].punctures.len(), comps[1].boundary), (1, 1, 1));
        }
    }

    #[test]
    fn same_side_splits_curves_disjoint_from_a_two_curve() {
        let c = census(1, 3, 14);
        let z = c.curves().iter().find(|x| curve_type(x).is_k_curve(2)).unwrap();
        let away: Vec<_> = c
            .curves()
            .iter()
            .filter(|x| *x != z && cut_system(&[z], &[x]).is_ok())
            .collect();
        let mut classes: Vec<CurveSide> = away.iter().map(|x| containing_side(z, x).unwrap()).collect();
        classes.sort_by_key(|s| s.punctures.clone());
        classes.dedup();
        // the genus-0 side of a 2-curve holds no essential curve
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].genus, 1);
        for a in &away {
            for b in &away {
                assert!(same_side(z, a, b).unwrap());
            }
        }
        let ns = c.curves().iter().find(|x| !curve_type(x).is_separating()).unwrap();
        assert!(same_side(ns, away[0], away[0]).is_err());
    }

    #[test]
    fn intersecting_curves_rejected_as_system() {
        let c = census(1, 1, 2);
        let r = cut_system(&[c.get(0), c.get(1)], &[]);
        assert!(matches!(r, Err(Error::Precondition(_))));
    }
}
