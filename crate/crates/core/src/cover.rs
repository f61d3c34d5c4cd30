//! The two-sheeted branched cover S_{1,6} → S_{0,5} and lifts of curves.
//!
//! Sheets are glued along edges twisted by a ℤ/2 value per base edge. A
//! loop's holonomy is the sum of those values over its edge crossings, so
//! the loop around each of the four branch punctures must pick up 1 and
//! the loop around the special puncture 0. The special puncture lifts to
//! the two punctures of S_{1,2}; the others become the branch points.

use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::classify::{cut_along, CurveSide, CurveType};
use crate::curves::{trace_components, Engine, NormalCurve};
use crate::error::{Error, Result};
use crate::surface::{IdealTriangulation, Side, SurfaceKind, Symmetry};

#[derive(Clone, Debug)]
pub struct DoubleCover {
    base: Arc<IdealTriangulation>,
    special: usize,
    cocycle: Vec<u8>,
    triangle_condition: bool,
    total: Arc<IdealTriangulation>,
    deck: Symmetry,
    projection: Vec<usize>,
}

impl DoubleCover {
    /// Builds the cover branched over every puncture except `special`.
    pub fn build(base: Arc<IdealTriangulation>, special: usize) -> Result<Self> {
        let kind = base.kind();
        if kind != SurfaceKind::new(0, 5)? {
            return Err(Error::Precondition(format!("base must be S_{{0,5}}, got {kind}")));
        }
        if special >= base.num_punctures() {
            return Err(Error::Precondition(format!("no puncture {special}")));
        }
        let holonomy: Vec<bool> = (0..base.num_punctures()).map(|v| v != special).collect();
        let (cocycle, triangle_condition) = solve_cocycle(&base, &holonomy)?;
        let total = Arc::new(two_sheets(&base, &cocycle)?);
        let deck = total
            .extend_symmetry(1, 0, false)
            .ok_or_else(|| Error::Invariant("sheet swap is not a symmetry".into()))?;
        let mut projection = vec![usize::MAX; total.num_punctures()];
        for t in 0..total.num_triangles() {
            for c in 0..3 {
                projection[total.corner_puncture(t, c)] = base.corner_puncture(t / 2, c);
            }
        }
        let cv = DoubleCover { base, special, cocycle, triangle_condition, total, deck, projection };
        cv.check()?;
        Ok(cv)
    }

    fn check(&self) -> Result<()> {
        for v in 0..self.base.num_punctures() {
            let h = self.holonomy_of(&self.base.vertex_link(v));
            if h != (v != self.special) as u8 {
                return Err(Error::Holonomy(format!("puncture {v} has holonomy {h}")));
            }
            let over = self.projection.iter().filter(|&&p| p == v).count();
            if over != 2 - h as usize {
                return Err(Error::Holonomy(format!("{over} punctures over puncture {v}")));
            }
        }
        let swap = |t: usize| t ^ 1;
        let deck_ok = self.deck.triangle_map.iter().enumerate().all(|(t, &(u, r))| u == swap(t) && r == 0)
            && self.deck.edge_map.iter().enumerate().all(|(e, &f)| f == e ^ 1)
            && self.deck.edge_sign.iter().all(|&s| s == 1);
        if !deck_ok {
            return Err(Error::Invariant("deck map is not the sheet swap".into()));
        }
        Ok(())
    }

    pub fn base(&self) -> &Arc<IdealTriangulation> {
        &self.base
    }

    pub fn special(&self) -> usize {
        self.special
    }

    pub fn cocycle(&self) -> &[u8] {
        &self.cocycle
    }

    /// Whether the cocycle also sums to zero around every triangle.
    pub fn triangle_condition(&self) -> bool {
        self.triangle_condition
    }

    pub fn total(&self) -> &Arc<IdealTriangulation> {
        &self.total
    }

    pub fn deck(&self) -> &Symmetry {
        &self.deck
    }

    /// Base puncture under each cover puncture.
    pub fn projection(&self) -> &[usize] {
        &self.projection
    }

    /// Cover punctures over the special puncture (the punctures of S_{1,2}).
    pub fn special_lifts(&self) -> Vec<usize> {
        (0..self.projection.len()).filter(|&p| self.projection[p] == self.special).collect()
    }

    pub fn is_branch_puncture(&self, p: usize) -> bool {
        self.projection[p] != self.special
    }

    /// Parity of crossings with odd cocycle value.
    pub fn holonomy_of(&self, weights: &[u32]) -> u8 {
        (weights.iter().zip(&self.cocycle).map(|(&w, &c)| w as u64 * c as u64).sum::<u64>() % 2) as u8
    }

    /// Full preimage of a base weight vector.
    pub fn pull_back(&self, weights: &[u32]) -> Vec<u32> {
        weights.iter().flat_map(|&w| [w, w]).collect()
    }

    pub fn lift_curve(&self, c: &NormalCurve) -> Result<LiftedCurve> {
        if c.triangulation().as_ref() != self.base.as_ref() {
            return Err(Error::MismatchedTriangulation);
        }
        let mut holonomy = 0u32;
        for s in &trace_components(&self.base, c.weights())?.components[0].strands {
            holonomy += self.cocycle[s.0 as usize] as u32;
        }
        let holonomy = (holonomy % 2) as u8;
        let trace = trace_components(&self.total, &self.pull_back(c.weights()))?;
        let components = trace
            .components
            .into_iter()
            .map(|t| NormalCurve::new(self.total.clone(), t.weights))
            .collect::<Result<Vec<_>>>()?;
        let expected = 2 - holonomy as usize;
        if components.len() != expected || self.holonomy_of(c.weights()) != holonomy {
            return Err(Error::Invariant(format!(
                "holonomy {holonomy} but {} lift components",
                components.len()
            )));
        }
        if components.len() == 2 && self.deck.apply(components[0].weights()) != components[1].weights() {
            return Err(Error::Invariant("lift components are not exchanged by the deck map".into()));
        }
        Ok(LiftedCurve { base: c.clone(), holonomy, components })
    }

    /// Type of the lift in S_{1,2}: cut the cover along one lift component
    /// and forget the branch punctures.
    pub fn type_in_s12(&self, l: &LiftedCurve) -> Result<CurveType> {
        let labels = self.special_lifts();
        let mut types = Vec::with_capacity(l.components.len());
        for comp in &l.components {
            let cut = cut_along(comp);
            let sides: Vec<CurveSide> = cut
                .components
                .iter()
                .map(|k| CurveSide {
                    genus: k.genus,
                    punctures: k
                        .punctures
                        .iter()
                        .filter_map(|p| labels.iter().position(|q| q == p))
                        .collect(),
                })
                .collect();
            let t = match sides.as_slice() {
                [_] => CurveType::Nonseparating,
                [a, b] => {
                    for s in [a, b] {
                        if s.genus == 0 && s.punctures.len() < 2 {
                            return Err(Error::Invariant(format!(
                                "lift of {:?} bounds {s:?} after filling",
                                l.base.weights()
                            )));
                        }
                    }
                    let mut sides = [a.clone(), b.clone()];
                    sides.sort_by_key(|s| (s.genus, s.punctures.len(), s.punctures.clone()));
                    let k = (sides[0].genus == 0 && sides[1].genus > 0).then_some(sides[0].punctures.len() as u32);
                    CurveType::Separating { k, sides }
                }
                _ => unreachable!("one curve cuts into at most two pieces"),
            };
            types.push(t);
        }
        if types.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::Invariant("deck-related lifts have different types".into()));
        }
        Ok(types.swap_remove(0))
    }

    /// Whether every lift component of `a` misses every lift component of `b`.
    pub fn lifts_disjoint(&self, a: &LiftedCurve, b: &LiftedCurve, engine: Engine) -> bool {
        a.components.iter().all(|x| b.components.iter().all(|y| x == y || engine.intersection(x, y) == 0))
    }

    pub fn report(&self, l: &LiftedCurve) -> Result<LiftReport> {
        Ok(LiftReport {
            weights: l.base.weights().to_vec(),
            holonomy: l.holonomy,
            components: l.components.len(),
            type_in_s12: self.type_in_s12(l)?.to_string(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct LiftedCurve {
    pub base: NormalCurve,
    pub holonomy: u8,
    /// One or two curves on the cover.
    pub components: Vec<NormalCurve>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftReport {
    pub weights: Vec<u32>,
    pub holonomy: u8,
    pub components: usize,
    pub type_in_s12: String,
}

/// Finds a cochain with the given puncture holonomy, preferring one that
/// also vanishes around each triangle.
fn solve_cocycle(base: &IdealTriangulation, holonomy: &[bool]) -> Result<(Vec<u8>, bool)> {
    let n = base.num_edges();
    let mut rows: Vec<(FixedBitSet, bool)> = (0..base.num_punctures())
        .map(|v| {
            let mut r = FixedBitSet::with_capacity(n);
            for (e, &k) in base.vertex_link(v).iter().enumerate() {
                if k % 2 == 1 {
                    r.insert(e);
                }
            }
            (r, holonomy[v])
        })
        .collect();
    let punctures_only = rows.clone();
    for t in base.triangles() {
        let mut r = FixedBitSet::with_capacity(n);
        for s in t {
            r.toggle(s.edge);
        }
        rows.push((r, false));
    }
    if let Some(x) = solve_gf2(rows, n) {
        return Ok((x, true));
    }
    solve_gf2(punctures_only, n)
        .map(|x| (x, false))
        .ok_or_else(|| Error::Holonomy("prescribed holonomy is not realisable".into()))
}

/// Gaussian elimination over GF(2); free variables are set to 0.
fn solve_gf2(mut rows: Vec<(FixedBitSet, bool)>, n: usize) -> Option<Vec<u8>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| rows[i].0.contains(col)) else {
            continue;
        };
        rows.swap(r, p);
        let (pivot, rhs) = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row.0.contains(col) {
                row.0.symmetric_difference_with(&pivot);
                row.1 ^= rhs;
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|(_, rhs)| *rhs) {
        return None;
    }
    let mut x = vec![0u8; n];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = rows[i].1 as u8;
    }
    Some(x)
}

/// Triangle `2t + s` is sheet `s` over triangle `t`. Edge `2e + s` has its
/// `+` side on sheet `s` and its `-` side on sheet `s + c(e)`.
fn two_sheets(base: &IdealTriangulation, cocycle: &[u8]) -> Result<IdealTriangulation> {
    let mut tris = Vec::with_capacity(2 * base.num_triangles());
    for t in base.triangles() {
        for s in 0..2u8 {
            tris.push(t.map(|side| {
                let sheet = if side.orient > 0 { s } else { s ^ cocycle[side.edge] };
                Side::new(2 * side.edge + sheet as usize, side.orient)
            }));
        }
    }
    let kind = base.kind();
    let branch = kind.punctures - 1;
    let chi = 2 * kind.euler_characteristic();
    let punctures = 2 + branch;
    let genus = (2 - chi - punctures as i64) / 2;
    IdealTriangulation::new(SurfaceKind::new(genus as u32, punctures)?, tris)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::Census;

    fn cover(special: usize) -> DoubleCover {
        let base = Arc::new(IdealTriangulation::standard(SurfaceKind::new(0, 5).unwrap()).unwrap());
        DoubleCover::build(base, special).unwrap()
    }

    #[test]
    fn total_space_is_s16() {
        for sp in 0..5 {
            let cv = cover(sp);
            assert_eq!(cv.total().kind(), SurfaceKind::new(1, 6).unwrap());
            assert!(cv.total().validate().is_empty());
            assert_eq!(cv.special_lifts().len(), 2);
            assert_eq!((0..6).filter(|&p| cv.is_branch_puncture(p)).count(), 4);
        }
    }

    #[test]
    fn deck_is_free_involution() {
        let cv = cover(0);
        let d = cv.deck();
        assert!(d.verify(cv.total()));
        for (t, &(u, _)) in d.triangle_map.iter().enumerate() {
            assert_ne!(t, u);
            assert_eq!(d.triangle_map[u].0, t);
        }
    }

    #[test]
    fn solver_rejects_odd_total() {
        let base = IdealTriangulation::standard(SurfaceKind::new(0, 5).unwrap()).unwrap();
        assert!(solve_cocycle(&base, &[true, false, false, false, false]).is_err());
    }

    #[test]
    fn component_count_follows_holonomy() {
        let cv = cover(2);
        let census = Census::enumerate(cv.base().clone(), 10);
        assert!(!census.is_empty());
        for c in census.curves() {
            let l = cv.lift_curve(c).unwrap();
            assert_eq!(l.components.len(), 2 - l.holonomy as usize);
            let t = cv.type_in_s12(&l).unwrap();
            assert_eq!(t.is_separating(), l.holonomy == 1, "{:?}", c.weights());
        }
    }
}
