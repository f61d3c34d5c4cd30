//! Fast intersection numbers from the dual spine.
//!
//! A normal curve is a cyclically reduced loop in the trivalent ribbon graph
//! dual to the triangulation. Two such loops meet minimally in one crossing
//! per pair of lifts to the universal cover whose ends alternate around each
//! other; every such pair shares a maximal common segment, found below by
//! matching a divergence into a triangle with the next divergence out of one.

use super::{NormalCurve, Visit};

/// Geometric intersection number by counting linked lift pairs.
pub fn linking_intersection(a: &NormalCurve, b: &NormalCurve) -> u32 {
    assert!(a.same_surface(b), "curves on different triangulations");
    linked_pairs(a.visits(), b.visits())
}

pub(crate) fn linked_pairs(a: &[Visit], b: &[Visit]) -> u32 {
    let rev: Vec<Visit> =
        b.iter().rev().map(|v| Visit { triangle: v.triangle, enter: v.exit, exit: v.enter }).collect();
    match (count_aligned(a, b), count_aligned(a, &rev)) {
        (Some(x), Some(y)) => x + y,
        // an unbounded common segment means the loops coincide
        _ => 0,
    }
}

/// Linked pairs whose common segment both loops traverse in the same
/// direction. `None` when some common segment never ends.
fn count_aligned(a: &[Visit], b: &[Visit]) -> Option<u32> {
    let (m, n) = (a.len(), b.len());
    let mut count = 0;
    for i in 0..m {
        for j in 0..n {
            let (u, w) = (a[i], b[j]);
            if u.triangle != w.triangle || u.exit != w.exit || u.enter == w.enter {
                continue;
            }
            let mut k = 1;
            let (va, vb) = loop {
                let (va, vb) = (a[(i + k) % m], b[(j + k) % n]);
                if va.exit != vb.exit {
                    break (va, vb);
                }
                k += 1;
                if k > m + n {
                    return None;
                }
            };
            let left_in = w.enter == (u.exit + 1) % 3;
            let left_out = vb.exit == (va.exit + 1) % 3;
            if left_in != left_out {
                count += 1;
            }
        }
    }
    Some(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_loops_do_not_link() {
        let a = [
            Visit { triangle: 0, enter: 0, exit: 1 },
            Visit { triangle: 1, enter: 1, exit: 2 },
        ];
        assert_eq!(linked_pairs(&a, &a), 0);
    }
}
