//! Canonical sets of closed intervals on one carrier line.
//!
//! A maximal segment corresponds to a closed interval of positive length in
//! the line's parameter. A canonical interval set is sorted, and no two
//! members overlap or touch end to end (touching intervals merge: maximality).
//! Intersections that collapse to a single parameter value are dropped,
//! because a zero-length piece is not a line. Differences keep their cut
//! points: segments are closed, so `[0,3] - [1,2]` is `[0,1]` and `[2,3]`.

use crate::scalar::Scalar;

/// Closed interval `[lo, hi]` with `lo < hi`.
pub(crate) type Iv = (Scalar, Scalar);

/// Merges two canonical sets into the canonical set of their union.
pub(crate) fn union(a: &[Iv], b: &[Iv]) -> Vec<Iv> {
    let mut all: Vec<Iv> = a.iter().chain(b.iter()).cloned().collect();
    all.sort();
    let mut out: Vec<Iv> = Vec::with_capacity(all.len());
    for (lo, hi) in all {
        match out.last_mut() {
            // Overlap or end-to-end touch: extend the current interval.
            Some((_, cur_hi)) if lo <= *cur_hi => {
                if hi > *cur_hi {
                    *cur_hi = hi;
                }
            }
            _ => out.push((lo, hi)),
        }
    }
    out
}

/// Intersects two canonical sets, dropping zero-length leftovers.
pub(crate) fn intersection(a: &[Iv], b: &[Iv]) -> Vec<Iv> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let lo = a[i].0.clone().max(b[j].0.clone());
        let hi = a[i].1.clone().min(b[j].1.clone());
        if lo < hi {
            out.push((lo, hi));
        }
        // Advance whichever interval ends first.
        if a[i].1 <= b[j].1 {
            i += 1;
        } else {
            j += 1;
        }
    }
    out
}

/// Subtracts `b` from `a`; the remainder keeps its cut endpoints.
pub(crate) fn difference(a: &[Iv], b: &[Iv]) -> Vec<Iv> {
    let mut out = Vec::new();
    for (lo, hi) in a {
        let mut cur = lo.clone();
        for (blo, bhi) in b {
            if bhi <= &cur {
                continue;
            }
            if blo >= hi {
                break;
            }
            if *blo > cur {
                out.push((cur.clone(), blo.clone().min(hi.clone())));
            }
            cur = cur.max(bhi.clone());
            if cur >= *hi {
                break;
            }
        }
        if cur < *hi {
            out.push((cur, hi.clone()));
        }
    }
    out
}

/// True when `[lo, hi]` is embedded in a single member of the canonical set.
///
/// Members of a canonical set never touch, so an interval cannot be
/// embedded across two of them.
pub(crate) fn contains(set: &[Iv], lo: &Scalar, hi: &Scalar) -> bool {
    set.iter().any(|(l, h)| l <= lo && hi <= h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: i64, hi: i64) -> Iv {
        (Scalar::from(lo), Scalar::from(hi))
    }

    #[test]
    fn union_merges_overlap_and_touch() {
        assert_eq!(union(&[iv(0, 2)], &[iv(1, 4)]), vec![iv(0, 4)]);
        assert_eq!(union(&[iv(0, 1)], &[iv(1, 2)]), vec![iv(0, 2)]);
        assert_eq!(union(&[iv(0, 1)], &[iv(2, 3)]), vec![iv(0, 1), iv(2, 3)]);
        assert_eq!(union(&[iv(0, 10)], &[iv(2, 3)]), vec![iv(0, 10)]);
    }

    #[test]
    fn intersection_drops_degenerate_touch() {
        assert_eq!(intersection(&[iv(0, 2)], &[iv(1, 3)]), vec![iv(1, 2)]);
        assert_eq!(intersection(&[iv(0, 1)], &[iv(1, 2)]), vec![]);
        assert_eq!(
            intersection(&[iv(0, 2), iv(3, 6)], &[iv(1, 4)]),
            vec![iv(1, 2), iv(3, 4)]
        );
    }

    #[test]
    fn difference_keeps_cut_points() {
        assert_eq!(difference(&[iv(0, 3)], &[iv(1, 2)]), vec![iv(0, 1), iv(2, 3)]);
        assert_eq!(difference(&[iv(0, 3)], &[iv(0, 3)]), vec![]);
        assert_eq!(difference(&[iv(0, 2)], &[iv(1, 5)]), vec![iv(0, 1)]);
        assert_eq!(difference(&[iv(0, 2)], &[iv(3, 5)]), vec![iv(0, 2)]);
        // Removing a piece that only touches removes nothing.
        assert_eq!(difference(&[iv(0, 2)], &[iv(2, 5)]), vec![iv(0, 2)]);
    }

    #[test]
    fn difference_across_many_holes() {
        let a = [iv(0, 10)];
        let b = [iv(1, 2), iv(4, 5), iv(7, 8)];
        assert_eq!(
            difference(&a, &b),
            vec![iv(0, 1), iv(2, 4), iv(5, 7), iv(8, 10)]
        );
    }

    #[test]
    fn containment_is_single_member() {
        let set = [iv(0, 2), iv(3, 6)];
        assert!(contains(&set, &Scalar::from(1), &Scalar::from(2)));
        assert!(contains(&set, &Scalar::from(3), &Scalar::from(6)));
        assert!(!contains(&set, &Scalar::from(1), &Scalar::from(4)));
    }
}
