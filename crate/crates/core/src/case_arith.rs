//! Small Diophantine, definiteness and Hurwitz computations.
//!
//! Bounds are evaluated in exact rationals; every floor rounds toward
//! negative infinity.

use num_integer::{Integer, Roots};
use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::DivClass;
use crate::SmallRational;

/// A symmetric 2x2 matrix `[[a11, a12], [a12, a22]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SymMatrix2<T> {
    pub a11: T,
    pub a12: T,
    pub a22: T,
}

impl<T> SymMatrix2<T>
where
    T: Copy + Integer + Signed,
{
    pub fn new(a11: T, a12: T, a22: T) -> Self {
        SymMatrix2 { a11, a12, a22 }
    }

    pub fn determinant(&self) -> T {
        self.a11 * self.a22 - self.a12 * self.a12
    }

    pub fn trace(&self) -> T {
        self.a11 + self.a22
    }

    /// Sylvester's criterion.
    pub fn is_negative_definite(&self) -> bool {
        self.a11.is_negative() && self.determinant().is_positive()
    }
}

pub fn is_negative_definite(m: &SymMatrix2<i64>) -> bool {
    m.is_negative_definite()
}

/// Largest `r >= 0` with `r * 25/12 <= (12 chi - K^2) - K^2/3`.
///
/// When the right-hand side is negative no `r >= 0` satisfies the
/// inequality and the result is clamped to 0.
pub fn miyaoka_max_quads(k2: i64, chi: i64) -> u64 {
    let c2 = SmallRational::from_integer(12 * chi - k2);
    let rhs = c2 - SmallRational::new(k2, 3);
    let r = (rhs * SmallRational::new(12, 25)).floor().to_integer();
    r.max(0) as u64
}

/// All `a1 >= a2 >= 1` with `(a1 - a2)^2 + a1 a2 = n`.
///
/// The left side is at least `a1` when `a2 >= 1`, so `a1 <= n` bounds the search.
pub fn solve_gap_product(n: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for a1 in 1..=n.max(0) {
        for a2 in 1..=a1 {
            if (a1 - a2).pow(2) + a1 * a2 == n {
                out.push((a1, a2));
            }
        }
    }
    out.sort_unstable_by(|x, y| y.cmp(x));
    out
}

/// All `a1 >= a2 >= 1` with `a1^2 + a2^2 = n`; the search stops at `a1^2 < n`.
pub fn solve_sum_of_squares(n: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    let mut a1 = 1;
    while a1 * a1 < n {
        let rest = n - a1 * a1;
        let a2 = rest.sqrt();
        if a2 * a2 == rest && a2 <= a1 {
            out.push((a1, a2));
        }
        a1 += 1;
    }
    out.sort_unstable_by(|x, y| y.cmp(x));
    out
}

/// Number of ramification points `r = (2 g_source - 2) - 2 (2 g_target - 2)`
/// of a degree-2 map of smooth curves.
pub fn hurwitz_double_cover_ramification(g_source: u32, g_target: u32) -> Result<i64> {
    let r = (2 * g_source as i64 - 2) - 2 * (2 * g_target as i64 - 2);
    if r < 0 || r.is_odd() {
        return Err(Error::ImpossibleCover {
            g_source,
            g_target,
            ramification: r,
        });
    }
    Ok(r)
}

/// Number of branch points `k` of a `Z2 x Z2` cover `C -> P^1` with simple
/// branching: each branch point has two preimages, so `2 - 2g = 4*2 - 2k`.
pub fn bidouble_curve_branch_points(g_source: u32) -> i64 {
    g_source as i64 + 3
}

/// Whether `(2x)^2 = 4 x^2` is divisible by 8.
pub fn parity_square_mod8(x: DivClass) -> bool {
    (4 * x.square()).rem_euclid(8) == 0
}

/// The two admissible values of `L_1^2` in the `K_S L_1 = 4` case, as given by
/// the Hodge index theorem on `S`. Not derived here.
pub const INDEX_THEOREM_L1_SQUARES: [i64; 2] = [0, 2];

/// Right-hand sides of the two Diophantine equations attached to each value of
/// `L_1^2` in [`INDEX_THEOREM_L1_SQUARES`]: `12` for `L_1^2 = 0` and `3` for `L_1^2 = 2`.
pub const B2_EQUATION_TARGETS: [(i64, i64); 2] = [(0, 12), (2, 3)];

/// Eigenvalue-sign oracle for negative definiteness of a symmetric integer
/// matrix: both roots of `x^2 - tr x + det` are negative, read off from the
/// sign of the discriminant and the root sum and product.
pub fn negative_definite_by_eigenvalues(m: &SymMatrix2<i64>) -> bool {
    let tr = m.trace();
    let det = m.determinant();
    let disc = tr * tr - 4 * det;
    debug_assert!(disc >= 0, "symmetric matrices have real eigenvalues");
    // Largest eigenvalue (tr + sqrt(disc)) / 2 < 0 iff sqrt(disc) < -tr.
    tr < 0 && disc < tr * tr
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{DivClass, Idx};

    #[test]
    fn miyaoka_examples() {
        assert_eq!(miyaoka_max_quads(6, 1), 1);
        assert_eq!(miyaoka_max_quads(3, 1), 3);
        assert_eq!(miyaoka_max_quads(9, 1), 0);
        assert_eq!(miyaoka_max_quads(12, 1), 0);
    }

    #[test]
    fn miyaoka_matches_integer_search() {
        for chi in 1..=6 {
            for k2 in 1..=9 * chi {
                // r*25/12 <= c2 - k2/3  <=>  25 r <= 12 (12 chi - k2) - 4 k2
                let budget = 12 * (12 * chi - k2) - 4 * k2;
                let expected = (0..).take_while(|r| 25 * r <= budget).last().unwrap_or(0);
                assert_eq!(miyaoka_max_quads(k2, chi), expected as u64, "({k2},{chi})");
            }
        }
    }

    #[test]
    fn diophantine_examples() {
        assert_eq!(solve_gap_product(12), vec![(4, 2)]);
        assert_eq!(solve_gap_product(3), vec![(2, 1)]);
        assert_eq!(solve_gap_product(1), vec![(1, 1)]);
        assert_eq!(solve_sum_of_squares(12), vec![]);
        assert_eq!(solve_sum_of_squares(3), vec![]);
        assert_eq!(solve_sum_of_squares(8), vec![(2, 2)]);
        assert_eq!(solve_sum_of_squares(25), vec![(4, 3)]);
    }

    #[test]
    fn diophantine_brute_force() {
        for n in 1..=200i64 {
            let mut gap = Vec::new();
            let mut squares = Vec::new();
            for a1 in 1..=200i64 {
                for a2 in 1..=a1 {
                    if a1 * a1 - a1 * a2 + a2 * a2 == n {
                        gap.push((a1, a2));
                    }
                    if a1 * a1 + a2 * a2 == n {
                        squares.push((a1, a2));
                    }
                }
            }
            gap.reverse();
            squares.reverse();
            assert_eq!(solve_gap_product(n), gap, "gap {n}");
            assert_eq!(solve_sum_of_squares(n), squares, "squares {n}");
        }
    }

    #[test]
    fn definiteness_examples() {
        assert!(is_negative_definite(&SymMatrix2::new(-3, 1, -3)));
        assert!(is_negative_definite(&SymMatrix2::new(-3, 0, -1)));
        assert!(!is_negative_definite(&SymMatrix2::new(-2, 2, -2)));
        assert!(!is_negative_definite(&SymMatrix2::new(-1, 0, 1)));
    }

    #[test]
    fn definiteness_matches_eigenvalues() {
        for a11 in -5..=5 {
            for a12 in -5..=5 {
                for a22 in -5..=5 {
                    let m = SymMatrix2::new(a11, a12, a22);
                    assert_eq!(
                        is_negative_definite(&m),
                        negative_definite_by_eigenvalues(&m),
                        "{m:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn hurwitz() {
        assert_eq!(hurwitz_double_cover_ramification(1, 0).unwrap(), 4);
        assert_eq!(hurwitz_double_cover_ramification(0, 0).unwrap(), 2);
        assert_eq!(hurwitz_double_cover_ramification(2, 0).unwrap(), 6);
        assert!(matches!(
            hurwitz_double_cover_ramification(0, 1),
            Err(Error::ImpossibleCover {
                ramification: -2,
                ..
            })
        ));
        for gs in 0..30u32 {
            for gt in 0..10u32 {
                if let Ok(r) = hurwitz_double_cover_ramification(gs, gt) {
                    let (gs, gt) = (gs as i64, gt as i64);
                    assert_eq!(2 - 2 * gs, 2 * (2 - 2 * gt) - r);
                }
            }
        }
    }

    #[test]
    fn bidouble_branch_points() {
        assert_eq!(bidouble_curve_branch_points(2), 5);
        assert_eq!(bidouble_curve_branch_points(0), 3);
        assert_eq!(bidouble_curve_branch_points(1), 4);
        for g in 0..20u32 {
            let k = bidouble_curve_branch_points(g);
            assert_eq!(2 - 2 * g as i64, 8 - 2 * k);
        }
    }

    #[test]
    fn parity_mod8() {
        assert!(!parity_square_mod8(DivClass::e(Idx::ONE)));
        assert!(parity_square_mod8(DivClass::f(Idx::ONE)));
        let k = DivClass::canonical();
        let r = -5..=5;
        for a in r.clone() {
            for b1 in r.clone() {
                for b2 in r.clone() {
                    for b3 in r.clone() {
                        let x = DivClass::new(a, b1, b2, b3);
                        assert_eq!(parity_square_mod8(x), x.dot(k) % 2 == 0);
                    }
                }
            }
        }
    }

    #[test]
    fn b2_targets_are_consistent() {
        assert_eq!(
            INDEX_THEOREM_L1_SQUARES,
            B2_EQUATION_TARGETS.map(|(s, _)| s)
        );
        assert_eq!(solve_gap_product(B2_EQUATION_TARGETS[0].1), vec![(4, 2)]);
        assert_eq!(solve_gap_product(B2_EQUATION_TARGETS[1].1), vec![(2, 1)]);
    }
}
