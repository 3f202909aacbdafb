//! Exact Gaussian elimination over [`Rat`].

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::exactpoly::Poly;
use crate::rat::Rat;

/// Row-reduces in place and returns the rank.
fn eliminate(rows: &mut [Vec<Rat>], det: &mut Rat) -> usize {
    let height = rows.len();
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..height).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        if pivot != rank {
            rows.swap(pivot, rank);
            *det = -det.clone();
        }
        let inv = Rat::one() / &rows[rank][col];
        *det *= &rows[rank][col];
        for r in rank + 1..height {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] * &inv;
            let (upper, lower) = rows.split_at_mut(r);
            for (dst, src) in lower[0][col..].iter_mut().zip(&upper[rank][col..]) {
                *dst -= &factor * src;
            }
        }
        rank += 1;
    }
    rank
}

pub fn rank(mut rows: Vec<Vec<Rat>>) -> usize {
    let mut det = Rat::one();
    eliminate(&mut rows, &mut det)
}

/// Determinant of a square matrix; zero when singular.
pub fn determinant(mut rows: Vec<Vec<Rat>>) -> Rat {
    assert!(rows.iter().all(|r| r.len() == rows.len()), "matrix must be square");
    let n = rows.len();
    let mut det = Rat::one();
    if eliminate(&mut rows, &mut det) < n {
        return Rat::zero();
    }
    det
}

/// Rank of the coefficient vectors of `polys`.
pub fn poly_rank(polys: &[Poly]) -> usize {
    let width = polys.iter().filter_map(Poly::degree).max().map_or(0, |d| d + 1);
    rank(polys.iter().map(|p| (0..width).map(|i| p.coeff(i)).collect()).collect())
}

pub fn linearly_independent(polys: &[Poly]) -> bool {
    poly_rank(polys) == polys.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};
    use alloc::vec;

    #[test]
    fn small_determinants() {
        assert_eq!(determinant(vec![vec![rat(1), rat(1)], vec![rat(0), rat(1)]]), rat(1));
        assert_eq!(determinant(vec![vec![rat(0), rat(1)], vec![rat(1), rat(0)]]), rat(-1));
        assert_eq!(determinant(vec![vec![rat(2), rat(4)], vec![rat(1), rat(2)]]), rat(0));
        // 2x2 Hilbert matrix: 1*1/3 - 1/4
        let h = vec![vec![rat(1), ratio(1, 2)], vec![ratio(1, 2), ratio(1, 3)]];
        assert_eq!(determinant(h), ratio(1, 12));
        assert_eq!(determinant(Vec::new()), rat(1));
    }

    #[test]
    fn ranks() {
        assert!(linearly_independent(&[Poly::one(), Poly::x()]));
        assert!(!linearly_independent(&[Poly::x(), Poly::from_ints(&[0, 2])]));
        assert!(!linearly_independent(&[Poly::zero()]));
        assert_eq!(poly_rank(&[Poly::from_ints(&[1, 1]), Poly::one(), Poly::x()]), 2);
    }
}
