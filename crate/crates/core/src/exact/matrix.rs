//! Small dense rational matrices: products, powers and exact nullspaces.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::Rational;

/// Row-major dense matrix.
pub type Matrix = Vec<Vec<Rational>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect()
}

/// Product of an `r × k` and a `k × c` matrix.
pub fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .filter(|(x, _)| !x.is_zero())
                        .fold(Rational::zero(), |acc, (x, brow)| acc + x * &brow[j])
                })
                .collect()
        })
        .collect()
}

pub fn mul_vec(a: &Matrix, v: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(Rational::zero(), |acc, (x, y)| acc + x * y))
        .collect()
}

/// `m^e` by repeated squaring; `m` must be square.
pub fn pow(m: &Matrix, mut e: u64) -> Matrix {
    let mut result = identity(m.len());
    let mut base = m.clone();
    while e > 0 {
        if e & 1 == 1 {
            result = mul(&result, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(&base, &base);
        }
    }
    result
}

/// Basis of the right nullspace `{v : A v = 0}` of a matrix with `cols`
/// columns, from the reduced row echelon form. Each basis vector has a 1 in
/// its own free column and 0 in the other free columns.
pub fn nullspace(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut a: Matrix = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let factor = a[i][c].clone();
                for j in c..cols {
                    let delta = &factor * &a[r][j];
                    a[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn power_of_all_ones_upper_triangle() {
        let t = m(&[&[1, 1, 1], &[0, 1, 1], &[0, 0, 1]]);
        assert_eq!(pow(&t, 0), identity(3));
        assert_eq!(pow(&t, 2), m(&[&[1, 2, 3], &[0, 1, 2], &[0, 0, 1]]));
        assert_eq!(pow(&t, 5), mul(&pow(&t, 2), &pow(&t, 3)));
    }

    #[test]
    fn nullspace_rank_deficient() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let basis = nullspace(&a, 3);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(mul_vec(&a, v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn nullspace_full_rank_is_empty() {
        let a = m(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert!(nullspace(&a, 2).is_empty());
    }

    #[test]
    fn nullspace_single_vector() {
        let a = m(&[&[1, 1, 0], &[0, 1, 1]]);
        let basis = nullspace(&a, 3);
        assert_eq!(basis, vec![vec![int(1), int(-1), int(1)]]);
    }
}
