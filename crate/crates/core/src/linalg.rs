//! Small exact linear-algebra helpers: Gaussian elimination over the
//! rationals (with rational or polynomial right-hand sides) and the leading
//! principal minors used for negative-definiteness certificates.

use crate::exactnum::{Poly2, Rational};

/// Solves `mat * x = rhs` for a square rational matrix, `None` if singular.
pub fn solve_rational(mat: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let cols: Vec<Poly2> = rhs.iter().map(|r| Poly2::constant(r.clone())).collect();
    let sol = solve_poly_rhs(mat, &cols)?;
    sol.iter().map(|p| p.as_constant()).collect()
}

/// Solves `mat * x = rhs` where the right-hand side entries are
/// polynomials; elimination only ever scales them by rationals, so the
/// solution is again polynomial.
pub fn solve_poly_rhs(mat: &[Vec<Rational>], rhs: &[Poly2]) -> Option<Vec<Poly2>> {
    let n = mat.len();
    assert_eq!(rhs.len(), n, "right-hand side length mismatch");
    let mut a: Vec<Vec<Rational>> = mat.to_vec();
    let mut b: Vec<Poly2> = rhs.to_vec();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip();
        for c in col..n {
            a[col][c] = &a[col][c] * &inv;
        }
        b[col] = b[col].scale(&inv);
        for row in 0..n {
            if row == col || a[row][col].is_zero() {
                continue;
            }
            let factor = a[row][col].clone();
            for c in col..n {
                a[row][c] = &a[row][c] - &(&factor * &a[col][c]);
            }
            b[row] = &b[row] - &b[col].scale(&factor);
        }
    }
    Some(b)
}

pub fn determinant(mat: &[Vec<Rational>]) -> Rational {
    let n = mat.len();
    let mut a: Vec<Vec<Rational>> = mat.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let pivot = match (col..n).find(|&r| !a[r][col].is_zero()) {
            Some(p) => p,
            None => return Rational::zero(),
        };
        if pivot != col {
            a.swap(col, pivot);
            det = -&det;
        }
        det = &det * &a[col][col];
        let inv = a[col][col].recip();
        for row in col + 1..n {
            if a[row][col].is_zero() {
                continue;
            }
            let factor = &a[row][col] * &inv;
            for c in col..n {
                a[row][c] = &a[row][c] - &(&factor * &a[col][c]);
            }
        }
    }
    det
}

/// Leading principal minors `det(mat[..k][..k])` for `k = 1..=n`.
pub fn leading_principal_minors(mat: &[Vec<Rational>]) -> Vec<Rational> {
    (1..=mat.len())
        .map(|k| {
            let sub: Vec<Vec<Rational>> =
                mat[..k].iter().map(|row| row[..k].to_vec()).collect();
            determinant(&sub)
        })
        .collect()
}

/// Sylvester criterion: the minors alternate starting negative.
pub fn is_negative_definite(mat: &[Vec<Rational>]) -> bool {
    leading_principal_minors(mat)
        .iter()
        .enumerate()
        .all(|(i, m)| if i % 2 == 0 { m.is_negative() } else { m.is_positive() })
}
