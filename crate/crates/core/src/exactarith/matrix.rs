//! Small dense linear algebra over exact scalars.

use crate::scalar::{ExactDiv, FieldScalar};

/// Determinant by fraction-free Bareiss elimination.
pub fn determinant<T: ExactDiv>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    if n == 0 {
        return T::one();
    }
    let mut sign_flip = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return T::zero();
            };
            m.swap(k, swap);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = v / prev.clone();
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign_flip {
        -d
    } else {
        d
    }
}

/// Solve `m * x = rhs` for square nonsingular `m`; `None` when singular.
pub fn solve<T: FieldScalar>(mut m: Vec<Vec<T>>, mut rhs: Vec<T>) -> Option<Vec<T>> {
    let n = m.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = T::one() / m[col][col].clone();
        for j in col..n {
            m[col][j] = m[col][j].clone() * inv.clone();
        }
        rhs[col] = rhs[col].clone() * inv;
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for j in col..n {
                    m[r][j] = m[r][j].clone() - factor.clone() * m[col][j].clone();
                }
                rhs[r] = rhs[r].clone() - factor * rhs[col].clone();
            }
        }
    }
    Some(rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let m = ints(&[&[2, -1, 0], &[1, 3, 4], &[0, 5, -2]]);
        // 2*(3*-2 - 4*5) - (-1)*(1*-2 - 0) + 0 = -52 - 2 = -54
        assert_eq!(determinant(m), BigInt::from(-54));
    }

    #[test]
    fn bareiss_handles_zero_pivot() {
        let m = ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(determinant(m), BigInt::from(-1));
        let singular = ints(&[&[1, 2], &[2, 4]]);
        assert_eq!(determinant(singular), BigInt::from(0));
    }

    #[test]
    fn rational_solve() {
        let q = |v: i64| BigRational::from_integer(BigInt::from(v));
        let m = vec![vec![q(1), q(2)], vec![q(3), q(4)]];
        let x = solve(m, vec![q(5), q(6)]).unwrap();
        assert_eq!(x, vec![q(-4), BigRational::new(BigInt::from(9), BigInt::from(2))]);
    }
}
