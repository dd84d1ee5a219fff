//! Small dense exact linear algebra.

use super::{Field, IntegralDomain};

/// Determinant by fraction-free (Bareiss) elimination.
///
/// Every intermediate entry is a minor of the input, so the exact divisions
/// by the previous pivot never leave the coefficient domain.
pub fn bareiss_det<R: IntegralDomain>(mut m: Vec<Vec<R>>, zero: &R) -> R {
    let n = m.len();
    if n == 0 {
        return zero.one_like();
    }
    let mut sign = false;
    let mut prev = zero.one_like();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = !sign;
                }
                None => return zero.zero_like(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss step must divide exactly");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}

/// Rank by Gaussian elimination over a field.
pub fn rank<F: Field>(rows: &[Vec<F>]) -> usize {
    let mut m: Vec<Vec<F>> = rows.to_vec();
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for i in 0..nrows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone() * inv.clone();
                for j in c..ncols {
                    m[i][j] = m[i][j].clone() - f.clone() * m[r][j].clone();
                }
            }
        }
        r += 1;
        if r == nrows {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;
    use num_bigint::BigInt;

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let m: Vec<Vec<BigInt>> = [[2, -1, 3], [0, 4, 1], [5, 2, -2]]
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        // 2(4·-2 - 1·2) - (-1)(0·-2 - 1·5) + 3(0·2 - 4·5) = -20 - 5 - 60
        assert_eq!(bareiss_det(m, &BigInt::from(0)), BigInt::from(-85));
    }

    #[test]
    fn bareiss_pivots_past_zeros() {
        let m: Vec<Vec<BigInt>> = [[0, 1], [1, 0]]
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        assert_eq!(bareiss_det(m, &BigInt::from(0)), BigInt::from(-1));
    }

    #[test]
    fn rank_of_dependent_rows() {
        let rows = vec![
            vec![int(1), int(2), int(3)],
            vec![int(2), int(4), int(6)],
            vec![int(0), int(1), int(1)],
        ];
        assert_eq!(rank(&rows), 2);
    }
}
