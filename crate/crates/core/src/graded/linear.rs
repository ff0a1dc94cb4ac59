//! Exact Gaussian elimination over `Q` on sparse coordinate vectors.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Finds `c` with `Σ c_i · columns[i] = target`, free variables set to zero.
pub(crate) fn solve(columns: &[Vec<(String, BigRational)>], target: &[(String, BigRational)]) -> Option<Vec<BigRational>> {
    let mut keys: BTreeMap<&str, usize> = BTreeMap::new();
    for (k, _) in columns.iter().flatten().chain(target) {
        let next = keys.len();
        keys.entry(k.as_str()).or_insert(next);
    }
    let (rows, cols) = (keys.len(), columns.len());
    // augmented matrix, one row per coordinate key
    let mut m = vec![vec![BigRational::zero(); cols + 1]; rows];
    for (j, col) in columns.iter().enumerate() {
        for (k, v) in col {
            m[keys[k.as_str()]][j] += v;
        }
    }
    for (k, v) in target {
        m[keys[k.as_str()]][cols] += v;
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = BigRational::one() / &m[r][c];
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..=cols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut sol = vec![BigRational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = m[i][cols].clone();
    }
    Some(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn small_systems() {
        let cols = vec![vec![("a".into(), q(1)), ("b".into(), q(1))], vec![("b".into(), q(2))]];
        let sol = solve(&cols, &[("a".into(), q(3)), ("b".into(), q(7))]).unwrap();
        assert_eq!(sol, vec![q(3), q(2)]);
        assert!(solve(&cols, &[("c".into(), q(1))]).is_none());
        assert_eq!(solve(&[], &[]).unwrap(), Vec::<BigRational>::new());
    }
}
