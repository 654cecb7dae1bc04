//! Exact linear algebra over the rationals and the integers.

use num_rational::Rational64;
use num_traits::{One, Zero};

pub type Q = Rational64;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

/// Inverse of a square rational matrix, or `None` if singular.
pub fn inverse(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let mut inv: Vec<Vec<Q>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col];
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for j in 0..n {
                    let (x, y) = (a[col][j], inv[col][j]);
                    a[r][j] -= f * x;
                    inv[r][j] -= f * y;
                }
            }
        }
    }
    Some(inv)
}

/// Row vector times matrix.
pub fn row_times(v: &[Q], m: &[Vec<Q>]) -> Vec<Q> {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols)
        .map(|j| v.iter().zip(m).fold(Q::zero(), |acc, (x, row)| acc + *x * row[j]))
        .collect()
}

pub fn to_integers(v: &[Q]) -> Option<Vec<i64>> {
    v.iter()
        .map(|x| x.is_integer().then(|| x.to_integer()))
        .collect()
}

/// Smith normal form `u * a * v = d` with `u`, `v` unimodular.
#[derive(Debug, Clone)]
pub struct Smith {
    pub diag: Vec<i64>,
    pub rank: usize,
    pub u: Vec<Vec<i64>>,
    pub u_inv: Vec<Vec<i64>>,
    pub v: Vec<Vec<i64>>,
    pub v_inv: Vec<Vec<i64>>,
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn smith(a: &[Vec<i64>], cols: usize) -> Smith {
    let m = a.len();
    let n = cols;
    let mut a: Vec<Vec<i64>> = a.to_vec();
    let (mut u, mut u_inv, mut v, mut v_inv) = (identity(m), identity(m), identity(n), identity(n));
    let mut rank = 0;
    'outer: for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if a[i][j] != 0
                        && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break 'outer };
            a.swap(t, pi);
            u.swap(t, pi);
            for row in u_inv.iter_mut() {
                row.swap(t, pi);
            }
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
            v_inv.swap(t, pj);

            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..m {
                let f = a[i][t] / p;
                if f != 0 {
                    for j in 0..n {
                        a[i][j] -= f * a[t][j];
                    }
                    for j in 0..m {
                        u[i][j] -= f * u[t][j];
                    }
                    for row in u_inv.iter_mut() {
                        row[t] += f * row[i];
                    }
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..n {
                let f = a[t][j] / p;
                if f != 0 {
                    for row in a.iter_mut() {
                        row[j] -= f * row[t];
                    }
                    for row in v.iter_mut() {
                        row[j] -= f * row[t];
                    }
                    for k in 0..n {
                        v_inv[t][k] += f * v_inv[j][k];
                    }
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| a[i][j] % p != 0));
            if let Some(i) = bad {
                for j in 0..n {
                    a[t][j] += a[i][j];
                }
                for j in 0..m {
                    u[t][j] += u[i][j];
                }
                for row in u_inv.iter_mut() {
                    row[i] -= row[t];
                }
                continue;
            }
            break;
        }
        if a[t][t] < 0 {
            for j in 0..n {
                a[t][j] = -a[t][j];
            }
            for j in 0..m {
                u[t][j] = -u[t][j];
            }
            for row in u_inv.iter_mut() {
                row[t] = -row[t];
            }
        }
        rank = t + 1;
    }
    let diag = (0..rank).map(|i| a[i][i]).collect();
    Smith { diag, rank, u, u_inv, v, v_inv }
}

/// Integer row vector `x` with `x * a = y`, free coordinates set to zero.
pub fn solve_integer(a: &[Vec<i64>], cols: usize, y: &[i64]) -> Option<Vec<i64>> {
    let s = smith(a, cols);
    // x a = y  <=>  (x u^-1) d = y v
    let yv: Vec<i64> = (0..cols)
        .map(|j| (0..cols).map(|k| y[k] * s.v[k][j]).sum())
        .collect();
    let mut xp = vec![0i64; a.len()];
    for (j, &val) in yv.iter().enumerate() {
        if j < s.rank {
            if val % s.diag[j] != 0 {
                return None;
            }
            xp[j] = val / s.diag[j];
        } else if val != 0 {
            return None;
        }
    }
    Some(
        (0..a.len())
            .map(|j| (0..a.len()).map(|k| xp[k] * s.u[k][j]).sum())
            .collect(),
    )
}

/// Structure of `Z^cols / rowspan(sub)`: torsion orders with generators,
/// then free generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub torsion: Vec<(i64, Vec<i64>)>,
    pub free: Vec<Vec<i64>>,
}

pub fn quotient(sub: &[Vec<i64>], cols: usize) -> Quotient {
    let s = smith(sub, cols);
    let mut torsion = Vec::new();
    let mut free = Vec::new();
    for i in 0..cols {
        let g = s.v_inv[i].clone();
        if i < s.rank {
            if s.diag[i] > 1 {
                torsion.push((s.diag[i], g));
            }
        } else {
            free.push(g);
        }
    }
    Quotient { torsion, free }
}

/// Rank over GF(2) of bit vectors.
pub fn f2_rank(vs: impl IntoIterator<Item = u64>) -> usize {
    f2_basis(vs).len()
}

/// Echelon basis over GF(2) with distinct leading bits, descending.
pub fn f2_basis(vs: impl IntoIterator<Item = u64>) -> Vec<u64> {
    let mut basis: Vec<u64> = Vec::new();
    for v in vs {
        let v = f2_reduce(&basis, v);
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis
}

fn f2_reduce(basis: &[u64], mut v: u64) -> u64 {
    for &b in basis {
        v = v.min(v ^ b);
    }
    v
}

/// Membership test against a basis produced by [`f2_basis`].
pub fn f2_contains(basis: &[u64], v: u64) -> bool {
    f2_reduce(basis, v) == 0
}

/// All elements of the GF(2) span, ascending.
pub fn f2_span(vs: impl IntoIterator<Item = u64>) -> Vec<u64> {
    let basis = f2_basis(vs);
    let mut out = vec![0u64];
    for b in basis {
        let extra: Vec<u64> = out.iter().map(|x| x ^ b).collect();
        out.extend(extra);
    }
    out.sort_unstable();
    out
}

pub fn gcd(a: i64, b: i64) -> i64 {
    num_integer::gcd(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let n = b[0].len();
        a.iter()
            .map(|r| (0..n).map(|j| r.iter().zip(b).map(|(x, br)| x * br[j]).sum()).collect())
            .collect()
    }

    #[test]
    fn smith_factors() {
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = smith(&a, 3);
        assert_eq!(s.diag, vec![2, 6, 12]);
        let d = mul(&mul(&s.u, &a), &s.v);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(d[i][j], if i == j { s.diag[i] } else { 0 });
            }
        }
        assert_eq!(mul(&s.u, &s.u_inv), identity(3));
        assert_eq!(mul(&s.v, &s.v_inv), identity(3));
    }

    #[test]
    fn quotient_of_a1_in_gl2_lattice() {
        // coroot (1,0) in basis rows (1/2,1/2),(-1/2,1/2) has coordinates (1,-1)
        let qt = quotient(&[vec![1, -1]], 2);
        assert!(qt.torsion.is_empty());
        assert_eq!(qt.free.len(), 1);
    }

    #[test]
    fn cyclic_quotient() {
        let qt = quotient(&[vec![2, -1], vec![-1, 2]], 2);
        assert_eq!(qt.torsion.len(), 1);
        assert_eq!(qt.torsion[0].0, 3);
    }

    #[test]
    fn integer_solve() {
        let a = vec![vec![2, 0], vec![0, 3]];
        assert_eq!(solve_integer(&a, 2, &[4, 9]), Some(vec![2, 3]));
        assert_eq!(solve_integer(&a, 2, &[1, 0]), None);
    }

    #[test]
    fn rational_inverse() {
        let m = vec![vec![q(2), q(-1)], vec![q(-1), q(2)]];
        let inv = inverse(&m).unwrap();
        assert_eq!(inv[0][0], Q::new(2, 3));
        assert_eq!(inv[0][1], Q::new(1, 3));
    }

    #[test]
    fn f2_span_sizes() {
        assert_eq!(f2_rank([0b011, 0b110, 0b101]), 2);
        assert_eq!(f2_span([0b011, 0b110]).len(), 4);
        assert!(f2_contains(&f2_basis([0b011, 0b110]), 0b101));
        assert!(!f2_contains(&f2_basis([0b011, 0b110]), 0b001));
    }
}
