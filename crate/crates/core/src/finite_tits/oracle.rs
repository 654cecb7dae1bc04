//! Signed permutation matrices in the standard representation of a
//! classical group, used as an independent check on the cocycle.
//!
//! Type A uses the standard representation of `SL_{n+1}`, type B that of
//! `SO_{2n+1}`, type C that of `Sp_{2n}` and type D that of `SO_{2n}`. The
//! datum's lattice must pair integrally with every weight, and the torus
//! `X/2X` must act faithfully.

use crate::error::{Error, Result};
use crate::lattice::{self, Q};
use crate::root_datum::{RootDatum, RootType, SignVector};

use super::TitsFinElt;

/// `M e_j = sign[j] e_{img[j]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedPerm {
    pub img: Vec<usize>,
    pub sign: Vec<i8>,
}

impl SignedPerm {
    pub fn identity(d: usize) -> SignedPerm {
        SignedPerm { img: (0..d).collect(), sign: vec![1; d] }
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &SignedPerm) -> SignedPerm {
        let img = other.img.iter().map(|&j| self.img[j]).collect();
        let sign = other
            .img
            .iter()
            .zip(&other.sign)
            .map(|(&j, &s)| s * self.sign[j])
            .collect();
        SignedPerm { img, sign }
    }

    pub fn dense(&self) -> Vec<Vec<i64>> {
        let d = self.img.len();
        let mut m = vec![vec![0i64; d]; d];
        for j in 0..d {
            m[self.img[j]][j] = i64::from(self.sign[j]);
        }
        m
    }
}

#[derive(Debug, Clone)]
pub struct SignedMatrixRep {
    /// Weights in epsilon coordinates.
    weights: Vec<Vec<i64>>,
    /// Pairing of each weight with each lattice basis vector.
    pairing: Vec<Vec<i64>>,
    gens: Vec<SignedPerm>,
}

impl SignedMatrixRep {
    pub fn new(rd: &RootDatum) -> Result<SignedMatrixRep> {
        if rd.components.len() != 1 || rd.central_rank != 0 {
            return Err(Error::Unsupported("signed matrices need an almost simple datum".into()));
        }
        let c = rd.components[0];
        let n = c.rank;
        let (m, coroots, weights) = match c.kind {
            RootType::A => {
                let coroots: Vec<Vec<i64>> = (0..n).map(|i| unit_diff(n + 1, i, i + 1)).collect();
                let weights = (0..=n).map(|k| unit(n + 1, k, 1)).collect();
                (n + 1, coroots, weights)
            }
            RootType::B | RootType::C | RootType::D => {
                let mut coroots: Vec<Vec<i64>> = (0..n - 1).map(|i| unit_diff(n, i, i + 1)).collect();
                coroots.push(match c.kind {
                    RootType::B => unit(n, n - 1, 2),
                    RootType::C => unit(n, n - 1, 1),
                    _ => {
                        let mut v = unit(n, n - 1, 1);
                        v[n - 2] = 1;
                        v
                    }
                });
                let mut weights: Vec<Vec<i64>> = (0..n).map(|k| unit(n, k, 1)).collect();
                if c.kind == RootType::B {
                    weights.push(vec![0; n]);
                }
                weights.extend((0..n).rev().map(|k| unit(n, k, -1)));
                (n, coroots, weights)
            }
            _ => {
                return Err(Error::Unsupported(format!(
                    "no signed matrix model for type {}",
                    c.kind
                )))
            }
        };
        let _ = m;
        let dot = |a: &[i64], b: &[i64]| -> i64 { a.iter().zip(b).map(|(x, y)| x * y).sum() };

        let mut pairing = Vec::new();
        for mu in &weights {
            let on_simple: Vec<i64> = coroots.iter().map(|cv| dot(mu, cv)).collect();
            let mut row = Vec::new();
            for b in rd.basis() {
                let s = b
                    .iter()
                    .zip(&on_simple)
                    .fold(Q::from_integer(0), |acc, (x, p)| acc + *x * Q::from_integer(*p));
                if !s.is_integer() {
                    return Err(Error::Unsupported(
                        "lattice does not act on the standard representation".into(),
                    ));
                }
                row.push(s.to_integer());
            }
            pairing.push(row);
        }
        // faithfulness of X/2X
        let dim = rd.dim();
        let cols = (0..dim).map(|k| {
            pairing
                .iter()
                .enumerate()
                .filter(|(_, row)| row[k].rem_euclid(2) == 1)
                .fold(0u64, |acc, (j, _)| acc | 1 << j)
        });
        if lattice::f2_rank(cols) != dim {
            return Err(Error::Unsupported("torus X/2X does not act faithfully".into()));
        }

        let find = |w: &[i64]| weights.iter().position(|x| x == w).unwrap();
        let gens = coroots
            .iter()
            .map(|cv| {
                let d = weights.len();
                let mut g = SignedPerm::identity(d);
                for (j, mu) in weights.iter().enumerate() {
                    let p = dot(mu, cv);
                    // alpha in epsilon coordinates, from alpha^vee
                    let alpha: Vec<i64> = if dot(cv, cv) == 4 {
                        cv.iter().map(|x| x / 2).collect()
                    } else if dot(cv, cv) == 1 {
                        cv.iter().map(|x| x * 2).collect()
                    } else {
                        cv.clone()
                    };
                    match p {
                        1 => {
                            let low: Vec<i64> = mu.iter().zip(&alpha).map(|(a, b)| a - b).collect();
                            let k = find(&low);
                            g.img[j] = k;
                            g.sign[j] = -1;
                            g.img[k] = j;
                            g.sign[k] = 1;
                        }
                        2 => {
                            let low: Vec<i64> = mu.iter().map(|a| -a).collect();
                            let k = find(&low);
                            g.img[j] = k;
                            g.img[k] = j;
                            let z = find(&vec![0; mu.len()]);
                            g.sign[z] = -1;
                        }
                        _ => {}
                    }
                }
                g
            })
            .collect();
        Ok(SignedMatrixRep { weights, pairing, gens })
    }

    pub fn degree(&self) -> usize {
        self.weights.len()
    }

    pub fn torus(&self, eps: SignVector) -> SignedPerm {
        let d = self.degree();
        let sign = (0..d)
            .map(|j| {
                let odd = self.pairing[j]
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| eps.bit(*k))
                    .map(|(_, p)| p.rem_euclid(2))
                    .sum::<i64>()
                    % 2;
                if odd == 1 {
                    -1
                } else {
                    1
                }
            })
            .collect();
        SignedPerm { img: (0..d).collect(), sign }
    }

    pub fn generator(&self, i: usize) -> &SignedPerm {
        &self.gens[i]
    }

    /// `D(eps)` times the product of generators along the canonical word.
    pub fn element(&self, x: &TitsFinElt) -> SignedPerm {
        x.w.word()
            .iter()
            .fold(self.torus(x.eps), |acc, &i| acc.mul(&self.gens[i as usize]))
    }
}

/// Dense integer matrix of `t_eps n_w`.
pub fn signed_matrix(rd: &RootDatum, x: &TitsFinElt) -> Result<Vec<Vec<i64>>> {
    Ok(SignedMatrixRep::new(rd)?.element(x).dense())
}

fn unit(n: usize, k: usize, v: i64) -> Vec<i64> {
    let mut e = vec![0; n];
    e[k] = v;
    e
}

fn unit_diff(n: usize, i: usize, j: usize) -> Vec<i64> {
    let mut e = vec![0; n];
    e[i] = 1;
    e[j] = -1;
    e
}

/// Basis rows of the epsilon lattice `Z^n` for types B, C, D in ambient
/// coordinates; the cocharacter lattice of the orthogonal or symplectic group.
pub fn epsilon_lattice_rows(kind: RootType, n: usize) -> Result<Vec<Vec<Q>>> {
    let coroots: Vec<Vec<i64>> = match kind {
        RootType::B | RootType::C | RootType::D => {
            let mut c: Vec<Vec<i64>> = (0..n - 1).map(|i| unit_diff(n, i, i + 1)).collect();
            c.push(match kind {
                RootType::B => unit(n, n - 1, 2),
                RootType::C => unit(n, n - 1, 1),
                _ => {
                    let mut v = unit(n, n - 1, 1);
                    v[n - 2] = 1;
                    v
                }
            });
            c
        }
        _ => return Err(Error::Unsupported(format!("no epsilon lattice for type {kind}"))),
    };
    let m: Vec<Vec<Q>> = coroots
        .iter()
        .map(|r| r.iter().map(|&x| Q::from_integer(x)).collect())
        .collect();
    let inv = lattice::inverse(&m).unwrap();
    // e_k = sum_i inv[k][i] alpha_i^vee
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_tits::{ft_gen, ft_mul};
    use crate::root_datum::{cartan::braid_order, Isogeny};

    fn check_relations(rd: &RootDatum) {
        let rep = SignedMatrixRep::new(rd).unwrap();
        let n = rd.rank();
        for i in 0..n {
            let g = rep.generator(i);
            assert_eq!(g.mul(g), rep.torus(rd.coroot_sign(i)), "square of n_{i}");
            for j in 0..n {
                if i == j {
                    continue;
                }
                let m = braid_order(rd.cartan[i][j] * rd.cartan[j][i]).unwrap();
                let (a, b) = (rep.generator(i), rep.generator(j));
                let mut l = SignedPerm::identity(rep.degree());
                let mut r = SignedPerm::identity(rep.degree());
                for k in 0..m {
                    l = l.mul(if k % 2 == 0 { a } else { b });
                    r = r.mul(if k % 2 == 0 { b } else { a });
                }
                assert_eq!(l, r, "braid {i} {j}");
            }
            for k in 0..rd.dim() {
                let e = SignVector(1 << k);
                let inv = g.mul(g).mul(g);
                let conj = g.mul(&rep.torus(e)).mul(&inv);
                assert_eq!(conj, rep.torus(rd.weyl_gen(i).act_sign(e)));
            }
        }
    }

    #[test]
    fn generators_satisfy_tits_relations() {
        for n in 1..=4 {
            check_relations(&RootDatum::simple(RootType::A, n, Isogeny::Sc).unwrap());
        }
        check_relations(&RootDatum::simple(RootType::B, 3, Isogeny::Ad).unwrap());
        check_relations(&RootDatum::simple(RootType::C, 3, Isogeny::Sc).unwrap());
        let rows = epsilon_lattice_rows(RootType::D, 4).unwrap();
        check_relations(&RootDatum::simple(RootType::D, 4, Isogeny::Rows(rows)).unwrap());
    }

    #[test]
    fn sl2_generator() {
        let rd = RootDatum::simple(RootType::A, 1, Isogeny::Sc).unwrap();
        let m = signed_matrix(&rd, &ft_gen(&rd, 0)).unwrap();
        assert_eq!(m, vec![vec![0, 1], vec![-1, 0]]);
    }

    #[test]
    fn sl3_generators() {
        let rd = RootDatum::simple(RootType::A, 2, Isogeny::Sc).unwrap();
        let m1 = signed_matrix(&rd, &ft_gen(&rd, 0)).unwrap();
        let m2 = signed_matrix(&rd, &ft_gen(&rd, 1)).unwrap();
        assert_eq!(m1, vec![vec![0, 1, 0], vec![-1, 0, 0], vec![0, 0, 1]]);
        assert_eq!(m2, vec![vec![1, 0, 0], vec![0, 0, 1], vec![0, -1, 0]]);
        let w0 = ft_mul(&rd, &ft_mul(&rd, &ft_gen(&rd, 0), &ft_gen(&rd, 1)), &ft_gen(&rd, 0));
        let m = signed_matrix(&rd, &w0).unwrap();
        assert_eq!(m, vec![vec![0, 0, 1], vec![0, -1, 0], vec![1, 0, 0]]);
    }

    #[test]
    fn unsupported_cases() {
        let rd = RootDatum::simple(RootType::A, 2, Isogeny::Ad).unwrap();
        assert!(SignedMatrixRep::new(&rd).is_err());
        let rd = RootDatum::simple(RootType::G, 2, Isogeny::Sc).unwrap();
        assert!(SignedMatrixRep::new(&rd).is_err());
        // spin groups are not faithful on the vector representation
        let rd = RootDatum::simple(RootType::B, 3, Isogeny::Sc).unwrap();
        assert!(SignedMatrixRep::new(&rd).is_err());
    }
}
