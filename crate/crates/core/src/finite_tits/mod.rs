//! The Tits group of the finite Weyl group, modelled as pairs `(eps, w)`
//! standing for `t_eps n_w` with `eps` in `X/2X`.

pub mod ftg;
pub mod oracle;

use std::fmt;

use serde::Serialize;

use crate::root_datum::{RootDatum, SignVector, WeylElt};


pub use ftg::{check_ftg_identities, FtgCheck};
pub use oracle::{signed_matrix, SignedMatrixRep};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TitsFinElt {
    pub eps: SignVector,
    pub w: WeylElt,
}

impl fmt::Display for TitsFinElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t[{:b}] n{:?}", self.eps.0, self.w.labels())
    }
}

/// Serializable view of a finite Tits element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TitsFinView {
    pub eps: Vec<u8>,
    pub w: Vec<usize>,
}

impl TitsFinElt {
    pub fn view(&self, rd: &RootDatum) -> TitsFinView {
        TitsFinView { eps: self.eps.bits(rd.dim()), w: self.w.labels() }
    }
}

/// Sum of `a^vee` over positive `a` with `v(a) < 0` and `uv(a) > 0`; this is
/// the torus factor to the right of `n_{uv}` in `n_u n_v`.
pub fn inversion_coroot_sum(rd: &RootDatum, u: &WeylElt, v: &WeylElt) -> SignVector {
    let mut c = SignVector::ZERO;
    for a in 0..rd.num_pos_roots() {
        let va = v.root(a);
        if !rd.is_positive(va) && rd.is_positive(u.root(va)) {
            c += rd.coroot_sign(a);
        }
    }
    c
}

/// The same factor moved to the left of `n_{uv}`.
pub fn cocycle(rd: &RootDatum, u: &WeylElt, v: &WeylElt, uv: &WeylElt) -> SignVector {
    uv.act_sign(inversion_coroot_sum(rd, u, v))
}

pub fn ft_identity(rd: &RootDatum) -> TitsFinElt {
    TitsFinElt { eps: SignVector::ZERO, w: rd.weyl_identity() }
}

/// The canonical lift `n_w`.
pub fn ft_lift(w: &WeylElt) -> TitsFinElt {
    TitsFinElt { eps: SignVector::ZERO, w: w.clone() }
}

pub fn ft_gen(rd: &RootDatum, i: usize) -> TitsFinElt {
    ft_lift(&rd.weyl_gen(i))
}

pub fn ft_torus(rd: &RootDatum, eps: SignVector) -> TitsFinElt {
    TitsFinElt { eps, w: rd.weyl_identity() }
}

pub fn ft_mul(rd: &RootDatum, x: &TitsFinElt, y: &TitsFinElt) -> TitsFinElt {
    let w = rd.weyl_mul(&x.w, &y.w);
    let eps = x.eps + x.w.act_sign(y.eps) + cocycle(rd, &x.w, &y.w, &w);
    TitsFinElt { eps, w }
}

pub fn ft_inverse(rd: &RootDatum, x: &TitsFinElt) -> TitsFinElt {
    let wi = rd.weyl_inverse(&x.w);
    let c = cocycle(rd, &x.w, &wi, &rd.weyl_identity());
    TitsFinElt { eps: wi.act_sign(x.eps + c), w: wi }
}

pub fn ft_pow(rd: &RootDatum, x: &TitsFinElt, k: usize) -> TitsFinElt {
    (0..k).fold(ft_identity(rd), |acc, _| ft_mul(rd, &acc, x))
}

pub fn ft_product(rd: &RootDatum, xs: &[TitsFinElt]) -> TitsFinElt {
    xs.iter().fold(ft_identity(rd), |acc, x| ft_mul(rd, &acc, x))
}

/// Whether `eps(-1)` is central, i.e. every root pairs evenly with it.
pub fn is_central(rd: &RootDatum, eps: SignVector) -> bool {
    (0..rd.rank()).all(|i| !rd.pair_sign(rd.simple_root(i), eps))
}

/// Every element of the finite Tits group generated by the `n_s` and the
/// torus `X/2X`.
pub fn ft_elements(rd: &RootDatum) -> Vec<TitsFinElt> {
    let signs: Vec<SignVector> = (0..1u64 << rd.dim()).map(SignVector).collect();
    rd.weyl_elements()
        .into_iter()
        .flat_map(|w| signs.iter().map(move |&eps| TitsFinElt { eps, w: w.clone() }))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::{Isogeny, RootType};

    #[test]
    fn generator_squares() {
        for (k, n) in [(RootType::A, 3), (RootType::B, 3), (RootType::G, 2), (RootType::F, 4)] {
            let rd = RootDatum::simple(k, n, Isogeny::Sc).unwrap();
            for i in 0..n {
                let g = ft_gen(&rd, i);
                let sq = ft_mul(&rd, &g, &g);
                assert!(sq.w.is_identity());
                assert_eq!(sq.eps, rd.coroot_sign(i));
            }
        }
    }

    #[test]
    fn reduced_products_have_no_correction() {
        let rd = RootDatum::simple(RootType::C, 3, Isogeny::Sc).unwrap();
        for w in rd.weyl_elements() {
            for i in 0..3 {
                if !rd.is_left_descent(&w, i) {
                    let p = ft_mul(&rd, &ft_gen(&rd, i), &ft_lift(&w));
                    assert_eq!(p.eps, SignVector::ZERO);
                }
            }
        }
    }

    #[test]
    fn inverse_and_associativity() {
        let rd = RootDatum::simple(RootType::A, 2, Isogeny::Sc).unwrap();
        let all = ft_elements(&rd);
        assert_eq!(all.len(), 24);
        for x in &all {
            let xi = ft_inverse(&rd, x);
            assert_eq!(ft_mul(&rd, x, &xi), ft_identity(&rd));
            for y in all.iter().step_by(5) {
                for z in all.iter().step_by(7) {
                    let l = ft_mul(&rd, &ft_mul(&rd, x, y), z);
                    let r = ft_mul(&rd, x, &ft_mul(&rd, y, z));
                    assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn longest_element_square_in_sl3() {
        let rd = RootDatum::simple(RootType::A, 2, Isogeny::Sc).unwrap();
        let w0 = ft_lift(&rd.longest_element(&[0, 1]));
        assert_eq!(ft_mul(&rd, &w0, &w0), ft_identity(&rd));
    }
}
