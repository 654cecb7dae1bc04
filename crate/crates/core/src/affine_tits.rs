//! The Tits group of the Iwahori-Weyl group as triples `(lambda, eps, w)`
//! standing for `n_lambda t_eps n_w`, and the cross-section `m`.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite_tits::{self, TitsFinElt};
use crate::iwahori_weyl::{AffineWeyl, ExtAffElt};
use crate::lattice;
use crate::root_datum::{RootDatum, SignVector, WeylElt};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TitsElt {
    pub lambda: Vec<i64>,
    pub eps: SignVector,
    pub w: WeylElt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TitsView {
    pub lambda: Vec<i64>,
    pub eps: Vec<u8>,
    pub w: Vec<usize>,
}

/// Group law of the triple model; shared by every choice of generators.
pub fn t_mul(rd: &RootDatum, x: &TitsElt, y: &TitsElt) -> TitsElt {
    let w = rd.weyl_mul(&x.w, &y.w);
    let wl = x.w.act(&y.lambda);
    TitsElt {
        lambda: x.lambda.iter().zip(&wl).map(|(a, b)| a + b).collect(),
        eps: x.eps + x.w.act_sign(y.eps) + finite_tits::cocycle(rd, &x.w, &y.w, &w),
        w,
    }
}

pub fn t_inverse(rd: &RootDatum, x: &TitsElt) -> TitsElt {
    let fin = finite_tits::ft_inverse(rd, &TitsFinElt { eps: x.eps, w: x.w.clone() });
    TitsElt {
        lambda: fin.w.act(&x.lambda).iter().map(|v| -v).collect(),
        eps: fin.eps,
        w: fin.w,
    }
}

pub fn t_identity(rd: &RootDatum) -> TitsElt {
    TitsElt { lambda: rd.zero(), eps: SignVector::ZERO, w: rd.weyl_identity() }
}

pub fn t_product<'a>(rd: &RootDatum, xs: impl IntoIterator<Item = &'a TitsElt>) -> TitsElt {
    xs.into_iter().fold(t_identity(rd), |acc, x| t_mul(rd, &acc, x))
}

pub fn t_pow(rd: &RootDatum, x: &TitsElt, k: usize) -> TitsElt {
    (0..k).fold(t_identity(rd), |acc, _| t_mul(rd, &acc, x))
}

pub fn t_project(x: &TitsElt) -> ExtAffElt {
    ExtAffElt { lambda: x.lambda.clone(), w: x.w.clone() }
}

pub fn t_view(rd: &RootDatum, x: &TitsElt) -> TitsView {
    TitsView { lambda: x.lambda.clone(), eps: x.eps.bits(rd.dim()), w: x.w.labels() }
}

pub fn t_from_fin(rd: &RootDatum, x: &TitsFinElt) -> TitsElt {
    TitsElt { lambda: rd.zero(), eps: x.eps, w: x.w.clone() }
}

/// `n_lambda`.
pub fn t_translation(rd: &RootDatum, lambda: &[i64]) -> TitsElt {
    TitsElt { lambda: lambda.to_vec(), eps: SignVector::ZERO, w: rd.weyl_identity() }
}

pub fn t_torus(rd: &RootDatum, eps: SignVector) -> TitsElt {
    TitsElt { lambda: rd.zero(), eps, w: rd.weyl_identity() }
}

/// `(lambda, 0, w)`: translation times the canonical finite lift.
pub fn t_canonical(x: &ExtAffElt) -> TitsElt {
    TitsElt { lambda: x.lambda.clone(), eps: SignVector::ZERO, w: x.w.clone() }
}

/// Alternating product `a b a ...` with `m` factors.
fn alternating(rd: &RootDatum, a: &TitsElt, b: &TitsElt, m: usize) -> TitsElt {
    (0..m).fold(t_identity(rd), |acc, k| t_mul(rd, &acc, if k % 2 == 0 { a } else { b }))
}

#[derive(Debug, Clone, Serialize)]
pub struct SquareCheck {
    pub node: usize,
    pub square: TitsView,
    pub expected_eps: Vec<u8>,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BraidCheck {
    pub nodes: [usize; 2],
    pub order: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoxeterReport {
    pub squares: Vec<SquareCheck>,
    pub braids: Vec<BraidCheck>,
    pub all_hold: bool,
}

/// Squares and braid relations for a family of lifts of the affine simple
/// reflections.
pub fn check_coxeter(aff: &AffineWeyl, lifts: &[TitsElt]) -> CoxeterReport {
    let rd = &aff.rd;
    let mut squares = Vec::new();
    for (s, l) in lifts.iter().enumerate() {
        let sq = t_mul(rd, l, l);
        let expected = rd.coroot_sign(aff.node_root(s).root);
        let holds = sq == t_torus(rd, expected) && t_project(l) == *aff.gen(s);
        squares.push(SquareCheck {
            node: s,
            square: t_view(rd, &sq),
            expected_eps: expected.bits(rd.dim()),
            holds,
        });
    }
    let mut braids = Vec::new();
    for s in 0..lifts.len() {
        for t in s + 1..lifts.len() {
            if let Some(m) = aff.braid_order(s, t) {
                let holds = alternating(rd, &lifts[s], &lifts[t], m)
                    == alternating(rd, &lifts[t], &lifts[s], m);
                braids.push(BraidCheck { nodes: [s, t], order: m, holds });
            }
        }
    }
    let all_hold = squares.iter().all(|c| c.holds) && braids.iter().all(|c| c.holds);
    CoxeterReport { squares, braids, all_hold }
}

#[derive(Debug, Clone)]
pub struct AffineTits {
    pub aff: AffineWeyl,
    lifts: Vec<TitsElt>,
    /// Sign parts passing the relations, per component.
    pub extra_candidates: Vec<Vec<SignVector>>,
    pub extra_choice: Vec<SignVector>,
}

impl AffineTits {
    /// Lifts with the least passing sign part at every extra node.
    pub fn new(aff: AffineWeyl) -> Result<AffineTits> {
        let candidates = extra_candidates(&aff);
        let mut choice = Vec::new();
        for (c, cands) in candidates.iter().enumerate() {
            choice.push(*cands.first().ok_or(Error::NoLift(c))?);
        }
        AffineTits::with_choice(aff, candidates, choice)
    }

    pub fn with_choice(
        aff: AffineWeyl,
        candidates: Vec<Vec<SignVector>>,
        choice: Vec<SignVector>,
    ) -> Result<AffineTits> {
        let lifts = (0..aff.num_nodes())
            .map(|s| node_lift(&aff, s, choice[aff.nodes[s].component]))
            .collect();
        Ok(AffineTits { aff, lifts, extra_candidates: candidates, extra_choice: choice })
    }

    pub fn rd(&self) -> &RootDatum {
        &self.aff.rd
    }

    pub fn lift(&self, s: usize) -> &TitsElt {
        &self.lifts[s]
    }

    pub fn lifts(&self) -> &[TitsElt] {
        &self.lifts
    }

    pub fn mul(&self, x: &TitsElt, y: &TitsElt) -> TitsElt {
        t_mul(self.rd(), x, y)
    }

    pub fn inverse(&self, x: &TitsElt) -> TitsElt {
        t_inverse(self.rd(), x)
    }

    pub fn identity(&self) -> TitsElt {
        t_identity(self.rd())
    }

    pub fn word(&self, word: &[usize]) -> TitsElt {
        t_product(self.rd(), word.iter().map(|&s| &self.lifts[s]))
    }

    /// `m(x)`: lifts along the canonical reduced word, then `(lambda, 0, y)`
    /// for the length-zero part `t_lambda y`.
    pub fn cross_section(&self, x: &ExtAffElt) -> TitsElt {
        let (word, tau) = self.aff.descent_decompose(x);
        self.mul(&self.word(&word), &t_canonical(&tau))
    }

    pub fn verify_coxeter(&self) -> CoxeterReport {
        check_coxeter(&self.aff, &self.lifts)
    }

    /// Products along every reduced word of every element of length at most
    /// `max_len`; returns the number of words checked and the mismatches.
    pub fn check_word_independence(&self, max_len: usize) -> (usize, Vec<ExtAffElt>) {
        let mut words = 0;
        let mut bad = Vec::new();
        for x in self.aff.ball(max_len) {
            let m = self.cross_section(&x);
            for w in self.aff.reduced_words(&x) {
                words += 1;
                if self.word(&w) != m {
                    bad.push(x.clone());
                    break;
                }
            }
        }
        (words, bad)
    }

    /// Generators for balls in the Tits group: node lifts and lifts of the
    /// length-zero generators with their inverses.
    pub fn ball_generators(&self) -> Vec<TitsElt> {
        let mut gens = self.lifts.clone();
        for tau in self.aff.omega_generators() {
            let m = t_canonical(&tau);
            gens.push(self.inverse(&m));
            gens.push(m);
        }
        gens
    }

    pub fn ses_check(&self, radius: usize) -> SesReport {
        let rd = self.rd();
        let gens = self.ball_generators();
        let ball = word_ball(rd, &gens, radius);
        let span = rd.coroot_span_basis();
        let mut kernel: Vec<SignVector> = Vec::new();
        let mut fibers: HashMap<ExtAffElt, usize> = HashMap::new();
        let mut fibers_in_span = true;
        for x in &ball {
            let p = t_project(x);
            if p.lambda.iter().all(|&v| v == 0) && p.w.is_identity() {
                kernel.push(x.eps);
            }
            let diff = self.mul(x, &self.inverse(&self.cross_section(&p)));
            fibers_in_span &= diff.w.is_identity()
                && diff.lambda.iter().all(|&v| v == 0)
                && lattice::f2_contains(&span, diff.eps.0);
            *fibers.entry(p).or_default() += 1;
        }
        kernel.sort();
        let found = lattice::f2_basis(kernel.iter().map(|e| e.0));
        let expected_dim = span.len();
        let kernel_in_span = kernel.iter().all(|e| lattice::f2_contains(&span, e.0));
        let max_fiber = fibers.values().copied().max().unwrap_or(0);
        SesReport {
            radius,
            ball_size: ball.len(),
            kernel_size: kernel.len(),
            kernel_span_dim: found.len(),
            expected_dim,
            kernel_in_span,
            max_fiber,
            fiber_bound: 1usize << expected_dim,
            fibers_in_span,
            holds: kernel_in_span
                && found.len() == expected_dim
                && fibers_in_span
                && max_fiber <= 1 << expected_dim,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SesReport {
    pub radius: usize,
    pub ball_size: usize,
    pub kernel_size: usize,
    pub kernel_span_dim: usize,
    pub expected_dim: usize,
    pub kernel_in_span: bool,
    pub max_fiber: usize,
    pub fiber_bound: usize,
    pub fibers_in_span: bool,
    pub holds: bool,
}

/// Elements reachable by at most `radius` generators.
pub fn word_ball(rd: &RootDatum, gens: &[TitsElt], radius: usize) -> Vec<TitsElt> {
    let id = t_identity(rd);
    let mut seen: HashSet<TitsElt> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut layer = vec![id];
    for _ in 0..radius {
        let mut next = Vec::new();
        for x in &layer {
            for g in gens {
                let y = t_mul(rd, x, g);
                if seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Lift of node `s`; extra nodes use the given sign part.
pub fn node_lift(aff: &AffineWeyl, s: usize, eps: SignVector) -> TitsElt {
    let g = aff.gen(s);
    if aff.is_extra(s) {
        TitsElt { lambda: g.lambda.clone(), eps, w: g.w.clone() }
    } else {
        TitsElt { lambda: g.lambda.clone(), eps: SignVector::ZERO, w: g.w.clone() }
    }
}

/// Sign parts in the span of the component's coroots for which the extra
/// lift squares correctly and satisfies every braid relation with the other
/// lifts of its component, in increasing order.
pub fn extra_candidates(aff: &AffineWeyl) -> Vec<Vec<SignVector>> {
    let rd = &aff.rd;
    (0..rd.components.len())
        .map(|c| {
            let e = aff.node_index(c, 0);
            let others: Vec<usize> = (0..aff.num_nodes())
                .filter(|&t| t != e && aff.nodes[t].component == c)
                .collect();
            rd.component_sign_span(c)
                .into_iter()
                .filter(|&eps| {
                    let l = node_lift(aff, e, eps);
                    let sq_ok = t_mul(rd, &l, &l) == t_torus(rd, rd.coroot_sign(aff.node_root(e).root));
                    sq_ok
                        && others.iter().all(|&t| {
                            let lt = node_lift(aff, t, SignVector::ZERO);
                            match aff.braid_order(e, t) {
                                Some(m) => alternating(rd, &l, &lt, m) == alternating(rd, &lt, &l, m),
                                None => true,
                            }
                        })
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::{Isogeny, RootType};

    fn tits(k: RootType, n: usize, iso: Isogeny) -> AffineTits {
        AffineTits::new(AffineWeyl::new(RootDatum::simple(k, n, iso).unwrap())).unwrap()
    }

    #[test]
    fn a1_both_candidates_pass() {
        let t = tits(RootType::A, 1, Isogeny::Sc);
        assert_eq!(t.extra_candidates[0], vec![SignVector(0), SignVector(1)]);
        let rd = t.rd();
        let prod = t.mul(t.lift(0), t.lift(1));
        assert_eq!(t_project(&prod), t_project(&t_translation(rd, &[1])));
    }

    #[test]
    fn a2_needs_an_odd_pairing() {
        let t = tits(RootType::A, 2, Isogeny::Sc);
        let rd = t.rd();
        let theta = rd.coroot_sign(rd.highest_root(0));
        assert!(!t.extra_candidates[0].contains(&SignVector::ZERO));
        assert!(!t.extra_candidates[0].contains(&theta));
        assert!(t.verify_coxeter().all_hold);
    }

    #[test]
    fn coxeter_relations_hold() {
        for iso in [Isogeny::Sc, Isogeny::Ad] {
            for (k, n) in [(RootType::A, 3), (RootType::B, 3), (RootType::C, 2), (RootType::G, 2), (RootType::F, 4), (RootType::D, 4)] {
                let t = tits(k, n, iso.clone());
                assert!(t.verify_coxeter().all_hold, "{k}{n}");
            }
        }
    }

    #[test]
    fn inverse_and_projection() {
        let t = tits(RootType::C, 2, Isogeny::Sc);
        for x in t.aff.ball(3) {
            let m = t.cross_section(&x);
            assert_eq!(t_project(&m), x);
            assert_eq!(t.mul(&m, &t.inverse(&m)), t.identity());
        }
    }

    #[test]
    fn word_independence_small() {
        let t = tits(RootType::A, 2, Isogeny::Sc);
        let (words, bad) = t.check_word_independence(4);
        assert!(words > 31);
        assert!(bad.is_empty());
    }

    #[test]
    fn ses_small() {
        let t = tits(RootType::A, 2, Isogeny::Sc);
        let r = t.ses_check(4);
        assert!(r.holds, "{r:?}");
        assert_eq!(r.expected_dim, 2);
        let t = tits(RootType::A, 1, Isogeny::Ad);
        let r = t.ses_check(4);
        assert!(r.holds, "{r:?}");
        assert_eq!(r.expected_dim, 0);
    }
}
