//! The Iwahori-Weyl group `X_* x| W_0`, its affine roots and simple
//! reflections, lengths, and the length-zero subgroup.
//!
//! `(lambda, w)` stands for `t_lambda w`. The affine root `(b, k)` is the
//! function `x -> <b, x> + k`; the extra node of each component is
//! `(-theta, 1)`. Nodes are numbered component by component, the extra node
//! first and then the Bourbaki labels.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite_tits::ftg::y_minuscule;
use crate::lattice::{self, Quotient};
use crate::root_datum::{cartan::braid_order, RootDatum, WeylElt};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtAffElt {
    pub lambda: Vec<i64>,
    pub w: WeylElt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineRoot {
    /// Index of the gradient among all roots.
    pub root: usize,
    pub k: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AffineNode {
    pub component: usize,
    /// 0 for the extra node, otherwise the Bourbaki label.
    pub label: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ExtAffView {
    pub lambda: Vec<i64>,
    pub w: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct AffineWeyl {
    pub rd: RootDatum,
    pub nodes: Vec<AffineNode>,
    roots: Vec<AffineRoot>,
    gens: Vec<ExtAffElt>,
    omega_sub: Quotient,
    omega_v: Vec<Vec<i64>>,
    omega_diag: Vec<i64>,
}

impl AffineWeyl {
    pub fn new(rd: RootDatum) -> AffineWeyl {
        let mut nodes = Vec::new();
        let mut roots = Vec::new();
        for (ci, c) in rd.components.iter().enumerate() {
            nodes.push(AffineNode { component: ci, label: 0 });
            roots.push(AffineRoot { root: rd.negate(rd.highest_root(ci)), k: 1 });
            for (l, i) in c.nodes().enumerate() {
                nodes.push(AffineNode { component: ci, label: l + 1 });
                roots.push(AffineRoot { root: rd.simple_root(i), k: 0 });
            }
        }
        let gens = roots
            .iter()
            .map(|ar| {
                let lambda = rd.coroot(ar.root).iter().map(|x| -ar.k * x).collect();
                ExtAffElt { lambda, w: rd.reflection(ar.root) }
            })
            .collect();
        let sub: Vec<Vec<i64>> = (0..rd.rank()).map(|i| rd.coroot(i).to_vec()).collect();
        let omega_sub = lattice::quotient(&sub, rd.dim());
        let snf = lattice::smith(&sub, rd.dim());
        AffineWeyl {
            nodes,
            roots,
            gens,
            omega_sub,
            omega_v: snf.v,
            omega_diag: snf.diag,
            rd,
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn node_root(&self, s: usize) -> AffineRoot {
        self.roots[s]
    }

    /// Node index of an affine simple root.
    pub fn node_of_root(&self, ar: AffineRoot) -> Option<usize> {
        self.roots.iter().position(|&r| r == ar)
    }

    /// Node index of a finite simple reflection.
    pub fn finite_node(&self, i: usize) -> usize {
        let c = self.rd.component_of_node(i);
        self.node_index(c, i - self.rd.components[c].offset + 1)
    }

    pub fn node_index(&self, component: usize, label: usize) -> usize {
        self.nodes
            .iter()
            .position(|n| n.component == component && n.label == label)
            .unwrap()
    }

    pub fn is_extra(&self, s: usize) -> bool {
        self.nodes[s].label == 0
    }

    pub fn gen(&self, s: usize) -> &ExtAffElt {
        &self.gens[s]
    }

    pub fn identity(&self) -> ExtAffElt {
        ExtAffElt { lambda: self.rd.zero(), w: self.rd.weyl_identity() }
    }

    pub fn translation(&self, lambda: &[i64]) -> ExtAffElt {
        ExtAffElt { lambda: lambda.to_vec(), w: self.rd.weyl_identity() }
    }

    pub fn from_weyl(&self, w: &WeylElt) -> ExtAffElt {
        ExtAffElt { lambda: self.rd.zero(), w: w.clone() }
    }

    pub fn mul(&self, x: &ExtAffElt, y: &ExtAffElt) -> ExtAffElt {
        let wl = x.w.act(&y.lambda);
        ExtAffElt {
            lambda: x.lambda.iter().zip(&wl).map(|(a, b)| a + b).collect(),
            w: self.rd.weyl_mul(&x.w, &y.w),
        }
    }

    pub fn inverse(&self, x: &ExtAffElt) -> ExtAffElt {
        let wi = self.rd.weyl_inverse(&x.w);
        ExtAffElt { lambda: wi.act(&x.lambda).iter().map(|v| -v).collect(), w: wi }
    }

    pub fn pow(&self, x: &ExtAffElt, k: usize) -> ExtAffElt {
        (0..k).fold(self.identity(), |acc, _| self.mul(&acc, x))
    }

    pub fn from_word(&self, word: &[usize]) -> ExtAffElt {
        word.iter().fold(self.identity(), |acc, &s| self.mul(&acc, &self.gens[s]))
    }

    /// `t_lambda w . (b, k) = (w b, k - <w b, lambda>)`.
    pub fn act_root(&self, x: &ExtAffElt, ar: AffineRoot) -> AffineRoot {
        let wb = x.w.root(ar.root);
        AffineRoot { root: wb, k: ar.k - self.rd.pair(wb, &x.lambda) }
    }

    pub fn is_positive(&self, ar: AffineRoot) -> bool {
        ar.k > 0 || (ar.k == 0 && self.rd.is_positive(ar.root))
    }

    /// Whether `ell(s x) < ell(x)`.
    pub fn is_left_descent(&self, x: &ExtAffElt, s: usize) -> bool {
        // x^-1 (b, k) = (w^-1 b, k + <b, lambda>)
        let ar = self.roots[s];
        let k = ar.k + self.rd.pair(ar.root, &x.lambda);
        if k != 0 {
            return k < 0;
        }
        let pos = x.w.perm().iter().position(|&p| p as usize == ar.root).unwrap();
        !self.rd.is_positive(pos)
    }

    /// Whether `ell(x s) < ell(x)`.
    pub fn is_right_descent(&self, x: &ExtAffElt, s: usize) -> bool {
        !self.is_positive(self.act_root(x, self.roots[s]))
    }

    /// Lexicographically least reduced word of the affine Weyl part and the
    /// length-zero remainder: `x = s_{i1} ... s_{il} tau`.
    pub fn descent_decompose(&self, x: &ExtAffElt) -> (Vec<usize>, ExtAffElt) {
        let mut word = Vec::new();
        let mut cur = x.clone();
        'walk: loop {
            for s in 0..self.num_nodes() {
                if self.is_left_descent(&cur, s) {
                    word.push(s);
                    cur = self.mul(&self.gens[s], &cur);
                    continue 'walk;
                }
            }
            return (word, cur);
        }
    }

    pub fn length(&self, x: &ExtAffElt) -> usize {
        self.descent_decompose(x).0.len()
    }

    /// Length as a count of separating affine hyperplanes.
    pub fn hyperplane_length(&self, x: &ExtAffElt) -> usize {
        let rd = &self.rd;
        let winv = rd.weyl_inverse(&x.w);
        (0..rd.num_pos_roots())
            .map(|b| {
                let shift = if rd.is_positive(winv.root(b)) { 0 } else { -1 };
                (rd.pair(b, &x.lambda) + shift).unsigned_abs() as usize
            })
            .sum()
    }

    /// Every reduced word of the affine Weyl part of `x`, sorted.
    pub fn reduced_words(&self, x: &ExtAffElt) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut stack = vec![(Vec::new(), x.clone())];
        while let Some((prefix, cur)) = stack.pop() {
            let descents: Vec<usize> = (0..self.num_nodes())
                .filter(|&s| self.is_left_descent(&cur, s))
                .collect();
            if descents.is_empty() {
                out.push(prefix);
                continue;
            }
            for s in descents {
                let mut p = prefix.clone();
                p.push(s);
                stack.push((p, self.mul(&self.gens[s], &cur)));
            }
        }
        out.sort();
        out
    }

    /// Order of `s t` in the affine Weyl group; `None` for infinite.
    pub fn braid_order(&self, s: usize, t: usize) -> Option<usize> {
        if s == t {
            return Some(1);
        }
        let (a, b) = (self.roots[s].root, self.roots[t].root);
        let rd = &self.rd;
        braid_order(rd.pair(a, rd.coroot(b)) * rd.pair(b, rd.coroot(a)))
    }

    /// Elements of length at most `radius` in the affine Weyl group, by
    /// breadth-first search; the first entry is the identity.
    pub fn ball(&self, radius: usize) -> Vec<ExtAffElt> {
        let mut seen: HashSet<ExtAffElt> = HashSet::new();
        let mut layer = vec![self.identity()];
        seen.insert(self.identity());
        let mut out = layer.clone();
        for _ in 0..radius {
            let mut next = Vec::new();
            for x in &layer {
                for s in 0..self.num_nodes() {
                    if self.is_left_descent(x, s) {
                        continue;
                    }
                    let y = self.mul(&self.gens[s], x);
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

    // ---- the length-zero subgroup ----

    /// Invariant factors (at least 2) and free rank of `X_* / Z Phi^vee`.
    pub fn omega_structure(&self) -> (Vec<i64>, usize) {
        (
            self.omega_sub.torsion.iter().map(|(d, _)| *d).collect(),
            self.omega_sub.free.len(),
        )
    }

    /// Length-zero element in the class of a lattice vector.
    pub fn omega_of(&self, lambda: &[i64]) -> ExtAffElt {
        self.descent_decompose(&self.translation(lambda)).1
    }

    /// Generators: torsion generators first, then free ones.
    pub fn omega_generators(&self) -> Vec<ExtAffElt> {
        self.omega_sub
            .torsion
            .iter()
            .map(|(_, g)| g)
            .chain(&self.omega_sub.free)
            .map(|g| self.omega_of(g))
            .collect()
    }

    /// Coordinates of the class of `lambda`: residues for the torsion part,
    /// integers for the free part.
    pub fn omega_coords(&self, lambda: &[i64]) -> Vec<i64> {
        let n = lambda.len();
        let xv: Vec<i64> = (0..n)
            .map(|j| (0..n).map(|k| lambda[k] * self.omega_v[k][j]).sum())
            .collect();
        let mut out = Vec::new();
        for (j, v) in xv.iter().enumerate() {
            if j < self.omega_diag.len() {
                if self.omega_diag[j] > 1 {
                    out.push(v.rem_euclid(self.omega_diag[j]));
                }
            } else {
                out.push(*v);
            }
        }
        out
    }

    /// All elements of a finite length-zero subgroup, ordered by coordinates.
    pub fn omega_elements(&self) -> Result<Vec<ExtAffElt>> {
        if !self.omega_sub.free.is_empty() {
            return Err(Error::Unsupported("length-zero subgroup is infinite".into()));
        }
        let orders: Vec<i64> = self.omega_sub.torsion.iter().map(|(d, _)| *d).collect();
        let mut out = Vec::new();
        let mut idx = vec![0i64; orders.len()];
        loop {
            let mut lambda = self.rd.zero();
            for (c, (_, g)) in idx.iter().zip(&self.omega_sub.torsion) {
                for (l, x) in lambda.iter_mut().zip(g) {
                    *l += c * x;
                }
            }
            out.push(self.omega_of(&lambda));
            let mut k = orders.len();
            loop {
                if k == 0 {
                    return Ok(out);
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < orders[k] {
                    break;
                }
                idx[k] = 0;
            }
        }
    }

    /// Permutation of the nodes induced by conjugation with a length-zero
    /// element.
    pub fn omega_conjugation(&self, tau: &ExtAffElt) -> Result<Vec<usize>> {
        (0..self.num_nodes())
            .map(|s| {
                self.node_of_root(self.act_root(tau, self.roots[s]))
                    .ok_or_else(|| Error::Check("element does not have length zero".into()))
            })
            .collect()
    }

    /// `t_{omega_i^vee} y_(i)` for a minuscule coweight in the lattice.
    pub fn nu(&self, i: usize) -> Result<ExtAffElt> {
        if !self.rd.is_minuscule(i) {
            return Err(Error::InvalidInner(format!("coweight {} is not minuscule", i + 1)));
        }
        let lambda = self
            .rd
            .from_ambient(&self.rd.fundamental_coweight(i))
            .ok_or_else(|| Error::InvalidInner(format!("coweight {} not in the lattice", i + 1)))?;
        Ok(ExtAffElt { lambda, w: y_minuscule(&self.rd, i) })
    }

    pub fn view(&self, x: &ExtAffElt) -> ExtAffView {
        ExtAffView { lambda: x.lambda.clone(), w: x.w.labels() }
    }

    /// Coxeter data for reports: `m(s, t)` with 0 for infinity.
    pub fn coxeter_matrix(&self) -> Vec<Vec<usize>> {
        let n = self.num_nodes();
        (0..n)
            .map(|s| (0..n).map(|t| self.braid_order(s, t).unwrap_or(0)).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Q;
    use crate::root_datum::{cartan::coxeter_number, Isogeny, RootType};

    fn aff(k: RootType, n: usize, iso: Isogeny) -> AffineWeyl {
        AffineWeyl::new(RootDatum::simple(k, n, iso).unwrap())
    }

    /// Separating hyperplanes counted at an explicit point of the base
    /// alcove with exact rationals.
    fn length_at_point(a: &AffineWeyl, x: &ExtAffElt) -> usize {
        let rd = &a.rd;
        let c = rd.components[0];
        let h = coxeter_number(c.kind, c.rank);
        // p = (1/h) sum_i omega_i^vee, so <alpha_i, p> = 1/h
        let mut pt = vec![Q::from_integer(0); rd.dim()];
        for i in 0..rd.rank() {
            for (a, b) in pt.iter_mut().zip(rd.fundamental_coweight(i)) {
                *a += b * Q::new(1, h);
            }
        }
        let lam = rd.to_ambient(&x.lambda);
        // w acting on ambient points through roots: <b, w p> = <w^-1 b, p>
        let winv = rd.weyl_inverse(&x.w);
        (0..rd.num_pos_roots())
            .map(|b| {
                let before = rd.pair_ambient(b, &pt);
                let after = rd.pair_ambient(b, &lam) + rd.pair_ambient(winv.root(b), &pt);
                let fb = before.floor().to_integer();
                let fa = after.floor().to_integer();
                (fa - fb).unsigned_abs() as usize
            })
            .sum()
    }

    #[test]
    fn a1_translation_word() {
        let a = aff(RootType::A, 1, Isogeny::Sc);
        let t = a.translation(&[1]);
        let (word, tau) = a.descent_decompose(&t);
        assert_eq!(word, vec![0, 1]);
        assert_eq!(tau, a.identity());
        assert_eq!(a.from_word(&[0, 1]), t);
    }

    #[test]
    fn lengths_agree_three_ways() {
        for (k, n) in [(RootType::A, 2), (RootType::C, 2), (RootType::G, 2), (RootType::B, 3)] {
            let a = aff(k, n, Isogeny::Sc);
            for x in a.ball(4) {
                let l = a.length(&x);
                assert_eq!(l, a.hyperplane_length(&x));
                assert_eq!(l, length_at_point(&a, &x));
            }
        }
    }

    #[test]
    fn ball_sizes() {
        // affine A2 has 1, 3, 6, 9, 12 elements of lengths 0..4
        let a = aff(RootType::A, 2, Isogeny::Sc);
        assert_eq!(a.ball(4).len(), 1 + 3 + 6 + 9 + 12);
    }

    #[test]
    fn coxeter_orders() {
        let a = aff(RootType::A, 1, Isogeny::Sc);
        assert_eq!(a.braid_order(0, 1), None);
        let a = aff(RootType::C, 2, Isogeny::Sc);
        assert_eq!(a.coxeter_matrix()[0], vec![1, 4, 2]);
        let a = aff(RootType::G, 2, Isogeny::Sc);
        assert_eq!(a.coxeter_matrix()[0], vec![1, 2, 3]);
    }

    #[test]
    fn omega_of_adjoint_types() {
        for (k, n, order) in [(RootType::A, 3, 4), (RootType::D, 5, 4), (RootType::E, 6, 3), (RootType::B, 3, 2)] {
            let a = aff(k, n, Isogeny::Ad);
            let els = a.omega_elements().unwrap();
            assert_eq!(els.len(), order);
            for t in &els {
                assert_eq!(a.length(t), 0);
            }
        }
        let a = aff(RootType::D, 4, Isogeny::Ad);
        assert_eq!(a.omega_structure(), (vec![2, 2], 0));
    }

    #[test]
    fn nu_is_length_zero() {
        let a = aff(RootType::A, 1, Isogeny::Ad);
        let nu = a.nu(0).unwrap();
        assert_eq!(a.length(&nu), 0);
        assert_eq!(a.omega_conjugation(&nu).unwrap(), vec![1, 0]);
        assert_eq!(a.pow(&nu, 2), a.identity());
    }

    #[test]
    fn gl2_omega_is_free() {
        let h = Q::new(1, 2);
        let rows = vec![vec![h, h], vec![-h, h]];
        let rd = RootDatum::new(&[(RootType::A, 1)], 1, Isogeny::Rows(rows)).unwrap();
        let a = AffineWeyl::new(rd);
        assert_eq!(a.omega_structure(), (vec![], 1));
        let g = &a.omega_generators()[0];
        assert_eq!(a.length(g), 0);
        assert_eq!(a.omega_coords(&g.lambda).len(), 1);
    }
}
