//! Finite Weyl group elements.

use std::collections::{HashMap, VecDeque};
use std::hash::{Hash, Hasher};

use super::{RootDatum, SignVector};
use crate::lattice::Q;

/// An element of the finite Weyl group.
///
/// Carries the lexicographically least reduced word, the permutation of all
/// roots and the matrix on lattice coordinates. Equality uses the word.
#[derive(Debug, Clone)]
pub struct WeylElt {
    word: Vec<u8>,
    perm: Vec<u16>,
    mat: Vec<i64>,
}

impl PartialEq for WeylElt {
    fn eq(&self, other: &Self) -> bool {
        self.word == other.word
    }
}

impl Eq for WeylElt {}

impl Hash for WeylElt {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.word.hash(state);
    }
}

impl PartialOrd for WeylElt {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for WeylElt {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.word.len(), &self.word).cmp(&(other.word.len(), &other.word))
    }
}

impl WeylElt {
    /// Canonical reduced word, 0-based node indices.
    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn perm(&self) -> &[u16] {
        &self.perm
    }

    /// Image of a root index.
    pub fn root(&self, r: usize) -> usize {
        self.perm[r] as usize
    }

    pub fn act(&self, x: &[i64]) -> Vec<i64> {
        let n = x.len();
        (0..n)
            .map(|a| (0..n).map(|b| self.mat[a * n + b] * x[b]).sum())
            .collect()
    }

    pub fn act_sign(&self, e: SignVector) -> SignVector {
        if e.is_zero() {
            return e;
        }
        let n = (self.mat.len() as f64).sqrt().round() as usize;
        let mut out = 0u64;
        for a in 0..n {
            let mut s = 0i64;
            for b in 0..n {
                if e.bit(b) {
                    s += self.mat[a * n + b];
                }
            }
            if s.rem_euclid(2) == 1 {
                out |= 1 << a;
            }
        }
        SignVector(out)
    }

    /// Word with 1-based labels, as printed in reports.
    pub fn labels(&self) -> Vec<usize> {
        self.word.iter().map(|&i| i as usize + 1).collect()
    }
}

impl RootDatum {
    pub fn weyl_identity(&self) -> WeylElt {
        let n = self.dim();
        let mut mat = vec![0i64; n * n];
        for a in 0..n {
            mat[a * n + a] = 1;
        }
        WeylElt {
            word: Vec::new(),
            perm: (0..self.num_roots() as u16).collect(),
            mat,
        }
    }

    pub fn weyl_gen(&self, i: usize) -> WeylElt {
        WeylElt {
            word: vec![i as u8],
            perm: self.gen_perm(i).to_vec(),
            mat: self.gen_mat(i).to_vec(),
        }
    }

    fn from_parts(&self, perm: Vec<u16>, mat: Vec<i64>) -> WeylElt {
        WeylElt {
            word: self.canonical_word(&perm),
            perm,
            mat,
        }
    }

    /// Lexicographically least reduced word of the element with this root
    /// permutation: repeatedly strip the smallest left descent.
    pub fn canonical_word(&self, perm: &[u16]) -> Vec<u8> {
        let n_pos = self.num_pos_roots() as u16;
        let mut inv = vec![0u16; perm.len()];
        for (k, &p) in perm.iter().enumerate() {
            inv[p as usize] = k as u16;
        }
        let mut word = Vec::new();
        'walk: loop {
            for i in 0..self.rank() {
                // w^-1(alpha_i) < 0
                if inv[self.simple_root(i)] >= n_pos {
                    word.push(i as u8);
                    // inverse of s_i w is w^-1 s_i
                    let g = self.gen_perm(i);
                    inv = g.iter().map(|&r| inv[r as usize]).collect();
                    continue 'walk;
                }
            }
            break;
        }
        word
    }

    pub fn weyl_mul(&self, u: &WeylElt, v: &WeylElt) -> WeylElt {
        if u.is_identity() {
            return v.clone();
        }
        if v.is_identity() {
            return u.clone();
        }
        let perm: Vec<u16> = v.perm.iter().map(|&r| u.perm[r as usize]).collect();
        let n = self.dim();
        let mut mat = vec![0i64; n * n];
        for a in 0..n {
            for k in 0..n {
                let x = u.mat[a * n + k];
                if x != 0 {
                    for b in 0..n {
                        mat[a * n + b] += x * v.mat[k * n + b];
                    }
                }
            }
        }
        self.from_parts(perm, mat)
    }

    pub fn weyl_from_word(&self, word: &[usize]) -> WeylElt {
        word.iter()
            .fold(self.weyl_identity(), |acc, &i| self.weyl_mul(&acc, &self.weyl_gen(i)))
    }

    pub fn weyl_inverse(&self, w: &WeylElt) -> WeylElt {
        let rev: Vec<usize> = w.word.iter().rev().map(|&i| i as usize).collect();
        self.weyl_from_word(&rev)
    }

    pub fn weyl_pow(&self, w: &WeylElt, k: usize) -> WeylElt {
        (0..k).fold(self.weyl_identity(), |acc, _| self.weyl_mul(&acc, w))
    }

    pub fn weyl_order(&self, w: &WeylElt) -> usize {
        let mut x = w.clone();
        let mut k = 1;
        while !x.is_identity() {
            x = self.weyl_mul(&x, w);
            k += 1;
        }
        k
    }

    /// Positive roots sent to negative roots.
    pub fn inversion_set(&self, w: &WeylElt) -> Vec<usize> {
        (0..self.num_pos_roots())
            .filter(|&r| !self.is_positive(w.root(r)))
            .collect()
    }

    pub fn is_left_descent(&self, w: &WeylElt, i: usize) -> bool {
        let target = self.simple_root(i) as u16;
        let k = w.perm.iter().position(|&p| p == target).unwrap();
        !self.is_positive(k)
    }

    pub fn is_right_descent(&self, w: &WeylElt, i: usize) -> bool {
        !self.is_positive(w.root(self.simple_root(i)))
    }

    /// Longest element of the parabolic subgroup on `nodes`.
    pub fn longest_element(&self, nodes: &[usize]) -> WeylElt {
        let mut w = self.weyl_identity();
        'grow: loop {
            for &i in nodes {
                if !self.is_right_descent(&w, i) {
                    w = self.weyl_mul(&w, &self.weyl_gen(i));
                    continue 'grow;
                }
            }
            return w;
        }
    }

    /// Action on ambient (rational) coordinates.
    pub fn act_ambient(&self, w: &WeylElt, v: &[Q]) -> Vec<Q> {
        let mut out = v.to_vec();
        for &i in w.word().iter().rev() {
            let p = self.pair_ambient(i as usize, &out);
            out[i as usize] -= p;
        }
        out
    }

    /// Reflection in an arbitrary root.
    pub fn reflection(&self, r: usize) -> WeylElt {
        // conjugate a simple reflection onto r
        let mut path = Vec::new();
        let mut cur = if self.is_positive(r) { r } else { self.negate(r) };
        while cur >= self.rank() {
            let i = (0..self.rank())
                .find(|&i| {
                    let img = self.gen_perm(i)[cur] as usize;
                    self.is_positive(img) && self.height(img) < self.height(cur)
                })
                .unwrap();
            path.push(i);
            cur = self.gen_perm(i)[cur] as usize;
        }
        // r = s_{p1} ... s_{pk} (alpha_cur)
        let mut word: Vec<usize> = path.clone();
        word.push(cur);
        word.extend(path.iter().rev());
        self.weyl_from_word(&word)
    }

    /// All elements, breadth first from the identity.
    pub fn weyl_elements(&self) -> Vec<WeylElt> {
        let mut seen: HashMap<Vec<u16>, ()> = HashMap::new();
        let id = self.weyl_identity();
        seen.insert(id.perm.clone(), ());
        let mut out = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(w) = queue.pop_front() {
            for i in 0..self.rank() {
                let g = self.gen_perm(i);
                let perm: Vec<u16> = w.perm.iter().map(|&r| g[r as usize]).collect();
                if seen.contains_key(&perm) {
                    continue;
                }
                seen.insert(perm, ());
                let x = self.weyl_mul(&self.weyl_gen(i), &w);
                out.push(x.clone());
                queue.push_back(x);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use crate::root_datum::{Isogeny, RootDatum, RootType};

    fn rd(k: RootType, n: usize) -> RootDatum {
        RootDatum::simple(k, n, Isogeny::Sc).unwrap()
    }

    fn assert_group_order(k: RootType, n: usize, order: usize) {
        assert_eq!(rd(k, n).weyl_elements().len(), order, "{k}{n}");
    }

    #[test]
    fn group_orders() {
        assert_group_order(RootType::A, 3, 24);
        assert_group_order(RootType::B, 3, 48);
        assert_group_order(RootType::D, 4, 192);
        assert_group_order(RootType::G, 2, 12);
        assert_group_order(RootType::F, 4, 1152);
    }

    #[test]
    fn braid_word_reduces() {
        let r = rd(RootType::A, 2);
        assert!(r.weyl_from_word(&[0, 1, 0, 1, 0, 1]).is_identity());
        assert_eq!(r.weyl_from_word(&[1, 0, 1]).word(), &[0, 1, 0]);
    }

    #[test]
    fn longest_lengths() {
        let r = rd(RootType::A, 2);
        assert_eq!(r.longest_element(&[0, 1]).len(), 3);
        let r = rd(RootType::E, 6);
        assert_eq!(r.longest_element(&[0, 1, 2, 3, 4, 5]).len(), 36);
    }

    #[test]
    fn length_is_inversion_count() {
        let r = rd(RootType::B, 3);
        for w in r.weyl_elements() {
            assert_eq!(w.len(), r.inversion_set(&w).len());
            let inv = r.weyl_inverse(&w);
            assert!(r.weyl_mul(&w, &inv).is_identity());
        }
    }

    #[test]
    fn reflections_fix_hyperplanes() {
        let r = rd(RootType::G, 2);
        for a in 0..r.num_roots() {
            let s = r.reflection(a);
            assert_eq!(s.root(a), r.negate(a));
            let c = r.coroot(a).to_vec();
            assert_eq!(s.act(&c), c.iter().map(|x| -x).collect::<Vec<_>>());
        }
    }

    #[test]
    fn matrix_agrees_with_root_action() {
        let r = rd(RootType::C, 3);
        for w in r.weyl_elements().iter().take(20) {
            for a in 0..r.num_roots() {
                assert_eq!(w.act(r.coroot(a)), r.coroot(w.root(a)));
            }
        }
    }
}
