//! Root data: Cartan types, roots and coroots, the cocharacter lattice and
//! its Weyl group action.
//!
//! The ambient space has coordinates with respect to the simple coroots of
//! every component followed by `central_rank` central coordinates. Lattice
//! elements are integer coordinate vectors with respect to the chosen basis
//! rows of the cocharacter lattice.

pub mod cartan;
pub mod weyl;

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

pub use cartan::{cartan_matrix, RootType};
pub use weyl::WeylElt;

use crate::error::{Error, Result};
use crate::lattice::{self, q, Q};

/// Choice of cocharacter lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Isogeny {
    /// Coroot lattice plus the standard central lattice.
    Sc,
    /// Coweight lattice plus the standard central lattice.
    Ad,
    /// Explicit basis rows in ambient coordinates.
    Rows(Vec<Vec<Q>>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Component {
    pub kind: RootType,
    pub rank: usize,
    pub offset: usize,
}

impl Component {
    pub fn nodes(&self) -> std::ops::Range<usize> {
        self.offset..self.offset + self.rank
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.kind, self.rank)
    }
}

/// An element of `X/2X` as a bit mask over lattice coordinates.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignVector(pub u64);

impl SignVector {
    pub const ZERO: SignVector = SignVector(0);

    pub fn from_coords(x: &[i64]) -> SignVector {
        SignVector(
            x.iter()
                .enumerate()
                .filter(|(_, v)| v.rem_euclid(2) == 1)
                .fold(0, |acc, (k, _)| acc | (1 << k)),
        )
    }

    pub fn bit(self, k: usize) -> bool {
        self.0 >> k & 1 == 1
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn bits(self, dim: usize) -> Vec<u8> {
        (0..dim).map(|k| u8::from(self.bit(k))).collect()
    }
}

impl std::ops::Add for SignVector {
    type Output = SignVector;

    fn add(self, rhs: SignVector) -> SignVector {
        SignVector(self.0 ^ rhs.0)
    }
}

impl std::ops::AddAssign for SignVector {
    fn add_assign(&mut self, rhs: SignVector) {
        self.0 ^= rhs.0;
    }
}

#[derive(Debug, Clone)]
pub struct RootDatum {
    pub components: Vec<Component>,
    pub cartan: Vec<Vec<i64>>,
    pub central_rank: usize,
    pub isogeny: Isogeny,
    basis: Vec<Vec<Q>>,
    basis_inv: Vec<Vec<Q>>,
    n_pos: usize,
    root_coords: Vec<Vec<i64>>,
    coroot_coords: Vec<Vec<i64>>,
    root_funcs: Vec<Vec<i64>>,
    coroot_vecs: Vec<Vec<i64>>,
    coroot_bits: Vec<SignVector>,
    root_component: Vec<usize>,
    root_lookup: HashMap<Vec<i64>, usize>,
    gen_perm: Vec<Vec<u16>>,
    gen_mat: Vec<Vec<i64>>,
    symmetrizer: Vec<i64>,
    gram: Vec<Vec<Q>>,
    highest: Vec<usize>,
}

impl RootDatum {
    pub fn new(types: &[(RootType, usize)], central_rank: usize, isogeny: Isogeny) -> Result<RootDatum> {
        let mut components = Vec::new();
        let mut offset = 0;
        for &(kind, rank) in types {
            cartan::check_rank(kind, rank)?;
            components.push(Component { kind, rank, offset });
            offset += rank;
        }
        let ss = offset;
        let dim = ss + central_rank;
        if dim > 64 {
            return Err(Error::SignDimension(dim));
        }
        let mut cartan = vec![vec![0i64; ss]; ss];
        let mut symmetrizer = vec![0i64; ss];
        for c in &components {
            let a = cartan_matrix(c.kind, c.rank)?;
            let d = cartan::symmetrizer(&a);
            for i in 0..c.rank {
                symmetrizer[c.offset + i] = d[i];
                for j in 0..c.rank {
                    cartan[c.offset + i][c.offset + j] = a[i][j];
                }
            }
        }

        let basis = match &isogeny {
            Isogeny::Sc => identity_q(dim),
            Isogeny::Ad => {
                let mut b = identity_q(dim);
                for c in &components {
                    let a: Vec<Vec<Q>> = c
                        .nodes()
                        .map(|i| c.nodes().map(|j| q(cartan[i][j])).collect())
                        .collect();
                    let inv = lattice::inverse(&a).expect("cartan matrix is invertible");
                    for (i, row) in inv.iter().enumerate() {
                        for (j, v) in row.iter().enumerate() {
                            b[c.offset + i][c.offset + j] = *v;
                        }
                    }
                }
                b
            }
            Isogeny::Rows(rows) => {
                if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                    return Err(Error::InvalidLattice(format!("expected {dim} rows of length {dim}")));
                }
                rows.clone()
            }
        };
        let basis_inv = lattice::inverse(&basis)
            .ok_or_else(|| Error::InvalidLattice("basis rows are linearly dependent".into()))?;

        let (root_coords, coroot_coords, root_component) = enumerate_roots(&cartan, &components);
        let n_pos = root_coords.len() / 2;
        let root_lookup: HashMap<Vec<i64>, usize> = root_coords
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();

        // functionals of roots on the basis rows
        let mut root_funcs = Vec::with_capacity(root_coords.len());
        for r in &root_coords {
            let mut f = Vec::with_capacity(dim);
            for row in &basis {
                let mut s = Q::zero();
                for i in 0..ss {
                    let pairing: i64 = (0..ss).map(|j| r[j] * cartan[i][j]).sum();
                    s += row[i] * q(pairing);
                }
                if !s.is_integer() {
                    return Err(Error::InvalidLattice(
                        "lattice is not contained in the coweight lattice".into(),
                    ));
                }
                f.push(s.to_integer());
            }
            root_funcs.push(f);
        }
        let mut coroot_vecs = Vec::with_capacity(root_coords.len());
        for c in &coroot_coords {
            let mut amb: Vec<Q> = c.iter().map(|&x| q(x)).collect();
            amb.extend(std::iter::repeat(Q::zero()).take(central_rank));
            let x = lattice::to_integers(&lattice::row_times(&amb, &basis_inv)).ok_or_else(|| {
                Error::InvalidLattice("lattice does not contain the coroot lattice".into())
            })?;
            coroot_vecs.push(x);
        }
        let coroot_bits = coroot_vecs.iter().map(|x| SignVector::from_coords(x)).collect();

        let gen_perm = (0..ss)
            .map(|i| {
                root_coords
                    .iter()
                    .map(|r| {
                        let p: i64 = (0..ss).map(|j| r[j] * cartan[i][j]).sum();
                        let mut img = r.clone();
                        img[i] -= p;
                        root_lookup[&img] as u16
                    })
                    .collect()
            })
            .collect();
        let gen_mat = (0..ss)
            .map(|i| {
                let mut m = vec![0i64; dim * dim];
                for a in 0..dim {
                    for b in 0..dim {
                        m[a * dim + b] = i64::from(a == b) - coroot_vecs[i][a] * root_funcs[i][b];
                    }
                }
                m
            })
            .collect();

        let mut amb_gram = vec![vec![Q::zero(); dim]; dim];
        for i in 0..ss {
            for j in 0..ss {
                amb_gram[i][j] = q(cartan[i][j] * symmetrizer[j]);
            }
        }
        for k in ss..dim {
            amb_gram[k][k] = q(1);
        }
        let gram: Vec<Vec<Q>> = basis
            .iter()
            .map(|r| {
                let rg = lattice::row_times(r, &amb_gram);
                basis
                    .iter()
                    .map(|s| rg.iter().zip(s).fold(Q::zero(), |acc, (x, y)| acc + *x * *y))
                    .collect()
            })
            .collect();

        let highest = components
            .iter()
            .enumerate()
            .map(|(ci, _)| {
                (0..n_pos)
                    .filter(|&r| root_component[r] == ci)
                    .max_by_key(|&r| root_coords[r].iter().sum::<i64>())
                    .unwrap()
            })
            .collect();

        Ok(RootDatum {
            components,
            cartan,
            central_rank,
            isogeny,
            basis,
            basis_inv,
            n_pos,
            root_coords,
            coroot_coords,
            root_funcs,
            coroot_vecs,
            coroot_bits,
            root_component,
            root_lookup,
            gen_perm,
            gen_mat,
            symmetrizer,
            gram,
            highest,
        })
    }

    /// Single almost simple factor, no central torus.
    pub fn simple(kind: RootType, rank: usize, isogeny: Isogeny) -> Result<RootDatum> {
        RootDatum::new(&[(kind, rank)], 0, isogeny)
    }

    /// Dimension of the cocharacter lattice.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Semisimple rank.
    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn num_pos_roots(&self) -> usize {
        self.n_pos
    }

    pub fn num_roots(&self) -> usize {
        2 * self.n_pos
    }

    pub fn is_positive(&self, r: usize) -> bool {
        r < self.n_pos
    }

    pub fn negate(&self, r: usize) -> usize {
        (r + self.n_pos) % (2 * self.n_pos)
    }

    /// Index of the simple root `alpha_i`; simple roots come first.
    pub fn simple_root(&self, i: usize) -> usize {
        i
    }

    pub fn root_coords(&self, r: usize) -> &[i64] {
        &self.root_coords[r]
    }

    pub fn coroot_coords(&self, r: usize) -> &[i64] {
        &self.coroot_coords[r]
    }

    pub fn root_index(&self, coords: &[i64]) -> Option<usize> {
        self.root_lookup.get(coords).copied()
    }

    pub fn height(&self, r: usize) -> i64 {
        self.root_coords[r].iter().sum()
    }

    /// Functional of the root on lattice coordinates.
    pub fn root_func(&self, r: usize) -> &[i64] {
        &self.root_funcs[r]
    }

    /// The coroot in lattice coordinates.
    pub fn coroot(&self, r: usize) -> &[i64] {
        &self.coroot_vecs[r]
    }

    pub fn coroot_sign(&self, r: usize) -> SignVector {
        self.coroot_bits[r]
    }

    pub fn pair(&self, r: usize, x: &[i64]) -> i64 {
        self.root_funcs[r].iter().zip(x).map(|(a, b)| a * b).sum()
    }

    /// Parity of the pairing of a root with a sign vector.
    pub fn pair_sign(&self, r: usize, e: SignVector) -> bool {
        self.root_funcs[r]
            .iter()
            .enumerate()
            .filter(|(k, _)| e.bit(*k))
            .map(|(_, a)| a.rem_euclid(2))
            .sum::<i64>()
            % 2
            == 1
    }

    pub fn component_of_root(&self, r: usize) -> usize {
        self.root_component[r]
    }

    pub fn component_of_node(&self, i: usize) -> usize {
        self.components.iter().position(|c| c.nodes().contains(&i)).unwrap()
    }

    pub fn highest_root(&self, c: usize) -> usize {
        self.highest[c]
    }

    pub fn gen_perm(&self, i: usize) -> &[u16] {
        &self.gen_perm[i]
    }

    pub fn gen_mat(&self, i: usize) -> &[i64] {
        &self.gen_mat[i]
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.basis
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    pub fn is_semisimple(&self) -> bool {
        self.central_rank == 0
    }

    /// Ambient coordinates of a lattice vector.
    pub fn to_ambient(&self, x: &[i64]) -> Vec<Q> {
        let xs: Vec<Q> = x.iter().map(|&v| q(v)).collect();
        lattice::row_times(&xs, &self.basis)
    }

    /// Lattice coordinates of an ambient vector, if it lies in the lattice.
    pub fn from_ambient(&self, v: &[Q]) -> Option<Vec<i64>> {
        lattice::to_integers(&lattice::row_times(v, &self.basis_inv))
    }

    /// Lattice coordinates of an ambient vector, possibly fractional.
    pub fn from_ambient_q(&self, v: &[Q]) -> Vec<Q> {
        lattice::row_times(v, &self.basis_inv)
    }

    /// Invariant form on lattice coordinates.
    pub fn inner_product(&self, x: &[i64], y: &[i64]) -> Q {
        let mut s = Q::zero();
        for (i, a) in x.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                s += self.gram[i][j] * q(a * b);
            }
        }
        s
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.dim()]
    }

    /// Span of the coroot images in `X/2X`.
    pub fn coroot_span_basis(&self) -> Vec<u64> {
        lattice::f2_basis((0..self.n_pos).map(|r| self.coroot_bits[r].0))
    }

    /// Sign vectors in the span of the coroots of one component.
    pub fn component_sign_span(&self, c: usize) -> Vec<SignVector> {
        let nodes = self.components[c].nodes();
        lattice::f2_span(nodes.map(|i| self.coroot_bits[i].0))
            .into_iter()
            .map(SignVector)
            .collect()
    }

    /// Fundamental coweight `omega_i^vee` in ambient coordinates.
    pub fn fundamental_coweight(&self, i: usize) -> Vec<Q> {
        let c = self.components[self.component_of_node(i)];
        let a: Vec<Vec<Q>> = c
            .nodes()
            .map(|r| c.nodes().map(|s| q(self.cartan[r][s])).collect())
            .collect();
        let inv = lattice::inverse(&a).unwrap();
        let mut v = vec![Q::zero(); self.dim()];
        for (j, x) in inv[i - c.offset].iter().enumerate() {
            v[c.offset + j] = *x;
        }
        v
    }

    /// Whether `omega_i^vee` is minuscule.
    pub fn is_minuscule(&self, i: usize) -> bool {
        let c = self.component_of_node(i);
        self.root_coords[self.highest[c]][i] == 1
    }

    /// Pairing of a root with an ambient vector.
    pub fn pair_ambient(&self, r: usize, v: &[Q]) -> Q {
        let ss = self.rank();
        let mut s = Q::zero();
        for i in 0..ss {
            let p: i64 = (0..ss).map(|j| self.root_coords[r][j] * self.cartan[i][j]).sum();
            s += v[i] * q(p);
        }
        s
    }

    pub fn describe(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.components.iter().map(|c| c.name()).collect();
        write!(f, "{}", names.join("x"))?;
        if self.central_rank > 0 {
            write!(f, "xT{}", self.central_rank)?;
        }
        match self.isogeny {
            Isogeny::Sc => write!(f, " sc"),
            Isogeny::Ad => write!(f, " ad"),
            Isogeny::Rows(_) => write!(f, " explicit"),
        }
    }
}

fn identity_q(n: usize) -> Vec<Vec<Q>> {
    (0..n)
        .map(|i| (0..n).map(|j| q(i64::from(i == j))).collect())
        .collect()
}

/// All roots with matching coroots; positives first sorted by height, then
/// their negatives in the same order.
fn enumerate_roots(
    cartan: &[Vec<i64>],
    components: &[Component],
) -> (Vec<Vec<i64>>, Vec<Vec<i64>>, Vec<usize>) {
    let ss = cartan.len();
    let mut seen: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
    let mut queue = Vec::new();
    for i in 0..ss {
        let mut e = vec![0i64; ss];
        e[i] = 1;
        seen.insert(e.clone(), e.clone());
        queue.push(e);
    }
    while let Some(r) = queue.pop() {
        let c = seen[&r].clone();
        for i in 0..ss {
            let p: i64 = (0..ss).map(|j| r[j] * cartan[i][j]).sum();
            let pc: i64 = (0..ss).map(|k| c[k] * cartan[k][i]).sum();
            let mut r2 = r.clone();
            r2[i] -= p;
            let mut c2 = c.clone();
            c2[i] -= pc;
            if !seen.contains_key(&r2) {
                seen.insert(r2.clone(), c2);
                queue.push(r2);
            }
        }
    }
    let mut pos: Vec<(Vec<i64>, Vec<i64>)> = seen
        .into_iter()
        .filter(|(r, _)| r.iter().all(|&x| x >= 0))
        .collect();
    pos.sort_by(|(a, _), (b, _)| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    let mut roots: Vec<Vec<i64>> = pos.iter().map(|(r, _)| r.clone()).collect();
    let mut coroots: Vec<Vec<i64>> = pos.iter().map(|(_, c)| c.clone()).collect();
    roots.extend(pos.iter().map(|(r, _)| r.iter().map(|x| -x).collect::<Vec<_>>()));
    coroots.extend(pos.iter().map(|(_, c)| c.iter().map(|x| -x).collect::<Vec<_>>()));
    let comp = roots
        .iter()
        .map(|r| {
            let i = r.iter().position(|&x| x != 0).unwrap();
            components.iter().position(|c| c.nodes().contains(&i)).unwrap()
        })
        .collect();
    (roots, coroots, comp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positive_root_counts() {
        let cases = [
            (RootType::A, 2, 3),
            (RootType::A, 4, 10),
            (RootType::B, 3, 9),
            (RootType::C, 3, 9),
            (RootType::D, 4, 12),
            (RootType::D, 5, 20),
            (RootType::E, 6, 36),
            (RootType::E, 7, 63),
            (RootType::E, 8, 120),
            (RootType::F, 4, 24),
            (RootType::G, 2, 6),
        ];
        for (k, n, np) in cases {
            let rd = RootDatum::simple(k, n, Isogeny::Sc).unwrap();
            assert_eq!(rd.num_pos_roots(), np, "{k}{n}");
        }
    }

    #[test]
    fn highest_roots() {
        let rd = RootDatum::simple(RootType::E, 6, Isogeny::Sc).unwrap();
        assert_eq!(rd.root_coords(rd.highest_root(0)), &[1, 2, 2, 3, 2, 1]);
        let rd = RootDatum::simple(RootType::G, 2, Isogeny::Sc).unwrap();
        assert_eq!(rd.root_coords(rd.highest_root(0)), &[3, 2]);
        let rd = RootDatum::simple(RootType::B, 3, Isogeny::Sc).unwrap();
        assert_eq!(rd.root_coords(rd.highest_root(0)), &[1, 2, 2]);
    }

    #[test]
    fn coroot_pairings() {
        for (k, n) in [(RootType::B, 3), (RootType::G, 2), (RootType::F, 4)] {
            let rd = RootDatum::simple(k, n, Isogeny::Sc).unwrap();
            for r in 0..rd.num_roots() {
                assert_eq!(rd.pair(r, rd.coroot(r)), 2);
            }
        }
    }

    #[test]
    fn adjoint_a1_has_index_two() {
        let rd = RootDatum::simple(RootType::A, 1, Isogeny::Ad).unwrap();
        assert_eq!(rd.coroot(0), &[2]);
        assert_eq!(rd.root_func(0), &[1]);
        assert!(rd.coroot_span_basis().is_empty());
    }

    #[test]
    fn gl2_lattice() {
        let h = Q::new(1, 2);
        let rows = vec![vec![h, h], vec![-h, h]];
        let rd = RootDatum::new(&[(RootType::A, 1)], 1, Isogeny::Rows(rows)).unwrap();
        assert_eq!(rd.coroot(0), &[1, -1]);
        assert_eq!(rd.root_func(0), &[1, -1]);
    }

    #[test]
    fn lattice_must_contain_coroots() {
        let rows = vec![vec![q(2)]];
        assert!(matches!(
            RootDatum::simple(RootType::A, 1, Isogeny::Rows(rows)),
            Err(Error::InvalidLattice(_))
        ));
        let rows = vec![vec![Q::new(1, 4)]];
        assert!(RootDatum::simple(RootType::A, 1, Isogeny::Rows(rows)).is_err());
    }

    #[test]
    fn short_coroots_have_norm_two() {
        let rd = RootDatum::simple(RootType::C, 3, Isogeny::Sc).unwrap();
        // alpha_3 is long, so its coroot is short
        assert_eq!(rd.inner_product(rd.coroot(2), rd.coroot(2)), q(2));
        assert_eq!(rd.inner_product(rd.coroot(0), rd.coroot(0)), q(4));
    }

    #[test]
    fn minuscule_coweights() {
        let rd = RootDatum::simple(RootType::D, 5, Isogeny::Ad).unwrap();
        let m: Vec<usize> = (0..5).filter(|&i| rd.is_minuscule(i)).collect();
        assert_eq!(m, vec![0, 3, 4]);
        let rd = RootDatum::simple(RootType::E, 6, Isogeny::Ad).unwrap();
        let m: Vec<usize> = (0..6).filter(|&i| rd.is_minuscule(i)).collect();
        assert_eq!(m, vec![0, 5]);
    }
}
