//! Frobenius actions on the Tits group.
//!
//! A diagram automorphism `sigma` of the based root datum together with an
//! element `nu = t_beta z` of the adjoint length-zero group gives the twisted
//! action `sigma* = Ad(nu) . sigma` on the Iwahori-Weyl group, and its lift
//! to the triple model. The twisted action fixes an affine Weyl group of
//! relative simple reflections `w_X`, one for each finite orbit `X`.

use std::collections::{BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::affine_tits::{
    self, check_coxeter, extra_candidates, t_identity, t_mul, t_product, t_project, t_torus, t_translation, t_view,
    word_ball, AffineTits, CoxeterReport, TitsElt, TitsView,
};
use crate::error::{Error, Result};
use crate::finite_tits::{ft_identity, ft_inverse, ft_lift, ft_mul, ft_pow, TitsFinElt, TitsFinView};
use crate::iwahori_weyl::{AffineWeyl, ExtAffElt, ExtAffView};
use crate::lattice::{self, q, Q};
use crate::root_datum::{Isogeny, RootDatum, RootType, SignVector, WeylElt};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum InnerTwist {
    Trivial,
    /// `nu_(node)^power` with a 0-based node of the first component.
    Nu { node: usize, power: usize },
}

impl std::fmt::Display for InnerTwist {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InnerTwist::Trivial => write!(f, "trivial"),
            InnerTwist::Nu { node, power } => write!(f, "nu({})^{}", node + 1, power),
        }
    }
}

/// Generator of the cyclic adjoint length-zero group, 1-based.
fn table_generator(kind: RootType, n: usize) -> Option<usize> {
    match kind {
        RootType::A | RootType::B => Some(1),
        RootType::C => Some(n),
        RootType::D if n % 2 == 1 => Some(n),
        RootType::E if n == 6 => Some(1),
        RootType::E if n == 7 => Some(7),
        _ => None,
    }
}

/// Diagram automorphism of `copies` copies of a rank-`rank` diagram: copy
/// `i` maps to copy `i + 1` and the last copy maps to the first through
/// `base`.
pub fn res_diagram(rank: usize, copies: usize, base: &[usize]) -> Vec<usize> {
    let mut perm = vec![0; rank * copies];
    for c in 0..copies {
        for a in 0..rank {
            perm[c * rank + a] = if c + 1 < copies { (c + 1) * rank + a } else { base[a] };
        }
    }
    perm
}

#[derive(Debug, Clone)]
pub struct Frobenius {
    pub tits: AffineTits,
    pub sigma: Vec<usize>,
    sigma_mat: Vec<i64>,
    pub sigma_aff: Vec<usize>,
    pub inner: InnerTwist,
    pub copies: usize,
    beta: Vec<Q>,
    pub z: WeylElt,
    pub g_z: TitsFinElt,
    z0: WeylElt,
    d_even: bool,
    pub nu0_power: Option<usize>,
    pub omega_ad_order: usize,
    pub coinvariant_order: usize,
    pub k: i64,
    pub eta: Vec<i64>,
    pub sigma_star_aff: Vec<usize>,
    pub stable_pinning: bool,
}

impl Frobenius {
    pub fn new(rd: RootDatum, sigma: Vec<usize>, inner: InnerTwist) -> Result<Frobenius> {
        let ss = rd.rank();
        let dim = rd.dim();
        if sigma.len() != ss || (0..ss).collect::<BTreeSet<_>>() != sigma.iter().copied().collect() {
            return Err(Error::InvalidDiagram("not a permutation of the nodes".into()));
        }
        for i in 0..ss {
            for j in 0..ss {
                if rd.cartan[sigma[i]][sigma[j]] != rd.cartan[i][j] {
                    return Err(Error::InvalidDiagram("does not preserve the Cartan matrix".into()));
                }
            }
        }
        // component orbit of the first component
        let ncomp = rd.components.len();
        let comp_image = |c: usize| rd.component_of_node(sigma[rd.components[c].offset]);
        let mut copies = 1;
        let mut c = comp_image(0);
        while c != 0 {
            copies += 1;
            c = comp_image(c);
        }
        if inner != InnerTwist::Trivial && copies != ncomp {
            return Err(Error::InvalidDiagram(
                "an inner twist needs the diagram to permute the components transitively".into(),
            ));
        }

        // sigma on lattice coordinates
        let mut sigma_mat = vec![0i64; dim * dim];
        for (k, row) in rd.basis().iter().enumerate() {
            let mut img = row.clone();
            for i in 0..ss {
                img[sigma[i]] = row[i];
            }
            let col = rd
                .from_ambient(&img)
                .ok_or_else(|| Error::InvalidDiagram("does not preserve the lattice".into()))?;
            for a in 0..dim {
                sigma_mat[a * dim + k] = col[a];
            }
        }

        let aff = AffineWeyl::new(rd.clone());
        let sigma_aff: Vec<usize> = (0..aff.num_nodes())
            .map(|s| {
                let node = aff.nodes[s];
                if node.label == 0 {
                    aff.node_index(comp_image(node.component), 0)
                } else {
                    let i = rd.components[node.component].offset + node.label - 1;
                    aff.finite_node(sigma[i])
                }
            })
            .collect();

        let mut fr = Frobenius {
            tits: AffineTits::new(aff.clone()).or_else(|_| {
                let cands = extra_candidates(&aff);
                let choice = cands.iter().map(|_| SignVector::ZERO).collect();
                AffineTits::with_choice(aff.clone(), cands, choice)
            })?,
            sigma,
            sigma_mat,
            sigma_aff,
            inner,
            copies,
            beta: vec![Q::from_integer(0); dim],
            z: rd.weyl_identity(),
            g_z: ft_identity(&rd),
            z0: rd.weyl_identity(),
            d_even: false,
            nu0_power: None,
            omega_ad_order: 1,
            coinvariant_order: 1,
            k: 1,
            eta: rd.zero(),
            sigma_star_aff: Vec::new(),
            stable_pinning: true,
        };
        fr.choose_stable_pinning()?;
        fr.setup_inner()?;
        fr.sigma_star_aff = (0..fr.aff().num_nodes())
            .map(|s| {
                let img = fr.sigma_star_ext(fr.aff().gen(s));
                (0..fr.aff().num_nodes())
                    .find(|&t| *fr.aff().gen(t) == img)
                    .ok_or_else(|| Error::Check("twisted action does not preserve the simple reflections".into()))
            })
            .collect::<Result<_>>()?;
        Ok(fr)
    }

    pub fn rd(&self) -> &RootDatum {
        &self.tits.aff.rd
    }

    pub fn aff(&self) -> &AffineWeyl {
        &self.tits.aff
    }

    fn choose_stable_pinning(&mut self) -> Result<()> {
        let aff = self.aff().clone();
        let cands = extra_candidates(&aff);
        let ncomp = self.rd().components.len();
        let mut choice: Vec<Option<SignVector>> = vec![None; ncomp];
        let comp_image = |rd: &RootDatum, c: usize| rd.component_of_node(self.sigma[rd.components[c].offset]);
        for c0 in 0..ncomp {
            if choice[c0].is_some() {
                continue;
            }
            let mut orbit = vec![c0];
            let mut c = comp_image(self.rd(), c0);
            while c != c0 {
                orbit.push(c);
                c = comp_image(self.rd(), c);
            }
            let len = orbit.len();
            let stable = cands[c0]
                .iter()
                .copied()
                .find(|&e| (0..len).fold(e, |acc, _| self.sigma_sign(acc)) == e);
            let e = match stable {
                Some(e) => e,
                None => {
                    self.stable_pinning = false;
                    *cands[c0].first().ok_or(Error::NoLift(c0))?
                }
            };
            let mut cur = e;
            for &c in &orbit {
                choice[c] = Some(cur);
                cur = self.sigma_sign(cur);
            }
        }
        let choice = choice.into_iter().map(Option::unwrap).collect();
        self.tits = AffineTits::with_choice(aff, cands, choice)?;
        Ok(())
    }

    fn setup_inner(&mut self) -> Result<()> {
        let rd = self.rd().clone();
        let c0 = rd.components[0];
        let to_rd = |w: &WeylElt| rd.weyl_from_word(&w.word().iter().map(|&i| i as usize).collect::<Vec<_>>());
        self.d_even = c0.kind == RootType::D && c0.rank % 2 == 0;
        let gen = table_generator(c0.kind, c0.rank);
        if let Some(g) = gen {
            let rd_ad = RootDatum::simple(c0.kind, c0.rank, Isogeny::Ad)?;
            self.z0 = to_rd(&AffineWeyl::new(rd_ad).nu(g - 1)?.w);
        }
        let InnerTwist::Nu { node, power } = self.inner else {
            return Ok(());
        };
        if node >= c0.rank {
            return Err(Error::InvalidInner(format!("node {} outside the first component", node + 1)));
        }
        let rd_ad = RootDatum::simple(c0.kind, c0.rank, Isogeny::Ad)?;
        let aff_ad = AffineWeyl::new(rd_ad.clone());
        let nu = aff_ad.pow(&aff_ad.nu(node)?, power);
        let elements = aff_ad.omega_elements()?;
        self.omega_ad_order = elements.len();

        // sigma^copies restricted to the first component
        let mut perm0: Vec<usize> = (0..c0.rank).collect();
        for _ in 0..self.copies {
            perm0 = perm0.iter().map(|&i| self.sigma[i]).collect();
        }
        let sigma0 = |x: &ExtAffElt| -> ExtAffElt {
            let amb = rd_ad.to_ambient(&x.lambda);
            let mut img = amb.clone();
            for i in 0..c0.rank {
                img[perm0[i]] = amb[i];
            }
            let word: Vec<usize> = x.w.word().iter().map(|&i| perm0[i as usize]).collect();
            ExtAffElt { lambda: rd_ad.from_ambient(&img).unwrap(), w: rd_ad.weyl_from_word(&word) }
        };
        let mut sub: HashSet<ExtAffElt> = HashSet::from([aff_ad.identity()]);
        let gens: Vec<ExtAffElt> = elements
            .iter()
            .map(|t| aff_ad.mul(t, &aff_ad.inverse(&sigma0(t))))
            .collect();
        loop {
            let before = sub.len();
            let cur: Vec<ExtAffElt> = sub.iter().cloned().collect();
            for a in &cur {
                for g in &gens {
                    sub.insert(aff_ad.mul(a, g));
                }
            }
            if sub.len() == before {
                break;
            }
        }
        self.coinvariant_order = self.omega_ad_order / sub.len();

        self.z = to_rd(&nu.w);
        if self.d_even {
            self.g_z = ft_lift(&self.z);
        } else {
            let gen = gen
                .ok_or_else(|| Error::InvalidInner("adjoint length-zero group is trivial".into()))?;
            let nu0 = aff_ad.nu(gen - 1)?;
            let m = (0..self.omega_ad_order)
                .find(|&m| aff_ad.pow(&nu0, m) == nu)
                .ok_or_else(|| Error::InvalidInner("not a power of the generator".into()))?;
            if m >= self.coinvariant_order {
                return Err(Error::InvalidInner(format!(
                    "{} is nu_0^{m}, outside the {} coinvariant classes",
                    self.inner, self.coinvariant_order
                )));
            }
            self.nu0_power = Some(m);
            self.g_z = ft_pow(&rd, &ft_lift(&self.z0), m);
        }

        let mut beta = vec![Q::from_integer(0); rd.dim()];
        for (i, v) in rd_ad.to_ambient(&nu.lambda).into_iter().enumerate() {
            beta[i] = v;
        }
        self.beta = beta;

        // least k with k beta in the semisimple projection of the lattice
        let ss = rd.rank();
        let den = rd
            .basis()
            .iter()
            .flat_map(|r| r[..ss].iter())
            .chain(self.beta[..ss].iter())
            .fold(1i64, |acc, x| num_integer::lcm(acc, *x.denom()));
        let a: Vec<Vec<i64>> = rd
            .basis()
            .iter()
            .map(|r| r[..ss].iter().map(|x| (*x * q(den)).to_integer()).collect())
            .collect();
        for k in 1..=self.omega_ad_order as i64 {
            let y: Vec<i64> = self.beta[..ss].iter().map(|x| (*x * q(den * k)).to_integer()).collect();
            if let Some(eta) = lattice::solve_integer(&a, ss, &y) {
                self.k = k;
                self.eta = eta;
                break;
            }
        }
        Ok(())
    }

    // ---- sigma ----

    pub fn sigma_lattice(&self, x: &[i64]) -> Vec<i64> {
        let n = x.len();
        (0..n)
            .map(|a| (0..n).map(|b| self.sigma_mat[a * n + b] * x[b]).sum())
            .collect()
    }

    pub fn sigma_sign(&self, e: SignVector) -> SignVector {
        let n = self.rd().dim();
        let mut out = 0u64;
        for a in 0..n {
            let s: i64 = (0..n).filter(|&b| e.bit(b)).map(|b| self.sigma_mat[a * n + b]).sum();
            if s.rem_euclid(2) == 1 {
                out |= 1 << a;
            }
        }
        SignVector(out)
    }

    pub fn sigma_weyl(&self, w: &WeylElt) -> WeylElt {
        let word: Vec<usize> = w.word().iter().map(|&i| self.sigma[i as usize]).collect();
        self.rd().weyl_from_word(&word)
    }

    pub fn sigma_ext(&self, x: &ExtAffElt) -> ExtAffElt {
        ExtAffElt { lambda: self.sigma_lattice(&x.lambda), w: self.sigma_weyl(&x.w) }
    }

    pub fn sigma_fin(&self, x: &TitsFinElt) -> TitsFinElt {
        TitsFinElt { eps: self.sigma_sign(x.eps), w: self.sigma_weyl(&x.w) }
    }

    pub fn sigma_tits(&self, x: &TitsElt) -> TitsElt {
        TitsElt {
            lambda: self.sigma_lattice(&x.lambda),
            eps: self.sigma_sign(x.eps),
            w: self.sigma_weyl(&x.w),
        }
    }

    // ---- sigma* ----

    /// `beta - w(beta)` in lattice coordinates.
    fn beta_defect(&self, w: &WeylElt) -> Vec<i64> {
        let rd = self.rd();
        let wb = rd.act_ambient(w, &self.beta);
        let d: Vec<Q> = self.beta.iter().zip(&wb).map(|(a, b)| *a - *b).collect();
        rd.from_ambient(&d).expect("beta - w beta lies in the coroot lattice")
    }

    pub fn sigma_star_ext(&self, x: &ExtAffElt) -> ExtAffElt {
        let rd = self.rd();
        let zi = rd.weyl_inverse(&self.z);
        let wp = rd.weyl_mul(&rd.weyl_mul(&self.z, &self.sigma_weyl(&x.w)), &zi);
        let zl = self.z.act(&self.sigma_lattice(&x.lambda));
        let d = self.beta_defect(&wp);
        ExtAffElt { lambda: zl.iter().zip(&d).map(|(a, b)| a + b).collect(), w: wp }
    }

    /// `sigma*(n_lambda t_eps n_w) = n_{z sigma lambda} t_{z sigma eps}
    /// n_{beta - w' beta} g_z n_{sigma w} g_z^-1`.
    pub fn sigma_star(&self, x: &TitsElt) -> TitsElt {
        let rd = self.rd();
        let conj = ft_mul(
            rd,
            &ft_mul(rd, &self.g_z, &ft_lift(&self.sigma_weyl(&x.w))),
            &ft_inverse(rd, &self.g_z),
        );
        let zl = self.z.act(&self.sigma_lattice(&x.lambda));
        let d = self.beta_defect(&conj.w);
        TitsElt {
            lambda: zl.iter().zip(&d).map(|(a, b)| a + b).collect(),
            eps: self.z.act_sign(self.sigma_sign(x.eps)) + conj.eps,
            w: conj.w,
        }
    }

    pub fn sigma_star_pow(&self, x: &TitsElt, l: usize) -> TitsElt {
        (0..l).fold(x.clone(), |acc, _| self.sigma_star(&acc))
    }

    /// Orbits of the twisted action on the affine nodes, by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.aff().num_nodes();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut orbit = vec![s];
            seen[s] = true;
            let mut t = self.sigma_star_aff[s];
            while t != s {
                seen[t] = true;
                orbit.push(t);
                t = self.sigma_star_aff[t];
            }
            out.push(orbit);
        }
        out
    }

    /// Representative of an orbit: least finite node, else least node.
    pub fn representative(&self, orbit: &[usize]) -> usize {
        orbit
            .iter()
            .copied()
            .filter(|&s| !self.aff().is_extra(s))
            .min()
            .unwrap_or_else(|| *orbit.iter().min().unwrap())
    }

    /// `m(s) = (sigma*)^l (n_{s_X})` with `sigma*^l(s_X) = s`.
    pub fn stable_lifts(&self) -> Vec<TitsElt> {
        let mut lifts = vec![None; self.aff().num_nodes()];
        for orbit in self.orbits() {
            let rep = self.representative(&orbit);
            let mut cur = self.tits.lift(rep).clone();
            let mut s = rep;
            for _ in 0..orbit.len() {
                lifts[s] = Some(cur.clone());
                cur = self.sigma_star(&cur);
                s = self.sigma_star_aff[s];
            }
        }
        lifts.into_iter().map(Option::unwrap).collect()
    }

    /// Length-zero elements fixed by the twisted action (finite case).
    pub fn omega_fixed(&self) -> Result<Vec<ExtAffElt>> {
        Ok(self
            .aff()
            .omega_elements()?
            .into_iter()
            .filter(|t| self.sigma_star_ext(t) == *t)
            .collect())
    }

    /// Stable lift of a fixed length-zero element `t_lambda y`:
    /// `n_lambda m(y)` with `m(y) = m(y1) sigma(m(y1)) ...`.
    pub fn m_tau(&self, tau: &ExtAffElt) -> Result<TitsElt> {
        let rd = self.rd();
        let c0 = rd.components[0];
        let word1: Vec<usize> = tau
            .w
            .word()
            .iter()
            .map(|&i| i as usize)
            .filter(|i| c0.nodes().contains(i))
            .collect();
        let y1 = rd.weyl_from_word(&word1);
        let m1 = if self.d_even || self.z0.is_identity() {
            ft_lift(&y1)
        } else {
            let ord = rd.weyl_order(&self.z0);
            let j = (0..ord)
                .find(|&j| rd.weyl_pow(&self.z0, j) == y1)
                .ok_or_else(|| Error::Check("length-zero part is not a power of z_0".into()))?;
            ft_pow(rd, &ft_lift(&self.z0), j)
        };
        let mut parts = Vec::new();
        let mut cur = m1;
        for _ in 0..self.copies {
            parts.push(cur.clone());
            cur = self.sigma_fin(&cur);
        }
        let my = parts.iter().fold(ft_identity(rd), |acc, p| ft_mul(rd, &acc, p));
        Ok(t_mul(rd, &t_translation(rd, &tau.lambda), &affine_tits::t_from_fin(rd, &my)))
    }

    pub fn relative(&self) -> Result<RelativeData> {
        RelativeData::new(self)
    }

    /// `m(s) = m(s_1) ... m(s_l)` along the reduced word of `w_X`.
    pub fn relative_lifts(&self, rel: &RelativeData) -> Vec<TitsElt> {
        let lifts = self.stable_lifts();
        rel.simples
            .iter()
            .map(|s| t_product(self.rd(), s.word.iter().map(|&t| &lifts[t])))
            .collect()
    }

    /// Basis of `S_2`: sign vectors in the coroot span fixed by `z sigma`.
    pub fn s2_basis(&self) -> Vec<u64> {
        let rd = self.rd();
        let span = lattice::f2_span((0..rd.num_pos_roots()).map(|r| rd.coroot_sign(r).0));
        lattice::f2_basis(
            span.into_iter()
                .filter(|&e| self.z.act_sign(self.sigma_sign(SignVector(e))) == SignVector(e)),
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RelativeSimple {
    pub orbit: Vec<usize>,
    pub word: Vec<usize>,
    #[serde(skip)]
    pub element: ExtAffElt,
    pub length: usize,
    pub c_a: [i64; 2],
    pub coroot: Vec<i64>,
    pub shape: String,
}

#[derive(Debug, Clone)]
pub struct RelativeData {
    pub simples: Vec<RelativeSimple>,
    pub infinite_orbits: Vec<Vec<usize>>,
    pub omega: Vec<ExtAffElt>,
}

impl RelativeData {
    fn new(fr: &Frobenius) -> Result<RelativeData> {
        let aff = fr.aff();
        let rd = fr.rd();
        let mut simples = Vec::new();
        let mut infinite_orbits = Vec::new();
        for orbit in fr.orbits() {
            let mut sorted = orbit.clone();
            sorted.sort();
            let coroots: Vec<&[i64]> = sorted.iter().map(|&s| rd.coroot(aff.node_root(s).root)).collect();
            let gram: Vec<Vec<Q>> = coroots
                .iter()
                .map(|a| coroots.iter().map(|b| rd.inner_product(a, b)).collect())
                .collect();
            if !positive_definite(&gram) {
                infinite_orbits.push(sorted);
                continue;
            }
            let mut x = aff.identity();
            let mut word = Vec::new();
            'grow: loop {
                for &s in &sorted {
                    if !aff.is_right_descent(&x, s) {
                        x = aff.mul(&x, aff.gen(s));
                        word.push(s);
                        continue 'grow;
                    }
                }
                break;
            }
            let total: Q = gram[0].iter().copied().sum();
            let c_a = gram[0][0] / total;
            let mut sum = vec![Q::from_integer(0); rd.dim()];
            for c in &coroots {
                for (a, b) in sum.iter_mut().zip(c.iter()) {
                    *a += q(*b);
                }
            }
            let coroot = lattice::to_integers(&sum.iter().map(|v| *v * c_a).collect::<Vec<_>>())
                .ok_or_else(|| Error::Check("relative coroot is not integral".into()))?;
            let shape = if c_a == q(1) {
                format!("A1^{}", sorted.len())
            } else if c_a == q(2) && sorted.len() == 2 {
                "A2".to_string()
            } else {
                format!("c={}", c_a)
            };
            simples.push(RelativeSimple {
                orbit: sorted,
                length: word.len(),
                word,
                element: x,
                c_a: [*c_a.numer(), *c_a.denom()],
                coroot,
                shape,
            });
        }
        let omega = match fr.omega_fixed() {
            Ok(o) => o,
            Err(_) => {
                // infinite length-zero group: fixed elements among small generator combinations
                let gens = aff.omega_generators();
                let mut out = HashSet::new();
                for g in &gens {
                    for t in [g.clone(), aff.inverse(g), aff.identity()] {
                        if fr.sigma_star_ext(&t) == t {
                            out.insert(t);
                        }
                    }
                }
                let mut v: Vec<ExtAffElt> = out.into_iter().collect();
                v.sort();
                v
            }
        };
        Ok(RelativeData { simples, infinite_orbits, omega })
    }

    /// Relative simple reflections that are left descents of `x`.
    pub fn is_left_descent(&self, aff: &AffineWeyl, x: &ExtAffElt, i: usize) -> bool {
        aff.is_left_descent(x, self.simples[i].orbit[0])
    }

    /// `x = s_{i1} ... s_{il} tau` with the least descent taken first.
    pub fn decompose(&self, aff: &AffineWeyl, x: &ExtAffElt) -> (Vec<usize>, ExtAffElt) {
        let mut word = Vec::new();
        let mut cur = x.clone();
        'walk: loop {
            for i in 0..self.simples.len() {
                if self.is_left_descent(aff, &cur, i) {
                    word.push(i);
                    cur = aff.mul(&self.simples[i].element, &cur);
                    continue 'walk;
                }
            }
            return (word, cur);
        }
    }

    pub fn length(&self, aff: &AffineWeyl, x: &ExtAffElt) -> usize {
        self.decompose(aff, x).0.len()
    }

    /// Order of `s_i s_j` in the relative group, `None` past 12.
    pub fn braid_order(&self, aff: &AffineWeyl, i: usize, j: usize) -> Option<usize> {
        let p = aff.mul(&self.simples[i].element, &self.simples[j].element);
        let mut cur = p.clone();
        for m in 1..=12 {
            if cur == aff.identity() {
                return Some(m);
            }
            cur = aff.mul(&cur, &p);
        }
        None
    }

    /// Elements reachable by at most `radius` relative generators.
    pub fn ball(&self, aff: &AffineWeyl, radius: usize) -> Vec<ExtAffElt> {
        let mut gens: Vec<ExtAffElt> = self.simples.iter().map(|s| s.element.clone()).collect();
        gens.extend(self.omega.iter().filter(|t| **t != aff.identity()).cloned());
        let mut seen: HashSet<ExtAffElt> = HashSet::from([aff.identity()]);
        let mut out = vec![aff.identity()];
        let mut layer = out.clone();
        for _ in 0..radius {
            let mut next = Vec::new();
            for x in &layer {
                for g in &gens {
                    let y = aff.mul(x, g);
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
}

/// Leading principal minors of a symmetric rational matrix are positive.
pub fn positive_definite(m: &[Vec<Q>]) -> bool {
    let n = m.len();
    let mut a = m.to_vec();
    for k in 0..n {
        if a[k][k] <= q(0) {
            return false;
        }
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            for j in k..n {
                let v = a[k][j];
                a[i][j] -= f * v;
            }
        }
    }
    true
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitReport {
    pub nodes: Vec<usize>,
    pub representative: usize,
    pub power_holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct OmegaReport {
    pub tau: ExtAffView,
    pub sigma_star_equals_sigma: bool,
    pub fixed: bool,
    pub m_tau: Option<TitsView>,
    pub m_tau_fixed: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RelativeReport {
    pub orbit: Vec<usize>,
    pub word: Vec<usize>,
    pub length: usize,
    pub c_a: [i64; 2],
    pub shape: String,
    pub coroot: Vec<i64>,
    pub m_s: TitsView,
    pub involution_fixed: bool,
    pub square_holds: bool,
    pub fixed_holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DescentReport {
    pub sigma: Vec<usize>,
    pub inner: String,
    pub z: Vec<usize>,
    pub beta: Vec<[i64; 2]>,
    pub k: i64,
    pub eta: Vec<i64>,
    pub g_z: TitsFinView,
    pub omega_ad_order: usize,
    pub coinvariant_order: usize,
    pub nu0_power: Option<usize>,
    pub stable_pinning: bool,
    pub extra_choice: Vec<Vec<u8>>,
    pub sigma_star_nodes: Vec<usize>,
    pub multiplicative_pairs: usize,
    pub multiplicative: bool,
    pub orbits: Vec<OrbitReport>,
    pub stable_coxeter: CoxeterReport,
    pub stable_equivariant: bool,
    pub omega: Vec<OmegaReport>,
    pub relative: Vec<RelativeReport>,
    pub infinite_orbits: Vec<Vec<usize>>,
    pub s2_dim: usize,
    pub relative_coroot_dim: usize,
    pub s2_exceeds_coroots: bool,
    pub kernel_radius: usize,
    pub kernel_in_s2: bool,
    pub kernel_span_dim: usize,
    pub braid_orders: Vec<Vec<Option<usize>>>,
    pub cross_section_consistent: bool,
    pub additivity_pairs: usize,
    pub additivity_holds: bool,
    pub holds: bool,
}

impl Frobenius {
    /// Every check on the twisted action; `radius` bounds the sampled balls.
    pub fn check(&self, radius: usize, seed: u64) -> Result<DescentReport> {
        let rd = self.rd();
        let aff = self.aff();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);

        // multiplicativity on a ball of the Tits group
        let ball = word_ball(rd, &self.tits.ball_generators(), radius.min(3));
        let mut pairs: Vec<(usize, usize)> = (0..ball.len())
            .flat_map(|i| (0..ball.len()).map(move |j| (i, j)))
            .collect();
        pairs.shuffle(&mut rng);
        pairs.truncate(1000);
        pairs.sort();
        let multiplicative = pairs.iter().all(|&(i, j)| {
            self.sigma_star(&t_mul(rd, &ball[i], &ball[j]))
                == t_mul(rd, &self.sigma_star(&ball[i]), &self.sigma_star(&ball[j]))
        });

        let lifts = self.stable_lifts();
        let orbits: Vec<OrbitReport> = self
            .orbits()
            .into_iter()
            .map(|orbit| {
                let rep = self.representative(&orbit);
                let n = self.tits.lift(rep);
                let power_holds = self.sigma_star_pow(n, orbit.len()) == *n;
                OrbitReport { nodes: orbit, representative: rep, power_holds }
            })
            .collect();
        let stable_coxeter = check_coxeter(aff, &lifts);
        let stable_equivariant =
            (0..lifts.len()).all(|s| self.sigma_star(&lifts[s]) == lifts[self.sigma_star_aff[s]]);

        let mut omega = Vec::new();
        if let Ok(all) = aff.omega_elements() {
            for t in all {
                let fixed = self.sigma_star_ext(&t) == t;
                let (m_tau, m_tau_fixed) = if fixed {
                    let m = self.m_tau(&t)?;
                    let ok = self.sigma_star(&m) == m && t_project(&m) == t;
                    (Some(t_view(rd, &m)), Some(ok))
                } else {
                    (None, None)
                };
                omega.push(OmegaReport {
                    tau: aff.view(&t),
                    sigma_star_equals_sigma: self.sigma_star_ext(&t) == self.sigma_ext(&t),
                    fixed,
                    m_tau,
                    m_tau_fixed,
                });
            }
        }

        let rel = self.relative()?;
        let mut relative = Vec::new();
        let mut m_s_all = Vec::new();
        for (s, m) in rel.simples.iter().zip(self.relative_lifts(&rel)) {
            let square_holds = t_mul(rd, &m, &m) == t_torus(rd, SignVector::from_coords(&s.coroot));
            let fixed_holds = self.sigma_star(&m) == m;
            let involution_fixed = aff.mul(&s.element, &s.element) == aff.identity()
                && self.sigma_star_ext(&s.element) == s.element;
            relative.push(RelativeReport {
                orbit: s.orbit.clone(),
                word: s.word.clone(),
                length: s.length,
                c_a: s.c_a,
                shape: s.shape.clone(),
                coroot: s.coroot.clone(),
                m_s: t_view(rd, &m),
                involution_fixed,
                square_holds,
                fixed_holds,
            });
            m_s_all.push(m);
        }

        let s2_basis = self.s2_basis();
        // relative coroots and their images under the relative Weyl group
        let mut rel_coroots: BTreeSet<u64> =
            rel.simples.iter().map(|s| SignVector::from_coords(&s.coroot).0).collect();
        let movers: Vec<WeylElt> = rel
            .simples
            .iter()
            .map(|s| s.element.w.clone())
            .chain(rel.omega.iter().map(|t| t.w.clone()))
            .collect();
        loop {
            let before = rel_coroots.len();
            let cur: Vec<u64> = rel_coroots.iter().copied().collect();
            for v in cur {
                for w in &movers {
                    rel_coroots.insert(w.act_sign(SignVector(v)).0);
                }
            }
            if rel_coroots.len() == before {
                break;
            }
        }
        let rel_dim = lattice::f2_rank(rel_coroots.iter().copied());

        // kernel of the fixed Tits group over the relative Weyl group
        let mut gens: Vec<TitsElt> = m_s_all.clone();
        for t in &rel.omega {
            if *t != aff.identity() {
                gens.push(self.m_tau(t)?);
            }
        }
        gens.extend(s2_basis.iter().map(|&e| t_torus(rd, SignVector(e))));
        let tball = word_ball(rd, &gens, radius.min(6));
        let kernel: Vec<u64> = tball
            .iter()
            .filter(|x| t_project(x) == aff.identity())
            .map(|x| x.eps.0)
            .collect();
        let kernel_in_s2 = kernel.iter().all(|&e| lattice::f2_contains(&s2_basis, e));
        let kernel_span_dim = lattice::f2_rank(kernel.iter().copied());

        // products of m(s) along length-additive relative words depend only on the element
        let mut sections: std::collections::HashMap<ExtAffElt, TitsElt> =
            std::collections::HashMap::from([(aff.identity(), t_identity(rd))]);
        let mut layer = vec![aff.identity()];
        let mut cross_section_consistent = true;
        for _ in 0..radius.min(5) {
            let mut next = Vec::new();
            for x in &layer {
                let lx = rel.length(aff, x);
                for (i, s) in rel.simples.iter().enumerate() {
                    let y = aff.mul(x, &s.element);
                    if rel.length(aff, &y) != lx + 1 {
                        continue;
                    }
                    let t = t_mul(rd, &sections[x], &m_s_all[i]);
                    match sections.get(&y) {
                        Some(prev) => cross_section_consistent &= *prev == t,
                        None => {
                            sections.insert(y.clone(), t);
                            next.push(y);
                        }
                    }
                }
            }
            layer = next;
        }
        let braid_orders: Vec<Vec<Option<usize>>> = (0..rel.simples.len())
            .map(|i| (0..rel.simples.len()).map(|j| rel.braid_order(aff, i, j)).collect())
            .collect();

        // length additivity on the relative Weyl group
        let wball = rel.ball(aff, radius.min(4));
        let mut wpairs: Vec<(usize, usize)> = (0..wball.len())
            .flat_map(|i| (0..wball.len()).map(move |j| (i, j)))
            .collect();
        wpairs.shuffle(&mut rng);
        wpairs.truncate(300);
        wpairs.sort();
        let additivity_holds = wpairs.iter().all(|&(i, j)| {
            let (x, y) = (&wball[i], &wball[j]);
            let xy = aff.mul(x, y);
            let rel_add = rel.length(aff, &xy) == rel.length(aff, x) + rel.length(aff, y);
            let abs_add = aff.length(&xy) == aff.length(x) + aff.length(y);
            rel_add == abs_add
        });

        let holds = multiplicative
            && orbits.iter().all(|o| o.power_holds)
            && stable_coxeter.all_hold
            && stable_equivariant
            && omega.iter().all(|o| o.sigma_star_equals_sigma && o.m_tau_fixed.unwrap_or(true))
            && relative.iter().all(|r| r.involution_fixed && r.square_holds && r.fixed_holds)
            && kernel_in_s2
            && kernel_span_dim == s2_basis.len()
            && cross_section_consistent
            && additivity_holds;

        Ok(DescentReport {
            sigma: self.sigma.iter().map(|i| i + 1).collect(),
            inner: self.inner.to_string(),
            z: self.z.labels(),
            beta: self.beta.iter().map(|x| [*x.numer(), *x.denom()]).collect(),
            k: self.k,
            eta: self.eta.clone(),
            g_z: self.g_z.view(rd),
            omega_ad_order: self.omega_ad_order,
            coinvariant_order: self.coinvariant_order,
            nu0_power: self.nu0_power,
            stable_pinning: self.stable_pinning,
            extra_choice: self.tits.extra_choice.iter().map(|e| e.bits(rd.dim())).collect(),
            sigma_star_nodes: self.sigma_star_aff.clone(),
            multiplicative_pairs: pairs.len(),
            multiplicative,
            orbits,
            stable_coxeter,
            stable_equivariant,
            omega,
            relative,
            infinite_orbits: rel.infinite_orbits.clone(),
            s2_dim: s2_basis.len(),
            relative_coroot_dim: rel_dim,
            s2_exceeds_coroots: s2_basis.len() > rel_dim,
            kernel_radius: radius.min(6),
            kernel_in_s2,
            kernel_span_dim,
            braid_orders,
            cross_section_consistent,
            additivity_pairs: wpairs.len(),
            additivity_holds,
            holds,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frob(k: RootType, n: usize, iso: Isogeny, sigma: Vec<usize>, inner: InnerTwist) -> Frobenius {
        Frobenius::new(RootDatum::simple(k, n, iso).unwrap(), sigma, inner).unwrap()
    }

    #[test]
    fn a1_anisotropic_swaps_nodes() {
        let f = frob(RootType::A, 1, Isogeny::Sc, vec![0], InnerTwist::Nu { node: 0, power: 1 });
        assert_eq!(f.sigma_star_aff, vec![1, 0]);
        let rel = f.relative().unwrap();
        assert!(rel.simples.is_empty());
        assert_eq!(rel.infinite_orbits, vec![vec![0, 1]]);
        let r = f.check(4, 0).unwrap();
        assert!(r.holds, "{r:#?}");
    }

    #[test]
    fn trivial_twist_is_sigma() {
        let f = frob(RootType::C, 2, Isogeny::Sc, vec![0, 1], InnerTwist::Trivial);
        let x = f.tits.cross_section(&f.aff().from_word(&[0, 1, 2]));
        assert_eq!(f.sigma_star(&x), x);
        let r = f.check(3, 0).unwrap();
        assert!(r.holds);
        assert!(r.relative.iter().all(|s| s.length == 1));
    }

    #[test]
    fn a3_flip() {
        let f = frob(RootType::A, 3, Isogeny::Sc, vec![2, 1, 0], InnerTwist::Trivial);
        assert!(f.stable_pinning);
        let r = f.check(4, 0).unwrap();
        assert!(r.holds, "{r:#?}");
        let mut lens: Vec<usize> = r.relative.iter().map(|s| s.length).collect();
        lens.sort();
        assert_eq!(lens, vec![1, 1, 2]);
    }

    #[test]
    fn a2_flip_has_no_sign_stable_pinning() {
        let f = frob(RootType::A, 2, Isogeny::Sc, vec![1, 0], InnerTwist::Trivial);
        assert!(!f.stable_pinning);
    }

    #[test]
    fn rejects_bad_labels() {
        let rd = RootDatum::simple(RootType::A, 3, Isogeny::Sc).unwrap();
        // with the flip the coinvariants have order 2, so nu_0^2 is not a label
        let e = Frobenius::new(rd.clone(), vec![2, 1, 0], InnerTwist::Nu { node: 0, power: 2 });
        assert!(matches!(e, Err(Error::InvalidInner(_))));
        assert!(Frobenius::new(rd, vec![0, 1, 2], InnerTwist::Nu { node: 1, power: 1 }).is_ok());
        let c2 = RootDatum::simple(RootType::C, 2, Isogeny::Sc).unwrap();
        let e = Frobenius::new(c2, vec![0, 1], InnerTwist::Nu { node: 0, power: 1 });
        assert!(matches!(e, Err(Error::InvalidInner(_))));
    }

    #[test]
    fn positive_definite_gram() {
        assert!(positive_definite(&[vec![q(2), q(-1)], vec![q(-1), q(2)]]));
        assert!(!positive_definite(&[vec![q(2), q(-2)], vec![q(-2), q(2)]]));
    }
}
