//! Iwahori-Hecke algebra of the relative Iwahori-Weyl group.
//!
//! Coefficients are integer polynomials in `q`, stored ascending. The basis
//! `T_w` is indexed by elements of the fixed group `W`, written as a word in
//! the relative simple reflections followed by a length-zero element.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::affine_tits::{t_inverse, t_mul, t_project, TitsElt};
use crate::descent::{Frobenius, RelativeData};
use crate::error::{Error, Result};
use crate::iwahori_weyl::{AffineWeyl, ExtAffElt, ExtAffView};
use crate::lattice;

pub type Poly = Vec<i64>;

fn trim(mut p: Poly) -> Poly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

pub fn poly_add(a: &[i64], b: &[i64]) -> Poly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    trim(out)
}

pub fn poly_mul(a: &[i64], b: &[i64]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// `q^n`.
pub fn q_pow(n: usize) -> Poly {
    let mut p = vec![0; n + 1];
    p[n] = 1;
    p
}

/// `q^n - 1`.
pub fn q_pow_minus_one(n: usize) -> Poly {
    poly_add(&q_pow(n), &[-1])
}

pub fn poly_eval_one(p: &[i64]) -> i64 {
    p.iter().sum()
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HeckeElt {
    pub terms: BTreeMap<ExtAffElt, Poly>,
}

impl HeckeElt {
    pub fn zero() -> HeckeElt {
        HeckeElt::default()
    }

    pub fn basis(x: &ExtAffElt) -> HeckeElt {
        HeckeElt { terms: BTreeMap::from([(x.clone(), vec![1])]) }
    }

    pub fn add_term(&mut self, x: ExtAffElt, c: &[i64]) {
        let entry = self.terms.entry(x.clone()).or_default();
        *entry = poly_add(entry, c);
        if entry.is_empty() {
            self.terms.remove(&x);
        }
    }

    pub fn add(&self, other: &HeckeElt) -> HeckeElt {
        let mut out = self.clone();
        for (x, c) in &other.terms {
            out.add_term(x.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &[i64]) -> HeckeElt {
        let mut out = HeckeElt::zero();
        for (x, d) in &self.terms {
            out.add_term(x.clone(), &poly_mul(c, d));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct TermView {
    pub length: usize,
    pub word: Vec<usize>,
    pub tau: ExtAffView,
    pub coeff: Poly,
}

#[derive(Debug, Clone)]
pub struct HeckeAlgebra {
    pub aff: AffineWeyl,
    pub rel: RelativeData,
    /// `L(s) = l(w_X)` per relative simple reflection.
    pub params: Vec<usize>,
}

impl HeckeAlgebra {
    pub fn new(fr: &Frobenius) -> Result<HeckeAlgebra> {
        let rel = fr.relative()?;
        let params = rel.simples.iter().map(|s| s.length).collect();
        Ok(HeckeAlgebra { aff: fr.aff().clone(), rel, params })
    }

    pub fn num_simple(&self) -> usize {
        self.params.len()
    }

    pub fn length(&self, x: &ExtAffElt) -> usize {
        self.rel.length(&self.aff, x)
    }

    pub fn decompose(&self, x: &ExtAffElt) -> (Vec<usize>, ExtAffElt) {
        self.rel.decompose(&self.aff, x)
    }

    pub fn simple(&self, i: usize) -> &ExtAffElt {
        &self.rel.simples[i].element
    }

    pub fn identity(&self) -> HeckeElt {
        HeckeElt::basis(&self.aff.identity())
    }

    /// `T_s T_w`, extended linearly in `y`.
    pub fn mul_simple(&self, i: usize, y: &HeckeElt) -> HeckeElt {
        let s = self.simple(i);
        let l = self.params[i];
        let mut out = HeckeElt::zero();
        for (w, c) in &y.terms {
            let sw = self.aff.mul(s, w);
            if self.length(&sw) > self.length(w) {
                out.add_term(sw, c);
            } else {
                out.add_term(w.clone(), &poly_mul(&q_pow_minus_one(l), c));
                out.add_term(sw, &poly_mul(&q_pow(l), c));
            }
        }
        out
    }

    /// `T_tau T_w = T_{tau w}` for length-zero `tau`.
    pub fn mul_tau(&self, tau: &ExtAffElt, y: &HeckeElt) -> HeckeElt {
        let mut out = HeckeElt::zero();
        for (w, c) in &y.terms {
            out.add_term(self.aff.mul(tau, w), c);
        }
        out
    }

    /// `T_x T_y` by recursion on the reduced word of each left term.
    pub fn mul(&self, x: &HeckeElt, y: &HeckeElt) -> HeckeElt {
        let mut out = HeckeElt::zero();
        for (w, c) in &x.terms {
            let (word, tau) = self.decompose(w);
            let mut acc = self.mul_tau(&tau, y);
            for &i in word.iter().rev() {
                acc = self.mul_simple(i, &acc);
            }
            out = out.add(&acc.scale(c));
        }
        out
    }

    /// Product of `T_s` along a word, applied to `T_e`.
    pub fn word_product(&self, word: &[usize]) -> HeckeElt {
        word.iter().rev().fold(self.identity(), |acc, &i| self.mul_simple(i, &acc))
    }

    pub fn view(&self, x: &HeckeElt) -> Vec<TermView> {
        let mut out: Vec<TermView> = x
            .terms
            .iter()
            .map(|(w, c)| {
                let (word, tau) = self.decompose(w);
                TermView { length: word.len(), word, tau: self.aff.view(&tau), coeff: c.clone() }
            })
            .collect();
        out.sort();
        out
    }

    /// Elements of relative length at most `max_len` reachable in as many steps.
    pub fn short_elements(&self, max_len: usize) -> Vec<ExtAffElt> {
        let mut v: Vec<ExtAffElt> = self
            .rel
            .ball(&self.aff, max_len)
            .into_iter()
            .filter(|x| self.length(x) <= max_len)
            .collect();
        v.sort_by_cached_key(|x| {
            let (word, tau) = self.decompose(x);
            (word.len(), word, tau)
        });
        v
    }

    /// All reduced words in the relative simple reflections.
    pub fn reduced_words(&self, x: &ExtAffElt) -> Vec<Vec<usize>> {
        if self.length(x) == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for i in 0..self.num_simple() {
            if self.rel.is_left_descent(&self.aff, x, i) {
                let rest = self.aff.mul(self.simple(i), x);
                for mut w in self.reduced_words(&rest) {
                    w.insert(0, i);
                    out.push(w);
                }
            }
        }
        out
    }
}

/// Setting `q = 1`.
pub fn specialize_q1(x: &HeckeElt) -> BTreeMap<ExtAffElt, i64> {
    x.terms
        .iter()
        .map(|(w, c)| (w.clone(), poly_eval_one(c)))
        .filter(|(_, c)| *c != 0)
        .collect()
}

/// Product in the group ring.
pub fn group_ring_mul(
    aff: &AffineWeyl,
    a: &BTreeMap<ExtAffElt, i64>,
    b: &BTreeMap<ExtAffElt, i64>,
) -> BTreeMap<ExtAffElt, i64> {
    let mut out: BTreeMap<ExtAffElt, i64> = BTreeMap::new();
    for (x, c) in a {
        for (y, d) in b {
            *out.entry(aff.mul(x, y)).or_default() += c * d;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

// ---- Howe-Tits constants ----

#[derive(Debug, Clone, Serialize)]
pub struct ConstantRecord {
    pub kind: String,
    pub tau: usize,
    pub other: usize,
    pub value: Vec<u8>,
    pub in_s2: bool,
    pub identity_holds: bool,
}

/// Stable lifts of the generators of the fixed group.
#[derive(Debug, Clone)]
pub struct StableSection {
    pub simple: Vec<TitsElt>,
    pub omega: Vec<ExtAffElt>,
    pub omega_lifts: Vec<TitsElt>,
    pub s2_basis: Vec<u64>,
}

impl StableSection {
    pub fn new(fr: &Frobenius, rel: &RelativeData) -> Result<StableSection> {
        let omega = rel.omega.clone();
        let omega_lifts = omega.iter().map(|t| fr.m_tau(t)).collect::<Result<_>>()?;
        Ok(StableSection { simple: fr.relative_lifts(rel), omega, omega_lifts, s2_basis: fr.s2_basis() })
    }

    fn omega_index(&self, t: &ExtAffElt) -> Option<usize> {
        self.omega.iter().position(|x| x == t)
    }
}

/// Constants `c_{tau,tau'}` and `c_{tau,s}`; each is checked to lie in `S_2`.
pub fn howe_tits_constants(alg: &HeckeAlgebra, sec: &StableSection) -> Result<Vec<ConstantRecord>> {
    let aff = &alg.aff;
    let rd = &aff.rd;
    let mut out = Vec::new();
    let in_s2 = |c: &TitsElt| {
        t_project(c) == aff.identity() && lattice::f2_contains(&sec.s2_basis, c.eps.0)
    };
    for (i, t) in sec.omega.iter().enumerate() {
        for (j, t2) in sec.omega.iter().enumerate() {
            let Some(k) = sec.omega_index(&aff.mul(t, t2)) else { continue };
            let c = t_mul(
                rd,
                &t_mul(rd, &sec.omega_lifts[i], &sec.omega_lifts[j]),
                &t_inverse(rd, &sec.omega_lifts[k]),
            );
            let identity_holds =
                t_mul(rd, &sec.omega_lifts[i], &sec.omega_lifts[j]) == t_mul(rd, &c, &sec.omega_lifts[k]);
            out.push(ConstantRecord {
                kind: "tau,tau".into(),
                tau: i,
                other: j,
                value: c.eps.bits(rd.dim()),
                in_s2: in_s2(&c),
                identity_holds,
            });
        }
        let ti = t_inverse(rd, &sec.omega_lifts[i]);
        for (s, m) in sec.simple.iter().enumerate() {
            let conj = aff.mul(&aff.mul(t, alg.simple(s)), &aff.inverse(t));
            let s2 = (0..alg.num_simple())
                .find(|&u| *alg.simple(u) == conj)
                .ok_or_else(|| Error::Check("conjugate of a relative simple reflection is not simple".into()))?;
            let lhs = t_mul(rd, &t_mul(rd, &sec.omega_lifts[i], m), &ti);
            let c = t_mul(rd, &lhs, &t_inverse(rd, &sec.simple[s2]));
            let identity_holds = lhs == t_mul(rd, &c, &sec.simple[s2]);
            out.push(ConstantRecord {
                kind: "tau,s".into(),
                tau: i,
                other: s,
                value: c.eps.bits(rd.dim()),
                in_s2: in_s2(&c),
                identity_holds,
            });
        }
    }
    Ok(out)
}

// ---- presentation schema ----

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "class")]
pub enum Generator {
    SimpleLift { index: usize, orbit: Vec<usize>, lift: crate::affine_tits::TitsView },
    OmegaLift { index: usize, tau: ExtAffView, lift: crate::affine_tits::TitsView },
    Iwahori { family: String },
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "relation")]
pub enum Relation {
    #[serde(rename = "A(i)")]
    Braid { s: usize, t: usize, order: usize, lhs: Vec<usize>, rhs: Vec<usize> },
    #[serde(rename = "A(ii)")]
    Quadratic { s: usize, exponent: usize, coefficient: Poly, square: Vec<u8>, index_set: String, index_set_size: Poly },
    #[serde(rename = "B(i)")]
    OmegaProduct { tau: usize, tau2: usize, product: usize, constant: Vec<u8> },
    #[serde(rename = "B(ii)")]
    OmegaConjugation { tau: usize, tau_inverse: usize, s: usize, image: usize, constant: Vec<u8>, inverse_constant: Vec<u8> },
    #[serde(rename = "B(iii)")]
    OmegaIwahori { tau: usize, tau_inverse: usize, inverse_constant: Vec<u8>, g: String },
    #[serde(rename = "C(i)")]
    Unit { unit: String },
    #[serde(rename = "C(ii)")]
    IwahoriProduct { g: String, g2: String },
    #[serde(rename = "C(iii)")]
    IwahoriCommute { s: usize, g: String },
    #[serde(rename = "C(iv)")]
    IwahoriQuadratic { s: usize, exponent: usize, coefficient: Poly, g: String, g1: String, g2: String, constraint: String },
}

/// Iwahori-Matsumoto form of the level-zero algebra.
#[derive(Debug, Clone, Serialize)]
pub struct CollapsedSchema {
    pub simple: usize,
    pub exponents: Vec<usize>,
    /// Braid orders, 0 for infinite.
    pub braid: Vec<Vec<usize>>,
    /// `(q^L - 1, q^L)` per simple reflection.
    pub quadratic: Vec<(Poly, Poly)>,
    pub omega_product: Vec<Vec<Option<usize>>>,
    pub omega_conjugation: Vec<Vec<usize>>,
    pub omega_identity: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PresentationSchema {
    pub level: usize,
    pub generators: Vec<Generator>,
    pub relations: Vec<Relation>,
    pub collapsed: Option<CollapsedSchema>,
}

pub fn emit_presentation(alg: &HeckeAlgebra, sec: &StableSection, level: usize) -> Result<PresentationSchema> {
    let aff = &alg.aff;
    let rd = &aff.rd;
    let ns = alg.num_simple();
    let bits = |t: &TitsElt| t.eps.bits(rd.dim());
    let mut generators = Vec::new();
    for (i, m) in sec.simple.iter().enumerate() {
        generators.push(Generator::SimpleLift {
            index: i,
            orbit: alg.rel.simples[i].orbit.clone(),
            lift: crate::affine_tits::t_view(rd, m),
        });
    }
    for (i, (t, m)) in sec.omega.iter().zip(&sec.omega_lifts).enumerate() {
        generators.push(Generator::OmegaLift { index: i, tau: aff.view(t), lift: crate::affine_tits::t_view(rd, m) });
    }
    generators.push(Generator::Iwahori { family: "g in I".into() });

    let braid: Vec<Vec<usize>> = (0..ns)
        .map(|i| (0..ns).map(|j| alg.rel.braid_order(aff, i, j).unwrap_or(0)).collect())
        .collect();
    let mut relations = Vec::new();
    for i in 0..ns {
        for j in i + 1..ns {
            let k = braid[i][j];
            if k == 0 {
                continue;
            }
            let alt = |a: usize, b: usize| (0..k).map(|n| if n % 2 == 0 { a } else { b }).collect();
            relations.push(Relation::Braid { s: i, t: j, order: k, lhs: alt(i, j), rhs: alt(j, i) });
        }
    }
    for (i, m) in sec.simple.iter().enumerate() {
        let l = alg.params[i];
        relations.push(Relation::Quadratic {
            s: i,
            exponent: l,
            coefficient: q_pow(l),
            square: bits(&t_mul(rd, m, m)),
            index_set: format!("P_(s{i},{level})/I_{level}"),
            index_set_size: q_pow(l),
        });
    }
    let constants = howe_tits_constants(alg, sec)?;
    let constant = |kind: &str, tau: usize, other: usize| {
        constants
            .iter()
            .find(|c| c.kind == kind && c.tau == tau && c.other == other)
            .map(|c| c.value.clone())
    };
    let no = sec.omega.len();
    let omega_product: Vec<Vec<Option<usize>>> = (0..no)
        .map(|i| (0..no).map(|j| sec.omega_index(&aff.mul(&sec.omega[i], &sec.omega[j]))).collect())
        .collect();
    for i in 0..no {
        for j in 0..no {
            if let Some(k) = omega_product[i][j] {
                relations.push(Relation::OmegaProduct { tau: i, tau2: j, product: k, constant: constant("tau,tau", i, j).unwrap() });
            }
        }
    }
    let mut omega_conjugation = vec![Vec::new(); no];
    for i in 0..no {
        let Some(inv) = sec.omega_index(&aff.inverse(&sec.omega[i])) else { continue };
        let inverse_constant = constant("tau,tau", i, inv).unwrap_or_default();
        for s in 0..ns {
            let conj = aff.mul(&aff.mul(&sec.omega[i], alg.simple(s)), &aff.inverse(&sec.omega[i]));
            let image = (0..ns).find(|&u| *alg.simple(u) == conj).unwrap();
            omega_conjugation[i].push(image);
            relations.push(Relation::OmegaConjugation {
                tau: i,
                tau_inverse: inv,
                s,
                image,
                constant: constant("tau,s", i, s).unwrap(),
                inverse_constant: inverse_constant.clone(),
            });
        }
        relations.push(Relation::OmegaIwahori {
            tau: i,
            tau_inverse: inv,
            inverse_constant,
            g: "g in I".into(),
        });
    }
    relations.push(Relation::Unit { unit: format!("1_(I_{level})") });
    relations.push(Relation::IwahoriProduct { g: "g in I".into(), g2: "g' in I".into() });
    for s in 0..ns {
        relations.push(Relation::IwahoriCommute { s, g: format!("g in I cap m(s{s}) I m(s{s})^-1") });
        relations.push(Relation::IwahoriQuadratic {
            s,
            exponent: alg.params[s],
            coefficient: q_pow(alg.params[s]),
            g: format!("g in I minus m(s{s}) I m(s{s})^-1"),
            g1: "g1 in I".into(),
            g2: "g2 in I".into(),
            constraint: format!("m(s{s}) g m(s{s})^-1 = g1 m(s{s}) g2"),
        });
    }
    let collapsed = (level == 0).then(|| CollapsedSchema {
        simple: ns,
        exponents: alg.params.clone(),
        braid: braid.clone(),
        quadratic: alg.params.iter().map(|&l| (q_pow_minus_one(l), q_pow(l))).collect(),
        omega_product: omega_product.clone(),
        omega_conjugation,
        omega_identity: sec.omega_index(&aff.identity()),
    });
    Ok(PresentationSchema { level, generators, relations, collapsed })
}

/// Word-rewriting evaluator for the collapsed schema. Basis elements are
/// `(w, tau)` with `w` the least word in its braid class.
pub struct SchemaEvaluator<'a> {
    schema: &'a CollapsedSchema,
    memo: HashMap<Vec<usize>, BTreeMap<Vec<usize>, Poly>>,
}

impl<'a> SchemaEvaluator<'a> {
    pub fn new(schema: &'a CollapsedSchema) -> Self {
        SchemaEvaluator { schema, memo: HashMap::new() }
    }

    fn braid_class(&self, word: &[usize]) -> BTreeSet<Vec<usize>> {
        let mut seen = BTreeSet::from([word.to_vec()]);
        let mut queue = VecDeque::from([word.to_vec()]);
        while let Some(w) = queue.pop_front() {
            for start in 0..w.len() {
                let (a, b) = (w[start], *w.get(start + 1).unwrap_or(&w[start]));
                if a == b {
                    continue;
                }
                let k = self.schema.braid[a][b];
                if k == 0 || start + k > w.len() {
                    continue;
                }
                if (0..k).all(|n| w[start + n] == if n % 2 == 0 { a } else { b }) {
                    let mut v = w.clone();
                    for n in 0..k {
                        v[start + n] = if n % 2 == 0 { b } else { a };
                    }
                    if seen.insert(v.clone()) {
                        queue.push_back(v);
                    }
                }
            }
        }
        seen
    }

    /// Expresses a word in the `T_s` as a combination of reduced words.
    pub fn reduce(&mut self, word: &[usize]) -> BTreeMap<Vec<usize>, Poly> {
        if let Some(r) = self.memo.get(word) {
            return r.clone();
        }
        let class = self.braid_class(word);
        let square = class
            .iter()
            .find_map(|w| (0..w.len().saturating_sub(1)).find(|&i| w[i] == w[i + 1]).map(|i| (w.clone(), i)));
        let out = match square {
            None => BTreeMap::from([(class.into_iter().next().unwrap(), vec![1])]),
            Some((w, i)) => {
                let (a, b) = self.schema.quadratic[w[i]].clone();
                let mut one = w.clone();
                one.remove(i);
                let mut none = one.clone();
                none.remove(i);
                let mut out = BTreeMap::new();
                for (coef, sub) in [(a, one), (b, none)] {
                    for (k, c) in self.reduce(&sub) {
                        let e: &mut Poly = out.entry(k).or_default();
                        *e = poly_add(e, &poly_mul(&coef, &c));
                    }
                }
                out.retain(|_, c: &mut Poly| !c.is_empty());
                out
            }
        };
        self.memo.insert(word.to_vec(), out.clone());
        out
    }

    /// `(x_word, x_tau) * (y_word, y_tau)`.
    pub fn product(
        &mut self,
        x: (&[usize], usize),
        y: (&[usize], usize),
    ) -> BTreeMap<(Vec<usize>, usize), Poly> {
        let conj: Vec<usize> = y.0.iter().map(|&s| self.schema.omega_conjugation[x.1][s]).collect();
        let tau = self.schema.omega_product[x.1][y.1].expect("length-zero product outside the table");
        let mut word = x.0.to_vec();
        word.extend(conj);
        self.reduce(&word).into_iter().map(|(w, c)| ((w, tau), c)).collect()
    }
}

/// Compares the collapsed schema with `mul` on `l(x) <= max_x`, `l(y) <= max_y`.
pub fn compare_schema(
    alg: &HeckeAlgebra,
    schema: &CollapsedSchema,
    omega: &[ExtAffElt],
    max_x: usize,
    max_y: usize,
) -> (usize, bool) {
    let mut ev = SchemaEvaluator::new(schema);
    let elems = alg.short_elements(max_y);
    let to_elt = |w: &[usize], tau: usize| {
        w.iter().rev().fold(omega[tau].clone(), |acc, &s| alg.aff.mul(alg.simple(s), &acc))
    };
    let mut count = 0;
    let mut ok = true;
    for x in elems.iter().filter(|x| alg.length(x) <= max_x) {
        for y in &elems {
            let (xw, xt) = alg.decompose(x);
            let (yw, yt) = alg.decompose(y);
            let (Some(xi), Some(yi)) = (omega.iter().position(|t| *t == xt), omega.iter().position(|t| *t == yt))
            else {
                continue;
            };
            let direct = alg.mul(&HeckeElt::basis(x), &HeckeElt::basis(y));
            let mut via = HeckeElt::zero();
            for ((w, t), c) in ev.product((&xw, xi), (&yw, yi)) {
                via.add_term(to_elt(&w, t), &c);
            }
            count += 1;
            ok &= via == direct;
        }
    }
    (count, ok)
}

// ---- checks ----

#[derive(Debug, Clone, Serialize)]
pub struct ParamRecord {
    pub orbit: Vec<usize>,
    pub exponent: usize,
    pub quadratic_holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct HeckeReport {
    pub params: Vec<ParamRecord>,
    pub distinct_exponents: Vec<usize>,
    pub basis_size: usize,
    pub associativity_triples: usize,
    pub associative: bool,
    pub braid_words: usize,
    pub braid_compatible: bool,
    pub q1_pairs: usize,
    pub q1_homomorphism: bool,
    pub constants: Vec<ConstantRecord>,
    pub constants_hold: bool,
    pub schema_pairs: usize,
    pub schema_matches: bool,
    pub holds: bool,
}

pub fn hecke_check(fr: &Frobenius, max_len: usize, triples: usize, seed: u64) -> Result<HeckeReport> {
    let alg = HeckeAlgebra::new(fr)?;
    let sec = StableSection::new(fr, &alg.rel)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let e = alg.identity();

    let params: Vec<ParamRecord> = (0..alg.num_simple())
        .map(|i| {
            let l = alg.params[i];
            let t = HeckeElt::basis(alg.simple(i));
            let rhs = t.scale(&q_pow_minus_one(l)).add(&e.scale(&q_pow(l)));
            ParamRecord { orbit: alg.rel.simples[i].orbit.clone(), exponent: l, quadratic_holds: alg.mul(&t, &t) == rhs }
        })
        .collect();
    let distinct_exponents: Vec<usize> =
        alg.params.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();

    let elems = alg.short_elements(max_len);
    let pick = |rng: &mut ChaCha8Rng| HeckeElt::basis(elems.choose(rng).unwrap());
    let mut associative = true;
    for _ in 0..triples {
        let (x, y, z) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        associative &= alg.mul(&alg.mul(&x, &y), &z) == alg.mul(&x, &alg.mul(&y, &z));
    }

    let mut q1_homomorphism = true;
    for _ in 0..triples {
        let (x, y) = (pick(&mut rng), pick(&mut rng));
        let lhs = specialize_q1(&alg.mul(&x, &y));
        q1_homomorphism &= lhs == group_ring_mul(&alg.aff, &specialize_q1(&x), &specialize_q1(&y));
    }

    let mut braid_words = 0;
    let mut braid_compatible = true;
    for x in elems.iter().filter(|x| alg.length(x) <= max_len.min(5)) {
        let (_, tau) = alg.decompose(x);
        let expected = HeckeElt::basis(x);
        for w in alg.reduced_words(x) {
            braid_words += 1;
            braid_compatible &= alg.mul(&alg.word_product(&w), &HeckeElt::basis(&tau)) == expected;
        }
    }

    let constants = howe_tits_constants(&alg, &sec)?;
    let constants_hold = constants.iter().all(|c| c.in_s2 && c.identity_holds);

    let schema = emit_presentation(&alg, &sec, 0)?;
    let (schema_pairs, schema_matches) =
        compare_schema(&alg, schema.collapsed.as_ref().unwrap(), &sec.omega, 1, max_len.min(4));

    let holds = params.iter().all(|p| p.quadratic_holds)
        && associative
        && q1_homomorphism
        && braid_compatible
        && constants_hold
        && schema_matches;
    Ok(HeckeReport {
        params,
        distinct_exponents,
        basis_size: elems.len(),
        associativity_triples: triples,
        associative,
        braid_words,
        braid_compatible,
        q1_pairs: triples,
        q1_homomorphism,
        constants,
        constants_hold,
        schema_pairs,
        schema_matches,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descent::InnerTwist;
    use crate::root_datum::{Isogeny, RootDatum, RootType};

    fn frob(k: RootType, n: usize, iso: Isogeny, sigma: Vec<usize>, inner: InnerTwist) -> Frobenius {
        Frobenius::new(RootDatum::simple(k, n, iso).unwrap(), sigma, inner).unwrap()
    }

    #[test]
    fn polys() {
        assert_eq!(poly_mul(&q_pow_minus_one(1), &q_pow_minus_one(1)), vec![1, -2, 1]);
        assert_eq!(poly_add(&[1, 1], &[-1, -1]), Vec::<i64>::new());
    }

    #[test]
    fn a1_quadratic() {
        let f = frob(RootType::A, 1, Isogeny::Sc, vec![0], InnerTwist::Trivial);
        let alg = HeckeAlgebra::new(&f).unwrap();
        let t = HeckeElt::basis(alg.simple(0));
        let sq = alg.mul(&t, &t);
        assert_eq!(sq.terms[alg.simple(0)], vec![-1, 1]);
        assert_eq!(sq.terms[&alg.aff.identity()], vec![0, 1]);
    }

    #[test]
    fn a3_flip_parameters() {
        let f = frob(RootType::A, 3, Isogeny::Sc, vec![2, 1, 0], InnerTwist::Trivial);
        let r = hecke_check(&f, 4, 50, 0).unwrap();
        assert_eq!(r.distinct_exponents, vec![1, 2]);
        assert!(r.holds, "{r:#?}");
    }

    #[test]
    fn a1_ad_constants() {
        let f = frob(RootType::A, 1, Isogeny::Ad, vec![0], InnerTwist::Trivial);
        let r = hecke_check(&f, 4, 50, 0).unwrap();
        assert!(r.holds);
        assert!(r.constants.iter().any(|c| c.kind == "tau,tau"));
    }

    #[test]
    fn collapsed_a1_schema() {
        let f = frob(RootType::A, 1, Isogeny::Sc, vec![0], InnerTwist::Trivial);
        let alg = HeckeAlgebra::new(&f).unwrap();
        let sec = StableSection::new(&f, &alg.rel).unwrap();
        let p = emit_presentation(&alg, &sec, 0).unwrap();
        let c = p.collapsed.unwrap();
        assert_eq!(c.braid, vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(c.quadratic[0], (vec![-1, 1], vec![0, 1]));
        assert!(!p.relations.iter().any(|r| matches!(r, Relation::Braid { .. })));
    }
}
