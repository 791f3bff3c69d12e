//! Symmetric functions in the bases m, e, h, p and g, basis changes and the
//! (q,t)-Hall scalar product.
//!
//! Transitions between m, e, h and p are rational matrices per degree, built
//! once and cached. The g basis depends on a parameter pair and goes through
//! p.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::laurent::LaurentPoly;
use crate::partitions::{partitions_of, Partition};
use crate::qfield::{Field, QRat, QtRat};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    M,
    E,
    H,
    P,
    G,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Basis::M => "m",
            Basis::E => "e",
            Basis::H => "h",
            Basis::P => "p",
            Basis::G => "g",
        };
        f.write_str(s)
    }
}

/// The pair `(q, t)` of the Hall product and of `g_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallParams<F: Field> {
    pub q: F,
    pub t: F,
}

impl HallParams<QRat> {
    /// `(q, q^c)`.
    pub fn qc(c: i64) -> Self {
        HallParams { q: QRat::q(), t: QRat::q_pow(c) }
    }
}

impl HallParams<QtRat> {
    /// Independent `(q, t)`.
    pub fn generic() -> Self {
        HallParams { q: QtRat::from_base(QRat::q()), t: QtRat::t() }
    }

    /// `(t, q)`.
    pub fn swapped() -> Self {
        let g = Self::generic();
        HallParams { q: g.t, t: g.q }
    }
}

impl<F: Field> HallParams<F> {
    /// `(1 - q^r) / (1 - t^r)`.
    pub fn weight(&self, r: u32) -> Result<F> {
        let num = F::one() - self.q.pow(r as i64)?;
        let den = F::one() - self.t.pow(r as i64)?;
        if den.is_zero() {
            return Err(Error::Pole(format!("1 - t^{r} vanishes in the Hall product")));
        }
        num.try_div(&den)
    }

    /// `prod_i (1 - q^{rho_i}) / (1 - t^{rho_i})`.
    pub fn weight_of(&self, rho: &Partition) -> Result<F> {
        let mut acc = F::one();
        for &r in rho.parts() {
            acc = acc * &self.weight(r)?;
        }
        Ok(acc)
    }

    pub fn swap(&self) -> Self {
        HallParams { q: self.t.clone(), t: self.q.clone() }
    }

    fn key(&self) -> String {
        format!("{}|{}", self.q, self.t)
    }
}

/// A finite combination of basis elements indexed by partitions.
#[derive(Clone)]
pub struct SymFunc<F: Field = QRat> {
    basis: Basis,
    coeffs: BTreeMap<Partition, F>,
    params: Option<HallParams<F>>,
}

impl<F: Field> SymFunc<F> {
    pub fn zero(basis: Basis) -> Self {
        SymFunc { basis, coeffs: BTreeMap::new(), params: None }
    }

    /// One basis element of m, e, h or p.
    pub fn basis_element(basis: Basis, lambda: Partition) -> Result<Self> {
        if basis == Basis::G {
            return Err(Error::Precondition("g basis elements need parameters; use SymFunc::g".into()));
        }
        let mut f = Self::zero(basis);
        f.add_term(lambda, F::one());
        Ok(f)
    }

    pub fn m(lambda: Partition) -> Self {
        Self::basis_element(Basis::M, lambda).unwrap()
    }
    pub fn e(lambda: Partition) -> Self {
        Self::basis_element(Basis::E, lambda).unwrap()
    }
    pub fn h(lambda: Partition) -> Self {
        Self::basis_element(Basis::H, lambda).unwrap()
    }
    pub fn p(lambda: Partition) -> Self {
        Self::basis_element(Basis::P, lambda).unwrap()
    }

    /// `g_lambda = prod_i g_{lambda_i}` for the given `(q, t)`.
    pub fn g(lambda: Partition, params: HallParams<F>) -> Self {
        let mut f = SymFunc { basis: Basis::G, coeffs: BTreeMap::new(), params: Some(params) };
        f.add_term(lambda, F::one());
        f
    }

    pub fn from_terms<I: IntoIterator<Item = (Partition, F)>>(basis: Basis, params: Option<HallParams<F>>, it: I) -> Self {
        let mut f = SymFunc { basis, coeffs: BTreeMap::new(), params };
        for (l, c) in it {
            f.add_term(l, c);
        }
        f
    }

    pub fn add_term(&mut self, lambda: Partition, c: F) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&lambda) {
            Some(v) => {
                let s = v.clone() + &c;
                if s.is_zero() {
                    self.coeffs.remove(&lambda);
                } else {
                    *v = s;
                }
            }
            None => {
                self.coeffs.insert(lambda, c);
            }
        }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn params(&self) -> Option<&HallParams<F>> {
        self.params.as_ref()
    }

    pub fn with_params(mut self, params: HallParams<F>) -> Self {
        self.params = Some(params);
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, lambda: &Partition) -> F {
        self.coeffs.get(lambda).cloned().unwrap_or_else(F::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &F)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> Vec<Partition> {
        self.coeffs.keys().cloned().collect()
    }

    pub fn scale(&self, k: &F) -> Self {
        let mut f = SymFunc { basis: self.basis, coeffs: BTreeMap::new(), params: self.params.clone() };
        for (l, c) in self.terms() {
            f.add_term(l.clone(), c.clone() * k);
        }
        f
    }

    fn same_frame(&self, o: &Self) -> bool {
        self.basis == o.basis && (self.basis != Basis::G || self.params == o.params)
    }

    /// Sum; the result is in `self`'s basis.
    pub fn add(&self, o: &Self) -> Result<Self> {
        let o = if self.same_frame(o) { o.clone() } else { o.with_params_of(self).convert(self.basis)? };
        let mut f = self.clone();
        for (l, c) in o.terms() {
            f.add_term(l.clone(), c.clone());
        }
        Ok(f)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&-F::one()))
    }

    fn with_params_of(&self, o: &Self) -> Self {
        let mut f = self.clone();
        if f.params.is_none() {
            f.params = o.params.clone();
        }
        f
    }

    /// Product, in the p basis.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        let a = self.to_p()?;
        let b = o.to_p()?;
        let mut out = SymFunc::zero(Basis::P);
        out.params = self.params.clone().or_else(|| o.params.clone());
        for (l, c) in &a {
            for (m, d) in &b {
                let mut parts: Vec<u32> = l.parts().iter().chain(m.parts()).copied().collect();
                parts.sort_unstable_by(|x, y| y.cmp(x));
                out.add_term(Partition::new(parts)?, c.clone() * d);
            }
        }
        Ok(out)
    }

    /// Coefficients in the p basis.
    pub fn to_p(&self) -> Result<BTreeMap<Partition, F>> {
        match self.basis {
            Basis::P => Ok(self.coeffs.clone()),
            Basis::G => {
                let params = self.g_params()?;
                let mut out: BTreeMap<Partition, F> = BTreeMap::new();
                let mut cache: HashMap<u32, Vec<(Partition, F)>> = HashMap::new();
                for (lam, c) in &self.coeffs {
                    let mut acc: Vec<(Vec<u32>, F)> = vec![(Vec::new(), c.clone())];
                    for &r in lam.parts() {
                        if let std::collections::hash_map::Entry::Vacant(e) = cache.entry(r) {
                            e.insert(g_row_in_p(r, params)?);
                        }
                        let gr = &cache[&r];
                        let mut next = Vec::with_capacity(acc.len() * gr.len());
                        for (parts, a) in &acc {
                            for (rho, b) in gr {
                                let mut v = parts.clone();
                                v.extend_from_slice(rho.parts());
                                next.push((v, a.clone() * b));
                            }
                        }
                        acc = next;
                    }
                    for (mut parts, a) in acc {
                        parts.sort_unstable_by(|x, y| y.cmp(x));
                        add_to(&mut out, Partition::new(parts)?, a);
                    }
                }
                Ok(out)
            }
            b => Ok(apply(&self.coeffs, b, Basis::P)),
        }
    }

    fn g_params(&self) -> Result<&HallParams<F>> {
        self.params.as_ref().ok_or_else(|| Error::Precondition("g basis needs (q, t) parameters".into()))
    }

    /// The same element in another basis. Converting to g uses the stored
    /// parameters.
    pub fn convert(&self, target: Basis) -> Result<Self> {
        if self.basis == target {
            return Ok(self.clone());
        }
        let classical = |b: Basis| b != Basis::G;
        let coeffs = if classical(self.basis) && classical(target) {
            apply(&self.coeffs, self.basis, target)
        } else if target == Basis::G {
            let params = self.g_params()?.clone();
            let p = self.to_p()?;
            // p_rho -> prod (1 - q^r)/(1 - t^r) p_rho undoes the g plethysm
            let mut twisted = BTreeMap::new();
            for (rho, c) in p {
                let w = params.weight_of(&rho)?;
                add_to(&mut twisted, rho, c * &w);
            }
            apply(&twisted, Basis::P, Basis::H)
        } else {
            apply(&self.to_p()?, Basis::P, target)
        };
        let mut f = SymFunc { basis: target, coeffs: BTreeMap::new(), params: self.params.clone() };
        for (l, c) in coeffs {
            f.add_term(l, c);
        }
        Ok(f)
    }

    /// Homogeneous components by degree.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.coeffs.keys().map(|l| l.size()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// `f(x_{vars[0]}, ..., x_{vars[n-1]})`.
    pub fn expand_on_vars(&self, vars: &[usize]) -> Result<LaurentPoly<F>> {
        let m = self.convert(Basis::M)?;
        let nv = vars.iter().map(|v| v + 1).max().unwrap_or(0);
        let mut out = LaurentPoly::zero();
        for (lam, c) in m.terms() {
            if lam.len() > vars.len() {
                continue;
            }
            let mut padded: Vec<u32> = lam.parts().to_vec();
            padded.resize(vars.len(), 0);
            for perm in distinct_permutations(&padded) {
                let mut e = vec![0i32; nv];
                for (k, &d) in perm.iter().enumerate() {
                    e[vars[k]] += d as i32;
                }
                out.add_term(&e, c.clone());
            }
        }
        Ok(out)
    }

    /// `f(x_1, ..., x_n)`.
    pub fn expand_in_vars(&self, n: usize) -> Result<LaurentPoly<F>> {
        let vars: Vec<usize> = (1..=n).collect();
        self.expand_on_vars(&vars)
    }
}

fn add_to<F: Field>(m: &mut BTreeMap<Partition, F>, k: Partition, c: F) {
    if c.is_zero() {
        return;
    }
    match m.get_mut(&k) {
        Some(v) => {
            let s = v.clone() + &c;
            if s.is_zero() {
                m.remove(&k);
            } else {
                *v = s;
            }
        }
        None => {
            m.insert(k, c);
        }
    }
}

/// `g_r = sum_{rho |- r} z_rho^{-1} prod (1 - t^{rho_j})/(1 - q^{rho_j}) p_rho`.
fn g_row_in_p<F: Field>(r: u32, params: &HallParams<F>) -> Result<Vec<(Partition, F)>> {
    let inv = params.swap();
    let mut out = Vec::new();
    for rho in partitions_of(r) {
        let z = BigRational::new(BigInt::one(), BigInt::from(rho.z()));
        out.push((rho.clone(), F::from_ratio(&z) * &inv.weight_of(&rho)?));
    }
    Ok(out)
}

/// `<f, g>` for the given `(q, t)`; components of different degree are
/// orthogonal.
pub fn hall_inner<F: Field>(f: &SymFunc<F>, g: &SymFunc<F>, params: &HallParams<F>) -> Result<F> {
    let a = f.to_p()?;
    let b = g.to_p()?;
    let mut acc = F::zero();
    for (rho, c) in &a {
        if let Some(d) = b.get(rho) {
            let z = F::from_ratio(&BigRational::from_integer(BigInt::from(rho.z())));
            acc = acc + &(c.clone() * d * &z * &params.weight_of(rho)?);
        }
    }
    Ok(acc)
}

fn distinct_permutations(v: &[u32]) -> Vec<Vec<u32>> {
    let mut cur = v.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    // next lexicographic permutation
    loop {
        let n = cur.len();
        if n < 2 {
            break;
        }
        let Some(i) = (0..n - 1).rev().find(|&i| cur[i] < cur[i + 1]) else { break };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
    out
}

type Matrix = Vec<Vec<BigRational>>;

struct Transition {
    index: HashMap<Partition, usize>,
    parts: Vec<Partition>,
    a: Matrix,
}

type TransitionCache = RwLock<HashMap<(Basis, Basis, u32), Arc<Transition>>>;

fn cache() -> &'static TransitionCache {
    static C: OnceLock<TransitionCache> = OnceLock::new();
    C.get_or_init(Default::default)
}

/// Coefficients `f` in basis `from` re-expressed in basis `to` (both
/// classical).
fn apply<F: Field>(f: &BTreeMap<Partition, F>, from: Basis, to: Basis) -> BTreeMap<Partition, F> {
    if from == to {
        return f.clone();
    }
    let mut out = BTreeMap::new();
    let mut by_deg: BTreeMap<u32, Vec<(&Partition, &F)>> = BTreeMap::new();
    for (l, c) in f {
        by_deg.entry(l.size()).or_default().push((l, c));
    }
    for (d, terms) in by_deg {
        let t = transition(from, to, d);
        for (l, c) in terms {
            let row = &t.a[t.index[l]];
            for (k, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    add_to(&mut out, t.parts[k].clone(), c.clone() * &F::from_ratio(x));
                }
            }
        }
    }
    out
}

/// Row `lambda` holds the `to`-expansion of the `from` basis element.
fn transition(from: Basis, to: Basis, d: u32) -> Arc<Transition> {
    if let Some(t) = cache().read().unwrap().get(&(from, to, d)) {
        return t.clone();
    }
    let parts = partitions_of(d);
    let index: HashMap<Partition, usize> = parts.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let a = if from == Basis::M {
        invert(&to_m(to, &parts))
    } else if to == Basis::M {
        to_m(from, &parts)
    } else {
        let x = to_m(from, &parts);
        let y = invert(&to_m(to, &parts));
        matmul(&x, &y)
    };
    let t = Arc::new(Transition { index, parts, a });
    cache().write().unwrap().entry((from, to, d)).or_insert(t).clone()
}

/// Row `lambda` is the m-expansion of `b_lambda`.
fn to_m(b: Basis, parts: &[Partition]) -> Matrix {
    parts
        .iter()
        .map(|lam| {
            parts
                .iter()
                .map(|mu| {
                    let k = match b {
                        Basis::M => u64::from(lam == mu),
                        Basis::P => count_assignments(lam.parts(), &mut mu.parts().to_vec()),
                        Basis::H => count_matrices(lam.parts(), &mut mu.parts().to_vec(), u32::MAX),
                        Basis::E => count_matrices(lam.parts(), &mut mu.parts().to_vec(), 1),
                        Basis::G => unreachable!("g is not classical"),
                    };
                    BigRational::from_integer(BigInt::from(k))
                })
                .collect()
        })
        .collect()
}

/// Number of maps sending each part of `rows` to a column so that column
/// sums hit `cols` exactly (the m-coefficients of p).
fn count_assignments(rows: &[u32], cols: &mut [u32]) -> u64 {
    let Some((&r, rest)) = rows.split_first() else {
        return u64::from(cols.iter().all(|&c| c == 0));
    };
    let mut total = 0;
    for j in 0..cols.len() {
        if cols[j] >= r {
            cols[j] -= r;
            total += count_assignments(rest, cols);
            cols[j] += r;
        }
    }
    total
}

/// Number of matrices with entries in `[0, cap]`, row sums `rows` and column
/// sums `cols`.
fn count_matrices(rows: &[u32], cols: &mut [u32], cap: u32) -> u64 {
    let Some((&r, rest)) = rows.split_first() else {
        return u64::from(cols.iter().all(|&c| c == 0));
    };
    fn fill(rem: u32, j: usize, cols: &mut [u32], cap: u32, rest: &[u32]) -> u64 {
        if j == cols.len() {
            return if rem == 0 { count_matrices(rest, cols, cap) } else { 0 };
        }
        let mut total = 0;
        let hi = rem.min(cols[j]).min(cap);
        for x in 0..=hi {
            cols[j] -= x;
            total += fill(rem - x, j + 1, cols, cap, rest);
            cols[j] += x;
        }
        total
    }
    fill(r, 0, cols, cap, rest)
}

fn matmul(x: &Matrix, y: &Matrix) -> Matrix {
    let n = x.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut s = BigRational::zero();
                    for k in 0..n {
                        if !x[i][k].is_zero() && !y[k][j].is_zero() {
                            s += &x[i][k] * &y[k][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// Gauss-Jordan inverse of a nonsingular rational matrix.
pub(crate) fn invert(m: &Matrix) -> Matrix {
    let n = m.len();
    let mut a: Matrix = m.clone();
    let mut inv: Matrix = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("transition matrices are invertible");
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let x = &f * &a[col][j];
                    a[r][j] -= x;
                    let y = &f * &inv[col][j];
                    inv[r][j] -= y;
                }
            }
        }
    }
    inv
}

/// Cache key for per-parameter data.
pub(crate) fn params_key<F: Field>(p: &HallParams<F>) -> String {
    p.key()
}

/// Parameters take part in equality only for the g basis.
impl<F: Field> PartialEq for SymFunc<F> {
    fn eq(&self, o: &Self) -> bool {
        self.same_frame(o) && self.coeffs == o.coeffs
    }
}

impl<F: Field> Eq for SymFunc<F> {}

impl<F: Field> fmt::Display for SymFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (l, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*{}{l}", self.basis)?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for SymFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(serde::Serialize, serde::Deserialize)]
struct EntryRepr {
    partition: Partition,
    coeff: String,
}

#[derive(serde::Serialize, serde::Deserialize)]
struct SymFuncRepr {
    basis: Basis,
    entries: Vec<EntryRepr>,
}

impl serde::Serialize for SymFunc<QRat> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SymFuncRepr {
            basis: self.basis,
            entries: self.terms().map(|(l, c)| EntryRepr { partition: l.clone(), coeff: c.to_string() }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for SymFunc<QRat> {
    /// g-basis values need their parameters restored with `with_params`.
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = SymFuncRepr::deserialize(d)?;
        let mut f = SymFunc::zero(r.basis);
        for e in r.entries {
            f.add_term(e.partition, e.coeff.parse().map_err(D::Error::custom)?);
        }
        Ok(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::part;

    fn rat(a: i64, b: i64) -> QRat {
        QRat::from_ratio(&BigRational::new(a.into(), b.into()))
    }

    #[test]
    fn h2_in_p() {
        let h2 = SymFunc::<QRat>::h(part(&[2])).convert(Basis::P).unwrap();
        let want = SymFunc::from_terms(Basis::P, None, [(part(&[1, 1]), rat(1, 2)), (part(&[2]), rat(1, 2))]);
        assert_eq!(h2, want);
    }

    #[test]
    fn e2_in_m() {
        let e2 = SymFunc::<QRat>::e(part(&[2])).convert(Basis::M).unwrap();
        assert_eq!(e2, SymFunc::m(part(&[1, 1])));
    }

    #[test]
    fn round_trips_to_degree_5() {
        let bases = [Basis::M, Basis::E, Basis::H, Basis::P];
        for d in 0..=5 {
            for lam in partitions_of(d) {
                for &b in &bases {
                    let f = SymFunc::<QRat>::basis_element(b, lam.clone()).unwrap();
                    for &c in &bases {
                        assert_eq!(f.convert(c).unwrap().convert(b).unwrap(), f, "{b} -> {c} on {lam}");
                    }
                }
            }
        }
    }

    #[test]
    fn g_round_trip_and_g1() {
        let params = HallParams::qc(2);
        let g1 = SymFunc::g(part(&[1]), params.clone()).convert(Basis::P).unwrap();
        // g_1 = (1 - t)/(1 - q) p_1
        let want = (QRat::one() - QRat::q_pow(2)).try_div(&(QRat::one() - QRat::q())).unwrap();
        assert_eq!(g1.coeff(&part(&[1])), want);
        for lam in partitions_of(4) {
            let g = SymFunc::g(lam.clone(), params.clone());
            assert_eq!(g.convert(Basis::M).unwrap().convert(Basis::G).unwrap(), g);
        }
    }

    #[test]
    fn hall_inner_examples() {
        let params = HallParams::<QtRat>::generic();
        let p1 = SymFunc::<QtRat>::p(part(&[1]));
        let w = params.weight(1).unwrap();
        assert_eq!(hall_inner(&p1, &p1, &params).unwrap(), w.clone());
        let p2 = SymFunc::p(part(&[2]));
        let p11 = SymFunc::p(part(&[1, 1]));
        assert!(hall_inner(&p2, &p11, &params).unwrap().is_zero());
        assert_eq!(hall_inner(&p11, &p11, &params).unwrap(), QtRat::from_i64(2) * w.clone() * w);
    }

    #[test]
    fn hall_pole_is_an_error() {
        let params = HallParams { q: QRat::q(), t: QRat::one() };
        let p1 = SymFunc::<QRat>::p(part(&[1]));
        assert!(matches!(hall_inner(&p1, &p1, &params), Err(Error::Pole(_))));
    }

    #[test]
    fn expand_in_vars_examples() {
        let m11 = SymFunc::<QRat>::m(part(&[1, 1]));
        assert!(m11.expand_in_vars(1).unwrap().is_zero());
        let h2 = SymFunc::<QRat>::h(part(&[2])).expand_in_vars(2).unwrap();
        let want = LaurentPoly::from_terms([
            (vec![0, 2], QRat::one()),
            (vec![0, 1, 1], QRat::one()),
            (vec![0, 0, 2], QRat::one()),
        ]);
        assert_eq!(h2, want);
        let p2 = SymFunc::<QRat>::p(part(&[2])).expand_in_vars(2).unwrap();
        assert_eq!(p2, LaurentPoly::from_terms([(vec![0, 2], QRat::one()), (vec![0, 0, 2], QRat::one())]));
    }

    #[test]
    fn serde_shape() {
        let f = SymFunc::<QRat>::h(part(&[2, 1]));
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"basis":"h","entries":[{"partition":[2,1],"coeff":"1*q^0/1*q^0"}]}"#);
        let g: SymFunc = serde_json::from_str(&s).unwrap();
        assert_eq!(f, g);
    }
}
