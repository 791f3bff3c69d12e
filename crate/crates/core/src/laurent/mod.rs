//! Sparse multivariate Laurent polynomials in `x0..xn`, product builders and
//! constant-term extraction.

mod expand;
mod partial;
mod verify;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::qfield::{Field, QRat};
use crate::{Error, Result};

pub use expand::{f_factors, BinomialProduct, Factor};
pub use partial::{ct_partial_fraction, series_ct, DenFactor, RationalCT};
pub use verify::{
    verify_qfact_lemma, verify_splitting_s, verify_splitting_t, verify_symmetrization, weyl_sum_holds,
    QFactCase,
};

/// A unit monomial `q^qshift t^tshift x^exps`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(try_from = "MonomialRepr", into = "MonomialRepr")]
pub struct Monomial {
    pub qshift: i64,
    pub tshift: i64,
    exps: BTreeMap<usize, i32>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(i: usize) -> Self {
        Self::one().with_exp(i, 1)
    }

    pub fn q_pow(s: i64) -> Self {
        Monomial { qshift: s, ..Self::default() }
    }

    pub fn t_pow(s: i64) -> Self {
        Monomial { tshift: s, ..Self::default() }
    }

    /// Multiply by `x_i^e`.
    pub fn with_exp(mut self, i: usize, e: i32) -> Self {
        let v = self.exps.entry(i).or_insert(0);
        *v += e;
        if *v == 0 {
            self.exps.remove(&i);
        }
        self
    }

    pub fn exp(&self, i: usize) -> i32 {
        self.exps.get(&i).copied().unwrap_or(0)
    }

    pub fn exps(&self) -> impl Iterator<Item = (usize, i32)> + '_ {
        self.exps.iter().map(|(&i, &e)| (i, e))
    }

    /// True when no variable occurs.
    pub fn is_scalar(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.is_scalar() && self.qshift == 0 && self.tshift == 0
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut r = self.clone();
        r.qshift += o.qshift;
        r.tshift += o.tshift;
        for (i, e) in o.exps() {
            r = r.with_exp(i, e);
        }
        r
    }

    pub fn pow(&self, k: i32) -> Monomial {
        Monomial {
            qshift: self.qshift * k as i64,
            tshift: self.tshift * k as i64,
            exps: if k == 0 { BTreeMap::new() } else { self.exps.iter().map(|(&i, &e)| (i, e * k)).collect() },
        }
    }

    pub fn inv(&self) -> Monomial {
        self.pow(-1)
    }

    /// The scalar part `q^qshift t^tshift` with `t` given.
    pub fn scalar<F: Field>(&self, t: &F) -> Result<F> {
        Ok(F::q_pow(self.qshift) * &t.pow(self.tshift)?)
    }

    /// Dense exponent vector over `nvars` variables.
    pub fn exponent_vec(&self, nvars: usize) -> Vec<i32> {
        let mut v = vec![0; nvars];
        for (i, e) in self.exps() {
            v[i] = e;
        }
        v
    }

    pub fn to_poly<F: Field>(&self, t: &F) -> Result<LaurentPoly<F>> {
        let n = self.exps.keys().next_back().map_or(0, |&i| i + 1);
        Ok(LaurentPoly::monomial(&self.exponent_vec(n), self.scalar(t)?))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.qshift != 0 {
            parts.push(format!("q^{}", self.qshift));
        }
        if self.tshift != 0 {
            parts.push(format!("t^{}", self.tshift));
        }
        for (i, e) in self.exps() {
            parts.push(format!("x{i}^{e}"));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

#[derive(serde::Serialize, serde::Deserialize)]
struct MonomialRepr {
    #[serde(default, skip_serializing_if = "is_zero_i64")]
    q: i64,
    #[serde(default, skip_serializing_if = "is_zero_i64")]
    t: i64,
    #[serde(default)]
    exponents: BTreeMap<String, i32>,
}

fn is_zero_i64(k: &i64) -> bool {
    *k == 0
}

impl From<Monomial> for MonomialRepr {
    fn from(m: Monomial) -> Self {
        MonomialRepr { q: m.qshift, t: m.tshift, exponents: m.exps().map(|(i, e)| (format!("x{i}"), e)).collect() }
    }
}

impl TryFrom<MonomialRepr> for Monomial {
    type Error = Error;
    fn try_from(r: MonomialRepr) -> Result<Self> {
        let mut m = Monomial { qshift: r.q, tshift: r.t, ..Monomial::default() };
        for (k, e) in r.exponents {
            m = m.with_exp(parse_var(&k)?, e);
        }
        Ok(m)
    }
}

/// Exponent vector with trailing zeros trimmed, ordered lexicographically as
/// if padded with zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Key(Vec<i32>);

impl Key {
    fn new(mut v: Vec<i32>) -> Self {
        while v.last() == Some(&0) {
            v.pop();
        }
        Key(v)
    }

    fn get(&self, i: usize) -> i32 {
        self.0.get(i).copied().unwrap_or(0)
    }
}

impl Ord for Key {
    fn cmp(&self, o: &Self) -> Ordering {
        let n = self.0.len().max(o.0.len());
        for i in 0..n {
            match self.get(i).cmp(&o.get(i)) {
                Ordering::Equal => {}
                c => return c,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Exponent vector of `x_i / x_j`.
pub fn ratio(i: usize, j: usize) -> Vec<i32> {
    let mut v = vec![0; i.max(j) + 1];
    v[i] += 1;
    v[j] -= 1;
    v
}

/// A finitely supported sum of `coeff * x^e` with nonzero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly<F: Field = QRat> {
    terms: BTreeMap<Key, F>,
}

impl<F: Field> Default for LaurentPoly<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> LaurentPoly<F> {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::monomial(&[], c)
    }

    pub fn monomial(exps: &[i32], c: F) -> Self {
        let mut p = Self::zero();
        p.add_term(exps, c);
        p
    }

    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Self::monomial(&e, F::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<i32>, F)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(&e, c);
        }
        p
    }

    /// `1 - q^s x^v`.
    pub fn binomial(s: i64, v: &[i32]) -> Self {
        let mut p = Self::one();
        p.add_term(v, -F::q_pow(s));
        p
    }

    /// `(q^s x^v; q)_k` for `k >= 0`.
    pub fn poch(s: i64, v: &[i32], k: u32) -> Self {
        let mut p = Self::one();
        for r in 0..k as i64 {
            p = &p * &Self::binomial(s + r, v);
        }
        p
    }

    pub fn add_term(&mut self, exps: &[i32], c: F) {
        if c.is_zero() {
            return;
        }
        let k = Key::new(exps.to_vec());
        match self.terms.get_mut(&k) {
            Some(v) => {
                let s = v.clone() + &c;
                if s.is_zero() {
                    self.terms.remove(&k);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic order of their (trimmed) exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&[i32], &F)> {
        self.terms.iter().map(|(k, c)| (k.0.as_slice(), c))
    }

    pub fn coeff(&self, exps: &[i32]) -> F {
        self.terms.get(&Key::new(exps.to_vec())).cloned().unwrap_or_else(F::zero)
    }

    /// One more than the highest variable index occurring.
    pub fn nvars(&self) -> usize {
        self.terms.keys().map(|k| k.0.len()).max().unwrap_or(0)
    }

    pub fn scale(&self, k: &F) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (e.clone(), c.clone() * k)).collect() }
    }

    pub fn mul_monomial(&self, exps: &[i32], k: &F) -> Self {
        let mut p = Self::zero();
        for (e, c) in self.terms() {
            p.add_term(&add_exps(e, exps), c.clone() * k);
        }
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Terms whose exponent vanishes on every variable in `vars`.
    pub fn ct(&self, vars: &[usize]) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| vars.iter().all(|&v| k.get(v) == 0))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficient of `x^0`.
    pub fn constant_term(&self) -> F {
        self.coeff(&[])
    }

    /// Replace `x_u` by `q^s x_v`, or by `q^s` when `v` is `None`.
    pub fn substitute(&self, u: usize, s: i64, v: Option<usize>) -> Self {
        let mut p = Self::zero();
        for (e, c) in self.terms() {
            let d = e.get(u).copied().unwrap_or(0);
            if d == 0 {
                p.add_term(e, c.clone());
                continue;
            }
            let mut ne = e.to_vec();
            ne[u] = 0;
            if let Some(v) = v {
                if ne.len() <= v {
                    ne.resize(v + 1, 0);
                }
                ne[v] += d;
            }
            p.add_term(&ne, c.clone() * &F::q_pow(s * d as i64));
        }
        p
    }

    /// Apply `x_i -> x_{perm[i]}`; variables beyond `perm` are fixed.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut p = Self::zero();
        for (e, c) in self.terms() {
            let n = e.len().max(perm.iter().map(|&j| j + 1).max().unwrap_or(0));
            let mut ne = vec![0; n];
            for (i, &d) in e.iter().enumerate() {
                let j = perm.get(i).copied().unwrap_or(i);
                ne[j] += d;
            }
            p.add_term(&ne, c.clone());
        }
        p
    }

    /// Map coefficients into another field.
    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> LaurentPoly<G> {
        let mut p = LaurentPoly::zero();
        for (e, c) in self.terms() {
            p.add_term(e, f(c));
        }
        p
    }

    /// The common total degree, if every term has the same one.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(|k| k.0.iter().map(|&d| d as i64).sum::<i64>());
        let d = it.next().unwrap_or(0);
        it.all(|e| e == d).then_some(d)
    }

    /// `(min, max)` exponent of `x_i`, `None` for the zero polynomial.
    pub fn degree_range(&self, i: usize) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|k| k.get(i));
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), d| (lo.min(d), hi.max(d))))
    }

    /// Coefficients of the powers of `x_i` (the remaining polynomial in the
    /// other variables).
    pub fn collect_in(&self, i: usize) -> BTreeMap<i32, Self> {
        let mut out: BTreeMap<i32, Self> = BTreeMap::new();
        for (e, c) in self.terms() {
            let d = e.get(i).copied().unwrap_or(0);
            let mut ne = e.to_vec();
            if d != 0 {
                ne[i] = 0;
            }
            out.entry(d).or_default().add_term(&ne, c.clone());
        }
        out
    }
}

fn add_exps(a: &[i32], b: &[i32]) -> Vec<i32> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut v = long.to_vec();
    for (x, y) in v.iter_mut().zip(short) {
        *x += y;
    }
    v
}

impl<F: Field> Add<&LaurentPoly<F>> for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn add(self, o: &LaurentPoly<F>) -> LaurentPoly<F> {
        let mut p = self.clone();
        for (e, c) in o.terms() {
            p.add_term(e, c.clone());
        }
        p
    }
}

impl<F: Field> Sub<&LaurentPoly<F>> for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn sub(self, o: &LaurentPoly<F>) -> LaurentPoly<F> {
        let mut p = self.clone();
        for (e, c) in o.terms() {
            p.add_term(e, -c.clone());
        }
        p
    }
}

impl<F: Field> Mul<&LaurentPoly<F>> for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn mul(self, o: &LaurentPoly<F>) -> LaurentPoly<F> {
        let mut p = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in o.terms() {
                p.add_term(&add_exps(e1, e2), c1.clone() * c2);
            }
        }
        p
    }
}

impl<F: Field> Neg for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn neg(self) -> LaurentPoly<F> {
        LaurentPoly { terms: self.terms.iter().map(|(k, c)| (k.clone(), -c.clone())).collect() }
    }
}

macro_rules! owned_poly_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl<F: Field> $tr<LaurentPoly<F>> for LaurentPoly<F> {
            type Output = LaurentPoly<F>;
            fn $m(self, o: LaurentPoly<F>) -> LaurentPoly<F> { (&self).$m(&o) }
        }
        impl<F: Field> $tr<&LaurentPoly<F>> for LaurentPoly<F> {
            type Output = LaurentPoly<F>;
            fn $m(self, o: &LaurentPoly<F>) -> LaurentPoly<F> { (&self).$m(o) }
        }
    )*};
}
owned_poly_ops!(Add add, Sub sub, Mul mul);

impl<F: Field> Neg for LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn neg(self) -> LaurentPoly<F> {
        -&self
    }
}

impl<F: Field> fmt::Display for LaurentPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (i, d) in e.iter().enumerate() {
                if *d != 0 {
                    write!(f, "*x{i}^{d}")?;
                }
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for LaurentPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(serde::Serialize, serde::Deserialize)]
struct TermRepr {
    exponents: BTreeMap<String, i32>,
    coeff: String,
}

impl serde::Serialize for LaurentPoly<QRat> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<TermRepr> = self
            .terms()
            .map(|(e, c)| TermRepr {
                exponents: e
                    .iter()
                    .enumerate()
                    .filter(|(_, d)| **d != 0)
                    .map(|(i, d)| (format!("x{i}"), *d))
                    .collect(),
                coeff: c.to_string(),
            })
            .collect();
        v.serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for LaurentPoly<QRat> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let v = Vec::<TermRepr>::deserialize(d)?;
        let mut p = LaurentPoly::zero();
        for t in v {
            let mut e = Vec::new();
            for (name, d) in t.exponents {
                let i = parse_var(&name).map_err(D::Error::custom)?;
                if e.len() <= i {
                    e.resize(i + 1, 0);
                }
                e[i] += d;
            }
            let c: QRat = t.coeff.parse().map_err(D::Error::custom)?;
            p.add_term(&e, c);
        }
        Ok(p)
    }
}

fn parse_var(name: &str) -> Result<usize> {
    name.strip_prefix('x')
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad variable name `{name}`")))
}

/// `chi(cond)` as an integer.
pub(crate) fn chi(b: bool) -> i64 {
    b as i64
}

/// The product `F_{n,n0}(x; a, b, c, m)` over `x0..xn`, expanded.
pub fn build_f(n: usize, n0: usize, a: u32, b: u32, c: u32, m: usize) -> Result<LaurentPoly> {
    if n == 0 || c == 0 {
        return Err(Error::Domain(format!("build_f needs n >= 1 and c >= 1, got n={n}, c={c}")));
    }
    if m > n {
        return Err(Error::Precondition(format!("m={m} exceeds n={n}")));
    }
    Ok(f_factors(n, n0, a, b, c, m).expand())
}

/// `D_{n,n0}(x, c)` over `x1..xn` (index 0 unused).
pub fn build_d(n: usize, n0: usize, c: u32) -> Result<LaurentPoly> {
    if c == 0 {
        return Err(Error::Domain("build_d needs c >= 1".into()));
    }
    Ok(f_factors(n, n0, 0, 0, c, 0).expand())
}

/// `D_{n,n0}` on an arbitrary list of variable indices, by direct
/// multiplication.
pub fn build_d_on(vars: &[usize], n0: usize, c: u32) -> LaurentPoly {
    let mut p = LaurentPoly::one();
    for (a, &i) in vars.iter().enumerate() {
        let k = c - (a < n0) as u32;
        for &j in &vars[a + 1..] {
            p = &p * &LaurentPoly::poch(0, &ratio(i, j), k);
            p = &p * &LaurentPoly::poch(1, &ratio(j, i), k);
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(e: i64) -> QRat {
        QRat::q_pow(e)
    }

    #[test]
    fn ct_small_examples() {
        let f = LaurentPoly::from_terms([(vec![0, 1, -1], QRat::one()), (vec![], QRat::from_i64(3))]);
        assert_eq!(f.ct(&[1, 2]), LaurentPoly::constant(QRat::from_i64(3)));
        let g: LaurentPoly = LaurentPoly::binomial(0, &ratio(1, 2)) * LaurentPoly::binomial(1, &ratio(2, 1));
        assert_eq!(g.ct(&[1, 2]).constant_term(), QRat::one() + q(1));
    }

    #[test]
    fn ct_commutes() {
        let f: LaurentPoly = LaurentPoly::poch(0, &ratio(1, 2), 2) * LaurentPoly::poch(1, &ratio(2, 3), 2);
        assert_eq!(f.ct(&[1]).ct(&[2]), f.ct(&[1, 2]));
        assert_eq!(f.ct(&[2]).ct(&[1]), f.ct(&[1, 2]));
    }

    #[test]
    fn build_f_single_factor() {
        let f = build_f(1, 0, 1, 1, 1, 0).unwrap();
        let want = LaurentPoly::binomial(0, &ratio(0, 1)) * LaurentPoly::binomial(1, &ratio(1, 0));
        assert_eq!(f, want);
    }

    #[test]
    fn build_f_degenerate_pair() {
        assert_eq!(build_f(2, 1, 0, 0, 1, 0).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn build_f_n0_ge_n_lowers_c() {
        for c in 2..4 {
            assert_eq!(build_d(2, 2, c).unwrap(), build_d(2, 0, c - 1).unwrap());
            assert_eq!(build_f(2, 2, 1, 1, c, 0).unwrap(), build_f(2, 0, 1, 1, c - 1, 0).unwrap());
        }
    }

    #[test]
    fn build_d_matches_direct_product() {
        for (n, n0, c) in [(2, 0, 1), (3, 1, 2), (3, 0, 2)] {
            let vars: Vec<usize> = (1..=n).collect();
            assert_eq!(build_d(n, n0, c).unwrap(), build_d_on(&vars, n0, c));
        }
        let d = build_d(2, 0, 1).unwrap();
        assert_eq!(d.constant_term(), QRat::one() + q(1));
    }

    #[test]
    fn substitution_and_permutation() {
        let f = LaurentPoly::<QRat>::binomial(2, &ratio(1, 2));
        let g = f.substitute(1, 3, Some(2));
        assert_eq!(g, LaurentPoly::constant(QRat::one() - q(5)));
        let h = f.permute(&[0, 2, 1]);
        assert_eq!(h, LaurentPoly::binomial(2, &ratio(2, 1)));
    }

    #[test]
    fn homogeneity_and_degree() {
        let f = build_f(2, 0, 1, 2, 1, 1).unwrap();
        assert_eq!(f.homogeneous_degree(), Some(0));
        assert_eq!(f.degree_range(0), Some((-5, 2)));
    }

    #[test]
    fn serde_round_trip() {
        let f = build_d(2, 0, 1).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        let g: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(f, g);
        assert!(s.starts_with("[{\"exponents\":{\"x1\":-1,\"x2\":1}"));
    }

    #[test]
    fn padded_lex_order() {
        let f = LaurentPoly::from_terms([(vec![1], QRat::one()), (vec![1, -1], QRat::one())]);
        let keys: Vec<Vec<i32>> = f.terms().map(|(e, _)| e.to_vec()).collect();
        assert_eq!(keys, vec![vec![1, -1], vec![1]]);
    }
}
