//! Expansion of products of binomials `1 - q^e x^v`.
//!
//! Exponent vectors are packed into a `u128` (one fixed-width field per
//! variable, offset so every field is nonnegative). Adding a packed shift
//! preserves key order, so multiplying by one binomial is a linear merge of
//! the sorted term list with a shifted copy of itself. Coefficients are dense
//! Laurent polynomials in `q` stored in one arena. When only a few target
//! coefficients are wanted, terms that can no longer reach the target box
//! through the remaining factors are dropped.

use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{chi, ratio, LaurentPoly};
use crate::qfield::{Field, QRat};
use crate::{Error, Result};

/// The binomial `1 - q^qexp x^exps`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub qexp: i64,
    pub exps: Vec<i32>,
}

/// A product of binomials over a fixed number of variables.
#[derive(Clone, Debug, Default)]
pub struct BinomialProduct {
    nvars: usize,
    factors: Vec<Factor>,
}

/// The factor list of `F_{n,n0}(x; a, b, c, m)` over `x0..xn`.
pub fn f_factors(n: usize, n0: usize, a: u32, b: u32, c: u32, m: usize) -> BinomialProduct {
    let mut p = BinomialProduct::new(n + 1);
    for i in 1..=n {
        p.push_poch(0, &ratio(0, i), a);
        p.push_poch(1, &ratio(i, 0), b + chi(i + m > n) as u32);
    }
    for i in 1..=n {
        let k = c - chi(i <= n0) as u32;
        for j in i + 1..=n {
            p.push_poch(0, &ratio(i, j), k);
            p.push_poch(1, &ratio(j, i), k);
        }
    }
    p
}

impl BinomialProduct {
    pub fn new(nvars: usize) -> Self {
        BinomialProduct { nvars, factors: Vec::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Multiply by `1 - q^qexp x^exps`.
    pub fn push(&mut self, qexp: i64, exps: &[i32]) {
        let mut v = exps.to_vec();
        if v.len() > self.nvars {
            self.nvars = v.len();
            for f in &mut self.factors {
                f.exps.resize(self.nvars, 0);
            }
        }
        v.resize(self.nvars, 0);
        self.factors.push(Factor { qexp, exps: v });
    }

    /// Multiply by `(q^s x^v; q)_k`.
    pub fn push_poch(&mut self, s: i64, exps: &[i32], k: u32) {
        for r in 0..k as i64 {
            self.push(s + r, exps);
        }
    }

    pub fn extend(&mut self, o: &BinomialProduct) {
        for f in &o.factors {
            self.push(f.qexp, &f.exps);
        }
    }

    /// Every factor is homogeneous of degree 0.
    pub fn is_homogeneous(&self) -> bool {
        self.factors.iter().all(|f| f.exps.iter().map(|&d| d as i64).sum::<i64>() == 0)
    }

    /// The naive product, one factor at a time.
    pub fn expand_naive(&self) -> LaurentPoly {
        let mut p = LaurentPoly::one();
        for f in &self.factors {
            p = &p * &LaurentPoly::binomial(f.qexp, &f.exps);
        }
        p
    }

    /// The full expansion.
    pub fn expand(&self) -> LaurentPoly {
        match run(self.nvars, &self.factors, None, Width::Auto).expect("full expansion fits its own layout") {
            Output::Full(terms) => LaurentPoly::from_terms(terms),
            Output::Targets(_) => unreachable!(),
        }
    }

    /// Coefficients of `x^t` for each target `t`.
    pub fn coefficients(&self, targets: &[Vec<i32>]) -> Result<Vec<QRat>> {
        self.coefficients_with(targets, Width::Auto)
    }

    pub(crate) fn coefficients_with(&self, targets: &[Vec<i32>], w: Width) -> Result<Vec<QRat>> {
        let nv = targets.iter().map(|t| t.len()).max().unwrap_or(0).max(self.nvars);
        let mut factors = self.factors.clone();
        for f in &mut factors {
            f.exps.resize(nv, 0);
        }
        let ts: Vec<Vec<i64>> = targets
            .iter()
            .map(|t| {
                let mut v: Vec<i64> = t.iter().map(|&d| d as i64).collect();
                v.resize(nv, 0);
                v
            })
            .collect();
        match run(nv, &factors, Some(&ts), w)? {
            Output::Targets(v) => Ok(v),
            Output::Full(_) => unreachable!(),
        }
    }

    /// The product with variable `e` set to 1 and removed; later indices
    /// shift down by one.
    pub fn eliminate(&self, e: usize) -> BinomialProduct {
        let mut p = BinomialProduct::new(self.nvars.saturating_sub(1));
        for f in &self.factors {
            let mut v = f.exps.clone();
            if e < v.len() {
                v.remove(e);
            }
            p.push(f.qexp, &v);
        }
        p
    }

    /// `CT g * prod` over all variables. With `eliminate = Some(e)` the
    /// product must be homogeneous of degree 0; only the degree-0 part of `g`
    /// can contribute, and `x_e` is then set to 1.
    pub fn ct_with(&self, g: &LaurentPoly, eliminate: Option<usize>) -> Result<QRat> {
        self.ct_with_width(g, eliminate, Width::Auto)
    }

    pub(crate) fn ct_with_width(&self, g: &LaurentPoly, eliminate: Option<usize>, w: Width) -> Result<QRat> {
        let (prod, g) = match eliminate {
            None => (self.clone(), g.clone()),
            Some(e) => {
                if !self.is_homogeneous() {
                    return Err(Error::Precondition(
                        "eliminating a variable needs a product homogeneous of degree 0".into(),
                    ));
                }
                let mut g2 = LaurentPoly::zero();
                for (ex, c) in g.terms() {
                    if ex.iter().map(|&d| d as i64).sum::<i64>() != 0 {
                        continue;
                    }
                    let mut v = ex.to_vec();
                    if e < v.len() {
                        v.remove(e);
                    }
                    g2.add_term(&v, c.clone());
                }
                (self.eliminate(e), g2)
            }
        };
        if g.is_zero() {
            return Ok(QRat::zero());
        }
        let targets: Vec<Vec<i32>> = g.terms().map(|(e, _)| e.iter().map(|d| -d).collect()).collect();
        let vals = prod.coefficients_with(&targets, w)?;
        let mut acc = QRat::zero();
        for ((_, c), v) in g.terms().zip(vals) {
            if !v.is_zero() {
                acc = acc + &(c.clone() * &v);
            }
        }
        Ok(acc)
    }

    /// `CT prod` over all variables.
    pub fn constant_term(&self) -> Result<QRat> {
        Ok(self.coefficients(&[vec![]])?.pop().unwrap())
    }
}

/// Coefficient integer type; `Auto` picks the narrowest one that cannot
/// overflow (a product of `k` binomials has coefficients of size at most
/// `2^k`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Width {
    Auto,
    #[allow(dead_code)]
    I128,
    #[allow(dead_code)]
    Big,
}

trait Coef: Clone + Zero + One + PartialEq + Add<Output = Self> + Sub<Output = Self> + Neg<Output = Self> {
    fn big(&self) -> BigInt;
}

impl Coef for i64 {
    fn big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coef for i128 {
    fn big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coef for BigInt {
    fn big(&self) -> BigInt {
        self.clone()
    }
}

enum Output {
    Full(Vec<(Vec<i32>, QRat)>),
    Targets(Vec<QRat>),
}

struct Layout {
    nvars: usize,
    bits: u32,
    offset: i64,
    mask: u128,
}

impl Layout {
    fn new(nvars: usize, lo: &[i64], hi: &[i64]) -> Result<Self> {
        let bits = if nvars == 0 { 16 } else { (128 / nvars as u32).min(40) };
        if bits < 4 {
            return Err(Error::Unsupported(format!("{nvars} variables do not fit a packed key")));
        }
        let offset = 1i64 << (bits - 1);
        let l = Layout { nvars, bits, offset, mask: (1u128 << bits) - 1 };
        for i in 0..nvars {
            if lo[i] < -offset || hi[i] >= offset {
                return Err(Error::Unsupported(format!(
                    "exponent range [{}, {}] of x{i} exceeds the {bits}-bit key field",
                    lo[i], hi[i]
                )));
            }
        }
        Ok(l)
    }

    fn pack(&self, e: &[i64]) -> u128 {
        let mut k = 0u128;
        for (i, &d) in e.iter().enumerate() {
            k |= ((d + self.offset) as u128) << (self.bits * i as u32);
        }
        k
    }

    fn delta(&self, v: &[i32]) -> u128 {
        let mut d = 0i128;
        for (i, &x) in v.iter().enumerate() {
            d += (x as i128) << (self.bits * i as u32);
        }
        d as u128
    }

    #[inline]
    fn field(&self, k: u128, i: usize) -> i64 {
        ((k >> (self.bits * i as u32)) & self.mask) as i64 - self.offset
    }

    #[inline]
    fn within(&self, k: u128, lo: &[i64], hi: &[i64]) -> bool {
        (0..self.nvars).all(|i| {
            let f = self.field(k, i);
            f >= lo[i] && f <= hi[i]
        })
    }

    fn unpack(&self, k: u128) -> Vec<i32> {
        (0..self.nvars).map(|i| self.field(k, i) as i32).collect()
    }
}

struct State<T> {
    keys: Vec<u128>,
    /// `(lowest q-exponent, arena start, length)` per key.
    meta: Vec<(i64, usize, usize)>,
    arena: Vec<T>,
}

impl<T: Coef> State<T> {
    fn one(key: u128) -> Self {
        State { keys: vec![key], meta: vec![(0, 0, 1)], arena: vec![T::one()] }
    }

    fn coeff_slice(&self, idx: usize) -> (i64, &[T]) {
        let (lo, s, l) = self.meta[idx];
        (lo, &self.arena[s..s + l])
    }

    /// Multiply by `1 - q^e x^delta`, keeping keys inside `[lo, hi]`.
    fn step(&self, layout: &Layout, delta: u128, e: i64, bounds: Option<(&[i64], &[i64])>, scratch: &mut Vec<T>) -> Self {
        let n = self.keys.len();
        let mut out = State {
            keys: Vec::with_capacity(n * 2),
            meta: Vec::with_capacity(n * 2),
            arena: Vec::with_capacity(self.arena.len() * 2),
        };
        let (mut i, mut j) = (0usize, 0usize);
        while i < n || j < n {
            let ka = (i < n).then(|| self.keys[i]);
            let kb = (j < n).then(|| self.keys[j].wrapping_add(delta));
            let (key, ta, tb) = match (ka, kb) {
                (Some(a), Some(b)) if a < b => (a, true, false),
                (Some(a), Some(b)) if b < a => (b, false, true),
                (Some(a), Some(_)) => (a, true, true),
                (Some(a), None) => (a, true, false),
                (None, Some(b)) => (b, false, true),
                (None, None) => unreachable!(),
            };
            let (ai, bj) = (i, j);
            i += ta as usize;
            j += tb as usize;
            if let Some((lo, hi)) = bounds {
                if !layout.within(key, lo, hi) {
                    continue;
                }
            }
            let start = out.arena.len();
            match (ta, tb) {
                (true, false) => {
                    let (lo, c) = self.coeff_slice(ai);
                    out.arena.extend_from_slice(c);
                    out.keys.push(key);
                    out.meta.push((lo, start, c.len()));
                }
                (false, true) => {
                    let (lo, c) = self.coeff_slice(bj);
                    out.arena.extend(c.iter().map(|x| -x.clone()));
                    out.keys.push(key);
                    out.meta.push((lo + e, start, c.len()));
                }
                _ => {
                    let (la, ca) = self.coeff_slice(ai);
                    let (lb, cb) = self.coeff_slice(bj);
                    let lb = lb + e;
                    let lo = la.min(lb);
                    let hi = (la + ca.len() as i64).max(lb + cb.len() as i64);
                    scratch.clear();
                    scratch.resize((hi - lo) as usize, T::zero());
                    let oa = (la - lo) as usize;
                    for (k, x) in ca.iter().enumerate() {
                        scratch[oa + k] = x.clone();
                    }
                    let ob = (lb - lo) as usize;
                    for (k, x) in cb.iter().enumerate() {
                        let s = std::mem::replace(&mut scratch[ob + k], T::zero());
                        scratch[ob + k] = s - x.clone();
                    }
                    let Some(first) = scratch.iter().position(|x| !x.is_zero()) else {
                        continue;
                    };
                    let last = scratch.iter().rposition(|x| !x.is_zero()).unwrap();
                    out.arena.extend_from_slice(&scratch[first..=last]);
                    out.keys.push(key);
                    out.meta.push((lo + first as i64, start, last + 1 - first));
                }
            }
        }
        out
    }

    fn value(&self, idx: usize) -> QRat {
        let (lo, c) = self.coeff_slice(idx);
        QRat::from_laurent(lo, c.iter().map(Coef::big).collect())
    }
}

fn run(nvars: usize, factors: &[Factor], targets: Option<&[Vec<i64>]>, w: Width) -> Result<Output> {
    // scalar factors split off
    let mut scalar = QRat::one();
    let mut fs: Vec<&Factor> = Vec::new();
    for f in factors {
        if f.exps.iter().all(|&d| d == 0) {
            scalar = scalar * &QRat::one_minus_q_pow(f.qexp);
        } else {
            fs.push(f);
        }
    }
    let zero_out = |targets: Option<&[Vec<i64>]>| match targets {
        Some(t) => Output::Targets(vec![QRat::zero(); t.len()]),
        None => Output::Full(Vec::new()),
    };
    if scalar.is_zero() {
        return Ok(zero_out(targets));
    }
    // close the highest-index variables first
    let top = |f: &Factor| f.exps.iter().rposition(|&d| d != 0).unwrap_or(0);
    fs.sort_by_key(|f| std::cmp::Reverse(top(f)));

    let k = fs.len();
    let mut rest_min = vec![vec![0i64; nvars]; k + 1];
    let mut rest_max = vec![vec![0i64; nvars]; k + 1];
    for s in (0..k).rev() {
        for i in 0..nvars {
            let d = fs[s].exps[i] as i64;
            rest_min[s][i] = rest_min[s + 1][i] + d.min(0);
            rest_max[s][i] = rest_max[s + 1][i] + d.max(0);
        }
    }
    let layout = Layout::new(nvars, &rest_min[0], &rest_max[0])?;

    // per-step boxes: after applying `s` factors, a key must lie in bounds[s]
    let bounds: Option<Vec<(Vec<i64>, Vec<i64>)>> = match targets {
        None => None,
        Some(ts) => {
            if ts.is_empty() {
                return Ok(Output::Targets(Vec::new()));
            }
            let mut lo = vec![i64::MAX; nvars];
            let mut hi = vec![i64::MIN; nvars];
            for t in ts {
                for i in 0..nvars {
                    lo[i] = lo[i].min(t[i]);
                    hi[i] = hi[i].max(t[i]);
                }
            }
            Some(
                (0..=k)
                    .map(|s| {
                        let l: Vec<i64> = (0..nvars).map(|i| lo[i] - rest_max[s][i]).collect();
                        let h: Vec<i64> = (0..nvars).map(|i| hi[i] - rest_min[s][i]).collect();
                        (l, h)
                    })
                    .collect(),
            )
        }
    };
    let steps: Vec<(u128, i64)> = fs.iter().map(|f| (layout.delta(&f.exps), f.qexp)).collect();
    let plan = Plan { layout: &layout, steps: &steps, bounds: bounds.as_deref(), targets, scalar: &scalar };
    let width = match w {
        Width::Auto if k <= 62 => 0,
        Width::Auto if k <= 126 => 1,
        Width::Auto => 2,
        Width::I128 if k <= 126 => 1,
        _ => 2,
    };
    Ok(match width {
        0 => plan.exec::<i64>(),
        1 => plan.exec::<i128>(),
        _ => plan.exec::<BigInt>(),
    })
}

struct Plan<'a> {
    layout: &'a Layout,
    steps: &'a [(u128, i64)],
    bounds: Option<&'a [(Vec<i64>, Vec<i64>)]>,
    targets: Option<&'a [Vec<i64>]>,
    scalar: &'a QRat,
}

impl Plan<'_> {
    fn exec<T: Coef>(&self) -> Output {
        let l = self.layout;
        let zero_key = l.pack(&vec![0; l.nvars]);
        let mut st = State::<T>::one(zero_key);
        if let Some(b) = self.bounds {
            if !l.within(zero_key, &b[0].0, &b[0].1) {
                st.keys.clear();
                st.meta.clear();
            }
        }
        let mut scratch = Vec::new();
        for (s, &(delta, e)) in self.steps.iter().enumerate() {
            if st.keys.is_empty() {
                break;
            }
            let b = self.bounds.map(|b| (b[s + 1].0.as_slice(), b[s + 1].1.as_slice()));
            st = st.step(l, delta, e, b, &mut scratch);
        }
        match self.targets {
            None => Output::Full(
                (0..st.keys.len()).map(|i| (l.unpack(st.keys[i]), st.value(i) * self.scalar)).collect(),
            ),
            Some(ts) => Output::Targets(
                ts.iter()
                    .map(|t| {
                        let fits = t.iter().all(|&d| d >= -l.offset && d < l.offset);
                        if !fits {
                            return QRat::zero();
                        }
                        match st.keys.binary_search(&l.pack(t)) {
                            Ok(i) => st.value(i) * self.scalar,
                            Err(_) => QRat::zero(),
                        }
                    })
                    .collect(),
            ),
        }
    }
}
