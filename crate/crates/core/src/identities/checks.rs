//! Vanishing lemmas, root sets, polynomiality in `q^a` and special points.

use serde::{Deserialize, Serialize};

use super::closed::{extr2_prefactor, extra_c_rhs, rhs_a, sub_b_prefactor};
use super::interp::QaPoly;
use super::{ct_b, h_row, lhs_a, lhs_c, weighted_vars, IdentityParams, Which};
use crate::laurent::{chi, f_factors, LaurentPoly};
use crate::partitions::Partition;
use crate::qfield::{q_poch_qpower, Field, QRat};
use crate::{Error, Result};

/// A vanishing constant term and its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VanishingCase {
    /// `CT x^{-v} h_lambda[W] D_{n,n0}(x; c)` with `lambda_1 > max v`,
    /// `|v| = |lambda|` and `W = sum (1 - q^{c - chi(i <= n0)})/(1 - q) x_i`.
    Lem36 { n: usize, n0: usize, c: u32, v: Vec<i32>, lambda: Partition },
    /// `CT x0^{-l-m} h_l[W] H prod (x0/x_i)_a D_{n,n0}(x; c)` for every
    /// `a < l` and every monomial `H` of degree `m` in `x0..xn`.
    Lem37 { n: usize, n0: usize, c: u32, l: u32, m: u32 },
    /// `CT (x1 x2)/(x3 x4) D_{4,2}(x, c)`.
    Ex38 { c: u32 },
    /// `CT x1...x_{n0} / (x_{n0+1}...x_n)^h x^t D_{n,n0}(x, c)` with
    /// `|t| = h(n - n0) - n0`.
    Lem310 { n: usize, n0: usize, c: u32, h: u32, t: Vec<u32> },
}

fn pre(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Precondition(what.to_string()))
    }
}

/// `CT x^e D_{n,n0}(x; c)` for each exponent vector `e` over `x1..xn`,
/// weighted by `g`.
fn ct_d(n: usize, n0: usize, c: u32, g: &LaurentPoly) -> Result<QRat> {
    f_factors(n, n0, 0, 0, c, 0).ct_with(g, None)
}

/// Exponent vectors of all monomials of degree `m` in `k` variables.
fn monomials(k: usize, m: u32) -> Vec<Vec<i32>> {
    if k == 0 {
        return if m == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for e in 0..=m {
        for mut rest in monomials(k - 1, m - e) {
            rest.insert(0, e as i32);
            out.push(rest);
        }
    }
    out
}

/// The constant terms a vanishing case asserts to be zero.
pub fn vanishing_values(case: &VanishingCase) -> Result<Vec<QRat>> {
    match case {
        VanishingCase::Lem36 { n, n0, c, v, lambda } => {
            let (n, n0, c) = (*n, *n0, *c);
            pre(n >= 1 && c >= 1 && n0 <= n, "n >= 1, c >= 1, n0 <= n")?;
            pre(v.len() == n, "v has n entries")?;
            pre(v.iter().map(|&x| x as i64).sum::<i64>() == lambda.size() as i64, "|v| = |lambda|")?;
            pre(v.iter().all(|&x| (x as i64) < lambda.part(1) as i64), "lambda_1 > max v")?;
            let w = weighted_vars(n, n0, c, 1)?;
            let mut g = LaurentPoly::one();
            for &r in lambda.parts() {
                g = &g * &h_row(r, &w)?;
            }
            let mut e = vec![0];
            e.extend(v.iter().map(|x| -x));
            Ok(vec![ct_d(n, n0, c, &g.mul_monomial(&e, &QRat::one()))?])
        }
        VanishingCase::Lem37 { n, n0, c, l, m } => {
            let (n, n0, c, l, m) = (*n, *n0, *c, *l, *m);
            pre(n >= 1 && c >= 1 && l >= 1 && n0 <= n, "n >= 1, c >= 1, l >= 1, n0 <= n")?;
            let hl = h_row(l, &weighted_vars(n, n0, c, 1)?)?;
            let mut out = Vec::new();
            for a in 0..l {
                let prod = f_factors(n, n0, a, 0, c, 0);
                for mut e in monomials(n + 1, m) {
                    e[0] -= (l + m) as i32;
                    out.push(prod.ct_with(&hl.mul_monomial(&e, &QRat::one()), Some(0))?);
                }
            }
            Ok(out)
        }
        VanishingCase::Ex38 { c } => {
            pre(*c >= 1, "c >= 1")?;
            let g = LaurentPoly::monomial(&[0, 1, 1, -1, -1], QRat::one());
            Ok(vec![ct_d(4, 2, *c, &g)?])
        }
        VanishingCase::Lem310 { n, n0, c, h, t } => {
            let (n, n0, c, h) = (*n, *n0, *c, *h);
            pre(c >= 1, "c >= 1")?;
            pre(n0 >= 2 && n0 < n, "2 <= n0 <= n - 1")?;
            pre(h >= 1 && (h as usize) < n0, "1 <= h <= n0 - 1")?;
            pre(t.len() == n, "t has n entries")?;
            let target = h as i64 * (n - n0) as i64 - n0 as i64;
            pre(t.iter().map(|&x| x as i64).sum::<i64>() == target, "|t| = h(n - n0) - n0")?;
            let mut e = vec![0];
            for (i, &ti) in t.iter().enumerate() {
                let base = if i < n0 { 1 } else { -(h as i32) };
                e.push(base + ti as i32);
            }
            Ok(vec![ct_d(n, n0, c, &LaurentPoly::monomial(&e, QRat::one()))?])
        }
    }
}

/// True iff every constant term of the case is zero.
pub fn verify_vanishing(case: &VanishingCase) -> Result<bool> {
    Ok(vanishing_values(case)?.iter().all(|v| v.is_zero()))
}

fn degree_bound(which: Which, p: &IdentityParams) -> usize {
    let base = p.n * p.b as usize + p.l as usize;
    match which {
        Which::B => base + p.mu.size() as usize,
        Which::C => base + p.m,
    }
}

fn value_at(which: Which, p: &IdentityParams, a: u32) -> Result<QRat> {
    match which {
        Which::B => ct_b(p.n, p.n0, a, p.b, p.c, p.l, &p.mu),
        Which::C => lhs_c(p.n, p.n0, a, p.b, p.c, p.l, p.m),
    }
}

/// Constant-term values of `B` or `C` at `a = 0..count`; `p.a` is ignored.
pub fn values(which: Which, p: &IdentityParams, count: usize) -> Result<Vec<QRat>> {
    (0..count as u32).map(|a| value_at(which, p, a)).collect()
}

/// `B` or `C` as a polynomial in `q^a` of the stated degree bound.
pub fn extension(which: Which, p: &IdentityParams) -> Result<QaPoly> {
    QaPoly::new(values(which, p, degree_bound(which, p) + 1)?)
}

/// True iff the values at `a = 0..=d+extra` lie on one polynomial of degree at
/// most `d` in `q^a`, with `d = nb + l + |mu|` for `B` and `nb + l + m` for `C`.
pub fn verify_polynomiality(which: Which, p: &IdentityParams, extra_points: usize) -> Result<bool> {
    let d = degree_bound(which, p);
    let vals = values(which, p, d + 1 + extra_points)?;
    let poly = QaPoly::new(vals[..=d].to_vec())?;
    for (k, v) in vals.iter().enumerate().skip(d + 1) {
        if poly.at(k as i64)? != *v {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `-ic + n0 - chi(i <= n0)(n0 - i)`.
fn shift(i: i64, n0: i64, c: i64) -> i64 {
    -i * c + n0 - chi(i <= n0) * (n0 - i)
}

/// The predicted roots in `a`: `B1 u B2 u B3` or `C1 u C2 u C3`.
pub fn root_set(which: Which, p: &IdentityParams) -> Result<Vec<i64>> {
    let (n, n0, b, c) = (p.n as i64, p.n0 as i64, p.b as i64, p.c as i64);
    pre(n >= 1 && n0 < n && c >= 1, "0 <= n0 < n, c >= 1")?;
    let mut roots = Vec::new();
    for i in 0..n {
        roots.extend((1..=b).map(|k| shift(i, n0, c) - k));
    }
    roots.extend(0..p.l as i64);
    match which {
        Which::B => {
            pre(c > b + p.mu.part(1) as i64, "c > b + mu_1")?;
            for j in 1..=p.mu.len() as i64 {
                let mj = p.mu.part(j as usize) as i64;
                roots.extend((1..=mj).map(|k| -(n - j) * c + n0 - b - k));
            }
        }
        Which::C => {
            pre(c > b + 1, "c > b + 1")?;
            pre(p.m as i64 <= n, "m <= n")?;
            for i in n - p.m as i64..n {
                roots.push(shift(i, n0, c) - b - 1);
            }
        }
    }
    Ok(roots)
}

/// True iff the polynomial extension vanishes at `q^a` for every predicted
/// root `a`.
pub fn verify_roots(which: Which, p: &IdentityParams) -> Result<bool> {
    let roots = root_set(which, p)?;
    let poly = extension(which, p)?;
    for a in roots {
        if !poly.at(a)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Three values at the special point: the interpolated constant term, the
/// closed form and an independent second route.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialPoint {
    pub a: i64,
    pub interpolated: QRat,
    pub closed_form: QRat,
    pub alternate: QRat,
}

impl SpecialPoint {
    pub fn holds(&self) -> bool {
        self.interpolated == self.closed_form && self.interpolated == self.alternate
    }
}

/// For `B` (needs `l(mu) < n - n0`, `c > b`): `a = -n0(c-1) - b - 1`, with the
/// closed form using the `A` closed form and the alternate using the `A`
/// constant term, both scaled by `(q^c)_l/(q)_l`. For `C` (needs `n - n0 <= m < n`, `c > b + 1`):
/// `a = -(n-m-1)(c-1) - b - 1`, with the alternate through a constant term of
/// `B` with shifted parameters.
pub fn special_point(which: Which, p: &IdentityParams) -> Result<SpecialPoint> {
    let (n, n0, b, c, l) = (p.n, p.n0, p.b, p.c, p.l);
    pre(n >= 1 && n0 < n, "0 <= n0 < n")?;
    match which {
        Which::B => {
            pre(p.mu.len() < n - n0, "l(mu) < n - n0")?;
            pre(c > b, "c > b")?;
            let a = -(n0 as i64) * (c as i64 - 1) - b as i64 - 1;
            let interpolated = extension(which, p)?.at(a)?;
            // h_l[W] is g_l, not P_(l), on the reduced alphabet
            let g_to_p = q_poch_qpower(c as i64, l as i64)?.try_div(&q_poch_qpower(1, l as i64)?)?;
            let k = extr2_prefactor(n, n0, b, c)? * &g_to_p;
            let (an, aa, ab) = (n - n0 - 1, c - b - 1, (n0 as u32 + 1) * (c - 1) + b + 1);
            let row = Partition::row(l);
            let closed_form = k.clone() * &rhs_a(an, aa as i64, ab, c, &p.mu, &row)?;
            let alternate = k * &lhs_a(an, aa, ab, c, &p.mu, &row)?;
            Ok(SpecialPoint { a, interpolated, closed_form, alternate })
        }
        Which::C => {
            let m = p.m;
            pre(m < n && m + n0 >= n, "n - n0 <= m < n")?;
            pre(c > b + 1, "c > b + 1")?;
            let a = -((n - m - 1) as i64) * (c as i64 - 1) - b as i64 - 1;
            let interpolated = extension(which, p)?.at(a)?;
            let closed_form = extra_c_rhs(n, n0, b, c, l, m)?;
            let k = sub_b_prefactor(n, m, b, c, l)?;
            let bb = (n - m) as u32 * (c - 1) + b + 1;
            let alternate = k * &ct_b(m, n0 + m - n, c - b - 2, bb, c, 0, &Partition::row(l))?;
            Ok(SpecialPoint { a, interpolated, closed_form, alternate })
        }
    }
}

pub fn verify_special_points(which: Which, p: &IdentityParams) -> Result<bool> {
    Ok(special_point(which, p)?.holds())
}
