//! Headline constant-term identities: left-hand sides as exact constant
//! terms, right-hand sides as closed forms, and the checks built on them.

mod checks;
mod closed;
mod interp;

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::laurent::{chi, f_factors, LaurentPoly, Monomial};
use crate::macdonald::mac_eval;
use crate::partitions::Partition;
use crate::plethysm::{eval_sym, AlphabetExpr};
use crate::qfield::{Field, QRat};
use crate::symfunc::SymFunc;
use crate::{Error, Result};

pub use checks::{
    extension, root_set, special_point, values, vanishing_values, verify_polynomiality, verify_roots,
    verify_special_points, verify_vanishing, SpecialPoint, VanishingCase,
};
pub use closed::{extr2_prefactor, extra_c_rhs, rhs_a, rhs_b, rhs_c, rhs_qmorris, sub_b_prefactor};
pub use interp::{interpolate_at, QaPoly};

/// Which identity a parameter point belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IdentityId {
    Qmorris,
    Thm11,
    Thm12,
    Aflt,
}

/// `B` or `C`, for the checks that treat both as polynomials in `q^a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Which {
    B,
    C,
}

/// A parameter point. Fields an identity does not use are ignored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityParams {
    pub name: IdentityId,
    #[serde(default)]
    pub n: usize,
    #[serde(default)]
    pub n0: usize,
    #[serde(default)]
    pub a: i64,
    #[serde(default)]
    pub b: u32,
    #[serde(default)]
    pub c: u32,
    #[serde(default)]
    pub l: u32,
    #[serde(default)]
    pub m: usize,
    #[serde(default)]
    pub mu: Partition,
    #[serde(default)]
    pub lambda: Partition,
}

impl IdentityParams {
    fn base(name: IdentityId) -> Self {
        IdentityParams {
            name,
            n: 0,
            n0: 0,
            a: 0,
            b: 0,
            c: 0,
            l: 0,
            m: 0,
            mu: Partition::empty(),
            lambda: Partition::empty(),
        }
    }

    pub fn qmorris(n: usize, a: i64, b: u32, c: u32) -> Self {
        IdentityParams { n, a, b, c, ..Self::base(IdentityId::Qmorris) }
    }

    pub fn thm11(n: usize, n0: usize, a: i64, b: u32, c: u32, l: u32, mu: Partition) -> Self {
        IdentityParams { n, n0, a, b, c, l, mu, ..Self::base(IdentityId::Thm11) }
    }

    pub fn thm12(n: usize, n0: usize, a: i64, b: u32, c: u32, l: u32, m: usize) -> Self {
        IdentityParams { n, n0, a, b, c, l, m, ..Self::base(IdentityId::Thm12) }
    }

    pub fn aflt(n: usize, a: i64, b: u32, c: u32, lambda: Partition, mu: Partition) -> Self {
        IdentityParams { n, a, b, c, lambda, mu, ..Self::base(IdentityId::Aflt) }
    }

    /// The first domain constraint the point violates, by name.
    pub fn violated_constraint(&self) -> Option<&'static str> {
        use IdentityId::*;
        let n_pos = self.n >= 1;
        let n0_ok = self.n0 < self.n;
        match self.name {
            Qmorris => [(n_pos, "n >= 1"), (self.a >= 0, "a >= 0")].into_iter().find(|p| !p.0).map(|p| p.1),
            Thm11 => [
                (n_pos, "n >= 1"),
                (n0_ok, "0 <= n0 < n"),
                (self.a >= 0, "a >= 0"),
                (self.c >= 1, "c >= 1"),
                (self.mu.len() < self.n.saturating_sub(self.n0), "l(mu) < n - n0"),
            ]
            .into_iter()
            .find(|p| !p.0)
            .map(|p| p.1),
            Thm12 => [
                (n_pos, "n >= 1"),
                (n0_ok, "0 <= n0 < n"),
                (self.a >= 0, "a >= 0"),
                (self.c >= 1, "c >= 1"),
                (self.m <= self.n, "m <= n"),
                (self.m + self.n0 >= self.n, "m >= n - n0"),
            ]
            .into_iter()
            .find(|p| !p.0)
            .map(|p| p.1),
            Aflt => [(self.a >= 0, "a >= 0"), (self.c >= 1, "c >= 1")].into_iter().find(|p| !p.0).map(|p| p.1),
        }
    }

    fn check(&self) -> Result<()> {
        match self.violated_constraint() {
            None => Ok(()),
            Some(k) => Err(Error::Domain(format!("{k} violated at {self}"))),
        }
    }
}

impl std::fmt::Display for IdentityParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use IdentityId::*;
        match self.name {
            Qmorris => write!(f, "n={} a={} b={} c={}", self.n, self.a, self.b, self.c),
            Thm11 => write!(
                f,
                "n={} n0={} a={} b={} c={} l={} mu={}",
                self.n, self.n0, self.a, self.b, self.c, self.l, self.mu
            ),
            Thm12 => write!(
                f,
                "n={} n0={} a={} b={} c={} l={} m={}",
                self.n, self.n0, self.a, self.b, self.c, self.l, self.m
            ),
            Aflt => write!(f, "n={} a={} b={} c={} lambda={} mu={}", self.n, self.a, self.b, self.c, self.lambda, self.mu),
        }
    }
}

/// Both sides of one identity at one point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub params: IdentityParams,
    pub lhs: QRat,
    pub rhs: QRat,
    pub equal: bool,
    #[serde(with = "secs")]
    pub elapsed: Duration,
}

mod secs {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        let v = f64::deserialize(d)?;
        Duration::try_from_secs_f64(v).map_err(serde::de::Error::custom)
    }
}

/// Computes both sides at `p` and compares them.
pub fn verify(p: &IdentityParams) -> Result<VerdictRecord> {
    let t = Instant::now();
    let (lhs, rhs) = (lhs(p)?, rhs(p)?);
    let equal = (lhs.clone() - &rhs).is_zero();
    Ok(VerdictRecord { params: p.clone(), lhs, rhs, equal, elapsed: t.elapsed() })
}

/// The constant-term side at `p`.
pub fn lhs(p: &IdentityParams) -> Result<QRat> {
    p.check()?;
    let a = p.a as u32;
    match p.name {
        IdentityId::Qmorris => lhs_qmorris(p.n, a, p.b, p.c),
        IdentityId::Thm11 => lhs_b(p.n, p.n0, a, p.b, p.c, p.l, &p.mu),
        IdentityId::Thm12 => lhs_c(p.n, p.n0, a, p.b, p.c, p.l, p.m),
        IdentityId::Aflt => lhs_a(p.n, a, p.b, p.c, &p.lambda, &p.mu),
    }
}

/// The closed-form side at `p`.
pub fn rhs(p: &IdentityParams) -> Result<QRat> {
    p.check()?;
    match p.name {
        IdentityId::Qmorris => rhs_qmorris(p.n, p.a, p.b, p.c),
        IdentityId::Thm11 => rhs_b(p.n, p.n0, p.a, p.b, p.c, p.l, &p.mu),
        IdentityId::Thm12 => rhs_c(p.n, p.n0, p.a, p.b, p.c, p.l, p.m),
        IdentityId::Aflt => rhs_a(p.n, p.a, p.b, p.c, &p.lambda, &p.mu),
    }
}

/// `sum_{i=1}^n (1 - q^{c - chi(i <= n0)}) / (1 - q^den) x_i`.
pub(crate) fn weighted_vars(n: usize, n0: usize, c: u32, den: i64) -> Result<AlphabetExpr> {
    let mut terms = Vec::with_capacity(n);
    for i in 1..=n {
        let k = c as i64 - chi(i <= n0);
        terms.push(AlphabetExpr::q_ratio(k, den, AlphabetExpr::var(i))?);
    }
    Ok(terms.into_iter().reduce(AlphabetExpr::plus).unwrap_or_else(AlphabetExpr::empty))
}

/// `(q^s - q^a) / (1 - q^c)` times `x`.
pub(crate) fn binomial_letter(s: i64, a: i64, c: u32, x: AlphabetExpr) -> Result<AlphabetExpr> {
    let top = AlphabetExpr::minus(
        AlphabetExpr::scale(Monomial::q_pow(s), x.clone()),
        AlphabetExpr::scale(Monomial::q_pow(a), x),
    );
    AlphabetExpr::geom_div(top, Monomial::q_pow(c as i64))
}

pub(crate) fn h_row(l: u32, x: &AlphabetExpr) -> Result<LaurentPoly> {
    if l == 0 {
        return Ok(LaurentPoly::one());
    }
    eval_sym(&SymFunc::h(Partition::row(l)), x)
}

pub(crate) fn p_mac(mu: &Partition, x: &AlphabetExpr, c: u32) -> Result<LaurentPoly> {
    if mu.is_empty() {
        return Ok(LaurentPoly::one());
    }
    mac_eval(mu, x, c as i64)
}

/// `CT prod * g` over `x0..xn` after checking that `g` has degree 0.
fn ct_degree_zero(prod: &crate::laurent::BinomialProduct, g: &LaurentPoly) -> Result<QRat> {
    if !g.is_zero() && g.homogeneous_degree() != Some(0) {
        return Err(Error::Precondition("integrand is not homogeneous of degree 0".into()));
    }
    prod.ct_with(g, Some(0))
}

/// q-Morris constant term.
pub fn lhs_qmorris(n: usize, a: u32, b: u32, c: u32) -> Result<QRat> {
    if n == 0 {
        return Err(Error::Domain("q-Morris needs n >= 1".into()));
    }
    ct_degree_zero(&f_factors(n, 0, a, b, c, 0), &LaurentPoly::one())
}

/// `B_{n,n0}(a, b, c, l, mu)` without the length condition on `mu`.
pub(crate) fn ct_b(n: usize, n0: usize, a: u32, b: u32, c: u32, l: u32, mu: &Partition) -> Result<QRat> {
    if n == 0 || n0 >= n || c == 0 {
        return Err(Error::Domain(format!("B needs 0 <= n0 < n and c >= 1, got n={n} n0={n0} c={c}")));
    }
    let x0 = AlphabetExpr::var(0);
    let hl = h_row(l, &weighted_vars(n, n0, c, 1)?)?;
    let pm_alpha = AlphabetExpr::plus(
        binomial_letter(c as i64 - b as i64 - 1, a as i64, c, x0)?,
        weighted_vars(n, n0, c, c as i64)?,
    );
    let pm = p_mac(mu, &pm_alpha, c)?;
    let shift = -((l + mu.size()) as i32);
    let g = (hl * pm).mul_monomial(&[shift], &QRat::one());
    ct_degree_zero(&f_factors(n, n0, a, b, c, 0), &g)
}

/// `B_{n,n0}(a, b, c, l, mu)` as a constant term.
pub fn lhs_b(n: usize, n0: usize, a: u32, b: u32, c: u32, l: u32, mu: &Partition) -> Result<QRat> {
    IdentityParams::thm11(n, n0, a as i64, b, c, l, mu.clone()).check()?;
    ct_b(n, n0, a, b, c, l, mu)
}

/// `C_{n,n0}(a, b, c, l, m)` as a constant term. `m >= n - n0` is not
/// required here.
pub fn lhs_c(n: usize, n0: usize, a: u32, b: u32, c: u32, l: u32, m: usize) -> Result<QRat> {
    if n == 0 || n0 >= n || c == 0 || m > n {
        return Err(Error::Domain(format!("C needs 0 <= n0 < n, c >= 1, m <= n; got n={n} n0={n0} c={c} m={m}")));
    }
    let hl = h_row(l, &weighted_vars(n, n0, c, 1)?)?;
    let g = hl.mul_monomial(&[-(l as i32)], &QRat::one());
    ct_degree_zero(&f_factors(n, n0, a, b, c, m), &g)
}

/// `A_n(a, b, c, lambda, mu)` as a constant term.
pub fn lhs_a(n: usize, a: u32, b: u32, c: u32, lambda: &Partition, mu: &Partition) -> Result<QRat> {
    if c == 0 {
        return Err(Error::Domain("A needs c >= 1".into()));
    }
    let pl = p_mac(lambda, &AlphabetExpr::vars(1..=n), c)?;
    let pm_alpha = AlphabetExpr::plus(
        binomial_letter(c as i64 - b as i64 - 1, a as i64, c, AlphabetExpr::var(0))?,
        AlphabetExpr::vars(1..=n),
    );
    let pm = p_mac(mu, &pm_alpha, c)?;
    let shift = -((lambda.size() + mu.size()) as i32);
    let g = (pl * pm).mul_monomial(&[shift], &QRat::one());
    ct_degree_zero(&f_factors(n, 0, a, b, c, 0), &g)
}

#[cfg(test)]
mod tests;
