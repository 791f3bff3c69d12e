//! Dense univariate polynomials over the integers, with exact division and gcd.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Polynomial in `q` with `BigInt` coefficients; `c[i]` is the coefficient of `q^i`.
/// Trailing zeros are never stored, so the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    c: Vec<BigInt>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        ZPoly { c: vec![BigInt::one()] }
    }

    pub fn constant(k: BigInt) -> Self {
        Self::from_coeffs(vec![k])
    }

    /// `k * q^e`.
    pub fn monomial(k: BigInt, e: usize) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        let mut c = vec![BigInt::zero(); e + 1];
        c[e] = k;
        ZPoly { c }
    }

    pub fn from_coeffs(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        ZPoly { c }
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Self::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&BigInt> {
        self.c.last()
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn ord(&self) -> usize {
        self.c.iter().position(|x| !x.is_zero()).unwrap_or(0)
    }

    /// True when the polynomial is `k q^e` for a single term.
    pub fn is_monomial(&self) -> bool {
        !self.is_zero() && self.ord() + 1 == self.c.len()
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.c.iter().cloned());
        ZPoly { c }
    }

    /// Divide by `q^k`; requires `ord() >= k`.
    pub fn unshift(&self, k: usize) -> Self {
        debug_assert!(self.is_zero() || self.ord() >= k);
        if self.is_zero() {
            return Self::zero();
        }
        ZPoly { c: self.c[k..].to_vec() }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        ZPoly { c: self.c.iter().map(|x| x * k).collect() }
    }

    /// Nonnegative gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for x in &self.c {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn div_scalar_exact(&self, k: &BigInt) -> Self {
        if k.is_one() {
            return self.clone();
        }
        ZPoly { c: self.c.iter().map(|x| x / k).collect() }
    }

    /// Content removed and leading coefficient made positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.lead().unwrap().is_negative() {
            g = -g;
        }
        self.div_scalar_exact(&g)
    }

    pub fn max_norm(&self) -> BigInt {
        self.c.iter().map(|x| x.abs()).max().unwrap_or_else(BigInt::zero)
    }

    fn max_bits(&self) -> u64 {
        self.c.iter().map(|x| x.bits()).max().unwrap_or(0)
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for k in self.c.iter().rev() {
            acc = acc * x + k;
        }
        acc
    }

    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for k in self.c.iter().rev() {
            acc = acc * x + BigRational::from_integer(k.clone());
        }
        acc
    }

    /// Exact quotient `self / d` if `d` divides `self` in `Z[q]`.
    pub fn div_exact(&self, d: &ZPoly) -> Option<ZPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if d.is_one() {
            return Some(self.clone());
        }
        let dd = d.c.len() - 1;
        if self.c.len() - 1 < dd {
            return None;
        }
        let ds = d.ord();
        if self.ord() < ds {
            return None;
        }
        if d.is_monomial() {
            let k = &d.c[dd];
            let mut out = Vec::with_capacity(self.c.len() - dd);
            for x in &self.c[dd..] {
                let (qq, r) = x.div_rem(k);
                if !r.is_zero() {
                    return None;
                }
                out.push(qq);
            }
            return Some(ZPoly::from_coeffs(out));
        }
        let lead = d.lead().unwrap();
        let mut r = self.c.clone();
        let qn = r.len() - dd;
        let mut quo = vec![BigInt::zero(); qn];
        for i in (0..qn).rev() {
            let top = &r[i + dd];
            if top.is_zero() {
                continue;
            }
            let (qq, rem) = top.div_rem(lead);
            if !rem.is_zero() {
                return None;
            }
            for (j, dj) in d.c.iter().enumerate() {
                if !dj.is_zero() {
                    r[i + j] -= &qq * dj;
                }
            }
            quo[i] = qq;
        }
        if r.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(ZPoly::from_coeffs(quo))
    }

    /// Pseudo-remainder of `self` by `d`.
    pub fn pseudo_rem(&self, d: &ZPoly) -> ZPoly {
        let dd = d.c.len() - 1;
        let mut r = self.clone();
        let lead = d.lead().unwrap().clone();
        while !r.is_zero() && r.c.len() > dd {
            let k = r.c.len() - 1 - dd;
            let top = r.lead().unwrap().clone();
            r = r.scale(&lead) - d.shift(k).scale(&top);
        }
        r
    }

    /// Greatest common divisor in `Z[q]`, with positive leading coefficient.
    pub fn gcd(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() {
            return normalize_sign(other.clone());
        }
        if other.is_zero() {
            return normalize_sign(self.clone());
        }
        let cg = self.content().gcd(&other.content());
        let f = self.primitive_part();
        let g = other.primitive_part();
        let h = gcd_primitive(&f, &g);
        if cg.is_one() {
            h
        } else {
            h.scale(&cg)
        }
    }

    /// Coefficients as `i64` when they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.c.iter().map(|x| x.to_i64()).collect()
    }

    fn mul_small(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
        let ai: Option<Vec<i64>> = a.iter().map(|x| x.to_i64()).collect();
        let bi: Option<Vec<i64>> = b.iter().map(|x| x.to_i64()).collect();
        let (ai, bi) = (ai?, bi?);
        let mut out = vec![0i128; a.len() + b.len() - 1];
        for (i, x) in ai.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in bi.iter().enumerate() {
                out[i + j] += (*x as i128) * (*y as i128);
            }
        }
        Some(out.into_iter().map(BigInt::from).collect())
    }
}

fn normalize_sign(p: ZPoly) -> ZPoly {
    match p.lead() {
        Some(l) if l.is_negative() => -p,
        _ => p,
    }
}

fn from_xi_adic(mut g: BigInt, xi: &BigInt) -> ZPoly {
    let half = xi >> 1;
    let mut c = Vec::new();
    while !g.is_zero() {
        let mut r = g.mod_floor(xi);
        if r > half {
            r -= xi;
        }
        g = (&g - &r) / xi;
        c.push(r);
    }
    ZPoly::from_coeffs(c)
}

fn gcd_primitive(f: &ZPoly, g: &ZPoly) -> ZPoly {
    let k = f.ord().min(g.ord());
    let f = f.unshift(f.ord());
    let g = g.unshift(g.ord());
    let h = if f.is_constant() || g.is_constant() {
        ZPoly::one()
    } else if f == g {
        f
    } else if let Some(h) = gcd_heuristic(&f, &g) {
        h
    } else {
        gcd_prs(&f, &g)
    };
    h.shift(k)
}

fn gcd_heuristic(f: &ZPoly, g: &ZPoly) -> Option<ZPoly> {
    let deg = f.c.len().max(g.c.len()) as u64;
    let b = f.max_norm().min(g.max_norm());
    let mut xi: BigInt = b * 2 + 29;
    for _ in 0..6 {
        if xi.bits() * deg > 2_000_000 {
            return None;
        }
        let a = f.eval_int(&xi);
        let bb = g.eval_int(&xi);
        let gamma = a.gcd(&bb);
        let h = from_xi_adic(gamma, &xi).primitive_part();
        if !h.is_zero() && f.div_exact(&h).is_some() && g.div_exact(&h).is_some() {
            return Some(h);
        }
        xi = xi * 73794 / 27011;
    }
    None
}

fn gcd_prs(f: &ZPoly, g: &ZPoly) -> ZPoly {
    let (mut a, mut b) = if f.c.len() >= g.c.len() {
        (f.clone(), g.clone())
    } else {
        (g.clone(), f.clone())
    };
    while !b.is_zero() {
        let r = a.pseudo_rem(&b).primitive_part();
        a = b;
        b = r;
    }
    a.primitive_part()
}

impl Add for &ZPoly {
    type Output = ZPoly;
    fn add(self, o: &ZPoly) -> ZPoly {
        let (long, short) = if self.c.len() >= o.c.len() { (self, o) } else { (o, self) };
        let mut c = long.c.clone();
        for (i, x) in short.c.iter().enumerate() {
            c[i] += x;
        }
        ZPoly::from_coeffs(c)
    }
}

impl Sub for &ZPoly {
    type Output = ZPoly;
    fn sub(self, o: &ZPoly) -> ZPoly {
        let mut c = self.c.clone();
        if c.len() < o.c.len() {
            c.resize(o.c.len(), BigInt::zero());
        }
        for (i, x) in o.c.iter().enumerate() {
            c[i] -= x;
        }
        ZPoly::from_coeffs(c)
    }
}

impl Mul for &ZPoly {
    type Output = ZPoly;
    fn mul(self, o: &ZPoly) -> ZPoly {
        if self.is_zero() || o.is_zero() {
            return ZPoly::zero();
        }
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        let n = self.c.len().min(o.c.len()) as u64;
        if self.max_bits() + o.max_bits() + 64 - n.leading_zeros() as u64 + 1 < 126 {
            if let Some(c) = ZPoly::mul_small(&self.c, &o.c) {
                return ZPoly::from_coeffs(c);
            }
        }
        let mut c = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.c.iter().enumerate() {
                if !y.is_zero() {
                    c[i + j] += x * y;
                }
            }
        }
        ZPoly::from_coeffs(c)
    }
}

impl Neg for &ZPoly {
    type Output = ZPoly;
    fn neg(self) -> ZPoly {
        ZPoly { c: self.c.iter().map(|x| -x).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ZPoly {
            type Output = ZPoly;
            fn $m(self, o: ZPoly) -> ZPoly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for ZPoly {
    type Output = ZPoly;
    fn neg(self) -> ZPoly {
        -&self
    }
}

impl fmt::Display for ZPoly {
    /// Sparse `c*q^e` terms in increasing `e`, joined by ` + `; `0` for zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, k) in self.c.iter().enumerate() {
            if k.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}*q^{}", k, e)?;
        }
        Ok(())
    }
}

impl fmt::Debug for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for ZPoly {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(ZPoly::zero());
        }
        let mut c: Vec<BigInt> = Vec::new();
        for term in s.split(" + ") {
            let (k, e) = term
                .trim()
                .split_once("*q^")
                .ok_or_else(|| crate::Error::Parse(format!("bad term `{term}`")))?;
            let k: BigInt = k.parse().map_err(|_| crate::Error::Parse(format!("bad coefficient `{k}`")))?;
            let e: usize = e.parse().map_err(|_| crate::Error::Parse(format!("bad exponent `{e}`")))?;
            if c.len() <= e {
                c.resize(e + 1, BigInt::zero());
            }
            c[e] += k;
        }
        Ok(ZPoly::from_coeffs(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> ZPoly {
        ZPoly::from_i64s(c)
    }

    #[test]
    fn gcd_of_cyclotomic_products() {
        // (1-q^6) and (1-q^4) share (1-q^2).
        let a = p(&[1, 0, 0, 0, 0, 0, -1]);
        let b = p(&[1, 0, 0, 0, -1]);
        assert_eq!(a.gcd(&b), p(&[-1, 0, 1]));
    }

    #[test]
    fn gcd_keeps_content_and_power_of_q() {
        let a = p(&[0, 0, 6, 6]); // 6 q^2 (1+q)
        let b = p(&[0, 4, 4]); // 4 q (1+q)
        assert_eq!(a.gcd(&b), p(&[0, 2, 2]));
    }

    #[test]
    fn prs_agrees_with_heuristic() {
        let a = &p(&[1, -3, 2, 5]) * &p(&[2, 0, 1]);
        let b = &p(&[7, 1, -1]) * &p(&[2, 0, 1]);
        let h = gcd_heuristic(&a.primitive_part(), &b.primitive_part()).unwrap();
        assert_eq!(h, gcd_prs(&a, &b));
        assert_eq!(h, p(&[2, 0, 1]));
    }

    #[test]
    fn exact_division() {
        let a = &p(&[1, 1]) * &p(&[3, 0, -2]);
        assert_eq!(a.div_exact(&p(&[1, 1])), Some(p(&[3, 0, -2])));
        assert_eq!(a.div_exact(&p(&[1, 2])), None);
    }

    #[test]
    fn display_round_trip() {
        let a = p(&[0, -2, 0, 5]);
        assert_eq!(a.to_string(), "-2*q^1 + 5*q^3");
        assert_eq!(a.to_string().parse::<ZPoly>().unwrap(), a);
    }
}
