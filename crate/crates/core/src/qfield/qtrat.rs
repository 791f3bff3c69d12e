//! Q(q, t) as reduced fractions of polynomials in `Z[q][t]`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{Field, QRat, ZPoly};
use crate::{Error, Result};

/// Polynomial in `t` with coefficients in `Z[q]`; `c[j]` multiplies `t^j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
struct BPoly {
    c: Vec<ZPoly>,
}

impl BPoly {
    fn from_coeffs(mut c: Vec<ZPoly>) -> Self {
        while c.last().is_some_and(ZPoly::is_zero) {
            c.pop();
        }
        BPoly { c }
    }

    fn constant(z: ZPoly) -> Self {
        Self::from_coeffs(vec![z])
    }

    fn one() -> Self {
        Self::constant(ZPoly::one())
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    fn lead(&self) -> &ZPoly {
        self.c.last().expect("nonzero polynomial")
    }

    fn is_negative(&self) -> bool {
        self.c.last().and_then(|z| z.lead()).is_some_and(|l| l.is_negative())
    }

    fn neg(&self) -> Self {
        BPoly { c: self.c.iter().map(|z| -z).collect() }
    }

    fn add_sub(&self, o: &Self, neg: bool) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) if neg => a - b,
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) if neg => -b,
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::from_coeffs(c)
    }

    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return BPoly::default();
        }
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        let mut c = vec![ZPoly::zero(); self.c.len() + o.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.c.iter().enumerate() {
                if !y.is_zero() {
                    c[i + j] = &c[i + j] + &(x * y);
                }
            }
        }
        Self::from_coeffs(c)
    }

    fn scale(&self, k: &ZPoly) -> Self {
        Self::from_coeffs(self.c.iter().map(|x| x * k).collect())
    }

    fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![ZPoly::zero(); k];
        c.extend(self.c.iter().cloned());
        BPoly { c }
    }

    /// Gcd in `Z[q]` of the coefficients, with positive leading coefficient.
    fn content(&self) -> ZPoly {
        let mut g = ZPoly::zero();
        for x in &self.c {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn div_zpoly(&self, k: &ZPoly) -> Option<Self> {
        if k.is_one() {
            return Some(self.clone());
        }
        self.c.iter().map(|x| x.div_exact(k)).collect::<Option<Vec<_>>>().map(Self::from_coeffs)
    }

    /// Exact quotient in `Z[q][t]`, if any.
    fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if d.is_constant() {
            return self.div_zpoly(&d.c[0]);
        }
        if self.is_zero() {
            return Some(BPoly::default());
        }
        let dd = d.c.len() - 1;
        if self.c.len() < d.c.len() {
            return None;
        }
        let lead = d.lead();
        let mut r = self.c.clone();
        let qn = r.len() - dd;
        let mut quo = vec![ZPoly::zero(); qn];
        for i in (0..qn).rev() {
            if r[i + dd].is_zero() {
                continue;
            }
            let k = r[i + dd].div_exact(lead)?;
            for (j, dj) in d.c.iter().enumerate() {
                if !dj.is_zero() {
                    r[i + j] = &r[i + j] - &(&k * dj);
                }
            }
            quo[i] = k;
        }
        if r.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(quo))
    }

    fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.c.len() - 1;
        let lead = d.lead().clone();
        let mut r = self.clone();
        while !r.is_zero() && r.c.len() > dd {
            let k = r.c.len() - 1 - dd;
            let top = r.lead().clone();
            r = r.scale(&lead).add_sub(&d.shift(k).scale(&top), true);
        }
        r
    }

    fn eval_int(&self, xi: &BigInt) -> ZPoly {
        let x = ZPoly::constant(xi.clone());
        let mut acc = ZPoly::zero();
        for k in self.c.iter().rev() {
            acc = &(&acc * &x) + k;
        }
        acc
    }

    fn max_norm(&self) -> BigInt {
        self.c.iter().map(ZPoly::max_norm).max().unwrap_or_else(BigInt::zero)
    }

    /// Inverse of [`Self::eval_int`] with balanced digits.
    fn from_xi_adic(mut g: ZPoly, xi: &BigInt) -> Self {
        let half: BigInt = xi >> 1;
        let mut out = Vec::new();
        while !g.is_zero() {
            let digits: Vec<BigInt> = g
                .coeffs()
                .iter()
                .map(|x| {
                    let mut r = x.mod_floor(xi);
                    if r > half {
                        r -= xi;
                    }
                    r
                })
                .collect();
            let r = ZPoly::from_coeffs(digits);
            g = (&g - &r).div_scalar_exact(xi);
            out.push(r);
        }
        Self::from_coeffs(out)
    }

    fn normalized(self) -> Self {
        if self.is_negative() {
            self.neg()
        } else {
            self
        }
    }

    /// Gcd in `Z[q][t]`, normalized to a positive leading coefficient.
    fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone().normalized();
        }
        if o.is_zero() {
            return self.clone().normalized();
        }
        if self.is_one() || o.is_one() {
            return BPoly::one();
        }
        let (ca, cb) = (self.content(), o.content());
        let cg = ca.gcd(&cb);
        if self.is_constant() || o.is_constant() {
            return BPoly::constant(cg);
        }
        let pa = self.div_zpoly(&ca).expect("content divides");
        let pb = o.div_zpoly(&cb).expect("content divides");
        let h = if pa == pb {
            pa
        } else {
            gcd_heuristic(&pa, &pb).unwrap_or_else(|| gcd_prs(&pa, &pb))
        };
        h.normalized().scale(&cg)
    }
}

/// Evaluate `t` at a large integer, take the gcd in `Z[q]` and lift back;
/// accepted only when the lift divides both inputs.
fn gcd_heuristic(f: &BPoly, g: &BPoly) -> Option<BPoly> {
    let deg = f.c.len().max(g.c.len()) as u64;
    let mut xi: BigInt = f.max_norm().min(g.max_norm()) * 2 + 29;
    for _ in 0..6 {
        if xi.bits() * deg > 200_000 {
            return None;
        }
        let gamma = f.eval_int(&xi).gcd(&g.eval_int(&xi));
        let h = BPoly::from_xi_adic(gamma, &xi);
        if !h.is_zero() {
            let h = h.div_zpoly(&h.content()).expect("content divides");
            if h.is_constant() {
                return Some(BPoly::one());
            }
            if f.div_exact(&h).is_some() && g.div_exact(&h).is_some() {
                return Some(h);
            }
        }
        xi = xi * 73794 / 27011;
    }
    None
}

/// Primitive remainder sequence for inputs primitive over `Z[q]`.
fn gcd_prs(f: &BPoly, g: &BPoly) -> BPoly {
    let (mut a, mut b) = if f.c.len() >= g.c.len() { (f.clone(), g.clone()) } else { (g.clone(), f.clone()) };
    while !b.is_zero() {
        let r = a.pseudo_rem(&b);
        let r = if r.is_zero() { r } else { r.div_zpoly(&r.content()).expect("content divides") };
        a = b;
        b = r;
    }
    if a.is_constant() {
        return BPoly::one();
    }
    a.div_zpoly(&a.content()).expect("content divides")
}

impl fmt::Display for BPoly {
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
            write!(f, "[{k}]*t^{e}")?;
        }
        Ok(())
    }
}

/// An element of Q(q, t) with `q` and `t` independent.
///
/// Stored as `num/den` in `Z[q][t]` with `gcd(num, den) = 1` and the leading
/// coefficient of `den` (in `t`, then in `q`) positive. Equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QtRat {
    num: BPoly,
    den: BPoly,
}

impl QtRat {
    /// The indeterminate `t`.
    pub fn t() -> Self {
        QtRat { num: BPoly::from_coeffs(vec![ZPoly::zero(), ZPoly::one()]), den: BPoly::one() }
    }

    pub fn from_base(k: QRat) -> Self {
        QtRat { num: BPoly::constant(k.numer().clone()), den: BPoly::constant(k.denom().clone()) }
    }

    /// Substitute `t = x`; a vanishing denominator is a pole.
    pub fn specialize(&self, x: &QRat) -> Result<QRat> {
        let eval = |p: &BPoly| {
            let mut acc = QRat::zero();
            for k in p.c.iter().rev() {
                acc = acc * x + &QRat::from_zpoly(k.clone());
            }
            acc
        };
        let d = eval(&self.den);
        if d.is_zero() {
            return Err(Error::Pole(format!("denominator vanishes at t = {x}")));
        }
        eval(&self.num).try_div(&d)
    }

    /// Value in Q(q) when the element does not depend on `t`.
    pub fn as_base(&self) -> Option<QRat> {
        if !(self.num.is_constant() && self.den.is_constant()) {
            return None;
        }
        let n = self.num.c.first().cloned().unwrap_or_else(ZPoly::zero);
        QRat::new(n, self.den.c[0].clone()).ok()
    }

    /// Degree in `t` of numerator and denominator.
    pub fn t_degrees(&self) -> (usize, usize) {
        (self.num.c.len().saturating_sub(1), self.den.c.len().saturating_sub(1))
    }

    /// Re-derives the canonical form and compares; used by property tests.
    pub fn is_canonical(&self) -> bool {
        !self.den.is_zero() && !self.den.is_negative() && Self::reduce(self.num.clone(), self.den.clone()) == *self
    }

    fn zero_impl() -> Self {
        QtRat { num: BPoly::default(), den: BPoly::one() }
    }

    fn signed(num: BPoly, den: BPoly) -> Self {
        if den.is_negative() {
            QtRat { num: num.neg(), den: den.neg() }
        } else {
            QtRat { num, den }
        }
    }

    fn reduce(num: BPoly, den: BPoly) -> Self {
        if num.is_zero() {
            return Self::zero_impl();
        }
        if den.is_one() {
            return QtRat { num, den };
        }
        let g = num.gcd(&den);
        if g.is_one() {
            return Self::signed(num, den);
        }
        Self::signed(num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
    }

    fn add_impl(&self, o: &Self, neg: bool) -> Self {
        if o.num.is_zero() {
            return self.clone();
        }
        if self.num.is_zero() {
            return if neg { -o.clone() } else { o.clone() };
        }
        if self.den == o.den {
            let n = self.num.add_sub(&o.num, neg);
            return Self::reduce(n, self.den.clone());
        }
        let g = self.den.gcd(&o.den);
        if g.is_one() {
            let n = self.num.mul(&o.den).add_sub(&o.num.mul(&self.den), neg);
            return Self::signed(n, self.den.mul(&o.den));
        }
        let d1 = self.den.div_exact(&g).expect("gcd divides");
        let d2 = o.den.div_exact(&g).expect("gcd divides");
        let n = self.num.mul(&d2).add_sub(&o.num.mul(&d1), neg);
        if n.is_zero() {
            return Self::zero_impl();
        }
        let h = n.gcd(&g);
        let (n, g) = if h.is_one() {
            (n, g)
        } else {
            (n.div_exact(&h).expect("gcd divides"), g.div_exact(&h).expect("gcd divides"))
        };
        Self::signed(n, d1.mul(&d2).mul(&g))
    }

    fn mul_impl(&self, o: &Self) -> Self {
        if self.num.is_zero() || o.num.is_zero() {
            return Self::zero_impl();
        }
        if self.den.is_one() && o.den.is_one() {
            return QtRat { num: self.num.mul(&o.num), den: BPoly::one() };
        }
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let a = self.num.div_exact(&g1).expect("gcd divides");
        let d = o.den.div_exact(&g1).expect("gcd divides");
        let c = o.num.div_exact(&g2).expect("gcd divides");
        let b = self.den.div_exact(&g2).expect("gcd divides");
        Self::signed(a.mul(&c), b.mul(&d))
    }
}

impl Field for QtRat {
    fn zero() -> Self {
        Self::zero_impl()
    }
    fn one() -> Self {
        QtRat { num: BPoly::one(), den: BPoly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
    fn from_i64(n: i64) -> Self {
        QtRat { num: BPoly::constant(ZPoly::constant(BigInt::from(n))), den: BPoly::one() }
    }
    fn from_ratio(r: &BigRational) -> Self {
        Self::from_base(QRat::from_ratio(r))
    }
    fn q_pow(e: i64) -> Self {
        Self::from_base(QRat::q_pow(e))
    }
    fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::signed(self.den.clone(), self.num.clone()))
    }
}

impl<'a> Add<&'a QtRat> for QtRat {
    type Output = QtRat;
    fn add(self, o: &'a QtRat) -> QtRat {
        self.add_impl(o, false)
    }
}
impl<'a> Sub<&'a QtRat> for QtRat {
    type Output = QtRat;
    fn sub(self, o: &'a QtRat) -> QtRat {
        self.add_impl(o, true)
    }
}
impl<'a> Mul<&'a QtRat> for QtRat {
    type Output = QtRat;
    fn mul(self, o: &'a QtRat) -> QtRat {
        self.mul_impl(o)
    }
}
impl Add for QtRat {
    type Output = QtRat;
    fn add(self, o: QtRat) -> QtRat {
        self.add_impl(&o, false)
    }
}
impl Sub for QtRat {
    type Output = QtRat;
    fn sub(self, o: QtRat) -> QtRat {
        self.add_impl(&o, true)
    }
}
impl Mul for QtRat {
    type Output = QtRat;
    fn mul(self, o: QtRat) -> QtRat {
        self.mul_impl(&o)
    }
}
impl Neg for QtRat {
    type Output = QtRat;
    fn neg(self) -> QtRat {
        QtRat { num: self.num.neg(), den: self.den }
    }
}

impl fmt::Display for QtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl fmt::Debug for QtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qt(e: i64) -> QtRat {
        QtRat::q_pow(e)
    }

    #[test]
    fn t_and_q_are_independent() {
        let t = QtRat::t();
        let q = qt(1);
        assert_ne!(t, q);
        // (1 - t^2)/(1 - t) = 1 + t
        let one = QtRat::one();
        let a = (one.clone() - t.clone() * &t).try_div(&(one.clone() - t.clone())).unwrap();
        assert_eq!(a, one + &t);
    }

    #[test]
    fn specialization_to_q_power() {
        let t = QtRat::t();
        let q = qt(1);
        let x = (QtRat::one() - q.clone()).try_div(&(QtRat::one() - q * &t)).unwrap();
        let v = x.specialize(&QRat::q_pow(2)).unwrap();
        assert_eq!(v, QRat::one_minus_q_pow(1).try_div(&QRat::one_minus_q_pow(3)).unwrap());
        let pole = QtRat::one().try_div(&(QtRat::one() - QtRat::t())).unwrap();
        assert!(pole.specialize(&QRat::one()).is_err());
    }

    #[test]
    fn mixed_factors_cancel() {
        // (1 - q t)(1 - q^2) / ((1 - q)(1 - q t)) = 1 + q
        let t = QtRat::t();
        let one = QtRat::one();
        let a = one.clone() - qt(1) * &t;
        let b = one.clone() - qt(2);
        let c = one.clone() - qt(1);
        let x = (a.clone() * &b).try_div(&(c * &a)).unwrap();
        assert_eq!(x, one + &qt(1));
        assert_eq!(x.t_degrees(), (0, 0));
    }

    #[test]
    fn sums_reduce_to_canonical_form() {
        // 1/(1 - t) - t/(1 - t) = 1
        let t = QtRat::t();
        let one = QtRat::one();
        let d = one.clone() - t.clone();
        let x = one.try_div(&d).unwrap() - t.try_div(&d).unwrap();
        assert!(x.is_one());
        // q^{-1} t / t = q^{-1}
        let y = (qt(-1) * &QtRat::t()).try_div(&QtRat::t()).unwrap();
        assert_eq!(y.as_base(), Some(QRat::q_pow(-1)));
    }

    #[test]
    fn negative_denominator_is_normalized() {
        let t = QtRat::t();
        let a = QtRat::one().try_div(&(t.clone() - QtRat::one())).unwrap();
        let b = -QtRat::one().try_div(&(QtRat::one() - t)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn gcd_finds_shared_bivariate_factor() {
        // f = (1 - q t)(1 + t), g = (1 - q t)(q - t^2)
        let f = BPoly::from_coeffs(vec![ZPoly::one(), &ZPoly::one() - &ZPoly::from_i64s(&[0, 1]), ZPoly::from_i64s(&[0, -1])]);
        let g = BPoly::from_coeffs(vec![
            ZPoly::from_i64s(&[0, 1]),
            ZPoly::from_i64s(&[0, 0, -1]),
            ZPoly::from_i64s(&[-1]),
            ZPoly::from_i64s(&[0, 1]),
        ]);
        let h = f.gcd(&g);
        assert_eq!(h, BPoly::from_coeffs(vec![ZPoly::one(), ZPoly::from_i64s(&[0, -1])]).normalized());
        assert_eq!(gcd_prs(&f, &g).normalized(), h);
    }
}
