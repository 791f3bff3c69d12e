//! Canonical rational functions in `q` over the integers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Field, ZPoly};
use crate::{Error, Result};

/// An element of Q(q), stored as `num/den` with `num, den` in Z[q].
///
/// Canonical form: `gcd(num, den) = 1` in Z[q] (integer content included) and
/// `den` has positive leading coefficient. Zero is `0/1`. Equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QRat {
    num: ZPoly,
    den: ZPoly,
}

impl QRat {
    pub fn new(num: ZPoly, den: ZPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    /// `q`.
    pub fn q() -> Self {
        Self::from_zpoly(ZPoly::from_i64s(&[0, 1]))
    }

    pub fn from_zpoly(p: ZPoly) -> Self {
        QRat { num: p, den: ZPoly::one() }
    }

    pub fn from_bigint(k: BigInt) -> Self {
        Self::from_zpoly(ZPoly::constant(k))
    }

    pub fn numer(&self) -> &ZPoly {
        &self.num
    }

    pub fn denom(&self) -> &ZPoly {
        &self.den
    }

    /// `q^lo * (c_0 + c_1 q + ...)` from integer Laurent coefficients.
    pub fn from_laurent(lo: i64, coeffs: Vec<BigInt>) -> Self {
        let p = ZPoly::from_coeffs(coeffs);
        if p.is_zero() {
            return Self::zero();
        }
        let ord = p.ord();
        let p = p.unshift(ord);
        let lo = lo + ord as i64;
        if lo >= 0 {
            Self::from_zpoly(p.shift(lo as usize))
        } else {
            QRat { num: p, den: ZPoly::monomial(BigInt::one(), (-lo) as usize) }
        }
    }

    /// `1 - q^e`.
    pub fn one_minus_q_pow(e: i64) -> Self {
        Self::one() - Self::q_pow(e)
    }

    /// True when the value is a Laurent polynomial in `q` (denominator a power of `q`).
    pub fn is_laurent(&self) -> bool {
        self.den.is_monomial() && self.den.lead().unwrap().is_one()
    }

    /// Laurent coefficients `(lowest exponent, coefficients)` when [`Self::is_laurent`].
    pub fn laurent_coeffs(&self) -> Option<(i64, Vec<BigInt>)> {
        if !self.is_laurent() {
            return None;
        }
        let shift = self.den.degree().unwrap() as i64;
        let lo = self.num.ord();
        Some((lo as i64 - shift, self.num.coeffs()[lo..].to_vec()))
    }

    /// Evaluate at a rational point `q = x`.
    pub fn eval(&self, x: &BigRational) -> Result<BigRational> {
        let d = self.den.eval_rat(x);
        if d.is_zero() {
            return Err(Error::Pole(format!("denominator vanishes at q = {x}")));
        }
        Ok(self.num.eval_rat(x) / d)
    }

    /// Re-derives the canonical form and compares; used by property tests.
    pub fn is_canonical(&self) -> bool {
        !self.den.is_zero() && Self::reduce(self.num.clone(), self.den.clone()) == *self
    }

    fn reduce(num: ZPoly, den: ZPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (mut num, mut den) = if den.is_one() {
            (num, den)
        } else if den.is_constant() {
            let g = num.content().gcd(den.lead().unwrap());
            (num.div_scalar_exact(&g), den.div_scalar_exact(&g))
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
            }
        };
        if den.lead().unwrap().is_negative() {
            num = -num;
            den = -den;
        }
        QRat { num, den }
    }

    fn add_impl(&self, o: &QRat, negate: bool) -> QRat {
        let on = if negate { -&o.num } else { o.num.clone() };
        if self.is_zero() {
            return QRat { num: on, den: o.den.clone() };
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let n = &self.num + &on;
            return if self.den.is_one() {
                QRat { num: n, den: ZPoly::one() }
            } else {
                Self::reduce(n, self.den.clone())
            };
        }
        if self.den.is_one() {
            return QRat { num: &(&self.num * &o.den) + &on, den: o.den.clone() };
        }
        if o.den.is_one() {
            return QRat { num: &self.num + &(&on * &self.den), den: self.den.clone() };
        }
        let g = self.den.gcd(&o.den);
        if g.is_one() {
            let n = &(&self.num * &o.den) + &(&on * &self.den);
            return Self::reduce_partial(n, &self.den * &o.den, None);
        }
        let b1 = self.den.div_exact(&g).unwrap();
        let d1 = o.den.div_exact(&g).unwrap();
        let n = &(&self.num * &d1) + &(&on * &b1);
        Self::reduce_partial(n, &b1 * &o.den, Some(&g))
    }

    /// Finish `n/d` when every common factor of `n` and `d` divides `g`
    /// (`None`: the summands had coprime denominators, so `n/d` is reduced).
    fn reduce_partial(n: ZPoly, d: ZPoly, g: Option<&ZPoly>) -> QRat {
        if n.is_zero() {
            return Self::zero();
        }
        let (mut n, mut d) = match g {
            Some(g) => {
                let h = n.gcd(g);
                if h.is_one() {
                    (n, d)
                } else {
                    (n.div_exact(&h).unwrap(), d.div_exact(&h).unwrap())
                }
            }
            None => (n, d),
        };
        if d.lead().unwrap().is_negative() {
            n = -n;
            d = -d;
        }
        QRat { num: n, den: d }
    }

    fn mul_impl(&self, o: &QRat) -> QRat {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return QRat { num: &self.num * &o.num, den: ZPoly::one() };
        }
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let a = if g1.is_one() { self.num.clone() } else { self.num.div_exact(&g1).unwrap() };
        let d = if g1.is_one() { o.den.clone() } else { o.den.div_exact(&g1).unwrap() };
        let c = if g2.is_one() { o.num.clone() } else { o.num.div_exact(&g2).unwrap() };
        let b = if g2.is_one() { self.den.clone() } else { self.den.div_exact(&g2).unwrap() };
        let mut num = &a * &c;
        let mut den = &b * &d;
        if den.lead().unwrap().is_negative() {
            num = -num;
            den = -den;
        }
        QRat { num, den }
    }
}

impl Field for QRat {
    fn zero() -> Self {
        QRat { num: ZPoly::zero(), den: ZPoly::one() }
    }
    fn one() -> Self {
        QRat { num: ZPoly::one(), den: ZPoly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
    fn from_i64(n: i64) -> Self {
        Self::from_bigint(BigInt::from(n))
    }
    fn from_ratio(r: &BigRational) -> Self {
        Self::reduce(ZPoly::constant(r.numer().clone()), ZPoly::constant(r.denom().clone()))
    }
    fn q_pow(e: i64) -> Self {
        if e >= 0 {
            Self::from_zpoly(ZPoly::monomial(BigInt::one(), e as usize))
        } else {
            QRat { num: ZPoly::one(), den: ZPoly::monomial(BigInt::one(), (-e) as usize) }
        }
    }
    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (mut num, mut den) = (self.den.clone(), self.num.clone());
        if den.lead().unwrap().is_negative() {
            num = -num;
            den = -den;
        }
        Ok(QRat { num, den })
    }
}

impl Default for QRat {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add<&QRat> for &QRat {
    type Output = QRat;
    fn add(self, o: &QRat) -> QRat {
        self.add_impl(o, false)
    }
}
impl Sub<&QRat> for &QRat {
    type Output = QRat;
    fn sub(self, o: &QRat) -> QRat {
        self.add_impl(o, true)
    }
}
impl Mul<&QRat> for &QRat {
    type Output = QRat;
    fn mul(self, o: &QRat) -> QRat {
        self.mul_impl(o)
    }
}
impl Neg for &QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        QRat { num: -&self.num, den: self.den.clone() }
    }
}
impl Neg for QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        -&self
    }
}

macro_rules! owned_ops {
    ($t:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, o: $t) -> $t { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a $t> for $t {
            type Output = $t;
            fn $m(self, o: &'a $t) -> $t { (&self).$m(o) }
        }
    )*};
}
owned_ops!(QRat, Add add, Sub sub, Mul mul);

impl fmt::Display for QRat {
    /// `num/den`, each a sparse `c*q^e` list.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl FromStr for QRat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (n, d) = s.split_once('/').ok_or_else(|| Error::Parse(format!("missing `/` in `{s}`")))?;
        QRat::new(n.parse()?, d.parse()?)
    }
}

impl serde::Serialize for QRat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for QRat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn omq(e: i64) -> QRat {
        QRat::one_minus_q_pow(e)
    }

    #[test]
    fn telescoping_sum() {
        let a = omq(1).inv().unwrap();
        let b = -(QRat::q() * &omq(1).inv().unwrap());
        assert_eq!(a + b, QRat::one());
    }

    #[test]
    fn factor_cancels() {
        let r = omq(2).try_div(&omq(1)).unwrap();
        assert_eq!(r, QRat::from_zpoly(ZPoly::from_i64s(&[1, 1])));
    }

    #[test]
    fn product_expands() {
        let a = QRat::from_zpoly(ZPoly::from_i64s(&[1, 1]));
        assert_eq!(a * omq(1), omq(2));
    }

    #[test]
    fn division_by_zero_is_error() {
        assert_eq!(QRat::one().try_div(&QRat::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn rational_constants_are_canonical() {
        let half = QRat::from_ratio(&BigRational::new(2.into(), (-4).into()));
        assert!(half.is_canonical());
        assert_eq!(half.to_string(), "-1*q^0/2*q^0");
        assert_eq!(half.to_string().parse::<QRat>().unwrap(), half);
    }

    #[test]
    fn negative_powers() {
        let a = QRat::q_pow(-3) * QRat::q_pow(5);
        assert_eq!(a, QRat::q_pow(2));
        assert_eq!(QRat::q_pow(-2).laurent_coeffs(), Some((-2, vec![BigInt::one()])));
    }
}
