//! Exact arithmetic in Q(q) and Q(q)(t), q-shifted factorials and q-binomials.

mod poch;
mod qrat;
mod qtrat;
mod zpoly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

pub use poch::{q_binomial, q_poch, q_poch_qpower};
pub use qrat::QRat;
pub use qtrat::QtRat;
pub use zpoly::ZPoly;

use crate::Result;

/// A coefficient field containing Q(q).
///
/// Implemented by [`QRat`] (Q(q)) and [`QtRat`] (Q(q)(t)).
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn from_i64(n: i64) -> Self;
    fn from_ratio(r: &BigRational) -> Self;
    /// `q^e` for any integer `e`.
    fn q_pow(e: i64) -> Self;
    fn inv(&self) -> Result<Self>;

    fn try_div(&self, o: &Self) -> Result<Self> {
        Ok(self.clone() * &o.inv()?)
    }

    fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * &base;
            }
        }
        Ok(acc)
    }
}
