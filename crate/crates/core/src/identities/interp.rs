//! Polynomials in `y = q^a` known by their values at `a = 0, 1, ..., d`.

use crate::qfield::{Field, QRat};
use crate::{Error, Result};

/// Lagrange interpolation through `(x_k, v_k)`, evaluated at `y`.
pub fn interpolate_at(points: &[(QRat, QRat)], y: &QRat) -> Result<QRat> {
    let mut acc = QRat::zero();
    for (k, (xk, vk)) in points.iter().enumerate() {
        if vk.is_zero() {
            continue;
        }
        let mut num = QRat::one();
        let mut den = QRat::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if j != k {
                num = num * &(y.clone() - xj);
                den = den * &(xk.clone() - xj);
            }
        }
        if den.is_zero() {
            return Err(Error::Precondition("repeated interpolation node".into()));
        }
        acc = acc + &(vk.clone() * &num.try_div(&den)?);
    }
    Ok(acc)
}

/// A polynomial of degree at most `values.len() - 1` in `q^a`, given by its
/// values at `a = 0, 1, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QaPoly {
    values: Vec<QRat>,
}

impl QaPoly {
    pub fn new(values: Vec<QRat>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Precondition("need at least one value".into()));
        }
        Ok(QaPoly { values })
    }

    pub fn values(&self) -> &[QRat] {
        &self.values
    }

    /// The degree bound `d`.
    pub fn degree_bound(&self) -> usize {
        self.values.len() - 1
    }

    /// The value at `y = q^a` for any integer `a`.
    pub fn at(&self, a: i64) -> Result<QRat> {
        if a >= 0 && (a as usize) < self.values.len() {
            return Ok(self.values[a as usize].clone());
        }
        let pts: Vec<(QRat, QRat)> =
            self.values.iter().enumerate().map(|(k, v)| (QRat::q_pow(k as i64), v.clone())).collect();
        interpolate_at(&pts, &QRat::q_pow(a))
    }
}
