//! q-shifted factorials `(z; q)_k` for all integer `k`, and q-binomials.

use num_bigint::BigInt;
use num_traits::One;

use super::{Field, QRat, ZPoly};
use crate::{Error, Result};

/// `(z; q)_k` in any field containing Q(q).
///
/// `k > 0`: `prod_{i=0}^{k-1} (1 - z q^i)`; `k = 0`: 1;
/// `k < 0`: `1 / prod_{j=k}^{-1} (1 - z q^j)`, an error if a factor vanishes.
pub fn q_poch<F: Field>(z: &F, k: i64) -> Result<F> {
    if k >= 0 {
        let mut acc = F::one();
        for i in 0..k {
            acc = acc * &(F::one() - z.clone() * &F::q_pow(i));
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    } else {
        let mut den = F::one();
        for j in k..0 {
            let f = F::one() - z.clone() * &F::q_pow(j);
            if f.is_zero() {
                return Err(Error::Pole(format!("factor 1 - z q^{j} vanishes in (z;q)_{k}")));
            }
            den = den * &f;
        }
        den.inv()
    }
}

/// Product of `1 - q^m` over the given exponents as `sign * q^shift * poly`,
/// or `None` if some `m = 0`.
fn one_minus_q_product(exps: impl Iterator<Item = i64>) -> Option<(bool, i64, ZPoly)> {
    let mut neg = false;
    let mut shift = 0i64;
    let mut p = ZPoly::one();
    for m in exps {
        if m == 0 {
            return None;
        }
        let a = m.unsigned_abs() as usize;
        if m < 0 {
            // 1 - q^{-a} = -q^{-a} (1 - q^a)
            neg = !neg;
            shift -= a as i64;
        }
        let f = ZPoly::from_coeffs({
            let mut c = vec![BigInt::from(0); a + 1];
            c[0] = BigInt::one();
            c[a] = -BigInt::one();
            c
        });
        p = &p * &f;
    }
    Some((neg, shift, p))
}

fn assemble(neg: bool, shift: i64, p: ZPoly, invert: bool) -> QRat {
    let base = QRat::from_zpoly(p);
    let mut v = if invert { base.inv().expect("nonzero product") } else { base };
    let s = if invert { -shift } else { shift };
    if s != 0 {
        v = v * &QRat::q_pow(s);
    }
    if neg {
        -v
    } else {
        v
    }
}

/// `(q^e; q)_k` for integers `e`, `k`.
pub fn q_poch_qpower(e: i64, k: i64) -> Result<QRat> {
    if k >= 0 {
        match one_minus_q_product((0..k).map(|i| e + i)) {
            None => Ok(QRat::zero()),
            Some((neg, shift, p)) => Ok(assemble(neg, shift, p, false)),
        }
    } else {
        match one_minus_q_product((k..0).map(|j| e + j)) {
            None => Err(Error::Pole(format!("(q^{e};q)_{k} has a factor 1 - q^0 in its denominator"))),
            Some((neg, shift, p)) => Ok(assemble(neg, shift, p, true)),
        }
    }
}

/// `[n, k]_q = (q^{n-k+1})_k / (q)_k` for any integer `n` and `k >= 0`.
pub fn q_binomial(n: i64, k: u32) -> QRat {
    let k = k as i64;
    let num = q_poch_qpower(n - k + 1, k).expect("k >= 0");
    let den = q_poch_qpower(1, k).expect("k >= 0");
    num.try_div(&den).expect("(q)_k is nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn omq(e: i64) -> QRat {
        QRat::one_minus_q_pow(e)
    }

    #[test]
    fn index_cases() {
        assert_eq!(q_poch_qpower(1, 0).unwrap(), QRat::one());
        assert_eq!(q_poch_qpower(1, 2).unwrap(), omq(1) * omq(2));
        assert!(matches!(q_poch_qpower(1, -1), Err(Error::Pole(_))));
        assert_eq!(q_poch_qpower(2, -1).unwrap(), omq(1).inv().unwrap());
    }

    #[test]
    fn negative_base_exponents() {
        // (q^{-2})_2 = (1 - q^{-2})(1 - q^{-1})
        let direct = omq(-2) * omq(-1);
        assert_eq!(q_poch_qpower(-2, 2).unwrap(), direct);
        assert_eq!(q_poch_qpower(-2, 3).unwrap(), QRat::zero());
    }

    #[test]
    fn generic_matches_qpower() {
        for e in -3..4 {
            for k in -3..4 {
                let a = q_poch(&QRat::q_pow(e), k);
                let b = q_poch_qpower(e, k);
                assert_eq!(a.is_ok(), b.is_ok(), "e={e} k={k}");
                if let (Ok(a), Ok(b)) = (a, b) {
                    assert_eq!(a, b, "e={e} k={k}");
                }
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(q_binomial(2, 1), QRat::from_zpoly(ZPoly::from_i64s(&[1, 1])));
        assert_eq!(q_binomial(0, 0), QRat::one());
        assert_eq!(q_binomial(1, 2), QRat::zero());
        // [4,2] = 1 + q + 2q^2 + q^3 + q^4
        assert_eq!(q_binomial(4, 2), QRat::from_zpoly(ZPoly::from_i64s(&[1, 1, 2, 1, 1])));
    }
}
