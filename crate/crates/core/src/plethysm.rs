//! Alphabets as expression trees and their power sums `p_r[X]`.

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::laurent::{LaurentPoly, Monomial};
use crate::partitions::Partition;
use crate::qfield::{Field, QRat};
use crate::symfunc::{Basis, SymFunc};
use crate::{Error, Result};

/// An alphabet. `GeomDiv(A, t)` is `A / (1 - t)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum AlphabetExpr {
    Letter { letter: Monomial },
    Plus { left: Box<AlphabetExpr>, right: Box<AlphabetExpr> },
    Minus { left: Box<AlphabetExpr>, right: Box<AlphabetExpr> },
    Epsilon { inner: Box<AlphabetExpr> },
    ScaleByLetter { letter: Monomial, inner: Box<AlphabetExpr> },
    GeomDiv { inner: Box<AlphabetExpr>, divisor: Monomial },
}

use AlphabetExpr::*;

impl AlphabetExpr {
    pub fn letter(m: Monomial) -> Self {
        Letter { letter: m }
    }

    /// The one-letter alphabet `x_i`.
    pub fn var(i: usize) -> Self {
        Self::letter(Monomial::var(i))
    }

    /// The one-letter alphabet `1`.
    pub fn unit() -> Self {
        Self::letter(Monomial::one())
    }

    /// `x_{v_1} + ... + x_{v_k}`; empty for no variables.
    pub fn vars(vs: impl IntoIterator<Item = usize>) -> Self {
        vs.into_iter().map(Self::var).reduce(Self::plus).unwrap_or_else(Self::empty)
    }

    /// `L - L`.
    pub fn empty() -> Self {
        Self::minus(Self::unit(), Self::unit())
    }

    pub fn plus(a: Self, b: Self) -> Self {
        Plus { left: Box::new(a), right: Box::new(b) }
    }

    pub fn minus(a: Self, b: Self) -> Self {
        Minus { left: Box::new(a), right: Box::new(b) }
    }

    pub fn neg(a: Self) -> Self {
        Self::minus(Self::empty(), a)
    }

    pub fn epsilon(a: Self) -> Self {
        Epsilon { inner: Box::new(a) }
    }

    pub fn scale(m: Monomial, a: Self) -> Self {
        ScaleByLetter { letter: m, inner: Box::new(a) }
    }

    /// `a / (1 - t)`; `t` must be a scalar monomial other than 1.
    pub fn geom_div(a: Self, t: Monomial) -> Result<Self> {
        check_divisor(&t)?;
        Ok(GeomDiv { inner: Box::new(a), divisor: t })
    }

    /// `(1 - q^a) X / (1 - q^b)`.
    pub fn q_ratio(a: i64, b: i64, x: Self) -> Result<Self> {
        let top = Self::minus(x.clone(), Self::scale(Monomial::q_pow(a), x));
        Self::geom_div(top, Monomial::q_pow(b))
    }

    /// Checks every divisor in the tree.
    pub fn validate(&self) -> Result<()> {
        match self {
            Letter { .. } => Ok(()),
            Plus { left, right } | Minus { left, right } => {
                left.validate()?;
                right.validate()
            }
            Epsilon { inner } | ScaleByLetter { inner, .. } => inner.validate(),
            GeomDiv { inner, divisor } => {
                check_divisor(divisor)?;
                inner.validate()
            }
        }
    }

    fn uses_t(&self) -> bool {
        match self {
            Letter { letter } => letter.tshift != 0,
            Plus { left, right } | Minus { left, right } => left.uses_t() || right.uses_t(),
            Epsilon { inner } => inner.uses_t(),
            ScaleByLetter { letter, inner } => letter.tshift != 0 || inner.uses_t(),
            GeomDiv { inner, divisor } => divisor.tshift != 0 || inner.uses_t(),
        }
    }
}

fn check_divisor(t: &Monomial) -> Result<()> {
    if !t.is_scalar() {
        return Err(Error::Domain(format!("divisor {t} involves x-variables")));
    }
    if t.is_one() {
        return Err(Error::Domain("divisor equal to 1".into()));
    }
    Ok(())
}

/// `p_r[X]` over `F`, with the letter `t` read as the given value.
pub fn power_sum_in<F: Field>(x: &AlphabetExpr, r: u32, t: &F) -> Result<LaurentPoly<F>> {
    if r == 0 {
        return Err(Error::Domain("power sums start at r = 1".into()));
    }
    let k = r as i32;
    Ok(match x {
        Letter { letter } => letter.pow(k).to_poly(t)?,
        Plus { left, right } => power_sum_in(left, r, t)? + power_sum_in(right, r, t)?,
        Minus { left, right } => power_sum_in(left, r, t)? - power_sum_in(right, r, t)?,
        Epsilon { inner } => {
            let p = power_sum_in(inner, r, t)?;
            if r % 2 == 1 {
                -p
            } else {
                p
            }
        }
        ScaleByLetter { letter, inner } => power_sum_in(inner, r, t)? * letter.pow(k).to_poly(t)?,
        GeomDiv { inner, divisor } => {
            check_divisor(divisor)?;
            let d = F::one() - divisor.pow(k).scalar(t)?;
            if d.is_zero() {
                return Err(Error::Pole(format!("1 - ({divisor})^{r} vanishes")));
            }
            power_sum_in(inner, r, t)?.scale(&d.inv()?)
        }
    })
}

/// `p_r[X]` over `Q(q)`; `X` must not use the letter `t`.
pub fn power_sum(x: &AlphabetExpr, r: u32) -> Result<LaurentPoly> {
    if x.uses_t() {
        return Err(Error::Domain("alphabet uses t; call power_sum_in with a value for t".into()));
    }
    power_sum_in(x, r, &QRat::one())
}

/// `f[X]`: each `p_lambda` becomes `prod_i p_{lambda_i}[X]`.
pub fn eval_sym_in<F: Field>(f: &SymFunc<F>, x: &AlphabetExpr, t: &F) -> Result<LaurentPoly<F>> {
    let p = if f.basis() == Basis::P { f.to_p()? } else { f.convert(Basis::P)?.to_p()? };
    let mut cache: HashMap<u32, LaurentPoly<F>> = HashMap::new();
    let mut out = LaurentPoly::zero();
    for (lam, c) in &p {
        let mut term = LaurentPoly::constant(c.clone());
        for &r in lam.parts() {
            let pr = match cache.entry(r) {
                Entry::Occupied(e) => e.into_mut(),
                Entry::Vacant(e) => e.insert(power_sum_in(x, r, t)?),
            };
            term = &term * pr;
        }
        out = out + term;
    }
    Ok(out)
}

pub fn eval_sym(f: &SymFunc, x: &AlphabetExpr) -> Result<LaurentPoly> {
    if x.uses_t() {
        return Err(Error::Domain("alphabet uses t; call eval_sym_in with a value for t".into()));
    }
    eval_sym_in(f, x, &QRat::one())
}

/// Checks `h_r[X+Y] = sum_i h_i[X] h_{r-i}[Y]` and `h_r[-X] = (-1)^r e_r[X]`.
pub fn verify_h_rules(r: u32, x: &AlphabetExpr, y: &AlphabetExpr) -> Result<bool> {
    let h = |k: u32, a: &AlphabetExpr| -> Result<LaurentPoly> {
        if k == 0 {
            return Ok(LaurentPoly::one());
        }
        eval_sym(&SymFunc::h(Partition::row(k)), a)
    };
    let lhs = h(r, &AlphabetExpr::plus(x.clone(), y.clone()))?;
    let mut rhs = LaurentPoly::zero();
    for i in 0..=r {
        rhs = rhs + h(i, x)? * h(r - i, y)?;
    }
    if lhs != rhs {
        return Ok(false);
    }
    let neg = h(r, &AlphabetExpr::neg(x.clone()))?;
    let e = if r == 0 { LaurentPoly::one() } else { eval_sym(&SymFunc::e(Partition::row(r)), x)? };
    let e = if r % 2 == 1 { -e } else { e };
    Ok(neg == e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::q_poch;

    fn x(i: usize) -> AlphabetExpr {
        AlphabetExpr::var(i)
    }

    #[test]
    fn geometric_division() {
        let a = AlphabetExpr::geom_div(x(1), Monomial::q_pow(1)).unwrap();
        let got = power_sum(&a, 2).unwrap();
        let want = LaurentPoly::monomial(&[0, 2], QRat::one_minus_q_pow(2).inv().unwrap());
        assert_eq!(got, want);
    }

    #[test]
    fn epsilon_sign() {
        let a = AlphabetExpr::plus(x(1), AlphabetExpr::scale(Monomial::q_pow(2), x(2)));
        for r in 1..=5 {
            let p = power_sum(&a, r).unwrap();
            let want = if r % 2 == 1 { -p } else { p };
            assert_eq!(power_sum(&AlphabetExpr::epsilon(a.clone()), r).unwrap(), want);
        }
    }

    #[test]
    fn plain_sum() {
        let got = power_sum(&AlphabetExpr::plus(x(1), x(2)), 3).unwrap();
        assert_eq!(got, LaurentPoly::from_terms([(vec![0, 3], QRat::one()), (vec![0, 0, 3], QRat::one())]));
    }

    #[test]
    fn bad_divisors() {
        assert!(AlphabetExpr::geom_div(x(1), Monomial::one()).is_err());
        assert!(AlphabetExpr::geom_div(x(1), Monomial::var(2)).is_err());
    }

    #[test]
    fn h_r_at_geometric_ratio() {
        // h_r[(1 - z)/(1 - q)] = (z)_r/(q)_r with z = q^3
        let a = AlphabetExpr::geom_div(
            AlphabetExpr::minus(AlphabetExpr::unit(), AlphabetExpr::letter(Monomial::q_pow(3))),
            Monomial::q_pow(1),
        )
        .unwrap();
        for r in 1..=4 {
            let got = eval_sym(&SymFunc::h(Partition::row(r)), &a).unwrap();
            let z = QRat::q_pow(3);
            let want = q_poch(&z, r as i64).unwrap().try_div(&q_poch(&QRat::q(), r as i64).unwrap()).unwrap();
            assert_eq!(got, LaurentPoly::constant(want), "r = {r}");
        }
    }

    #[test]
    fn e_vanishes_on_short_sums() {
        let a = AlphabetExpr::vars([1, 2]);
        assert!(eval_sym(&SymFunc::e(Partition::row(3)), &a).unwrap().is_zero());
        assert!(!eval_sym(&SymFunc::e(Partition::row(2)), &a).unwrap().is_zero());
    }

    #[test]
    fn homogeneous_scaling() {
        let a = AlphabetExpr::vars([1, 2, 3]);
        let m = Monomial::q_pow(2).with_exp(4, 1);
        let f = SymFunc::h(crate::partitions::part(&[2, 1]));
        let lhs = eval_sym(&f, &AlphabetExpr::scale(m.clone(), a.clone())).unwrap();
        let rhs = eval_sym(&f, &a).unwrap() * m.pow(3).to_poly(&QRat::one()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn h_rules() {
        assert!(verify_h_rules(2, &x(1), &x(2)).unwrap());
        assert!(verify_h_rules(1, &AlphabetExpr::q_ratio(2, 1, x(1)).unwrap(), &x(2)).unwrap());
        let h2 = eval_sym(&SymFunc::h(Partition::row(2)), &AlphabetExpr::plus(x(1), x(2))).unwrap();
        let want = LaurentPoly::from_terms([
            (vec![0, 2], QRat::one()),
            (vec![0, 1, 1], QRat::one()),
            (vec![0, 0, 2], QRat::one()),
        ]);
        assert_eq!(h2, want);
        let neg = eval_sym(&SymFunc::h(Partition::row(2)), &AlphabetExpr::neg(AlphabetExpr::vars([1, 2]))).unwrap();
        assert_eq!(neg, LaurentPoly::monomial(&[0, 1, 1], QRat::one()));
    }

    #[test]
    fn t_letters_need_a_value() {
        let a = AlphabetExpr::letter(Monomial::t_pow(1));
        assert!(power_sum(&a, 1).is_err());
        let p = power_sum_in(&a, 2, &QRat::q_pow(3)).unwrap();
        assert_eq!(p, LaurentPoly::constant(QRat::q_pow(6)));
    }

    #[test]
    fn serde_tags() {
        let a = AlphabetExpr::q_ratio(2, 1, x(1)).unwrap();
        let s = serde_json::to_string(&a).unwrap();
        assert!(s.contains(r#""kind":"GeomDiv""#));
        let b: AlphabetExpr = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
    }
}
