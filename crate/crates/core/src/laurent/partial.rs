//! One-variable constant terms of `p / prod (1 - q^u x_k / x_i)` in the field
//! of iterated Laurent series.

use std::collections::HashMap;

use super::LaurentPoly;
use crate::qfield::{Field, QRat};
use crate::{Error, Result};

/// The factor `1 - q^qexp x_num / x_den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DenFactor {
    pub qexp: i64,
    pub num: usize,
    pub den: usize,
}

impl DenFactor {
    pub fn new(qexp: i64, num: usize, den: usize) -> Self {
        DenFactor { qexp, num, den }
    }
}

/// `numerator / prod factors`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalCT {
    pub numerator: LaurentPoly,
    pub factors: Vec<DenFactor>,
}

impl RationalCT {
    pub fn new(numerator: LaurentPoly, factors: Vec<DenFactor>) -> Result<Self> {
        if let Some(f) = factors.iter().find(|f| f.num == f.den) {
            return Err(Error::Precondition(format!("factor 1 - q^{} x{}/x{} is not a ratio", f.qexp, f.num, f.den)));
        }
        Ok(RationalCT { numerator, factors })
    }

    fn vars(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.numerator.nvars()).collect();
        for f in &self.factors {
            v.push(f.num);
            v.push(f.den);
        }
        v.sort_unstable();
        v.dedup();
        v
    }
}

fn ranks(order: &[usize]) -> Result<HashMap<usize, usize>> {
    let mut r = HashMap::new();
    for (p, &v) in order.iter().enumerate() {
        if r.insert(v, p).is_some() {
            return Err(Error::Precondition(format!("variable x{v} repeated in the order")));
        }
    }
    Ok(r)
}

fn rank_of(r: &HashMap<usize, usize>, v: usize) -> Result<usize> {
    r.get(&v).copied().ok_or_else(|| Error::Precondition(format!("variable x{v} missing from the order")))
}

/// `CT_{x_k}` of `r` by the residue rule: a sum over factors
/// `1 - q^u x_k/x_i` with `x_i` after `x_k` in `order` (listed from first
/// to last), each evaluated at `x_k = q^{-u} x_i`.
///
/// Every factor involving `x_k` must have it in the numerator, the `q`-powers
/// of factors sharing a denominator variable must differ, and the degree of
/// the numerator in `x_k` must be below the number of such factors.
pub fn ct_partial_fraction(r: &RationalCT, k: usize, order: &[usize]) -> Result<Vec<RationalCT>> {
    let rk = ranks(order)?;
    for v in r.vars() {
        rank_of(&rk, v)?;
    }
    let (with_k, others): (Vec<DenFactor>, Vec<DenFactor>) =
        r.factors.iter().partition(|f| f.num == k || f.den == k);
    if let Some(f) = with_k.iter().find(|f| f.den == k) {
        return Err(Error::Precondition(format!("x{k} occurs in the denominator of factor 1 - q^{} x{}/x{k}", f.qexp, f.num)));
    }
    for (a, f) in with_k.iter().enumerate() {
        if with_k[a + 1..].iter().any(|g| g.den == f.den && g.qexp == f.qexp) {
            return Err(Error::Precondition(format!("repeated factor 1 - q^{} x{k}/x{}", f.qexp, f.den)));
        }
    }
    let m = with_k.len() as i32;
    if let Some((_, hi)) = r.numerator.degree_range(k) {
        if hi > m - 1 {
            return Err(Error::Precondition(format!(
                "numerator has degree {hi} in x{k}, above {} (number of factors minus one)",
                m - 1
            )));
        }
    }
    let kr = rank_of(&rk, k)?;
    let mut out = Vec::new();
    for (a, f) in with_k.iter().enumerate() {
        if rank_of(&rk, f.den)? <= kr {
            continue;
        }
        let mut num = r.numerator.substitute(k, -f.qexp, Some(f.den));
        let mut facs = others.clone();
        for (b, g) in with_k.iter().enumerate() {
            if a == b {
                continue;
            }
            let u = g.qexp - f.qexp;
            if g.den == f.den {
                num = num.scale(&QRat::one_minus_q_pow(u).inv()?);
            } else {
                facs.push(DenFactor::new(u, f.den, g.den));
            }
        }
        out.push(RationalCT { numerator: num, factors: facs });
    }
    Ok(out)
}

/// Full constant term of the iterated Laurent series expansion of `r`, in
/// which `1/(1 - c x_i/x_j)` expands in powers of `x_i/x_j` when `x_i` comes
/// before `x_j` in `order`, and in powers of `x_j/x_i` otherwise.
///
/// With weights equal to the positions in `order`, every series term has
/// weight at most `-l` at order `l`, so truncating each series at the
/// largest numerator weight is exact.
pub fn series_ct(r: &RationalCT, order: &[usize]) -> Result<QRat> {
    let rk = ranks(order)?;
    let vars = r.vars();
    for &v in &vars {
        rank_of(&rk, v)?;
    }
    let weight = |e: &[i32]| -> i64 { e.iter().enumerate().map(|(v, &d)| rk.get(&v).map_or(0, |&w| w as i64) * d as i64).sum() };
    let top = r.numerator.terms().map(|(e, _)| weight(e)).max().unwrap_or(0).max(0) as i32;
    let mut acc = r.numerator.clone();
    for f in &r.factors {
        let mut s = LaurentPoly::zero();
        let n = f.num.max(f.den) + 1;
        if rk[&f.num] < rk[&f.den] {
            for l in 0..=top {
                let mut e = vec![0; n];
                e[f.num] = l;
                e[f.den] = -l;
                s.add_term(&e, QRat::q_pow(f.qexp * l as i64));
            }
        } else {
            for l in 1..=top {
                let mut e = vec![0; n];
                e[f.num] = -l;
                e[f.den] = l;
                s.add_term(&e, -QRat::q_pow(-f.qexp * l as i64));
            }
        }
        acc = &acc * &s;
    }
    Ok(acc.constant_term())
}
