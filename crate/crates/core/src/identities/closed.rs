//! Closed-form right-hand sides.

use super::{binomial_letter, h_row, p_mac};
use crate::laurent::chi;
use crate::partitions::Partition;
use crate::plethysm::AlphabetExpr;
use crate::qfield::{q_poch_qpower, Field, QRat};
use crate::{Error, Result};

fn qp(e: i64, k: i64) -> Result<QRat> {
    q_poch_qpower(e, k)
}

/// `(q; q)_k`.
fn qf(k: i64) -> Result<QRat> {
    q_poch_qpower(1, k)
}

fn binom2(k: i64) -> i64 {
    k * (k - 1) / 2
}

fn sign(odd: bool) -> QRat {
    if odd {
        QRat::from_i64(-1)
    } else {
        QRat::one()
    }
}

fn div(a: QRat, b: &QRat) -> Result<QRat> {
    a.try_div(b)
}

/// `h_l[(1 - q^e) / (1 - q)]`, evaluated plethystically.
fn h_at(l: u32, e: i64) -> Result<QRat> {
    let x = AlphabetExpr::q_ratio(e, 1, AlphabetExpr::unit())?;
    Ok(h_row(l, &x)?.constant_term())
}

/// `P_mu[(q^s - q^e) / (1 - q^c); q, q^c]`.
fn p_at(mu: &Partition, s: i64, e: i64, c: u32) -> Result<QRat> {
    let x = binomial_letter(s, e, c, AlphabetExpr::unit())?;
    Ok(p_mac(mu, &x, c)?.constant_term())
}

/// `prod_{i=0}^{n-1} (q)_{a+b+ic} (q)_{(i+1)c} / ((q)_{a+ic} (q)_{b+ic} (q)_c)`.
pub fn rhs_qmorris(n: usize, a: i64, b: u32, c: u32) -> Result<QRat> {
    let (b, c) = (b as i64, c as i64);
    let mut acc = QRat::one();
    for i in 0..n as i64 {
        let num = qf(a + b + i * c)? * &qf((i + 1) * c)?;
        let den = qf(a + i * c)? * &qf(b + i * c)? * &qf(c)?;
        acc = acc * &div(num, &den)?;
    }
    Ok(acc)
}

/// Closed form of `B_{n,n0}(a, b, c, l, mu)`. `a` may be any integer.
pub fn rhs_b(n: usize, n0: usize, a: i64, b: u32, c: u32, l: u32, mu: &Partition) -> Result<QRat> {
    if n == 0 || n0 >= n || c == 0 || mu.len() >= n - n0 {
        return Err(Error::Domain(format!("B closed form needs 0 <= n0 < n, l(mu) < n - n0, c >= 1 (n={n} n0={n0} mu={mu} c={c})")));
    }
    let (ni, n0i, b, c, l) = (n as i64, n0 as i64, b as i64, c as i64, l as i64);
    let mu_sq: i64 = mu.parts().iter().map(|&p| binom2(p as i64)).sum();
    let expo = binom2(l) + mu_sq - c * mu.n_stat() as i64;
    let mut acc = sign((l + mu.size() as i64) % 2 == 1) * &QRat::q_pow(expo);
    acc = acc * &h_at(l as u32, ni * c - n0i)?;
    acc = acc * &div(qp(a - l + 1, l)?, &qp(n0i * (c - 1) + b + 1, l)?)?;
    acc = acc * &p_at(mu, 0, a + b + (ni - 1) * c - n0i + 1, c as u32)?;
    for j in 0..ni {
        let s = j * c - n0i - chi(j <= n0i) * (j - n0i);
        let num = qp(a + s + 1, b)? * &qf(s + c - 1)?;
        let den = qf(b + s)? * &qf(c - chi(j <= n0i))?;
        acc = acc * &div(num, &den)?;
    }
    for j in 1..ni - n0i {
        let mj = mu.part(j as usize) as i64;
        let num = QRat::one_minus_q_pow((j + 1) * c)
            * &qp(j * c - b - mj, mj)?
            * &qp((ni - j - 1) * c - n0i + b + mj + 1, l)?;
        let den = qp((ni - j) * c + b + 1 - n0i, mj + l)?;
        acc = acc * &div(num, &den)?;
    }
    Ok(acc)
}

/// Closed form of `C_{n,n0}(a, b, c, l, m)` for `n - n0 <= m <= n`.
pub fn rhs_c(n: usize, n0: usize, a: i64, b: u32, c: u32, l: u32, m: usize) -> Result<QRat> {
    if n == 0 || n0 >= n || c == 0 || m > n || m + n0 < n {
        return Err(Error::Domain(format!("C closed form needs 0 <= n0 < n, n - n0 <= m <= n, c >= 1 (n={n} n0={n0} m={m} c={c})")));
    }
    let (ni, n0i, mi, b, c, l) = (n as i64, n0 as i64, m as i64, b as i64, c as i64, l as i64);
    let mut acc = sign(l % 2 == 1) * &QRat::q_pow(binom2(l));
    acc = acc * &h_at(l as u32, ni * c - n0i)?;
    acc = acc * &div(qp(a - l + 1, l)?, &qp((ni - 1) * c - n0i + b + 2, l)?)?;
    for j in 2..=ni - n0i {
        acc = acc * &QRat::one_minus_q_pow(j * c);
    }
    for j in 0..ni {
        let s = j * (c - 1) + chi(j > n0i) * (j - n0i);
        let e = chi(j >= ni - mi);
        let num = qp(a + s + 1, b + e)? * &qf((j + 1) * (c - 1) + chi(j > n0i) * (j - n0i))?;
        let den = qf(b + s + e)? * &qf(c - chi(j <= n0i))?;
        acc = acc * &div(num, &den)?;
    }
    Ok(acc)
}

/// Closed form of `A_n(a, b, c, lambda, mu)`.
pub fn rhs_a(n: usize, a: i64, b: u32, c: u32, lambda: &Partition, mu: &Partition) -> Result<QRat> {
    if c == 0 {
        return Err(Error::Domain("A closed form needs c >= 1".into()));
    }
    let (ni, b, ci) = (n as i64, b as i64, c as i64);
    let lam_sq: i64 = (1..=n).map(|i| binom2(lambda.part(i) as i64)).sum();
    let n_lam: i64 = (1..=n).map(|i| (i as i64 - 1) * lambda.part(i) as i64).sum();
    let mut acc = sign(lambda.size() % 2 == 1) * &QRat::q_pow(lam_sq - ci * n_lam);
    acc = acc * &p_at(lambda, 0, ni * ci, c)?;
    if acc.is_zero() {
        return Ok(acc);
    }
    acc = acc * &p_at(mu, ci - b - 1, a + ni * ci, c)?;
    let mu1 = mu.part(1) as i64;
    for i in 1..=ni {
        let li = lambda.part(i as usize) as i64;
        for j in 1..=mu.len() as i64 {
            let (mj, mj1) = (mu.part(j as usize) as i64, mu.part(j as usize + 1) as i64);
            acc = acc * &qp(b + (ni - i - j) * ci + li + mj1 + 1, mj - mj1)?;
        }
        let num = qp(a + (i - 1) * ci - li + 1, b + li)? * &qf(i * ci)?;
        let den = qf(b + (ni - i) * ci + li + mu1)? * &qf(ci)?;
        acc = acc * &div(num, &den)?;
    }
    Ok(acc)
}

/// The factor multiplying `A_{n-n0-1}(c-b-1, (n0+1)(c-1)+b+1, c, mu, (l))` in
/// the value of `B` at `a = -n0(c-1) - b - 1`.
pub fn extr2_prefactor(n: usize, n0: usize, b: u32, c: u32) -> Result<QRat> {
    if c == 0 || n0 >= n {
        return Err(Error::Domain(format!("needs c >= 1 and n0 < n (n={n} n0={n0} c={c})")));
    }
    let (ni, n0i, b, c) = (n as i64, n0 as i64, b as i64, c as i64);
    let expo = -binom2(n0i + 1) * b * (c - 1) - (n0i + 1) * binom2(b + 1);
    let mut acc = sign(((n0i + 1) * b) % 2 == 1) * &QRat::q_pow(expo);
    acc = acc * &div(QRat::one_minus_q_pow((ni - n0i) * c), &QRat::one_minus_q_pow(c))?;
    acc = acc * &qf((n0i + 1) * (c - 1))?;
    acc = div(acc, &qf(c - 1)?.pow(n0i + 1)?)?;
    Ok(acc)
}

/// `prod_{i=0}^{n-m-1} (q)_{(i+1)(c-1)} (q^{-i(c-1)-b})_b / ((q)_{b+i(c-1)} (q)_{c-1})`.
fn c_block(n: i64, m: i64, b: i64, c: i64) -> Result<QRat> {
    let mut acc = QRat::one();
    for i in 0..n - m {
        let num = qf((i + 1) * (c - 1))? * &qp(-i * (c - 1) - b, b)?;
        let den = qf(b + i * (c - 1))? * &qf(c - 1)?;
        acc = acc * &div(num, &den)?;
    }
    Ok(acc)
}

/// The factor multiplying `B_{m, n0-n+m}(c-b-2, (n-m)(c-1)+b+1, c, 0, (l))` in
/// the value of `C` at `a = -(n-m-1)(c-1) - b - 1`.
pub fn sub_b_prefactor(n: usize, m: usize, b: u32, c: u32, l: u32) -> Result<QRat> {
    if m > n || c == 0 {
        return Err(Error::Domain(format!("needs m <= n and c >= 1 (n={n} m={m} c={c})")));
    }
    let (b, c, l) = (b as i64, c as i64, l as i64);
    let k = div(qp(c, l)?, &qf(l)?)?;
    Ok(k * &c_block(n as i64, m as i64, b, c)?)
}

/// Closed value of `C_{n,n0}(a, b, c, l, m)` at `a = -(n-m-1)(c-1) - b - 1`,
/// for `n - n0 <= m < n`.
pub fn extra_c_rhs(n: usize, n0: usize, b: u32, c: u32, l: u32, m: usize) -> Result<QRat> {
    if m >= n || m + n0 < n || c == 0 {
        return Err(Error::Domain(format!("needs n - n0 <= m < n and c >= 1 (n={n} n0={n0} m={m} c={c})")));
    }
    let (ni, n0i, mi, b, c, l) = (n as i64, n0 as i64, m as i64, b as i64, c as i64, l as i64);
    let mut acc = sign(l % 2 == 1) * &QRat::q_pow(binom2(l));
    acc = acc * &h_at(l as u32, ni * c - n0i)?;
    acc = acc * &div(qp(-(ni - mi - 1) * (c - 1) - b - l, l)?, &qp((ni - 1) * c + b - n0i + 2, l)?)?;
    acc = acc * &c_block(ni, mi, b, c)?;
    for j in 1..ni - n0i {
        acc = acc * &QRat::one_minus_q_pow((j + 1) * c);
    }
    for j in ni - mi..ni {
        let x = chi(j > n0i) * (j - n0i);
        let e = (j - ni + mi + 1) * (c - 1);
        let num = qp(e - b + x, (ni - mi) * (c - 1) + b + 1)? * &qf(e + x)?;
        let den = qf(j * (c - 1) + b + 1 + x)? * &qf(c - chi(j <= n0i))?;
        acc = acc * &div(num, &den)?;
    }
    Ok(acc)
}
