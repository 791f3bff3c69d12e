//! Exact checks of the splitting formulas, the q-factorial lemma and the
//! symmetrization identity, all with denominators cleared.

use super::{build_d, build_d_on, ratio, BinomialProduct, LaurentPoly};
use crate::qfield::{q_poch_qpower, Field, QRat};
use crate::{Error, Result};

fn check_shape(n: usize, n0: usize, c: u32) -> Result<()> {
    if n == 0 || c == 0 || n0 > n {
        return Err(Error::Domain(format!("need n >= 1, c >= 1, n0 <= n; got n={n}, n0={n0}, c={c}")));
    }
    Ok(())
}

fn poch(s: i64, i: usize, j: usize, k: i64) -> LaurentPoly {
    debug_assert!(k >= 0);
    LaurentPoly::poch(s, &ratio(i, j), k as u32)
}

/// `(prefactor, polynomial part, pole)`: one summand `pref * poly / (1 - q^j v)`.
type Summand = (QRat, LaurentPoly, (usize, i64));

/// `lhs == sum pref * poly * den / (1 - q^j x_i^{dir} x_0^{-dir})`, where `den`
/// is the product of every pole and `lhs` is already multiplied by it.
fn cleared_equal(lhs: &LaurentPoly, poles: &[(usize, i64)], summands: &[Summand], dir: i32) -> bool {
    let pole_exps = |i: usize| -> Vec<i32> {
        let mut v = vec![0; i + 1];
        v[i] = dir;
        v[0] = -dir;
        v
    };
    let mut total = LaurentPoly::zero();
    for (pref, poly, pole) in summands {
        let mut rest = BinomialProduct::new(0);
        let mut skipped = false;
        for p in poles {
            if !skipped && p == pole {
                skipped = true;
                continue;
            }
            rest.push(p.1, &pole_exps(p.0));
        }
        assert!(skipped, "summand pole must be among the denominator factors");
        total = &total + &(&rest.expand() * poly).scale(pref);
    }
    total == *lhs
}

/// `1 / ((q^{-j})_j (q)_k)`.
fn pref_den(j: i64, k: i64) -> QRat {
    (q_poch_qpower(-j, j).unwrap() * q_poch_qpower(1, k).unwrap()).inv().expect("nonzero")
}

/// Check the partial-fraction expansion of
/// `S = D_{n,n0}(x,c) / (prod_{i<=n0} (x_i/w)_{c-1} prod_{i>n0} (x_i/w)_c)`
/// in `w^{-1}` after multiplying by the full denominator. `w` is `x0`.
pub fn verify_splitting_s(n: usize, n0: usize, c: u32) -> Result<bool> {
    check_shape(n, n0, c)?;
    let (ni, n0i, ci) = (n as i64, n0 as i64, c as i64);
    let mut poles = Vec::new();
    for i in 1..=n {
        let k = ci - (i <= n0) as i64;
        for j in 0..k {
            poles.push((i, j));
        }
    }
    let mut summands: Vec<Summand> = Vec::new();
    for i in 1..=n0 {
        let ii = i as i64;
        let others: Vec<usize> = (1..=n).filter(|&l| l != i).collect();
        for j in 0..=ci - 2 {
            let pref = QRat::q_pow((ci - 1) * (j * (ni - 1) + n0i - ii) + j * (ni - n0i)) * pref_den(j, ci - j - 2);
            let mut p = build_d_on(&others, n0 - 1, c);
            for l in 1..i {
                p = p * poch(2 - ci, i, l, j) * poch(j + 1, i, l, ci - j - 1);
            }
            for l in i + 1..=n0 {
                p = p * poch(1 - ci, i, l, j + 1) * poch(j + 1, i, l, ci - j - 2);
            }
            for l in n0 + 1..=n {
                p = p
                    * LaurentPoly::monomial(&ratio(i, l), -QRat::one())
                    * poch(1 - ci, i, l, j)
                    * poch(j + 1, i, l, ci - j - 2);
            }
            summands.push((pref, p, (i, j)));
        }
    }
    for i in n0 + 1..=n {
        let ii = i as i64;
        let others: Vec<usize> = (1..=n).filter(|&l| l != i).collect();
        for j in 0..ci {
            let pref = QRat::q_pow((ni - 1) * j * ci + (ni - ii) * ci - n0i * j) * pref_den(j, ci - j - 1);
            let mut p = build_d_on(&others, n0, c);
            for l in 1..=n0 {
                p = p * poch(2 - ci, i, l, j) * poch(j + 1, i, l, ci - j - 1);
            }
            for l in n0 + 1..i {
                p = p * poch(1 - ci, i, l, j) * poch(j + 1, i, l, ci - j);
            }
            for l in i + 1..=n {
                p = p * poch(-ci, i, l, j + 1) * poch(j + 1, i, l, ci - j - 1);
            }
            summands.push((pref, p, (i, j)));
        }
    }
    let d = build_d(n, n0, c)?;
    Ok(cleared_equal(&d, &poles, &summands, 1))
}

/// Check the partial-fraction expansion of
/// `T = D_{n,n0}(x,c) / (prod_{i<=n0} (y/x_i)_{c-1} prod_{i>n0} (q^{-1} y/x_i)_c)`
/// in `y` after multiplying by the full denominator. `y` is `x0`.
pub fn verify_splitting_t(n: usize, n0: usize, c: u32) -> Result<bool> {
    check_shape(n, n0, c)?;
    let ci = c as i64;
    let mut poles = Vec::new();
    for i in 1..=n {
        let js = if i <= n0 { 0..ci - 1 } else { -1..ci - 1 };
        for j in js {
            poles.push((i, j));
        }
    }
    let mut summands: Vec<Summand> = Vec::new();
    for i in 1..=n0 {
        let others: Vec<usize> = (1..=n).filter(|&l| l != i).collect();
        for j in 0..=ci - 2 {
            let mut pref = pref_den(j, ci - j - 2);
            let mut p = build_d_on(&others, n0 - 1, c);
            for l in 1..i {
                pref = pref * QRat::q_pow((ci - 1) * (j + 1));
                p = p * poch(1 - ci, l, i, j + 1) * poch(j + 1, l, i, ci - j - 2);
            }
            for l in i + 1..=n0 {
                pref = pref * QRat::q_pow((ci - 1) * j);
                p = p * poch(2 - ci, l, i, j) * poch(j + 1, l, i, ci - j - 1);
            }
            for l in n0 + 1..=n {
                pref = pref * QRat::q_pow(ci * j + 1);
                p = p
                    * LaurentPoly::monomial(&ratio(l, i), -QRat::one())
                    * poch(2 - ci, l, i, j)
                    * poch(j + 2, l, i, ci - j - 2);
            }
            summands.push((pref, p, (i, j)));
        }
    }
    for i in n0 + 1..=n {
        let others: Vec<usize> = (1..=n).filter(|&l| l != i).collect();
        for j in -1..=ci - 2 {
            let mut pref = (q_poch_qpower(-j - 1, j + 1).unwrap() * q_poch_qpower(1, ci - j - 2).unwrap())
                .inv()
                .expect("nonzero");
            let mut p = build_d_on(&others, n0, c);
            for l in 1..=n0 {
                pref = pref * QRat::q_pow((ci - 1) * (j + 1));
                p = p * poch(1 - ci, l, i, j + 1) * poch(j + 1, l, i, ci - j - 2);
            }
            for l in n0 + 1..i {
                pref = pref * QRat::q_pow(ci * (j + 2));
                p = p * poch(-ci, l, i, j + 2) * poch(j + 2, l, i, ci - j - 2);
            }
            for l in i + 1..=n {
                pref = pref * QRat::q_pow(ci * (j + 1));
                p = p * poch(1 - ci, l, i, j + 1) * poch(j + 2, l, i, ci - j - 1);
            }
            summands.push((pref, p, (i, j)));
        }
    }
    let d = build_d(n, n0, c)?;
    Ok(cleared_equal(&d, &poles, &summands, -1))
}

/// Which of the three q-factorial identities to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QFactCase {
    B1,
    B2,
    C,
}

/// `(q^s y^d; q)_k` in the single variable `y = x0`.
fn ypoch(s: i64, d: i32, k: i64) -> LaurentPoly {
    LaurentPoly::poch(s, &[d], k as u32)
}

/// Check one q-factorial identity, cross-multiplied, as polynomials in `y`.
pub fn verify_qfact_lemma(i: u32, j: u32, t: i64, case: QFactCase) -> Result<bool> {
    let (i, j) = (i as i64, j as i64);
    let (lo, hi) = match case {
        QFactCase::B1 => (0, j),
        QFactCase::B2 => (-1, j - 1),
        QFactCase::C => (0, j - 1),
    };
    if t < lo || t > hi {
        return Err(Error::Precondition(format!("t={t} outside [{lo}, {hi}] for case {case:?}")));
    }
    let (lhs, rhs) = match case {
        QFactCase::B1 => (
            ypoch(0, -1, i) * ypoch(1, 1, j),
            (ypoch(1 - i, 1, t) * ypoch(t + 1, 1, j - t) * ypoch(-t, -1, i)).scale(&QRat::q_pow(i * t)),
        ),
        QFactCase::B2 => (
            ypoch(0, 1, j) * ypoch(1, -1, i),
            (ypoch(-i, 1, t + 1) * ypoch(t + 1, 1, j - t - 1) * ypoch(-t, -1, i)).scale(&QRat::q_pow(i * (t + 1))),
        ),
        QFactCase::C => (
            ypoch(0, 1, j) * ypoch(1, -1, i),
            (ypoch(-i, 1, t) * ypoch(t + 1, 1, j - t - 1) * ypoch(-t, -1, i + 1))
                .mul_monomial(&[1], &-QRat::q_pow((i + 1) * t)),
        ),
    };
    Ok(lhs == rhs)
}

/// `1 + z + ... + z^i` with `z = q^c`.
fn q_int(i: u32, c: u32) -> QRat {
    (0..=i as i64).map(|r| QRat::q_pow(r * c as i64)).fold(QRat::zero(), |a, b| a + b)
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    fn rec(pre: &mut Vec<usize>, left: &mut Vec<usize>, odd: bool, out: &mut Vec<(Vec<usize>, bool)>) {
        if left.is_empty() {
            out.push((pre.clone(), odd));
            return;
        }
        for k in 0..left.len() {
            let v = left.remove(k);
            pre.push(v);
            rec(pre, left, odd ^ (k % 2 == 1), out);
            pre.pop();
            left.insert(k, v);
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut (0..n).collect(), false, &mut out);
    out
}

/// `sum_w sgn(w) w(prod_{i<j} (x_i - q^c x_j)) = prod_{i<j}(x_i - x_j) *
/// prod_{i=1}^{n-1} [i+1]_{q^c}` over `x1..xn`.
pub fn weyl_sum_holds(n: usize, c: u32) -> bool {
    let mut g = LaurentPoly::one();
    let mut v = LaurentPoly::one();
    for i in 1..=n {
        for j in i + 1..=n {
            let xi = LaurentPoly::var(i);
            let xj = LaurentPoly::var(j);
            g = g * (&xi - &xj.scale(&QRat::q_pow(c as i64)));
            v = v * (xi - xj);
        }
    }
    let mut sum = LaurentPoly::zero();
    for (w, odd) in permutations(n) {
        let mut perm = vec![0];
        perm.extend(w.iter().map(|&k| k + 1));
        let term = g.permute(&perm);
        sum = if odd { sum - term } else { sum + term };
    }
    let k = (1..n as u32).map(|i| q_int(i, c)).fold(QRat::one(), |a, b| a * b);
    sum == v.scale(&k)
}

/// Check the symmetrization identity for a symmetric `f` in `x1..xn`, and
/// the Weyl-sum identity behind it.
pub fn verify_symmetrization(n: usize, c: u32, f: &LaurentPoly) -> Result<bool> {
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    if f.nvars() > n + 1 || f.degree_range(0).is_some_and(|r| r != (0, 0)) {
        return Err(Error::Precondition(format!("f must only involve x1..x{n}")));
    }
    for i in 1..n {
        let mut perm: Vec<usize> = (0..=n).collect();
        perm.swap(i, i + 1);
        if f.permute(&perm) != *f {
            return Err(Error::Precondition(format!("f is not symmetric under x{i} <-> x{}", i + 1)));
        }
    }
    let mut half = BinomialProduct::new(n + 1);
    let mut full = BinomialProduct::new(n + 1);
    for i in 1..=n {
        for j in 1..=n {
            if i < j {
                half.push_poch(0, &ratio(i, j), c);
                half.push_poch(1, &ratio(j, i), c);
            }
            if i != j {
                full.push_poch(0, &ratio(i, j), c);
            }
        }
    }
    let lhs = half.ct_with(f, None)?;
    let fact: i64 = (1..=n as i64).product();
    let k = (1..n as u32).map(|i| q_int(i, c)).fold(QRat::one(), |a, b| a * b);
    let rhs = full.ct_with(f, None)? * k * QRat::from_ratio(&num_rational::BigRational::new(1.into(), fact.into()));
    Ok(lhs == rhs && weyl_sum_holds(n, c))
}
