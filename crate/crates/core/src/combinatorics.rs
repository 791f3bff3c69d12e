//! Permutation weights `N_{w,r}`, the maps `eps1` and `eps2`, the key-lemma
//! case analysis and the substitution-cardinality check.
//!
//! Permutations are 1-indexed value lists `w = (w(1), ..., w(s))` with the
//! sentinel `w(0) = 0` implied.

use serde::{Deserialize, Serialize};

use crate::laurent::{LaurentPoly, Monomial};
use crate::plethysm::{power_sum, AlphabetExpr};
use crate::qfield::{Field, QRat};
use crate::{Error, Result};

fn chi(b: bool) -> u32 {
    u32::from(b)
}

fn at(w: &[u32], j: usize) -> u32 {
    if j == 0 {
        0
    } else {
        w[j - 1]
    }
}

fn check_perm(w: &[u32]) -> Result<()> {
    let mut seen = vec![false; w.len()];
    for &v in w {
        if v == 0 || v as usize > w.len() || std::mem::replace(&mut seen[v as usize - 1], true) {
            return Err(Error::Precondition(format!("{w:?} is not a permutation of 1..={}", w.len())));
        }
    }
    Ok(())
}

/// `chi(w(j) > r) chi(w(j-1) > r)`.
fn both_above(w: &[u32], j: usize, r: u32) -> u32 {
    chi(at(w, j) > r) * chi(at(w, j - 1) > r)
}

/// Path weights `e_j = u_j(w) + chi(w(j) > r) chi(w(j-1) > r)`, `j = 1..s`.
pub fn weights(w: &[u32], r: u32) -> Vec<u32> {
    (1..=w.len()).map(|j| chi(at(w, j - 1) < at(w, j)) + both_above(w, j, r)).collect()
}

/// `N_{w,r}`.
pub fn n_wr(w: &[u32], r: u32) -> u32 {
    weights(w, r).iter().sum()
}

/// All of `1..=r` and all of `r+1..=s` appear in decreasing order.
pub fn in_s_sr(w: &[u32], r: u32) -> bool {
    let low: Vec<u32> = w.iter().copied().filter(|&v| v <= r).collect();
    let high: Vec<u32> = w.iter().copied().filter(|&v| v > r).collect();
    low.windows(2).all(|p| p[0] > p[1]) && high.windows(2).all(|p| p[0] > p[1])
}

/// Sorts the values of `1..=r` and of `r+1..=s` decreasingly within their own
/// positions.
pub fn eps1(w: &[u32], r: u32) -> Vec<u32> {
    let mut low: Vec<u32> = w.iter().copied().filter(|&v| v <= r).collect();
    let mut high: Vec<u32> = w.iter().copied().filter(|&v| v > r).collect();
    low.sort_unstable_by(|a, b| b.cmp(a));
    high.sort_unstable_by(|a, b| b.cmp(a));
    let (mut li, mut hi) = (low.into_iter(), high.into_iter());
    w.iter().map(|&v| if v <= r { li.next().unwrap() } else { hi.next().unwrap() }).collect()
}

/// Moves `s - j + 1` to position `j`, where `j` is the first position with
/// `w(j) != s - j + 1`; fixes `(s, ..., 1)`.
pub fn eps2(w: &[u32], r: u32) -> Result<Vec<u32>> {
    check_perm(w)?;
    if !in_s_sr(w, r) {
        return Err(Error::Precondition(format!("{w:?} is not in S_(s,{r})")));
    }
    let s = w.len() as u32;
    let Some(j) = (0..w.len()).find(|&i| w[i] != s - i as u32) else {
        return Ok(w.to_vec());
    };
    let target = s - j as u32;
    let t = w.iter().position(|&v| v == target).expect("value present");
    let mut out = w.to_vec();
    let v = out.remove(t);
    out.insert(j, v);
    Ok(out)
}

/// All permutations of `1..=s` in lexicographic order.
pub fn permutations(s: usize) -> Vec<Vec<u32>> {
    let mut cur: Vec<u32> = (1..=s as u32).collect();
    let mut out = vec![cur.clone()];
    while let Some(i) = (0..s.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) {
        let j = (i + 1..s).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
    out
}

/// Exhaustive check of the monotonicity of `N` under `eps1` and `eps2`, the
/// chain down to `(s, ..., 1)`, and the lower bounds on
/// `sum_j (d_j + chi chi)` over `d_j <= 2`, for all `s <= s_max`.
pub fn verify_monotone_lemmas(s_max: usize) -> Result<bool> {
    if s_max > 7 {
        return Err(Error::Precondition(format!("s_max = {s_max} exceeds 7")));
    }
    for s in 1..=s_max {
        let top: Vec<u32> = (1..=s as u32).rev().collect();
        for w in permutations(s) {
            for r in 0..s as u32 {
                if !monotone_at(&w, r, &top)? {
                    return Ok(false);
                }
            }
            for r in 0..=s as u32 {
                if !lower_bounds_at(&w, r) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn monotone_at(w: &[u32], r: u32, top: &[u32]) -> Result<bool> {
    let s = w.len() as u32;
    let n = n_wr(w, r);
    let w1 = eps1(w, r);
    if !in_s_sr(&w1, r) {
        return Ok(false);
    }
    let n1 = n_wr(&w1, r);
    let same_block_ascent = (2..=w.len()).any(|i| {
        let (a, b) = (at(w, i - 1), at(w, i));
        (a <= r) == (b <= r) && a < b
    });
    if n < n1 || (same_block_ascent && n == n1) {
        return Ok(false);
    }
    // one step of eps2 on elements of S_(s,r)
    if in_s_sr(w, r) {
        let w2 = eps2(w, r)?;
        let n2 = n_wr(&w2, r);
        if n < n2 || (n == n2 && w[0] != s) {
            return Ok(false);
        }
    }
    // chain eps1, eps2, eps2, ... ends at (s, ..., 1) with N = s - r
    let mut cur = w1;
    let mut last = n1;
    for _ in 0..=w.len() {
        if cur == top {
            break;
        }
        cur = eps2(&cur, r)?;
        let nc = n_wr(&cur, r);
        if nc > last {
            return Ok(false);
        }
        last = nc;
    }
    Ok(cur == top && last == s - r)
}

fn lower_bounds_at(w: &[u32], r: u32) -> bool {
    let s = w.len();
    let cc: Vec<u32> = (1..=s).map(|j| both_above(w, j, r)).collect();
    let asc: Vec<bool> = (1..=s).map(|j| at(w, j - 1) < at(w, j)).collect();
    let floor = s as i64 - r as i64;
    let mut d = vec![0u32; s];
    fn rec(j: usize, d: &mut Vec<u32>, w: &[u32], r: u32, cc: &[u32], asc: &[bool], floor: i64) -> bool {
        if j == d.len() {
            let terms: Vec<i64> = (0..d.len()).map(|i| (d[i] + cc[i]) as i64).collect();
            let total: i64 = terms.iter().sum();
            if total < floor {
                return false;
            }
            if terms.iter().any(|x| total - x < floor - 1) {
                return false;
            }
            if total == floor && !(w[0] > r && d[0] == 1) {
                return false;
            }
            return true;
        }
        let lo = u32::from(asc[j]);
        for v in lo..=2 {
            d[j] = v;
            if !rec(j + 1, d, w, r, cc, asc, floor) {
                return false;
            }
        }
        true
    }
    rec(0, &mut d, w, r, &cc, &asc, floor)
}

/// Cases of the key lemma.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum KeyCase {
    C1,
    C2,
    C3,
    C4,
}

/// Outcome of [`classify_key`]: the lowest case found, every case found, and
/// for case (4) the permutation and `d`-vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeyWitness {
    pub case: KeyCase,
    pub all_cases: Vec<KeyCase>,
    pub s: usize,
    pub b: u32,
    pub c: u32,
    pub r: u32,
    pub t: u32,
    pub k: Vec<u32>,
    pub w: Option<Vec<u32>>,
    pub d: Option<Vec<u32>>,
    /// For `t = s - r`, `r < s`: an index `i > r` with `k_i = b + 1`.
    pub special_index: Option<usize>,
}

impl KeyWitness {
    /// Re-checks the case (4) equations and bounds on the stored data.
    pub fn c4_holds(&self) -> bool {
        let (Some(w), Some(d)) = (&self.w, &self.d) else { return false };
        check_c4(&self.k, w, d, self.b, self.c, self.r, self.t)
    }
}

fn check_c4(k: &[u32], w: &[u32], d: &[u32], b: u32, c: u32, r: u32, t: u32) -> bool {
    let s = k.len();
    if w.len() != s || d.len() != s || check_perm(w).is_err() {
        return false;
    }
    let kw = |j: usize| k[w[j - 1] as usize - 1] as i64;
    if kw(1) != b as i64 + d[0] as i64 {
        return false;
    }
    for j in 2..=s {
        if kw(j) - kw(j - 1) != c as i64 - 1 + both_above(w, j, r) as i64 + d[j - 1] as i64 {
            return false;
        }
    }
    if (1..=s).any(|j| at(w, j - 1) < at(w, j) && d[j - 1] == 0) {
        return false;
    }
    let total: i64 = (1..=s).map(|j| (d[j - 1] + both_above(w, j, r)) as i64).sum();
    s as i64 - r as i64 <= total && total <= t as i64
}

/// The `d`-vector forced by `w`, if all entries are nonnegative.
fn forced_d(k: &[u32], w: &[u32], b: u32, c: u32, r: u32) -> Option<Vec<u32>> {
    let kw = |j: usize| k[w[j - 1] as usize - 1] as i64;
    let mut d = Vec::with_capacity(k.len());
    let d1 = kw(1) - b as i64;
    if d1 < 0 {
        return None;
    }
    d.push(d1 as u32);
    for j in 2..=k.len() {
        let x = kw(j) - kw(j - 1) - (c as i64 - 1) - both_above(w, j, r) as i64;
        if x < 0 {
            return None;
        }
        d.push(x as u32);
    }
    Some(d)
}

fn pair_case(k: &[u32], lo: i64, hi: i64, pred: impl Fn(usize, usize) -> bool) -> bool {
    let s = k.len();
    (1..=s).any(|i| (i + 1..=s).any(|j| pred(i, j) && (lo..=hi).contains(&(k[i - 1] as i64 - k[j - 1] as i64))))
}

/// Finds which cases of the key lemma hold for `k`.
pub fn classify_key(s: usize, b: u32, c: u32, r: u32, t: u32, k: &[u32]) -> Result<KeyWitness> {
    if c == 0 || s == 0 {
        return Err(Error::Precondition("s and c must be positive".into()));
    }
    if k.len() != s || r as usize > s {
        return Err(Error::Precondition(format!("need |k| = s = {s} and r = {r} <= s")));
    }
    let kmax = (s as u32 - 1) * (c - 1) + b + t;
    if k.iter().any(|&x| x == 0 || x > kmax) {
        return Err(Error::Precondition(format!("k = {k:?} outside 1..={kmax}")));
    }
    let (ci, ri) = (c as i64, r as usize);
    let mut cases = Vec::new();
    if k.iter().any(|&x| x <= b) {
        cases.push(KeyCase::C1);
    }
    if pair_case(k, -ci + 1, ci - 2, |i, _| i <= ri) {
        cases.push(KeyCase::C2);
    }
    if pair_case(k, -ci, ci - 1, |i, _| i > ri) {
        cases.push(KeyCase::C3);
    }
    let mut wd = None;
    for w in permutations(s) {
        if let Some(d) = forced_d(k, &w, b, c, r) {
            if check_c4(k, &w, &d, b, c, r, t) {
                wd = Some((w, d));
                break;
            }
        }
    }
    let mut special_index = None;
    if wd.is_some() {
        cases.push(KeyCase::C4);
        if t as usize + ri == s && ri < s {
            special_index = (ri + 1..=s).find(|&i| k[i - 1] == b + 1);
            if special_index.is_none() {
                return Err(Error::Domain(format!("case (4) with t = s - r but no k_i = b + 1 for i > r in {k:?}")));
            }
        }
    }
    let Some(&case) = cases.first() else {
        return Err(Error::Domain(format!("no case of the key lemma holds for k = {k:?}")));
    };
    let (w, d) = wd.map_or((None, None), |(w, d)| (Some(w), Some(d)));
    Ok(KeyWitness { case, all_cases: cases, s, b, c, r, t, k: k.to_vec(), w, d, special_index })
}

/// `T_{s,r} = (s-1)(c-1) + chi(s-1 > r)(s-r-1) + b + 1`.
pub fn t_sr(s: usize, r: u32, b: u32, c: u32) -> u32 {
    let s = s as u32;
    (s - 1) * (c - 1) + chi(s - 1 > r) * (s - 1).saturating_sub(r) + b + 1
}

/// `-((q^{c-b-1} - q^a)/(1-q)) x_0 - sum_i ((1 - q^{c - chi(i <= r)})/(1-q)) x_i`
/// at `a = -T_{s,r} - tt`, `x_i = q^{k_s - k_i}`, `k_0 = 0`, as an alphabet.
pub fn substituted_alphabet(s: usize, b: u32, c: u32, r: u32, tt: u32, k: &[u32]) -> Result<AlphabetExpr> {
    let a = -(t_sr(s, r, b, c) as i64) - tt as i64;
    let ks = k[s - 1] as i64;
    let x = |i: usize| -> AlphabetExpr {
        let ki = if i == 0 { 0 } else { k[i - 1] as i64 };
        AlphabetExpr::letter(Monomial::q_pow(ks - ki))
    };
    let x0 = AlphabetExpr::minus(
        AlphabetExpr::scale(Monomial::q_pow(c as i64 - b as i64 - 1), x(0)),
        AlphabetExpr::scale(Monomial::q_pow(a), x(0)),
    );
    let mut sum = AlphabetExpr::geom_div(x0, Monomial::q_pow(1))?;
    for i in 1..=s {
        let e = c as i64 - chi(i as u32 <= r) as i64;
        sum = AlphabetExpr::plus(sum, AlphabetExpr::q_ratio(e, 1, x(i))?);
    }
    Ok(AlphabetExpr::neg(sum))
}

/// The alphabet of [`substituted_alphabet`] is a sum of exactly `tt` distinct
/// powers of `q`, checked through `p_1, ..., p_{tt+1}`.
pub fn verify_subs_cardinality(s: usize, b: u32, c: u32, r: u32, tt: u32, witness: &KeyWitness) -> Result<bool> {
    if r as usize >= s {
        return Err(Error::Precondition(format!("need r = {r} < s = {s}")));
    }
    let t = chi(s as u32 - 1 > r) * (s as u32 - 1 - r.min(s as u32 - 1)) + 1 + tt;
    if witness.s != s || witness.b != b || witness.c != c || witness.r != r || witness.t != t {
        return Err(Error::Precondition("witness parameters do not match".into()));
    }
    if !witness.c4_holds() {
        return Err(Error::Precondition("witness is not a valid case (4) witness".into()));
    }
    let bound = t_sr(s, r, b, c) + tt;
    if witness.k.iter().any(|&x| x == 0 || x > bound) {
        return Err(Error::Precondition(format!("k = {:?} outside 1..={bound}", witness.k)));
    }
    let alpha = substituted_alphabet(s, b, c, r, tt, &witness.k)?;
    let p1 = power_sum(&alpha, 1)?;
    let Some(exps) = distinct_q_powers(&p1) else { return Ok(false) };
    if exps.len() != tt as usize {
        return Ok(false);
    }
    for rr in 1..=tt + 1 {
        let want = exps.iter().fold(QRat::zero(), |acc, &e| acc + QRat::q_pow(e * rr as i64));
        if power_sum(&alpha, rr)? != LaurentPoly::constant(want) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exponents `n_i` when `p` is a constant `q^{n_1} + ... + q^{n_k}` with
/// distinct `n_i`.
fn distinct_q_powers(p: &LaurentPoly) -> Option<Vec<i64>> {
    if p.nvars() > 0 {
        return None;
    }
    let c = p.constant_term();
    if c.is_zero() {
        return Some(Vec::new());
    }
    let (lo, coeffs) = c.laurent_coeffs()?;
    let mut out = Vec::new();
    for (i, k) in coeffs.iter().enumerate() {
        if *k == 1.into() {
            out.push(lo + i as i64);
        } else if *k != 0.into() {
            return None;
        }
    }
    Some(out)
}

/// Which of the cases (i)-(iv) of the corollary hold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialCaseReport {
    pub cases: Vec<u8>,
    /// For case (iv): an index `i > n - m` with `k_i = b + 1`.
    pub iv_index: Option<usize>,
}

#[allow(clippy::too_many_arguments)]
pub fn classify_specialcase(s: usize, n: usize, n0: usize, b: u32, c: u32, m: usize, r: u32, k: &[u32]) -> Result<SpecialCaseReport> {
    if s == 0 || c == 0 || s > n || k.len() != s {
        return Err(Error::Precondition(format!("need 1 <= s = {s} <= n = {n}, c >= 1 and |k| = s")));
    }
    if !(m == 0 || (n - n0.min(n) <= m && m <= n && n0 <= n)) {
        return Err(Error::Precondition(format!("need m = 0 or n - n0 <= m <= n, got m = {m}")));
    }
    if r as usize > s.min(n0) {
        return Err(Error::Precondition(format!("need r = {r} <= min(s, n0)")));
    }
    let extra = chi(s > n0 + 1) * (s as u32).saturating_sub(n0 as u32 + 1) + chi(s + m > n);
    let kmax = (s as u32 - 1) * (c - 1) + b + extra;
    if k.iter().any(|&x| x == 0 || x > kmax) {
        return Err(Error::Precondition(format!("k = {k:?} outside 1..={kmax}")));
    }
    let (ci, ri) = (c as i64, r as usize);
    let mut cases = Vec::new();
    if k.iter().any(|&x| x <= b) {
        cases.push(1);
    }
    if pair_case(k, -ci + 1, ci - 2, |i, _| i <= ri) {
        cases.push(2);
    }
    if pair_case(k, -ci, ci - 1, |i, _| i > ri) {
        cases.push(3);
    }
    let mut iv_index = None;
    if m > 0 && s + m > n {
        iv_index = (n - m + 1..=s).find(|&i| k[i - 1] == b + 1);
        if iv_index.is_some() {
            cases.push(4);
        }
    }
    Ok(SpecialCaseReport { cases, iv_index })
}

#[allow(clippy::too_many_arguments)]
pub fn verify_specialcase(s: usize, n: usize, n0: usize, b: u32, c: u32, m: usize, r: u32, k: &[u32]) -> Result<bool> {
    let rep = classify_specialcase(s, n, n0, b, c, m, r, k)?;
    Ok(!rep.cases.is_empty() && (m > 0 || !rep.cases.contains(&4)))
}

/// Every `k` in `1..=(s-1)(c-1)+b+t` and every `r <= s` classifies without
/// error, and every case (4) witness re-checks.
pub fn verify_key_grid(s: usize, b: u32, c: u32, t: u32) -> Result<bool> {
    if s == 0 || c == 0 {
        return Err(Error::Precondition("s >= 1, c >= 1".into()));
    }
    let kmax = (s as u32 - 1) * (c - 1) + b + t;
    for r in 0..=s as u32 {
        for k in k_tuples(s, kmax) {
            let wit = classify_key(s, b, c, r, t, &k)?;
            if wit.w.is_some() && !wit.c4_holds() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// [`verify_subs_cardinality`] on every case (4) witness with `r < s` and
/// `k` in `1..=T_{s,r}+tt`.
pub fn verify_subs_grid(s: usize, b: u32, c: u32, tt: u32) -> Result<bool> {
    if s == 0 || c == 0 {
        return Err(Error::Precondition("s >= 1, c >= 1".into()));
    }
    for r in 0..s as u32 {
        let t = chi(s as u32 - 1 > r) * (s as u32 - 1 - r) + 1 + tt;
        for k in k_tuples(s, t_sr(s, r, b, c) + tt) {
            let wit = classify_key(s, b, c, r, t, &k)?;
            if wit.w.is_some() && !verify_subs_cardinality(s, b, c, r, tt, &wit)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The four-case taxonomy for every `n0 <= n`, `m` in `{0} u [n-n0, n]`,
/// `1 <= s <= n`, `r <= min(s, n0)` and every `k` in range; a case (iv)
/// index is always `> n - m` with `k_i = b + 1`.
pub fn verify_specialcase_grid(n: usize, b: u32, c: u32) -> Result<bool> {
    if n == 0 || c == 0 {
        return Err(Error::Precondition("n >= 1, c >= 1".into()));
    }
    for n0 in 0..=n {
        let mut ms = vec![0];
        ms.extend((n - n0..=n).filter(|&m| m > 0));
        for m in ms {
            for s in 1..=n {
                for r in 0..=s.min(n0) as u32 {
                    let extra = chi(s > n0 + 1) * (s as u32).saturating_sub(n0 as u32 + 1) + chi(s + m > n);
                    for k in k_tuples(s, (s as u32 - 1) * (c - 1) + b + extra) {
                        if !verify_specialcase(s, n, n0, b, c, m, r, &k)? {
                            return Ok(false);
                        }
                        let rep = classify_specialcase(s, n, n0, b, c, m, r, &k)?;
                        if let Some(i) = rep.iv_index {
                            if i <= n - m || k[i - 1] != b + 1 {
                                return Ok(false);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

/// All tuples in `1..=max` of length `s`.
pub fn k_tuples(s: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..s {
        out = out
            .into_iter()
            .flat_map(|v| {
                (1..=max).map(move |x| {
                    let mut v = v.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}
