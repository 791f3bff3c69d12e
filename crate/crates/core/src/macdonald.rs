//! Macdonald polynomials `P_lambda(q, t)` by Gram-Schmidt in the m basis,
//! with `Q_lambda`, `b_lambda`, skew functions, Pieri coefficients and the
//! vanishing and degree checks built on them.

use std::any::{Any, TypeId};
use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::laurent::{LaurentPoly, Monomial};
use crate::partitions::{dominance_leq, partitions_of, Partition};
use crate::plethysm::{eval_sym_in, AlphabetExpr};
use crate::qfield::{Field, QRat, QtRat};
use crate::symfunc::{hall_inner, Basis, HallParams, SymFunc};
use crate::{Error, Result};

/// `P_lambda` as a combination of `m_mu`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MacdonaldP<F: Field = QtRat> {
    pub lambda: Partition,
    pub expansion: SymFunc<F>,
}

impl<F: Field> MacdonaldP<F> {
    /// `u_{lambda mu}`.
    pub fn coeff(&self, mu: &Partition) -> F {
        self.expansion.coeff(mu)
    }
}

/// Gram matrix of the m basis and the P expansions for one degree.
struct Degree<F: Field> {
    parts: Vec<Partition>,
    index: HashMap<Partition, usize>,
    p: Vec<Vec<F>>,
    norm: Vec<F>,
}

type DegreeCache = RwLock<HashMap<(TypeId, String, u32), Arc<dyn Any + Send + Sync>>>;

fn cache() -> &'static DegreeCache {
    static C: OnceLock<DegreeCache> = OnceLock::new();
    C.get_or_init(Default::default)
}

/// Drops every cached degree, so the next construction rebuilds from scratch.
pub fn clear_cache() {
    cache().write().unwrap().clear();
}

fn degree<F: Field>(d: u32, params: &HallParams<F>) -> Result<Arc<Degree<F>>> {
    let key = (TypeId::of::<F>(), crate::symfunc::params_key(params), d);
    if let Some(a) = cache().read().unwrap().get(&key) {
        return Ok(a.clone().downcast::<Degree<F>>().expect("cache entry type"));
    }
    let built: Arc<dyn Any + Send + Sync> = Arc::new(build_degree(d, params)?);
    let a = cache().write().unwrap().entry(key).or_insert(built).clone();
    Ok(a.downcast::<Degree<F>>().expect("cache entry type"))
}

fn build_degree<F: Field>(d: u32, params: &HallParams<F>) -> Result<Degree<F>> {
    let parts = partitions_of(d);
    let n = parts.len();
    let index: HashMap<Partition, usize> = parts.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    // <m_i, m_j> = sum_rho A[i][rho] A[j][rho] z_rho w_rho with A the m -> p matrix
    let a: Vec<Vec<F>> = parts
        .iter()
        .map(|mu| {
            let p = SymFunc::<F>::m(mu.clone()).to_p()?;
            Ok(parts.iter().map(|rho| p.get(rho).cloned().unwrap_or_else(F::zero)).collect())
        })
        .collect::<Result<_>>()?;
    let w: Vec<F> = parts
        .iter()
        .map(|rho| {
            let z = F::from_ratio(&BigRational::from_integer(BigInt::from(rho.z())));
            Ok(z * &params.weight_of(rho)?)
        })
        .collect::<Result<_>>()?;
    let mut gram = vec![vec![F::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let mut s = F::zero();
            for k in 0..n {
                if !a[i][k].is_zero() && !a[j][k].is_zero() {
                    s = s + &(a[i][k].clone() * &a[j][k] * &w[k]);
                }
            }
            gram[i][j] = s.clone();
            gram[j][i] = s;
        }
    }
    let gv = |v: &[F]| -> Vec<F> {
        (0..n)
            .map(|i| {
                let mut s = F::zero();
                for (k, x) in v.iter().enumerate() {
                    if !x.is_zero() && !gram[i][k].is_zero() {
                        s = s + &(gram[i][k].clone() * x);
                    }
                }
                s
            })
            .collect()
    };
    let dot = |u: &[F], v: &[F]| -> F {
        let mut s = F::zero();
        for (x, y) in u.iter().zip(v) {
            if !x.is_zero() && !y.is_zero() {
                s = s + &(x.clone() * y);
            }
        }
        s
    };
    let mut p: Vec<Vec<F>> = vec![Vec::new(); n];
    let mut norm = vec![F::zero(); n];
    // partitions_of lists (d) first, so walk backwards from (1^d)
    for i in (0..n).rev() {
        let mut v = vec![F::zero(); n];
        v[i] = F::one();
        for j in i + 1..n {
            if !dominance_leq(&parts[j], &parts[i])? {
                continue;
            }
            let proj = gram[i].iter().zip(&p[j]).fold(F::zero(), |s, (g, x)| {
                if g.is_zero() || x.is_zero() {
                    s
                } else {
                    s + &(g.clone() * x)
                }
            });
            if proj.is_zero() {
                continue;
            }
            let c = proj.try_div(&norm[j])?;
            for k in 0..n {
                if !p[j][k].is_zero() {
                    v[k] = v[k].clone() - c.clone() * &p[j][k];
                }
            }
        }
        let g = gv(&v);
        let nv = dot(&v, &g);
        if nv.is_zero() {
            return Err(Error::Pole(format!("<P, P> vanishes for {}", parts[i])));
        }
        norm[i] = nv;
        p[i] = v;
    }
    Ok(Degree { parts, index, p, norm })
}

fn p_from_row<F: Field>(deg: &Degree<F>, i: usize) -> SymFunc<F> {
    SymFunc::from_terms(Basis::M, None, deg.parts.iter().cloned().zip(deg.p[i].iter().cloned()))
}

pub fn macdonald_p<F: Field>(lambda: &Partition, params: &HallParams<F>) -> Result<MacdonaldP<F>> {
    let deg = degree(lambda.size(), params)?;
    let i = deg.index[lambda];
    Ok(MacdonaldP { lambda: lambda.clone(), expansion: p_from_row(&deg, i) })
}

/// `1 / <P_lambda, P_lambda>`.
pub fn b_lambda<F: Field>(lambda: &Partition, params: &HallParams<F>) -> Result<F> {
    let deg = degree(lambda.size(), params)?;
    deg.norm[deg.index[lambda]].inv()
}

/// `Q_lambda = b_lambda P_lambda`, in the m basis.
pub fn macdonald_q<F: Field>(lambda: &Partition, params: &HallParams<F>) -> Result<SymFunc<F>> {
    Ok(macdonald_p(lambda, params)?.expansion.scale(&b_lambda(lambda, params)?))
}

/// Coefficients of `P_{lambda/mu}` on `P_nu`: `<P_lambda, Q_mu Q_nu>`.
pub fn skew_p_coeffs<F: Field>(lambda: &Partition, mu: &Partition, params: &HallParams<F>) -> Result<Vec<(Partition, F)>> {
    if !lambda.contains(mu) {
        return Ok(Vec::new());
    }
    let pl = macdonald_p(lambda, params)?.expansion;
    let qm = macdonald_q(mu, params)?;
    let mut out = Vec::new();
    for nu in partitions_of(lambda.size() - mu.size()) {
        let prod = qm.mul(&macdonald_q(&nu, params)?)?;
        let c = hall_inner(&pl, &prod, params)?;
        if !c.is_zero() {
            out.push((nu, c));
        }
    }
    Ok(out)
}

/// `P_{lambda/mu}` in the m basis; zero unless `mu` is inside `lambda`.
pub fn skew_p<F: Field>(lambda: &Partition, mu: &Partition, params: &HallParams<F>) -> Result<SymFunc<F>> {
    let mut out = SymFunc::zero(Basis::M);
    for (nu, c) in skew_p_coeffs(lambda, mu, params)? {
        out = out.add(&macdonald_p(&nu, params)?.expansion.scale(&c))?;
    }
    Ok(out)
}

/// `Q_{lambda/mu} = sum_nu <Q_lambda, P_mu P_nu> Q_nu`, in the m basis.
pub fn skew_q<F: Field>(lambda: &Partition, mu: &Partition, params: &HallParams<F>) -> Result<SymFunc<F>> {
    let mut out = SymFunc::zero(Basis::M);
    if !lambda.contains(mu) {
        return Ok(out);
    }
    let ql = macdonald_q(lambda, params)?;
    let pm = macdonald_p(mu, params)?.expansion;
    for nu in partitions_of(lambda.size() - mu.size()) {
        let prod = pm.mul(&macdonald_p(&nu, params)?.expansion)?;
        let c = hall_inner(&ql, &prod, params)?;
        if !c.is_zero() {
            out = out.add(&macdonald_q(&nu, params)?.scale(&c))?;
        }
    }
    Ok(out)
}

/// Writes `f` (any basis, degree `d`) as `sum_lambda c_lambda P_lambda` by
/// peeling leading m-terms from the top of dominance order.
pub fn expand_in_p<F: Field>(f: &SymFunc<F>, params: &HallParams<F>) -> Result<Vec<(Partition, F)>> {
    let mut rest = f.with_params_default(params).convert(Basis::M)?;
    let mut out = Vec::new();
    for d in rest.degrees().into_iter().rev() {
        let deg = degree(d, params)?;
        for (i, lam) in deg.parts.iter().enumerate() {
            let c = rest.coeff(lam);
            if c.is_zero() {
                continue;
            }
            rest = rest.sub(&p_from_row(&deg, i).scale(&c))?;
            out.push((lam.clone(), c));
        }
    }
    if !rest.is_zero() {
        return Err(Error::Domain("remainder after P expansion is not zero".into()));
    }
    Ok(out)
}

/// `P_mu g_r = sum_lambda phi_{lambda/mu} P_lambda`, found by a triangular
/// solve in the m basis.
pub fn pieri_expand<F: Field>(mu: &Partition, r: u32, params: &HallParams<F>) -> Result<Vec<(Partition, F)>> {
    if r == 0 {
        return Err(Error::Domain("Pieri expansion needs r >= 1".into()));
    }
    let g = SymFunc::g(Partition::row(r), params.clone());
    let prod = macdonald_p(mu, params)?.expansion.mul(&g)?;
    expand_in_p(&prod, params)
}

/// `P_lambda[X]` with `t = q^c`. The generic `P_lambda(q, t)` is specialized
/// coefficientwise, and letters `t` in `X` read as `q^c`.
pub fn mac_eval(lambda: &Partition, x: &AlphabetExpr, c: i64) -> Result<LaurentPoly> {
    if c < 1 {
        return Err(Error::Precondition(format!("t = q^c needs c >= 1, got {c}")));
    }
    let t = QRat::q_pow(c);
    let p = macdonald_p(lambda, &HallParams::<QtRat>::generic())?;
    let mut special = SymFunc::zero(Basis::M);
    for (mu, k) in p.expansion.terms() {
        special.add_term(mu.clone(), k.specialize(&t)?);
    }
    eval_sym_in(&special, x, &t)
}

/// `((1 - q)/(t - 1)) X`.
pub fn omega_alphabet(x: AlphabetExpr) -> AlphabetExpr {
    let top = AlphabetExpr::minus(x.clone(), AlphabetExpr::scale(Monomial::q_pow(1), x));
    AlphabetExpr::neg(AlphabetExpr::geom_div(top, Monomial::t_pow(1)).expect("t is a valid divisor"))
}

/// `P_{lambda/mu}[((1-q)/(t-1))(m_1+...+m_l); q, t]` against
/// `(-1)^{|lambda|-|mu|} Q_{lambda'/mu'}[m_1+...+m_l; t, q]` with generic
/// letters `m_i = x_i`.
pub fn verify_duality(lambda: &Partition, mu: &Partition, l: usize) -> Result<bool> {
    if !lambda.contains(mu) {
        return Err(Error::Precondition(format!("{mu} is not contained in {lambda}")));
    }
    let params = HallParams::<QtRat>::generic();
    let t = QtRat::t();
    let letters = AlphabetExpr::vars(1..=l);
    let lhs = eval_sym_in(&skew_p(lambda, mu, &params)?, &omega_alphabet(letters.clone()), &t)?;
    let rhs = eval_sym_in(&skew_q(&lambda.conjugate(), &mu.conjugate(), &params.swap())?, &letters, &t)?;
    let rhs = if (lambda.size() - mu.size()) % 2 == 1 { -rhs } else { rhs };
    Ok(lhs == rhs)
}

/// Instances of the vanishing and degree statements for `P_lambda`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MacVanishing {
    /// `P_lambda[((1-q)/(t-1))(m_1+...+m_{lambda_i-1}) + n_1+...+n_{i-1}] = 0`
    /// with generic letters; `i` is 1-based.
    Letters { lambda: Partition, i: usize },
    /// `P_{lambda/mu}` has no `P_nu` with `nu_1 < lambda_{l(mu)+1}`.
    SkewSupport { lambda: Partition, mu: Partition },
    /// Degree in `x_{u_s}` of `P_lambda(x_1..x_n)` after `x_{u_j} = q^j x_{u_s}`
    /// is at most `lambda_1 + ... + lambda_s`; `u` is 1-based and increasing.
    DegreeBound { lambda: Partition, u: Vec<usize>, n: usize },
}

pub fn verify_mac_vanishing(case: &MacVanishing) -> Result<bool> {
    let params = HallParams::<QtRat>::generic();
    match case {
        MacVanishing::Letters { lambda, i } => {
            if *i == 0 || *i > lambda.len() {
                return Err(Error::Precondition(format!("part index {i} out of range for {lambda}")));
            }
            let li = lambda.part(*i) as usize;
            let ms = AlphabetExpr::vars(1..li);
            let ns = AlphabetExpr::vars(li..li + i - 1);
            let x = AlphabetExpr::plus(omega_alphabet(ms), ns);
            let p = macdonald_p(lambda, &params)?;
            Ok(eval_sym_in(&p.expansion, &x, &QtRat::t())?.is_zero())
        }
        MacVanishing::SkewSupport { lambda, mu } => {
            if !lambda.contains(mu) || mu.len() >= lambda.len() {
                return Err(Error::Precondition(format!("need {mu} inside {lambda} with fewer parts")));
            }
            let bound = lambda.part(mu.len() + 1);
            Ok(skew_p_coeffs(lambda, mu, &params)?.iter().all(|(nu, _)| nu.part(1) >= bound))
        }
        MacVanishing::DegreeBound { lambda, u, n } => {
            if u.is_empty() || u.windows(2).any(|w| w[0] >= w[1]) || u[0] == 0 || *u.last().unwrap() > *n {
                return Err(Error::Precondition(format!("u = {u:?} must increase within 1..={n}")));
            }
            let s = u.len();
            let top = u[s - 1];
            let mut f = macdonald_p(lambda, &params)?.expansion.expand_in_vars(*n)?;
            for (j, &uj) in u[..s - 1].iter().enumerate() {
                f = f.substitute(uj, j as i64 + 1, Some(top));
            }
            let bound: u32 = (1..=s).map(|k| lambda.part(k)).sum();
            Ok(f.degree_range(top).is_none_or(|(_, hi)| hi as i64 <= bound as i64))
        }
    }
}

/// `P_lambda` lies in the span of `g_mu` with `mu >= lambda`.
pub fn verify_lassalle<F: Field>(lambda: &Partition, params: &HallParams<F>) -> Result<bool> {
    let g = macdonald_p(lambda, params)?.expansion.with_params(params.clone()).convert(Basis::G)?;
    for (mu, _) in g.terms() {
        if !dominance_leq(lambda, mu)? {
            return Ok(false);
        }
    }
    Ok(true)
}

impl<F: Field> SymFunc<F> {
    fn with_params_default(&self, params: &HallParams<F>) -> Self {
        match self.params() {
            Some(_) => self.clone(),
            None => self.clone().with_params(params.clone()),
        }
    }
}
