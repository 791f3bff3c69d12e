use super::*;
use crate::laurent::{build_f, ratio};
use crate::partitions::part;

fn q(e: i64) -> QRat {
    QRat::q_pow(e)
}

fn one_minus(e: i64) -> QRat {
    QRat::one() - q(e)
}

/// `(q^e; q)_k` by the defining product, `k >= 0`.
fn poch(e: i64, k: i64) -> QRat {
    (0..k).fold(QRat::one(), |acc, i| acc * &one_minus(e + i))
}

/// Full expansion over `x0..xn`, then the constant term.
fn brute_ct(p: &LaurentPoly) -> QRat {
    let vars: Vec<usize> = (0..=p.nvars()).collect();
    p.ct(&vars).constant_term()
}

#[test]
fn qmorris_small_points() {
    // (1 - x0/x1)(1 - q x1/x0) = 1 + q - x0/x1 - q x1/x0
    assert_eq!(lhs_qmorris(1, 1, 1, 0).unwrap(), QRat::one() + q(1));
    assert_eq!(rhs_qmorris(1, 1, 1, 0).unwrap(), QRat::one() + q(1));
    // (1 - x1/x2)(1 - q x2/x1)
    assert_eq!(lhs_qmorris(2, 0, 0, 1).unwrap(), QRat::one() + q(1));
    assert_eq!(rhs_qmorris(2, 0, 0, 1).unwrap(), QRat::one() + q(1));
    assert_eq!(lhs_qmorris(3, 0, 0, 0).unwrap(), QRat::one());
    assert_eq!(rhs_qmorris(3, 0, 0, 0).unwrap(), QRat::one());
}

#[test]
fn qmorris_matches_full_expansion() {
    for (n, a, b, c) in [(2, 1, 1, 1), (2, 2, 0, 2), (3, 1, 1, 1)] {
        let oracle = brute_ct(&build_f(n, 0, a, b, c, 0).unwrap());
        assert_eq!(lhs_qmorris(n, a, b, c).unwrap(), oracle);
        assert!(verify(&IdentityParams::qmorris(n, a as i64, b, c)).unwrap().equal);
    }
}

#[test]
fn b_reduces_to_baker_forrester() {
    for (n, n0, a, b, c) in [(2, 0, 1, 1, 2), (2, 1, 2, 0, 1), (3, 1, 1, 1, 2), (3, 2, 0, 1, 2)] {
        let oracle = brute_ct(&build_f(n, n0, a, b, c, 0).unwrap());
        assert_eq!(lhs_b(n, n0, a, b, c, 0, &Partition::empty()).unwrap(), oracle);
        let (ni, n0i, ai, bi, ci) = (n as i64, n0 as i64, a as i64, b as i64, c as i64);
        let mut bf = QRat::one();
        for i in 1..ni - n0i {
            bf = bf * &one_minus((i + 1) * ci);
        }
        for i in 0..ni {
            let s = i * ci - n0i - if i <= n0i { i - n0i } else { 0 };
            let cc = ci - (i <= n0i) as i64;
            let num = poch(ai + s + 1, bi) * &poch(1, s + ci - 1);
            let den = poch(1, bi + s) * &poch(1, cc);
            bf = bf * &num.try_div(&den).unwrap();
        }
        assert_eq!(rhs_b(n, n0, ai, b, c, 0, &Partition::empty()).unwrap(), bf);
        assert_eq!(bf, oracle);
    }
}

#[test]
fn b_one_variable_is_q_binomial() {
    let v = lhs_b(1, 0, 1, 1, 1, 0, &Partition::empty()).unwrap();
    assert_eq!(v, QRat::one() + q(1));
    assert_eq!(rhs_b(1, 0, 1, 1, 1, 0, &Partition::empty()).unwrap(), v);
}

#[test]
fn b_with_h1_against_direct_product() {
    // h_1[W] = p_1[W] = sum_i [c - chi(i <= n0)]_q x_i, built without plethysm
    let (n, n0, a, b, c) = (2, 1, 1, 0, 2);
    let mut h1 = LaurentPoly::zero();
    for i in 1..=n {
        let k = c as i64 - (i <= n0) as i64;
        let w = one_minus(k).try_div(&one_minus(1)).unwrap();
        h1 = h1 + LaurentPoly::monomial(&ratio(i, 0), w);
    }
    let oracle = brute_ct(&(build_f(n, n0, a, b, c, 0).unwrap() * h1));
    assert_eq!(lhs_b(n, n0, a, b, c, 1, &Partition::empty()).unwrap(), oracle);
    assert_eq!(rhs_b(n, n0, a as i64, b, c, 1, &Partition::empty()).unwrap(), oracle);
}

#[test]
fn b_with_mu_one_against_direct_product() {
    // P_(1)[X] = p_1[X]; the x0 weight is (q^{c-b-1} - q^a)/(1 - q^c)
    let (n, n0, a, b, c) = (2, 0, 1, 0, 2);
    let mut g = LaurentPoly::constant((q(c - b - 1) - q(a)).try_div(&one_minus(c)).unwrap());
    for i in 1..=n {
        let k = c - (i <= n0) as i64;
        g = g + LaurentPoly::monomial(&ratio(i, 0), one_minus(k).try_div(&one_minus(c)).unwrap());
    }
    let oracle = brute_ct(&(build_f(n, n0, a as u32, b as u32, c as u32, 0).unwrap() * g));
    let mu = part(&[1]);
    assert_eq!(lhs_b(n, n0, a as u32, b as u32, c as u32, 0, &mu).unwrap(), oracle);
    assert_eq!(rhs_b(n, n0, a, b as u32, c as u32, 0, &mu).unwrap(), oracle);
}

#[test]
fn c_small_point_against_full_expansion() {
    let oracle = brute_ct(&build_f(2, 0, 0, 0, 1, 2).unwrap());
    assert_eq!(lhs_c(2, 0, 0, 0, 1, 0, 2).unwrap(), oracle);
    assert_eq!(rhs_c(2, 0, 0, 0, 1, 0, 2).unwrap(), oracle);
}

#[test]
fn c_with_full_m_is_b_with_b_plus_one() {
    for (n, n0, a, b, c, l) in [(2, 0, 1, 0, 2, 1), (2, 1, 0, 1, 3, 2), (3, 1, 1, 0, 2, 1)] {
        let cv = lhs_c(n, n0, a, b, c, l, n).unwrap();
        assert_eq!(cv, lhs_b(n, n0, a, b + 1, c, l, &Partition::empty()).unwrap());
        let cr = rhs_c(n, n0, a as i64, b, c, l, n).unwrap();
        assert_eq!(cr, rhs_b(n, n0, a as i64, b + 1, c, l, &Partition::empty()).unwrap());
        assert_eq!(cv, cr);
    }
}

#[test]
fn c_l_zero_matches_full_expansion() {
    for (n, n0, a, b, c, m) in [(2, 1, 1, 1, 2, 1), (3, 1, 1, 0, 2, 2), (3, 0, 1, 1, 2, 3)] {
        let oracle = brute_ct(&build_f(n, n0, a, b, c, m).unwrap());
        assert_eq!(lhs_c(n, n0, a, b, c, 0, m).unwrap(), oracle);
        assert_eq!(rhs_c(n, n0, a as i64, b, c, 0, m).unwrap(), oracle);
    }
}

#[test]
fn a_small_points() {
    // n = 1, lambda = (1): CT (x1/x0)(1 - x0/x1)(1 - q x1/x0) = -1
    let lam = part(&[1]);
    assert_eq!(lhs_a(1, 1, 1, 1, &lam, &Partition::empty()).unwrap(), QRat::from_i64(-1));
    assert_eq!(rhs_a(1, 1, 1, 1, &lam, &Partition::empty()).unwrap(), QRat::from_i64(-1));
    // empty partitions give q-Morris
    let e = Partition::empty();
    assert_eq!(lhs_a(2, 1, 2, 1, &e, &e).unwrap(), rhs_qmorris(2, 1, 2, 1).unwrap());
    assert_eq!(rhs_a(2, 1, 2, 1, &e, &e).unwrap(), rhs_qmorris(2, 1, 2, 1).unwrap());
    // l(lambda) > n
    let l2 = part(&[1, 1]);
    assert!(lhs_a(1, 1, 0, 1, &l2, &lam).unwrap().is_zero());
    assert!(rhs_a(1, 1, 0, 1, &l2, &lam).unwrap().is_zero());
}

#[test]
fn domain_violations_are_errors() {
    assert!(lhs_b(2, 1, 0, 0, 1, 0, &part(&[1])).is_err());
    assert!(lhs_b(2, 2, 0, 0, 1, 0, &Partition::empty()).is_err());
    assert!(rhs_c(3, 0, 0, 0, 1, 0, 2).is_err());
    let p = IdentityParams::thm12(3, 1, 0, 0, 2, 0, 1);
    assert_eq!(p.violated_constraint(), Some("m >= n - n0"));
    assert!(verify(&p).is_err());
}

#[test]
fn vanishing_examples() {
    for c in 1..=3 {
        assert!(verify_vanishing(&VanishingCase::Ex38 { c }).unwrap());
    }
    let lem36 = VanishingCase::Lem36 { n: 2, n0: 0, c: 1, v: vec![1, 1], lambda: part(&[2]) };
    assert!(verify_vanishing(&lem36).unwrap());
    let bad = VanishingCase::Lem36 { n: 2, n0: 0, c: 1, v: vec![2, 0], lambda: part(&[2]) };
    assert!(matches!(verify_vanishing(&bad), Err(Error::Precondition(_))));
    let lem37 = VanishingCase::Lem37 { n: 2, n0: 1, c: 2, l: 2, m: 1 };
    assert!(verify_vanishing(&lem37).unwrap());
    let lem310 = VanishingCase::Lem310 { n: 5, n0: 3, c: 2, h: 2, t: vec![0, 0, 0, 1, 0] };
    assert!(verify_vanishing(&lem310).unwrap());
}

#[test]
fn vanishing_needs_its_hypothesis() {
    // with lambda_1 = max v the same constant term is nonzero
    let w = weighted_vars(2, 0, 1, 1).unwrap();
    let g = h_row(2, &w).unwrap().mul_monomial(&[0, -2, 0], &QRat::one());
    let v = f_factors(2, 0, 0, 0, 1, 0).ct_with(&g, None).unwrap();
    assert!(!v.is_zero());
}

#[test]
fn interpolation_recovers_a_polynomial() {
    // P(y) = (1 - y)(2 - q y)
    let f = |y: &QRat| (QRat::one() - y) * &(QRat::from_i64(2) - q(1) * y);
    let vals: Vec<QRat> = (0..3).map(|k| f(&q(k))).collect();
    let p = QaPoly::new(vals).unwrap();
    assert_eq!(p.at(-4).unwrap(), f(&q(-4)));
    assert_eq!(p.at(7).unwrap(), f(&q(7)));
    assert!(p.at(0).unwrap().is_zero());
}

#[test]
fn polynomiality_examples() {
    let p = IdentityParams::thm11(1, 0, 0, 1, 1, 0, Partition::empty());
    assert!(verify_polynomiality(Which::B, &p, 2).unwrap());
    assert_eq!(extension(Which::B, &p).unwrap().degree_bound(), 1);
    let p = IdentityParams::thm12(2, 0, 0, 0, 2, 1, 1);
    assert!(verify_polynomiality(Which::C, &p, 2).unwrap());
    assert_eq!(extension(Which::C, &p).unwrap().degree_bound(), 2);
}

#[test]
fn roots_examples() {
    let p = IdentityParams::thm11(2, 0, 0, 1, 3, 1, part(&[1]));
    let roots = root_set(Which::B, &p).unwrap();
    assert!(roots.contains(&0));
    assert!(verify_roots(Which::B, &p).unwrap());
    // a = l is not a root
    let ext = extension(Which::B, &p).unwrap();
    assert!(!ext.at(p.l as i64).unwrap().is_zero());
    let pc = IdentityParams::thm12(2, 1, 0, 0, 2, 1, 1);
    assert!(verify_roots(Which::C, &pc).unwrap());
    assert!(root_set(Which::C, &IdentityParams::thm12(2, 1, 0, 1, 2, 1, 1)).is_err());
}

#[test]
fn special_point_examples() {
    let p = IdentityParams::thm11(2, 0, 0, 0, 2, 0, Partition::empty());
    let sp = special_point(Which::B, &p).unwrap();
    assert_eq!(sp.a, -1);
    assert!(sp.holds(), "{sp:?}");
    let pc = IdentityParams::thm12(2, 1, 0, 0, 3, 0, 1);
    let sp = special_point(Which::C, &pc).unwrap();
    assert!(sp.holds(), "{sp:?}");
}

#[test]
fn sub_b_route_uses_c_minus_one() {
    // n - m - 1 = 1, so the two readings of the special point differ
    let p = IdentityParams::thm12(3, 2, 0, 0, 3, 1, 1);
    let sp = special_point(Which::C, &p).unwrap();
    assert_eq!(sp.a, -(p.c as i64 - 1) - 1);
    assert!(sp.holds(), "{sp:?}");
    let other = extension(Which::C, &p).unwrap().at(-(p.c as i64) - 1).unwrap();
    assert_ne!(other, sp.alternate);
}

#[test]
fn b_special_point_needs_g_normalization() {
    // without (q^c)_l/(q)_l the A-side is off by exactly that factor
    for (n0, c, l) in [(0, 2, 1), (0, 3, 1), (1, 2, 1), (0, 2, 2)] {
        let p = IdentityParams::thm11(2, n0, 0, 0, c, l, Partition::empty());
        let sp = special_point(Which::B, &p).unwrap();
        assert!(sp.holds(), "{sp:?}");
        let (an, aa, ab) = (1 - n0, c - 1, (n0 as u32 + 1) * (c - 1) + 1);
        let bare = extr2_prefactor(2, n0, 0, c).unwrap() * &rhs_a(an, aa as i64, ab, c, &p.mu, &Partition::row(l)).unwrap();
        assert_eq!(sp.interpolated, bare * &poch(c as i64, l as i64).try_div(&poch(1, l as i64)).unwrap());
    }
}

#[test]
fn verdict_serde_round_trip() {
    let r = verify(&IdentityParams::thm11(2, 0, 1, 0, 2, 1, part(&[1]))).unwrap();
    assert!(r.equal);
    let s = serde_json::to_string(&r).unwrap();
    let back: VerdictRecord = serde_json::from_str(&s).unwrap();
    assert_eq!(back.params, r.params);
    assert_eq!(back.lhs, r.lhs);
    let p: IdentityParams = serde_json::from_str(r#"{"name":"thm12","n":2,"n0":1,"m":1,"c":2}"#).unwrap();
    assert_eq!(p, IdentityParams::thm12(2, 1, 0, 0, 2, 0, 1));
}
