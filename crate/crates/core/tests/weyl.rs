use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use twistgt_core::jobs::{JobConfig, Setup};
use twistgt_core::linalg::Matrix;
use twistgt_core::rat::{self, Rat};
use twistgt_core::rootsys::Series;
use twistgt_core::weyl::fock::random_localized;
use twistgt_core::weyl::realize::DEFAULT_GUARD;
use twistgt_core::weyl::series::coefficients;
use twistgt_core::weyl::{
    realize_and_compare, series_apply, FockMode, FockVector, FreeField, SeriesKind, WeylOperator,
};
use twistgt_core::Error;

fn setup(series: Series, rank: usize, sigma: Vec<usize>, lambda: Vec<Rat>, alpha: &str) -> Setup {
    Setup::new(&JobConfig {
        series,
        rank,
        sigma,
        lambda,
        alpha: alpha.into(),
        ..JobConfig::default()
    })
    .unwrap()
}

fn free_field(s: &Setup) -> FreeField {
    FreeField::for_lambda(s.cb.clone(), &s.p, &s.lambda).unwrap()
}

/// Coefficients of x/(eˣ−1) by inverting Σ xᵏ/(k+1)!.
fn todd_oracle(n: usize) -> Vec<Rat> {
    let d: Vec<Rat> = (0..=n).map(|k| rat::int(1) / rat::factorial(k as u64 + 1)).collect();
    let mut c: Vec<Rat> = Vec::new();
    for k in 0..=n {
        let mut s = if k == 0 { rat::int(1) } else { rat::int(0) };
        for j in 0..k {
            s -= &c[j] * &d[k - j];
        }
        c.push(s);
    }
    c
}

#[test]
fn todd_coefficients() {
    assert_eq!(coefficients(SeriesKind::Todd, 10), todd_oracle(10));
    assert_eq!(coefficients(SeriesKind::Todd, 2)[1], rat::frac(-1, 2));
    assert_eq!(coefficients(SeriesKind::ToddMinusOne, 3)[0], rat::int(0));
}

#[test]
fn series_of_small_matrices() {
    let z = Matrix::zeros(3, 3);
    let id = Matrix::identity(3);
    assert_eq!(series_apply(SeriesKind::Todd, &z).unwrap(), id);
    assert_eq!(series_apply(SeriesKind::ToddShifted, &z).unwrap(), id);
    assert_eq!(series_apply(SeriesKind::ToddMinusOne, &z).unwrap(), z);
    let m = Matrix::from_i64(&[vec![0, 4, 0], vec![0, 0, 0], vec![0, 0, 0]]);
    let want = id.sub(&m.scale(&rat::frac(1, 2)));
    assert_eq!(series_apply(SeriesKind::Todd, &m).unwrap(), want);
    let bad = Matrix::from_i64(&[vec![1, 0], vec![0, 0]]);
    assert!(matches!(series_apply(SeriesKind::Todd, &bad), Err(Error::NotNilpotent(_))));
}

#[test]
fn sl2_operators() {
    let c = rat::frac(2, 3);
    let s = setup(Series::A, 1, vec![], vec![c.clone()], "highest");
    let ff = free_field(&s);
    let x = WeylOperator::x(1, 0);
    let d = WeylOperator::d(1, 0);
    let one = WeylOperator::one(1);
    // F_{λ+ρ_u} has h-eigenvalue c + 1
    let k = &c + rat::int(1);
    let pi = |id| ff.pi(id).scalar_part().unwrap();
    assert_eq!(pi(s.cb.f(0)), d.scale(&rat::int(-1)));
    assert_eq!(pi(s.cb.h(0)), x.mul(&d).scale(&rat::int(2)).add(&one.scale(&k)));
    assert_eq!(pi(s.cb.e(0)), x.mul(&x).mul(&d).add(&x.scale(&k)));
}

#[test]
fn q_operators_a2() {
    let s = setup(Series::A, 2, vec![], vec![rat::frac(1, 5), rat::frac(-2, 3)], "highest");
    let ff = free_field(&s);
    let rs = &s.cb.rs;
    let v = |r: &[i64]| ff.var(rs.index_of(r).unwrap()).unwrap();
    let (a1, a2, th) = (v(&[1, 0]), v(&[0, 1]), v(&[1, 1]));
    assert!(ff.q_op(th).is_zero());
    let xd = WeylOperator::x(3, a2).mul(&WeylOperator::d(3, th));
    assert_eq!(ff.q_op(a1), &xd.scale(&rat::frac(1, 2)));
    let xd = WeylOperator::x(3, a1).mul(&WeylOperator::d(3, th));
    assert_eq!(ff.q_op(a2), &xd.scale(&rat::frac(-1, 2)));
    for k in [a1, a2, th] {
        let want = WeylOperator::d(3, k).scale(&rat::int(-1)).add(ff.q_op(k));
        assert_eq!(ff.p_op(k), &want);
        assert_eq!(&ff.p_op_left(k), ff.p_op(k));
    }
}

#[test]
fn abelian_nilradical_has_no_q() {
    let s = setup(Series::A, 2, vec![1], vec![rat::int(1), rat::frac(1, 2)], "highest");
    let ff = free_field(&s);
    for k in 0..ff.nvars() {
        assert!(ff.q_op(k).is_zero());
        assert_eq!(ff.p_op(k), &WeylOperator::d(2, k).scale(&rat::int(-1)));
    }
}

#[test]
fn p_alpha_degree() {
    for (series, rank) in [(Series::A, 3), (Series::C, 2)] {
        let lambda = vec![rat::frac(1, 3); rank];
        let s = setup(series, rank, vec![], lambda, "highest");
        let ff = free_field(&s);
        let roots: Vec<Vec<i64>> = s.p.delta_u_plus.iter().map(|&g| s.cb.rs.root(g).clone()).collect();
        for (k, r) in roots.iter().enumerate() {
            let neg: Vec<i64> = r.iter().map(|x| -x).collect();
            assert_eq!(ff.p_op(k).degree(&roots), Some(neg));
        }
        assert!(ff.degree_defects().is_empty());
    }
}

#[test]
fn homomorphism_in_other_types() {
    for (series, rank, sigma) in [(Series::B, 2, vec![]), (Series::G, 2, vec![]), (Series::B, 3, vec![2, 3])] {
        let lambda: Vec<Rat> = (1..=rank)
            .map(|i| if sigma.contains(&i) { rat::int(1) } else { rat::frac(2, 7) })
            .collect();
        let s = setup(series, rank, sigma, lambda, "highest");
        assert!(free_field(&s).homomorphism_defects().is_empty(), "{series}{rank}");
    }
}

#[test]
fn phi_identities() {
    let s = setup(Series::A, 2, vec![], vec![rat::frac(1, 3), rat::frac(2, 7)], "simple:1");
    let ff = free_field(&s);
    let k = ff.var(s.alpha).unwrap();
    let one = FockVector::vacuum(FockMode::Verma, 3, 0);
    let p = ff.p_op(k);
    assert_eq!(ff.phi(k, &one, DEFAULT_GUARD).unwrap().apply(p), one);
    let d = one.shift(k, 1);
    assert_eq!(ff.phi(k, &d.apply(p), DEFAULT_GUARD).unwrap(), d);

    // with q_θ = 0 the series stops at once
    let s = setup(Series::A, 2, vec![], vec![rat::frac(1, 3), rat::frac(2, 7)], "highest");
    let ff = free_field(&s);
    let k = ff.var(s.alpha).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for a in random_localized(3, k, 1, 20, &mut rng) {
        let want = a.shift(k, -1).scale(&rat::int(-1));
        assert_eq!(ff.phi(k, &a, DEFAULT_GUARD).unwrap(), want);
    }
}

#[test]
fn phi_inverse_on_random_vectors() {
    let s = setup(Series::A, 3, vec![], vec![rat::frac(1, 3); 3], "simple:2");
    let ff = free_field(&s);
    let k = ff.var(s.alpha).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let vecs = random_localized(ff.nvars(), k, 1, 40, &mut rng);
    assert_eq!(ff.phi_inverse_defects(k, &vecs, DEFAULT_GUARD).unwrap(), 0);
}

#[test]
fn ses_intertwines_operators() {
    let s = setup(Series::A, 2, vec![], vec![rat::frac(1, 3), rat::frac(2, 7)], "simple:1");
    let ff = free_field(&s);
    let k = ff.var(s.alpha).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for a in random_localized(3, k, 1, 20, &mut rng) {
        for id in 0..s.cb.dim() {
            let op = ff.pi(id);
            assert_eq!(a.apply(op).ses(k), a.ses(k).apply(op));
        }
    }
}

#[test]
fn realizations_agree() {
    let s = setup(Series::A, 1, vec![], vec![rat::frac(-7, 4)], "highest");
    let r = realize_and_compare(&s.twisted().unwrap(), 6, DEFAULT_GUARD).unwrap();
    assert!(r.agree);
    // in rank one every image is a single monomial
    assert_eq!(r.twisted.monomial_images, r.twisted.tensors);
    let s = setup(Series::A, 2, vec![1], vec![rat::int(1), rat::frac(1, 3)], "simple:2");
    let r = realize_and_compare(&s.twisted().unwrap(), 3, DEFAULT_GUARD).unwrap();
    assert!(r.agree && r.twisted.checks > 0);
}
