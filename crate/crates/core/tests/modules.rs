use std::collections::BTreeMap;
use std::sync::Arc;

use twistgt_core::jobs::{JobConfig, Setup};
use twistgt_core::lattice::{Lattice, Verdict};
use twistgt_core::modules::analysis::{check_cyclicity, h0_kernel, weight_defects};
use twistgt_core::modules::{GModule, ModuleVector};
use twistgt_core::rat::{self, Rat};
use twistgt_core::rootsys::{ChevalleyBasis, ParabolicData, Series, Weight};
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

fn a2(alpha: &str) -> Setup {
    setup(Series::A, 2, vec![], vec![rat::frac(1, 3), rat::frac(2, 7)], alpha)
}

/// Odometer over [0,top]^n.
fn boxed(n: usize, top: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=top).map(move |x| {
                    let mut v = v.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

#[test]
fn verma_sl2_action() {
    let c = rat::frac(-3, 5);
    let s = setup(Series::A, 1, vec![], vec![c.clone()], "highest");
    let m = s.verma().unwrap();
    let cb = &s.cb;
    for n in 0..8i64 {
        let v = ModuleVector::basis(m.mode(), vec![n], 0);
        let e = m.act(cb.e(0), &v);
        if n == 0 {
            assert!(e.is_zero());
        } else {
            let want = ModuleVector::basis(m.mode(), vec![n - 1], 0)
                .scale(&(rat::int(n) * (&c - rat::int(n - 1))));
            assert_eq!(e, want);
        }
        let h = m.act(cb.h(0), &v);
        assert_eq!(h, v.scale(&(&c - rat::int(2 * n))));
    }
}

#[test]
fn verma_a2_kostant_partition() {
    // P(mα₁ + nα₂) = min(m, n) + 1 for A2
    let s = a2("highest");
    let m = s.verma().unwrap();
    for i in 0..5i64 {
        for j in 0..5i64 {
            let mu = s.lambda.add_root(&[i, j], -1);
            assert_eq!(m.weight_space(&mu).len() as i64, i.min(j) + 1, "{i} {j}");
        }
    }
}

#[test]
fn inducing_dimension_matches_weyl_formula() {
    for a in 0..3i64 {
        for b in 0..3i64 {
            let s = setup(
                Series::A,
                3,
                vec![1, 2],
                vec![rat::int(a), rat::int(b), rat::frac(1, 2)],
                "highest",
            );
            let w = s.twisted().unwrap();
            assert_eq!(w.fl.dim() as i64, (a + 1) * (b + 1) * (a + b + 2) / 2);
            assert_eq!(w.fl.bracket_defects(&s.cb), 0);
        }
    }
}

#[test]
fn twisted_weights_follow_formula() {
    let s = setup(Series::A, 2, vec![1], vec![rat::int(2), rat::frac(1, 4)], "highest");
    let w = s.twisted().unwrap();
    let rs = &s.cb.rs;
    for a in boxed(w.nu(), 3) {
        for j in 0..w.fl.dim() {
            // wt(v_j) + (a_α + 1)α − Σ_{γ≠α} a_γ γ
            let mut want = w.fl.weights[j].clone();
            for (k, &g) in s.p.delta_u_plus.iter().enumerate() {
                let t = if g == s.alpha { a[k] + 1 } else { -a[k] };
                want = want.add_root(rs.root(g), t);
            }
            assert_eq!(w.weight(&(a.clone(), j)), want);
        }
    }
    let keys: Vec<_> = boxed(w.nu(), 2).into_iter().map(|a| (a, 0)).collect();
    assert_eq!(weight_defects(&w, &keys), 0);
}

#[test]
fn weight_space_basis_matches_enumeration() {
    for alpha in ["highest", "simple:1"] {
        let s = a2(alpha);
        let w = s.twisted().unwrap();
        let cutoff = 4;
        let mut counts: BTreeMap<Weight, usize> = BTreeMap::new();
        for a in boxed(w.nu(), cutoff) {
            *counts.entry(w.weight(&(a, 0))).or_default() += 1;
        }
        for (mu, n) in counts {
            assert_eq!(w.weight_space_basis(&mu, cutoff as usize).len(), n);
        }
    }
}

#[test]
fn theta_weight_count_grows() {
    let s = setup(Series::A, 2, vec![], vec![], "highest");
    let w = s.twisted().unwrap();
    let theta = Weight(vec![rat::int(1), rat::int(1)]);
    for n in 2..9 {
        assert_eq!(w.weight_space_basis(&theta, n).len(), n + 1);
    }
}

#[test]
fn f_alpha_kernel_matches_verma_quotient() {
    let s = a2("highest");
    let w = s.twisted().unwrap();
    let m = s.verma().unwrap();
    for a in boxed(w.nu(), 1) {
        let mu = w.weight(&(a, 0));
        let (x, y) = h0_kernel(&w, &m, &mu, 6).unwrap();
        assert_eq!(x, y);
    }
}

#[test]
fn sl2_twisted_is_cyclic() {
    let s = setup(Series::A, 1, vec![], vec![rat::frac(1, 3)], "highest");
    let w = s.twisted().unwrap();
    let r = check_cyclicity(&w, &[w.generator(0)], 8, 1);
    assert!(r.complete);
    assert_eq!(r.interior_total, 8);
}

#[test]
fn levi_alpha_is_rejected() {
    let cfg = JobConfig {
        rank: 2,
        sigma: vec![1],
        alpha: "1,0".into(),
        ..JobConfig::default()
    };
    let err = Setup::new(&cfg).unwrap().twisted().unwrap_err();
    assert!(err.is_config());
    assert!(err.to_string().contains("T_alpha(M) = 0"));
}

#[test]
fn non_dominant_lambda_is_rejected() {
    let cfg = JobConfig {
        rank: 2,
        sigma: vec![1],
        lambda: vec![rat::frac(1, 2), rat::int(0)],
        ..JobConfig::default()
    };
    assert!(matches!(Setup::new(&cfg), Err(Error::NotDominant(_))));
}

#[test]
fn lattice_verdicts() {
    for (s, r) in [(Series::A, 2), (Series::A, 3), (Series::C, 2)] {
        let cb = Arc::new(ChevalleyBasis::from_type(s, r).unwrap());
        let p = ParabolicData::borel(&cb.rs);
        for alpha in 0..cb.npos() {
            let lat = Lattice::new(&cb.rs, &p, alpha).unwrap();
            let want = if cb.rs.is_simple(alpha) { Verdict::Finite } else { Verdict::Infinite };
            assert_eq!(lat.predicted_verdict(), want, "{s}{r} {:?}", cb.rs.root(alpha));
            let zero = vec![0; lat.nu()];
            let m = lat.weight_multiplicity(&zero, 3).unwrap();
            assert_eq!(m.verdict, want);
            assert!(m.probe_count >= m.count);
            assert!(lat.cone_multiplicity(&zero, 3) <= m.count);
        }
    }
}

#[test]
fn lattice_theta_class_size() {
    let cb = ChevalleyBasis::from_type(Series::A, 2).unwrap();
    let p = ParabolicData::borel(&cb.rs);
    let lat = Lattice::new(&cb.rs, &p, cb.rs.highest_root()).unwrap();
    for n in 1..7 {
        assert_eq!(lat.weight_multiplicity(&[0, 0, 0], n).unwrap().count, n + 1);
    }
    assert!(lat.same_class(&[0, 0, 0], &[1, 1, 1]));
    assert!(!lat.same_class(&[0, 0, 0], &[1, 0, 0]));
}

#[test]
fn finite_class_larger_than_cutoff() {
    // the class of (0,2,2) for A2, α = α₁ has members beyond exponent 3
    let cb = ChevalleyBasis::from_type(Series::A, 2).unwrap();
    let p = ParabolicData::borel(&cb.rs);
    let lat = Lattice::new(&cb.rs, &p, 0).unwrap();
    let m = lat.weight_multiplicity(&[0, 2, 2], 3).unwrap();
    assert_eq!(m.verdict, Verdict::Finite);
    assert!(m.probe_count > m.count);
    assert_eq!(lat.class_members(&[0, 2, 2], 9, false).len(), m.probe_count);
}

#[test]
fn simple_alpha_classes_are_counted_exactly() {
    for (s, r) in [(Series::B, 2), (Series::G, 2)] {
        let cb = ChevalleyBasis::from_type(s, r).unwrap();
        let p = ParabolicData::borel(&cb.rs);
        for i in 0..r {
            let alpha = cb.rs.index_of(&cb.rs.simple_roots[i]).unwrap();
            let lat = Lattice::new(&cb.rs, &p, alpha).unwrap();
            let mut a = vec![0; lat.nu()];
            *a.last_mut().unwrap() = 2;
            let m = lat.weight_multiplicity(&a, 2).unwrap();
            let bound = lat.exponent_bound(&a).unwrap();
            // brute force well past the bound
            assert_eq!(lat.class_members(&a, bound + 4, false).len(), m.probe_count, "{s}{r} {i}");
            for b in lat.class_members(&a, bound + 4, false) {
                assert!(b.iter().all(|&x| x <= bound as i64));
            }
        }
    }
}
