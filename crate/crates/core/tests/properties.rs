use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use twistgt_core::jobs::{JobConfig, Setup};
use twistgt_core::modules::analysis::commutator_defects;
use twistgt_core::modules::{GModule, TwistedModule};
use twistgt_core::rat::{self, Rat};
use twistgt_core::rootsys::{ChevalleyBasis, Series};
use twistgt_core::weyl::WeylOperator;

fn rational() -> impl Strategy<Value = Rat> {
    (-50i64..50, 1i64..20).prop_map(|(p, q)| rat::frac(p, q))
}

fn operator(n: usize) -> impl Strategy<Value = WeylOperator> {
    prop::collection::vec(
        (prop::collection::vec(0u16..3, n), prop::collection::vec(0u16..3, n), rational()),
        1..4,
    )
    .prop_map(move |terms| {
        let mut o = WeylOperator::zero(n);
        for (x, d, c) in terms {
            o = o.add(&WeylOperator::monomial(x, d, c));
        }
        o
    })
}

fn a2_theta() -> &'static TwistedModule {
    static W: OnceLock<TwistedModule> = OnceLock::new();
    W.get_or_init(|| {
        Setup::new(&JobConfig {
            rank: 2,
            lambda: vec![rat::frac(3, 5), rat::frac(-1, 4)],
            ..JobConfig::default()
        })
        .unwrap()
        .twisted()
        .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_text_roundtrip(r in rational()) {
        prop_assert_eq!(rat::parse(&rat::fmt(&r)).unwrap(), r);
    }

    #[test]
    fn weyl_product_associative(a in operator(2), b in operator(2), c in operator(2)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn weyl_jacobi(a in operator(2), b in operator(2), c in operator(2)) {
        let j = a.commutator(&b.commutator(&c))
            .add(&b.commutator(&c.commutator(&a)))
            .add(&c.commutator(&a.commutator(&b)));
        prop_assert!(j.is_zero());
    }

    #[test]
    fn twisted_action_is_representation(
        x in 0usize..8,
        y in 0usize..8,
        a in prop::collection::vec(0i64..4, 3),
    ) {
        let w = a2_theta();
        prop_assert_eq!(commutator_defects(w, &[(x, y, (a, 0))]), 0);
    }

    #[test]
    fn h_acts_by_weight(a in prop::collection::vec(0i64..6, 3)) {
        let w = a2_theta();
        let cb: &Arc<ChevalleyBasis> = w.basis_data();
        let key = (a, 0);
        let wt = w.weight(&key);
        let v = twistgt_core::modules::ModuleVector::basis(w.mode(), key.0.clone(), 0);
        for i in 0..2 {
            let c = cb.rs.simple_pairing(&wt, i);
            prop_assert_eq!(w.act(cb.h(i), &v), v.scale(&c));
        }
    }

    #[test]
    fn jacobi_for_random_rank(r in 1usize..4) {
        let cb = ChevalleyBasis::from_type(Series::A, r).unwrap();
        prop_assert_eq!(cb.jacobi_residual(), 0);
    }
}
