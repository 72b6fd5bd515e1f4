use twistgt_core::rat;
use twistgt_core::rootsys::{
    height, is_p_dominant, ChevalleyBasis, ParabolicData, RootSystemData, Series, Weight,
};
use twistgt_core::Error;

#[test]
fn positive_root_counts() {
    for (s, r, n) in [
        (Series::A, 1, 1),
        (Series::A, 2, 3),
        (Series::A, 3, 6),
        (Series::B, 2, 4),
        (Series::B, 3, 9),
        (Series::C, 2, 4),
        (Series::C, 3, 9),
        (Series::D, 4, 12),
        (Series::G, 2, 6),
        (Series::F, 4, 24),
    ] {
        let rs = RootSystemData::build(s, r).unwrap();
        assert_eq!(rs.num_positive(), n, "{s}{r}");
    }
}

#[test]
fn highest_roots() {
    for (s, r, want) in [
        (Series::A, 2, vec![1, 1]),
        (Series::A, 3, vec![1, 1, 1]),
        (Series::C, 2, vec![2, 1]),
        (Series::B, 2, vec![1, 2]),
        (Series::G, 2, vec![3, 2]),
    ] {
        let rs = RootSystemData::build(s, r).unwrap();
        let h = rs.root(rs.highest_root());
        // highest root is the unique root of maximal height
        let top = rs.positive_roots.iter().map(|r| height(r)).max().unwrap();
        assert_eq!(height(h), top);
        assert_eq!(*h, want, "{s}{r}");
    }
}

#[test]
fn roots_sorted_by_height() {
    let rs = RootSystemData::build(Series::G, 2).unwrap();
    let hs: Vec<i64> = rs.positive_roots.iter().map(|r| height(r)).collect();
    let mut sorted = hs.clone();
    sorted.sort();
    assert_eq!(hs, sorted);
}

#[test]
fn chevalley_relations() {
    for (s, r) in [(Series::A, 2), (Series::C, 2), (Series::G, 2), (Series::B, 3)] {
        let cb = ChevalleyBasis::from_type(s, r).unwrap();
        assert_eq!(cb.jacobi_residual(), 0);
        cb.check_structure_constants().unwrap();
        // [e_i, f_i] = h_i for simple roots
        for i in 0..r {
            let k = cb.rs.index_of(&cb.rs.simple_roots[i]).unwrap();
            assert_eq!(cb.bracket(cb.e(k), cb.f(k)), &[(cb.h(i), 1)]);
        }
    }
}

#[test]
fn cartan_a2_and_g2() {
    let a2 = RootSystemData::build(Series::A, 2).unwrap();
    assert_eq!(a2.cartan_matrix, vec![vec![2, -1], vec![-1, 2]]);
    let g2 = RootSystemData::build(Series::G, 2).unwrap();
    let c = &g2.cartan_matrix;
    assert_eq!(c[0][1] * c[1][0], 3);
}

#[test]
fn fundamental_weights_a2() {
    let rs = RootSystemData::build(Series::A, 2).unwrap();
    // inverse Cartan matrix rows
    let w1 = rs.fundamental_to_simple(&[rat::int(1), rat::int(0)]).unwrap();
    assert_eq!(w1, Weight(vec![rat::frac(2, 3), rat::frac(1, 3)]));
    let back = rs.simple_to_fundamental(&w1);
    assert_eq!(back, vec![rat::int(1), rat::int(0)]);
    assert_eq!(rs.rho, Weight(vec![rat::int(1), rat::int(1)]));
}

#[test]
fn phi_theta_empty_in_a2() {
    let rs = RootSystemData::build(Series::A, 2).unwrap();
    assert!(rs.phi_alpha(rs.highest_root()).is_empty());
}

#[test]
fn root_parsing() {
    let rs = RootSystemData::build(Series::A, 2).unwrap();
    assert_eq!(rs.parse_root("highest").unwrap(), rs.highest_root());
    assert_eq!(rs.root(rs.parse_root("simple:2").unwrap()), &vec![0, 1]);
    assert_eq!(rs.root(rs.parse_root("1,1").unwrap()), &vec![1, 1]);
    assert!(matches!(rs.parse_root("2,1"), Err(Error::NotARoot(_))));
}

#[test]
fn parabolic_data() {
    let rs = RootSystemData::build(Series::A, 3).unwrap();
    let p = ParabolicData::new(&rs, &[0, 1]).unwrap();
    assert_eq!(p.delta_l_plus.len(), 3);
    assert_eq!(p.delta_u_plus.len(), 3);
    let b = ParabolicData::borel(&rs);
    assert!(b.is_borel());
    assert_eq!(b.rho_u, rs.rho);
}

#[test]
fn dominance() {
    let rs = RootSystemData::build(Series::A, 2).unwrap();
    let p = ParabolicData::new(&rs, &[0]).unwrap();
    let ok = rs.fundamental_to_simple(&[rat::int(2), rat::frac(1, 3)]).unwrap();
    let bad = rs.fundamental_to_simple(&[rat::frac(1, 2), rat::int(0)]).unwrap();
    let neg = rs.fundamental_to_simple(&[rat::int(-1), rat::int(0)]).unwrap();
    assert!(is_p_dominant(&rs, &ok, &p));
    assert!(!is_p_dominant(&rs, &bad, &p));
    assert!(!is_p_dominant(&rs, &neg, &p));
}

#[test]
fn unsupported_types() {
    assert!(matches!(RootSystemData::build(Series::G, 3), Err(Error::UnsupportedType(_))));
    assert!(RootSystemData::build(Series::A, 0).is_err());
}
