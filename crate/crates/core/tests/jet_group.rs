mod common;

use holoform::jet::{random_automorphism, random_germ, JetGerm};
use holoform::poly::PolyMap;
use holoform::scalar::Scalar;

/// Truncated composition computed the long way: full composition, then
/// truncation.
fn compose_then_truncate(g: &JetGerm, h: &JetGerm) -> JetGerm {
    let full = g.as_map().compose(h.as_map()).unwrap();
    JetGerm::from_map(&full, g.order()).unwrap()
}

#[test]
fn group_laws_modulo_truncation() {
    for n in 1..=2 {
        for k in 1..=4 {
            for i in 0..50u64 {
                let seed = 1000 * (n as u64) + 100 * (k as u64) + i;
                let g = random_germ(n, k, seed);
                let h = random_germ(n, k, seed ^ 0xabcdef);
                let l = random_germ(n, k, seed ^ 0x123456);
                let id = JetGerm::identity(n, k);
                let gi = g.invert().unwrap();
                assert_eq!(g.compose(&gi).unwrap(), id, "g∘g⁻¹, n={n} k={k} seed={seed}");
                assert_eq!(gi.compose(&g).unwrap(), id, "g⁻¹∘g, n={n} k={k} seed={seed}");
                assert_eq!(
                    g.compose(&h).unwrap().compose(&l).unwrap(),
                    g.compose(&h.compose(&l).unwrap()).unwrap(),
                    "associativity, n={n} k={k} seed={seed}"
                );
                assert_eq!(g.compose(&h).unwrap(), compose_then_truncate(&g, &h));
                assert_eq!(g.compose(&id).unwrap(), g);
            }
        }
    }
}

#[test]
fn jets_act_contravariantly_on_forms() {
    for seed in 0..20u64 {
        let mut rng = common::rng(seed);
        let n = 2;
        let k = 3;
        let g = random_germ(n, k, seed);
        let h = random_germ(n, k, seed + 77);
        let p = (seed % 3) as usize;
        let w = common::sparse_form(n, p, &mut rng).jet(k - 1);
        let gh = g.compose(&h).unwrap();
        assert_eq!(gh.pullback(&w).unwrap(), h.pullback(&g.pullback(&w).unwrap()).unwrap(), "seed {seed}");
    }
}

#[test]
fn invalid_germs_are_rejected() {
    let singular = vec![
        vec![Scalar::from_int(1), Scalar::from_int(2)],
        vec![Scalar::from_int(2), Scalar::from_int(4)],
    ];
    assert!(JetGerm::linear(&singular, 2).is_err());
    assert!(JetGerm::scaling(&Scalar::from_int(0), 2, 2).is_err());
    let a = JetGerm::identity(2, 2);
    let b = JetGerm::identity(2, 3);
    assert!(a.compose(&b).is_err());
}

#[test]
fn automorphisms_have_exact_inverses() {
    for seed in 0..20 {
        for n in 1..=3 {
            let phi = random_automorphism(n, 2, seed);
            assert_eq!(phi.map.compose(&phi.inverse).unwrap(), PolyMap::identity(n));
            assert_eq!(phi.inverse.compose(&phi.map).unwrap(), PolyMap::identity(n));
        }
    }
}
