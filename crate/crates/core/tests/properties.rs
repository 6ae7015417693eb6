use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use triperm_core::group::Perm;
use triperm_core::poly::{func_of, MultiPoly};
use triperm_core::sample::{random_mt, random_point, random_poly, random_tr};
use triperm_core::tri::{compose_tri, invert_tri, TriElem, TriJson, VecPoly};
use triperm_core::Ring;

const RINGS: [&str; 5] = ["Z4", "F3", "F2[t]/t^2", "F2^2:t^2+t+1", "Z2xF3"];

fn ring(i: usize) -> Ring {
    Ring::parse(RINGS[i % RINGS.len()]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poly_ring_laws(i in 0usize..5, seed in any::<u64>()) {
        let r = ring(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (f, g, h) = (random_poly(&mut rng, &r, 2, 3), random_poly(&mut rng, &r, 2, 3), random_poly(&mut rng, &r, 2, 3));
        prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
        prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
        prop_assert!(f.sub(&f).is_zero());
        let p = random_point(&mut rng, &r, 2);
        prop_assert_eq!(f.mul(&g).eval(&p), r.mul(f.eval(&p), g.eval(&p)));
    }

    #[test]
    fn display_parses_back(i in 0usize..5, seed in any::<u64>()) {
        let r = ring(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_poly(&mut rng, &r, 3, 3);
        prop_assert_eq!(MultiPoly::parse(&r, 3, &f.to_string()).unwrap(), f);
    }

    #[test]
    fn substitution_is_evaluation(i in 0usize..5, seed in any::<u64>()) {
        let r = ring(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_poly(&mut rng, &r, 2, 2);
        let args = [random_poly(&mut rng, &r, 2, 2), random_poly(&mut rng, &r, 2, 2)];
        let p = random_point(&mut rng, &r, 2);
        let inner: Vec<u32> = args.iter().map(|a| a.eval(&p)).collect();
        prop_assert_eq!(f.substitute(&args).unwrap().eval(&p), f.eval(&inner));
    }

    #[test]
    fn composition_matches_maps(i in 0usize..4, seed in any::<u64>()) {
        let r = ring(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (f, g, h) = (random_mt(&mut rng, &r, 3, 2), random_mt(&mut rng, &r, 3, 2), random_mt(&mut rng, &r, 3, 2));
        let fg = compose_tri(&f, &g).unwrap();
        prop_assert_eq!(compose_tri(&fg, &h).unwrap(), compose_tri(&f, &compose_tri(&g, &h).unwrap()).unwrap());
        prop_assert_eq!(fg.to_vecpoly(), f.to_vecpoly().compose(&g.to_vecpoly()).unwrap());
        let tf = Perm::new(f.perm_table(None).unwrap()).unwrap();
        let tg = Perm::new(g.perm_table(None).unwrap()).unwrap();
        prop_assert_eq!(Perm::new(fg.perm_table(None).unwrap()).unwrap(), tf.compose(&tg));
    }

    #[test]
    fn inverse_and_preimage(i in 0usize..4, seed in any::<u64>()) {
        let r = ring(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_tr(&mut rng, &r, 3, 3);
        let inv = invert_tri(&t).unwrap();
        prop_assert!(compose_tri(&t, &inv).unwrap().is_identity());
        prop_assert!(compose_tri(&inv, &t).unwrap().is_identity());
        let m = random_mt(&mut rng, &r, 3, 3);
        let p = random_point(&mut rng, &r, 3);
        prop_assert_eq!(m.solve_preimage(&m.apply(&p).unwrap()).unwrap(), p);
    }

    #[test]
    fn wire_forms_round_trip(i in 0usize..5, seed in any::<u64>()) {
        let r = ring(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_mt(&mut rng, &r, 3, 2);
        let text = serde_json::to_string(&t.to_json()).unwrap();
        let back: TriJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back.to_tri().unwrap(), &t);
        let v = VecPoly::parse(&r, 3, &t.to_vecpoly().to_string()).unwrap();
        prop_assert_eq!(TriElem::from_vecpoly(&v).unwrap(), t);
    }

    #[test]
    fn triangular_maps_are_bijective(i in 0usize..5, seed in any::<u64>()) {
        let r = ring(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_mt(&mut rng, &r, 2, 3);
        prop_assert!(Perm::new(t.perm_table(None).unwrap()).is_ok());
        prop_assert!(func_of(t.f1(), None).unwrap().is_permutation());
    }
}
