use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tl_core::exactscalar::{CycloRing, GenericRing};
use tl_core::morphism::Morphism;

fn sizes() -> impl Strategy<Value = (usize, usize)> {
    (0usize..=5, 0usize..=5).prop_filter("parity", |(m, n)| (m + n) % 2 == 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn trace_is_symmetric((m, n) in sizes(), seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Morphism::random(m, n, GenericRing, &mut rng);
        let b = Morphism::random(n, m, GenericRing, &mut rng);
        prop_assert_eq!(b.compose(&a).unwrap().trace().unwrap(), a.compose(&b).unwrap().trace().unwrap());
    }

    #[test]
    fn trace_is_symmetric_at_roots((m, n) in sizes(), ell in 3u32..=5, seed: u64) {
        let ring = CycloRing::new(ell).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Morphism::random(m, n, ring.clone(), &mut rng);
        let b = Morphism::random(n, m, ring, &mut rng);
        prop_assert_eq!(b.compose(&a).unwrap().trace().unwrap(), a.compose(&b).unwrap().trace().unwrap());
    }

    #[test]
    fn interchange(p in 0usize..=3, q in 0usize..=3, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = GenericRing;
        let (a, c) = (Morphism::random(p, p, r, &mut rng), Morphism::random(p, p, r, &mut rng));
        let (b, d) = (Morphism::random(q, q, r, &mut rng), Morphism::random(q, q, r, &mut rng));
        let lhs = a.tensor(&b).unwrap().compose(&c.tensor(&d).unwrap()).unwrap();
        let rhs = a.compose(&c).unwrap().tensor(&b.compose(&d).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn tensoring_with_identity_is_multiplicative(n in 0usize..=4, m in 0usize..=2, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y) = (Morphism::random(n, n, GenericRing, &mut rng), Morphism::random(n, n, GenericRing, &mut rng));
        prop_assert_eq!(x.compose(&y).unwrap().tensor_id(m), x.tensor_id(m).compose(&y.tensor_id(m)).unwrap());
        prop_assert_eq!(x.add(&y).unwrap().tensor_id(m), x.tensor_id(m).add(&y.tensor_id(m)).unwrap());
    }

    #[test]
    fn partial_trace_module_property(n in 0usize..=4, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Morphism::random(n + 1, n + 1, GenericRing, &mut rng);
        let b = Morphism::random(n, n, GenericRing, &mut rng);
        let lhs = a.compose(&b.tensor_id(1)).unwrap().trace().unwrap();
        let rhs = a.cond_expect().unwrap().compose(&b).unwrap().trace().unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn padding_round_trip((m, n) in sizes(), seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Morphism::random(m, n, GenericRing, &mut rng);
        prop_assert_eq!(a.pad_embed().unwrap().pad_retract(m, n).unwrap(), a);
    }

    #[test]
    fn json_round_trip((m, n) in sizes(), seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Morphism::random(m, n, CycloRing::new(4).unwrap(), &mut rng);
        let back: Morphism<CycloRing> = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
        prop_assert_eq!(back, a);
    }
}
