use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tl_core::diagram::{catalan, enumerate_diagrams, hom_basis};
use tl_core::exactscalar::{CycloRing, GenericRing, Ring, Scalar};
use tl_core::ideal::{
    gram_matrix, ideal_truncation, negligible_basis, negligible_basis_generic, verify_even_subcategory, verify_main_theorem, StopReason,
    TruncationOptions, VerifyConfig,
};
use tl_core::linalg::Echelon;
use tl_core::morphism::Morphism;
use tl_core::rootspec::{evaluate_morphism, z_reg_nil};
use tl_core::tower::jones_wenzl;
use tl_core::Error;

#[test]
fn gram_of_two_strands() {
    let g = gram_matrix(2, 2, &GenericRing).unwrap();
    let d = Scalar::d();
    let d2 = &d * &d;
    let det = &(&g.entries[0][0] * &g.entries[1][1]) - &(&g.entries[0][1] * &g.entries[1][0]);
    assert_eq!(det, &(&d2 * &d2) - &d2);
    assert_eq!(g.size, 2);
}

#[test]
fn negligible_is_a_tensor_ideal() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for ell in 3u32..=5 {
        let ring = CycloRing::new(ell).unwrap();
        for (m, n) in [(2usize, 2usize), (3, 3), (4, 4), (2, 4), (3, 5), (4, 6)] {
            let neg = negligible_basis(m, n, ell).unwrap();
            if neg.rank() == 0 {
                continue;
            }
            for _ in 0..4 {
                let mut a = Morphism::zero(m, n, ring.clone());
                for row in neg.basis() {
                    a = a.add_scaled(&Morphism::from_sparse(m, n, ring.clone(), row), &ring.from_int(rng.gen_range(-2..=2))).unwrap();
                }
                // a ⊗ x for a random diagram x, kept within six strands
                let p = rng.gen_range(0..=(6 - m.max(n)).min(2));
                let qs: Vec<usize> = (0..=2).filter(|q| (p + q) % 2 == 0 && n + q <= 6).collect();
                let q = qs[rng.gen_range(0..qs.len())];
                let xb = hom_basis(p, q);
                let x = Morphism::from_diagram(xb.diagram(rng.gen_range(0..xb.len() as u32)), ring.clone());
                let ax = a.tensor(&x).unwrap();
                assert!(negligible_basis(m + p, n + q, ell).unwrap().contains(&ax.to_sparse()), "ℓ={ell} ({m},{n}) ⊗ ({p},{q})");
                let xa = x.tensor(&a).unwrap();
                assert!(negligible_basis(m + p, n + q, ell).unwrap().contains(&xa.to_sparse()));
                // u ∘ a and a ∘ v for random diagrams
                let ks: Vec<usize> = (0..=6).filter(|k| (n + k) % 2 == 0).collect();
                let k = ks[rng.gen_range(0..ks.len())];
                let ub = hom_basis(n, k);
                let ua = Morphism::from_diagram(ub.diagram(rng.gen_range(0..ub.len() as u32)), ring.clone()).compose(&a).unwrap();
                assert!(negligible_basis(m, k, ell).unwrap().contains(&ua.to_sparse()));
            }
        }
    }
}

#[test]
fn non_negligible_morphisms_generate_scalars() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for ell in 3u32..=5 {
        let ring = CycloRing::new(ell).unwrap();
        for (m, n) in [(1usize, 1usize), (2, 2), (1, 3), (3, 3), (4, 2)] {
            let neg = negligible_basis(m, n, ell).unwrap();
            let a = loop {
                let a = Morphism::random(m, n, ring.clone(), &mut rng);
                if !neg.contains(&a.to_sparse()) {
                    break a;
                }
            };
            let span = ideal_truncation(&a, 0, 0, &TruncationOptions::default()).unwrap();
            assert_eq!(span.basis.rank(), 1, "ℓ={ell} ({m},{n})");
            assert_eq!(span.stop, StopReason::Full);
        }
    }
}

#[test]
fn negligible_dimension_matches_regular_block() {
    let ell = 3;
    let ring = CycloRing::new(ell).unwrap();
    for n in 1..=6usize {
        let (reg, _) = z_reg_nil(n, ell).unwrap();
        let reg = evaluate_morphism(&reg, ell).unwrap();
        let mut block = Echelon::new(hom_basis(n, n).len());
        for d in enumerate_diagrams(n, n) {
            let v = reg.compose(&Morphism::from_diagram(d, ring.clone())).unwrap().compose(&reg).unwrap();
            block.insert(&v.to_sparse());
        }
        let neg = negligible_basis(n, n, ell).unwrap();
        assert_eq!(neg.rank() as u128, catalan(n) - block.rank() as u128, "n = {n}");
    }
}

#[test]
fn frozen_table_ell_3() {
    // dim Neg(m, n) at ℓ = 3 for m, n ≤ 4 with m + n even
    let want = [
        (0, 0, 0), (0, 2, 0), (0, 4, 1), (1, 1, 0), (1, 3, 1), (2, 0, 0), (2, 2, 1), (2, 4, 4),
        (3, 1, 1), (3, 3, 4), (4, 0, 1), (4, 2, 4), (4, 4, 13),
    ];
    let cfg = VerifyConfig { samples: 5, sandwiches: 3, ..VerifyConfig::new(3, 4) };
    let report = verify_main_theorem(&cfg).unwrap();
    assert!(report.passed());
    let got: Vec<_> = report.cells.iter().map(|c| (c.m, c.n, c.neg_dim)).collect();
    assert_eq!(got, want);
}

#[test]
fn smaller_sweeps() {
    let cfg = VerifyConfig { samples: 5, sandwiches: 3, ..VerifyConfig::new(4, 3) };
    let report = verify_main_theorem(&cfg).unwrap();
    assert!(report.passed());
    let c33 = report.cells.iter().find(|c| (c.m, c.n) == (3, 3)).unwrap();
    assert_eq!((c33.neg_dim, c33.ideal_dim), (1, 1));
    let even = verify_even_subcategory(&VerifyConfig { samples: 5, sandwiches: 3, ..VerifyConfig::new(3, 4) }).unwrap();
    assert!(even.passed());
    let cells: Vec<_> = even.cells.iter().filter(|c| c.neg_dim > 0).map(|c| (c.m, c.n)).collect();
    assert_eq!(cells, vec![(0, 4), (2, 2), (2, 4), (4, 0), (4, 2), (4, 4)]);
}

#[test]
fn generic_sweep_has_no_negligibles() {
    for m in 0..=4usize {
        for n in (m % 2..=4).step_by(2) {
            assert_eq!(negligible_basis_generic(m, n).unwrap().rank(), 0);
        }
    }
}

#[test]
fn truncation_reports_growth() {
    let g = jones_wenzl(2, &CycloRing::new(3).unwrap()).unwrap();
    let opts = TruncationOptions { ceiling: None, max_levels: 1 };
    assert!(matches!(ideal_truncation(&g, 4, 4, &opts), Err(Error::NotStabilized(_))));
    let span = ideal_truncation(&g, 4, 4, &TruncationOptions::default()).unwrap();
    assert_eq!(span.stop, StopReason::Stabilized);
    assert_eq!(span.basis.rank(), 13);
}
