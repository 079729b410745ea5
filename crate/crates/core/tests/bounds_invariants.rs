//! LP duality, integrality gaps and exact comparison of bounds.

use entcount::bounds::{
    compare_bounds, compare_exact, edge_cover_number, fractional_cover, fractional_independence, independence_number,
    RootProductBound, Verdict,
};
use entcount::graph::enumerate_all_graphs;
use num_bigint::BigUint;
use num_rational::BigRational;
use proptest::prelude::*;

#[test]
fn duality_on_small_graphs() {
    let mut seen = 0;
    for n in 2..=7 {
        for g in enumerate_all_graphs(n).unwrap() {
            if g.degrees().contains(&0) {
                continue;
            }
            let cover = fractional_cover(&g).unwrap().objective;
            let indep = fractional_independence(&g).unwrap().objective;
            assert_eq!(cover, indep, "{g:?}");
            let alpha = BigRational::from_integer(independence_number(&g).unwrap().into());
            assert!(alpha <= indep);
            if g.edge_count() <= 16 {
                let rho = edge_cover_number(&g).unwrap().unwrap();
                assert!(cover <= BigRational::from_integer(rho.into()));
            }
            let half = BigRational::new(g.n().into(), 2.into());
            assert!(cover >= half, "rho* is at least n/2");
            seen += 1;
        }
    }
    assert!(seen > 1000);
}

fn bound_strategy() -> impl Strategy<Value = RootProductBound> {
    proptest::collection::vec((1u64..50, 1u64..6), 0..4).prop_flat_map(|fs| {
        (1u64..20, 1u64..20).prop_map(move |(p, q)| {
            let mut b = RootProductBound::one().with_scalar(BigRational::new(p.into(), q.into())).unwrap();
            for &(base, root) in &fs {
                b = b.with_factor(BigUint::from(base), root).unwrap();
            }
            b
        })
    })
}

proptest! {
    #[test]
    fn normalization_preserves_value(b in bound_strategy()) {
        prop_assert_eq!(compare_bounds(&b, &b.normalized()).unwrap(), Verdict::Equal);
    }

    #[test]
    fn product_is_monotone(a in bound_strategy(), b in bound_strategy()) {
        let ab = a.clone().times(&b);
        let expect = compare_bounds(&a, &RootProductBound::one()).unwrap();
        prop_assert_eq!(compare_bounds(&ab, &b).unwrap(), expect);
    }

    #[test]
    fn exact_comparison_agrees_with_floats(count in 0u64..5000, b in bound_strategy()) {
        let c = compare_exact(&BigUint::from(count), &b).unwrap();
        let (x, y) = (count as f64, b.to_f64());
        if (x - y).abs() > 1e-6 * y.max(1.0) {
            prop_assert_eq!(c.verdict == Verdict::AboveStrict, x > y);
        }
    }
}
