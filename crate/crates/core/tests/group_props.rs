use std::sync::Arc;

use loopmod::abgroup::{orthogonal_complement, subgroup_characters, Bicharacter, FinAbGroup, QuotientMap, Subgroup};
use loopmod::invars::{profile, random_bilinear_cocycle};
use loopmod::galg::twisted_group_algebra;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn group() -> impl Strategy<Value = Arc<FinAbGroup>> {
    prop::collection::vec(prop::sample::select(vec![2u64, 3, 4, 6]), 1..=3)
        .prop_filter("small", |f| f.iter().product::<u64>() <= 48)
        .prop_map(|f| Arc::new(FinAbGroup::new(f).unwrap()))
}

fn group_and_subgroup() -> impl Strategy<Value = (Arc<FinAbGroup>, Subgroup)> {
    group().prop_flat_map(|g| {
        let n = g.order();
        prop::collection::vec(0..n, 0..=2).prop_map(move |gens| {
            let gens: Vec<_> = gens.into_iter().map(loopmod::Elem).collect();
            (g.clone(), Subgroup::generated(&g, &gens))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn perp_has_complementary_order((g, h) in group_and_subgroup()) {
        let p = orthogonal_complement(&h);
        prop_assert_eq!(h.order() * p.order(), g.order());
        prop_assert_eq!(orthogonal_complement(&p), h.clone());
        prop_assert_eq!(subgroup_characters(&h).len(), h.order());
    }

    #[test]
    fn section_is_a_right_inverse((_g, h) in group_and_subgroup()) {
        let pi = QuotientMap::new(&h);
        prop_assert_eq!(pi.target().order() * h.order(), pi.source().order());
        for q in pi.target().elements() {
            prop_assert_eq!(pi.apply(pi.section(q)), q);
        }
        // every coset meets the transversal exactly once
        for x in pi.source().elements() {
            let hits = pi.transversal().iter().filter(|t| pi.apply(**t) == pi.apply(x)).count();
            prop_assert_eq!(hits, 1);
        }
    }

    #[test]
    fn isotropic_order_identity(g in group(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sigma = random_bilinear_cocycle(&mut rng, &g).unwrap();
        let p = profile(&twisted_group_algebra(&sigma)).unwrap();
        let beta: &Bicharacter = &p.beta;
        prop_assert!(beta.is_alternating());
        for h in beta.isotropic_subgroups(true).unwrap() {
            prop_assert_eq!(p.support.order() * p.center_support.order(), h.order() * h.order());
            prop_assert!(beta.tilde_is_hom(&h));
            prop_assert_eq!(beta.tilde_kernel(&h), h.clone());
        }
    }
}
