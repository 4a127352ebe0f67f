use std::sync::Arc;

use loopmod::abgroup::{Character, QuotientMap, Subgroup};
use loopmod::central::{central_image, central_images_are_twists, maximal_graded_subfields, pair_isomorphism, SubfieldWithAug};
use loopmod::corpus::{random_instance, CorpusConfig, Instance};
use loopmod::envelope::graded_envelope;
use loopmod::gmod::{graded_centralizer, is_graded_simple, is_isomorphic_graded, is_simple_ungraded, ungraded_centralizer};
use loopmod::invars::{brauer_invariant, brauer_invariant_at, profile_with_checks, reduced_profile};
use loopmod::loopfun::{forgetful, loop_module};
use loopmod::{CycScalar, Elem};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn instance(seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_instance(&mut rng, 0, CorpusConfig::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn centralizer_components_are_lines(seed in any::<u64>()) {
        let inst = instance(seed);
        let w = &inst.module;
        prop_assert!(is_graded_simple(w).is_simple());
        let c = graded_centralizer(w);
        let g = w.grading_group().clone();
        prop_assert_eq!(c.component(g.identity()).len(), 1);
        let mut total = 0;
        for x in g.elements() {
            let k = c.component(x).len();
            prop_assert!(k <= 1);
            total += k;
        }
        prop_assert_eq!(total, ungraded_centralizer(w).len());
    }

    #[test]
    fn homogeneous_vectors_spin_everything(seed in any::<u64>()) {
        let inst = instance(seed);
        let w = &inst.module;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x55);
        for _ in 0..20 {
            let support = w.support();
            let q = support[rng.gen_range(0..support.len())];
            let comp = w.component(q);
            let mut v = vec![CycScalar::zero(1); w.dim()];
            for &i in &comp {
                v[i] = CycScalar::from_int(rng.gen_range(-3..=3), 1);
            }
            if v.iter().all(|x| x.is_zero()) {
                continue;
            }
            prop_assert_eq!(w.spin(&v, true).len(), w.dim());
        }
    }

    #[test]
    fn shifts_compose(seed in any::<u64>(), a in 0usize..8, b in 0usize..8) {
        let inst = instance(seed);
        let w = &inst.module;
        let g = w.grading_group().clone();
        let (x, y) = (Elem(a % g.order()), Elem(b % g.order()));
        let (twice, once) = (w.shift(x).shift(y), w.shift(g.mul(x, y)));
        prop_assert_eq!(twice.degrees(), once.degrees());
        let back = w.shift(x).shift(g.inv(x));
        prop_assert_eq!(back.degrees(), w.degrees());
        // shifting by an element of the centralizer support gives an isomorphic module
        let c = graded_centralizer(w);
        for t in c.algebra.support() {
            prop_assert!(is_isomorphic_graded(&w.shift(t), w).is_iso());
        }
    }

    #[test]
    fn loop_dimensions(seed in any::<u64>(), pick in any::<usize>()) {
        let inst = instance(seed);
        let g = inst.group.clone();
        let subs = Subgroup::all(&g);
        let h = &subs[pick % subs.len()];
        let pi = Arc::new(QuotientMap::new(h));
        let v = forgetful(&inst.module, &pi).unwrap();
        let l = loop_module(&v);
        prop_assert_eq!(l.dim(), h.order() * v.dim());
        let mut supp = l.module().support();
        supp.sort();
        let mut pre: Vec<Elem> = g.elements().filter(|x| v.support().contains(&pi.apply(*x))).collect();
        pre.sort();
        prop_assert_eq!(supp, pre);
        // the loop subfield lies in the graded centralizer
        let c = graded_centralizer(l.module());
        for (h, d) in l.subfield() {
            let coords = c.coordinates(&d);
            prop_assert!(coords.is_some(), "δ_{:?} outside the centralizer", h);
        }
    }

    #[test]
    fn central_images_round_trip(seed in any::<u64>()) {
        let inst = instance(seed);
        let w = &inst.module;
        for f in maximal_graded_subfields(w).unwrap() {
            let v = central_image(w, &f, Character::trivial()).unwrap().module;
            prop_assert!(is_simple_ungraded(&v).is_simple());
            let l = loop_module(&v);
            let lf = SubfieldWithAug::from_loop(&l);
            prop_assert!(pair_isomorphism(w, &f, l.module(), &lf, |_| CycScalar::one(1)).is_iso());
            let back = central_image(l.module(), &lf, Character::trivial()).unwrap().module;
            prop_assert!(is_isomorphic_graded(&back, &v).is_iso());
            prop_assert!(central_images_are_twists(w, &f).unwrap());
        }
    }

    #[test]
    fn invariants_are_stable(seed in any::<u64>(), a in 0usize..8) {
        let inst = instance(seed);
        let w = &inst.module;
        let (p, checks) = profile_with_checks(&graded_centralizer(w).algebra).unwrap();
        prop_assert!(checks.holds(), "{:?}", checks);
        let base = brauer_invariant(w).unwrap();
        let g = w.grading_group().clone();
        prop_assert_eq!(&brauer_invariant(&w.shift(Elem(a % g.order()))).unwrap(), &base);
        let pieces = p.center_support.order();
        for i in 0..pieces {
            prop_assert_eq!(&brauer_invariant_at(w, i).unwrap(), &base);
            let r = reduced_profile(w, i).unwrap();
            prop_assert_eq!(r.schur_index * r.schur_index, r.support.order());
        }
    }

    #[test]
    fn envelope_of_central_image(seed in any::<u64>()) {
        let inst = instance(seed);
        let w = &inst.module;
        let f = &maximal_graded_subfields(w).unwrap()[0];
        let v = central_image(w, f, Character::trivial()).unwrap().module;
        let r = graded_envelope(&v).unwrap();
        prop_assert!(r.checks.holds(), "{:?}", r.checks);
        let w2 = r.module();
        for f2 in maximal_graded_subfields(w2).unwrap() {
            prop_assert!(central_images_are_twists(w2, &f2).unwrap());
        }
    }
}
