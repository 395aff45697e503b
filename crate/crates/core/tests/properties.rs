mod common;

use bruhat_core::closure::{infinite_closure_set, preclosure_set};
use bruhat_core::orders::{join_in_ball, meet_in_ball};
use bruhat_core::twisted::{twisted_contains, twisted_length, twisted_length_of, TwistDescriptor};
use bruhat_core::{GroupElement, ReflectionSet, SignedRoot};
use common::{ball, system, SMALL};
use proptest::prelude::*;

fn preset() -> impl Strategy<Value = &'static str> {
    proptest::sample::select(SMALL)
}

fn word(max_len: usize) -> impl Strategy<Value = Vec<u8>> {
    proptest::collection::vec(0u8..8, 0..max_len)
}

fn element(id: &str, letters: &[u8]) -> GroupElement {
    let sys = system(id);
    let filtered: Vec<u8> = letters.iter().map(|&a| a % sys.rank() as u8).collect();
    sys.element_from_letters(&filtered).unwrap()
}

fn subset(id: &str, mask: u64) -> ReflectionSet {
    let n = system(id).num_positive_roots();
    ReflectionSet::from_ids(n, (0..n as u32).filter(|&i| mask >> i & 1 == 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn canonical_form_is_idempotent(id in preset(), w in word(24)) {
        let sys = system(id);
        let x = element(id, &w);
        prop_assert_eq!(sys.element_from_letters(x.word()).unwrap(), x.clone());
        prop_assert_eq!(sys.element_from_word(&sys.format(&x)).unwrap(), x.clone());
        prop_assert_eq!(sys.inverse(&sys.inverse(&x).unwrap()).unwrap(), x.clone());
        prop_assert!(sys.multiply(&x, &sys.inverse(&x).unwrap()).unwrap().is_identity());
    }

    #[test]
    fn inversion_set_size_is_length(id in preset(), w in word(24)) {
        let sys = system(id);
        let x = element(id, &w);
        prop_assert_eq!(sys.inversion_set(&x).unwrap().len(), x.length());
        prop_assert_eq!(sys.left_descents(&x).unwrap(), sys.inversion_set(&x).unwrap().intersection(&subset(id, (1 << sys.rank()) - 1)));
    }

    #[test]
    fn reflection_cocycle(id in preset(), u in word(20), v in word(20)) {
        let sys = system(id);
        let (u, v) = (element(id, &u), element(id, &v));
        let uv = sys.multiply(&u, &v).unwrap();
        let mut conj = sys.empty_set();
        for t in sys.inversion_set(&v).unwrap().iter() {
            conj.insert(sys.conjugate_reflection(&u, t).unwrap());
        }
        prop_assert_eq!(sys.inversion_set(&uv).unwrap(), sys.inversion_set(&u).unwrap().symmetric_difference(&conj));
    }

    #[test]
    fn multiplication_is_associative(id in preset(), a in word(12), b in word(12), c in word(12)) {
        let sys = system(id);
        let (a, b, c) = (element(id, &a), element(id, &b), element(id, &c));
        let left = sys.multiply(&sys.multiply(&a, &b).unwrap(), &c).unwrap();
        let right = sys.multiply(&a, &sys.multiply(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn meet_is_greatest_lower_bound(id in preset(), u in word(20), v in word(20)) {
        let b = ball(id);
        let iu = b.id_of(&element(id, &u)).unwrap();
        let iv = b.id_of(&element(id, &v)).unwrap();
        let m = meet_in_ball(b, iu, iv);
        prop_assert!(b.weak_leq(m, iu) && b.weak_leq(m, iv));
        for x in 0..b.len() as u32 {
            if b.weak_leq(x, iu) && b.weak_leq(x, iv) {
                prop_assert!(b.weak_leq(x, m));
            }
        }
    }

    #[test]
    fn join_is_the_infinite_closure(id in preset(), u in word(20), v in word(20)) {
        let b = ball(id);
        let iu = b.id_of(&element(id, &u)).unwrap();
        let iv = b.id_of(&element(id, &v)).unwrap();
        let j = join_in_ball(b, iu, iv).unwrap();
        let union = b.inversion_set(iu).union(b.inversion_set(iv));
        let (closure, _) = infinite_closure_set(b, &union).unwrap();
        prop_assert_eq!(&closure, b.inversion_set(j));
    }

    #[test]
    fn preclosure_is_extensive_and_monotone(id in preset(), a in any::<u64>(), extra in any::<u64>()) {
        let b = ball(id);
        let small = subset(id, a);
        let big = subset(id, a | extra);
        let (ca, ta) = preclosure_set(b, &small);
        let (cb, tb) = preclosure_set(b, &big);
        prop_assert!(!ta && !tb);
        prop_assert!(small.is_subset(&ca));
        prop_assert!(ca.is_subset(&cb));
        // [A] ∪ B ⊆ [A ∪ B]
        let other = subset(id, extra);
        let (cu, _) = preclosure_set(b, &small.union(&other));
        prop_assert!(ca.union(&other).is_subset(&cu));
    }

    #[test]
    fn twisted_identities(id in preset(), mask in any::<u64>(), u in word(16), v in word(16), w in word(16), t in any::<u32>()) {
        let sys = system(id);
        let a = TwistDescriptor::explicit(subset(id, mask), false);
        let (u, v, w) = (element(id, &u), element(id, &v), element(id, &w));
        let t = t % sys.num_positive_roots() as u32;
        // t ∉ w·A  <=>  t ∈ (tw)·A
        let tw = sys.multiply(sys.reflection_word(t), &w).unwrap();
        prop_assert_eq!(!twisted_contains(sys, &a, &w, t).unwrap(), twisted_contains(sys, &a, &tw, t).unwrap());
        let l = |x: &GroupElement, y: &GroupElement| twisted_length(sys, &a, x, y).unwrap();
        // additivity and antisymmetry
        prop_assert_eq!(l(&u, &v) + l(&v, &w), l(&u, &w));
        prop_assert_eq!(l(&u, &v), -l(&v, &u));
        prop_assert_eq!(l(&v, &w), twisted_length_of(sys, &a, &w).unwrap() - twisted_length_of(sys, &a, &v).unwrap());
        // l_A(v, w) = l_{v·A}(w v^{-1})
        let va = TwistDescriptor::explicit(bruhat_core::twisted::twisted_inversion(sys, &a, &v).unwrap(), false);
        let wv = sys.multiply(&w, &sys.inverse(&v).unwrap()).unwrap();
        prop_assert_eq!(l(&v, &w), twisted_length_of(sys, &va, &wv).unwrap());
        // l_{t·A}(t) = -l_A(t)
        let tref = sys.reflection_word(t).clone();
        let ta = TwistDescriptor::explicit(bruhat_core::twisted::twisted_inversion(sys, &a, &tref).unwrap(), false);
        prop_assert_eq!(twisted_length_of(sys, &ta, &tref).unwrap(), -twisted_length_of(sys, &a, &tref).unwrap());
    }

    #[test]
    fn roots_keep_a_sign(id in preset(), w in word(24), r in any::<u32>()) {
        let sys = system(id);
        let x = element(id, &w);
        let r = r % sys.num_positive_roots() as u32;
        let img = sys.act(&x, SignedRoot::pos(r)).unwrap();
        let sign = sys.root(img.id).sign(sys.field());
        prop_assert_eq!(sign, 1);
    }
}
