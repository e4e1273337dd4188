use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use superfunc::bases::{convert, mono_product, mono_product_realized, Basis};
use superfunc::inner::{form_beta, BetaMode};
use superfunc::operators::{dunkl_apply, pspace_apply, random_expansion, random_poly, PSpaceOp};
use superfunc::superpartition::{enumerate, order_leq, OrderKind};
use superfunc::{RatFunc, SuperPartition};

fn superpartition(n_max: u32, m_max: u32) -> impl Strategy<Value = SuperPartition> {
    (0..=n_max, 0..=m_max, any::<prop::sample::Index>()).prop_filter_map("empty sector", |(n, m, pick)| {
        let all = enumerate(n, m, None);
        (!all.is_empty()).then(|| all[pick.index(all.len())].clone())
    })
}

fn basis() -> impl Strategy<Value = Basis> {
    prop::sample::select(Basis::CLASSICAL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn conjugation_is_an_involution(lambda in superpartition(9, 4)) {
        let conj = lambda.conjugate();
        prop_assert_eq!(conj.bidegree(), lambda.bidegree());
        prop_assert_eq!(conj.conjugate(), lambda);
    }

    #[test]
    fn parse_display_round_trip(lambda in superpartition(9, 4)) {
        let text = lambda.to_string();
        prop_assert_eq!(text.parse::<SuperPartition>().unwrap(), lambda);
    }

    #[test]
    fn conjugation_reverses_bruhat(a in superpartition(6, 3), b_pick in any::<prop::sample::Index>()) {
        let (n, m) = a.bidegree();
        let all = enumerate(n, m, None);
        let b = &all[b_pick.index(all.len())];
        prop_assert_eq!(
            order_leq(OrderKind::Bruhat, &a, b),
            order_leq(OrderKind::Bruhat, &b.conjugate(), &a.conjugate())
        );
    }

    #[test]
    fn products_super_commute(a in superpartition(3, 2), b in superpartition(3, 2)) {
        let ab = mono_product(&a, &b);
        let ba = mono_product(&b, &a);
        let sign = if (a.m() * b.m()) % 2 == 0 { 1 } else { -1 };
        for (gamma, c) in ab.iter() {
            prop_assert_eq!(ba.get(gamma).cloned().unwrap_or_default(), c * sign);
        }
        prop_assert_eq!(ab.len(), ba.len());
    }

    #[test]
    fn fillings_match_realization(a in superpartition(3, 2), b in superpartition(3, 1)) {
        let fill = mono_product(&a, &b);
        let realized = mono_product_realized(&a, &b).unwrap();
        prop_assert_eq!(fill.len(), realized.len());
        for (gamma, c) in fill.iter() {
            prop_assert_eq!(&RatFunc::from_bigint(c.clone()), &realized[gamma]);
        }
    }

    #[test]
    fn conversions_round_trip(from in basis(), to in basis(), n in 0u32..=4, m in 0u32..=2, seed in any::<u64>()) {
        prop_assume!(!enumerate(n, m, None).is_empty());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_expansion(&mut rng, from, n, m);
        let back = convert(&convert(&f, to).unwrap(), from).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn form_is_symmetric(n in 0u32..=4, m in 0u32..=2, seed in any::<u64>()) {
        prop_assume!(!enumerate(n, m, None).is_empty());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_expansion(&mut rng, Basis::M, n, m);
        let g = random_expansion(&mut rng, Basis::E, n, m);
        let mode = BetaMode::Symbolic;
        prop_assert_eq!(form_beta(&f, &g, &mode).unwrap(), form_beta(&g, &f, &mode).unwrap());
    }

    #[test]
    fn pspace_operators_are_self_adjoint(n in 0u32..=4, m in 0u32..=2, seed in any::<u64>()) {
        prop_assume!(!enumerate(n, m, None).is_empty());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n_vars = (n + m + 1) as usize;
        let f = random_expansion(&mut rng, Basis::P, n, m);
        let g = random_expansion(&mut rng, Basis::P, n, m);
        let mode = BetaMode::Symbolic;
        for op in [PSpaceOp::H, PSpaceOp::I] {
            let left = form_beta(&pspace_apply(op, &f, n_vars).unwrap(), &g, &mode).unwrap();
            let right = form_beta(&f, &pspace_apply(op, &g, n_vars).unwrap(), &mode).unwrap();
            prop_assert_eq!(left, right);
        }
    }

    #[test]
    fn dunkl_operators_commute(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_poly(&mut rng, 3, 2, 4);
        for i in 1..=3 {
            for j in i + 1..=3 {
                let a = dunkl_apply(i, &dunkl_apply(j, &f).unwrap()).unwrap();
                let b = dunkl_apply(j, &dunkl_apply(i, &f).unwrap()).unwrap();
                prop_assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn reciprocal_substitution_is_an_involution(a in -5i64..=5, c in -5i64..=5, d in 1i64..=4) {
        let f = &RatFunc::linear(a, c) / &RatFunc::linear(1, d);
        prop_assert_eq!(f.at_reciprocal_beta().at_reciprocal_beta(), f);
    }
}
