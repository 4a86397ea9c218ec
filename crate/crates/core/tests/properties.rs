use std::sync::OnceLock;

use proptest::prelude::*;
use wjf_core::decompose::{canonical_polynomial, Decomposer};
use wjf_core::format;
use wjf_core::rational::rat;
use wjf_core::theta::{build_basic_forms, BasicForms};
use wjf_core::weyl::{enumerate, group_generators};
use wjf_core::{build_d4, monomial_basis, D4Generators, FJSeries, GeneratorSet, Group, GroupElement, MonomialIndex, Rational};

const N: usize = 2;

fn basic() -> &'static BasicForms {
    static B: OnceLock<BasicForms> = OnceLock::new();
    B.get_or_init(|| build_basic_forms(3).unwrap())
}

fn d4() -> &'static D4Generators {
    static D: OnceLock<D4Generators> = OnceLock::new();
    D.get_or_init(|| build_d4(N).unwrap())
}

fn od4() -> &'static [GroupElement] {
    static G: OnceLock<Vec<GroupElement>> = OnceLock::new();
    G.get_or_init(|| enumerate(&group_generators(Group::OD4)).unwrap())
}

fn weight_m4_forms() -> [&'static FJSeries; 4] {
    let b = basic();
    [&b.omega, &b.phi2, &b.phi3, &b.phi]
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=20).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn heat_is_linear(i in 0usize..4, j in 0usize..4, a in small_rational(), b in small_rational()) {
        let f = weight_m4_forms();
        let combo = f[i].scale(&a).add(&f[j].scale(&b)).unwrap();
        let lhs = combo.heat().unwrap();
        let rhs = f[i].heat().unwrap().scale(&a).add(&f[j].heat().unwrap().scale(&b)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn action_respects_support_and_composition(i in 0usize..4, a in 0usize..1152, b in 0usize..1152) {
        let phi = weight_m4_forms()[i];
        let (ga, gb) = (&od4()[a], &od4()[b]);
        let moved = phi.act(ga).unwrap();
        let rebuilt = FJSeries::new(moved.weight(), moved.index(), moved.lattice(), moved.expansion().clone());
        prop_assert!(rebuilt.is_ok());
        prop_assert_eq!(moved.term_count(), phi.term_count());
        let two_step = moved.act(gb).unwrap();
        prop_assert_eq!(two_step, phi.act(&ga.compose(gb)).unwrap());
    }

    #[test]
    fn decomposition_ignores_monomial_order(
        cell in 0usize..6,
        picks in proptest::collection::vec((0usize..64, small_rational()), 1..6),
        seed in any::<u64>(),
    ) {
        let cells = [(-8, 2), (-6, 2), (-4, 2), (-2, 2), (-4, 1), (2, 1)];
        let (k, m) = cells[cell];
        let basis = monomial_basis(k, m, GeneratorSet::D4);
        let poly: Vec<(MonomialIndex, Rational)> =
            picks.iter().map(|(idx, c)| (basis[idx % basis.len()], c.clone())).collect();
        let mut shuffled = poly.clone();
        let shift = (seed as usize) % shuffled.len();
        shuffled.rotate_left(shift);
        shuffled.reverse();

        let dec = Decomposer::from_d4(d4());
        let a = dec.expand(&poly).unwrap();
        let b = dec.expand(&shuffled).unwrap();
        prop_assert_eq!(&a, &b);
        let canonical = canonical_polynomial(&poly);
        if canonical.is_empty() {
            prop_assert!(a.is_zero());
        } else {
            let ra = dec.decompose(&a).unwrap();
            prop_assert_eq!(&ra.coefficients, &canonical);
            prop_assert_eq!(ra, dec.decompose(&b).unwrap());
        }
    }

    #[test]
    fn form_files_round_trip(i in 0usize..4, c in small_rational(), n in 0usize..=3) {
        let phi = weight_m4_forms()[i].scale(&c).truncate(n);
        let text = format::to_string(&phi);
        let back = format::parse(&text).unwrap();
        prop_assert_eq!(format::to_string(&back), text);
        prop_assert_eq!(back, phi);
    }
}

#[test]
fn ez_product_is_omega_squared() {
    let b = basic();
    let ez = &b.ez_m2;
    let prod = FJSeries::tensor_a1([ez, ez, ez, ez]).unwrap().as_d4().unwrap();
    assert_eq!(prod, b.omega.mul(&b.omega).unwrap());
}

#[test]
fn generators_are_invariant_under_their_groups() {
    let d4 = d4();
    for g in group_generators(Group::WD4) {
        for s in d4.all() {
            assert_eq!(&s.act(&g).unwrap(), s, "{}", g.name());
        }
    }
}
