use std::sync::OnceLock;

use wjf_core::decompose::{DecomposeError, Decomposer};
use wjf_core::rational::{int, rat};
use wjf_core::weyl::{orbit_combination, orbit_coordinates};
use wjf_core::{
    build_d4, build_d4_with, build_f4, monomial_basis, tables, AugmentPolicy, D4Generators, Eisenstein, Expansion, F4Generators, FJSeries,
    GeneratorSet, Lattice, LaurentPoly, MonomialIndex, OrbitName,
};

const N: usize = 2;

fn gens() -> &'static (D4Generators, F4Generators) {
    static G: OnceLock<(D4Generators, F4Generators)> = OnceLock::new();
    G.get_or_init(|| {
        let d4 = build_d4(N).unwrap();
        let f4 = build_f4(&d4).unwrap();
        (d4, f4)
    })
}

fn e4() -> FJSeries {
    FJSeries::eisenstein(Eisenstein::E4, Lattice::D4, N)
}

fn d4_mono(e4: u32, gens: [u32; 5]) -> MonomialIndex {
    MonomialIndex::new(GeneratorSet::D4, e4, 0, gens)
}

#[test]
fn product_rows_match_tables() {
    let (d4, _) = gens();
    let (phi, omega) = (d4.phi_m4_1(), d4.omega());
    assert_eq!(d4.phi_m2_1.mul(phi).unwrap().coeff(0), &tables::phi_m2_1_times_phi_m4_1());
    assert_eq!(e4().mul(&omega.mul(omega).unwrap()).unwrap().coeff(0), &tables::e4_omega_sq());
    assert_eq!(e4().mul(&phi.mul(phi).unwrap()).unwrap().coeff(0), &tables::e4_phi_m4_1_sq());
    assert_eq!(d4.phi_m2_1.mul(&d4.phi_m2_1).unwrap().coeff(0), &tables::phi_m2_1_sq());
}

#[test]
fn phi_0_1_times_phi_m4_1_row_is_the_product_of_leading_rows() {
    let (d4, _) = gens();
    let got = d4.phi_0_1.mul(d4.phi_m4_1()).unwrap();
    let expected = &tables::phi_0_1() * &tables::phi_m4_1();
    assert_eq!(got.coeff(0), &expected);
    assert_eq!(orbit_coordinates(&expected).get(OrbitName::P44), int(24));
}

#[test]
fn printed_phi_0_1_times_phi_m4_1_row_differs_only_in_p44() {
    let (d4, _) = gens();
    let got = d4.phi_0_1.mul(d4.phi_m4_1()).unwrap();
    let diff = got.coeff(0) - &tables::phi_m4_1_times_phi_0_1_printed();
    let expected = orbit_combination(&[(OrbitName::P44, int(64))]);
    assert_eq!(diff, expected);
}

#[test]
fn f4_weight_m6_over_d4() {
    let (d4, f4) = gens();
    let dec = Decomposer::from_d4(d4);
    let result = dec.decompose(&f4.phi_m6_2).unwrap();
    assert!(result.residual.is_zero());
    assert_eq!(result.coefficients, vec![(d4_mono(0, [0, 0, 0, 0, 1]), rat(-3, 4)), (d4_mono(0, [0, 1, 1, 0, 0]), int(-1))]);
    assert_eq!(result.certificate.columns, 3);
    assert_eq!(result.certificate.rank, 3);
}

#[test]
fn heat_of_f4_weight_m6_over_d4() {
    let (d4, f4) = gens();
    let dec = Decomposer::from_d4(d4);
    let heat12 = f4.phi_m6_2.heat().unwrap().scale(&int(12));
    let result = dec.decompose(&heat12).unwrap();
    assert_eq!(
        result.coefficients,
        vec![(d4_mono(1, [0, 0, 0, 2, 0]), rat(15, 4)), (d4_mono(1, [0, 0, 2, 0, 0]), rat(5, 4)), (d4_mono(0, [0, 2, 0, 0, 0]), int(3)),]
    );
    assert_eq!(heat12.coeff(0), &tables::f4_heat_m6_times_12());
}

#[test]
fn report_constants() {
    let (d4, f4) = gens();
    assert_eq!(d4.report.ez_heat_scalar, int(-24));
    assert_eq!(d4.report.weight_m6_constants, [rat(-3, 4), int(-1)]);
    assert_eq!(d4.report.phi_0_1_constants, [int(4), rat(1, 3)]);
    assert_eq!(f4.report.m6_heat_scalar, int(12));
    assert_eq!(f4.report.m4_subtraction, [int(12), int(3)]);
    assert_eq!(f4.report.phi_0_1_heat_scalar, int(6));
    assert_eq!(f4.report.phi_0_1_constants, [rat(3, 2), rat(-1, 2)]);
}

#[test]
fn weight_m4_index_2_cell() {
    let basis = monomial_basis(-4, 2, GeneratorSet::D4);
    let names: Vec<String> = basis.iter().map(|m| m.to_string()).collect();
    assert_eq!(
        names,
        ["E4*omega_m4_1^2", "E4*phi_m4_1*omega_m4_1", "E4*phi_m4_1^2", "phi_m2_1^2", "phi_0_1*omega_m4_1", "phi_0_1*phi_m4_1"]
    );
    let dec = Decomposer::from_d4(&gens().0);
    let cell = dec.cell_rank(-4, 2).unwrap();
    assert_eq!((cell.certificate.columns, cell.certificate.rank), (6, 6));
    let cell = dec.cell_rank(-6, 2).unwrap();
    assert_eq!((cell.certificate.columns, cell.certificate.rank), (3, 3));
}

#[test]
fn index_zero_cells_have_rank_equal_to_count() {
    let dec = Decomposer::from_f4(&gens().1);
    let report = wjf_core::independence_certificate(&dec, 0, 12, 0).unwrap();
    assert!(report.cells.iter().all(|c| c.index == 0));
    assert_eq!(report.cells.iter().map(|c| c.weight).collect::<Vec<_>>(), [0, 4, 6, 8, 10, 12]);
    assert!(report.passed());
    let twelve = report.cells.iter().find(|c| c.weight == 12).unwrap();
    assert_eq!(twelve.certificate.columns, 2);
}

#[test]
fn non_invariant_input_is_rejected() {
    let (d4, f4) = gens();
    let dec = Decomposer::from_f4(f4);
    assert!(matches!(dec.decompose(&d4.basic.phi2), Err(DecomposeError::NotInvariant { .. })));
    assert!(matches!(dec.decompose(d4.omega()), Err(DecomposeError::NotInvariant { .. })));
}

#[test]
fn invariant_series_outside_the_span_has_no_solution() {
    let (d4, _) = gens();
    let dec = Decomposer::from_d4(d4);
    let p1 = orbit_combination(&[(OrbitName::P1, int(1))]);
    let mut coeffs = vec![LaurentPoly::zero(); N + 1];
    coeffs[0] = p1;
    let fake = FJSeries::new(-4, 1, Lattice::D4, Expansion::new(0, coeffs)).unwrap();
    match dec.decompose(&fake) {
        Err(DecomposeError::NoSolution { n, .. }) => assert_eq!(n, 0),
        other => panic!("expected NoSolution, got {other:?}"),
    }
}

#[test]
fn short_truncation_is_flagged_rank_deficient() {
    let d4 = build_d4(0).unwrap();
    let dec = Decomposer::from_d4(&d4);
    let e4_cubed = FJSeries::eisenstein(Eisenstein::E4, Lattice::D4, 0).pow(3);
    match dec.decompose(&e4_cubed) {
        Err(DecomposeError::RankDeficient { result, nullity }) => {
            assert_eq!(nullity, 1);
            assert!(result.residual.is_zero());
        }
        other => panic!("expected RankDeficient, got {other:?}"),
    }
}

#[test]
fn restriction_to_d3_keeps_the_advertised_generators() {
    let (d4, _) = gens();
    assert!(d4.omega().restrict_z4().unwrap().is_zero());
    for s in [&d4.phi_0_1, &d4.phi_m2_1, d4.phi_m4_1(), &d4.phi_m6_2] {
        let r = s.restrict_z4().unwrap();
        assert_eq!(r.lattice(), Lattice::D3);
        assert!(!r.is_zero());
    }
}

#[test]
fn f4_weight_m2_generator_is_the_d4_one() {
    let (d4, f4) = gens();
    assert_eq!(f4.phi_m2_1, d4.phi_m2_1);
    let e4phi = e4().mul(d4.phi_m4_1()).unwrap();
    assert_eq!(f4.phi_0_1.scale(&int(2)), d4.phi_0_1.scale(&int(3)).sub(&e4phi).unwrap());
}

#[test]
fn p1_times_p44_counts_128_products() {
    let (p1, p44) = (OrbitName::P1.poly(), OrbitName::P44.poly());
    assert_eq!((p1.len(), p44.len()), (8, 16));
    let prod = &p1 * &p44;
    let (ones, fours): (Vec<_>, Vec<_>) = prod.terms().iter().partition(|(_, c)| *c == int(1));
    assert_eq!((ones.len(), fours.len()), (64, 16));
    assert!(fours.iter().all(|(_, c)| *c == int(4)));
    let total: wjf_core::Rational = prod.terms().iter().map(|(_, c)| c.clone()).sum();
    assert_eq!(total, int(128));
}

#[test]
fn solver_policies_agree() {
    let (d4, _) = gens();
    let always = build_d4_with(N, AugmentPolicy::Always).unwrap();
    assert_eq!(always.phi_m2_1, d4.phi_m2_1);
    assert_eq!(always.phi_0_1, d4.phi_0_1);
}
