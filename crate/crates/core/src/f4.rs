//! The W(F4)-invariant generators, realised as O(D4)-invariant D4 forms, and
//! the identities relating them to the D4 generators.

use num_traits::Zero;

use crate::d4::D4Generators;
use crate::fj::{FJSeries, Lattice};
use crate::identity::{expect_equal, format_constants, pin_q0, solve_poly_combination, solve_series_combination, BuildError};
use crate::qseries::Eisenstein;
use crate::rational::{int, rat, Rational};
use crate::tables;
use crate::theta::BasicForms;

/// The degree 2 and 3 invariants of the triality action on `(φ^{(2)}, φ^{(3)})`.
#[derive(Debug, Clone)]
pub struct ChevalleyPair {
    pub phi_m8_2: FJSeries,
    pub phi_m12_3: FJSeries,
}

/// Builds `φ^{F4}_{-8,2}` and `φ^{F4}_{-12,3}` from `(φ^{(2)}, φ^{(3)})` and
/// independently from `(φ_{-4,1}, ω)`, and checks that both agree.
pub fn build_chevalley_pair(basic: &BasicForms) -> Result<ChevalleyPair, BuildError> {
    let (p2, p3) = (&basic.phi2, &basic.phi3);
    let p2p2 = p2.mul(p2)?;
    let p3p3 = p3.mul(p3)?;
    let p2p3 = p2.mul(p3)?;
    // φ2² + φ2φ3 + φ3²
    let m8_a = p2p2.add(&p2p3)?.add(&p3p3)?;
    // (2φ2³ + 3φ2²φ3 − 3φ2φ3² − 2φ3³) / 2
    let m12_a = p2p2
        .mul(p2)?
        .scale(&int(2))
        .add(&p2p2.mul(p3)?.scale(&int(3)))?
        .sub(&p3p3.mul(p2)?.scale(&int(3)))?
        .sub(&p3p3.mul(p3)?.scale(&int(2)))?
        .scale(&rat(1, 2));

    let w2 = basic.omega.mul(&basic.omega)?;
    let f2 = basic.phi.mul(&basic.phi)?;
    // (3ω² + φ²) / 4
    let m8_b = w2.scale(&int(3)).add(&f2)?.scale(&rat(1, 4));
    // φ(9ω² − φ²) / 8
    let m12_b = basic.phi.mul(&w2.scale(&int(9)).sub(&f2)?)?.scale(&rat(1, 8));

    if let Some(diff) = m8_a.first_difference(&m8_b) {
        return Err(BuildError::ChevalleyMismatch { form: "f4_phi_m8_2".into(), diff: Box::new(diff) });
    }
    if let Some(diff) = m12_a.first_difference(&m12_b) {
        return Err(BuildError::ChevalleyMismatch { form: "f4_phi_m12_3".into(), diff: Box::new(diff) });
    }
    Ok(ChevalleyPair { phi_m8_2: m8_a, phi_m12_3: m12_a })
}

/// `H_{-8}(φ^{F4}_{-8,2})` rescaled to the tabulated leading term; returns the
/// scalar applied.
pub fn pin_weight_m6(phi_m8_2: &FJSeries) -> Result<(FJSeries, Rational), BuildError> {
    pin_q0("f4_phi_m6_2", &phi_m8_2.heat()?, &tables::f4_phi_m6_2())
}

/// Constants found while building the F4 set, next to the reference values
/// they are compared with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct F4Report {
    /// `s` with `φ^{F4}_{-6,2} = s · H_{-8}(φ^{F4}_{-8,2})`; reference `12`.
    pub m6_heat_scalar: Rational,
    /// `(α, β)` with `φ^{F4}_{-6,2} = α φ_{-6,2} + β φ_{-2,1}φ_{-4,1}`; reference `(−3/4, −1)`.
    pub m6_constants: [Rational; 2],
    /// `(s, r)` with `s · H_{-6}(φ^{F4}_{-6,2}) − 5 E4 φ^{F4}_{-8,2} = r φ_{-2,1}²`.
    pub m4_subtraction: [Rational; 2],
    /// `t` with `φ^{F4}_{0,1} = t · H_{-2}(φ_{-2,1})`; reference `6`.
    pub phi_0_1_heat_scalar: Rational,
    /// `(x, y)` with `φ^{F4}_{0,1} = x φ_{0,1} + y E4 φ_{-4,1}`; reference `(3/2, −1/2)`.
    pub phi_0_1_constants: [Rational; 2],
}

impl F4Report {
    pub fn lines(&self) -> Vec<String> {
        vec![
            format!("f4_phi_m6_2 heat scalar: {} (reference 12)", format_constants(std::slice::from_ref(&self.m6_heat_scalar))),
            format!("f4_phi_m6_2 over (phi_m6_2, phi_m2_1*phi_m4_1): {} (reference -3/4, -1)", format_constants(&self.m6_constants)),
            format!("s*H(f4_phi_m6_2) - 5*E4*f4_phi_m8_2 = r*phi_m2_1^2, (s, r): {}", format_constants(&self.m4_subtraction)),
            format!("f4_phi_0_1 heat scalar: {} (reference 6)", format_constants(std::slice::from_ref(&self.phi_0_1_heat_scalar))),
            format!("f4_phi_0_1 over (phi_0_1, E4*phi_m4_1): {} (reference 3/2, -1/2)", format_constants(&self.phi_0_1_constants)),
        ]
    }
}

#[derive(Debug, Clone)]
pub struct F4Generators {
    pub phi_0_1: FJSeries,
    pub phi_m2_1: FJSeries,
    pub phi_m6_2: FJSeries,
    pub phi_m8_2: FJSeries,
    pub phi_m12_3: FJSeries,
    pub report: F4Report,
}

impl F4Generators {
    /// In the order `φ_{0,1}, φ_{-2,1}, φ_{-6,2}, φ_{-8,2}, φ_{-12,3}`.
    pub fn all(&self) -> [&FJSeries; 5] {
        [&self.phi_0_1, &self.phi_m2_1, &self.phi_m6_2, &self.phi_m8_2, &self.phi_m12_3]
    }
}

/// Checks `φ^{F4}_{-6,2} = α φ_{-6,2} + β φ_{-2,1}φ_{-4,1}` with `(α, β)`
/// solved from the leading terms.
pub fn weight_m6_decomposition(d4: &D4Generators) -> Result<[Rational; 2], BuildError> {
    let g = &d4.f4_phi_m6_2;
    let fphi = d4.phi_m2_1.mul(d4.phi_m4_1())?;
    let x = solve_poly_combination(g.coeff(0), &[d4.phi_m6_2.coeff(0), fphi.coeff(0)])
        .map_err(|e| BuildError::NormalizationMismatch { form: "f4_phi_m6_2".into(), detail: e.to_string() })?;
    let rhs = d4.phi_m6_2.scale(&x[0]).add(&fphi.scale(&x[1]))?;
    expect_equal("f4.m6.decomposition", g, &rhs)?;
    Ok([x[0].clone(), x[1].clone()])
}

/// Solves `s · H_{-6}(φ^{F4}_{-6,2}) − r φ_{-2,1}² = 5 E4 φ^{F4}_{-8,2}` for
/// `(s, r)` over the whole series.
pub fn weight_m4_subtraction(d4: &D4Generators) -> Result<[Rational; 2], BuildError> {
    let n = d4.n;
    let heat = d4.f4_phi_m6_2.heat()?;
    let e4 = FJSeries::eisenstein(Eisenstein::E4, Lattice::D4, n);
    let target = e4.mul(&d4.chevalley.phi_m8_2)?.scale(&int(5));
    let f2 = d4.phi_m2_1.mul(&d4.phi_m2_1)?;
    let x = solve_series_combination(&target, &[&heat, &f2])
        .map_err(|e| BuildError::ProportionalityFailure { id: "f4.m4.subtraction".into(), detail: e.to_string() })?;
    if x[1].is_zero() {
        return Err(BuildError::ProportionalityFailure {
            id: "f4.m4.subtraction".into(),
            detail: "difference vanishes instead of being a nonzero multiple of phi_m2_1^2".into(),
        });
    }
    Ok([x[0].clone(), -x[1].clone()])
}

pub fn build_f4_weight_m6(d4: &D4Generators) -> Result<(FJSeries, [Rational; 2]), BuildError> {
    let constants = weight_m6_decomposition(d4)?;
    Ok((d4.f4_phi_m6_2.clone(), constants))
}

type WeightsM2And0 = (FJSeries, FJSeries, [Rational; 2], Rational, [Rational; 2]);

/// `φ^{F4}_{-2,1} = φ_{-2,1}` once the weight −4 subtraction is confirmed, and
/// `φ^{F4}_{0,1}` as the pinned heat image of it.
pub fn build_f4_weights_m2_0(d4: &D4Generators) -> Result<WeightsM2And0, BuildError> {
    let subtraction = weight_m4_subtraction(d4)?;
    let phi_m2_1 = d4.phi_m2_1.clone();
    let (phi_0_1, scalar) = pin_q0("f4_phi_0_1", &phi_m2_1.heat()?, &tables::f4_phi_0_1())?;
    let e4phi = FJSeries::eisenstein(Eisenstein::E4, Lattice::D4, d4.n).mul(d4.phi_m4_1())?;
    let x = solve_series_combination(&phi_0_1, &[&d4.phi_0_1, &e4phi])
        .map_err(|e| BuildError::ProportionalityFailure { id: "f4.phi_0_1.decomposition".into(), detail: e.to_string() })?;
    Ok((phi_m2_1, phi_0_1, subtraction, scalar, [x[0].clone(), x[1].clone()]))
}

pub fn build_f4(d4: &D4Generators) -> Result<F4Generators, BuildError> {
    let (phi_m6_2, m6_constants) = build_f4_weight_m6(d4)?;
    let (phi_m2_1, phi_0_1, m4_subtraction, phi_0_1_heat_scalar, phi_0_1_constants) = build_f4_weights_m2_0(d4)?;
    Ok(F4Generators {
        phi_0_1,
        phi_m2_1,
        phi_m6_2,
        phi_m8_2: d4.chevalley.phi_m8_2.clone(),
        phi_m12_3: d4.chevalley.phi_m12_3.clone(),
        report: F4Report {
            m6_heat_scalar: d4.report.f4_m6_heat_scalar.clone(),
            m6_constants,
            m4_subtraction,
            phi_0_1_heat_scalar,
            phi_0_1_constants,
        },
    })
}
