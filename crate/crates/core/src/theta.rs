//! Odd Jacobi theta series along linear forms and the theta-quotient forms
//! built from them.
//!
//! `ϑ(τ,z) = q^{1/8} Σ_{n∈Z} (−1)^n q^{n(n+1)/2} ζ^{n+1/2}`.

use crate::fj::{Expansion, FJSeries, Lattice};
use crate::identity::{pin_q0, BuildError};
use crate::laurent::{Exponent, LaurentPoly};
use crate::qseries::eta_power;
use crate::rational::{int, Rational};

/// The map `𝔷 ↦ Σ c_i z_i`, stored as `2 c_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LinearForm(pub [i32; 4]);

impl LinearForm {
    pub fn from_halves(h: [i32; 4]) -> Self {
        LinearForm(h)
    }

    pub fn coordinate(i: usize) -> Self {
        let mut h = [0; 4];
        h[i] = 2;
        LinearForm(h)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        Rational::new(self.0[i].into(), 2.into())
    }
}

/// `ϑ(τ, ℓ(𝔷))` through relative order `n`; offset `1/8`.
///
/// The term for `k` sits at relative order `k(k+1)/2` with exponent
/// `(k + 1/2) ℓ`, i.e. scaled exponent `(2k+1) · 2ℓ`.
pub fn theta_series(form: LinearForm, n: usize) -> Expansion {
    let mut by_order: Vec<Vec<(Exponent, Rational)>> = vec![Vec::new(); n + 1];
    let bound = n as i64 + 2;
    for k in -bound..=bound {
        let order = k * (k + 1) / 2;
        if order < 0 || order as usize > n {
            continue;
        }
        let odd = (2 * k + 1) as i32;
        let e = Exponent(form.0.map(|h| odd * h));
        let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        by_order[order as usize].push((e, int(sign)));
    }
    Expansion::new(3, by_order.into_iter().map(LaurentPoly::from_terms).collect())
}

/// `∏ ϑ(ℓ_i) · η^{eta}` as a graded series; the offset must cancel.
pub fn theta_quotient(
    name: &str,
    forms: &[LinearForm],
    eta: i64,
    weight: i32,
    index: u32,
    lattice: Lattice,
    n: usize,
) -> Result<FJSeries, BuildError> {
    let mut exp = Expansion::from_qseries(&eta_power(eta, n));
    for f in forms {
        exp = exp.mul(&theta_series(*f, n));
    }
    if exp.offset24 != 0 {
        return Err(BuildError::OffsetResidue { form: name.to_string(), offset24: exp.offset24 });
    }
    Ok(FJSeries::new(weight, index, lattice, exp)?)
}

/// The weight −4 index 1 theta products on D4 and the Eichler–Zagier A1 forms.
#[derive(Debug, Clone)]
pub struct BasicForms {
    pub omega: FJSeries,
    pub phi2: FJSeries,
    pub phi3: FJSeries,
    pub phi: FJSeries,
    pub ez_m2: FJSeries,
    pub ez_0: FJSeries,
    /// `c` with `φ^{EZ}_{0,1} = c · H_{-2}(φ^{EZ}_{-2,1})`.
    pub ez_heat_scalar: Rational,
}

const PHI2_FORMS: [[i32; 4]; 4] = [[-1, 1, 1, 1], [1, -1, 1, 1], [1, 1, -1, 1], [1, 1, 1, -1]];
const PHI3_FORMS: [[i32; 4]; 4] = [[1, 1, 1, 1], [1, -1, -1, 1], [1, 1, -1, -1], [1, -1, 1, -1]];

pub fn build_omega(n: usize) -> Result<FJSeries, BuildError> {
    let forms: Vec<LinearForm> = (0..4).map(LinearForm::coordinate).collect();
    theta_quotient("omega_m4_1", &forms, -12, -4, 1, Lattice::D4, n)
}

pub fn build_phi2(n: usize) -> Result<FJSeries, BuildError> {
    let forms: Vec<LinearForm> = PHI2_FORMS.iter().map(|h| LinearForm(*h)).collect();
    theta_quotient("phi2_m4_1", &forms, -12, -4, 1, Lattice::D4, n)
}

pub fn build_phi3(n: usize) -> Result<FJSeries, BuildError> {
    let forms: Vec<LinearForm> = PHI3_FORMS.iter().map(|h| LinearForm(*h)).collect();
    theta_quotient("phi3_m4_1", &forms, -12, -4, 1, Lattice::D4, n)
}

/// `φ^{EZ}_{-2,1} = ϑ(τ,z)² / η⁶`.
pub fn build_ez_m2(n: usize) -> Result<FJSeries, BuildError> {
    let z = LinearForm::coordinate(0);
    theta_quotient("ez_m2_1", &[z, z], -6, -2, 1, Lattice::A1, n)
}

/// `ζ + 10 + ζ^{-1}`.
pub fn ez_0_q0() -> LaurentPoly {
    LaurentPoly::from_terms([
        (Exponent::from_ints([1, 0, 0, 0]), int(1)),
        (Exponent::ZERO, int(10)),
        (Exponent::from_ints([-1, 0, 0, 0]), int(1)),
    ])
}

/// Heat image of `φ^{EZ}_{-2,1}`, pinned to the leading term `ζ + 10 + ζ^{-1}`.
pub fn build_ez_0(ez_m2: &FJSeries) -> Result<(FJSeries, Rational), BuildError> {
    pin_q0("ez_0_1", &ez_m2.heat()?, &ez_0_q0())
}

pub fn build_basic_forms(n: usize) -> Result<BasicForms, BuildError> {
    let omega = build_omega(n)?;
    let phi2 = build_phi2(n)?;
    let phi3 = build_phi3(n)?;
    let phi = phi2.sub(&phi3)?;
    let ez_m2 = build_ez_m2(n)?;
    let (ez_0, ez_heat_scalar) = build_ez_0(&ez_m2)?;
    Ok(BasicForms { omega, phi2, phi3, phi, ez_m2, ez_0, ez_heat_scalar })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::weyl::OrbitName::*;
    use crate::weyl::{orbit_combination, OrbitName};

    fn oc(parts: &[(OrbitName, i64)]) -> LaurentPoly {
        orbit_combination(&parts.iter().map(|(n, c)| (*n, int(*c))).collect::<Vec<_>>())
    }

    #[test]
    fn theta_leading_terms() {
        let t = theta_series(LinearForm::coordinate(0), 1);
        assert_eq!(t.offset24, 3);
        let half = Exponent::from_halves([1, 0, 0, 0]);
        let three_half = Exponent::from_halves([3, 0, 0, 0]);
        assert_eq!(t.coeffs[0].coeff(&half), int(1));
        assert_eq!(t.coeffs[0].coeff(&-half), int(-1));
        assert_eq!(t.coeffs[1].coeff(&three_half), int(-1));
        assert_eq!(t.coeffs[1].coeff(&-three_half), int(1));
    }

    #[test]
    fn theta_of_zero_form_vanishes() {
        assert!(theta_series(LinearForm([0; 4]), 4).is_zero());
    }

    #[test]
    fn q0_rows() {
        let b = build_basic_forms(0).unwrap();
        assert_eq!(b.omega.coeff(0), &oc(&[(P44p, 1), (P44m, -1)]));
        assert_eq!(b.phi2.coeff(0), &oc(&[(P1, -1), (P44p, 1)]));
        assert_eq!(b.phi3.coeff(0), &oc(&[(P1, 1), (P44m, -1)]));
        assert_eq!(b.phi.coeff(0), &oc(&[(P1, -2), (P44, 1)]));
        let ez = LaurentPoly::from_terms([
            (Exponent::from_ints([1, 0, 0, 0]), int(1)),
            (Exponent::ZERO, int(-2)),
            (Exponent::from_ints([-1, 0, 0, 0]), int(1)),
        ]);
        assert_eq!(b.ez_m2.coeff(0), &ez);
        assert_eq!(b.ez_0.coeff(0), &ez_0_q0());
        assert_eq!(b.ez_heat_scalar, int(-24));
    }

    #[test]
    fn omega_plus_phi_is_twice_phi2() {
        let b = build_basic_forms(3).unwrap();
        assert_eq!(b.phi.add(&b.omega).unwrap(), b.phi2.scale(&int(2)));
    }

    #[test]
    fn ez_forms_match_known_coefficients() {
        let b = build_basic_forms(2).unwrap();
        let r = |k: i32| Exponent::from_ints([k, 0, 0, 0]);
        // φ_{-2,1} q¹: −2ζ² + 8ζ − 12 + 8ζ⁻¹ − 2ζ⁻².
        for (k, c) in [(2, -2), (1, 8), (0, -12), (-1, 8), (-2, -2)] {
            assert_eq!(b.ez_m2.coeff(1).coeff(&r(k)), int(c));
        }
        // φ_{0,1} q¹: 10ζ² − 64ζ + 108 − 64ζ⁻¹ + 10ζ⁻².
        for (k, c) in [(2, 10), (1, -64), (0, 108), (-1, -64), (-2, 10)] {
            assert_eq!(b.ez_0.coeff(1).coeff(&r(k)), int(c));
        }
        assert_ne!(b.ez_heat_scalar, rat(1, 1));
    }
}
