//! Leading (`q⁰`) terms of the generators and of selected products, as orbit
//! combinations.

use crate::laurent::LaurentPoly;
use crate::rational::{int, Rational};
use crate::weyl::orbit_combination;
use crate::weyl::OrbitName::{self, *};

fn row(parts: &[(OrbitName, i64)]) -> LaurentPoly {
    let parts: Vec<(OrbitName, Rational)> = parts.iter().map(|(n, c)| (*n, int(*c))).collect();
    orbit_combination(&parts)
}

pub fn phi_0_1() -> LaurentPoly {
    row(&[(Q0, 32), (P44, 1)])
}

pub fn phi_m2_1() -> LaurentPoly {
    row(&[(Q0, 24), (P1, -1), (P44, -1)])
}

pub fn phi_m4_1() -> LaurentPoly {
    row(&[(P1, -2), (P44, 1)])
}

pub fn omega_m4_1() -> LaurentPoly {
    row(&[(P44p, 1), (P44m, -1)])
}

pub fn phi_m6_2() -> LaurentPoly {
    row(&[(Q0, -320), (P1, 112), (Q2, -32), (P3, 4), (Q41, 4)])
}

pub fn phi2_m4_1() -> LaurentPoly {
    row(&[(P1, -1), (P44p, 1)])
}

pub fn phi3_m4_1() -> LaurentPoly {
    row(&[(P1, 1), (P44m, -1)])
}

pub fn f4_phi_m8_2() -> LaurentPoly {
    row(&[(Q0, 24), (P1, -4), (P44, -4), (Q2, 6), (P3, -1), (P124, -1), (Q4, 1)])
}

/// Leading term of `12 H_{-8}(φ^{F4}_{-8,2})`, which fixes `φ^{F4}_{-6,2}`.
pub fn f4_phi_m6_2() -> LaurentPoly {
    row(&[(Q0, 240), (P1, -28), (P44, -28), (Q2, 24), (P3, -1), (P124, -1), (Q4, -2)])
}

pub fn f4_phi_0_1() -> LaurentPoly {
    row(&[(Q0, 48), (P1, 1), (P44, 1)])
}

/// `12` times the leading term of `H_{-6}(φ^{F4}_{-6,2})`.
pub fn f4_heat_m6_times_12() -> LaurentPoly {
    row(&[(Q0, 1920), (P1, -140), (P44, -140), (Q2, 48), (P3, 1), (P124, 1), (Q4, 8)])
}

pub fn phi_m2_1_times_phi_m4_1() -> LaurentPoly {
    row(&[(P1, -56), (P44, 28), (P3, -2), (P124, 1), (Q41, -1), (Q42, 2)])
}

pub fn e4_omega_sq() -> LaurentPoly {
    row(&[(Q0, 16), (P1, -8), (Q2, 4), (P3, -2), (Q41, 1)])
}

pub fn e4_phi_m4_1_sq() -> LaurentPoly {
    row(&[(Q0, 48), (P1, 8), (P44, -16), (Q2, 12), (P3, 2), (P124, -4), (Q41, 1), (Q42, 4)])
}

pub fn phi_m2_1_sq() -> LaurentPoly {
    row(&[(Q0, 600), (P1, -40), (P44, -40), (Q2, 6), (P3, 2), (P124, 2), (Q4, 1)])
}

/// As printed; the `P44` coefficient disagrees with the product of the
/// generator rows (which gives `+24`).
pub fn phi_m4_1_times_phi_0_1_printed() -> LaurentPoly {
    row(&[(Q0, 16), (P1, -56), (P44, -40), (Q2, 4), (P3, 2), (P124, -2), (Q41, 1)])
}
