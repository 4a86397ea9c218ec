//! Named forms, each built from the smallest stage that produces it.

use crate::d4::{build_d4, build_phi_m6_2};
use crate::error::Error;
use crate::f4::{build_chevalley_pair, build_f4_weights_m2_0, pin_weight_m6};
use crate::fj::FJSeries;
use crate::theta::{build_basic_forms, build_ez_0, build_ez_m2, build_omega, build_phi2, build_phi3};

pub const FORM_NAMES: [&str; 14] = [
    "omega_m4_1",
    "phi2_m4_1",
    "phi3_m4_1",
    "phi_m4_1",
    "ez_m2_1",
    "ez_0_1",
    "phi_0_1",
    "phi_m2_1",
    "phi_m6_2",
    "f4_phi_0_1",
    "f4_phi_m2_1",
    "f4_phi_m6_2",
    "f4_phi_m8_2",
    "f4_phi_m12_3",
];

pub fn is_known(name: &str) -> bool {
    FORM_NAMES.contains(&name)
}

/// Builds the named form through order `n`.
pub fn build(name: &str, n: usize) -> Result<FJSeries, Error> {
    let series = match name {
        "omega_m4_1" => build_omega(n)?,
        "phi2_m4_1" => build_phi2(n)?,
        "phi3_m4_1" => build_phi3(n)?,
        "phi_m4_1" => build_phi2(n)?.sub(&build_phi3(n)?)?,
        "ez_m2_1" => build_ez_m2(n)?,
        "ez_0_1" => build_ez_0(&build_ez_m2(n)?)?.0,
        "phi_m6_2" => build_phi_m6_2(&build_basic_forms(n)?)?.0,
        "f4_phi_m8_2" => build_chevalley_pair(&build_basic_forms(n)?)?.phi_m8_2,
        "f4_phi_m12_3" => build_chevalley_pair(&build_basic_forms(n)?)?.phi_m12_3,
        "f4_phi_m6_2" => pin_weight_m6(&build_chevalley_pair(&build_basic_forms(n)?)?.phi_m8_2)?.0,
        "phi_0_1" => build_d4(n)?.phi_0_1,
        "phi_m2_1" => build_d4(n)?.phi_m2_1,
        "f4_phi_m2_1" => build_f4_weights_m2_0(&build_d4(n)?)?.0,
        "f4_phi_0_1" => build_f4_weights_m2_0(&build_d4(n)?)?.1,
        _ => return Err(Error::UnknownForm(name.to_string())),
    };
    Ok(series)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tables;

    #[test]
    fn unknown_name() {
        assert_eq!(build("nosuchform", 1), Err(Error::UnknownForm("nosuchform".into())));
        assert!(!is_known("nosuchform"));
    }

    #[test]
    fn cheap_stages_match_tables() {
        assert_eq!(build("phi_m4_1", 0).unwrap().coeff(0), &tables::phi_m4_1());
        assert_eq!(build("phi_m6_2", 0).unwrap().coeff(0), &tables::phi_m6_2());
        assert_eq!(build("f4_phi_m8_2", 0).unwrap().coeff(0), &tables::f4_phi_m8_2());
        assert_eq!(build("f4_phi_m6_2", 0).unwrap().coeff(0), &tables::f4_phi_m6_2());
    }

    #[test]
    fn every_name_builds_with_declared_grading() {
        let expected =
            [(-4, 1), (-4, 1), (-4, 1), (-4, 1), (-2, 1), (0, 1), (0, 1), (-2, 1), (-6, 2), (0, 1), (-2, 1), (-6, 2), (-8, 2), (-12, 3)];
        for (name, (k, m)) in FORM_NAMES.iter().zip(expected) {
            let s = build(name, 1).unwrap();
            assert_eq!((s.weight(), s.index()), (k, m), "{name}");
        }
    }
}
