//! Line-oriented verification suites over the built-in forms.

use std::fmt;
use std::str::FromStr;

use crate::d4::{build_d4, D4Generators};
use crate::decompose::{independence_certificate, Decomposer, GeneratorSet, MonomialIndex};
use crate::error::Error;
use crate::f4::{build_f4, F4Generators};
use crate::fj::{FJSeries, Lattice, SeriesDiff};
use crate::laurent::{Exponent, LaurentPoly};
use crate::qseries::Eisenstein;
use crate::rational::{self, int, rat, Rational};
use crate::tables;
use crate::weyl::{group_generators, lp_act, triality_reflections, Group, GroupElement, OrbitName};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Orbit,
    D4,
    F4,
    Quasi,
    Independence,
    All,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "orbit" => Ok(Suite::Orbit),
            "d4" => Ok(Suite::D4),
            "f4" => Ok(Suite::F4),
            "quasi" => Ok(Suite::Quasi),
            "independence" => Ok(Suite::Independence),
            "all" => Ok(Suite::All),
            _ => Err(format!("unknown suite `{s}` (expected orbit, d4, f4, quasi, independence or all)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub failure: Option<String>,
}

impl Check {
    pub fn ok(id: impl Into<String>) -> Self {
        Check { id: id.into(), failure: None }
    }

    pub fn fail(id: impl Into<String>, detail: impl Into<String>) -> Self {
        Check { id: id.into(), failure: Some(detail.into()) }
    }

    fn from_diff(id: impl Into<String>, diff: Option<SeriesDiff>) -> Self {
        Check { id: id.into(), failure: diff.map(|d| d.to_string()) }
    }

    fn from_flag(id: impl Into<String>, holds: bool, detail: impl FnOnce() -> String) -> Self {
        Check { id: id.into(), failure: (!holds).then(detail) }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "OK {}", self.id),
            Some(d) => write!(f, "FAIL {}: {d}", self.id),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn lines(&self) -> Vec<String> {
        self.checks.iter().map(|c| c.to_string()).collect()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }
}

/// First position where `got` differs from `expected`, reported at order `n`.
pub fn poly_difference(n: usize, got: &LaurentPoly, expected: &LaurentPoly) -> Option<SeriesDiff> {
    let diff = got - expected;
    diff.terms().first().map(|(e, _)| SeriesDiff { n, exponent: *e, expected: expected.coeff(e), got: got.coeff(e) })
}

fn constants_check(id: &str, labels: &[String], got: &[Rational], expected: &[Rational]) -> Check {
    for ((label, g), e) in labels.iter().zip(got).zip(expected) {
        if g != e {
            return Check::fail(id, format!("coefficient of {label}, expected {} got {}", rational::format(e), rational::format(g)));
        }
    }
    Check::ok(id)
}

/// The five products of the orbit sums of minimal vectors of the nonzero
/// cosets.
pub fn orbit_suite() -> Report {
    use OrbitName::*;
    let oc = |parts: &[(OrbitName, i64)]| crate::weyl::orbit_combination(&parts.iter().map(|(n, c)| (*n, int(*c))).collect::<Vec<_>>());
    let cases = [
        ("orbit.P44p*P44p", P44p, P44p, oc(&[(Q0, 8), (Q2, 2), (Q41p, 1)])),
        ("orbit.P44m*P44m", P44m, P44m, oc(&[(Q0, 8), (Q2, 2), (Q41m, 1)])),
        ("orbit.P44m*P44p", P44m, P44p, oc(&[(P1, 4), (P3, 1)])),
        ("orbit.P1*P1", P1, P1, oc(&[(Q0, 8), (Q2, 2), (Q42, 1)])),
        ("orbit.P1*P44", P1, P44, oc(&[(P44, 4), (P124, 1)])),
    ];
    let checks = cases
        .into_iter()
        .map(|(id, a, b, expected)| Check::from_diff(id, poly_difference(0, &(&a.poly() * &b.poly()), &expected)))
        .collect();
    Report { checks }
}

fn invariance_check(id: String, phi: &FJSeries, group: Group) -> Result<Check, Error> {
    for g in group_generators(group) {
        if let Some(d) = phi.act(&g)?.first_difference(phi) {
            return Ok(Check::fail(id, format!("under {}: {d}", g.name())));
        }
    }
    Ok(Check::ok(id))
}

fn d4_named(d4: &D4Generators) -> [(&'static str, &FJSeries); 5] {
    [
        ("phi_0_1", &d4.phi_0_1),
        ("phi_m2_1", &d4.phi_m2_1),
        ("phi_m4_1", d4.phi_m4_1()),
        ("omega_m4_1", d4.omega()),
        ("phi_m6_2", &d4.phi_m6_2),
    ]
}

fn f4_named(f4: &F4Generators) -> [(&'static str, &FJSeries); 5] {
    [
        ("f4_phi_0_1", &f4.phi_0_1),
        ("f4_phi_m2_1", &f4.phi_m2_1),
        ("f4_phi_m6_2", &f4.phi_m6_2),
        ("f4_phi_m8_2", &f4.phi_m8_2),
        ("f4_phi_m12_3", &f4.phi_m12_3),
    ]
}

/// Leading terms, invariance, the heat kernel, restriction to `z4 = 0`, and the
/// tabulated product rows of the W(D4) generators.
pub fn d4_suite(d4: &D4Generators) -> Result<Report, Error> {
    let n = d4.n;
    let mut checks = Vec::new();
    let q0_rows = [
        ("phi_0_1", &d4.phi_0_1, tables::phi_0_1()),
        ("phi_m2_1", &d4.phi_m2_1, tables::phi_m2_1()),
        ("phi_m4_1", d4.phi_m4_1(), tables::phi_m4_1()),
        ("omega_m4_1", d4.omega(), tables::omega_m4_1()),
        ("phi_m6_2", &d4.phi_m6_2, tables::phi_m6_2()),
        ("phi2_m4_1", &d4.basic.phi2, tables::phi2_m4_1()),
        ("phi3_m4_1", &d4.basic.phi3, tables::phi3_m4_1()),
    ];
    for (name, s, row) in &q0_rows {
        checks.push(Check::from_diff(format!("d4.q0.{name}"), poly_difference(0, s.coeff(0), row)));
    }
    for (name, s) in d4_named(d4) {
        checks.push(invariance_check(format!("d4.invariance.{name}"), s, Group::WD4)?);
    }
    let flip = GroupElement::flip(&[0]);
    let omega = d4.omega();
    checks.push(Check::from_diff("d4.omega_m4_1.anti_invariant.flip:1", omega.act(&flip)?.first_difference(&omega.scale(&int(-1)))));

    for (name, s) in [("phi_m4_1", d4.phi_m4_1()), ("omega_m4_1", omega)] {
        let h = s.heat()?;
        let zero = FJSeries::zero(h.weight(), h.index(), h.lattice(), n);
        checks.push(Check::from_diff(format!("d4.heat_kernel.{name}"), h.first_difference(&zero)));
    }

    let r = omega.restrict_z4()?;
    checks
        .push(Check::from_diff("d4.restrict.omega_m4_1.zero", r.first_difference(&FJSeries::zero(r.weight(), r.index(), r.lattice(), n))));
    for (name, s) in [("phi_0_1", &d4.phi_0_1), ("phi_m2_1", &d4.phi_m2_1), ("phi_m4_1", d4.phi_m4_1())] {
        let r = s.restrict_z4()?;
        checks.push(Check::from_flag(format!("d4.restrict.{name}.nonzero"), !r.is_zero(), || "restriction vanishes".into()));
    }

    let ez = &d4.basic.ez_m2;
    let ez_prod = FJSeries::tensor_a1([ez, ez, ez, ez])?.as_d4()?;
    checks.push(Check::from_diff("d4.omega_m4_1.sq.ez_product", ez_prod.first_difference(&omega.mul(omega)?)));

    let e4 = FJSeries::eisenstein(Eisenstein::E4, Lattice::D4, n);
    let phi = d4.phi_m4_1();
    let products = [
        ("phi_m2_1*phi_m4_1", d4.phi_m2_1.mul(phi)?, tables::phi_m2_1_times_phi_m4_1()),
        ("E4*omega_m4_1^2", e4.mul(&omega.mul(omega)?)?, tables::e4_omega_sq()),
        ("E4*phi_m4_1^2", e4.mul(&phi.mul(phi)?)?, tables::e4_phi_m4_1_sq()),
        ("phi_m2_1^2", d4.phi_m2_1.mul(&d4.phi_m2_1)?, tables::phi_m2_1_sq()),
        ("phi_0_1*phi_m4_1", d4.phi_0_1.mul(phi)?, tables::phi_m4_1_times_phi_0_1_printed()),
    ];
    for (name, s, row) in &products {
        checks.push(Check::from_diff(format!("d4.q0.{name}"), poly_difference(0, s.coeff(0), row)));
    }
    Ok(Report { checks })
}

/// The identities relating the O(D4)-invariant generators to the W(D4) ones,
/// their invariance, and the triality tables.
pub fn f4_suite(d4: &D4Generators, f4: &F4Generators) -> Result<Report, Error> {
    let n = d4.n;
    let mut checks = Vec::new();
    let (omega, phi) = (d4.omega(), d4.phi_m4_1());
    let w2 = omega.mul(omega)?;
    let f2 = phi.mul(phi)?;

    let lhs = f4.phi_m8_2.scale(&int(4));
    let rhs = w2.scale(&int(3)).add(&f2)?;
    checks.push(Check::from_diff("f4.chevalley.phi_m8_2", lhs.first_difference(&rhs)));
    let lhs = f4.phi_m12_3.scale(&int(8));
    let rhs = phi.mul(&w2.scale(&int(9)).sub(&f2)?)?;
    checks.push(Check::from_diff("f4.chevalley.phi_m12_3", lhs.first_difference(&rhs)));

    checks.push(Check::from_diff("f4.q0.phi_m8_2", poly_difference(0, f4.phi_m8_2.coeff(0), &tables::f4_phi_m8_2())));
    checks.push(Check::from_diff("f4.q0.phi_m6_2", poly_difference(0, f4.phi_m6_2.coeff(0), &tables::f4_phi_m6_2())));
    checks.push(constants_check(
        "f4.phi_m6_2.heat_scalar",
        &["H(f4_phi_m8_2)".into()],
        std::slice::from_ref(&f4.report.m6_heat_scalar),
        &[int(12)],
    ));

    let fphi = d4.phi_m2_1.mul(phi)?;
    let lhs = f4.phi_m6_2.scale(&int(-4));
    let rhs = d4.phi_m6_2.scale(&int(3)).add(&fphi.scale(&int(4)))?;
    checks.push(Check::from_diff("f4.phi_m6_2.decomposition", lhs.first_difference(&rhs)));

    let heat12 = f4.phi_m6_2.heat()?.scale(&int(12));
    checks.push(Check::from_diff("f4.q0.heat_phi_m6_2", poly_difference(0, heat12.coeff(0), &tables::f4_heat_m6_times_12())));

    let dec = Decomposer::from_d4(d4);
    let mono = |e4: u32, gens: [u32; 5]| MonomialIndex::new(GeneratorSet::D4, e4, 0, gens);
    let basis = [mono(1, [0, 0, 0, 2, 0]), mono(1, [0, 0, 2, 0, 0]), mono(0, [0, 2, 0, 0, 0]), mono(0, [1, 0, 1, 0, 0])];
    let labels: Vec<String> = basis.iter().map(|m| m.to_string()).collect();
    match dec.decompose(&heat12) {
        Ok(result) => {
            let got: Vec<Rational> = basis.iter().map(|m| result.coefficient(m)).collect();
            let others = result.coefficients.iter().find(|(m, _)| !basis.contains(m));
            checks.push(constants_check(
                "f4.heat_phi_m6_2.decomposition.reference",
                &labels,
                &got,
                &[rat(15, 4), rat(3, 4), int(3), int(0)],
            ));
            let derived = constants_check("f4.heat_phi_m6_2.decomposition", &labels, &got, &[rat(15, 4), rat(5, 4), int(3), int(0)]);
            checks.push(match others {
                Some((m, c)) => Check::fail("f4.heat_phi_m6_2.decomposition", format!("unexpected term {} {m}", rational::format(c))),
                None => derived,
            });
        }
        Err(e) => {
            checks.push(Check::fail("f4.heat_phi_m6_2.decomposition.reference", e.to_string()));
            checks.push(Check::fail("f4.heat_phi_m6_2.decomposition", e.to_string()));
        }
    }
    checks.push(constants_check(
        "f4.heat_phi_m6_2.minus_5_E4_phi_m8_2.proportional",
        &["s".into(), "r".into()],
        &f4.report.m4_subtraction,
        &[int(12), int(3)],
    ));

    checks.push(Check::from_diff("f4.q0.phi_0_1", poly_difference(0, f4.phi_0_1.coeff(0), &tables::f4_phi_0_1())));
    let e4 = FJSeries::eisenstein(Eisenstein::E4, Lattice::D4, n);
    let lhs = f4.phi_0_1.scale(&int(2));
    let rhs = d4.phi_0_1.scale(&int(3)).sub(&e4.mul(phi)?)?;
    checks.push(Check::from_diff("f4.phi_0_1.decomposition", lhs.first_difference(&rhs)));

    for (name, s) in f4_named(f4) {
        checks.push(invariance_check(format!("f4.invariance.{name}"), s, Group::OD4)?);
    }

    let (f, g, h) = triality_reflections();
    use OrbitName::*;
    let poly_table = [
        (&f, [(P44m, P44p), (P44p, P44m), (P1, P1)]),
        (&g, [(P44m, P1), (P44p, P44p), (P1, P44m)]),
        (&h, [(P44m, P44m), (P44p, P1), (P1, P44p)]),
    ];
    for (r, rows) in poly_table {
        for (src, dst) in rows {
            let got = lp_act(r, &src.poly())?;
            checks.push(Check::from_diff(format!("f4.action.{}.{src}", r.name()), poly_difference(0, &got, &dst.poly())));
        }
    }
    let (p2, p3) = (&d4.basic.phi2, &d4.basic.phi3);
    let neg = |s: &FJSeries| s.scale(&int(-1));
    let form_table = [
        (&f, "phi2_m4_1", p2, neg(p3)),
        (&f, "phi3_m4_1", p3, neg(p2)),
        (&g, "phi2_m4_1", p2, p2.add(p3)?),
        (&g, "phi3_m4_1", p3, neg(p3)),
        (&h, "phi2_m4_1", p2, neg(p2)),
        (&h, "phi3_m4_1", p3, p2.add(p3)?),
    ];
    for (r, name, src, expected) in &form_table {
        checks.push(Check::from_diff(format!("f4.action.{}.{name}", r.name()), src.act(r)?.first_difference(expected)));
    }

    let coset_reps = [GroupElement::identity(), f.clone(), g.clone(), h.clone(), f.compose(&g), f.compose(&h)];
    let mut sum = FJSeries::zero(phi.weight(), phi.index(), Lattice::D4, n);
    for r in &coset_reps {
        sum = sum.add(&phi.act(r)?)?;
    }
    let avg = sum.scale(&rat(1, 6));
    checks.push(Check::from_diff(
        "f4.average.phi_m4_1.zero",
        avg.first_difference(&FJSeries::zero(phi.weight(), phi.index(), Lattice::D4, n)),
    ));
    Ok(Report { checks })
}

/// Shift vectors for the coefficient relations.
pub fn quasi_lambdas() -> [Exponent; 4] {
    [
        Exponent::from_ints([1, 1, 0, 0]),
        Exponent::from_ints([1, -1, 0, 0]),
        Exponent::from_ints([0, 0, 1, 1]),
        Exponent::from_ints([2, 0, 0, 0]),
    ]
}

pub fn quasi_suite(d4: &D4Generators, f4: &F4Generators) -> Result<Report, Error> {
    let mut forms: Vec<(&str, &FJSeries)> = d4_named(d4).to_vec();
    forms.push(("phi2_m4_1", &d4.basic.phi2));
    forms.push(("phi3_m4_1", &d4.basic.phi3));
    forms.extend(f4_named(f4));
    let mut checks = Vec::new();
    for (name, s) in forms {
        for lambda in quasi_lambdas() {
            let report = s.quasiperiodicity_check(lambda)?;
            let id = format!("quasi.{name}.{lambda}");
            checks.push(match report.violation {
                None => Check::ok(id),
                Some(v) => Check::fail(id, v.to_string()),
            });
        }
    }
    Ok(Report { checks })
}

/// Window used by the independence suite.
pub const INDEPENDENCE_FLOOR: i32 = -24;
pub const INDEPENDENCE_CEILING: i32 = 12;
pub const INDEPENDENCE_CAP: u32 = 3;

pub fn independence_suite(d4: &D4Generators, f4: &F4Generators) -> Result<Report, Error> {
    let mut checks = Vec::new();
    let d4_dec = Decomposer::from_d4(d4);
    for (k, m, expected) in [(-6, 2, 3), (-4, 2, 6)] {
        let cell = d4_dec.cell_rank(k, m)?;
        let c = cell.certificate;
        checks.push(Check::from_flag(format!("independence.d4.({k},{m})"), c.rank == expected && c.columns == expected, || {
            format!("rank {} of {} columns, expected {expected}", c.rank, c.columns)
        }));
    }
    let f4_dec = Decomposer::from_f4(f4);
    let report = independence_certificate(&f4_dec, INDEPENDENCE_FLOOR, INDEPENDENCE_CEILING, INDEPENDENCE_CAP)?;
    for cell in &report.cells {
        let c = cell.certificate;
        checks.push(Check::from_flag(format!("independence.f4.({},{})", cell.weight, cell.index), c.is_full_column_rank(), || {
            format!("rank {} of {} columns ({} rows)", c.rank, c.columns, c.rows)
        }));
    }
    Ok(Report { checks })
}

/// Runs a suite at truncation `n`, building the generators it needs once.
pub fn run(suite: Suite, n: usize) -> Result<Report, Error> {
    if suite == Suite::Orbit {
        return Ok(orbit_suite());
    }
    let d4 = build_d4(n)?;
    if suite == Suite::D4 {
        return d4_suite(&d4);
    }
    let f4 = build_f4(&d4)?;
    match suite {
        Suite::F4 => f4_suite(&d4, &f4),
        Suite::Quasi => quasi_suite(&d4, &f4),
        Suite::Independence => independence_suite(&d4, &f4),
        _ => {
            let mut checks = orbit_suite().checks;
            checks.extend(d4_suite(&d4)?.checks);
            checks.extend(f4_suite(&d4, &f4)?.checks);
            checks.extend(quasi_suite(&d4, &f4)?.checks);
            checks.extend(independence_suite(&d4, &f4)?.checks);
            Ok(Report { checks })
        }
    }
}

/// A scalar check that is not a series comparison.
pub fn scalar_check(id: &str, got: &Rational, expected: &Rational) -> Check {
    if got == expected {
        Check::ok(id)
    } else {
        Check::fail(id, format!("expected {} got {}", rational::format(expected), rational::format(got)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_suite_has_five_passing_lines() {
        let r = orbit_suite();
        assert_eq!(r.checks.len(), 5);
        assert!(r.passed(), "{:?}", r.lines());
    }

    #[test]
    fn check_lines() {
        assert_eq!(Check::ok("a.b").to_string(), "OK a.b");
        let d = SeriesDiff { n: 1, exponent: Exponent::from_halves([1, 1, 1, -1]), expected: int(2), got: int(0) };
        assert_eq!(Check::from_diff("x", Some(d)).to_string(), "FAIL x: q^1, exponent (1/2,1/2,1/2,-1/2), expected 2 got 0");
        assert!("".parse::<Suite>().is_err());
    }
}
