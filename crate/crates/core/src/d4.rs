//! The generators `φ_{0,1}, φ_{-2,1}, φ_{-4,1}, ω_{-4,1}, φ_{-6,2}` of weak
//! W(D4)-invariant Jacobi forms.
//!
//! `φ_{-2,1}` is solved order by order from the weight −6 relation
//! `φ^{F4}_{-6,2} = α φ_{-6,2} + β φ_{-2,1}φ_{-4,1}`, in which the left side
//! is built from theta products alone. Its coefficients are parametrised by
//! `a(n,l) = c_{[l]}(2n − (l,l))`, leaving four unknowns per order.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::f4::{build_chevalley_pair, pin_weight_m6, ChevalleyPair};
use crate::fj::{Expansion, FJSeries, Lattice};
use crate::identity::{expect_equal, format_constants, pin_q0, solve_poly_combination, BuildError};
use crate::laurent::{Exponent, LaurentPoly};
use crate::linalg::Echelon;
use crate::qseries::Eisenstein;
use crate::rational::{int, Rational};
use crate::tables;
use crate::theta::{build_basic_forms, BasicForms};
use crate::weyl::OrbitName;

/// Cosets of `D4^∨ / D4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coset {
    Zero,
    V,
    S,
    C,
}

impl Coset {
    pub const ALL: [Coset; 4] = [Coset::Zero, Coset::V, Coset::S, Coset::C];

    pub fn of(e: Exponent) -> Coset {
        debug_assert!(e.in_d4_dual());
        let s = e.scaled();
        let sum: i32 = s.iter().sum();
        if s[0].rem_euclid(4) == 0 {
            if (sum / 4).rem_euclid(2) == 0 {
                Coset::Zero
            } else {
                Coset::V
            }
        } else if (sum / 4).rem_euclid(2) == 0 {
            Coset::S
        } else {
            Coset::C
        }
    }

    /// The orbit sum of the norm-minimal vectors of this coset.
    pub fn minimal_orbit(self) -> OrbitName {
        match self {
            Coset::Zero => OrbitName::Q0,
            Coset::V => OrbitName::P1,
            Coset::S => OrbitName::P44p,
            Coset::C => OrbitName::P44m,
        }
    }
}

/// Index-1 coefficients `c_μ(D)` keyed by coset and discriminant `D = 2n − (l,l)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ThetaDecompUnknowns {
    values: BTreeMap<(Coset, i64), Rational>,
}

impl ThetaDecompUnknowns {
    pub fn get(&self, coset: Coset, d: i64) -> Rational {
        self.values.get(&(coset, d)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, coset: Coset, d: i64, value: Rational) {
        if value.is_zero() {
            self.values.remove(&(coset, d));
        } else {
            self.values.insert((coset, d), value);
        }
    }

    /// The order-`n` coefficient `Σ_l c_{[l]}(2n − (l,l)) ζ^l` over `(l,l) ≤ 2n + 1`.
    pub fn expand_order(&self, n: usize) -> LaurentPoly {
        LaurentPoly::from_terms(dual_vectors_up_to(2 * n as i64 + 1).into_iter().filter_map(|(e, norm)| {
            let c = self.get(Coset::of(e), 2 * n as i64 - norm);
            (!c.is_zero()).then_some((e, c))
        }))
    }

    pub fn entries(&self) -> impl Iterator<Item = (Coset, i64, &Rational)> {
        self.values.iter().map(|((c, d), v)| (*c, *d, v))
    }
}

/// Vectors of `D4^∨` with integral norm `≤ bound`, paired with that norm.
fn dual_vectors_up_to(bound: i64) -> Vec<(Exponent, i64)> {
    let r = (bound as f64).sqrt().floor() as i32 + 1;
    let mut out = Vec::new();
    for a in -2 * r..=2 * r {
        for b in -2 * r..=2 * r {
            for c in -2 * r..=2 * r {
                for d in -2 * r..=2 * r {
                    let e = Exponent([2 * a, 2 * b, 2 * c, 2 * d]);
                    if !e.in_d4_dual() {
                        continue;
                    }
                    let n16 = e.norm16();
                    if n16 <= 16 * bound {
                        out.push((e, n16 / 16));
                    }
                }
            }
        }
    }
    out
}

/// When the weight −4 relation is added to the per-order systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AugmentPolicy {
    /// Only at orders where the weight −6 system alone is rank deficient.
    #[default]
    WhenSingular,
    /// At every order.
    Always,
}

/// Constants found while building the D4 set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct D4Report {
    /// `c` with `φ^{EZ}_{0,1} = c · H_{-2}(φ^{EZ}_{-2,1})`.
    pub ez_heat_scalar: Rational,
    /// Scale applied to the A1⁴ symmetrisation to match the tabulated `φ_{-6,2}`.
    pub phi_m6_2_scale: Rational,
    /// `s` with `φ^{F4}_{-6,2} = s · H_{-8}(φ^{F4}_{-8,2})`.
    pub f4_m6_heat_scalar: Rational,
    /// `(α, β)` in `φ^{F4}_{-6,2} = α φ_{-6,2} + β φ_{-2,1}φ_{-4,1}`, from leading terms.
    pub weight_m6_constants: [Rational; 2],
    /// `(a, b, c)` in `H_{-6}(φ^{F4}_{-6,2}) = a E4ω² + b E4φ_{-4,1}² + c φ_{-2,1}²`, from leading terms.
    pub weight_m4_constants: [Rational; 3],
    /// `(a, b)` in `φ_{0,1} = a H_{-2}(φ_{-2,1}) + b E4 φ_{-4,1}`.
    pub phi_0_1_constants: [Rational; 2],
    /// Orders at which the weight −4 relation entered the solve.
    pub augmented_orders: Vec<usize>,
}

impl D4Report {
    pub fn lines(&self) -> Vec<String> {
        vec![
            format!("ez_0_1 heat scalar: {}", format_constants(std::slice::from_ref(&self.ez_heat_scalar))),
            format!("phi_m6_2 scale: {}", format_constants(std::slice::from_ref(&self.phi_m6_2_scale))),
            format!("f4_phi_m6_2 heat scalar: {} (reference 12)", format_constants(std::slice::from_ref(&self.f4_m6_heat_scalar))),
            format!("weight -6 constants (alpha, beta): {} (reference -3/4, -1)", format_constants(&self.weight_m6_constants)),
            format!("H(f4_phi_m6_2) over (E4*omega^2, E4*phi_m4_1^2, phi_m2_1^2): {}", format_constants(&self.weight_m4_constants)),
            format!("phi_0_1 constants (a, b): {} (reference 4, 1/3)", format_constants(&self.phi_0_1_constants)),
            format!("augmented orders: {:?}", self.augmented_orders),
        ]
    }
}

#[derive(Debug, Clone)]
pub struct D4Generators {
    pub n: usize,
    pub basic: BasicForms,
    pub phi_0_1: FJSeries,
    pub phi_m2_1: FJSeries,
    pub phi_m6_2: FJSeries,
    pub unknowns: ThetaDecompUnknowns,
    pub chevalley: ChevalleyPair,
    /// `φ^{F4}_{-6,2}`, needed as input to the `φ_{-2,1}` solve.
    pub f4_phi_m6_2: FJSeries,
    pub report: D4Report,
}

impl D4Generators {
    pub fn phi_m4_1(&self) -> &FJSeries {
        &self.basic.phi
    }

    pub fn omega(&self) -> &FJSeries {
        &self.basic.omega
    }

    /// In the order `φ_{0,1}, φ_{-2,1}, φ_{-4,1}, ω_{-4,1}, φ_{-6,2}`.
    pub fn all(&self) -> [&FJSeries; 5] {
        [&self.phi_0_1, &self.phi_m2_1, &self.basic.phi, &self.basic.omega, &self.phi_m6_2]
    }
}

/// `Σ_i φ^{EZ}_{0,1}(z_i) ∏_{j≠i} φ^{EZ}_{-2,1}(z_j)`, pinned to the tabulated
/// leading term.
pub fn build_phi_m6_2(basic: &BasicForms) -> Result<(FJSeries, Rational), BuildError> {
    let mut acc: Option<FJSeries> = None;
    for i in 0..4 {
        let factors: [&FJSeries; 4] = std::array::from_fn(|j| if j == i { &basic.ez_0 } else { &basic.ez_m2 });
        let term = FJSeries::tensor_a1(factors)?;
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term)?,
        });
    }
    let sym = acc.expect("four terms").as_d4()?;
    pin_q0("phi_m6_2", &sym, &tables::phi_m6_2())
}

/// The inputs of the `φ_{-2,1}` solve.
pub struct SolverInputs<'a> {
    pub phi_m4_1: &'a FJSeries,
    pub omega: &'a FJSeries,
    pub phi_m6_2: &'a FJSeries,
    pub f4_phi_m6_2: &'a FJSeries,
}

pub struct SolveOutcome {
    pub series: FJSeries,
    pub unknowns: ThetaDecompUnknowns,
    pub weight_m6_constants: [Rational; 2],
    pub weight_m4_constants: [Rational; 3],
    pub augmented_orders: Vec<usize>,
}

fn seed() -> ThetaDecompUnknowns {
    let mut u = ThetaDecompUnknowns::default();
    u.set(Coset::Zero, 0, int(24));
    for c in [Coset::V, Coset::S, Coset::C] {
        u.set(c, -1, int(-1));
    }
    u
}

/// Solves for `φ_{-2,1}` with leading term `24Q0 − P1 − P44`.
pub fn solve_phi_m2_1(inputs: &SolverInputs<'_>, policy: AugmentPolicy) -> Result<SolveOutcome, BuildError> {
    let n_max = inputs.phi_m4_1.truncation();
    let mut unknowns = seed();
    let mut f: Vec<LaurentPoly> = vec![unknowns.expand_order(0)];
    debug_assert_eq!(f[0], tables::phi_m2_1());

    let phi = inputs.phi_m4_1.coeffs();
    let g = inputs.f4_phi_m6_2;
    let f0phi0 = &f[0] * &phi[0];
    let alpha_beta = solve_poly_combination(g.coeff(0), &[inputs.phi_m6_2.coeff(0), &f0phi0])
        .map_err(|e| BuildError::SolverInconsistent { order: 0, detail: format!("weight -6 constants: {e}") })?;
    let (alpha, beta) = (alpha_beta[0].clone(), alpha_beta[1].clone());
    // F · φ_{-4,1} = R := (φ^{F4}_{-6,2} − α φ_{-6,2}) / β
    let r = g.sub(&inputs.phi_m6_2.scale(&alpha))?.scale(&(Rational::from_integer(1.into()) / &beta));

    let heat_g = g.heat()?;
    let e4 = FJSeries::eisenstein(Eisenstein::E4, Lattice::D4, n_max);
    let e4w2 = e4.mul(&inputs.omega.mul(inputs.omega)?)?;
    let e4p2 = e4.mul(&inputs.phi_m4_1.mul(inputs.phi_m4_1)?)?;
    let abc = solve_poly_combination(heat_g.coeff(0), &[e4w2.coeff(0), e4p2.coeff(0), &(&f[0] * &f[0])])
        .map_err(|e| BuildError::SolverInconsistent { order: 0, detail: format!("weight -4 constants: {e}") })?;

    let basis: Vec<LaurentPoly> = Coset::ALL.iter().map(|c| c.minimal_orbit().poly()).collect();
    let primary_cols: Vec<LaurentPoly> = basis.iter().map(|b| b * &phi[0]).collect();
    let two_c_f0 = f[0].scale(&(&abc[2] * int(2)));
    let augment_cols: Vec<LaurentPoly> = basis.iter().map(|b| b * &two_c_f0).collect();
    let mut augmented_orders = Vec::new();

    for n in 1..=n_max {
        let known = unknowns.expand_order(n);
        // Σ x_μ B_μ φ_0 = R_n − Σ_{j<n} F_j φ_{n−j} − K_n φ_0
        let mut t = r.coeff(n).clone();
        for j in 0..n {
            t = &t - &(&f[j] * &phi[n - j]);
        }
        t = &t - &(&known * &phi[0]);

        let mut ech = Echelon::new(4);
        let mut positions = Vec::new();
        push_rows(&mut ech, &mut positions, 0, &primary_cols, &t);
        let augment = policy == AugmentPolicy::Always || !ech.is_full_rank();
        if augment && ech.first_inconsistent().is_none() {
            // 2c F_0 Σ x_μ B_μ = H(G)_n − a(E4ω²)_n − b(E4φ²)_n − c Σ_{0<j<n} F_j F_{n−j} − 2c F_0 K_n
            let mut u = heat_g.coeff(n).add_scaled(e4w2.coeff(n), &-abc[0].clone());
            u = u.add_scaled(e4p2.coeff(n), &-abc[1].clone());
            for j in 1..n {
                u = u.add_scaled(&(&f[j] * &f[n - j]), &-abc[2].clone());
            }
            u = &u - &(&two_c_f0 * &known);
            push_rows(&mut ech, &mut positions, 1, &augment_cols, &u);
            augmented_orders.push(n);
        }
        if let Some(row) = ech.first_inconsistent() {
            let (eq, e) = positions[row];
            return Err(BuildError::SolverInconsistent {
                order: n,
                detail: format!("{} relation, exponent {e}", if eq == 0 { "weight -6" } else { "weight -4" }),
            });
        }
        if !ech.is_full_rank() {
            return Err(BuildError::SolverUnderdetermined { order: n, nullity: ech.nullity() });
        }
        let x = ech.particular_solution().expect("consistent");
        unknowns.set(Coset::Zero, 2 * n as i64, x[0].clone());
        unknowns.set(Coset::V, 2 * n as i64 - 1, x[1].clone());
        unknowns.set(Coset::S, 2 * n as i64 - 1, x[2].clone());
        unknowns.set(Coset::C, 2 * n as i64 - 1, x[3].clone());
        f.push(unknowns.expand_order(n));
    }

    let series = FJSeries::new(-2, 1, Lattice::D4, Expansion::new(0, f))?;
    let fphi = series.mul(inputs.phi_m4_1)?;
    expect_equal("phi_m2_1.weight_m6", g, &inputs.phi_m6_2.scale(&alpha).add(&fphi.scale(&beta))?)?;
    let f2 = series.mul(&series)?;
    let rhs = e4w2.scale(&abc[0]).add(&e4p2.scale(&abc[1]))?.add(&f2.scale(&abc[2]))?;
    expect_equal("phi_m2_1.weight_m4", &heat_g, &rhs)?;

    Ok(SolveOutcome {
        series,
        unknowns,
        weight_m6_constants: [alpha, beta],
        weight_m4_constants: [abc[0].clone(), abc[1].clone(), abc[2].clone()],
        augmented_orders,
    })
}

/// Appends one equation per exponent; `tag` records which relation it came from.
fn push_rows(ech: &mut Echelon, positions: &mut Vec<(u8, Exponent)>, tag: u8, cols: &[LaurentPoly], rhs: &LaurentPoly) {
    let mut keys: std::collections::BTreeSet<Exponent> = rhs.exponents().collect();
    for c in cols {
        keys.extend(c.exponents());
    }
    for e in keys {
        ech.push(cols.iter().map(|c| c.coeff(&e)).collect(), rhs.coeff(&e));
        positions.push((tag, e));
    }
}

/// `a H_{-2}(φ_{-2,1}) + b E4 φ_{-4,1}` with `(a, b)` fixed by the leading
/// term `32Q0 + P44`.
pub fn build_phi_0_1(phi_m2_1: &FJSeries, phi_m4_1: &FJSeries) -> Result<(FJSeries, [Rational; 2]), BuildError> {
    let heat = phi_m2_1.heat()?;
    let e4phi = FJSeries::eisenstein(Eisenstein::E4, Lattice::D4, phi_m4_1.truncation()).mul(phi_m4_1)?;
    let x = solve_poly_combination(&tables::phi_0_1(), &[heat.coeff(0), e4phi.coeff(0)])
        .map_err(|e| BuildError::NormalizationMismatch { form: "phi_0_1".into(), detail: e.to_string() })?;
    let series = heat.scale(&x[0]).add(&e4phi.scale(&x[1]))?;
    Ok((series, [x[0].clone(), x[1].clone()]))
}

pub fn build_d4(n: usize) -> Result<D4Generators, BuildError> {
    build_d4_with(n, AugmentPolicy::default())
}

pub fn build_d4_with(n: usize, policy: AugmentPolicy) -> Result<D4Generators, BuildError> {
    let basic = build_basic_forms(n)?;
    let (phi_m6_2, phi_m6_2_scale) = build_phi_m6_2(&basic)?;
    let chevalley = build_chevalley_pair(&basic)?;
    let (f4_phi_m6_2, f4_m6_heat_scalar) = pin_weight_m6(&chevalley.phi_m8_2)?;
    let outcome = solve_phi_m2_1(
        &SolverInputs { phi_m4_1: &basic.phi, omega: &basic.omega, phi_m6_2: &phi_m6_2, f4_phi_m6_2: &f4_phi_m6_2 },
        policy,
    )?;
    let (phi_0_1, phi_0_1_constants) = build_phi_0_1(&outcome.series, &basic.phi)?;
    Ok(D4Generators {
        n,
        report: D4Report {
            ez_heat_scalar: basic.ez_heat_scalar.clone(),
            phi_m6_2_scale,
            f4_m6_heat_scalar,
            weight_m6_constants: outcome.weight_m6_constants,
            weight_m4_constants: outcome.weight_m4_constants,
            phi_0_1_constants,
            augmented_orders: outcome.augmented_orders,
        },
        basic,
        phi_0_1,
        phi_m2_1: outcome.series,
        phi_m6_2,
        unknowns: outcome.unknowns,
        chevalley,
        f4_phi_m6_2,
    })
}
