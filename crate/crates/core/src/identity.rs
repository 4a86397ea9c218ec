//! Exact identity checks shared by the generator builders: pinning a series to
//! a printed leading term, solving for the constants of a linear relation, and
//! comparing series.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::fj::{FJSeries, FjError, SeriesDiff};
use crate::laurent::{Exponent, LaurentPoly};
use crate::linalg::Echelon;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("{form}: assembled q-offset {offset24}/24 is not 0")]
    OffsetResidue { form: String, offset24: i64 },
    #[error("{form}: leading term is not proportional to the expected row ({detail})")]
    NormalizationMismatch { form: String, detail: String },
    #[error("solver inconsistent at order {order}: {detail}")]
    SolverInconsistent { order: usize, detail: String },
    #[error("solver underdetermined at order {order}: nullity {nullity}")]
    SolverUnderdetermined { order: usize, nullity: usize },
    #[error("{form}: the two constructions differ at {diff}")]
    ChevalleyMismatch { form: String, diff: Box<SeriesDiff> },
    #[error("identity {id} fails: {diff}")]
    IdentityFailure { id: String, diff: Box<SeriesDiff> },
    #[error("identity {id}: {detail}")]
    ProportionalityFailure { id: String, detail: String },
    #[error(transparent)]
    Series(#[from] FjError),
}

/// Why a linear combination could not be determined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CombinationError {
    /// No combination matches; the first unmatched position is reported.
    Inconsistent { n: usize, exponent: Exponent },
    /// Several combinations match.
    Underdetermined { nullity: usize },
}

impl fmt::Display for CombinationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CombinationError::Inconsistent { n, exponent } => {
                write!(f, "no exact combination (first conflict at q^{n}, exponent {exponent})")
            }
            CombinationError::Underdetermined { nullity } => write!(f, "combination not unique (nullity {nullity})"),
        }
    }
}

/// Unique `x` with `Σ x_i basis_i = target` coefficientwise over all common
/// orders.
pub fn solve_combination(target: &[&LaurentPoly], basis: &[Vec<&LaurentPoly>]) -> Result<Vec<Rational>, CombinationError> {
    let k = basis.len();
    let orders = basis.iter().map(|b| b.len()).chain([target.len()]).min().unwrap_or(0);
    let mut ech = Echelon::new(k);
    let mut positions = Vec::new();
    for n in 0..orders {
        let mut keys: BTreeSet<Exponent> = target[n].exponents().collect();
        for b in basis {
            keys.extend(b[n].exponents());
        }
        for e in keys {
            let row: Vec<Rational> = basis.iter().map(|b| b[n].coeff(&e)).collect();
            ech.push(row, target[n].coeff(&e));
            positions.push((n, e));
        }
    }
    if let Some(row) = ech.first_inconsistent() {
        let (n, exponent) = positions[row];
        return Err(CombinationError::Inconsistent { n, exponent });
    }
    if !ech.is_full_rank() {
        return Err(CombinationError::Underdetermined { nullity: ech.nullity() });
    }
    Ok(ech.particular_solution().expect("consistent"))
}

/// [`solve_combination`] on single Laurent polynomials.
pub fn solve_poly_combination(target: &LaurentPoly, basis: &[&LaurentPoly]) -> Result<Vec<Rational>, CombinationError> {
    let basis: Vec<Vec<&LaurentPoly>> = basis.iter().map(|b| vec![*b]).collect();
    solve_combination(&[target], &basis)
}

/// [`solve_combination`] on whole series.
pub fn solve_series_combination(target: &FJSeries, basis: &[&FJSeries]) -> Result<Vec<Rational>, CombinationError> {
    let t: Vec<&LaurentPoly> = target.coeffs().iter().collect();
    let b: Vec<Vec<&LaurentPoly>> = basis.iter().map(|s| s.coeffs().iter().collect()).collect();
    solve_combination(&t, &b)
}

/// Rescales `series` so that its `q⁰` term equals `target`, returning the
/// scalar used.
pub fn pin_q0(form: &str, series: &FJSeries, target: &LaurentPoly) -> Result<(FJSeries, Rational), BuildError> {
    let x = solve_poly_combination(target, &[series.coeff(0)])
        .map_err(|e| BuildError::NormalizationMismatch { form: form.to_string(), detail: e.to_string() })?;
    let c = x.into_iter().next().expect("one unknown");
    Ok((series.scale(&c), c))
}

/// `Ok` when `got == expected` to the common truncation.
pub fn expect_equal(id: &str, got: &FJSeries, expected: &FJSeries) -> Result<(), BuildError> {
    match got.first_difference(expected) {
        None => Ok(()),
        Some(diff) => Err(BuildError::IdentityFailure { id: id.to_string(), diff: Box::new(diff) }),
    }
}

/// `Σ c_i s_i` for series of a common grading.
pub fn linear_combination(terms: &[(Rational, &FJSeries)]) -> Result<FJSeries, FjError> {
    let (c0, s0) = terms.first().expect("nonempty combination");
    let mut acc = s0.scale(c0);
    for (c, s) in &terms[1..] {
        acc = acc.add_scaled(s, c)?;
    }
    Ok(acc)
}

/// Renders a list of constants as `a, b, c`.
pub fn format_constants(values: &[Rational]) -> String {
    values.iter().map(rational::format).collect::<Vec<_>>().join(", ")
}

/// Scalar `s` with `a = s · b`, if one exists (and `b` is nonzero).
pub fn proportionality(a: &FJSeries, b: &FJSeries) -> Option<Rational> {
    if b.is_zero() {
        return None;
    }
    let s = solve_series_combination(a, &[b]).ok()?;
    let s = s.into_iter().next()?;
    (!s.is_zero() || a.is_zero()).then_some(s)
}
