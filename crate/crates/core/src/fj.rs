//! Truncated Fourier–Jacobi expansions `Σ_n Σ_l a(n,l) q^{offset+n} ζ^l`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::laurent::{Exponent, LaurentPoly};
use crate::qseries::{eisenstein, Eisenstein, QSeries};
use crate::rational::{self, int, rat, Rational};
use crate::weyl::{orbit_coordinates, GroupElement, GroupError, OrbitCoordinates};

/// Lattice tag of a series. `A1` and `A1x4` store `ζ^r` as the exponent `r`
/// in the corresponding coordinate and use the form `Σ l_i² / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Lattice {
    A1,
    A1x4,
    D4,
    D3,
}

impl Lattice {
    pub fn rank(self) -> i32 {
        match self {
            Lattice::A1 => 1,
            Lattice::A1x4 | Lattice::D4 => 4,
            Lattice::D3 => 3,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Lattice::A1 => "A1",
            Lattice::A1x4 => "A1_4",
            Lattice::D4 => "D4",
            Lattice::D3 => "D3",
        }
    }

    /// The quadratic form `(l,l)` of this lattice.
    pub fn norm(self, e: Exponent) -> Rational {
        match self {
            Lattice::D4 | Lattice::D3 => e.norm(),
            Lattice::A1 | Lattice::A1x4 => rat(e.norm16(), 32),
        }
    }

    pub fn in_dual(self, e: Exponent) -> bool {
        let s = e.scaled();
        match self {
            Lattice::D4 => e.in_d4_dual(),
            Lattice::D3 => s[3] == 0 && (s[..3].iter().all(|x| x.rem_euclid(4) == 0) || s[..3].iter().all(|x| x.rem_euclid(4) == 2)),
            Lattice::A1 => s[0].rem_euclid(4) == 0 && s[1..].iter().all(|&x| x == 0),
            Lattice::A1x4 => s.iter().all(|x| x.rem_euclid(4) == 0),
        }
    }

    /// Largest minimal norm over the cosets of `L^∨ / mL`.
    pub fn max_coset_norm(self, m: u32) -> Rational {
        let m64 = m as i64;
        match self {
            Lattice::A1 => rat(m64 * m64, 2),
            Lattice::A1x4 => int(2 * m64 * m64),
            Lattice::D4 => d_lattice_max_coset_norm(4, m),
            Lattice::D3 => d_lattice_max_coset_norm(3, m),
        }
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Lattice {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        [Lattice::A1, Lattice::A1x4, Lattice::D4, Lattice::D3]
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| format!("unknown lattice tag `{s}`"))
    }
}

/// Maximal minimal coset norm of `D_d^∨ / m D_d`, by enumerating the box
/// `|l_i| ≤ m`, which contains a minimal representative of every coset.
fn d_lattice_max_coset_norm(dim: usize, m: u32) -> Rational {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u32), Rational>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&(dim, m)) {
        return v.clone();
    }
    let m4 = 4 * m as i32;
    let mut best: HashMap<(Vec<i32>, i32), i64> = HashMap::new();
    let steps: Vec<i32> = (-m4..=m4).step_by(2).collect();
    let mut idx = vec![0usize; dim];
    loop {
        let v: Vec<i32> = idx.iter().map(|&i| steps[i]).collect();
        let dual = v.iter().all(|x| x.rem_euclid(4) == 0) || v.iter().all(|x| x.rem_euclid(4) == 2);
        if dual {
            let mut parity = 0;
            let key: Vec<i32> = v
                .iter()
                .map(|&x| {
                    let r = x.rem_euclid(2 * m4);
                    if r >= m4 {
                        parity ^= 1;
                    }
                    r % m4
                })
                .collect();
            let norm16: i64 = v.iter().map(|&x| (x as i64) * (x as i64)).sum();
            let e = best.entry((key, parity)).or_insert(norm16);
            *e = (*e).min(norm16);
        }
        let mut k = 0;
        loop {
            if k == dim {
                let max = best.values().copied().max().unwrap_or(0);
                let result = rat(max, 16);
                cache.lock().unwrap().insert((dim, m), result.clone());
                return result;
            }
            idx[k] += 1;
            if idx[k] < steps.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FjError {
    #[error("lattice mismatch: {0} vs {1}")]
    LatticeMismatch(Lattice, Lattice),
    #[error("grading mismatch: (weight {0}, index {1}) vs (weight {2}, index {3})")]
    GradingMismatch(i32, u32, i32, u32),
    #[error("q-offsets {0}/24 and {1}/24 differ")]
    OffsetMismatch(i64, i64),
    #[error("operation requires q-offset 0, found {0}/24")]
    FractionalOffset(i64),
    #[error("operation requires positive index")]
    ZeroIndex,
    #[error("term q^{n} ζ^{exponent} violates the weak support bound for index {index}")]
    SupportBound { n: usize, exponent: Exponent, index: u32 },
    #[error("term q^{n} ζ^{exponent} is not in the dual lattice of {lattice}")]
    NotInDual { n: usize, exponent: Exponent, lattice: Lattice },
    #[error("operation requires lattice {expected}, found {found}")]
    WrongLattice { expected: Lattice, found: Lattice },
    #[error("shift vector {0} is not in D4")]
    NotInD4(Exponent),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Ungraded truncated expansion: `coeffs[n]` is the coefficient of
/// `q^{offset24/24 + n}`, valid for `n ≤ coeffs.len() − 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Expansion {
    pub offset24: i64,
    pub coeffs: Vec<LaurentPoly>,
}

impl Expansion {
    pub fn new(offset24: i64, coeffs: Vec<LaurentPoly>) -> Self {
        assert!(!coeffs.is_empty(), "an expansion carries at least its leading order");
        Expansion { offset24, coeffs }
    }

    pub fn from_qseries(q: &QSeries) -> Self {
        Expansion { offset24: q.offset24(), coeffs: q.coeffs().iter().map(|c| LaurentPoly::constant(c.clone())).collect() }
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn truncate(&self, n: usize) -> Self {
        Expansion { offset24: self.offset24, coeffs: self.coeffs[..=n.min(self.truncation())].to_vec() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(LaurentPoly::is_zero)
    }

    pub fn mul(&self, other: &Expansion) -> Expansion {
        let n = self.truncation().min(other.truncation());
        let coeffs = (0..=n)
            .into_par_iter()
            .map(|k| {
                let mut acc = LaurentPoly::zero();
                for j in 0..=k {
                    let (a, b) = (&self.coeffs[j], &other.coeffs[k - j]);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect();
        Expansion { offset24: self.offset24 + other.offset24, coeffs }
    }

    pub fn add_scaled(&self, other: &Expansion, c: &Rational) -> Result<Expansion, FjError> {
        if self.offset24 != other.offset24 {
            return Err(FjError::OffsetMismatch(self.offset24, other.offset24));
        }
        let n = self.truncation().min(other.truncation());
        let coeffs = (0..=n).map(|k| self.coeffs[k].add_scaled(&other.coeffs[k], c)).collect();
        Ok(Expansion { offset24: self.offset24, coeffs })
    }

    pub fn scale(&self, c: &Rational) -> Expansion {
        Expansion { offset24: self.offset24, coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect() }
    }

    pub fn map_polys<E>(&self, mut f: impl FnMut(&LaurentPoly) -> Result<LaurentPoly, E>) -> Result<Expansion, E> {
        let coeffs = self.coeffs.iter().map(&mut f).collect::<Result<_, E>>()?;
        Ok(Expansion { offset24: self.offset24, coeffs })
    }
}

/// First position at which two series disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesDiff {
    pub n: usize,
    pub exponent: Exponent,
    pub expected: Rational,
    pub got: Rational,
}

impl fmt::Display for SeriesDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "q^{}, exponent {}, expected {} got {}",
            self.n,
            self.exponent,
            rational::format(&self.expected),
            rational::format(&self.got)
        )
    }
}

/// Result of a quasiperiodicity scan for one shift vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiReport {
    pub lambda: Exponent,
    pub pairs_checked: usize,
    pub violation: Option<QuasiViolation>,
}

impl QuasiReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// `a(n,l)` should equal `a(n',l')`, or `a(n,l)` should vanish when `n' < 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiViolation {
    pub n: usize,
    pub l: Exponent,
    pub shifted_n: i64,
    pub shifted_l: Exponent,
    pub expected: Rational,
    pub got: Rational,
}

impl fmt::Display for QuasiViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "q^{}, exponent {}, expected {} got {} (partner q^{} {})",
            self.shifted_n,
            self.shifted_l,
            rational::format(&self.expected),
            rational::format(&self.got),
            self.n,
            self.l
        )
    }
}

/// A graded Fourier–Jacobi expansion.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FJSeries {
    weight: i32,
    index: u32,
    lattice: Lattice,
    exp: Expansion,
}

impl FJSeries {
    /// Checked constructor. Series with offset 0 must have exponents in the
    /// dual lattice and satisfy `(l,l) ≤ 2nm + M_m` for `m ≥ 1`.
    pub fn new(weight: i32, index: u32, lattice: Lattice, exp: Expansion) -> Result<Self, FjError> {
        if exp.offset24 == 0 {
            let bound = (index > 0).then(|| lattice.max_coset_norm(index));
            for (n, p) in exp.coeffs.iter().enumerate() {
                for e in p.exponents() {
                    if !lattice.in_dual(e) {
                        return Err(FjError::NotInDual { n, exponent: e, lattice });
                    }
                    if let Some(b) = &bound {
                        if lattice.norm(e) > int(2 * n as i64 * index as i64) + b {
                            return Err(FjError::SupportBound { n, exponent: e, index });
                        }
                    }
                }
            }
        }
        Ok(FJSeries { weight, index, lattice, exp })
    }

    /// A modular form viewed as an index-0 series on `lattice`.
    pub fn modular(weight: i32, lattice: Lattice, q: &QSeries) -> Self {
        FJSeries { weight, index: 0, lattice, exp: Expansion::from_qseries(q) }
    }

    pub fn eisenstein(which: Eisenstein, lattice: Lattice, n: usize) -> Self {
        Self::modular(which.weight(), lattice, &eisenstein(which, n))
    }

    pub fn one(lattice: Lattice, n: usize) -> Self {
        Self::modular(0, lattice, &QSeries::one(n))
    }

    pub fn zero(weight: i32, index: u32, lattice: Lattice, n: usize) -> Self {
        FJSeries { weight, index, lattice, exp: Expansion::new(0, vec![LaurentPoly::zero(); n + 1]) }
    }

    pub fn weight(&self) -> i32 {
        self.weight
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    pub fn rank(&self) -> i32 {
        self.lattice.rank()
    }

    pub fn offset24(&self) -> i64 {
        self.exp.offset24
    }

    pub fn truncation(&self) -> usize {
        self.exp.truncation()
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.exp.coeffs
    }

    pub fn coeff(&self, n: usize) -> &LaurentPoly {
        &self.exp.coeffs[n]
    }

    pub fn expansion(&self) -> &Expansion {
        &self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.exp.is_zero()
    }

    pub fn q0_coordinates(&self) -> OrbitCoordinates {
        orbit_coordinates(self.coeff(0))
    }

    pub fn term_count(&self) -> usize {
        self.exp.coeffs.iter().map(LaurentPoly::len).sum()
    }

    pub fn truncate(&self, n: usize) -> Self {
        FJSeries { exp: self.exp.truncate(n), ..self.clone() }
    }

    fn same_lattice(&self, other: &FJSeries) -> Result<(), FjError> {
        if self.lattice != other.lattice {
            return Err(FjError::LatticeMismatch(self.lattice, other.lattice));
        }
        Ok(())
    }

    /// Product: weights and indices add.
    pub fn mul(&self, other: &FJSeries) -> Result<FJSeries, FjError> {
        self.same_lattice(other)?;
        Ok(FJSeries {
            weight: self.weight + other.weight,
            index: self.index + other.index,
            lattice: self.lattice,
            exp: self.exp.mul(&other.exp),
        })
    }

    pub fn pow(&self, k: u32) -> FJSeries {
        let mut acc = FJSeries::one(self.lattice, self.truncation());
        for _ in 0..k {
            acc = acc.mul(self).expect("same lattice");
        }
        acc
    }

    /// `self + c · other` for series of the same grading.
    pub fn add_scaled(&self, other: &FJSeries, c: &Rational) -> Result<FJSeries, FjError> {
        self.same_lattice(other)?;
        if (self.weight, self.index) != (other.weight, other.index) {
            return Err(FjError::GradingMismatch(self.weight, self.index, other.weight, other.index));
        }
        Ok(FJSeries { exp: self.exp.add_scaled(&other.exp, c)?, ..self.clone() })
    }

    pub fn add(&self, other: &FJSeries) -> Result<FJSeries, FjError> {
        self.add_scaled(other, &Rational::one())
    }

    pub fn sub(&self, other: &FJSeries) -> Result<FJSeries, FjError> {
        self.add_scaled(other, &-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> FJSeries {
        FJSeries { exp: self.exp.scale(c), ..self.clone() }
    }

    /// `H_k(φ) = Σ (n − (l,l)/(2m)) a(n,l) qⁿ ζ^l + (2k − n₀) G₂ φ`.
    pub fn heat(&self) -> Result<FJSeries, FjError> {
        if self.exp.offset24 != 0 {
            return Err(FjError::FractionalOffset(self.exp.offset24));
        }
        if self.index == 0 {
            return Err(FjError::ZeroIndex);
        }
        let two_m = int(2 * self.index as i64);
        let lattice = self.lattice;
        let coeffs = self
            .exp
            .coeffs
            .par_iter()
            .enumerate()
            .map(|(n, p)| {
                LaurentPoly::from_terms(p.terms().iter().map(|(e, c)| {
                    let factor = int(n as i64) - lattice.norm(*e) / &two_m;
                    (*e, c * factor)
                }))
            })
            .collect();
        let derivative = Expansion { offset24: 0, coeffs };
        let g2 = Expansion::from_qseries(&eisenstein(Eisenstein::G2, self.truncation()));
        let shift = int(2 * self.weight as i64 - self.rank() as i64);
        let exp = derivative.add_scaled(&g2.mul(&self.exp), &shift)?;
        Ok(FJSeries { weight: self.weight + 2, exp, ..self.clone() })
    }

    /// Sets `z₄ = 0`.
    pub fn restrict_z4(&self) -> Result<FJSeries, FjError> {
        self.require(Lattice::D4)?;
        let exp = self.exp.map_polys(|p| p.map_exponents(|e| Ok::<_, FjError>(Exponent([e.0[0], e.0[1], e.0[2], 0]))))?;
        Ok(FJSeries { lattice: Lattice::D3, exp, ..self.clone() })
    }

    /// Substitutes `𝔷 ↦ g(𝔷)`.
    pub fn act(&self, g: &GroupElement) -> Result<FJSeries, FjError> {
        self.require(Lattice::D4)?;
        let exp = self.exp.map_polys(|p| crate::weyl::lp_act(g, p))?;
        Ok(FJSeries { exp, ..self.clone() })
    }

    fn require(&self, lattice: Lattice) -> Result<(), FjError> {
        if self.lattice != lattice {
            return Err(FjError::WrongLattice { expected: lattice, found: self.lattice });
        }
        Ok(())
    }

    /// Reinterprets an `A1⁴` series of index `m` as a `D4` series of index `2m`.
    pub fn as_d4(&self) -> Result<FJSeries, FjError> {
        self.require(Lattice::A1x4)?;
        FJSeries::new(self.weight, 2 * self.index, Lattice::D4, self.exp.clone())
    }

    /// `φ₁(z₁) φ₂(z₂) φ₃(z₃) φ₄(z₄)` for `A1` factors of a common index.
    pub fn tensor_a1(factors: [&FJSeries; 4]) -> Result<FJSeries, FjError> {
        let index = factors[0].index;
        let mut exp: Option<Expansion> = None;
        let mut weight = 0;
        for (i, f) in factors.iter().enumerate() {
            f.require(Lattice::A1)?;
            if f.index != index {
                return Err(FjError::GradingMismatch(factors[0].weight, index, f.weight, f.index));
            }
            weight += f.weight;
            let placed = f.exp.map_polys(|p| {
                p.map_exponents(|e| {
                    let mut s = [0; 4];
                    s[i] = e.0[0];
                    Ok::<_, FjError>(Exponent(s))
                })
            })?;
            exp = Some(match exp {
                None => placed,
                Some(acc) => acc.mul(&placed),
            });
        }
        FJSeries::new(weight, index, Lattice::A1x4, exp.expect("four factors"))
    }

    /// First `(n, l)` where `self` (got) differs from `expected`, scanning the
    /// common truncation range.
    pub fn first_difference(&self, expected: &FJSeries) -> Option<SeriesDiff> {
        let n = self.truncation().min(expected.truncation());
        for k in 0..=n {
            let d = &self.exp.coeffs[k] - &expected.exp.coeffs[k];
            if let Some((e, _)) = d.terms().first() {
                return Some(SeriesDiff {
                    n: k,
                    exponent: *e,
                    expected: expected.exp.coeffs[k].coeff(e),
                    got: self.exp.coeffs[k].coeff(e),
                });
            }
        }
        None
    }

    /// Checks `a(n,l) = a(n + (λ,l) + m(λ,λ)/2, l + mλ)` for `±λ` starting
    /// from every nonzero coefficient; partners with negative order must not
    /// exist.
    pub fn quasiperiodicity_check(&self, lambda: Exponent) -> Result<QuasiReport, FjError> {
        if !lambda.in_d4() {
            return Err(FjError::NotInD4(lambda));
        }
        if self.exp.offset24 != 0 {
            return Err(FjError::FractionalOffset(self.exp.offset24));
        }
        let m = self.index as i64;
        let big_n = self.truncation() as i64;
        let mut checked = 0usize;
        for (n, p) in self.exp.coeffs.iter().enumerate() {
            for (l, a) in p.terms() {
                for lam in [lambda, -lambda] {
                    if lam == Exponent::ZERO {
                        continue;
                    }
                    let shift16 = l.dot16(lam) + m * lam.norm16() / 2;
                    debug_assert_eq!(shift16 % 16, 0);
                    let n2 = n as i64 + shift16 / 16;
                    let l2 = *l + Exponent(lam.0.map(|x| x * m as i32));
                    if n2 > big_n {
                        continue;
                    }
                    checked += 1;
                    let b = if n2 < 0 { Rational::zero() } else { self.exp.coeffs[n2 as usize].coeff(&l2) };
                    if &b != a {
                        return Ok(QuasiReport {
                            lambda,
                            pairs_checked: checked,
                            violation: Some(QuasiViolation { n, l: *l, shifted_n: n2, shifted_l: l2, expected: a.clone(), got: b }),
                        });
                    }
                }
            }
        }
        Ok(QuasiReport { lambda, pairs_checked: checked, violation: None })
    }
}
