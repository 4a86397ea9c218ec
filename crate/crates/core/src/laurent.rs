//! Sparse Laurent polynomials in four variables with exponents in `(1/4)Z^4`.
//!
//! Exponent vectors are stored scaled by 4 as integer quadruples, so a single
//! fixed denominator covers every exponent the theta constructions produce.
//! Terms are kept sorted lexicographically by scaled exponent with no zero
//! coefficients; this ordering is the canonical form used for equality,
//! hashing and serialization.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::rational::{self, Rational};

/// Denominator shared by every stored exponent component.
pub const EXP_DENOMINATOR: i32 = 4;

/// An exponent vector `l = scaled / 4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Exponent(pub [i32; 4]);

impl Exponent {
    pub const ZERO: Exponent = Exponent([0; 4]);

    pub fn scaled(self) -> [i32; 4] {
        self.0
    }

    /// Builds an exponent from components given in units of 1/2.
    pub fn from_halves(h: [i32; 4]) -> Self {
        Exponent(h.map(|x| 2 * x))
    }

    /// Builds an exponent from integer components.
    pub fn from_ints(v: [i32; 4]) -> Self {
        Exponent(v.map(|x| 4 * x))
    }

    /// `16 * (l, l)`, an exact integer.
    pub fn norm16(self) -> i64 {
        self.0.iter().map(|&x| (x as i64) * (x as i64)).sum()
    }

    /// Standard Euclidean `(l, l)`.
    pub fn norm(self) -> Rational {
        rational::rat(self.norm16(), 16)
    }

    /// `16 * (self, other)`.
    pub fn dot16(self, other: Exponent) -> i64 {
        self.0.iter().zip(other.0.iter()).map(|(&a, &b)| a as i64 * b as i64).sum()
    }

    /// Membership in the dual lattice `D4^∨`: all components integral or all
    /// in `1/2 + Z`.
    pub fn in_d4_dual(self) -> bool {
        self.0.iter().all(|x| x.rem_euclid(4) == 0) || self.0.iter().all(|x| x.rem_euclid(4) == 2)
    }

    /// Membership in `D4`: integral with even coordinate sum.
    pub fn in_d4(self) -> bool {
        self.0.iter().all(|x| x.rem_euclid(4) == 0) && (self.0.iter().sum::<i32>() / 4) % 2 == 0
    }

    pub fn component(self, i: usize) -> Rational {
        rational::rat(self.0[i] as i64, EXP_DENOMINATOR as i64)
    }
}

impl Add for Exponent {
    type Output = Exponent;
    fn add(self, rhs: Exponent) -> Exponent {
        Exponent([self.0[0] + rhs.0[0], self.0[1] + rhs.0[1], self.0[2] + rhs.0[2], self.0[3] + rhs.0[3]])
    }
}

impl Sub for Exponent {
    type Output = Exponent;
    fn sub(self, rhs: Exponent) -> Exponent {
        Exponent([self.0[0] - rhs.0[0], self.0[1] - rhs.0[1], self.0[2] - rhs.0[2], self.0[3] - rhs.0[3]])
    }
}

impl Neg for Exponent {
    type Output = Exponent;
    fn neg(self) -> Exponent {
        Exponent(self.0.map(|x| -x))
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for i in 0..4 {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", rational::format(&self.component(i)))?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("dividend is not a multiple of the divisor in the Laurent ring")]
    NotDivisible,
}

/// A finite sum `Σ c_l ζ^l` with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(Exponent, Rational)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(Exponent::ZERO, c)
    }

    pub fn monomial(e: Exponent, c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly { terms: vec![(e, c)] }
        }
    }

    /// Sums the given terms, merging repeated exponents and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Exponent, Rational)>>(terms: I) -> Self {
        let mut map: BTreeMap<Exponent, Rational> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_insert_with(Rational::zero) += c;
        }
        LaurentPoly { terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    /// Builds from terms already sorted by strictly increasing exponent with no
    /// zero coefficients.
    pub(crate) fn from_sorted_unchecked(terms: Vec<(Exponent, Rational)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        LaurentPoly { terms }
    }

    pub fn terms(&self) -> &[(Exponent, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &Exponent) -> Rational {
        match self.terms.binary_search_by(|(k, _)| k.cmp(e)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn exponents(&self) -> impl Iterator<Item = Exponent> + '_ {
        self.terms.iter().map(|(e, _)| *e)
    }

    pub fn coefficient_sum(&self) -> Rational {
        self.terms.iter().map(|(_, c)| c.clone()).sum()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect() }
    }

    /// `self + c * other`, merging the two sorted term lists.
    pub fn add_scaled(&self, other: &LaurentPoly, c: &Rational) -> Self {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b[j].0, &b[j].1 * c));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = &a[i].1 + &b[j].1 * c;
                    if !v.is_zero() {
                        out.push((a[i].0, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        LaurentPoly { terms: out }
    }

    /// Applies an exponent map and merges colliding terms.
    pub fn map_exponents<E>(&self, mut f: impl FnMut(Exponent) -> Result<Exponent, E>) -> Result<Self, E> {
        let mut mapped = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            mapped.push((f(*e)?, c.clone()));
        }
        Ok(Self::from_terms(mapped))
    }

    /// Exact product. Coefficients are cleared to a common denominator and
    /// accumulated as machine integers whenever the worst case fits in `i128`.
    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.len() == 1 && self.terms[0].0 == Exponent::ZERO {
            return other.scale(&self.terms[0].1);
        }
        if other.len() == 1 && other.terms[0].0 == Exponent::ZERO {
            return self.scale(&other.terms[0].1);
        }
        let (da, na) = clear_denominators(&self.terms);
        let (db, nb) = clear_denominators(&other.terms);
        let denom = da * db;
        let max_terms = self.len().min(other.len()) as u128;
        let fits = match (small_bound(&na), small_bound(&nb)) {
            (Some(ma), Some(mb)) => ma.checked_mul(mb).and_then(|p| p.checked_mul(max_terms)).is_some_and(|p| p < (1u128 << 126)),
            _ => false,
        };
        let mut terms: Vec<(Exponent, Rational)> = if fits {
            let xa: Vec<(Exponent, i128)> = self.terms.iter().zip(&na).map(|((e, _), n)| (*e, n.to_i128().unwrap())).collect();
            let xb: Vec<(Exponent, i128)> = other.terms.iter().zip(&nb).map(|((e, _), n)| (*e, n.to_i128().unwrap())).collect();
            accumulate(&xa, &xb)
                .into_iter()
                .filter(|(_, v)| *v != 0)
                .map(|(e, v)| (e, Rational::new(BigInt::from(v), denom.clone())))
                .collect()
        } else {
            let xa: Vec<(Exponent, BigInt)> = self.terms.iter().zip(na).map(|((e, _), n)| (*e, n)).collect();
            let xb: Vec<(Exponent, BigInt)> = other.terms.iter().zip(nb).map(|((e, _), n)| (*e, n)).collect();
            accumulate(&xa, &xb).into_iter().filter(|(_, v)| !v.is_zero()).map(|(e, v)| (e, Rational::new(v, denom.clone()))).collect()
        };
        terms.sort_unstable_by_key(|a| a.0);
        LaurentPoly { terms }
    }

    /// Exact quotient `self / divisor`, failing when no Laurent polynomial `q`
    /// satisfies `q * divisor == self`.
    ///
    /// Lex-leading-term division. A quotient, if it exists, is supported in the
    /// box `[min(a) - min(b), max(a) - max(b)]` coordinatewise, which bounds the
    /// loop.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        if divisor.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (a_lo, a_hi) = self.bounding_box();
        let (b_lo, b_hi) = divisor.bounding_box();
        let lo: [i32; 4] = std::array::from_fn(|i| a_lo[i] - b_lo[i]);
        let hi: [i32; 4] = std::array::from_fn(|i| a_hi[i] - b_hi[i]);
        if (0..4).any(|i| lo[i] > hi[i]) {
            return Err(LaurentError::NotDivisible);
        }
        let (lead_e, lead_c) = divisor.terms.last().unwrap().clone();
        let mut rem: BTreeMap<Exponent, Rational> = self.terms.iter().cloned().collect();
        let mut quotient = Vec::new();
        while let Some((&top, c)) = rem.iter().next_back() {
            let e = top - lead_e;
            if (0..4).any(|i| e.0[i] < lo[i] || e.0[i] > hi[i]) {
                return Err(LaurentError::NotDivisible);
            }
            let qc = c / &lead_c;
            for (de, dc) in &divisor.terms {
                let key = *de + e;
                let entry = rem.entry(key).or_insert_with(Rational::zero);
                *entry -= dc * &qc;
                if entry.is_zero() {
                    rem.remove(&key);
                }
            }
            quotient.push((e, qc));
        }
        quotient.reverse();
        Ok(LaurentPoly::from_sorted_unchecked(quotient))
    }

    fn bounding_box(&self) -> ([i32; 4], [i32; 4]) {
        let mut lo = [i32::MAX; 4];
        let mut hi = [i32::MIN; 4];
        for (e, _) in &self.terms {
            for i in 0..4 {
                lo[i] = lo[i].min(e.0[i]);
                hi[i] = hi[i].max(e.0[i]);
            }
        }
        (lo, hi)
    }
}

fn clear_denominators(terms: &[(Exponent, Rational)]) -> (BigInt, Vec<BigInt>) {
    let mut l = BigInt::one();
    for (_, c) in terms {
        if !c.denom().is_one() {
            l = l.lcm(c.denom());
        }
    }
    let nums = terms.iter().map(|(_, c)| c.numer() * (&l / c.denom())).collect();
    (l, nums)
}

fn small_bound(nums: &[BigInt]) -> Option<u128> {
    let mut max = 0u128;
    for n in nums {
        let v = n.abs().to_u128()?;
        if v >= (1u128 << 63) {
            return None;
        }
        max = max.max(v);
    }
    Some(max)
}

/// Work size above which the product is split across threads.
const PARALLEL_THRESHOLD: usize = 1 << 16;

fn accumulate<T>(a: &[(Exponent, T)], b: &[(Exponent, T)]) -> FxHashMap<Exponent, T>
where
    T: Clone + Send + Sync + Zero + for<'x> std::ops::AddAssign<&'x T>,
    for<'x> &'x T: Mul<&'x T, Output = T>,
{
    let local = |chunk: &[(Exponent, T)]| {
        let mut map: FxHashMap<Exponent, T> = FxHashMap::default();
        map.reserve(chunk.len() * b.len() / 2 + 1);
        for (ea, ca) in chunk {
            for (eb, cb) in b {
                let prod = ca * cb;
                map.entry(*ea + *eb).or_insert_with(T::zero).add_assign(&prod);
            }
        }
        map
    };
    if a.len() * b.len() < PARALLEL_THRESHOLD || a.len() < 8 {
        return local(a);
    }
    let chunk = a.len().div_ceil(rayon::current_num_threads().max(1) * 2).max(1);
    a.par_chunks(chunk).map(local).reduce(FxHashMap::default, |mut x, y| {
        if x.len() < y.len() {
            return merge_into(y, x);
        }
        for (k, v) in y {
            x.entry(k).or_insert_with(T::zero).add_assign(&v);
        }
        x
    })
}

fn merge_into<T>(mut big: FxHashMap<Exponent, T>, small: FxHashMap<Exponent, T>) -> FxHashMap<Exponent, T>
where
    T: Zero + for<'x> std::ops::AddAssign<&'x T>,
{
    for (k, v) in small {
        big.entry(k).or_insert_with(T::zero).add_assign(&v);
    }
    big
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.add_scaled(rhs, &Rational::one())
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.add_scaled(rhs, &-Rational::one())
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::mul(self, rhs)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*z^{}", rational::format(c), e)?;
        }
        Ok(())
    }
}
