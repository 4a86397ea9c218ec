//! Truncated one-variable q-expansions with an offset on the `1/24` grid.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::rational::{int, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QSeriesError {
    #[error("offsets {0}/24 and {1}/24 differ by a non-integer")]
    OffsetMismatch(i64, i64),
}

/// `q^{offset24/24} Σ_{n=0}^{N} coeffs[n] q^n`, valid through relative order `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    offset24: i64,
    coeffs: Vec<Rational>,
}

impl QSeries {
    pub fn new(offset24: i64, coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least its leading order");
        QSeries { offset24, coeffs }
    }

    pub fn one(n: usize) -> Self {
        let mut c = vec![Rational::zero(); n + 1];
        c[0] = Rational::one();
        QSeries { offset24: 0, coeffs: c }
    }

    pub fn offset24(&self) -> i64 {
        self.offset24
    }

    pub fn offset(&self) -> Rational {
        rat(self.offset24, 24)
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, n: usize) -> Self {
        QSeries { offset24: self.offset24, coeffs: self.coeffs[..=n.min(self.truncation())].to_vec() }
    }

    pub fn mul(&self, other: &QSeries) -> QSeries {
        let n = self.truncation().min(other.truncation());
        let coeffs = (0..=n).map(|k| (0..=k).map(|j| &self.coeffs[j] * &other.coeffs[k - j]).sum()).collect();
        QSeries { offset24: self.offset24 + other.offset24, coeffs }
    }

    pub fn scale(&self, c: &Rational) -> QSeries {
        QSeries { offset24: self.offset24, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, other: &QSeries) -> Result<QSeries, QSeriesError> {
        let diff = self.offset24 - other.offset24;
        if diff % 24 != 0 {
            return Err(QSeriesError::OffsetMismatch(self.offset24, other.offset24));
        }
        let base = self.offset24.min(other.offset24);
        let shift_a = ((self.offset24 - base) / 24) as usize;
        let shift_b = ((other.offset24 - base) / 24) as usize;
        let end = (shift_a + self.truncation()).min(shift_b + other.truncation());
        let coeffs = (0..=end)
            .map(|k| {
                let a = k.checked_sub(shift_a).map(|i| self.coeffs[i].clone()).unwrap_or_default();
                let b = k.checked_sub(shift_b).map(|i| other.coeffs[i].clone()).unwrap_or_default();
                a + b
            })
            .collect();
        Ok(QSeries { offset24: base, coeffs })
    }
}

/// `σ_k(n) = Σ_{d | n} d^k`.
pub fn sigma(k: u32, n: u64) -> num_bigint::BigInt {
    let mut s = num_bigint::BigInt::zero();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            s += num_bigint::BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                s += num_bigint::BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    s
}

/// `η(τ)^k = q^{k/24} ∏_{n≥1} (1 − q^n)^k` through relative order `n`.
///
/// Uses the power recurrence `g_j = (1/j) Σ_{i=1}^{j} ((k+1)i − j) f_i g_{j−i}`
/// for `g = f^k`, `f = ∏(1 − q^n)`, `f_0 = 1`.
pub fn eta_power(k: i64, n: usize) -> QSeries {
    let f = euler_product(n);
    let mut g = vec![Rational::zero(); n + 1];
    g[0] = Rational::one();
    for j in 1..=n {
        let mut acc = Rational::zero();
        for i in 1..=j {
            if f[i] != 0 {
                acc += int(((k + 1) * i as i64 - j as i64) * f[i]) * &g[j - i];
            }
        }
        g[j] = acc / int(j as i64);
    }
    QSeries { offset24: k, coeffs: g }
}

/// Coefficients of `∏(1 − q^n)` via Euler's pentagonal number theorem.
fn euler_product(n: usize) -> Vec<i64> {
    let mut f = vec![0i64; n + 1];
    let bound = n as i64 + 1;
    for m in -bound..=bound {
        let p = (m * (3 * m - 1) / 2) as usize;
        if p <= n {
            f[p] = if m.rem_euclid(2) == 0 { 1 } else { -1 };
        }
    }
    f
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Eisenstein {
    E4,
    E6,
    G2,
}

impl Eisenstein {
    pub fn weight(self) -> i32 {
        match self {
            Eisenstein::E4 => 4,
            Eisenstein::E6 => 6,
            Eisenstein::G2 => 2,
        }
    }
}

/// `E4 = 1 + 240 Σσ₃(n)qⁿ`, `E6 = 1 − 504 Σσ₅(n)qⁿ`, `G2 = −1/24 + Σσ₁(n)qⁿ`.
pub fn eisenstein(which: Eisenstein, n: usize) -> QSeries {
    let (c0, factor, k) = match which {
        Eisenstein::E4 => (int(1), int(240), 3),
        Eisenstein::E6 => (int(1), int(-504), 5),
        Eisenstein::G2 => (rat(-1, 24), int(1), 1),
    };
    let mut coeffs = vec![c0];
    coeffs.extend((1..=n as u64).map(|m| &factor * Rational::from_integer(sigma(k, m))));
    QSeries { offset24: 0, coeffs }
}
