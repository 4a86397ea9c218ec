//! Decomposition of invariant forms into monomials in the generators over
//! `C[E4, E6]`, and rank certificates for the monomial cells.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::d4::D4Generators;
use crate::f4::F4Generators;
use crate::fj::{FJSeries, FjError, Lattice, SeriesDiff};
use crate::laurent::Exponent;
use crate::linalg::{Echelon, RowOutcome};
use crate::qseries::Eisenstein;
use crate::rational::{self, Rational};
use crate::weyl::{group_generators, wd4_canonical, Group};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorSet {
    D4,
    F4,
}

const D4_SPECS: [(&str, i32, u32); 5] =
    [("phi_0_1", 0, 1), ("phi_m2_1", -2, 1), ("phi_m4_1", -4, 1), ("omega_m4_1", -4, 1), ("phi_m6_2", -6, 2)];

const F4_SPECS: [(&str, i32, u32); 5] =
    [("f4_phi_0_1", 0, 1), ("f4_phi_m2_1", -2, 1), ("f4_phi_m6_2", -6, 2), ("f4_phi_m8_2", -8, 2), ("f4_phi_m12_3", -12, 3)];

impl GeneratorSet {
    /// `(name, weight, index)` of each generator, in column order.
    pub fn specs(self) -> &'static [(&'static str, i32, u32); 5] {
        match self {
            GeneratorSet::D4 => &D4_SPECS,
            GeneratorSet::F4 => &F4_SPECS,
        }
    }

    /// The group under which every form spanned by the set is invariant.
    pub fn group(self) -> Group {
        match self {
            GeneratorSet::D4 => Group::WD4,
            GeneratorSet::F4 => Group::OD4,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            GeneratorSet::D4 => "d4",
            GeneratorSet::F4 => "f4",
        }
    }
}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GeneratorSet {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "d4" => Ok(GeneratorSet::D4),
            "f4" => Ok(GeneratorSet::F4),
            _ => Err(format!("unknown generator set `{s}` (expected d4 or f4)")),
        }
    }
}

/// `E4^{e4} E6^{e6} ∏ gen_i^{gens[i]}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialIndex {
    pub set: GeneratorSet,
    pub gens: [u32; 5],
    pub e4: u32,
    pub e6: u32,
}

impl MonomialIndex {
    pub fn new(set: GeneratorSet, e4: u32, e6: u32, gens: [u32; 5]) -> Self {
        MonomialIndex { set, gens, e4, e6 }
    }

    pub fn one(set: GeneratorSet) -> Self {
        Self::new(set, 0, 0, [0; 5])
    }

    pub fn weight(&self) -> i32 {
        let g: i32 = self.set.specs().iter().zip(self.gens).map(|((_, w, _), e)| w * e as i32).sum();
        4 * self.e4 as i32 + 6 * self.e6 as i32 + g
    }

    pub fn index(&self) -> u32 {
        self.set.specs().iter().zip(self.gens).map(|((_, _, m), e)| m * e).sum()
    }

    pub fn degree(&self) -> u32 {
        self.e4 + self.e6 + self.gens.iter().sum::<u32>()
    }
}

impl fmt::Display for MonomialIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let mut push = |name: &str, e: u32| match e {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{e}")),
        };
        push("E4", self.e4);
        push("E6", self.e6);
        for ((name, _, _), e) in self.set.specs().iter().zip(self.gens) {
            push(name, e);
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// Every monomial of weight `k` and index `m`, sorted.
pub fn monomial_basis(k: i32, m: u32, set: GeneratorSet) -> Vec<MonomialIndex> {
    fn rec(set: GeneratorSet, i: usize, k: i32, m: u32, gens: &mut [u32; 5], out: &mut Vec<MonomialIndex>) {
        let specs = set.specs();
        if i == specs.len() {
            if m != 0 || k < 0 {
                return;
            }
            for e6 in 0..=(k / 6) {
                let rest = k - 6 * e6;
                if rest % 4 == 0 {
                    out.push(MonomialIndex::new(set, (rest / 4) as u32, e6 as u32, *gens));
                }
            }
            return;
        }
        let (_, w, mi) = specs[i];
        let mut e = 0;
        while e * mi <= m {
            gens[i] = e;
            rec(set, i + 1, k - w * e as i32, m - e * mi, gens, out);
            e += 1;
        }
        gens[i] = 0;
    }
    let mut out = Vec::new();
    rec(set, 0, k, m, &mut [0; 5], &mut out);
    out.sort();
    out
}

/// Dimensions and rank of a coefficient matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Certificate {
    pub rows: usize,
    pub columns: usize,
    pub rank: usize,
}

impl Certificate {
    pub fn is_full_column_rank(&self) -> bool {
        self.rank == self.columns
    }

    pub fn nullity(&self) -> usize {
        self.columns - self.rank
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionResult {
    pub set: GeneratorSet,
    /// Nonzero coefficients in monomial order.
    pub coefficients: Vec<(MonomialIndex, Rational)>,
    pub residual: FJSeries,
    pub certificate: Certificate,
}

impl DecompositionResult {
    pub fn coefficient(&self, m: &MonomialIndex) -> Rational {
        self.coefficients.iter().find(|(k, _)| k == m).map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    /// One `monomial -> coefficient` line per nonzero term.
    pub fn lines(&self) -> Vec<String> {
        self.coefficients.iter().map(|(m, c)| format!("{m} -> {}", rational::format(c))).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("form is not invariant under {element}: {diff}")]
    NotInvariant { element: String, diff: Box<SeriesDiff> },
    #[error(
        "form is not in the span of the {set} monomials of weight {weight}, index {index} (first conflict at q^{n}, exponent {exponent})"
    )]
    NoSolution { set: GeneratorSet, weight: i32, index: u32, n: usize, exponent: Exponent },
    #[error("decomposition not unique: nullity {nullity}")]
    RankDeficient { result: Box<DecompositionResult>, nullity: usize },
    #[error("polynomial is not homogeneous or is empty")]
    Inhomogeneous,
    #[error("monomial {0} belongs to another generator set")]
    ForeignMonomial(String),
    #[error(transparent)]
    Series(#[from] FjError),
}

/// Generator series for one set, with a shared cache of monomial series.
pub struct Decomposer {
    set: GeneratorSet,
    n: usize,
    gens: [FJSeries; 5],
    e4: FJSeries,
    e6: FJSeries,
    cache: Mutex<HashMap<MonomialIndex, Arc<FJSeries>>>,
}

impl Decomposer {
    /// `gens` must follow the column order of `set.specs()`, at a common
    /// truncation.
    pub fn new(set: GeneratorSet, gens: [FJSeries; 5]) -> Self {
        let n = gens.iter().map(|g| g.truncation()).min().unwrap_or(0);
        let gens = gens.map(|g| g.truncate(n));
        Decomposer {
            set,
            n,
            gens,
            e4: FJSeries::eisenstein(Eisenstein::E4, Lattice::D4, n),
            e6: FJSeries::eisenstein(Eisenstein::E6, Lattice::D4, n),
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn from_d4(d4: &D4Generators) -> Self {
        Self::new(GeneratorSet::D4, d4.all().map(|g| g.clone()))
    }

    pub fn from_f4(f4: &F4Generators) -> Self {
        Self::new(GeneratorSet::F4, f4.all().map(|g| g.clone()))
    }

    pub fn set(&self) -> GeneratorSet {
        self.set
    }

    pub fn truncation(&self) -> usize {
        self.n
    }

    pub fn generator(&self, i: usize) -> &FJSeries {
        &self.gens[i]
    }

    /// The series of a monomial, built by peeling off one factor at a time.
    pub fn monomial_series(&self, m: &MonomialIndex) -> Result<Arc<FJSeries>, DecomposeError> {
        if m.set != self.set {
            return Err(DecomposeError::ForeignMonomial(m.to_string()));
        }
        if let Some(s) = self.cache.lock().expect("cache poisoned").get(m) {
            return Ok(s.clone());
        }
        let series = if m.degree() == 0 {
            FJSeries::one(Lattice::D4, self.n)
        } else {
            let mut parent = *m;
            let factor = if m.e4 > 0 {
                parent.e4 -= 1;
                &self.e4
            } else if m.e6 > 0 {
                parent.e6 -= 1;
                &self.e6
            } else {
                let i = (0..5).rev().find(|&i| m.gens[i] > 0).expect("nonzero degree");
                parent.gens[i] -= 1;
                &self.gens[i]
            };
            self.monomial_series(&parent)?.mul(factor)?
        };
        let series = Arc::new(series);
        self.cache.lock().expect("cache poisoned").insert(*m, series.clone());
        Ok(series)
    }

    /// `Σ c · monomial` for a nonempty homogeneous polynomial.
    pub fn expand(&self, poly: &[(MonomialIndex, Rational)]) -> Result<FJSeries, DecomposeError> {
        let Some((first, _)) = poly.first() else {
            return Err(DecomposeError::Inhomogeneous);
        };
        let (k, m) = (first.weight(), first.index());
        let mut acc = FJSeries::zero(k, m, Lattice::D4, self.n);
        for (mono, c) in poly {
            if mono.weight() != k || mono.index() != m {
                return Err(DecomposeError::Inhomogeneous);
            }
            acc = acc.add_scaled(self.monomial_series(mono)?.as_ref(), c)?;
        }
        Ok(acc)
    }

    /// Checks invariance under the generators of the group attached to the
    /// set.
    pub fn check_invariant(&self, phi: &FJSeries) -> Result<(), DecomposeError> {
        for g in group_generators(self.set.group()) {
            let moved = phi.act(&g)?;
            if let Some(diff) = moved.first_difference(phi) {
                return Err(DecomposeError::NotInvariant { element: g.name(), diff: Box::new(diff) });
            }
        }
        Ok(())
    }

    /// Solves for `φ` as a combination of the monomials of its weight and
    /// index, matching every coefficient at a W(D4)-orbit representative up to
    /// the common truncation.
    pub fn decompose(&self, phi: &FJSeries) -> Result<DecompositionResult, DecomposeError> {
        if phi.lattice() != Lattice::D4 {
            return Err(FjError::WrongLattice { expected: Lattice::D4, found: phi.lattice() }.into());
        }
        self.check_invariant(phi)?;
        let t = phi.truncation().min(self.n);
        let phi = phi.truncate(t);
        let (k, m) = (phi.weight(), phi.index());
        let basis = monomial_basis(k, m, self.set);
        let columns = basis.iter().map(|b| self.monomial_series(b).map(|s| s.truncate(t))).collect::<Result<Vec<_>, _>>()?;
        let mut refs: Vec<&FJSeries> = columns.iter().collect();
        refs.push(&phi);
        let rows = row_keys(&refs);

        let mut ech = Echelon::new(basis.len());
        let mut conflict = None;
        for (n, e) in &rows {
            let coeffs: Vec<Rational> = columns.iter().map(|c| c.coeff(*n).coeff(e)).collect();
            if ech.push(coeffs, phi.coeff(*n).coeff(e)) == RowOutcome::Inconsistent && conflict.is_none() {
                conflict = Some((*n, *e));
            }
        }
        if let Some((n, exponent)) = conflict {
            return Err(DecomposeError::NoSolution { set: self.set, weight: k, index: m, n, exponent });
        }
        let x = ech.particular_solution().expect("consistent system");
        let mut residual = phi.clone();
        for (c, s) in x.iter().zip(&columns) {
            if !c.is_zero() {
                residual = residual.add_scaled(s, &-c.clone())?;
            }
        }
        let coefficients = basis.into_iter().zip(x).filter(|(_, c)| !c.is_zero()).collect();
        let certificate = Certificate { rows: rows.len(), columns: columns.len(), rank: ech.rank() };
        let result = DecompositionResult { set: self.set, coefficients, residual, certificate };
        if !certificate.is_full_column_rank() {
            return Err(DecomposeError::RankDeficient { nullity: certificate.nullity(), result: Box::new(result) });
        }
        Ok(result)
    }

    /// Rank of the coefficient matrix of the `(k, m)` monomial cell.
    pub fn cell_rank(&self, k: i32, m: u32) -> Result<CellRank, DecomposeError> {
        let basis = monomial_basis(k, m, self.set);
        let columns = basis.iter().map(|b| self.monomial_series(b)).collect::<Result<Vec<_>, _>>()?;
        let refs: Vec<&FJSeries> = columns.iter().map(|c| c.as_ref()).collect();
        let rows = row_keys(&refs);
        let mut ech = Echelon::new(basis.len());
        for (n, e) in &rows {
            if ech.is_full_rank() {
                break;
            }
            ech.push(columns.iter().map(|c| c.coeff(*n).coeff(e)).collect(), Rational::zero());
        }
        Ok(CellRank { weight: k, index: m, certificate: Certificate { rows: rows.len(), columns: basis.len(), rank: ech.rank() } })
    }
}

/// `(n, l)` positions with `l` a W(D4)-orbit representative occurring in any
/// of the series, sorted.
fn row_keys(series: &[&FJSeries]) -> Vec<(usize, Exponent)> {
    let mut keys = std::collections::BTreeSet::new();
    for s in series {
        for (n, p) in s.coeffs().iter().enumerate() {
            for e in p.exponents() {
                if wd4_canonical(e) == e {
                    keys.insert((n, e));
                }
            }
        }
    }
    keys.into_iter().collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CellRank {
    pub weight: i32,
    pub index: u32,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependenceReport {
    pub set: GeneratorSet,
    pub truncation: usize,
    /// Nonempty cells in `(index, weight)` order.
    pub cells: Vec<CellRank>,
}

impl IndependenceReport {
    pub fn deficient(&self) -> Vec<&CellRank> {
        self.cells.iter().filter(|c| !c.certificate.is_full_column_rank()).collect()
    }

    pub fn passed(&self) -> bool {
        self.deficient().is_empty()
    }
}

/// Ranks of every nonempty cell with `floor ≤ k ≤ ceiling` and `m ≤ cap`.
pub fn independence_certificate(dec: &Decomposer, floor: i32, ceiling: i32, cap: u32) -> Result<IndependenceReport, DecomposeError> {
    let mut grid = Vec::new();
    for m in 0..=cap {
        for k in floor..=ceiling {
            if !monomial_basis(k, m, dec.set).is_empty() {
                grid.push((k, m));
            }
        }
    }
    let mut cells = grid.par_iter().map(|&(k, m)| dec.cell_rank(k, m)).collect::<Result<Vec<_>, _>>()?;
    cells.sort_by_key(|c| (c.index, c.weight));
    Ok(IndependenceReport { set: dec.set, truncation: dec.n, cells })
}

/// Collects a polynomial into canonical order, merging repeated monomials and
/// dropping zero coefficients.
pub fn canonical_polynomial(poly: &[(MonomialIndex, Rational)]) -> Vec<(MonomialIndex, Rational)> {
    let mut map: BTreeMap<MonomialIndex, Rational> = BTreeMap::new();
    for (m, c) in poly {
        *map.entry(*m).or_insert_with(Rational::zero) += c;
    }
    map.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_counts() {
        assert_eq!(monomial_basis(-6, 2, GeneratorSet::D4).len(), 3);
        assert_eq!(monomial_basis(-4, 2, GeneratorSet::D4).len(), 6);
        assert!(monomial_basis(-13, 1, GeneratorSet::D4).is_empty());
        assert!(monomial_basis(-13, 1, GeneratorSet::F4).is_empty());
        assert_eq!(monomial_basis(12, 0, GeneratorSet::F4).len(), 2);
        assert_eq!(monomial_basis(0, 0, GeneratorSet::D4), vec![MonomialIndex::one(GeneratorSet::D4)]);
    }

    #[test]
    fn basis_entries_have_requested_grading() {
        for set in [GeneratorSet::D4, GeneratorSet::F4] {
            for m in 0..4 {
                for k in -30..14 {
                    let mut seen = std::collections::HashSet::new();
                    for b in monomial_basis(k, m, set) {
                        assert_eq!((b.weight(), b.index()), (k, m));
                        assert!(seen.insert(b));
                    }
                }
            }
        }
    }

    #[test]
    fn monomial_names() {
        let m = MonomialIndex::new(GeneratorSet::D4, 1, 0, [0, 0, 2, 0, 0]);
        assert_eq!(m.to_string(), "E4*phi_m4_1^2");
        assert_eq!(MonomialIndex::one(GeneratorSet::F4).to_string(), "1");
        assert_eq!("F4".parse::<GeneratorSet>(), Ok(GeneratorSet::F4));
    }

    #[test]
    fn canonical_polynomial_merges() {
        let a = MonomialIndex::new(GeneratorSet::D4, 0, 0, [1, 0, 0, 0, 0]);
        let b = MonomialIndex::new(GeneratorSet::D4, 0, 0, [0, 1, 0, 0, 0]);
        let p = canonical_polynomial(&[(a, rational::int(1)), (b, rational::int(2)), (a, rational::int(-1))]);
        assert_eq!(p, vec![(b, rational::int(2))]);
    }
}
