//! Exact Gaussian elimination over the rationals.
//!
//! Rows are streamed into a reduced row echelon form, so tall systems (many
//! Fourier coefficients, few unknowns) never need to be stored whole.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::rational::{bit_size, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("inconsistent system (row {row})")]
    Inconsistent { row: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowOutcome {
    NewPivot(usize),
    Redundant,
    Inconsistent,
}

#[derive(Debug, Clone)]
struct PivotRow {
    pivot: usize,
    coeffs: Vec<Rational>,
    rhs: Rational,
}

/// Incremental reduced row echelon form of an augmented system `A x = b`.
#[derive(Debug, Clone)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<PivotRow>,
    pushed: usize,
    first_inconsistent: Option<usize>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new(), pushed: 0, first_inconsistent: None }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn nullity(&self) -> usize {
        self.ncols - self.rows.len()
    }

    pub fn rows_pushed(&self) -> usize {
        self.pushed
    }

    pub fn is_full_rank(&self) -> bool {
        self.rows.len() == self.ncols
    }

    pub fn first_inconsistent(&self) -> Option<usize> {
        self.first_inconsistent
    }

    /// Adds a row. The pivot is the remaining nonzero entry of smallest bit
    /// size, lowest column first on ties.
    pub fn push(&mut self, mut coeffs: Vec<Rational>, mut rhs: Rational) -> RowOutcome {
        assert_eq!(coeffs.len(), self.ncols, "row width");
        let row_index = self.pushed;
        self.pushed += 1;
        for r in &self.rows {
            let f = coeffs[r.pivot].clone();
            if f.is_zero() {
                continue;
            }
            for (c, v) in coeffs.iter_mut().zip(&r.coeffs) {
                if !v.is_zero() {
                    *c -= &f * v;
                }
            }
            rhs -= &f * &r.rhs;
        }
        let pivot = coeffs.iter().enumerate().filter(|(_, v)| !v.is_zero()).min_by_key(|(i, v)| (bit_size(v), *i)).map(|(i, _)| i);
        let Some(p) = pivot else {
            if rhs.is_zero() {
                return RowOutcome::Redundant;
            }
            self.first_inconsistent.get_or_insert(row_index);
            return RowOutcome::Inconsistent;
        };
        let inv = Rational::one() / &coeffs[p];
        for v in coeffs.iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        rhs *= &inv;
        for r in self.rows.iter_mut() {
            let f = r.coeffs[p].clone();
            if f.is_zero() {
                continue;
            }
            for (c, v) in r.coeffs.iter_mut().zip(&coeffs) {
                if !v.is_zero() {
                    *c -= &f * v;
                }
            }
            r.rhs -= &f * &rhs;
        }
        self.rows.push(PivotRow { pivot: p, coeffs, rhs });
        RowOutcome::NewPivot(p)
    }

    /// The solution with every free variable set to zero.
    pub fn particular_solution(&self) -> Result<Vec<Rational>, LinAlgError> {
        if let Some(row) = self.first_inconsistent {
            return Err(LinAlgError::Inconsistent { row });
        }
        let mut x = vec![Rational::zero(); self.ncols];
        for r in &self.rows {
            x[r.pivot] = r.rhs.clone();
        }
        Ok(x)
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| !self.rows.iter().any(|r| r.pivot == *c)).collect()
    }
}

/// Solution summary for a dense system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub x: Vec<Rational>,
    pub rank: usize,
    pub nullity: usize,
}

pub fn solve(rows: &[Vec<Rational>], rhs: &[Rational], ncols: usize) -> Result<Solution, LinAlgError> {
    let mut ech = Echelon::new(ncols);
    for (r, b) in rows.iter().zip(rhs) {
        ech.push(r.clone(), b.clone());
    }
    let x = ech.particular_solution()?;
    Ok(Solution { x, rank: ech.rank(), nullity: ech.nullity() })
}

pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    let mut ech = Echelon::new(ncols);
    for r in rows {
        ech.push(r.clone(), Rational::zero());
    }
    ech.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use proptest::prelude::*;

    fn row(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn square_system() {
        let s = solve(&[row(&[2, 1]), row(&[1, 3])], &[int(3), int(5)], 2).unwrap();
        assert_eq!(s.x, vec![rat(4, 5), rat(7, 5)]);
        assert_eq!(s.rank, 2);
    }

    #[test]
    fn overdetermined_consistent_and_not() {
        let rows = [row(&[1, 0]), row(&[0, 1]), row(&[1, 1])];
        assert!(solve(&rows, &[int(1), int(2), int(3)], 2).is_ok());
        assert_eq!(solve(&rows, &[int(1), int(2), int(4)], 2), Err(LinAlgError::Inconsistent { row: 2 }));
    }

    #[test]
    fn rank_deficient() {
        let s = solve(&[row(&[1, 2]), row(&[2, 4])], &[int(1), int(2)], 2).unwrap();
        assert_eq!(s.rank, 1);
        assert_eq!(s.nullity, 1);
        assert_eq!(rank(&[row(&[0, 0])], 2), 0);
    }

    proptest! {
        #[test]
        fn recovers_planted_solution(
            entries in prop::collection::vec(-9i64..=9, 12),
            sol in prop::collection::vec(-9i64..=9, 3),
        ) {
            let rows: Vec<Vec<Rational>> = entries.chunks(3).map(row).collect();
            let x = row(&sol);
            let rhs: Vec<Rational> = rows.iter().map(|r| r.iter().zip(&x).map(|(a, b)| a * b).sum()).collect();
            let s = solve(&rows, &rhs, 3).unwrap();
            for (r, b) in rows.iter().zip(&rhs) {
                let lhs: Rational = r.iter().zip(&s.x).map(|(a, b)| a * b).sum();
                prop_assert_eq!(&lhs, b);
            }
            if s.rank == 3 {
                prop_assert_eq!(s.x, x);
            }
        }
    }
}
