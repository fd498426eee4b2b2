//! Exact dense linear algebra over the rationals.
//!
//! Everything here is plain Gauss-Jordan elimination on `BigRational`
//! entries. The matrices that show up in this crate are small (at most a
//! few hundred rows and columns), so no fraction-free tricks are needed.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rational(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `"3"`, `"-7"` or `"2/5"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    match text.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num.trim().parse().map_err(|_| bad())?;
            let den: BigInt = den.trim().parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(num, den))
        }
        None => text.parse::<BigInt>().map(Rational::from_integer).map_err(|_| bad()),
    }
}

/// A point of n-space in exact rational coordinates (`coords[k]` is the
/// coefficient of `e_{k+1}`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalVector(pub Vec<Rational>);

impl RationalVector {
    pub fn from_integers(values: &[i64]) -> Self {
        Self(values.iter().map(|&v| rational(v)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Parses one line of a point list: comma-separated integers or `a/b`.
    pub fn parse(line: &str) -> Result<Self> {
        line.split(',').map(parse_rational).collect::<Result<Vec<_>>>().map(Self)
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Parses a point list file: one point per line, blank lines and `#`
/// comments skipped.
pub fn parse_point_list(text: &str) -> Result<Vec<RationalVector>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(RationalVector::parse)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Outcome of row reduction: the pivot column of each nonzero row.
struct Echelon {
    pivots: Vec<usize>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_integer_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| rational(v)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Appends the rows of `other` below `self`.
    pub fn stack(&mut self, other: &RationalMatrix) {
        if self.rows == 0 && self.cols == 0 {
            self.cols = other.cols;
        }
        assert_eq!(self.cols, other.cols, "column mismatch");
        self.data.extend_from_slice(&other.data);
        self.rows += other.rows;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduces `self` in place to reduced row echelon form.
    fn reduce(&mut self) -> Echelon {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].recip();
            for j in c..self.cols {
                let v = &self[(r, j)] * &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let factor = self[(i, c)].clone();
                for j in c..self.cols {
                    if self[(r, j)].is_zero() {
                        continue;
                    }
                    let v = &self[(i, j)] - &factor * &self[(r, j)];
                    self[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { pivots }
    }

    pub fn rank(&self) -> usize {
        self.clone().reduce().pivots.len()
    }

    /// A basis of `{x : self * x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let mut m = self.clone();
        let echelon = m.reduce();
        let mut is_pivot = vec![false; self.cols];
        for &p in &echelon.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![Rational::zero(); self.cols];
                v[free] = Rational::one();
                for (row, &p) in echelon.pivots.iter().enumerate() {
                    v[p] = -m[(row, free)].clone();
                }
                v
            })
            .collect()
    }

    /// Solves `self * x = rhs` for the unique `x`.
    ///
    /// Returns `RankDeficient` if the columns are dependent and
    /// `Inconsistent` if `rhs` is outside the column space.
    pub fn solve(&self, rhs: &[Rational]) -> Result<Vec<Rational>> {
        assert_eq!(rhs.len(), self.rows, "rhs length mismatch");
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = rhs[i].clone();
        }
        let echelon = aug.reduce();
        if echelon.pivots.last() == Some(&self.cols) {
            return Err(Error::Inconsistent);
        }
        if echelon.pivots.len() < self.cols {
            return Err(Error::RankDeficient {
                rank: echelon.pivots.len(),
                needed: self.cols,
            });
        }
        Ok((0..self.cols).map(|i| aug[(i, self.cols)].clone()).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = &self[(i, j)];
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(RationalMatrix::identity(4).rank(), 4);
        assert_eq!(RationalMatrix::zeros(3, 5).rank(), 0);
        assert_eq!(RationalMatrix::from_integer_rows(&[vec![1, 2], vec![2, 4]]).rank(), 1);
        assert_eq!(RationalMatrix::zeros(0, 0).rank(), 0);
    }

    #[test]
    fn solve_unique_and_failures() {
        let m = RationalMatrix::from_integer_rows(&[vec![1, -1], vec![0, 1], vec![1, 0]]);
        let x = m.solve(&[rational(1), rational(2), rational(3)]).unwrap();
        assert_eq!(x, vec![rational(3), rational(2)]);

        assert_eq!(
            m.solve(&[rational(1), rational(2), rational(4)]),
            Err(Error::Inconsistent)
        );

        let singular = RationalMatrix::from_integer_rows(&[vec![1, 2], vec![2, 4]]);
        assert!(matches!(
            singular.solve(&[rational(1), rational(2)]),
            Err(Error::RankDeficient { rank: 1, needed: 2 })
        ));
    }

    #[test]
    fn nullspace_is_annihilated() {
        let m = RationalMatrix::from_integer_rows(&[vec![1, 2, 3, 4], vec![2, 4, 7, 9]]);
        let kernel = m.nullspace();
        assert_eq!(kernel.len(), 2);
        for v in &kernel {
            for i in 0..m.rows() {
                let dot: Rational = m.row(i).iter().zip(v).map(|(a, b)| a * b).sum();
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn parse_points() {
        let pts = parse_point_list("1,2,-3\n# c\n\n1/2, -4/6 ,0\n").unwrap();
        assert_eq!(pts.len(), 2);
        assert_eq!(pts[1].0[1], Rational::new(BigInt::from(-2), BigInt::from(3)));
        assert!(parse_point_list("1,x").is_err());
        assert!(parse_point_list("1/0").is_err());
    }
}
