//! Exact integer and rational linear algebra over lattices.
//!
//! Everything here is arbitrary precision. The main consumers are the torus
//! cohomology computations: Smith normal form gives the finite groups
//! `ker / im` of lattice involutions, and [`QuotientReducer`] produces
//! canonical representatives of points of `(Q^n / Z^n)` modulo a rational
//! subspace.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Reduces a rational into `[0, 1)`.
pub fn fold_unit(x: &Rational) -> Rational {
    x - x.floor()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeError {
    NotInvolution,
    DimensionMismatch { expected: usize, found: usize },
    /// The modded-out subspace does not contain the kernel of the congruence matrix.
    IncompatibleSubspace,
    Singular,
    InvalidDegree(i64),
}

impl fmt::Display for LatticeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeError::NotInvolution => write!(f, "matrix is not an involution"),
            LatticeError::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            LatticeError::IncompatibleSubspace => {
                write!(f, "quotient subspace does not contain the solution directions")
            }
            LatticeError::Singular => write!(f, "matrix is singular"),
            LatticeError::InvalidDegree(d) => {
                write!(f, "Tate degree {d} is not a parity (expected 0 or 1)")
            }
        }
    }
}

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "]")
    }
}

impl core::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.as_ref().len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.as_ref().len(), c, "ragged matrix");
            for (j, v) in row.as_ref().iter().enumerate() {
                m[(i, j)] = BigInt::from(*v);
            }
        }
        m
    }

    pub fn from_big_rows(rows: &[Vec<BigInt>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].to_i64()).collect())
            .collect()
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

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &BigInt) -> IntMatrix {
        let data = self.data.iter().map(|a| a * s).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
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

    pub fn is_involution(&self) -> bool {
        self.is_square() && self.mul(self).is_identity()
    }

    /// `M v` for a rational column vector.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = &self[(i, j)];
                    if !a.is_zero() && !x.is_zero() {
                        acc += x * Rational::from_integer(a.clone());
                    }
                }
                acc
            })
            .collect()
    }

    /// `M v` for an integer column vector.
    pub fn apply_int(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for (j, x) in v.iter().enumerate() {
                    acc += &self[(i, j)] * x;
                }
                acc
            })
            .collect()
    }

    pub fn to_rational(&self) -> Vec<Vec<Rational>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols).map(|j| Rational::from_integer(self[(i, j)].clone())).collect()
            })
            .collect()
    }

    /// Determinant by rational Gaussian elimination.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut a = self.to_rational();
        let n = self.rows;
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return BigInt::zero();
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            let pivot = a[c][c].clone();
            det *= &pivot;
            for r in c + 1..n {
                if a[r][c].is_zero() {
                    continue;
                }
                let f = &a[r][c] / &pivot;
                for k in c..n {
                    let sub = &f * &a[c][k];
                    a[r][k] -= sub;
                }
            }
        }
        det.to_integer()
    }

    pub fn rank(&self) -> usize {
        rational_rank(&self.to_rational())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += f * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(src, j)] * f;
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += f * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, src)] * f;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }
}

/// Result of [`smith_normal_form`]: `u * m * v == d`.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries, in order.
    pub fn divisors(&self) -> Vec<BigInt> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d[(i, i)].clone()).filter(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.divisors().len()
    }
}

/// Smith normal form with unimodular transforms.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (r, c) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);

    let mut t = 0;
    while t < r.min(c) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                if d[(i, j)].is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if d[(bi, bj)].abs() <= d[(i, j)].abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..r {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -(d[(i, t)].div_floor(&d[(t, t)]));
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !d[(i, t)].is_zero() {
                    d.swap_rows(t, i);
                    u.swap_rows(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..c {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -(d[(t, j)].div_floor(&d[(t, t)]));
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !d[(t, j)].is_zero() {
                    d.swap_cols(t, j);
                    v.swap_cols(t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility of the trailing block
            let mut bad_row = None;
            'scan: for i in t + 1..r {
                for j in t + 1..c {
                    if !d[(i, j)].is_multiple_of(&d[(t, t)]) {
                        bad_row = Some(i);
                        break 'scan;
                    }
                }
            }
            match bad_row {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    SmithForm { u, d, v }
}

/// Row-style Hermite normal form: returns the nonzero rows of an echelon
/// basis of the row lattice, pivots positive, entries above each pivot
/// reduced into `[0, pivot)`.
pub fn hermite_rows(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let mut a = m.clone();
    let (r, c) = (a.rows(), a.cols());
    let mut pr = 0;
    let mut pivots = Vec::new();
    for col in 0..c {
        if pr == r {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in pr..r {
                if a[(i, col)].is_zero() {
                    continue;
                }
                match best {
                    Some(b) if a[(b, col)].abs() <= a[(i, col)].abs() => {}
                    _ => best = Some(i),
                }
            }
            let Some(b) = best else { break };
            a.swap_rows(pr, b);
            let mut done = true;
            for i in pr + 1..r {
                if a[(i, col)].is_zero() {
                    continue;
                }
                let q = -(a[(i, col)].div_floor(&a[(pr, col)]));
                a.add_row_multiple(i, pr, &q);
                if !a[(i, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[(pr, col)].is_zero() {
            continue;
        }
        if a[(pr, col)].is_negative() {
            a.negate_row(pr);
        }
        for i in 0..pr {
            let q = -(a[(i, col)].div_floor(&a[(pr, col)]));
            a.add_row_multiple(i, pr, &q);
        }
        pivots.push(col);
        pr += 1;
    }
    (0..pr).map(|i| a.row(i)).collect()
}

pub fn rational_rank(m: &[Vec<Rational>]) -> usize {
    rref(m).len()
}

/// Reduced row echelon form; returns the nonzero rows.
pub fn rref(m: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pr = 0;
    for c in 0..cols {
        if pr == rows {
            break;
        }
        let Some(p) = (pr..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(pr, p);
        let inv = a[pr][c].recip();
        for k in 0..cols {
            a[pr][k] = &a[pr][k] * &inv;
        }
        for r in 0..rows {
            if r == pr || a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            for k in 0..cols {
                let sub = &f * &a[pr][k];
                a[r][k] -= sub;
            }
        }
        pr += 1;
    }
    a.truncate(pr);
    a
}

/// Inverse of a square rational matrix.
pub fn rational_inverse(m: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>, LatticeError> {
    let n = m.len();
    let mut aug: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            if row.len() != n {
                return Err(LatticeError::DimensionMismatch { expected: n, found: row.len() });
            }
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            Ok(r)
        })
        .collect::<Result<_, _>>()?;
    let red = rref(&aug);
    if red.len() < n || (0..n).any(|i| !red[i][i].is_one()) {
        return Err(LatticeError::Singular);
    }
    aug = red;
    Ok(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn rat_mat_vec(m: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).fold(Rational::zero(), |s, x| s + x))
        .collect()
}

pub fn rat_mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner);
            (0..cols)
                .map(|j| {
                    (0..inner).fold(Rational::zero(), |s, k| s + &row[k] * &b[k][j])
                })
                .collect()
        })
        .collect()
}

pub fn transpose_rat(m: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Converts a rational matrix to integers, if every entry is integral.
pub fn integral_matrix(m: &[Vec<Rational>]) -> Option<IntMatrix> {
    let cols = m.first().map_or(0, Vec::len);
    let rows: Option<Vec<Vec<BigInt>>> = m
        .iter()
        .map(|r| r.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect())
        .collect();
    rows.map(|rows| IntMatrix::from_big_rows(&rows, cols))
}

pub fn lcm_of_denominators<'a, I: IntoIterator<Item = &'a Rational>>(xs: I) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Finite abelian group given by its invariant factors `d1 | d2 | ... | dk`, all `>= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    divisors: Vec<BigInt>,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        FiniteAbelianGroup { divisors: Vec::new() }
    }

    /// Builds the group from any list of cyclic orders; they are put into
    /// invariant-factor form.
    pub fn from_cyclic_orders<I: IntoIterator<Item = BigInt>>(orders: I) -> Self {
        let orders: Vec<BigInt> = orders.into_iter().filter(|d| !d.is_zero()).map(|d| d.abs()).collect();
        if orders.is_empty() {
            return Self::trivial();
        }
        let mut diag = IntMatrix::zeros(orders.len(), orders.len());
        for (i, d) in orders.iter().enumerate() {
            diag[(i, i)] = d.clone();
        }
        let snf = smith_normal_form(&diag);
        FiniteAbelianGroup { divisors: snf.divisors().into_iter().filter(|d| !d.is_one()).collect() }
    }

    pub fn divisors(&self) -> &[BigInt] {
        &self.divisors
    }

    pub fn order(&self) -> BigInt {
        self.divisors.iter().fold(BigInt::one(), |a, b| a * b)
    }

    pub fn is_trivial(&self) -> bool {
        self.divisors.is_empty()
    }

    /// Number of cyclic factors (the minimal number of generators).
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.divisors.is_empty() {
            return write!(f, "1");
        }
        for (i, d) in self.divisors.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "Z/{d}")?;
        }
        Ok(())
    }
}

/// Degree of a Tate cohomology group of `Z/2`; only the parity matters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl TryFrom<i64> for Parity {
    type Error = LatticeError;
    fn try_from(d: i64) -> Result<Self, LatticeError> {
        match d {
            0 => Ok(Parity::Even),
            1 => Ok(Parity::Odd),
            other => Err(LatticeError::InvalidDegree(other)),
        }
    }
}

/// Tate cohomology of the lattice `Z^n` with the involution `theta`:
/// even degree `ker(1-theta)/im(1+theta)`, odd degree `ker(1+theta)/im(1-theta)`.
///
/// The image of `1 +/- theta` has saturation equal to the corresponding
/// kernel, so the quotient is the torsion of the cokernel.
pub fn lattice_tate(theta: &IntMatrix, degree: Parity) -> Result<FiniteAbelianGroup, LatticeError> {
    if !theta.is_involution() {
        return Err(LatticeError::NotInvolution);
    }
    let id = IntMatrix::identity(theta.rows());
    let image_map = match degree {
        Parity::Even => id.add(theta),
        Parity::Odd => id.sub(theta),
    };
    let snf = smith_normal_form(&image_map);
    Ok(FiniteAbelianGroup::from_cyclic_orders(snf.divisors()))
}

/// A point of `(Q^n)/(Z^n)`, i.e. a finite-order element of a torus with
/// cocharacter lattice `Z^n`, kept with every coordinate in `[0, 1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusPoint(Vec<Rational>);

impl fmt::Debug for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl TorusPoint {
    pub fn new(coords: Vec<Rational>) -> Self {
        TorusPoint(coords.iter().map(fold_unit).collect())
    }

    pub fn zero(n: usize) -> Self {
        TorusPoint(vec![Rational::zero(); n])
    }

    pub fn from_fractions(parts: &[(i64, i64)]) -> Self {
        Self::new(parts.iter().map(|&(n, d)| frac(n, d)).collect())
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &TorusPoint) -> TorusPoint {
        TorusPoint::new(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &TorusPoint) -> TorusPoint {
        TorusPoint::new(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> TorusPoint {
        TorusPoint::new(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> TorusPoint {
        let k = rat(k);
        TorusPoint::new(self.0.iter().map(|a| a * &k).collect())
    }

    /// Image under an integer matrix acting on the cocharacter lattice.
    pub fn transform(&self, m: &IntMatrix) -> TorusPoint {
        TorusPoint::new(m.apply(&self.0))
    }

    /// Order of the point in `Q^n / Z^n`.
    pub fn order(&self) -> BigInt {
        lcm_of_denominators(&self.0)
    }
}

/// Canonical representatives of `Q^n / (S + Z^n)` for a fixed rational subspace `S`.
///
/// A point is first reduced against the reduced echelon basis of `S` (all
/// pivot coordinates become zero), then the remaining coordinates are
/// reduced modulo the projection of `Z^n`, using its Hermite basis.
#[derive(Debug, Clone)]
pub struct QuotientReducer {
    dim: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
    free: Vec<usize>,
    scale: BigInt,
    lattice: Vec<Vec<BigInt>>,
}

impl QuotientReducer {
    pub fn new(dim: usize, subspace: &[Vec<Rational>]) -> Result<Self, LatticeError> {
        for v in subspace {
            if v.len() != dim {
                return Err(LatticeError::DimensionMismatch { expected: dim, found: v.len() });
            }
        }
        let basis = rref(subspace);
        let pivots: Vec<usize> = basis
            .iter()
            .map(|row| row.iter().position(|x| !x.is_zero()).expect("rref rows are nonzero"))
            .collect();
        let free: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();

        let mut reducer = QuotientReducer {
            dim,
            basis,
            pivots,
            free,
            scale: BigInt::one(),
            lattice: Vec::new(),
        };
        let projected: Vec<Vec<Rational>> = (0..dim)
            .map(|i| {
                let mut e = vec![Rational::zero(); dim];
                e[i] = Rational::one();
                reducer.project(&e)
            })
            .collect();
        let scale = lcm_of_denominators(projected.iter().flatten());
        let scale_r = Rational::from_integer(scale.clone());
        let rows: Vec<Vec<BigInt>> = projected
            .iter()
            .map(|p| p.iter().map(|x| (x * &scale_r).to_integer()).collect())
            .collect();
        let m = IntMatrix::from_big_rows(&rows, reducer.free.len());
        reducer.lattice = hermite_rows(&m);
        reducer.scale = scale;
        debug_assert_eq!(reducer.lattice.len(), reducer.free.len());
        Ok(reducer)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn subspace_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn subspace_basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    /// Removes the subspace component; returns coordinates on the free columns.
    fn project(&self, v: &[Rational]) -> Vec<Rational> {
        let mut w = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (k, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    w[k] -= &f * x;
                }
            }
        }
        self.free.iter().map(|&c| w[c].clone()).collect()
    }

    /// Whether `v` lies in the rational subspace.
    pub fn in_subspace(&self, v: &[Rational]) -> bool {
        self.project(v).iter().all(Zero::is_zero)
    }

    pub fn canonical(&self, v: &[Rational]) -> TorusPoint {
        assert_eq!(v.len(), self.dim, "point dimension mismatch");
        let scale = Rational::from_integer(self.scale.clone());
        let mut w: Vec<Rational> = self.project(v).into_iter().map(|x| x * &scale).collect();
        for (i, row) in self.lattice.iter().enumerate() {
            let pivot = Rational::from_integer(row[i].clone());
            let q = (&w[i] / &pivot).floor();
            if q.is_zero() {
                continue;
            }
            for (k, x) in row.iter().enumerate().skip(i) {
                if !x.is_zero() {
                    w[k] -= &q * Rational::from_integer(x.clone());
                }
            }
        }
        let mut out = vec![Rational::zero(); self.dim];
        for (slot, &c) in self.free.iter().enumerate() {
            out[c] = &w[slot] / &scale;
        }
        TorusPoint(out)
    }

    pub fn canonical_point(&self, p: &TorusPoint) -> TorusPoint {
        self.canonical(p.coords())
    }
}

/// All `v` in `Q^n / Z^n` with `A v = b (mod Z^n)`, taken modulo
/// `modout + Z^n`, each in canonical form, sorted.
pub fn solve_affine_congruence(
    a: &IntMatrix,
    b: &TorusPoint,
    modout: &[Vec<Rational>],
) -> Result<Vec<TorusPoint>, LatticeError> {
    let n = a.cols();
    if b.dim() != a.rows() {
        return Err(LatticeError::DimensionMismatch { expected: a.rows(), found: b.dim() });
    }
    let reducer = QuotientReducer::new(n, modout)?;
    solve_with_reducer(a, b, &reducer)
}

pub fn solve_with_reducer(
    a: &IntMatrix,
    b: &TorusPoint,
    reducer: &QuotientReducer,
) -> Result<Vec<TorusPoint>, LatticeError> {
    let n = a.cols();
    let snf = smith_normal_form(a);
    let r = snf.rank();
    for j in r..n {
        let dir: Vec<Rational> = snf.v.col(j).into_iter().map(Rational::from_integer).collect();
        if !reducer.in_subspace(&dir) {
            return Err(LatticeError::IncompatibleSubspace);
        }
    }
    let ub = snf.u.apply(b.coords());
    if ub.iter().skip(r).any(|x| !x.is_integer()) {
        return Ok(Vec::new());
    }
    let divisors: Vec<BigInt> = (0..r).map(|i| snf.d[(i, i)].clone()).collect();
    let mut out = BTreeSet::new();
    let mut counter = vec![BigInt::zero(); r];
    loop {
        let mut w = vec![Rational::zero(); n];
        for i in 0..r {
            w[i] = (&ub[i] + Rational::from_integer(counter[i].clone()))
                / Rational::from_integer(divisors[i].clone());
        }
        let v = snf.v.apply(&w);
        out.insert(reducer.canonical(&v));
        // odometer over prod d_i
        let mut i = 0;
        loop {
            if i == r {
                return Ok(out.into_iter().collect());
            }
            counter[i] += 1;
            if counter[i] < divisors[i] {
                break;
            }
            counter[i] = BigInt::zero();
            i += 1;
        }
    }
}
