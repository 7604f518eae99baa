//! Exact arithmetic in `Q(i)` and small matrices over it.

use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::exactlat::{rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Gaussian {
    pub re: Rational,
    pub im: Rational,
}

impl Gaussian {
    pub fn new(re: Rational, im: Rational) -> Self {
        Gaussian { re, im }
    }

    pub fn int(a: i64) -> Self {
        Gaussian::new(rat(a), rat(0))
    }

    pub fn i() -> Self {
        Gaussian::new(rat(0), rat(1))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Gaussian::new(self.re.clone(), -self.im.clone())
    }

    pub fn inv(&self) -> Option<Self> {
        let n = &self.re * &self.re + &self.im * &self.im;
        if n.is_zero() {
            return None;
        }
        Some(Gaussian::new(&self.re / &n, -(&self.im / &n)))
    }

    /// `exp(2 pi i t)` for `t` with denominator dividing 4.
    pub fn root_of_unity(t: &Rational) -> Option<Self> {
        let four = t * rat(4);
        if !four.is_integer() {
            return None;
        }
        let k: BigInt = four.to_integer().mod_floor(&BigInt::from(4));
        Some(match k.to_u8().unwrap_or(0) {
            0 => Gaussian::int(1),
            1 => Gaussian::i(),
            2 => Gaussian::int(-1),
            _ => -Gaussian::i(),
        })
    }
}

impl Add for &Gaussian {
    type Output = Gaussian;
    fn add(self, o: &Gaussian) -> Gaussian {
        Gaussian::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &Gaussian {
    type Output = Gaussian;
    fn sub(self, o: &Gaussian) -> Gaussian {
        Gaussian::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul for &Gaussian {
    type Output = Gaussian;
    fn mul(self, o: &Gaussian) -> Gaussian {
        Gaussian::new(&self.re * &o.re - &self.im * &o.im, &self.re * &o.im + &self.im * &o.re)
    }
}

impl Neg for Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        Gaussian::new(-self.re, -self.im)
    }
}

/// Square matrix over `Q(i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Gaussian>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix { n, data: alloc::vec![Gaussian::default(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n);
        for k in 0..n {
            m.set(k, k, Gaussian::int(1));
        }
        m
    }

    pub fn from_int(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let mut m = CMatrix::zeros(n);
        for (r, row) in rows.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                m.set(r, c, Gaussian::int(x));
            }
        }
        m
    }

    pub fn diagonal(d: Vec<Gaussian>) -> Self {
        let mut m = CMatrix::zeros(d.len());
        for (k, x) in d.into_iter().enumerate() {
            m.set(k, k, x);
        }
        m
    }

    /// The matrix unit `E_{rc}`.
    pub fn unit(n: usize, r: usize, c: usize) -> Self {
        let mut m = CMatrix::zeros(n);
        m.set(r, c, Gaussian::int(1));
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &Gaussian {
        &self.data[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Gaussian) {
        self.data[r * self.n + c] = x;
    }

    pub fn mul(&self, o: &CMatrix) -> CMatrix {
        let mut m = CMatrix::zeros(self.n);
        for r in 0..self.n {
            for c in 0..self.n {
                let mut s = Gaussian::default();
                for k in 0..self.n {
                    s = &s + &(self.get(r, k) * o.get(k, c));
                }
                m.set(r, c, s);
            }
        }
        m
    }

    pub fn add(&self, o: &CMatrix) -> CMatrix {
        CMatrix { n: self.n, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &CMatrix) -> CMatrix {
        CMatrix { n: self.n, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, k: &Gaussian) -> CMatrix {
        CMatrix { n: self.n, data: self.data.iter().map(|a| a * k).collect() }
    }

    pub fn transpose(&self) -> CMatrix {
        let mut m = CMatrix::zeros(self.n);
        for r in 0..self.n {
            for c in 0..self.n {
                m.set(c, r, self.get(r, c).clone());
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Gaussian::is_zero)
    }

    pub fn bracket(&self, o: &CMatrix) -> CMatrix {
        self.mul(o).sub(&o.mul(self))
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Option<CMatrix> {
        let n = self.n;
        let mut a = self.clone();
        let mut b = CMatrix::identity(n);
        for col in 0..n {
            let p = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            for k in 0..n {
                a.data.swap(col * n + k, p * n + k);
                b.data.swap(col * n + k, p * n + k);
            }
            let inv = a.get(col, col).inv()?;
            for k in 0..n {
                let x = a.get(col, k) * &inv;
                a.set(col, k, x);
                let y = b.get(col, k) * &inv;
                b.set(col, k, y);
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                for k in 0..n {
                    let x = a.get(r, k) - &(&f * a.get(col, k));
                    a.set(r, k, x);
                    let y = b.get(r, k) - &(&f * b.get(col, k));
                    b.set(r, k, y);
                }
            }
        }
        Some(b)
    }

    pub fn determinant(&self) -> Gaussian {
        let n = self.n;
        let mut a = self.clone();
        let mut det = Gaussian::int(1);
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
                return Gaussian::default();
            };
            if p != col {
                for k in 0..n {
                    a.data.swap(col * n + k, p * n + k);
                }
                det = -det;
            }
            det = &det * a.get(col, col);
            let inv = a.get(col, col).inv().expect("nonzero pivot");
            for r in col + 1..n {
                let f = a.get(r, col) * &inv;
                for k in col..n {
                    let x = a.get(r, k) - &(&f * a.get(col, k));
                    a.set(r, k, x);
                }
            }
        }
        det
    }
}

/// Rank of a list of matrices viewed as vectors over `Q(i)`.
pub fn span_rank(vs: &[CMatrix]) -> usize {
    let mut rows: Vec<Vec<Gaussian>> = vs.iter().map(|m| m.data.clone()).collect();
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].inv().expect("nonzero pivot");
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = &rows[r][col] * &inv;
                for k in col..width {
                    let x = &rows[r][k] - &(&f * &rows[rank][k]);
                    rows[r][k] = x;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlat::frac;

    #[test]
    fn field_ops() {
        let i = Gaussian::i();
        assert_eq!(&i * &i, Gaussian::int(-1));
        let z = Gaussian::new(frac(3, 2), frac(-1, 3));
        assert_eq!(&z * &z.inv().unwrap(), Gaussian::int(1));
        assert_eq!(Gaussian::root_of_unity(&frac(3, 4)), Some(-Gaussian::i()));
        assert_eq!(Gaussian::root_of_unity(&frac(1, 3)), None);
    }

    #[test]
    fn matrix_inverse_and_det() {
        let m = CMatrix::from_int(&[alloc::vec![2, 1], alloc::vec![5, 3]]).add(&CMatrix::identity(2).scale(&Gaussian::i()));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), CMatrix::identity(2));
        let d = m.determinant();
        assert_eq!(d, &(&Gaussian::new(rat(2), rat(1)) * &Gaussian::new(rat(3), rat(1))) - &Gaussian::int(5));
    }
}
