//! Dense exact matrices, fraction-free elimination and incremental spans.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Field;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { F::one() } else { F::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> F) -> Self {
        let data = (0..rows * cols).map(|i| f(i / cols, i % cols)).collect();
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Square matrix from a row-major vector of length n².
    pub fn from_flat(n: usize, data: Vec<F>) -> Self {
        assert_eq!(data.len(), n * n, "flat data length");
        Matrix { rows: n, cols: n, data }
    }

    /// The elementary matrix with a single 1 at `(r, c)`.
    pub fn unit(n: usize, r: usize, c: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(r, c)] = F::one();
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

    pub fn as_flat(&self) -> &[F] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn scale(&self, k: &F) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.times(k)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix shapes");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.plus(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix shapes");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.minus(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix shapes");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        out.data[r * other.cols + c].add_product(a, b);
                    }
                }
            }
        }
        out
    }

    /// `[self, other] = self·other − other·self`
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |acc, i| acc.plus(&self[(i, i)]))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (0..r).all(|c| self[(r, c)] == self[(c, r)]))
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (0..=r).all(|c| self[(r, c)] == self[(c, r)].negate()))
    }

    /// Rank by fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        bareiss(self.clone()).0
    }

    pub fn determinant(&self) -> F {
        assert!(self.is_square(), "determinant of a non-square matrix");
        if self.rows == 0 {
            return F::one();
        }
        let (rank, det) = bareiss(self.clone());
        if rank < self.rows {
            F::zero()
        } else {
            det
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = Self::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self[(r, c)].clone()
            } else if c - n == r {
                F::one()
            } else {
                F::zero()
            }
        });
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return Err(Error::Degenerate("matrix is singular".into()));
        }
        Ok(Self::from_fn(n, n, |r, c| aug[(r, c + n)].clone()))
    }

    /// Reduce to reduced row echelon form; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = self[(row, col)].inverse().expect("nonzero pivot");
            for c in col..self.cols {
                self.data[row * self.cols + c] = self[(row, c)].times(&inv);
            }
            for r in 0..self.rows {
                if r == row || self[(r, col)].is_zero() {
                    continue;
                }
                let factor = self[(r, col)].clone();
                for c in col..self.cols {
                    let v = self[(row, c)].clone();
                    if !v.is_zero() {
                        self.data[r * self.cols + c].sub_product(&factor, &v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Basis of `{x : self · x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = m[(r, f)].negate();
                }
                v
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_symmetric(&mut self, a: usize, b: usize) {
        self.swap_rows(a, b);
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }
}

/// Fraction-free elimination. Returns the rank and, for full-rank square
/// input, the determinant.
fn bareiss<F: Field>(mut m: Matrix<F>) -> (usize, F) {
    let mut prev = F::one();
    let mut sign_flip = false;
    let mut rank = 0;
    for col in 0..m.cols {
        if rank == m.rows {
            break;
        }
        let Some(p) = (rank..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
            continue;
        };
        if p != rank {
            m.swap_rows(p, rank);
            sign_flip = !sign_flip;
        }
        let pivot = m[(rank, col)].clone();
        let prev_inv = prev.inverse().expect("nonzero previous pivot");
        for r in rank + 1..m.rows {
            let lead = m[(r, col)].clone();
            for c in col + 1..m.cols {
                let mut v = m[(r, c)].times(&pivot);
                v.sub_product(&lead, &m[(rank, c)]);
                m.data[r * m.cols + c] = v.times(&prev_inv);
            }
            m.data[r * m.cols + col] = F::zero();
        }
        prev = pivot;
        rank += 1;
    }
    let det = if sign_flip { prev.negate() } else { prev };
    (rank, det)
}

/// Inertia `(positive, negative)` of a real symmetric form, by congruence
/// pivoting on an integral copy.
pub fn signature<F: Field>(form: &Matrix<F>) -> Result<(usize, usize)> {
    if !form.is_symmetric() {
        return Err(Error::InvalidArgument("signature of a non-symmetric form".into()));
    }
    if form.as_flat().iter().any(|x| x.real_sign().is_none()) {
        return Err(Error::InvalidArgument("signature of a non-real form".into()));
    }
    let mut m = form.clone();
    let n = m.rows;
    let (mut pos, mut neg) = (0, 0);
    for k in 0..n {
        if m[(k, k)].is_zero() {
            if let Some(d) = (k + 1..n).find(|&d| !m[(d, d)].is_zero()) {
                m.swap_symmetric(k, d);
            } else {
                let off = (k..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).find(|&(a, b)| !m[(a, b)].is_zero());
                let Some((a, b)) = off else {
                    return Err(Error::Degenerate("symmetric form is degenerate".into()));
                };
                m.swap_symmetric(k, a);
                // e_k → e_k + e_b makes the diagonal 2·m[k][b] ≠ 0.
                for c in 0..n {
                    let v = m[(b, c)].clone();
                    m.data[k * n + c].add_assign_ref(&v);
                }
                for r in 0..n {
                    let v = m[(r, b)].clone();
                    m.data[r * n + k].add_assign_ref(&v);
                }
            }
        }
        let p = m[(k, k)].clone();
        let Some(sign) = p.real_sign() else { unreachable!("real entries") };
        match sign {
            Ordering::Greater => pos += 1,
            Ordering::Less => neg += 1,
            Ordering::Equal => return Err(Error::Degenerate("symmetric form is degenerate".into())),
        }
        // Schur complement scaled by |p| keeps the inertia and the entries integral-sized.
        let scale = if sign == Ordering::Less { p.negate() } else { p.clone() };
        for r in k + 1..n {
            for c in k + 1..n {
                let mut v = m[(r, c)].times(&scale);
                let t = m[(r, k)].times(&m[(k, c)]);
                if sign == Ordering::Less {
                    v.add_assign_ref(&t);
                } else {
                    v = v.minus(&t);
                }
                m.data[r * n + c] = v;
            }
        }
        for r in k + 1..n {
            m.data[r * n + k] = F::zero();
            m.data[k * n + r] = F::zero();
        }
        normalize_block(&mut m, k + 1);
    }
    Ok((pos, neg))
}

fn normalize_block<F: Field>(m: &mut Matrix<F>, from: usize) {
    let n = m.rows;
    let entries: Vec<F> = (from..n).flat_map(|r| (from..n).map(move |c| (r, c))).map(|(r, c)| m[(r, c)].clone()).collect();
    let Some(g) = positive_primitive_factor(&entries) else { return };
    for r in from..n {
        for c in from..n {
            m.data[r * n + c] = m[(r, c)].times(&g);
        }
    }
}

/// A positive rational `g` such that `g·v` is integral and primitive.
fn positive_primitive_factor<F: Field>(v: &[F]) -> Option<F> {
    let lcm = v.iter().filter(|x| !x.is_zero()).fold(BigInt::one(), |acc, x| acc.lcm(&x.denom_lcm()));
    let content = v
        .iter()
        .filter(|x| !x.is_zero())
        .map(|x| x.mul_int(&lcm).int_content())
        .fold(BigInt::zero(), |acc, c| acc.gcd(&c));
    if content.is_zero() {
        return None;
    }
    Some(F::from_rational(num_rational::BigRational::new(lcm, content)))
}

fn make_primitive<F: Field>(v: &mut [F]) {
    let lcm = v.iter().filter(|x| !x.is_zero()).fold(BigInt::one(), |acc, x| acc.lcm(&x.denom_lcm()));
    if !lcm.is_one() {
        v.iter_mut().for_each(|x| *x = x.mul_int(&lcm));
    }
    let content = v.iter().filter(|x| !x.is_zero()).fold(BigInt::zero(), |acc, x| acc.gcd(&x.int_content()));
    if !content.is_zero() && !content.is_one() {
        v.iter_mut().for_each(|x| *x = x.div_int(&content));
    }
}

/// Incrementally built row space, kept as primitive integral rows with
/// distinct pivots.
#[derive(Clone, Debug)]
pub struct Span<F> {
    len: usize,
    rows: Vec<(usize, Vec<F>)>,
}

impl<F: Field> Span<F> {
    pub fn new(len: usize) -> Self {
        Span { len, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn vector_len(&self) -> usize {
        self.len
    }

    /// Residual of `v` after eliminating every stored pivot.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.len, "vector length");
        let mut v = v.to_vec();
        for (piv, row) in &self.rows {
            if v[*piv].is_zero() {
                continue;
            }
            let p = row[*piv].clone();
            let lead = v[*piv].clone();
            for (x, r) in v.iter_mut().zip(row) {
                let mut y = x.times(&p);
                if !r.is_zero() {
                    y.sub_product(&lead, r);
                }
                *x = y;
            }
            make_primitive(&mut v);
        }
        v
    }

    /// The stored echelon rows.
    pub fn vectors(&self) -> impl Iterator<Item = &[F]> + '_ {
        self.rows.iter().map(|(_, r)| r.as_slice())
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(F::is_zero)
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: &[F]) -> bool {
        let mut r = self.reduce(v);
        let Some(piv) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        make_primitive(&mut r);
        self.rows.push((piv, r));
        true
    }
}

impl<F: Field> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (r, c): (usize, usize)) -> &F {
        &self.data[r * self.cols + c]
    }
}

impl<F: Field> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
        &mut self.data[r * self.cols + c]
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<F: Field + serde::Serialize> serde::Serialize for Matrix<F> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<&[F]> = (0..self.rows).map(|r| self.row(r)).collect();
        rows.serialize(s)
    }
}

impl<'de, F: Field + serde::Deserialize<'de>> serde::Deserialize<'de> for Matrix<F> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<F>>::deserialize(d)?;
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(serde::de::Error::custom("ragged matrix rows"));
        }
        Ok(Matrix::from_rows(rows))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Gaussian, Rational};

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rational::from(x)).collect()).collect())
    }

    #[test]
    fn rank_and_determinant() {
        let m = q(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]);
        assert_eq!(m.rank(), 3);
        assert_eq!(m.determinant(), Rational::from(-3));
        let s = q(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(s.rank(), 2);
        assert_eq!(s.determinant(), Rational::from(0));
        assert_eq!(q(&[&[0, 1], &[1, 0]]).determinant(), Rational::from(-1));
        assert_eq!(q(&[&[0, 0, 1], &[0, 2, 0]]).rank(), 2);
    }

    #[test]
    fn inverse_round_trip() {
        let m = q(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(3));
        assert!(q(&[&[1, 2], &[2, 4]]).inverse().is_err());
    }

    #[test]
    fn nullspace_basis() {
        let m = q(&[&[1, 1, 0], &[0, 0, 1]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], vec![Rational::from(-1), Rational::from(1), Rational::from(0)]);
    }

    #[test]
    fn signatures() {
        assert_eq!(signature(&Matrix::<Rational>::identity(3)), Ok((3, 0)));
        assert_eq!(signature(&q(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, -1]])), Ok((2, 1)));
        assert_eq!(signature(&q(&[&[0, 1], &[1, 0]])), Ok((1, 1)));
        assert_eq!(signature(&q(&[&[0, 0, 1], &[0, 0, 0], &[1, 0, 0]])).is_err(), true);
        assert_eq!(signature(&q(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, -3]])), Ok((1, 2)));
        assert!(signature(&q(&[&[1, 1], &[1, 1]])).is_err());
    }

    #[test]
    fn span_membership() {
        let mut s = Span::new(3);
        let v = |a: i64, b: i64, c: i64| vec![Rational::from(a), Rational::from(b), Rational::from(c)];
        assert!(s.insert(&v(1, 2, 0)));
        assert!(s.insert(&v(0, 1, 1)));
        assert!(!s.insert(&v(2, 5, 1)));
        assert!(s.contains(&v(1, 3, 1)));
        assert!(!s.contains(&v(0, 0, 1)));
        assert_eq!(s.dim(), 2);
        let half = vec![Rational::new(1, 2), Rational::new(1, 3), Rational::from(0)];
        assert!(s.insert(&half));
        assert_eq!(s.dim(), 3);
    }

    #[test]
    fn gaussian_span() {
        let i = Gaussian::imaginary_unit().unwrap();
        let mut s = Span::new(2);
        assert!(s.insert(&[Gaussian::one(), i.clone()]));
        assert!(!s.insert(&[i.clone(), Gaussian::from_i64(-1)]));
        assert!(s.insert(&[Gaussian::one(), i.negate()]));
    }
}
