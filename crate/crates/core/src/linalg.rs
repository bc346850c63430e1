//! Dense vectors and square matrices over exact rationals or `f64`, rank-one
//! projectors and Householder reflectors.
//!
//! The scalar type fixes the "mode": `Vector<Rational>` is exact and every
//! check on it is an equality, `Vector<f64>` compares within
//! [`FLOAT_TOLERANCE`](crate::FLOAT_TOLERANCE).

use std::fmt;
use std::ops::{Add, Div, Index, IndexMut, Mul, Neg, Sub};

use thiserror::Error;

use crate::rational::Rational;
use crate::FLOAT_TOLERANCE;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("zero vector")]
    ZeroVector,
    #[error("vectors have different norms")]
    NormMismatch,
    #[error("vectors {0} and {1} are not orthogonal")]
    NonOrthogonal(usize, usize),
    #[error("vector {0} is linearly dependent on its predecessors")]
    LinearDependence(usize),
    #[error("more vectors ({count}) than dimensions ({dim})")]
    TooManyVectors { count: usize, dim: usize },
    #[error("empty input")]
    Empty,
}

pub type Result<T> = std::result::Result<T, LinalgError>;

/// Field operations shared by the exact and float modes.
pub trait Scalar:
    Copy
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    /// Exact zero for rationals, within tolerance for floats.
    fn is_zero(&self) -> bool;

    fn approx_eq(&self, other: &Self) -> bool {
        (*self - *other).is_zero()
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Rational::ZERO
    }
    fn one() -> Self {
        Rational::ONE
    }
    fn from_i64(n: i64) -> Self {
        Rational::from(n)
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn is_zero(&self) -> bool {
        self.abs() <= FLOAT_TOLERANCE
    }
}

#[derive(Clone, PartialEq)]
pub struct Vector<T> {
    components: Vec<T>,
}

impl<T: Scalar> Vector<T> {
    pub fn new(components: Vec<T>) -> Self {
        Vector { components }
    }

    pub fn from_ints(components: &[i64]) -> Self {
        Vector::new(components.iter().map(|&c| T::from_i64(c)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        Vector::new(vec![T::zero(); dim])
    }

    /// The `i`-th standard basis vector (0-based).
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.components[i] = T::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[T] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Scalar::is_zero)
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.components.iter().zip(&other.components).all(|(a, b)| a.approx_eq(b))
    }

    pub fn dot(&self, other: &Self) -> Result<T> {
        inner_product(self, other)
    }

    pub fn norm_sqr(&self) -> T {
        self.components.iter().fold(T::zero(), |acc, &c| acc + c * c)
    }

    pub fn scale(&self, factor: T) -> Self {
        Vector::new(self.components.iter().map(|&c| c * factor).collect())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        check_dims(self.dim(), other.dim())?;
        Ok(Vector::new(self.components.iter().zip(&other.components).map(|(&a, &b)| a + b).collect()))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        check_dims(self.dim(), other.dim())?;
        Ok(Vector::new(self.components.iter().zip(&other.components).map(|(&a, &b)| a - b).collect()))
    }

    /// The outer product `|self⟩⟨other|`.
    pub fn outer(&self, other: &Self) -> Matrix<T> {
        let n = self.dim();
        assert_eq!(n, other.dim(), "outer product of unequal dimensions");
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = self.components[i] * other.components[j];
            }
        }
        m
    }
}

impl Vector<f64> {
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }
}

impl<T> Index<usize> for Vector<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.components[i]
    }
}

impl<T: Scalar> fmt::Display for Vector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl<T: fmt::Debug> fmt::Debug for Vector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("").field(&self.components).finish()
    }
}

fn check_dims(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(LinalgError::DimensionMismatch { left, right })
    }
}

/// `⟨x|y⟩` over the reals.
pub fn inner_product<T: Scalar>(x: &Vector<T>, y: &Vector<T>) -> Result<T> {
    check_dims(x.dim(), y.dim())?;
    Ok(x.components.iter().zip(&y.components).fold(T::zero(), |acc, (&a, &b)| acc + a * b))
}

/// Dense `n × n` matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(n: usize) -> Self {
        Matrix { n, data: vec![T::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    /// Builds from rows; every row must have length equal to the row count.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            check_dims(row.len(), n)?;
            data.extend(row);
        }
        Ok(Matrix { n, data })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| T::from_i64(x)).collect()).collect())
    }

    /// Matrix whose `i`-th row is `vectors[i]`.
    pub fn from_row_vectors(vectors: &[Vector<T>]) -> Result<Self> {
        Self::from_rows(vectors.iter().map(|v| v.components().to_vec()).collect())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self[(i, j)].approx_eq(&self[(j, i)])))
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.n == other.n && self.data.iter().zip(&other.data).all(|(a, b)| a.approx_eq(b))
    }

    pub fn trace(&self) -> T {
        (0..self.n).fold(T::zero(), |acc, i| acc + self[(i, i)])
    }

    pub fn scale(&self, factor: T) -> Self {
        Matrix { n: self.n, data: self.data.iter().map(|&x| x * factor).collect() }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        check_dims(self.n, other.n)?;
        Ok(Matrix { n: self.n, data: self.data.iter().zip(&other.data).map(|(&a, &b)| a + b).collect() })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        check_dims(self.n, other.n)?;
        Ok(Matrix { n: self.n, data: self.data.iter().zip(&other.data).map(|(&a, &b)| a - b).collect() })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        check_dims(self.n, other.n)?;
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == T::zero() {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] = out[(i, j)] + a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &Vector<T>) -> Result<Vector<T>> {
        check_dims(self.n, v.dim())?;
        Ok(Vector::new(
            (0..self.n)
                .map(|i| self.row(i).iter().zip(v.components()).fold(T::zero(), |acc, (&a, &b)| acc + a * b))
                .collect(),
        ))
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.n + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.n + j]
    }
}

impl<T: Scalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(|x| x.to_string()).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.n {
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", cells[i * self.n + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.data.chunks(self.n.max(1))).finish()
    }
}

impl Matrix<Rational> {
    /// Exact determinant by Bareiss fraction-free elimination.
    ///
    /// The recurrence runs directly on reduced rationals, so every
    /// intermediate entry is a minor of the input and stays small.
    pub fn determinant(&self) -> Rational {
        let n = self.n;
        if n == 0 {
            return Rational::ONE;
        }
        let mut a: Vec<Vec<Rational>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut negate = false;
        let mut prev = Rational::ONE;
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        negate = !negate;
                    }
                    None => return Rational::ZERO,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    // exact by Sylvester's identity
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
                a[i][k] = Rational::ZERO;
            }
            prev = a[k][k];
        }
        if negate {
            -a[n - 1][n - 1]
        } else {
            a[n - 1][n - 1]
        }
    }
}

impl Matrix<f64> {
    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn determinant(&self) -> f64 {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = 1.0;
        for k in 0..n {
            let pivot = (k..n).max_by(|&x, &y| a[x * n + k].abs().total_cmp(&a[y * n + k].abs())).unwrap_or(k);
            if a[pivot * n + k] == 0.0 {
                return 0.0;
            }
            if pivot != k {
                for j in 0..n {
                    a.swap(k * n + j, pivot * n + j);
                }
                det = -det;
            }
            let p = a[k * n + k];
            det *= p;
            for i in k + 1..n {
                let factor = a[i * n + k] / p;
                for j in k..n {
                    a[i * n + j] -= factor * a[k * n + j];
                }
            }
        }
        det
    }
}

/// Rank-one orthogonal projector `F_x = |x⟩⟨x| / ⟨x|x⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct Projector<T> {
    generator: Vector<T>,
    matrix: Matrix<T>,
}

impl<T: Scalar> Projector<T> {
    pub fn from_vector(x: &Vector<T>) -> Result<Self> {
        if x.is_zero() {
            return Err(LinalgError::ZeroVector);
        }
        let norm_sqr = x.norm_sqr();
        let matrix = x.outer(x).scale(T::one() / norm_sqr);
        Ok(Projector { generator: x.clone(), matrix })
    }

    pub fn generator(&self) -> &Vector<T> {
        &self.generator
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix<T> {
        self.matrix
    }
}

/// The reflection `U_x = 𝟙 − 2F_x` through the hyperplane orthogonal to `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct HouseholderReflector<T> {
    generator: Vector<T>,
    matrix: Matrix<T>,
}

impl<T: Scalar> HouseholderReflector<T> {
    pub fn from_vector(x: &Vector<T>) -> Result<Self> {
        let projector = Projector::from_vector(x)?;
        let two = T::from_i64(2);
        let matrix = Matrix::identity(x.dim())
            .checked_sub(&projector.matrix.scale(two))
            .expect("projector has the generator's dimension");
        Ok(HouseholderReflector { generator: x.clone(), matrix })
    }

    pub fn generator(&self) -> &Vector<T> {
        &self.generator
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.generator.dim()
    }

    /// `v − 2 (⟨x|v⟩/⟨x|x⟩) x`: negates the component along the generator and
    /// keeps the orthogonal part.
    pub fn reflect(&self, v: &Vector<T>) -> Result<Vector<T>> {
        let coeff = inner_product(&self.generator, v)? / self.generator.norm_sqr();
        v.checked_sub(&self.generator.scale(T::from_i64(2) * coeff))
    }
}

/// A reflector exchanging two vectors of equal norm.
///
/// The generator is `x − y`. When `x = y` it is the first standard basis
/// vector, projected orthogonally to `x`, whose residual is nonzero; the
/// reflector then fixes `x`.
pub fn reflector_between<T: Scalar>(x: &Vector<T>, y: &Vector<T>) -> Result<HouseholderReflector<T>> {
    check_dims(x.dim(), y.dim())?;
    if x.is_zero() || y.is_zero() {
        return Err(LinalgError::ZeroVector);
    }
    let (nx, ny) = (x.norm_sqr(), y.norm_sqr());
    if !nx.approx_eq(&ny) {
        return Err(LinalgError::NormMismatch);
    }
    let z = x.checked_sub(y)?;
    if !z.is_zero() {
        return HouseholderReflector::from_vector(&z);
    }
    let n = x.dim();
    for k in 0..n {
        let e = Vector::unit(n, k);
        let along = x.scale(x[k] / nx);
        let residual = e.checked_sub(&along)?;
        if !residual.is_zero() {
            return HouseholderReflector::from_vector(&residual);
        }
    }
    // only reachable in dimension 1, where no orthogonal complement exists
    Err(LinalgError::ZeroVector)
}

/// Result of multiplying the reflectors of a set of orthogonal vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct ContextProduct<T> {
    pub matrix: Matrix<T>,
    /// True when the vectors form a complete basis of the space.
    pub complete: bool,
}

/// `∏ᵢ (𝟙 − 2Fᵢ)` over mutually orthogonal, not necessarily normalized,
/// vectors. For a complete basis the product is `−𝟙`.
pub fn context_product<T: Scalar>(basis: &[Vector<T>]) -> Result<ContextProduct<T>> {
    let first = basis.first().ok_or(LinalgError::Empty)?;
    let n = first.dim();
    for (i, v) in basis.iter().enumerate() {
        check_dims(n, v.dim())?;
        if v.is_zero() {
            return Err(LinalgError::ZeroVector);
        }
        for (j, w) in basis.iter().enumerate().take(i) {
            if !inner_product(w, v)?.is_zero() {
                return Err(LinalgError::NonOrthogonal(j, i));
            }
        }
    }
    let mut matrix = Matrix::identity(n);
    for v in basis {
        matrix = matrix.checked_mul(HouseholderReflector::from_vector(v)?.matrix())?;
    }
    Ok(ContextProduct { matrix, complete: basis.len() == n })
}

/// Output of [`orthonormalize`].
#[derive(Clone, Debug)]
pub struct Orthonormalization {
    /// Orthonormal vectors `q₀ … q_{k−1}` spanning the same nested subspaces
    /// as the input.
    pub vectors: Vec<Vector<f64>>,
    /// `(step, reflector)` pairs. A step whose partially transformed vector
    /// already points along `+eᵢ` needs no reflector and is absent.
    pub reflectors: Vec<(usize, HouseholderReflector<f64>)>,
}

/// Householder orthonormalization of linearly independent float vectors.
///
/// Step `i` takes the current `sᵢ` restricted to coordinates `i..n` and
/// reflects it onto `‖sᵢ‖eᵢ` with generator `zᵢ = sᵢ − ‖sᵢ‖eᵢ`. The
/// orthonormal vectors are the reflector products applied to `eᵢ`.
pub fn orthonormalize(vectors: &[Vector<f64>]) -> Result<Orthonormalization> {
    let first = vectors.first().ok_or(LinalgError::Empty)?;
    let n = first.dim();
    for v in vectors {
        check_dims(n, v.dim())?;
    }
    if vectors.len() > n {
        return Err(LinalgError::TooManyVectors { count: vectors.len(), dim: n });
    }
    let mut work: Vec<Vector<f64>> = vectors.to_vec();
    let mut reflectors = Vec::new();
    for i in 0..vectors.len() {
        let mut s = work[i].components().to_vec();
        s[..i].iter_mut().for_each(|c| *c = 0.0);
        let s = Vector::new(s);
        let norm = s.norm();
        if norm < FLOAT_TOLERANCE {
            return Err(LinalgError::LinearDependence(i));
        }
        let z = s.checked_sub(&Vector::unit(n, i).scale(norm))?;
        if z.norm() < FLOAT_TOLERANCE {
            continue;
        }
        let u = HouseholderReflector::from_vector(&z)?;
        for w in work.iter_mut().skip(i) {
            *w = u.reflect(w)?;
        }
        reflectors.push((i, u));
    }
    let q = (0..vectors.len())
        .map(|i| reflectors.iter().rev().try_fold(Vector::unit(n, i), |acc, (_, u)| u.reflect(&acc)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Orthonormalization { vectors: q, reflectors })
}
