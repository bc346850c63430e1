//! Spectral-sum observables `Σ μᵢ Fᵢ` over a context basis, density
//! matrices, and the quantum predictions for multiplicative and additive
//! context functionals.
//!
//! Predictions are computed twice: from exact operator algebra (matrix
//! products, determinants, traces) and from eigenvalue arithmetic. The two
//! routes are cross-checked and any disagreement is an error.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::hypergraph::{Context, ContextHypergraph, HypergraphError};
use crate::linalg::{context_product, inner_product, LinalgError, Matrix, Projector, Vector};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuantumError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error("basis has {basis} vectors but {eigenvalues} eigenvalues were given")]
    LengthMismatch { basis: usize, eigenvalues: usize },
    #[error("context `{0}` is not a complete basis")]
    IncompleteContext(String),
    #[error("invalid scheme: {0}")]
    InvalidScheme(String),
    #[error("invalid density matrix: {0}")]
    InvalidDensity(&'static str),
    #[error("slot {slot} is out of range for dimension {dim}")]
    SlotOutOfRange { slot: usize, dim: usize },
    #[error("{product} is not a product of the scheme primes (residual {residual})")]
    NotAPrimeProduct { product: u64, residual: u64 },
    #[error("operator and eigenvalue routes disagree: {operator} vs {scalar}")]
    RouteMismatch { operator: Rational, scalar: Rational },
}

pub type Result<T> = std::result::Result<T, QuantumError>;

/// How eigenvalues are attached to the members of a context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EigenvalueScheme {
    /// `{−1, 1, …, 1}`: the Householder reflector of one member.
    Householder,
    /// `{1, 0, …, 0}`: the projector onto one member.
    Projector,
    /// Distinct primes, one per member.
    Primes(Vec<u64>),
    Custom(Vec<Rational>),
}

impl EigenvalueScheme {
    /// Eigenvalues for a `dim`-element context. The distinguished entry of
    /// the householder and projector schemes sits at `slot`.
    pub fn eigenvalues(&self, dim: usize, slot: usize) -> Result<Vec<Rational>> {
        let fixed = |list: Vec<Rational>| {
            if list.len() == dim {
                Ok(list)
            } else {
                Err(QuantumError::LengthMismatch { basis: dim, eigenvalues: list.len() })
            }
        };
        match self {
            EigenvalueScheme::Householder | EigenvalueScheme::Projector => {
                if slot >= dim {
                    return Err(QuantumError::SlotOutOfRange { slot, dim });
                }
                let (special, rest) = match self {
                    EigenvalueScheme::Householder => (-Rational::ONE, Rational::ONE),
                    _ => (Rational::ONE, Rational::ZERO),
                };
                Ok((0..dim).map(|i| if i == slot { special } else { rest }).collect())
            }
            EigenvalueScheme::Primes(p) => fixed(p.iter().map(|&x| Rational::from_integer(x as i128)).collect()),
            EigenvalueScheme::Custom(list) => fixed(list.clone()),
        }
    }

    /// `∏ μᵢ` for a `dim`-element context (slot-independent).
    pub fn product(&self, dim: usize) -> Result<Rational> {
        Ok(self.eigenvalues(dim, 0)?.into_iter().product())
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl FromStr for EigenvalueScheme {
    type Err = QuantumError;

    /// `householder`, `projector`, `primes:2,3,5,7` or `custom:-1,-1,1,1`.
    fn from_str(s: &str) -> Result<Self> {
        let invalid = |why: &str| QuantumError::InvalidScheme(format!("`{s}`: {why}"));
        match s.split_once(':') {
            None if s == "householder" => Ok(EigenvalueScheme::Householder),
            None if s == "projector" => Ok(EigenvalueScheme::Projector),
            Some(("primes", list)) => {
                let primes = list
                    .split(',')
                    .map(|x| x.trim().parse::<u64>().map_err(|_| invalid("expected positive integers")))
                    .collect::<Result<Vec<_>>>()?;
                if let Some(p) = primes.iter().find(|&&p| !is_prime(p)) {
                    return Err(invalid(&format!("{p} is not prime")));
                }
                let mut sorted = primes.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != primes.len() {
                    return Err(invalid("primes must be distinct"));
                }
                Ok(EigenvalueScheme::Primes(primes))
            }
            Some(("custom", list)) => list
                .split(',')
                .map(|x| x.trim().parse::<Rational>().map_err(|e| invalid(&e.to_string())))
                .collect::<Result<Vec<_>>>()
                .map(EigenvalueScheme::Custom),
            _ => Err(invalid("unknown scheme")),
        }
    }
}

impl fmt::Display for EigenvalueScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |items: Vec<String>| items.join(",");
        match self {
            EigenvalueScheme::Householder => write!(f, "householder"),
            EigenvalueScheme::Projector => write!(f, "projector"),
            EigenvalueScheme::Primes(p) => write!(f, "primes:{}", join(p.iter().map(u64::to_string).collect())),
            EigenvalueScheme::Custom(c) => write!(f, "custom:{}", join(c.iter().map(Rational::to_string).collect())),
        }
    }
}

/// An orthogonal basis with one eigenvalue per basis vector.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralObservable {
    basis: Vec<Vector<Rational>>,
    eigenvalues: Vec<Rational>,
}

impl SpectralObservable {
    pub fn new(basis: Vec<Vector<Rational>>, eigenvalues: Vec<Rational>) -> Result<Self> {
        if basis.len() != eigenvalues.len() {
            return Err(QuantumError::LengthMismatch { basis: basis.len(), eigenvalues: eigenvalues.len() });
        }
        let dim = basis.first().ok_or(LinalgError::Empty)?.dim();
        for (i, v) in basis.iter().enumerate() {
            if v.dim() != dim {
                return Err(LinalgError::DimensionMismatch { left: dim, right: v.dim() }.into());
            }
            if v.is_zero() {
                return Err(LinalgError::ZeroVector.into());
            }
            for (j, w) in basis.iter().enumerate().take(i) {
                if !inner_product(w, v)?.is_zero() {
                    return Err(LinalgError::NonOrthogonal(j, i).into());
                }
            }
        }
        Ok(SpectralObservable { basis, eigenvalues })
    }

    pub fn from_scheme(basis: Vec<Vector<Rational>>, scheme: &EigenvalueScheme, slot: usize) -> Result<Self> {
        let eigenvalues = scheme.eigenvalues(basis.len(), slot)?;
        Self::new(basis, eigenvalues)
    }

    pub fn basis(&self) -> &[Vector<Rational>] {
        &self.basis
    }

    pub fn eigenvalues(&self) -> &[Rational] {
        &self.eigenvalues
    }

    pub fn dim(&self) -> usize {
        self.basis[0].dim()
    }

    pub fn is_complete(&self) -> bool {
        self.basis.len() == self.dim()
    }
}

/// `Σᵢ μᵢ Fᵢ`.
pub fn spectral_operator(s: &SpectralObservable) -> Matrix<Rational> {
    let mut m = Matrix::zeros(s.dim());
    for (v, &mu) in s.basis.iter().zip(&s.eigenvalues) {
        let f = Projector::from_vector(v).expect("basis vectors are nonzero");
        m = m.checked_add(&f.matrix().scale(mu)).expect("basis vectors share the dimension");
    }
    m
}

/// Symmetric, unit-trace, positive semidefinite exact matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: Matrix<Rational>,
}

impl DensityMatrix {
    /// Checks positivity through all principal minors, so keep `n` small.
    pub fn new(matrix: Matrix<Rational>) -> Result<Self> {
        if !matrix.is_symmetric() {
            return Err(QuantumError::InvalidDensity("not symmetric"));
        }
        if matrix.trace() != Rational::ONE {
            return Err(QuantumError::InvalidDensity("trace is not 1"));
        }
        let n = matrix.dim();
        assert!(n <= 16, "principal-minor positivity check is exponential in the dimension");
        for subset in 1u32..(1 << n) {
            let idx: Vec<usize> = (0..n).filter(|i| subset >> i & 1 == 1).collect();
            let rows = idx.iter().map(|&i| idx.iter().map(|&j| matrix[(i, j)]).collect()).collect();
            let minor = Matrix::from_rows(rows).expect("square selection").determinant();
            if minor < Rational::ZERO {
                return Err(QuantumError::InvalidDensity("not positive semidefinite"));
            }
        }
        Ok(DensityMatrix { matrix })
    }

    /// `𝟙ₙ / n`.
    pub fn maximally_mixed(n: usize) -> Self {
        DensityMatrix { matrix: Matrix::identity(n).scale(Rational::new(1, n as i128)) }
    }

    pub fn matrix(&self) -> &Matrix<Rational> {
        &self.matrix
    }
}

/// `Tr(Aρ)`.
pub fn expectation(a: &Matrix<Rational>, rho: &DensityMatrix) -> Result<Rational> {
    Ok(a.checked_mul(&rho.matrix)?.trace())
}

fn complete_context_vectors(h: &ContextHypergraph, context: &Context) -> Result<Vec<Vector<Rational>>> {
    let vectors = h.context_vectors(context)?;
    let dim = h.dim();
    let rows = Matrix::from_row_vectors(&vectors)?;
    if vectors.len() != dim || rows.determinant().is_zero() {
        return Err(QuantumError::IncompleteContext(context.name.clone()));
    }
    Ok(vectors)
}

/// Product of the Householder reflectors of a context's members; `−𝟙` for a
/// complete orthogonal context.
pub fn context_product_operator(h: &ContextHypergraph, context: &Context) -> Result<Matrix<Rational>> {
    let vectors = complete_context_vectors(h, context)?;
    let product = context_product(&vectors)?;
    if !product.complete {
        return Err(QuantumError::IncompleteContext(context.name.clone()));
    }
    Ok(product.matrix)
}

/// Spectral observable of a context under a scheme.
pub fn context_observable(
    h: &ContextHypergraph,
    context: &Context,
    scheme: &EigenvalueScheme,
    slot: usize,
) -> Result<SpectralObservable> {
    SpectralObservable::from_scheme(complete_context_vectors(h, context)?, scheme, slot)
}

/// `(#contexts) · ∏ μᵢ`, cross-checked per context against the determinant
/// of the assembled spectral operator and, for the householder scheme,
/// against the reflector product being `−𝟙`.
pub fn quantum_product_prediction(h: &ContextHypergraph, scheme: &EigenvalueScheme) -> Result<Rational> {
    let scalar = scheme.product(h.dim())?;
    let mut total = Rational::ZERO;
    for context in h.contexts() {
        let operator = spectral_operator(&context_observable(h, context, scheme, 0)?);
        let det = operator.determinant();
        if det != scalar {
            return Err(QuantumError::RouteMismatch { operator: det, scalar });
        }
        if *scheme == EigenvalueScheme::Householder {
            let minus_one = Matrix::identity(h.dim()).scale(-Rational::ONE);
            if context_product_operator(h, context)? != minus_one {
                return Err(QuantumError::RouteMismatch { operator: det, scalar: -Rational::ONE });
            }
        }
        total += det;
    }
    Ok(total)
}

/// `S_C = −F_slot + Σ_{i≠slot} Fᵢ`.
pub fn context_sum_operator(h: &ContextHypergraph, context: &Context, minus_slot: usize) -> Result<Matrix<Rational>> {
    Ok(spectral_operator(&context_observable(h, context, &EigenvalueScheme::Householder, minus_slot)?))
}

/// `Σ_j ⟨S_{C_j}⟩` under the maximally mixed state, cross-checked against the
/// mean of each context's eigenvalues.
pub fn additive_prediction(h: &ContextHypergraph, minus_slot: usize) -> Result<Rational> {
    let dim = h.dim();
    let rho = DensityMatrix::maximally_mixed(dim);
    let eigen = EigenvalueScheme::Householder.eigenvalues(dim, minus_slot)?;
    let mean = eigen.iter().copied().sum::<Rational>() / Rational::from_integer(dim as i128);
    let mut total = Rational::ZERO;
    for context in h.contexts() {
        let value = expectation(&context_sum_operator(h, context, minus_slot)?, &rho)?;
        if value != mean {
            return Err(QuantumError::RouteMismatch { operator: value, scalar: mean });
        }
        total += value;
    }
    Ok(total)
}

/// Recovers the multiset of scheme primes whose product is `product`.
pub fn prime_product_decompose(product: u64, primes: &[u64]) -> Result<Vec<u64>> {
    let mut residual = product;
    let mut factors = Vec::new();
    if product == 0 {
        return Err(QuantumError::NotAPrimeProduct { product, residual });
    }
    for &p in primes {
        if !is_prime(p) {
            return Err(QuantumError::InvalidScheme(format!("{p} is not prime")));
        }
        while residual.is_multiple_of(p) {
            residual /= p;
            factors.push(p);
        }
    }
    if residual != 1 {
        return Err(QuantumError::NotAPrimeProduct { product, residual });
    }
    factors.sort_unstable();
    Ok(factors)
}
