use contextlab_core::quantum::{expectation, spectral_operator};
use contextlab_core::{
    DensityMatrix, EigenvalueScheme, HouseholderReflector, Matrix, Rational, SpectralObservable, Vector,
};
use proptest::prelude::*;

// exact Gram–Schmidt without normalization; None if the input is dependent
fn orthogonal_basis(raw: &[Vec<i64>]) -> Option<Vec<Vector<Rational>>> {
    let mut out: Vec<Vector<Rational>> = Vec::new();
    for r in raw {
        let mut v = Vector::from_ints(r);
        for b in &out {
            v = v.checked_sub(&b.scale(b.dot(&v).unwrap() / b.norm_sqr())).unwrap();
        }
        if v.is_zero() {
            return None;
        }
        out.push(v);
    }
    Some(out)
}

fn basis_strategy() -> impl Strategy<Value = Vec<Vector<Rational>>> {
    (2usize..=5)
        .prop_flat_map(|n| proptest::collection::vec(proptest::collection::vec(-4i64..=4, n), n))
        .prop_filter_map("dependent rows", |raw| orthogonal_basis(&raw))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn householder_scheme_is_one_minus_two_f(basis in basis_strategy()) {
        let n = basis.len();
        let s = SpectralObservable::from_scheme(basis.clone(), &EigenvalueScheme::Householder, 0).unwrap();
        let u = HouseholderReflector::from_vector(&basis[0]).unwrap();
        prop_assert_eq!(spectral_operator(&s), u.matrix().clone());
        prop_assert_eq!(spectral_operator(&s).determinant(), -Rational::ONE);
        prop_assert_eq!(expectation(u.matrix(), &DensityMatrix::maximally_mixed(n)).unwrap(),
            Rational::new(n as i128 - 2, n as i128));
    }

    #[test]
    fn determinant_is_eigenvalue_product(basis in basis_strategy(), mus in proptest::collection::vec((-5i128..=5, 1i128..=3), 5)) {
        let n = basis.len();
        let eigen: Vec<Rational> = mus[..n].iter().map(|&(a, b)| Rational::new(a, b)).collect();
        let s = SpectralObservable::new(basis, eigen.clone()).unwrap();
        let m = spectral_operator(&s);
        prop_assert!(m.is_symmetric());
        prop_assert_eq!(m.determinant(), eigen.iter().copied().product::<Rational>());
        let mean = eigen.iter().copied().sum::<Rational>() / Rational::from(n as i64);
        prop_assert_eq!(expectation(&m, &DensityMatrix::maximally_mixed(n)).unwrap(), mean);
        prop_assert_eq!(m.trace(), eigen.iter().copied().sum::<Rational>());
    }

    #[test]
    fn context_sum_trace_is_slot_invariant(basis in basis_strategy(), slot in 0usize..5) {
        let n = basis.len();
        let slot = slot % n;
        let s = SpectralObservable::from_scheme(basis, &EigenvalueScheme::Householder, slot).unwrap();
        prop_assert_eq!(spectral_operator(&s).trace(), Rational::from(n as i64 - 2));
    }
}

#[test]
fn identity_expectation_is_one() {
    let rho = DensityMatrix::maximally_mixed(3);
    assert_eq!(expectation(&Matrix::identity(3), &rho).unwrap(), Rational::ONE);
}
