use dcsim_core::qcore::{
    apply, born_distribution, tensor_product, Basis, Complex64, ComplexMatrix, DensityMatrix,
    Factor, ProbabilityMap, QuantumState, Sampler, SparseMatrix,
};
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(1000)
}

fn complex() -> impl Strategy<Value = Complex64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| Complex64::new(re, im))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec(complex(), rows * cols)
        .prop_map(move |data| ComplexMatrix::new(rows, cols, data).unwrap())
}

fn dims() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1usize..=3, 1..=3)
}

fn basis_for(dims: &[usize]) -> Basis {
    Basis::new(
        dims.iter()
            .enumerate()
            .map(|(i, &d)| Factor::indexed(format!("f{i}"), &format!("{i}_"), d))
            .collect(),
    )
}

fn state_on(dims: Vec<usize>) -> impl Strategy<Value = QuantumState> {
    let basis = basis_for(&dims);
    prop::collection::vec(complex(), basis.dim())
        .prop_filter("non-zero", |v| {
            v.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-3
        })
        .prop_map(move |v| {
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let v = v.into_iter().map(|z| z / norm).collect();
            QuantumState::normalized(basis.clone(), v).unwrap()
        })
}

fn random_state() -> impl Strategy<Value = QuantumState> {
    dims().prop_flat_map(state_on)
}

fn rotation(theta: f64, phi: f64) -> ComplexMatrix {
    let (s, c) = theta.sin_cos();
    let e = Complex64::from_polar(1.0, phi);
    ComplexMatrix::new(
        2,
        2,
        vec![
            Complex64::new(c, 0.0),
            -e.conj() * s,
            e * s,
            Complex64::new(c, 0.0),
        ],
    )
    .unwrap()
}

/// A unitary on `2^k` dimensions built from random single-qubit rotations
/// and a controlled-phase.
fn unitary(k: u32) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((0.0f64..6.3, 0.0f64..6.3), k as usize * 2).prop_map(move |angles| {
        let dim = 1usize << k;
        let mut u = ComplexMatrix::identity(dim);
        for layer in angles.chunks(k as usize) {
            let mut op = ComplexMatrix::identity(1);
            for &(t, p) in layer {
                op = tensor_product(&op, &rotation(t, p)).unwrap();
            }
            u = op.matmul(&u).unwrap();
            let mut diag = vec![Complex64::new(1.0, 0.0); dim];
            diag[dim - 1] = Complex64::new(-1.0, 0.0);
            u = ComplexMatrix::diagonal(&diag).matmul(&u).unwrap();
        }
        u
    })
}

/// Partial trace by direct summation over multi-indices.
fn brute_partial_trace(rho: &DensityMatrix, k: usize) -> ComplexMatrix {
    let basis = rho.basis();
    let reduced = basis.without(k).unwrap();
    let dim = reduced.dim();
    let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
    for i in 0..basis.dim() {
        for j in 0..basis.dim() {
            let mut di = basis.digits(i);
            let mut dj = basis.digits(j);
            if di[k] != dj[k] {
                continue;
            }
            di.remove(k);
            dj.remove(k);
            let (r, c) = (reduced.flat_index(&di), reduced.flat_index(&dj));
            data[r * dim + c] += rho.get(i, j);
        }
    }
    ComplexMatrix::new(dim, dim, data).unwrap()
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn mixed_product_law(
        a in matrix(2, 3), b in matrix(2, 2), c in matrix(3, 2), d in matrix(2, 3)
    ) {
        let lhs = tensor_product(&a, &b).unwrap().matmul(&tensor_product(&c, &d).unwrap()).unwrap();
        let rhs = tensor_product(&a.matmul(&c).unwrap(), &b.matmul(&d).unwrap()).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-12);
    }

    #[test]
    fn tensor_adjoint_commutes(a in matrix(2, 3), b in matrix(3, 2)) {
        let lhs = tensor_product(&a, &b).unwrap().adjoint();
        let rhs = tensor_product(&a.adjoint(), &b.adjoint()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn sparse_kron_and_product_match_dense(a in matrix(3, 2), b in matrix(2, 3), c in matrix(6, 4)) {
        let (sa, sb, sc) = (SparseMatrix::from_dense(&a), SparseMatrix::from_dense(&b), SparseMatrix::from_dense(&c));
        let k = sa.kron(&sb).unwrap();
        prop_assert!(k.to_dense().max_abs_diff(&tensor_product(&a, &b).unwrap()).unwrap() < 1e-15);
        let p = k.matmul(&sc).unwrap().to_dense();
        let dense = tensor_product(&a, &b).unwrap().matmul(&c).unwrap();
        prop_assert!(p.max_abs_diff(&dense).unwrap() < 1e-12);
    }

    #[test]
    fn unitaries_preserve_norm(u in unitary(2), s in state_on(vec![2, 2])) {
        prop_assert!(u.is_unitary(1e-12).unwrap());
        let out = apply(&u, &s).unwrap();
        prop_assert!((out.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn born_probabilities_sum_to_one(s in random_state()) {
        let born = born_distribution(&s).unwrap();
        prop_assert!((born.distribution.total() - 1.0).abs() < 1e-12);
        prop_assert!(born.distribution.probs().iter().all(|&p| p >= 0.0));
        prop_assert_eq!(born.normalization, 1.0);
    }

    #[test]
    fn conditional_states_record_their_weight(s in random_state(), w in 0.05f64..0.95) {
        let amps = s.amplitudes().iter().map(|z| z * w.sqrt()).collect();
        let cond = QuantumState::conditional(s.basis().clone(), amps).unwrap();
        let born = born_distribution(&cond).unwrap();
        prop_assert!((born.normalization - w).abs() < 1e-12);
        prop_assert!((born.distribution.total() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn partial_trace_matches_direct_summation(s in random_state(), pick in 0usize..3) {
        let rho = DensityMatrix::from_pure(&s);
        let k = pick % s.basis().factors().len();
        let fast = rho.partial_trace(k).unwrap();
        let slow = brute_partial_trace(&rho, k);
        prop_assert!(fast.matrix().max_abs_diff(&slow).unwrap() < 1e-13);
    }

    #[test]
    fn reduced_states_are_density_matrices(s in random_state(), pick in 0usize..3) {
        let rho = DensityMatrix::from_pure(&s);
        let k = pick % s.basis().factors().len();
        let red = rho.partial_trace(k).unwrap();
        prop_assert!(red.check_invariants(1.0).is_ok());
        prop_assert!(DensityMatrix::new(red.basis().clone(), red.matrix().clone()).is_ok());
    }

    #[test]
    fn tracing_every_factor_leaves_the_trace(s in random_state()) {
        let mut rho = DensityMatrix::from_pure(&s);
        let total = rho.trace();
        while !rho.basis().factors().is_empty() {
            rho = rho.partial_trace(rho.basis().factors().len() - 1).unwrap();
        }
        prop_assert_eq!(rho.matrix().rows(), 1);
        prop_assert!((rho.trace() - total).abs() < 1e-12);
    }

    #[test]
    fn partial_trace_order_does_not_matter(s in state_on(vec![2, 3, 2])) {
        let rho = DensityMatrix::from_pure(&s);
        let a = rho.partial_trace(0).unwrap().partial_trace(1).unwrap();
        let b = rho.partial_trace(2).unwrap().partial_trace(0).unwrap();
        prop_assert!(a.matrix().max_abs_diff(b.matrix()).unwrap() < 1e-13);
    }

    #[test]
    fn sampler_returns_supported_labels(
        weights in prop::collection::vec(0.0f64..1.0, 1..12),
        seed in any::<u64>(),
        run in any::<u64>(),
    ) {
        let total: f64 = weights.iter().sum();
        prop_assume!(total > 1e-6);
        let probs: Vec<f64> = weights.iter().map(|w| w / total).collect();
        let labels: Vec<usize> = (0..probs.len()).collect();
        let dist = ProbabilityMap::new(labels, probs.clone()).unwrap();
        let idx = Sampler::new(&dist).unwrap().sample(seed, run);
        prop_assert!(probs[idx] > 0.0);
    }
}
