use num_complex::Complex64;
use proptest::prelude::*;
use sigdisc::discrepancy::{disc_exact, disc_expression, disc_heuristic, DiscResult};
use sigdisc::formats::{parse_matrix, write_matrix};
use sigdisc::linalg::{eig_symmetric, spectrum};
use sigdisc::quantization::{
    certify_sigma2, complex_value_ceiling, nonneg_value_ceiling, quantize, quotient_compress, p_norm, Partition,
    ABSOLUTE_CONSTANT,
};
use sigdisc::SymmetricMatrix;

fn matrix(max_n: usize) -> impl Strategy<Value = SymmetricMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(-3.0f64..3.0, n * n).prop_map(move |v| SymmetricMatrix::from_fn(n, |i, j| v[i * n + j]))
    })
}

fn binary_matrix(max_n: usize) -> impl Strategy<Value = SymmetricMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * n)
            .prop_map(move |v| SymmetricMatrix::from_fn(n, |i, j| if v[i * n + j] { 1.0 } else { 0.0 }))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scaling(a in matrix(8), c in -4.0f64..4.0) {
        let d = disc_exact(&a).unwrap().value;
        let scaled = disc_exact(&a.scaled(c)).unwrap().value;
        prop_assert!((scaled - c.abs() * d).abs() <= 1e-10 * (1.0 + d));
    }

    #[test]
    fn complement_invariance(a in binary_matrix(10)) {
        let d = disc_exact(&a).unwrap().value;
        let dc = disc_exact(&a.complement().unwrap()).unwrap().value;
        prop_assert!((d - dc).abs() <= 1e-10);
    }

    #[test]
    fn witnesses_reproduce(a in matrix(10)) {
        let d = disc_exact(&a).unwrap();
        let again = disc_expression(&a, a.rho_prime(), &d.witness_x, &d.witness_y);
        prop_assert!((again - d.value).abs() <= 1e-10);
        let json = serde_json::to_string(&d).unwrap();
        let back: DiscResult = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, d);
    }

    #[test]
    fn heuristic_is_a_lower_bound(a in matrix(14), seed in any::<u64>()) {
        let exact = disc_exact(&a).unwrap().value;
        let h = disc_heuristic(&a, 4, seed).unwrap();
        prop_assert!(h.value <= exact + 1e-10);
        let again = disc_expression(&a, a.rho_prime(), &h.witness_x, &h.witness_y);
        prop_assert!((again - h.value).abs() <= 1e-10);
    }

    #[test]
    fn weyl_step(a in matrix(12)) {
        let s2 = spectrum(&a).unwrap().sigma2();
        let b = a.shifted_by_ones(a.rho_prime());
        let s1b = spectrum(&b).unwrap().sigma(1);
        prop_assert!(s2 <= s1b + 1e-8);
    }

    #[test]
    fn eigen_residual_trace_and_rayleigh(a in matrix(16), x in prop::collection::vec(-1.0f64..1.0, 16)) {
        let e = eig_symmetric(&a).unwrap();
        let s = &e.spectrum;
        let n = a.n();
        prop_assert!(s.max_residual <= 1e-9 * s.sigma(1).max(1e-300) || s.sigma(1) == 0.0);
        let sum: f64 = s.eigenvalues.iter().sum();
        prop_assert!((sum - a.trace()).abs() <= 1e-9 * n as f64 * s.sigma(1).max(1.0));
        let x = &x[..n];
        if x.iter().any(|&v| v != 0.0) {
            let r = a.rayleigh_quotient(x).unwrap();
            let tol = 1e-9 * s.sigma(1).max(1.0);
            prop_assert!(r <= s.mu(1) + tol && r >= s.mu(n) - tol);
        }
    }

    #[test]
    fn matrix_file_round_trip(a in matrix(9)) {
        prop_assert_eq!(parse_matrix(&write_matrix(&a)).unwrap(), a);
    }

    #[test]
    fn quantization_bounds(
        raw in prop::collection::vec((0.0f64..1.0, 0.0f64..std::f64::consts::TAU), 1..80),
        complex in any::<bool>(),
        p in prop::sample::select(vec![1.0, 1.5, 2.0, 3.0]),
        eps in prop::sample::select(vec![0.05, 0.2, 1.0 / 3.0, 0.6, 0.9]),
    ) {
        let z: Vec<Complex64> = raw
            .iter()
            .map(|&(r, t)| if complex { Complex64::from_polar(r, t) } else { Complex64::new(r, 0.0) })
            .collect();
        let norm = p_norm(z.iter().map(|v| v.norm()), p);
        prop_assume!(norm > 1e-6);
        let x: Vec<Complex64> = z.iter().map(|v| v / norm).collect();
        let q = quantize(&x, p, eps).unwrap();
        prop_assert!(q.error <= eps, "error {} > {}", q.error, eps);
        let n = x.len();
        let ceiling = if x.iter().all(|v| v.im == 0.0) { nonneg_value_ceiling(n, eps) } else { complex_value_ceiling(n, eps) };
        prop_assert!(q.distinct_values.len() as u64 <= ceiling);
    }

    #[test]
    fn compression_bound(
        a in matrix(12),
        labels in prop::collection::vec(0usize..5, 12),
        values in prop::collection::vec(-2.0f64..2.0, 5),
    ) {
        let n = a.n();
        let labels = &labels[..n];
        let classes: Vec<Vec<usize>> = (0..5)
            .map(|c| (0..n).filter(|&j| labels[j] == c).collect::<Vec<_>>())
            .filter(|c| !c.is_empty())
            .collect();
        let partition = Partition::new(n, classes).unwrap();
        let c = quotient_compress(&a, &partition).unwrap();
        let x: Vec<f64> = labels.iter().map(|&l| values[l]).collect();
        let norm_sq: f64 = x.iter().map(|v| v * v).sum();
        let bound = spectrum(&c).unwrap().sigma(1) * norm_sq;
        prop_assert!(a.quadratic_form(&x).abs() <= bound + 1e-9);
    }

    #[test]
    fn certificate_chain(a in matrix(12)) {
        prop_assume!(a.n() >= 2);
        let cert = certify_sigma2(&a).unwrap();
        prop_assert!(cert.all_links_hold());
        prop_assert!(cert.recheck(&a).unwrap().iter().all(|l| l.holds));
        prop_assert!(cert.constant_holds);
        prop_assert!(cert.sigma2 <= ABSOLUTE_CONSTANT * cert.disc.value * cert.ln_n + 1e-8);
        prop_assert!(4.5 * cert.m_realized as f64 <= 4104.0 * cert.ln_n + 10260.0);
        prop_assert!(cert.m_realized as u64 <= cert.m_bound);
    }
}
