use sigdisc::constructions::{
    block_matrix, block_plan, block_plan_with_k, degree_catalog, harmonic, qpt_graph, sparse_union,
    tightness_disc_structured, tightness_matrix, tightness_step_vector, ConstructionError,
};
use sigdisc::linalg::{singular_values, spectrum};
use sigdisc::sampling::{gnp, task_rng};
use sigdisc::Graph;

/// Degree of `Q(p, t)` by listing `w² mod p` for `w = 1..p`.
fn squares_degree(p: u64, t: u64) -> usize {
    (1..p).filter(|w| (w * w) % p <= t).count()
}

#[test]
fn tightness_rows_and_step_vector() {
    let a = tightness_matrix(5);
    assert!(a.row_sums().iter().all(|&s| (s - 10.0).abs() < 1e-12));
    for k in [2, 4, 8, 30] {
        let a = tightness_matrix(k);
        let r = a.rayleigh_quotient(&tightness_step_vector(k)).unwrap();
        assert!((r - 2.0 * harmonic(k)).abs() < 1e-10, "k = {k}");
    }
    let s = spectrum(&tightness_matrix(1)).unwrap();
    assert_eq!(s.eigenvalues, vec![2.0, 2.0]);
}

#[test]
fn tightness_structured_stays_below_four_at_ten_thousand() {
    let d = tightness_disc_structured(10_000);
    assert!(d.value < 4.0);
    assert!(d.value > 3.0);
}

#[test]
fn qpt_thirteen() {
    let (g, d) = qpt_graph(13, 3).unwrap();
    assert_eq!(d, squares_degree(13, 3));
    assert_eq!(d, 4);
    let a = g.adjacency_matrix();
    assert!((singular_values(&a).unwrap()[0] - 4.0).abs() < 1e-10);
    let rho = a.rho_prime();
    assert!((a.complement().unwrap().rho_prime() - (1.0 - rho)).abs() < 1e-15);
    assert_eq!(rho, 52.0 / 169.0);
    let catalog = degree_catalog(13).unwrap();
    assert_eq!((catalog.degree(3), catalog.degree(13)), (4, 12));
    assert_eq!(catalog.values, vec![2, 4, 6, 8, 10, 12]);
}

#[test]
fn catalog_matches_construction_at_101() {
    let catalog = degree_catalog(101).unwrap();
    for t in 1..=101 {
        let (g, d) = qpt_graph(101, t).unwrap();
        assert_eq!(g.regular_degree(), Some(d));
        assert_eq!(catalog.degree(t), d);
        assert_eq!(squares_degree(101, t), d);
    }
}

#[test]
fn block_thirteen() {
    let plan = block_plan(13).unwrap();
    assert_eq!(plan.k, 2);
    assert_eq!(plan.d, vec![vec![12, 12], vec![12, 10]]);
    let a = block_matrix(&plan);
    assert_eq!(a.rho_prime(), 0.5);
    assert!(a.row_sums().iter().all(|&s| s == 26.0));
    // Direct summation of ⟨Ay, y⟩/‖y‖² against the closed form.
    let y = plan.step_vector();
    let n = a.n();
    let mut num = 0.0;
    for i in 0..n {
        for j in 0..n {
            num += a.get(i, j) * y[i] * y[j];
        }
    }
    let den: f64 = y.iter().map(|v| v * v).sum();
    assert!((num / den - plan.step_rayleigh_closed_form()).abs() < 1e-10);
    assert!((plan.step_rayleigh_closed_form() - 20.037566124069).abs() < 1e-9);
}

#[test]
fn block_with_larger_k() {
    let plan = block_plan_with_k(13, 3).unwrap();
    assert!(!plan.canonical);
    let a = block_matrix(&plan);
    assert_eq!(a.n(), 78);
    assert!(a.row_sums().iter().all(|&s| s == 39.0));
    assert_eq!(block_plan_with_k(13, 0), Err(ConstructionError::ZeroSize));
    assert_eq!(block_plan(15), Err(ConstructionError::NotPrime(15)));
}

#[test]
fn union_second_eigenvalue_lies_between_top_eigenvalues() {
    for (seed, n) in [(1u64, 40usize), (2, 60), (3, 80)] {
        let p = (n as f64).powf(-1.0 / 3.0);
        let g = gnp(&mut task_rng(seed, 0), n, p);
        let u = sparse_union(&g, p).unwrap();
        let m = (p * n as f64).floor() as usize;
        let mu1_g = spectrum(&g.adjacency_matrix()).unwrap().mu(1);
        let mu1_k = (m - 1) as f64;
        let mu2 = spectrum(&u.adjacency_matrix()).unwrap().mu(2);
        let tol = 1e-9;
        assert!(mu2 >= mu1_g.min(mu1_k) - tol && mu2 <= mu1_g.max(mu1_k) + tol, "n = {n}");
    }
    let u = sparse_union(&Graph::complete(4), 0.5).unwrap();
    assert_eq!(u.degrees(), vec![3, 3, 3, 3, 1, 1]);
}
