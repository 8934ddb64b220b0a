//! The σ₂ certificate: every step from `σ₂(A)` down to `disc(A)` evaluated
//! on concrete witnesses.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::compress::{quotient_compress, Partition, PartitionError};
use super::quantize::{complex_value_ceiling, phase_count, quantize_real, QuantizeError};
use crate::discrepancy::{disc_expression, disc_exact_capped, disc_heuristic, DiscError, DiscMode, DiscResult, DEFAULT_EXACT_CAP, DEFAULT_RESTARTS};
use crate::linalg::{eig_symmetric, spectrum, LinalgError, SymmetricMatrix};

/// Quantization accuracy used by the certificate.
pub const CERTIFICATE_EPSILON: f64 = 1.0 / 3.0;
/// Absolute slack allowed on each link.
pub const LINK_TOLERANCE: f64 = 1e-8;
/// The absolute constant `C` in `σ₂(A) ≤ C·disc(A)·ln n`.
pub const ABSOLUTE_CONSTANT: f64 = 18906.0;
/// `σ₁(B) ≤ LINK2_FACTOR·|⟨By, y⟩|` when `‖x − y‖ ≤ 1/3`.
pub const LINK2_FACTOR: f64 = 4.5;

#[derive(Debug, Error)]
pub enum CertifyError {
    #[error("certificates need n >= 2, got {0}")]
    TooSmall(usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Quantize(#[from] QuantizeError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Disc(#[from] DiscError),
    #[error("link `{link}` failed: {lhs} > {rhs}")]
    LinkViolated {
        link: String,
        lhs: f64,
        rhs: f64,
        certificate: Box<Sigma2Certificate>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Link {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs − lhs`.
    pub slack: f64,
    pub holds: bool,
}

impl Link {
    fn new(name: &str, lhs: f64, rhs: f64) -> Self {
        Self {
            name: name.to_string(),
            lhs,
            rhs,
            slack: rhs - lhs,
            holds: lhs <= rhs + LINK_TOLERANCE,
        }
    }
}

/// How `disc(A)` is obtained for the last link.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertifyOptions {
    pub exact_cap: usize,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self {
            exact_cap: DEFAULT_EXACT_CAP,
            restarts: DEFAULT_RESTARTS,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sigma2Certificate {
    pub n: usize,
    pub rho_prime: f64,
    pub sigma2: f64,
    pub sigma1_b: f64,
    /// Unit vector with `|⟨Bx, x⟩| = σ₁(B)`.
    pub x: Vec<f64>,
    /// Quantization of `x`.
    pub y: Vec<f64>,
    pub epsilon: f64,
    pub quantization_error: f64,
    /// Level sets of `y`, ascending by value.
    pub partition: Partition,
    /// Rows of the compressed matrix `C`.
    pub c: Vec<Vec<f64>>,
    pub sigma1_c: f64,
    pub max_abs_c: f64,
    pub byy: f64,
    pub disc: DiscResult,
    pub links: Vec<Link>,
    /// Number of classes actually produced.
    pub m_realized: usize,
    /// `⌈8π/ε⌉·⌈(4/ε)·ln(4n/ε)⌉`.
    pub m_bound: u64,
    pub ln_n: f64,
    pub log2_n: f64,
    /// `(9/2)·m_realized·disc(A)`.
    pub realized_bound: f64,
    /// `(9/2)·m_bound·disc(A)`.
    pub lemma_bound: f64,
    /// `(4104·ln n + 10260)·disc(A)`.
    pub closed_form_bound: f64,
    /// `18906·disc(A)·ln n`.
    pub constant_bound: f64,
    /// `(9/2)·m_realized / ln n`.
    pub realized_constant: f64,
    /// `σ₂(A) ≤ 18906·disc(A)·ln n` (certified only when `disc.mode` is
    /// exact).
    pub constant_holds: bool,
    /// `(9/2)·m_bound ≤ 4104·ln n + 10260`.
    pub lemma_within_closed_form: bool,
}

impl Sigma2Certificate {
    pub fn all_links_hold(&self) -> bool {
        self.links.iter().all(|l| l.holds)
    }

    pub fn c_matrix(&self) -> SymmetricMatrix {
        let m = self.c.len();
        SymmetricMatrix::from_fn(m, |i, j| self.c[i][j])
    }

    /// Re-derives every link from `a` and the stored witnesses.
    pub fn recheck(&self, a: &SymmetricMatrix) -> Result<Vec<Link>, CertifyError> {
        let b = a.shifted_by_ones(a.rho_prime());
        let sigma2 = spectrum(a)?.sigma2();
        let sigma1_b = spectrum(&b)?.sigma(1);
        let byy = b.quadratic_form(&self.y).abs();
        let c = quotient_compress(&b, &self.partition)?;
        let sigma1_c = spectrum(&c)?.sigma(1);
        let max_c = c.max_abs();
        let disc = disc_expression(a, a.rho_prime(), &self.disc.witness_x, &self.disc.witness_y);
        Ok(chain(sigma2, sigma1_b, byy, sigma1_c, c.n(), max_c, disc))
    }
}

fn chain(sigma2: f64, sigma1_b: f64, byy: f64, sigma1_c: f64, m: usize, max_c: f64, disc: f64) -> Vec<Link> {
    vec![
        Link::new("sigma2(A) <= sigma1(B)", sigma2, sigma1_b),
        Link::new("sigma1(B) <= 9/2 |<By,y>|", sigma1_b, LINK2_FACTOR * byy),
        Link::new("|<By,y>| <= sigma1(C)", byy, sigma1_c),
        Link::new("sigma1(C) <= m max|c_ij|", sigma1_c, m as f64 * max_c),
        Link::new("max|c_ij| <= disc(A)", max_c, disc),
    ]
}

pub fn certify_sigma2(a: &SymmetricMatrix) -> Result<Sigma2Certificate, CertifyError> {
    certify_sigma2_with(a, CertifyOptions::default())
}

pub fn certify_sigma2_with(a: &SymmetricMatrix, options: CertifyOptions) -> Result<Sigma2Certificate, CertifyError> {
    let n = a.n();
    if n < 2 {
        return Err(CertifyError::TooSmall(n));
    }
    let rho = a.rho_prime();
    let b = a.shifted_by_ones(rho);
    let sigma2 = spectrum(a)?.sigma2();

    let eig = eig_symmetric(&b)?;
    let top = eig.spectrum.eigenvalues[0];
    let bottom = eig.spectrum.eigenvalues[n - 1];
    let x = if top.abs() >= bottom.abs() {
        eig.vectors[0].clone()
    } else {
        eig.vectors[n - 1].clone()
    };
    let sigma1_b = eig.spectrum.sigma(1);

    let q = quantize_real(&x, 2.0, CERTIFICATE_EPSILON)?;
    debug_assert!(q.y.iter().all(|z| z.im == 0.0));
    let y: Vec<f64> = q.y.iter().map(|z| z.re).collect();
    let partition = Partition::level_sets(&y);
    let c = quotient_compress(&b, &partition)?;
    let sigma1_c = spectrum(&c)?.sigma(1);
    let byy = b.quadratic_form(&y).abs();

    // Each c_ij is the discrepancy expression at (P_i, P_j), so the largest
    // one is itself a witness.
    let mut max_c = 0.0f64;
    let mut argmax = (0, 0);
    for i in 0..c.n() {
        for j in 0..c.n() {
            if c.get(i, j).abs() > max_c {
                max_c = c.get(i, j).abs();
                argmax = (i, j);
            }
        }
    }
    let disc = if n <= options.exact_cap {
        disc_exact_capped(a, options.exact_cap)?
    } else {
        let mut d = disc_heuristic(a, options.restarts, options.seed)?;
        let (px, py) = (&partition.classes()[argmax.0], &partition.classes()[argmax.1]);
        let from_c = disc_expression(a, rho, px, py);
        if from_c > d.value {
            let (mut wx, mut wy) = (px.clone(), py.clone());
            wx.sort_unstable();
            wy.sort_unstable();
            d = DiscResult {
                value: from_c,
                witness_x: wx,
                witness_y: wy,
                mode: DiscMode::Heuristic,
                evaluations: d.evaluations + 1,
            };
        }
        d
    };

    let m = partition.class_count();
    let links = chain(sigma2, sigma1_b, byy, sigma1_c, m, max_c, disc.value);
    let ln_n = (n as f64).ln();
    let m_bound = complex_value_ceiling(n, CERTIFICATE_EPSILON);
    debug_assert_eq!(phase_count(CERTIFICATE_EPSILON), 76);
    let closed_form = 4104.0 * ln_n + 10260.0;
    let constant_bound = ABSOLUTE_CONSTANT * disc.value * ln_n;

    let cert = Sigma2Certificate {
        n,
        rho_prime: rho,
        sigma2,
        sigma1_b,
        x,
        y,
        epsilon: CERTIFICATE_EPSILON,
        quantization_error: q.error,
        partition,
        c: (0..c.n()).map(|i| c.row(i).to_vec()).collect(),
        sigma1_c,
        max_abs_c: max_c,
        byy,
        links,
        m_realized: m,
        m_bound,
        ln_n,
        log2_n: (n as f64).log2(),
        realized_bound: LINK2_FACTOR * m as f64 * disc.value,
        lemma_bound: LINK2_FACTOR * m_bound as f64 * disc.value,
        closed_form_bound: closed_form * disc.value,
        constant_bound,
        realized_constant: LINK2_FACTOR * m as f64 / ln_n,
        constant_holds: sigma2 <= constant_bound + LINK_TOLERANCE,
        lemma_within_closed_form: LINK2_FACTOR * m_bound as f64 <= closed_form,
        disc,
    };
    if let Some(bad) = cert.links.iter().find(|l| !l.holds) {
        return Err(CertifyError::LinkViolated {
            link: bad.name.clone(),
            lhs: bad.lhs,
            rhs: bad.rhs,
            certificate: Box::new(cert.clone()),
        });
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_ones_chain_is_zero() {
        let cert = certify_sigma2(&SymmetricMatrix::all_ones(4)).unwrap();
        assert!(cert.sigma2 < 1e-12);
        assert_eq!(cert.disc.value, 0.0);
        assert_eq!(cert.sigma1_b, 0.0);
        for l in &cert.links[1..] {
            assert_eq!((l.lhs, l.rhs), (0.0, 0.0), "{}", l.name);
        }
    }

    #[test]
    fn diag_one_minus_one() {
        let a = SymmetricMatrix::diagonal(&[1.0, -1.0]);
        let cert = certify_sigma2(&a).unwrap();
        assert_eq!(cert.rho_prime, 0.0);
        assert!((cert.sigma2 - 1.0).abs() < 1e-12);
        assert!((cert.sigma1_b - 1.0).abs() < 1e-12);
        // x = ±e_i, quantized exactly: <By,y> = ±1, C = B.
        assert!((cert.byy - 1.0).abs() < 1e-12);
        assert_eq!(cert.m_realized, 2);
        assert!((cert.disc.value - 1.0).abs() < 1e-12);
        assert!(cert.all_links_hold());
    }

    #[test]
    fn recheck_agrees() {
        let a = SymmetricMatrix::from_fn(7, |i, j| ((3 * i + 5 * j + i * j) % 7) as f64 - 2.5);
        let cert = certify_sigma2(&a).unwrap();
        let again = cert.recheck(&a).unwrap();
        for (l, r) in cert.links.iter().zip(&again) {
            assert!((l.lhs - r.lhs).abs() < 1e-9 && (l.rhs - r.rhs).abs() < 1e-9);
        }
    }

    #[test]
    fn too_small() {
        assert!(matches!(
            certify_sigma2(&SymmetricMatrix::identity(1)),
            Err(CertifyError::TooSmall(1))
        ));
    }
}
