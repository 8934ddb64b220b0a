//! Vector quantization with few distinct values.
//!
//! Nonnegative vectors are bucketed geometrically: walking the entries in
//! descending order, a bucket keeps every entry `≥ (1 − ε/2)` times its first
//! entry and all of them are replaced by the bucket minimum. Once the bucket
//! budget is spent the remaining entries are already below `ε/(2n)` and are
//! set to zero.
//!
//! General complex vectors quantize the moduli with `ε/2` and round each
//! phase `θ ∈ [0, 1)` down to a multiple of `1/m`, `m = ⌈8π/ε⌉`.

use num_complex::Complex64;
use thiserror::Error;

/// Tolerance on `‖x‖_p = 1`.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuantizeError {
    #[error("epsilon must lie in (0, 1), got {0}")]
    BadEpsilon(f64),
    #[error("norm order must be at least 1, got {0}")]
    BadNorm(f64),
    #[error("input must have unit {p}-norm, got {norm}")]
    NotNormalized { p: f64, norm: f64 },
    #[error("input vector is empty")]
    Empty,
    #[error("entry {0} is negative or not a number")]
    Negative(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuantizeKind {
    /// Real nonnegative input, one geometric bucketing pass.
    Nonnegative,
    /// Anything else: moduli and phases quantized separately.
    Complex,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuantizedVector {
    pub y: Vec<Complex64>,
    /// Distinct values of `y` in order of first appearance.
    pub distinct_values: Vec<Complex64>,
    pub epsilon: f64,
    pub p_norm: f64,
    pub kind: QuantizeKind,
    /// `‖x − y‖_p`.
    pub error: f64,
    /// The value budget that applies to `kind`.
    pub value_ceiling: u64,
}

/// `⌈(2/ε)·ln(2n/ε)⌉`.
pub fn nonneg_value_ceiling(n: usize, epsilon: f64) -> u64 {
    ((2.0 / epsilon) * (2.0 * n as f64 / epsilon).ln()).ceil() as u64
}

/// `⌈8π/ε⌉`.
pub fn phase_count(epsilon: f64) -> u64 {
    (8.0 * std::f64::consts::PI / epsilon).ceil() as u64
}

/// `⌈8π/ε⌉·⌈(4/ε)·ln(4n/ε)⌉`.
pub fn complex_value_ceiling(n: usize, epsilon: f64) -> u64 {
    phase_count(epsilon) * nonneg_value_ceiling(n, epsilon / 2.0)
}

/// Buckets actually allowed: the least `j` with `(1 − ε/2)^j ≤ ε/(2n)`.
///
/// This is never above [`nonneg_value_ceiling`] and leaves room for the zero
/// value in all but tiny cases, where `n` itself is the smaller budget.
pub fn bucket_cap(n: usize, epsilon: f64) -> usize {
    let ratio = 1.0 - epsilon / 2.0;
    let floor = epsilon / (2.0 * n as f64);
    let mut j = 0;
    let mut level = 1.0f64;
    while level > floor {
        level *= ratio;
        j += 1;
    }
    j
}

fn check_args(len: usize, p: f64, epsilon: f64) -> Result<(), QuantizeError> {
    if len == 0 {
        return Err(QuantizeError::Empty);
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(QuantizeError::BadEpsilon(epsilon));
    }
    if !(p >= 1.0) || !p.is_finite() {
        return Err(QuantizeError::BadNorm(p));
    }
    Ok(())
}

pub fn p_norm(moduli: impl Iterator<Item = f64>, p: f64) -> f64 {
    moduli.map(|v| v.powf(p)).sum::<f64>().powf(1.0 / p)
}

fn check_normalized(moduli: &[f64], p: f64) -> Result<(), QuantizeError> {
    let norm = p_norm(moduli.iter().copied(), p);
    if (norm - 1.0).abs() > NORMALIZATION_TOLERANCE {
        return Err(QuantizeError::NotNormalized { p, norm });
    }
    Ok(())
}

/// Geometric bucketing of a nonnegative vector; no normalization check.
///
/// Ties in the descending order are broken by original index.
pub(crate) fn bucket_nonneg(x: &[f64], epsilon: f64) -> Vec<f64> {
    let n = x.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| x[b].total_cmp(&x[a]).then(a.cmp(&b)));

    let cap = bucket_cap(n, epsilon);
    let ratio = 1.0 - epsilon / 2.0;
    let mut y = vec![0.0; n];
    let mut start = 0;
    let mut buckets = 0;
    while start < n && buckets < cap {
        let threshold = ratio * x[order[start]];
        let mut end = start + 1;
        while end < n && x[order[end]] >= threshold {
            end += 1;
        }
        let floor = x[order[end - 1]];
        for &j in &order[start..end] {
            y[j] = floor;
        }
        start = end;
        buckets += 1;
    }
    y
}

/// Quantizes a real nonnegative unit vector.
pub fn quantize_nonneg(x: &[f64], p: f64, epsilon: f64) -> Result<Vec<f64>, QuantizeError> {
    check_args(x.len(), p, epsilon)?;
    if let Some(bad) = x.iter().position(|v| !(*v >= 0.0)) {
        return Err(QuantizeError::Negative(bad));
    }
    check_normalized(x, p)?;
    Ok(bucket_nonneg(x, epsilon))
}

/// `e^{2πi·q/m}`, exact at multiples of a quarter turn.
fn unit_root(q: u64, m: u64) -> Complex64 {
    if (4 * q) % m == 0 {
        match (4 * q / m) % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    } else {
        Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * q as f64 / m as f64)
    }
}

/// Phase as a fraction of a full turn in `[0, 1)`; zero maps to 0.
fn turn_fraction(z: Complex64) -> f64 {
    if z.re == 0.0 && z.im == 0.0 {
        return 0.0;
    }
    let t = z.im.atan2(z.re) / (2.0 * std::f64::consts::PI);
    let t = if t < 0.0 { t + 1.0 } else { t };
    if t >= 1.0 {
        0.0
    } else {
        t
    }
}

fn distinct(values: &[Complex64]) -> Vec<Complex64> {
    let mut seen: Vec<Complex64> = Vec::new();
    for &v in values {
        if !seen.iter().any(|s| s.re.to_bits() == v.re.to_bits() && s.im.to_bits() == v.im.to_bits()) {
            seen.push(v);
        }
    }
    seen
}

/// Quantizes a unit vector in `ℓ_p`.
///
/// Real nonnegative inputs take the direct bucketing path; everything else
/// goes through the modulus/phase split.
pub fn quantize(x: &[Complex64], p: f64, epsilon: f64) -> Result<QuantizedVector, QuantizeError> {
    check_args(x.len(), p, epsilon)?;
    let moduli: Vec<f64> = x.iter().map(|z| z.norm()).collect();
    check_normalized(&moduli, p)?;
    let n = x.len();

    let nonneg = x.iter().all(|z| z.im == 0.0 && z.re >= 0.0);
    let (y, kind, value_ceiling) = if nonneg {
        let y: Vec<Complex64> = bucket_nonneg(&moduli, epsilon)
            .into_iter()
            .map(|v| Complex64::new(v, 0.0))
            .collect();
        (y, QuantizeKind::Nonnegative, nonneg_value_ceiling(n, epsilon))
    } else {
        let m = phase_count(epsilon);
        let z = bucket_nonneg(&moduli, epsilon / 2.0);
        let y = x
            .iter()
            .zip(&z)
            .map(|(xj, &zj)| {
                if zj == 0.0 {
                    return Complex64::new(0.0, 0.0);
                }
                let q = ((m as f64 * turn_fraction(*xj)).floor() as u64).min(m - 1);
                unit_root(q, m) * zj
            })
            .collect();
        (y, QuantizeKind::Complex, complex_value_ceiling(n, epsilon))
    };

    let error = p_norm(x.iter().zip(&y).map(|(a, b)| (a - b).norm()), p);
    Ok(QuantizedVector {
        distinct_values: distinct(&y),
        y,
        epsilon,
        p_norm: p,
        kind,
        error,
        value_ceiling,
    })
}

/// Quantizes a real unit vector; signs survive as exact half turns.
pub fn quantize_real(x: &[f64], p: f64, epsilon: f64) -> Result<QuantizedVector, QuantizeError> {
    let z: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    quantize(&z, p, epsilon)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(v: &[f64]) -> Vec<Complex64> {
        v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
    }

    #[test]
    fn basis_vector_is_fixed() {
        for eps in [0.05, 1.0 / 3.0, 0.9] {
            let q = quantize(&real(&[1.0, 0.0, 0.0, 0.0]), 2.0, eps).unwrap();
            assert_eq!(q.y, real(&[1.0, 0.0, 0.0, 0.0]));
            assert_eq!(q.distinct_values.len(), 2);
            assert_eq!(q.error, 0.0);
        }
    }

    #[test]
    fn uniform_vector_is_one_bucket() {
        for p in [1.0, 2.0, 3.0] {
            let n = 9usize;
            let v = (n as f64).powf(-1.0 / p);
            let x = vec![v; n];
            let q = quantize(&real(&x), p, 0.2).unwrap();
            assert_eq!(q.distinct_values.len(), 1);
            assert_eq!(q.error, 0.0);
        }
    }

    #[test]
    fn signs_stay_real() {
        let s = 0.5f64;
        let q = quantize_real(&[s, -s, s, -s], 2.0, 1.0 / 3.0).unwrap();
        assert_eq!(q.kind, QuantizeKind::Complex);
        assert!(q.y.iter().all(|z| z.im == 0.0));
        assert_eq!(q.y[1].re, -0.5);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert_eq!(quantize(&real(&[1.0]), 2.0, 0.0), Err(QuantizeError::BadEpsilon(0.0)));
        assert_eq!(quantize(&real(&[1.0]), 2.0, 1.0), Err(QuantizeError::BadEpsilon(1.0)));
        assert_eq!(quantize(&real(&[1.0]), 0.5, 0.5), Err(QuantizeError::BadNorm(0.5)));
        assert!(matches!(
            quantize(&real(&[1.0, 1.0]), 2.0, 0.5),
            Err(QuantizeError::NotNormalized { .. })
        ));
    }

    #[test]
    fn ceilings_at_one_third() {
        assert_eq!(phase_count(1.0 / 3.0), 76);
        // ⌈12·ln(12·10)⌉ = ⌈57.45⌉
        assert_eq!(nonneg_value_ceiling(10, 1.0 / 6.0), 58);
        assert_eq!(complex_value_ceiling(10, 1.0 / 3.0), 76 * 58);
    }

    #[test]
    fn bucket_cap_leaves_room_for_zero() {
        for n in 1..=512usize {
            for eps in [0.01, 0.05, 0.1, 1.0 / 6.0, 0.2, 1.0 / 3.0, 0.5, 0.9, 0.99] {
                let cap = bucket_cap(n, eps) as u64;
                let k = nonneg_value_ceiling(n, eps);
                assert!(cap < k || n as u64 <= k, "n={n} eps={eps} cap={cap} k={k}");
            }
        }
    }
}
