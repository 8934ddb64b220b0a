//! Quantization, quotient compression and the σ₂ certificate.

mod certificate;
mod compress;
mod quantize;

pub use certificate::{
    certify_sigma2, certify_sigma2_with, CertifyError, CertifyOptions, Link, Sigma2Certificate, ABSOLUTE_CONSTANT,
    CERTIFICATE_EPSILON, LINK2_FACTOR, LINK_TOLERANCE,
};
pub use compress::{quotient_compress, Partition, PartitionError};
pub use quantize::{
    bucket_cap, complex_value_ceiling, nonneg_value_ceiling, p_norm, phase_count, quantize, quantize_nonneg,
    quantize_real, QuantizeError, QuantizeKind, QuantizedVector, NORMALIZATION_TOLERANCE,
};
