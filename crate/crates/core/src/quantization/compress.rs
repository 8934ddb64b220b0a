//! Proper partitions and quotient compression.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::SymmetricMatrix;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PartitionError {
    #[error("class {0} is empty")]
    EmptyClass(usize),
    #[error("index {index} out of range for n = {n}")]
    OutOfRange { index: usize, n: usize },
    #[error("index {0} appears in more than one class")]
    Overlap(usize),
    #[error("index {0} is not covered")]
    Uncovered(usize),
    #[error("partition covers {partition} indices but the matrix has size {matrix}")]
    SizeMismatch { partition: usize, matrix: usize },
}

/// A proper partition of `0..n`: nonempty, disjoint classes covering
/// everything.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    #[serde(skip)]
    n: usize,
    #[serde(serialize_with = "one_based_classes")]
    classes: Vec<Vec<usize>>,
}

fn one_based_classes<S: serde::Serializer>(classes: &[Vec<usize>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(classes.iter().map(|c| c.iter().map(|v| v + 1).collect::<Vec<_>>()))
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            classes: Vec<Vec<usize>>,
        }
        let raw = Raw::deserialize(d)?;
        let classes: Vec<Vec<usize>> = raw
            .classes
            .into_iter()
            .map(|c| {
                c.into_iter()
                    .map(|v| v.checked_sub(1).ok_or_else(|| serde::de::Error::custom("labels are 1-based")))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<_, _>>()?;
        let n = classes.iter().map(|c| c.len()).sum();
        Partition::new(n, classes).map_err(serde::de::Error::custom)
    }
}

impl Partition {
    pub fn new(n: usize, classes: Vec<Vec<usize>>) -> Result<Self, PartitionError> {
        let mut seen = vec![false; n];
        for (k, class) in classes.iter().enumerate() {
            if class.is_empty() {
                return Err(PartitionError::EmptyClass(k));
            }
            for &i in class {
                if i >= n {
                    return Err(PartitionError::OutOfRange { index: i, n });
                }
                if std::mem::replace(&mut seen[i], true) {
                    return Err(PartitionError::Overlap(i));
                }
            }
        }
        if let Some(i) = seen.iter().position(|&s| !s) {
            return Err(PartitionError::Uncovered(i));
        }
        Ok(Self { n, classes })
    }

    pub fn singletons(n: usize) -> Self {
        Self {
            n,
            classes: (0..n).map(|i| vec![i]).collect(),
        }
    }

    pub fn whole(n: usize) -> Self {
        Self {
            n,
            classes: vec![(0..n).collect()],
        }
    }

    /// Level sets of `values`, ordered by value ascending.
    pub fn level_sets(values: &[f64]) -> Self {
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut last: Option<f64> = None;
        for i in order {
            if last != Some(values[i]) {
                classes.push(Vec::new());
                last = Some(values[i]);
            }
            classes.last_mut().unwrap().push(i);
        }
        Self {
            n: values.len(),
            classes,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }
}

/// `c_ij = (|P_i||P_j|)^{-1/2} Σ_{r∈P_i} Σ_{s∈P_j} b_rs`.
pub fn quotient_compress(b: &SymmetricMatrix, partition: &Partition) -> Result<SymmetricMatrix, PartitionError> {
    if partition.n() != b.n() {
        return Err(PartitionError::SizeMismatch {
            partition: partition.n(),
            matrix: b.n(),
        });
    }
    let classes = partition.classes();
    Ok(SymmetricMatrix::from_fn(classes.len(), |i, j| {
        let sum = crate::linalg::neumaier_sum(
            classes[i].iter().flat_map(|&r| classes[j].iter().map(move |&s| b.get(r, s))),
        );
        sum / ((classes[i].len() * classes[j].len()) as f64).sqrt()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_improper_partitions() {
        assert_eq!(Partition::new(3, vec![vec![0, 1], vec![]]), Err(PartitionError::EmptyClass(1)));
        assert_eq!(Partition::new(3, vec![vec![0, 1], vec![1, 2]]), Err(PartitionError::Overlap(1)));
        assert_eq!(Partition::new(3, vec![vec![0, 1]]), Err(PartitionError::Uncovered(2)));
        assert!(matches!(Partition::new(2, vec![vec![0, 2]]), Err(PartitionError::OutOfRange { .. })));
    }

    #[test]
    fn singleton_partition_is_identity() {
        let b = SymmetricMatrix::from_fn(5, |i, j| (i as f64 + 1.0) * 0.3 - j as f64 * 0.7);
        assert_eq!(quotient_compress(&b, &Partition::singletons(5)).unwrap(), b);
    }

    #[test]
    fn whole_partition_is_scaled_mean() {
        let b = SymmetricMatrix::from_fn(4, |i, j| (i + j) as f64);
        let c = quotient_compress(&b, &Partition::whole(4)).unwrap();
        assert_eq!(c.n(), 1);
        assert!((c.get(0, 0) - 4.0 * b.rho_prime()).abs() < 1e-12);
    }

    #[test]
    fn level_sets_ascend() {
        let p = Partition::level_sets(&[0.5, -1.0, 0.5, 0.0]);
        assert_eq!(p.classes(), &[vec![1], vec![3], vec![0, 2]]);
    }

    #[test]
    fn json_round_trip() {
        let p = Partition::new(3, vec![vec![2], vec![0, 1]]).unwrap();
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, r#"{"classes":[[3],[1,2]]}"#);
        assert_eq!(serde_json::from_str::<Partition>(&text).unwrap(), p);
    }
}
