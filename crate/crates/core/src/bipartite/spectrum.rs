use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};

/// A maximal run of (numerically) equal nonzero singular values.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Cluster {
    /// Mean of the member values.
    pub value: f64,
    pub multiplicity: usize,
    /// Index of the first member in the sorted singular value list.
    pub start: usize,
}

/// Degeneracy structure of a Schmidt spectrum.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegeneracySpectrum {
    /// Strictly decreasing cluster values; multiplicities sum to `rank`.
    pub clusters: Vec<Cluster>,
    /// `k -> r_k`, the number of clusters of multiplicity `k`.
    pub r_counts: BTreeMap<usize, usize>,
    pub rank: usize,
    /// `(d1 - rank, d2 - rank)`.
    pub null_dims: (usize, usize),
    pub sigma_max: f64,
    /// Smallest difference between neighbouring clusters, `None` with one cluster.
    pub min_cluster_gap: Option<f64>,
    /// Smallest nonzero singular value, i.e. the distance of the support from the null space.
    pub min_support_value: f64,
}

impl DegeneracySpectrum {
    /// Index ranges `start..start + multiplicity` of each cluster.
    pub fn cluster_ranges(&self) -> impl Iterator<Item = std::ops::Range<usize>> + '_ {
        self.clusters
            .iter()
            .map(|c| c.start..c.start + c.multiplicity)
    }

    /// Cluster label for each support index (`0..rank`).
    pub fn labels(&self) -> Vec<usize> {
        let mut out = vec![0; self.rank];
        for (label, range) in self.cluster_ranges().enumerate() {
            for i in range {
                out[i] = label;
            }
        }
        out
    }

    pub fn r_count(&self, k: usize) -> usize {
        self.r_counts.get(&k).copied().unwrap_or(0)
    }
}

/// Groups a non-increasing list of singular values into degeneracy clusters.
///
/// Values at or below `rank_tol * σ_max` are zero and belong to the null
/// space. The rest are chained: two neighbours share a cluster iff they differ
/// by at most `degeneracy_tol * σ_max`. `dims` are the subsystem dimensions
/// `(d1, d2)`; `sigma` may be shorter than `min(d1, d2)`, missing entries are
/// zero.
pub fn cluster_spectrum(
    sigma: &[f64],
    dims: (usize, usize),
    rank_tol: f64,
    degeneracy_tol: f64,
) -> Result<DegeneracySpectrum> {
    let (d1, d2) = dims;
    if sigma.len() > d1.min(d2) {
        return Err(Error::DimensionMismatch(format!(
            "{} singular values for a {d1}x{d2} state",
            sigma.len()
        )));
    }
    if let Some(&bad) = sigma.iter().find(|s| !s.is_finite() || **s < 0.0) {
        return Err(Error::BadSpectrum(format!(
            "singular value {bad} is not a finite non-negative number"
        )));
    }
    if let Some(i) = sigma.windows(2).position(|w| w[1] > w[0]) {
        return Err(Error::NotSorted { index: i + 1 });
    }

    let sigma_max = sigma.first().copied().unwrap_or(0.0);
    let zero = rank_tol * sigma_max;
    let rank = sigma.iter().take_while(|&&s| s > zero).count();
    if rank == 0 {
        return Err(Error::BadSpectrum("spectrum has no nonzero value".into()));
    }
    let support = &sigma[..rank];
    let gap_tol = degeneracy_tol * sigma_max;

    let mut clusters = Vec::new();
    let mut start = 0;
    for i in 1..=rank {
        if i == rank || support[i - 1] - support[i] > gap_tol {
            let members = &support[start..i];
            clusters.push(Cluster {
                value: members.iter().sum::<f64>() / members.len() as f64,
                multiplicity: members.len(),
                start,
            });
            start = i;
        }
    }

    let mut r_counts = BTreeMap::new();
    for c in &clusters {
        *r_counts.entry(c.multiplicity).or_insert(0) += 1;
    }
    let min_cluster_gap = clusters
        .windows(2)
        .map(|w| support[w[1].start - 1] - support[w[1].start])
        .min_by(f64::total_cmp);

    Ok(DegeneracySpectrum {
        clusters,
        r_counts,
        rank,
        null_dims: (d1 - rank, d2 - rank),
        sigma_max,
        min_cluster_gap,
        min_support_value: support[rank - 1],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tolerance::{DEGENERACY_TOL, RANK_TOL};

    fn cluster(sigma: &[f64], dims: (usize, usize)) -> DegeneracySpectrum {
        cluster_spectrum(sigma, dims, RANK_TOL, DEGENERACY_TOL).unwrap()
    }

    #[test]
    fn maximally_entangled_pair() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let s = cluster(&[h, h], (2, 2));
        assert_eq!(s.clusters.len(), 1);
        assert_eq!(s.clusters[0].multiplicity, 2);
        assert_eq!(s.r_count(2), 1);
        assert_eq!(s.r_count(1), 0);
        assert_eq!(s.rank, 2);
        assert_eq!(s.min_cluster_gap, None);
    }

    #[test]
    fn distinct_values() {
        let s = cluster(&[0.8f64.sqrt(), 0.2f64.sqrt()], (2, 2));
        assert_eq!(s.r_count(1), 2);
        assert_eq!(s.rank, 2);
        assert_eq!(s.null_dims, (0, 0));
        let gap = s.min_cluster_gap.unwrap();
        assert!((gap - (0.8f64.sqrt() - 0.2f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn explicit_zero_goes_to_null_space() {
        let s = cluster(&[0.8, 0.6, 0.0], (3, 3));
        assert_eq!(s.rank, 2);
        assert_eq!(s.null_dims, (1, 1));
        assert_eq!(s.min_support_value, 0.6);
    }

    #[test]
    fn short_spectrum_pads_with_zeros() {
        let s = cluster(&[1.0], (2, 3));
        assert_eq!(s.rank, 1);
        assert_eq!(s.null_dims, (1, 2));
    }

    #[test]
    fn chaining_is_transitive() {
        // each neighbour gap is within tolerance, the end-to-end spread is not
        let base = 0.5;
        let step = 0.6 * DEGENERACY_TOL * base;
        let s = cluster(&[base, base - step, base - 2.0 * step], (3, 3));
        assert_eq!(s.clusters.len(), 1);
        assert_eq!(s.clusters[0].multiplicity, 3);
    }

    #[test]
    fn near_degenerate_split_depends_on_tolerance() {
        let sigma = [0.7, 0.7 - 1e-6];
        assert_eq!(
            cluster_spectrum(&sigma, (2, 2), RANK_TOL, 1e-8)
                .unwrap()
                .clusters
                .len(),
            2
        );
        assert_eq!(
            cluster_spectrum(&sigma, (2, 2), RANK_TOL, 1e-5)
                .unwrap()
                .clusters
                .len(),
            1
        );
    }

    #[test]
    fn errors() {
        assert_eq!(
            cluster_spectrum(&[0.1, 0.5], (2, 2), RANK_TOL, DEGENERACY_TOL),
            Err(Error::NotSorted { index: 1 })
        );
        assert!(matches!(
            cluster_spectrum(&[0.0, 0.0], (2, 2), RANK_TOL, DEGENERACY_TOL),
            Err(Error::BadSpectrum(_))
        ));
        assert!(matches!(
            cluster_spectrum(&[1.0, 0.0, 0.0], (2, 3), RANK_TOL, DEGENERACY_TOL),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(cluster_spectrum(&[1.0, -0.1], (2, 2), RANK_TOL, DEGENERACY_TOL).is_err());
    }
}
