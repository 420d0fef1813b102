use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::files::UnitaryFile;
use crate::bipartite::BipartiteState;
use crate::invariance::{
    group_dimension, invariance_structure, lie_algebra_dimension, InvarianceStructure,
};
use crate::tolerance::Tolerances;

#[derive(Clone, Debug, Serialize)]
pub struct ClusterReport {
    pub value: f64,
    pub multiplicity: usize,
    /// Schmidt indices covered by the cluster.
    pub indices: Vec<usize>,
}

/// One stabilizer block, described in both bases.
#[derive(Clone, Debug, Serialize)]
pub struct BlockReport {
    /// Schmidt-basis symbol on side 1, e.g. `e^{iφ₁}` or `D₁`.
    pub side1: String,
    pub side2: String,
    pub size: usize,
    pub coupling: &'static str,
    /// Schmidt vectors spanning the block on each side, one per row,
    /// in the computational basis.
    pub vectors1: UnitaryRows,
    pub vectors2: UnitaryRows,
}

#[derive(Clone, Debug, Serialize)]
pub struct UnitaryRows {
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub group_dimension: usize,
    pub lie_algebra_dimension: usize,
    pub agree: bool,
}

/// Everything `analyze` prints.
#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub d1: usize,
    pub d2: usize,
    /// Norm of the input before rescaling, when `--normalize` was used.
    pub original_norm: Option<f64>,
    pub schmidt_coefficients: Vec<f64>,
    pub rank: usize,
    pub clusters: Vec<ClusterReport>,
    pub r_counts: BTreeMap<usize, usize>,
    pub min_cluster_gap: Option<f64>,
    pub min_support_value: f64,
    pub null_dims: (usize, usize),
    /// `R₁` and `R₂` written as direct sums in the Schmidt basis.
    pub schmidt_form: (String, String),
    /// How the Schmidt-basis form maps to the computational basis.
    pub original_form: (String, String),
    pub blocks: Vec<BlockReport>,
    pub s1: UnitaryFile,
    pub s2: UnitaryFile,
    pub oracle: OracleReport,
    pub tolerances: TolerancesReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct TolerancesReport {
    pub rank: f64,
    pub degeneracy: f64,
    pub nullspace: f64,
}

pub fn analyze(
    state: &BipartiteState,
    original_norm: Option<f64>,
    tols: &Tolerances,
) -> crate::Result<AnalysisReport> {
    let structure = invariance_structure(state, tols.rank, tols.degeneracy)?;
    let lie = lie_algebra_dimension(state, tols.nullspace)?;
    let group = group_dimension(&structure);
    let (d1, d2) = state.dims();
    let names = block_names(&structure);

    let blocks = structure
        .support_blocks
        .iter()
        .zip(&names)
        .map(|(b, name)| BlockReport {
            side1: name.clone(),
            side2: conjugate_name(name),
            size: b.size,
            coupling: "conjugate",
            vectors1: rows(&structure, 1, b.start..b.start + b.size),
            vectors2: rows(&structure, 2, b.start..b.start + b.size),
        })
        .chain(null_block(&structure))
        .collect();

    let spectrum = &structure.spectrum;
    Ok(AnalysisReport {
        d1,
        d2,
        original_norm,
        schmidt_coefficients: structure.schmidt.sigma.clone(),
        rank: spectrum.rank,
        clusters: spectrum
            .clusters
            .iter()
            .map(|c| ClusterReport {
                value: c.value,
                multiplicity: c.multiplicity,
                indices: (c.start..c.start + c.multiplicity).collect(),
            })
            .collect(),
        r_counts: spectrum.r_counts.clone(),
        min_cluster_gap: spectrum.min_cluster_gap,
        min_support_value: spectrum.min_support_value,
        null_dims: spectrum.null_dims,
        schmidt_form: schmidt_form(&structure, &names),
        original_form: ("U₁ = S₁ᵀ R₁ S₁*".to_string(), "U₂ = S₂ᵀ R₂ S₂*".to_string()),
        blocks,
        s1: UnitaryFile::from_matrix(&structure.schmidt.s1),
        s2: UnitaryFile::from_matrix(&structure.schmidt.s2),
        oracle: OracleReport {
            group_dimension: group,
            lie_algebra_dimension: lie,
            agree: group == lie,
        },
        tolerances: TolerancesReport {
            rank: tols.rank,
            degeneracy: tols.degeneracy,
            nullspace: tols.nullspace,
        },
    })
}

fn subscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    n.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).expect("decimal digit") as usize])
        .collect()
}

/// Phases for singletons, `D` for pairs, `T` for triples, `W⁽ᵏ⁾` beyond,
/// numbered per size.
fn block_names(structure: &InvarianceStructure) -> Vec<String> {
    let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
    structure
        .support_blocks
        .iter()
        .map(|b| {
            let idx = seen.entry(b.size).or_insert(0);
            *idx += 1;
            let i = subscript(*idx);
            match b.size {
                1 => format!("e^{{iφ{i}}}"),
                2 => format!("D{i}"),
                3 => format!("T{i}"),
                k => format!("W[{k}]{i}"),
            }
        })
        .collect()
}

fn conjugate_name(name: &str) -> String {
    match name.strip_prefix("e^{iφ") {
        Some(rest) => format!("e^{{-iφ{rest}"),
        None => format!("{name}*"),
    }
}

fn schmidt_form(structure: &InvarianceStructure, names: &[String]) -> (String, String) {
    let mut side1: Vec<String> = names.to_vec();
    let mut side2: Vec<String> = names.iter().map(|n| conjugate_name(n)).collect();
    let nb = structure.null_blocks;
    if nb.dim1 > 0 {
        side1.push(format!("V₁({})", nb.dim1));
    }
    if nb.dim2 > 0 {
        side2.push(format!("V₂({})", nb.dim2));
    }
    (
        format!("R₁ = {}", side1.join(" ⊕ ")),
        format!("R₂ = {}", side2.join(" ⊕ ")),
    )
}

fn rows(
    structure: &InvarianceStructure,
    side: usize,
    range: std::ops::Range<usize>,
) -> UnitaryRows {
    let s = if side == 1 {
        &structure.schmidt.s1
    } else {
        &structure.schmidt.s2
    };
    let pick = |f: fn(num_complex::Complex64) -> f64| -> Vec<Vec<f64>> {
        range
            .clone()
            .map(|k| (0..s.cols()).map(|i| f(s.get(k, i))).collect())
            .collect()
    };
    UnitaryRows {
        re: pick(|z| z.re),
        im: pick(|z| z.im),
    }
}

fn null_block(structure: &InvarianceStructure) -> Option<BlockReport> {
    let nb = structure.null_blocks;
    let r = structure.rank();
    let (d1, d2) = structure.dims();
    (nb.dim1 > 0 || nb.dim2 > 0).then(|| BlockReport {
        side1: if nb.dim1 > 0 {
            format!("V₁({})", nb.dim1)
        } else {
            "-".into()
        },
        side2: if nb.dim2 > 0 {
            format!("V₂({})", nb.dim2)
        } else {
            "-".into()
        },
        size: nb.dim1.max(nb.dim2),
        coupling: "independent",
        vectors1: rows(structure, 1, r..d1),
        vectors2: rows(structure, 2, r..d2),
    })
}

impl AnalysisReport {
    /// One-line digest, e.g. `1 cluster ×2, r₂=1, null dims (0,0), dim 4, oracle: agree`.
    pub fn summary(&self) -> String {
        let clusters = self
            .clusters
            .iter()
            .map(|c| format!("×{}", c.multiplicity))
            .collect::<Vec<_>>()
            .join(" ");
        let noun = if self.clusters.len() == 1 {
            "cluster"
        } else {
            "clusters"
        };
        let r = self
            .r_counts
            .iter()
            .map(|(k, n)| format!("r{}={n}", subscript(*k)))
            .collect::<Vec<_>>()
            .join(", ");
        format!(
            "{} {noun} {clusters}, {r}, null dims ({},{}), dim {}, oracle: {}",
            self.clusters.len(),
            self.null_dims.0,
            self.null_dims.1,
            self.oracle.group_dimension,
            if self.oracle.agree {
                "agree"
            } else {
                "MISMATCH"
            }
        )
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let coeffs = self
            .schmidt_coefficients
            .iter()
            .map(|s| format!("{s:.12}"))
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(out, "dimensions: {} x {}", self.d1, self.d2);
        if let Some(norm) = self.original_norm {
            let _ = writeln!(out, "input norm: {norm:.17} (rescaled to 1)");
        }
        let _ = writeln!(out, "schmidt coefficients: {coeffs}");
        let _ = writeln!(out, "rank: {}", self.rank);
        for c in &self.clusters {
            let _ = writeln!(
                out,
                "cluster: {:.12} ×{} at {:?}",
                c.value, c.multiplicity, c.indices
            );
        }
        let r = self
            .r_counts
            .iter()
            .map(|(k, n)| format!("r{}={n}", subscript(*k)))
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(out, "tuple counts: {r}");
        match self.min_cluster_gap {
            Some(gap) => {
                let _ = writeln!(out, "min spectral gap: {gap:.3e}");
            }
            None => {
                let _ = writeln!(out, "min spectral gap: none (single cluster)");
            }
        }
        let _ = writeln!(
            out,
            "smallest nonzero coefficient: {:.3e}",
            self.min_support_value
        );
        let _ = writeln!(
            out,
            "null dims: ({}, {})",
            self.null_dims.0, self.null_dims.1
        );
        let _ = writeln!(out, "schmidt basis: {}", self.schmidt_form.0);
        let _ = writeln!(out, "               {}", self.schmidt_form.1);
        let _ = writeln!(out, "original basis: {}", self.original_form.0);
        let _ = writeln!(out, "                {}", self.original_form.1);
        let _ = writeln!(out, "group dimension: {}", self.oracle.group_dimension);
        let _ = writeln!(
            out,
            "lie algebra dimension: {}",
            self.oracle.lie_algebra_dimension
        );
        let _ = writeln!(
            out,
            "oracle: {}",
            if self.oracle.agree {
                "agree"
            } else {
                "MISMATCH"
            }
        );
        let _ = writeln!(out, "summary: {}", self.summary());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matkernel::ComplexMatrix;
    use crate::tolerance::NORM_TOL;

    fn state(rows: usize, cols: usize, entries: &[f64]) -> BipartiteState {
        BipartiteState::new(
            ComplexMatrix::from_real_row_major(rows, cols, entries).unwrap(),
            NORM_TOL,
        )
        .unwrap()
    }

    #[test]
    fn bell_summary() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let r = analyze(
            &state(2, 2, &[h, 0.0, 0.0, h]),
            None,
            &Tolerances::default(),
        )
        .unwrap();
        assert_eq!(
            r.summary(),
            "1 cluster ×2, r₂=1, null dims (0,0), dim 4, oracle: agree"
        );
        assert_eq!(r.schmidt_form.0, "R₁ = D₁");
        assert_eq!(r.schmidt_form.1, "R₂ = D₁*");
    }

    #[test]
    fn product_summary() {
        let r = analyze(
            &state(2, 2, &[1.0, 0.0, 0.0, 0.0]),
            None,
            &Tolerances::default(),
        )
        .unwrap();
        assert_eq!(
            r.summary(),
            "1 cluster ×1, r₁=1, null dims (1,1), dim 3, oracle: agree"
        );
        assert_eq!(r.schmidt_form.0, "R₁ = e^{iφ₁} ⊕ V₁(1)");
        assert_eq!(r.schmidt_form.1, "R₂ = e^{-iφ₁} ⊕ V₂(1)");
        assert_eq!(r.blocks.len(), 2);
        assert_eq!(r.blocks[1].coupling, "independent");
    }

    #[test]
    fn mixed_spectrum_names() {
        let (a, b) = (0.4f64.sqrt(), 0.2f64.sqrt());
        // σ = (a, b, b, b) plus nothing null: one phase and one triple
        let s = state(
            4,
            4,
            &[
                a, 0.0, 0.0, 0.0, //
                0.0, b, 0.0, 0.0, //
                0.0, 0.0, b, 0.0, //
                0.0, 0.0, 0.0, b,
            ],
        );
        let r = analyze(&s, None, &Tolerances::default()).unwrap();
        assert_eq!(r.schmidt_form.0, "R₁ = e^{iφ₁} ⊕ T₁");
        assert_eq!(r.oracle.group_dimension, 1 + 9);
        assert!(r.oracle.agree);
        assert!(r.to_text().contains("tuple counts: r₁=1 r₃=1"));
    }
}
