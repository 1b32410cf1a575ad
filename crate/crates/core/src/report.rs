//! Serializable reports. Matrices are stored as one string per row in the
//! text-format conventions.

use serde::{Deserialize, Serialize};

use crate::decompose::{
    verify_decomposition, BlockedMatrix, Bounds, Decomposition, ParetoTarget, RankProfile, VerificationReport,
};
use crate::error::{Error, Result};
use crate::field::{Field, Gf2};
use crate::matrix::Matrix;
use crate::oracle::OracleResult;
use crate::slp::CircuitSpec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub m: usize,
    pub n: usize,
    pub field: String,
    pub profile: RankProfile,
    pub bounds: Bounds,
    #[serde(rename = "L")]
    pub l: Vec<String>,
    #[serde(rename = "C4")]
    pub c4: Vec<String>,
    #[serde(rename = "C3")]
    pub c3: Vec<String>,
    #[serde(rename = "C1")]
    pub c1: Vec<String>,
    #[serde(rename = "R")]
    pub r: Vec<String>,
    #[serde(rename = "rank_L")]
    pub rank_l: usize,
    #[serde(rename = "rank_R")]
    pub rank_r: usize,
    pub optimal: bool,
}

impl DecompositionReport {
    pub fn new<F: Field>(bm: &BlockedMatrix<F>, d: &Decomposition<F>) -> Self {
        DecompositionReport {
            m: bm.m(),
            n: bm.n(),
            field: bm.field().spec().to_string(),
            profile: bm.rank_profile(),
            bounds: bm.bounds(),
            l: d.l.to_row_strings(),
            c4: d.c4.to_row_strings(),
            c3: d.c3.to_row_strings(),
            c1: d.c1.to_row_strings(),
            r: d.r.to_row_strings(),
            rank_l: d.rank_l,
            rank_r: d.rank_r,
            optimal: verify_decomposition(bm, d).optimal,
        }
    }

    /// Rebuilds the factors; ranks are recomputed rather than trusted.
    pub fn to_decomposition<F: Field>(&self, field: F) -> Result<Decomposition<F>> {
        if field.spec().to_string() != self.field {
            return Err(Error::FieldMismatch);
        }
        let (m, n) = (self.m, self.n);
        let read = |rows: &[String], r: usize, c: usize, name: &str| -> Result<Matrix<F>> {
            if rows.len() != r {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("{name} has {} rows, expected {r}", rows.len()),
                });
            }
            Matrix::from_row_strings(field.clone(), c, rows).map_err(|e| Error::Parse {
                line: 0,
                msg: format!("{name}: {e}"),
            })
        };
        Ok(Decomposition::from_parts(
            read(&self.l, n, m, "L")?,
            read(&self.c4, m, m, "C4")?,
            read(&self.c3, m, n, "C3")?,
            read(&self.c1, n, n, "C1")?,
            read(&self.r, n, m, "R")?,
        ))
    }
}

/// Exhaustive search summary: the verification of the lowest-encoded
/// minimal-sum witness, followed by the Pareto set.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleReport {
    #[serde(flatten)]
    pub verification: VerificationReport,
    pub min_sum: usize,
    pub admissible: u64,
    pub pareto_set: Vec<ParetoTarget>,
    /// Witness `L` for each Pareto pair, in the same order.
    pub witnesses: Vec<Vec<String>>,
}

impl OracleReport {
    pub fn new(bm: &BlockedMatrix<Gf2>, res: &OracleResult) -> Result<Self> {
        let idx = res
            .pareto_set
            .iter()
            .position(|t| t.l + t.r == res.min_sum)
            .expect("minimum is attained on the Pareto set");
        let d = crate::decompose::complete_decomposition(bm, &res.witnesses[idx])?;
        Ok(OracleReport {
            verification: verify_decomposition(bm, &d),
            min_sum: res.min_sum,
            admissible: res.admissible,
            pareto_set: res.pareto_set.clone(),
            witnesses: res.witnesses.iter().map(|w| w.to_row_strings()).collect(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StageKindName {
    Switch,
    Ram,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageReport {
    pub kind: StageKindName,
    pub matrix: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub switches: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub banks: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitReport {
    pub m: usize,
    pub n: usize,
    /// In dataflow order.
    pub stages: Vec<StageReport>,
    pub total_switches: u64,
}

impl CircuitReport {
    pub fn new(spec: &CircuitSpec) -> Self {
        let stage = |kind, m: &Matrix<Gf2>, switches, banks| StageReport {
            kind,
            matrix: m.to_row_strings(),
            switches,
            banks,
        };
        CircuitReport {
            m: spec.m,
            n: spec.n,
            stages: vec![
                stage(StageKindName::Switch, &spec.pre_stage, Some(spec.pre_switches), None),
                stage(StageKindName::Ram, &spec.ram_stage, None, Some(spec.ram_banks)),
                stage(StageKindName::Switch, &spec.post_stage, Some(spec.post_switches), None),
            ],
            total_switches: spec.total_switches(),
        }
    }

    /// Rebuilds and revalidates the circuit. Resource counts are derived
    /// from the stage matrices, not read from the report.
    pub fn to_spec(&self) -> Result<CircuitSpec> {
        let kinds: Vec<StageKindName> = self.stages.iter().map(|s| s.kind).collect();
        if kinds != [StageKindName::Switch, StageKindName::Ram, StageKindName::Switch] {
            return Err(Error::StageNotStreamable("expected stages switch, ram, switch".into()));
        }
        let k = self.m + self.n;
        let mats = self
            .stages
            .iter()
            .map(|s| {
                if s.matrix.len() != k {
                    return Err(Error::StageNotStreamable(format!(
                        "stage has {} rows, expected {k}",
                        s.matrix.len()
                    )));
                }
                Matrix::from_row_strings(Gf2, k, &s.matrix)
            })
            .collect::<Result<Vec<_>>>()?;
        let [pre, ram, post]: [Matrix<Gf2>; 3] = mats.try_into().expect("three stages");
        CircuitSpec::from_stages(self.m, self.n, pre, ram, post)
    }
}
