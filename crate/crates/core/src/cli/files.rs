//! JSON parameter and report files. Rationals are strings `"p/q"`.

use serde::{Deserialize, Serialize};

use crate::admissibility::{AdmissibilityReport, GroundRingInstance, Verdict};
use crate::error::{Error, Result};
use crate::exact::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ParamsFile {
    pub r: usize,
    pub u: Vec<Rational>,
    pub q: Rational,
    pub rho: Rational,
    pub delta: Vec<Rational>,
    pub max_a: usize,
    pub neg_depth: usize,
}

impl ParamsFile {
    pub fn from_instance(instance: &GroundRingInstance) -> Self {
        ParamsFile {
            r: instance.rank(),
            u: instance.u().to_vec(),
            q: instance.q().clone(),
            rho: instance.rho().clone(),
            delta: instance.deltas().to_vec(),
            max_a: instance.max_a(),
            neg_depth: instance.neg_depth(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let file: ParamsFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("parameter file: {e}")))?;
        file.validate()?;
        Ok(file)
    }

    pub fn validate(&self) -> Result<()> {
        if self.u.len() != self.r {
            return Err(Error::Parse(format!(
                "parameter file: r = {} but {} values of u",
                self.r,
                self.u.len()
            )));
        }
        if self.delta.len() != self.max_a + 1 {
            return Err(Error::Parse(format!(
                "parameter file: maxA = {} but {} deltas",
                self.max_a,
                self.delta.len()
            )));
        }
        if self.neg_depth > self.max_a {
            return Err(Error::Parse(format!(
                "parameter file: negDepth = {} exceeds maxA = {}",
                self.neg_depth, self.max_a
            )));
        }
        Ok(())
    }

    /// Instance truncated to `max_a` with negative deltas to `neg_depth`.
    pub fn to_instance(&self, max_a: usize, neg_depth: usize) -> Result<GroundRingInstance> {
        if max_a > self.max_a {
            return Err(Error::OutOfRange(format!(
                "requested truncation {max_a} exceeds the file's maxA = {}",
                self.max_a
            )));
        }
        GroundRingInstance::new(
            self.r,
            self.u.clone(),
            self.rho.clone(),
            self.q.clone(),
            self.delta[..=max_a].to_vec(),
            neg_depth,
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("parameter file serializes")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PassFail {
    Pass,
    Fail,
}

impl From<&Verdict> for PassFail {
    fn from(v: &Verdict) -> Self {
        if v.passed() {
            PassFail::Pass
        } else {
            PassFail::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Verdicts {
    pub ground_ring: PassFail,
    pub weak: PassFail,
    pub wilcox_yu: PassFail,
    pub u_admissible: PassFail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureEntry {
    pub condition: String,
    pub index: i64,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ReportFile {
    pub verdicts: Verdicts,
    pub failures: Vec<FailureEntry>,
    /// Positive indices are certified up to this truncation only.
    pub truncation: usize,
    pub neg_depth: usize,
    pub timing_ms: u64,
}

impl ReportFile {
    pub fn new(report: &AdmissibilityReport, timing_ms: u64) -> Self {
        let failures = [
            &report.ground_ring,
            &report.weak,
            &report.wilcox_yu,
            &report.u_admissible,
        ]
        .into_iter()
        .flat_map(|v| &v.failures)
        .map(|f| FailureEntry {
            condition: f.condition.name().to_string(),
            index: f.index,
            lhs: f.lhs.to_string(),
            rhs: f.rhs.to_string(),
        })
        .collect();
        ReportFile {
            verdicts: Verdicts {
                ground_ring: (&report.ground_ring).into(),
                weak: (&report.weak).into(),
                wilcox_yu: (&report.wilcox_yu).into(),
                u_admissible: (&report.u_admissible).into(),
            },
            failures,
            truncation: report.truncation,
            neg_depth: report.neg_depth,
            timing_ms,
        }
    }

    pub fn all_passed(&self) -> bool {
        let v = &self.verdicts;
        [v.ground_ring, v.weak, v.wilcox_yu, v.u_admissible]
            .iter()
            .all(|p| *p == PassFail::Pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
