//! Text formats for sample sets: a `# {json}` header line followed by
//! `l,t,re,im` rows.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::plan::{PlanLimits, SamplingPlan};
use crate::sampler::{NoiseModel, Sample, SampleSet};

/// The parameters that determine a plan; the window weights are rebuilt.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanDescriptor {
    pub bandwidth: f64,
    pub resolution: f64,
    pub order: u32,
    pub energy_offset: f64,
    pub total_samples: u64,
}

impl PlanDescriptor {
    pub fn of(plan: &SamplingPlan) -> Self {
        Self {
            bandwidth: plan.bandwidth(),
            resolution: plan.resolution(),
            order: plan.order(),
            energy_offset: plan.energy_offset(),
            total_samples: plan.total_samples(),
        }
    }

    pub fn rebuild(&self) -> Result<SamplingPlan> {
        let limits = PlanLimits {
            force: true,
            ..PlanLimits::default()
        };
        let plan = SamplingPlan::custom(self.bandwidth, self.resolution, self.order, self.energy_offset, limits)?;
        if plan.total_samples() != self.total_samples {
            return Err(Error::Format(format!(
                "plan rebuilds with N = {}, header says {}",
                plan.total_samples(),
                self.total_samples
            )));
        }
        Ok(plan)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleHeader {
    pub plan: PlanDescriptor,
    pub noise: NoiseModel,
    pub seed: u64,
    pub dimension: usize,
    pub spins: usize,
    /// Free-form provenance (config hash and the like).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<serde_json::Value>,
}

pub fn samples_to_csv(set: &SampleSet, meta: Option<serde_json::Value>) -> String {
    let header = SampleHeader {
        plan: PlanDescriptor::of(&set.plan),
        noise: set.noise,
        seed: set.seed,
        dimension: set.dimension,
        spins: set.spins,
        meta,
    };
    let mut out = format!("# {}\n", serde_json::to_string(&header).expect("header serializes"));
    out.push_str("l,t,re,im\n");
    for s in &set.samples {
        // `{:?}` prints the shortest representation that round-trips.
        out.push_str(&format!("{},{:?},{:?},{:?}\n", s.l, s.t, s.g.re, s.g.im));
    }
    out
}

pub fn samples_from_csv(text: &str) -> Result<(SampleSet, SampleHeader)> {
    let mut lines = text.lines();
    let first = lines.next().ok_or_else(|| Error::Format("empty sample file".into()))?;
    let json = first
        .strip_prefix('#')
        .ok_or_else(|| Error::Format("first line must be `# {json header}`".into()))?;
    let header: SampleHeader =
        serde_json::from_str(json.trim()).map_err(|e| Error::Format(format!("sample header: {e}")))?;
    match lines.next().map(str::trim) {
        Some("l,t,re,im") => {}
        other => return Err(Error::Format(format!("expected column line `l,t,re,im`, got {other:?}"))),
    }
    let mut samples = Vec::new();
    for (row, line) in lines.enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(Error::Format(format!("row {}: expected 4 fields, got {}", row + 1, fields.len())));
        }
        let bad = |what: &str| Error::Format(format!("row {}: bad {what} `{line}`", row + 1));
        let l: usize = fields[0].trim().parse().map_err(|_| bad("index"))?;
        let t: f64 = fields[1].trim().parse().map_err(|_| bad("time"))?;
        let re: f64 = fields[2].trim().parse().map_err(|_| bad("real part"))?;
        let im: f64 = fields[3].trim().parse().map_err(|_| bad("imaginary part"))?;
        samples.push(Sample {
            l,
            t,
            g: Complex64::new(re, im),
        });
    }
    samples.sort_by_key(|s| s.l);
    let set = SampleSet {
        plan: header.plan.rebuild()?,
        samples,
        noise: header.noise,
        seed: header.seed,
        dimension: header.dimension,
        spins: header.spins,
    };
    Ok((set, header))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plan::{plan_for_spectrum, ErrorBudget};
    use crate::sampler::sample_series;
    use crate::spectrum::Spectrum;

    #[test]
    fn round_trip_is_exact() {
        let s = Spectrum::from_levels(&[(0.0, 1), (0.7, 2), (2.1, 1)], 2).unwrap();
        let b = ErrorBudget::new(2, 1.0, 0.2, 0.1).unwrap();
        let p = plan_for_spectrum(&b, s.bandwidth(), PlanLimits::default()).unwrap();
        let set = sample_series(&s, &p, NoiseModel::Shots { repetitions: 7 }, 42).unwrap();
        let text = samples_to_csv(&set, Some(serde_json::json!({"config_sha256": "abc"})));
        let (back, header) = samples_from_csv(&text).unwrap();
        assert_eq!(back, set);
        assert_eq!(header.meta.unwrap()["config_sha256"], "abc");
    }

    #[test]
    fn malformed_input_rejected() {
        assert!(samples_from_csv("").is_err());
        assert!(samples_from_csv("l,t,re,im\n0,0,1,0\n").is_err());
        let s = Spectrum::from_levels(&[(0.0, 1), (1.0, 1)], 1).unwrap();
        let b = ErrorBudget::new(1, 1.0, 0.2, 0.1).unwrap();
        let p = plan_for_spectrum(&b, 1.0, PlanLimits::default()).unwrap();
        let set = sample_series(&s, &p, NoiseModel::Exact, 1).unwrap();
        let text = samples_to_csv(&set, None).replacen("0,0.0,1.0,0.0", "0,0.0,x,0.0", 1);
        assert!(samples_from_csv(&text).is_err());
    }
}
