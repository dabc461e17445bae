//! Seeded randomized instance generation, hypothesis-filtered sweeps, and
//! violation hunting over the asserted inequalities.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::hilbert::default_window;
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;
use crate::sally::{CheckStatus, SallyProfile};
use crate::{Error, Result};

/// Name of the pinned generator, recorded in every report header.
pub const RNG_ALGORITHM: &str = "splitmix64";

/// SplitMix64: the 64-bit mixer of Steele, Lea and Flood. Fixed here so
/// that identical configurations produce byte-identical reports across
/// builds and platforms. Range reduction is by plain modulo, which is part
/// of the pinned contract.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw from the inclusive range `[lo, hi]`.
    pub fn range(&mut self, lo: u64, hi: u64) -> u64 {
        debug_assert!(lo <= hi);
        lo + self.next_u64() % (hi - lo + 1)
    }
}

fn scramble(x: u64) -> u64 {
    SplitMix64::new(x).next_u64()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    /// Keep reductions with I^2 != QI, I^3 = QI^2 and m I^2 in QI; every
    /// asserted inequality and range must hold, so any violation is a
    /// headline result.
    Hypotheses,
    /// Keep reductions with I^3 = QI^2 but m I^2 not in QI, and test the
    /// main inequality anyway. Violations here answer an open question and
    /// are reported, not guaranteed absent.
    NoMCondition,
    /// Keep every generated instance and check only the universally valid
    /// properties.
    All,
}

impl std::str::FromStr for SearchMode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "hypotheses" => Ok(SearchMode::Hypotheses),
            "no-m-condition" | "no_m_condition" => Ok(SearchMode::NoMCondition),
            "all" => Ok(SearchMode::All),
            other => Err(format!("unknown mode '{other}'")),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchConfig {
    pub dim: usize,
    /// Largest pure-power exponent drawn for the parameter ideal.
    pub box_max: u32,
    pub extra_min: usize,
    pub extra_max: usize,
    pub samples: u64,
    pub seed: u64,
    pub mode: SearchMode,
    /// Hilbert window; defaults to `2d + 6` when absent.
    pub window: Option<usize>,
}

impl SearchConfig {
    pub fn window(&self) -> usize {
        self.window.unwrap_or_else(|| default_window(self.dim))
    }

    pub fn validate(&self) -> std::result::Result<(), String> {
        if !(1..=4).contains(&self.dim) {
            return Err("dimension must be between 1 and 4".into());
        }
        if self.box_max < 2 || self.box_max > 64 {
            return Err("box must be between 2 and 64".into());
        }
        if self.extra_min > self.extra_max {
            return Err("extra generator range is empty".into());
        }
        Ok(())
    }
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            dim: 2,
            box_max: 12,
            extra_min: 1,
            extra_max: 4,
            samples: 1000,
            seed: 0,
            mode: SearchMode::Hypotheses,
            window: None,
        }
    }
}

/// The raw draw behind one instance, kept so violations can be reproduced
/// verbatim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceDraw {
    pub dim: usize,
    pub q: Vec<Vec<u32>>,
    pub extra: Vec<Vec<u32>>,
}

/// Deterministic instance generation: `Q` is generated by `d` pure powers
/// with exponents in `[2, box]`, and `I` adds a drawn number of monomials
/// strictly inside the box. A pure function of `(seed, index)`.
pub fn random_instance(
    config: &SearchConfig,
    index: u64,
) -> (MonomialIdeal, MonomialIdeal, InstanceDraw) {
    let mut rng = SplitMix64::new(config.seed ^ scramble(index.wrapping_add(1)));
    let d = config.dim;
    let mut q_exps: Vec<Vec<u32>> = Vec::with_capacity(d);
    for var in 0..d {
        let e = rng.range(2, config.box_max as u64) as u32;
        let mut v = vec![0u32; d];
        v[var] = e;
        q_exps.push(v);
    }
    let count = rng.range(config.extra_min as u64, config.extra_max as u64) as usize;
    let mut extra: Vec<Vec<u32>> = Vec::with_capacity(count);
    for _ in 0..count {
        let v: Vec<u32> = (0..d)
            .map(|var| {
                let cap = q_exps[var][var] - 1;
                rng.range(1, cap as u64) as u32
            })
            .collect();
        extra.push(v);
    }
    let q = MonomialIdeal::new(d, q_exps.iter().map(|e| Monomial::new(e.clone())))
        .expect("well-dimensioned");
    let mut gens = q_exps.clone();
    gens.extend(extra.iter().cloned());
    let i = MonomialIdeal::new(d, gens.into_iter().map(Monomial::new)).expect("well-dimensioned");
    let draw = InstanceDraw {
        dim: d,
        q: q_exps,
        extra,
    };
    (q, i, draw)
}

/// A recorded failure, serialized with the full instance so it can be
/// replayed.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ViolationRecord {
    pub index: u64,
    pub instance: InstanceDraw,
    pub check: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct SearchReport {
    pub rng: String,
    pub config: Option<SearchConfig>,
    pub processed: u64,
    /// Instances that entered the full analysis for the chosen mode.
    pub admitted: u64,
    pub skips: BTreeMap<String, u64>,
    pub tag_counts: BTreeMap<String, u64>,
    /// Keyed by "rank=_ m=_ s1=_ s2=_" for hypothesis instances.
    pub histogram: BTreeMap<String, u64>,
    pub violations: Vec<ViolationRecord>,
}

impl SearchReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

enum Outcome {
    Admitted {
        tag: Option<String>,
        histogram_key: Option<String>,
        violations: Vec<(String, String)>,
    },
    Skipped(&'static str),
}

fn skip_reason(err: &Error) -> &'static str {
    match err {
        Error::InsufficientWindow { .. } => "insufficient-window",
        Error::BudgetExceeded { .. } => "budget-exceeded",
        _ => "analysis-error",
    }
}

fn run_instance(config: &SearchConfig, index: u64) -> (u64, Outcome, InstanceDraw) {
    let (q, i, draw) = random_instance(config, index);
    let outcome = match evaluate(config, &q, &i) {
        Ok(o) => o,
        Err(e) => Outcome::Skipped(skip_reason(&e)),
    };
    (index, outcome, draw)
}

fn evaluate(config: &SearchConfig, q: &MonomialIdeal, i: &MonomialIdeal) -> Result<Outcome> {
    let reduction = crate::closure::is_reduction(q, i)?;
    match config.mode {
        SearchMode::Hypotheses | SearchMode::NoMCondition => {
            if !reduction {
                return Ok(Outcome::Skipped("not-a-reduction"));
            }
            let i2 = i.power(2);
            let i3 = i2.product(i)?;
            let qi = q.product(i)?;
            let qi2 = q.product(&i2)?;
            let square = i2.equals(&qi)?;
            let cube = i3.equals(&qi2)?;
            let m_cond = qi.contains(&MonomialIdeal::maximal(i.dim()).product(&i2)?)?;
            match config.mode {
                SearchMode::Hypotheses => {
                    if square {
                        return Ok(Outcome::Skipped("i2-eq-qi"));
                    }
                    if !(cube && m_cond) {
                        return Ok(Outcome::Skipped("hypotheses-not-met"));
                    }
                }
                SearchMode::NoMCondition => {
                    if !cube {
                        return Ok(Outcome::Skipped("i3-ne-qi2"));
                    }
                    if m_cond {
                        return Ok(Outcome::Skipped("m-condition-held"));
                    }
                }
                SearchMode::All => unreachable!(),
            }
        }
        SearchMode::All => {}
    }

    let profile = SallyProfile::analyze(i, q, config.window(), None)?;
    let violations: Vec<(String, String)> = profile
        .checks
        .iter()
        .filter(|c| c.status == CheckStatus::Fail)
        .map(|c| {
            let name = if config.mode == SearchMode::NoMCondition && c.name == "main-inequality" {
                "main-inequality-without-m-condition".to_string()
            } else {
                c.name.clone()
            };
            (name, c.detail.clone())
        })
        .collect();
    let tag = profile.classification.as_ref().map(|c| c.tag());
    let histogram_key = match (profile.rank, profile.m_inv, profile.s1(), profile.s2()) {
        (Some(rank), Some(m), Some(s1), Some(s2)) => {
            Some(format!("rank={rank} m={m} s1={s1} s2={s2}"))
        }
        _ => None,
    };
    Ok(Outcome::Admitted {
        tag,
        histogram_key,
        violations,
    })
}

/// Run the whole sweep. Instances are independent and evaluated in
/// parallel; the aggregation is performed in index order, so two sweeps
/// with the same configuration produce byte-identical reports.
pub fn sweep(config: &SearchConfig) -> SearchReport {
    let mut results: Vec<(u64, Outcome, InstanceDraw)> = (0..config.samples)
        .into_par_iter()
        .map(|index| run_instance(config, index))
        .collect();
    results.sort_by_key(|(index, _, _)| *index);

    let mut report = SearchReport {
        rng: RNG_ALGORITHM.to_string(),
        config: Some(config.clone()),
        ..SearchReport::default()
    };
    for (index, outcome, draw) in results {
        report.processed += 1;
        match outcome {
            Outcome::Skipped(reason) => {
                *report.skips.entry(reason.to_string()).or_insert(0) += 1;
            }
            Outcome::Admitted {
                tag,
                histogram_key,
                violations,
            } => {
                report.admitted += 1;
                if let Some(tag) = tag {
                    *report.tag_counts.entry(tag).or_insert(0) += 1;
                }
                if let Some(key) = histogram_key {
                    *report.histogram.entry(key).or_insert(0) += 1;
                }
                for (check, detail) in violations {
                    report.violations.push(ViolationRecord {
                        index,
                        instance: draw.clone(),
                        check,
                        detail,
                    });
                }
            }
        }
    }
    report
}
