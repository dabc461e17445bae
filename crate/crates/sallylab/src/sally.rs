//! Sally-module length data, hypothesis flags, the rank and m invariants,
//! inequality checks, and the classification of numerical profiles with
//! their predicted closed forms.

use std::fmt;

use crate::closure::{is_integrally_closed, is_reduction, ratliff_rush, RATLIFF_RUSH_DEFAULT_BUDGET};
use crate::hilbert::{
    binom, binom_nat, binomial_fit, hilbert_function, is_parameter_ideal, HilbertCoefficients,
    HilbertFunctionTable,
};
use crate::ideal::{quotient_length, MonomialIdeal};
use crate::{Error, Result};

/// The ideal-theoretic conditions attached to a pair (I, Q).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisFlags {
    pub is_reduction: bool,
    /// I^2 = QI
    pub square_reduced: bool,
    /// I^3 = QI^2
    pub cube_reduced: bool,
    /// m I^2 is contained in QI
    pub m_i2_in_qi: bool,
    pub integrally_closed: bool,
    /// Only meaningful (and only computed) in dimension two.
    pub ratliff_rush_closed: Option<bool>,
}

impl HypothesisFlags {
    /// The standing hypotheses of the classified regime: a reduction with
    /// I^3 = QI^2 and m I^2 in QI.
    pub fn lemma_hypotheses(&self) -> bool {
        self.is_reduction && self.cube_reduced && self.m_i2_in_qi
    }
}

/// Compute every flag for the pair (I, Q).
pub fn check_hypotheses(i: &MonomialIdeal, q: &MonomialIdeal) -> Result<HypothesisFlags> {
    if i.dim() != q.dim() {
        return Err(Error::MixedDimension {
            expected: i.dim(),
            found: q.dim(),
        });
    }
    i.pure_power_box()?;
    q.pure_power_box()?;
    let i2 = i.power(2);
    let i3 = i2.product(i)?;
    let qi = q.product(i)?;
    let qi2 = q.product(&i2)?;
    let mi2 = MonomialIdeal::maximal(i.dim()).product(&i2)?;
    let ratliff_rush_closed = if i.dim() == 2 {
        let rr = ratliff_rush(i, RATLIFF_RUSH_DEFAULT_BUDGET)?;
        Some(rr.ideal.equals(i)?)
    } else {
        None
    };
    Ok(HypothesisFlags {
        is_reduction: is_reduction(q, i)?,
        square_reduced: i2.equals(&qi)?,
        cube_reduced: i3.equals(&qi2)?,
        m_i2_in_qi: qi.contains(&mi2)?,
        integrally_closed: is_integrally_closed(i)?,
        ratliff_rush_closed,
    })
}

/// Graded lengths of the Sally module: `s_n = len(I^(n+1) / I Q^n)` for
/// `1 <= n <= n_max`.
pub fn sally_lengths(i: &MonomialIdeal, q: &MonomialIdeal, n_max: usize) -> Result<Vec<u64>> {
    if !is_reduction(q, i)? {
        return Err(Error::NotAReduction);
    }
    if !is_parameter_ideal(q) {
        return Err(Error::NotParameterIdeal);
    }
    if n_max < 2 {
        return Err(Error::InsufficientWindow {
            needed: 2,
            have: n_max,
        });
    }
    let mut s = Vec::with_capacity(n_max);
    let mut ipow = i.power(2);
    let mut qpow = q.clone();
    for n in 1..=n_max {
        let iqn = i.product(&qpow)?;
        s.push(quotient_length(&iqn, &ipow)?);
        if n < n_max {
            ipow = ipow.product(i)?;
            qpow = qpow.product(q)?;
        }
    }
    Ok(s)
}

/// The Sally-module rank `l = e_1 - e_0 + len(A/I)`. A negative value
/// violates the Northcott bound and signals an upstream bug.
pub fn sally_rank(e: &HilbertCoefficients, len_a_i: u64) -> Result<u64> {
    let rank = e.e(1) - e.e(0) + len_a_i as i128;
    if rank < 0 {
        return Err(Error::NegativeRank { rank });
    }
    Ok(rank as u64)
}

/// The shift invariant `m = len(A/I) - e_0 + e_1 - e_2 - 1`, asserted to
/// lie in `[-1, l - 1]`. A range violation is either a bug or a genuine
/// counterexample and is reported loudly, never swallowed.
pub fn m_invariant(e: &HilbertCoefficients, len_a_i: u64) -> Result<i128> {
    if e.dim < 2 {
        return Err(Error::HypothesisViolated);
    }
    let m = raw_m_invariant(e, len_a_i);
    let rank = e.e(1) - e.e(0) + len_a_i as i128;
    if m < -1 || m > rank - 1 {
        return Err(Error::RangeViolation {
            what: format!("m = {m} outside [-1, {}]", rank - 1),
        });
    }
    Ok(m)
}

pub(crate) fn raw_m_invariant(e: &HilbertCoefficients, len_a_i: u64) -> i128 {
    len_a_i as i128 - e.e(0) + e.e(1) - e.e(2) - 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subcase {
    I,
    II,
}

/// The classification tags, in decision order. The two `s_1`-specific
/// families take precedence over the generic `m = 0` tag: an instance with
/// `s_1` equal to 3 or 4 either matches one of their resolution patterns
/// or stays unclassified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    /// I^2 = QI: the Sally module vanishes.
    Zero,
    /// m = -1: the Sally module is free of rank `rank` generated in
    /// degree one.
    Free { rank: u64 },
    /// m = 0 with s_1 outside {3, 4}: free part of rank `rank - 1` plus an
    /// ideal generated by `c` variables.
    NearFree { rank: u64, c: u64 },
    /// s_1 = 3 and s_2 < 3d.
    S1Three { rank: u64, subcase: Subcase },
    /// d = 2, s_1 = 4 and s_2 < 8.
    S1FourD2 { rank: u64, subcase: Subcase },
    Unclassified,
}

impl Classification {
    pub fn tag(&self) -> String {
        match self {
            Classification::Zero => "ZERO".into(),
            Classification::Free { .. } => "FREE".into(),
            Classification::NearFree { .. } => "NEAR_FREE".into(),
            Classification::S1Three { subcase, .. } => match subcase {
                Subcase::I => "S1_3(i)".into(),
                Subcase::II => "S1_3(ii)".into(),
            },
            Classification::S1FourD2 { subcase, .. } => match subcase {
                Subcase::I => "S1_4_D2(i)".into(),
                Subcase::II => "S1_4_D2(ii)".into(),
            },
            Classification::Unclassified => "UNCLASSIFIED".into(),
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag())
    }
}

/// Predicted depth of the associated graded ring. This is metadata carried
/// along from the classification; the toolkit never computes a free
/// resolution, so depth predictions are excluded from pass/fail checking.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DepthPrediction {
    CohenMacaulay,
    AtLeast(usize),
    Exact(usize),
    Unknown,
}

impl fmt::Display for DepthPrediction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DepthPrediction::CohenMacaulay => write!(f, "Cohen-Macaulay"),
            DepthPrediction::AtLeast(k) => write!(f, ">= {k}"),
            DepthPrediction::Exact(k) => write!(f, "= {k}"),
            DepthPrediction::Unknown => write!(f, "unknown"),
        }
    }
}

pub fn predicted_depth(class: &Classification, dim: usize) -> DepthPrediction {
    match class {
        Classification::Zero => DepthPrediction::CohenMacaulay,
        Classification::Free { .. } => DepthPrediction::AtLeast(dim - 1),
        Classification::NearFree { c, .. } => DepthPrediction::Exact(dim - *c as usize),
        Classification::S1Three { subcase, .. } => match subcase {
            Subcase::I => DepthPrediction::Exact(dim - 2),
            Subcase::II => DepthPrediction::Exact(dim - 3),
        },
        Classification::S1FourD2 { .. } => DepthPrediction::Exact(0),
        Classification::Unclassified => DepthPrediction::Unknown,
    }
}

/// Inputs for the classification decision.
#[derive(Clone, Debug)]
pub struct ClassifyInput<'a> {
    pub dim: usize,
    pub flags: &'a HypothesisFlags,
    pub rank: u64,
    /// None exactly when I^2 = QI.
    pub m_inv: Option<i128>,
    pub s1: u64,
    pub s2: u64,
}

/// Decide the classification tag. Errors with `HypothesisViolated` when
/// called outside the I^3 = QI^2, m I^2 in QI regime (except for the ZERO
/// tag) and with `RangeViolation` when one of the asserted numerical
/// constraints fails, which is either a bug or a counterexample.
pub fn classify(input: &ClassifyInput) -> Result<Classification> {
    let d = input.dim;
    if input.flags.square_reduced {
        return Ok(Classification::Zero);
    }
    if d < 2 || !input.flags.lemma_hypotheses() {
        return Err(Error::HypothesisViolated);
    }
    let m = input.m_inv.ok_or(Error::HypothesisViolated)?;
    if m == -1 {
        return Ok(Classification::Free { rank: input.rank });
    }
    let (s1, s2) = (input.s1, input.s2);
    if s1 == 3 {
        if s2 >= 3 * d as u64 {
            return Ok(Classification::Unclassified);
        }
        return if s2 == 3 * d as u64 - 1 {
            Ok(Classification::S1Three {
                rank: input.rank,
                subcase: Subcase::I,
            })
        } else if s2 == 3 * d as u64 - 3 {
            if d < 3 {
                Err(Error::RangeViolation {
                    what: format!("s_1 = 3 with s_2 = {s2} requires d >= 3, got d = {d}"),
                })
            } else {
                Ok(Classification::S1Three {
                    rank: input.rank,
                    subcase: Subcase::II,
                })
            }
        } else {
            Err(Error::RangeViolation {
                what: format!("s_1 = 3, s_2 = {s2} below 3d but not 3d-1 or 3d-3"),
            })
        };
    }
    if s1 == 4 {
        if d != 2 || s2 >= 8 {
            return Ok(Classification::Unclassified);
        }
        return match s2 {
            7 => Ok(Classification::S1FourD2 {
                rank: input.rank,
                subcase: Subcase::I,
            }),
            6 => Ok(Classification::S1FourD2 {
                rank: input.rank,
                subcase: Subcase::II,
            }),
            _ => Err(Error::RangeViolation {
                what: format!("d = 2, s_1 = 4, s_2 = {s2} below 8 but not 6 or 7"),
            }),
        };
    }
    if m == 0 {
        let c = input.s1 as i128 - input.rank as i128 + 1;
        if c < 2 || c > d as i128 {
            return Err(Error::RangeViolation {
                what: format!("c = s_1 - rank + 1 = {c} outside [2, {d}]"),
            });
        }
        return Ok(Classification::NearFree {
            rank: input.rank,
            c: c as u64,
        });
    }
    Ok(Classification::Unclassified)
}

/// A predicted Hilbert polynomial in the binomial-basis sign convention,
/// valid from index `from` on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForm {
    pub e: Vec<i128>,
    pub from: usize,
}

impl ClosedForm {
    pub fn eval(&self, dim: usize, n: u64) -> i128 {
        crate::hilbert::eval_binomial_poly(&self.e, dim, n)
    }
}

/// The closed form attached to a classification, if any. The leading two
/// coefficients come from the fitted table; the classification supplies
/// the tail and the validity range.
pub fn predicted_closed_form(
    class: &Classification,
    dim: usize,
    e0: i128,
    e1: i128,
    len_a_i: u64,
) -> Option<ClosedForm> {
    let mut e = vec![0i128; dim + 1];
    e[0] = e0;
    e[1] = e1;
    match class {
        Classification::Zero => {
            e[1] = e0 - len_a_i as i128;
            Some(ClosedForm { e, from: 0 })
        }
        Classification::Free { rank } => {
            e[2] = *rank as i128;
            Some(ClosedForm { e, from: 0 })
        }
        Classification::NearFree { rank, c } => {
            e[2] = *rank as i128 - 1;
            let c = *c as usize;
            if c < dim {
                // The extra term C(n+d-c-1, d-c-1) sits at basis index c+1
                // with alternating sign.
                e[c + 1] = if (c + 1) % 2 == 0 { 1 } else { -1 };
                Some(ClosedForm { e, from: 0 })
            } else {
                Some(ClosedForm { e, from: 1 })
            }
        }
        Classification::S1Three { subcase, .. } => match subcase {
            Subcase::I => {
                e[2] = 1;
                if dim >= 3 {
                    e[3] = -1;
                    Some(ClosedForm { e, from: 0 })
                } else {
                    Some(ClosedForm { e, from: 1 })
                }
            }
            Subcase::II => {
                if dim >= 4 {
                    e[4] = 1;
                    Some(ClosedForm { e, from: 0 })
                } else {
                    Some(ClosedForm { e, from: 1 })
                }
            }
        },
        Classification::S1FourD2 { subcase, .. } => {
            e[2] = match subcase {
                Subcase::I => 2,
                Subcase::II => 0,
            };
            Some(ClosedForm { e, from: 1 })
        }
        Classification::Unclassified => None,
    }
}

/// The predicted Sally length `s_n` for `n >= 1`, read off the graded free
/// resolution attached to the classification. Each summand `B(-a)`
/// contributes `C(n - a + d - 1, d - 1)` with the combinatorial convention
/// that empty graded pieces count zero.
pub fn predicted_sally_length(class: &Classification, dim: usize, n: u64) -> Option<i128> {
    let d = dim as i64;
    let n = n as i128;
    let piece = |shift: i128| binom_nat(n - shift + d as i128 - 1, d - 1);
    match class {
        Classification::Zero => Some(0),
        Classification::Free { rank } => {
            Some(*rank as i128 * (piece(0) - binom_nat(n + d as i128 - 2, d - 2)))
        }
        Classification::NearFree { rank, c } => {
            let ideal_part =
                piece(0) - binom_nat(n + d as i128 - *c as i128 - 1, d - *c as i64 - 1);
            Some((*rank as i128 - 1) * piece(1) + ideal_part)
        }
        Classification::S1Three { subcase, .. } => match subcase {
            Subcase::I => Some(3 * piece(1) - piece(2)),
            Subcase::II => Some(3 * piece(1) - 3 * piece(2) + piece(3)),
        },
        Classification::S1FourD2 { subcase, .. } => match subcase {
            Subcase::I => Some(4 * piece(1) - piece(2)),
            Subcase::II => Some(4 * piece(1) - 2 * piece(2)),
        },
        Classification::Unclassified => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckStatus::Pass => write!(f, "PASS"),
            CheckStatus::Fail => write!(f, "FAIL"),
            CheckStatus::Skip => write!(f, "SKIP"),
        }
    }
}

/// Outcome of one named assertion on a profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

impl CheckOutcome {
    pub fn pass(name: &str, detail: String) -> Self {
        CheckOutcome {
            name: name.into(),
            status: CheckStatus::Pass,
            detail,
        }
    }
    pub fn fail(name: &str, detail: String) -> Self {
        CheckOutcome {
            name: name.into(),
            status: CheckStatus::Fail,
            detail,
        }
    }
    pub fn skip(name: &str, detail: String) -> Self {
        CheckOutcome {
            name: name.into(),
            status: CheckStatus::Skip,
            detail,
        }
    }
    fn verdict(name: &str, ok: bool, detail: String) -> Self {
        if ok {
            Self::pass(name, detail)
        } else {
            Self::fail(name, detail)
        }
    }
}

/// The complete numerical profile of a pair (I, Q).
#[derive(Clone, Debug)]
pub struct SallyProfile {
    pub label: Option<String>,
    pub dim: usize,
    pub ideal: MonomialIdeal,
    pub reduction: MonomialIdeal,
    pub window: usize,
    pub flags: HypothesisFlags,
    pub table: HilbertFunctionTable,
    pub coefficients: HilbertCoefficients,
    pub len_a_i: u64,
    /// `s_1 ..= s_window`; absent when Q is not a reduction.
    pub s: Option<Vec<u64>>,
    pub rank: Option<u64>,
    pub m_inv: Option<i128>,
    pub classification: Option<Classification>,
    pub predicted_depth: Option<DepthPrediction>,
    pub closed_form: Option<ClosedForm>,
    pub checks: Vec<CheckOutcome>,
}

impl SallyProfile {
    /// Compute the full profile. Dimension mismatches, non-m-primary
    /// inputs, fit failures and closure budget exhaustion abort with an
    /// error; the numerical assertions are recorded as check outcomes
    /// instead, so violations are reported in full rather than thrown.
    pub fn analyze(
        ideal: &MonomialIdeal,
        reduction: &MonomialIdeal,
        window: usize,
        label: Option<String>,
    ) -> Result<SallyProfile> {
        let dim = ideal.dim();
        let flags = check_hypotheses(ideal, reduction)?;
        let table = hilbert_function(ideal, window)?;
        let coefficients = binomial_fit(&table, dim)?;
        let len_a_i = table.value(0);

        let mut profile = SallyProfile {
            label,
            dim,
            ideal: ideal.clone(),
            reduction: reduction.clone(),
            window,
            flags,
            table,
            coefficients,
            len_a_i,
            s: None,
            rank: None,
            m_inv: None,
            classification: None,
            predicted_depth: None,
            closed_form: None,
            checks: Vec::new(),
        };

        profile.run_table_checks();

        if profile.flags.is_reduction {
            profile.s = Some(sally_lengths(ideal, reduction, window)?);
            match sally_rank(&profile.coefficients, len_a_i) {
                Ok(rank) => {
                    profile.rank = Some(rank);
                    profile
                        .checks
                        .push(CheckOutcome::pass("rank-nonnegative", format!("rank = {rank}")));
                }
                Err(Error::NegativeRank { rank }) => {
                    profile
                        .checks
                        .push(CheckOutcome::fail("rank-nonnegative", format!("rank = {rank}")));
                }
                Err(e) => return Err(e),
            }
            profile.run_reduction_checks()?;
        } else {
            profile.checks.push(CheckOutcome::skip(
                "identity",
                "Q is not a reduction of I".into(),
            ));
        }

        profile.compute_m_invariant();
        profile.compute_classification();
        profile.checks.extend(verify_closed_form_checks(&profile));
        profile.checks.extend(check_inequalities(&profile));
        Ok(profile)
    }

    /// All recorded assertions hold.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn failures(&self) -> Vec<&CheckOutcome> {
        self.checks
            .iter()
            .filter(|c| c.status == CheckStatus::Fail)
            .collect()
    }

    pub fn s1(&self) -> Option<u64> {
        self.s.as_ref().and_then(|s| s.first().copied())
    }

    pub fn s2(&self) -> Option<u64> {
        self.s.as_ref().and_then(|s| s.get(1).copied())
    }

    fn e(&self, i: usize) -> i128 {
        self.coefficients.e(i)
    }

    /// The d-th finite difference of the table must equal e_0 on the
    /// stable tail.
    fn run_table_checks(&mut self) {
        let d = self.dim;
        let values = &self.table.values;
        let start = self.coefficients.postulation;
        let mut ok = true;
        let mut detail = format!("constant {}", self.e(0));
        for n in start..=values.len().saturating_sub(d + 1) {
            let mut diff: Vec<i128> = values[n..n + d + 1].iter().map(|&v| v as i128).collect();
            for _ in 0..d {
                diff = diff.windows(2).map(|w| w[1] - w[0]).collect();
            }
            if diff[0] != self.e(0) {
                ok = false;
                detail = format!(
                    "difference at n = {n} is {} instead of {}",
                    diff[0],
                    self.e(0)
                );
                break;
            }
        }
        self.checks
            .push(CheckOutcome::verdict("dth-difference", ok, detail));
    }

    fn run_reduction_checks(&mut self) -> Result<()> {
        let e0 = self.e(0);
        let q_len = self.reduction.colength()? as i128;
        self.checks.push(CheckOutcome::verdict(
            "multiplicity",
            e0 == q_len,
            format!("e0 = {e0}, len(A/Q) = {q_len}"),
        ));

        // len(A/I^(n+1)) + s_n = e0 C(n+d, d) - (e0 - len(A/I)) C(n+d-1, d-1)
        let d = self.dim as i64;
        let len = self.len_a_i as i128;
        let s = self.s.as_ref().expect("reduction implies s");
        let mut ok = true;
        let mut detail = format!("holds for 0 <= n <= {}", self.window);
        for n in 0..=self.window {
            let sn = if n == 0 { 0 } else { s[n - 1] as i128 };
            let lhs = self.table.value(n) as i128 + sn;
            let rhs = e0 * binom(n as i128 + d as i128, d)
                - (e0 - len) * binom(n as i128 + d as i128 - 1, d - 1);
            if lhs != rhs {
                ok = false;
                detail = format!("fails at n = {n}: H + s = {lhs}, predicted {rhs}");
                break;
            }
        }
        self.checks.push(CheckOutcome::verdict("identity", ok, detail));

        let northcott_equal = self.e(1) == e0 - len;
        self.checks.push(CheckOutcome::verdict(
            "huneke-ooishi",
            northcott_equal == self.flags.square_reduced,
            format!(
                "e1 = e0 - len(A/I) is {northcott_equal}, I^2 = QI is {}",
                self.flags.square_reduced
            ),
        ));
        Ok(())
    }

    fn compute_m_invariant(&mut self) {
        let applicable = self.dim >= 2
            && self.flags.lemma_hypotheses()
            && !self.flags.square_reduced
            && self.rank.is_some();
        if !applicable {
            return;
        }
        let m = raw_m_invariant(&self.coefficients, self.len_a_i);
        self.m_inv = Some(m);
        let rank = self.rank.expect("checked above") as i128;
        self.checks.push(CheckOutcome::verdict(
            "m-range",
            (-1..=rank - 1).contains(&m),
            format!("m = {m}, range [-1, {}]", rank - 1),
        ));
    }

    fn compute_classification(&mut self) {
        let rank = match self.rank {
            Some(r) => r,
            None => return,
        };
        let classifiable =
            self.flags.square_reduced || (self.dim >= 2 && self.flags.lemma_hypotheses());
        if !classifiable {
            self.checks.push(CheckOutcome::skip(
                "classification",
                "hypotheses I^3 = QI^2 and m I^2 in QI not satisfied".into(),
            ));
            return;
        }
        let (s1, s2) = match (self.s1(), self.s2()) {
            (Some(a), Some(b)) => (a, b),
            _ => return,
        };
        let input = ClassifyInput {
            dim: self.dim,
            flags: &self.flags,
            rank,
            m_inv: self.m_inv,
            s1,
            s2,
        };
        match classify(&input) {
            Ok(class) => {
                self.checks
                    .push(CheckOutcome::pass("classification", class.tag()));
                self.predicted_depth = Some(predicted_depth(&class, self.dim));
                self.closed_form =
                    predicted_closed_form(&class, self.dim, self.e(0), self.e(1), self.len_a_i);
                self.classification = Some(class);
            }
            Err(Error::RangeViolation { what }) => {
                self.checks.push(CheckOutcome::fail("classification", what));
            }
            Err(e) => {
                self.checks
                    .push(CheckOutcome::fail("classification", e.to_string()));
            }
        }
    }
}

/// Compare the classification's predicted Hilbert values and Sally lengths
/// against the computed tables. Every entry in the intersection of the
/// validity range and the window must match exactly.
pub fn verify_closed_form_checks(profile: &SallyProfile) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let class = match &profile.classification {
        Some(c) => c,
        None => return out,
    };
    if matches!(class, Classification::Unclassified) {
        out.push(CheckOutcome::skip(
            "closed-form-h",
            "no closed form for this tag".into(),
        ));
        return out;
    }
    let cf = profile
        .closed_form
        .as_ref()
        .expect("classified tags carry a form");
    let mut ok = true;
    let mut detail = format!("matches for {} <= n <= {}", cf.from, profile.window);
    for n in cf.from..=profile.window {
        let predicted = cf.eval(profile.dim, n as u64);
        let actual = profile.table.value(n) as i128;
        if predicted != actual {
            ok = false;
            detail = format!("H({n}) = {actual} but the closed form gives {predicted}");
            break;
        }
    }
    out.push(CheckOutcome::verdict("closed-form-h", ok, detail));

    if let Some(s) = &profile.s {
        let mut ok = true;
        let mut detail = format!("matches for 1 <= n <= {}", s.len());
        for (idx, &sn) in s.iter().enumerate() {
            let n = idx as u64 + 1;
            let predicted = predicted_sally_length(class, profile.dim, n)
                .expect("classified tags predict s");
            if predicted != sn as i128 {
                ok = false;
                detail = format!("s_{n} = {sn} but the resolution gives {predicted}");
                break;
            }
        }
        out.push(CheckOutcome::verdict("closed-form-s", ok, detail));
    }

    // Named coefficient relations per tag.
    let e0 = profile.coefficients.e(0);
    let e1 = profile.coefficients.e(1);
    let len = profile.len_a_i as i128;
    let e2 = if profile.dim >= 2 {
        profile.coefficients.e(2)
    } else {
        0
    };
    let relation: Option<(i128, i128, &str)> = match class {
        Classification::Zero => Some((e1, e0 - len, "e1 = e0 - len(A/I)")),
        Classification::S1Three {
            subcase: Subcase::I, ..
        } => Some((e1, e0 - len + 2, "e1 = e0 - len(A/I) + 2")),
        Classification::S1Three {
            subcase: Subcase::II,
            ..
        } => Some((e1, e0 - len + 1, "e1 = e0 - len(A/I) + 1")),
        Classification::S1FourD2 {
            subcase: Subcase::I, ..
        } => Some((e2, e1 - e0 + len - 1, "e2 = e1 - e0 + len(A/I) - 1")),
        Classification::S1FourD2 {
            subcase: Subcase::II,
            ..
        } => Some((e2, e1 - e0 + len - 2, "e2 = e1 - e0 + len(A/I) - 2")),
        _ => None,
    };
    if let Some((lhs, rhs, text)) = relation {
        out.push(CheckOutcome::verdict(
            "relations",
            lhs == rhs,
            format!("{text}: {lhs} vs {rhs}"),
        ));
    }
    out
}

/// Evaluate the inequality suite on a profile: the Northcott bound always,
/// nonnegativity of e_2 in dimension at least two, the main inequality
/// under the standing hypotheses, and the reverse bound for integrally
/// closed ideals. Failures are report entries, not errors.
pub fn check_inequalities(profile: &SallyProfile) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let e0 = profile.coefficients.e(0);
    let e1 = profile.coefficients.e(1);
    let len = profile.len_a_i as i128;

    out.push(CheckOutcome::verdict(
        "northcott",
        e1 >= e0 - len,
        format!("e1 = {e1} >= e0 - len(A/I) = {}", e0 - len),
    ));

    if profile.dim >= 2 {
        let e2 = profile.coefficients.e(2);
        out.push(CheckOutcome::verdict(
            "narita",
            e2 >= 0,
            format!("e2 = {e2} >= 0"),
        ));

        if profile.flags.is_reduction && profile.flags.cube_reduced && profile.flags.m_i2_in_qi {
            out.push(CheckOutcome::verdict(
                "main-inequality",
                e1 >= e0 - len + e2,
                format!("e1 = {e1} >= e0 - len(A/I) + e2 = {}", e0 - len + e2),
            ));
        } else {
            out.push(CheckOutcome::skip(
                "main-inequality",
                "requires I^3 = QI^2 and m I^2 in QI".into(),
            ));
        }

        if profile.flags.integrally_closed {
            out.push(CheckOutcome::verdict(
                "sally-itoh",
                e2 >= e1 - e0 + len,
                format!("e2 = {e2} >= e1 - e0 + len(A/I) = {}", e1 - e0 + len),
            ));
        } else {
            out.push(CheckOutcome::skip(
                "sally-itoh",
                "I is not integrally closed".into(),
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Monomial;

    fn ideal(dim: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::new(dim, gens.iter().map(|e| Monomial::new(e.to_vec()))).unwrap()
    }

    fn free_rank_two() -> (MonomialIdeal, MonomialIdeal) {
        (
            ideal(2, &[&[5, 0], &[0, 5]]),
            ideal(2, &[&[5, 0], &[0, 5], &[2, 3], &[3, 2]]),
        )
    }

    #[test]
    fn sally_lengths_twice_n() {
        let (q, i) = free_rank_two();
        let s = sally_lengths(&i, &q, 6).unwrap();
        assert_eq!(s, vec![2, 4, 6, 8, 10, 12]);
    }

    #[test]
    fn sally_lengths_vanish_when_square_reduced() {
        let q = ideal(2, &[&[2, 0], &[0, 2]]);
        let i = MonomialIdeal::maximal(2).power(2);
        assert_eq!(sally_lengths(&i, &q, 4).unwrap(), vec![0, 0, 0, 0]);
    }

    #[test]
    fn sally_lengths_reject_bad_inputs() {
        let (q, i) = free_rank_two();
        assert_eq!(
            sally_lengths(&i, &i, 4).unwrap_err(),
            Error::NotParameterIdeal
        );
        assert_eq!(
            sally_lengths(&MonomialIdeal::maximal(2), &q, 4).unwrap_err(),
            Error::NotAReduction
        );
        assert_eq!(
            sally_lengths(&i, &q, 1).unwrap_err(),
            Error::InsufficientWindow { needed: 2, have: 1 }
        );
    }

    #[test]
    fn hypothesis_flags_for_the_end_examples() {
        let q = ideal(2, &[&[7, 0], &[0, 7]]);
        let i = ideal(2, &[&[7, 0], &[0, 7], &[1, 6], &[2, 5], &[4, 3], &[5, 2]]);
        let flags = check_hypotheses(&i, &q).unwrap();
        assert!(flags.is_reduction);
        assert!(!flags.square_reduced);
        assert!(flags.cube_reduced);
        assert!(flags.m_i2_in_qi);
        assert_eq!(flags.ratliff_rush_closed, Some(false));

        let same = check_hypotheses(&q, &q).unwrap();
        assert!(same.square_reduced && same.cube_reduced && same.m_i2_in_qi);
    }

    #[test]
    fn rank_and_m_from_the_free_example() {
        let coeffs = HilbertCoefficients {
            dim: 2,
            e: vec![25, 10, 2],
            postulation: 0,
        };
        assert_eq!(sally_rank(&coeffs, 17).unwrap(), 2);
        assert_eq!(m_invariant(&coeffs, 17).unwrap(), -1);

        let family = HilbertCoefficients {
            dim: 2,
            e: vec![16, 6, 0],
            postulation: 1,
        };
        assert_eq!(sally_rank(&family, 11).unwrap(), 1);
        assert_eq!(m_invariant(&family, 11).unwrap(), 0);

        let bad = HilbertCoefficients {
            dim: 2,
            e: vec![25, 5, 0],
            postulation: 0,
        };
        assert_eq!(sally_rank(&bad, 17).unwrap_err(), Error::NegativeRank { rank: -3 });
        // e2 above the rank pushes m below -1.
        let out_of_range = HilbertCoefficients {
            dim: 2,
            e: vec![25, 10, 5],
            postulation: 0,
        };
        assert!(matches!(
            m_invariant(&out_of_range, 17),
            Err(Error::RangeViolation { .. })
        ));
    }

    #[test]
    fn profile_of_the_free_example() {
        let (q, i) = free_rank_two();
        let p = SallyProfile::analyze(&i, &q, 8, None).unwrap();
        assert_eq!(p.coefficients.e, vec![25, 10, 2]);
        assert_eq!(p.len_a_i, 17);
        assert_eq!(p.rank, Some(2));
        assert_eq!(p.m_inv, Some(-1));
        assert_eq!(p.classification, Some(Classification::Free { rank: 2 }));
        assert_eq!(p.predicted_depth, Some(DepthPrediction::AtLeast(1)));
        assert!(p.passed(), "failures: {:?}", p.failures());
        let cf = p.closed_form.unwrap();
        assert_eq!(cf.e, vec![25, 10, 2]);
        assert_eq!(cf.from, 0);
    }

    #[test]
    fn profile_of_a_parameter_ideal_is_zero_tag() {
        let q = ideal(2, &[&[3, 0], &[0, 3]]);
        let p = SallyProfile::analyze(&q, &q, 8, None).unwrap();
        assert_eq!(p.classification, Some(Classification::Zero));
        assert_eq!(p.coefficients.e, vec![9, 0, 0]);
        assert_eq!(p.rank, Some(0));
        assert!(p.passed(), "failures: {:?}", p.failures());
        assert_eq!(p.s.unwrap(), vec![0; 8]);
    }

    #[test]
    fn classification_buckets() {
        let flags = HypothesisFlags {
            is_reduction: true,
            square_reduced: false,
            cube_reduced: true,
            m_i2_in_qi: true,
            integrally_closed: false,
            ratliff_rush_closed: None,
        };
        // s_1 = 3, s_2 = 5 = 3d - 1 in dimension two.
        let c = classify(&ClassifyInput {
            dim: 2,
            flags: &flags,
            rank: 2,
            m_inv: Some(0),
            s1: 3,
            s2: 5,
        })
        .unwrap();
        assert_eq!(
            c,
            Classification::S1Three {
                rank: 2,
                subcase: Subcase::I
            }
        );

        // d = 3 with s_1 = 4 never lands in the d = 2 family.
        let c = classify(&ClassifyInput {
            dim: 3,
            flags: &flags,
            rank: 2,
            m_inv: Some(0),
            s1: 4,
            s2: 9,
        })
        .unwrap();
        assert_eq!(c, Classification::Unclassified);

        // m = 0 with s_1 = 2 is the plain near-free case.
        let c = classify(&ClassifyInput {
            dim: 2,
            flags: &flags,
            rank: 1,
            m_inv: Some(0),
            s1: 2,
            s2: 3,
        })
        .unwrap();
        assert_eq!(c, Classification::NearFree { rank: 1, c: 2 });

        // Subcase (ii) of the s_1 = 3 family needs d >= 3.
        assert!(matches!(
            classify(&ClassifyInput {
                dim: 2,
                flags: &flags,
                rank: 1,
                m_inv: Some(0),
                s1: 3,
                s2: 3,
            }),
            Err(Error::RangeViolation { .. })
        ));

        let no_hyp = HypothesisFlags {
            cube_reduced: false,
            ..flags.clone()
        };
        assert_eq!(
            classify(&ClassifyInput {
                dim: 2,
                flags: &no_hyp,
                rank: 1,
                m_inv: Some(0),
                s1: 2,
                s2: 3,
            })
            .unwrap_err(),
            Error::HypothesisViolated
        );
    }

    #[test]
    fn predicted_lengths_match_hand_values() {
        let free = Classification::Free { rank: 2 };
        for n in 1..6 {
            assert_eq!(predicted_sally_length(&free, 2, n), Some(2 * n as i128));
        }
        let s13 = Classification::S1Three {
            rank: 2,
            subcase: Subcase::I,
        };
        for n in 1..6 {
            assert_eq!(predicted_sally_length(&s13, 2, n), Some(2 * n as i128 + 1));
        }
        let s14 = Classification::S1FourD2 {
            rank: 3,
            subcase: Subcase::I,
        };
        for n in 1..6 {
            assert_eq!(predicted_sally_length(&s14, 2, n), Some(3 * n as i128 + 1));
        }
        let s14b = Classification::S1FourD2 {
            rank: 2,
            subcase: Subcase::II,
        };
        for n in 1..6 {
            assert_eq!(predicted_sally_length(&s14b, 2, n), Some(2 * n as i128 + 2));
        }
        // The d = 3 near-free profile with c = 3: C(n+1, 2) + C(n+2, 2).
        let nf = Classification::NearFree { rank: 2, c: 3 };
        assert_eq!(predicted_sally_length(&nf, 3, 1), Some(4));
        assert_eq!(predicted_sally_length(&nf, 3, 2), Some(9));
        assert_eq!(predicted_sally_length(&nf, 3, 3), Some(16));
    }
}
