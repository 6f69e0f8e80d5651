//! Log-terminal / log-canonical classification, the sufficient conditions for
//! `chi/e < 1`, and the certificate chain for log-terminal total spaces of
//! negative-weight smoothings.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_arith::{int, Rational};
use crate::graph_model::StarGraph;
use crate::invariants::{graded_discrepancy, seifert_invariants};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassTag {
    /// `chi < 0`: a quotient singularity, log-terminal.
    LogTerminalQuotient,
    /// `chi = 0`: log-canonical but not log-terminal.
    LogCanonicalStrict,
    /// `chi > 0`.
    NotLogCanonical,
}

impl ClassTag {
    pub fn as_str(self) -> &'static str {
        match self {
            ClassTag::LogTerminalQuotient => "log_terminal_quotient",
            ClassTag::LogCanonicalStrict => "log_canonical_strict",
            ClassTag::NotLogCanonical => "not_log_canonical",
        }
    }

    /// The same classification read off the graded discrepancy.
    pub fn from_alpha(alpha: &Rational) -> Self {
        let minus_one = int(-1);
        if *alpha > minus_one {
            ClassTag::LogTerminalQuotient
        } else if *alpha == minus_one {
            ClassTag::LogCanonicalStrict
        } else {
            ClassTag::NotLogCanonical
        }
    }

    pub fn from_chi(chi: &Rational) -> Self {
        if chi.is_negative() {
            ClassTag::LogTerminalQuotient
        } else if chi.is_zero() {
            ClassTag::LogCanonicalStrict
        } else {
            ClassTag::NotLogCanonical
        }
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularityClass {
    pub tag: ClassTag,
    pub chi: Rational,
    pub alpha: Rational,
}

/// Classifies by the sign of `chi`; the alpha threshold must say the same.
pub fn classify(sg: &StarGraph) -> Result<SingularityClass> {
    let alpha = graded_discrepancy(sg)?.alpha;
    let chi = seifert_invariants(sg)?.chi;
    let tag = ClassTag::from_chi(&chi);
    if tag != ClassTag::from_alpha(&alpha) {
        return Err(Error::consistency(format!(
            "chi = {chi} and alpha = {alpha} classify differently"
        )));
    }
    Ok(SingularityClass { tag, chi, alpha })
}

/// The listed configurations (rational central curve) forcing `chi/e < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Lemma24Case {
    /// `t = 3`, `d >= 4`.
    T3DGe4,
    /// `t = 3`, `d = 3`, some `q_i = 1`.
    T3D3Q1,
    /// `t = 3`, `d = 2`, two of the `q_i` equal to 1.
    T3D2Q1Q1,
    /// `t = 4`, `d >= 3`, three of the `q_i` equal to 1.
    T4DGe3ThreeQ1,
}

impl Lemma24Case {
    pub fn as_str(self) -> &'static str {
        match self {
            Lemma24Case::T3DGe4 => "t3_d_ge_4",
            Lemma24Case::T3D3Q1 => "t3_d3_q1",
            Lemma24Case::T3D2Q1Q1 => "t3_d2_q1q1",
            Lemma24Case::T4DGe3ThreeQ1 => "t4_d_ge_3_three_q1",
        }
    }
}

impl fmt::Display for Lemma24Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma24Report {
    pub applies: bool,
    pub matched_case: Option<Lemma24Case>,
    pub chi_over_e: Rational,
}

/// First matching case, in the listed order. `q_i = 1` conditions are counted
/// over all arms, so arm order does not matter.
pub fn lemma24_case(t: usize, d: i64, unit_arms: usize) -> Option<Lemma24Case> {
    match (t, d) {
        (3, d) if d >= 4 => Some(Lemma24Case::T3DGe4),
        (3, 3) if unit_arms >= 1 => Some(Lemma24Case::T3D3Q1),
        (3, 2) if unit_arms >= 2 => Some(Lemma24Case::T3D2Q1Q1),
        (4, d) if d >= 3 && unit_arms >= 3 => Some(Lemma24Case::T4DGe3ThreeQ1),
        _ => None,
    }
}

pub fn lemma24(sg: &StarGraph) -> Result<Lemma24Report> {
    sg.require_genus_zero("the chi/e < 1 criteria are stated for a rational central curve")?;
    let chi_over_e = seifert_invariants(sg)?.beta;
    let unit_arms = sg.arms.iter().filter(|a| a.q == 1).count();
    let matched_case = lemma24_case(sg.arms.len(), sg.central_weight, unit_arms);
    if let Some(case) = matched_case {
        if chi_over_e >= Rational::one() {
            return Err(Error::consistency(format!(
                "{sg} matches case {case} but chi/e = {chi_over_e} >= 1"
            )));
        }
    }
    Ok(Lemma24Report {
        applies: matched_case.is_some(),
        matched_case,
        chi_over_e,
    })
}

/// Direct exact test of `chi/e < 1`.
pub fn chi_e_lt_one(sg: &StarGraph) -> Result<bool> {
    Ok(seifert_invariants(sg)?.beta < Rational::one())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateStep {
    pub claim: String,
    pub value: String,
    pub verdict: bool,
}

/// The implication chain from the graph to a log-terminal smoothing total
/// space. It reports necessary conditions only; it does not claim that a
/// rational homology disk smoothing exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QHDCertificate {
    pub steps: Vec<CertificateStep>,
    pub overall: bool,
}

pub const CERTIFICATE_CONCLUSION: &str = "any negative-weight smoothing whose total space has K Q-Cartier has log-terminal total space, hence the smoothing is Q-Gorenstein (existence of such a smoothing is not asserted)";

pub fn qhd_certificate(sg: &StarGraph) -> Result<QHDCertificate> {
    let report = lemma24(sg)?;
    let alpha = graded_discrepancy(sg)?.alpha;
    let below_one = report.chi_over_e < Rational::one();
    let above_minus_two = alpha > int(-2);

    let steps = vec![
        CertificateStep {
            claim: "graph matches one of the chi/e < 1 configurations".into(),
            value: report
                .matched_case
                .map_or_else(|| "none".to_string(), |c| c.to_string()),
            verdict: report.applies,
        },
        CertificateStep {
            claim: "chi/e < 1".into(),
            value: report.chi_over_e.to_string(),
            verdict: below_one,
        },
        CertificateStep {
            claim: "alpha = -1 - chi/e > -2".into(),
            value: alpha.to_string(),
            verdict: above_minus_two,
        },
        CertificateStep {
            claim: "conclusion".into(),
            value: CERTIFICATE_CONCLUSION.into(),
            verdict: above_minus_two,
        },
    ];
    let overall = steps.iter().all(|s| s.verdict);
    Ok(QHDCertificate { steps, overall })
}
