//! Branching tuples of the case analyses, one entry per proof case.

use std::fmt;
use std::str::FromStr;

use super::branching::{branching_number, AnalysisError, BranchVector, DEFAULT_TOL};
use super::weights::{KappaWeights, MuWeights};

#[derive(Debug, Clone, PartialEq)]
pub struct CaseVector {
    pub label: String,
    pub decreases: Vec<f64>,
}

fn case(label: impl Into<String>, decreases: Vec<f64>) -> CaseVector {
    CaseVector { label: label.into(), decreases }
}

/// Situation of a neighbor `h` of `b` in case 5 of the exact analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Situation {
    /// `d_G(h) = 2`.
    Alpha,
    /// `d_G(h) = 3`, no pending edge.
    Beta,
    /// `d_G(h) = 3`, one pending edge.
    Gamma,
}

impl Situation {
    pub const ALL: [Situation; 3] = [Situation::Alpha, Situation::Beta, Situation::Gamma];

    fn name(self) -> &'static str {
        match self {
            Situation::Alpha => "alpha",
            Situation::Beta => "beta",
            Situation::Gamma => "gamma",
        }
    }
}

/// Tuples of the exact analysis.
pub fn exact_case_vectors(w: &MuWeights) -> Vec<CaseVector> {
    let d = w.deltas();
    let (w2, w31, w32) = (w.w2, w.w3_1, w.w3_2);
    let t31 = d.tilde3[1];
    let tm1 = d.tilde_min[1];
    let tm2 = d.tilde_min[2];
    let mut out = vec![
        case("4a d(b)=2", vec![w2 + w31 + t31; 2]),
        case("4a d(b)=3 pt-edge at b", vec![2.0 * w31 + t31; 2]),
        case("4a d(b)=3 no pt-edge at b", vec![w31 + t31 + 1.0, w31 + d.d2 + w2.min(tm1)]),
        case("4b I d_T(a)=1", vec![t31 + d.d3_0 + w2, w31 + d.d3_0 + w2 + w2.min(tm1)]),
        case("4b II d_T(a)=2", vec![d.d3_2star + w2 + d.d3_0; 2]),
        case("4c(a) d(c)=3", vec![2.0 * d.d3_1, 2.0 * w31 + t31 + d.d3_0]),
        case("4c(a) d(c)=2 d_P(z)=1", vec![w31 + d.d3_1star, 2.0 * w31 + t31 + w2 + tm2]),
        case("4c(a) d(c)=2 d_P(z)=0", vec![d.d3_1 + d.d3_1star, 2.0 * w31 + d.d3_0 + w2 + tm2]),
        case("4c(b) d_P(c)=1", vec![d.d3_1star + 2.0 * w31, 3.0 * w31]),
        case("4d", vec![d.d3_1 + d.d3_0, w31 + d.d2 + d.d3_0]),
    ];
    let alpha = |s: Situation| if s == Situation::Alpha { 1.0 } else { 0.0 };
    let delete = |s: Situation| match s {
        Situation::Alpha => w2 + tm2,
        Situation::Beta => d.d2,
        Situation::Gamma => w31 + tm2,
    };
    let add = |s: Situation| match s {
        Situation::Alpha => w2 + tm2,
        Situation::Beta => d.d3_0,
        Situation::Gamma => t31,
    };
    for c in Situation::ALL {
        for x in Situation::ALL {
            out.push(case(
                format!("5 c={} x={}", c.name(), x.name()),
                vec![
                    w32 + d.d2 + (alpha(x) + alpha(c)) * w2,
                    w32 + 1.0 + delete(x) + add(c),
                    w32 + 1.0 + delete(c) + add(x),
                ],
            ));
        }
    }
    out
}

/// The ten rows of the detailed parameterized analysis.
pub fn param_case_vectors(w: &KappaWeights) -> Vec<CaseVector> {
    let (w1, w2, w3) = (w.w1, w.w2, w.w3);
    vec![
        case("4a d(b)=2", vec![1.0 + w1 - w2; 2]),
        case("4a d(b)=3 pt-edge at b", vec![2.0 + w1 - w3; 2]),
        case("4a d(b)=3 no pt-edge at b", vec![2.0 + w1, 1.0 + w2]),
        case("4b d_T(a)=1", vec![1.0 + w1 - w2, 1.0 + w3 - w2]),
        case("4b d_T(a)=2", vec![2.0 - w1 - w2, 1.0 - w1 - w2 + w3]),
        case("4c", vec![2.0 * w1 - w3, 2.0]),
        case("4d", vec![w1, 1.0 + w2]),
        case("5 degree-3 neighbors, X vertex nearby", vec![2.0 - w1, 3.0 - 2.0 * w1, 1.0 - w1 + w2]),
        case("5 degree-3 neighbors", vec![1.0 - w1 + w2, 2.0 - w1 + w2, 2.0 - w1 + w2]),
        case("5 degree-2 neighbor", vec![2.0 - w1; 3]),
    ]
}

/// The four rows whose branching numbers coincide at the optimum weights.
pub fn tight_param_vectors(w: &KappaWeights) -> Vec<CaseVector> {
    let rows = param_case_vectors(w);
    [4, 5, 6, 8].into_iter().map(|i| rows[i].clone()).collect()
}

/// The three tuples of the single-weight analysis.
pub fn simple_case_vectors(w: &KappaWeights) -> Vec<CaseVector> {
    let o = w.simple_w;
    vec![
        case("4 d_T(a)=1", vec![o, 1.0]),
        case("4 d_T(a)=2", vec![2.0 - o, 1.0 - o]),
        case("5", vec![1.0 - o, 2.0 - o, 2.0 - o]),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Exact,
    ParamDetailed,
    ParamSimple,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Exact, Family::ParamDetailed, Family::ParamSimple];

    pub fn name(self) -> &'static str {
        match self {
            Family::Exact => "exact",
            Family::ParamDetailed => "param_detailed",
            Family::ParamSimple => "param_simple",
        }
    }

    pub fn vectors(self, mu: &MuWeights, kappa: &KappaWeights) -> Vec<CaseVector> {
        match self {
            Family::Exact => exact_case_vectors(mu),
            Family::ParamDetailed => param_case_vectors(kappa),
            Family::ParamSimple => simple_case_vectors(kappa),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| format!("unknown family `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub family: Family,
    pub max: f64,
    pub worst_case: String,
    pub per_case: Vec<(String, f64)>,
}

/// Evaluates every tuple of `family` and reports the largest branching
/// number.
pub fn verify_bound(family: Family, mu: &MuWeights, kappa: &KappaWeights) -> Result<BoundReport, AnalysisError> {
    let mut per_case = Vec::new();
    for cv in family.vectors(mu, kappa) {
        let vector = BranchVector::new(cv.decreases.clone()).map_err(|e| match e {
            AnalysisError::NonPositive { index, value } => {
                AnalysisError::Infeasible { case: cv.label.clone(), index, value }
            }
            other => other,
        })?;
        per_case.push((cv.label, branching_number(&vector, DEFAULT_TOL)));
    }
    let (worst_case, max) = per_case
        .iter()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(l, v)| (l.clone(), *v))
        .expect("families are nonempty");
    Ok(BoundReport { family, max, worst_case, per_case })
}
