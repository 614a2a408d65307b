//! Branching vectors and their branching numbers.

use thiserror::Error;

/// Default tolerance on `|sum tau^-a_i - 1|`.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("branching vector is empty")]
    Empty,
    #[error("branching vector has a single entry; no root above 1 exists")]
    SingleEntry,
    #[error("entry {index} of the branching vector is {value}, not positive")]
    NonPositive { index: usize, value: f64 },
    #[error("weights are infeasible for case {case}: entry {index} is {value}")]
    Infeasible { case: String, index: usize, value: f64 },
}

/// A list of strictly positive measure decreases, one per child.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchVector(Vec<f64>);

impl BranchVector {
    pub fn new(decreases: Vec<f64>) -> Result<BranchVector, AnalysisError> {
        match decreases.len() {
            0 => return Err(AnalysisError::Empty),
            1 => return Err(AnalysisError::SingleEntry),
            _ => {}
        }
        if let Some((index, &value)) = decreases.iter().enumerate().find(|(_, &a)| a.is_nan() || a <= 0.0) {
            return Err(AnalysisError::NonPositive { index, value });
        }
        Ok(BranchVector(decreases))
    }

    pub fn decreases(&self) -> &[f64] {
        &self.0
    }
}

fn excess(v: &[f64], tau: f64) -> f64 {
    v.iter().map(|&a| tau.powf(-a)).sum::<f64>() - 1.0
}

/// The unique `tau > 1` with `sum tau^(-a_i) = 1`, by bisection.
pub fn branching_number(v: &BranchVector, tol: f64) -> f64 {
    let a = v.decreases();
    let min = a.iter().copied().fold(f64::INFINITY, f64::min);
    // At `len^(1/min)` every term is at most `1/len`.
    let (mut lo, mut hi) = (1.0, (a.len() as f64).powf(1.0 / min));
    loop {
        let mid = 0.5 * (lo + hi);
        let f = excess(a, mid);
        if f.abs() < tol || hi - lo <= f64::EPSILON * hi {
            return mid;
        }
        if f > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// Convenience wrapper for literal vectors.
pub fn branching_number_of(decreases: &[f64]) -> Result<f64, AnalysisError> {
    Ok(branching_number(&BranchVector::new(decreases.to_vec())?, DEFAULT_TOL))
}
