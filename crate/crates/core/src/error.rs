use thiserror::Error;

/// Precondition failures shared by all solvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph needs at least {required} vertices, has {found}")]
    TooSmall { required: usize, found: usize },
    #[error("graph has {n} vertices, limit is {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("maximum degree {found} exceeds the supported bound {limit}")]
    DegreeTooHigh { found: usize, limit: usize },
    #[error("search budget of {0} nodes exhausted")]
    BudgetExceeded(u64),
}

/// Shared precondition: connected with at least `min_n` vertices.
pub(crate) fn require_connected(g: &crate::Graph, min_n: usize) -> Result<(), SolveError> {
    if g.n() < min_n {
        return Err(SolveError::TooSmall { required: min_n, found: g.n() });
    }
    if !g.is_connected() {
        return Err(SolveError::Disconnected);
    }
    Ok(())
}
