//! Closed-form constants of the dynamic-programming bounds.

/// Connected-set base for maximum degree `delta`: `(2^(delta+1) - 1)^(1/(delta+1))`.
pub fn beta(delta: u32) -> f64 {
    let e = f64::from(delta + 1);
    (2f64.powf(e) - 1.0).powf(1.0 / e)
}

/// Exact base of the stage dynamic program on graphs of maximum degree
/// `delta`.
pub fn connected_set_base(delta: u32) -> f64 {
    beta(delta) + 1.0
}

/// Rounds up at the fourth decimal, the precision running-time bases are
/// reported in.
pub fn round_up_4(x: f64) -> f64 {
    let scaled = x * 1e4;
    // Guard against representation noise just above an exact grid point.
    let snapped = if (scaled - scaled.round()).abs() < 1e-9 { scaled.round() } else { scaled.ceil() };
    snapped / 1e4
}

/// Running-time base for maximum degree `delta`, as tabulated.
pub fn table1_bound(delta: u32) -> f64 {
    round_up_4(connected_set_base(delta))
}

/// `epsilon_delta` with `3^(1 - epsilon) = beta + 1`.
pub fn epsilon(delta: u32) -> f64 {
    1.0 - connected_set_base(delta).ln() / 3f64.ln()
}

/// Base of the edge-subset branching on graphs of maximum degree `delta`:
/// `beta_(2 delta - 2)^(delta / 2)`.
pub fn naive_edge_base(delta: u32) -> f64 {
    beta(2 * delta - 2).powf(f64::from(delta) / 2.0)
}

/// The subcubic case `beta_4^(3/2)`, rounded up.
pub fn naive_edge_bound() -> f64 {
    round_up_4(naive_edge_base(3))
}

/// Base in `k` of running the exact algorithm on a `2k`-vertex kernel.
pub fn kernel_composed(exact_base: f64) -> f64 {
    exact_base * exact_base
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert!((beta(1) - 3f64.sqrt()).abs() < 1e-12);
        assert_eq!(round_up_4(2.96801), 2.9681);
        assert_eq!(round_up_4(2.968), 2.968);
        assert!(epsilon(3) > 0.0);
    }
}
