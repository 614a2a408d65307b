//! Measure weights and the derived per-vertex decreases.

/// Weights of the exact measure. Degree-3 vertices without tree edges
/// weigh 1; vertices not covered by any class weigh 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MuWeights {
    pub w2: f64,
    pub w3_1: f64,
    pub w3_2: f64,
    pub w3_2star: f64,
}

impl Default for MuWeights {
    fn default() -> Self {
        MuWeights { w2: 0.3193, w3_1: 0.6234, w3_2: 0.3094, w3_2star: 0.4144 }
    }
}

/// Decreases obtained when a vertex changes class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MuDeltas {
    pub d3_0: f64,
    pub d3_1: f64,
    pub d3_1star: f64,
    pub d3_2: f64,
    pub d3_2star: f64,
    pub d2: f64,
    /// `min` of plain and starred decrease, indexed by tree degree 0..=2.
    pub tilde3: [f64; 3],
    /// Running minima of the plain decreases over tree degree `0..=l`.
    pub min: [f64; 3],
    /// Running minima of `tilde3` over `0..=l`.
    pub tilde_min: [f64; 3],
}

impl MuWeights {
    pub fn deltas(&self) -> MuDeltas {
        let d3_0 = 1.0 - self.w3_1;
        let d3_1 = self.w3_1 - self.w3_2;
        let d3_1star = self.w3_1 - self.w3_2star;
        let d3_2 = self.w3_2;
        let d3_2star = self.w3_2star;
        let plain = [d3_0, d3_1, d3_2];
        let tilde3 = [d3_0, d3_1.min(d3_1star), d3_2.min(d3_2star)];
        let running = |v: [f64; 3]| [v[0], v[0].min(v[1]), v[0].min(v[1]).min(v[2])];
        MuDeltas {
            d3_0,
            d3_1,
            d3_1star,
            d3_2,
            d3_2star,
            d2: 1.0 - self.w2,
            tilde3,
            min: running(plain),
            tilde_min: running(tilde3),
        }
    }
}

/// Weights of the parameterized measures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KappaWeights {
    /// `X`: degree 3, two tree edges.
    pub w1: f64,
    /// `Z`: isolated degree-2 vertices.
    pub w2: f64,
    /// `W`: vertices carrying a pending edge.
    pub w3: f64,
    /// Weight of `X` in the single-weight measure.
    pub simple_w: f64,
}

impl Default for KappaWeights {
    fn default() -> Self {
        KappaWeights { w1: 0.5485, w2: 0.4189, w3: 0.7712, simple_w: 0.45346 }
    }
}
