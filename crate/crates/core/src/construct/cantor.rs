use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Finite stage of a symmetric Cantor set: each step keeps the two end pieces
/// of relative length `ratio`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CantorSpec {
    pub interval: (f64, f64),
    pub ratio: f64,
    pub depth: u32,
}

impl CantorSpec {
    pub fn new(lo: f64, hi: f64, ratio: f64, depth: u32) -> Result<Self> {
        let s = Self { interval: (lo, hi), ratio, depth };
        s.validate()?;
        Ok(s)
    }

    pub fn middle_thirds(lo: f64, hi: f64, depth: u32) -> Self {
        Self { interval: (lo, hi), ratio: 1.0 / 3.0, depth }
    }

    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.interval;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::Invalid(format!("Cantor interval [{lo}, {hi}] is empty")));
        }
        if !(self.ratio > 0.0 && self.ratio < 0.5) {
            return Err(Error::Invalid(format!("Cantor ratio {} outside (0, 1/2)", self.ratio)));
        }
        if self.depth > 20 {
            return Err(Error::Invalid("Cantor depth above 20".into()));
        }
        Ok(())
    }

    /// The `2^depth` closed intervals, left to right.
    pub fn intervals(&self) -> Vec<(f64, f64)> {
        let mut cur = vec![self.interval];
        for _ in 0..self.depth {
            cur = cur
                .iter()
                .flat_map(|&(a, b)| {
                    let l = (b - a) * self.ratio;
                    [(a, a + l), (b - l, b)]
                })
                .collect();
        }
        cur
    }

    pub fn measure(&self) -> f64 {
        let (lo, hi) = self.interval;
        (hi - lo) * (2.0 * self.ratio).powi(self.depth as i32)
    }

    pub fn contains(&self, x: f64, tol: f64) -> bool {
        self.intervals().iter().any(|&(a, b)| a - tol <= x && x <= b + tol)
    }
}
