use std::fmt;

use serde::{Deserialize, Serialize};

/// Index `w` of the sampling time `t_o + w * dt`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GridTime(pub i64);

impl GridTime {
    pub const NEG_INFINITY: GridTime = GridTime(i64::MIN / 4);

    pub fn offset(self, steps: i64) -> GridTime {
        GridTime(self.0 + steps)
    }
}

impl fmt::Display for GridTime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ts{}", self.0)
    }
}

/// Global sampling grid shared by all objects.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplingGrid {
    pub origin: f64,
    pub dt: f64,
}

impl Default for SamplingGrid {
    fn default() -> Self {
        SamplingGrid { origin: 0.0, dt: 10.0 }
    }
}

const SNAP: f64 = 1e-9;

impl SamplingGrid {
    pub fn new(origin: f64, dt: f64) -> Self {
        assert!(dt > 0.0, "sampling interval must be positive");
        SamplingGrid { origin, dt }
    }

    pub fn time(&self, w: GridTime) -> f64 {
        self.origin + w.0 as f64 * self.dt
    }

    /// First grid time at or after `t`.
    pub fn ceil(&self, t: f64) -> GridTime {
        GridTime(((t - self.origin) / self.dt - SNAP).ceil() as i64)
    }

    /// Last grid time at or before `t`.
    pub fn floor(&self, t: f64) -> GridTime {
        GridTime(((t - self.origin) / self.dt + SNAP).floor() as i64)
    }

    /// Grid times inside the closed interval `[t0, t1]`, possibly empty.
    pub fn span(&self, t0: f64, t1: f64) -> Option<(GridTime, GridTime)> {
        let (a, b) = (self.ceil(t0), self.floor(t1));
        (a <= b).then_some((a, b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ceil_floor_span() {
        let g = SamplingGrid::default();
        assert_eq!(g.ceil(100.0), GridTime(10));
        assert_eq!(g.ceil(100.5), GridTime(11));
        assert_eq!(g.floor(105.0), GridTime(10));
        assert_eq!(g.span(100.0, 105.0), Some((GridTime(10), GridTime(10))));
        assert_eq!(g.span(101.0, 106.0), None);
        assert_eq!(g.time(GridTime(3)), 30.0);
    }
}
