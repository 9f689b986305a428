use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
#[error("invalid configuration: {0}")]
pub struct ConfigError(pub String);

/// Everything the generator needs; the output is a pure function of this value.
///
/// Defaults are desk scale: one floor of 27 partitions, 200 objects over two hours.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimConfig {
    pub floors: u32,
    /// Bands of rooms per floor; every two bands share a corridor.
    pub room_rows: u32,
    pub rooms_per_row: u32,
    pub room_width: f64,
    pub room_depth: f64,
    pub corridor_width: f64,
    /// Each corridor is cut into this many partitions.
    pub corridor_segments: u32,
    /// Connect neighbouring rooms pairwise, (0, 1), (2, 3), ..., with a door.
    pub adjacent_room_doors: bool,
    /// Position of a room's corridor door along its wall, as a fraction of the room width.
    pub door_offset: f64,
    pub staircase_length: f64,

    pub horizon: f64,
    pub min_lifespan: f64,
    pub dwell: [f64; 2],
    pub report_period: f64,
    pub expiry: f64,
    pub v_max: f64,
    /// Walking speed range as fractions of `v_max`, redrawn per straight segment.
    pub speed: [f64; 2],
    pub dropout: f64,
    pub offset_radius: f64,
    /// Fraction of an injected object's records that receive an offset.
    pub offset_fraction: f64,

    pub objects: u32,
    pub instances: u32,
    pub injected_per_instance: u32,
    pub segment: [f64; 2],
    /// Length of each query interval, placed at random inside the horizon; the whole horizon when unset.
    pub query_interval: Option<f64>,
    pub seed: u64,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            floors: 1,
            room_rows: 4,
            rooms_per_row: 5,
            room_width: 30.0,
            room_depth: 30.0,
            corridor_width: 5.0,
            corridor_segments: 3,
            adjacent_room_doors: true,
            door_offset: 0.5,
            staircase_length: 20.0,
            horizon: 7_200.0,
            min_lifespan: 3_600.0,
            dwell: [0.0, 480.0],
            report_period: 10.0,
            expiry: 5.0,
            v_max: 1.4,
            speed: [0.6, 0.75],
            dropout: 0.10,
            offset_radius: 1.0,
            offset_fraction: 0.5,
            objects: 200,
            instances: 20,
            injected_per_instance: 10,
            segment: [500.0, 1_800.0],
            query_interval: None,
            seed: 1,
        }
    }
}

impl SimConfig {
    /// Full-day, five-floor setting with 141 partitions per floor and 4,000 objects.
    pub fn full_scale() -> Self {
        SimConfig {
            floors: 5,
            room_rows: 8,
            rooms_per_row: 16,
            horizon: 86_400.0,
            objects: 4_000,
            ..SimConfig::default()
        }
    }

    pub fn corridors(&self) -> u32 {
        self.room_rows.div_ceil(2)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let err = |m: &str| Err(ConfigError(m.to_string()));
        let positive = [
            ("room_width", self.room_width),
            ("room_depth", self.room_depth),
            ("corridor_width", self.corridor_width),
            ("horizon", self.horizon),
            ("report_period", self.report_period),
            ("expiry", self.expiry),
            ("v_max", self.v_max),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(ConfigError(format!("{name} must be positive, got {v}")));
            }
        }
        if self.floors == 0 || self.room_rows == 0 || self.rooms_per_row == 0 || self.corridor_segments == 0 {
            return err("floors, room_rows, rooms_per_row and corridor_segments must be at least 1");
        }
        if self.corridor_segments > self.rooms_per_row {
            return err("corridor_segments cannot exceed rooms_per_row");
        }
        if !(0.0..=1.0).contains(&self.door_offset) {
            return err("door_offset must lie in [0, 1]");
        }
        if !(self.staircase_length >= 0.0 && self.staircase_length.is_finite()) {
            return err("staircase_length must be non-negative");
        }
        if self.expiry >= self.report_period {
            return err("expiry must be shorter than report_period");
        }
        if !(self.min_lifespan > 0.0 && self.min_lifespan <= self.horizon) {
            return err("min_lifespan must lie in (0, horizon]");
        }
        if !(0.0 <= self.dwell[0] && self.dwell[0] <= self.dwell[1]) {
            return err("dwell must be a non-negative range");
        }
        if !(0.0 < self.speed[0] && self.speed[0] <= self.speed[1] && self.speed[1] <= 1.0) {
            return err("speed fractions must satisfy 0 < low <= high <= 1");
        }
        if !(0.0..1.0).contains(&self.dropout) {
            return err("dropout must lie in [0, 1)");
        }
        if !(self.offset_radius >= 0.0) || !(0.0..=1.0).contains(&self.offset_fraction) {
            return err("offset_radius must be non-negative and offset_fraction in [0, 1]");
        }
        if !(0.0 < self.segment[0] && self.segment[0] <= self.segment[1]) {
            return err("segment must be a positive range");
        }
        if self.instances > self.objects {
            return err("instances cannot exceed objects");
        }
        if let Some(len) = self.query_interval {
            if !(len > 0.0 && len <= self.horizon) {
                return err("query_interval must lie in (0, horizon]");
            }
        }
        Ok(())
    }
}
