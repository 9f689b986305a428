//! Planar primitives shared by the floorplan model and the samplers.

use serde::{Deserialize, Serialize};

/// On-boundary tolerance in meters.
pub const GEOM_EPS: f64 = 1e-6;

/// A point on a floor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Location {
    pub x: f64,
    pub y: f64,
    pub floor: i32,
}

impl Location {
    pub const fn new(x: f64, y: f64, floor: i32) -> Self {
        Self { x, y, floor }
    }

    /// Euclidean distance in the plane, ignoring floors.
    pub fn planar_distance(&self, other: &Location) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Axis-aligned bounding rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub min_x: f64,
    pub min_y: f64,
    pub max_x: f64,
    pub max_y: f64,
}

impl Rect {
    pub fn around(points: &[[f64; 2]]) -> Self {
        let mut r = Rect {
            min_x: f64::INFINITY,
            min_y: f64::INFINITY,
            max_x: f64::NEG_INFINITY,
            max_y: f64::NEG_INFINITY,
        };
        for p in points {
            r.min_x = r.min_x.min(p[0]);
            r.min_y = r.min_y.min(p[1]);
            r.max_x = r.max_x.max(p[0]);
            r.max_y = r.max_y.max(p[1]);
        }
        r
    }

    /// Square of half-side `radius` centered at (x, y).
    pub fn square(x: f64, y: f64, radius: f64) -> Self {
        Rect {
            min_x: x - radius,
            min_y: y - radius,
            max_x: x + radius,
            max_y: y + radius,
        }
    }

    pub fn contains(&self, x: f64, y: f64, eps: f64) -> bool {
        x >= self.min_x - eps && x <= self.max_x + eps && y >= self.min_y - eps && y <= self.max_y + eps
    }

    /// Intersection, or `None` when the rectangles are disjoint.
    pub fn intersect(&self, other: &Rect) -> Option<Rect> {
        let r = Rect {
            min_x: self.min_x.max(other.min_x),
            min_y: self.min_y.max(other.min_y),
            max_x: self.max_x.min(other.max_x),
            max_y: self.max_y.min(other.max_y),
        };
        (r.min_x <= r.max_x && r.min_y <= r.max_y).then_some(r)
    }

    pub fn width(&self) -> f64 {
        self.max_x - self.min_x
    }

    pub fn height(&self) -> f64 {
        self.max_y - self.min_y
    }
}

/// Distance from (px, py) to the segment a-b.
pub fn point_segment_distance(px: f64, py: f64, a: [f64; 2], b: [f64; 2]) -> f64 {
    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
    let len2 = dx * dx + dy * dy;
    if len2 == 0.0 {
        return (px - a[0]).hypot(py - a[1]);
    }
    let t = (((px - a[0]) * dx + (py - a[1]) * dy) / len2).clamp(0.0, 1.0);
    (px - (a[0] + t * dx)).hypot(py - (a[1] + t * dy))
}

/// True when the point lies on the polygon boundary within `eps`.
pub fn on_boundary(polygon: &[[f64; 2]], x: f64, y: f64, eps: f64) -> bool {
    let n = polygon.len();
    (0..n).any(|i| point_segment_distance(x, y, polygon[i], polygon[(i + 1) % n]) <= eps)
}

/// Crossing-number test; points on the boundary count as inside.
pub fn polygon_contains(polygon: &[[f64; 2]], x: f64, y: f64, eps: f64) -> bool {
    if on_boundary(polygon, x, y, eps) {
        return true;
    }
    let n = polygon.len();
    let mut inside = false;
    let mut j = n - 1;
    for i in 0..n {
        let (xi, yi) = (polygon[i][0], polygon[i][1]);
        let (xj, yj) = (polygon[j][0], polygon[j][1]);
        if (yi > y) != (yj > y) && x < (xj - xi) * (y - yi) / (yj - yi) + xi {
            inside = !inside;
        }
        j = i;
    }
    inside
}

pub fn polygon_area(polygon: &[[f64; 2]]) -> f64 {
    let n = polygon.len();
    let mut acc = 0.0;
    for i in 0..n {
        let (a, b) = (polygon[i], polygon[(i + 1) % n]);
        acc += a[0] * b[1] - b[0] * a[1];
    }
    acc.abs() / 2.0
}

pub fn polygon_centroid(polygon: &[[f64; 2]]) -> [f64; 2] {
    let n = polygon.len();
    let (mut cx, mut cy, mut a2) = (0.0, 0.0, 0.0);
    for i in 0..n {
        let (p, q) = (polygon[i], polygon[(i + 1) % n]);
        let cross = p[0] * q[1] - q[0] * p[1];
        a2 += cross;
        cx += (p[0] + q[0]) * cross;
        cy += (p[1] + q[1]) * cross;
    }
    [cx / (3.0 * a2), cy / (3.0 * a2)]
}

fn orientation(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

fn segments_intersect(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]) -> bool {
    let (o1, o2) = (orientation(a, b, c), orientation(a, b, d));
    let (o3, o4) = (orientation(c, d, a), orientation(c, d, b));
    if ((o1 > 0.0 && o2 < 0.0) || (o1 < 0.0 && o2 > 0.0)) && ((o3 > 0.0 && o4 < 0.0) || (o3 < 0.0 && o4 > 0.0)) {
        return true;
    }
    // collinear touching
    let touch = |p: [f64; 2], q: [f64; 2], r: [f64; 2]| point_segment_distance(r[0], r[1], p, q) <= GEOM_EPS;
    touch(a, b, c) || touch(a, b, d) || touch(c, d, a) || touch(c, d, b)
}

/// True when no two non-adjacent edges of the closed polygon touch.
pub fn is_simple_polygon(polygon: &[[f64; 2]]) -> bool {
    let n = polygon.len();
    if n < 3 {
        return false;
    }
    for i in 0..n {
        let (a, b) = (polygon[i], polygon[(i + 1) % n]);
        for j in (i + 1)..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                continue;
            }
            let (c, d) = (polygon[j], polygon[(j + 1) % n]);
            if segments_intersect(a, b, c, d) {
                return false;
            }
        }
    }
    true
}
