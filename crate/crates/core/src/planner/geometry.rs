use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn distance_squared(&self, other: &Point) -> f64 {
        let (dx, dy) = (self.x - other.x, self.y - other.y);
        dx * dx + dy * dy
    }

    /// Moves from `self` toward `target` by at most `max_step`.
    pub fn steer(&self, target: &Point, max_step: f64) -> Point {
        let d = self.distance(target);
        if d <= max_step {
            *target
        } else {
            let f = max_step / d;
            Point::new(self.x + f * (target.x - self.x), self.y + f * (target.y - self.y))
        }
    }
}

/// Obstacle footprint in the planning plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Disc {
    pub center: Point,
    /// Cylinder radius plus its buffer, m.
    pub radius: f64,
}

impl Disc {
    pub fn contains(&self, p: &Point) -> bool {
        self.center.distance(p) < self.radius
    }
}

/// Distance from `p` to the closed segment `a`–`b`.
pub fn point_segment_distance(p: &Point, a: &Point, b: &Point) -> f64 {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let len2 = dx * dx + dy * dy;
    if len2 == 0.0 {
        return p.distance(a);
    }
    let t = (((p.x - a.x) * dx + (p.y - a.y) * dy) / len2).clamp(0.0, 1.0);
    p.distance(&Point::new(a.x + t * dx, a.y + t * dy))
}

/// True unless some disc center lies strictly closer to the segment than the
/// disc radius. Grazing contact at exactly the radius is allowed.
pub fn collision_free(a: &Point, b: &Point, discs: &[Disc]) -> bool {
    discs
        .iter()
        .all(|d| point_segment_distance(&d.center, a, b) >= d.radius)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disc(x: f64, y: f64, r: f64) -> Disc {
        Disc {
            center: Point::new(x, y),
            radius: r,
        }
    }

    #[test]
    fn far_segment_is_free() {
        let discs = [disc(500.0, 500.0, 50.0)];
        assert!(collision_free(&Point::new(0.0, 0.0), &Point::new(100.0, 0.0), &discs));
    }

    #[test]
    fn segment_through_center_collides() {
        let discs = [disc(50.0, 0.0, 1.0)];
        assert!(!collision_free(&Point::new(0.0, 0.0), &Point::new(100.0, 0.0), &discs));
    }

    #[test]
    fn tangent_segment_is_free() {
        let discs = [disc(50.0, 10.0, 10.0)];
        assert!(collision_free(&Point::new(0.0, 0.0), &Point::new(100.0, 0.0), &discs));
        let discs = [disc(50.0, 10.0, 10.0 + 1e-9)];
        assert!(!collision_free(&Point::new(0.0, 0.0), &Point::new(100.0, 0.0), &discs));
    }

    #[test]
    fn endpoint_distance_used_beyond_segment() {
        // closest point of the closed segment is the endpoint (100, 0)
        let discs = [disc(110.0, 0.0, 9.0)];
        assert!(collision_free(&Point::new(0.0, 0.0), &Point::new(100.0, 0.0), &discs));
        let discs = [disc(110.0, 0.0, 11.0)];
        assert!(!collision_free(&Point::new(0.0, 0.0), &Point::new(100.0, 0.0), &discs));
    }

    #[test]
    fn degenerate_segment_is_a_point_check() {
        let discs = [disc(0.0, 0.0, 5.0)];
        assert!(!collision_free(&Point::new(1.0, 1.0), &Point::new(1.0, 1.0), &discs));
        assert!(collision_free(&Point::new(10.0, 0.0), &Point::new(10.0, 0.0), &discs));
    }

    #[test]
    fn steer_limits_step() {
        let a = Point::new(0.0, 0.0);
        let s = a.steer(&Point::new(30.0, 40.0), 10.0);
        assert!((s.x - 6.0).abs() < 1e-12 && (s.y - 8.0).abs() < 1e-12);
        assert_eq!(a.steer(&Point::new(3.0, 4.0), 10.0), Point::new(3.0, 4.0));
    }
}
