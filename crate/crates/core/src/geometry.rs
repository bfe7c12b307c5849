//! Planar primitives shared by the validator, the lifting routines and the
//! solver.
//!
//! All degeneracy decisions (incidence, collinearity, perpendicularity) take
//! an explicit relative tolerance. Distances are compared against
//! `tol * scale`, where the scale is the longer of the two segments involved;
//! angles are compared through the normalized dot product, which is already
//! scale free.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Default relative tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    /// Counter-clockwise quarter turn.
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn unit(self) -> Point {
        let n = self.norm();
        Point::new(self.x / n, self.y / n)
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn from_angle(theta: f64) -> Point {
        Point::new(theta.cos(), theta.sin())
    }

    pub fn rotate(self, theta: f64) -> Point {
        let (s, c) = theta.sin_cos();
        Point::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn lerp(self, o: Point, t: f64) -> Point {
        self + (o - self) * t
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// A closed straight-line segment of positive length.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::Geometry(format!("non-finite segment {a} - {b}")));
        }
        if a == b {
            return Err(Error::Geometry(format!("zero-length segment at {a}")));
        }
        Ok(Self { a, b })
    }

    /// Builds a segment without the positive-length check. Used internally
    /// where the caller already reports degenerate segments separately.
    pub(crate) fn raw(a: Point, b: Point) -> Self {
        Self { a, b }
    }

    pub fn dir(&self) -> Point {
        self.b - self.a
    }

    pub fn len(&self) -> f64 {
        self.a.dist(self.b)
    }

    /// Parameter of the orthogonal projection of `p` onto the carrier line,
    /// 0 at `a` and 1 at `b`.
    pub fn project(&self, p: Point) -> f64 {
        let d = self.dir();
        (p - self.a).dot(d) / d.dot(d)
    }

    pub fn closest_point(&self, p: Point) -> Point {
        let t = self.project(p).clamp(0.0, 1.0);
        self.a.lerp(self.b, t)
    }

    pub fn dist_to_point(&self, p: Point) -> f64 {
        self.closest_point(p).dist(p)
    }

    /// Unsigned distance from `p` to the carrier line.
    pub fn line_dist(&self, p: Point) -> f64 {
        (self.dir().cross(p - self.a)).abs() / self.len()
    }

    pub fn midpoint(&self) -> Point {
        self.a.lerp(self.b, 0.5)
    }

    pub fn reversed(&self) -> Segment {
        Segment::raw(self.b, self.a)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CrossingKind {
    /// Proper crossing in the relative interiors of both segments.
    InteriorInterior,
    /// The segments meet at a single point that is an endpoint of at least
    /// one of them.
    EndpointTouch,
    /// Collinear segments sharing a sub-segment of positive length.
    Overlap,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CrossingEvent {
    pub point: Point,
    pub seg1: Segment,
    pub seg2: Segment,
    /// Angle between the carrier lines, in `[0, pi/2]`.
    pub angle: f64,
    pub kind: CrossingKind,
}

/// Angle in `[0, pi/2]` between the carrier lines of two direction vectors.
pub fn line_angle(u: Point, v: Point) -> f64 {
    u.cross(v).abs().atan2(u.dot(v).abs())
}

/// Classifies how two segments meet, if at all.
pub fn segment_intersection(s1: &Segment, s2: &Segment, tol: f64) -> Option<CrossingEvent> {
    let scale = s1.len().max(s2.len());
    let eps = tol * scale;
    let angle = line_angle(s1.dir(), s2.dir());
    let event = |point, kind| CrossingEvent { point, seg1: *s1, seg2: *s2, angle, kind };

    // Collinear: every endpoint lies on the other carrier line.
    let collinear = s1.line_dist(s2.a) <= eps
        && s1.line_dist(s2.b) <= eps
        && s2.line_dist(s1.a) <= eps
        && s2.line_dist(s1.b) <= eps;
    if collinear {
        let d = s1.dir().unit();
        let t = |p: Point| (p - s1.a).dot(d);
        let (lo1, hi1) = (0.0f64, s1.len());
        let (c, e) = (t(s2.a), t(s2.b));
        let (lo2, hi2) = if c <= e { (c, e) } else { (e, c) };
        let lo = lo1.max(lo2);
        let hi = hi1.min(hi2);
        if hi - lo > eps {
            let mid = s1.a + d * (0.5 * (lo + hi));
            return Some(event(mid, CrossingKind::Overlap));
        }
        if hi - lo >= -eps {
            let p = s1.a + d * (0.5 * (lo + hi));
            return Some(event(p, CrossingKind::EndpointTouch));
        }
        return None;
    }

    // Endpoint contact. Pick the lexicographically smallest contact point so
    // that the answer does not depend on argument order.
    let mut touch: Option<Point> = None;
    let mut consider = |p: Point, other: &Segment| {
        if other.dist_to_point(p) <= eps {
            touch = Some(match touch {
                Some(q) if (q.x, q.y) <= (p.x, p.y) => q,
                _ => p,
            });
        }
    };
    consider(s2.a, s1);
    consider(s2.b, s1);
    consider(s1.a, s2);
    consider(s1.b, s2);
    if let Some(p) = touch {
        return Some(event(p, CrossingKind::EndpointTouch));
    }

    let d1 = s1.dir();
    let d2 = s2.dir();
    let den = d1.cross(d2);
    if den == 0.0 {
        return None;
    }
    let w = s2.a - s1.a;
    let t = w.cross(d2) / den;
    let u = w.cross(d1) / den;
    if t > 0.0 && t < 1.0 && u > 0.0 && u < 1.0 {
        let p = s1.a + d1 * t;
        Some(event(p, CrossingKind::InteriorInterior))
    } else {
        None
    }
}

/// True when the carrier lines are perpendicular within `tol`: the dot
/// product of the direction vectors is at most `tol` times the product of
/// the segment lengths.
pub fn is_right_angle(e: &CrossingEvent, tol: f64) -> bool {
    let u = e.seg1.dir();
    let v = e.seg2.dir();
    u.dot(v).abs() <= tol * u.norm() * v.norm()
}

/// Obstacles for [`clearance_radius`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Feature {
    Point(Point),
    Segment(Segment),
}

impl Feature {
    pub fn dist(&self, p: Point) -> f64 {
        match self {
            Feature::Point(q) => q.dist(p),
            Feature::Segment(s) => s.dist_to_point(p),
        }
    }
}

/// Radius returned when there is nothing to keep clear of.
pub const DEFAULT_CLEARANCE: f64 = 1.0;

/// Half the distance from `p` to the nearest feature, so the open disk of
/// that radius around `p` meets none of them.
pub fn clearance_radius(p: Point, features: &[Feature]) -> Result<f64> {
    let mut best = f64::INFINITY;
    for f in features {
        let d = f.dist(p);
        if d == 0.0 {
            return Err(Error::PointOnFeature { x: p.x, y: p.y });
        }
        best = best.min(d);
    }
    if best.is_infinite() {
        Ok(DEFAULT_CLEARANCE)
    } else {
        Ok(best / 2.0)
    }
}

/// Normalizes an angle into `[0, 2*pi)`.
pub fn normalize_angle(theta: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let r = theta.rem_euclid(tau);
    if r >= tau {
        0.0
    } else {
        r
    }
}

/// Largest empty angular gap between the given ray directions (radians).
/// Returns `(start, width)`: the gap runs counter-clockwise from `start`.
/// With no rays the whole circle is free.
pub fn largest_gap(angles: &[f64]) -> (f64, f64) {
    if angles.is_empty() {
        return (0.0, std::f64::consts::TAU);
    }
    let mut a: Vec<f64> = angles.iter().map(|&t| normalize_angle(t)).collect();
    a.sort_by(f64::total_cmp);
    let mut best = (a[a.len() - 1], a[0] + std::f64::consts::TAU - a[a.len() - 1]);
    for w in a.windows(2) {
        let width = w[1] - w[0];
        if width > best.1 {
            best = (w[0], width);
        }
    }
    best
}

/// Distance from the origin to the part of `s` inside the wedge between
/// directions `d1` and `d2` (counter-clockwise, angle below pi).
pub fn wedge_distance(s: Segment, d1: Point, d2: Point) -> Option<f64> {
    let mut a = s.a;
    let mut b = s.b;
    for (side, flip) in [(d1, false), (d2, true)] {
        let f = |p: Point| if flip { p.cross(side) } else { side.cross(p) };
        let (fa, fb) = (f(a), f(b));
        if fa < 0.0 && fb < 0.0 {
            return None;
        }
        if fa < 0.0 {
            a = a.lerp(b, fa / (fa - fb));
        } else if fb < 0.0 {
            b = a.lerp(b, fa / (fa - fb));
        }
    }
    Some(Segment::raw(a, b).dist_to_point(Point::default()).min(a.norm()).min(b.norm()))
}
