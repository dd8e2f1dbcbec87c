//! Plane geometry shared by the texture engine and the chart renderer.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dist(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Row-major 2x3 affine map `(x, y) -> (a x + c y + e, b x + d y + f)`,
/// the same parameter order as SVG's `matrix(a b c d e f)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Affine {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
}

impl Affine {
    pub const IDENTITY: Affine = Affine { a: 1.0, b: 0.0, c: 0.0, d: 1.0, e: 0.0, f: 0.0 };

    pub fn rotate_deg(deg: f64) -> Self {
        let (s, c) = deg.to_radians().sin_cos();
        Affine { a: c, b: s, c: -s, d: c, e: 0.0, f: 0.0 }
    }

    /// Shear that keeps the x axis fixed and tilts the y axis so the two
    /// meet at `angle_deg`.
    pub fn crossing_shear(angle_deg: f64) -> Self {
        let t = angle_deg.to_radians();
        Affine { a: 1.0, b: 0.0, c: t.cos() / t.sin(), d: 1.0, e: 0.0, f: 0.0 }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn then_after(self, other: Affine) -> Affine {
        Affine {
            a: self.a * other.a + self.c * other.b,
            b: self.b * other.a + self.d * other.b,
            c: self.a * other.c + self.c * other.d,
            d: self.b * other.c + self.d * other.d,
            e: self.a * other.e + self.c * other.f + self.e,
            f: self.b * other.e + self.d * other.f + self.f,
        }
    }

    pub fn apply(&self, p: Point) -> Point {
        Point::new(self.a * p.x + self.c * p.y + self.e, self.b * p.x + self.d * p.y + self.f)
    }

    pub fn inverse(&self) -> Option<Affine> {
        let det = self.a * self.d - self.b * self.c;
        if det.abs() < 1e-15 {
            return None;
        }
        let (a, b, c, d) = (self.d / det, -self.b / det, -self.c / det, self.a / det);
        Some(Affine { a, b, c, d, e: -(a * self.e + c * self.f), f: -(b * self.e + d * self.f) })
    }

    pub fn is_identity(&self) -> bool {
        let i = Affine::IDENTITY;
        [self.a - i.a, self.b, self.c, self.d - i.d, self.e, self.f].iter().all(|v| v.abs() < 1e-12)
    }
}

/// Signed area, positive for counter-clockwise rings in a y-up frame
/// (clockwise on screen).
pub fn signed_area(ring: &[Point]) -> f64 {
    let n = ring.len();
    (0..n)
        .map(|i| {
            let (p, q) = (ring[i], ring[(i + 1) % n]);
            p.x * q.y - q.x * p.y
        })
        .sum::<f64>()
        / 2.0
}

pub fn centroid(ring: &[Point]) -> Point {
    let a = signed_area(ring);
    if a.abs() < 1e-12 {
        let n = ring.len().max(1) as f64;
        return Point::new(ring.iter().map(|p| p.x).sum::<f64>() / n, ring.iter().map(|p| p.y).sum::<f64>() / n);
    }
    let n = ring.len();
    let (mut cx, mut cy) = (0.0, 0.0);
    for i in 0..n {
        let (p, q) = (ring[i], ring[(i + 1) % n]);
        let cross = p.x * q.y - q.x * p.y;
        cx += (p.x + q.x) * cross;
        cy += (p.y + q.y) * cross;
    }
    Point::new(cx / (6.0 * a), cy / (6.0 * a))
}

/// Nonzero winding number of `p` with respect to `ring`.
pub fn winding(ring: &[Point], p: Point) -> i32 {
    let n = ring.len();
    let mut w = 0;
    for i in 0..n {
        let (a, b) = (ring[i], ring[(i + 1) % n]);
        let side = (b.x - a.x) * (p.y - a.y) - (p.x - a.x) * (b.y - a.y);
        if a.y <= p.y {
            if b.y > p.y && side > 0.0 {
                w += 1;
            }
        } else if b.y <= p.y && side < 0.0 {
            w -= 1;
        }
    }
    w
}

pub fn contains(ring: &[Point], p: Point) -> bool {
    winding(ring, p) != 0
}

fn segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let len2 = dx * dx + dy * dy;
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = (((p.x - a.x) * dx + (p.y - a.y) * dy) / len2).clamp(0.0, 1.0);
    p.dist(Point::new(a.x + t * dx, a.y + t * dy))
}

pub fn boundary_distance(ring: &[Point], p: Point) -> f64 {
    let n = ring.len();
    (0..n).map(|i| segment_distance(p, ring[i], ring[(i + 1) % n])).fold(f64::INFINITY, f64::min)
}

/// Radius of the largest circle inside a simple polygon. Grid search
/// followed by local refinement; accurate to well under a thousandth of the
/// polygon's extent.
pub fn polygon_inradius(ring: &[Point]) -> f64 {
    if ring.len() < 3 {
        return 0.0;
    }
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in ring {
        x0 = x0.min(p.x);
        y0 = y0.min(p.y);
        x1 = x1.max(p.x);
        y1 = y1.max(p.y);
    }
    let score = |p: Point| if contains(ring, p) { boundary_distance(ring, p) } else { 0.0 };
    const STEPS: usize = 24;
    let mut step = ((x1 - x0).max(y1 - y0)) / STEPS as f64;
    let mut best = (centroid(ring), score(centroid(ring)));
    for i in 0..=STEPS {
        for j in 0..=STEPS {
            let p = Point::new(x0 + (x1 - x0) * i as f64 / STEPS as f64, y0 + (y1 - y0) * j as f64 / STEPS as f64);
            let s = score(p);
            if s > best.1 {
                best = (p, s);
            }
        }
    }
    while step > (x1 - x0).max(y1 - y0) * 1e-5 {
        let mut improved = false;
        for (dx, dy) in [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0), (0.7, 0.7), (-0.7, 0.7), (0.7, -0.7), (-0.7, -0.7)] {
            let p = Point::new(best.0.x + dx * step, best.0.y + dy * step);
            let s = score(p);
            if s > best.1 {
                best = (p, s);
                improved = true;
            }
        }
        if !improved {
            step /= 2.0;
        }
    }
    best.1
}

/// A closed mark outline in canvas units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Shape {
    Polygon { points: Vec<Point> },
    /// Pie sector. Angles are measured clockwise from 12 o'clock.
    Sector { center: Point, radius: f64, start_deg: f64, sweep_deg: f64 },
}

impl Shape {
    pub fn rect(x: f64, y: f64, w: f64, h: f64) -> Shape {
        Shape::Polygon {
            points: vec![Point::new(x, y), Point::new(x + w, y), Point::new(x + w, y + h), Point::new(x, y + h)],
        }
    }

    pub fn inradius(&self) -> f64 {
        match self {
            Shape::Polygon { points } => polygon_inradius(points),
            Shape::Sector { radius, sweep_deg, .. } => sector_inradius(*radius, *sweep_deg),
        }
    }

    /// A point well inside the shape, used for label placement.
    pub fn anchor(&self) -> Point {
        match self {
            Shape::Polygon { points } => centroid(points),
            Shape::Sector { center, radius, start_deg, sweep_deg } => {
                if *sweep_deg >= 360.0 - 1e-9 {
                    return *center;
                }
                point_on_circle(*center, radius * 0.6, start_deg + sweep_deg / 2.0)
            }
        }
    }
}

pub fn sector_inradius(radius: f64, sweep_deg: f64) -> f64 {
    if sweep_deg <= 0.0 {
        return 0.0;
    }
    if sweep_deg >= 180.0 {
        return radius / 2.0;
    }
    let s = (sweep_deg.to_radians() / 2.0).sin();
    radius * s / (1.0 + s)
}

/// Point on a circle at a clock angle (0 = 12 o'clock, clockwise on screen).
pub fn point_on_circle(center: Point, radius: f64, clock_deg: f64) -> Point {
    let (s, c) = clock_deg.to_radians().sin_cos();
    Point::new(center.x + radius * s, center.y - radius * c)
}
