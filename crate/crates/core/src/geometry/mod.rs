//! Convex 2D geometry: polygons, oriented boxes, half-space forms, signed
//! distance and the dual separation certificate.
//!
//! All coordinates are meters, all angles radians. Polygons are counter-
//! clockwise and strictly convex.

mod certificate;
mod distance;
pub mod sample;

pub use certificate::{dual_certificate, CertificateResiduals, DualCertificate};
pub use distance::{intersects, point_segment_distance, signed_distance};

use std::f64::consts::{PI, TAU};
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance for geometric predicates (containment, unit norms).
pub const GEOM_EPS: f64 = 1e-9;

/// A 2D point or vector in meters.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// Scalar cross product (z component of the 3D cross product).
    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn dist(self, other: Vec2) -> f64 {
        (self - other).norm()
    }

    pub fn dist_sq(self, other: Vec2) -> f64 {
        (self - other).norm_sq()
    }

    /// Counter-clockwise perpendicular: rotates the vector by +90 degrees.
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    pub fn rotate(self, angle: f64) -> Vec2 {
        let (s, c) = angle.sin_cos();
        Vec2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn normalized(self) -> Option<Vec2> {
        let n = self.norm();
        if n > 0.0 && n.is_finite() {
            Some(self / n)
        } else {
            None
        }
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn lerp(self, other: Vec2, t: f64) -> Vec2 {
        self + (other - self) * t
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

impl Div<f64> for Vec2 {
    type Output = Vec2;
    fn div(self, s: f64) -> Vec2 {
        Vec2::new(self.x / s, self.y / s)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// Wraps an angle to the half-open interval (-pi, pi].
pub fn wrap_angle(a: f64) -> f64 {
    let mut r = a % TAU;
    if r <= -PI {
        r += TAU;
    } else if r > PI {
        r -= TAU;
    }
    r
}

/// A strictly convex polygon with counter-clockwise vertices.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvexPolygon {
    vertices: Vec<Vec2>,
}

impl ConvexPolygon {
    /// Builds a polygon from vertices, removing duplicate and collinear
    /// vertices and normalizing orientation to counter-clockwise.
    pub fn new(vertices: Vec<Vec2>) -> Result<Self> {
        for v in &vertices {
            if !v.is_finite() {
                return Err(Error::InvalidInput("polygon vertex is not finite".into()));
            }
        }
        let mut verts = dedupe_vertices(&vertices);
        if signed_area(&verts) < 0.0 {
            verts.reverse();
        }
        verts = remove_collinear(&verts);
        if verts.len() < 3 {
            return Err(Error::InvalidInput(format!(
                "polygon degenerates to {} vertices after cleanup",
                verts.len()
            )));
        }
        // Strict convexity: every consecutive edge pair turns left.
        let n = verts.len();
        for i in 0..n {
            let a = verts[i];
            let b = verts[(i + 1) % n];
            let c = verts[(i + 2) % n];
            if (b - a).cross(c - b) <= 0.0 {
                return Err(Error::InvalidInput(
                    "polygon is not strictly convex".into(),
                ));
            }
        }
        Ok(ConvexPolygon { vertices: verts })
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Directed edges as (start, end) pairs in counter-clockwise order.
    pub fn edges(&self) -> impl Iterator<Item = (Vec2, Vec2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn centroid(&self) -> Vec2 {
        let mut c = Vec2::ZERO;
        for v in &self.vertices {
            c = c + *v;
        }
        c / self.vertices.len() as f64
    }

    pub fn translated(&self, d: Vec2) -> ConvexPolygon {
        ConvexPolygon {
            vertices: self.vertices.iter().map(|v| *v + d).collect(),
        }
    }

    /// Rigid transform: rotation by `angle` about the origin, then translation.
    pub fn transformed(&self, translation: Vec2, angle: f64) -> ConvexPolygon {
        ConvexPolygon {
            vertices: self
                .vertices
                .iter()
                .map(|v| v.rotate(angle) + translation)
                .collect(),
        }
    }

    /// Vertex with the largest projection onto `dir`, and its index.
    pub fn support(&self, dir: Vec2) -> (usize, Vec2) {
        let mut best = 0;
        let mut best_dot = f64::NEG_INFINITY;
        for (i, v) in self.vertices.iter().enumerate() {
            let d = v.dot(dir);
            if d > best_dot {
                best_dot = d;
                best = i;
            }
        }
        (best, self.vertices[best])
    }

    pub fn contains_point(&self, p: Vec2, tol: f64) -> bool {
        self.edges().all(|(a, b)| (b - a).cross(p - a) >= -tol)
    }

    /// Returns the polygon grown by `margin` along each edge normal.
    /// Only meaningful for small margins; corners are mitered.
    pub fn inflated(&self, margin: f64) -> Result<ConvexPolygon> {
        let hs = to_halfspace(self)?;
        let grown = HalfspaceForm {
            normals: hs.normals.clone(),
            offsets: hs.offsets.iter().map(|o| o + margin).collect(),
        };
        ConvexPolygon::new(grown.vertices()?)
    }
}

impl<'de> Deserialize<'de> for ConvexPolygon {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        #[derive(Deserialize)]
        struct Raw {
            vertices: Vec<Vec2>,
        }
        let raw = Raw::deserialize(deserializer)?;
        ConvexPolygon::new(raw.vertices).map_err(serde::de::Error::custom)
    }
}

fn dedupe_vertices(vertices: &[Vec2]) -> Vec<Vec2> {
    let mut out: Vec<Vec2> = Vec::with_capacity(vertices.len());
    for &v in vertices {
        if out.last().is_none_or(|last| last.dist(v) > 1e-12) {
            out.push(v);
        }
    }
    if out.len() > 1 && out[0].dist(*out.last().unwrap()) <= 1e-12 {
        out.pop();
    }
    out
}

fn remove_collinear(vertices: &[Vec2]) -> Vec<Vec2> {
    let n = vertices.len();
    if n < 3 {
        return vertices.to_vec();
    }
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let prev = vertices[(i + n - 1) % n];
        let cur = vertices[i];
        let next = vertices[(i + 1) % n];
        let e1 = cur - prev;
        let e2 = next - cur;
        let scale = e1.norm() * e2.norm();
        if e1.cross(e2).abs() > 1e-12 * scale.max(1e-12) {
            out.push(cur);
        }
    }
    out
}

fn signed_area(vertices: &[Vec2]) -> f64 {
    let n = vertices.len();
    let mut a = 0.0;
    for i in 0..n {
        a += vertices[i].cross(vertices[(i + 1) % n]);
    }
    a * 0.5
}

/// An oriented rectangle: `length` extends along the heading, `width` across.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrientedBox {
    pub center: Vec2,
    pub width: f64,
    pub length: f64,
    pub heading: f64,
}

impl OrientedBox {
    pub fn new(center: Vec2, width: f64, length: f64, heading: f64) -> Result<Self> {
        if !(width > 0.0 && length > 0.0 && width.is_finite() && length.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "box dimensions must be positive, got {width} x {length}"
            )));
        }
        if !center.is_finite() || !heading.is_finite() {
            return Err(Error::InvalidInput("box pose is not finite".into()));
        }
        Ok(OrientedBox {
            center,
            width,
            length,
            heading: wrap_angle(heading),
        })
    }

    /// Corners in counter-clockwise order starting at the front-right.
    pub fn corners(&self) -> [Vec2; 4] {
        let fwd = Vec2::new(self.heading.cos(), self.heading.sin());
        let left = fwd.perp();
        let hl = 0.5 * self.length;
        let hw = 0.5 * self.width;
        [
            self.center + fwd * hl - left * hw,
            self.center + fwd * hl + left * hw,
            self.center - fwd * hl + left * hw,
            self.center - fwd * hl - left * hw,
        ]
    }

    /// The two corners on the heading side.
    pub fn front_corners(&self) -> [Vec2; 2] {
        let c = self.corners();
        [c[0], c[1]]
    }

    /// The two corners opposite the heading.
    pub fn rear_corners(&self) -> [Vec2; 2] {
        let c = self.corners();
        [c[2], c[3]]
    }

    pub fn polygon(&self) -> ConvexPolygon {
        ConvexPolygon::new(self.corners().to_vec()).expect("box corners form a convex polygon")
    }
}

/// Rectangle of the given dimensions centered at `center`, rotated by `heading`.
pub fn body_polygon(center: Vec2, heading: f64, width: f64, length: f64) -> Result<ConvexPolygon> {
    if !center.is_finite() || !heading.is_finite() {
        return Err(Error::InvalidInput(
            "body pose components must be finite".into(),
        ));
    }
    Ok(OrientedBox::new(center, width, length, heading)?.polygon())
}

/// A bounded polytope `{ p : normals[i] . p <= offsets[i] }` with unit normals.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HalfspaceForm {
    pub normals: Vec<Vec2>,
    pub offsets: Vec<f64>,
}

impl HalfspaceForm {
    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    pub fn contains(&self, p: Vec2, tol: f64) -> bool {
        self.normals
            .iter()
            .zip(&self.offsets)
            .all(|(n, o)| n.dot(p) <= o + tol)
    }

    /// True iff the normals positively span the plane, which for a non-empty
    /// polytope is equivalent to boundedness.
    pub fn is_bounded(&self) -> bool {
        if self.normals.len() < 3 {
            return false;
        }
        let mut angles: Vec<f64> = self.normals.iter().map(|n| n.angle()).collect();
        angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let n = angles.len();
        let mut max_gap: f64 = 0.0;
        for i in 0..n {
            let next = if i + 1 == n {
                angles[0] + TAU
            } else {
                angles[i + 1]
            };
            max_gap = max_gap.max(next - angles[i]);
        }
        max_gap < PI - 1e-12
    }

    /// Enumerates the vertices of the polytope in counter-clockwise order.
    pub fn vertices(&self) -> Result<Vec<Vec2>> {
        if !self.is_bounded() {
            return Err(Error::InvalidInput(
                "half-space form describes an unbounded polytope".into(),
            ));
        }
        let m = self.normals.len();
        let mut pts: Vec<Vec2> = Vec::new();
        for i in 0..m {
            for j in (i + 1)..m {
                let ni = self.normals[i];
                let nj = self.normals[j];
                let det = ni.cross(nj);
                if det.abs() < 1e-12 {
                    continue;
                }
                // Solve ni.p = oi, nj.p = oj.
                let oi = self.offsets[i];
                let oj = self.offsets[j];
                let p = Vec2::new(
                    (oi * nj.y - oj * ni.y) / det,
                    (oj * ni.x - oi * nj.x) / det,
                );
                if self.contains(p, 1e-7) {
                    pts.push(p);
                }
            }
        }
        // Dedupe.
        let mut uniq: Vec<Vec2> = Vec::new();
        for p in pts {
            if uniq.iter().all(|q| q.dist(p) > 1e-7) {
                uniq.push(p);
            }
        }
        if uniq.len() < 3 {
            return Err(Error::InvalidInput(
                "half-space intersection has fewer than 3 vertices".into(),
            ));
        }
        let mut c = Vec2::ZERO;
        for p in &uniq {
            c = c + *p;
        }
        c = c / uniq.len() as f64;
        uniq.sort_by(|a, b| {
            (*a - c)
                .angle()
                .partial_cmp(&(*b - c).angle())
                .unwrap()
                .then(a.x.partial_cmp(&b.x).unwrap())
        });
        Ok(uniq)
    }

    /// Indices of constraints active at `p` within `tol`.
    pub fn active_at(&self, p: Vec2, tol: f64) -> Vec<usize> {
        self.normals
            .iter()
            .zip(&self.offsets)
            .enumerate()
            .filter(|(_, (n, o))| (n.dot(p) - **o).abs() <= tol)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Converts a convex polygon to its half-space representation, one unit-normal
/// inequality per edge.
pub fn to_halfspace(poly: &ConvexPolygon) -> Result<HalfspaceForm> {
    let mut normals = Vec::with_capacity(poly.len());
    let mut offsets = Vec::with_capacity(poly.len());
    for (a, b) in poly.edges() {
        let edge = b - a;
        // Outward normal of a counter-clockwise edge.
        let n = Vec2::new(edge.y, -edge.x)
            .normalized()
            .ok_or_else(|| Error::InvalidInput("degenerate polygon edge".into()))?;
        normals.push(n);
        offsets.push(n.dot(a));
    }
    let form = HalfspaceForm { normals, offsets };
    for v in poly.vertices() {
        if !form.contains(*v, GEOM_EPS) {
            return Err(Error::InvalidInput(
                "polygon vertices violate their own half-space form".into(),
            ));
        }
    }
    Ok(form)
}
