//! Convex lattice polygons: validation, facets, lattice point counts,
//! lattice width, and the classification of polygons without interior
//! lattice points.

use serde::{Deserialize, Serialize};

use crate::error::{invariant, Error, PolygonError, Result};
use crate::lattice2::{affine_span, AffineLattice2, LinearLattice2};

pub use crate::lattice2::Point;

/// Largest absolute coordinate accepted from user input.
pub const COORDINATE_BOUND: i64 = 10_000;

/// A strictly convex lattice polygon, vertices counterclockwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PolygonRepr", into = "PolygonRepr")]
pub struct LatticePolygon {
    vertices: Vec<Point>,
}

#[derive(Serialize, Deserialize)]
struct PolygonRepr {
    vertices: Vec<Point>,
}

impl TryFrom<PolygonRepr> for LatticePolygon {
    type Error = PolygonError;
    fn try_from(r: PolygonRepr) -> Result<Self, PolygonError> {
        LatticePolygon::new(&r.vertices)
    }
}

impl From<LatticePolygon> for PolygonRepr {
    fn from(p: LatticePolygon) -> Self {
        PolygonRepr { vertices: p.vertices }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Facet {
    pub index: usize,
    pub start: Point,
    pub end: Point,
    pub edge: Point,
    /// Number of lattice segments on the facet.
    pub length: u64,
    /// Primitive normal pointing into the polygon.
    pub normal: Point,
}

impl Facet {
    /// Primitive step along the facet, `edge / length`.
    pub fn direction(&self) -> Point {
        let l = self.length as i64;
        Point::new(self.edge.x / l, self.edge.y / l)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum InteriorClassification {
    NonEmptyInterior,
    WidthOne,
    TwicePrimitiveTriangle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeWidth {
    pub width: u64,
    /// Minimizing primitive functional, first nonzero coordinate positive.
    pub direction: Point,
}

/// Affine frame `v = origin + basis·c` taking normalized coordinates `c`
/// back to the original plane; basis vectors are the matrix columns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeFrame {
    pub origin: Point,
    pub basis: [[i64; 2]; 2],
}

impl LatticeFrame {
    pub fn apply(&self, c: Point) -> Point {
        let [[a, b], [c2, d]] = self.basis;
        self.origin + Point::new(a * c.x + b * c.y, c2 * c.x + d * c.y)
    }
}

fn turn(a: Point, b: Point, c: Point) -> i64 {
    (b - a).cross(c - b)
}

impl LatticePolygon {
    /// Validates user input against [`COORDINATE_BOUND`].
    ///
    /// Accepts either orientation; points lying in the middle of an edge are
    /// dropped.
    pub fn new(points: &[Point]) -> Result<Self, PolygonError> {
        if let Some(c) = points
            .iter()
            .flat_map(|p| [p.x, p.y])
            .find(|c| c.abs() > COORDINATE_BOUND)
        {
            return Err(PolygonError::CoordinateBound(c, COORDINATE_BOUND));
        }
        Self::validate_unbounded(points)
    }

    pub fn from_tuples(points: &[(i64, i64)]) -> Result<Self, PolygonError> {
        let pts: Vec<Point> = points.iter().map(|&t| t.into()).collect();
        Self::new(&pts)
    }

    pub(crate) fn validate_unbounded(points: &[Point]) -> Result<Self, PolygonError> {
        let mut pts: Vec<Point> = Vec::with_capacity(points.len());
        for &p in points {
            if pts.last() != Some(&p) {
                pts.push(p);
            }
        }
        while pts.len() > 1 && pts.first() == pts.last() {
            pts.pop();
        }
        let mut distinct = pts.clone();
        distinct.sort();
        distinct.dedup();
        if distinct.len() < 3 {
            return Err(PolygonError::TooFewVertices);
        }
        if affine_span(&distinct).is_err() {
            return Err(PolygonError::ZeroArea);
        }

        // Drop points in the middle of a straight run; a run that turns
        // back on itself means the boundary overlaps.
        let mut i = 0;
        let mut stable = 0;
        while stable < pts.len() {
            let n = pts.len();
            let (a, b, c) = (pts[(i + n - 1) % n], pts[i % n], pts[(i + 1) % n]);
            if turn(a, b, c) == 0 {
                if (b - a).dot(c - b) <= 0 {
                    return Err(PolygonError::SelfIntersecting);
                }
                pts.remove(i % n);
                stable = 0;
                if pts.len() < 3 {
                    return Err(PolygonError::ZeroArea);
                }
            } else {
                i += 1;
                stable += 1;
            }
            i %= pts.len();
        }

        let n = pts.len();
        let turns: Vec<i64> = (0..n)
            .map(|i| turn(pts[(i + n - 1) % n], pts[i], pts[(i + 1) % n]))
            .collect();
        let area2: i64 = (0..n).map(|i| pts[i].cross(pts[(i + 1) % n])).sum();
        let sign = area2.signum();
        if sign == 0 {
            return Err(PolygonError::SelfIntersecting);
        }
        if let Some(k) = turns.iter().position(|t| t.signum() != sign) {
            return Err(PolygonError::NonConvex(pts[k].into()));
        }
        // Locally convex and winding once: no vertex may lie beyond any
        // edge line.
        for i in 0..n {
            let (a, b) = (pts[i], pts[(i + 1) % n]);
            if pts.iter().any(|&v| (b - a).cross(v - a).signum() == -sign) {
                return Err(PolygonError::SelfIntersecting);
            }
        }
        if sign < 0 {
            pts[1..].reverse();
        }
        Ok(LatticePolygon { vertices: pts })
    }

    /// Convex hull of arbitrary points (monotone chain), subject to the
    /// same bound and degeneracy checks as [`Self::new`].
    pub fn convex_hull(points: &[Point]) -> Result<Self, PolygonError> {
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        if pts.len() < 3 {
            return Err(PolygonError::TooFewVertices);
        }
        let mut hull: Vec<Point> = Vec::with_capacity(2 * pts.len());
        for pass in [pts.clone(), pts.iter().rev().copied().collect()] {
            let start = hull.len();
            for p in pass {
                while hull.len() >= start + 2
                    && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0
                {
                    hull.pop();
                }
                hull.push(p);
            }
            hull.pop();
        }
        Self::new(&hull)
    }

    /// Image of an already-valid polygon under a map known to preserve
    /// orientation and convexity.
    fn from_ccw(vertices: Vec<Point>) -> Self {
        debug_assert!(LatticePolygon::validate_unbounded(&vertices).as_ref() == Ok(&LatticePolygon { vertices: vertices.clone() }));
        LatticePolygon { vertices }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn facets(&self) -> Vec<Facet> {
        let n = self.vertices.len();
        (0..n)
            .map(|j| {
                let start = self.vertices[j];
                let end = self.vertices[(j + 1) % n];
                let edge = end - start;
                let length = edge.content();
                let dir = Point::new(edge.x / length, edge.y / length);
                Facet {
                    index: j,
                    start,
                    end,
                    edge,
                    length: length as u64,
                    normal: dir.rot90(),
                }
            })
            .collect()
    }

    /// Lattice points on the boundary, counterclockwise from the first
    /// vertex, each facet contributing its start point and the points
    /// strictly inside it.
    pub fn boundary_points(&self) -> Vec<Point> {
        self.facets()
            .iter()
            .flat_map(|f| {
                let dir = f.direction();
                (0..f.length as i64).map(move |t| f.start + t * dir)
            })
            .collect()
    }

    pub fn boundary_count(&self) -> u64 {
        self.facets().iter().map(|f| f.length).sum()
    }

    pub fn bounding_box(&self) -> (Point, Point) {
        let xs = self.vertices.iter().map(|p| p.x);
        let ys = self.vertices.iter().map(|p| p.y);
        (
            Point::new(xs.clone().min().unwrap(), ys.clone().min().unwrap()),
            Point::new(xs.max().unwrap(), ys.max().unwrap()),
        )
    }

    pub fn strictly_contains(&self, p: Point) -> bool {
        let n = self.vertices.len();
        (0..n).all(|j| {
            let a = self.vertices[j];
            (self.vertices[(j + 1) % n] - a).cross(p - a) > 0
        })
    }

    /// Lattice points strictly inside, sorted by `(x, y)`.
    pub fn interior_points(&self) -> Vec<Point> {
        let (lo, hi) = self.bounding_box();
        let mut out = Vec::new();
        for x in lo.x + 1..hi.x {
            for y in lo.y + 1..hi.y {
                let p = Point::new(x, y);
                if self.strictly_contains(p) {
                    out.push(p);
                }
            }
        }
        out
    }

    pub fn interior_points_in_lattice(&self, lattice: &AffineLattice2) -> Vec<Point> {
        self.interior_points()
            .into_iter()
            .filter(|&p| lattice.contains(p))
            .collect()
    }

    /// Shoelace sum, twice the Euclidean area.
    pub fn twice_area(&self) -> u64 {
        let n = self.vertices.len();
        let s: i64 = (0..n)
            .map(|i| self.vertices[i].cross(self.vertices[(i + 1) % n]))
            .sum();
        s as u64
    }

    fn require_vertices_in(&self, lattice: &AffineLattice2) -> Result<()> {
        match self.vertices.iter().find(|&&v| !lattice.contains(v)) {
            Some(v) => Err(Error::Domain(format!("vertex {v:?} is not in {lattice:?}"))),
            None => Ok(()),
        }
    }

    /// Checks `2·Area = 2·|Δ°∩L| + |∂Δ∩L| − 2` with area measured in units
    /// of the fundamental domain of `lattice`.
    pub fn verify_pick(&self, lattice: &AffineLattice2) -> Result<bool> {
        self.require_vertices_in(lattice)?;
        let idx = lattice.index_in_z2();
        let area = self.twice_area();
        if !area.is_multiple_of(idx) {
            return Ok(false);
        }
        let interior = self.interior_points_in_lattice(lattice).len() as u64;
        let boundary = self
            .boundary_points()
            .into_iter()
            .filter(|&p| lattice.contains(p))
            .count() as u64;
        Ok(area / idx + 2 == 2 * interior + boundary)
    }

    /// The polygon in the coordinates of `lattice`'s frame, where the
    /// lattice becomes ℤ².
    pub fn normalize_to_lattice(
        &self,
        lattice: &AffineLattice2,
    ) -> Result<(LatticePolygon, LatticeFrame)> {
        self.require_vertices_in(lattice)?;
        let vertices = self
            .vertices
            .iter()
            .map(|&v| lattice.coordinates(v).expect("checked above"))
            .collect();
        let [g1, g2] = lattice.linear().basis();
        let frame = LatticeFrame {
            origin: lattice.basepoint(),
            basis: [[g1.x, g2.x], [g1.y, g2.y]],
        };
        Ok((LatticePolygon::from_ccw(vertices), frame))
    }

    /// Range of the functional `n` over the polygon.
    pub fn width_along(&self, n: Point) -> u64 {
        let vals = self.vertices.iter().map(|&v| n.dot(v));
        (vals.clone().max().unwrap() - vals.min().unwrap()) as u64
    }

    /// Lattice width over ℤ².
    ///
    /// With `u`, `w` the edges at the first vertex and `U` the width along
    /// some known functional, every optimal `n` has `|n·u|, |n·w| ≤ U`
    /// because the polygon contains the triangle on `u`, `w`. Since
    /// `n ↦ (n·u, n·w)` is injective the candidates are finite.
    pub fn lattice_width_z2(&self) -> LatticeWidth {
        let mut best = self
            .facets()
            .iter()
            .map(|f| f.normal)
            .chain([Point::new(1, 0), Point::new(0, 1)])
            .map(|n| candidate(self, n))
            .min()
            .expect("nonempty");
        let bound = best.0 as i64;
        let v = &self.vertices;
        let u = v[1] - v[0];
        let w = v[v.len() - 1] - v[0];
        let det = u.cross(w);
        debug_assert!(det > 0);
        for s in -bound..=bound {
            for t in -bound..=bound {
                let nx = w.y * s - u.y * t;
                let ny = u.x * t - w.x * s;
                if nx % det != 0 || ny % det != 0 {
                    continue;
                }
                let n = Point::new(nx / det, ny / det);
                if n == Point::ORIGIN || !n.is_primitive() {
                    continue;
                }
                best = best.min(candidate(self, n));
            }
        }
        LatticeWidth {
            width: best.0,
            direction: best.1,
        }
    }

    /// Lattice width by scanning every primitive functional with sup-norm
    /// at most `max_norm`. Exact whenever the optimum lies in that box.
    pub fn lattice_width_brute_force(&self, max_norm: i64) -> LatticeWidth {
        let mut best: Option<(u64, Point)> = None;
        for x in 0..=max_norm {
            for y in -max_norm..=max_norm {
                let n = Point::new(x, y);
                if (x == 0 && y <= 0) || !n.is_primitive() {
                    continue;
                }
                let c = (self.width_along(n), n);
                if best.is_none_or(|b| c < b) {
                    best = Some(c);
                }
            }
        }
        let (width, direction) = best.expect("max_norm >= 1");
        LatticeWidth { width, direction }
    }

    /// Lattice width with respect to `lattice`, i.e. over the dual of the
    /// lattice; the returned direction is in the lattice's basis frame.
    pub fn lattice_width(&self, lattice: &LinearLattice2) -> Result<LatticeWidth> {
        let affine = AffineLattice2::new(self.vertices[0], *lattice);
        let (normalized, _) = self.normalize_to_lattice(&affine)?;
        Ok(normalized.lattice_width_z2())
    }

    /// Whether `(Δ, ℤ²)` is equivalent to the standard triangle
    /// `(0,0), (d,0), (0,d)`: a triangle with all sides of lattice length
    /// `d` whose boundary points affinely generate ℤ².
    pub fn is_standard_triangle_multiple(&self, d: u64) -> bool {
        if self.vertices.len() != 3 || self.facets().iter().any(|f| f.length != d) {
            return false;
        }
        matches!(affine_span(&self.boundary_points()), Ok(m) if m.index_in_z2() == 1)
    }

    /// Classifies the polygon by its interior points in `lattice`; when
    /// there are none, the polygon must have lattice width one or be twice a
    /// primitive triangle (both measured in `lattice`).
    pub fn classify_interior_empty(
        &self,
        lattice: &AffineLattice2,
    ) -> Result<InteriorClassification> {
        self.require_vertices_in(lattice)?;
        if !self.interior_points_in_lattice(lattice).is_empty() {
            return Ok(InteriorClassification::NonEmptyInterior);
        }
        let (normalized, _) = self.normalize_to_lattice(lattice)?;
        if normalized.lattice_width_z2().width == 1 {
            return Ok(InteriorClassification::WidthOne);
        }
        if normalized.is_standard_triangle_multiple(2) {
            return Ok(InteriorClassification::TwicePrimitiveTriangle);
        }
        Err(invariant(format!(
            "{:?} has no interior points of {lattice:?} but is neither width one nor twice a primitive triangle",
            self.vertices
        )))
    }
}

/// Orders functionals by width, then by the sign-normalized vector.
fn candidate(p: &LatticePolygon, n: Point) -> (u64, Point) {
    let n = if n.x < 0 || (n.x == 0 && n.y < 0) { -n } else { n };
    (p.width_along(n), n)
}
