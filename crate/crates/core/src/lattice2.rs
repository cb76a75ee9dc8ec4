//! Rank-two sublattices of ℤ² and their cosets.
//!
//! A linear lattice is stored in column Hermite form: generators
//! `(d₁, 0)` and `(e, d₂)` with `d₁, d₂ > 0` and `0 ≤ e < d₁`. An affine
//! lattice adds a basepoint reduced into `[0, d₁) × [0, d₂)` along those
//! generators. Both forms are unique, so derived equality is lattice
//! equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intnf::{self, IntMat};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    pub fn dot(self, o: Point) -> i64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point) -> i64 {
        self.x * o.y - self.y * o.x
    }

    /// Counterclockwise quarter turn, `(x, y) ↦ (−y, x)`.
    pub fn rot90(self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn content(self) -> i64 {
        intnf::gcd(self.x as i128, self.y as i128) as i64
    }

    pub fn is_primitive(self) -> bool {
        self.content() == 1
    }
}

impl From<[i64; 2]> for Point {
    fn from([x, y]: [i64; 2]) -> Self {
        Point { x, y }
    }
}

impl From<Point> for [i64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl From<(i64, i64)> for Point {
    fn from((x, y): (i64, i64)) -> Self {
        Point { x, y }
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

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl Mul<Point> for i64 {
    type Output = Point;
    fn mul(self, p: Point) -> Point {
        Point::new(self * p.x, self * p.y)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A full-rank sublattice of ℤ² in column Hermite form.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "LatticeRepr", into = "LatticeRepr")]
pub struct LinearLattice2 {
    d1: i64,
    e: i64,
    d2: i64,
}

fn narrow(v: i128) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow("lattice coordinates"))
}

impl LinearLattice2 {
    pub const Z2: LinearLattice2 = LinearLattice2 { d1: 1, e: 0, d2: 1 };

    /// The lattice generated by `gens`; errors unless they have rank two.
    pub fn span(gens: &[Point]) -> Result<Self> {
        // Euclid on the y-coordinates: `pivot` ends up with y = gcd of all
        // y's, and every eliminated vector lands on the x-axis.
        let mut pivot = (0i128, 0i128);
        let mut axis = 0i128;
        for g in gens {
            let mut v = (g.x as i128, g.y as i128);
            while v.1 != 0 {
                let q = pivot.1.div_euclid(v.1);
                pivot = (pivot.0 - q * v.0, pivot.1 - q * v.1);
                std::mem::swap(&mut pivot, &mut v);
            }
            axis = intnf::gcd(axis, v.0);
        }
        if pivot.1 == 0 || axis == 0 {
            return Err(Error::DegenerateSpan(format!(
                "generators {gens:?} do not span a rank-two lattice"
            )));
        }
        if pivot.1 < 0 {
            pivot = (-pivot.0, -pivot.1);
        }
        Ok(LinearLattice2 {
            d1: narrow(axis)?,
            e: narrow(pivot.0.rem_euclid(axis))?,
            d2: narrow(pivot.1)?,
        })
    }

    /// Generators `(d₁, 0)` and `(e, d₂)`.
    pub fn basis(&self) -> [Point; 2] {
        [Point::new(self.d1, 0), Point::new(self.e, self.d2)]
    }

    /// `[[d₁, e], [0, d₂]]`, generators as columns.
    pub fn basis_matrix(&self) -> IntMat {
        IntMat::from_rows([[self.d1 as i128, self.e as i128], [0, self.d2 as i128]])
            .expect("2x2")
    }

    /// `[ℤ² : L]`.
    pub fn index(&self) -> u64 {
        (self.d1 * self.d2) as u64
    }

    pub fn contains(&self, v: Point) -> bool {
        self.coordinates(v).is_some()
    }

    /// Coordinates of `v` in the basis, if `v ∈ L`.
    pub fn coordinates(&self, v: Point) -> Option<Point> {
        if v.y % self.d2 != 0 {
            return None;
        }
        let b = v.y / self.d2;
        let rest = v.x - b * self.e;
        if rest % self.d1 != 0 {
            return None;
        }
        Some(Point::new(rest / self.d1, b))
    }

    /// Inverse of [`Self::coordinates`].
    pub fn from_coordinates(&self, c: Point) -> Point {
        Point::new(c.x * self.d1 + c.y * self.e, c.y * self.d2)
    }

    pub fn is_sublattice_of(&self, sup: &LinearLattice2) -> bool {
        self.basis().iter().all(|&g| sup.contains(g))
    }

    /// Image under the quarter turn `(x, y) ↦ (−y, x)`.
    pub fn rotate90(&self) -> LinearLattice2 {
        let [g1, g2] = self.basis();
        LinearLattice2::span(&[g1.rot90(), g2.rot90()]).expect("rotation preserves rank")
    }

    /// Inverse quarter turn.
    pub fn rotate_back(&self) -> LinearLattice2 {
        self.rotate90().rotate90().rotate90()
    }

    /// True when `ℤ²/L` is cyclic, i.e. the first invariant factor is 1.
    pub fn has_cyclic_quotient(&self) -> bool {
        intnf::gcd(intnf::gcd(self.d1 as i128, self.e as i128), self.d2 as i128) == 1
    }

    /// Representative of `p` in `[0, d₁) × [0, d₂)` modulo `L`.
    pub fn reduce(&self, p: Point) -> Point {
        let b = p.y.div_euclid(self.d2);
        let p = p - b * Point::new(self.e, self.d2);
        Point::new(p.x.rem_euclid(self.d1), p.y)
    }
}

impl fmt::Debug for LinearLattice2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L[[{}, {}], [0, {}]]", self.d1, self.e, self.d2)
    }
}

/// `[sup : sub]`; errors unless `sub ⊆ sup`.
pub fn lattice_index(sub: &LinearLattice2, sup: &LinearLattice2) -> Result<u64> {
    if !sub.is_sublattice_of(sup) {
        return Err(Error::Domain(format!("{sub:?} is not contained in {sup:?}")));
    }
    Ok(sub.index() / sup.index())
}

/// All lattices between `l0` and ℤ², one per divisor `d` of `[ℤ² : l0]`,
/// sorted by `d = [N : l0]`.
///
/// Requires `ℤ²/l0` cyclic. An SNF of the basis matrix gives coordinates in
/// which `l0 = ⟨e₁, n·e₂⟩`; the lattice of index `d` over `l0` is then the
/// preimage of `⟨e₁, (n/d)·e₂⟩`.
pub fn intermediate_lattices(l0: &LinearLattice2) -> Result<Vec<LinearLattice2>> {
    if !l0.has_cyclic_quotient() {
        return Err(Error::Structure(format!(
            "ℤ²/{l0:?} is not cyclic, intermediate lattices are not indexed by divisors"
        )));
    }
    let s = intnf::snf(&l0.basis_matrix())?;
    let n = s.d[(1, 1)] as i64;
    debug_assert_eq!(s.d[(0, 0)], 1);
    // l0 = Q⁻¹·D·ℤ², and Q⁻¹ for a unimodular 2×2 is its adjugate over det.
    let det = s.q.det()? as i64;
    let (a, b, c, d) = (
        s.q[(0, 0)] as i64,
        s.q[(0, 1)] as i64,
        s.q[(1, 0)] as i64,
        s.q[(1, 1)] as i64,
    );
    let col1 = Point::new(d * det, -c * det);
    let col2 = Point::new(-b * det, a * det);
    let mut out = Vec::new();
    for k in divisors(n as u64) {
        let step = n / k as i64;
        out.push(LinearLattice2::span(&[col1, step * col2])?);
    }
    Ok(out)
}

/// Positive divisors in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut k = 1;
    while k * k <= n {
        if n.is_multiple_of(k) {
            small.push(k);
            if k * k != n {
                large.push(n / k);
            }
        }
        k += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// A coset `p + L` of a full-rank sublattice, in reduced form.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "LatticeRepr", into = "LatticeRepr")]
pub struct AffineLattice2 {
    basepoint: Point,
    linear: LinearLattice2,
}

impl AffineLattice2 {
    pub const Z2: AffineLattice2 = AffineLattice2 {
        basepoint: Point::ORIGIN,
        linear: LinearLattice2::Z2,
    };

    pub fn new(basepoint: Point, linear: LinearLattice2) -> Self {
        AffineLattice2 {
            basepoint: linear.reduce(basepoint),
            linear,
        }
    }

    pub fn basepoint(&self) -> Point {
        self.basepoint
    }

    pub fn linear(&self) -> &LinearLattice2 {
        &self.linear
    }

    pub fn contains(&self, v: Point) -> bool {
        self.linear.contains(v - self.basepoint)
    }

    pub fn index_in_z2(&self) -> u64 {
        self.linear.index()
    }

    /// Coordinates of `v` in the frame `basepoint + basis`, if `v` lies on
    /// the lattice.
    pub fn coordinates(&self, v: Point) -> Option<Point> {
        self.linear.coordinates(v - self.basepoint)
    }
}

impl From<LinearLattice2> for AffineLattice2 {
    fn from(linear: LinearLattice2) -> Self {
        AffineLattice2 {
            basepoint: Point::ORIGIN,
            linear,
        }
    }
}

impl fmt::Debug for AffineLattice2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} + {:?}", self.basepoint, self.linear)
    }
}

/// Smallest affine lattice containing `points`: the first point plus the
/// integer span of the differences.
pub fn affine_span(points: &[Point]) -> Result<AffineLattice2> {
    let Some(&p0) = points.first() else {
        return Err(Error::DegenerateSpan("no points".into()));
    };
    let diffs: Vec<Point> = points[1..].iter().map(|&q| q - p0).collect();
    Ok(AffineLattice2::new(p0, LinearLattice2::span(&diffs)?))
}

#[derive(Serialize, Deserialize)]
struct LatticeRepr {
    #[serde(default)]
    basepoint: Point,
    basis: [[i64; 2]; 2],
}

impl LatticeRepr {
    fn linear(&self) -> Result<LinearLattice2> {
        let [[a, b], [c, d]] = self.basis;
        LinearLattice2::span(&[Point::new(a, c), Point::new(b, d)])
    }
}

impl From<LinearLattice2> for LatticeRepr {
    fn from(l: LinearLattice2) -> Self {
        LatticeRepr {
            basepoint: Point::ORIGIN,
            basis: [[l.d1, l.e], [0, l.d2]],
        }
    }
}

impl From<AffineLattice2> for LatticeRepr {
    fn from(l: AffineLattice2) -> Self {
        LatticeRepr {
            basepoint: l.basepoint,
            ..l.linear.into()
        }
    }
}

impl TryFrom<LatticeRepr> for LinearLattice2 {
    type Error = Error;
    fn try_from(r: LatticeRepr) -> Result<Self> {
        if r.basepoint != Point::ORIGIN {
            return Err(Error::Argument("linear lattice with nonzero basepoint".into()));
        }
        r.linear()
    }
}

impl TryFrom<LatticeRepr> for AffineLattice2 {
    type Error = Error;
    fn try_from(r: LatticeRepr) -> Result<Self> {
        Ok(AffineLattice2::new(r.basepoint, r.linear()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point {
        Point::new(x, y)
    }

    fn span(gens: &[(i64, i64)]) -> LinearLattice2 {
        let g: Vec<Point> = gens.iter().map(|&t| t.into()).collect();
        LinearLattice2::span(&g).unwrap()
    }

    fn even() -> LinearLattice2 {
        span(&[(1, 1), (1, -1)])
    }

    #[test]
    fn affine_span_examples() {
        let z = affine_span(&[p(0, 0), p(1, 0), p(0, 1)]).unwrap();
        assert_eq!(z, AffineLattice2::Z2);

        let odd = affine_span(&[p(1, 0), p(0, 1), p(-1, 0), p(0, -1)]).unwrap();
        assert_eq!(odd.index_in_z2(), 2);
        assert_eq!(*odd.linear(), even());
        assert!(!odd.contains(p(0, 0)));
        assert!(odd.contains(p(1, 0)));
        assert!(odd.contains(p(-3, 4)));

        let e = affine_span(&[p(0, 0), p(2, 0), p(0, 2)]).unwrap();
        assert_eq!(e.basepoint(), p(0, 0));
        assert_eq!(e.index_in_z2(), 4);
        assert_eq!(*e.linear(), span(&[(2, 0), (0, 2)]));
    }

    #[test]
    fn degenerate_span() {
        assert!(matches!(
            affine_span(&[p(0, 0), p(1, 1), p(3, 3)]),
            Err(Error::DegenerateSpan(_))
        ));
        assert!(affine_span(&[p(4, 4)]).is_err());
        assert!(affine_span(&[]).is_err());
    }

    #[test]
    fn contains_everything_in_z2() {
        for x in -3..3 {
            for y in -3..3 {
                assert!(AffineLattice2::Z2.contains(p(x, y)));
            }
        }
    }

    #[test]
    fn indices() {
        assert_eq!(LinearLattice2::Z2.index(), 1);
        assert_eq!(even().index(), 2);
        let two = span(&[(2, 0), (0, 2)]);
        assert_eq!(lattice_index(&two, &LinearLattice2::Z2).unwrap(), 4);
        assert_eq!(lattice_index(&even(), &LinearLattice2::Z2).unwrap(), 2);
        assert_eq!(lattice_index(&even(), &even()).unwrap(), 1);
        assert!(matches!(
            lattice_index(&LinearLattice2::Z2, &even()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn rotation() {
        assert_eq!(LinearLattice2::Z2.rotate90(), LinearLattice2::Z2);
        assert_eq!(even().rotate90(), even());
        assert_eq!(span(&[(1, 0), (0, 3)]).rotate90(), span(&[(3, 0), (0, 1)]));
        let l = span(&[(3, 1), (1, 5)]);
        assert_eq!(l.rotate90().rotate_back(), l);
    }

    #[test]
    fn basepoint_reduction_is_canonical() {
        let l = span(&[(3, 1), (0, 2)]);
        let a = AffineLattice2::new(p(1, 1), l);
        let b = AffineLattice2::new(p(1, 1) + 5 * p(3, 1) - 7 * p(0, 2), l);
        assert_eq!(a, b);
    }

    #[test]
    fn intermediate_lattice_examples() {
        assert_eq!(
            intermediate_lattices(&LinearLattice2::Z2).unwrap(),
            vec![LinearLattice2::Z2]
        );
        assert_eq!(
            intermediate_lattices(&even()).unwrap(),
            vec![even(), LinearLattice2::Z2]
        );
        let l0 = span(&[(1, 0), (0, 6)]);
        let found = intermediate_lattices(&l0).unwrap();
        let idx: Vec<u64> = found
            .iter()
            .map(|n| lattice_index(&l0, n).unwrap())
            .collect();
        assert_eq!(idx, vec![1, 2, 3, 6]);
        for a in &found {
            for b in &found {
                let da = lattice_index(&l0, a).unwrap();
                let db = lattice_index(&l0, b).unwrap();
                assert_eq!(a.is_sublattice_of(b), db.is_multiple_of(da), "{a:?} {b:?}");
            }
        }
    }

    #[test]
    fn non_cyclic_quotient_rejected() {
        let l = span(&[(2, 0), (0, 2)]);
        assert!(matches!(intermediate_lattices(&l), Err(Error::Structure(_))));
    }

    #[test]
    fn divisor_list() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }

    #[test]
    fn json_form() {
        let odd = affine_span(&[p(1, 0), p(0, 1), p(-1, 0)]).unwrap();
        let s = serde_json::to_string(&odd).unwrap();
        assert_eq!(s, r#"{"basepoint":[1,0],"basis":[[2,1],[0,1]]}"#);
        let back: AffineLattice2 = serde_json::from_str(&s).unwrap();
        assert_eq!(back, odd);
        let lin: LinearLattice2 = serde_json::from_str(r#"{"basis":[[1,1],[1,-1]]}"#).unwrap();
        assert_eq!(lin, even());
    }
}
