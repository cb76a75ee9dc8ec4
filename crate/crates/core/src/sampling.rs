//! Seeded random inputs for property checks and benchmarks: integer
//! matrices, unimodular transforms, polygons, and affine lattice
//! automorphisms.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intnf::IntMat;
use crate::lattice2::Point;
use crate::polygon::{LatticePolygon, COORDINATE_BOUND};

/// Elementary operations per random unimodular matrix.
pub const MAX_ELEMENTARY_OPS: usize = 20;
/// Coefficient range of each elementary operation.
pub const ELEMENTARY_COEFF: i128 = 3;

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i128) -> IntMat {
    let data = (0..rows * cols).map(|_| rng.gen_range(-bound..=bound)).collect();
    IntMat::new(rows, cols, data).expect("nonempty shape")
}

/// Random matrix of the given shape whose first column cancels the row sums.
pub fn random_homogeneous_matrix<R: Rng>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    bound: i128,
) -> IntMat {
    let mut m = random_matrix(rng, rows, cols, bound);
    for i in 0..rows {
        m[(i, 0)] = -m.row(i)[1..].iter().sum::<i128>();
    }
    m
}

fn nonzero_coeff<R: Rng>(rng: &mut R) -> i128 {
    let c = rng.gen_range(1..=ELEMENTARY_COEFF);
    if rng.gen_bool(0.5) {
        c
    } else {
        -c
    }
}

/// `(U, U⁻¹)` for a product of up to [`MAX_ELEMENTARY_OPS`] elementary
/// row operations (transvections, swaps, negations).
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize) -> (IntMat, IntMat) {
    let mut u = IntMat::identity(n);
    let mut inv = IntMat::identity(n);
    for _ in 0..rng.gen_range(0..=MAX_ELEMENTARY_OPS) {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        match rng.gen_range(0..3) {
            0 if i != j => {
                let c = nonzero_coeff(rng);
                // (I + cE_ij)·U, inverse gains (I − cE_ij) on the right
                u.row_add(i, j, c).expect("small entries");
                inv.col_add(j, i, -c).expect("small entries");
            }
            1 => {
                u.swap_rows(i, j);
                inv.swap_cols(i, j);
            }
            _ => {
                u.negate_row(i).expect("small entries");
                for r in 0..n {
                    inv[(r, i)] = -inv[(r, i)];
                }
            }
        }
    }
    (u, inv)
}

/// `(P, P⁻¹)` with `P·𝟙 = 𝟙`: products of `I + c·v·wᵀ` with `w ⊥ 𝟙` and
/// `w·v = 0`, and of permutations.
pub fn random_homogeneous_unimodular<R: Rng>(rng: &mut R, n: usize) -> (IntMat, IntMat) {
    let mut p = IntMat::identity(n);
    let mut inv = IntMat::identity(n);
    if n < 2 {
        return (p, inv);
    }
    for _ in 0..rng.gen_range(0..=MAX_ELEMENTARY_OPS) {
        let mut idx: Vec<usize> = (0..n).collect();
        idx.shuffle(rng);
        let c = nonzero_coeff(rng);
        let (j, k) = (idx[0], idx[1]);
        // v, w as dense vectors; the factor is I + c·v·wᵀ, inverse I − c·v·wᵀ
        let mut v = vec![0i128; n];
        let mut w = vec![0i128; n];
        w[j] = 1;
        w[k] = -1;
        match rng.gen_range(0..3) {
            0 if n >= 3 => v[idx[2]] = 1,
            1 => {
                v[j] = 1;
                v[k] = 1;
            }
            _ => {
                p.swap_rows(j, k);
                inv.swap_cols(j, k);
                continue;
            }
        }
        let factor = |sign: i128| {
            let mut e = IntMat::identity(n);
            for r in 0..n {
                for s in 0..n {
                    e[(r, s)] += sign * c * v[r] * w[s];
                }
            }
            e
        };
        p = factor(1).checked_mul(&p).expect("small entries");
        inv = inv.checked_mul(&factor(-1)).expect("small entries");
    }
    (p, inv)
}

/// Convex hull of 3 to `max_points` uniform points in `[-bound, bound]²`,
/// retried until nondegenerate.
pub fn random_polygon<R: Rng>(rng: &mut R, bound: i64, max_points: usize) -> LatticePolygon {
    loop {
        let k = rng.gen_range(3..=max_points.max(3));
        let pts: Vec<Point> = (0..k)
            .map(|_| Point::new(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound)))
            .collect();
        if let Ok(p) = LatticePolygon::convex_hull(&pts) {
            return p;
        }
    }
}

/// `v ↦ A·v + b` with `A ∈ GL₂(ℤ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineMap {
    pub matrix: [[i64; 2]; 2],
    pub offset: Point,
}

impl AffineMap {
    /// `None` on `i64` overflow.
    pub fn checked_apply(&self, v: Point) -> Option<Point> {
        let [[a, b], [c, d]] = self.matrix;
        let x = a.checked_mul(v.x)?.checked_add(b.checked_mul(v.y)?)?;
        let y = c.checked_mul(v.x)?.checked_add(d.checked_mul(v.y)?)?;
        Some(Point::new(x.checked_add(self.offset.x)?, y.checked_add(self.offset.y)?))
    }

    pub fn apply(&self, v: Point) -> Point {
        self.checked_apply(v).expect("affine image overflows i64")
    }

    pub fn apply_polygon(&self, p: &LatticePolygon) -> Result<LatticePolygon> {
        let pts = p
            .vertices()
            .iter()
            .map(|&v| self.checked_apply(v))
            .collect::<Option<Vec<Point>>>()
            .ok_or(Error::Overflow("affine image"))?;
        LatticePolygon::new(&pts).map_err(Error::from)
    }
}

pub fn random_affine_unimodular<R: Rng>(rng: &mut R, offset_bound: i64) -> AffineMap {
    let (u, _) = random_unimodular(rng, 2);
    let e = |i, j| u[(i, j)] as i64;
    AffineMap {
        matrix: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]],
        offset: Point::new(
            rng.gen_range(-offset_bound..=offset_bound),
            rng.gen_range(-offset_bound..=offset_bound),
        ),
    }
}

/// A random affine unimodular map together with the image of `polygon`,
/// redrawn until the image fits the coordinate bound.
pub fn random_affine_image<R: Rng>(
    rng: &mut R,
    polygon: &LatticePolygon,
    offset_bound: i64,
) -> (AffineMap, LatticePolygon) {
    loop {
        let map = random_affine_unimodular(rng, offset_bound);
        let fits = map.matrix.iter().flatten().all(|e| e.abs() <= COORDINATE_BOUND);
        if !fits {
            continue;
        }
        if let Ok(image) = map.apply_polygon(polygon) {
            return (map, image);
        }
    }
}
