//! Smith normal form for matrices with zero row sums under the action of
//! `GL_s(ℤ) × GL^h_l(ℤ)`, where `GL^h_l(ℤ)` fixes the all-ones vector.
//!
//! A matrix `A` with `A·𝟙 = 0` is in homogeneous Smith normal form (HSNF)
//! when dropping its first column leaves a matrix in Smith normal form. The
//! first column is then forced to be minus the sum of the others, so the
//! superdiagonal of `A` carries the invariant factors.

use serde::{Deserialize, Serialize};

use super::matrix::{sub, IntMat};
use super::smith::{is_snf, snf};
use crate::error::{invariant, Error, Result};

/// HSNF `A` of `X` with certificates satisfying `Q·X = A·P`, `P·𝟙 = 𝟙`,
/// and first row of `P` equal to `e₁ᵀ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HsnfResult {
    #[serde(rename = "Q")]
    pub q: IntMat,
    #[serde(rename = "A")]
    pub a: IntMat,
    #[serde(rename = "P")]
    pub p: IntMat,
}

impl HsnfResult {
    /// Entries `A[i][i+1]`.
    pub fn superdiagonal(&self) -> Vec<i128> {
        superdiagonal(&self.a)
    }
}

pub fn superdiagonal(a: &IntMat) -> Vec<i128> {
    (0..a.rows().min(a.cols().saturating_sub(1)))
        .map(|i| a[(i, i + 1)])
        .collect()
}

pub fn is_hsnf(a: &IntMat) -> bool {
    if !a.is_homogeneous() {
        return false;
    }
    match a.without_first_column() {
        Some(rest) => is_snf(&rest),
        // a single homogeneous column is zero
        None => true,
    }
}

/// Homogeneous Smith normal form.
///
/// Takes the SNF `Q·X'·P'⁻¹` of `X` with its first column erased, sets
/// `u = (I − P')·𝟙`, and uses `P = [[1, 0], [u, P']]`.
pub fn hsnf(x: &IntMat) -> Result<HsnfResult> {
    let sums = x.row_sums()?;
    if sums.iter().any(|&s| s != 0) {
        return Err(Error::Domain(format!(
            "HSNF needs zero row sums, got {sums:?}"
        )));
    }
    let Some(rest) = x.without_first_column() else {
        return Ok(HsnfResult {
            q: IntMat::identity(x.rows()),
            a: x.clone(),
            p: IntMat::identity(1),
        });
    };
    let s = snf(&rest)?;
    let l = x.cols();

    let mut p = IntMat::zeros(l, l);
    p[(0, 0)] = 1;
    for i in 1..l {
        let mut u = 1i128;
        for j in 1..l {
            p[(i, j)] = s.p[(i - 1, j - 1)];
            u = sub(u, p[(i, j)])?;
        }
        p[(i, 0)] = u;
    }

    let mut a = IntMat::zeros(x.rows(), l);
    for i in 0..x.rows() {
        for j in 1..l {
            a[(i, j)] = s.d[(i, j - 1)];
        }
        a[(i, 0)] = -a.row(i)[1..].iter().sum::<i128>();
    }

    let out = HsnfResult { q: s.q, a, p };
    if out.q.checked_mul(x)? != out.a.checked_mul(&out.p)? {
        return Err(invariant("HSNF certificate does not reconstruct the input"));
    }
    Ok(out)
}
