use super::matrix::{gcd, IntMat};
use crate::error::{Error, Result};

/// Calls `f` on every increasing `k`-subset of `0..n`.
fn for_each_subset(n: usize, k: usize, f: &mut impl FnMut(&[usize]) -> Result<()>) -> Result<()> {
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx)?;
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return Ok(());
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Greatest common divisor of all `k×k` minors (0 if they all vanish).
///
/// The product of the first `k` invariant factors equals this value for
/// `k ≤ rank`, which makes it an elimination-free check on [`super::snf`].
pub fn minor_gcd(x: &IntMat, k: usize) -> Result<i128> {
    if k == 0 || k > x.rows().min(x.cols()) {
        return Err(Error::Argument(format!(
            "minor size {k} out of range for a {}x{} matrix",
            x.rows(),
            x.cols()
        )));
    }
    let mut g = 0i128;
    for_each_subset(x.rows(), k, &mut |rows| {
        for_each_subset(x.cols(), k, &mut |cols| {
            if g != 1 {
                g = gcd(g, x.submatrix(rows, cols).det()?);
            }
            Ok(())
        })
    })?;
    Ok(g)
}
