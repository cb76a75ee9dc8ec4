use serde::{Deserialize, Serialize};

use super::matrix::IntMat;
use crate::error::{invariant, Result};

/// Smith normal form `D` of `X` with unimodular certificates `Q`, `P`
/// satisfying `Q·X = D·P`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnfResult {
    #[serde(rename = "Q")]
    pub q: IntMat,
    #[serde(rename = "D")]
    pub d: IntMat,
    #[serde(rename = "P")]
    pub p: IntMat,
}

impl SnfResult {
    pub fn invariant_factors(&self) -> Vec<i128> {
        diagonal(&self.d).take_while(|&x| x != 0).collect()
    }

    pub fn rank(&self) -> usize {
        diagonal(&self.d).take_while(|&x| x != 0).count()
    }
}

fn diagonal(m: &IntMat) -> impl Iterator<Item = i128> + '_ {
    (0..m.rows().min(m.cols())).map(move |i| m[(i, i)])
}

/// True iff `d` is diagonal with leading positive entries forming a
/// divisibility chain, followed only by zeros.
pub fn is_snf(d: &IntMat) -> bool {
    for i in 0..d.rows() {
        for j in 0..d.cols() {
            if i != j && d[(i, j)] != 0 {
                return false;
            }
        }
    }
    let diag: Vec<i128> = diagonal(d).collect();
    let r = diag.iter().take_while(|&&x| x != 0).count();
    if diag[r..].iter().any(|&x| x != 0) {
        return false;
    }
    diag[..r].iter().all(|&x| x > 0) && diag[..r].windows(2).all(|w| w[1] % w[0] == 0)
}

/// Row operations are applied to `d` and `q`; column operations to `d`,
/// with the inverse operation applied to the rows of `p` so that
/// `q·X = d·p` holds after every step.
struct Reducer {
    q: IntMat,
    d: IntMat,
    p: IntMat,
}

impl Reducer {
    fn row_add(&mut self, target: usize, src: usize, c: i128) -> Result<()> {
        self.d.row_add(target, src, c)?;
        self.q.row_add(target, src, c)
    }

    fn col_add(&mut self, target: usize, src: usize, c: i128) -> Result<()> {
        self.d.col_add(target, src, c)?;
        self.p.row_add(src, target, -c)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.q.swap_rows(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.p.swap_rows(a, b);
    }

    /// Nonzero entry of least absolute value in the trailing block,
    /// first in row-major order among ties.
    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(i128, usize, usize)> = None;
        for i in t..self.d.rows() {
            for j in t..self.d.cols() {
                let a = self.d[(i, j)].abs();
                if a != 0 && best.is_none_or(|(b, _, _)| a < b) {
                    best = Some((a, i, j));
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    fn reduce(&mut self) -> Result<()> {
        let (s, l) = (self.d.rows(), self.d.cols());
        for t in 0..s.min(l) {
            let Some((pi, pj)) = self.min_entry(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let pivot = self.d[(t, t)];
                for i in t + 1..s {
                    let a = self.d[(i, t)];
                    if a != 0 {
                        self.row_add(i, t, -a.div_euclid(pivot))?;
                    }
                }
                if let Some(i) = min_nonzero((t + 1..s).map(|i| (i, self.d[(i, t)]))) {
                    self.swap_rows(t, i);
                    continue;
                }
                for j in t + 1..l {
                    let a = self.d[(t, j)];
                    if a != 0 {
                        self.col_add(j, t, -a.div_euclid(pivot))?;
                    }
                }
                if let Some(j) = min_nonzero((t + 1..l).map(|j| (j, self.d[(t, j)]))) {
                    self.swap_cols(t, j);
                    continue;
                }
                let bad_row = (t + 1..s)
                    .find(|&i| (t + 1..l).any(|j| self.d[(i, j)] % pivot != 0));
                match bad_row {
                    Some(i) => self.row_add(t, i, 1)?,
                    None => break,
                }
            }
        }
        for i in 0..s.min(l) {
            if self.d[(i, i)] < 0 {
                self.d.negate_row(i)?;
                self.q.negate_row(i)?;
            }
        }
        Ok(())
    }
}

fn min_nonzero(entries: impl Iterator<Item = (usize, i128)>) -> Option<usize> {
    entries
        .filter(|&(_, a)| a != 0)
        .min_by_key(|&(k, a)| (a.abs(), k))
        .map(|(k, _)| k)
}

/// Smith normal form with certificates.
///
/// Pivots on the nonzero entry of least absolute value (row-major ties),
/// so the certificates are deterministic though not canonical; only `D`
/// is unique.
pub fn snf(x: &IntMat) -> Result<SnfResult> {
    let mut r = Reducer {
        q: IntMat::identity(x.rows()),
        d: x.clone(),
        p: IntMat::identity(x.cols()),
    };
    r.reduce()?;
    let out = SnfResult {
        q: r.q,
        d: r.d,
        p: r.p,
    };
    debug_assert!(is_snf(&out.d));
    if out.q.checked_mul(x)? != out.d.checked_mul(&out.p)? {
        return Err(invariant("SNF certificate does not reconstruct the input"));
    }
    Ok(out)
}

pub fn invariant_factors(x: &IntMat) -> Result<Vec<i128>> {
    Ok(snf(x)?.invariant_factors())
}
