use std::fmt;
use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) fn add(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or(Error::Overflow("addition"))
}

pub(crate) fn sub(a: i128, b: i128) -> Result<i128> {
    a.checked_sub(b).ok_or(Error::Overflow("subtraction"))
}

pub(crate) fn mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow("multiplication"))
}

/// `a + c * b`, checked.
pub(crate) fn add_mul(a: i128, c: i128, b: i128) -> Result<i128> {
    add(a, mul(c, b)?)
}

pub(crate) fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Dense integer matrix, row-major, with exact checked arithmetic.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatrixRepr", into = "MatrixRepr")]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<i128>>,
}

impl TryFrom<MatrixRepr> for IntMat {
    type Error = Error;

    fn try_from(repr: MatrixRepr) -> Result<Self> {
        if repr.entries.len() != repr.rows {
            return Err(Error::Argument(format!(
                "\"rows\" is {} but {} entry rows were given",
                repr.rows,
                repr.entries.len()
            )));
        }
        let m = IntMat::from_rows(repr.entries)?;
        if m.cols != repr.cols {
            return Err(Error::Argument(format!(
                "\"cols\" is {} but entry rows have length {}",
                repr.cols, m.cols
            )));
        }
        Ok(m)
    }
}

impl From<IntMat> for MatrixRepr {
    fn from(m: IntMat) -> Self {
        MatrixRepr {
            rows: m.rows,
            cols: m.cols,
            entries: m.to_rows(),
        }
    }
}

impl IntMat {
    pub fn new(rows: usize, cols: usize, data: Vec<i128>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Argument(format!(
                "matrix must be at least 1x1, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::Argument(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(IntMat { rows, cols, data })
    }

    pub fn from_rows<R: AsRef<[i128]>>(rows: impl IntoIterator<Item = R>) -> Result<Self> {
        let mut data = Vec::new();
        let mut n_rows = 0;
        let mut n_cols = None;
        for row in rows {
            let row = row.as_ref();
            match n_cols {
                None => n_cols = Some(row.len()),
                Some(c) if c != row.len() => {
                    return Err(Error::Argument(format!(
                        "ragged rows: expected length {c}, found {}",
                        row.len()
                    )))
                }
                _ => {}
            }
            data.extend_from_slice(row);
            n_rows += 1;
        }
        IntMat::new(n_rows, n_cols.unwrap_or(0), data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "empty matrix");
        IntMat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[i128] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i128> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn entries(&self) -> &[i128] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<i128>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn checked_mul(&self, rhs: &IntMat) -> Result<IntMat> {
        if self.cols != rhs.rows {
            return Err(Error::Argument(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = IntMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] = add_mul(out[(i, j)], a, rhs[(k, j)])?;
                }
            }
        }
        Ok(out)
    }

    /// `A·𝟙`, the vector of row sums.
    pub fn row_sums(&self) -> Result<Vec<i128>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().try_fold(0i128, |acc, &x| add(acc, x)))
            .collect()
    }

    /// True iff every row sums to zero.
    pub fn is_homogeneous(&self) -> bool {
        matches!(self.row_sums(), Ok(s) if s.iter().all(|&x| x == 0))
    }

    /// Drops column 0. `None` for a single-column matrix.
    pub fn without_first_column(&self) -> Option<IntMat> {
        if self.cols < 2 {
            return None;
        }
        let data = (0..self.rows)
            .flat_map(|i| self.row(i)[1..].iter().copied())
            .collect();
        Some(IntMat {
            rows: self.rows,
            cols: self.cols - 1,
            data,
        })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IntMat {
        let data = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self[(i, j)]))
            .collect();
        IntMat {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    /// Appends `row` at the bottom.
    pub fn with_row(&self, row: &[i128]) -> Result<IntMat> {
        if row.len() != self.cols {
            return Err(Error::Argument(format!(
                "row of length {} does not fit {} columns",
                row.len(),
                self.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(row);
        Ok(IntMat {
            rows: self.rows + 1,
            cols: self.cols,
            data,
        })
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<i128> {
        if !self.is_square() {
            return Err(Error::Argument(format!(
                "determinant of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        bareiss_det(self.clone())
    }

    pub fn is_unimodular(&self) -> bool {
        matches!(self.det(), Ok(d) if d.abs() == 1)
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[target] += c * row[src]`
    pub(crate) fn row_add(&mut self, target: usize, src: usize, c: i128) -> Result<()> {
        if c == 0 {
            return Ok(());
        }
        for j in 0..self.cols {
            let v = add_mul(self[(target, j)], c, self[(src, j)])?;
            self[(target, j)] = v;
        }
        Ok(())
    }

    /// `col[target] += c * col[src]`
    pub(crate) fn col_add(&mut self, target: usize, src: usize, c: i128) -> Result<()> {
        if c == 0 {
            return Ok(());
        }
        for i in 0..self.rows {
            let v = add_mul(self[(i, target)], c, self[(i, src)])?;
            self[(i, target)] = v;
        }
        Ok(())
    }

    pub(crate) fn negate_row(&mut self, i: usize) -> Result<()> {
        for j in 0..self.cols {
            self[(i, j)] = self[(i, j)]
                .checked_neg()
                .ok_or(Error::Overflow("negation"))?;
        }
        Ok(())
    }
}

fn bareiss_det(mut m: IntMat) -> Result<i128> {
    let n = m.rows;
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[(k, k)] == 0 {
            let Some(p) = (k + 1..n).find(|&i| m[(i, k)] != 0) else {
                return Ok(0);
            };
            m.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = sub(mul(m[(i, j)], m[(k, k)])?, mul(m[(i, k)], m[(k, j)])?)?;
                // exact by Sylvester's identity
                m[(i, j)] = v / prev;
            }
            m[(i, k)] = 0;
        }
        prev = m[(k, k)];
    }
    Ok(sign * m[(n - 1, n - 1)])
}

/// Rank over the rationals by fraction-free elimination.
pub fn rank(x: &IntMat) -> Result<usize> {
    let mut m = x.clone();
    let (rows, cols) = (m.rows, m.cols);
    let mut r = 0;
    let mut prev = 1i128;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| m[(i, c)] != 0) else {
            continue;
        };
        m.swap_rows(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = sub(mul(m[(i, j)], m[(r, c)])?, mul(m[(i, c)], m[(r, j)])?)?;
                m[(i, j)] = v / prev;
            }
            m[(i, c)] = 0;
        }
        prev = m[(r, c)];
        r += 1;
    }
    Ok(r)
}

impl Index<(usize, usize)> for IntMat {
    type Output = i128;

    fn index(&self, (i, j): (usize, usize)) -> &i128 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i128 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMat{:?}", self.to_rows())
    }
}

impl fmt::Display for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .data
            .iter()
            .map(|x| x.to_string().len())
            .max()
            .unwrap_or(1);
        for i in 0..self.rows {
            let cells: Vec<String> = self
                .row(i)
                .iter()
                .map(|x| format!("{x:>width$}"))
                .collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}
