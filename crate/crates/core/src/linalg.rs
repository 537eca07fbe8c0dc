//! Exact rank computations over the rationals using fraction-free integer
//! row reduction.
//!
//! Rows are eliminated with integer combinations `p * row - e * pivot_row`
//! (scaled by `gcd(p, e)`) and then divided by their content, so every
//! intermediate entry stays an integer and no rounding ever happens. Pivots
//! are the entries of largest absolute value in their column.

use crate::error::{Error, Result};

fn gcd128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i128
}

fn normalize(row: &mut [i128]) {
    let content = row.iter().fold(0, |acc, &x| gcd128(acc, x));
    if content > 1 {
        row.iter_mut().for_each(|x| *x /= content);
    }
}

/// `row <- (p/g) * row - (e/g) * pivot_row` where `e = row[col]`.
fn eliminate(row: &mut [i128], pivot_row: &[i128], col: usize) -> Result<()> {
    let e = row[col];
    if e == 0 {
        return Ok(());
    }
    let p = pivot_row[col];
    let g = gcd128(p, e);
    let (ps, es) = (p / g, e / g);
    for (x, &y) in row.iter_mut().zip(pivot_row) {
        *x = x
            .checked_mul(ps)
            .zip(y.checked_mul(es))
            .and_then(|(a, b)| a.checked_sub(b))
            .ok_or(Error::Overflow("row reduction"))?;
    }
    normalize(row);
    Ok(())
}

/// A row-echelon basis of the row space of an integer matrix.
#[derive(Debug, Clone)]
pub struct EchelonBasis {
    ncols: usize,
    rows: Vec<Vec<i128>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(ncols: usize) -> Self {
        EchelonBasis {
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_rows<R: AsRef<[i64]>>(ncols: usize, rows: &[R]) -> Result<Self> {
        let mut work: Vec<Vec<i128>> = rows
            .iter()
            .map(|r| {
                let r = r.as_ref();
                assert_eq!(r.len(), ncols, "row length does not match column count");
                r.iter().map(|&x| x as i128).collect()
            })
            .collect();
        let mut basis = EchelonBasis::new(ncols);
        let mut top = 0;
        for col in 0..ncols {
            let pivot = (top..work.len())
                .filter(|&i| work[i][col] != 0)
                .max_by_key(|&i| (work[i][col].unsigned_abs(), std::cmp::Reverse(i)));
            let Some(pivot) = pivot else { continue };
            work.swap(top, pivot);
            let (head, tail) = work.split_at_mut(top + 1);
            for row in tail.iter_mut() {
                eliminate(row, &head[top], col)?;
            }
            basis.pivots.push(col);
            top += 1;
        }
        work.truncate(top);
        basis.rows = work;
        Ok(basis)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Whether `row` lies in the rational row space.
    pub fn spans(&self, row: &[i64]) -> Result<bool> {
        Ok(self.reduce(row)?.iter().all(|&x| x == 0))
    }

    fn reduce(&self, row: &[i64]) -> Result<Vec<i128>> {
        assert_eq!(
            row.len(),
            self.ncols,
            "row length does not match column count"
        );
        let mut v: Vec<i128> = row.iter().map(|&x| x as i128).collect();
        for (b, &col) in self.rows.iter().zip(&self.pivots) {
            eliminate(&mut v, b, col)?;
        }
        Ok(v)
    }

    /// Adds `row` to the spanning set; returns whether the rank grew.
    ///
    /// Each stored row vanishes on the pivot columns of the rows before it,
    /// which is all that sequential reduction needs, so a reduced row can be
    /// appended as is.
    pub fn insert(&mut self, row: &[i64]) -> Result<bool> {
        let v = self.reduce(row)?;
        let Some(col) = v.iter().position(|&x| x != 0) else {
            return Ok(false);
        };
        self.rows.push(v);
        self.pivots.push(col);
        Ok(true)
    }
}

/// Rank over the rationals of an integer matrix given by rows.
pub fn rank<R: AsRef<[i64]>>(ncols: usize, rows: &[R]) -> Result<usize> {
    Ok(EchelonBasis::from_rows(ncols, rows)?.rank())
}

/// Whether the given integer vectors are linearly independent.
pub fn independent<R: AsRef<[i64]>>(vectors: &[R]) -> Result<bool> {
    let Some(first) = vectors.first() else {
        return Ok(true);
    };
    Ok(rank(first.as_ref().len(), vectors)? == vectors.len())
}
