use crate::error::{input, Result};
use crate::set::ElementSet;

/// Columns of a GF(2) matrix, each packed into 64-bit words over the rows.
#[derive(Debug, Clone)]
pub(super) struct Gf2Columns {
    columns: Vec<Vec<u64>>,
}

impl Gf2Columns {
    pub(super) fn from_rows<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let width = rows.first().map_or(0, |r| r.as_ref().len());
        let words = rows.len().div_ceil(64);
        let mut columns = vec![vec![0u64; words]; width];
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != width {
                return input(format!(
                    "row {r} has {} columns, expected {width}",
                    row.len()
                ));
            }
            for (c, ch) in row.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => columns[c][r / 64] |= 1 << (r % 64),
                    other => return input(format!("row {r} contains {other:?}")),
                }
            }
        }
        Ok(Self { columns })
    }

    pub(super) fn len(&self) -> usize {
        self.columns.len()
    }

    /// Gaussian elimination over the selected columns.
    pub(super) fn independent(&self, set: &ElementSet) -> bool {
        // Reduced basis vectors keyed by their leading (highest) bit.
        let mut basis: Vec<(usize, Vec<u64>)> = Vec::with_capacity(set.len());
        for c in set {
            let mut v = self.columns[c].clone();
            for (pivot, b) in &basis {
                if v[pivot / 64] >> (pivot % 64) & 1 == 1 {
                    v.iter_mut().zip(b).for_each(|(x, y)| *x ^= y);
                }
            }
            match leading_bit(&v) {
                None => return false,
                Some(pivot) => {
                    // Keep the basis fully reduced at the new pivot.
                    for (_, b) in &mut basis {
                        if b[pivot / 64] >> (pivot % 64) & 1 == 1 {
                            b.iter_mut().zip(&v).for_each(|(x, y)| *x ^= y);
                        }
                    }
                    basis.push((pivot, v));
                }
            }
        }
        true
    }
}

fn leading_bit(v: &[u64]) -> Option<usize> {
    v.iter()
        .enumerate()
        .rev()
        .find(|(_, w)| **w != 0)
        .map(|(i, w)| i * 64 + 63 - w.leading_zeros() as usize)
}
