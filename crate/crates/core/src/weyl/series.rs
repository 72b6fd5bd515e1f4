//! Power series of nilpotent matrices with Bernoulli-number coefficients.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rat::{self, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    /// x/(eˣ−1)
    Todd,
    /// x·eˣ/(eˣ−1)
    ToddShifted,
    /// x/(eˣ−1) − 1
    ToddMinusOne,
}

/// B_0..B_n with B_1 = −1/2.
pub fn bernoulli(n: usize) -> Vec<Rat> {
    let mut b: Vec<Rat> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        if m == 0 {
            b.push(Rat::one());
            continue;
        }
        // Σ_{k<m+1} C(m+1,k) B_k = 0
        let mut s = Rat::zero();
        for (k, bk) in b.iter().enumerate() {
            s += rat::binom(m as u64 + 1, k as u64) * bk;
        }
        b.push(-s / rat::int(m as i64 + 1));
    }
    b
}

/// Taylor coefficients c_0..c_n of the series.
pub fn coefficients(kind: SeriesKind, n: usize) -> Vec<Rat> {
    let b = bernoulli(n);
    (0..=n)
        .map(|k| {
            let base = &b[k] / rat::factorial(k as u64);
            match kind {
                SeriesKind::Todd => base,
                SeriesKind::ToddShifted => {
                    if k % 2 == 1 {
                        -base
                    } else {
                        base
                    }
                }
                SeriesKind::ToddMinusOne => {
                    if k == 0 {
                        Rat::zero()
                    } else {
                        base
                    }
                }
            }
        })
        .collect()
}

/// Powers I, M, M², … up to the last nonzero one.
pub fn nilpotent_powers(m: &Matrix) -> Result<Vec<Matrix>> {
    assert!(m.is_square());
    let mut out = vec![Matrix::identity(m.rows)];
    loop {
        let next = out.last().unwrap().mul(m);
        if next.is_zero() {
            return Ok(out);
        }
        if out.len() > m.rows {
            return Err(Error::NotNilpotent(m.rows + 1));
        }
        out.push(next);
    }
}

/// Σ_k c_k M^k for nilpotent M.
pub fn series_apply(kind: SeriesKind, m: &Matrix) -> Result<Matrix> {
    let pw = nilpotent_powers(m)?;
    let c = coefficients(kind, pw.len());
    let mut out = Matrix::zeros(m.rows, m.cols);
    for (k, p) in pw.iter().enumerate() {
        if !c[k].is_zero() {
            out = out.add(&p.scale(&c[k]));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bernoulli() {
        let b = bernoulli(6);
        assert_eq!(b[1], rat::frac(-1, 2));
        assert_eq!(b[2], rat::frac(1, 6));
        assert_eq!(b[3], Rat::zero());
        assert_eq!(b[4], rat::frac(-1, 30));
        assert_eq!(b[6], rat::frac(1, 42));
    }

    #[test]
    fn shifted_is_reflected() {
        let c = coefficients(SeriesKind::ToddShifted, 3);
        assert_eq!(c[1], rat::frac(1, 2));
        assert_eq!(c[2], rat::frac(1, 12));
    }
}
