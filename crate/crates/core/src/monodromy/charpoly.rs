//! Division-free characteristic polynomials.

use super::cx::{CMatrix, Cx};
use crate::error::{Error, Result};

/// Coefficients of `det(λI - A)` from the constant term up, by Berkowitz.
/// Intermediate products grow like `max|a_ij|^n`, so the working precision
/// is raised by that many bits; the entries themselves are exact.
pub fn charpoly(a: &CMatrix, p: usize) -> Vec<Cx> {
    let n = a.len();
    let top = a.iter().flatten().map(Cx::log2_bound).max().unwrap_or(0).max(0) as usize;
    let p = p + n * (top + 1) + 64;
    // Highest degree first while building.
    let mut v = vec![Cx::one(p)];
    for r in 0..n {
        let mut t = vec![Cx::one(p), a[r][r].neg()];
        // Column C = A[0..r][r]; row R = A[r][0..r]; M = A[0..r][0..r].
        let mut w: Vec<Cx> = (0..r).map(|i| a[i][r].clone()).collect();
        for _ in 0..r {
            let rw = (0..r).fold(Cx::zero(p), |acc, j| acc.add(&a[r][j].mul(&w[j], p), p));
            t.push(rw.neg());
            w = (0..r)
                .map(|i| (0..r).fold(Cx::zero(p), |acc, j| acc.add(&a[i][j].mul(&w[j], p), p)))
                .collect();
        }
        let mut next = Vec::with_capacity(r + 2);
        for i in 0..r + 2 {
            let mut acc = Cx::zero(p);
            for j in 0..v.len() {
                if i >= j && i - j < t.len() {
                    acc = acc.add(&t[i - j].mul(&v[j], p), p);
                }
            }
            next.push(acc);
        }
        v = next;
    }
    v.reverse();
    v
}

/// Characteristic polynomial of `A⁻¹` from that of `A`: `b_k = a_{n-k}/a_0`.
pub fn inverse_charpoly(c: &[Cx], p: usize) -> Result<Vec<Cx>> {
    let a0 = c.first().ok_or(Error::EmptyInput)?;
    c.iter().rev().map(|x| x.div(a0, p)).collect()
}
