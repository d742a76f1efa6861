//! Smith and Hermite normal forms, integer kernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// Smith normal form `(U, D, V)` with `U·M·V = D`.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let (r, c) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    let mut t = 0;
    while t < r.min(c) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                let x = d.get(i, j);
                if !x.is_zero() && best.map_or(true, |(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            for i in t + 1..r {
                if !d.get(i, t).is_zero() {
                    let (p, q, rr, s) = bezout_block(d.get(t, t), d.get(i, t));
                    d.combine_rows(t, i, &p, &q, &rr, &s);
                    u.combine_rows(t, i, &p, &q, &rr, &s);
                }
            }
            for j in t + 1..c {
                if !d.get(t, j).is_zero() {
                    let (p, q, rr, s) = bezout_block(d.get(t, t), d.get(t, j));
                    d.combine_cols(t, j, &p, &q, &rr, &s);
                    v.combine_cols(t, j, &p, &q, &rr, &s);
                }
            }
            let col_clear = (t + 1..r).all(|i| d.get(i, t).is_zero());
            if !col_clear {
                continue;
            }
            let pivot = d.get(t, t).clone();
            let bad = (t + 1..r)
                .flat_map(|i| (t + 1..c).map(move |j| (i, j)))
                .find(|&(i, j)| !d.get(i, j).is_multiple_of(&pivot));
            match bad {
                Some((i, _)) => {
                    d.add_row(t, i, &BigInt::one());
                    u.add_row(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.neg_row(t);
            u.neg_row(t);
        }
        t += 1;
    }
    (u, d, v)
}

/// Unimodular 2×2 block `[[p, q], [r, s]]` sending `(a, b)` to `(gcd, 0)`.
fn bezout_block(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt, BigInt) {
    if b.is_multiple_of(a) {
        return (BigInt::one(), BigInt::zero(), -(b / a), BigInt::one());
    }
    let e = a.extended_gcd(b);
    let g = e.gcd;
    (e.x, e.y, -(b / &g), a / &g)
}

/// Diagonal of a Smith form.
pub fn invariant_factors(d: &IntMatrix) -> Vec<BigInt> {
    (0..d.rows().min(d.cols()))
        .map(|i| d.get(i, i).clone())
        .filter(|x| !x.is_zero())
        .collect()
}

/// Basis (as columns) of the saturated lattice `{v ∈ Z^cols : M v = 0}`.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let (_, d, v) = smith_normal_form(m);
    let rank = invariant_factors(&d).len();
    let idx: Vec<usize> = (rank..m.cols()).collect();
    v.select_cols(&idx)
}

/// Row-style Hermite normal form `(H, U)` with `U·M = H`, `U` unimodular.
/// Pivots are positive and entries above a pivot lie in `[0, pivot)`.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (r, c) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut row = 0;
    for col in 0..c {
        if row == r {
            break;
        }
        let Some(p) = (row..r).find(|&i| !h.get(i, col).is_zero()) else {
            continue;
        };
        h.swap_rows(row, p);
        u.swap_rows(row, p);
        for i in row + 1..r {
            if !h.get(i, col).is_zero() {
                let (a, b, cc, d) = bezout_block(h.get(row, col), h.get(i, col));
                h.combine_rows(row, i, &a, &b, &cc, &d);
                u.combine_rows(row, i, &a, &b, &cc, &d);
            }
        }
        if h.get(row, col).is_negative() {
            h.neg_row(row);
            u.neg_row(row);
        }
        let piv = h.get(row, col).clone();
        for i in 0..row {
            let q = h.get(i, col).div_floor(&piv);
            if !q.is_zero() {
                h.add_row(i, row, &-&q);
                u.add_row(i, row, &-q);
            }
        }
        row += 1;
    }
    (h, u)
}
