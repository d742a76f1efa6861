//! Complex numbers over `astro_float::BigFloat`.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use nalgebra::Complex;

use crate::error::{Error, Result};
use crate::exact::Rat;

pub const RM: RoundingMode = RoundingMode::ToEven;

#[derive(Clone, Debug)]
pub struct Cx {
    pub re: BigFloat,
    pub im: BigFloat,
}

/// `log2` of a magnitude bound; very negative for zero.
fn mag(x: &BigFloat) -> i64 {
    if x.is_zero() {
        i64::MIN / 4
    } else {
        x.exponent().map_or(i64::MIN / 4, |e| e as i64)
    }
}

/// Nearest `f64` to a finite `BigFloat`.
pub fn bf_to_f64(x: &BigFloat) -> f64 {
    let Some((words, _, sign, e, _)) = x.as_raw_parts() else {
        return f64::NAN;
    };
    if x.is_zero() {
        return 0.0;
    }
    let top = *words.last().unwrap_or(&0) as f64;
    let next = if words.len() > 1 { words[words.len() - 2] as f64 } else { 0.0 };
    let frac = (top + next / 18446744073709551616.0) / 18446744073709551616.0;
    let v = frac * 2f64.powi((e as i32).clamp(-1100, 1100));
    if sign.is_negative() {
        -v
    } else {
        v
    }
}

pub fn rat_to_bf(r: &Rat, p: usize, cc: &mut Consts) -> BigFloat {
    let n = BigFloat::parse(&r.numer().to_string(), Radix::Dec, p, RM, cc);
    let d = BigFloat::parse(&r.denom().to_string(), Radix::Dec, p, RM, cc);
    n.div(&d, p, RM)
}

impl Cx {
    pub fn zero(p: usize) -> Self {
        Self::from_f64(0.0, 0.0, p)
    }

    pub fn one(p: usize) -> Self {
        Self::from_f64(1.0, 0.0, p)
    }

    pub fn from_f64(re: f64, im: f64, p: usize) -> Self {
        Self {
            re: BigFloat::from_f64(re, p),
            im: BigFloat::from_f64(im, p),
        }
    }

    pub fn real(re: BigFloat, p: usize) -> Self {
        Self {
            re,
            im: BigFloat::from_f64(0.0, p),
        }
    }

    pub fn from_rat(r: &Rat, p: usize, cc: &mut Consts) -> Self {
        Self::real(rat_to_bf(r, p, cc), p)
    }

    pub fn add(&self, o: &Self, p: usize) -> Self {
        Self {
            re: self.re.add(&o.re, p, RM),
            im: self.im.add(&o.im, p, RM),
        }
    }

    pub fn sub(&self, o: &Self, p: usize) -> Self {
        Self {
            re: self.re.sub(&o.re, p, RM),
            im: self.im.sub(&o.im, p, RM),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn mul(&self, o: &Self, p: usize) -> Self {
        let ac = self.re.mul(&o.re, p, RM);
        let bd = self.im.mul(&o.im, p, RM);
        let ad = self.re.mul(&o.im, p, RM);
        let bc = self.im.mul(&o.re, p, RM);
        Self {
            re: ac.sub(&bd, p, RM),
            im: ad.add(&bc, p, RM),
        }
    }

    pub fn mul_real(&self, r: &BigFloat, p: usize) -> Self {
        Self {
            re: self.re.mul(r, p, RM),
            im: self.im.mul(r, p, RM),
        }
    }

    pub fn div_real(&self, r: &BigFloat, p: usize) -> Self {
        Self {
            re: self.re.div(r, p, RM),
            im: self.im.div(r, p, RM),
        }
    }

    pub fn norm_sqr(&self, p: usize) -> BigFloat {
        self.re.mul(&self.re, p, RM).add(&self.im.mul(&self.im, p, RM), p, RM)
    }

    pub fn div(&self, o: &Self, p: usize) -> Result<Self> {
        let d = o.norm_sqr(p);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let conj = Self {
            re: o.re.clone(),
            im: o.im.neg(),
        };
        Ok(self.mul(&conj, p).div_real(&d, p))
    }

    /// `e^z`.
    pub fn exp(&self, p: usize, cc: &mut Consts) -> Self {
        let r = self.re.exp(p, RM, cc);
        Self {
            re: r.mul(&self.im.cos(p, RM, cc), p, RM),
            im: r.mul(&self.im.sin(p, RM, cc), p, RM),
        }
    }

    /// Upper bound for `log2 |z|`.
    pub fn log2_bound(&self) -> i64 {
        mag(&self.re).max(mag(&self.im))
    }

    pub fn is_finite(&self) -> bool {
        !(self.re.is_nan() || self.im.is_nan() || self.re.is_inf() || self.im.is_inf())
    }

    pub fn to_c64(&self) -> Complex<f64> {
        Complex::new(bf_to_f64(&self.re), bf_to_f64(&self.im))
    }

    pub fn abs_f64(&self) -> f64 {
        self.to_c64().norm()
    }

    pub fn to_strings(&self) -> (String, String) {
        (self.re.to_string(), self.im.to_string())
    }
}

pub type CMatrix = Vec<Vec<Cx>>;

pub fn identity(n: usize, p: usize) -> CMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Cx::one(p) } else { Cx::zero(p) }).collect())
        .collect()
}

pub fn mat_mul(a: &CMatrix, b: &CMatrix, p: usize) -> CMatrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    (0..b.len()).fold(Cx::zero(p), |acc, k| acc.add(&a[i][k].mul(&b[k][j], p), p))
                })
                .collect()
        })
        .collect()
}

/// Inverse by Gauss–Jordan with partial pivoting on `|·|` in `f64`.
pub fn mat_inverse(a: &CMatrix, p: usize) -> Result<CMatrix> {
    let n = a.len();
    let mut m: Vec<Vec<Cx>> = a.clone();
    let mut inv = identity(n, p);
    for c in 0..n {
        let piv = (c..n)
            .max_by(|&i, &j| m[i][c].abs_f64().total_cmp(&m[j][c].abs_f64()))
            .ok_or(Error::DivisionByZero)?;
        if m[piv][c].abs_f64() == 0.0 {
            return Err(Error::DivisionByZero);
        }
        m.swap(c, piv);
        inv.swap(c, piv);
        let d = m[c][c].clone();
        for j in 0..n {
            m[c][j] = m[c][j].div(&d, p)?;
            inv[c][j] = inv[c][j].div(&d, p)?;
        }
        for i in 0..n {
            if i != c {
                let f = m[i][c].clone();
                for j in 0..n {
                    m[i][j] = m[i][j].sub(&f.mul(&m[c][j], p), p);
                    inv[i][j] = inv[i][j].sub(&f.mul(&inv[c][j], p), p);
                }
            }
        }
    }
    Ok(inv)
}

/// Max-modulus entry of `a - b`.
pub fn max_diff(a: &CMatrix, b: &CMatrix, p: usize) -> f64 {
    a.iter()
        .zip(b)
        .flat_map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x.sub(y, p).abs_f64()))
        .fold(0.0, f64::max)
}

pub fn to_c64_matrix(a: &CMatrix) -> nalgebra::DMatrix<Complex<f64>> {
    let n = a.len();
    nalgebra::DMatrix::from_fn(n, n, |i, j| a[i][j].to_c64())
}
