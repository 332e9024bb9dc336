//! Exact rationals, symmetric rational matrices and an exact PSD test.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("cannot parse rational `{0}`")]
    Parse(String),
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `p/q` or `p`.
pub fn parse_rat(s: &str) -> Result<Rat, ExactError> {
    let t = s.trim();
    let err = || ExactError::Parse(s.to_string());
    match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| err())?;
            let q: BigInt = q.trim().parse().map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            Ok(Rat::new(p, q))
        }
        None => Ok(Rat::from_integer(t.parse().map_err(|_| err())?)),
    }
}

/// `p/q`, or `p` for integers.
pub fn fmt_rat(x: &Rat) -> String {
    x.to_string()
}

/// Decimal with `digits` places, rounded half away from zero.
pub fn fmt_decimal(x: &Rat, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = (x.abs() * Rat::from_integer(scale.clone())).round().to_integer();
    let s = format!("{:0>width$}", scaled.to_string(), width = digits + 1);
    let (whole, frac) = s.split_at(s.len() - digits);
    let sign = if x.is_negative() && !scaled.is_zero() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{frac}")
    }
}

pub fn to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn pow(x: &Rat, e: usize) -> Rat {
    num_traits::pow(x.clone(), e)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    dim: usize,
    entries: Vec<Rat>,
}

impl RatMatrix {
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<RatMatrix, ExactError> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(ExactError::NotSquare);
        }
        let entries: Vec<Rat> = rows.into_iter().flatten().collect();
        for i in 0..dim {
            for j in i + 1..dim {
                if entries[i * dim + j] != entries[j * dim + i] {
                    return Err(ExactError::NotSymmetric(i, j));
                }
            }
        }
        Ok(RatMatrix { dim, entries })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<RatMatrix, ExactError> {
        RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    pub fn identity(dim: usize) -> RatMatrix {
        let mut entries = vec![Rat::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Rat::one();
        }
        RatMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.dim + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set_sym(&mut self, i: usize, j: usize, v: Rat) {
        self.entries[i * self.dim + j] = v.clone();
        self.entries[j * self.dim + i] = v;
    }

    pub fn scaled(&self, s: &Rat) -> RatMatrix {
        RatMatrix { dim: self.dim, entries: self.entries.iter().map(|x| x * s).collect() }
    }

    pub fn rows(&self) -> Vec<Vec<Rat>> {
        self.entries.chunks(self.dim.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        self.rows().iter().map(|r| r.iter().map(to_f64).collect()).collect()
    }

    /// Simultaneous row and column permutation: entry `(i, j)` becomes `(p[i], p[j])` of `self`.
    pub fn permuted(&self, p: &[usize]) -> RatMatrix {
        let d = self.dim;
        let mut entries = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                entries.push(self.get(p[i], p[j]).clone());
            }
        }
        RatMatrix { dim: d, entries }
    }
}

pub fn quadratic_form(m: &RatMatrix, x: &[Rat]) -> Result<Rat, ExactError> {
    if x.len() != m.dim() {
        return Err(ExactError::DimMismatch(m.dim(), x.len()));
    }
    let mut acc = Rat::zero();
    for i in 0..m.dim() {
        if x[i].is_zero() {
            continue;
        }
        let mut row = Rat::zero();
        for j in 0..m.dim() {
            if !x[j].is_zero() {
                row += m.get(i, j) * &x[j];
            }
        }
        acc += row * &x[i];
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PsdVerdict {
    Psd,
    /// `x` with `xᵀMx < 0`.
    NotPsd(Vec<Rat>),
}

impl PsdVerdict {
    pub fn is_psd(&self) -> bool {
        matches!(self, PsdVerdict::Psd)
    }
}

struct Pivot {
    p: usize,
    d: Rat,
    row: Vec<(usize, Rat)>,
}

/// Symmetric elimination with positive pivots. Produces a witness vector when the
/// matrix is not PSD.
pub fn is_psd(m: &RatMatrix) -> PsdVerdict {
    let n = m.dim();
    let mut s = m.rows();
    let mut active = vec![true; n];
    let mut pivots: Vec<Pivot> = Vec::new();
    loop {
        let act: Vec<usize> = (0..n).filter(|&i| active[i]).collect();
        let mut y = vec![Rat::zero(); n];
        if let Some(&i) = act.iter().find(|&&i| s[i][i].is_negative()) {
            y[i] = Rat::one();
            return PsdVerdict::NotPsd(lift(y, &pivots));
        }
        let Some(&p) = act.iter().find(|&&i| s[i][i].is_positive()) else {
            // All remaining diagonals are zero; any nonzero entry breaks PSD.
            for &i in &act {
                for &j in &act {
                    if i != j && !s[i][j].is_zero() {
                        y[i] = -s[i][j].recip();
                        y[j] = Rat::one();
                        return PsdVerdict::NotPsd(lift(y, &pivots));
                    }
                }
            }
            return PsdVerdict::Psd;
        };
        active[p] = false;
        let d = s[p][p].clone();
        let rest: Vec<usize> = act.into_iter().filter(|&j| j != p).collect();
        let row: Vec<(usize, Rat)> = rest.iter().map(|&j| (j, s[p][j].clone())).collect();
        for &(i, ref sip) in &row {
            if sip.is_zero() {
                continue;
            }
            let f = sip / &d;
            for &(j, ref spj) in &row {
                if !spj.is_zero() {
                    s[i][j] -= &f * spj;
                }
            }
        }
        pivots.push(Pivot { p, d, row });
    }
}

fn lift(mut x: Vec<Rat>, pivots: &[Pivot]) -> Vec<Rat> {
    for pv in pivots.iter().rev() {
        let mut acc = Rat::zero();
        for (j, v) in &pv.row {
            acc += v * &x[*j];
        }
        x[pv.p] = -acc / &pv.d;
    }
    x
}
