//! Truncated power series over Q and the product formula for Poincare
//! series of symmetric powers.
//!
//! The bivariate product over a reduced Betti vector (beta_1, beta_2, ...),
//!
//! ```text
//!   G(z,t) = prod_{d odd} (1 + z^d t)^{beta_d} / prod_{d even} (1 - z^d t)^{beta_d}
//! ```
//!
//! collects multisets of homogeneous basis elements with t counting multiset
//! size. The n-th symmetric power series is the partial sum of the t-layers
//! G_0 + ... + G_n, and the infinite symmetric power is the full product at
//! t = 1, i.e. the free graded-commutative algebra series on the same
//! degrees.

use std::fmt;

use num_traits::Zero;

use crate::algebra::GenSet;
use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

/// A power series in one variable truncated above a fixed degree; index
/// `d` of `coeffs` holds the z^d coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Scalar>,
}

impl TruncatedSeries {
    pub fn zero(cutoff: usize) -> Self {
        TruncatedSeries { coeffs: vec![scalar::zero(); cutoff + 1] }
    }

    pub fn one(cutoff: usize) -> Self {
        let mut s = Self::zero(cutoff);
        s.coeffs[0] = scalar::one();
        s
    }

    /// The monomial z^d, or zero when d exceeds the cutoff.
    pub fn monomial(d: usize, cutoff: usize) -> Self {
        let mut s = Self::zero(cutoff);
        if d <= cutoff {
            s.coeffs[d] = scalar::one();
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<Scalar>) -> Self {
        assert!(!coeffs.is_empty());
        TruncatedSeries { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        TruncatedSeries { coeffs: coeffs.iter().map(|&c| scalar::from_int(c)).collect() }
    }

    pub fn cutoff(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, d: usize) -> Scalar {
        self.coeffs.get(d).cloned().unwrap_or_else(scalar::zero)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Smallest degree with a nonzero coefficient, if any.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.cutoff(), other.cutoff());
        TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.cutoff(), other.cutoff());
        TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cutoff(), other.cutoff());
        let cutoff = self.cutoff();
        let mut out = Self::zero(cutoff);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > cutoff {
                    break;
                }
                if !b.is_zero() {
                    out.coeffs[i + j] = &out.coeffs[i + j] + &(a * b);
                }
            }
        }
        out
    }

    /// Multiplies by z^d (shift, truncating above the cutoff).
    pub fn shift(&self, d: usize) -> Self {
        let cutoff = self.cutoff();
        let mut out = Self::zero(cutoff);
        for (i, a) in self.coeffs.iter().enumerate() {
            if i + d <= cutoff && !a.is_zero() {
                out.coeffs[i + d] = a.clone();
            }
        }
        out
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inv(&self) -> Result<Self> {
        if self.coeffs[0].is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let cutoff = self.cutoff();
        let mut out = Self::zero(cutoff);
        let a0_inv = scalar::one() / self.coeffs[0].clone();
        out.coeffs[0] = a0_inv.clone();
        for k in 1..=cutoff {
            let mut acc = scalar::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() && !out.coeffs[k - j].is_zero() {
                    acc += &self.coeffs[j] * &out.coeffs[k - j];
                }
            }
            out.coeffs[k] = -(acc * &a0_inv);
        }
        Ok(out)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::one(self.cutoff());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// 1 / (1 - z^d) truncated; `d` must be positive.
    pub fn geometric(d: usize, cutoff: usize) -> Self {
        assert!(d > 0);
        let mut s = Self::zero(cutoff);
        let mut i = 0;
        while i <= cutoff {
            s.coeffs[i] = scalar::one();
            i += d;
        }
        s
    }

    /// Interprets the coefficients as dimensions; errors when any is
    /// negative or non-integral.
    pub fn to_dims(&self) -> Result<Vec<usize>> {
        self.coeffs
            .iter()
            .map(|c| {
                scalar::as_nonnegative_integer(c).ok_or_else(|| {
                    Error::Invalid(format!("series coefficient {} is not a dimension", c))
                })
            })
            .collect()
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &scalar::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = d == 0 || abs != scalar::one();
            if show_coeff {
                write!(f, "{}", abs)?;
            }
            if d > 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                if d == 1 {
                    write!(f, "z")?;
                } else {
                    write!(f, "z^{}", d)?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Validates a Betti vector (index = degree): beta_0 must be one.
fn reduced_betti(betti: &[usize]) -> Result<&[usize]> {
    let beta0 = betti.first().copied().unwrap_or(0);
    if beta0 != 1 {
        return Err(Error::NotConnected { beta0 });
    }
    Ok(&betti[1..])
}

/// The t-layers G_0, ..., G_n of the bivariate product over `betti`
/// (index = degree, `betti[0]` must be 1), each truncated at `max_degree`.
///
/// Layer G_k is the series of size-k multisets of homogeneous basis
/// elements in positive degrees, odd-degree elements used at most once; in
/// particular G_0 = 1 and G_k is divisible by z^k.
pub fn sp_layers(betti: &[usize], n: usize, max_degree: usize) -> Result<Vec<TruncatedSeries>> {
    let reduced = reduced_betti(betti)?;
    let mut layers = vec![TruncatedSeries::zero(max_degree); n + 1];
    layers[0] = TruncatedSeries::one(max_degree);
    for (i, &b) in reduced.iter().enumerate() {
        let d = i + 1;
        for _ in 0..b {
            if d % 2 == 1 {
                // multiply by (1 + z^d t)
                for k in (1..=n).rev() {
                    let shifted = layers[k - 1].shift(d);
                    layers[k] = layers[k].add(&shifted);
                }
            } else {
                // multiply by 1 / (1 - z^d t)
                for k in 1..=n {
                    let shifted = layers[k - 1].shift(d);
                    layers[k] = layers[k].add(&shifted);
                }
            }
        }
    }
    Ok(layers)
}

/// Poincare series of the n-th symmetric power of a space with the given
/// Betti vector: the partial sum G_0 + ... + G_n of the product formula.
pub fn sp_series(betti: &[usize], n: usize, max_degree: usize) -> Result<TruncatedSeries> {
    let layers = sp_layers(betti, n, max_degree)?;
    Ok(layers
        .iter()
        .fold(TruncatedSeries::zero(max_degree), |acc, g| acc.add(g)))
}

/// Poincare series of the infinite symmetric power: the free
/// graded-commutative algebra series on the reduced Betti numbers.
pub fn sp_infinity_series(betti: &[usize], max_degree: usize) -> Result<TruncatedSeries> {
    let reduced = reduced_betti(betti)?;
    let mut counts = vec![0usize; max_degree + 1];
    for (i, &b) in reduced.iter().enumerate() {
        if i + 1 <= max_degree {
            counts[i + 1] = b;
        }
    }
    Ok(free_series_from_counts(&counts, max_degree))
}

/// Series of the free graded-commutative algebra with `counts[d]`
/// generators in degree `d` (degree 0 entries are ignored).
pub fn free_series_from_counts(counts: &[usize], max_degree: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::one(max_degree);
    for (d, &b) in counts.iter().enumerate().skip(1) {
        if b == 0 || d > max_degree {
            continue;
        }
        let factor = if d % 2 == 1 {
            let mut f = TruncatedSeries::one(max_degree);
            f = f.add(&TruncatedSeries::monomial(d, max_degree));
            f
        } else {
            TruncatedSeries::geometric(d, max_degree)
        };
        for _ in 0..b {
            s = s.mul(&factor);
        }
    }
    s
}

/// Series of the free graded-commutative algebra on a generator set.
pub fn free_series(gens: &GenSet, max_degree: usize) -> TruncatedSeries {
    free_series_from_counts(&gens.degree_counts(max_degree), max_degree)
}
