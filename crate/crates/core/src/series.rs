//! Truncated formal series in `1/z`.
//!
//! An [`InvZSeries`] with truncation `N` stands for
//! `b_0 + b_1 z^-1 + … + b_N z^-N + O(z^-(N+1))`. Every operation returns the
//! largest truncation its inputs justify, so a result never claims more
//! coefficients than are actually known.

use std::fmt;

use thiserror::Error;

use crate::field::{Field, Rat};
use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    /// A `z^0` or `z^-1` term integrates to something outside the ring
    /// (`z` or `log z`).
    #[error("series is not integrable in K[[1/z]]: coefficient of z^-{power} is nonzero")]
    NotIntegrableInRing { power: usize },
    #[error("truncation {truncation} is too small to decide integrability (need at least 1)")]
    UndeterminedIntegrability { truncation: usize },
    #[error("numerator degree {numerator} must be below denominator degree {denominator}")]
    ImproperFraction { numerator: usize, denominator: usize },
    #[error("denominator polynomial is zero")]
    ZeroDenominator,
}

/// Valuation `o(f)`: index of the first nonzero coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(usize),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<usize> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => f.write_str("inf"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct InvZSeries<F: Field = Rat> {
    /// `b_0..=b_N`; the length is always `N + 1`.
    coeffs: Vec<F>,
}

impl<F: Field> InvZSeries<F> {
    /// Pads with zeros or drops terms so that exactly `b_0..=b_truncation` are kept.
    pub fn new(mut coeffs: Vec<F>, truncation: usize) -> Self {
        coeffs.resize(truncation + 1, F::zero());
        InvZSeries { coeffs }
    }

    pub fn zero(truncation: usize) -> Self {
        Self::new(Vec::new(), truncation)
    }

    pub fn one(truncation: usize) -> Self {
        Self::new(vec![F::one()], truncation)
    }

    /// `c · z^-power`.
    pub fn monomial(c: F, power: usize, truncation: usize) -> Self {
        let mut s = Self::zero(truncation);
        if power <= truncation {
            s.coeffs[power] = c;
        }
        s
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// `b_n`, or `None` past the truncation.
    pub fn coeff(&self, n: usize) -> Option<&F> {
        self.coeffs.get(n)
    }

    /// Drops terms above `n`. Asking for more than is known keeps the series as is.
    pub fn truncate(&self, n: usize) -> Self {
        let n = n.min(self.truncation());
        InvZSeries { coeffs: self.coeffs[..=n].to_vec() }
    }

    /// Equality on the common window `0..=min(N_f, N_g)`.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let n = self.truncation().min(other.truncation());
        self.coeffs[..=n] == other.coeffs[..=n]
    }

    pub fn valuation(&self) -> Valuation {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(i) => Valuation::Finite(i),
            None => Valuation::Infinity,
        }
    }

    /// First index whose coefficient is not known to vanish: the valuation,
    /// or `N + 1` when the whole window is zero.
    fn known_order(&self) -> usize {
        self.valuation().finite().unwrap_or(self.coeffs.len())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.truncation().min(other.truncation());
        let coeffs = (0..=n)
            .map(|i| self.coeffs[i].clone() + other.coeffs[i].clone())
            .collect();
        InvZSeries { coeffs }
    }

    pub fn neg(&self) -> Self {
        InvZSeries { coeffs: self.coeffs.iter().cloned().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &F) -> Self {
        InvZSeries { coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect() }
    }

    /// Cauchy product. The unknown tail of `f` starts at `z^-(N_f+1)` and is
    /// multiplied by at least `z^-o(g)`, so the product is known up to
    /// `min(N_f + o(g), N_g + o(f))`.
    pub fn mul(&self, other: &Self) -> Self {
        let n = (self.truncation() + other.known_order())
            .min(other.truncation() + self.known_order());
        let mut out = vec![F::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i > n {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n - i + 1) {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        InvZSeries { coeffs: out }
    }

    /// Term-wise `d/dz`: `b_n z^-n ↦ -n b_n z^-(n+1)`. Truncation grows by one.
    pub fn derivative(&self) -> Self {
        let mut out = vec![F::zero(); self.coeffs.len() + 1];
        for (n, b) in self.coeffs.iter().enumerate().skip(1) {
            out[n + 1] = -(F::from_i64(n as i64) * b.clone());
        }
        InvZSeries { coeffs: out }
    }

    /// The antiderivative with zero constant term. Needs `f_0 = f_1 = 0`;
    /// truncation drops by one.
    pub fn antiderivative(&self) -> Result<Self, SeriesError> {
        let n = self.truncation();
        if n < 1 {
            return Err(SeriesError::UndeterminedIntegrability { truncation: n });
        }
        for power in 0..2 {
            if !self.coeffs[power].is_zero() {
                return Err(SeriesError::NotIntegrableInRing { power });
            }
        }
        let mut out = vec![F::zero(); n];
        for (m, b) in out.iter_mut().enumerate().skip(1) {
            let inv = F::from_i64(m as i64).inv().expect("characteristic zero");
            *b = -(self.coeffs[m + 1].clone() * inv);
        }
        Ok(InvZSeries { coeffs: out })
    }

    /// `1/(z - a) = Σ_{n≥0} a^n z^-(n+1)`.
    pub fn inverse_linear(a: &F, truncation: usize) -> Self {
        let mut coeffs = vec![F::zero(); truncation + 1];
        let mut power = F::one();
        for c in coeffs.iter_mut().skip(1) {
            *c = power.clone();
            power = power * a.clone();
        }
        InvZSeries { coeffs }
    }

    /// `log(1 - a/z) = -Σ_{n≥1} (a^n / n) z^-n`, the zero-constant series
    /// whose derivative is `a z^-2 / (1 - a/z)`.
    pub fn log_factor(a: &F, truncation: usize) -> Self {
        let mut coeffs = vec![F::zero(); truncation + 1];
        let mut power = F::one();
        for (n, c) in coeffs.iter_mut().enumerate().skip(1) {
            power = power * a.clone();
            let inv_n = F::from_i64(n as i64).inv().expect("characteristic zero");
            *c = -(power.clone() * inv_n);
        }
        InvZSeries { coeffs }
    }

    /// Expansion at infinity of `P/Q`, `deg P < deg Q`, by long division in
    /// powers of `1/z`. Uses only the coefficients of `P` and `Q`.
    pub fn from_rational(p: &Poly<F>, q: &Poly<F>, truncation: usize) -> Result<Self, SeriesError> {
        let d = q.degree().ok_or(SeriesError::ZeroDenominator)?;
        if let Some(dp) = p.degree() {
            if dp >= d {
                return Err(SeriesError::ImproperFraction { numerator: dp, denominator: d });
            }
        }
        let lead_inv = q.leading().and_then(Field::inv).ok_or(SeriesError::ZeroDenominator)?;
        // Matching the z^(d-n) coefficient of Q·f = P:
        //   lc(Q) f_n = P_{d-n} - Σ_{j=1..d} Q_{d-j} f_{n-j}
        let mut f = vec![F::zero(); truncation + 1];
        for n in 1..=truncation {
            let mut acc = if n <= d { p.coeff(d - n) } else { F::zero() };
            for j in 1..=d.min(n - 1) {
                acc = acc - q.coeff(d - j) * f[n - j].clone();
            }
            f[n] = acc * lead_inv.clone();
        }
        Ok(InvZSeries { coeffs: f })
    }
}

impl InvZSeries<Rat> {
    /// Evaluates the truncated sum `Σ b_n z^-n` in double precision.
    pub fn eval_complex(&self, z: num_complex::Complex64) -> num_complex::Complex64 {
        let w = z.inv();
        self.coeffs
            .iter()
            .rev()
            .fold(num_complex::Complex64::new(0.0, 0.0), |acc, b| acc * w + b.to_f64())
    }
}

impl<F: Field> fmt::Debug for InvZSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("InvZSeries")
            .field("truncation", &self.truncation())
            .field("coeffs", &self.coeffs)
            .finish()
    }
}

/// `b_0 + b_1 z^-1 + … + O(z^-(N+1))`, zero terms omitted.
impl fmt::Display for InvZSeries<Rat> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, b) in self.coeffs.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            match n {
                0 => write!(f, "{b} + ")?,
                _ => write!(f, "({b})*z^-{n} + ")?,
            }
        }
        write!(f, "O(z^-{})", self.truncation() + 1)
    }
}
