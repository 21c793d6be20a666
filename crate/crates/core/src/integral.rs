//! Formal integration of `1/Q` for `Q(z) = z(z - a_1)…(z - a_q)`.
//!
//! Two independent constructions of `g = ∫ 1/Q` in `K[[1/z]]` are provided:
//!
//! * [`integrate_via_coefficients`] expands `1/Q` at infinity from the
//!   coefficients of `Q` alone and antidifferentiates term by term. This is
//!   the reference path.
//! * [`integrate_via_pfd`] goes through the logarithmic form
//!   `Σ_j log(z - a_j) / Q'(a_j)`, rewriting each `log(z - a)` as
//!   `log z + log(1 - a/z)`. The `log z` parts cancel because the residues
//!   sum to zero.
//!
//! Both normalize the constant of integration to zero. The resulting
//! coefficients are `b_n = -m_n / n`, where `m_k = Σ a_j^k / Q'(a_j)` are the
//! moments checked by [`verify_lemma`]: `m_k = 0` for `k < q`, `m_q = 1` and
//! `m_{q+l} = h_l(a)`.

use thiserror::Error;

use crate::field::{Field, Rat};
use crate::poly::Poly;
use crate::series::{InvZSeries, SeriesError, Valuation};
use crate::symmetric::{complete_homogeneous, SymTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("at least one nonzero root is required")]
    Empty,
    #[error("roots must be nonzero (the root at 0 is implicit)")]
    ZeroRoot,
    #[error("roots must be pairwise distinct")]
    Repeated,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntegralError {
    #[error(transparent)]
    Roots(#[from] RootError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("truncation {truncation} must be at least q + 1 = {min}")]
    TruncationTooSmall { truncation: usize, min: usize },
    #[error("numerator degree {numerator} must be below deg Q = {denominator}")]
    ImproperNumerator { numerator: usize, denominator: usize },
    #[error("max k = {max_k} must be at least q = {q}")]
    MaxKBelowQ { max_k: usize, q: usize },
    #[error("internal invariant violated: residues of 1/Q sum to {0}, not 0")]
    ResidueSum(String),
}

/// The nonzero roots `a_1..a_q` of `Q(z) = z(z - a_1)…(z - a_q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootConfig {
    roots: Vec<Rat>,
}

impl RootConfig {
    pub fn new(roots: Vec<Rat>) -> Result<Self, RootError> {
        if roots.is_empty() {
            return Err(RootError::Empty);
        }
        if roots.iter().any(Field::is_zero) {
            return Err(RootError::ZeroRoot);
        }
        let mut sorted = roots.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(RootError::Repeated);
        }
        Ok(RootConfig { roots })
    }

    pub fn roots(&self) -> &[Rat] {
        &self.roots
    }

    pub fn q(&self) -> usize {
        self.roots.len()
    }

    /// `Q(z) = z·Π(z - a_j)`.
    pub fn denominator(&self) -> Poly {
        Poly::from_roots(&self.roots, true)
    }

    /// `0, a_1, …, a_q`.
    pub fn poles(&self) -> Vec<Rat> {
        std::iter::once(Rat::zero()).chain(self.roots.iter().cloned()).collect()
    }

    /// Every root multiplied by `t` (`t ≠ 0`).
    pub fn scaled(&self, t: &Rat) -> Result<Self, RootError> {
        RootConfig::new(self.roots.iter().map(|a| a * t).collect())
    }

    /// Largest `|a_j|` as a double.
    pub fn radius(&self) -> f64 {
        self.roots.iter().map(|a| a.to_f64().abs()).fold(0.0, f64::max)
    }

    fn check_truncation(&self, truncation: usize) -> Result<(), IntegralError> {
        let min = self.q() + 1;
        if truncation < min {
            return Err(IntegralError::TruncationTooSmall { truncation, min });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialFraction {
    pub pole: Rat,
    pub coefficient: Rat,
}

/// `P/Q = Σ c_j / (z - pole_j)`, pole 0 first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialFractions {
    pub terms: Vec<PartialFraction>,
}

impl PartialFractions {
    /// `Σ_j c_j Π_{k≠j} (z - pole_k)`, which must equal `P`.
    pub fn reconstruct(&self) -> Poly {
        let mut acc = Poly::zero();
        for (j, term) in self.terms.iter().enumerate() {
            let others: Vec<Rat> = self
                .terms
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != j)
                .map(|(_, t)| t.pole.clone())
                .collect();
            acc = &acc + &Poly::from_roots(&others, false).scale(&term.coefficient);
        }
        acc
    }

    pub fn coefficient_sum(&self) -> Rat {
        self.terms
            .iter()
            .fold(Rat::zero(), |acc, t| acc + &t.coefficient)
    }
}

/// Residues `c = P(pole)/Q'(pole)` at `0, a_1, …, a_q`.
pub fn partial_fractions(numerator: &Poly, cfg: &RootConfig) -> Result<PartialFractions, IntegralError> {
    let q = cfg.denominator();
    let deg_q = cfg.q() + 1;
    if let Some(d) = numerator.degree() {
        if d >= deg_q {
            return Err(IntegralError::ImproperNumerator { numerator: d, denominator: deg_q });
        }
    }
    let dq = q.derivative();
    let terms = cfg
        .poles()
        .into_iter()
        .map(|pole| {
            let slope = dq.eval(&pole).inv().expect("Q is square-free");
            PartialFraction { coefficient: numerator.eval(&pole) * slope, pole }
        })
        .collect();
    Ok(PartialFractions { terms })
}

/// `m_0 = 1/Q'(0) + Σ 1/Q'(a_j)`; `m_k = Σ a_j^k / Q'(a_j)` for `k ≥ 1`.
pub fn moment(cfg: &RootConfig, k: u32) -> Rat {
    let dq = cfg.denominator().derivative();
    let pole_term = |a: &Rat| a.pow(k) * dq.eval(a).inv().expect("Q is square-free");
    let nonzero: Rat = cfg.roots().iter().fold(Rat::zero(), |acc, a| acc + pole_term(a));
    if k == 0 {
        nonzero + pole_term(&Rat::zero())
    } else {
        nonzero
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaRow {
    pub k: usize,
    /// The moment `m_k`.
    pub lhs: Rat,
    /// `0`, `1` or `h_{k-q}(a)`.
    pub rhs: Rat,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    pub q: usize,
    pub rows: Vec<LemmaRow>,
}

impl LemmaReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| !r.pass).count()
    }
}

/// Checks every moment identity for `0 ≤ k ≤ max_k`. Mismatches are reported,
/// not raised.
pub fn verify_lemma(cfg: &RootConfig, max_k: usize) -> Result<LemmaReport, IntegralError> {
    let q = cfg.q();
    if max_k < q {
        return Err(IntegralError::MaxKBelowQ { max_k, q });
    }
    let sym = SymTable::new(cfg.roots(), max_k - q);
    let rows = (0..=max_k)
        .map(|k| {
            let lhs = moment(cfg, k as u32);
            let rhs = match k.checked_sub(q) {
                None => Rat::zero(),
                Some(l) => sym.h[l].clone(),
            };
            LemmaRow { k, pass: lhs == rhs, lhs, rhs }
        })
        .collect();
    Ok(LemmaReport { q, rows })
}

/// The integral `g` with `b_0 = 0` and what it is expected to satisfy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralResult {
    pub series: InvZSeries,
    pub valuation: Valuation,
    /// `closed_form[l] = b_{q+l}` from [`closed_form_coefficient`], for `0 ≤ l ≤ N - q`.
    pub closed_form: Vec<Rat>,
}

impl IntegralResult {
    fn new(cfg: &RootConfig, series: InvZSeries) -> Self {
        let valuation = series.valuation();
        let depth = series.truncation().saturating_sub(cfg.q());
        let sym = SymTable::new(cfg.roots(), depth);
        let closed_form = (0..=depth).map(|l| closed_form_from_h(cfg.q(), l, &sym.h[l])).collect();
        IntegralResult { series, valuation, closed_form }
    }

    /// Whether `b_{q+l}` in the series equals `closed_form[l]` for every `l`.
    pub fn matches_closed_form(&self, q: usize) -> bool {
        self.closed_form
            .iter()
            .enumerate()
            .all(|(l, c)| self.series.coeff(q + l) == Some(c))
    }
}

/// `g = Σ_j c_j log(1 - a_j/z)` with `c_j = 1/Q'(pole_j)`.
pub fn integrate_via_pfd(cfg: &RootConfig, truncation: usize) -> Result<IntegralResult, IntegralError> {
    cfg.check_truncation(truncation)?;
    let pfd = partial_fractions(&Poly::one(), cfg)?;
    let total = pfd.coefficient_sum();
    if !total.is_zero() {
        return Err(IntegralError::ResidueSum(total.to_string()));
    }
    let series = pfd.terms.iter().fold(InvZSeries::zero(truncation), |acc, t| {
        acc.add(&InvZSeries::log_factor(&t.pole, truncation).scale(&t.coefficient))
    });
    Ok(IntegralResult::new(cfg, series))
}

/// Antiderivative of the expansion of `1/Q`; never evaluates anything at a root.
pub fn integrate_via_coefficients(cfg: &RootConfig, truncation: usize) -> Result<IntegralResult, IntegralError> {
    cfg.check_truncation(truncation)?;
    let f = InvZSeries::from_rational(&Poly::one(), &cfg.denominator(), truncation + 1)?;
    let series = f.antiderivative()?;
    Ok(IntegralResult::new(cfg, series))
}

fn closed_form_from_h(q: usize, l: usize, h: &Rat) -> Rat {
    let denom = Rat::integer((q + l) as i64).inv().expect("q ≥ 1");
    -(h * denom)
}

/// `b_q = -1/q` and `b_{q+l} = -h_l(a)/(q+l)`.
pub fn closed_form_coefficient(cfg: &RootConfig, l: usize) -> Rat {
    closed_form_from_h(cfg.q(), l, &complete_homogeneous(cfg.roots(), l))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuationReport {
    pub q: usize,
    pub valuation_coefficients: Valuation,
    pub valuation_pfd: Valuation,
    pub leading: Option<Rat>,
    pub expected_leading: Rat,
    pub paths_agree: bool,
}

impl ValuationReport {
    pub fn pass(&self) -> bool {
        self.paths_agree
            && self.valuation_coefficients == Valuation::Finite(self.q)
            && self.valuation_pfd == Valuation::Finite(self.q)
            && self.leading.as_ref() == Some(&self.expected_leading)
    }
}

/// Checks `o(g) = q` with leading coefficient `-1/q` along both paths.
pub fn theorem_valuation_check(cfg: &RootConfig, truncation: usize) -> Result<ValuationReport, IntegralError> {
    let coef = integrate_via_coefficients(cfg, truncation)?;
    let pfd = integrate_via_pfd(cfg, truncation)?;
    let leading = coef
        .valuation
        .finite()
        .and_then(|v| coef.series.coeff(v).cloned());
    Ok(ValuationReport {
        q: cfg.q(),
        valuation_coefficients: coef.valuation,
        valuation_pfd: pfd.valuation,
        leading,
        expected_leading: closed_form_coefficient(cfg, 0),
        paths_agree: coef.series.agrees_with(&pfd.series),
    })
}
