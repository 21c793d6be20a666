//! Shrinking-root behaviour of `g = ∫ 1/Q` and the associated charge systems.
//!
//! As every root is scaled by `t → 0`, `g_t(z)` tends to `-1/(q z^q)`, and the
//! error is led by `b_{q+1}(t·a) z^-(q+1)`, which is linear in `t`. This is
//! the only module that works in floating point; the coefficient side of
//! every report is still exact.

use std::f64::consts::TAU;

use num_complex::Complex64;
use thiserror::Error;

use crate::field::{Field, Rat};
use crate::integral::{integrate_via_coefficients, partial_fractions, IntegralError, RootConfig};
use crate::poly::Poly;

/// Consecutive sup-error ratios inside this band are consistent with the
/// `O(t)` leading error term.
pub const RATIO_BAND: (f64, f64) = (0.3, 0.7);

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AsymptoticsError {
    #[error("evaluation point {z} coincides with a charge")]
    AtPole { z: Complex64 },
    #[error("scale {0} must be positive")]
    NonPositiveScale(String),
    #[error("radius {radius} must exceed the largest scaled root modulus {root_radius}")]
    RadiusInsideRootDisk { radius: f64, root_radius: f64 },
    #[error("at least one sample point is required")]
    NoSamples,
    #[error(transparent)]
    Integral(#[from] IntegralError),
}

/// Charges `1/Q'(p)` at each pole `p` of `1/Q`, exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactChargeSystem {
    /// `(location, magnitude)`, pole 0 first.
    pub charges: Vec<(Rat, Rat)>,
}

impl ExactChargeSystem {
    pub fn total_charge(&self) -> Rat {
        self.charges.iter().fold(Rat::zero(), |acc, (_, m)| acc + m)
    }

    pub fn to_numeric(&self) -> ChargeSystem {
        ChargeSystem {
            charges: self
                .charges
                .iter()
                .map(|(loc, m)| Charge {
                    location: Complex64::new(loc.to_f64(), 0.0),
                    magnitude: m.to_f64(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Charge {
    pub location: Complex64,
    pub magnitude: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ChargeSystem {
    pub charges: Vec<Charge>,
}

impl ChargeSystem {
    pub fn total_charge(&self) -> f64 {
        self.charges.iter().map(|c| c.magnitude).sum()
    }

    /// Complex conjugate configuration.
    pub fn conj(&self) -> ChargeSystem {
        ChargeSystem {
            charges: self
                .charges
                .iter()
                .map(|c| Charge { location: c.location.conj(), magnitude: c.magnitude })
                .collect(),
        }
    }
}

/// Charges `1/Q'(0)` at 0 and `1/Q'(a_j)` at each `a_j`. Their total is
/// exactly zero.
pub fn charge_system_from_roots(cfg: &RootConfig) -> ExactChargeSystem {
    let pfd = partial_fractions(&Poly::one(), cfg).expect("1 is a proper numerator");
    let system = ExactChargeSystem {
        charges: pfd.terms.into_iter().map(|t| (t.pole, t.coefficient)).collect(),
    };
    assert!(system.total_charge().is_zero(), "residues of 1/Q must sum to zero");
    system
}

/// `Σ m_j log(z - p_j)` on the principal branch.
pub fn potential_numeric(system: &ChargeSystem, z: Complex64) -> Result<Complex64, AsymptoticsError> {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in &system.charges {
        let d = z - c.location;
        if d == Complex64::new(0.0, 0.0) {
            return Err(AsymptoticsError::AtPole { z });
        }
        acc += c.magnitude * d.ln();
    }
    Ok(acc)
}

/// `-1/(q z^q)`, the limit of `g` as the roots shrink to 0.
pub fn limit_profile(q: usize, z: Complex64) -> Complex64 {
    -1.0 / (q as f64 * z.powu(q as u32))
}

/// `R·e^{2πik/n}` for `k = 0..n`.
pub fn circle_points(radius: f64, samples: usize) -> Vec<Complex64> {
    (0..samples)
        .map(|k| Complex64::from_polar(radius, TAU * k as f64 / samples as f64))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingRow {
    pub t: Rat,
    /// `b_{q+l}(t·a)` for `l = 0..=N - q`.
    pub coefficients: Vec<Rat>,
    /// `b_q(t·a) = -1/q`.
    pub leading_ok: bool,
    /// `b_{q+l}(t·a) = t^l b_{q+l}(a)` for every recorded `l`.
    pub scaling_ok: bool,
    /// `max |g_t(z) + 1/(q z^q)|` over the sample circle.
    pub sup_error: f64,
    /// `sup_error / previous row's sup_error`.
    pub ratio_to_previous: Option<f64>,
    /// Whether `ratio_to_previous` lies in [`RATIO_BAND`]. A flag, not a failure.
    pub ratio_in_band: Option<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingReport {
    pub q: usize,
    pub radius: f64,
    pub samples: usize,
    pub truncation: usize,
    /// In the order the scales were given.
    pub rows: Vec<ScalingRow>,
    /// Sup-error strictly decreases as `t` decreases.
    pub monotone_decreasing: bool,
}

impl ScalingReport {
    /// All exact checks passed.
    pub fn exact_ok(&self) -> bool {
        self.rows.iter().all(|r| r.leading_ok && r.scaling_ok)
    }
}

/// Tabulates `g_t = ∫ 1/Q_t` for roots `t·a`, exactly and on `|z| = radius`.
pub fn scaling_limit_table(
    cfg: &RootConfig,
    scales: &[Rat],
    radius: f64,
    samples: usize,
    truncation: usize,
) -> Result<ScalingReport, AsymptoticsError> {
    if samples == 0 {
        return Err(AsymptoticsError::NoSamples);
    }
    if let Some(t) = scales.iter().find(|t| !t.is_positive()) {
        return Err(AsymptoticsError::NonPositiveScale(t.to_string()));
    }
    let root_radius = scales
        .iter()
        .map(|t| t.to_f64() * cfg.radius())
        .fold(0.0, f64::max);
    if radius.is_nan() || radius <= root_radius {
        return Err(AsymptoticsError::RadiusInsideRootDisk { radius, root_radius });
    }

    let q = cfg.q();
    let base = integrate_via_coefficients(cfg, truncation)?;
    let points = circle_points(radius, samples);
    let expected_leading = -Rat::integer(q as i64).inv().expect("q ≥ 1");

    let mut rows: Vec<ScalingRow> = Vec::with_capacity(scales.len());
    for t in scales {
        let scaled = cfg.scaled(t).map_err(IntegralError::from)?;
        let g = integrate_via_coefficients(&scaled, truncation)?;
        let coefficients: Vec<Rat> = g.series.coeffs()[q..].to_vec();
        let scaling_ok = coefficients.iter().enumerate().all(|(l, b)| {
            base.series.coeff(q + l).map(|b1| b1 * t.pow(l as u32)).as_ref() == Some(b)
        });
        let sup_error = points
            .iter()
            .map(|&z| (g.series.eval_complex(z) - limit_profile(q, z)).norm())
            .fold(0.0, f64::max);
        let ratio_to_previous = rows.last().map(|prev| sup_error / prev.sup_error);
        rows.push(ScalingRow {
            t: t.clone(),
            leading_ok: coefficients[0] == expected_leading,
            coefficients,
            scaling_ok,
            sup_error,
            ratio_to_previous,
            ratio_in_band: ratio_to_previous.map(|r| (RATIO_BAND.0..=RATIO_BAND.1).contains(&r)),
        });
    }

    let mut by_scale: Vec<&ScalingRow> = rows.iter().collect();
    by_scale.sort_by(|a, b| b.t.cmp(&a.t));
    let monotone_decreasing = by_scale
        .windows(2)
        .all(|w| w[0].t == w[1].t || w[1].sup_error < w[0].sup_error);

    Ok(ScalingReport { q, radius, samples, truncation, rows, monotone_decreasing })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rat {
        Rat::integer(n)
    }

    fn cfg(roots: &[Rat]) -> RootConfig {
        RootConfig::new(roots.to_vec()).unwrap()
    }

    #[test]
    fn charges_from_roots() {
        let a = Rat::ratio(1, 100);
        let dipole = charge_system_from_roots(&cfg(std::slice::from_ref(&a)));
        assert_eq!(
            dipole.charges,
            vec![(r(0), -a.inv().unwrap()), (a.clone(), a.inv().unwrap())]
        );
        let sys = charge_system_from_roots(&cfg(&[r(1), r(2)]));
        let mags: Vec<Rat> = sys.charges.iter().map(|(_, m)| m.clone()).collect();
        assert_eq!(mags, vec![Rat::ratio(1, 2), r(-1), Rat::ratio(1, 2)]);
        assert_eq!(sys.total_charge(), r(0));
    }

    #[test]
    fn dipole_potential_tracks_the_next_term() {
        // (1/a)·log(1 - a/z) = -1/z - a/(2z^2) - …
        let a = 0.01;
        let sys = charge_system_from_roots(&cfg(&[Rat::ratio(1, 100)])).to_numeric();
        let z = Complex64::new(10.0, 0.0);
        let v = potential_numeric(&sys, z).unwrap();
        let two_terms = -1.0 / z - a / (2.0 * z * z);
        assert!((v - two_terms).norm() / two_terms.norm() < 1e-6);
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn potential_edge_cases() {
        assert_eq!(
            potential_numeric(&ChargeSystem::default(), Complex64::new(3.0, 1.0)).unwrap(),
            Complex64::new(0.0, 0.0)
        );
        let sys = charge_system_from_roots(&cfg(&[r(1), r(2)])).to_numeric();
        assert!(matches!(
            potential_numeric(&sys, Complex64::new(2.0, 0.0)),
            Err(AsymptoticsError::AtPole { .. })
        ));
    }

    #[test]
    fn conjugate_symmetry() {
        let sys = ChargeSystem {
            charges: vec![
                Charge { location: Complex64::new(0.5, 1.0), magnitude: 2.0 },
                Charge { location: Complex64::new(-1.0, 0.25), magnitude: -2.0 },
            ],
        };
        let z = Complex64::new(3.0, -4.0);
        let v = potential_numeric(&sys, z).unwrap();
        let w = potential_numeric(&sys.conj(), z.conj()).unwrap();
        assert!((v.conj() - w).norm() < 1e-14);
    }

    #[test]
    fn scaling_table_small() {
        let c = cfg(&[r(1), r(2)]);
        let scales = [r(1), Rat::ratio(1, 2), Rat::ratio(1, 4)];
        let rep = scaling_limit_table(&c, &scales, 10.0, 64, 24).unwrap();
        assert!(rep.exact_ok());
        assert!(rep.monotone_decreasing);
        for row in &rep.rows {
            assert_eq!(row.coefficients[0], Rat::ratio(-1, 2));
            assert_eq!(row.coefficients.len(), 23);
        }
        assert!(rep.rows[2].ratio_in_band.unwrap());
    }

    #[test]
    fn scaling_table_deterministic() {
        let c = cfg(&[r(1), r(2)]);
        let rep = scaling_limit_table(&c, &[r(1), r(1)], 10.0, 16, 12).unwrap();
        assert_eq!(rep.rows[0].coefficients, rep.rows[1].coefficients);
        assert_eq!(rep.rows[0].sup_error, rep.rows[1].sup_error);
        assert!(rep.monotone_decreasing);
    }

    #[test]
    fn scaling_table_errors() {
        let c = cfg(&[r(1), r(2)]);
        assert!(matches!(
            scaling_limit_table(&c, &[r(1)], 1.5, 8, 10),
            Err(AsymptoticsError::RadiusInsideRootDisk { .. })
        ));
        assert!(matches!(
            scaling_limit_table(&c, &[r(0)], 10.0, 8, 10),
            Err(AsymptoticsError::NonPositiveScale(_))
        ));
        assert!(matches!(
            scaling_limit_table(&c, &[r(1)], 10.0, 0, 10),
            Err(AsymptoticsError::NoSamples)
        ));
        assert!(matches!(
            scaling_limit_table(&c, &[r(1)], 10.0, 8, 2),
            Err(AsymptoticsError::Integral(IntegralError::TruncationTooSmall { .. }))
        ));
    }
}
