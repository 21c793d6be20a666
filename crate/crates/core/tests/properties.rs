mod common;

use common::{distinct_rats, nonzero_small_rat, root_config, small_rat};
use liouville::asymptotics::{charge_system_from_roots, potential_numeric};
use liouville::parse::{factored_form, parse_poly, roots_from_factored};
use liouville::series::InvZSeries;
use liouville::symmetric::{
    complete_homogeneous, complete_homogeneous_direct, determinant_bareiss, determinant_cofactor,
    determinant_exact, elementary_from_roots, generalized_vandermonde, vandermonde_matrix,
    vandermonde_product, SymTable,
};
use liouville::*;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use proptest::prelude::*;

fn poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(small_rat(), 0..=max_deg + 1).prop_map(Poly::new)
}

fn series(n: usize) -> impl Strategy<Value = InvZSeries> {
    prop::collection::vec(small_rat(), n + 1).prop_map(move |c| InvZSeries::new(c, n))
}

fn is_reduced(r: &Rat) -> bool {
    r.denom() > &BigInt::from(0) && r.numer().gcd(r.denom()) == BigInt::from(1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poly_ring_axioms(a in poly(8), b in poly(8), c in poly(8)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() && !b.is_zero() {
            prop_assert_eq!((&a * &b).degree(), Some(a.degree().unwrap() + b.degree().unwrap()));
        }
    }

    #[test]
    fn derivative_linear_and_leibniz(a in poly(8), b in poly(8), k in small_rat()) {
        prop_assert_eq!((&a + &b.scale(&k)).derivative(), &a.derivative() + &b.derivative().scale(&k));
        prop_assert_eq!((&a * &b).derivative(), &(&a.derivative() * &b) + &(&a * &b.derivative()));
    }

    #[test]
    fn roots_are_roots(roots in prop::collection::vec(small_rat(), 0..8)) {
        let p = Poly::from_roots(&roots, true);
        prop_assert!(p.is_monic());
        prop_assert_eq!(p.degree(), Some(roots.len() + 1));
        prop_assert!(p.eval(&Rat::integer(0)).is_zero());
        for a in &roots {
            prop_assert!(p.eval(a).is_zero());
        }
    }

    #[test]
    fn rationals_stay_reduced(a in poly(6), x in small_rat(), y in nonzero_small_rat()) {
        let v = a.eval(&x);
        prop_assert!(is_reduced(&v));
        prop_assert!(is_reduced(&(v.clone() * y.inv().unwrap())));
        for c in a.derivative().coeffs() {
            prop_assert!(is_reduced(c));
        }
    }

    #[test]
    fn gcd_divides_both(a in poly(5), b in poly(5), c in poly(3)) {
        prop_assume!(!c.is_zero());
        let (ac, bc) = (&a * &c, &b * &c);
        prop_assume!(!ac.is_zero() || !bc.is_zero());
        let g = ac.gcd(&bc).unwrap();
        prop_assert!(g.is_monic());
        prop_assert!(ac.div_rem(&g).unwrap().1.is_zero());
        prop_assert!(bc.div_rem(&g).unwrap().1.is_zero());
        prop_assert!(g.div_rem(&c.monic()).unwrap().1.is_zero());
    }

    #[test]
    fn squarefree_iff_distinct(roots in prop::collection::vec(small_rat(), 1..6)) {
        let p = Poly::from_roots(&roots, false);
        let mut sorted = roots.clone();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(p.is_squarefree().unwrap(), sorted.len() == roots.len());
    }

    #[test]
    fn vandermonde_determinant_is_product(points in distinct_rats(6)) {
        let m = vandermonde_matrix(&points);
        let product = vandermonde_product(&points);
        prop_assert_eq!(determinant_exact(&m).unwrap(), product.clone());
        prop_assert_eq!(determinant_bareiss(&m).unwrap(), determinant_cofactor(&m).unwrap());
    }

    #[test]
    fn vandermonde_recurrence(points in distinct_rats(7)) {
        prop_assume!(points.len() >= 2);
        let n = points.len() - 1;
        let (head, last) = (&points[..n], &points[n]);
        let factor = head.iter().fold(Rat::integer(1), |acc, x| acc * (x - last));
        let sign = if n % 2 == 0 { Rat::integer(1) } else { Rat::integer(-1) };
        prop_assert_eq!(vandermonde_product(&points), sign * factor * vandermonde_product(head));
    }

    #[test]
    fn generalized_vandermonde_factorization(points in distinct_rats(6), l in 1u32..=6) {
        prop_assert_eq!(
            generalized_vandermonde(&points, l).unwrap(),
            vandermonde_product(&points) * complete_homogeneous(&points, l as usize)
        );
    }

    #[test]
    fn complete_homogeneous_matches_enumeration(roots in prop::collection::vec(small_rat(), 0..=5), l in 0usize..=8) {
        prop_assert_eq!(complete_homogeneous(&roots, l), complete_homogeneous_direct(&roots, l).unwrap());
    }

    #[test]
    fn symmetric_functions_are_symmetric(roots in prop::collection::vec(small_rat(), 1..=6), l in 0usize..=8, rot in 0usize..6) {
        let mut perm = roots.clone();
        perm.rotate_left(rot % roots.len());
        perm.reverse();
        prop_assert_eq!(complete_homogeneous(&roots, l), complete_homogeneous(&perm, l));
        prop_assert_eq!(elementary_from_roots(&roots), elementary_from_roots(&perm));
        prop_assert!(SymTable::new(&roots, 12).newton_relation_holds());
    }

    #[test]
    fn series_leibniz(f in series(10), g in series(12)) {
        let lhs = f.mul(&g).derivative();
        let rhs = f.derivative().mul(&g).add(&f.mul(&g.derivative()));
        prop_assert!(lhs.agrees_with(&rhs));
        prop_assert!(lhs.truncation().min(rhs.truncation()) >= 10);
    }

    #[test]
    fn antiderivative_round_trip(tail in prop::collection::vec(small_rat(), 0..16)) {
        let mut coeffs = vec![Rat::integer(0), Rat::integer(0)];
        coeffs.extend(tail.iter().cloned());
        let n = coeffs.len() - 1;
        let f = InvZSeries::new(coeffs, n);
        let g = f.antiderivative().unwrap();
        prop_assert_eq!(g.coeff(0), Some(&Rat::integer(0)));
        prop_assert!(g.derivative().agrees_with(&f));
        prop_assert_eq!(g.derivative().truncation(), f.truncation());
    }

    #[test]
    fn valuation_is_additive(fv in 0usize..5, gv in 0usize..5, a in nonzero_small_rat(), b in nonzero_small_rat(), f in series(14), g in series(14)) {
        let f = InvZSeries::monomial(a, fv, 14).add(&InvZSeries::new(f.coeffs()[..].iter().enumerate().map(|(i, c)| if i <= fv { Rat::integer(0) } else { c.clone() }).collect(), 14));
        let g = InvZSeries::monomial(b, gv, 14).add(&InvZSeries::new(g.coeffs()[..].iter().enumerate().map(|(i, c)| if i <= gv { Rat::integer(0) } else { c.clone() }).collect(), 14));
        prop_assert_eq!(f.mul(&g).valuation(), Valuation::Finite(fv + gv));
    }

    #[test]
    fn rational_series_matches_partial_fraction_sum(cfg in root_config(6), n in 4usize..20) {
        let direct = InvZSeries::from_rational(&Poly::one(), &cfg.denominator(), n).unwrap();
        let pf = partial_fractions(&Poly::one(), &cfg).unwrap();
        let summed = pf.terms.iter().fold(InvZSeries::zero(n), |acc, t| {
            acc.add(&InvZSeries::inverse_linear(&t.pole, n).scale(&t.coefficient))
        });
        prop_assert_eq!(direct, summed);
        prop_assert_eq!(pf.reconstruct(), Poly::one());
    }

    #[test]
    fn log_factor_derivative_identity(a in small_rat(), n in 2usize..20) {
        // d/dz log(1 - a/z) = a z^-1 · 1/(z - a)
        let lhs = InvZSeries::log_factor(&a, n).derivative();
        let rhs = InvZSeries::monomial(a.clone(), 1, n + 1).mul(&InvZSeries::inverse_linear(&a, n));
        prop_assert!(lhs.agrees_with(&rhs));
    }

    #[test]
    fn integral_paths_agree(cfg in root_config(6), extra in 1usize..12) {
        let n = cfg.q() + extra;
        let a = integrate_via_coefficients(&cfg, n).unwrap();
        let b = integrate_via_pfd(&cfg, n).unwrap();
        prop_assert_eq!(&a.series, &b.series);
        prop_assert_eq!(a.valuation, Valuation::Finite(cfg.q()));
        prop_assert!(a.matches_closed_form(cfg.q()));
        let f = InvZSeries::from_rational(&Poly::one(), &cfg.denominator(), n + 1).unwrap();
        prop_assert!(a.series.derivative().agrees_with(&f));
    }

    #[test]
    fn integral_scaling_and_permutation(cfg in root_config(5), t in nonzero_small_rat()) {
        let n = cfg.q() + 8;
        let base = integrate_via_coefficients(&cfg, n).unwrap();
        let mut rev = cfg.roots().to_vec();
        rev.reverse();
        let permuted = integrate_via_coefficients(&RootConfig::new(rev).unwrap(), n).unwrap();
        prop_assert_eq!(&base, &permuted);
        let scaled = integrate_via_coefficients(&cfg.scaled(&t).unwrap(), n).unwrap();
        for l in 0..=n - cfg.q() {
            let q = cfg.q();
            prop_assert_eq!(scaled.series.coeff(q + l).unwrap(), &(base.series.coeff(q + l).unwrap() * t.pow(l as u32)));
        }
    }

    #[test]
    fn lemma_holds(cfg in root_config(6)) {
        prop_assert!(verify_lemma(&cfg, cfg.q() + 8).unwrap().all_pass());
    }

    #[test]
    fn poly_display_round_trips(p in poly(7)) {
        prop_assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn factored_form_round_trips(roots in distinct_rats(6)) {
        let text = factored_form(&roots);
        prop_assert_eq!(parse_poly(&text).unwrap(), Poly::from_roots(&roots, true));
        prop_assert_eq!(roots_from_factored(&text).unwrap(), roots);
    }
}

/// `(f(z + h) - f(z - h)) / 2h` with `h = 1e-5·|z|` along the direction of `z`.
fn central_difference(f: impl Fn(Complex64) -> Complex64, z: Complex64) -> Complex64 {
    let h = z * 1e-5;
    (f(z + h) - f(z - h)) / (h * 2.0)
}

// Sample circles sit close to the roots: further out, cancellation among the
// log terms pushes the potential's difference quotient past 1e-9.
#[test]
fn potential_and_series_share_the_derivative_one_over_q() {
    let cases = [
        (vec![Rat::integer(1), Rat::integer(2)], 3.0),
        (vec![Rat::ratio(1, 2)], 1.0),
        (vec![Rat::ratio(-1, 3), Rat::ratio(1, 5)], 1.0),
    ];
    for (roots, radius) in cases {
        let cfg = RootConfig::new(roots).unwrap();
        let q_poly = cfg.denominator();
        let coeffs: Vec<f64> = q_poly.coeffs().iter().map(Rat::to_f64).collect();
        let q_at = |z: Complex64| coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);
        let system = charge_system_from_roots(&cfg).to_numeric();
        let g = integrate_via_coefficients(&cfg, 160).unwrap().series;
        for z in liouville::asymptotics::circle_points(radius, 24) {
            let target = q_at(z).inv();
            let dv = central_difference(|w| potential_numeric(&system, w).unwrap(), z);
            let dg = central_difference(|w| g.eval_complex(w), z);
            assert!((dv - target).norm() / target.norm() < 1e-9, "potential at {z}: {dv} vs {target}");
            assert!((dg - target).norm() / target.norm() < 1e-9, "series at {z}: {dg} vs {target}");
        }
    }
}
