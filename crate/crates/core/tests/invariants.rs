use std::cmp::Ordering;

use biharmonic_tori::differential::sample_points;
use biharmonic_tori::families::{
    residual_flat_torus, residual_lagrangian, solve, Branch, Family, FamilyParams, RadiiSolution, RadiusValue,
};
use biharmonic_tori::sphere::{
    analytic_flat_torus_forms, bitension_sphere, clifford_hypersurface_chart, flat_torus_chart, fundamental_forms,
};
use biharmonic_tori::surd::{quad_solve, QuadSurd, Rational};
use biharmonic_tori::verifier::{algebraic_oracle, sphere_oracle, Verdict, VerifyConfig};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `x` versus `b√d`, exactly, by comparing squares.
fn cmp_sqrt(x: &Rational, b: &Rational, d: u64) -> Ordering {
    let sign = |r: &Rational| if r.is_zero() { Ordering::Equal } else if r.is_positive() { Ordering::Greater } else { Ordering::Less };
    let (l, r) = (sign(x), if d == 0 { Ordering::Equal } else { sign(b) });
    if l != r {
        return l.cmp(&r);
    }
    let mag = (x * x).cmp(&(b * b * Rational::from_integer(BigInt::from(d))));
    if l == Ordering::Less { mag.reverse() } else { mag }
}

fn admissible(family: Family, n: u32, pick: usize) -> Option<FamilyParams> {
    let all = FamilyParams::admissible(family, n);
    (!all.is_empty()).then(|| all[pick % all.len()])
}

fn family(i: usize) -> Family {
    Family::ALL[i % 3]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normalized_surd_evaluates_like_the_raw_value(
        an in -50i64..50, ad in 1i64..30, bn in -50i64..50, bd in 1i64..30, k in 1i64..8, core in 2u64..40,
    ) {
        // a + b√(k²·core) with the square factor left in the radicand.
        let d = (k * k) as u64 * core;
        let x = QuadSurd::new(ratio(an, ad), ratio(bn, bd), d);
        let digits = 30;
        let e = x.eval(digits);
        let value = Rational::new(e.mantissa().clone(), BigInt::from(10).pow(e.scale()));
        let ulp = Rational::new(BigInt::from(1), BigInt::from(10).pow(digits));
        let (a, b) = (ratio(an, ad), ratio(bn, bd));
        prop_assert_ne!(cmp_sqrt(&(&value - &ulp - &a), &b, d), Ordering::Greater);
        prop_assert_ne!(cmp_sqrt(&(&value + &ulp - &a), &b, d), Ordering::Less);
    }

    #[test]
    fn quadratic_roots_satisfy_vieta_and_sort_like_their_decimals(
        c2 in prop_oneof![-9i64..-1, 1i64..9], c1 in -40i64..40, c0 in -40i64..40, s in 1i64..5,
    ) {
        let coeffs = [QuadSurd::from_integer(c2), QuadSurd::from_rational(ratio(c1, s)), QuadSurd::from_integer(c0)];
        let roots = quad_solve(&coeffs[0], &coeffs[1], &coeffs[2]).unwrap();
        match roots.roots.as_slice() {
            [] => {}
            [x] => {
                prop_assert_eq!(x.checked_mul(&coeffs[0]).unwrap().scale(&ratio(2, 1)), coeffs[1].neg());
            }
            [x1, x2] => {
                let sum = x1.checked_add(x2).unwrap();
                let prod = x1.checked_mul(x2).unwrap();
                prop_assert_eq!(sum, coeffs[1].neg().checked_div(&coeffs[0]).unwrap());
                prop_assert_eq!(prod, coeffs[2].checked_div(&coeffs[0]).unwrap());
                prop_assert!(x1.eval(50).mantissa() < x2.eval(50).mantissa());
            }
            more => prop_assert!(false, "{} roots", more.len()),
        }
    }

    #[test]
    fn proper_solutions_are_normalized_and_solve_their_equations(f in 0usize..3, n in 1u32..=12, pick in 0usize..12) {
        let Some(params) = admissible(family(f), n, pick) else { return Ok(()) };
        for sol in solve(&params).unwrap().proper() {
            let mut total = QuadSurd::zero();
            for e in &sol.squared_radii {
                let v = e.value.exact().expect("solver output is exact");
                prop_assert!(v.is_positive() && v.cmp_value(&QuadSurd::one()) == Ordering::Less);
                total = total.checked_add(&v.scale(&ratio(e.multiplicity as i64, 1))).unwrap();
            }
            prop_assert_eq!(total, QuadSurd::one());
            let b = sol.squared_radii_vec();
            let residual = match params.family {
                Family::SphereFlatTorus => residual_flat_torus(&b, n).unwrap(),
                Family::CpnLagrangianTorus => residual_lagrangian(&b, n).unwrap(),
                Family::CpnHypersurface => {
                    let (r2, s2) = (b[0], b[1]);
                    let (p, q) = (params.p as f64, params.q as f64);
                    vec![(2.0 * p + 1.0) * s2 / r2 + (2.0 * q + 1.0) * r2 / s2 - 2.0 * (n as f64 + 2.0)]
                }
            };
            prop_assert!(residual.iter().all(|e| e.abs() < 1e-12), "{residual:?}");
        }
    }

    #[test]
    fn swapping_p_and_q_keeps_the_radii(f in 0usize..3, n in 1u32..=12, pick in 0usize..12) {
        let Some(params) = admissible(family(f), n, pick) else { return Ok(()) };
        let collect = |p: &FamilyParams| {
            let mut v: Vec<Vec<(RadiusValue, u32)>> = solve(p).unwrap().solutions.iter().map(RadiiSolution::multiset).collect();
            v.sort_by_key(|m| format!("{m:?}"));
            v
        };
        prop_assert_eq!(collect(&params), collect(&params.swapped()));
    }

    #[test]
    fn fd_forms_match_closed_forms(raw in prop::collection::vec(0.2f64..1.0, 2..5), seed in 0u64..1000) {
        let total: f64 = raw.iter().map(|x| x * x).sum();
        let radii: Vec<f64> = raw.iter().map(|x| x / total.sqrt()).collect();
        let chart = flat_torus_chart(&radii).unwrap();
        for theta in sample_points(&chart, 4, seed) {
            let fd = fundamental_forms(&chart, &theta).unwrap();
            let exact = analytic_flat_torus_forms(&radii, &theta).unwrap();
            let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(1.0);
            prop_assert!(rel(fd.norm_b_sq, exact.norm_b_sq) < 1e-7);
            prop_assert!((&fd.mean_curvature - &exact.mean_curvature).norm() / exact.mean_curvature.norm().max(1.0) < 1e-7);
        }
    }

    #[test]
    fn clifford_hypersurface_norm_and_homogeneity(n in 1usize..5, pick in 0usize..5, r2 in 0.15f64..0.85, seed in 0u64..1000) {
        let p = pick % n;
        let q = n - 1 - p;
        let (r, s) = (r2.sqrt(), (1.0 - r2).sqrt());
        let chart = clifford_hypersurface_chart(n, p, q, r, s).unwrap();
        let expected = (2 * p + 1) as f64 * (s / r).powi(2) + (2 * q + 1) as f64 * (r / s).powi(2);
        let mut h = Vec::new();
        for theta in sample_points(&chart, 3, seed) {
            let forms = fundamental_forms(&chart, &theta).unwrap();
            prop_assert!((forms.norm_b_sq - expected).abs() < 1e-8 * expected.max(1.0), "{} vs {expected}", forms.norm_b_sq);
            h.push(forms.mean_curvature.norm_squared());
            let mut want = chart.principal_curvatures();
            want.sort_by(|a, b| b.total_cmp(a));
            let got = forms.shape_spectrum.unwrap();
            prop_assert!(got.iter().zip(&want).all(|(a, b)| (a - b).abs() < 1e-8 * b.abs().max(1.0)));
        }
        prop_assert!(h.iter().all(|x| (x - h[0]).abs() < 1e-8 * h[0].max(1.0)));
    }

    #[test]
    fn oracle_never_contradicts_the_algebra(n in 2u32..5, pick in 0usize..4, bump in prop_oneof![Just(1.0f64), 0.8f64..0.95, 1.05f64..1.2]) {
        let Some(params) = admissible(Family::SphereFlatTorus, n, pick) else { return Ok(()) };
        let Some(sol) = solve(&params).unwrap().proper().next().cloned() else { return Ok(()) };
        let mut b = sol.squared_radii_vec();
        b[0] *= bump;
        let radii: Vec<biharmonic_tori::surd::Decimal> = b.iter().map(|x| format!("{:.17}", x.sqrt()).parse().unwrap()).collect();
        let sample = RadiiSolution::from_radii(params, &radii).unwrap();
        let config = VerifyConfig { points: 2, ..VerifyConfig::default() };
        let algebra = algebraic_oracle(&sample, &config).unwrap().residual.max_abs;
        let verdict = sphere_oracle(&sample, &config).unwrap().verdict;
        if algebra < 1e-12 {
            prop_assert_ne!(verdict, Verdict::NotBiharmonic);
        }
        if algebra > 1e-2 {
            prop_assert_ne!(verdict, Verdict::Biharmonic);
        }
    }
}

#[test]
fn flat_torus_discriminants_and_minimal_root() {
    for n in 1..=11u32 {
        for params in FamilyParams::admissible(Family::SphereFlatTorus, n) {
            let sol = solve(&params).unwrap();
            let k = params.p as i64 - params.q as i64;
            assert_eq!(sol.discriminant, ratio(k.pow(4), 1));
            for s in &sol.solutions {
                if s.t.as_ref() == Some(&QuadSurd::from_integer(((n + 1) * (n + 1)) as i64)) {
                    let values: Vec<f64> = s.squared_radii_vec();
                    assert!(values.iter().all(|b| (b - 1.0 / (n as f64 + 1.0)).abs() < 1e-15), "{params}");
                    assert_eq!(s.branch, Branch::MinimalExcluded);
                }
            }
        }
    }
}

#[test]
fn lagrangian_discriminant() {
    for n in 1..=12u32 {
        for params in FamilyParams::admissible(Family::CpnLagrangianTorus, n) {
            let k = params.p as i64 - params.q as i64;
            let want = k.pow(4) + 8 * (n as i64 + 3) * k * k;
            assert_eq!(solve(&params).unwrap().discriminant, ratio(want, 1), "{params}");
        }
    }
}

#[test]
fn every_proper_sphere_torus_is_biharmonic_and_perturbations_are_not() {
    for n in 2..=5u32 {
        for params in FamilyParams::admissible(Family::SphereFlatTorus, n) {
            for sol in solve(&params).unwrap().proper() {
                let chart = flat_torus_chart(&sol.radii_vec()).unwrap();
                for theta in sample_points(&chart, 3, n as u64) {
                    let bt = bitension_sphere(&chart, &theta).unwrap();
                    assert!(bt.norm < 1e-4, "{params}: {}", bt.norm);
                    assert!(bt.tangential_norm < 1e-5, "{params}: {}", bt.tangential_norm);
                    assert!(bt.step_change.unwrap() < 0.25 * 1e-4, "{params}: {:?}", bt.step_change);
                }
                let mut b = sol.squared_radii_vec();
                b[0] *= 1.05;
                let total: f64 = b.iter().sum();
                let radii: Vec<f64> = b.iter().map(|x| (x / total).sqrt()).collect();
                let chart = flat_torus_chart(&radii).unwrap();
                let theta = sample_points(&chart, 1, 0).remove(0);
                assert!(bitension_sphere(&chart, &theta).unwrap().norm > 1e-2, "{params} perturbed");
            }
        }
    }
}
