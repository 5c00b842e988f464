use proptest::prelude::*;
use rug::Rational;

use harmonium::boson::{boson_kernel, boson_spectrum, mehler_check};
use harmonium::cli::oracle_report;
use harmonium::export::decimal_from_log10;
use harmonium::fermion::{build_fermion_polynomial, fermion_rdo_matrix, FermionPolynomial};
use harmonium::model::{effective_oscillator, effective_oscillator_from_lengths, EffectiveOscillator, ModelParams, RdoExponent};
use harmonium::numerics::{gauss_hermite, hermite_function, jacobi_eigh, BigReal, Precision, Real, SymmetricMatrix};
use harmonium::spectrum::{alpha_root, natural_spectrum, Parity};
use harmonium::fermion::HCoefficients;

fn ratio() -> impl Strategy<Value = f64> {
    prop_oneof![0.3f64..0.98, 1.02f64..2.5]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn two_routes_to_the_effective_oscillator(n in 2usize..9, l in ratio()) {
        let p = ModelParams::from_l_ratio(n, l).unwrap();
        let osc = effective_oscillator(&p).unwrap();
        let (len, beta) = effective_oscillator_from_lengths(&p);
        prop_assert!((osc.length - len).abs() < 1e-12 * len);
        let beta = beta.unwrap();
        prop_assert!((osc.beta_homega - beta).abs() < 1e-11 * beta.max(1.0));
        prop_assert!((osc.boltzmann_q - (-beta).exp()).abs() < 1e-12);
        let r = RdoExponent::<f64>::from_params(&p, Precision::DOUBLE).unwrap();
        prop_assert!((EffectiveOscillator::mehler_q(&r) - osc.boltzmann_q).abs() < 1e-12);
    }

    #[test]
    fn boson_spectrum_is_geometric(n in 1usize..8, l in ratio(), k_max in 1usize..300) {
        let p = ModelParams::from_l_ratio(n, l).unwrap();
        let s = boson_spectrum(&p, k_max).unwrap();
        let total = n as f64;
        for k in 0..s.occupations.len() {
            prop_assert!(s.partial_sum(k) <= total * (1.0 + 1e-15));
            if k > 0 {
                prop_assert!(s.occupations[k] <= s.occupations[k - 1]);
                if s.occupations[k] > f64::MIN_POSITIVE {
                    let r = s.occupations[k] / s.occupations[k - 1];
                    prop_assert!((r / s.q - 1.0).abs() <= 2.0 * f64::EPSILON);
                }
            }
        }
    }

    #[test]
    fn kernel_is_symmetric(n in 1usize..6, l in ratio(), x in -3.0f64..3.0, y in -3.0f64..3.0) {
        let p = ModelParams::from_l_ratio(n, l).unwrap();
        let a = boson_kernel(&p, x, y).unwrap();
        let b = boson_kernel(&p, y, x).unwrap();
        prop_assert!((a - b).abs() <= 1e-15 * a.abs());
    }

    #[test]
    fn mehler_tail_obeys_cramer_bound(l in 0.3f64..0.95, x in -3.0f64..3.0, y in -3.0f64..3.0, t in 1usize..40) {
        // |φ_k(x)| <= K π^{-1/4} L^{-1/2}, K = 1.086435, so the tail after t terms is at most N q^t K² / (sqrt(π) L)
        let p = ModelParams::from_l_ratio(3, l).unwrap();
        let osc = effective_oscillator(&p).unwrap();
        let kernel = boson_kernel(&p, x, y).unwrap();
        let res = mehler_check(&p, x, y, t).unwrap() * kernel;
        let k = 1.086435f64;
        let bound = 3.0 * osc.boltzmann_q.powi(t as i32) * k * k / (std::f64::consts::PI.sqrt() * osc.length);
        prop_assert!(res <= bound * (1.0 + 1e-9) + 1e-15 * (t as f64) * kernel.abs().max(1.0), "{} > {}", res, bound);
    }

    #[test]
    fn polynomial_mirror_symmetry(n in 1usize..6, an in 1i64..40, bn in -20i64..20) {
        let a = Rational::from((an, 8));
        let b = Rational::from((bn, 64));
        match FermionPolynomial::from_exponent(&a, &b, n) {
            Ok(poly) => {
                let c = poly.rational_coefficients();
                prop_assert_eq!(c.len(), n);
                for (nu, row) in c.iter().enumerate() {
                    prop_assert_eq!(row.len(), 2 * nu + 1);
                    for mu in 0..=2 * nu {
                        prop_assert_eq!(&row[mu], &row[2 * nu - mu]);
                    }
                }
            }
            Err(harmonium::Error::SingularModel(_)) => {
                let d = a.clone() - Rational::from(n as i64 - 1) * &b;
                let sigma = || Rational::from(2) * &a - Rational::from(2) * &b - Rational::from(2 * (n as i64 - 1)) * &b * &b / &d;
                prop_assert!(d <= 0 || sigma() <= 0);
            }
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn fermion_matrix_structure(n in 1usize..6, l in ratio(), extra in 0usize..30) {
        let p = ModelParams::from_l_ratio(n, l).unwrap();
        let m_max = 10 * n + extra;
        let r = fermion_rdo_matrix::<f64>(&p, m_max, Precision::DOUBLE).unwrap();
        let band = 2 * (n - 1);
        for i in 0..m_max {
            for j in i..m_max {
                let v = *r.matrix.get(i, j);
                if (j - i) % 2 == 1 || j - i > band {
                    prop_assert_eq!(v, 0.0);
                }
            }
        }
        let s = natural_spectrum(&r.matrix, n).unwrap();
        prop_assert!((s.trace() - n as f64).abs() < 1e-11 * n as f64);
        for (k, lam) in s.occupations.iter().enumerate() {
            prop_assert!(*lam >= 0.0 && *lam <= 1.0 + 1e-12, "λ_{} = {}", k, lam);
            for m in 0..m_max {
                if Parity::of(m) != s.parities[k] {
                    prop_assert_eq!(s.vectors[k][m], 0.0);
                }
            }
        }
    }

    #[test]
    fn oracle_agrees_with_assembly(n in 1usize..4, l in 0.35f64..0.95) {
        let r = oracle_report(&ModelParams::from_l_ratio(n, l).unwrap(), 10, None).unwrap();
        prop_assert!(r.pass, "{:?}", r);
    }

    #[test]
    fn jacobi_reconstructs(seed in any::<u64>(), dim in 2usize..12) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let prec = Precision::new(128).unwrap();
        let m = SymmetricMatrix::from_fn(dim, prec, |_, _| BigReal::from_f64(rng.gen_range(-1.0..1.0), prec));
        let e = jacobi_eigh(&m).unwrap();
        let tol = 2f64.powi(-110) * dim as f64;
        for (k, v) in e.vectors.iter().enumerate() {
            let av = m.mul_vec(v);
            for i in 0..dim {
                let d = (av[i].clone() - &(e.values[k].clone() * &v[i])).abs().to_f64();
                prop_assert!(d < tol, "residual {}", d);
            }
        }
    }

    #[test]
    fn hermite_functions_orthonormal(scale in 0.4f64..1.6, a in 0usize..25, b in 0usize..25) {
        let rule = gauss_hermite::<f64>(60, Precision::DOUBLE).unwrap();
        // substitute x = scale * u so the rule weight matches the product of the two Gaussians
        let v = rule.integrate(|u| {
            let x = scale * u;
            hermite_function(a, &scale, &x) * hermite_function(b, &scale, &x) * (u * u).exp() * scale
        });
        let target = if a == b { 1.0 } else { 0.0 };
        prop_assert!((v - target).abs() < 1e-11);
    }

    #[test]
    fn log_decimal_round_trip(lg in -5000.0f64..0.0) {
        let s = decimal_from_log10(lg);
        let (m, e) = s.split_once('e').unwrap();
        let back = m.parse::<f64>().unwrap().log10() + e.parse::<f64>().unwrap();
        prop_assert!((back - lg).abs() < 1e-13 * lg.abs().max(1.0));
    }

    #[test]
    fn factorized_quadratic_root(c in 0.05f64..3.0) {
        let h = HCoefficients::new(2, vec![1.0, -2.0 * (2.0 * c).cosh(), 1.0]).unwrap();
        let a = alpha_root(&h).unwrap();
        prop_assert!((a.re - c).abs() < 1e-9 * c.max(1.0));
        prop_assert!(a.im.abs() < 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn polynomial_normalization(n in 1usize..6, l in ratio()) {
        let p = ModelParams::from_l_ratio(n, l).unwrap();
        let poly = build_fermion_polynomial(&p).unwrap();
        let sigma = poly.sigma().to_f64();
        let rule = gauss_hermite::<f64>(40, Precision::DOUBLE).unwrap();
        let s = sigma.sqrt();
        let v = rule.integrate(|u| poly.evaluate(&(u / s), &(u / s))) / s;
        prop_assert!((v - n as f64).abs() < 1e-12 * n as f64, "{}", v);
    }

    #[test]
    fn two_fermion_occupations_come_in_pairs(l in 0.3f64..0.95) {
        let p = ModelParams::from_l_ratio(2, l).unwrap();
        let r = fermion_rdo_matrix::<BigReal>(&p, 60, Precision::new(128).unwrap()).unwrap();
        let s = natural_spectrum(&r.matrix, 2).unwrap();
        // odd partners drop out once λ reaches the 128-bit resolution
        for j in (0..30).take_while(|&j| s.occupations[2 * j + 1].to_f64() > 1e-25) {
            let (a, b) = (&s.occupations[2 * j], &s.occupations[2 * j + 1]);
            let d = (a.clone() - b).abs().to_f64();
            prop_assert!(d <= 1e-30, "pair {}: {} vs {}", j, a.to_decimal(), b.to_decimal());
            prop_assert_ne!(s.parities[2 * j], s.parities[2 * j + 1]);
        }
    }

    #[test]
    fn dominant_orbital_is_local(n in 2usize..5, l in 0.45f64..0.95) {
        let p = ModelParams::from_l_ratio(n, l).unwrap();
        let prec = Precision::new(128).unwrap();
        let r = fermion_rdo_matrix::<BigReal>(&p, 60, prec).unwrap();
        let s = natural_spectrum(&r.matrix, n).unwrap();
        for k in (0..30).take_while(|&k| s.occupations[k].to_f64() > 1e-25) {
            let d = s.dominant[k];
            if n == 2 {
                // degenerate even/odd pairs may come in either order
                prop_assert!(d / 2 == k / 2, "k = {}, dominant {}", k, d);
            } else {
                prop_assert!(d == k || d.abs_diff(k) == 2, "k = {}, dominant {}", k, d);
            }
        }
    }
}
