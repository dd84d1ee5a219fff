mod common;

use num_traits::ToPrimitive;
use proptest::prelude::*;
use spectral_torelli::algebra::rational::int;
use spectral_torelli::igusa::{absolute, igusa};
use spectral_torelli::{QPoly, Rational, UniPoly};

fn sextic() -> impl Strategy<Value = Vec<i64>> {
    (prop::collection::vec(-6i64..7, 6), 1i64..4).prop_map(|(mut v, lc)| {
        v.push(lc);
        v
    })
}

fn poly(v: &[i64]) -> QPoly {
    UniPoly::new(v.iter().map(|&c| int(c)).collect(), int(0))
}

fn pow(q: &Rational, e: u32) -> Rational {
    (0..e).fold(int(1), |acc, _| acc * q)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn j8_identity(v in sextic()) {
        let Ok(inv) = igusa(&poly(&v)) else { return Ok(()) };
        prop_assert!(inv.j8_identity_holds());
    }

    #[test]
    fn j10_matches_numeric_discriminant(v in sextic()) {
        let Ok(inv) = igusa(&poly(&v)) else { return Ok(()) };
        let asc: Vec<f64> = v.iter().map(|&c| c as f64).collect();
        let r = common::roots(&asc);
        let mut d = num_complex::Complex64::new((v[6] as f64).powi(10), 0.0);
        for i in 0..6 {
            for j in i + 1..6 {
                d *= (r[i] - r[j]) * (r[i] - r[j]);
            }
        }
        let j10 = inv.j10.to_f64().unwrap();
        prop_assert!((d.re - j10).abs() <= 1e-6 * j10.abs().max(1.0), "{} vs {}", d, j10);
        prop_assert!(d.im.abs() <= 1e-6 * j10.abs().max(1.0));
    }

    #[test]
    fn weights_under_scaling_x(v in sextic(), a in 1i64..4, b in -3i64..4) {
        let f = poly(&v);
        let Ok(inv) = igusa(&f) else { return Ok(()) };
        let g = f.compose(&poly(&[b, a]));
        let ing = igusa(&g).unwrap();
        let a = int(a);
        prop_assert_eq!(ing.j2, &inv.j2 * pow(&a, 6));
        prop_assert_eq!(ing.j4, &inv.j4 * pow(&a, 12));
        prop_assert_eq!(ing.j6, &inv.j6 * pow(&a, 18));
        prop_assert_eq!(ing.j10, &inv.j10 * pow(&a, 30));
    }

    #[test]
    fn weights_under_scaling_f(v in sextic(), l in 2i64..5) {
        let f = poly(&v);
        let Ok(inv) = igusa(&f) else { return Ok(()) };
        let l = int(l);
        let ing = igusa(&f.scale(&l)).unwrap();
        prop_assert_eq!(ing.j2, &inv.j2 * pow(&l, 2));
        prop_assert_eq!(ing.j6, &inv.j6 * pow(&l, 6));
        prop_assert_eq!(ing.j10, &inv.j10 * pow(&l, 10));
    }

    #[test]
    fn inversion_preserves_invariants(v in sextic()) {
        prop_assume!(v[0] != 0);
        let f = poly(&v);
        let Ok(inv) = igusa(&f) else { return Ok(()) };
        let ing = igusa(&f.reversed(6)).unwrap();
        prop_assert_eq!(ing, inv);
    }

    #[test]
    fn absolute_invariants_of_twists_agree(v in sextic(), l in 2i64..6) {
        let f = poly(&v);
        let Ok(inv) = igusa(&f) else { return Ok(()) };
        let Ok(a) = absolute(&inv) else { return Ok(()) };
        let b = absolute(&igusa(&f.scale(&int(l))).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }
}
