use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;
use spectral_torelli::algebra::expr::parse_poly;
use spectral_torelli::algebra::multipoly::symbols;
use spectral_torelli::algebra::rational::rat;
use spectral_torelli::algebra::Ring;
use spectral_torelli::series::{
    gar92_hamiltonians, phase_symbols, substitute_hamiltonian, verify_hamilton_flow,
    LaurentSolution, SubstitutionMode, TruncatedSeries,
};
use spectral_torelli::{Error, MultiPoly};

const H1_CONSTANT: &str =
    "405/32*alpha^4 + 81/22*gamma + 648/77*alpha^2*s2 - 150/77*alpha*s1 - 23/110*s2^2";
const H2_CONSTANT: &str = "729/64*alpha^5 + 243/44*alpha*gamma + 81*beta^2 \
    + 1539/616*alpha^3*s2 - 207/308*alpha^2*s1 - 729/220*alpha*s2^2 + s1*s2";

fn param(sol: &LaurentSolution, e: &str) -> MultiPoly {
    parse_poly(e, &sol.vars).unwrap()
}

#[test]
fn h1_is_constant_along_the_series() {
    let sol = LaurentSolution::gar92();
    let (h1, _) = gar92_hamiltonians();
    let s = substitute_hamiltonian(&h1, &sol, SubstitutionMode::Certified).unwrap();
    assert_eq!(s.order(), Some(1));
    for k in s.known_exponents() {
        let c = s.coeff(k).unwrap();
        if k == 0 {
            assert_eq!(c, param(&sol, H1_CONSTANT));
        } else {
            assert!(c.is_zero(), "t^{k} coefficient {c}");
        }
    }
}

#[test]
fn h2_needs_the_printed_terms() {
    let sol = LaurentSolution::gar92();
    let (_, h2) = gar92_hamiltonians();
    assert!(matches!(
        substitute_hamiltonian(&h2, &sol, SubstitutionMode::Certified),
        Err(Error::InsufficientTruncation { .. })
    ));
    let s = substitute_hamiltonian(&h2, &sol, SubstitutionMode::AsPrinted).unwrap();
    assert_eq!(s.coeff(0).unwrap(), param(&sol, H2_CONSTANT));
    for k in s.lowest_exponent()..0 {
        assert!(s.coeff(k).unwrap().is_zero(), "pole at t^{k}");
    }
}

#[test]
fn h1_flow_residuals_vanish() {
    let sol = LaurentSolution::gar92();
    let (h1, _) = gar92_hamiltonians();
    let r = verify_hamilton_flow(&h1, &sol).unwrap();
    assert!(r.all_vanish, "{r:#?}");
    let checked: Vec<_> = r.residuals.iter().map(|x| x.checked_below).collect();
    assert!(checked.iter().all(Option::is_some));
}

#[test]
fn shifted_beta_in_q1_breaks_the_flow() {
    let mut sol = LaurentSolution::gar92();
    let one = MultiPoly::one(&sol.vars);
    let q1 = sol.q1.try_add(&TruncatedSeries::constant(one)).unwrap();
    sol.q1 = q1;
    let (h1, _) = gar92_hamiltonians();
    let r = verify_hamilton_flow(&h1, &sol).unwrap();
    assert!(!r.all_vanish);
}

#[test]
fn q2_squared_against_term_expansion() {
    let sol = LaurentSolution::gar92();
    let sq = sol.q2.try_mul(&sol.q2).unwrap();
    // q2 = -t^-3 + c1 t + c2 t^2 + ... + O(t^6): val = -3, so O(t^3)
    assert_eq!(sq.order(), Some(3));
    let c = |k| sol.q2.coeff(k).unwrap();
    let mut expect = BTreeMap::new();
    for i in -3..6 {
        for j in -3..6 {
            if i + j < 3 {
                let e = expect
                    .entry(i + j)
                    .or_insert_with(|| MultiPoly::zero(&sol.vars));
                *e = &*e + &(&c(i) * &c(j));
            }
        }
    }
    for (k, v) in expect {
        assert_eq!(sq.coeff(k).unwrap(), v, "t^{k}");
    }
    assert_eq!(sq.coeff(-6).unwrap(), MultiPoly::one(&sol.vars));
}

#[test]
fn substitution_is_additive() {
    let sol = LaurentSolution::gar92();
    let (h1, h2) = gar92_hamiltonians();
    let mode = SubstitutionMode::AsPrinted;
    let sum = substitute_hamiltonian(&(&h1 + &h2), &sol, mode).unwrap();
    let parts = substitute_hamiltonian(&h1, &sol, mode)
        .unwrap()
        .try_add(&substitute_hamiltonian(&h2, &sol, mode).unwrap())
        .unwrap();
    assert_eq!(sum, parts);
}

#[test]
fn unknown_parameter_is_rejected() {
    let sol = LaurentSolution::gar92();
    let vars = symbols(&["q1", "z"]);
    let h = parse_poly("q1*z", &vars).unwrap();
    assert!(matches!(
        substitute_hamiltonian(&h, &sol, SubstitutionMode::AsPrinted),
        Err(Error::UnknownVariable(v)) if v == "z"
    ));
}

#[test]
fn phase_table_has_parameters() {
    assert_eq!(phase_symbols().len(), 6);
}

fn series_strategy(vars: Arc<Vec<String>>) -> impl Strategy<Value = TruncatedSeries> {
    (
        -4i32..2,
        prop::collection::vec((-5i64..6, -5i64..6), 1..6),
        1i32..6,
    )
        .prop_map(move |(lo, cs, extra)| {
            let a = MultiPoly::var(&vars, "a").unwrap();
            let coeffs: Vec<MultiPoly> = cs
                .iter()
                .map(|&(x, y)| &MultiPoly::constant(&vars, rat(x, 1)) + &a.scale(&rat(y, 1)))
                .collect();
            let n = lo + extra;
            TruncatedSeries::new(&vars, lo, coeffs, Some(n)).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn leibniz_rule(a in series_strategy(symbols(&["a"])), b in series_strategy(symbols(&["a"]))) {
        let prod = match a.try_mul(&b) { Ok(p) => p, Err(_) => return Ok(()) };
        let Ok(lhs) = prod.differentiate() else { return Ok(()) };
        let Ok(r1) = a.differentiate().and_then(|da| da.try_mul(&b)) else { return Ok(()) };
        let Ok(r2) = b.differentiate().and_then(|db| a.try_mul(&db)) else { return Ok(()) };
        let rhs = r1.try_add(&r2).unwrap();
        // compare where both sides are known
        for k in lhs.known_exponents() {
            if let (Some(x), Some(y)) = (lhs.coeff(k), rhs.coeff(k)) {
                prop_assert_eq!(x, y, "t^{}", k);
            }
        }
    }

    #[test]
    fn longer_inputs_keep_reported_coefficients(
        a in series_strategy(symbols(&["a"])),
        b in series_strategy(symbols(&["a"])),
        tail in -5i64..6,
    ) {
        let Ok(short) = a.try_mul(&b) else { return Ok(()) };
        // extend `a` by one more known coefficient
        let n = a.order().unwrap();
        let vars = a.vars().clone();
        let mut coeffs: Vec<MultiPoly> = a.known_exponents().map(|k| a.coeff(k).unwrap()).collect();
        coeffs.push(MultiPoly::constant(&vars, rat(tail, 1)));
        let longer = TruncatedSeries::new(&vars, a.lowest_exponent(), coeffs, Some(n + 1)).unwrap();
        let long = longer.try_mul(&b).unwrap();
        for k in short.known_exponents() {
            prop_assert_eq!(short.coeff(k), long.coeff(k), "t^{}", k);
        }
    }
}
