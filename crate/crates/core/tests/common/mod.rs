//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_complex::Complex64;
use spectral_torelli::galois::GaloisGroup;

/// Roots of a polynomial with real coefficients (constant term first) by
/// Durand–Kerner iteration.
pub fn roots(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lc = coeffs[n];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lc).collect();
    let eval = |z: Complex64| {
        monic
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    };
    let radius = 1.0 + monic[..n].iter().map(|c| c.abs()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| seed.powu(k as u32) * radius.min(2.0))
        .collect();
    for _ in 0..2000 {
        let mut delta: f64 = 0.0;
        for i in 0..n {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            let step = eval(z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    // polish
    let deriv: Vec<f64> = (1..=n).map(|k| monic[k] * k as f64).collect();
    let eval_d = |x: Complex64| {
        deriv
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
    };
    for r in z.iter_mut() {
        for _ in 0..5 {
            let d = eval_d(*r);
            if d.norm() > 0.0 {
                *r -= eval(*r) / d;
            }
        }
    }
    z
}

fn near_integer(z: Complex64, tol: f64) -> Option<i64> {
    let r = z.re.round();
    let scale = 1.0 + z.re.abs();
    (z.im.abs() < tol * scale && (z.re - r).abs() < tol * scale).then_some(r as i64)
}

/// Galois group of an irreducible monic integer quartic read off from
/// numerically tracked roots: integrality of the resolvent roots
/// `r1 r2 + r3 r4`, squareness of the discriminant, and for the D4/C4 split
/// integrality of the cyclic invariant `sum r_i^2 r_{i+1}` on `r^2 + k r`.
pub fn numeric_galois_group(desc: &[i64; 5]) -> GaloisGroup {
    let asc: Vec<f64> = desc.iter().rev().map(|&c| c as f64).collect();
    let r = roots(&asc);
    let tol = 1e-7;
    let pairings = [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)];
    let integral: Vec<(usize, usize, usize, usize)> = pairings
        .iter()
        .copied()
        .filter(|&(a, b, c, d)| near_integer(r[a] * r[b] + r[c] * r[d], tol).is_some())
        .collect();
    let mut vand = Complex64::new(1.0, 0.0);
    for i in 0..4 {
        for j in i + 1..4 {
            vand *= r[i] - r[j];
        }
    }
    let disc_is_square = near_integer(vand, tol).is_some();
    match integral.len() {
        0 if disc_is_square => GaloisGroup::A4,
        0 => GaloisGroup::S4,
        1 => {
            let (a, b, c, d) = integral[0];
            // cyclic a -> c -> b -> d, evaluated on s = r^2 + k r
            let cyclic = (1..=3).all(|k| {
                let s: Vec<Complex64> = r.iter().map(|z| z * z + z * k as f64).collect();
                let u = s[a] * s[a] * s[c]
                    + s[c] * s[c] * s[b]
                    + s[b] * s[b] * s[d]
                    + s[d] * s[d] * s[a];
                near_integer(u, tol).is_some()
            });
            if cyclic {
                GaloisGroup::C4
            } else {
                GaloisGroup::D4
            }
        }
        _ => GaloisGroup::V4,
    }
}

/// Smallest quadratic non-residue found by listing squares.
fn nonresidue(p: u64) -> u64 {
    let mut is_sq = vec![false; p as usize];
    for y in 0..p {
        is_sq[((y * y) % p) as usize] = true;
    }
    (1..p).find(|&n| !is_sq[n as usize]).expect("odd prime")
}

/// `(#C(F_p), #C(F_{p^2}))` for `y^2 = f(x)` (residues, constant term
/// first) by tabulating every square in the field.
pub fn brute_force_counts(f: &[u64], p: u64) -> (u64, u64) {
    let deg = f.len() - 1;
    let n = nonresidue(p);
    let lc = f[deg] % p;

    // F_p
    let mut sq1 = vec![0u64; p as usize];
    for y in 0..p {
        sq1[((y * y) % p) as usize] += 1;
    }
    let mut n1 = 0;
    for x in 0..p {
        let v = f.iter().rev().fold(0, |acc, &c| (acc * x + c) % p);
        n1 += sq1[v as usize];
    }
    let inf1 = if deg == 5 { 1 } else { sq1[lc as usize] };
    n1 += inf1;

    // F_{p^2} = F_p[z]/(z^2 - n), element a + b z stored as a + b p
    let mul =
        |(a, b): (u64, u64), (c, d): (u64, u64)| ((a * c + b * d % p * n) % p, (a * d + b * c) % p);
    let size = (p * p) as usize;
    let mut sq2 = vec![0u64; size];
    for a in 0..p {
        for b in 0..p {
            let (s, t) = mul((a, b), (a, b));
            sq2[(s + t * p) as usize] += 1;
        }
    }
    let mut n2 = 0;
    for a in 0..p {
        for b in 0..p {
            let x = (a, b);
            let v = f.iter().rev().fold((0, 0), |acc, &c| {
                let (s, t) = mul(acc, x);
                ((s + c) % p, t)
            });
            n2 += sq2[(v.0 + v.1 * p) as usize];
        }
    }
    let inf2 = if deg == 5 { 1 } else { sq2[lc as usize] };
    n2 += inf2;
    (n1, n2)
}
