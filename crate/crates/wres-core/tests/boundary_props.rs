//! Property suite for the π⁺ projection and the residue integral.
//!
//! π⁺ + π⁻ = id and π⁺∘π⁺ = π⁺ on randomized decaying symbols, exactly;
//! the residue integral agrees with adaptive numeric quadrature to
//! relative 1e-8 (the only place numerics touch the boundary calculus).

use num_complex::Complex64;

use wres_core::boundary::sampling::SymbolSampler;
use wres_core::boundary::{RatFn, XiPoly};

#[test]
fn pi_plus_splits_and_is_idempotent_on_random_symbols() {
    let mut sampler = SymbolSampler::new(0x5EED_1DEA);
    for _ in 0..120 {
        let f = sampler.decaying_symbol();
        let plus = f.pi_plus().expect("decaying symbol splits");
        let minus = f.pi_minus().expect("decaying symbol splits");
        assert_eq!(plus.add(&minus), f, "π⁺ + π⁻ must reproduce the symbol");
        assert_eq!(plus.pi_plus().unwrap(), plus, "π⁺ must be idempotent");
        assert!(
            plus.pi_minus().unwrap().is_zero(),
            "π⁻ of a +i-pole symbol must vanish"
        );
        // pole bookkeeping: the plus part carries no -i poles
        assert_eq!(plus.pole_orders().1, 0);
    }
}

fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let simpson = |x0: f64, x1: f64| {
        let mid = 0.5 * (x0 + x1);
        (x1 - x0) / 6.0 * (f(x0) + 4.0 * f(mid) + f(x1))
    };
    let whole = simpson(a, b);
    let left = simpson(a, m);
    let right = simpson(m, b);
    if depth == 0 || (left + right - whole).abs() < 15.0 * tol {
        left + right + (left + right - whole) / 15.0
    } else {
        adaptive_simpson(f, a, m, tol / 2.0, depth - 1)
            + adaptive_simpson(f, m, b, tol / 2.0, depth - 1)
    }
}

/// ∫_{-∞}^{∞} g(ξ) dξ via ξ = tan θ.
fn line_integral(g: impl Fn(f64) -> Complex64) -> Complex64 {
    let half_pi = std::f64::consts::FRAC_PI_2;
    let lo = -half_pi + 1e-9;
    let hi = half_pi - 1e-9;
    let re = adaptive_simpson(
        &|t: f64| {
            let sec2 = 1.0 / (t.cos() * t.cos());
            g(t.tan()).re * sec2
        },
        lo,
        hi,
        1e-12,
        28,
    );
    let im = adaptive_simpson(
        &|t: f64| {
            let sec2 = 1.0 / (t.cos() * t.cos());
            g(t.tan()).im * sec2
        },
        lo,
        hi,
        1e-12,
        28,
    );
    Complex64::new(re, im)
}

#[test]
fn residue_integral_matches_quadrature() {
    let mut sampler = SymbolSampler::new(0xABCD_EF01);
    let mut nontrivial = 0usize;
    let mut count = 0usize;
    while count < 55 {
        let f: RatFn<XiPoly> = sampler.integrable_symbol();
        let point = sampler.sphere_point();
        let exact_poly = f.integrate().expect("integrable");
        let exact = exact_poly
            .eval(point, &std::collections::HashMap::new())
            .expect("numeric coefficients");
        let numeric = line_integral(|x| f.eval_num(x, point).unwrap());
        let err = (exact - numeric).norm();
        let scale = exact.norm().max(1.0);
        assert!(
            err <= 1e-8 * scale,
            "quadrature mismatch: exact {exact}, numeric {numeric}, err {err}"
        );
        if exact.norm() > 1e-6 {
            nontrivial += 1;
            assert!(
                err / exact.norm() <= 1e-8,
                "relative error too large: {}",
                err / exact.norm()
            );
        }
        count += 1;
    }
    assert!(nontrivial >= 30, "too few nontrivial samples: {nontrivial}");
}

#[test]
fn integral_values_pin_the_contour_orientation() {
    // ∫ dξ/(1+ξ²) = π with the upper-half-plane contour
    let f = RatFn::new(vec![XiPoly::one()], 1, 1);
    let v = f
        .integrate()
        .unwrap()
        .eval([1.0, 0.0, 0.0], &std::collections::HashMap::new())
        .unwrap();
    assert!((v - Complex64::new(std::f64::consts::PI, 0.0)).norm() < 1e-12);
}

#[test]
fn repeated_derivative_matches_finite_differences() {
    // second ξ_n-derivative by the quotient rule, checked against central
    // differences at ξ_n = 1/2
    let f = RatFn::new(vec![XiPoly::one()], 1, 1); // 1/(1+ξ²)
    let d2 = f.dxi_n().dxi_n();
    let point = [0.6, -0.8, 0.0];
    let x = 0.5f64;
    let h = 1e-5;
    let num = (f.eval_num(x + h, point).unwrap() - f.eval_num(x, point).unwrap() * 2.0
        + f.eval_num(x - h, point).unwrap())
        / Complex64::new(h * h, 0.0);
    let sym = d2.eval_num(x, point).unwrap();
    assert!((num - sym).norm() < 1e-5, "fd {num} vs symbolic {sym}");
    // derivative of a constant symbol vanishes
    let c = RatFn::poly(vec![XiPoly::one()]);
    assert!(c.dxi_n().is_zero());
}
