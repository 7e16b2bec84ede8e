//! Polynomials in the tangential covariables ξ₁, ξ₂, ξ₃.
//!
//! The boundary calculus works on the unit cosphere |ξ'| = 1 of a
//! 4-manifold, so there are three tangential components. Equality checks
//! reduce modulo ξ₁²+ξ₂²+ξ₃² = 1; integration over the sphere is exact,
//! with Ω₃ kept symbolic.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_complex::Complex64;

use crate::error::CoreError;
use crate::sym::{q, vars, ScalarPoly, Q};

pub const TANGENT_DIM: usize = 3;

/// Polynomial in (ξ₁, ξ₂, ξ₃) with exact scalar-polynomial coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct XiPoly {
    terms: BTreeMap<[u8; TANGENT_DIM], ScalarPoly>,
}

impl XiPoly {
    pub fn zero() -> Self {
        XiPoly::default()
    }

    pub fn one() -> Self {
        XiPoly::constant(ScalarPoly::one())
    }

    pub fn constant(c: ScalarPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert([0; TANGENT_DIM], c);
        }
        XiPoly { terms }
    }

    /// ξ_j for j in 1..=3.
    pub fn var(j: usize) -> Self {
        assert!((1..=TANGENT_DIM).contains(&j));
        let mut exp = [0u8; TANGENT_DIM];
        exp[j - 1] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exp, ScalarPoly::one());
        XiPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, exp: [u8; TANGENT_DIM], c: ScalarPoly) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = e.get() + &c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.insert(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-ScalarPoly::one())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = XiPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let mut e = *ea;
                for k in 0..TANGENT_DIM {
                    e[k] += eb[k];
                }
                out.insert(e, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &ScalarPoly) -> Self {
        if c.is_zero() {
            return XiPoly::zero();
        }
        let mut out = XiPoly::zero();
        for (e, v) in &self.terms {
            out.insert(*e, v * c);
        }
        out
    }

    /// Multiply by ξ_j.
    pub fn mul_var(&self, j: usize) -> Self {
        self.mul(&XiPoly::var(j))
    }

    /// Formal ∂/∂ξ_j.
    pub fn dxi(&self, j: usize) -> Self {
        assert!((1..=TANGENT_DIM).contains(&j));
        let mut out = XiPoly::zero();
        for (e, c) in &self.terms {
            let k = e[j - 1];
            if k == 0 {
                continue;
            }
            let mut e2 = *e;
            e2[j - 1] -= 1;
            out.insert(e2, c.scale(&q(k as i64, 1)));
        }
        out
    }

    /// |ξ'|² = ξ₁² + ξ₂² + ξ₃² as a polynomial.
    pub fn norm_sq() -> Self {
        let mut out = XiPoly::zero();
        for j in 1..=TANGENT_DIM {
            out = out.add(&XiPoly::var(j).mul(&XiPoly::var(j)));
        }
        out
    }

    /// Canonical form modulo the sphere relation Σ ξ_j² = 1: eliminates
    /// ξ₃ powers above one.
    pub fn reduce_unit_sphere(&self) -> Self {
        let mut out = XiPoly::zero();
        let sub = XiPoly::one()
            .sub(&XiPoly::var(1).mul(&XiPoly::var(1)))
            .sub(&XiPoly::var(2).mul(&XiPoly::var(2)));
        for (e, c) in &self.terms {
            let k3 = e[2] as usize;
            if k3 < 2 {
                out.insert(*e, c.clone());
                continue;
            }
            // ξ3² = 1 - ξ1² - ξ2², applied k3/2 times
            let mut repl = XiPoly::zero();
            repl.insert([e[0], e[1], (k3 % 2) as u8], c.clone());
            for _ in 0..k3 / 2 {
                repl = repl.mul(&sub);
            }
            for (e2, c2) in repl.terms {
                out.insert(e2, c2);
            }
        }
        out
    }

    /// Exact integral over the unit sphere, odd moments vanish and the
    /// total measure is the symbolic Ω₃:
    /// ∫ ξ^(2a) σ(ξ') = Ω₃ Π(2aᵢ-1)!! / Π_{k=1..A}(2k+1).
    pub fn sphere_moment(&self) -> ScalarPoly {
        let mut out = ScalarPoly::zero();
        for (e, c) in &self.terms {
            if e.iter().any(|k| k % 2 == 1) {
                continue;
            }
            let total: u32 = e.iter().map(|k| (*k as u32) / 2).sum();
            let mut num = Q::from_integer(1.into());
            for k in e {
                num *= double_factorial_odd((*k as i64) / 2);
            }
            let mut den = Q::from_integer(1.into());
            for k in 1..=total as i64 {
                den *= q(2 * k + 1, 1);
            }
            let weight = num / den;
            out = &out + &(c * &vars::omega3()).scale(&weight);
        }
        out
    }

    pub fn eval(
        &self,
        xi: [f64; TANGENT_DIM],
        env: &HashMap<crate::sym::Symbol, Complex64>,
    ) -> Result<Complex64, CoreError> {
        let mut total = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut v = c.eval(env)?;
            for k in 0..TANGENT_DIM {
                v *= Complex64::new(xi[k].powi(e[k] as i32), 0.0);
            }
            total += v;
        }
        Ok(total)
    }
}

/// (2a-1)!! as a rational, with (-1)!! = 1.
fn double_factorial_odd(a: i64) -> Q {
    let mut out = Q::from_integer(1.into());
    let mut k = 2 * a - 1;
    while k > 1 {
        out *= q(k, 1);
        k -= 2;
    }
    out
}

impl fmt::Display for XiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            for (k, p) in e.iter().enumerate() {
                if *p > 0 {
                    write!(f, "*xi{}^{}", k + 1, p)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_moments_vanish() {
        assert!(XiPoly::var(1).sphere_moment().is_zero());
        assert!(XiPoly::var(1)
            .mul(&XiPoly::var(2))
            .sphere_moment()
            .is_zero());
    }

    #[test]
    fn basic_moments() {
        // ∫ 1 = Ω₃, ∫ ξ1² = Ω₃/3, ∫ ξ1⁴ = Ω₃/5, ∫ ξ1²ξ2² = Ω₃/15
        assert_eq!(XiPoly::one().sphere_moment(), vars::omega3());
        let xi1sq = XiPoly::var(1).mul(&XiPoly::var(1));
        assert_eq!(xi1sq.sphere_moment(), vars::omega3().scale(&q(1, 3)));
        assert_eq!(
            xi1sq.mul(&xi1sq).sphere_moment(),
            vars::omega3().scale(&q(1, 5))
        );
        let xi2sq = XiPoly::var(2).mul(&XiPoly::var(2));
        assert_eq!(
            xi1sq.mul(&xi2sq).sphere_moment(),
            vars::omega3().scale(&q(1, 15))
        );
    }

    #[test]
    fn sphere_reduction_consistent_with_moments() {
        // |ξ'|² reduces to 1, and moments agree before/after reduction
        let nsq = XiPoly::norm_sq();
        assert_eq!(nsq.reduce_unit_sphere(), XiPoly::one());
        let p = nsq.mul(&XiPoly::var(3)).mul(&XiPoly::var(3));
        assert_eq!(p.sphere_moment(), p.reduce_unit_sphere().sphere_moment());
    }

    #[test]
    fn moment_matches_quadrature() {
        // numeric oracle: midpoint quadrature in spherical coordinates for
        // ∫ ξ1² ξ3² σ(ξ'), compared against the exact Ω₃/15.
        let n_theta = 400;
        let n_phi = 400;
        let mut acc = 0.0f64;
        for it in 0..n_theta {
            let theta = std::f64::consts::PI * (it as f64 + 0.5) / n_theta as f64;
            for ip in 0..n_phi {
                let phi = 2.0 * std::f64::consts::PI * (ip as f64 + 0.5) / n_phi as f64;
                let x = theta.sin() * phi.cos();
                let z = theta.cos();
                acc += x * x * z * z * theta.sin();
            }
        }
        acc *= std::f64::consts::PI / n_theta as f64 * 2.0 * std::f64::consts::PI / n_phi as f64;
        let omega3 = 4.0 * std::f64::consts::PI;
        assert!((acc - omega3 / 15.0).abs() < 1e-4);
    }
}
