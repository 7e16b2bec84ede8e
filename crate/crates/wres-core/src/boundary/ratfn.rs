//! Rational functions of the normal covariable ξ_n with poles only at ±i.
//!
//! A symbol is stored as numerator coefficients over the denominator
//! (ξ_n - i)^p (ξ_n + i)^q. The π⁺ projection keeps the part with poles
//! at +i (holomorphic in the lower half-plane), computed by exact Taylor
//! expansion of the numerator against (ξ_n + i)^(-q) at ξ_n = i; the line
//! integral ∫ dξ_n is 2πi times the residue at +i.

use std::fmt;

use crate::error::CoreError;
use crate::sym::{q, ScalarPoly, Symbol, Q};

use super::elem::BoundaryElem;
use super::xi::XiPoly;

/// Coefficient ring for rational boundary symbols.
pub trait BCoeff: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale_sp(&self, c: &ScalarPoly) -> Self;
    fn try_mul(&self, o: &Self) -> Result<Self, CoreError>;
    /// Canonical form modulo the unit-sphere relation.
    fn reduce(&self) -> Self;
}

impl BCoeff for XiPoly {
    fn zero() -> Self {
        XiPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn neg(&self) -> Self {
        self.neg()
    }
    fn scale_sp(&self, c: &ScalarPoly) -> Self {
        self.scale(c)
    }
    fn try_mul(&self, o: &Self) -> Result<Self, CoreError> {
        Ok(self.mul(o))
    }
    fn reduce(&self) -> Self {
        self.reduce_unit_sphere()
    }
}

impl BCoeff for BoundaryElem {
    fn zero() -> Self {
        BoundaryElem::zero()
    }
    fn is_zero(&self) -> bool {
        self.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn neg(&self) -> Self {
        self.neg()
    }
    fn scale_sp(&self, c: &ScalarPoly) -> Self {
        self.scale_sp(c)
    }
    fn try_mul(&self, o: &Self) -> Result<Self, CoreError> {
        self.try_mul(o)
    }
    fn reduce(&self) -> Self {
        self.reduce_unit_sphere()
    }
}

/// The imaginary unit to an integer power, as an exact scalar.
pub fn ipow(e: i64) -> ScalarPoly {
    ScalarPoly::var_pow(Symbol::ImagUnit, e.rem_euclid(4) as i32)
}

fn binom_q(n: u64, k: u64) -> Q {
    let mut out = Q::from_integer(1.into());
    for j in 0..k {
        out = out * q((n - j) as i64, 1) / q((j + 1) as i64, 1);
    }
    out
}

/// N(ξ_n) / [(ξ_n - i)^p (ξ_n + i)^q] in normal form.
#[derive(Debug, Clone, PartialEq)]
pub struct RatFn<C: BCoeff> {
    num: Vec<C>,
    p: u32,
    q: u32,
}

impl<C: BCoeff> RatFn<C> {
    pub fn new(num: Vec<C>, p: u32, q: u32) -> Self {
        let mut out = RatFn { num, p, q };
        out.normalize();
        out
    }

    pub fn zero() -> Self {
        RatFn {
            num: Vec::new(),
            p: 0,
            q: 0,
        }
    }

    pub fn poly(num: Vec<C>) -> Self {
        RatFn::new(num, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn pole_orders(&self) -> (u32, u32) {
        (self.p, self.q)
    }

    pub fn num_coeffs(&self) -> &[C] {
        &self.num
    }

    fn num_degree(&self) -> i64 {
        self.num.len() as i64 - 1
    }

    /// Numerator degree strictly below total pole order.
    pub fn decays(&self) -> bool {
        self.is_zero() || self.num_degree() < (self.p + self.q) as i64
    }

    fn normalize(&mut self) {
        for c in self.num.iter_mut() {
            *c = c.reduce();
        }
        while matches!(self.num.last(), Some(c) if c.is_zero()) {
            self.num.pop();
        }
        if self.num.is_empty() {
            self.p = 0;
            self.q = 0;
            return;
        }
        loop {
            let mut progressed = false;
            if self.p > 0 {
                if let Some(div) = try_divide_linear(&self.num, true) {
                    self.num = div;
                    self.p -= 1;
                    progressed = true;
                }
            }
            if self.q > 0 {
                if let Some(div) = try_divide_linear(&self.num, false) {
                    self.num = div;
                    self.q -= 1;
                    progressed = true;
                }
            }
            if !progressed {
                break;
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let p = self.p.max(o.p);
        let q = self.q.max(o.q);
        let a = widen(&self.num, p - self.p, q - self.q);
        let b = widen(&o.num, p - o.p, q - o.q);
        let n = a.len().max(b.len());
        let mut num = Vec::with_capacity(n);
        for k in 0..n {
            let x = a.get(k).cloned().unwrap_or_else(C::zero);
            let y = b.get(k).cloned().unwrap_or_else(C::zero);
            num.push(x.add(&y));
        }
        RatFn::new(num, p, q)
    }

    pub fn neg(&self) -> Self {
        RatFn {
            num: self.num.iter().map(|c| c.neg()).collect(),
            p: self.p,
            q: self.q,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale_sp(&self, c: &ScalarPoly) -> Self {
        RatFn::new(
            self.num.iter().map(|x| x.scale_sp(c)).collect(),
            self.p,
            self.q,
        )
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, CoreError> {
        if self.is_zero() || o.is_zero() {
            return Ok(RatFn::zero());
        }
        let mut num = vec![C::zero(); self.num.len() + o.num.len() - 1];
        for (ka, ca) in self.num.iter().enumerate() {
            for (kb, cb) in o.num.iter().enumerate() {
                num[ka + kb] = num[ka + kb].add(&ca.try_mul(cb)?);
            }
        }
        Ok(RatFn::new(num, self.p + o.p, self.q + o.q))
    }

    /// Taylor coefficients, up to the requested order, of
    /// N(ξ_n)(ξ_n + i)^(-q) around ξ_n = i.
    fn upper_taylor(&self, order: u32) -> Vec<C> {
        // numerator in powers of u = ξ_n - i
        let deg = self.num.len();
        let mut n_u: Vec<C> = Vec::with_capacity(deg);
        for m in 0..deg {
            let mut acc = C::zero();
            for k in m..deg {
                let c = binom_q(k as u64, m as u64);
                let scale = ScalarPoly::from_q(c) * ipow((k - m) as i64);
                acc = acc.add(&self.num[k].scale_sp(&scale));
            }
            n_u.push(acc);
        }
        // series of (u + 2i)^(-q)
        let s = |t: u32| -> ScalarPoly {
            if self.q == 0 {
                return if t == 0 {
                    ScalarPoly::one()
                } else {
                    ScalarPoly::zero()
                };
            }
            let sign = if t.is_multiple_of(2) { 1 } else { -1 };
            let c = binom_q((self.q + t - 1) as u64, t as u64) * q(sign, 1);
            let m = (self.q + t) as i64;
            ScalarPoly::from_q(c * q(1, 2i64.pow(m as u32))) * ipow(-m)
        };
        let mut out = Vec::with_capacity(order as usize);
        for m in 0..order {
            let mut acc = C::zero();
            for j in 0..=m.min(deg.saturating_sub(1) as u32) {
                acc = acc.add(&n_u[j as usize].scale_sp(&s(m - j)));
            }
            out.push(acc);
        }
        out
    }

    /// The component with poles only at ξ_n = +i.
    pub fn pi_plus(&self) -> Result<Self, CoreError> {
        if self.is_zero() || self.q == 0 {
            return Ok(self.clone());
        }
        if !self.decays() {
            return Err(CoreError::DecayViolation {
                num_deg: self.num_degree().max(0) as usize,
                poles: (self.p + self.q) as usize,
            });
        }
        if self.p == 0 {
            return Ok(RatFn::zero());
        }
        let a_u = self.upper_taylor(self.p);
        // convert Σ A_u[m] u^m back to powers of ξ_n
        let mut num = vec![C::zero(); self.p as usize];
        for (m, coeff) in a_u.iter().enumerate() {
            for (k, slot) in num.iter_mut().enumerate().take(m + 1) {
                let c = binom_q(m as u64, k as u64);
                let scale = ScalarPoly::from_q(c)
                    * ipow((m - k) as i64)
                    * ScalarPoly::from_int(if (m - k) % 2 == 1 { -1 } else { 1 });
                *slot = slot.add(&coeff.scale_sp(&scale));
            }
        }
        Ok(RatFn::new(num, self.p, 0))
    }

    /// The component with poles only at ξ_n = -i.
    pub fn pi_minus(&self) -> Result<Self, CoreError> {
        Ok(self.sub(&self.pi_plus()?))
    }

    /// Formal ∂/∂ξ_n.
    pub fn dxi_n(&self) -> Self {
        if self.is_zero() {
            return RatFn::zero();
        }
        // [N' (x-i)(x+i) - N (p(x+i) + q(x-i))] / [(x-i)^(p+1) (x+i)^(q+1)]
        let mut dnum: Vec<C> = Vec::new();
        if self.num.len() > 1 {
            for k in 1..self.num.len() {
                dnum.push(self.num[k].scale_sp(&ScalarPoly::from_int(k as i64)));
            }
        }
        // N'(x² + 1)
        let mut t1 = vec![C::zero(); dnum.len() + 2];
        for (k, c) in dnum.iter().enumerate() {
            t1[k] = t1[k].add(c);
            t1[k + 2] = t1[k + 2].add(c);
        }
        // N (p+q) x + N (p-q) i
        let pq_sum = ScalarPoly::from_int((self.p + self.q) as i64);
        let pq_diff = ScalarPoly::from_int(self.p as i64 - self.q as i64) * ipow(1);
        let mut t2 = vec![C::zero(); self.num.len() + 1];
        for (k, c) in self.num.iter().enumerate() {
            t2[k + 1] = t2[k + 1].add(&c.scale_sp(&pq_sum));
            t2[k] = t2[k].add(&c.scale_sp(&pq_diff));
        }
        let n = t1.len().max(t2.len());
        let mut num = Vec::with_capacity(n);
        for k in 0..n {
            let a = t1.get(k).cloned().unwrap_or_else(C::zero);
            let b = t2.get(k).cloned().unwrap_or_else(C::zero);
            num.push(a.add(&b.neg()));
        }
        RatFn::new(num, self.p + 1, self.q + 1)
    }

    /// ∫_{-∞}^{+∞} dξ_n, requiring decay of order ≥ 2: equals 2πi times
    /// the residue at +i.
    pub fn integrate(&self) -> Result<C, CoreError> {
        if self.is_zero() {
            return Ok(C::zero());
        }
        if self.num_degree() > (self.p + self.q) as i64 - 2 {
            return Err(CoreError::IntegrationDecay);
        }
        if self.p == 0 {
            return Ok(C::zero());
        }
        let a_u = self.upper_taylor(self.p);
        let res = a_u[self.p as usize - 1].clone();
        let two_pi_i = ScalarPoly::pi_pow(1).scale(&q(2, 1)) * ipow(1);
        Ok(res.scale_sp(&two_pi_i))
    }
}

impl RatFn<XiPoly> {
    /// Numeric value at real ξ_n and a tangential point on the unit
    /// sphere; coefficients must be free of undetermined symbols.
    pub fn eval_num(&self, xi_n: f64, xi: [f64; 3]) -> Result<num_complex::Complex64, CoreError> {
        use num_complex::Complex64;
        let env = std::collections::HashMap::new();
        let mut num = Complex64::new(0.0, 0.0);
        let x = Complex64::new(xi_n, 0.0);
        let mut xp = Complex64::new(1.0, 0.0);
        for c in &self.num {
            num += c.eval(xi, &env)? * xp;
            xp *= x;
        }
        let i = Complex64::new(0.0, 1.0);
        let den = (x - i).powi(self.p as i32) * (x + i).powi(self.q as i32);
        Ok(num / den)
    }
}

fn widen<C: BCoeff>(num: &[C], dp: u32, dq: u32) -> Vec<C> {
    let mut out = num.to_vec();
    // multiply by (x - i)^dp (x + i)^dq
    for _ in 0..dp {
        out = mul_linear(&out, true);
    }
    for _ in 0..dq {
        out = mul_linear(&out, false);
    }
    out
}

/// Multiply by (x - i) when `plus_pole` else (x + i).
fn mul_linear<C: BCoeff>(num: &[C], plus_pole: bool) -> Vec<C> {
    let root = if plus_pole { ipow(1) } else { -ipow(1) };
    let mut out = vec![C::zero(); num.len() + 1];
    for (k, c) in num.iter().enumerate() {
        out[k + 1] = out[k + 1].add(c);
        out[k] = out[k].add(&c.scale_sp(&root).neg());
    }
    out
}

/// Exact division by (x - i) / (x + i) when the numerator vanishes there.
fn try_divide_linear<C: BCoeff>(num: &[C], plus_pole: bool) -> Option<Vec<C>> {
    if num.is_empty() {
        return None;
    }
    let root = if plus_pole { ipow(1) } else { -ipow(1) };
    let mut quotient = vec![C::zero(); num.len() - 1];
    let mut carry = C::zero();
    for k in (0..num.len()).rev() {
        let value = num[k].add(&carry.scale_sp(&root));
        if k == 0 {
            if value.reduce().is_zero() {
                return Some(quotient);
            }
            return None;
        }
        quotient[k - 1] = value.clone();
        carry = value;
    }
    None
}

impl<C: BCoeff> fmt::Display for RatFn<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(f, "[")?;
        for (k, c) in self.num.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({:?})*xn^{}", c, k)?;
        }
        write!(f, "] / [(xn-i)^{} (xn+i)^{}]", self.p, self.q)
    }
}

/// A symbol N(ξ', ξ_n) / |ξ|^(2w) before restriction to the unit
/// cosphere; supports the tangential ξ-derivatives the boundary terms
/// need, then restricts to a [`RatFn`].
#[derive(Debug, Clone, PartialEq)]
pub struct FullSymbol {
    num: Vec<BoundaryElem>,
    w: u32,
}

impl FullSymbol {
    pub fn new(num: Vec<BoundaryElem>, w: u32) -> Self {
        FullSymbol { num, w }
    }

    fn norm_sq_mul(num: &[BoundaryElem]) -> Vec<BoundaryElem> {
        // multiply by |ξ|² = |ξ'|² + ξ_n²
        let nsq = XiPoly::norm_sq();
        let mut out = vec![BoundaryElem::zero(); num.len() + 2];
        for (k, c) in num.iter().enumerate() {
            out[k] = out[k].add(&c.scale_xi(&nsq));
            out[k + 2] = out[k + 2].add(c);
        }
        out
    }

    /// ∂/∂ξ_j for tangential j: quotient rule against |ξ|^(2w).
    pub fn dxi_t(&self, j: usize) -> Self {
        let dnum: Vec<BoundaryElem> = self.num.iter().map(|c| c.dxi(j)).collect();
        let mut out = FullSymbol::norm_sq_mul(&dnum);
        let scale = ScalarPoly::from_int(2 * self.w as i64);
        for (k, c) in self.num.iter().enumerate() {
            out[k] = out[k].add(&c.mul_var(j).scale_sp(&scale).neg());
        }
        FullSymbol {
            num: out,
            w: self.w + 1,
        }
    }

    /// ∂/∂ξ_n before restriction.
    pub fn dxi_n(&self) -> Self {
        let mut dnum = Vec::new();
        if self.num.len() > 1 {
            for k in 1..self.num.len() {
                dnum.push(self.num[k].scale_sp(&ScalarPoly::from_int(k as i64)));
            }
        }
        let mut out = FullSymbol::norm_sq_mul(&dnum);
        let scale = ScalarPoly::from_int(2 * self.w as i64);
        for (k, c) in self.num.iter().enumerate() {
            if out.len() < k + 2 {
                out.resize(k + 2, BoundaryElem::zero());
            }
            out[k + 1] = out[k + 1].add(&c.scale_sp(&scale).neg());
        }
        FullSymbol {
            num: out,
            w: self.w + 1,
        }
    }

    /// Restriction to |ξ'| = 1: the denominator becomes (1 + ξ_n²)^w.
    pub fn restrict(&self) -> RatFn<BoundaryElem> {
        RatFn::new(self.num.clone(), self.w, self.w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_over_one_plus_sq() -> RatFn<XiPoly> {
        RatFn::new(vec![XiPoly::one()], 1, 1)
    }

    #[test]
    fn pi_plus_standard_example() {
        // π⁺[1/(1+ξ²)] = 1/(2i(ξ-i)) = (-i/2)/(ξ-i)
        let f = one_over_one_plus_sq();
        let plus = f.pi_plus().unwrap();
        let expect = RatFn::new(vec![XiPoly::constant(ipow(1).scale(&q(-1, 2)))], 1, 0);
        assert_eq!(plus, expect);
        // π⁺ + π⁻ = id
        let minus = f.pi_minus().unwrap();
        assert_eq!(plus.add(&minus), f);
        // idempotence
        assert_eq!(plus.pi_plus().unwrap(), plus);
    }

    #[test]
    fn integrate_standard_values() {
        // ∫ 1/(1+ξ²) = π ; ∫ 1/(1+ξ²)² = π/2
        let f = one_over_one_plus_sq();
        assert_eq!(
            f.integrate().unwrap(),
            XiPoly::constant(ScalarPoly::pi_pow(1))
        );
        let f2 = f.try_mul(&f).unwrap();
        assert_eq!(
            f2.integrate().unwrap(),
            XiPoly::constant(ScalarPoly::pi_pow(1).scale(&q(1, 2)))
        );
    }

    #[test]
    fn decay_is_enforced() {
        // ξ²/(1+ξ²) does not decay enough to integrate
        let f = RatFn::new(vec![XiPoly::zero(), XiPoly::zero(), XiPoly::one()], 1, 1);
        assert!(f.integrate().is_err());
        assert!(f.pi_plus().is_err());
        // ξ/(1+ξ²) splits but does not integrate
        let g = RatFn::new(vec![XiPoly::zero(), XiPoly::one()], 1, 1);
        assert!(g.pi_plus().is_ok());
        assert!(g.integrate().is_err());
    }

    #[test]
    fn derivative_of_geometric_pole() {
        // d/dξ [1/(ξ-i)] = -1/(ξ-i)²
        let f = RatFn::new(vec![XiPoly::one()], 1, 0);
        let df = f.dxi_n();
        let expect = RatFn::new(vec![XiPoly::one().neg()], 2, 0);
        assert_eq!(df, expect);
    }

    #[test]
    fn normalization_cancels_common_factors() {
        // (ξ - i)/[(ξ-i)(ξ+i)] = 1/(ξ+i)
        let num = vec![XiPoly::constant(-ipow(1)), XiPoly::one()];
        let f = RatFn::new(num, 1, 1);
        assert_eq!(f.pole_orders(), (0, 1));
    }

    #[test]
    fn add_aligns_denominators() {
        let f = one_over_one_plus_sq();
        let g = RatFn::new(vec![XiPoly::one()], 1, 0);
        let sum = f.add(&g);
        // 1/(1+ξ²) + 1/(ξ-i) = (1 + ξ + i)/((ξ-i)(ξ+i))
        let expect = RatFn::new(
            vec![XiPoly::constant(ScalarPoly::one() + ipow(1)), XiPoly::one()],
            1,
            1,
        );
        assert_eq!(sum, expect);
    }
}
