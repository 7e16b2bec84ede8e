//! Deterministic generation of random decaying rational symbols.
//!
//! Used by the π⁺ property suite and the quadrature cross-check; the
//! generator is a seeded xorshift so runs are reproducible without any
//! RNG dependency.

use crate::sym::{q, ScalarPoly};

use super::ratfn::{ipow, RatFn};
use super::xi::XiPoly;

pub struct SymbolSampler {
    state: u64,
}

impl SymbolSampler {
    pub fn new(seed: u64) -> Self {
        SymbolSampler { state: seed.max(1) }
    }

    fn next_u64(&mut self) -> u64 {
        // xorshift64*
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }

    pub fn below(&mut self, m: u64) -> u64 {
        self.next_u64() % m
    }

    fn small_rational(&mut self) -> ScalarPoly {
        let num = self.below(9) as i64 - 4;
        let den = 1 + self.below(3) as i64;
        let base = ScalarPoly::from_q(q(num, den));
        if self.below(3) == 0 {
            base * ipow(1)
        } else {
            base
        }
    }

    fn xi_coeff(&mut self) -> XiPoly {
        let mut out = XiPoly::constant(self.small_rational());
        if self.below(2) == 0 {
            let j = 1 + self.below(3) as usize;
            out = out.add(&XiPoly::var(j).scale(&self.small_rational()));
        }
        out
    }

    /// A random symbol with poles at ±i of orders 1..=3 and numerator
    /// degree ≤ p + q - 1 (decaying, so π⁺ applies).
    pub fn decaying_symbol(&mut self) -> RatFn<XiPoly> {
        loop {
            let p = 1 + self.below(3) as u32;
            let qq = 1 + self.below(3) as u32;
            let deg = self.below((p + qq) as u64) as usize; // ≤ p+q-1
            let mut num = Vec::with_capacity(deg + 1);
            for _ in 0..=deg {
                num.push(self.xi_coeff());
            }
            let f = RatFn::new(num, p, qq);
            if !f.is_zero() && f.decays() {
                return f;
            }
        }
    }

    /// A random symbol with numerator degree ≤ p + q - 2, integrable over
    /// the real line.
    pub fn integrable_symbol(&mut self) -> RatFn<XiPoly> {
        loop {
            let p = 1 + self.below(3) as u32;
            let qq = 1 + self.below(3) as u32;
            if p + qq < 2 {
                continue;
            }
            let deg = self.below((p + qq - 1) as u64) as usize; // ≤ p+q-2
            let mut num = Vec::with_capacity(deg + 1);
            for _ in 0..=deg {
                num.push(self.xi_coeff());
            }
            let f = RatFn::new(num, p, qq);
            if !f.is_zero() && f.num_coeffs().len() as i64 - 1 <= (p + qq) as i64 - 2 {
                return f;
            }
        }
    }

    /// A point on the unit sphere for numeric evaluation.
    pub fn sphere_point(&mut self) -> [f64; 3] {
        let mut v = [0.0f64; 3];
        for x in v.iter_mut() {
            *x = (self.below(2001) as f64 - 1000.0) / 1000.0;
        }
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if norm < 1e-3 {
            return [1.0, 0.0, 0.0];
        }
        [v[0] / norm, v[1] / norm, v[2] / norm]
    }
}
