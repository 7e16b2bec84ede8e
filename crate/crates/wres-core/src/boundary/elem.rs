//! Clifford-valued coefficients for boundary symbols.
//!
//! Elements live in Cl(4) generated by the tangential frame c(e₁..e₃)
//! (from which c(ξ') = Σ ξ_j c(e_j) is assembled) and c(dx_n) = c(e₄),
//! with ξ'-polynomial coefficients. An element may also carry terms that
//! sandwich the abstract form factor Ψ between Clifford monomials; the
//! calculus is linear in Ψ, and the trace reduces sandwiches to opaque
//! trace symbols Tr[c_I Ψ].

use std::collections::BTreeMap;
use std::fmt;

use crate::clifford::mul_monomials;
use crate::error::CoreError;
use crate::sym::{ScalarPoly, Symbol};

use super::xi::XiPoly;

/// Normal-direction generator index: c(dx_n) = c(e₄).
pub const NORMAL: u8 = 4;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BoundaryElem {
    pure: BTreeMap<Vec<u8>, XiPoly>,
    sand: BTreeMap<(Vec<u8>, Vec<u8>), XiPoly>,
}

impl BoundaryElem {
    pub fn zero() -> Self {
        BoundaryElem::default()
    }

    pub fn from_xi(c: XiPoly) -> Self {
        let mut out = BoundaryElem::zero();
        out.insert_pure(vec![], c);
        out
    }

    pub fn identity() -> Self {
        BoundaryElem::from_xi(XiPoly::one())
    }

    /// c(e_i) for i in 1..=4.
    pub fn generator(i: u8) -> Self {
        assert!((1..=NORMAL).contains(&i));
        let mut out = BoundaryElem::zero();
        out.insert_pure(vec![i], XiPoly::one());
        out
    }

    /// c(ξ') = Σ_j ξ_j c(e_j).
    pub fn c_xi_prime() -> Self {
        let mut out = BoundaryElem::zero();
        for j in 1..=3u8 {
            out.insert_pure(vec![j], XiPoly::var(j as usize));
        }
        out
    }

    /// c(dx_n).
    pub fn c_dxn() -> Self {
        BoundaryElem::generator(NORMAL)
    }

    /// a·Ψ·b for pure elements a, b.
    pub fn sandwich(a: &Self, b: &Self) -> Result<Self, CoreError> {
        if !a.sand.is_empty() || !b.sand.is_empty() {
            return Err(CoreError::NonlinearPsi);
        }
        let mut out = BoundaryElem::zero();
        for (ma, ca) in &a.pure {
            for (mb, cb) in &b.pure {
                out.insert_sand((ma.clone(), mb.clone()), ca.mul(cb));
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.pure.is_empty() && self.sand.is_empty()
    }

    fn insert_pure(&mut self, mono: Vec<u8>, c: XiPoly) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.pure.entry(mono) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = e.get().add(&c);
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    fn insert_sand(&mut self, key: (Vec<u8>, Vec<u8>), c: XiPoly) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.sand.entry(key) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = e.get().add(&c);
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
        for (m, c) in &o.pure {
            out.insert_pure(m.clone(), c.clone());
        }
        for (k, c) in &o.sand {
            out.insert_sand(k.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale_sp(&-ScalarPoly::one())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale_sp(&self, c: &ScalarPoly) -> Self {
        self.scale_xi(&XiPoly::constant(c.clone()))
    }

    pub fn scale_xi(&self, c: &XiPoly) -> Self {
        let mut out = BoundaryElem::zero();
        for (m, v) in &self.pure {
            out.insert_pure(m.clone(), v.mul(c));
        }
        for (k, v) in &self.sand {
            out.insert_sand(k.clone(), v.mul(c));
        }
        out
    }

    /// Clifford product; fails when both factors carry a sandwich.
    pub fn try_mul(&self, o: &Self) -> Result<Self, CoreError> {
        if !self.sand.is_empty() && !o.sand.is_empty() {
            return Err(CoreError::NonlinearPsi);
        }
        let mut out = BoundaryElem::zero();
        for (ma, ca) in &self.pure {
            for (mb, cb) in &o.pure {
                let (sign, m) = mul_monomials(ma, mb);
                out.insert_pure(m, signed(ca.mul(cb), sign));
            }
        }
        for (ma, ca) in &self.pure {
            for ((la, ra), cb) in &o.sand {
                let (sign, m) = mul_monomials(ma, la);
                out.insert_sand((m, ra.clone()), signed(ca.mul(cb), sign));
            }
        }
        for ((la, ra), ca) in &self.sand {
            for (mb, cb) in &o.pure {
                let (sign, m) = mul_monomials(ra, mb);
                out.insert_sand((la.clone(), m), signed(ca.mul(cb), sign));
            }
        }
        Ok(out)
    }

    /// Spinor trace over the 4-dimensional fiber. Pure monomials trace to
    /// d × scalar part; sandwiches reduce cyclically to Tr[c_K Ψ] symbols.
    pub fn trace(&self) -> XiPoly {
        let mut out = XiPoly::zero();
        if let Some(c) = self.pure.get(&vec![]) {
            out = out.add(&c.scale(&ScalarPoly::from_int(4)));
        }
        for ((a, b), c) in &self.sand {
            // Tr[c_A Ψ c_B] = Tr[Ψ c_B c_A]
            let (sign, k) = mul_monomials(b, a);
            let sym = ScalarPoly::var(Symbol::BoundaryTrace(k));
            let mut coeff = c.scale(&sym);
            if sign < 0 {
                coeff = coeff.neg();
            }
            out = out.add(&coeff);
        }
        out.reduce_unit_sphere()
    }

    /// Coefficient-wise ∂/∂ξ_j for tangential j.
    pub fn dxi(&self, j: usize) -> Self {
        let mut out = BoundaryElem::zero();
        for (m, c) in &self.pure {
            out.insert_pure(m.clone(), c.dxi(j));
        }
        for (k, c) in &self.sand {
            out.insert_sand(k.clone(), c.dxi(j));
        }
        out
    }

    pub fn mul_var(&self, j: usize) -> Self {
        let mut out = BoundaryElem::zero();
        for (m, c) in &self.pure {
            out.insert_pure(m.clone(), c.mul_var(j));
        }
        for (k, c) in &self.sand {
            out.insert_sand(k.clone(), c.mul_var(j));
        }
        out
    }

    pub fn reduce_unit_sphere(&self) -> Self {
        let mut out = BoundaryElem::zero();
        for (m, c) in &self.pure {
            out.insert_pure(m.clone(), c.reduce_unit_sphere());
        }
        for (k, c) in &self.sand {
            out.insert_sand(k.clone(), c.reduce_unit_sphere());
        }
        out
    }

    pub fn pure_part(&self) -> impl Iterator<Item = (&Vec<u8>, &XiPoly)> {
        self.pure.iter()
    }
}

fn signed(c: XiPoly, sign: i8) -> XiPoly {
    if sign < 0 {
        c.neg()
    } else {
        c
    }
}

impl fmt::Display for BoundaryElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.pure {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "[{}]", c)?;
            for i in m {
                write!(f, "c{}", i)?;
            }
        }
        for ((a, b), c) in &self.sand {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "[{}]", c)?;
            for i in a {
                write!(f, "c{}", i)?;
            }
            write!(f, "Psi")?;
            for i in b {
                write!(f, "c{}", i)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sym::vars;

    #[test]
    fn xi_prime_squares_to_minus_one_on_sphere() {
        let u = BoundaryElem::c_xi_prime();
        let sq = u.try_mul(&u).unwrap().reduce_unit_sphere();
        assert_eq!(sq, BoundaryElem::from_xi(XiPoly::one()).neg());
    }

    #[test]
    fn dxn_squares_and_anticommutes() {
        let u = BoundaryElem::c_xi_prime();
        let v = BoundaryElem::c_dxn();
        assert_eq!(v.try_mul(&v).unwrap(), BoundaryElem::identity().neg());
        let anti = u.try_mul(&v).unwrap().add(&v.try_mul(&u).unwrap());
        assert!(anti.is_zero());
    }

    #[test]
    fn sandwich_trace_reduces_cyclically() {
        // Tr[c(ξ')Ψc(ξ')·c(dxn)] = Tr[c(dxn)Ψ] on |ξ'| = 1
        let u = BoundaryElem::c_xi_prime();
        let v = BoundaryElem::c_dxn();
        let s = BoundaryElem::sandwich(&u, &u).unwrap();
        let t = s.try_mul(&v).unwrap().trace();
        let expect = XiPoly::constant(ScalarPoly::var(Symbol::BoundaryTrace(vec![NORMAL])));
        assert_eq!(t, expect);
    }

    #[test]
    fn quadratic_sandwich_is_rejected() {
        let u = BoundaryElem::c_xi_prime();
        let s = BoundaryElem::sandwich(&u, &u).unwrap();
        assert!(s.try_mul(&s).is_err());
    }

    #[test]
    fn trace_of_identity() {
        let e = BoundaryElem::identity().scale_sp(&vars::s());
        assert_eq!(
            e.trace(),
            XiPoly::constant(vars::s().scale(&crate::sym::q(4, 1)))
        );
    }
}
