//! Clifford algebra Cl(n) over the exact scalar ring.
//!
//! Elements are stored on canonical monomials c(e_{i1})···c(e_{ik}) with
//! strictly increasing index lists; the product applies the relation
//! c(e_i)c(e_j) + c(e_j)c(e_i) = -2δ_ij exhaustively, tracking signs with
//! an insertion sort. The spinor trace is axiomatized as d × (scalar part)
//! with d = 2^(n/2), which kills every nonscalar canonical monomial.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::CoreError;
use crate::sym::{q, ScalarPoly, Q};

/// A Clifford-algebra element with polynomial coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multivector {
    n: u8,
    terms: BTreeMap<Vec<u8>, ScalarPoly>,
}

impl Multivector {
    /// The zero element of Cl(n).
    pub fn zero(n: u8) -> Self {
        assert!(
            (2..=8).contains(&n) && n.is_multiple_of(2),
            "dimension must be even, 2..=8"
        );
        Multivector {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// A scalar multiple of the identity.
    pub fn scalar(n: u8, c: ScalarPoly) -> Self {
        let mut mv = Multivector::zero(n);
        mv.add_term(vec![], c);
        mv
    }

    /// The generator c(e_i).
    pub fn generator(n: u8, i: u8) -> Result<Self, CoreError> {
        if i == 0 || i > n {
            return Err(CoreError::IndexOutOfRange { index: i, n });
        }
        let mut mv = Multivector::zero(n);
        mv.add_term(vec![i], ScalarPoly::one());
        Ok(mv)
    }

    /// The canonical monomial c(e_{i1})···c(e_{ik}) for strictly
    /// increasing indices, with the given coefficient.
    pub fn monomial(n: u8, indices: &[u8], coeff: ScalarPoly) -> Result<Self, CoreError> {
        for w in indices.windows(2) {
            assert!(w[0] < w[1], "monomial indices must be strictly increasing");
        }
        for &i in indices {
            if i == 0 || i > n {
                return Err(CoreError::IndexOutOfRange { index: i, n });
            }
        }
        let mut mv = Multivector::zero(n);
        mv.add_term(indices.to_vec(), coeff);
        Ok(mv)
    }

    pub fn dim(&self) -> u8 {
        self.n
    }

    /// Spinor fiber dimension 2^(n/2).
    pub fn spinor_dim(&self) -> u32 {
        1u32 << (self.n / 2)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &ScalarPoly)> {
        self.terms.iter()
    }

    fn add_term(&mut self, mono: Vec<u8>, c: ScalarPoly) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
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

    pub fn scale(&self, c: &ScalarPoly) -> Self {
        let mut out = Multivector::zero(self.n);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn scale_q(&self, c: &Q) -> Self {
        self.scale(&ScalarPoly::from_q(c.clone()))
    }

    /// Clifford product.
    pub fn cliff_mul(&self, rhs: &Multivector) -> Result<Multivector, CoreError> {
        if self.n != rhs.n {
            return Err(CoreError::DimensionMismatch(self.n, rhs.n));
        }
        let mut out = Multivector::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let (sign, mono) = mul_monomials(ma, mb);
                let mut c = ca * cb;
                if sign < 0 {
                    c = c.scale(&q(-1, 1));
                }
                out.add_term(mono, c);
            }
        }
        Ok(out)
    }

    /// Retains exactly the monomials of length `k`.
    pub fn grade_project(&self, k: u8) -> Result<Multivector, CoreError> {
        if k > self.n {
            return Err(CoreError::GradeOutOfRange {
                grade: k,
                n: self.n,
            });
        }
        let mut out = Multivector::zero(self.n);
        for (m, c) in &self.terms {
            if m.len() == k as usize {
                out.add_term(m.clone(), c.clone());
            }
        }
        Ok(out)
    }

    /// Spinor trace: d × (grade-0 coefficient).
    pub fn spinor_trace(&self) -> ScalarPoly {
        let d = q(self.spinor_dim() as i64, 1);
        match self.terms.get(&vec![]) {
            Some(c) => c.scale(&d),
            None => ScalarPoly::zero(),
        }
    }

    /// Coefficient-wise formal derivative in direction `j`.
    ///
    /// Valid at the base point of the normal-coordinate gauge, where the
    /// frame is parallel and derivatives hit only the coefficients.
    pub fn derive(&self, j: u8) -> Result<Multivector, CoreError> {
        let mut out = Multivector::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.derive(j, self.n)?);
        }
        Ok(out)
    }

    pub fn anticommutator(&self, rhs: &Multivector) -> Result<Multivector, CoreError> {
        Ok(&self.cliff_mul(rhs)? + &rhs.cliff_mul(self)?)
    }

    pub fn commutator(&self, rhs: &Multivector) -> Result<Multivector, CoreError> {
        Ok(&self.cliff_mul(rhs)? - &rhs.cliff_mul(self)?)
    }

    /// Σ_i c(e_i)·A·c(e_i), the frame conjugation sum.
    pub fn frame_conjugation(&self) -> Result<Multivector, CoreError> {
        let mut out = Multivector::zero(self.n);
        for i in 1..=self.n {
            let ci = Multivector::generator(self.n, i)?;
            out = &out + &ci.cliff_mul(self)?.cliff_mul(&ci)?;
        }
        Ok(out)
    }
}

/// Product of two canonical monomials: (sign, canonical index list).
pub(crate) fn mul_monomials(a: &[u8], b: &[u8]) -> (i8, Vec<u8>) {
    let mut out: Vec<u8> = a.to_vec();
    let mut sign = 1i8;
    for &j in b {
        // insert j into `out`, anticommuting from the right end
        let mut pos = out.len();
        let mut duplicate = false;
        for (idx, &x) in out.iter().enumerate().rev() {
            if x == j {
                // passes (len-1-idx) generators, then squares to -1
                if (out.len() - 1 - idx) % 2 == 1 {
                    sign = -sign;
                }
                sign = -sign;
                out.remove(idx);
                duplicate = true;
                break;
            }
            if x < j {
                pos = idx + 1;
                break;
            }
            pos = idx;
        }
        if !duplicate {
            if (out.len() - pos) % 2 == 1 {
                sign = -sign;
            }
            out.insert(pos, j);
        }
    }
    (sign, out)
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m.is_empty() {
                write!(f, "({})", c)?;
            } else {
                write!(f, "({})*", c)?;
                for i in m {
                    write!(f, "c{}", i)?;
                }
            }
        }
        Ok(())
    }
}

impl Add for &Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(&-ScalarPoly::one())
    }
}

impl Mul for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: &Multivector) -> Multivector {
        self.cliff_mul(rhs).expect("dimension mismatch")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sym::vars;

    fn c(n: u8, i: u8) -> Multivector {
        Multivector::generator(n, i).unwrap()
    }

    #[test]
    fn generator_square() {
        let n = 4;
        let c1 = c(n, 1);
        assert_eq!(&c1 * &c1, Multivector::scalar(n, ScalarPoly::from_int(-1)));
    }

    #[test]
    fn generator_product_is_monomial() {
        let n = 4;
        let p = &c(n, 1) * &c(n, 2);
        assert_eq!(
            p,
            Multivector::monomial(n, &[1, 2], ScalarPoly::one()).unwrap()
        );
        let q_ = &c(n, 2) * &c(n, 1);
        assert_eq!(q_, p.scale(&-ScalarPoly::one()));
    }

    #[test]
    fn bivector_square() {
        let n = 4;
        let e12 = &c(n, 1) * &c(n, 2);
        assert_eq!(
            &e12 * &e12,
            Multivector::scalar(n, ScalarPoly::from_int(-1))
        );
        // grade-3 and grade-4 monomials square to +1
        let e123 = &(&c(n, 1) * &c(n, 2)) * &c(n, 3);
        assert_eq!(&e123 * &e123, Multivector::scalar(n, ScalarPoly::one()));
        let e1234 = &e123 * &c(n, 4);
        assert_eq!(&e1234 * &e1234, Multivector::scalar(n, ScalarPoly::one()));
    }

    #[test]
    fn anticommutation_relation() {
        for n in [4u8, 6] {
            for i in 1..=n {
                for j in 1..=n {
                    let rel = &(&c(n, i) * &c(n, j)) + &(&c(n, j) * &c(n, i));
                    let expect = if i == j {
                        Multivector::scalar(n, ScalarPoly::from_int(-2))
                    } else {
                        Multivector::zero(n)
                    };
                    assert_eq!(rel, expect);
                }
            }
        }
    }

    #[test]
    fn spinor_trace_basics() {
        let n = 4;
        let id = Multivector::scalar(n, ScalarPoly::one());
        assert_eq!(id.spinor_trace(), ScalarPoly::from_int(4));
        let e12 = &c(n, 1) * &c(n, 2);
        assert!(e12.spinor_trace().is_zero());
        // c1 c2 c1 c2 = -1  =>  trace -d
        let p = &e12 * &e12;
        assert_eq!(p.spinor_trace(), ScalarPoly::from_int(-4));
    }

    #[test]
    fn trace_quadruple_identity() {
        // Tr[c_k c_l c_k' c_l'] = d(-δ_kk' δ_ll' + δ_kl' δ_lk') for k≠l, k'≠l'
        let n = 4;
        let d = 4i64;
        for k in 1..=n {
            for l in 1..=n {
                if k == l {
                    continue;
                }
                for kk in 1..=n {
                    for ll in 1..=n {
                        if kk == ll {
                            continue;
                        }
                        let p = &(&(&c(n, k) * &c(n, l)) * &c(n, kk)) * &c(n, ll);
                        let want = -((k == kk && l == ll) as i64) + ((k == ll && l == kk) as i64);
                        assert_eq!(p.spinor_trace(), ScalarPoly::from_int(d * want));
                    }
                }
            }
        }
    }

    #[test]
    fn grade_projection() {
        let n = 4;
        let x = &Multivector::scalar(n, ScalarPoly::from_int(3)) + &(&c(n, 1) * &c(n, 2));
        assert_eq!(
            x.grade_project(0).unwrap(),
            Multivector::scalar(n, ScalarPoly::from_int(3))
        );
        assert!(c(n, 1).grade_project(0).unwrap().is_zero());
        let e123 = &(&c(n, 1) * &c(n, 2)) * &c(n, 3);
        assert_eq!(e123.grade_project(3).unwrap(), e123);
        assert!(e123.grade_project(2).unwrap().is_zero());
    }

    #[test]
    fn coefficients_ride_along() {
        let n = 4;
        let x = c(n, 1).scale(&vars::f());
        let y = c(n, 1).scale(&vars::s());
        let p = &x * &y;
        assert_eq!(p, Multivector::scalar(n, -(vars::f() * vars::s())));
    }
}
