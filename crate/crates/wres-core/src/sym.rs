//! Exact commutative polynomial ring over indexed indeterminates.
//!
//! Symbols carry their own canonicalization: two-form coefficients are
//! antisymmetric (`a_{lk} = -a_{kl}`), curvature symbols respect the index
//! symmetries of the Riemann tensor, and second derivatives are symmetric
//! in the two directions. The formal imaginary unit is a central generator
//! with square -1, so polynomials live over ℚ(i)[symbols]; π, Ω₃ and h'(0)
//! stay transcendental.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::CoreError;

/// Exact rational coefficient type.
pub type Q = BigRational;

/// Convenience constructor for a rational from two machine integers.
pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Argument tags for unexpanded formal Laplacians.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LapArg {
    /// Δ(s), Laplacian of the scalar curvature.
    ScalarCurv,
    /// Δ(f²)
    FSquared,
    /// Δ(|Ψ|²) for the two-form norm Σ a_{kl}².
    PsiNormSq,
    /// Δ(g)
    FnG,
}

/// An indexed indeterminate.
///
/// Index tuples use 1-based frame indices. Constructors with symmetries go
/// through [`canonicalize`]; raw enum values are only well-formed when they
/// are already canonical.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    /// Scalar curvature s.
    ScalarCurv,
    /// Smooth function f (formally invertible).
    FnF,
    /// Smooth function g (formally invertible).
    FnG,
    /// One-form coefficient b_k.
    OneForm(u8),
    /// Two-form coefficient a_{kl}, canonical form k < l.
    TwoForm(u8, u8),
    /// Riemann component R_{ijst}, canonical orbit representative.
    Riemann(u8, u8, u8, u8),
    /// Opaque contraction Σ R_{ijik} R_{ljlk}.
    RicSq,
    /// Boundary metric derivative h'(0).
    HPrime0,
    /// Volume of the boundary covariable sphere (kept symbolic).
    Omega3,
    /// The circle constant as a formal transcendental.
    Pi,
    /// Central imaginary unit, i² = -1.
    ImagUnit,
    /// Dimension marker n (used only in interpolated statements).
    DimN,
    /// Spinor dimension marker d (used only in statements).
    SpinorDim,
    /// Cut-off moments of the spectral action.
    MomentF0,
    MomentF2,
    MomentF4,
    /// Spectral-action scale Λ.
    Lambda,
    /// Coefficient of the monomial c_{i1}…c_{ik} of a generic form.
    GenericCoeff(Vec<u8>),
    /// Opaque spinor trace Tr[c_{i1}…c_{ik} Ψ] of the abstract boundary form.
    BoundaryTrace(Vec<u8>),
    /// Unexpanded geometer's Laplacian (Δ = -Σ_j ∂_j²) of a named scalar.
    Lap(LapArg),
    /// First formal derivative e_j(x).
    D1(u8, Box<Symbol>),
    /// Second formal derivative e_j e_k (x), canonical form j <= k.
    D2(u8, u8, Box<Symbol>),
}

impl Symbol {
    /// Whether negative exponents are meaningful for this symbol.
    pub fn invertible(&self) -> bool {
        matches!(self, Symbol::FnF | Symbol::FnG | Symbol::Pi)
    }

    /// Base symbols the formal derivation operator acts on.
    fn derivable(&self) -> bool {
        matches!(
            self,
            Symbol::ScalarCurv
                | Symbol::FnF
                | Symbol::FnG
                | Symbol::OneForm(_)
                | Symbol::TwoForm(_, _)
                | Symbol::GenericCoeff(_)
        )
    }

    /// Symbols that are formal constants for the derivation operator.
    fn constant(&self) -> bool {
        matches!(
            self,
            Symbol::Riemann(..)
                | Symbol::RicSq
                | Symbol::HPrime0
                | Symbol::Omega3
                | Symbol::Pi
                | Symbol::ImagUnit
                | Symbol::DimN
                | Symbol::SpinorDim
                | Symbol::MomentF0
                | Symbol::MomentF2
                | Symbol::MomentF4
                | Symbol::Lambda
                | Symbol::BoundaryTrace(_)
        )
    }

    fn check_index(index: u8, n: u8) -> Result<(), CoreError> {
        if index == 0 || index > n {
            Err(CoreError::IndexOutOfRange { index, n })
        } else {
            Ok(())
        }
    }
}

/// Result of symmetry canonicalization: the sign and the representative,
/// or `None` when the symbol vanishes identically.
pub type Canonical = (i8, Option<Symbol>);

/// Canonicalize a symbol under its index symmetries.
///
/// * `a_{kl}`: antisymmetric, representative has k < l, `a_{kk} = 0`;
/// * `R_{ijst}`: antisymmetric in (i,j) and (s,t), symmetric under pair
///   swap; the representative is the lexicographic minimum of the orbit;
/// * `e_j e_k(x)`: symmetric, representative has j <= k.
///
/// Index values must lie in `1..=n`.
pub fn canonicalize(sym: Symbol, n: u8) -> Result<Canonical, CoreError> {
    match sym {
        Symbol::TwoForm(k, l) => {
            Symbol::check_index(k, n)?;
            Symbol::check_index(l, n)?;
            if k == l {
                Ok((0, None))
            } else if k < l {
                Ok((1, Some(Symbol::TwoForm(k, l))))
            } else {
                Ok((-1, Some(Symbol::TwoForm(l, k))))
            }
        }
        Symbol::Riemann(i, j, s, t) => {
            for idx in [i, j, s, t] {
                Symbol::check_index(idx, n)?;
            }
            if i == j || s == t {
                return Ok((0, None));
            }
            let mut best = (i, j, s, t);
            let mut best_sign = 1i8;
            for (tuple, sign) in riemann_orbit(i, j, s, t) {
                if tuple < best {
                    best = tuple;
                    best_sign = sign;
                }
            }
            Ok((
                best_sign,
                Some(Symbol::Riemann(best.0, best.1, best.2, best.3)),
            ))
        }
        Symbol::OneForm(k) => {
            Symbol::check_index(k, n)?;
            Ok((1, Some(Symbol::OneForm(k))))
        }
        Symbol::D1(j, inner) => {
            Symbol::check_index(j, n)?;
            let (sign, rep) = canonicalize(*inner, n)?;
            Ok((sign, rep.map(|r| Symbol::D1(j, Box::new(r)))))
        }
        Symbol::D2(j, k, inner) => {
            Symbol::check_index(j, n)?;
            Symbol::check_index(k, n)?;
            let (sign, rep) = canonicalize(*inner, n)?;
            let (a, b) = if j <= k { (j, k) } else { (k, j) };
            Ok((sign, rep.map(|r| Symbol::D2(a, b, Box::new(r)))))
        }
        other => Ok((1, Some(other))),
    }
}

/// The eight signed index tuples equivalent to R_{ijst}.
fn riemann_orbit(i: u8, j: u8, s: u8, t: u8) -> Vec<((u8, u8, u8, u8), i8)> {
    let mut orbit = Vec::with_capacity(8);
    for (p, sp) in [((i, j), 1i8), ((j, i), -1)] {
        for (r, sr) in [((s, t), 1i8), ((t, s), -1)] {
            let sign = sp * sr;
            orbit.push(((p.0, p.1, r.0, r.1), sign));
            orbit.push(((r.0, r.1, p.0, p.1), sign));
        }
    }
    orbit
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::ScalarCurv => write!(f, "s"),
            Symbol::FnF => write!(f, "f"),
            Symbol::FnG => write!(f, "g"),
            Symbol::OneForm(k) => write!(f, "b_{}", k),
            Symbol::TwoForm(k, l) => write!(f, "a_{{{}{}}}", k, l),
            Symbol::Riemann(i, j, s, t) => write!(f, "R_{{{}{}{}{}}}", i, j, s, t),
            Symbol::RicSq => write!(f, "RicSq"),
            Symbol::HPrime0 => write!(f, "h'(0)"),
            Symbol::Omega3 => write!(f, "Omega_3"),
            Symbol::Pi => write!(f, "pi"),
            Symbol::ImagUnit => write!(f, "i"),
            Symbol::DimN => write!(f, "n"),
            Symbol::SpinorDim => write!(f, "d"),
            Symbol::MomentF0 => write!(f, "F_0"),
            Symbol::MomentF2 => write!(f, "F_2"),
            Symbol::MomentF4 => write!(f, "F_4"),
            Symbol::Lambda => write!(f, "Lambda"),
            Symbol::GenericCoeff(idx) => {
                write!(f, "w_{{")?;
                for i in idx {
                    write!(f, "{}", i)?;
                }
                write!(f, "}}")
            }
            Symbol::BoundaryTrace(idx) => {
                write!(f, "Tr[")?;
                for i in idx {
                    write!(f, "c_{}", i)?;
                }
                write!(f, "Psi]")
            }
            Symbol::Lap(arg) => match arg {
                LapArg::ScalarCurv => write!(f, "Lap(s)"),
                LapArg::FSquared => write!(f, "Lap(f^2)"),
                LapArg::PsiNormSq => write!(f, "Lap(|Psi|^2)"),
                LapArg::FnG => write!(f, "Lap(g)"),
            },
            Symbol::D1(j, x) => write!(f, "e_{}({})", j, x),
            Symbol::D2(j, k, x) => write!(f, "e_{}e_{}({})", j, k, x),
        }
    }
}

/// A multiplicative monomial: canonical symbols with integer exponents.
///
/// Exponents are nonzero; negative exponents are restricted to invertible
/// symbols. The imaginary unit appears with exponent at most one (higher
/// powers fold into the coefficient sign during normalization).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Monomial(BTreeMap<Symbol, i32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> impl Iterator<Item = (&Symbol, &i32)> {
        self.0.iter()
    }

    pub fn degree_of(&self, sym: &Symbol) -> i32 {
        self.0.get(sym).copied().unwrap_or(0)
    }

    /// Builds a monomial from factors, folding powers of the imaginary
    /// unit. Returns the sign produced by i² = -1.
    fn from_factors(factors: BTreeMap<Symbol, i32>) -> (i8, Monomial) {
        let mut sign = 1i8;
        let mut map = BTreeMap::new();
        for (sym, exp) in factors {
            if exp == 0 {
                continue;
            }
            if sym == Symbol::ImagUnit {
                let r = exp.rem_euclid(4);
                match r {
                    0 => {}
                    1 => {
                        map.insert(sym, 1);
                    }
                    2 => sign = -sign,
                    3 => {
                        sign = -sign;
                        map.insert(sym, 1);
                    }
                    _ => unreachable!(),
                }
            } else {
                assert!(
                    exp > 0 || sym.invertible(),
                    "negative exponent on non-invertible symbol {sym}"
                );
                map.insert(sym, exp);
            }
        }
        (sign, Monomial(map))
    }

    fn mul(&self, other: &Monomial) -> (i8, Monomial) {
        let mut map = self.0.clone();
        for (sym, exp) in other.0.iter() {
            *map.entry(sym.clone()).or_insert(0) += exp;
        }
        Monomial::from_factors(map)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (sym, exp) in &self.0 {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *exp == 1 {
                write!(f, "{}", sym)?;
            } else {
                write!(f, "{}^{}", sym, exp)?;
            }
        }
        Ok(())
    }
}

/// Exact multivariate polynomial: a map from monomials to rationals.
///
/// Zero coefficients are never stored, so structural equality is
/// mathematical equality.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct ScalarPoly {
    terms: BTreeMap<Monomial, Q>,
}

impl ScalarPoly {
    pub fn zero() -> Self {
        ScalarPoly::default()
    }

    pub fn one() -> Self {
        ScalarPoly::from_q(Q::one())
    }

    pub fn from_q(c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        ScalarPoly { terms }
    }

    pub fn from_int(c: i64) -> Self {
        ScalarPoly::from_q(q(c, 1))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        ScalarPoly::from_q(q(num, den))
    }

    /// The polynomial consisting of a single canonical symbol.
    pub fn var(sym: Symbol) -> Self {
        ScalarPoly::var_pow(sym, 1)
    }

    pub fn var_pow(sym: Symbol, exp: i32) -> Self {
        let (sign, mono) = Monomial::from_factors(BTreeMap::from([(sym, exp)]));
        let mut terms = BTreeMap::new();
        terms.insert(mono, if sign >= 0 { Q::one() } else { -Q::one() });
        ScalarPoly { terms }
    }

    /// The formal imaginary unit.
    pub fn imag() -> Self {
        ScalarPoly::var(Symbol::ImagUnit)
    }

    pub fn pi_pow(exp: i32) -> Self {
        ScalarPoly::var_pow(Symbol::Pi, exp)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The coefficient of the empty monomial.
    pub fn constant_part(&self) -> Q {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_else(Q::zero)
    }

    fn insert(&mut self, mono: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return ScalarPoly::zero();
        }
        let terms = self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect();
        ScalarPoly { terms }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = ScalarPoly::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Formal derivation in direction `j` (Leibniz rule).
    ///
    /// Base symbols map to their `e_j(·)` derivatives, first derivatives to
    /// symmetric second derivatives; asking for a third-order derivative is
    /// an error, as is deriving an unexpanded Laplacian.
    pub fn derive(&self, j: u8, n: u8) -> Result<ScalarPoly, CoreError> {
        Symbol::check_index(j, n)?;
        let mut out = ScalarPoly::zero();
        for (mono, coeff) in &self.terms {
            for (sym, exp) in mono.factors() {
                let dsym = derive_symbol(sym, j, n)?;
                let Some(dsym) = dsym else { continue };
                // d(x^e) = e x^(e-1) dx * rest
                let mut rest = mono.0.clone();
                *rest.get_mut(sym).unwrap() -= 1;
                let (sign, rest) = Monomial::from_factors(rest);
                let mut term = ScalarPoly::zero();
                term.insert(rest, coeff * q(*exp as i64, 1) * q(sign as i64, 1));
                out = &out + &(&term * &ScalarPoly::var(dsym));
            }
        }
        Ok(out)
    }

    /// Substitutes polynomials for base symbols, lifting the substitution
    /// through first and second formal derivatives.
    pub fn substitute(
        &self,
        map: &BTreeMap<Symbol, ScalarPoly>,
        n: u8,
    ) -> Result<ScalarPoly, CoreError> {
        let mut out = ScalarPoly::zero();
        for (mono, coeff) in &self.terms {
            let mut acc = ScalarPoly::from_q(coeff.clone());
            for (sym, exp) in mono.factors() {
                let replacement: Option<ScalarPoly> = if let Some(r) = map.get(sym) {
                    Some(r.clone())
                } else {
                    match sym {
                        Symbol::D1(j, inner) => map
                            .get(inner.as_ref())
                            .map(|r| r.derive(*j, n))
                            .transpose()?,
                        Symbol::D2(j, k, inner) => map
                            .get(inner.as_ref())
                            .map(|r| r.derive(*j, n).and_then(|p| p.derive(*k, n)))
                            .transpose()?,
                        _ => None,
                    }
                };
                match replacement {
                    Some(r) => {
                        if *exp < 0 {
                            return Err(CoreError::InvalidSubstitution(sym.to_string()));
                        }
                        acc = &acc * &r.pow(*exp as u32);
                    }
                    None => {
                        acc = &acc * &ScalarPoly::var_pow(sym.clone(), *exp);
                    }
                }
            }
            out = &out + &acc;
        }
        Ok(out)
    }

    /// Numeric evaluation. π and the imaginary unit are built in; every
    /// other symbol must be present in `env`.
    pub fn eval(&self, env: &HashMap<Symbol, Complex64>) -> Result<Complex64, CoreError> {
        let mut total = Complex64::new(0.0, 0.0);
        for (mono, coeff) in &self.terms {
            let mut v = Complex64::new(ratio_to_f64(coeff), 0.0);
            for (sym, exp) in mono.factors() {
                let base = match sym {
                    Symbol::Pi => Complex64::new(std::f64::consts::PI, 0.0),
                    Symbol::ImagUnit => Complex64::new(0.0, 1.0),
                    other => *env
                        .get(other)
                        .ok_or_else(|| CoreError::MissingValue(other.to_string()))?,
                };
                v *= base.powi(*exp);
            }
            total += v;
        }
        Ok(total)
    }
}

fn derive_symbol(sym: &Symbol, j: u8, _n: u8) -> Result<Option<Symbol>, CoreError> {
    if sym.constant() {
        return Ok(None);
    }
    if sym.derivable() {
        return Ok(Some(Symbol::D1(j, Box::new(sym.clone()))));
    }
    match sym {
        Symbol::D1(k, inner) => {
            let (a, b) = if j <= *k { (j, *k) } else { (*k, j) };
            Ok(Some(Symbol::D2(a, b, inner.clone())))
        }
        Symbol::D2(..) => Err(CoreError::UnsupportedOrder),
        other => Err(CoreError::UnsupportedDerivative(other.to_string())),
    }
}

pub fn ratio_to_f64(r: &Q) -> f64 {
    // BigRational::to_f64 can overflow for huge numerators; the values in
    // this crate stay far below that.
    r.to_f64().unwrap_or_else(|| {
        let num = r.numer().to_f64().unwrap_or(f64::NAN);
        let den = r.denom().to_f64().unwrap_or(f64::NAN);
        num / den
    })
}

impl fmt::Display for ScalarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mono, coeff) in &self.terms {
            let neg = coeff.is_negative();
            let abs = coeff.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mono.is_one() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", mono)?;
            } else {
                write!(f, "{}*{}", abs, mono)?;
            }
        }
        Ok(())
    }
}

impl Add for &ScalarPoly {
    type Output = ScalarPoly;
    fn add(self, rhs: &ScalarPoly) -> ScalarPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &ScalarPoly {
    type Output = ScalarPoly;
    fn sub(self, rhs: &ScalarPoly) -> ScalarPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &ScalarPoly {
    type Output = ScalarPoly;
    fn mul(self, rhs: &ScalarPoly) -> ScalarPoly {
        let mut out = ScalarPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let (sign, m) = ma.mul(mb);
                let c = ca * cb * q(sign as i64, 1);
                out.insert(m, c);
            }
        }
        out
    }
}

impl Neg for &ScalarPoly {
    type Output = ScalarPoly;
    fn neg(self) -> ScalarPoly {
        self.scale(&-Q::one())
    }
}

impl Neg for ScalarPoly {
    type Output = ScalarPoly;
    fn neg(self) -> ScalarPoly {
        (&self).neg()
    }
}

impl Add for ScalarPoly {
    type Output = ScalarPoly;
    fn add(self, rhs: ScalarPoly) -> ScalarPoly {
        &self + &rhs
    }
}

impl Sub for ScalarPoly {
    type Output = ScalarPoly;
    fn sub(self, rhs: ScalarPoly) -> ScalarPoly {
        &self - &rhs
    }
}

impl Mul for ScalarPoly {
    type Output = ScalarPoly;
    fn mul(self, rhs: ScalarPoly) -> ScalarPoly {
        &self * &rhs
    }
}

/// Canonical variable helpers used throughout the crate.
pub mod vars {
    use super::*;

    pub fn s() -> ScalarPoly {
        ScalarPoly::var(Symbol::ScalarCurv)
    }

    pub fn f() -> ScalarPoly {
        ScalarPoly::var(Symbol::FnF)
    }

    pub fn g() -> ScalarPoly {
        ScalarPoly::var(Symbol::FnG)
    }

    pub fn g_inv() -> ScalarPoly {
        ScalarPoly::var_pow(Symbol::FnG, -1)
    }

    pub fn b(k: u8) -> ScalarPoly {
        ScalarPoly::var(Symbol::OneForm(k))
    }

    /// a_{kl} with antisymmetry applied, so `a(2,1) = -a(1,2)` and
    /// `a(k,k) = 0`.
    pub fn a(k: u8, l: u8, n: u8) -> ScalarPoly {
        match canonicalize(Symbol::TwoForm(k, l), n).expect("index in range") {
            (0, _) | (_, None) => ScalarPoly::zero(),
            (sign, Some(rep)) => ScalarPoly::var(rep).scale(&q(sign as i64, 1)),
        }
    }

    /// R_{ijst} canonicalized under the Riemann index symmetries.
    pub fn riem(i: u8, j: u8, s: u8, t: u8, n: u8) -> ScalarPoly {
        match canonicalize(Symbol::Riemann(i, j, s, t), n).expect("index in range") {
            (0, _) | (_, None) => ScalarPoly::zero(),
            (sign, Some(rep)) => ScalarPoly::var(rep).scale(&q(sign as i64, 1)),
        }
    }

    pub fn d1(j: u8, sym: Symbol) -> ScalarPoly {
        ScalarPoly::var(Symbol::D1(j, Box::new(sym)))
    }

    pub fn hp0() -> ScalarPoly {
        ScalarPoly::var(Symbol::HPrime0)
    }

    pub fn omega3() -> ScalarPoly {
        ScalarPoly::var(Symbol::Omega3)
    }

    pub fn lap(arg: LapArg) -> ScalarPoly {
        ScalarPoly::var(Symbol::Lap(arg))
    }
}
