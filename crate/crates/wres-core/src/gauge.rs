//! Gauge context and perturbation descriptions.
//!
//! All pointwise computation happens at a base point in normal
//! coordinates: Christoffel symbols, spin-connection coefficients and
//! frame derivatives vanish there, the metric is the identity, and
//! covariant derivatives of a form reduce to formal derivatives of its
//! coefficients.

use std::collections::HashMap;

use num_complex::Complex64;

use crate::error::CoreError;
use crate::sym::{ScalarPoly, Symbol};

/// Pointwise computation context: dimension plus the normal-coordinate
/// gauge flags (always in force; the library exposes no off-gauge
/// evaluation).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GaugeContext {
    n: u8,
}

impl GaugeContext {
    pub fn new(n: u8) -> Result<Self, CoreError> {
        if !(2..=8).contains(&n) || !n.is_multiple_of(2) {
            return Err(CoreError::BadDimension(n));
        }
        Ok(GaugeContext { n })
    }

    pub fn dim4() -> Self {
        GaugeContext { n: 4 }
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    /// Spinor fiber dimension d = 2^(n/2).
    pub fn spinor_dim(&self) -> u32 {
        1u32 << (self.n / 2)
    }

    pub fn d_poly(&self) -> ScalarPoly {
        ScalarPoly::from_int(self.spinor_dim() as i64)
    }

    /// Frame indices 1..=n.
    pub fn frame(&self) -> impl Iterator<Item = u8> {
        1..=self.n
    }
}

/// The shape of the perturbing Clifford form Ψ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PerturbationKind {
    /// Ψ = 0 (unperturbed).
    Zero,
    /// Ψ = f, a smooth function.
    Scalar,
    /// Ψ = √-1 c(η) for a one-form η = Σ b_k e^k.
    OneFormImaginary,
    /// Ψ = c(η); used for the product operator D_Ψ D.
    OneFormReal,
    /// Ψ = Σ_{k,l} a_{kl} c(e_k) c(e_l) with a_{kl} = -a_{lk}.
    /// `imaginary` multiplies by √-1 for a self-adjoint perturbed operator.
    TwoForm { imaginary: bool },
    /// Generic pure-grade form with free coefficients on every canonical
    /// monomial of the grade.
    General { grade: u8 },
}

/// Optional numeric values for the coefficients, used when a symbolic
/// density is evaluated against the lattice oracle.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct NumericCoeffs {
    pub f: Option<f64>,
    pub b: Vec<(u8, f64)>,
    pub a: Vec<(u8, u8, f64)>,
}

/// Grade-tagged description of Ψ.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationSpec {
    pub kind: PerturbationKind,
    pub numeric: Option<NumericCoeffs>,
}

impl PerturbationSpec {
    pub fn new(kind: PerturbationKind) -> Self {
        PerturbationSpec {
            kind,
            numeric: None,
        }
    }

    pub fn with_numeric(kind: PerturbationKind, numeric: NumericCoeffs) -> Self {
        PerturbationSpec {
            kind,
            numeric: Some(numeric),
        }
    }

    /// Environment for numeric evaluation of densities built from this
    /// spec. Curvature symbols are set to zero (flat background); form
    /// coefficients come from the numeric data.
    pub fn eval_env(&self, ctx: &GaugeContext) -> HashMap<Symbol, Complex64> {
        let mut env = HashMap::new();
        env.insert(Symbol::ScalarCurv, Complex64::new(0.0, 0.0));
        if let Some(nc) = &self.numeric {
            if let Some(f) = nc.f {
                env.insert(Symbol::FnF, Complex64::new(f, 0.0));
            }
            for (k, v) in &nc.b {
                env.insert(Symbol::OneForm(*k), Complex64::new(*v, 0.0));
            }
            for (k, l, v) in &nc.a {
                env.insert(Symbol::TwoForm(*k, *l), Complex64::new(*v, 0.0));
            }
        }
        // any remaining form coefficients default to zero
        for k in ctx.frame() {
            env.entry(Symbol::OneForm(k))
                .or_insert(Complex64::new(0.0, 0.0));
            for l in (k + 1)..=ctx.n() {
                env.entry(Symbol::TwoForm(k, l))
                    .or_insert(Complex64::new(0.0, 0.0));
            }
        }
        env
    }
}
