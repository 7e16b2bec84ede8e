//! Perturbed Lichnerowicz endomorphisms and twisted curvature.
//!
//! For D_Ψ = D + Ψ the square has Laplace-type normal form with
//!
//!   E = -s/4 - Ψ² + ½[∇_j(Ψ)c_j - c_j∇_j(Ψ)] - ¼ Σ_i (c_iΨ + Ψc_i)²,
//!
//! evaluated at the base point where ∇_j(Ψ) is the Clifford element whose
//! coefficients are the formal derivatives of Ψ's coefficients. The
//! product operator D_Ψ D and the conformal operator D² - g⁻¹c(dg)D get
//! their own endomorphisms.

use std::collections::BTreeMap;

use crate::clifford::Multivector;
use crate::error::CoreError;
use crate::gauge::{GaugeContext, PerturbationKind, PerturbationSpec};
use crate::sym::{q, vars, LapArg, ScalarPoly, Symbol};

/// All canonical strictly-increasing index lists of length `grade`.
pub fn grade_monomials(n: u8, grade: u8) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: u8, n: u8, left: u8, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            if n - i + 1 < left {
                break;
            }
            cur.push(i);
            rec(i + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    rec(1, n, grade, &mut cur, &mut out);
    out
}

/// Clifford representative of Ψ for the given spec.
pub fn build_psi(spec: &PerturbationSpec, ctx: &GaugeContext) -> Result<Multivector, CoreError> {
    let n = ctx.n();
    match &spec.kind {
        PerturbationKind::Zero => Ok(Multivector::zero(n)),
        PerturbationKind::Scalar => Ok(Multivector::scalar(n, vars::f())),
        PerturbationKind::OneFormImaginary => {
            let mut psi = Multivector::zero(n);
            for k in ctx.frame() {
                psi = &psi + &Multivector::generator(n, k)?.scale(&vars::b(k));
            }
            Ok(psi.scale(&ScalarPoly::imag()))
        }
        PerturbationKind::OneFormReal => {
            let mut psi = Multivector::zero(n);
            for k in ctx.frame() {
                psi = &psi + &Multivector::generator(n, k)?.scale(&vars::b(k));
            }
            Ok(psi)
        }
        PerturbationKind::TwoForm { imaginary } => {
            let mut psi = Multivector::zero(n);
            for k in ctx.frame() {
                for l in ctx.frame() {
                    if k == l {
                        continue;
                    }
                    let ck = Multivector::generator(n, k)?;
                    let cl = Multivector::generator(n, l)?;
                    psi = &psi + &ck.cliff_mul(&cl)?.scale(&vars::a(k, l, n));
                }
            }
            if *imaginary {
                psi = psi.scale(&ScalarPoly::imag());
            }
            Ok(psi)
        }
        PerturbationKind::General { grade } => {
            if *grade > n {
                return Err(CoreError::GradeOutOfRange { grade: *grade, n });
            }
            let mut psi = Multivector::zero(n);
            for mono in grade_monomials(n, *grade) {
                let coeff = ScalarPoly::var(Symbol::GenericCoeff(mono.clone()));
                psi = &psi + &Multivector::monomial(n, &mono, coeff)?;
            }
            Ok(psi)
        }
    }
}

/// ∇_j(Ψ) at the base point: formal derivative of each coefficient.
pub fn nabla_psi(psi: &Multivector, j: u8) -> Result<Multivector, CoreError> {
    psi.derive(j)
}

/// The endomorphism E of D_Ψ² from a Clifford representative of Ψ.
pub fn endo_from_psi(psi: &Multivector, ctx: &GaugeContext) -> Result<Multivector, CoreError> {
    let n = ctx.n();
    let mut e = Multivector::scalar(n, vars::s().scale(&q(-1, 4)));
    e = &e - &psi.cliff_mul(psi)?;
    for j in ctx.frame() {
        let cj = Multivector::generator(n, j)?;
        let dpsi = nabla_psi(psi, j)?;
        let comm = &dpsi.cliff_mul(&cj)? - &cj.cliff_mul(&dpsi)?;
        e = &e + &comm.scale(&ScalarPoly::from_ratio(1, 2));
    }
    for i in ctx.frame() {
        let ci = Multivector::generator(n, i)?;
        let anti = ci.anticommutator(psi)?;
        let sq = anti.cliff_mul(&anti)?;
        e = &e - &sq.scale(&ScalarPoly::from_ratio(1, 4));
    }
    Ok(e)
}

/// E for D_Ψ² per the perturbation spec.
pub fn endomorphism_e(
    spec: &PerturbationSpec,
    ctx: &GaugeContext,
) -> Result<Multivector, CoreError> {
    let psi = build_psi(spec, ctx)?;
    endo_from_psi(&psi, ctx)
}

/// E for the product operator D_Ψ D:
/// E = -s/4 + ½ ∇_i(Ψ)c_i - ¼ Σ_i Ψ c_i Ψ c_i.
pub fn endomorphism_e_product(
    spec: &PerturbationSpec,
    ctx: &GaugeContext,
) -> Result<Multivector, CoreError> {
    let psi = build_psi(spec, ctx)?;
    endo_product_from_psi(&psi, ctx)
}

pub fn endo_product_from_psi(
    psi: &Multivector,
    ctx: &GaugeContext,
) -> Result<Multivector, CoreError> {
    let n = ctx.n();
    let mut e = Multivector::scalar(n, vars::s().scale(&q(-1, 4)));
    for i in ctx.frame() {
        let ci = Multivector::generator(n, i)?;
        e = &e
            + &nabla_psi(psi, i)?
                .cliff_mul(&ci)?
                .scale(&ScalarPoly::from_ratio(1, 2));
        let x = psi.cliff_mul(&ci)?.cliff_mul(psi)?.cliff_mul(&ci)?;
        e = &e - &x.scale(&ScalarPoly::from_ratio(1, 4));
    }
    Ok(e)
}

/// E for D_Ψ D built through the Laplace-type normal form at the base
/// point: the derivative term is ½ ∂_j applied to the product Ψ·c(∂_j).
/// Equals [`endo_product_from_psi`] because the frame is parallel there.
pub fn endo_product_via_normal_form(
    psi: &Multivector,
    ctx: &GaugeContext,
) -> Result<Multivector, CoreError> {
    let n = ctx.n();
    let mut e = Multivector::scalar(n, vars::s().scale(&q(-1, 4)));
    for j in ctx.frame() {
        let cj = Multivector::generator(n, j)?;
        let prod = psi.cliff_mul(&cj)?;
        e = &e + &prod.derive(j)?.scale(&ScalarPoly::from_ratio(1, 2));
    }
    for i in ctx.frame() {
        let ci = Multivector::generator(n, i)?;
        let x = psi.cliff_mul(&ci)?.cliff_mul(psi)?.cliff_mul(&ci)?;
        e = &e - &x.scale(&ScalarPoly::from_ratio(1, 4));
    }
    Ok(e)
}

/// Trace-level endomorphism data for the conformal operator
/// D² - g⁻¹ c(dg) D, with g an invertible symbolic scalar.
pub struct ConformalEndomorphism {
    /// E at the base point (coefficients involve g⁻¹, g⁻²).
    pub e: Multivector,
    /// Tr[s/6 + E], fully expanded in formal derivatives of g.
    pub tr_bracket: ScalarPoly,
    /// The same trace with the second derivatives collected into the
    /// unexpanded geometer's Laplacian: d(-s/12) - (d/2) g⁻¹ Δ(g).
    pub tr_bracket_lap: ScalarPoly,
}

/// c(dg) = Σ_k e_k(g) c(e_k).
pub fn c_dg(ctx: &GaugeContext) -> Result<Multivector, CoreError> {
    let n = ctx.n();
    let mut w = Multivector::zero(n);
    for k in ctx.frame() {
        w = &w + &Multivector::generator(n, k)?.scale(&vars::d1(k, Symbol::FnG));
    }
    Ok(w)
}

pub fn endomorphism_e_conformal(ctx: &GaugeContext) -> Result<ConformalEndomorphism, CoreError> {
    let n = ctx.n();
    let ginv = vars::g_inv();
    let w = c_dg(ctx)?.scale(&ginv); // g⁻¹ c(dg)
    let mut e = Multivector::scalar(n, vars::s().scale(&q(-1, 4)));
    for j in ctx.frame() {
        let cj = Multivector::generator(n, j)?;
        e = &e
            - &w.derive(j)?
                .cliff_mul(&cj)?
                .scale(&ScalarPoly::from_ratio(1, 2));
    }
    for i in ctx.frame() {
        let ci = Multivector::generator(n, i)?;
        let x = w.cliff_mul(&ci)?.cliff_mul(&w)?.cliff_mul(&ci)?;
        e = &e - &x.scale(&ScalarPoly::from_ratio(1, 4));
    }
    let d = ctx.d_poly();
    let tr_bracket = &(vars::s().scale(&q(1, 6)) * d.clone()) + &e.spinor_trace();
    // d(-s/12) - (d/2) g⁻¹ Lap(g)
    let dq = q(ctx.spinor_dim() as i64, 1);
    let tr_bracket_lap = vars::s().scale(&(-&dq / q(12, 1)))
        + (vars::g_inv() * vars::lap(LapArg::FnG)).scale(&(-&dq / q(2, 1)));
    Ok(ConformalEndomorphism {
        e,
        tr_bracket,
        tr_bracket_lap,
    })
}

/// The indexed family Ω(e_i, e_j) at the base point.
#[derive(Debug)]
pub struct OmegaFamily {
    pub n: u8,
    entries: BTreeMap<(u8, u8), Multivector>,
}

impl OmegaFamily {
    pub fn get(&self, i: u8, j: u8) -> Option<&Multivector> {
        self.entries.get(&(i, j))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(u8, u8), &Multivector)> {
        self.entries.iter()
    }
}

/// Spin curvature part -¼ Σ_{s,t} R_{ijst} c(e_s)c(e_t), symbolic R.
pub fn spin_curvature(i: u8, j: u8, ctx: &GaugeContext) -> Result<Multivector, CoreError> {
    let n = ctx.n();
    let mut r = Multivector::zero(n);
    for s in ctx.frame() {
        for t in ctx.frame() {
            if s == t {
                continue;
            }
            let coeff = vars::riem(i, j, s, t, n).scale(&q(-1, 4));
            let cs = Multivector::generator(n, s)?;
            let ct = Multivector::generator(n, t)?;
            r = &r + &cs.cliff_mul(&ct)?.scale(&coeff);
        }
    }
    Ok(r)
}

/// Ω(e_i,e_j) for scalar and two-form perturbations.
pub fn curvature_omega(
    spec: &PerturbationSpec,
    ctx: &GaugeContext,
) -> Result<OmegaFamily, CoreError> {
    let n = ctx.n();
    let mut entries = BTreeMap::new();
    match &spec.kind {
        PerturbationKind::Zero | PerturbationKind::Scalar => {
            for i in ctx.frame() {
                for j in ctx.frame() {
                    if i == j {
                        continue;
                    }
                    let mut om = spin_curvature(i, j, ctx)?;
                    if matches!(spec.kind, PerturbationKind::Scalar) {
                        let ci = Multivector::generator(n, i)?;
                        let cj = Multivector::generator(n, j)?;
                        om = &om - &cj.scale(&vars::d1(i, Symbol::FnF));
                        om = &om + &ci.scale(&vars::d1(j, Symbol::FnF));
                        let f2 = vars::f().pow(2).scale(&q(2, 1));
                        om = &om + &ci.cliff_mul(&cj)?.scale(&f2);
                    }
                    entries.insert((i, j), om);
                }
            }
        }
        PerturbationKind::TwoForm { .. } => {
            let psi = build_psi(spec, ctx)?;
            for i in ctx.frame() {
                for j in ctx.frame() {
                    if i == j {
                        continue;
                    }
                    let ci = Multivector::generator(n, i)?;
                    let cj = Multivector::generator(n, j)?;
                    let di = nabla_psi(&psi, i)?;
                    let dj = nabla_psi(&psi, j)?;
                    let quarter = ScalarPoly::from_ratio(1, 4);
                    let mut om = spin_curvature(i, j, ctx)?;
                    om = &om - &di.anticommutator(&cj)?.scale(&quarter);
                    om = &om + &dj.anticommutator(&ci)?.scale(&quarter);
                    entries.insert((i, j), om);
                }
            }
        }
        other => {
            return Err(CoreError::UnsupportedSpec(format!("{:?}", other)));
        }
    }
    Ok(OmegaFamily { n, entries })
}

/// Σ_{i,j} Tr[Ω(e_i,e_j)²].
pub fn trace_omega_sq(
    spec: &PerturbationSpec,
    ctx: &GaugeContext,
) -> Result<ScalarPoly, CoreError> {
    let omega = curvature_omega(spec, ctx)?;
    let mut out = ScalarPoly::zero();
    for (_, om) in omega.entries() {
        out = &out + &om.cliff_mul(om)?.spinor_trace();
    }
    Ok(out)
}

/// |Ψ|² = Σ_{k,l} a_{kl}² in the doubled-sum convention.
pub fn psi_norm_sq(ctx: &GaugeContext) -> ScalarPoly {
    let n = ctx.n();
    let mut out = ScalarPoly::zero();
    for k in ctx.frame() {
        for l in ctx.frame() {
            let a = vars::a(k, l, n);
            out = &out + &(&a * &a);
        }
    }
    out
}

/// |df|² = Σ_i e_i(f)².
pub fn df_norm_sq(ctx: &GaugeContext) -> ScalarPoly {
    let mut out = ScalarPoly::zero();
    for i in ctx.frame() {
        let d = vars::d1(i, Symbol::FnF);
        out = &out + &(&d * &d);
    }
    out
}

/// |X|² = Σ_k b_k² for the one-form coefficients.
pub fn one_form_norm_sq(ctx: &GaugeContext) -> ScalarPoly {
    let mut out = ScalarPoly::zero();
    for k in ctx.frame() {
        let b = vars::b(k);
        out = &out + &(&b * &b);
    }
    out
}

/// Σ_{i,j,s,t} R_{ijst}² expanded over canonical curvature symbols.
pub fn riem_sq(ctx: &GaugeContext) -> ScalarPoly {
    let n = ctx.n();
    let mut out = ScalarPoly::zero();
    for i in ctx.frame() {
        for j in ctx.frame() {
            for s in ctx.frame() {
                for t in ctx.frame() {
                    let r = vars::riem(i, j, s, t, n);
                    out = &out + &(&r * &r);
                }
            }
        }
    }
    out
}

/// Σ_{i≠j} R_{ijij}, the curvature contraction the sign dictionary maps
/// to ±s.
pub fn ricci_contraction(ctx: &GaugeContext) -> ScalarPoly {
    let n = ctx.n();
    let mut out = ScalarPoly::zero();
    for i in ctx.frame() {
        for j in ctx.frame() {
            out = &out + &vars::riem(i, j, i, j, n);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx4() -> GaugeContext {
        GaugeContext::new(4).unwrap()
    }

    #[test]
    fn scalar_psi_is_f_times_id() {
        let psi = build_psi(&PerturbationSpec::new(PerturbationKind::Scalar), &ctx4()).unwrap();
        assert_eq!(psi, Multivector::scalar(4, vars::f()));
    }

    #[test]
    fn scalar_endomorphism_matches_closed_form() {
        // E = -s/4 + (n-1) f²
        for n in [4u8, 6] {
            let ctx = GaugeContext::new(n).unwrap();
            let e = endomorphism_e(&PerturbationSpec::new(PerturbationKind::Scalar), &ctx).unwrap();
            let expect = Multivector::scalar(
                n,
                vars::s().scale(&q(-1, 4)) + vars::f().pow(2).scale(&q(n as i64 - 1, 1)),
            );
            assert_eq!(e, expect);
        }
    }

    #[test]
    fn one_form_endomorphism_is_curvature_plus_c_deta() {
        // E = -s/4 + i Σ_{k≠j} e_j(b_k) c_k c_j
        let ctx = ctx4();
        let e = endomorphism_e(
            &PerturbationSpec::new(PerturbationKind::OneFormImaginary),
            &ctx,
        )
        .unwrap();
        let n = ctx.n();
        let mut expect = Multivector::scalar(n, vars::s().scale(&q(-1, 4)));
        for k in ctx.frame() {
            for j in ctx.frame() {
                if k == j {
                    continue;
                }
                let ck = Multivector::generator(n, k).unwrap();
                let cj = Multivector::generator(n, j).unwrap();
                let coeff = ScalarPoly::imag() * vars::d1(j, Symbol::OneForm(k));
                expect = &expect + &ck.cliff_mul(&cj).unwrap().scale(&coeff);
            }
        }
        assert_eq!(e, expect);
    }

    #[test]
    fn two_form_trace_e() {
        // Tr E = d(-s/4 + (6-2n)|Ψ|²) at n = 4, 6, 8
        for n in [4u8, 6, 8] {
            let ctx = GaugeContext::new(n).unwrap();
            let e = endomorphism_e(
                &PerturbationSpec::new(PerturbationKind::TwoForm { imaginary: false }),
                &ctx,
            )
            .unwrap();
            let d = ctx.spinor_dim() as i64;
            let expect =
                vars::s().scale(&q(-d, 4)) + psi_norm_sq(&ctx).scale(&q(d * (6 - 2 * n as i64), 1));
            assert_eq!(e.spinor_trace(), expect);
        }
    }

    #[test]
    fn product_endomorphism_unperturbed() {
        let ctx = ctx4();
        let e =
            endomorphism_e_product(&PerturbationSpec::new(PerturbationKind::Zero), &ctx).unwrap();
        assert_eq!(e, Multivector::scalar(4, vars::s().scale(&q(-1, 4))));
    }

    #[test]
    fn product_derivative_trace_is_divergence() {
        // Tr[½ ∇_i(Ψ) c_i] = -(d/2) Σ_k e_k(b_k) for a real one-form
        let ctx = ctx4();
        let psi = build_psi(&PerturbationSpec::new(PerturbationKind::OneFormReal), &ctx).unwrap();
        let mut term = Multivector::zero(4);
        for i in ctx.frame() {
            let ci = Multivector::generator(4, i).unwrap();
            term = &term
                + &nabla_psi(&psi, i)
                    .unwrap()
                    .cliff_mul(&ci)
                    .unwrap()
                    .scale(&ScalarPoly::from_ratio(1, 2));
        }
        let mut expect = ScalarPoly::zero();
        for k in ctx.frame() {
            expect = &expect + &vars::d1(k, Symbol::OneForm(k)).scale(&q(-2, 1));
        }
        assert_eq!(term.spinor_trace(), expect);
    }

    #[test]
    fn product_quartic_trace_sign() {
        // Tr[-¼ Ψ c_i Ψ c_i] = -(d/4)(2-n)|Ψ|² = +2|Ψ|² at n = d = 4
        let ctx = ctx4();
        let psi = build_psi(&PerturbationSpec::new(PerturbationKind::OneFormReal), &ctx).unwrap();
        let mut term = Multivector::zero(4);
        for i in ctx.frame() {
            let ci = Multivector::generator(4, i).unwrap();
            let x = psi
                .cliff_mul(&ci)
                .unwrap()
                .cliff_mul(&psi)
                .unwrap()
                .cliff_mul(&ci)
                .unwrap();
            term = &term - &x.scale(&ScalarPoly::from_ratio(1, 4));
        }
        assert_eq!(term.spinor_trace(), one_form_norm_sq(&ctx).scale(&q(2, 1)));
    }

    #[test]
    fn omega_zero_is_pure_spin_curvature() {
        let ctx = ctx4();
        let om = curvature_omega(&PerturbationSpec::new(PerturbationKind::Zero), &ctx).unwrap();
        let expect = spin_curvature(1, 2, &ctx).unwrap();
        assert_eq!(om.get(1, 2).unwrap(), &expect);
    }

    #[test]
    fn grade_monomial_count() {
        assert_eq!(grade_monomials(4, 2).len(), 6);
        assert_eq!(grade_monomials(4, 0), vec![Vec::<u8>::new()]);
        assert_eq!(grade_monomials(6, 3).len(), 20);
    }

    #[test]
    fn grade_outside_dimension_is_rejected() {
        let err = build_psi(
            &PerturbationSpec::new(PerturbationKind::General { grade: 5 }),
            &ctx4(),
        )
        .unwrap_err();
        assert_eq!(
            err,
            crate::error::CoreError::GradeOutOfRange { grade: 5, n: 4 }
        );
    }

    #[test]
    fn omega_rejects_unsupported_kinds() {
        let err = curvature_omega(
            &PerturbationSpec::new(PerturbationKind::OneFormImaginary),
            &ctx4(),
        )
        .unwrap_err();
        assert!(matches!(err, crate::error::CoreError::UnsupportedSpec(_)));
    }
}
