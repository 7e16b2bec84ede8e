//! Seeley-deWitt densities, interior residue densities and the
//! spectral-action expansion.
//!
//! Densities are exact polynomials; normalization constants are exact
//! rational multiples of powers of the formal π. Total-derivative terms
//! are kept as unexpanded geometer's Laplacians Δ(·) = -Σ_j ∂_j²(·) and
//! can be expanded on demand. The curvature contraction Σ R_{ijij} is
//! mapped to ±s by a configurable sign dictionary.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::clifford::Multivector;
use crate::error::CoreError;
use crate::gauge::{GaugeContext, PerturbationKind, PerturbationSpec};
use crate::perturb::{
    self, endomorphism_e, endomorphism_e_conformal, endomorphism_e_product, psi_norm_sq,
    ricci_contraction, riem_sq, trace_omega_sq,
};
use crate::sym::{q, vars, LapArg, Monomial, ScalarPoly, Symbol, Q};

/// Sign dictionary for the curvature contraction: Σ_{i≠j} R_{ijij} = ε s.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurvatureSign {
    /// R_{ijij} sums to +s.
    Plus,
    /// R_{ijij} sums to -s (the choice that reconciles the Δs terms).
    Minus,
}

impl CurvatureSign {
    pub fn eps(&self) -> i64 {
        match self {
            CurvatureSign::Plus => 1,
            CurvatureSign::Minus => -1,
        }
    }
}

/// First heat coefficients as densities (the integrand of ∫_M · dvol).
#[derive(Debug, Clone)]
pub struct HeatCoefficients {
    pub a0: ScalarPoly,
    pub a2: ScalarPoly,
    pub a4: Option<ScalarPoly>,
}

/// Formal cut-off moments F₄, F₂, F₀ of the spectral action.
#[derive(Debug, Clone, Copy, Default)]
pub struct CutoffMoments;

impl CutoffMoments {
    pub fn f4(&self) -> ScalarPoly {
        ScalarPoly::var(Symbol::MomentF4)
    }
    pub fn f2(&self) -> ScalarPoly {
        ScalarPoly::var(Symbol::MomentF2)
    }
    pub fn f0(&self) -> ScalarPoly {
        ScalarPoly::var(Symbol::MomentF0)
    }
}

fn factorial(k: u8) -> i64 {
    (1..=k as i64).product::<i64>().max(1)
}

/// (4π)^(-n/2) as an exact rational times π^(-n/2).
pub fn inv_four_pi_pow(n: u8) -> ScalarPoly {
    let half = (n / 2) as u32;
    ScalarPoly::pi_pow(-(half as i32)).scale(&q(1, 4i64.pow(half)))
}

/// (2π)^(n/2) / (n/2 - 2)! as an exact rational times π^(n/2).
pub fn residue_normalization(n: u8) -> Result<ScalarPoly, CoreError> {
    if n < 4 {
        return Err(CoreError::ResidueOrder(n));
    }
    let half = n / 2;
    let num = 2i64.pow(half as u32);
    let den = factorial(half - 2);
    Ok(ScalarPoly::pi_pow(half as i32).scale(&q(num, den)))
}

/// Tr[s/6 + E] for the perturbed square D_Ψ².
pub fn tr_bracket(spec: &PerturbationSpec, ctx: &GaugeContext) -> Result<ScalarPoly, CoreError> {
    let e = endomorphism_e(spec, ctx)?;
    Ok(&vars::s().scale(&(q(1, 6) * q(ctx.spinor_dim() as i64, 1))) + &e.spinor_trace())
}

/// A residue density together with its displayable statement.
#[derive(Debug, Clone)]
pub struct WresStatement {
    /// Tr[s/6 + E], the bracket under the integral sign.
    pub bracket: ScalarPoly,
    /// Full density: normalization × bracket.
    pub density: ScalarPoly,
    pub text: String,
}

/// Interior noncommutative-residue density of D_Ψ^(-n+2):
/// (2π)^(n/2)/((n/2-2)!) × Tr[s/6 + E].
pub fn wres_interior(
    spec: &PerturbationSpec,
    ctx: &GaugeContext,
) -> Result<WresStatement, CoreError> {
    let bracket = tr_bracket(spec, ctx)?;
    let norm = residue_normalization(ctx.n())?;
    let density = &norm * &bracket;
    let text = format!(
        "Wres(D_Psi^(-{}+2)) = integral_M ({}) * [{}] dvol",
        ctx.n(),
        norm,
        bracket
    );
    Ok(WresStatement {
        bracket,
        density,
        text,
    })
}

/// Interior density for the product operator D_Ψ D at n = 4:
/// 4π² × Tr[s/6 + E_product].
pub fn wres_product_interior(
    spec: &PerturbationSpec,
    ctx: &GaugeContext,
) -> Result<WresStatement, CoreError> {
    if ctx.n() != 4 {
        return Err(CoreError::ResidueOrder(ctx.n()));
    }
    let e = endomorphism_e_product(spec, ctx)?;
    let bracket = &vars::s().scale(&(q(1, 6) * q(ctx.spinor_dim() as i64, 1))) + &e.spinor_trace();
    let norm = residue_normalization(4)?;
    let density = &norm * &bracket;
    let text = format!(
        "Wres[(D_Psi D)^(-1)] = integral_M ({}) * [{}] dvol",
        norm, bracket
    );
    Ok(WresStatement {
        bracket,
        density,
        text,
    })
}

/// Conformal residue density for Wres[f D⁻¹ g D⁻¹] at n = 4.
#[derive(Debug, Clone)]
pub struct ConformalWres {
    /// Pointwise density with the unexpanded Laplacian:
    /// -4π² [fgs/3 + 2 f Δ(g)].
    pub pointwise_lap: ScalarPoly,
    /// The same density with Δ(g) expanded into formal derivatives.
    pub pointwise_expanded: ScalarPoly,
    /// After integration by parts (∫ f Δ(g) = ∫ <df, dg>):
    /// -4π² [fgs/3 + 2 <df, dg>].
    pub integrated_by_parts: ScalarPoly,
    /// The same with g substituted by f, the conformal case f = g = e^(-2h).
    pub conformal_case: ScalarPoly,
    pub text: String,
}

/// <df, dg> = Σ_j e_j(f) e_j(g).
pub fn pairing_df_dg(ctx: &GaugeContext) -> ScalarPoly {
    let mut out = ScalarPoly::zero();
    for j in ctx.frame() {
        out = &out + &(vars::d1(j, Symbol::FnF) * vars::d1(j, Symbol::FnG));
    }
    out
}

pub fn wres_conformal(ctx: &GaugeContext) -> Result<ConformalWres, CoreError> {
    if ctx.n() != 4 {
        return Err(CoreError::ResidueOrder(ctx.n()));
    }
    let conf = endomorphism_e_conformal(ctx)?;
    let norm = residue_normalization(4)?; // 4π²
                                          // density = fg × norm × Tr[s/6+E]; expanded and Lap forms
    let fg = vars::f() * vars::g();
    let pointwise_expanded = &(&norm * &fg) * &conf.tr_bracket;
    let pointwise_lap = &(&norm * &fg) * &conf.tr_bracket_lap;
    // -4π² [fgs/3 + 2 <df,dg>]
    let ibp = (&fg * &vars::s()).scale(&q(1, 3)) + pairing_df_dg(ctx).scale(&q(2, 1));
    let integrated_by_parts = -(&norm * &ibp);
    let mut to_f = BTreeMap::new();
    to_f.insert(Symbol::FnG, vars::f());
    let conformal_case = integrated_by_parts.substitute(&to_f, ctx.n())?;
    let text = format!(
        "Wres[f D^-1 g D^-1] = -integral_M ({}) * [{}] dvol (pointwise: {})",
        norm, ibp, pointwise_lap
    );
    Ok(ConformalWres {
        pointwise_lap,
        pointwise_expanded,
        integrated_by_parts,
        conformal_case,
        text,
    })
}

/// Rewrites monomials linear in a diagonal curvature symbol R_{ijij}:
/// whenever a cofactor multiplies the full contraction Σ_{i<j} R_{ijij}
/// with one common coefficient, the group is replaced by ε s / 2 times the
/// cofactor. Quadratic or partial occurrences are left untouched.
pub fn apply_curvature_dictionary(
    p: &ScalarPoly,
    sign: CurvatureSign,
    ctx: &GaugeContext,
) -> ScalarPoly {
    let n = ctx.n();
    let mut diag = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            diag.push(Symbol::Riemann(i, j, i, j));
        }
    }
    let m = diag.len();

    // cofactor -> (pair symbol -> coefficient)
    let mut groups: BTreeMap<Monomial, BTreeMap<Symbol, Q>> = BTreeMap::new();
    let mut untouched = ScalarPoly::zero();
    for (mono, coeff) in p.terms() {
        let present: Vec<&Symbol> = diag.iter().filter(|s| mono.degree_of(s) != 0).collect();
        if present.len() == 1 && mono.degree_of(present[0]) == 1 {
            let sym = present[0].clone();
            let mut cof = BTreeMap::new();
            for (s, e) in mono.factors() {
                if *s != sym {
                    cof.insert(s.clone(), *e);
                }
            }
            let cof_poly = {
                let mut acc = ScalarPoly::one();
                for (s, e) in &cof {
                    acc = &acc * &ScalarPoly::var_pow(s.clone(), *e);
                }
                acc
            };
            // the cofactor monomial key: take the single monomial of cof_poly
            let key = cof_poly
                .terms()
                .next()
                .map(|(m, _)| m.clone())
                .unwrap_or_else(Monomial::one);
            groups.entry(key).or_default().insert(sym, coeff.clone());
        } else {
            let mut t = ScalarPoly::zero();
            let single = {
                let mut acc = ScalarPoly::one();
                for (s, e) in mono.factors() {
                    acc = &acc * &ScalarPoly::var_pow(s.clone(), *e);
                }
                acc.scale(coeff)
            };
            t = &t + &single;
            untouched = &untouched + &t;
        }
    }

    let mut out = untouched;
    for (cof, entries) in groups {
        let complete = entries.len() == m
            && entries
                .values()
                .all(|c| *c == *entries.values().next().unwrap());
        let cof_poly = {
            let mut acc = ScalarPoly::one();
            for (s, e) in cof.factors() {
                acc = &acc * &ScalarPoly::var_pow(s.clone(), *e);
            }
            acc
        };
        if complete {
            let c = entries.values().next().unwrap().clone();
            let rep = vars::s().scale(&(c * q(sign.eps(), 2)));
            out = &out + &(&rep * &cof_poly);
        } else {
            for (sym, c) in entries {
                out = &out + &(&ScalarPoly::var(sym) * &cof_poly).scale(&c);
            }
        }
    }
    out
}

/// Writes Δ₀(p) = Σ_k ∂_k²(p) with the result encoded in unexpanded
/// geometer's Laplacians: p must be a rational combination of s, f² and
/// the two-form norm |Ψ|² (plus constants).
pub fn formal_laplacian_unexpanded(
    p: &ScalarPoly,
    ctx: &GaugeContext,
) -> Result<ScalarPoly, CoreError> {
    let mut rest = p.clone();
    let mut out = ScalarPoly::zero();

    // coefficient of the bare symbol s
    let s_mono = ScalarPoly::var(Symbol::ScalarCurv)
        .terms()
        .next()
        .map(|(m, _)| m.clone())
        .unwrap();
    let mut c_s = Q::from_integer(0.into());
    for (m, c) in rest.terms() {
        if *m == s_mono {
            c_s = c.clone();
        }
    }
    if !c_s.is_zero() {
        rest = &rest - &vars::s().scale(&c_s);
        out = &out + &vars::lap(LapArg::ScalarCurv).scale(&-c_s);
    }

    // coefficient of f²
    let f2_mono = vars::f()
        .pow(2)
        .terms()
        .next()
        .map(|(m, _)| m.clone())
        .unwrap();
    let mut c_f = Q::from_integer(0.into());
    for (m, c) in rest.terms() {
        if *m == f2_mono {
            c_f = c.clone();
        }
    }
    if !c_f.is_zero() {
        rest = &rest - &vars::f().pow(2).scale(&c_f);
        out = &out + &vars::lap(LapArg::FSquared).scale(&-c_f);
    }

    // rational multiple of |Ψ|²
    let psi = psi_norm_sq(ctx);
    if let Some((m0, c0)) = psi.terms().next() {
        let mut c_psi = Q::from_integer(0.into());
        for (m, c) in rest.terms() {
            if m == m0 {
                c_psi = c / c0;
            }
        }
        if !c_psi.is_zero() {
            let candidate = psi.scale(&c_psi);
            rest = &rest - &candidate;
            out = &out + &vars::lap(LapArg::PsiNormSq).scale(&-c_psi);
        }
    }

    // constants drop; anything else is unsupported
    let constant = rest.constant_part();
    rest = &rest - &ScalarPoly::from_q(constant);
    if !rest.is_zero() {
        return Err(CoreError::LapPattern(rest.to_string()));
    }
    Ok(out)
}

/// Expands unexpanded Laplacians into formal second derivatives:
/// Δ(x) = -Σ_k ∂_k²(x).
pub fn expand_laplacians(p: &ScalarPoly, ctx: &GaugeContext) -> Result<ScalarPoly, CoreError> {
    let n = ctx.n();
    let mut map = BTreeMap::new();
    let targets: [(LapArg, ScalarPoly); 4] = [
        (LapArg::ScalarCurv, vars::s()),
        (LapArg::FSquared, vars::f().pow(2)),
        (LapArg::PsiNormSq, psi_norm_sq(ctx)),
        (LapArg::FnG, vars::g()),
    ];
    for (tag, base) in targets {
        let mut lap = ScalarPoly::zero();
        for k in ctx.frame() {
            lap = &lap + &base.derive(k, n)?.derive(k, n)?;
        }
        map.insert(Symbol::Lap(tag), -lap);
    }
    p.substitute(&map, n)
}

/// Assembles a₀/a₂/a₄ densities. a₄ follows the eight-term heat-kernel
/// template with E and Ω from the perturbation modules; pure-curvature
/// terms are carried symbolically and the sign dictionary folds the
/// curvature contraction into ±s.
pub fn assemble_heat_coefficients(
    spec: &PerturbationSpec,
    ctx: &GaugeContext,
    sign: CurvatureSign,
) -> Result<HeatCoefficients, CoreError> {
    let norm = inv_four_pi_pow(ctx.n());
    let d = ctx.d_poly();
    let a0 = &norm * &d;
    let a2 = &norm * &tr_bracket(spec, ctx)?;
    let a4 = match &spec.kind {
        PerturbationKind::Zero | PerturbationKind::Scalar | PerturbationKind::TwoForm { .. } => {
            Some(assemble_a4(spec, ctx, sign)?)
        }
        _ => None,
    };
    Ok(HeatCoefficients { a0, a2, a4 })
}

/// The a₄ density, or a capability error for perturbation kinds where the
/// eight-term template is not implemented.
pub fn a4_density(
    spec: &PerturbationSpec,
    ctx: &GaugeContext,
    sign: CurvatureSign,
) -> Result<ScalarPoly, CoreError> {
    assemble_heat_coefficients(spec, ctx, sign)?
        .a4
        .ok_or(CoreError::UnsupportedA4)
}

fn assemble_a4(
    spec: &PerturbationSpec,
    ctx: &GaugeContext,
    sign: CurvatureSign,
) -> Result<ScalarPoly, CoreError> {
    let eps = q(sign.eps(), 1);
    let d = ctx.d_poly();
    let e = endomorphism_e(spec, ctx)?;
    let tr_e = e.spinor_trace();
    let tr_e2 = e.cliff_mul(&e)?.spinor_trace();

    // -12 Tr[R_{ijij,kk}] with R_{ijij,kk} = Δ₀(εs) = -ε Lap(s)
    let t1 = (&d * &vars::lap(LapArg::ScalarCurv)).scale(&(q(12, 1) * eps.clone()));
    let t2 = (&d * &vars::s().pow(2)).scale(&q(5, 1));
    let t3 = (&d * &ScalarPoly::var(Symbol::RicSq)).scale(&q(-2, 1));
    let t4 = (&d * &riem_sq(ctx)).scale(&q(2, 1));
    let t5 = (&vars::s() * &tr_e).scale(&(q(-60, 1) * eps));
    let t6 = tr_e2.scale(&q(180, 1));
    // 60 Tr[E_{,kk}] = 60 Δ₀(Tr E), encoded with unexpanded Laplacians
    let t7 = formal_laplacian_unexpanded(&tr_e, ctx)?.scale(&q(60, 1));
    let t8 = apply_curvature_dictionary(&trace_omega_sq(spec, ctx)?, sign, ctx).scale(&q(30, 1));

    let mut total = ScalarPoly::zero();
    for t in [t1, t2, t3, t4, t5, t6, t7, t8] {
        total = &total + &t;
    }
    Ok((&inv_four_pi_pow(ctx.n()) * &total).scale(&q(1, 360)))
}

/// The scalar-case a₄ density in its stated closed form, with the
/// curvature contraction already folded to -s:
/// d/(360 (4π)^{n/2}) [3Δs + 5/4 s² - 30(n+1)s f² + 60(n-1)(n-3) f⁴
///   - 2 RicSq - 7/4 RiemSq + 60(1-n)|df|² - 60(n-1)Δ(f²)].
pub fn a4_scalar_literal(ctx: &GaugeContext) -> ScalarPoly {
    let n = ctx.n() as i64;
    let mut bracket = vars::lap(LapArg::ScalarCurv).scale(&q(3, 1));
    bracket = &bracket + &vars::s().pow(2).scale(&q(5, 4));
    bracket = &bracket + &(vars::s() * vars::f().pow(2)).scale(&q(-30 * (n + 1), 1));
    bracket = &bracket + &vars::f().pow(4).scale(&q(60 * (n - 1) * (n - 3), 1));
    bracket = &bracket + &ScalarPoly::var(Symbol::RicSq).scale(&q(-2, 1));
    bracket = &bracket + &riem_sq(ctx).scale(&q(-7, 4));
    bracket = &bracket + &perturb::df_norm_sq(ctx).scale(&q(60 * (1 - n), 1));
    bracket = &bracket + &vars::lap(LapArg::FSquared).scale(&q(-60 * (n - 1), 1));
    let d = ctx.d_poly();
    (&(&inv_four_pi_pow(ctx.n()) * &d) * &bracket).scale(&q(1, 360))
}

/// Λ-expansion of the spectral action: Λ⁴F₄a₀ + Λ²F₂a₂ + Λ⁰F₀a₄.
#[derive(Debug, Clone)]
pub struct SpectralActionExpansion {
    pub lambda4: ScalarPoly,
    pub lambda2: ScalarPoly,
    pub lambda0: ScalarPoly,
    pub combined: ScalarPoly,
}

pub fn spectral_action_expansion(
    coeffs: &HeatCoefficients,
    moments: &CutoffMoments,
    ctx: &GaugeContext,
) -> Result<SpectralActionExpansion, CoreError> {
    if ctx.n() != 4 {
        return Err(CoreError::ResidueOrder(ctx.n()));
    }
    let lam = |p: i32| ScalarPoly::var_pow(Symbol::Lambda, p);
    let lambda4 = &(&lam(4) * &moments.f4()) * &coeffs.a0;
    let lambda2 = &(&lam(2) * &moments.f2()) * &coeffs.a2;
    let lambda0 = match &coeffs.a4 {
        Some(a4) => &moments.f0() * a4,
        None => ScalarPoly::zero(),
    };
    let combined = &(&lambda4 + &lambda2) + &lambda0;
    Ok(SpectralActionExpansion {
        lambda4,
        lambda2,
        lambda0,
        combined,
    })
}

/// Tr[-s/12 - ½ Ψ c_i Ψ c_i + (n/2 - 1) Ψ²], the bracket of the interior
/// residue theorem, built literally from a Clifford representative.
pub fn wres_bracket_literal(
    psi: &Multivector,
    ctx: &GaugeContext,
) -> Result<ScalarPoly, CoreError> {
    let n = ctx.n();
    let mut acc = Multivector::scalar(n, vars::s().scale(&q(-1, 12)));
    for i in ctx.frame() {
        let ci = Multivector::generator(n, i)?;
        let x = psi.cliff_mul(&ci)?.cliff_mul(psi)?.cliff_mul(&ci)?;
        acc = &acc - &x.scale(&ScalarPoly::from_ratio(1, 2));
    }
    let psi2 = psi.cliff_mul(psi)?;
    acc = &acc + &psi2.scale(&ScalarPoly::from_ratio(n as i64 - 2, 2));
    Ok(acc.spinor_trace())
}

/// The curvature contraction Σ_{i≠j} R_{ijij} as an expanded polynomial;
/// useful for stating dictionary-dependent identities.
pub fn ricci_contraction_poly(ctx: &GaugeContext) -> ScalarPoly {
    ricci_contraction(ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauge::PerturbationKind;

    fn ctx() -> GaugeContext {
        GaugeContext::new(4).unwrap()
    }

    fn spec(kind: PerturbationKind) -> PerturbationSpec {
        PerturbationSpec::new(kind)
    }

    #[test]
    fn a2_scalar_closed_form() {
        // a2 = (4π)^{-n/2} d [-s/12 + (n-1) f²]
        for n in [4u8, 6] {
            let c = GaugeContext::new(n).unwrap();
            let hc = assemble_heat_coefficients(
                &spec(PerturbationKind::Scalar),
                &c,
                CurvatureSign::Minus,
            )
            .unwrap();
            let d = c.spinor_dim() as i64;
            let expect = &inv_four_pi_pow(n)
                * &(vars::s().scale(&q(-d, 12))
                    + vars::f().pow(2).scale(&q(d * (n as i64 - 1), 1)));
            assert_eq!(hc.a2, expect);
        }
    }

    #[test]
    fn a2_two_form_closed_form() {
        // n = d = 4: a2 = -(1/4π²)[s/12 + 2|Ψ|²]
        let c = ctx();
        let hc = assemble_heat_coefficients(
            &spec(PerturbationKind::TwoForm { imaginary: false }),
            &c,
            CurvatureSign::Minus,
        )
        .unwrap();
        let bracket = vars::s().scale(&q(1, 12)) + psi_norm_sq(&c).scale(&q(2, 1));
        let expect = (&ScalarPoly::pi_pow(-2).scale(&q(1, 4)) * &bracket).scale(&q(-1, 1));
        assert_eq!(hc.a2, expect);
    }

    #[test]
    fn a4_scalar_matches_stated_form_with_minus_dictionary() {
        for n in [4u8, 6] {
            let c = GaugeContext::new(n).unwrap();
            let a4 = assemble_heat_coefficients(
                &spec(PerturbationKind::Scalar),
                &c,
                CurvatureSign::Minus,
            )
            .unwrap()
            .a4
            .unwrap();
            assert_eq!(a4, a4_scalar_literal(&c));
        }
    }

    #[test]
    fn a4_scalar_plus_dictionary_disagrees() {
        let c = ctx();
        let a4 =
            assemble_heat_coefficients(&spec(PerturbationKind::Scalar), &c, CurvatureSign::Plus)
                .unwrap()
                .a4
                .unwrap();
        assert_ne!(a4, a4_scalar_literal(&c));
    }

    #[test]
    fn wres_one_form_keeps_only_curvature() {
        // the one-form density is -(2π)^{n/2} d s / (12 (n/2-2)!)
        for n in [4u8, 6, 8] {
            let c = GaugeContext::new(n).unwrap();
            let st = wres_interior(&spec(PerturbationKind::OneFormImaginary), &c).unwrap();
            let d = c.spinor_dim() as i64;
            let expect = &residue_normalization(n).unwrap() * &vars::s().scale(&q(-d, 12));
            assert_eq!(st.density, expect);
        }
    }

    #[test]
    fn dictionary_folds_complete_contraction() {
        let c = ctx();
        let p = &vars::f().pow(2) * &ricci_contraction(&c);
        let folded = apply_curvature_dictionary(&p, CurvatureSign::Minus, &c);
        assert_eq!(folded, -(vars::f().pow(2) * vars::s()));
        // quadratic occurrences untouched
        let sq = riem_sq(&c);
        assert_eq!(
            apply_curvature_dictionary(&sq, CurvatureSign::Minus, &c),
            sq
        );
    }

    #[test]
    fn laplacian_expand_round_trip() {
        let c = ctx();
        // Δ₀(-s/4 + 3f²) encoded then expanded equals direct expansion
        let p = vars::s().scale(&q(-1, 4)) + vars::f().pow(2).scale(&q(3, 1));
        let enc = formal_laplacian_unexpanded(&p, &c).unwrap();
        let expanded = expand_laplacians(&enc, &c).unwrap();
        let mut direct = ScalarPoly::zero();
        for k in c.frame() {
            direct = &direct + &p.derive(k, 4).unwrap().derive(k, 4).unwrap();
        }
        assert_eq!(expanded, direct);
    }

    #[test]
    fn residue_density_needs_dimension_four() {
        let c2 = GaugeContext::new(2).unwrap();
        assert!(matches!(
            wres_interior(&spec(PerturbationKind::Scalar), &c2),
            Err(CoreError::ResidueOrder(2))
        ));
    }

    #[test]
    fn a4_capability_error_for_unsupported_kinds() {
        let c = ctx();
        assert!(matches!(
            a4_density(
                &spec(PerturbationKind::OneFormImaginary),
                &c,
                CurvatureSign::Minus
            ),
            Err(CoreError::UnsupportedA4)
        ));
    }

    #[test]
    fn spectral_action_shape() {
        let c = ctx();
        let hc =
            assemble_heat_coefficients(&spec(PerturbationKind::Scalar), &c, CurvatureSign::Minus)
                .unwrap();
        let exp = spectral_action_expansion(&hc, &CutoffMoments, &c).unwrap();
        assert_eq!(exp.combined, &(&exp.lambda4 + &exp.lambda2) + &exp.lambda0);
        // a2 = a4 = 0 leaves only the Λ⁴ term
        let hc0 = HeatCoefficients {
            a0: hc.a0.clone(),
            a2: ScalarPoly::zero(),
            a4: Some(ScalarPoly::zero()),
        };
        let exp0 = spectral_action_expansion(&hc0, &CutoffMoments, &c).unwrap();
        assert_eq!(exp0.combined, exp0.lambda4);
        assert!(!exp0.lambda4.is_zero());
    }
}
