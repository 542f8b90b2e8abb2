//! Identities of the metric products and the formulas built on the
//! pseudoscalars.

use dualmetric::{invert_metric_via_formula, invert_metric_via_formula_alt, pair};
use dualmetric::{Compound, Graded, Kind, Multiform, Multivector, Result};
use nalgebra::DMatrix;

use super::{id, wedge_all, Ctx, Identity};

pub(super) const IDENTITIES: &[Identity] = &[
    id("extvectorscalarextvector", extvectorscalarextvector),
    id("extformscalarextform", extformscalarextform),
    id("contractionpq", contractionpq),
    id("contrvvectors", contrvvectors),
    id("contrfforms", contrfforms),
    id("scalarhomogmult1", scalarhomogmult1),
    id("scalarhomogmult2", scalarhomogmult2),
    id("contrhomogmultiv1", contrhomogmultiv1),
    id("contrhomogmultiv2", contrhomogmultiv2),
    id("contrhomogmultif1", contrhomogmultif1),
    id("contrhomogmultif2", contrhomogmultif2),
    id("contrvecexteriormultiv", contrvecexteriormultiv),
    id("contrformexteriormultif", contrformexteriormultif),
    id("contrcontrmultiv", contrcontrmultiv),
    id("contrcontrmultif", contrcontrmultif),
    id("contrscalarmultiv", contrscalarmultiv),
    id("contrscalarmultif", contrscalarmultif),
    id("scalargamma", scalargamma),
    id("contractedgamma", contractedgamma),
    id("gamma1", gamma1),
    id("gamma1b", gamma1b),
    id("gamma2", gamma2),
    id("gamma3", gamma3),
    id("gamma4", gamma4),
    id("gamma4b", gamma4b),
    id("gamma5", gamma5),
    id("gamma6", gamma6),
    id("gamma7", gamma7),
    id("gamma7b", gamma7b),
];

fn extvectorscalarextvector(c: &mut Ctx) -> Result<()> {
    let p = c.grade_from(1);
    let (vs, ws) = (c.vectors(p), c.vectors(p));
    let s = c.space;
    let gram = DMatrix::from_fn(p, p, |i, j| s.scalar_product_mv(&vs[i], &ws[j]).unwrap());
    let lhs = s.scalar_product_mv(&wedge_all(c.dim, &vs)?, &wedge_all(c.dim, &ws)?)?;
    c.eq_scalar(lhs, gram.determinant());
    Ok(())
}

fn extformscalarextform(c: &mut Ctx) -> Result<()> {
    let p = c.grade_from(1);
    let (ws, ss) = (c.forms(p), c.forms(p));
    let s = c.space;
    let gram = DMatrix::from_fn(p, p, |i, j| s.scalar_product_mf(&ws[i], &ss[j]).unwrap());
    let lhs = s.scalar_product_mf(&wedge_all(c.dim, &ws)?, &wedge_all(c.dim, &ss)?)?;
    c.eq_scalar(lhs, gram.determinant());
    Ok(())
}

fn contractionpq(c: &mut Ctx) -> Result<()> {
    let (p, q) = c.grades_le();
    let sign = if (p * (q - p)) % 2 == 0 { 1.0 } else { -1.0 };
    let x: Multivector = c.homogeneous(p);
    let y: Multivector = c.homogeneous(q);
    let s = c.space;
    c.eq(&s.lcontract_mv(&x, &y)?, &(s.rcontract_mv(&y, &x)? * sign));
    let phi: Multiform = c.homogeneous(p);
    let psi: Multiform = c.homogeneous(q);
    c.eq(&s.lcontract_mf(&phi, &psi)?, &(s.rcontract_mf(&psi, &phi)? * sign));
    Ok(())
}

/// `Σ_k (-1)^(k-1) (a·b_k) b_1 ∧ ... (b_k removed) ... ∧ b_p`.
fn one_item_expansion<K: Kind>(
    c: &Ctx,
    dot: impl Fn(&Graded<K>) -> f64,
    bs: &[Graded<K>],
) -> Result<Graded<K>> {
    let mut out = Graded::zero(c.dim);
    for k in 0..bs.len() {
        let mut rest = bs.to_vec();
        rest.remove(k);
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        out = out + wedge_all(c.dim, &rest)? * (sign * dot(&bs[k]));
    }
    Ok(out)
}

fn contrvvectors(c: &mut Ctx) -> Result<()> {
    let p = c.grade_from(1);
    let v = c.vector();
    let vs = c.vectors(p);
    let s = c.space;
    let lhs = s.lcontract_mv(&v, &wedge_all(c.dim, &vs)?)?;
    let rhs = one_item_expansion(c, |w| s.scalar_product_mv(&v, w).unwrap(), &vs)?;
    c.eq(&lhs, &rhs);
    Ok(())
}

fn contrfforms(c: &mut Ctx) -> Result<()> {
    let p = c.grade_from(1);
    let omega = c.form();
    let ws = c.forms(p);
    let s = c.space;
    let lhs = s.lcontract_mf(&omega, &wedge_all(c.dim, &ws)?)?;
    let rhs = one_item_expansion(c, |w| s.scalar_product_mf(&omega, w).unwrap(), &ws)?;
    c.eq(&lhs, &rhs);
    Ok(())
}

/// `Σ_{J,K} a_J det M[J,K] b_K` over the grade-`p` blades.
fn minor_sum(compound: &Compound, a: &[f64], b: &[f64], p: usize) -> f64 {
    let masks = compound.dim().grades().masks(p);
    let mut acc = 0.0;
    for &j in masks {
        for &k in masks {
            acc += a[j as usize] * compound.minor(j, k) * b[k as usize];
        }
    }
    acc
}

fn scalarhomogmult1(c: &mut Ctx) -> Result<()> {
    let p = c.grade_from(0);
    let x: Multivector = c.homogeneous(p);
    let y: Multivector = c.homogeneous(p);
    let gamma = c.space.extensor();
    let rhs = minor_sum(gamma.forward_compound(), x.coeffs(), y.coeffs(), p);
    c.eq_scalar(c.space.scalar_product_mv(&x, &y)?, rhs);
    let phi: Multiform = c.homogeneous(p);
    let psi: Multiform = c.homogeneous(p);
    let rhs = minor_sum(gamma.inverse_compound(), phi.coeffs(), psi.coeffs(), p);
    c.eq_scalar(c.space.scalar_product_mf(&phi, &psi)?, rhs);
    Ok(())
}

fn scalarhomogmult2(c: &mut Ctx) -> Result<()> {
    let (p, q) = c.grades_ne();
    let x: Multivector = c.homogeneous(p);
    let y: Multivector = c.homogeneous(q);
    c.eq_scalar(c.space.scalar_product_mv(&x, &y)?, 0.0);
    let phi: Multiform = c.homogeneous(p);
    let psi: Multiform = c.homogeneous(q);
    c.eq_scalar(c.space.scalar_product_mf(&phi, &psi)?, 0.0);
    Ok(())
}

fn contrhomogmultiv1(c: &mut Ctx) -> Result<()> {
    let (p, q) = c.grades_le();
    let x: Multivector = c.homogeneous(p);
    let y: Multivector = c.homogeneous(q);
    let left = c.space.lcontract_mv(&x, &y)?;
    let right = c.space.rcontract_mv(&y, &x)?;
    c.eq(&left, &left.grade_project(q - p)?);
    c.eq(&right, &right.grade_project(q - p)?);
    Ok(())
}

fn contrhomogmultiv2(c: &mut Ctx) -> Result<()> {
    let (p, q) = c.grades_gt();
    let x: Multivector = c.homogeneous(p);
    let y: Multivector = c.homogeneous(q);
    c.eq_zero(&c.space.lcontract_mv(&x, &y)?);
    c.eq_zero(&c.space.rcontract_mv(&y, &x)?);
    Ok(())
}

fn contrhomogmultif1(c: &mut Ctx) -> Result<()> {
    let (p, q) = c.grades_le();
    let phi: Multiform = c.homogeneous(p);
    let psi: Multiform = c.homogeneous(q);
    let left = c.space.lcontract_mf(&phi, &psi)?;
    let right = c.space.rcontract_mf(&psi, &phi)?;
    c.eq(&left, &left.grade_project(q - p)?);
    c.eq(&right, &right.grade_project(q - p)?);
    Ok(())
}

fn contrhomogmultif2(c: &mut Ctx) -> Result<()> {
    let (p, q) = c.grades_gt();
    let phi: Multiform = c.homogeneous(p);
    let psi: Multiform = c.homogeneous(q);
    c.eq_zero(&c.space.lcontract_mf(&phi, &psi)?);
    c.eq_zero(&c.space.rcontract_mf(&psi, &phi)?);
    Ok(())
}

fn contrvecexteriormultiv(c: &mut Ctx) -> Result<()> {
    let v = c.vector();
    let (x, y) = (c.mv(), c.mv());
    let s = c.space;
    let lhs = s.lcontract_mv(&v, &x.wedge(&y)?)?;
    let rhs = s.lcontract_mv(&v, &x)?.wedge(&y)?
        + x.grade_involution().wedge(&s.lcontract_mv(&v, &y)?)?;
    c.eq(&lhs, &rhs);
    Ok(())
}

fn contrformexteriormultif(c: &mut Ctx) -> Result<()> {
    let omega = c.form();
    let (phi, psi) = (c.mf(), c.mf());
    let s = c.space;
    let lhs = s.lcontract_mf(&omega, &phi.wedge(&psi)?)?;
    let rhs = s.lcontract_mf(&omega, &phi)?.wedge(&psi)?
        + phi.grade_involution().wedge(&s.lcontract_mf(&omega, &psi)?)?;
    c.eq(&lhs, &rhs);
    Ok(())
}

fn contrcontrmultiv(c: &mut Ctx) -> Result<()> {
    let (x, y, z) = (c.mv(), c.mv(), c.mv());
    let s = c.space;
    c.eq(
        &s.lcontract_mv(&x, &s.lcontract_mv(&y, &z)?)?,
        &s.lcontract_mv(&x.wedge(&y)?, &z)?,
    );
    c.eq(
        &s.rcontract_mv(&s.rcontract_mv(&z, &y)?, &x)?,
        &s.rcontract_mv(&z, &y.wedge(&x)?)?,
    );
    Ok(())
}

fn contrcontrmultif(c: &mut Ctx) -> Result<()> {
    let (phi, chi, psi) = (c.mf(), c.mf(), c.mf());
    let s = c.space;
    c.eq(
        &s.lcontract_mf(&phi, &s.lcontract_mf(&chi, &psi)?)?,
        &s.lcontract_mf(&phi.wedge(&chi)?, &psi)?,
    );
    c.eq(
        &s.rcontract_mf(&s.rcontract_mf(&psi, &chi)?, &phi)?,
        &s.rcontract_mf(&psi, &chi.wedge(&phi)?)?,
    );
    Ok(())
}

fn contrscalarmultiv(c: &mut Ctx) -> Result<()> {
    let (x, y, z) = (c.mv(), c.mv(), c.mv());
    let s = c.space;
    c.eq_scalar(
        s.scalar_product_mv(&s.lcontract_mv(&x, &y)?, &z)?,
        s.scalar_product_mv(&y, &x.reversion().wedge(&z)?)?,
    );
    c.eq_scalar(
        s.scalar_product_mv(&z, &s.rcontract_mv(&y, &x)?)?,
        s.scalar_product_mv(&z.wedge(&x.reversion())?, &y)?,
    );
    Ok(())
}

fn contrscalarmultif(c: &mut Ctx) -> Result<()> {
    let (phi, chi, psi) = (c.mf(), c.mf(), c.mf());
    let s = c.space;
    c.eq_scalar(
        s.scalar_product_mf(&s.lcontract_mf(&phi, &chi)?, &psi)?,
        s.scalar_product_mf(&chi, &phi.reversion().wedge(&psi)?)?,
    );
    c.eq_scalar(
        s.scalar_product_mf(&psi, &s.rcontract_mf(&chi, &phi)?)?,
        s.scalar_product_mf(&psi.wedge(&phi.reversion())?, &chi)?,
    );
    Ok(())
}

fn scalargamma(c: &mut Ctx) -> Result<()> {
    let (phi, x) = (c.mf(), c.mv());
    let s = c.space;
    let gamma = s.extensor();
    let expected = pair(&phi, &x)?;
    c.eq_scalar(s.scalar_product_mv(&gamma.extend_inverse(&phi)?, &x)?, expected);
    c.eq_scalar(s.scalar_product_mf(&phi, &gamma.extend(&x)?)?, expected);
    Ok(())
}

fn contractedgamma(c: &mut Ctx) -> Result<()> {
    let (phi, x) = (c.mf(), c.mv());
    let s = c.space;
    let d = c.duality;
    let gamma = s.extensor();
    let ginv_phi = gamma.extend_inverse(&phi)?;
    let g_x = gamma.extend(&x)?;
    c.eq(&s.lcontract_mv(&ginv_phi, &x)?, &d.left_contract_mv(&phi, &x)?);
    c.eq(&s.rcontract_mv(&x, &ginv_phi)?, &d.right_contract_mv(&x, &phi)?);
    c.eq(&s.lcontract_mf(&g_x, &phi)?, &d.left_contract_mf(&x, &phi)?);
    c.eq(&s.rcontract_mf(&phi, &g_x)?, &d.right_contract_mf(&phi, &x)?);
    Ok(())
}

fn gamma1(c: &mut Ctx) -> Result<()> {
    let p = c.grade_from(1);
    let v = c.vector();
    let ws = wedge_all(c.dim, &c.vectors(p))?;
    let gamma = c.space.extensor();
    let lhs = gamma.extend(&c.duality.left_contract_mv(&gamma.apply(&v)?, &ws)?)?;
    let rhs = c.duality.left_contract_mf(&v, &gamma.extend(&ws)?)?;
    c.eq(&lhs, &rhs);
    Ok(())
}

fn gamma1b(c: &mut Ctx) -> Result<()> {
    let p = c.grade_from(1);
    let omega = c.form();
    let sigmas = wedge_all(c.dim, &c.forms(p))?;
    let gamma = c.space.extensor();
    let lhs = gamma.extend_inverse(
        &c.duality
            .left_contract_mf(&gamma.apply_inverse(&omega)?, &sigmas)?,
    )?;
    let rhs = c
        .duality
        .left_contract_mv(&omega, &gamma.extend_inverse(&sigmas)?)?;
    c.eq(&lhs, &rhs);
    Ok(())
}

/// The three pseudoscalar relations shared by `gamma2` (vectors and 1-forms)
/// and `gamma5` (general multivectors and multiforms).
fn pseudoscalar_relations(c: &mut Ctx, x: &Multivector, phi: &Multiform) -> Result<()> {
    let s = c.space;
    let d = c.duality;
    let gamma = s.extensor();
    let e = Multivector::pseudoscalar(c.dim);
    let eps = Multiform::pseudoscalar(c.dim);
    let norm = s.pseudoscalar_norm()?;
    let x_e = s.lcontract_mv(x, &e)?;
    c.eq(&gamma.extend(&x_e)?, &(d.left_contract_mf(x, &eps)? * norm));
    c.eq(&s.lcontract_mv(&x_e, &e.reversion())?, &(x * norm));
    let back = s.lcontract_mv(&d.left_contract_mv(phi, &e)?, &e.reversion())?;
    c.eq(&gamma.extend(&back)?, &(phi * norm));
    Ok(())
}

fn gamma2(c: &mut Ctx) -> Result<()> {
    let (v, omega) = (c.vector(), c.form());
    pseudoscalar_relations(c, &v, &omega)
}

/// Both forms of the inversion formula for `γ`, built from `G` alone,
/// against `G⁻¹` from the LU factorization.
fn gamma3(c: &mut Ctx) -> Result<()> {
    let omega = c.form();
    let gamma = c.space.extensor();
    let expected = gamma.apply_inverse(&omega)?;
    let first = invert_metric_via_formula(gamma.matrix(), &omega)?;
    let second = invert_metric_via_formula_alt(gamma.matrix(), &omega)?;
    c.eq(&first, &expected);
    c.eq(&second, &expected);
    c.eq(&first, &second);
    Ok(())
}

fn gamma4(c: &mut Ctx) -> Result<()> {
    let (x, y) = (c.mv(), c.mv());
    let gamma = c.space.extensor();
    let d = c.duality;
    let lhs = gamma.extend(&d.left_contract_mv(&gamma.extend(&x)?, &y)?)?;
    let rhs = d.left_contract_mf(&x, &gamma.extend(&y)?)?;
    c.eq(&lhs, &rhs);
    Ok(())
}

fn gamma4b(c: &mut Ctx) -> Result<()> {
    let (phi, psi) = (c.mf(), c.mf());
    let gamma = c.space.extensor();
    let d = c.duality;
    let lhs = gamma.extend_inverse(&d.left_contract_mf(&gamma.extend_inverse(&phi)?, &psi)?)?;
    let rhs = d.left_contract_mv(&phi, &gamma.extend_inverse(&psi)?)?;
    c.eq(&lhs, &rhs);
    Ok(())
}

fn gamma5(c: &mut Ctx) -> Result<()> {
    let (x, phi) = (c.mv(), c.mf());
    pseudoscalar_relations(c, &x, &phi)
}

fn gamma6(c: &mut Ctx) -> Result<()> {
    let phi = c.mf();
    let s = c.space;
    let expected = s.extensor().extend_inverse(&phi)?;
    let first = s.invert_extension_via_formula(&phi)?;
    let second = s.invert_extension_via_formula_alt(&phi)?;
    c.eq(&first, &expected);
    c.eq(&second, &expected);
    Ok(())
}

fn gamma7(c: &mut Ctx) -> Result<()> {
    let x = c.mv();
    let s = c.space;
    c.eq(&s.expand_multivector(&x)?, &x);
    c.eq(&s.expand_multivector_alt(&x)?, &x);
    Ok(())
}

fn gamma7b(c: &mut Ctx) -> Result<()> {
    let phi = c.mf();
    let s = c.space;
    c.eq(&s.expand_multiform(&phi)?, &phi);
    c.eq(&s.expand_multiform_alt(&phi)?, &phi);
    Ok(())
}
