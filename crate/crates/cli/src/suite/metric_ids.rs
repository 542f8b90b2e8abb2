//! Identities of metric tensors, metric extensors and their extension.

use dualmetric::{pair, MetricExtensor, Multiform, Multivector, Result};
use nalgebra::DMatrix;
use rand::Rng;

use super::{id, wedge_all, Ctx, Identity};

pub(super) const IDENTITIES: &[Identity] = &[
    id("theorem", theorem),
    id("gammasymmetric", gammasymmetric),
    id("extensionmetric", extensionmetric),
    id("extensioninvmetric", extensioninvmetric),
    id("extensiondef1", extensiondef1),
    id("extension1", extension1),
    id("extension2", extension2),
    id("extension3", extension3),
    id("extension4", extension4),
    id("reciprocity", reciprocity),
    id("reciprocityblades", reciprocityblades),
    id("pseudoscalars1", pseudoscalars1),
    id("pseudoscalars2", pseudoscalars2),
    id("pseudoscalars3", pseudoscalars3),
];

/// `⟨γ(v), w⟩ = g(v, w)` and the tensor/extensor round trip.
fn theorem(c: &mut Ctx) -> Result<()> {
    let gamma = c.space.extensor();
    let tensor = gamma.to_tensor();
    let (v, w) = (c.vector(), c.vector());
    c.eq_scalar(pair(&gamma.apply(&v)?, &w)?, tensor.eval(&v, &w)?);
    let again = MetricExtensor::from_tensor(&tensor)?;
    c.eq_matrix(again.matrix(), gamma.matrix());
    c.eq_matrix(again.to_tensor().matrix(), tensor.matrix());
    Ok(())
}

fn gammasymmetric(c: &mut Ctx) -> Result<()> {
    let gamma = c.space.extensor();
    let (v, w) = (c.vector(), c.vector());
    c.eq_scalar(pair(&gamma.apply(&v)?, &w)?, pair(&gamma.apply(&w)?, &v)?);
    let (om, sig) = (c.form(), c.form());
    c.eq_scalar(
        pair(&om, &gamma.apply_inverse(&sig)?)?,
        pair(&sig, &gamma.apply_inverse(&om)?)?,
    );
    Ok(())
}

/// `γ̲` is symmetric over multivectors and one-to-one.
fn extensionmetric(c: &mut Ctx) -> Result<()> {
    let gamma = c.space.extensor();
    let (x, y) = (c.mv(), c.mv());
    c.eq_scalar(pair(&gamma.extend(&x)?, &y)?, pair(&gamma.extend(&y)?, &x)?);
    c.eq(&gamma.extend_inverse(&gamma.extend(&x)?)?, &x);
    Ok(())
}

/// `γ̲⁻¹` is symmetric over multiforms and one-to-one.
fn extensioninvmetric(c: &mut Ctx) -> Result<()> {
    let gamma = c.space.extensor();
    let (phi, psi) = (c.mf(), c.mf());
    c.eq_scalar(
        pair(&phi, &gamma.extend_inverse(&psi)?)?,
        pair(&psi, &gamma.extend_inverse(&phi)?)?,
    );
    c.eq(&gamma.extend(&gamma.extend_inverse(&phi)?)?, &phi);
    Ok(())
}

/// Scalars pass through, `γ(e_j) = G_jk ε^k`, and a simple `p`-vector maps
/// to the wedge of the images of its factors.
fn extensiondef1(c: &mut Ctx) -> Result<()> {
    let gamma = c.space.extensor();
    let alpha: f64 = c.rng.random_range(-1.0..=1.0);
    c.eq(
        &gamma.extend(&Multivector::scalar(c.dim, alpha))?,
        &Multiform::scalar(c.dim, alpha),
    );
    for j in 0..c.n {
        let row: Vec<f64> = gamma.matrix().row(j).iter().copied().collect();
        c.eq(
            &gamma.extend(&Multivector::blade(c.dim, &[j + 1])?)?,
            &Multiform::vector(c.dim, &row)?,
        );
    }
    let p = c.grade_from(1);
    let vs = c.vectors(p);
    let images = vs.iter().map(|v| gamma.apply(v)).collect::<Result<Vec<_>>>()?;
    c.eq(&gamma.extend(&wedge_all(c.dim, &vs)?)?, &wedge_all(c.dim, &images)?);
    let ws = c.forms(p);
    let images = ws
        .iter()
        .map(|w| gamma.apply_inverse(w))
        .collect::<Result<Vec<_>>>()?;
    c.eq(
        &gamma.extend_inverse(&wedge_all(c.dim, &ws)?)?,
        &wedge_all(c.dim, &images)?,
    );
    Ok(())
}

fn extension1(c: &mut Ctx) -> Result<()> {
    let gamma = c.space.extensor();
    let p = c.grade_from(0);
    let x: Multivector = c.homogeneous(p);
    let gx = gamma.extend(&x)?;
    c.eq(&gx, &gx.grade_project(p)?);
    let phi: Multiform = c.homogeneous(p);
    let gphi = gamma.extend_inverse(&phi)?;
    c.eq(&gphi, &gphi.grade_project(p)?);
    Ok(())
}

fn extension2(c: &mut Ctx) -> Result<()> {
    let gamma = c.space.extensor();
    let (x, y) = (c.mv(), c.mv());
    c.eq(
        &gamma.extend(&x.wedge(&y)?)?,
        &gamma.extend(&x)?.wedge(&gamma.extend(&y)?)?,
    );
    let (phi, psi) = (c.mf(), c.mf());
    c.eq(
        &gamma.extend_inverse(&phi.wedge(&psi)?)?,
        &gamma.extend_inverse(&phi)?.wedge(&gamma.extend_inverse(&psi)?)?,
    );
    Ok(())
}

fn extension3(c: &mut Ctx) -> Result<()> {
    let gamma = c.space.extensor();
    let x = c.mv();
    c.eq(
        &gamma.extend(&x)?.grade_involution(),
        &gamma.extend(&x.grade_involution())?,
    );
    c.eq(&gamma.extend(&x)?.reversion(), &gamma.extend(&x.reversion())?);
    Ok(())
}

/// The extension of `γ⁻¹` (built from `G⁻¹`) inverts the extension of `γ`.
fn extension4(c: &mut Ctx) -> Result<()> {
    let gamma = c.space.extensor();
    let x = c.mv();
    c.eq(&gamma.extend_inverse(&gamma.extend(&x)?)?, &x);
    let phi = c.mf();
    c.eq(&gamma.extend(&gamma.extend_inverse(&phi)?)?, &phi);
    Ok(())
}

/// `e_j · e^k = ε^k · ε_j = δ_j^k` for every `j, k`.
fn reciprocity(c: &mut Ctx) -> Result<()> {
    let (up, down) = c.space.extensor().reciprocal_basis();
    for (j, down_j) in down.iter().enumerate() {
        for (k, up_k) in up.iter().enumerate() {
            let delta = if j == k { 1.0 } else { 0.0 };
            let e_j = Multivector::blade(c.dim, &[j + 1])?;
            let eps_k = Multiform::blade(c.dim, &[k + 1])?;
            c.eq_scalar(c.space.scalar_product_mv(&e_j, up_k)?, delta);
            c.eq_scalar(c.space.scalar_product_mf(&eps_k, down_j)?, delta);
        }
    }
    Ok(())
}

/// `(e_{j1} ∧ ... ∧ e_{jp}) · (e^{k1} ∧ ... ∧ e^{kp}) = det(δ_{j_a}^{k_b})`
/// for random index tuples, repeats allowed.
fn reciprocityblades(c: &mut Ctx) -> Result<()> {
    let (up, down) = c.space.extensor().reciprocal_basis();
    let p = c.grade_from(1);
    let js: Vec<usize> = (0..p).map(|_| c.rng.random_range(0..c.n)).collect();
    let ks: Vec<usize> = (0..p).map(|_| c.rng.random_range(0..c.n)).collect();
    let symbol = DMatrix::from_fn(p, p, |a, b| if js[a] == ks[b] { 1.0 } else { 0.0 }).determinant();
    let lower: Vec<Multivector> = js
        .iter()
        .map(|&j| Multivector::blade(c.dim, &[j + 1]))
        .collect::<Result<_>>()?;
    let upper: Vec<Multivector> = ks.iter().map(|&k| up[k].clone()).collect();
    let lhs = c
        .space
        .scalar_product_mv(&wedge_all(c.dim, &lower)?, &wedge_all(c.dim, &upper)?)?;
    c.eq_scalar(lhs, symbol);
    let upper_f: Vec<Multiform> = ks
        .iter()
        .map(|&k| Multiform::blade(c.dim, &[k + 1]))
        .collect::<Result<_>>()?;
    let lower_f: Vec<Multiform> = js.iter().map(|&j| down[j].clone()).collect();
    let lhs = c
        .space
        .scalar_product_mf(&wedge_all(c.dim, &upper_f)?, &wedge_all(c.dim, &lower_f)?)?;
    c.eq_scalar(lhs, symbol);
    Ok(())
}

fn pseudoscalars1(c: &mut Ctx) -> Result<()> {
    let ps = c.space.extensor().pseudoscalars();
    let s = c.space;
    c.eq_scalar(s.scalar_product_mv(&ps.e_wedge, &ps.e_wedge_up)?, 1.0);
    c.eq_scalar(s.scalar_product_mf(&ps.eps_wedge, &ps.eps_wedge_down)?, 1.0);
    c.eq_scalar(
        s.scalar_product_mv(&ps.e_wedge, &ps.e_wedge)?,
        s.scalar_product_mf(&ps.eps_wedge_down, &ps.eps_wedge_down)?,
    );
    c.eq_scalar(
        s.scalar_product_mf(&ps.eps_wedge, &ps.eps_wedge)?,
        s.scalar_product_mv(&ps.e_wedge_up, &ps.e_wedge_up)?,
    );
    Ok(())
}

fn pseudoscalars2(c: &mut Ctx) -> Result<()> {
    let ps = c.space.extensor().pseudoscalars();
    let s = c.space;
    let e_e = s.scalar_product_mv(&ps.e_wedge, &ps.e_wedge)?;
    let eu_eu = s.scalar_product_mv(&ps.e_wedge_up, &ps.e_wedge_up)?;
    let eps_eps = s.scalar_product_mf(&ps.eps_wedge, &ps.eps_wedge)?;
    let ed_ed = s.scalar_product_mf(&ps.eps_wedge_down, &ps.eps_wedge_down)?;
    c.eq(&ps.e_wedge_up, &(&ps.e_wedge * eps_eps));
    c.eq(&ps.eps_wedge_down, &(&ps.eps_wedge * e_e));
    c.eq(&ps.e_wedge, &(&ps.e_wedge_up * ed_ed));
    c.eq(&ps.eps_wedge, &(&ps.eps_wedge_down * eu_eu));
    Ok(())
}

fn pseudoscalars3(c: &mut Ctx) -> Result<()> {
    let ps = c.space.extensor().pseudoscalars();
    let s = c.space;
    let e_e = s.scalar_product_mv(&ps.e_wedge, &ps.e_wedge)?;
    let eu_eu = s.scalar_product_mv(&ps.e_wedge_up, &ps.e_wedge_up)?;
    let eps_eps = s.scalar_product_mf(&ps.eps_wedge, &ps.eps_wedge)?;
    let ed_ed = s.scalar_product_mf(&ps.eps_wedge_down, &ps.eps_wedge_down)?;
    c.eq_scalar(e_e * eu_eu, 1.0);
    c.eq_scalar(eps_eps * ed_ed, 1.0);
    Ok(())
}
