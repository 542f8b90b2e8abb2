//! Identities of the metric-free duality pairing and contractions.

use dualmetric::blade::permutation_sign;
use dualmetric::linalg::lu_inverse;
use dualmetric::sampling::random_invertible;
use dualmetric::{pair, BladeIndex, Graded, Kind, Multiform, Multivector, Result};
use nalgebra::DMatrix;

use super::{id, wedge_all, Ctx, Identity};

pub(super) const IDENTITIES: &[Identity] = &[
    id("Fund1", fund1),
    id("Fund2", fund2),
    id("Fund3", fund3),
    id("Fund4", fund4),
    id("contrformvectors", contrformvectors),
    id("contrvectorforms", contrvectorforms),
    id("scalarhomog1", scalarhomog1),
    id("scalarhomog2", scalarhomog2),
    id("contrhomogmultiv0", contrhomogmultiv0),
    id("contrhomogmultiv", contrhomogmultiv),
    id("contrhomogmultif0", contrhomogmultif0),
    id("contrhomogmultif", contrhomogmultif),
    id("contrformmultivectors", contrformmultivectors),
    id("contrvectormultiforms", contrvectormultiforms),
    id("dcvectors", dcvectors),
    id("dcforms", dcforms),
    id("dcpvectors", dcpvectors),
    id("dcpforms", dcpforms),
    id("pairingofpseudo", pairingofpseudo),
    id("expansion1", expansion1),
    id("expansion2", expansion2),
    id("expansionformula0", expansionformula0),
    id("expansionformula1", expansionformula1),
    id("expansionformula2", expansionformula2),
    id("expansionformula3", expansionformula3),
    id("nondegeneracy", nondegeneracy),
];

/// `t(a_1, ..., a_p)` for a grade-`p` element `t` given by blade coefficients,
/// summed over every injective index tuple with the sign of its sorting
/// permutation. Independent of the wedge code.
fn evaluate<K: Kind>(t: &Graded<K>, args: &[Graded<K::Dual>]) -> f64 {
    fn rec<K: Kind>(
        t: &Graded<K>,
        args: &[Graded<K::Dual>],
        tuple: &mut Vec<usize>,
        weight: f64,
        acc: &mut f64,
    ) {
        let n = t.dim().get();
        if tuple.len() == args.len() {
            let sign = permutation_sign(tuple) as f64;
            let idx = BladeIndex::from_indices(tuple, t.dim()).unwrap();
            *acc += sign * weight * t.coeff(idx);
            return;
        }
        let arg = args[tuple.len()].vector_part();
        for j in 1..=n {
            if tuple.contains(&j) || arg[j - 1] == 0.0 {
                continue;
            }
            tuple.push(j);
            rec(t, args, tuple, weight * arg[j - 1], acc);
            tuple.pop();
        }
    }
    let mut acc = 0.0;
    rec(t, args, &mut Vec::new(), 1.0, &mut acc);
    acc
}

fn fund1(c: &mut Ctx) -> Result<()> {
    let p = c.grade_from(1);
    let phi: Multiform = c.homogeneous(p);
    let vs = c.vectors(p);
    let lhs = pair(&phi, &wedge_all(c.dim, &vs)?)?;
    c.eq_scalar(lhs, evaluate(&phi, &vs));
    Ok(())
}

fn fund2(c: &mut Ctx) -> Result<()> {
    let p = c.grade_from(2);
    let x: Multivector = c.homogeneous(p);
    let ws = c.forms(p);
    let lhs = pair(&wedge_all(c.dim, &ws)?, &x)?;
    c.eq_scalar(lhs, evaluate(&x, &ws));
    Ok(())
}

fn fund3(c: &mut Ctx) -> Result<()> {
    let p = c.grade_from(1);
    let ws = c.forms(p);
    let vs = c.vectors(p);
    let lhs = pair(&wedge_all(c.dim, &ws)?, &wedge_all(c.dim, &vs)?)?;
    let m = DMatrix::from_fn(p, p, |i, j| pair(&ws[i], &vs[j]).unwrap());
    c.eq_scalar(lhs, m.determinant());
    Ok(())
}

fn fund4(c: &mut Ctx) -> Result<()> {
    let (p, q) = c.grades_le();
    let sign = if (p * (q - p)) % 2 == 0 { 1.0 } else { -1.0 };
    let phi: Multiform = c.homogeneous(p);
    let x: Multivector = c.homogeneous(q);
    let lhs = c.duality.left_contract_mv(&phi, &x)?;
    let rhs = c.duality.right_contract_mv(&x, &phi)? * sign;
    c.eq(&lhs, &rhs);
    let y: Multivector = c.homogeneous(p);
    let psi: Multiform = c.homogeneous(q);
    let lhs = c.duality.left_contract_mf(&y, &psi)?;
    let rhs = c.duality.right_contract_mf(&psi, &y)? * sign;
    c.eq(&lhs, &rhs);
    Ok(())
}

/// `Σ_k (-1)^(k-1) ⟨a, b_k⟩ b_1 ∧ ... (b_k removed) ... ∧ b_p`.
fn one_item_expansion<K: Kind>(
    c: &Ctx,
    coeff: impl Fn(&Graded<K>) -> f64,
    bs: &[Graded<K>],
) -> Result<Graded<K>> {
    let mut out = Graded::zero(c.dim);
    for k in 0..bs.len() {
        let rest: Vec<_> = bs
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(_, b)| b.clone())
            .collect();
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        out = out + wedge_all(c.dim, &rest)? * (sign * coeff(&bs[k]));
    }
    Ok(out)
}

fn contrformvectors(c: &mut Ctx) -> Result<()> {
    let p = c.grade_from(1);
    let omega = c.form();
    let vs = c.vectors(p);
    let lhs = c.duality.left_contract_mv(&omega, &wedge_all(c.dim, &vs)?)?;
    let rhs = one_item_expansion(c, |v| pair(&omega, v).unwrap(), &vs)?;
    c.eq(&lhs, &rhs);
    Ok(())
}

fn contrvectorforms(c: &mut Ctx) -> Result<()> {
    let p = c.grade_from(1);
    let v = c.vector();
    let ws = c.forms(p);
    let lhs = c.duality.left_contract_mf(&v, &wedge_all(c.dim, &ws)?)?;
    let rhs = one_item_expansion(c, |w| pair(w, &v).unwrap(), &ws)?;
    c.eq(&lhs, &rhs);
    Ok(())
}

fn scalarhomog1(c: &mut Ctx) -> Result<()> {
    let phi = c.mf();
    let x = c.mv();
    let mut total = 0.0;
    for p in 0..=c.n {
        let included = pair(&phi.grade_project(p)?, &x.grade_project(p)?)?;
        let grade_pairing = c.duality.pairing_grade(&phi, &x, p)?;
        c.eq_scalar(included, grade_pairing);
        total += grade_pairing;
    }
    c.eq_scalar(pair(&phi, &x)?, total);
    Ok(())
}

fn scalarhomog2(c: &mut Ctx) -> Result<()> {
    let (p, q) = c.grades_ne();
    let phi: Multiform = c.homogeneous(p);
    let x: Multivector = c.homogeneous(q);
    c.eq_scalar(pair(&phi, &x)?, 0.0);
    Ok(())
}

fn contrhomogmultiv0(c: &mut Ctx) -> Result<()> {
    let (p, q) = c.grades_le();
    let phi: Multiform = c.homogeneous(p);
    let x: Multivector = c.homogeneous(q);
    let left = c.duality.left_contract_mv(&phi, &x)?;
    let right = c.duality.right_contract_mv(&x, &phi)?;
    c.eq(&left, &left.grade_project(q - p)?);
    c.eq(&right, &right.grade_project(q - p)?);
    c.eq(&left, &c.duality.left_contract_homogeneous(&phi, p, &x, q)?);
    c.eq(&right, &c.duality.right_contract_homogeneous(&x, q, &phi, p)?);
    Ok(())
}

fn contrhomogmultiv(c: &mut Ctx) -> Result<()> {
    let (p, q) = c.grades_gt();
    let phi: Multiform = c.homogeneous(p);
    let x: Multivector = c.homogeneous(q);
    c.eq_zero(&c.duality.left_contract_mv(&phi, &x)?);
    c.eq_zero(&c.duality.right_contract_mv(&x, &phi)?);
    Ok(())
}

fn contrhomogmultif0(c: &mut Ctx) -> Result<()> {
    let (p, q) = c.grades_le();
    let x: Multivector = c.homogeneous(p);
    let phi: Multiform = c.homogeneous(q);
    let left = c.duality.left_contract_mf(&x, &phi)?;
    let right = c.duality.right_contract_mf(&phi, &x)?;
    c.eq(&left, &left.grade_project(q - p)?);
    c.eq(&right, &right.grade_project(q - p)?);
    c.eq(&left, &c.duality.left_contract_homogeneous(&x, p, &phi, q)?);
    c.eq(&right, &c.duality.right_contract_homogeneous(&phi, q, &x, p)?);
    Ok(())
}

fn contrhomogmultif(c: &mut Ctx) -> Result<()> {
    let (p, q) = c.grades_gt();
    let x: Multivector = c.homogeneous(p);
    let phi: Multiform = c.homogeneous(q);
    c.eq_zero(&c.duality.left_contract_mf(&x, &phi)?);
    c.eq_zero(&c.duality.right_contract_mf(&phi, &x)?);
    Ok(())
}

fn contrformmultivectors(c: &mut Ctx) -> Result<()> {
    let omega = c.form();
    let (x, y) = (c.mv(), c.mv());
    let d = c.duality;
    let lhs = d.left_contract_mv(&omega, &x.wedge(&y)?)?;
    let rhs = d.left_contract_mv(&omega, &x)?.wedge(&y)?
        + x.grade_involution().wedge(&d.left_contract_mv(&omega, &y)?)?;
    c.eq(&lhs, &rhs);
    Ok(())
}

fn contrvectormultiforms(c: &mut Ctx) -> Result<()> {
    let v = c.vector();
    let (phi, psi) = (c.mf(), c.mf());
    let d = c.duality;
    let lhs = d.left_contract_mf(&v, &phi.wedge(&psi)?)?;
    let rhs = d.left_contract_mf(&v, &phi)?.wedge(&psi)?
        + phi.grade_involution().wedge(&d.left_contract_mf(&v, &psi)?)?;
    c.eq(&lhs, &rhs);
    Ok(())
}

fn dcvectors(c: &mut Ctx) -> Result<()> {
    let (phi, psi, x) = (c.mf(), c.mf(), c.mv());
    let d = c.duality;
    let lhs = d.left_contract_mv(&phi, &d.left_contract_mv(&psi, &x)?)?;
    let rhs = d.left_contract_mv(&phi.wedge(&psi)?, &x)?;
    c.eq(&lhs, &rhs);
    let lhs = d.right_contract_mv(&d.right_contract_mv(&x, &phi)?, &psi)?;
    let rhs = d.right_contract_mv(&x, &phi.wedge(&psi)?)?;
    c.eq(&lhs, &rhs);
    Ok(())
}

fn dcforms(c: &mut Ctx) -> Result<()> {
    let (x, y, phi) = (c.mv(), c.mv(), c.mf());
    let d = c.duality;
    let lhs = d.left_contract_mf(&x, &d.left_contract_mf(&y, &phi)?)?;
    let rhs = d.left_contract_mf(&x.wedge(&y)?, &phi)?;
    c.eq(&lhs, &rhs);
    let lhs = d.right_contract_mf(&d.right_contract_mf(&phi, &x)?, &y)?;
    let rhs = d.right_contract_mf(&phi, &x.wedge(&y)?)?;
    c.eq(&lhs, &rhs);
    Ok(())
}

fn dcpvectors(c: &mut Ctx) -> Result<()> {
    let (phi, psi, x) = (c.mf(), c.mf(), c.mv());
    let d = c.duality;
    let lhs = pair(&psi, &d.left_contract_mv(&phi, &x)?)?;
    let rhs = pair(&phi.reversion().wedge(&psi)?, &x)?;
    c.eq_scalar(lhs, rhs);
    let lhs = pair(&phi, &d.right_contract_mv(&x, &psi)?)?;
    let rhs = pair(&phi.wedge(&psi.reversion())?, &x)?;
    c.eq_scalar(lhs, rhs);
    Ok(())
}

fn dcpforms(c: &mut Ctx) -> Result<()> {
    let (x, y, phi) = (c.mv(), c.mv(), c.mf());
    let d = c.duality;
    let lhs = pair(&d.left_contract_mf(&x, &phi)?, &y)?;
    let rhs = pair(&phi, &x.reversion().wedge(&y)?)?;
    c.eq_scalar(lhs, rhs);
    let lhs = pair(&d.right_contract_mf(&phi, &y)?, &x)?;
    let rhs = pair(&phi, &x.wedge(&y.reversion())?)?;
    c.eq_scalar(lhs, rhs);
    Ok(())
}

/// The pseudoscalars of a random basis `e'_j = M_j^k e_k` and its dual basis
/// (rows of `M^{-T}`) still pair to 1.
fn pairingofpseudo(c: &mut Ctx) -> Result<()> {
    c.eq_scalar(
        pair(&Multiform::pseudoscalar(c.dim), &Multivector::pseudoscalar(c.dim))?,
        1.0,
    );
    let m = random_invertible(c.dim, c.rng);
    let (m_inv, _) = lu_inverse(&m)?;
    let basis: Vec<Multivector> = (0..c.n)
        .map(|j| Multivector::vector(c.dim, m.row(j).transpose().as_slice()))
        .collect::<Result<_>>()?;
    let dual: Vec<Multiform> = (0..c.n)
        .map(|j| Multiform::vector(c.dim, m_inv.column(j).as_slice()))
        .collect::<Result<_>>()?;
    let lhs = pair(&wedge_all(c.dim, &dual)?, &wedge_all(c.dim, &basis)?)?;
    c.eq_scalar(lhs, 1.0);
    Ok(())
}

/// `(-1)^(μ + p_1 + ... + p_μ)` times the complementary basis blade.
fn complement<K: Kind>(c: &Ctx, subset: &[usize]) -> Result<Graded<K>> {
    let rest: Vec<usize> = (1..=c.n).filter(|j| !subset.contains(j)).collect();
    let exponent = subset.len() + subset.iter().sum::<usize>();
    let sign = if exponent % 2 == 0 { 1.0 } else { -1.0 };
    Ok(Graded::blade(c.dim, &rest)? * sign)
}

fn expansion1(c: &mut Ctx) -> Result<()> {
    let subset = c.subset();
    let e_p = Multivector::blade(c.dim, &subset)?;
    let lhs = c
        .duality
        .left_contract_mf(&e_p, &Multiform::pseudoscalar(c.dim))?;
    let rhs = complement::<dualmetric::Covariant>(c, &subset)?;
    c.eq(&lhs, &rhs);
    Ok(())
}

fn expansion2(c: &mut Ctx) -> Result<()> {
    let subset = c.subset();
    let eps_q = Multiform::blade(c.dim, &subset)?;
    let lhs = c
        .duality
        .left_contract_mv(&eps_q, &Multivector::pseudoscalar(c.dim))?;
    let rhs = complement::<dualmetric::Contravariant>(c, &subset)?;
    c.eq(&lhs, &rhs);
    Ok(())
}

/// Checks `⟨⟨x, ε^∧|, ẽ_∧| = x` and `⟨⟨φ, e_∧|, ε̃^∧| = φ`.
fn expansion_roundtrip(c: &mut Ctx, x: &Multivector, phi: &Multiform) -> Result<()> {
    let d = c.duality;
    let e = Multivector::pseudoscalar(c.dim);
    let eps = Multiform::pseudoscalar(c.dim);
    let back = d.left_contract_mv(&d.left_contract_mf(x, &eps)?, &e.reversion())?;
    c.eq(&back, x);
    let back = d.left_contract_mf(&d.left_contract_mv(phi, &e)?, &eps.reversion())?;
    c.eq(&back, phi);
    Ok(())
}

fn expansionformula0(c: &mut Ctx) -> Result<()> {
    let alpha: f64 = c.homogeneous::<dualmetric::Contravariant>(0).coeffs()[0];
    let x = Multivector::scalar(c.dim, alpha);
    let phi = Multiform::scalar(c.dim, alpha);
    expansion_roundtrip(c, &x, &phi)
}

fn expansionformula1(c: &mut Ctx) -> Result<()> {
    let (v, omega) = (c.vector(), c.form());
    expansion_roundtrip(c, &v, &omega)
}

fn expansionformula2(c: &mut Ctx) -> Result<()> {
    let p = c.grade_from(1);
    let vs = c.vectors(p);
    let ws = c.forms(p);
    let (x, phi) = (wedge_all(c.dim, &vs)?, wedge_all(c.dim, &ws)?);
    expansion_roundtrip(c, &x, &phi)
}

fn expansionformula3(c: &mut Ctx) -> Result<()> {
    let (x, phi) = (c.mv(), c.mf());
    expansion_roundtrip(c, &x, &phi)
}

/// A nonzero element, mixed or homogeneous, always has a dual canonical
/// blade pairing nonzero with it.
fn nondegeneracy(c: &mut Ctx) -> Result<()> {
    let p = c.grade_from(0);
    let x: Multivector = if p % 2 == 0 { c.mv() } else { c.homogeneous(p) };
    let phi: Multiform = c.homogeneous(p);
    for found in [
        c.duality.nondegeneracy_witness(&x).is_some(),
        c.duality.nondegeneracy_witness(&phi).is_some(),
    ] {
        c.eq_scalar(if found { 1.0 } else { 0.0 }, 1.0);
    }
    Ok(())
}
