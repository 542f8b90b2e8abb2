//! Evaluation of kind-checked expressions against a metric space.

use std::fmt;

use dualmetric::{AlgebraError, Multiform, Multivector, MetricSpace, Result};

use crate::expr::{BinOp, Expr, UnOp};

/// Result of evaluating an expression.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Scalar(f64),
    Vector(Multivector),
    Form(Multiform),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(v) => write!(f, "{v}"),
            Value::Vector(x) => write!(f, "{x}"),
            Value::Form(phi) => write!(f, "{phi}"),
        }
    }
}

fn kind_error() -> AlgebraError {
    AlgebraError::Inconsistent("expression was not kind-checked")
}

impl Value {
    fn as_vector(&self, space: &MetricSpace) -> Result<Multivector> {
        match self {
            Value::Scalar(v) => Ok(Multivector::scalar(space.dim(), *v)),
            Value::Vector(x) => Ok(x.clone()),
            Value::Form(_) => Err(kind_error()),
        }
    }

    fn as_form(&self, space: &MetricSpace) -> Result<Multiform> {
        match self {
            Value::Scalar(v) => Ok(Multiform::scalar(space.dim(), *v)),
            Value::Form(phi) => Ok(phi.clone()),
            Value::Vector(_) => Err(kind_error()),
        }
    }

    fn map(self, on_vector: impl Fn(&Multivector) -> Multivector, on_form: impl Fn(&Multiform) -> Multiform, on_scalar: impl Fn(f64) -> f64) -> Value {
        match self {
            Value::Scalar(v) => Value::Scalar(on_scalar(v)),
            Value::Vector(x) => Value::Vector(on_vector(&x)),
            Value::Form(phi) => Value::Form(on_form(&phi)),
        }
    }
}

/// Evaluates `expr`. Call [`crate::expr::check_kinds`] first; a kind
/// violation here surfaces as an internal-inconsistency error.
pub fn evaluate(expr: &Expr, space: &MetricSpace) -> Result<Value> {
    let dim = space.dim();
    Ok(match expr {
        Expr::Num(v) => Value::Scalar(*v),
        Expr::Basis(k) => Value::Vector(Multivector::blade(dim, &[*k])?),
        Expr::Dual(k) => Value::Form(Multiform::blade(dim, &[*k])?),
        Expr::PseudoI => Value::Vector(Multivector::pseudoscalar(dim)),
        Expr::PseudoJ => Value::Form(Multiform::pseudoscalar(dim)),
        Expr::Unary(op, inner) => {
            let v = evaluate(inner, space)?;
            match op {
                UnOp::Neg => v.map(|x| -x, |x| -x, |s| -s),
                UnOp::Rev => v.map(|x| x.reversion(), |x| x.reversion(), |s| s),
                UnOp::Inv => v.map(|x| x.grade_involution(), |x| x.grade_involution(), |s| s),
                UnOp::G => match v {
                    Value::Scalar(s) => Value::Scalar(s),
                    Value::Vector(x) => Value::Form(space.extensor().extend(&x)?),
                    Value::Form(_) => return Err(kind_error()),
                },
                UnOp::GInv => match v {
                    Value::Scalar(s) => Value::Scalar(s),
                    Value::Form(phi) => Value::Vector(space.extensor().extend_inverse(&phi)?),
                    Value::Vector(_) => return Err(kind_error()),
                },
            }
        }
        Expr::Pair(a, b) => {
            let (a, b) = (evaluate(a, space)?, evaluate(b, space)?);
            let (phi, x) = match (&a, &b) {
                (Value::Vector(_), _) | (_, Value::Form(_)) => (b.as_form(space)?, a.as_vector(space)?),
                _ => (a.as_form(space)?, b.as_vector(space)?),
            };
            Value::Scalar(space.duality().pairing(&phi, &x)?)
        }
        Expr::Binary(op, a, b) => binary(*op, evaluate(a, space)?, evaluate(b, space)?, space)?,
    })
}

fn binary(op: BinOp, a: Value, b: Value, space: &MetricSpace) -> Result<Value> {
    use Value::*;
    let d = space.duality();
    Ok(match op {
        BinOp::Mul => match (a, b) {
            (Scalar(s), Scalar(t)) => Scalar(s * t),
            (Scalar(s), v) | (v, Scalar(s)) => v.map(|x| x * s, |x| x * s, |t| t * s),
            _ => return Err(kind_error()),
        },
        BinOp::Add | BinOp::Sub | BinOp::Wedge => {
            let combine_v = |x: Multivector, y: Multivector| -> Result<Multivector> {
                match op {
                    BinOp::Add => x.checked_add(&y),
                    BinOp::Sub => x.checked_sub(&y),
                    _ => x.wedge(&y),
                }
            };
            let combine_f = |x: Multiform, y: Multiform| -> Result<Multiform> {
                match op {
                    BinOp::Add => x.checked_add(&y),
                    BinOp::Sub => x.checked_sub(&y),
                    _ => x.wedge(&y),
                }
            };
            match (&a, &b) {
                (Scalar(s), Scalar(t)) => Scalar(match op {
                    BinOp::Add => s + t,
                    BinOp::Sub => s - t,
                    _ => s * t,
                }),
                (Form(_), _) | (_, Form(_)) => Form(combine_f(a.as_form(space)?, b.as_form(space)?)?),
                _ => Vector(combine_v(a.as_vector(space)?, b.as_vector(space)?)?),
            }
        }
        BinOp::Dot => match (&a, &b) {
            (Form(_), _) | (_, Form(_)) => Scalar(space.scalar_product_mf(&a.as_form(space)?, &b.as_form(space)?)?),
            _ => Scalar(space.scalar_product_mv(&a.as_vector(space)?, &b.as_vector(space)?)?),
        },
        BinOp::LeftContract => match (&a, &b) {
            (Form(phi), Vector(x)) => Vector(d.left_contract_mv(phi, x)?),
            (Vector(x), Form(phi)) => Form(d.left_contract_mf(x, phi)?),
            (Form(_), _) | (_, Form(_)) => Form(space.lcontract_mf(&a.as_form(space)?, &b.as_form(space)?)?),
            (Scalar(s), Scalar(t)) => Scalar(s * t),
            _ => Vector(space.lcontract_mv(&a.as_vector(space)?, &b.as_vector(space)?)?),
        },
        BinOp::RightContract => match (&a, &b) {
            (Vector(x), Form(phi)) => Vector(d.right_contract_mv(x, phi)?),
            (Form(phi), Vector(x)) => Form(d.right_contract_mf(phi, x)?),
            (Form(_), _) | (_, Form(_)) => Form(space.rcontract_mf(&a.as_form(space)?, &b.as_form(space)?)?),
            (Scalar(s), Scalar(t)) => Scalar(s * t),
            _ => Vector(space.rcontract_mv(&a.as_vector(space)?, &b.as_vector(space)?)?),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{check_kinds, parse_expression};
    use dualmetric::Dimension;
    use nalgebra::DMatrix;

    fn diag23() -> MetricSpace {
        MetricSpace::from_matrix(DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 3.0])).unwrap()
    }

    fn run(text: &str, space: &MetricSpace) -> String {
        let e = parse_expression(text).unwrap();
        check_kinds(&e, space.dim().get()).unwrap();
        evaluate(&e, space).unwrap().to_string()
    }

    #[test]
    fn worked_examples() {
        let s = diag23();
        assert_eq!(run("e1 . e1", &s), "2");
        assert_eq!(run("pair(J, I)", &s), "1");
        assert_eq!(run("ginv(d1)", &s), "0.5*e1");
    }

    #[test]
    fn contractions_dispatch_on_kinds() {
        let s = diag23();
        assert_eq!(run("d1 _| (e1 ^ e2)", &s), "e2");
        assert_eq!(run("e1 _| (e1 ^ e2)", &s), "2*e2");
        assert_eq!(run("d1 _| (d1 ^ d2)", &s), "0.5*d2");
        assert_eq!(run("(e1 ^ e2) |_ d2", &s), "e1");
        assert_eq!(run("e1 _| (d1 ^ d2)", &s), "d2");
        assert_eq!(run("(d1 ^ d2) |_ e2", &s), "d1");
        assert_eq!(run("(e1 ^ e2) . (e1 ^ e2)", &s), "6");
        assert_eq!(run("g(e1 ^ e2)", &s), "6*d1^d2");
    }

    #[test]
    fn scalars_mix_with_either_kind() {
        let s = MetricSpace::euclidean(Dimension::new(3).unwrap());
        assert_eq!(run("2 * e1 + 1", &s), "1 + 2*e1");
        assert_eq!(run("3 - d2", &s), "3 - d2");
        assert_eq!(run("pair(2, 3)", &s), "6");
        assert_eq!(run("pair(e1 + 1, d1)", &s), "1");
        assert_eq!(run("-rev(e1 ^ e2)", &s), "e1^e2");
        assert_eq!(run("inv(e1 + e1 ^ e2)", &s), "-e1 + e1^e2");
        assert_eq!(run("2 . 3", &s), "6");
    }
}
