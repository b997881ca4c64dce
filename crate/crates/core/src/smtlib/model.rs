//! Model printing, reading and validation.

use std::fmt::Write as _;

use super::sexpr::{quote_symbol, read_all, Atom, SExpr};
use super::term::{Model, Sort, Term, Value};
use super::FrontendError;
use crate::arith::Rational;

/// Formats a rational as an SMT-LIB real term: `3`, `(- 3)`, `(/ 9 2)`, `(- (/ 9 2))`.
pub fn format_rational(v: &Rational) -> String {
    let abs = v.abs();
    let body = if abs.is_integer() {
        abs.numer().to_string()
    } else {
        format!("(/ {} {})", abs.numer(), abs.denom())
    };
    if v.is_negative() {
        format!("(- {body})")
    } else {
        body
    }
}

/// Prints `sat` followed by a model block listing the constants in `decls`
/// order. Names absent from `decls` (such as auxiliaries) are not printed.
pub fn print_model(model: &Model, decls: &[(String, Sort)]) -> String {
    let mut out = String::from("sat\n(model\n");
    for (name, sort) in decls {
        let value = match sort {
            Sort::Real => model.reals.get(name).map(format_rational),
            Sort::Bool => model.bools.get(name).map(|b| b.to_string()),
        };
        if let Some(value) = value {
            let _ = writeln!(out, "  (define-fun {} () {sort} {value})", quote_symbol(name));
        }
    }
    out.push_str(")\n");
    out
}

fn model_err(e: &SExpr, msg: impl Into<String>) -> FrontendError {
    let p = e.pos();
    FrontendError::Syntax { line: p.line, col: p.col, msg: msg.into() }
}

fn constant_value(e: &SExpr) -> Result<Value, FrontendError> {
    match e {
        SExpr::Atom(Atom::Numeral(n), _) => Ok(Value::Real(Rational::from_bigint(n.clone()))),
        SExpr::Atom(Atom::Decimal(d), _) => Ok(Value::Real(d.clone())),
        SExpr::Atom(Atom::Symbol(s), _) if s == "true" => Ok(Value::Bool(true)),
        SExpr::Atom(Atom::Symbol(s), _) if s == "false" => Ok(Value::Bool(false)),
        SExpr::List(items, _) => {
            let (head, args) = items.split_first().ok_or_else(|| model_err(e, "empty value"))?;
            let reals = args
                .iter()
                .map(|a| match constant_value(a)? {
                    Value::Real(r) => Ok(r),
                    Value::Bool(_) => Err(model_err(a, "expected a real value")),
                })
                .collect::<Result<Vec<_>, _>>()?;
            match (head.as_symbol(), reals.as_slice()) {
                (Some("-"), [x]) => Ok(Value::Real(-x)),
                (Some("/"), [x, y]) if !y.is_zero() => Ok(Value::Real(x / y)),
                _ => Err(model_err(e, "unsupported value expression")),
            }
        }
        _ => Err(model_err(e, "unsupported value")),
    }
}

/// Reads a model as printed by [`print_model`] (a leading `sat` and the
/// `model` keyword are both optional).
pub fn parse_model(text: &str) -> Result<Model, FrontendError> {
    let mut exprs = read_all(text)?;
    if exprs.first().and_then(SExpr::as_symbol) == Some("sat") {
        exprs.remove(0);
    }
    let [block] = exprs.as_slice() else {
        return Err(FrontendError::Syntax { line: 0, col: 0, msg: "expected one model block".into() });
    };
    let mut defs = block.as_list().ok_or_else(|| model_err(block, "expected a model block"))?;
    if defs.first().and_then(SExpr::as_symbol) == Some("model") {
        defs = &defs[1..];
    }
    let mut model = Model::default();
    for d in defs {
        let items = d.as_list().ok_or_else(|| model_err(d, "expected define-fun"))?;
        let [head, name, params, sort, value] = items else {
            return Err(model_err(d, "malformed define-fun"));
        };
        if head.as_symbol() != Some("define-fun") || params.as_list().is_none_or(|p| !p.is_empty()) {
            return Err(model_err(d, "expected a 0-ary define-fun"));
        }
        let name = name.as_symbol().ok_or_else(|| model_err(name, "expected a name"))?.to_string();
        match (sort.as_symbol(), constant_value(value)?) {
            (Some("Real"), Value::Real(r)) => {
                model.reals.insert(name, r);
            }
            (Some("Bool"), Value::Bool(b)) => {
                model.bools.insert(name, b);
            }
            _ => return Err(model_err(d, "value does not match the declared sort")),
        }
    }
    Ok(model)
}

/// Exact check of `original` under `model`. Missing values or ill-sorted
/// terms count as a failed validation.
pub fn validate_model(original: &Term, model: &Model) -> bool {
    matches!(model.eval(original), Ok(Value::Bool(true)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smtlib::{cnf_transform, parse_script};
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn print_format() {
        let mut m = Model::default();
        m.reals.insert("x".into(), q(9, 2));
        m.reals.insert("y".into(), q(-3, 1));
        m.reals.insert("z".into(), q(-1, 3));
        m.bools.insert("p".into(), true);
        let decls = vec![
            ("x".to_string(), Sort::Real),
            ("p".to_string(), Sort::Bool),
            ("y".to_string(), Sort::Real),
            ("z".to_string(), Sort::Real),
            ("tseitin!0".to_string(), Sort::Bool),
        ];
        let text = print_model(&m, &decls);
        assert_eq!(
            text,
            "sat\n(model\n  (define-fun x () Real (/ 9 2))\n  (define-fun p () Bool true)\n  \
             (define-fun y () Real (- 3))\n  (define-fun z () Real (- (/ 1 3)))\n)\n"
        );
        assert_eq!(parse_model(&text).unwrap(), m);
    }

    #[test]
    fn validates_the_clausal_example() {
        let p = parse_script(
            "(declare-fun p1 () Bool)(declare-fun p2 () Bool)(declare-fun x1 () Real)(declare-fun x2 () Real)\
             (declare-fun x3 () Real)(declare-fun x4 () Real)\
             (assert (and (or p1 (<= (+ x1 (* 2 x2)) 2)) (or p2 (= (+ (* 3 x3) (* 4 x4)) 2) (< (- (- x2) x3) 3))))",
        )
        .unwrap()
        .elaborate()
        .unwrap();
        let f = cnf_transform(&p).unwrap();
        let zeros = vec![Rational::zero(); 4];
        let model = f.to_model(&zeros, &[true, true]);
        assert!(validate_model(&f.original, &model));
    }

    #[test]
    fn strict_boundary_fails() {
        let p = parse_script("(declare-const x Real)(assert (> x 4))").unwrap().elaborate().unwrap();
        let mut m = Model::default();
        m.reals.insert("x".into(), q(4, 1));
        assert!(!validate_model(&p.conjunction(), &m));
        m.reals.insert("x".into(), q(9, 2));
        assert!(validate_model(&p.conjunction(), &m));
        assert!(!validate_model(&p.conjunction(), &Model::default()));
    }

    #[test]
    fn parses_foreign_model_layouts() {
        let m = parse_model("((define-fun |a b| () Real 1.5) (define-fun q () Bool false))").unwrap();
        assert_eq!(m.reals["a b"], q(3, 2));
        assert!(!m.bools["q"]);
        assert!(parse_model("(model (define-fun x () Real (/ 1 0)))").is_err());
    }

    proptest! {
        #[test]
        fn printed_models_read_back_exactly(
            vals in proptest::collection::vec((any::<i64>(), 1i64..i64::MAX), 0..8),
            bits in proptest::collection::vec(any::<bool>(), 0..4),
        ) {
            let mut m = Model::default();
            let mut decls = Vec::new();
            for (i, (n, d)) in vals.iter().enumerate() {
                let name = format!("x{i}");
                m.reals.insert(name.clone(), Rational::new(*n, *d));
                decls.push((name, Sort::Real));
            }
            for (i, b) in bits.iter().enumerate() {
                let name = format!("p{i}");
                m.bools.insert(name.clone(), *b);
                decls.push((name, Sort::Bool));
            }
            prop_assert_eq!(parse_model(&print_model(&m, &decls)).unwrap(), m);
        }
    }
}
