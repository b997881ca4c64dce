//! Commands of the supported SMT-LIB2 subset and their elaboration into
//! sorted terms.

use std::collections::HashMap;

use super::sexpr::{read_all, Atom, SExpr};
use super::term::{Sort, Term};
use super::FrontendError;
use crate::arith::{Rational, Relation};

pub const SUPPORTED_LOGICS: [&str; 2] = ["QF_LRA", "QF_NRA"];

#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    SetLogic(String),
    DeclareConst { name: String, sort: Sort },
    /// 0-ary `define-fun`, inlined at use sites.
    DefineFun { name: String, sort: Sort, body: SExpr },
    Assert(SExpr),
    CheckSat,
    GetModel,
    Exit,
    /// `set-info` / `set-option`; kept for fidelity, otherwise ignored.
    Meta(String),
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Script {
    pub commands: Vec<Command>,
}

/// Declared constants and sort-checked assertions of a script.
#[derive(Clone, Debug, PartialEq)]
pub struct Problem {
    pub logic: Option<String>,
    /// Declaration order is the variable order used everywhere downstream.
    pub decls: Vec<(String, Sort)>,
    pub assertions: Vec<Term>,
}

impl Problem {
    /// Conjunction of all assertions.
    pub fn conjunction(&self) -> Term {
        Term::And(self.assertions.clone())
    }
}

fn syntax(e: &SExpr, msg: impl Into<String>) -> FrontendError {
    let p = e.pos();
    FrontendError::Syntax { line: p.line, col: p.col, msg: msg.into() }
}

fn parse_sort(e: &SExpr) -> Result<Sort, FrontendError> {
    match e.as_symbol() {
        Some("Real") => Ok(Sort::Real),
        Some("Bool") => Ok(Sort::Bool),
        Some(other) => Err(FrontendError::Unsupported(format!("sort {other}"))),
        None => Err(FrontendError::Unsupported("parametric sorts".to_string())),
    }
}

fn symbol_arg<'a>(e: &'a SExpr, what: &str) -> Result<&'a str, FrontendError> {
    e.as_symbol().ok_or_else(|| syntax(e, format!("expected {what}")))
}

fn parse_command(e: &SExpr) -> Result<Command, FrontendError> {
    let items = e.as_list().ok_or_else(|| syntax(e, "expected a command"))?;
    let (head, args) = items.split_first().ok_or_else(|| syntax(e, "empty command"))?;
    let name = symbol_arg(head, "command name")?;
    let arity = |n: usize| -> Result<(), FrontendError> {
        if args.len() == n {
            Ok(())
        } else {
            Err(syntax(e, format!("`{name}` expects {n} argument(s), got {}", args.len())))
        }
    };
    match name {
        "set-logic" => {
            arity(1)?;
            let logic = symbol_arg(&args[0], "logic name")?;
            if !SUPPORTED_LOGICS.contains(&logic) {
                return Err(FrontendError::Unsupported(format!("logic {logic}")));
            }
            Ok(Command::SetLogic(logic.to_string()))
        }
        "declare-const" => {
            arity(2)?;
            Ok(Command::DeclareConst {
                name: symbol_arg(&args[0], "constant name")?.to_string(),
                sort: parse_sort(&args[1])?,
            })
        }
        "declare-fun" => {
            arity(3)?;
            let params = args[1].as_list().ok_or_else(|| syntax(&args[1], "expected parameter sorts"))?;
            if !params.is_empty() {
                return Err(FrontendError::Unsupported("uninterpreted functions".to_string()));
            }
            Ok(Command::DeclareConst {
                name: symbol_arg(&args[0], "function name")?.to_string(),
                sort: parse_sort(&args[2])?,
            })
        }
        "define-fun" => {
            arity(4)?;
            let params = args[1].as_list().ok_or_else(|| syntax(&args[1], "expected parameter list"))?;
            if !params.is_empty() {
                return Err(FrontendError::Unsupported("define-fun with parameters".to_string()));
            }
            Ok(Command::DefineFun {
                name: symbol_arg(&args[0], "function name")?.to_string(),
                sort: parse_sort(&args[2])?,
                body: args[3].clone(),
            })
        }
        "assert" => {
            arity(1)?;
            Ok(Command::Assert(args[0].clone()))
        }
        "check-sat" => {
            arity(0)?;
            Ok(Command::CheckSat)
        }
        "get-model" => {
            arity(0)?;
            Ok(Command::GetModel)
        }
        "exit" => {
            arity(0)?;
            Ok(Command::Exit)
        }
        "set-info" | "set-option" => Ok(Command::Meta(name.to_string())),
        other => Err(FrontendError::Unsupported(format!("command {other}"))),
    }
}

/// Reads a script. Commands outside the supported subset are rejected.
pub fn parse_script(text: &str) -> Result<Script, FrontendError> {
    let commands = read_all(text)?.iter().map(parse_command).collect::<Result<Vec<_>, _>>()?;
    Ok(Script { commands })
}

/// Reads a script from raw bytes, which must be UTF-8.
pub fn parse_script_bytes(bytes: &[u8]) -> Result<Script, FrontendError> {
    let text = std::str::from_utf8(bytes).map_err(|e| FrontendError::Syntax {
        line: 0,
        col: 0,
        msg: format!("input is not UTF-8: {e}"),
    })?;
    parse_script(text)
}

enum Symbol {
    Const(Sort),
    Macro(Term),
}

#[derive(Default)]
struct Elaborator {
    globals: HashMap<String, Symbol>,
    scopes: Vec<HashMap<String, Sort>>,
}

impl Elaborator {
    fn symbol(&self, e: &SExpr, name: &str) -> Result<Term, FrontendError> {
        for scope in self.scopes.iter().rev() {
            if let Some(sort) = scope.get(name) {
                return Ok(Term::Local(name.to_string(), *sort));
            }
        }
        match self.globals.get(name) {
            Some(Symbol::Const(sort)) => Ok(Term::Var(name.to_string(), *sort)),
            Some(Symbol::Macro(t)) => Ok(t.clone()),
            None => match name {
                "true" => Ok(Term::Bool(true)),
                "false" => Ok(Term::Bool(false)),
                _ => Err(FrontendError::UndeclaredSymbol {
                    name: name.to_string(),
                    line: e.pos().line,
                    col: e.pos().col,
                }),
            },
        }
    }

    fn term(&mut self, e: &SExpr) -> Result<Term, FrontendError> {
        match e {
            SExpr::Atom(Atom::Numeral(n), _) => Ok(Term::Num(Rational::from_bigint(n.clone()))),
            SExpr::Atom(Atom::Decimal(d), _) => Ok(Term::Num(d.clone())),
            SExpr::Atom(Atom::Symbol(s), _) => self.symbol(e, s),
            SExpr::Atom(_, _) => Err(syntax(e, "expected a term")),
            SExpr::List(items, _) => {
                let (head, args) = items.split_first().ok_or_else(|| syntax(e, "empty application"))?;
                let Some(op) = head.as_symbol() else {
                    return Err(FrontendError::Unsupported("indexed or higher-order application".into()));
                };
                match op {
                    "let" => return self.let_term(e, args),
                    "!" => {
                        let body = args.first().ok_or_else(|| syntax(e, "empty annotation"))?;
                        return self.term(body);
                    }
                    "forall" | "exists" => return Err(FrontendError::Unsupported("quantifiers".into())),
                    "_" => return Err(FrontendError::Unsupported("indexed identifiers".into())),
                    _ => {}
                }
                let args = args.iter().map(|a| self.term(a)).collect::<Result<Vec<_>, _>>()?;
                self.apply(e, op, args)
            }
        }
    }

    fn let_term(&mut self, e: &SExpr, args: &[SExpr]) -> Result<Term, FrontendError> {
        if args.len() != 2 {
            return Err(syntax(e, "`let` expects bindings and a body"));
        }
        let binds = args[0].as_list().ok_or_else(|| syntax(&args[0], "expected let bindings"))?;
        let mut bindings = Vec::with_capacity(binds.len());
        let mut scope = HashMap::new();
        for b in binds {
            let pair = b.as_list().filter(|p| p.len() == 2).ok_or_else(|| syntax(b, "malformed binding"))?;
            let name = symbol_arg(&pair[0], "bound name")?;
            let value = self.term(&pair[1])?;
            if scope.insert(name.to_string(), value.sort()).is_some() {
                return Err(syntax(b, format!("`{name}` bound twice")));
            }
            bindings.push((name.to_string(), value));
        }
        self.scopes.push(scope);
        let body = self.term(&args[1]);
        self.scopes.pop();
        Ok(Term::Let(bindings, Box::new(body?)))
    }

    fn apply(&self, e: &SExpr, op: &str, args: Vec<Term>) -> Result<Term, FrontendError> {
        let sort_err = |msg: String| FrontendError::Sort { msg, line: e.pos().line, col: e.pos().col };
        let need = |min: usize| -> Result<(), FrontendError> {
            if args.len() < min {
                Err(sort_err(format!("`{op}` expects at least {min} argument(s)")))
            } else {
                Ok(())
            }
        };
        let all_sort = |s: Sort| -> Result<(), FrontendError> {
            match args.iter().find(|a| a.sort() != s) {
                Some(_) => Err(sort_err(format!("`{op}` expects {s} arguments"))),
                None => Ok(()),
            }
        };
        let same_sort = || -> Result<(), FrontendError> {
            let s = args[0].sort();
            all_sort(s)
        };
        Ok(match op {
            "not" => {
                if args.len() != 1 {
                    return Err(sort_err("`not` expects one argument".into()));
                }
                all_sort(Sort::Bool)?;
                Term::Not(Box::new(args.into_iter().next().unwrap()))
            }
            "and" | "or" | "xor" | "=>" => {
                need(if op == "=>" { 2 } else { 1 })?;
                all_sort(Sort::Bool)?;
                match op {
                    "and" => Term::And(args),
                    "or" => Term::Or(args),
                    "xor" => Term::Xor(args),
                    _ => Term::Implies(args),
                }
            }
            "ite" => {
                if args.len() != 3 {
                    return Err(sort_err("`ite` expects three arguments".into()));
                }
                if args[0].sort() != Sort::Bool || args[1].sort() != args[2].sort() {
                    return Err(sort_err("ill-sorted `ite`".into()));
                }
                let mut it = args.into_iter();
                let (c, t, f) = (it.next().unwrap(), it.next().unwrap(), it.next().unwrap());
                Term::Ite(Box::new(c), Box::new(t), Box::new(f))
            }
            "=" | "distinct" => {
                need(2)?;
                same_sort()?;
                if op == "=" {
                    Term::Eq(args)
                } else {
                    Term::Distinct(args)
                }
            }
            "<" | "<=" | ">" | ">=" => {
                need(2)?;
                all_sort(Sort::Real)?;
                let rel = match op {
                    "<" => Relation::Lt,
                    "<=" => Relation::Le,
                    ">" => Relation::Gt,
                    _ => Relation::Ge,
                };
                Term::Cmp(rel, args)
            }
            "+" | "*" | "-" | "/" => {
                need(if op == "/" { 2 } else { 1 })?;
                all_sort(Sort::Real)?;
                match op {
                    "+" => Term::Add(args),
                    "*" => Term::Mul(args),
                    "-" if args.len() == 1 => Term::Neg(Box::new(args.into_iter().next().unwrap())),
                    "-" => Term::Sub(args),
                    _ => Term::Div(args),
                }
            }
            "to_real" | "to_int" | "is_int" | "div" | "mod" | "abs" => {
                return Err(FrontendError::Unsupported(format!("integer operator {op}")))
            }
            name => {
                return match self.globals.get(name) {
                    Some(_) => Err(sort_err(format!("`{name}` is a constant, not a function"))),
                    None => Err(FrontendError::Unsupported(format!("function {name}"))),
                }
            }
        })
    }
}

impl Script {
    /// Resolves symbols, inlines macros and checks sorts.
    pub fn elaborate(&self) -> Result<Problem, FrontendError> {
        let mut el = Elaborator::default();
        let mut logic = None;
        let mut decls = Vec::new();
        let mut assertions = Vec::new();
        for cmd in &self.commands {
            match cmd {
                Command::SetLogic(l) => {
                    if logic.replace(l.clone()).is_some() {
                        return Err(FrontendError::Unsupported("repeated set-logic".into()));
                    }
                }
                Command::DeclareConst { name, sort } => {
                    if el.globals.contains_key(name) || name == "true" || name == "false" {
                        return Err(FrontendError::Redeclared(name.clone()));
                    }
                    el.globals.insert(name.clone(), Symbol::Const(*sort));
                    decls.push((name.clone(), *sort));
                }
                Command::DefineFun { name, sort, body } => {
                    if el.globals.contains_key(name) {
                        return Err(FrontendError::Redeclared(name.clone()));
                    }
                    let t = el.term(body)?;
                    if t.sort() != *sort {
                        return Err(syntax(body, format!("body of `{name}` is not {sort}")));
                    }
                    el.globals.insert(name.clone(), Symbol::Macro(t));
                }
                Command::Assert(body) => {
                    let t = el.term(body)?;
                    if t.sort() != Sort::Bool {
                        return Err(syntax(body, "asserted term is not Bool"));
                    }
                    assertions.push(t);
                }
                Command::CheckSat | Command::GetModel | Command::Exit | Command::Meta(_) => {}
            }
        }
        Ok(Problem { logic, decls, assertions })
    }
}
