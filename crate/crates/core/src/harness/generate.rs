//! Random instance generators.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{Rational, Relation};
use crate::smtlib::{format_rational, Model};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Lra,
    Mra,
}

impl Kind {
    pub fn logic(self) -> &'static str {
        match self {
            Kind::Lra => "QF_LRA",
            Kind::Mra => "QF_NRA",
        }
    }
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "lra" => Ok(Kind::Lra),
            "mra" => Ok(Kind::Mra),
            other => Err(format!("unknown instance kind `{other}` (expected lra or mra)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlantedParams {
    pub kind: Kind,
    pub n_vars: usize,
    pub n_clauses: usize,
    pub n_bools: usize,
    pub seed: u64,
}

impl PlantedParams {
    pub fn new(kind: Kind, n_vars: usize, n_clauses: usize, seed: u64) -> Self {
        PlantedParams { kind, n_vars, n_clauses, n_bools: 0, seed }
    }

    pub fn with_bools(mut self, n_bools: usize) -> Self {
        self.n_bools = n_bools;
        self
    }
}

/// A generated script and the hidden model it was built around.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Planted {
    pub text: String,
    pub solution: Model,
}

const PLANTED_RELATIONS: [Relation; 5] = [Relation::Le, Relation::Lt, Relation::Ge, Relation::Gt, Relation::Eq];

fn real_name(i: usize) -> String {
    format!("x{i}")
}

fn bool_name(i: usize) -> String {
    format!("p{i}")
}

fn random_coefficient<R: Rng>(rng: &mut R) -> Rational {
    let c = rng.gen_range(1..=5);
    Rational::from_integer(if rng.gen_bool(0.5) { c } else { -c })
}

/// A polynomial as `(coefficient, variable indices)` monomials.
type RawPoly = Vec<(Rational, Vec<usize>)>;

fn random_poly<R: Rng>(kind: Kind, n_vars: usize, rng: &mut R) -> RawPoly {
    let all: Vec<usize> = (0..n_vars).collect();
    let n_terms = rng.gen_range(1..=3.min(n_vars).max(1));
    let mut poly: RawPoly = Vec::new();
    match kind {
        Kind::Lra => {
            for &v in all.choose_multiple(rng, n_terms) {
                poly.push((random_coefficient(rng), vec![v]));
            }
        }
        Kind::Mra => {
            for _ in 0..n_terms {
                let degree = match rng.gen_range(0..20) {
                    0..=13 => 1,
                    14..=18 => 2,
                    _ => 3,
                }
                .min(n_vars);
                let mut vars: Vec<usize> = all.choose_multiple(rng, degree).copied().collect();
                vars.sort();
                if poly.iter().any(|(_, m)| *m == vars) {
                    continue;
                }
                poly.push((random_coefficient(rng), vars));
            }
        }
    }
    poly
}

fn eval_poly(poly: &RawPoly, vals: &[Rational]) -> Rational {
    poly.iter()
        .map(|(c, m)| m.iter().fold(c.clone(), |acc, &v| acc * &vals[v]))
        .sum()
}

fn write_poly(out: &mut String, poly: &RawPoly) {
    let term = |(c, m): &(Rational, Vec<usize>)| {
        let mut s = format!("(* {}", format_rational(c));
        for &v in m {
            let _ = write!(s, " {}", real_name(v));
        }
        s.push(')');
        s
    };
    if poly.len() == 1 {
        out.push_str(&term(&poly[0]));
    } else {
        out.push_str("(+");
        for t in poly {
            out.push(' ');
            out.push_str(&term(t));
        }
        out.push(')');
    }
}

fn small_offset<R: Rng>(rng: &mut R, positive: bool) -> Rational {
    let n = rng.gen_range(if positive { 1 } else { 0 }..=6);
    Rational::new(n, rng.gen_range(1..=2))
}

/// Right-hand side making `value rel k` true (`want = true`) or arbitrary.
fn right_side<R: Rng>(rel: Relation, value: &Rational, want: bool, rng: &mut R) -> Rational {
    if !want {
        let off = small_offset(rng, false);
        return if rng.gen_bool(0.5) { value + off } else { value - off };
    }
    match rel {
        Relation::Eq => value.clone(),
        Relation::Le => value + small_offset(rng, false),
        Relation::Lt => value + small_offset(rng, true),
        Relation::Ge => value - small_offset(rng, false),
        Relation::Gt => value - small_offset(rng, true),
        Relation::Neq => value + small_offset(rng, true),
    }
}

/// Builds a satisfiable script around a hidden model: every clause holds at
/// least one literal that the hidden model makes true.
pub fn generate_planted(params: &PlantedParams) -> Planted {
    assert!(params.n_vars >= 1 && params.n_clauses >= 1, "need at least one variable and one clause");
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let reals: Vec<Rational> = (0..params.n_vars)
        .map(|_| {
            let d = if rng.gen_bool(0.5) { 1 } else { rng.gen_range(2..=4) };
            Rational::new(rng.gen_range(-3 * d..=3 * d), d)
        })
        .collect();
    let bools: Vec<bool> = (0..params.n_bools).map(|_| rng.gen_bool(0.5)).collect();

    let mut text = String::new();
    let _ = writeln!(text, "(set-logic {})", params.kind.logic());
    for i in 0..params.n_vars {
        let _ = writeln!(text, "(declare-fun {} () Real)", real_name(i));
    }
    for i in 0..params.n_bools {
        let _ = writeln!(text, "(declare-fun {} () Bool)", bool_name(i));
    }
    for _ in 0..params.n_clauses {
        let size = rng.gen_range(1..=4);
        let planted = rng.gen_range(0..size);
        let mut lits = Vec::with_capacity(size);
        for j in 0..size {
            let want = j == planted;
            if params.n_bools > 0 && rng.gen_bool(0.2) {
                let b = rng.gen_range(0..params.n_bools);
                let positive = if want { bools[b] } else { rng.gen_bool(0.5) };
                lits.push(if positive { bool_name(b) } else { format!("(not {})", bool_name(b)) });
                continue;
            }
            let poly = random_poly(params.kind, params.n_vars, &mut rng);
            let rel = *PLANTED_RELATIONS.choose(&mut rng).unwrap();
            let k = right_side(rel, &eval_poly(&poly, &reals), want, &mut rng);
            let mut atom = format!("({} ", rel.smtlib_symbol());
            write_poly(&mut atom, &poly);
            let _ = write!(atom, " {})", format_rational(&k));
            lits.push(atom);
        }
        if lits.len() == 1 {
            let _ = writeln!(text, "(assert {})", lits[0]);
        } else {
            let _ = writeln!(text, "(assert (or {}))", lits.join(" "));
        }
    }
    text.push_str("(check-sat)\n(exit)\n");

    let solution = Model {
        reals: reals.into_iter().enumerate().map(|(i, v)| (real_name(i), v)).collect(),
        bools: bools.into_iter().enumerate().map(|(i, b)| (bool_name(i), b)).collect::<BTreeMap<_, _>>(),
    };
    Planted { text, solution }
}

/// A script with arbitrary Boolean structure over at most `n_atoms`
/// distinct leaves: declared Booleans and linear atoms over `x0` and `x1`.
/// Not necessarily satisfiable.
pub fn random_formula(seed: u64, n_atoms: usize) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_atoms = n_atoms.max(1);
    let n_bools = rng.gen_range(0..=n_atoms.min(4));
    let mut leaves: Vec<String> = (0..n_bools).map(bool_name).collect();
    while leaves.len() < n_atoms {
        let rel = *Relation::ALL.choose(&mut rng).unwrap();
        let k = Rational::new(rng.gen_range(-6..=6), rng.gen_range(1..=2));
        let lhs = match rng.gen_range(0..3) {
            0 => "x0".to_string(),
            1 => format!("(* {} x1)", format_rational(&random_coefficient(&mut rng))),
            _ => "(- x0 x1)".to_string(),
        };
        leaves.push(format!("({} {lhs} {})", rel.smtlib_symbol(), format_rational(&k)));
    }

    fn node<R: Rng>(leaves: &[String], depth: u32, rng: &mut R) -> String {
        if depth == 0 || rng.gen_bool(0.25) {
            return leaves.choose(rng).unwrap().clone();
        }
        let kids = |n: usize, rng: &mut R| -> Vec<String> { (0..n).map(|_| node(leaves, depth - 1, rng)).collect() };
        match rng.gen_range(0..8) {
            0 => format!("(not {})", kids(1, rng)[0]),
            1 => format!("(and {})", kids(rng.gen_range(2..=3), rng).join(" ")),
            2 => format!("(or {})", kids(rng.gen_range(2..=3), rng).join(" ")),
            3 => format!("(=> {})", kids(2, rng).join(" ")),
            4 => format!("(xor {})", kids(2, rng).join(" ")),
            5 => format!("(= {})", kids(2, rng).join(" ")),
            6 => format!("(ite {})", kids(3, rng).join(" ")),
            _ => format!("(distinct {})", kids(2, rng).join(" ")),
        }
    }

    let mut text = String::from("(set-logic QF_LRA)\n(declare-fun x0 () Real)\n(declare-fun x1 () Real)\n");
    for i in 0..n_bools {
        let _ = writeln!(text, "(declare-fun {} () Bool)", bool_name(i));
    }
    for _ in 0..rng.gen_range(1..=3) {
        let _ = writeln!(text, "(assert {})", node(&leaves, 3, &mut rng));
    }
    text.push_str("(check-sat)\n");
    text
}
