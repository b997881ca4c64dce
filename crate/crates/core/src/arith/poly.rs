//! Multilinear polynomials over real variables.

use std::collections::BTreeMap;
use std::fmt;

use super::Rational;

/// Index of a real-valued variable. Order is fixed when the formula is built.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub u32);

impl VarId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// A product of distinct variables; the empty product is the constant monomial.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<VarId>);

impl Monomial {
    pub fn constant() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(x: VarId) -> Self {
        Monomial(vec![x])
    }

    /// Builds a monomial from arbitrary variables. Returns the first repeated
    /// variable as the error if the product is not multilinear.
    pub fn from_vars(mut vars: Vec<VarId>) -> Result<Self, VarId> {
        vars.sort_unstable();
        if let Some(w) = vars.windows(2).find(|w| w[0] == w[1]) {
            return Err(w[0]);
        }
        Ok(Monomial(vars))
    }

    pub fn vars(&self) -> &[VarId] {
        &self.0
    }

    pub fn is_constant(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, x: VarId) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    /// Product of two monomials; `Err(v)` if `v` would get exponent 2.
    pub fn mul(&self, other: &Monomial) -> Result<Monomial, VarId> {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => return Err(self.0[i]),
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Ok(Monomial(out))
    }

    pub fn eval(&self, vals: &[Rational]) -> Rational {
        let mut it = self.0.iter();
        match it.next() {
            None => Rational::one(),
            Some(first) => it.fold(vals[first.index()].clone(), |acc, v| acc * &vals[v.index()]),
        }
    }
}

/// A linear combination of multilinear monomials. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(Monomial::constant(), c);
        p
    }

    pub fn var(x: VarId) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(Monomial::var(x), Rational::one());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Monomial::constant()).cloned().unwrap_or_default()
    }

    /// Drops the constant monomial, returning its coefficient.
    pub fn take_constant(&mut self) -> Rational {
        self.terms.remove(&Monomial::constant()).unwrap_or_default()
    }

    pub fn is_linear(&self) -> bool {
        self.terms.keys().all(|m| m.degree() <= 1)
    }

    /// Sorted, deduplicated variables occurring in the polynomial.
    pub fn vars(&self) -> Vec<VarId> {
        let mut vs: Vec<VarId> = self.terms.keys().flat_map(|m| m.vars().iter().copied()).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    /// Product of two polynomials; `Err(v)` if some variable `v` would be squared.
    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial, VarId> {
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2)?, c1 * c2);
            }
        }
        Ok(out)
    }

    /// Exact value under `vals`, indexed by [`VarId`].
    pub fn eval(&self, vals: &[Rational]) -> Rational {
        self.terms.iter().map(|(m, c)| c * m.eval(vals)).sum()
    }

    /// Restricts the polynomial to the affine function `a·v + b` of `x`,
    /// reading every other variable from `vals` (the entry for `x` is ignored).
    pub fn linearize(&self, x: VarId, vals: &[Rational]) -> (Rational, Rational) {
        let mut a = Rational::zero();
        let mut b = Rational::zero();
        for (m, c) in &self.terms {
            let mut prod = c.clone();
            let mut has_x = false;
            for v in m.vars() {
                if *v == x {
                    has_x = true;
                } else {
                    prod = prod * &vals[v.index()];
                }
            }
            if has_x {
                a += &prod;
            } else {
                b += &prod;
            }
        }
        (a, b)
    }
}
