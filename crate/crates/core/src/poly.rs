//! Sparse multivariate polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;
use crate::scalar::{format_scalar, parse_scalar, Scalar};

/// A polynomial in `arity` variables. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    arity: usize,
    terms: BTreeMap<MultiIndex, Scalar>,
}

impl Poly {
    pub fn zero(arity: usize) -> Self {
        Poly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: Scalar) -> Self {
        Poly::monomial(arity, c, MultiIndex::zero(arity))
    }

    pub fn one(arity: usize) -> Self {
        Poly::constant(arity, Scalar::one())
    }

    /// The coordinate function x_i (0-based).
    pub fn var(arity: usize, i: usize) -> Self {
        Poly::monomial(arity, Scalar::one(), MultiIndex::unit(arity, i))
    }

    pub fn monomial(arity: usize, c: Scalar, m: MultiIndex) -> Self {
        assert_eq!(m.arity(), arity, "monomial arity");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { arity, terms }
    }

    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = (MultiIndex, Scalar)>) -> Self {
        let mut p = Poly::zero(arity);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, Scalar> {
        &self.terms
    }

    pub fn coeff(&self, m: &MultiIndex) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(MultiIndex::degree).max()
    }

    /// Lowest degree of a nonzero term; `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next().map(MultiIndex::degree)
    }

    pub fn add_term(&mut self, m: MultiIndex, c: Scalar) {
        assert_eq!(m.arity(), self.arity, "term arity");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.arity);
        }
        Poly {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.arity);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        check_arity(self.arity, point.len())?;
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exps()) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// `D^α p = (∂^{|α|} p / ∂x^α) / α!`.
    pub fn dop(&self, alpha: &MultiIndex) -> Result<Poly> {
        check_arity(self.arity, alpha.arity())?;
        let mut out = Poly::zero(self.arity);
        for (m, c) in &self.terms {
            if let Some(rest) = m.checked_sub(alpha) {
                let mut factor = BigInt::one();
                for (&g, &a) in m.exps().iter().zip(alpha.exps()) {
                    factor *= binomial_big(g, a);
                }
                out.add_term(rest, c * Scalar::from_integer(factor));
            }
        }
        Ok(out)
    }

    /// Substitutes `subs[i]` for the i-th variable. All substitutes share one arity,
    /// which becomes the arity of the result.
    pub fn compose(&self, subs: &[Poly]) -> Result<Poly> {
        check_arity(self.arity, subs.len())?;
        let target = match subs.first() {
            Some(p) => p.arity,
            None => 0,
        };
        if subs.iter().any(|p| p.arity != target) {
            return Err(Error::input("substitutes must share one arity"));
        }
        let mut powers: Vec<Vec<Poly>> = subs.iter().map(|p| vec![Poly::one(target), p.clone()]).collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = &powers[i][powers[i].len() - 1] * &subs[i];
                    powers[i].push(next);
                }
                if e > 0 {
                    t = &t * &powers[i][e];
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// `q(x) = p(x + a)`.
    pub fn shift(&self, a: &[Scalar]) -> Result<Poly> {
        check_arity(self.arity, a.len())?;
        let subs: Vec<Poly> = (0..self.arity)
            .map(|i| &Poly::var(self.arity, i) + &Poly::constant(self.arity, a[i].clone()))
            .collect();
        self.compose(&subs)
    }

    /// Parses the text format `3/2 x1^2 x2 - y3 + 1/2` against the given variable names.
    pub fn parse(text: &str, vars: &[String]) -> Result<Poly> {
        Parser::new(text, vars)?.parse()
    }

    /// Parses with the default names `{prefix}1 … {prefix}arity`.
    pub fn parse_in(text: &str, prefix: &str, arity: usize) -> Result<Poly> {
        Poly::parse(text, &var_names(prefix, arity))
    }

    pub fn to_text(&self, vars: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            if !abs.is_one() || m.is_zero() {
                factors.push(format_scalar(&abs));
            }
            for (i, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(vars[i].clone()),
                    _ => factors.push(format!("{}^{}", vars[i], e)),
                }
            }
            out.push_str(&factors.join(" "));
        }
        out
    }

    pub fn to_text_in(&self, prefix: &str) -> String {
        self.to_text(&var_names(prefix, self.arity))
    }
}

pub fn var_names(prefix: &str, arity: usize) -> Vec<String> {
    (1..=arity).map(|i| format!("{prefix}{i}")).collect()
}

fn check_arity(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::input(format!("arity mismatch: expected {expected}, got {got}")));
    }
    Ok(())
}

fn binomial_big(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text_in("x"))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.arity, rhs.arity, "poly arity");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.arity, rhs.arity, "poly arity");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Scalar::one())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.arity, rhs.arity, "poly arity");
        let mut out = Poly::zero(self.arity);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.add(m2), c1 * c2);
            }
        }
        out
    }
}

/// The map φ = (φ_1, …, φ_n) with every component in `source_arity` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMap {
    source_arity: usize,
    components: Vec<Poly>,
}

impl PolyMap {
    pub fn new(source_arity: usize, components: Vec<Poly>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::input("a map needs at least one component"));
        }
        if let Some(bad) = components.iter().find(|p| p.arity() != source_arity) {
            return Err(Error::input(format!(
                "component arity {} differs from source arity {source_arity}",
                bad.arity()
            )));
        }
        Ok(PolyMap {
            source_arity,
            components,
        })
    }

    /// Parses components written in `x1..xm`.
    pub fn parse(source_arity: usize, components: &[&str]) -> Result<Self> {
        let comps = components
            .iter()
            .map(|c| Poly::parse_in(c, "x", source_arity))
            .collect::<Result<Vec<_>>>()?;
        PolyMap::new(source_arity, comps)
    }

    pub fn source_arity(&self) -> usize {
        self.source_arity
    }

    pub fn target_arity(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn eval(&self, point: &[Scalar]) -> Result<Vec<Scalar>> {
        self.components.iter().map(|c| c.eval(point)).collect()
    }

    /// φ − b componentwise.
    pub fn recentered(&self, b: &[Scalar]) -> Result<PolyMap> {
        check_arity(self.target_arity(), b.len())?;
        let comps = self
            .components
            .iter()
            .zip(b)
            .map(|(c, bi)| c - &Poly::constant(self.source_arity, bi.clone()))
            .collect();
        PolyMap::new(self.source_arity, comps)
    }

    /// `φ^β = φ_1^{β_1} ⋯ φ_n^{β_n}`.
    pub fn pow_map(&self, beta: &MultiIndex) -> Result<Poly> {
        check_arity(self.target_arity(), beta.arity())?;
        let mut acc = Poly::one(self.source_arity);
        for (c, &e) in self.components.iter().zip(beta.exps()) {
            if e > 0 {
                acc = &acc * &c.pow(e);
            }
        }
        Ok(acc)
    }

    /// `F ∘ φ` for F in the target variables.
    pub fn pullback(&self, f: &Poly) -> Result<Poly> {
        f.compose(&self.components)
    }
}

struct Parser<'a> {
    text: &'a str,
    vars: &'a [String],
    tokens: Vec<Tok>,
    pos: usize,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Caret,
    Plus,
    Minus,
    Star,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, vars: &'a [String]) -> Result<Self> {
        let mut tokens = Vec::new();
        let chars: Vec<char> = text.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                    i += 1;
                }
                tokens.push(Tok::Num(chars[start..i].iter().collect()));
            } else if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                tokens.push(Tok::Ident(chars[start..i].iter().collect()));
            } else {
                tokens.push(match c {
                    '^' => Tok::Caret,
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    _ => return Err(Error::parse(text, format!("unexpected character `{c}`"))),
                });
                i += 1;
            }
        }
        Ok(Parser {
            text,
            vars,
            tokens,
            pos: 0,
        })
    }

    fn err(&self, msg: &str) -> Error {
        Error::parse(self.text, msg)
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn parse(mut self) -> Result<Poly> {
        let arity = self.vars.len();
        let mut out = Poly::zero(arity);
        if self.tokens.is_empty() {
            return Err(self.err("empty polynomial"));
        }
        let mut first = true;
        while self.pos < self.tokens.len() {
            let mut sign = Scalar::one();
            match self.peek() {
                Some(Tok::Plus) => self.pos += 1,
                Some(Tok::Minus) => {
                    sign = -sign;
                    self.pos += 1;
                }
                _ if first => {}
                _ => return Err(self.err("expected `+` or `-` between terms")),
            }
            first = false;
            let (m, c) = self.term(arity)?;
            out.add_term(m, c * sign);
        }
        Ok(out)
    }

    fn term(&mut self, arity: usize) -> Result<(MultiIndex, Scalar)> {
        let mut coeff = Scalar::one();
        let mut exps = vec![0u32; arity];
        let mut nfactors = 0;
        loop {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    coeff *= parse_scalar(&n)?;
                }
                Some(Tok::Ident(name)) => {
                    self.pos += 1;
                    let idx = self
                        .vars
                        .iter()
                        .position(|v| *v == name)
                        .ok_or_else(|| self.err(&format!("unknown variable `{name}`")))?;
                    let mut e = 1u32;
                    if self.peek() == Some(&Tok::Caret) {
                        self.pos += 1;
                        match self.peek().cloned() {
                            Some(Tok::Num(n)) if !n.contains('/') => {
                                self.pos += 1;
                                e = n.parse().map_err(|_| self.err("bad exponent"))?;
                            }
                            _ => return Err(self.err("expected integer exponent after `^`")),
                        }
                    }
                    exps[idx] += e;
                }
                _ => break,
            }
            nfactors += 1;
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
            }
        }
        if nfactors == 0 {
            return Err(self.err("empty term"));
        }
        Ok((MultiIndex::new(exps), coeff))
    }
}
