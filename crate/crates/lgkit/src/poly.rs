//! Polynomial data model, text parser, and canonical serialization.
//!
//! A [`Polynomial`] is a sum of [`Monomial`]s over variables `x1..xN` with
//! exact rational coefficients. Terms are kept in a canonical order
//! (descending lexicographic on exponent vectors) with distinct exponent
//! vectors, so structural equality is semantic equality.
//!
//! Grammar accepted by [`Polynomial::parse`]:
//!
//! ```text
//! poly   := term ("+" term)* ;
//! term   := (coeff "*")? factor ("*" factor)* | coeff ;
//! factor := var ("^" uint)? ;
//! var    := "x" uint | "x" | "y" | "z" | "w" ;
//! coeff  := int | int "/" uint ;
//! ```
//!
//! Whitespace is insignificant. `x`, `y`, `z`, `w` are aliases for
//! `x1..x4`; mixing the two naming styles in one input is rejected.
//! Repeated exponent vectors are merged (and dropped if the coefficients
//! cancel); a surviving constant term or an everywhere-zero result is an
//! error.

use std::cmp::Ordering;
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar used throughout the crate.
pub type Rat = BigRational;

pub(crate) fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical display form for rationals: `p` or `p/q`, lowest terms, q > 0.
pub fn rat_string(r: &Rat) -> String {
    r.to_string()
}

/// Compare exponent vectors lexicographically.
pub fn lex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    a.cmp(b)
}

/// A single term: exponent vector plus a nonzero rational coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub exponents: Vec<u32>,
    pub coefficient: Rat,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>, coefficient: Rat) -> Self {
        Monomial {
            exponents,
            coefficient,
        }
    }

    /// The unit monomial `1` in `num_vars` variables.
    pub fn unit(num_vars: usize) -> Self {
        Monomial::new(vec![0; num_vars], Rat::one())
    }

    pub fn is_constant(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// Indices (0-based) of variables with nonzero exponent.
    pub fn support(&self) -> Vec<usize> {
        self.exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(j, _)| j)
            .collect()
    }

    /// Weighted degree `sum_j m_j q_j`.
    pub fn degree(&self, weights: &[Rat]) -> Rat {
        exps_degree(&self.exponents, weights)
    }
}

pub(crate) fn exps_degree(exponents: &[u32], weights: &[Rat]) -> Rat {
    let mut d = Rat::zero();
    for (e, q) in exponents.iter().zip(weights) {
        if *e > 0 {
            d += q * Rat::from(BigInt::from(*e));
        }
    }
    d
}

fn write_term(f: &mut fmt::Formatter<'_>, exponents: &[u32], coefficient: &Rat) -> fmt::Result {
    let mut factors: Vec<String> = Vec::new();
    for (j, &e) in exponents.iter().enumerate() {
        match e {
            0 => {}
            1 => factors.push(format!("x{}", j + 1)),
            _ => factors.push(format!("x{}^{}", j + 1, e)),
        }
    }
    if factors.is_empty() {
        return write!(f, "{}", rat_string(coefficient));
    }
    if !coefficient.is_one() {
        write!(f, "{}*", rat_string(coefficient))?;
    }
    write!(f, "{}", factors.join("*"))
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(f, &self.exponents, &self.coefficient)
    }
}

/// The exponent matrix of a polynomial: row i is the exponent vector of
/// term i in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl ExponentMatrix {
    pub fn from_rows(rows: Vec<Vec<u32>>, cols: usize) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for r in &rows {
            assert_eq!(r.len(), cols, "exponent row length mismatch");
            entries.extend_from_slice(r);
        }
        ExponentMatrix {
            rows: n,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> ExponentMatrix {
        let mut entries = vec![0u32; self.rows * self.cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                entries[j * self.rows + i] = self.get(i, j);
            }
        }
        ExponentMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }
}

/// A polynomial in canonical form.
///
/// Invariants for parsed polynomials: at least one term, no constant term,
/// distinct exponent vectors, nonzero coefficients, terms sorted in
/// descending lexicographic order. Internal arithmetic (e.g. [`crate::jacobian::hessian`])
/// may produce values carrying a constant term or no terms at all; those
/// never come out of [`Polynomial::parse`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    num_vars: usize,
    terms: Vec<Monomial>,
}

impl Polynomial {
    /// Canonicalize and validate: merges duplicate exponent vectors, drops
    /// cancelled terms, rejects empty and constant results.
    pub fn new(num_vars: usize, terms: Vec<Monomial>) -> Result<Self> {
        let p = Self::from_terms_unchecked(num_vars, terms);
        if p.terms.is_empty() {
            return Err(Error::Invalid("zero polynomial".into()));
        }
        if let Some(t) = p.terms.iter().find(|t| t.is_constant()) {
            return Err(Error::Invalid(format!(
                "constant term present (coefficient {})",
                rat_string(&t.coefficient)
            )));
        }
        Ok(p)
    }

    /// Canonicalize without the no-constant/nonzero validation.
    pub(crate) fn from_terms_unchecked(num_vars: usize, terms: Vec<Monomial>) -> Self {
        let mut merged: Vec<Monomial> = Vec::with_capacity(terms.len());
        let mut sorted = terms;
        for t in sorted.iter_mut() {
            assert_eq!(t.exponents.len(), num_vars, "monomial width mismatch");
        }
        sorted.sort_by(|a, b| lex_cmp(&b.exponents, &a.exponents));
        for t in sorted {
            match merged.last_mut() {
                Some(last) if last.exponents == t.exponents => {
                    last.coefficient += t.coefficient;
                }
                _ => merged.push(t),
            }
        }
        merged.retain(|t| !t.coefficient.is_zero());
        Polynomial {
            num_vars,
            terms: merged,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Parser::new(text).parse()
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn exponent_matrix(&self) -> ExponentMatrix {
        ExponentMatrix::from_rows(
            self.terms.iter().map(|t| t.exponents.clone()).collect(),
            self.num_vars,
        )
    }

    /// Build a coefficient-one polynomial from exponent rows.
    pub fn from_exponent_rows(rows: Vec<Vec<u32>>, num_vars: usize) -> Result<Self> {
        Polynomial::new(
            num_vars,
            rows.into_iter()
                .map(|r| Monomial::new(r, Rat::one()))
                .collect(),
        )
    }

    pub(crate) fn zero(num_vars: usize) -> Self {
        Polynomial {
            num_vars,
            terms: Vec::new(),
        }
    }

    pub(crate) fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.num_vars, other.num_vars);
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Polynomial::from_terms_unchecked(self.num_vars, terms)
    }

    pub(crate) fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.num_vars, other.num_vars);
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                let exps: Vec<u32> = a
                    .exponents
                    .iter()
                    .zip(&b.exponents)
                    .map(|(x, y)| x + y)
                    .collect();
                terms.push(Monomial::new(exps, &a.coefficient * &b.coefficient));
            }
        }
        Polynomial::from_terms_unchecked(self.num_vars, terms)
    }

    pub(crate) fn neg(&self) -> Polynomial {
        Polynomial {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|t| Monomial::new(t.exponents.clone(), -t.coefficient.clone()))
                .collect(),
        }
    }

    pub(crate) fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    /// d/dx_j, exact.
    pub fn partial_derivative(&self, j: usize) -> Polynomial {
        let mut terms = Vec::new();
        for t in &self.terms {
            let e = t.exponents[j];
            if e == 0 {
                continue;
            }
            let mut exps = t.exponents.clone();
            exps[j] = e - 1;
            terms.push(Monomial::new(
                exps,
                &t.coefficient * Rat::from(BigInt::from(e)),
            ));
        }
        Polynomial::from_terms_unchecked(self.num_vars, terms)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write_term(f, &t.exponents, &t.coefficient)?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Polynomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Polynomial::parse(s)
    }
}

const MAX_VAR_INDEX: u32 = 1024;
const MAX_EXPONENT: u32 = 1 << 20;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    indexed_at: Option<usize>,
    lettered_at: Option<usize>,
    max_var: u32,
}

struct RawTerm {
    // (1-based variable index, exponent) pairs, unreduced
    factors: Vec<(u32, u32)>,
    coefficient: Rat,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
            indexed_at: None,
            lettered_at: None,
            max_var: 0,
        }
    }

    fn err<T>(&self, pos: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn parse(&mut self) -> Result<Polynomial> {
        let mut raw_terms = Vec::new();
        self.skip_ws();
        if self.pos == self.src.len() {
            return self.err(0, "empty input");
        }
        loop {
            raw_terms.push(self.parse_term()?);
            self.skip_ws();
            if !self.eat(b'+') {
                break;
            }
            self.skip_ws();
        }
        if self.pos != self.src.len() {
            return self.err(
                self.pos,
                format!("unexpected character '{}'", self.src[self.pos] as char),
            );
        }
        self.build(raw_terms)
    }

    fn build(&self, raw_terms: Vec<RawTerm>) -> Result<Polynomial> {
        let n = self.max_var as usize;
        let mut terms = Vec::with_capacity(raw_terms.len());
        let mut constant_pos = None;
        for rt in &raw_terms {
            let mut exps = vec![0u32; n];
            for &(var, e) in &rt.factors {
                let idx = (var - 1) as usize;
                exps[idx] = exps[idx]
                    .checked_add(e)
                    .ok_or_else(|| Error::Parse {
                        pos: rt.pos,
                        message: "exponent overflow".into(),
                    })?;
            }
            if exps.iter().all(|&e| e == 0) {
                constant_pos = Some(rt.pos);
            }
            terms.push(Monomial::new(exps, rt.coefficient.clone()));
        }
        let p = Polynomial::from_terms_unchecked(n, terms);
        if let Some(t) = p.terms.iter().find(|t| t.is_constant()) {
            return self.err(
                constant_pos.unwrap_or(0),
                format!(
                    "constant term present (coefficient {})",
                    rat_string(&t.coefficient)
                ),
            );
        }
        if p.terms.is_empty() {
            return self.err(0, "zero polynomial (all terms cancelled)");
        }
        Ok(p)
    }

    fn parse_term(&mut self) -> Result<RawTerm> {
        self.skip_ws();
        let pos = self.pos;
        let mut coefficient = Rat::one();
        let mut factors = Vec::new();
        let starts_coeff = matches!(self.peek(), Some(c) if c == b'-' || c.is_ascii_digit());
        if starts_coeff {
            coefficient = self.parse_coeff()?;
            self.skip_ws();
            if self.eat(b'*') {
                self.skip_ws();
                factors.push(self.parse_factor()?);
            } else {
                // bare coefficient: a constant term, rejected later in build()
                return Ok(RawTerm {
                    factors,
                    coefficient,
                    pos,
                });
            }
        } else {
            factors.push(self.parse_factor()?);
        }
        loop {
            self.skip_ws();
            let save = self.pos;
            if self.eat(b'*') {
                self.skip_ws();
                match self.parse_factor() {
                    Ok(f) => factors.push(f),
                    Err(e) => {
                        let _ = save;
                        return Err(e);
                    }
                }
            } else {
                break;
            }
        }
        Ok(RawTerm {
            factors,
            coefficient,
            pos,
        })
    }

    fn parse_factor(&mut self) -> Result<(u32, u32)> {
        let var = self.parse_var()?;
        self.skip_ws();
        let exp = if self.eat(b'^') {
            self.skip_ws();
            self.parse_uint("exponent")?
        } else {
            1
        };
        if exp > MAX_EXPONENT {
            return self.err(self.pos, format!("exponent {exp} too large"));
        }
        Ok((var, exp))
    }

    fn parse_var(&mut self) -> Result<u32> {
        let pos = self.pos;
        let c = match self.peek() {
            Some(c) => c,
            None => return self.err(pos, "expected variable"),
        };
        let idx = match c {
            b'x' => {
                self.pos += 1;
                // "x" followed immediately by digits is an indexed variable
                if matches!(self.peek(), Some(d) if d.is_ascii_digit()) {
                    let i = self.parse_uint("variable index")?;
                    if i == 0 {
                        return self.err(pos, "variable indices start at 1");
                    }
                    if i > MAX_VAR_INDEX {
                        return self.err(pos, format!("variable index {i} too large"));
                    }
                    self.indexed_at.get_or_insert(pos);
                    i
                } else {
                    self.lettered_at.get_or_insert(pos);
                    1
                }
            }
            b'y' | b'z' | b'w' => {
                self.pos += 1;
                self.lettered_at.get_or_insert(pos);
                match c {
                    b'y' => 2,
                    b'z' => 3,
                    _ => 4,
                }
            }
            _ => return self.err(pos, format!("expected variable, found '{}'", c as char)),
        };
        if let (Some(_), Some(l)) = (self.indexed_at, self.lettered_at) {
            let at = self.indexed_at.unwrap().max(l);
            return self.err(at, "mixed variable naming (indexed x1.. and letters x,y,z,w)");
        }
        self.max_var = self.max_var.max(idx);
        Ok(idx)
    }

    fn parse_uint(&mut self, what: &str) -> Result<u32> {
        let pos = self.pos;
        let start = self.pos;
        while matches!(self.peek(), Some(d) if d.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err(pos, format!("expected {what}"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        digits
            .parse::<u32>()
            .map_err(|_| Error::Parse {
                pos,
                message: format!("{what} out of range"),
            })
    }

    fn parse_coeff(&mut self) -> Result<Rat> {
        let pos = self.pos;
        let neg = self.eat(b'-');
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(d) if d.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err(pos, "expected number after '-'");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let mut numer: BigInt = digits.parse().unwrap();
        if neg {
            numer = -numer;
        }
        let save = self.pos;
        self.skip_ws();
        let denom = if self.eat(b'/') {
            self.skip_ws();
            let dpos = self.pos;
            let dstart = self.pos;
            while matches!(self.peek(), Some(d) if d.is_ascii_digit()) {
                self.pos += 1;
            }
            if dstart == self.pos {
                return self.err(dpos, "expected denominator");
            }
            let d: BigInt =
                std::str::from_utf8(&self.src[dstart..self.pos]).unwrap().parse().unwrap();
            if d.is_zero() {
                return self.err(dpos, "zero denominator");
            }
            d
        } else {
            self.pos = save;
            BigInt::one()
        };
        Ok(Rat::new(numer, denom))
    }
}
