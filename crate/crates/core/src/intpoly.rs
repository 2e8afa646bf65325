//! Exact multivariate Laurent polynomials over the integers.
//!
//! Terms are stored in a `BTreeMap` keyed by exponent vector, so iteration is
//! lexicographic and the zero polynomial is the empty map.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{domain, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntLaurentPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

/// Per-variable exponent weights used by [`IntLaurentPoly::specialize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentMap(pub Vec<i64>);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    ExactDiv,
}

impl IntLaurentPoly {
    pub fn zero(vars: &[&str]) -> Self {
        assert!(!vars.is_empty(), "a polynomial needs at least one variable");
        IntLaurentPoly {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[&str], c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars.len()], c.into());
        p
    }

    pub fn monomial(vars: &[&str], exps: Vec<i64>, c: impl Into<BigInt>) -> Self {
        assert_eq!(exps.len(), vars.len());
        let mut p = Self::zero(vars);
        p.add_term(exps, c.into());
        p
    }

    /// Univariate polynomial in `var` from `(exponent, coefficient)` pairs.
    /// Repeated exponents are summed.
    pub fn univariate(var: &str, terms: &[(i64, i64)]) -> Self {
        let mut p = Self::zero(&[var]);
        for &(e, c) in terms {
            p.add_term(vec![e], BigInt::from(c));
        }
        p
    }

    /// Univariate in `t` from dense coefficients, `coeffs[i]` multiplying `t^i`.
    pub fn from_dense(var: &str, coeffs: &[BigInt]) -> Self {
        let mut p = Self::zero(&[var]);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(vec![i as i64], c.clone());
        }
        p
    }

    pub fn from_terms(
        vars: Vec<String>,
        terms: impl IntoIterator<Item = (Vec<i64>, BigInt)>,
    ) -> Result<Self> {
        if vars.is_empty() {
            return domain("a polynomial needs at least one variable");
        }
        let mut p = IntLaurentPoly {
            vars,
            terms: BTreeMap::new(),
        };
        for (e, c) in terms {
            if e.len() != p.vars.len() {
                return domain(format!(
                    "exponent vector of length {} for {} variables",
                    e.len(),
                    p.vars.len()
                ));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Vec<i64>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_univariate(&self) -> bool {
        self.vars.len() == 1
    }

    pub fn coeff(&self, exps: &[i64]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    /// Componentwise minimum exponent (the monomial content). `None` for zero.
    pub fn min_exponents(&self) -> Option<Vec<i64>> {
        let mut it = self.terms.keys();
        let mut m = it.next()?.clone();
        for e in it {
            for (a, b) in m.iter_mut().zip(e) {
                *a = (*a).min(*b);
            }
        }
        Some(m)
    }

    /// Multiplies by the monomial with exponent vector `shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        assert_eq!(shift.len(), self.nvars());
        IntLaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Divides out the monomial content so that every variable has minimum exponent 0.
    pub fn strip_monomial(&self) -> Self {
        match self.min_exponents() {
            None => self.clone(),
            Some(m) => self.shift(&m.iter().map(|x| -x).collect::<Vec<_>>()),
        }
    }

    fn check_same_vars(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VariableMismatch(self.vars.clone(), other.vars.clone()));
        }
        Ok(())
    }

    pub fn neg(&self) -> Self {
        IntLaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_vars(other)?;
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_vars(other)?;
        let mut r = IntLaurentPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                r.add_term(e1.iter().zip(e2).map(|(a, b)| a + b).collect(), c1 * c2);
            }
        }
        Ok(r)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut r = IntLaurentPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            r.add_term(e.clone(), c * k);
        }
        r
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = Self::constant(&self.var_refs(), 1);
        for _ in 0..n {
            r = r.mul(self).expect("same variables");
        }
        r
    }

    fn var_refs(&self) -> Vec<&str> {
        self.vars.iter().map(|s| s.as_str()).collect()
    }

    /// Exact quotient in the Laurent ring. Monomial content is cleared from
    /// both operands first, so units never cause a spurious failure.
    pub fn exact_div(&self, q: &Self) -> Result<Self> {
        self.check_same_vars(q)?;
        if q.is_zero() {
            return Err(Error::Division("division by the zero polynomial".into()));
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let mp = self.min_exponents().unwrap();
        let mq = q.min_exponents().unwrap();
        let mut rem = self.strip_monomial();
        let q = q.strip_monomial();
        let (qe, qc) = q.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut quot = IntLaurentPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        while let Some((re, rc)) = rem.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            let de: Vec<i64> = re.iter().zip(&qe).map(|(a, b)| a - b).collect();
            if de.iter().any(|&x| x < 0) {
                return Err(Error::Division(format!("{} does not divide {}", q, self)));
            }
            let (dc, r) = rc.div_rem(&qc);
            if !r.is_zero() {
                return Err(Error::Division(format!("{} does not divide {}", q, self)));
            }
            for (e, c) in &q.terms {
                rem.add_term(e.iter().zip(&de).map(|(a, b)| a + b).collect(), -(c * &dc));
            }
            quot.add_term(de, dc);
        }
        let shift: Vec<i64> = mp.iter().zip(&mq).map(|(a, b)| a - b).collect();
        Ok(quot.shift(&shift))
    }

    pub fn arith(&self, other: &Self, op: ArithOp) -> Result<Self> {
        match op {
            ArithOp::Add => self.add(other),
            ArithOp::Sub => self.sub(other),
            ArithOp::Mul => self.mul(other),
            ArithOp::ExactDiv => self.exact_div(other),
        }
    }

    /// Substitutes `t^{m_i}` for the i-th variable, giving a univariate polynomial in `t`.
    pub fn specialize(&self, m: &ExponentMap) -> Result<Self> {
        let signs = vec![1; m.0.len()];
        self.specialize_twisted(m, &signs)
    }

    /// Substitutes `signs[i] * t^{m_i}` for the i-th variable.
    pub fn specialize_twisted(&self, m: &ExponentMap, signs: &[i8]) -> Result<Self> {
        if m.0.len() != self.nvars() || signs.len() != self.nvars() {
            return domain(format!(
                "exponent map has length {} but the polynomial has {} variables",
                m.0.len(),
                self.nvars()
            ));
        }
        let mut r = Self::zero(&["t"]);
        for (e, c) in &self.terms {
            let deg: i64 = e.iter().zip(&m.0).map(|(a, b)| a * b).sum();
            let neg = e
                .iter()
                .zip(signs)
                .filter(|(_, &s)| s < 0)
                .map(|(a, _)| a.rem_euclid(2))
                .sum::<i64>()
                % 2
                == 1;
            r.add_term(vec![deg], if neg { -c } else { c.clone() });
        }
        Ok(r)
    }

    /// Renames the variables, keeping the terms.
    pub fn with_vars(&self, vars: &[&str]) -> Result<Self> {
        if vars.len() != self.nvars() {
            return domain("wrong number of variable names");
        }
        Ok(IntLaurentPoly {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: self.terms.clone(),
        })
    }

    fn require_univariate(&self) -> Result<()> {
        if !self.is_univariate() {
            return domain(format!(
                "expected a univariate polynomial, got variables [{}]",
                self.vars.join(",")
            ));
        }
        Ok(())
    }

    /// Dense coefficients after stripping monomial content: `(shift, c)` with
    /// `self = t^shift * sum c[i] t^i` and `c[0] != 0`.
    pub fn to_dense(&self) -> Result<(i64, Vec<BigInt>)> {
        self.require_univariate()?;
        if self.is_zero() {
            return domain("zero polynomial");
        }
        let lo = *self.terms.keys().next().unwrap().first().unwrap();
        let hi = *self.terms.keys().next_back().unwrap().first().unwrap();
        let mut c = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, v) in &self.terms {
            c[(e[0] - lo) as usize] = v.clone();
        }
        Ok((lo, c))
    }

    /// Degree after stripping monomial content (univariate only).
    pub fn span_degree(&self) -> Result<usize> {
        Ok(self.to_dense()?.1.len() - 1)
    }

    /// Palindromic or anti-palindromic coefficient sequence after stripping
    /// monomial content.
    pub fn is_reciprocal(&self) -> Result<bool> {
        let (_, c) = self.to_dense()?;
        let n = c.len();
        let pal = (0..n).all(|i| c[i] == c[n - 1 - i]);
        let anti = (0..n).all(|i| c[i] == -&c[n - 1 - i]);
        Ok(pal || anti)
    }

    /// Evaluates a univariate polynomial exactly at an integer.
    pub fn eval_int(&self, x: &BigInt) -> Result<BigInt> {
        let (shift, c) = self.to_dense()?;
        if shift < 0 && x.is_zero() {
            return domain("negative power at zero");
        }
        let mut acc = BigInt::zero();
        for a in c.iter().rev() {
            acc = acc * x + a;
        }
        if shift >= 0 {
            Ok(acc * x.pow(shift as u32))
        } else {
            let d = x.pow((-shift) as u32);
            let (q, r) = acc.div_rem(&d);
            if !r.is_zero() {
                return domain("value is not an integer");
            }
            Ok(q)
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse_impl(text, None)
    }

    /// Parses with a fixed variable list; any other identifier is an error.
    pub fn parse_with_vars(text: &str, vars: &[&str]) -> Result<Self> {
        parse_impl(text, Some(vars))
    }
}

impl FromStr for IntLaurentPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl Serialize for IntLaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Canonical form: descending total degree, ties broken by descending
/// lexicographic exponent vector.
impl fmt::Display for IntLaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&Vec<i64>, &BigInt)> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: i64 = a.0.iter().sum();
            let db: i64 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            let mono: Vec<String> = e
                .iter()
                .zip(&self.vars)
                .filter(|(x, _)| **x != 0)
                .map(|(x, v)| if *x == 1 { v.clone() } else { format!("{v}^{x}") })
                .collect();
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{a}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

struct Lexer<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            chars: src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
            pos: 0,
            src,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map(|&(i, _)| i).unwrap_or(self.src.len())
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.offset(),
            message: msg.into(),
        })
    }

    fn sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some('+') => {
                self.bump();
                Some(false)
            }
            Some('-') | Some('\u{2212}') => {
                self.bump();
                Some(true)
            }
            _ => None,
        }
    }

    fn digits(&mut self) -> Option<String> {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(|c| c.is_ascii_digit()) {
            s.push(c);
            self.bump();
        }
        (!s.is_empty()).then_some(s)
    }

    fn ident(&mut self) -> Option<String> {
        let mut s = String::new();
        if let Some(c) = self.peek().filter(|c| c.is_ascii_alphabetic() || *c == '_') {
            s.push(c);
            self.bump();
            while let Some(c) = self.peek().filter(|c| c.is_ascii_alphanumeric() || *c == '_') {
                s.push(c);
                self.bump();
            }
        }
        (!s.is_empty()).then_some(s)
    }

    fn exponent(&mut self) -> Result<i64> {
        let braced = self.peek() == Some('{');
        if braced {
            self.bump();
        }
        let neg = self.sign().unwrap_or(false);
        let Some(d) = self.digits() else {
            return self.err("expected an integer exponent");
        };
        let v: i64 = match d.parse() {
            Ok(v) => v,
            Err(_) => return self.err("exponent out of range"),
        };
        if braced && self.bump() != Some('}') {
            self.pos -= 1;
            return self.err("expected `}`");
        }
        Ok(if neg { -v } else { v })
    }
}

fn parse_impl(text: &str, fixed: Option<&[&str]>) -> Result<IntLaurentPoly> {
    let mut lx = Lexer::new(text);
    let mut vars: Vec<String> = fixed.map(|v| v.iter().map(|s| s.to_string()).collect()).unwrap_or_default();
    let mut raw: Vec<(Vec<(usize, i64)>, BigInt)> = Vec::new();
    if lx.peek().is_none() {
        return lx.err("empty polynomial");
    }
    let mut first = true;
    while lx.peek().is_some() {
        let neg = match lx.sign() {
            Some(n) => n,
            None if first => false,
            None => return lx.err("expected `+` or `-` between terms"),
        };
        first = false;
        let mut coeff = BigInt::one();
        let mut have_factor = false;
        if let Some(d) = lx.digits() {
            coeff = d.parse().expect("digit string");
            have_factor = true;
        }
        let mut mono: Vec<(usize, i64)> = Vec::new();
        loop {
            let star = lx.peek() == Some('*');
            if star {
                if !have_factor {
                    return lx.err("unexpected `*`");
                }
                lx.bump();
            }
            let at = lx.offset();
            match lx.ident() {
                Some(name) => {
                    let idx = match vars.iter().position(|v| *v == name) {
                        Some(i) => i,
                        None if fixed.is_some() => return Err(Error::UnknownVariable(name)),
                        None => {
                            vars.push(name);
                            vars.len() - 1
                        }
                    };
                    let e = if lx.peek() == Some('^') {
                        lx.bump();
                        lx.exponent()?
                    } else {
                        1
                    };
                    mono.push((idx, e));
                    have_factor = true;
                }
                None if star => {
                    return Err(Error::Parse {
                        position: at,
                        message: "expected a variable after `*`".into(),
                    })
                }
                None => break,
            }
        }
        if !have_factor {
            return lx.err("expected a coefficient or variable");
        }
        raw.push((mono, if neg { -coeff } else { coeff }));
    }
    if vars.is_empty() {
        vars.push("t".into());
    }
    let k = vars.len();
    let terms = raw.into_iter().map(|(mono, c)| {
        let mut e = vec![0i64; k];
        for (i, x) in mono {
            e[i] += x;
        }
        (e, c)
    });
    IntLaurentPoly::from_terms(vars, terms)
}

/// `t^{2b} - t^{b+a} - t^b - t^{b-a} + 1` for `0 <= a < b`. At `a = 0` the
/// three middle terms merge into `-3 t^b`.
pub fn lt_polynomial(a: i64, b: i64) -> Result<IntLaurentPoly> {
    if b <= 0 || a < 0 || a >= b {
        return domain(format!("LT_{{a,b}} needs 0 <= a < b, got a={a}, b={b}"));
    }
    Ok(IntLaurentPoly::univariate(
        "t",
        &[(2 * b, 1), (b + a, -1), (b, -1), (b - a, -1), (0, 1)],
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedPoly {
    /// Lehmer's polynomial.
    Lehmer,
    /// `t^3 - t - 1`, whose root is the smallest Pisot number.
    Smyth,
    /// The cyclotomic factor `t^2 - t + 1`.
    Sigma,
    /// `t^n - t - 1`.
    Pn(u32),
}

impl FromStr for NamedPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        match s.as_str() {
            "lehmer" => Ok(NamedPoly::Lehmer),
            "smyth" => Ok(NamedPoly::Smyth),
            "sigma" => Ok(NamedPoly::Sigma),
            _ => {
                let inner = s
                    .strip_prefix("pn(")
                    .and_then(|r| r.strip_suffix(')'))
                    .or_else(|| s.strip_prefix('p'));
                match inner.and_then(|n| n.parse::<u32>().ok()) {
                    Some(n) => Ok(NamedPoly::Pn(n)),
                    None => domain(format!(
                        "unknown polynomial name `{s}` (expected lehmer, smyth, sigma or pn(N))"
                    )),
                }
            }
        }
    }
}

pub fn named_polynomial(name: NamedPoly) -> Result<IntLaurentPoly> {
    let t = |terms: &[(i64, i64)]| IntLaurentPoly::univariate("t", terms);
    Ok(match name {
        NamedPoly::Lehmer => t(&[
            (10, 1),
            (9, 1),
            (7, -1),
            (6, -1),
            (5, -1),
            (4, -1),
            (3, -1),
            (1, 1),
            (0, 1),
        ]),
        NamedPoly::Smyth => t(&[(3, 1), (1, -1), (0, -1)]),
        NamedPoly::Sigma => t(&[(2, 1), (1, -1), (0, 1)]),
        NamedPoly::Pn(n) if n >= 2 => t(&[(n as i64, 1), (1, -1), (0, -1)]),
        NamedPoly::Pn(n) => return domain(format!("p_n needs n >= 2, got {n}")),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntLaurentPoly {
        IntLaurentPoly::parse(s).unwrap()
    }

    #[test]
    fn parse_and_format_roundtrip() {
        assert_eq!(p("t^4 - t^3 - t^2 - t + 1").to_string(), "t^4 - t^3 - t^2 - t + 1");
        assert_eq!(p("1 - t + t^4 - t^2 - t^3").to_string(), "t^4 - t^3 - t^2 - t + 1");
        assert_eq!(p("x*y - x - y + 1").num_terms(), 4);
        assert_eq!(p("x*y - x - y + 1").vars(), &["x".to_string(), "y".to_string()]);
        assert_eq!(p("3 t^-2 + 2*t^{-1}").to_string(), "2*t^-1 + 3*t^-2");
        assert_eq!(p("-t").to_string(), "-t");
        assert_eq!(p("t \u{2212} 1").to_string(), "t - 1");
    }

    #[test]
    fn zero_parses_to_empty() {
        let z = p("0");
        assert!(z.is_zero());
        assert_eq!(z.to_string(), "0");
        assert!(p("t - t").is_zero());
    }

    #[test]
    fn parse_errors_carry_position() {
        match IntLaurentPoly::parse("t^4 + + 1") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 6),
            other => panic!("{other:?}"),
        }
        assert!(matches!(IntLaurentPoly::parse("t^"), Err(Error::Parse { .. })));
        assert!(matches!(IntLaurentPoly::parse(""), Err(Error::Parse { .. })));
        assert_eq!(
            IntLaurentPoly::parse_with_vars("t + s", &["t"]),
            Err(Error::UnknownVariable("s".into()))
        );
    }

    #[test]
    fn factorization_with_lt_1_2() {
        let lt = lt_polynomial(1, 2).unwrap();
        let f = p("t^3 + 1").mul(&lt).unwrap();
        assert_eq!(f, p("t^7 - t^6 - t^5 - t^2 - t + 1"));
    }

    #[test]
    fn lt_1_6_over_sigma_is_lehmer() {
        let lt = lt_polynomial(1, 6).unwrap();
        let sigma = named_polynomial(NamedPoly::Sigma).unwrap();
        assert_eq!(
            lt.exact_div(&sigma).unwrap(),
            named_polynomial(NamedPoly::Lehmer).unwrap()
        );
    }

    #[test]
    fn exact_div_handles_units_and_rejects_remainders() {
        let q = p("t^-3 - t^-4");
        let r = p("t^5 + 2*t + 7");
        let prod = q.mul(&r).unwrap();
        assert_eq!(prod.exact_div(&q).unwrap(), r);
        assert_eq!(prod.exact_div(&r).unwrap(), q);
        assert!(matches!(p("t^2 + 1").exact_div(&p("t - 1")), Err(Error::Division(_))));
        assert!(matches!(p("t^2 + 1").exact_div(&p("2*t")), Err(Error::Division(_))));
        let xy = p("x*y - x - y + 1");
        assert!(xy.exact_div(&p("x - 1").with_vars(&["x"]).unwrap()).is_err());
    }

    #[test]
    fn multivariate_exact_div() {
        let a = p("x*y - x - y + 1");
        let xm1 = IntLaurentPoly::parse_with_vars("x - 1", &["x", "y"]).unwrap();
        let ym1 = IntLaurentPoly::parse_with_vars("y - 1", &["x", "y"]).unwrap();
        assert_eq!(a.exact_div(&xm1).unwrap(), ym1);
    }

    #[test]
    fn additive_identity() {
        let q = p("t^3 - 2*t + 5");
        assert_eq!(q.add(&IntLaurentPoly::zero(&["t"])).unwrap(), q);
    }

    #[test]
    fn variable_mismatch() {
        assert!(matches!(p("t").add(&p("s")), Err(Error::VariableMismatch(..))));
    }

    #[test]
    fn specialize_magic_polynomial_at_10_8_3() {
        let magic = IntLaurentPoly::parse_with_vars(
            "x*y*z^-1 - x - y - x*z^-1 - y*z^-1 + 1",
            &["x", "y", "z"],
        )
        .unwrap();
        let s = magic.specialize(&ExponentMap(vec![10, 8, 3])).unwrap();
        assert_eq!(s, p("t^15 - t^10 - t^8 - t^7 - t^5 + 1"));
    }

    #[test]
    fn specialize_identity_weights_collapses() {
        let q = p("x*y - x - y + 1");
        assert_eq!(q.specialize(&ExponentMap(vec![1, 1])).unwrap(), p("t^2 - 2*t + 1"));
        assert!(q.specialize(&ExponentMap(vec![1])).is_err());
    }

    #[test]
    fn specialize_twisted_flips_odd_powers() {
        let q = p("u*v^2 + v");
        let s = q.specialize_twisted(&ExponentMap(vec![1, 1]), &[1, -1]).unwrap();
        assert_eq!(s, p("t^3 - t"));
    }

    #[test]
    fn reciprocity() {
        assert!(lt_polynomial(1, 4).unwrap().is_reciprocal().unwrap());
        assert!(!named_polynomial(NamedPoly::Smyth).unwrap().is_reciprocal().unwrap());
        assert!(p("t - 1").is_reciprocal().unwrap());
        assert!(p("t^-2 + 3*t^-1 + 1").is_reciprocal().unwrap());
        assert!(matches!(IntLaurentPoly::zero(&["t"]).is_reciprocal(), Err(Error::Domain(_))));
    }

    #[test]
    fn lt_examples() {
        assert_eq!(lt_polynomial(1, 2).unwrap(), p("t^4 - t^3 - t^2 - t + 1"));
        assert_eq!(lt_polynomial(3, 4).unwrap(), p("t^8 - t^7 - t^4 - t + 1"));
        assert_eq!(lt_polynomial(0, 1).unwrap(), p("t^2 - 3*t + 1"));
        assert!(lt_polynomial(2, 2).is_err());
        assert!(lt_polynomial(0, 0).is_err());
        assert!(lt_polynomial(-1, 3).is_err());
    }

    #[test]
    fn named() {
        assert_eq!(
            named_polynomial(NamedPoly::Lehmer).unwrap(),
            p("t^10 + t^9 - t^7 - t^6 - t^5 - t^4 - t^3 + t + 1")
        );
        assert_eq!(named_polynomial(NamedPoly::Pn(3)).unwrap(), p("t^3 - t - 1"));
        assert_eq!(named_polynomial(NamedPoly::Sigma).unwrap(), p("t^2 - t + 1"));
        assert!(named_polynomial(NamedPoly::Pn(1)).is_err());
        assert_eq!("pn(7)".parse::<NamedPoly>().unwrap(), NamedPoly::Pn(7));
        assert_eq!("p3".parse::<NamedPoly>().unwrap(), NamedPoly::Pn(3));
        assert!("foo".parse::<NamedPoly>().is_err());
    }

    #[test]
    fn table_factorizations_by_sigma() {
        let sigma = named_polynomial(NamedPoly::Sigma).unwrap();
        assert_eq!(
            lt_polynomial(3, 4).unwrap().exact_div(&sigma).unwrap(),
            p("t^6 - t^4 - t^3 - t^2 + 1")
        );
        // The degree 14 factor of LT_{2,9} comes with t^4 - t^3 + t^2 - t + 1, not sigma.
        let lt29 = lt_polynomial(2, 9).unwrap();
        let q = p("t^14 + t^13 - t^9 - t^8 - t^7 - t^6 - t^5 + t + 1");
        assert_eq!(lt29.exact_div(&q).unwrap(), p("t^4 - t^3 + t^2 - t + 1"));
        assert!(lt29.exact_div(&sigma).is_err());
        for (a, b) in [(1, 4), (1, 8)] {
            assert!(lt_polynomial(a, b).unwrap().exact_div(&sigma).is_err());
        }
    }

    #[test]
    fn eval_int_matches_substitution() {
        let q = p("t^3 - t - 1");
        assert_eq!(q.eval_int(&BigInt::from(2)).unwrap(), BigInt::from(5));
        assert_eq!(p("t^-1 + t").eval_int(&BigInt::from(1)).unwrap(), BigInt::from(2));
    }
}
