//! Group-ring arithmetic over cyclic-type groups.
//!
//! Elements are finitely supported maps from exponents to rational
//! coefficients. The group operation is addition of exponents (reduced mod `n`
//! in the finite case), so `z^a * z^b = z^(a+b)` and the identity is `z^0`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Field of coefficients: exact rationals.
pub type Coefficient = BigRational;

/// Which cyclic-type group the exponents live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupContext {
    /// `Z/n`, exponents are residues in `[0, n)`.
    FiniteCyclic(i64),
    /// `Z`, exponents are integers.
    InfiniteCyclic,
    /// A subgroup of `Q`, exponents are reduced fractions.
    Rational,
}

/// A group element `z^e`, stored as its exponent.
///
/// Rationals are kept in lowest terms with a positive denominator; residues
/// and integers have denominator one. Ordering is by value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponent(Rational64);

impl Exponent {
    pub fn int(value: i64) -> Self {
        Exponent(Rational64::from_integer(value))
    }

    pub fn ratio(numer: i64, denom: i64) -> Self {
        Exponent(Rational64::new(numer, denom))
    }

    pub fn value(&self) -> Rational64 {
        self.0
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Integer value; only meaningful when [`Exponent::is_integer`] holds.
    pub fn as_int(&self) -> i64 {
        debug_assert!(self.0.is_integer());
        self.0.to_integer()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for GroupContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupContext::FiniteCyclic(n) => write!(f, "Z/{n}"),
            GroupContext::InfiniteCyclic => write!(f, "Z"),
            GroupContext::Rational => write!(f, "Q"),
        }
    }
}

impl GroupContext {
    pub fn finite(n: i64) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidContext(format!("order {n} must be at least 1")));
        }
        Ok(GroupContext::FiniteCyclic(n))
    }

    pub fn order(&self) -> Option<i64> {
        match self {
            GroupContext::FiniteCyclic(n) => Some(*n),
            _ => None,
        }
    }

    pub fn is_torsion_free(&self) -> bool {
        !matches!(self, GroupContext::FiniteCyclic(_))
    }

    pub fn identity(&self) -> Exponent {
        Exponent::int(0)
    }

    /// Checks that `value` names an element of this group and normalizes it.
    pub fn exponent(&self, value: Rational64) -> Result<Exponent> {
        match self {
            GroupContext::FiniteCyclic(n) if value.is_integer() => Ok(Exponent::int(value.to_integer().rem_euclid(*n))),
            GroupContext::InfiniteCyclic if value.is_integer() => Ok(Exponent(value)),
            GroupContext::Rational => Ok(Exponent(value)),
            _ => Err(Error::InvalidExponent { exponent: value.to_string(), context: self.to_string() }),
        }
    }

    pub fn int(&self, value: i64) -> Exponent {
        match self {
            GroupContext::FiniteCyclic(n) => Exponent::int(value.rem_euclid(*n)),
            _ => Exponent::int(value),
        }
    }

    /// True when `e` is already in this context's normal form.
    pub fn contains(&self, e: Exponent) -> bool {
        match self {
            GroupContext::FiniteCyclic(n) => e.is_integer() && (0..*n).contains(&e.as_int()),
            GroupContext::InfiniteCyclic => e.is_integer(),
            GroupContext::Rational => true,
        }
    }

    fn reduce(&self, value: Rational64) -> Exponent {
        match self {
            GroupContext::FiniteCyclic(n) => Exponent::int(value.to_integer().rem_euclid(*n)),
            _ => Exponent(value),
        }
    }

    pub fn add(&self, a: Exponent, b: Exponent) -> Exponent {
        self.reduce(a.0 + b.0)
    }

    pub fn neg(&self, a: Exponent) -> Exponent {
        self.reduce(-a.0)
    }

    /// `a * m`, i.e. the exponent of `(z^a)^m`.
    pub fn scale(&self, a: Exponent, m: i64) -> Exponent {
        self.reduce(a.0 * Rational64::from_integer(m))
    }

    /// Parses an exponent token: an integer, or `p/q` in the rational
    /// context. The error is a human-readable message.
    pub fn parse_exponent(&self, token: &str) -> std::result::Result<Exponent, String> {
        let value = parse_rational64(token).ok_or_else(|| format!("malformed exponent `{token}`"))?;
        self.exponent(value).map_err(|e| e.to_string())
    }
}

fn parse_rational64(token: &str) -> Option<Rational64> {
    match token.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.parse().ok()?;
            let q: i64 = q.parse().ok()?;
            if q == 0 {
                return None;
            }
            Some(Rational64::new(p, q))
        }
        None => token.parse::<i64>().ok().map(Rational64::from_integer),
    }
}

/// Parses `p/q` or an integer into an exact coefficient.
pub fn parse_coefficient(token: &str) -> Option<Coefficient> {
    match token.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.parse().ok()?;
            let q: BigInt = q.parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => token.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// A finitely supported element `sum_g a_g g` of `Q[G]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingElement {
    ctx: GroupContext,
    terms: BTreeMap<Exponent, Coefficient>,
}

impl RingElement {
    pub fn zero(ctx: GroupContext) -> Self {
        RingElement { ctx, terms: BTreeMap::new() }
    }

    /// The group-ring identity `z^0`.
    pub fn one(ctx: GroupContext) -> Self {
        Self::monomial(ctx, ctx.identity(), Coefficient::one())
    }

    pub fn monomial(ctx: GroupContext, e: Exponent, c: Coefficient) -> Self {
        let mut out = Self::zero(ctx);
        out.accumulate(e, c);
        out
    }

    /// Builds an element from (exponent, coefficient) pairs, normalizing
    /// exponents and summing repeated ones.
    pub fn from_terms<I>(ctx: GroupContext, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rational64, Coefficient)>,
    {
        let mut out = Self::zero(ctx);
        for (e, c) in terms {
            let e = ctx.exponent(e)?;
            out.accumulate(e, c);
        }
        Ok(out)
    }

    /// Convenience constructor for integer exponents and coefficients.
    pub fn from_ints(ctx: GroupContext, terms: &[(i64, i64)]) -> Result<Self> {
        Self::from_terms(
            ctx,
            terms.iter().map(|&(e, c)| (Rational64::from_integer(e), Coefficient::from_integer(c.into()))),
        )
    }

    /// The simple quantity `C̄ = sum_{g in C} g`.
    pub fn simple<I>(ctx: GroupContext, set: I) -> Self
    where
        I: IntoIterator<Item = Exponent>,
    {
        let mut out = Self::zero(ctx);
        for e in set {
            out.terms.insert(e, Coefficient::one());
        }
        out
    }

    fn accumulate(&mut self, e: Exponent, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Coefficient::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn ctx(&self) -> GroupContext {
        self.ctx
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Coefficient> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient at `e` (zero when absent).
    pub fn coeff(&self, e: Exponent) -> Coefficient {
        self.terms.get(&e).cloned().unwrap_or_else(Coefficient::zero)
    }

    /// True when every coefficient is one.
    pub fn is_simple(&self) -> bool {
        self.terms.values().all(|c| c.is_one())
    }

    fn same_ctx(&self, other: &RingElement) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch(self.ctx.to_string(), other.ctx.to_string()));
        }
        Ok(())
    }

    /// `a*self + b*other`.
    pub fn linear_combine(
        a: &Coefficient,
        alpha: &RingElement,
        b: &Coefficient,
        beta: &RingElement,
    ) -> Result<RingElement> {
        alpha.same_ctx(beta)?;
        let mut out = RingElement::zero(alpha.ctx);
        for (e, c) in &alpha.terms {
            out.accumulate(*e, a * c);
        }
        for (e, c) in &beta.terms {
            out.accumulate(*e, b * c);
        }
        Ok(out)
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement> {
        Self::linear_combine(&Coefficient::one(), self, &Coefficient::one(), other)
    }

    pub fn sub(&self, other: &RingElement) -> Result<RingElement> {
        Self::linear_combine(&Coefficient::one(), self, &-Coefficient::one(), other)
    }

    pub fn scaled(&self, a: &Coefficient) -> RingElement {
        let mut out = RingElement::zero(self.ctx);
        for (e, c) in &self.terms {
            out.accumulate(*e, a * c);
        }
        out
    }

    /// Group-ring (convolution) product.
    pub fn multiply(&self, other: &RingElement) -> Result<RingElement> {
        self.same_ctx(other)?;
        let mut out = RingElement::zero(self.ctx);
        for (g, a) in &self.terms {
            for (h, b) in &other.terms {
                out.accumulate(self.ctx.add(*g, *h), a * b);
            }
        }
        Ok(out)
    }

    /// Coefficientwise product `sum_g a_g b_g g`.
    pub fn hadamard(&self, other: &RingElement) -> Result<RingElement> {
        self.same_ctx(other)?;
        let (small, large) = if self.terms.len() <= other.terms.len() { (self, other) } else { (other, self) };
        let terms = small.terms.iter().filter_map(|(e, a)| large.terms.get(e).map(|b| (*e, a * b))).collect();
        Ok(RingElement { ctx: self.ctx, terms })
    }

    /// `alpha* = sum_g a_g g^{-1}`.
    pub fn star(&self) -> RingElement {
        let terms = self.terms.iter().map(|(e, c)| (self.ctx.neg(*e), c.clone())).collect();
        RingElement { ctx: self.ctx, terms }
    }

    /// Freshman exponent `alpha^(m) = sum_g a_g g^m`.
    ///
    /// With torsion distinct exponents can collide; their coefficients add.
    pub fn freshman(&self, m: i64) -> RingElement {
        let mut out = RingElement::zero(self.ctx);
        for (e, c) in &self.terms {
            out.accumulate(self.ctx.scale(*e, m), c.clone());
        }
        out
    }

    pub fn support(&self) -> BTreeSet<Exponent> {
        self.terms.keys().copied().collect()
    }

    /// The coefficient complex `K(alpha, c) = {g | a_g = c}` for `c != 0`.
    pub fn coefficient_complex(&self, c: &Coefficient) -> Result<BTreeSet<Exponent>> {
        if c.is_zero() {
            return Err(Error::ZeroLevelComplex);
        }
        Ok(self.terms.iter().filter(|(_, v)| *v == c).map(|(e, _)| *e).collect())
    }

    /// Distinct nonzero coefficient values, ascending.
    pub fn coefficient_values(&self) -> BTreeSet<Coefficient> {
        self.terms.values().cloned().collect()
    }

    /// `f[alpha] = sum_g f(a_g) g`, with `f(0) = 0` implied.
    pub fn apply_function(&self, f: &BTreeMap<Coefficient, Coefficient>) -> Result<RingElement> {
        let mut out = RingElement::zero(self.ctx);
        for (e, c) in &self.terms {
            let v = f.get(c).ok_or_else(|| Error::MissingFunctionValue(c.to_string()))?;
            out.accumulate(*e, v.clone());
        }
        Ok(out)
    }

    /// `alpha * z^g`: every exponent shifted by `g`.
    pub fn shift(&self, g: Exponent) -> RingElement {
        let terms = self.terms.iter().map(|(e, c)| (self.ctx.add(*e, g), c.clone())).collect();
        RingElement { ctx: self.ctx, terms }
    }

    /// Parses one line of `coeff@exp` tokens. `line` is used for error
    /// positions only. A lone `0` denotes the zero element.
    pub fn parse(ctx: GroupContext, text: &str, line: usize) -> Result<RingElement> {
        let mut out = RingElement::zero(ctx);
        for (column, token) in tokens_with_columns(text) {
            if token == "0" {
                continue;
            }
            let err = |message: String| Error::Parse { line, column, message };
            let (c, e) = token.split_once('@').ok_or_else(|| err(format!("expected `coeff@exp`, found `{token}`")))?;
            let c = parse_coefficient(c).ok_or_else(|| err(format!("malformed coefficient `{c}`")))?;
            let e = parse_rational64(e).ok_or_else(|| err(format!("malformed exponent `{e}`")))?;
            let e = ctx.exponent(e).map_err(|x| err(x.to_string()))?;
            out.accumulate(e, c);
        }
        Ok(out)
    }
}

/// Parses a `group Z | group Z/<n> | group Q` header line.
pub fn parse_group_line(text: &str, line: usize) -> Result<GroupContext> {
    let mut toks = tokens_with_columns(text);
    let err = |column: usize, message: String| Error::Parse { line, column, message };
    match toks.next() {
        Some((_, "group")) => {}
        Some((c, t)) => return Err(err(c, format!("expected `group`, found `{t}`"))),
        None => return Err(err(1, "expected `group` line".into())),
    }
    let (column, name) = toks.next().ok_or_else(|| err(6, "missing group name".into()))?;
    if let Some((c, t)) = toks.next() {
        return Err(err(c, format!("unexpected token `{t}`")));
    }
    match name {
        "Z" => Ok(GroupContext::InfiniteCyclic),
        "Q" => Ok(GroupContext::Rational),
        _ => {
            let n = name
                .strip_prefix("Z/")
                .and_then(|n| n.parse::<i64>().ok())
                .ok_or_else(|| err(column, format!("unknown group `{name}`")))?;
            GroupContext::finite(n).map_err(|e| err(column, e.to_string()))
        }
    }
}

/// Reads an element file: a `group` line followed by one element per line.
/// Blank lines and `#` comments are skipped.
pub fn parse_element_file(text: &str) -> Result<(GroupContext, Vec<RingElement>)> {
    let mut ctx = None;
    let mut elements = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        match ctx {
            None => ctx = Some(parse_group_line(body, i + 1)?),
            Some(c) => elements.push(RingElement::parse(c, body, i + 1)?),
        }
    }
    let ctx = ctx.ok_or(Error::Parse { line: 1, column: 1, message: "missing `group` line".into() })?;
    Ok((ctx, elements))
}

/// Whitespace-separated tokens with their 1-based starting columns.
pub(crate) fn tokens_with_columns(text: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut pos = 0;
    text.split_whitespace().map(move |tok| {
        let start = pos + text[pos..].find(tok).unwrap_or(0);
        pos = start + tok.len();
        (text[..start].chars().count() + 1, tok)
    })
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "{c}@{e}")?;
        }
        Ok(())
    }
}

/// Greatest common divisor of integers, always nonnegative.
pub fn gcd_all<I: IntoIterator<Item = i64>>(values: I) -> i64 {
    values.into_iter().fold(0i64, |acc, v| acc.gcd(&v))
}

/// Generator of the subgroup of `Q` spanned by `values`: gcd of the
/// numerators over the lcm of the denominators.
pub fn rational_gcd<I: IntoIterator<Item = Rational64>>(values: I) -> Rational64 {
    let (num, den) = values.into_iter().fold((0i64, 1i64), |(n, d), v| (n.gcd(v.numer()), d.lcm(v.denom())));
    Rational64::new(num, den)
}

/// Generator of the intersection of the cyclic subgroups of `Q` generated by
/// nonnegative `a` and `b`.
pub fn rational_lcm(a: Rational64, b: Rational64) -> Rational64 {
    if a.is_zero() || b.is_zero() {
        return Rational64::zero();
    }
    let (a, b) = (a.abs(), b.abs());
    Rational64::new(a.numer().lcm(b.numer()), a.denom().gcd(b.denom()))
}
