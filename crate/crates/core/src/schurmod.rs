//! Schur modules: finite-support partitions and the spans of their class sums.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::ringcore::{parse_group_line, tokens_with_columns, Exponent, GroupContext, RingElement};
use crate::verdict::{fmt_set, Rule, Verdict, Violation};

/// The part of the group a partition is required to cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Universe {
    /// Every element of a finite group.
    WholeGroup,
    /// The integers `lo..=hi` of the infinite cyclic group.
    Window { lo: i64, hi: i64 },
    /// Only the listed classes; no covering obligation.
    ClassList,
}

/// A set of disjoint finite classes of exponents, kept in canonical order.
///
/// Construction only normalizes; use [`validate_partition`] to check the
/// partition invariants.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    ctx: GroupContext,
    universe: Universe,
    classes: Vec<Vec<Exponent>>,
    index: BTreeMap<Exponent, usize>,
}

/// Sort key for canonical class order: smallest absolute value, classes
/// holding the positive representative first, then size, then contents.
fn class_key(class: &[Exponent]) -> (num_rational::Rational64, bool, usize, Vec<Exponent>) {
    let min_abs = class.iter().map(|e| e.value().abs()).min().unwrap_or_default();
    let has_positive = class.iter().any(|e| e.value() == min_abs);
    (min_abs, !has_positive, class.len(), class.to_vec())
}

impl Partition {
    pub fn new(ctx: GroupContext, universe: Universe, classes: Vec<Vec<Exponent>>) -> Self {
        let mut classes: Vec<Vec<Exponent>> = classes
            .into_iter()
            .map(|mut c| {
                c.sort();
                c.dedup();
                c
            })
            .collect();
        classes.sort_by_cached_key(|c| class_key(c));
        let mut index = BTreeMap::new();
        for (i, class) in classes.iter().enumerate() {
            for e in class {
                index.entry(*e).or_insert(i);
            }
        }
        Partition { ctx, universe, classes, index }
    }

    /// Builds a partition from integer exponents, normalized in `ctx`.
    pub fn from_ints(ctx: GroupContext, universe: Universe, classes: &[&[i64]]) -> Self {
        let classes = classes.iter().map(|c| c.iter().map(|&e| ctx.int(e)).collect()).collect();
        Partition::new(ctx, universe, classes)
    }

    pub fn ctx(&self) -> GroupContext {
        self.ctx
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn classes(&self) -> &[Vec<Exponent>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class(&self, i: usize) -> Result<&[Exponent]> {
        self.classes.get(i).map(Vec::as_slice).ok_or(Error::ClassIndex { index: i, len: self.classes.len() })
    }

    /// Index of the class containing `g`, if any.
    pub fn class_index(&self, g: Exponent) -> Option<usize> {
        self.index.get(&g).copied()
    }

    /// The class containing `g`, or `None` outside the universe.
    pub fn class_of(&self, g: Exponent) -> Option<&[Exponent]> {
        self.class_index(g).map(|i| self.classes[i].as_slice())
    }

    /// Index of the class equal to `set` (as a sorted slice).
    pub fn find_class(&self, set: &[Exponent]) -> Option<usize> {
        let first = set.first()?;
        let i = self.class_index(*first)?;
        (self.classes[i] == set).then_some(i)
    }

    pub fn in_universe(&self, g: Exponent) -> bool {
        match self.universe {
            Universe::WholeGroup => self.ctx.order().is_some() && self.ctx.contains(g),
            Universe::Window { lo, hi } => g.is_integer() && (lo..=hi).contains(&g.as_int()),
            Universe::ClassList => self.index.contains_key(&g),
        }
    }

    /// All universe elements, ascending; `None` when the universe is infinite.
    pub fn universe_elements(&self) -> Option<Vec<Exponent>> {
        match self.universe {
            Universe::WholeGroup => self.ctx.order().map(|n| (0..n).map(Exponent::int).collect()),
            Universe::Window { lo, hi } => Some((lo..=hi).map(Exponent::int).collect()),
            Universe::ClassList => Some(self.index.keys().copied().collect()),
        }
    }

    pub fn class_sum(&self, i: usize) -> RingElement {
        RingElement::simple(self.ctx, self.classes[i].iter().copied())
    }

    pub fn class_sums(&self) -> Vec<RingElement> {
        (0..self.classes.len()).map(|i| self.class_sum(i)).collect()
    }

    /// Same classes, different universe declaration.
    pub fn with_universe(&self, universe: Universe) -> Partition {
        Partition::new(self.ctx, universe, self.classes.clone())
    }

    pub fn class_sets(&self) -> BTreeSet<Vec<Exponent>> {
        self.classes.iter().cloned().collect()
    }

    /// Parses the partition text format. Blank lines and `#` comments are
    /// skipped.
    pub fn parse(text: &str) -> Result<Partition> {
        let mut ctx = None;
        let mut window = None;
        let mut classes = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("");
            let mut toks = tokens_with_columns(body).peekable();
            let Some(&(col, head)) = toks.peek() else {
                continue;
            };
            let err = |column: usize, message: String| Error::Parse { line, column, message };
            let Some(ctx) = ctx else {
                ctx = Some(parse_group_line(body, line)?);
                continue;
            };
            toks.next();
            match head {
                "window" => {
                    if ctx != GroupContext::InfiniteCyclic {
                        return Err(err(col, format!("window declared for group {ctx}")));
                    }
                    if window.is_some() || !classes.is_empty() {
                        return Err(err(col, "window must directly follow the group line".into()));
                    }
                    let mut bound = |name: &str| -> Result<i64> {
                        let (c, t) = toks.next().ok_or_else(|| err(col, format!("missing {name}")))?;
                        t.parse().map_err(|_| err(c, format!("malformed {name} `{t}`")))
                    };
                    let lo = bound("lower bound")?;
                    let hi = bound("upper bound")?;
                    if lo > hi {
                        return Err(err(col, format!("empty window {lo}..{hi}")));
                    }
                    if let Some((c, t)) = toks.next() {
                        return Err(err(c, format!("unexpected token `{t}`")));
                    }
                    window = Some(Universe::Window { lo, hi });
                }
                "class" => {
                    let mut class = Vec::new();
                    for (c, t) in toks {
                        class.push(ctx.parse_exponent(t).map_err(|m| err(c, m))?);
                    }
                    if class.is_empty() {
                        return Err(err(col, "empty class".into()));
                    }
                    classes.push(class);
                }
                other => return Err(err(col, format!("unknown directive `{other}`"))),
            }
        }
        let ctx = ctx.ok_or(Error::Parse { line: 1, column: 1, message: "missing `group` line".into() })?;
        let universe = match (ctx, window) {
            (GroupContext::FiniteCyclic(_), _) => Universe::WholeGroup,
            (_, Some(w)) => w,
            (_, None) => Universe::ClassList,
        };
        Ok(Partition::new(ctx, universe, classes))
    }
}

impl fmt::Display for Partition {
    /// Deterministic partition text: group line, optional window, classes in
    /// canonical order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "group {}", self.ctx)?;
        if let Universe::Window { lo, hi } = self.universe {
            writeln!(f, "window {lo} {hi}")?;
        }
        for class in &self.classes {
            write!(f, "class")?;
            for e in class {
                write!(f, " {e}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub fn validate_partition(p: &Partition) -> Verdict {
    if p.universe == Universe::WholeGroup && p.ctx.order().is_none() {
        return Verdict::Reject(Violation::new(
            Rule::Uncovered,
            format!("group {} cannot be covered by a stored partition", p.ctx),
        ));
    }
    if matches!(p.universe, Universe::Window { .. }) && p.ctx != GroupContext::InfiniteCyclic {
        return Verdict::Reject(Violation::new(
            Rule::OutsideUniverse,
            format!("windows are only defined over Z, not {}", p.ctx),
        ));
    }
    let mut seen: BTreeMap<Exponent, usize> = BTreeMap::new();
    for (i, class) in p.classes.iter().enumerate() {
        if class.is_empty() {
            return Verdict::Reject(
                Violation::new(Rule::EmptyClass, format!("class {i} is empty")).with_classes(vec![i]),
            );
        }
        for &e in class {
            if !p.ctx.contains(e) {
                return Verdict::Reject(
                    Violation::new(Rule::InvalidExponent, format!("{e} is not an element of {}", p.ctx))
                        .with_classes(vec![i])
                        .with_elements(vec![e]),
                );
            }
            if !p.in_universe(e) {
                return Verdict::Reject(
                    Violation::new(Rule::OutsideUniverse, format!("{e} lies outside the universe"))
                        .with_classes(vec![i])
                        .with_elements(vec![e]),
                );
            }
            if let Some(&j) = seen.get(&e) {
                return Verdict::Reject(
                    Violation::new(
                        Rule::Overlap,
                        format!("classes {} and {} overlap at {e}", fmt_set(&p.classes[j]), fmt_set(class)),
                    )
                    .with_classes(vec![j, i])
                    .with_elements(vec![e]),
                );
            }
            seen.insert(e, i);
        }
    }
    if let Some(all) = p.universe_elements() {
        let missing: Vec<Exponent> = all.into_iter().filter(|e| !seen.contains_key(e)).collect();
        if !missing.is_empty() {
            return Verdict::Reject(
                Violation::new(Rule::Uncovered, format!("{} not covered", fmt_set(&missing))).with_elements(missing),
            );
        }
    }
    Verdict::Accept
}

/// True iff `set` is a union of classes of `p`.
pub fn is_sset(p: &Partition, set: &BTreeSet<Exponent>) -> Result<bool> {
    for &e in set {
        if !p.in_universe(e) {
            return Err(Error::OutsideUniverse(e.to_string()));
        }
    }
    Ok(set.iter().all(|&e| match p.class_of(e) {
        Some(class) => class.iter().all(|x| set.contains(x)),
        None => false,
    }))
}

/// True iff `alpha` is constant on every class and vanishes off the universe.
pub fn membership_test(p: &Partition, alpha: &RingElement) -> bool {
    if alpha.ctx() != p.ctx {
        return false;
    }
    let mut checked = BTreeSet::new();
    for (e, c) in alpha.terms() {
        let Some(i) = p.class_index(*e) else {
            return false;
        };
        if !checked.insert(i) {
            continue;
        }
        if p.classes[i].iter().any(|x| alpha.terms().get(x) != Some(c)) {
            return false;
        }
    }
    true
}

/// For a simple quantity in the span: true iff its support is one class.
pub fn is_primitive(p: &Partition, alpha: &RingElement) -> Result<bool> {
    if !alpha.is_simple() {
        return Err(Error::NotSimple);
    }
    if !membership_test(p, alpha) {
        return Err(Error::NotInSpan);
    }
    let support = alpha.support();
    Ok(match support.first() {
        Some(&g) => p.class_of(g).map(|c| c.len() == support.len()).unwrap_or(false),
        None => false,
    })
}

/// Primitive partition of the Hadamard-closed span generated by `generators`.
///
/// Exponents are grouped by which coefficient complexes `K(alpha, c)` they
/// belong to; the result covers exactly the union of the generator supports.
pub fn decompose_span(generators: &[RingElement]) -> Result<Partition> {
    let first =
        generators.first().ok_or_else(|| Error::Precondition("span query needs at least one generator".into()))?;
    let ctx = first.ctx();
    for g in generators {
        if g.ctx() != ctx {
            return Err(Error::ContextMismatch(ctx.to_string(), g.ctx().to_string()));
        }
        if g.is_zero() {
            return Err(Error::ZeroElement);
        }
    }

    let mut signatures: BTreeMap<Exponent, Vec<usize>> = BTreeMap::new();
    let mut complex_id = 0;
    for g in generators {
        for c in g.coefficient_values() {
            for e in g.coefficient_complex(&c)? {
                signatures.entry(e).or_default().push(complex_id);
            }
            complex_id += 1;
        }
    }
    let mut groups: BTreeMap<Vec<usize>, Vec<Exponent>> = BTreeMap::new();
    for (e, sig) in signatures {
        groups.entry(sig).or_default().push(e);
    }
    let partition = Partition::new(ctx, Universe::ClassList, groups.into_values().collect());

    for (i, g) in generators.iter().enumerate() {
        if !membership_test(&partition, g) {
            return Err(Error::NotHadamardClosed(format!("generator {i} is not constant on the refined classes")));
        }
    }
    for i in 0..generators.len() {
        for j in i..generators.len() {
            let product = generators[i].hadamard(&generators[j])?;
            if !membership_test(&partition, &product) {
                return Err(Error::NotHadamardClosed(format!("generator {i} ∘ generator {j} = {product}")));
            }
        }
    }
    Ok(partition)
}
