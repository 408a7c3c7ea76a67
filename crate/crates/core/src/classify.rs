//! Classification procedures for Schur rings over cyclic-type groups.
//!
//! Over a torsion-free group every class `C` other than `{0}` generates a
//! cyclic subgroup `<C> = gZ`, and closure under freshman exponents forces
//! `C / g` to be `{1}`, `{-1}` or `{1, -1}`. A ring cannot mix the two shapes.
//! The window routines check these necessary conditions on a finite fragment
//! of `Z`; [`enumerate_schur_rings`] is an exhaustive search over `Z/n`.

use std::cmp::Reverse;
use std::collections::BTreeSet;
use std::fmt;

use num_rational::Rational64;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::partitions::{classes_from_labels, for_each_symmetric_partition};
use crate::ringcore::{gcd_all, rational_gcd, Exponent, GroupContext};
use crate::schurmod::{validate_partition, Partition, Universe};
use crate::schurring::{subgroup_intersection, SchurRing, SubgroupDescriptor};
use crate::verdict::{fmt_set, Verdict};

/// Largest window radius accepted by [`exhaustive_window_search`].
pub const MAX_SEARCH_RADIUS: i64 = 5;
/// Largest group order [`enumerate_schur_rings`] accepts without `force`.
pub const MAX_ENUMERATION_ORDER: i64 = 13;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShapeWitness {
    /// `C ∩ C^(m)` is neither empty nor `C` (in units of the class gcd).
    Freshman { multiplier: i64, intersection: Vec<i64> },
    /// The class survives every freshman test but `C / gcd(C)` is not
    /// `{1}`, `{-1}` or `{1, -1}`.
    NotGeneratorShape { generator: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassShapeVerdict {
    Singleton(i64),
    SymmetricPair(i64),
    Violation(ShapeWitness),
}

impl fmt::Display for ClassShapeVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassShapeVerdict::Singleton(a) => write!(f, "singleton {a}"),
            ClassShapeVerdict::SymmetricPair(a) => write!(f, "pair ±{a}"),
            ClassShapeVerdict::Violation(ShapeWitness::Freshman { multiplier, intersection }) => {
                let items: Vec<String> = intersection.iter().map(i64::to_string).collect();
                write!(f, "C ∩ C^({multiplier}) = {{{}}} is neither empty nor C", items.join(","))
            }
            ClassShapeVerdict::Violation(ShapeWitness::NotGeneratorShape { generator }) => {
                write!(f, "class generates <{generator}> but is not {{±{generator}}} or a singleton")
            }
        }
    }
}

/// Necessary shape of a non-identity class of a Schur ring over a
/// torsion-free cyclic group.
///
/// The class is divided by its gcd `g`; then for every `m` in `±C/g` the set
/// `C ∩ C^(m)` must be empty or all of `C` (freshman closure plus
/// primitivity), and what survives must be `{g}`, `{-g}` or `{g, -g}`.
pub fn check_class_shape(class: &[i64], torsion_free: bool) -> Result<ClassShapeVerdict> {
    if !torsion_free {
        return Err(Error::Unsupported("class-shape test needs a torsion-free group".into()));
    }
    if class.is_empty() {
        return Err(Error::Precondition("class is empty".into()));
    }
    if class.contains(&0) {
        return Err(Error::IdentityInClass);
    }
    let g = gcd_all(class.iter().copied());
    let reduced: BTreeSet<i64> = class.iter().map(|c| c / g).collect();

    let mut multipliers: Vec<i64> = reduced.iter().flat_map(|&m| [m, -m]).collect();
    multipliers.sort_by_key(|&m| (m.abs(), m < 0));
    multipliers.dedup();
    for m in multipliers {
        let intersection: Vec<i64> =
            reduced.iter().copied().filter(|&x| x % m == 0 && reduced.contains(&(x / m))).collect();
        if !intersection.is_empty() && intersection.len() != reduced.len() {
            return Ok(ClassShapeVerdict::Violation(ShapeWitness::Freshman { multiplier: m, intersection }));
        }
    }
    let shape: Vec<i64> = reduced.into_iter().collect();
    Ok(match shape.as_slice() {
        [1] | [-1] => ClassShapeVerdict::Singleton(g),
        [-1, 1] => ClassShapeVerdict::SymmetricPair(g),
        _ => ClassShapeVerdict::Violation(ShapeWitness::NotGeneratorShape { generator: g }),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassifyRule {
    StarClosure,
    ClassShape,
    ProductSplit,
    FreshmanSSet,
    MixedTypes,
}

impl ClassifyRule {
    pub fn name(&self) -> &'static str {
        match self {
            ClassifyRule::StarClosure => "star",
            ClassifyRule::ClassShape => "class-shape",
            ClassifyRule::ProductSplit => "product",
            ClassifyRule::FreshmanSSet => "freshman",
            ClassifyRule::MixedTypes => "mixed-types",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifyWitness {
    pub rule: ClassifyRule,
    pub classes: Vec<Vec<Exponent>>,
    pub message: String,
}

impl fmt::Display for ClassifyWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.rule.name(), self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassificationVerdict {
    GroupRingPattern,
    SymmetricPattern,
    Inconsistent(ClassifyWitness),
}

impl ClassificationVerdict {
    pub fn witness(&self) -> Option<&ClassifyWitness> {
        match self {
            ClassificationVerdict::Inconsistent(w) => Some(w),
            _ => None,
        }
    }
}

fn ints(class: &[i64]) -> Vec<Exponent> {
    class.iter().copied().map(Exponent::int).collect()
}

fn witness(rule: ClassifyRule, classes: &[&[i64]], message: String) -> ClassifyWitness {
    ClassifyWitness { rule, classes: classes.iter().map(|c| ints(c)).collect(), message }
}

fn int_set(class: &[i64]) -> String {
    fmt_set(&ints(class))
}

/// Partition of the window `[-radius, radius]`, as integer classes plus a
/// lookup from `e + radius` to class index.
struct WindowView<'a> {
    radius: i64,
    classes: &'a [Vec<i64>],
    label: &'a [usize],
}

impl WindowView<'_> {
    fn class_of(&self, e: i64) -> usize {
        self.label[(e + self.radius) as usize]
    }

    fn inside(&self, e: i64) -> bool {
        e.abs() <= self.radius
    }

    /// Star-closure, class shapes, in-window product splitting and freshman
    /// S-sets, in that order. `classes[0]` must be `{0}`.
    fn first_violation(&self) -> Option<ClassifyWitness> {
        for c in self.classes {
            let mut image: Vec<i64> = c.iter().map(|x| -x).collect();
            image.sort_unstable();
            let target = &self.classes[self.class_of(image[0])];
            if *target != image {
                return Some(witness(
                    ClassifyRule::StarClosure,
                    &[c],
                    format!("{}* = {} is not a class", int_set(c), int_set(&image)),
                ));
            }
        }

        for c in &self.classes[1..] {
            match check_class_shape(c, true) {
                Ok(ClassShapeVerdict::Violation(w)) => {
                    let v = ClassShapeVerdict::Violation(w);
                    return Some(witness(ClassifyRule::ClassShape, &[c], format!("class {}: {v}", int_set(c))));
                }
                Ok(_) => {}
                Err(e) => return Some(witness(ClassifyRule::ClassShape, &[c], e.to_string())),
            }
        }

        let width = (2 * self.radius + 1) as usize;
        let mut counts = vec![0u32; width];
        for (i, c) in self.classes.iter().enumerate() {
            for d in &self.classes[i..] {
                let escapes = c.iter().any(|x| d.iter().any(|y| !self.inside(x + y)));
                if escapes {
                    continue;
                }
                counts.iter_mut().for_each(|v| *v = 0);
                let mut support = BTreeSet::new();
                for x in c {
                    for y in d {
                        counts[(x + y + self.radius) as usize] += 1;
                        support.insert(x + y);
                    }
                }
                for &s in &support {
                    let e = &self.classes[self.class_of(s)];
                    let first = counts[(e[0] + self.radius) as usize];
                    if e.iter().any(|&x| counts[(x + self.radius) as usize] != first) {
                        let support: Vec<i64> = support.into_iter().collect();
                        return Some(witness(
                            ClassifyRule::ProductSplit,
                            &[c, d, e],
                            format!(
                                "product {}·{} = {} splits class {}",
                                int_set(c),
                                int_set(d),
                                int_set(&support),
                                int_set(e)
                            ),
                        ));
                    }
                }
            }
        }

        for c in &self.classes[1..] {
            for m in (-self.radius..=self.radius).filter(|&m| m != 0 && m != 1) {
                let image: BTreeSet<i64> = c.iter().map(|x| x * m).collect();
                if !image.iter().all(|&x| self.inside(x)) {
                    continue;
                }
                for &x in &image {
                    let e = &self.classes[self.class_of(x)];
                    if !e.iter().all(|y| image.contains(y)) {
                        let image: Vec<i64> = image.into_iter().collect();
                        return Some(witness(
                            ClassifyRule::FreshmanSSet,
                            &[c, e],
                            format!(
                                "{}^({m}) = {} is not a union of classes: it cuts {}",
                                int_set(c),
                                int_set(&image),
                                int_set(e)
                            ),
                        ));
                    }
                }
            }
        }
        None
    }
}

/// Type uniformity: non-identity classes are all singletons or all pairs.
fn mixed_types(classes: &[Vec<i64>]) -> Option<ClassifyWitness> {
    let single = classes.iter().skip(1).find(|c| c.len() == 1)?;
    let pair = classes.iter().skip(1).find(|c| c.len() == 2)?;
    Some(witness(
        ClassifyRule::MixedTypes,
        &[single, pair],
        format!("singleton class {} and pair class {} cannot coexist", int_set(single), int_set(pair)),
    ))
}

fn window_radius(p: &Partition) -> Result<i64> {
    if p.ctx() != GroupContext::InfiniteCyclic {
        return Err(Error::Precondition(format!("window classification needs group Z, got {}", p.ctx())));
    }
    match p.universe() {
        Universe::Window { lo, hi } if lo == -hi => Ok(hi),
        Universe::Window { lo, hi } => Err(Error::Precondition(format!("window {lo}..{hi} is not symmetric"))),
        _ => Err(Error::MissingWindow),
    }
}

/// Classifies a window fragment of a would-be Schur ring over `Z` as the
/// group-ring pattern or the symmetric pattern, or returns the first failed
/// necessary condition.
pub fn classify_window(p: &Partition) -> Result<ClassificationVerdict> {
    let radius = window_radius(p)?;
    if let Verdict::Reject(v) = validate_partition(p) {
        return Err(Error::InvalidPartition(v));
    }
    if p.class_of(Exponent::int(0)) != Some(&[Exponent::int(0)][..]) {
        return Err(Error::Precondition("identity {0} must be a class".into()));
    }
    // canonical order puts {0} first
    let classes: Vec<Vec<i64>> = p.classes().iter().map(|c| c.iter().map(Exponent::as_int).collect()).collect();
    let mut label = vec![0usize; (2 * radius + 1) as usize];
    for (i, c) in classes.iter().enumerate() {
        for &e in c {
            label[(e + radius) as usize] = i;
        }
    }
    let view = WindowView { radius, classes: &classes, label: &label };
    if let Some(w) = view.first_violation() {
        return Ok(ClassificationVerdict::Inconsistent(w));
    }
    if let Some(w) = mixed_types(&classes) {
        return Ok(ClassificationVerdict::Inconsistent(w));
    }
    Ok(if classes.iter().skip(1).any(|c| c.len() == 2) {
        ClassificationVerdict::SymmetricPattern
    } else {
        ClassificationVerdict::GroupRingPattern
    })
}

/// Restrictions to `[-core, core]` of every partition of `[-radius, radius]`
/// with `{0}` a class that passes the window necessary conditions (type
/// uniformity excluded). Results are distinct and in canonical order.
pub fn exhaustive_window_search(radius: i64, core: i64) -> Result<Vec<Partition>> {
    if !(0..=MAX_SEARCH_RADIUS).contains(&radius) {
        return Err(Error::LimitExceeded(format!("window radius {radius} outside 0..={MAX_SEARCH_RADIUS}")));
    }
    if !(0..=radius).contains(&core) {
        return Err(Error::LimitExceeded(format!("core radius {core} outside 0..={radius}")));
    }
    // ground set 1, -1, 2, -2, ...; negation swaps neighbours
    let elements: Vec<i64> = (1..=radius).flat_map(|a| [a, -a]).collect();
    let neg: Vec<usize> = (0..elements.len()).map(|i| i ^ 1).collect();
    let mut label = vec![0usize; (2 * radius + 1) as usize];
    let mut cores = BTreeSet::new();
    for_each_symmetric_partition(&neg, |labels, count| {
        let mut classes = vec![vec![0i64]];
        for class in classes_from_labels(labels, count) {
            let mut c: Vec<i64> = class.into_iter().map(|i| elements[i]).collect();
            c.sort_unstable();
            classes.push(c);
        }
        for (i, c) in classes.iter().enumerate() {
            for &e in c {
                label[(e + radius) as usize] = i;
            }
        }
        let view = WindowView { radius, classes: &classes, label: &label };
        if view.first_violation().is_none() {
            let restricted: BTreeSet<Vec<i64>> = classes
                .iter()
                .map(|c| c.iter().copied().filter(|e| e.abs() <= core).collect::<Vec<_>>())
                .filter(|c| !c.is_empty())
                .collect();
            cores.insert(restricted);
        }
    });
    let mut out: Vec<Partition> = cores
        .into_iter()
        .map(|classes| {
            let classes = classes.into_iter().map(|c| ints(&c)).collect();
            Partition::new(GroupContext::InfiniteCyclic, Universe::Window { lo: -core, hi: core }, classes)
        })
        .collect();
    sort_canonical(&mut out);
    Ok(out)
}

/// Most classes first, then by text form.
fn sort_canonical(partitions: &mut [Partition]) {
    partitions.sort_by_cached_key(|p| (Reverse(p.len()), p.to_string()));
}

/// Classifies a negation-closed family of finite classes of nonzero
/// rationals as singletons, `±` pairs, or an inconsistent mixture.
pub fn classify_rational(classes: &[Vec<Rational64>]) -> Result<ClassificationVerdict> {
    let ctx = GroupContext::Rational;
    let mut seen = BTreeSet::new();
    for class in classes {
        if class.is_empty() {
            return Err(Error::Precondition("empty class".into()));
        }
        for &x in class {
            if x == Rational64::from_integer(0) {
                return Err(Error::IdentityInClass);
            }
            if !seen.insert(x) {
                return Err(Error::Precondition(format!("classes overlap at {x}")));
            }
        }
    }
    let family = Partition::new(
        ctx,
        Universe::ClassList,
        classes.iter().map(|c| c.iter().map(|&x| Exponent::ratio(*x.numer(), *x.denom())).collect()).collect(),
    );
    for class in family.classes() {
        let mut image: Vec<Exponent> = class.iter().map(|&e| ctx.neg(e)).collect();
        image.sort();
        if family.find_class(&image).is_none() {
            return Err(Error::NotNegationClosed(format!("{}* = {} is not a class", fmt_set(class), fmt_set(&image))));
        }
    }

    let mut singleton: Option<(&[Exponent], Rational64)> = None;
    let mut pair: Option<(&[Exponent], Rational64)> = None;
    for class in family.classes() {
        let g = rational_gcd(class.iter().map(|e| e.value()));
        let reduced: Vec<i64> = class.iter().map(|e| (e.value() / g).to_integer()).collect();
        match check_class_shape(&reduced, true)? {
            ClassShapeVerdict::Singleton(_) => {
                singleton.get_or_insert((class, g));
            }
            ClassShapeVerdict::SymmetricPair(_) => {
                pair.get_or_insert((class, g));
            }
            v @ ClassShapeVerdict::Violation(_) => {
                return Ok(ClassificationVerdict::Inconsistent(ClassifyWitness {
                    rule: ClassifyRule::ClassShape,
                    classes: vec![class.to_vec()],
                    message: format!("class {} (in units of {g}): {v}", fmt_set(class)),
                }));
            }
        }
    }
    Ok(match (singleton, pair) {
        (Some((s, hs)), Some((p, hp))) => {
            let h = SubgroupDescriptor::new(ctx, hs)?;
            let k = SubgroupDescriptor::new(ctx, hp)?;
            let x = subgroup_intersection(&h, &k)?.generator();
            ClassificationVerdict::Inconsistent(ClassifyWitness {
                rule: ClassifyRule::MixedTypes,
                classes: vec![s.to_vec(), p.to_vec()],
                message: format!(
                    "case (ii): {} is a singleton class and {} a pair class; x = {x} lies in <{hs}> ∩ <{hp}> = <{x}>, \
                     so both {{x}} and {{x,-x}} would be classes",
                    fmt_set(s),
                    fmt_set(p)
                ),
            })
        }
        (None, Some(_)) => ClassificationVerdict::SymmetricPattern,
        _ => ClassificationVerdict::GroupRingPattern,
    })
}

/// Every Schur ring over `Z/n`, most classes first.
///
/// Candidates are negation-invariant partitions of `1..n` (plus `{0}`),
/// filtered by product splitting; each survivor is re-verified exactly.
pub fn enumerate_schur_rings(n: i64, force: bool) -> Result<Vec<SchurRing>> {
    let ctx = GroupContext::finite(n)?;
    if n > MAX_ENUMERATION_ORDER && !force {
        return Err(Error::LimitExceeded(format!("order {n} exceeds {MAX_ENUMERATION_ORDER}; pass force to override")));
    }
    // ground set 1, n-1, 2, n-2, ... so each element sits next to its inverse
    let mut elements = Vec::new();
    for a in 1..=n / 2 {
        elements.push(a);
        if n - a != a {
            elements.push(n - a);
        }
    }
    let position = |x: i64| elements.iter().position(|&e| e == x).expect("element listed");
    let neg: Vec<usize> = elements.iter().map(|&x| position((n - x) % n)).collect();

    let mut counts = vec![0u32; n as usize];
    let mut found = BTreeSet::new();
    for_each_symmetric_partition(&neg, |labels, count| {
        let mut classes = vec![vec![0usize]];
        for class in classes_from_labels(labels, count) {
            classes.push(class.into_iter().map(|i| elements[i] as usize).collect());
        }
        if products_split(&classes, &mut counts) {
            let mut key: Vec<Vec<usize>> = classes
                .into_iter()
                .map(|mut c| {
                    c.sort_unstable();
                    c
                })
                .collect();
            key.sort();
            found.insert(key);
        }
    });

    let mut rings = Vec::with_capacity(found.len());
    for classes in found {
        let classes = classes.into_iter().map(|c| c.into_iter().map(|e| Exponent::int(e as i64)).collect()).collect();
        rings.push(SchurRing::new(Partition::new(ctx, Universe::WholeGroup, classes))?);
    }
    rings.sort_by_cached_key(|r| (Reverse(r.partition().len()), r.partition().to_string()));
    Ok(rings)
}

/// True when every product of class sums is constant on every class.
fn products_split(classes: &[Vec<usize>], counts: &mut [u32]) -> bool {
    let n = counts.len();
    for (i, c) in classes.iter().enumerate() {
        for d in &classes[i..] {
            counts.iter_mut().for_each(|v| *v = 0);
            for &x in c {
                for &y in d {
                    counts[(x + y) % n] += 1;
                }
            }
            for e in classes {
                let first = counts[e[0]];
                if e[1..].iter().any(|&x| counts[x] != first) {
                    return false;
                }
            }
        }
    }
    true
}
