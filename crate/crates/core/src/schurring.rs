//! Schur rings over cyclic groups and over window / class-list fragments of
//! infinite ones.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::RwLock;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::ringcore::{gcd_all, rational_gcd, rational_lcm, Coefficient, Exponent, GroupContext, RingElement};
use crate::schurmod::{membership_test, validate_partition, Partition, Universe};
use crate::verdict::{fmt_set, Rule, Verdict, Violation};

/// Structure constants `lambda_CDE` of one class pair, keyed by the class
/// index of `E`. Only nonzero entries are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureTable {
    pub c: usize,
    pub d: usize,
    pub entries: BTreeMap<usize, Coefficient>,
}

impl StructureTable {
    pub fn lambda(&self, e: usize) -> Coefficient {
        self.entries.get(&e).cloned().unwrap_or_else(Coefficient::zero)
    }

    /// `(sum_E lambda_CDE |E|, |C| |D|)`; the two agree for any valid table.
    pub fn conservation(&self, p: &Partition) -> (Coefficient, Coefficient) {
        let sum = self
            .entries
            .iter()
            .map(|(e, l)| l * Coefficient::from_integer(p.classes()[*e].len().into()))
            .fold(Coefficient::zero(), |a, b| a + b);
        let expected = p.classes()[self.c].len() * p.classes()[self.d].len();
        (sum, Coefficient::from_integer(expected.into()))
    }

    /// `lambda <C> <D> <E> <value>` lines.
    pub fn to_lines(&self) -> String {
        self.entries.iter().map(|(e, l)| format!("lambda {} {} {} {}\n", self.c, self.d, e, l)).collect()
    }
}

/// A verified Schur ring, or a fragment of one when the universe is a window
/// or a class list.
pub struct SchurRing {
    partition: Partition,
    fragment: bool,
    cache: RwLock<HashMap<(usize, usize), StructureTable>>,
}

impl SchurRing {
    /// Validates and verifies `partition`.
    pub fn new(partition: Partition) -> Result<SchurRing> {
        if let Verdict::Reject(v) = validate_partition(&partition) {
            return Err(Error::InvalidPartition(v));
        }
        match verify_schur_ring(&partition) {
            Verdict::Reject(v) => Err(Error::NotSchurRing(v)),
            verdict => Ok(SchurRing {
                partition,
                fragment: verdict == Verdict::AcceptFragment,
                cache: RwLock::new(HashMap::new()),
            }),
        }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn ctx(&self) -> GroupContext {
        self.partition.ctx()
    }

    pub fn is_fragment(&self) -> bool {
        self.fragment
    }

    /// Structure constants of `C̄ · D̄`, computed on first request.
    pub fn structure_constants(&self, c: usize, d: usize) -> Result<StructureTable> {
        let key = (c.min(d), c.max(d));
        if let Some(t) = self.cache.read().expect("cache poisoned").get(&key) {
            return Ok(StructureTable { c, d, entries: t.entries.clone() });
        }
        let table = compute_structure_constants(&self.partition, c, d)?;
        self.cache
            .write()
            .expect("cache poisoned")
            .insert(key, StructureTable { c: key.0, d: key.1, entries: table.entries.clone() });
        Ok(table)
    }
}

impl Clone for SchurRing {
    fn clone(&self) -> Self {
        SchurRing {
            partition: self.partition.clone(),
            fragment: self.fragment,
            cache: RwLock::new(self.cache.read().expect("cache poisoned").clone()),
        }
    }
}

impl fmt::Debug for SchurRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SchurRing").field("partition", &self.partition).field("fragment", &self.fragment).finish()
    }
}

impl PartialEq for SchurRing {
    fn eq(&self, other: &Self) -> bool {
        self.partition == other.partition
    }
}

/// Multiset of exponents of `C̄ · D̄` as counts.
fn product_counts(p: &Partition, c: usize, d: usize) -> BTreeMap<Exponent, u64> {
    let ctx = p.ctx();
    let mut counts = BTreeMap::new();
    for &x in &p.classes()[c] {
        for &y in &p.classes()[d] {
            *counts.entry(ctx.add(x, y)).or_insert(0) += 1;
        }
    }
    counts
}

/// First class on which `counts` is not constant, with the two disagreeing
/// elements.
fn split_class(p: &Partition, counts: &BTreeMap<Exponent, u64>) -> Option<(usize, Exponent, Exponent)> {
    let mut seen = BTreeSet::new();
    for &g in counts.keys() {
        let i = p.class_index(g)?;
        if !seen.insert(i) {
            continue;
        }
        let class = &p.classes()[i];
        let first = counts.get(&class[0]).copied().unwrap_or(0);
        if let Some(&bad) = class.iter().find(|x| counts.get(x).copied().unwrap_or(0) != first) {
            return Some((i, class[0], bad));
        }
    }
    None
}

fn compute_structure_constants(p: &Partition, c: usize, d: usize) -> Result<StructureTable> {
    p.class(c)?;
    p.class(d)?;
    let counts = product_counts(p, c, d);
    if counts.keys().any(|&g| !p.in_universe(g)) {
        return Err(Error::ProductEscapesUniverse { c, d });
    }
    if let Some((e, a, b)) = split_class(p, &counts) {
        return Err(Error::SplitFailure {
            c,
            d,
            detail: format!(
                "class {} has coefficients {} at {a} and {} at {b}",
                e,
                counts.get(&a).copied().unwrap_or(0),
                counts.get(&b).copied().unwrap_or(0)
            ),
        });
    }
    let mut entries = BTreeMap::new();
    for (g, n) in counts {
        let e = p.class_index(g).expect("checked above");
        entries.entry(e).or_insert_with(|| Coefficient::from_integer(n.into()));
    }
    Ok(StructureTable { c, d, entries })
}

/// Checks the Schur-ring axioms: identity singleton, star-closure of the
/// class family, and splitting of every checkable class-sum product.
///
/// Window and class-list partitions can only be checked where products stay
/// inside the universe, so they are accepted as fragments at best.
pub fn verify_schur_ring(p: &Partition) -> Verdict {
    if let v @ Verdict::Reject(_) = validate_partition(p) {
        return v;
    }
    let ctx = p.ctx();
    let zero = ctx.identity();
    match p.class_of(zero) {
        Some(c) if c.len() == 1 => {}
        other => {
            let msg = match other {
                Some(c) => format!("identity lies in {}", fmt_set(c)),
                None => "identity 0 is not in any class".to_string(),
            };
            return Verdict::Reject(Violation::new(Rule::IdentityClass, msg).with_elements(vec![zero]));
        }
    }

    for (i, class) in p.classes().iter().enumerate() {
        let mut image: Vec<Exponent> = class.iter().map(|&x| ctx.neg(x)).collect();
        image.sort();
        if image.iter().any(|&x| p.in_universe(x)) && p.find_class(&image).is_none() {
            let offender = image.iter().copied().find(|&x| p.class_of(x).is_none_or(|c| c != image.as_slice()));
            return Verdict::Reject(
                Violation::new(Rule::StarClosure, format!("{}* = {} is not a class", fmt_set(class), fmt_set(&image)))
                    .with_classes(vec![i])
                    .with_elements(offender.into_iter().collect()),
            );
        }
    }

    for i in 0..p.len() {
        for j in i..p.len() {
            let counts = product_counts(p, i, j);
            if counts.keys().any(|&g| !p.in_universe(g)) {
                continue;
            }
            if let Some((e, _, bad)) = split_class(p, &counts) {
                let cl = p.classes();
                return Verdict::Reject(
                    Violation::new(
                        Rule::ProductSplit,
                        format!(
                            "product {}·{} = {} splits class {}",
                            fmt_set(&cl[i]),
                            fmt_set(&cl[j]),
                            fmt_set(counts.keys()),
                            fmt_set(&cl[e])
                        ),
                    )
                    .with_classes(vec![i, j, e])
                    .with_elements(vec![bad]),
                );
            }
        }
    }
    if p.universe() == Universe::WholeGroup {
        Verdict::Accept
    } else {
        Verdict::AcceptFragment
    }
}

/// Orbits of `Z/n` under multiplication by the subgroup of units generated
/// by `multipliers`.
pub fn orbit_ring(n: i64, multipliers: &[i64]) -> Result<SchurRing> {
    let ctx = GroupContext::finite(n)?;
    let units: Vec<i64> = multipliers.iter().map(|m| m.rem_euclid(n)).collect();
    for (&m, &u) in multipliers.iter().zip(&units) {
        if u.gcd(&n) != 1 {
            return Err(Error::NonUnitMultiplier { multiplier: m, n });
        }
    }
    let mut seen = vec![false; n as usize];
    let mut classes = Vec::new();
    for start in 0..n {
        if seen[start as usize] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start as usize] = true;
        let mut k = 0;
        while k < orbit.len() {
            let x = orbit[k];
            for &u in &units {
                let y = (x * u).rem_euclid(n);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    orbit.push(y);
                }
            }
            k += 1;
        }
        classes.push(orbit.into_iter().map(Exponent::int).collect());
    }
    SchurRing::new(Partition::new(ctx, Universe::WholeGroup, classes))
}

/// Classes `{g, g^-1}` over `Z/n` or a symmetric window of `Z`.
pub fn symmetric_ring(ctx: GroupContext, universe: Universe) -> Result<SchurRing> {
    let elements: Vec<Exponent> = match (ctx, universe) {
        (GroupContext::FiniteCyclic(n), Universe::WholeGroup) => (0..n).map(Exponent::int).collect(),
        (GroupContext::InfiniteCyclic, Universe::Window { lo, hi }) if lo == -hi => {
            (lo..=hi).map(Exponent::int).collect()
        }
        (GroupContext::InfiniteCyclic, Universe::Window { lo, hi }) => {
            return Err(Error::Precondition(format!("window {lo}..{hi} is not symmetric")));
        }
        _ => {
            return Err(Error::Precondition(format!(
                "symmetric ring over {ctx} needs a whole finite group or a window; use symmetric_ring_from"
            )));
        }
    };
    SchurRing::new(Partition::new(ctx, universe, symmetric_classes(ctx, &elements)))
}

/// Symmetric-ring fragment over the listed elements (and their inverses).
pub fn symmetric_ring_from(ctx: GroupContext, elements: &[Exponent]) -> Result<SchurRing> {
    let mut all: Vec<Exponent> = vec![ctx.identity()];
    all.extend_from_slice(elements);
    SchurRing::new(Partition::new(ctx, Universe::ClassList, symmetric_classes(ctx, &all)))
}

fn symmetric_classes(ctx: GroupContext, elements: &[Exponent]) -> Vec<Vec<Exponent>> {
    let mut done = BTreeSet::new();
    let mut classes = Vec::new();
    for &g in elements {
        if done.contains(&g) {
            continue;
        }
        let inv = ctx.neg(g);
        done.insert(g);
        done.insert(inv);
        classes.push(if inv == g { vec![g] } else { vec![g, inv] });
    }
    classes
}

/// `{0}` and the rest of a finite group.
pub fn trivial_ring(ctx: GroupContext) -> Result<SchurRing> {
    let n = ctx.order().ok_or(Error::InfiniteTrivialClass)?;
    let mut classes = vec![vec![Exponent::int(0)]];
    if n > 1 {
        classes.push((1..n).map(Exponent::int).collect());
    }
    SchurRing::new(Partition::new(ctx, Universe::WholeGroup, classes))
}

/// Dot product of rings over `Z/m` and `Z/k` with `gcd(m, k) = 1`, realized
/// over `Z/mk` through the residue pairing.
pub fn tensor_ring(r1: &SchurRing, r2: &SchurRing) -> Result<SchurRing> {
    let whole = |r: &SchurRing| match (r.ctx(), r.partition().universe()) {
        (GroupContext::FiniteCyclic(n), Universe::WholeGroup) => Ok(n),
        (ctx, _) => Err(Error::Precondition(format!("tensor factors must be whole finite groups, got {ctx}"))),
    };
    let (m, k) = (whole(r1)?, whole(r2)?);
    if m.gcd(&k) != 1 {
        return Err(Error::TensorNotCoprime { m, k });
    }
    let n = m * k;
    let mut crt = vec![vec![0i64; k as usize]; m as usize];
    for x in 0..n {
        crt[(x % m) as usize][(x % k) as usize] = x;
    }
    let mut classes = Vec::new();
    for c in r1.partition().classes() {
        for d in r2.partition().classes() {
            let class = c
                .iter()
                .flat_map(|a| d.iter().map(move |b| (a.as_int(), b.as_int())))
                .map(|(a, b)| Exponent::int(crt[a as usize][b as usize]))
                .collect();
            classes.push(class);
        }
    }
    SchurRing::new(Partition::new(GroupContext::finite(n)?, Universe::WholeGroup, classes))
}

/// A cyclic subgroup `<generator>`.
///
/// Finite groups: `1 <= generator <= n` divides `n`, with `n` giving the
/// trivial subgroup. Torsion-free groups: `generator >= 0`, zero giving the
/// trivial subgroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SubgroupDescriptor {
    ctx: GroupContext,
    generator: Rational64,
}

impl SubgroupDescriptor {
    pub fn new(ctx: GroupContext, generator: Rational64) -> Result<Self> {
        let generator = match ctx {
            GroupContext::FiniteCyclic(n) => {
                if !generator.is_integer() {
                    return Err(Error::InvalidExponent { exponent: generator.to_string(), context: ctx.to_string() });
                }
                Rational64::from_integer(generator.to_integer().gcd(&n))
            }
            GroupContext::InfiniteCyclic if !generator.is_integer() => {
                return Err(Error::InvalidExponent { exponent: generator.to_string(), context: ctx.to_string() });
            }
            _ => generator.abs(),
        };
        Ok(SubgroupDescriptor { ctx, generator })
    }

    pub fn whole(ctx: GroupContext) -> Result<Self> {
        match ctx {
            GroupContext::Rational => Err(Error::Precondition("Q is not cyclic".into())),
            _ => Self::new(ctx, Rational64::from_integer(1)),
        }
    }

    pub fn trivial(ctx: GroupContext) -> Self {
        let generator = match ctx {
            GroupContext::FiniteCyclic(n) => Rational64::from_integer(n),
            _ => Rational64::zero(),
        };
        SubgroupDescriptor { ctx, generator }
    }

    pub fn ctx(&self) -> GroupContext {
        self.ctx
    }

    pub fn generator(&self) -> Rational64 {
        self.generator
    }

    pub fn is_trivial(&self) -> bool {
        match self.ctx {
            GroupContext::FiniteCyclic(n) => self.generator == Rational64::from_integer(n),
            _ => self.generator.is_zero(),
        }
    }

    pub fn contains(&self, e: Exponent) -> bool {
        if self.generator.is_zero() {
            return e.is_zero();
        }
        (e.value() / self.generator).is_integer()
    }

    /// Order of the subgroup in a finite context.
    pub fn order(&self) -> Option<i64> {
        self.ctx.order().map(|n| n / self.generator.to_integer())
    }

    /// Elements of a finite subgroup, ascending.
    pub fn elements(&self) -> Option<Vec<Exponent>> {
        let n = self.ctx.order()?;
        let d = self.generator.to_integer();
        Some((0..n).step_by(d as usize).map(Exponent::int).collect())
    }
}

impl fmt::Display for SubgroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}> in {}", self.generator, self.ctx)
    }
}

/// First stored class that meets `h` without lying inside it.
pub fn s_subgroup_violation(p: &Partition, h: &SubgroupDescriptor) -> Option<usize> {
    p.classes().iter().position(|class| {
        let inside = class.iter().filter(|&&e| h.contains(e)).count();
        inside != 0 && inside != class.len()
    })
}

fn require_s_subgroup(p: &Partition, h: &SubgroupDescriptor) -> Result<()> {
    match s_subgroup_violation(p, h) {
        Some(i) => Err(Error::NotSSubgroup(format!("{h}: class {} crosses it", fmt_set(&p.classes()[i])))),
        None => Ok(()),
    }
}

/// `<supp(alpha)>`, checked to be an S-subgroup.
pub fn generated_subgroup(r: &SchurRing, alpha: &RingElement) -> Result<SubgroupDescriptor> {
    if alpha.is_zero() {
        return Err(Error::ZeroElement);
    }
    if !membership_test(r.partition(), alpha) {
        return Err(Error::NotInSpan);
    }
    let ctx = r.ctx();
    let generator = match ctx {
        GroupContext::FiniteCyclic(n) => {
            Rational64::from_integer(gcd_all(alpha.support().iter().map(|e| e.as_int()).chain([n])))
        }
        GroupContext::InfiniteCyclic => Rational64::from_integer(gcd_all(alpha.support().iter().map(|e| e.as_int()))),
        GroupContext::Rational => rational_gcd(alpha.support().iter().map(|e| e.value())),
    };
    let h = SubgroupDescriptor::new(ctx, generator)?;
    require_s_subgroup(r.partition(), &h)?;
    Ok(h)
}

/// `{g | alpha z^g = alpha}`, checked to be an S-subgroup.
pub fn stabilizer(r: &SchurRing, alpha: &RingElement) -> Result<SubgroupDescriptor> {
    if !membership_test(r.partition(), alpha) {
        return Err(Error::NotInSpan);
    }
    let ctx = r.ctx();
    let h = match ctx {
        GroupContext::FiniteCyclic(n) => {
            let fixed = (0..n).filter(|&g| alpha.shift(Exponent::int(g)) == *alpha);
            SubgroupDescriptor::new(ctx, Rational64::from_integer(gcd_all(fixed.chain([n]))))?
        }
        _ if !alpha.is_zero() => SubgroupDescriptor::trivial(ctx),
        _ => SubgroupDescriptor::whole(ctx)?,
    };
    require_s_subgroup(r.partition(), &h)?;
    Ok(h)
}

/// `S_H = S ∩ Q[H]`, re-indexed along `H ≅ Z/(n/d)` or `H ≅ Z`.
pub fn restrict(r: &SchurRing, h: &SubgroupDescriptor) -> Result<SchurRing> {
    if h.ctx() != r.ctx() {
        return Err(Error::ContextMismatch(r.ctx().to_string(), h.ctx().to_string()));
    }
    require_s_subgroup(r.partition(), h)?;
    let p = r.partition();
    if h.is_trivial() {
        let ctx = GroupContext::FiniteCyclic(1);
        return SchurRing::new(Partition::new(ctx, Universe::WholeGroup, vec![vec![Exponent::int(0)]]));
    }
    let d = h.generator();
    let (ctx, universe) = match (r.ctx(), p.universe()) {
        (GroupContext::FiniteCyclic(n), _) => (GroupContext::finite(n / d.to_integer())?, Universe::WholeGroup),
        (GroupContext::InfiniteCyclic, Universe::Window { lo, hi }) => {
            let d = d.to_integer();
            (
                GroupContext::InfiniteCyclic,
                Universe::Window { lo: Integer::div_ceil(&lo, &d), hi: Integer::div_floor(&hi, &d) },
            )
        }
        _ => (GroupContext::InfiniteCyclic, Universe::ClassList),
    };
    let classes = p
        .classes()
        .iter()
        .filter(|c| c.iter().all(|&e| h.contains(e)))
        .map(|c| c.iter().map(|e| ctx.int((e.value() / d).to_integer())).collect())
        .collect();
    SchurRing::new(Partition::new(ctx, universe, classes))
}

/// `H ∩ K` for cyclic subgroups of the same group.
pub fn subgroup_intersection(h: &SubgroupDescriptor, k: &SubgroupDescriptor) -> Result<SubgroupDescriptor> {
    if h.ctx() != k.ctx() {
        return Err(Error::ContextMismatch(h.ctx().to_string(), k.ctx().to_string()));
    }
    let generator = match h.ctx() {
        GroupContext::FiniteCyclic(_) => {
            Rational64::from_integer(h.generator().to_integer().lcm(&k.generator().to_integer()))
        }
        _ => rational_lcm(h.generator(), k.generator()),
    };
    SubgroupDescriptor::new(h.ctx(), generator)
}
