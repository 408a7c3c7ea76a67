//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;
use schur_core::{Exponent, GroupContext, Partition, RingElement, Universe};

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Dense coefficient vector of an element of `Q[Z/n]`.
pub fn dense(alpha: &RingElement, n: i64) -> Vec<BigRational> {
    let mut v = vec![q(0); n as usize];
    for (e, c) in alpha.terms() {
        v[e.as_int() as usize] = c.clone();
    }
    v
}

/// Schoolbook convolution over `Z/n` on dense vectors.
pub fn naive_cyclic_product(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len();
    let mut out = vec![q(0); n];
    for i in 0..n {
        for j in 0..n {
            out[(i + j) % n] += &a[i] * &b[j];
        }
    }
    out
}

/// Schoolbook convolution over a torsion-free group on `(value, coefficient)` lists.
pub fn naive_free_product(
    a: &[(num_rational::Rational64, BigRational)],
    b: &[(num_rational::Rational64, BigRational)],
) -> BTreeMap<num_rational::Rational64, BigRational> {
    let mut out: BTreeMap<num_rational::Rational64, BigRational> = BTreeMap::new();
    for (x, c) in a {
        for (y, d) in b {
            *out.entry(x + y).or_insert_with(|| q(0)) += c * d;
        }
    }
    out.retain(|_, c| *c != q(0));
    out
}

/// Random element with up to `terms` terms and exponents drawn by `exp`.
pub fn random_element<R: Rng>(
    rng: &mut R,
    ctx: GroupContext,
    terms: usize,
    mut exp: impl FnMut(&mut R) -> num_rational::Rational64,
) -> RingElement {
    let count = rng.gen_range(0..=terms);
    let mut list = Vec::new();
    for _ in 0..count {
        let e = exp(rng);
        list.push((e, random_coefficient(rng)));
    }
    RingElement::from_terms(ctx, list).unwrap()
}

pub fn random_coefficient<R: Rng>(rng: &mut R) -> BigRational {
    qr(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

/// Random partition of `Z/n` into at most `blocks` classes.
pub fn random_partition<R: Rng>(rng: &mut R, n: i64, blocks: usize) -> Partition {
    let mut classes = vec![Vec::new(); blocks];
    for g in 0..n {
        classes[rng.gen_range(0..blocks)].push(Exponent::int(g));
    }
    classes.retain(|c| !c.is_empty());
    Partition::new(GroupContext::FiniteCyclic(n), Universe::WholeGroup, classes)
}

/// Random rational combination of class sums, some coefficients zero or repeated.
pub fn random_span_member<R: Rng>(rng: &mut R, p: &Partition) -> RingElement {
    let palette: Vec<BigRational> = (0..3).map(|_| random_coefficient(rng)).collect();
    let mut acc = RingElement::zero(p.ctx());
    for sum in p.class_sums() {
        let c = if rng.gen_bool(0.3) { q(0) } else { palette.choose(rng).unwrap().clone() };
        acc = acc.add(&sum.scaled(&c)).unwrap();
    }
    acc
}

/// Units of `Z/n`.
pub fn units(n: i64) -> Vec<i64> {
    (1..n.max(2)).filter(|m| m.gcd(&n) == 1).collect()
}

/// Orbits of `Z/n` under the multiplicative closure of `gens`, by brute force.
pub fn orbit_classes(n: i64, gens: &[i64]) -> BTreeSet<Vec<i64>> {
    let mut group: BTreeSet<i64> = BTreeSet::from([1 % n]);
    loop {
        let next: BTreeSet<i64> = group
            .iter()
            .flat_map(|&a| gens.iter().map(move |&g| (a * g).rem_euclid(n)))
            .chain(group.iter().copied())
            .collect();
        if next == group {
            break;
        }
        group = next;
    }
    (0..n)
        .map(|x| {
            let mut orbit: Vec<i64> = group.iter().map(|&u| (u * x).rem_euclid(n)).collect();
            orbit.sort();
            orbit.dedup();
            orbit
        })
        .collect()
}

/// Every set partition of `items`, as class lists.
pub fn set_partitions(items: &[i64]) -> Vec<Vec<Vec<i64>>> {
    fn rec(items: &[i64], i: usize, acc: &mut Vec<Vec<i64>>, out: &mut Vec<Vec<Vec<i64>>>) {
        if i == items.len() {
            out.push(acc.clone());
            return;
        }
        for k in 0..acc.len() {
            acc[k].push(items[i]);
            rec(items, i + 1, acc, out);
            acc[k].pop();
        }
        acc.push(vec![items[i]]);
        rec(items, i + 1, acc, out);
        acc.pop();
    }
    let mut out = Vec::new();
    rec(items, 0, &mut Vec::new(), &mut out);
    out
}

/// Direct check of the Schur-ring axioms over `Z/n` with integer counts.
pub fn is_schur_ring_oracle(n: i64, classes: &[Vec<i64>]) -> bool {
    let nu = n as usize;
    let mut label = vec![usize::MAX; nu];
    for (i, c) in classes.iter().enumerate() {
        for &g in c {
            label[g as usize] = i;
        }
    }
    if classes[label[0]].len() != 1 {
        return false;
    }
    let family: BTreeSet<Vec<i64>> = classes
        .iter()
        .map(|c| {
            let mut v = c.clone();
            v.sort();
            v
        })
        .collect();
    for c in classes {
        let mut image: Vec<i64> = c.iter().map(|&g| (n - g) % n).collect();
        image.sort();
        if !family.contains(&image) {
            return false;
        }
    }
    for a in classes {
        for b in classes {
            let mut count = vec![0i64; nu];
            for &x in a {
                for &y in b {
                    count[((x + y) % n) as usize] += 1;
                }
            }
            for c in classes {
                if c.iter().any(|&g| count[g as usize] != count[c[0] as usize]) {
                    return false;
                }
            }
        }
    }
    true
}

/// Class sets of a partition over `Z/n` as sorted integer vectors.
pub fn int_classes(p: &Partition) -> BTreeSet<Vec<i64>> {
    p.classes().iter().map(|c| c.iter().map(|e| e.as_int()).collect()).collect()
}

pub fn normalized(classes: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
    classes
        .iter()
        .map(|c| {
            let mut v = c.clone();
            v.sort();
            v
        })
        .collect()
}

/// Rank of a rational matrix by exact Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let width = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for col in 0..width {
        let Some(pivot) = (r..rows.len()).find(|&i| rows[i][col] != q(0)) else { continue };
        rows.swap(r, pivot);
        let lead = rows[r][col].clone();
        for i in 0..rows.len() {
            if i != r && rows[i][col] != q(0) {
                let factor = &rows[i][col] / &lead;
                let pivot_row = rows[r].clone();
                for (x, p) in rows[i].iter_mut().zip(&pivot_row).skip(col) {
                    *x -= &factor * p;
                }
            }
        }
        r += 1;
    }
    r
}

/// Generated subgroup of a finite cyclic group: grow `{0} ∪ K ∪ K² ∪ ...`
/// with `K = supp ∪ supp*` until it stops changing.
pub fn k_power_closure(n: i64, support: &BTreeSet<i64>) -> BTreeSet<i64> {
    let k: BTreeSet<i64> = support.iter().flat_map(|&g| [g.rem_euclid(n), (-g).rem_euclid(n)]).collect();
    let mut h: BTreeSet<i64> = BTreeSet::from([0]);
    loop {
        let next: BTreeSet<i64> =
            h.iter().flat_map(|&a| k.iter().map(move |&b| (a + b).rem_euclid(n))).chain(h.iter().copied()).collect();
        if next == h {
            return h;
        }
        h = next;
    }
}
