//! Explicit finite groups and the product containment
//! `V_{k₁} ⋯ V_{kₙ} ⊆ V_r` for chains with `e ∈ Vᵢ` and `Vᵢ₊₁³ ⊆ Vᵢ`.

use itertools::Itertools;
use num_traits::One;

use crate::error::{Error, Result};
use crate::rational::{pow2_inv, Rational};

/// A group on `{0, …, order-1}` given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
}

/// A subset of a finite group, as a membership vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSubset(pub Vec<bool>);

impl GroupSubset {
    pub fn from_elements(order: usize, elements: &[usize]) -> Result<GroupSubset> {
        let mut members = vec![false; order];
        for &g in elements {
            if g >= order {
                return Err(Error::InvalidGroup(format!("element {g} outside a group of order {order}")));
            }
            members[g] = true;
        }
        Ok(GroupSubset(members))
    }

    pub fn contains(&self, g: usize) -> bool {
        self.0[g]
    }

    pub fn elements(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&g| self.0[g]).collect()
    }

    pub fn is_subset(&self, other: &GroupSubset) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| !a || b)
    }

    pub fn union(&self, other: &GroupSubset) -> GroupSubset {
        GroupSubset(self.0.iter().zip(&other.0).map(|(&a, &b)| a || b).collect())
    }
}

impl FiniteGroup {
    /// Validates closure, a two-sided identity, the Latin-square property
    /// (hence inverses) and associativity.
    pub fn from_table(order: usize, table: Vec<usize>) -> Result<FiniteGroup> {
        if order == 0 || table.len() != order * order {
            return Err(Error::InvalidGroup(format!(
                "table has {} entries, expected {}",
                table.len(),
                order * order
            )));
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= order) {
            return Err(Error::InvalidGroup(format!("product {bad} outside the group")));
        }
        let mul = |a: usize, b: usize| table[a * order + b];
        let identity = (0..order)
            .find(|&e| (0..order).all(|g| mul(e, g) == g && mul(g, e) == g))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        for a in 0..order {
            if !(0..order).map(|b| mul(a, b)).all_unique() || !(0..order).map(|b| mul(b, a)).all_unique() {
                return Err(Error::InvalidGroup(format!("row or column {a} repeats an element")));
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(Error::InvalidGroup(format!("({a}·{b})·{c} ≠ {a}·({b}·{c})")));
                    }
                }
            }
        }
        Ok(FiniteGroup { order, table, identity })
    }

    /// `Z_n` with identity `0`.
    pub fn cyclic(n: usize) -> FiniteGroup {
        assert!(n > 0, "cyclic group of order zero");
        let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        FiniteGroup {
            order: n,
            table,
            identity: 0,
        }
    }

    /// The symmetric group on `k` letters; elements are permutations in
    /// lexicographic order, product `(σ·τ)(i) = σ(τ(i))`.
    pub fn symmetric(k: usize) -> FiniteGroup {
        let perms: Vec<Vec<usize>> = (0..k).permutations(k).collect();
        let index = |p: &[usize]| perms.iter().position(|q| q == p).expect("permutation listed");
        let order = perms.len();
        let mut table = Vec::with_capacity(order * order);
        for s in &perms {
            for t in &perms {
                let prod: Vec<usize> = (0..k).map(|i| s[t[i]]).collect();
                table.push(index(&prod));
            }
        }
        FiniteGroup {
            order,
            table,
            identity: 0,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    /// Setwise product `A·B`.
    pub fn product(&self, a: &GroupSubset, b: &GroupSubset) -> GroupSubset {
        let mut out = vec![false; self.order];
        let bs = b.elements();
        for x in a.elements() {
            for &y in &bs {
                out[self.mul(x, y)] = true;
            }
        }
        GroupSubset(out)
    }
}

/// Whether `V_{k₁} ⋯ V_{kₙ} ⊆ V_r`.
///
/// Fails with [`Error::PreconditionViolation`] unless every `Vᵢ` contains the
/// identity, `Vᵢ₊₁³ ⊆ Vᵢ` along the whole sequence, all indices are in
/// range, and `Σ 2^{-kᵢ} ≤ 2^{-r}`.
pub fn lemma3_check(group: &FiniteGroup, chain: &[GroupSubset], ks: &[usize], r: usize) -> Result<bool> {
    let violation = |msg: String| Err(Error::PreconditionViolation(msg));
    if ks.is_empty() {
        return violation("at least one factor index is required".into());
    }
    if let Some(i) = chain.iter().position(|v| v.0.len() != group.order()) {
        return violation(format!("V_{i} is not a subset of a group of order {}", group.order()));
    }
    if let Some(i) = chain.iter().position(|v| !v.contains(group.identity())) {
        return violation(format!("identity is missing from V_{i}"));
    }
    for i in 0..chain.len().saturating_sub(1) {
        let next = &chain[i + 1];
        let cube = group.product(&group.product(next, next), next);
        if !cube.is_subset(&chain[i]) {
            return violation(format!("V_{}^3 is not contained in V_{i}", i + 1));
        }
    }
    if let Some(&k) = ks.iter().chain(std::iter::once(&r)).find(|&&k| k >= chain.len()) {
        return violation(format!("index {k} is outside a chain of length {}", chain.len()));
    }
    let total: Rational = ks.iter().map(|&k| pow2_inv(k as u32)).sum();
    if total > pow2_inv(r as u32) {
        return violation(format!("sum of 2^-k is {total}, exceeding 2^-{r}"));
    }
    debug_assert!(total <= Rational::one());
    let mut acc = chain[ks[0]].clone();
    for &k in &ks[1..] {
        acc = group.product(&acc, &chain[k]);
    }
    Ok(acc.is_subset(&chain[r]))
}
