//! Finite quasi-uniform spaces.
//!
//! On a finite set the fine quasi-uniformity of a topology is principal: it
//! is the filter of all supersets of the relation `E = {(x, y) : y ∈ U_x}`,
//! where `U_x` is the smallest open set containing `x`. Every quasi-uniformity
//! here is therefore carried by its generator `E`, which is reflexive and
//! transitive.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::qpspace::{EntourageChain, Qpm};
use crate::words::{check_labels, Point};

pub mod group;

pub use group::{lemma3_check, FiniteGroup, GroupSubset};

/// A reflexive relation on `{0, …, n-1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Entourage {
    size: usize,
    rel: Vec<bool>,
}

impl Entourage {
    /// The diagonal `Δ`.
    pub fn identity(size: usize) -> Entourage {
        let mut rel = vec![false; size * size];
        for i in 0..size {
            rel[i * size + i] = true;
        }
        Entourage { size, rel }
    }

    /// `X × X`.
    pub fn full(size: usize) -> Entourage {
        Entourage {
            size,
            rel: vec![true; size * size],
        }
    }

    /// `Δ` together with the listed pairs.
    pub fn from_pairs(size: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Entourage> {
        let mut e = Entourage::identity(size);
        for (x, y) in pairs {
            if x >= size || y >= size {
                return Err(Error::NotASubset(format!("pair ({x}, {y}) outside a {size}-point set")));
            }
            e.rel[x * size + y] = true;
        }
        Ok(e)
    }

    /// From a boolean matrix; fails unless the diagonal is set.
    pub fn from_matrix(rows: &[Vec<bool>]) -> Result<Entourage> {
        let size = rows.len();
        let mut rel = Vec::with_capacity(size * size);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != size {
                return Err(Error::NotSquare {
                    row: i,
                    expected: size,
                    found: row.len(),
                });
            }
            rel.extend_from_slice(row);
        }
        let e = Entourage { size, rel };
        if let Some(i) = (0..size).find(|&i| !e.contains(i, i)) {
            return Err(Error::InvalidGenerator(format!("relation is not reflexive at {i}")));
        }
        Ok(e)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.rel[x * self.size + y]
    }

    pub fn insert(&mut self, x: usize, y: usize) {
        self.rel[x * self.size + y] = true;
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.size;
        (0..n * n).filter(|&k| self.rel[k]).map(move |k| (k / n, k % n))
    }

    pub fn len(&self) -> usize {
        self.rel.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.size).all(|i| self.contains(i, i))
    }

    pub fn is_transitive(&self) -> bool {
        self.compose(self).map(|c| c.is_subset(self)).unwrap_or(false)
    }

    pub fn is_subset(&self, other: &Entourage) -> bool {
        self.size == other.size && self.rel.iter().zip(&other.rel).all(|(&a, &b)| !a || b)
    }

    /// `{(x, z) : ∃y, (x, y) ∈ self, (y, z) ∈ other}`.
    pub fn compose(&self, other: &Entourage) -> Result<Entourage> {
        self.same_ground(other)?;
        let n = self.size;
        let mut rel = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                if !self.contains(x, y) {
                    continue;
                }
                for z in 0..n {
                    if other.contains(y, z) {
                        rel[x * n + z] = true;
                    }
                }
            }
        }
        Ok(Entourage { size: n, rel })
    }

    /// `self ∘ self ∘ self`.
    pub fn cube(&self) -> Entourage {
        let sq = self.compose(self).expect("same ground");
        sq.compose(self).expect("same ground")
    }

    /// The conjugate relation `{(y, x) : (x, y) ∈ self}`.
    pub fn inverse(&self) -> Entourage {
        let n = self.size;
        let mut rel = vec![false; n * n];
        for (x, y) in self.pairs() {
            rel[y * n + x] = true;
        }
        Entourage { size: n, rel }
    }

    pub fn union(&self, other: &Entourage) -> Result<Entourage> {
        self.same_ground(other)?;
        let rel = self.rel.iter().zip(&other.rel).map(|(&a, &b)| a || b).collect();
        Ok(Entourage { size: self.size, rel })
    }

    pub fn intersection(&self, other: &Entourage) -> Result<Entourage> {
        self.same_ground(other)?;
        let rel = self.rel.iter().zip(&other.rel).map(|(&a, &b)| a && b).collect();
        Ok(Entourage { size: self.size, rel })
    }

    /// Trace `self ∩ (S × S)`, re-indexed along `subset`.
    pub fn restrict(&self, subset: &[usize]) -> Result<Entourage> {
        check_subset(subset, self.size)?;
        let m = subset.len();
        let mut rel = vec![false; m * m];
        for (i, &x) in subset.iter().enumerate() {
            for (j, &y) in subset.iter().enumerate() {
                rel[i * m + j] = self.contains(x, y);
            }
        }
        Ok(Entourage { size: m, rel })
    }

    /// Smallest reflexive transitive relation containing this one.
    pub fn transitive_closure(&self) -> Entourage {
        let n = self.size;
        let mut rel = self.rel.clone();
        for k in 0..n {
            for i in 0..n {
                if rel[i * n + k] {
                    for j in 0..n {
                        if rel[k * n + j] {
                            rel[i * n + j] = true;
                        }
                    }
                }
            }
        }
        Entourage { size: n, rel }
    }

    /// Image `E[x] = {y : (x, y) ∈ E}` as a bitmask.
    pub fn image_mask(&self, x: usize) -> u64 {
        (0..self.size)
            .filter(|&y| self.contains(x, y))
            .fold(0u64, |acc, y| acc | (1 << y))
    }

    fn same_ground(&self, other: &Entourage) -> Result<()> {
        if self.size != other.size {
            return Err(Error::GroundMismatch {
                left: self.size,
                right: other.size,
            });
        }
        Ok(())
    }
}

impl fmt::Debug for Entourage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let off: Vec<_> = self.pairs().filter(|(x, y)| x != y).collect();
        write!(f, "Δ{}∪{:?}", self.size, off)
    }
}

fn check_subset(subset: &[usize], size: usize) -> Result<()> {
    let mut seen = vec![false; size];
    for &x in subset {
        if x >= size {
            return Err(Error::NotASubset(format!("index {x} outside a {size}-point set")));
        }
        if std::mem::replace(&mut seen[x], true) {
            return Err(Error::NotASubset(format!("index {x} listed twice")));
        }
    }
    Ok(())
}

/// Most points a [`FiniteTopology`] may have (subsets are `u64` bitmasks).
pub const MAX_POINTS: usize = 64;

/// A topology on a finite labelled set, stored as the minimal open
/// neighbourhood `U_x` of every point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTopology {
    labels: Vec<String>,
    min_nbhd: Vec<u64>,
}

impl FiniteTopology {
    /// From a full family of open sets; checks that it contains `∅` and `X`
    /// and is closed under pairwise unions and intersections.
    pub fn from_opens(labels: Vec<String>, opens: &[Vec<usize>]) -> Result<FiniteTopology> {
        let n = check_ground(&labels)?;
        let full = full_mask(n);
        let mut family = Vec::with_capacity(opens.len());
        for open in opens {
            let mut mask = 0u64;
            for &x in open {
                if x >= n {
                    return Err(Error::InvalidTopology(format!("open set mentions index {x}")));
                }
                mask |= 1 << x;
            }
            family.push(mask);
        }
        family.sort_unstable();
        family.dedup();
        if family.binary_search(&0).is_err() {
            return Err(Error::InvalidTopology("the empty set is not open".into()));
        }
        if family.binary_search(&full).is_err() {
            return Err(Error::InvalidTopology("the whole space is not open".into()));
        }
        for (i, &a) in family.iter().enumerate() {
            for &b in &family[i + 1..] {
                if family.binary_search(&(a | b)).is_err() {
                    return Err(Error::InvalidTopology(format!(
                        "union of {} and {} is not open",
                        show_mask(&labels, a),
                        show_mask(&labels, b)
                    )));
                }
                if family.binary_search(&(a & b)).is_err() {
                    return Err(Error::InvalidTopology(format!(
                        "intersection of {} and {} is not open",
                        show_mask(&labels, a),
                        show_mask(&labels, b)
                    )));
                }
            }
        }
        let min_nbhd = (0..n)
            .map(|x| {
                family
                    .iter()
                    .filter(|&&o| o & (1 << x) != 0)
                    .fold(full, |acc, &o| acc & o)
            })
            .collect();
        Ok(FiniteTopology { labels, min_nbhd })
    }

    /// From the minimal neighbourhood of each point; requires `x ∈ U_x` and
    /// `U_y ⊆ U_x` whenever `y ∈ U_x`.
    pub fn from_min_nbhd(labels: Vec<String>, nbhd: &[Vec<usize>]) -> Result<FiniteTopology> {
        let n = check_ground(&labels)?;
        if nbhd.len() != n {
            return Err(Error::InvalidTopology(format!(
                "{} neighbourhoods given for {n} points",
                nbhd.len()
            )));
        }
        let mut min_nbhd = Vec::with_capacity(n);
        for members in nbhd {
            let mut mask = 0u64;
            for &y in members {
                if y >= n {
                    return Err(Error::InvalidTopology(format!("neighbourhood mentions index {y}")));
                }
                mask |= 1 << y;
            }
            min_nbhd.push(mask);
        }
        let topo = FiniteTopology { labels, min_nbhd };
        for x in 0..n {
            if topo.min_nbhd[x] & (1 << x) == 0 {
                return Err(Error::InvalidTopology(format!(
                    "{} is missing from its own neighbourhood",
                    topo.labels[x]
                )));
            }
            for y in 0..n {
                if topo.min_nbhd[x] & (1 << y) != 0 && topo.min_nbhd[y] & !topo.min_nbhd[x] != 0 {
                    return Err(Error::InvalidTopology(format!(
                        "{} lies in U_{} but U_{} is not contained in U_{}",
                        topo.labels[y], topo.labels[x], topo.labels[y], topo.labels[x]
                    )));
                }
            }
        }
        Ok(topo)
    }

    /// The topology whose open sets are the up-sets of a preorder; the
    /// relation is closed reflexively and transitively first.
    pub fn from_preorder(labels: Vec<String>, relation: &Entourage) -> Result<FiniteTopology> {
        let n = check_ground(&labels)?;
        if relation.size() != n {
            return Err(Error::GroundMismatch {
                left: n,
                right: relation.size(),
            });
        }
        let closed = relation.transitive_closure();
        let min_nbhd = (0..n).map(|x| closed.image_mask(x)).collect();
        Ok(FiniteTopology { labels, min_nbhd })
    }

    pub fn discrete(labels: Vec<String>) -> Result<FiniteTopology> {
        let n = check_ground(&labels)?;
        Ok(FiniteTopology {
            labels,
            min_nbhd: (0..n).map(|x| 1u64 << x).collect(),
        })
    }

    pub fn indiscrete(labels: Vec<String>) -> Result<FiniteTopology> {
        let n = check_ground(&labels)?;
        Ok(FiniteTopology {
            labels,
            min_nbhd: vec![full_mask(n); n],
        })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn min_nbhd(&self, x: usize) -> u64 {
        self.min_nbhd[x]
    }

    pub fn min_nbhd_points(&self, x: usize) -> Vec<usize> {
        mask_points(self.min_nbhd[x], self.size())
    }

    pub fn is_open(&self, mask: u64) -> bool {
        (0..self.size())
            .filter(|&x| mask & (1 << x) != 0)
            .all(|x| self.min_nbhd[x] & !mask == 0)
    }

    /// Every open set, as sorted point lists. Exponential in general.
    pub fn opens(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        let mut found = vec![0u64];
        for &u in &self.min_nbhd {
            let extra: Vec<u64> = found.iter().map(|&o| o | u).collect();
            found.extend(extra);
            found.sort_unstable();
            found.dedup();
        }
        found.into_iter().map(|m| mask_points(m, n)).collect()
    }

    /// Trace topology on `subset`, re-indexed along it.
    pub fn subspace(&self, subset: &[usize]) -> Result<FiniteTopology> {
        check_subset(subset, self.size())?;
        let labels = subset.iter().map(|&x| self.labels[x].clone()).collect();
        let min_nbhd = subset
            .iter()
            .map(|&x| {
                subset
                    .iter()
                    .enumerate()
                    .filter(|(_, &y)| self.min_nbhd[x] & (1 << y) != 0)
                    .fold(0u64, |acc, (j, _)| acc | (1 << j))
            })
            .collect();
        Ok(FiniteTopology { labels, min_nbhd })
    }

    /// Every open set of `self` is open in `other` (same ground set).
    pub fn is_coarser_than(&self, other: &FiniteTopology) -> bool {
        // other is finer iff its minimal neighbourhoods shrink
        self.size() == other.size()
            && (0..self.size()).all(|x| other.min_nbhd[x] & !self.min_nbhd[x] == 0)
    }
}

fn check_ground(labels: &[String]) -> Result<usize> {
    check_labels(labels)?;
    if labels.len() > MAX_POINTS {
        return Err(Error::InvalidTopology(format!(
            "{} points exceed the supported maximum of {MAX_POINTS}",
            labels.len()
        )));
    }
    Ok(labels.len())
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn mask_points(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&x| mask & (1 << x) != 0).collect()
}

fn show_mask(labels: &[String], mask: u64) -> String {
    let names: Vec<&str> = mask_points(mask, labels.len())
        .into_iter()
        .map(|x| labels[x].as_str())
        .collect();
    format!("{{{}}}", names.join(","))
}

/// A principal quasi-uniformity: all supersets of a reflexive transitive
/// generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiUniformity {
    labels: Vec<String>,
    generator: Entourage,
}

impl QuasiUniformity {
    pub fn new(labels: Vec<String>, generator: Entourage) -> Result<QuasiUniformity> {
        check_labels(&labels)?;
        if generator.size() != labels.len() {
            return Err(Error::GroundMismatch {
                left: labels.len(),
                right: generator.size(),
            });
        }
        if !generator.is_reflexive() {
            return Err(Error::InvalidGenerator("not reflexive".into()));
        }
        if !generator.is_transitive() {
            return Err(Error::InvalidGenerator("not transitive".into()));
        }
        Ok(QuasiUniformity { labels, generator })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn generator(&self) -> &Entourage {
        &self.generator
    }

    pub fn contains(&self, u: &Entourage) -> bool {
        self.generator.is_subset(u)
    }

    /// The topology `τ(𝒰)` whose neighbourhood base at `x` is `E[x]`.
    pub fn topology(&self) -> FiniteTopology {
        FiniteTopology {
            labels: self.labels.clone(),
            min_nbhd: (0..self.size()).map(|x| self.generator.image_mask(x)).collect(),
        }
    }

    /// The conjugate quasi-uniformity, generated by `E⁻¹`.
    pub fn conjugate(&self) -> QuasiUniformity {
        QuasiUniformity {
            labels: self.labels.clone(),
            generator: self.generator.inverse(),
        }
    }
}

/// `E = {(x, y) : y ∈ U_x}`.
pub fn fine_quniformity(topology: &FiniteTopology) -> QuasiUniformity {
    let n = topology.size();
    let mut generator = Entourage::identity(n);
    for x in 0..n {
        for y in 0..n {
            if topology.min_nbhd[x] & (1 << y) != 0 {
                generator.insert(x, y);
            }
        }
    }
    QuasiUniformity {
        labels: topology.labels.clone(),
        generator,
    }
}

/// The trace quasi-uniformity on `subset`, generated by `E ∩ (S × S)`.
pub fn restrict(qu: &QuasiUniformity, subset: &[usize]) -> Result<QuasiUniformity> {
    let generator = qu.generator.restrict(subset)?;
    let labels = subset.iter().map(|&x| qu.labels[x].clone()).collect();
    Ok(QuasiUniformity { labels, generator })
}

/// Decides `𝒰_Y | X = 𝒰_X` for the inclusion `x ↦ inclusion[x]`.
///
/// The inclusion must be continuous (the topology of `X` at least as fine
/// as the trace of `Y`). When `X` carries exactly the trace topology the
/// answer is always `true` on finite spaces; `false` means `X` carries a
/// strictly finer topology, so the trace generator strictly contains `E_X`.
pub fn subspace_check(x_space: &FiniteTopology, y_space: &FiniteTopology, inclusion: &[usize]) -> Result<bool> {
    Ok(trace_excess(x_space, y_space, inclusion)?.is_none())
}

/// A pair in `(E_Y ∩ X²) ∖ E_X`, if one exists (indices into `X`).
pub fn trace_excess(
    x_space: &FiniteTopology,
    y_space: &FiniteTopology,
    inclusion: &[usize],
) -> Result<Option<(usize, usize)>> {
    if inclusion.len() != x_space.size() {
        return Err(Error::NotASubset(format!(
            "inclusion lists {} images for {} points",
            inclusion.len(),
            x_space.size()
        )));
    }
    let trace = y_space.subspace(inclusion)?;
    if !trace.is_coarser_than(x_space) {
        let x = (0..x_space.size())
            .find(|&x| x_space.min_nbhd[x] & !trace.min_nbhd[x] != 0)
            .expect("some neighbourhood grows");
        return Err(Error::InclusionNotContinuous(format!(
            "the trace neighbourhood of {} is smaller than its neighbourhood in the subspace",
            x_space.labels[x]
        )));
    }
    let e_y = restrict(&fine_quniformity(y_space), inclusion)?;
    let e_x = fine_quniformity(x_space);
    let excess = e_y.generator.pairs().find(|&(x, y)| !e_x.generator.contains(x, y));
    Ok(excess)
}

/// The first generator pair on which `d` is positive, if any.
///
/// For a principal quasi-uniformity, `d` is quasi-uniform (every `ε`-ball
/// relation is an entourage) exactly when `d` vanishes on the generator.
pub fn quasi_uniformity_violation(d: &Qpm, qu: &QuasiUniformity) -> Result<Option<(Point, Point)>> {
    if d.size() != qu.size() {
        return Err(Error::GroundMismatch {
            left: d.size(),
            right: qu.size(),
        });
    }
    Ok(qu
        .generator
        .pairs()
        .find(|&(x, y)| !d.dist(x, y).is_zero())
        .map(|(x, y)| (Point(x), Point(y))))
}

pub fn is_quasi_uniform_wrt(d: &Qpm, qu: &QuasiUniformity) -> Result<bool> {
    Ok(quasi_uniformity_violation(d, qu)?.is_none())
}

/// The chain `X², V, E, E, …` of length `levels + 1`, with tail `E`.
pub fn chain_from(qu: &QuasiUniformity, v: &Entourage, levels: usize) -> Result<EntourageChain> {
    if v.size() != qu.size() {
        return Err(Error::GroundMismatch {
            left: qu.size(),
            right: v.size(),
        });
    }
    if let Some((x, y)) = qu.generator.pairs().find(|&(x, y)| !v.contains(x, y)) {
        return Err(Error::NotInFilter {
            x: qu.labels[x].clone(),
            y: qu.labels[y].clone(),
        });
    }
    if levels == 0 {
        return Err(Error::InvalidChain {
            index: 0,
            reason: "a chain needs at least one level below X × X".into(),
        });
    }
    let n = qu.size();
    let mut chain = vec![Entourage::full(n), v.clone()];
    chain.extend(std::iter::repeat_n(qu.generator.clone(), levels - 1));
    EntourageChain::new(qu.labels.clone(), chain)?.with_tail(qu.generator.clone())
}
