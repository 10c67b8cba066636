//! Finite quasi-pseudometric spaces with exact rational distances.
//!
//! Besides validation this module holds the two case-formula extensions used
//! by the Graev machinery ([`rho_e`] on `X ∪ {e}` and [`rho_star`] on
//! `X ∪ {e} ∪ X⁻¹`), chain metrization ([`frink_metrize`]) and the
//! `min{1, 4ρ}` rescaling ([`scale_clip`]).

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::quniform::Entourage;
use crate::rational::{int, pow2_inv, Rational};
use crate::words::{check_labels, Letter, Point};

/// A quasi-pseudometric on a finite labelled set: `d(x, x) = 0`,
/// `d(x, y) ≥ 0` and `d(x, y) ≤ d(x, z) + d(z, y)`. Symmetry is not required.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Qpm {
    labels: Vec<String>,
    d: Vec<Vec<Rational>>,
    bound: Option<Rational>,
}

impl Qpm {
    /// Same as [`validate_qpm`].
    pub fn new(labels: Vec<String>, matrix: Vec<Vec<Rational>>) -> Result<Qpm> {
        validate_qpm(labels, matrix)
    }

    /// Attaches a declared upper bound, checking every entry against it.
    pub fn with_bound(mut self, bound: Rational) -> Result<Qpm> {
        if let Some((x, y)) = self.first_exceeding(&bound) {
            return Err(self.unbounded(x, y, &bound));
        }
        self.bound = Some(bound);
        Ok(self)
    }

    /// The zero distance on `labels`.
    pub fn zero(labels: Vec<String>) -> Result<Qpm> {
        let n = labels.len();
        validate_qpm(labels, vec![vec![Rational::zero(); n]; n])
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn dist(&self, x: usize, y: usize) -> &Rational {
        &self.d[x][y]
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.d
    }

    pub fn bound(&self) -> Option<&Rational> {
        self.bound.as_ref()
    }

    pub fn max_entry(&self) -> Rational {
        self.d
            .iter()
            .flatten()
            .max()
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Smallest positive entry, if any.
    pub fn min_positive(&self) -> Option<Rational> {
        self.d.iter().flatten().filter(|v| v.is_positive()).min().cloned()
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        crate::words::label_index(&self.labels, label)
    }

    /// `c · d`; a nonnegative multiple of a quasi-pseudometric is one.
    pub fn scale(&self, factor: &Rational) -> Qpm {
        assert!(!factor.is_negative(), "negative scale factor");
        Qpm {
            labels: self.labels.clone(),
            d: self
                .d
                .iter()
                .map(|row| row.iter().map(|v| v * factor).collect())
                .collect(),
            bound: self.bound.as_ref().map(|b| b * factor),
        }
    }

    /// Restriction to `subset`, re-indexed along it.
    pub fn restrict(&self, subset: &[usize]) -> Result<Qpm> {
        if let Some(&x) = subset.iter().find(|&&x| x >= self.size()) {
            return Err(Error::NotASubset(format!("index {x} outside a {}-point space", self.size())));
        }
        let labels = subset.iter().map(|&x| self.labels[x].clone()).collect();
        let d = subset
            .iter()
            .map(|&x| subset.iter().map(|&y| self.d[x][y].clone()).collect())
            .collect();
        validate_qpm(labels, d)
    }

    fn first_exceeding(&self, bound: &Rational) -> Option<(usize, usize)> {
        let n = self.size();
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .find(|&(x, y)| &self.d[x][y] > bound)
    }

    fn unbounded(&self, x: usize, y: usize, bound: &Rational) -> Error {
        Error::UnboundedInput {
            x: self.labels[x].clone(),
            y: self.labels[y].clone(),
            value: self.d[x][y].to_string(),
            bound: bound.to_string(),
        }
    }
}

/// Checks the axioms in order (shape, nonnegativity, zero diagonal, triangle
/// inequality) and reports the first violation with its witness.
pub fn validate_qpm(labels: Vec<String>, matrix: Vec<Vec<Rational>>) -> Result<Qpm> {
    check_labels(&labels)?;
    let n = labels.len();
    if matrix.len() != n {
        return Err(Error::NotSquare {
            row: matrix.len().min(n),
            expected: n,
            found: matrix.len(),
        });
    }
    for (i, row) in matrix.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotSquare {
                row: i,
                expected: n,
                found: row.len(),
            });
        }
    }
    for x in 0..n {
        for y in 0..n {
            if matrix[x][y].is_negative() {
                return Err(Error::NegativeEntry {
                    x: labels[x].clone(),
                    y: labels[y].clone(),
                    value: matrix[x][y].to_string(),
                });
            }
        }
    }
    for x in 0..n {
        if !matrix[x][x].is_zero() {
            return Err(Error::NonzeroDiagonal {
                point: labels[x].clone(),
                value: matrix[x][x].to_string(),
            });
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let detour = &matrix[x][z] + &matrix[z][y];
                if matrix[x][y] > detour {
                    return Err(Error::TriangleViolation {
                        x: labels[x].clone(),
                        via: labels[z].clone(),
                        y: labels[y].clone(),
                        direct: matrix[x][y].to_string(),
                        detour: detour.to_string(),
                    });
                }
            }
        }
    }
    Ok(Qpm {
        labels,
        d: matrix,
        bound: None,
    })
}

/// All-pairs shortest paths (Floyd–Warshall) on a nonnegative weight matrix.
/// The result always satisfies the triangle inequality.
pub fn shortest_path_closure(weights: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = weights.len();
    let mut d = weights.to_vec();
    for row in d.iter_mut().enumerate() {
        row.1[row.0] = Rational::zero();
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = &d[i][k] + &d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

fn check_unit_bound(rho: &Qpm) -> Result<()> {
    let one = Rational::one();
    match rho.first_exceeding(&one) {
        Some((x, y)) => Err(rho.unbounded(x, y, &one)),
        None => Ok(()),
    }
}

/// `ρ_e` on `X ∪ {e}`: `ρ` on `X`, zero on the diagonal, `1` otherwise.
/// Points of `X ∪ {e}` are `Some(point)` or `None` for `e`.
#[derive(Clone, Copy, Debug)]
pub struct RhoE<'a> {
    base: &'a Qpm,
}

pub fn rho_e(rho: &Qpm) -> Result<RhoE<'_>> {
    check_unit_bound(rho)?;
    Ok(RhoE { base: rho })
}

impl<'a> RhoE<'a> {
    pub fn base(&self) -> &'a Qpm {
        self.base
    }

    pub fn value(&self, x: Option<Point>, y: Option<Point>) -> Rational {
        match (x, y) {
            _ if x == y => Rational::zero(),
            (Some(p), Some(q)) => self.base.dist(p.0, q.0).clone(),
            _ => Rational::one(),
        }
    }

    /// The `(|X|+1)²` matrix, with `e` last.
    pub fn materialize(&self) -> Result<Qpm> {
        let n = self.base.size();
        let points: Vec<Option<Point>> = (0..n).map(|i| Some(Point(i))).chain([None]).collect();
        let mut labels = self.base.labels.clone();
        labels.push("<e>".to_string());
        let matrix = points
            .iter()
            .map(|&x| points.iter().map(|&y| self.value(x, y)).collect())
            .collect();
        validate_qpm_unchecked_labels(labels, matrix)
    }
}

/// `ρ*` on the alphabet `X ∪ {e} ∪ X⁻¹`.
#[derive(Clone, Copy, Debug)]
pub struct RhoStar<'a> {
    rho_e: RhoE<'a>,
}

pub fn rho_star(rho: &Qpm) -> Result<RhoStar<'_>> {
    Ok(RhoStar { rho_e: rho_e(rho)? })
}

fn upper(letter: Letter) -> Option<Option<Point>> {
    match letter {
        Letter::Pos(p) => Some(Some(p)),
        Letter::Neutral => Some(None),
        Letter::Neg(_) => None,
    }
}

fn lower(letter: Letter) -> Option<Option<Point>> {
    match letter {
        Letter::Neg(p) => Some(Some(p)),
        Letter::Neutral => Some(None),
        Letter::Pos(_) => None,
    }
}

impl<'a> RhoStar<'a> {
    pub fn base(&self) -> &'a Qpm {
        self.rho_e.base
    }

    pub fn value(&self, x: Letter, y: Letter) -> Rational {
        if x == y {
            return Rational::zero();
        }
        if let (Some(a), Some(b)) = (upper(x), upper(y)) {
            return self.rho_e.value(a, b);
        }
        // x, y ∈ X⁻¹ ∪ {e}: ρ_e(y⁻¹, x⁻¹), and lower() already strips the inverse
        if let (Some(a), Some(b)) = (lower(x), lower(y)) {
            return self.rho_e.value(b, a);
        }
        int(2)
    }

    /// The alphabet in the order `X`, `e`, `X⁻¹`.
    pub fn alphabet(&self) -> Vec<Letter> {
        let n = self.base().size();
        (0..n)
            .map(Letter::pos)
            .chain([Letter::Neutral])
            .chain((0..n).map(Letter::neg))
            .collect()
    }

    /// The `(2|X|+1)²` matrix over [`RhoStar::alphabet`], validated.
    pub fn materialize(&self) -> Result<Qpm> {
        let alphabet = self.alphabet();
        let labels = alphabet
            .iter()
            .map(|l| l.display(self.base().labels()).to_string().replace(' ', ""))
            .map(|s| if s == "e" { "<e>".to_string() } else { s })
            .collect();
        let matrix = alphabet
            .iter()
            .map(|&x| alphabet.iter().map(|&y| self.value(x, y)).collect())
            .collect();
        validate_qpm_unchecked_labels(labels, matrix)
    }
}

/// Validation for derived spaces whose labels (`a^-1`, `<e>`) are outside
/// the token syntax.
fn validate_qpm_unchecked_labels(labels: Vec<String>, matrix: Vec<Vec<Rational>>) -> Result<Qpm> {
    let placeholder: Vec<String> = (0..labels.len()).map(|i| format!("p{i}")).collect();
    let mut qpm = validate_qpm(placeholder, matrix).map_err(|err| relabel_error(err, &labels))?;
    qpm.labels = labels;
    Ok(qpm)
}

fn relabel_error(err: Error, labels: &[String]) -> Error {
    let name = |s: String| {
        s.strip_prefix('p')
            .and_then(|i| i.parse::<usize>().ok())
            .map(|i| labels[i].clone())
            .unwrap_or(s)
    };
    match err {
        Error::NegativeEntry { x, y, value } => Error::NegativeEntry {
            x: name(x),
            y: name(y),
            value,
        },
        Error::NonzeroDiagonal { point, value } => Error::NonzeroDiagonal {
            point: name(point),
            value,
        },
        Error::TriangleViolation {
            x,
            via,
            y,
            direct,
            detour,
        } => Error::TriangleViolation {
            x: name(x),
            via: name(via),
            y: name(y),
            direct,
            detour,
        },
        other => other,
    }
}

/// A chain `V₀ = X², V₁, …, V_L` of reflexive relations with
/// `V_{i+1} ∘ V_{i+1} ∘ V_{i+1} ⊆ Vᵢ`, plus a reflexive transitive tail
/// `T ⊆ V_L` standing in for every level below `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntourageChain {
    labels: Vec<String>,
    levels: Vec<Entourage>,
    tail: Entourage,
}

impl EntourageChain {
    /// Validates the chain; the tail defaults to `V_L` when `V_L` is
    /// transitive and to the diagonal otherwise.
    pub fn new(labels: Vec<String>, levels: Vec<Entourage>) -> Result<EntourageChain> {
        let n = labels.len();
        let first = levels.first().ok_or_else(|| Error::InvalidChain {
            index: 0,
            reason: "empty chain".into(),
        })?;
        if first != &Entourage::full(n) {
            return Err(Error::InvalidChain {
                index: 0,
                reason: "V_0 must be X × X".into(),
            });
        }
        for (i, v) in levels.iter().enumerate() {
            if v.size() != n {
                return Err(Error::InvalidChain {
                    index: i,
                    reason: format!("level has {} points, expected {n}", v.size()),
                });
            }
            if !v.is_reflexive() {
                return Err(Error::InvalidChain {
                    index: i,
                    reason: "level is not reflexive".into(),
                });
            }
        }
        for i in 0..levels.len() - 1 {
            if !levels[i + 1].cube().is_subset(&levels[i]) {
                return Err(Error::InvalidChain {
                    index: i + 1,
                    reason: format!("V_{}^3 is not contained in V_{i}", i + 1),
                });
            }
        }
        let last = levels.last().expect("nonempty");
        let tail = if last.is_transitive() {
            last.clone()
        } else {
            Entourage::identity(n)
        };
        Ok(EntourageChain { labels, levels, tail })
    }

    /// Replaces the tail; it must be reflexive, transitive and inside `V_L`.
    pub fn with_tail(mut self, tail: Entourage) -> Result<EntourageChain> {
        let l = self.depth();
        if tail.size() != self.labels.len() || !tail.is_reflexive() || !tail.is_transitive() {
            return Err(Error::InvalidChain {
                index: l + 1,
                reason: "tail must be a reflexive transitive relation on the ground set".into(),
            });
        }
        if !tail.is_subset(&self.levels[l]) {
            return Err(Error::InvalidChain {
                index: l + 1,
                reason: format!("tail is not contained in V_{l}"),
            });
        }
        self.tail = tail;
        Ok(self)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn levels(&self) -> &[Entourage] {
        &self.levels
    }

    pub fn tail(&self) -> &Entourage {
        &self.tail
    }

    /// `L`, the index of the last level.
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    /// The step function: `0` on the tail, else `2^{-i}` for the deepest
    /// level `Vᵢ` containing the pair.
    pub fn step(&self, x: usize, y: usize) -> Rational {
        if self.tail.contains(x, y) {
            return Rational::zero();
        }
        let deepest = (0..self.levels.len())
            .rev()
            .find(|&i| self.levels[i].contains(x, y))
            .expect("V_0 contains every pair");
        pow2_inv(deepest as u32)
    }
}

/// Chain metrization: the largest quasi-pseudometric below the step function
/// of the chain, i.e. the cheapest sum of steps along any finite path.
///
/// For every `1 ≤ i ≤ L` the result satisfies
/// `Vᵢ ⊆ {ρ ≤ 2^{-i}} ⊆ V_{i-1}`.
pub fn frink_metrize(chain: &EntourageChain) -> Qpm {
    let n = chain.labels.len();
    let steps: Vec<Vec<Rational>> = (0..n)
        .map(|x| (0..n).map(|y| chain.step(x, y)).collect())
        .collect();
    let d = shortest_path_closure(&steps);
    validate_qpm(chain.labels.clone(), d).expect("shortest paths form a quasi-pseudometric")
}

/// `min{1, 4ρ₀}` entrywise; the result is bounded by `1`.
pub fn scale_clip(rho0: &Qpm) -> Qpm {
    let one = Rational::one();
    let four = int(4);
    let d = rho0
        .d
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| {
                    let scaled = v * &four;
                    if scaled > one {
                        one.clone()
                    } else {
                        scaled
                    }
                })
                .collect()
        })
        .collect();
    let out = validate_qpm(rho0.labels.clone(), d).expect("clipped scaling keeps the axioms");
    Qpm {
        bound: Some(one),
        ..out
    }
}

/// `{(x, y) : ρ(x, y) < r}` when `strict`, otherwise `≤ r`.
pub fn ball_relation(rho: &Qpm, radius: &Rational, strict: bool) -> Result<Entourage> {
    if !radius.is_positive() {
        return Err(Error::NonpositiveRadius(radius.to_string()));
    }
    let n = rho.size();
    let inside = |v: &Rational| if strict { v < radius } else { v <= radius };
    let pairs = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| inside(rho.dist(x, y)));
    Entourage::from_pairs(n, pairs)
}
