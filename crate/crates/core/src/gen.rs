//! Seeded random instances. Everything random in the crate goes through
//! [`Generator`], so a seed fixes every suite run.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::qpspace::{shortest_path_closure, EntourageChain, Qpm};
use crate::quniform::{Entourage, FiniteGroup, FiniteTopology, GroupSubset, QuasiUniformity};
use crate::rational::{ratio, Rational};
use crate::words::{AbelianWord, Letter, Word};

/// Metric entries are drawn from this grid before closing under shortest
/// paths, so generated distances stay on the `1/8` lattice.
pub const GRID: [(i64, i64); 6] = [(0, 1), (1, 8), (1, 4), (1, 2), (3, 4), (1, 1)];

/// Point labels `a, b, c, d, f, g, …` (skipping the neutral token), then
/// `x26, x27, …`.
pub fn labels(n: usize) -> Vec<String> {
    let letters: Vec<char> = ('a'..='z').filter(|&c| c != 'e').collect();
    (0..n)
        .map(|i| match letters.get(i) {
            Some(c) => c.to_string(),
            None => format!("x{i}"),
        })
        .collect()
}

pub struct Generator {
    rng: ChaCha8Rng,
}

impl Generator {
    pub fn new(seed: u64) -> Generator {
        Generator {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// Uniform in `lo..=hi`.
    pub fn between(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.gen_range(lo..=hi)
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn seed(&mut self) -> u64 {
        self.rng.gen()
    }

    pub fn grid_value(&mut self) -> Rational {
        let (p, q) = GRID[self.below(GRID.len())];
        ratio(p, q)
    }

    /// Random grid weights closed under shortest paths; bounded by `1`.
    pub fn qpm(&mut self, n: usize) -> Qpm {
        let weights: Vec<Vec<Rational>> = (0..n)
            .map(|x| (0..n).map(|y| if x == y { Rational::zero() } else { self.grid_value() }).collect())
            .collect();
        Qpm::new(labels(n), shortest_path_closure(&weights)).expect("closure is a quasi-pseudometric")
    }

    /// Like [`Generator::qpm`] but zero on every pair of `zero_on`.
    pub fn qpm_vanishing_on(&mut self, labels: Vec<String>, zero_on: &Entourage) -> Qpm {
        let n = labels.len();
        let weights: Vec<Vec<Rational>> = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| if zero_on.contains(x, y) { Rational::zero() } else { self.grid_value() })
                    .collect()
            })
            .collect();
        Qpm::new(labels, shortest_path_closure(&weights)).expect("closure is a quasi-pseudometric")
    }

    /// A quasi-pseudometric quasi-uniform for `qu`.
    pub fn qpm_for(&mut self, qu: &QuasiUniformity) -> Qpm {
        self.qpm_vanishing_on(qu.labels().to_vec(), qu.generator())
    }

    pub fn letter(&mut self, points: usize) -> Letter {
        let p = self.below(points);
        if self.coin(0.5) {
            Letter::pos(p)
        } else {
            Letter::neg(p)
        }
    }

    /// A reduced word of exactly `len` letters.
    pub fn reduced_word(&mut self, points: usize, len: usize) -> Word {
        let mut letters: Vec<Letter> = Vec::with_capacity(len);
        while letters.len() < len {
            let l = self.letter(points);
            if letters.last().is_none_or(|&last| !last.cancels_with(l)) {
                letters.push(l);
            }
        }
        Word::from_letters(letters)
    }

    /// Any word of `len` letters, possibly cancelling.
    pub fn word(&mut self, points: usize, len: usize) -> Word {
        Word::from_letters((0..len).map(|_| self.letter(points)).collect())
    }

    /// An Abelian word with `Σ|mᵢ| = len`; all coefficients of one point
    /// share a sign.
    pub fn abelian_word(&mut self, points: usize, len: usize) -> AbelianWord {
        let signs: Vec<i64> = (0..points).map(|_| if self.coin(0.5) { 1 } else { -1 }).collect();
        let mut coeffs = vec![0i64; points];
        for _ in 0..len {
            let p = self.below(points);
            coeffs[p] += signs[p];
        }
        AbelianWord::from_coeffs(coeffs.into_iter().enumerate())
    }

    /// A reflexive relation with each off-diagonal pair kept with
    /// probability `p`.
    pub fn relation(&mut self, n: usize, p: f64) -> Entourage {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| x != y)
            .collect();
        let kept: Vec<(usize, usize)> = pairs.into_iter().filter(|_| self.coin(p)).collect();
        Entourage::from_pairs(n, kept).expect("indices in range")
    }

    /// The topology of a random preorder.
    pub fn topology(&mut self, n: usize) -> FiniteTopology {
        let relation = self.relation(n, 0.3).transitive_closure();
        FiniteTopology::from_preorder(labels(n), &relation).expect("preorder")
    }

    /// A valid chain `X², V₁, …, V_depth` built bottom-up:
    /// `Vᵢ = Vᵢ₊₁³ ∪ extra pairs`.
    pub fn chain(&mut self, n: usize, depth: usize) -> EntourageChain {
        let mut levels = vec![self.relation(n, 0.15)];
        for _ in 1..depth {
            let below = levels.last().expect("nonempty");
            let grown = below.cube().union(&self.relation(n, 0.1)).expect("same size");
            levels.push(grown);
        }
        levels.push(Entourage::full(n));
        levels.reverse();
        EntourageChain::new(labels(n), levels).expect("cube condition holds by construction")
    }

    /// A random subset of `0..n` with at least `min` elements, sorted.
    pub fn subset(&mut self, n: usize, min: usize) -> Vec<usize> {
        let k = self.between(min.min(n), n);
        let mut all: Vec<usize> = (0..n).collect();
        all.shuffle(&mut self.rng);
        let mut out = all[..k].to_vec();
        out.sort_unstable();
        out
    }

    /// A chain `V₀ = G ⊇ … ⊇ V_depth ∋ e` with `Vᵢ₊₁³ ⊆ Vᵢ`.
    pub fn group_chain(&mut self, group: &FiniteGroup, depth: usize) -> Vec<GroupSubset> {
        let order = group.order();
        let mut bottom = vec![false; order];
        bottom[group.identity()] = true;
        for _ in 0..self.below(3) {
            bottom[self.below(order)] = true;
        }
        let mut levels = vec![GroupSubset(bottom)];
        for _ in 1..depth {
            let v = levels.last().expect("nonempty");
            let mut grown = group.product(&group.product(v, v), v);
            for _ in 0..self.below(3) {
                grown.0[self.below(order)] = true;
            }
            levels.push(grown);
        }
        levels.push(GroupSubset(vec![true; order]));
        levels.reverse();
        levels
    }

    /// Indices `k₁, …, kₙ ≤ depth` and `r` with `Σ 2^{-kᵢ} ≤ 2^{-r}`.
    pub fn index_budget(&mut self, depth: usize) -> (Vec<usize>, usize) {
        let r = self.below(depth);
        // Work in units of 2^{-depth}.
        let mut budget = 1u64 << (depth - r);
        let mut ks = Vec::new();
        loop {
            let options: Vec<usize> = (r..=depth).filter(|&k| (1u64 << (depth - k)) <= budget).collect();
            if options.is_empty() {
                break;
            }
            let k = options[self.below(options.len())];
            budget -= 1 << (depth - k);
            ks.push(k);
            if self.coin(0.3) {
                break;
            }
        }
        (ks, r)
    }
}
