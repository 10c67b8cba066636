use num_traits::Zero;

use super::scheme::{enumerate_abelian_schemes, AbelianScheme, Pairing};
use super::NormResult;
use crate::error::{Error, Result};
use crate::qpspace::{rho_star, Qpm};
use crate::rational::{half, Rational};
use crate::words::{AbelianWord, Letter, Point, Word};

/// Brute-force Abelian norm over every fixed-point-free involution of the
/// letters of `h` (one `e` appended when their number is odd).
pub fn abelian_norm_oracle(h: &AbelianWord, rho: &Qpm) -> Result<NormResult<AbelianScheme>> {
    let star = rho_star(rho)?;
    let mut letters = h.letters();
    if letters.is_empty() {
        return Ok(NormResult::neutral());
    }
    if letters.len() % 2 == 1 {
        letters.push(Letter::Neutral);
    }
    let cost = |i: usize, j: usize| {
        let (x, y) = (letters[i], letters[j]);
        star.value(x.inverse(), y) + star.value(y.inverse(), x)
    };
    let m = letters.len();
    let table: Vec<Rational> = (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).map(|(i, j)| cost(i, j)).collect();
    let mut best: Option<(Rational, AbelianScheme)> = None;
    for phi in enumerate_abelian_schemes(m / 2) {
        let total: Rational = phi.pairs().iter().map(|&(a, b)| &table[a * m + b]).sum();
        if best.as_ref().is_none_or(|(b, _)| &total < b) {
            best = Some((total, phi));
        }
    }
    let (total, phi) = best.expect("at least one involution");
    Ok(NormResult {
        value: total * half(),
        witness_word: Word::from_letters(letters),
        witness_scheme: phi,
    })
}

/// An optimal pairing of the letters of an Abelian word: each
/// `(negative, positive)` pair costs `ρ(y, z)`; the remaining letters are
/// all of one sign and cost `1` each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianMatching {
    pub value: Rational,
    /// `(y, z)` for a matched `−y` and `+z`.
    pub cross: Vec<(Point, Point)>,
    pub unmatched: Vec<Letter>,
}

/// Min-weight matching norm: a maximum-cardinality assignment between
/// negative and positive letters, solved exactly.
pub fn abelian_matching(h: &AbelianWord, rho: &Qpm) -> Result<AbelianMatching> {
    let star = rho_star(rho)?;
    let letters = h.letters();
    let neg: Vec<Point> = letters.iter().filter_map(|l| if let Letter::Neg(p) = l { Some(*p) } else { None }).collect();
    let pos: Vec<Point> = letters.iter().filter_map(|l| if let Letter::Pos(p) = l { Some(*p) } else { None }).collect();
    let weight = |y: Point, z: Point| {
        let (a, b) = (Letter::Neg(y), Letter::Pos(z));
        (star.value(a.inverse(), b) + star.value(b.inverse(), a)) * half()
    };
    let transpose = neg.len() > pos.len();
    let (rows, cols) = if transpose { (&pos, &neg) } else { (&neg, &pos) };
    let cost: Vec<Vec<Rational>> = rows
        .iter()
        .map(|&r| {
            cols.iter()
                .map(|&c| if transpose { weight(c, r) } else { weight(r, c) })
                .collect()
        })
        .collect();
    let assignment = hungarian(&cost);

    let mut value = Rational::zero();
    let mut cross = Vec::new();
    let mut used = vec![false; cols.len()];
    for (r, &c) in assignment.iter().enumerate() {
        value += &cost[r][c];
        used[c] = true;
        cross.push(if transpose { (cols[c], rows[r]) } else { (rows[r], cols[c]) });
    }
    let unmatched: Vec<Letter> = cols
        .iter()
        .zip(&used)
        .filter(|(_, &u)| !u)
        .map(|(&p, _)| if transpose { Letter::Neg(p) } else { Letter::Pos(p) })
        .collect();
    let closing = unmatched
        .iter()
        .map(|&l| (star.value(l.inverse(), Letter::Neutral) + star.value(Letter::Neutral, l)) * half());
    for c in closing {
        value += c;
    }
    Ok(AbelianMatching { value, cross, unmatched })
}

pub fn abelian_norm_matching(h: &AbelianWord, rho: &Qpm) -> Result<Rational> {
    Ok(abelian_matching(h, rho)?.value)
}

/// `ρ̂_A(g, h) = N_A(h − g)`.
pub fn hat_dist_abelian(g: &AbelianWord, h: &AbelianWord, rho: &Qpm) -> Result<Rational> {
    abelian_norm_matching(&h.sub(g), rho)
}

/// Whether `N_A(h) < eps`.
pub fn ball_membership_abelian(h: &AbelianWord, rho: &Qpm, eps: &Rational) -> Result<bool> {
    if eps <= &Rational::zero() {
        return Err(Error::NonpositiveRadius(eps.to_string()));
    }
    Ok(&abelian_norm_matching(h, rho)? < eps)
}

/// Rectangular assignment (rows ≤ columns) minimizing total cost; returns
/// the column of each row. Potentials method, exact arithmetic.
fn hungarian(cost: &[Vec<Rational>]) -> Vec<usize> {
    let n = cost.len();
    if n == 0 {
        return Vec::new();
    }
    let m = cost[0].len();
    assert!(n <= m, "more rows than columns");
    // 1-based with a sentinel column 0.
    let mut u = vec![Rational::zero(); n + 1];
    let mut v = vec![Rational::zero(); m + 1];
    let mut row_of = vec![0usize; m + 1];
    let mut way = vec![0usize; m + 1];
    for i in 1..=n {
        row_of[0] = i;
        let mut j0 = 0;
        let mut minv: Vec<Option<Rational>> = vec![None; m + 1];
        let mut done = vec![false; m + 1];
        loop {
            done[j0] = true;
            let i0 = row_of[j0];
            let mut delta: Option<Rational> = None;
            let mut j1 = 0;
            for j in 1..=m {
                if done[j] {
                    continue;
                }
                let cur = &cost[i0 - 1][j - 1] - &u[i0] - &v[j];
                if minv[j].as_ref().is_none_or(|mv| &cur < mv) {
                    minv[j] = Some(cur);
                    way[j] = j0;
                }
                let mj = minv[j].as_ref().expect("set above");
                if delta.as_ref().is_none_or(|d| mj < d) {
                    delta = Some(mj.clone());
                    j1 = j;
                }
            }
            let delta = delta.expect("a free column remains");
            for j in 0..=m {
                if done[j] {
                    u[row_of[j]] += &delta;
                    v[j] -= &delta;
                } else if let Some(mv) = minv[j].as_mut() {
                    *mv -= &delta;
                }
            }
            j0 = j1;
            if row_of[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            row_of[j0] = row_of[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assignment = vec![0; n];
    for j in 1..=m {
        if row_of[j] != 0 {
            assignment[row_of[j] - 1] = j - 1;
        }
    }
    assignment
}
