use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::qpspace::{rho_star, Qpm};
use crate::rational::{half, Rational};
use crate::words::Word;

/// A perfect matching of `{0, …, 2n-1}` given by each position's partner.
pub trait Pairing {
    fn half_len(&self) -> usize;
    fn partner(&self, i: usize) -> usize;

    /// Pairs `(a, b)` with `a < b`, sorted by `a`.
    fn pairs(&self) -> Vec<(usize, usize)> {
        (0..2 * self.half_len())
            .filter(|&i| i < self.partner(i))
            .map(|i| (i, self.partner(i)))
            .collect()
    }
}

fn partner_table(n: usize, pairs: &[(usize, usize)]) -> Result<Vec<usize>> {
    let mut partner = vec![usize::MAX; 2 * n];
    if pairs.len() != n {
        return Err(Error::InvalidScheme(format!("{} pairs given for n = {n}", pairs.len())));
    }
    for &(a, b) in pairs {
        let (a, b) = (a.min(b), a.max(b));
        if a == b || b >= 2 * n || partner[a] != usize::MAX || partner[b] != usize::MAX {
            return Err(Error::InvalidScheme(format!(
                "pair ({}, {}) does not fit a partition of 1..{}",
                a + 1,
                b + 1,
                2 * n
            )));
        }
        partner[a] = b;
        partner[b] = a;
    }
    Ok(partner)
}

fn fmt_pairs(pairs: &[(usize, usize)], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "{{")?;
    for (i, (a, b)) in pairs.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{{{},{}}}", a + 1, b + 1)?;
    }
    write!(f, "}}")
}

/// A non-crossing perfect matching of `{0, …, 2n-1}`: any two pair
/// intervals are disjoint or nested. Displayed 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scheme {
    partner: Vec<usize>,
}

impl Scheme {
    /// Builds a scheme from 0-based pairs, rejecting crossings.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Scheme> {
        if n == 0 {
            return Err(Error::InvalidScheme("a scheme needs n >= 1".into()));
        }
        let partner = partner_table(n, pairs)?;
        let scheme = Scheme { partner };
        let sorted = scheme.pairs();
        for (i, &(a, b)) in sorted.iter().enumerate() {
            for &(c, d) in &sorted[i + 1..] {
                if c < b && b < d {
                    return Err(Error::InvalidScheme(format!(
                        "pairs {{{},{}}} and {{{},{}}} cross",
                        a + 1,
                        b + 1,
                        c + 1,
                        d + 1
                    )));
                }
            }
        }
        Ok(scheme)
    }

    /// Pairs `(a, b)` whose interval strictly contains `[i, partner(i)]`,
    /// innermost first.
    pub fn enclosing(&self, i: usize) -> Vec<(usize, usize)> {
        let (lo, hi) = (i.min(self.partner[i]), i.max(self.partner[i]));
        let mut out: Vec<(usize, usize)> = self.pairs().into_iter().filter(|&(a, b)| a < lo && hi < b).collect();
        out.sort_by_key(|&(_, b)| b);
        out
    }
}

impl Pairing for Scheme {
    fn half_len(&self) -> usize {
        self.partner.len() / 2
    }

    fn partner(&self, i: usize) -> usize {
        self.partner[i]
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_pairs(&self.pairs(), f)
    }
}

/// A fixed-point-free involution of `{0, …, 2n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianScheme {
    partner: Vec<usize>,
}

impl AbelianScheme {
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<AbelianScheme> {
        if n == 0 {
            return Err(Error::InvalidScheme("a scheme needs n >= 1".into()));
        }
        Ok(AbelianScheme {
            partner: partner_table(n, pairs)?,
        })
    }
}

impl Pairing for AbelianScheme {
    fn half_len(&self) -> usize {
        self.partner.len() / 2
    }

    fn partner(&self, i: usize) -> usize {
        self.partner[i]
    }
}

impl fmt::Display for AbelianScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_pairs(&self.pairs(), f)
    }
}

impl From<Scheme> for AbelianScheme {
    fn from(s: Scheme) -> AbelianScheme {
        AbelianScheme { partner: s.partner }
    }
}

/// All schemes on `2n` positions. The first position is paired with
/// `1, 3, 5, …` in turn, so `n = 2` yields `{{1,2},{3,4}}` before
/// `{{1,4},{2,3}}`.
pub fn enumerate_schemes(n: usize) -> impl Iterator<Item = Scheme> {
    let mut out = Vec::new();
    if n > 0 {
        let mut partner = vec![0; 2 * n];
        noncrossing(0, 2 * n, &mut partner, &mut |p| out.push(Scheme { partner: p.to_vec() }));
    }
    out.into_iter()
}

// Fills every non-crossing matching of [lo, hi) into `partner`.
fn noncrossing(lo: usize, hi: usize, partner: &mut Vec<usize>, emit: &mut dyn FnMut(&[usize])) {
    if lo == hi {
        emit(partner);
        return;
    }
    for k in (lo + 1..hi).step_by(2) {
        partner[lo] = k;
        partner[k] = lo;
        let mut rest = |p: &[usize]| {
            let mut p = p.to_vec();
            noncrossing(k + 1, hi, &mut p, emit);
        };
        noncrossing(lo + 1, k, partner, &mut rest);
    }
}

/// All fixed-point-free involutions on `2n` positions, pairing the smallest
/// free position with each later free position in increasing order.
pub fn enumerate_abelian_schemes(n: usize) -> impl Iterator<Item = AbelianScheme> {
    let mut out = Vec::new();
    if n > 0 {
        let mut partner = vec![usize::MAX; 2 * n];
        involutions(&mut partner, &mut out);
    }
    out.into_iter()
}

fn involutions(partner: &mut [usize], out: &mut Vec<AbelianScheme>) {
    let Some(first) = partner.iter().position(|&p| p == usize::MAX) else {
        out.push(AbelianScheme {
            partner: partner.to_vec(),
        });
        return;
    };
    for k in first + 1..partner.len() {
        if partner[k] != usize::MAX {
            continue;
        }
        partner[first] = k;
        partner[k] = first;
        involutions(partner, out);
        partner[first] = usize::MAX;
        partner[k] = usize::MAX;
    }
}

/// `Γ(𝒳, φ) = ½ Σᵢ ρ*(xᵢ⁻¹, x_{φ(i)})` over the raw letters of `word`.
pub fn gamma(word: &Word, phi: &dyn Pairing, rho: &Qpm) -> Result<Rational> {
    let star = rho_star(rho)?;
    let letters = word.letters();
    if letters.len() % 2 == 1 {
        return Err(Error::OddLength(letters.len()));
    }
    if letters.len() != 2 * phi.half_len() {
        return Err(Error::SchemeMismatch {
            scheme: phi.half_len(),
            word: letters.len(),
        });
    }
    let mut total = Rational::zero();
    for (i, &x) in letters.iter().enumerate() {
        total += star.value(x.inverse(), letters[phi.partner(i)]);
    }
    Ok(total * half())
}
