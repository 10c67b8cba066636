use std::ops::AddAssign;

use num_traits::Zero;

use super::scheme::{enumerate_schemes, Scheme};
use super::NormResult;
use crate::error::{Error, Result};
use crate::qpspace::{rho_star, Qpm, RhoStar};
use crate::rational::{common_denominator, half, scaled_i128, Rational};
use crate::words::{Letter, Word};

/// Search window for [`norm_oracle_with`]: half-lengths
/// `⌈ℓ/2⌉ ..= ℓ + extra_levels`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OracleOptions {
    pub extra_levels: usize,
}

/// Brute-force norm: minimum of `Γ` over every neutral padding of the
/// reduced word to length `2n` with `⌈ℓ/2⌉ ≤ n ≤ ℓ` and every scheme on
/// `2n` positions.
pub fn norm_oracle(g: &Word, rho: &Qpm) -> Result<NormResult<Scheme>> {
    norm_oracle_with(g, rho, OracleOptions::default())
}

/// Ties are broken by the first minimizer in the order (n, padding
/// positions, scheme).
pub fn norm_oracle_with(g: &Word, rho: &Qpm, opts: OracleOptions) -> Result<NormResult<Scheme>> {
    let star = rho_star(rho)?;
    let g = g.reduce();
    if g.is_empty() {
        return Ok(NormResult::neutral());
    }
    let len = g.len();

    // Symbols: 0..len are the letters of g, len is e.
    let mut symbols: Vec<Letter> = g.letters().to_vec();
    symbols.push(Letter::Neutral);
    let m = symbols.len();
    // Full Γ contribution of a pair: ρ*(x⁻¹, y) + ρ*(y⁻¹, x), not yet halved.
    let table: Vec<Rational> = symbols
        .iter()
        .flat_map(|&x| symbols.iter().map(move |&y| (x, y)))
        .map(|(x, y)| star.value(x.inverse(), y) + star.value(y.inverse(), x))
        .collect();

    let lo = len.div_ceil(2);
    let hi = len + opts.extra_levels;
    let scale = common_denominator(table.iter());
    let limit = i64::MAX / (2 * hi as i64 + 2);
    let scaled: Option<Vec<i64>> = table
        .iter()
        .map(|v| scaled_i128(v, &scale).and_then(|x| i64::try_from(x).ok()))
        .collect();
    let best = match scaled.filter(|t| t.iter().all(|&v| v.abs() < limit)) {
        Some(t) => search(&g, lo, hi, m, &t)?.map(|(v, w)| (Rational::new(v.into(), scale.clone()), w)),
        None => search(&g, lo, hi, m, &table)?,
    };
    let (total, (word, scheme)) = best.expect("the window is nonempty");
    let value = total * half();
    Ok(NormResult {
        value,
        witness_word: word,
        witness_scheme: scheme,
    })
}

type Witness = (Word, Scheme);

fn search<T>(g: &Word, lo: usize, hi: usize, m: usize, table: &[T]) -> Result<Option<(T, Witness)>>
where
    T: Clone + Ord + Zero + for<'a> AddAssign<&'a T>,
{
    let neutral = g.len();
    let mut best: Option<(T, Witness)> = None;
    for n in lo..=hi {
        let schemes: Vec<(Scheme, Vec<(usize, usize)>)> = enumerate_schemes(n)
            .map(|s| {
                let pairs = super::scheme::Pairing::pairs(&s);
                (s, pairs)
            })
            .collect();
        for padded in g.enumerate_paddings(n)? {
            let mut next_letter = 0;
            let symbols: Vec<usize> = padded
                .letters()
                .iter()
                .map(|&l| {
                    if l == Letter::Neutral {
                        neutral
                    } else {
                        next_letter += 1;
                        next_letter - 1
                    }
                })
                .collect();
            for (scheme, pairs) in &schemes {
                let mut total = T::zero();
                let mut pruned = false;
                for &(a, b) in pairs {
                    total += &table[symbols[a] * m + symbols[b]];
                    if matches!(&best, Some((b, _)) if &total >= b) {
                        pruned = true;
                        break;
                    }
                }
                if !pruned {
                    best = Some((total, (padded.clone(), scheme.clone())));
                }
            }
        }
    }
    Ok(best)
}

/// Norm by interval dynamic programming over the reduced word.
///
/// `f(i, j)` is the cheapest way to settle letters `i..j`: letter `i` either
/// closes against a virtual `e`, or pairs with some `k` in `i+1..j`, which
/// splits the rest into `i+1..k` and `k+1..j`.
pub fn norm_dp(g: &Word, rho: &Qpm) -> Result<Rational> {
    let star = rho_star(rho)?;
    let g = g.reduce();
    let x = g.letters();
    let len = x.len();
    if len == 0 {
        return Ok(Rational::zero());
    }
    let pair = |a: Letter, b: Letter, star: &RhoStar| (star.value(a.inverse(), b) + star.value(b.inverse(), a)) * half();
    let closing: Vec<Rational> = x.iter().map(|&a| pair(a, Letter::Neutral, &star)).collect();

    // f[i][j] for 0 ≤ i ≤ j ≤ len, stored row-major.
    let idx = |i: usize, j: usize| i * (len + 1) + j;
    let mut f = vec![Rational::zero(); (len + 1) * (len + 1)];
    for width in 1..=len {
        for i in 0..=len - width {
            let j = i + width;
            let mut best = &closing[i] + &f[idx(i + 1, j)];
            for k in i + 1..j {
                let cand = pair(x[i], x[k], &star) + &f[idx(i + 1, k)] + &f[idx(k + 1, j)];
                if cand < best {
                    best = cand;
                }
            }
            f[idx(i, j)] = best;
        }
    }
    Ok(f[idx(0, len)].clone())
}

/// `ρ̂(g, h) = N(g⁻¹h)`.
pub fn hat_dist(g: &Word, h: &Word, rho: &Qpm) -> Result<Rational> {
    norm_dp(&g.invert().multiply(h), rho)
}

/// Whether `N(g) < eps`.
pub fn ball_membership(g: &Word, rho: &Qpm, eps: &Rational) -> Result<bool> {
    if eps <= &Rational::zero() {
        return Err(Error::NonpositiveRadius(eps.to_string()));
    }
    Ok(&norm_dp(g, rho)? < eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graev::scheme::gamma;
    use crate::rational::{int, ratio};

    fn instance_a() -> Qpm {
        Qpm::new(vec!["a".into(), "b".into()], vec![vec![int(0), ratio(1, 4)], vec![int(1), int(0)]]).unwrap()
    }

    fn w(text: &str, rho: &Qpm) -> Word {
        Word::parse(text, rho.labels()).unwrap()
    }

    #[test]
    fn instance_a_norms() {
        let a = instance_a();
        for (text, expected) in [("a^-1 b", ratio(1, 4)), ("b^-1 a", int(1)), ("a b", int(2)), ("", int(0))] {
            let g = w(text, &a);
            let oracle = norm_oracle(&g, &a).unwrap();
            assert_eq!(oracle.value, expected, "{text}");
            assert_eq!(norm_dp(&g, &a).unwrap(), expected, "{text}");
            assert_eq!(gamma(&oracle.witness_word, &oracle.witness_scheme, &a).unwrap(), expected);
            assert_eq!(oracle.witness_word.reduce(), g);
            assert!(oracle.witness_word.is_almost_irreducible());
        }
    }

    #[test]
    fn hat_dist_examples() {
        let a = instance_a();
        assert_eq!(hat_dist(&w("a", &a), &w("b", &a), &a).unwrap(), ratio(1, 4));
        assert_eq!(hat_dist(&w("b", &a), &w("a", &a), &a).unwrap(), int(1));
        let g = w("a b^-1 a", &a);
        assert_eq!(hat_dist(&g, &g, &a).unwrap(), int(0));
        let c = w("b b a^-1", &a);
        assert_eq!(
            hat_dist(&c.multiply(&w("a", &a)), &c.multiply(&w("b", &a)), &a).unwrap(),
            ratio(1, 4)
        );
    }

    #[test]
    fn ball_examples() {
        let a = instance_a();
        assert!(ball_membership(&w("a^-1 b", &a), &a, &ratio(1, 2)).unwrap());
        assert!(!ball_membership(&w("b^-1 a", &a), &a, &ratio(1, 2)).unwrap());
        assert!(ball_membership(&w("e", &a), &a, &ratio(1, 1000)).unwrap());
        assert!(ball_membership(&w("e", &a), &a, &int(0)).is_err());
    }

    #[test]
    fn widened_window_agrees() {
        let a = instance_a();
        for text in ["a^-1 b", "b a^-1", "a a b^-1"] {
            let g = w(text, &a);
            let wide = norm_oracle_with(&g, &a, OracleOptions { extra_levels: 1 }).unwrap();
            assert_eq!(wide.value, norm_oracle(&g, &a).unwrap().value);
        }
    }
}
