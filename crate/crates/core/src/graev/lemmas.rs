//! Constructive decompositions: pairs `(uᵢ, vᵢ)` realizing the Abelian norm,
//! and the conjugate factorization of a word along a scheme.

use num_traits::One;

use super::abelian::abelian_matching;
use super::scheme::{Pairing, Scheme};
use crate::error::{Error, Result};
use crate::qpspace::{rho_star, Qpm};
use crate::rational::Rational;
use crate::words::{AbelianWord, Letter, Point, Word};

/// `h = Σ (−uᵢ + vᵢ)` with `Σ ρ*(uᵢ, vᵢ) = N_A(h)`. Letters are read
/// additively: `Pos(x)` is `x`, `Neg(x)` is `−x`, `Neutral` is `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma2Decomposition {
    pub pairs: Vec<(Letter, Letter)>,
    pub sum: Rational,
    /// When the norm is below `1`: `(yᵢ, zᵢ) ∈ X²` with `h = Σ (−yᵢ + zᵢ)`
    /// and `Σ ρ(yᵢ, zᵢ)` equal to the norm.
    pub metric_form: Option<Vec<(Point, Point)>>,
}

fn as_abelian(letter: Letter) -> AbelianWord {
    match letter {
        Letter::Pos(p) => AbelianWord::generator(p.0),
        Letter::Neg(p) => AbelianWord::generator(p.0).neg(),
        Letter::Neutral => AbelianWord::neutral(),
    }
}

/// Sum `Σ (−uᵢ + vᵢ)` of a pair list.
pub fn pair_sum(pairs: &[(Letter, Letter)]) -> AbelianWord {
    pairs
        .iter()
        .fold(AbelianWord::neutral(), |acc, &(u, v)| acc.sub(&as_abelian(u)).add(&as_abelian(v)))
}

pub fn lemma2_decompose(h: &AbelianWord, rho: &Qpm) -> Result<Lemma2Decomposition> {
    if h.is_neutral() {
        return Err(Error::NeutralInput);
    }
    let star = rho_star(rho)?;
    let matching = abelian_matching(h, rho)?;

    // Cross pair −y + z: u = y, v = z.
    let mut pairs: Vec<(Letter, Letter)> = matching
        .cross
        .iter()
        .map(|&(y, z)| (Letter::Pos(y), Letter::Pos(z)))
        .collect();
    // Leftovers share a sign; pair them up and close an odd one with e.
    for chunk in matching.unmatched.chunks(2) {
        let pair = match *chunk {
            [Letter::Pos(z1), Letter::Pos(z2)] => (Letter::Neg(z1), Letter::Pos(z2)),
            [Letter::Neg(y1), Letter::Neg(y2)] => (Letter::Pos(y1), Letter::Neg(y2)),
            [Letter::Pos(z)] => (Letter::Neutral, Letter::Pos(z)),
            [Letter::Neg(y)] => (Letter::Pos(y), Letter::Neutral),
            _ => unreachable!("unmatched letters share a sign"),
        };
        pairs.push(pair);
    }
    let sum: Rational = pairs.iter().map(|&(u, v)| star.value(u, v)).sum();

    if pair_sum(&pairs) != *h {
        return Err(Error::PostconditionFailed("decomposition does not sum to h".into()));
    }
    if sum != matching.value {
        return Err(Error::PostconditionFailed("decomposition cost differs from the norm".into()));
    }
    let metric_form = (sum < Rational::one()).then(|| {
        debug_assert!(matching.unmatched.is_empty());
        matching.cross.clone()
    });
    if let Some(form) = &metric_form {
        let metric: Rational = form.iter().map(|&(y, z)| rho.dist(y.0, z.0).clone()).sum();
        if metric != sum {
            return Err(Error::PostconditionFailed("metric form cost differs from the norm".into()));
        }
    }
    Ok(Lemma2Decomposition {
        pairs,
        sum,
        metric_form,
    })
}

/// Output of [`lemma4_factorize`], 0-based: `g` is the product over `k` of
/// `h_k · x_{i_k} · x_{φ(i_k)} · h_k⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub indices: Vec<usize>,
    pub conjugators: Vec<Word>,
}

impl Factorization {
    pub fn product(&self, g: &Word, phi: &Scheme) -> Word {
        let x = g.letters();
        self.indices
            .iter()
            .zip(&self.conjugators)
            .fold(Word::identity(), |acc, (&i, h)| {
                let core = Word::from_letters(vec![x[i], x[phi.partner(i)]]);
                acc.multiply(&core.conjugate_by(h))
            })
    }
}

/// Splits `g` along `phi`. Openers are taken left to right; the conjugator
/// of a pair is the inverse of the product of the closing letters of the
/// pairs around it, innermost first.
pub fn lemma4_factorize(g: &Word, phi: &Scheme) -> Result<Factorization> {
    let x = g.letters();
    if x.len() % 2 == 1 {
        return Err(Error::OddLength(x.len()));
    }
    if !g.is_reduced() {
        let i = x.windows(2).position(|w| w[0].cancels_with(w[1])).unwrap_or(0);
        return Err(Error::NotReduced(i, i + 1));
    }
    if x.len() != 2 * phi.half_len() {
        return Err(Error::SchemeMismatch {
            scheme: phi.half_len(),
            word: x.len(),
        });
    }
    let mut indices = Vec::new();
    let mut conjugators = Vec::new();
    for (a, _) in phi.pairs() {
        let closers: Vec<Letter> = phi.enclosing(a).iter().map(|&(_, c)| x[c]).collect();
        indices.push(a);
        conjugators.push(Word::from_letters(closers).invert());
    }
    let out = Factorization { indices, conjugators };
    if out.product(g, phi) != *g {
        return Err(Error::PostconditionFailed("factorization does not reduce to g".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graev::abelian::abelian_norm_oracle;
    use crate::graev::scheme::enumerate_schemes;
    use crate::rational::{int, ratio};

    fn instance_a() -> Qpm {
        Qpm::new(vec!["a".into(), "b".into()], vec![vec![int(0), ratio(1, 4)], vec![int(1), int(0)]]).unwrap()
    }

    fn symbolic(len: usize) -> Word {
        Word::from_letters((0..len).map(Letter::pos).collect())
    }

    #[test]
    fn decompose_examples() {
        let a = instance_a();
        let d = lemma2_decompose(&AbelianWord::from_coeffs([(0, -1), (1, 1)]), &a).unwrap();
        assert_eq!(d.sum, ratio(1, 4));
        assert_eq!(d.metric_form, Some(vec![(Point(0), Point(1))]));

        let d = lemma2_decompose(&AbelianWord::from_coeffs([(0, -2), (1, 2)]), &a).unwrap();
        assert_eq!(d.sum, ratio(1, 2));
        assert_eq!(d.metric_form.unwrap().len(), 2);

        let h = AbelianWord::from_coeffs([(0, 1), (1, 1)]);
        let d = lemma2_decompose(&h, &a).unwrap();
        assert_eq!(d.sum, int(2));
        assert_eq!(d.sum, abelian_norm_oracle(&h, &a).unwrap().value);
        assert_eq!(d.pairs.len(), 1);
        assert!(d.metric_form.is_none());

        assert!(matches!(
            lemma2_decompose(&AbelianWord::neutral(), &a),
            Err(Error::NeutralInput)
        ));
    }

    #[test]
    fn odd_length_gets_one_neutral() {
        let a = instance_a();
        let h = AbelianWord::from_coeffs([(0, 3)]);
        let d = lemma2_decompose(&h, &a).unwrap();
        assert_eq!(d.pairs.len(), 2);
        assert_eq!(d.sum, int(3));
    }

    #[test]
    fn factorize_examples() {
        let g = symbolic(2);
        let phi = Scheme::from_pairs(1, &[(0, 1)]).unwrap();
        let f = lemma4_factorize(&g, &phi).unwrap();
        assert_eq!(f.indices, vec![0]);
        assert!(f.conjugators[0].is_empty());

        let g = symbolic(4);
        let nested = Scheme::from_pairs(2, &[(0, 3), (1, 2)]).unwrap();
        let f = lemma4_factorize(&g, &nested).unwrap();
        assert_eq!(f.indices, vec![0, 1]);
        assert!(f.conjugators[0].is_empty());
        assert_eq!(f.conjugators[1], Word::letter(Letter::neg(3)));

        let flat = Scheme::from_pairs(2, &[(0, 1), (2, 3)]).unwrap();
        let f = lemma4_factorize(&g, &flat).unwrap();
        assert_eq!(f.indices, vec![0, 2]);
        assert!(f.conjugators.iter().all(Word::is_empty));
    }

    #[test]
    fn factorize_every_scheme_up_to_eight() {
        for n in 1..=4 {
            let g = symbolic(2 * n);
            for phi in enumerate_schemes(n) {
                let f = lemma4_factorize(&g, &phi).unwrap();
                assert_eq!(f.product(&g, &phi), g);
            }
        }
    }

    #[test]
    fn factorize_rejects_bad_input() {
        let phi = Scheme::from_pairs(1, &[(0, 1)]).unwrap();
        let odd = Word::from_letters(vec![Letter::pos(0)]);
        assert!(matches!(lemma4_factorize(&odd, &phi), Err(Error::OddLength(1))));
        let unreduced = Word::from_letters(vec![Letter::pos(0), Letter::neg(0)]);
        assert!(matches!(lemma4_factorize(&unreduced, &phi), Err(Error::NotReduced(0, 1))));
    }
}
