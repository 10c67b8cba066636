//! Graev quasi-prenorms on the free group and the free Abelian group over a
//! finite quasi-pseudometric space.
//!
//! Every norm has two independent routes: a brute-force oracle over padded
//! words and schemes, and a fast solver (interval DP for the free group, an
//! exact assignment for the Abelian group).

mod abelian;
mod lemmas;
mod norm;
mod scheme;

pub use abelian::{
    abelian_matching, abelian_norm_matching, abelian_norm_oracle, ball_membership_abelian, hat_dist_abelian,
    AbelianMatching,
};
pub use lemmas::{lemma2_decompose, lemma4_factorize, pair_sum, Factorization, Lemma2Decomposition};
pub use norm::{ball_membership, hat_dist, norm_dp, norm_oracle, norm_oracle_with, OracleOptions};
pub use scheme::{enumerate_abelian_schemes, enumerate_schemes, gamma, AbelianScheme, Pairing, Scheme};

use crate::rational::Rational;
use crate::words::{Letter, Word};

/// An attained minimum together with the padded word and pairing realizing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormResult<S> {
    pub value: Rational,
    pub witness_word: Word,
    pub witness_scheme: S,
}

impl<S: From<Scheme>> NormResult<S> {
    /// `N(e) = 0`, witnessed by `e e` with the single pair.
    fn neutral() -> NormResult<S> {
        NormResult {
            value: Rational::default(),
            witness_word: Word::from_letters(vec![Letter::Neutral, Letter::Neutral]),
            witness_scheme: Scheme::from_pairs(1, &[(0, 1)]).expect("valid").into(),
        }
    }
}
