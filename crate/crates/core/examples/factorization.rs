// Conjugate factorization of a word along a scheme, and the pair
// decomposition of an Abelian element.

use graev::formats::parse_space;
use graev::graev::{enumerate_schemes, lemma2_decompose, lemma4_factorize, Pairing};
use graev::words::{AbelianWord, Letter, Word};

pub fn run() -> graev::Result<()> {
    let labels: Vec<String> = ["x", "y", "z", "w"].iter().map(|s| s.to_string()).collect();
    let g = Word::from_letters((0..4).map(Letter::pos).collect());
    for phi in enumerate_schemes(2) {
        let f = lemma4_factorize(&g, &phi)?;
        let factors: Vec<String> = f
            .indices
            .iter()
            .zip(&f.conjugators)
            .map(|(&i, h)| {
                let core = Word::from_letters(vec![g.letters()[i], g.letters()[phi.partner(i)]]);
                format!("({})", h.multiply(&core).multiply(&h.invert()).display(&labels))
            })
            .collect();
        println!("{phi}: {} = {}", g.display(&labels), factors.join(" "));
    }

    let rho = parse_space(r#"{"points": ["a", "b"], "matrix": [["0", "1/4"], ["1", "0"]]}"#)?;
    let names = rho.labels().to_vec();
    for text in [r#"{"a": -2, "b": 2}"#, r#"{"a": 1, "b": 1}"#] {
        let h = AbelianWord::parse_json(text, &names)?;
        let d = lemma2_decompose(&h, &rho)?;
        println!("{text}: {} pairs, cost {}, metric form {:?}", d.pairs.len(), d.sum, d.metric_form.map(|f| f.len()));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> graev::Result<()> {
    run()
}
