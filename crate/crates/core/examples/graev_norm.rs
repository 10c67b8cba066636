// Free-group norms: the interval dynamic program and the brute-force
// witness, on an asymmetric two-point space.

use graev::formats::parse_space;
use graev::graev::{hat_dist, norm_dp, norm_oracle};
use graev::words::Word;

const SPACE: &str = r#"{"points": ["a", "b"], "matrix": [["0", "1/4"], ["1", "0"]]}"#;

pub fn run() -> graev::Result<()> {
    let rho = parse_space(SPACE)?;
    let labels = rho.labels().to_vec();
    for text in ["a^-1 b", "b^-1 a", "a b", "a b^-1 a b"] {
        let g = Word::parse(text, &labels)?;
        let best = norm_oracle(&g, &rho)?;
        println!(
            "N({text}) = {} (dp {}), witness {} with {}",
            best.value,
            norm_dp(&g, &rho)?,
            best.witness_word.display(&labels),
            best.witness_scheme
        );
    }
    let (a, b) = (Word::parse("a", &labels)?, Word::parse("b", &labels)?);
    println!("d(a, b) = {}, d(b, a) = {}", hat_dist(&a, &b, &rho)?, hat_dist(&b, &a, &rho)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> graev::Result<()> {
    run()
}
