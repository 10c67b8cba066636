// Norms on the free Abelian group via exact min-weight matching.

use graev::formats::parse_space;
use graev::graev::{abelian_matching, abelian_norm_oracle};
use graev::words::AbelianWord;

const SPACE: &str = r#"{"points": ["a", "b", "c"],
    "matrix": [["0", "1/4", "1/2"], ["3/4", "0", "1/4"], ["1/2", "1/2", "0"]]}"#;

pub fn run() -> graev::Result<()> {
    let rho = parse_space(SPACE)?;
    let labels = rho.labels().to_vec();
    for text in [r#"{"a": -1, "b": 1}"#, r#"{"a": -2, "c": 2}"#, r#"{"a": 1, "b": 1, "c": -1}"#] {
        let h = AbelianWord::parse_json(text, &labels)?;
        let m = abelian_matching(&h, &rho)?;
        let oracle = abelian_norm_oracle(&h, &rho)?;
        let cross: Vec<String> = m
            .cross
            .iter()
            .map(|&(y, z)| format!("-{} + {}", labels[y.0], labels[z.0]))
            .collect();
        println!("N_A({text}) = {} (oracle {}), pairs [{}], {} left to e", m.value, oracle.value, cross.join(", "), m.unmatched.len());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> graev::Result<()> {
    run()
}
