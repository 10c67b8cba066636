// The extended distances on `X ∪ {e}` and on the symmetric alphabet.

use graev::formats::parse_space;
use graev::qpspace::{rho_e, rho_star};

const SPACE: &str = r#"{"points": ["a", "b"], "matrix": [["0", "1/4"], ["1", "0"]]}"#;

pub fn run() -> graev::Result<()> {
    let rho = parse_space(SPACE)?;
    let with_e = rho_e(&rho)?.materialize()?;
    let star = rho_star(&rho)?.materialize()?;
    for (name, m) in [("rho_e", &with_e), ("rho*", &star)] {
        println!("{name} on {:?}", m.labels());
        for row in m.matrix() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            println!("  [{}]", cells.join(", "));
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> graev::Result<()> {
    run()
}
