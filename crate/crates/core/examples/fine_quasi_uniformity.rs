// The fine quasi-uniformity of a finite space, its traces, and which
// distances are uniform for it.

use graev::formats::parse_space;
use graev::gen::labels;
use graev::quniform::{fine_quniformity, quasi_uniformity_violation, restrict, subspace_check, FiniteTopology};

pub fn run() -> graev::Result<()> {
    // Opens ∅, {c}, {b, c}, X.
    let y = FiniteTopology::from_opens(labels(3), &[vec![], vec![2], vec![1, 2], vec![0, 1, 2]])?;
    let e_y = fine_quniformity(&y);
    println!("generator of E_Y: {:?}", e_y.generator().pairs().collect::<Vec<_>>());

    let subset = [0, 2];
    let trace = restrict(&e_y, &subset)?;
    println!("trace on {{a, c}}: {:?}", trace.generator().pairs().collect::<Vec<_>>());
    let x = y.subspace(&subset)?;
    println!("subspace check: {}", subspace_check(&x, &y, &subset)?);

    let d = parse_space(r#"{"points": ["a", "c"], "matrix": [["0", "0"], ["1", "0"]]}"#)?;
    let bad = parse_space(r#"{"points": ["a", "c"], "matrix": [["0", "1/2"], ["1", "0"]]}"#)?;
    println!("uniform violation of d: {:?}", quasi_uniformity_violation(&d, &trace)?);
    println!("uniform violation of the other: {:?}", quasi_uniformity_violation(&bad, &trace)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> graev::Result<()> {
    run()
}
