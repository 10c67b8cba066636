// Extending a quasi-pseudometric from a subspace, and the obstruction when
// the subspace carries a finer topology.

use graev::extend::{extend_qpm, non_extendability_witness, EmbeddingInstance};
use graev::formats::parse_space;
use graev::gen::labels;
use graev::quniform::FiniteTopology;

pub fn run() -> graev::Result<()> {
    let y = FiniteTopology::discrete(labels(3))?;
    let d = parse_space(r#"{"points": ["a", "b"], "matrix": [["0", "1/4"], ["1/2", "0"]]}"#)?;
    let inst = EmbeddingInstance::new(y, vec![0, 1], d)?;
    let ext = extend_qpm(&inst)?;
    println!("series depth {}, normalization {}", ext.series_depth, ext.normalization);
    for row in ext.d_tilde.matrix() {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        println!("  {}", cells.join("  "));
    }

    // Y has U_a = {a, b}; X = {a, b} is given the discrete topology.
    let y = FiniteTopology::from_min_nbhd(labels(3), &[vec![0, 1], vec![1], vec![1, 2]])?;
    let x = FiniteTopology::discrete(labels(2))?;
    if let Some(w) = non_extendability_witness(&y, &[0, 1], &x)? {
        println!("no extension: d{:?} = {}", w.pair, w.d.dist(w.pair.0, w.pair.1));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> graev::Result<()> {
    run()
}
