// Metrizing a chain of relations and checking the sandwich at every level.

use graev::gen::labels;
use graev::qpspace::{frink_metrize, EntourageChain};
use graev::quniform::Entourage;
use graev::rational::pow2_inv;

pub fn run() -> graev::Result<()> {
    let n = 4;
    let diag = |extra: &[(usize, usize)]| Entourage::from_pairs(n, (0..n).map(|i| (i, i)).chain(extra.iter().copied()));
    let levels = vec![
        Entourage::full(n),
        diag(&[(0, 1), (1, 2), (0, 2), (3, 2)])?,
        diag(&[(0, 1)])?,
    ];
    let chain = EntourageChain::new(labels(n), levels)?;
    let rho = frink_metrize(&chain);
    for (x, row) in rho.matrix().iter().enumerate() {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        println!("{}: {}", rho.labels()[x], cells.join("  "));
    }
    for i in 1..=chain.depth() {
        let bound = pow2_inv(i as u32);
        let ok = (0..n).all(|x| {
            (0..n).all(|y| {
                let small = rho.dist(x, y) <= &bound;
                (!chain.levels()[i].contains(x, y) || small) && (!small || chain.levels()[i - 1].contains(x, y))
            })
        });
        println!("level {i}: sandwich {}", if ok { "holds" } else { "fails" });
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> graev::Result<()> {
    run()
}
