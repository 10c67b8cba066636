// Products along chains of identity neighbourhoods in finite groups.

use graev::gen::Generator;
use graev::quniform::{lemma3_check, FiniteGroup, GroupSubset};

pub fn run() -> graev::Result<()> {
    // Intervals [0, 4^{3-i}] in Z_64.
    let z64 = FiniteGroup::cyclic(64);
    let chain: Vec<GroupSubset> = (0..4)
        .map(|i| {
            let top = if i == 0 { 63 } else { 4usize.pow(3 - i) };
            GroupSubset::from_elements(64, &(0..=top).collect::<Vec<_>>())
        })
        .collect::<graev::Result<_>>()?;
    println!("Z_64, V_2 V_2 inside V_1: {}", lemma3_check(&z64, &chain, &[2, 2], 1)?);
    println!("Z_64, V_2 V_3 V_3 inside V_1: {}", lemma3_check(&z64, &chain, &[2, 3, 3], 1)?);

    let s4 = FiniteGroup::symmetric(4);
    let mut gen = Generator::new(5);
    for _ in 0..3 {
        let chain = gen.group_chain(&s4, 3);
        let (ks, r) = gen.index_budget(3);
        println!("S4, ks {ks:?} into V_{r}: {}", lemma3_check(&s4, &chain, &ks, r)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> graev::Result<()> {
    run()
}
