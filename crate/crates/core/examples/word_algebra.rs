// Parsing, reducing and abelianizing words over a labelled alphabet.

use graev::words::Word;

pub fn run() -> graev::Result<()> {
    let labels: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
    let g = Word::parse("a b b^-1 c a^-1", &labels)?;
    let reduced = g.reduce();
    println!("{} reduces to {}", g.display(&labels), reduced.display(&labels));

    let h = Word::parse("a c^-1", &labels)?;
    let product = reduced.multiply(&h).reduce();
    println!("product with {}: {}", h.display(&labels), product.display(&labels));
    println!("inverse: {}", product.invert().display(&labels));
    println!("abelianized: {}", product.abelianize().to_json(&labels));

    for padded in Word::parse("a^-1 b", &labels)?.enumerate_paddings(2)? {
        println!("  padding: {}", padded.display(&labels));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> graev::Result<()> {
    run()
}
