// Pairs that are ordered but whose degree-256 Bernstein coefficients do not show it.

use becrank::bits::BitString;
use becrank::certify::std_compare;
use becrank::error::Result;
use becrank::verify::ber_gap_pairs;

pub fn run_example() -> Result<()> {
    let pairs = ber_gap_pairs(8)?;
    println!("{} ordered pairs of {{0,1}}^8 missed at degree 256", pairs.len());
    for (hi, lo) in &pairs {
        println!("  {} >= {}  ({} >= {})  std says {:?}", hi.short_label(), lo.short_label(), hi, lo, std_compare(hi, lo)?);
    }
    let (a, b): (BitString, BitString) = ("01".parse()?, "10".parse()?);
    println!("for contrast, {a} vs {b} at degree 4: {:?}", becrank::bernstein::ber_order(&a, &b, 4)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
