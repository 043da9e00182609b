// One pair under every total order and preorder.

use becrank::bits::BitString;
use becrank::error::Result;
use becrank::orders::{at0_compare, at1_compare, avg_compare, beta_compare, fst_compare, hlf, hlf_compare, BetaParam};

pub fn run_example() -> Result<()> {
    let (alpha, gamma): (BitString, BitString) = ("100001".parse()?, "011000".parse()?);
    println!("{alpha} vs {gamma}");
    println!("  avg  {:?}", avg_compare(&alpha, &gamma)?);
    println!("  hlf  {:?}  ({} vs {})", hlf_compare(&alpha, &gamma).outcome, hlf(&alpha, 40).to_decimal(12), hlf(&gamma, 40).to_decimal(12));
    println!("  @0   {:?}", at0_compare(&alpha, &gamma)?);
    println!("  @1   {:?}", at1_compare(&alpha, &gamma)?);
    println!("  fst  {:?}", fst_compare(&alpha, &gamma)?);
    for base in ["2^(1/4)", "2^(1/3.627)", "3/2"] {
        let b: BetaParam = base.parse()?;
        println!("  beta {b}  {:?}", beta_compare(&alpha, &gamma, &b).outcome);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
