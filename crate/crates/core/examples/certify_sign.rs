// Certified comparisons: a nonnegativity proof and a sign-change witness.

use becrank::bits::BitString;
use becrank::certify::std_compare_certified;
use becrank::error::Result;
use becrank::reliability::reliability_poly;

pub fn run_example() -> Result<()> {
    for (a, g) in [("011", "10"), ("100001", "011000"), ("0110", "1001")] {
        let (alpha, gamma): (BitString, BitString) = (a.parse()?, g.parse()?);
        let (outcome, cert) = std_compare_certified(&alpha, &gamma)?;
        println!("{alpha} vs {gamma}: {outcome:?}");
        if let Some(cert) = cert {
            let diff = &reliability_poly(&alpha)? - &reliability_poly(&gamma)?;
            println!("  {}", cert.to_json());
            println!("  independent recheck: {}", cert.verify(&diff)?);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
