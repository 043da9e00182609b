// Closing rule sets under concatenation, duality and transitivity, with derivations.

use becrank::bits::BitString;
use becrank::closure::{closure_of, RuleSet};
use becrank::error::Result;

pub fn run_example() -> Result<()> {
    let rules: RuleSet = "ABF".parse()?;
    let closed = closure_of(&rules, 5, false)?;
    println!("rules {rules}: {} edges up to length {}", closed.edge_count(), closed.max_len());
    let (hi, lo): (BitString, BitString) = ("1000".parse()?, "0010".parse()?);
    println!("{hi} vs {lo}: {:?}", closed.classify(&hi, &lo));
    for line in closed.explain(&hi, &lo).unwrap_or_default() {
        println!("  {line}");
    }
    let mut csv = Vec::new();
    closed.write_csv(&mut csv)?;
    let text = String::from_utf8_lossy(&csv);
    println!("first edges:");
    for line in text.lines().take(4) {
        println!("  {line}");
    }
    let blocked = closure_of(&"AD".parse()?, 4, false);
    println!("conjectured rule without opting in: {}", blocked.err().map(|e| e.to_string()).unwrap_or_default());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
