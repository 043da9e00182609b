// Four total orders on {0,1}^8 and the Kendall tau distance between each pair.

use becrank::error::Result;
use becrank::orders::{default_methods, KendallReport};

pub fn run_example() -> Result<()> {
    let report = KendallReport::build(8, &default_methods())?;
    for r in &report.rankings {
        let head: Vec<&str> = r.labels.iter().take(8).map(String::as_str).collect();
        println!("{:<18} best first: {} ...", r.method, head.join(" "));
    }
    println!("{report}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
