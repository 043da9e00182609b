// Mean influence per level and the fitted decay rate of its logarithm.

use becrank::error::Result;
use becrank::orders::influence_table;

pub fn run_example() -> Result<()> {
    let table = influence_table(12, 4, 64);
    for m in &table.means {
        println!("level {:>2}: mean {:.6}  log2 {:+.4}", m.level, m.mean, m.log2_mean);
    }
    println!("slope over levels 4..=12: {:.5}", table.slope);
    println!("-1/4 = -0.25000, -1/3.627 = {:.5}", -1.0 / 3.627);
    println!("least influence at level 12: {}", table.rows.iter().filter(|r| r.level == 12).map(|r| &r.influence).min().unwrap());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
