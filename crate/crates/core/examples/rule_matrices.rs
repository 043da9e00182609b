// How much of the exact order each growing rule set recovers on {0,1}^8.

use becrank::error::Result;
use becrank::matrix::{MatrixMethod, RelationMatrix};

pub fn run_example() -> Result<()> {
    let m = 8;
    let exact = RelationMatrix::build(m, &MatrixMethod::Std)?;
    println!("std: {}", exact.census(None)?.all.incomparable);
    for sets in ["AB", "ABC", "ABCD", "ABCDF", "ABCDEF"] {
        let method = MatrixMethod::parse(&format!("rules:{sets}"), true)?;
        let census = RelationMatrix::build(m, &method)?.census(Some(&exact))?;
        let gap = census.not_dimmed.expect("reference given");
        println!(
            "{sets:>6}: incomparable {:>5}  disagreeing with std: greater {} less {}",
            census.all.incomparable, gap.greater, gap.less
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
