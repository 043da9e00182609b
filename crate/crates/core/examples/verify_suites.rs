// Machine checks of exact identities and lemmas.

use becrank::error::Result;
use becrank::verify::{run_suite, Suite};

pub fn run_example() -> Result<()> {
    let quick = [
        (Suite::RsFIdentity, None),
        (Suite::RsELemma, None),
        (Suite::Martingale, Some(6)),
        (Suite::Duality, Some(5)),
        (Suite::ExpMant, Some(8)),
    ];
    for (suite, len) in quick {
        let report = run_suite(suite, len)?;
        println!("{report}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
