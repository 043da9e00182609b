// Reliability polynomials of a few synthetic channels and their exact summaries.

use becrank::bernstein::{exp_mant_direct, exp_mant_formula, to_bernstein};
use becrank::bits::BitString;
use becrank::error::Result;
use becrank::reliability::{average, reliability_poly};

pub fn run_example() -> Result<()> {
    for s in ["0", "1", "01", "10", "011", "0110"] {
        let alpha: BitString = s.parse()?;
        let p = reliability_poly(&alpha)?;
        let bern = to_bernstein(&p, 1 << alpha.len())?;
        let lead = exp_mant_direct(&p)?;
        let formula = exp_mant_formula(&alpha);
        assert_eq!(formula.mantissa(), lead.mantissa);
        println!("I_{alpha} = {p}");
        println!("  average {}  near 0: {} x^{}", average(&alpha)?, lead.mantissa, lead.exponent);
        println!("  N-form {:?}", bern.n_form().iter().map(ToString::to_string).collect::<Vec<_>>());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
