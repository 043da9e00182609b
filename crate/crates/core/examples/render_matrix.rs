// Renders the fast preorder on {0,1}^6 as a pixmap, dimmed where it agrees with the exact order.

use becrank::error::Result;
use becrank::matrix::{MatrixMethod, RelationMatrix, RenderSpec};

pub fn run_example() -> Result<()> {
    let m = 6;
    let exact = RelationMatrix::build(m, &MatrixMethod::Std)?;
    let fast = RelationMatrix::build(m, &MatrixMethod::Fst)?;
    let spec = RenderSpec::default();
    let ppm = spec.render(&fast, Some(&exact))?;
    let path = std::env::temp_dir().join("becrank_fst_6.ppm");
    std::fs::write(&path, &ppm)?;
    println!("wrote {} ({} bytes)", path.display(), ppm.len());
    print!("{}", fast.census(Some(&exact))?);
    let (bright, dim) = spec.recount(&ppm)?;
    println!("recounted from pixels: {} bright, {} dimmed", bright.total(), dim.total());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
