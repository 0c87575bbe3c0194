//! When no finite basis exists, list the first members of an infinite one.

use sigmagb::cli::{parse_poly, render};
use sigmagb::sigma::{finite_gb, gap, infinite_gb_stream, FiniteGb};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = parse_poly("x^2-3*x+1")?;
    assert!(matches!(finite_gb(&f, None)?, FiniteGb::Infinite));
    for (i, s) in infinite_gb_stream(&f, 4)?.iter().enumerate() {
        println!("s_{} = {}  (gap {:?})", i + 1, render(s), gap(s));
    }
    Ok(())
}
