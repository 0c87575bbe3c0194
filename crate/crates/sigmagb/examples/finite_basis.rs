//! Finite difference Gröbner bases, with the certification check.

use sigmagb::cli::{parse_poly, render_monomial};
use sigmagb::sigma::{certify_sigma_gb, finite_gb, FiniteGb};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for s in ["x^2+x+1", "x-2", "x^2-2*x+2", "x^3-x^2+x-2", "x^2-3*x+1"] {
        let f = parse_poly(s)?;
        match finite_gb(&f, None)? {
            FiniteGb::Basis(b) => {
                println!("{s}: D = {}, certified = {}", b.d, certify_sigma_gb(&b, &f));
                for e in &b.elements {
                    println!("    {} - {}", render_monomial(&e.plus), render_monomial(&e.minus));
                }
            }
            FiniteGb::Infinite => println!("{s}: no finite basis"),
            FiniteGb::Undecided => println!("{s}: undecided"),
        }
    }
    Ok(())
}
