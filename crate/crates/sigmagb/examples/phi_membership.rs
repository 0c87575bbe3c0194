//! Decide `Φ₁` membership for a few polynomials and print the verdicts.

use sigmagb::cli::{parse_poly, render};
use sigmagb::phi::membership_phi1;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inputs = ["x-2", "x^2+x+1", "x^2-2*x+2", "(x-1)*(x^2+1)*(x^3+1)", "x^2-3*x+1", "x^3-x^2+x-2"];
    for s in inputs {
        let f = parse_poly(s)?;
        let v = membership_phi1(&f)?;
        let steps: Vec<_> = v.trace.iter().map(|t| t.id()).collect();
        match (&v.witness, v.reason) {
            (Some(g), _) => println!("{s:<24} {:<15} g = {}  [{}]", v.kind.as_str(), render(g), steps.join(" > ")),
            (None, Some(r)) => println!("{s:<24} {:<15} {}  [{}]", v.kind.as_str(), r.as_str(), steps.join(" > ")),
            (None, None) => println!("{s:<24} {:<15} [{}]", v.kind.as_str(), steps.join(" > ")),
        }
    }
    Ok(())
}
