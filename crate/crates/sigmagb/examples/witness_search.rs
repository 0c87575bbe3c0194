use sigmagb::cli::{parse_poly, render};
use sigmagb::ipsearch::{build_phi0_system, feasible_rational, find_witness};
use sigmagb::phi::in_phi0;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for s in ["x^2-x+2", "x^2-2*x+2", "x^3+x^2-3*x+3", "x^2+1"] {
        let f = parse_poly(s)?;
        let w = find_witness(&f, 10)?;
        let Some((g, m)) = w.witness else {
            println!("{s}: nothing up to degree 10 (open: {:?})", w.open);
            continue;
        };
        let prod = &f * &g;
        println!("{s}: m = {m} (scan from {}), g = {}", w.start, render(&g));
        println!("    f*g = {}  in Phi0: {}", render(&prod), in_phi0(&prod));
        if m > 0 {
            let below = build_phi0_system(&f, m - 1)?;
            println!("    degree {} rationally feasible: {}", m - 1, feasible_rational(&below));
        }
    }
    Ok(())
}
