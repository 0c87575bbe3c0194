//! Lower and upper bounds on the least witness degree.

use sigmagb::cli::parse_poly;
use sigmagb::ipsearch::{complex_lower_bound, find_witness, quadratic_min_degree, series_lower_bound};
use sigmagb::phi::polya_exponent;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:<16} {:>6} {:>7} {:>9} {:>5} {:>5}", "f", "series", "complex", "quadratic", "N_f", "m");
    for s in ["x^2-2*x+2", "x^2-x+2", "x^2-x+1", "2*x^2-3*x+2", "x^3-x^2+x+1"] {
        let f = parse_poly(s)?;
        let series = series_lower_bound(&f)?;
        let quad = if f.deg() == 2 { quadratic_min_degree(&f)?.to_string() } else { "-".into() };
        let m = find_witness(&f, 12)?.witness.map_or("-".into(), |(_, m)| m.to_string());
        println!(
            "{s:<16} {:>6} {:>7} {quad:>9} {:>5} {m:>5}",
            series.bound,
            complex_lower_bound(&f)?,
            polya_exponent(&f)?.n_f
        );
    }
    Ok(())
}
