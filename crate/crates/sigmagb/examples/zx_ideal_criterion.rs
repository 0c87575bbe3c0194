use sigmagb::cli::{parse_poly, render, render_monomial};
use sigmagb::zx_ideal::{finite_sgb_criterion, multi_finite_gb, zx_groebner, zx_reduce};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ideals: [&[&str]; 4] = [&["4", "2*x"], &["15", "5*x", "x^2+3"], &["2*(x^2-2)", "(x^2-2)*(x+1)"], &["x^2-3*x+1"]];
    for gens in ideals {
        let gens = gens.iter().map(|s| parse_poly(s)).collect::<Result<Vec<_>, _>>()?;
        let basis = zx_groebner(&gens)?;
        let shown: Vec<_> = basis.elements().iter().map(render).collect();
        let r = finite_sgb_criterion(&basis, 8)?;
        println!("GB {{{}}}: {} (rule {})", shown.join(", "), r.kind.as_str(), r.rule);
        if let Some(h) = &r.witness {
            println!("    witness {} reduces to {}", render(h), render(&zx_reduce(h, &basis)));
            for e in multi_finite_gb(&basis, h)?.elements {
                println!("    {} - {}", render_monomial(&e.plus), render_monomial(&e.minus));
            }
        }
    }
    Ok(())
}
