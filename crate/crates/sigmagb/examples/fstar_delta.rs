use sigmagb::algebraic::isolate_real_roots;
use sigmagb::cli::{parse_poly, render};
use sigmagb::phi::{compute_fstar, minimal_delta};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = parse_poly("(x-1)*(x^2+1)*(x^3+1)")?;
    // the largest real root
    let (x_plus, _) = isolate_real_roots(&f)?.pop().expect("f has a real root");
    let delta = minimal_delta(&f, &x_plus)?.expect("all on-circle ratios are roots of unity");
    println!("f     = {}", render(&f));
    println!("delta = {delta}");
    for d in [delta as usize, 2 * delta as usize] {
        println!("f* for delta = {d:<3}: {}", render(&compute_fstar(&f, d)?));
    }
    Ok(())
}
