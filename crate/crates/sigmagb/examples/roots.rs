use num_rational::BigRational;
use sigmagb::algebraic::{isolate_complex_roots, isolate_real_roots, roots_on_circle};
use sigmagb::cli::parse_poly;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = parse_poly("(x^2-2)*(x^2-2*x+2)")?;
    let width = BigRational::new(1.into(), 1_000_000.into());
    for b in isolate_complex_roots(&f)? {
        let b = b.refine_to_width(&width)?;
        let r = b.rect();
        let mid = |lo: &BigRational, hi: &BigRational| {
            use num_traits::ToPrimitive;
            ((lo + hi) / BigRational::from_integer(2.into())).to_f64().unwrap_or(f64::NAN)
        };
        println!("root near {:+.6} {:+.6}i (mult {})", mid(&r.re_lo, &r.re_hi), mid(&r.im_lo, &r.im_hi), b.multiplicity());
    }
    let (x_plus, _) = isolate_real_roots(&f)?.pop().expect("real root");
    let (minus, on_circle) = roots_on_circle(&f, &x_plus)?;
    println!("on the circle |z| = x+: -x+ is a root: {minus}, other roots: {}", on_circle.len());
    Ok(())
}
