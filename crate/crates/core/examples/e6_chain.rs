//! The E6 curve (x^3, x^4): classical invariants, Siersma's count on a
//! frontal and a non-frontal stabilisation, and the frontal codimension.

use frontal_kernel::germ::MapGerm;
use frontal_kernel::invariants::{
    check_good_equation, frontal_codimension, frontal_milnor_siersma, plane_curve_invariants, UnfoldingSpec,
};
use frontal_kernel::stdbasis::Limits;

fn main() -> frontal_kernel::Result<()> {
    let limits = Limits::default();
    let f = MapGerm::parse(&["x"], &["x^3", "x^4"])?;
    print!("{}", plane_curve_invariants(&f, &limits)?);

    let frontal = UnfoldingSpec::parse(&f, &["t"], &[&["x^3 + t*x", "x^4 + 2/3*t*x^2"]])?;
    let count = frontal_milnor_siersma(&frontal, 5, &limits)?;
    println!("frontal stabilisation: Siersma count {} from trials {:?}", count.value, count.trials);

    let other = UnfoldingSpec::parse(&f, &["t"], &[&["x^3 - t*x", "x^4 + 3/2*t*x^2"]])?;
    println!("non-frontal stabilisation: Siersma count {}", frontal_milnor_siersma(&other, 5, &limits)?.value);

    let good = check_good_equation(&frontal, &limits)?;
    println!("G = {}", good.equation);
    println!("codim_Fe from the good equation: {}", frontal_codimension(&good, &limits)?);
    Ok(())
}
