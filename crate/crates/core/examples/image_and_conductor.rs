//! Image equations, Piene's lambda and the conductor.

use frontal_kernel::germ::MapGerm;
use frontal_kernel::invariants::{conductor_colength, image_equation, piene_lambda};
use frontal_kernel::stdbasis::Limits;

fn main() -> frontal_kernel::Result<()> {
    let limits = Limits::default();
    for (src, comps) in [(&["x", "y"][..], &["x", "y^2", "y^3"][..]), (&["x"][..], &["x^3", "x^4"][..])] {
        let f = MapGerm::parse(src, comps)?;
        let g = image_equation(&f, &limits)?.equation;
        let piene = piene_lambda(&f, 0, &g)?;
        println!(
            "f = ({}): g = {g}, lambda = {}, dim O/C(f) = {}, residuals vanish: {}",
            comps.join(", "),
            piene.lambda,
            conductor_colength(&piene.lambda, &limits)?,
            piene.residuals_vanish()
        );
    }
    Ok(())
}
