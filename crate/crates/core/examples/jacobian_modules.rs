//! Dimensions of the Jacobian modules M^(g) and M_F(g).

use frontal_kernel::germ::MapGerm;
use frontal_kernel::invariants::{check_good_equation, hat_m_dimension, image_equation, m_f_dimension, UnfoldingSpec};
use frontal_kernel::stdbasis::Limits;

fn main() -> frontal_kernel::Result<()> {
    let limits = Limits::default();
    for comps in [["x", "y^2", "y^3"], ["x", "y^2", "x*y^3"]] {
        let f = MapGerm::parse(&["x", "y"], &comps)?;
        let g = image_equation(&f, &limits)?.equation;
        println!("({}): dim M^(g) = {}", comps.join(", "), hat_m_dimension(&f, &g, &limits)?);
    }

    let f = MapGerm::parse(&["x"], &["x^3", "x^4"])?;
    let u = UnfoldingSpec::parse(&f, &["t"], &[&["x^3 + t*x", "x^4 + 2/3*t*x^2"]])?;
    println!("E6: dim M_F(g) = {}", m_f_dimension(&check_good_equation(&u, &limits)?, &limits)?);

    let f = MapGerm::parse(&["x", "y"], &["x", "y^2", "y^7 + x^7*y^5"])?;
    let u = UnfoldingSpec::parse(&f, &["t"], &[&["x", "y^2", "y^7 + x^7*y^5 + t*y^3"]])?;
    let g = u.map().target().parse("Z^2 - Y^3*(Y^2 + X^7*Y + t)^2")?;
    let good = check_good_equation(&u.with_equation(g)?, &limits)?;
    println!("(x, y^2, y^7 + x^7*y^5): dim M_F(g) = {}", m_f_dimension(&good, &limits)?);
    Ok(())
}
