//! Generating families of wave fronts and their discriminants.

use frontal_kernel::genfam::check_generating_family;
use frontal_kernel::germ::MapGerm;
use frontal_kernel::stdbasis::Limits;

fn main() -> frontal_kernel::Result<()> {
    let limits = Limits::default();
    let germs: [(&[&str], &[&str]); 3] = [
        (&["x", "y"], &["x", "y^2", "y^3"]),
        (&["x"], &["x^3", "x^4"]),
        (&["a", "y"], &["a", "-4*y^3 - 2*a*y", "3*y^4 + a*y^2"]),
    ];
    for (src, comps) in germs {
        let f = MapGerm::parse(src, comps)?;
        let c = check_generating_family(&f, None, &limits)?;
        let h: Vec<String> = c.h.iter().map(|p| p.to_string()).collect();
        println!("f = ({})", comps.join(", "));
        println!("  h = ({})", h.join(", "));
        println!("  discriminant {}", c.discriminant);
        println!("  equals image: {}, critical set is a graph: {}", c.equals_image, c.critical_set_is_graph);
    }
    Ok(())
}
