//! Frontality by principality of the ramification ideal.

use frontal_kernel::germ::{is_frontal, MapGerm};
use frontal_kernel::stdbasis::Limits;

fn main() -> frontal_kernel::Result<()> {
    let limits = Limits::default();
    let germs: [(&str, &[&str], &[&str]); 4] = [
        ("folded Whitney umbrella", &["x", "y"], &["x", "y^2", "x*y^3"]),
        ("F4", &["x", "y"], &["x", "y^2", "y^5 + x^3*y"]),
        ("cuspidal edge", &["x", "y"], &["x", "y^2", "y^3"]),
        ("plane curve (x^3 + x^4, x^5)", &["x"], &["x^3 + x^4", "x^5"]),
    ];
    for (name, src, comps) in germs {
        let f = MapGerm::parse(src, comps)?;
        let fr = is_frontal(&f, &limits)?;
        let gens: Vec<String> = fr.branches[0].ramification.iter().map(|p| p.to_string()).collect();
        println!("{name:<30} R(f) = <{}>  frontal: {}", gens.join(", "), fr.frontal);
    }
    Ok(())
}
