//! Logarithmic vector fields and Saito's criterion.

use frontal_kernel::derlog::{derlog, epsilon_split, is_free_divisor};
use frontal_kernel::ring::Ring;
use frontal_kernel::stdbasis::Limits;

fn main() -> frontal_kernel::Result<()> {
    let limits = Limits::default();
    let r = Ring::global(&["X", "Y", "Z"]);
    for text in ["Z^2 - Y^3", "Z^2 - X^2*Y^3", "Y*(X*Z - Y^2)"] {
        let g = r.parse(text)?;
        let d = derlog(&g, &limits)?;
        let free = is_free_divisor(&d, &limits)?;
        println!("{text}: {} generators, free divisor: {}", d.generators.len(), free.free);
        for f in &d.generators {
            let c: Vec<String> = f.coeffs.iter().map(|p| p.to_string()).collect();
            println!("    ({})  cofactor {}", c.join(", "), f.cofactor);
        }
    }
    let g = r.parse("Z^2 - Y^3")?;
    let e = epsilon_split(&g, &limits)?;
    let eps: Vec<String> = e.epsilon.iter().map(|p| p.to_string()).collect();
    println!("epsilon for Z^2 - Y^3: ({}) / {}", eps.join(", "), e.unit);
    Ok(())
}
