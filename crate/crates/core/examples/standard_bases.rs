//! Standard bases in local and global orderings: Milnor numbers, colengths,
//! elimination and saturation.

use frontal_kernel::ring::Ring;
use frontal_kernel::stdbasis::ops::{eliminate, saturation};
use frontal_kernel::stdbasis::{IdealSpec, Limits};

fn main() -> frontal_kernel::Result<()> {
    let limits = Limits::default();

    // Jacobian ideal of the E6 curve y1^4 - y2^3 in the local ring.
    let local = Ring::local(&["y1", "y2"]);
    let j = IdealSpec::parse(&local, &["4*y1^3", "-3*y2^2"])?;
    println!("mu(y1^4 - y2^3) = {}", j.colength(&limits)?);

    // A local unit kills everything that a global ordering would count.
    let global = Ring::global(&["x", "y"]);
    let i = IdealSpec::parse(&global, &["x^2 - x", "y^2"])?;
    let l = i.with_ring(&global.to_local());
    println!("global colength {}, local colength {}", i.colength(&limits)?, l.colength(&limits)?);

    // Implicitize (t^2, t^3): eliminate t from <X - t^2, Y - t^3>.
    let r = Ring::global(&["t", "X", "Y"]);
    let graph = IdealSpec::parse(&r, &["X - t^2", "Y - t^3"])?;
    let image = eliminate(&graph, &[0], &limits)?;
    for g in image.gens() {
        println!("image generator: {g}");
    }

    // (J(g) : g^inf) for the frontal stabilisation of E6 at t = 1.
    let r = Ring::global(&["X", "Y"]);
    let g = r.parse("2*X^2 - 3*Y + 27*X^4 - 54*X^2*Y + 18*Y^2 - 27*Y^3")?;
    let grad: Vec<_> = frontal_kernel::ring::calculus::gradient(&g);
    let sat = saturation(&IdealSpec::new(&r, grad)?, &g, &limits)?;
    println!("critical points off g_1 = 0: {}", sat.colength(&limits)?);
    Ok(())
}
