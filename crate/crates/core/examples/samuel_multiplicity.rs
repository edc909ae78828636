//! Hilbert-Samuel estimate of e(m_r; M_y(G)) compared with Siersma's count.

use frontal_kernel::germ::MapGerm;
use frontal_kernel::invariants::{check_good_equation, frontal_milnor_siersma, samuel_multiplicity_estimate, UnfoldingSpec};
use frontal_kernel::stdbasis::Limits;

fn main() -> frontal_kernel::Result<()> {
    let limits = Limits::default();
    let cases: [(&[&str], &[&str]); 2] =
        [(&["x^3", "x^4"], &["x^3 + t*x", "x^4 + 2/3*t*x^2"]), (&["x^2", "x^3"], &["x^2", "x^3"])];
    for (comps, unfolded) in cases {
        let f = MapGerm::parse(&["x"], comps)?;
        let u = UnfoldingSpec::parse(&f, &["t"], &[unfolded])?;
        let good = check_good_equation(&u, &limits)?;
        let est = samuel_multiplicity_estimate(&good, 8, &limits)?;
        let siersma = frontal_milnor_siersma(&u, 5, &limits)?;
        println!(
            "({}): lengths {:?}, e = {} (stable on k = {}..{}), Siersma = {}",
            comps.join(", "),
            est.lengths,
            est.value,
            est.window.0,
            est.window.1,
            siersma.value
        );
    }
    Ok(())
}
