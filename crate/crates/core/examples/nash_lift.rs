//! Nash lifts in prenormal form and the wave-front test.

use frontal_kernel::germ::{is_wavefront, nash_lift, MapGerm, PrenormalForm};

fn show(src: &[&str], comps: &[&str]) -> frontal_kernel::Result<()> {
    let f = MapGerm::parse(src, comps)?;
    let pf = PrenormalForm::of_branch(&f, 0)?;
    let nash = nash_lift(&pf, None)?;
    let lambda: Vec<String> = nash.lambda.iter().map(|p| p.to_string()).collect();
    let mu: Vec<String> = nash.mu.iter().map(|p| p.to_string()).collect();
    println!(
        "({}): lambda = ({}), mu = ({}), exact = {}, wave front = {}",
        comps.join(", "),
        lambda.join(", "),
        mu.join(", "),
        nash.exact,
        is_wavefront(&pf, &nash)
    );
    Ok(())
}

fn main() -> frontal_kernel::Result<()> {
    show(&["x", "y"], &["x", "y^2", "y^3"])?;
    show(&["x", "y"], &["x", "y^2", "x*y^3"])?;
    show(&["x"], &["x^3", "x^4"])?;
    // no polynomial lift exists here; jets of the lift are solved for instead
    show(&["x", "y"], &["x", "y^2 + 2/3*y^3", "y^3"])?;
    Ok(())
}
