//! Parse a germ description, run its analyses and print the machine report.

use frontal_kernel::cli::{analyze_file, FileReport, GermFile, Settings};

const TEXT: &str = "frontal-kernel v1;
ring x, y;
map f = x, y^2, y^3;
unfold F of f params t: x, y^2, y^3;
assert_frontal_stable F;
analyze f: frontal, wavefront, image, hat_M, M_F, codim_Fe;
";

fn main() -> frontal_kernel::Result<()> {
    let file = GermFile::parse(TEXT)?;
    print!("{file}");
    let reports = analyze_file(&file, &Settings::default())?;
    for r in &reports {
        print!("{}", r.invariants);
    }
    let doc = FileReport { format: "frontal-kernel v1".into(), command: "analyze".into(), file: "inline".into(), reports };
    print!("{}", doc.to_machine());
    Ok(())
}
