//! Every solver cross-check at its default case.
fn main() -> bipolariton::Result<()> {
    let checks = bipolariton::oracle::run_all()?;
    for c in &checks {
        println!("{} {:<24} {:<36} {:.2e} <= {:.0e}", if c.pass { "ok  " } else { "FAIL" }, c.name, c.case, c.residual, c.tolerance);
    }
    println!("{}/{} passed", checks.iter().filter(|c| c.pass).count(), checks.len());
    Ok(())
}
