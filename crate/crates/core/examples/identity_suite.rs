//! The operator identity suite over the default grid.

use spinloops::oracle::{default_grid, verify_grid};

fn main() -> spinloops::error::Result<()> {
    let rep = verify_grid(&default_grid(1024))?;
    for r in &rep.records {
        println!("{} {:<24} {:<28} {:.2e}", if r.pass { "ok  " } else { "FAIL" }, r.name, r.point, r.max_deviation);
    }
    println!("all pass: {}", rep.all_pass());
    Ok(())
}
