//! Scenario file with a sweep axis, evaluated point by point and written
//! as CSV.
use bipolariton::analysis::analyze;
use bipolariton::io::{CsvTable, Scenario};
use bipolariton::derive_params;

fn main() -> bipolariton::Result<()> {
    let sc = Scenario::from_json(
        r#"{
            "units": {"energy": "G", "length": "a"},
            "params": {"n_sites": 40},
            "sweep": [{"parameter": "blockade_cells", "values": [0, 2, 4]}]
        }"#,
    )?;
    let mut t = CsvTable::new(&["ell", "ll_states", "bunched"]);
    for pt in sc.sweep_points()? {
        let r = analyze(&derive_params(&pt.config)?)?;
        let ll = r.ll_states();
        let b = ll.iter().filter(|s| s.flag == bipolariton::analysis::Flag::Bunching).count();
        t.push(vec![pt.config.blockade_cells.unwrap_or(0).into(), ll.len().into(), b.into()]);
    }
    print!("{}", t.render());
    println!("{}", sc.to_json()?);
    Ok(())
}
