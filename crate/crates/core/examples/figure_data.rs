//! Writes the dataset of one figure to CSV, e.g. `-- 2 3` for the Boltzmann series at N = 3.
use harmonium::export::write_csv;
use harmonium::figure::{figure_table, FigureRequest};

fn main() -> harmonium::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let id: u8 = args.first().map_or(2, |s| s.parse().expect("figure id"));
    let n: Option<usize> = args.get(1).map(|s| s.parse().expect("N"));
    let req = FigureRequest { id, n_particles: n, l_ratios: None, ks: None, m_max: 160, precision_bits: 256 };
    let table = figure_table(&req)?;
    let path = std::env::temp_dir().join(format!("figure{id}.csv"));
    write_csv(std::fs::File::create(&path)?, &format!("figure {id}"), &table)?;
    println!("{} rows, columns {:?} -> {}", table.len(), table.columns, path.display());
    Ok(())
}
