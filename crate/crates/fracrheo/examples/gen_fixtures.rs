//! Regenerates `tests/fixtures/ml_reference.txt` from the MPFR oracle.

use fracrheo::oracles::ml_fixture_records;
use std::io::Write;

const DIGITS: u32 = 30;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path =
        std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/ml_reference.txt");
    let mut file = std::io::BufWriter::new(std::fs::File::create(&path)?);
    writeln!(
        file,
        "# Mittag-Leffler reference values E_{{alpha,beta}}(z), {DIGITS} working digits."
    )?;
    writeln!(
        file,
        "# generated by: cargo run -p fracrheo --release --example gen_fixtures"
    )?;
    writeln!(file, "# name,alpha,beta,z,value,precision")?;
    for record in ml_fixture_records(DIGITS)? {
        writeln!(file, "{}", record.to_line())?;
    }
    file.flush()?;
    println!("wrote {}", path.display());
    Ok(())
}
