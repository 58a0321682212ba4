//! Regenerate the golden files checked by `solar -check` and the tests.
//!
//! ```text
//! cargo run --release --example write_golden -- crates/core/golden
//! ```
//!
//! Run this only after an intended change to the model or its data; the
//! binary must then be rebuilt so `-check` embeds the new file.

use std::path::PathBuf;

use solar::cli::golden_check_file;
use solar::detrng::{golden_lines, GOLDEN_CASES, GOLDEN_COUNT};

fn main() -> std::io::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "crates/core/golden".into()));
    let mut rng = String::from("# base_seed stream_id index value_hex\n");
    for l in golden_lines(&GOLDEN_CASES, GOLDEN_COUNT) {
        rng.push_str(&l);
        rng.push('\n');
    }
    std::fs::write(dir.join("rng_streams.txt"), rng)?;
    let check = golden_check_file();
    println!("{} check cases", check.lines().count() - 1);
    std::fs::write(dir.join("check.txt"), check)
}
