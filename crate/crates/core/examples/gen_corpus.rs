//! Regenerates the expanded power-mean forms in `crates/core/corpus/`.

use std::path::PathBuf;

use sds_core::corpus::power_mean_job_file;

fn main() -> std::io::Result<()> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus");
    for p in 1..=6 {
        let path = dir.join(format!("example3-p{p}.txt"));
        std::fs::write(&path, power_mean_job_file(p))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
