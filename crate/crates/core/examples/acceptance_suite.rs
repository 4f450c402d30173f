// Running part of the acceptance matrix from code, with a result cache.
//
// ```text
// cargo run --release --example acceptance_suite
// ```

use std::error::Error;

use ptl::suite::{run_criteria, to_json_pretty, RunConfig};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let cache = tempfile::tempdir()?;
    let config = RunConfig { cache_dir: Some(cache.path().to_path_buf()), ..RunConfig::small() };
    let first = run_criteria(&config, &[1, 3, 4, 9, 10])?;
    print!("{}", first.table());
    let second = run_criteria(&config, &[1, 3, 4, 9, 10])?;
    println!("second run: {} cache hits, {} misses", second.cache_hits, second.cache_misses);
    assert_eq!(first.summary.without_timestamp(), second.summary.without_timestamp());
    let json = to_json_pretty(&second.summary)?;
    println!("summary JSON: {} bytes", json.len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
