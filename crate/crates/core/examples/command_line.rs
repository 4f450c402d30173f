// Driving the `ptl` command line in-process: generate a lattice, check
// it, and read the exit codes.
//
// ```text
// cargo run --example command_line
// ```

use std::error::Error;

use ptl::cli::{main_with_args, EXIT_FALSE, EXIT_TRUE};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let dir = tempfile::tempdir()?;
    let nc = dir.path().join("nc_a4.json");
    let nc = nc.to_str().ok_or("utf-8 path")?;
    let report = dir.path().join("report.json");
    let report = report.to_str().ok_or("utf-8 path")?;

    assert_eq!(main_with_args(["ptl", "gen", "nc", "--type", "A", "--n", "4", "--out", nc]), EXIT_TRUE);
    let code = main_with_args(["ptl", "check", "2cm", nc, "--coefficients", "z", "--out", report]);
    println!("check 2cm nc_a4.json -> exit {code}");
    assert_eq!(code, EXIT_TRUE);

    let code = main_with_args([
        "ptl",
        "check",
        "cor-bounded",
        "--builtin",
        "punctured-word-deletion",
        "--n",
        "3",
        "--x",
        "1",
        "--out",
        report,
    ]);
    println!("check cor-bounded on I_3 - {{∅}} at x = 1 -> exit {code}");
    assert_eq!(code, EXIT_FALSE);

    let code = main_with_args(["ptl", "check", "kreweras", "--type", "B", "--n", "3", "--out", report]);
    println!("check kreweras --type B --n 3 -> exit {code}");
    let text = std::fs::read_to_string(report)?;
    println!("{}", text.lines().take(4).collect::<Vec<_>>().join("\n"));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
