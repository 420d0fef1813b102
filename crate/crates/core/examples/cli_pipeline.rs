//! The command-line pipeline run in-process: generate a state, analyze it,
//! sample stabilizer pairs and verify them from the written file.
//!
//! cargo run --example cli_pipeline

use std::io::{stderr, stdout};

fn uli(args: &[&str]) -> i32 {
    let argv = std::iter::once("uli").chain(args.iter().copied());
    let code = uli::cli::run(argv, &mut stdout(), &mut stderr());
    println!("-> exit {code}\n");
    code
}

fn main() {
    let dir = std::env::temp_dir().join(format!("uli-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let state = dir.join("state.json");
    let pairs = dir.join("pairs.json");
    let (state, pairs) = (state.to_str().unwrap(), pairs.to_str().unwrap());

    uli(&[
        "gen",
        "spectrum",
        "--d1",
        "3",
        "--d2",
        "3",
        "--spectrum",
        "sqrt(0.5),sqrt(0.5),0",
        "--out",
        state,
    ]);
    uli(&["analyze", state]);
    uli(&[
        "sample", state, "--count", "3", "--seed", "42", "--out", pairs,
    ]);
    uli(&["verify", state, "--pairs", pairs]);

    let _ = std::fs::remove_dir_all(&dir);
}
