//! Runs the command-line front end in-process and prints its JSON document.
//!
//! ```bash
//! cargo run --example verify_report -- lagrangian-torus 4 2 3
//! ```

use biharmonic_tori::cli;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let get = |i: usize, default: &str| args.get(i).cloned().unwrap_or_else(|| default.to_string());
    let out = cli::run([
        "bht".to_string(),
        "verify".into(),
        "--family".into(),
        get(0, "lagrangian-torus"),
        "--n".into(),
        get(1, "4"),
        "--p".into(),
        get(2, "2"),
        "--q".into(),
        get(3, "3"),
        "--seed".into(),
        "7".into(),
    ]);
    print!("{}{}", out.stdout, out.stderr);
    println!("exit code {}", out.code);
}
