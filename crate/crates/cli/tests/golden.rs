//! Every subcommand against a committed input/output pair.
//!
//! Set `JORDAN_BLESS=1` to rewrite the expected outputs.

use std::path::PathBuf;
use std::process::Command;

pub const GOLDEN_SEED: &str = "7";

pub const CASES: [&str; 8] = [
    "decompose", "commute", "dirderiv", "majorize", "subdiff", "lambda-k", "kl", "probe",
];

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn run_case(name: &str) -> Vec<u8> {
    let input = golden_dir().join(format!("{name}.input.json"));
    let out = Command::new(env!("CARGO_BIN_EXE_jordan"))
        .args([name, "--input", input.to_str().unwrap(), "--seed", GOLDEN_SEED])
        .output()
        .unwrap();
    assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

#[test]
fn goldens_reproduce_byte_for_byte() {
    let bless = std::env::var_os("JORDAN_BLESS").is_some();
    for name in CASES {
        let got = run_case(name);
        let path = golden_dir().join(format!("{name}.output.json"));
        if bless {
            std::fs::write(&path, &got).unwrap();
            continue;
        }
        let expected = std::fs::read(&path).unwrap();
        assert!(got == expected, "{name}: output differs from {}", path.display());
    }
}
