//! Byte-exact regression files for the corpus CNFs. Run with `BLESS=1`
//! to regenerate them after an intentional encoding change.

use std::path::PathBuf;

use procsat_core::corpus;
use procsat_core::encode::{read_dimacs, write_dimacs};
use procsat_core::harness::{compile, Options};

fn check(file: &str, src: &str, minimize: Option<usize>) {
    let opts = Options {
        minimize,
        ..Default::default()
    };
    let cnf = compile(src, &opts).unwrap().cnf;
    let text = write_dimacs(&cnf);
    let back = read_dimacs(&text).unwrap();
    assert_eq!(back, cnf, "{file}: read after write");
    assert_eq!(write_dimacs(&back), text);

    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(file);
    if std::env::var_os("BLESS").is_some() {
        std::fs::write(&path, &text).unwrap();
        return;
    }
    let golden = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert!(
        golden == text,
        "{file} differs from the golden copy; rerun with BLESS=1 if intended"
    );
}

#[test]
fn lfsr() {
    check("lfsr.cnf", corpus::LFSR, None);
}

#[test]
fn geffe() {
    check("geffe.cnf", corpus::GEFFE, None);
}

#[test]
fn geffe_minimized() {
    check("geffe.min.cnf", corpus::GEFFE, Some(12));
}

#[test]
fn a51() {
    check("a51.cnf", corpus::A51, None);
}
