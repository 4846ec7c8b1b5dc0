//! Example programs shipped with the library.

pub const LFSR: &str = include_str!("../corpus/lfsr.ta");
pub const GEFFE: &str = include_str!("../corpus/geffe.ta");
pub const A51: &str = include_str!("../corpus/a51.ta");

/// `(name, source)` for every corpus program.
pub const ALL: [(&str, &str); 3] = [("lfsr", LFSR), ("geffe", GEFFE), ("a51", A51)];

pub fn by_name(name: &str) -> Option<&'static str> {
    ALL.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}
