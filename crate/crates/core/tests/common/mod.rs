//! Random program generators shared by the integration tests.
#![allow(dead_code)]

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::Rng;

/// Bit expression over `leaves`, depth at most `depth`.
fn bit_expr(rng: &mut impl Rng, leaves: &[String], depth: u32) -> String {
    if depth == 0 || rng.gen_bool(0.3) {
        // literals only next to a bit operand, so they are read as bits
        let leaf = leaves.choose(rng).unwrap().clone();
        return match rng.gen_range(0..12) {
            0 => format!("({leaf} & 0)"),
            1 => format!("(1 ^ {leaf})"),
            _ => leaf,
        };
    }
    let a = bit_expr(rng, leaves, depth - 1);
    let b = bit_expr(rng, leaves, depth - 1);
    match rng.gen_range(0..14) {
        0 => format!("~{a}"),
        1 => format!("!{a}"),
        2 => format!("({a} & {b})"),
        3 => format!("({a} | {b})"),
        4 | 5 => format!("({a} ^ {b})"),
        6 => format!("({a} == {b})"),
        7 => format!("({a} != {b})"),
        8 => format!("({a} < {b})"),
        9 => format!("({a} >= {b})"),
        10 => format!("({a} && {b})"),
        11 => format!("({a} || {b})"),
        _ => {
            let c = bit_expr(rng, leaves, depth - 1);
            format!("({c} ? {a} : {b})")
        }
    }
}

struct Gen<'r, R: Rng> {
    rng: &'r mut R,
    inputs: usize,
    temps: usize,
    out: String,
    budget: usize,
}

impl<R: Rng> Gen<'_, R> {
    fn leaves(&self) -> Vec<String> {
        let mut v: Vec<String> = (0..self.inputs).map(|k| format!("a[{k}]")).collect();
        v.extend((0..self.temps).map(|k| format!("t[{k}]")));
        v
    }

    fn expr(&mut self) -> String {
        let leaves = self.leaves();
        let mut e = bit_expr(self.rng, &leaves, 3);
        if self.rng.gen_bool(0.15) {
            let x = bit_expr(self.rng, &leaves, 1);
            let y = bit_expr(self.rng, &leaves, 1);
            e = format!("({e} ^ mix({x}, {y}))");
        }
        e
    }

    fn stmts(&mut self, depth: u32, indent: usize) {
        let n = self.rng.gen_range(1..=4);
        for _ in 0..n {
            if self.budget == 0 {
                return;
            }
            self.budget -= 1;
            let pad = " ".repeat(indent);
            let k = self.rng.gen_range(0..self.temps);
            match self.rng.gen_range(0..10) {
                0..=2 => {
                    let e = self.expr();
                    let _ = writeln!(self.out, "{pad}t[{k}] = {e};");
                }
                3 => {
                    let op = ["^=", "&=", "|="].choose(self.rng).unwrap();
                    let e = self.expr();
                    let _ = writeln!(self.out, "{pad}t[{k}] {op} {e};");
                }
                4 | 5 if depth > 0 => {
                    let c = self.expr();
                    let _ = writeln!(self.out, "{pad}if ({c}) {{");
                    self.stmts(depth - 1, indent + 4);
                    if self.rng.gen_bool(0.5) {
                        let _ = writeln!(self.out, "{pad}}} else {{");
                        self.stmts(depth - 1, indent + 4);
                    }
                    let _ = writeln!(self.out, "{pad}}}");
                }
                6 if depth > 0 => {
                    let bound = self.rng.gen_range(1..=self.temps);
                    let leaves = self.leaves();
                    let e = bit_expr(self.rng, &leaves, 2);
                    let _ = writeln!(
                        self.out,
                        "{pad}for (i = 0; i < {bound}; i = i + 1) {{ t[i] = t[i] ^ ({e} & t[(i + 1) % {}]); }}",
                        self.temps
                    );
                }
                7 => {
                    let _ = writeln!(self.out, "{pad}stir(t);");
                }
                8 => {
                    let c = self.expr();
                    let e = self.expr();
                    let _ = writeln!(self.out, "{pad}t[{k}] = {c} && mix(t[{k}], {e});");
                }
                _ => {
                    let c = self.expr();
                    let j = self.rng.gen_range(0..self.temps);
                    let _ = writeln!(self.out, "{pad}if ({c}) t[{k}] = t[{j}]; else t[{j}] = ~t[{k}];");
                }
            }
        }
    }
}

/// A random bit-level program with `inputs` input bits and at most
/// `outputs` output bits, using conditionals on bit values, loops,
/// function calls with bit and array arguments, and short-circuit logic.
pub fn random_program(rng: &mut impl Rng, inputs: usize, outputs: usize) -> String {
    let temps = rng.gen_range(2..=5);
    let mut g = Gen {
        rng,
        inputs,
        temps,
        out: String::new(),
        budget: 12,
    };
    let _ = writeln!(g.out, "__in bit a[{inputs}];");
    let _ = writeln!(g.out, "__out bit o[{outputs}];");
    let body = bit_expr(g.rng, &["p".into(), "q".into()], 2);
    let _ = writeln!(g.out, "bit mix(bit p, bit q) {{ bit r; r = {body}; return r; }}");
    let _ = writeln!(
        g.out,
        "void stir(bit v[{temps}]) {{ bit w; w = v[0]; v[0] = v[{}] ^ v[1]; v[{}] = w; }}",
        temps - 1,
        temps - 1
    );
    let _ = writeln!(g.out, "void main() {{");
    let _ = writeln!(g.out, "    bit t[{temps}];");
    let _ = writeln!(g.out, "    int i;");
    for k in 0..temps {
        let _ = writeln!(g.out, "    t[{k}] = a[{}];", k % inputs);
    }
    g.stmts(2, 4);
    for k in 0..outputs {
        let e = g.expr();
        let _ = writeln!(g.out, "    o[{k}] = {e};");
    }
    g.out.push_str("}\n");
    g.out
}

/// A random program that only moves bits: the output is a permutation of
/// the input bits, produced through swaps, rotations, copies into scratch
/// arrays and calls with array arguments. Statement count stays below 200.
pub fn random_move_program(rng: &mut impl Rng) -> String {
    let n = rng.gen_range(2..=64);
    let mut s = String::new();
    let _ = writeln!(s, "__in bit a[{n}];");
    let _ = writeln!(s, "__out bit o[{n}];");
    let _ = writeln!(
        s,
        "void rot(bit v[{n}]) {{ bit x; int j; x = v[0]; for (j = 0; j < {}; j = j + 1) {{ v[j] = v[j + 1]; }} v[{}] = x; }}",
        n - 1,
        n - 1
    );
    let _ = writeln!(s, "void main() {{");
    let _ = writeln!(s, "    bit s[{n}];");
    let _ = writeln!(s, "    bit u[{n}];");
    let _ = writeln!(s, "    bit t;");
    let _ = writeln!(s, "    int j;");
    let _ = writeln!(s, "    s = a;");
    // rot body (4 statements) + main prologue (1) + epilogue (1)
    let mut statements = 6;
    while statements < 180 {
        match rng.gen_range(0..6) {
            0 | 1 => {
                let i = rng.gen_range(0..n);
                let j = rng.gen_range(0..n);
                let _ = writeln!(s, "    t = s[{i}]; s[{i}] = s[{j}]; s[{j}] = t;");
                statements += 3;
            }
            2 => {
                let _ = writeln!(s, "    rot(s);");
                statements += 1;
            }
            3 => {
                let k = rng.gen_range(0..n);
                let _ = writeln!(
                    s,
                    "    for (j = 0; j < {n}; j = j + 1) {{ u[j] = s[(j + {k}) % {n}]; }}"
                );
                let _ = writeln!(s, "    s = u;");
                statements += 3;
            }
            4 => {
                let _ = writeln!(s, "    for (j = 0; j < {n}; j = j + 1) {{ u[{} - j] = s[j]; }}", n - 1);
                let _ = writeln!(s, "    for (j = 0; j < {n}; j = j + 1) {{ s[j] = u[j]; }}");
                statements += 4;
            }
            _ => {
                // scratch copies may duplicate bits; they are overwritten
                // before the next read of u
                let i = rng.gen_range(0..n);
                let j = rng.gen_range(0..n);
                let _ = writeln!(s, "    u[{i}] = s[{j}]; t = u[{i}];");
                statements += 2;
            }
        }
    }
    let _ = writeln!(s, "    o = s;");
    s.push_str("}\n");
    s
}
