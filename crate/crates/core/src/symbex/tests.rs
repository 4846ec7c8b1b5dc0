use super::*;
use crate::boolir::{Node, SupportCache, VarId};
use crate::corpus;

fn translate(src: &str) -> Encoding {
    translate_source(src, &[]).unwrap_or_else(|e| panic!("{e}"))
}

fn lfsr(len: i64) -> Encoding {
    translate_source(corpus::LFSR, &[("len".into(), len)]).unwrap()
}

fn ids(vs: &[VarId]) -> Vec<u32> {
    vs.iter().map(|v| v.0).collect()
}

fn support(enc: &Encoding, f: Formula) -> Vec<u32> {
    ids(SupportCache::new(&enc.arena).support(&enc.arena, f))
}

#[test]
fn lfsr_single_step() {
    let enc = lfsr(1);
    assert_eq!(enc.num_vars(), 20);
    assert_eq!(enc.definitions.len(), 1);
    assert_eq!(ids(&enc.inputs), (1..=19).collect::<Vec<_>>());
    assert_eq!(ids(&enc.outputs), vec![1]);
    let d = &enc.definitions[0];
    assert_eq!(d.var, VarId(20));
    assert_eq!(support(&enc, d.formula), vec![1, 2, 3, 6]);
}

#[test]
fn lfsr_full_length() {
    let enc = lfsr(128);
    assert_eq!(enc.num_vars(), 147);
    assert_eq!(enc.definitions.len(), 128);
    assert_eq!(ids(&enc.outputs), (1..=128).collect::<Vec<_>>());
    // step i defines x_{19+i+1} from x_{i+1}, x_{i+2}, x_{i+3}, x_{i+6}
    for (i, d) in enc.definitions.iter().enumerate() {
        let i = i as u32;
        assert_eq!(d.var.0, 20 + i);
        assert_eq!(support(&enc, d.formula), vec![i + 1, i + 2, i + 3, i + 6]);
    }
    enc.validate().unwrap();
}

#[test]
fn identity_has_no_definitions() {
    let enc = translate("__in bit a; __out bit b; void main() { b = a; }");
    assert!(enc.definitions.is_empty());
    assert_eq!(enc.outputs, enc.inputs);
}

#[test]
fn constant_global_allocates_nothing() {
    let enc = translate("__in bit a; bit g = 1; __out bit b; void main() { b = a & g; }");
    assert_eq!(enc.num_vars(), 1);
    assert!(enc.definitions.is_empty());
}

#[test]
fn translate_expr_examples() {
    let enc = translate("__in bit a; __out bit b, c; void main() { b = a ^ a; c = a & 1; }");
    // b is the constant 0 and needs a definition to become an output var;
    // c is a itself.
    assert_eq!(enc.outputs.len(), 2);
    assert_eq!(enc.definitions.len(), 1);
    assert_eq!(enc.definitions[0].formula, Arena::FALSE);
    assert_eq!(enc.outputs[1], VarId(1));
}

#[test]
fn permutations_are_free() {
    let enc = translate(
        "__in bit r[8]; __out bit o[8];
         void main() {
             int i; bit t;
             t = r[7];
             for (i = 7; i > 0; i = i - 1) r[i] = r[i - 1];
             r[0] = t;
             t = r[3]; r[3] = r[5]; r[5] = t;
             o = r;
             t = o[0]; o[0] = o[7]; o[7] = t;
         }",
    );
    assert!(enc.definitions.is_empty(), "{:?}", enc.definitions);
    // Shifting in zeros makes constant outputs, which still need variables.
    let enc = translate("__in bit r[4]; __out bit o[4]; void main() { o = r << 1; }");
    assert_eq!(enc.definitions.len(), 1);
    assert_eq!(enc.definitions[0].formula, Arena::FALSE);
}

#[test]
fn then_only_merge_keeps_old_binding() {
    let enc = translate(
        "__in bit c, x, y; __out bit z;
         void main() { z = x; if (c) z = x ^ y; }",
    );
    // one definition for x ^ y inside the branch, one merge definition
    assert_eq!(enc.definitions.len(), 2);
    let merge = &enc.definitions[1];
    let Node::Ite(cond, t, e) = enc.arena.node(merge.formula) else {
        panic!("expected ite, got {}", enc.arena.render(merge.formula))
    };
    assert_eq!(enc.arena.as_var(cond), Some(VarId(1)));
    assert_eq!(enc.arena.as_var(t), Some(enc.definitions[0].var));
    assert_eq!(enc.arena.as_var(e), Some(VarId(2)));
    assert_eq!(enc.outputs, vec![merge.var]);
}

#[test]
fn nested_merge_allocates_once() {
    let enc = translate(
        "__in bit p, q, a, b, c; __out bit z;
         void main() {
             if (p) z = a;
             else if (q) z = b;
             else z = c;
         }",
    );
    assert_eq!(enc.definitions.len(), 1);
    for m in 0..32u32 {
        let bits: Vec<bool> = (0..5).map(|k| m >> k & 1 == 1).collect();
        let (p, q, a, b, c) = (bits[0], bits[1], bits[2], bits[3], bits[4]);
        let want = if p {
            a
        } else if q {
            b
        } else {
            c
        };
        assert_eq!(enc.output_values(&bits).unwrap(), vec![want]);
    }
}

#[test]
fn untouched_cells_keep_bindings() {
    let enc = translate(
        "__in bit c, x; __out bit z, w;
         void main() { w = x; if (c) z = x; }",
    );
    // w is never written under the condition; z merges x with the zero
    // default of an unassigned global.
    assert_eq!(enc.outputs[0], enc.definitions[0].var);
    assert_eq!(enc.outputs[1], VarId(2));
}

#[test]
fn constant_condition_takes_one_branch() {
    let enc = translate("__in bit x; __out bit z; void main() { if (x ^ x) z = 1; else z = x; }");
    assert!(enc.definitions.is_empty());
}

#[test]
fn int_conditions_are_concrete() {
    let enc = translate(
        "__in bit x, y; __out bit z; int n = 3;
         void main() { if (n > 2) z = x & y; else z = x | y; }",
    );
    assert_eq!(enc.definitions.len(), 1);
    assert!(matches!(enc.arena.node(enc.definitions[0].formula), Node::And(..)));
}

#[test]
fn uninitialized_local_is_an_error() {
    let e = translate_source("__out bit z; void main() { bit t; z = t; }", &[]).unwrap_err();
    assert!(e.to_string().contains("read before it is assigned"), "{e}");
}

#[test]
fn int_under_bit_condition_is_poisoned() {
    let src = "__in bit c; __out bit z; bit r[4];
               void main() { int i = 0; if (c) i = 1; z = r[i]; }";
    let e = translate_source(src, &[]).unwrap_err();
    assert!(e.to_string().contains("depends on a bit-valued condition"), "{e}");
    // agreeing branches are fine
    let src = "__in bit c; __out bit z; bit r[4];
               void main() { int i = 0; if (c) i = 1; else i = 1; z = r[i]; }";
    assert!(translate_source(src, &[]).is_ok());
}

#[test]
fn runtime_index_out_of_bounds() {
    let e = translate_source(
        "__in bit r[4]; __out bit z; void main() { int i; for (i = 0; i < 5; i = i + 1) z = r[i]; }",
        &[],
    )
    .unwrap_err();
    assert!(e.to_string().contains("out of bounds"), "{e}");
}

#[test]
fn definition_budget() {
    let prog = crate::semantics::check_source(corpus::LFSR, &[]).unwrap();
    let cfg = SymbexConfig {
        max_definitions: 10,
        ..SymbexConfig::default()
    };
    assert!(matches!(
        execute(&prog, &cfg),
        Err(SymbexError::Budget { what: "definition", .. })
    ));
}

#[test]
fn iteration_budget() {
    let prog = crate::semantics::check_source("void main() { int i; for (i = 0; i < 1; i = i) {} }", &[]).unwrap();
    let cfg = SymbexConfig {
        max_iterations: 1000,
        ..SymbexConfig::default()
    };
    assert!(matches!(execute(&prog, &cfg), Err(SymbexError::Budget { .. })));
}

#[test]
fn function_inlining_and_array_references() {
    let enc = translate(
        "__in bit k[3]; __out bit o;
         bit f(bit a, bit b) { return a & b; }
         void rot(bit r[3]) { bit t = r[0]; r[0] = r[1]; r[1] = r[2]; r[2] = t; }
         void main() { rot(k); o = f(k[0], k[2]); }",
    );
    assert_eq!(enc.definitions.len(), 1);
    assert_eq!(support(&enc, enc.definitions[0].formula), vec![1, 2]);
}

#[test]
fn short_circuit_keeps_side_effects_conditional() {
    let src = "__in bit a; __out bit z, w;
               bit touch() { w = 1; return 1; }
               void main() { z = a && touch(); }";
    let enc = translate(src);
    for a in [false, true] {
        assert_eq!(enc.output_values(&[a]).unwrap(), vec![a, a]);
    }
}

#[test]
fn outputs_are_distinct_variables() {
    let enc = translate("__in bit a; __out bit x, y; void main() { x = a; y = a; }");
    assert_eq!(enc.outputs.len(), 2);
    assert_ne!(enc.outputs[0], enc.outputs[1]);
    enc.validate().unwrap();
}

#[test]
fn deterministic() {
    let a = translate(corpus::A51);
    let b = translate(corpus::A51);
    assert_eq!(a.definitions, b.definitions);
    assert_eq!(a.vars, b.vars);
}

#[test]
fn forwarding_preserves_function() {
    let prog = crate::semantics::check_source(corpus::GEFFE, &[]).unwrap();
    let plain = execute(&prog, &SymbexConfig::default()).unwrap().encoding;
    let cfg = SymbexConfig {
        forward: true,
        ..SymbexConfig::default()
    };
    let fwd = execute(&prog, &cfg).unwrap().encoding;
    fwd.validate().unwrap();
    assert!(fwd.definitions.len() < plain.definitions.len());
    assert_eq!(fwd.inputs, plain.inputs);
    let lanes: Vec<u64> = (0..plain.inputs.len() as u64)
        .map(|k| k.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .collect();
    let pv = plain.evaluate_packed(&lanes).unwrap();
    let fv = fwd.evaluate_packed(&lanes).unwrap();
    for (a, b) in plain.outputs.iter().zip(&fwd.outputs) {
        assert_eq!(pv[a.index()], fv[b.index()]);
    }
}

#[test]
fn corpus_programs_translate() {
    for (name, src) in corpus::ALL {
        let enc = translate(src);
        enc.validate().unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}
