//! Truth tables, algebraic normal form and prime-implicant covers for
//! functions of at most 16 variables.

use crate::boolir::{Arena, Cube, Formula, Node, VarId};

/// Largest support handled by the exhaustive routines.
pub const MAX_VARS: usize = 16;

const PATTERNS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// Truth table of a function of `vars` variables; minterm `m` assigns
/// variable `k` the bit `k` of `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    pub vars: usize,
    pub words: Vec<u64>,
}

impl TruthTable {
    fn mask(vars: usize) -> u64 {
        if vars >= 6 {
            !0
        } else {
            (1u64 << (1 << vars)) - 1
        }
    }

    pub fn from_fn(vars: usize, f: impl Fn(u32) -> bool) -> Self {
        let n = 1usize << vars;
        let mut words = vec![0u64; n.div_ceil(64)];
        for m in 0..n {
            if f(m as u32) {
                words[m / 64] |= 1 << (m % 64);
            }
        }
        TruthTable { vars, words }
    }

    /// Table of `f` over `support` (position `k` is variable `support[k]`).
    /// `f` must not depend on variables outside `support`.
    pub fn of(arena: &Arena, f: Formula, support: &[VarId]) -> Self {
        let k = support.len();
        assert!(k <= MAX_VARS, "support of {k} variables is too large");
        let cone = arena.cone(&[f]);
        let pos: std::collections::HashMap<Formula, usize> = cone.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let var_pos: std::collections::HashMap<VarId, usize> =
            support.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let nwords = (1usize << k).div_ceil(64);
        let mut vals = vec![0u64; cone.len()];
        let mut words = Vec::with_capacity(nwords);
        for w in 0..nwords {
            for (i, &g) in cone.iter().enumerate() {
                let get = |c: Formula| vals[pos[&c]];
                vals[i] = match arena.node(g) {
                    Node::Const(b) => {
                        if b {
                            !0
                        } else {
                            0
                        }
                    }
                    Node::Var(v) => {
                        let j = *var_pos.get(&v).expect("variable outside the support");
                        if j < 6 {
                            PATTERNS[j]
                        } else if w >> (j - 6) & 1 == 1 {
                            !0
                        } else {
                            0
                        }
                    }
                    Node::Not(a) => !get(a),
                    Node::And(a, b) => get(a) & get(b),
                    Node::Or(a, b) => get(a) | get(b),
                    Node::Xor(a, b) => get(a) ^ get(b),
                    Node::Equiv(a, b) => !(get(a) ^ get(b)),
                    Node::Ite(c, t, e) => (get(c) & get(t)) | (!get(c) & get(e)),
                };
            }
            words.push(vals[pos[&f]] & Self::mask(k));
        }
        TruthTable { vars: k, words }
    }

    pub fn get(&self, m: u32) -> bool {
        self.words[m as usize / 64] >> (m % 64) & 1 == 1
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn complement(&self) -> Self {
        let mask = Self::mask(self.vars);
        TruthTable {
            vars: self.vars,
            words: self.words.iter().map(|w| !w & mask).collect(),
        }
    }

    /// Möbius transform: bit `m` of the result is the coefficient of the
    /// monomial whose variables are the set bits of `m`.
    pub fn mobius(&self) -> TruthTable {
        let mut w = self.words.clone();
        for (i, &p) in PATTERNS.iter().enumerate().take(self.vars.min(6)) {
            let shift = 1 << i;
            for x in w.iter_mut() {
                *x ^= (*x & !p) << shift;
            }
        }
        for i in 6..self.vars {
            let step = 1 << (i - 6);
            for j in 0..w.len() {
                if j & step != 0 {
                    w[j] ^= w[j ^ step];
                }
            }
        }
        let mask = Self::mask(self.vars);
        for x in w.iter_mut() {
            *x &= mask;
        }
        TruthTable {
            vars: self.vars,
            words: w,
        }
    }

    pub fn minterms(&self) -> impl Iterator<Item = u32> + '_ {
        (0..1u32 << self.vars).filter(move |&m| self.get(m))
    }
}

/// All prime implicants of `t`, by dynamic programming over the `3^k`
/// cubes (digit 0/1 = literal polarity, 2 = variable absent).
pub fn prime_implicants(t: &TruthTable) -> Vec<Cube> {
    let k = t.vars;
    let pow: Vec<usize> = (0..=k).map(|i| 3usize.pow(i as u32)).collect();
    let total = pow[k];
    let mut imp = vec![false; total];
    for c in 0..total {
        let mut rest = c;
        let mut minterm = 0u32;
        let mut dash = None;
        for (i, p) in pow.iter().enumerate().take(k) {
            let d = rest % 3;
            rest /= 3;
            if d == 2 {
                dash = Some(*p);
                break;
            }
            minterm |= (d as u32) << i;
        }
        imp[c] = match dash {
            None => t.get(minterm),
            Some(p) => imp[c - 2 * p] && imp[c - p],
        };
    }
    let mut primes = Vec::new();
    for c in 0..total {
        if !imp[c] {
            continue;
        }
        let mut rest = c;
        let mut cube = Cube { care: 0, value: 0 };
        let mut prime = true;
        for (i, p) in pow.iter().enumerate().take(k) {
            let d = rest % 3;
            rest /= 3;
            if d != 2 {
                cube.care |= 1 << i;
                cube.value |= (d as u32) << i;
                if imp[c + (2 - d) * p] {
                    prime = false;
                    break;
                }
            }
        }
        if prime {
            primes.push(cube);
        }
    }
    primes
}

fn cube_minterms(c: Cube, vars: usize) -> impl Iterator<Item = u32> {
    let free = !c.care & ((1u32 << vars) - 1);
    // enumerate subsets of the free bits
    let mut sub = Some(0u32);
    std::iter::from_fn(move || {
        let s = sub?;
        sub = if s == free {
            None
        } else {
            Some((s.wrapping_sub(free)) & free)
        };
        Some(c.value | s)
    })
}

/// Minimal-ish sum-of-products cover of `t`: essential primes, then greedy
/// by newly covered minterms (ties: fewer literals, then prime order), then
/// removal of redundant cubes. The result is sorted by literal count.
pub fn minimal_cover(t: &TruthTable) -> Vec<Cube> {
    if t.count_ones() == 0 {
        return Vec::new();
    }
    let primes = prime_implicants(t);
    let n = 1usize << t.vars;
    let covers: Vec<Vec<u32>> = primes.iter().map(|&p| cube_minterms(p, t.vars).collect()).collect();
    let mut count = vec![0u32; n];
    for c in &covers {
        for &m in c {
            count[m as usize] += 1;
        }
    }
    let mut chosen = vec![false; primes.len()];
    let mut covered = vec![false; n];
    let mut remaining = t.count_ones();
    let mut take = |i: usize, chosen: &mut Vec<bool>, covered: &mut Vec<bool>| {
        chosen[i] = true;
        for &m in &covers[i] {
            if !covered[m as usize] {
                covered[m as usize] = true;
                remaining -= 1;
            }
        }
    };
    for (i, c) in covers.iter().enumerate() {
        if !chosen[i] && c.iter().any(|&m| count[m as usize] == 1) {
            take(i, &mut chosen, &mut covered);
        }
    }
    loop {
        let best = (0..primes.len())
            .filter(|&i| !chosen[i])
            .map(|i| {
                let gain = covers[i].iter().filter(|&&m| !covered[m as usize]).count();
                (i, gain)
            })
            .filter(|&(_, g)| g > 0)
            .min_by_key(|&(i, g)| (std::cmp::Reverse(g), primes[i].literals(), i));
        match best {
            Some((i, _)) => take(i, &mut chosen, &mut covered),
            None => break,
        }
    }
    debug_assert_eq!(remaining, 0);

    // drop cubes whose minterms are all covered by other chosen cubes
    let mut mult = vec![0u32; n];
    for (i, c) in covers.iter().enumerate() {
        if chosen[i] {
            for &m in c {
                mult[m as usize] += 1;
            }
        }
    }
    for i in (0..primes.len()).rev() {
        if chosen[i] && covers[i].iter().all(|&m| mult[m as usize] > 1) {
            chosen[i] = false;
            for &m in &covers[i] {
                mult[m as usize] -= 1;
            }
        }
    }
    let mut cover: Vec<Cube> = primes
        .into_iter()
        .zip(chosen)
        .filter_map(|(p, c)| c.then_some(p))
        .collect();
    // fewer literals first, then by lowest variable and positive polarity
    cover.sort_by_key(|c| {
        (
            c.literals(),
            std::cmp::Reverse(c.care.reverse_bits()),
            std::cmp::Reverse(c.value.reverse_bits()),
        )
    });
    cover
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval_cover(cover: &[Cube], m: u32) -> bool {
        cover.iter().any(|c| c.contains(m))
    }

    #[test]
    fn majority_has_three_primes() {
        let t = TruthTable::from_fn(3, |m| m.count_ones() >= 2);
        let primes = prime_implicants(&t);
        assert_eq!(primes.len(), 3);
        let cover = minimal_cover(&t);
        assert_eq!(cover.len(), 3);
        assert!(cover.iter().all(|c| c.literals() == 2));
        for m in 0..8 {
            assert_eq!(eval_cover(&cover, m), t.get(m));
        }
    }

    #[test]
    fn absorption() {
        // (a & b) | (a & ~b) = a
        let t = TruthTable::from_fn(2, |m| m & 1 == 1);
        assert_eq!(minimal_cover(&t), vec![Cube { care: 1, value: 1 }]);
    }

    #[test]
    fn constants() {
        let zero = TruthTable::from_fn(4, |_| false);
        assert!(minimal_cover(&zero).is_empty());
        let one = zero.complement();
        assert_eq!(minimal_cover(&one), vec![Cube { care: 0, value: 0 }]);
    }

    #[test]
    fn parity_needs_all_minterms() {
        let t = TruthTable::from_fn(5, |m| m.count_ones() % 2 == 1);
        assert_eq!(minimal_cover(&t).len(), 16);
    }

    #[test]
    fn random_functions_are_covered_exactly() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for vars in 1..=8 {
            for _ in 0..20 {
                let bits: Vec<bool> = (0..1 << vars).map(|_| rng.gen_bool(0.5)).collect();
                let t = TruthTable::from_fn(vars, |m| bits[m as usize]);
                let cover = minimal_cover(&t);
                for m in 0..1u32 << vars {
                    assert_eq!(eval_cover(&cover, m), t.get(m));
                }
                let primes = prime_implicants(&t);
                for p in primes {
                    // every prime is an implicant and cannot be enlarged
                    assert!(cube_minterms(p, vars).all(|m| t.get(m)));
                    for i in 0..vars {
                        if p.care >> i & 1 == 1 {
                            let bigger = Cube {
                                care: p.care & !(1 << i),
                                value: p.value & !(1 << i),
                            };
                            assert!(!cube_minterms(bigger, vars).all(|m| t.get(m)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn mobius_examples() {
        // or: a + b + ab
        let or = TruthTable::from_fn(2, |m| m != 0);
        assert_eq!(or.mobius().minterms().collect::<Vec<_>>(), vec![1, 2, 3]);
        // maj: ab + ac + bc
        let maj = TruthTable::from_fn(3, |m| m.count_ones() >= 2);
        assert_eq!(maj.mobius().minterms().collect::<Vec<_>>(), vec![3, 5, 6]);
        // the transform is an involution, also across words
        let t = TruthTable::from_fn(9, |m| m.wrapping_mul(2654435761) >> 31 == 1);
        assert_eq!(t.mobius().mobius(), t);
    }

    #[test]
    fn table_of_formula() {
        let mut a = Arena::new();
        let v: Vec<Formula> = (1..=8).map(|i| a.var(VarId(i))).collect();
        let f = a.chain(crate::boolir::Op::Xor, &v);
        let support: Vec<VarId> = (1..=8).map(VarId).collect();
        let t = TruthTable::of(&a, f, &support);
        for m in 0..256u32 {
            assert_eq!(t.get(m), m.count_ones() % 2 == 1);
        }
    }
}
