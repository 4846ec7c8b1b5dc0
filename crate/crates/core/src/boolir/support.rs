//! Memoized variable supports.

use super::arena::{Arena, Formula, Node, VarId};

/// Support sets keyed by node. Each node's set is the sorted union of its
/// children's, so computing supports for a whole DAG touches each node once.
///
/// With a cap, sets larger than the cap are not stored; the node is only
/// marked as oversized. This keeps memory linear in the DAG size when only
/// small supports matter (the minimizer).
#[derive(Debug, Clone)]
pub struct SupportCache {
    cap: usize,
    sets: Vec<Option<Entry>>,
}

#[derive(Debug, Clone)]
enum Entry {
    Small(Box<[VarId]>),
    Oversized,
}

const EMPTY: &[VarId] = &[];

impl SupportCache {
    pub fn new(arena: &Arena) -> Self {
        Self::with_cap(arena, usize::MAX)
    }

    pub fn with_cap(arena: &Arena, cap: usize) -> Self {
        SupportCache {
            cap,
            sets: vec![None; arena.len()],
        }
    }

    /// Exact support. Panics if the cache was created with a cap that `f`
    /// exceeds; use [`SupportCache::capped`] in that case.
    pub fn support(&mut self, arena: &Arena, f: Formula) -> &[VarId] {
        self.capped(arena, f).expect("support exceeds the cache cap")
    }

    /// Support of `f`, or `None` if it has more than `cap` variables.
    pub fn capped(&mut self, arena: &Arena, f: Formula) -> Option<&[VarId]> {
        if self.sets.len() < arena.len() {
            self.sets.resize(arena.len(), None);
        }
        self.fill(arena, f);
        match self.sets[f.index()].as_ref().unwrap() {
            Entry::Small(s) => Some(s),
            Entry::Oversized => None,
        }
    }

    pub fn size(&mut self, arena: &Arena, f: Formula) -> Option<usize> {
        self.capped(arena, f).map(|s| s.len())
    }

    fn fill(&mut self, arena: &Arena, f: Formula) {
        let mut stack = vec![(f, false)];
        while let Some((g, expanded)) = stack.pop() {
            if self.sets[g.index()].is_some() {
                continue;
            }
            let node = arena.node(g);
            if !expanded {
                stack.push((g, true));
                stack.extend(node.children().map(|c| (c, false)));
                continue;
            }
            let entry = match node {
                Node::Const(_) => Entry::Small(EMPTY.into()),
                Node::Var(v) => {
                    if self.cap >= 1 {
                        Entry::Small(vec![v].into())
                    } else {
                        Entry::Oversized
                    }
                }
                _ => {
                    let mut merged: Vec<VarId> = Vec::new();
                    let mut over = false;
                    for c in node.children() {
                        match self.sets[c.index()].as_ref().unwrap() {
                            Entry::Small(s) => merged = union(&merged, s),
                            Entry::Oversized => over = true,
                        }
                        if over || merged.len() > self.cap {
                            over = true;
                            break;
                        }
                    }
                    if over {
                        Entry::Oversized
                    } else {
                        Entry::Small(merged.into())
                    }
                }
            };
            self.sets[g.index()] = Some(entry);
        }
    }
}

fn union(a: &[VarId], b: &[VarId]) -> Vec<VarId> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let mut a = Arena::new();
        let v: Vec<Formula> = (1..=6).map(|i| a.var(VarId(i))).collect();
        let and = a.and(v[1], v[2]);
        let f = a.xor(v[0], and);
        let mut s = SupportCache::new(&a);
        assert_eq!(s.support(&a, f), &[VarId(1), VarId(2), VarId(3)]);
        assert_eq!(s.support(&a, Arena::TRUE), EMPTY);

        let g = a.chain(super::super::Op::Xor, &[v[0], v[1], v[2], v[5]]);
        let mut s = SupportCache::new(&a);
        assert_eq!(s.support(&a, g), &[VarId(1), VarId(2), VarId(3), VarId(6)]);
    }

    #[test]
    fn cap_marks_large_supports() {
        let mut a = Arena::new();
        let v: Vec<Formula> = (1..=5).map(|i| a.var(VarId(i))).collect();
        let f = a.chain(super::super::Op::And, &v);
        let mut s = SupportCache::with_cap(&a, 3);
        assert_eq!(s.size(&a, f), None);
        let g = a.and(v[0], v[1]);
        assert_eq!(s.size(&a, g), Some(2));
    }
}
