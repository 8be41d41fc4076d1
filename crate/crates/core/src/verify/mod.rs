//! Decision procedures: operad isomorphism, algebra categories, and the
//! universal property of the diagram operad.

mod alg;

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::operad::{permutations, Color, Operation, OperadMorphism, SetOperad};

pub use alg::{
    alg_category, inert_functor_bijection_check, restriction_functor, universal_property_check,
    universal_property_check_on, AlgCategory, BijectionReport, Restriction, UniversalReport,
};

/// Default cap on candidates explored by the searches of this module.
pub const VERIFY_BUDGET: u64 = 100_000;

/// A pair of mutually inverse operad morphisms.
#[derive(Clone, Debug)]
pub struct IsoWitness {
    pub forward: OperadMorphism,
    pub backward: OperadMorphism,
}

impl IsoWitness {
    /// Both morphisms are valid and both composites are identities.
    pub fn check(&self) -> Result<()> {
        self.forward.check()?;
        self.backward.check()?;
        for (m, n) in [(&self.forward, &self.backward), (&self.backward, &self.forward)] {
            let round = m.then(n).ok_or_else(|| Error::InvalidOperad("composite is not total".into()))?;
            if round != OperadMorphism::identity(&m.source, m.bound) {
                return Err(Error::InvalidOperad("composite is not the identity".into()));
            }
        }
        Ok(())
    }
}

impl fmt::Display for IsoWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (s, t) = (&self.forward.source, &self.forward.target);
        writeln!(f, "bound: {}", self.forward.bound)?;
        writeln!(f, "operations: {}", self.forward.ops.len())?;
        for (c, &d) in self.forward.colors.iter().enumerate() {
            writeln!(f, "color: {} -> {}", s.color_name(c), t.color_name(d))?;
        }
        Ok(())
    }
}

/// Structure tables of one operad, indexed by position in
/// `all_operations(bound)`.
struct Tables {
    ops: Vec<Operation>,
    index: HashMap<Operation, usize>,
    by_signature: HashMap<(Vec<Color>, Color), Vec<usize>>,
    perms: Vec<Vec<Vec<usize>>>,
    /// `act[p][s]`: index of `p · perms[arity][s]`.
    act: Vec<Vec<usize>>,
    /// `(outer, slot, inner, result)` for every defined partial composite
    /// within the bound, listed under both `outer` and `inner`.
    partials: Vec<Vec<(usize, usize, usize, usize)>>,
    units: Vec<usize>,
}

impl Tables {
    fn new(o: &SetOperad, bound: usize) -> Result<Tables> {
        let ops = o.all_operations(bound);
        let index: HashMap<Operation, usize> = ops.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut by_signature: HashMap<(Vec<Color>, Color), Vec<usize>> = HashMap::new();
        for (i, p) in ops.iter().enumerate() {
            by_signature.entry((p.inputs.clone(), p.output)).or_default().push(i);
        }
        let perms: Vec<Vec<Vec<usize>>> = (0..=bound).map(permutations).collect();
        let find = |p: Option<Operation>, what: &str| -> Result<usize> {
            p.and_then(|p| index.get(&p).copied())
                .ok_or_else(|| Error::InvalidOperad(format!("{what} leaves the operations of {}", o.name())))
        };
        let mut act = Vec::with_capacity(ops.len());
        for p in &ops {
            let row = perms[p.arity()].iter().map(|s| find(o.act(p, s), "the symmetric action")).collect::<Result<_>>()?;
            act.push(row);
        }
        let mut partials = vec![Vec::new(); ops.len()];
        for (pi, p) in ops.iter().enumerate() {
            for (ri, r) in ops.iter().enumerate() {
                if p.arity() + r.arity() > bound + 1 {
                    continue;
                }
                for i in 0..p.arity() {
                    if p.inputs[i] == r.output {
                        let res = find(o.partial(p, i, r), "partial composition")?;
                        partials[pi].push((pi, i, ri, res));
                        if ri != pi {
                            partials[ri].push((pi, i, ri, res));
                        }
                    }
                }
            }
        }
        let units = (0..o.color_count()).map(|c| index[&o.unit(c)]).collect();
        Ok(Tables { ops, index, by_signature, perms, act, partials, units })
    }

    fn perm_index(&self, arity: usize, s: &[usize]) -> usize {
        self.perms[arity].iter().position(|p| p == s).expect("permutation")
    }

    fn signature_count(&self, inputs: &[Color], output: Color) -> usize {
        self.by_signature.get(&(inputs.to_vec(), output)).map_or(0, Vec::len)
    }
}

const NONE: usize = usize::MAX;

struct OpSearch<'a> {
    s: &'a Tables,
    t: &'a Tables,
    target: &'a SetOperad,
    colors: &'a [Color],
    bijective: bool,
    map: Vec<usize>,
    used: Vec<bool>,
    trail: Vec<usize>,
    queue: Vec<usize>,
    target_partials: HashMap<(usize, usize, usize), Option<usize>>,
}

impl OpSearch<'_> {
    fn mapped_signature(&self, p: usize) -> (Vec<Color>, Color) {
        let op = &self.s.ops[p];
        (op.inputs.iter().map(|&c| self.colors[c]).collect(), self.colors[op.output])
    }

    fn settle(&mut self, p: usize, q: usize) -> bool {
        if self.map[p] != NONE {
            return self.map[p] == q;
        }
        let (ins, out) = self.mapped_signature(p);
        let tq = &self.t.ops[q];
        if tq.inputs != ins || tq.output != out || (self.bijective && self.used[q]) {
            return false;
        }
        self.map[p] = q;
        self.used[q] = true;
        self.trail.push(p);
        self.queue.push(p);
        true
    }

    fn target_partial(&mut self, q: usize, i: usize, r: usize) -> Option<usize> {
        let (t, target) = (self.t, self.target);
        *self.target_partials.entry((q, i, r)).or_insert_with(|| {
            target.partial(&t.ops[q], i, &t.ops[r]).and_then(|x| t.index.get(&x).copied())
        })
    }

    fn propagate(&mut self) -> bool {
        while let Some(p) = self.queue.pop() {
            let q = self.map[p];
            let n = self.s.ops[p].arity();
            for si in 0..self.s.perms[n].len() {
                let ti = self.t.perm_index(n, &self.s.perms[n][si]);
                if !self.settle(self.s.act[p][si], self.t.act[q][ti]) {
                    return false;
                }
            }
            for k in 0..self.s.partials[p].len() {
                let (outer, slot, inner, result) = self.s.partials[p][k];
                let (mo, mi) = (self.map[outer], self.map[inner]);
                if mo == NONE || mi == NONE {
                    continue;
                }
                let Some(image) = self.target_partial(mo, slot, mi) else {
                    return false;
                };
                if !self.settle(result, image) {
                    return false;
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let p = self.trail.pop().expect("trail");
            self.used[self.map[p]] = false;
            self.map[p] = NONE;
        }
    }

    fn run(&mut self, from: usize, ticks: &mut u64, budget: u64, out: &mut Vec<Vec<usize>>, first_only: bool) -> Result<bool> {
        let mut next = from;
        while next < self.map.len() && self.map[next] != NONE {
            next += 1;
        }
        if next == self.map.len() {
            out.push(self.map.clone());
            return Ok(!first_only);
        }
        let sig = self.mapped_signature(next);
        let candidates = self.t.by_signature.get(&sig).cloned().unwrap_or_default();
        for q in candidates {
            *ticks += 1;
            if *ticks > budget {
                return Err(Error::BudgetExceeded { budget, estimate: *ticks as f64 });
            }
            let mark = self.trail.len();
            self.queue.clear();
            let ok = self.settle(next, q) && self.propagate();
            let keep_going = if ok { self.run(next + 1, ticks, budget, out, first_only)? } else { true };
            self.undo(mark);
            if !keep_going {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Operation maps extending the color map `colors`, found by backtracking
/// with propagation through units, the action and partial composition.
fn op_maps(
    s: &Tables,
    t: &Tables,
    target: &SetOperad,
    colors: &[Color],
    bijective: bool,
    ticks: &mut u64,
    budget: u64,
    first_only: bool,
) -> Result<Vec<Vec<usize>>> {
    for (sig, ps) in &s.by_signature {
        let image: Vec<Color> = sig.0.iter().map(|&c| colors[c]).collect();
        let count = t.signature_count(&image, colors[sig.1]);
        if count == 0 || (bijective && count != ps.len()) {
            return Ok(Vec::new());
        }
    }
    let mut search = OpSearch {
        s,
        t,
        target,
        colors,
        bijective,
        map: vec![NONE; s.ops.len()],
        used: vec![false; t.ops.len()],
        trail: Vec::new(),
        queue: Vec::new(),
        target_partials: HashMap::new(),
    };
    for (c, &d) in colors.iter().enumerate() {
        if !search.settle(s.units[c], t.units[d]) {
            return Ok(Vec::new());
        }
    }
    let mut out = Vec::new();
    if search.propagate() {
        search.run(0, ticks, budget, &mut out, first_only)?;
    }
    Ok(out)
}

fn morphism(s: &Tables, t: &Tables, source: &SetOperad, target: &SetOperad, bound: usize, colors: &[Color], map: &[usize]) -> OperadMorphism {
    let ops = map.iter().enumerate().map(|(p, &q)| (s.ops[p].clone(), t.ops[q].clone())).collect();
    OperadMorphism { source: source.clone(), target: target.clone(), bound, colors: colors.to_vec(), ops }
}

/// Per-color invariant used to prune color bijections: for each arity, the
/// number of operations with the color as output and as an input.
fn color_profile(t: &Tables, c: Color, bound: usize) -> Vec<(usize, usize)> {
    (0..=bound)
        .map(|n| {
            let out = t.ops.iter().filter(|p| p.arity() == n && p.output == c).count();
            let inp = t.ops.iter().filter(|p| p.arity() == n && p.inputs.contains(&c)).count();
            (out, inp)
        })
        .collect()
}

/// An isomorphism `o1 ≅ o2` on all operations of arity at most `bound`,
/// or `None` if there is none. The search runs over color bijections,
/// pruned by per-color operation counts, and then over operation
/// bijections.
pub fn operad_iso(o1: &SetOperad, o2: &SetOperad, bound: usize, budget: u64) -> Result<Option<IsoWitness>> {
    if o1.color_count() != o2.color_count() {
        return Ok(None);
    }
    let s = Tables::new(o1, bound)?;
    let t = Tables::new(o2, bound)?;
    if s.ops.len() != t.ops.len() {
        return Ok(None);
    }
    let n = o1.color_count();
    let ps: Vec<_> = (0..n).map(|c| color_profile(&s, c, bound)).collect();
    let pt: Vec<_> = (0..n).map(|c| color_profile(&t, c, bound)).collect();
    let mut ticks = 0u64;
    let mut colors = vec![NONE; n];
    let mut used = vec![false; n];
    let mut found = None;

    #[allow(clippy::too_many_arguments)]
    fn go(
        i: usize,
        colors: &mut Vec<Color>,
        used: &mut Vec<bool>,
        ps: &[Vec<(usize, usize)>],
        pt: &[Vec<(usize, usize)>],
        ctx: (&Tables, &Tables, &SetOperad),
        ticks: &mut u64,
        budget: u64,
        found: &mut Option<Vec<usize>>,
    ) -> Result<()> {
        if found.is_some() {
            return Ok(());
        }
        if i == colors.len() {
            let (s, t, target) = ctx;
            if let Some(m) = op_maps(s, t, target, colors, true, ticks, budget, true)?.pop() {
                *found = Some(m);
            }
            return Ok(());
        }
        for d in 0..colors.len() {
            if used[d] || ps[i] != pt[d] {
                continue;
            }
            *ticks += 1;
            if *ticks > budget {
                return Err(Error::BudgetExceeded { budget, estimate: *ticks as f64 });
            }
            colors[i] = d;
            used[d] = true;
            go(i + 1, colors, used, ps, pt, ctx, ticks, budget, found)?;
            used[d] = false;
            if found.is_some() {
                return Ok(());
            }
        }
        colors[i] = NONE;
        Ok(())
    }

    go(0, &mut colors, &mut used, &ps, &pt, (&s, &t, o2), &mut ticks, budget, &mut found)?;
    let Some(map) = found else {
        return Ok(None);
    };
    let forward = morphism(&s, &t, o1, o2, bound, &colors, &map);
    let mut back_colors = vec![0; n];
    for (c, &d) in colors.iter().enumerate() {
        back_colors[d] = c;
    }
    let mut back_map = vec![0; map.len()];
    for (p, &q) in map.iter().enumerate() {
        back_map[q] = p;
    }
    let backward = morphism(&t, &s, o2, o1, bound, &back_colors, &back_map);
    let witness = IsoWitness { forward, backward };
    witness.check()?;
    Ok(Some(witness))
}

/// Every operad morphism `o -> c` on operations of arity at most `bound`,
/// ordered by color map and then by operation images.
pub fn enumerate_operad_morphisms(o: &SetOperad, c: &SetOperad, bound: usize, budget: u64) -> Result<Vec<OperadMorphism>> {
    let s = Tables::new(o, bound)?;
    let t = Tables::new(c, bound)?;
    let n = o.color_count();
    let mut ticks = 0u64;
    let mut out = Vec::new();
    for colors in crate::operad::color_tuples(c.color_count(), n) {
        ticks += 1;
        if ticks > budget {
            return Err(Error::BudgetExceeded { budget, estimate: ticks as f64 });
        }
        for map in op_maps(&s, &t, c, &colors, false, &mut ticks, budget, false)? {
            out.push(morphism(&s, &t, o, c, bound, &colors, &map));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dendroid::{binary_corolla, free_operad};
    use crate::fincat::{chain, terminal};
    use crate::operad::{diagram_operad, product_over_com, sample_operad, sqcup, terminal_com, trivial_operad, units_only};

    #[test]
    fn self_isomorphism() {
        for o in [terminal_com(), sample_operad(), sqcup(&chain(1)), free_operad(&binary_corolla())] {
            let w = operad_iso(&o, &o, 3, VERIFY_BUDGET).unwrap().unwrap();
            w.check().unwrap();
        }
    }

    #[test]
    fn spec_examples() {
        let a = diagram_operad(&chain(1), &terminal_com());
        let b = product_over_com(&sqcup(&chain(1)), &terminal_com());
        assert!(operad_iso(&a, &b, 3, VERIFY_BUDGET).unwrap().is_some());
        assert!(operad_iso(&sqcup(&chain(1)), &units_only(&["a", "b"]), 3, VERIFY_BUDGET).unwrap().is_none());
        assert!(operad_iso(&sqcup(&terminal()), &terminal_com(), 3, VERIFY_BUDGET).unwrap().is_some());
    }

    #[test]
    fn morphism_counts() {
        let s = sample_operad();
        assert_eq!(enumerate_operad_morphisms(&trivial_operad(), &s, 3, VERIFY_BUDGET).unwrap().len(), 2);
        assert_eq!(enumerate_operad_morphisms(&terminal_com(), &terminal_com(), 3, VERIFY_BUDGET).unwrap().len(), 1);
        for o in [trivial_operad(), s.clone(), sqcup(&chain(1))] {
            let ms = enumerate_operad_morphisms(&o, &terminal_com(), 3, VERIFY_BUDGET).unwrap();
            assert_eq!(ms.len(), 1);
            assert_eq!(ms[0], OperadMorphism::to_com(&o, 3));
        }
        for m in enumerate_operad_morphisms(&s, &s, 3, VERIFY_BUDGET).unwrap() {
            m.check().unwrap();
        }
    }
}
