use std::collections::HashMap;

use rayon::prelude::*;

use super::{compose_perm, permutations, Color, Operation, SetOperad};
use crate::error::{Error, Result};

/// What a passing law check covered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawSummary {
    pub bound: usize,
    pub operations: usize,
    pub checks: usize,
}

struct Ctx<'a> {
    o: &'a SetOperad,
    bound: usize,
    by_output: HashMap<Color, Vec<Operation>>,
}

type Outcome = std::result::Result<usize, String>;

impl Ctx<'_> {
    fn d(&self, p: &Operation) -> String {
        self.o.describe(p)
    }

    fn partial(&self, p: &Operation, i: usize, q: &Operation) -> std::result::Result<Operation, String> {
        let r = self
            .o
            .partial(p, i, q)
            .ok_or_else(|| format!("{} ∘_{} {} is undefined", self.d(p), i + 1, self.d(q)))?;
        if !self.o.contains(&r) {
            return Err(format!("{} ∘_{} {} = {} is not an operation", self.d(p), i + 1, self.d(q), self.d(&r)));
        }
        Ok(r)
    }

    fn act(&self, p: &Operation, sigma: &[usize]) -> std::result::Result<Operation, String> {
        let r = self.o.act(p, sigma).ok_or_else(|| format!("{} · {sigma:?} is undefined", self.d(p)))?;
        if !self.o.contains(&r) {
            return Err(format!("{} · {sigma:?} = {} is not an operation", self.d(p), self.d(&r)));
        }
        Ok(r)
    }

    fn same(&self, what: &str, lhs: &Operation, rhs: &Operation) -> std::result::Result<(), String> {
        if lhs == rhs {
            Ok(())
        } else {
            Err(format!("{what}: {} ≠ {}", self.d(lhs), self.d(rhs)))
        }
    }

    fn candidates(&self, c: Color, max_arity: usize) -> impl Iterator<Item = &Operation> {
        self.by_output.get(&c).into_iter().flatten().filter(move |q| q.arity() <= max_arity)
    }

    fn unit_and_action(&self, p: &Operation) -> Outcome {
        let o = self.o;
        let mut checks = 0;
        let left = o.compose(&o.unit(p.output), std::slice::from_ref(p));
        let units: Vec<Operation> = p.inputs.iter().map(|&c| o.unit(c)).collect();
        let right = o.compose(p, &units);
        if left.as_ref() != Some(p) || right.as_ref() != Some(p) {
            return Err(format!("unit law fails at {}", self.d(p)));
        }
        checks += 2;
        let perms = permutations(p.arity());
        for s in &perms {
            let ps = self.act(p, s)?;
            for t in &perms {
                let lhs = self.act(&ps, t)?;
                let rhs = self.act(p, &compose_perm(s, t))?;
                self.same(&format!("({} · {s:?}) · {t:?}", self.d(p)), &lhs, &rhs)?;
                checks += 1;
            }
        }
        Ok(checks)
    }

    fn associativity(&self, p: &Operation) -> Outcome {
        let mut checks = 0;
        let n = p.arity();
        for i in 0..n {
            for q in self.candidates(p.inputs[i], self.bound + 1 - n) {
                let pq = self.partial(p, i, q)?;
                let m = q.arity();
                for j in 0..m {
                    for r in self.candidates(q.inputs[j], self.bound + 2 - n - m) {
                        let lhs = self.partial(&pq, i + j, r)?;
                        let qr = self.partial(q, j, r)?;
                        let rhs = self.partial(p, i, &qr)?;
                        self.same("sequential associativity", &lhs, &rhs)?;
                        checks += 1;
                    }
                }
                for k in i + 1..n {
                    let cap = (self.bound + 2 - n - m).min(self.bound + 1 - n);
                    for r in self.candidates(p.inputs[k], cap) {
                        let lhs = self.partial(&pq, k + m - 1, r)?;
                        let pr = self.partial(p, k, r)?;
                        let rhs = self.partial(&pr, i, q)?;
                        self.same("parallel associativity", &lhs, &rhs)?;
                        checks += 1;
                    }
                }
            }
        }
        Ok(checks)
    }

    /// Tuples `(q_1, …, q_n)` composable into `p` with total arity within
    /// the bound.
    fn tuples(&self, p: &Operation) -> Vec<Vec<Operation>> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        self.extend_tuples(p, 0, 0, &mut current, &mut out);
        out
    }

    fn extend_tuples(&self, p: &Operation, i: usize, used: usize, cur: &mut Vec<Operation>, out: &mut Vec<Vec<Operation>>) {
        if i == p.arity() {
            out.push(cur.clone());
            return;
        }
        for q in self.candidates(p.inputs[i], self.bound - used) {
            cur.push(q.clone());
            self.extend_tuples(p, i + 1, used + q.arity(), cur, out);
            cur.pop();
        }
    }

    fn simultaneous(&self, p: &Operation) -> Outcome {
        let o = self.o;
        let mut checks = 0;
        for qs in self.tuples(p) {
            let whole = o.compose(p, &qs).ok_or_else(|| format!("composite into {} is undefined", self.d(p)))?;
            // Low arities first, so every intermediate stays within the bound.
            let mut order: Vec<usize> = (0..qs.len()).collect();
            order.sort_by_key(|&i| (qs[i].arity(), i));
            let mut iterated = p.clone();
            let mut done: Vec<usize> = Vec::new();
            for &i in &order {
                let shift: usize = done.iter().filter(|&&j| j < i).map(|&j| qs[j].arity()).sum::<usize>();
                let before = done.iter().filter(|&&j| j < i).count();
                iterated = self.partial(&iterated, i - before + shift, &qs[i])?;
                done.push(i);
            }
            self.same("simultaneous versus iterated composition", &whole, &iterated)?;
            checks += 1;
            let offsets: Vec<usize> = qs
                .iter()
                .scan(0, |acc, q| {
                    let start = *acc;
                    *acc += q.arity();
                    Some(start)
                })
                .collect();
            for sigma in permutations(p.arity()) {
                let ps = self.act(p, &sigma)?;
                let moved: Vec<Operation> = sigma.iter().map(|&s| qs[s].clone()).collect();
                let lhs = o.compose(&ps, &moved).ok_or_else(|| format!("composite into {} is undefined", self.d(&ps)))?;
                let block: Vec<usize> = sigma.iter().flat_map(|&s| (0..qs[s].arity()).map(|t| offsets[s] + t).collect::<Vec<_>>()).collect();
                let rhs = self.act(&whole, &block)?;
                self.same(&format!("outer equivariance of {} under {sigma:?}", self.d(p)), &lhs, &rhs)?;
                checks += 1;
            }
            for (i, q) in qs.iter().enumerate() {
                for tau in permutations(q.arity()) {
                    let mut twisted = qs.clone();
                    twisted[i] = self.act(q, &tau)?;
                    let lhs = o.compose(p, &twisted).ok_or_else(|| format!("composite into {} is undefined", self.d(p)))?;
                    let total = whole.arity();
                    let perm: Vec<usize> = (0..total)
                        .map(|x| {
                            let start = offsets[i];
                            if x >= start && x < start + q.arity() {
                                start + tau[x - start]
                            } else {
                                x
                            }
                        })
                        .collect();
                    let rhs = self.act(&whole, &perm)?;
                    self.same(&format!("inner equivariance at slot {}", i + 1), &lhs, &rhs)?;
                    checks += 1;
                }
            }
        }
        Ok(checks)
    }
}

/// Unit laws, the group action, associativity of partial composition,
/// agreement of simultaneous and iterated composition, and equivariance,
/// for every operation of arity at most `bound`. Fails with the first
/// violated equation.
pub fn check_operad_laws(o: &SetOperad, bound: usize) -> Result<LawSummary> {
    let ops = o.all_operations(bound);
    let mut by_output: HashMap<Color, Vec<Operation>> = HashMap::new();
    for p in &ops {
        by_output.entry(p.output).or_default().push(p.clone());
    }
    let ctx = Ctx { o, bound, by_output };
    let results: Vec<Outcome> = ops
        .par_iter()
        .map(|p| Ok(ctx.unit_and_action(p)? + ctx.associativity(p)? + ctx.simultaneous(p)?))
        .collect();
    let mut checks = 0;
    for r in results {
        checks += r.map_err(Error::InvalidOperad)?;
    }
    Ok(LawSummary { bound, operations: ops.len(), checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{chain, discrete, terminal, walking_iso};
    use crate::operad::{
        diagram_operad, product_over_com, sample_operad, sqcup, terminal_com, trivial_operad, Corrupted, Label,
    };

    #[test]
    fn basic_operads_pass() {
        for o in [terminal_com(), trivial_operad(), sample_operad()] {
            check_operad_laws(&o, 3).unwrap();
        }
    }

    #[test]
    fn constructions_pass() {
        let s = sample_operad();
        for k in [terminal(), chain(1), chain(2), walking_iso(), discrete(2)] {
            check_operad_laws(&sqcup(&k), 3).unwrap();
            check_operad_laws(&diagram_operad(&k, &s), 3).unwrap();
            check_operad_laws(&product_over_com(&sqcup(&k), &s), 3).unwrap();
        }
    }

    #[test]
    fn corruption_is_caught() {
        let s = sample_operad();
        let t = s.operations(&[1], 1).remove(1);
        let bad = crate::operad::SetOperad::new(Corrupted {
            inner: s.clone(),
            outer: t.clone(),
            inners: vec![t.clone()],
            result: Label::atom("t"),
        });
        let err = check_operad_laws(&bad, 2).unwrap_err();
        assert!(matches!(err, Error::InvalidOperad(_)));
    }
}
