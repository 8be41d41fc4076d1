use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::{Forest, ForestMorphism, Vertex};
use crate::error::{Error, Result};
use crate::finstar::{compose_pointed, PointedMap};

/// A simplex of `Fin_*`: a chain `<k_0> -> <k_1> -> … -> <k_n>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LevelForest {
    start: usize,
    maps: Vec<PointedMap>,
}

impl LevelForest {
    pub fn new(start: usize, maps: Vec<PointedMap>) -> Result<LevelForest> {
        let mut k = start;
        for (i, m) in maps.iter().enumerate() {
            if m.source() != k {
                return Err(Error::IncompatibleChains(format!("map {} starts at <{}>, expected <{k}>", i + 1, m.source())));
            }
            k = m.target();
        }
        Ok(LevelForest { start, maps })
    }

    pub fn point(k: usize) -> LevelForest {
        LevelForest { start: k, maps: Vec::new() }
    }

    pub fn dimension(&self) -> usize {
        self.maps.len()
    }

    pub fn arity(&self, level: usize) -> usize {
        if level == 0 {
            self.start
        } else {
            self.maps[level - 1].target()
        }
    }

    pub fn maps(&self) -> &[PointedMap] {
        &self.maps
    }

    /// The composite of the maps from level `i` up to level `j`.
    pub fn between(&self, i: usize, j: usize) -> PointedMap {
        self.maps[i..j]
            .iter()
            .fold(PointedMap::identity(self.arity(i)), |acc, m| compose_pointed(&acc, m).expect("chain is composable"))
    }

    /// The chain `A ∘ φ` for a monotone `φ: [m] -> [n]`.
    pub fn restrict(&self, phi: &[usize]) -> Result<LevelForest> {
        check_operator(phi, self.dimension())?;
        let maps = phi.windows(2).map(|w| self.between(w[0], w[1])).collect();
        Ok(LevelForest { start: self.arity(phi[0]), maps })
    }

    fn offsets(&self) -> Vec<usize> {
        offsets((0..=self.dimension()).map(|i| self.arity(i)))
    }
}

impl fmt::Display for LevelForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.maps.is_empty() {
            return write!(f, "<{}>", self.start);
        }
        let parts: Vec<String> = self.maps.iter().map(|m| m.to_string()).collect();
        write!(f, "{}", parts.join(" ; "))
    }
}

impl FromStr for LevelForest {
    type Err = Error;

    /// Either `<k>` or pointed maps separated by `;`.
    fn from_str(s: &str) -> Result<LevelForest> {
        let s = s.trim();
        if let Some(k) = s.strip_prefix('<').and_then(|r| r.strip_suffix('>')) {
            let k = k.trim().parse().map_err(|_| Error::Parse { line: 0, column: 1, message: format!("bad object `{s}`") })?;
            return Ok(LevelForest::point(k));
        }
        let maps = s.split(';').map(|m| m.trim().parse()).collect::<Result<Vec<PointedMap>>>()?;
        let start = maps.first().map(|m| m.source()).unwrap_or(0);
        LevelForest::new(start, maps)
    }
}

fn offsets(arities: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut out = vec![0];
    for k in arities {
        out.push(out.last().copied().unwrap_or(0) + k);
    }
    out
}

fn check_operator(phi: &[usize], n: usize) -> Result<()> {
    let ok = !phi.is_empty() && phi.windows(2).all(|w| w[0] <= w[1]) && phi.iter().all(|&x| x <= n);
    if ok {
        Ok(())
    } else {
        Err(Error::IncompatibleChains(format!("{phi:?} is not a monotone map into [{n}]")))
    }
}

/// All monotone maps `[m] -> [n]`, as image vectors.
pub fn monotone_maps(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m + 1);
    fn go(m: usize, n: usize, low: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m + 1 {
            out.push(cur.clone());
            return;
        }
        for x in low..=n {
            cur.push(x);
            go(m, n, x, cur, out);
            cur.pop();
        }
    }
    go(m, n, 0, &mut cur, &mut out);
    out
}

/// The forest `ω(A)`. Its edges are the pairs `(i, a)` with `a` a
/// non-basepoint element of level `i`, named `i.a`. Each `(i, b)` with
/// `i ≥ 1` carries a vertex whose inputs are the `(i-1, a)` with
/// `α_i(a) = b`, so elements sent to the basepoint become roots.
pub fn omega(a: &LevelForest) -> Forest {
    let off = a.offsets();
    let edges = (0..=a.dimension()).flat_map(|i| (1..=a.arity(i)).map(move |x| format!("{i}.{x}"))).collect();
    let mut vertices = Vec::new();
    for (i, m) in a.maps().iter().enumerate() {
        for b in 1..=m.target() {
            vertices.push(Vertex {
                name: format!("v{}.{b}", i + 1),
                inputs: m.preimage(b).into_iter().map(|x| off[i] + x - 1).collect(),
                output: off[i + 1] + b - 1,
            });
        }
    }
    Forest::from_parts(edges, vertices).expect("level forests are forests")
}

/// Image of the edges of `ω(A ∘ φ)` inside `ω(A)`: `(j, b) ↦ (φ(j), b)`.
fn edge_map(phi: &[usize], arities: &[usize], target_offsets: &[usize]) -> Vec<usize> {
    phi.iter().flat_map(|&i| (0..arities[i]).map(move |x| target_offsets[i] + x)).collect()
}

/// How `ω` acts on the simplicial operators of `Fin_*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variance {
    /// `φ` names an arrow `A ∘ φ -> A`, sent to `ω(A ∘ φ) -> ω(A)`.
    Covariant,
    /// `φ` names an arrow `A -> A ∘ φ` of the opposite category; the
    /// forest morphism is the same, only its index is reversed.
    Contravariant,
}

impl fmt::Display for Variance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variance::Covariant => "covariant",
            Variance::Contravariant => "contravariant",
        })
    }
}

/// The variance under which reports state the action of `ω` on arrows.
pub const OMEGA_VARIANCE: Variance = Variance::Covariant;

/// For `B = A ∘ φ`, the forest morphism `ω(B) -> ω(A)`. So `ω` is
/// covariant for the arrow `B -> A` of the category of simplices that `φ`
/// names.
pub fn omega_on_arrow(phi: &[usize], a: &LevelForest, b: &LevelForest) -> Result<ForestMorphism> {
    let expected = a.restrict(phi)?;
    if &expected != b {
        return Err(Error::IncompatibleChains(format!("{b} is not the restriction of {a} along {phi:?}")));
    }
    let arities: Vec<usize> = (0..=a.dimension()).map(|i| a.arity(i)).collect();
    Ok(ForestMorphism { source: omega(b), target: omega(a), edges: edge_map(phi, &arities, &a.offsets()) })
}

/// Outcome of the exhaustive functoriality check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaReport {
    pub max_dimension: usize,
    pub max_arity: usize,
    pub chains: u64,
    /// Pairs `(A, φ)` whose image `ω(A ∘ φ) -> ω(A)` was checked to be a
    /// forest morphism.
    pub arrows: u64,
    /// Triples `(A, ψ, φ)` covered by the composition law.
    pub composites: u64,
    pub failure: Option<String>,
}

impl OmegaReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for OmegaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "max-dimension: {}", self.max_dimension)?;
        writeln!(f, "max-arity: {}", self.max_arity)?;
        writeln!(f, "variance: {OMEGA_VARIANCE}")?;
        writeln!(f, "chains: {}", self.chains)?;
        writeln!(f, "arrows: {}", self.arrows)?;
        writeln!(f, "composites: {}", self.composites)?;
        match &self.failure {
            None => writeln!(f, "verdict: pass"),
            Some(w) => writeln!(f, "verdict: fail\nwitness: {w}"),
        }
    }
}

const MAX_LEVELS: usize = 4;

/// A chain held inline: arities and image tables, basepoint is 0.
#[derive(Clone, Copy)]
struct Packed {
    dim: usize,
    ar: [u8; MAX_LEVELS],
    img: [[u8; 4]; MAX_LEVELS - 1],
}

impl Packed {
    fn between(&self, i: usize, j: usize, a: u8) -> u8 {
        (i..j).fold(a, |x, l| if x == 0 { 0 } else { self.img[l][x as usize - 1] })
    }

    fn describe(&self) -> String {
        let maps: Vec<String> = (0..self.dim)
            .map(|l| {
                let ims: Vec<String> = (0..self.ar[l] as usize).map(|x| self.img[l][x].to_string()).collect();
                format!("{}->{}:[{}]", self.ar[l], self.ar[l + 1], ims.join(","))
            })
            .collect();
        if maps.is_empty() {
            format!("<{}>", self.ar[0])
        } else {
            maps.join(" ; ")
        }
    }
}

fn packed_chains(dim: usize, max_arity: usize) -> Vec<Packed> {
    let mut out = Vec::new();
    let mut p = Packed { dim, ar: [0; MAX_LEVELS], img: [[0; 4]; MAX_LEVELS - 1] };
    fn levels(p: &mut Packed, level: usize, max_arity: usize, out: &mut Vec<Packed>) {
        if level == p.dim {
            out.push(*p);
            return;
        }
        for next in 0..=max_arity {
            p.ar[level + 1] = next as u8;
            images(p, level, 0, max_arity, out);
        }
    }
    fn images(p: &mut Packed, level: usize, x: usize, max_arity: usize, out: &mut Vec<Packed>) {
        if x == p.ar[level] as usize {
            levels(p, level + 1, max_arity, out);
            return;
        }
        for y in 0..=p.ar[level + 1] {
            p.img[level][x] = y;
            images(p, level, x + 1, max_arity, out);
        }
    }
    for k in 0..=max_arity {
        p.ar[0] = k as u8;
        levels(&mut p, 0, max_arity, &mut out);
    }
    out
}

/// Leaf sets of subtrees of `ω(A)` as edge bitmasks, per edge.
fn packed_frontiers(c: &Packed, off: &[usize]) -> Vec<Vec<u16>> {
    let mut fr: Vec<Vec<u16>> = vec![Vec::new(); off[c.dim + 1]];
    for x in 0..c.ar[0] as usize {
        fr[x] = vec![1 << x];
    }
    for l in 1..=c.dim {
        for b in 1..=c.ar[l] {
            let mut partial = vec![0u16];
            for a in 1..=c.ar[l - 1] {
                if c.img[l - 1][a as usize - 1] == b {
                    let below = &fr[off[l - 1] + a as usize - 1];
                    partial = partial.iter().flat_map(|p| below.iter().map(move |s| p | s)).collect();
                }
            }
            let e = off[l] + b as usize - 1;
            partial.push(1 << e);
            partial.sort_unstable();
            partial.dedup();
            fr[e] = partial;
        }
    }
    fr
}

/// Checks, for every chain of dimension at most `max_dim` with arities at
/// most `max_arity` and every simplicial operator `φ` of source dimension
/// at most `max_dim`, that `ω(A ∘ φ) -> ω(A)` is a forest morphism; and
/// that `ω` preserves identities and composites. The edge maps of the
/// composition law depend on the chain only through its arities, so those
/// checks run once per arity sequence and cover every chain sharing it.
pub fn omega_functoriality_check(max_dim: usize, max_arity: usize) -> Result<OmegaReport> {
    if max_dim + 1 > MAX_LEVELS || (max_dim + 1) * max_arity > 16 || max_arity > 4 {
        return Err(Error::BoundTooSmall {
            bound: max_dim,
            detail: format!("the packed check handles at most {MAX_LEVELS} levels of arity at most 4"),
        });
    }
    let mut report = OmegaReport { max_dimension: max_dim, max_arity, chains: 0, arrows: 0, composites: 0, failure: None };
    let operators: Vec<Vec<Vec<Vec<usize>>>> =
        (0..=max_dim).map(|n| (0..=max_dim).map(|m| monotone_maps(m, n)).collect()).collect();

    for n in 0..=max_dim {
        let chains = packed_chains(n, max_arity);
        report.chains += chains.len() as u64;
        let ops: Vec<&Vec<usize>> = operators[n].iter().flatten().collect();
        let failure = chains.par_iter().find_map_first(|c| {
            let off = offsets((0..=n).map(|i| c.ar[i] as usize));
            let fr = packed_frontiers(c, &off);
            for phi in &ops {
                for j in 1..phi.len() {
                    let (lo, hi) = (phi[j - 1], phi[j]);
                    for b in 1..=c.ar[hi] {
                        let mut mask = 0u16;
                        for a in 1..=c.ar[lo] {
                            if c.between(lo, hi, a) == b {
                                mask |= 1 << (off[lo] + a as usize - 1);
                            }
                        }
                        if fr[off[hi] + b as usize - 1].binary_search(&mask).is_err() {
                            return Some(format!("chain {} operator {phi:?} vertex v{j}.{b}", c.describe()));
                        }
                    }
                }
            }
            None
        });
        if let Some(w) = failure {
            report.failure = Some(w);
            return Ok(report);
        }
        report.arrows += chains.len() as u64 * ops.len() as u64;

        for arities in arity_sequences(n, max_arity) {
            let weight: u64 = arities.windows(2).map(|w| ((w[1] + 1) as u64).pow(w[0] as u32)).product();
            let off = offsets(arities.iter().copied());
            let identity: Vec<usize> = (0..=n).collect();
            if edge_map(&identity, &arities, &off) != (0..off[n + 1]).collect::<Vec<_>>() {
                report.failure = Some(format!("identity on arities {arities:?}"));
                return Ok(report);
            }
            for m in 0..=max_dim {
                for psi in &operators[n][m] {
                    let mid: Vec<usize> = psi.iter().map(|&i| arities[i]).collect();
                    let mid_off = offsets(mid.iter().copied());
                    let outer = edge_map(psi, &arities, &off);
                    for l in 0..=max_dim {
                        for phi in &operators[m][l] {
                            let inner = edge_map(phi, &mid, &mid_off);
                            let composite: Vec<usize> = phi.iter().map(|&j| psi[j]).collect();
                            let direct = edge_map(&composite, &arities, &off);
                            let stacked: Vec<usize> = inner.iter().map(|&e| outer[e]).collect();
                            if direct != stacked {
                                report.failure = Some(format!("arities {arities:?} ψ={psi:?} φ={phi:?}"));
                                return Ok(report);
                            }
                            report.composites += weight;
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

fn arity_sequences(n: usize, max_arity: usize) -> Vec<Vec<usize>> {
    itertools::Itertools::multi_cartesian_product((0..=n).map(|_| 0..=max_arity)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dendroid::{binary_corolla, forest_iso, linear_tree, unit_tree};

    fn chain(s: &str) -> LevelForest {
        s.parse().unwrap()
    }

    #[test]
    fn small_examples() {
        assert!(forest_iso(&omega(&LevelForest::point(1)), &unit_tree()).is_some());
        assert!(forest_iso(&omega(&chain("2->1:[1,1]")), &binary_corolla()).is_some());
        assert!(forest_iso(&omega(&chain("1->1:[1] ; 1->1:[1]")), &linear_tree(2)).is_some());
        let killed = omega(&chain("2->1:[1,0]"));
        assert_eq!(killed.roots().len(), 2);
    }

    #[test]
    fn one_simplices_count() {
        for n in 0..=3 {
            for m in 0..=3 {
                for f in PointedMap::all(n, m) {
                    let w = omega(&LevelForest::new(n, vec![f]).unwrap());
                    assert_eq!((w.vertex_count(), w.edge_count()), (m, n + m));
                }
            }
        }
    }

    #[test]
    fn restriction_and_faces() {
        let a = chain("2->2:[2,1] ; 2->1:[1,0]");
        assert_eq!(a.restrict(&[0, 2]).unwrap(), chain("2->1:[0,1]"));
        assert_eq!(a.restrict(&[1, 1]).unwrap(), chain("2->2:[1,2]"));
        assert!(a.restrict(&[2, 1]).is_err());
        let b = a.restrict(&[0, 2]).unwrap();
        let f = omega_on_arrow(&[0, 2], &a, &b).unwrap();
        f.check().unwrap();
        assert!(matches!(omega_on_arrow(&[0, 1], &a, &b), Err(Error::IncompatibleChains(_))));
    }

    #[test]
    fn generic_path_agrees_on_small_chains() {
        let chains: Vec<LevelForest> = (0..=2)
            .flat_map(|k0| (0..=2).flat_map(move |k1| PointedMap::all(k0, k1)))
            .flat_map(|f| {
                let k1 = f.target();
                (0..=2).flat_map(move |k2| {
                    let f = f.clone();
                    PointedMap::all(k1, k2).into_iter().map(move |g| LevelForest::new(f.source(), vec![f.clone(), g]).unwrap())
                })
            })
            .collect();
        for a in &chains {
            for m in 0..=2 {
                for phi in monotone_maps(m, 2) {
                    let b = a.restrict(&phi).unwrap();
                    let f = omega_on_arrow(&phi, a, &b).unwrap();
                    f.check().unwrap();
                    for l in 0..=2 {
                        for psi in monotone_maps(l, m) {
                            let c = b.restrict(&psi).unwrap();
                            let g = omega_on_arrow(&psi, &b, &c).unwrap();
                            let through: Vec<usize> = psi.iter().map(|&j| phi[j]).collect();
                            assert_eq!(g.then(&f).unwrap(), omega_on_arrow(&through, a, &c).unwrap());
                        }
                    }
                }
            }
        }
        let r = omega_functoriality_check(2, 2).unwrap();
        assert!(r.passed());
        let independent: u64 = (0..=2u64).map(|k0| (0..=2u64).map(|k1| (0..=2u64).map(|k2| (k1 + 1).pow(k0 as u32) * (k2 + 1).pow(k1 as u32)).sum::<u64>()).sum::<u64>()).sum();
        assert_eq!(chains.len() as u64, independent);
        assert!(r.chains > independent);
    }

    #[test]
    fn monotone_map_counts() {
        assert_eq!(monotone_maps(0, 3).len(), 4);
        assert_eq!(monotone_maps(1, 3).len(), 10);
        assert_eq!(monotone_maps(3, 3).len(), 35);
    }
}
