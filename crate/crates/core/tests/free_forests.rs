//! Every forest with at most six edges, up to isomorphism: the free operad
//! satisfies the operad laws, and its operation count matches a count of
//! leaf sets computed directly on the tree shapes.

use opcat::dendroid::{free_operad, Forest};
use opcat::operad::check_operad_laws;

/// A rooted tree: an edge with no vertex, or an edge with a vertex whose
/// inputs are the subtrees (kept sorted, so shapes are canonical).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Tree {
    Leaf,
    Node(Vec<Tree>),
}

fn edges(t: &Tree) -> usize {
    match t {
        Tree::Leaf => 1,
        Tree::Node(ch) => 1 + ch.iter().map(edges).sum::<usize>(),
    }
}

fn trees(e: usize) -> Vec<Tree> {
    let mut out = Vec::new();
    if e == 1 {
        out.push(Tree::Leaf);
    }
    if e >= 1 {
        for children in multisets(e - 1, None) {
            out.push(Tree::Node(children));
        }
    }
    out
}

/// Sorted lists of trees with `total` edges in all, each tree at least
/// `floor`.
fn multisets(total: usize, floor: Option<&Tree>) -> Vec<Vec<Tree>> {
    if total == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first_size in 1..=total {
        for t in trees(first_size) {
            if floor.is_some_and(|f| &t < f) {
                continue;
            }
            for mut rest in multisets(total - first_size, Some(&t)) {
                rest.insert(0, t.clone());
                out.push(rest);
            }
        }
    }
    out
}

fn build(forest: &[Tree]) -> Forest {
    fn walk(t: &Tree, edges: &mut Vec<String>, vertices: &mut Vec<(String, Vec<String>, String)>) -> String {
        let name = format!("e{}", edges.len());
        edges.push(name.clone());
        if let Tree::Node(ch) = t {
            let inputs = ch.iter().map(|c| walk(c, edges, vertices)).collect();
            vertices.push((format!("v{}", vertices.len()), inputs, name.clone()));
        }
        name
    }
    let (mut edges, mut vertices) = (Vec::new(), Vec::new());
    for t in forest {
        walk(t, &mut edges, &mut vertices);
    }
    Forest::new(edges, vertices).unwrap()
}

/// Sizes of the leaf sets of subtrees rooted at the root edge of `t`.
fn frontier_sizes(t: &Tree) -> Vec<usize> {
    let mut out = vec![1];
    if let Tree::Node(ch) = t {
        let mut sums = vec![0];
        for c in ch {
            let sizes = frontier_sizes(c);
            sums = sums.iter().flat_map(|s| sizes.iter().map(move |k| s + k)).collect();
        }
        out.extend(sums);
    }
    out
}

fn all_subtrees(t: &Tree) -> Vec<&Tree> {
    let mut out = vec![t];
    if let Tree::Node(ch) = t {
        out.extend(ch.iter().flat_map(all_subtrees));
    }
    out
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

#[test]
fn free_operads_on_small_forests() {
    let bound = 3;
    let mut forests = 0;
    for total in 1..=6 {
        for forest in multisets(total, None) {
            assert_eq!(forest.iter().map(edges).sum::<usize>(), total);
            let f = build(&forest);
            let o = free_operad(&f);
            check_operad_laws(&o, bound).unwrap_or_else(|e| panic!("{f}: {e}"));
            let expected: usize = forest
                .iter()
                .flat_map(all_subtrees)
                .flat_map(frontier_sizes)
                .filter(|&s| s <= bound)
                .map(factorial)
                .sum();
            assert_eq!(o.all_operations(bound).len(), expected, "{f}");
            forests += 1;
        }
    }
    // Forests with 1..=6 edges up to isomorphism: 2, 5, 13, 37, 108, 332,
    // from the Euler transform of the tree counts.
    assert_eq!(forests, 497);
}
