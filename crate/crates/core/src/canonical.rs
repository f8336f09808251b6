//! Canonical labeling by equitable refinement and individualization.
//!
//! The search tree is explored depth first. A leaf whose relabeled
//! adjacency equals that of the first or the best leaf yields an
//! automorphism; the search then jumps back to the common ancestor, and
//! children lying in the same orbit of the automorphisms found so far
//! (restricted to those fixing the current path) are skipped.

use std::cmp::Ordering;
use std::fmt;

use crate::graph::Graph;
use crate::graph6;

/// The graph6 string of the canonically relabeled graph.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalKey(String);

impl CanonicalKey {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Ordered partition of the vertex set; each cell is a bit set.
type Cells = Vec<u64>;

#[inline]
fn members(mut set: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (set != 0).then(|| {
            let v = set.trailing_zeros() as usize;
            set &= set - 1;
            v
        })
    })
}

/// Refines `cells` to an equitable partition, starting from the given splitters.
fn refine(g: &Graph, cells: &mut Cells, mut splitters: Vec<u64>) {
    let mut groups: Vec<(u32, u64)> = Vec::with_capacity(8);
    while let Some(w) = splitters.pop() {
        let mut i = 0;
        while i < cells.len() {
            let x = cells[i];
            if x.count_ones() == 1 {
                i += 1;
                continue;
            }
            groups.clear();
            for v in members(x) {
                let c = (g.neighbors(v) & w).count_ones();
                match groups.iter_mut().find(|(count, _)| *count == c) {
                    Some((_, set)) => *set |= 1 << v,
                    None => groups.push((c, 1 << v)),
                }
            }
            if groups.len() == 1 {
                i += 1;
                continue;
            }
            groups.sort_unstable_by_key(|&(count, _)| count);
            cells.splice(i..=i, groups.iter().map(|&(_, set)| set));
            splitters.extend(groups.iter().map(|&(_, set)| set));
            i += groups.len();
        }
    }
}

#[derive(Clone)]
struct Leaf {
    lab: Vec<usize>,
    code: Vec<u64>,
    path: Vec<usize>,
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    automorphisms: Vec<Vec<usize>>,
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

fn relabeled_code(g: &Graph, lab: &[usize]) -> Vec<u64> {
    let n = lab.len();
    let mut position = vec![0usize; n];
    for (k, &v) in lab.iter().enumerate() {
        position[v] = k;
    }
    lab.iter()
        .map(|&v| members(g.neighbors(v)).fold(0u64, |row, u| row | 1 << position[u]))
        .collect()
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

impl Search<'_> {
    /// Returns `Some(level)` to unwind the search up to the node at `level`.
    fn leaf(&mut self, cells: &Cells, path: &[usize]) -> Option<usize> {
        let lab: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let code = relabeled_code(self.g, &lab);
        let Some(first) = &self.first else {
            let leaf = Leaf { lab, code, path: path.to_vec() };
            self.best = Some(leaf.clone());
            self.first = Some(leaf);
            return None;
        };
        if code == first.code {
            let gamma = automorphism(&first.lab, &lab);
            let level = common_prefix(&first.path, path);
            self.automorphisms.push(gamma);
            return Some(level);
        }
        let best = self.best.as_ref().expect("best is set with first");
        match code.cmp(&best.code) {
            Ordering::Less => {
                self.best = Some(Leaf { lab, code, path: path.to_vec() });
                None
            }
            Ordering::Equal => {
                let gamma = automorphism(&best.lab, &lab);
                let level = common_prefix(&best.path, path);
                self.automorphisms.push(gamma);
                Some(level)
            }
            Ordering::Greater => None,
        }
    }

    fn explore(&mut self, cells: Cells, path: &mut Vec<usize>) -> Option<usize> {
        let n = self.g.order();
        if cells.len() == n {
            return self.leaf(&cells, path);
        }
        let level = path.len();
        let (target_index, target) = cells
            .iter()
            .copied()
            .enumerate()
            .filter(|&(_, c)| c.count_ones() > 1)
            .fold((usize::MAX, 0u64), |acc, (i, c)| {
                if c.count_ones() > acc.1.count_ones() {
                    (i, c)
                } else {
                    acc
                }
            });

        let mut parent: Vec<usize> = (0..n).collect();
        let mut used = 0;
        let mut tried: Vec<usize> = Vec::new();
        for v in members(target) {
            if used != self.automorphisms.len() {
                for gamma in &self.automorphisms[used..] {
                    if path.iter().all(|&p| gamma[p] == p) {
                        for (a, &b) in gamma.iter().enumerate() {
                            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                            if ra != rb {
                                parent[ra.max(rb)] = ra.min(rb);
                            }
                        }
                    }
                }
                used = self.automorphisms.len();
            }
            let root = find(&mut parent, v);
            if tried.iter().any(|&w| find(&mut parent, w) == root) {
                continue;
            }
            tried.push(v);

            let mut child = cells.clone();
            child.splice(target_index..=target_index, [1u64 << v, target & !(1u64 << v)]);
            refine(self.g, &mut child, vec![1u64 << v]);
            path.push(v);
            let jump = self.explore(child, path);
            path.pop();
            if let Some(t) = jump {
                if t < level {
                    return Some(t);
                }
            }
        }
        None
    }
}

/// gamma[from[k]] = to[k].
fn automorphism(from: &[usize], to: &[usize]) -> Vec<usize> {
    let mut gamma = vec![0; from.len()];
    for (&a, &b) in from.iter().zip(to) {
        gamma[a] = b;
    }
    gamma
}

/// `lab[k]` is the original vertex placed at canonical position `k`.
pub fn canonical_labeling(g: &Graph) -> Vec<usize> {
    let n = g.order();
    if n == 0 {
        return Vec::new();
    }
    let mut cells: Cells = vec![crate::graph::low_mask(n)];
    refine(g, &mut cells, vec![crate::graph::low_mask(n)]);
    let mut search = Search { g, first: None, best: None, automorphisms: Vec::new() };
    search.explore(cells, &mut Vec::new());
    search.best.expect("search reaches at least one leaf").lab
}

/// The canonical representative of the isomorphism class of `g`.
pub fn canonical_graph(g: &Graph) -> Graph {
    let lab = canonical_labeling(g);
    relabel_by_lab(g, &lab)
}

/// Relabels so that canonical position `k` holds `lab[k]`.
pub(crate) fn relabel_by_lab(g: &Graph, lab: &[usize]) -> Graph {
    let mut perm = vec![0; lab.len()];
    for (k, &v) in lab.iter().enumerate() {
        perm[v] = k;
    }
    g.relabel(&perm)
}

pub fn canonical_form(g: &Graph) -> CanonicalKey {
    CanonicalKey(graph6::encode(&canonical_graph(g)))
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.order() == h.order()
        && g.size() == h.size()
        && g.degree_sequence() == h.degree_sequence()
        && canonical_graph(g) == canonical_graph(h)
}

pub fn is_self_complementary(g: &Graph) -> bool {
    let n = g.order();
    2 * g.size() == n * n.saturating_sub(1) / 2 && are_isomorphic(g, &g.complement())
}
