use super::{Alphabet, Word};
use crate::error::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};

/// Higher-block (de Bruijn style) graph on a set of k-words.
///
/// Vertices are admissible words of length k in sorted order; there is an
/// edge `u -> v` when `u[1..] == v[..k-1]` and, if a (k+1)-window set was
/// supplied, the fused word `u . v[k-1]` belongs to it. Paths of the graph
/// spell admissible words; at resolution `2^-(k-1)` they are exactly the
/// chains of the dyadic metric.
#[derive(Debug, Clone)]
pub struct BlockGraph {
    k: usize,
    vertices: Vec<Word>,
    adj: Vec<Vec<usize>>,
    radj: Vec<Vec<usize>>,
    edge_count: usize,
}

/// Build the block graph over `windows` (k-words). When `fuse` is given it
/// must be the (k+1)-window set of the same source; edges are validated
/// against it and mutual factorial consistency is checked. Without `fuse`,
/// edges are by overlap alone.
pub fn block_graph(
    windows: &BTreeSet<Word>,
    k: usize,
    fuse: Option<&BTreeSet<Word>>,
) -> Result<BlockGraph> {
    if k == 0 {
        return Err(Error::Invalid("block graphs need k >= 1".into()));
    }
    if windows.iter().any(|w| w.len() != k) {
        return Err(Error::Invalid(format!(
            "vertex words must all have length {k}"
        )));
    }
    if let Some(f) = fuse {
        if f.iter().any(|w| w.len() != k + 1) {
            return Err(Error::Invalid(format!(
                "fuse words must have length {}",
                k + 1
            )));
        }
        // factorial consistency both ways: the k-factors of the fuse set are
        // exactly the vertex set
        let mut derived: BTreeSet<Word> = BTreeSet::new();
        for w in f {
            derived.extend(w.factors(k));
        }
        if &derived != windows {
            return Err(Error::InconsistentWindows {
                len: k + 1,
                shorter: k,
            });
        }
    }
    let vertices: Vec<Word> = windows.iter().cloned().collect();
    let mut adj = vec![Vec::new(); vertices.len()];
    let mut radj = vec![Vec::new(); vertices.len()];
    let mut edge_count = 0;
    for (i, u) in vertices.iter().enumerate() {
        for (j, v) in vertices.iter().enumerate() {
            if k > 0 && u.symbols()[1..] != v.symbols()[..k - 1] {
                continue;
            }
            if let Some(f) = fuse {
                let mut fused = u.clone();
                fused.push(v.symbols()[k - 1]);
                if !f.contains(&fused) {
                    continue;
                }
            }
            adj[i].push(j);
            radj[j].push(i);
            edge_count += 1;
        }
    }
    Ok(BlockGraph {
        k,
        vertices,
        adj,
        radj,
        edge_count,
    })
}

impl BlockGraph {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> &[Word] {
        &self.vertices
    }

    pub fn vertex_index(&self, w: &Word) -> Option<usize> {
        self.vertices.binary_search(w).ok()
    }

    pub fn successors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn predecessors(&self, i: usize) -> &[usize] {
        &self.radj[i]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(i, out)| out.iter().map(move |&j| (i, j)))
    }

    /// Strongly connected components, each sorted, listed by smallest member.
    pub fn sccs(&self) -> Vec<Vec<usize>> {
        tarjan(&self.adj)
    }

    /// Components that contain at least one edge (a cycle), as sorted vertex
    /// lists.
    pub fn cyclic_sccs(&self) -> Vec<Vec<usize>> {
        self.sccs()
            .into_iter()
            .filter(|c| c.len() > 1 || self.adj[c[0]].contains(&c[0]))
            .collect()
    }

    /// One component containing every vertex, and at least one edge.
    pub fn strongly_connected_with_edge(&self) -> bool {
        if self.vertices.is_empty() {
            return false;
        }
        let sccs = self.sccs();
        sccs.len() == 1 && self.edge_count >= 1
    }

    /// BFS shortest path (fewest edges), ties broken toward smaller vertex
    /// indices. `None` when unreachable.
    pub fn shortest_path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let n = self.vertices.len();
        let mut prev = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        let mut queue = std::collections::VecDeque::new();
        seen[from] = true;
        queue.push_back(from);
        'bfs: while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    prev[w] = v;
                    if w == to {
                        break 'bfs;
                    }
                    queue.push_back(w);
                }
            }
        }
        if to == from {
            return Some(vec![from]);
        }
        if !seen[to] {
            return None;
        }
        let mut path = vec![to];
        let mut v = to;
        while v != from {
            v = prev[v];
            path.push(v);
        }
        path.reverse();
        Some(path)
    }

    /// Follow the smallest successor from `v` until a vertex repeats; returns
    /// the approach path (possibly empty) and the cycle. Deterministic
    /// completion rule for shadow points.
    pub fn greedy_cycle(&self, v: usize, forward: bool) -> (Vec<usize>, Vec<usize>) {
        let step = |x: usize| -> usize {
            let nbrs = if forward { &self.adj[x] } else { &self.radj[x] };
            *nbrs.iter().min().expect("trimmed graph has no dead vertex")
        };
        let mut seen_at: BTreeMap<usize, usize> = BTreeMap::new();
        let mut path = vec![v];
        seen_at.insert(v, 0);
        loop {
            let next = step(*path.last().unwrap());
            if let Some(&at) = seen_at.get(&next) {
                let cycle = path[at..].to_vec();
                let approach = path[..at].to_vec();
                return (approach, cycle);
            }
            seen_at.insert(next, path.len());
            path.push(next);
        }
    }

    /// DOT rendering with stable ordering.
    pub fn to_dot(&self, alphabet: &Alphabet, name: &str) -> String {
        let mut out = String::new();
        out.push_str(&format!("digraph \"{name}\" {{\n"));
        for (i, w) in self.vertices.iter().enumerate() {
            out.push_str(&format!("  n{} [label=\"{}\"];\n", i, alphabet.fmt_word(w)));
        }
        for (i, j) in self.edges() {
            out.push_str(&format!("  n{i} -> n{j};\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// Iterative Tarjan over a plain adjacency list; components are sorted and
/// listed by smallest member, deterministically.
pub(crate) fn tarjan(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut next_index = 0usize;
    let mut comps: Vec<Vec<usize>> = Vec::new();

    enum Frame {
        Enter(usize),
        Resume(usize, usize),
    }
    for start in 0..n {
        if index[start] != usize::MAX {
            continue;
        }
        let mut call = vec![Frame::Enter(start)];
        while let Some(frame) = call.pop() {
            match frame {
                Frame::Enter(v) => {
                    index[v] = next_index;
                    low[v] = next_index;
                    next_index += 1;
                    stack.push(v);
                    on_stack[v] = true;
                    call.push(Frame::Resume(v, 0));
                }
                Frame::Resume(v, mut ei) => {
                    let mut descended = false;
                    while ei < adj[v].len() {
                        let w = adj[v][ei];
                        ei += 1;
                        if index[w] == usize::MAX {
                            call.push(Frame::Resume(v, ei));
                            call.push(Frame::Enter(w));
                            descended = true;
                            break;
                        } else if on_stack[w] {
                            low[v] = low[v].min(index[w]);
                        }
                    }
                    if descended {
                        continue;
                    }
                    if low[v] == index[v] {
                        let mut comp = Vec::new();
                        loop {
                            let w = stack.pop().unwrap();
                            on_stack[w] = false;
                            comp.push(w);
                            if w == v {
                                break;
                            }
                        }
                        comp.sort_unstable();
                        comps.push(comp);
                    }
                    if let Some(Frame::Resume(p, _)) = call.last() {
                        let p = *p;
                        low[p] = low[p].min(low[v]);
                    }
                }
            }
        }
    }
    comps.sort_by_key(|c| c[0]);
    comps
}
