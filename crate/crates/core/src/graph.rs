//! Simple undirected graphs over players `0..n`.

use std::collections::VecDeque;

use crate::error::{Error, Result, Violation};

/// Adjacency-list graph. Neighbor lists are kept sorted.
///
/// Graphs built with [`Graph::from_edges`] are always simple and symmetric.
/// [`Graph::from_adjacency`] stores lists as given so that [`Graph::violations`]
/// can report what is wrong with them.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
        }
    }

    /// Builds a simple graph from 0-indexed edges. Duplicate edges (in either
    /// orientation) collapse to one; self-loops and out-of-range endpoints are
    /// rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        for (a, b) in edges {
            if a >= n || b >= n {
                let (player, neighbor) = if a >= n { (b, a) } else { (a, b) };
                return Err(Error::Invalid(vec![Violation::NeighborOutOfRange {
                    player,
                    neighbor,
                }]));
            }
            if a == b {
                return Err(Error::Invalid(vec![Violation::SelfLoop { player: a }]));
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adjacency })
    }

    /// Wraps raw adjacency lists without checking them. Lists are sorted but
    /// duplicates and asymmetries are preserved.
    pub fn from_adjacency(mut adjacency: Vec<Vec<usize>>) -> Self {
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Graph { adjacency }
    }

    pub fn complete(n: usize) -> Self {
        let adjacency = (0..n)
            .map(|i| (0..n).filter(|&j| j != i).collect())
            .collect();
        Graph { adjacency }
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    /// Edges as `(a, b)` with `a < b`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(a, list)| list.iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
    }

    pub fn violations(&self) -> Vec<Violation> {
        let n = self.n();
        let mut out = Vec::new();
        for (a, list) in self.adjacency.iter().enumerate() {
            for (pos, &b) in list.iter().enumerate() {
                if b >= n {
                    out.push(Violation::NeighborOutOfRange {
                        player: a,
                        neighbor: b,
                    });
                    continue;
                }
                if b == a {
                    out.push(Violation::SelfLoop { player: a });
                    continue;
                }
                if pos > 0 && list[pos - 1] == b {
                    if a < b {
                        out.push(Violation::DuplicateEdge { a, b });
                    }
                    continue;
                }
                if !self.adjacency[b].contains(&a) {
                    out.push(Violation::Asymmetric { a, b });
                }
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.adjacency.iter().all(|list| list.len() + 1 == n)
    }

    /// Connected component label per node, labels assigned in order of each
    /// component's smallest node.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let n = self.n();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = count;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adjacency[u] {
                    if label[v] == usize::MAX {
                        label[v] = count;
                        queue.push_back(v);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.component_labels().1 == 1
    }

    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.component_labels().1 == self.n()
    }

    pub fn is_tree(&self) -> bool {
        self.n() > 0 && self.edge_count() + 1 == self.n() && self.is_connected()
    }

    /// Subgraph induced by `nodes`, relabeled `0..nodes.len()` in the given order.
    pub fn induced(&self, nodes: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (new, &old) in nodes.iter().enumerate() {
            index[old] = new;
        }
        let adjacency = nodes
            .iter()
            .map(|&old| {
                let mut list: Vec<usize> = self.adjacency[old]
                    .iter()
                    .filter_map(|&v| (index[v] != usize::MAX).then_some(index[v]))
                    .collect();
                list.sort_unstable();
                list
            })
            .collect();
        Graph { adjacency }
    }

    /// Nodes of the largest connected component, ascending. Ties go to the
    /// component containing the smallest node.
    pub fn largest_component(&self) -> Vec<usize> {
        let (labels, count) = self.component_labels();
        let mut sizes = vec![0usize; count];
        for &l in &labels {
            sizes[l] += 1;
        }
        let best = (0..count).fold(0, |best, l| if sizes[l] > sizes[best] { l } else { best });
        (0..self.n()).filter(|&v| labels[v] == best).collect()
    }
}
