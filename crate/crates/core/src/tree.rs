//! Exact equilibrium computation on trees.
//!
//! The downstream pass walks the tree leaves-first. Each node records, for
//! each action of its parent, which of its own actions can be part of an
//! equilibrium of its subtree, together with one witness count of investing
//! children. The upstream pass walks root-first and materializes a profile
//! from those witnesses.

use crate::error::{Error, Result};
use crate::game::{ActionProfile, BnpgInstance};
use crate::graph::Graph;
use crate::report::{Method, SolveReport};

/// Rooted view of a tree (or of every tree in a forest).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    /// One root per component: its smallest node.
    pub roots: Vec<usize>,
    pub parent: Vec<Option<usize>>,
    /// Children in ascending index order.
    pub children: Vec<Vec<usize>>,
    /// Depth-first preorder; parents precede children.
    pub order: Vec<usize>,
}

impl TreeDecomposition {
    pub fn root(&self) -> usize {
        self.roots[0]
    }
}

/// Roots each component at its smallest node and orders nodes depth-first.
/// Disconnected input is rejected unless `allow_forest` is set.
pub fn root_and_order(graph: &Graph, allow_forest: bool) -> Result<TreeDecomposition> {
    let n = graph.n();
    if n == 0 {
        return Err(Error::NotTree("empty graph".into()));
    }
    let mut parent = vec![None; n];
    let mut children = vec![Vec::new(); n];
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut roots = Vec::new();
    let mut stack = Vec::new();
    for start in 0..n {
        if visited[start] {
            continue;
        }
        if !roots.is_empty() && !allow_forest {
            return Err(Error::NotTree("graph is disconnected".into()));
        }
        roots.push(start);
        visited[start] = true;
        stack.push(start);
        while let Some(u) = stack.pop() {
            order.push(u);
            for &v in graph.neighbors(u) {
                if Some(v) == parent[u] {
                    continue;
                }
                if visited[v] {
                    return Err(Error::NotTree(format!(
                        "cycle through players {} and {}",
                        u + 1,
                        v + 1
                    )));
                }
                visited[v] = true;
                parent[v] = Some(u);
                children[u].push(v);
            }
            // push in reverse so the smallest child is visited first
            stack.extend(children[u].iter().rev());
        }
    }
    Ok(TreeDecomposition {
        roots,
        parent,
        children,
        order,
    })
}

/// Conditional best-response table of one node.
///
/// `entries[parent_action][own_action]` is the smallest count `t` of investing
/// children that lets `own_action` be a best response given the parent's
/// action, or `None` if no feasible count works. For a root the parent action
/// is irrelevant and both rows are identical.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ConditionalBestResponseTable {
    pub node: usize,
    pub entries: [[Option<usize>; 2]; 2],
    /// Per own action: children forced to invest, children forced not to
    /// invest, and whether some child has no consistent action at all.
    pub forced_invest: [usize; 2],
    pub forced_idle: [usize; 2],
    pub blocked: [bool; 2],
}

impl ConditionalBestResponseTable {
    /// Own actions available when the parent plays `parent_action`.
    pub fn options(&self, parent_action: bool) -> [bool; 2] {
        let row = &self.entries[parent_action as usize];
        [row[0].is_some(), row[1].is_some()]
    }

    pub fn is_empty(&self) -> bool {
        self.entries.iter().flatten().all(Option::is_none)
    }
}

#[derive(Debug, Clone)]
pub struct DownstreamTables {
    pub decomposition: TreeDecomposition,
    pub tables: Vec<ConditionalBestResponseTable>,
}

/// Builds every node's table leaves-first. Returns `None` as soon as some
/// component admits no equilibrium.
pub fn downstream_pass(
    instance: &BnpgInstance,
    decomposition: &TreeDecomposition,
) -> Option<Vec<ConditionalBestResponseTable>> {
    let n = instance.n();
    let mut tables = vec![ConditionalBestResponseTable::default(); n];
    for &node in decomposition.order.iter().rev() {
        let children = &decomposition.children[node];
        let mut table = ConditionalBestResponseTable {
            node,
            ..Default::default()
        };
        for own in [false, true] {
            let a = own as usize;
            for &child in children {
                match tables[child].options(own) {
                    [false, true] => table.forced_invest[a] += 1,
                    [true, false] => table.forced_idle[a] += 1,
                    [false, false] => table.blocked[a] = true,
                    [true, true] => {}
                }
            }
        }
        let is_root = decomposition.parent[node].is_none();
        let parent_actions: &[bool] = if is_root { &[false] } else { &[false, true] };
        for &parent_action in parent_actions {
            for own in [false, true] {
                let a = own as usize;
                if table.blocked[a] {
                    continue;
                }
                let low = table.forced_invest[a];
                let high = children.len() - table.forced_idle[a];
                table.entries[parent_action as usize][a] = (low..=high)
                    .find(|&t| instance.action_is_best_response(node, own, t + parent_action as usize));
            }
        }
        if is_root {
            table.entries[1] = table.entries[0];
        }
        if table.is_empty() {
            return None;
        }
        tables[node] = table;
    }
    Some(tables)
}

/// Materializes an equilibrium from the tables, roots first. Roots prefer not
/// investing when both actions work; indifferent children are assigned in
/// ascending index order.
pub fn upstream_pass(
    instance: &BnpgInstance,
    decomposition: &TreeDecomposition,
    tables: &[ConditionalBestResponseTable],
) -> Result<ActionProfile> {
    let n = instance.n();
    let mut x = ActionProfile::zeros(n);
    let mut witness = vec![0usize; n];
    for &root in &decomposition.roots {
        let row = tables[root].entries[0];
        let (own, t) = match row {
            [Some(t), _] => (false, t),
            [None, Some(t)] => (true, t),
            [None, None] => return Err(Error::TreeInconsistency(root)),
        };
        x.set(root, own);
        witness[root] = t;
    }
    for &node in &decomposition.order {
        let own = x.get(node);
        let mut free = witness[node]
            .checked_sub(tables[node].forced_invest[own as usize])
            .ok_or(Error::TreeInconsistency(node))?;
        for &child in &decomposition.children[node] {
            let row = tables[child].entries[own as usize];
            let child_action = match tables[child].options(own) {
                [false, true] => true,
                [true, false] => false,
                [true, true] => {
                    if free > 0 {
                        free -= 1;
                        true
                    } else {
                        false
                    }
                }
                [false, false] => return Err(Error::TreeInconsistency(child)),
            };
            x.set(child, child_action);
            witness[child] = row[child_action as usize].ok_or(Error::TreeInconsistency(child))?;
        }
        if free > 0 {
            return Err(Error::TreeInconsistency(node));
        }
    }
    Ok(x)
}

/// Full two-pass solve. Forests are accepted only with `allow_forest`.
pub fn solve_tree_with(instance: &BnpgInstance, allow_forest: bool) -> Result<SolveReport> {
    let decomposition = root_and_order(instance.graph(), allow_forest)?;
    match downstream_pass(instance, &decomposition) {
        None => Ok(SolveReport::no_psne(Method::Tree)),
        Some(tables) => {
            let x = upstream_pass(instance, &decomposition, &tables)?;
            Ok(SolveReport::psne(x, Method::Tree))
        }
    }
}

pub fn solve_tree(instance: &BnpgInstance) -> Result<SolveReport> {
    solve_tree_with(instance, false)
}
