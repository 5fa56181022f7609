//! Immutable undirected simple graph with per-node role labels.
//!
//! Nodes are dense `u32` ids assigned in first-seen order; the original string
//! labels and the side(s) each label was observed on live in side tables. The
//! adjacency is stored in compressed sparse row form with every neighbor list
//! sorted ascending, which is what the intersection-based triangle kernels and
//! the all-sources BFS rely on.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

/// Dense node identifier in `0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[repr(transparent)]
#[serde(transparent)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Which column(s) of the two-mode data a label was observed in.
///
/// `Both` marks a label seen as a startup in at least one pair and as an
/// investor in at least one pair, i.e. an observed violation of strict
/// bipartiteness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeRole {
    Startup,
    Investor,
    Both,
}

impl NodeRole {
    fn from_sides(startup_side: bool, investor_side: bool) -> Self {
        match (startup_side, investor_side) {
            (true, true) => NodeRole::Both,
            (false, true) => NodeRole::Investor,
            // isolated nodes only occur in generated graphs; they sit on the left side
            _ => NodeRole::Startup,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            NodeRole::Startup => "startup",
            NodeRole::Investor => "investor",
            NodeRole::Both => "both",
        }
    }

    /// Counted on the startup side of a bipartite density denominator.
    pub fn on_startup_side(self) -> bool {
        matches!(self, NodeRole::Startup | NodeRole::Both)
    }

    pub fn on_investor_side(self) -> bool {
        matches!(self, NodeRole::Investor | NodeRole::Both)
    }
}

impl fmt::Display for NodeRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
    labels: Vec<String>,
    roles: Vec<NodeRole>,
    /// Distinct oriented (left, right) pairs in first-seen order.
    pairs: Vec<(NodeId, NodeId)>,
    case_fold: bool,
}

/// Construction options for [`Graph`].
#[derive(Debug, Clone, Copy, Default)]
pub struct GraphBuilder {
    case_fold: bool,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Match labels case-insensitively. The first spelling seen is kept as the label.
    pub fn case_fold(mut self, yes: bool) -> Self {
        self.case_fold = yes;
        self
    }

    /// Builds a graph from (left, right) label pairs.
    ///
    /// Labels are trimmed; duplicate pairs (in either orientation) collapse into
    /// one edge. A pair whose two labels resolve to the same node is rejected.
    pub fn build<I, L, R>(self, pairs: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (L, R)>,
        L: AsRef<str>,
        R: AsRef<str>,
    {
        let mut index: HashMap<String, NodeId> = HashMap::new();
        let mut labels: Vec<String> = Vec::new();
        let mut startup_side: Vec<bool> = Vec::new();
        let mut investor_side: Vec<bool> = Vec::new();
        let mut seen_pairs: HashSet<(NodeId, NodeId)> = HashSet::new();
        let mut oriented: Vec<(NodeId, NodeId)> = Vec::new();

        let mut intern = |raw: &str| -> Result<NodeId, GraphError> {
            let label = raw.trim();
            if label.is_empty() {
                return Err(GraphError::EmptyLabel);
            }
            let key = if self.case_fold {
                label.to_lowercase()
            } else {
                label.to_owned()
            };
            if let Some(&id) = index.get(&key) {
                return Ok(id);
            }
            let id = NodeId(u32::try_from(labels.len()).map_err(|_| GraphError::TooManyNodes(labels.len()))?);
            index.insert(key, id);
            labels.push(label.to_owned());
            Ok(id)
        };

        for (left, right) in pairs {
            let u = intern(left.as_ref())?;
            let v = intern(right.as_ref())?;
            if u == v {
                return Err(GraphError::SelfLoop(left.as_ref().trim().to_owned()));
            }
            let n = u.index().max(v.index()) + 1;
            if startup_side.len() < n {
                startup_side.resize(n, false);
                investor_side.resize(n, false);
            }
            startup_side[u.index()] = true;
            investor_side[v.index()] = true;
            if seen_pairs.insert((u, v)) {
                oriented.push((u, v));
            }
        }

        let roles = startup_side
            .iter()
            .zip(&investor_side)
            .map(|(&s, &i)| NodeRole::from_sides(s, i))
            .collect();
        Ok(Graph::assemble(labels, roles, oriented, self.case_fold))
    }
}

/// Builds a graph from label pairs with default options (exact label matching).
pub fn build_graph<I, L, R>(pairs: I) -> Result<Graph, GraphError>
where
    I: IntoIterator<Item = (L, R)>,
    L: AsRef<str>,
    R: AsRef<str>,
{
    GraphBuilder::new().build(pairs)
}

impl Graph {
    /// Builds a graph on exactly `n` nodes labelled `v0..v{n-1}` from index pairs.
    ///
    /// Each edge is oriented as (smaller, larger) for role assignment, so a
    /// generated graph re-ingested from its exported edge list gets the same roles.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        if u32::try_from(n).is_err() {
            return Err(GraphError::TooManyNodes(n));
        }
        let mut startup_side = vec![false; n];
        let mut investor_side = vec![false; n];
        let mut seen = HashSet::with_capacity(edges.len());
        let mut oriented = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::OutOfRange { index: x, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(format!("v{a}")));
            }
            let (u, v) = (a.min(b), a.max(b));
            startup_side[u] = true;
            investor_side[v] = true;
            let pair = (NodeId(u as u32), NodeId(v as u32));
            if seen.insert(pair) {
                oriented.push(pair);
            }
        }
        let labels = (0..n).map(|i| format!("v{i}")).collect();
        let roles = startup_side
            .iter()
            .zip(&investor_side)
            .map(|(&s, &i)| NodeRole::from_sides(s, i))
            .collect();
        Ok(Graph::assemble(labels, roles, oriented, false))
    }

    fn assemble(labels: Vec<String>, roles: Vec<NodeRole>, pairs: Vec<(NodeId, NodeId)>, case_fold: bool) -> Graph {
        let n = labels.len();
        let mut edges: Vec<(NodeId, NodeId)> = pairs
            .iter()
            .map(|&(u, v)| if u < v { (u, v) } else { (v, u) })
            .collect();
        edges.sort_unstable();
        edges.dedup();

        let mut degree = vec![0usize; n];
        for &(u, v) in &edges {
            degree[u.index()] += 1;
            degree[v.index()] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut targets = vec![NodeId(0); offsets[n]];
        for &(u, v) in &edges {
            targets[fill[u.index()]] = v;
            fill[u.index()] += 1;
            targets[fill[v.index()]] = u;
            fill[v.index()] += 1;
        }
        for i in 0..n {
            targets[offsets[i]..offsets[i + 1]].sort_unstable();
        }

        Graph {
            offsets,
            targets,
            labels,
            roles,
            pairs,
            case_fold,
        }
    }

    /// Number of nodes.
    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = NodeId> + '_ {
        (0..self.node_count() as u32).map(NodeId)
    }

    fn check(&self, v: NodeId) -> Result<usize, GraphError> {
        let i = v.index();
        if i < self.node_count() {
            Ok(i)
        } else {
            Err(GraphError::OutOfRange {
                index: i,
                n: self.node_count(),
            })
        }
    }

    pub fn degree(&self, v: NodeId) -> Result<usize, GraphError> {
        let i = self.check(v)?;
        Ok(self.offsets[i + 1] - self.offsets[i])
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: NodeId) -> Result<&[NodeId], GraphError> {
        let i = self.check(v)?;
        Ok(self.adj(i))
    }

    #[inline]
    pub(crate) fn adj(&self, i: usize) -> &[NodeId] {
        &self.targets[self.offsets[i]..self.offsets[i + 1]]
    }

    #[inline]
    pub(crate) fn deg(&self, i: usize) -> usize {
        self.offsets[i + 1] - self.offsets[i]
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.offsets.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn label(&self, v: NodeId) -> Result<&str, GraphError> {
        let i = self.check(v)?;
        Ok(&self.labels[i])
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn role(&self, v: NodeId) -> Result<NodeRole, GraphError> {
        let i = self.check(v)?;
        Ok(self.roles[i])
    }

    pub fn roles(&self) -> &[NodeRole] {
        &self.roles
    }

    /// Looks a node up by label, applying the same trimming and case folding
    /// used at construction.
    pub fn find(&self, label: &str) -> Option<NodeId> {
        let label = label.trim();
        let pos = if self.case_fold {
            let key = label.to_lowercase();
            self.labels.iter().position(|l| l.to_lowercase() == key)
        } else {
            self.labels.iter().position(|l| l == label)
        };
        pos.map(|i| NodeId(i as u32))
    }

    /// Undirected edges as `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.nodes().flat_map(move |u| {
            self.adj(u.index())
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Distinct oriented (left, right) pairs in the order they were first seen.
    /// Exporting these reproduces both the node ids and the roles on re-ingest.
    pub fn oriented_pairs(&self) -> &[(NodeId, NodeId)] {
        &self.pairs
    }

    /// Copy of the graph restricted to nodes with `keep[i] == true`.
    ///
    /// Surviving nodes keep their relative order, labels and roles.
    pub fn induced_subgraph(&self, keep: &[bool]) -> Graph {
        assert_eq!(keep.len(), self.node_count(), "mask length must equal node count");
        let mut remap = vec![u32::MAX; self.node_count()];
        let mut labels = Vec::new();
        let mut roles = Vec::new();
        for (i, _) in keep.iter().enumerate().filter(|(_, &k)| k) {
            remap[i] = labels.len() as u32;
            labels.push(self.labels[i].clone());
            roles.push(self.roles[i]);
        }
        let pairs = self
            .pairs
            .iter()
            .filter(|(u, v)| keep[u.index()] && keep[v.index()])
            .map(|(u, v)| (NodeId(remap[u.index()]), NodeId(remap[v.index()])))
            .collect();
        Graph::assemble(labels, roles, pairs, self.case_fold)
    }

    /// Partition by reachability. Component 0 is the largest; ties are broken
    /// by the smallest node id contained.
    pub fn connected_components(&self) -> ComponentPartition {
        let n = self.node_count();
        let mut raw = vec![usize::MAX; n];
        let mut sizes = Vec::new();
        let mut stack = Vec::new();
        // roots are visited in ascending order, so raw component k's smallest node is its root
        for root in 0..n {
            if raw[root] != usize::MAX {
                continue;
            }
            let c = sizes.len();
            raw[root] = c;
            stack.push(root);
            let mut size = 0;
            while let Some(u) = stack.pop() {
                size += 1;
                for &w in self.adj(u) {
                    if raw[w.index()] == usize::MAX {
                        raw[w.index()] = c;
                        stack.push(w.index());
                    }
                }
            }
            sizes.push(size);
        }
        let mut order: Vec<usize> = (0..sizes.len()).collect();
        // raw ids already ascend with smallest member, so a stable sort by size suffices
        order.sort_by(|&a, &b| sizes[b].cmp(&sizes[a]));
        let mut rank = vec![0; sizes.len()];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new;
        }
        ComponentPartition {
            component_id: raw.into_iter().map(|c| rank[c]).collect(),
            component_sizes: order.iter().map(|&c| sizes[c]).collect(),
        }
    }

    /// True when no node has role `Both` and every edge joins a startup to an investor.
    pub fn is_strictly_bipartite(&self) -> bool {
        if self.roles.contains(&NodeRole::Both) {
            return false;
        }
        self.edges().all(|(u, v)| {
            let (a, b) = (self.roles[u.index()], self.roles[v.index()]);
            a != b
        })
    }

    /// Checks the structural invariants: symmetry, sorted simple neighbor
    /// lists and the handshake identity.
    pub fn check_invariants(&self) -> bool {
        let n = self.node_count();
        if self.offsets.len() != n + 1 || self.roles.len() != n || !self.targets.len().is_multiple_of(2) {
            return false;
        }
        (0..n).all(|u| {
            let adj = self.adj(u);
            adj.windows(2).all(|w| w[0] < w[1])
                && adj.iter().all(|&v| {
                    v.index() < n && v.index() != u && self.adj(v.index()).binary_search(&NodeId(u as u32)).is_ok()
                })
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentPartition {
    pub component_id: Vec<usize>,
    /// Sizes indexed by component id, so descending.
    pub component_sizes: Vec<usize>,
}

impl ComponentPartition {
    pub fn count(&self) -> usize {
        self.component_sizes.len()
    }

    pub fn members(&self, component: usize) -> Vec<NodeId> {
        self.component_id
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == component)
            .map(|(i, _)| NodeId(i as u32))
            .collect()
    }

    /// Membership mask of component `component`.
    pub fn mask(&self, component: usize) -> Vec<bool> {
        self.component_id.iter().map(|&c| c == component).collect()
    }
}
