//! Cotrees of trivially perfect graphs: the rooted union/join decomposition
//! that drives the leaf-root construction. For twin-free input every join
//! node has exactly two children, one leaf (the component's universal vertex)
//! and one union node.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{self, Graph, Obstruction};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CotreeKind {
    /// A single graph vertex.
    Leaf(usize),
    /// Disjoint union of the children.
    Union,
    /// Full join of the children.
    Join,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CotreeError {
    #[error("graph is not trivially perfect ({0})")]
    NotTriviallyPerfect(Obstruction),
    #[error("graph has true twins (vertices {0} and {1})")]
    HasTrueTwins(usize, usize),
    #[error("graph has no vertices")]
    Empty,
}

#[derive(Debug, Clone, Default)]
pub struct Cotree {
    kinds: Vec<CotreeKind>,
    children: Vec<Vec<usize>>,
    parent: Vec<Option<usize>>,
    root: usize,
}

impl Cotree {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, kind: CotreeKind, children: Vec<usize>) -> usize {
        let id = self.kinds.len();
        self.kinds.push(kind);
        for &c in &children {
            self.parent[c] = Some(id);
        }
        self.children.push(children);
        self.parent.push(None);
        id
    }

    pub fn set_root(&mut self, id: usize) {
        self.root = id;
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn kind(&self, id: usize) -> CotreeKind {
        self.kinds[id]
    }

    pub fn children(&self, id: usize) -> &[usize] {
        &self.children[id]
    }

    pub fn parent(&self, id: usize) -> Option<usize> {
        self.parent[id]
    }

    pub fn node_count(&self) -> usize {
        self.kinds.len()
    }

    pub fn leaf_count(&self) -> usize {
        self.kinds
            .iter()
            .filter(|k| matches!(k, CotreeKind::Leaf(_)))
            .count()
    }

    /// Nodes in pre-order from the root, children in stored order.
    pub fn preorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.kinds.len());
        if self.kinds.is_empty() {
            return out;
        }
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            out.push(v);
            for &c in self.children[v].iter().rev() {
                stack.push(c);
            }
        }
        out
    }

    /// Nodes in post-order, children in stored order before their parent.
    pub fn postorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.kinds.len());
        if self.kinds.is_empty() {
            return out;
        }
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.children[v].iter().copied());
        }
        out.reverse();
        out
    }

    /// One node per line, `id kind parent [vertex]`, in pre-order.
    pub fn to_text(&self) -> String {
        let order = self.preorder();
        let mut rank = vec![0usize; self.kinds.len()];
        for (i, &v) in order.iter().enumerate() {
            rank[v] = i;
        }
        let mut s = String::new();
        for &v in &order {
            let parent = match self.parent[v] {
                Some(p) => rank[p].to_string(),
                None => "-".to_string(),
            };
            match self.kinds[v] {
                CotreeKind::Leaf(g) => {
                    let _ = writeln!(s, "{} leaf {} {}", rank[v], parent, g);
                }
                CotreeKind::Union => {
                    let _ = writeln!(s, "{} union {}", rank[v], parent);
                }
                CotreeKind::Join => {
                    let _ = writeln!(s, "{} join {}", rank[v], parent);
                }
            }
        }
        s
    }

    fn min_vertex_below(&self, id: usize) -> usize {
        let mut best = usize::MAX;
        let mut stack = vec![id];
        while let Some(v) = stack.pop() {
            match self.kinds[v] {
                CotreeKind::Leaf(g) => best = best.min(g),
                _ => stack.extend(self.children[v].iter().copied()),
            }
        }
        best
    }
}

/// Builds the cotree of a twin-free trivially perfect graph. Children are
/// ordered by the smallest graph vertex below them, so output is canonical.
pub fn build_cotree(g: &Graph) -> Result<Cotree, CotreeError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(CotreeError::Empty);
    }
    let forest = graph::peel_forest(g).ok_or_else(|| {
        CotreeError::NotTriviallyPerfect(
            graph::find_obstruction(g).expect("rejected graph has an obstruction"),
        )
    })?;

    // Twin-free input makes one-child forest vertices impossible: such a
    // vertex and its only child have equal closed neighborhoods.
    for v in 0..n {
        if forest.children[v].len() == 1 {
            return Err(CotreeError::HasTrueTwins(v, forest.children[v][0]));
        }
    }

    let mut ct = Cotree::new();
    let mut rep = vec![usize::MAX; n];
    // Children before parents: reversed pre-order over the forest.
    let mut order = Vec::with_capacity(n);
    for &r in &forest.roots {
        let mut stack = vec![r];
        while let Some(v) = stack.pop() {
            order.push(v);
            stack.extend(forest.children[v].iter().copied());
        }
    }
    for &v in order.iter().rev() {
        if forest.children[v].is_empty() {
            rep[v] = ct.add_node(CotreeKind::Leaf(v), Vec::new());
        } else {
            let mut kids: Vec<usize> = forest.children[v].iter().map(|&c| rep[c]).collect();
            kids.sort_by_key(|&k| ct.min_vertex_below(k));
            let union = ct.add_node(CotreeKind::Union, kids);
            let leaf = ct.add_node(CotreeKind::Leaf(v), Vec::new());
            let mut pair = vec![leaf, union];
            pair.sort_by_key(|&k| ct.min_vertex_below(k));
            rep[v] = ct.add_node(CotreeKind::Join, pair);
        }
    }
    let root = if forest.roots.len() == 1 {
        rep[forest.roots[0]]
    } else {
        let mut kids: Vec<usize> = forest.roots.iter().map(|&r| rep[r]).collect();
        kids.sort_by_key(|&k| ct.min_vertex_below(k));
        ct.add_node(CotreeKind::Union, kids)
    };
    ct.set_root(root);
    Ok(ct)
}

/// Expands a cotree back into its graph: vertices are the leaves, and two
/// vertices are adjacent iff their least common ancestor is a join node.
pub fn cotree_to_graph(ct: &Cotree) -> Graph {
    let nodes = ct.node_count();
    if nodes == 0 {
        return Graph::new(0);
    }
    // Assign leaves contiguous ranges per subtree, then join nodes add all
    // cross edges between the ranges of their children.
    let mut leaf_order = Vec::new();
    let mut range = vec![(0usize, 0usize); nodes];
    let order = ct.postorder();
    for &v in &order {
        match ct.kind(v) {
            CotreeKind::Leaf(g) => {
                range[v] = (leaf_order.len(), leaf_order.len() + 1);
                leaf_order.push(g);
            }
            _ => {
                let lo = ct
                    .children(v)
                    .iter()
                    .map(|&c| range[c].0)
                    .min()
                    .unwrap_or(0);
                let hi = ct
                    .children(v)
                    .iter()
                    .map(|&c| range[c].1)
                    .max()
                    .unwrap_or(0);
                range[v] = (lo, hi);
            }
        }
    }
    let n = leaf_order.iter().copied().max().map_or(0, |m| m + 1);
    let mut g = Graph::new(n);
    for &v in &order {
        if ct.kind(v) == CotreeKind::Join {
            let kids = ct.children(v);
            for (i, &a) in kids.iter().enumerate() {
                for &b in &kids[i + 1..] {
                    for x in range[a].0..range[a].1 {
                        for y in range[b].0..range[b].1 {
                            g.add_edge(leaf_order[x], leaf_order[y]);
                        }
                    }
                }
            }
        }
    }
    g.sort_adjacency();
    g
}

/// Checks the cotree invariants; with `twin_free` also the binary join shape.
/// Returns human-readable violations, empty when all hold.
pub fn validate_cotree(ct: &Cotree, twin_free: bool) -> Vec<String> {
    let mut out = Vec::new();
    let nodes = ct.node_count();
    if nodes == 0 {
        return vec!["cotree has no nodes".to_string()];
    }
    let mut seen_leaf = std::collections::HashMap::new();
    let mut n_leaves = 0usize;
    for v in 0..nodes {
        match ct.kind(v) {
            CotreeKind::Leaf(g) => {
                n_leaves += 1;
                if let Some(prev) = seen_leaf.insert(g, v) {
                    out.push(format!("graph vertex {g} appears at leaves {prev} and {v}"));
                }
                if !ct.children(v).is_empty() {
                    out.push(format!("leaf node {v} has children"));
                }
            }
            kind => {
                if ct.children(v).len() < 2 {
                    out.push(format!(
                        "internal node {v} has {} children",
                        ct.children(v).len()
                    ));
                }
                for &c in ct.children(v) {
                    if ct.kind(c) == kind {
                        out.push(format!("adjacent nodes {v} and {c} share label {kind:?}"));
                    }
                }
                if twin_free && kind == CotreeKind::Join {
                    let kids = ct.children(v);
                    let leaves = kids
                        .iter()
                        .filter(|&&c| matches!(ct.kind(c), CotreeKind::Leaf(_)))
                        .count();
                    let unions = kids
                        .iter()
                        .filter(|&&c| ct.kind(c) == CotreeKind::Union)
                        .count();
                    if kids.len() != 2 || leaves != 1 || unions != 1 {
                        out.push(format!(
                            "join node {v} is not a (leaf, union) pair in twin-free form"
                        ));
                    }
                }
            }
        }
    }
    for g in 0..n_leaves {
        if !seen_leaf.contains_key(&g) {
            out.push(format!("graph vertex {g} has no leaf"));
            break;
        }
    }
    if nodes > 2 * n_leaves.max(1) - 1 {
        out.push(format!(
            "{nodes} nodes exceed the 2n-1 bound for {n_leaves} leaves"
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dart() -> Graph {
        Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 3), (1, 4)])
    }

    fn star(t: usize) -> Graph {
        Graph::from_edges(t + 1, &(1..=t).map(|v| (0, v)).collect::<Vec<_>>())
    }

    /// 25-vertex nested example: u0..u9 are ids 0..9, v0..v14 are ids 10..24.
    pub(crate) fn nested_example_cotree() -> Cotree {
        let mut ct = Cotree::new();
        let join2 = |ct: &mut Cotree, u: usize, leaves: &[usize]| -> usize {
            let kids: Vec<usize> = leaves
                .iter()
                .map(|&g| ct.add_node(CotreeKind::Leaf(g), Vec::new()))
                .collect();
            let union = ct.add_node(CotreeKind::Union, kids);
            let leaf = ct.add_node(CotreeKind::Leaf(u), Vec::new());
            ct.add_node(CotreeKind::Join, vec![leaf, union])
        };
        let g9 = join2(&mut ct, 9, &[23, 24]);
        let g4 = join2(&mut ct, 4, &[12, 13, 14]);
        let g5 = join2(&mut ct, 5, &[15, 16]);
        let g6 = join2(&mut ct, 6, &[17, 18]);
        let g7 = join2(&mut ct, 7, &[19, 20]);
        let g8 = join2(&mut ct, 8, &[21, 22]);
        // G3 = u3 join (v1 union G9)
        let v1 = ct.add_node(CotreeKind::Leaf(11), Vec::new());
        let u3union = ct.add_node(CotreeKind::Union, vec![v1, g9]);
        let u3leaf = ct.add_node(CotreeKind::Leaf(3), Vec::new());
        let g3 = ct.add_node(CotreeKind::Join, vec![u3leaf, u3union]);
        // G1 = u1 join (G3 union G4 union G5)
        let u1union = ct.add_node(CotreeKind::Union, vec![g3, g4, g5]);
        let u1leaf = ct.add_node(CotreeKind::Leaf(1), Vec::new());
        let g1 = ct.add_node(CotreeKind::Join, vec![u1leaf, u1union]);
        // G2 = u2 join (G6 union G7 union G8)
        let u2union = ct.add_node(CotreeKind::Union, vec![g6, g7, g8]);
        let u2leaf = ct.add_node(CotreeKind::Leaf(2), Vec::new());
        let g2 = ct.add_node(CotreeKind::Join, vec![u2leaf, u2union]);
        // root = u0 join (v0 union G1 union G2)
        let v0 = ct.add_node(CotreeKind::Leaf(10), Vec::new());
        let root_union = ct.add_node(CotreeKind::Union, vec![v0, g1, g2]);
        let u0leaf = ct.add_node(CotreeKind::Leaf(0), Vec::new());
        let root = ct.add_node(CotreeKind::Join, vec![u0leaf, root_union]);
        ct.set_root(root);
        ct
    }

    #[test]
    fn star_cotree_shape() {
        let ct = build_cotree(&star(2)).unwrap();
        let root = ct.root();
        assert_eq!(ct.kind(root), CotreeKind::Join);
        let kids = ct.children(root);
        assert_eq!(kids.len(), 2);
        assert_eq!(ct.kind(kids[0]), CotreeKind::Leaf(0));
        assert_eq!(ct.kind(kids[1]), CotreeKind::Union);
        let union_kids = ct.children(kids[1]);
        assert_eq!(union_kids.len(), 2);
        assert!(union_kids
            .iter()
            .all(|&c| matches!(ct.kind(c), CotreeKind::Leaf(_))));
    }

    #[test]
    fn dart_cotree_shape() {
        let ct = build_cotree(&dart()).unwrap();
        assert!(validate_cotree(&ct, true).is_empty());
        // join(0, union(join(1, union(3, 4)), 2)), children ordered by the
        // smallest vertex below them.
        let root = ct.root();
        assert_eq!(ct.kind(root), CotreeKind::Join);
        let [leaf, union] = ct.children(root) else {
            panic!()
        };
        assert_eq!(ct.kind(*leaf), CotreeKind::Leaf(0));
        let kids = ct.children(*union);
        assert_eq!(kids.len(), 2);
        assert_eq!(ct.kind(kids[0]), CotreeKind::Join);
        assert_eq!(ct.kind(kids[1]), CotreeKind::Leaf(2));
        let inner = ct.children(kids[0]);
        assert_eq!(ct.kind(inner[0]), CotreeKind::Leaf(1));
        // Round trip.
        assert_eq!(cotree_to_graph(&ct), dart());
    }

    #[test]
    fn union_of_leaves_is_edgeless() {
        let mut ct = Cotree::new();
        let leaves: Vec<usize> = (0..3)
            .map(|g| ct.add_node(CotreeKind::Leaf(g), Vec::new()))
            .collect();
        let root = ct.add_node(CotreeKind::Union, leaves);
        ct.set_root(root);
        let g = cotree_to_graph(&ct);
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn join_of_leaf_and_pair_is_star() {
        let g = cotree_to_graph(&build_cotree(&star(2)).unwrap());
        assert_eq!(g, star(2));
    }

    #[test]
    fn nested_example_round_trip() {
        let ct = nested_example_cotree();
        assert!(validate_cotree(&ct, true).is_empty());
        let g = cotree_to_graph(&ct);
        assert_eq!(g.vertex_count(), 25);
        let rebuilt = build_cotree(&g).unwrap();
        assert!(validate_cotree(&rebuilt, true).is_empty());
        assert_eq!(cotree_to_graph(&rebuilt), g);
        // Same structure as the hand-built tree, order-insensitively.
        assert_eq!(shape(&rebuilt, rebuilt.root()), shape(&ct, ct.root()));
    }

    fn shape(ct: &Cotree, id: usize) -> String {
        match ct.kind(id) {
            CotreeKind::Leaf(g) => format!("L{g}"),
            kind => {
                let mut parts: Vec<String> =
                    ct.children(id).iter().map(|&c| shape(ct, c)).collect();
                parts.sort();
                let tag = if kind == CotreeKind::Union { "U" } else { "J" };
                format!("{tag}({})", parts.join(","))
            }
        }
    }

    #[test]
    fn rejects_twins_and_non_tpg() {
        let triangle = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        assert!(matches!(
            build_cotree(&triangle),
            Err(CotreeError::HasTrueTwins(_, _))
        ));
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        assert!(matches!(
            build_cotree(&p4),
            Err(CotreeError::NotTriviallyPerfect(_))
        ));
        assert!(matches!(
            build_cotree(&Graph::new(0)),
            Err(CotreeError::Empty)
        ));
    }

    #[test]
    fn single_vertex_is_a_lone_leaf() {
        let ct = build_cotree(&Graph::new(1)).unwrap();
        assert_eq!(ct.node_count(), 1);
        assert_eq!(ct.kind(ct.root()), CotreeKind::Leaf(0));
    }

    #[test]
    fn validate_flags_bad_shapes() {
        let mut ct = Cotree::new();
        let a = ct.add_node(CotreeKind::Leaf(0), Vec::new());
        let b = ct.add_node(CotreeKind::Leaf(1), Vec::new());
        let join = ct.add_node(CotreeKind::Join, vec![a, b]);
        ct.set_root(join);
        // Two leaf children under a join violate the twin-free shape.
        assert!(!validate_cotree(&ct, true).is_empty());
        assert!(validate_cotree(&ct, false).is_empty());

        let mut ct = Cotree::new();
        let a = ct.add_node(CotreeKind::Leaf(0), Vec::new());
        let union = ct.add_node(CotreeKind::Union, vec![a]);
        ct.set_root(union);
        assert!(validate_cotree(&ct, false)
            .iter()
            .any(|v| v.contains("1 children")));
    }

    #[test]
    fn dump_is_preorder() {
        let ct = build_cotree(&star(2)).unwrap();
        let text = ct.to_text();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "0 join -");
        assert_eq!(lines[1], "1 leaf 0 0");
        assert_eq!(lines[2], "2 union 0");
    }
}
