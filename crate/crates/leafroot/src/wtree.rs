//! Compressed weighted trees: the leaf-root representation where maximal
//! paths of degree-two vertices are stored as single integer-weighted edges.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

/// Weights above this are rejected; with k bounded by n+1 every weight the
/// construction produces stays far below it, so an overflow here signals a bug.
pub const MAX_WEIGHT: u64 = 1 << 62;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertKind {
    Internal,
    /// Leaf labelled with a graph vertex.
    Leaf(usize),
}

#[derive(Debug, Clone, Copy)]
pub struct Edge {
    pub a: VertexId,
    pub b: VertexId,
    pub w: u64,
}

impl Edge {
    /// The endpoint that is not `v`.
    pub fn other_of(&self, v: VertexId) -> VertexId {
        if self.a == v {
            self.b
        } else {
            self.a
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("edge weight must be at least 1")]
    ZeroWeight,
    #[error("edge weight {0} exceeds the supported maximum")]
    WeightOverflow(u64),
    #[error("cannot attach at labelled leaf {0}; it would gain degree 2")]
    AttachAtLeaf(VertexId),
    #[error("graph vertex {0} labels more than one leaf")]
    DuplicateLeafLabel(usize),
}

/// Center of a tree: a single vertex when the diameter is even, two adjacent
/// vertices when it is odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Center {
    One(VertexId),
    Two(VertexId, VertexId),
}

impl Center {
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        match *self {
            Center::One(a) => [Some(a), None].into_iter().flatten(),
            Center::Two(a, b) => [Some(a), Some(b)].into_iter().flatten(),
        }
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices().any(|c| c == v)
    }
}

/// Exact tree metadata: diameter, radius, diameter parity, center vertices,
/// min-max center and its leaf distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeMeta {
    pub diameter: u64,
    pub radius: u64,
    /// Parity of the diameter.
    pub parity: u64,
    pub center: Center,
    /// Center vertex maximizing the distance to its nearest leaf.
    pub minmax_center: VertexId,
    /// Distance from the min-max center to its nearest leaf.
    pub dmin: u64,
}

impl TreeMeta {
    pub fn singleton(v: VertexId) -> Self {
        TreeMeta {
            diameter: 0,
            radius: 0,
            parity: 0,
            center: Center::One(v),
            minmax_center: v,
            dmin: 0,
        }
    }
}

/// A tree with dense vertex ids, graph-labelled leaves and positive integer
/// edge weights. During construction it may transiently hold a forest.
#[derive(Debug, Clone, Default)]
pub struct CompressedTree {
    verts: Vec<VertKind>,
    edges: Vec<Edge>,
    adj: Vec<Vec<EdgeId>>,
    dead_edges: usize,
}

impl CompressedTree {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex_count(&self) -> usize {
        self.verts.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len() - self.dead_edges
    }

    pub fn kind(&self, v: VertexId) -> VertKind {
        self.verts[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn edge(&self, e: EdgeId) -> Edge {
        self.edges[e]
    }

    pub fn incident_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.adj[v]
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = (VertexId, u64)> + '_ {
        self.adj[v].iter().map(move |&e| {
            let edge = self.edges[e];
            (edge.other_of(v), edge.w)
        })
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        0..self.verts.len()
    }

    /// Tree vertices that are labelled leaves, with their graph labels.
    pub fn leaves(&self) -> impl Iterator<Item = (VertexId, usize)> + '_ {
        self.verts.iter().enumerate().filter_map(|(v, k)| match k {
            VertKind::Leaf(g) => Some((v, *g)),
            VertKind::Internal => None,
        })
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves().count()
    }

    /// Graph vertex -> tree leaf map. Errors if a label repeats.
    pub fn leaf_map(&self) -> Result<HashMap<usize, VertexId>, TreeError> {
        let mut map = HashMap::new();
        for (v, g) in self.leaves() {
            if map.insert(g, v).is_some() {
                return Err(TreeError::DuplicateLeafLabel(g));
            }
        }
        Ok(map)
    }

    pub fn add_internal(&mut self) -> VertexId {
        self.verts.push(VertKind::Internal);
        self.adj.push(Vec::new());
        self.verts.len() - 1
    }

    pub fn add_leaf(&mut self, graph_vertex: usize) -> VertexId {
        self.verts.push(VertKind::Leaf(graph_vertex));
        self.adj.push(Vec::new());
        self.verts.len() - 1
    }

    /// Changes the graph vertex a leaf is labelled with.
    pub fn relabel_leaf(&mut self, v: VertexId, graph_vertex: usize) {
        debug_assert!(matches!(self.verts[v], VertKind::Leaf(_)));
        self.verts[v] = VertKind::Leaf(graph_vertex);
    }

    pub fn add_edge(&mut self, a: VertexId, b: VertexId, w: u64) -> Result<EdgeId, TreeError> {
        if a >= self.verts.len() {
            return Err(TreeError::UnknownVertex(a));
        }
        if b >= self.verts.len() {
            return Err(TreeError::UnknownVertex(b));
        }
        if w == 0 {
            return Err(TreeError::ZeroWeight);
        }
        if w > MAX_WEIGHT {
            return Err(TreeError::WeightOverflow(w));
        }
        let id = self.edges.len();
        self.edges.push(Edge { a, b, w });
        self.adj[a].push(id);
        self.adj[b].push(id);
        Ok(id)
    }

    pub fn set_weight(&mut self, e: EdgeId, w: u64) -> Result<(), TreeError> {
        if w == 0 {
            return Err(TreeError::ZeroWeight);
        }
        if w > MAX_WEIGHT {
            return Err(TreeError::WeightOverflow(w));
        }
        self.edges[e].w = w;
        Ok(())
    }

    /// Splits edge `e` by a new internal vertex at distance `at` from `from`
    /// (0 < at < weight). The original edge id keeps the `from` side.
    pub fn split_edge(&mut self, e: EdgeId, from: VertexId, at: u64) -> VertexId {
        let Edge { a, b, w } = self.edges[e];
        debug_assert!(from == a || from == b);
        debug_assert!(at > 0 && at < w);
        let far = if from == a { b } else { a };
        let mid = self.add_internal();
        self.edges[e] = Edge {
            a: from,
            b: mid,
            w: at,
        };
        self.adj[far].retain(|&x| x != e);
        self.adj[mid].push(e);
        let rest = self.edges.len();
        self.edges.push(Edge {
            a: mid,
            b: far,
            w: w - at,
        });
        self.adj[mid].push(rest);
        self.adj[far].push(rest);
        mid
    }

    /// Removes a degree-2 internal vertex by merging its two incident edges.
    /// The vertex id stays allocated but isolated; ids of others are stable.
    pub fn smooth_vertex(&mut self, v: VertexId) {
        debug_assert_eq!(self.adj[v].len(), 2);
        debug_assert_eq!(self.verts[v], VertKind::Internal);
        let e1 = self.adj[v][0];
        let e2 = self.adj[v][1];
        let u = self.edges[e1].other_of(v);
        let x = self.edges[e2].other_of(v);
        let w = self.edges[e1].w + self.edges[e2].w;
        self.edges[e1] = Edge { a: u, b: x, w };
        self.adj[x].retain(|&e| e != e2);
        self.adj[x].push(e1);
        self.adj[v].clear();
        // Dead edge; keep the slot but detach it.
        self.edges[e2] = Edge { a: u, b: u, w: 1 };
        self.dead_edges += 1;
    }

    /// Drops smoothed-out vertices and dead edges, renumbering densely.
    /// Returns the old-id -> new-id vertex mapping.
    pub fn compact(&mut self) -> Vec<Option<VertexId>> {
        let mut vmap = vec![None; self.verts.len()];
        let mut verts = Vec::with_capacity(self.verts.len());
        let mut adj = Vec::with_capacity(self.adj.len());
        let lone = self.verts.len() == 1;
        for (v, kind) in self.verts.iter().enumerate() {
            if self.adj[v].is_empty() && !lone {
                continue;
            }
            vmap[v] = Some(verts.len());
            verts.push(*kind);
            adj.push(Vec::new());
        }
        let mut edges = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            if e.a == e.b {
                continue;
            }
            let a = vmap[e.a].expect("live edge endpoint");
            let b = vmap[e.b].expect("live edge endpoint");
            let id = edges.len();
            edges.push(Edge { a, b, w: e.w });
            adj[a].push(id);
            adj[b].push(id);
        }
        self.verts = verts;
        self.edges = edges;
        self.adj = adj;
        self.dead_edges = 0;
        vmap
    }

    /// Distances from `src` to every vertex, by one iterative sweep.
    pub fn distances_from(&self, src: VertexId) -> Vec<u64> {
        let mut dist = vec![0u64; self.verts.len()];
        let mut seen = vec![false; self.verts.len()];
        let mut stack = vec![src];
        seen[src] = true;
        while let Some(v) = stack.pop() {
            for &e in &self.adj[v] {
                let edge = self.edges[e];
                if edge.a == edge.b {
                    continue;
                }
                let u = edge.other_of(v);
                if !seen[u] {
                    seen[u] = true;
                    dist[u] = dist[v] + edge.w;
                    stack.push(u);
                }
            }
        }
        dist
    }

    /// Length of the unique path between two vertices.
    pub fn dist(&self, a: VertexId, b: VertexId) -> Result<u64, TreeError> {
        if a >= self.verts.len() {
            return Err(TreeError::UnknownVertex(a));
        }
        if b >= self.verts.len() {
            return Err(TreeError::UnknownVertex(b));
        }
        Ok(self.distances_from(a)[b])
    }

    /// Adds one vertex joined to `from` by a single edge of the given length,
    /// labelled iff `leaf_label` is given. Length 0 is rejected: callers that
    /// want distance zero must identify vertices instead.
    pub fn attach_path(
        &mut self,
        from: VertexId,
        length: u64,
        leaf_label: Option<usize>,
    ) -> Result<VertexId, TreeError> {
        if from >= self.verts.len() {
            return Err(TreeError::UnknownVertex(from));
        }
        if length == 0 {
            return Err(TreeError::ZeroWeight);
        }
        if matches!(self.verts[from], VertKind::Leaf(_)) && !self.adj[from].is_empty() {
            return Err(TreeError::AttachAtLeaf(from));
        }
        let v = match leaf_label {
            Some(g) => self.add_leaf(g),
            None => self.add_internal(),
        };
        self.add_edge(from, v, length)?;
        Ok(v)
    }

    /// Replaces every weight-w edge by a path of w unit edges.
    pub fn expand(&self) -> CompressedTree {
        let mut out = CompressedTree::new();
        for k in &self.verts {
            match k {
                VertKind::Internal => out.add_internal(),
                VertKind::Leaf(g) => out.add_leaf(*g),
            };
        }
        for e in &self.edges {
            if e.a == e.b {
                continue;
            }
            let mut prev = e.a;
            for _ in 1..e.w {
                let mid = out.add_internal();
                out.add_edge(prev, mid, 1).expect("unit edge");
                prev = mid;
            }
            out.add_edge(prev, e.b, 1).expect("unit edge");
        }
        out
    }

    /// Smooths every internal degree-2 vertex not listed in `keep`.
    pub fn canonicalize(&mut self, keep: &[VertexId]) {
        let mut again = true;
        while again {
            again = false;
            for v in 0..self.verts.len() {
                if self.verts[v] == VertKind::Internal
                    && self.adj[v].len() == 2
                    && !keep.contains(&v)
                {
                    self.smooth_vertex(v);
                    again = true;
                }
            }
        }
    }

    /// Structural invariant check; `designated_centers` are the only internal
    /// vertices allowed to have degree 2. Vertices smoothed out earlier
    /// (degree 0 tombstones) are ignored; `compact` drops them for good.
    pub fn validate(&self, designated_centers: &[VertexId]) -> Vec<String> {
        let mut out = Vec::new();
        let n = self.verts.len();
        let live = |v: usize| n == 1 || !self.adj[v].is_empty();
        let n_live = (0..n).filter(|&v| live(v)).count();
        let live_edges = self.edges.iter().filter(|e| e.a != e.b).count();
        if n_live > 0 && live_edges + 1 != n_live {
            out.push(format!(
                "vertex/edge count mismatch: {n_live} vertices, {live_edges} edges"
            ));
        }
        if let Some(start) = (0..n).find(|&v| live(v)) {
            let mut seen = vec![false; n];
            let mut reached = 1usize;
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                for (u, _) in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        reached += 1;
                        stack.push(u);
                    }
                }
            }
            if reached != n_live {
                out.push("tree is not connected".to_string());
            }
        }
        for e in &self.edges {
            if e.a != e.b && e.w == 0 {
                out.push(format!("zero-weight edge {}-{}", e.a, e.b));
            }
        }
        let mut labels = HashMap::new();
        for (v, k) in self.verts.iter().enumerate() {
            if !live(v) {
                if matches!(k, VertKind::Leaf(_)) {
                    out.push(format!("labelled vertex {v} was smoothed away"));
                }
                continue;
            }
            match k {
                VertKind::Leaf(g) => {
                    if labels.insert(*g, v).is_some() {
                        out.push(format!("graph vertex {g} labels more than one leaf"));
                    }
                    if self.adj[v].len() != 1 && n_live > 1 {
                        out.push(format!(
                            "labelled vertex {v} has degree {}",
                            self.adj[v].len()
                        ));
                    }
                }
                VertKind::Internal => {
                    let d = self.adj[v].len();
                    if d == 1 {
                        out.push(format!("internal vertex {v} has degree 1"));
                    } else if d == 2 && !designated_centers.contains(&v) {
                        out.push(format!("non-center internal vertex {v} has degree 2"));
                    }
                }
            }
        }
        out
    }

    /// Exact metadata by two eccentricity sweeps; a center falling strictly
    /// inside a weighted edge is materialized as a real degree-2 vertex.
    pub fn compute_meta(&mut self) -> TreeMeta {
        let n = self.verts.len();
        assert!(n > 0, "meta of an empty tree");
        if n == 1 {
            return TreeMeta::singleton(0);
        }
        let d0 = self.distances_from(0);
        let x = (0..n)
            .max_by_key(|&v| (d0[v], std::cmp::Reverse(v)))
            .unwrap();
        let (dx, parent) = self.distances_and_parents(x);
        let y = (0..n)
            .max_by_key(|&v| (dx[v], std::cmp::Reverse(v)))
            .unwrap();
        let diameter = dx[y];
        let parity = diameter % 2;
        let radius = diameter.div_ceil(2);

        // Walk the diametral path from y back to x, placing the center at
        // distance radius from y (and radius - parity for the second one).
        let za = self.locate_on_path(y, &parent, &dx, diameter - radius);
        let center = if parity == 0 {
            Center::One(za)
        } else {
            // Parents may have been invalidated by the split above; recompute.
            let (dx2, parent2) = self.distances_and_parents(x);
            debug_assert_eq!(dx2[y], diameter);
            let zb = self.locate_on_path(y, &parent2, &dx2, diameter - radius + 1);
            Center::Two(za, zb)
        };

        let (minmax_center, dmin) = match center {
            Center::One(z) => (z, self.min_leaf_distance(z)),
            Center::Two(z1, z2) => {
                let n1 = self.min_leaf_distance(z1);
                let n2 = self.min_leaf_distance(z2);
                if n2 > n1 {
                    (z2, n2)
                } else {
                    (z1, n1)
                }
            }
        };
        TreeMeta {
            diameter,
            radius,
            parity,
            center,
            minmax_center,
            dmin,
        }
    }

    fn distances_and_parents(&self, src: VertexId) -> (Vec<u64>, Vec<Option<EdgeId>>) {
        let mut dist = vec![0u64; self.verts.len()];
        let mut parent = vec![None; self.verts.len()];
        let mut seen = vec![false; self.verts.len()];
        let mut stack = vec![src];
        seen[src] = true;
        while let Some(v) = stack.pop() {
            for &e in &self.adj[v] {
                let edge = self.edges[e];
                if edge.a == edge.b {
                    continue;
                }
                let u = edge.other_of(v);
                if !seen[u] {
                    seen[u] = true;
                    dist[u] = dist[v] + edge.w;
                    parent[u] = Some(e);
                    stack.push(u);
                }
            }
        }
        (dist, parent)
    }

    /// Vertex at distance `target` from `from` along the path towards the
    /// sweep source, splitting an edge if the point falls inside one.
    fn locate_on_path(
        &mut self,
        from: VertexId,
        parent: &[Option<EdgeId>],
        dist_from_src: &[u64],
        target: u64,
    ) -> VertexId {
        let mut v = from;
        let mut walked = 0u64;
        while walked < target {
            let e = parent[v].expect("path towards source");
            let edge = self.edges[e];
            let u = edge.other_of(v);
            debug_assert!(dist_from_src[u] < dist_from_src[v]);
            if walked + edge.w <= target {
                walked += edge.w;
                v = u;
            } else {
                return self.split_edge(e, v, target - walked);
            }
        }
        v
    }

    fn min_leaf_distance(&self, z: VertexId) -> u64 {
        let dist = self.distances_from(z);
        self.leaves().map(|(v, _)| dist[v]).min().unwrap_or(0)
    }

    /// Pairwise distances between all labelled leaves, keyed by graph vertex.
    pub fn all_leaf_distances(&self) -> LeafDistances {
        let mut leaves: Vec<(VertexId, usize)> = self.leaves().collect();
        leaves.sort_by_key(|&(_, g)| g);
        let mut table = HashMap::new();
        for (i, &(v, g)) in leaves.iter().enumerate() {
            let dist = self.distances_from(v);
            for &(u, h) in &leaves[i + 1..] {
                table.insert((g.min(h), g.max(h)), dist[u]);
            }
        }
        LeafDistances { table }
    }

    /// Text format: header `T <vertices> <edges> <k>`, one `u v w` line per
    /// edge, one `L <tree-vertex> <graph-vertex>` line per leaf.
    pub fn to_text(&self, k: u64) -> String {
        let mut s = String::new();
        let live: Vec<&Edge> = self.edges.iter().filter(|e| e.a != e.b).collect();
        let _ = writeln!(s, "T {} {} {}", self.verts.len(), live.len(), k);
        for e in live {
            let (a, b) = (e.a.min(e.b), e.a.max(e.b));
            let _ = writeln!(s, "{} {} {}", a, b, e.w);
        }
        for (v, g) in self.leaves() {
            let _ = writeln!(s, "L {v} {g}");
        }
        s
    }

    pub fn from_text(text: &str) -> Result<(CompressedTree, u64), String> {
        let mut tree = CompressedTree::new();
        let mut k = None;
        let mut expected_edges = 0usize;
        let mut edges: Vec<(usize, usize, u64)> = Vec::new();
        let mut leaf_lines: Vec<(usize, usize)> = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            let head = it.next().unwrap();
            let parse = |tok: Option<&str>| -> Result<usize, String> {
                tok.ok_or(format!("line {}: missing field", ln + 1))?
                    .parse::<usize>()
                    .map_err(|e| format!("line {}: {e}", ln + 1))
            };
            match head {
                "T" => {
                    let nv = parse(it.next())?;
                    expected_edges = parse(it.next())?;
                    k = Some(parse(it.next())? as u64);
                    for _ in 0..nv {
                        tree.add_internal();
                    }
                }
                "L" => {
                    let v = parse(it.next())?;
                    let g = parse(it.next())?;
                    leaf_lines.push((v, g));
                }
                u => {
                    let a = u
                        .parse::<usize>()
                        .map_err(|e| format!("line {}: {e}", ln + 1))?;
                    let b = parse(it.next())?;
                    let w = parse(it.next())? as u64;
                    edges.push((a, b, w));
                }
            }
        }
        let k = k.ok_or("missing T header line")?;
        if edges.len() != expected_edges {
            return Err(format!(
                "header names {} edges, found {}",
                expected_edges,
                edges.len()
            ));
        }
        for (v, g) in leaf_lines {
            if v >= tree.vertex_count() {
                return Err(format!("leaf line names unknown vertex {v}"));
            }
            tree.verts[v] = VertKind::Leaf(g);
        }
        for (a, b, w) in edges {
            tree.add_edge(a, b, w).map_err(|e| e.to_string())?;
        }
        Ok((tree, k))
    }

    /// DOT export with edge weight labels.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph leafroot {\n");
        for (v, k) in self.verts.iter().enumerate() {
            match k {
                VertKind::Leaf(g) => {
                    let _ = writeln!(s, "  {v} [label=\"{g}\"];");
                }
                VertKind::Internal => {
                    if !self.adj[v].is_empty() {
                        let _ = writeln!(s, "  {v} [shape=point];");
                    }
                }
            }
        }
        for e in &self.edges {
            if e.a != e.b {
                let _ = writeln!(s, "  {} -- {} [label={}];", e.a.min(e.b), e.a.max(e.b), e.w);
            }
        }
        s.push_str("}\n");
        s
    }

    /// Newick export with integer branch lengths; leaves carry their graph
    /// vertex as the name, internal nodes are unnamed. Rooted at the first
    /// internal vertex (a lone leaf renders as `<g>;`).
    pub fn to_newick(&self) -> String {
        if self.verts.len() == 1 {
            if let VertKind::Leaf(g) = self.verts[0] {
                return format!("{g};");
            }
        }
        let root = match self
            .vertices()
            .find(|&v| self.verts[v] == VertKind::Internal && !self.adj[v].is_empty())
        {
            Some(r) => r,
            None => {
                // Two labelled leaves on a single edge.
                let e = self.edges.iter().find(|e| e.a != e.b).expect("edge");
                let (ga, gb) = match (self.verts[e.a], self.verts[e.b]) {
                    (VertKind::Leaf(ga), VertKind::Leaf(gb)) => (ga, gb),
                    _ => unreachable!("internal-free tree has labelled endpoints"),
                };
                return format!("({}:{}){};", gb.max(ga), e.w, ga.min(gb));
            }
        };
        let mut out = String::new();
        self.newick_rec(root, usize::MAX, &mut out);
        out.push(';');
        out
    }

    fn newick_rec(&self, v: VertexId, parent: VertexId, out: &mut String) {
        match self.verts[v] {
            VertKind::Leaf(g) => {
                let _ = write!(out, "{g}");
            }
            VertKind::Internal => {
                // Deterministic child order: by smallest graph label below.
                let mut children: Vec<(usize, VertexId, u64)> = Vec::new();
                for &e in &self.adj[v] {
                    let edge = self.edges[e];
                    if edge.a == edge.b {
                        continue;
                    }
                    let u = edge.other_of(v);
                    if u != parent {
                        children.push((self.min_label_below(u, v), u, edge.w));
                    }
                }
                children.sort();
                out.push('(');
                for (i, (_, u, w)) in children.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    self.newick_rec(*u, v, out);
                    let _ = write!(out, ":{w}");
                }
                out.push(')');
            }
        }
    }

    fn min_label_below(&self, v: VertexId, parent: VertexId) -> usize {
        let mut best = usize::MAX;
        let mut stack = vec![(v, parent)];
        while let Some((v, p)) = stack.pop() {
            if let VertKind::Leaf(g) = self.verts[v] {
                best = best.min(g);
            }
            for (u, _) in self.neighbors(v) {
                if u != p {
                    stack.push((u, v));
                }
            }
        }
        best
    }
}

/// Symmetric table of pairwise leaf distances, keyed by graph vertex pairs.
#[derive(Debug, Clone)]
pub struct LeafDistances {
    table: HashMap<(usize, usize), u64>,
}

impl LeafDistances {
    pub fn get(&self, a: usize, b: usize) -> Option<u64> {
        if a == b {
            return Some(0);
        }
        self.table.get(&(a.min(b), a.max(b))).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.table.iter().map(|(&k, &v)| (k, v))
    }
}

/// Subdivides every pendant edge `delta` times: each leaf's edge weight grows
/// by `delta` (an edge whose both endpoints are leaves grows by 2·delta), and
/// the metadata shifts accordingly: diameter +2δ, radius +δ, dmin +δ, with the
/// same center and min-max center vertices.
pub fn eta(tree: &mut CompressedTree, meta: &mut TreeMeta, delta: u64) {
    if delta == 0 {
        return;
    }
    let leaf_edges: Vec<EdgeId> = tree
        .leaves()
        .filter_map(|(v, _)| tree.incident_edges(v).first().copied())
        .collect();
    for e in leaf_edges {
        let w = tree.edge(e).w;
        tree.set_weight(e, w + delta).expect("weight update");
    }
    meta.diameter += 2 * delta;
    meta.radius += delta;
    meta.dmin += delta;
}
