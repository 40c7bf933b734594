//! Instance generators: stars, the exponentially-growing hard family, seeded
//! random twin-free instances built from random cotrees, and exhaustive
//! enumeration of small instances by canonical cotree shape.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cotree::{cotree_to_graph, Cotree, CotreeKind};
use crate::graph::Graph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("star needs at least 2 leaves, got {0}")]
    StarTooSmall(usize),
    #[error("family index {0} exceeds the size guard of 12")]
    FamilyTooLarge(u32),
    #[error("random instance needs at least 1 vertex")]
    EmptyRandom,
    #[error("branching must be at least 2, got {0}")]
    BranchingTooSmall(usize),
    #[error("enumeration limit is 8 vertices, got {0}")]
    EnumerationTooLarge(usize),
}

/// Hub 0 adjacent to leaves 1..=t, nothing else.
pub fn gen_star(t: usize) -> Result<Graph, GenError> {
    if t < 2 {
        return Err(GenError::StarTooSmall(t));
    }
    let edges: Vec<(usize, usize)> = (1..=t).map(|v| (0, v)).collect();
    Ok(Graph::from_edges(t + 1, &edges))
}

/// The recursive family: level 0 is the two-leaf star, and each level joins a
/// fresh universal vertex onto three copies of the previous level, each
/// padded with one extra isolated vertex behind its own universal vertex.
/// Sizes grow as 3·previous + 7; the odd and even optima drift apart by a
/// factor approaching 1.25.
pub fn gen_family_f(i: u32) -> Result<Graph, GenError> {
    if i > 12 {
        return Err(GenError::FamilyTooLarge(i));
    }
    let mut ct = Cotree::new();
    let mut next = 0usize;
    let root = family_node(&mut ct, i, &mut next);
    ct.set_root(root);
    Ok(cotree_to_graph(&ct))
}

fn family_node(ct: &mut Cotree, i: u32, next: &mut usize) -> usize {
    let take = |ct: &mut Cotree, next: &mut usize| {
        let id = *next;
        *next += 1;
        ct.add_node(CotreeKind::Leaf(id), Vec::new())
    };
    if i == 0 {
        let center = take(ct, next);
        let a = take(ct, next);
        let b = take(ct, next);
        let union = ct.add_node(CotreeKind::Union, vec![a, b]);
        return ct.add_node(CotreeKind::Join, vec![center, union]);
    }
    let top = take(ct, next);
    let mut branches = Vec::with_capacity(3);
    for _ in 0..3 {
        let universal = take(ct, next);
        let sub = family_node(ct, i - 1, next);
        let isolated = take(ct, next);
        let union = ct.add_node(CotreeKind::Union, vec![sub, isolated]);
        branches.push(ct.add_node(CotreeKind::Join, vec![universal, union]));
    }
    let union = ct.add_node(CotreeKind::Union, branches);
    ct.add_node(CotreeKind::Join, vec![top, union])
}

/// Seeded random twin-free instance with n vertices. `branching` caps the
/// number of non-trivial components below any universal vertex; `depth` caps
/// the join nesting and biases toward long single-component chains while it
/// lasts. Output is fully determined by the parameters.
pub fn gen_random_tpg(
    n: usize,
    seed: u64,
    branching: usize,
    depth: usize,
) -> Result<Graph, GenError> {
    Ok(cotree_to_graph(&gen_random_cotree(
        n, seed, branching, depth,
    )?))
}

/// The cotree behind [`gen_random_tpg`].
pub fn gen_random_cotree(
    n: usize,
    seed: u64,
    branching: usize,
    depth: usize,
) -> Result<Cotree, GenError> {
    if n == 0 {
        return Err(GenError::EmptyRandom);
    }
    if branching < 2 {
        return Err(GenError::BranchingTooSmall(branching));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ct = Cotree::new();
    let mut next_vertex = 0usize;

    enum Frame {
        Build { budget: usize, depth: usize },
        Assemble { universal: usize, n_parts: usize },
    }

    let mut frames: Vec<Frame> = Vec::new();
    let mut results: Vec<usize> = Vec::new();
    let root_parts = if n == 1 {
        vec![1]
    } else if n == 2 {
        vec![1, 1]
    } else if rng.gen_bool(0.85) {
        vec![n]
    } else {
        sample_parts(n, &mut rng, branching, depth)
    };
    for &p in root_parts.iter().rev() {
        frames.push(Frame::Build { budget: p, depth });
    }
    while let Some(frame) = frames.pop() {
        match frame {
            Frame::Build { budget, depth } => {
                if budget == 1 {
                    let leaf = ct.add_node(CotreeKind::Leaf(next_vertex), Vec::new());
                    next_vertex += 1;
                    results.push(leaf);
                    continue;
                }
                debug_assert!(budget >= 3, "connected twin-free pieces have 3+ vertices");
                let universal = next_vertex;
                next_vertex += 1;
                let parts = sample_parts(budget - 1, &mut rng, branching, depth);
                frames.push(Frame::Assemble {
                    universal,
                    n_parts: parts.len(),
                });
                for &p in parts.iter().rev() {
                    frames.push(Frame::Build {
                        budget: p,
                        depth: depth.saturating_sub(1),
                    });
                }
            }
            Frame::Assemble { universal, n_parts } => {
                let kids = results.split_off(results.len() - n_parts);
                let union = ct.add_node(CotreeKind::Union, kids);
                let leaf = ct.add_node(CotreeKind::Leaf(universal), Vec::new());
                let join = ct.add_node(CotreeKind::Join, vec![leaf, union]);
                results.push(join);
            }
        }
    }
    let root = if results.len() == 1 {
        results[0]
    } else {
        ct.add_node(CotreeKind::Union, results)
    };
    ct.set_root(root);
    Ok(ct)
}

/// Splits `rest` into at least two parts, each a single vertex or a chunk of
/// 3+ for a nested connected piece. Sizes of exactly 2 never appear: a
/// two-vertex component is a pair of true twins.
fn sample_parts(rest: usize, rng: &mut ChaCha8Rng, branching: usize, depth: usize) -> Vec<usize> {
    debug_assert!(rest >= 2);
    // Chain bias: one big component plus a lone vertex exercises the
    // single-component case all the way down.
    if depth > 0 && rest >= 4 && rng.gen_bool(0.3) {
        return vec![rest - 1, 1];
    }
    let mut parts = Vec::new();
    let mut rem = rest;
    while rem > 0 {
        if rem <= 2 {
            parts.extend(std::iter::repeat_n(1, rem));
            break;
        }
        let nested = parts.iter().filter(|&&s| s >= 3).count();
        if depth > 0 && nested < branching && rng.gen_bool(0.45) {
            let mut size = rng.gen_range(3..=rem);
            if rem - size == 2 {
                size = rem - 1;
            }
            parts.push(size);
            rem -= size;
        } else {
            parts.push(1);
            rem -= 1;
        }
    }
    if parts.len() == 1 {
        let size = parts[0];
        if size == 3 {
            parts = vec![1, 1, 1];
        } else {
            parts = vec![size - 1, 1];
        }
    }
    parts
}

/// Canonical cotree shapes of all small instances, one graph per shape. Joins
/// are binary with a universal-vertex leaf; a join of two leaves is the
/// two-vertex clique.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Shape {
    Leaf,
    /// Universal vertex joined onto the parts; a lone `Leaf` part encodes the
    /// two-vertex clique.
    Join(Vec<Shape>),
}

impl Shape {
    fn size(&self) -> usize {
        match self {
            Shape::Leaf => 1,
            Shape::Join(parts) => 1 + parts.iter().map(Shape::size).sum::<usize>(),
        }
    }
}

/// Emits one representative per canonical cotree shape with 2..=max_n
/// vertices, exhaustively and duplicate-free; distinct shapes are distinct
/// cotrees, so the graphs are pairwise non-isomorphic.
pub fn enumerate_small_tpgs(max_n: usize) -> Result<Vec<Graph>, GenError> {
    if max_n > 8 {
        return Err(GenError::EnumerationTooLarge(max_n));
    }
    // Connected shapes by size, smallest first so larger ones can reuse them.
    let mut connected: Vec<Vec<Shape>> = vec![Vec::new(); max_n + 1];
    if max_n >= 2 {
        connected[2].push(Shape::Join(vec![Shape::Leaf]));
    }
    for size in 3..=max_n {
        let options = part_options(&connected, size - 1);
        let mut acc = Vec::new();
        let mut shapes = Vec::new();
        multisets(size - 1, 2, &options, 0, &mut acc, &mut |parts| {
            shapes.push(Shape::Join(parts.to_vec()));
        });
        connected[size] = shapes;
    }

    let mut out = Vec::new();
    for n in 2..=max_n {
        for shape in &connected[n] {
            out.push(shape_to_graph(std::slice::from_ref(shape)));
        }
        let options = part_options(&connected, n);
        let mut acc = Vec::new();
        multisets(n, 2, &options, 0, &mut acc, &mut |parts| {
            out.push(shape_to_graph(parts));
        });
    }
    Ok(out)
}

/// Candidate parts up to the given size, ordered descending so multiset
/// generation can enforce non-increasing sequences.
fn part_options(connected: &[Vec<Shape>], max_size: usize) -> Vec<Shape> {
    let mut options = Vec::new();
    for size in (2..=max_size.min(connected.len() - 1)).rev() {
        options.extend(connected[size].iter().cloned());
    }
    options.push(Shape::Leaf);
    options
}

fn multisets(
    rem: usize,
    min_parts: usize,
    options: &[Shape],
    start: usize,
    acc: &mut Vec<Shape>,
    emit: &mut impl FnMut(&[Shape]),
) {
    if rem == 0 {
        if acc.len() >= min_parts {
            emit(acc);
        }
        return;
    }
    for i in start..options.len() {
        let size = options[i].size();
        if size <= rem {
            acc.push(options[i].clone());
            multisets(rem - size, min_parts, options, i, acc, emit);
            acc.pop();
        }
    }
}

/// Materializes a union of shapes (a single shape for connected graphs) with
/// vertex ids assigned in pre-order, universal vertices first.
fn shape_to_graph(parts: &[Shape]) -> Graph {
    let mut ct = Cotree::new();
    let mut next = 0usize;
    let ids: Vec<usize> = parts
        .iter()
        .map(|s| add_shape(&mut ct, s, &mut next))
        .collect();
    let root = if ids.len() == 1 {
        ids[0]
    } else {
        ct.add_node(CotreeKind::Union, ids)
    };
    ct.set_root(root);
    cotree_to_graph(&ct)
}

fn add_shape(ct: &mut Cotree, shape: &Shape, next: &mut usize) -> usize {
    let take = |ct: &mut Cotree, next: &mut usize| {
        let id = *next;
        *next += 1;
        ct.add_node(CotreeKind::Leaf(id), Vec::new())
    };
    match shape {
        Shape::Leaf => take(ct, next),
        Shape::Join(parts) if parts.as_slice() == [Shape::Leaf] => {
            let a = take(ct, next);
            let b = take(ct, next);
            ct.add_node(CotreeKind::Join, vec![a, b])
        }
        Shape::Join(parts) => {
            let universal = take(ct, next);
            let kids: Vec<usize> = parts.iter().map(|p| add_shape(ct, p, next)).collect();
            let union = ct.add_node(CotreeKind::Union, kids);
            ct.add_node(CotreeKind::Join, vec![universal, union])
        }
    }
}
