//! Orientation data for graph generators.
//!
//! Each complex family fixes, per parity of the degree shift `d`, a list
//! of determinant components (orderings of edges, vertices, hairs, ...).
//! A generator is a graph together with an ordering of each component;
//! reordering multiplies the generator by the sign of the permutation.
//! Operations on graphs produce explicit orderings; signs are only ever
//! computed as parities relative to a reference ordering, so they stay
//! consistent by construction.

use crate::decorated::{Color, Decorated, Kind};
use crate::perm::parity_vs_identity;

/// One determinant factor of the orientation line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comp {
    /// all edges (internal edges only, for haired graphs); id = edge index
    Edges,
    /// all vertices (internal only, for haired graphs); id = vertex index
    Vertices,
    /// black vertices; id = vertex index
    BlackVertices,
    /// white vertices; id = vertex index
    WhiteVertices,
    /// incoming hairs; id = label - 1
    InHairs,
    /// outgoing hairs by label, then incoming hairs by label;
    /// id = position in that reference list
    AllHairs,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mode {
    pub comps: Vec<Comp>,
    /// when set, edge directions are orientation data (not structure):
    /// reversing one edge flips the sign
    pub dir_signs: bool,
}

/// An ordering of each component of a [`Mode`], for one concrete graph.
/// `lists[i]` is a permutation of the id set of `mode.comps[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    pub lists: Vec<Vec<u32>>,
    /// per edge (edge order): chosen source half; only with `dir_signs`
    pub dirs: Option<Vec<u32>>,
}

/// Ids of a component for a given graph, in reference order.
pub fn comp_ids(comp: Comp, dec: &Decorated) -> Vec<u32> {
    match comp {
        Comp::Edges => match dec.kind {
            Kind::Haired => dec
                .graph
                .edges()
                .iter()
                .enumerate()
                .filter(|&(_, &(a, b))| !dec.is_phantom_half(a) && !dec.is_phantom_half(b))
                .map(|(e, _)| e as u32)
                .collect(),
            _ => (0..dec.graph.n_edges() as u32).collect(),
        },
        Comp::Vertices => match dec.kind {
            Kind::Haired => dec.internal_vertices().iter().map(|&v| v as u32).collect(),
            _ => (0..dec.graph.n_vertices() as u32).collect(),
        },
        Comp::BlackVertices => colored_vertices(dec, Color::Black),
        Comp::WhiteVertices => colored_vertices(dec, Color::White),
        Comp::InHairs => (0..dec.n_in_hairs() as u32).collect(),
        Comp::AllHairs => (0..(dec.n_in_hairs() + dec.n_out_hairs()) as u32).collect(),
    }
}

fn colored_vertices(dec: &Decorated, color: Color) -> Vec<u32> {
    let colors = dec.colors.as_ref().expect("mixed kind");
    colors
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c == color)
        .map(|(v, _)| v as u32)
        .collect()
}

/// The reference orientation: each component in its reference order,
/// each edge directed out of its minimal half-edge.
pub fn reference(mode: &Mode, dec: &Decorated) -> Orientation {
    Orientation {
        lists: mode.comps.iter().map(|&c| comp_ids(c, dec)).collect(),
        dirs: mode
            .dir_signs
            .then(|| dec.graph.edges().iter().map(|&(a, _)| a).collect()),
    }
}

/// Parity of `list` relative to its own sorted order.
fn parity_vs_sorted(list: &[u32]) -> i8 {
    let mut sorted: Vec<u32> = list.to_vec();
    sorted.sort_unstable();
    let rank: std::collections::HashMap<u32, u32> = sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| (x, i as u32))
        .collect();
    let ranked: Vec<u32> = list.iter().map(|x| rank[x]).collect();
    parity_vs_identity(&ranked)
}

/// Sign of `or` relative to [`reference`].
pub fn sign_vs_reference(mode: &Mode, dec: &Decorated, or: &Orientation) -> i8 {
    debug_assert_eq!(or.lists.len(), mode.comps.len());
    let mut sign = 1i8;
    for (comp, list) in mode.comps.iter().zip(&or.lists) {
        debug_assert_eq!(list.len(), comp_ids(*comp, dec).len());
        sign *= parity_vs_sorted(list);
    }
    if mode.dir_signs {
        let dirs = or.dirs.as_ref().expect("dir_signs mode requires dirs");
        for (e, &(a, _)) in dec.graph.edges().iter().enumerate() {
            if dirs[e] != a {
                sign = -sign;
            }
        }
    }
    sign
}

/// Transports an orientation of `old` through the half-edge relabeling
/// `rho` (old -> new) to an orientation of `new = old.relabel(rho)`.
/// Hair components are indexed by labels, which relabeling preserves,
/// so their lists pass through unchanged.
pub fn transport(
    mode: &Mode,
    old: &Decorated,
    new: &Decorated,
    rho: &[u32],
    or: &Orientation,
) -> Orientation {
    let old_edges = old.graph.edges();
    let old_verts = old.graph.vertices();
    let map_edge = |e: u32| new.graph.edge_of(rho[old_edges[e as usize].0 as usize]);
    let map_vert = |v: u32| new.graph.vertex_of(rho[old_verts[v as usize][0] as usize]);
    let lists = mode
        .comps
        .iter()
        .zip(&or.lists)
        .map(|(comp, list)| match comp {
            Comp::Edges => list.iter().map(|&e| map_edge(e)).collect(),
            Comp::Vertices | Comp::BlackVertices | Comp::WhiteVertices => {
                list.iter().map(|&v| map_vert(v)).collect()
            }
            Comp::InHairs | Comp::AllHairs => list.clone(),
        })
        .collect();
    let dirs = or.dirs.as_ref().map(|d| {
        let mut nd = vec![0u32; d.len()];
        for &src in d {
            let nsrc = rho[src as usize];
            nd[new.graph.edge_of(nsrc) as usize] = nsrc;
        }
        nd
    });
    Orientation { lists, dirs }
}
