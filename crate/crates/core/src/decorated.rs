//! Ribbon graphs with extra structure: edge directions, vertex colors,
//! boundary labels, and hairs (external legs modeled as univalent
//! phantom vertices).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{GraphError, RibbonGraph};

/// Structural flavor of a decorated graph, i.e. which decorations are
/// part of the isomorphism type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    /// undirected ribbon graph (boundary labels optional)
    Undirected,
    /// edges carry directions; directed cycles are forbidden
    Directed,
    /// directed, and every vertex is black or white
    Mixed,
    /// directed, with labeled incoming/outgoing hairs on a core of
    /// internal vertices
    Haired,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Color {
    Black,
    White,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HairKind {
    In,
    Out,
}

/// A hair: an external leg attached to an internal vertex. Structurally
/// it is an edge to a univalent phantom vertex; `phantom_half` is the
/// half-edge sitting at that phantom vertex. Incoming hairs point from
/// the phantom end to the core, outgoing hairs the other way. Labels
/// run `1..=p` over incoming and `1..=q` over outgoing hairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hair {
    pub phantom_half: u32,
    pub kind: HairKind,
    pub label: u32,
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum DecorError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("edge directions must list one source half-edge per edge")]
    BadDirections,
    #[error("directed graph contains a directed cycle")]
    DirectedCycle,
    #[error("colors must be given per vertex")]
    BadColors,
    #[error("boundary labels must be a bijection with 1..=B")]
    BadBoundaryLabels,
    #[error("invalid hair structure")]
    BadHairs,
    #[error("valency condition violated")]
    BadValency,
}

/// A ribbon graph together with the decorations of its `kind`.
///
/// Invariants (checked by [`Decorated::new`]):
/// - `dirs` present iff kind is directed-ish; one source half per edge,
///   in edge order (edges sorted by min half-edge); no directed cycles
///   between distinct vertices or loops.
/// - `colors` present iff `Mixed`; per vertex in vertex order.
/// - `blabels` optional for `Undirected`/`Directed`; per boundary in
///   boundary order, a bijection with `1..=B`.
/// - `hairs` present iff `Haired`; each phantom half forms a univalent
///   vertex, hair direction matches its kind, labels bijective per kind.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Decorated {
    pub kind: Kind,
    pub graph: RibbonGraph,
    /// per edge (in min-half order): the source half-edge
    pub dirs: Option<Vec<u32>>,
    /// per vertex (in min-half order)
    pub colors: Option<Vec<Color>>,
    /// per boundary (in min-half order): labels forming 1..=B
    pub blabels: Option<Vec<u32>>,
    /// sorted by (kind, label); In before Out
    pub hairs: Option<Vec<Hair>>,
}

impl Decorated {
    pub fn new(
        kind: Kind,
        graph: RibbonGraph,
        dirs: Option<Vec<u32>>,
        colors: Option<Vec<Color>>,
        blabels: Option<Vec<u32>>,
        hairs: Option<Vec<Hair>>,
    ) -> Result<Self, DecorError> {
        let directed = kind != Kind::Undirected;
        if directed != dirs.is_some() {
            return Err(DecorError::BadDirections);
        }
        if let Some(d) = &dirs {
            let edges = graph.edges();
            if d.len() != edges.len() {
                return Err(DecorError::BadDirections);
            }
            for (i, &(a, b)) in edges.iter().enumerate() {
                if d[i] != a && d[i] != b {
                    return Err(DecorError::BadDirections);
                }
            }
        }
        if (kind == Kind::Mixed) != colors.is_some() {
            return Err(DecorError::BadColors);
        }
        if let Some(c) = &colors {
            if c.len() != graph.n_vertices() {
                return Err(DecorError::BadColors);
            }
        }
        if blabels.is_some() && matches!(kind, Kind::Mixed | Kind::Haired) {
            return Err(DecorError::BadBoundaryLabels);
        }
        if let Some(bl) = &blabels {
            let b = graph.n_boundaries();
            if bl.len() != b {
                return Err(DecorError::BadBoundaryLabels);
            }
            let mut seen = vec![false; b];
            for &l in bl {
                if l < 1 || l as usize > b || seen[l as usize - 1] {
                    return Err(DecorError::BadBoundaryLabels);
                }
                seen[l as usize - 1] = true;
            }
        }
        if (kind == Kind::Haired) != hairs.is_some() {
            return Err(DecorError::BadHairs);
        }
        let me = Decorated {
            kind,
            graph,
            dirs,
            colors,
            blabels,
            hairs,
        };
        if let Some(hairs) = &me.hairs {
            let mut in_labels = Vec::new();
            let mut out_labels = Vec::new();
            for h in hairs {
                let ph = h.phantom_half;
                if ph as usize >= me.graph.n_half() || me.graph.valency(me.graph.vertex_of(ph) as usize) != 1 {
                    return Err(DecorError::BadHairs);
                }
                // direction must match kind: In points toward the core
                let src = me.edge_source(me.graph.edge_of(ph) as usize);
                let expect_src = match h.kind {
                    HairKind::In => ph,
                    HairKind::Out => me.graph.sigma1(ph),
                };
                if src != expect_src {
                    return Err(DecorError::BadHairs);
                }
                match h.kind {
                    HairKind::In => in_labels.push(h.label),
                    HairKind::Out => out_labels.push(h.label),
                }
            }
            for labels in [&mut in_labels, &mut out_labels] {
                labels.sort_unstable();
                if labels.iter().enumerate().any(|(i, &l)| l != i as u32 + 1) {
                    return Err(DecorError::BadHairs);
                }
            }
            // every univalent vertex must be a phantom
            let n_univalent = (0..me.graph.n_vertices())
                .filter(|&v| me.graph.valency(v) == 1)
                .count();
            if n_univalent != hairs.len() {
                return Err(DecorError::BadHairs);
            }
            // hairs sorted by (kind, label), In first
            let key = |h: &Hair| (matches!(h.kind, HairKind::Out) as u32, h.label);
            if hairs.windows(2).any(|w| key(&w[0]) >= key(&w[1])) {
                return Err(DecorError::BadHairs);
            }
        } else if directed && me.has_directed_cycle() {
            return Err(DecorError::DirectedCycle);
        }
        if me.kind == Kind::Haired && me.has_directed_cycle() {
            return Err(DecorError::DirectedCycle);
        }
        Ok(me)
    }

    /// Source half-edge of edge `e`.
    pub fn edge_source(&self, e: usize) -> u32 {
        self.dirs.as_ref().expect("directed kind")[e]
    }

    pub fn is_phantom_half(&self, h: u32) -> bool {
        match &self.hairs {
            Some(hairs) => hairs.iter().any(|x| x.phantom_half == h),
            None => false,
        }
    }

    pub fn is_phantom_vertex(&self, v: usize) -> bool {
        self.kind == Kind::Haired
            && self.graph.valency(v) == 1
            && self.is_phantom_half(self.graph.vertices()[v][0])
    }

    /// Internal (non-phantom) vertex indices, in vertex order.
    pub fn internal_vertices(&self) -> Vec<usize> {
        (0..self.graph.n_vertices())
            .filter(|&v| !self.is_phantom_vertex(v))
            .collect()
    }

    pub fn n_in_hairs(&self) -> usize {
        self.hairs
            .as_ref()
            .map(|h| h.iter().filter(|x| x.kind == HairKind::In).count())
            .unwrap_or(0)
    }

    pub fn n_out_hairs(&self) -> usize {
        self.hairs
            .as_ref()
            .map(|h| h.iter().filter(|x| x.kind == HairKind::Out).count())
            .unwrap_or(0)
    }

    /// Whether the vertex-level digraph (loops included) has a directed
    /// cycle. Only meaningful for directed kinds.
    pub fn has_directed_cycle(&self) -> bool {
        let nv = self.graph.n_vertices();
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); nv];
        let mut indeg = vec![0usize; nv];
        for (e, _) in self.graph.edges().iter().enumerate() {
            let src = self.edge_source(e);
            let u = self.graph.vertex_of(src) as usize;
            let w = self.graph.vertex_of(self.graph.sigma1(src)) as usize;
            if u == w {
                return true;
            }
            adj[u].push(w as u32);
            indeg[w] += 1;
        }
        let mut queue: Vec<usize> = (0..nv).filter(|&v| indeg[v] == 0).collect();
        let mut done = 0;
        while let Some(v) = queue.pop() {
            done += 1;
            for &w in &adj[v] {
                indeg[w as usize] -= 1;
                if indeg[w as usize] == 0 {
                    queue.push(w as usize);
                }
            }
        }
        done != nv
    }

    /// Relabels half-edges by `rho` (old -> new), transporting all
    /// decorations. Labels are attached to orbits, so they follow them.
    pub fn relabel(&self, rho: &[u32]) -> Decorated {
        let graph = self.graph.relabel(rho);
        let dirs = self.dirs.as_ref().map(|d| {
            let mut nd = vec![0u32; d.len()];
            for &src in d {
                let nsrc = rho[src as usize];
                let e = graph.edge_of(nsrc) as usize;
                nd[e] = nsrc;
            }
            nd
        });
        let colors = self.colors.as_ref().map(|c| {
            let mut nc = vec![Color::Black; c.len()];
            for (v, cyc) in self.graph.vertices().iter().enumerate() {
                let nv = graph.vertex_of(rho[cyc[0] as usize]) as usize;
                nc[nv] = c[v];
            }
            nc
        });
        let blabels = self.blabels.as_ref().map(|bl| {
            let mut nb = vec![0u32; bl.len()];
            for (b, orb) in self.graph.boundaries().iter().enumerate() {
                let nbx = graph.boundary_of(rho[orb[0] as usize]) as usize;
                nb[nbx] = bl[b];
            }
            nb
        });
        let hairs = self.hairs.as_ref().map(|hs| {
            hs.iter()
                .map(|h| Hair {
                    phantom_half: rho[h.phantom_half as usize],
                    kind: h.kind,
                    label: h.label,
                })
                .collect()
        });
        Decorated {
            kind: self.kind,
            graph,
            dirs,
            colors,
            blabels,
            hairs,
        }
    }
}

/// All edge-direction assignments (one source half per edge) making the
/// vertex digraph acyclic. Empty if the graph has a loop.
pub fn acyclic_orientations(graph: &RibbonGraph) -> Vec<Vec<u32>> {
    let edges = graph.edges();
    for &(a, b) in &edges {
        if graph.vertex_of(a) == graph.vertex_of(b) {
            return Vec::new();
        }
    }
    let ne = edges.len();
    let mut out = Vec::new();
    'outer: for mask in 0u64..(1u64 << ne) {
        let dirs: Vec<u32> = edges
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| if mask >> i & 1 == 0 { a } else { b })
            .collect();
        // Kahn on the induced digraph
        let nv = graph.n_vertices();
        let mut indeg = vec![0usize; nv];
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); nv];
        for &src in &dirs {
            let u = graph.vertex_of(src) as usize;
            let w = graph.vertex_of(graph.sigma1(src)) as usize;
            adj[u].push(w as u32);
            indeg[w] += 1;
        }
        let mut queue: Vec<usize> = (0..nv).filter(|&v| indeg[v] == 0).collect();
        let mut done = 0;
        while let Some(v) = queue.pop() {
            done += 1;
            for &w in &adj[v] {
                indeg[w as usize] -= 1;
                if indeg[w as usize] == 0 {
                    queue.push(w as usize);
                }
            }
        }
        if done != nv {
            continue 'outer;
        }
        out.push(dirs);
    }
    out
}
