//! Connected ribbon graphs as a pair of permutations on half-edges.
//!
//! A ribbon graph on half-edges `0..n_half` is given by `sigma0` (whose
//! cycles are the vertices, in their cyclic order) and `sigma1` (a
//! fixed-point-free involution pairing half-edges into edges). Boundary
//! cycles are the orbits of `sigma0^{-1} . sigma1`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum GraphError {
    #[error("sigma0 and sigma1 must be permutations of 0..n_half of equal length")]
    NotPermutation,
    #[error("sigma1 must be an involution")]
    NotInvolution,
    #[error("sigma1 must be fixed-point-free")]
    HasFixedPoint,
    #[error("graph must be connected")]
    Disconnected,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RibbonGraph {
    sigma0: Vec<u32>,
    sigma1: Vec<u32>,
    #[serde(skip)]
    sigma0_inv: Vec<u32>,
    /// vertex index of each half-edge
    #[serde(skip)]
    vertex_of: Vec<u32>,
    /// vertex cycles, each rotated to its min half-edge, sorted by that min
    #[serde(skip)]
    vertices: Vec<Vec<u32>>,
    /// boundary index of each half-edge (orbit of sigma0^{-1} . sigma1)
    #[serde(skip)]
    boundary_of: Vec<u32>,
    /// boundary orbits, each rotated to its min half-edge, sorted by that min
    #[serde(skip)]
    boundaries: Vec<Vec<u32>>,
    /// edge index of each half-edge; edges sorted by their min half-edge
    #[serde(skip)]
    edge_of: Vec<u32>,
}

impl RibbonGraph {
    pub fn new(sigma0: Vec<u32>, sigma1: Vec<u32>) -> Result<Self, GraphError> {
        if sigma0.len() != sigma1.len()
            || !perm::is_permutation(&sigma0)
            || !perm::is_permutation(&sigma1)
        {
            return Err(GraphError::NotPermutation);
        }
        let n = sigma0.len();
        for h in 0..n {
            let p = sigma1[h] as usize;
            if p == h {
                return Err(GraphError::HasFixedPoint);
            }
            if sigma1[p] as usize != h {
                return Err(GraphError::NotInvolution);
            }
        }
        // connectivity over the group generated by sigma0, sigma1
        if n > 0 {
            let mut seen = vec![false; n];
            let mut stack = vec![0usize];
            seen[0] = true;
            let mut count = 1;
            while let Some(h) = stack.pop() {
                for nb in [sigma0[h] as usize, sigma1[h] as usize] {
                    if !seen[nb] {
                        seen[nb] = true;
                        count += 1;
                        stack.push(nb);
                    }
                }
            }
            if count != n {
                return Err(GraphError::Disconnected);
            }
        }
        let sigma0_inv = perm::invert(&sigma0);
        let vertices = perm::cycles(&sigma0);
        let mut vertex_of = vec![0u32; n];
        for (vi, cyc) in vertices.iter().enumerate() {
            for &h in cyc {
                vertex_of[h as usize] = vi as u32;
            }
        }
        // sigma_inf(h) = sigma0^{-1}(sigma1(h))
        let sigma_inf: Vec<u32> = (0..n).map(|h| sigma0_inv[sigma1[h] as usize]).collect();
        let boundaries = perm::cycles(&sigma_inf);
        let mut boundary_of = vec![0u32; n];
        for (bi, cyc) in boundaries.iter().enumerate() {
            for &h in cyc {
                boundary_of[h as usize] = bi as u32;
            }
        }
        let mut edge_of = vec![0u32; n];
        let mut e = 0u32;
        for h in 0..n {
            if h < sigma1[h] as usize {
                edge_of[h] = e;
                edge_of[sigma1[h] as usize] = e;
                e += 1;
            }
        }
        Ok(RibbonGraph {
            sigma0,
            sigma1,
            sigma0_inv,
            vertex_of,
            vertices,
            boundary_of,
            boundaries,
            edge_of,
        })
    }

    /// Rebuilds caches after deserialization.
    pub fn revalidate(sigma0: Vec<u32>, sigma1: Vec<u32>) -> Result<Self, GraphError> {
        Self::new(sigma0, sigma1)
    }

    pub fn n_half(&self) -> usize {
        self.sigma0.len()
    }

    pub fn sigma0(&self, h: u32) -> u32 {
        self.sigma0[h as usize]
    }

    pub fn sigma0_inv(&self, h: u32) -> u32 {
        self.sigma0_inv[h as usize]
    }

    pub fn sigma1(&self, h: u32) -> u32 {
        self.sigma1[h as usize]
    }

    pub fn sigma0_slice(&self) -> &[u32] {
        &self.sigma0
    }

    pub fn sigma1_slice(&self) -> &[u32] {
        &self.sigma1
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_edges(&self) -> usize {
        self.sigma0.len() / 2
    }

    pub fn n_boundaries(&self) -> usize {
        self.boundaries.len()
    }

    /// Vertex cycles, each rotated to its min half-edge, sorted by that min.
    pub fn vertices(&self) -> &[Vec<u32>] {
        &self.vertices
    }

    pub fn vertex_of(&self, h: u32) -> u32 {
        self.vertex_of[h as usize]
    }

    pub fn valency(&self, v: usize) -> usize {
        self.vertices[v].len()
    }

    /// Boundary orbits of `sigma0^{-1} . sigma1`, each rotated to its min
    /// half-edge, sorted by that min.
    pub fn boundaries(&self) -> &[Vec<u32>] {
        &self.boundaries
    }

    pub fn boundary_of(&self, h: u32) -> u32 {
        self.boundary_of[h as usize]
    }

    /// Edges as `(h, sigma1(h))` with `h < sigma1(h)`, sorted by `h`.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        (0..self.sigma0.len() as u32)
            .filter(|&h| h < self.sigma1[h as usize])
            .map(|h| (h, self.sigma1[h as usize]))
            .collect()
    }

    pub fn edge_of(&self, h: u32) -> u32 {
        self.edge_of[h as usize]
    }

    /// Genus from the Euler characteristic of the underlying surface:
    /// `2 - 2g = V - E + B`.
    pub fn genus(&self) -> i64 {
        let v = self.n_vertices() as i64;
        let e = self.n_edges() as i64;
        let b = self.n_boundaries() as i64;
        let two_g = 2 - (v - e + b);
        debug_assert!(two_g >= 0 && two_g % 2 == 0);
        two_g / 2
    }

    /// Corners of vertex `v` in cyclic order. The corner `(p, sigma0(p))`
    /// is identified by its first half-edge `p`.
    pub fn vertex_corners(&self, v: usize) -> &[u32] {
        &self.vertices[v]
    }

    /// Corners met along boundary `b`, in traversal order. The corner
    /// entering half-edge `q = sigma_inf(p)` is `(q, sigma0(q)) = (q, sigma1(p))`,
    /// so the corner sequence is the orbit itself.
    pub fn boundary_corners(&self, b: usize) -> &[u32] {
        &self.boundaries[b]
    }

    /// Relabels half-edges by `rho` (old -> new).
    pub fn relabel(&self, rho: &[u32]) -> RibbonGraph {
        let n = self.sigma0.len();
        debug_assert_eq!(rho.len(), n);
        let mut s0 = vec![0u32; n];
        let mut s1 = vec![0u32; n];
        for h in 0..n {
            s0[rho[h] as usize] = rho[self.sigma0[h] as usize];
            s1[rho[h] as usize] = rho[self.sigma1[h] as usize];
        }
        RibbonGraph::new(s0, s1).expect("relabeling preserves validity")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn theta_planar() -> RibbonGraph {
        // two trivalent vertices joined by three parallel edges, planar:
        // opposite rotations relative to the parallel pairing
        RibbonGraph::new(vec![1, 2, 0, 5, 3, 4], vec![3, 4, 5, 0, 1, 2]).unwrap()
    }

    fn theta_twisted() -> RibbonGraph {
        // same underlying graph, equal rotations: one boundary, genus 1
        RibbonGraph::new(vec![1, 2, 0, 4, 5, 3], vec![3, 4, 5, 0, 1, 2]).unwrap()
    }

    #[test]
    fn single_edge() {
        let g = RibbonGraph::new(vec![0, 1], vec![1, 0]).unwrap();
        assert_eq!(g.n_vertices(), 2);
        assert_eq!(g.n_edges(), 1);
        assert_eq!(g.n_boundaries(), 1);
        assert_eq!(g.genus(), 0);
    }

    #[test]
    fn planar_theta_has_three_boundaries() {
        let g = theta_planar();
        assert_eq!(g.n_vertices(), 2);
        assert_eq!(g.n_edges(), 3);
        assert_eq!(g.n_boundaries(), 3);
        assert_eq!(g.genus(), 0);
    }

    #[test]
    fn twisted_theta_has_one_boundary() {
        let g = theta_twisted();
        assert_eq!(g.n_vertices(), 2);
        assert_eq!(g.n_edges(), 3);
        assert_eq!(g.n_boundaries(), 1);
        assert_eq!(g.genus(), 1);
    }

    #[test]
    fn loop_graph_corners() {
        // one vertex with a single loop
        let g = RibbonGraph::new(vec![1, 0], vec![1, 0]).unwrap();
        assert_eq!(g.n_vertices(), 1);
        assert_eq!(g.n_boundaries(), 2);
        assert_eq!(g.genus(), 0);
        assert_eq!(g.vertex_corners(0), &[0, 1]);
        // each boundary passes through one corner
        assert_eq!(g.boundary_corners(0).len(), 1);
        assert_eq!(g.boundary_corners(1).len(), 1);
    }

    #[test]
    fn two_loop_rose() {
        // one 4-valent vertex, two loops, nested vs interleaved
        let nested = RibbonGraph::new(vec![1, 2, 3, 0], vec![1, 0, 3, 2]).unwrap();
        assert_eq!(nested.n_boundaries(), 3);
        assert_eq!(nested.genus(), 0);
        let interleaved = RibbonGraph::new(vec![1, 2, 3, 0], vec![2, 3, 0, 1]).unwrap();
        assert_eq!(interleaved.n_boundaries(), 1);
        assert_eq!(interleaved.genus(), 1);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            RibbonGraph::new(vec![0, 0], vec![1, 0]).unwrap_err(),
            GraphError::NotPermutation
        );
        assert_eq!(
            RibbonGraph::new(vec![0, 1, 2], vec![1, 2, 0]).unwrap_err(),
            GraphError::NotInvolution
        );
        assert_eq!(
            RibbonGraph::new(vec![1, 0], vec![0, 1]).unwrap_err(),
            GraphError::HasFixedPoint
        );
        assert_eq!(
            RibbonGraph::new(vec![0, 1, 2, 3], vec![1, 0, 3, 2]).unwrap_err(),
            GraphError::Disconnected
        );
    }

    #[test]
    fn relabel_preserves_counts() {
        let g = theta_twisted();
        let rho = vec![5, 3, 1, 0, 2, 4];
        let h = g.relabel(&rho);
        assert_eq!(h.n_vertices(), g.n_vertices());
        assert_eq!(h.n_boundaries(), g.n_boundaries());
        assert_eq!(h.genus(), g.genus());
    }

    /// Random fixed-point-free involutions on 2E points with a random
    /// sigma0; Euler characteristic must stay consistent on each
    /// connected build.
    fn arb_graph() -> impl Strategy<Value = Option<RibbonGraph>> {
        (1usize..=5)
            .prop_flat_map(|e| {
                let n = 2 * e;
                (Just(n), proptest::collection::vec(0..1000u32, n), proptest::collection::vec(0..1000u32, n))
            })
            .prop_map(|(n, k0, k1)| {
                // build sigma0 as a random permutation via sort keys
                let mut idx: Vec<u32> = (0..n as u32).collect();
                idx.sort_by_key(|&i| (k0[i as usize], i));
                let mut s0 = vec![0u32; n];
                for w in 0..n {
                    s0[idx[w] as usize] = idx[(w + 1) % n];
                }
                // random pairing via sort keys
                let mut idx1: Vec<u32> = (0..n as u32).collect();
                idx1.sort_by_key(|&i| (k1[i as usize], i));
                let mut s1 = vec![0u32; n];
                for c in idx1.chunks(2) {
                    s1[c[0] as usize] = c[1];
                    s1[c[1] as usize] = c[0];
                }
                RibbonGraph::new(s0, s1).ok()
            })
    }

    proptest! {
        #[test]
        fn euler_identity(g in arb_graph()) {
            if let Some(g) = g {
                let v = g.n_vertices() as i64;
                let e = g.n_edges() as i64;
                let b = g.n_boundaries() as i64;
                prop_assert_eq!(v - e + b, 2 - 2 * g.genus());
                prop_assert!(g.genus() >= 0);
                // corner counts agree
                let vc: usize = (0..g.n_vertices()).map(|v| g.vertex_corners(v).len()).sum();
                let bc: usize = (0..g.n_boundaries()).map(|b| g.boundary_corners(b).len()).sum();
                prop_assert_eq!(vc, g.n_half());
                prop_assert_eq!(bc, g.n_half());
            }
        }
    }
}
