//! The graph complex families, their gradings and orientation modes.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decorated::{Color, Decorated, Kind};
use crate::orient::{Comp, Mode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// undirected ribbon graphs, labeled boundaries
    Rgc,
    /// acyclic directed ribbon graphs (ribbon quivers), labeled boundaries
    Orgc,
    /// one-boundary undirected ribbon graphs
    Rgc1,
    /// one-boundary ribbon quivers
    Orgc1,
    /// one-boundary ribbon quivers with black/white vertices
    Mixed,
    /// directed ribbon graphs with labeled in/out hairs
    Pcy,
}

impl Family {
    pub fn kind(self) -> Kind {
        match self {
            Family::Rgc | Family::Rgc1 => Kind::Undirected,
            Family::Orgc | Family::Orgc1 => Kind::Directed,
            Family::Mixed => Kind::Mixed,
            Family::Pcy => Kind::Haired,
        }
    }

    pub fn one_boundary(self) -> bool {
        matches!(self, Family::Rgc1 | Family::Orgc1 | Family::Mixed)
    }
}

/// Which sector of a family is being computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sector {
    /// fixed genus and number of labeled boundaries (Rgc, Orgc)
    Surface { g: u32, m: u32 },
    /// fixed genus, one unlabeled boundary (Rgc1, Orgc1, Mixed)
    OneBoundary { g: u32 },
    /// fixed numbers of incoming / outgoing hairs (Pcy)
    Hairs { p: u32, q: u32 },
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum FamilyError {
    #[error("degree formula for d=1 does not separate graded pieces by size")]
    InfiniteDegreePiece,
    #[error("sector does not match family")]
    SectorMismatch,
    #[error("parameters out of range")]
    BadParameters,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub d: i64,
    pub sector: Sector,
}

impl FamilySpec {
    pub fn new(family: Family, d: i64, sector: Sector) -> Result<Self, FamilyError> {
        let ok = match (family, sector) {
            (Family::Rgc | Family::Orgc, Sector::Surface { m, .. }) => m >= 1,
            (Family::Rgc1 | Family::Orgc1 | Family::Mixed, Sector::OneBoundary { .. }) => true,
            (Family::Pcy, Sector::Hairs { p, q }) => p >= 1 && q >= 1,
            _ => false,
        };
        if !ok {
            return Err(FamilyError::SectorMismatch);
        }
        if d == 1 && matches!(family, Family::Rgc | Family::Orgc) {
            return Err(FamilyError::InfiniteDegreePiece);
        }
        Ok(FamilySpec { family, d, sector })
    }

    pub fn mode(&self) -> Mode {
        mode_for(self.family, self.d)
    }

    /// Cohomological degree of a generator.
    pub fn degree(&self, dec: &Decorated) -> i64 {
        let d = self.d;
        match self.family {
            Family::Rgc | Family::Orgc | Family::Rgc1 | Family::Orgc1 => {
                let v = dec.graph.n_vertices() as i64;
                let e = dec.graph.n_edges() as i64;
                (1 - d) * e + d * v - d
            }
            Family::Mixed => {
                let colors = dec.colors.as_ref().expect("mixed generator");
                let nb = colors.iter().filter(|&&c| c == Color::Black).count() as i64;
                let nw = colors.len() as i64 - nb;
                let e = dec.graph.n_edges() as i64;
                (d + 1) * nb + d * nw - d * e
            }
            Family::Pcy => {
                let v = dec.internal_vertices().len() as i64;
                let hairs = dec.hairs.as_ref().expect("haired generator").len() as i64;
                // internal edges: total edges minus hair edges
                let e = dec.graph.n_edges() as i64 - hairs;
                let q = dec.n_out_hairs() as i64;
                let p = dec.n_in_hairs() as i64;
                d * v + (1 - d) * e + (2 - d) * q - p
            }
        }
    }
}

/// Orientation mode per family and parity of `d`.
pub fn mode_for(family: Family, d: i64) -> Mode {
    let even = d.rem_euclid(2) == 0;
    match (family, even) {
        (Family::Rgc | Family::Rgc1, true) => Mode {
            comps: vec![Comp::Edges],
            dir_signs: false,
        },
        (Family::Rgc | Family::Rgc1, false) => Mode {
            comps: vec![Comp::Vertices],
            dir_signs: true,
        },
        (Family::Orgc | Family::Orgc1, true) => Mode {
            comps: vec![Comp::Edges],
            dir_signs: false,
        },
        (Family::Orgc | Family::Orgc1, false) => Mode {
            comps: vec![Comp::Vertices],
            dir_signs: false,
        },
        (Family::Mixed, true) => Mode {
            comps: vec![Comp::BlackVertices],
            dir_signs: false,
        },
        (Family::Mixed, false) => Mode {
            comps: vec![Comp::WhiteVertices, Comp::Edges],
            dir_signs: false,
        },
        (Family::Pcy, true) => Mode {
            comps: vec![Comp::Edges, Comp::InHairs],
            dir_signs: false,
        },
        (Family::Pcy, false) => Mode {
            comps: vec![Comp::Vertices, Comp::AllHairs],
            dir_signs: false,
        },
    }
}

/// A size class of graphs: `v` internal vertices, `e` internal edges.
/// `degree` is the cohomological degree shared by the class when the
/// family grades by size alone; for `Mixed` it is the degree of the
/// all-white coloring (colorings span `degree ..= degree + v`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Support {
    pub v: usize,
    pub e: usize,
    pub degree: i64,
}

/// All size classes with `e <= max_edges` compatible with the sector's
/// Euler arithmetic and the valency constraints (internal vertices have
/// valency >= 3 for Pcy; otherwise valency >= 2 with at least one
/// vertex of valency >= 3).
pub fn supports(spec: &FamilySpec, max_edges: usize) -> Vec<Support> {
    let d = spec.d;
    let mut out = Vec::new();
    match spec.sector {
        Sector::Surface { g, .. } | Sector::OneBoundary { g } => {
            let m = match spec.sector {
                Sector::Surface { m, .. } => m as i64,
                _ => 1,
            };
            let c = 2 * (g as i64) - 2 + m; // e - v
            for e in 1..=max_edges as i64 {
                let v = e - c;
                if v < 1 {
                    continue;
                }
                // sum of valencies 2e with all >= 2 and one >= 3
                if 2 * e < 2 * v + 1 {
                    continue;
                }
                let degree = match spec.family {
                    // all-white coloring: (d+1)*0 + d*v - d*e
                    Family::Mixed => d * v - d * e,
                    _ => (1 - d) * e + d * v - d,
                };
                out.push(Support {
                    v: v as usize,
                    e: e as usize,
                    degree,
                });
            }
        }
        Sector::Hairs { p, q } => {
            let (p, q) = (p as i64, q as i64);
            for e in 0..=max_edges as i64 {
                for v in 1..=(e + 1) {
                    if e < v - 1 {
                        continue; // core cannot be connected
                    }
                    // internal valencies >= 3: 2e + p + q >= 3v
                    if 2 * e + p + q < 3 * v {
                        continue;
                    }
                    let degree = d * v + (1 - d) * e + (2 - d) * q - p;
                    out.push(Support {
                        v: v as usize,
                        e: e as usize,
                        degree,
                    });
                }
            }
        }
    }
    out
}
