//! Canonical forms via rooted traversals.
//!
//! A connected ribbon graph with a distinguished root half-edge has no
//! nontrivial automorphisms, and a deterministic traversal from the root
//! relabels it canonically: process half-edges in the order their new
//! labels were assigned, and for half-edge `x` assign the next free
//! labels to `sigma0(x)` then `sigma1(x)`. Minimizing the resulting code
//! over all roots gives a canonical form in O(n^2); the roots achieving
//! the minimum recover the automorphism group.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::decorated::{Color, Decorated, Hair, HairKind, Kind};
use crate::graph::RibbonGraph;
use crate::orient::{reference, sign_vs_reference, transport, Mode, Orientation};
use crate::perm::invert;

/// Traversal relabeling (old -> new) rooted at `root`.
pub fn traversal(sigma0: &[u32], sigma1: &[u32], root: u32) -> Vec<u32> {
    let n = sigma0.len();
    let mut rho = vec![u32::MAX; n];
    let mut order = Vec::with_capacity(n);
    rho[root as usize] = 0;
    order.push(root);
    let mut next = 1u32;
    let mut t = 0usize;
    while t < order.len() {
        let x = order[t] as usize;
        for y in [sigma0[x], sigma1[x]] {
            if rho[y as usize] == u32::MAX {
                rho[y as usize] = next;
                next += 1;
                order.push(y);
            }
        }
        t += 1;
    }
    debug_assert_eq!(next as usize, n, "graph must be connected");
    rho
}

/// Faithful code of a decorated graph under a fixed labeling: two
/// decorated graphs have equal codes iff they are identical.
fn encode(dec: &Decorated) -> Vec<u32> {
    let n = dec.graph.n_half();
    let mut code = Vec::with_capacity(3 * n);
    code.extend_from_slice(dec.graph.sigma0_slice());
    code.extend_from_slice(dec.graph.sigma1_slice());
    if let Some(dirs) = &dec.dirs {
        for (e, &(a, _)) in dec.graph.edges().iter().enumerate() {
            code.push((dirs[e] != a) as u32);
        }
    }
    if let Some(colors) = &dec.colors {
        code.extend(colors.iter().map(|&c| (c == Color::White) as u32));
    }
    if let Some(bl) = &dec.blabels {
        code.extend_from_slice(bl);
    }
    if let Some(hairs) = &dec.hairs {
        let mut per_half = vec![0u32; n];
        for h in hairs {
            per_half[h.phantom_half as usize] = match h.kind {
                HairKind::In => 2 * h.label,
                HairKind::Out => 2 * h.label + 1,
            };
        }
        code.extend(per_half);
    }
    code
}

pub struct Canon {
    /// canonically labeled representative
    pub canon: Decorated,
    /// relabeling old -> canon
    pub rho: Vec<u32>,
    /// automorphisms of `canon` as half-edge maps, identity included
    pub auts: Vec<Vec<u32>>,
}

pub fn canonical_form(dec: &Decorated) -> Canon {
    let n = dec.graph.n_half();
    assert!(n > 0);
    let s0 = dec.graph.sigma0_slice();
    let s1 = dec.graph.sigma1_slice();
    let mut best: Option<(Vec<u32>, Vec<u32>, Decorated)> = None; // (code, rho, relabeled)
    let mut tied: Vec<Vec<u32>> = Vec::new(); // rhos achieving the min
    for root in 0..n as u32 {
        let rho = traversal(s0, s1, root);
        let cand = dec.relabel(&rho);
        let code = encode(&cand);
        match &best {
            Some((bcode, _, _)) if *bcode < code => {}
            Some((bcode, _, _)) if *bcode == code => tied.push(rho),
            _ => {
                tied.clear();
                tied.push(rho.clone());
                best = Some((code, rho, cand));
            }
        }
    }
    let (_, rho_best, canon) = best.unwrap();
    let inv_best = invert(&rho_best);
    let auts = tied
        .iter()
        .map(|rho_r| {
            // aut = rho_r . rho_best^{-1} on canon labels
            (0..n).map(|h| rho_r[inv_best[h] as usize]).collect()
        })
        .collect();
    Canon {
        canon,
        rho: rho_best,
        auts,
    }
}

/// Serialized canonical key. The leading field tags the structural kind
/// so keys from different families never collide.
#[derive(Serialize, Deserialize)]
struct KeyRepr {
    k: char,
    s0: Vec<u32>,
    s1: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    d: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    c: Option<Vec<u8>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    b: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    h: Option<Vec<(u32, u8, u32)>>,
}

pub fn key_of(dec: &Decorated) -> Vec<u8> {
    let repr = KeyRepr {
        k: match dec.kind {
            Kind::Undirected => 'R',
            Kind::Directed => 'O',
            Kind::Mixed => 'M',
            Kind::Haired => 'P',
        },
        s0: dec.graph.sigma0_slice().to_vec(),
        s1: dec.graph.sigma1_slice().to_vec(),
        d: dec.dirs.clone(),
        c: dec
            .colors
            .as_ref()
            .map(|cs| cs.iter().map(|&c| (c == Color::White) as u8).collect()),
        b: dec.blabels.clone(),
        h: dec.hairs.as_ref().map(|hs| {
            hs.iter()
                .map(|h| (h.phantom_half, (h.kind == HairKind::Out) as u8, h.label))
                .collect()
        }),
    };
    serde_json::to_vec(&repr).expect("key serialization")
}

pub fn decode_key(key: &[u8]) -> Decorated {
    let repr: KeyRepr = serde_json::from_slice(key).expect("well-formed key");
    let kind = match repr.k {
        'R' => Kind::Undirected,
        'O' => Kind::Directed,
        'M' => Kind::Mixed,
        'P' => Kind::Haired,
        _ => panic!("unknown key tag"),
    };
    let graph = RibbonGraph::new(repr.s0, repr.s1).expect("valid key graph");
    let colors = repr.c.map(|cs| {
        cs.into_iter()
            .map(|c| if c == 0 { Color::Black } else { Color::White })
            .collect()
    });
    let hairs = repr.h.map(|hs| {
        hs.into_iter()
            .map(|(ph, k, l)| Hair {
                phantom_half: ph,
                kind: if k == 0 { HairKind::In } else { HairKind::Out },
                label: l,
            })
            .collect()
    });
    Decorated::new(kind, graph, repr.d, colors, repr.b, hairs).expect("valid key decorations")
}

/// A generator reduced to canonical form: `sign` relates the given
/// orientation to the canonical representative's reference orientation,
/// and `is_zero` marks graphs killed by an orientation-reversing
/// automorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphClass {
    pub key: Vec<u8>,
    pub sign: i8,
    pub is_zero: bool,
}

/// Whether some automorphism of the canonical representative reverses
/// the orientation, killing the generator.
pub fn is_killed(canon: &Canon, mode: &Mode) -> bool {
    let reference_or = reference(mode, &canon.canon);
    canon.auts.iter().any(|a| {
        let moved = transport(mode, &canon.canon, &canon.canon, a, &reference_or);
        sign_vs_reference(mode, &canon.canon, &moved) == -1
    })
}

pub fn canonical_class(dec: &Decorated, or: &Orientation, mode: &Mode) -> GraphClass {
    let canon = canonical_form(dec);
    let or_c = transport(mode, dec, &canon.canon, &canon.rho, or);
    let sign = sign_vs_reference(mode, &canon.canon, &or_c);
    GraphClass {
        key: key_of(&canon.canon),
        sign,
        is_zero: is_killed(&canon, mode),
    }
}

/// Convenience: canonical class of a generator equipped with its
/// reference orientation.
pub fn class_of_reference(dec: &Decorated, mode: &Mode) -> GraphClass {
    let r = reference(mode, dec);
    canonical_class(dec, &r, mode)
}

/// Coefficient helper: `sign` as a rational.
pub fn sign_rat(sign: i8) -> BigRational {
    BigRational::from_integer(sign.into())
}
