//! The graded (pre-)Lie algebra of one-boundary ribbon graphs and
//! quivers: boundary insertion, the pre-Lie product, the bracket, and
//! the differential as bracket with the one-edge graph.

use num_rational::BigRational;
use num_traits::One;

use crate::canon::{canonical_class, decode_key};
use crate::chain::ChainVector;
use crate::decorated::{Decorated, Kind};
use crate::family::{Family, FamilySpec};
use crate::graph::RibbonGraph;
use crate::orient::{comp_ids, Comp, Orientation};

/// The one-edge graph: two univalent vertices, degree 1. Directed for
/// the quiver family.
pub fn tau(spec: &FamilySpec) -> Decorated {
    let g = RibbonGraph::new(vec![0, 1], vec![1, 0]).unwrap();
    let dirs = match spec.family.kind() {
        Kind::Undirected => None,
        Kind::Directed => Some(vec![0]),
        _ => panic!("tau exists in the one-boundary families"),
    };
    Decorated::new(spec.family.kind(), g, dirs, None, None, None).unwrap()
}

/// All gluings of the one-boundary graph `g2` into vertex `v` of `g1`:
/// cyclic-order-preserving, winding-one maps from the half-edges of `v`
/// to the corners of the boundary of `g2`. There are
/// `c * C(c + k - 1, k - 1)` of them for a `k`-valent vertex and a
/// boundary with `c` corners.
///
/// Orientation transport: the glued graph keeps all half-edge ids of
/// `g1` (the halves of `v` survive, re-attached) and shifts those of
/// `g2` up, so edges concatenate in reference order; in the vertex
/// ordering, the first vertex of `g2` takes the slot of `v` and the
/// remaining ones are appended at the end.
pub fn insert_boundary(spec: &FamilySpec, g1: &Decorated, v: usize, g2: &Decorated) -> ChainVector {
    let mode = spec.mode();
    let mut out = ChainVector::new();
    for (dec, or) in raw_insertions(spec, g1, v, g2) {
        let class = canonical_class(&dec, &or, &mode);
        out.add_class(&class, BigRational::one());
    }
    out
}

/// The individual gluings of [`insert_boundary`], before canonical
/// merging, each with its transported orientation.
pub fn raw_insertions(
    spec: &FamilySpec,
    g1: &Decorated,
    v: usize,
    g2: &Decorated,
) -> Vec<(Decorated, Orientation)> {
    assert!(matches!(spec.family, Family::Rgc1 | Family::Orgc1));
    assert_eq!(g2.graph.n_boundaries(), 1, "g2 must have one boundary");
    let mode = spec.mode();
    let n1 = g1.graph.n_half();
    let n2 = g2.graph.n_half();
    let cyc = g1.graph.vertices()[v].clone();
    let k = cyc.len();
    let orbit = g2.graph.boundaries()[0].clone();
    let c = orbit.len();
    let mut out = Vec::new();
    // gaps d_0..d_{k-1} >= 0 with total c; the last one is implied
    let mut gaps = vec![0usize; k];
    enumerate_gaps(spec, g1, v, g2, &mode, &cyc, &orbit, &mut gaps, 0, c, n1, n2, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn enumerate_gaps(
    spec: &FamilySpec,
    g1: &Decorated,
    v: usize,
    g2: &Decorated,
    mode: &crate::orient::Mode,
    cyc: &[u32],
    orbit: &[u32],
    gaps: &mut Vec<usize>,
    t: usize,
    remaining: usize,
    n1: usize,
    n2: usize,
    out: &mut Vec<(Decorated, Orientation)>,
) {
    let k = cyc.len();
    let c = orbit.len();
    if t == k - 1 {
        gaps[k - 1] = remaining;
        for s in 0..c {
            glue_term(spec, g1, v, g2, mode, cyc, orbit, gaps, s, n1, n2, out);
        }
        return;
    }
    for d in 0..=remaining {
        gaps[t] = d;
        enumerate_gaps(spec, g1, v, g2, mode, cyc, orbit, gaps, t + 1, remaining - d, n1, n2, out);
    }
}

#[allow(clippy::too_many_arguments)]
fn glue_term(
    _spec: &FamilySpec,
    g1: &Decorated,
    v: usize,
    g2: &Decorated,
    mode: &crate::orient::Mode,
    cyc: &[u32],
    orbit: &[u32],
    gaps: &[usize],
    s: usize,
    n1: usize,
    n2: usize,
    out: &mut Vec<(Decorated, Orientation)>,
) {
    let k = cyc.len();
    let c = orbit.len();
    let n = n1 + n2;
    // corner (by orbit position) of each half of v
    let mut pos = vec![0usize; k];
    let mut acc = s;
    for t in 0..k {
        pos[t] = (c - acc % c) % c;
        acc += gaps[t];
    }
    // winding one: each corner is passed once, so the halves landing in
    // one corner form a single run, started where the previous gap was
    // positive; within the run they follow the vertex's cyclic order
    let mut runs: Vec<Vec<u32>> = vec![Vec::new(); c];
    // find a run start (some gap is positive since the total is c >= 1)
    let start = (0..k)
        .find(|&t| gaps[(t + k - 1) % k] > 0)
        .expect("total winding is positive");
    for i in 0..k {
        let t = (start + i) % k;
        runs[pos[t]].push(cyc[t]);
    }
    // build sigma0 of the glued graph
    let mut s0 = vec![0u32; n];
    for h in 0..n1 as u32 {
        if g1.graph.vertex_of(h) as usize != v {
            s0[h as usize] = g1.graph.sigma0(h);
        }
    }
    for x in 0..n2 as u32 {
        let xs = x + n1 as u32; // shifted
        let nxt = g2.graph.sigma0(x) + n1 as u32;
        // the run of the corner (x, sigma0(x)) is spliced in between
        let run = &runs[corner_pos(orbit, x)];
        if run.is_empty() {
            s0[xs as usize] = nxt;
        } else {
            s0[xs as usize] = run[0];
            for w in 0..run.len() - 1 {
                s0[run[w] as usize] = run[w + 1];
            }
            s0[*run.last().unwrap() as usize] = nxt;
        }
    }
    let mut s1 = vec![0u32; n];
    for h in 0..n1 as u32 {
        s1[h as usize] = g1.graph.sigma1(h);
    }
    for x in 0..n2 as u32 {
        s1[(x + n1 as u32) as usize] = g2.graph.sigma1(x) + n1 as u32;
    }
    let glued = RibbonGraph::new(s0, s1).expect("gluing keeps validity");
    assert_eq!(glued.n_boundaries(), 1, "gluing one-boundary graphs is one-boundary");
    let dirs = g1.dirs.as_ref().map(|d1| {
        // edges of the glued graph: all of g1's (ids unchanged), then
        // all of g2's (ids shifted); min-half order is preserved
        let d2 = g2.dirs.as_ref().expect("kinds match");
        let mut nd = d1.clone();
        nd.extend(d2.iter().map(|&x| x + n1 as u32));
        nd
    });
    let Ok(dec) = Decorated::new(g1.kind, glued, dirs, None, None, None) else {
        unreachable!("gluing acyclic quivers stays acyclic");
    };
    // orientation lists
    let lists = mode
        .comps
        .iter()
        .map(|&comp| match comp {
            Comp::Edges => comp_ids(Comp::Edges, &dec),
            Comp::Vertices => {
                let nv1 = g1.graph.n_vertices();
                let map1 = |u: usize| dec.graph.vertex_of(g1.graph.vertices()[u][0]);
                let map2 =
                    |u: usize| dec.graph.vertex_of(g2.graph.vertices()[u][0] + n1 as u32);
                let mut list: Vec<u32> = Vec::with_capacity(nv1 + g2.graph.n_vertices() - 1);
                for u in 0..nv1 {
                    if u == v {
                        list.push(map2(0));
                    } else {
                        list.push(map1(u));
                    }
                }
                for u in 1..g2.graph.n_vertices() {
                    list.push(map2(u));
                }
                list
            }
            _ => unreachable!("one-boundary modes"),
        })
        .collect();
    let dirs_or = mode
        .dir_signs
        .then(|| dec.graph.edges().iter().map(|&(x, _)| x).collect());
    let or = Orientation { lists, dirs: dirs_or };
    out.push((dec, or));
}

fn corner_pos(orbit: &[u32], x: u32) -> usize {
    orbit.iter().position(|&h| h == x).expect("half on the boundary")
}

/// The pre-Lie product: sum of boundary insertions of `g2` over all
/// vertices of `g1`.
pub fn pre_lie(spec: &FamilySpec, g1: &Decorated, g2: &Decorated) -> ChainVector {
    let mut out = ChainVector::new();
    for v in 0..g1.graph.n_vertices() {
        out.add(&insert_boundary(spec, g1, v, g2));
    }
    out
}

/// Bilinear extension of [`pre_lie`] to homogeneous chain vectors.
pub fn pre_lie_chain(spec: &FamilySpec, x: &ChainVector, y: &ChainVector) -> ChainVector {
    let mut out = ChainVector::new();
    for (kx, cx) in x.iter() {
        let gx = decode_key(kx);
        for (ky, cy) in y.iter() {
            let gy = decode_key(ky);
            out.add_scaled(&pre_lie(spec, &gx, &gy), &(cx * cy));
        }
    }
    out
}

/// The graded bracket `[x, y] = x . y - (-1)^{|x||y|} y . x` on
/// homogeneous chains of the given degrees.
pub fn bracket_chain(
    spec: &FamilySpec,
    x: &ChainVector,
    deg_x: i64,
    y: &ChainVector,
    deg_y: i64,
) -> ChainVector {
    let mut out = pre_lie_chain(spec, x, y);
    let koszul = if (deg_x * deg_y).rem_euclid(2) == 0 {
        -BigRational::one()
    } else {
        BigRational::one()
    };
    out.add_scaled(&pre_lie_chain(spec, y, x), &koszul);
    out
}

pub fn bracket(spec: &FamilySpec, x: &Decorated, y: &Decorated) -> ChainVector {
    let cx: ChainVector = [(crate::canon::key_of(x), BigRational::one())]
        .into_iter()
        .collect();
    let cy: ChainVector = [(crate::canon::key_of(y), BigRational::one())]
        .into_iter()
        .collect();
    bracket_chain(spec, &cx, spec.degree(x), &cy, spec.degree(y))
}

/// The differential of the one-boundary complexes as the bracket with
/// the one-edge graph. Univalent vertices produced by the two sides of
/// the bracket cancel, leaving exactly the vertex splittings.
pub fn rgc1_delta(spec: &FamilySpec, x: &Decorated) -> ChainVector {
    bracket(spec, &tau(spec), x)
}
