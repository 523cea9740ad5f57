//! Properadic composition of haired ribbon quivers: gluing outgoing
//! hairs of one generator to incoming hairs of another so that each
//! matched pair becomes an internal directed edge.

use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

use crate::canon::{canonical_class, decode_key};
use crate::chain::ChainVector;
use crate::decorated::{Decorated, Hair, HairKind, Kind};
use crate::family::{Family, FamilySpec};
use crate::graph::RibbonGraph;
use crate::orient::{Comp, Orientation};
use crate::perm::parity_vs_identity;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum ComposeError {
    #[error("matching must be nonempty and injective on both sides")]
    BadMatching,
    #[error("matched hair is missing or has the wrong direction")]
    TypeMismatch,
}

/// A matched pair: outgoing hair label of the second factor glued onto
/// an incoming hair label of the first factor.
pub type Matching = [(u32, u32)];

/// Glues `g2` into `g1` along the matching `(out label of g2, in label
/// of g1)`. Each matched pair of hairs becomes one internal edge
/// directed from the core of `g2` to the core of `g1`; the remaining
/// hairs are relabeled order-preservingly, first factor first.
///
/// Returns the composite together with its transported orientation and
/// an extraction sign: the parity of rearranging the concatenated
/// orientation words of the factors into the word of the composite
/// (matched incoming hairs become the new edges, in ascending label
/// order; in the odd-degree convention the matched pairs are pulled to
/// the front and contracted there).
pub fn compose(
    spec: &FamilySpec,
    g1: &Decorated,
    matching: &Matching,
    g2: &Decorated,
) -> Result<(Decorated, Orientation, BigRational), ComposeError> {
    assert_eq!(spec.family, Family::Pcy);
    assert_eq!(g1.kind, Kind::Haired);
    assert_eq!(g2.kind, Kind::Haired);
    if matching.is_empty() {
        return Err(ComposeError::BadMatching);
    }
    for (i, &(o, inn)) in matching.iter().enumerate() {
        for &(o2, inn2) in &matching[..i] {
            if o == o2 || inn == inn2 {
                return Err(ComposeError::BadMatching);
            }
        }
    }
    let hairs1 = g1.hairs.as_ref().expect("haired");
    let hairs2 = g2.hairs.as_ref().expect("haired");
    let find = |hs: &[Hair], kind: HairKind, label: u32| {
        hs.iter()
            .find(|h| h.kind == kind && h.label == label)
            .copied()
            .ok_or(ComposeError::TypeMismatch)
    };
    let n1 = g1.graph.n_half() as u32;
    let n2 = g2.graph.n_half() as u32;
    let n = (n1 + n2) as usize;
    // matched pairs sorted by the in-label of g1; this is the order in
    // which the new edges enter the orientation word
    let mut pairs: Vec<(Hair, Hair)> = Vec::with_capacity(matching.len());
    for &(o, inn) in matching {
        pairs.push((find(hairs2, HairKind::Out, o)?, find(hairs1, HairKind::In, inn)?));
    }
    pairs.sort_by_key(|&(_, h1)| h1.label);
    // combined permutations, then rewire the matched hairs and drop
    // their phantom halves
    let mut s0 = vec![0u32; n];
    let mut s1 = vec![0u32; n];
    for h in 0..n1 {
        s0[h as usize] = g1.graph.sigma0(h);
        s1[h as usize] = g1.graph.sigma1(h);
    }
    for h in 0..n2 {
        s0[(h + n1) as usize] = g2.graph.sigma0(h) + n1;
        s1[(h + n1) as usize] = g2.graph.sigma1(h) + n1;
    }
    let mut removed = vec![false; n];
    for &(h2, h1) in &pairs {
        let ph1 = h1.phantom_half;
        let ph2 = h2.phantom_half + n1;
        let ch1 = g1.graph.sigma1(h1.phantom_half);
        let ch2 = g2.graph.sigma1(h2.phantom_half) + n1;
        s1[ch1 as usize] = ch2;
        s1[ch2 as usize] = ch1;
        removed[ph1 as usize] = true;
        removed[ph2 as usize] = true;
    }
    // compacting relabel (monotone on the survivors)
    let mut map = vec![u32::MAX; n];
    let mut next = 0u32;
    for h in 0..n {
        if !removed[h] {
            map[h] = next;
            next += 1;
        }
    }
    let mut ns0 = vec![0u32; next as usize];
    let mut ns1 = vec![0u32; next as usize];
    for h in 0..n {
        if !removed[h] {
            ns0[map[h] as usize] = map[s0[h] as usize];
            ns1[map[h] as usize] = map[s1[h] as usize];
        }
    }
    let graph = RibbonGraph::new(ns0, ns1).expect("gluing keeps validity");
    // directions: per new edge (min-half order), the source half
    let mut src_old = vec![false; n];
    for (e, &(a, _)) in g1.graph.edges().iter().enumerate() {
        let s = g1.edge_source(e);
        src_old[s as usize] = true;
        let _ = a;
    }
    for (e, _) in g2.graph.edges().iter().enumerate() {
        let s = g2.edge_source(e) + n1;
        src_old[s as usize] = true;
    }
    for &(h2, h1) in &pairs {
        // the merged edge points from the core of g2 into the core of g1
        src_old[(g2.graph.sigma1(h2.phantom_half) + n1) as usize] = true;
        src_old[g1.graph.sigma1(h1.phantom_half) as usize] = false;
    }
    let dirs: Vec<u32> = graph
        .edges()
        .iter()
        .map(|&(a, b)| {
            let oa = (0..n as u32).find(|&h| map[h as usize] == a).unwrap();
            if src_old[oa as usize] {
                a
            } else {
                b
            }
        })
        .collect();
    // surviving hairs, first factor first within each kind
    let matched_in: Vec<u32> = pairs.iter().map(|&(_, h1)| h1.label).collect();
    let matched_out: Vec<u32> = pairs.iter().map(|&(h2, _)| h2.label).collect();
    let mut new_hairs: Vec<Hair> = Vec::new();
    // old hair -> new id in the AllHairs positional scheme, filled below
    let mut in_seq: Vec<(u32, u32)> = Vec::new(); // (owner 1|2, old label)
    let mut out_seq: Vec<(u32, u32)> = Vec::new();
    for h in hairs1.iter().filter(|h| h.kind == HairKind::In) {
        if !matched_in.contains(&h.label) {
            in_seq.push((1, h.label));
        }
    }
    for h in hairs2.iter().filter(|h| h.kind == HairKind::In) {
        in_seq.push((2, h.label));
    }
    for h in hairs1.iter().filter(|h| h.kind == HairKind::Out) {
        out_seq.push((1, h.label));
    }
    for h in hairs2.iter().filter(|h| h.kind == HairKind::Out) {
        if !matched_out.contains(&h.label) {
            out_seq.push((2, h.label));
        }
    }
    let new_in_label = |owner: u32, label: u32| {
        in_seq.iter().position(|&x| x == (owner, label)).unwrap() as u32 + 1
    };
    let new_out_label = |owner: u32, label: u32| {
        out_seq.iter().position(|&x| x == (owner, label)).unwrap() as u32 + 1
    };
    for (owner, hs, shift) in [(1u32, hairs1, 0u32), (2, hairs2, n1)] {
        for h in hs {
            let relevant = match h.kind {
                HairKind::In => owner == 2 || !matched_in.contains(&h.label),
                HairKind::Out => owner == 1 || !matched_out.contains(&h.label),
            };
            if relevant {
                new_hairs.push(Hair {
                    phantom_half: map[(h.phantom_half + shift) as usize],
                    kind: h.kind,
                    label: match h.kind {
                        HairKind::In => new_in_label(owner, h.label),
                        HairKind::Out => new_out_label(owner, h.label),
                    },
                });
            }
        }
    }
    new_hairs.sort_by_key(|h| (h.kind == HairKind::Out, h.label));
    let dec = Decorated::new(Kind::Haired, graph, Some(dirs), None, None, Some(new_hairs))
        .expect("composite is a valid haired quiver");
    debug_assert!(!dec.has_directed_cycle());
    debug_assert_eq!(
        spec.degree(&dec),
        spec.degree(g1) + spec.degree(g2),
        "composition preserves total degree"
    );
    let (or, sign) = composite_orientation(spec, g1, g2, &pairs, &dec, &map, n1);
    Ok((dec, or, sign))
}

/// Orientation of the composite and the parity of extracting the
/// matched generators from the concatenated orientation words.
fn composite_orientation(
    spec: &FamilySpec,
    g1: &Decorated,
    g2: &Decorated,
    pairs: &[(Hair, Hair)],
    dec: &Decorated,
    map: &[u32],
    n1: u32,
) -> (Orientation, BigRational) {
    let mode = spec.mode();
    let hairs1 = g1.hairs.as_ref().unwrap();
    let hairs2 = g2.hairs.as_ref().unwrap();
    let matched_in: Vec<u32> = pairs.iter().map(|&(_, h1)| h1.label).collect();
    let matched_out: Vec<u32> = pairs.iter().map(|&(h2, _)| h2.label).collect();
    // new edge id of an old internal edge: locate by a transported half
    let edge_id = |old_half: u32| dec.graph.edge_of(map[old_half as usize]) as u32;
    let internal_edge_halves = |g: &Decorated, shift: u32| -> Vec<u32> {
        g.graph
            .edges()
            .iter()
            .filter(|&&(a, b)| !g.is_phantom_half(a) && !g.is_phantom_half(b))
            .map(|&(a, _)| a + shift)
            .collect()
    };
    let e1 = internal_edge_halves(g1, 0);
    let e2 = internal_edge_halves(g2, n1);
    let merged: Vec<u32> = pairs
        .iter()
        .map(|&(_, h1)| g1.graph.sigma1(h1.phantom_half))
        .collect();
    // positional ids of the composite's hairs follow the new labels
    let p_new = dec.n_in_hairs() as u32;
    let new_hair_pos = |kind: HairKind, owner: u32, label: u32| -> u32 {
        let h = dec
            .hairs
            .as_ref()
            .unwrap()
            .iter()
            .find(|h| {
                h.kind == kind && {
                    // recover the (owner, old label) of this new hair by
                    // matching phantom halves
                    let src = (owner, label);
                    let old = match owner {
                        1 => hairs1
                            .iter()
                            .find(|o| o.kind == kind && o.label == src.1)
                            .map(|o| map[o.phantom_half as usize]),
                        _ => hairs2
                            .iter()
                            .find(|o| o.kind == kind && o.label == src.1)
                            .map(|o| map[(o.phantom_half + n1) as usize]),
                    };
                    old == Some(h.phantom_half)
                }
            })
            .expect("surviving hair");
        match kind {
            HairKind::In => h.label - 1,
            HairKind::Out => p_new + h.label - 1,
        }
    };
    let lists: Vec<Vec<u32>> = mode
        .comps
        .iter()
        .map(|&comp| match comp {
            Comp::Edges => {
                let mut list: Vec<u32> = e1.iter().map(|&h| edge_id(h)).collect();
                list.extend(merged.iter().map(|&h| edge_id(h)));
                list.extend(e2.iter().map(|&h| edge_id(h)));
                list
            }
            Comp::Vertices => {
                let mut list: Vec<u32> = Vec::new();
                for &v in &g1.internal_vertices() {
                    list.push(dec.graph.vertex_of(map[g1.graph.vertices()[v][0] as usize]));
                }
                for &v in &g2.internal_vertices() {
                    list.push(
                        dec.graph
                            .vertex_of(map[(g2.graph.vertices()[v][0] + n1) as usize]),
                    );
                }
                list
            }
            Comp::InHairs => {
                let mut list: Vec<u32> = Vec::new();
                for h in hairs1.iter().filter(|h| h.kind == HairKind::In) {
                    if !matched_in.contains(&h.label) {
                        list.push(new_hair_pos(HairKind::In, 1, h.label));
                    }
                }
                for h in hairs2.iter().filter(|h| h.kind == HairKind::In) {
                    list.push(new_hair_pos(HairKind::In, 2, h.label));
                }
                list
            }
            Comp::AllHairs => {
                let mut list: Vec<u32> = Vec::new();
                for h in hairs1 {
                    let keep = h.kind == HairKind::Out || !matched_in.contains(&h.label);
                    if keep {
                        list.push(new_hair_pos(h.kind, 1, h.label));
                    }
                }
                for h in hairs2 {
                    let keep = h.kind == HairKind::In || !matched_out.contains(&h.label);
                    if keep {
                        list.push(new_hair_pos(h.kind, 2, h.label));
                    }
                }
                list
            }
            _ => unreachable!("haired modes"),
        })
        .collect();
    let sign = extraction_sign(&mode.comps, g1, g2, &matched_in, &matched_out);
    (Orientation { lists, dirs: None }, sign)
}

/// Parity of rearranging the concatenated orientation words of the two
/// factors into the composite's word. Tokens are indexed in the start
/// order `components(g1) ++ components(g2)`; the target order pulls
/// each matched incoming hair to where its merged edge sits (even
/// convention) or each matched pair to the front (odd convention).
fn extraction_sign(
    comps: &[Comp],
    g1: &Decorated,
    g2: &Decorated,
    matched_in: &[u32],
    matched_out: &[u32],
) -> BigRational {
    let hairs1 = g1.hairs.as_ref().unwrap();
    let hairs2 = g2.hairs.as_ref().unwrap();
    // token numbering in start order: for each factor, each component's
    // items consecutively
    let counts = |g: &Decorated| -> Vec<usize> {
        comps
            .iter()
            .map(|&c| match c {
                Comp::Edges => {
                    g.graph
                        .edges()
                        .iter()
                        .filter(|&&(a, b)| !g.is_phantom_half(a) && !g.is_phantom_half(b))
                        .count()
                }
                Comp::Vertices => g.internal_vertices().len(),
                Comp::InHairs => g.n_in_hairs(),
                Comp::AllHairs => g.n_in_hairs() + g.n_out_hairs(),
                _ => unreachable!(),
            })
            .collect()
    };
    let c1 = counts(g1);
    let c2 = counts(g2);
    let offset = |cs: &[usize], i: usize, base: usize| -> usize {
        base + cs[..i].iter().sum::<usize>()
    };
    let base2: usize = c1.iter().sum();
    // start-order token of component i, item j of either factor
    let tok1 = |i: usize, j: usize| offset(&c1, i, 0) + j;
    let tok2 = |i: usize, j: usize| offset(&c2, i, base2) + j;
    // item index of a hair within its component word
    let hair_item = |hs: &[Hair], comp: Comp, kind: HairKind, label: u32| -> usize {
        match comp {
            Comp::InHairs => (label - 1) as usize,
            Comp::AllHairs => hs
                .iter()
                .position(|h| h.kind == kind && h.label == label)
                .unwrap(),
            _ => unreachable!(),
        }
    };
    let mut target: Vec<u32> = Vec::new();
    if comps.contains(&Comp::Edges) {
        // even convention: [E1, merged (was matched in-hairs of g1,
        // ascending label), E2, unmatched in-hairs of g1, in-hairs of g2]
        let (ie, ih) = (
            comps.iter().position(|&c| c == Comp::Edges).unwrap(),
            comps.iter().position(|&c| c == Comp::InHairs).unwrap(),
        );
        for j in 0..c1[ie] {
            target.push(tok1(ie, j) as u32);
        }
        let mut asc = matched_in.to_vec();
        asc.sort_unstable();
        for &l in &asc {
            target.push(tok1(ih, hair_item(hairs1, Comp::InHairs, HairKind::In, l)) as u32);
        }
        for j in 0..c2[ie] {
            target.push(tok2(ie, j) as u32);
        }
        for h in hairs1.iter().filter(|h| h.kind == HairKind::In) {
            if !matched_in.contains(&h.label) {
                target.push(tok1(ih, hair_item(hairs1, Comp::InHairs, HairKind::In, h.label)) as u32);
            }
        }
        for j in 0..c2[ih] {
            target.push(tok2(ih, j) as u32);
        }
    } else {
        // odd convention: matched pairs (in of g1, out of g2) pulled to
        // the front in ascending in-label order, then [V1, V2,
        // surviving hairs of g1, surviving hairs of g2]
        let (iv, ih) = (
            comps.iter().position(|&c| c == Comp::Vertices).unwrap(),
            comps.iter().position(|&c| c == Comp::AllHairs).unwrap(),
        );
        let mut asc: Vec<(u32, u32)> = matched_in
            .iter()
            .copied()
            .zip(matched_out.iter().copied())
            .collect();
        asc.sort_unstable();
        for &(l_in, l_out) in &asc {
            target.push(tok1(ih, hair_item(hairs1, Comp::AllHairs, HairKind::In, l_in)) as u32);
            target.push(tok2(ih, hair_item(hairs2, Comp::AllHairs, HairKind::Out, l_out)) as u32);
        }
        for j in 0..c1[iv] {
            target.push(tok1(iv, j) as u32);
        }
        for j in 0..c2[iv] {
            target.push(tok2(iv, j) as u32);
        }
        for h in hairs1 {
            if h.kind == HairKind::Out || !matched_in.contains(&h.label) {
                target.push(tok1(ih, hair_item(hairs1, Comp::AllHairs, h.kind, h.label)) as u32);
            }
        }
        for h in hairs2 {
            if h.kind == HairKind::In || !matched_out.contains(&h.label) {
                target.push(tok2(ih, hair_item(hairs2, Comp::AllHairs, h.kind, h.label)) as u32);
            }
        }
    }
    if parity_vs_identity(&target) >= 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

/// [`compose`] as a canonical chain-vector term.
pub fn compose_class(
    spec: &FamilySpec,
    g1: &Decorated,
    matching: &Matching,
    g2: &Decorated,
) -> Result<ChainVector, ComposeError> {
    let (dec, or, sign) = compose(spec, g1, matching, g2)?;
    let mut out = ChainVector::new();
    let class = canonical_class(&dec, &or, &spec.mode());
    out.add_class(&class, sign);
    Ok(out)
}

/// Bilinear extension of [`compose_class`] over homogeneous chains.
pub fn compose_chain(
    spec: &FamilySpec,
    x: &ChainVector,
    matching: &Matching,
    y: &ChainVector,
) -> Result<ChainVector, ComposeError> {
    let mut out = ChainVector::new();
    for (kx, cx) in x.iter() {
        let gx = decode_key(kx);
        for (ky, cy) in y.iter() {
            let gy = decode_key(ky);
            out.add_scaled(&compose_class(spec, &gx, matching, &gy)?, &(cx * cy));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::key_of;
    use crate::diff::split_vertex_terms;
    use crate::enumerate::{generators, is_pcy_generator};
    use crate::family::{supports, Sector};
    use rand::seq::SliceRandom;
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;

    fn spec_pq(d: i64, p: u32, q: u32) -> FamilySpec {
        FamilySpec::new(Family::Pcy, d, Sector::Hairs { p, q }).unwrap()
    }

    /// all generators with at most `max_v` internal vertices
    fn gen_pool(d: i64, p: u32, q: u32, max_v: usize, max_e: usize) -> Vec<(Decorated, i64)> {
        let s = spec_pq(d, p, q);
        let mut out = Vec::new();
        for sup in supports(&s, max_e) {
            if sup.v <= max_v {
                out.extend(generators(&s, &sup));
            }
        }
        out
    }

    fn chain_of(dec: &Decorated) -> ChainVector {
        [(key_of(dec), BigRational::one())].into_iter().collect()
    }

    #[test]
    fn minimal_corolla_has_zero_differential() {
        // a single trivalent vertex cannot split into two vertices of
        // valency >= 3, so the differential of any corolla with three
        // legs vanishes in the quotient
        for d in [2i64, 3] {
            for (p, q) in [(1u32, 2u32), (2, 1)] {
                for (g, _) in gen_pool(d, p, q, 1, 0) {
                    let s = spec_pq(d, p, q);
                    assert!(split_vertex_terms(&s, &g).is_zero());
                }
            }
        }
    }

    #[test]
    fn single_gluing_example() {
        let d = 2;
        // out-hair of a one-in/two-out corolla onto the in-hair of a
        // two-in/one-out corolla
        let top = gen_pool(d, 2, 1, 1, 0);
        let bot = gen_pool(d, 1, 2, 1, 0);
        assert!(!top.is_empty() && !bot.is_empty());
        let s = spec_pq(d, 2, 2);
        let mut seen = false;
        for (g1, d1) in &top {
            for (g2, d2) in &bot {
                let (dec, _, _) = compose(&s, g1, &[(1, 1)], g2).unwrap();
                assert_eq!(dec.internal_vertices().len(), 2);
                assert!(!dec.has_directed_cycle());
                assert!(is_pcy_generator(&dec));
                assert_eq!(s.degree(&dec), d1 + d2);
                seen = true;
            }
        }
        assert!(seen);
    }

    #[test]
    fn bad_matchings_are_rejected() {
        let s = spec_pq(2, 2, 1);
        let g = &gen_pool(2, 2, 1, 1, 0)[0].0;
        assert_eq!(compose(&s, g, &[], g).unwrap_err(), ComposeError::BadMatching);
        assert_eq!(
            compose(&s, g, &[(1, 1), (1, 2)], g).unwrap_err(),
            ComposeError::BadMatching
        );
        // the (2,1) corolla has a single out-hair, so label 2 is absent
        assert_eq!(
            compose(&s, g, &[(2, 1)], g).unwrap_err(),
            ComposeError::TypeMismatch
        );
    }

    #[test]
    fn composition_leibniz_rule() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x9c1d);
        leibniz_sample(&mut rng, 30);
    }

    fn leibniz_sample(rng: &mut impl Rng, count: usize) {
        // pools of left factors (need an in-hair) and right factors
        // (need an out-hair), up to two internal vertices
        for d in [2i64, 3] {
            let mut lefts = Vec::new();
            let mut rights = Vec::new();
            for p in 1..=3u32 {
                for q in 1..=3u32 {
                    if p + q <= 4 {
                        let pool = gen_pool(d, p, q, 2, 2);
                        lefts.extend(pool.iter().cloned());
                        rights.extend(pool.into_iter());
                    }
                }
            }
            let mut done = 0usize;
            while done < count {
                let (x, dx) = lefts.choose(rng).unwrap();
                let (y, dy) = rights.choose(rng).unwrap();
                let p1 = x.n_in_hairs() as u32;
                let q2 = y.n_out_hairs() as u32;
                let r = 1 + rng.gen_range(0..=(p1.min(q2) - 1));
                let matching: Vec<(u32, u32)> =
                    (1..=r).map(|i| (i, i)).collect();
                let s = spec_pq(d, 1, 1); // sector is irrelevant to the maps
                let lhs = {
                    let c = compose_chain(&s, &chain_of(x), &matching, &chain_of(y)).unwrap();
                    crate::diff::delta_chain(&s, &c)
                };
                let mut rhs = compose_chain(
                    &s,
                    &split_vertex_terms(&s, x),
                    &matching,
                    &chain_of(y),
                )
                .unwrap();
                let koszul = if dx.rem_euclid(2) == 0 {
                    BigRational::one()
                } else {
                    -BigRational::one()
                };
                let t2 = compose_chain(
                    &s,
                    &chain_of(x),
                    &matching,
                    &split_vertex_terms(&s, y),
                )
                .unwrap();
                rhs.add_scaled(&t2, &koszul);
                let mut diff = lhs;
                diff.add_scaled(&rhs, &-BigRational::one());
                assert!(
                    diff.is_zero(),
                    "leibniz fails for d={d} degrees ({dx},{dy}) matching {matching:?}"
                );
                done += 1;
                let _ = dy;
            }
        }
    }
}
