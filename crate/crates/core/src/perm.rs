//! Small helpers for permutations on `0..n` stored as `Vec<u32>`.

/// Checks that `p` is a permutation of `0..p.len()`.
pub fn is_permutation(p: &[u32]) -> bool {
    let n = p.len();
    let mut seen = vec![false; n];
    for &x in p {
        let x = x as usize;
        if x >= n || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// Inverse of a permutation.
pub fn invert(p: &[u32]) -> Vec<u32> {
    let mut inv = vec![0u32; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x as usize] = i as u32;
    }
    inv
}

/// Cycles of a permutation, each rotated to start at its minimum element,
/// sorted by that minimum.
pub fn cycles(p: &[u32]) -> Vec<Vec<u32>> {
    let n = p.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut cur = start as u32;
        loop {
            seen[cur as usize] = true;
            cyc.push(cur);
            cur = p[cur as usize];
            if cur as usize == start {
                break;
            }
        }
        out.push(cyc);
    }
    out
}

/// Parity of the permutation taking `list` to `0, 1, ..., n-1`: returns
/// `+1` for even, `-1` for odd. `list` must contain each of `0..n` once.
pub fn parity_vs_identity(list: &[u32]) -> i8 {
    let n = list.len();
    let mut pos = vec![u32::MAX; n];
    for (i, &x) in list.iter().enumerate() {
        debug_assert!(pos[x as usize] == u32::MAX, "duplicate element in parity list");
        pos[x as usize] = i as u32;
    }
    // count cycles
    let mut seen = vec![false; n];
    let mut sign = 1i8;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0usize;
        let mut cur = start;
        while !seen[cur] {
            seen[cur] = true;
            cur = pos[cur] as usize;
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_basics() {
        assert_eq!(parity_vs_identity(&[0, 1, 2]), 1);
        assert_eq!(parity_vs_identity(&[1, 0, 2]), -1);
        assert_eq!(parity_vs_identity(&[1, 2, 0]), 1);
        assert_eq!(parity_vs_identity(&[]), 1);
    }

    #[test]
    fn cycle_extraction() {
        let p = vec![1, 2, 0, 4, 3];
        assert_eq!(cycles(&p), vec![vec![0, 1, 2], vec![3, 4]]);
    }

    #[test]
    fn inverse_roundtrip() {
        let p = vec![2, 0, 1, 3];
        let inv = invert(&p);
        for i in 0..4 {
            assert_eq!(inv[p[i] as usize], i as u32);
        }
    }
}
