//! Isomorphism testing, automorphisms, orbits, and canonical forms for
//! edge-colored digraphs.
//!
//! Everything here is exact backtracking over vertex bijections, pruned by
//! per-color degree signatures. That is plenty for the vertex counts this
//! crate targets; there is no partition-refinement engine underneath.

use std::cmp::Ordering;

use super::ColoredDigraph;

/// Per-vertex invariant: for each color, (out-degree, in-degree, has-loop).
type Sig = Vec<(u32, u32, u32)>;

fn signatures(g: &ColoredDigraph) -> Vec<Sig> {
    let n = g.n();
    let mut sigs = vec![vec![(0u32, 0u32, 0u32); g.colors()]; n];
    for u in 0..n {
        for v in 0..n {
            if let Some(c) = g.color_of(u, v) {
                sigs[u][c].0 += 1;
                sigs[v][c].1 += 1;
                if u == v {
                    sigs[u][c].2 = 1;
                }
            }
        }
    }
    sigs
}

/// Shared backtracking core: extends a partial vertex mapping `a → b` in
/// ascending vertex order, trying candidate images in ascending order, so the
/// first complete mapping found is the lexicographically least one.
///
/// `on_found` receives each complete mapping; returning `true` stops the
/// search.
fn search<F>(a: &ColoredDigraph, b: &ColoredDigraph, seed: &[(usize, usize)], on_found: &mut F) -> bool
where
    F: FnMut(&[usize]) -> bool,
{
    let n = a.n();
    if n != b.n() || a.colors() != b.colors() {
        return false;
    }
    // Quick invariant rejections.
    for c in 0..a.colors() {
        if a.arcs_of_color(c).len() != b.arcs_of_color(c).len() {
            return false;
        }
    }
    let sig_a = signatures(a);
    let sig_b = signatures(b);
    {
        let mut sa = sig_a.clone();
        let mut sb = sig_b.clone();
        sa.sort();
        sb.sort();
        if sa != sb {
            return false;
        }
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for &(u, v) in seed {
        if sig_a[u] != sig_b[v] || used[v] || map[u] != usize::MAX {
            return false;
        }
        map[u] = v;
        used[v] = true;
    }
    // Consistency of the seed itself.
    for &(u, _) in seed {
        for &(w, _) in seed {
            if a.cell(u, w) != b.cell(map[u], map[w]) {
                return false;
            }
        }
    }

    fn rec<F>(
        a: &ColoredDigraph,
        b: &ColoredDigraph,
        sig_a: &[Sig],
        sig_b: &[Sig],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        u: usize,
        on_found: &mut F,
    ) -> bool
    where
        F: FnMut(&[usize]) -> bool,
    {
        let n = a.n();
        if u == n {
            return on_found(map);
        }
        if map[u] != usize::MAX {
            return rec(a, b, sig_a, sig_b, map, used, u + 1, on_found);
        }
        'cand: for v in 0..n {
            if used[v] || sig_a[u] != sig_b[v] {
                continue;
            }
            for w in 0..n {
                let x = map[w];
                if x == usize::MAX {
                    continue;
                }
                if a.cell(u, w) != b.cell(v, x) || a.cell(w, u) != b.cell(x, v) {
                    continue 'cand;
                }
            }
            if a.cell(u, u) != b.cell(v, v) {
                continue;
            }
            map[u] = v;
            used[v] = true;
            if rec(a, b, sig_a, sig_b, map, used, u + 1, on_found) {
                return true;
            }
            map[u] = usize::MAX;
            used[v] = false;
        }
        false
    }

    rec(a, b, &sig_a, &sig_b, &mut map, &mut used, 0, on_found)
}

/// Color-preserving isomorphism test. Returns the lexicographically least
/// witness bijection (as the image list of vertices `0..n`), or `None`.
pub fn is_isomorphic(a: &ColoredDigraph, b: &ColoredDigraph) -> Option<Vec<usize>> {
    let mut found = None;
    search(a, b, &[], &mut |map: &[usize]| {
        found = Some(map.to_vec());
        true
    });
    found
}

/// Isomorphism test with forced assignments, used for orbit computation.
fn is_isomorphic_seeded(
    a: &ColoredDigraph,
    b: &ColoredDigraph,
    seed: &[(usize, usize)],
) -> Option<Vec<usize>> {
    let mut found = None;
    search(a, b, seed, &mut |map: &[usize]| {
        found = Some(map.to_vec());
        true
    });
    found
}

/// All automorphisms, in lexicographic order of their image lists.
/// Exponential for very symmetric graphs; fine at the sizes this crate uses.
pub fn automorphisms(g: &ColoredDigraph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    search(g, g, &[], &mut |map: &[usize]| {
        out.push(map.to_vec());
        false
    });
    out
}

/// Orbit of each vertex under the automorphism group, reported as the
/// smallest vertex of its orbit. Computed by seeded isomorphism tests plus
/// union-find along every automorphism found, so large groups are not
/// enumerated.
pub fn vertex_orbits(g: &ColoredDigraph) -> Vec<usize> {
    let n = g.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    fn union(parent: &mut Vec<usize>, a: usize, b: usize) {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            // Keep the smaller vertex as representative.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            parent[hi] = lo;
        }
    }
    for v in 0..n {
        for w in v + 1..n {
            if find(&mut parent, v) == find(&mut parent, w) {
                continue;
            }
            if let Some(sigma) = is_isomorphic_seeded(g, g, &[(v, w)]) {
                for (x, &y) in sigma.iter().enumerate() {
                    union(&mut parent, x, y);
                }
            }
        }
    }
    (0..n).map(|v| find(&mut parent, v)).collect()
}

/// Canonically relabeled copy: two digraphs are color-preservingly
/// isomorphic if and only if their canonical forms are equal.
///
/// The canonical label is the permutation minimizing a fixed staircase
/// encoding of the color-adjacency matrix, searched over the permutations
/// that list vertices in nondecreasing signature order (an isomorphism-
/// invariant restriction), with branch-and-bound prefix pruning.
pub fn canonical_form(g: &ColoredDigraph) -> ColoredDigraph {
    let n = g.n();
    if n == 0 {
        return g.clone();
    }
    let sigs = signatures(g);
    let mut order: Vec<Sig> = sigs.clone();
    order.sort();

    // Staircase encoding: when vertex position m is filled, the newly
    // determined matrix entries are (m, 0..=m) then (0..m, m).
    struct State<'a> {
        g: &'a ColoredDigraph,
        sigs: &'a [Sig],
        order: &'a [Sig],
        perm: Vec<usize>,
        used: u64,
        enc: Vec<u32>,
        best_enc: Option<Vec<u32>>,
        best_perm: Vec<usize>,
    }

    /// Returns true when the best encoding was replaced inside this subtree,
    /// meaning the caller's prefix now ties the best exactly.
    fn rec(st: &mut State, m: usize, tight: bool) -> bool {
        let n = st.g.n();
        if m == n {
            if !tight {
                st.best_enc = Some(st.enc.clone());
                st.best_perm = st.perm.clone();
                return true;
            }
            return false;
        }
        let mut replaced_any = false;
        let mut tight = tight;
        for v in 0..n {
            if st.used >> v & 1 == 1 || st.sigs[v] != st.order[m] {
                continue;
            }
            // Append the staircase segment for placing v at position m.
            let seg_start = st.enc.len();
            for j in 0..=m {
                let w = if j == m { v } else { st.perm[j] };
                st.enc.push(st.g.cell(v, w));
            }
            for i in 0..m {
                st.enc.push(st.g.cell(st.perm[i], v));
            }
            let seg_cmp = if tight {
                let best = st.best_enc.as_ref().expect("tight implies a best exists");
                st.enc[seg_start..].cmp(&best[seg_start..st.enc.len()])
            } else {
                Ordering::Less
            };
            if seg_cmp != Ordering::Greater {
                st.perm.push(v);
                st.used |= 1 << v;
                let child_tight = tight && seg_cmp == Ordering::Equal;
                if rec(st, m + 1, child_tight) {
                    // A new best passed through this prefix: it now ties.
                    tight = true;
                    replaced_any = true;
                }
                st.perm.pop();
                st.used &= !(1 << v);
            }
            st.enc.truncate(seg_start);
        }
        replaced_any
    }

    let mut st = State {
        g,
        sigs: &sigs,
        order: &order,
        perm: Vec::with_capacity(n),
        used: 0,
        enc: Vec::with_capacity(n * n),
        best_enc: None,
        best_perm: Vec::new(),
    };
    rec(&mut st, 0, false);
    let best_perm = st.best_perm;
    debug_assert_eq!(best_perm.len(), n);
    // best_perm[m] = original vertex at canonical position m; relabel wants
    // the inverse direction (original vertex v ↦ its position).
    let mut inv = vec![0usize; n];
    for (pos, &orig) in best_perm.iter().enumerate() {
        inv[orig] = pos;
    }
    g.relabel(&inv)
}
