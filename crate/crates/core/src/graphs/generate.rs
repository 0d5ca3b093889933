//! Exhaustive generation of small graphs, labeled and up to isomorphism.

use super::{Graph, GraphError};

/// Largest vertex count accepted by the exhaustive generators. 2^(7·6/2) =
/// 2^21 labeled graphs is still comfortable; the next step up is 2^28.
pub const MAX_GENERATE: usize = 7;

/// All 2^(n(n-1)/2) labeled simple graphs on `n` vertices, in increasing
/// order of their edge-set bitmask (pairs enumerated lexicographically).
pub fn all_labeled_graphs(n: usize) -> Result<Vec<Graph>, GraphError> {
    if n > MAX_GENERATE {
        return Err(GraphError::GenerationCapExceeded(n, MAX_GENERATE));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut out = Vec::with_capacity(1usize << pairs.len());
    for mask in 0u64..(1u64 << pairs.len()) {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        out.push(Graph::from_edges(n, &edges).expect("generated edges are valid"));
    }
    Ok(out)
}

/// One representative per isomorphism class of simple graphs on `n`
/// vertices, sorted by canonical graph6 string.
///
/// Built by augmentation: every class on `n` vertices arises from some class
/// on `n-1` vertices by appending a vertex with one of the 2^(n-1) possible
/// neighborhoods, so extending each smaller representative every way and
/// deduplicating by canonical form is exhaustive.
pub fn nonisomorphic_graphs(n: usize) -> Result<Vec<Graph>, GraphError> {
    if n > MAX_GENERATE {
        return Err(GraphError::GenerationCapExceeded(n, MAX_GENERATE));
    }
    let mut reps = vec![Graph::from_edges(0, &[]).expect("empty graph")];
    for k in 1..=n {
        let mut seen = std::collections::HashSet::new();
        let mut next = Vec::new();
        for g in &reps {
            for nbhd in 0u64..(1u64 << (k - 1)) {
                let mut h = Graph::from_edges(k, &[]).expect("vertex count in range");
                for u in 0..k - 1 {
                    for v in u + 1..k - 1 {
                        if g.has_edge(u, v) {
                            h.add_edge(u, v).expect("in range");
                        }
                    }
                }
                for u in crate::pperm::bits(nbhd) {
                    h.add_edge(u, k - 1).expect("in range");
                }
                let canon = h.canonical();
                if seen.insert(canon.canonical_g6()) {
                    next.push(canon);
                }
            }
        }
        next.sort_by_key(Graph::canonical_g6);
        reps = next;
    }
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labeled_counts() {
        assert_eq!(all_labeled_graphs(0).unwrap().len(), 1);
        assert_eq!(all_labeled_graphs(1).unwrap().len(), 1);
        assert_eq!(all_labeled_graphs(3).unwrap().len(), 8);
        assert_eq!(all_labeled_graphs(4).unwrap().len(), 64);
        assert!(matches!(
            all_labeled_graphs(8),
            Err(GraphError::GenerationCapExceeded(8, 7))
        ));
    }

    #[test]
    fn nonisomorphic_counts() {
        // Classical sequence of graphs up to isomorphism on 0..=7 vertices.
        let expect = [1usize, 1, 2, 4, 11, 34, 156, 1044];
        for (n, &want) in expect.iter().enumerate() {
            assert_eq!(nonisomorphic_graphs(n).unwrap().len(), want, "n={n}");
        }
    }

    #[test]
    fn representatives_are_canonical_sorted_and_distinct() {
        let reps = nonisomorphic_graphs(5).unwrap();
        let g6s: Vec<String> = reps.iter().map(Graph::canonical_g6).collect();
        let mut sorted = g6s.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(g6s, sorted);
        for g in &reps {
            assert_eq!(g, &g.canonical());
        }
    }

    #[test]
    fn every_labeled_graph_has_a_representative() {
        let reps = nonisomorphic_graphs(4).unwrap();
        for g in all_labeled_graphs(4).unwrap() {
            assert_eq!(
                reps.iter().filter(|r| r.is_isomorphic(&g).is_some()).count(),
                1
            );
        }
    }
}
