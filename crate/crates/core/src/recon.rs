//! Decks, pseudo-similar vertices, and search harnesses for
//! reconstruction-style questions about partial automorphism monoids.
//!
//! The deck of a graph is the multiset of its vertex-deleted subgraphs; the
//! monoid deck is the multiset of their partial automorphism monoids, each
//! realized inside the ambient monoid as the elements avoiding the deleted
//! vertex. Two vertices are pseudo-similar when deleting either yields
//! isomorphic graphs but no automorphism maps one to the other.
//! [`find_deck_counterexamples`] looks for graph pairs whose monoid decks
//! agree while the monoids themselves differ, and [`search_corpus`] streams
//! graph6 input through the predicates in parallel with deterministic
//! output order.

use serde::Serialize;
use thiserror::Error;

use crate::graphs::{
    nonisomorphic_graphs, parse_graph6, vertex_orbits, Graph, Graph6Error, GraphError,
};
use crate::green::GreenError;
use crate::paut::{enumerate_paut, InverseSubmonoid, PautError};
use crate::pperm::{GroundSet, PPermError, PartialPerm};

/// Largest graph accepted from an external corpus stream.
pub const MAX_CORPUS: usize = 10;

/// Errors from deck and search operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReconError {
    /// A corpus graph exceeds the supported size.
    #[error("graph on {0} vertices exceeds the corpus limit {1}")]
    CorpusCapExceeded(usize, usize),
    /// A corpus line failed to parse.
    #[error("corpus line {seq}: {message}")]
    BadLine {
        /// 0-based index among the non-blank input lines.
        seq: usize,
        /// Parse failure description.
        message: String,
    },
    /// A graph operation failed.
    #[error(transparent)]
    Graph(#[from] GraphError),
    /// A graph6 operation failed.
    #[error(transparent)]
    Graph6(#[from] Graph6Error),
    /// A monoid enumeration failed.
    #[error(transparent)]
    Paut(#[from] PautError),
    /// A partial permutation operation failed.
    #[error(transparent)]
    PPerm(#[from] PPermError),
    /// A Green-structure operation failed.
    #[error(transparent)]
    Green(#[from] GreenError),
}

/// One card of a deck: the canonical form of the graph with one vertex
/// deleted, remembering which vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeckEntry {
    /// The deleted vertex (0-based).
    pub deleted: usize,
    /// Canonical form of the vertex-deleted subgraph.
    pub card: Graph,
}

/// The multiset of vertex-deleted subgraphs of a graph, in canonical form,
/// one entry per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deck {
    /// One entry per deleted vertex, in vertex order.
    pub entries: Vec<DeckEntry>,
}

impl Deck {
    /// The multiset of cards as sorted canonical graph6 strings.
    pub fn multiset(&self) -> Vec<String> {
        let mut keys: Vec<String> =
            self.entries.iter().map(|e| e.card.canonical_g6()).collect();
        keys.sort();
        keys
    }

    /// The multiset with each card normalized up to complement: the lesser
    /// of the card's and its complement's canonical graph6 strings.
    pub fn multiset_up_to_complement(&self) -> Vec<String> {
        let mut keys: Vec<String> = self
            .entries
            .iter()
            .map(|e| complement_class_key(&e.card))
            .collect();
        keys.sort();
        keys
    }
}

/// Canonical key of a graph's iso-or-complement class: the lesser of the
/// canonical graph6 strings of the graph and of its complement.
pub fn complement_class_key(g: &Graph) -> String {
    let a = g.canonical_g6();
    let b = g.complement().canonical_g6();
    a.min(b)
}

/// The deck of vertex-deleted subgraphs of `g`.
pub fn deck(g: &Graph) -> Deck {
    let n = g.n();
    let full = if n >= 64 { u64::MAX } else { (1u64 << n) - 1 };
    Deck {
        entries: (0..n)
            .map(|v| DeckEntry {
                deleted: v,
                card: g.induced(full & !(1u64 << v)).canonical(),
            })
            .collect(),
    }
}

/// One entry of a monoid deck: the elements of the ambient monoid whose
/// domain and range avoid the deleted vertex. This is the partial
/// automorphism monoid of the vertex-deleted subgraph, embedded in ambient
/// coordinates (a maximal Boolean inverse submonoid of height n−1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PautDeckEntry {
    /// The deleted vertex (0-based).
    pub deleted: usize,
    /// The elements avoiding the vertex, in canonical order, on the
    /// ambient ground set.
    pub elements: Vec<PartialPerm>,
}

impl PautDeckEntry {
    /// The entry as a standalone inverse submonoid on n−1 points, through
    /// the order-preserving relabeling that closes the gap left by the
    /// deleted vertex.
    pub fn relabeled(&self, ambient: GroundSet) -> Result<InverseSubmonoid, ReconError> {
        let small = GroundSet::new(ambient.size() - 1)?;
        let shift = |x: usize| if x > self.deleted { x - 1 } else { x };
        let elements = self
            .elements
            .iter()
            .map(|f| {
                let pairs: Vec<(usize, usize)> =
                    f.pairs().map(|(x, y)| (shift(x), shift(y))).collect();
                PartialPerm::from_pairs(small, &pairs)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(InverseSubmonoid::from_elements(small, elements)?)
    }
}

/// The multiset of partial automorphism monoids of the vertex-deleted
/// subgraphs, realized inside the ambient monoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PautDeck {
    /// The ambient ground set (the vertex set of the original graph).
    pub ground: GroundSet,
    /// One entry per deleted vertex, in vertex order.
    pub entries: Vec<PautDeckEntry>,
}

/// The monoid deck of `g`: enumerates the ambient monoid once and filters
/// the elements avoiding each vertex.
pub fn paut_deck(g: &Graph) -> Result<PautDeck, ReconError> {
    let s = enumerate_paut(&g.to_digraph())?;
    let entries = (0..g.n())
        .map(|v| {
            let bit = 1u64 << v;
            PautDeckEntry {
                deleted: v,
                elements: s
                    .elements()
                    .iter()
                    .filter(|f| (f.dom_mask() | f.ran_mask()) & bit == 0)
                    .cloned()
                    .collect(),
            }
        })
        .collect();
    Ok(PautDeck { ground: s.ground(), entries })
}

/// Checks that every monoid-deck entry, after relabeling, equals the
/// directly enumerated monoid of the vertex-deleted subgraph.
pub fn validate_paut_deck(g: &Graph, d: &PautDeck) -> Result<(), ReconError> {
    let n = g.n();
    let full = if n >= 64 { u64::MAX } else { (1u64 << n) - 1 };
    for entry in &d.entries {
        let relabeled = entry.relabeled(d.ground)?;
        let sub = g.induced(full & !(1u64 << entry.deleted));
        let direct = enumerate_paut(&sub.to_digraph())?;
        if relabeled.elements() != direct.elements() {
            return Err(ReconError::BadLine {
                seq: entry.deleted,
                message: "monoid deck entry disagrees with direct enumeration"
                    .to_string(),
            });
        }
    }
    Ok(())
}

/// All pseudo-similar vertex pairs of `g`: pairs `(i, j)` with `i < j`
/// whose vertex-deleted subgraphs are isomorphic but which lie in
/// different automorphism orbits.
pub fn pseudo_similar_pairs(g: &Graph) -> Vec<(usize, usize)> {
    let d = deck(g);
    let orbits = vertex_orbits(&g.to_digraph());
    let n = g.n();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if orbits[i] != orbits[j] && d.entries[i].card == d.entries[j].card {
                out.push((i, j));
            }
        }
    }
    out
}

/// All `k`-element vertex sets of `g` whose pairs are all pseudo-similar,
/// each sorted ascending, in lexicographic order.
pub fn mutually_pseudo_similar(g: &Graph, k: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    if k < 2 {
        return Vec::new();
    }
    let pairs: std::collections::HashSet<(usize, usize)> =
        pseudo_similar_pairs(g).into_iter().collect();
    (0..g.n())
        .combinations(k)
        .filter(|set| {
            set.iter().enumerate().all(|(a, &i)| {
                set[a + 1..].iter().all(|&j| pairs.contains(&(i, j)))
            })
        })
        .collect()
}

/// How deck entries are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeckMode {
    /// Cards compared up to isomorphism.
    UpToIso,
    /// Cards compared up to isomorphism or complementation — by the
    /// monoid-isomorphism correspondence, this compares the decks of
    /// partial automorphism monoids.
    UpToComplement,
}

/// Whether two graphs have equal decks as multisets, under the given
/// comparison mode.
pub fn deck_equal(a: &Graph, b: &Graph, mode: DeckMode) -> bool {
    match mode {
        DeckMode::UpToIso => deck(a).multiset() == deck(b).multiset(),
        DeckMode::UpToComplement => {
            deck(a).multiset_up_to_complement() == deck(b).multiset_up_to_complement()
        }
    }
}

/// Finds all pairs of `n`-vertex graphs, taken up to iso-or-complement
/// classes, whose monoid decks are isomorphic as multisets (entries
/// compared through the card graphs up to iso-or-complement) while the
/// monoids themselves are not isomorphic. Pairs and their members are in
/// canonical order. Internal generation is capped at 7 vertices.
pub fn find_deck_counterexamples(n: usize) -> Result<Vec<(Graph, Graph)>, ReconError> {
    let reps = nonisomorphic_graphs(n)?;
    // One representative per iso-or-complement class, in class-key order;
    // the representative is the parse of the key itself, so emitted graphs
    // are canonical.
    let mut keys: Vec<String> = reps.iter().map(complement_class_key).collect();
    keys.sort();
    keys.dedup();
    let classes: Vec<(String, Graph)> = keys
        .into_iter()
        .map(|key| {
            let g = parse_graph6(&key)?;
            Ok((key, g))
        })
        .collect::<Result<Vec<_>, ReconError>>()?;
    let decks: Vec<Vec<String>> = classes
        .iter()
        .map(|(_, g)| deck(g).multiset_up_to_complement())
        .collect();
    let mut out = Vec::new();
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            if decks[i] == decks[j] {
                debug_assert!(!crate::characterize::paut_isomorphic(
                    &classes[i].1,
                    &classes[j].1
                ));
                out.push((classes[i].1.clone(), classes[j].1.clone()));
            }
        }
    }
    Ok(out)
}

/// A named corpus-search predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Predicate {
    /// Match graphs with at least one pseudo-similar vertex pair; the
    /// witness is the least pair, 1-based.
    PseudoSimilarPair,
    /// Match graphs with `k` mutually pseudo-similar vertices; the witness
    /// is the least such set, 1-based.
    MutuallyPseudoSimilar(usize),
    /// Match graphs whose monoid deck equals that of an earlier graph in
    /// the stream from a different iso-or-complement class; the witness
    /// names the earliest such partner.
    DeckPartner,
}

/// One corpus match, serialized as a JSON-lines record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusMatch {
    /// 0-based index among the non-blank input lines.
    pub seq: usize,
    /// The matching graph, echoed as its input graph6 text.
    pub graph6: String,
    /// Re-verifiable description of why the graph matched.
    pub witness: String,
}

impl CorpusMatch {
    /// The JSON-lines record for this match.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("match serialization cannot fail")
    }
}

/// Per-graph data computed in parallel before the sequential merge.
enum Scan {
    Simple(Option<String>),
    Deck { deck_key: Vec<String>, class_key: String },
}

/// Streams graph6 lines through a predicate. Blank lines are skipped;
/// `seq` numbers the remaining lines from 0. Per-graph work runs in
/// parallel (on a private pool of `jobs` threads when given, otherwise on
/// the ambient one); matches are emitted in input order, so the output is
/// independent of the parallelism.
pub fn search_corpus<'a, I>(
    lines: I,
    predicate: Predicate,
    jobs: Option<usize>,
) -> Result<Vec<CorpusMatch>, ReconError>
where
    I: IntoIterator<Item = &'a str>,
{
    let kept: Vec<&str> = lines
        .into_iter()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .collect();
    let graphs: Vec<Graph> = kept
        .iter()
        .enumerate()
        .map(|(seq, line)| {
            let g = parse_graph6(line).map_err(|e| ReconError::BadLine {
                seq,
                message: e.to_string(),
            })?;
            if g.n() > MAX_CORPUS {
                return Err(ReconError::CorpusCapExceeded(g.n(), MAX_CORPUS));
            }
            Ok(g)
        })
        .collect::<Result<Vec<_>, _>>()?;

    let scan_one = |g: &Graph| -> Scan {
        match predicate {
            Predicate::PseudoSimilarPair => Scan::Simple(
                pseudo_similar_pairs(g)
                    .first()
                    .map(|&(i, j)| format!("pseudo-similar pair ({},{})", i + 1, j + 1)),
            ),
            Predicate::MutuallyPseudoSimilar(k) => Scan::Simple(
                mutually_pseudo_similar(g, k).first().map(|set| {
                    let pts: Vec<String> =
                        set.iter().map(|v| (v + 1).to_string()).collect();
                    format!("{} mutually pseudo-similar vertices ({})", k, pts.join(","))
                }),
            ),
            Predicate::DeckPartner => Scan::Deck {
                deck_key: deck(g).multiset_up_to_complement(),
                class_key: complement_class_key(g),
            },
        }
    };
    let run = || -> Vec<Scan> {
        use rayon::prelude::*;
        graphs.par_iter().map(scan_one).collect()
    };
    let scans: Vec<Scan> = match jobs {
        None => run(),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .expect("thread pool construction cannot fail")
            .install(run),
    };

    let mut out = Vec::new();
    for (seq, scan) in scans.iter().enumerate() {
        match scan {
            Scan::Simple(Some(witness)) => out.push(CorpusMatch {
                seq,
                graph6: kept[seq].to_string(),
                witness: witness.clone(),
            }),
            Scan::Simple(None) => {}
            Scan::Deck { deck_key, class_key } => {
                // Earliest earlier graph with the same deck from a
                // different iso-or-complement class.
                let partner = scans[..seq].iter().position(|prior| {
                    matches!(prior, Scan::Deck { deck_key: dk, class_key: ck }
                        if dk == deck_key && ck != class_key)
                });
                if let Some(p) = partner {
                    out.push(CorpusMatch {
                        seq,
                        graph6: kept[seq].to_string(),
                        witness: format!(
                            "monoid deck equals seq {} ({}) but the monoids differ",
                            p, kept[p]
                        ),
                    });
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::all_labeled_graphs;
    use crate::green::{green_structure, height};
    use crate::monoid::{table_from_submonoid, table_isomorphism, InverseMonoid};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn gamma0() -> Graph {
        Graph::from_edges(4, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn deck_of_path_and_complete() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(deck(&p3).multiset(), vec!["A?", "A_", "A_"]);
        for n in 2..=5usize {
            let kn = Graph::complete(n).unwrap();
            let km = Graph::complete(n - 1).unwrap().canonical_g6();
            assert_eq!(deck(&kn).multiset(), vec![km; n]);
        }
    }

    #[test]
    fn deck_commutes_with_complement() {
        for g in all_labeled_graphs(4).unwrap() {
            let mut complemented: Vec<String> = deck(&g)
                .entries
                .iter()
                .map(|e| e.card.complement().canonical_g6())
                .collect();
            complemented.sort();
            assert_eq!(deck(&g.complement()).multiset(), complemented);
        }
    }

    #[test]
    fn monoid_deck_entries_match_direct_enumeration() {
        let mut graphs = Vec::new();
        for n in 2..=4usize {
            graphs.extend(all_labeled_graphs(n).unwrap());
        }
        graphs.extend(nonisomorphic_graphs(5).unwrap());
        for g in graphs {
            let d = paut_deck(&g).unwrap();
            assert_eq!(d.entries.len(), g.n());
            validate_paut_deck(&g, &d).unwrap();
        }
    }

    #[test]
    fn monoid_deck_entries_are_boolean_of_height_n_minus_1() {
        let g = gamma0();
        let d = paut_deck(&g).unwrap();
        for entry in &d.entries {
            let s = entry.relabeled(d.ground).unwrap();
            let gs = green_structure(&s);
            assert_eq!(gs.heights.iter().max(), Some(&3));
            let top = PartialPerm::identity(s.ground());
            assert_eq!(height(&s, &top).unwrap(), 3);
            let t = InverseMonoid::from_table(table_from_submonoid(&s)).unwrap();
            assert!(t.is_boolean());
        }
    }

    #[test]
    fn pseudo_similarity_absent_on_small_graphs() {
        for n in 1..=6usize {
            for g in nonisomorphic_graphs(n).unwrap() {
                assert_eq!(pseudo_similar_pairs(&g), vec![]);
            }
        }
        // Similar-but-not-pseudo-similar: the ends of a path are swapped
        // by an automorphism.
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(pseudo_similar_pairs(&p3), vec![]);
        assert!(deck(&p3).entries[0].card == deck(&p3).entries[2].card);
    }

    #[test]
    fn pseudo_similar_witness_graph() {
        let g = parse_graph6("Gq?RHs").unwrap();
        assert_eq!(pseudo_similar_pairs(&g), vec![(1, 3)]);
        assert_eq!(mutually_pseudo_similar(&g, 2), vec![vec![1, 3]]);
        assert_eq!(mutually_pseudo_similar(&g, 3), Vec::<Vec<usize>>::new());
        // The pair re-verifies: isomorphic cards, different orbits.
        let d = deck(&g);
        assert_eq!(d.entries[1].card, d.entries[3].card);
        let orbits = vertex_orbits(&g.to_digraph());
        assert_ne!(orbits[1], orbits[3]);
    }

    #[test]
    fn pseudo_similarity_is_relabeling_invariant() {
        let g = parse_graph6("Gq?RHs").unwrap();
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..5 {
            let n = g.n();
            let mut perm: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                perm.swap(i, rng.gen_range(0..=i));
            }
            let h = g.relabel(&perm);
            let mut expected: Vec<(usize, usize)> = pseudo_similar_pairs(&g)
                .into_iter()
                .map(|(i, j)| {
                    let (a, b) = (perm[i], perm[j]);
                    (a.min(b), a.max(b))
                })
                .collect();
            expected.sort_unstable();
            assert_eq!(pseudo_similar_pairs(&h), expected);
        }
    }

    #[test]
    fn deck_equality_modes() {
        let g = gamma0();
        assert!(deck_equal(&g, &g, DeckMode::UpToIso));
        assert!(deck_equal(&g, &g.complement(), DeckMode::UpToComplement));
        // The complement's plain deck differs here (cards have different
        // edge counts), while the complement-normalized one agrees.
        assert!(!deck_equal(&g, &g.complement(), DeckMode::UpToIso));
    }

    #[test]
    fn deck_counterexamples_small() {
        assert_eq!(find_deck_counterexamples(2).unwrap(), vec![]);

        // The lone 3-vertex pair: the empty-graph class against the
        // one-edge class.
        let n3 = find_deck_counterexamples(3).unwrap();
        let keys: Vec<(String, String)> = n3
            .iter()
            .map(|(a, b)| (a.canonical_g6(), b.canonical_g6()))
            .collect();
        assert_eq!(keys, vec![("B?".to_string(), "BG".to_string())]);
        assert!(n3[0].0.is_isomorphic(&Graph::new(3).unwrap()).is_some());
        assert!(n3[0]
            .1
            .is_isomorphic(&Graph::from_edges(3, &[(0, 1)]).unwrap())
            .is_some());

        // Exactly two 4-vertex pairs: (path-plus-isolated-vertex vs star)
        // and (perfect matching vs 4-path).
        let n4 = find_deck_counterexamples(4).unwrap();
        let keys: Vec<(String, String)> = n4
            .iter()
            .map(|(a, b)| (a.canonical_g6(), b.canonical_g6()))
            .collect();
        assert_eq!(
            keys,
            vec![
                ("CB".to_string(), "CF".to_string()),
                ("CK".to_string(), "CL".to_string()),
            ]
        );
        let p3k1 = Graph::from_edges(4, &[(0, 1), (1, 2)]).unwrap();
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let matching = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(n4[0].0.is_isomorphic(&p3k1).is_some());
        assert!(n4[0].1.is_isomorphic(&star).is_some());
        assert!(n4[1].0.is_isomorphic(&matching).is_some());
        assert!(n4[1].1.is_isomorphic(&p4).is_some());
        // Reverify the defining properties of each pair.
        for (a, b) in &n4 {
            assert!(deck_equal(a, b, DeckMode::UpToComplement));
            assert!(!crate::characterize::paut_isomorphic(a, b));
        }
    }

    #[test]
    fn corollary_reduction_agrees_with_table_oracle() {
        // The deck comparison by card graphs agrees with comparing the
        // entry monoids as abstract tables, on sampled pairs.
        let reps4 = nonisomorphic_graphs(4).unwrap();
        let mut rng = StdRng::seed_from_u64(9);
        let table_deck = |g: &Graph| -> Vec<InverseMonoid> {
            deck(g)
                .entries
                .iter()
                .map(|e| {
                    let s = enumerate_paut(&e.card.to_digraph()).unwrap();
                    InverseMonoid::from_table(table_from_submonoid(&s)).unwrap()
                })
                .collect()
        };
        let multiset_iso = |xs: &[InverseMonoid], ys: &[InverseMonoid]| -> bool {
            let mut used = vec![false; ys.len()];
            xs.iter().all(|x| {
                (0..ys.len()).any(|j| {
                    if used[j] || table_isomorphism(x, &ys[j]).is_none() {
                        false
                    } else {
                        used[j] = true;
                        true
                    }
                })
            })
        };
        for _ in 0..12 {
            let a = &reps4[rng.gen_range(0..reps4.len())];
            let b = &reps4[rng.gen_range(0..reps4.len())];
            assert_eq!(
                deck_equal(a, b, DeckMode::UpToComplement),
                multiset_iso(&table_deck(a), &table_deck(b)),
                "{} vs {}",
                a.canonical_g6(),
                b.canonical_g6()
            );
        }
    }

    #[test]
    fn corpus_search_smoke() {
        let fixture = include_str!("../tests/data/corpus_smoke.g6");
        let lines: Vec<&str> = fixture.lines().collect();
        assert_eq!(lines.iter().filter(|l| !l.trim().is_empty()).count(), 20);

        // No pseudo-similar pairs exist at these sizes.
        let ps = search_corpus(lines.iter().copied(), Predicate::PseudoSimilarPair, None)
            .unwrap();
        assert_eq!(ps, vec![]);
        let mps = search_corpus(
            lines.iter().copied(),
            Predicate::MutuallyPseudoSimilar(3),
            None,
        )
        .unwrap();
        assert_eq!(mps, vec![]);

        // Deck partners: all 3-vertex decks normalize identically, and the
        // 4-vertex section contains both counterexample pairs.
        let dp =
            search_corpus(lines.iter().copied(), Predicate::DeckPartner, Some(2)).unwrap();
        let matched: Vec<(usize, &str)> =
            dp.iter().map(|m| (m.seq, m.graph6.as_str())).collect();
        assert_eq!(
            matched,
            vec![
                (4, "B_"),
                (5, "Bg"),
                (6, "Bw"),
                (11, "Ch"),
                (12, "Cl"),
                (13, "Cs"),
                (14, "Cw"),
                (16, "C{"),
            ]
        );
        assert_eq!(
            dp[0].witness,
            "monoid deck equals seq 3 (B?) but the monoids differ"
        );
        // Determinism across thread counts.
        let dp1 =
            search_corpus(lines.iter().copied(), Predicate::DeckPartner, Some(1)).unwrap();
        let dp8 =
            search_corpus(lines.iter().copied(), Predicate::DeckPartner, Some(8)).unwrap();
        assert_eq!(dp, dp1);
        assert_eq!(dp, dp8);
    }

    #[test]
    fn corpus_search_finds_pseudo_similar_witness() {
        let lines = ["C?", "Gq?RHs", ""];
        let ps =
            search_corpus(lines.iter().copied(), Predicate::PseudoSimilarPair, None).unwrap();
        assert_eq!(ps.len(), 1);
        assert_eq!(ps[0].seq, 1);
        assert_eq!(ps[0].graph6, "Gq?RHs");
        assert_eq!(ps[0].witness, "pseudo-similar pair (2,4)");
        assert_eq!(
            ps[0].to_json(),
            r#"{"seq":1,"graph6":"Gq?RHs","witness":"pseudo-similar pair (2,4)"}"#
        );
    }

    #[test]
    fn corpus_search_rejects_bad_input() {
        let err = search_corpus(["C?", "C!"].iter().copied(), Predicate::DeckPartner, None)
            .unwrap_err();
        assert!(matches!(err, ReconError::BadLine { seq: 1, .. }));
        // An 11-vertex graph exceeds the corpus cap: 'J' header byte plus
        // ceil(55/6) = 10 body characters.
        let big = "J??????????";
        let err = search_corpus([big].iter().copied(), Predicate::DeckPartner, None)
            .unwrap_err();
        assert!(matches!(err, ReconError::CorpusCapExceeded(11, MAX_CORPUS)));
    }
}
