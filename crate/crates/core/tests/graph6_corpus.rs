//! Cross-validation of the graph6 codec and the isomorphism machinery
//! against a corpus of encodings produced by independent tooling
//! (`tests/data/external_small.g6`): the 34 five-vertex isomorphism-class
//! representatives followed by assorted graphs on 1 to 62 vertices.

use pautmon::graphs::{format_graph6, nonisomorphic_graphs, parse_graph6};

const CORPUS: &str = include_str!("data/external_small.g6");

#[test]
fn corpus_round_trips_byte_for_byte() {
    let mut count = 0;
    for line in CORPUS.lines().filter(|l| !l.is_empty()) {
        let g = parse_graph6(line).unwrap_or_else(|e| panic!("parse {line:?}: {e}"));
        assert_eq!(format_graph6(&g).unwrap(), line);
        count += 1;
    }
    assert_eq!(count, 44);
}

#[test]
fn five_vertex_section_matches_generated_classes() {
    let external: Vec<_> = CORPUS
        .lines()
        .filter(|l| !l.is_empty())
        .map(|l| parse_graph6(l).unwrap())
        .filter(|g| g.n() == 5)
        .collect();
    assert_eq!(external.len(), 34);

    // Pairwise non-isomorphic, and in bijection with our own generator's
    // classes: both sides reduce to the same set of canonical strings.
    let mut ext_canon: Vec<String> = external.iter().map(|g| g.canonical_g6()).collect();
    ext_canon.sort();
    ext_canon.dedup();
    assert_eq!(ext_canon.len(), 34);

    let mut own: Vec<String> = nonisomorphic_graphs(5)
        .unwrap()
        .iter()
        .map(|g| g.canonical_g6())
        .collect();
    own.sort();
    assert_eq!(ext_canon, own);
}

#[test]
fn large_members_keep_their_structure() {
    // The corpus ends with graphs of increasing size; spot-check that vertex
    // and edge counts survive the round trip on the largest one.
    let big = CORPUS
        .lines()
        .filter(|l| !l.is_empty())
        .map(|l| parse_graph6(l).unwrap())
        .max_by_key(|g| g.n())
        .unwrap();
    assert_eq!(big.n(), 62);
    let re = parse_graph6(&format_graph6(&big).unwrap()).unwrap();
    assert_eq!(re.edges(), big.edges());
}
