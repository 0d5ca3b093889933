//! Partial automorphism monoids: membership testing and full enumeration.
//!
//! A partial automorphism of an edge-colored digraph is a partial injective
//! map on the vertices that is a color-preserving isomorphism between the
//! subdigraphs induced by its domain and its range. The set of all of them
//! is an inverse submonoid of the symmetric inverse monoid on the vertex
//! set; [`enumerate_paut`] computes it exactly.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graphs::ColoredDigraph;
use crate::pperm::{self, GroundSet, PartialPerm};

/// Default ceiling on the vertex count for full enumeration. The symmetric
/// inverse monoid on 8 points already has 1,441,729 elements; every extra
/// vertex multiplies that by roughly the vertex count squared.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 8;

/// Errors from membership testing, enumeration, and monoid (de)serialization.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PautError {
    /// The map's ground set does not match the digraph's vertex set.
    #[error("map ground set has {0} points but the digraph has {1} vertices")]
    GroundMismatch(usize, usize),
    /// Enumeration refused: vertex count above the (soft) limit.
    #[error("enumeration limit is {1} vertices, the digraph has {0}; raise the limit to proceed")]
    LimitExceeded(usize, usize),
    /// An element list mixes ground sets.
    #[error("element {0} lives on a {1}-point ground set, expected {2}")]
    MixedGround(String, usize, usize),
    /// Every inverse submonoid here must contain the full identity.
    #[error("the identity map is missing")]
    MissingIdentity,
    /// Closure validation failed: an inverse escapes the set.
    #[error("not closed under inversion: {0} is a member, {1} is not")]
    InverseEscapes(String, String),
    /// Closure validation failed: a product escapes the set.
    #[error("not closed under composition: {0} ∘ {1} = {2} is not a member")]
    ProductEscapes(String, String, String),
    /// A monoid dump could not be parsed as JSON.
    #[error("malformed monoid dump: {0}")]
    BadDump(String),
    /// A dump element is not a valid partial injective map.
    #[error("dump element {index}: {source}")]
    BadDumpElement {
        /// Position in the dump's element list.
        index: usize,
        /// The underlying construction failure.
        source: pperm::PPermError,
    },
    /// Underlying ground-set or map construction failure.
    #[error(transparent)]
    PPerm(#[from] pperm::PPermError),
}

/// Tests whether `f` is a partial automorphism of `d`: for every ordered
/// pair of domain points `(u, w)` — including `u = w`, which covers loops —
/// the arc color of `(u, w)` equals that of `(f(u), f(w))`.
pub fn is_partial_automorphism(d: &ColoredDigraph, f: &PartialPerm) -> Result<bool, PautError> {
    if f.ground().size() != d.n() {
        return Err(PautError::GroundMismatch(f.ground().size(), d.n()));
    }
    let pairs: Vec<(usize, usize)> = f.pairs().collect();
    for &(u, fu) in &pairs {
        for &(w, fw) in &pairs {
            if d.cell(u, w) != d.cell(fu, fw) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Membership via two-point restrictions: a map of rank at least 2 is a
/// partial automorphism exactly when its restriction to every 2-element
/// subset of the domain is. For rank 0 and 1 this falls back to the direct
/// test (such maps are always partial automorphisms).
pub fn rank2_membership_reduction(d: &ColoredDigraph, f: &PartialPerm) -> Result<bool, PautError> {
    if f.rank() < 2 {
        return is_partial_automorphism(d, f);
    }
    let points: Vec<usize> = pperm::bits(f.dom_mask()).collect();
    for (i, &u) in points.iter().enumerate() {
        for &w in &points[i + 1..] {
            let restriction = f
                .restrict(1 << u | 1 << w)
                .expect("domain points are in range");
            if !is_partial_automorphism(d, &restriction)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// An inverse submonoid of the symmetric inverse monoid on a fixed ground
/// set: contains the identity, closed under composition and inversion.
/// Elements are kept sorted in the canonical order (rank, then domain, then
/// image tuple), so membership is a binary search.
///
/// Construction checks the cheap invariants (uniform ground set, identity
/// present); the quadratic closure check is [`InverseSubmonoid::validate`],
/// run automatically on small monoids in debug builds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseSubmonoid {
    ground: GroundSet,
    elements: Vec<PartialPerm>,
}

impl InverseSubmonoid {
    /// Builds from an element list: sorts, deduplicates, and checks that
    /// every element shares `ground` and that the identity is present.
    pub fn from_elements(
        ground: GroundSet,
        mut elements: Vec<PartialPerm>,
    ) -> Result<InverseSubmonoid, PautError> {
        for f in &elements {
            if f.ground() != ground {
                return Err(PautError::MixedGround(
                    f.to_string(),
                    f.ground().size(),
                    ground.size(),
                ));
            }
        }
        elements.sort();
        elements.dedup();
        if elements.binary_search(&PartialPerm::identity(ground)).is_err() {
            return Err(PautError::MissingIdentity);
        }
        let s = InverseSubmonoid { ground, elements };
        #[cfg(debug_assertions)]
        if s.len() <= 300 {
            debug_assert!(s.validate().is_ok(), "constructed set is not closed");
        }
        Ok(s)
    }

    /// The common ground set.
    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// Always false: the identity is always present.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// The elements in canonical order.
    pub fn elements(&self) -> &[PartialPerm] {
        &self.elements
    }

    /// Membership test (binary search in canonical order).
    pub fn contains(&self, f: &PartialPerm) -> bool {
        self.elements.binary_search(f).is_ok()
    }

    /// Position of `f` in canonical order, if a member.
    pub fn index_of(&self, f: &PartialPerm) -> Option<usize> {
        self.elements.binary_search(f).ok()
    }

    /// Element count per rank, indexed `0..=n`.
    pub fn rank_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.ground.size() + 1];
        for f in &self.elements {
            counts[f.rank()] += 1;
        }
        counts
    }

    /// The idempotents, i.e. the partial identities, in canonical order.
    pub fn idempotents(&self) -> Vec<PartialPerm> {
        self.elements
            .iter()
            .filter(|f| f.is_partial_identity())
            .copied()
            .collect()
    }

    /// Full algebraic validation: identity present, closed under inversion
    /// and composition. Quadratic in the element count.
    pub fn validate(&self) -> Result<(), PautError> {
        if !self.contains(&PartialPerm::identity(self.ground)) {
            return Err(PautError::MissingIdentity);
        }
        for f in &self.elements {
            let inv = f.invert();
            if !self.contains(&inv) {
                return Err(PautError::InverseEscapes(f.to_string(), inv.to_string()));
            }
        }
        for f in &self.elements {
            for g in &self.elements {
                let fg = f.compose(g).expect("equal ground sets");
                if !self.contains(&fg) {
                    return Err(PautError::ProductEscapes(
                        f.to_string(),
                        g.to_string(),
                        fg.to_string(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Serializes to the interchange dump: `{"n": …, "elements": [{"dom":
    /// [...], "img": [...]}, …]}` with 1-based points, canonical order.
    pub fn to_dump_json(&self) -> String {
        let dump = MonoidDump {
            n: self.ground.size(),
            elements: self
                .elements
                .iter()
                .map(|f| {
                    let (dom, img) = f.pairs().map(|(u, v)| (u + 1, v + 1)).unzip();
                    DumpElement { dom, img }
                })
                .collect(),
        };
        serde_json::to_string(&dump).expect("dump serialization cannot fail")
    }

    /// Parses the interchange dump produced by [`Self::to_dump_json`].
    /// Structural checks only; call [`Self::validate`] for closure.
    pub fn from_dump_json(text: &str) -> Result<InverseSubmonoid, PautError> {
        let dump: MonoidDump =
            serde_json::from_str(text).map_err(|e| PautError::BadDump(e.to_string()))?;
        let ground = GroundSet::new(dump.n)?;
        let elements = dump
            .elements
            .iter()
            .enumerate()
            .map(|(index, el)| {
                if el.dom.len() != el.img.len() {
                    return Err(PautError::BadDump(format!(
                        "element {index}: dom has {} points, img has {}",
                        el.dom.len(),
                        el.img.len()
                    )));
                }
                let pairs: Vec<(usize, usize)> = el
                    .dom
                    .iter()
                    .zip(&el.img)
                    .map(|(&u, &v)| {
                        if u == 0 || v == 0 {
                            Err(PautError::BadDump(format!(
                                "element {index}: points are 1-based, got 0"
                            )))
                        } else {
                            Ok((u - 1, v - 1))
                        }
                    })
                    .collect::<Result<_, _>>()?;
                PartialPerm::from_pairs(ground, &pairs)
                    .map_err(|source| PautError::BadDumpElement { index, source })
            })
            .collect::<Result<Vec<_>, _>>()?;
        InverseSubmonoid::from_elements(ground, elements)
    }
}

#[derive(Serialize, Deserialize)]
struct MonoidDump {
    n: usize,
    elements: Vec<DumpElement>,
}

#[derive(Serialize, Deserialize)]
struct DumpElement {
    dom: Vec<usize>,
    img: Vec<usize>,
}

/// Depth-first enumeration of every partial automorphism whose least mapped
/// vertex is `u0 ↦ v0`, extending over vertices above `u0` only. Every node
/// of the search tree is a valid element (membership is decided by pairwise
/// constraints), so the tree is exactly the answer set.
fn extend_from(
    d: &ColoredDigraph,
    ground: GroundSet,
    u0: usize,
    v0: usize,
    out: &mut Vec<PartialPerm>,
) {
    if d.cell(u0, u0) != d.cell(v0, v0) {
        return;
    }
    let mut pairs: Vec<(usize, usize)> = vec![(u0, v0)];
    let mut used: u64 = 1 << v0;

    fn rec(
        d: &ColoredDigraph,
        ground: GroundSet,
        pairs: &mut Vec<(usize, usize)>,
        used: &mut u64,
        next: usize,
        out: &mut Vec<PartialPerm>,
    ) {
        out.push(PartialPerm::from_pairs(ground, pairs).expect("search pairs are injective"));
        let n = d.n();
        for u in next..n {
            'cand: for v in 0..n {
                if *used >> v & 1 == 1 || d.cell(u, u) != d.cell(v, v) {
                    continue;
                }
                for &(w, fw) in pairs.iter() {
                    if d.cell(u, w) != d.cell(v, fw) || d.cell(w, u) != d.cell(fw, v) {
                        continue 'cand;
                    }
                }
                pairs.push((u, v));
                *used |= 1 << v;
                rec(d, ground, pairs, used, u + 1, out);
                pairs.pop();
                *used &= !(1 << v);
            }
        }
    }

    rec(d, ground, &mut pairs, &mut used, u0 + 1, out);
}

/// Enumerates the full partial automorphism monoid with the default vertex
/// limit of [`DEFAULT_ENUMERATION_LIMIT`].
pub fn enumerate_paut(d: &ColoredDigraph) -> Result<InverseSubmonoid, PautError> {
    enumerate_paut_with_limit(d, DEFAULT_ENUMERATION_LIMIT)
}

/// Enumerates the full partial automorphism monoid of `d`.
///
/// Backtracking search over partial injective vertex maps, pruning on the
/// first violated pairwise color constraint; sound and complete because
/// membership is exactly the conjunction of the pairwise constraints. The
/// work is split across the choices of the least mapped pair and runs on
/// the rayon pool; the merged result is deterministic.
pub fn enumerate_paut_with_limit(
    d: &ColoredDigraph,
    limit: usize,
) -> Result<InverseSubmonoid, PautError> {
    let n = d.n();
    if n > limit {
        return Err(PautError::LimitExceeded(n, limit));
    }
    let ground = GroundSet::new(n)?;
    let seeds: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).collect();
    let chunks: Vec<Vec<PartialPerm>> = seeds
        .into_par_iter()
        .map(|(u0, v0)| {
            let mut out = Vec::new();
            extend_from(d, ground, u0, v0, &mut out);
            out
        })
        .collect();
    let mut elements = vec![PartialPerm::empty(ground)];
    elements.extend(chunks.into_iter().flatten());
    InverseSubmonoid::from_elements(ground, elements)
}

/// Validation oracle: filters the entire symmetric inverse monoid through
/// [`is_partial_automorphism`]. Exponentially slower than the search;
/// intended for cross-checks on at most 4 or 5 vertices.
pub fn enumerate_paut_by_filter(d: &ColoredDigraph) -> Result<InverseSubmonoid, PautError> {
    let ground = GroundSet::new(d.n())?;
    let elements = pperm::all_partial_perms(ground)
        .into_iter()
        .filter(|f| is_partial_automorphism(d, f).expect("grounds match"))
        .collect();
    InverseSubmonoid::from_elements(ground, elements)
}

/// The automorphism group: all full-rank partial automorphisms, in
/// canonical order.
pub fn aut_group(d: &ColoredDigraph) -> Result<Vec<PartialPerm>, PautError> {
    let ground = GroundSet::new(d.n())?;
    let mut out: Vec<PartialPerm> = crate::graphs::automorphisms(d)
        .into_iter()
        .map(|images| {
            let pairs: Vec<(usize, usize)> = images.iter().copied().enumerate().collect();
            PartialPerm::from_pairs(ground, &pairs).expect("automorphisms are bijections")
        })
        .collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{all_labeled_graphs, nonisomorphic_graphs, Graph};
    use crate::pperm::parse_cpn;

    fn gamma0() -> ColoredDigraph {
        Graph::from_edges(4, &[(0, 1), (1, 2)]).unwrap().to_digraph()
    }

    fn pp(text: &str, n: usize) -> PartialPerm {
        parse_cpn(text, GroundSet::new(n).unwrap()).unwrap()
    }

    #[test]
    fn membership_on_path_plus_isolated_vertex() {
        let d = gamma0();
        // Maps the edge {2,3} onto the non-edge {1,4}: not an automorphism.
        assert!(!is_partial_automorphism(&d, &pp("[1 2)|[4 3)", 4)).unwrap());
        assert!(is_partial_automorphism(&d, &pp("(1 2)", 4)).unwrap());
        assert!(is_partial_automorphism(&d, &pp("[1 2 3)", 4)).unwrap());
        assert!(is_partial_automorphism(&d, &pp("(2)|[1 3)", 4)).unwrap());
        // No rank-2 member exchanges {1,2} with {3,4} in either direction.
        for text in ["[3 1)|[4 2)", "[4 1)|[3 2)", "[1 3)|[2 4)", "[2 3)|[1 4)"] {
            assert!(!is_partial_automorphism(&d, &pp(text, 4)).unwrap(), "{text}");
        }
        // Rank ≤ 1 maps are always members.
        for f in pperm::partial_perms_of_rank(GroundSet::new(4).unwrap(), 1) {
            assert!(is_partial_automorphism(&d, &f).unwrap());
        }
        assert!(is_partial_automorphism(&d, &pp("()", 4)).unwrap());
    }

    #[test]
    fn ground_mismatch_is_an_error() {
        let d = gamma0();
        assert_eq!(
            is_partial_automorphism(&d, &pp("(1 2)", 5)),
            Err(PautError::GroundMismatch(5, 4))
        );
    }

    #[test]
    fn two_point_reduction_agrees_everywhere_small() {
        // Exhaustive equivalence with the direct test: every partial map on
        // every labeled graph with at most 4 vertices.
        for n in 1..=4 {
            let ground = GroundSet::new(n).unwrap();
            let maps = pperm::all_partial_perms(ground);
            for g in all_labeled_graphs(n).unwrap() {
                let d = g.to_digraph();
                for f in &maps {
                    assert_eq!(
                        rank2_membership_reduction(&d, f).unwrap(),
                        is_partial_automorphism(&d, f).unwrap(),
                        "n={n} f={f}"
                    );
                }
            }
        }
    }

    #[test]
    fn two_point_reduction_on_a_rank_three_map() {
        // φ = (2)|[1 3)|(4) passes because all three 2-subset restrictions do.
        let d = gamma0();
        let phi = pp("(2)|[1 3)|(4)", 4);
        assert_eq!(phi.rank(), 3);
        assert!(rank2_membership_reduction(&d, &phi).unwrap());
        assert!(is_partial_automorphism(&d, &phi).unwrap());
        for mask in [0b0110u64, 0b1010, 0b1100] {
            let r = phi.restrict(mask).unwrap();
            assert!(is_partial_automorphism(&d, &r).unwrap());
        }
    }

    #[test]
    fn complete_graphs_give_the_whole_inverse_monoid() {
        // Every partial injective map preserves complete adjacency.
        let k3 = Graph::complete(3).unwrap().to_digraph();
        let k4 = Graph::complete(4).unwrap().to_digraph();
        assert_eq!(enumerate_paut(&k3).unwrap().len(), 34);
        assert_eq!(enumerate_paut(&k4).unwrap().len(), 209);
        assert_eq!(
            enumerate_paut(&k4).unwrap().len() as u128,
            pperm::count_partial_perms(4).unwrap()
        );
    }

    #[test]
    fn path_plus_isolated_vertex_monoid() {
        let s = enumerate_paut(&gamma0()).unwrap();
        assert_eq!(s.len(), 75);
        assert_eq!(s.rank_counts(), vec![1, 16, 40, 16, 2]);
        assert!(s.contains(&pp("(1 2)", 4)));
        assert!(s.contains(&pp("[1 2 3)", 4)));
        assert!(s.contains(&pp("(2)|[1 3)", 4)));
        assert!(!s.contains(&pp("[3 1)|[4 2)", 4)));
        assert!(!s.contains(&pp("[4 1)|[3 2)", 4)));
        s.validate().unwrap();
    }

    #[test]
    fn search_matches_filter_oracle_exhaustively() {
        for n in 1..=4 {
            for g in all_labeled_graphs(n).unwrap() {
                let d = g.to_digraph();
                assert_eq!(
                    enumerate_paut(&d).unwrap(),
                    enumerate_paut_by_filter(&d).unwrap(),
                    "graph {g:?}"
                );
            }
        }
        // And on every 1-color digraph with 2 vertices (loops included).
        for bits in 0u32..16 {
            let mut d = ColoredDigraph::new(2, 1).unwrap();
            for (i, (u, v)) in [(0, 0), (0, 1), (1, 0), (1, 1)].into_iter().enumerate() {
                if bits >> i & 1 == 1 {
                    d.set_color(u, v, Some(0));
                }
            }
            assert_eq!(
                enumerate_paut(&d).unwrap(),
                enumerate_paut_by_filter(&d).unwrap()
            );
        }
    }

    #[test]
    fn orientation_and_color_constrain_membership() {
        // Directed path 1 → 2 → 3: the shift 1↦2, 2↦3 respects orientation.
        let d = ColoredDigraph::from_edge_lists(3, &[vec![(0, 1), (1, 2)]]).unwrap();
        let shift = pp("[3 2 1)", 3);
        assert_eq!(shift.apply(0), Some(1));
        assert!(is_partial_automorphism(&d, &shift).unwrap());
        // The full reversal flips arc directions: not a member. (The bare
        // swap (1 3) is one, though — 1 and 3 are not adjacent.)
        assert!(!is_partial_automorphism(&d, &pp("(1 3)|(2)", 3)).unwrap());
        assert!(is_partial_automorphism(&d, &pp("(1 3)", 3)).unwrap());
        // Swapping the endpoints of the arc 1→2 reverses it: out.
        assert!(!is_partial_automorphism(&d, &pp("(1 2)", 3)).unwrap());
        // Two colors: swapping the colors of the two loops is not allowed.
        let two = ColoredDigraph::from_edge_lists(2, &[vec![(0, 0)], vec![(1, 1)]]).unwrap();
        assert!(!is_partial_automorphism(&two, &pp("(1 2)", 2)).unwrap());
        assert!(is_partial_automorphism(&two, &pp("(1)|(2)", 2)).unwrap());
    }

    #[test]
    fn monoid_equals_monoid_of_complement() {
        for n in 1..=4 {
            for g in all_labeled_graphs(n).unwrap() {
                let s = enumerate_paut(&g.to_digraph()).unwrap();
                let sc = enumerate_paut(&g.complement().to_digraph()).unwrap();
                assert_eq!(s, sc, "graph {g:?}");
            }
        }
        for g in nonisomorphic_graphs(5).unwrap() {
            let s = enumerate_paut(&g.to_digraph()).unwrap();
            let sc = enumerate_paut(&g.complement().to_digraph()).unwrap();
            assert_eq!(s, sc);
        }
    }

    #[test]
    fn monoid_is_full_and_join_closed() {
        // Fullness: every partial identity is a member. Join closure: any
        // map of rank ≥ 3 whose 2-point restrictions are all members is a
        // member. Checked on all 5-vertex isomorphism classes.
        let ground = GroundSet::new(5).unwrap();
        let all = pperm::all_partial_perms(ground);
        for g in nonisomorphic_graphs(5).unwrap() {
            let d = g.to_digraph();
            let s = enumerate_paut(&d).unwrap();
            for mask in 0u64..32 {
                assert!(s.contains(&PartialPerm::partial_identity(ground, mask).unwrap()));
            }
            for f in &all {
                if f.rank() >= 3 && rank2_membership_reduction(&d, f).unwrap() {
                    assert!(s.contains(f), "{f} escapes join closure");
                }
            }
        }
    }

    #[test]
    fn isomorphic_graphs_have_conjugate_monoids() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        let ground = GroundSet::new(4).unwrap();
        let perm = [2usize, 0, 3, 1];
        let sigma = PartialPerm::from_pairs(
            ground,
            &perm.iter().copied().enumerate().collect::<Vec<_>>(),
        )
        .unwrap();
        let s = enumerate_paut(&g.to_digraph()).unwrap();
        let s2 = enumerate_paut(&g.relabel(&perm).to_digraph()).unwrap();
        assert_eq!(s.len(), s2.len());
        let sigma_inv = sigma.invert();
        for f in s.elements() {
            let conj = sigma
                .compose(&f.compose(&sigma_inv).unwrap())
                .unwrap();
            assert!(s2.contains(&conj), "conjugate of {f} escapes");
        }
    }

    #[test]
    fn automorphism_groups_as_top_rank_elements() {
        let k4 = Graph::complete(4).unwrap().to_digraph();
        assert_eq!(aut_group(&k4).unwrap().len(), 24);
        let e4 = Graph::new(4).unwrap().to_digraph();
        assert_eq!(aut_group(&e4).unwrap().len(), 24);
        let g0 = gamma0();
        let auts = aut_group(&g0).unwrap();
        assert_eq!(auts.len(), 2);
        assert_eq!(auts[0], PartialPerm::identity(GroundSet::new(4).unwrap()));
        assert_eq!(auts[1], pp("(1 3)|(2)|(4)", 4));
        // Consistency: exactly the full-rank slice of the enumeration.
        let s = enumerate_paut(&g0).unwrap();
        let full: Vec<PartialPerm> =
            s.elements().iter().filter(|f| f.rank() == 4).copied().collect();
        assert_eq!(auts, full);
    }

    #[test]
    fn enumeration_limit_is_enforced() {
        let g = Graph::new(9).unwrap().to_digraph();
        assert_eq!(
            enumerate_paut(&g).err(),
            Some(PautError::LimitExceeded(9, 8))
        );
        let g6 = Graph::complete(6).unwrap().to_digraph();
        assert_eq!(enumerate_paut_with_limit(&g6, 6).unwrap().len(), 13327);
    }

    #[test]
    fn dump_round_trip() {
        let s = enumerate_paut(&gamma0()).unwrap();
        let json = s.to_dump_json();
        let back = InverseSubmonoid::from_dump_json(&json).unwrap();
        assert_eq!(s, back);
        assert_eq!(back.to_dump_json(), json);
        // Dump is 1-based and opens with the empty map.
        assert!(json.starts_with(r#"{"n":4,"elements":[{"dom":[],"img":[]}"#));
        assert!(json.contains(r#"{"dom":[1],"img":[1]}"#));
    }

    #[test]
    fn dump_rejects_malformed_input() {
        assert!(matches!(
            InverseSubmonoid::from_dump_json("{"),
            Err(PautError::BadDump(_))
        ));
        // Identity must be present.
        assert_eq!(
            InverseSubmonoid::from_dump_json(r#"{"n":2,"elements":[{"dom":[],"img":[]}]}"#),
            Err(PautError::MissingIdentity)
        );
        // Non-injective element.
        let bad = r#"{"n":2,"elements":[{"dom":[1,2],"img":[1,1]}]}"#;
        assert!(matches!(
            InverseSubmonoid::from_dump_json(bad),
            Err(PautError::BadDumpElement { index: 0, .. })
        ));
        // 0-based points are rejected.
        let zero = r#"{"n":2,"elements":[{"dom":[0],"img":[1]}]}"#;
        assert!(matches!(
            InverseSubmonoid::from_dump_json(zero),
            Err(PautError::BadDump(_))
        ));
        // Mismatched dom/img lengths.
        let ragged = r#"{"n":2,"elements":[{"dom":[1],"img":[]}]}"#;
        assert!(matches!(
            InverseSubmonoid::from_dump_json(ragged),
            Err(PautError::BadDump(_))
        ));
    }

    #[test]
    fn validation_catches_broken_sets() {
        let ground = GroundSet::new(3).unwrap();
        let id = PartialPerm::identity(ground);
        // {id, (1 2)} is inverse-closed but (1 2)² = (1)|(2) escapes.
        let swap = pp("(1 2)", 3);
        let s = InverseSubmonoid {
            ground,
            elements: {
                let mut v = vec![id, swap];
                v.sort();
                v
            },
        };
        assert!(matches!(s.validate(), Err(PautError::ProductEscapes(..))));
        // {id, [2 1)} is composition-closed upward but the inverse escapes.
        let step = pp("[2 1)", 3);
        let t = InverseSubmonoid {
            ground,
            elements: {
                let mut v = vec![id, step];
                v.sort();
                v
            },
        };
        assert!(matches!(t.validate(), Err(PautError::InverseEscapes(..))));
        // A set missing the identity is rejected at construction.
        assert_eq!(
            InverseSubmonoid::from_elements(ground, vec![PartialPerm::empty(ground)]),
            Err(PautError::MissingIdentity)
        );
    }
}
