//! Green's relations for inverse submonoids of a symmetric inverse monoid:
//! eggbox diagrams, the D-class poset, and heights.
//!
//! In such a monoid two elements are L-related exactly when they share a
//! domain and R-related exactly when they share a range, so the whole
//! structure can be assembled from the (domain, range) key pair of each
//! element. The assembly core is generic over the key type; the abstract
//! multiplication-table side reuses it with idempotent indices as keys.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::graphs::{Graph, GraphError};
use crate::paut::InverseSubmonoid;
use crate::pperm::{self, PartialPerm};

/// Errors from Green-structure queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GreenError {
    /// A query element is not in the monoid.
    #[error("{0} is not a member of the monoid")]
    NotAMember(String),
    /// The graph and the monoid live on different vertex sets.
    #[error("graph has {0} vertices, the monoid's ground set has {1}")]
    GroundMismatch(usize, usize),
    /// A D-class whose domains induce non-isomorphic subgraphs; the monoid
    /// is not a partial automorphism monoid of the given graph.
    #[error("D-class {0} mixes non-isomorphic induced subgraphs")]
    InconsistentClass(usize),
    /// Induced subgraph construction failed.
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// One of Green's equivalence relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GreenRelation {
    /// Same domain.
    L,
    /// Same range.
    R,
    /// Same domain and range.
    H,
    /// Some member has the first element's domain and the second's range.
    D,
}

/// One D-class, presented as an eggbox: rows are R-classes (common range),
/// columns are L-classes (common domain), each cell an H-class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DClass<K> {
    /// Row keys (ranges), sorted.
    pub rkeys: Vec<K>,
    /// Column keys (domains), sorted. Equals `rkeys` as a set.
    pub lkeys: Vec<K>,
    /// `cells[i][j]`: indices of the elements with range `rkeys[i]` and
    /// domain `lkeys[j]`, in canonical order.
    pub cells: Vec<Vec<Vec<usize>>>,
    /// Positions `(i, j)` of the cells that contain an idempotent,
    /// i.e. where `rkeys[i] == lkeys[j]`.
    pub idempotent_cells: Vec<(usize, usize)>,
}

impl<K> DClass<K> {
    /// All element indices of the class, ascending.
    pub fn element_indices(&self) -> Vec<usize> {
        let mut out: Vec<usize> =
            self.cells.iter().flatten().flatten().copied().collect();
        out.sort_unstable();
        out
    }

    /// Common cardinality of the H-class cells.
    pub fn cell_size(&self) -> usize {
        self.cells[0][0].len()
    }
}

/// The complete Green structure of a finite inverse monoid: the D-class
/// partition with eggboxes, the strict D-order, and per-class heights
/// (length of the longest strictly increasing chain from a minimal class).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreenStructure<K> {
    /// D-classes, sorted by (height, smallest key).
    pub dclasses: Vec<DClass<K>>,
    /// Strict comparabilities `(a, b)` meaning class `a` < class `b`,
    /// transitively closed, sorted.
    pub poset: Vec<(usize, usize)>,
    /// Height of each class: 0 for minimal classes, else one more than the
    /// tallest class strictly below.
    pub heights: Vec<usize>,
    /// D-class id of each element.
    pub class_of: Vec<usize>,
}

impl<K> GreenStructure<K> {
    /// Whether class `a` is at or below class `b` in the D-order.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        a == b || self.poset.binary_search(&(a, b)).is_ok()
    }
}

/// Builds the class partition and poset from each element's (domain-key,
/// range-key) pair plus a class comparison. `class_leq` receives the sorted
/// key lists of two distinct tentative classes and decides strict-or-equal
/// order; it must be a partial order on classes.
pub(crate) fn assemble_green<K, F>(keys: &[(K, K)], mut class_leq: F) -> GreenStructure<K>
where
    K: Copy + Ord + Eq + std::hash::Hash,
    F: FnMut(&[K], &[K]) -> bool,
{
    // Distinct keys, in first-seen order.
    let mut key_id: HashMap<K, usize> = HashMap::new();
    let mut key_list: Vec<K> = Vec::new();
    for &(l, r) in keys {
        for k in [l, r] {
            key_id.entry(k).or_insert_with(|| {
                key_list.push(k);
                key_list.len() - 1
            });
        }
    }

    // D-classes are the connected components of the key graph in which each
    // element ties its domain key to its range key (one multiplication step
    // witnesses L∘R, and D = L∘R in an inverse monoid).
    let mut parent: Vec<usize> = (0..key_list.len()).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(l, r) in keys {
        let (a, b) = (key_id[&l], key_id[&r]);
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }

    // Group keys per component, sorted for determinism.
    let mut comp_keys: HashMap<usize, Vec<K>> = HashMap::new();
    for (id, &k) in key_list.iter().enumerate() {
        comp_keys.entry(find(&mut parent, id)).or_default().push(k);
    }
    let mut classes: Vec<Vec<K>> = comp_keys.into_values().collect();
    for keys in &mut classes {
        keys.sort_unstable();
    }
    classes.sort();

    // Fill the eggboxes.
    let mut dclasses: Vec<DClass<K>> = classes
        .iter()
        .map(|ckeys| {
            let m = ckeys.len();
            DClass {
                rkeys: ckeys.clone(),
                lkeys: ckeys.clone(),
                cells: vec![vec![Vec::new(); m]; m],
                idempotent_cells: (0..m).map(|i| (i, i)).collect(),
            }
        })
        .collect();
    let class_of_key: HashMap<K, usize> = classes
        .iter()
        .enumerate()
        .flat_map(|(c, ckeys)| ckeys.iter().map(move |&k| (k, c)))
        .collect();
    let mut class_of = vec![0usize; keys.len()];
    for (idx, &(l, r)) in keys.iter().enumerate() {
        let c = class_of_key[&l];
        debug_assert_eq!(c, class_of_key[&r]);
        class_of[idx] = c;
        let dc = &mut dclasses[c];
        let i = dc.rkeys.binary_search(&r).expect("range key belongs to the class");
        let j = dc.lkeys.binary_search(&l).expect("domain key belongs to the class");
        dc.cells[i][j].push(idx);
    }
    for dc in &dclasses {
        let size = dc.cells[0][0].len();
        for row in &dc.cells {
            for cell in row {
                assert!(!cell.is_empty(), "every eggbox cell is nonempty");
                assert_eq!(cell.len(), size, "eggbox cells have equal cardinality");
            }
        }
    }

    // Strict order and heights (longest chain from a minimal class).
    let c = dclasses.len();
    let mut strict: Vec<(usize, usize)> = Vec::new();
    for a in 0..c {
        for b in 0..c {
            if a != b && class_leq(&dclasses[a].lkeys, &dclasses[b].lkeys) {
                debug_assert!(
                    !class_leq(&dclasses[b].lkeys, &dclasses[a].lkeys),
                    "class order is antisymmetric"
                );
                strict.push((a, b));
            }
        }
    }
    let mut heights = vec![0usize; c];
    for _ in 0..c {
        for &(a, b) in &strict {
            heights[b] = heights[b].max(heights[a] + 1);
        }
    }

    // Final presentation order: by (height, smallest key); remap everything.
    let mut order: Vec<usize> = (0..c).collect();
    order.sort_by_key(|&i| (heights[i], dclasses[i].lkeys[0]));
    let mut rank_of = vec![0usize; c];
    for (new, &old) in order.iter().enumerate() {
        rank_of[old] = new;
    }
    let mut sorted_classes: Vec<(usize, DClass<K>)> =
        dclasses.into_iter().enumerate().collect();
    sorted_classes.sort_by_key(|&(old, _)| rank_of[old]);
    let dclasses: Vec<DClass<K>> = sorted_classes.into_iter().map(|(_, d)| d).collect();
    let heights: Vec<usize> = order.iter().map(|&old| heights[old]).collect();
    let class_of: Vec<usize> = class_of.into_iter().map(|old| rank_of[old]).collect();
    let mut poset: Vec<(usize, usize)> = strict
        .into_iter()
        .map(|(a, b)| (rank_of[a], rank_of[b]))
        .collect();
    poset.sort_unstable();

    GreenStructure { dclasses, poset, heights, class_of }
}

/// Tests one of Green's relations between two members of `s`.
pub fn related(
    s: &InverseSubmonoid,
    rel: GreenRelation,
    f: &PartialPerm,
    g: &PartialPerm,
) -> Result<bool, GreenError> {
    for x in [f, g] {
        if !s.contains(x) {
            return Err(GreenError::NotAMember(x.to_string()));
        }
    }
    Ok(match rel {
        GreenRelation::L => f.dom_mask() == g.dom_mask(),
        GreenRelation::R => f.ran_mask() == g.ran_mask(),
        GreenRelation::H => f.dom_mask() == g.dom_mask() && f.ran_mask() == g.ran_mask(),
        GreenRelation::D => {
            let (dom, ran) = (f.dom_mask(), g.ran_mask());
            s.elements()
                .iter()
                .any(|psi| psi.dom_mask() == dom && psi.ran_mask() == ran)
        }
    })
}

/// Computes the full Green structure of an inverse submonoid of a symmetric
/// inverse monoid.
///
/// The class order is decided by the embedding test: `D_a ≤ D_b` when some
/// member maps a domain key of `D_a` into a subset of a domain key of `D_b`.
/// One key per class suffices, since the keys of a class are connected by
/// members and composition transports an embedding from key to key.
pub fn green_structure(s: &InverseSubmonoid) -> GreenStructure<u64> {
    let keys: Vec<(u64, u64)> = s
        .elements()
        .iter()
        .map(|f| (f.dom_mask(), f.ran_mask()))
        .collect();
    // Range masks reachable from each domain mask.
    let mut reach: HashMap<u64, Vec<u64>> = HashMap::new();
    for &(dom, ran) in &keys {
        let rans = reach.entry(dom).or_default();
        if !rans.contains(&ran) {
            rans.push(ran);
        }
    }
    assemble_green(&keys, |a: &[u64], b: &[u64]| {
        let (ka, kb) = (a[0], b[0]);
        reach
            .get(&ka)
            .is_some_and(|rans| rans.iter().any(|&r| r & !kb == 0))
    })
}

/// The height of a member: for inverse submonoids of a symmetric inverse
/// monoid this is its rank (the longest strictly increasing chain below an
/// element restricts one point at a time).
pub fn height(s: &InverseSubmonoid, f: &PartialPerm) -> Result<usize, GreenError> {
    if !s.contains(f) {
        return Err(GreenError::NotAMember(f.to_string()));
    }
    Ok(f.rank())
}

/// Labels each D-class of `PAut(Γ)` with the canonical form of the subgraph
/// of `g` induced by any of its domain keys, verifying that every key of
/// the class gives the same form.
pub fn dclass_subgraph_correspondence(
    g: &Graph,
    s: &InverseSubmonoid,
    gs: &GreenStructure<u64>,
) -> Result<Vec<Graph>, GreenError> {
    if g.n() != s.ground().size() {
        return Err(GreenError::GroundMismatch(g.n(), s.ground().size()));
    }
    gs.dclasses
        .iter()
        .enumerate()
        .map(|(ci, dc)| {
            let forms: Vec<Graph> =
                dc.lkeys.iter().map(|&mask| g.induced(mask).canonical()).collect();
            if forms.iter().any(|f| f != &forms[0]) {
                return Err(GreenError::InconsistentClass(ci));
            }
            Ok(forms.into_iter().next().expect("every class has a key"))
        })
        .collect()
}

#[derive(Serialize)]
struct EggboxDump {
    dclasses: Vec<DClassDump>,
    poset: Vec<(usize, usize)>,
}

#[derive(Serialize)]
struct DClassDump {
    height: usize,
    rkeys: Vec<Vec<usize>>,
    lkeys: Vec<Vec<usize>>,
    cells: Vec<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

fn mask_points(mask: u64) -> Vec<usize> {
    pperm::bits(mask).map(|p| p + 1).collect()
}

/// Serializes a concrete Green structure as JSON: per class height, row and
/// column keys (1-based vertex lists), cell grids of element indices, and an
/// optional label per class; plus the strict class order.
pub fn eggbox_json(gs: &GreenStructure<u64>, labels: Option<&[String]>) -> String {
    let dump = EggboxDump {
        dclasses: gs
            .dclasses
            .iter()
            .enumerate()
            .map(|(ci, dc)| DClassDump {
                height: gs.heights[ci],
                rkeys: dc.rkeys.iter().copied().map(mask_points).collect(),
                lkeys: dc.lkeys.iter().copied().map(mask_points).collect(),
                cells: dc.cells.clone(),
                label: labels.map(|ls| ls[ci].clone()),
            })
            .collect(),
        poset: gs.poset.clone(),
    };
    serde_json::to_string(&dump).expect("eggbox serialization cannot fail")
}

fn set_str(mask: u64) -> String {
    let pts: Vec<String> = mask_points(mask).iter().map(usize::to_string).collect();
    format!("{{{}}}", pts.join(","))
}

/// Renders the eggbox diagrams as plain text, one grid per D-class: rows are
/// R-classes, columns are L-classes, idempotents are starred.
pub fn render_eggbox(
    s: &InverseSubmonoid,
    gs: &GreenStructure<u64>,
    labels: Option<&[String]>,
) -> String {
    let els = s.elements();
    let mut out = String::new();
    for (ci, dc) in gs.dclasses.iter().enumerate() {
        if ci > 0 {
            out.push('\n');
        }
        out.push_str(&format!("D{ci}  height {}", gs.heights[ci]));
        if let Some(ls) = labels {
            out.push_str(&format!("  [{}]", ls[ci]));
        }
        out.push('\n');

        let render_cell = |cell: &[usize]| -> String {
            cell.iter()
                .map(|&i| {
                    let f = &els[i];
                    if f.is_partial_identity() {
                        format!("{f}*")
                    } else {
                        f.to_string()
                    }
                })
                .collect::<Vec<_>>()
                .join(", ")
        };
        let row_headers: Vec<String> = dc.rkeys.iter().map(|&k| set_str(k)).collect();
        let col_headers: Vec<String> = dc.lkeys.iter().map(|&k| set_str(k)).collect();
        let grid: Vec<Vec<String>> = dc
            .cells
            .iter()
            .map(|row| row.iter().map(|c| render_cell(c)).collect())
            .collect();

        let hdr_w = row_headers.iter().map(String::len).max().unwrap_or(0);
        let col_w: Vec<usize> = (0..col_headers.len())
            .map(|j| {
                grid.iter()
                    .map(|row| row[j].len())
                    .chain([col_headers[j].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();

        out.push_str(&" ".repeat(hdr_w + 2));
        for (j, h) in col_headers.iter().enumerate() {
            out.push_str(&format!("| {:<w$} ", h, w = col_w[j]));
        }
        out.push('\n');
        for (i, row) in grid.iter().enumerate() {
            out.push_str(&format!("  {:<w$}", row_headers[i], w = hdr_w));
            for (j, cell) in row.iter().enumerate() {
                out.push_str(&format!("| {:<w$} ", cell, w = col_w[j]));
            }
            out.push('\n');
        }
    }
    out
}
