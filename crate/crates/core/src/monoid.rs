//! Abstract finite inverse monoids given by multiplication tables.
//!
//! A [`MulTable`] is raw data: element count, identity index, and an m×m
//! product grid. [`InverseMonoid`] wraps a table that passed validation
//! (associativity, two-sided identity, unique generalized inverses) and
//! offers the algebra on top: natural partial order, compatibility and
//! joins, the idempotent semilattice with zero and atoms, Boolean and
//! fundamental tests, Munn maps, Green structure, and a brute-force table
//! isomorphism oracle. Reported witnesses are always lexicographically
//! least, so outputs are reproducible.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::green::{assemble_green, GreenStructure};
use crate::paut::InverseSubmonoid;
use crate::pperm::{GroundSet, PartialPerm};

/// A finite monoid presented by its multiplication table. `table[a][b]` is
/// the product `a·b`. Plain data; see [`InverseMonoid`] for the validated
/// wrapper.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MulTable {
    /// Element count.
    pub m: usize,
    /// Index of the two-sided identity.
    pub identity: usize,
    /// Row-major products: `table[a][b] = a·b`.
    pub table: Vec<Vec<usize>>,
    /// Optional display names, parallel to the element indices.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

/// First defect found when validating a [`MulTable`], with the
/// lexicographically least witness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableDefect {
    /// The table must have at least one element.
    #[error("the table is empty")]
    Empty,
    /// `table` does not have `m` rows.
    #[error("table has {rows} rows, expected {expected}")]
    WrongRowCount {
        /// Rows present.
        rows: usize,
        /// Rows required.
        expected: usize,
    },
    /// A row of `table` does not have `m` entries.
    #[error("row {row} has {len} entries, expected {expected}")]
    RaggedRow {
        /// Index of the offending row.
        row: usize,
        /// Entries present.
        len: usize,
        /// Entries required.
        expected: usize,
    },
    /// A product index is not an element.
    #[error("entry ({row}, {col}) = {value} is out of range")]
    EntryOutOfRange {
        /// Row of the offending entry.
        row: usize,
        /// Column of the offending entry.
        col: usize,
        /// The out-of-range product index.
        value: usize,
    },
    /// The declared identity is not an element.
    #[error("identity index {0} is out of range")]
    IdentityOutOfRange(usize),
    /// The declared identity is not two-sided neutral.
    #[error("identity is not neutral on element {0}")]
    IdentityNotNeutral(usize),
    /// The product is not associative.
    #[error("not associative: ({a}·{b})·{c} ≠ {a}·({b}·{c})")]
    NonAssociative {
        /// First element of the least failing triple.
        a: usize,
        /// Second element.
        b: usize,
        /// Third element.
        c: usize,
    },
    /// An element has no generalized inverse.
    #[error("element {0} has no generalized inverse")]
    NoInverse(usize),
    /// An element has two generalized inverses.
    #[error("element {element} has two generalized inverses, {first} and {second}")]
    NonUniqueInverse {
        /// The element with ambiguous inverse.
        element: usize,
        /// Least generalized inverse.
        first: usize,
        /// Next generalized inverse.
        second: usize,
    },
}

/// Errors from abstract-monoid operations beyond table validation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidError {
    /// The table failed validation.
    #[error(transparent)]
    Defect(#[from] TableDefect),
    /// The operation needs a zero element (an absorbing element).
    #[error("the monoid has no zero element")]
    NoZero,
    /// The operation needs a nonempty atom set.
    #[error("the idempotent semilattice has no atoms")]
    NoAtoms,
    /// An element index outside the table.
    #[error("element index {0} out of range for {1} elements")]
    IndexOutOfRange(usize, usize),
    /// Malformed table JSON.
    #[error("malformed table JSON: {0}")]
    BadJson(String),
}

impl MulTable {
    /// Checks shape, identity, associativity, and unique generalized
    /// inverses; returns the first defect in that fixed scan order, or
    /// `None` when the table is a valid inverse monoid.
    pub fn validate(&self) -> Option<TableDefect> {
        let m = self.m;
        if m == 0 {
            return Some(TableDefect::Empty);
        }
        if self.table.len() != m {
            return Some(TableDefect::WrongRowCount { rows: self.table.len(), expected: m });
        }
        for (row, r) in self.table.iter().enumerate() {
            if r.len() != m {
                return Some(TableDefect::RaggedRow { row, len: r.len(), expected: m });
            }
        }
        for (row, r) in self.table.iter().enumerate() {
            for (col, &value) in r.iter().enumerate() {
                if value >= m {
                    return Some(TableDefect::EntryOutOfRange { row, col, value });
                }
            }
        }
        if self.identity >= m {
            return Some(TableDefect::IdentityOutOfRange(self.identity));
        }
        let e = self.identity;
        for x in 0..m {
            if self.table[e][x] != x || self.table[x][e] != x {
                return Some(TableDefect::IdentityNotNeutral(x));
            }
        }
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]] {
                        return Some(TableDefect::NonAssociative { a, b, c });
                    }
                }
            }
        }
        for s in 0..m {
            let mut found: Option<usize> = None;
            for t in 0..m {
                let sts = self.table[self.table[s][t]][s];
                let tst = self.table[self.table[t][s]][t];
                if sts == s && tst == t {
                    match found {
                        None => found = Some(t),
                        Some(first) => {
                            return Some(TableDefect::NonUniqueInverse {
                                element: s,
                                first,
                                second: t,
                            });
                        }
                    }
                }
            }
            if found.is_none() {
                return Some(TableDefect::NoInverse(s));
            }
        }
        None
    }

    /// Parses the interchange JSON `{"m": …, "identity": …, "table": […]}`.
    /// Structural parse only; validation is separate.
    pub fn from_json(text: &str) -> Result<MulTable, MonoidError> {
        serde_json::from_str(text).map_err(|e| MonoidError::BadJson(e.to_string()))
    }

    /// Serializes to compact interchange JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("table serialization cannot fail")
    }
}

/// The multiplication table of an inverse submonoid of a symmetric inverse
/// monoid, in the submonoid's canonical element order (so index `i` of the
/// table is element `i` of the submonoid). Names carry the cycle–path
/// notation of each element.
pub fn table_from_submonoid(s: &InverseSubmonoid) -> MulTable {
    let els = s.elements();
    let table: Vec<Vec<usize>> = els
        .iter()
        .map(|a| {
            els.iter()
                .map(|b| {
                    let ab = a.compose(b).expect("equal ground sets");
                    s.index_of(&ab).expect("the submonoid is closed")
                })
                .collect()
        })
        .collect();
    MulTable {
        m: els.len(),
        identity: s
            .index_of(&PartialPerm::identity(s.ground()))
            .expect("identity is a member"),
        table,
        names: Some(els.iter().map(PartialPerm::to_string).collect()),
    }
}

/// The idempotent semilattice of an inverse monoid: the commuting
/// idempotents under multiplication (which is their meet), the zero when
/// the monoid has one, and the atoms directly above it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdempotentLattice {
    /// Element indices of the idempotents, ascending.
    pub idems: Vec<usize>,
    /// Meet grid in idempotent coordinates: `meet[i][j]` is the position in
    /// `idems` of `idems[i] · idems[j]`.
    pub meet: Vec<Vec<usize>>,
    /// The monoid zero (absorbing element), if present.
    pub zero: Option<usize>,
    /// Minimal idempotents above the zero (element indices); empty when
    /// there is no zero.
    pub atoms: Vec<usize>,
}

/// A validated finite inverse monoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseMonoid {
    table: MulTable,
    inv: Vec<usize>,
    idems: Vec<usize>,
}

impl InverseMonoid {
    /// Validates a table and wraps it. The unique generalized inverses and
    /// the idempotent list are precomputed.
    pub fn from_table(table: MulTable) -> Result<InverseMonoid, TableDefect> {
        if let Some(defect) = table.validate() {
            return Err(defect);
        }
        let m = table.m;
        let inv: Vec<usize> = (0..m)
            .map(|s| {
                (0..m)
                    .find(|&t| {
                        table.table[table.table[s][t]][s] == s
                            && table.table[table.table[t][s]][t] == t
                    })
                    .expect("validation guarantees an inverse")
            })
            .collect();
        let idems: Vec<usize> = (0..m).filter(|&x| table.table[x][x] == x).collect();
        Ok(InverseMonoid { table, inv, idems })
    }

    /// Element count.
    pub fn len(&self) -> usize {
        self.table.m
    }

    /// Never empty: there is at least the identity.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// The identity's index.
    pub fn identity(&self) -> usize {
        self.table.identity
    }

    /// The underlying table.
    pub fn table(&self) -> &MulTable {
        &self.table
    }

    /// Product of two elements.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table.table[a][b]
    }

    /// The unique generalized inverse.
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// Idempotency test.
    pub fn is_idempotent(&self, a: usize) -> bool {
        self.mul(a, a) == a
    }

    /// Element indices of the idempotents, ascending.
    pub fn idempotents(&self) -> &[usize] {
        &self.idems
    }

    /// Natural partial order: `a ≤ b` iff `a = b·e` for some idempotent `e`.
    pub fn natural_leq(&self, a: usize, b: usize) -> bool {
        self.idems.iter().any(|&e| self.mul(b, e) == a)
    }

    /// Compatibility: `a·b⁻¹` and `a⁻¹·b` are both idempotent. Necessary
    /// (not sufficient) for a join to exist.
    pub fn compatible(&self, a: usize, b: usize) -> bool {
        self.is_idempotent(self.mul(a, self.inv[b]))
            && self.is_idempotent(self.mul(self.inv[a], b))
    }

    /// Least upper bound in the natural order, when it exists: collects all
    /// upper bounds and verifies one of them is below every other.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let ubs: Vec<usize> = (0..self.len())
            .filter(|&u| self.natural_leq(a, u) && self.natural_leq(b, u))
            .collect();
        ubs.iter()
            .copied()
            .find(|&u0| ubs.iter().all(|&u| self.natural_leq(u0, u)))
    }

    /// The monoid zero (two-sided absorbing element), if present.
    pub fn zero(&self) -> Option<usize> {
        (0..self.len()).find(|&z| {
            (0..self.len()).all(|s| self.mul(z, s) == z && self.mul(s, z) == z)
        })
    }

    /// The idempotent semilattice with zero and atoms.
    pub fn idempotent_lattice(&self) -> IdempotentLattice {
        let idems = self.idems.clone();
        let pos: HashMap<usize, usize> =
            idems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let meet: Vec<Vec<usize>> = idems
            .iter()
            .map(|&e| {
                idems
                    .iter()
                    .map(|&f| pos[&self.mul(e, f)])
                    .collect()
            })
            .collect();
        let zero = self.zero();
        let atoms = match zero {
            None => Vec::new(),
            Some(z) => idems
                .iter()
                .copied()
                .filter(|&e| {
                    e != z
                        && idems.iter().all(|&f| {
                            f == z || f == e || self.mul(f, e) != f
                        })
                })
                .collect(),
        };
        IdempotentLattice { idems, meet, zero, atoms }
    }

    /// Whether the idempotent semilattice is the meet-semilattice of a
    /// Boolean algebra: a zero exists and `e ↦ {atoms below e}` is a
    /// meet-respecting bijection onto the powerset of the atom set.
    pub fn is_boolean(&self) -> bool {
        let lat = self.idempotent_lattice();
        if lat.zero.is_none() {
            return false;
        }
        let k = lat.atoms.len();
        if k >= 64 || lat.idems.len() != 1usize << k {
            return false;
        }
        let atom_mask = |e: usize| -> u64 {
            lat.atoms
                .iter()
                .enumerate()
                .filter(|&(_, &a)| self.mul(a, e) == a)
                .map(|(i, _)| 1u64 << i)
                .sum()
        };
        let masks: Vec<u64> = lat.idems.iter().map(|&e| atom_mask(e)).collect();
        let mut seen = masks.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != masks.len() {
            return false;
        }
        // Bijectivity follows from injectivity and |E| = 2^k; meets must
        // map to intersections.
        for (i, &e) in lat.idems.iter().enumerate() {
            for (j, &f) in lat.idems.iter().enumerate() {
                let ef = self.mul(e, f);
                let p = lat.idems.binary_search(&ef).expect("idempotents are closed");
                if masks[p] != masks[i] & masks[j] {
                    return false;
                }
            }
        }
        true
    }

    /// The Munn map of `s`: the order isomorphism from the idempotents
    /// below `s⁻¹s` to those below `s·s⁻¹`, `e ↦ s·e·s⁻¹`. Returned as
    /// sorted (source, image) pairs of element indices.
    pub fn munn(&self, s: usize) -> Result<Vec<(usize, usize)>, MonoidError> {
        if s >= self.len() {
            return Err(MonoidError::IndexOutOfRange(s, self.len()));
        }
        let dom_top = self.mul(self.inv[s], s);
        Ok(self
            .idems
            .iter()
            .copied()
            .filter(|&e| self.mul(e, dom_top) == e)
            .map(|e| (e, self.mul(self.mul(s, e), self.inv[s])))
            .collect())
    }

    /// The restricted Munn representation: each element acting on the atom
    /// set as a partial permutation (atom `i` is in the domain when it lies
    /// below `s⁻¹s`, and maps to the atom `s·aᵢ·s⁻¹`). Requires a zero so
    /// atoms are defined; the atom indices follow ascending element order.
    pub fn restricted_munn(&self) -> Result<Vec<PartialPerm>, MonoidError> {
        let lat = self.idempotent_lattice();
        if lat.zero.is_none() {
            return Err(MonoidError::NoZero);
        }
        if lat.atoms.is_empty() {
            return Err(MonoidError::NoAtoms);
        }
        let ground = GroundSet::new(lat.atoms.len())?;
        let atom_pos: HashMap<usize, usize> =
            lat.atoms.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        (0..self.len())
            .map(|s| {
                let dom_top = self.mul(self.inv[s], s);
                let pairs: Vec<(usize, usize)> = lat
                    .atoms
                    .iter()
                    .enumerate()
                    .filter(|&(_, &a)| self.mul(a, dom_top) == a)
                    .map(|(i, &a)| {
                        let image = self.mul(self.mul(s, a), self.inv[s]);
                        (i, *atom_pos.get(&image).expect("Munn maps atoms to atoms"))
                    })
                    .collect();
                PartialPerm::from_pairs(ground, &pairs).map_err(MonoidError::from)
            })
            .collect()
    }

    /// Whether the Munn representation `s ↦ δ_s` is injective.
    pub fn is_fundamental(&self) -> bool {
        let deltas: Vec<Vec<(usize, usize)>> = (0..self.len())
            .map(|s| self.munn(s).expect("indices in range"))
            .collect();
        let mut sorted = deltas.clone();
        sorted.sort();
        sorted.dedup();
        sorted.len() == deltas.len()
    }

    /// Green structure from the table: classes keyed by the idempotents
    /// `a⁻¹a` (domains) and `a·a⁻¹` (ranges); the class order is the
    /// definitional two-sided divisibility `e_a ∈ S·e_b·S` tested on the
    /// least key idempotents.
    pub fn green(&self) -> GreenStructure<usize> {
        let keys: Vec<(usize, usize)> = (0..self.len())
            .map(|a| (self.mul(self.inv[a], a), self.mul(a, self.inv[a])))
            .collect();
        let m = self.len();
        assemble_green(&keys, |a: &[usize], b: &[usize]| {
            let (ea, eb) = (a[0], b[0]);
            (0..m).any(|x| {
                let xe = self.mul(x, eb);
                (0..m).any(|y| self.mul(xe, y) == ea)
            })
        })
    }
}

impl From<crate::pperm::PPermError> for MonoidError {
    fn from(e: crate::pperm::PPermError) -> MonoidError {
        // Only reachable through malformed atom data, which validation
        // rules out; keep a lossless message anyway.
        MonoidError::BadJson(e.to_string())
    }
}

/// One of Green's relations computed from a table by the definitional
/// quantifiers (mutual left/right divisibility); `D` is the composite
/// `L∘R`. Intended as a cross-check for [`InverseMonoid::green`].
pub fn related_abs(
    m: &InverseMonoid,
    rel: crate::green::GreenRelation,
    a: usize,
    b: usize,
) -> bool {
    use crate::green::GreenRelation::*;
    let n = m.len();
    let l = |a: usize, b: usize| {
        (0..n).any(|x| m.mul(x, a) == b) && (0..n).any(|y| m.mul(y, b) == a)
    };
    let r = |a: usize, b: usize| {
        (0..n).any(|x| m.mul(a, x) == b) && (0..n).any(|y| m.mul(b, y) == a)
    };
    match rel {
        L => l(a, b),
        R => r(a, b),
        H => l(a, b) && r(a, b),
        D => (0..n).any(|c| l(a, c) && r(c, b)),
    }
}

/// Per-element invariants that any monoid isomorphism must preserve; equal
/// fingerprints are a necessary condition for `a ↦ b`.
fn fingerprints(t: &InverseMonoid) -> Vec<(bool, usize, usize, usize, bool)> {
    let m = t.len();
    (0..m)
        .map(|a| {
            // Power trajectory of a: where it first repeats and how long
            // the cycle is.
            let mut seen: HashMap<usize, usize> = HashMap::new();
            let mut x = a;
            let mut step = 0usize;
            let (preperiod, period) = loop {
                if let Some(&first) = seen.get(&x) {
                    break (first, step - first);
                }
                seen.insert(x, step);
                x = t.mul(x, a);
                step += 1;
            };
            let squares = (0..m).filter(|&y| t.mul(y, y) == a).count();
            (t.is_idempotent(a), preperiod, period, squares, t.inv(a) == a)
        })
        .collect()
}

/// Brute-force monoid isomorphism between two validated tables: returns the
/// lexicographically least witness bijection (as the image list), or `None`.
pub fn table_isomorphism(a: &InverseMonoid, b: &InverseMonoid) -> Option<Vec<usize>> {
    let m = a.len();
    if m != b.len() {
        return None;
    }
    let fa = fingerprints(a);
    let fb = fingerprints(b);
    {
        let mut sa = fa.clone();
        let mut sb = fb.clone();
        sa.sort();
        sb.sort();
        if sa != sb {
            return None;
        }
    }
    let mut map = vec![usize::MAX; m];
    let mut rev = vec![usize::MAX; m];
    map[a.identity()] = b.identity();
    rev[b.identity()] = a.identity();
    if fa[a.identity()] != fb[b.identity()] {
        return None;
    }

    fn rec(
        a: &InverseMonoid,
        b: &InverseMonoid,
        fa: &[(bool, usize, usize, usize, bool)],
        fb: &[(bool, usize, usize, usize, bool)],
        map: &mut Vec<usize>,
        rev: &mut Vec<usize>,
        x: usize,
    ) -> bool {
        let m = a.len();
        if x == m {
            return true;
        }
        if map[x] != usize::MAX {
            return rec(a, b, fa, fb, map, rev, x + 1);
        }
        'cand: for y in 0..m {
            if rev[y] != usize::MAX || fa[x] != fb[y] {
                continue;
            }
            // Product constraints against everything mapped so far.
            for w in 0..m {
                if map[w] == usize::MAX {
                    continue;
                }
                for (p, q) in [(a.mul(x, w), b.mul(y, map[w])), (a.mul(w, x), b.mul(map[w], y))]
                {
                    if map[p] != usize::MAX {
                        if map[p] != q {
                            continue 'cand;
                        }
                    } else if rev[q] != usize::MAX {
                        continue 'cand;
                    }
                }
            }
            let (sq_a, sq_b) = (a.mul(x, x), b.mul(y, y));
            if map[sq_a] != usize::MAX && map[sq_a] != sq_b {
                continue;
            }
            map[x] = y;
            rev[y] = x;
            if rec(a, b, fa, fb, map, rev, x + 1) {
                return true;
            }
            map[x] = usize::MAX;
            rev[y] = usize::MAX;
        }
        false
    }

    if rec(a, b, &fa, &fb, &mut map, &mut rev, 0) {
        Some(map)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::Graph;
    use crate::paut::enumerate_paut;
    use crate::pperm::parse_cpn;

    fn z2() -> MulTable {
        MulTable { m: 2, identity: 0, table: vec![vec![0, 1], vec![1, 0]], names: None }
    }

    fn z2_with_zero() -> MulTable {
        // Elements: 0 = identity, 1 = the involution, 2 = zero.
        MulTable {
            m: 3,
            identity: 0,
            table: vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 2]],
            names: None,
        }
    }

    fn paut_table(g: &Graph) -> (InverseSubmonoid, InverseMonoid) {
        let s = enumerate_paut(&g.to_digraph()).unwrap();
        let t = InverseMonoid::from_table(table_from_submonoid(&s)).unwrap();
        (s, t)
    }

    fn gamma0() -> Graph {
        Graph::from_edges(4, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn validation_accepts_encoded_monoids() {
        let (s, t) = paut_table(&Graph::complete(2).unwrap());
        assert_eq!(s.len(), 7);
        assert_eq!(t.len(), 7);
        assert!(InverseMonoid::from_table(z2()).is_ok());
        assert!(InverseMonoid::from_table(z2_with_zero()).is_ok());
    }

    #[test]
    fn validation_rejects_with_least_witness() {
        // Shape defects first.
        let empty = MulTable { m: 0, identity: 0, table: vec![], names: None };
        assert_eq!(empty.validate(), Some(TableDefect::Empty));
        let ragged = MulTable { m: 2, identity: 0, table: vec![vec![0, 1], vec![1]], names: None };
        assert_eq!(
            ragged.validate(),
            Some(TableDefect::RaggedRow { row: 1, len: 1, expected: 2 })
        );
        // Broken identity.
        let noident =
            MulTable { m: 2, identity: 0, table: vec![vec![0, 0], vec![1, 1]], names: None };
        assert_eq!(noident.validate(), Some(TableDefect::IdentityNotNeutral(1)));
        // Non-associative, least triple reported.
        let nonassoc = MulTable {
            m: 3,
            identity: 0,
            table: vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 1, 1]],
            names: None,
        };
        assert_eq!(
            nonassoc.validate(),
            Some(TableDefect::NonAssociative { a: 2, b: 1, c: 2 })
        );
        // Full transformation monoid on two points: inverses not unique.
        // 0 = id, 1 = swap, 2 = constant-to-first, 3 = constant-to-second.
        let t2 = MulTable {
            m: 4,
            identity: 0,
            table: vec![
                vec![0, 1, 2, 3],
                vec![1, 0, 3, 2],
                vec![2, 2, 2, 2],
                vec![3, 3, 3, 3],
            ],
            names: None,
        };
        assert_eq!(
            t2.validate(),
            Some(TableDefect::NonUniqueInverse { element: 2, first: 2, second: 3 })
        );
    }

    #[test]
    fn inverse_laws_hold_on_validated_tables() {
        let tables = [
            InverseMonoid::from_table(z2()).unwrap(),
            InverseMonoid::from_table(z2_with_zero()).unwrap(),
            paut_table(&Graph::complete(2).unwrap()).1,
            paut_table(&gamma0()).1,
        ];
        for t in &tables {
            for a in 0..t.len() {
                assert_eq!(t.inv(t.inv(a)), a);
                for b in 0..t.len() {
                    assert_eq!(t.inv(t.mul(a, b)), t.mul(t.inv(b), t.inv(a)));
                }
            }
        }
    }

    #[test]
    fn natural_order_compatibility_and_joins_match_the_concrete_monoid() {
        let mut graphs = Vec::new();
        for n in 1..=4usize {
            graphs.extend(crate::graphs::all_labeled_graphs(n).unwrap());
        }
        for g in graphs {
            let (s, t) = paut_table(&g);
            let els = s.elements();
            for (i, f) in els.iter().enumerate() {
                for (j, h) in els.iter().enumerate() {
                    assert_eq!(t.natural_leq(i, j), f.natural_leq(h).unwrap(), "{f} vs {h}");
                    assert_eq!(t.compatible(i, j), f.compatible(h).unwrap(), "{f} vs {h}");
                    let join_abs = t.join(i, j);
                    let join_conc = match f.join(h) {
                        Ok(u) => s.index_of(&u),
                        Err(_) => None,
                    };
                    assert_eq!(join_abs, join_conc, "{f} vs {h}");
                }
            }
        }
    }

    #[test]
    fn compatible_pair_without_join() {
        let (s, t) = paut_table(&gamma0());
        let f = parse_cpn("[1 2)", s.ground()).unwrap();
        let h = parse_cpn("[4 3)", s.ground()).unwrap();
        let (i, j) = (s.index_of(&f).unwrap(), s.index_of(&h).unwrap());
        assert!(t.compatible(i, j));
        assert_eq!(t.join(i, j), None);
        // In the whole symmetric inverse monoid the same pair has a join.
        let (si, ti) = paut_table(&Graph::complete(4).unwrap());
        let (i, j) = (si.index_of(&f).unwrap(), si.index_of(&h).unwrap());
        assert!(ti.compatible(i, j));
        assert_eq!(
            ti.join(i, j),
            Some(si.index_of(&f.join(&h).unwrap()).unwrap())
        );
    }

    #[test]
    fn whole_monoid_join_exists_iff_compatible() {
        let (_, t) = paut_table(&Graph::complete(3).unwrap());
        for a in 0..t.len() {
            for b in 0..t.len() {
                assert_eq!(t.join(a, b).is_some(), t.compatible(a, b));
                assert_eq!(t.join(a, a), Some(a));
            }
        }
    }

    #[test]
    fn boolean_detection() {
        let (_, i3) = paut_table(&Graph::complete(3).unwrap());
        assert!(i3.is_boolean());
        assert_eq!(i3.idempotent_lattice().atoms.len(), 3);

        let (_, g0) = paut_table(&gamma0());
        assert!(g0.is_boolean());
        assert_eq!(g0.idempotent_lattice().atoms.len(), 4);

        let z2m = InverseMonoid::from_table(z2()).unwrap();
        assert!(!z2m.is_boolean());
        assert_eq!(z2m.idempotent_lattice().zero, None);

        // Z₂ with zero is Boolean (E = {1, 0} ≅ powerset of one atom)…
        let z2z = InverseMonoid::from_table(z2_with_zero()).unwrap();
        assert!(z2z.is_boolean());
        assert_eq!(z2z.idempotent_lattice().atoms, vec![0]);
        // …and Boolean always implies |E| = 2^atoms.
        for t in [&i3, &g0, &z2z] {
            let lat = t.idempotent_lattice();
            assert_eq!(lat.idems.len(), 1 << lat.atoms.len());
        }
    }

    #[test]
    fn munn_maps() {
        let (s, t) = paut_table(&gamma0());
        // At an idempotent, the Munn map is the identity on its ideal.
        for &e in t.idempotents() {
            for (src, img) in t.munn(e).unwrap() {
                assert_eq!(src, img);
            }
        }
        // The identity's Munn map covers every idempotent.
        assert_eq!(t.munn(t.identity()).unwrap().len(), t.idempotents().len());
        // Out-of-range index is an error.
        assert!(matches!(t.munn(999), Err(MonoidError::IndexOutOfRange(999, _))));
        let _ = s;
    }

    #[test]
    fn restricted_munn_reproduces_the_vertex_action() {
        // For the table of a partial automorphism monoid, the atoms are the
        // one-point partial identities in vertex order, so each element's
        // action on atoms is the element itself.
        for g in [gamma0(), Graph::complete(3).unwrap(), Graph::from_edges(3, &[(0, 1)]).unwrap()]
        {
            let (s, t) = paut_table(&g);
            let alpha = t.restricted_munn().unwrap();
            assert_eq!(alpha.len(), s.len());
            for (i, f) in s.elements().iter().enumerate() {
                assert_eq!(&alpha[i], f, "element {f}");
            }
        }
    }

    #[test]
    fn restricted_munn_is_a_homomorphism() {
        let tables = [
            InverseMonoid::from_table(z2_with_zero()).unwrap(),
            paut_table(&Graph::complete(2).unwrap()).1,
            paut_table(&Graph::complete(3).unwrap()).1,
            paut_table(&gamma0()).1,
        ];
        for t in &tables {
            let alpha = t.restricted_munn().unwrap();
            for a in 0..t.len() {
                for b in 0..t.len() {
                    assert_eq!(
                        alpha[t.mul(a, b)],
                        alpha[a].compose(&alpha[b]).unwrap(),
                        "elements {a}, {b}"
                    );
                }
            }
        }
        // No zero → no restricted Munn representation.
        let z2m = InverseMonoid::from_table(z2()).unwrap();
        assert_eq!(z2m.restricted_munn(), Err(MonoidError::NoZero));
    }

    #[test]
    fn fundamental_detection() {
        let (_, i3) = paut_table(&Graph::complete(3).unwrap());
        assert!(i3.is_fundamental());
        let (_, g0) = paut_table(&gamma0());
        assert!(g0.is_fundamental());
        // The involution of Z₂-with-zero fixes both idempotents, so its
        // Munn map equals the identity's: not fundamental.
        let z2z = InverseMonoid::from_table(z2_with_zero()).unwrap();
        assert!(!z2z.is_fundamental());
        assert!(z2z.is_boolean());
    }

    #[test]
    fn abstract_green_matches_concrete_green() {
        for g in [Graph::complete(3).unwrap(), gamma0()] {
            let (s, t) = paut_table(&g);
            let concrete = crate::green::green_structure(&s);
            let abstracted = t.green();
            assert_eq!(concrete.heights, abstracted.heights);
            assert_eq!(concrete.poset, abstracted.poset);
            assert_eq!(concrete.class_of, abstracted.class_of);
            for (dc, da) in concrete.dclasses.iter().zip(&abstracted.dclasses) {
                assert_eq!(dc.element_indices(), da.element_indices());
                assert_eq!(dc.cell_size(), da.cell_size());
            }
        }
    }

    #[test]
    fn group_and_zero_dclass_shapes() {
        let z2m = InverseMonoid::from_table(z2()).unwrap();
        let gs = z2m.green();
        assert_eq!(gs.dclasses.len(), 1);
        assert_eq!(gs.heights, vec![0]);

        let z2z = InverseMonoid::from_table(z2_with_zero()).unwrap();
        let gs = z2z.green();
        assert_eq!(gs.dclasses.len(), 2);
        assert_eq!(gs.dclasses[0].element_indices(), vec![2]);
        assert_eq!(gs.heights, vec![0, 1]);
        assert_eq!(gs.poset, vec![(0, 1)]);
    }

    #[test]
    fn definitional_relations_agree_with_key_based_classes() {
        let (_, t) = paut_table(&gamma0());
        let gs = t.green();
        use crate::green::GreenRelation::*;
        for a in 0..t.len() {
            for b in 0..t.len() {
                let same_l = t.mul(t.inv(a), a) == t.mul(t.inv(b), b);
                let same_r = t.mul(a, t.inv(a)) == t.mul(b, t.inv(b));
                assert_eq!(related_abs(&t, L, a, b), same_l);
                assert_eq!(related_abs(&t, R, a, b), same_r);
                assert_eq!(related_abs(&t, H, a, b), same_l && same_r);
                assert_eq!(
                    related_abs(&t, D, a, b),
                    gs.class_of[a] == gs.class_of[b]
                );
            }
        }
    }

    #[test]
    fn table_json_round_trip() {
        let (_, t) = paut_table(&Graph::complete(2).unwrap());
        let json = t.table().to_json();
        let back = MulTable::from_json(&json).unwrap();
        assert_eq!(&back, t.table());
        assert!(json.starts_with(r#"{"m":7,"identity":"#));
        // Names survive, and a table without names omits the field.
        assert!(json.contains(r#""names":["#));
        let bare = MulTable { names: None, ..back };
        assert!(!bare.to_json().contains("names"));
        assert!(matches!(MulTable::from_json("[1,2"), Err(MonoidError::BadJson(_))));
    }

    #[test]
    fn isomorphism_search_finds_and_refutes() {
        let (_, a) = paut_table(&Graph::from_edges(3, &[(0, 1)]).unwrap());
        // Same monoid through a relabeled graph: isomorphic.
        let (_, b) = paut_table(&Graph::from_edges(3, &[(1, 2)]).unwrap());
        let w = table_isomorphism(&a, &b).expect("isomorphic tables");
        // The witness is a genuine isomorphism.
        for x in 0..a.len() {
            for y in 0..a.len() {
                assert_eq!(w[a.mul(x, y)], b.mul(w[x], w[y]));
            }
        }
        // Identity maps to identity, and the witness is lexicographically
        // least among all isomorphisms (spot-check: first divergence).
        assert_eq!(w[a.identity()], b.identity());

        // Non-isomorphic: I_3 vs the path monoid (different sizes), and
        // equal-size groups Z₄ vs Z₂×Z₂.
        let (_, i3) = paut_table(&Graph::complete(3).unwrap());
        assert_eq!(table_isomorphism(&a, &i3), None);
        let z4 = InverseMonoid::from_table(MulTable {
            m: 4,
            identity: 0,
            table: vec![
                vec![0, 1, 2, 3],
                vec![1, 2, 3, 0],
                vec![2, 3, 0, 1],
                vec![3, 0, 1, 2],
            ],
            names: None,
        })
        .unwrap();
        let klein = InverseMonoid::from_table(MulTable {
            m: 4,
            identity: 0,
            table: vec![
                vec![0, 1, 2, 3],
                vec![1, 0, 3, 2],
                vec![2, 3, 0, 1],
                vec![3, 2, 1, 0],
            ],
            names: None,
        })
        .unwrap();
        assert_eq!(table_isomorphism(&z4, &klein), None);
        assert!(table_isomorphism(&z4, &z4).is_some());
    }

    #[test]
    fn isomorphism_witness_is_least() {
        // Brute-force cross-check on a small monoid: the returned witness
        // is the lexicographic minimum over all isomorphisms.
        use itertools::Itertools;
        let (_, a) = paut_table(&Graph::new(2).unwrap());
        let m = a.len();
        let mut all: Vec<Vec<usize>> = Vec::new();
        for perm in (0..m).permutations(m) {
            let ok = (0..m).all(|x| {
                (0..m).all(|y| perm[a.mul(x, y)] == a.mul(perm[x], perm[y]))
            }) && perm[a.identity()] == a.identity();
            if ok {
                all.push(perm);
            }
        }
        all.sort();
        assert_eq!(table_isomorphism(&a, &a), Some(all[0].clone()));
    }
}
