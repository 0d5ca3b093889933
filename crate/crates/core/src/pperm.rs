//! Partial permutations on a finite ground set.
//!
//! A partial permutation is an injective map between two subsets of a ground
//! set `X = {0, …, n-1}` with `n ≤ 64`, so domains and ranges fit in `u64`
//! bitsets. Together with composition they form the symmetric inverse monoid
//! `I_X`; everything else in this crate lives inside that monoid.
//!
//! Composition is written right-to-left throughout: `g.compose(&f)` applies
//! `f` first, then `g`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported ground set size (bitset representability).
pub const MAX_GROUND: usize = 64;

/// Sentinel stored in the image table for points outside the domain.
const UNDEF: u8 = u8::MAX;

/// Errors from ground set and partial permutation construction or algebra.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PPermError {
    /// Requested ground set size is zero or above [`MAX_GROUND`].
    #[error("ground set size must be between 1 and {MAX_GROUND}, got {0}")]
    BadGroundSize(usize),
    /// Two operands live on ground sets of different sizes.
    #[error("ground sets differ ({0} vs {1} points)")]
    GroundMismatch(usize, usize),
    /// A point is not inside the ground set.
    #[error("point {0} out of range for ground set of size {1}")]
    PointOutOfRange(usize, usize),
    /// The same source point was mapped twice.
    #[error("duplicate source point {0}")]
    DuplicateSource(usize),
    /// The same target point was hit twice (the map must be injective).
    #[error("duplicate target point {0}")]
    DuplicateTarget(usize),
    /// The two maps disagree somewhere, so no common extension exists.
    #[error("incompatible pair: no common upper bound exists")]
    Incompatible,
    /// The element count does not fit in a `u128`.
    #[error("count overflows u128 for ground set of size {0}")]
    CountOverflow(usize),
}

/// A finite ground set `{0, …, n-1}` with `1 ≤ n ≤ 64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GroundSet {
    n: u8,
}

impl GroundSet {
    /// Creates a ground set of `n` points; `n` must be in `1..=64`.
    pub fn new(n: usize) -> Result<GroundSet, PPermError> {
        if n == 0 || n > MAX_GROUND {
            return Err(PPermError::BadGroundSize(n));
        }
        Ok(GroundSet { n: n as u8 })
    }

    /// Number of points.
    pub fn size(self) -> usize {
        self.n as usize
    }

    /// Bitmask with one bit per point.
    pub fn full_mask(self) -> u64 {
        if self.n as usize == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// Iterator over the points `0..n`.
    pub fn points(self) -> impl Iterator<Item = usize> {
        0..self.n as usize
    }
}

/// Iterates over the set bits of a mask.
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}

/// An injective partial map on a ground set.
///
/// The domain and range are kept as bitsets; the mapping itself is a
/// fixed-length target-of-source table with a sentinel outside the domain,
/// so equality and hashing are plain derives.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PartialPerm {
    ground: GroundSet,
    dom: u64,
    ran: u64,
    img: [u8; MAX_GROUND],
}

impl PartialPerm {
    /// The empty map on `ground` (defined nowhere).
    pub fn empty(ground: GroundSet) -> PartialPerm {
        PartialPerm { ground, dom: 0, ran: 0, img: [UNDEF; MAX_GROUND] }
    }

    /// The identity on the whole ground set.
    pub fn identity(ground: GroundSet) -> PartialPerm {
        PartialPerm::partial_identity(ground, ground.full_mask())
            .expect("full mask is within the ground set")
    }

    /// The identity on the subset given by `mask`.
    pub fn partial_identity(ground: GroundSet, mask: u64) -> Result<PartialPerm, PPermError> {
        if mask & !ground.full_mask() != 0 {
            let bad = (mask & !ground.full_mask()).trailing_zeros() as usize;
            return Err(PPermError::PointOutOfRange(bad, ground.size()));
        }
        let mut img = [UNDEF; MAX_GROUND];
        for x in bits(mask) {
            img[x] = x as u8;
        }
        Ok(PartialPerm { ground, dom: mask, ran: mask, img })
    }

    /// Builds a partial permutation from `(source, target)` pairs.
    pub fn from_pairs(
        ground: GroundSet,
        pairs: &[(usize, usize)],
    ) -> Result<PartialPerm, PPermError> {
        let mut f = PartialPerm::empty(ground);
        for &(x, y) in pairs {
            if x >= ground.size() {
                return Err(PPermError::PointOutOfRange(x, ground.size()));
            }
            if y >= ground.size() {
                return Err(PPermError::PointOutOfRange(y, ground.size()));
            }
            if f.dom >> x & 1 == 1 {
                return Err(PPermError::DuplicateSource(x));
            }
            if f.ran >> y & 1 == 1 {
                return Err(PPermError::DuplicateTarget(y));
            }
            f.dom |= 1 << x;
            f.ran |= 1 << y;
            f.img[x] = y as u8;
        }
        Ok(f)
    }

    /// The ground set.
    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    /// Domain as a bitset.
    pub fn dom_mask(&self) -> u64 {
        self.dom
    }

    /// Range as a bitset.
    pub fn ran_mask(&self) -> u64 {
        self.ran
    }

    /// Number of points in the domain.
    pub fn rank(&self) -> usize {
        self.dom.count_ones() as usize
    }

    /// Applies the map to one point.
    pub fn apply(&self, x: usize) -> Option<usize> {
        if x < self.ground.size() && self.dom >> x & 1 == 1 {
            Some(self.img[x] as usize)
        } else {
            None
        }
    }

    /// The `(source, target)` pairs in increasing source order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        bits(self.dom).map(move |x| (x, self.img[x] as usize))
    }

    /// True when this is a partial identity (the idempotents of `I_X`).
    pub fn is_partial_identity(&self) -> bool {
        self.dom == self.ran && bits(self.dom).all(|x| self.img[x] as usize == x)
    }

    fn check_ground(&self, other: &PartialPerm) -> Result<(), PPermError> {
        if self.ground != other.ground {
            Err(PPermError::GroundMismatch(self.ground.size(), other.ground.size()))
        } else {
            Ok(())
        }
    }

    /// Right-to-left composition: `g.compose(&f)` maps `x ↦ g(f(x))`.
    ///
    /// The domain is `f⁻¹(ran f ∩ dom g)`.
    pub fn compose(&self, first: &PartialPerm) -> Result<PartialPerm, PPermError> {
        self.check_ground(first)?;
        let mut out = PartialPerm::empty(self.ground);
        for x in bits(first.dom) {
            let mid = first.img[x] as usize;
            if self.dom >> mid & 1 == 1 {
                let y = self.img[mid];
                out.dom |= 1 << x;
                out.ran |= 1 << y;
                out.img[x] = y;
            }
        }
        Ok(out)
    }

    /// The inverse map (swap sources and targets).
    pub fn invert(&self) -> PartialPerm {
        let mut out = PartialPerm::empty(self.ground);
        out.dom = self.ran;
        out.ran = self.dom;
        for x in bits(self.dom) {
            out.img[self.img[x] as usize] = x as u8;
        }
        out
    }

    /// Restriction to `dom ∩ mask`; `mask` must lie within the ground set.
    pub fn restrict(&self, mask: u64) -> Result<PartialPerm, PPermError> {
        if mask & !self.ground.full_mask() != 0 {
            let bad = (mask & !self.ground.full_mask()).trailing_zeros() as usize;
            return Err(PPermError::PointOutOfRange(bad, self.ground.size()));
        }
        let mut out = PartialPerm::empty(self.ground);
        for x in bits(self.dom & mask) {
            let y = self.img[x];
            out.dom |= 1 << x;
            out.ran |= 1 << y;
            out.img[x] = y;
        }
        Ok(out)
    }

    /// Compatibility: `f` and `g` agree on their common domain and map points
    /// outside it to disjoint images. Equivalently both `fg⁻¹` and `f⁻¹g` are
    /// idempotent; compatibility is exactly "a common upper bound exists".
    pub fn compatible(&self, other: &PartialPerm) -> Result<bool, PPermError> {
        self.check_ground(other)?;
        let common = self.dom & other.dom;
        for x in bits(common) {
            if self.img[x] != other.img[x] {
                return Ok(false);
            }
        }
        // Images of the symmetric difference must not collide.
        let mut self_only = 0u64;
        for x in bits(self.dom & !common) {
            self_only |= 1 << self.img[x];
        }
        let mut other_only = 0u64;
        for x in bits(other.dom & !common) {
            other_only |= 1 << other.img[x];
        }
        Ok(self_only & other_only == 0)
    }

    /// Least upper bound in the restriction order: the union of the two maps.
    /// Fails when the pair is incompatible.
    pub fn join(&self, other: &PartialPerm) -> Result<PartialPerm, PPermError> {
        if !self.compatible(other)? {
            return Err(PPermError::Incompatible);
        }
        let mut out = *self;
        for x in bits(other.dom & !self.dom) {
            let y = other.img[x];
            out.dom |= 1 << x;
            out.ran |= 1 << y;
            out.img[x] = y;
        }
        Ok(out)
    }

    /// Join of any number of pairwise-compatible maps.
    pub fn join_all<'a, I>(ground: GroundSet, items: I) -> Result<PartialPerm, PPermError>
    where
        I: IntoIterator<Item = &'a PartialPerm>,
    {
        let mut out = PartialPerm::empty(ground);
        for f in items {
            out = out.join(f)?;
        }
        Ok(out)
    }

    /// Natural partial order of `I_X`: `f ≤ g` iff `f` is a restriction of
    /// `g`, equivalently `f = g·e` for an idempotent `e`.
    pub fn natural_leq(&self, other: &PartialPerm) -> Result<bool, PPermError> {
        self.check_ground(other)?;
        if self.dom & !other.dom != 0 {
            return Ok(false);
        }
        Ok(bits(self.dom).all(|x| self.img[x] == other.img[x]))
    }

    /// Relabels points by a full permutation `sigma` of the ground set:
    /// the result maps `sigma[x] ↦ sigma[f(x)]`.
    pub fn relabel(&self, sigma: &[usize]) -> Result<PartialPerm, PPermError> {
        let n = self.ground.size();
        if sigma.len() != n {
            return Err(PPermError::GroundMismatch(sigma.len(), n));
        }
        let mut seen = 0u64;
        for &s in sigma {
            if s >= n {
                return Err(PPermError::PointOutOfRange(s, n));
            }
            if seen >> s & 1 == 1 {
                return Err(PPermError::DuplicateTarget(s));
            }
            seen |= 1 << s;
        }
        let pairs: Vec<(usize, usize)> =
            self.pairs().map(|(x, y)| (sigma[x], sigma[y])).collect();
        PartialPerm::from_pairs(self.ground, &pairs)
    }

    /// Decomposes into disjoint cycles and paths.
    pub fn decompose(&self) -> CyclePathDecomposition {
        let mut cycles: Vec<Vec<u8>> = Vec::new();
        let mut paths: Vec<Vec<u8>> = Vec::new();
        let mut visited = 0u64;
        // Paths start at domain points that are not in the range.
        for start in bits(self.dom & !self.ran) {
            let mut seq = vec![start as u8];
            let mut x = start;
            while self.dom >> x & 1 == 1 {
                x = self.img[x] as usize;
                seq.push(x as u8);
            }
            for &p in &seq {
                visited |= 1 << p;
            }
            seq.reverse(); // notation order (x_k … x_1)
            paths.push(seq);
        }
        // Whatever remains of the domain lies on cycles.
        for start in bits(self.dom & !visited) {
            if visited >> start & 1 == 1 {
                continue;
            }
            // `start` is the smallest unvisited point of its orbit, hence the
            // smallest point of the orbit overall when scanning ascending.
            let mut seq = vec![start as u8];
            let mut x = self.img[start] as usize;
            while x != start {
                seq.push(x as u8);
                x = self.img[x] as usize;
            }
            for &p in &seq {
                visited |= 1 << p;
            }
            seq.reverse(); // traversal recorded right-to-left: (x_k … x_1)
            cycles.push(seq);
        }
        let mut members: Vec<Member> = cycles
            .into_iter()
            .map(Member::Cycle)
            .chain(paths.into_iter().map(Member::Path))
            .collect();
        members.sort_by_key(|m| m.points().iter().copied().min().unwrap());
        CyclePathDecomposition { ground: self.ground, members }
    }
}

impl Ord for PartialPerm {
    /// Canonical element order: by rank, then domain bitset value, then the
    /// image tuple. Ground size is compared first so the order is total.
    fn cmp(&self, other: &Self) -> Ordering {
        self.ground
            .cmp(&other.ground)
            .then_with(|| self.rank().cmp(&other.rank()))
            .then_with(|| self.dom.cmp(&other.dom))
            .then_with(|| self.img.cmp(&other.img))
    }
}

impl PartialOrd for PartialPerm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for PartialPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PartialPerm[n={}]({})", self.ground.size(), format_cpn(self))
    }
}

impl fmt::Display for PartialPerm {
    /// Canonical cycle–path notation, e.g. `(1 2)|[5 4)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_cpn(self))
    }
}

/// One member of a cycle–path decomposition, stored in notation order
/// `(x_k … x_1)` / `[x_k … x_1)`: the map sends `x_1 ↦ x_2 ↦ … ↦ x_k`,
/// and a cycle additionally sends `x_k ↦ x_1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Member {
    /// Cycle, rotated so that `x_1` is the smallest point of the orbit.
    Cycle(Vec<u8>),
    /// Path `[x_k … x_1)`: domain `x_1..x_{k-1}`, range `x_2..x_k`.
    Path(Vec<u8>),
}

impl Member {
    /// The stored point sequence.
    pub fn points(&self) -> &[u8] {
        match self {
            Member::Cycle(v) | Member::Path(v) => v,
        }
    }

    /// The member as a partial permutation on `ground`.
    pub fn to_partial_perm(&self, ground: GroundSet) -> PartialPerm {
        let mut pairs = Vec::new();
        match self {
            Member::Cycle(v) => {
                // v = [x_k, …, x_1]; x_{i} ↦ x_{i+1} and x_k ↦ x_1.
                for w in v.windows(2) {
                    pairs.push((w[1] as usize, w[0] as usize));
                }
                pairs.push((v[0] as usize, *v.last().unwrap() as usize));
            }
            Member::Path(v) => {
                for w in v.windows(2) {
                    pairs.push((w[1] as usize, w[0] as usize));
                }
            }
        }
        PartialPerm::from_pairs(ground, &pairs).expect("decomposition members are injective")
    }
}

/// Disjoint cycle–path decomposition of a partial permutation.
///
/// Members are sorted by their smallest contained point, cycles rotated to
/// start traversal at their smallest point, so the decomposition is a
/// canonical form: equal maps decompose identically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclePathDecomposition {
    ground: GroundSet,
    members: Vec<Member>,
}

impl CyclePathDecomposition {
    /// The ground set.
    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    /// Members sorted by smallest contained point.
    pub fn members(&self) -> &[Member] {
        &self.members
    }

    /// Reassembles the partial permutation (union of the members).
    pub fn to_partial_perm(&self) -> PartialPerm {
        let parts: Vec<PartialPerm> =
            self.members.iter().map(|m| m.to_partial_perm(self.ground)).collect();
        PartialPerm::join_all(self.ground, parts.iter())
            .expect("decomposition members are disjoint")
    }
}

impl fmt::Display for CyclePathDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.members.is_empty() {
            return write!(f, "()");
        }
        let mut first = true;
        for m in &self.members {
            if !first {
                write!(f, "|")?;
            }
            first = false;
            let (open, close) = match m {
                Member::Cycle(_) => ('(', ')'),
                Member::Path(_) => ('[', ')'),
            };
            write!(f, "{open}")?;
            for (i, p) in m.points().iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?; // 1-based labels on output
            }
            write!(f, "{close}")?;
        }
        Ok(())
    }
}

/// Errors from parsing cycle–path notation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CpnError {
    /// Nothing but whitespace.
    #[error("empty input")]
    Empty,
    /// A term does not begin with `(` or `[`.
    #[error("term {0:?} must start with '(' or '['")]
    BadOpen(String),
    /// A term does not end with `)`.
    #[error("term {0:?} must end with ')'")]
    BadClose(String),
    /// A point is not a positive integer.
    #[error("invalid point {0:?}")]
    BadPoint(String),
    /// A point lies outside the 1-based ground set.
    #[error("point {0} out of range 1..={1}")]
    PointOutOfRange(usize, usize),
    /// The same point appears twice within a single term.
    #[error("duplicate point {0} in one term")]
    DuplicateInTerm(usize),
    /// `[x)` is not a path; paths need two or more points.
    #[error("a path needs at least two points")]
    PathTooShort,
    /// The terms of the element clash, so their join does not exist.
    #[error("terms are incompatible (clashing assignments)")]
    IncompatibleTerms,
}

/// Parses cycle–path notation over a fixed ground set.
///
/// Grammar: `element ::= term ("|" term)*`, `term ::= "(" ints ")" | "[" ints ")"`,
/// with whitespace-separated 1-based points; `()` denotes the empty map.
/// A path `[x_k … x_1)` with `x_1 = x_k` denotes a cycle and is normalized.
/// The element is the join of its terms, so overlapping but compatible terms
/// are accepted; clashing ones are an error.
pub fn parse_cpn(text: &str, ground: GroundSet) -> Result<PartialPerm, CpnError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(CpnError::Empty);
    }
    if trimmed == "()" {
        return Ok(PartialPerm::empty(ground));
    }
    let mut acc = PartialPerm::empty(ground);
    for raw in trimmed.split('|') {
        let term = raw.trim();
        let is_path = match term.chars().next() {
            Some('(') => false,
            Some('[') => true,
            _ => return Err(CpnError::BadOpen(term.to_string())),
        };
        if !term.ends_with(')') {
            return Err(CpnError::BadClose(term.to_string()));
        }
        let inner = &term[1..term.len() - 1];
        let mut pts: Vec<usize> = Vec::new();
        for tok in inner.split_whitespace() {
            let p: usize = tok.parse().map_err(|_| CpnError::BadPoint(tok.to_string()))?;
            if p == 0 || p > ground.size() {
                return Err(CpnError::PointOutOfRange(p, ground.size()));
            }
            pts.push(p - 1); // to 0-based
        }
        if pts.is_empty() {
            return Err(CpnError::BadPoint(term.to_string()));
        }
        // A path whose first and last points coincide is cycle notation.
        let (pts, is_path) = if is_path && pts.len() >= 2 && pts.first() == pts.last() {
            (pts[1..].to_vec(), false)
        } else {
            (pts, is_path)
        };
        if is_path && pts.len() < 2 {
            return Err(CpnError::PathTooShort);
        }
        let mut seen = 0u64;
        for &p in &pts {
            if seen >> p & 1 == 1 {
                return Err(CpnError::DuplicateInTerm(p + 1));
            }
            seen |= 1 << p;
        }
        let seq: Vec<u8> = pts.iter().map(|&p| p as u8).collect();
        let member = if is_path { Member::Path(seq) } else { Member::Cycle(seq) };
        let part = member.to_partial_perm(ground);
        acc = acc.join(&part).map_err(|_| CpnError::IncompatibleTerms)?;
    }
    Ok(acc)
}

/// Formats a partial permutation in canonical cycle–path notation.
pub fn format_cpn(f: &PartialPerm) -> String {
    f.decompose().to_string()
}

/// All partial permutations of a given rank, in canonical order.
pub fn partial_perms_of_rank(ground: GroundSet, rank: usize) -> Vec<PartialPerm> {
    let n = ground.size();
    if rank > n {
        return Vec::new();
    }
    if rank == 0 {
        return vec![PartialPerm::empty(ground)];
    }
    use itertools::Itertools;
    let mut out = Vec::new();
    let all_points: Vec<usize> = ground.points().collect();
    // Gosper's hack: k-subsets of the ground mask in increasing bitset order.
    let mut dom = if rank >= 64 { u64::MAX } else { (1u64 << rank) - 1 };
    let limit = ground.full_mask();
    loop {
        let sources: Vec<usize> = bits(dom).collect();
        // Injective image tuples in lexicographic order.
        for tuple in all_points.iter().copied().permutations(rank) {
            let pairs: Vec<(usize, usize)> =
                sources.iter().copied().zip(tuple.iter().copied()).collect();
            out.push(
                PartialPerm::from_pairs(ground, &pairs).expect("tuple entries are distinct"),
            );
        }
        // Next k-subset.
        let c = dom & dom.wrapping_neg();
        let r = dom + c;
        if r > limit || c == 0 {
            break;
        }
        dom = (((r ^ dom) >> 2) / c) | r;
        if dom & !limit != 0 {
            break;
        }
    }
    out
}

/// All of `I_X` in canonical order. Exponential; intended for small grounds.
pub fn all_partial_perms(ground: GroundSet) -> Vec<PartialPerm> {
    let mut out = Vec::new();
    for rank in 0..=ground.size() {
        out.extend(partial_perms_of_rank(ground, rank));
    }
    out
}

/// `|I_n| = Σ_k C(n,k)² k!` via exact u128 arithmetic.
pub fn count_partial_perms(n: usize) -> Result<u128, PPermError> {
    let mut total: u128 = 0;
    for k in 0..=n {
        let mut term: u128 = 1;
        // C(n,k)
        for i in 0..k {
            term = term
                .checked_mul((n - i) as u128)
                .ok_or(PPermError::CountOverflow(n))?
                / (i as u128 + 1);
        }
        // C(n,k)² · k!
        term = term.checked_mul(term).ok_or(PPermError::CountOverflow(n))?;
        let mut fact: u128 = 1;
        for i in 1..=k {
            fact = fact.checked_mul(i as u128).ok_or(PPermError::CountOverflow(n))?;
        }
        let term = term.checked_mul(fact).ok_or(PPermError::CountOverflow(n))?;
        total = total.checked_add(term).ok_or(PPermError::CountOverflow(n))?;
    }
    Ok(total)
}
