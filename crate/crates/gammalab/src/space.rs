//! Finite topological spaces on point sets `{0..n-1}`.
//!
//! Subsets are bit masks (`Mask`); an open family is a sorted list of masks.
//! Families of subsets (as opposed to single subsets) are packed into a
//! [`Family`] bitset: bit `m` is set iff the subset with mask `m` belongs to
//! the family. With the point cap at 6 a family always fits in a `u64`.

use std::fmt;
use std::sync::Arc;

/// A subset of the points of some space, encoded as a bit mask.
pub type Mask = u32;

/// Hard cap on the number of points. Enumeration on 6 points is feasible but
/// slow; the CLI additionally gates it behind a flag.
pub const MAX_POINTS: usize = 6;

/// Full point set of an `n`-point space.
pub const fn universe(n: usize) -> Mask {
    ((1u64 << n) - 1) as Mask
}

/// Iterator over the points of a mask, ascending.
#[derive(Clone, Copy, Debug)]
pub struct Points(pub Mask);

impl Iterator for Points {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let p = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(p)
    }
}

/// Render a mask the way the document format spells sets: `{0 2}`.
pub fn set_text(m: Mask) -> String {
    let mut out = String::from("{");
    let mut first = true;
    for p in Points(m) {
        if !first {
            out.push(' ');
        }
        out.push_str(&p.to_string());
        first = false;
    }
    out.push('}');
    out
}

/// Iterator over all submasks of `m`, ascending (0 first, `m` last).
pub fn submasks(m: Mask) -> impl Iterator<Item = Mask> {
    let mut next = Some(0 as Mask);
    std::iter::from_fn(move || {
        let s = next?;
        next = if s == m { None } else { Some((s | !m).wrapping_add(1) & m) };
        Some(s)
    })
}

/// A set of subsets, packed as one bit per subset encoding.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Family(pub u64);

impl Family {
    pub fn contains(self, m: Mask) -> bool {
        self.0 >> m & 1 == 1
    }

    pub fn insert(&mut self, m: Mask) {
        self.0 |= 1 << m;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Members in ascending mask order.
    pub fn iter(self) -> impl Iterator<Item = Mask> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let m = bits.trailing_zeros() as Mask;
            bits &= bits - 1;
            Some(m)
        })
    }

    pub fn to_vec(self) -> Vec<Mask> {
        self.iter().collect()
    }

    /// Family of complements relative to `univ`.
    pub fn complements(self, univ: Mask) -> Family {
        let mut out = Family(0);
        for m in self.iter() {
            out.insert(univ & !m);
        }
        out
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for m in self.iter() {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{}", set_text(m))?;
            first = false;
        }
        Ok(())
    }
}

/// One violated topology axiom, with a witness where the axiom has one.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TopologyViolation {
    PointCountOutOfRange(usize),
    PointOutOfRange { subset: Mask },
    MissingEmptyOrWhole,
    NotClosedUnderUnion { a: Mask, b: Mask },
    NotClosedUnderIntersection { a: Mask, b: Mask },
}

impl fmt::Display for TopologyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TopologyViolation::PointCountOutOfRange(n) => {
                write!(f, "point count {n} outside supported range 1..={MAX_POINTS}")
            }
            TopologyViolation::PointOutOfRange { subset } => {
                write!(f, "subset {} contains points outside the space", set_text(subset))
            }
            TopologyViolation::MissingEmptyOrWhole => {
                write!(f, "family must contain {{}} and the full point set")
            }
            TopologyViolation::NotClosedUnderUnion { a, b } => write!(
                f,
                "not closed under union: {} \u{222a} {} missing",
                set_text(a),
                set_text(b)
            ),
            TopologyViolation::NotClosedUnderIntersection { a, b } => write!(
                f,
                "not closed under intersection: {} \u{2229} {} missing",
                set_text(a),
                set_text(b)
            ),
        }
    }
}

impl std::error::Error for TopologyViolation {}

/// Errors from space-level operations other than validation.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SpaceError {
    #[error("subspace carrier must be nonempty")]
    EmptySubspace,
    #[error("subspace carrier is not a subset of the space")]
    CarrierOutOfRange,
    #[error("{what} exceeds the supported cap ({limit})")]
    CapExceeded { what: &'static str, limit: usize },
}

/// A topology on `{0..n-1}`: the open family plus per-point minimal open
/// neighbourhoods (every finite space has them).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FiniteSpace {
    n: usize,
    opens: Vec<Mask>,
    min_nbd: Vec<Mask>,
    open_bits: Family,
}

impl FiniteSpace {
    /// Validate a candidate open family. On failure every violated axiom is
    /// reported once, with the lexicographically first witness pair.
    pub fn new(n: usize, family: &[Mask]) -> Result<FiniteSpace, Vec<TopologyViolation>> {
        let mut violations = Vec::new();
        if n == 0 || n > MAX_POINTS {
            return Err(vec![TopologyViolation::PointCountOutOfRange(n)]);
        }
        let univ = universe(n);
        let mut opens: Vec<Mask> = family.to_vec();
        opens.sort_unstable();
        opens.dedup();
        for &m in &opens {
            if m & !univ != 0 {
                violations.push(TopologyViolation::PointOutOfRange { subset: m });
            }
        }
        if !opens.contains(&0) || !opens.contains(&univ) {
            violations.push(TopologyViolation::MissingEmptyOrWhole);
        }
        let member = |m: Mask| opens.binary_search(&m).is_ok();
        'union: for (i, &a) in opens.iter().enumerate() {
            for &b in &opens[i + 1..] {
                if !member(a | b) {
                    violations.push(TopologyViolation::NotClosedUnderUnion { a, b });
                    break 'union;
                }
            }
        }
        'inter: for (i, &a) in opens.iter().enumerate() {
            for &b in &opens[i + 1..] {
                if !member(a & b) {
                    violations.push(TopologyViolation::NotClosedUnderIntersection { a, b });
                    break 'inter;
                }
            }
        }
        if !violations.is_empty() {
            return Err(violations);
        }
        let min_nbd = (0..n)
            .map(|x| {
                opens
                    .iter()
                    .filter(|&&u| u >> x & 1 == 1)
                    .fold(univ, |acc, &u| acc & u)
            })
            .collect();
        let mut open_bits = Family(0);
        for &m in &opens {
            open_bits.insert(m);
        }
        Ok(FiniteSpace { n, opens, min_nbd, open_bits })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn universe(&self) -> Mask {
        universe(self.n)
    }

    /// Open sets, sorted ascending by encoding.
    pub fn opens(&self) -> &[Mask] {
        &self.opens
    }

    pub fn open_family(&self) -> Family {
        self.open_bits
    }

    pub fn is_open(&self, m: Mask) -> bool {
        self.open_bits.contains(m)
    }

    /// Index of an open set within [`Self::opens`].
    pub fn open_index(&self, m: Mask) -> Option<usize> {
        self.opens.binary_search(&m).ok()
    }

    /// Smallest open set containing the point.
    pub fn min_nbd(&self, x: usize) -> Mask {
        self.min_nbd[x]
    }

    /// Ordinary interior, computed from minimal neighbourhoods.
    pub fn interior(&self, m: Mask) -> Mask {
        let mut out = 0;
        for x in Points(m) {
            if self.min_nbd[x] & !m == 0 {
                out |= 1 << x;
            }
        }
        out
    }

    /// Ordinary closure, computed from minimal neighbourhoods.
    pub fn closure(&self, m: Mask) -> Mask {
        let mut out = 0;
        for x in 0..self.n {
            if self.min_nbd[x] & m != 0 {
                out |= 1 << x;
            }
        }
        out
    }

    /// Pack the open family into its `u64` encoding.
    pub fn family_bits(&self) -> u64 {
        self.open_bits.0
    }

    /// Relative topology on a nonempty carrier `b`, with points re-indexed to
    /// `0..|b|-1`. The trace records, for every relative open, which parent
    /// opens intersect down to it.
    pub fn subspace(&self, b: Mask) -> Result<(FiniteSpace, SubspaceTrace), SpaceError> {
        if b == 0 {
            return Err(SpaceError::EmptySubspace);
        }
        if b & !self.universe() != 0 {
            return Err(SpaceError::CarrierOutOfRange);
        }
        let points: Vec<usize> = Points(b).collect();
        let compress = |parent: Mask| -> Mask {
            let mut out = 0;
            for (i, &p) in points.iter().enumerate() {
                if parent >> p & 1 == 1 {
                    out |= 1 << i;
                }
            }
            out
        };
        let mut rel_opens: Vec<Mask> = self.opens.iter().map(|&u| compress(u & b)).collect();
        rel_opens.sort_unstable();
        rel_opens.dedup();
        let traces = rel_opens
            .iter()
            .map(|&v| {
                let parents: Vec<Mask> = self
                    .opens
                    .iter()
                    .copied()
                    .filter(|&u| compress(u & b) == v)
                    .collect();
                (v, parents)
            })
            .collect();
        let sub = FiniteSpace::new(points.len(), &rel_opens)
            .expect("relative topology always satisfies the axioms");
        Ok((sub, SubspaceTrace { carrier: b, points, traces }))
    }

    /// The space with points renamed by `perm` (`perm[p]` is the new name of `p`).
    pub fn relabel(&self, perm: &[usize]) -> FiniteSpace {
        let opens: Vec<Mask> = self.opens.iter().map(|&m| permute_mask(m, perm)).collect();
        FiniteSpace::new(self.n, &opens).expect("relabelling preserves the axioms")
    }

    /// Minimal open-family encoding over all point permutations.
    pub fn canonical_opens(&self) -> Vec<Mask> {
        let mut best: Option<Vec<Mask>> = None;
        for perm in permutations(self.n) {
            let mut opens: Vec<Mask> =
                self.opens.iter().map(|&m| permute_mask(m, &perm)).collect();
            opens.sort_unstable();
            match &best {
                Some(b) if opens.as_slice() >= b.as_slice() => {}
                _ => best = Some(opens),
            }
        }
        best.expect("n >= 1")
    }

    /// True iff this labelling is the minimum of its homeomorphism class.
    pub fn is_canonical(&self) -> bool {
        for perm in permutations(self.n) {
            let mut opens: Vec<Mask> =
                self.opens.iter().map(|&m| permute_mask(m, &perm)).collect();
            opens.sort_unstable();
            if opens.as_slice() < self.opens.as_slice() {
                return false;
            }
        }
        true
    }
}

/// Which parent opens trace down to each relative open of a subspace.
#[derive(Clone, Debug)]
pub struct SubspaceTrace {
    /// Carrier in parent coordinates.
    pub carrier: Mask,
    /// Subspace point `i` is parent point `points[i]`.
    pub points: Vec<usize>,
    /// Per relative open (subspace coordinates, ascending): the parent opens
    /// `U` with `U ∩ carrier` equal to it.
    pub traces: Vec<(Mask, Vec<Mask>)>,
}

impl SubspaceTrace {
    /// Map a subspace mask back to parent coordinates.
    pub fn expand(&self, rel: Mask) -> Mask {
        let mut out = 0;
        for (i, &p) in self.points.iter().enumerate() {
            if rel >> i & 1 == 1 {
                out |= 1 << p;
            }
        }
        out
    }

    /// Map a parent mask (clipped to the carrier) to subspace coordinates.
    pub fn compress(&self, parent: Mask) -> Mask {
        let mut out = 0;
        for (i, &p) in self.points.iter().enumerate() {
            if parent >> p & 1 == 1 {
                out |= 1 << i;
            }
        }
        out
    }
}

pub fn permute_mask(m: Mask, perm: &[usize]) -> Mask {
    let mut out = 0;
    for p in Points(m) {
        out |= 1 << perm[p];
    }
    out
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// Compare two open families by the lexicographic order of their sorted
/// member lists (this is the enumeration order; it is *not* numeric order of
/// the packed encodings).
pub fn cmp_families(a: u64, b: u64) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    let (mut a, mut b) = (a, b);
    loop {
        match (a == 0, b == 0) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let (la, lb) = (a.trailing_zeros(), b.trailing_zeros());
        if la != lb {
            return la.cmp(&lb);
        }
        a &= a - 1;
        b &= b - 1;
    }
}

/// Every labelled topology on `n` points, encoded as open-family bitsets.
///
/// A topology is reconstructed from its minimal-neighbourhood table
/// `U_0..U_{n-1}`; a table is admissible iff `x ∈ U_x` and membership
/// `y ∈ U_x` implies `U_y ⊆ U_x`. Opens are then all unions of table rows.
fn topology_bitsets(n: usize) -> Vec<u64> {
    let univ = universe(n);
    let mut rows: Vec<Mask> = vec![0; n];
    let mut out = Vec::new();
    fn rec(n: usize, univ: Mask, k: usize, rows: &mut Vec<Mask>, out: &mut Vec<u64>) {
        if k == n {
            let mut fam: u64 = 0;
            'next: for m in 0..=univ {
                for x in Points(m) {
                    if rows[x] & !m != 0 {
                        continue 'next;
                    }
                }
                fam |= 1 << m;
            }
            out.push(fam);
            return;
        }
        let free = univ & !(1 << k);
        for extra in submasks(free) {
            let row = extra | (1 << k);
            let mut ok = true;
            for (i, &prev) in rows.iter().enumerate().take(k) {
                // pairwise consistency with earlier rows
                if row >> i & 1 == 1 && prev & !row != 0 {
                    ok = false;
                    break;
                }
                if prev >> k & 1 == 1 && row & !prev != 0 {
                    ok = false;
                    break;
                }
            }
            if ok {
                rows[k] = row;
                rec(n, univ, k + 1, rows, out);
            }
        }
    }
    rec(n, univ, 0, &mut rows, &mut out);
    out
}

/// Deterministic stream of the topologies on `n` points.
///
/// Order is lexicographic on the sorted list of open-set encodings. With
/// `up_to_iso` only the minimum labelling of each homeomorphism class is
/// yielded.
pub fn enumerate_topologies(
    n: usize,
    up_to_iso: bool,
) -> Result<impl Iterator<Item = Arc<FiniteSpace>>, SpaceError> {
    if n == 0 || n > MAX_POINTS {
        return Err(SpaceError::CapExceeded { what: "enumeration point count", limit: MAX_POINTS });
    }
    let mut families = topology_bitsets(n);
    families.sort_unstable_by(|&a, &b| cmp_families(a, b));
    Ok(families.into_iter().filter_map(move |fam| {
        let opens: Vec<Mask> = Family(fam).iter().collect();
        let space = FiniteSpace::new(n, &opens).expect("generated family is a topology");
        if up_to_iso && !space.is_canonical() {
            return None;
        }
        Some(Arc::new(space))
    }))
}

/// Number of labelled topologies on `n` points.
pub fn count_topologies(n: usize, up_to_iso: bool) -> Result<u64, SpaceError> {
    Ok(enumerate_topologies(n, up_to_iso)?.count() as u64)
}


#[cfg(test)]
mod prop_tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        // validation must agree with a direct statement of the axioms for
        // arbitrary candidate families
        #[test]
        fn validation_agrees_with_direct_axiom_check(n in 1usize..=4, bits in any::<u16>()) {
            let family: Vec<Mask> =
                (0..(1u32 << n)).filter(|&m| bits >> m & 1 == 1).collect();
            let univ = universe(n);
            let has = |m: Mask| family.contains(&m);
            let direct = has(0)
                && has(univ)
                && family.iter().all(|&a| family.iter().all(|&b| has(a | b) && has(a & b)));
            prop_assert_eq!(FiniteSpace::new(n, &family).is_ok(), direct);
        }

        #[test]
        fn relabelling_is_a_group_action_on_spaces(idx in 0usize..29, perm_seed in 0usize..6) {
            let space = enumerate_topologies(3, false).unwrap().nth(idx).unwrap();
            let perm = &permutations(3)[perm_seed];
            let there = space.relabel(perm);
            // applying the inverse brings the space back
            let mut inverse = vec![0; 3];
            for (i, &p) in perm.iter().enumerate() {
                inverse[p] = i;
            }
            prop_assert_eq!(there.relabel(&inverse), (*space).clone());
            prop_assert_eq!(there.canonical_opens(), space.canonical_opens());
        }
    }
}
