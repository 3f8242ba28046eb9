#![allow(dead_code)] // shared by several test targets, each using a subset

//! Independent from-scratch re-implementation of the structures under test.
//!
//! Everything here recomputes families definitionally from raw data, with no
//! caching and no reuse of the library's tables, so it can serve as an
//! oracle against the optimized implementation.

pub type Mask = u32;

pub fn universe(n: usize) -> Mask {
    ((1u64 << n) - 1) as Mask
}

fn subset_of(a: Mask, b: Mask) -> bool {
    a & !b == 0
}

/// All subsets of the universe, small to large.
pub fn all_subsets(n: usize) -> Vec<Mask> {
    (0..=universe(n)).collect()
}

// ---------------------------------------------------------------------------
// topology axioms and counting
// ---------------------------------------------------------------------------

/// Axiom check over an explicit list of subsets.
pub fn is_topology(n: usize, family: &[Mask]) -> bool {
    let univ = universe(n);
    if !family.contains(&0) || !family.contains(&univ) {
        return false;
    }
    for &a in family {
        if !subset_of(a, univ) {
            return false;
        }
        for &b in family {
            if !family.contains(&(a | b)) || !family.contains(&(a & b)) {
                return false;
            }
        }
    }
    true
}

/// Count labelled topologies by filtering every family of subsets.
/// Feasible through n = 4 (2^16 candidate families).
pub fn count_topologies_by_filter(n: usize) -> u64 {
    let subsets = 1u32 << n;
    let mut count = 0;
    for family_bits in 0..(1u64 << subsets) {
        let family: Vec<Mask> =
            (0..subsets).filter(|&m| family_bits >> m & 1 == 1).collect();
        if is_topology(n, &family) {
            count += 1;
        }
    }
    count
}

// ---------------------------------------------------------------------------
// ordinary interior / closure straight from the open family
// ---------------------------------------------------------------------------

pub fn interior(opens: &[Mask], a: Mask) -> Mask {
    opens.iter().filter(|&&u| subset_of(u, a)).fold(0, |acc, &u| acc | u)
}

pub fn closure(n: usize, opens: &[Mask], a: Mask) -> Mask {
    let mut out = 0;
    for x in 0..n {
        let misses =
            opens.iter().any(|&u| u >> x & 1 == 1 && u & a == 0);
        if !misses {
            out |= 1 << x;
        }
    }
    out
}

/// The classical semi-open characterisation `A ⊆ cl(int(A))`.
pub fn levine_family(n: usize, opens: &[Mask]) -> Vec<Mask> {
    all_subsets(n)
        .into_iter()
        .filter(|&a| subset_of(a, closure(n, opens, interior(opens, a))))
        .collect()
}

// ---------------------------------------------------------------------------
// operation layer
// ---------------------------------------------------------------------------

/// Raw (space, operation) data: open family plus one value per open.
#[derive(Clone, Debug)]
pub struct Pair {
    pub n: usize,
    pub opens: Vec<Mask>,
    pub values: Vec<Mask>,
}

/// Every operation table on a space (each open enlarged by any subset of its
/// complement).
pub fn all_operations(n: usize, opens: &[Mask]) -> Vec<Pair> {
    let univ = universe(n);
    let mut out = vec![Pair { n, opens: opens.to_vec(), values: opens.to_vec() }];
    for (i, &u) in opens.iter().enumerate() {
        let free = univ & !u;
        let mut next = Vec::new();
        for pair in &out {
            let mut extra_list = Vec::new();
            let mut extra = 0;
            loop {
                extra_list.push(extra);
                if extra == free {
                    break;
                }
                extra = (extra | !free).wrapping_add(1) & free;
            }
            for extra in extra_list {
                let mut values = pair.values.clone();
                values[i] = u | extra;
                next.push(Pair { n, opens: opens.to_vec(), values });
            }
        }
        out = next;
    }
    out
}

pub fn int_gamma(p: &Pair, a: Mask) -> Mask {
    let mut out = 0;
    for x in 0..p.n {
        if a >> x & 1 == 0 {
            continue;
        }
        let witnessed = p
            .opens
            .iter()
            .enumerate()
            .any(|(i, &u)| u >> x & 1 == 1 && subset_of(p.values[i], a));
        if witnessed {
            out |= 1 << x;
        }
    }
    out
}

pub fn cl_gamma(p: &Pair, a: Mask) -> Mask {
    let mut out = 0;
    for x in 0..p.n {
        let separated = p
            .opens
            .iter()
            .enumerate()
            .any(|(i, &u)| u >> x & 1 == 1 && p.values[i] & a == 0);
        if !separated {
            out |= 1 << x;
        }
    }
    out
}

pub fn gamma_open_family(p: &Pair) -> Vec<Mask> {
    all_subsets(p.n).into_iter().filter(|&a| int_gamma(p, a) == a).collect()
}

/// γ-closed family; `by_complement` picks between the two definitions.
pub fn gamma_closed_family(p: &Pair, by_complement: bool) -> Vec<Mask> {
    let univ = universe(p.n);
    let opens = gamma_open_family(p);
    all_subsets(p.n)
        .into_iter()
        .filter(|&a| {
            if by_complement {
                opens.contains(&(univ & !a))
            } else {
                subset_of(cl_gamma(p, a), a)
            }
        })
        .collect()
}

pub fn semi_open_family(p: &Pair) -> Vec<Mask> {
    let gamma_open = gamma_open_family(p);
    all_subsets(p.n)
        .into_iter()
        .filter(|&a| {
            gamma_open
                .iter()
                .any(|&o| subset_of(o, a) && subset_of(a, cl_gamma(p, o)))
        })
        .collect()
}

pub fn semi_closed_family(p: &Pair, by_complement: bool) -> Vec<Mask> {
    let closed = gamma_closed_family(p, by_complement);
    all_subsets(p.n)
        .into_iter()
        .filter(|&a| {
            closed
                .iter()
                .any(|&f| subset_of(int_gamma(p, f), a) && subset_of(a, f))
        })
        .collect()
}

pub fn scl(p: &Pair, a: Mask, by_complement: bool) -> Mask {
    semi_closed_family(p, by_complement)
        .into_iter()
        .filter(|&c| subset_of(a, c))
        .fold(universe(p.n), |acc, c| acc & c)
}

pub fn sint(p: &Pair, a: Mask) -> Mask {
    semi_open_family(p).into_iter().filter(|&u| subset_of(u, a)).fold(0, |acc, u| acc | u)
}

pub fn sd(p: &Pair, a: Mask) -> Mask {
    let so = semi_open_family(p);
    let mut out = 0;
    for x in 0..p.n {
        let punct = a & !(1 << x);
        let isolated = so.iter().any(|&u| u >> x & 1 == 1 && u & punct == 0);
        if !isolated {
            out |= 1 << x;
        }
    }
    out
}

pub fn gamma_derived(p: &Pair, a: Mask) -> Mask {
    let go = gamma_open_family(p);
    let mut out = 0;
    for x in 0..p.n {
        let punct = a & !(1 << x);
        let isolated = go.iter().any(|&u| u >> x & 1 == 1 && u & punct == 0);
        if !isolated {
            out |= 1 << x;
        }
    }
    out
}

// ---------------------------------------------------------------------------
// maps
// ---------------------------------------------------------------------------

pub fn image(f: &[u8], a: Mask) -> Mask {
    let mut out = 0;
    for (x, &q) in f.iter().enumerate() {
        if a >> x & 1 == 1 {
            out |= 1 << q;
        }
    }
    out
}

pub fn preimage(f: &[u8], b: Mask) -> Mask {
    let mut out = 0;
    for (x, &q) in f.iter().enumerate() {
        if b >> q & 1 == 1 {
            out |= 1 << x;
        }
    }
    out
}

/// Preimages of γ-open sets of the codomain are semi-open in the domain.
pub fn is_semi_continuous(dom: &Pair, cod: &Pair, f: &[u8]) -> bool {
    let so = semi_open_family(dom);
    gamma_open_family(cod).into_iter().all(|b| so.contains(&preimage(f, b)))
}

/// Images of γ-open sets of the domain are semi-open in the codomain.
pub fn is_semi_open_map(dom: &Pair, cod: &Pair, f: &[u8]) -> bool {
    let so = semi_open_family(cod);
    gamma_open_family(dom).into_iter().all(|u| so.contains(&image(f, u)))
}

/// Pointwise two-operation continuity.
pub fn is_continuous_pointwise(dom: &Pair, cod: &Pair, f: &[u8]) -> bool {
    for x in 0..dom.n {
        for (j, &v) in cod.opens.iter().enumerate() {
            if v >> f[x] & 1 == 0 {
                continue;
            }
            let ok = dom.opens.iter().enumerate().any(|(i, &u)| {
                u >> x & 1 == 1 && subset_of(image(f, dom.values[i]), cod.values[j])
            });
            if !ok {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// subspaces
// ---------------------------------------------------------------------------

/// Relative topology plus union-policy induced operation on a carrier,
/// reported in re-indexed coordinates together with the point list and an
/// ambiguity flag (distinct trace values clashed somewhere).
pub fn induced_subspace(p: &Pair, b: Mask) -> (Pair, Vec<usize>, bool) {
    let points: Vec<usize> = (0..p.n).filter(|&x| b >> x & 1 == 1).collect();
    let compress = |parent: Mask| -> Mask {
        let mut out = 0;
        for (i, &x) in points.iter().enumerate() {
            if parent >> x & 1 == 1 {
                out |= 1 << i;
            }
        }
        out
    };
    let mut rel_opens: Vec<Mask> = p.opens.iter().map(|&u| compress(u & b)).collect();
    rel_opens.sort_unstable();
    rel_opens.dedup();
    let mut ambiguous = false;
    let values: Vec<Mask> = rel_opens
        .iter()
        .map(|&rel| {
            let mut candidates: Vec<Mask> = p
                .opens
                .iter()
                .enumerate()
                .filter(|(_, &u)| compress(u & b) == rel)
                .map(|(i, _)| compress(p.values[i] & b))
                .collect();
            candidates.sort_unstable();
            candidates.dedup();
            if candidates.len() > 1 {
                ambiguous = true;
            }
            candidates.into_iter().fold(0, |acc, v| acc | v)
        })
        .collect();
    (Pair { n: points.len(), opens: rel_opens, values }, points, ambiguous)
}

// ---------------------------------------------------------------------------
// operation classification, triple-loop style
// ---------------------------------------------------------------------------

pub fn is_monotone(p: &Pair) -> bool {
    for (i, &u) in p.opens.iter().enumerate() {
        for (j, &v) in p.opens.iter().enumerate() {
            if subset_of(u, v) && !subset_of(p.values[i], p.values[j]) {
                return false;
            }
        }
    }
    true
}

pub fn is_regular(p: &Pair) -> bool {
    for x in 0..p.n {
        for (i, &u) in p.opens.iter().enumerate() {
            if u >> x & 1 == 0 {
                continue;
            }
            for (j, &v) in p.opens.iter().enumerate() {
                if v >> x & 1 == 0 {
                    continue;
                }
                let cap = p.values[i] & p.values[j];
                let ok = p
                    .opens
                    .iter()
                    .enumerate()
                    .any(|(k, &w)| w >> x & 1 == 1 && subset_of(p.values[k], cap));
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

/// `paper = true` checks `U^γ ⊆ B`, otherwise `B ⊆ U^γ`.
pub fn is_open_operation(p: &Pair, paper: bool) -> bool {
    let gamma_open = gamma_open_family(p);
    for x in 0..p.n {
        for (i, &u) in p.opens.iter().enumerate() {
            if u >> x & 1 == 0 {
                continue;
            }
            let val = p.values[i];
            let ok = gamma_open.iter().any(|&b| {
                b >> x & 1 == 1
                    && if paper { subset_of(val, b) } else { subset_of(b, val) }
            });
            if !ok {
                return false;
            }
        }
    }
    true
}
