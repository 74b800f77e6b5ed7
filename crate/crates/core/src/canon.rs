//! Canonical forms for isomorph rejection.
//!
//! The canonical code of a hypergraph is the lexicographically smallest byte
//! encoding of its edge set over all vertex relabelings, found by iterated
//! partition refinement plus backtracking over the remaining choices. Two
//! hypergraphs have equal codes iff they are isomorphic. No external
//! canonical-labeling dependency: instances here stay at desk scale, and an
//! auditable search beats asymptotics.
//!
//! Encoding: `[r, n, m_hi, m_lo]` followed by one r-byte tuple per edge
//! (ascending relabeled vertices), edges sorted by (max label, tuple). The
//! max-label-first order makes the code of the already-relabeled prefix a true
//! byte prefix of any completion, which is what the backtracking prunes on.

use crate::hypergraph::{binomial, for_each_subset, BitIter, Hypergraph, Mask};

/// A totally ordered value identifying a hypergraph up to isomorphism.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

fn header(h: &Hypergraph) -> Vec<u8> {
    let m = h.edge_count() as u16;
    vec![h.r() as u8, h.n() as u8, (m >> 8) as u8, (m & 0xff) as u8]
}

/// Encodes one edge under `label[old] = new`, returning (max label, tuple).
fn encode_edge(edge: Mask, label: &[u8]) -> (u8, Vec<u8>) {
    let mut tuple: Vec<u8> = BitIter(edge).map(|v| label[v as usize]).collect();
    tuple.sort_unstable();
    (*tuple.last().unwrap(), tuple)
}

fn encode_all(edges: &[Mask], label: &[u8]) -> Vec<u8> {
    let mut rows: Vec<(u8, Vec<u8>)> = edges.iter().map(|&e| encode_edge(e, label)).collect();
    rows.sort_unstable();
    rows.into_iter().flat_map(|(_, t)| t).collect()
}

struct Searcher<'a> {
    edges: &'a [Mask],
    incident: Vec<Vec<usize>>, // vertex -> indices of incident edges
    best: Option<Vec<u8>>,     // edge-part bytes of the best complete labeling
    best_label: Vec<u8>,
    // Automorphisms harvested from leaves that tie the best code. Branches
    // equivalent under the subgroup fixing the individualized path are
    // skipped; without this, highly symmetric inputs (matchings, unions of
    // cliques) explore their entire automorphism group.
    automorphisms: Vec<Vec<u8>>,
}

const MAX_STORED_AUTOMORPHISMS: usize = 64;

/// Union-find over vertex ids, used for automorphism orbits.
struct Orbits {
    parent: Vec<u32>,
}

impl Orbits {
    fn new(n: usize) -> Self {
        Orbits {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, v: u32) -> u32 {
        let mut v = v;
        while self.parent[v as usize] != v {
            let up = self.parent[self.parent[v as usize] as usize];
            self.parent[v as usize] = up;
            v = up;
        }
        v
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra as usize] = rb;
        }
    }
}

type Partition = Vec<Vec<u32>>;

impl<'a> Searcher<'a> {
    /// Splits cells by structural signatures until stable. A vertex signature
    /// is the multiset, over its incident edges, of the multiset of cell ids
    /// of the edge's other vertices; it is invariant under isomorphism.
    fn refine(&self, cells: &mut Partition) {
        let n: usize = cells.iter().map(|c| c.len()).sum();
        loop {
            let mut cell_of = vec![0u32; n];
            for (i, cell) in cells.iter().enumerate() {
                for &v in cell {
                    cell_of[v as usize] = i as u32;
                }
            }
            let signature = |v: u32| -> Vec<Vec<u32>> {
                let mut sig: Vec<Vec<u32>> = self.incident[v as usize]
                    .iter()
                    .map(|&ei| {
                        let mut ids: Vec<u32> = BitIter(self.edges[ei])
                            .filter(|&u| u != v)
                            .map(|u| cell_of[u as usize])
                            .collect();
                        ids.sort_unstable();
                        ids
                    })
                    .collect();
                sig.sort_unstable();
                sig
            };
            let mut next: Partition = Vec::with_capacity(cells.len());
            let mut split = false;
            for cell in cells.iter() {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut tagged: Vec<(Vec<Vec<u32>>, u32)> =
                    cell.iter().map(|&v| (signature(v), v)).collect();
                tagged.sort();
                let mut group: Vec<u32> = vec![tagged[0].1];
                for pair in tagged.windows(2) {
                    if pair[0].0 == pair[1].0 {
                        group.push(pair[1].1);
                    } else {
                        next.push(std::mem::take(&mut group));
                        group.push(pair[1].1);
                        split = true;
                    }
                }
                next.push(group);
            }
            *cells = next;
            if !split {
                return;
            }
        }
    }

    /// Labels implied by the leading run of singleton cells.
    fn prefix_code(&self, cells: &Partition) -> Vec<u8> {
        let n = self.incident.len();
        let mut label = vec![u8::MAX; n];
        let mut decided: Mask = 0;
        let mut next = 0u8;
        for cell in cells {
            if cell.len() != 1 {
                break;
            }
            label[cell[0] as usize] = next;
            decided |= 1 << cell[0];
            next += 1;
        }
        let contained: Vec<Mask> = self
            .edges
            .iter()
            .copied()
            .filter(|&e| e & !decided == 0)
            .collect();
        encode_all(&contained, &label)
    }

    fn search(&mut self, mut cells: Partition, path: &mut Vec<u32>) {
        self.refine(&mut cells);
        let prefix = self.prefix_code(&cells);
        if let Some(best) = &self.best {
            if prefix.as_slice() > &best[..prefix.len()] {
                return;
            }
        }
        match cells.iter().position(|c| c.len() > 1) {
            None => {
                let mut label = vec![0u8; self.incident.len()];
                for (new, cell) in cells.iter().enumerate() {
                    label[cell[0] as usize] = new as u8;
                }
                match &self.best {
                    Some(best) => {
                        let code = encode_all(self.edges, &label);
                        if code < *best {
                            self.best = Some(code);
                            self.best_label = label;
                        } else if code == *best {
                            self.record_automorphism(&label);
                        }
                    }
                    None => {
                        self.best = Some(encode_all(self.edges, &label));
                        self.best_label = label;
                    }
                }
            }
            Some(i) => {
                let candidates = cells[i].clone();
                let mut tried: Vec<u32> = Vec::new();
                for &v in &candidates {
                    // Skip vertices equivalent to an already-tried one under
                    // automorphisms that fix the individualized path.
                    if !tried.is_empty() && self.orbit_equivalent(path, &tried, v) {
                        continue;
                    }
                    tried.push(v);
                    let mut child = cells[..i].to_vec();
                    child.push(vec![v]);
                    child.push(candidates.iter().copied().filter(|&u| u != v).collect());
                    child.extend_from_slice(&cells[i + 1..]);
                    path.push(v);
                    self.search(child, path);
                    path.pop();
                }
            }
        }
    }

    /// Two labelings with equal codes compose to an automorphism.
    fn record_automorphism(&mut self, label: &[u8]) {
        if self.automorphisms.len() >= MAX_STORED_AUTOMORPHISMS {
            return;
        }
        let n = label.len();
        let mut best_inverse = vec![0u8; n];
        for (v, &l) in self.best_label.iter().enumerate() {
            best_inverse[l as usize] = v as u8;
        }
        let perm: Vec<u8> = (0..n).map(|v| best_inverse[label[v] as usize]).collect();
        if perm.iter().enumerate().all(|(v, &w)| v as u8 == w) {
            return;
        }
        if !self.automorphisms.contains(&perm) {
            self.automorphisms.push(perm);
        }
    }

    fn orbit_equivalent(&self, path: &[u32], tried: &[u32], v: u32) -> bool {
        if self.automorphisms.is_empty() {
            return false;
        }
        let n = self.incident.len();
        let mut orbits = Orbits::new(n);
        let mut any = false;
        for perm in &self.automorphisms {
            if path.iter().all(|&p| perm[p as usize] as u32 == p) {
                any = true;
                for u in 0..n as u32 {
                    orbits.union(u, perm[u as usize] as u32);
                }
            }
        }
        if !any {
            return false;
        }
        let root = orbits.find(v);
        tried.iter().any(|&u| orbits.find(u) == root)
    }
}

/// Canonical code plus the relabeling (`label[old] = new`) that realizes it.
pub fn canonical_relabeling(h: &Hypergraph) -> (CanonicalCode, Vec<u32>) {
    let n = h.n();
    let identity: Vec<u32> = (0..n).collect();
    let mut bytes = header(h);

    // Fully symmetric extremes: every labeling yields the same code.
    let m = h.edge_count() as u128;
    if m == 0 {
        return (CanonicalCode(bytes), identity);
    }
    if m == binomial(n as u64, h.r() as u64) {
        let label: Vec<u8> = (0..n as u8).collect();
        let mut all: Vec<Mask> = Vec::with_capacity(h.edge_count());
        for_each_subset(n, h.r(), |mask| all.push(mask));
        bytes.extend(encode_all(&all, &label));
        return (CanonicalCode(bytes), identity);
    }

    let mut incident = vec![Vec::new(); n as usize];
    for (i, &e) in h.edge_masks().iter().enumerate() {
        for v in BitIter(e) {
            incident[v as usize].push(i);
        }
    }
    let mut searcher = Searcher {
        edges: h.edge_masks(),
        incident,
        best: None,
        best_label: Vec::new(),
        automorphisms: Vec::new(),
    };
    searcher.search(vec![(0..n).collect()], &mut Vec::new());
    bytes.extend(searcher.best.expect("nonempty search"));
    let label: Vec<u32> = searcher.best_label.iter().map(|&b| b as u32).collect();
    (CanonicalCode(bytes), label)
}

/// Isomorphism-invariant code; equal codes iff isomorphic hypergraphs.
pub fn canonical_form(h: &Hypergraph) -> CanonicalCode {
    canonical_relabeling(h).0
}

/// The canonically relabeled copy of `h`.
pub fn canonicalize(h: &Hypergraph) -> Hypergraph {
    let (_, label) = canonical_relabeling(h);
    h.relabeled(&label)
}

pub fn are_isomorphic(a: &Hypergraph, b: &Hypergraph) -> bool {
    if a.r() != b.r() || a.n() != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    canonical_form(a) == canonical_form(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::Hypergraph;

    fn h(r: u32, n: u32, edges: &[&[u32]]) -> Hypergraph {
        let lists: Vec<Vec<u32>> = edges.iter().map(|e| e.to_vec()).collect();
        Hypergraph::from_edge_lists(r, n, &lists).unwrap()
    }

    fn all_permutations(n: u32) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut items: Vec<u32> = (0..n).collect();
        permute(&mut items, 0, &mut out);
        out
    }

    fn permute(items: &mut Vec<u32>, k: usize, out: &mut Vec<Vec<u32>>) {
        if k == items.len() {
            out.push(items.clone());
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            permute(items, k + 1, out);
            items.swap(k, i);
        }
    }

    #[test]
    fn relabeled_paths_share_a_code() {
        let a = h(2, 3, &[&[0, 1], &[1, 2]]);
        let b = h(2, 3, &[&[0, 2], &[0, 1]]);
        assert_eq!(canonical_form(&a), canonical_form(&b));
    }

    #[test]
    fn triangle_differs_from_path() {
        let triangle = h(2, 3, &[&[0, 1], &[0, 2], &[1, 2]]);
        let path = h(2, 3, &[&[0, 1], &[1, 2]]);
        assert_ne!(canonical_form(&triangle), canonical_form(&path));
    }

    #[test]
    fn code_is_permutation_invariant_exhaustively() {
        // Over every labeled graph on 4 vertices and all 4! permutations.
        for bits in 0u32..64 {
            let pairs = [(0u32, 1u32), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
            let edges: Vec<Vec<u32>> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| bits >> i & 1 == 1)
                .map(|(_, &(a, b))| vec![a, b])
                .collect();
            let g = Hypergraph::from_edge_lists(2, 4, &edges).unwrap();
            let code = canonical_form(&g);
            for perm in all_permutations(4) {
                let relabeled = g.relabeled(&perm);
                assert_eq!(canonical_form(&relabeled), code);
            }
        }
    }

    #[test]
    fn code_is_permutation_invariant_for_triples() {
        let g = h(3, 5, &[&[0, 1, 2], &[1, 2, 3], &[2, 3, 4]]);
        let code = canonical_form(&g);
        for perm in all_permutations(5) {
            assert_eq!(canonical_form(&g.relabeled(&perm)), code);
        }
    }

    #[test]
    fn canonicalize_realizes_its_own_code() {
        let g = h(2, 5, &[&[0, 4], &[1, 4], &[2, 3], &[0, 2]]);
        let canonical = canonicalize(&g);
        assert_eq!(canonical_form(&canonical), canonical_form(&g));
        let (_, label) = canonical_relabeling(&canonical);
        // Relabeling a canonical copy by its own canonical labeling is a fixpoint.
        assert_eq!(canonical.relabeled(&label), canonical);
    }

    #[test]
    fn distinguishes_nonisomorphic_same_degree_graphs() {
        // C6 versus two disjoint triangles: both 2-regular on 6 vertices.
        let c6 = h(2, 6, &[&[0, 1], &[1, 2], &[2, 3], &[3, 4], &[4, 5], &[0, 5]]);
        let triangles = h(2, 6, &[&[0, 1], &[0, 2], &[1, 2], &[3, 4], &[3, 5], &[4, 5]]);
        assert_ne!(canonical_form(&c6), canonical_form(&triangles));
    }

    #[test]
    fn symmetric_extremes() {
        let complete = Hypergraph::complete(3, 6).unwrap();
        for perm in all_permutations(6) {
            assert_eq!(
                canonical_form(&complete.relabeled(&perm)),
                canonical_form(&complete)
            );
        }
        let empty = Hypergraph::edgeless(2, 6).unwrap();
        assert_eq!(canonical_form(&empty).as_bytes(), &[2, 6, 0, 0]);
    }

    #[test]
    fn code_agrees_under_all_permutations_up_to_n6() {
        // Random hypergraphs on 5 and 6 vertices, all n! relabelings.
        let mut rng = crate::testutil::rng(0xca70);
        for n in [5u32, 6] {
            for r in [2u32, 3] {
                for _ in 0..4 {
                    let p = rand::Rng::random_range(&mut rng, 0.2..0.8);
                    let g = crate::testutil::random_hypergraph(&mut rng, r, n, p);
                    let code = canonical_form(&g);
                    for perm in all_permutations(n) {
                        assert_eq!(canonical_form(&g.relabeled(&perm)), code, "{g:?} {perm:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn high_symmetry_inputs_stay_cheap() {
        // Matchings have automorphism groups of order 2^t * t!; the orbit
        // pruning must keep them tractable.
        let edges: Vec<Vec<u32>> = (0..10u32).map(|i| vec![2 * i, 2 * i + 1]).collect();
        let matching = Hypergraph::from_edge_lists(2, 20, &edges).unwrap();
        let code = canonical_form(&matching);
        let perm: Vec<u32> = (0..20).map(|v| (v + 7) % 20).collect();
        assert_eq!(canonical_form(&matching.relabeled(&perm)), code);
    }

    #[test]
    fn iso_check_respects_counts() {
        let a = h(2, 4, &[&[0, 1]]);
        let b = h(2, 4, &[&[0, 1], &[2, 3]]);
        assert!(!are_isomorphic(&a, &b));
        let c = h(2, 4, &[&[2, 3]]);
        assert!(are_isomorphic(&a, &c));
    }
}
