//! Decomposition of symmetry blocks into Krylov sectors and their
//! classification under charge conjugation and translation.
//!
//! A Krylov sector is a connected component of the constrained-move graph
//! inside one `(m, n_dw)` block. Components are found with union-find over
//! the ordered block (binary search instead of a hash table keeps the
//! L = 24 census, 2.7M states, inside a few seconds), and each sector is
//! canonically labeled by its smallest member so ids are stable across runs.

use std::collections::BTreeMap;

use crate::basis::{BasisState, Chain, SectorKey, SymmetryBlock};
use crate::error::{Error, Result};

/// A dynamically connected set of basis states inside one symmetry block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KrylovSector {
    id: usize,
    key: SectorKey,
    members: Vec<BasisState>,
}

impl KrylovSector {
    pub fn id(&self) -> usize {
        self.id
    }

    pub fn key(&self) -> SectorKey {
        self.key
    }

    /// Canonical label: the lexicographically smallest member.
    pub fn root(&self) -> BasisState {
        self.members[0]
    }

    pub fn dim(&self) -> usize {
        self.members.len()
    }

    /// Members in ascending order.
    pub fn members(&self) -> &[BasisState] {
        &self.members
    }

    pub fn contains(&self, s: BasisState) -> bool {
        self.members.binary_search(&s).is_ok()
    }

    pub fn position_of(&self, s: BasisState) -> Option<usize> {
        self.members.binary_search(&s).ok()
    }

    /// A one-dimensional sector is a frozen state.
    pub fn is_frozen(&self) -> bool {
        self.members.len() == 1
    }

    /// Does charge conjugation map this sector onto itself?
    pub fn is_conjugation_invariant(&self, chain: &Chain) -> bool {
        chain
            .charge_conjugate(self.root())
            .map(|x| self.contains(x))
            .unwrap_or(false)
    }

    /// Does single-site translation map this sector onto itself?
    ///
    /// The image of a sector under translation is a whole sector, so one
    /// member landing inside is equivalent to set equality.
    pub fn is_translation_invariant(&self, chain: &Chain) -> bool {
        chain
            .translate(self.root(), 1)
            .map(|t| self.contains(t))
            .unwrap_or(false)
    }
}

/// Classification of a block's sectors under charge conjugation:
/// `K = K_0 + 2 K_pi` with `K_0` invariant sectors and `K_pi` exchanged pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugationClassification {
    pub k_total: usize,
    pub k_invariant: usize,
    pub k_paired: usize,
    pub invariant_ids: Vec<usize>,
    /// Pairs `(id_p, id_q)` with `root(p) < root(q)`.
    pub pairs: Vec<(usize, usize)>,
}

/// Partition of sector ids into orbits of single-site translation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationOrbits {
    /// Each orbit lists ids in the order visited by repeated translation,
    /// starting from the smallest id in the orbit.
    pub orbits: Vec<Vec<usize>>,
}

struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut i: u32) -> u32 {
        let mut root = i;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        while i != root {
            let next = self.parent[i as usize];
            self.parent[i as usize] = root;
            i = next;
        }
        root
    }

    fn union(&mut self, a: u32, b: u32) {
        let mut a = self.find(a);
        let mut b = self.find(b);
        if a == b {
            return;
        }
        if self.size[a as usize] < self.size[b as usize] {
            std::mem::swap(&mut a, &mut b);
        }
        self.size[a as usize] += self.size[b as usize];
        self.parent[b as usize] = a;
    }
}

/// Connected components of the move graph over one ordered, move-closed
/// state list. Components come out with ascending members and in ascending
/// root order.
fn components(chain: &Chain, key: SectorKey, states: &[BasisState]) -> Vec<KrylovSector> {
    let mut uf = UnionFind::new(states.len());
    let mut moves = Vec::with_capacity(chain.len() as usize);
    for (idx, &s) in states.iter().enumerate() {
        chain.allowed_moves_into(s, &mut moves);
        for &(_, t) in moves.iter() {
            if t.0 > s.0 {
                let j = states
                    .binary_search(&t)
                    .expect("move target stays inside its symmetry block");
                uf.union(idx as u32, j as u32);
            }
        }
    }
    let mut slot = vec![u32::MAX; states.len()];
    let mut sectors: Vec<KrylovSector> = Vec::new();
    for idx in 0..states.len() {
        let r = uf.find(idx as u32) as usize;
        if slot[r] == u32::MAX {
            slot[r] = sectors.len() as u32;
            sectors.push(KrylovSector {
                id: sectors.len(),
                key,
                members: Vec::with_capacity(uf.size[r] as usize),
            });
        }
        sectors[slot[r] as usize].members.push(states[idx]);
    }
    sectors
}

/// Krylov sectors of one `(m, n_dw)` block, ids in ascending root order.
pub fn build_krylov_sectors(chain: &Chain, key: SectorKey) -> Result<Vec<KrylovSector>> {
    let block = SymmetryBlock::enumerate(chain, key)?;
    Ok(components(chain, key, block.states()))
}

/// Krylov sectors of every `n_dw` block at fixed magnetization, merged and
/// re-labeled in ascending root order.
pub fn census(chain: &Chain, m: i32) -> Result<Vec<KrylovSector>> {
    let class = SymmetryBlock::enumerate_magnetization(chain, m)?;
    // Bucket the magnetization class by domain-wall count; ascending order
    // within each bucket is inherited from the class enumeration.
    let mut buckets: BTreeMap<u32, Vec<BasisState>> = BTreeMap::new();
    for &s in class.states() {
        buckets
            .entry(chain.domain_wall_count(s)?)
            .or_default()
            .push(s);
    }
    let mut sectors = Vec::new();
    for (n_dw, states) in buckets {
        sectors.extend(components(chain, SectorKey { m, n_dw }, &states));
    }
    sectors.sort_by_key(|sec| sec.root());
    for (id, sec) in sectors.iter_mut().enumerate() {
        sec.id = id;
    }
    Ok(sectors)
}

/// True iff the state has no allowed moves.
pub fn is_frozen(chain: &Chain, s: BasisState) -> Result<bool> {
    Ok(chain.allowed_moves(s)?.is_empty())
}

fn is_neel(chain: &Chain, s: BasisState) -> bool {
    let even_neel = 0x5555_5555u32 & (u32::MAX >> (32 - chain.len()));
    s.0 == even_neel || s.0 == even_neel ^ (u32::MAX >> (32 - chain.len()))
}

fn has_zigzag(chain: &Chain, s: BasisState) -> bool {
    let l = chain.len();
    (0..l).any(|i| {
        let a = chain.site_bit(s, i);
        let b = chain.site_bit(s, (i + 1) % l);
        let c = chain.site_bit(s, (i + 2) % l);
        a == c && b != a
    })
}

/// Independent frozen-state oracle on the `m = 0` block: a state is frozen
/// iff it is a Neel state or contains no cyclic `010`/`101` motif.
pub fn motif_frozen_predicate(chain: &Chain, s: BasisState) -> Result<bool> {
    let m = chain.magnetization(s)?;
    if m != 0 {
        return Err(Error::NonZeroMagnetization(m));
    }
    Ok(is_neel(chain, s) || !has_zigzag(chain, s))
}

/// Number of frozen `m = 0` states, via a transfer count of balanced cyclic
/// strings avoiding `010`/`101`, plus the two Neel states. No block is
/// materialized, so this stays cheap out to `L = 32`.
pub fn count_frozen_states(l: u32) -> Result<u64> {
    Chain::new(l)?;
    Ok(balanced_motif_free_cyclic(l as usize) + 2)
}

/// Cyclic binary strings of length `l` with `l/2` ones and every maximal
/// run of length >= 2 (equivalently: no cyclic `010` or `101`).
///
/// Windowed DP: fix the first two symbols, propagate the pair
/// `(b_{i-1}, b_i)` with a ones-resolved count, and close the two wrap
/// triples at the end.
fn balanced_motif_free_cyclic(l: usize) -> u64 {
    let forbidden = |x: u32, y: u32, z: u32| x == z && y != x;
    let half = l / 2;
    let mut total = 0u64;
    for w0 in 0..2u32 {
        for w1 in 0..2u32 {
            let mut dp = vec![[0u64; 33]; 4];
            dp[(w0 << 1 | w1) as usize][(w0 + w1) as usize] = 1;
            for _ in 2..l {
                let mut next = vec![[0u64; 33]; 4];
                for win in 0..4u32 {
                    let (a, b) = (win >> 1, win & 1);
                    for ones in 0..=l {
                        let c = dp[win as usize][ones];
                        if c == 0 {
                            continue;
                        }
                        for nb in 0..2u32 {
                            if forbidden(a, b, nb) {
                                continue;
                            }
                            next[((b << 1) | nb) as usize][ones + nb as usize] += c;
                        }
                    }
                }
                dp = next;
            }
            for win in 0..4u32 {
                let (a, b) = (win >> 1, win & 1);
                if forbidden(a, b, w0) || forbidden(b, w0, w1) {
                    continue;
                }
                total += dp[win as usize][half];
            }
        }
    }
    total
}

fn check_same_key(sectors: &[KrylovSector]) -> Result<Option<SectorKey>> {
    let Some(first) = sectors.first() else {
        return Ok(None);
    };
    if sectors.iter().any(|sec| sec.key() != first.key()) {
        return Err(Error::MixedKeys);
    }
    Ok(Some(first.key()))
}

/// Classify one `m = 0` block's sectors under charge conjugation.
///
/// Reported indices are positions in the given slice (for a freshly built
/// block these coincide with the sector ids).
pub fn classify_conjugation(
    chain: &Chain,
    sectors: &[KrylovSector],
) -> Result<ConjugationClassification> {
    if let Some(key) = check_same_key(sectors)? {
        if key.m != 0 {
            return Err(Error::NonZeroMagnetization(key.m));
        }
    }
    let by_root: BTreeMap<BasisState, usize> = sectors
        .iter()
        .enumerate()
        .map(|(pos, sec)| (sec.root(), pos))
        .collect();
    let mut invariant_ids = Vec::new();
    let mut pairs = Vec::new();
    for (pos, sec) in sectors.iter().enumerate() {
        // Conjugation reverses lexicographic order, so the image sector's
        // root is the conjugate of this sector's largest member.
        let image_root = chain.charge_conjugate(*sec.members().last().unwrap())?;
        let image_pos = *by_root.get(&image_root).ok_or_else(|| Error::NotFlipClosed {
            state: chain.format_state(image_root),
        })?;
        let image = &sectors[image_pos];
        for (&s, &t) in sec.members().iter().rev().zip(image.members().iter()) {
            if chain.charge_conjugate(s)? != t {
                return Err(Error::NotConjugationPair);
            }
        }
        if image_pos == pos {
            invariant_ids.push(pos);
        } else if pos < image_pos {
            pairs.push((pos, image_pos));
        }
    }
    Ok(ConjugationClassification {
        k_total: sectors.len(),
        k_invariant: invariant_ids.len(),
        k_paired: pairs.len(),
        invariant_ids,
        pairs,
    })
}

/// Map each member state of a sector list to the position of its sector.
pub struct SectorLookup {
    states: Vec<BasisState>,
    owner: Vec<u32>,
}

impl SectorLookup {
    pub fn build(sectors: &[KrylovSector]) -> Self {
        let total: usize = sectors.iter().map(|sec| sec.dim()).sum();
        let mut pairs = Vec::with_capacity(total);
        for (pos, sec) in sectors.iter().enumerate() {
            pairs.extend(sec.members().iter().map(|&s| (s, pos as u32)));
        }
        pairs.sort_unstable_by_key(|&(s, _)| s);
        Self {
            states: pairs.iter().map(|&(s, _)| s).collect(),
            owner: pairs.iter().map(|&(_, id)| id).collect(),
        }
    }

    pub fn sector_of(&self, s: BasisState) -> Option<usize> {
        self.states
            .binary_search(&s)
            .ok()
            .map(|i| self.owner[i] as usize)
    }
}

/// Partition a block's sectors into orbits of single-site translation.
///
/// Indices are positions in the given slice, as for [`classify_conjugation`].
pub fn classify_translation(
    chain: &Chain,
    sectors: &[KrylovSector],
) -> Result<TranslationOrbits> {
    check_same_key(sectors)?;
    let lookup = SectorLookup::build(sectors);
    let image = |pos: usize| -> Result<usize> {
        let t = chain.translate(sectors[pos].root(), 1)?;
        lookup.sector_of(t).ok_or_else(|| Error::NotTranslationClosed {
            state: chain.format_state(t),
        })
    };
    let mut seen = vec![false; sectors.len()];
    let mut orbits = Vec::new();
    for start in 0..sectors.len() {
        if seen[start] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut pos = start;
        loop {
            seen[pos] = true;
            orbit.push(pos);
            pos = image(pos)?;
            if pos == start {
                break;
            }
        }
        orbits.push(orbit);
    }
    Ok(TranslationOrbits { orbits })
}

/// DOT rendering of a block: basis states as nodes grouped per sector,
/// allowed moves as plain edges, conjugation pairings as dashed pink edges
/// between roots, translation orbits as orange arrows between roots.
pub fn export_sector_graph(
    chain: &Chain,
    sectors: &[KrylovSector],
    conjugation: Option<&ConjugationClassification>,
    orbits: Option<&TranslationOrbits>,
) -> String {
    use std::fmt::Write;

    let mut out = String::new();
    out.push_str("digraph krylov_sectors {\n");
    out.push_str("  node [shape=box fontname=\"monospace\"];\n");
    let pair_of = |id: usize| -> Option<usize> {
        conjugation.and_then(|c| {
            c.pairs
                .iter()
                .find_map(|&(p, q)| match id {
                    _ if id == p => Some(q),
                    _ if id == q => Some(p),
                    _ => None,
                })
        })
    };
    for sec in sectors {
        let class = match (conjugation, pair_of(sec.id())) {
            (Some(_), Some(q)) => format!("paired with {q}"),
            (Some(_), None) => "conjugation invariant".to_owned(),
            (None, _) => String::new(),
        };
        writeln!(
            out,
            "  subgraph cluster_{} {{\n    label=\"sector {} | dim {}{}{}\";",
            sec.id(),
            sec.id(),
            sec.dim(),
            if class.is_empty() { "" } else { " | " },
            class
        )
        .unwrap();
        for &s in sec.members() {
            writeln!(out, "    \"{}\";", chain.format_state(s)).unwrap();
        }
        for &s in sec.members() {
            for (_, t) in chain.allowed_moves(s).unwrap() {
                if t.0 > s.0 {
                    writeln!(
                        out,
                        "    \"{}\" -> \"{}\" [dir=none];",
                        chain.format_state(s),
                        chain.format_state(t)
                    )
                    .unwrap();
                }
            }
        }
        out.push_str("  }\n");
    }
    if let Some(c) = conjugation {
        for &(p, q) in &c.pairs {
            writeln!(
                out,
                "  \"{}\" -> \"{}\" [dir=none style=dashed color=deeppink constraint=false];",
                chain.format_state(sectors[p].root()),
                chain.format_state(sectors[q].root())
            )
            .unwrap();
        }
    }
    if let Some(t) = orbits {
        for orbit in &t.orbits {
            if orbit.len() < 2 {
                continue;
            }
            for (k, &id) in orbit.iter().enumerate() {
                let next = orbit[(k + 1) % orbit.len()];
                writeln!(
                    out,
                    "  \"{}\" -> \"{}\" [color=orange constraint=false];",
                    chain.format_state(sectors[id].root()),
                    chain.format_state(sectors[next].root())
                )
                .unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn chain(l: u32) -> Chain {
        Chain::new(l).unwrap()
    }

    fn sectors_of(c: &Chain, m: i32, n_dw: u32) -> Vec<KrylovSector> {
        build_krylov_sectors(c, SectorKey { m, n_dw }).unwrap()
    }

    /// Breadth-first re-expansion from the root, independent of union-find.
    fn expand(chain: &Chain, root: BasisState) -> BTreeSet<BasisState> {
        let mut seen = BTreeSet::from([root]);
        let mut frontier = vec![root];
        while let Some(s) = frontier.pop() {
            for (_, t) in chain.allowed_moves(s).unwrap() {
                if seen.insert(t) {
                    frontier.push(t);
                }
            }
        }
        seen
    }

    #[test]
    fn four_singletons_at_l4() {
        let c = chain(4);
        let sectors = sectors_of(&c, 0, 2);
        assert_eq!(sectors.len(), 4);
        let roots: Vec<String> = sectors
            .iter()
            .map(|sec| c.format_state(sec.root()))
            .collect();
        assert_eq!(roots, vec!["0011", "0110", "1001", "1100"]);
        assert!(sectors.iter().all(|sec| sec.dim() == 1));
    }

    #[test]
    fn eight_frozen_sectors_among_twenty_states_at_l6() {
        let c = chain(6);
        let sectors = census(&c, 0).unwrap();
        let total: usize = sectors.iter().map(|sec| sec.dim()).sum();
        assert_eq!(total, 20);
        let frozen: Vec<&KrylovSector> = sectors.iter().filter(|sec| sec.is_frozen()).collect();
        assert_eq!(frozen.len(), 8);
        // 2 Neel states plus the 6 rotations of 000111.
        let mut expected: BTreeSet<String> = ["010101", "101010"]
            .iter()
            .map(|s| (*s).to_owned())
            .collect();
        let base = c.parse_state("000111").unwrap();
        for shift in 0..6 {
            expected.insert(c.format_state(c.translate(base, shift).unwrap()));
        }
        let got: BTreeSet<String> = frozen
            .iter()
            .map(|sec| c.format_state(sec.root()))
            .collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn l18_census_contains_the_2970_dim_sector() {
        let c = chain(18);
        let sectors = census(&c, 0).unwrap();
        assert!(sectors.iter().any(|sec| sec.dim() == 2970));
    }

    #[test]
    fn sectors_match_bfs_re_expansion() {
        for l in [4u32, 6, 8, 10] {
            let c = chain(l);
            for sec in census(&c, 0).unwrap() {
                let expanded = expand(&c, sec.root());
                let members: BTreeSet<BasisState> = sec.members().iter().copied().collect();
                assert_eq!(members, expanded, "L={l} root={}", c.format_state(sec.root()));
                assert_eq!(sec.is_frozen(), sec.dim() == 1);
            }
        }
    }

    #[test]
    fn census_partitions_every_block() {
        for l in [4u32, 6, 8, 10, 12] {
            let c = chain(l);
            let mut covered = 0u64;
            for m in c.magnetization_values() {
                let sectors = census(&c, m).unwrap();
                let mut all: Vec<BasisState> = sectors
                    .iter()
                    .flat_map(|sec| sec.members().iter().copied())
                    .collect();
                all.sort_unstable();
                all.dedup();
                covered += all.len() as u64;
                for sec in &sectors {
                    for &s in sec.members() {
                        assert_eq!(c.sector_key(s).unwrap(), sec.key());
                    }
                }
            }
            assert_eq!(covered, c.hilbert_dim());
        }
    }

    #[test]
    fn frozen_examples() {
        let c4 = chain(4);
        assert!(is_frozen(&c4, c4.parse_state("1010").unwrap()).unwrap());
        let c18 = chain(18);
        assert!(is_frozen(&c18, c18.parse_state("110001100111001100").unwrap()).unwrap());
        let c6 = chain(6);
        assert!(!is_frozen(&c6, c6.parse_state("001101").unwrap()).unwrap());
    }

    #[test]
    fn motif_predicate_examples() {
        let c6 = chain(6);
        assert!(motif_frozen_predicate(&c6, c6.parse_state("000111").unwrap()).unwrap());
        assert!(!motif_frozen_predicate(&c6, c6.parse_state("010011").unwrap()).unwrap());
        let c4 = chain(4);
        assert!(motif_frozen_predicate(&c4, c4.parse_state("0101").unwrap()).unwrap());
        assert!(matches!(
            motif_frozen_predicate(&c4, c4.parse_state("0111").unwrap()),
            Err(Error::NonZeroMagnetization(-2))
        ));
    }

    #[test]
    fn motif_predicate_equals_is_frozen_on_zero_mag_block() {
        for l in [4u32, 6, 8, 10, 12] {
            let c = chain(l);
            let block = SymmetryBlock::enumerate_magnetization(&c, 0).unwrap();
            for &s in block.states() {
                assert_eq!(
                    motif_frozen_predicate(&c, s).unwrap(),
                    is_frozen(&c, s).unwrap(),
                    "L={l} s={}",
                    c.format_state(s)
                );
            }
        }
    }

    /// Independent count by cyclic run compositions: a motif-free balanced
    /// string is an alternating arrangement of j one-runs and j zero-runs,
    /// all of length >= 2; there are (L/j) C(L/2-j-1, j-1)^2 labeled strings
    /// for each j.
    fn composition_count(l: u64) -> u64 {
        let half = l / 2;
        let mut total = 0.0f64;
        for j in 1..=(half / 2) {
            let c = crate::basis::binomial((half - j - 1) as u32, (j - 1) as u32) as f64;
            total += l as f64 / j as f64 * c * c;
        }
        total.round() as u64
    }

    #[test]
    fn frozen_count_examples_and_oracles() {
        assert_eq!(count_frozen_states(4).unwrap(), 6);
        assert_eq!(count_frozen_states(6).unwrap(), 8);
        // Exhaustive scan agreement.
        for l in [4u32, 6, 8, 10, 12, 14, 16] {
            let c = chain(l);
            let block = SymmetryBlock::enumerate_magnetization(&c, 0).unwrap();
            let scanned = block
                .states()
                .iter()
                .filter(|&&s| is_frozen(&c, s).unwrap())
                .count() as u64;
            assert_eq!(count_frozen_states(l).unwrap(), scanned, "L={l}");
        }
        // Run-composition formula agreement out to L = 32.
        for l in (4..=32u32).step_by(2) {
            assert_eq!(
                count_frozen_states(l).unwrap(),
                composition_count(l as u64) + 2,
                "L={l}"
            );
        }
    }

    #[test]
    fn conjugation_classification_at_l4() {
        let c = chain(4);
        let sectors = sectors_of(&c, 0, 2);
        let class = classify_conjugation(&c, &sectors).unwrap();
        assert_eq!(class.k_total, 4);
        assert_eq!(class.k_invariant, 0);
        assert_eq!(class.k_paired, 2);
        assert_eq!(class.pairs, vec![(0, 3), (1, 2)]);
        assert_eq!(class.k_total, class.k_invariant + 2 * class.k_paired);

        let neel = sectors_of(&c, 0, 4);
        let class = classify_conjugation(&c, &neel).unwrap();
        assert_eq!((class.k_total, class.k_invariant, class.k_paired), (2, 0, 1));
        assert_eq!(class.pairs, vec![(0, 1)]);
    }

    #[test]
    fn conjugation_requires_zero_magnetization_and_single_key() {
        let c = chain(4);
        let sectors = sectors_of(&c, 2, 2);
        assert!(matches!(
            classify_conjugation(&c, &sectors),
            Err(Error::NonZeroMagnetization(2))
        ));
        let mut mixed = sectors_of(&c, 0, 2);
        mixed.extend(sectors_of(&c, 0, 4));
        assert!(matches!(
            classify_conjugation(&c, &mixed),
            Err(Error::MixedKeys)
        ));
        assert!(matches!(
            classify_translation(&c, &mixed),
            Err(Error::MixedKeys)
        ));
    }

    #[test]
    fn paired_sectors_have_equal_dims_and_exact_image_sets() {
        for l in [6u32, 8, 10, 12] {
            let c = chain(l);
            for n_dw in c.domain_wall_values() {
                let sectors = sectors_of(&c, 0, n_dw);
                if sectors.is_empty() {
                    continue;
                }
                let class = classify_conjugation(&c, &sectors).unwrap();
                assert_eq!(class.k_total, class.k_invariant + 2 * class.k_paired);
                for &(p, q) in &class.pairs {
                    assert_eq!(sectors[p].dim(), sectors[q].dim());
                    let image: BTreeSet<BasisState> = sectors[p]
                        .members()
                        .iter()
                        .map(|&s| c.charge_conjugate(s).unwrap())
                        .collect();
                    let target: BTreeSet<BasisState> =
                        sectors[q].members().iter().copied().collect();
                    assert_eq!(image, target);
                }
                for &id in &class.invariant_ids {
                    let image: BTreeSet<BasisState> = sectors[id]
                        .members()
                        .iter()
                        .map(|&s| c.charge_conjugate(s).unwrap())
                        .collect();
                    let own: BTreeSet<BasisState> =
                        sectors[id].members().iter().copied().collect();
                    assert_eq!(image, own);
                }
            }
        }
    }

    #[test]
    fn frozen_sectors_are_never_conjugation_invariant_up_to_l16() {
        for l in [4u32, 6, 8, 10, 12, 14, 16] {
            let c = chain(l);
            let mut frozen_total = 0usize;
            let mut paired_total = 0usize;
            for n_dw in c.domain_wall_values() {
                let block = sectors_of(&c, 0, n_dw);
                if block.is_empty() {
                    continue;
                }
                let class = classify_conjugation(&c, &block).unwrap();
                for &id in &class.invariant_ids {
                    assert!(
                        !block[id].is_frozen(),
                        "frozen sector {} invariant at L={l}",
                        c.format_state(block[id].root())
                    );
                }
                frozen_total += block.iter().filter(|sec| sec.is_frozen()).count();
                paired_total += 2 * class.k_paired;
            }
            assert_eq!(frozen_total as u64, count_frozen_states(l).unwrap());
            assert!(paired_total as u64 >= count_frozen_states(l).unwrap());
        }
    }

    #[test]
    fn translation_orbits_at_l4() {
        let c = chain(4);
        let sectors = sectors_of(&c, 0, 2);
        let orbits = classify_translation(&c, &sectors).unwrap();
        assert_eq!(orbits.orbits, vec![vec![0, 2, 3, 1]]);

        let neel = sectors_of(&c, 0, 4);
        let orbits = classify_translation(&c, &neel).unwrap();
        assert_eq!(orbits.orbits, vec![vec![0, 1]]);
    }

    #[test]
    fn orbit_lengths_divide_chain_length_and_dims_agree() {
        for l in [6u32, 8, 10, 12] {
            let c = chain(l);
            for n_dw in c.domain_wall_values() {
                let sectors = sectors_of(&c, 0, n_dw);
                if sectors.is_empty() {
                    continue;
                }
                let orbits = classify_translation(&c, &sectors).unwrap();
                let mut seen: Vec<usize> = Vec::new();
                for orbit in &orbits.orbits {
                    assert_eq!(l as usize % orbit.len(), 0, "L={l} n_dw={n_dw}");
                    let d = sectors[orbit[0]].dim();
                    assert!(orbit.iter().all(|&id| sectors[id].dim() == d));
                    seen.extend(orbit.iter().copied());
                }
                seen.sort_unstable();
                assert_eq!(seen, (0..sectors.len()).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn dot_export_structure() {
        let c = chain(4);
        let sectors = sectors_of(&c, 0, 2);
        let conj = classify_conjugation(&c, &sectors).unwrap();
        let orbits = classify_translation(&c, &sectors).unwrap();
        let dot = export_sector_graph(&c, &sectors, Some(&conj), Some(&orbits));
        assert_eq!(dot.matches("subgraph cluster_").count(), 4);
        assert_eq!(dot.matches("deeppink").count(), 2);
        assert_eq!(dot.matches("orange").count(), 4);
        assert_eq!(dot.matches("dir=none];").count(), 0); // singletons: no moves

        let empty = export_sector_graph(&c, &[], None, None);
        assert!(empty.starts_with("digraph"));
        assert!(empty.trim_end().ends_with('}'));
    }

    #[test]
    fn sector_invariance_probes() {
        let c = chain(6);
        let sectors = census(&c, 0).unwrap();
        // 010101 is translation-paired with 101010 but conjugation-paired too;
        // the full m=0, n_dw=2-like frozen strings are neither.
        for sec in &sectors {
            let flip_inv = sec.is_conjugation_invariant(&c);
            let image: BTreeSet<BasisState> = sec
                .members()
                .iter()
                .map(|&s| c.charge_conjugate(s).unwrap())
                .collect();
            let own: BTreeSet<BasisState> = sec.members().iter().copied().collect();
            assert_eq!(flip_inv, image == own);

            let t_inv = sec.is_translation_invariant(&c);
            let image: BTreeSet<BasisState> = sec
                .members()
                .iter()
                .map(|&s| c.translate(s, 1).unwrap())
                .collect();
            assert_eq!(t_inv, image == own);
        }
    }
}
