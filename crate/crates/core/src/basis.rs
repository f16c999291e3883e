//! Basis states of a periodic spin-1/2 chain and the constrained move set.
//!
//! A basis state is a length-`L` bit pattern on a ring. Bit value 0 stands
//! for the Pauli-Z eigenvalue +1 and bit value 1 for -1, i.e. `z_i = 1 - 2 b_i`.
//! Site 0 sits at the most significant bit of the `L`-bit window, so the
//! ASCII rendering of a state (site 0 leftmost) is exactly the `L`-digit
//! binary rendering of the stored word and numeric order coincides with
//! lexicographic order on the bit strings. Flipping this convention negates
//! every signed staggered quantity downstream, so it is fixed here once.

use crate::error::{Error, Result};

/// A computational-basis spin configuration, packed into one machine word.
///
/// Only lengths up to 32 are supported so a state always fits a `u32`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisState(pub u32);

/// Conserved quantum numbers labeling a symmetry block: magnetization `m`
/// (eigenvalue of `sum_i Z_i`) and domain-wall count `n_dw`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SectorKey {
    pub m: i32,
    pub n_dw: u32,
}

/// Which hopping model generates the dynamics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    /// Unconstrained nearest-neighbor XY exchange.
    Xy,
    /// XY exchange gated by the XNOR constraint on the outer neighbors.
    Xnor,
}

/// Hamiltonian parameters: the hopping model plus the diagonal
/// second-neighbor coupling `delta` and staggered field `field`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub chain: Chain,
    pub model: Model,
    pub delta: f64,
    pub field: f64,
}

impl ModelParams {
    pub fn new(chain: Chain, model: Model, delta: f64, field: f64) -> Self {
        Self {
            chain,
            model,
            delta,
            field,
        }
    }
}

/// A periodic chain of fixed even length `4 <= L <= 32`.
///
/// All site arithmetic lives here; `BasisState` is a bare word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Chain {
    l: u32,
    mask: u32,
}

impl Chain {
    pub fn new(l: u32) -> Result<Self> {
        if !(4..=32).contains(&l) || l % 2 != 0 {
            return Err(Error::InvalidChainLength(l));
        }
        let mask = u32::MAX >> (32 - l);
        Ok(Self { l, mask })
    }

    #[inline]
    pub fn len(&self) -> u32 {
        self.l
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of basis states of the full chain, `2^L`.
    pub fn hilbert_dim(&self) -> u64 {
        1u64 << self.l
    }

    #[inline]
    pub fn contains(&self, s: BasisState) -> bool {
        s.0 & !self.mask == 0
    }

    fn check(&self, s: BasisState) -> Result<()> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(Error::InvalidState {
                state: s.0,
                l: self.l,
            })
        }
    }

    /// Bit of site `i` (0 or 1). Site 0 is the most significant bit.
    #[inline]
    pub fn site_bit(&self, s: BasisState, i: u32) -> u32 {
        debug_assert!(i < self.l);
        (s.0 >> (self.l - 1 - i)) & 1
    }

    /// Z eigenvalue `z_i = 1 - 2 b_i` of site `i`.
    #[inline]
    pub fn site_z(&self, s: BasisState, i: u32) -> i32 {
        1 - 2 * self.site_bit(s, i) as i32
    }

    #[inline]
    fn site_mask(&self, i: u32) -> u32 {
        1 << (self.l - 1 - i)
    }

    /// Magnetization `m = sum_i z_i = #zeros - #ones`.
    pub fn magnetization(&self, s: BasisState) -> Result<i32> {
        self.check(s)?;
        Ok(self.l as i32 - 2 * s.0.count_ones() as i32)
    }

    /// Number of periodic bonds `(i, i+1)` whose spins differ.
    pub fn domain_wall_count(&self, s: BasisState) -> Result<u32> {
        self.check(s)?;
        Ok((s.0 ^ self.rotate(s.0, 1)).count_ones())
    }

    /// Global spin flip `X = prod_i X_i`: negates `m`, preserves `n_dw`.
    pub fn charge_conjugate(&self, s: BasisState) -> Result<BasisState> {
        self.check(s)?;
        Ok(BasisState(s.0 ^ self.mask))
    }

    /// Cyclic shift `b'_i = b_{(i - shift) mod L}`.
    pub fn translate(&self, s: BasisState, shift: u32) -> Result<BasisState> {
        self.check(s)?;
        Ok(BasisState(self.rotate(s.0, shift)))
    }

    /// Rotate the `L`-bit word so that site `i` receives the bit of site
    /// `i - shift` (a right rotation of the site string).
    #[inline]
    fn rotate(&self, w: u32, shift: u32) -> u32 {
        let shift = shift % self.l;
        if shift == 0 {
            w
        } else {
            ((w >> shift) | (w << (self.l - shift))) & self.mask
        }
    }

    /// Conserved-number pair of a state.
    pub fn sector_key(&self, s: BasisState) -> Result<SectorKey> {
        Ok(SectorKey {
            m: self.magnetization(s)?,
            n_dw: self.domain_wall_count(s)?,
        })
    }

    /// XNOR-allowed exchanges: one entry `(i, s')` per bond `(i, i+1)` with
    /// `b_i != b_{i+1}` and `b_{i-1} == b_{i+2}` (indices mod `L`); `s'` has
    /// the two bond spins swapped. An empty list means the state is frozen.
    pub fn allowed_moves(&self, s: BasisState) -> Result<Vec<(u32, BasisState)>> {
        self.check(s)?;
        let mut out = Vec::new();
        self.allowed_moves_into(s, &mut out);
        Ok(out)
    }

    #[inline]
    pub(crate) fn allowed_moves_into(&self, s: BasisState, out: &mut Vec<(u32, BasisState)>) {
        out.clear();
        let l = self.l;
        for i in 0..l {
            let j = (i + 1) % l;
            if self.site_bit(s, i) == self.site_bit(s, j) {
                continue;
            }
            let left = (i + l - 1) % l;
            let right = (i + 2) % l;
            if self.site_bit(s, left) != self.site_bit(s, right) {
                continue;
            }
            out.push((i, BasisState(s.0 ^ (self.site_mask(i) | self.site_mask(j)))));
        }
    }

    /// Unconstrained XY exchanges: every bond with differing spins.
    pub fn exchange_moves(&self, s: BasisState) -> Result<Vec<(u32, BasisState)>> {
        self.check(s)?;
        let l = self.l;
        let mut out = Vec::new();
        for i in 0..l {
            let j = (i + 1) % l;
            if self.site_bit(s, i) != self.site_bit(s, j) {
                out.push((i, BasisState(s.0 ^ (self.site_mask(i) | self.site_mask(j)))));
            }
        }
        Ok(out)
    }

    /// Moves of the given model.
    pub fn moves(&self, model: Model, s: BasisState) -> Result<Vec<(u32, BasisState)>> {
        match model {
            Model::Xy => self.exchange_moves(s),
            Model::Xnor => self.allowed_moves(s),
        }
    }

    /// Second-neighbor Ising sum `sum_i z_i z_{i+2}` (diagonal coupling).
    pub fn second_neighbor_zz(&self, s: BasisState) -> Result<i32> {
        self.check(s)?;
        let agree = (s.0 ^ self.rotate(s.0, 2)).count_ones() as i32;
        Ok(self.l as i32 - 2 * agree)
    }

    /// Staggered sum `sum_i (-1)^i z_i` with site 0 counted as even.
    pub fn staggered_sum(&self, s: BasisState) -> Result<i32> {
        self.check(s)?;
        let mut acc = 0;
        for i in 0..self.l {
            let z = self.site_z(s, i);
            acc += if i % 2 == 0 { z } else { -z };
        }
        Ok(acc)
    }

    /// Parse an ASCII 0/1 string, site 0 leftmost.
    pub fn parse_state(&self, text: &str) -> Result<BasisState> {
        if text.len() != self.l as usize {
            return Err(Error::ParseState(text.to_owned(), self.l));
        }
        let mut w = 0u32;
        for c in text.chars() {
            w = (w << 1)
                | match c {
                    '0' => 0,
                    '1' => 1,
                    _ => return Err(Error::ParseState(text.to_owned(), self.l)),
                };
        }
        Ok(BasisState(w))
    }

    /// Render as an ASCII 0/1 string, site 0 leftmost.
    pub fn format_state(&self, s: BasisState) -> String {
        (0..self.l)
            .map(|i| if self.site_bit(s, i) == 0 { '0' } else { '1' })
            .collect()
    }

    /// Valid magnetization eigenvalues, ascending: `-L..=L` step 2.
    pub fn magnetization_values(&self) -> impl Iterator<Item = i32> {
        let l = self.l as i32;
        (-l..=l).step_by(2)
    }

    /// Valid domain-wall counts under PBC: even values `0..=L`.
    pub fn domain_wall_values(&self) -> impl Iterator<Item = u32> {
        (0..=self.l).step_by(2)
    }
}

/// An ordered symmetry block: every basis state with magnetization `m` and,
/// optionally, a fixed domain-wall count, in ascending order.
#[derive(Debug, Clone)]
pub struct SymmetryBlock {
    chain: Chain,
    m: i32,
    n_dw: Option<u32>,
    states: Vec<BasisState>,
}

impl SymmetryBlock {
    /// Enumerate the block with both quantum numbers fixed.
    pub fn enumerate(chain: &Chain, key: SectorKey) -> Result<Self> {
        check_key(chain, key)?;
        Ok(Self::collect(chain, key.m, Some(key.n_dw)))
    }

    /// Enumerate a full magnetization block (`n_dw` unconstrained).
    pub fn enumerate_magnetization(chain: &Chain, m: i32) -> Result<Self> {
        check_magnetization(chain, m)?;
        Ok(Self::collect(chain, m, None))
    }

    fn collect(chain: &Chain, m: i32, n_dw: Option<u32>) -> Self {
        let k = ((chain.len() as i32 - m) / 2) as u32;
        let states = fixed_popcount_words(chain.len(), k)
            .map(BasisState)
            .filter(|&s| match n_dw {
                Some(d) => chain.domain_wall_count(s).unwrap() == d,
                None => true,
            })
            .collect();
        Self {
            chain: *chain,
            m,
            n_dw,
            states,
        }
    }

    pub fn chain(&self) -> &Chain {
        &self.chain
    }

    pub fn magnetization(&self) -> i32 {
        self.m
    }

    pub fn domain_wall_count(&self) -> Option<u32> {
        self.n_dw
    }

    pub fn states(&self) -> &[BasisState] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Position of a member state inside the ordered block.
    ///
    /// Combinadic ranking makes membership in the fixed-popcount class an
    /// O(L) bit computation; the block itself is a sorted subset of that
    /// class, so the final step is a binary search rather than a hash table
    /// over millions of entries.
    pub fn position_of(&self, s: BasisState) -> Option<usize> {
        self.states.binary_search(&s).ok()
    }
}

fn check_magnetization(chain: &Chain, m: i32) -> Result<()> {
    let l = chain.len() as i32;
    if m.abs() > l || (m - l) % 2 != 0 {
        return Err(Error::InvalidMagnetization { m, l: chain.len() });
    }
    Ok(())
}

fn check_key(chain: &Chain, key: SectorKey) -> Result<()> {
    let inconsistent = Error::InconsistentKey {
        m: key.m,
        n_dw: key.n_dw,
        l: chain.len(),
    };
    if check_magnetization(chain, key.m).is_err() {
        return Err(inconsistent);
    }
    if key.n_dw % 2 != 0 || key.n_dw > chain.len() {
        return Err(inconsistent);
    }
    Ok(())
}

/// All `L`-bit words with exactly `k` ones, ascending (Gosper's hack).
pub(crate) fn fixed_popcount_words(l: u32, k: u32) -> impl Iterator<Item = u32> {
    debug_assert!(k <= l && l <= 32);
    let limit = if l == 32 {
        u64::from(u32::MAX)
    } else {
        (1u64 << l) - 1
    };
    let mut next = if k == 0 { 0u64 } else { (1u64 << k) - 1 };
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let current = next;
        if k == 0 {
            done = true;
        } else {
            let c = current & current.wrapping_neg();
            let r = current + c;
            next = (((r ^ current) >> 2) / c) | r;
            if next > limit {
                done = true;
            }
        }
        Some(current as u32)
    })
}

const BINOMIAL: [[u64; 33]; 33] = {
    let mut t = [[0u64; 33]; 33];
    let mut n = 0;
    while n <= 32 {
        t[n][0] = 1;
        let mut k = 1;
        while k <= n {
            t[n][k] = t[n - 1][k - 1] + if k <= n - 1 { t[n - 1][k] } else { 0 };
            k += 1;
        }
        n += 1;
    }
    t
};

/// Binomial coefficient `C(n, k)` for `n, k <= 32`.
pub fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        0
    } else {
        BINOMIAL[n as usize][k as usize]
    }
}

/// Rank of a word within its fixed-popcount class, ascending numeric order.
///
/// `rank(s) = sum_j C(p_j, j)` over the one-positions `p_1 < p_2 < ...`.
pub fn combinadic_rank(s: BasisState) -> u64 {
    let mut rank = 0u64;
    let mut w = s.0;
    let mut j = 1;
    while w != 0 {
        let p = w.trailing_zeros();
        rank += binomial(p, j);
        j += 1;
        w &= w - 1;
    }
    rank
}

/// Inverse of [`combinadic_rank`]: the `rank`-th `l`-bit word with `k` ones.
pub fn combinadic_unrank(l: u32, k: u32, rank: u64) -> Option<BasisState> {
    if k > l || rank >= binomial(l, k) {
        return None;
    }
    let mut w = 0u32;
    let mut r = rank;
    let mut p = l;
    for j in (1..=k).rev() {
        // Largest position p' < p with C(p', j) <= r.
        while binomial(p - 1, j) > r {
            p -= 1;
        }
        p -= 1;
        r -= binomial(p, j);
        w |= 1 << p;
    }
    Some(BasisState(w))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(l: u32) -> Chain {
        Chain::new(l).unwrap()
    }

    /// Independent move oracle working on per-site byte arrays, written
    /// directly from the bond rule rather than the word arithmetic.
    fn oracle_moves(bits: &[u8]) -> Vec<(usize, Vec<u8>)> {
        let l = bits.len();
        let mut out = Vec::new();
        for i in 0..l {
            let j = (i + 1) % l;
            if bits[i] != bits[j] && bits[(i + l - 1) % l] == bits[(i + 2) % l] {
                let mut next = bits.to_vec();
                next.swap(i, j);
                out.push((i, next));
            }
        }
        out
    }

    fn to_bits(c: &Chain, s: BasisState) -> Vec<u8> {
        (0..c.len()).map(|i| c.site_bit(s, i) as u8).collect()
    }

    #[test]
    fn chain_length_validation() {
        assert!(Chain::new(4).is_ok());
        assert!(Chain::new(32).is_ok());
        assert!(matches!(Chain::new(3), Err(Error::InvalidChainLength(3))));
        assert!(matches!(Chain::new(5), Err(Error::InvalidChainLength(5))));
        assert!(matches!(Chain::new(2), Err(Error::InvalidChainLength(2))));
        assert!(matches!(Chain::new(34), Err(Error::InvalidChainLength(34))));
    }

    #[test]
    fn state_validation() {
        let c = chain(4);
        assert!(c.magnetization(BasisState(0b1111)).is_ok());
        assert!(matches!(
            c.magnetization(BasisState(0b10000)),
            Err(Error::InvalidState { .. })
        ));
    }

    #[test]
    fn parse_and_format_roundtrip() {
        let c = chain(18);
        let s = c.parse_state("110001100111001100").unwrap();
        assert_eq!(c.format_state(s), "110001100111001100");
        assert_eq!(c.site_bit(s, 0), 1);
        assert_eq!(c.site_bit(s, 2), 0);
        assert_eq!(c.site_bit(s, 17), 0);
        assert!(c.parse_state("11000110011100110").is_err());
        assert!(c.parse_state("11000110011100110x").is_err());
    }

    #[test]
    fn magnetization_examples() {
        let c4 = chain(4);
        assert_eq!(c4.magnetization(c4.parse_state("0101").unwrap()).unwrap(), 0);
        assert_eq!(c4.magnetization(c4.parse_state("0000").unwrap()).unwrap(), 4);
        let c18 = chain(18);
        let phi = c18.parse_state("110001100111001100").unwrap();
        assert_eq!(c18.magnetization(phi).unwrap(), 0);
    }

    #[test]
    fn domain_wall_examples() {
        let c = chain(4);
        assert_eq!(c.domain_wall_count(c.parse_state("0101").unwrap()).unwrap(), 4);
        assert_eq!(c.domain_wall_count(c.parse_state("0011").unwrap()).unwrap(), 2);
        assert_eq!(c.domain_wall_count(c.parse_state("0000").unwrap()).unwrap(), 0);
    }

    #[test]
    fn charge_conjugate_examples() {
        let c = chain(4);
        let flip = |t: &str| {
            let s = c.parse_state(t).unwrap();
            c.format_state(c.charge_conjugate(s).unwrap())
        };
        assert_eq!(flip("0011"), "1100");
        assert_eq!(flip("0101"), "1010");
        let c18 = chain(18);
        let phi = c18.parse_state("110001100111001100").unwrap();
        assert_eq!(
            c18.format_state(c18.charge_conjugate(phi).unwrap()),
            "001110011000110011"
        );
    }

    #[test]
    fn translate_examples() {
        let c = chain(4);
        let t = |t: &str, shift: u32| {
            let s = c.parse_state(t).unwrap();
            c.format_state(c.translate(s, shift).unwrap())
        };
        assert_eq!(t("0011", 1), "1001");
        assert_eq!(t("0101", 2), "0101");
        for w in 0..16u32 {
            let s = BasisState(w);
            assert_eq!(c.translate(s, 4).unwrap(), s);
        }
    }

    #[test]
    fn allowed_moves_examples() {
        let c6 = chain(6);
        assert!(c6
            .allowed_moves(c6.parse_state("000111").unwrap())
            .unwrap()
            .is_empty());
        let c4 = chain(4);
        assert!(c4
            .allowed_moves(c4.parse_state("0101").unwrap())
            .unwrap()
            .is_empty());

        let s = c6.parse_state("001101").unwrap();
        let moves = c6.allowed_moves(s).unwrap();
        let rendered: Vec<(u32, String)> = moves
            .iter()
            .map(|&(i, t)| (i, c6.format_state(t)))
            .collect();
        assert_eq!(
            rendered,
            vec![(3, "001011".to_owned()), (5, "101100".to_owned())]
        );
    }

    #[test]
    fn moves_match_site_array_oracle() {
        for l in [4u32, 6, 8, 10] {
            let c = chain(l);
            for w in 0..(1u32 << l) {
                let s = BasisState(w);
                let got: Vec<(usize, Vec<u8>)> = c
                    .allowed_moves(s)
                    .unwrap()
                    .into_iter()
                    .map(|(i, t)| (i as usize, to_bits(&c, t)))
                    .collect();
                assert_eq!(got, oracle_moves(&to_bits(&c, s)), "L={l} w={w:b}");
            }
        }
    }

    #[test]
    fn staggered_sum_of_frozen_reference_state() {
        let c = chain(18);
        let phi = c.parse_state("110001100111001100").unwrap();
        assert_eq!(c.staggered_sum(phi).unwrap().abs(), 2);
        let c4 = chain(4);
        let neel = c4.parse_state("0101").unwrap();
        assert_eq!(c4.staggered_sum(neel).unwrap().abs(), 4);
    }

    #[test]
    fn second_neighbor_zz_by_direct_sum() {
        for l in [4u32, 6, 8] {
            let c = chain(l);
            for w in 0..(1u32 << l) {
                let s = BasisState(w);
                let direct: i32 = (0..l)
                    .map(|i| c.site_z(s, i) * c.site_z(s, (i + 2) % l))
                    .sum();
                assert_eq!(c.second_neighbor_zz(s).unwrap(), direct);
            }
        }
    }

    #[test]
    fn enumerate_block_examples() {
        let c = chain(4);
        let block = SymmetryBlock::enumerate(&c, SectorKey { m: 0, n_dw: 2 }).unwrap();
        let names: Vec<String> = block.states().iter().map(|&s| c.format_state(s)).collect();
        assert_eq!(names, vec!["0011", "0110", "1001", "1100"]);

        let top = SymmetryBlock::enumerate(&c, SectorKey { m: 4, n_dw: 0 }).unwrap();
        assert_eq!(top.states(), &[BasisState(0)]);

        let c24 = chain(24);
        let class = SymmetryBlock::enumerate_magnetization(&c24, 0).unwrap();
        assert_eq!(class.len() as u64, binomial(24, 12));
        assert_eq!(class.len(), 2_704_156);
    }

    #[test]
    fn enumerate_rejects_inconsistent_keys() {
        let c = chain(4);
        assert!(matches!(
            SymmetryBlock::enumerate(&c, SectorKey { m: 1, n_dw: 2 }),
            Err(Error::InconsistentKey { .. })
        ));
        assert!(matches!(
            SymmetryBlock::enumerate(&c, SectorKey { m: 0, n_dw: 3 }),
            Err(Error::InconsistentKey { .. })
        ));
        assert!(matches!(
            SymmetryBlock::enumerate(&c, SectorKey { m: 0, n_dw: 6 }),
            Err(Error::InconsistentKey { .. })
        ));
        assert!(matches!(
            SymmetryBlock::enumerate(&c, SectorKey { m: 6, n_dw: 0 }),
            Err(Error::InconsistentKey { .. })
        ));
    }

    #[test]
    fn blocks_partition_the_hilbert_space() {
        for l in [4u32, 6, 8, 10, 12] {
            let c = chain(l);
            let mut total = 0u64;
            for m in c.magnetization_values() {
                for n_dw in c.domain_wall_values() {
                    total += SymmetryBlock::enumerate(&c, SectorKey { m, n_dw })
                        .unwrap()
                        .len() as u64;
                }
            }
            assert_eq!(total, c.hilbert_dim());
        }
    }

    #[test]
    fn block_members_carry_the_key() {
        let c = chain(8);
        for m in c.magnetization_values() {
            for n_dw in c.domain_wall_values() {
                let key = SectorKey { m, n_dw };
                let block = SymmetryBlock::enumerate(&c, key).unwrap();
                for &s in block.states() {
                    assert_eq!(c.sector_key(s).unwrap(), key);
                }
            }
        }
    }

    #[test]
    fn combinadic_rank_matches_enumeration_order() {
        for l in [4u32, 6, 10, 12] {
            for k in 0..=l {
                for (idx, w) in fixed_popcount_words(l, k).enumerate() {
                    assert_eq!(combinadic_rank(BasisState(w)), idx as u64);
                    assert_eq!(combinadic_unrank(l, k, idx as u64), Some(BasisState(w)));
                }
            }
        }
        assert_eq!(combinadic_unrank(4, 2, 6), None);
    }

    #[test]
    fn fixed_popcount_handles_full_width_words() {
        let all: Vec<u32> = fixed_popcount_words(32, 32).collect();
        assert_eq!(all, vec![u32::MAX]);
        assert_eq!(fixed_popcount_words(32, 31).count(), 32);
        assert_eq!(fixed_popcount_words(32, 1).count(), 32);
    }

    #[test]
    fn position_of_finds_every_member() {
        let c = chain(10);
        let block = SymmetryBlock::enumerate(&c, SectorKey { m: 0, n_dw: 4 }).unwrap();
        for (i, &s) in block.states().iter().enumerate() {
            assert_eq!(block.position_of(s), Some(i));
        }
        assert_eq!(block.position_of(BasisState(0)), None);
    }
}
