//! NK task environment: interdependence structures, contribution tables,
//! solution encodings and exhaustive optimum search.
//!
//! Decisions are indexed from 0 in code (`d_1` is index 0). A [`FullSolution`]
//! is stored as its integer encoding with decision 0 as the most significant
//! of the `n` bits, so each subtask occupies a contiguous bit field and the
//! "lowest encoding" tie rule reads the decision string left to right.

use std::fmt;
use std::io::{self, Write};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{ordered_sum, Scalar};

/// Largest `n` representable by the `u64` solution encoding.
pub const MAX_DECISIONS: usize = 63;

/// Default cap on `n` for [`Landscape::global_optimum`].
pub const DEFAULT_SEARCH_CAP: usize = 24;

/// Which decisions co-determine each decision's contribution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InteractionMatrix {
    n: usize,
    m: usize,
    k: usize,
    depends: Vec<Vec<usize>>,
}

impl InteractionMatrix {
    /// Builds the stylized structure for `n` decisions split into `m`
    /// contiguous blocks of `s = n / m`.
    ///
    /// Decision `i` first depends on the other decisions of its own block in
    /// ascending order, then on the decisions of the cyclically following
    /// blocks, block by block, until `k` dependencies are listed. With
    /// `n = 12, m = 3` this gives the block-diagonal structure for `k = 3`,
    /// the full matrix for `k = 11`, and for `k = 5` the own block plus the
    /// first two decisions of the next block.
    pub fn stylized(n: usize, m: usize, k: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidDimension(format!("n={n}, m={m}")));
        }
        if !n.is_multiple_of(m) {
            return Err(Error::IndivisibleTask { n, m });
        }
        if k > n - 1 {
            return Err(Error::ComplexityTooHigh { n, k });
        }
        if n > MAX_DECISIONS {
            return Err(Error::InvalidDimension(format!(
                "n={n} exceeds {MAX_DECISIONS}"
            )));
        }
        let s = n / m;
        let depends = (0..n)
            .map(|i| {
                let block = i / s;
                let own = (block * s..(block + 1) * s).filter(|&j| j != i);
                let others = (1..m).flat_map(|step| {
                    let b = (block + step) % m;
                    b * s..(b + 1) * s
                });
                own.chain(others).take(k).collect()
            })
            .collect();
        Ok(Self { n, m, k, depends })
    }

    /// Builds a matrix from explicit dependency lists.
    pub fn from_dependencies(m: usize, depends: Vec<Vec<usize>>) -> Result<Self> {
        let n = depends.len();
        if n == 0 || m == 0 || n > MAX_DECISIONS {
            return Err(Error::InvalidDimension(format!("n={n}, m={m}")));
        }
        if !n.is_multiple_of(m) {
            return Err(Error::IndivisibleTask { n, m });
        }
        let k = depends[0].len();
        if k > n - 1 {
            return Err(Error::ComplexityTooHigh { n, k });
        }
        for (i, row) in depends.iter().enumerate() {
            if row.len() != k {
                return Err(Error::InvalidDimension(format!(
                    "row {i} lists {} dependencies, expected {k}",
                    row.len()
                )));
            }
            let mut seen = vec![false; n];
            for &j in row {
                if j >= n {
                    return Err(Error::DecisionOutOfRange { index: j, n });
                }
                if j == i || seen[j] {
                    return Err(Error::InvalidDimension(format!(
                        "row {i} lists {j} twice or depends on itself"
                    )));
                }
                seen[j] = true;
            }
        }
        Ok(Self { n, m, k, depends })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Decisions per subtask.
    pub fn s(&self) -> usize {
        self.n / self.m
    }

    pub fn depends(&self, i: usize) -> &[usize] {
        &self.depends[i]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.depends
    }
}

/// A complete assignment of all `n` binary decisions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FullSolution {
    n: u8,
    code: u64,
}

impl FullSolution {
    pub fn zeros(n: usize) -> Self {
        Self::from_encoding(n, 0)
    }

    /// Panics if `code` has bits above `n`.
    pub fn from_encoding(n: usize, code: u64) -> Self {
        assert!(n <= MAX_DECISIONS, "n={n} too large");
        assert!(code >> n == 0, "encoding {code:#x} wider than {n} bits");
        Self { n: n as u8, code }
    }

    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        if bits.len() > MAX_DECISIONS {
            return Err(Error::InvalidDimension(format!("{} bits", bits.len())));
        }
        let mut code = 0u64;
        for &b in bits {
            if b > 1 {
                return Err(Error::InvalidDimension(format!("bit value {b}")));
            }
            code = (code << 1) | u64::from(b);
        }
        Ok(Self::from_encoding(bits.len(), code))
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let code = if n == 0 { 0 } else { rng.random::<u64>() >> (64 - n) };
        Self::from_encoding(n, code)
    }

    /// Concatenates one sub-solution per slot, in slot order.
    pub fn concat(parts: &[SubSolution]) -> Result<Self> {
        let mut code = 0u64;
        let mut n = 0usize;
        for (slot, part) in parts.iter().enumerate() {
            if part.slot != slot {
                return Err(Error::SlotOutOfRange {
                    slot: part.slot,
                    m: parts.len(),
                });
            }
            code = (code << part.width) | u64::from(part.code);
            n += part.width as usize;
        }
        if n > MAX_DECISIONS {
            return Err(Error::InvalidDimension(format!("n={n}")));
        }
        Ok(Self::from_encoding(n, code))
    }

    pub fn len(&self) -> usize {
        self.n as usize
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn encoding(&self) -> u64 {
        self.code
    }

    #[inline]
    pub fn get(&self, i: usize) -> u8 {
        ((self.code >> (self.len() - 1 - i)) & 1) as u8
    }

    pub fn flipped(&self, i: usize) -> Self {
        Self::from_encoding(self.len(), self.code ^ (1u64 << (self.len() - 1 - i)))
    }

    pub fn bits(&self) -> Vec<u8> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }

    /// The `s` decisions of `slot`.
    pub fn sub(&self, slot: usize, s: usize) -> SubSolution {
        let m = self.len() / s;
        let shift = (m - 1 - slot) * s;
        let code = ((self.code >> shift) & mask(s)) as u32;
        SubSolution::new(slot, s, code)
    }

    /// Replaces the decisions of `part.slot` with `part`.
    pub fn with_sub(&self, part: SubSolution) -> Self {
        let s = part.width as usize;
        let m = self.len() / s;
        let shift = (m - 1 - part.slot) * s;
        let cleared = self.code & !(mask(s) << shift);
        Self::from_encoding(self.len(), cleared | (u64::from(part.code) << shift))
    }
}

impl fmt::Display for FullSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            write!(f, "{}", self.get(i))?;
        }
        Ok(())
    }
}

#[inline]
fn mask(width: usize) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

/// The `s` decisions of one subtask slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SubSolution {
    slot: usize,
    width: u8,
    code: u32,
}

impl SubSolution {
    /// Panics if `code` does not fit in `width` bits or `width > 31`.
    pub fn new(slot: usize, width: usize, code: u32) -> Self {
        assert!(width <= 31, "subtask width {width} too large");
        assert!(u64::from(code) >> width == 0, "code {code} wider than {width} bits");
        Self {
            slot,
            width: width as u8,
            code,
        }
    }

    pub fn from_bits(slot: usize, bits: &[u8]) -> Result<Self> {
        let full = FullSolution::from_bits(bits)?;
        if bits.len() > 31 {
            return Err(Error::InvalidDimension(format!("{} bits", bits.len())));
        }
        Ok(Self::new(slot, bits.len(), full.code as u32))
    }

    pub fn slot(&self) -> usize {
        self.slot
    }

    pub fn len(&self) -> usize {
        self.width as usize
    }

    pub fn is_empty(&self) -> bool {
        self.width == 0
    }

    pub fn encoding(&self) -> u32 {
        self.code
    }

    pub fn get(&self, i: usize) -> u8 {
        ((self.code >> (self.len() - 1 - i)) & 1) as u8
    }

    pub fn flipped(&self, i: usize) -> Self {
        Self::new(self.slot, self.len(), self.code ^ (1 << (self.len() - 1 - i)))
    }

    pub fn bits(&self) -> Vec<u8> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }
}

impl fmt::Display for SubSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            write!(f, "{}", self.get(i))?;
        }
        Ok(())
    }
}

/// Slot-level evaluation of full solutions.
///
/// [`Landscape`] computes values from the contribution tables directly;
/// [`TabulatedLandscape`] looks them up. Both give bit-identical results.
pub trait Evaluate<T: Scalar> {
    fn n(&self) -> usize;
    fn m(&self) -> usize;

    /// Sum of the slot's contributions under `d`, in ascending decision order.
    fn slot_sum(&self, d: &FullSolution, slot: usize) -> T;

    fn s(&self) -> usize {
        self.n() / self.m()
    }

    #[inline]
    fn slot_performance(&self, d: &FullSolution, slot: usize) -> T {
        self.slot_sum(d, slot) / T::from_count(self.s())
    }

    /// Team performance: slot sums added in slot order, divided by `n`.
    #[inline]
    fn team_value(&self, d: &FullSolution) -> T {
        let total = ordered_sum((0..self.m()).map(|slot| self.slot_sum(d, slot)));
        total / T::from_count(self.n())
    }
}

fn exhaustive_optimum<T: Scalar, E: Evaluate<T> + ?Sized>(eval: &E) -> (FullSolution, T) {
    let n = eval.n();
    let mut best = FullSolution::zeros(n);
    let mut best_value = eval.team_value(&best);
    for code in 1..(1u64 << n) {
        let d = FullSolution::from_encoding(n, code);
        let v = eval.team_value(&d);
        if v > best_value {
            best = d;
            best_value = v;
        }
    }
    (best, best_value)
}

/// Contribution tables over an interaction matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Landscape<T> {
    matrix: InteractionMatrix,
    tables: Vec<Vec<T>>,
    // Bit shifts into the solution encoding for (own, deps...), per decision.
    shifts: Vec<Vec<u8>>,
}

impl<T: Scalar> Landscape<T> {
    /// Draws `2^(k+1)` uniform values per decision. The stream is consumed
    /// decision-major, table index ascending.
    pub fn generate<R: Rng + ?Sized>(matrix: InteractionMatrix, rng: &mut R) -> Self {
        let rows = 1usize << (matrix.k + 1);
        let tables = (0..matrix.n)
            .map(|_| (0..rows).map(|_| T::sample_unit(rng)).collect())
            .collect();
        Self::assemble(matrix, tables)
    }

    /// Wraps explicit tables; each must hold `2^(k+1)` values in `[0, 1]`.
    pub fn from_tables(matrix: InteractionMatrix, tables: Vec<Vec<T>>) -> Result<Self> {
        if tables.len() != matrix.n {
            return Err(Error::LengthMismatch {
                expected: matrix.n,
                got: tables.len(),
            });
        }
        let rows = 1usize << (matrix.k + 1);
        for table in &tables {
            if table.len() != rows {
                return Err(Error::LengthMismatch {
                    expected: rows,
                    got: table.len(),
                });
            }
            if let Some(v) = table.iter().find(|v| !(**v >= T::zero() && **v <= T::one())) {
                return Err(Error::InvalidDimension(format!(
                    "contribution {v} outside [0, 1]"
                )));
            }
        }
        Ok(Self::assemble(matrix, tables))
    }

    /// Every entry of every table equal to `value`.
    pub fn constant(matrix: InteractionMatrix, value: T) -> Result<Self> {
        let rows = 1usize << (matrix.k + 1);
        let tables = vec![vec![value; rows]; matrix.n];
        Self::from_tables(matrix, tables)
    }

    fn assemble(matrix: InteractionMatrix, tables: Vec<Vec<T>>) -> Self {
        let n = matrix.n;
        let shifts = (0..n)
            .map(|i| {
                std::iter::once(i)
                    .chain(matrix.depends[i].iter().copied())
                    .map(|j| (n - 1 - j) as u8)
                    .collect()
            })
            .collect();
        Self {
            matrix,
            tables,
            shifts,
        }
    }

    pub fn matrix(&self) -> &InteractionMatrix {
        &self.matrix
    }

    pub fn tables(&self) -> &[Vec<T>] {
        &self.tables
    }

    pub fn n(&self) -> usize {
        self.matrix.n
    }

    pub fn m(&self) -> usize {
        self.matrix.m
    }

    pub fn s(&self) -> usize {
        self.matrix.s()
    }

    /// Table row for decision `i`: the bits `(d_i, d_deps...)` read
    /// most-significant first.
    #[inline]
    pub fn table_index(&self, i: usize, d: &FullSolution) -> usize {
        let code = d.encoding();
        self.shifts[i]
            .iter()
            .fold(0usize, |idx, &sh| (idx << 1) | ((code >> sh) & 1) as usize)
    }

    pub fn contribution(&self, i: usize, d: &FullSolution) -> Result<T> {
        if i >= self.n() {
            return Err(Error::DecisionOutOfRange {
                index: i,
                n: self.n(),
            });
        }
        self.check_len(d)?;
        Ok(self.contribution_unchecked(i, d))
    }

    #[inline]
    pub(crate) fn contribution_unchecked(&self, i: usize, d: &FullSolution) -> T {
        self.tables[i][self.table_index(i, d)]
    }

    fn check_len(&self, d: &FullSolution) -> Result<()> {
        if d.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                got: d.len(),
            });
        }
        Ok(())
    }

    /// Mean contribution of the slot's decisions, in the context of `d`.
    pub fn agent_performance(&self, d: &FullSolution, slot: usize) -> Result<T> {
        self.check_len(d)?;
        if slot >= self.m() {
            return Err(Error::SlotOutOfRange { slot, m: self.m() });
        }
        Ok(self.slot_performance(d, slot))
    }

    /// All `m` slot performances of `d`.
    pub fn slot_performances(&self, d: &FullSolution) -> Vec<T> {
        (0..self.m()).map(|slot| self.slot_performance(d, slot)).collect()
    }

    /// Mean of all `n` contributions, summed slot-major.
    pub fn team_performance(&self, d: &FullSolution) -> Result<T> {
        self.check_len(d)?;
        Ok(self.team_value(d))
    }

    /// Exact maximum of team performance over all `2^n` solutions, with
    /// ties going to the lowest encoding.
    pub fn global_optimum(&self) -> Result<(FullSolution, T)> {
        self.global_optimum_capped(DEFAULT_SEARCH_CAP)
    }

    pub fn global_optimum_capped(&self, cap: usize) -> Result<(FullSolution, T)> {
        let n = self.n();
        if n > cap {
            return Err(Error::SearchTooLarge { n, cap });
        }
        Ok(exhaustive_optimum(self))
    }

    /// Multiplies every contribution by `factor`; the result must stay in `[0, 1]`.
    pub fn scaled(&self, factor: T) -> Result<Self> {
        let tables = self
            .tables
            .iter()
            .map(|t| t.iter().map(|&v| v * factor).collect())
            .collect();
        Self::from_tables(self.matrix.clone(), tables)
    }

    /// CSV dump, one record per decision: 1-based decision index,
    /// `;`-separated 1-based dependencies, then the table values.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        let rows = 1usize << (self.matrix.k + 1);
        write!(out, "decision,depends")?;
        for r in 0..rows {
            write!(out, ",f{r}")?;
        }
        writeln!(out)?;
        for (i, table) in self.tables.iter().enumerate() {
            let deps: Vec<String> = self.matrix.depends[i]
                .iter()
                .map(|j| (j + 1).to_string())
                .collect();
            write!(out, "{},{}", i + 1, deps.join(";"))?;
            for v in table {
                write!(out, ",{v}")?;
            }
            writeln!(out)?;
        }
        Ok(())
    }
}

impl<T: Scalar> Evaluate<T> for Landscape<T> {
    fn n(&self) -> usize {
        self.matrix.n
    }

    fn m(&self) -> usize {
        self.matrix.m
    }

    #[inline]
    fn slot_sum(&self, d: &FullSolution, slot: usize) -> T {
        let s = self.matrix.s();
        ordered_sum((slot * s..(slot + 1) * s).map(|i| self.contribution_unchecked(i, d)))
    }
}

/// Largest `n` for which [`TabulatedLandscape`] builds a table; above it
/// values are computed directly.
pub const MAX_TABULATED: usize = 20;

/// A landscape with the slot sums of all `2^n` solutions precomputed.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedLandscape<T> {
    landscape: Landscape<T>,
    // Indexed by `code * m + slot`; empty when `n > MAX_TABULATED`.
    sums: Vec<T>,
}

impl<T: Scalar> TabulatedLandscape<T> {
    pub fn new(landscape: Landscape<T>) -> Self {
        let n = landscape.n();
        let m = landscape.m();
        let mut sums = Vec::new();
        if n <= MAX_TABULATED {
            // Per decision and per byte of the encoding, the table-index bits
            // that byte contributes. Three bytes cover MAX_TABULATED.
            let partial: Vec<[[u32; 256]; 3]> = (0..n)
                .map(|i| {
                    let shifts = &landscape.shifts[i];
                    let width = shifts.len();
                    let mut chunks = [[0u32; 256]; 3];
                    for (b, chunk) in chunks.iter_mut().enumerate() {
                        for (v, entry) in chunk.iter_mut().enumerate() {
                            let code = (v as u64) << (8 * b);
                            *entry = shifts.iter().enumerate().fold(0u32, |idx, (pos, &sh)| {
                                idx | ((((code >> sh) & 1) as u32) << (width - 1 - pos))
                            });
                        }
                    }
                    chunks
                })
                .collect();
            let s = landscape.s();
            let size = 1usize << n;
            sums = vec![T::zero(); size * m];
            for slot in 0..m {
                for i in slot * s..(slot + 1) * s {
                    let table = &landscape.tables[i];
                    let [c0, c1, c2] = &partial[i];
                    for code in 0..size {
                        let idx = c0[code & 0xff] | c1[(code >> 8) & 0xff] | c2[(code >> 16) & 0xff];
                        let sum = &mut sums[code * m + slot];
                        *sum = *sum + table[idx as usize];
                    }
                }
            }
        }
        Self { landscape, sums }
    }

    pub fn landscape(&self) -> &Landscape<T> {
        &self.landscape
    }

    pub fn into_inner(self) -> Landscape<T> {
        self.landscape
    }

    /// Same result as [`Landscape::global_optimum_capped`].
    pub fn global_optimum_capped(&self, cap: usize) -> Result<(FullSolution, T)> {
        let n = self.landscape.n();
        if n > cap {
            return Err(Error::SearchTooLarge { n, cap });
        }
        Ok(exhaustive_optimum(self))
    }
}

impl<T: Scalar> Evaluate<T> for TabulatedLandscape<T> {
    fn n(&self) -> usize {
        self.landscape.n()
    }

    fn m(&self) -> usize {
        self.landscape.m()
    }

    #[inline]
    fn slot_sum(&self, d: &FullSolution, slot: usize) -> T {
        if self.sums.is_empty() {
            return self.landscape.slot_sum(d, slot);
        }
        self.sums[d.encoding() as usize * self.landscape.m() + slot]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn one_based(m: &InteractionMatrix, i: usize) -> Vec<usize> {
        m.depends(i - 1).iter().map(|j| j + 1).collect()
    }

    #[test]
    fn full_interdependence() {
        let m = InteractionMatrix::stylized(12, 3, 11).unwrap();
        for i in 0..12 {
            let mut row = m.depends(i).to_vec();
            row.sort_unstable();
            let expected: Vec<usize> = (0..12).filter(|&j| j != i).collect();
            assert_eq!(row, expected);
        }
    }

    #[test]
    fn block_diagonal() {
        let m = InteractionMatrix::stylized(12, 3, 3).unwrap();
        assert_eq!(one_based(&m, 1), vec![2, 3, 4]);
        assert_eq!(one_based(&m, 5), vec![6, 7, 8]);
        assert_eq!(one_based(&m, 12), vec![9, 10, 11]);
    }

    #[test]
    fn cyclic_overlap() {
        let m = InteractionMatrix::stylized(12, 3, 5).unwrap();
        assert_eq!(one_based(&m, 1), vec![2, 3, 4, 5, 6]);
        assert_eq!(one_based(&m, 7), vec![5, 6, 8, 9, 10]);
        assert_eq!(one_based(&m, 12), vec![9, 10, 11, 1, 2]);
    }

    #[test]
    fn matrix_rejects_bad_shapes() {
        assert_eq!(
            InteractionMatrix::stylized(12, 5, 3),
            Err(Error::IndivisibleTask { n: 12, m: 5 })
        );
        assert_eq!(
            InteractionMatrix::stylized(12, 3, 12),
            Err(Error::ComplexityTooHigh { n: 12, k: 12 })
        );
        assert!(InteractionMatrix::from_dependencies(2, vec![vec![0], vec![0]]).is_err());
        assert!(InteractionMatrix::from_dependencies(2, vec![vec![1], vec![]]).is_err());
    }

    #[test]
    fn stylized_rows_are_valid() {
        for k in 0..12 {
            let m = InteractionMatrix::stylized(12, 3, k).unwrap();
            InteractionMatrix::from_dependencies(3, m.rows().to_vec()).unwrap();
            assert_eq!(m, InteractionMatrix::stylized(12, 3, k).unwrap());
        }
    }

    #[test]
    fn table_sizes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let l = Landscape::<f64>::generate(InteractionMatrix::stylized(2, 1, 0).unwrap(), &mut rng);
        assert_eq!(l.tables().len(), 2);
        assert!(l.tables().iter().all(|t| t.len() == 2));
        let l = Landscape::<f64>::generate(InteractionMatrix::stylized(12, 3, 11).unwrap(), &mut rng);
        assert_eq!(l.tables().len(), 12);
        assert!(l.tables().iter().all(|t| t.len() == 4096));
        assert!(l.tables().iter().flatten().all(|&v| (0.0..1.0).contains(&v)));
    }

    #[test]
    fn generation_is_seeded() {
        let m = InteractionMatrix::stylized(12, 3, 5).unwrap();
        let a = Landscape::<f64>::generate(m.clone(), &mut ChaCha8Rng::seed_from_u64(9));
        let b = Landscape::<f64>::generate(m.clone(), &mut ChaCha8Rng::seed_from_u64(9));
        let c = Landscape::<f64>::generate(m, &mut ChaCha8Rng::seed_from_u64(10));
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn zeros_read_first_row() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let l = Landscape::<f64>::generate(InteractionMatrix::stylized(12, 3, 5).unwrap(), &mut rng);
        let d = FullSolution::zeros(12);
        for i in 0..12 {
            assert_eq!(l.contribution(i, &d).unwrap(), l.tables()[i][0]);
        }
    }

    #[test]
    fn separable_contribution_ignores_other_bits() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let l = Landscape::<f64>::generate(InteractionMatrix::stylized(12, 3, 0).unwrap(), &mut rng);
        let d = FullSolution::random(12, &mut rng);
        for i in 0..12 {
            for j in (0..12).filter(|&j| j != i) {
                assert_eq!(
                    l.contribution(i, &d).unwrap(),
                    l.contribution(i, &d.flipped(j)).unwrap()
                );
            }
        }
    }

    #[test]
    fn table_index_follows_own_bit_then_dependencies() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let l = Landscape::<f64>::generate(InteractionMatrix::stylized(12, 3, 5).unwrap(), &mut rng);
        // d_12 depends on (9, 10, 11, 1, 2); set d_12, d_10 and d_2.
        let d = FullSolution::from_bits(&[0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1]).unwrap();
        assert_eq!(l.table_index(11, &d), 0b1_010_01);
    }

    #[test]
    fn contribution_out_of_range() {
        let l = Landscape::<f64>::constant(InteractionMatrix::stylized(4, 2, 1).unwrap(), 0.5).unwrap();
        assert!(matches!(
            l.contribution(4, &FullSolution::zeros(4)),
            Err(Error::DecisionOutOfRange { index: 4, n: 4 })
        ));
        assert!(l.contribution(0, &FullSolution::zeros(5)).is_err());
    }

    #[test]
    fn agent_and_team_means() {
        // k = 0 with entry f[i][b] chosen so slot 0 contributions are 0.2..0.8.
        let m = InteractionMatrix::stylized(12, 3, 0).unwrap();
        let per_slot = [[0.2, 0.4, 0.6, 0.8], [0.3; 4], [0.7; 4]];
        let tables = (0..12).map(|i| vec![per_slot[i / 4][i % 4]; 2]).collect();
        let l = Landscape::<f64>::from_tables(m, tables).unwrap();
        let d = FullSolution::zeros(12);
        assert!((l.agent_performance(&d, 0).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(l.agent_performance(&d, 1).unwrap(), 0.3);
        assert!((l.team_performance(&d).unwrap() - 0.5).abs() < 1e-15);
        assert!(l.agent_performance(&d, 3).is_err());

        let ones = Landscape::<f64>::constant(InteractionMatrix::stylized(12, 3, 3).unwrap(), 1.0).unwrap();
        assert_eq!(ones.team_performance(&d).unwrap(), 1.0);
    }

    #[test]
    fn constant_landscape_optimum_is_zero_encoding() {
        let l = Landscape::<f64>::constant(InteractionMatrix::stylized(12, 3, 5).unwrap(), 0.25).unwrap();
        let (d, v) = l.global_optimum().unwrap();
        assert_eq!(d.encoding(), 0);
        assert_eq!(v, 0.25);
    }

    #[test]
    fn separable_optimum_is_bitwise() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let l = Landscape::<f64>::generate(InteractionMatrix::stylized(12, 3, 0).unwrap(), &mut rng);
        let (d, _) = l.global_optimum().unwrap();
        for i in 0..12 {
            let t = &l.tables()[i];
            let want = if t[1] > t[0] { 1 } else { 0 };
            assert_eq!(d.get(i), want);
        }
    }

    #[test]
    fn search_cap() {
        let l = Landscape::<f32>::constant(InteractionMatrix::stylized(12, 3, 0).unwrap(), 0.5).unwrap();
        assert_eq!(
            l.global_optimum_capped(10),
            Err(Error::SearchTooLarge { n: 12, cap: 10 })
        );
    }

    #[test]
    fn solution_slots_round_trip() {
        let d = FullSolution::from_bits(&[1, 0, 0, 1, 1, 1, 0, 0, 0, 0, 1, 0]).unwrap();
        let parts: Vec<_> = (0..3).map(|m| d.sub(m, 4)).collect();
        assert_eq!(parts[0].bits(), vec![1, 0, 0, 1]);
        assert_eq!(parts[2].bits(), vec![0, 0, 1, 0]);
        assert_eq!(FullSolution::concat(&parts).unwrap(), d);
        let replaced = d.with_sub(SubSolution::from_bits(1, &[0, 1, 0, 1]).unwrap());
        assert_eq!(replaced.to_string(), "100101010010");
        assert_eq!(d.to_string(), "100111000010");
    }

    #[test]
    fn csv_dump() {
        let l = Landscape::<f64>::constant(InteractionMatrix::stylized(4, 2, 1).unwrap(), 0.5).unwrap();
        let mut buf = Vec::new();
        l.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "decision,depends,f0,f1,f2,f3");
        assert_eq!(lines[1], "1,2,0.5,0.5,0.5,0.5");
        assert_eq!(lines[4], "4,3,0.5,0.5,0.5,0.5");
    }

    #[test]
    fn tabulated_matches_direct() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for k in [0, 3, 5, 11] {
            let l = Landscape::<f64>::generate(InteractionMatrix::stylized(12, 3, k).unwrap(), &mut rng);
            let tab = TabulatedLandscape::new(l.clone());
            for _ in 0..200 {
                let d = FullSolution::random(12, &mut rng);
                for slot in 0..3 {
                    assert_eq!(tab.slot_sum(&d, slot).to_bits(), Evaluate::slot_sum(&l, &d, slot).to_bits());
                }
                assert_eq!(tab.team_value(&d).to_bits(), l.team_value(&d).to_bits());
            }
            assert_eq!(tab.global_optimum_capped(24).unwrap(), l.global_optimum().unwrap());
        }
    }
}
