//! Streamed linear permutations over GF(2).
//!
//! An invertible bit matrix `P` permutes `0..2^(m+n)` by acting on the
//! binary digits of each index (most significant digit on top). When the
//! data streams through `2^n` ports over `2^m` cycles, the upper `m` digits
//! of an index are its cycle and the lower `n` its port. A factorization
//! `P = ((I 0) (L C1)) · ((C4 C3) (0 I)) · ((I 0) (R I))` then reads as a
//! circuit: a switching network acting within each cycle, an array of `2^n`
//! RAM banks acting within each port, and another switching network.

use std::collections::HashSet;

use crate::decompose::{decompose_optimal, to_deco4, BlockedMatrix};
use crate::error::{Error, Result};
use crate::field::Gf2;
use crate::linalg::{is_invertible, rank};
use crate::matrix::Matrix;

/// Widest index space handled by the table-based routines.
pub const MAX_WIDTH: usize = 24;

/// Binary digits of an index, most significant first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitVector {
    bits: Vec<bool>,
}

impl BitVector {
    pub fn width(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn to_column(&self) -> Matrix<Gf2> {
        Matrix::from_fn(Gf2, self.width(), 1, |i, _| self.bits[i])
    }
}

pub fn to_bits(i: u64, width: usize) -> Result<BitVector> {
    if width > 63 || i >> width != 0 {
        return Err(Error::OutOfRange { value: i, width });
    }
    Ok(BitVector {
        bits: (0..width).map(|k| i >> (width - 1 - k) & 1 == 1).collect(),
    })
}

pub fn from_bits(b: &BitVector) -> u64 {
    b.bits.iter().fold(0, |acc, &x| acc << 1 | x as u64)
}

/// `(cycle, port)` of index `i`: its upper `m` and lower `n` digits.
pub fn stream_coords(i: u64, m: usize, n: usize) -> Result<(u64, u64)> {
    if m + n > 63 || i >> (m + n) != 0 {
        return Err(Error::OutOfRange { value: i, width: m + n });
    }
    Ok((i >> n, i & ((1 << n) - 1)))
}

pub fn stream_index(cycle: u64, port: u64, n: usize) -> u64 {
    cycle << n | port
}

/// A permutation of `0..size`, `mapping[i]` being the image of `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationTable {
    mapping: Vec<usize>,
}

impl PermutationTable {
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; mapping.len()];
        for &j in &mapping {
            if j >= mapping.len() || std::mem::replace(&mut seen[j], true) {
                return Err(Error::Precondition("table is not a permutation".into()));
            }
        }
        Ok(PermutationTable { mapping })
    }

    pub fn identity(size: usize) -> Self {
        PermutationTable {
            mapping: (0..size).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.mapping.len()
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn apply(&self, i: usize) -> usize {
        self.mapping[i]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.size(), other.size(), "composing permutations of different sizes");
        PermutationTable {
            mapping: other.mapping.iter().map(|&i| self.mapping[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.size()];
        for (i, &j) in self.mapping.iter().enumerate() {
            inv[j] = i;
        }
        PermutationTable { mapping: inv }
    }
}

/// A GF(2) block packed by columns for fast matrix-vector products on
/// integers carrying digits most significant first.
struct PackedBlock {
    cols: Vec<u64>,
}

impl PackedBlock {
    fn new(b: &Matrix<Gf2>) -> Self {
        let rows = b.rows();
        let cols = (0..b.cols())
            .map(|j| (0..rows).fold(0u64, |acc, i| acc | (*b.get(i, j) as u64) << (rows - 1 - i)))
            .collect();
        PackedBlock { cols }
    }

    fn apply(&self, x: u64) -> u64 {
        let w = self.cols.len();
        self.cols
            .iter()
            .enumerate()
            .filter(|(j, _)| x >> (w - 1 - j) & 1 == 1)
            .fold(0, |acc, (_, c)| acc ^ c)
    }
}

/// `π(P)`: maps `i` to `j` with `j_b = P · i_b`.
pub fn apply_linear_perm(p: &Matrix<Gf2>) -> Result<PermutationTable> {
    if !p.is_square() {
        return Err(Error::NotSquare(p.rows(), p.cols()));
    }
    if p.rows() > MAX_WIDTH {
        return Err(Error::TooLarge(format!("2^{} points", p.rows())));
    }
    if !is_invertible(p) {
        return Err(Error::SingularMatrix);
    }
    let packed = PackedBlock::new(p);
    Ok(PermutationTable {
        mapping: (0..1u64 << p.rows()).map(|i| packed.apply(i) as usize).collect(),
    })
}

/// The matrix `P` with `π(P) = perm`, read off the images of the unit
/// indices and then checked on every point.
pub fn recover_matrix(perm: &PermutationTable) -> Result<Matrix<Gf2>> {
    let size = perm.size();
    if !size.is_power_of_two() {
        return Err(Error::NotLinear(format!("size {size} is not a power of two")));
    }
    let k = size.trailing_zeros() as usize;
    if k > MAX_WIDTH {
        return Err(Error::TooLarge(format!("2^{k} points")));
    }
    if perm.apply(0) != 0 {
        return Err(Error::NotLinear("0 is not a fixed point".into()));
    }
    let p = Matrix::from_fn(Gf2, k, k, |i, j| perm.apply(1 << (k - 1 - j)) >> (k - 1 - i) & 1 == 1);
    let packed = PackedBlock::new(&p);
    if let Some(i) = (0..size).find(|&i| packed.apply(i as u64) as usize != perm.apply(i)) {
        return Err(Error::NotLinear(format!("index {i} breaks linearity")));
    }
    Ok(p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StreamElement {
    /// Original index of the element.
    pub value: u64,
    pub cycle: u64,
    pub port: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StageKind {
    /// Switching network: permutes ports within each cycle.
    Switch,
    /// RAM bank array: permutes cycles within each port.
    Ram,
}

/// Switches in a network whose port block has the given rank.
pub fn switch_count(port_rank: usize, n: usize) -> u64 {
    if n == 0 {
        0
    } else {
        port_rank as u64 * (1u64 << (n - 1))
    }
}

/// Three-stage architecture in dataflow order: `pre_stage` acts first.
#[derive(Clone, Debug, PartialEq)]
pub struct CircuitSpec {
    pub m: usize,
    pub n: usize,
    /// `((I 0) (R I))`
    pub pre_stage: Matrix<Gf2>,
    /// `((C4 C3) (0 I))`
    pub ram_stage: Matrix<Gf2>,
    /// `((I 0) (L C1))`
    pub post_stage: Matrix<Gf2>,
    pub pre_switches: u64,
    pub post_switches: u64,
    pub ram_banks: u64,
}

fn check_stage(kind: StageKind, s: &Matrix<Gf2>, m: usize, n: usize) -> Result<()> {
    let k = m + n;
    if s.shape() != (k, k) {
        return Err(Error::StageNotStreamable(format!(
            "stage is {:?}, expected {k}x{k}",
            s.shape()
        )));
    }
    match kind {
        StageKind::Switch => {
            if !s.block(0, 0, m, m).is_identity() || !s.block(0, m, m, n).is_zero() {
                return Err(Error::StageNotStreamable(
                    "switch stage moves data across cycles".into(),
                ));
            }
        }
        StageKind::Ram => {
            if !s.block(m, 0, n, m).is_zero() || !s.block(m, m, n, n).is_identity() {
                return Err(Error::StageNotStreamable("RAM stage moves data across ports".into()));
            }
        }
    }
    if !is_invertible(s) {
        return Err(Error::StageNotStreamable("stage is not invertible".into()));
    }
    Ok(())
}

impl CircuitSpec {
    /// Validates stage structure and derives the resource counts.
    pub fn from_stages(m: usize, n: usize, pre: Matrix<Gf2>, ram: Matrix<Gf2>, post: Matrix<Gf2>) -> Result<Self> {
        check_stage(StageKind::Switch, &pre, m, n)?;
        check_stage(StageKind::Ram, &ram, m, n)?;
        check_stage(StageKind::Switch, &post, m, n)?;
        Ok(CircuitSpec {
            m,
            n,
            pre_switches: switch_count(rank(&pre.block(m, 0, n, m)), n),
            post_switches: switch_count(rank(&post.block(m, 0, n, m)), n),
            ram_banks: 1 << n,
            pre_stage: pre,
            ram_stage: ram,
            post_stage: post,
        })
    }

    pub fn total_switches(&self) -> u64 {
        self.pre_switches + self.post_switches
    }

    /// `post · ram · pre`, which equals the synthesized `P`.
    pub fn product(&self) -> Matrix<Gf2> {
        self.post_stage
            .mul(&self.ram_stage)
            .and_then(|x| x.mul(&self.pre_stage))
            .expect("stages share a shape")
    }

    pub fn stages(&self) -> [(StageKind, &Matrix<Gf2>); 3] {
        [
            (StageKind::Switch, &self.pre_stage),
            (StageKind::Ram, &self.ram_stage),
            (StageKind::Switch, &self.post_stage),
        ]
    }
}

/// Minimal-switch circuit from the optimal factorization of `bm`.
pub fn synthesize_circuit(bm: &BlockedMatrix<Gf2>) -> Result<CircuitSpec> {
    let d = to_deco4(&decompose_optimal(bm)?);
    CircuitSpec::from_stages(bm.m(), bm.n(), d.right, d.middle, d.left)
}

fn stage_step(kind: StageKind, s: &Matrix<Gf2>, m: usize, n: usize) -> impl Fn(StreamElement) -> StreamElement {
    let (upper, lower) = match kind {
        StageKind::Switch => (
            PackedBlock::new(&s.block(m, 0, n, m)),
            PackedBlock::new(&s.block(m, m, n, n)),
        ),
        StageKind::Ram => (
            PackedBlock::new(&s.block(0, 0, m, m)),
            PackedBlock::new(&s.block(0, m, m, n)),
        ),
    };
    move |e| match kind {
        StageKind::Switch => StreamElement {
            port: upper.apply(e.cycle) ^ lower.apply(e.port),
            ..e
        },
        StageKind::Ram => StreamElement {
            cycle: upper.apply(e.cycle) ^ lower.apply(e.port),
            ..e
        },
    }
}

/// Streams every index through the three stages and returns where each
/// one ends up. Port stages only rewrite ports, the RAM stage only cycles.
pub fn simulate_stream(spec: &CircuitSpec) -> Result<PermutationTable> {
    let (m, n) = (spec.m, spec.n);
    if m + n > MAX_WIDTH {
        return Err(Error::TooLarge(format!("2^{} points", m + n)));
    }
    let mut tokens: Vec<StreamElement> = (0..1u64 << (m + n))
        .map(|i| StreamElement {
            value: i,
            cycle: i >> n,
            port: i & ((1 << n) - 1),
        })
        .collect();
    for (kind, s) in spec.stages() {
        check_stage(kind, s, m, n)?;
        let step = stage_step(kind, s, m, n);
        tokens.iter_mut().for_each(|t| *t = step(*t));
        let mut slots = HashSet::with_capacity(tokens.len());
        if !tokens.iter().all(|t| slots.insert((t.cycle, t.port))) {
            return Err(Error::StageNotStreamable("two elements collide in one slot".into()));
        }
    }
    let mut mapping = vec![0; tokens.len()];
    for t in tokens {
        mapping[t.value as usize] = stream_index(t.cycle, t.port, n) as usize;
    }
    PermutationTable::new(mapping)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RamAccess {
    pub write_cycle: u64,
    /// Bank address; the element is stored at its write cycle.
    pub address: u64,
    /// Output cycle within the frame, before the common latency.
    pub read_cycle: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PortSchedule {
    pub port: u64,
    pub accesses: Vec<RamAccess>,
    /// Largest number of elements held by this bank at once.
    pub max_occupancy: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamSchedule {
    /// Cycles every read is delayed so that no element is read before it
    /// is written.
    pub latency: u64,
    pub ports: Vec<PortSchedule>,
    /// Whether the read cycles of every bank form a permutation of the frame.
    pub bijective: bool,
    pub max_occupancy: usize,
}

/// Write/read schedule of the RAM stage: on port `p`, the element written
/// at cycle `c` (address `c`) is read at output cycle `C4 c_b ⊕ C3 p_b`.
pub fn ram_addressing(spec: &CircuitSpec) -> Result<RamSchedule> {
    let (m, n) = (spec.m, spec.n);
    if m + n > MAX_WIDTH {
        return Err(Error::TooLarge(format!("2^{} points", m + n)));
    }
    check_stage(StageKind::Ram, &spec.ram_stage, m, n)?;
    let step = stage_step(StageKind::Ram, &spec.ram_stage, m, n);
    let frame = 1u64 << m;
    let mut bijective = true;
    let mut raw: Vec<Vec<RamAccess>> = Vec::new();
    for port in 0..1u64 << n {
        let accesses: Vec<RamAccess> = (0..frame)
            .map(|c| RamAccess {
                write_cycle: c,
                address: c,
                read_cycle: step(StreamElement {
                    value: 0,
                    cycle: c,
                    port,
                })
                .cycle,
            })
            .collect();
        let reads: HashSet<u64> = accesses.iter().map(|a| a.read_cycle).collect();
        bijective &= reads.len() as u64 == frame;
        raw.push(accesses);
    }
    let latency = raw
        .iter()
        .flatten()
        .map(|a| a.write_cycle.saturating_sub(a.read_cycle))
        .max()
        .unwrap_or(0);
    let ports: Vec<PortSchedule> = raw
        .into_iter()
        .enumerate()
        .map(|(p, accesses)| {
            // resident over [write, read + latency]
            let max_occupancy = (0..frame + latency)
                .map(|tau| {
                    accesses
                        .iter()
                        .filter(|a| a.write_cycle <= tau && tau <= a.read_cycle + latency)
                        .count()
                })
                .max()
                .unwrap_or(0);
            PortSchedule {
                port: p as u64,
                accesses,
                max_occupancy,
            }
        })
        .collect();
    Ok(RamSchedule {
        latency,
        max_occupancy: ports.iter().map(|p| p.max_occupancy).max().unwrap_or(0),
        ports,
        bijective,
    })
}
