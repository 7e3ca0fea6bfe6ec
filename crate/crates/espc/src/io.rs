//! Deterministic binary serialization of an index, plus size statistics.
//!
//! File layout (all integers little-endian):
//!
//! ```text
//! magic   "SPCX"                         4 bytes
//! version u16                            (currently 1)
//! flags   u16                            bit0 = shell maps, bit1 = twin maps
//! n_orig  u64 | m_orig u64 | n_red u64
//! vertex_at            n_red x u32       rank position -> reduced vertex
//! labels, per reduced vertex:
//!   len   u32
//!   entry (hub_pos u32, dist u32, count u64)   16 bytes each
//! shell section (flag bit0):
//!   in_core   ceil(n_orig / 8) bytes, LSB-first
//!   anchor    n_orig x u32
//!   parent    n_orig x u32               u32::MAX = none
//!   depth     n_orig x u32
//! twin section (flag bit1):
//!   red_of    n_orig x u32               u32::MAX = no reduced image
//!   origin    n_red x u32
//!   weight    n_red x u64
//!   kind      n_red x u8
//!   nbr_wsum  n_red x u64
//! checksum  u64                          FNV-1a over every preceding byte
//! ```
//!
//! The bytes are a pure function of the index content: identical indexes
//! serialize identically no matter which builder, mode, scheduler, or worker
//! count produced them. Build provenance ([`IndexMeta`]) is deliberately not
//! stored.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::label::{IndexMeta, LabelEntry, SpcIndex};
use crate::order::VertexOrder;
use crate::reduce::{CoreFringe, Reduction, TwinKind, TwinMaps, NO_VERTEX};

pub const MAGIC: &[u8; 4] = b"SPCX";
pub const FORMAT_VERSION: u16 = 1;

const FLAG_SHELL: u16 = 1;
const FLAG_TWIN: u16 = 1 << 1;

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

fn fnv1a(state: u64, bytes: &[u8]) -> u64 {
    bytes
        .iter()
        .fold(state, |h, &b| (h ^ b as u64).wrapping_mul(FNV_PRIME))
}

struct HashingWriter<W: Write> {
    inner: W,
    hash: u64,
    written: u64,
}

impl<W: Write> HashingWriter<W> {
    fn new(inner: W) -> Self {
        HashingWriter {
            inner,
            hash: FNV_OFFSET,
            written: 0,
        }
    }

    fn put(&mut self, bytes: &[u8]) -> Result<()> {
        self.inner.write_all(bytes)?;
        self.hash = fnv1a(self.hash, bytes);
        self.written += bytes.len() as u64;
        Ok(())
    }

    fn put_u16(&mut self, x: u16) -> Result<()> {
        self.put(&x.to_le_bytes())
    }
    fn put_u32(&mut self, x: u32) -> Result<()> {
        self.put(&x.to_le_bytes())
    }
    fn put_u64(&mut self, x: u64) -> Result<()> {
        self.put(&x.to_le_bytes())
    }
    fn put_u32s(&mut self, xs: &[u32]) -> Result<()> {
        for &x in xs {
            self.put_u32(x)?;
        }
        Ok(())
    }
    fn put_u64s(&mut self, xs: &[u64]) -> Result<()> {
        for &x in xs {
            self.put_u64(x)?;
        }
        Ok(())
    }
}

/// Serializes `idx` into `sink`; returns the byte count including checksum.
pub fn save(idx: &SpcIndex, sink: impl Write) -> Result<u64> {
    idx.validate()?;
    let n_orig = idx.num_orig_vertices;
    let n_red = idx.order.len();
    let mut w = HashingWriter::new(sink);
    w.put(MAGIC)?;
    w.put_u16(FORMAT_VERSION)?;
    let mut flags = 0u16;
    if idx.reduction.shell.is_some() {
        flags |= FLAG_SHELL;
    }
    if idx.reduction.twin.is_some() {
        flags |= FLAG_TWIN;
    }
    w.put_u16(flags)?;
    w.put_u64(n_orig as u64)?;
    w.put_u64(idx.num_orig_edges)?;
    w.put_u64(n_red as u64)?;
    w.put_u32s(&idx.order.vertex_at)?;
    for entries in &idx.labels {
        w.put_u32(entries.len() as u32)?;
        for e in entries {
            w.put_u32(e.hub_pos)?;
            w.put_u32(e.dist)?;
            w.put_u64(e.count)?;
        }
    }
    if let Some(shell) = &idx.reduction.shell {
        let mut bits = vec![0u8; n_orig.div_ceil(8)];
        for (v, &c) in shell.in_core.iter().enumerate() {
            bits[v >> 3] |= (c as u8) << (v & 7);
        }
        w.put(&bits)?;
        w.put_u32s(&shell.anchor)?;
        w.put_u32s(&shell.parent)?;
        w.put_u32s(&shell.depth)?;
    }
    if let Some(twin) = &idx.reduction.twin {
        w.put_u32s(&twin.red_of)?;
        w.put_u32s(&twin.origin)?;
        w.put_u64s(&twin.weight)?;
        w.put(&twin.kind.iter().map(|&k| k as u8).collect::<Vec<u8>>())?;
        w.put_u64s(&twin.nbr_weight_sum)?;
    }
    let digest = w.hash;
    w.put_u64(digest)?;
    Ok(w.written)
}

struct Cursor<'a> {
    buf: &'a [u8],
    at: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, len: usize) -> Result<&'a [u8]> {
        if self.at + len > self.buf.len() {
            return Err(Error::Truncated);
        }
        let s = &self.buf[self.at..self.at + len];
        self.at += len;
        Ok(s)
    }
    fn u16(&mut self) -> Result<u16> {
        Ok(u16::from_le_bytes(self.take(2)?.try_into().unwrap()))
    }
    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }
    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
    fn u32s(&mut self, n: usize) -> Result<Vec<u32>> {
        self.take(4 * n)?
            .chunks_exact(4)
            .map(|c| Ok(u32::from_le_bytes(c.try_into().unwrap())))
            .collect()
    }
    fn u64s(&mut self, n: usize) -> Result<Vec<u64>> {
        self.take(8 * n)?
            .chunks_exact(8)
            .map(|c| Ok(u64::from_le_bytes(c.try_into().unwrap())))
            .collect()
    }
}

/// Loads an index, verifying magic, version, and checksum before parsing.
pub fn load(mut source: impl Read) -> Result<SpcIndex> {
    let mut buf = Vec::new();
    source.read_to_end(&mut buf)?;
    let mut c = Cursor { buf: &buf, at: 0 };
    if c.take(4)? != MAGIC {
        return Err(Error::BadMagic);
    }
    let version = c.u16()?;
    if version != FORMAT_VERSION {
        return Err(Error::UnsupportedVersion(version));
    }
    if buf.len() < c.at + 8 {
        return Err(Error::Truncated);
    }
    let body_end = buf.len() - 8;
    let stored = u64::from_le_bytes(buf[body_end..].try_into().unwrap());
    if fnv1a(FNV_OFFSET, &buf[..body_end]) != stored {
        return Err(Error::ChecksumMismatch);
    }
    c.buf = &buf[..body_end];

    let flags = c.u16()?;
    if flags & !(FLAG_SHELL | FLAG_TWIN) != 0 {
        return Err(Error::Corrupt(format!("unknown flags {flags:#x}")));
    }
    let n_orig = c.u64()? as usize;
    let m_orig = c.u64()?;
    let n_red = c.u64()? as usize;
    let order = VertexOrder::from_vertex_at(c.u32s(n_red)?)
        .map_err(|e| Error::Corrupt(format!("order: {e}")))?;
    let mut labels = Vec::with_capacity(n_red);
    for _ in 0..n_red {
        let len = c.u32()? as usize;
        let mut entries = Vec::with_capacity(len);
        for _ in 0..len {
            entries.push(LabelEntry {
                hub_pos: c.u32()?,
                dist: c.u32()?,
                count: c.u64()?,
            });
        }
        labels.push(entries);
    }
    let shell = if flags & FLAG_SHELL != 0 {
        let bits = c.take(n_orig.div_ceil(8))?;
        let in_core: Vec<bool> = (0..n_orig).map(|v| bits[v >> 3] >> (v & 7) & 1 == 1).collect();
        let anchor = c.u32s(n_orig)?;
        let parent = c.u32s(n_orig)?;
        let depth = c.u32s(n_orig)?;
        let core_origin: Vec<u32> =
            (0..n_orig as u32).filter(|&v| in_core[v as usize]).collect();
        let mut core_of = vec![NO_VERTEX; n_orig];
        for (i, &v) in core_origin.iter().enumerate() {
            core_of[v as usize] = i as u32;
        }
        Some(CoreFringe {
            in_core,
            anchor,
            parent,
            depth,
            core_of,
            core_origin,
        })
    } else {
        None
    };
    let twin = if flags & FLAG_TWIN != 0 {
        let red_of = c.u32s(n_orig)?;
        let origin = c.u32s(n_red)?;
        let weight = c.u64s(n_red)?;
        let kind = c
            .take(n_red)?
            .iter()
            .map(|&b| TwinKind::from_u8(b))
            .collect::<Result<Vec<_>>>()?;
        let nbr_weight_sum = c.u64s(n_red)?;
        Some(TwinMaps {
            red_of,
            origin,
            weight,
            kind,
            nbr_weight_sum,
        })
    } else {
        None
    };
    if c.at != c.buf.len() {
        return Err(Error::Corrupt("trailing bytes".into()));
    }
    if shell.is_none() && twin.is_none() && n_red != n_orig {
        return Err(Error::Corrupt("identity reduction with n_red != n_orig".into()));
    }
    let idx = SpcIndex {
        num_orig_vertices: n_orig,
        num_orig_edges: m_orig,
        order,
        labels,
        reduction: Reduction::from_parts(n_orig, n_red, shell, twin),
        meta: IndexMeta {
            builder: "loaded".into(),
            config: String::new(),
        },
    };
    idx.validate()?;
    Ok(idx)
}

/// Index size statistics. `bytes` follows the 16-bytes-per-entry payload
/// convention.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexStats {
    pub entries: u64,
    pub bytes: u64,
    pub per_vertex_mean: f64,
    pub per_vertex_max: usize,
    /// `dist_histogram[d]` = number of entries at hop distance `d`.
    pub dist_histogram: Vec<u64>,
}

pub fn stats(idx: &SpcIndex) -> IndexStats {
    let entries = idx.num_entries();
    let n = idx.labels.len();
    let per_vertex_max = idx.labels.iter().map(Vec::len).max().unwrap_or(0);
    let max_dist = idx
        .labels
        .iter()
        .flat_map(|l| l.iter().map(|e| e.dist))
        .max()
        .unwrap_or(0);
    let mut dist_histogram = vec![0u64; max_dist as usize + 1];
    for l in &idx.labels {
        for e in l {
            dist_histogram[e.dist as usize] += 1;
        }
    }
    if n == 0 {
        dist_histogram.clear();
    }
    IndexStats {
        entries,
        bytes: entries * 16,
        per_vertex_mean: if n == 0 { 0.0 } else { entries as f64 / n as f64 },
        per_vertex_max,
        dist_histogram,
    }
}
