//! Choice-point trailing for sparse-set domains.
//!
//! Because `remove` and `bind` only ever swap `dom` entries at indices below
//! the current size and never touch the suffix, the value multiset of
//! `dom[0, saved)` is invariant between a mark and any later point. Undoing
//! every operation since the mark is therefore a single write: reset `size`
//! to the saved value. The trail records those saved sizes, grouped into
//! frames pushed at each choice point.

use crate::sparse_set::SparseSet;

/// Error raised by trail operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TrailError {
    /// `record` or `pop_frame` was called with no frame open.
    #[error("no open frame on the trail")]
    NoOpenFrame,
    /// `pop_frame` was called with a token that is not the innermost frame.
    #[error("frame token {token} is not the innermost open frame")]
    NotInnermost { token: u64 },
    /// A recorded domain index has no slot in the store passed to
    /// `pop_frame`.
    #[error("recorded domain {domain} outside store of {store_len} domains")]
    DomainOutOfRange { domain: usize, store_len: usize },
}

/// Identifies one open frame. Tokens are unique over the life of a trail;
/// popping requires the token of the innermost frame, which keeps the LIFO
/// discipline honest.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrameToken(u64);

/// A saved domain size, tagged with the index of the domain it belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Mark {
    domain: usize,
    saved_size: usize,
    /// `touched` stamp to reinstate for this domain when the mark is undone.
    prev_stamp: u64,
}

#[derive(Debug, Clone, Copy)]
struct Frame {
    seq: u64,
    /// Index into `entries` where this frame's marks begin.
    start: usize,
}

/// Stack of choice-point marks for one or many domains.
///
/// Domains are identified by their index into the slice handed to
/// [`pop_frame`](Self::pop_frame); callers keep their domains in a store
/// (typically a `Vec<SparseSet>`) and pass the matching index to
/// [`record`](Self::record). For a single free-standing domain, use index 0
/// and `std::slice::from_mut`.
#[derive(Debug, Default)]
pub struct Trail {
    entries: Vec<Mark>,
    frames: Vec<Frame>,
    /// Per-domain stamp of the frame that last recorded it; 0 means never.
    touched: Vec<u64>,
    next_seq: u64,
}

impl Trail {
    pub fn new() -> Self {
        Trail::default()
    }

    /// Number of currently open frames.
    pub fn depth(&self) -> usize {
        self.frames.len()
    }

    /// Total marks currently on the trail, across all open frames.
    pub fn mark_count(&self) -> usize {
        self.entries.len()
    }

    /// Opens a new frame and returns its token.
    pub fn push_frame(&mut self) -> FrameToken {
        self.next_seq += 1;
        self.frames.push(Frame {
            seq: self.next_seq,
            start: self.entries.len(),
        });
        FrameToken(self.next_seq)
    }

    /// Records `domain`'s current size in the innermost frame, unless this
    /// frame already holds a mark for it. First-touch recording: call before
    /// every mutation and each frame still ends up with at most one mark per
    /// domain, carrying the size the domain had when the frame was entered.
    pub fn record(&mut self, domain: usize, set: &SparseSet) -> Result<(), TrailError> {
        let frame = self.frames.last().ok_or(TrailError::NoOpenFrame)?;
        if self.touched.len() <= domain {
            self.touched.resize(domain + 1, 0);
        }
        if self.touched[domain] == frame.seq {
            return Ok(());
        }
        self.entries.push(Mark {
            domain,
            saved_size: set.len(),
            prev_stamp: self.touched[domain],
        });
        self.touched[domain] = frame.seq;
        Ok(())
    }

    /// Closes the innermost frame, restoring every domain recorded in it to
    /// its saved size (LIFO). O(1) work per recorded domain, independent of
    /// how many values were removed since the mark.
    ///
    /// `token` must identify the innermost open frame, and `domains` must
    /// cover every domain index recorded in it; the frame is left intact if
    /// either check fails.
    pub fn pop_frame(
        &mut self,
        token: FrameToken,
        domains: &mut [SparseSet],
    ) -> Result<(), TrailError> {
        let frame = *self.frames.last().ok_or(TrailError::NoOpenFrame)?;
        if frame.seq != token.0 {
            return Err(TrailError::NotInnermost { token: token.0 });
        }
        for mark in &self.entries[frame.start..] {
            if mark.domain >= domains.len() {
                return Err(TrailError::DomainOutOfRange {
                    domain: mark.domain,
                    store_len: domains.len(),
                });
            }
        }
        while self.entries.len() > frame.start {
            let mark = self.entries.pop().expect("frame start bounds entries");
            domains[mark.domain].restore_size(mark.saved_size);
            self.touched[mark.domain] = mark.prev_stamp;
        }
        self.frames.pop();
        Ok(())
    }
}
