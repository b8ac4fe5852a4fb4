//! Thread-safe set of canonical forms with a memory cap.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use super::CanonicalForm;

/// Default cap on stored forms.
pub const DEFAULT_CAPACITY: usize = 1 << 26;

const SHARDS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DedupError {
    #[error("dedup store is full ({0} forms)")]
    Full(usize),
}

/// Outcome of [`DedupStore::claim`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Claim {
    /// The caller owns this class and should explore it.
    Fresh,
    /// An equal or earlier rank already owns it.
    Seen,
}

/// Sharded hash set of canonical forms.
///
/// Every form carries a rank. A claim succeeds if the form is absent or held
/// by a strictly larger rank, in which case the caller's rank replaces it.
/// With one caller at a constant rank this is a plain "insert if new".
pub struct DedupStore {
    shards: Vec<Mutex<HashMap<Box<[u8]>, u64>>>,
    len: AtomicUsize,
    capacity: usize,
}

impl Default for DedupStore {
    fn default() -> Self {
        Self::with_capacity(DEFAULT_CAPACITY)
    }
}

impl DedupStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(capacity: usize) -> Self {
        DedupStore {
            shards: (0..SHARDS).map(|_| Mutex::new(HashMap::new())).collect(),
            len: AtomicUsize::new(0),
            capacity,
        }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.len.load(Ordering::Relaxed)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn shard(&self, bytes: &[u8]) -> &Mutex<HashMap<Box<[u8]>, u64>> {
        let mut h = DefaultHasher::new();
        bytes.hash(&mut h);
        &self.shards[h.finish() as usize % SHARDS]
    }

    pub fn contains(&self, form: &CanonicalForm) -> bool {
        self.shard(form.as_bytes())
            .lock()
            .unwrap()
            .contains_key(form.as_bytes())
    }

    pub fn claim(&self, form: &CanonicalForm, rank: u64) -> Result<Claim, DedupError> {
        let bytes = form.as_bytes();
        let mut map = self.shard(bytes).lock().unwrap();
        match map.get_mut(bytes) {
            Some(r) if *r <= rank => Ok(Claim::Seen),
            Some(r) => {
                *r = rank;
                Ok(Claim::Fresh)
            }
            None => {
                if self.len.fetch_add(1, Ordering::Relaxed) >= self.capacity {
                    self.len.fetch_sub(1, Ordering::Relaxed);
                    return Err(DedupError::Full(self.capacity));
                }
                map.insert(bytes.into(), rank);
                Ok(Claim::Fresh)
            }
        }
    }

    /// True if `form` was not present before.
    pub fn insert_if_new(&self, form: &CanonicalForm) -> Result<bool, DedupError> {
        self.claim(form, 0).map(|c| c == Claim::Fresh)
    }

    /// All stored forms, sorted.
    pub fn forms(&self) -> Vec<Box<[u8]>> {
        let mut out: Vec<Box<[u8]>> = self
            .shards
            .iter()
            .flat_map(|s| s.lock().unwrap().keys().cloned().collect::<Vec<_>>())
            .collect();
        out.sort();
        out
    }
}
