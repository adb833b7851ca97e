use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

/// A basis state of `L` spins. Site `i` (1-based) is bit `L − i`; a set bit is `+`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinState {
    pub size: usize,
    pub word: u64,
}

impl SpinState {
    pub fn new(size: usize, word: u64) -> Self {
        debug_assert!(size < 64 && word >> size == 0);
        SpinState { size, word }
    }

    /// Spin at site `i`, `true` for `+`.
    pub fn up(&self, i: usize) -> bool {
        self.word >> (self.size - i) & 1 == 1
    }

    pub fn ups(&self) -> usize {
        self.word.count_ones() as usize
    }

    /// Twice the total `s_z`.
    pub fn twice_sz(&self) -> i64 {
        2 * self.ups() as i64 - self.size as i64
    }

    /// `+⋯+−⋯−` with `ups` plus signs.
    pub fn separated(size: usize, ups: usize) -> Self {
        SpinState::new(size, ((1u64 << ups) - 1) << (size - ups))
    }

    /// All spins flipped.
    pub fn reversed(&self) -> Self {
        SpinState::new(self.size, !self.word & ((1u64 << self.size) - 1))
    }

    /// Appends one spin as site `L+1`.
    pub fn push(&self, up: bool) -> Self {
        SpinState::new(self.size + 1, self.word << 1 | up as u64)
    }

    /// Parses a string of `+` and `-` (or `−`).
    pub fn parse(s: &str) -> Result<Self> {
        let mut word = 0u64;
        let mut size = 0;
        for c in s.trim().chars() {
            word = word << 1
                | match c {
                    '+' => 1,
                    '-' | '−' => 0,
                    _ => return Err(Error::Parse(format!("bad spin character {c:?} in {s:?}"))),
                };
            size += 1;
        }
        if size == 0 || size > 62 {
            return Err(Error::Parse(format!("spin word {s:?} has unsupported length")));
        }
        Ok(SpinState::new(size, word))
    }
}

impl fmt::Display for SpinState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.size {
            f.write_str(if self.up(i) { "+" } else { "-" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for SpinState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{self}⟩")
    }
}

/// Number of `+` spins in the sector used for a chain of size `L`:
/// `s_z = 1/2` for odd `L`, `s_z = 0` for even `L`.
pub fn sector_ups(size: usize) -> usize {
    size.div_ceil(2)
}

/// States of one sector ordered by word value.
#[derive(Debug)]
pub struct SpinBasis {
    size: usize,
    ups: usize,
    states: Vec<SpinState>,
    index: HashMap<u64, usize>,
}

impl SpinBasis {
    /// Shared basis of the standard sector of size `L`.
    pub fn get(size: usize) -> Result<Arc<SpinBasis>> {
        Self::sector(size, sector_ups(size))
    }

    pub fn sector(size: usize, ups: usize) -> Result<Arc<SpinBasis>> {
        if size == 0 || size > 20 || ups > size {
            return Err(Error::ConfigError(format!("unsupported spin sector L = {size}, #+ = {ups}")));
        }
        static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<SpinBasis>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(b) = cache.lock().expect("spin basis cache").get(&(size, ups)) {
            return Ok(b.clone());
        }
        let states: Vec<SpinState> = (0..1u64 << size)
            .filter(|w| w.count_ones() as usize == ups)
            .map(|w| SpinState::new(size, w))
            .collect();
        let index = states.iter().enumerate().map(|(k, s)| (s.word, k)).collect();
        let b = Arc::new(SpinBasis {
            size,
            ups,
            states,
            index,
        });
        cache.lock().expect("spin basis cache").insert((size, ups), b.clone());
        Ok(b)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn ups(&self) -> usize {
        self.ups
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[SpinState] {
        &self.states
    }

    pub fn state(&self, k: usize) -> SpinState {
        self.states[k]
    }

    pub fn index_of(&self, s: &SpinState) -> Option<usize> {
        if s.size != self.size {
            return None;
        }
        self.index.get(&s.word).copied()
    }

    pub fn position(&self, s: &SpinState) -> usize {
        self.index_of(s).unwrap_or_else(|| panic!("{s:?} not in sector"))
    }
}
