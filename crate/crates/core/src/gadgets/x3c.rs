use crate::error::{Result, TdgError};

/// Exact 3-Cover instance: ground set `0..ground_set_size` and a list of
/// 3-element subsets (stored sorted).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct X3cInstance {
    ground_set_size: usize,
    sets: Vec<[usize; 3]>,
}

impl X3cInstance {
    pub fn new(ground_set_size: usize, sets: Vec<[usize; 3]>) -> Result<Self> {
        if ground_set_size % 3 != 0 {
            return Err(TdgError::InvalidX3c(format!(
                "ground set size {ground_set_size} is not a multiple of 3"
            )));
        }
        let mut sorted = Vec::with_capacity(sets.len());
        for (index, mut s) in sets.into_iter().enumerate() {
            s.sort_unstable();
            if s[0] == s[1] || s[1] == s[2] {
                return Err(TdgError::InvalidX3c(format!(
                    "set {} has repeated elements",
                    index + 1
                )));
            }
            if s[2] >= ground_set_size {
                return Err(TdgError::InvalidX3c(format!(
                    "set {} mentions element {} outside 1..={ground_set_size}",
                    index + 1,
                    s[2] + 1
                )));
            }
            sorted.push(s);
        }
        Ok(Self {
            ground_set_size,
            sets: sorted,
        })
    }

    pub fn ground_set_size(&self) -> usize {
        self.ground_set_size
    }

    pub fn sets(&self) -> &[[usize; 3]] {
        &self.sets
    }

    /// Checks that the listed set indices partition the ground set.
    pub fn validate_cover(&self, cover: &[usize]) -> Result<()> {
        if cover.len() * 3 != self.ground_set_size {
            return Err(TdgError::InvalidCover(format!(
                "cover has {} sets, expected {}",
                cover.len(),
                self.ground_set_size / 3
            )));
        }
        let mut hit = vec![false; self.ground_set_size];
        for &index in cover {
            let set = self.sets.get(index).ok_or_else(|| {
                TdgError::InvalidCover(format!("set index {} out of range", index + 1))
            })?;
            for &e in set {
                if std::mem::replace(&mut hit[e], true) {
                    return Err(TdgError::InvalidCover(format!(
                        "element {} covered twice",
                        e + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// Whether every element occurs in exactly one set.
    pub fn sets_partition_ground_set(&self) -> bool {
        self.validate_cover(&(0..self.sets.len()).collect::<Vec<_>>()).is_ok()
    }
}

/// Shortcut verdicts noted during padding when the required gap between
/// `3|S|` and `|R|` cannot be created.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PaddingFlag {
    TrivialNo,
    TrivialYes,
}

impl PaddingFlag {
    pub fn name(self) -> &'static str {
        match self {
            PaddingFlag::TrivialNo => "trivial-no",
            PaddingFlag::TrivialYes => "trivial-yes",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PaddedX3c {
    pub instance: X3cInstance,
    /// Number of blocks of three new elements.
    pub k: usize,
    pub flag: Option<PaddingFlag>,
    original_sets: usize,
    // Index of a new set covering block i, for extending a cover.
    block_sets: Vec<usize>,
}

impl PaddedX3c {
    /// Carries a cover of the original instance over to the padded one.
    pub fn extend_cover(&self, cover: &[usize]) -> Vec<usize> {
        cover.iter().copied().chain(self.block_sets.iter().copied()).collect()
    }

    pub fn original_set_count(&self) -> usize {
        self.original_sets
    }
}

fn exjump_bounds_hold(r: usize, s: usize) -> bool {
    // |R| > 3 and |R| > 3|S| - |R|/3 + 10, scaled by 3
    r > 3 && 4 * r > 9 * s + 30
}

/// Adds `3k` elements and one set per block of three, with `k` minimal such
/// that `|R| > 3` and `|R| > 3|S| - |R|/3 + 10`.
pub fn pad_x3c_for_exjump(x: &X3cInstance) -> PaddedX3c {
    let (r, s) = (x.ground_set_size, x.sets.len());
    let k = (0..)
        .find(|&k| exjump_bounds_hold(r + 3 * k, s + k))
        .expect("bound grows by one per block");
    let flag = if 3 * s < r {
        Some(PaddingFlag::TrivialNo)
    } else if 3 * s == r {
        Some(if x.sets_partition_ground_set() {
            PaddingFlag::TrivialYes
        } else {
            PaddingFlag::TrivialNo
        })
    } else {
        None
    };
    let mut sets = x.sets.clone();
    let mut block_sets = Vec::with_capacity(k);
    for i in 0..k {
        block_sets.push(sets.len());
        sets.push([r + 3 * i, r + 3 * i + 1, r + 3 * i + 2]);
    }
    PaddedX3c {
        instance: X3cInstance {
            ground_set_size: r + 3 * k,
            sets,
        },
        k,
        flag,
        original_sets: s,
        block_sets,
    }
}

/// Adds `3k` elements and every 3-subset of them, with `k` minimal such that
/// `3|S| > 2|R|`.
pub fn pad_x3c_for_dynamics(x: &X3cInstance) -> PaddedX3c {
    let (r, s) = (x.ground_set_size, x.sets.len());
    let triples = |m: usize| m * m.saturating_sub(1) * m.saturating_sub(2) / 6;
    let k = (0..)
        .find(|&k| 3 * (s + triples(3 * k)) > 2 * (r + 3 * k))
        .expect("cubic growth outpaces linear");
    let mut sets = x.sets.clone();
    let mut block_sets = vec![usize::MAX; k];
    let m = 3 * k;
    for p in 0..m {
        for q in p + 1..m {
            for t in q + 1..m {
                if p % 3 == 0 && q == p + 1 && t == p + 2 {
                    block_sets[p / 3] = sets.len();
                }
                sets.push([r + p, r + q, r + t]);
            }
        }
    }
    PaddedX3c {
        instance: X3cInstance {
            ground_set_size: r + m,
            sets,
        },
        k,
        flag: None,
        original_sets: s,
        block_sets,
    }
}
