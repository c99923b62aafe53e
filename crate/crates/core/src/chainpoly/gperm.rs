use std::collections::BTreeSet;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest dimension whose `z` table is computed eagerly (`2^dim` entries).
pub const EAGER_Z_CAP: usize = 16;
/// Default cap on `r + 1` for building polytopes from posets.
pub const DEFAULT_DIM_CAP: usize = 16;
// subsets are u64 masks
const HARD_DIM_CAP: usize = 63;

/// A Minkowski sum `sum c(i, j) * simplex[i, j]` over intervals of `[1, dim]`,
/// together with its right-hand sides `z(I)`: the polytope is
/// `{ t : sum t = z([dim]), sum_{k in I} t_k <= z(I) for all I }`.
///
/// Subsets `I` are bit masks, coordinate `k` (1-based) at bit `k - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GPerm {
    dim: usize,
    // c[(i-1) * dim + (j-1)] for i <= j
    c: Vec<u64>,
    z: Option<Vec<i64>>,
}

fn interval_mask(i: usize, j: usize) -> u64 {
    let upper = if j >= 64 { u64::MAX } else { (1u64 << j) - 1 };
    upper & !((1u64 << (i - 1)) - 1)
}

impl GPerm {
    /// Builds from an upper-triangular matrix, `matrix[i-1][j-1] = c(i, j)`.
    /// Entries below the diagonal must be zero.
    pub fn from_matrix(matrix: &[Vec<u64>]) -> Result<Self> {
        let dim = matrix.len();
        let mut c = vec![0; dim * dim];
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if j < i && v != 0 {
                    return Err(Error::Input(format!(
                        "c({}, {}) set below the diagonal",
                        i + 1,
                        j + 1
                    )));
                }
                c[i * dim + j] = v;
            }
        }
        Self::from_flat(dim, c)
    }

    /// Builds from `((i, j), c)` pairs; unspecified intervals are zero.
    pub fn from_intervals(dim: usize, entries: &[((usize, usize), u64)]) -> Result<Self> {
        let mut c = vec![0; dim * dim];
        for &((i, j), v) in entries {
            if i == 0 || i > j || j > dim {
                return Err(Error::Input(format!(
                    "[{i}, {j}] is not an interval of [1, {dim}]"
                )));
            }
            c[(i - 1) * dim + (j - 1)] += v;
        }
        Self::from_flat(dim, c)
    }

    fn from_flat(dim: usize, c: Vec<u64>) -> Result<Self> {
        if dim == 0 || dim > HARD_DIM_CAP {
            return Err(Error::DimensionTooLarge {
                dim,
                cap: HARD_DIM_CAP,
            });
        }
        let mut g = Self { dim, c, z: None };
        if dim <= EAGER_Z_CAP {
            let z = (0..1u64 << dim).map(|mask| g.compute_z(mask)).collect();
            g.z = Some(z);
        }
        Ok(g)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `c(i, j)`, 1-based.
    pub fn c(&self, i: usize, j: usize) -> u64 {
        self.c[(i - 1) * self.dim + (j - 1)]
    }

    /// Intervals with nonzero multiplicity, in `(i, j)` order.
    pub fn support(&self) -> Vec<(usize, usize)> {
        self.intervals()
            .filter(|&(i, j)| self.c(i, j) > 0)
            .collect()
    }

    /// Every interval `[i, j]`, ordered by `i` then `j`.
    pub fn intervals(&self) -> impl Iterator<Item = (usize, usize)> {
        let dim = self.dim;
        (1..=dim).flat_map(move |i| (i..=dim).map(move |j| (i, j)))
    }

    fn compute_z(&self, mask: u64) -> i64 {
        self.intervals()
            .filter(|&(i, j)| interval_mask(i, j) & mask != 0)
            .map(|(i, j)| self.c(i, j) as i64)
            .sum()
    }

    /// `z(I)`: total multiplicity of intervals meeting `I`.
    pub fn z(&self, mask: u64) -> i64 {
        match &self.z {
            Some(table) => table[mask as usize],
            None => self.compute_z(mask),
        }
    }

    pub fn full_mask(&self) -> u64 {
        interval_mask(1, self.dim)
    }

    /// `z([dim])`, the common coordinate sum.
    pub fn total(&self) -> i64 {
        self.z(self.full_mask())
    }

    pub fn has_z_cache(&self) -> bool {
        self.z.is_some()
    }

    /// Membership test against the inequality description.
    pub fn contains(&self, t: &[i64]) -> bool {
        if t.len() != self.dim {
            return false;
        }
        if t.iter().sum::<i64>() != self.total() {
            return false;
        }
        if self.z.is_none() {
            // 2^dim inequalities are out of reach; the transportation
            // problem behind the Minkowski sum decides the same question
            return super::flow::transport(self, t).is_some();
        }
        let full = self.full_mask();
        (1..full).all(|mask| {
            let s: i64 = (0..self.dim)
                .filter(|k| mask >> k & 1 == 1)
                .map(|k| t[k])
                .sum();
            s <= self.z(mask)
        })
    }

    /// All integer points, by coordinate recursion with prefix bounds.
    pub fn lattice_points(&self) -> Result<BTreeSet<Vec<i64>>> {
        if self.z.is_none() {
            return Err(Error::DimensionTooLarge {
                dim: self.dim,
                cap: EAGER_Z_CAP,
            });
        }
        let mut out = BTreeSet::new();
        let mut t = Vec::with_capacity(self.dim);
        self.extend_points(&mut t, 0, &mut out);
        Ok(out)
    }

    fn extend_points(&self, t: &mut Vec<i64>, prefix_sum: i64, out: &mut BTreeSet<Vec<i64>>) {
        let k = t.len();
        let total = self.total();
        if k == self.dim {
            if prefix_sum == total && self.contains(t) {
                out.insert(t.clone());
            }
            return;
        }
        let bit = 1u64 << k;
        let prefix = interval_mask(1, k + 1);
        let suffix = self.full_mask() & !prefix;
        // the remaining coordinates can absorb at most z(suffix)
        let lo = (total - prefix_sum - self.z(suffix)).max(0);
        let hi = self.z(bit).min(self.z(prefix) - prefix_sum);
        for value in lo..=hi {
            t.push(value);
            // subsets of the assigned prefix that contain coordinate k
            let ok = (0..bit).all(|rest| {
                let mask = rest | bit;
                let s: i64 = (0..=k).filter(|i| mask >> i & 1 == 1).map(|i| t[i]).sum();
                s <= self.z(mask)
            });
            if ok {
                self.extend_points(t, prefix_sum + value, out);
            }
            t.pop();
        }
    }

    /// Copy whose `z` table has the sign of every non-singleton interval's
    /// contribution flipped. Used to check that the fuzz harness notices a
    /// broken inequality description.
    #[doc(hidden)]
    pub fn with_flipped_z_signs(&self) -> Self {
        let mut g = self.clone();
        let z = (0..1u64 << self.dim.min(EAGER_Z_CAP))
            .map(|mask| {
                self.intervals()
                    .filter(|&(i, j)| interval_mask(i, j) & mask != 0)
                    .map(|(i, j)| {
                        let c = self.c(i, j) as i64;
                        if i == j {
                            c
                        } else {
                            -c
                        }
                    })
                    .sum()
            })
            .collect();
        g.z = Some(z);
        g
    }

    pub fn to_json(&self) -> GPermJson {
        let c = self
            .intervals()
            .map(|(i, j)| (format!("{i}-{j}"), self.c(i, j)))
            .collect();
        let z = (1..=self.full_mask())
            .map(|mask| (mask_key(mask), self.z(mask)))
            .collect();
        GPermJson {
            dim: self.dim,
            c,
            z,
        }
    }

    /// Rebuilds from the JSON form; `z`, when present, must agree with `c`.
    pub fn from_json(json: &GPermJson) -> Result<Self> {
        let mut entries = Vec::with_capacity(json.c.len());
        for (key, &v) in &json.c {
            let (i, j) = key
                .split_once('-')
                .and_then(|(i, j)| Some((i.parse().ok()?, j.parse().ok()?)))
                .ok_or_else(|| Error::Input(format!("bad interval key `{key}`")))?;
            entries.push(((i, j), v));
        }
        let g = Self::from_intervals(json.dim, &entries)?;
        for (key, &v) in &json.z {
            let mask = parse_mask_key(key, json.dim)?;
            if g.z(mask) != v {
                return Err(Error::Input(format!(
                    "z({key}) = {v} disagrees with c (expected {})",
                    g.z(mask)
                )));
            }
        }
        Ok(g)
    }
}

fn mask_key(mask: u64) -> String {
    (0..64)
        .filter(|k| mask >> k & 1 == 1)
        .map(|k| (k + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_mask_key(key: &str, dim: usize) -> Result<u64> {
    let mut mask = 0u64;
    for part in key.split(',') {
        let k: usize = part
            .trim()
            .parse()
            .map_err(|_| Error::Input(format!("bad subset key `{key}`")))?;
        if k == 0 || k > dim {
            return Err(Error::Input(format!(
                "subset key `{key}` outside [1, {dim}]"
            )));
        }
        mask |= 1 << (k - 1);
    }
    Ok(mask)
}

/// JSON form: `{"dim":3,"c":{"1-1":2,...},"z":{"1":4,"1,2":5,...}}`.
/// `c` lists every interval in `(i, j)` order, `z` every nonempty subset in
/// increasing mask order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GPermJson {
    pub dim: usize,
    pub c: IndexMap<String, u64>,
    #[serde(default)]
    pub z: IndexMap<String, i64>,
}

/// `(t_1, t_1 + t_2, ..., t_1 + ... + t_r)`: drops the last coordinate.
pub fn to_subposet_coords(t: &[i64]) -> Vec<i64> {
    let r = t.len().saturating_sub(1);
    t[..r]
        .iter()
        .scan(0, |acc, &x| {
            *acc += x;
            Some(*acc)
        })
        .collect()
}

/// Inverse of [`to_subposet_coords`] given the total `|P|`:
/// `(c_1, c_2 - c_1, ..., total - c_r)`.
pub fn from_subposet_coords(c: &[i64], total: i64) -> Vec<i64> {
    let mut prev = 0;
    let mut t: Vec<i64> = c
        .iter()
        .map(|&x| {
            let d = x - prev;
            prev = x;
            d
        })
        .collect();
    t.push(total - prev);
    t
}
