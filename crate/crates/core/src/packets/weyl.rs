//! Signed permutations and the Weyl groups of type `B_n` and `D_n`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::HalfInt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WeylFamily {
    B,
    D,
}

/// `e_i ↦ sign · e_j`, stored as the signed 1-based index `±j` at slot `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SignedPermutation(Vec<i32>);

impl SignedPermutation {
    pub fn new(images: Vec<i32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            let j = img.unsigned_abs() as usize;
            if j == 0 || j > n || std::mem::replace(&mut seen[j - 1], true) {
                return Err(Error::invalid(
                    "signed images form a bijection of {1..n}",
                    format!("{images:?}"),
                ));
            }
        }
        Ok(SignedPermutation(images))
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation((1..=n as i32).collect())
    }

    /// Swap of `e_i` and `e_j` (0-based).
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut v = Self::identity(n).0;
        v.swap(i, j);
        SignedPermutation(v)
    }

    /// `e_i ↦ -e_j`, `e_j ↦ -e_i` (0-based): the extra simple reflection of `D_n`.
    pub fn negated_transposition(n: usize, i: usize, j: usize) -> Self {
        let mut v = Self::identity(n).0;
        v[i] = -(j as i32 + 1);
        v[j] = -(i as i32 + 1);
        SignedPermutation(v)
    }

    /// `e_i ↦ -e_i` (0-based).
    pub fn sign_change(n: usize, i: usize) -> Self {
        let mut v = Self::identity(n).0;
        v[i] = -v[i];
        SignedPermutation(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[i32] {
        &self.0
    }

    /// Image of `sign · e_i` as `(j, sign')`, all 0-based.
    pub fn apply_signed(&self, i: usize, sign: i32) -> (usize, i32) {
        let img = self.0[i];
        (img.unsigned_abs() as usize - 1, sign * img.signum())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        SignedPermutation(
            other
                .0
                .iter()
                .map(|&img| {
                    let (j, s) = self.apply_signed(img.unsigned_abs() as usize - 1, img.signum());
                    s * (j as i32 + 1)
                })
                .collect(),
        )
    }

    pub fn inverse(&self) -> Self {
        let mut v = vec![0; self.rank()];
        for (i, &img) in self.0.iter().enumerate() {
            v[img.unsigned_abs() as usize - 1] = img.signum() * (i as i32 + 1);
        }
        SignedPermutation(v)
    }

    pub fn negative_count(&self) -> usize {
        self.0.iter().filter(|&&x| x < 0).count()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| x == i as i32 + 1)
    }

    /// Acts on coordinates: `(w·v)_j = sign · v_i` where `w(e_i) = sign · e_j`.
    pub fn act(&self, v: &[HalfInt]) -> Vec<HalfInt> {
        let mut out = vec![HalfInt::ZERO; v.len()];
        for (i, &x) in v.iter().enumerate() {
            let (j, s) = self.apply_signed(i, 1);
            out[j] = if s < 0 { -x } else { x };
        }
        out
    }
}

impl fmt::Debug for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// `W(B_n)` or `W(D_n)` acting on `ℝ^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeylGroup {
    pub family: WeylFamily,
    pub rank: usize,
}

impl WeylGroup {
    pub fn new(family: WeylFamily, rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::invalid("Weyl group rank >= 1", "rank 0"));
        }
        Ok(WeylGroup { family, rank })
    }

    pub fn order(&self) -> u64 {
        let fact: u64 = (1..=self.rank as u64).product();
        let signs = match self.family {
            WeylFamily::B => self.rank as u32,
            WeylFamily::D => self.rank as u32 - 1,
        };
        (1u64 << signs) * fact
    }

    pub fn contains(&self, w: &SignedPermutation) -> bool {
        w.rank() == self.rank
            && match self.family {
                WeylFamily::B => true,
                WeylFamily::D => w.negative_count().is_multiple_of(2),
            }
    }

    pub fn generators(&self) -> Vec<SignedPermutation> {
        block_generators(self.family, self.rank, 0, self.rank)
    }

    /// All elements, by breadth-first closure under the generators.
    pub fn elements(&self) -> Vec<SignedPermutation> {
        closure(self.rank, &self.generators())
    }
}

/// Generators of `W(B_k)` or `W(D_k)` acting on coordinates `start..start+k`
/// of `ℝ^n`. `D_1` is trivial.
pub fn block_generators(family: WeylFamily, n: usize, start: usize, k: usize) -> Vec<SignedPermutation> {
    let mut gens: Vec<SignedPermutation> = (start..start + k.saturating_sub(1))
        .map(|i| SignedPermutation::transposition(n, i, i + 1))
        .collect();
    match family {
        WeylFamily::B if k >= 1 => gens.push(SignedPermutation::sign_change(n, start + k - 1)),
        WeylFamily::D if k >= 2 => gens.push(SignedPermutation::negated_transposition(
            n,
            start + k - 2,
            start + k - 1,
        )),
        _ => {}
    }
    gens
}

/// The group generated by `gens` inside the signed permutations of rank `n`.
pub fn closure(n: usize, gens: &[SignedPermutation]) -> Vec<SignedPermutation> {
    let id = SignedPermutation::identity(n);
    let mut index: HashMap<SignedPermutation, ()> = HashMap::from([(id.clone(), ())]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(w) = queue.pop_front() {
        for g in gens {
            let next = g.compose(&w);
            if index.insert(next.clone(), ()).is_none() {
                out.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    out
}

/// Canonical form of `v` under `W`: sorted absolute values, plus for type
/// `D` with no zero entry the parity of the number of negative entries.
fn canonical_form(family: WeylFamily, v: &[HalfInt]) -> (Vec<HalfInt>, Option<bool>) {
    let mut abs: Vec<HalfInt> = v.iter().map(|x| x.abs()).collect();
    abs.sort_unstable_by(|a, b| b.cmp(a));
    let parity = match family {
        WeylFamily::D if v.iter().all(|x| !x.is_zero()) => {
            Some(v.iter().filter(|x| x.is_negative()).count() % 2 == 1)
        }
        _ => None,
    };
    (abs, parity)
}

/// Whether `u` and `v` lie in one `W(B_n)`/`W(D_n)` orbit.
pub fn weyl_conjugate(family: WeylFamily, u: &[HalfInt], v: &[HalfInt]) -> bool {
    u.len() == v.len() && canonical_form(family, u) == canonical_form(family, v)
}
