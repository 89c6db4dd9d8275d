//! Interlacing of infinitesimal characters, double cosets of Weyl groups,
//! the two-member Arthur packet, pure inner forms and relevant pairs.

pub mod weyl;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fjrep::{harmonic_degree, InfChar};
use crate::geometry::Subgroup;
use crate::numerics::HalfInt;

pub use weyl::{weyl_conjugate, SignedPermutation, WeylFamily, WeylGroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InterlaceClass {
    FiniteType,
    InfiniteType1,
    NoPattern,
}

impl fmt::Display for InterlaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InterlaceClass::FiniteType => "FiniteType",
            InterlaceClass::InfiniteType1 => "InfiniteType1",
            InterlaceClass::NoPattern => "NoPattern",
        })
    }
}

fn strictly_decreasing(chain: &[HalfInt]) -> bool {
    chain.windows(2).all(|w| w[0] > w[1])
}

/// Classifies the pair `(A, B)` with `|A| = m`, `|B| ∈ {m-1, m}`.
///
/// * `FiniteType`: `a1 > b1 > a2 > b2 > …` through both sequences.
/// * `InfiniteType1`: `b1 >= a1 > a2 > b2 > a3 > b3 > …`, i.e. the first
///   comparison is non-strict and the alternation `a_i > b_i > a_{i+1}`
///   starts at `i = 2`.
pub fn interlace_classify(seq_a: &InfChar, seq_b: &InfChar) -> Result<InterlaceClass> {
    let (a, b) = (seq_a.entries(), seq_b.entries());
    let (m, n) = (a.len(), b.len());
    if m == 0 || !(n == m || n + 1 == m) {
        return Err(Error::LengthMismatch { m, n });
    }
    let mut finite = Vec::with_capacity(m + n);
    for i in 0..m {
        finite.push(a[i]);
        if i < n {
            finite.push(b[i]);
        }
    }
    if strictly_decreasing(&finite) {
        return Ok(InterlaceClass::FiniteType);
    }
    if n >= 1 && b[0] >= a[0] {
        // a1, then a2 b2 a3 b3 …
        let mut chain = vec![a[0]];
        chain.extend(finite.iter().skip(2));
        if strictly_decreasing(&chain) {
            return Ok(InterlaceClass::InfiniteType1);
        }
    }
    Ok(InterlaceClass::NoPattern)
}

pub fn weyl_order(w: &WeylGroup) -> u64 {
    w.order()
}

/// A subgroup of a signed-permutation group given by generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupDescriptor {
    pub label: String,
    pub rank: usize,
    pub generators: Vec<SignedPermutation>,
}

impl SubgroupDescriptor {
    /// `W(SO(p)) × W(SO(q)) = D_{p/2} × D_{q/2}` inside `D_{(p+q)/2}`.
    pub fn block_diagonal(p: usize, q: usize) -> Self {
        let (k1, k2) = (p / 2, q / 2);
        let m = k1 + k2;
        let mut generators = weyl::block_generators(WeylFamily::D, m, 0, k1);
        generators.extend(weyl::block_generators(WeylFamily::D, m, k1, k2));
        SubgroupDescriptor {
            label: format!("D{k1}xD{k2}"),
            rank: m,
            generators,
        }
    }

    /// `D_{m-1}` on the last `m-1` coordinates: the stabilizer of `e_1`.
    pub fn first_coordinate_stabilizer(m: usize) -> Self {
        SubgroupDescriptor {
            label: format!("D{}", m - 1),
            rank: m,
            generators: weyl::block_generators(WeylFamily::D, m, 1, m - 1),
        }
    }

    pub fn elements(&self) -> Vec<SignedPermutation> {
        weyl::closure(self.rank, &self.generators)
    }

    fn fixes_first_coordinate(&self) -> bool {
        self.generators.iter().all(|g| g.apply_signed(0, 1) == (0, 1))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleCosets {
    pub count: usize,
    /// `|mid / right|`.
    pub coset_space_size: usize,
    /// One element per double coset; the identity coset comes first.
    pub representatives: Vec<SignedPermutation>,
}

/// Signed destination `±e_j` of `e_1` packed as an index in `0..2m`.
fn destination_index(j: usize, sign: i32, m: usize) -> usize {
    if sign > 0 {
        j
    } else {
        m + j
    }
}

/// A fixed element of `W(D_m)` (or `W(B_m)`) sending `e_1` to destination `d`.
fn destination_representative(family: WeylFamily, d: usize, m: usize) -> SignedPermutation {
    let (j, sign) = if d < m { (d, 1) } else { (d - m, -1) };
    match (sign, j) {
        (1, _) => SignedPermutation::transposition(m, 0, j),
        (_, 0) => match family {
            WeylFamily::B => SignedPermutation::sign_change(m, 0),
            WeylFamily::D => {
                SignedPermutation::sign_change(m, 0).compose(&SignedPermutation::sign_change(m, 1))
            }
        },
        _ => SignedPermutation::negated_transposition(m, 0, j),
    }
}

/// `left \ mid / right` when `right` fixes `e_1`: cosets `mid / right` are
/// labelled by the destination of `e_1`, and `left` acts on destinations.
pub fn double_cosets(
    left: &SubgroupDescriptor,
    mid: &WeylGroup,
    right: &SubgroupDescriptor,
) -> Result<DoubleCosets> {
    let m = mid.rank;
    if left.rank != m || right.rank != m {
        return Err(Error::Assumption(format!(
            "subgroups of rank {} and {} inside rank {m}",
            left.rank, right.rank
        )));
    }
    if !right.fixes_first_coordinate() {
        return Err(Error::Assumption("right subgroup must fix e_1".into()));
    }
    if left.generators.iter().chain(&right.generators).any(|g| !mid.contains(g)) {
        return Err(Error::Assumption(format!("generators outside W({:?}{m})", mid.family)));
    }
    // orbit of e_1 under mid, then orbits of left on that set
    let mut in_coset_space = vec![false; 2 * m];
    in_coset_space[destination_index(0, 1, m)] = true;
    let mut stack = vec![destination_index(0, 1, m)];
    let mid_gens = mid.generators();
    let step = |d: usize, g: &SignedPermutation| {
        let (j, s) = if d < m { (d, 1) } else { (d - m, -1) };
        let (j2, s2) = g.apply_signed(j, s);
        destination_index(j2, s2, m)
    };
    while let Some(d) = stack.pop() {
        for g in &mid_gens {
            let next = step(d, g);
            if !std::mem::replace(&mut in_coset_space[next], true) {
                stack.push(next);
            }
        }
    }
    let coset_space_size = in_coset_space.iter().filter(|&&x| x).count();
    let mut orbit_of = vec![usize::MAX; 2 * m];
    let mut representatives = Vec::new();
    for start in (0..2 * m).filter(|&d| in_coset_space[d]) {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = representatives.len();
        representatives.push(destination_representative(mid.family, start, m));
        orbit_of[start] = id;
        let mut stack = vec![start];
        while let Some(d) = stack.pop() {
            for g in &left.generators {
                let next = step(d, g);
                if orbit_of[next] == usize::MAX {
                    orbit_of[next] = id;
                    stack.push(next);
                }
            }
        }
    }
    Ok(DoubleCosets {
        count: representatives.len(),
        coset_space_size,
        representatives,
    })
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// `left \ mid / right` by enumerating every element of `mid` and merging
/// `w ~ l w ~ w r` over generators. No assumption on `right`.
pub fn double_cosets_brute_force(
    left: &SubgroupDescriptor,
    mid: &WeylGroup,
    right: &SubgroupDescriptor,
) -> Result<DoubleCosets> {
    let m = mid.rank;
    if left.rank != m || right.rank != m {
        return Err(Error::Assumption(format!(
            "subgroups of rank {} and {} inside rank {m}",
            left.rank, right.rank
        )));
    }
    // BFS order puts the identity at index 0
    let elements = mid.elements();
    let index: std::collections::HashMap<&SignedPermutation, usize> =
        elements.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let lookup = |w: &SignedPermutation| {
        index
            .get(w)
            .copied()
            .ok_or_else(|| Error::Assumption(format!("{w:?} is not in W({:?}{m})", mid.family)))
    };
    let mut uf = UnionFind((0..elements.len()).collect());
    for (i, w) in elements.iter().enumerate() {
        for l in &left.generators {
            uf.union(i, lookup(&l.compose(w))?);
        }
        for r in &right.generators {
            uf.union(i, lookup(&w.compose(r))?);
        }
    }
    let mut representatives = Vec::new();
    for (i, w) in elements.iter().enumerate() {
        if uf.find(i) == i {
            representatives.push(w.clone());
        }
    }
    let right_order = right.elements().len();
    Ok(DoubleCosets {
        count: representatives.len(),
        coset_space_size: elements.len() / right_order,
        representatives,
    })
}

fn check_packet_assumption(p: usize, q: usize) -> Result<()> {
    if !p.is_multiple_of(2) || !q.is_multiple_of(2) || p < 4 || p > q {
        return Err(Error::Assumption(format!(
            "p, q even with 4 <= p <= q (got p = {p}, q = {q})"
        )));
    }
    Ok(())
}

/// `W(SO(p)×SO(q)) \ W(D_m) / W(D_{m-1})` for the packet of `SO0(p,q)`.
pub fn packet_double_cosets(p: usize, q: usize, brute_force: bool) -> Result<DoubleCosets> {
    check_packet_assumption(p, q)?;
    let m = (p + q) / 2;
    let left = SubgroupDescriptor::block_diagonal(p, q);
    let mid = WeylGroup::new(WeylFamily::D, m)?;
    let right = SubgroupDescriptor::first_coordinate_stabilizer(m);
    if brute_force {
        double_cosets_brute_force(&left, &mid, &right)
    } else {
        double_cosets(&left, &mid, &right)
    }
}

/// The two members of the packet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MemberTag {
    #[serde(rename = "s")]
    S,
    #[serde(rename = "as")]
    As,
}

impl MemberTag {
    pub const ALL: [MemberTag; 2] = [MemberTag::S, MemberTag::As];

    pub fn as_str(self) -> &'static str {
        match self {
            MemberTag::S => "s",
            MemberTag::As => "as",
        }
    }
}

impl fmt::Display for MemberTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PacketMember {
    pub tag: MemberTag,
    pub levi: String,
    pub discrete_spectrum_of: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArthurPacket {
    pub size: usize,
    pub members: Vec<PacketMember>,
    pub double_coset_reps: Vec<SignedPermutation>,
}

/// Packet structure of `SO0(p,q)`; independent of `λ`.
pub fn packet_structure(p: usize, q: usize) -> Result<ArthurPacket> {
    let cosets = packet_double_cosets(p, q, false)?;
    let members = vec![
        PacketMember {
            tag: MemberTag::S,
            levi: format!("SO({},{})xSO(0,2)", p, q - 2),
            discrete_spectrum_of: format!("SO0({},{})/SO0({},{})", p, q, p, q - 1),
        },
        PacketMember {
            tag: MemberTag::As,
            levi: format!("SO(2,0)xSO({},{})", p - 2, q),
            discrete_spectrum_of: format!("SO0({},{})/SO0({},{})", p, q, p - 1, q),
        },
    ];
    Ok(ArthurPacket {
        size: cosets.count,
        members,
        double_coset_reps: cosets.representatives,
    })
}

/// The packet containing `W(λ)`. Only `λ > 0` is required; the harmonic
/// degree plays no role in the coset count.
pub fn arthur_packet(p: usize, q: usize, lambda: HalfInt) -> Result<ArthurPacket> {
    check_packet_assumption(p, q)?;
    if !lambda.is_positive() {
        return Err(Error::invalid("lambda > 0", format!("lambda = {lambda}")));
    }
    packet_structure(p, q)
}

/// Whether the restriction of `member` to `subgroup` is admissible. Fixed data.
pub fn admissibility_table(member: MemberTag, subgroup: Subgroup) -> bool {
    matches!(
        (member, subgroup),
        (MemberTag::S, Subgroup::G1) | (MemberTag::As, Subgroup::G2)
    )
}

/// `SO0(p_sig, q_sig)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RealForm {
    pub p_sig: usize,
    pub q_sig: usize,
}

impl RealForm {
    pub fn new(p_sig: usize, q_sig: usize) -> Self {
        RealForm { p_sig, q_sig }
    }

    pub fn dim(&self) -> usize {
        self.p_sig + self.q_sig
    }

    fn contains(&self, sub: &RealForm) -> bool {
        sub.dim() + 1 == self.dim() && sub.p_sig <= self.p_sig && sub.q_sig <= self.q_sig
    }
}

impl fmt::Display for RealForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SO({},{})", self.p_sig, self.q_sig)
    }
}

/// `SO0(p-2r, q+2r)` and `SO0(p+2s, q-2s)` with non-negative signatures.
pub fn pure_inner_forms(form: RealForm) -> Vec<RealForm> {
    let n = form.dim();
    (0..=n)
        .filter(|&ps| ps % 2 == form.p_sig % 2)
        .map(|ps| RealForm::new(ps, n - ps))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CodimDirection {
    DropP,
    DropQ,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RelevantPair {
    pub sub: RealForm,
    pub amb: RealForm,
}

/// Pairs `(G'_i, G_i)` of pure inner forms of the subgroup family and of the
/// ambient family with `G'_i ⊂ G_i`. Empty if the dropped signature is zero.
pub fn relevant_pairs(g_form: RealForm, direction: CodimDirection) -> Vec<RelevantPair> {
    let sub = match direction {
        CodimDirection::DropP if g_form.p_sig > 0 => RealForm::new(g_form.p_sig - 1, g_form.q_sig),
        CodimDirection::DropQ if g_form.q_sig > 0 => RealForm::new(g_form.p_sig, g_form.q_sig - 1),
        _ => return Vec::new(),
    };
    let subs = pure_inner_forms(sub);
    let mut out = Vec::new();
    for amb in pure_inner_forms(g_form) {
        for s in subs.iter().filter(|s| amb.contains(s)) {
            out.push(RelevantPair { sub: *s, amb });
        }
    }
    out
}

/// Relevant pairs of `g_form` for both directions, one CSV row per pair.
pub fn relevant_pairs_csv(g_form: RealForm) -> String {
    let mut s = String::from("direction,sub_p,sub_q,amb_p,amb_q\n");
    for (dir, name) in [(CodimDirection::DropP, "drop_p"), (CodimDirection::DropQ, "drop_q")] {
        for pr in relevant_pairs(g_form, dir) {
            s.push_str(&format!(
                "{name},{},{},{},{}\n",
                pr.sub.p_sig, pr.sub.q_sig, pr.amb.p_sig, pr.amb.q_sig
            ));
        }
    }
    s
}

/// A non-vanishing predicate `(p, q, λ, target) -> bool` for one member.
pub type MemberPredicate = dyn Fn(usize, usize, HalfInt, HalfInt) -> bool;

fn target_degree(p: usize, q: usize, subgroup: Subgroup, target: HalfInt) -> HalfInt {
    let (ps, qs) = subgroup.signature(p, q);
    harmonic_degree(ps, qs, target)
}

/// Default predicate for the `s` member: `ν = λ + 1/2` on `G1`,
/// `μ + 1/2 <= λ` with target degree `>= 0` on `G2`.
pub fn default_predicate_s(subgroup: Subgroup) -> Box<MemberPredicate> {
    match subgroup {
        Subgroup::G1 => Box::new(|_, _, lambda, nu| nu == lambda + HalfInt::HALF),
        Subgroup::G2 => Box::new(|p, q, lambda, mu| {
            mu + HalfInt::HALF <= lambda && !target_degree(p, q, Subgroup::G2, mu).is_negative()
        }),
    }
}

/// Default predicate for the `as` member: the `s` predicates with the two
/// subgroups exchanged. Model-level only.
pub fn default_predicate_as(subgroup: Subgroup) -> Box<MemberPredicate> {
    match subgroup {
        Subgroup::G1 => Box::new(|p, q, lambda, nu| {
            nu + HalfInt::HALF <= lambda && !target_degree(p, q, Subgroup::G1, nu).is_negative()
        }),
        Subgroup::G2 => Box::new(|_, _, lambda, mu| mu == lambda + HalfInt::HALF),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub p: usize,
    pub q: usize,
    pub lambda_x2: HalfInt,
    pub subgroup: Subgroup,
    pub support_s_x2: Vec<HalfInt>,
    pub support_as_x2: Vec<HalfInt>,
    pub disjoint: bool,
    pub model_level: bool,
}

/// Evaluates both member predicates over `grid` and checks the supports
/// are disjoint.
pub fn conjecture_explore(
    p: usize,
    q: usize,
    lambda: HalfInt,
    subgroup: Subgroup,
    predicate_s: &MemberPredicate,
    predicate_as: &MemberPredicate,
    grid: &[HalfInt],
) -> ConjectureReport {
    let support_s: Vec<HalfInt> = grid.iter().copied().filter(|&t| predicate_s(p, q, lambda, t)).collect();
    let support_as: Vec<HalfInt> =
        grid.iter().copied().filter(|&t| predicate_as(p, q, lambda, t)).collect();
    let disjoint = support_s.iter().all(|t| !support_as.contains(t));
    ConjectureReport {
        p,
        q,
        lambda_x2: lambda,
        subgroup,
        support_s_x2: support_s,
        support_as_x2: support_as,
        disjoint,
        model_level: true,
    }
}

/// `conjecture_explore` with the default predicates.
pub fn conjecture_explore_default(
    p: usize,
    q: usize,
    lambda: HalfInt,
    subgroup: Subgroup,
    grid: &[HalfInt],
) -> ConjectureReport {
    conjecture_explore(
        p,
        q,
        lambda,
        subgroup,
        &*default_predicate_s(subgroup),
        &*default_predicate_as(subgroup),
        grid,
    )
}
