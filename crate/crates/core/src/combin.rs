//! Allowed pairs (I, I'), the tree of successors, partitions and admissible sets.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

/// Largest supported `n`; subsets are stored in a `u32`.
pub const MAX_N: usize = 31;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CombinError {
    #[error("not an allowed pair: {0}")]
    NotAllowed(String),
    #[error("pair is saturated and has no successors")]
    SaturatedPair,
    #[error("n = {0} is outside the supported range 1..={MAX_N}")]
    BadN(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

/// A subset of {1, …, 31}; bit q-1 encodes membership of q.
#[derive(Copy, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct Subset(u32);

impl Subset {
    pub const fn empty() -> Self {
        Subset(0)
    }

    pub const fn from_bits(bits: u32) -> Self {
        Subset(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn from_slice(elems: &[usize]) -> Self {
        elems.iter().fold(Subset(0), |s, &q| s.with(q))
    }

    /// `[a, b]`, empty when a > b.
    pub fn interval(a: usize, b: usize) -> Self {
        (a.max(1)..=b).fold(Subset(0), |s, q| s.with(q))
    }

    pub fn contains(self, q: usize) -> bool {
        (1..=32).contains(&q) && self.0 >> (q - 1) & 1 == 1
    }

    pub fn with(self, q: usize) -> Self {
        assert!((1..=MAX_N).contains(&q), "element {q} out of range");
        Subset(self.0 | 1 << (q - 1))
    }

    pub fn without(self, q: usize) -> Self {
        if (1..=MAX_N).contains(&q) {
            Subset(self.0 & !(1 << (q - 1)))
        } else {
            self
        }
    }

    pub fn union(self, o: Subset) -> Self {
        Subset(self.0 | o.0)
    }

    pub fn intersection(self, o: Subset) -> Self {
        Subset(self.0 & o.0)
    }

    pub fn minus(self, o: Subset) -> Self {
        Subset(self.0 & !o.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 32 - self.0.leading_zeros() as usize)
    }

    /// Elements in increasing order.
    pub fn iter(self) -> impl DoubleEndedIterator<Item = usize> {
        (1..=32).filter(move |&q| self.contains(q))
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn sum(self) -> usize {
        self.iter().sum()
    }

    /// Parses `"1,3,5"`; the empty string is the empty set.
    pub fn parse(s: &str) -> Result<Self, CombinError> {
        let s = s.trim().trim_start_matches('{').trim_end_matches('}');
        let mut out = Subset::empty();
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let q: usize = tok.parse().map_err(|_| CombinError::Parse(format!("bad element {tok:?}")))?;
            if !(1..=MAX_N).contains(&q) {
                return Err(CombinError::Parse(format!("element {q} out of range")));
            }
            out = out.with(q);
        }
        Ok(out)
    }
}

impl From<Subset> for Vec<usize> {
    fn from(s: Subset) -> Self {
        s.to_vec()
    }
}

impl TryFrom<Vec<usize>> for Subset {
    type Error = CombinError;
    fn try_from(v: Vec<usize>) -> Result<Self, CombinError> {
        if let Some(&q) = v.iter().find(|&&q| !(1..=MAX_N).contains(&q)) {
            return Err(CombinError::Parse(format!("element {q} out of range")));
        }
        Ok(Subset::from_slice(&v))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|q| q.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Which clause of the definition of allowed pairs holds.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PairCase {
    /// I ∪ I' = [n-1].
    Saturated,
    /// (∅, ∅).
    Empty,
    /// (∅, {j}) with j ≤ n-2.
    Single,
    /// k ∈ I' and I ∪ I' = [k, n-1].
    Tail,
    /// j, k ∈ I', j ≤ k-2 and I ∪ I' = {j} ∪ [k, n-1].
    GappedTail,
}

/// An allowed pair together with its invariants j and k.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AllowedPair {
    n: usize,
    i: Subset,
    ip: Subset,
    j: usize,
    k: usize,
}

pub fn validate_pair(n: usize, i: Subset, ip: Subset) -> Result<AllowedPair, CombinError> {
    if n == 0 || n > MAX_N {
        return Err(CombinError::BadN(n));
    }
    let range = Subset::interval(1, n - 1);
    if !i.minus(range).is_empty() || !ip.minus(range).is_empty() {
        return Err(CombinError::NotAllowed(format!("I and I' must be subsets of [1,{}]", n - 1)));
    }
    if !i.intersection(ip).is_empty() {
        return Err(CombinError::NotAllowed(format!("I and I' intersect in {}", i.intersection(ip))));
    }
    let u = i.union(ip);
    let (j, k) = if u == range {
        (0, 1)
    } else if u.is_empty() {
        (0, n)
    } else {
        let lo = u.min().unwrap();
        if u == Subset::interval(lo, n - 1) {
            if !ip.contains(lo) {
                return Err(CombinError::NotAllowed(format!("min(I ∪ I') = {lo} lies in I")));
            }
            (0, lo)
        } else if i.is_empty() && ip.len() == 1 {
            (lo, n)
        } else {
            let rest = u.without(lo);
            let k = rest.min().unwrap_or(n);
            if rest.is_empty() || rest != Subset::interval(k, n - 1) {
                return Err(CombinError::NotAllowed(
                    "I ∪ I' is not of the form [k,n-1] or {j} ∪ [k,n-1]".to_string(),
                ));
            }
            if !ip.contains(lo) || !ip.contains(k) {
                return Err(CombinError::NotAllowed(format!("j = {lo} and k = {k} must both lie in I'")));
            }
            if lo + 2 > k {
                return Err(CombinError::NotAllowed(format!("j = {lo} must be at most k - 2 = {}", k - 2)));
            }
            (lo, k)
        }
    };
    Ok(AllowedPair { n, i, ip, j, k })
}

impl AllowedPair {
    /// The root (∅, ∅) of the tree.
    pub fn root(n: usize) -> Self {
        validate_pair(n, Subset::empty(), Subset::empty()).expect("root is allowed")
    }

    /// Parses `"I;I'"`, for example `"4,6,7;1,3,5"`.
    pub fn parse(n: usize, s: &str) -> Result<Self, CombinError> {
        let (a, b) = s
            .split_once(';')
            .ok_or_else(|| CombinError::Parse(format!("pair {s:?} must have the form \"I;I'\"")))?;
        validate_pair(n, Subset::parse(a)?, Subset::parse(b)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn i(&self) -> Subset {
        self.i
    }
    pub fn iprime(&self) -> Subset {
        self.ip
    }
    pub fn j(&self) -> usize {
        self.j
    }
    pub fn k(&self) -> usize {
        self.k
    }
    pub fn s(&self) -> usize {
        self.i.len()
    }
    pub fn s_prime(&self) -> usize {
        self.ip.len()
    }

    pub fn is_saturated(&self) -> bool {
        self.i.union(self.ip) == Subset::interval(1, self.n - 1)
    }

    pub fn case(&self) -> PairCase {
        if self.is_saturated() {
            PairCase::Saturated
        } else if self.i.union(self.ip).is_empty() {
            PairCase::Empty
        } else if self.k == self.n {
            PairCase::Single
        } else if self.j == 0 {
            PairCase::Tail
        } else {
            PairCase::GappedTail
        }
    }

    /// ℓ(I, I') = (I, (I' ∖ {j}) ∪ {j+1}).
    pub fn left_child(&self) -> Result<AllowedPair, CombinError> {
        if self.is_saturated() {
            return Err(CombinError::SaturatedPair);
        }
        let ip = self.ip.without(self.j).with(self.j + 1);
        Ok(validate_pair(self.n, self.i, ip).expect("left successor is allowed"))
    }

    /// r(I, I') = ([j+1, k-1] ∪ I, I').
    pub fn right_child(&self) -> Result<AllowedPair, CombinError> {
        if self.is_saturated() {
            return Err(CombinError::SaturatedPair);
        }
        let i = Subset::interval(self.j + 1, self.k - 1).union(self.i);
        Ok(validate_pair(self.n, i, self.ip).expect("right successor is allowed"))
    }

    pub fn partitions(&self) -> PartitionData {
        PartitionData::new(self.n, self.i)
    }

    pub fn partitions_prime(&self) -> PartitionData {
        PartitionData::new(self.n, self.ip)
    }

    /// `"I;I'"` in the syntax accepted by [`AllowedPair::parse`].
    pub fn label(&self) -> String {
        let f = |s: Subset| s.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(",");
        format!("{};{}", f(self.i), f(self.ip))
    }

    pub fn to_json(&self) -> Value {
        json!({"n": self.n, "I": self.i.to_vec(), "Iprime": self.ip.to_vec()})
    }
}

impl fmt::Debug for AllowedPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.ip)
    }
}

impl fmt::Display for AllowedPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.ip)
    }
}

impl Serialize for AllowedPair {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// λ = elements of a subset of [n-1] in decreasing order, and the complementary μ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionData {
    pub n: usize,
    /// λ_1 > … > λ_s.
    pub lambda: Vec<usize>,
    /// μ_{s+1} > … > μ_n, stored from index 0.
    pub mu: Vec<usize>,
}

impl PartitionData {
    pub fn new(n: usize, set: Subset) -> Self {
        let lambda: Vec<usize> = set.iter().rev().collect();
        let removed: BTreeSet<usize> = lambda.iter().map(|&l| n - l).collect();
        let mu = (0..n).rev().filter(|v| !removed.contains(v)).collect();
        PartitionData { n, lambda, mu }
    }

    pub fn s(&self) -> usize {
        self.lambda.len()
    }

    /// λ_h for 1 ≤ h ≤ s.
    pub fn lambda_at(&self, h: usize) -> usize {
        self.lambda[h - 1]
    }

    /// μ_h for s < h ≤ n.
    pub fn mu_at(&self, h: usize) -> usize {
        self.mu[h - self.s() - 1]
    }
}

/// w(I) = λ_1 + … + λ_s.
pub fn codim_w(set: Subset) -> usize {
    set.sum()
}

/// A node of the successor tree; leaves are exactly the saturated pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeNode {
    pub pair: AllowedPair,
    pub left: Option<Box<TreeNode>>,
    pub right: Option<Box<TreeNode>>,
}

impl TreeNode {
    pub fn node_count(&self) -> usize {
        1 + self.left.as_ref().map_or(0, |c| c.node_count()) + self.right.as_ref().map_or(0, |c| c.node_count())
    }

    /// Leaves with their paths from the root, written over {L, R}, left to right.
    pub fn leaves(&self) -> Vec<(String, AllowedPair)> {
        let mut out = Vec::new();
        self.walk(&mut String::new(), &mut |path, node| {
            if node.left.is_none() {
                out.push((path.to_string(), node.pair));
            }
        });
        out
    }

    /// All nodes in preorder with their paths.
    pub fn nodes(&self) -> Vec<(String, AllowedPair)> {
        let mut out = Vec::new();
        self.walk(&mut String::new(), &mut |path, node| out.push((path.to_string(), node.pair)));
        out
    }

    fn walk(&self, path: &mut String, f: &mut impl FnMut(&str, &TreeNode)) {
        f(path, self);
        for (tag, child) in [('L', &self.left), ('R', &self.right)] {
            if let Some(c) = child {
                path.push(tag);
                c.walk(path, f);
                path.pop();
            }
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({"pair": self.pair.to_json(), "j": self.pair.j(), "k": self.pair.k()});
        if let (Some(l), Some(r)) = (&self.left, &self.right) {
            v["left"] = l.to_json();
            v["right"] = r.to_json();
        }
        v
    }
}

fn build_tree(pair: AllowedPair) -> TreeNode {
    if pair.is_saturated() {
        return TreeNode { pair, left: None, right: None };
    }
    let l = pair.left_child().expect("not saturated");
    let r = pair.right_child().expect("not saturated");
    TreeNode { pair, left: Some(Box::new(build_tree(l))), right: Some(Box::new(build_tree(r))) }
}

pub fn enumerate_tree(n: usize) -> Result<TreeNode, CombinError> {
    if n == 0 || n > MAX_N {
        return Err(CombinError::BadN(n));
    }
    Ok(build_tree(AllowedPair::root(n)))
}

/// Path from the root of the tree to `target`, over {L, R}.
pub fn path_to(target: &AllowedPair) -> Option<String> {
    let mut node = AllowedPair::root(target.n());
    let mut path = String::new();
    loop {
        if node == *target {
            return Some(path);
        }
        if node.is_saturated() {
            return None;
        }
        // Right moves add [j+1, k-1] to I, and j+1 then never enters I'.
        let r = node.right_child().ok()?;
        if r.i().minus(target.i()).is_empty() {
            path.push('R');
            node = r;
        } else {
            path.push('L');
            node = node.left_child().ok()?;
        }
        if !node.i().minus(target.i()).is_empty() {
            return None;
        }
    }
}

/// Admissible subset of [n] ∪ [n̄], stored as disjoint positive and negative masks.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdmissibleSet {
    n: usize,
    pos: Subset,
    neg: Subset,
}

impl AdmissibleSet {
    pub fn new(n: usize, pos: Subset, neg: Subset) -> Option<Self> {
        let range = Subset::interval(1, n);
        (pos.intersection(neg).is_empty() && pos.minus(range).is_empty() && neg.minus(range).is_empty())
            .then_some(AdmissibleSet { n, pos, neg })
    }

    pub fn empty(n: usize) -> Self {
        AdmissibleSet { n, pos: Subset::empty(), neg: Subset::empty() }
    }

    /// Sign vector ε with ε_q ∈ {-1, 0, 1}.
    pub fn from_signs(signs: &[i8]) -> Option<Self> {
        let mut pos = Subset::empty();
        let mut neg = Subset::empty();
        for (idx, &e) in signs.iter().enumerate() {
            match e {
                1 => pos = pos.with(idx + 1),
                -1 => neg = neg.with(idx + 1),
                0 => {}
                _ => return None,
            }
        }
        Some(AdmissibleSet { n: signs.len(), pos, neg })
    }

    /// The maximal set with positive part T and negative part [n] ∖ T.
    pub fn from_t(n: usize, t: Subset) -> Self {
        AdmissibleSet { n, pos: t, neg: Subset::interval(1, n).minus(t) }
    }

    pub fn parse(s: &str) -> Option<Self> {
        let signs: Option<Vec<i8>> = s
            .chars()
            .map(|c| match c {
                '+' => Some(1),
                '-' => Some(-1),
                '0' => Some(0),
                _ => None,
            })
            .collect();
        Self::from_signs(&signs?)
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn pos(&self) -> Subset {
        self.pos
    }
    pub fn neg(&self) -> Subset {
        self.neg
    }

    pub fn sign(&self, q: usize) -> i8 {
        if self.pos.contains(q) {
            1
        } else if self.neg.contains(q) {
            -1
        } else {
            0
        }
    }

    pub fn signs(&self) -> Vec<i8> {
        (1..=self.n).map(|q| self.sign(q)).collect()
    }

    pub fn len(&self) -> usize {
        self.pos.len() + self.neg.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_maximal(&self) -> bool {
        self.len() == self.n
    }

    /// Positive part of a maximal set.
    pub fn t_subset(&self) -> Subset {
        self.pos
    }

    pub fn intersection(&self, o: &AdmissibleSet) -> AdmissibleSet {
        AdmissibleSet { n: self.n, pos: self.pos.intersection(o.pos), neg: self.neg.intersection(o.neg) }
    }

    /// `{a ∈ S1 ∪ S2 : ā ∉ S1 ∪ S2}`.
    pub fn disjoint_union(&self, o: &AdmissibleSet) -> AdmissibleSet {
        let pos = self.pos.union(o.pos);
        let neg = self.neg.union(o.neg);
        AdmissibleSet { n: self.n, pos: pos.minus(neg), neg: neg.minus(pos) }
    }

    /// Adds q (sign +1) or q̄ (sign -1); `None` if that breaks admissibility.
    pub fn with(&self, q: usize, sign: i8) -> Option<AdmissibleSet> {
        let (pos, neg) = match sign {
            1 => (self.pos.with(q), self.neg),
            -1 => (self.pos, self.neg.with(q)),
            _ => return Some(*self),
        };
        AdmissibleSet::new(self.n, pos, neg)
    }

    /// `|S ∩ S'|`.
    pub fn common(&self, o: &AdmissibleSet) -> usize {
        self.intersection(o).len()
    }

    pub fn sign_string(&self) -> String {
        self.signs()
            .iter()
            .map(|&e| match e {
                1 => '+',
                -1 => '-',
                _ => '0',
            })
            .collect()
    }

    /// Elements written as `1,2,4b` with `b` marking barred indices, in column order.
    pub fn element_string(&self) -> String {
        let mut parts: Vec<String> = self.pos.iter().map(|q| q.to_string()).collect();
        parts.extend(self.neg.iter().rev().map(|q| format!("{q}b")));
        format!("{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for AdmissibleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.sign_string())
    }
}

impl fmt::Display for AdmissibleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.sign_string())
    }
}

impl Serialize for AdmissibleSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.sign_string())
    }
}

/// All 3^n admissible sets (including ∅), or the 2^n maximal ones.
pub fn enumerate_admissible(n: usize, maximal_only: bool) -> Vec<AdmissibleSet> {
    let full = Subset::interval(1, n);
    if maximal_only {
        return (0..1u32 << n).map(|t| AdmissibleSet::from_t(n, Subset::from_bits(t))).collect();
    }
    let mut out = Vec::with_capacity(3usize.pow(n as u32));
    for support in 0..1u32 << n {
        let support = Subset::from_bits(support);
        let mut sub = support.bits();
        loop {
            let pos = Subset::from_bits(sub);
            out.push(AdmissibleSet { n, pos, neg: support.minus(pos) });
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & support.bits();
        }
    }
    debug_assert!(out.iter().all(|s| s.pos.union(s.neg).minus(full).is_empty()));
    out
}
