//! Finite causal sites.
//!
//! A [`CausalSite`] is a finite partial order of spacetime points; `x ≼ y`
//! reads "x causally precedes y". Regions are subsets of points, and every
//! past-region construction used by the locality conditions is built from the
//! inclusive causal past `J⁻` and future `J⁺`.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// A set of points of one [`CausalSite`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Region(FixedBitSet);

impl Region {
    pub fn empty(size: usize) -> Self {
        Region(FixedBitSet::with_capacity(size))
    }

    pub fn from_points(size: usize, points: impl IntoIterator<Item = usize>) -> Self {
        let mut bits = FixedBitSet::with_capacity(size);
        for p in points {
            bits.insert(p);
        }
        Region(bits)
    }

    pub fn full(size: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(size);
        bits.insert_range(..);
        Region(bits)
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn count(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn contains(&self, point: usize) -> bool {
        self.0.contains(point)
    }

    pub fn points(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn union(&self, other: &Region) -> Region {
        let mut bits = self.0.clone();
        bits.union_with(&other.0);
        Region(bits)
    }

    pub fn intersection(&self, other: &Region) -> Region {
        let mut bits = self.0.clone();
        bits.intersect_with(&other.0);
        Region(bits)
    }

    pub fn difference(&self, other: &Region) -> Region {
        let mut bits = self.0.clone();
        bits.difference_with(&other.0);
        Region(bits)
    }

    pub fn is_subset(&self, other: &Region) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &Region) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn intersects(&self, other: &Region) -> bool {
        !self.is_disjoint(other)
    }
}

/// A slice: the order-convex region between two antichains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slice {
    lower: Region,
    upper: Region,
    points: Region,
}

impl Slice {
    pub fn lower(&self) -> &Region {
        &self.lower
    }

    pub fn upper(&self) -> &Region {
        &self.upper
    }

    pub fn points(&self) -> &Region {
        &self.points
    }
}

/// Which region plays the role of "the past" for a pair of regions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PastSelector {
    /// `J⁻(a) ∩ J⁻(b)` with the pair removed.
    MutualPast,
    /// `J⁻(a) ∪ J⁻(b)` with the pair removed.
    JointPast,
    PastOfA,
    PastOfB,
    /// The part of a slice blocking both backward light cones.
    SliceBlock(Slice),
    /// The part of a slice interposed between an earlier and a later region.
    SrlaBlock(Slice),
    Custom(Region),
}

impl PastSelector {
    /// Selectors that do not require the pair to be spacelike.
    pub fn allows_timelike(&self) -> bool {
        matches!(self, PastSelector::Custom(_) | PastSelector::SrlaBlock(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            PastSelector::MutualPast => "mutual",
            PastSelector::JointPast => "joint",
            PastSelector::PastOfA => "past-a",
            PastSelector::PastOfB => "past-b",
            PastSelector::SliceBlock(_) => "slice",
            PastSelector::SrlaBlock(_) => "srla",
            PastSelector::Custom(_) => "custom",
        }
    }
}

/// A finite partial order of points.
#[derive(Clone, Debug)]
pub struct CausalSite {
    names: Vec<String>,
    index: HashMap<String, usize>,
    // past[y] = { x : x ≼ y }, future[x] = { y : x ≼ y }; both reflexive.
    past: Vec<FixedBitSet>,
    future: Vec<FixedBitSet>,
}

impl CausalSite {
    /// Builds a site from point names and precedence pairs `(before, after)`.
    /// The reflexive-transitive closure is applied; cycles are rejected.
    pub fn new(names: Vec<String>, relations: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        let mut index = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::Duplicate(name.clone()));
            }
        }
        let mut future: Vec<FixedBitSet> = (0..n)
            .map(|i| {
                let mut row = FixedBitSet::with_capacity(n);
                row.insert(i);
                row
            })
            .collect();
        for &(before, after) in relations {
            if before >= n {
                return Err(Error::PointOutOfRange(before));
            }
            if after >= n {
                return Err(Error::PointOutOfRange(after));
            }
            future[before].insert(after);
        }
        // Warshall closure over bit rows.
        for k in 0..n {
            let via = future[k].clone();
            for row in future.iter_mut() {
                if row.contains(k) {
                    row.union_with(&via);
                }
            }
        }
        for i in 0..n {
            for j in future[i].ones() {
                if i != j && future[j].contains(i) {
                    return Err(Error::NotAntisymmetric(names[i].clone(), names[j].clone()));
                }
            }
        }
        let mut past: Vec<FixedBitSet> = (0..n).map(|_| FixedBitSet::with_capacity(n)).collect();
        for (i, row) in future.iter().enumerate() {
            for j in row.ones() {
                past[j].insert(i);
            }
        }
        Ok(CausalSite {
            names,
            index,
            past,
            future,
        })
    }

    /// Same as [`CausalSite::new`] with relations given by point name.
    pub fn from_named<S: AsRef<str>>(names: &[S], relations: &[(S, S)]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let lookup: HashMap<&str, usize> = names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let find = |s: &str| lookup.get(s).copied().ok_or_else(|| Error::UnknownPoint(s.to_string()));
        let pairs = relations
            .iter()
            .map(|(a, b)| Ok((find(a.as_ref())?, find(b.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        CausalSite::new(names, &pairs)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, point: usize) -> &str {
        &self.names[point]
    }

    pub fn point(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownPoint(name.to_string()))
    }

    /// `x ≼ y`.
    pub fn precedes(&self, x: usize, y: usize) -> bool {
        self.future[x].contains(y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.precedes(x, y) || self.precedes(y, x)
    }

    /// Covering pairs of the order (its Hasse diagram), in point order.
    pub fn covering_relations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.len() {
            for y in self.future[x].ones() {
                if x == y {
                    continue;
                }
                let covered = self.future[x].ones().any(|z| z != x && z != y && self.precedes(z, y));
                if !covered {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn region<S: AsRef<str>>(&self, names: &[S]) -> Result<Region> {
        let points = names
            .iter()
            .map(|s| self.point(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Region::from_points(self.len(), points))
    }

    pub fn empty_region(&self) -> Region {
        Region::empty(self.len())
    }

    pub fn full_region(&self) -> Region {
        Region::full(self.len())
    }

    fn check(&self, r: &Region) -> Result<()> {
        if r.size() != self.len() {
            return Err(Error::PointOutOfRange(r.size()));
        }
        Ok(())
    }

    /// Renders a region as `{p,q,...}` using point names.
    pub fn describe(&self, r: &Region) -> String {
        let names: Vec<&str> = r.points().map(|p| self.name(p)).collect();
        format!("{{{}}}", names.join(","))
    }

    /// Inclusive causal past `J⁻(r)`.
    pub fn causal_past(&self, r: &Region) -> Result<Region> {
        self.check(r)?;
        let mut bits = FixedBitSet::with_capacity(self.len());
        for p in r.points() {
            bits.union_with(&self.past[p]);
        }
        Ok(Region(bits))
    }

    /// Inclusive causal future `J⁺(r)`.
    pub fn causal_future(&self, r: &Region) -> Result<Region> {
        self.check(r)?;
        let mut bits = FixedBitSet::with_capacity(self.len());
        for p in r.points() {
            bits.union_with(&self.future[p]);
        }
        Ok(Region(bits))
    }

    /// True iff no point of `a` is comparable to any point of `b`.
    pub fn spacelike(&self, a: &Region, b: &Region) -> Result<bool> {
        self.check(a)?;
        self.check(b)?;
        if a.is_empty() || b.is_empty() {
            return Err(Error::EmptyRegion);
        }
        let cone = self.causal_past(b)?.union(&self.causal_future(b)?);
        Ok(a.is_disjoint(&cone))
    }

    pub fn is_antichain(&self, r: &Region) -> Option<(usize, usize)> {
        let pts: Vec<usize> = r.points().collect();
        for (i, &x) in pts.iter().enumerate() {
            for &y in &pts[i + 1..] {
                if self.comparable(x, y) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// Builds the slice between two antichains.
    pub fn slice(&self, lower: Region, upper: Region) -> Result<Slice> {
        self.check(&lower)?;
        self.check(&upper)?;
        for boundary in [&lower, &upper] {
            if let Some((x, y)) = self.is_antichain(boundary) {
                return Err(Error::NotAntichain(self.name(x).into(), self.name(y).into()));
            }
        }
        let points = self.causal_future(&lower)?.intersection(&self.causal_past(&upper)?);
        Ok(Slice { lower, upper, points })
    }

    fn check_slice(&self, s: &Slice) -> Result<()> {
        self.check(&s.points)?;
        let rebuilt = self.slice(s.lower.clone(), s.upper.clone())?;
        if rebuilt.points != s.points {
            return Err(Error::InvalidArgument("slice is not well-formed for this site".into()));
        }
        Ok(())
    }

    /// The past region the selector picks for the pair `(a, b)`.
    pub fn resolve_past(&self, a: &Region, b: &Region, sel: &PastSelector) -> Result<Region> {
        self.check(a)?;
        self.check(b)?;
        let pair = a.union(b);
        if !sel.allows_timelike() && !self.spacelike(a, b)? {
            return Err(Error::NotSpacelike(self.describe(a), self.describe(b)));
        }
        let past_a = self.causal_past(a)?;
        let past_b = self.causal_past(b)?;
        let region = match sel {
            PastSelector::MutualPast => past_a.intersection(&past_b),
            PastSelector::JointPast => past_a.union(&past_b),
            PastSelector::PastOfA => past_a,
            PastSelector::PastOfB => past_b,
            PastSelector::SliceBlock(s) => {
                self.check_slice(s)?;
                s.points.intersection(&past_a.union(&past_b))
            }
            PastSelector::SrlaBlock(s) => return self.srla_region(a, b, s),
            PastSelector::Custom(r) => {
                self.check(r)?;
                r.clone()
            }
        };
        Ok(region.difference(&pair))
    }

    /// `s ∩ J⁺(x) ∩ J⁻(y) \ (x ∪ y)` for `x` entirely in the past of `y`.
    pub fn srla_region(&self, x: &Region, y: &Region, s: &Slice) -> Result<Region> {
        self.check(x)?;
        self.check(y)?;
        self.check_slice(s)?;
        self.require_in_past(x, y)?;
        let between = self.causal_future(x)?.intersection(&self.causal_past(y)?);
        Ok(s.points.intersection(&between).difference(&x.union(y)))
    }

    /// Errors unless `x ∩ y = ∅` and every point of `x` precedes some point of `y`.
    pub fn require_in_past(&self, x: &Region, y: &Region) -> Result<()> {
        let past_y = self.causal_past(y)?;
        for p in x.points() {
            if y.contains(p) {
                return Err(Error::Overlap(self.name(p).to_string()));
            }
            if !past_y.contains(p) {
                return Err(Error::NotInPast(self.name(p).to_string()));
            }
        }
        Ok(())
    }

    pub fn entirely_in_past(&self, x: &Region, y: &Region) -> bool {
        self.require_in_past(x, y).is_ok()
    }

    /// True iff every causal chain from `x` to `y` passes through `d`:
    /// walking covering relations upward from `x` while avoiding `d` never
    /// reaches `y`.
    pub fn blocks(&self, d: &Region, x: &Region, y: &Region) -> bool {
        let n = self.len();
        let mut seen = FixedBitSet::with_capacity(n);
        let mut stack: Vec<usize> = x.points().collect();
        for &p in &stack {
            seen.insert(p);
        }
        while let Some(p) = stack.pop() {
            for q in self.future[p].ones() {
                if q == p || seen.contains(q) || d.contains(q) {
                    continue;
                }
                let covers = !self.future[p].ones().any(|z| z != p && z != q && self.precedes(z, q));
                if !covers {
                    continue;
                }
                if y.contains(q) {
                    return false;
                }
                seen.insert(q);
                stack.push(q);
            }
        }
        true
    }
}

impl fmt::Display for CausalSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self
            .covering_relations()
            .into_iter()
            .map(|(a, b)| format!("{}≺{}", self.name(a), self.name(b)))
            .collect();
        write!(f, "site[{}; {}]", self.names.join(","), rels.join(" "))
    }
}
