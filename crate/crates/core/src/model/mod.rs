//! Stochastic processes on a causal site.
//!
//! A [`Model`] bundles a finite history space Ω, a finite family of regions
//! (the [`RegionUniverse`]), homed generator events presenting the
//! region-to-algebra assignment, and an exact rational measure.
//!
//! The assignment is `Σ(R) = G({g.event : g.home ⊆ R})`. That presentation is
//! monotone by construction but does not by itself satisfy the intersection
//! axiom, so the localised-events conditions are checked, not assumed; see
//! [`axioms`].

pub mod algebra;
pub mod axioms;

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use algebra::Algebra;
pub use axioms::{check_localised_axioms, check_separability, check_separability_universe};

use crate::causal::{CausalSite, Region, Slice};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// A set of histories.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Event(FixedBitSet);

impl Event {
    pub fn empty(n: usize) -> Event {
        Event(FixedBitSet::with_capacity(n))
    }

    pub fn full(n: usize) -> Event {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        Event(bits)
    }

    pub fn from_members(n: usize, members: impl IntoIterator<Item = usize>) -> Event {
        let mut e = Event::empty(n);
        for h in members {
            e.insert(h);
        }
        e
    }

    pub fn from_fn(n: usize, pred: impl Fn(usize) -> bool) -> Event {
        Event::from_members(n, (0..n).filter(|&h| pred(h)))
    }

    pub(crate) fn insert(&mut self, h: usize) {
        self.0.insert(h);
    }

    pub fn universe_size(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, h: usize) -> bool {
        self.0.contains(h)
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn count(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn complement(&self) -> Event {
        let mut bits = self.0.clone();
        bits.toggle_range(..);
        Event(bits)
    }

    pub fn union(&self, other: &Event) -> Event {
        let mut bits = self.0.clone();
        bits.union_with(&other.0);
        Event(bits)
    }

    pub fn intersection(&self, other: &Event) -> Event {
        let mut bits = self.0.clone();
        bits.intersect_with(&other.0);
        Event(bits)
    }

    pub fn is_subset(&self, other: &Event) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &Event) -> bool {
        self.0.is_disjoint(&other.0)
    }

    /// `[e, ē]`: the two values of the variable an event defines.
    pub fn values(&self) -> [Event; 2] {
        [self.clone(), self.complement()]
    }
}

/// A generator event with the region it is associated to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub event: Event,
    pub home: Region,
    /// Name of the declared region the generator is homed on.
    pub home_name: String,
    /// Declared non-separable: homed on a region it does not decompose over.
    pub nonseparable: bool,
}

/// Input description of a generator, referring to its home by region name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub name: String,
    pub event: Event,
    pub home: String,
    pub nonseparable: bool,
}

/// One region of the universe, with any declared names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniverseRegion {
    pub region: Region,
    pub names: Vec<String>,
    pub declared: bool,
}

/// A finite family of regions closed under pairwise union and intersection,
/// always containing ∅ and the whole site.
#[derive(Clone, Debug)]
pub struct RegionUniverse {
    entries: Vec<UniverseRegion>,
    by_region: HashMap<Region, usize>,
    by_name: BTreeMap<String, usize>,
}

impl RegionUniverse {
    pub fn closed(site: &CausalSite, declared: &[(String, Region)]) -> Result<RegionUniverse> {
        let mut u = RegionUniverse {
            entries: Vec::new(),
            by_region: HashMap::new(),
            by_name: BTreeMap::new(),
        };
        for (name, region) in declared {
            if region.size() != site.len() {
                return Err(Error::PointOutOfRange(region.size()));
            }
            if u.by_name.contains_key(name) {
                return Err(Error::Duplicate(name.clone()));
            }
            let idx = u.add(region.clone(), true);
            u.entries[idx].names.push(name.clone());
            u.by_name.insert(name.clone(), idx);
        }
        u.add(site.empty_region(), false);
        u.add(site.full_region(), false);
        let mut frontier = 0;
        while frontier < u.entries.len() {
            let end = u.entries.len();
            for i in 0..end {
                for j in frontier.max(i)..end {
                    let (a, b) = (&u.entries[i].region, &u.entries[j].region);
                    let (cup, cap) = (a.union(b), a.intersection(b));
                    u.add(cup, false);
                    u.add(cap, false);
                }
            }
            frontier = end;
        }
        Ok(u)
    }

    fn add(&mut self, region: Region, declared: bool) -> usize {
        if let Some(&idx) = self.by_region.get(&region) {
            self.entries[idx].declared |= declared;
            return idx;
        }
        let idx = self.entries.len();
        self.by_region.insert(region.clone(), idx);
        self.entries.push(UniverseRegion {
            region,
            names: Vec::new(),
            declared,
        });
        idx
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[UniverseRegion] {
        &self.entries
    }

    pub fn region(&self, idx: usize) -> &Region {
        &self.entries[idx].region
    }

    pub fn regions(&self) -> impl Iterator<Item = &Region> {
        self.entries.iter().map(|e| &e.region)
    }

    pub fn index_of(&self, region: &Region) -> Option<usize> {
        self.by_region.get(region).copied()
    }

    pub fn contains(&self, region: &Region) -> bool {
        self.by_region.contains_key(region)
    }

    pub fn named(&self, name: &str) -> Result<&Region> {
        self.by_name
            .get(name)
            .map(|&i| &self.entries[i].region)
            .ok_or_else(|| Error::UnknownRegion(name.to_string()))
    }

    pub fn name_of(&self, region: &Region) -> Option<&str> {
        self.index_of(region)
            .and_then(|i| self.entries[i].names.first())
            .map(String::as_str)
    }

    /// Regions added by the closure rather than declared.
    pub fn closure_added(&self) -> impl Iterator<Item = &Region> {
        self.entries.iter().filter(|e| !e.declared).map(|e| &e.region)
    }
}

/// A finite stochastic process on a causal site.
#[derive(Debug)]
pub struct Model {
    site: CausalSite,
    histories: Vec<String>,
    history_index: HashMap<String, usize>,
    declared_regions: Vec<(String, Region)>,
    universe: RegionUniverse,
    generators: Vec<Generator>,
    measure: Vec<Rational>,
    slices: BTreeMap<String, Slice>,
    // measure as integers over a common denominator
    weights: Vec<BigInt>,
    denominator: BigInt,
    universe_algebras: OnceLock<Vec<Algebra>>,
}

impl Clone for Model {
    fn clone(&self) -> Self {
        Model {
            site: self.site.clone(),
            histories: self.histories.clone(),
            history_index: self.history_index.clone(),
            declared_regions: self.declared_regions.clone(),
            universe: self.universe.clone(),
            generators: self.generators.clone(),
            measure: self.measure.clone(),
            slices: self.slices.clone(),
            weights: self.weights.clone(),
            denominator: self.denominator.clone(),
            universe_algebras: OnceLock::new(),
        }
    }
}

impl Model {
    pub fn new(
        site: CausalSite,
        histories: Vec<String>,
        regions: Vec<(String, Region)>,
        generators: Vec<GeneratorSpec>,
        measure: Vec<Rational>,
        slices: Vec<(String, Slice)>,
    ) -> Result<Model> {
        if histories.is_empty() {
            return Err(Error::EmptyHistorySpace);
        }
        let mut history_index = HashMap::with_capacity(histories.len());
        for (i, h) in histories.iter().enumerate() {
            if history_index.insert(h.clone(), i).is_some() {
                return Err(Error::Duplicate(h.clone()));
            }
        }
        let n = histories.len();
        if measure.len() != n {
            return Err(Error::Format(format!(
                "measure has {} entries for {} histories",
                measure.len(),
                n
            )));
        }
        for (h, m) in histories.iter().zip(&measure) {
            if m.is_negative() {
                return Err(Error::NegativeMeasure(h.clone(), rational::format(m)));
            }
        }
        let total: Rational = measure.iter().sum();
        if !total.is_one() {
            return Err(Error::MeasureNotNormalized(rational::format(&total)));
        }
        let universe = RegionUniverse::closed(&site, &regions)?;
        let mut gens = Vec::with_capacity(generators.len());
        let mut seen = HashMap::new();
        for g in generators {
            if seen.insert(g.name.clone(), ()).is_some() {
                return Err(Error::Duplicate(g.name));
            }
            if g.event.universe_size() != n {
                return Err(Error::Format(format!("generator `{}` has wrong event size", g.name)));
            }
            let home = universe.named(&g.home)?.clone();
            gens.push(Generator {
                name: g.name,
                event: g.event,
                home,
                home_name: g.home,
                nonseparable: g.nonseparable,
            });
        }
        let mut slice_map = BTreeMap::new();
        for (name, s) in slices {
            if s.points().size() != site.len() {
                return Err(Error::PointOutOfRange(s.points().size()));
            }
            if slice_map.insert(name.clone(), s).is_some() {
                return Err(Error::Duplicate(name));
            }
        }
        let denominator = measure.iter().fold(BigInt::one(), |acc, m| acc.lcm(m.denom()));
        let weights = measure.iter().map(|m| m.numer() * (&denominator / m.denom())).collect();
        Ok(Model {
            site,
            histories,
            history_index,
            declared_regions: regions,
            universe,
            generators: gens,
            measure,
            slices: slice_map,
            weights,
            denominator,
            universe_algebras: OnceLock::new(),
        })
    }

    pub fn site(&self) -> &CausalSite {
        &self.site
    }

    pub fn histories(&self) -> &[String] {
        &self.histories
    }

    pub fn history_count(&self) -> usize {
        self.histories.len()
    }

    pub fn history(&self, name: &str) -> Result<usize> {
        self.history_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownHistory(name.to_string()))
    }

    pub fn universe(&self) -> &RegionUniverse {
        &self.universe
    }

    pub fn declared_regions(&self) -> &[(String, Region)] {
        &self.declared_regions
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Result<&Generator> {
        self.generators
            .iter()
            .find(|g| g.name == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn measure(&self) -> &[Rational] {
        &self.measure
    }

    pub fn slices(&self) -> &BTreeMap<String, Slice> {
        &self.slices
    }

    pub fn slice(&self, name: &str) -> Result<&Slice> {
        self.slices
            .get(name)
            .ok_or_else(|| Error::UnknownSlice(name.to_string()))
    }

    pub fn region(&self, name: &str) -> Result<&Region> {
        self.universe.named(name)
    }

    /// Human-readable region label: a declared name if there is one,
    /// otherwise the point list.
    pub fn region_label(&self, r: &Region) -> String {
        match self.universe.name_of(r) {
            Some(name) => name.to_string(),
            None => self.site.describe(r),
        }
    }

    pub fn omega(&self) -> Event {
        Event::full(self.histories.len())
    }

    pub fn event<S: AsRef<str>>(&self, members: &[S]) -> Result<Event> {
        let idx = members
            .iter()
            .map(|m| self.history(m.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Event::from_members(self.histories.len(), idx))
    }

    pub fn describe_event(&self, e: &Event) -> String {
        let names: Vec<&str> = e.members().map(|h| self.histories[h].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }

    // --- measure -----------------------------------------------------------

    /// Unnormalized integer mass of an event (numerator over the common
    /// denominator of the measure). Two events compare in probability exactly
    /// as their masses compare.
    pub fn mass(&self, e: &Event) -> BigInt {
        e.members().map(|h| &self.weights[h]).sum()
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    pub fn probability(&self, e: &Event) -> Rational {
        Rational::new(self.mass(e), self.denominator.clone())
    }

    /// `μ(e | given)`; conditioning on a null event is an error.
    pub fn conditional(&self, e: &Event, given: &Event) -> Result<Rational> {
        let g = self.mass(given);
        if g.is_zero() {
            return Err(Error::NullConditioning);
        }
        Ok(Rational::new(self.mass(&e.intersection(given)), g))
    }

    pub fn is_null(&self, e: &Event) -> bool {
        self.mass(e).is_zero()
    }

    // --- algebras ----------------------------------------------------------

    /// `G(events)`.
    pub fn generated_algebra<'a>(&self, events: impl IntoIterator<Item = &'a Event>) -> Algebra {
        Algebra::generated(self.histories.len(), events)
    }

    /// `Σ(r)`: generated by the generators homed inside `r`. Defined for any
    /// region of the site, not only universe members.
    pub fn region_algebra(&self, r: &Region) -> Result<Algebra> {
        if r.size() != self.site.len() {
            return Err(Error::PointOutOfRange(r.size()));
        }
        if let Some(idx) = self.universe.index_of(r) {
            return Ok(self.universe_algebras()[idx].clone());
        }
        Ok(self.compute_algebra(r))
    }

    fn compute_algebra(&self, r: &Region) -> Algebra {
        self.generated_algebra(self.generators.iter().filter(|g| g.home.is_subset(r)).map(|g| &g.event))
    }

    /// `Σ(R)` for every universe region, indexed like the universe.
    pub fn universe_algebras(&self) -> &[Algebra] {
        self.universe_algebras
            .get_or_init(|| self.universe.regions().map(|r| self.compute_algebra(r)).collect())
    }

    /// `Σ(M)`.
    pub fn global_algebra(&self) -> Algebra {
        self.compute_algebra(&self.site.full_region())
    }

    /// Full specifications of `r`: the atoms of `Σ(r)`.
    pub fn full_specifications(&self, r: &Region) -> Result<Vec<Event>> {
        Ok(self.region_algebra(r)?.atoms().to_vec())
    }

    /// The smallest universe region whose algebra contains `e`.
    pub fn intrinsic_region(&self, e: &Event) -> Result<Region> {
        if !self.global_algebra().contains(e) {
            return Err(Error::NotInAlgebra);
        }
        let mut region = self.site.full_region();
        for (r, alg) in self.universe.regions().zip(self.universe_algebras()) {
            if alg.contains(e) {
                region = region.intersection(r);
            }
        }
        Ok(region)
    }

    /// A copy of this model with extra declared regions and generators,
    /// each history split in two by a fresh binary event.
    ///
    /// Every existing event is lifted to the doubled history space; the new
    /// event holds on the second copy of each history and the measure splits
    /// evenly. The new event is therefore independent of everything else,
    /// both set-theoretically and in probability.
    pub fn with_fresh_event(
        &self,
        name: &str,
        home: &str,
        extra_regions: &[(String, Region)],
        nonseparable: bool,
    ) -> Result<Model> {
        let n = self.histories.len();
        let histories: Vec<String> = self
            .histories
            .iter()
            .map(|h| format!("{h}.0"))
            .chain(self.histories.iter().map(|h| format!("{h}.1")))
            .collect();
        let lift = |e: &Event| Event::from_members(2 * n, e.members().flat_map(|h| [h, h + n]));
        let mut generators: Vec<GeneratorSpec> = self
            .generators
            .iter()
            .map(|g| GeneratorSpec {
                name: g.name.clone(),
                event: lift(&g.event),
                home: g.home_name.clone(),
                nonseparable: g.nonseparable,
            })
            .collect();
        generators.push(GeneratorSpec {
            name: name.to_string(),
            event: Event::from_members(2 * n, n..2 * n),
            home: home.to_string(),
            nonseparable,
        });
        let half = rational::ratio(1, 2);
        let measure: Vec<Rational> = self
            .measure
            .iter()
            .chain(self.measure.iter())
            .map(|m| m * &half)
            .collect();
        let mut regions = self.declared_regions.clone();
        for (rn, r) in extra_regions {
            if !regions.iter().any(|(existing, _)| existing == rn) {
                regions.push((rn.clone(), r.clone()));
            }
        }
        let slices = self.slices.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        Model::new(self.site.clone(), histories, regions, generators, measure, slices)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    /// Two points x, y; Ω = {h1..h4} uniform; X = {h1,h2} on x, Y = {h1,h3} on y.
    fn two_point_model() -> Model {
        let site = CausalSite::from_named::<&str>(&["x", "y"], &[]).unwrap();
        let hs: Vec<String> = ["h1", "h2", "h3", "h4"].iter().map(|s| s.to_string()).collect();
        let regions = vec![
            ("X".to_string(), site.region(&["x"]).unwrap()),
            ("Y".to_string(), site.region(&["y"]).unwrap()),
        ];
        let gens = vec![
            GeneratorSpec {
                name: "gx".into(),
                event: Event::from_members(4, [0, 1]),
                home: "X".into(),
                nonseparable: false,
            },
            GeneratorSpec {
                name: "gy".into(),
                event: Event::from_members(4, [0, 2]),
                home: "Y".into(),
                nonseparable: false,
            },
        ];
        Model::new(site, hs, regions, gens, vec![ratio(1, 4); 4], vec![]).unwrap()
    }

    #[test]
    fn probability_and_conditionals() {
        let m = two_point_model();
        let e = m.event(&["h1", "h2"]).unwrap();
        assert_eq!(m.probability(&e), ratio(1, 2));
        assert_eq!(m.conditional(&e, &m.omega()).unwrap(), m.probability(&e));
        assert_eq!(m.conditional(&e, &e).unwrap(), ratio(1, 1));
        let empty = Event::empty(4);
        assert_eq!(m.conditional(&e, &empty), Err(Error::NullConditioning));
    }

    #[test]
    fn region_algebras() {
        let m = two_point_model();
        let full = m.site().full_region();
        assert_eq!(m.region_algebra(&full).unwrap().atom_count(), 4);
        let empty = m.site().empty_region();
        assert!(m.region_algebra(&empty).unwrap().is_trivial());
        let x = m.region("X").unwrap().clone();
        assert_eq!(
            m.full_specifications(&x).unwrap(),
            vec![m.event(&["h1", "h2"]).unwrap(), m.event(&["h3", "h4"]).unwrap()]
        );
    }

    #[test]
    fn intrinsic_regions() {
        let m = two_point_model();
        assert!(m.intrinsic_region(&m.omega()).unwrap().is_empty());
        let gx = m.generator("gx").unwrap();
        assert_eq!(&m.intrinsic_region(&gx.event).unwrap(), m.region("X").unwrap());
        let both = m.event(&["h1"]).unwrap();
        assert_eq!(m.intrinsic_region(&both).unwrap(), m.site().full_region());
    }

    #[test]
    fn measure_validation() {
        let site = CausalSite::from_named::<&str>(&["x"], &[]).unwrap();
        let hs = vec!["a".to_string(), "b".to_string()];
        let err = Model::new(
            site.clone(),
            hs.clone(),
            vec![],
            vec![],
            vec![ratio(1, 2), ratio(1, 3)],
            vec![],
        )
        .unwrap_err();
        assert!(matches!(err, Error::MeasureNotNormalized(_)));
        let err = Model::new(
            site.clone(),
            hs.clone(),
            vec![],
            vec![],
            vec![ratio(3, 2), ratio(-1, 2)],
            vec![],
        )
        .unwrap_err();
        assert!(matches!(err, Error::NegativeMeasure(..)));
        let err = Model::new(site, vec![], vec![], vec![], vec![], vec![]).unwrap_err();
        assert_eq!(err, Error::EmptyHistorySpace);
    }

    #[test]
    fn universe_is_closed() {
        let m = two_point_model();
        let u = m.universe();
        // X, Y, ∅, {x,y}
        assert_eq!(u.len(), 4);
        for a in u.regions() {
            for b in u.regions() {
                assert!(u.contains(&a.union(b)));
                assert!(u.contains(&a.intersection(b)));
            }
        }
    }

    #[test]
    fn fresh_event_doubles_histories() {
        let m = two_point_model();
        let m2 = m.with_fresh_event("z", "X", &[], true).unwrap();
        assert_eq!(m2.history_count(), 8);
        let z = &m2.generator("z").unwrap().event;
        assert_eq!(m2.probability(z), ratio(1, 2));
        let gx = &m2.generator("gx").unwrap().event;
        assert_eq!(m2.probability(&z.intersection(gx)), ratio(1, 4));
    }
}
