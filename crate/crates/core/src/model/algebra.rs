//! Finite event algebras represented by their atoms.
//!
//! A finite Boolean algebra of subsets of Ω is determined by its atoms, a
//! partition of Ω. Everything here is partition arithmetic: generating an
//! algebra refines by membership fingerprints, intersecting algebras takes
//! the finest common coarsening.

use std::collections::HashMap;

use super::Event;

/// A finite Boolean algebra over `n` histories, stored as a canonical
/// labelling: `labels[h]` is the index of the atom containing history `h`,
/// with atoms numbered in order of their smallest member.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Algebra {
    labels: Vec<usize>,
    atoms: Vec<Event>,
}

impl Algebra {
    fn from_labels(raw: &[usize]) -> Algebra {
        let mut relabel: HashMap<usize, usize> = HashMap::new();
        let labels: Vec<usize> = raw
            .iter()
            .map(|l| {
                let next = relabel.len();
                *relabel.entry(*l).or_insert(next)
            })
            .collect();
        let n = labels.len();
        let mut atoms: Vec<Event> = (0..relabel.len()).map(|_| Event::empty(n)).collect();
        for (h, &l) in labels.iter().enumerate() {
            atoms[l].insert(h);
        }
        Algebra { labels, atoms }
    }

    /// `{∅, Ω}`.
    pub fn trivial(n: usize) -> Algebra {
        Algebra::from_labels(&vec![0; n])
    }

    /// The algebra generated by a collection of events: histories share an
    /// atom iff they agree on membership in every generating event.
    pub fn generated<'a>(n: usize, events: impl IntoIterator<Item = &'a Event>) -> Algebra {
        let mut labels = vec![0usize; n];
        for e in events {
            let mut split: HashMap<(usize, bool), usize> = HashMap::new();
            for (h, label) in labels.iter_mut().enumerate() {
                let next = split.len();
                *label = *split.entry((*label, e.contains(h))).or_insert(next);
            }
        }
        Algebra::from_labels(&labels)
    }

    /// The algebra generated by the union of several algebras (their common
    /// refinement).
    pub fn join<'a>(n: usize, algebras: impl IntoIterator<Item = &'a Algebra>) -> Algebra {
        let mut labels = vec![0usize; n];
        for alg in algebras {
            let mut split: HashMap<(usize, usize), usize> = HashMap::new();
            for (h, label) in labels.iter_mut().enumerate() {
                let next = split.len();
                *label = *split.entry((*label, alg.labels[h])).or_insert(next);
            }
        }
        Algebra::from_labels(&labels)
    }

    /// Set-theoretic intersection of algebras (the finest common coarsening
    /// of their partitions).
    pub fn intersection<'a>(n: usize, algebras: impl IntoIterator<Item = &'a Algebra>) -> Algebra {
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for alg in algebras {
            for atom in &alg.atoms {
                let mut members = atom.members();
                if let Some(first) = members.next() {
                    for h in members {
                        let (ra, rb) = (find(&mut parent, first), find(&mut parent, h));
                        if ra != rb {
                            parent[ra.max(rb)] = ra.min(rb);
                        }
                    }
                }
            }
        }
        let labels: Vec<usize> = (0..n).map(|h| find(&mut parent, h)).collect();
        Algebra::from_labels(&labels)
    }

    pub fn histories(&self) -> usize {
        self.labels.len()
    }

    /// The atoms, ordered by smallest member.
    pub fn atoms(&self) -> &[Event] {
        &self.atoms
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn atom_of(&self, history: usize) -> usize {
        self.labels[history]
    }

    /// Number of events, `2^atoms`, when it fits.
    pub fn cardinality(&self) -> Option<u128> {
        1u128.checked_shl(self.atoms.len() as u32)
    }

    pub fn is_trivial(&self) -> bool {
        self.atoms.len() <= 1
    }

    /// An event belongs to the algebra iff it is a union of atoms.
    pub fn contains(&self, e: &Event) -> bool {
        self.atoms.iter().all(|a| a.is_subset(e) || a.is_disjoint(e))
    }

    /// `self ⊆ other` as sets of events: `other`'s partition refines ours.
    pub fn is_subalgebra_of(&self, other: &Algebra) -> bool {
        let mut image: Vec<Option<usize>> = vec![None; other.atoms.len()];
        for h in 0..self.labels.len() {
            let slot = &mut image[other.labels[h]];
            match slot {
                Some(l) if *l != self.labels[h] => return false,
                _ => *slot = Some(self.labels[h]),
            }
        }
        true
    }

    /// First atom of `self` that is not an event of `other`, if any.
    pub fn first_atom_outside(&self, other: &Algebra) -> Option<&Event> {
        self.atoms.iter().find(|a| !other.contains(a))
    }

    /// Every event of the algebra. Only sensible for a handful of atoms.
    pub fn events(&self) -> Vec<Event> {
        assert!(
            self.atoms.len() <= 20,
            "refusing to enumerate 2^{} events",
            self.atoms.len()
        );
        let n = self.labels.len();
        (0u32..(1 << self.atoms.len()))
            .map(|mask| {
                let mut e = Event::empty(n);
                for (i, atom) in self.atoms.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        e = e.union(atom);
                    }
                }
                e
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(n: usize, members: &[usize]) -> Event {
        Event::from_members(n, members.iter().copied())
    }

    #[test]
    fn single_generator_gives_two_atoms() {
        let x = ev(4, &[0, 1]);
        let alg = Algebra::generated(4, [&x]);
        assert_eq!(alg.atoms(), &[ev(4, &[0, 1]), ev(4, &[2, 3])]);
        assert_eq!(alg.cardinality(), Some(4));
    }

    #[test]
    fn no_generators_gives_trivial_algebra() {
        let alg = Algebra::generated(4, std::iter::empty());
        assert_eq!(alg.atoms(), &[Event::full(4)]);
        assert_eq!(alg, Algebra::trivial(4));
        assert!(alg.contains(&Event::empty(4)));
        assert!(alg.contains(&Event::full(4)));
        assert!(!alg.contains(&ev(4, &[0])));
    }

    #[test]
    fn distinct_fingerprints_give_singletons() {
        let x = ev(4, &[0, 1]);
        let y = ev(4, &[0, 2]);
        let alg = Algebra::generated(4, [&x, &y]);
        assert_eq!(alg.atom_count(), 4);
        assert!(alg.atoms().iter().all(|a| a.count() == 1));
    }

    #[test]
    fn intersection_and_join() {
        let x = ev(4, &[0, 1]);
        let y = ev(4, &[0, 2]);
        let ax = Algebra::generated(4, [&x]);
        let ay = Algebra::generated(4, [&y]);
        assert_eq!(Algebra::intersection(4, [&ax, &ay]), Algebra::trivial(4));
        let joined = Algebra::join(4, [&ax, &ay]);
        assert_eq!(joined, Algebra::generated(4, [&x, &y]));
        assert!(ax.is_subalgebra_of(&joined));
        assert!(!joined.is_subalgebra_of(&ax));
        assert_eq!(Algebra::intersection(4, [&ax, &joined]), ax);
    }

    #[test]
    fn events_of_algebra_are_unions_of_atoms() {
        let x = ev(3, &[0]);
        let alg = Algebra::generated(3, [&x]);
        let events = alg.events();
        assert_eq!(events.len(), 4);
        assert!(events.iter().all(|e| alg.contains(e)));
    }
}
