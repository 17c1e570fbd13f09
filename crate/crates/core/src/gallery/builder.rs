use std::collections::BTreeMap;

use num_traits::Zero;

use crate::io::{GeneratorEntry, ModelFile, SliceSpec};
use crate::locality::ScenarioSpec;
use crate::rational::{self, Rational};

/// Values of the generators on one history of a free model.
pub struct Bits<'a> {
    names: &'a [String],
    value: u64,
}

impl Bits<'_> {
    pub fn get(&self, name: &str) -> bool {
        let i = self
            .names
            .iter()
            .position(|n| n == name)
            .unwrap_or_else(|| panic!("no generator {name}"));
        self.value >> (self.names.len() - 1 - i) & 1 == 1
    }
}

/// A model whose history space is every assignment of truth values to its
/// generators. Generator `g` is the set of histories where `g` holds, so
/// distinct generators are distinct, logically independent events and all
/// correlation lives in the measure.
#[derive(Clone, Debug, Default)]
pub struct FreeModel {
    pub points: Vec<String>,
    pub order: Vec<(String, String)>,
    pub regions: Vec<(String, Vec<String>)>,
    pub slices: Vec<(String, Vec<String>, Vec<String>)>,
    /// `(name, home region, nonseparable)`
    pub generators: Vec<(String, String, bool)>,
}

fn owned(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

impl FreeModel {
    pub fn new(points: &[&str], order: &[(&str, &str)]) -> FreeModel {
        FreeModel {
            points: owned(points),
            order: order.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
            ..FreeModel::default()
        }
    }

    pub fn region(mut self, name: &str, points: &[&str]) -> FreeModel {
        self.regions.push((name.to_string(), owned(points)));
        self
    }

    pub fn slice(mut self, name: &str, lower: &[&str], upper: &[&str]) -> FreeModel {
        self.slices.push((name.to_string(), owned(lower), owned(upper)));
        self
    }

    pub fn generator(mut self, name: &str, home: &str) -> FreeModel {
        self.generators.push((name.to_string(), home.to_string(), false));
        self
    }

    pub fn nonseparable(mut self, name: &str, home: &str) -> FreeModel {
        self.generators.push((name.to_string(), home.to_string(), true));
        self
    }

    /// History name for an assignment, one digit per generator.
    pub fn history_name(&self, value: u64) -> String {
        let k = self.generators.len();
        let digits: String = (0..k)
            .map(|i| if value >> (k - 1 - i) & 1 == 1 { '1' } else { '0' })
            .collect();
        format!("h{digits}")
    }

    /// The model file with `weight` as the measure. Zero-weight histories are
    /// kept in the history space.
    pub fn build(&self, weight: impl Fn(&Bits) -> Rational, scenario: Option<ScenarioSpec>) -> ModelFile {
        let k = self.generators.len();
        let names: Vec<String> = self.generators.iter().map(|g| g.0.clone()).collect();
        let histories: Vec<String> = (0..1u64 << k).map(|v| self.history_name(v)).collect();
        let mut measure = BTreeMap::new();
        for v in 0..1u64 << k {
            let w = weight(&Bits {
                names: &names,
                value: v,
            });
            if !w.is_zero() {
                measure.insert(self.history_name(v), rational::format(&w));
            }
        }
        let generators = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, (name, home, nonseparable))| {
                let event = (0..1u64 << k)
                    .filter(|v| v >> (k - 1 - i) & 1 == 1)
                    .map(|v| self.history_name(v))
                    .collect();
                (
                    name.clone(),
                    GeneratorEntry {
                        event,
                        home: home.clone(),
                        nonseparable: *nonseparable,
                    },
                )
            })
            .collect();
        ModelFile {
            points: self.points.clone(),
            order: self.order.clone(),
            regions: self.regions.iter().cloned().collect(),
            slices: self
                .slices
                .iter()
                .map(|(n, l, u)| {
                    (
                        n.clone(),
                        SliceSpec {
                            lower: l.clone(),
                            upper: u.clone(),
                        },
                    )
                })
                .collect(),
            histories,
            generators,
            measure,
            scenario,
        }
    }
}

/// `1/2ⁿ` when `cond` holds, else zero: the uniform measure on `n` free bits
/// restricted to a constraint.
pub fn uniform_if(cond: bool, n: u32) -> Rational {
    if cond {
        rational::ratio(1, 1 << n)
    } else {
        rational::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_generators_are_coordinates() {
        let fm = FreeModel::new(&["p"], &[])
            .region("P", &["p"])
            .generator("X", "P")
            .generator("Y", "P");
        let f = fm.build(|b| uniform_if(b.get("X") == b.get("Y"), 1), None);
        assert_eq!(f.histories, vec!["h00", "h01", "h10", "h11"]);
        assert_eq!(f.generators["X"].event, vec!["h10", "h11"]);
        assert_eq!(f.measure.len(), 2);
        let m = f.build().unwrap().model;
        assert_eq!(m.history_count(), 4);
    }
}
