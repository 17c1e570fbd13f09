//! Seeded random models and behavior tables.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::causal::{CausalSite, PastSelector, Region};
use crate::error::{Error, Result};
use crate::io::{GeneratorEntry, ModelFile, SliceSpec};
use crate::locality::ScenarioSpec;
use crate::model::Model;
use crate::polytope::BehaviorTable;
use crate::rational::{self, Rational};

/// Upper bounds on generated model size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeCaps {
    pub max_points: usize,
    pub max_histories: usize,
    pub max_generators: usize,
}

impl SizeCaps {
    /// The smallest two-wing scenario needs two points, two histories and
    /// four generators.
    pub fn validate(&self) -> Result<()> {
        if self.max_points < 2 || self.max_histories < 2 || self.max_generators < 4 {
            return Err(Error::InvalidArgument(format!(
                "size caps too small (need points >= 2, histories >= 2, generators >= 4), got {self:?}"
            )));
        }
        Ok(())
    }
}

impl Default for SizeCaps {
    fn default() -> Self {
        SizeCaps {
            max_points: 6,
            max_histories: 8,
            max_generators: 6,
        }
    }
}

const MAX_EXTRA_GENERATORS: usize = 4;

#[derive(Clone, Copy, Debug)]
enum Mode {
    Local,
    Superdeterministic,
    Nonlocal,
    Arbitrary,
}

/// A probability: 0 or 1 most of the time, otherwise `k/d` with `d ≤ 4`.
fn draw_prob(rng: &mut ChaCha8Rng) -> Rational {
    if rng.gen_bool(0.7) {
        rational::int(rng.gen_range(0..=1))
    } else {
        let d = rng.gen_range(2..=4);
        rational::ratio(rng.gen_range(1..d), d)
    }
}

fn bernoulli(p: &Rational, value: bool) -> Rational {
    if value {
        p.clone()
    } else {
        rational::one() - p
    }
}

/// Lazily drawn conditional probability table.
struct Table<'a> {
    rng: &'a mut ChaCha8Rng,
    cells: HashMap<(u8, u64), Rational>,
}

impl Table<'_> {
    fn get(&mut self, var: u8, key: u64) -> Rational {
        if let Some(p) = self.cells.get(&(var, key)) {
            return p.clone();
        }
        let p = draw_prob(self.rng);
        self.cells.insert((var, key), p.clone());
        p
    }
}

fn random_antichain(rng: &mut ChaCha8Rng, site: &CausalSite, candidates: &[usize]) -> Region {
    let mut order = candidates.to_vec();
    order.shuffle(rng);
    let mut chosen: Vec<usize> = vec![order[0]];
    for &p in &order[1..] {
        if rng.gen_bool(0.5) && chosen.iter().all(|&q| !site.comparable(p, q)) {
            chosen.push(p);
        }
    }
    Region::from_points(site.len(), chosen)
}

/// A random model file with a two-wing scenario on maximal points `a`, `b`.
///
/// The measure is drawn from one of four families: local hidden-variable
/// (55%), settings correlated with the past (10%), outcomes depending on the
/// distant setting or PR-correlated (15%) and unstructured (20%). Extra
/// generators sit on past points, occasionally on a multi-point region as a
/// non-separable event. When the assignment space exceeds the history cap,
/// histories are a random subset of the support and the measure is
/// renormalized.
pub fn random_model(seed: u64, caps: &SizeCaps) -> Result<ModelFile> {
    caps.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=caps.max_points);
    let past_n = n - 2;
    let mut points: Vec<String> = (0..past_n).map(|i| format!("p{i}")).collect();
    points.push("a".into());
    points.push("b".into());
    let (ia, ib) = (past_n, past_n + 1);
    let mut order = Vec::new();
    for i in 0..past_n {
        for j in i + 1..past_n {
            if rng.gen_bool(0.35) {
                order.push((points[i].clone(), points[j].clone()));
            }
        }
        for w in [ia, ib] {
            if rng.gen_bool(0.6) {
                order.push((points[i].clone(), points[w].clone()));
            }
        }
    }
    let site = CausalSite::from_named(&points, &order)?;
    let single = |p: usize| Region::from_points(n, [p]);
    let past_a = site.causal_past(&single(ia))?;
    let past_b = site.causal_past(&single(ib))?;

    let mut regions: BTreeMap<String, Vec<String>> = BTreeMap::new();
    regions.insert("A".into(), vec!["a".into()]);
    regions.insert("B".into(), vec!["b".into()]);
    let mut gen_names: Vec<String> = ["As", "Ao", "Bs", "Bo"].iter().map(|s| s.to_string()).collect();
    let mut homes: Vec<(String, bool)> = vec![
        ("A".into(), false),
        ("A".into(), false),
        ("B".into(), false),
        ("B".into(), false),
    ];
    let extras = rng.gen_range(0..=(caps.max_generators - 4).min(MAX_EXTRA_GENERATORS));
    let (mut mask_a, mut mask_b, mut mask_past) = (0u64, 0u64, 0u64);
    for e in 0..extras {
        let bit = 1u64 << e;
        let home = if past_n > 0 && rng.gen_bool(0.8) {
            let p = rng.gen_range(0..past_n);
            let name = format!("R{}", points[p]);
            regions.insert(name.clone(), vec![points[p].clone()]);
            mask_past |= bit;
            (name, single(p), false)
        } else {
            let size = rng.gen_range(2..=n.min(3));
            let mut idx_sorted = rand::seq::index::sample(&mut rng, n, size).into_vec();
            idx_sorted.sort_unstable();
            let name = format!("N{e}");
            regions.insert(name.clone(), idx_sorted.iter().map(|&p| points[p].clone()).collect());
            (name, Region::from_points(n, idx_sorted), true)
        };
        if home.1.is_subset(&past_a) {
            mask_a |= bit;
        }
        if home.1.is_subset(&past_b) {
            mask_b |= bit;
        }
        gen_names.push(format!("g{e}"));
        homes.push((home.0, home.2));
    }

    let mode = match rng.gen_range(0..100) {
        0..=54 => Mode::Local,
        55..=64 => Mode::Superdeterministic,
        65..=79 => Mode::Nonlocal,
        _ => Mode::Arbitrary,
    };
    let k = 4 + extras;
    let extra_count = 1u64 << extras;
    // joint law of the past-point extras, independent bits elsewhere
    let joint: Vec<u64> = (0..extra_count).map(|_| rng.gen_range(1..=8)).collect();
    let independent: Vec<Rational> = (0..extras)
        .map(|_| {
            let d = rng.gen_range(2..=4);
            rational::ratio(rng.gen_range(1..d), d)
        })
        .collect();
    let p_as = draw_setting(&mut rng);
    let p_bs = draw_setting(&mut rng);
    let pr_variant = rng.gen_bool(0.5);
    let arbitrary: Vec<u64> = (0..1u64 << k).map(|_| rng.gen_range(0..=4)).collect();

    let past_marginal = |g: u64| -> Rational {
        let key = g & mask_past;
        let num: u64 = (0..extra_count)
            .filter(|h| h & mask_past == key)
            .map(|h| joint[h as usize])
            .sum();
        let den: u64 = joint.iter().sum();
        let mut p = Rational::new((num as i64).into(), (den as i64).into());
        for (e, q) in independent.iter().enumerate() {
            if mask_past >> e & 1 == 0 {
                p *= bernoulli(q, g >> e & 1 == 1);
            }
        }
        p
    };

    let mut table = Table {
        rng: &mut rng,
        cells: HashMap::new(),
    };
    let mut weights: Vec<Rational> = Vec::with_capacity(1 << k);
    for t in 0..1u64 << k {
        let (a_s, a_o, b_s, b_o) = (t & 1 == 1, t >> 1 & 1 == 1, t >> 2 & 1 == 1, t >> 3 & 1 == 1);
        let g = t >> 4;
        let w = match mode {
            Mode::Arbitrary => Rational::from_integer((arbitrary[t as usize] as i64).into()),
            _ => {
                let mut w = past_marginal(g);
                match mode {
                    Mode::Superdeterministic => {
                        w *= bernoulli(&table.get(0, g & mask_a), a_s);
                        w *= bernoulli(&table.get(1, g & mask_b), b_s);
                    }
                    _ => {
                        w *= bernoulli(&p_as, a_s);
                        w *= bernoulli(&p_bs, b_s);
                    }
                }
                let (sa, sb) = (u64::from(a_s), u64::from(b_s));
                match mode {
                    Mode::Nonlocal if pr_variant => {
                        // PR correlation given the settings
                        let differ = !a_s && !b_s;
                        w *= if (a_o != b_o) == differ {
                            rational::ratio(1, 2)
                        } else {
                            rational::zero()
                        };
                    }
                    Mode::Nonlocal => {
                        w *= bernoulli(&table.get(2, (g & mask_a) << 2 | sa << 1 | sb), a_o);
                        w *= bernoulli(&table.get(3, (g & mask_b) << 1 | sb), b_o);
                    }
                    _ => {
                        w *= bernoulli(&table.get(2, (g & mask_a) << 1 | sa), a_o);
                        w *= bernoulli(&table.get(3, (g & mask_b) << 1 | sb), b_o);
                    }
                }
                w
            }
        };
        weights.push(w);
    }

    let mut chosen: Vec<u64> = if 1usize << k <= caps.max_histories {
        (0..1u64 << k).collect()
    } else {
        let support: Vec<u64> = (0..1u64 << k).filter(|&t| !weights[t as usize].is_zero()).collect();
        if support.len() <= caps.max_histories {
            support
        } else {
            let mut pick = rand::seq::index::sample(&mut rng, support.len(), caps.max_histories).into_vec();
            pick.sort_unstable();
            pick.into_iter().map(|i| support[i]).collect()
        }
    };
    chosen.sort_unstable();
    let total: Rational = chosen.iter().map(|&t| &weights[t as usize]).sum();
    let hname = |t: u64| -> String {
        let digits: String = (0..k).map(|i| if t >> i & 1 == 1 { '1' } else { '0' }).collect();
        format!("h{digits}")
    };
    let histories: Vec<String> = chosen.iter().map(|&t| hname(t)).collect();
    let measure = chosen
        .iter()
        .filter(|&&t| !weights[t as usize].is_zero())
        .map(|&t| (hname(t), rational::format(&(&weights[t as usize] / &total))))
        .collect();
    let generators = gen_names
        .iter()
        .enumerate()
        .map(|(i, name)| {
            let event = chosen.iter().filter(|&&t| t >> i & 1 == 1).map(|&t| hname(t)).collect();
            let (home, nonseparable) = homes[i].clone();
            (
                name.clone(),
                GeneratorEntry {
                    event,
                    home,
                    nonseparable,
                },
            )
        })
        .collect();

    let mut slices = BTreeMap::new();
    let all: Vec<usize> = (0..n).collect();
    for s in 0..rng.gen_range(1..=2) {
        let lower = random_antichain(&mut rng, &site, &all);
        let future: Vec<usize> = site.causal_future(&lower)?.points().collect();
        let upper = random_antichain(&mut rng, &site, &future);
        let names = |r: &Region| r.points().map(|p| points[p].clone()).collect::<Vec<_>>();
        slices.insert(
            format!("S{s}"),
            SliceSpec {
                lower: names(&lower),
                upper: names(&upper),
            },
        );
    }

    let past = match rng.gen_range(0..10) {
        0..=3 => "joint",
        4..=5 => "mutual",
        6 => "past-a",
        7 => "past-b",
        _ => "slice:S0",
    };
    let selector = match past {
        "joint" => Some(PastSelector::JointPast),
        "mutual" => Some(PastSelector::MutualPast),
        "past-a" => Some(PastSelector::PastOfA),
        "past-b" => Some(PastSelector::PastOfB),
        _ => None,
    };
    let past_partition = match selector {
        Some(sel) => {
            let region = site.resolve_past(&single(ia), &single(ib), &sel)?;
            let pa = region.intersection(&past_a);
            let pb = region.difference(&pa);
            let names = |r: &Region| r.points().map(|p| points[p].clone()).collect::<Vec<_>>();
            regions.insert("PA".into(), names(&pa));
            regions.insert("PB".into(), names(&pb));
            Some(("PA".to_string(), "PB".to_string()))
        }
        None => None,
    };

    Ok(ModelFile {
        points,
        order,
        regions,
        slices,
        histories,
        generators,
        measure,
        scenario: Some(ScenarioSpec {
            wing_a: "A".into(),
            wing_b: "B".into(),
            setting_a: "As".into(),
            setting_b: "Bs".into(),
            outcome_a: "Ao".into(),
            outcome_b: "Bo".into(),
            past: past.into(),
            past_partition,
        }),
    })
}

/// A setting probability strictly between 0 and 1.
fn draw_setting(rng: &mut ChaCha8Rng) -> Rational {
    let d = rng.gen_range(2..=4);
    rational::ratio(rng.gen_range(1..d), d)
}

/// Adds a fresh event homed on the union of two disjoint nonempty universe
/// regions `P1`, `P2` (the first such pair in universe order), which makes
/// separability fail for that pair. Returns the new model and the pair.
pub fn inject_nonseparable(model: &Model) -> Result<(Model, Region, Region)> {
    let regions: Vec<&Region> = model.universe().regions().filter(|r| !r.is_empty()).collect();
    let (p1, p2) = regions
        .iter()
        .enumerate()
        .flat_map(|(i, a)| regions[i + 1..].iter().map(move |b| (*a, *b)))
        .find(|(a, b)| a.is_disjoint(b))
        .ok_or_else(|| Error::Precondition("no two disjoint nonempty regions".into()))?;
    let fresh = |base: &str, taken: &dyn Fn(&str) -> bool| {
        (0..)
            .map(|i| format!("{base}{i}"))
            .find(|c| !taken(c))
            .expect("unbounded")
    };
    let event_name = fresh("Z", &|c| model.generator(c).is_ok());
    let region_name = fresh("ZR", &|c| model.region(c).is_ok());
    let home = p1.union(p2);
    let out = model.with_fresh_event(&event_name, &region_name, &[(region_name.clone(), home)], true)?;
    Ok((out, p1.clone(), p2.clone()))
}

/// A random no-signalling table: a mixture of the 16 deterministic
/// strategies and one of the 8 PR boxes with small random integer weights.
/// Mixing several PR boxes mostly cancels their nonlocality, so only one
/// is used per table.
pub fn random_ns_table(rng: &mut impl Rng) -> BehaviorTable {
    let vertices: Vec<BehaviorTable> = (0..16)
        .map(BehaviorTable::deterministic)
        .chain((0..8).map(BehaviorTable::pr_box_variant))
        .collect();
    let mut w: Vec<i64> = (0..16)
        .map(|_| if rng.gen_bool(0.3) { rng.gen_range(1..=6) } else { 0 })
        .collect();
    w.extend([0; 8]);
    w[16 + rng.gen_range(0..8)] = rng.gen_range(0..=12);
    if w.iter().all(|&x| x == 0) {
        w[rng.gen_range(0..24)] = 1;
    }
    let total: i64 = w.iter().sum();
    let parts: Vec<(Rational, &BehaviorTable)> = w
        .iter()
        .zip(&vertices)
        .map(|(&x, v)| (rational::ratio(x, total), v))
        .collect();
    BehaviorTable::mixture(&parts).expect("weights sum to one")
}

/// `count` tables from [`random_ns_table`] driven by one seeded generator.
pub fn random_ns_tables(seed: u64, count: usize) -> Vec<BehaviorTable> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_ns_table(&mut rng)).collect()
}
