//! Value-model properties, checked against a separate reading of the shipped
//! coordinate table.

use hmreq_core::values::{PAIR_COUNT, VALUE_COUNT};
use hmreq_core::{Quartile, ValueGroup, ValueSpace};
use proptest::prelude::*;
use sha2::{Digest, Sha256};

const VALUES_JSON: &str = include_str!("../data/values.json");
const VALUES_SHA256: &str = "0cea09c63488ab63b41e33fcbdd7fa3d318ee66025e6b2e9776a139a69bf7920";

struct Oracle {
    ids: Vec<String>,
    groups: Vec<String>,
    xy: Vec<(f64, f64)>,
    max: f64,
}

impl Oracle {
    fn read() -> Oracle {
        let v: serde_json::Value = serde_json::from_str(VALUES_JSON).unwrap();
        let mut o = Oracle { ids: vec![], groups: vec![], xy: vec![], max: 0.0 };
        for e in v["values"].as_array().unwrap() {
            o.ids.push(e["id"].as_str().unwrap().to_owned());
            o.groups.push(e["group"].as_str().unwrap().to_owned());
            o.xy.push((e["x"].as_f64().unwrap(), e["y"].as_f64().unwrap()));
        }
        let n = o.ids.len();
        for i in 0..n {
            for j in 0..n {
                o.max = o.max.max(o.dist(i, j));
            }
        }
        o
    }

    fn dist(&self, i: usize, j: usize) -> f64 {
        let (a, b) = (self.xy[i], self.xy[j]);
        (a.0 - b.0).hypot(a.1 - b.1)
    }

    fn index(&self, id: &str) -> usize {
        self.ids.iter().position(|x| x == id).unwrap()
    }

    /// Scores for all unordered pairs.
    fn scores(&self) -> Vec<f64> {
        let n = self.ids.len();
        let mut out = vec![];
        for i in 0..n {
            for j in i + 1..n {
                out.push(self.dist(i, j) / self.max);
            }
        }
        out
    }

    fn score(&self, a: &str, b: &str) -> f64 {
        self.dist(self.index(a), self.index(b)) / self.max
    }

    /// Type-7 sample quantile (linear interpolation between order statistics).
    fn quantile(&self, p: f64) -> f64 {
        let mut s = self.scores();
        s.sort_by(f64::total_cmp);
        let h = (s.len() - 1) as f64 * p;
        let (lo, frac) = (h.floor() as usize, h.fract());
        if lo + 1 < s.len() {
            s[lo] * (1.0 - frac) + s[lo + 1] * frac
        } else {
            s[lo]
        }
    }

    fn group_mean(&self, g: &str, h: &str) -> f64 {
        let n = self.ids.len();
        let mut sum = 0.0;
        let mut count = 0;
        for i in 0..n {
            for j in 0..n {
                if i == j || self.groups[i] != g || self.groups[j] != h {
                    continue;
                }
                if g == h && j < i {
                    continue;
                }
                sum += self.dist(i, j) / self.max;
                count += 1;
            }
        }
        sum / count as f64
    }
}

#[test]
fn shipped_table_checksum() {
    let digest = Sha256::digest(VALUES_JSON.as_bytes());
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    assert_eq!(hex, VALUES_SHA256);
    assert_eq!(ValueSpace::builtin_text(), VALUES_JSON);
}

#[test]
fn table_shape() {
    let space = ValueSpace::builtin();
    assert_eq!(space.values().len(), 56);
    assert_eq!(VALUE_COUNT, 56);
    assert_eq!(PAIR_COUNT, 1540);
    for g in ValueGroup::ALL {
        assert!(space.values().iter().any(|v| v.group == g), "{g}");
    }
    assert_eq!(ValueGroup::ALL.len(), 10);
}

#[test]
fn anchors() {
    let space = ValueSpace::builtin();
    let fa = space.conflict_score("freedom", "authority").unwrap();
    assert!((fa.score - 0.55).abs() <= 0.05, "{}", fa.score);
    assert_eq!(fa.quartile, Quartile::Q4);
    let ah = space.conflict_score("authority", "healthy").unwrap();
    assert!((ah.score - 0.27).abs() <= 0.05, "{}", ah.score);
    assert_ne!(ah.quartile, Quartile::Q4);

    let oracle = Oracle::read();
    assert!(oracle.score("freedom", "authority") > oracle.quantile(0.75));
}

#[test]
fn matches_oracle_on_every_pair() {
    let space = ValueSpace::builtin();
    let oracle = Oracle::read();
    let q = space.thresholds();
    assert!((q.q1 - oracle.quantile(0.25)).abs() < 1e-12);
    assert!((q.q2 - oracle.quantile(0.50)).abs() < 1e-12);
    assert!((q.q3 - oracle.quantile(0.75)).abs() < 1e-12);
    for a in &oracle.ids {
        for b in &oracle.ids {
            let got = space.conflict_score(a, b).unwrap().score;
            assert!((got - oracle.score(a, b)).abs() < 1e-12, "{a} {b}");
        }
    }
}

#[test]
fn distribution_properties() {
    let space = ValueSpace::builtin();
    let dist = space.score_distribution();
    assert_eq!(dist.scores.len(), 1540);
    assert!(dist.scores.iter().all(|s| (0.0..=1.0).contains(s)));
    assert_eq!(*dist.scores.last().unwrap(), 1.0);
    assert!(dist.scores.windows(2).all(|w| w[0] <= w[1]));
    let q = dist.thresholds;
    assert!(q.q1 < q.q2 && q.q2 < q.q3);
    let in_q4 = dist.scores.iter().filter(|&&s| space.thresholds().classify(s) == Quartile::Q4).count();
    assert!((380..=390).contains(&in_q4), "{in_q4}");
}

#[test]
fn symmetry_and_identity_on_all_values() {
    let space = ValueSpace::builtin();
    for a in space.values() {
        assert_eq!(space.score_values(a, a).score, 0.0, "{}", a.id);
        for b in space.values() {
            assert_eq!(
                space.score_values(a, b).score.to_bits(),
                space.score_values(b, a).score.to_bits()
            );
        }
    }
}

#[test]
fn opposed_groups_score_higher_than_within_groups() {
    let oracle = Oracle::read();
    let cross = oracle.group_mean("self_direction", "power");
    for g in ValueGroup::ALL {
        let within = oracle.group_mean(g.id(), g.id());
        assert!(cross > within, "{g}: {cross} <= {within}");
    }
}

fn value_index() -> impl Strategy<Value = usize> {
    0..VALUE_COUNT
}

proptest! {
    #[test]
    fn score_is_a_normalized_metric(i in value_index(), j in value_index(), k in value_index()) {
        let space = ValueSpace::builtin();
        let v = space.values();
        let s = |a: usize, b: usize| space.score_values(&v[a], &v[b]).score;
        prop_assert!((0.0..=1.0).contains(&s(i, j)));
        prop_assert_eq!(s(i, j), s(j, i));
        prop_assert!(s(i, k) <= s(i, j) + s(j, k) + 1e-12);
        prop_assert_eq!(s(i, j) == 0.0, v[i].x == v[j].x && v[i].y == v[j].y);
    }

    #[test]
    fn quartile_is_monotone_in_score(i in value_index(), j in value_index(), k in value_index(), l in value_index()) {
        let space = ValueSpace::builtin();
        let v = space.values();
        let a = space.score_values(&v[i], &v[j]);
        let b = space.score_values(&v[k], &v[l]);
        if a.score <= b.score {
            prop_assert!(a.quartile <= b.quartile);
        }
    }
}
