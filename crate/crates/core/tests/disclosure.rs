//! Announcement rules against brute-force enumeration of every random choice.

mod common;

use std::collections::BTreeMap;

use qsdc::bits::BitString;
use qsdc::{DisclosureScheme, SchemeKind};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn conditional_laws_match_enumeration() {
    for kind in SchemeKind::ALL {
        for n in 1..=8 {
            let scheme = DisclosureScheme::new(kind, n).unwrap();
            for k in BitString::all(n).unwrap() {
                let bits: Vec<bool> = k.bits().collect();
                let law = common::announcement_law(kind, &bits);
                let listed: Vec<String> = scheme.compatible_announcements(k).iter().map(ToString::to_string).collect();
                assert_eq!(listed.len(), law.len(), "{kind} n={n} k={k}");
                assert_eq!(scheme.s_size(k) as usize, law.len());
                for s in scheme.announcements() {
                    let expected = law.get(&s.to_string()).copied().unwrap_or(0.0);
                    assert!((scheme.prob_given(&s, k) - expected).abs() < 1e-12, "{kind} n={n} k={k} s={s}");
                }
            }
        }
    }
}

#[test]
fn compatibility_sets_and_bayes_match_enumeration() {
    for kind in SchemeKind::ALL {
        for n in 1..=8 {
            let scheme = DisclosureScheme::new(kind, n).unwrap();
            let joint = common::joint_law(kind, n);
            let mut total = 0.0;
            for s in scheme.announcements() {
                let entries = joint.get(&s.to_string()).cloned().unwrap_or_default();
                let p_s: f64 = entries.iter().map(|(_, w)| w).sum();
                let post = scheme.posterior(&s).unwrap();
                total += post.p_s;
                assert!((post.p_s - p_s).abs() < 1e-12, "{kind} n={n} s={s}");
                let listed: Vec<u64> = scheme.compat_outcomes(&s).unwrap().iter().map(|k| k.value()).collect();
                let mut brute: Vec<u64> = entries.iter().map(|(v, _)| *v).collect();
                brute.sort_unstable();
                let mut sorted = listed.clone();
                sorted.sort_unstable();
                assert_eq!(sorted, brute, "{kind} n={n} s={s}");
                assert_eq!(scheme.k_size(&s).unwrap() as f64, common::k_size_closed_form(kind, n, &s.to_string()));
                assert_eq!(scheme.k_size(&s).unwrap() as usize, brute.len());
                for (i, &(_, w)) in entries.iter().enumerate() {
                    let bayes = w / p_s;
                    let idx = listed.iter().position(|&v| v == entries[i].0).unwrap();
                    assert!((post.dist.weights()[idx] - bayes).abs() < 1e-12);
                }
            }
            assert!((total - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn sampled_announcements_follow_the_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let trials = 40_000;
    for kind in SchemeKind::ALL {
        let scheme = DisclosureScheme::new(kind, 5).unwrap();
        for k in ["11010", "11111", "01000"] {
            let k: BitString = k.parse().unwrap();
            let bits: Vec<bool> = k.bits().collect();
            let law = common::announcement_law(kind, &bits);
            let mut counts: BTreeMap<String, u64> = BTreeMap::new();
            for _ in 0..trials {
                *counts.entry(scheme.announce(k, &mut rng).to_string()).or_default() += 1;
            }
            for (s, c) in &counts {
                assert!(law.contains_key(s), "{kind}: impossible {s} for {k}");
                let p = law[s];
                let se = (p * (1.0 - p) / trials as f64).sqrt().max(1e-9);
                assert!((*c as f64 / trials as f64 - p).abs() < 4.0 * se, "{kind} {k} {s}");
            }
        }
    }
}

#[test]
fn announcements_roundtrip_through_text() {
    for kind in SchemeKind::ALL {
        let scheme = DisclosureScheme::new(kind, 4).unwrap();
        for s in scheme.announcements() {
            assert_eq!(scheme.parse_announcement(&s.to_string()).unwrap(), s);
        }
    }
    let excess = DisclosureScheme::new(SchemeKind::ExcessBits, 4).unwrap();
    assert!(excess.parse_announcement("0100").is_err());
    assert!(excess.parse_announcement("01").is_err());
}
