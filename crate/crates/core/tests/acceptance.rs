//! End-to-end acceptance suite: every headline result is verified at desk
//! scale, with the fertility sweep and the structural characterization
//! acting as independent oracles for one another.

use std::collections::HashSet;

use unisort::bijections::{self, MapVia};
use unisort::chc::{self, build_chc};
use unisort::enumeration::{self, DEFAULT_ENUM_LIMIT};
use unisort::paths::{self, Family};
use unisort::perm::{PatternSet, Permutation, Point};
use unisort::series;
use unisort::shapes::ShapeClass;
use unisort::stacksort;

fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn ps(s: &str) -> PatternSet {
    PatternSet::parse(s).unwrap()
}

fn class(n: usize, patterns: &str) -> Vec<Permutation> {
    enumeration::enumerate_class(n, &ps(patterns)).unwrap()
}

/// The length-12 permutation used as the running worked example.
const SAMPLE_12: &str = "2 7 3 5 9 4 8 1 6 10 11 12";

#[test]
fn sorting_and_hook_examples() {
    assert_eq!(stacksort::stack_sort(&p("516243")), p("152346"));

    let chc = build_chc(&p(SAMPLE_12)).unwrap();
    let hooks: Vec<(usize, u32, usize, u32)> = chc
        .hooks
        .iter()
        .map(|h| (h.sw.pos, h.sw.val, h.ne.pos, h.ne.val))
        .collect();
    assert_eq!(hooks, vec![(2, 7, 5, 9), (5, 9, 11, 11), (7, 8, 10, 10)]);

    assert!(stacksort::is_uniquely_sorted(&p("31425")));
    assert!(!stacksort::is_uniquely_sorted(&p("24135")));
}

#[test]
fn golden_path_images_and_inverses() {
    let cases = [
        (MapVia::Lemma31, "10 6 5 3 2 1 4 7 8 9 11", "UDUUUDDUDD"),
        (MapVia::Thm53, "3 2 4 1 9 8 7 10 11 6 5 12 13", "EUDEUEDUEUDDEUEUDD"),
        (MapVia::Thm54, "3 2 4 1 8 7 6 9 11 10 5 12 13", "EUDEUEDUEUDDEUEUDD"),
        (MapVia::Thm55, "4 3 2 5 7 6 1 9 10 8 11", "EUEUDEDUEUEDDUD"),
        (MapVia::Thm56, "9 2 1 5 4 3 6 8 7 10 11", "EUEUDEDUEUEDDUD"),
        (MapVia::Thm61, "732154689", "UUHDUDD"),
    ];
    for (via, perm, golden) in cases {
        let pi = p(perm);
        let image = via.apply(&pi).unwrap();
        assert_eq!(image.to_string(), golden, "{via}");
        assert_eq!(via.invert(&image).unwrap(), pi, "{via} inverse");
    }
}

#[test]
fn dual_oracle_equivalence() {
    // the fertility sweep and the descent-count-plus-hooks test must agree
    // on the uniquely sorted set at every odd length up to 11
    for n in [1usize, 3, 5, 7, 9, 11] {
        let structural = class(n, "");
        let by_fertility = stacksort::fertility_histogram(n).unwrap().fixed_set();
        assert_eq!(structural, by_fertility, "n = {n}");
    }
}

#[test]
fn fertility_of_length_12_sample() {
    // slow: a preimage sweep over all of S_12
    assert_eq!(stacksort::fertility(&p(SAMPLE_12)).unwrap(), 160);
}

#[test]
fn count_reproduction() {
    let catalan_expected: [i128; 6] = [1, 1, 2, 5, 14, 42];
    for patterns in ["132,231", "132,312", "231,312"] {
        for (k, &want) in catalan_expected.iter().enumerate() {
            assert_eq!(
                class(2 * k + 1, patterns).len() as i128,
                want,
                "{{{patterns}}} at k={k}"
            );
            assert_eq!(paths::catalan(k).unwrap(), want);
        }
    }

    for patterns in ["132,4312", "132,3421"] {
        for k in 0..=5usize {
            assert_eq!(
                class(2 * k + 1, patterns).len() as i128,
                paths::central_binom_minus(k).unwrap(),
                "{{{patterns}}} at k={k}"
            );
        }
    }

    for patterns in ["312,2431", "312,3421", "312,1432", "231,1423", "132,3412"] {
        for k in 0..=5usize {
            assert_eq!(
                class(2 * k + 1, patterns).len() as i128,
                paths::three_catalan(k).unwrap(),
                "{{{patterns}}} at k={k}"
            );
        }
    }

    // counted by generated little Schröder paths, not just the closed form
    for k in 0..=5usize {
        assert_eq!(
            class(2 * k + 1, "231,1432").len(),
            paths::count_family(Family::LittleSchroeder, k).unwrap() as usize,
            "k={k}"
        );
    }

    // counted by the composition C(xC(x)), whose coefficients start 1,1,3,11,44
    let b = series::b_series(6).unwrap();
    assert_eq!(&b.coefficients()[..5], &[1, 1, 3, 11, 44]);
    for k in 0..=5usize {
        assert_eq!(class(2 * k + 1, "231,4312").len() as i128, b.coeff(k), "k={k}");
    }
}

#[test]
fn path_bijections_are_bijective() {
    // for each of the eight path maps: round-trip identity on every class
    // member, validity and size of every image, and image cardinality equal
    // to the path family's cardinality
    for via in MapVia::ALL {
        for k in 0..=4usize {
            let n = 2 * k + 1;
            let members: Vec<Permutation> = class(n, "")
                .into_iter()
                .filter(|q| via.shape().matches(q))
                .collect();
            let mut images = HashSet::new();
            for pi in &members {
                let image = via.apply(pi).unwrap();
                assert_eq!(image.family(), via.family(), "{via} {pi}");
                assert_eq!(image.size(), k, "{via} {pi}");
                assert_eq!(via.invert(&image).unwrap(), *pi, "{via} {pi}");
                images.insert(image.to_string());
            }
            assert_eq!(images.len(), members.len(), "{via} k={k}");
            assert_eq!(
                images.len(),
                paths::generate_all(via.family(), k).unwrap().len(),
                "{via} k={k}"
            );
        }
    }

    // the ninth bijection: inversion carries one modified class onto the
    // other, and is its own inverse
    for k in 0..=4usize {
        let n = 2 * k + 1;
        let left = class(n, "132,3421");
        let right: HashSet<Permutation> = class(n, "132,4312").into_iter().collect();
        let images: HashSet<Permutation> = left
            .iter()
            .map(|q| bijections::modvee_modsvee(q).unwrap())
            .collect();
        assert_eq!(images, right, "k={k}");
        assert_eq!(images.len(), left.len(), "k={k}");
        for q in &left {
            let image = bijections::modvee_modsvee(q).unwrap();
            assert_eq!(bijections::modvee_modsvee(&image).unwrap(), *q);
        }
    }
}

#[test]
fn inversion_bijection_both_directions() {
    for n in [1usize, 3, 5, 7, 9] {
        let modvee_class: HashSet<Permutation> = class(n, "132,3421").into_iter().collect();
        let modsvee_class: HashSet<Permutation> = class(n, "132,4312").into_iter().collect();
        for q in &modvee_class {
            assert!(modsvee_class.contains(&q.inverse()), "{q}");
        }
        for q in &modsvee_class {
            assert!(modvee_class.contains(&q.inverse()), "{q}");
        }
    }
}

#[test]
fn partition_property() {
    // descent bottoms and NE hook endpoints partition positions 2..n for
    // every uniquely sorted permutation
    for n in [1usize, 3, 5, 7, 9] {
        for q in class(n, "") {
            assert!(chc::check_partition(&q).unwrap(), "{q}");
        }
    }
    // the length-12 sample is sorted but not uniquely, and its hook
    // configuration misses the point (7,8)
    let gaps = chc::partition_gaps(&p(SAMPLE_12)).unwrap();
    assert!(gaps.contains(&Point { pos: 7, val: 8 }));
    assert!(!gaps.is_empty());
}

#[test]
fn path_count_identities() {
    for k in 0..=7usize {
        assert_eq!(
            paths::count_family(Family::SMotzkin, k).unwrap() as i128,
            paths::three_catalan(k).unwrap(),
            "k={k}"
        );
    }
    for k in 1..=8usize {
        assert_eq!(
            paths::count_family(Family::LittleSchroeder, k).unwrap() * 2,
            paths::count_family(Family::Schroeder, k).unwrap(),
            "k={k}"
        );
    }
}

#[test]
fn algebraic_identities() {
    for k in 1..=12usize {
        assert!(series::check_sum_identity(k).unwrap(), "k={k}");
    }
    assert!(series::check_btilde_identity(25).unwrap());
}

#[test]
fn cross_check_report_is_green() {
    let report = enumeration::cross_check(4, DEFAULT_ENUM_LIMIT).unwrap();
    assert!(report.all_pass(), "{report:?}");
}

#[test]
fn shape_tags_match_pattern_classes_on_uniquely_sorted() {
    // among uniquely sorted permutations, each structural tag coincides
    // with avoidance of its pattern pair
    for n in [1usize, 3, 5, 7, 9] {
        let all = class(n, "");
        for shape in ShapeClass::ALL {
            let [a, b] = shape.patterns();
            let tagged: Vec<&Permutation> =
                all.iter().filter(|q| shape.matches(q)).collect();
            let avoiding: Vec<&Permutation> = all
                .iter()
                .filter(|q| q.avoids(&p(a)) && q.avoids(&p(b)))
                .collect();
            assert_eq!(tagged, avoiding, "{shape} at n={n}");
        }
    }
}

#[test]
fn nice_decomposition_round_trip() {
    // recompose ∘ decompose is the identity on every nice class member
    for k in 0..=4usize {
        let n = 2 * k + 1;
        for q in class(n, "231,4312") {
            if n >= 3 && chc::is_nice(&q).unwrap() {
                let (pi2, tau) = bijections::nice_decompose(&q).unwrap();
                assert_eq!(bijections::nice_recompose(&pi2, &tau).unwrap(), q, "{q}");
            }
        }
    }
}
