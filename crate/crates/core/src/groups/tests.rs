use super::*;
use std::collections::HashSet as StdHashSet;

fn g(s: &str) -> GroupDescriptor {
    s.parse().unwrap()
}

/// Independent free-group ball: enumerate every word of length <= r over
/// the four letters, reduce it, and collect the distinct results.
fn free_ball_by_words(k: i32, r: usize) -> StdHashSet<Vec<i32>> {
    let letters: Vec<i32> = (1..=k).flat_map(|i| [i, -i]).collect();
    let mut out = StdHashSet::new();
    let mut frontier: Vec<Vec<i32>> = vec![vec![]];
    for _ in 0..=r {
        let mut next = Vec::new();
        for w in &frontier {
            let mut red: Vec<i32> = Vec::new();
            for &l in w {
                if red.last() == Some(&-l) {
                    red.pop();
                } else {
                    red.push(l);
                }
            }
            out.insert(red);
            for &l in &letters {
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        frontier = next;
    }
    out
}

#[test]
fn identity_is_neutral() {
    for name in ["F2", "Z", "Z^2", "BS(1,2)", "C(5)", "C(2)xC(3)"] {
        let gr = g(name);
        for x in gr.ball(2).unwrap() {
            assert_eq!(gr.mul(&x, &gr.identity()), x);
            assert_eq!(gr.mul(&gr.identity(), &x), x);
        }
    }
}

#[test]
fn bs_defining_relation() {
    for k in 2..=5 {
        let gr = GroupDescriptor::BaumslagSolitar(k);
        let (a, b) = (gr.bs_a(), gr.bs_b());
        let lhs = gr.mul(&gr.mul(&b, &a), &gr.inverse(&b));
        assert_eq!(lhs, gr.pow(&a, k as i64));
    }
    let gr = g("BS(1,2)");
    let lhs = gr.mul(&gr.mul(&gr.bs("0", 1).unwrap(), &gr.bs("1", 0).unwrap()), &gr.bs("0", -1).unwrap());
    assert_eq!(gr.format_element(&lhs), "(2, 0)");
}

#[test]
fn free_reduction() {
    let gr = g("F2");
    let x = gr.parse_element("a b").unwrap();
    let y = gr.parse_element("B a").unwrap();
    assert_eq!(gr.format_element(&gr.mul(&x, &y)), "a a");
}

#[test]
fn ball_examples() {
    assert_eq!(g("F2").ball(0).unwrap(), vec![g("F2").identity()]);
    assert_eq!(g("F2").ball(2).unwrap().len(), 17);
    let z = g("Z");
    let b: FiniteSet = z.ball(3).unwrap().into_iter().collect();
    let expected: FiniteSet = (-3..=3).map(|n| z.int(n)).collect();
    assert_eq!(b, expected);
    assert!(g("F2").ball(9).is_err());
}

#[test]
fn free_ball_sizes_match_word_enumeration() {
    let gr = g("F2");
    for r in 0..=6 {
        let ball = gr.ball(r).unwrap();
        assert_eq!(ball.len(), 2 * 3usize.pow(r as u32) - 1);
        let by_words = free_ball_by_words(2, r);
        let got: StdHashSet<Vec<i32>> = ball
            .into_iter()
            .map(|x| match x {
                GroupElement::Free(w) => w,
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(got, by_words);
    }
}

#[test]
fn ball_order_is_deterministic_and_shortlex() {
    let gr = g("F2");
    let b1 = gr.ball(3).unwrap();
    let b2 = gr.ball(3).unwrap();
    assert_eq!(b1, b2);
    let names: Vec<String> = b1.iter().take(5).map(|x| gr.format_element(x)).collect();
    assert_eq!(names, ["1", "a", "A", "b", "B"]);
    // shortlex order of the first sphere-2 elements
    assert_eq!(gr.format_element(&b1[5]), "a a");
}

#[test]
fn group_laws_on_small_balls() {
    for name in ["F2", "Z^2", "BS(1,2)", "BS(1,3)", "C(4)", "C(2)xC(2)", "ZxC(3)"] {
        let gr = g(name);
        let ball = gr.ball(3).unwrap();
        let small = gr.ball(2).unwrap();
        for x in &ball {
            let inv = gr.inverse(x);
            assert!(gr.is_identity(&gr.mul(x, &inv)), "{name}");
            assert!(gr.is_identity(&gr.mul(&inv, x)), "{name}");
            for y in &small {
                for z in &small {
                    assert_eq!(gr.mul(&gr.mul(x, y), z), gr.mul(x, &gr.mul(y, z)), "{name}");
                }
            }
        }
    }
}

#[test]
fn set_products() {
    let z = g("Z");
    let k = z.parse_set("{-1, 0, 1}").unwrap();
    let f = z.parse_set("{0,1,2,3,4,5}").unwrap();
    let kf = z.set_product(&k, &f).unwrap();
    assert_eq!(kf, (-1..=6).map(|n| z.int(n)).collect());
    assert_eq!(kf.len(), 8);
    assert_eq!(z.translate_set(&z.identity(), &f).unwrap(), f);

    let f2 = g("F2");
    let b1: FiniteSet = f2.ball(1).unwrap().into_iter().collect();
    let b2: FiniteSet = f2.ball(2).unwrap().into_iter().collect();
    let b3: FiniteSet = f2.ball(3).unwrap().into_iter().collect();
    assert_eq!(f2.set_product(&b1, &b2).unwrap(), b3);
    assert_eq!(b3.len(), 53);
}

#[test]
fn mismatched_elements_are_rejected() {
    let z = g("Z");
    let f2 = g("F2");
    assert!(z.try_mul(&z.identity(), &f2.identity()).is_err());
    assert!(f2.translate_set(&z.int(1), &FiniteSet::new()).is_err());
}

#[test]
fn text_round_trip() {
    for name in ["F2", "Z", "Z^3", "BS(1,2)", "C(4)", "C(2)xC(2)", "ZxBS(1,3)"] {
        let gr = g(name);
        assert_eq!(gr.to_string().parse::<GroupDescriptor>().unwrap(), gr);
        for x in gr.ball(2).unwrap() {
            assert_eq!(gr.parse_element(&gr.format_element(&x)).unwrap(), x, "{name}");
        }
    }
}

#[test]
fn finite_group_elements() {
    let gr = g("C(2)xC(4)");
    let els = gr.elements().unwrap();
    assert_eq!(els.len(), 8);
    assert!(gr.is_identity(&els[0]));
    assert!(g("Z").elements().is_err());
}
