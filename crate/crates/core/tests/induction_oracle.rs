//! Induction matrices checked against a brute-force computation on explicit
//! permutation groups. Characters here are computed from the permutations
//! themselves (sign, fixed points, cosets of the Klein subgroup), not from
//! the library's character tables.

use std::f64::consts::PI;

use bianchi_core::rep_theory::{canonical_embedding, canonical_embedding_names, induction_matrix};

type Perm = Vec<usize>;

#[derive(Clone, Copy, Debug)]
struct C(f64, f64);

impl C {
    fn zeta(k: i64) -> C {
        let a = 2.0 * PI * (k.rem_euclid(3) as f64) / 3.0;
        C(a.cos(), a.sin())
    }
    fn real(x: f64) -> C {
        C(x, 0.0)
    }
    fn mul_conj(self, o: C) -> C {
        C(self.0 * o.0 + self.1 * o.1, self.1 * o.0 - self.0 * o.1)
    }
}

fn compose(p: &Perm, q: &Perm) -> Perm {
    q.iter().map(|&i| p[i]).collect()
}

fn inverse(p: &Perm) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

fn closure(gens: &[Perm], n: usize) -> Vec<Perm> {
    let mut elems: Vec<Perm> = vec![(0..n).collect()];
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let h = compose(g, &elems[i]);
            if !elems.contains(&h) {
                elems.push(h);
            }
        }
        i += 1;
    }
    elems
}

fn sign(p: &Perm) -> f64 {
    let mut s = 1.0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

fn fixed(p: &Perm) -> f64 {
    p.iter().enumerate().filter(|(i, &j)| *i == j).count() as f64
}

fn power(p: &Perm, k: usize) -> Perm {
    (0..k).fold((0..p.len()).collect(), |acc, _| compose(p, &acc))
}

const T3: [usize; 3] = [1, 2, 0];
const T4: [usize; 4] = [1, 2, 0, 3];
const X: [usize; 4] = [1, 0, 3, 2];
const Y: [usize; 4] = [2, 3, 0, 1];
const Z: [usize; 4] = [3, 2, 1, 0];

type Char = Box<dyn Fn(&Perm) -> C>;

struct Group {
    elems: Vec<Perm>,
    chars: Vec<Char>,
}

/// Exponent `k` with `g` in `t^k K`, where `K` is the Klein subgroup.
fn klein_coset(g: &Perm) -> i64 {
    let klein = closure(&[X.to_vec(), Y.to_vec()], 4);
    (0..3)
        .find(|&k| klein.contains(&compose(&inverse(&power(&T4.to_vec(), k)), g)))
        .unwrap() as i64
}

fn cyclic_exponent(t: &Perm, g: &Perm) -> i64 {
    (0..3).find(|&k| power(t, k) == *g).unwrap() as i64
}

fn klein_char(kernel: [usize; 4]) -> Char {
    Box::new(move |g: &Perm| {
        if g.iter().enumerate().all(|(i, &j)| i == j) || g[..] == kernel {
            C::real(1.0)
        } else {
            C::real(-1.0)
        }
    })
}

/// The group named `name` in the library's irreducible ordering, as a
/// subgroup of the given ambient permutations.
fn group(name: &str, ambient: &str) -> Group {
    let n = match ambient {
        "Trivial" => 1,
        "C2" => 2,
        "C3" | "S3" => 3,
        _ => 4,
    };
    let one: Char = Box::new(|_| C::real(1.0));
    match (name, ambient) {
        ("Trivial", _) => Group {
            elems: closure(&[], n),
            chars: vec![one],
        },
        ("C2", amb) => {
            let s: Perm = match amb {
                "C2" => vec![1, 0],
                "S3" => vec![1, 0, 2],
                _ => X.to_vec(),
            };
            let s2 = s.clone();
            Group {
                elems: closure(&[s], n),
                chars: vec![
                    one,
                    Box::new(move |g| C::real(if *g == s2 { -1.0 } else { 1.0 })),
                ],
            }
        }
        ("C2y", _) => c2_in_klein(Y, n),
        ("C2z", _) => c2_in_klein(Z, n),
        ("C3", amb) => {
            let t: Perm = if amb == "A4" {
                T4.to_vec()
            } else {
                T3.to_vec()
            };
            let (t1, t2) = (t.clone(), t.clone());
            Group {
                elems: closure(&[t], n),
                chars: vec![
                    one,
                    Box::new(move |g| C::zeta(cyclic_exponent(&t1, g))),
                    Box::new(move |g| C::zeta(2 * cyclic_exponent(&t2, g))),
                ],
            }
        }
        ("V4", _) => Group {
            elems: closure(&[X.to_vec(), Y.to_vec()], 4),
            chars: vec![one, klein_char(X), klein_char(Y), klein_char(Z)],
        },
        ("S3", _) => Group {
            elems: closure(&[vec![1, 0, 2], T3.to_vec()], 3),
            chars: vec![
                one,
                Box::new(|g| C::real(sign(g))),
                Box::new(|g| C::real(fixed(g) - 1.0)),
            ],
        },
        ("A4", _) => Group {
            elems: closure(&[T4.to_vec(), X.to_vec()], 4),
            chars: vec![
                one,
                Box::new(|g| C::zeta(klein_coset(g))),
                Box::new(|g| C::zeta(2 * klein_coset(g))),
                Box::new(|g| C::real(fixed(g) - 1.0)),
            ],
        },
        _ => panic!("no model for {name} in {ambient}"),
    }
}

fn c2_in_klein(s: [usize; 4], n: usize) -> Group {
    let s = s.to_vec();
    let s2 = s.clone();
    Group {
        elems: closure(&[s], n),
        chars: vec![
            Box::new(|_| C::real(1.0)),
            Box::new(move |g| C::real(if *g == s2 { -1.0 } else { 1.0 })),
        ],
    }
}

/// Multiplicity of each irreducible of `sup` in the induced character.
fn brute_induction(sub: &Group, sup: &Group) -> Vec<Vec<i64>> {
    let h = sub.elems.len() as f64;
    let g_order = sup.elems.len() as f64;
    let induced: Vec<Vec<C>> = sub
        .chars
        .iter()
        .map(|chi| {
            sup.elems
                .iter()
                .map(|g| {
                    let mut acc = C(0.0, 0.0);
                    for x in &sup.elems {
                        let c = compose(&inverse(x), &compose(g, x));
                        if sub.elems.contains(&c) {
                            let v = chi(&c);
                            acc = C(acc.0 + v.0, acc.1 + v.1);
                        }
                    }
                    C(acc.0 / h, acc.1 / h)
                })
                .collect()
        })
        .collect();
    sup.chars
        .iter()
        .map(|psi| {
            induced
                .iter()
                .map(|ind| {
                    let mut acc = C(0.0, 0.0);
                    for (g, v) in sup.elems.iter().zip(ind) {
                        let p = v.mul_conj(psi(g));
                        acc = C(acc.0 + p.0, acc.1 + p.1);
                    }
                    let m = acc.0 / g_order;
                    assert!((m - m.round()).abs() < 1e-9 && acc.1.abs() < 1e-9);
                    m.round() as i64
                })
                .collect()
        })
        .collect()
}

fn model(name: &str) -> (Group, Group) {
    let (sub, sup) = name.split_once("-in-").unwrap();
    let (sup, sub) = match sup {
        "V4-x" => ("V4", "C2"),
        "V4-y" => ("V4", "C2y"),
        "V4-z" => ("V4", "C2z"),
        s => (s, sub),
    };
    (group(sub, sup), group(sup, sup))
}

#[test]
fn every_registry_embedding_matches_brute_force() {
    let names = canonical_embedding_names();
    assert_eq!(names.len(), 19);
    for name in names {
        let (sub, sup) = model(&name);
        let expected = brute_induction(&sub, &sup);
        let got = induction_matrix(&canonical_embedding(&name).unwrap())
            .unwrap()
            .into_matrix()
            .to_i64_rows()
            .unwrap();
        assert_eq!(got, expected, "{name}");
    }
}

#[test]
fn regular_representation() {
    // inducing the trivial character of the trivial group gives the regular
    // representation: each irreducible appears with multiplicity its dimension
    let (sub, sup) = model("Trivial-in-A4");
    assert_eq!(
        brute_induction(&sub, &sup),
        vec![vec![1], vec![1], vec![1], vec![3]]
    );
}
