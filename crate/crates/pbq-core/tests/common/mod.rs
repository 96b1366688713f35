#![allow(dead_code)]

use std::path::PathBuf;

use rand::Rng;

use pbq_core::algebra::{parse_algebra_file, AlgebraFile, Biquandle, ParityBiquandle};
use pbq_core::cocycle::{parse_cocycle_file, CocyclePair, Tier};
use pbq_core::gauss_diagram::{
    parse_knot_table, r1_insert, r2_insert, rotate, GaussDiagram, GaussToken, Passage, R1Variant,
};

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

pub fn read_data(name: &str) -> String {
    std::fs::read_to_string(data_path(name)).unwrap()
}

pub fn bundled_biquandle() -> Biquandle {
    match parse_algebra_file(&read_data("biquandle_3.txt")).unwrap() {
        AlgebraFile::Biquandle(b) => b,
        AlgebraFile::Parity(_) => panic!("expected a biquandle file"),
    }
}

fn bundled_parity(name: &str) -> ParityBiquandle {
    match parse_algebra_file(&read_data(name)).unwrap() {
        AlgebraFile::Parity(x) => x,
        AlgebraFile::Biquandle(_) => panic!("expected a parity biquandle file"),
    }
}

pub fn p3() -> ParityBiquandle {
    bundled_parity("parity_biquandle_3.txt")
}

pub fn p4() -> ParityBiquandle {
    bundled_parity("parity_biquandle_4.txt")
}

fn bundled_cocycle(name: &str, x: &ParityBiquandle) -> CocyclePair {
    let mut pair = parse_cocycle_file(&read_data(name)).unwrap();
    assert_eq!(pair.classify(x), Tier::StronglyCompatible);
    pair
}

pub fn ex1() -> CocyclePair {
    bundled_cocycle("cocycle_z5_3.txt", &p3())
}

pub fn ex2() -> CocyclePair {
    bundled_cocycle("cocycle_z3_4.txt", &p4())
}

pub fn knot_table() -> Vec<(String, GaussDiagram)> {
    parse_knot_table(&read_data("knots_4.txt")).unwrap()
}

fn odometer(x: &mut [usize], radix: usize) -> bool {
    for v in x.iter_mut().rev() {
        *v += 1;
        if *v < radix {
            return true;
        }
        *v = 0;
    }
    false
}

/// Independent coloring oracle: filter all |X|^k semiarc maps against the
/// crossing relations evaluated directly.
pub fn blind_colorings(d: &GaussDiagram, x: &ParityBiquandle, all_even: bool) -> Vec<Vec<usize>> {
    let n = x.n();
    let k = d.semiarc_count();
    let crossings = pbq_core::gauss_diagram::crossing_semiarcs(d);
    let mut f = vec![0usize; k];
    let mut out = Vec::new();
    loop {
        let ok = crossings.iter().all(|c| {
            let e = if all_even { 0 } else { c.parity };
            if c.sign > 0 {
                f[c.over_in] == x.ove(e, f[c.over_out], f[c.under_in])
                    && f[c.under_out] == x.und(e, f[c.under_in], f[c.over_out])
            } else {
                f[c.over_out] == x.ove(e, f[c.over_in], f[c.under_out])
                    && f[c.under_in] == x.und(e, f[c.under_out], f[c.over_in])
            }
        });
        if ok {
            out.push(f.clone());
        }
        if !odometer(&mut f, n) {
            return out;
        }
    }
}

/// Independent solver oracle: all vectors in (Z_m)^nv satisfying the rows.
pub fn brute_solutions(m: u64, num_vars: usize, rows: &[(Vec<u64>, u64)]) -> Vec<Vec<u64>> {
    let mut x = vec![0usize; num_vars];
    let mut out = Vec::new();
    loop {
        let ok = rows.iter().all(|(coeffs, c)| {
            let s: u64 = coeffs
                .iter()
                .zip(&x)
                .map(|(&a, &v)| a % m * (v as u64) % m)
                .sum::<u64>()
                % m;
            s == c % m
        });
        if ok {
            out.push(x.iter().map(|&v| v as u64).collect());
        }
        if !odometer(&mut x, m as usize) {
            return out;
        }
    }
}

/// Independent axiom oracle on a raw 1-indexed 2n x 2n parity matrix:
/// diagonal, column bijectivity, sideways pair bijectivity, and the three
/// decorated exchange laws over all triples and parity patterns.
pub fn parity_axioms_hold(rows: &[Vec<usize>]) -> bool {
    let n = rows.len() / 2;
    let u = |a: usize, p: usize, q: usize| rows[a * n + p][q] - 1;
    let o = |a: usize, p: usize, q: usize| rows[a * n + p][n + q] - 1;
    for v in 0..n {
        if u(0, v, v) != o(0, v, v) {
            return false;
        }
    }
    for e in 0..2 {
        for y in 0..n {
            let mut seen_u = vec![false; n];
            let mut seen_o = vec![false; n];
            for v in 0..n {
                seen_u[u(e, v, y)] = true;
                seen_o[o(e, v, y)] = true;
            }
            if seen_u.contains(&false) || seen_o.contains(&false) {
                return false;
            }
        }
        let mut seen = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                seen[o(e, b, a) * n + u(e, a, b)] = true;
            }
        }
        if seen.contains(&false) {
            return false;
        }
    }
    for (a, b, c) in [(0usize, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)] {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if o(b, o(a, z, y), o(c, x, y)) != o(a, o(b, z, x), u(c, y, x)) {
                        return false;
                    }
                    if u(b, o(a, x, y), o(c, z, y)) != o(a, u(b, x, z), u(c, y, z)) {
                        return false;
                    }
                    if u(b, u(a, y, x), o(c, z, x)) != u(a, u(b, y, z), u(c, x, z)) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// The same oracle for a plain n x 2n biquandle matrix via parity doubling.
pub fn biquandle_axioms_hold(rows: &[Vec<usize>]) -> bool {
    let mut doubled = rows.to_vec();
    doubled.extend(rows.iter().cloned());
    parity_axioms_hold(&doubled)
}

/// Random single-component signed Gauss diagram with up to max_n crossings.
pub fn random_diagram(rng: &mut impl Rng, max_n: usize) -> GaussDiagram {
    let n = rng.gen_range(0..=max_n);
    let mut positions: Vec<usize> = (0..2 * n).collect();
    for i in (1..positions.len()).rev() {
        let j = rng.gen_range(0..=i);
        positions.swap(i, j);
    }
    let mut slots: Vec<Option<GaussToken>> = vec![None; 2 * n];
    for (i, pair) in positions.chunks(2).enumerate() {
        let sign: i8 = if rng.gen_bool(0.5) { 1 } else { -1 };
        let (op, up) = if rng.gen_bool(0.5) {
            (pair[0], pair[1])
        } else {
            (pair[1], pair[0])
        };
        slots[op] = Some(GaussToken { passage: Passage::Over, crossing_id: i + 1, sign });
        slots[up] = Some(GaussToken { passage: Passage::Under, crossing_id: i + 1, sign });
    }
    GaussDiagram::from_tokens(slots.into_iter().flatten().collect()).unwrap()
}

pub fn random_move(rng: &mut impl Rng, d: &GaussDiagram) -> GaussDiagram {
    let count = d.semiarc_count();
    match rng.gen_range(0..3) {
        0 => {
            let variant = if rng.gen_bool(0.5) {
                R1Variant::OverUnder
            } else {
                R1Variant::UnderOver
            };
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            r1_insert(d, rng.gen_range(0..count), variant, sign).unwrap()
        }
        1 => {
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            r2_insert(
                d,
                rng.gen_range(0..count),
                rng.gen_range(0..count),
                rng.gen_bool(0.5),
                sign,
            )
            .unwrap()
        }
        _ => rotate(d, rng.gen_range(0..count)),
    }
}
