//! Linear constraint systems over Z_m for cocycle compatibility, and a
//! gcd-aware solver valid for composite moduli.
//!
//! Variables are the entries of phi0 then phi1 in row-major order, so
//! var(e, x, y) = e n^2 + x n + y. All generated rows are homogeneous.

use thiserror::Error;

use crate::algebra::ParityBiquandle;
use crate::cocycle::{CocyclePair, Tier};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strength {
    Compatible,
    StronglyCompatible,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystemModM {
    pub m: u64,
    pub num_vars: usize,
    pub rows: Vec<(Vec<u64>, u64)>,
}

impl LinearSystemModM {
    pub fn satisfied_by(&self, x: &[u64]) -> bool {
        self.rows.iter().all(|(coeffs, c)| {
            let s: u128 = coeffs
                .iter()
                .zip(x)
                .map(|(&a, &v)| a as u128 * v as u128)
                .sum();
            s % self.m as u128 == (c % self.m) as u128
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("system is inconsistent")]
    Inconsistent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("solution count {count} exceeds cap")]
    CapExceeded { count: u128 },
}

fn var(n: usize, e: u8, x: usize, y: usize) -> usize {
    e as usize * n * n + x * n + y
}

/// Diagonal rows, the four R3 parity patterns, and optionally the strong rows.
pub fn build_constraint_system(
    x_pb: &ParityBiquandle,
    m: u64,
    strength: Strength,
) -> LinearSystemModM {
    let n = x_pb.n();
    let nv = 2 * n * n;
    let mut rows = Vec::new();
    let add = |row: &mut Vec<u64>, idx: usize, sgn: i64| {
        row[idx] = (row[idx] as i64 + sgn).rem_euclid(m as i64) as u64;
    };
    for x in 0..n {
        let mut r = vec![0u64; nv];
        r[var(n, 0, x, x)] = 1 % m;
        rows.push((r, 0));
    }
    for (a, b, c) in [(0u8, 0u8, 0u8), (1, 1, 0), (1, 0, 1), (0, 1, 1)] {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let mut r = vec![0u64; nv];
                    add(&mut r, var(n, a, x, y), 1);
                    add(&mut r, var(n, b, x_pb.und(a, x, y), x_pb.ove(c, z, y)), 1);
                    add(&mut r, var(n, c, y, z), 1);
                    add(&mut r, var(n, a, x_pb.und(b, x, z), x_pb.und(c, y, z)), -1);
                    add(&mut r, var(n, b, x, z), -1);
                    add(&mut r, var(n, c, x_pb.ove(a, y, x), x_pb.ove(b, z, x)), -1);
                    rows.push((r, 0));
                }
            }
        }
    }
    if strength == Strength::StronglyCompatible {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let eqs = [
                        ((y, z), (x_pb.ove(1, y, x), x_pb.ove(1, z, x))),
                        ((x, z), (x_pb.und(1, x, y), x_pb.ove(1, z, y))),
                        ((x, y), (x_pb.und(1, x, z), x_pb.und(1, y, z))),
                    ];
                    for ((p, q), (pp, qq)) in eqs {
                        let mut r = vec![0u64; nv];
                        add(&mut r, var(n, 0, p, q), 1);
                        add(&mut r, var(n, 0, pp, qq), -1);
                        rows.push((r, 0));
                    }
                }
            }
        }
    }
    LinearSystemModM { m, num_vars: nv, rows }
}

fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    (old_s, old_t)
}

/// Unit u mod m with u * a congruent to gcd(a, m).
fn unit_for(a: u64, m: u64) -> u64 {
    let g = gcd(a, m);
    let m2 = m / g;
    let mut u = crate::algebra::mod_inverse(a / g, m2).expect("a/g is a unit mod m/g");
    while gcd(u, m) != 1 {
        u += m2;
    }
    u % m
}

/// The solutions of a system: a particular vector plus the subgroup spanned
/// by the generators, each of the listed cyclic order. Count is the product
/// of the orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSet {
    m: u64,
    num_vars: usize,
    particular: Vec<u64>,
    factors: Vec<(u64, Vec<u64>)>,
    count: u128,
}

impl SolutionSet {
    pub fn count(&self) -> u128 {
        self.count
    }

    pub fn particular(&self) -> &[u64] {
        &self.particular
    }

    /// (cyclic order, generator vector) pairs.
    pub fn generators(&self) -> &[(u64, Vec<u64>)] {
        &self.factors
    }

    /// All solutions in mixed-radix order, or None when count exceeds cap.
    pub fn materialize(&self, cap: u128) -> Option<Vec<Vec<u64>>> {
        if self.count > cap {
            return None;
        }
        let m = self.m as u128;
        let mut out = Vec::with_capacity(self.count as usize);
        let mut combo = vec![0u64; self.factors.len()];
        loop {
            let mut x = self.particular.clone();
            for ((_, g), &c) in self.factors.iter().zip(&combo) {
                if c == 0 {
                    continue;
                }
                for (xj, &gj) in x.iter_mut().zip(g) {
                    *xj = ((*xj as u128 + c as u128 * gj as u128) % m) as u64;
                }
            }
            out.push(x);
            let mut advanced = false;
            for idx in (0..combo.len()).rev() {
                combo[idx] += 1;
                if combo[idx] < self.factors[idx].0 {
                    advanced = true;
                    break;
                }
                combo[idx] = 0;
            }
            if !advanced {
                return Some(out);
            }
        }
    }
}

/// Gcd-aware elimination over Z_m (Howell-style), valid for composite m.
pub fn solve_mod_m(sys: &LinearSystemModM) -> Result<SolutionSet, SolveError> {
    let m = sys.m;
    let mi = m as i128;
    let nv = sys.num_vars;
    let mut pend: Vec<Vec<u64>> = Vec::new();
    for (coeffs, c) in &sys.rows {
        let mut row: Vec<u64> = coeffs.iter().map(|&v| v % m).collect();
        row.push(c % m);
        if row[..nv].iter().all(|&v| v == 0) {
            if row[nv] != 0 {
                return Err(SolveError::Inconsistent);
            }
            continue;
        }
        pend.push(row);
    }
    let mut res: Vec<Option<Vec<u64>>> = vec![None; nv];
    for col in 0..nv {
        let (mut here, mut rest): (Vec<_>, Vec<_>) =
            pend.into_iter().partition(|r| r[col] != 0);
        if here.is_empty() {
            pend = rest;
            continue;
        }
        let mut piv = here.pop().unwrap();
        for mut r in here {
            let (a, b) = (piv[col], r[col]);
            let g = gcd(a, b);
            let (p, q) = ext_gcd(a as i128, b as i128);
            let (bf, af) = ((b / g) as i128, (a / g) as i128);
            for j in col..=nv {
                let (x, y) = (piv[j] as i128, r[j] as i128);
                piv[j] = (p * x + q * y).rem_euclid(mi) as u64;
                r[j] = (bf * x - af * y).rem_euclid(mi) as u64;
            }
            if r[col..].iter().any(|&v| v != 0) {
                if r[col..nv].iter().all(|&v| v == 0) {
                    return Err(SolveError::Inconsistent);
                }
                rest.push(r);
            }
        }
        let u = unit_for(piv[col], m) as u128;
        for p in &mut piv[col..] {
            *p = (*p as u128 * u % m as u128) as u64;
        }
        let d = piv[col];
        let extra: Vec<u64> = piv
            .iter()
            .map(|&v| (v as u128 * (m / d) as u128 % m as u128) as u64)
            .collect();
        if extra[col..].iter().any(|&v| v != 0) {
            if extra[col..nv].iter().all(|&v| v == 0) {
                return Err(SolveError::Inconsistent);
            }
            rest.push(extra);
        }
        res[col] = Some(piv);
        pend = rest;
    }
    for r in &pend {
        if r[nv] != 0 {
            return Err(SolveError::Inconsistent);
        }
    }
    let divisors: Vec<u64> = (0..nv)
        .map(|i| res[i].as_ref().map_or(m, |r| r[i]))
        .collect();
    let back_sub = |x: &mut Vec<u64>, from: usize, affine: bool| -> Result<(), SolveError> {
        for l in (0..from).rev() {
            if let Some(r) = &res[l] {
                let s: i128 = (l + 1..nv).map(|j| r[j] as i128 * x[j] as i128).sum();
                let target = if affine { r[nv] as i128 } else { 0 };
                let c = (target - s).rem_euclid(mi) as u64;
                let dl = r[l];
                if !c.is_multiple_of(dl) {
                    return Err(SolveError::Inconsistent);
                }
                x[l] = (c / dl) % m;
            }
        }
        Ok(())
    };
    let mut particular = vec![0u64; nv];
    back_sub(&mut particular, nv, true)?;
    let mut factors = Vec::new();
    let mut count: u128 = 1;
    for i in 0..nv {
        let di = divisors[i];
        count *= di as u128;
        if di == 1 {
            continue;
        }
        let mut x = vec![0u64; nv];
        x[i] = m / di;
        back_sub(&mut x, i, false).expect("homogeneous extension");
        factors.push((di, x));
    }
    Ok(SolutionSet { m, num_vars: nv, particular, factors, count })
}

/// Flatten a pair into the solver's variable order.
pub fn pair_vector(pair: &CocyclePair) -> Vec<u64> {
    pair.phi0()
        .iter()
        .chain(pair.phi1().iter())
        .flatten()
        .copied()
        .collect()
}

/// All (strongly) compatible pairs for X over Z_m, verified and tiered.
pub fn enumerate_cocycles(
    x_pb: &ParityBiquandle,
    m: u64,
    strength: Strength,
    cap: u128,
) -> Result<Vec<CocyclePair>, SearchError> {
    let sys = build_constraint_system(x_pb, m, strength);
    let sol = solve_mod_m(&sys).expect("generated systems are homogeneous");
    let Some(vecs) = sol.materialize(cap) else {
        return Err(SearchError::CapExceeded { count: sol.count() });
    };
    let n = x_pb.n();
    let mut out = Vec::with_capacity(vecs.len());
    for v in vecs {
        let table = |e: usize| -> Vec<Vec<u64>> {
            (0..n)
                .map(|i| v[e * n * n + i * n..e * n * n + (i + 1) * n].to_vec())
                .collect()
        };
        let mut pair = CocyclePair::new(m, table(0), table(1)).expect("entries reduced");
        let tier = pair.classify(x_pb);
        debug_assert!(
            tier >= match strength {
                Strength::Compatible => Tier::Compatible,
                Strength::StronglyCompatible => Tier::StronglyCompatible,
            },
            "solver output failed the exhaustive verifier"
        );
        out.push(pair);
    }
    Ok(out)
}
