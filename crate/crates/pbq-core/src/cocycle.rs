//! Cocycle pairs, Boltzmann weights, and the parity enhanced invariants.
//!
//! A cocycle pair holds two n x n tables over Z_m: the even cocycle phi0
//! and its odd companion phi1, encoded as coefficient matrices of the
//! characteristic maps. Verification promotes a raw pair to Compatible
//! (the four R3 parity patterns hold) or StronglyCompatible (the three
//! extra strong equations hold as well).

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::{data_lines, Biquandle, FileError, ParityBiquandle};
use crate::coloring::{enumerate_colorings, enumerate_colorings_all_even, is_coloring};
use crate::gauss_diagram::{crossing_semiarcs, GaussDiagram};

pub type CocycleTable = Vec<Vec<u64>>;

/// Verification level of a cocycle pair against a parity biquandle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Tier {
    RawPair,
    Compatible,
    StronglyCompatible,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CocycleError {
    #[error("modulus must be positive")]
    BadModulus,
    #[error("tables must be square, nonempty, and of equal size")]
    BadShape,
    #[error("table entry not reduced mod {m}")]
    EntryOutOfRange { m: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("not a valid coloring of the diagram")]
    InvalidColoring,
    #[error("cocycle pair is not verified compatible")]
    NotCompatible,
    #[error("cocycle pair is not verified strongly compatible")]
    NotStrong,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocyclePair {
    m: u64,
    phi0: CocycleTable,
    phi1: CocycleTable,
    tier: Tier,
}

impl CocyclePair {
    /// Unverified pair; entries of both tables must already be reduced mod m.
    pub fn new(m: u64, phi0: CocycleTable, phi1: CocycleTable) -> Result<Self, CocycleError> {
        if m == 0 {
            return Err(CocycleError::BadModulus);
        }
        let n = phi0.len();
        if n == 0 || phi1.len() != n {
            return Err(CocycleError::BadShape);
        }
        for row in phi0.iter().chain(phi1.iter()) {
            if row.len() != n {
                return Err(CocycleError::BadShape);
            }
            if row.iter().any(|&v| v >= m) {
                return Err(CocycleError::EntryOutOfRange { m });
            }
        }
        Ok(CocyclePair { m, phi0, phi1, tier: Tier::RawPair })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> usize {
        self.phi0.len()
    }

    pub fn phi0(&self) -> &CocycleTable {
        &self.phi0
    }

    pub fn phi1(&self) -> &CocycleTable {
        &self.phi1
    }

    pub fn tier(&self) -> Tier {
        self.tier
    }

    /// Verify against x and record the resulting tier.
    pub fn classify(&mut self, x: &ParityBiquandle) -> Tier {
        self.tier = if self.n() != x.n() || first_incompatibility(self, x).is_some() {
            Tier::RawPair
        } else if first_strong_failure(self, x).is_none() {
            Tier::StronglyCompatible
        } else {
            Tier::Compatible
        };
        self.tier
    }

    fn phi(&self, e: u8, x: usize, y: usize) -> u64 {
        if e == 0 {
            self.phi0[x][y]
        } else {
            self.phi1[x][y]
        }
    }
}

pub fn is_reduced(phi0: &[Vec<u64>]) -> bool {
    phi0.iter().enumerate().all(|(x, row)| row[x] == 0)
}

/// The even 2-cocycle condition, exhaustively over all triples.
pub fn is_cocycle(phi0: &[Vec<u64>], m: u64, x_even: &Biquandle) -> bool {
    let n = x_even.n();
    if phi0.len() != n {
        return false;
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = phi0[x][y]
                    + phi0[x_even.under(x, y)][x_even.over(z, y)]
                    + phi0[y][z];
                let rhs = phi0[x_even.under(x, z)][x_even.under(y, z)]
                    + phi0[x][z]
                    + phi0[x_even.over(y, x)][x_even.over(z, x)];
                if lhs % m != rhs % m {
                    return false;
                }
            }
        }
    }
    true
}

/// The coboundary of a 1-cochain: (d lambda)(x,y) = lambda(x) - lambda(x under y) - lambda(y) + lambda(y over x).
pub fn coboundary_1(lambda: &[u64], m: u64, x_even: &Biquandle) -> CocycleTable {
    let n = x_even.n();
    let mut table = vec![vec![0u64; n]; n];
    for x in 0..n {
        for y in 0..n {
            let pos = lambda[x] % m + lambda[x_even.over(y, x)] % m;
            let neg = lambda[x_even.under(x, y)] % m + lambda[y] % m;
            table[x][y] = (pos + 2 * m - neg) % m;
        }
    }
    table
}

/// Witness for a failed compatibility check, with 0-indexed elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompatibilityFailure {
    NotReduced { x: usize },
    CocycleCondition { x: usize, y: usize, z: usize },
    MixedPattern { pattern: (u8, u8, u8), x: usize, y: usize, z: usize },
    StrongEquation { equation: u8, x: usize, y: usize, z: usize },
}

impl fmt::Display for CompatibilityFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CompatibilityFailure::NotReduced { x } => {
                write!(f, "phi0 is not reduced: phi0(x{0}, x{0}) != 0", x + 1)
            }
            CompatibilityFailure::CocycleCondition { x, y, z } => write!(
                f,
                "even cocycle condition fails at (x{}, x{}, x{})",
                x + 1,
                y + 1,
                z + 1
            ),
            CompatibilityFailure::MixedPattern { pattern: (a, b, c), x, y, z } => write!(
                f,
                "compatibility pattern ({a},{b},{c}) fails at (x{}, x{}, x{})",
                x + 1,
                y + 1,
                z + 1
            ),
            CompatibilityFailure::StrongEquation { equation, x, y, z } => write!(
                f,
                "strong equation {equation} fails at (x{}, x{}, x{})",
                x + 1,
                y + 1,
                z + 1
            ),
        }
    }
}

/// First failing check among reduced, even cocycle, and the three mixed
/// patterns. Sizes must match.
pub fn first_incompatibility(
    pair: &CocyclePair,
    x_pb: &ParityBiquandle,
) -> Option<CompatibilityFailure> {
    let n = x_pb.n();
    assert_eq!(pair.n(), n, "cocycle pair and parity biquandle sizes differ");
    let m = pair.m;
    if let Some(x) = (0..n).find(|&x| pair.phi0[x][x] != 0) {
        return Some(CompatibilityFailure::NotReduced { x });
    }
    for (a, b, c) in [(0u8, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1)] {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = pair.phi(a, x, y)
                        + pair.phi(b, x_pb.und(a, x, y), x_pb.ove(c, z, y))
                        + pair.phi(c, y, z);
                    let rhs = pair.phi(a, x_pb.und(b, x, z), x_pb.und(c, y, z))
                        + pair.phi(b, x, z)
                        + pair.phi(c, x_pb.ove(a, y, x), x_pb.ove(b, z, x));
                    if lhs % m != rhs % m {
                        return Some(if (a, b, c) == (0, 0, 0) {
                            CompatibilityFailure::CocycleCondition { x, y, z }
                        } else {
                            CompatibilityFailure::MixedPattern { pattern: (a, b, c), x, y, z }
                        });
                    }
                }
            }
        }
    }
    None
}

/// First failing strong equation (1 to 3). Sizes must match.
pub fn first_strong_failure(
    pair: &CocyclePair,
    x_pb: &ParityBiquandle,
) -> Option<CompatibilityFailure> {
    let n = x_pb.n();
    assert_eq!(pair.n(), n, "cocycle pair and parity biquandle sizes differ");
    let phi0 = &pair.phi0;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let eqs = [
                    phi0[y][z] == phi0[x_pb.ove(1, y, x)][x_pb.ove(1, z, x)],
                    phi0[x][z] == phi0[x_pb.und(1, x, y)][x_pb.ove(1, z, y)],
                    phi0[x][y] == phi0[x_pb.und(1, x, z)][x_pb.und(1, y, z)],
                ];
                if let Some(i) = eqs.iter().position(|&ok| !ok) {
                    return Some(CompatibilityFailure::StrongEquation {
                        equation: i as u8 + 1,
                        x,
                        y,
                        z,
                    });
                }
            }
        }
    }
    None
}

/// Reduced, even cocycle condition, and the three mixed parity patterns.
pub fn is_compatible(pair: &CocyclePair, x_pb: &ParityBiquandle) -> bool {
    pair.n() == x_pb.n() && first_incompatibility(pair, x_pb).is_none()
}

/// Compatible plus the three strong equations.
pub fn is_strongly_compatible(pair: &CocyclePair, x_pb: &ParityBiquandle) -> bool {
    is_compatible(pair, x_pb) && first_strong_failure(pair, x_pb).is_none()
}

/// The weight pair at a crossing: underarc and overarc labels read on the
/// input side of the crossing map (incoming at positive, outgoing at negative).
fn weight_args(c: &crate::gauss_diagram::CrossingSemiarcs, f: &[usize]) -> (usize, usize) {
    if c.sign > 0 {
        (f[c.under_in], f[c.over_out])
    } else {
        (f[c.under_out], f[c.over_in])
    }
}

fn check_coloring(d: &GaussDiagram, x: &ParityBiquandle, f: &[usize]) -> Result<(), WeightError> {
    if f.len() != d.semiarc_count() || f.iter().any(|&v| v >= x.n()) || !is_coloring(d, x, f) {
        return Err(WeightError::InvalidColoring);
    }
    Ok(())
}

/// BW(f): signed sum of phi^parity over the classical crossings, in Z_m.
pub fn boltzmann_weight(
    d: &GaussDiagram,
    x: &ParityBiquandle,
    f: &[usize],
    pair: &CocyclePair,
) -> Result<u64, WeightError> {
    if pair.tier < Tier::Compatible {
        return Err(WeightError::NotCompatible);
    }
    check_coloring(d, x, f)?;
    let m = pair.m;
    let mut acc = 0u64;
    for c in crossing_semiarcs(d) {
        let (xc, yc) = weight_args(&c, f);
        let v = pair.phi(c.parity, xc, yc);
        acc = if c.sign > 0 { (acc + v) % m } else { (acc + m - v) % m };
    }
    Ok(acc)
}

/// SBW(f): the even and odd signed sums taken separately.
pub fn strong_boltzmann_weight(
    d: &GaussDiagram,
    x: &ParityBiquandle,
    f: &[usize],
    pair: &CocyclePair,
) -> Result<(u64, u64), WeightError> {
    if pair.tier < Tier::StronglyCompatible {
        return Err(WeightError::NotStrong);
    }
    check_coloring(d, x, f)?;
    let m = pair.m;
    let mut acc = [0u64; 2];
    for c in crossing_semiarcs(d) {
        let (xc, yc) = weight_args(&c, f);
        let v = pair.phi(c.parity, xc, yc);
        let slot = &mut acc[c.parity as usize];
        *slot = if c.sign > 0 { (*slot + v) % m } else { (*slot + m - v) % m };
    }
    Ok((acc[0], acc[1]))
}

/// Generating function of a multiset of weights: exponent to multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightPolynomial {
    m: u64,
    variables: u8,
    terms: BTreeMap<(u64, u64), usize>,
}

impl WeightPolynomial {
    pub fn from_weights(m: u64, weights: impl IntoIterator<Item = u64>) -> Self {
        let mut terms = BTreeMap::new();
        for w in weights {
            *terms.entry((w % m, 0)).or_insert(0) += 1;
        }
        WeightPolynomial { m, variables: 1, terms }
    }

    pub fn from_weight_pairs(m: u64, weights: impl IntoIterator<Item = (u64, u64)>) -> Self {
        let mut terms = BTreeMap::new();
        for (w0, w1) in weights {
            *terms.entry((w0 % m, w1 % m)).or_insert(0) += 1;
        }
        WeightPolynomial { m, variables: 2, terms }
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn variables(&self) -> u8 {
        self.variables
    }

    pub fn terms(&self) -> &BTreeMap<(u64, u64), usize> {
        &self.terms
    }

    pub fn total_multiplicity(&self) -> usize {
        self.terms.values().sum()
    }

    /// Substitute u = v: exponent pairs collapse to their sum mod m.
    pub fn specialized(&self) -> WeightPolynomial {
        WeightPolynomial::from_weights(
            self.m,
            self.terms
                .iter()
                .flat_map(|(&(e0, e1), &mult)| std::iter::repeat_n((e0 + e1) % self.m, mult)),
        )
    }
}

fn push_power(out: &mut String, var: char, e: u64) {
    if e == 0 {
        return;
    }
    out.push(var);
    if e > 1 {
        out.push_str(&format!("^{e}"));
    }
}

impl fmt::Display for WeightPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::with_capacity(self.terms.len());
        for (&(e0, e1), &mult) in self.terms.iter().rev() {
            let mut vars = String::new();
            push_power(&mut vars, 'u', e0);
            push_power(&mut vars, 'v', e1);
            if vars.is_empty() {
                parts.push(mult.to_string());
            } else if mult == 1 {
                parts.push(vars);
            } else {
                parts.push(format!("{mult}{vars}"));
            }
        }
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn polynomial_to_string(p: &WeightPolynomial) -> String {
    p.to_string()
}

/// Sum of u^BW(f) over all colorings.
pub fn invariant_polynomial(
    d: &GaussDiagram,
    x: &ParityBiquandle,
    pair: &CocyclePair,
) -> Result<WeightPolynomial, WeightError> {
    let weights: Result<Vec<u64>, _> = enumerate_colorings(d, x)
        .iter()
        .map(|f| boltzmann_weight(d, x, f, pair))
        .collect();
    Ok(WeightPolynomial::from_weights(pair.m, weights?))
}

/// Sum of u^SBW(f)_0 v^SBW(f)_1 over all colorings.
pub fn strong_invariant_polynomial(
    d: &GaussDiagram,
    x: &ParityBiquandle,
    pair: &CocyclePair,
) -> Result<WeightPolynomial, WeightError> {
    let weights: Result<Vec<(u64, u64)>, _> = enumerate_colorings(d, x)
        .iter()
        .map(|f| strong_boltzmann_weight(d, x, f, pair))
        .collect();
    Ok(WeightPolynomial::from_weight_pairs(pair.m, weights?))
}

/// Classical comparison: every crossing treated as even, weights from phi0 only.
pub fn non_parity_invariant_polynomial(
    d: &GaussDiagram,
    x: &ParityBiquandle,
    pair: &CocyclePair,
) -> Result<WeightPolynomial, WeightError> {
    if pair.tier < Tier::Compatible {
        return Err(WeightError::NotCompatible);
    }
    let m = pair.m;
    let crossings = crossing_semiarcs(d);
    let mut weights = Vec::new();
    for f in enumerate_colorings_all_even(d, x) {
        let mut acc = 0u64;
        for c in &crossings {
            let (xc, yc) = weight_args(c, &f);
            let v = pair.phi0[xc][yc];
            acc = if c.sign > 0 { (acc + v) % m } else { (acc + m - v) % m };
        }
        weights.push(acc);
    }
    Ok(WeightPolynomial::from_weights(m, weights))
}

pub fn parse_cocycle_file(text: &str) -> Result<CocyclePair, FileError> {
    let lines = data_lines(text);
    let (_, header) = lines.first().ok_or(FileError::BadHeader)?;
    let words: Vec<&str> = header.split_whitespace().collect();
    if words.len() != 4 || words[0] != "cocycle" || words[2] != "mod" {
        return Err(FileError::BadHeader);
    }
    let n: usize = words[1].parse().map_err(|_| FileError::BadHeader)?;
    let m: u64 = words[3].parse().map_err(|_| FileError::BadHeader)?;
    if lines.len() != n + 1 {
        return Err(FileError::BadShape);
    }
    let mut phi0 = Vec::with_capacity(n);
    let mut phi1 = Vec::with_capacity(n);
    for &(ln, l) in &lines[1..] {
        let row: Vec<u64> = l
            .split_whitespace()
            .map(|w| w.parse::<u64>().map_err(|_| FileError::BadInteger { line: ln }))
            .collect::<Result<_, _>>()?;
        if row.len() != 2 * n {
            return Err(FileError::BadShape);
        }
        phi0.push(row[..n].to_vec());
        phi1.push(row[n..].to_vec());
    }
    Ok(CocyclePair::new(m, phi0, phi1)?)
}

pub fn serialize_cocycle(pair: &CocyclePair) -> String {
    let mut out = format!("cocycle {} mod {}\n", pair.n(), pair.m);
    for (r0, r1) in pair.phi0.iter().zip(pair.phi1.iter()) {
        let line: Vec<String> = r0.iter().chain(r1.iter()).map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}
