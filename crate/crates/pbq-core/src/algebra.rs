//! Finite biquandles and parity biquandles as operation tables, exhaustive
//! axiom verification, Alexander-type constructors, and the text file format.
//!
//! Elements are 1-indexed in matrices, files and failure reports, matching
//! the usual presentation; accessor methods use 0-indexed elements.
//!
//! A parity biquandle matrix is 2n x 2n: rows 1..n hold the even operations
//! as the blocks [under0 | over0], rows n+1..2n the odd operations
//! [under1 | over1]. A plain biquandle matrix is the single band n x 2n.

use std::fmt;
use thiserror::Error;

pub type Table = Vec<Vec<usize>>;

/// One verified axiom violation; all element indices are 1-based.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AxiomFailure {
    /// Axiom (i): x under x != x over x.
    Diagonal { x: usize },
    /// Axiom (ii): a column map x -> x op y is not a bijection.
    ColumnNotBijective { op: &'static str, parity: u8, y: usize },
    /// Axiom (ii): the sideways pair map S_e(x,y) = (y over_e x, x under_e y)
    /// is not a bijection on pairs.
    PairMapNotBijective { parity: u8 },
    /// Axiom (iii): exchange law `law` (1..3) fails for the parity pattern
    /// (a,b,c) at the witness triple.
    ExchangeLaw { law: u8, pattern: (u8, u8, u8), x: usize, y: usize, z: usize },
}

impl fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AxiomFailure::Diagonal { x } => {
                write!(f, "axiom (i) fails at x={x}: x under x != x over x")
            }
            AxiomFailure::ColumnNotBijective { op, parity, y } => {
                write!(f, "axiom (ii) fails: {op}{parity} column y={y} is not a bijection")
            }
            AxiomFailure::PairMapNotBijective { parity } => {
                write!(f, "axiom (ii) fails: pair map S{parity} is not a bijection")
            }
            AxiomFailure::ExchangeLaw { law, pattern: (a, b, c), x, y, z } => {
                write!(
                    f,
                    "exchange law {law} fails for parities ({a},{b},{c}) at (x,y,z)=({x},{y},{z})"
                )
            }
        }
    }
}

#[derive(Error, Clone, PartialEq, Eq, Debug)]
pub enum AlgebraError {
    #[error("expected {want} rows, got {got}")]
    RowCount { want: usize, got: usize },
    #[error("row {row} has {got} entries, expected {want}")]
    RowWidth { row: usize, want: usize, got: usize },
    #[error("entry at row {row}, column {col} is {val}, out of range 1..={n}")]
    OutOfRange { row: usize, col: usize, val: usize, n: usize },
    #[error("axiom violations: {}", format_failures(.0))]
    AxiomViolation(Vec<AxiomFailure>),
    #[error("{param} = {value} is not a unit mod {m}")]
    NonUnit { param: &'static str, value: u64, m: u64 },
    #[error("Alexander parity constraint {index} violated")]
    ConstraintViolated { index: usize },
}

fn format_failures(fails: &[AxiomFailure]) -> String {
    fails.iter().map(|f| f.to_string()).collect::<Vec<_>>().join("; ")
}

/// A verified biquandle: 0-indexed tables plus precomputed column inverses.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Biquandle {
    n: usize,
    under: Table,
    over: Table,
    under_inv: Table,
    over_inv: Table,
}

/// A verified parity biquandle; index 0 = even operations, 1 = odd.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParityBiquandle {
    n: usize,
    under: [Table; 2],
    over: [Table; 2],
    under_inv: [Table; 2],
    over_inv: [Table; 2],
}

impl Biquandle {
    pub fn n(&self) -> usize {
        self.n
    }

    /// x under y, 0-indexed.
    pub fn under(&self, x: usize, y: usize) -> usize {
        self.under[x][y]
    }

    /// x over y, 0-indexed.
    pub fn over(&self, x: usize, y: usize) -> usize {
        self.over[x][y]
    }

    /// The n x 2n matrix with 1-indexed entries.
    pub fn to_matrix(&self) -> Table {
        band_matrix(&self.under, &self.over)
    }
}

impl ParityBiquandle {
    pub fn n(&self) -> usize {
        self.n
    }

    /// x under_e y, 0-indexed.
    pub fn und(&self, e: u8, x: usize, y: usize) -> usize {
        self.under[e as usize][x][y]
    }

    /// x over_e y, 0-indexed.
    pub fn ove(&self, e: u8, x: usize, y: usize) -> usize {
        self.over[e as usize][x][y]
    }

    /// The x with x under_e y = v, 0-indexed.
    pub fn und_inv(&self, e: u8, y: usize, v: usize) -> usize {
        self.under_inv[e as usize][y][v]
    }

    /// The x with x over_e y = v, 0-indexed.
    pub fn ove_inv(&self, e: u8, y: usize, v: usize) -> usize {
        self.over_inv[e as usize][y][v]
    }

    /// The even-operation biquandle.
    pub fn even_part(&self) -> Biquandle {
        Biquandle {
            n: self.n,
            under: self.under[0].clone(),
            over: self.over[0].clone(),
            under_inv: self.under_inv[0].clone(),
            over_inv: self.over_inv[0].clone(),
        }
    }

    /// The 2n x 2n matrix with 1-indexed entries: even band then odd band.
    pub fn to_matrix(&self) -> Table {
        let mut rows = band_matrix(&self.under[0], &self.over[0]);
        rows.extend(band_matrix(&self.under[1], &self.over[1]));
        rows
    }
}

fn band_matrix(under: &Table, over: &Table) -> Table {
    under
        .iter()
        .zip(over)
        .map(|(u, o)| u.iter().chain(o).map(|&v| v + 1).collect())
        .collect()
}

/// Splits an r x 2n matrix with 1-indexed entries into 0-indexed blocks.
fn split_bands(rows: &[Vec<usize>], n: usize, bands: usize) -> Result<Vec<(Table, Table)>, AlgebraError> {
    if rows.len() != bands * n {
        return Err(AlgebraError::RowCount { want: bands * n, got: rows.len() });
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != 2 * n {
            return Err(AlgebraError::RowWidth { row: i + 1, want: 2 * n, got: row.len() });
        }
        for (j, &val) in row.iter().enumerate() {
            if val < 1 || val > n {
                return Err(AlgebraError::OutOfRange { row: i + 1, col: j + 1, val, n });
            }
        }
    }
    let mut out = Vec::new();
    for band in 0..bands {
        let mut under = vec![vec![0; n]; n];
        let mut over = vec![vec![0; n]; n];
        for x in 0..n {
            for y in 0..n {
                under[x][y] = rows[band * n + x][y] - 1;
                over[x][y] = rows[band * n + x][y + n] - 1;
            }
        }
        out.push((under, over));
    }
    Ok(out)
}

fn column_inverse(tbl: &Table) -> Option<Table> {
    let n = tbl.len();
    let mut inv = vec![vec![usize::MAX; n]; n];
    for y in 0..n {
        for (x, row) in tbl.iter().enumerate() {
            let v = row[y];
            if inv[y][v] != usize::MAX {
                return None;
            }
            inv[y][v] = x;
        }
    }
    Some(inv)
}

/// The three exchange laws for the parity pattern (a,b,c); `law` is 1..3.
fn exchange_holds(
    und: &dyn Fn(u8, usize, usize) -> usize,
    ove: &dyn Fn(u8, usize, usize) -> usize,
    law: u8,
    (a, b, c): (u8, u8, u8),
    x: usize,
    y: usize,
    z: usize,
) -> bool {
    match law {
        1 => ove(b, ove(a, z, y), ove(c, x, y)) == ove(a, ove(b, z, x), und(c, y, x)),
        2 => und(b, ove(a, x, y), ove(c, z, y)) == ove(a, und(b, x, z), und(c, y, z)),
        3 => und(b, und(a, y, x), ove(c, z, x)) == und(a, und(b, y, z), und(c, x, z)),
        _ => unreachable!(),
    }
}

fn check_tables(
    n: usize,
    under: [&Table; 2],
    over: [&Table; 2],
    parity: bool,
) -> Vec<AxiomFailure> {
    let mut fails = Vec::new();
    for x in 0..n {
        if under[0][x][x] != over[0][x][x] {
            fails.push(AxiomFailure::Diagonal { x: x + 1 });
            break;
        }
    }
    let parities: &[u8] = if parity { &[0, 1] } else { &[0] };
    for &e in parities {
        for (op, tbl) in [("under", under[e as usize]), ("over", over[e as usize])] {
            'cols: for y in 0..n {
                let mut seen = vec![false; n];
                for x in 0..n {
                    if std::mem::replace(&mut seen[tbl[x][y]], true) {
                        fails.push(AxiomFailure::ColumnNotBijective { op, parity: e, y: y + 1 });
                        break 'cols;
                    }
                }
            }
        }
        let mut seen = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                let pair = over[e as usize][y][x] * n + under[e as usize][x][y];
                if std::mem::replace(&mut seen[pair], true) {
                    fails.push(AxiomFailure::PairMapNotBijective { parity: e });
                }
            }
        }
    }
    let und = |e: u8, x: usize, y: usize| under[e as usize][x][y];
    let ove = |e: u8, x: usize, y: usize| over[e as usize][x][y];
    let patterns: &[(u8, u8, u8)] = if parity {
        &[(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)]
    } else {
        &[(0, 0, 0)]
    };
    for &pattern in patterns {
        for law in 1..=3u8 {
            'triples: for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        if !exchange_holds(&und, &ove, law, pattern, x, y, z) {
                            fails.push(AxiomFailure::ExchangeLaw {
                                law,
                                pattern,
                                x: x + 1,
                                y: y + 1,
                                z: z + 1,
                            });
                            break 'triples;
                        }
                    }
                }
            }
        }
    }
    fails.sort_by_key(|f| format!("{f:?}"));
    fails.dedup();
    fails
}

/// Exhaustive axiom report for an n x 2n matrix; empty report means pass.
pub fn verify_biquandle_axioms(rows: &[Vec<usize>]) -> Result<Vec<AxiomFailure>, AlgebraError> {
    let n = infer_n(rows, 1)?;
    let bands = split_bands(rows, n, 1)?;
    let (under, over) = &bands[0];
    Ok(check_tables(n, [under, under], [over, over], false))
}

/// Exhaustive axiom report for a 2n x 2n parity matrix; empty means pass.
pub fn verify_parity_axioms(rows: &[Vec<usize>]) -> Result<Vec<AxiomFailure>, AlgebraError> {
    let n = infer_n(rows, 2)?;
    let bands = split_bands(rows, n, 2)?;
    let (u0, o0) = &bands[0];
    let (u1, o1) = &bands[1];
    Ok(check_tables(n, [u0, u1], [o0, o1], true))
}

fn infer_n(rows: &[Vec<usize>], bands: usize) -> Result<usize, AlgebraError> {
    let r = rows.len();
    if r == 0 || !r.is_multiple_of(bands) {
        return Err(AlgebraError::RowCount { want: bands.max(r + 1), got: r });
    }
    Ok(r / bands)
}

/// Builds a verified biquandle from its n x 2n matrix (1-indexed entries).
pub fn biquandle_from_matrix(rows: &[Vec<usize>]) -> Result<Biquandle, AlgebraError> {
    let n = infer_n(rows, 1)?;
    let mut bands = split_bands(rows, n, 1)?;
    let fails = {
        let (under, over) = &bands[0];
        check_tables(n, [under, under], [over, over], false)
    };
    if !fails.is_empty() {
        return Err(AlgebraError::AxiomViolation(fails));
    }
    let (under, over) = bands.pop().expect("one band");
    let under_inv = column_inverse(&under).expect("verified columns");
    let over_inv = column_inverse(&over).expect("verified columns");
    Ok(Biquandle { n, under, over, under_inv, over_inv })
}

/// Builds a verified parity biquandle from its 2n x 2n matrix.
pub fn parity_biquandle_from_matrix(rows: &[Vec<usize>]) -> Result<ParityBiquandle, AlgebraError> {
    let n = infer_n(rows, 2)?;
    let mut bands = split_bands(rows, n, 2)?;
    let fails = {
        let (u0, o0) = &bands[0];
        let (u1, o1) = &bands[1];
        check_tables(n, [u0, u1], [o0, o1], true)
    };
    if !fails.is_empty() {
        return Err(AlgebraError::AxiomViolation(fails));
    }
    let (u1, o1) = bands.pop().expect("two bands");
    let (u0, o0) = bands.pop().expect("two bands");
    let inv = |t: &Table| column_inverse(t).expect("verified columns");
    Ok(ParityBiquandle {
        n,
        under_inv: [inv(&u0), inv(&u1)],
        over_inv: [inv(&o0), inv(&o1)],
        under: [u0, u1],
        over: [o0, o1],
    })
}

/// Embeds a biquandle as the parity biquandle with equal even and odd parts.
pub fn duplicate(b: &Biquandle) -> ParityBiquandle {
    ParityBiquandle {
        n: b.n,
        under: [b.under.clone(), b.under.clone()],
        over: [b.over.clone(), b.over.clone()],
        under_inv: [b.under_inv.clone(), b.under_inv.clone()],
        over_inv: [b.over_inv.clone(), b.over_inv.clone()],
    }
}

pub(crate) fn mod_inverse(u: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (u % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m as i128) as u64)
}

fn unit(param: &'static str, value: u64, m: u64) -> Result<u64, AlgebraError> {
    mod_inverse(value, m).ok_or(AlgebraError::NonUnit { param, value, m })
}

fn linear_tables(m: u64, row_coeff: u64, col_coeff: u64) -> Table {
    let n = m as usize;
    (0..n)
        .map(|x| {
            (0..n)
                .map(|y| ((row_coeff * x as u64 + col_coeff * y as u64) % m) as usize)
                .collect()
        })
        .collect()
}

/// Alexander biquandle on Z_m (element i encodes residue i-1):
/// x under y = t x + (s^-1 - t) y, x over y = s^-1 x.
pub fn alexander_biquandle(m: u64, t: u64, s: u64) -> Result<Biquandle, AlgebraError> {
    let t = t % m;
    unit("t", t, m)?;
    let s_inv = unit("s", s % m, m)?;
    let under = linear_tables(m, t, (s_inv + m - t) % m);
    let over = linear_tables(m, s_inv, 0);
    let matrix = band_matrix(&under, &over);
    biquandle_from_matrix(&matrix)
}

/// Alexander parity biquandle: even operations as above, odd operations
/// x under1 y = b x + (a^-1 - b) y, x over1 y = a^-1 x, subject to the three
/// compatibility constraints on (t, s, b, a).
pub fn alexander_parity_biquandle(
    m: u64,
    t: u64,
    s: u64,
    b: u64,
    a: u64,
) -> Result<ParityBiquandle, AlgebraError> {
    let (t, b) = (t % m, b % m);
    unit("t", t, m)?;
    let s_inv = unit("s", s % m, m)?;
    unit("b", b, m)?;
    let a_inv = unit("a", a % m, m)?;
    let d = (a_inv + m - b) % m;
    let constraints = [
        (d * d + (s_inv + m - t) * ((b + m - a_inv) % m)) % m,
        d * ((b + m - t) % m) % m,
        d * ((s_inv + m - a_inv) % m) % m,
    ];
    for (i, &v) in constraints.iter().enumerate() {
        if v != 0 {
            return Err(AlgebraError::ConstraintViolated { index: i + 1 });
        }
    }
    let u0 = linear_tables(m, t, (s_inv + m - t) % m);
    let o0 = linear_tables(m, s_inv, 0);
    let u1 = linear_tables(m, b, d);
    let o1 = linear_tables(m, a_inv, 0);
    let mut matrix = band_matrix(&u0, &o0);
    matrix.extend(band_matrix(&u1, &o1));
    parity_biquandle_from_matrix(&matrix)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AlgebraFile {
    Biquandle(Biquandle),
    Parity(ParityBiquandle),
}

#[derive(Error, Clone, PartialEq, Eq, Debug)]
pub enum FileError {
    #[error("missing or malformed header line")]
    BadHeader,
    #[error("line {line}: cannot parse integer")]
    BadInteger { line: usize },
    #[error("wrong number of data rows")]
    BadShape,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Cocycle(#[from] crate::cocycle::CocycleError),
}

/// Strips `#` comments and blank lines; returns (line number, content) pairs.
pub(crate) fn data_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect()
}

pub(crate) fn parse_rows(lines: &[(usize, &str)]) -> Result<Vec<Vec<usize>>, FileError> {
    lines
        .iter()
        .map(|&(ln, l)| {
            l.split_whitespace()
                .map(|w| w.parse::<usize>().map_err(|_| FileError::BadInteger { line: ln }))
                .collect()
        })
        .collect()
}

/// Parses a `biquandle n` or `parity-biquandle n` file.
pub fn parse_algebra_file(text: &str) -> Result<AlgebraFile, FileError> {
    let lines = data_lines(text);
    let (_, header) = lines.first().ok_or(FileError::BadHeader)?;
    let mut words = header.split_whitespace();
    let kind = words.next().ok_or(FileError::BadHeader)?;
    let n: usize = words
        .next()
        .and_then(|w| w.parse().ok())
        .filter(|&n| n > 0 && words.next().is_none())
        .ok_or(FileError::BadHeader)?;
    let rows = parse_rows(&lines[1..])?;
    match kind {
        "biquandle" => {
            if rows.len() != n {
                return Err(FileError::BadShape);
            }
            Ok(AlgebraFile::Biquandle(biquandle_from_matrix(&rows)?))
        }
        "parity-biquandle" => {
            if rows.len() != 2 * n {
                return Err(FileError::BadShape);
            }
            Ok(AlgebraFile::Parity(parity_biquandle_from_matrix(&rows)?))
        }
        _ => Err(FileError::BadHeader),
    }
}

pub fn serialize_biquandle(b: &Biquandle) -> String {
    let mut out = format!("biquandle {}\n", b.n);
    push_matrix(&mut out, &b.to_matrix());
    out
}

pub fn serialize_parity_biquandle(pb: &ParityBiquandle) -> String {
    let mut out = format!("parity-biquandle {}\n", pb.n);
    push_matrix(&mut out, &pb.to_matrix());
    out
}

pub(crate) fn push_matrix(out: &mut String, rows: &Table) {
    for row in rows {
        let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
}
