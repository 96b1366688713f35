//! Virtual knots as signed Gauss codes: parsing, crossing parity, odd writhe,
//! and the Reidemeister I/II rewrites used by the property suites.
//!
//! A diagram with n crossings has 2n tokens; semiarc `i` is the gap
//! immediately after token `i`, so the token at position `p` has incoming
//! semiarc `(p-1) mod 2n` and outgoing semiarc `p`. The unknot is the empty
//! code with a single semiarc.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Passage {
    Over,
    Under,
}

impl fmt::Display for Passage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Passage::Over => "O",
            Passage::Under => "U",
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct GaussToken {
    pub passage: Passage,
    pub crossing_id: usize,
    pub sign: i8,
}

/// Per-crossing record: token positions of the two passages, common sign,
/// and parity (tokens strictly between the two occurrences, mod 2).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Crossing {
    pub over_pos: usize,
    pub under_pos: usize,
    pub sign: i8,
    pub parity: u8,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GaussDiagram {
    tokens: Vec<GaussToken>,
    crossings: BTreeMap<usize, Crossing>,
}

#[derive(Error, Clone, PartialEq, Eq, Debug)]
pub enum ParseError {
    #[error("malformed token at byte offset {0}")]
    MalformedToken(usize),
    #[error("crossing {id} appears twice as {passage}")]
    DuplicatePassage { id: usize, passage: Passage },
    #[error("the two passages of crossing {0} carry different signs")]
    SignMismatch(usize),
    #[error("crossing {0} appears only once")]
    MissingPartner(usize),
}

#[derive(Error, Clone, PartialEq, Eq, Debug)]
pub enum DiagramError {
    #[error("no crossing with id {0}")]
    UnknownCrossing(usize),
    #[error("semiarc index {pos} out of range (diagram has {count} semiarcs)")]
    InvalidPosition { pos: usize, count: usize },
}

impl GaussDiagram {
    /// Builds a diagram from a token list, keeping crossing ids as given and
    /// computing parities. Parsing normalizes ids; this does not.
    pub fn from_tokens(tokens: Vec<GaussToken>) -> Result<Self, ParseError> {
        let mut seen: BTreeMap<usize, (Option<usize>, Option<usize>, i8)> = BTreeMap::new();
        for (p, t) in tokens.iter().enumerate() {
            let e = seen.entry(t.crossing_id).or_insert((None, None, t.sign));
            let slot = match t.passage {
                Passage::Over => &mut e.0,
                Passage::Under => &mut e.1,
            };
            if slot.is_some() {
                return Err(ParseError::DuplicatePassage {
                    id: t.crossing_id,
                    passage: t.passage,
                });
            }
            *slot = Some(p);
            if e.2 != t.sign {
                return Err(ParseError::SignMismatch(t.crossing_id));
            }
        }
        let mut crossings = BTreeMap::new();
        for (id, (o, u, sign)) in seen {
            let (over_pos, under_pos) = match (o, u) {
                (Some(o), Some(u)) => (o, u),
                _ => return Err(ParseError::MissingPartner(id)),
            };
            let parity = ((over_pos.abs_diff(under_pos) - 1) % 2) as u8;
            crossings.insert(id, Crossing { over_pos, under_pos, sign, parity });
        }
        Ok(GaussDiagram { tokens, crossings })
    }

    pub fn tokens(&self) -> &[GaussToken] {
        &self.tokens
    }

    pub fn crossings(&self) -> &BTreeMap<usize, Crossing> {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    fn next_id(&self) -> usize {
        self.crossings.keys().next_back().copied().unwrap_or(0) + 1
    }

    /// Number of semiarcs: 2n, or 1 for the unknot.
    pub fn semiarc_count(&self) -> usize {
        self.tokens.len().max(1)
    }

    /// Incoming semiarc of the token at position `p`.
    pub fn incoming(&self, p: usize) -> usize {
        (p + self.tokens.len() - 1) % self.tokens.len()
    }

    pub fn serialize(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for GaussDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.tokens {
            let sign = if t.sign > 0 { '+' } else { '-' };
            write!(f, "{}{}{}", t.passage, t.crossing_id, sign)?;
        }
        Ok(())
    }
}

impl FromStr for GaussDiagram {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_gauss_code(s)
    }
}

/// Parses a signed Gauss code such as `O1+O2+U1+U2+`. Case-insensitive on
/// O/U; `-` and the Unicode minus sign are both accepted. The empty string
/// is the unknot.
pub fn parse_gauss_code(text: &str) -> Result<GaussDiagram, ParseError> {
    let s = text.trim();
    let mut tokens = Vec::new();
    let mut chars = s.char_indices().peekable();
    while let Some((at, c)) = chars.next() {
        let passage = match c {
            'O' | 'o' => Passage::Over,
            'U' | 'u' => Passage::Under,
            _ => return Err(ParseError::MalformedToken(at)),
        };
        let mut id: usize = 0;
        let mut digits = 0;
        while let Some(&(_, d)) = chars.peek() {
            if let Some(v) = d.to_digit(10) {
                id = id * 10 + v as usize;
                digits += 1;
                chars.next();
            } else {
                break;
            }
        }
        if digits == 0 || id == 0 {
            return Err(ParseError::MalformedToken(at));
        }
        let sign = match chars.next() {
            Some((_, '+')) => 1,
            Some((_, '-')) | Some((_, '\u{2212}')) => -1,
            _ => return Err(ParseError::MalformedToken(at)),
        };
        tokens.push(GaussToken { passage, crossing_id: id, sign });
    }
    let mut order: Vec<usize> = Vec::new();
    for t in &mut tokens {
        t.crossing_id = match order.iter().position(|&o| o == t.crossing_id) {
            Some(i) => i + 1,
            None => {
                order.push(t.crossing_id);
                order.len()
            }
        };
    }
    GaussDiagram::from_tokens(tokens)
}

/// Parity of one crossing: tokens strictly between its two occurrences, mod 2.
pub fn crossing_parity(d: &GaussDiagram, id: usize) -> Result<u8, DiagramError> {
    d.crossings
        .get(&id)
        .map(|c| c.parity)
        .ok_or(DiagramError::UnknownCrossing(id))
}

/// Sum of crossing signs over the odd-parity crossings.
pub fn odd_writhe(d: &GaussDiagram) -> i64 {
    d.crossings
        .values()
        .filter(|c| c.parity == 1)
        .map(|c| c.sign as i64)
        .sum()
}

/// Cyclic rotation of the token sequence by `k` (basepoint move). Crossing
/// ids, signs and parities are unchanged.
pub fn rotate(d: &GaussDiagram, k: usize) -> GaussDiagram {
    if d.tokens.is_empty() {
        return d.clone();
    }
    let k = k % d.tokens.len();
    let mut t = d.tokens[k..].to_vec();
    t.extend_from_slice(&d.tokens[..k]);
    GaussDiagram::from_tokens(t).expect("rotation preserves validity")
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum R1Variant {
    /// Over passage first, then under: inserts `O_k U_k`.
    OverUnder,
    /// Under passage first: inserts `U_k O_k`.
    UnderOver,
}

/// Inserts a kink (Reidemeister I) at semiarc `pos` with a fresh crossing id.
/// The new crossing is always even.
pub fn r1_insert(
    d: &GaussDiagram,
    pos: usize,
    variant: R1Variant,
    sign: i8,
) -> Result<GaussDiagram, DiagramError> {
    let count = d.semiarc_count();
    if pos >= count {
        return Err(DiagramError::InvalidPosition { pos, count });
    }
    let k = d.next_id();
    let (first, second) = match variant {
        R1Variant::OverUnder => (Passage::Over, Passage::Under),
        R1Variant::UnderOver => (Passage::Under, Passage::Over),
    };
    let idx = if d.tokens.is_empty() { 0 } else { pos + 1 };
    let mut t = d.tokens.clone();
    t.splice(
        idx..idx,
        [
            GaussToken { passage: first, crossing_id: k, sign },
            GaussToken { passage: second, crossing_id: k, sign },
        ],
    );
    Ok(GaussDiagram::from_tokens(t).expect("kink insertion preserves validity"))
}

/// Inserts a Reidemeister II pair: the strand at semiarc `pos_a` passes over
/// both new crossings when `over_first` is set (under both otherwise), and
/// the strand at `pos_b` takes the complementary passages in reverse order.
/// The crossings get signs `sign` and `-sign` and equal parity.
pub fn r2_insert(
    d: &GaussDiagram,
    pos_a: usize,
    pos_b: usize,
    over_first: bool,
    sign: i8,
) -> Result<GaussDiagram, DiagramError> {
    let count = d.semiarc_count();
    if pos_a >= count {
        return Err(DiagramError::InvalidPosition { pos: pos_a, count });
    }
    if pos_b >= count {
        return Err(DiagramError::InvalidPosition { pos: pos_b, count });
    }
    let (j, k) = (d.next_id(), d.next_id() + 1);
    let (a, b) = if over_first {
        (Passage::Over, Passage::Under)
    } else {
        (Passage::Under, Passage::Over)
    };
    let pa = [
        GaussToken { passage: a, crossing_id: j, sign },
        GaussToken { passage: a, crossing_id: k, sign: -sign },
    ];
    let pb = [
        GaussToken { passage: b, crossing_id: k, sign: -sign },
        GaussToken { passage: b, crossing_id: j, sign },
    ];
    let mut t = d.tokens.clone();
    if t.is_empty() {
        t.extend(pa);
        t.extend(pb);
    } else {
        let (ia, ib) = (pos_a + 1, pos_b + 1);
        if ia >= ib {
            t.splice(ia..ia, pa);
            t.splice(ib..ib, pb);
        } else {
            t.splice(ib..ib, pb);
            t.splice(ia..ia, pa);
        }
    }
    Ok(GaussDiagram::from_tokens(t).expect("r2 insertion preserves validity"))
}

/// The four semiarcs meeting a crossing, with its sign and parity.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CrossingSemiarcs {
    pub id: usize,
    pub sign: i8,
    pub parity: u8,
    pub over_in: usize,
    pub over_out: usize,
    pub under_in: usize,
    pub under_out: usize,
}

/// Incoming and outgoing semiarcs of both passages of every crossing.
pub fn crossing_semiarcs(d: &GaussDiagram) -> Vec<CrossingSemiarcs> {
    d.crossings()
        .iter()
        .map(|(&id, c)| CrossingSemiarcs {
            id,
            sign: c.sign,
            parity: c.parity,
            over_in: d.incoming(c.over_pos),
            over_out: c.over_pos,
            under_in: d.incoming(c.under_pos),
            under_out: c.under_pos,
        })
        .collect()
}

/// Parses a knot table: one `name<whitespace>code` entry per line, `#`
/// comments and blank lines ignored. A name with no code is the unknot.
pub fn parse_knot_table(text: &str) -> Result<Vec<(String, GaussDiagram)>, KnotTableError> {
    let mut entries = Vec::new();
    let mut names = std::collections::BTreeSet::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let name = parts.next().expect("nonempty line").to_string();
        let code = parts.next().unwrap_or("");
        if parts.next().is_some() {
            return Err(KnotTableError::TrailingData { line: ln + 1 });
        }
        if !names.insert(name.clone()) {
            return Err(KnotTableError::DuplicateName { name, line: ln + 1 });
        }
        let d = parse_gauss_code(code)
            .map_err(|source| KnotTableError::BadCode { name: name.clone(), line: ln + 1, source })?;
        entries.push((name, d));
    }
    Ok(entries)
}

#[derive(Error, Clone, PartialEq, Eq, Debug)]
pub enum KnotTableError {
    #[error("line {line}: unexpected trailing fields")]
    TrailingData { line: usize },
    #[error("line {line}: duplicate knot name {name}")]
    DuplicateName { name: String, line: usize },
    #[error("line {line}: bad Gauss code for {name}: {source}")]
    BadCode {
        name: String,
        line: usize,
        source: ParseError,
    },
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(code: &str) -> GaussDiagram {
        parse_gauss_code(code).unwrap()
    }

    #[test]
    fn parses_virtual_trefoil() {
        let k = d("O1+O2+U1+U2+");
        assert_eq!(k.crossing_count(), 2);
        assert_eq!(k.semiarc_count(), 4);
        assert!(k.crossings().values().all(|c| c.sign == 1));
        assert_eq!(k.serialize(), "O1+O2+U1+U2+");
    }

    #[test]
    fn empty_code_is_unknot() {
        let k = d("");
        assert_eq!(k.crossing_count(), 0);
        assert_eq!(k.semiarc_count(), 1);
        assert_eq!(k.serialize(), "");
    }

    #[test]
    fn parse_accepts_unicode_minus_and_lowercase() {
        assert_eq!(d("o1\u{2212}u1-").serialize(), "O1-U1-");
    }

    #[test]
    fn parse_normalizes_ids_by_first_appearance() {
        assert_eq!(d("O7+U9+O9+U7+").serialize(), "O1+U2+O2+U1+");
    }

    #[test]
    fn parse_rejects_sign_mismatch() {
        assert_eq!(
            parse_gauss_code("O1+U1-"),
            Err(ParseError::SignMismatch(1))
        );
    }

    #[test]
    fn parse_rejects_duplicate_passage() {
        assert_eq!(
            parse_gauss_code("O1+O1+"),
            Err(ParseError::DuplicatePassage { id: 1, passage: Passage::Over })
        );
    }

    #[test]
    fn parse_rejects_missing_partner() {
        assert_eq!(parse_gauss_code("O1+"), Err(ParseError::MissingPartner(1)));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(matches!(parse_gauss_code("X1+"), Err(ParseError::MalformedToken(0))));
        assert!(matches!(parse_gauss_code("O+"), Err(ParseError::MalformedToken(0))));
        assert!(matches!(parse_gauss_code("O1"), Err(ParseError::MalformedToken(0))));
        assert!(matches!(parse_gauss_code("O0+U0+"), Err(ParseError::MalformedToken(0))));
    }

    #[test]
    fn virtual_trefoil_both_crossings_odd() {
        let k = d("O1+O2+U1+U2+");
        assert_eq!(crossing_parity(&k, 1), Ok(1));
        assert_eq!(crossing_parity(&k, 2), Ok(1));
        assert_eq!(odd_writhe(&k), 2);
    }

    #[test]
    fn classical_trefoil_all_even() {
        let k = d("O1+U2+O3+U1+O2+U3+");
        for id in 1..=3 {
            assert_eq!(crossing_parity(&k, id), Ok(0));
        }
        assert_eq!(odd_writhe(&k), 0);
    }

    #[test]
    fn unknown_crossing_is_an_error() {
        assert_eq!(
            crossing_parity(&d(""), 1),
            Err(DiagramError::UnknownCrossing(1))
        );
    }

    #[test]
    fn rotate_shifts_tokens() {
        let k = d("O1+O2+U1+U2+");
        assert_eq!(rotate(&k, 1).serialize(), "O2+U1+U2+O1+");
        assert_eq!(rotate(&k, 0), k);
        assert_eq!(rotate(&k, 4), k);
        let r = rotate(&k, 1);
        assert_eq!(crossing_parity(&r, 1), Ok(1));
        assert_eq!(crossing_parity(&r, 2), Ok(1));
    }

    #[test]
    fn r1_on_unknot() {
        let k = r1_insert(&d(""), 0, R1Variant::OverUnder, 1).unwrap();
        assert_eq!(k.serialize(), "O1+U1+");
        assert_eq!(crossing_parity(&k, 1), Ok(0));
    }

    #[test]
    fn r1_preserves_existing_parities() {
        let base = d("O1+O2+U1+U2+");
        let k = r1_insert(&base, 0, R1Variant::UnderOver, -1).unwrap();
        assert_eq!(k.crossing_count(), 3);
        assert_eq!(crossing_parity(&k, 1), Ok(1));
        assert_eq!(crossing_parity(&k, 2), Ok(1));
        assert_eq!(crossing_parity(&k, 3), Ok(0));
    }

    #[test]
    fn r1_rejects_bad_position() {
        assert_eq!(
            r1_insert(&d(""), 1, R1Variant::OverUnder, 1),
            Err(DiagramError::InvalidPosition { pos: 1, count: 1 })
        );
    }

    #[test]
    fn r2_on_unknot() {
        let k = r2_insert(&d(""), 0, 0, false, 1).unwrap();
        assert_eq!(k.serialize(), "U1+U2-O2-O1+");
        assert_eq!(crossing_parity(&k, 1), Ok(0));
        assert_eq!(crossing_parity(&k, 2), Ok(0));
    }

    #[test]
    fn r2_pair_has_equal_parity_everywhere() {
        let base = d("O1+O2+U1+U2+");
        for pa in 0..4 {
            for pb in 0..4 {
                for of in [false, true] {
                    let k = r2_insert(&base, pa, pb, of, -1).unwrap();
                    assert_eq!(
                        crossing_parity(&k, 3).unwrap(),
                        crossing_parity(&k, 4).unwrap(),
                        "pa={pa} pb={pb} of={of}"
                    );
                    assert_eq!(crossing_parity(&k, 1), Ok(1));
                    assert_eq!(crossing_parity(&k, 2), Ok(1));
                }
            }
        }
    }

    #[test]
    fn odd_crossing_count_is_even() {
        for code in ["O1+O2+U1+U2+", "O1+O2-O3-U1+U3-U2-", "O1+U2+O3+U1+O2+U3+"] {
            let k = d(code);
            let odd = k.crossings().values().filter(|c| c.parity == 1).count();
            assert_eq!(odd % 2, 0, "{code}");
        }
    }

    #[test]
    fn knot_table_parses_and_rejects_duplicates() {
        let t = parse_knot_table("# c\n0.1\n2.1\tO1+O2+U1+U2+\n").unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t[0].0, "0.1");
        assert_eq!(t[0].1.crossing_count(), 0);
        assert_eq!(t[1].1.crossing_count(), 2);
        assert!(matches!(
            parse_knot_table("a\na O1+U1+\n"),
            Err(KnotTableError::DuplicateName { .. })
        ));
    }
}
