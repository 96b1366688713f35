//! Parity biquandle colorings of Gauss diagrams and the counting invariant.
//!
//! A coloring labels every semiarc with an element of X. Reading each
//! crossing sideways, the two labels on one side determine the two on the
//! other through the parity-selected operations: at a positive crossing
//! `over_in = over_out over_e under_in` and
//! `under_out = under_in under_e over_out`; at a negative crossing the same
//! two equations hold with incoming and outgoing semiarcs exchanged. The
//! opposite-sign pair inserted by a Reidemeister II move therefore imposes
//! mutually inverse constraints.

use crate::algebra::ParityBiquandle;
use crate::gauss_diagram::{crossing_semiarcs, GaussDiagram};

/// Semiarc index -> element of X (0-indexed). Length `semiarc_count`.
pub type Coloring = Vec<usize>;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Op {
    Und,
    Ove,
}

/// One crossing equation: `labels[target] = labels[a] op_e labels[b]`.
#[derive(Clone, Copy, Debug)]
struct Equation {
    op: Op,
    e: u8,
    target: usize,
    a: usize,
    b: usize,
}

impl Equation {
    fn apply(&self, x: &ParityBiquandle, a: usize, b: usize) -> usize {
        match self.op {
            Op::Und => x.und(self.e, a, b),
            Op::Ove => x.ove(self.e, a, b),
        }
    }

    fn invert(&self, x: &ParityBiquandle, b: usize, target: usize) -> usize {
        match self.op {
            Op::Und => x.und_inv(self.e, b, target),
            Op::Ove => x.ove_inv(self.e, b, target),
        }
    }
}

fn equations(d: &GaussDiagram, all_even: bool) -> Vec<Equation> {
    let mut eqs = Vec::new();
    for c in crossing_semiarcs(d) {
        let e = if all_even { 0 } else { c.parity };
        if c.sign > 0 {
            eqs.push(Equation { op: Op::Ove, e, target: c.over_in, a: c.over_out, b: c.under_in });
            eqs.push(Equation { op: Op::Und, e, target: c.under_out, a: c.under_in, b: c.over_out });
        } else {
            eqs.push(Equation { op: Op::Ove, e, target: c.over_out, a: c.over_in, b: c.under_out });
            eqs.push(Equation { op: Op::Und, e, target: c.under_in, a: c.under_out, b: c.over_in });
        }
    }
    eqs
}

fn satisfies(d: &GaussDiagram, x: &ParityBiquandle, f: &[usize], all_even: bool) -> bool {
    f.len() == d.semiarc_count()
        && f.iter().all(|&v| v < x.n())
        && equations(d, all_even)
            .iter()
            .all(|eq| f[eq.target] == eq.apply(x, f[eq.a], f[eq.b]))
}

/// True when `f` is a valid parity coloring of `d`.
pub fn is_coloring(d: &GaussDiagram, x: &ParityBiquandle, f: &[usize]) -> bool {
    satisfies(d, x, f, false)
}

fn enumerate(d: &GaussDiagram, x: &ParityBiquandle, all_even: bool) -> Vec<Coloring> {
    if d.tokens().is_empty() {
        return (0..x.n()).map(|v| vec![v]).collect();
    }
    let eqs = equations(d, all_even);
    let len = d.semiarc_count();
    let mut labels: Vec<Option<usize>> = vec![None; len];
    let mut out = Vec::new();
    search(x, &eqs, &mut labels, &mut out);
    debug_assert!(out.iter().all(|f| satisfies(d, x, f, all_even)));
    out.sort();
    out.dedup();
    out
}

/// Assigns the first unlabeled semiarc each way and propagates through the
/// crossing equations (forward, and backward through the column inverses)
/// until contradiction or a full coloring.
fn search(
    x: &ParityBiquandle,
    eqs: &[Equation],
    labels: &mut Vec<Option<usize>>,
    out: &mut Vec<Coloring>,
) {
    let Some(i) = labels.iter().position(Option::is_none) else {
        out.push(labels.iter().map(|v| v.expect("complete")).collect());
        return;
    };
    for v in 0..x.n() {
        let mut trail = vec![i];
        labels[i] = Some(v);
        if propagate(x, eqs, labels, &mut trail) {
            search(x, eqs, labels, out);
        }
        for j in trail {
            labels[j] = None;
        }
    }
}

fn propagate(
    x: &ParityBiquandle,
    eqs: &[Equation],
    labels: &mut [Option<usize>],
    trail: &mut Vec<usize>,
) -> bool {
    let mut changed = true;
    while changed {
        changed = false;
        for eq in eqs {
            match (labels[eq.target], labels[eq.a], labels[eq.b]) {
                (t, Some(a), Some(b)) => {
                    let v = eq.apply(x, a, b);
                    match t {
                        None => {
                            labels[eq.target] = Some(v);
                            trail.push(eq.target);
                            changed = true;
                        }
                        Some(t) if t != v => return false,
                        _ => {}
                    }
                }
                (Some(t), None, Some(b)) => {
                    labels[eq.a] = Some(eq.invert(x, b, t));
                    trail.push(eq.a);
                    changed = true;
                }
                _ => {}
            }
        }
    }
    true
}

/// All parity colorings of `d` by `x`, sorted and duplicate-free.
pub fn enumerate_colorings(d: &GaussDiagram, x: &ParityBiquandle) -> Vec<Coloring> {
    enumerate(d, x, false)
}

/// Comparison mode: every crossing treated as even (only the even
/// operations are used). For classical diagrams this equals the parity
/// enumeration.
pub fn enumerate_colorings_all_even(d: &GaussDiagram, x: &ParityBiquandle) -> Vec<Coloring> {
    enumerate(d, x, true)
}

/// The parity biquandle counting invariant |Hom(PB(K), X)|.
pub fn counting_invariant(d: &GaussDiagram, x: &ParityBiquandle) -> usize {
    enumerate_colorings(d, x).len()
}

/// Counting invariant of the all-even comparison mode.
pub fn counting_invariant_all_even(d: &GaussDiagram, x: &ParityBiquandle) -> usize {
    enumerate_colorings_all_even(d, x).len()
}
