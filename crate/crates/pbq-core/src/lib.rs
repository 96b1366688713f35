//! Parity biquandle counting and cocycle invariants of virtual knots.
//!
//! Virtual knots are given as signed Gauss codes ([`gauss_diagram`]).
//! Finite biquandles and parity biquandles live in [`algebra`], semiarc
//! colorings in [`coloring`], cocycle pairs and weight polynomials in
//! [`cocycle`], and the linear-system search for compatible cocycle
//! pairs over Z_m in [`search`].

pub mod algebra;
pub mod cocycle;
pub mod coloring;
pub mod gauss_diagram;
pub mod search;

pub use algebra::{AlgebraFile, AxiomFailure, Biquandle, ParityBiquandle};
pub use cocycle::{CocyclePair, Tier, WeightPolynomial};
pub use coloring::Coloring;
pub use gauss_diagram::GaussDiagram;
pub use search::{SolutionSet, Strength};

#[cfg(test)]
pub(crate) mod fixtures {
    use crate::algebra::{parity_biquandle_from_matrix, Biquandle, ParityBiquandle};
    use crate::cocycle::CocyclePair;

    pub fn b3_matrix() -> Vec<Vec<usize>> {
        vec![
            vec![3, 1, 3, 3, 1, 3],
            vec![2, 2, 2, 2, 2, 2],
            vec![1, 3, 1, 1, 3, 1],
        ]
    }

    pub fn p3_matrix() -> Vec<Vec<usize>> {
        vec![
            vec![3, 1, 3, 3, 1, 3],
            vec![2, 2, 2, 2, 2, 2],
            vec![1, 3, 1, 1, 3, 1],
            vec![1, 3, 1, 3, 3, 3],
            vec![2, 2, 2, 2, 2, 2],
            vec![3, 1, 3, 1, 1, 1],
        ]
    }

    pub fn p4_matrix() -> Vec<Vec<usize>> {
        vec![
            vec![3, 4, 2, 1, 3, 4, 2, 1],
            vec![1, 2, 4, 3, 1, 2, 4, 3],
            vec![4, 3, 1, 2, 4, 3, 1, 2],
            vec![2, 1, 3, 4, 2, 1, 3, 4],
            vec![1, 3, 1, 3, 1, 3, 1, 3],
            vec![2, 4, 2, 4, 2, 4, 2, 4],
            vec![3, 1, 3, 1, 3, 1, 3, 1],
            vec![4, 2, 4, 2, 4, 2, 4, 2],
        ]
    }

    pub fn b3() -> Biquandle {
        crate::algebra::biquandle_from_matrix(&b3_matrix()).unwrap()
    }

    pub fn p3() -> ParityBiquandle {
        parity_biquandle_from_matrix(&p3_matrix()).unwrap()
    }

    pub fn p4() -> ParityBiquandle {
        parity_biquandle_from_matrix(&p4_matrix()).unwrap()
    }

    pub fn ex1() -> CocyclePair {
        let phi0 = vec![vec![0, 0, 0], vec![2, 0, 2], vec![0, 0, 0]];
        let phi1 = vec![vec![0, 2, 0], vec![2, 3, 2], vec![0, 2, 0]];
        CocyclePair::new(5, phi0, phi1).unwrap()
    }

    pub fn ex2() -> CocyclePair {
        let phi0 = vec![
            vec![0, 2, 2, 1],
            vec![2, 0, 1, 2],
            vec![2, 1, 0, 2],
            vec![1, 2, 2, 0],
        ];
        let phi1 = vec![vec![1; 4]; 4];
        CocyclePair::new(3, phi0, phi1).unwrap()
    }
}
