//! Exact integer linear algebra and Laurent polynomial arithmetic.

mod intmat;
mod laurent;

pub use intmat::{IntMatrix, SnfResult, smith_normal_form};
pub use laurent::{LaurentPoly, Rational};

use crate::presentations::Presentation;

/// Abelian invariants: free rank plus torsion as invariant factors > 1 in
/// divisibility order.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct AbelianDescriptor {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl std::fmt::Display for AbelianDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Abelianization of a finite presentation: Smith normal form of the
/// relator exponent matrix over the generator basis.
pub fn abelian_invariants(p: &Presentation) -> AbelianDescriptor {
    let gens = p.generators();
    let rows: Vec<Vec<i64>> = p
        .relators()
        .iter()
        .map(|r| gens.iter().map(|&g| r.exponent_sum(g)).collect())
        .collect();
    quotient_invariants(&rows, gens.len())
}

/// Invariants of the cokernel `Z^cols / row-span`.
pub fn quotient_invariants(rows: &[Vec<i64>], cols: usize) -> AbelianDescriptor {
    let m = IntMatrix::from_i64_rows(rows.len(), cols, rows);
    let snf = smith_normal_form(&m);
    AbelianDescriptor { free_rank: snf.free_rank, torsion: snf.invariant_factors }
}

/// Invariants of the sublattice of `Z^cols` spanned by the rows: free of
/// rank equal to the matrix rank.
pub fn lattice_span_invariants(rows: &[Vec<i64>], cols: usize) -> AbelianDescriptor {
    let m = IntMatrix::from_i64_rows(rows.len(), cols, rows);
    let snf = smith_normal_form(&m);
    AbelianDescriptor { free_rank: snf.rank, torsion: Vec::new() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations;

    #[test]
    fn artin_abelianization_is_z() {
        for n in 3..=6 {
            let p = presentations::artin_presentation(n).unwrap();
            let inv = abelian_invariants(&p);
            assert_eq!(inv, AbelianDescriptor { free_rank: 1, torsion: vec![] }, "n={n}");
        }
    }

    #[test]
    fn surface_abelianization() {
        let p = presentations::surface_presentation(2, 3).unwrap();
        let inv = abelian_invariants(&p);
        assert_eq!(inv, AbelianDescriptor { free_rank: 4, torsion: vec![2] });
    }

    #[test]
    fn invariants_stable_under_row_ops() {
        use rand::{Rng, SeedableRng};
        // Shuffling relators and replacing a relator by a conjugate must not
        // change the abelianization.
        let p = presentations::surface_presentation(1, 4).unwrap();
        let base = abelian_invariants(&p);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let mut relators = p.relators().to_vec();
            let i = rng.gen_range(0..relators.len());
            let j = rng.gen_range(0..relators.len());
            relators.swap(i, j);
            let c = relators[j.min(relators.len() - 1)].clone();
            let k = rng.gen_range(0..relators.len());
            relators[k] = c
                .concat(&relators[k])
                .unwrap()
                .concat(&c.inverse())
                .unwrap();
            let q = Presentation::new(p.context(), p.generators().to_vec(), relators).unwrap();
            assert_eq!(abelian_invariants(&q), base);
        }
    }
}
