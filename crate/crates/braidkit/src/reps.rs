//! Artin automorphisms of the free group, Fox calculus, and the exact
//! Burau/Gassner matrix representations.
//!
//! Conventions (fixed here, since the source names but does not print
//! them): `sigma_i` maps `x_i -> x_i x_{i+1} x_i^-1`, `x_{i+1} -> x_i`;
//! braid words compose so that `M(uv) = M(u) * M(v)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::exactalg::{LaurentPoly, Rational};
use crate::presentations::{underlying_permutation, Permutation};
use crate::words::{GenKind, Generator, GroupContext, Word};
use crate::{Error, Result};

/// An endomorphism of the free group `F_n`, stored by generator images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeEndo {
    n: usize,
    images: Vec<Word>,
}

impl FreeEndo {
    pub fn identity(n: usize) -> FreeEndo {
        let ctx = GroupContext::FreeF { n };
        let images = (1..=n)
            .map(|i| Word::generator(ctx, Generator::new(GenKind::X, i)).unwrap())
            .collect();
        FreeEndo { n, images }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn image(&self, i: usize) -> &Word {
        &self.images[i - 1]
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        let ctx = GroupContext::FreeF { n: self.n };
        if w.context() != ctx {
            return Err(Error::ContextMismatch {
                left: ctx.to_string(),
                right: w.context().to_string(),
            });
        }
        let mut out = Word::identity(ctx);
        for l in w.letters() {
            let img = &self.images[l.gen.index - 1];
            let piece = if l.exp > 0 { img.clone() } else { img.inverse() };
            out = out.concat(&piece)?;
        }
        Ok(out)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FreeEndo) -> Result<FreeEndo> {
        let images = other
            .images
            .iter()
            .map(|w| self.apply(w))
            .collect::<Result<Vec<_>>>()?;
        Ok(FreeEndo { n: self.n, images })
    }
}

fn sigma_endo(n: usize, i: usize, positive: bool) -> FreeEndo {
    let ctx = GroupContext::FreeF { n };
    let x = |j: usize| Word::generator(ctx, Generator::new(GenKind::X, j)).unwrap();
    let mut endo = FreeEndo::identity(n);
    if positive {
        endo.images[i - 1] = x(i).concat(&x(i + 1)).unwrap().concat(&x(i).inverse()).unwrap();
        endo.images[i] = x(i);
    } else {
        endo.images[i - 1] = x(i + 1);
        endo.images[i] =
            x(i + 1).inverse().concat(&x(i)).unwrap().concat(&x(i + 1)).unwrap();
    }
    endo
}

/// The Artin representation of a braid word, composed so that
/// `artin_endo(uv) = artin_endo(v-letters…u-letters)` satisfies
/// `M(uv) = M(u) M(v)` after Fox/Magnus.
pub fn artin_endo(b: &Word) -> Result<FreeEndo> {
    let GroupContext::ArtinB { n } = b.context() else {
        return Err(Error::ContextMismatch {
            left: "ArtinB(n)".to_string(),
            right: b.context().to_string(),
        });
    };
    let mut endo = FreeEndo::identity(n);
    for l in b.letters() {
        let step = sigma_endo(n, l.gen.index, l.exp > 0);
        endo = step.compose(&endo)?;
    }
    Ok(endo)
}

/// An element of the integral group ring `Z[F_n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingElement {
    n: usize,
    terms: BTreeMap<Word, BigInt>,
}

impl GroupRingElement {
    pub fn zero(n: usize) -> GroupRingElement {
        GroupRingElement { n, terms: BTreeMap::new() }
    }

    pub fn from_word(w: Word) -> GroupRingElement {
        let GroupContext::FreeF { n } = w.context() else {
            panic!("group ring over FreeF only")
        };
        let mut e = GroupRingElement::zero(n);
        e.add_term(w, BigInt::one());
        e
    }

    pub fn one(n: usize) -> GroupRingElement {
        GroupRingElement::from_word(Word::identity(GroupContext::FreeF { n }))
    }

    fn add_term(&mut self, w: Word, c: BigInt) {
        let entry = self.terms.entry(w).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            let key = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone());
            if let Some(k) = key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&self, other: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> GroupRingElement {
        GroupRingElement {
            n: self.n,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &GroupRingElement) -> GroupRingElement {
        self.add(&other.neg())
    }

    /// Left multiplication by a group element.
    pub fn mul_word_left(&self, w: &Word) -> GroupRingElement {
        let mut out = GroupRingElement::zero(self.n);
        for (term, c) in &self.terms {
            out.add_term(w.concat(term).unwrap(), c.clone());
        }
        out
    }

    /// Right multiplication by a group element.
    pub fn mul_word_right(&self, w: &Word) -> GroupRingElement {
        let mut out = GroupRingElement::zero(self.n);
        for (term, c) in &self.terms {
            out.add_term(term.concat(w).unwrap(), c.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Word, BigInt> {
        &self.terms
    }

    /// Abelianize each group element into a Laurent monomial via the
    /// per-generator variable names (`x_i -> vars[i-1]`).
    pub fn abelianize(&self, vars: &[&str]) -> LaurentPoly {
        let var_set: Vec<&str> = {
            let mut seen = Vec::new();
            for &v in vars {
                if !seen.contains(&v) {
                    seen.push(v);
                }
            }
            seen
        };
        let mut out = LaurentPoly::zero(&var_set);
        for (w, c) in &self.terms {
            let mut mono = LaurentPoly::one(&var_set);
            for (i, &v) in vars.iter().enumerate() {
                let e = w.exponent_sum(Generator::new(GenKind::X, i + 1));
                if e != 0 {
                    mono = mono.mul(&LaurentPoly::monomial(&var_set, v, e));
                }
            }
            out = out.add(&mono.scale(c));
        }
        out
    }
}

/// `∂w/∂x_j` with the rules `∂(uv) = ∂u + u ∂v`, `∂x^-1 = -x^-1 ∂x`.
pub fn fox_derivative(w: &Word, j: usize) -> Result<GroupRingElement> {
    let GroupContext::FreeF { n } = w.context() else {
        return Err(Error::ContextMismatch {
            left: "FreeF(n)".to_string(),
            right: w.context().to_string(),
        });
    };
    let ctx = w.context();
    let mut out = GroupRingElement::zero(n);
    let mut prefix = Word::identity(ctx);
    for l in w.letters() {
        if l.gen.index == j {
            if l.exp > 0 {
                out.add_term(prefix.clone(), BigInt::one());
            } else {
                let lw = Word::from_letters(ctx, vec![*l])?;
                out.add_term(prefix.concat(&lw)?, -BigInt::one());
            }
        }
        let lw = Word::from_letters(ctx, vec![*l])?;
        prefix = prefix.concat(&lw)?;
    }
    Ok(out)
}

/// Square matrix of exact Laurent polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepMatrix {
    pub n: usize,
    pub entries: Vec<Vec<LaurentPoly>>,
}

impl RepMatrix {
    pub fn identity(n: usize, vars: &[&str]) -> RepMatrix {
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            LaurentPoly::one(vars)
                        } else {
                            LaurentPoly::zero(vars)
                        }
                    })
                    .collect()
            })
            .collect();
        RepMatrix { n, entries }
    }

    pub fn mul(&self, other: &RepMatrix) -> RepMatrix {
        assert_eq!(self.n, other.n);
        let vars: Vec<&str> = self.entries[0][0].vars().iter().map(|s| s.as_str()).collect();
        let entries = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| {
                        let mut acc = LaurentPoly::zero(&vars);
                        for k in 0..self.n {
                            acc = acc.add(&self.entries[i][k].mul(&other.entries[k][j]));
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        RepMatrix { n: self.n, entries }
    }

    /// Exact evaluation at a variable assignment.
    pub fn specialize(&self, assignment: &BTreeMap<String, Rational>) -> Result<Vec<Vec<Rational>>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|e| e.eval(assignment)).collect())
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|row| row.iter().map(|e| e.to_string()).collect())
            .collect();
        serde_json::json!({ "n": self.n, "entries": rows })
    }
}

fn magnus_matrix(endo: &FreeEndo, vars: &[&str]) -> Result<RepMatrix> {
    let n = endo.n();
    let entries = (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| Ok(fox_derivative(endo.image(i), j)?.abelianize(vars)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RepMatrix { n, entries })
}

/// Unreduced Burau matrix over `Z[t^{±1}]`.
pub fn burau_unreduced(b: &Word) -> Result<RepMatrix> {
    let GroupContext::ArtinB { n } = b.context() else {
        return Err(Error::ContextMismatch {
            left: "ArtinB(n)".to_string(),
            right: b.context().to_string(),
        });
    };
    let endo = artin_endo(b)?;
    let vars = vec!["t"; n];
    magnus_matrix(&endo, &vars)
}

/// Gassner matrix of a pure braid over `Z[t_1^{±1}..t_n^{±1}]`.
pub fn gassner(b: &Word) -> Result<RepMatrix> {
    let GroupContext::ArtinB { n } = b.context() else {
        return Err(Error::ContextMismatch {
            left: "ArtinB(n)".to_string(),
            right: b.context().to_string(),
        });
    };
    if !underlying_permutation(b)?.is_identity() {
        return Err(Error::NotPure);
    }
    let endo = artin_endo(b)?;
    let names: Vec<String> = (1..=n).map(|i| format!("t{i}")).collect();
    let vars: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    magnus_matrix(&endo, &vars)
}

/// Identify all Gassner variables to a single `t`.
pub fn gassner_to_burau_vars(m: &RepMatrix) -> RepMatrix {
    let entries = m
        .entries
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| {
                    let mapping: BTreeMap<String, String> = e
                        .vars()
                        .iter()
                        .map(|v| (v.clone(), "t".to_string()))
                        .collect();
                    e.rename_vars(&mapping, &["t"])
                })
                .collect()
        })
        .collect();
    RepMatrix { n: m.n, entries }
}

/// Permutation matrix with entry `(i, j) = 1` iff `p(i) = j`; matches the
/// Burau specialization at `t = 1`.
pub fn permutation_matrix(p: &Permutation) -> Vec<Vec<Rational>> {
    let n = p.degree();
    (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| {
                    if p.apply(i) == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// EXPERIMENTAL: reduced Burau as the induced action on the quotient of
/// `Z[t^{±1}]^n` by the fixed all-ones vector, in the basis of the first
/// `n-1` coordinate classes: entry `(i,j) = M[i][j] - M[n][j]`.
pub fn burau_reduced(b: &Word) -> Result<RepMatrix> {
    let m = burau_unreduced(b)?;
    let n = m.n;
    if n < 2 {
        return Err(Error::InvalidParameters("reduced Burau needs n >= 2".into()));
    }
    let entries = (0..n - 1)
        .map(|i| {
            (0..n - 1)
                .map(|j| m.entries[i][j].sub(&m.entries[n - 1][j]))
                .collect()
        })
        .collect();
    Ok(RepMatrix { n: n - 1, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{parse_word, Letter};
    use rand::{Rng, SeedableRng};

    fn braid(text: &str, n: usize) -> Word {
        parse_word(text, GroupContext::ArtinB { n }).unwrap()
    }

    fn free(text: &str, n: usize) -> Word {
        parse_word(text, GroupContext::FreeF { n }).unwrap()
    }

    fn random_braid(n: usize, rng: &mut rand_chacha::ChaCha8Rng, max_len: usize) -> Word {
        let ctx = GroupContext::ArtinB { n };
        let len = rng.gen_range(0..=max_len);
        let letters = (0..len)
            .map(|_| {
                Letter::new(
                    Generator::new(GenKind::Sigma, rng.gen_range(1..n)),
                    if rng.gen_bool(0.5) { 1 } else { -1 },
                )
            })
            .collect();
        Word::from_letters(ctx, letters).unwrap()
    }

    #[test]
    fn artin_endo_convention() {
        let e = artin_endo(&braid("s1", 2)).unwrap();
        assert_eq!(e.image(1), &free("x1*x2*x1^-1", 2));
        assert_eq!(e.image(2), &free("x1", 2));

        let id = artin_endo(&braid("s1*s1^-1", 2)).unwrap();
        assert_eq!(id, FreeEndo::identity(2));

        // sigma_i and its inverse cancel on generators as free words.
        for i in 1..4 {
            let pos = sigma_endo(4, i, true);
            let neg = sigma_endo(4, i, false);
            assert_eq!(pos.compose(&neg).unwrap(), FreeEndo::identity(4));
            assert_eq!(neg.compose(&pos).unwrap(), FreeEndo::identity(4));
        }
    }

    #[test]
    fn fox_base_cases() {
        let d = fox_derivative(&free("x1", 2), 1).unwrap();
        assert_eq!(d, GroupRingElement::one(2));
        let d = fox_derivative(&free("x1*x2", 2), 2).unwrap();
        assert_eq!(d, GroupRingElement::from_word(free("x1", 2)));
        // d(x1 x2 x1^-1)/dx1 = 1 - x1 x2 x1^-1
        let d = fox_derivative(&free("x1*x2*x1^-1", 2), 1).unwrap();
        let expect = GroupRingElement::one(2)
            .sub(&GroupRingElement::from_word(free("x1*x2*x1^-1", 2)));
        assert_eq!(d, expect);
    }

    #[test]
    fn fox_fundamental_identity() {
        // sum_j dw/dx_j (x_j - 1) = w - 1 in Z[F_n].
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(6);
        let ctx = GroupContext::FreeF { n: 3 };
        for _ in 0..1000 {
            let len = rng.gen_range(0..=12);
            let letters = (0..len)
                .map(|_| {
                    Letter::new(
                        Generator::new(GenKind::X, rng.gen_range(1..=3)),
                        if rng.gen_bool(0.5) { 1 } else { -1 },
                    )
                })
                .collect();
            let w = Word::from_letters(ctx, letters).unwrap();
            let mut lhs = GroupRingElement::zero(3);
            for j in 1..=3 {
                let d = fox_derivative(&w, j).unwrap();
                let xj = Word::generator(ctx, Generator::new(GenKind::X, j)).unwrap();
                lhs = lhs.add(&d.mul_word_right(&xj).sub(&d));
            }
            let rhs = GroupRingElement::from_word(w.clone()).sub(&GroupRingElement::one(3));
            assert_eq!(lhs, rhs, "word {w}");
        }
    }

    #[test]
    fn burau_sigma1_block() {
        let m = burau_unreduced(&braid("s1", 3)).unwrap();
        let t = LaurentPoly::monomial(&["t"], "t", 1);
        let one = LaurentPoly::one(&["t"]);
        assert_eq!(m.entries[0][0], one.sub(&t));
        assert_eq!(m.entries[0][1], t);
        assert!(m.entries[0][2].is_zero());
        assert_eq!(m.entries[1][0], one);
        assert!(m.entries[1][1].is_zero());
        assert_eq!(m.entries[2][2], one);
    }

    #[test]
    fn burau_is_multiplicative() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
        for _ in 0..150 {
            let n = rng.gen_range(2..=4);
            let u = random_braid(n, &mut rng, 8);
            let v = random_braid(n, &mut rng, 8);
            let uv = u.concat(&v).unwrap();
            assert_eq!(
                burau_unreduced(&uv).unwrap(),
                burau_unreduced(&u).unwrap().mul(&burau_unreduced(&v).unwrap()),
                "u = {u}, v = {v}"
            );
        }
    }

    #[test]
    fn burau_braid_relations() {
        for n in 3..=6 {
            for i in 1..n - 1 {
                let lhs = burau_unreduced(
                    &braid(&format!("s{i}*s{}*s{i}", i + 1), n),
                )
                .unwrap();
                let rhs = burau_unreduced(
                    &braid(&format!("s{}*s{i}*s{}", i + 1, i + 1), n),
                )
                .unwrap();
                assert_eq!(lhs, rhs, "braid relation i={i} n={n}");
            }
            for i in 1..n {
                for j in i + 2..n {
                    let lhs = burau_unreduced(&braid(&format!("s{i}*s{j}"), n)).unwrap();
                    let rhs = burau_unreduced(&braid(&format!("s{j}*s{i}"), n)).unwrap();
                    assert_eq!(lhs, rhs, "commutation i={i} j={j} n={n}");
                }
            }
        }
    }

    #[test]
    fn burau_at_one_is_permutation() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        let at_one: BTreeMap<String, Rational> =
            [("t".to_string(), Rational::one())].into();
        for _ in 0..100 {
            let n = rng.gen_range(2..=5);
            let b = random_braid(n, &mut rng, 10);
            let m = burau_unreduced(&b).unwrap().specialize(&at_one).unwrap();
            let p = permutation_matrix(&underlying_permutation(&b).unwrap());
            assert_eq!(m, p, "braid {b}");
        }
    }

    #[test]
    fn burau_row_sums_are_one() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        for _ in 0..50 {
            let b = random_braid(4, &mut rng, 10);
            let m = burau_unreduced(&b).unwrap();
            for row in &m.entries {
                let sum = row.iter().fold(LaurentPoly::zero(&["t"]), |a, e| a.add(e));
                assert!(sum.is_one(), "braid {b}");
            }
        }
    }

    #[test]
    fn burau_specializations() {
        let m = burau_unreduced(&braid("s1", 2)).unwrap();
        let at = |v: i64| -> Vec<Vec<Rational>> {
            m.specialize(&[("t".to_string(), Rational::from_integer(v.into()))].into())
                .unwrap()
        };
        let q = |x: i64| Rational::from_integer(x.into());
        assert_eq!(at(1), vec![vec![q(0), q(1)], vec![q(1), q(0)]]);
        assert_eq!(at(2), vec![vec![q(-1), q(2)], vec![q(1), q(0)]]);
    }

    #[test]
    fn gassner_golden_sigma1_squared() {
        // Golden entries from an independent Fox-calculus expansion.
        let m = gassner(&braid("s1^2", 2)).unwrap();
        let vars = ["t1", "t2"];
        let t1 = LaurentPoly::monomial(&vars, "t1", 1);
        let t2 = LaurentPoly::monomial(&vars, "t2", 1);
        let one = LaurentPoly::one(&vars);
        assert_eq!(m.entries[0][0], one.sub(&t1).add(&t1.mul(&t2)));
        assert_eq!(m.entries[0][1], t1.mul(&one.sub(&t1)));
        assert_eq!(m.entries[1][0], one.sub(&t2));
        assert_eq!(m.entries[1][1], t1);
    }

    #[test]
    fn gassner_rejects_non_pure() {
        assert!(matches!(gassner(&braid("s1", 2)), Err(Error::NotPure)));
    }

    #[test]
    fn gassner_specializes_to_burau() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let mut done = 0;
        while done < 100 {
            let n = rng.gen_range(2..=4);
            let b = random_braid(n, &mut rng, 8);
            if !underlying_permutation(&b).unwrap().is_identity() {
                continue;
            }
            done += 1;
            let g = gassner(&b).unwrap();
            assert_eq!(gassner_to_burau_vars(&g), burau_unreduced(&b).unwrap(), "braid {b}");
        }
    }

    #[test]
    fn reduced_burau_multiplicative() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let u = random_braid(4, &mut rng, 8);
            let v = random_braid(4, &mut rng, 8);
            let uv = u.concat(&v).unwrap();
            assert_eq!(
                burau_reduced(&uv).unwrap(),
                burau_reduced(&u).unwrap().mul(&burau_reduced(&v).unwrap())
            );
        }
        assert_eq!(burau_reduced(&braid("1", 4)).unwrap(), RepMatrix::identity(3, &["t"]));
    }
}
