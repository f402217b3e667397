//! Multivariate Laurent polynomials over the integers, exact throughout.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::Error;

pub type Rational = BigRational;

/// A finite sum of integer-coefficient monomials with integer (possibly
/// negative) exponents. Terms are kept in a sorted map keyed by exponent
/// vector, giving a canonical form for equality and printing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl LaurentPoly {
    pub fn zero(vars: &[&str]) -> LaurentPoly {
        LaurentPoly { vars: vars.iter().map(|s| s.to_string()).collect(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &[&str], c: i64) -> LaurentPoly {
        let mut p = LaurentPoly::zero(vars);
        if c != 0 {
            p.terms.insert(vec![0; p.vars.len()], BigInt::from(c));
        }
        p
    }

    pub fn one(vars: &[&str]) -> LaurentPoly {
        LaurentPoly::constant(vars, 1)
    }

    /// The monomial `var^e`.
    pub fn monomial(vars: &[&str], var: &str, e: i64) -> LaurentPoly {
        let mut p = LaurentPoly::zero(vars);
        let i = p.vars.iter().position(|v| v == var).expect("variable in list");
        let mut exps = vec![0; p.vars.len()];
        exps[i] = e;
        p.terms.insert(exps, BigInt::one());
        p
    }

    pub fn from_terms(vars: &[&str], terms: &[(Vec<i64>, i64)]) -> LaurentPoly {
        let mut p = LaurentPoly::zero(vars);
        for (exps, c) in terms {
            assert_eq!(exps.len(), p.vars.len());
            p.add_term(exps.clone(), BigInt::from(*c));
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&vec![0; self.vars.len()])
                .is_some_and(|c| c.is_one())
    }

    fn add_term(&mut self, exps: Vec<i64>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            // Re-borrow to remove: find the key again.
            let key: Vec<Vec<i64>> = self
                .terms
                .iter()
                .filter(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .collect();
            for k in key {
                self.terms.remove(&k);
            }
        }
    }

    /// Zero-extends both operands over the union of their variable lists.
    fn aligned(&self, other: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
        if self.vars == other.vars {
            return (self.clone(), other.clone());
        }
        let mut vars = self.vars.clone();
        for v in &other.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        let remap = |p: &LaurentPoly| {
            let idx: Vec<usize> = p
                .vars
                .iter()
                .map(|v| vars.iter().position(|w| w == v).unwrap())
                .collect();
            let mut out = LaurentPoly { vars: vars.clone(), terms: BTreeMap::new() };
            for (exps, c) in &p.terms {
                let mut e = vec![0; vars.len()];
                for (k, &x) in exps.iter().enumerate() {
                    e[idx[k]] = x;
                }
                out.terms.insert(e, c.clone());
            }
            out
        };
        (remap(self), remap(other))
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let (mut a, b) = self.aligned(other);
        for (exps, c) in b.terms {
            a.add_term(exps, c);
        }
        a
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let (a, b) = self.aligned(other);
        let mut out = LaurentPoly { vars: a.vars.clone(), terms: BTreeMap::new() };
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let exps: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(exps, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Exact evaluation; negative exponents produce rational values.
    pub fn eval(&self, assignment: &BTreeMap<String, Rational>) -> Result<Rational, Error> {
        let values: Vec<&Rational> = self
            .vars
            .iter()
            .map(|v| {
                assignment
                    .get(v)
                    .ok_or_else(|| Error::MissingImage(v.clone()))
            })
            .collect::<Result<_, _>>()?;
        let mut total = Rational::zero();
        for (exps, c) in &self.terms {
            let mut term = Rational::from(c.clone());
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if values[i].is_zero() && e < 0 {
                    return Err(Error::EvalAtZero(self.vars[i].clone()));
                }
                let p = if e > 0 {
                    values[i].pow(e as i32)
                } else {
                    values[i].pow(e as i32)
                };
                term *= p;
            }
            total += term;
        }
        Ok(total)
    }

    /// Renames the variable set (e.g. identify all Gassner variables).
    /// Variables mapping to the same name have their exponents summed.
    pub fn rename_vars(&self, mapping: &BTreeMap<String, String>, new_vars: &[&str]) -> LaurentPoly {
        let idx: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                let target = mapping.get(v).unwrap_or(v);
                new_vars.iter().position(|w| w == target).expect("target variable present")
            })
            .collect();
        let mut out = LaurentPoly::zero(new_vars);
        for (exps, c) in &self.terms {
            let mut e = vec![0i64; new_vars.len()];
            for (k, &x) in exps.iter().enumerate() {
                e[idx[k]] += x;
            }
            out.add_term(e, c.clone());
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exps, c) in &self.terms {
            let mut mono = String::new();
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !mono.is_empty() {
                    mono.push('*');
                }
                if e == 1 {
                    mono.push_str(&self.vars[i]);
                } else {
                    mono.push_str(&format!("{}^{}", self.vars[i], e));
                }
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let ca = c.abs();
            if mono.is_empty() {
                write!(f, "{ca}")?;
            } else if ca.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{ca}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl serde::Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
