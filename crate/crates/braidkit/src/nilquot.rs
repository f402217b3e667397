//! Class-2 nilpotent quotient engine: the groups `G_g`, `H_g`, `K_g` with
//! exponent-vector normal forms.
//!
//! An element is `central^c * a-block^m * b-block^n` for integer vectors
//! `c, m, n`; the commutator table is the only group-specific datum, and
//! the closed-form multiplication law is derived from it. A naive
//! letter-by-letter collection oracle cross-checks the law.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::exactalg::{self, AbelianDescriptor};
use crate::words::{GenKind, Generator, GroupContext, Letter, QuotFamily, Word};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Class2Group {
    family: QuotFamily,
    g: usize,
    central: Vec<Generator>,
    a_block: Vec<Generator>,
    b_block: Vec<Generator>,
    /// `table[i][j]` = exponents over `central` of `[a_block[j], b_block[i]]`.
    table: Vec<Vec<Vec<i64>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Class2Element {
    family: QuotFamily,
    g: usize,
    pub central: Vec<i64>,
    pub a: Vec<i64>,
    pub b: Vec<i64>,
}

/// Build `G_g`, `H_g` or `K_g`.
///
/// The zeta-valued entries of the `H_g` table carry the sign forced by the
/// mixed presentation's action relation (v): `[a~_i, b_i] = [a_i, b~_i] =
/// zeta`.
pub fn make_group(which: QuotFamily, g: usize) -> Result<Class2Group> {
    if g == 0 {
        return Err(Error::InvalidParameters("class-2 quotients need g >= 1".into()));
    }
    use GenKind::*;
    let gen = |k: GenKind, i: usize| Generator::new(k, i);
    let range = |k: GenKind| (1..=g).map(move |i| gen(k, i));
    let (central, a_block, b_block): (Vec<_>, Vec<_>, Vec<_>) = match which {
        QuotFamily::Gg => (
            vec![gen(Sigma, 1)],
            range(A).collect(),
            range(B).collect(),
        ),
        QuotFamily::Hg => (
            vec![gen(Sigma, 1), gen(SigmaTilde, 1), gen(Zeta, 1)],
            range(A).chain(range(ATilde)).collect(),
            range(B).chain(range(BTilde)).collect(),
        ),
        QuotFamily::Kg => (
            vec![gen(Sigma, 1), gen(Zeta, 1)],
            range(A).collect(),
            range(B).collect(),
        ),
    };
    let r = central.len();
    let mut table = vec![vec![vec![0i64; r]; a_block.len()]; b_block.len()];
    let pos = |c: &[Generator], k: GenKind| c.iter().position(|x| x.kind == k).unwrap();
    let s = pos(&central, Sigma);
    for (i, bg) in b_block.iter().enumerate() {
        for (j, ag) in a_block.iter().enumerate() {
            if ag.index != bg.index {
                continue;
            }
            match (ag.kind, bg.kind) {
                (A, B) => table[i][j][s] = 2,
                (ATilde, BTilde) => table[i][j][pos(&central, SigmaTilde)] = 2,
                (ATilde, B) | (A, BTilde) => table[i][j][pos(&central, Zeta)] = 1,
                _ => {}
            }
        }
    }
    Ok(Class2Group { family: which, g, central, a_block, b_block, table })
}

enum Block {
    Central(usize),
    A(usize),
    B(usize),
}

impl Class2Group {
    pub fn family(&self) -> QuotFamily {
        self.family
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn context(&self) -> GroupContext {
        GroupContext::Class2Quot { family: self.family, g: self.g }
    }

    pub fn central_basis(&self) -> &[Generator] {
        &self.central
    }

    pub fn a_block(&self) -> &[Generator] {
        &self.a_block
    }

    pub fn b_block(&self) -> &[Generator] {
        &self.b_block
    }

    /// `[a_block[j], b_block[i]]` as central exponents.
    pub fn table_entry(&self, i: usize, j: usize) -> &[i64] {
        &self.table[i][j]
    }

    pub fn identity(&self) -> Class2Element {
        Class2Element {
            family: self.family,
            g: self.g,
            central: vec![0; self.central.len()],
            a: vec![0; self.a_block.len()],
            b: vec![0; self.b_block.len()],
        }
    }

    fn locate(&self, gen: Generator) -> Result<Block> {
        let find = |v: &[Generator]| v.iter().position(|&x| x == gen);
        if let Some(i) = find(&self.central) {
            Ok(Block::Central(i))
        } else if let Some(i) = find(&self.a_block) {
            Ok(Block::A(i))
        } else if let Some(i) = find(&self.b_block) {
            Ok(Block::B(i))
        } else {
            Err(Error::LetterOutOfContext {
                letter: gen.to_string(),
                context: self.context().to_string(),
            })
        }
    }

    /// The single generator `gen` as an element.
    pub fn generator_element(&self, gen: Generator) -> Result<Class2Element> {
        let mut e = self.identity();
        match self.locate(gen)? {
            Block::Central(i) => e.central[i] = 1,
            Block::A(i) => e.a[i] = 1,
            Block::B(i) => e.b[i] = 1,
        }
        Ok(e)
    }

    fn check(&self, x: &Class2Element) -> Result<()> {
        if x.family != self.family || x.g != self.g {
            return Err(Error::GroupMismatch(format!(
                "element of {:?} (g={}) used in {:?} (g={})",
                x.family, x.g, self.family, self.g
            )));
        }
        Ok(())
    }

    /// Normal-form word of `x` in the quotient context.
    pub fn to_word(&self, x: &Class2Element) -> Result<Word> {
        self.check(x)?;
        let ctx = self.context();
        let mut w = Word::identity(ctx);
        let blocks = [
            (&self.central, &x.central),
            (&self.a_block, &x.a),
            (&self.b_block, &x.b),
        ];
        for (gens, exps) in blocks {
            for (&gen, &e) in gens.iter().zip(exps) {
                w = w.concat(&Word::generator(ctx, gen)?.pow(e))?;
            }
        }
        Ok(w)
    }
}

/// `x * y`. The b-block of `x` moves past the a-block of `y`; with
/// `[a, b] = c` the swap rule is `b a = c^-1 a b`, so the central
/// correction is `-sum b_i(x) a_j(y) [a_j, b_i]`.
pub fn c2_multiply(
    group: &Class2Group,
    x: &Class2Element,
    y: &Class2Element,
) -> Result<Class2Element> {
    group.check(x)?;
    group.check(y)?;
    let mut out = x.clone();
    for (o, v) in out.central.iter_mut().zip(&y.central) {
        *o += v;
    }
    for (o, v) in out.a.iter_mut().zip(&y.a) {
        *o += v;
    }
    for (o, v) in out.b.iter_mut().zip(&y.b) {
        *o += v;
    }
    for (i, &bx) in x.b.iter().enumerate() {
        if bx == 0 {
            continue;
        }
        for (j, &ay) in y.a.iter().enumerate() {
            if ay == 0 {
                continue;
            }
            for (o, &t) in out.central.iter_mut().zip(&group.table[i][j]) {
                *o -= bx * ay * t;
            }
        }
    }
    Ok(out)
}

pub fn c2_inverse(group: &Class2Group, x: &Class2Element) -> Result<Class2Element> {
    group.check(x)?;
    let mut out = x.clone();
    for v in out.central.iter_mut() {
        *v = -*v;
    }
    for v in out.a.iter_mut() {
        *v = -*v;
    }
    for v in out.b.iter_mut() {
        *v = -*v;
    }
    // x * out must cancel the Delta(b(x), -a(x)) correction too.
    for (i, &bx) in x.b.iter().enumerate() {
        for (j, &ax) in x.a.iter().enumerate() {
            for (o, &t) in out.central.iter_mut().zip(&group.table[i][j]) {
                *o -= bx * ax * t;
            }
        }
    }
    Ok(out)
}

pub fn c2_power(group: &Class2Group, x: &Class2Element, e: i64) -> Result<Class2Element> {
    let base = if e < 0 { c2_inverse(group, x)? } else { x.clone() };
    let mut out = group.identity();
    for _ in 0..e.unsigned_abs() {
        out = c2_multiply(group, &out, &base)?;
    }
    Ok(out)
}

/// `x y x^-1 y^-1`; always central in a class-2 group.
pub fn c2_commutator(
    group: &Class2Group,
    x: &Class2Element,
    y: &Class2Element,
) -> Result<Class2Element> {
    let xi = c2_inverse(group, x)?;
    let yi = c2_inverse(group, y)?;
    let mut out = c2_multiply(group, x, y)?;
    out = c2_multiply(group, &out, &xi)?;
    c2_multiply(group, &out, &yi)
}

/// Projects a word through per-generator images, folding left to right.
pub fn c2_project(
    w: &Word,
    group: &Class2Group,
    images: &BTreeMap<Generator, Class2Element>,
) -> Result<Class2Element> {
    let mut out = group.identity();
    for l in w.letters() {
        let img = images
            .get(&l.gen)
            .ok_or_else(|| Error::MissingImage(l.gen.to_string()))?;
        let step = if l.exp > 0 { img.clone() } else { c2_inverse(group, img)? };
        out = c2_multiply(group, &out, &step)?;
    }
    Ok(out)
}

/// Tautological projection of a word already written over the group's own
/// generators.
pub fn c2_eval(group: &Class2Group, w: &Word) -> Result<Class2Element> {
    if w.context() != group.context() {
        return Err(Error::ContextMismatch {
            left: group.context().to_string(),
            right: w.context().to_string(),
        });
    }
    let mut out = group.identity();
    for l in w.letters() {
        let img = group.generator_element(l.gen)?;
        let step = if l.exp > 0 { img } else { c2_inverse(group, &img)? };
        out = c2_multiply(group, &out, &step)?;
    }
    Ok(out)
}

/// Independent collection oracle: bubble the letter sequence into
/// central / a-block / b-block order by adjacent swaps, emitting the
/// commutator-table correction at each out-of-order swap, then read off
/// exponents. No closed-form law is used.
pub fn c2_collect_naive(group: &Class2Group, letters: &[Letter]) -> Result<Class2Element> {
    // (block rank, position) sort key; central letters leave the working
    // list immediately since they commute with everything.
    let mut central = vec![0i64; group.central.len()];
    let mut work: Vec<(usize, i64)> = Vec::new(); // (a_block.len()-offset key, .. )
    let na = group.a_block.len();
    for l in letters {
        match group.locate(l.gen)? {
            Block::Central(i) => central[i] += l.exp as i64,
            Block::A(j) => work.push((j, l.exp as i64)),
            Block::B(i) => work.push((na + i, l.exp as i64)),
        }
    }
    loop {
        let mut swapped = false;
        for p in 0..work.len().saturating_sub(1) {
            let (ku, eu) = work[p];
            let (kv, ev) = work[p + 1];
            if ku <= kv {
                continue;
            }
            // u is later in the normal form than v: swap. If u is b-type
            // and v is a-type the rule b a = c^-1 a b applies.
            if ku >= na && kv < na {
                let t = &group.table[ku - na][kv];
                for (o, &c) in central.iter_mut().zip(t) {
                    *o -= eu * ev * c;
                }
            }
            work[p] = (kv, ev);
            work[p + 1] = (ku, eu);
            swapped = true;
        }
        if !swapped {
            break;
        }
    }
    let mut out = group.identity();
    out.central = central;
    for (k, e) in work {
        if k < na {
            out.a[k] += e;
        } else {
            out.b[k - na] += e;
        }
    }
    Ok(out)
}

/// Invariants of the subgroup of the center spanned by the commutator
/// table values.
pub fn derived_subgroup(group: &Class2Group) -> AbelianDescriptor {
    let rows: Vec<Vec<i64>> = group
        .table
        .iter()
        .flat_map(|row| row.iter().cloned())
        .collect();
    exactalg::lattice_span_invariants(&rows, group.central.len())
}

/// Abelian invariants of the whole group: all generators, one relator per
/// commutator-table value.
pub fn c2_abelianization(group: &Class2Group) -> AbelianDescriptor {
    let r = group.central.len();
    let cols = r + group.a_block.len() + group.b_block.len();
    let rows: Vec<Vec<i64>> = group
        .table
        .iter()
        .flat_map(|row| row.iter())
        .map(|t| {
            let mut row = vec![0i64; cols];
            row[..r].copy_from_slice(t);
            row
        })
        .collect();
    exactalg::quotient_invariants(&rows, cols)
}

impl Class2Element {
    pub fn is_identity(&self) -> bool {
        self.central.iter().chain(&self.a).chain(&self.b).all(|&v| v == 0)
    }

    /// True when the a- and b-blocks vanish.
    pub fn is_central(&self) -> bool {
        self.a.iter().chain(&self.b).all(|&v| v == 0)
    }

    pub fn to_json(&self, group: &Class2Group) -> serde_json::Value {
        let pair = |gens: &[Generator], exps: &[i64]| {
            gens.iter()
                .zip(exps)
                .map(|(g, e)| (g.to_string(), *e))
                .collect::<BTreeMap<_, _>>()
        };
        serde_json::json!({
            "group": format!("{:?}", self.family),
            "g": self.g,
            "central": pair(&group.central, &self.central),
            "a_block": pair(&group.a_block, &self.a),
            "b_block": pair(&group.b_block, &self.b),
            "normal_form": self.to_string(),
        })
    }
}

impl std::fmt::Display for Class2Element {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        // Rebuilding the group is cheap and keeps elements self-contained.
        let group = make_group(self.family, self.g).map_err(|_| std::fmt::Error)?;
        let w = group.to_word(self).map_err(|_| std::fmt::Error)?;
        write!(f, "{w}")
    }
}
