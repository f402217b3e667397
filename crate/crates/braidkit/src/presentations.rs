//! Presentation factories for the braid groups involved, homomorphism
//! verification, and the permutation homomorphism.
//!
//! Relations stated as equalities are stored as relators `LHS * RHS^-1`.
//! Relator order is deterministic: family order as printed in the source
//! presentations, then lexicographic in indices.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::words::{GenKind, Generator, GroupContext, Letter, QuotFamily, Word};
use crate::{Error, Result};

/// A finite group presentation: generators plus relator words (`r = 1`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    context: GroupContext,
    generators: Vec<Generator>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(
        context: GroupContext,
        generators: Vec<Generator>,
        relators: Vec<Word>,
    ) -> Result<Presentation> {
        context.validate()?;
        for r in &relators {
            if r.context() != context {
                return Err(Error::ContextMismatch {
                    left: context.to_string(),
                    right: r.context().to_string(),
                });
            }
            for l in r.letters() {
                if !generators.contains(&l.gen) {
                    return Err(Error::LetterOutOfContext {
                        letter: l.gen.to_string(),
                        context: context.to_string(),
                    });
                }
            }
        }
        Ok(Presentation { context, generators, relators })
    }

    pub fn context(&self) -> GroupContext {
        self.context
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "context": self.context.to_string(),
            "generators": self.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "relators": self.relators.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// Small helper: a word from `(kind, index, exponent)` triples, expanding
/// exponents.
fn word(ctx: GroupContext, spec: &[(GenKind, usize, i64)]) -> Word {
    let mut letters = Vec::new();
    for &(kind, index, e) in spec {
        let sign: i8 = if e >= 0 { 1 } else { -1 };
        for _ in 0..e.unsigned_abs() {
            letters.push(Letter::new(Generator::new(kind, index), sign));
        }
    }
    Word::from_letters(ctx, letters).expect("relator letters in context")
}

/// `lhs * rhs^-1` as a relator word.
fn relator(lhs: Word, rhs: Word) -> Word {
    lhs.concat(&rhs.inverse()).expect("same context")
}

/// Generator kinds used for one copy of the "surface braid group system"
/// relations. The mixed presentation instantiates the same families twice
/// with different kinds.
#[derive(Clone, Copy)]
struct SystemKinds {
    sigma: GenKind,
    a: GenKind,
    b: GenKind,
    zeta: GenKind,
}

const PLAIN_KINDS: SystemKinds =
    SystemKinds { sigma: GenKind::Sigma, a: GenKind::A, b: GenKind::B, zeta: GenKind::Zeta };
const TILDE_KINDS: SystemKinds =
    SystemKinds { sigma: GenKind::SigmaTilde, a: GenKind::ATilde, b: GenKind::BTilde, zeta: GenKind::Zeta };

/// The eleven relation families of the surface braid group system on
/// parameters `(k, g, n)`. Families over empty index ranges (in particular
/// every family mentioning `sigma_1` when `k = 1`) are omitted.
fn system_relators(ctx: GroupContext, k: usize, g: usize, n: usize, kinds: SystemKinds) -> Vec<Word> {
    let s = |i: usize, e: i64| (kinds.sigma, i, e);
    let z = |j: usize, e: i64| (kinds.zeta, j, e);
    let mut out = Vec::new();

    // (1) sigma_i sigma_j = sigma_j sigma_i, |i - j| >= 2
    for i in 1..k.saturating_sub(1) {
        for j in i + 2..k {
            out.push(relator(
                word(ctx, &[s(i, 1), s(j, 1)]),
                word(ctx, &[s(j, 1), s(i, 1)]),
            ));
        }
    }
    // (2) braid relation
    for i in 1..k.saturating_sub(1) {
        out.push(relator(
            word(ctx, &[s(i, 1), s(i + 1, 1), s(i, 1)]),
            word(ctx, &[s(i + 1, 1), s(i, 1), s(i + 1, 1)]),
        ));
    }
    // (3) c_i sigma_j = sigma_j c_i for j >= 2
    for i in 1..=g {
        for c in [kinds.a, kinds.b] {
            for j in 2..k {
                out.push(relator(
                    word(ctx, &[(c, i, 1), s(j, 1)]),
                    word(ctx, &[s(j, 1), (c, i, 1)]),
                ));
            }
        }
    }
    if k >= 2 {
        // (4) c_i s1 c_i s1 = s1 c_i s1 c_i
        for i in 1..=g {
            for c in [kinds.a, kinds.b] {
                out.push(relator(
                    word(ctx, &[(c, i, 1), s(1, 1), (c, i, 1), s(1, 1)]),
                    word(ctx, &[s(1, 1), (c, i, 1), s(1, 1), (c, i, 1)]),
                ));
            }
        }
        // (5) a_i s1 b_i = s1 b_i s1 a_i s1
        for i in 1..=g {
            out.push(relator(
                word(ctx, &[(kinds.a, i, 1), s(1, 1), (kinds.b, i, 1)]),
                word(ctx, &[s(1, 1), (kinds.b, i, 1), s(1, 1), (kinds.a, i, 1), s(1, 1)]),
            ));
        }
        // (6) c_i (s1^-1 c_j s1) = (s1^-1 c_j s1) c_i for j < i
        for i in 2..=g {
            for j in 1..i {
                for ci in [kinds.a, kinds.b] {
                    for cj in [kinds.a, kinds.b] {
                        out.push(relator(
                            word(ctx, &[(ci, i, 1), s(1, -1), (cj, j, 1), s(1, 1)]),
                            word(ctx, &[s(1, -1), (cj, j, 1), s(1, 1), (ci, i, 1)]),
                        ));
                    }
                }
            }
        }
        // (7) zeta_j sigma_i = sigma_i zeta_j, i != 1
        for j in 1..=n {
            for i in 2..k {
                out.push(relator(
                    word(ctx, &[z(j, 1), s(i, 1)]),
                    word(ctx, &[s(i, 1), z(j, 1)]),
                ));
            }
        }
        // (8)+(9) (s1^-1 zeta_j s1) commutes with a_l and b_l
        for j in 1..=n {
            for l in 1..=g {
                for c in [kinds.a, kinds.b] {
                    out.push(relator(
                        word(ctx, &[s(1, -1), z(j, 1), s(1, 1), (c, l, 1)]),
                        word(ctx, &[(c, l, 1), s(1, -1), z(j, 1), s(1, 1)]),
                    ));
                }
            }
        }
        // (10) (s1^-1 zeta_j s1) zeta_l = zeta_l (s1^-1 zeta_j s1), j < l
        for j in 1..n {
            for l in j + 1..=n {
                out.push(relator(
                    word(ctx, &[s(1, -1), z(j, 1), s(1, 1), z(l, 1)]),
                    word(ctx, &[z(l, 1), s(1, -1), z(j, 1), s(1, 1)]),
                ));
            }
        }
        // (11) (s1 zeta_j s1) zeta_j = zeta_j (s1 zeta_j s1)
        for j in 1..=n {
            out.push(relator(
                word(ctx, &[s(1, 1), z(j, 1), s(1, 1), z(j, 1)]),
                word(ctx, &[z(j, 1), s(1, 1), z(j, 1), s(1, 1)]),
            ));
        }
    }
    out
}

/// Artin braid group on `n` strands.
pub fn artin_presentation(n: usize) -> Result<Presentation> {
    let ctx = GroupContext::ArtinB { n };
    ctx.validate()?;
    let relators = system_relators(ctx, n, 0, 0, PLAIN_KINDS);
    Presentation::new(ctx, ctx.generators(), relators)
}

/// Braid group of the genus-`g` one-boundary surface on `n` strands.
pub fn surface_presentation(g: usize, n: usize) -> Result<Presentation> {
    let ctx = GroupContext::SurfaceB { g, n };
    ctx.validate()?;
    let relators = system_relators(ctx, n, g, 0, PLAIN_KINDS);
    Presentation::new(ctx, ctx.generators(), relators)
}

/// The fiber group `B_k` of the genus-`g` surface with `n` punctures (the
/// surface braid group system presentation).
pub fn sbgs_presentation(k: usize, g: usize, n: usize) -> Result<Presentation> {
    let ctx = GroupContext::FiberB { k, g, n };
    ctx.validate()?;
    let relators = system_relators(ctx, k, g, n, PLAIN_KINDS);
    Presentation::new(ctx, ctx.generators(), relators)
}

/// Conjugation image of a single fiber generator under a positive acting
/// letter, per the mixed presentation's action family (c). `beta_kind` is
/// one of `SigmaTilde`, `ATilde`, `BTilde` with index `i`; `x` a fiber
/// generator of the mixed context.
pub fn action_relation_rhs(ctx: GroupContext, beta: Generator, x: Generator, g: usize) -> Word {
    use GenKind::*;
    let i = beta.index;
    let j = x.index;
    // Conjugator words reused below.
    let conj = |w: Word, c: &Word| -> Word {
        // w^c = c^-1 w c
        c.inverse().concat(&w).unwrap().concat(c).unwrap()
    };
    let letter = |kind: GenKind, idx: usize, e: i64| word(ctx, &[(kind, idx, e)]);
    let z1 = letter(Zeta, 1, 1);
    match (beta.kind, x.kind) {
        // (i)+(ii): sigma_j, and a_j/b_j under sigma-tilde, are fixed.
        (_, Sigma) => letter(Sigma, j, 1),
        (SigmaTilde, A) => letter(A, j, 1),
        (SigmaTilde, B) => letter(B, j, 1),
        // (iii) zeta under sigma-tilde
        (SigmaTilde, Zeta) if j == i + 1 => letter(Zeta, i, 1),
        (SigmaTilde, Zeta) if j == i => {
            word(ctx, &[(Zeta, i, -1), (Zeta, i + 1, 1), (Zeta, i, 1)])
        }
        (SigmaTilde, Zeta) => letter(Zeta, j, 1),
        // (iii) zeta under a-tilde / b-tilde
        (ATilde | BTilde, Zeta) => {
            let c_kind = if beta.kind == ATilde { A } else { B };
            if j == 1 {
                // zeta_1 ^ (c_i zeta_1)
                let c = letter(c_kind, i, 1).concat(&z1).unwrap();
                conj(z1.clone(), &c)
            } else {
                // zeta_j ^ [c_i^-1, zeta_1^-1]
                let c = letter(c_kind, i, -1)
                    .commutator(&letter(Zeta, 1, -1))
                    .unwrap();
                conj(letter(Zeta, j, 1), &c)
            }
        }
        // (iv) a under a-tilde, b under b-tilde
        (ATilde, A) | (BTilde, B) => {
            let c_kind = if beta.kind == ATilde { A } else { B };
            if j == i {
                // zeta_1^-1 c_i zeta_1
                word(ctx, &[(Zeta, 1, -1), (c_kind, i, 1), (Zeta, 1, 1)])
            } else if j < i {
                let c = letter(c_kind, i, -1)
                    .commutator(&letter(Zeta, 1, -1))
                    .unwrap();
                conj(letter(c_kind, j, 1), &c)
            } else {
                letter(c_kind, j, 1)
            }
        }
        // (v) b under a-tilde
        (ATilde, B) => {
            if j == i {
                letter(B, i, 1).concat(&z1).unwrap()
            } else if j < i {
                let c = letter(A, i, -1).commutator(&letter(Zeta, 1, -1)).unwrap();
                conj(letter(B, j, 1), &c)
            } else {
                letter(B, j, 1)
            }
        }
        // (v) a under b-tilde
        (BTilde, A) => {
            if j == i {
                // zeta_1^-1 a_i [b_i^-1, zeta_1^-1]
                let m = letter(B, i, -1).commutator(&letter(Zeta, 1, -1)).unwrap();
                word(ctx, &[(Zeta, 1, -1), (A, i, 1)]).concat(&m).unwrap()
            } else if j < i {
                let c = letter(B, i, -1).commutator(&letter(Zeta, 1, -1)).unwrap();
                conj(letter(A, j, 1), &c)
            } else {
                letter(A, j, 1)
            }
        }
        _ => unreachable!("acting letter {beta} on {x} (g={g})"),
    }
}

/// Mixed braid group on `(k, n)` strands of the genus-`g` surface: the two
/// system copies plus the action relations.
pub fn mixed_presentation(k: usize, n: usize, g: usize) -> Result<Presentation> {
    let ctx = GroupContext::MixedB { k, n, g };
    ctx.validate()?;
    let mut relators = system_relators(ctx, k, g, n, PLAIN_KINDS);
    relators.extend(system_relators(ctx, n, g, 0, TILDE_KINDS));

    // Action relators: beta x beta^-1 * rhs^-1 for every acting letter and
    // every fiber generator.
    let fiber_gens: Vec<Generator> = GroupContext::FiberB { k, g, n }.generators();
    let mut acting: Vec<Generator> = Vec::new();
    for i in 1..n {
        acting.push(Generator::new(GenKind::SigmaTilde, i));
    }
    for i in 1..=g {
        acting.push(Generator::new(GenKind::ATilde, i));
        acting.push(Generator::new(GenKind::BTilde, i));
    }
    for beta in acting {
        for &x in &fiber_gens {
            let lhs = word(ctx, &[(beta.kind, beta.index, 1), (x.kind, x.index, 1), (beta.kind, beta.index, -1)]);
            let rhs = action_relation_rhs(ctx, beta, x, g);
            relators.push(relator(lhs, rhs));
        }
    }
    Presentation::new(ctx, ctx.generators(), relators)
}

/// Class-2 quotient presentations: `Gg` (surface quotient), `Hg` (mixed
/// quotient), `Kg` (kernel of the quotient comparison map).
///
/// The zeta-valued commutators are stored as `[a~_i, b_i] = zeta` and
/// `[a_i, b~_i] = zeta`, the form forced by the mixed presentation's action
/// relation (v) under the convention `[x, y] = x y x^-1 y^-1`.
pub fn gamma3_presentation(family: QuotFamily, g: usize) -> Result<Presentation> {
    use GenKind::*;
    let ctx = GroupContext::Class2Quot { family, g };
    ctx.validate()?;
    let gens = ctx.generators();
    let gw = |k: GenKind, i: usize| word(ctx, &[(k, i, 1)]);
    let comm = |x: Word, y: Word| x.commutator(&y).unwrap();
    let mut relators = Vec::new();
    match family {
        QuotFamily::Gg => {
            // All pairs commute except (a_i, b_i); [a_i, b_i] = sigma^2.
            for (p, &x) in gens.iter().enumerate() {
                for &y in &gens[p + 1..] {
                    if x.kind == A && y.kind == B && x.index == y.index {
                        continue;
                    }
                    relators.push(comm(gw(x.kind, x.index), gw(y.kind, y.index)));
                }
            }
            for i in 1..=g {
                relators.push(relator(comm(gw(A, i), gw(B, i)), word(ctx, &[(Sigma, 1, 2)])));
            }
        }
        QuotFamily::Hg => {
            // (1) sigma, sigma~ central among the listed pairs.
            for i in 1..=g {
                relators.push(comm(gw(Sigma, 1), gw(A, i)));
                relators.push(comm(gw(Sigma, 1), gw(B, i)));
                relators.push(comm(gw(SigmaTilde, 1), gw(ATilde, i)));
                relators.push(comm(gw(SigmaTilde, 1), gw(BTilde, i)));
                relators.push(comm(gw(SigmaTilde, 1), gw(A, i)));
                relators.push(comm(gw(SigmaTilde, 1), gw(B, i)));
                relators.push(comm(gw(Sigma, 1), gw(ATilde, i)));
                relators.push(comm(gw(Sigma, 1), gw(BTilde, i)));
            }
            relators.push(comm(gw(Sigma, 1), gw(SigmaTilde, 1)));
            // (2) plain block
            for i in 1..=g {
                for jj in 1..=g {
                    if i != jj {
                        relators.push(comm(gw(A, i), gw(A, jj)));
                        relators.push(comm(gw(A, i), gw(B, jj)));
                    }
                }
            }
            for j in 1..=g {
                relators.push(relator(comm(gw(A, j), gw(B, j)), word(ctx, &[(Sigma, 1, 2)])));
            }
            // (3) tilde block
            for i in 1..=g {
                for jj in 1..=g {
                    if i != jj {
                        relators.push(comm(gw(ATilde, i), gw(ATilde, jj)));
                        relators.push(comm(gw(ATilde, i), gw(BTilde, jj)));
                    }
                }
            }
            for j in 1..=g {
                relators.push(relator(
                    comm(gw(ATilde, j), gw(BTilde, j)),
                    word(ctx, &[(SigmaTilde, 1, 2)]),
                ));
            }
            // (4) cross a/a~ and b/b~
            for i in 1..=g {
                for jj in 1..=g {
                    relators.push(comm(gw(A, i), gw(ATilde, jj)));
                    relators.push(comm(gw(B, i), gw(BTilde, jj)));
                }
            }
            // (5) cross commutators with zeta values
            for i in 1..=g {
                for jj in 1..=g {
                    if i != jj {
                        relators.push(comm(gw(B, i), gw(ATilde, jj)));
                        relators.push(comm(gw(BTilde, jj), gw(A, i)));
                    }
                }
            }
            for i in 1..=g {
                relators.push(relator(comm(gw(ATilde, i), gw(B, i)), word(ctx, &[(Zeta, 1, 1)])));
                relators.push(relator(comm(gw(A, i), gw(BTilde, i)), word(ctx, &[(Zeta, 1, 1)])));
            }
            // (6) zeta central
            for i in 1..=g {
                relators.push(comm(gw(Zeta, 1), gw(A, i)));
                relators.push(comm(gw(Zeta, 1), gw(B, i)));
                relators.push(comm(gw(Zeta, 1), gw(ATilde, i)));
                relators.push(comm(gw(Zeta, 1), gw(BTilde, i)));
            }
            relators.push(comm(gw(Zeta, 1), gw(Sigma, 1)));
            relators.push(comm(gw(Zeta, 1), gw(SigmaTilde, 1)));
        }
        QuotFamily::Kg => {
            // (1) sigma central
            for i in 1..=g {
                relators.push(comm(gw(Sigma, 1), gw(A, i)));
                relators.push(comm(gw(Sigma, 1), gw(B, i)));
            }
            // (2)
            for i in 1..=g {
                for jj in 1..=g {
                    if i != jj {
                        relators.push(comm(gw(A, i), gw(A, jj)));
                        relators.push(comm(gw(A, i), gw(B, jj)));
                    }
                }
            }
            for j in 1..=g {
                relators.push(relator(comm(gw(A, j), gw(B, j)), word(ctx, &[(Sigma, 1, 2)])));
            }
            // (3) zeta central
            for i in 1..=g {
                relators.push(comm(gw(Zeta, 1), gw(A, i)));
                relators.push(comm(gw(Zeta, 1), gw(B, i)));
            }
            relators.push(comm(gw(Zeta, 1), gw(Sigma, 1)));
        }
    }
    Presentation::new(ctx, gens, relators)
}

/// A bijection of `{1..n}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation { images: (1..=n).collect() }
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Permutation {
        let mut p = Permutation::identity(n);
        p.images[i - 1] = j;
        p.images[j - 1] = i;
        p
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// Apply `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation { images: self.images.iter().map(|&i| other.apply(i)).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j - 1] = i + 1;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| j == i + 1)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start - 1] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start - 1] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x - 1] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }
}

impl std::fmt::Display for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// The permutation underlying a braid word. `sigma_i` maps to the
/// transposition `(i, i+1)`; in the mixed context `sigma~_i` acts on the
/// second strand block, offset by `k`. Handle and puncture letters are
/// permutation-trivial.
pub fn underlying_permutation(w: &Word) -> Result<Permutation> {
    let (degree, offset_tilde) = match w.context() {
        GroupContext::ArtinB { n } => (n, 0),
        GroupContext::SurfaceB { n, .. } => (n, 0),
        GroupContext::FiberB { k, .. } => (k, 0),
        GroupContext::MixedB { k, n, .. } => (k + n, k),
        ctx => {
            return Err(Error::InvalidParameters(format!(
                "no underlying permutation for {ctx}"
            )))
        }
    };
    let mut p = Permutation::identity(degree);
    for l in w.letters() {
        let t = match l.gen.kind {
            GenKind::Sigma => Some(l.gen.index),
            GenKind::SigmaTilde => Some(offset_tilde + l.gen.index),
            _ => None,
        };
        if let Some(i) = t {
            p = p.then(&Permutation::transposition(degree, i, i + 1));
        }
    }
    Ok(p)
}

/// Per-relator verification outcome of a homomorphism candidate.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub total: usize,
    pub failures: Vec<RelatorFailure>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RelatorFailure {
    pub index: usize,
    pub relator: String,
    pub image: String,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Evaluates every relator of `p` through `apply` and reports the ones
/// whose image is not the identity of the target (as decided by
/// `is_identity`).
pub fn verify_relators<T: std::fmt::Display>(
    p: &Presentation,
    mut apply: impl FnMut(&Word) -> Result<T>,
    mut is_identity: impl FnMut(&T) -> bool,
) -> Result<VerifyReport> {
    let mut failures = Vec::new();
    for (index, r) in p.relators().iter().enumerate() {
        let image = apply(r)?;
        if !is_identity(&image) {
            failures.push(RelatorFailure {
                index,
                relator: r.to_string(),
                image: image.to_string(),
            });
        }
    }
    Ok(VerifyReport { total: p.relators().len(), failures })
}

/// Word-level substitution: rewrites each letter by the image of its
/// generator (inverted for negative letters) into `target`.
pub fn substitute(
    w: &Word,
    target: GroupContext,
    images: &BTreeMap<Generator, Word>,
) -> Result<Word> {
    let mut out = Word::identity(target);
    for l in w.letters() {
        let img = images
            .get(&l.gen)
            .ok_or_else(|| Error::MissingImage(l.gen.to_string()))?;
        let piece = if l.exp > 0 { img.clone() } else { img.inverse() };
        out = out.concat(&piece)?;
    }
    Ok(out)
}
