//! The named homomorphisms `r_n`, `r_kn`, `psi_bar`, `P_k`, `p_k`, the
//! disc embedding, and the lifting-extension diagram check.
//!
//! Every hom into a class-2 quotient is verified against its source
//! presentation at construction; building one that fails a relator is an
//! error, not a latent bug.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::nilquot::{c2_multiply, c2_power, c2_project, make_group, Class2Element, Class2Group};
use crate::presentations::{
    self, gamma3_presentation, mixed_presentation, sbgs_presentation, surface_presentation,
    Presentation,
};
use crate::words::{GenKind, Generator, GroupContext, Letter, QuotFamily, Word};
use crate::{Error, Result};

/// A verified homomorphism from a presented group into a class-2 quotient.
#[derive(Debug, Clone)]
pub struct ClassHom {
    name: String,
    source: GroupContext,
    target: Class2Group,
    images: BTreeMap<Generator, Class2Element>,
}

impl ClassHom {
    /// Builds and verifies: every relator of `p` must map to the identity.
    fn verified(
        name: &str,
        p: &Presentation,
        target: Class2Group,
        images: BTreeMap<Generator, Class2Element>,
    ) -> Result<ClassHom> {
        let hom = ClassHom { name: name.to_string(), source: p.context(), target, images };
        let report = presentations::verify_relators(
            p,
            |r| hom.apply(r),
            |img| img.is_identity(),
        )?;
        if let Some(f) = report.failures.first() {
            return Err(Error::HomNotVerified {
                relator: f.relator.clone(),
                image: f.image.clone(),
            });
        }
        Ok(hom)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> GroupContext {
        self.source
    }

    pub fn target(&self) -> &Class2Group {
        &self.target
    }

    pub fn image_of(&self, gen: Generator) -> Result<&Class2Element> {
        self.images.get(&gen).ok_or_else(|| Error::MissingImage(gen.to_string()))
    }

    pub fn apply(&self, w: &Word) -> Result<Class2Element> {
        if w.context() != self.source {
            return Err(Error::ContextMismatch {
                left: self.source.to_string(),
                right: w.context().to_string(),
            });
        }
        c2_project(w, &self.target, &self.images)
    }
}

/// Image table sending every generator of `ctx` to the same-name generator
/// of `target`, with all `sigma`-indices (and `zeta`-indices) identified.
fn collapsing_images(
    ctx: GroupContext,
    target: &Class2Group,
) -> Result<BTreeMap<Generator, Class2Element>> {
    let mut images = BTreeMap::new();
    for gen in ctx.generators() {
        let img_gen = match gen.kind {
            GenKind::Sigma | GenKind::SigmaTilde | GenKind::Zeta => Generator::new(gen.kind, 1),
            _ => gen,
        };
        images.insert(gen, target.generator_element(img_gen)?);
    }
    Ok(images)
}

/// `r_n: B_n(Σ_g) → G_g` (family `Gg`) or `r_kn: B_{k,n}(Σ_g) → H_g`
/// (family `Hg`). The `k` parameter is ignored for `r_n`.
pub fn make_gamma3_projection(
    family: QuotFamily,
    g: usize,
    k: usize,
    n: usize,
) -> Result<ClassHom> {
    if n < 3 {
        return Err(Error::OpenCase(format!(
            "gamma3 quotient presentations need n >= 3 (got n = {n}); smaller n is open"
        )));
    }
    match family {
        QuotFamily::Gg => {
            let p = surface_presentation(g, n)?;
            let target = make_group(QuotFamily::Gg, g)?;
            let images = collapsing_images(p.context(), &target)?;
            ClassHom::verified("rn", &p, target, images)
        }
        QuotFamily::Hg => {
            if k < 3 {
                return Err(Error::OpenCase(format!(
                    "r_kn needs k >= 3 (got k = {k}); smaller k is open"
                )));
            }
            let p = mixed_presentation(k, n, g)?;
            let target = make_group(QuotFamily::Hg, g)?;
            let images = collapsing_images(p.context(), &target)?;
            ClassHom::verified("rkn", &p, target, images)
        }
        QuotFamily::Kg => Err(Error::InvalidParameters(
            "K_g is a kernel, not a gamma3 quotient target; use make_fiber_projection".into(),
        )),
    }
}

/// `psi_bar: H_g → G_g`, killing the fiber block and dropping tildes.
pub fn make_psi_bar(g: usize) -> Result<ClassHom> {
    let p = gamma3_presentation(QuotFamily::Hg, g)?;
    let target = make_group(QuotFamily::Gg, g)?;
    let mut images = BTreeMap::new();
    for gen in p.context().generators() {
        let img = match gen.kind {
            GenKind::SigmaTilde => target.generator_element(Generator::new(GenKind::Sigma, 1))?,
            GenKind::ATilde => target.generator_element(Generator::new(GenKind::A, gen.index))?,
            GenKind::BTilde => target.generator_element(Generator::new(GenKind::B, gen.index))?,
            _ => target.identity(),
        };
        images.insert(gen, img);
    }
    ClassHom::verified("psibar", &p, target, images)
}

/// Kernel test for `psi_bar`: an `H_g` element lies in `ker psi_bar` iff
/// its tilde exponents all vanish.
pub fn psi_bar_kernel_member(h: &Class2Group, x: &Class2Element) -> bool {
    let tilde = |gens: &[Generator], exps: &[i64]| {
        gens.iter().zip(exps).all(|(g, &e)| {
            !matches!(g.kind, GenKind::SigmaTilde | GenKind::ATilde | GenKind::BTilde) || e == 0
        })
    };
    tilde(h.central_basis(), &x.central)
        && tilde(h.a_block(), &x.a)
        && tilde(h.b_block(), &x.b)
}

/// An–Ko projection `P_k: B_k(Σ_{g,n}) → K_g`.
pub fn make_fiber_projection(g: usize, k: usize, n: usize) -> Result<ClassHom> {
    if k < 3 || n < 3 {
        return Err(Error::OpenCase(format!(
            "P_k is constructed for k, n >= 3 (got k = {k}, n = {n}); smaller cases are open"
        )));
    }
    let p = sbgs_presentation(k, g, n)?;
    let target = make_group(QuotFamily::Kg, g)?;
    let images = collapsing_images(p.context(), &target)?;
    ClassHom::verified("Pk", &p, target, images)
}

/// Image of a disc braid word in `G_k = Z^2 = <q, t>` (or `Z = <t>` when
/// `k = 1`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiscImage {
    /// `None` for `k = 1`, where only the length function survives.
    pub q: Option<i64>,
    pub t: i64,
}

impl std::fmt::Display for DiscImage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        if let Some(q) = self.q {
            if q != 0 {
                parts.push(if q == 1 { "q".to_string() } else { format!("q^{q}") });
            }
        }
        if self.t != 0 {
            parts.push(if self.t == 1 { "t".to_string() } else { format!("t^{}", self.t) });
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" * "))
        }
    }
}

/// `p_k: B_k(D_n) → G_k`: every `sigma` to `q`, every `zeta` to `t`.
/// Disc words live in the genus-0 fiber context `FiberB(k, 0, n)`.
pub fn make_disc_projection(k: usize, n: usize) -> Result<DiscProjection> {
    let ctx = GroupContext::FiberB { k, g: 0, n };
    ctx.validate()?;
    Ok(DiscProjection { k, ctx })
}

#[derive(Debug, Clone)]
pub struct DiscProjection {
    k: usize,
    ctx: GroupContext,
}

impl DiscProjection {
    pub fn source(&self) -> GroupContext {
        self.ctx
    }

    pub fn apply(&self, w: &Word) -> Result<DiscImage> {
        if w.context() != self.ctx {
            return Err(Error::ContextMismatch {
                left: self.ctx.to_string(),
                right: w.context().to_string(),
            });
        }
        let mut q = 0i64;
        let mut t = 0i64;
        for l in w.letters() {
            match l.gen.kind {
                GenKind::Sigma => q += l.exp as i64,
                GenKind::Zeta => t += l.exp as i64,
                _ => {
                    return Err(Error::LetterOutOfContext {
                        letter: l.gen.to_string(),
                        context: self.ctx.to_string(),
                    })
                }
            }
        }
        Ok(DiscImage { q: (self.k > 1).then_some(q), t })
    }
}

/// Relabels a disc braid word into the genus-`g` fiber context.
pub fn embed_disc(w: &Word, g: usize) -> Result<Word> {
    let GroupContext::FiberB { k, g: 0, n } = w.context() else {
        return Err(Error::ContextMismatch {
            left: "FiberB(k, 0, n)".to_string(),
            right: w.context().to_string(),
        });
    };
    w.clone().into_context(GroupContext::FiberB { k, g, n })
}

/// `iota_bar: Z^2 → K_g`, `q -> sigma`, `t -> zeta`.
pub fn iota_bar(kg: &Class2Group, img: &DiscImage) -> Result<Class2Element> {
    let s = kg.generator_element(Generator::new(GenKind::Sigma, 1))?;
    let z = kg.generator_element(Generator::new(GenKind::Zeta, 1))?;
    let sq = c2_power(kg, &s, img.q.unwrap_or(0))?;
    let zt = c2_power(kg, &z, img.t)?;
    c2_multiply(kg, &sq, &zt)
}

#[derive(Debug, Clone, Serialize)]
pub struct DiagramReport {
    pub g: usize,
    pub k: usize,
    pub n: usize,
    pub samples: usize,
    pub pass: bool,
    /// First word where the square failed, with both images.
    pub counterexample: Option<(String, String, String)>,
}

/// Checks `P_k(embed_disc(w)) = iota_bar(p_k(w))` on random disc words.
pub fn check_lifting_diagram(
    g: usize,
    k: usize,
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<DiagramReport> {
    use rand::{Rng, SeedableRng};
    let pk = make_fiber_projection(g, k, n)?;
    let disc = make_disc_projection(k, n)?;
    let kg = pk.target().clone();
    let gens = disc.source().generators();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut report = DiagramReport { g, k, n, samples, pass: true, counterexample: None };
    for _ in 0..samples {
        let len = rng.gen_range(0..=25);
        let letters: Vec<Letter> = (0..len)
            .map(|_| {
                Letter::new(
                    gens[rng.gen_range(0..gens.len())],
                    if rng.gen_bool(0.5) { 1 } else { -1 },
                )
            })
            .collect();
        let w = Word::from_letters(disc.source(), letters)?;
        let via_fiber = pk.apply(&embed_disc(&w, g)?)?;
        let via_disc = iota_bar(&kg, &disc.apply(&w)?)?;
        if via_fiber != via_disc {
            report.pass = false;
            report.counterexample =
                Some((w.to_string(), via_fiber.to_string(), via_disc.to_string()));
            break;
        }
    }
    Ok(report)
}

/// The unique length extension to the surface braid group: it *is* `r_n`.
pub fn length_extension(g: usize, n: usize, w: &Word) -> Result<Class2Element> {
    make_gamma3_projection(QuotFamily::Gg, g, 0, n)?.apply(w)
}

/// Word-level `psi: B_{k,n}(Σ_g) → B_n(Σ_g)`: drop the fiber block, strip
/// tildes. Used to test commutativity `psi_bar ∘ r_kn = r_n ∘ psi`.
pub fn psi_word(w: &Word) -> Result<Word> {
    let GroupContext::MixedB { n, g, .. } = w.context() else {
        return Err(Error::ContextMismatch {
            left: "MixedB(k, n, g)".to_string(),
            right: w.context().to_string(),
        });
    };
    let ctx = GroupContext::SurfaceB { g, n };
    let mut letters = Vec::new();
    for l in w.letters() {
        let kind = match l.gen.kind {
            GenKind::SigmaTilde => GenKind::Sigma,
            GenKind::ATilde => GenKind::A,
            GenKind::BTilde => GenKind::B,
            _ => continue,
        };
        letters.push(Letter::new(Generator::new(kind, l.gen.index), l.exp));
    }
    Word::from_letters(ctx, letters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_word;
    use rand::{Rng, SeedableRng};

    fn random_word(ctx: GroupContext, rng: &mut rand_chacha::ChaCha8Rng, max_len: usize) -> Word {
        let gens = ctx.generators();
        let len = rng.gen_range(0..=max_len);
        let letters = (0..len)
            .map(|_| {
                Letter::new(
                    gens[rng.gen_range(0..gens.len())],
                    if rng.gen_bool(0.5) { 1 } else { -1 },
                )
            })
            .collect();
        Word::from_letters(ctx, letters).unwrap()
    }

    #[test]
    fn rn_images_and_examples() {
        let rn = make_gamma3_projection(QuotFamily::Gg, 1, 0, 3).unwrap();
        let ctx = rn.source();
        let apply = |t: &str| rn.apply(&parse_word(t, ctx).unwrap()).unwrap();
        assert_eq!(apply("s1*s2*s1").to_string(), "s^3");
        assert_eq!(apply("[a1,b1]").to_string(), "s^2");
        assert!(apply("s1*s2^-1").is_identity());
    }

    #[test]
    fn rkn_identifies_all_zetas() {
        let rkn = make_gamma3_projection(QuotFamily::Hg, 1, 3, 3).unwrap();
        let w = parse_word("z1*z2^-1", rkn.source()).unwrap();
        assert!(rkn.apply(&w).unwrap().is_identity());
    }

    #[test]
    fn small_parameters_are_open() {
        assert!(matches!(
            make_gamma3_projection(QuotFamily::Gg, 1, 0, 2),
            Err(Error::OpenCase(_))
        ));
        assert!(matches!(
            make_gamma3_projection(QuotFamily::Hg, 1, 2, 3),
            Err(Error::OpenCase(_))
        ));
        assert!(matches!(make_fiber_projection(1, 3, 2), Err(Error::OpenCase(_))));
        assert!(matches!(make_fiber_projection(1, 1, 3), Err(Error::OpenCase(_))));
    }

    #[test]
    fn psi_bar_examples_and_kernel() {
        let psi = make_psi_bar(1).unwrap();
        let ctx = psi.source();
        let apply = |t: &str| psi.apply(&parse_word(t, ctx).unwrap()).unwrap();
        assert_eq!(apply("S^2").to_string(), "s^2");
        assert_eq!(apply("z*a1*B1").to_string(), "b1");

        let hg = make_group(QuotFamily::Hg, 1).unwrap();
        let member = crate::nilquot::c2_eval(&hg, &parse_word("s^3*z^-2*a1*b1^5", ctx).unwrap()).unwrap();
        assert!(psi_bar_kernel_member(&hg, &member));
        let outside = crate::nilquot::c2_eval(&hg, &parse_word("A1", ctx).unwrap()).unwrap();
        assert!(!psi_bar_kernel_member(&hg, &outside));
    }

    #[test]
    fn kernel_test_equals_image_vanishing() {
        // x in ker psi_bar iff psi_bar(x) = 1, on random elements.
        let psi = make_psi_bar(2).unwrap();
        let hg = make_group(QuotFamily::Hg, 2).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..1000 {
            let w = random_word(psi.source(), &mut rng, 20);
            let x = crate::nilquot::c2_eval(&hg, &w).unwrap();
            assert_eq!(
                psi.apply(&hg.to_word(&x).unwrap()).unwrap().is_identity(),
                psi_bar_kernel_member(&hg, &x),
                "element {x}"
            );
        }
    }

    #[test]
    fn psi_bar_commutes_with_projections() {
        // psi_bar ∘ r_kn = r_n ∘ psi on random mixed words.
        let rkn = make_gamma3_projection(QuotFamily::Hg, 1, 3, 3).unwrap();
        let rn = make_gamma3_projection(QuotFamily::Gg, 1, 0, 3).unwrap();
        let psi = make_psi_bar(1).unwrap();
        let hg = make_group(QuotFamily::Hg, 1).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..1000 {
            let w = random_word(rkn.source(), &mut rng, 20);
            let left = psi.apply(&hg.to_word(&rkn.apply(&w).unwrap()).unwrap()).unwrap();
            let right = rn.apply(&psi_word(&w).unwrap()).unwrap();
            assert_eq!(left, right, "word {w}");
        }
    }

    #[test]
    fn fiber_projection_examples() {
        let pk = make_fiber_projection(1, 3, 3).unwrap();
        let ctx = pk.source();
        let apply = |t: &str| pk.apply(&parse_word(t, ctx).unwrap()).unwrap();
        assert_eq!(apply("s1*z1*s1^-1").to_string(), "z");
        assert_eq!(apply("[a1,b1]").to_string(), "s^2");
        assert_eq!(apply("z2*a1*z3*b1").to_string(), "z^2 * a1 * b1");
    }

    #[test]
    fn disc_projection_and_length() {
        let p3 = make_disc_projection(3, 3).unwrap();
        let w = parse_word("s1*s2^-1*z1", p3.source()).unwrap();
        assert_eq!(p3.apply(&w).unwrap(), DiscImage { q: Some(0), t: 1 });

        let p1 = make_disc_projection(1, 3).unwrap();
        let w = parse_word("z1*z2*z3", p1.source()).unwrap();
        let img = p1.apply(&w).unwrap();
        assert_eq!(img, DiscImage { q: None, t: 3 });
        assert_eq!(img.to_string(), "t^3");

        // Relators of the disc presentation abelianize to zero.
        let p = sbgs_presentation(2, 0, 4).unwrap();
        let p2 = make_disc_projection(2, 4).unwrap();
        for r in p.relators() {
            assert_eq!(p2.apply(r).unwrap(), DiscImage { q: Some(0), t: 0 });
        }
    }

    #[test]
    fn embed_disc_relabels() {
        let disc = GroupContext::FiberB { k: 3, g: 0, n: 2 };
        let w = parse_word("s1*z2", disc).unwrap();
        let e = embed_disc(&w, 2).unwrap();
        assert_eq!(e.context(), GroupContext::FiberB { k: 3, g: 2, n: 2 });
        assert_eq!(e.to_string(), "s1 * z2");
    }

    #[test]
    fn sigma_zeta_free_abelian_in_kg() {
        let kg = make_group(QuotFamily::Kg, 1).unwrap();
        for (x, y) in [(0, 0), (1, 0), (0, 1), (3, -2), (-5, 7)] {
            let e = iota_bar(&kg, &DiscImage { q: Some(x), t: y }).unwrap();
            assert_eq!(e.is_identity(), x == 0 && y == 0);
        }
    }

    #[test]
    fn lifting_diagram_small_range() {
        for g in 1..=2 {
            for k in 3..=4 {
                for n in 3..=4 {
                    let r = check_lifting_diagram(g, k, n, 200, 2024).unwrap();
                    assert!(r.pass, "diagram failed at g={g} k={k} n={n}: {:?}", r.counterexample);
                }
            }
        }
    }

    #[test]
    fn length_extension_on_sigma_words() {
        let ctx = GroupContext::SurfaceB { g: 1, n: 3 };
        let w = parse_word("s1*s2*s1^-1", ctx).unwrap();
        assert_eq!(length_extension(1, 3, &w).unwrap().to_string(), "s");
        let w = parse_word("[a1,b1]*s1", ctx).unwrap();
        assert_eq!(length_extension(1, 3, &w).unwrap().to_string(), "s^3");

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        let sigmas: Vec<Generator> =
            (1..3).map(|i| Generator::new(GenKind::Sigma, i)).collect();
        for _ in 0..300 {
            let len = rng.gen_range(0..=20);
            let letters: Vec<Letter> = (0..len)
                .map(|_| {
                    Letter::new(
                        sigmas[rng.gen_range(0..sigmas.len())],
                        if rng.gen_bool(0.5) { 1 } else { -1 },
                    )
                })
                .collect();
            let signed_count: i64 = letters.iter().map(|l| l.exp as i64).sum();
            let w = Word::from_letters(ctx, letters).unwrap();
            let img = length_extension(1, 3, &w).unwrap();
            assert!(img.a.iter().chain(&img.b).all(|&v| v == 0));
            assert_eq!(img.central, vec![signed_count]);
        }
    }
}
