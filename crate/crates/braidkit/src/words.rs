//! Typed braid-word alphabet: contexts, generators, freely reduced words,
//! parsing and printing.
//!
//! Words are free-monoid objects. Only free reduction (cancellation of
//! adjacent inverse pairs) is ever applied here; presentation relators live
//! in `presentations`, quotient arithmetic in `nilquot`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::Error;

/// Which class-2 quotient a `Class2Quot` context describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum QuotFamily {
    Gg,
    Hg,
    Kg,
}

impl fmt::Display for QuotFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotFamily::Gg => write!(f, "Gg"),
            QuotFamily::Hg => write!(f, "Hg"),
            QuotFamily::Kg => write!(f, "Kg"),
        }
    }
}

/// The group a word lives in. The context fixes the legal alphabet: which
/// letter kinds exist and their index ranges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GroupContext {
    /// Artin braid group on `n` strands.
    ArtinB { n: usize },
    /// Braid group of the genus-`g` surface with one boundary component,
    /// `n` strands.
    SurfaceB { g: usize, n: usize },
    /// Braid group of `k` strands on the genus-`g` surface with `n`
    /// punctures (the fiber of the mixed sequence). `g = 0` gives the
    /// punctured disc.
    FiberB { k: usize, g: usize, n: usize },
    /// Mixed braid group on `(k, n)` strands of the genus-`g` surface.
    MixedB { k: usize, n: usize, g: usize },
    /// Free group of rank `n`.
    FreeF { n: usize },
    /// Abstract class-2 quotient (carrier for index-free sigma/zeta letters).
    Class2Quot { family: QuotFamily, g: usize },
}

impl GroupContext {
    pub fn validate(&self) -> Result<(), Error> {
        let ok = match *self {
            GroupContext::ArtinB { n } => n >= 1,
            GroupContext::SurfaceB { g, n } => g >= 1 && n >= 1,
            GroupContext::FiberB { k, .. } => k >= 1,
            GroupContext::MixedB { k, n, g } => k >= 1 && n >= 1 && g >= 1,
            GroupContext::FreeF { n } => n >= 1,
            GroupContext::Class2Quot { g, .. } => g >= 1,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameters(format!("{self}")))
        }
    }

    /// Upper index bound for a letter kind, or `None` if the kind does not
    /// exist in this context.
    pub fn index_range(&self, kind: GenKind) -> Option<usize> {
        use GenKind::*;
        match *self {
            GroupContext::ArtinB { n } => match kind {
                Sigma if n >= 2 => Some(n - 1),
                _ => None,
            },
            GroupContext::SurfaceB { g, n } => match kind {
                Sigma if n >= 2 => Some(n - 1),
                A | B => Some(g),
                _ => None,
            },
            GroupContext::FiberB { k, g, n } => match kind {
                Sigma if k >= 2 => Some(k - 1),
                A | B if g >= 1 => Some(g),
                Zeta if n >= 1 => Some(n),
                _ => None,
            },
            GroupContext::MixedB { k, n, g } => match kind {
                Sigma if k >= 2 => Some(k - 1),
                SigmaTilde if n >= 2 => Some(n - 1),
                A | B | ATilde | BTilde => Some(g),
                Zeta => Some(n),
                _ => None,
            },
            GroupContext::FreeF { n } => match kind {
                X => Some(n),
                _ => None,
            },
            GroupContext::Class2Quot { family, g } => match (family, kind) {
                (_, Sigma) => Some(1),
                (QuotFamily::Hg, SigmaTilde) => Some(1),
                (QuotFamily::Hg | QuotFamily::Kg, Zeta) => Some(1),
                (_, A | B) => Some(g),
                (QuotFamily::Hg, ATilde | BTilde) => Some(g),
                _ => None,
            },
        }
    }

    pub fn allows(&self, gen: Generator) -> bool {
        self.index_range(gen.kind)
            .is_some_and(|max| gen.index >= 1 && gen.index <= max)
    }

    /// All generators of this context in a stable order.
    pub fn generators(&self) -> Vec<Generator> {
        use GenKind::*;
        let kinds: &[GenKind] = match self {
            GroupContext::ArtinB { .. } => &[Sigma],
            GroupContext::SurfaceB { .. } => &[A, B, Sigma],
            GroupContext::FiberB { .. } => &[Sigma, A, B, Zeta],
            GroupContext::MixedB { .. } => &[Sigma, SigmaTilde, A, B, ATilde, BTilde, Zeta],
            GroupContext::FreeF { .. } => &[X],
            GroupContext::Class2Quot { .. } => &[Sigma, SigmaTilde, Zeta, A, B, ATilde, BTilde],
        };
        let mut out = Vec::new();
        for &kind in kinds {
            if let Some(max) = self.index_range(kind) {
                for index in 1..=max {
                    out.push(Generator { kind, index });
                }
            }
        }
        out
    }

    /// Class-2 quotient contexts print central letters without an index.
    fn index_free(&self, kind: GenKind) -> bool {
        matches!(self, GroupContext::Class2Quot { .. })
            && matches!(kind, GenKind::Sigma | GenKind::SigmaTilde | GenKind::Zeta)
    }
}

impl fmt::Display for GroupContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GroupContext::ArtinB { n } => write!(f, "ArtinB({n})"),
            GroupContext::SurfaceB { g, n } => write!(f, "SurfaceB({g},{n})"),
            GroupContext::FiberB { k, g, n } => write!(f, "FiberB({k},{g},{n})"),
            GroupContext::MixedB { k, n, g } => write!(f, "MixedB({k},{n},{g})"),
            GroupContext::FreeF { n } => write!(f, "FreeF({n})"),
            GroupContext::Class2Quot { family, g } => write!(f, "{family}({g})"),
        }
    }
}

/// Letter kinds of the full alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GenKind {
    Sigma,
    A,
    B,
    Zeta,
    SigmaTilde,
    ATilde,
    BTilde,
    X,
}

impl GenKind {
    pub fn symbol(&self) -> char {
        match self {
            GenKind::Sigma => 's',
            GenKind::A => 'a',
            GenKind::B => 'b',
            GenKind::Zeta => 'z',
            GenKind::SigmaTilde => 'S',
            GenKind::ATilde => 'A',
            GenKind::BTilde => 'B',
            GenKind::X => 'x',
        }
    }

    pub fn from_symbol(c: char) -> Option<GenKind> {
        match c {
            's' => Some(GenKind::Sigma),
            'a' => Some(GenKind::A),
            'b' => Some(GenKind::B),
            'z' => Some(GenKind::Zeta),
            'S' => Some(GenKind::SigmaTilde),
            'A' => Some(GenKind::ATilde),
            'B' => Some(GenKind::BTilde),
            'x' => Some(GenKind::X),
            _ => None,
        }
    }
}

/// A generator symbol: kind plus 1-based index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub kind: GenKind,
    pub index: usize,
}

impl Generator {
    pub fn new(kind: GenKind, index: usize) -> Generator {
        Generator { kind, index }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.symbol(), self.index)
    }
}

/// A generator with a sign: one letter of a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub gen: Generator,
    /// +1 or -1.
    pub exp: i8,
}

impl Letter {
    pub fn new(gen: Generator, exp: i8) -> Letter {
        debug_assert!(exp == 1 || exp == -1);
        Letter { gen, exp }
    }

    pub fn inverse(&self) -> Letter {
        Letter { gen: self.gen, exp: -self.exp }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp < 0 {
            write!(f, "{}^-1", self.gen)
        } else {
            write!(f, "{}", self.gen)
        }
    }
}

/// A freely reduced word over a context's alphabet. The empty word is the
/// identity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Word {
    context: GroupContext,
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity(context: GroupContext) -> Word {
        Word { context, letters: Vec::new() }
    }

    /// Builds a word from raw letters, validating against the context and
    /// freely reducing.
    pub fn from_letters(context: GroupContext, letters: Vec<Letter>) -> Result<Word, Error> {
        for l in &letters {
            if !context.allows(l.gen) {
                return Err(Error::LetterOutOfContext {
                    letter: l.gen.to_string(),
                    context: context.to_string(),
                });
            }
        }
        Ok(Word { context, letters: free_reduce(letters) })
    }

    pub fn generator(context: GroupContext, gen: Generator) -> Result<Word, Error> {
        Word::from_letters(context, vec![Letter::new(gen, 1)])
    }

    pub fn context(&self) -> GroupContext {
        self.context
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Group multiplication: freely reduced concatenation.
    pub fn concat(&self, other: &Word) -> Result<Word, Error> {
        if self.context != other.context {
            return Err(Error::ContextMismatch {
                left: self.context.to_string(),
                right: other.context.to_string(),
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Word { context: self.context, letters: free_reduce(letters) })
    }

    pub fn inverse(&self) -> Word {
        let letters = self.letters.iter().rev().map(Letter::inverse).collect();
        // Reversing a reduced word keeps it reduced.
        Word { context: self.context, letters }
    }

    /// `[x, y] = x y x^-1 y^-1`.
    pub fn commutator(&self, other: &Word) -> Result<Word, Error> {
        self.concat(other)?
            .concat(&self.inverse())?
            .concat(&other.inverse())
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e >= 0 { self.clone() } else { self.inverse() };
        let mut out = Word::identity(self.context);
        for _ in 0..e.unsigned_abs() {
            out = out.concat(&base).expect("same context");
        }
        out
    }

    /// Relabels the word into another context with the same letter kinds.
    pub fn into_context(&self, context: GroupContext) -> Result<Word, Error> {
        Word::from_letters(context, self.letters.clone())
    }

    /// Net exponent of a generator (abelianized coefficient).
    pub fn exponent_sum(&self, gen: Generator) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.gen == gen)
            .map(|l| l.exp as i64)
            .sum()
    }
}

/// Cancels adjacent inverse pairs until none remain.
pub fn free_reduce(letters: Vec<Letter>) -> Vec<Letter> {
    let mut stack: Vec<Letter> = Vec::with_capacity(letters.len());
    for l in letters {
        match stack.last() {
            Some(top) if top.gen == l.gen && top.exp == -l.exp => {
                stack.pop();
            }
            _ => stack.push(l),
        }
    }
    stack
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1usize;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            if !first {
                write!(f, " * ")?;
            }
            first = false;
            if self.context.index_free(l.gen.kind) {
                write!(f, "{}", l.gen.kind.symbol())?;
            } else {
                write!(f, "{}", l.gen)?;
            }
            let e = l.exp as i64 * run as i64;
            if e != 1 {
                write!(f, "^{e}")?;
            }
            i += run;
        }
        Ok(())
    }
}

const MAX_EXPONENT: i64 = 1 << 20;

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
    context: GroupContext,
}

impl<'a> Parser<'a> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax { offset: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_whitespace() || self.bytes[self.pos] == b'*')
        {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn parse_int(&mut self) -> Result<i64, Error> {
        let start = self.pos;
        if self.peek() == Some(b'-') || self.peek() == Some(b'+') {
            self.pos += 1;
        }
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start || !self.bytes[start..self.pos].iter().any(u8::is_ascii_digit) {
            return Err(self.error("expected integer"));
        }
        self.text[start..self.pos]
            .parse::<i64>()
            .map_err(|_| self.error("integer out of range"))
    }

    fn parse_exponent(&mut self) -> Result<i64, Error> {
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.parse_int()?;
            if e.unsigned_abs() > MAX_EXPONENT as u64 {
                return Err(self.error("exponent too large"));
            }
            Ok(e)
        } else {
            Ok(1)
        }
    }

    /// expr := factor*
    fn parse_expr(&mut self, terminators: &[u8]) -> Result<Word, Error> {
        let mut acc = Word::identity(self.context);
        loop {
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(c) if terminators.contains(&c) => break,
                _ => {}
            }
            let f = self.parse_factor()?;
            acc = acc.concat(&f)?;
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<Word, Error> {
        let c = self.peek().ok_or_else(|| self.error("unexpected end of input"))?;
        let base = match c {
            b'(' => {
                self.pos += 1;
                let inner = self.parse_expr(&[b')'])?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                inner
            }
            b'[' => {
                self.pos += 1;
                let left = self.parse_expr(&[b',', b']'])?;
                if self.peek() != Some(b',') {
                    return Err(self.error("expected ',' in commutator"));
                }
                self.pos += 1;
                let right = self.parse_expr(&[b']'])?;
                if self.peek() != Some(b']') {
                    return Err(self.error("expected ']'"));
                }
                self.pos += 1;
                left.commutator(&right)?
            }
            b'1' => {
                self.pos += 1;
                Word::identity(self.context)
            }
            _ => self.parse_letter()?,
        };
        let e = self.parse_exponent()?;
        Ok(base.pow(e))
    }

    fn parse_letter(&mut self) -> Result<Word, Error> {
        let offset = self.pos;
        let c = self.peek().ok_or_else(|| self.error("unexpected end of input"))? as char;
        let kind = GenKind::from_symbol(c)
            .ok_or_else(|| Error::Syntax { offset, message: format!("unknown letter '{c}'") })?;
        self.pos += 1;
        let has_digits = self.peek().is_some_and(|b| b.is_ascii_digit());
        let index = if has_digits {
            let start = self.pos;
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            self.text[start..self.pos]
                .parse::<usize>()
                .map_err(|_| self.error("index out of range"))?
        } else if self.context.index_free(kind) {
            1
        } else {
            return Err(Error::Syntax { offset, message: format!("letter '{c}' needs an index") });
        };
        let gen = Generator::new(kind, index);
        if self.context.index_range(kind).is_none() {
            return Err(Error::Syntax {
                offset,
                message: format!("letter kind '{c}' not available in {}", self.context),
            });
        }
        if !self.context.allows(gen) {
            return Err(Error::Syntax {
                offset,
                message: format!("index {index} out of range for '{c}' in {}", self.context),
            });
        }
        Word::generator(self.context, gen)
    }
}

/// Parses the ASCII word grammar: letters `s1 a2 b1 z3 S1 A1 B2 x1`,
/// exponent suffix `^e`, separators `*` or whitespace, commutator sugar
/// `[u,v]`, parentheses, and `1` or the empty string for the identity.
pub fn parse_word(text: &str, context: GroupContext) -> Result<Word, Error> {
    context.validate()?;
    let mut p = Parser { text, bytes: text.as_bytes(), pos: 0, context };
    let w = p.parse_expr(&[])?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.error("trailing input"));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surface13() -> GroupContext {
        GroupContext::SurfaceB { g: 1, n: 3 }
    }

    fn lw(ctx: GroupContext, spec: &[(GenKind, usize, i8)]) -> Word {
        let letters = spec
            .iter()
            .map(|&(k, i, e)| Letter::new(Generator::new(k, i), e))
            .collect();
        Word::from_letters(ctx, letters).unwrap()
    }

    #[test]
    fn empty_input_is_identity() {
        let w = parse_word("", surface13()).unwrap();
        assert!(w.is_identity());
        let w = parse_word("1", surface13()).unwrap();
        assert!(w.is_identity());
    }

    #[test]
    fn parses_commutator_word() {
        let w = parse_word("a1 * b1 * a1^-1 * b1^-1", surface13()).unwrap();
        assert_eq!(w.len(), 4);
        let c = parse_word("[a1,b1]", surface13()).unwrap();
        assert_eq!(w, c);
    }

    #[test]
    fn free_reduction_on_parse() {
        let ctx = GroupContext::FiberB { k: 3, g: 1, n: 2 };
        let w = parse_word("s1 * s1^-1 * z2", ctx).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w.letters()[0].gen, Generator::new(GenKind::Zeta, 2));
    }

    #[test]
    fn concat_cancels() {
        let ctx = surface13();
        let a = parse_word("a1", ctx).unwrap();
        let ainv = parse_word("a1^-1", ctx).unwrap();
        assert!(a.concat(&ainv).unwrap().is_identity());

        let u = parse_word("s1*s2", ctx).unwrap();
        let v = parse_word("s2^-1", ctx).unwrap();
        assert_eq!(u.concat(&v).unwrap(), parse_word("s1", ctx).unwrap());

        let ab = parse_word("a1*b1", ctx).unwrap();
        assert_eq!(ab.concat(&ab).unwrap().len(), 4);
    }

    #[test]
    fn inverse_is_antihomomorphism() {
        let ctx = surface13();
        let w = parse_word("a1*b1", ctx).unwrap();
        assert_eq!(w.inverse(), parse_word("b1^-1*a1^-1", ctx).unwrap());
        assert!(w.concat(&w.inverse()).unwrap().is_identity());
        assert_eq!(w.inverse().inverse(), w);

        let ctx = GroupContext::FiberB { k: 2, g: 0, n: 3 };
        let w = parse_word("s1^-1 * z3 * s1", ctx).unwrap();
        assert_eq!(w.inverse(), parse_word("s1^-1 * z3^-1 * s1", ctx).unwrap());
    }

    #[test]
    fn commutator_examples() {
        let ctx = surface13();
        let w = parse_word("a1*s1", ctx).unwrap();
        assert!(w.commutator(&Word::identity(ctx)).unwrap().is_identity());

        let a = parse_word("a1", ctx).unwrap();
        let b = parse_word("b1", ctx).unwrap();
        assert_eq!(
            a.commutator(&b).unwrap(),
            parse_word("a1*b1*a1^-1*b1^-1", ctx).unwrap()
        );

        // Free-word semantics: distant sigmas do not simplify.
        let ctx = GroupContext::ArtinB { n: 4 };
        let s1 = parse_word("s1", ctx).unwrap();
        let s3 = parse_word("s3", ctx).unwrap();
        assert_eq!(s1.commutator(&s3).unwrap().len(), 4);
    }

    #[test]
    fn context_mismatch_rejected() {
        let u = parse_word("s1", GroupContext::ArtinB { n: 3 }).unwrap();
        let v = parse_word("s1", surface13()).unwrap();
        assert!(u.concat(&v).is_err());
    }

    #[test]
    fn out_of_range_index_rejected() {
        assert!(parse_word("s5", GroupContext::ArtinB { n: 3 }).is_err());
        assert!(parse_word("z1", GroupContext::ArtinB { n: 3 }).is_err());
        assert!(parse_word("a2", surface13()).is_err());
    }

    #[test]
    fn syntax_error_carries_offset() {
        match parse_word("s1 * ?", surface13()) {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 5),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn class2_letters_index_free() {
        let ctx = GroupContext::Class2Quot { family: QuotFamily::Kg, g: 1 };
        let w = parse_word("s^-2 * a1 * z", ctx).unwrap();
        assert_eq!(w.to_string(), "s^-2 * a1 * z");
        assert_eq!(parse_word(&w.to_string(), ctx).unwrap(), w);
    }

    #[test]
    fn print_parse_round_trip() {
        let ctx = GroupContext::MixedB { k: 3, n: 3, g: 2 };
        let w = lw(
            ctx,
            &[
                (GenKind::Sigma, 1, 1),
                (GenKind::Sigma, 1, 1),
                (GenKind::ATilde, 2, -1),
                (GenKind::Zeta, 3, 1),
                (GenKind::BTilde, 1, 1),
            ],
        );
        assert_eq!(parse_word(&w.to_string(), ctx).unwrap(), w);
    }

    /// Leftmost-only reduction oracle: repeatedly cancel the first adjacent
    /// inverse pair found, from scratch each time.
    fn leftmost_reduce(mut letters: Vec<Letter>) -> Vec<Letter> {
        loop {
            let mut cancelled = false;
            for i in 0..letters.len().saturating_sub(1) {
                if letters[i].gen == letters[i + 1].gen && letters[i].exp == -letters[i + 1].exp {
                    letters.drain(i..i + 2);
                    cancelled = true;
                    break;
                }
            }
            if !cancelled {
                return letters;
            }
        }
    }

    #[test]
    fn reduction_confluent_against_leftmost_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
        let ctx = GroupContext::MixedB { k: 3, n: 3, g: 2 };
        let gens = ctx.generators();
        for _ in 0..10_000 {
            let len = rng.gen_range(0..=100);
            let letters: Vec<Letter> = (0..len)
                .map(|_| {
                    let g = gens[rng.gen_range(0..gens.len())];
                    Letter::new(g, if rng.gen_bool(0.5) { 1 } else { -1 })
                })
                .collect();
            assert_eq!(free_reduce(letters.clone()), leftmost_reduce(letters));
        }
    }

    #[test]
    fn concat_is_associative() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let ctx = GroupContext::SurfaceB { g: 2, n: 3 };
        let gens = ctx.generators();
        let random_word = |rng: &mut rand_chacha::ChaCha8Rng| {
            let len = rng.gen_range(0..=20);
            let letters = (0..len)
                .map(|_| {
                    let g = gens[rng.gen_range(0..gens.len())];
                    Letter::new(g, if rng.gen_bool(0.5) { 1 } else { -1 })
                })
                .collect();
            Word::from_letters(ctx, letters).unwrap()
        };
        for _ in 0..500 {
            let u = random_word(&mut rng);
            let v = random_word(&mut rng);
            let w = random_word(&mut rng);
            assert_eq!(
                u.concat(&v).unwrap().concat(&w).unwrap(),
                u.concat(&v.concat(&w).unwrap()).unwrap()
            );
        }
    }
}
