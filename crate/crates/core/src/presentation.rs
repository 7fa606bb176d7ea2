//! Finite group presentations and their Fox complexes over F[ℤⁿ].
//!
//! Text form: `<a, b | a b A B, ...>` where an uppercase letter is the
//! inverse of its lowercase generator, optionally followed by lines
//! `a -> 1 0` giving the image of each generator in ℤⁿ. Without such lines
//! the map is the free part of the abelianization.

use std::fmt;

use thiserror::Error;

use crate::homology::{FreeChainComplex, HomologyError, LaurentComplex};
use crate::lattice;
use crate::laurent::{LaurentPoly, Monomial};
use crate::ring::Matrix;
use crate::scalar::FieldSpec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("relator {relator} maps to {image:?} instead of 0")]
    InconsistentAbelianization { relator: usize, image: Vec<i64> },
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

/// A letter `x_i^{±1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Vec<Letter>>,
    alpha: Vec<Vec<i64>>,
}

impl Presentation {
    /// Checks that every relator maps to 0 under `alpha`.
    pub fn new(generators: Vec<String>, relators: Vec<Vec<Letter>>, alpha: Vec<Vec<i64>>) -> Result<Self, PresentationError> {
        let syntax = |message: String| PresentationError::Syntax {
            line: 1,
            column: 1,
            message,
        };
        if alpha.len() != generators.len() {
            return Err(syntax(format!("{} images for {} generators", alpha.len(), generators.len())));
        }
        let n = alpha.first().map_or(0, Vec::len);
        if alpha.iter().any(|a| a.len() != n) {
            return Err(syntax("images of different ranks".into()));
        }
        for w in &relators {
            if let Some(l) = w.iter().find(|l| l.generator >= generators.len()) {
                return Err(syntax(format!("unknown generator index {}", l.generator)));
            }
        }
        let p = Presentation {
            generators,
            relators,
            alpha,
        };
        for (r, w) in p.relators.iter().enumerate() {
            let image = p.image(w);
            if image.iter().any(|&x| x != 0) {
                return Err(PresentationError::InconsistentAbelianization { relator: r, image });
            }
        }
        Ok(p)
    }

    /// `alpha` defaults to the free abelianization.
    pub fn with_default_alpha(generators: Vec<String>, relators: Vec<Vec<Letter>>) -> Result<Self, PresentationError> {
        let alpha = free_abelianization(generators.len(), &relators);
        Self::new(generators, relators, alpha)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Vec<Letter>] {
        &self.relators
    }

    pub fn alpha(&self) -> &[Vec<i64>] {
        &self.alpha
    }

    /// `n`, the rank of the target lattice.
    pub fn rank(&self) -> usize {
        self.alpha.first().map_or(0, Vec::len)
    }

    pub fn image(&self, w: &[Letter]) -> Vec<i64> {
        let mut out = vec![0; self.rank()];
        for l in w {
            let s = if l.inverse { -1 } else { 1 };
            for (o, a) in out.iter_mut().zip(&self.alpha[l.generator]) {
                *o += s * a;
            }
        }
        out
    }

    /// `α(∂w/∂x_i)` with `∂(uv)/∂x = ∂u/∂x + u·∂v/∂x`.
    pub fn fox_derivative(&self, w: &[Letter], i: usize, field: FieldSpec) -> LaurentPoly {
        let n = self.rank();
        let mut out = LaurentPoly::zero(n, field);
        let mut prefix = vec![0i64; n];
        for l in w {
            let a = &self.alpha[l.generator];
            if l.generator == i {
                if l.inverse {
                    // ∂x⁻¹/∂x = −x⁻¹
                    let e: Vec<i64> = prefix.iter().zip(a).map(|(p, x)| p - x).collect();
                    out.add_term(Monomial(e), field.from_i64(-1));
                } else {
                    out.add_term(Monomial(prefix.clone()), field.one());
                }
            }
            let s = if l.inverse { -1 } else { 1 };
            for (p, x) in prefix.iter_mut().zip(a) {
                *p += s * x;
            }
        }
        out
    }

    /// `C_2 → C_1 → C_0` with `A_1 = [α(x_i) − 1]` (one row) and
    /// `A_2[i][j] = α(∂r_j/∂x_i)`. Without relators the complex stops at `C_1`.
    pub fn fox_complex(&self, field: FieldSpec) -> Result<LaurentComplex, PresentationError> {
        let n = self.rank();
        let g = self.generators.len();
        let proto = LaurentPoly::zero(n, field);
        let a1_row: Vec<LaurentPoly> = self
            .alpha
            .iter()
            .map(|a| {
                let mut p = LaurentPoly::monomial(Monomial(a.clone()), field.one());
                p.add_term(Monomial::zero(n), field.from_i64(-1));
                p
            })
            .collect();
        let a1 = Matrix::from_rows(1, g, vec![a1_row], &proto).expect("one row of g entries");
        if self.relators.is_empty() {
            return Ok(FreeChainComplex::new(&proto, vec![1, g], vec![a1])?);
        }
        let r = self.relators.len();
        let data: Vec<Vec<LaurentPoly>> = (0..g)
            .map(|i| self.relators.iter().map(|w| self.fox_derivative(w, i, field)).collect())
            .collect();
        let a2 = Matrix::from_rows(g, r, data, &proto).expect("g×r Jacobian");
        Ok(FreeChainComplex::new(&proto, vec![1, g, r], vec![a1, a2])?)
    }

    /// Parses the text form described in the module documentation.
    pub fn parse(text: &str) -> Result<Self, PresentationError> {
        let err = |line: usize, column: usize, message: &str| PresentationError::Syntax {
            line,
            column,
            message: message.to_string(),
        };
        let open = text.find('<').ok_or_else(|| err(1, 1, "expected `<`"))?;
        let close = text.find('>').ok_or_else(|| err(1, 1, "expected `>`"))?;
        if close < open {
            let (l, c) = position(text, close);
            return Err(err(l, c, "`>` before `<`"));
        }
        let body = &text[open + 1..close];
        let bar = body.find('|').ok_or_else(|| {
            let (l, c) = position(text, close);
            err(l, c, "expected `|` between generators and relators")
        })?;
        let mut generators = Vec::new();
        for (tok, at) in tokens(&body[..bar], open + 1, ',') {
            if tok.split_whitespace().count() != 1 {
                let (l, c) = position(text, at);
                return Err(err(l, c, "generator names must be single words"));
            }
            let name = tok.trim().to_string();
            if name.chars().any(|ch| !ch.is_alphanumeric()) || !name.starts_with(|ch: char| ch.is_lowercase()) {
                let (l, c) = position(text, at);
                return Err(err(l, c, "generator names must be lowercase alphanumeric"));
            }
            if generators.contains(&name) {
                let (l, c) = position(text, at);
                return Err(err(l, c, "duplicate generator"));
            }
            generators.push(name);
        }
        let mut relators = Vec::new();
        for (tok, at) in tokens(&body[bar + 1..], open + 1 + bar + 1, ',') {
            let mut word = Vec::new();
            let mut offset = 0;
            for piece in tok.split_whitespace() {
                let rel = tok[offset..].find(piece).unwrap() + offset;
                offset = rel + piece.len();
                let lower = piece.to_lowercase();
                let Some(gi) = generators.iter().position(|g| *g == lower) else {
                    let (l, c) = position(text, at + rel);
                    return Err(err(l, c, &format!("unknown letter `{piece}`")));
                };
                let inverse = piece != lower;
                if inverse && piece != uppercase_first(&lower) && piece != lower.to_uppercase() {
                    let (l, c) = position(text, at + rel);
                    return Err(err(l, c, &format!("ambiguous letter `{piece}`")));
                }
                word.push(Letter { generator: gi, inverse });
            }
            relators.push(word);
        }
        let mut alpha: Vec<Option<Vec<i64>>> = vec![None; generators.len()];
        let mut any = false;
        let after = close + 1;
        let mut line_start = after;
        for line in text[after..].split('\n') {
            let trimmed = line.trim();
            let here = line_start;
            line_start += line.len() + 1;
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (l, c) = position(text, here + (line.len() - line.trim_start().len()));
            let (lhs, rhs) = trimmed.split_once("->").ok_or_else(|| err(l, c, "expected `generator -> exponents`"))?;
            let gi = generators
                .iter()
                .position(|g| g == lhs.trim())
                .ok_or_else(|| err(l, c, &format!("unknown generator `{}`", lhs.trim())))?;
            let exps: Result<Vec<i64>, _> = rhs.split_whitespace().map(str::parse::<i64>).collect();
            let exps = exps.map_err(|_| err(l, c, "exponents must be integers"))?;
            if alpha[gi].is_some() {
                return Err(err(l, c, "image given twice"));
            }
            alpha[gi] = Some(exps);
            any = true;
        }
        if !any {
            return Self::with_default_alpha(generators, relators);
        }
        let alpha: Option<Vec<Vec<i64>>> = alpha.into_iter().collect();
        let alpha = alpha.ok_or_else(|| err(1, 1, "every generator needs an image"))?;
        Self::new(generators, relators, alpha)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} |", self.generators.join(", "))?;
        let words: Vec<String> = self
            .relators
            .iter()
            .map(|w| {
                w.iter()
                    .map(|l| {
                        let g = &self.generators[l.generator];
                        if l.inverse {
                            uppercase_first(g)
                        } else {
                            g.clone()
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        if !words.is_empty() {
            write!(f, " {}", words.join(", "))?;
        }
        writeln!(f, ">")?;
        for (g, a) in self.generators.iter().zip(&self.alpha) {
            let e: Vec<String> = a.iter().map(i64::to_string).collect();
            writeln!(f, "{g} -> {}", e.join(" "))?;
        }
        Ok(())
    }
}

fn uppercase_first(s: &str) -> String {
    let mut c = s.chars();
    match c.next() {
        Some(first) => first.to_uppercase().chain(c).collect(),
        None => String::new(),
    }
}

// nonempty comma-separated pieces with their byte offsets
fn tokens(s: &str, base: usize, sep: char) -> Vec<(&str, usize)> {
    let mut out = Vec::new();
    let mut start = 0;
    for piece in s.split(sep) {
        let lead = piece.len() - piece.trim_start().len();
        if !piece.trim().is_empty() {
            out.push((piece.trim_start(), base + start + lead));
        }
        start += piece.len() + 1;
    }
    out
}

fn position(text: &str, byte: usize) -> (usize, usize) {
    let before = &text[..byte.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

/// `ℤ^g → ℤ^r` with kernel the saturation of the relators' exponent sums.
pub fn free_abelianization(g: usize, relators: &[Vec<Letter>]) -> Vec<Vec<i64>> {
    let rows: Vec<Vec<i64>> = relators
        .iter()
        .map(|w| {
            let mut v = vec![0; g];
            for l in w {
                v[l.generator] += if l.inverse { -1 } else { 1 };
            }
            v
        })
        .collect();
    let kernel = lattice::integer_kernel(&rows, g);
    (0..g).map(|i| kernel.iter().map(|k| k[i]).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str, f: FieldSpec) -> LaurentPoly {
        LaurentPoly::parse(s, &["t"], f).unwrap()
    }

    #[test]
    fn parse_and_print() {
        let p = Presentation::parse("<a, b | a b A B>\na -> 1 0\nb -> 0 1\n").unwrap();
        assert_eq!(p.rank(), 2);
        assert_eq!(Presentation::parse(&p.to_string()).unwrap(), p);
        let free = Presentation::parse("<a, b | >\na -> 1\nb -> 0").unwrap();
        assert!(free.relators().is_empty());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match Presentation::parse("<a, b | a c>") {
            Err(PresentationError::Syntax { line: 1, column: 11, .. }) => {}
            other => panic!("{other:?}"),
        }
        match Presentation::parse("<a | a>\na -> 1") {
            Err(PresentationError::InconsistentAbelianization { relator: 0, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            Presentation::parse("<a, b | a b>\n\na 1"),
            Err(PresentationError::Syntax { line: 3, column: 1, .. })
        ));
    }

    #[test]
    fn torus_complex() {
        let q = FieldSpec::Rationals;
        let p = Presentation::parse("<a, b | a b A B>").unwrap();
        let c = p.fox_complex(q).unwrap();
        let v = |s: &str| LaurentPoly::parse(s, &["t", "s"], q).unwrap();
        assert_eq!(c.diff(1).row(0), &[v("t-1"), v("s-1")]);
        assert_eq!(c.diff(2).data(), &[vec![v("1-s")], vec![v("t-1")]]);
    }

    #[test]
    fn knot_jacobians() {
        // values from an independent symbolic Fox-calculus computation
        let q = FieldSpec::Rationals;
        let trefoil = Presentation::parse("<a, b | a b a B A B>").unwrap();
        assert_eq!(trefoil.alpha(), &[vec![1], vec![1]]);
        let c = trefoil.fox_complex(q).unwrap();
        assert_eq!(c.diff(2).data(), &[vec![t("t^2-t+1", q)], vec![t("-t^2+t-1", q)]]);
        let eight = Presentation::parse("<a, b | A b a B a b A B a B>").unwrap();
        let c = eight.fox_complex(q).unwrap();
        assert_eq!(c.diff(2).data(), &[vec![t("-t+3-t^-1", q)], vec![t("t-3+t^-1", q)]]);
    }

    #[test]
    fn free_group_with_killed_generator() {
        let p = Presentation::parse("<a, b | >\na -> 1\nb -> 0").unwrap();
        let c = p.fox_complex(FieldSpec::Rationals).unwrap();
        assert_eq!(c.ranks(), &[1, 2]);
        assert!(c.diff(1).get(0, 1).is_zero());
    }
}
