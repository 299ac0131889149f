use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::Fig8Error;

/// One of the three generators of the knot group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gen {
    G1,
    G2,
    G3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: Gen,
    pub inverse: bool,
}

/// A word in `g1, g2, g3` and their inverses, read left to right as a product.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    /// Parses tokens such as `g1`, `g3^-2`, `g2^3`, separated by spaces, `*`
    /// or `.`; `1` and the empty string are the identity.
    pub fn parse(s: &str) -> Result<Self, Fig8Error> {
        let mut letters = Vec::new();
        for tok in s
            .split(|c: char| c.is_whitespace() || c == '*' || c == '.')
            .filter(|t| !t.is_empty())
        {
            if tok == "1" {
                continue;
            }
            let bad = || Fig8Error::BadWord {
                token: tok.to_string(),
            };
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => (b, e.parse::<i64>().map_err(|_| bad())?),
                None => (tok, 1),
            };
            let gen = match base {
                "g1" | "G1" => Gen::G1,
                "g2" | "G2" => Gen::G2,
                "g3" | "G3" => Gen::G3,
                _ => return Err(bad()),
            };
            for _ in 0..exp.unsigned_abs() {
                letters.push(Letter {
                    gen,
                    inverse: exp < 0,
                });
            }
        }
        Ok(Word(letters))
    }

    pub fn inverse(&self) -> Self {
        Word(
            self.0
                .iter()
                .rev()
                .map(|l| Letter {
                    gen: l.gen,
                    inverse: !l.inverse,
                })
                .collect(),
        )
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut parts: Vec<String> = Vec::new();
        for l in &self.0 {
            let g = match l.gen {
                Gen::G1 => "g1",
                Gen::G2 => "g2",
                Gen::G3 => "g3",
            };
            parts.push(if l.inverse {
                alloc::format!("{g}^-1")
            } else {
                g.to_string()
            });
        }
        f.write_str(&parts.join(" "))
    }
}

fn w(s: &str) -> Word {
    Word::parse(s).expect("built-in word")
}

/// The presentation `⟨g1, g2, g3 | g2 = [g3, g1⁻¹], g1g2 = g2g3⟩` with its
/// peripheral words; `[x, y] = x y x⁻¹ y⁻¹`.
pub struct Presentation;

impl Presentation {
    /// `[g3, g1⁻¹]`, the word that defines `g2`.
    pub fn g2_definition() -> Word {
        w("g3 g1^-1 g3^-1 g1")
    }

    /// `g2⁻¹ [g3, g1⁻¹]`.
    pub fn r1() -> Word {
        w("g2^-1").concat(&Self::g2_definition())
    }

    /// `(g1 g2)⁻¹ (g2 g3)`.
    pub fn r2() -> Word {
        w("g2^-1 g1^-1 g2 g3")
    }

    pub fn m0() -> Word {
        w("g3")
    }

    pub fn l0() -> Word {
        w("g1^-1 g3 g1 g3^-2 g1 g3 g1^-1")
    }

    /// `m₁ = g2 g3 g2⁻¹`.
    pub fn m1() -> Word {
        w("g2 g3 g2^-1")
    }

    /// `l = m₀`.
    pub fn l() -> Word {
        Self::m0()
    }

    /// A word representing `m = 3m₀ − l₀`: `m₀³ l₀⁻¹`.
    pub fn m() -> Word {
        Self::m0().pow(3).concat(&Self::l0().inverse())
    }

    /// Twenty fixed words whose traces fingerprint a representation up to conjugacy.
    pub fn fingerprint_words() -> Vec<Word> {
        [
            "g1",
            "g3",
            "g2",
            "g1 g3",
            "g1^-1 g3",
            "g1 g3^-1",
            "g1 g1 g3",
            "g1 g3 g3",
            "g2 g3",
            "g1 g2",
            "g1 g2 g3",
            "g3 g2 g1",
            "g1^2 g3^2",
            "g1 g3 g1^-1 g3^-1",
            "g1^-1 g3^2 g1",
            "g2^-1 g3 g2 g1",
            "g1 g3 g1 g3 g1",
            "g3^-1 g1^2",
            "g2 g2 g3",
            "g1^-1 g3 g1 g3^-2 g1 g3 g1^-1",
        ]
        .iter()
        .map(|s| w(s))
        .collect()
    }
}
