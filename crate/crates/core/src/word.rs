//! Reduced words in the free group `F_k` of finite rank `k`.
//!
//! Text syntax: lowercase letters `a..z` are the generators `1..26`, the
//! corresponding uppercase letters their inverses. `1` (or the empty string)
//! is the identity. Every constructor returns a freely reduced word.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub const MAX_TEXT_RANK: usize = 26;

/// A generator (`inverted == false`) or its inverse. Generators are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inverted: bool,
}

impl Letter {
    pub const fn new(gen: usize, inverted: bool) -> Self {
        Letter { gen, inverted }
    }

    pub const fn gen(gen: usize) -> Self {
        Letter::new(gen, false)
    }

    pub const fn inv(gen: usize) -> Self {
        Letter::new(gen, true)
    }

    pub const fn inverse(self) -> Self {
        Letter::new(self.gen, !self.inverted)
    }

    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inverted != other.inverted
    }

    pub fn to_char(self) -> char {
        debug_assert!((1..=MAX_TEXT_RANK).contains(&self.gen));
        let base = if self.inverted { b'A' } else { b'a' };
        (base + (self.gen - 1) as u8) as char
    }

    /// Exponent contribution: `+1` for a generator, `-1` for an inverse.
    pub fn sign(self) -> i64 {
        if self.inverted {
            -1
        } else {
            1
        }
    }
}

/// A freely reduced word over a free group of declared rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    rank: usize,
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity(rank: usize) -> Self {
        Word {
            rank,
            letters: Vec::new(),
        }
    }

    /// The `gen`-th basis element (1-based).
    pub fn generator(rank: usize, gen: usize) -> Result<Self> {
        Word::reduce([Letter::gen(gen)], rank)
    }

    /// Freely reduces `letters` with a single left-to-right stack pass.
    pub fn reduce<I>(letters: I, rank: usize) -> Result<Self>
    where
        I: IntoIterator<Item = Letter>,
    {
        let mut stack: Vec<Letter> = Vec::new();
        for letter in letters {
            if letter.gen == 0 || letter.gen > rank {
                return Err(Error::GeneratorOutOfRange {
                    gen: letter.gen,
                    rank,
                });
            }
            push_reduced(&mut stack, letter);
        }
        Ok(Word {
            rank,
            letters: stack,
        })
    }

    pub fn parse(text: &str, rank: usize) -> Result<Self> {
        if rank > MAX_TEXT_RANK {
            return Err(Error::RankTooLarge(rank));
        }
        let trimmed: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if trimmed == "1" {
            return Ok(Word::identity(rank));
        }
        let mut letters = Vec::with_capacity(trimmed.len());
        for c in trimmed.chars() {
            let letter = match c {
                'a'..='z' => Letter::gen((c as u8 - b'a') as usize + 1),
                'A'..='Z' => Letter::inv((c as u8 - b'A') as usize + 1),
                other => return Err(Error::InvalidCharacter(other)),
            };
            if letter.gen > rank {
                return Err(Error::LetterOutOfRange { letter: c, rank });
            }
            letters.push(letter);
        }
        Word::reduce(letters, rank)
    }

    pub fn rank(&self) -> usize {
        self.rank
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

    fn check_rank(&self, other: &Word) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        Ok(())
    }

    pub fn multiply(&self, other: &Word) -> Result<Word> {
        self.check_rank(other)?;
        let mut letters = self.letters.clone();
        for &letter in &other.letters {
            push_reduced(&mut letters, letter);
        }
        Ok(Word {
            rank: self.rank,
            letters,
        })
    }

    pub fn inverse(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// `u v u⁻¹ v⁻¹`.
    pub fn commutator(&self, other: &Word) -> Result<Word> {
        self.multiply(other)?
            .multiply(&self.inverse())?
            .multiply(&other.inverse())
    }

    /// `self^exponent` for any integer exponent.
    pub fn pow(&self, exponent: i64) -> Word {
        let base = if exponent < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut out = Word::identity(self.rank);
        for _ in 0..exponent.unsigned_abs() {
            out = out.multiply(&base).expect("same rank");
        }
        out
    }

    /// Exponent-sum vector: the image in the abelianization `ℤ^k`.
    pub fn abelianize(&self) -> AbelianVector {
        let mut coords = vec![0i64; self.rank];
        for letter in &self.letters {
            coords[letter.gen - 1] += letter.sign();
        }
        AbelianVector { coords }
    }

    /// Membership in the commutator subgroup `[F_k, F_k]`, the kernel of
    /// abelianization.
    pub fn in_commutator_subgroup(&self) -> bool {
        self.abelianize().is_zero()
    }

    /// Strips matching first/last letters; the result is conjugate to `self`.
    pub fn cyclic_reduction(&self) -> Word {
        let mut lo = 0;
        let mut hi = self.letters.len();
        while hi >= lo + 2 && self.letters[lo].cancels(self.letters[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        Word {
            rank: self.rank,
            letters: self.letters[lo..hi].to_vec(),
        }
    }
}

fn push_reduced(stack: &mut Vec<Letter>, letter: Letter) {
    match stack.last() {
        Some(&top) if top.cancels(letter) => {
            stack.pop();
        }
        _ => stack.push(letter),
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for letter in &self.letters {
            if letter.gen <= MAX_TEXT_RANK {
                write!(f, "{}", letter.to_char())?;
            } else {
                let sign = if letter.inverted { "-" } else { "" };
                write!(f, "[x{}{}]", letter.gen, sign)?;
            }
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Exponent-sum vector of length `k`, an element of `ℤ^k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AbelianVector {
    pub coords: Vec<i64>,
}

impl AbelianVector {
    pub fn zero(rank: usize) -> Self {
        AbelianVector {
            coords: vec![0; rank],
        }
    }

    pub fn unit(rank: usize, gen: usize) -> Self {
        let mut v = AbelianVector::zero(rank);
        v.coords[gen - 1] = 1;
        v
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl Add for &AbelianVector {
    type Output = AbelianVector;

    fn add(self, rhs: &AbelianVector) -> AbelianVector {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch");
        AbelianVector {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &AbelianVector {
    type Output = AbelianVector;

    fn sub(self, rhs: &AbelianVector) -> AbelianVector {
        self + &(-rhs)
    }
}

impl Neg for &AbelianVector {
    type Output = AbelianVector;

    fn neg(self) -> AbelianVector {
        AbelianVector {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for AbelianVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A homomorphism `F_k → F_m`, the unique extension of a map on the basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    source_rank: usize,
    target_rank: usize,
    images: Vec<Word>,
}

impl Homomorphism {
    pub fn new(source_rank: usize, target_rank: usize, images: Vec<Word>) -> Result<Self> {
        if images.len() != source_rank {
            return Err(Error::RankMismatch {
                expected: source_rank,
                found: images.len(),
            });
        }
        if let Some(bad) = images.iter().find(|w| w.rank() != target_rank) {
            return Err(Error::RankMismatch {
                expected: target_rank,
                found: bad.rank(),
            });
        }
        Ok(Homomorphism {
            source_rank,
            target_rank,
            images,
        })
    }

    pub fn identity(rank: usize) -> Self {
        let images = (1..=rank)
            .map(|g| Word::generator(rank, g).expect("in range"))
            .collect();
        Homomorphism {
            source_rank: rank,
            target_rank: rank,
            images,
        }
    }

    pub fn source_rank(&self) -> usize {
        self.source_rank
    }

    pub fn target_rank(&self) -> usize {
        self.target_rank
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        if w.rank() != self.source_rank {
            return Err(Error::RankMismatch {
                expected: self.source_rank,
                found: w.rank(),
            });
        }
        let letters = w.letters().iter().flat_map(|letter| {
            let image = &self.images[letter.gen - 1];
            let seq: Vec<Letter> = if letter.inverted {
                image.inverse().letters
            } else {
                image.letters.clone()
            };
            seq
        });
        Word::reduce(letters, self.target_rank)
    }
}
