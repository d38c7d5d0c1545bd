//! Words over a finite symmetric alphabet, free reduction, and Dehn
//! reduction for the standard one-relator surface presentations.
//!
//! A letter packs a generator index and a sign into a `u8`:
//! `index << 1 | sign`, sign 1 meaning the inverse. Lowercase text names
//! generators (`a`, `b`, ...), uppercase their inverses.

pub type Letter = u8;
pub type Word = Vec<Letter>;

#[inline]
pub fn letter(generator: usize, inverse: bool) -> Letter {
    ((generator as u8) << 1) | (inverse as u8)
}

#[inline]
pub fn inverse(l: Letter) -> Letter {
    l ^ 1
}

#[inline]
pub fn generator_of(l: Letter) -> usize {
    (l >> 1) as usize
}

/// Parse `"aBc"` into letters; only ASCII letters are accepted and the
/// generator index must stay below `rank`.
pub fn parse_word(text: &str, rank: usize) -> Result<Word, String> {
    let mut out = Word::with_capacity(text.len());
    for ch in text.chars() {
        if !ch.is_ascii_alphabetic() {
            return Err(format!("invalid character {ch:?} in generator word {text:?}"));
        }
        let inv = ch.is_ascii_uppercase();
        let idx = (ch.to_ascii_lowercase() as u8 - b'a') as usize;
        if idx >= rank {
            return Err(format!(
                "letter {ch:?} in {text:?} exceeds rank {rank} (use a..{})",
                (b'a' + rank as u8 - 1) as char
            ));
        }
        out.push(letter(idx, inv));
    }
    Ok(out)
}

pub fn format_word(w: &[Letter]) -> String {
    if w.is_empty() {
        return "1".to_owned();
    }
    w.iter()
        .map(|&l| {
            let c = (b'a' + (l >> 1)) as char;
            if l & 1 == 1 {
                c.to_ascii_uppercase()
            } else {
                c
            }
        })
        .collect()
}

/// Cancel adjacent inverse pairs until none remain.
pub fn free_reduce(w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last().is_some_and(|&last| last == inverse(l)) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn invert_word(w: &[Letter]) -> Word {
    w.iter().rev().map(|&l| inverse(l)).collect()
}

/// Reduced product `u * v`.
pub fn multiply(u: &[Letter], v: &[Letter]) -> Word {
    let mut w = u.to_vec();
    w.extend_from_slice(v);
    free_reduce(&w)
}

/// Shortlex comparison under the letter order `a < A < b < B < ...`
/// induced by the packed encoding.
pub fn shortlex_less(u: &[Letter], v: &[Letter]) -> bool {
    u.len() < v.len() || (u.len() == v.len() && u < v)
}

/// Rewriting data for the surface group of a given genus with the
/// standard presentation: one relator `[a1,b1][a2,b2]...` of length `4g`.
///
/// Geodesic representatives never contain more than half of a cyclic
/// rotation of the relator or its inverse; greedily replacing long
/// pieces by the inverted complement (and, for exact halves, taking the
/// shortlex-smaller side) drives any word to a canonical form.
pub struct DehnRewriter {
    half: usize,
    /// All cyclic rotations of the relator and its inverse.
    rotations: Vec<Word>,
}

impl DehnRewriter {
    pub fn surface(genus: usize) -> Self {
        assert!(genus >= 2, "hyperbolic surface presentations need genus >= 2");
        let mut relator: Word = Vec::with_capacity(4 * genus);
        for i in 0..genus {
            let a = letter(2 * i, false);
            let b = letter(2 * i + 1, false);
            relator.extend_from_slice(&[a, b, inverse(a), inverse(b)]);
        }
        let len = relator.len();
        let mut rotations = Vec::with_capacity(2 * len);
        let inv = invert_word(&relator);
        for base in [relator, inv] {
            for s in 0..len {
                let mut rot = base[s..].to_vec();
                rot.extend_from_slice(&base[..s]);
                rotations.push(rot);
            }
        }
        DehnRewriter {
            half: len / 2,
            rotations,
        }
    }

    pub fn generator_count(&self) -> usize {
        self.rotations[0].len() / 2
    }

    /// Canonical (shortlex-minimal) representative of the group element.
    pub fn canonical(&self, w: &[Letter]) -> Word {
        let relator_len = self.rotations[0].len();
        let mut cur = free_reduce(w);
        loop {
            // Strictly shortening step: a piece longer than half a relator.
            if let Some(next) = self.replace_piece(&cur, self.half + 1, relator_len) {
                cur = free_reduce(&next);
                continue;
            }
            // Length-preserving step: an exact half, taken only when the
            // outcome is shortlex-smaller. Termination: (length, word)
            // strictly decreases in shortlex order.
            let mut best: Option<Word> = None;
            for next in self.half_swaps(&cur) {
                let next = free_reduce(&next);
                if shortlex_less(&next, &cur)
                    && best.as_deref().is_none_or(|b| shortlex_less(&next, b))
                {
                    best = Some(next);
                }
            }
            match best {
                Some(b) => cur = b,
                None => return cur,
            }
        }
    }

    /// First replacement of a subword of length in `[min_len, max_len]`
    /// that matches an initial segment of some rotation, by the inverted
    /// complement of that rotation (longest match first).
    fn replace_piece(&self, w: &[Letter], min_len: usize, max_len: usize) -> Option<Word> {
        let top = max_len.min(w.len());
        for len in (min_len..=top).rev() {
            for start in 0..=(w.len() - len) {
                let piece = &w[start..start + len];
                for rot in &self.rotations {
                    if rot[..len] == *piece {
                        let complement = invert_word(&rot[len..]);
                        let mut next = w[..start].to_vec();
                        next.extend_from_slice(&complement);
                        next.extend_from_slice(&w[start + len..]);
                        return Some(next);
                    }
                }
            }
        }
        None
    }

    fn half_swaps<'a>(&'a self, w: &'a [Letter]) -> impl Iterator<Item = Word> + 'a {
        let len = self.half;
        (0..w.len().saturating_sub(len - 1)).flat_map(move |start| {
            let piece = &w[start..start + len];
            self.rotations.iter().filter_map(move |rot| {
                if rot[..len] == *piece {
                    let complement = invert_word(&rot[len..]);
                    let mut next = w[..start].to_vec();
                    next.extend_from_slice(&complement);
                    next.extend_from_slice(&w[start + len..]);
                    Some(next)
                } else {
                    None
                }
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        let w = parse_word("aBab", 2).unwrap();
        assert_eq!(format_word(&w), "aBab");
        assert!(parse_word("ax", 2).is_err());
        assert!(parse_word("a1", 2).is_err());
    }

    #[test]
    fn free_reduction_cancels() {
        let w = parse_word("abBA", 2).unwrap();
        assert!(free_reduce(&w).is_empty());
        let w = parse_word("abAB", 2).unwrap();
        assert_eq!(free_reduce(&w).len(), 4);
    }

    #[test]
    fn relator_reduces_to_identity() {
        let dehn = DehnRewriter::surface(2);
        let relator = parse_word("abABcdCD", 4).unwrap();
        assert!(dehn.canonical(&relator).is_empty());
        // A conjugate of the relator also dies.
        let conj = multiply(
            &parse_word("c", 4).unwrap(),
            &multiply(&relator, &parse_word("C", 4).unwrap()),
        );
        assert!(dehn.canonical(&conj).is_empty());
    }

    #[test]
    fn canonical_is_constant_on_group_elements() {
        // w and w * relator represent the same element.
        let dehn = DehnRewriter::surface(2);
        let relator = parse_word("abABcdCD", 4).unwrap();
        for text in ["a", "ab", "bA", "dcB", "abc"] {
            let w = parse_word(text, 4).unwrap();
            let wr = multiply(&w, &relator);
            assert_eq!(dehn.canonical(&w), dehn.canonical(&wr), "word {text}");
        }
    }
}
