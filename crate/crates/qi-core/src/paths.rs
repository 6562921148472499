//! Words in the (double) quiver: enumeration of closed paths,
//! primitivity, cyclic and cyclic-transpose canonical forms, path
//! evaluation on representations, and multidegrees.

use crate::exact_linalg::Matrix;
use crate::quiver_model::{
    base_letters, double_letters, letter_endpoints, letter_matrix, Arrow, FormLabel, GroupLabel,
    Letter, MixedQuiverSetting, Quiver, Representation,
};
use crate::{Error, Result};

/// A nonempty sequence of letters; consecutive letters must compose like
/// matrices (`tail` of one letter equals `head` of the next).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn rotate(&self, k: usize) -> Word {
        let n = self.len();
        if n == 0 {
            return self.clone();
        }
        let k = k % n;
        let mut letters = self.0[k..].to_vec();
        letters.extend_from_slice(&self.0[..k]);
        Word(letters)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Serialized form: arrow ids with a `^T` suffix on transpose letters.
    pub fn to_strings(&self, s: &MixedQuiverSetting) -> Vec<String> {
        self.0
            .iter()
            .map(|l| {
                let id = &s.quiver.arrows[l.arrow].id;
                if l.transposed {
                    format!("{id}^T")
                } else {
                    id.clone()
                }
            })
            .collect()
    }

    pub fn from_strings(s: &MixedQuiverSetting, letters: &[impl AsRef<str>]) -> Result<Word> {
        let mut out = Vec::with_capacity(letters.len());
        for raw in letters {
            let raw = raw.as_ref();
            let (id, transposed) = match raw.strip_suffix("^T") {
                Some(base) => (base, true),
                None => (raw, false),
            };
            let arrow = s
                .quiver
                .arrow_index(id)
                .ok_or_else(|| Error::ForeignLetter(raw.to_string()))?;
            if transposed && s.forms[arrow] != FormLabel::M {
                return Err(Error::NoTranspose(id.to_string()));
            }
            out.push(Letter { arrow, transposed });
        }
        if out.is_empty() {
            return Err(Error::Schema("words must be nonempty".into()));
        }
        Ok(Word(out))
    }
}

/// Head and tail vertices of a word, verifying composability of
/// consecutive letters.
pub fn word_endpoints(s: &MixedQuiverSetting, w: &Word) -> Result<(usize, usize)> {
    if w.is_empty() {
        return Err(Error::Schema("words must be nonempty".into()));
    }
    let (head, mut tail) = letter_endpoints(s, w.0[0])?;
    for (k, &l) in w.0.iter().enumerate().skip(1) {
        let (h, t) = letter_endpoints(s, l)?;
        if h != tail {
            return Err(Error::NotComposable(format!(
                "letter {k} has head {h}, previous tail is {tail}"
            )));
        }
        tail = t;
    }
    Ok((head, tail))
}

pub fn is_closed(s: &MixedQuiverSetting, w: &Word) -> Result<bool> {
    let (head, tail) = word_endpoints(s, w)?;
    Ok(head == tail)
}

/// All closed paths over the given letter alphabet with length up to
/// `max_len`, each exactly once as a raw word, ordered by length then
/// lexicographically. `at` restricts to paths incident to one vertex.
fn enumerate_closed_words(
    s: &MixedQuiverSetting,
    alphabet: &[Letter],
    max_len: usize,
    at: Option<usize>,
) -> Result<Vec<Word>> {
    if max_len == 0 {
        return Err(Error::Precondition("max_len must be at least 1".into()));
    }
    let mut letters = alphabet.to_vec();
    letters.sort();
    let endpoints: Vec<(usize, usize)> = letters
        .iter()
        .map(|&l| letter_endpoints(s, l))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    let mut stack: Vec<Letter> = Vec::new();
    let starts: Vec<usize> = match at {
        Some(v) => {
            if v == 0 || v > s.vertex_count() {
                return Err(Error::IndexOutOfRange(format!("vertex {v}")));
            }
            vec![v]
        }
        None => (1..=s.vertex_count()).collect(),
    };
    fn dfs(
        letters: &[Letter],
        endpoints: &[(usize, usize)],
        start: usize,
        current_tail: usize,
        max_len: usize,
        stack: &mut Vec<Letter>,
        out: &mut Vec<Word>,
    ) {
        for (k, &l) in letters.iter().enumerate() {
            let (h, t) = endpoints[k];
            if h != current_tail {
                continue;
            }
            stack.push(l);
            if t == start {
                out.push(Word(stack.clone()));
            }
            if stack.len() < max_len {
                dfs(letters, endpoints, start, t, max_len, stack, out);
            }
            stack.pop();
        }
    }
    for start in starts {
        dfs(
            &letters,
            &endpoints,
            start,
            start,
            max_len,
            &mut stack,
            &mut out,
        );
    }
    out.sort_by(|a, b| (a.len(), &a.0).cmp(&(b.len(), &b.0)));
    out.dedup();
    Ok(out)
}

/// Closed paths of the base quiver (no transpose letters).
pub fn enumerate_closed_paths(
    s: &MixedQuiverSetting,
    max_len: usize,
    at: Option<usize>,
) -> Result<Vec<Word>> {
    enumerate_closed_words(s, &base_letters(s), max_len, at)
}

/// Closed paths of the double quiver (transpose letters included for every
/// arrow with form label M).
pub fn enumerate_closed_paths_double(
    s: &MixedQuiverSetting,
    max_len: usize,
    at: Option<usize>,
) -> Result<Vec<Word>> {
    enumerate_closed_words(s, &double_letters(s), max_len, at)
}

/// A closed word is primitive when it is not a power of a shorter word.
pub fn is_primitive(w: &Word) -> bool {
    let n = w.len();
    for d in 1..n {
        if n % d == 0 && w.rotate(d) == *w {
            return false;
        }
    }
    true
}

/// Lexicographically minimal rotation: two closed words are cyclically
/// equal iff their canonical forms coincide.
pub fn canonical_cyclic(w: &Word) -> Word {
    let mut best = w.clone();
    for k in 1..w.len() {
        let r = w.rotate(k);
        if r < best {
            best = r;
        }
    }
    best
}

/// Reverses the word and flips every transpose flag. Requires the ambient
/// alphabet to be closed under transposition along the word (form M
/// arrows).
pub fn word_transpose(s: &MixedQuiverSetting, w: &Word) -> Result<Word> {
    let mut letters = Vec::with_capacity(w.len());
    for &l in w.0.iter().rev() {
        if !l.transposed && s.forms[l.arrow] != FormLabel::M {
            return Err(Error::NoTranspose(s.quiver.arrows[l.arrow].id.clone()));
        }
        letters.push(Letter {
            arrow: l.arrow,
            transposed: !l.transposed,
        });
    }
    Ok(Word(letters))
}

/// Minimal word over all rotations of `w` and of its transpose; canonical
/// form of the cyclic-equivalence-with-transposition relation.
pub fn canonical_cyclic_transpose(s: &MixedQuiverSetting, w: &Word) -> Result<Word> {
    let a = canonical_cyclic(w);
    let b = canonical_cyclic(&word_transpose(s, w)?);
    Ok(a.min(b))
}

/// The matrix of a word on a representation: the product of the per-letter
/// matrices (transpose letters are J-twisted according to the setting).
pub fn path_value(s: &MixedQuiverSetting, rep: &Representation, w: &Word) -> Result<Matrix> {
    word_endpoints(s, w)?;
    let mut acc = letter_matrix(s, rep, w.0[0])?;
    for &l in &w.0[1..] {
        acc = acc.mul(&letter_matrix(s, rep, l)?)?;
    }
    Ok(acc)
}

/// Per-arrow degree vector: transposed and untransposed occurrences of one
/// arrow are counted together.
pub fn multidegree(s: &MixedQuiverSetting, w: &Word) -> Vec<usize> {
    let mut deg = vec![0usize; s.quiver.arrows.len()];
    for l in &w.0 {
        deg[l.arrow] += 1;
    }
    deg
}

/// Degree of `w` in one specific letter (arrow with a fixed transpose flag).
pub fn letter_degree(w: &Word, letter: Letter) -> usize {
    w.0.iter().filter(|&&l| l == letter).count()
}

/// The fixed three-letter quiver behind sigma_{t,r}: a loop `X` at vertex
/// 1, `Y` from vertex 2 to vertex 1, `Z` from vertex 1 to vertex 2, both
/// GL vertices dual to each other. Its double quiver has the six letters
/// X, X^T (a loop at vertex 2), Y, Y^T, Z, Z^T.
pub fn sigma_tr_setting(n: usize) -> MixedQuiverSetting {
    let quiver = Quiver::new(
        2,
        vec![
            Arrow {
                id: "X".into(),
                head: 1,
                tail: 1,
            },
            Arrow {
                id: "Y".into(),
                head: 1,
                tail: 2,
            },
            Arrow {
                id: "Z".into(),
                head: 2,
                tail: 1,
            },
        ],
    )
    .expect("static quiver");
    MixedQuiverSetting::new(
        quiver,
        vec![n, n],
        vec![GroupLabel::GL, GroupLabel::GL],
        vec![FormLabel::M; 3],
        vec![2, 1],
    )
    .expect("static setting")
}

/// Multidegree in the sigma_{t,r} alphabet: (X-degree, Y-degree, Z-degree),
/// counting transposes together. Errors on letters outside the three-arrow
/// alphabet.
pub fn sigma_tr_multidegree(s: &MixedQuiverSetting, w: &Word) -> Result<(usize, usize, usize)> {
    if s.quiver.arrows.len() != 3 {
        return Err(Error::ForeignLetter(
            "multidegree expects the three-letter sigma_{t,r} alphabet".into(),
        ));
    }
    let deg = multidegree(s, w);
    Ok((deg[0], deg[1], deg[2]))
}
