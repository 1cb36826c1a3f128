//! Coset enumeration (HLT strategy with coincidence processing) over the trivial
//! subgroup, yielding the presented group in its regular representation.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::Perm;

/// Default cap on the number of cosets defined during enumeration.
pub const DEFAULT_COSET_CAP: usize = 50_000;

/// A word over generators: letter `k > 0` is generator `k - 1`, `-k` its inverse.
pub type Word = Vec<i32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: usize,
    pub relators: Vec<Word>,
}

/// Result of a successful enumeration.
#[derive(Clone, Debug)]
pub struct PresentedGroup {
    pub group: FiniteGroup,
    /// Element index of each generator.
    pub generator_elements: Vec<usize>,
}

impl PresentedGroup {
    pub fn evaluate(&self, word: &[i32]) -> usize {
        word.iter().fold(FiniteGroup::IDENTITY, |acc, &l| {
            let g = self.generator_elements[(l.unsigned_abs() - 1) as usize];
            let g = if l > 0 { g } else { self.group.inv(g) };
            self.group.mul(acc, g)
        })
    }
}

pub fn free_reduce(word: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(word.len());
    for &l in word {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn cyclic_reduce(word: &[i32]) -> Word {
    let mut w = free_reduce(word);
    while w.len() >= 2 && w[0] == -w[w.len() - 1] {
        w.pop();
        w.remove(0);
    }
    w
}

pub fn invert_word(word: &[i32]) -> Word {
    word.iter().rev().map(|l| -l).collect()
}

impl Presentation {
    /// Removes generators killed or identified by relators of length one or two.
    ///
    /// Returns the smaller presentation and, for every original generator, a word
    /// in the new generators representing it.
    pub fn simplify(&self) -> (Presentation, Vec<Word>) {
        let n = self.generators;
        let mut subst: Vec<Option<Word>> = alloc::vec![None; n];
        let expand = |w: &[i32], subst: &Vec<Option<Word>>| -> Word {
            let mut out = Vec::new();
            for &l in w {
                let k = (l.unsigned_abs() - 1) as usize;
                match &subst[k] {
                    None => out.push(l),
                    Some(r) => {
                        if l > 0 {
                            out.extend_from_slice(r)
                        } else {
                            out.extend(invert_word(r))
                        }
                    }
                }
            }
            free_reduce(&out)
        };
        let mut relators: Vec<Word> = self.relators.clone();
        loop {
            relators = relators
                .iter()
                .map(|r| cyclic_reduce(&expand(r, &subst)))
                .filter(|r| !r.is_empty())
                .collect();
            let mut changed = false;
            for r in &relators {
                let (k, word) = match r.as_slice() {
                    [l] => ((l.unsigned_abs() - 1) as usize, Vec::new()),
                    [a, b] if a.abs() != b.abs() => {
                        let k = (a.unsigned_abs() - 1) as usize;
                        // a b = 1  =>  a = b^{-1}
                        let w = if *a > 0 { alloc::vec![-b] } else { alloc::vec![*b] };
                        (k, w)
                    }
                    _ => continue,
                };
                subst[k] = Some(word);
                // keep existing substitutions in terms of live generators
                for j in 0..n {
                    if let Some(w) = subst[j].clone() {
                        if j != k {
                            subst[j] = Some(expand(&w, &subst));
                        }
                    }
                }
                changed = true;
                break;
            }
            if !changed {
                break;
            }
        }
        let mut renumber = alloc::vec![0i32; n];
        let mut next = 0;
        for k in 0..n {
            if subst[k].is_none() {
                next += 1;
                renumber[k] = next;
            }
        }
        let rename = |w: &[i32]| -> Word {
            w.iter()
                .map(|&l| {
                    let k = (l.unsigned_abs() - 1) as usize;
                    renumber[k] * l.signum()
                })
                .collect()
        };
        let words = (0..n)
            .map(|k| match &subst[k] {
                None => alloc::vec![renumber[k]],
                Some(w) => rename(&expand(w, &subst)),
            })
            .collect();
        let relators = relators.iter().map(|r| rename(r)).collect();
        (
            Presentation {
                generators: next as usize,
                relators,
            },
            words,
        )
    }
}

const NONE: usize = usize::MAX;

struct CosetTable {
    cols: usize,
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    cap: usize,
}

impl CosetTable {
    fn new(gens: usize, cap: usize) -> Self {
        CosetTable {
            cols: 2 * gens,
            table: alloc::vec![alloc::vec![NONE; 2 * gens]],
            parent: alloc::vec![0],
            cap,
        }
    }

    #[inline]
    fn col(l: i32) -> usize {
        let k = (l.unsigned_abs() - 1) as usize;
        if l > 0 {
            2 * k
        } else {
            2 * k + 1
        }
    }

    fn live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = c;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    fn define(&mut self, c: usize, x: usize) -> Result<()> {
        if self.table.len() >= self.cap {
            return Err(Error::CosetOverflow { cap: self.cap });
        }
        let d = self.table.len();
        self.table.push(alloc::vec![NONE; self.cols]);
        self.parent.push(d);
        self.table[c][x] = d;
        self.table[d][x ^ 1] = c;
        Ok(())
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let a = self.rep(a);
        let b = self.rep(b);
        if a == b {
            return;
        }
        let (keep, kill) = if a < b { (a, b) } else { (b, a) };
        self.parent[kill] = keep;
        queue.push(kill);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.table[e][x];
                if f == NONE {
                    continue;
                }
                if self.table[f][x ^ 1] == e {
                    self.table[f][x ^ 1] = NONE;
                }
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                if self.table[e1][x] != NONE {
                    let t = self.table[e1][x];
                    self.merge(f1, t, &mut queue);
                } else if self.table[f1][x ^ 1] != NONE {
                    let t = self.table[f1][x ^ 1];
                    self.merge(e1, t, &mut queue);
                } else {
                    self.table[e1][x] = f1;
                    self.table[f1][x ^ 1] = e1;
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, word: &[usize]) -> Result<()> {
        if word.is_empty() {
            return Ok(());
        }
        let mut f = c;
        let mut b = c;
        let mut i: isize = 0;
        let mut j: isize = word.len() as isize - 1;
        loop {
            while i <= j && self.table[f][word[i as usize]] != NONE {
                f = self.table[f][word[i as usize]];
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.table[b][word[j as usize] ^ 1] != NONE {
                b = self.table[b][word[j as usize] ^ 1];
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                let x = word[i as usize];
                self.table[f][x] = b;
                self.table[b][x ^ 1] = f;
                return Ok(());
            }
            self.define(f, word[i as usize])?;
        }
    }
}

/// Enumerates the cosets of the trivial subgroup. Fails with
/// [`Error::CosetOverflow`] once more than `cap` cosets have been defined.
pub fn todd_coxeter(presentation: &Presentation, cap: usize) -> Result<PresentedGroup> {
    if cap == 0 {
        return Err(Error::input("coset cap must be at least 1"));
    }
    let n = presentation.generators;
    let rels: Vec<Vec<usize>> = presentation
        .relators
        .iter()
        .map(|r| cyclic_reduce(r))
        .filter(|r| !r.is_empty())
        .map(|r| r.iter().map(|&l| CosetTable::col(l)).collect())
        .collect();
    if let Some(bad) = presentation
        .relators
        .iter()
        .flatten()
        .find(|l| **l == 0 || l.unsigned_abs() as usize > n)
    {
        return Err(Error::input(alloc::format!("relator letter {bad} out of range")));
    }
    let mut t = CosetTable::new(n, cap);
    let mut c = 0;
    while c < t.table.len() {
        if t.live(c) {
            for r in &rels {
                t.scan_and_fill(c, r)?;
                if !t.live(c) {
                    break;
                }
            }
            if t.live(c) {
                for x in 0..t.cols {
                    if t.table[c][x] == NONE {
                        t.define(c, x)?;
                    }
                }
            }
        }
        c += 1;
    }
    let live: Vec<usize> = (0..t.table.len()).filter(|&c| t.live(c)).collect();
    let mut number = alloc::vec![NONE; t.table.len()];
    for (i, &c) in live.iter().enumerate() {
        number[c] = i;
    }
    let degree = live.len();
    let mut perms = Vec::with_capacity(n);
    for k in 0..n {
        let mut images = Vec::with_capacity(degree);
        for &c in &live {
            let d = t.table[c][2 * k];
            let d = t.rep(d);
            images.push(number[d] as u32);
        }
        perms.push(Perm::from_images(images).ok_or_else(|| Error::inconsistency("coset table is not a permutation"))?);
    }
    let group = FiniteGroup::from_generators(degree, perms.clone())?;
    if group.order() != degree {
        return Err(Error::inconsistency("regular representation has wrong order"));
    }
    let generator_elements = perms
        .iter()
        .map(|p| group.index_of(p).expect("generator in group"))
        .collect();
    let out = PresentedGroup {
        group,
        generator_elements,
    };
    for r in &presentation.relators {
        if out.evaluate(r) != FiniteGroup::IDENTITY {
            return Err(Error::inconsistency("relator does not hold in enumerated group"));
        }
    }
    Ok(out)
}
