//! Aho–Corasick automaton over leading words. A word is normal exactly when
//! the automaton never enters a dead state while reading it, which turns
//! counting and listing normal words into walks on a small graph.

use std::collections::VecDeque;

use crate::freealg::{Letter, Word};

use super::GbError;

#[derive(Debug, Clone)]
pub struct LeadAutomaton {
    nletters: usize,
    goto: Vec<u32>,
    dead: Vec<bool>,
    // pattern ending exactly at a trie node, and the nearest terminal proper
    // suffix state
    pattern: Vec<u32>,
    dict: Vec<u32>,
}

const NONE: u32 = u32::MAX;

impl LeadAutomaton {
    pub fn new<'a, I: IntoIterator<Item = &'a [Letter]>>(patterns: I, nletters: usize) -> Self {
        // trie
        let mut children: Vec<Vec<Option<u32>>> = vec![vec![None; nletters]];
        let mut terminal = vec![false];
        let mut pattern = vec![NONE];
        for (id, pat) in patterns.into_iter().enumerate() {
            let mut s = 0usize;
            for &l in pat {
                s = match children[s][l as usize] {
                    Some(t) => t as usize,
                    None => {
                        children.push(vec![None; nletters]);
                        terminal.push(false);
                        pattern.push(NONE);
                        let t = children.len() - 1;
                        children[s][l as usize] = Some(t as u32);
                        t
                    }
                };
            }
            terminal[s] = true;
            if pattern[s] == NONE {
                pattern[s] = id as u32;
            }
        }
        let n = children.len();
        let mut goto = vec![0u32; n * nletters];
        let mut fail = vec![0u32; n];
        let mut dead = terminal.clone();
        let mut dict = vec![NONE; n];
        let mut queue = VecDeque::new();
        for l in 0..nletters {
            match children[0][l] {
                Some(t) => {
                    goto[l] = t;
                    fail[t as usize] = 0;
                    queue.push_back(t as usize);
                }
                None => goto[l] = 0,
            }
        }
        while let Some(s) = queue.pop_front() {
            let f = fail[s] as usize;
            dead[s] = dead[s] || dead[f];
            dict[s] = if terminal[f] { f as u32 } else { dict[f] };
            for l in 0..nletters {
                match children[s][l] {
                    Some(t) => {
                        fail[t as usize] = goto[fail[s] as usize * nletters + l];
                        goto[s * nletters + l] = t;
                        queue.push_back(t as usize);
                    }
                    None => goto[s * nletters + l] = goto[fail[s] as usize * nletters + l],
                }
            }
        }
        LeadAutomaton {
            nletters,
            goto,
            dead,
            pattern,
            dict,
        }
    }

    #[inline]
    pub fn step(&self, state: u32, l: Letter) -> u32 {
        self.goto[state as usize * self.nletters + l as usize]
    }

    #[inline]
    pub fn is_dead(&self, state: u32) -> bool {
        self.dead[state as usize]
    }

    pub fn num_states(&self) -> usize {
        self.dead.len()
    }

    pub fn is_normal(&self, letters: &[Letter]) -> bool {
        let mut s = 0;
        for &l in letters {
            s = self.step(s, l);
            if self.is_dead(s) {
                return false;
            }
        }
        true
    }

    /// Every occurrence of a pattern in `letters`, as `(pattern id, start)`.
    pub fn matches(&self, letters: &[Letter], pattern_len: impl Fn(u32) -> usize) -> Vec<(u32, usize)> {
        let mut out = Vec::new();
        let mut s = 0u32;
        for (i, &l) in letters.iter().enumerate() {
            s = self.step(s, l);
            if !self.is_dead(s) {
                continue;
            }
            let mut t = if self.pattern[s as usize] != NONE { s } else { self.dict[s as usize] };
            while t != NONE {
                let id = self.pattern[t as usize];
                out.push((id, i + 1 - pattern_len(id)));
                t = self.dict[t as usize];
            }
        }
        out
    }

    /// Number of normal words of each internal degree `0..=d`.
    pub fn count_by_degree(&self, degrees: &[u32], d: u32) -> Result<Vec<u128>, GbError> {
        let n = self.num_states();
        let d = d as usize;
        let mut dp: Vec<Vec<u128>> = vec![vec![0; n]; d + 1];
        dp[0][0] = 1;
        let mut totals = vec![0u128; d + 1];
        for k in 0..=d {
            for s in 0..n {
                let c = dp[k][s];
                if c == 0 {
                    continue;
                }
                totals[k] = totals[k].checked_add(c).ok_or(GbError::CountOverflow)?;
                for (l, &gd) in degrees.iter().enumerate() {
                    let k2 = k + gd as usize;
                    if k2 > d {
                        continue;
                    }
                    let t = self.step(s as u32, l as Letter);
                    if self.is_dead(t) {
                        continue;
                    }
                    let slot = &mut dp[k2][t as usize];
                    *slot = slot.checked_add(c).ok_or(GbError::CountOverflow)?;
                }
            }
        }
        Ok(totals)
    }

    /// All normal words of internal degree `d`, in increasing monomial order.
    pub fn words_of_degree(&self, degrees: &[u32], d: u32) -> Vec<Word> {
        let mut out = Vec::new();
        let mut stack: Vec<Letter> = Vec::new();
        self.dfs_degree(degrees, 0, d, &mut stack, &mut out);
        out.sort();
        out
    }

    fn dfs_degree(&self, degrees: &[u32], state: u32, rem: u32, stack: &mut Vec<Letter>, out: &mut Vec<Word>) {
        if rem == 0 {
            out.push(Word::new(stack, degrees));
            return;
        }
        for (l, &gd) in degrees.iter().enumerate() {
            if gd > rem {
                continue;
            }
            let t = self.step(state, l as Letter);
            if self.is_dead(t) {
                continue;
            }
            stack.push(l as Letter);
            self.dfs_degree(degrees, t, rem - gd, stack, out);
            stack.pop();
        }
    }

    /// Normal words whose `k`-th letter is drawn from `choices[k]`, in
    /// increasing monomial order.
    pub fn words_with_letter_choices(&self, degrees: &[u32], choices: &[&[Letter]]) -> Vec<Word> {
        let mut out = Vec::new();
        let mut stack: Vec<Letter> = Vec::with_capacity(choices.len());
        self.dfs_choices(degrees, 0, choices, &mut stack, &mut out);
        out.sort();
        out
    }

    fn dfs_choices(
        &self,
        degrees: &[u32],
        state: u32,
        choices: &[&[Letter]],
        stack: &mut Vec<Letter>,
        out: &mut Vec<Word>,
    ) {
        let k = stack.len();
        if k == choices.len() {
            out.push(Word::new(stack, degrees));
            return;
        }
        for &l in choices[k] {
            let t = self.step(state, l);
            if self.is_dead(t) {
                continue;
            }
            stack.push(l);
            self.dfs_choices(degrees, t, choices, stack, out);
            stack.pop();
        }
    }
}
