use std::fmt;

use crate::error::{parse_err, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: usize,
    /// `+1` or `-1`.
    pub exponent: i8,
}

impl Letter {
    pub fn inverse(self) -> Self {
        Letter {
            generator: self.generator,
            exponent: -self.exponent,
        }
    }
}

/// A word in the free group, stored flat (powers and brackets expanded).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn generator(g: usize) -> Self {
        Word(vec![Letter {
            generator: g,
            exponent: 1,
        }])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        Word(base.0.repeat(n.unsigned_abs() as usize))
    }

    /// Free reduction (cancels adjacent `x x^-1`).
    pub fn reduced(&self) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.generator).max()
    }

    /// Exponent sum of each of `n` generators.
    pub fn exponent_sums(&self, n: usize) -> Vec<i64> {
        let mut s = vec![0; n];
        for l in &self.0 {
            s[l.generator] += l.exponent as i64;
        }
        s
    }

    /// Flat text `a b^-1 c`.
    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        WordDisplay { word: self, names }
    }

    /// Parses `a b^-1 ( c d )^4`, nested brackets and signed powers allowed.
    pub fn parse(text: &str, names: &[String]) -> std::result::Result<Word, String> {
        let tokens = tokenize(text)?;
        let mut pos = 0;
        let w = parse_seq(&tokens, &mut pos, names)?;
        if pos != tokens.len() {
            return Err("unbalanced `)`".into());
        }
        Ok(w)
    }
}

struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.word.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", self.names[l.generator])?;
            if l.exponent < 0 {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, PartialEq)]
enum Tok {
    Open,
    Close,
    Pow(i64),
    Name(String),
}

fn tokenize(s: &str) -> std::result::Result<Vec<Tok>, String> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            _ if c.is_whitespace() || c == '*' => i += 1,
            '(' => {
                out.push(Tok::Open);
                i += 1;
            }
            ')' => {
                out.push(Tok::Close);
                i += 1;
            }
            '^' => {
                i += 1;
                while i < chars.len() && chars[i].is_whitespace() {
                    i += 1;
                }
                let start = i;
                if i < chars.len() && (chars[i] == '-' || chars[i] == '+') {
                    i += 1;
                }
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let num: String = chars[start..i].iter().collect();
                let n = num.parse::<i64>().map_err(|_| format!("bad exponent `^{num}`"))?;
                out.push(Tok::Pow(n));
            }
            _ if c.is_alphanumeric() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Name(chars[start..i].iter().collect()));
            }
            _ => return Err(format!("unexpected character `{c}`")),
        }
    }
    Ok(out)
}

fn parse_seq(t: &[Tok], pos: &mut usize, names: &[String]) -> std::result::Result<Word, String> {
    let mut w = Word::empty();
    while *pos < t.len() {
        let atom = match &t[*pos] {
            Tok::Close => break,
            Tok::Pow(_) => return Err("exponent without base".into()),
            Tok::Open => {
                *pos += 1;
                let inner = parse_seq(t, pos, names)?;
                if t.get(*pos) != Some(&Tok::Close) {
                    return Err("missing `)`".into());
                }
                *pos += 1;
                inner
            }
            Tok::Name(n) => {
                *pos += 1;
                if n == "1" {
                    Word::empty()
                } else {
                    let g = names
                        .iter()
                        .position(|x| x == n)
                        .ok_or_else(|| format!("unknown generator `{n}`"))?;
                    Word::generator(g)
                }
            }
        };
        let atom = match t.get(*pos) {
            Some(Tok::Pow(n)) => {
                *pos += 1;
                atom.pow(*n)
            }
            _ => atom,
        };
        w.0.extend(atom.0);
    }
    Ok(w)
}

/// Generators plus relators; relator source text kept for reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
    pub relator_text: Vec<String>,
}

impl Presentation {
    pub fn new(generators: Vec<String>) -> Self {
        Presentation {
            generators,
            relators: Vec::new(),
            relator_text: Vec::new(),
        }
    }

    pub fn from_strs(generators: &[&str], relators: &[&str]) -> Result<Self> {
        let mut p = Presentation::new(generators.iter().map(|s| s.to_string()).collect());
        for r in relators {
            p.add_relator_text(r)?;
        }
        Ok(p)
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn add_relator(&mut self, w: Word) {
        self.relator_text.push(w.display(&self.generators).to_string());
        self.relators.push(w);
    }

    pub fn add_relator_text(&mut self, text: &str) -> Result<()> {
        let w = Word::parse(text, &self.generators).map_err(Error::Invalid)?;
        self.relators.push(w);
        self.relator_text.push(text.trim().to_string());
        Ok(())
    }

    /// `gens: a b c` followed by `rel: <word>` lines; `#` starts a comment.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut pres: Option<Presentation> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("gens:") {
                if pres.is_some() {
                    return Err(parse_err(i + 1, "duplicate `gens:` line"));
                }
                let names: Vec<String> = rest.split_whitespace().map(String::from).collect();
                if names.is_empty() {
                    return Err(parse_err(i + 1, "no generators"));
                }
                pres = Some(Presentation::new(names));
            } else if let Some(rest) = line.strip_prefix("rel:") {
                let p = pres.as_mut().ok_or_else(|| parse_err(i + 1, "`rel:` before `gens:`"))?;
                let w = Word::parse(rest, &p.generators).map_err(|m| parse_err(i + 1, m))?;
                p.relators.push(w);
                p.relator_text.push(rest.trim().to_string());
            } else {
                return Err(parse_err(i + 1, format!("expected `gens:` or `rel:`, found `{line}`")));
            }
        }
        pres.ok_or_else(|| parse_err(0, "missing `gens:` line"))
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("gens: {}\n", self.generators.join(" "));
        for t in &self.relator_text {
            s.push_str("rel: ");
            s.push_str(t);
            s.push('\n');
        }
        s
    }
}

/// Coxeter presentation: `x^2` for every node, then `(x y)^m` for every pair
/// (label 2 unless listed).
pub fn coxeter_presentation(nodes: &[&str], edges: &[(usize, usize, u32)]) -> Result<Presentation> {
    let n = nodes.len();
    let mut label = vec![vec![2u32; n]; n];
    for &(i, j, m) in edges {
        if i >= n || j >= n || i == j {
            return Err(Error::Invalid(format!("bad edge ({i}, {j})")));
        }
        if m < 3 {
            return Err(Error::Invalid(format!("edge label {m} must be at least 3")));
        }
        label[i][j] = m;
        label[j][i] = m;
    }
    let mut p = Presentation::new(nodes.iter().map(|s| s.to_string()).collect());
    for i in 0..n {
        p.relators.push(Word::generator(i).pow(2));
        p.relator_text.push(format!("{}^2", nodes[i]));
    }
    for i in 0..n {
        for j in i + 1..n {
            let m = label[i][j];
            p.relators
                .push(Word::generator(i).concat(&Word::generator(j)).pow(m as i64));
            p.relator_text.push(format!("( {} {} )^{m}", nodes[i], nodes[j]));
        }
    }
    Ok(p)
}
