//! Source problems: set cover and DNF formulas, with text formats.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

fn parse_error(offset: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        reason: reason.into(),
    }
}

/// Elements `0..elements`, a family of subsets, and a size bound `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetCover {
    pub elements: usize,
    pub sets: Vec<Vec<usize>>,
    pub k: usize,
}

impl SetCover {
    pub fn new(elements: usize, sets: Vec<Vec<usize>>, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain("set cover bound must be at least 1".into()));
        }
        if let Some(&x) = sets.iter().flatten().find(|&&x| x >= elements) {
            return Err(Error::Domain(format!("element {x} out of range 0..{elements}")));
        }
        Ok(SetCover { elements, sets, k })
    }

    /// Brute force: do at most `k` sets cover every element?
    pub fn has_cover(&self) -> bool {
        let m = self.sets.len();
        assert!(m < 32, "brute force limited to 31 sets");
        let full: u64 = if self.elements == 64 { !0 } else { (1u64 << self.elements) - 1 };
        let masks: Vec<u64> = self
            .sets
            .iter()
            .map(|s| s.iter().fold(0u64, |m, &x| m | 1 << x))
            .collect();
        (0u32..1 << m).any(|pick| {
            pick.count_ones() as usize <= self.k
                && (0..m).filter(|&j| pick >> j & 1 == 1).fold(0u64, |a, j| a | masks[j]) == full
        })
    }
}

/// Text form `n; S1; S2; ...; k` with 1-based elements separated by spaces
/// or commas inside each set; an empty field is the empty set.
impl FromStr for SetCover {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let fields: Vec<&str> = s.trim().split(';').collect();
        if fields.len() < 2 {
            return Err(parse_error(0, "expected `n; S1; ...; k`"));
        }
        let num = |f: &str, at: usize| -> Result<usize> {
            f.trim()
                .parse()
                .map_err(|_| parse_error(at, format!("`{}` is not a number", f.trim())))
        };
        let elements = num(fields[0], 0)?;
        let k = num(fields[fields.len() - 1], fields.len() - 1)?;
        let mut sets = Vec::new();
        for (i, f) in fields[1..fields.len() - 1].iter().enumerate() {
            let mut set = Vec::new();
            for tok in f.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
                let x = num(tok, i + 1)?;
                if x == 0 || x > elements {
                    return Err(parse_error(i + 1, format!("element {x} outside 1..={elements}")));
                }
                set.push(x - 1);
            }
            sets.push(set);
        }
        SetCover::new(elements, sets, k)
    }
}

impl fmt::Display for SetCover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.elements)?;
        for s in &self.sets {
            let items: Vec<String> = s.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "; {}", items.join(" "))?;
        }
        write!(f, "; {}", self.k)
    }
}

/// Variable `var` (0-based) or its negation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, positive: false }
    }

    pub fn negated(self) -> Self {
        Literal {
            var: self.var,
            positive: !self.positive,
        }
    }

    pub fn eval(self, z: u64) -> bool {
        (z >> self.var & 1 == 1) == self.positive
    }
}

/// A disjunction of conjunctive clauses over variables `0..variables`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dnf {
    pub variables: usize,
    pub clauses: Vec<Vec<Literal>>,
}

impl Dnf {
    /// Repeated literals within a clause are merged.
    pub fn new(variables: usize, mut clauses: Vec<Vec<Literal>>) -> Result<Self> {
        for c in &mut clauses {
            let mut seen = Vec::with_capacity(c.len());
            c.retain(|l| {
                let fresh = !seen.contains(l);
                seen.push(*l);
                fresh
            });
            if c.is_empty() {
                return Err(Error::Domain("clauses must be nonempty".into()));
            }
            if let Some(l) = c.iter().find(|l| l.var >= variables) {
                return Err(Error::Domain(format!("variable {} out of range", l.var + 1)));
            }
        }
        Ok(Dnf { variables, clauses })
    }

    pub fn eval_clause(&self, j: usize, z: u64) -> bool {
        self.clauses[j].iter().all(|l| l.eval(z))
    }

    pub fn eval(&self, z: u64) -> bool {
        (0..self.clauses.len()).any(|j| self.eval_clause(j, z))
    }

    /// A falsifying assignment, if any (brute force).
    pub fn falsifier(&self) -> Option<u64> {
        assert!(self.variables <= 24, "brute force limited to 24 variables");
        (0u64..1 << self.variables).find(|&z| !self.eval(z))
    }

    pub fn is_tautology(&self) -> bool {
        self.falsifier().is_none()
    }

    pub fn occurrences(&self, l: Literal) -> usize {
        self.clauses.iter().flatten().filter(|&&m| m == l).count()
    }

    /// Width at most 3 and each literal at most twice.
    pub fn check_refinable(&self) -> Result<()> {
        if let Some(c) = self.clauses.iter().find(|c| c.len() > 3) {
            return Err(Error::Domain(format!("clause of width {} exceeds 3", c.len())));
        }
        for var in 0..self.variables {
            for l in [Literal::pos(var), Literal::neg(var)] {
                if self.occurrences(l) > 2 {
                    return Err(Error::Domain(format!("a literal of variable {} occurs more than twice", var + 1)));
                }
            }
        }
        Ok(())
    }
}

/// Clause lines of signed 1-based integers, an optional trailing `0`, and an
/// optional `p dnf <variables> <clauses>` header; `c` and `#` lines are
/// comments. Without a header the variable count is the largest index used.
impl FromStr for Dnf {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut declared = None;
        let mut clauses = Vec::new();
        let mut max_var = 0;
        for (i, line) in s.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix('p') {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                match parts.as_slice() {
                    ["dnf", v, _] => {
                        declared = Some(v.parse::<usize>().map_err(|_| parse_error(i, "bad variable count"))?)
                    }
                    _ => return Err(parse_error(i, "expected `p dnf <variables> <clauses>`")),
                }
                continue;
            }
            let mut clause = Vec::new();
            for tok in line.split_whitespace() {
                let x: i64 = tok
                    .parse()
                    .map_err(|_| parse_error(i, format!("`{tok}` is not an integer")))?;
                if x == 0 {
                    break;
                }
                let var = x.unsigned_abs() as usize - 1;
                max_var = max_var.max(var + 1);
                clause.push(Literal { var, positive: x > 0 });
            }
            if clause.is_empty() {
                return Err(parse_error(i, "empty clause"));
            }
            clauses.push(clause);
        }
        let variables = match declared {
            Some(v) if v < max_var => return Err(parse_error(0, "header declares too few variables")),
            Some(v) => v,
            None => max_var,
        };
        Dnf::new(variables, clauses)
    }
}

impl fmt::Display for Dnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p dnf {} {}", self.variables, self.clauses.len())?;
        for c in &self.clauses {
            for l in c {
                let x = (l.var + 1) as i64;
                write!(f, "{} ", if l.positive { x } else { -x })?;
            }
            writeln!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_cover_text() {
        let sc: SetCover = "4; ; 1; 2 3; 4; 2".parse().unwrap();
        assert_eq!(sc.sets, vec![vec![], vec![0], vec![1, 2], vec![3]]);
        assert!(!sc.has_cover());
        assert_eq!(sc.to_string().parse::<SetCover>().unwrap(), sc);
        assert!("2; 3; 1".parse::<SetCover>().is_err());
        assert!("1; 1; 0".parse::<SetCover>().is_err());
    }

    #[test]
    fn dnf_text() {
        let d: Dnf = "c x or not x\n1 0\n-1 0\n".parse().unwrap();
        assert_eq!(d.variables, 1);
        assert!(d.is_tautology());
        assert_eq!(d.to_string().parse::<Dnf>().unwrap(), d);
        let d: Dnf = "p dnf 2 1\n1 -2\n".parse().unwrap();
        assert_eq!(d.falsifier(), Some(0));
        assert!("1 x".parse::<Dnf>().is_err());
        let none: Dnf = "".parse().unwrap();
        assert!(!none.is_tautology());
    }
}
