//! K-SAT formulas in conjunctive normal form.
//!
//! A [`CnfFormula`] is a conjunction of [`Clause`]s, each a disjunction of
//! polarity-tagged [`Literal`]s over a table of named variables. Formulas are
//! read either from a small infix syntax or from DIMACS CNF:
//!
//! ```
//! use groversat_core::formula::CnfFormula;
//!
//! let f = CnfFormula::parse_infix("(~a|~b)&(a|b)&a").unwrap();
//! assert_eq!(f.variable_count(), 2);
//! assert_eq!(f.clause_widths(), vec![2, 2, 1]);
//!
//! let g = CnfFormula::parse_dimacs("p cnf 2 3\n-1 -2 0\n1 2 0\n1 0\n").unwrap();
//! assert_eq!(g.clauses(), f.clauses());
//! ```
//!
//! Brute-force [`CnfFormula::classify`] is the correctness oracle used
//! everywhere downstream, so it deliberately does nothing clever.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

/// Largest variable count [`CnfFormula::classify`] enumerates by default.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 24;

/// Number of satisfying assignments retained in [`SatClassification::Multiple`].
pub const MULTIPLE_SOLUTION_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormulaError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("empty clause at byte {offset}")]
    EmptyClause { offset: usize },
    #[error("clause {clause} repeats variable `{variable}`")]
    DuplicateLiteral { clause: usize, variable: String },
    #[error("clause {clause} contains both `{variable}` and its negation")]
    ComplementaryLiteral { clause: usize, variable: String },
    #[error("clause {clause} is empty")]
    ClauseWithoutLiterals { clause: usize },
    #[error("clause {clause} references variable {variable}, but only {count} are declared")]
    UnknownVariable {
        clause: usize,
        variable: usize,
        count: usize,
    },
    #[error("invalid variable name `{0}`")]
    InvalidVariableName(String),
    #[error("variable name `{0}` declared twice")]
    DuplicateVariableName(String),
    #[error("DIMACS: missing `p cnf` header")]
    MissingHeader,
    #[error("DIMACS line {line}: duplicate `p cnf` header")]
    DuplicateHeader { line: usize },
    #[error("DIMACS line {line}: {message}")]
    Dimacs { line: usize, message: String },
    #[error("DIMACS line {line}: empty clause")]
    DimacsEmptyClause { line: usize },
    #[error("DIMACS line {line}: variable {index} out of range 1..={declared}")]
    VariableOutOfRange {
        line: usize,
        index: u64,
        declared: usize,
    },
    #[error("DIMACS header declares {declared} clauses, found {actual}")]
    ClauseCountMismatch { declared: usize, actual: usize },
    #[error("assignment has {actual} values, formula has {expected} variables")]
    AssignmentLength { expected: usize, actual: usize },
    #[error("{count} variables exceed the enumeration limit of {limit}")]
    TooManyVariables { count: usize, limit: usize },
}

/// A variable or its negation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Literal {
    /// Index into the owning formula's variable table.
    pub variable: usize,
    pub negated: bool,
}

impl Literal {
    pub const fn positive(variable: usize) -> Self {
        Literal {
            variable,
            negated: false,
        }
    }

    pub const fn negative(variable: usize) -> Self {
        Literal {
            variable,
            negated: true,
        }
    }

    #[inline]
    pub fn is_satisfied_by(&self, assignment: &Assignment) -> bool {
        assignment.get(self.variable) != self.negated
    }

    /// Value of the literal when the variable bits are packed into `index`
    /// (variable `i` is bit `i`).
    #[inline]
    pub fn is_satisfied_by_index(&self, index: u64) -> bool {
        ((index >> self.variable) & 1 == 1) != self.negated
    }
}

/// A nonempty disjunction of literals over pairwise distinct variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Clause {
    literals: Vec<Literal>,
}

impl Clause {
    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn width(&self) -> usize {
        self.literals.len()
    }

    pub fn is_satisfied_by(&self, assignment: &Assignment) -> bool {
        self.literals.iter().any(|l| l.is_satisfied_by(assignment))
    }

    #[inline]
    pub fn is_satisfied_by_index(&self, index: u64) -> bool {
        self.literals.iter().any(|l| l.is_satisfied_by_index(index))
    }
}

/// Truth values for every variable of a formula, in variable-table order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Assignment { values }
    }

    /// Unpacks `index` so that variable `i` takes bit `i`. This matches the
    /// simulator's basis ordering of the variable register.
    pub fn from_index(variable_count: usize, index: u64) -> Self {
        Assignment {
            values: (0..variable_count).map(|i| (index >> i) & 1 == 1).collect(),
        }
    }

    pub fn to_index(&self) -> u64 {
        self.values
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &v)| acc | ((v as u64) << i))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn get(&self, variable: usize) -> bool {
        self.values[variable]
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }
}

/// Exact outcome of exhaustive enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum SatClassification {
    Unsatisfiable,
    Unique(Assignment),
    /// `count` is exact; `solutions` holds at most [`MULTIPLE_SOLUTION_CAP`]
    /// of them, lowest index first.
    Multiple {
        count: u64,
        solutions: Vec<Assignment>,
    },
}

impl SatClassification {
    pub fn solution_count(&self) -> u64 {
        match self {
            SatClassification::Unsatisfiable => 0,
            SatClassification::Unique(_) => 1,
            SatClassification::Multiple { count, .. } => *count,
        }
    }

    pub fn unique(&self) -> Option<&Assignment> {
        match self {
            SatClassification::Unique(a) => Some(a),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            SatClassification::Unsatisfiable => "unsatisfiable",
            SatClassification::Unique(_) => "unique",
            SatClassification::Multiple { .. } => "multiple",
        }
    }
}

impl fmt::Display for SatClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SatClassification::Unsatisfiable => f.write_str("Unsatisfiable"),
            SatClassification::Unique(a) => write!(f, "Unique(index {})", a.to_index()),
            SatClassification::Multiple { count, .. } => write!(f, "Multiple({count})"),
        }
    }
}

/// Conjunction of clauses over a table of uniquely named variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CnfFormula {
    variables: Vec<String>,
    clauses: Vec<Clause>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl CnfFormula {
    /// Builds a formula, checking every structural invariant.
    pub fn new(variables: Vec<String>, clauses: Vec<Vec<Literal>>) -> Result<Self, FormulaError> {
        let mut seen = BTreeMap::new();
        for name in &variables {
            if !valid_name(name) {
                return Err(FormulaError::InvalidVariableName(name.clone()));
            }
            if seen.insert(name.as_str(), ()).is_some() {
                return Err(FormulaError::DuplicateVariableName(name.clone()));
            }
        }
        let count = variables.len();
        let mut out = Vec::with_capacity(clauses.len());
        for (ci, literals) in clauses.into_iter().enumerate() {
            if literals.is_empty() {
                return Err(FormulaError::ClauseWithoutLiterals { clause: ci });
            }
            for lit in &literals {
                if lit.variable >= count {
                    return Err(FormulaError::UnknownVariable {
                        clause: ci,
                        variable: lit.variable,
                        count,
                    });
                }
            }
            check_distinct(ci, &literals, &variables)?;
            out.push(Clause { literals });
        }
        Ok(CnfFormula {
            variables,
            clauses: out,
        })
    }

    /// Parses the infix syntax: identifiers, `~` negation, `|` within a
    /// clause, `&` between clauses, parentheses around clauses. Blank input
    /// is the empty formula.
    pub fn parse_infix(text: &str) -> Result<Self, FormulaError> {
        InfixParser::new(text).parse()
    }

    /// Parses DIMACS CNF. Variable `i` is named `x<i>`.
    pub fn parse_dimacs(text: &str) -> Result<Self, FormulaError> {
        parse_dimacs(text)
    }

    /// Emits DIMACS CNF: a `p cnf` header followed by one clause per line.
    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.variables.len(), self.clauses.len());
        for clause in &self.clauses {
            for lit in &clause.literals {
                let v = lit.variable as i64 + 1;
                out.push_str(&(if lit.negated { -v } else { v }).to_string());
                out.push(' ');
            }
            out.push_str("0\n");
        }
        out
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn variable_count(&self) -> usize {
        self.variables.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    pub fn clause_widths(&self) -> Vec<usize> {
        self.clauses.iter().map(Clause::width).collect()
    }

    /// The K of K-SAT: the widest clause (0 for the empty formula).
    pub fn max_width(&self) -> usize {
        self.clauses.iter().map(Clause::width).max().unwrap_or(0)
    }

    /// Same variable count and identical clauses, ignoring variable names.
    pub fn structurally_eq(&self, other: &CnfFormula) -> bool {
        self.variables.len() == other.variables.len() && self.clauses == other.clauses
    }

    pub fn evaluate(&self, assignment: &Assignment) -> Result<bool, FormulaError> {
        if assignment.len() != self.variables.len() {
            return Err(FormulaError::AssignmentLength {
                expected: self.variables.len(),
                actual: assignment.len(),
            });
        }
        Ok(self.clauses.iter().all(|c| c.is_satisfied_by(assignment)))
    }

    /// Evaluates with variable `i` read from bit `i` of `index`.
    #[inline]
    pub fn evaluate_index(&self, index: u64) -> bool {
        self.clauses.iter().all(|c| c.is_satisfied_by_index(index))
    }

    pub fn classify(&self) -> Result<SatClassification, FormulaError> {
        self.classify_with_limit(DEFAULT_ENUMERATION_LIMIT)
    }

    /// Enumerates all `2^n` assignments in index order.
    pub fn classify_with_limit(&self, limit: usize) -> Result<SatClassification, FormulaError> {
        let n = self.variables.len();
        if n > limit || n >= 64 {
            return Err(FormulaError::TooManyVariables { count: n, limit });
        }
        let mut count = 0u64;
        let mut solutions = Vec::new();
        for index in 0..(1u64 << n) {
            if self.evaluate_index(index) {
                count += 1;
                if solutions.len() < MULTIPLE_SOLUTION_CAP {
                    solutions.push(Assignment::from_index(n, index));
                }
            }
        }
        Ok(match count {
            0 => SatClassification::Unsatisfiable,
            1 => SatClassification::Unique(solutions.pop().expect("one solution recorded")),
            _ => SatClassification::Multiple { count, solutions },
        })
    }

    /// Renders an assignment as `a=1 b=0`.
    pub fn describe(&self, assignment: &Assignment) -> String {
        let mut out = String::new();
        for (i, name) in self.variables.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            let bit = if i < assignment.len() && assignment.get(i) {
                '1'
            } else {
                '0'
            };
            out.push_str(name);
            out.push('=');
            out.push(bit);
        }
        out
    }
}

/// Infix rendering; parses back to an equal formula.
impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (ci, clause) in self.clauses.iter().enumerate() {
            if ci > 0 {
                f.write_str("&")?;
            }
            let wide = clause.width() > 1;
            if wide {
                f.write_str("(")?;
            }
            for (li, lit) in clause.literals.iter().enumerate() {
                if li > 0 {
                    f.write_str("|")?;
                }
                if lit.negated {
                    f.write_str("~")?;
                }
                f.write_str(&self.variables[lit.variable])?;
            }
            if wide {
                f.write_str(")")?;
            }
        }
        Ok(())
    }
}

fn check_distinct(
    clause: usize,
    literals: &[Literal],
    names: &[String],
) -> Result<(), FormulaError> {
    for (i, a) in literals.iter().enumerate() {
        for b in &literals[..i] {
            if a.variable == b.variable {
                let variable = names[a.variable].clone();
                return Err(if a.negated == b.negated {
                    FormulaError::DuplicateLiteral { clause, variable }
                } else {
                    FormulaError::ComplementaryLiteral { clause, variable }
                });
            }
        }
    }
    Ok(())
}

struct InfixParser<'a> {
    src: &'a str,
    pos: usize,
    names: Vec<String>,
    lookup: BTreeMap<&'a str, usize>,
}

impl<'a> InfixParser<'a> {
    fn new(src: &'a str) -> Self {
        InfixParser {
            src,
            pos: 0,
            names: Vec::new(),
            lookup: BTreeMap::new(),
        }
    }

    fn syntax<T>(&self, message: &str) -> Result<T, FormulaError> {
        Err(FormulaError::Syntax {
            offset: self.pos,
            message: message.to_string(),
        })
    }

    fn peek(&mut self) -> Option<u8> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        bytes.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<CnfFormula, FormulaError> {
        let mut clauses: Vec<Vec<Literal>> = Vec::new();
        if self.peek().is_none() {
            return Ok(CnfFormula {
                variables: Vec::new(),
                clauses: Vec::new(),
            });
        }
        loop {
            let mut literals = Vec::new();
            self.disjunction(&mut literals)?;
            check_distinct(clauses.len(), &literals, &self.names)?;
            clauses.push(literals);
            match self.peek() {
                None => break,
                Some(b'&') => self.pos += 1,
                Some(_) => return self.syntax("expected `&` or end of input"),
            }
        }
        CnfFormula::new(self.names, clauses)
    }

    fn disjunction(&mut self, out: &mut Vec<Literal>) -> Result<(), FormulaError> {
        self.group(out)?;
        while self.peek() == Some(b'|') {
            self.pos += 1;
            self.group(out)?;
        }
        Ok(())
    }

    fn group(&mut self, out: &mut Vec<Literal>) -> Result<(), FormulaError> {
        if self.peek() != Some(b'(') {
            return self.literal(out);
        }
        let open = self.pos;
        self.pos += 1;
        if self.peek() == Some(b')') {
            return Err(FormulaError::EmptyClause { offset: open });
        }
        self.disjunction(out)?;
        if self.peek() != Some(b')') {
            return self.syntax("expected `|` or `)`");
        }
        self.pos += 1;
        Ok(())
    }

    fn literal(&mut self, out: &mut Vec<Literal>) -> Result<(), FormulaError> {
        let negated = if self.peek() == Some(b'~') {
            self.pos += 1;
            true
        } else {
            false
        };
        let bytes = self.src.as_bytes();
        let start = self.pos;
        match bytes.get(start) {
            Some(c) if c.is_ascii_alphabetic() || *c == b'_' => {}
            _ => return self.syntax("expected variable name"),
        }
        let mut end = start + 1;
        while end < bytes.len() && (bytes[end].is_ascii_alphanumeric() || bytes[end] == b'_') {
            end += 1;
        }
        self.pos = end;
        let name = &self.src[start..end];
        let variable = match self.lookup.get(name) {
            Some(&v) => v,
            None => {
                let v = self.names.len();
                self.names.push(name.to_string());
                self.lookup.insert(name, v);
                v
            }
        };
        out.push(Literal { variable, negated });
        Ok(())
    }
}

fn parse_dimacs(text: &str) -> Result<CnfFormula, FormulaError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Vec<Literal>> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut last_line = 0;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        last_line = line;
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(FormulaError::DuplicateHeader { line });
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            let bad = || FormulaError::Dimacs {
                line,
                message: "malformed header, expected `p cnf <vars> <clauses>`".to_string(),
            };
            if fields.len() != 4 || fields[0] != "p" || fields[1] != "cnf" {
                return Err(bad());
            }
            let vars = fields[2].parse::<usize>().map_err(|_| bad())?;
            let count = fields[3].parse::<usize>().map_err(|_| bad())?;
            header = Some((vars, count));
            continue;
        }
        let Some((declared, _)) = header else {
            return Err(FormulaError::MissingHeader);
        };
        for token in trimmed.split_whitespace() {
            let value: i64 = token.parse().map_err(|_| FormulaError::Dimacs {
                line,
                message: format!("expected integer literal, found `{token}`"),
            })?;
            if value == 0 {
                if current.is_empty() {
                    return Err(FormulaError::DimacsEmptyClause { line });
                }
                clauses.push(core::mem::take(&mut current));
                continue;
            }
            let index = value.unsigned_abs();
            if index as usize > declared {
                return Err(FormulaError::VariableOutOfRange {
                    line,
                    index,
                    declared,
                });
            }
            current.push(Literal {
                variable: index as usize - 1,
                negated: value < 0,
            });
        }
    }

    let Some((declared, count)) = header else {
        return Err(FormulaError::MissingHeader);
    };
    if !current.is_empty() {
        return Err(FormulaError::Dimacs {
            line: last_line,
            message: "clause not terminated by 0".to_string(),
        });
    }
    if clauses.len() != count {
        return Err(FormulaError::ClauseCountMismatch {
            declared: count,
            actual: clauses.len(),
        });
    }
    let names = (1..=declared).map(|i| format!("x{i}")).collect();
    CnfFormula::new(names, clauses)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn assignment(bits: &[u8]) -> Assignment {
        Assignment::new(bits.iter().map(|&b| b == 1).collect())
    }

    #[test]
    fn infix_two_variable_formula() {
        let f = CnfFormula::parse_infix("(~a|~b)&(a|b)&a").unwrap();
        assert_eq!(f.variables(), &["a", "b"]);
        assert_eq!(f.clause_widths(), vec![2, 2, 1]);
        assert_eq!(
            f.clauses()[0].literals(),
            &[Literal::negative(0), Literal::negative(1)]
        );
        assert_eq!(f.clauses()[2].literals(), &[Literal::positive(0)]);
    }

    #[test]
    fn infix_minimal_and_three_sat() {
        let f = CnfFormula::parse_infix("a").unwrap();
        assert_eq!(f.variable_count(), 1);
        assert_eq!(f.clauses()[0].literals(), &[Literal::positive(0)]);

        let g = CnfFormula::parse_infix("(a|b|c)&(a|~b|c)&b&~c").unwrap();
        assert_eq!(g.variable_count(), 3);
        assert_eq!(g.clause_widths(), vec![3, 3, 1, 1]);
        assert_eq!(g.max_width(), 3);
    }

    #[test]
    fn infix_first_appearance_order() {
        let f = CnfFormula::parse_infix("(zeta | ~alpha) & alpha").unwrap();
        assert_eq!(f.variables(), &["zeta", "alpha"]);
    }

    #[test]
    fn infix_errors() {
        assert!(matches!(
            CnfFormula::parse_infix("(a|~a)"),
            Err(FormulaError::ComplementaryLiteral { clause: 0, .. })
        ));
        assert!(matches!(
            CnfFormula::parse_infix("a&(b|b)"),
            Err(FormulaError::DuplicateLiteral { clause: 1, .. })
        ));
        assert_eq!(
            CnfFormula::parse_infix("a&()"),
            Err(FormulaError::EmptyClause { offset: 2 })
        );
        assert!(matches!(
            CnfFormula::parse_infix("a&"),
            Err(FormulaError::Syntax { offset: 2, .. })
        ));
        assert!(matches!(
            CnfFormula::parse_infix("(a|b"),
            Err(FormulaError::Syntax { offset: 4, .. })
        ));
        assert!(matches!(
            CnfFormula::parse_infix("a b"),
            Err(FormulaError::Syntax { offset: 2, .. })
        ));
        assert!(matches!(
            CnfFormula::parse_infix("(a&b)"),
            Err(FormulaError::Syntax { offset: 2, .. })
        ));
    }

    #[test]
    fn blank_infix_is_empty_formula() {
        let f = CnfFormula::parse_infix("  ").unwrap();
        assert_eq!(f.clause_count(), 0);
        assert!(f.evaluate(&Assignment::new(vec![])).unwrap());
    }

    #[test]
    fn dimacs_fixtures() {
        let f = CnfFormula::parse_dimacs("p cnf 2 3\n-1 -2 0\n1 2 0\n1 0\n").unwrap();
        let g = CnfFormula::parse_infix("(~a|~b)&(a|b)&a").unwrap();
        assert!(f.structurally_eq(&g));
        assert_eq!(f.variables(), &["x1", "x2"]);

        let one = CnfFormula::parse_dimacs("p cnf 1 1\n1 0\n").unwrap();
        assert_eq!(one.clause_widths(), vec![1]);

        let six = CnfFormula::parse_dimacs("c comment\np cnf 3 3\n1 2 0\n-1 3 0\n-2 0\n").unwrap();
        let six_infix = CnfFormula::parse_infix("(a|b)&(~a|c)&~b").unwrap();
        assert!(six.structurally_eq(&six_infix));
    }

    #[test]
    fn dimacs_clauses_may_span_lines() {
        let f = CnfFormula::parse_dimacs("p cnf 3 2\n1 2\n3 0 -1\n0\n").unwrap();
        assert_eq!(f.clause_widths(), vec![3, 1]);
    }

    #[test]
    fn dimacs_errors() {
        assert_eq!(
            CnfFormula::parse_dimacs("1 0\n"),
            Err(FormulaError::MissingHeader)
        );
        assert_eq!(
            CnfFormula::parse_dimacs(""),
            Err(FormulaError::MissingHeader)
        );
        assert_eq!(
            CnfFormula::parse_dimacs("p cnf 1 1\np cnf 1 1\n1 0\n"),
            Err(FormulaError::DuplicateHeader { line: 2 })
        );
        assert_eq!(
            CnfFormula::parse_dimacs("p cnf 1 2\n1 0\n"),
            Err(FormulaError::ClauseCountMismatch {
                declared: 2,
                actual: 1
            })
        );
        assert_eq!(
            CnfFormula::parse_dimacs("p cnf 1 1\n0\n"),
            Err(FormulaError::DimacsEmptyClause { line: 2 })
        );
        assert_eq!(
            CnfFormula::parse_dimacs("p cnf 2 1\n1 -3 0\n"),
            Err(FormulaError::VariableOutOfRange {
                line: 2,
                index: 3,
                declared: 2
            })
        );
        assert!(matches!(
            CnfFormula::parse_dimacs("p cnf 2 1\n1 2\n"),
            Err(FormulaError::Dimacs { line: 2, .. })
        ));
        assert!(matches!(
            CnfFormula::parse_dimacs("p dnf 2 1\n1 0\n"),
            Err(FormulaError::Dimacs { line: 1, .. })
        ));
        assert!(matches!(
            CnfFormula::parse_dimacs("p cnf 2 1\n1 -1 0\n"),
            Err(FormulaError::ComplementaryLiteral { clause: 0, .. })
        ));
    }

    #[test]
    fn evaluate_fixtures() {
        let f = CnfFormula::parse_infix("(~a|~b)&(a|b)&a").unwrap();
        assert!(f.evaluate(&assignment(&[1, 0])).unwrap());
        assert!(!f.evaluate(&assignment(&[0, 0])).unwrap());
        assert_eq!(
            f.evaluate(&assignment(&[1])),
            Err(FormulaError::AssignmentLength {
                expected: 2,
                actual: 1
            })
        );

        let g = CnfFormula::parse_infix("(a|b|c)&(a|~b|c)&b&~c").unwrap();
        let satisfying: Vec<u64> = (0..8).filter(|&i| g.evaluate_index(i)).collect();
        // a=1 b=1 c=0 packs to 0b011.
        assert_eq!(satisfying, vec![0b011]);
        assert!(g.evaluate(&assignment(&[1, 1, 0])).unwrap());
    }

    #[test]
    fn classify_fixtures() {
        let six = CnfFormula::parse_infix("(a|b)&(~a|c)&~b").unwrap();
        assert_eq!(
            six.classify().unwrap(),
            SatClassification::Unique(assignment(&[1, 0, 1]))
        );

        let contradiction = CnfFormula::parse_infix("a&~a").unwrap();
        assert_eq!(
            contradiction.classify().unwrap(),
            SatClassification::Unsatisfiable
        );

        match CnfFormula::parse_infix("a|b").unwrap().classify().unwrap() {
            SatClassification::Multiple { count, solutions } => {
                assert_eq!(count, 3);
                assert_eq!(solutions.len(), 3);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn classify_limit() {
        let f = CnfFormula::parse_infix("a&b&c").unwrap();
        assert_eq!(
            f.classify_with_limit(2),
            Err(FormulaError::TooManyVariables { count: 3, limit: 2 })
        );
    }

    #[test]
    fn multiple_list_is_capped() {
        let names: Vec<String> = (0..8).map(|i| format!("v{i}")).collect();
        let f = CnfFormula::new(names, vec![vec![Literal::positive(0)]]).unwrap();
        match f.classify().unwrap() {
            SatClassification::Multiple { count, solutions } => {
                assert_eq!(count, 128);
                assert_eq!(solutions.len(), MULTIPLE_SOLUTION_CAP);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn constructor_rejects_bad_tables() {
        let names = vec!["a".to_string(), "a".to_string()];
        assert!(matches!(
            CnfFormula::new(names, vec![]),
            Err(FormulaError::DuplicateVariableName(_))
        ));
        assert!(matches!(
            CnfFormula::new(vec!["a b".to_string()], vec![]),
            Err(FormulaError::InvalidVariableName(_))
        ));
        assert!(matches!(
            CnfFormula::new(vec!["a".to_string()], vec![vec![Literal::positive(1)]]),
            Err(FormulaError::UnknownVariable { .. })
        ));
    }

    #[test]
    fn display_and_dimacs_emit() {
        let f = CnfFormula::parse_infix("(~a | ~b) & (a|b) & a").unwrap();
        assert_eq!(f.to_string(), "(~a|~b)&(a|b)&a");
        assert_eq!(f.to_dimacs(), "p cnf 2 3\n-1 -2 0\n1 2 0\n1 0\n");
        assert_eq!(f.describe(&assignment(&[1, 0])), "a=1 b=0");
    }

    #[test]
    fn assignment_index_packing() {
        let a = Assignment::from_index(3, 0b101);
        assert_eq!(a.values(), &[true, false, true]);
        assert_eq!(a.to_index(), 0b101);
    }
}
