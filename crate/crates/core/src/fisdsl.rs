//! Text format for inference systems (`.fis` files).
//!
//! ```text
//! config    := { var_block } { rule_stmt }
//! var_block := "var" IDENT "in" "[" NUMBER "," NUMBER "]" "{" { term_stmt } "}"
//! term_stmt := "term" IDENT "=" "tri" "(" NUMBER "," NUMBER "," NUMBER ")" ";"
//! rule_stmt := "rule" "if" cond { "and" cond } "then" IDENT "is" IDENT ";"
//! cond      := IDENT "is" IDENT
//! ```
//!
//! `#` starts a comment that runs to the end of the line. Numbers are kept to
//! six significant digits so that serializing and re-parsing is exact.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::fis::{
    Clause, FisConfig, LinguisticVariable, Rule, Term, TriangularMf, LOWER_VARIABLE,
    UPPER_VARIABLE,
};

const SIGNIFICANT_DIGITS: usize = 6;

/// Rounds to six significant digits through the decimal representation.
pub fn round_significant(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses")
}

pub(crate) fn format_number(x: f64) -> String {
    let r = round_significant(x);
    // `-0` would not survive a round trip through `{}` unchanged in meaning
    if r == 0.0 {
        "0".to_string()
    } else {
        format!("{r}")
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Number(f64),
    Punct(char),
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Number(n) => format!("number {n}"),
        Tok::Punct(c) => format!("`{c}`"),
        Tok::Eof => "end of input".to_string(),
    }
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let (start_line, start_col) = (line, col);
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            tokens.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line: start_line,
                column: start_col,
            });
        } else if c.is_ascii_digit() || c == '-' || c == '+' || c == '.' {
            let start = i;
            i += 1;
            while i < chars.len() {
                let d = chars[i];
                let exp_sign = (d == '-' || d == '+') && matches!(chars[i - 1], 'e' | 'E');
                if d.is_ascii_digit() || d == '.' || d == 'e' || d == 'E' || exp_sign {
                    i += 1;
                } else {
                    break;
                }
            }
            let lexeme: String = chars[start..i].iter().collect();
            col += i - start;
            let value: f64 = lexeme.parse().map_err(|_| Error::Syntax {
                line: start_line,
                column: start_col,
                expected: format!("a number, found `{lexeme}`"),
            })?;
            if !value.is_finite() {
                return Err(Error::Syntax {
                    line: start_line,
                    column: start_col,
                    expected: format!("a finite number, found `{lexeme}`"),
                });
            }
            tokens.push(Token {
                tok: Tok::Number(round_significant(value)),
                line: start_line,
                column: start_col,
            });
        } else if "[]{}(),;=".contains(c) {
            i += 1;
            col += 1;
            tokens.push(Token {
                tok: Tok::Punct(c),
                line: start_line,
                column: start_col,
            });
        } else {
            return Err(Error::Syntax {
                line,
                column: col,
                expected: format!("a token, found `{c}`"),
            });
        }
    }
    tokens.push(Token {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

struct Positioned<T> {
    value: T,
    line: usize,
    column: usize,
}

struct ParsedVar {
    name: Positioned<String>,
    domain: (f64, f64),
    terms: Vec<(Positioned<String>, TriangularMf)>,
}

struct ParsedRule {
    antecedents: Vec<(Positioned<String>, Positioned<String>)>,
    consequent: (Positioned<String>, Positioned<String>),
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn advance(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> Error {
        let t = self.peek();
        Error::Syntax {
            line: t.line,
            column: t.column,
            expected: format!("{expected}, found {}", describe(&t.tok)),
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == kw)
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        if self.at_keyword(kw) {
            self.advance();
            Ok(())
        } else {
            Err(self.error(&format!("`{kw}`")))
        }
    }

    fn punct(&mut self, p: char) -> Result<()> {
        if self.peek().tok == Tok::Punct(p) {
            self.advance();
            Ok(())
        } else {
            Err(self.error(&format!("`{p}`")))
        }
    }

    fn ident(&mut self) -> Result<Positioned<String>> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                let t = self.advance();
                Ok(Positioned {
                    value: s,
                    line: t.line,
                    column: t.column,
                })
            }
            _ => Err(self.error("an identifier")),
        }
    }

    fn number(&mut self) -> Result<f64> {
        match self.peek().tok {
            Tok::Number(n) => {
                self.advance();
                Ok(n)
            }
            _ => Err(self.error("a number")),
        }
    }

    fn config(&mut self) -> Result<(Vec<ParsedVar>, Vec<ParsedRule>)> {
        let mut vars = Vec::new();
        while self.at_keyword("var") {
            vars.push(self.var_block()?);
        }
        let mut rules = Vec::new();
        while self.at_keyword("rule") {
            rules.push(self.rule_stmt()?);
        }
        if self.peek().tok != Tok::Eof {
            let expected = if rules.is_empty() {
                "`var`, `rule` or end of input"
            } else {
                "`rule` or end of input"
            };
            return Err(self.error(expected));
        }
        Ok((vars, rules))
    }

    fn var_block(&mut self) -> Result<ParsedVar> {
        self.keyword("var")?;
        let name = self.ident()?;
        self.keyword("in")?;
        let open = self.peek().clone();
        self.punct('[')?;
        let lo = self.number()?;
        self.punct(',')?;
        let hi = self.number()?;
        self.punct(']')?;
        if lo >= hi {
            return Err(Error::Domain {
                reason: format!("empty domain [{lo}, {hi}] for `{}`", name.value),
                line: open.line,
                column: open.column,
            });
        }
        self.punct('{')?;
        let mut terms = Vec::new();
        while self.at_keyword("term") {
            terms.push(self.term_stmt((lo, hi))?);
        }
        self.punct('}')?;
        Ok(ParsedVar {
            name,
            domain: (lo, hi),
            terms,
        })
    }

    fn term_stmt(&mut self, (lo, hi): (f64, f64)) -> Result<(Positioned<String>, TriangularMf)> {
        self.keyword("term")?;
        let name = self.ident()?;
        self.punct('=')?;
        let shape = self.peek().clone();
        self.keyword("tri")?;
        self.punct('(')?;
        let a = self.number()?;
        self.punct(',')?;
        let b = self.number()?;
        self.punct(',')?;
        let c = self.number()?;
        self.punct(')')?;
        self.punct(';')?;
        let domain_error = |reason: String| Error::Domain {
            reason,
            line: shape.line,
            column: shape.column,
        };
        if a > b || b > c {
            return Err(domain_error(format!(
                "term `{}`: tri({a}, {b}, {c}) needs a <= b <= c",
                name.value
            )));
        }
        if a < lo || c > hi {
            return Err(domain_error(format!(
                "term `{}`: tri({a}, {b}, {c}) leaves the domain [{lo}, {hi}]",
                name.value
            )));
        }
        Ok((name, TriangularMf { a, b, c }))
    }

    fn rule_stmt(&mut self) -> Result<ParsedRule> {
        self.keyword("rule")?;
        self.keyword("if")?;
        let mut antecedents = vec![self.cond()?];
        while self.at_keyword("and") {
            self.advance();
            antecedents.push(self.cond()?);
        }
        self.keyword("then")?;
        let consequent = self.cond()?;
        self.punct(';')?;
        Ok(ParsedRule {
            antecedents,
            consequent,
        })
    }

    fn cond(&mut self) -> Result<(Positioned<String>, Positioned<String>)> {
        let var = self.ident()?;
        self.keyword("is")?;
        let term = self.ident()?;
        Ok((var, term))
    }
}

/// Parses `.fis` source into a validated configuration.
pub fn parse_fis(text: &str) -> Result<FisConfig> {
    let mut parser = Parser {
        tokens: lex(text)?,
        pos: 0,
    };
    let (vars, rules) = parser.config()?;

    let mut by_name: HashMap<&str, &ParsedVar> = HashMap::new();
    for v in &vars {
        if by_name.insert(&v.name.value, v).is_some() {
            return Err(duplicate(&v.name));
        }
        let mut seen = HashSet::new();
        for (t, _) in &v.terms {
            if !seen.insert(t.value.as_str()) {
                return Err(duplicate(t));
            }
        }
    }

    let eof = parser.peek();
    let Some(first_rule) = rules.first() else {
        return Err(Error::Structure {
            reason: "rule base is empty".into(),
            line: eof.line,
            column: eof.column,
        });
    };

    for (index, rule) in rules.iter().enumerate() {
        for (var, term) in rule.antecedents.iter().chain([&rule.consequent]) {
            let resolved = by_name
                .get(var.value.as_str())
                .map(|v| v.terms.iter().any(|(t, _)| t.value == term.value));
            match resolved {
                Some(true) => {}
                Some(false) => {
                    return Err(Error::UnknownTerm {
                        rule: index + 1,
                        name: term.value.clone(),
                        line: term.line,
                        column: term.column,
                    })
                }
                None => {
                    return Err(Error::UnknownTerm {
                        rule: index + 1,
                        name: var.value.clone(),
                        line: var.line,
                        column: var.column,
                    })
                }
            }
        }
    }

    let output = &first_rule.consequent.0;
    for rule in &rules {
        let c = &rule.consequent.0;
        if c.value != output.value {
            return Err(Error::Structure {
                reason: format!(
                    "ambiguous output variable: consequents name both `{}` and `{}`",
                    output.value, c.value
                ),
                line: c.line,
                column: c.column,
            });
        }
        if let Some((v, _)) = rule.antecedents.iter().find(|(v, _)| v.value == output.value) {
            return Err(Error::Structure {
                reason: format!("output variable `{}` used as an input", v.value),
                line: v.line,
                column: v.column,
            });
        }
    }
    for v in &vars {
        let n = v.name.value.as_str();
        if n != output.value && n != LOWER_VARIABLE && n != UPPER_VARIABLE {
            return Err(Error::Structure {
                reason: format!(
                    "unexpected input variable `{n}`; inputs are `{LOWER_VARIABLE}` and `{UPPER_VARIABLE}`"
                ),
                line: v.name.line,
                column: v.name.column,
            });
        }
    }
    for required in [LOWER_VARIABLE, UPPER_VARIABLE] {
        if !by_name.contains_key(required) {
            return Err(Error::Structure {
                reason: format!("missing input variable `{required}`"),
                line: 1,
                column: 1,
            });
        }
    }

    let variables = vars
        .iter()
        .map(|v| {
            let terms = v
                .terms
                .iter()
                .map(|(n, mf)| Term {
                    name: n.value.clone(),
                    mf: *mf,
                })
                .collect();
            LinguisticVariable::new(v.name.value.clone(), v.domain, terms)
        })
        .collect::<Result<Vec<_>>>()?;
    let rules = rules
        .iter()
        .map(|r| {
            Rule::new(
                r.antecedents
                    .iter()
                    .map(|(v, t)| Clause::new(v.value.clone(), t.value.clone()))
                    .collect(),
                Clause::new(r.consequent.0.value.clone(), r.consequent.1.value.clone()),
            )
        })
        .collect();
    FisConfig::new(variables, rules)
}

fn duplicate(name: &Positioned<String>) -> Error {
    Error::DuplicateName {
        name: name.value.clone(),
        line: name.line,
        column: name.column,
    }
}

pub fn load_fis(path: &Path) -> Result<FisConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_fis(&text)
}

/// Canonical text: variables sorted by name (terms in declaration order),
/// then rules in order.
pub fn serialize_fis(config: &FisConfig) -> String {
    let mut out = String::new();
    for var in config.variables() {
        let (lo, hi) = var.domain;
        let _ = writeln!(
            out,
            "var {} in [{}, {}] {{",
            var.name,
            format_number(lo),
            format_number(hi)
        );
        for t in &var.terms {
            let _ = writeln!(
                out,
                "    term {} = tri({}, {}, {});",
                t.name,
                format_number(t.mf.a),
                format_number(t.mf.b),
                format_number(t.mf.c)
            );
        }
        out.push_str("}\n\n");
    }
    for rule in config.rules() {
        let conds: Vec<String> = rule
            .antecedents
            .iter()
            .map(|c| format!("{} is {}", c.variable, c.term))
            .collect();
        let _ = writeln!(
            out,
            "rule if {} then {} is {};",
            conds.join(" and "),
            rule.consequent.variable,
            rule.consequent.term
        );
    }
    out
}

/// Built-in configurations with the membership parameters of the two
/// documented models and the nine-rule base.
pub mod presets {
    use super::*;

    pub const MODEL1_SOURCE: &str = include_str!("../../../configs/model1.fis");
    pub const MODEL2_SOURCE: &str = include_str!("../../../configs/model2.fis");

    pub fn model1() -> FisConfig {
        parse_fis(MODEL1_SOURCE).expect("bundled model1.fis is valid")
    }

    pub fn model2() -> FisConfig {
        parse_fis(MODEL2_SOURCE).expect("bundled model2.fis is valid")
    }

    pub fn by_name(name: &str) -> Option<FisConfig> {
        match name {
            "model1" => Some(model1()),
            "model2" => Some(model2()),
            _ => None,
        }
    }

    /// Replaces `lower is average and upper is poor -> medium` with the
    /// rule as originally printed, whose antecedent tests the upper input
    /// twice (`upper is average and upper is poor`).
    pub fn with_verbatim_rule2(config: &FisConfig) -> Result<FisConfig> {
        let corrected = Rule::new(
            vec![
                Clause::new(LOWER_VARIABLE, "average"),
                Clause::new(UPPER_VARIABLE, "poor"),
            ],
            Clause::new(config.output().name.clone(), "medium"),
        );
        let verbatim = Rule::new(
            vec![
                Clause::new(UPPER_VARIABLE, "average"),
                Clause::new(UPPER_VARIABLE, "poor"),
            ],
            corrected.consequent.clone(),
        );
        let mut rules = config.rules().to_vec();
        let slot = rules
            .iter_mut()
            .find(|r| **r == corrected)
            .ok_or_else(|| {
                Error::InvalidConfig(
                    "no `similarity_lower is average and similarity_upper is poor` rule to replace"
                        .into(),
                )
            })?;
        *slot = verbatim;
        let vars = config.variables().into_iter().cloned().collect();
        FisConfig::new(vars, rules)?.with_resolution(config.resolution())
    }
}
