use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use super::{
    AbstractArgument, AbstractBody, ArgumentKind, Scenario, ScenarioBody, ScenarioKind,
    StructuredBody, RESERVED_WORDS,
};
use crate::ids::{AgentId, ArgumentId, Atom, RuleId, ValueId};
use crate::norms::{Alias, Belief, DerivationTerm, Literal, Norm, Standpoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ParseErrorKind {
    /// Malformed statement.
    Syntax,
    /// An identifier that does not resolve.
    Reference,
    /// Well-formed but inconsistent content.
    Validation,
    /// Input is not UTF-8.
    Encoding,
}

/// A positioned scenario error. `line` and `column` are 1-based; columns count
/// characters.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
    pub message: String,
    pub expected: Option<Vec<String>>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.column, self.message
        )?;
        if let Some(expected) = &self.expected {
            write!(f, " (expected {})", expected.join(" or "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pos {
    line: usize,
    column: usize,
}

impl Pos {
    fn error(self, kind: ParseErrorKind, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            kind,
            message: message.into(),
            expected: None,
        }
    }

    fn syntax(self, message: impl Into<String>) -> ParseError {
        self.error(ParseErrorKind::Syntax, message)
    }

    fn reference(self, message: impl Into<String>) -> ParseError {
        self.error(ParseErrorKind::Reference, message)
    }

    fn invalid(self, message: impl Into<String>) -> ParseError {
        self.error(ParseErrorKind::Validation, message)
    }
}

type Result<T, E = ParseError> = std::result::Result<T, E>;

/// Parses a scenario from raw bytes; invalid UTF-8 is reported at the
/// position of the first offending byte.
pub fn parse_scenario_bytes(source: &[u8]) -> Result<Scenario> {
    match std::str::from_utf8(source) {
        Ok(text) => parse_scenario(text),
        Err(e) => {
            let valid = std::str::from_utf8(&source[..e.valid_up_to()])
                .expect("prefix up to valid_up_to is UTF-8");
            let line = valid.matches('\n').count() + 1;
            let column = valid.rsplit('\n').next().unwrap_or("").chars().count() + 1;
            Err(Pos { line, column }.error(ParseErrorKind::Encoding, "invalid UTF-8"))
        }
    }
}

pub fn parse_scenario(source: &str) -> Result<Scenario> {
    let mut statements = Vec::new();
    let mut end = Pos { line: 1, column: 1 };
    for (i, raw) in source.split('\n').enumerate() {
        let text = raw.strip_suffix('\r').unwrap_or(raw);
        let line = i + 1;
        end = Pos {
            line,
            column: text.chars().count() + 1,
        };
        let tokens = lex(line, text)?;
        if tokens.is_empty() {
            continue;
        }
        let mut parser = LineParser {
            line,
            tokens: &tokens,
            at: 0,
            end_column: end.column,
        };
        statements.push(parser.statement()?);
    }
    Builder::default().build(statements, end)
}

// ---------------------------------------------------------------------------
// Lexing

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Negated(String),
    Colon,
    Comma,
    FatArrow,
    Arrow,
    Geq,
    Eq,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("`{w}`"),
            Tok::Negated(w) => format!("`~{w}`"),
            Tok::Colon => "`:`".into(),
            Tok::Comma => "`,`".into(),
            Tok::FatArrow => "`=>`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Geq => "`>=`".into(),
            Tok::Eq => "`=`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    column: usize,
}

fn is_word_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn lex(line: usize, text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        let pos = Pos { line, column };
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let next = chars.get(i + 1).copied();
        let (tok, width) = match c {
            ':' => (Tok::Colon, 1),
            ',' => (Tok::Comma, 1),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            '=' if next == Some('>') => (Tok::FatArrow, 2),
            '=' => (Tok::Eq, 1),
            '-' if next == Some('>') => (Tok::Arrow, 2),
            '>' if next == Some('=') => (Tok::Geq, 2),
            '~' => {
                let len = chars[i + 1..]
                    .iter()
                    .take_while(|&&c| is_word_char(c))
                    .count();
                if len == 0 {
                    return Err(Pos {
                        line,
                        column: column + 1,
                    }
                    .syntax("expected an atom after `~`"));
                }
                let word: String = chars[i + 1..i + 1 + len].iter().collect();
                (Tok::Negated(word), len + 1)
            }
            c if is_word_char(c) => {
                let len = chars[i..].iter().take_while(|&&c| is_word_char(c)).count();
                (Tok::Word(chars[i..i + len].iter().collect()), len)
            }
            other => return Err(pos.syntax(format!("unexpected character {other:?}"))),
        };
        tokens.push(Token { tok, column });
        i += width;
    }
    Ok(tokens)
}

// ---------------------------------------------------------------------------
// Statements

type Sp<T> = (T, Pos);

#[derive(Debug)]
enum Stmt {
    Version(Sp<String>),
    Scenario(String),
    Kind(ScenarioKind),
    Stakeholders(Vec<Sp<AgentId>>),
    Values(Vec<Sp<ValueId>>),
    Order(Vec<Sp<ValueId>>),
    Fact(Sp<Literal>),
    Assumption(Sp<Literal>),
    Belief {
        id: Sp<RuleId>,
        antecedents: Vec<Sp<Literal>>,
        consequent: Sp<Literal>,
    },
    Norm {
        id: Sp<RuleId>,
        stakeholder: Sp<AgentId>,
        values: Vec<Sp<ValueId>>,
        antecedents: Vec<Sp<Literal>>,
        consequent: Sp<Literal>,
    },
    Standpoint {
        id: Sp<RuleId>,
        stakeholder: Sp<AgentId>,
        antecedents: Vec<Sp<Literal>>,
        target: Sp<RuleId>,
    },
    Alias {
        name: Sp<ArgumentId>,
        term: DerivationTerm,
        rules: Vec<(Sp<RuleId>, usize)>,
    },
    Argument {
        id: Sp<ArgumentId>,
        kind: ArgumentKind,
        values: Vec<Sp<ValueId>>,
        values_pos: Option<Pos>,
        agents: Vec<Sp<AgentId>>,
        conclusion: Option<Literal>,
    },
    Attack {
        from: Sp<ArgumentId>,
        to: Sp<ArgumentId>,
    },
}

const STATEMENTS: [&str; 14] = [
    "version",
    "scenario",
    "kind",
    "stakeholders",
    "values",
    "order",
    "fact",
    "assumption",
    "belief",
    "norm",
    "standpoint",
    "alias",
    "argument",
    "attack",
];

struct LineParser<'t> {
    line: usize,
    tokens: &'t [Token],
    at: usize,
    end_column: usize,
}

fn name<T: std::str::FromStr>(word: &str) -> T
where
    T::Err: fmt::Debug,
{
    word.parse().expect("lexed words are valid identifiers")
}

impl LineParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.at).map(|t| &t.tok)
    }

    fn peek_word(&self) -> Option<&str> {
        match self.peek() {
            Some(Tok::Word(w)) => Some(w),
            _ => None,
        }
    }

    fn here(&self) -> Pos {
        Pos {
            line: self.line,
            column: self
                .tokens
                .get(self.at)
                .map_or(self.end_column, |t| t.column),
        }
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        let found = match self.peek() {
            Some(tok) => format!("unexpected {}", tok.describe()),
            None => "unexpected end of line".to_owned(),
        };
        ParseError {
            expected: Some(expected.iter().map(|s| s.to_string()).collect()),
            ..self.here().syntax(found)
        }
    }

    fn word(&mut self, what: &str) -> Result<Sp<String>> {
        let pos = self.here();
        match self.peek() {
            Some(Tok::Word(w)) => {
                let w = w.clone();
                self.at += 1;
                Ok((w, pos))
            }
            _ => Err(self.unexpected(&[what])),
        }
    }

    fn ident<T: std::str::FromStr>(&mut self, what: &str) -> Result<Sp<T>>
    where
        T::Err: fmt::Debug,
    {
        self.word(what).map(|(w, pos)| (name(&w), pos))
    }

    fn keyword(&mut self, keyword: &str) -> Result<Pos> {
        let pos = self.here();
        if self.peek_word() == Some(keyword) {
            self.at += 1;
            Ok(pos)
        } else {
            Err(self.unexpected(&[&format!("`{keyword}`")]))
        }
    }

    fn punct(&mut self, tok: Tok) -> Result<Pos> {
        let pos = self.here();
        if self.peek() == Some(&tok) {
            self.at += 1;
            Ok(pos)
        } else {
            Err(self.unexpected(&[&tok.describe()]))
        }
    }

    fn literal(&mut self) -> Result<Sp<Literal>> {
        let pos = self.here();
        let lit = match self.peek() {
            Some(Tok::Word(w)) => Literal::positive(name::<Atom>(w)),
            Some(Tok::Negated(w)) => Literal::negative(name::<Atom>(w)),
            _ => return Err(self.unexpected(&["literal"])),
        };
        self.at += 1;
        Ok((lit, pos))
    }

    /// Comma-separated literals up to (not including) `stop`; may be empty.
    fn literals_until(&mut self, stop: &Tok, stop_name: &str) -> Result<Vec<Sp<Literal>>> {
        let mut out = Vec::new();
        if self.peek() == Some(stop) {
            return Ok(out);
        }
        loop {
            out.push(self.literal()?);
            match self.peek() {
                Some(Tok::Comma) => self.at += 1,
                Some(t) if t == stop => return Ok(out),
                _ => return Err(self.unexpected(&["`,`", stop_name])),
            }
        }
    }

    /// Words up to the end of line or one of the `stop` keywords; at least one.
    fn word_list<T: std::str::FromStr>(&mut self, what: &str, stop: &[&str]) -> Result<Vec<Sp<T>>>
    where
        T::Err: fmt::Debug,
    {
        let mut out = vec![self.ident(what)?];
        while let Some(w) = self.peek_word() {
            if stop.contains(&w) {
                break;
            }
            out.push(self.ident(what)?);
        }
        Ok(out)
    }

    fn end(&mut self) -> Result<()> {
        if self.peek().is_some() {
            Err(self.unexpected(&["end of line"]))
        } else {
            Ok(())
        }
    }

    fn statement(&mut self) -> Result<(Stmt, Pos)> {
        let start = self.here();
        let (keyword, _) = self
            .word("statement")
            .map_err(|_| self.unexpected(&STATEMENTS))?;
        let stmt = match keyword.as_str() {
            "version" => Stmt::Version(self.word("version number")?),
            "scenario" => Stmt::Scenario(self.word("scenario name")?.0),
            "kind" => {
                let kind = match self.peek_word() {
                    Some("abstract") => ScenarioKind::Abstract,
                    Some("structured") => ScenarioKind::Structured,
                    _ => return Err(self.unexpected(&["`abstract`", "`structured`"])),
                };
                self.at += 1;
                Stmt::Kind(kind)
            }
            "stakeholders" => Stmt::Stakeholders(self.word_list("stakeholder", &[])?),
            "values" => Stmt::Values(self.word_list("value", &[])?),
            "order" => {
                let mut chain = vec![self.ident("value")?];
                self.punct(Tok::Geq)?;
                chain.push(self.ident("value")?);
                while self.peek() == Some(&Tok::Geq) {
                    self.at += 1;
                    chain.push(self.ident("value")?);
                }
                Stmt::Order(chain)
            }
            "fact" => Stmt::Fact(self.literal()?),
            "assumption" => Stmt::Assumption(self.literal()?),
            "belief" => {
                let id = self.ident("belief id")?;
                self.punct(Tok::Colon)?;
                let antecedents = self.literals_until(&Tok::FatArrow, "`=>`")?;
                self.punct(Tok::FatArrow)?;
                let consequent = self.literal()?;
                Stmt::Belief {
                    id,
                    antecedents,
                    consequent,
                }
            }
            "norm" => {
                let id = self.ident("norm id")?;
                self.keyword("by")?;
                let stakeholder = self.ident("stakeholder")?;
                let mut values = Vec::new();
                if self.peek_word() == Some("values") {
                    self.at += 1;
                    values.push(self.ident("value")?);
                    while self.peek_word().is_some() {
                        values.push(self.ident("value")?);
                    }
                }
                if self.peek() != Some(&Tok::Colon) {
                    return Err(if values.is_empty() {
                        self.unexpected(&["`values`", "`:`"])
                    } else {
                        self.unexpected(&["value", "`:`"])
                    });
                }
                self.at += 1;
                let antecedents = self.literals_until(&Tok::FatArrow, "`=>`")?;
                self.punct(Tok::FatArrow)?;
                let consequent = self.literal()?;
                Stmt::Norm {
                    id,
                    stakeholder,
                    values,
                    antecedents,
                    consequent,
                }
            }
            "standpoint" => {
                let id = self.ident("standpoint id")?;
                self.keyword("by")?;
                let stakeholder = self.ident("stakeholder")?;
                self.punct(Tok::Colon)?;
                let stop = Tok::Word("undercuts".into());
                let antecedents = self.literals_until(&stop, "`undercuts`")?;
                self.keyword("undercuts")?;
                let target = self.ident("norm id")?;
                Stmt::Standpoint {
                    id,
                    stakeholder,
                    antecedents,
                    target,
                }
            }
            "alias" => {
                let name = self.ident("argument name")?;
                self.punct(Tok::Eq)?;
                let mut rules = Vec::new();
                let term = self.term(&mut rules, 0)?;
                Stmt::Alias { name, term, rules }
            }
            "argument" => {
                let id = self.ident("argument name")?;
                let kind = match self.peek_word() {
                    Some("practical") => ArgumentKind::Practical,
                    Some("epistemic") => ArgumentKind::Epistemic,
                    _ => return Err(self.unexpected(&["`practical`", "`epistemic`"])),
                };
                self.at += 1;
                let mut values = Vec::new();
                let mut values_pos = None;
                let mut agents = Vec::new();
                let mut conclusion = None;
                if self.peek_word() == Some("values") {
                    values_pos = Some(self.here());
                    self.at += 1;
                    values = self.word_list("value", &["by", "concludes"])?;
                }
                if self.peek_word() == Some("by") {
                    self.at += 1;
                    agents = self.word_list("stakeholder", &["concludes"])?;
                }
                if self.peek_word() == Some("concludes") {
                    self.at += 1;
                    conclusion = Some(self.literal()?.0);
                }
                if self.peek().is_some() {
                    let mut expected = Vec::new();
                    if values_pos.is_none() && agents.is_empty() {
                        expected.push("`values`");
                    }
                    if agents.is_empty() {
                        expected.push("`by`");
                    }
                    expected.extend(["`concludes`", "end of line"]);
                    if conclusion.is_some() {
                        expected = vec!["end of line"];
                    }
                    return Err(self.unexpected(&expected));
                }
                Stmt::Argument {
                    id,
                    kind,
                    values,
                    values_pos,
                    agents,
                    conclusion,
                }
            }
            "attack" => {
                let from = self.ident("argument name")?;
                self.punct(Tok::Arrow)?;
                let to = self.ident("argument name")?;
                Stmt::Attack { from, to }
            }
            other => {
                return Err(ParseError {
                    expected: Some(STATEMENTS.iter().map(|s| format!("`{s}`")).collect()),
                    ..start.syntax(format!("unknown statement `{other}`"))
                })
            }
        };
        self.end()?;
        Ok((stmt, start))
    }

    const MAX_TERM_DEPTH: usize = 64;

    fn term(
        &mut self,
        rules: &mut Vec<(Sp<RuleId>, usize)>,
        depth: usize,
    ) -> Result<DerivationTerm> {
        if depth > Self::MAX_TERM_DEPTH {
            return Err(self.here().syntax("derivation term nested too deeply"));
        }
        let is_apply = matches!(self.peek(), Some(Tok::Word(_)))
            && matches!(
                self.tokens.get(self.at + 1).map(|t| &t.tok),
                Some(Tok::LParen)
            );
        if !is_apply {
            return Ok(DerivationTerm::Premise(self.literal()?.0));
        }
        let rule: Sp<RuleId> = self.ident("rule id")?;
        self.punct(Tok::LParen)?;
        let mut args = Vec::new();
        if self.peek() != Some(&Tok::RParen) {
            loop {
                args.push(self.term(rules, depth + 1)?);
                match self.peek() {
                    Some(Tok::Comma) => self.at += 1,
                    Some(Tok::RParen) => break,
                    _ => return Err(self.unexpected(&["`,`", "`)`"])),
                }
            }
        }
        self.punct(Tok::RParen)?;
        rules.push((rule.clone(), args.len()));
        Ok(DerivationTerm::Apply { rule: rule.0, args })
    }
}

// ---------------------------------------------------------------------------
// Header checks, reference resolution and validation

#[derive(Default)]
struct Builder {
    stakeholders: BTreeSet<AgentId>,
    values: BTreeSet<ValueId>,
}

fn reserved_check(word: &str, pos: Pos, what: &str) -> Result<()> {
    if RESERVED_WORDS.contains(&word) {
        Err(pos.invalid(format!("`{word}` is a keyword and cannot name a {what}")))
    } else {
        Ok(())
    }
}

impl Builder {
    fn build(mut self, statements: Vec<(Stmt, Pos)>, end: Pos) -> Result<Scenario> {
        let mut rest = statements.into_iter().peekable();
        if let Some((Stmt::Version((v, pos)), _)) = rest.peek() {
            if v != "1" {
                return Err(pos.invalid(format!("unsupported version `{v}` (only 1 is supported)")));
            }
            rest.next();
        }
        let header_error = |found: Option<Pos>, what: &str| ParseError {
            expected: Some(vec![format!("`{what}`")]),
            ..found
                .unwrap_or(end)
                .syntax(format!("missing `{what}` declaration"))
        };
        let name = match rest.next() {
            Some((Stmt::Scenario(name), _)) => name,
            other => return Err(header_error(other.map(|(_, p)| p), "scenario")),
        };
        let kind = match rest.next() {
            Some((Stmt::Kind(kind), _)) => kind,
            other => return Err(header_error(other.map(|(_, p)| p), "kind")),
        };
        let body: Vec<(Stmt, Pos)> = rest.collect();

        // Declarations first so that later statements may reference them
        // regardless of order.
        let mut scenario_values = Vec::new();
        let mut stakeholders = Vec::new();
        for (stmt, _) in &body {
            match stmt {
                Stmt::Stakeholders(list) => {
                    for (agent, pos) in list {
                        reserved_check(agent.as_str(), *pos, "stakeholder")?;
                        if !self.stakeholders.insert(agent.clone()) {
                            return Err(
                                pos.invalid(format!("stakeholder `{agent}` declared twice"))
                            );
                        }
                        stakeholders.push(agent.clone());
                    }
                }
                Stmt::Values(list) => {
                    for (value, pos) in list {
                        reserved_check(value.as_str(), *pos, "value")?;
                        if !self.values.insert(value.clone()) {
                            return Err(pos.invalid(format!("value `{value}` declared twice")));
                        }
                        scenario_values.push(value.clone());
                    }
                }
                _ => {}
            }
        }

        let mut order = Vec::new();
        for (stmt, pos) in &body {
            match stmt {
                Stmt::Version(_) | Stmt::Scenario(_) | Stmt::Kind(_) => {
                    return Err(pos.syntax("header statements must appear once, at the top"));
                }
                Stmt::Order(chain) => {
                    for (v, p) in chain {
                        self.value(v, *p)?;
                    }
                    order.push(chain.iter().map(|(v, _)| v.clone()).collect());
                }
                _ => {}
            }
        }

        let body = match kind {
            ScenarioKind::Abstract => ScenarioBody::Abstract(self.abstract_body(body)?),
            ScenarioKind::Structured => ScenarioBody::Structured(self.structured_body(body)?),
        };
        Ok(Scenario {
            name,
            stakeholders,
            values: scenario_values,
            order,
            body,
        })
    }

    fn value(&self, value: &ValueId, pos: Pos) -> Result<()> {
        if self.values.contains(value) {
            Ok(())
        } else {
            Err(pos.reference(format!("undeclared value `{value}`")))
        }
    }

    fn stakeholder(&self, agent: &AgentId, pos: Pos) -> Result<()> {
        if self.stakeholders.contains(agent) {
            Ok(())
        } else {
            Err(pos.reference(format!("undeclared stakeholder `{agent}`")))
        }
    }

    fn abstract_body(&self, body: Vec<(Stmt, Pos)>) -> Result<AbstractBody> {
        let mut out = AbstractBody::default();
        let mut kinds = BTreeMap::new();
        let mut attacks = Vec::new();
        for (stmt, pos) in body {
            match stmt {
                Stmt::Stakeholders(_) | Stmt::Values(_) | Stmt::Order(_) => {}
                Stmt::Argument {
                    id,
                    kind,
                    values,
                    values_pos,
                    agents,
                    conclusion,
                } => {
                    if kinds.insert(id.0.clone(), kind).is_some() {
                        return Err(id.1.invalid(format!("argument `{}` declared twice", id.0)));
                    }
                    if kind == ArgumentKind::Epistemic {
                        if let Some(p) = values_pos {
                            return Err(p.invalid(format!(
                                "epistemic argument `{}` cannot carry values",
                                id.0
                            )));
                        }
                    }
                    unique(&values, "value")?;
                    unique(&agents, "stakeholder")?;
                    for (v, p) in &values {
                        self.value(v, *p)?;
                    }
                    for (a, p) in &agents {
                        self.stakeholder(a, *p)?;
                    }
                    out.arguments.push(AbstractArgument {
                        id: id.0,
                        kind,
                        values: values.into_iter().map(|(v, _)| v).collect(),
                        agents: agents.into_iter().map(|(a, _)| a).collect(),
                        conclusion,
                    });
                }
                Stmt::Attack { from, to } => attacks.push((from, to)),
                other => return Err(wrong_kind(&other, pos, ScenarioKind::Abstract)),
            }
        }
        let mut seen = BTreeSet::new();
        for (from, to) in attacks {
            let kind_of = |(id, pos): &Sp<ArgumentId>| {
                kinds
                    .get(id)
                    .copied()
                    .ok_or_else(|| pos.reference(format!("undeclared argument `{id}`")))
            };
            let from_kind = kind_of(&from)?;
            let to_kind = kind_of(&to)?;
            if from_kind == ArgumentKind::Practical && to_kind == ArgumentKind::Epistemic {
                return Err(from.1.invalid(format!(
                    "practical argument `{}` cannot attack epistemic argument `{}`",
                    from.0, to.0
                )));
            }
            if !seen.insert((from.0.clone(), to.0.clone())) {
                return Err(from
                    .1
                    .invalid(format!("attack `{} -> {}` listed twice", from.0, to.0)));
            }
            out.attacks.push((from.0, to.0));
        }
        Ok(out)
    }

    fn structured_body(&self, body: Vec<(Stmt, Pos)>) -> Result<StructuredBody> {
        let mut out = StructuredBody::default();
        // rule id -> (antecedent count, is norm)
        let mut rules: BTreeMap<RuleId, (usize, bool)> = BTreeMap::new();
        for (stmt, _) in &body {
            let (id, count, is_norm) = match stmt {
                Stmt::Norm {
                    id, antecedents, ..
                } => (id, antecedents.len(), true),
                Stmt::Belief {
                    id, antecedents, ..
                } => (id, antecedents.len(), false),
                Stmt::Standpoint {
                    id, antecedents, ..
                } => (id, antecedents.len(), false),
                _ => continue,
            };
            if rules.insert(id.0.clone(), (count, is_norm)).is_some() {
                return Err(id.1.invalid(format!("rule id `{}` declared twice", id.0)));
            }
        }

        let mut facts = BTreeSet::new();
        let mut aliases = BTreeSet::new();
        let mut pending_assumptions = Vec::new();
        let mut pending_aliases = Vec::new();
        for (stmt, pos) in body {
            match stmt {
                Stmt::Stakeholders(_) | Stmt::Values(_) | Stmt::Order(_) => {}
                Stmt::Fact((lit, p)) => {
                    if facts.contains(&lit) {
                        return Err(p.invalid(format!("fact `{lit}` stated twice")));
                    }
                    if facts.contains(&lit.complement()) {
                        return Err(p.invalid(format!(
                            "fact `{lit}` contradicts fact `{}`",
                            lit.complement()
                        )));
                    }
                    facts.insert(lit.clone());
                    out.facts.push(lit);
                }
                Stmt::Assumption(a) => pending_assumptions.push(a),
                Stmt::Belief {
                    id,
                    antecedents,
                    consequent,
                } => {
                    check_rule_body(&id.0, &antecedents, &consequent)?;
                    out.beliefs.push(Belief {
                        id: id.0,
                        antecedents: antecedents.into_iter().map(|(l, _)| l).collect(),
                        consequent: consequent.0,
                    });
                }
                Stmt::Norm {
                    id,
                    stakeholder,
                    values,
                    antecedents,
                    consequent,
                } => {
                    self.stakeholder(&stakeholder.0, stakeholder.1)?;
                    unique(&values, "value")?;
                    for (v, p) in &values {
                        self.value(v, *p)?;
                    }
                    check_rule_body(&id.0, &antecedents, &consequent)?;
                    out.norms.push(Norm {
                        id: id.0,
                        stakeholder: stakeholder.0,
                        values: values.into_iter().map(|(v, _)| v).collect(),
                        antecedents: antecedents.into_iter().map(|(l, _)| l).collect(),
                        consequent: consequent.0,
                    });
                }
                Stmt::Standpoint {
                    id,
                    stakeholder,
                    antecedents,
                    target,
                } => {
                    self.stakeholder(&stakeholder.0, stakeholder.1)?;
                    unique(&antecedents, "antecedent")?;
                    match rules.get(&target.0) {
                        Some((_, true)) => {}
                        Some((_, false)) => {
                            return Err(target.1.reference(format!("`{}` is not a norm", target.0)))
                        }
                        None => {
                            return Err(target
                                .1
                                .reference(format!("undeclared norm `{}`", target.0)))
                        }
                    }
                    out.standpoints.push(Standpoint {
                        id: id.0,
                        stakeholder: stakeholder.0,
                        antecedents: antecedents.into_iter().map(|(l, _)| l).collect(),
                        target_norm: target.0,
                    });
                }
                Stmt::Alias {
                    name,
                    term,
                    rules: used,
                } => {
                    if !aliases.insert(name.0.clone()) {
                        return Err(name.1.invalid(format!("alias `{}` declared twice", name.0)));
                    }
                    for ((rule, p), arity) in &used {
                        match rules.get(rule) {
                            None => return Err(p.reference(format!("undeclared rule `{rule}`"))),
                            Some((count, _)) if count != arity => {
                                return Err(p.invalid(format!(
                                    "rule `{rule}` takes {count} antecedent(s), alias gives {arity}"
                                )))
                            }
                            Some(_) => {}
                        }
                    }
                    pending_aliases.push((name.0, term, pos));
                }
                other => return Err(wrong_kind(&other, pos, ScenarioKind::Structured)),
            }
        }

        let mut assumed = BTreeSet::new();
        for (lit, p) in pending_assumptions {
            if facts.contains(&lit) {
                return Err(p.invalid(format!("assumption `{lit}` is already a fact")));
            }
            if assumed.contains(&lit) {
                return Err(p.invalid(format!("assumption `{lit}` stated twice")));
            }
            if assumed.contains(&lit.complement()) {
                return Err(p.invalid(format!(
                    "assumption `{lit}` contradicts assumption `{}`",
                    lit.complement()
                )));
            }
            assumed.insert(lit.clone());
            out.assumptions.push(lit);
        }
        for (name, term, pos) in pending_aliases {
            check_alias_leaves(&term, &facts, &assumed, pos)?;
            out.aliases.push(Alias { name, term });
        }
        Ok(out)
    }
}

fn unique<T: Ord + fmt::Display>(items: &[Sp<T>], what: &str) -> Result<()> {
    let mut seen = BTreeSet::new();
    for (item, pos) in items {
        if !seen.insert(item) {
            return Err(pos.invalid(format!("{what} `{item}` listed twice")));
        }
    }
    Ok(())
}

fn check_rule_body(
    id: &RuleId,
    antecedents: &[Sp<Literal>],
    consequent: &Sp<Literal>,
) -> Result<()> {
    unique(antecedents, "antecedent")?;
    if antecedents.iter().any(|(l, _)| l == &consequent.0) {
        return Err(consequent
            .1
            .invalid(format!("rule `{id}` concludes one of its own antecedents")));
    }
    Ok(())
}

fn check_alias_leaves(
    term: &DerivationTerm,
    facts: &BTreeSet<Literal>,
    assumed: &BTreeSet<Literal>,
    pos: Pos,
) -> Result<()> {
    match term {
        DerivationTerm::Premise(lit) if facts.contains(lit) || assumed.contains(lit) => Ok(()),
        DerivationTerm::Premise(lit) => Err(pos.reference(format!(
            "alias premise `{lit}` is neither a fact nor an assumption"
        ))),
        DerivationTerm::Apply { args, .. } => args
            .iter()
            .try_for_each(|a| check_alias_leaves(a, facts, assumed, pos)),
    }
}

fn wrong_kind(stmt: &Stmt, pos: Pos, kind: ScenarioKind) -> ParseError {
    let keyword = match stmt {
        Stmt::Fact(_) => "fact",
        Stmt::Assumption(_) => "assumption",
        Stmt::Belief { .. } => "belief",
        Stmt::Norm { .. } => "norm",
        Stmt::Standpoint { .. } => "standpoint",
        Stmt::Alias { .. } => "alias",
        Stmt::Argument { .. } => "argument",
        Stmt::Attack { .. } => "attack",
        _ => "statement",
    };
    pos.invalid(format!(
        "`{keyword}` is not allowed in a {} scenario",
        kind.as_str()
    ))
}
