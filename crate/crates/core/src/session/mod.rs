//! Line-oriented session files: one ring block, named ideals and commands.
//!
//! ```text
//! ring { vars: x1 x2 x3; field: QQ; mod: x1*x2 + x3^3; order: grevlex; assert: normal domain }
//! ideal m = x1, x2, x3
//! cmd: multiplicity
//! ```

mod run;

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{parse_polynomial, Field, MonomialOrder, PolyRing, Ring};

pub use run::{run, CommandResult, Report, RunOptions, REPORT_VERSION};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingSpec {
    pub vars: Vec<String>,
    pub field: Field,
    pub modulus: Vec<String>,
    pub order: OrderSpec,
    pub assertions: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderSpec {
    Lex,
    GrevLex,
    Block(usize),
}

impl OrderSpec {
    pub fn to_order(self) -> MonomialOrder {
        match self {
            OrderSpec::Lex => MonomialOrder::Lex,
            OrderSpec::GrevLex => MonomialOrder::GrevLex,
            OrderSpec::Block(k) => MonomialOrder::Block(k),
        }
    }
}

impl fmt::Display for OrderSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderSpec::Lex => write!(f, "lex"),
            OrderSpec::GrevLex => write!(f, "grevlex"),
            OrderSpec::Block(k) => write!(f, "block {k}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealBinding {
    pub name: String,
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Command {
    pub name: String,
    pub args: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    Ideal(IdealBinding),
    Command(Command),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SessionFile {
    pub ring: RingSpec,
    pub items: Vec<Item>,
}

impl SessionFile {
    pub fn commands(&self) -> impl Iterator<Item = &Command> {
        self.items.iter().filter_map(|i| match i {
            Item::Command(c) => Some(c),
            Item::Ideal(_) => None,
        })
    }

    pub fn build_ring(&self) -> Result<Ring> {
        PolyRing::new(self.ring.vars.iter().cloned(), self.ring.field, self.ring.order.to_order())
    }
}

const ASSERTIONS: [&str; 3] = ["normal", "domain", "graded"];

/// Argument slots that must name a bound ideal.
struct CommandShape {
    name: &'static str,
    min_args: usize,
    ideal_positions: &'static [usize],
    ideal_options: &'static [&'static str],
}

const COMMANDS: &[CommandShape] = &[
    CommandShape { name: "gb", min_args: 1, ideal_positions: &[0], ideal_options: &[] },
    CommandShape { name: "contains", min_args: 2, ideal_positions: &[0], ideal_options: &[] },
    CommandShape { name: "quotient", min_args: 2, ideal_positions: &[0], ideal_options: &[] },
    CommandShape { name: "saturate", min_args: 2, ideal_positions: &[0], ideal_options: &[] },
    CommandShape { name: "intersect", min_args: 2, ideal_positions: &[0, 1], ideal_options: &[] },
    CommandShape { name: "eliminate", min_args: 2, ideal_positions: &[0], ideal_options: &[] },
    CommandShape { name: "radical-member", min_args: 2, ideal_positions: &[0], ideal_options: &[] },
    CommandShape { name: "dimension", min_args: 0, ideal_positions: &[0], ideal_options: &[] },
    CommandShape { name: "hilbert", min_args: 1, ideal_positions: &[0], ideal_options: &[] },
    CommandShape { name: "multiplicity", min_args: 0, ideal_positions: &[], ideal_options: &[] },
    CommandShape { name: "graded-multiplicity", min_args: 0, ideal_positions: &[], ideal_options: &[] },
    CommandShape { name: "lengths", min_args: 2, ideal_positions: &[0], ideal_options: &[] },
    CommandShape { name: "rees", min_args: 1, ideal_positions: &[0], ideal_options: &[] },
    CommandShape { name: "gr", min_args: 1, ideal_positions: &[0], ideal_options: &[] },
    CommandShape { name: "homogenize", min_args: 0, ideal_positions: &[], ideal_options: &[] },
    CommandShape { name: "symbolic-power", min_args: 2, ideal_positions: &[0], ideal_options: &[] },
    CommandShape { name: "ord", min_args: 2, ideal_positions: &[0], ideal_options: &[] },
    CommandShape { name: "newton", min_args: 1, ideal_positions: &[0], ideal_options: &[] },
    CommandShape { name: "closure", min_args: 2, ideal_positions: &[0], ideal_options: &[] },
    CommandShape { name: "monomial-multiplicity", min_args: 1, ideal_positions: &[0], ideal_options: &[] },
    CommandShape { name: "briancon-skoda", min_args: 2, ideal_positions: &[0], ideal_options: &[] },
    CommandShape { name: "artin-rees", min_args: 3, ideal_positions: &[1], ideal_options: &[] },
    CommandShape { name: "normalized-ord", min_args: 2, ideal_positions: &[0, 1], ideal_options: &[] },
    CommandShape { name: "translate-origin", min_args: 1, ideal_positions: &[], ideal_options: &[] },
    CommandShape {
        name: "check",
        min_args: 1,
        ideal_positions: &[],
        ideal_options: &["--p", "--q", "--m", "--monomial", "--rees"],
    },
];

pub const CHECKS: [&str; 7] = [
    "zariski-nagata",
    "main-a",
    "izumi-multiplicity",
    "order-ideal",
    "izumi-valuation",
    "fixed-power",
    "chevalley",
];

/// Characters of a logical unit with their source positions.
#[derive(Debug, Clone)]
struct Span {
    chars: Vec<(char, usize, usize)>,
    end: (usize, usize),
}

impl Span {
    fn text(&self) -> String {
        self.chars.iter().map(|c| c.0).collect()
    }

    fn at(&self, idx: usize) -> (usize, usize) {
        self.chars.get(idx).map_or(self.end, |c| (c.1, c.2))
    }

    fn trim(&self) -> Span {
        let start = self.chars.iter().position(|c| !c.0.is_whitespace()).unwrap_or(self.chars.len());
        let stop = self.chars.iter().rposition(|c| !c.0.is_whitespace()).map_or(start, |i| i + 1);
        Span {
            chars: self.chars[start..stop.max(start)].to_vec(),
            end: if stop < self.chars.len() { self.at(stop) } else { self.end },
        }
    }

    fn slice(&self, a: usize, b: usize) -> Span {
        Span {
            chars: self.chars[a..b].to_vec(),
            end: self.at(b),
        }
    }

    fn split(&self, sep: char) -> Vec<Span> {
        let mut out = Vec::new();
        let mut start = 0;
        for (i, c) in self.chars.iter().enumerate() {
            if c.0 == sep {
                out.push(self.slice(start, i));
                start = i + 1;
            }
        }
        out.push(self.slice(start, self.chars.len()));
        out
    }

    fn find(&self, ch: char) -> Option<usize> {
        self.chars.iter().position(|c| c.0 == ch)
    }

    fn err(&self, idx: usize, msg: impl Into<String>) -> Error {
        let (line, column) = self.at(idx);
        Error::Parse {
            line,
            column,
            message: msg.into(),
        }
    }
}

fn line_span(line: &str, lineno: usize) -> Span {
    let body = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let chars: Vec<(char, usize, usize)> = body.chars().enumerate().map(|(i, c)| (c, lineno, i + 1)).collect();
    let end = (lineno, chars.len() + 1);
    Span { chars, end }
}

fn is_identifier(s: &str) -> bool {
    let mut it = s.chars();
    matches!(it.next(), Some(c) if c.is_ascii_alphabetic() || c == '_') && it.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses polynomials separated by commas and returns canonical text.
fn parse_poly_list(ring: &Ring, span: &Span) -> Result<Vec<String>> {
    let t = span.trim();
    if t.chars.is_empty() {
        return Ok(Vec::new());
    }
    t.split(',')
        .into_iter()
        .map(|part| {
            let p = part.trim();
            parse_polynomial(ring, &p.text()).map(|f| f.to_string()).map_err(|e| match e {
                Error::Parse { column, message, .. } => p.err(column - 1, message),
                other => other,
            })
        })
        .collect()
}

/// Splits command arguments on whitespace; double quotes group.
pub fn tokenize(span_text: &str) -> std::result::Result<Vec<String>, (usize, String)> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut in_quote = false;
    let mut has = false;
    for (i, c) in span_text.chars().enumerate() {
        match c {
            '"' => {
                in_quote = !in_quote;
                has = true;
            }
            c if c.is_whitespace() && !in_quote => {
                if has {
                    out.push(std::mem::take(&mut cur));
                    has = false;
                }
            }
            c => {
                cur.push(c);
                has = true;
            }
        }
        if in_quote && i + 1 == span_text.chars().count() {
            return Err((i, "unterminated quote".into()));
        }
    }
    if in_quote {
        return Err((span_text.chars().count(), "unterminated quote".into()));
    }
    if has {
        out.push(cur);
    }
    Ok(out)
}

fn quote(arg: &str) -> String {
    if arg.is_empty() || arg.chars().any(char::is_whitespace) {
        format!("\"{arg}\"")
    } else {
        arg.to_string()
    }
}

fn parse_ring_block(span: &Span) -> Result<RingSpec> {
    let mut vars: Option<Vec<String>> = None;
    let mut field = Field::Rational;
    let mut order = OrderSpec::GrevLex;
    let mut assertions = Vec::new();
    let mut modulus_span: Option<Span> = None;
    let mut seen = BTreeSet::new();
    for entry in span.split(';') {
        let e = entry.trim();
        if e.chars.is_empty() {
            continue;
        }
        let colon = e.find(':').ok_or_else(|| e.err(0, "expected 'key: value'"))?;
        let key = e.slice(0, colon).trim().text();
        let value = e.slice(colon + 1, e.chars.len()).trim();
        if !seen.insert(key.clone()) {
            return Err(e.err(0, format!("duplicate entry '{key}'")));
        }
        let words: Vec<String> = value.text().split_whitespace().map(String::from).collect();
        match key.as_str() {
            "vars" => {
                if words.is_empty() {
                    return Err(value.err(0, "no variables"));
                }
                let mut uniq = BTreeSet::new();
                for w in &words {
                    if !is_identifier(w) || !uniq.insert(w.clone()) {
                        return Err(value.err(0, format!("bad or repeated variable name '{w}'")));
                    }
                }
                vars = Some(words);
            }
            "field" => {
                field = match words.as_slice() {
                    [q] if q == "QQ" => Field::Rational,
                    [fp, p] if fp == "Fp" => {
                        let p: u32 = p.parse().map_err(|_| value.err(0, "expected a prime"))?;
                        Field::prime(p).map_err(|e| value.err(0, e.to_string()))?
                    }
                    _ => return Err(value.err(0, "expected 'QQ' or 'Fp <p>'")),
                }
            }
            "order" => {
                order = match words.iter().map(String::as_str).collect::<Vec<_>>().as_slice() {
                    ["lex"] => OrderSpec::Lex,
                    ["grevlex"] => OrderSpec::GrevLex,
                    ["block", k] => OrderSpec::Block(k.parse().map_err(|_| value.err(0, "expected a block size"))?),
                    _ => return Err(value.err(0, "expected lex, grevlex or block <k>")),
                }
            }
            "assert" => {
                for w in &words {
                    if !ASSERTIONS.contains(&w.as_str()) {
                        return Err(value.err(0, format!("unknown assertion '{w}'")));
                    }
                }
                assertions = ASSERTIONS.iter().filter(|a| words.iter().any(|w| w == *a)).map(|a| a.to_string()).collect();
            }
            "mod" => modulus_span = Some(value),
            other => return Err(e.err(0, format!("unknown ring entry '{other}'"))),
        }
    }
    let vars = vars.ok_or_else(|| span.err(0, "ring block without 'vars'"))?;
    let ring = PolyRing::new(vars.iter().cloned(), field, order.to_order()).map_err(|e| span.err(0, e.to_string()))?;
    let modulus = match &modulus_span {
        Some(s) => parse_poly_list(&ring, s)?,
        None => Vec::new(),
    };
    Ok(RingSpec {
        vars,
        field,
        modulus,
        order,
        assertions,
    })
}

fn option_value<'a>(args: &'a [String], key: &str) -> Option<&'a str> {
    args.iter().position(|a| a == key).and_then(|i| args.get(i + 1)).map(String::as_str)
}

fn positional(args: &[String]) -> Vec<&str> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < args.len() {
        if args[i].starts_with("--") {
            i += 2;
        } else {
            out.push(args[i].as_str());
            i += 1;
        }
    }
    out
}

fn validate_command(cmd: &Command, ideals: &BTreeSet<String>, span: &Span) -> Result<()> {
    let shape = COMMANDS
        .iter()
        .find(|c| c.name == cmd.name)
        .ok_or_else(|| span.err(0, format!("unknown command '{}'", cmd.name)))?;
    let pos = positional(&cmd.args);
    if pos.len() < shape.min_args {
        return Err(span.err(0, format!("'{}' needs at least {} arguments", cmd.name, shape.min_args)));
    }
    let undefined = |n: &str| span.err(0, format!("undefined ideal '{n}'"));
    for &i in shape.ideal_positions {
        if let Some(n) = pos.get(i) {
            if !ideals.contains(*n) {
                return Err(undefined(n));
            }
        }
    }
    for key in shape.ideal_options {
        if let Some(n) = option_value(&cmd.args, key) {
            if !ideals.contains(n) {
                return Err(undefined(n));
            }
        }
    }
    if cmd.name == "check" && !CHECKS.contains(&pos[0]) {
        return Err(span.err(0, format!("unknown check '{}'", pos[0])));
    }
    Ok(())
}

/// Parses a session; errors carry line and column.
pub fn parse_session(text: &str) -> Result<SessionFile> {
    let lines: Vec<&str> = text.lines().collect();
    let mut ring: Option<(RingSpec, Ring)> = None;
    let mut items = Vec::new();
    let mut names = BTreeSet::new();
    let mut i = 0;
    while i < lines.len() {
        let span = line_span(lines[i], i + 1).trim();
        let text = span.text();
        i += 1;
        if text.is_empty() {
            continue;
        }
        if text.starts_with("ring") && text[4..].trim_start().starts_with('{') {
            if ring.is_some() {
                return Err(span.err(0, "duplicate ring block"));
            }
            // gather until the closing brace, possibly across lines
            let open = span.find('{').expect("checked");
            let mut body = span.slice(open + 1, span.chars.len());
            let mut close = body.find('}');
            while close.is_none() && i < lines.len() {
                let next = line_span(lines[i], i + 1);
                i += 1;
                body.chars.push((' ', next.end.0, 0));
                body.chars.extend(next.chars);
                body.end = next.end;
                close = body.find('}');
            }
            let close = close.ok_or_else(|| body.err(body.chars.len(), "unterminated ring block"))?;
            let rest = body.slice(close + 1, body.chars.len()).trim();
            if !rest.chars.is_empty() {
                return Err(rest.err(0, "unexpected text after ring block"));
            }
            let spec = parse_ring_block(&body.slice(0, close))?;
            let r = PolyRing::new(spec.vars.iter().cloned(), spec.field, spec.order.to_order())
                .map_err(|e| span.err(0, e.to_string()))?;
            ring = Some((spec, r));
        } else if let Some(rest) = text.strip_prefix("ideal ") {
            let (_, r) = ring.as_ref().ok_or_else(|| span.err(0, "ideal before the ring block"))?;
            let eq = rest.find('=').ok_or_else(|| span.err(0, "expected 'ideal <name> = <generators>'"))?;
            let name = rest[..eq].trim().to_string();
            if !is_identifier(&name) {
                return Err(span.err(6, format!("bad ideal name '{name}'")));
            }
            if !names.insert(name.clone()) {
                return Err(span.err(6, format!("ideal '{name}' already defined")));
            }
            let at = span.find('=').expect("present");
            let gens = parse_poly_list(r, &span.slice(at + 1, span.chars.len()))?;
            items.push(Item::Ideal(IdealBinding { name, generators: gens }));
        } else if let Some(rest) = text.strip_prefix("cmd:") {
            if ring.is_none() {
                return Err(span.err(0, "command before the ring block"));
            }
            let offset = 4;
            let toks = tokenize(rest).map_err(|(k, m)| span.err(offset + k, m))?;
            let (name, args) = toks.split_first().ok_or_else(|| span.err(offset, "empty command"))?;
            let cmd = Command {
                name: name.clone(),
                args: args.to_vec(),
            };
            validate_command(&cmd, &names, &span)?;
            items.push(Item::Command(cmd));
        } else {
            return Err(span.err(0, "expected a ring block, 'ideal' or 'cmd:'"));
        }
    }
    let (ring, _) = ring.ok_or_else(|| Error::parse(1, 1, "missing ring block"))?;
    Ok(SessionFile { ring, items })
}

impl fmt::Display for SessionFile {
    /// Canonical text; reparses to an equal session.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ring {{")?;
        writeln!(f, "  vars: {};", self.ring.vars.join(" "))?;
        writeln!(f, "  field: {};", self.ring.field.describe())?;
        if !self.ring.modulus.is_empty() {
            writeln!(f, "  mod: {};", self.ring.modulus.join(", "))?;
        }
        writeln!(f, "  order: {};", self.ring.order)?;
        if !self.ring.assertions.is_empty() {
            writeln!(f, "  assert: {};", self.ring.assertions.join(" "))?;
        }
        writeln!(f, "}}")?;
        for item in &self.items {
            match item {
                Item::Ideal(b) => writeln!(f, "ideal {} = {}", b.name, b.generators.join(", "))?,
                Item::Command(c) => {
                    let mut parts = vec![c.name.clone()];
                    parts.extend(c.args.iter().map(|a| quote(a)));
                    writeln!(f, "cmd: {}", parts.join(" "))?
                }
            }
        }
        Ok(())
    }
}
