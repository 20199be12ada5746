//! Line-oriented text formats for data graphs, patterns, and match results.
//!
//! ```text
//! graph G
//! node v1 : Pr {age = 50}
//! edge v1 -> v2 : supervised
//!
//! pattern P
//! node a : Pr {age >= 45}
//! node b : PhD
//! edge a -> b : supervised [2]
//! predicate + on b
//!   node c : Article
//!   edge b -> c : published
//! end
//! ```
//!
//! Counting quantifiers equal to one are omitted. Comments start with `#`.
//! Predicate blocks may not redeclare core ids except their focus, which is
//! shared implicitly. Match results use the same node/edge line syntax under
//! `matches node` / `matches edge` section headers.

use std::collections::BTreeMap;
use std::fmt;

use cgp_core::{
    Atom, AttributeAssignment, Cgp, CmpOp, ConstraintConjunction, DataGraph, EdgeKey, FocusedQgp,
    MatchResult, NodePayload, Qgp, Value,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Str(String),
    Sym(&'static str),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    col: usize,
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> ParseError {
    ParseError {
        line,
        col,
        msg: msg.into(),
    }
}

fn tokenize_line(text: &str, line_no: usize) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '#' {
            break;
        }
        if c == '"' {
            let mut s = String::new();
            i += 1;
            loop {
                if i >= chars.len() {
                    return Err(err(line_no, col, "unterminated string literal"));
                }
                match chars[i] {
                    '"' => {
                        i += 1;
                        break;
                    }
                    '\\' => {
                        i += 1;
                        if i >= chars.len() {
                            return Err(err(line_no, col, "unterminated escape"));
                        }
                        match chars[i] {
                            '"' => s.push('"'),
                            '\\' => s.push('\\'),
                            'n' => s.push('\n'),
                            't' => s.push('\t'),
                            '0' => s.push('\0'),
                            other => {
                                return Err(err(line_no, i + 1, format!("unknown escape \\{other}")))
                            }
                        }
                        i += 1;
                    }
                    other => {
                        s.push(other);
                        i += 1;
                    }
                }
            }
            out.push(Token { tok: Tok::Str(s), col });
            continue;
        }
        if c == '-' && i + 1 < chars.len() && chars[i + 1] == '>' {
            out.push(Token { tok: Tok::Sym("->"), col });
            i += 2;
            continue;
        }
        let two = if i + 1 < chars.len() {
            Some((chars[i], chars[i + 1]))
        } else {
            None
        };
        match two {
            Some(('>', '=')) => {
                out.push(Token { tok: Tok::Sym(">="), col });
                i += 2;
                continue;
            }
            Some(('<', '=')) => {
                out.push(Token { tok: Tok::Sym("<="), col });
                i += 2;
                continue;
            }
            Some(('!', '=')) => {
                out.push(Token { tok: Tok::Sym("!="), col });
                i += 2;
                continue;
            }
            _ => {}
        }
        let sym = match c {
            ':' => Some(":"),
            ',' => Some(","),
            '{' => Some("{"),
            '}' => Some("}"),
            '[' => Some("["),
            ']' => Some("]"),
            '=' => Some("="),
            '>' => Some(">"),
            '<' => Some("<"),
            '+' => Some("+"),
            _ => None,
        };
        if let Some(sym) = sym {
            out.push(Token { tok: Tok::Sym(sym), col });
            i += 1;
            continue;
        }
        // Word: identifier or number (a leading '-' belongs to a number).
        let start = i;
        if c == '-' {
            i += 1;
        }
        while i < chars.len() {
            let d = chars[i];
            if d.is_alphanumeric() || d == '_' || d == '.' || (i == start && d == '-') {
                i += 1;
            } else {
                break;
            }
        }
        if i == start {
            return Err(err(line_no, col, format!("unexpected character {c:?}")));
        }
        let word: String = chars[start..i].iter().collect();
        if word == "-" {
            out.push(Token { tok: Tok::Sym("-"), col });
        } else {
            out.push(Token { tok: Tok::Word(word), col });
        }
    }
    Ok(out)
}

/// Cursor over one line's tokens.
struct Line<'a> {
    no: usize,
    toks: &'a [Token],
    pos: usize,
}

impl<'a> Line<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn col(&self) -> usize {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map(|t| t.col)
            .unwrap_or(1)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect_sym(&mut self, sym: &str) -> Result<(), ParseError> {
        let (no, col) = (self.no, self.col());
        match self.next() {
            Some(Tok::Sym(s)) if s == sym => Ok(()),
            other => Err(err(no, col, format!("expected {sym:?}, found {other:?}"))),
        }
    }

    fn expect_word(&mut self, what: &str) -> Result<String, ParseError> {
        let (no, col) = (self.no, self.col());
        match self.next() {
            Some(Tok::Word(w)) => Ok(w),
            other => Err(err(no, col, format!("expected {what}, found {other:?}"))),
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        let (no, col) = (self.no, self.col());
        match self.next() {
            Some(Tok::Word(w)) if w == kw => Ok(()),
            other => Err(err(no, col, format!("expected {kw:?}, found {other:?}"))),
        }
    }

    fn done(&mut self) -> Result<(), ParseError> {
        if self.pos < self.toks.len() {
            return Err(err(self.no, self.col(), "trailing tokens"));
        }
        Ok(())
    }
}

fn parse_value(line: &mut Line) -> Result<Value, ParseError> {
    let (no, col) = (line.no, line.col());
    match line.next() {
        Some(Tok::Str(s)) => Ok(Value::Str(s)),
        Some(Tok::Word(w)) => {
            if w.contains(['.', 'e', 'E']) {
                w.parse::<f64>()
                    .map(Value::Dec)
                    .map_err(|_| err(no, col, format!("bad decimal constant {w:?}")))
            } else {
                w.parse::<i64>()
                    .map(Value::Int)
                    .map_err(|_| err(no, col, format!("bad integer constant {w:?}")))
            }
        }
        other => Err(err(no, col, format!("expected a constant, found {other:?}"))),
    }
}

fn parse_op(line: &mut Line) -> Result<CmpOp, ParseError> {
    let (no, col) = (line.no, line.col());
    match line.next() {
        Some(Tok::Sym(">=")) => Ok(CmpOp::Ge),
        Some(Tok::Sym("<=")) => Ok(CmpOp::Le),
        Some(Tok::Sym("=")) => Ok(CmpOp::Eq),
        Some(Tok::Sym("!=")) => Ok(CmpOp::Ne),
        Some(Tok::Sym(">")) => Ok(CmpOp::Gt),
        Some(Tok::Sym("<")) => Ok(CmpOp::Lt),
        other => Err(err(no, col, format!("expected a comparison operator, found {other:?}"))),
    }
}

/// `{ attr op const (, attr op const)* }`, already positioned past `{`.
fn parse_atoms(line: &mut Line) -> Result<Vec<Atom>, ParseError> {
    let mut atoms = Vec::new();
    loop {
        let attr = line.expect_word("attribute name")?;
        let op = parse_op(line)?;
        let value = parse_value(line)?;
        atoms.push(Atom { attr, op, value });
        let (no, col) = (line.no, line.col());
        match line.next() {
            Some(Tok::Sym(",")) => continue,
            Some(Tok::Sym("}")) => break,
            other => return Err(err(no, col, format!("expected ',' or '}}', found {other:?}"))),
        }
    }
    Ok(atoms)
}

/// `node <id> : <label> [{...}]`, already positioned past `node`.
fn parse_node_line(line: &mut Line) -> Result<(String, String, Vec<Atom>), ParseError> {
    let id = line.expect_word("node id")?;
    line.expect_sym(":")?;
    let label = line.expect_word("node label")?;
    let atoms = match line.peek() {
        Some(Tok::Sym("{")) => {
            line.next();
            parse_atoms(line)?
        }
        _ => Vec::new(),
    };
    line.done()?;
    Ok((id, label, atoms))
}

/// `edge <id> -> <id> : <label> [ [n] ]`, already positioned past `edge`.
fn parse_edge_line(line: &mut Line, allow_cq: bool) -> Result<(String, String, String, u32), ParseError> {
    let src = line.expect_word("source node id")?;
    line.expect_sym("->")?;
    let dst = line.expect_word("target node id")?;
    line.expect_sym(":")?;
    let label = line.expect_word("edge label")?;
    let cq = match line.peek() {
        Some(Tok::Sym("[")) => {
            if !allow_cq {
                return Err(err(line.no, line.col(), "counting quantifiers are not allowed here"));
            }
            line.next();
            let (no, col) = (line.no, line.col());
            let word = line.expect_word("counting quantifier")?;
            let cq = word
                .parse::<u32>()
                .map_err(|_| err(no, col, format!("bad counting quantifier {word:?}")))?;
            line.expect_sym("]")?;
            cq
        }
        _ => 1,
    };
    line.done()?;
    Ok((src, dst, label, cq))
}

fn lines_of(text: &str) -> Result<Vec<(usize, Vec<Token>)>, ParseError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let toks = tokenize_line(raw, idx + 1)?;
        if !toks.is_empty() {
            out.push((idx + 1, toks));
        }
    }
    Ok(out)
}

/// Parse and validate a data graph document.
pub fn parse_graph(text: &str) -> Result<(String, DataGraph), ParseError> {
    let lines = lines_of(text)?;
    let mut iter = lines.iter();
    let (no, toks) = iter
        .next()
        .ok_or_else(|| err(1, 1, "empty document; expected 'graph <name>'"))?;
    let mut line = Line { no: *no, toks, pos: 0 };
    line.expect_keyword("graph")?;
    let name = line.expect_word("graph name")?;
    line.done()?;

    let mut g = DataGraph::new();
    let mut seen_nodes: BTreeMap<String, usize> = BTreeMap::new();
    for (no, toks) in iter {
        let mut line = Line { no: *no, toks, pos: 0 };
        let head = line.expect_word("'node' or 'edge'")?;
        match head.as_str() {
            "node" => {
                let (id, label, atoms) = parse_node_line(&mut line)?;
                if seen_nodes.insert(id.clone(), *no).is_some() {
                    return Err(err(*no, 1, format!("duplicate node id {id:?}")));
                }
                let mut attrs = AttributeAssignment::new();
                for atom in atoms {
                    if atom.op != CmpOp::Eq {
                        return Err(err(*no, 1, "graph nodes carry '=' assignments only"));
                    }
                    if attrs.0.insert(atom.attr.clone(), atom.value).is_some() {
                        return Err(err(*no, 1, format!("duplicate attribute {:?}", atom.attr)));
                    }
                }
                g.add_node(&id, &label, attrs);
            }
            "edge" => {
                let (src, dst, label, _) = parse_edge_line(&mut line, false)?;
                if g.has_edge(&src, &dst, &label) {
                    return Err(err(*no, 1, "duplicate edge"));
                }
                g.add_edge(&src, &dst, &label);
            }
            other => return Err(err(*no, 1, format!("expected 'node' or 'edge', found {other:?}"))),
        }
    }
    let violations = g.validate();
    if let Some(v) = violations.first() {
        return Err(err(0, 0, format!("validation: {v}")));
    }
    Ok((name, g))
}

/// Parse and validate a pattern document into a conditional graph pattern.
pub fn parse_pattern(text: &str) -> Result<(String, Cgp), ParseError> {
    let lines = lines_of(text)?;
    let mut iter = lines.iter().peekable();
    let (no, toks) = iter
        .next()
        .ok_or_else(|| err(1, 1, "empty document; expected 'pattern <name>'"))?;
    let mut line = Line { no: *no, toks, pos: 0 };
    line.expect_keyword("pattern")?;
    let name = line.expect_word("pattern name")?;
    line.done()?;

    let mut core = Qgp::new();
    let mut positives = Vec::new();
    let mut negatives = Vec::new();

    while let Some((no, toks)) = iter.next() {
        let mut line = Line { no: *no, toks, pos: 0 };
        let head = line.expect_word("'node', 'edge' or 'predicate'")?;
        match head.as_str() {
            "node" => {
                let (id, label, atoms) = parse_node_line(&mut line)?;
                if core.contains_node(&id) {
                    return Err(err(*no, 1, format!("duplicate node id {id:?}")));
                }
                core.add_node(&id, &label, ConstraintConjunction(atoms));
            }
            "edge" => {
                let (src, dst, label, cq) = parse_edge_line(&mut line, true)?;
                if core.edges().contains_key(&EdgeKey::new(&src, &dst, &label)) {
                    return Err(err(*no, 1, "duplicate edge"));
                }
                core.add_edge(&src, &dst, &label, cq);
            }
            "predicate" => {
                let (pno, pcol) = (line.no, line.col());
                let polarity = match line.next() {
                    Some(Tok::Sym("+")) => true,
                    Some(Tok::Sym("-")) => false,
                    other => {
                        return Err(err(pno, pcol, format!("expected '+' or '-', found {other:?}")))
                    }
                };
                line.expect_keyword("on")?;
                let focus = line.expect_word("focus node id")?;
                line.done()?;
                let focus_node = core.node(&focus).cloned().ok_or_else(|| {
                    err(*no, 1, format!("predicate focus {focus:?} is not a declared core node"))
                })?;
                let mut pat = Qgp::new();
                pat.add_node(&focus, &focus_node.label, focus_node.constraint);
                let mut closed = false;
                for (no, toks) in iter.by_ref() {
                    let mut line = Line { no: *no, toks, pos: 0 };
                    let head = line.expect_word("'node', 'edge' or 'end'")?;
                    match head.as_str() {
                        "end" => {
                            line.done()?;
                            closed = true;
                            break;
                        }
                        "node" => {
                            let (id, label, atoms) = parse_node_line(&mut line)?;
                            if id == focus {
                                return Err(err(*no, 1, "the focus is shared implicitly; do not redeclare it"));
                            }
                            if pat.contains_node(&id) {
                                return Err(err(*no, 1, format!("duplicate node id {id:?}")));
                            }
                            pat.add_node(&id, &label, ConstraintConjunction(atoms));
                        }
                        "edge" => {
                            let (src, dst, label, cq) = parse_edge_line(&mut line, true)?;
                            if pat.edges().contains_key(&EdgeKey::new(&src, &dst, &label)) {
                                return Err(err(*no, 1, "duplicate edge"));
                            }
                            pat.add_edge(&src, &dst, &label, cq);
                        }
                        other => {
                            return Err(err(*no, 1, format!("expected 'node', 'edge' or 'end', found {other:?}")))
                        }
                    }
                }
                if !closed {
                    return Err(err(*no, 1, "predicate block not closed with 'end'"));
                }
                let fp = FocusedQgp::new(pat, &focus);
                if polarity {
                    positives.push(fp);
                } else {
                    negatives.push(fp);
                }
            }
            other => {
                return Err(err(*no, 1, format!("expected 'node', 'edge' or 'predicate', found {other:?}")))
            }
        }
    }

    let cgp = Cgp::new(core, positives, negatives);
    let violations = cgp.validate();
    if let Some(v) = violations.first() {
        return Err(err(0, 0, format!("validation: {v}")));
    }
    Ok((name, cgp))
}

/// Parse a match-result document.
pub fn parse_match_result(text: &str) -> Result<MatchResult, ParseError> {
    let lines = lines_of(text)?;
    let mut iter = lines.iter().peekable();
    let (no, toks) = iter
        .next()
        .ok_or_else(|| err(1, 1, "empty document; expected 'result'"))?;
    let mut line = Line { no: *no, toks, pos: 0 };
    line.expect_keyword("result")?;
    line.done()?;

    enum Section {
        Node(String),
        Edge(EdgeKey),
    }
    let mut result = MatchResult::default();
    let mut current: Option<Section> = None;
    for (no, toks) in iter {
        let mut line = Line { no: *no, toks, pos: 0 };
        let head = line.expect_word("'matches', 'node' or 'edge'")?;
        match head.as_str() {
            "matches" => {
                let kind = line.expect_word("'node' or 'edge'")?;
                match kind.as_str() {
                    "node" => {
                        let id = line.expect_word("core node id")?;
                        line.done()?;
                        result.node_matches.entry(id.clone()).or_default();
                        current = Some(Section::Node(id));
                    }
                    "edge" => {
                        let (src, dst, label, _) = parse_edge_line(&mut line, false)?;
                        let key = EdgeKey::new(&src, &dst, &label);
                        result.edge_matches.entry(key.clone()).or_default();
                        current = Some(Section::Edge(key));
                    }
                    other => return Err(err(*no, 1, format!("expected 'node' or 'edge', found {other:?}"))),
                }
            }
            "node" => {
                let Some(Section::Node(core_node)) = &current else {
                    return Err(err(*no, 1, "node line outside a 'matches node' section"));
                };
                let (id, label, atoms) = parse_node_line(&mut line)?;
                let mut attrs = AttributeAssignment::new();
                for atom in atoms {
                    if atom.op != CmpOp::Eq {
                        return Err(err(*no, 1, "matched nodes carry '=' assignments only"));
                    }
                    attrs.0.insert(atom.attr, atom.value);
                }
                result
                    .node_matches
                    .get_mut(core_node)
                    .expect("section entry exists")
                    .insert(id, NodePayload { label, attrs });
            }
            "edge" => {
                let Some(Section::Edge(core_edge)) = &current else {
                    return Err(err(*no, 1, "edge line outside a 'matches edge' section"));
                };
                let (src, dst, label, _) = parse_edge_line(&mut line, false)?;
                if label != core_edge.label {
                    return Err(err(*no, 1, "matched edge label differs from its section"));
                }
                result
                    .edge_matches
                    .get_mut(core_edge)
                    .expect("section entry exists")
                    .insert((src, dst));
            }
            other => return Err(err(*no, 1, format!("unexpected {other:?}"))),
        }
    }
    Ok(result)
}
