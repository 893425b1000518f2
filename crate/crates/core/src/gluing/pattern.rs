//! Gluing patterns: rooted trees whose leaves are pole labels and whose
//! internal nodes are collision points.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! pattern  := "[" item ("," item)* "]" ("@" rational)?
//! item     := leaf | pattern
//! leaf     := integer ("@" rational)?
//! rational := "-"? digits ("/" digits)?
//! ```
//!
//! A leaf `i` sits at `i − 1` unless a position is given. An internal node
//! without `@location` is placed at the smallest non-negative integer not
//! used by its siblings. The location of the root is irrelevant and, when
//! given, is kept only for display.

use std::fmt;

use num_traits::Zero;

use crate::error::{PatternError, Result};
use crate::rational::{fmt_q, parse_q, q, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PatternNode {
    Leaf { index: usize, position: Q },
    Internal { children: Vec<PatternNode>, location: Q },
}

impl PatternNode {
    /// Where this subtree sits among its siblings.
    pub fn position(&self) -> &Q {
        match self {
            PatternNode::Leaf { position, .. } => position,
            PatternNode::Internal { location, .. } => location,
        }
    }

    /// Leaf labels below this node, in left-to-right order.
    pub fn leaves(&self) -> Vec<usize> {
        match self {
            PatternNode::Leaf { index, .. } => vec![*index],
            PatternNode::Internal { children, .. } => children.iter().flat_map(PatternNode::leaves).collect(),
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, PatternNode::Leaf { .. })
    }
}

/// A validated gluing pattern over `N` poles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingPattern {
    sites: usize,
    root: PatternNode,
}

impl GluingPattern {
    pub fn parse(text: &str, sites: usize) -> std::result::Result<Self, PatternError> {
        let mut parser = Parser { chars: text.char_indices().collect(), pos: 0, len: text.len() };
        let raw = parser.pattern()?;
        parser.skip_ws();
        if parser.pos < parser.chars.len() {
            return Err(PatternError::new(parser.offset(), "unexpected trailing input"));
        }
        let mut seen = vec![false; sites + 1];
        check_leaves(&raw, sites, &mut seen)?;
        if let Some(missing) = (1..=sites).find(|&i| !seen[i]) {
            return Err(PatternError::new(text.len(), format!("leaf {missing} is missing")));
        }
        let root = resolve(raw, true)?;
        Ok(Self { sites, root })
    }

    /// Parses a pattern whose pole count is its number of leaves.
    pub fn parse_inferred(text: &str) -> std::result::Result<Self, PatternError> {
        fn count(raw: &Raw) -> usize {
            match raw {
                Raw::Leaf { .. } => 1,
                Raw::Node { children, .. } => children.iter().map(count).sum(),
            }
        }
        let mut parser = Parser { chars: text.char_indices().collect(), pos: 0, len: text.len() };
        let raw = parser.pattern()?;
        Self::parse(text, count(&raw))
    }

    /// Builds a pattern from an explicit tree after validating it.
    pub fn from_root(sites: usize, root: PatternNode) -> Result<Self> {
        Ok(Self::parse(&root_text(&root), sites)?)
    }

    /// `[1, 2, …, N]`: no collision.
    pub fn trivial(sites: usize) -> Result<Self> {
        let items: Vec<String> = (1..=sites).map(|i| i.to_string()).collect();
        Ok(Self::parse(&format!("[{}]", items.join(",")), sites)?)
    }

    /// `[1, …, k, [k+1, …, N]@w]`: the last `N − k` poles collide at `w`.
    pub fn elementary(sites: usize, k: usize, w: &Q) -> Result<Self> {
        let head: Vec<String> = (1..=k).map(|i| i.to_string()).collect();
        let tail: Vec<String> = ((k + 1)..=sites).map(|i| i.to_string()).collect();
        let mut items = head;
        items.push(format!("[{}]@{}", tail.join(","), fmt_q(w)));
        Ok(Self::parse(&format!("[{}]", items.join(",")), sites)?)
    }

    /// Total collision: the left comb `[[[1@z1,2@z2]@z1,3@z2]@z1, …, N@z2]`,
    /// whose internal nodes carry the bending matrices.
    pub fn left_comb(sites: usize, z1: &Q, z2: &Q) -> Result<Self> {
        let (a, b) = (fmt_q(z1), fmt_q(z2));
        let mut text = format!("[1@{a},2@{b}]");
        for i in 3..=sites {
            text = format!("[{text}@{a},{i}@{b}]");
        }
        Ok(Self::parse(&text, sites)?)
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn root(&self) -> &PatternNode {
        &self.root
    }

    /// Internal nodes in post-order (children before parents).
    pub fn internal_nodes(&self) -> Vec<&PatternNode> {
        fn walk<'a>(node: &'a PatternNode, out: &mut Vec<&'a PatternNode>) {
            if let PatternNode::Internal { children, .. } = node {
                for c in children {
                    walk(c, out);
                }
                out.push(node);
            }
        }
        let mut out = Vec::new();
        walk(&self.root, &mut out);
        out
    }

    /// True when no poles collide.
    pub fn is_trivial(&self) -> bool {
        self.internal_nodes().len() == 1
    }
}

/// Canonical text with every position explicit.
impl fmt::Display for GluingPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&root_text(&self.root))
    }
}

fn root_text(root: &PatternNode) -> String {
    match root {
        PatternNode::Internal { children, .. } => format!("[{}]", children.iter().map(node_text).collect::<Vec<_>>().join(",")),
        leaf => node_text(leaf),
    }
}

fn node_text(node: &PatternNode) -> String {
    match node {
        PatternNode::Leaf { index, position } => format!("{index}@{}", fmt_q(position)),
        PatternNode::Internal { children, location } => {
            format!("[{}]@{}", children.iter().map(node_text).collect::<Vec<_>>().join(","), fmt_q(location))
        }
    }
}

/// Parse tree before defaults are assigned; offsets point into the input.
enum Raw {
    Leaf { index: usize, position: Option<Q>, offset: usize },
    Node { children: Vec<Raw>, location: Option<Q>, offset: usize },
}

impl Raw {
    fn offset(&self) -> usize {
        match self {
            Raw::Leaf { offset, .. } | Raw::Node { offset, .. } => *offset,
        }
    }
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.len, |(o, _)| *o)
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|(_, c)| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|(_, c)| *c)
    }

    fn expect(&mut self, want: char) -> std::result::Result<(), PatternError> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(PatternError::new(self.offset(), format!("expected '{want}', found '{c}'"))),
            None => Err(PatternError::new(self.len, format!("expected '{want}', found end of input"))),
        }
    }

    fn pattern(&mut self) -> std::result::Result<Raw, PatternError> {
        self.skip_ws();
        let offset = self.offset();
        self.expect('[')?;
        let mut children = vec![self.item()?];
        loop {
            match self.peek() {
                Some(',') => {
                    self.pos += 1;
                    children.push(self.item()?);
                }
                Some(']') => {
                    self.pos += 1;
                    break;
                }
                Some(c) => return Err(PatternError::new(self.offset(), format!("expected ',' or ']', found '{c}'"))),
                None => return Err(PatternError::new(self.len, "unclosed '['")),
            }
        }
        let location = self.location()?;
        Ok(Raw::Node { children, location, offset })
    }

    fn item(&mut self) -> std::result::Result<Raw, PatternError> {
        match self.peek() {
            Some('[') => self.pattern(),
            Some(c) if c.is_ascii_digit() => {
                let offset = self.offset();
                let digits = self.take_while(|c| c.is_ascii_digit());
                let index = digits.parse::<usize>().map_err(|_| PatternError::new(offset, format!("leaf index '{digits}' is too large")))?;
                let position = self.location()?;
                Ok(Raw::Leaf { index, position, offset })
            }
            Some(c) => Err(PatternError::new(self.offset(), format!("expected a leaf index or '[', found '{c}'"))),
            None => Err(PatternError::new(self.len, "expected a leaf index or '[', found end of input")),
        }
    }

    fn location(&mut self) -> std::result::Result<Option<Q>, PatternError> {
        if self.peek() != Some('@') {
            return Ok(None);
        }
        self.pos += 1;
        self.skip_ws();
        let offset = self.offset();
        let text = self.take_while(|c| c.is_ascii_digit() || c == '-' || c == '/');
        parse_q(&text).map(Some).ok_or_else(|| PatternError::new(offset, format!("malformed location '{text}'")))
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> String {
        let mut s = String::new();
        while let Some(&(_, c)) = self.chars.get(self.pos) {
            if !pred(c) {
                break;
            }
            s.push(c);
            self.pos += 1;
        }
        s
    }
}

/// Assigns default positions and checks arity and sibling distinctness.
fn resolve(raw: Raw, is_root: bool) -> std::result::Result<PatternNode, PatternError> {
    match raw {
        Raw::Leaf { index, position, offset } => {
            if is_root {
                return Err(PatternError::new(offset, "a pattern must be enclosed in '[' ']'"));
            }
            let position = position.unwrap_or_else(|| q(index as i64 - 1));
            Ok(PatternNode::Leaf { index, position })
        }
        Raw::Node { children, location, offset } => {
            if children.len() < 2 {
                return Err(PatternError::new(offset, "a collision node needs at least two children"));
            }
            let mut explicit: Vec<(Option<Q>, usize)> = Vec::with_capacity(children.len());
            for c in &children {
                let pos = match c {
                    Raw::Leaf { index, position, .. } => Some(position.clone().unwrap_or_else(|| q(*index as i64 - 1))),
                    Raw::Node { location, .. } => location.clone(),
                };
                explicit.push((pos, c.offset()));
            }
            for (i, (p, off)) in explicit.iter().enumerate() {
                if let Some(p) = p {
                    if explicit[..i].iter().any(|(x, _)| x.as_ref() == Some(p)) {
                        return Err(PatternError::new(*off, format!("position {} is already used by a sibling", fmt_q(p))));
                    }
                }
            }
            let mut used: Vec<Q> = explicit.iter().filter_map(|(p, _)| p.clone()).collect();
            let mut out = Vec::with_capacity(children.len());
            for c in children {
                let node = match c {
                    Raw::Node { children, location: None, offset } => {
                        let fresh = (0..).map(q).find(|x| !used.contains(x)).expect("unbounded search");
                        used.push(fresh.clone());
                        resolve(Raw::Node { children, location: Some(fresh), offset }, false)?
                    }
                    other => resolve(other, false)?,
                };
                out.push(node);
            }
            Ok(PatternNode::Internal { children: out, location: location.unwrap_or_else(Q::zero) })
        }
    }
}

fn check_leaves(raw: &Raw, sites: usize, seen: &mut [bool]) -> std::result::Result<(), PatternError> {
    match raw {
        Raw::Leaf { index, offset, .. } => {
            if *index == 0 || *index > sites {
                return Err(PatternError::new(*offset, format!("leaf {index} is outside 1..{sites}")));
            }
            if seen[*index] {
                return Err(PatternError::new(*offset, format!("duplicate leaf {index}")));
            }
            seen[*index] = true;
            Ok(())
        }
        Raw::Node { children, .. } => children.iter().try_for_each(|c| check_leaves(c, sites, seen)),
    }
}
