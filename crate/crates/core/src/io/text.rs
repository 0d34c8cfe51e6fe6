use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::subset::{GroundSet, Subset};
use crate::width::Graph;

fn is_name_char(c: char) -> bool {
    !c.is_whitespace() && !matches!(c, '{' | '}' | ',' | '#')
}

/// Character cursor tracking 1-based line and column.
struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            chars: text.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::parse(self.line, self.column, message)
    }
}

/// Parses `{a,b}{c}` over the names of `ground`. Whitespace is allowed
/// between tokens and empty blocks are dropped.
pub fn parse_partition(text: &str, ground: &GroundSet) -> Result<Partition> {
    let mut cur = Cursor::new(text);
    let mut blocks = Vec::new();
    let mut seen = Subset::EMPTY;
    cur.skip_ws();
    if cur.peek().is_none() {
        return Err(cur.error("expected `{`"));
    }
    while cur.peek().is_some() {
        if cur.bump() != Some('{') {
            return Err(Error::parse(cur.line, cur.column - 1, "expected `{`"));
        }
        let mut block = Subset::EMPTY;
        cur.skip_ws();
        if cur.peek() == Some('}') {
            cur.bump();
        } else {
            loop {
                cur.skip_ws();
                let (line, column) = (cur.line, cur.column);
                let mut name = String::new();
                while cur.peek().is_some_and(is_name_char) {
                    name.push(cur.bump().unwrap());
                }
                if name.is_empty() {
                    return Err(cur.error("expected an element name"));
                }
                let i = ground
                    .index_of(&name)
                    .map_err(|_| Error::parse(line, column, format!("unknown element `{name}`")))?;
                if seen.contains(i) {
                    return Err(Error::parse(line, column, format!("element `{name}` occurs twice")));
                }
                seen = seen.insert(i);
                block = block.insert(i);
                cur.skip_ws();
                match cur.bump() {
                    Some(',') => continue,
                    Some('}') => break,
                    Some(c) => return Err(Error::parse(cur.line, cur.column - 1, format!("unexpected `{c}`"))),
                    None => return Err(cur.error("unterminated block")),
                }
            }
        }
        if !block.is_empty() {
            blocks.push(block);
        }
        cur.skip_ws();
    }
    if seen != ground.full() {
        let missing = ground.format_subset(ground.full().difference(seen));
        return Err(cur.error(format!("elements {missing} are not covered")));
    }
    Partition::from_blocks(ground.len(), blocks)
}

/// Edge-list text: one `u v` pair per line, vertex names as tokens. A line
/// with a single token declares an isolated vertex. `#` starts a comment.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut names: Vec<String> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let index = |name: &str, names: &mut Vec<String>| -> usize {
        match names.iter().position(|n| n == name) {
            Some(i) => i,
            None => {
                names.push(name.to_string());
                names.len() - 1
            }
        }
    };
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let tokens: Vec<(usize, &str)> = line
            .split_whitespace()
            .map(|t| (t.as_ptr() as usize - line.as_ptr() as usize + 1, t))
            .collect();
        match tokens.as_slice() {
            [] => {}
            [(_, v)] => {
                index(v, &mut names);
            }
            [(_, u), (col, v)] => {
                if u == v {
                    return Err(Error::parse(ln + 1, *col, format!("loop at `{u}`")));
                }
                let a = index(u, &mut names);
                let b = index(v, &mut names);
                let e = (a.min(b), a.max(b));
                if edges.contains(&e) {
                    return Err(Error::parse(ln + 1, 1, format!("parallel edge `{u} {v}`")));
                }
                edges.push(e);
            }
            [_, _, (col, t), ..] => {
                return Err(Error::parse(ln + 1, *col, format!("unexpected token `{t}`")));
            }
        }
    }
    if names.is_empty() {
        return Err(Error::parse(1, 1, "the edge list is empty"));
    }
    Graph::new(GroundSet::new(names)?, edges)
}

/// Inverse of [`parse_edge_list`]. Vertices are declared on their own lines
/// first whenever the edges alone would list them in a different order.
pub fn write_edge_list(g: &Graph) -> String {
    let v = g.vertices();
    let mut first_seen: Vec<usize> = Vec::new();
    for &(a, b) in g.edges() {
        for x in [a, b] {
            if !first_seen.contains(&x) {
                first_seen.push(x);
            }
        }
    }
    let mut out = String::new();
    if !first_seen.iter().copied().eq(0..g.num_vertices()) {
        for i in 0..g.num_vertices() {
            out.push_str(v.name(i));
            out.push('\n');
        }
    }
    for &(a, b) in g.edges() {
        out.push_str(&format!("{} {}\n", v.name(a), v.name(b)));
    }
    out
}

/// Dense 0/1 rows, either whitespace separated or written as one word per
/// row. Blank lines and `#` comments are skipped.
pub fn parse_matrix(text: &str) -> Result<Vec<Vec<bool>>> {
    let mut rows: Vec<Vec<bool>> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut row = Vec::new();
        for (col, c) in line.chars().enumerate() {
            match c {
                '0' => row.push(false),
                '1' => row.push(true),
                c if c.is_whitespace() => {}
                c => return Err(Error::parse(ln + 1, col + 1, format!("expected 0 or 1, found `{c}`"))),
            }
        }
        if row.is_empty() {
            continue;
        }
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(Error::parse(
                    ln + 1,
                    1,
                    format!("row has {} entries, expected {}", row.len(), first.len()),
                ));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::parse(1, 1, "the matrix is empty"));
    }
    Ok(rows)
}

pub fn write_matrix(rows: &[Vec<bool>]) -> String {
    rows.iter()
        .map(|r| {
            let mut s: String = r.iter().map(|&b| if b { "1 " } else { "0 " }).collect();
            s.pop();
            s.push('\n');
            s
        })
        .collect()
}
