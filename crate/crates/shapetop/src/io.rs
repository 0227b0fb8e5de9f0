//! Line-oriented text formats and their parsers.
//!
//! All writers emit canonical form — elements in canonical order, opens
//! sorted by (element count, shape order) — so identical values always
//! produce byte-identical files.
//!
//! Shape files:
//!
//! ```text
//! # a square corner
//! shape U1
//! seg 0 0 2 0
//! seg 0 0 0 2
//! ```
//!
//! Topology files name their carrier file and list open blocks, either
//! inline or as `@name` references into a named-parts file:
//!
//! ```text
//! topology over corner.shape
//! open {}
//! open {
//!   seg 0 0 2 0
//! }
//! ```

use crate::error::Error;
use crate::geom::Point;
use crate::mapping::{AffineMap, Mapping, Step};
use crate::scalar::Scalar;
use crate::shape::{Kind, Shape};
use crate::space::{SetTopology, SpacePoint};
use crate::topology::Topology;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::{Path, PathBuf};

/// A file-content error: names the file, line and offending token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub file: String,
    pub line: usize,
    pub token: String,
    pub message: String,
}

impl ParseError {
    fn new(file: &str, line: usize, token: &str, message: impl Into<String>) -> ParseError {
        ParseError {
            file: file.to_string(),
            line,
            token: token.to_string(),
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {} (at '{}')", self.file, self.line, self.message, self.token)
    }
}

impl std::error::Error for ParseError {}

/// Errors from reading a file: I/O, file content, or the semantic
/// conditions the parsed value fails to satisfy.
#[derive(Debug, thiserror::Error)]
pub enum ReadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Semantic(#[from] Error),
}

fn read_to_string(path: &Path) -> Result<String, ReadError> {
    std::fs::read_to_string(path)
        .map_err(|source| ReadError::Io { path: path.to_path_buf(), source })
}

fn label_of(path: &Path) -> String {
    path.display().to_string()
}

/// Non-comment content lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'))
}

fn parse_scalar(file: &str, line: usize, token: &str) -> Result<Scalar, ParseError> {
    token
        .parse()
        .map_err(|_| ParseError::new(file, line, token, "expected an integer or p/q rational"))
}

fn parse_kind(file: &str, line: usize, token: &str) -> Result<Kind, ParseError> {
    match token {
        "U0" => Ok(Kind::U0),
        "U1" => Ok(Kind::U1),
        _ => Err(ParseError::new(file, line, token, "expected U0 or U1")),
    }
}

/// One element line: `pt x y` or `seg x1 y1 x2 y2`.
enum Element {
    Point(Point),
    Segment(Point, Point),
}

fn parse_element(file: &str, line_no: usize, line: &str) -> Result<Element, ParseError> {
    let tokens: Vec<&str> = line.split_whitespace().collect();
    match tokens.as_slice() {
        ["pt", x, y] => Ok(Element::Point(Point::new(
            parse_scalar(file, line_no, x)?,
            parse_scalar(file, line_no, y)?,
        ))),
        ["seg", x1, y1, x2, y2] => {
            let a = Point::new(parse_scalar(file, line_no, x1)?, parse_scalar(file, line_no, y1)?);
            let b = Point::new(parse_scalar(file, line_no, x2)?, parse_scalar(file, line_no, y2)?);
            if a == b {
                return Err(ParseError::new(file, line_no, line, "degenerate segment"));
            }
            Ok(Element::Segment(a, b))
        }
        [verb, ..] => Err(ParseError::new(file, line_no, verb, "expected 'pt x y' or 'seg x1 y1 x2 y2'")),
        [] => unreachable!("blank lines are filtered"),
    }
}

fn shape_from_elements(
    file: &str,
    kind: Kind,
    elements: Vec<(usize, Element)>,
) -> Result<Shape, ParseError> {
    match kind {
        Kind::U0 => {
            let mut points = Vec::new();
            for (line_no, e) in elements {
                match e {
                    Element::Point(p) => points.push(p),
                    Element::Segment(..) => {
                        return Err(ParseError::new(file, line_no, "seg", "seg element in a U0 shape"))
                    }
                }
            }
            Ok(Shape::from_points(points))
        }
        Kind::U1 => {
            let mut pairs = Vec::new();
            for (line_no, e) in elements {
                match e {
                    Element::Segment(a, b) => pairs.push((a, b)),
                    Element::Point(_) => {
                        return Err(ParseError::new(file, line_no, "pt", "pt element in a U1 shape"))
                    }
                }
            }
            Ok(Shape::from_endpoints(pairs).expect("degenerate segments rejected at parse"))
        }
    }
}

/// Parses a `.shape` file body. The `file` label goes into errors.
pub fn parse_shape(text: &str, file: &str) -> Result<Shape, ParseError> {
    let mut lines = content_lines(text);
    let (line_no, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(file, 1, "", "missing 'shape U0|U1' header"))?;
    let kind = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["shape", kind] => parse_kind(file, line_no, kind)?,
        _ => return Err(ParseError::new(file, line_no, header, "expected 'shape U0|U1' header")),
    };
    let mut elements = Vec::new();
    for (line_no, line) in lines {
        elements.push((line_no, parse_element(file, line_no, line)?));
    }
    shape_from_elements(file, kind, elements)
}

fn element_lines(s: &Shape) -> Vec<String> {
    match s.kind() {
        Kind::U0 => s.points().map(|p| format!("pt {} {}", p.x, p.y)).collect(),
        Kind::U1 => s
            .segments()
            .map(|seg| format!("seg {} {} {} {}", seg.a().x, seg.a().y, seg.b().x, seg.b().y))
            .collect(),
    }
}

/// Canonical `.shape` text for a shape.
pub fn format_shape(s: &Shape) -> String {
    let mut out = format!("shape {}\n", s.kind());
    for line in element_lines(s) {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

pub fn read_shape(path: &Path) -> Result<Shape, ReadError> {
    Ok(parse_shape(&read_to_string(path)?, &label_of(path))?)
}

pub fn write_shape(path: &Path, s: &Shape) -> Result<(), ReadError> {
    std::fs::write(path, format_shape(s))
        .map_err(|source| ReadError::Io { path: path.to_path_buf(), source })
}

/// Parses a named-parts file: `parts U0|U1` then `part <name>` blocks.
pub fn parse_parts(text: &str, file: &str) -> Result<Vec<(String, Shape)>, ParseError> {
    let mut lines = content_lines(text);
    let (line_no, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(file, 1, "", "missing 'parts U0|U1' header"))?;
    let kind = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["parts", kind] => parse_kind(file, line_no, kind)?,
        _ => return Err(ParseError::new(file, line_no, header, "expected 'parts U0|U1' header")),
    };
    let mut named: Vec<(String, Vec<(usize, Element)>)> = Vec::new();
    for (line_no, line) in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            ["part", name] => {
                if named.iter().any(|(n, _)| n == name) {
                    return Err(ParseError::new(file, line_no, name, "duplicate part name"));
                }
                named.push((name.to_string(), Vec::new()));
            }
            _ => match named.last_mut() {
                None => {
                    return Err(ParseError::new(file, line_no, line, "element before any 'part <name>'"))
                }
                Some((_, elements)) => {
                    elements.push((line_no, parse_element(file, line_no, line)?))
                }
            },
        }
    }
    named
        .into_iter()
        .map(|(name, elements)| Ok((name, shape_from_elements(file, kind, elements)?)))
        .collect()
}

pub fn read_parts(path: &Path) -> Result<Vec<(String, Shape)>, ReadError> {
    Ok(parse_parts(&read_to_string(path)?, &label_of(path))?)
}

/// A topology together with the file paths its file referenced.
#[derive(Debug, Clone)]
pub struct TopologyFile {
    pub topology: Topology,
    /// Carrier path as written in the header.
    pub carrier_path: String,
    /// Named-parts path as written in the header, when present.
    pub parts_path: Option<String>,
}

/// A candidate open family read from a `.topo` file, with its conditions
/// verdict: for checking files that may not be topologies at all.
#[derive(Debug, Clone)]
pub struct TopologyFamilyFile {
    pub carrier: Shape,
    pub opens: BTreeSet<Shape>,
    pub check: crate::topology::TopologyCheck,
}

/// Reads a `.topo` file, resolving the carrier (and optional parts file)
/// relative to the topology file's directory.
pub fn read_topology(path: &Path) -> Result<TopologyFile, ReadError> {
    let (carrier, opens, carrier_path, parts_path) = read_topology_raw(path)?;
    let topology = Topology::from_opens(opens, carrier)?;
    Ok(TopologyFile { topology, carrier_path, parts_path })
}

/// Reads a `.topo` file without insisting that the family is a topology;
/// the verdict of the conditions check rides along.
pub fn read_topology_family(path: &Path) -> Result<TopologyFamilyFile, ReadError> {
    let (carrier, opens, _, _) = read_topology_raw(path)?;
    let check = Topology::check_family(&opens, &carrier)?;
    Ok(TopologyFamilyFile { carrier, opens, check })
}

type RawTopology = (Shape, BTreeSet<Shape>, String, Option<String>);

fn read_topology_raw(path: &Path) -> Result<RawTopology, ReadError> {
    let text = read_to_string(path)?;
    let file = label_of(path);
    let base = path.parent().unwrap_or_else(|| Path::new("."));

    let mut lines = content_lines(&text).peekable();
    let (line_no, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(&file, 1, "", "missing 'topology over <shape-file>' header"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    let (carrier_path, parts_path) = match tokens.as_slice() {
        ["topology", "over", carrier] => (carrier.to_string(), None),
        ["topology", "over", carrier, "parts", parts] => {
            (carrier.to_string(), Some(parts.to_string()))
        }
        _ => {
            return Err(ParseError::new(
                &file,
                line_no,
                header,
                "expected 'topology over <shape-file> [parts <parts-file>]'",
            )
            .into())
        }
    };
    let carrier = read_shape(&base.join(&carrier_path))?;
    let named: BTreeMap<String, Shape> = match &parts_path {
        None => BTreeMap::new(),
        Some(p) => read_parts(&base.join(p))?.into_iter().collect(),
    };

    let mut opens: BTreeSet<Shape> = BTreeSet::new();
    while let Some((line_no, line)) = lines.next() {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            ["open", "{}"] => {
                opens.insert(Shape::empty(carrier.kind()));
            }
            ["open", "{"] => {
                let mut elements = Vec::new();
                loop {
                    match lines.next() {
                        None => {
                            return Err(ParseError::new(&file, line_no, "{", "unclosed open block").into())
                        }
                        Some((_, "}")) => break,
                        Some((element_line, element)) => {
                            elements.push((element_line, parse_element(&file, element_line, element)?))
                        }
                    }
                }
                opens.insert(shape_from_elements(&file, carrier.kind(), elements)?);
            }
            ["open", reference] if reference.starts_with('@') => {
                let name = &reference[1..];
                match named.get(name) {
                    Some(shape) => {
                        opens.insert(shape.clone());
                    }
                    None => {
                        return Err(ParseError::new(&file, line_no, reference, "unknown part name").into())
                    }
                }
            }
            _ => {
                return Err(ParseError::new(&file, line_no, line, "expected an 'open' block").into())
            }
        }
    }
    Ok((carrier, opens, carrier_path, parts_path))
}

/// Canonical `.topo` text: header plus inline open blocks sorted by
/// (element count, shape order).
pub fn format_topology(t: &Topology, carrier_path: &str) -> String {
    let mut out = format!("topology over {carrier_path}\n");
    for open in t.opens_sorted() {
        if open.is_empty() {
            out.push_str("open {}\n");
        } else {
            out.push_str("open {\n");
            for line in element_lines(open) {
                out.push_str("  ");
                out.push_str(&line);
                out.push('\n');
            }
            out.push_str("}\n");
        }
    }
    out
}

pub fn write_topology(path: &Path, t: &Topology, carrier_path: &str) -> Result<(), ReadError> {
    std::fs::write(path, format_topology(t, carrier_path))
        .map_err(|source| ReadError::Io { path: path.to_path_buf(), source })
}

/// Reads a `.map` file: one step per line, shapes resolved relative to the
/// map file's directory.
///
/// ```text
/// affine 0 -1 1 0 0 0
/// add extra.shape
/// sub hole.shape
/// ```
pub fn read_mapping(path: &Path) -> Result<Mapping, ReadError> {
    let text = read_to_string(path)?;
    let file = label_of(path);
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    let mut steps = Vec::new();
    for (line_no, line) in content_lines(&text) {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            ["affine", a, b, c, d, tx, ty] => {
                let m = [
                    [parse_scalar(&file, line_no, a)?, parse_scalar(&file, line_no, b)?],
                    [parse_scalar(&file, line_no, c)?, parse_scalar(&file, line_no, d)?],
                ];
                let v = [parse_scalar(&file, line_no, tx)?, parse_scalar(&file, line_no, ty)?];
                steps.push(Step::Affine(AffineMap::new(m, v)?));
            }
            ["add", shape_path] => steps.push(Step::Add(read_shape(&base.join(shape_path))?)),
            ["sub", shape_path] => steps.push(Step::Subtract(read_shape(&base.join(shape_path))?)),
            [verb, ..] => {
                return Err(ParseError::new(
                    &file,
                    line_no,
                    verb,
                    "expected 'affine a b c d tx ty', 'add <shape-file>' or 'sub <shape-file>'",
                )
                .into())
            }
            [] => unreachable!("blank lines are filtered"),
        }
    }
    Ok(Mapping::new(steps)?)
}

/// Canonical `.space` text: numbered points with inline shapes, then the
/// open sets as index lists.
pub fn format_space(st: &SetTopology) -> String {
    let mut out = format!("space {}\n", st.points().len());
    for p in st.points() {
        out.push_str(&format!("point {} {{ {} }}\n", p.index, p.shape));
    }
    for set in st.open_sets() {
        if set.is_empty() {
            out.push_str("open {}\n");
        } else {
            let indices: Vec<String> = set.iter().map(|i| i.to_string()).collect();
            out.push_str(&format!("open {{ {} }}\n", indices.join(" ")));
        }
    }
    out
}

/// Parses a `.space` file body back into a set topology.
pub fn parse_space(text: &str, file: &str) -> Result<SetTopology, ReadError> {
    let mut lines = content_lines(text);
    let (line_no, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(file, 1, "", "missing 'space <n>' header"))?;
    let count: usize = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["space", n] => n
            .parse()
            .map_err(|_| ParseError::new(file, line_no, n, "expected a point count"))?,
        _ => return Err(ParseError::new(file, line_no, header, "expected 'space <n>' header").into()),
    };
    let mut points: Vec<SpacePoint> = Vec::new();
    let mut open_sets: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    for (line_no, line) in lines {
        let inner = |prefix: &str| -> Option<&str> {
            line.strip_prefix(prefix)
                .and_then(|rest| rest.trim().strip_prefix('{'))
                .and_then(|rest| rest.strip_suffix('}'))
                .map(str::trim)
        };
        if let Some(rest) = line.strip_prefix("point ") {
            let (index_token, braces) = rest
                .split_once('{')
                .ok_or_else(|| ParseError::new(file, line_no, line, "expected 'point <i> { ... }'"))?;
            let index: usize = index_token.trim().parse().map_err(|_| {
                ParseError::new(file, line_no, index_token.trim(), "expected a point index")
            })?;
            let body = braces
                .strip_suffix('}')
                .ok_or_else(|| ParseError::new(file, line_no, line, "unclosed point braces"))?
                .trim();
            let mut elements = Vec::new();
            if body != "0" {
                for piece in body.split(';') {
                    elements.push((line_no, parse_element(file, line_no, piece.trim())?));
                }
            }
            let kind = match elements.first() {
                Some((_, Element::Point(_))) => Kind::U0,
                _ => Kind::U1,
            };
            points.push(SpacePoint { index, shape: shape_from_elements(file, kind, elements)? });
        } else if line == "open {}" {
            open_sets.insert(BTreeSet::new());
        } else if let Some(body) = inner("open") {
            let mut set = BTreeSet::new();
            for token in body.split_whitespace() {
                let i: usize = token
                    .parse()
                    .map_err(|_| ParseError::new(file, line_no, token, "expected a point index"))?;
                set.insert(i);
            }
            open_sets.insert(set);
        } else {
            return Err(ParseError::new(file, line_no, line, "expected 'point' or 'open' line").into());
        }
    }
    if points.len() != count {
        return Err(ParseError::new(
            file,
            1,
            &count.to_string(),
            format!("header declares {count} points, file lists {}", points.len()),
        )
        .into());
    }
    Ok(SetTopology::new(points, open_sets)?)
}
