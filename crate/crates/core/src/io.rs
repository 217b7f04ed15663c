//! File formats: JSON complexes and filtrations with weights stored as
//! strings, plain-text graphs, and plain-text simplex lists.
//!
//! A complex file looks like
//!
//! ```json
//! {
//!   "ring": "int",
//!   "vertices": ["v0", "v1"],
//!   "simplices": [
//!     {"vertices": ["v0"], "weight": "1"},
//!     {"vertices": ["v1"], "weight": "1"},
//!     {"vertices": ["v0", "v1"], "weight": "4"}
//!   ]
//! }
//! ```
//!
//! `ring` is `int`, `poly` (one variable, weights in `Q[x]`) or `mpoly`
//! (several variables, monomial weights for Stanley-Reisner filtrations);
//! the polynomial rings also list their `variables`. A filtration file adds
//! `steps` and a `birth` to every simplex record.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::{FilteredComplex, Simplex, Weight, WeightedComplex};
use crate::error::{Error, Result};
use crate::filtration::WeightedGraph;
use crate::ring::{Monomial, MultiPoly, QPoly};

type Spanned<T> = std::result::Result<T, (usize, String)>;

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    vars: &'a [String],
}

impl Cursor<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Spanned<T> {
        Err((self.pos + 1, msg.into()))
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    /// `123`, `1.25` or `3/4`.
    fn number(&mut self) -> Spanned<BigRational> {
        let int_part = self.digits();
        let mut value = BigRational::from_integer(int_part.parse::<BigInt>().expect("digits"));
        if self.peek() == Some('.') {
            self.pos += 1;
            let frac = self.digits();
            if frac.is_empty() {
                return self.err("expected digits after the decimal point");
            }
            let scale = num_traits::pow(BigInt::from(10), frac.len());
            value += BigRational::new(frac.parse::<BigInt>().expect("digits"), scale);
        } else if self.peek() == Some('/') {
            self.pos += 1;
            let den = self.digits();
            if den.is_empty() {
                return self.err("expected a denominator");
            }
            let den: BigInt = den.parse().expect("digits");
            if den.is_zero() {
                return Err((self.pos, "division by zero".into()));
            }
            value /= BigRational::from_integer(den);
        }
        Ok(value)
    }

    fn factor(&mut self, coeff: &mut BigRational, exps: &mut [u32]) -> Spanned<()> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                *coeff *= self.number()?;
                Ok(())
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                let Some(idx) = self.vars.iter().position(|v| *v == name) else {
                    return Err((start + 1, format!("unknown variable '{name}'")));
                };
                let mut e = 1u32;
                if self.peek() == Some('^') {
                    self.pos += 1;
                    let d = self.digits();
                    e = d.parse().map_err(|_| (self.pos + 1, "expected an exponent".to_string()))?;
                }
                exps[idx] += e;
                Ok(())
            }
            Some(c) => self.err(format!("unexpected '{c}'")),
            None => self.err("unexpected end of input"),
        }
    }

    fn term(&mut self) -> Spanned<(BigRational, Vec<u32>)> {
        let mut coeff = BigRational::one();
        let mut exps = vec![0; self.vars.len()];
        self.factor(&mut coeff, &mut exps)?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    self.skip_ws();
                    self.factor(&mut coeff, &mut exps)?;
                }
                Some(c) if c.is_alphanumeric() || c == '_' => self.factor(&mut coeff, &mut exps)?,
                _ => return Ok((coeff, exps)),
            }
        }
    }
}

/// Parses a polynomial in the given variables into exponent vectors with
/// nonzero coefficients. Errors carry a 1-based column.
fn parse_terms(s: &str, vars: &[String]) -> Spanned<BTreeMap<Vec<u32>, BigRational>> {
    let mut c = Cursor {
        chars: s.chars().collect(),
        pos: 0,
        vars,
    };
    let mut acc: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
    c.skip_ws();
    if c.peek().is_none() {
        return c.err("empty expression");
    }
    let mut first = true;
    loop {
        c.skip_ws();
        let mut negative = false;
        match c.peek() {
            Some('+') | Some('-') => {
                negative = c.peek() == Some('-');
                c.pos += 1;
                c.skip_ws();
            }
            _ if !first => return c.err("expected '+' or '-'"),
            _ => {}
        }
        first = false;
        let (coeff, exps) = c.term()?;
        let entry = acc.entry(exps).or_insert_with(BigRational::zero);
        if negative {
            *entry -= coeff;
        } else {
            *entry += coeff;
        }
        c.skip_ws();
        if c.peek().is_none() {
            break;
        }
    }
    acc.retain(|_, v| !v.is_zero());
    Ok(acc)
}

fn at_line_one<T>(r: Spanned<T>) -> Result<T> {
    r.map_err(|(col, msg)| Error::parse(1, col, msg))
}

/// A rational number such as `3`, `-0.25` or `7/3`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    at_line_one(rational_spanned(s))
}

fn rational_spanned(s: &str) -> Spanned<BigRational> {
    let terms = parse_terms(s, &[])?;
    Ok(terms.get(&Vec::new()).cloned().unwrap_or_else(BigRational::zero))
}

pub fn parse_qpoly(s: &str, var: &str) -> Result<QPoly> {
    at_line_one(QPoly::parse_weight(s, &[var.to_string()]))
}

pub fn parse_multipoly(s: &str, vars: &[String]) -> Result<MultiPoly> {
    at_line_one(MultiPoly::parse_weight(s, vars))
}

/// Weights that can be written to and read from files.
pub trait WeightFormat: Weight + Sized {
    const RING_TAG: &'static str;
    fn render(&self, vars: &[String]) -> String;
    /// Parses a weight; the error carries a 1-based column within `s`.
    fn parse_weight(s: &str, vars: &[String]) -> Spanned<Self>;
}

impl WeightFormat for BigInt {
    const RING_TAG: &'static str = "int";

    fn render(&self, _: &[String]) -> String {
        self.to_string()
    }

    fn parse_weight(s: &str, _: &[String]) -> Spanned<Self> {
        let t = s.trim();
        let lead = s.len() - s.trim_start().len();
        t.parse::<BigInt>()
            .map_err(|_| (lead + 1, format!("'{t}' is not an integer")))
    }
}

impl WeightFormat for QPoly {
    const RING_TAG: &'static str = "poly";

    fn render(&self, vars: &[String]) -> String {
        self.fmt_with(&vars[0])
    }

    fn parse_weight(s: &str, vars: &[String]) -> Spanned<Self> {
        let terms = parse_terms(s, vars)?;
        let deg = terms.keys().map(|e| e[0] as usize).max().unwrap_or(0);
        let mut coeffs = vec![BigRational::zero(); deg + 1];
        for (e, c) in terms {
            coeffs[e[0] as usize] = c;
        }
        Ok(QPoly::new(coeffs))
    }
}

impl WeightFormat for MultiPoly {
    const RING_TAG: &'static str = "mpoly";

    fn render(&self, vars: &[String]) -> String {
        self.fmt_with(vars)
    }

    fn parse_weight(s: &str, vars: &[String]) -> Spanned<Self> {
        let terms = parse_terms(s, vars)?;
        Ok(MultiPoly::from_terms(
            vars.len(),
            terms.into_iter().map(|(e, c)| (c, Monomial(e))).collect(),
        ))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SimplexRecord {
    vertices: Vec<String>,
    weight: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    birth: Option<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileRepr {
    ring: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    variables: Vec<String>,
    vertices: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    steps: Option<usize>,
    simplices: Vec<SimplexRecord>,
}

/// Line and column (1-based) of the `nth` occurrence of `needle`.
fn locate(text: &str, needle: &str, nth: usize) -> (usize, usize) {
    let Some((offset, _)) = text.match_indices(needle).nth(nth) else {
        return (1, 1);
    };
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

/// Position of the value of the `nth` `"weight"` key, just inside its quote.
fn locate_weight(text: &str, nth: usize) -> (usize, usize) {
    let key = "\"weight\"";
    let Some((offset, _)) = text.match_indices(key).nth(nth) else {
        return (1, 1);
    };
    let rest = &text[offset + key.len()..];
    let quote = rest.find('"').map_or(0, |q| q + 1);
    let abs = offset + key.len() + quote;
    let before = &text[..abs];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

fn parse_repr(text: &str) -> Result<FileRepr> {
    serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))
}

fn check_ring(text: &str, repr: &FileRepr, tag: &str) -> Result<()> {
    if repr.ring != tag {
        let (line, col) = locate(text, "\"ring\"", 0);
        return Err(Error::parse(line, col, format!("expected ring \"{tag}\", found \"{}\"", repr.ring)));
    }
    let expected_vars = match tag {
        "int" => repr.variables.is_empty(),
        "poly" => repr.variables.len() == 1,
        _ => !repr.variables.is_empty(),
    };
    if !expected_vars {
        let (line, col) = locate(text, "\"ring\"", 0);
        return Err(Error::parse(line, col, format!("ring \"{tag}\" has the wrong number of variables")));
    }
    Ok(())
}

fn build_complex<W: WeightFormat>(text: &str, repr: &FileRepr) -> Result<(WeightedComplex<W>, Vec<Option<usize>>)> {
    check_ring(text, repr, W::RING_TAG)?;
    let mut ids: HashMap<&str, u32> = HashMap::new();
    for (i, v) in repr.vertices.iter().enumerate() {
        if ids.insert(v, i as u32).is_some() {
            let (line, col) = locate(text, &format!("\"{v}\""), 1);
            return Err(Error::parse(line, col, format!("vertex '{v}' is declared twice")));
        }
    }
    let mut k = WeightedComplex::new(repr.vertices.clone());
    let mut births = Vec::with_capacity(repr.simplices.len());
    for (n, rec) in repr.simplices.iter().enumerate() {
        let verts = rec
            .vertices
            .iter()
            .map(|name| {
                ids.get(name.as_str()).copied().ok_or_else(|| {
                    let (line, col) = locate(text, "\"vertices\"", n + 1);
                    Error::parse(line, col, format!("simplex {n} uses undeclared vertex '{name}'"))
                })
            })
            .collect::<Result<Vec<u32>>>()?;
        let s = Simplex::new(verts)?;
        let w = W::parse_weight(&rec.weight, &repr.variables).map_err(|(c, msg)| {
            let (line, col) = locate_weight(text, n);
            Error::parse(line, col + c - 1, format!("weight of simplex {n}: {msg}"))
        })?;
        if k.contains(&s) {
            let (line, col) = locate(text, "\"vertices\"", n + 1);
            return Err(Error::parse(line, col, format!("simplex {} is listed twice", k.fmt_simplex(&s))));
        }
        k.insert(s, w)?;
        births.push(rec.birth);
    }
    Ok((k, births))
}

/// Reads a complex whose weights live in `W`. Returns the variable names.
pub fn read_complex<W: WeightFormat>(text: &str) -> Result<(WeightedComplex<W>, Vec<String>)> {
    let repr = parse_repr(text)?;
    let (k, _) = build_complex(text, &repr)?;
    Ok((k, repr.variables))
}

/// Reads a filtration whose weights live in `W`.
pub fn read_filtration<W: WeightFormat>(text: &str) -> Result<(FilteredComplex<W>, Vec<String>)> {
    let repr = parse_repr(text)?;
    let (k, births) = build_complex::<W>(text, &repr)?;
    let Some(steps) = repr.steps else {
        return Err(Error::parse(1, 1, "a filtration file needs \"steps\""));
    };
    let mut birth = BTreeMap::new();
    for (n, ((s, _), b)) in k.iter().zip(sorted_births(&repr, &k, &births)).enumerate() {
        let Some(b) = b else {
            let (line, col) = locate(text, "\"vertices\"", n + 1);
            return Err(Error::parse(line, col, format!("simplex {} has no birth", k.fmt_simplex(s))));
        };
        birth.insert(s.clone(), b);
    }
    Ok((FilteredComplex::new(k, birth, steps)?, repr.variables))
}

/// Births reordered to follow the complex's simplex order.
fn sorted_births<W: Weight>(repr: &FileRepr, k: &WeightedComplex<W>, births: &[Option<usize>]) -> Vec<Option<usize>> {
    let ids: HashMap<&str, u32> = repr.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i as u32)).collect();
    let by_simplex: HashMap<Simplex, Option<usize>> = repr
        .simplices
        .iter()
        .zip(births)
        .map(|(rec, b)| {
            let s = Simplex::new(rec.vertices.iter().map(|v| ids[v.as_str()]).collect()).expect("validated");
            (s, *b)
        })
        .collect();
    k.iter().map(|(s, _)| by_simplex[s]).collect()
}

/// The ring tag of a complex or filtration file, without reading the rest.
pub fn ring_tag(text: &str) -> Result<String> {
    #[derive(Deserialize)]
    struct Tag {
        ring: String,
    }
    serde_json::from_str::<Tag>(text)
        .map(|t| t.ring)
        .map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))
}

fn to_repr<W: WeightFormat>(k: &WeightedComplex<W>, vars: &[String], birth: Option<&FilteredComplex<W>>) -> FileRepr {
    FileRepr {
        ring: W::RING_TAG.to_string(),
        variables: vars.to_vec(),
        vertices: k.labels().to_vec(),
        steps: birth.map(FilteredComplex::steps),
        simplices: k
            .iter()
            .map(|(s, w)| SimplexRecord {
                vertices: s.vertices().iter().map(|&v| k.labels()[v as usize].clone()).collect(),
                weight: w.render(vars),
                birth: birth.and_then(|f| f.birth(s)),
            })
            .collect(),
    }
}

pub fn write_complex<W: WeightFormat>(k: &WeightedComplex<W>, vars: &[String]) -> String {
    serde_json::to_string_pretty(&to_repr(k, vars, None)).expect("serializable") + "\n"
}

pub fn write_filtration<W: WeightFormat>(f: &FilteredComplex<W>, vars: &[String]) -> String {
    serde_json::to_string_pretty(&to_repr(f.complex(), vars, Some(f))).expect("serializable") + "\n"
}

/// Reads `u v weight` lines; `#` starts a comment. Vertices are numbered in
/// order of first appearance.
pub fn read_graph(text: &str) -> Result<WeightedGraph> {
    let mut labels: Vec<String> = Vec::new();
    let mut ids: HashMap<String, u32> = HashMap::new();
    let mut edges = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let tokens = tokens_with_columns(line);
        if tokens.is_empty() {
            continue;
        }
        if tokens.len() != 3 {
            let col = tokens.get(3).map_or(line.len() + 1, |t| t.0);
            return Err(Error::parse(ln + 1, col, format!("expected 'u v weight', found {} fields", tokens.len())));
        }
        let mut id = |name: &str| {
            *ids.entry(name.to_string()).or_insert_with(|| {
                labels.push(name.to_string());
                labels.len() as u32 - 1
            })
        };
        let u = id(tokens[0].1);
        let v = id(tokens[1].1);
        let w = rational_spanned(tokens[2].1).map_err(|(c, msg)| Error::parse(ln + 1, tokens[2].0 + c - 1, msg))?;
        edges.push((u, v, w));
    }
    WeightedGraph::new(labels, edges)
}

pub fn write_graph(g: &WeightedGraph) -> String {
    g.edges()
        .iter()
        .map(|(u, v, w)| format!("{} {} {}\n", g.labels()[*u as usize], g.labels()[*v as usize], w))
        .collect()
}

fn tokens_with_columns(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((line[..s].chars().count() + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((line[..s].chars().count() + 1, &line[s..]));
    }
    out
}

/// One simplex per line, given by whitespace-separated vertex labels.
pub fn read_simplex_list(text: &str, labels: &[String]) -> Result<Vec<Simplex>> {
    let ids: HashMap<&str, u32> = labels.iter().enumerate().map(|(i, v)| (v.as_str(), i as u32)).collect();
    let mut out = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let tokens = tokens_with_columns(line);
        if tokens.is_empty() {
            continue;
        }
        let verts = tokens
            .iter()
            .map(|(col, t)| {
                ids.get(t)
                    .copied()
                    .ok_or_else(|| Error::parse(ln + 1, *col, format!("unknown vertex '{t}'")))
            })
            .collect::<Result<Vec<u32>>>()?;
        out.push(Simplex::new(verts)?);
    }
    Ok(out)
}
