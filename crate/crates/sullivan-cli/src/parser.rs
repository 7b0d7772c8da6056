//! The model-description language.
//!
//! Line-oriented grammar, `#` starts a comment:
//!
//! ```text
//! generator <name> <degree>
//! d <name> = <polynomial>
//! ```
//!
//! Polynomials are ±-separated terms `[coeff *] name[^exp] [* name[^exp] …]`
//! with integer or rational (`a/b`) coefficients. Generators without a `d`
//! line have zero differential. Parsing never panics; all problems come back
//! as [`Diagnostic`]s with line/column positions.

use std::collections::BTreeMap;

use sullivan_core::algebra::{ratio, Algebra, Polynomial};
use sullivan_core::derivation::Derivation;
use sullivan_core::model::{SullivanModel, ValidationIssue};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Category {
    Syntax,
    UnknownGenerator,
    DegreeMismatch,
    Minimality,
    OrderViolation,
    SquareZero,
}

impl Category {
    pub fn label(self) -> &'static str {
        match self {
            Category::Syntax => "syntax",
            Category::UnknownGenerator => "unknown generator",
            Category::DegreeMismatch => "degree mismatch",
            Category::Minimality => "minimality",
            Category::OrderViolation => "order violation",
            Category::SquareZero => "d^2 failure",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Diagnostic {
    pub line: usize,
    pub col: usize,
    pub category: Category,
    pub message: String,
}

impl Diagnostic {
    pub fn render(&self) -> String {
        format!(
            "{}:{}: {}: {}",
            self.line,
            self.col,
            self.category.label(),
            self.message
        )
    }
}

/// Parses a model source; returns every diagnostic found rather than the
/// first one. A model is returned only when the diagnostic list is empty.
pub fn parse_model(source: &str) -> Result<SullivanModel, Vec<Diagnostic>> {
    let mut diagnostics = Vec::new();
    let mut gens: Vec<(String, usize)> = Vec::new();
    let mut gen_lines: BTreeMap<String, usize> = BTreeMap::new();
    // pass 1: generator declarations
    for (line_no, raw) in source.lines().enumerate() {
        let line_no = line_no + 1;
        let line = strip_comment(raw);
        let mut words = line.split_whitespace();
        match words.next() {
            Some("generator") => {}
            _ => continue,
        }
        let name = match words.next() {
            Some(w) => w.to_string(),
            None => {
                diagnostics.push(Diagnostic {
                    line: line_no,
                    col: 1,
                    category: Category::Syntax,
                    message: "expected `generator <name> <degree>`".into(),
                });
                continue;
            }
        };
        if !is_identifier(&name) {
            diagnostics.push(Diagnostic {
                line: line_no,
                col: column_of(raw, &name),
                category: Category::Syntax,
                message: format!("`{name}` is not a valid generator name"),
            });
            continue;
        }
        let degree = match words.next().map(str::parse::<usize>) {
            Some(Ok(n)) => n,
            _ => {
                diagnostics.push(Diagnostic {
                    line: line_no,
                    col: 1,
                    category: Category::Syntax,
                    message: format!("generator `{name}` needs a nonnegative integer degree"),
                });
                continue;
            }
        };
        if words.next().is_some() {
            diagnostics.push(Diagnostic {
                line: line_no,
                col: 1,
                category: Category::Syntax,
                message: "trailing tokens after generator declaration".into(),
            });
            continue;
        }
        if gen_lines.contains_key(&name) {
            diagnostics.push(Diagnostic {
                line: line_no,
                col: column_of(raw, &name),
                category: Category::Syntax,
                message: format!("generator `{name}` declared twice"),
            });
            continue;
        }
        gen_lines.insert(name.clone(), line_no);
        gens.push((name, degree));
    }
    let algebra = Algebra::new(gens);
    // pass 2: differential assignments
    let mut values: Vec<(usize, Polynomial)> = Vec::new();
    let mut d_lines: BTreeMap<usize, usize> = BTreeMap::new();
    for (line_no, raw) in source.lines().enumerate() {
        let line_no = line_no + 1;
        let line = strip_comment(raw);
        let trimmed = line.trim_start();
        if !(trimmed.starts_with("d ") || trimmed.starts_with("d\t")) {
            if !trimmed.is_empty()
                && !trimmed.starts_with("generator ")
                && !trimmed.starts_with("generator\t")
            {
                diagnostics.push(Diagnostic {
                    line: line_no,
                    col: 1,
                    category: Category::Syntax,
                    message: format!("unrecognized line `{}`", trimmed),
                });
            }
            continue;
        }
        match parse_d_line(raw, line_no, &algebra) {
            Ok((id, poly)) => {
                if d_lines.contains_key(&id) {
                    diagnostics.push(Diagnostic {
                        line: line_no,
                        col: 1,
                        category: Category::Syntax,
                        message: format!(
                            "differential of `{}` assigned twice",
                            algebra.generator(id).name
                        ),
                    });
                } else {
                    d_lines.insert(id, line_no);
                    values.push((id, poly));
                }
            }
            Err(d) => diagnostics.push(d),
        }
    }
    if !diagnostics.is_empty() {
        return Err(diagnostics);
    }
    let model = SullivanModel::new(algebra, Derivation::new(1, values));
    // structural validation, mapped back to the offending d line
    let report = model.validate();
    for issue in &report.issues {
        let gen = issue.generator().to_string();
        let id = model.algebra().generator_by_name(&gen).map(|g| g.id);
        let line = id
            .and_then(|id| d_lines.get(&id))
            .or_else(|| gen_lines.get(&gen))
            .copied()
            .unwrap_or(0);
        diagnostics.push(Diagnostic {
            line,
            col: 1,
            category: match issue {
                ValidationIssue::DegreeTooSmall { .. } => Category::DegreeMismatch,
                ValidationIssue::OrderViolation { .. } => Category::OrderViolation,
                ValidationIssue::DegreeMismatch { .. } => Category::DegreeMismatch,
                ValidationIssue::MinimalityViolation { .. } => Category::Minimality,
                ValidationIssue::TriangularityViolation { .. } => Category::OrderViolation,
                ValidationIssue::NotSquareZero { .. } => Category::SquareZero,
            },
            message: issue.describe(),
        });
    }
    if diagnostics.is_empty() {
        Ok(model)
    } else {
        Err(diagnostics)
    }
}

/// Parses a standalone polynomial expression over an existing algebra,
/// using the same grammar as the right-hand side of a `d` line.
pub fn parse_polynomial_in(algebra: &Algebra, expr: &str) -> Result<Polynomial, Diagnostic> {
    PolyParser::new(expr, 0, 1, algebra).parse()
}

/// Renders a model in the input language; `parse_model` round-trips it.
pub fn print_model(model: &SullivanModel) -> String {
    let mut out = String::new();
    for g in model.algebra().generators() {
        out.push_str(&format!("generator {} {}\n", g.name, g.degree));
    }
    for g in model.algebra().generators() {
        let dv = model.differential().value_on(g.id);
        if !dv.is_zero() {
            out.push_str(&format!(
                "d {} = {}\n",
                g.name,
                model.algebra().format_polynomial(&dv)
            ));
        }
    }
    out
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn column_of(line: &str, token: &str) -> usize {
    line.find(token).map(|i| i + 1).unwrap_or(0)
}

fn parse_d_line(
    raw: &str,
    line_no: usize,
    algebra: &Algebra,
) -> Result<(usize, Polynomial), Diagnostic> {
    let line = strip_comment(raw);
    let eq = line.find('=').ok_or(Diagnostic {
        line: line_no,
        col: 1,
        category: Category::Syntax,
        message: "expected `d <name> = <polynomial>`".into(),
    })?;
    let head: Vec<&str> = line[..eq].split_whitespace().collect();
    if head.len() != 2 || head[0] != "d" {
        return Err(Diagnostic {
            line: line_no,
            col: 1,
            category: Category::Syntax,
            message: "expected `d <name> = <polynomial>`".into(),
        });
    }
    let name = head[1];
    let id = algebra
        .generator_by_name(name)
        .map(|g| g.id)
        .ok_or(Diagnostic {
            line: line_no,
            col: column_of(line, name),
            category: Category::UnknownGenerator,
            message: format!("`{name}` is not a declared generator"),
        })?;
    let poly = PolyParser::new(line, eq + 1, line_no, algebra).parse()?;
    Ok((id, poly))
}

/// Recursive-descent parser for the polynomial fragment of a `d` line.
/// Tracks byte columns in the original line for diagnostics.
struct PolyParser<'a> {
    chars: Vec<char>,
    pos: usize,
    offset: usize,
    line_no: usize,
    algebra: &'a Algebra,
}

impl<'a> PolyParser<'a> {
    fn new(line: &str, start: usize, line_no: usize, algebra: &'a Algebra) -> Self {
        let mut chars: Vec<char> = line.chars().collect();
        chars.drain(..start.min(chars.len()));
        PolyParser {
            chars,
            pos: 0,
            offset: start,
            line_no,
            algebra,
        }
    }

    fn col(&self) -> usize {
        // columns are 1-based and counted from the original line start
        self.offset + self.pos + 1
    }

    fn err(&self, category: Category, message: String) -> Diagnostic {
        Diagnostic {
            line: self.line_no,
            col: self.col(),
            category,
            message,
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<Polynomial, Diagnostic> {
        self.skip_ws();
        if self.peek().is_none() {
            return Err(self.err(
                Category::Syntax,
                "expected a polynomial after `=`".into(),
            ));
        }
        let mut total = Polynomial::zero();
        let mut first = true;
        loop {
            self.skip_ws();
            let sign = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    1
                }
                Some('-') => {
                    self.pos += 1;
                    -1
                }
                Some(_) if first => 1,
                Some(c) => {
                    return Err(self.err(
                        Category::Syntax,
                        format!("expected `+` or `-` between terms, found `{c}`"),
                    ))
                }
                None => break,
            };
            first = false;
            let term = self.parse_term()?;
            total = if sign == 1 { total.add(&term) } else { total.sub(&term) };
            self.skip_ws();
            if self.peek().is_none() {
                break;
            }
        }
        Ok(total)
    }

    /// term := coeff | coeff '*' factors | factors
    fn parse_term(&mut self) -> Result<Polynomial, Diagnostic> {
        self.skip_ws();
        let mut term = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let coeff = self.parse_rational()?;
                self.skip_ws();
                if self.peek() == Some('*') {
                    self.pos += 1;
                } else if self.peek().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') {
                    return Err(self.err(
                        Category::Syntax,
                        "expected `*` between coefficient and generator".into(),
                    ));
                } else {
                    return Ok(Polynomial::one().scale(&coeff));
                }
                Polynomial::one().scale(&coeff)
            }
            _ => Polynomial::one(),
        };
        loop {
            let factor = self.parse_factor()?;
            term = self.algebra.multiply(&term, &factor);
            self.skip_ws();
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(term)
    }

    /// factor := name ['^' int]
    fn parse_factor(&mut self) -> Result<Polynomial, Diagnostic> {
        self.skip_ws();
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            self.pos += 1;
        }
        let name: String = self.chars[start..self.pos].iter().collect();
        if name.is_empty() || !is_identifier(&name) {
            return Err(self.err(
                Category::Syntax,
                match self.peek() {
                    Some(c) => format!("expected a generator name, found `{c}`"),
                    None => "expected a generator name".into(),
                },
            ));
        }
        let id = self
            .algebra
            .generator_by_name(&name)
            .map(|g| g.id)
            .ok_or_else(|| {
                Diagnostic {
                    line: self.line_no,
                    col: self.offset + start + 1,
                    category: Category::UnknownGenerator,
                    message: format!("`{name}` is not a declared generator"),
                }
            })?;
        let mut exp = 1u32;
        if self.peek() == Some('^') {
            self.pos += 1;
            exp = self.parse_integer()? as u32;
        }
        let mut factor = Polynomial::one();
        let g = Polynomial::generator(id);
        for _ in 0..exp {
            factor = self.algebra.multiply(&factor, &g);
        }
        Ok(factor)
    }

    fn parse_integer(&mut self) -> Result<i64, Diagnostic> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse::<i64>()
            .map_err(|_| self.err(Category::Syntax, "expected an integer".into()))
    }

    fn parse_rational(&mut self) -> Result<sullivan_core::Rational, Diagnostic> {
        let numer = self.parse_integer()?;
        if self.peek() == Some('/') {
            self.pos += 1;
            let denom = self.parse_integer()?;
            if denom == 0 {
                return Err(self.err(Category::Syntax, "zero denominator".into()));
            }
            Ok(ratio(numer, denom))
        } else {
            Ok(ratio(numer, 1))
        }
    }
}
