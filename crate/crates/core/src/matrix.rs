//! Pairwise classification of `{0,1}^m` and its incidence-image rendering.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::bernstein::BerOutcome;
use crate::bits::BitString;
use crate::certify::{Comparer, OrderOutcome};
use crate::closure::{closure_of, RuleSet};
use crate::error::{Error, Result};
use crate::orders::FstProfile;

/// How a matrix decides each pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatrixMethod {
    /// Closure of seed rules; pairs outside it are incomparable.
    Rules { rules: RuleSet, allow_conjecture: bool },
    /// The exact order.
    Std,
    /// Coefficient-wise order at Bernstein degree `n`.
    Ber(usize),
    Fst,
}

impl MatrixMethod {
    /// Parses `std`, `fst`, `ber:<n>` or `rules:<SETS>`.
    pub fn parse(s: &str, allow_conjecture: bool) -> Result<Self> {
        let s = s.trim();
        match s {
            "std" => return Ok(Self::Std),
            "fst" => return Ok(Self::Fst),
            _ => {}
        }
        if let Some(n) = s.strip_prefix("ber:") {
            let n = n.parse().map_err(|_| Error::Parse(format!("bad Bernstein degree in {s:?}")))?;
            return Ok(Self::Ber(n));
        }
        if let Some(sets) = s.strip_prefix("rules:") {
            return Ok(Self::Rules { rules: sets.parse()?, allow_conjecture });
        }
        Err(Error::Parse(format!("unknown matrix method {s:?}")))
    }
}

impl FromStr for MatrixMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s, false)
    }
}

impl fmt::Display for MatrixMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Rules { rules, .. } => write!(f, "rules:{rules}"),
            Self::Std => f.write_str("std"),
            Self::Ber(n) => write!(f, "ber:{n}"),
            Self::Fst => f.write_str("fst"),
        }
    }
}

/// Row-major classification of every ordered pair of `{0,1}^m`; row `i` is the
/// string with binary value `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationMatrix {
    m: usize,
    method: String,
    cells: Vec<OrderOutcome>,
}

/// Counts by outcome.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub greater: usize,
    pub less: usize,
    pub equal: usize,
    pub equivalent: usize,
    pub incomparable: usize,
}

impl Tally {
    fn add(&mut self, o: OrderOutcome) {
        match o {
            OrderOutcome::Greater => self.greater += 1,
            OrderOutcome::Less => self.less += 1,
            OrderOutcome::Equal => self.equal += 1,
            OrderOutcome::Equivalent => self.equivalent += 1,
            OrderOutcome::Incomparable => self.incomparable += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.greater + self.less + self.equal + self.equivalent + self.incomparable
    }
}

/// All pixels, and those that differ from a reference matrix.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Census {
    pub all: Tally,
    pub not_dimmed: Option<Tally>,
}

impl fmt::Display for Census {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let line = |f: &mut fmt::Formatter<'_>, name: &str, t: &Tally| {
            writeln!(
                f,
                "{name}: greater {} less {} equal {} equivalent {} incomparable {}",
                t.greater, t.less, t.equal, t.equivalent, t.incomparable
            )
        };
        line(f, "all pixels", &self.all)?;
        if let Some(t) = &self.not_dimmed {
            line(f, "not dimmed", t)?;
        }
        Ok(())
    }
}

impl RelationMatrix {
    /// Classifies `{0,1}^m` under `method`.
    pub fn build(m: usize, method: &MatrixMethod) -> Result<Self> {
        let strings: Vec<BitString> = BitString::all_of_length(m).collect();
        let n = strings.len();
        let cells = match method {
            MatrixMethod::Rules { rules, allow_conjecture } => {
                let closed = closure_of(rules, m, *allow_conjecture)?;
                let mut cells = Vec::with_capacity(n * n);
                for a in &strings {
                    for g in &strings {
                        cells.push(closed.classify(a, g));
                    }
                }
                cells
            }
            MatrixMethod::Std => {
                let cmp = Comparer::new(strings)?;
                symmetric(n, |i, j| cmp.std(i, j))?
            }
            MatrixMethod::Ber(degree) => {
                let cmp = Comparer::with_degree(strings, *degree)?;
                symmetric(n, |i, j| {
                    Ok(match cmp.ber(i, j) {
                        BerOutcome::Holds => OrderOutcome::Greater,
                        BerOutcome::HoldsReversed => OrderOutcome::Less,
                        BerOutcome::Equal => OrderOutcome::Equal,
                        BerOutcome::Neither => OrderOutcome::Incomparable,
                    })
                })?
            }
            MatrixMethod::Fst => {
                let profiles = strings.par_iter().map(FstProfile::new).collect::<Result<Vec<_>>>()?;
                symmetric(n, |i, j| Ok(profiles[i].compare(&profiles[j])))?
            }
        };
        Ok(Self { m, method: method.to_string(), cells })
    }

    /// Builds from explicit cells; `cells.len()` must be `4^m`.
    pub fn from_cells(m: usize, method: impl Into<String>, cells: Vec<OrderOutcome>) -> Result<Self> {
        if cells.len() != 1 << (2 * m) {
            return Err(Error::Usage(format!("{} cells cannot form a 2^{m} square", cells.len())));
        }
        Ok(Self { m, method: method.into(), cells })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn side(&self) -> usize {
        1 << self.m
    }

    pub fn method(&self) -> &str {
        &self.method
    }

    pub fn get(&self, row: usize, col: usize) -> OrderOutcome {
        self.cells[row * self.side() + col]
    }

    pub fn cells(&self) -> &[OrderOutcome] {
        &self.cells
    }

    /// Pixel counts, with a second tally of pixels that differ from `reference`.
    pub fn census(&self, reference: Option<&RelationMatrix>) -> Result<Census> {
        let mut all = Tally::default();
        for &c in &self.cells {
            all.add(c);
        }
        let not_dimmed = match reference {
            None => None,
            Some(r) => {
                if r.m != self.m {
                    return Err(Error::UniverseMismatch);
                }
                let mut t = Tally::default();
                for (&c, &d) in self.cells.iter().zip(&r.cells) {
                    if c != d {
                        t.add(c);
                    }
                }
                Some(t)
            }
        };
        Ok(Census { all, not_dimmed })
    }

    /// Row `i` is greater than column `j` exactly when `j` is less than `i`.
    pub fn is_antisymmetric(&self) -> bool {
        let s = self.side();
        (0..s).all(|i| (0..s).all(|j| self.get(i, j) == self.get(j, i).reversed()))
    }
}

/// Evaluates `f` on pairs `i < j` in parallel and mirrors the result.
fn symmetric(n: usize, f: impl Fn(usize, usize) -> Result<OrderOutcome> + Sync) -> Result<Vec<OrderOutcome>> {
    let upper: Vec<Vec<OrderOutcome>> =
        (0..n).into_par_iter().map(|i| (i + 1..n).map(|j| f(i, j)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
    let mut cells = vec![OrderOutcome::Equal; n * n];
    for (i, row) in upper.iter().enumerate() {
        for (k, &o) in row.iter().enumerate() {
            let j = i + 1 + k;
            cells[i * n + j] = o;
            cells[j * n + i] = o.reversed();
        }
    }
    Ok(cells)
}

pub type Rgb = [u8; 3];

/// Colors per outcome. Equal and Equivalent share the Greater color by default,
/// since the row outperforms the column.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Palette {
    pub greater: Rgb,
    pub less: Rgb,
    pub incomparable: Rgb,
    pub equal: Rgb,
}

impl Default for Palette {
    fn default() -> Self {
        Self { greater: [0, 17, 170], less: [17, 102, 0], incomparable: [136, 0, 17], equal: [0, 17, 170] }
    }
}

fn parse_hex(s: &str) -> Result<Rgb> {
    let h = s.trim().trim_start_matches('#');
    let bad = || Error::Parse(format!("not a hex color: {s:?}"));
    if h.len() != 6 {
        return Err(bad());
    }
    let byte = |i: usize| u8::from_str_radix(&h[i..i + 2], 16).map_err(|_| bad());
    Ok([byte(0)?, byte(2)?, byte(4)?])
}

impl FromStr for Palette {
    type Err = Error;

    /// Three or four comma-separated hex colors: greater, less, incomparable[, equal].
    fn from_str(s: &str) -> Result<Self> {
        let colors = s.split(',').map(parse_hex).collect::<Result<Vec<_>>>()?;
        match colors[..] {
            [g, l, i] => Ok(Self { greater: g, less: l, incomparable: i, equal: g }),
            [g, l, i, e] => Ok(Self { greater: g, less: l, incomparable: i, equal: e }),
            _ => Err(Error::Parse(format!("expected three or four colors in {s:?}"))),
        }
    }
}

impl Palette {
    pub fn color(&self, o: OrderOutcome) -> Rgb {
        match o {
            OrderOutcome::Greater => self.greater,
            OrderOutcome::Less => self.less,
            OrderOutcome::Incomparable => self.incomparable,
            OrderOutcome::Equal | OrderOutcome::Equivalent => self.equal,
        }
    }
}

/// Palette plus the dimming strength.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RenderSpec {
    pub palette: Palette,
    /// Fraction of the way toward white for pixels that match the reference.
    pub dim: f64,
}

impl Default for RenderSpec {
    fn default() -> Self {
        Self { palette: Palette::default(), dim: 0.7 }
    }
}

impl RenderSpec {
    pub fn dimmed(&self, c: Rgb) -> Rgb {
        c.map(|v| (f64::from(v) + (255.0 - f64::from(v)) * self.dim).round() as u8)
    }

    /// Binary PPM, one pixel per pair; pixels equal to `reference` are dimmed.
    pub fn render(&self, matrix: &RelationMatrix, reference: Option<&RelationMatrix>) -> Result<Vec<u8>> {
        if reference.is_some_and(|r| r.m != matrix.m) {
            return Err(Error::UniverseMismatch);
        }
        let side = matrix.side();
        let mut out = format!("P6\n{side} {side}\n255\n").into_bytes();
        out.reserve(3 * side * side);
        for (k, &c) in matrix.cells.iter().enumerate() {
            let color = self.palette.color(c);
            let color = match reference {
                Some(r) if r.cells[k] == c => self.dimmed(color),
                _ => color,
            };
            out.extend_from_slice(&color);
        }
        Ok(out)
    }

    /// Recounts a rendered image by color: (full-color tally, dimmed tally).
    ///
    /// Equal and Greater share a color by default, so both land in `greater`.
    pub fn recount(&self, ppm: &[u8]) -> Result<(Tally, Tally)> {
        let bad = |m: &str| Error::Parse(format!("malformed image: {m}"));
        let mut fields = Vec::new();
        let mut pos = 0;
        while fields.len() < 4 {
            while pos < ppm.len() && ppm[pos].is_ascii_whitespace() {
                pos += 1;
            }
            let start = pos;
            while pos < ppm.len() && !ppm[pos].is_ascii_whitespace() {
                pos += 1;
            }
            if start == pos {
                return Err(bad("truncated header"));
            }
            fields.push(std::str::from_utf8(&ppm[start..pos]).map_err(|_| bad("header"))?.to_string());
        }
        pos += 1;
        if fields[0] != "P6" || fields[3] != "255" {
            return Err(bad("not an 8-bit P6 image"));
        }
        let w: usize = fields[1].parse().map_err(|_| bad("width"))?;
        let h: usize = fields[2].parse().map_err(|_| bad("height"))?;
        let body = &ppm[pos..];
        if body.len() != 3 * w * h {
            return Err(bad("pixel data length"));
        }
        let (mut full, mut dim) = (Tally::default(), Tally::default());
        let p = &self.palette;
        let classes = [
            (p.greater, OrderOutcome::Greater),
            (p.less, OrderOutcome::Less),
            (p.incomparable, OrderOutcome::Incomparable),
            (p.equal, OrderOutcome::Equal),
        ];
        for px in body.chunks_exact(3) {
            let px = [px[0], px[1], px[2]];
            if let Some((_, o)) = classes.iter().find(|(c, _)| *c == px) {
                full.add(*o);
            } else if let Some((_, o)) = classes.iter().find(|(c, _)| self.dimmed(*c) == px) {
                dim.add(*o);
            } else {
                return Err(bad("pixel outside the palette"));
            }
        }
        Ok((full, dim))
    }
}
