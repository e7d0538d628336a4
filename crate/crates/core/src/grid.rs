//! Grid (rectangular) diagrams and their Thurston–Bennequin number.
//!
//! Coordinates: row 0 is the southernmost row and column 0 the westernmost,
//! so "north" is increasing row and "east" increasing column. Each row holds
//! one X and one O marker; the row segment runs O → X, the column segment
//! X → O. Horizontal segments always pass over vertical ones.
//!
//! A crossing where the over strand heads `h` (±1, east positive) and the
//! under strand heads `v` (±1, north positive) has sign `h·v`. This is the
//! right-hand rule, and it gives the 5×5 trefoil grids with tb = 1 writhe +3.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::permutation::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("grid syntax error: {0}")]
    Syntax(String),
    #[error("{marker} markers are not a permutation of 0..{size}")]
    NotPermutation { marker: char, size: usize },
    #[error("X and O markers collide in row {row}")]
    MarkerCollision { row: usize },
    #[error("grid diagram has {components} components, expected a knot")]
    NotAKnot { components: usize },
    #[error("row {row} out of range for a grid of size {size}")]
    InvalidRow { row: usize, size: usize },
    #[error("stabilization postcondition failed: {0}")]
    Postcondition(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Marker {
    X,
    O,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CornerKind {
    NE,
    NW,
    SE,
    SW,
}

impl CornerKind {
    /// Classifies a marker from the directions in which its two segments leave it.
    /// `east` is true when the row segment extends east, `north` when the column
    /// segment extends north.
    fn from_arms(east: bool, north: bool) -> Self {
        match (east, north) {
            (false, false) => CornerKind::NE,
            (true, false) => CornerKind::NW,
            (false, true) => CornerKind::SE,
            (true, true) => CornerKind::SW,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Corner {
    pub row: usize,
    pub column: usize,
    pub marker: Marker,
    pub kind: CornerKind,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CornerCensus {
    pub ne: usize,
    pub nw: usize,
    pub se: usize,
    pub sw: usize,
}

impl CornerCensus {
    pub fn total(&self) -> usize {
        self.ne + self.nw + self.se + self.sw
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Crossing {
    pub row: usize,
    pub column: usize,
    pub sign: i8,
}

/// An oriented axis-parallel segment of the traced curve.
#[derive(Clone, Copy, Debug)]
enum Segment {
    /// Row segment from column `from` to column `to`.
    Row { row: usize, from: usize, to: usize },
    /// Column segment from row `from` to row `to`.
    Column {
        column: usize,
        from: usize,
        to: usize,
    },
}

fn strictly_between(x: usize, a: usize, b: usize) -> bool {
    a.min(b) < x && x < a.max(b)
}

fn direction(from: usize, to: usize) -> i8 {
    if to > from {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GridDiagram {
    xs: Vec<usize>,
    os: Vec<usize>,
}

impl GridDiagram {
    /// `xs[r]` and `os[r]` are the columns of the X and O markers in row `r`.
    pub fn new(xs: Vec<usize>, os: Vec<usize>) -> Result<Self, GridError> {
        let size = xs.len();
        if size < 2 {
            return Err(GridError::Syntax(format!("grid size {size} is below 2")));
        }
        if os.len() != size {
            return Err(GridError::Syntax(format!(
                "X row has {size} entries, O row has {}",
                os.len()
            )));
        }
        if Permutation::from_images(xs.clone()).is_none() {
            return Err(GridError::NotPermutation { marker: 'X', size });
        }
        if Permutation::from_images(os.clone()).is_none() {
            return Err(GridError::NotPermutation { marker: 'O', size });
        }
        if let Some(row) = (0..size).find(|&r| xs[r] == os[r]) {
            return Err(GridError::MarkerCollision { row });
        }
        Ok(GridDiagram { xs, os })
    }

    pub fn size(&self) -> usize {
        self.xs.len()
    }

    pub fn xs(&self) -> &[usize] {
        &self.xs
    }

    pub fn os(&self) -> &[usize] {
        &self.os
    }

    fn rows_by_column(markers: &[usize]) -> Vec<usize> {
        let mut rows = vec![0; markers.len()];
        for (r, &c) in markers.iter().enumerate() {
            rows[c] = r;
        }
        rows
    }

    /// Row of the X marker in each column.
    pub fn x_rows(&self) -> Vec<usize> {
        Self::rows_by_column(&self.xs)
    }

    /// Row of the O marker in each column.
    pub fn o_rows(&self) -> Vec<usize> {
        Self::rows_by_column(&self.os)
    }

    /// Traces every closed curve, returning each as its sequence of oriented
    /// segments starting from the row segment of its lowest row.
    fn traced(&self) -> Vec<Vec<Segment>> {
        let o_rows = self.o_rows();
        let mut seen = vec![false; self.size()];
        let mut curves = Vec::new();
        for start in 0..self.size() {
            if seen[start] {
                continue;
            }
            let mut curve = Vec::new();
            let mut row = start;
            while !seen[row] {
                seen[row] = true;
                let column = self.xs[row];
                curve.push(Segment::Row {
                    row,
                    from: self.os[row],
                    to: column,
                });
                let next = o_rows[column];
                curve.push(Segment::Column {
                    column,
                    from: row,
                    to: next,
                });
                row = next;
            }
            curves.push(curve);
        }
        curves
    }

    pub fn components(&self) -> usize {
        self.traced().len()
    }

    pub fn is_knot(&self) -> bool {
        self.components() == 1
    }

    /// All crossings, sorted by (row, column).
    pub fn crossings(&self) -> Vec<Crossing> {
        let segments: Vec<Segment> = self.traced().into_iter().flatten().collect();
        let mut out = Vec::new();
        for h in &segments {
            let &Segment::Row {
                row,
                from: h_from,
                to: h_to,
            } = h
            else {
                continue;
            };
            for v in &segments {
                let &Segment::Column {
                    column,
                    from: v_from,
                    to: v_to,
                } = v
                else {
                    continue;
                };
                if strictly_between(column, h_from, h_to) && strictly_between(row, v_from, v_to) {
                    let sign = direction(h_from, h_to) * direction(v_from, v_to);
                    out.push(Crossing { row, column, sign });
                }
            }
        }
        out.sort();
        out
    }

    pub fn writhe(&self) -> i64 {
        self.crossings().iter().map(|c| c.sign as i64).sum()
    }

    /// Every marker with its corner type.
    pub fn corners(&self) -> Vec<Corner> {
        let x_rows = self.x_rows();
        let o_rows = self.o_rows();
        let mut out = Vec::with_capacity(2 * self.size());
        for row in 0..self.size() {
            let (x, o) = (self.xs[row], self.os[row]);
            out.push(Corner {
                row,
                column: x,
                marker: Marker::X,
                kind: CornerKind::from_arms(o > x, o_rows[x] > row),
            });
            out.push(Corner {
                row,
                column: o,
                marker: Marker::O,
                kind: CornerKind::from_arms(x > o, x_rows[o] > row),
            });
        }
        out
    }

    pub fn corner_census(&self) -> CornerCensus {
        let mut census = CornerCensus::default();
        for corner in self.corners() {
            match corner.kind {
                CornerKind::NE => census.ne += 1,
                CornerKind::NW => census.nw += 1,
                CornerKind::SE => census.se += 1,
                CornerKind::SW => census.sw += 1,
            }
        }
        census
    }

    pub fn ne_corners(&self) -> usize {
        self.corner_census().ne
    }

    /// Writhe minus the number of northeast corners, defined for links as well.
    pub fn tb_unchecked(&self) -> i64 {
        self.writhe() - self.ne_corners() as i64
    }

    /// tb(D) = writhe − #NE corners, for knot diagrams.
    pub fn tb(&self) -> Result<i64, GridError> {
        match self.components() {
            1 => Ok(self.tb_unchecked()),
            components => Err(GridError::NotAKnot { components }),
        }
    }

    /// Reflects the diagram in a vertical line (column c ↦ n−1−c), which
    /// represents the mirror image.
    pub fn reflect_columns(&self) -> GridDiagram {
        let n = self.size();
        GridDiagram {
            xs: self.xs.iter().map(|c| n - 1 - c).collect(),
            os: self.os.iter().map(|c| n - 1 - c).collect(),
        }
    }

    /// Replaces the corner at the X marker of `row` by a three-corner zigzag
    /// in one new row and one new column, adding one NE and one SW corner and
    /// no crossings. The result represents the same knot with tb lowered by 1.
    pub fn stabilize_ne(&self, row: usize) -> Result<GridDiagram, GridError> {
        let n = self.size();
        if row >= n {
            return Err(GridError::InvalidRow { row, size: n });
        }
        let column = self.xs[row];
        let o_rows = self.o_rows();
        // Directions from the X marker along its row arm and column arm.
        let east = self.os[row] > column;
        let north = o_rows[column] > row;

        // The new row sits next to `row` on the side of the column arm. The new
        // column sits on the side of the row arm when the marker is a NE or SW
        // corner, and on the far side otherwise.
        let new_row = if north { row + 1 } else { row };
        let column_east = if east == north { east } else { !east };
        let new_column = if column_east { column + 1 } else { column };

        let shift_col = |c: usize| if c >= new_column { c + 1 } else { c };
        let shift_row = |r: usize| if r >= new_row { r + 1 } else { r };

        let mut xs = vec![usize::MAX; n + 1];
        let mut os = vec![usize::MAX; n + 1];
        for r in 0..n {
            xs[shift_row(r)] = shift_col(self.xs[r]);
            os[shift_row(r)] = shift_col(self.os[r]);
        }
        xs[shift_row(row)] = new_column;
        os[new_row] = new_column;
        xs[new_row] = shift_col(column);

        let out = GridDiagram::new(xs, os)
            .map_err(|e| GridError::Postcondition(format!("invalid result grid: {e}")))?;
        self.check_stabilization(&out)?;
        Ok(out)
    }

    fn check_stabilization(&self, out: &GridDiagram) -> Result<(), GridError> {
        let signs = |g: &GridDiagram| {
            let mut s: Vec<i8> = g.crossings().iter().map(|c| c.sign).collect();
            s.sort();
            s
        };
        if signs(self) != signs(out) {
            return Err(GridError::Postcondition("crossing set changed".into()));
        }
        if out.ne_corners() != self.ne_corners() + 1 {
            return Err(GridError::Postcondition(format!(
                "NE corners went from {} to {}",
                self.ne_corners(),
                out.ne_corners()
            )));
        }
        if out.components() != self.components() {
            return Err(GridError::Postcondition("component count changed".into()));
        }
        if out.tb_unchecked() != self.tb_unchecked() - 1 {
            return Err(GridError::Postcondition("tb did not drop by one".into()));
        }
        Ok(())
    }
}

fn parse_markers(line: &str, tag: char) -> Result<Vec<usize>, GridError> {
    let rest = line
        .trim()
        .strip_prefix(tag)
        .and_then(|r| r.trim_start().strip_prefix(':'))
        .ok_or_else(|| GridError::Syntax(format!("expected `{tag}: ...`, got {line:?}")))?;
    rest.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| GridError::Syntax(format!("bad column {tok:?}")))
        })
        .collect()
}

/// Parses the three-line grid format `n`, `X: c0 … c(n−1)`, `O: c0 … c(n−1)`.
/// A `/` may stand in for a line break.
pub fn parse_grid(text: &str) -> Result<GridDiagram, GridError> {
    let lines: Vec<&str> = text
        .split(['\n', '/'])
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .collect();
    let [size, x_line, o_line] = lines.as_slice() else {
        return Err(GridError::Syntax(format!(
            "expected 3 lines, found {}",
            lines.len()
        )));
    };
    let size: usize = size
        .parse()
        .map_err(|_| GridError::Syntax(format!("bad grid size {size:?}")))?;
    let xs = parse_markers(x_line, 'X')?;
    let os = parse_markers(o_line, 'O')?;
    if xs.len() != size || os.len() != size {
        return Err(GridError::Syntax(format!(
            "grid size {size} but rows list {} X and {} O markers",
            xs.len(),
            os.len()
        )));
    }
    GridDiagram::new(xs, os)
}

impl FromStr for GridDiagram {
    type Err = GridError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_grid(s)
    }
}

fn join(v: &[usize]) -> String {
    v.iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Single-line form `n / X: … / O: …`; `{:#}` prints the three-line form.
impl fmt::Display for GridDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if f.alternate() { "\n" } else { " / " };
        write!(
            f,
            "{}{sep}X: {}{sep}O: {}",
            self.size(),
            join(&self.xs),
            join(&self.os)
        )
    }
}
