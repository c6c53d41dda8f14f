//! Dense kernel tables indexed by pairs of lattice points.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{to_f64, Rational};
use crate::lattice::Composition;

/// Values `K(x, y)` for all `x, y` of one grid, in enumeration order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KernelTable {
    level: u32,
    degree: Option<u32>,
    points: Vec<Composition>,
    values: Vec<Vec<Rational>>,
}

#[derive(Serialize)]
struct JsonCell<'a> {
    x: &'a Composition,
    y: &'a Composition,
    value: String,
    approx: f64,
}

#[derive(Serialize)]
struct JsonTable<'a> {
    level: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    degree: Option<u32>,
    points: &'a [Composition],
    cells: Vec<JsonCell<'a>>,
}

impl KernelTable {
    /// Fills the table from `f`, evaluating only the upper triangle when
    /// `symmetric` is set.
    pub fn build<F>(
        level: u32,
        degree: Option<u32>,
        points: Vec<Composition>,
        symmetric: bool,
        f: F,
    ) -> Result<Self>
    where
        F: Fn(&Composition, &Composition) -> Result<Rational>,
    {
        let m = points.len();
        let mut values = vec![vec![Rational::default(); m]; m];
        for i in 0..m {
            let start = if symmetric { i } else { 0 };
            for j in start..m {
                let v = f(&points[i], &points[j])?;
                if symmetric {
                    values[j][i] = v.clone();
                }
                values[i][j] = v;
            }
        }
        Ok(KernelTable { level, degree, points, values })
    }

    pub fn from_values(
        level: u32,
        degree: Option<u32>,
        points: Vec<Composition>,
        values: Vec<Vec<Rational>>,
    ) -> Result<Self> {
        let m = points.len();
        if values.len() != m {
            return Err(Error::LengthMismatch { expected: m, found: values.len() });
        }
        if let Some(row) = values.iter().find(|r| r.len() != m) {
            return Err(Error::LengthMismatch { expected: m, found: row.len() });
        }
        Ok(KernelTable { level, degree, points, values })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn degree(&self) -> Option<u32> {
        self.degree
    }

    pub fn points(&self) -> &[Composition] {
        &self.points
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.values[i][j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.values[i]
    }

    pub fn index_of(&self, x: &Composition) -> Option<usize> {
        self.points.iter().position(|p| p == x)
    }

    pub fn value(&self, x: &Composition, y: &Composition) -> Option<&Rational> {
        Some(&self.values[self.index_of(x)?][self.index_of(y)?])
    }

    pub fn is_symmetric(&self) -> bool {
        let m = self.points.len();
        (0..m).all(|i| (i + 1..m).all(|j| self.values[i][j] == self.values[j][i]))
    }

    /// First pair of cells that differ between two tables on the same grid.
    pub fn first_difference(&self, other: &KernelTable) -> Option<(usize, usize)> {
        let m = self.points.len();
        for i in 0..m {
            for j in 0..m {
                if self.values[i][j] != other.values[i][j] {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Header row and first column carry composition labels; cells are exact.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec![String::new()];
        header.extend(self.points.iter().map(Composition::label));
        w.write_record(&header).map_err(csv_err)?;
        for (p, row) in self.points.iter().zip(&self.values) {
            let mut rec = vec![p.label()];
            rec.extend(row.iter().map(|v| v.to_string()));
            w.write_record(&rec).map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Domain(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Domain(e.to_string()))
    }

    pub fn to_json(&self) -> Result<String> {
        let mut cells = Vec::new();
        for (i, x) in self.points.iter().enumerate() {
            for (j, y) in self.points.iter().enumerate() {
                let v = &self.values[i][j];
                cells.push(JsonCell { x, y, value: v.to_string(), approx: to_f64(v) });
            }
        }
        let t = JsonTable { level: self.level, degree: self.degree, points: &self.points, cells };
        serde_json::to_string_pretty(&t).map_err(|e| Error::Domain(e.to_string()))
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Domain(e.to_string())
}
