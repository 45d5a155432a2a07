//! Fixed-format CSV and JSON emission.

use std::fmt::Write;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Real(f64),
    Count(u64),
}

impl Cell {
    fn render(&self) -> String {
        match *self {
            Cell::Real(x) if x.is_finite() => format!("{x:.16e}"),
            Cell::Real(x) => format!("{x}"),
            Cell::Count(n) => n.to_string(),
        }
    }

    fn render_json(&self) -> String {
        match *self {
            Cell::Real(x) if !x.is_finite() => "null".into(),
            _ => self.render(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: &'static [&'static str],
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &'static [&'static str]) -> Self {
        Self { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::render).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut out = String::from("[");
        for (i, row) in self.rows.iter().enumerate() {
            out.push_str(if i == 0 { "\n  {" } else { ",\n  {" });
            for (j, (name, cell)) in self.columns.iter().zip(row).enumerate() {
                let sep = if j == 0 { "" } else { ", " };
                write!(out, "{sep}\"{name}\": {}", cell.render_json()).unwrap();
            }
            out.push('}');
        }
        out.push_str(if self.rows.is_empty() { "]\n" } else { "\n]\n" });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(&["q_over_m3", "modes_used"]);
        t.push(vec![Cell::Real(3.0), Cell::Count(12)]);
        t.push(vec![Cell::Real(-0.000125), Cell::Count(0)]);
        t
    }

    #[test]
    fn csv_layout() {
        assert_eq!(sample().to_csv(), "q_over_m3,modes_used\n3.0000000000000000e0,12\n-1.2500000000000000e-4,0\n");
    }

    #[test]
    fn json_layout() {
        let json = sample().to_json();
        assert_eq!(
            json,
            "[\n  {\"q_over_m3\": 3.0000000000000000e0, \"modes_used\": 12},\n  {\"q_over_m3\": -1.2500000000000000e-4, \"modes_used\": 0}\n]\n"
        );
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed[0]["q_over_m3"], 3.0);
        assert_eq!(Table::new(&["a"]).to_json(), "[]\n");
    }

    #[test]
    fn seventeen_significant_digits_round_trip() {
        for x in [std::f64::consts::PI, 1.0 / 3.0, 17.319776948907723, 5e-324, f64::MAX] {
            let s = Cell::Real(x).render();
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
    }
}
