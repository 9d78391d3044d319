use std::fmt::Write as _;
use std::io::Write;

use crate::error::{Error, Result};
use crate::word::SequencePrefix;

/// Rectangle `{0..=|X|} x {0..=|Y|}` with `(i, j)` red iff `X_i = Y_j`;
/// the origin is red and the rest of row 0 and column 0 are not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RedGrid {
    rows: usize,
    cols: usize,
    red: Vec<bool>,
}

pub fn red_grid(x: &SequencePrefix, y: &SequencePrefix) -> RedGrid {
    let (rows, cols) = (x.len(), y.len());
    let mut red = vec![false; (rows + 1) * (cols + 1)];
    red[0] = true;
    for i in 1..=rows {
        for j in 1..=cols {
            red[i * (cols + 1) + j] = x.bit(i) == y.bit(j);
        }
    }
    RedGrid { rows, cols, red }
}

impl RedGrid {
    /// `|X|`.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// `|Y|`.
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_red(&self, i: usize, j: usize) -> bool {
        self.red[i * (self.cols + 1) + j]
    }

    /// Plain PBM (`P1`), one row per `i`, `1` for red.
    pub fn to_pbm(&self) -> String {
        let mut out = format!("P1\n{} {}\n", self.cols + 1, self.rows + 1);
        for i in 0..=self.rows {
            let line: Vec<&str> =
                (0..=self.cols).map(|j| if self.is_red(i, j) { "1" } else { "0" }).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    /// Columns `i,j,red` with `red` in {0,1}.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(out);
        wtr.write_record(["i", "j", "red"])?;
        for i in 0..=self.rows {
            for j in 0..=self.cols {
                wtr.write_record([i.to_string(), j.to_string(), u8::from(self.is_red(i, j)).to_string()])?;
            }
        }
        wtr.flush().map_err(|e| Error::Csv(e.to_string()))?;
        Ok(())
    }
}

/// Whether red points `(i, m_i)`, `i = 0..=|X|`, exist with `m_0 = 0` and
/// `1 <= m_i - m_{i-1} <= M`. The grid must span `|X| M` columns so that the
/// answer is the same as for the infinite sequence.
pub fn admissible_path_exists(grid: &RedGrid, window: usize) -> Result<bool> {
    if window == 0 {
        return Err(Error::WindowTooSmall { min: 1, got: 0 });
    }
    let needed = grid.rows * window;
    if grid.cols < needed {
        return Err(Error::GridTooNarrow { rows: grid.rows, cols: grid.cols, needed });
    }
    let mut reach = vec![false; grid.cols + 1];
    reach[0] = true;
    for i in 1..=grid.rows {
        let mut next = vec![false; grid.cols + 1];
        // last reachable column in the previous row, scanning left to right
        let mut last: Option<usize> = None;
        for j in 0..=grid.cols {
            if j > 0 && grid.is_red(i, j) {
                next[j] = last.is_some_and(|l| j - l <= window);
            }
            if reach[j] {
                last = Some(j);
            }
        }
        if !next.iter().any(|&r| r) {
            return Ok(false);
        }
        reach = next;
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(bits: &str) -> SequencePrefix {
        bits.parse().unwrap()
    }

    #[test]
    fn identical_sequences_have_red_diagonal() {
        let x = s("0110100");
        let y = s("0110100011010001101000110100");
        let g = red_grid(&x, &y);
        for i in 0..=x.len() {
            assert!(g.is_red(i, i));
        }
        for m in 1..=4 {
            assert!(admissible_path_exists(&g, m).unwrap());
        }
    }

    #[test]
    fn disjoint_letters_block_every_path() {
        let g = red_grid(&s("111"), &s("000000000"));
        assert!(g.is_red(0, 0));
        assert!((1..=3).all(|i| (1..=9).all(|j| !g.is_red(i, j))));
        assert!(!admissible_path_exists(&g, 3).unwrap());
        assert_eq!(
            admissible_path_exists(&g, 4).unwrap_err(),
            Error::GridTooNarrow { rows: 3, cols: 9, needed: 12 }
        );
    }

    #[test]
    fn pbm_and_csv_shapes() {
        let g = red_grid(&s("1"), &s("01"));
        assert_eq!(g.to_pbm(), "P1\n3 2\n1 0 0\n0 0 1\n");
        let mut buf = Vec::new();
        g.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 7);
        assert!(text.starts_with("i,j,red\n0,0,1\n"));
    }
}
