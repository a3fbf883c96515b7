use std::fmt::Write as _;
use std::path::Path;

use crate::engine::GenerationStats;
use crate::error::{Error, Result};

pub const STATS_HEADER: &str = "generation,best,average,worst";

/// Header line plus one newline-terminated row per entry. Floats use the
/// shortest representation that parses back to the same value.
pub fn format_stats_csv(rows: &[GenerationStats]) -> String {
    let mut out = String::with_capacity(32 * (rows.len() + 1));
    out.push_str(STATS_HEADER);
    out.push('\n');
    for r in rows {
        writeln!(out, "{},{},{},{}", r.generation, r.best, r.average, r.worst)
            .expect("string write");
    }
    out
}

pub fn write_stats_csv(rows: &[GenerationStats], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, format_stats_csv(rows)).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(g: usize, best: f64) -> GenerationStats {
        GenerationStats {
            generation: g,
            subpopulation: 0,
            best,
            average: best + 1.0,
            worst: best + 2.0,
        }
    }

    #[test]
    fn header_only() {
        assert_eq!(format_stats_csv(&[]), "generation,best,average,worst\n");
    }

    #[test]
    fn three_rows() {
        let text = format_stats_csv(&[row(1, 0.5), row(2, 0.25), row(3, 1e-15)]);
        assert_eq!(text.lines().count(), 4);
        assert!(text.ends_with('\n'));
        assert_eq!(text.lines().nth(1), Some("1,0.5,1.5,2.5"));
        let best: f64 = text
            .lines()
            .nth(3)
            .unwrap()
            .split(',')
            .nth(1)
            .unwrap()
            .parse()
            .unwrap();
        assert_eq!(best, 1e-15);
    }

    #[test]
    fn unwritable_path() {
        assert!(write_stats_csv(&[], "/nonexistent/dir/stats.csv").is_err());
    }
}
