use std::io::{self, BufWriter, Stdout, Write};

use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Human,
    Tsv,
    Json,
}

/// Line-oriented stdout in one of the three formats. Each command writes
/// its records through whichever of `human`, `tsv` or `json` applies.
pub struct Out {
    pub format: Format,
    w: BufWriter<Stdout>,
}

impl Out {
    pub fn new(format: Format) -> Self {
        Out {
            format,
            w: BufWriter::new(io::stdout()),
        }
    }

    pub fn human(&mut self, line: impl AsRef<str>) -> io::Result<()> {
        if self.format == Format::Human {
            writeln!(self.w, "{}", line.as_ref())?;
        }
        Ok(())
    }

    pub fn tsv<S: AsRef<str>>(&mut self, fields: &[S]) -> io::Result<()> {
        if self.format == Format::Tsv {
            let row: Vec<&str> = fields.iter().map(AsRef::as_ref).collect();
            writeln!(self.w, "{}", row.join("\t"))?;
        }
        Ok(())
    }

    pub fn json(&mut self, v: Value) -> io::Result<()> {
        if self.format == Format::Json {
            writeln!(self.w, "{v}")?;
        }
        Ok(())
    }

    pub fn flush(&mut self) -> io::Result<()> {
        self.w.flush()
    }
}

/// `c_1,..,c_m : c_{m+1},..,c_{m+p}`, cut after `cap` digits.
pub fn expansion_notation(digits: &[u64], m: usize, cap: Option<usize>) -> String {
    let shown = cap.map_or(digits.len(), |c| c.min(digits.len()));
    let join = |d: &[u64]| d.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    let head = &digits[..m.min(shown)];
    let mut s = join(head);
    if digits.len() > m {
        s.push_str(" : ");
        if shown > m {
            s.push_str(&join(&digits[m..shown]));
        }
    }
    if shown < digits.len() {
        s.push_str(&format!(" ... ({} more)", digits.len() - shown));
    }
    s
}

pub fn csv(digits: &[u64]) -> String {
    digits.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn notation() {
        assert_eq!(expansion_notation(&[1, 0, 1, 0, 0, 0], 1, None), "1 : 0,1,0,0,0");
        assert_eq!(expansion_notation(&[1, 0, 1, 0, 0, 0], 1, Some(3)), "1 : 0,1 ... (3 more)");
        assert_eq!(expansion_notation(&[1, 1], 2, None), "1,1");
    }
}
