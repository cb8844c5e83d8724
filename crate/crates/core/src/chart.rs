//! Bigraded chart data and its ASCII / JSON / SVG renderings.
//!
//! A chart is a set of dots at (stem, filtration) with multiplicity and
//! labels, plus structure lines (h₀/h₁/h₂ multiplications and Adams d₂
//! differentials). All three output formats are deterministic; the JSON
//! schema is fixed and round-trips byte-identically.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct ChartRange {
    pub s_max: u32,
    pub stem_max: u32,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct ChartDot {
    pub s: u32,
    pub stem: u32,
    pub rank: usize,
    pub labels: Vec<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LineKind {
    H0,
    H1,
    H2,
    D2,
}

/// A structure line between chart positions `(s, stem, index)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct ChartLine {
    pub from: (u32, u32, u32),
    pub to: (u32, u32, u32),
    pub kind: LineKind,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ExtChart {
    pub range: ChartRange,
    pub dots: Vec<ChartDot>,
    pub lines: Vec<ChartLine>,
}

/// Output format for chart and page exports.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExportFormat {
    Ascii,
    Json,
    Svg,
}

impl std::str::FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ascii" => Ok(ExportFormat::Ascii),
            "json" => Ok(ExportFormat::Json),
            "svg" => Ok(ExportFormat::Svg),
            other => Err(Error::Parse(format!("unknown format {other:?}"))),
        }
    }
}

impl ExtChart {
    /// Canonical ordering: dots by (stem, s), lines sorted.
    pub fn canonicalize(&mut self) {
        self.dots.sort_by_key(|d| (d.stem, d.s));
        self.lines.sort();
        self.lines.dedup();
    }

    pub fn rank_at(&self, s: u32, stem: u32) -> usize {
        self.dots
            .iter()
            .find(|d| d.s == s && d.stem == stem)
            .map_or(0, |d| d.rank)
    }

    pub fn labels_at(&self, s: u32, stem: u32) -> &[String] {
        self.dots
            .iter()
            .find(|d| d.s == s && d.stem == stem)
            .map_or(&[], |d| d.labels.as_slice())
    }

    pub fn has_line(&self, from: (u32, u32, u32), to: (u32, u32, u32), kind: LineKind) -> bool {
        self.lines.contains(&ChartLine { from, to, kind })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("chart serializes")
    }

    pub fn from_json(text: &str) -> Result<ExtChart> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("chart JSON: {e}")))
    }

    pub fn export(&self, format: ExportFormat) -> String {
        match format {
            ExportFormat::Ascii => self.to_ascii(),
            ExportFormat::Json => self.to_json(),
            ExportFormat::Svg => self.to_svg(),
        }
    }

    /// Fixed-width grid, filtration decreasing downward, then a legend of
    /// labels and the line list.
    pub fn to_ascii(&self) -> String {
        let mut out = String::new();
        out.push_str("     ");
        for stem in 0..=self.range.stem_max {
            out.push_str(&format!("{stem:>3}"));
        }
        out.push('\n');
        for s in (0..=self.range.s_max).rev() {
            out.push_str(&format!("s={s:>2} "));
            for stem in 0..=self.range.stem_max {
                let r = self.rank_at(s, stem);
                if r == 0 {
                    out.push_str("  .");
                } else {
                    out.push_str(&format!("{r:>3}"));
                }
            }
            out.push('\n');
        }
        out.push('\n');
        for dot in &self.dots {
            out.push_str(&format!(
                "dot (s={}, stem={}): {}\n",
                dot.s,
                dot.stem,
                dot.labels.join(", ")
            ));
        }
        for line in &self.lines {
            let kind = match line.kind {
                LineKind::H0 => "h0",
                LineKind::H1 => "h1",
                LineKind::H2 => "h2",
                LineKind::D2 => "d2",
            };
            out.push_str(&format!(
                "line {kind}: ({},{},{}) -> ({},{},{})\n",
                line.from.0, line.from.1, line.from.2, line.to.0, line.to.1, line.to.2
            ));
        }
        out
    }

    /// Self-contained SVG on the usual Adams grid: x = stem, y = filtration.
    pub fn to_svg(&self) -> String {
        let cell = 36.0;
        let margin = 40.0;
        let width = margin * 2.0 + cell * f64::from(self.range.stem_max);
        let height = margin * 2.0 + cell * f64::from(self.range.s_max);
        let x = |stem: u32| margin + cell * f64::from(stem);
        let y = |s: u32| height - margin - cell * f64::from(s);
        // dots with rank > 1 are spread slightly; index picks the offset
        let dot_pos = |s: u32, stem: u32, idx: u32, rank: usize| -> (f64, f64) {
            let spread = if rank > 1 {
                (f64::from(idx) - (rank as f64 - 1.0) / 2.0) * 9.0
            } else {
                0.0
            };
            (x(stem) + spread, y(s))
        };
        let mut out = String::new();
        out.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n"
        ));
        out.push_str("<style>text{font-family:monospace;font-size:9px}</style>\n");
        // axes and ticks
        out.push_str(&format!(
            "<line x1=\"{m}\" y1=\"{h}\" x2=\"{w}\" y2=\"{h}\" stroke=\"black\"/>\n",
            m = margin,
            h = height - margin,
            w = width - margin + 10.0
        ));
        out.push_str(&format!(
            "<line x1=\"{m}\" y1=\"{h}\" x2=\"{m}\" y2=\"{t}\" stroke=\"black\"/>\n",
            m = margin,
            h = height - margin,
            t = margin - 10.0
        ));
        for stem in 0..=self.range.stem_max {
            out.push_str(&format!(
                "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{stem}</text>\n",
                x(stem),
                height - margin + 14.0
            ));
        }
        for s in 0..=self.range.s_max {
            out.push_str(&format!(
                "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{s}</text>\n",
                margin - 8.0,
                y(s) + 3.0
            ));
        }
        // lines below dots
        for line in &self.lines {
            let from_rank = self.rank_at(line.from.0, line.from.1);
            let to_rank = self.rank_at(line.to.0, line.to.1);
            let (x1, y1) = dot_pos(line.from.0, line.from.1, line.from.2, from_rank);
            let (x2, y2) = dot_pos(line.to.0, line.to.1, line.to.2, to_rank);
            let style = match line.kind {
                LineKind::H0 => "stroke=\"black\"",
                LineKind::H1 => "stroke=\"#106010\"",
                LineKind::H2 => "stroke=\"#202090\"",
                LineKind::D2 => "stroke=\"#b02020\" stroke-dasharray=\"4 3\"",
            };
            out.push_str(&format!(
                "<line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" {style}/>\n"
            ));
        }
        for dot in &self.dots {
            for idx in 0..dot.rank as u32 {
                let (cx, cy) = dot_pos(dot.s, dot.stem, idx, dot.rank);
                out.push_str(&format!("<circle cx=\"{cx}\" cy=\"{cy}\" r=\"2.5\"/>\n"));
            }
            if !dot.labels.is_empty() {
                let (cx, cy) = dot_pos(dot.s, dot.stem, 0, dot.rank);
                out.push_str(&format!(
                    "<text x=\"{}\" y=\"{}\">{}</text>\n",
                    cx + 4.0,
                    cy - 4.0,
                    escape_xml(&dot.labels.join(", "))
                ));
            }
        }
        out.push_str("</svg>\n");
        out
    }
}

fn escape_xml(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
