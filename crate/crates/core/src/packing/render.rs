//! Text and SVG diagrams of formations.

use std::fmt::Write as _;
use std::str::FromStr;

use super::{Formation, Placement};
use crate::error::{Error, Result};

const FREE: char = '·';

fn box_labels() -> Vec<char> {
    let mut v: Vec<char> = ('A'..='Z').collect();
    v.extend(
        (0x391u32..=0x3A9)
            .filter(|&u| u != 0x3A2)
            .filter_map(char::from_u32),
    );
    v.extend('1'..='9');
    v.extend("#$%&@*+=?!".chars());
    v
}

fn phantom_labels() -> Vec<char> {
    let mut v: Vec<char> = ('a'..='z').collect();
    v.extend(
        (0x3B1u32..=0x3C9)
            .filter(|&u| u != 0x3C2)
            .filter_map(char::from_u32),
    );
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Text,
    Svg,
}

impl FromStr for RenderFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(RenderFormat::Text),
            "svg" => Ok(RenderFormat::Svg),
            other => Err(Error::Parse(format!("unknown render format `{other}`"))),
        }
    }
}

pub fn render(f: &Formation, format: RenderFormat) -> Result<String> {
    match format {
        RenderFormat::Text => render_text(f),
        RenderFormat::Svg => Ok(render_svg(f)),
    }
}

/// `d` lines of `d` space-separated cells. Boxes get upper-case labels in
/// placement order, phantoms lower-case labels, free slots `·`.
pub fn render_text(f: &Formation) -> Result<String> {
    let (real, ghost) = (box_labels(), phantom_labels());
    if f.placements.len() > real.len() || f.symmetric_closure.len() > ghost.len() {
        return Err(Error::InvalidFormation("too many boxes to label".into()));
    }
    let d = f.dim;
    let mut grid = vec![FREE; d * d];
    let labelled = f
        .placements
        .iter()
        .zip(&real)
        .chain(f.symmetric_closure.iter().zip(&ghost));
    for (p, &label) in labelled {
        if !p.fits(d) {
            return Err(Error::InvalidFormation(format!("{p:?} leaves the grid")));
        }
        for (r, c) in p.slots() {
            grid[(r - 1) * d + (c - 1)] = label;
        }
    }
    let mut out = String::new();
    for r in 0..d {
        let row: Vec<String> = grid[r * d..(r + 1) * d]
            .iter()
            .map(char::to_string)
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    Ok(out)
}

/// Inverse of [`render_text`].
pub fn parse_text(text: &str) -> Result<Formation> {
    let rows: Vec<Vec<char>> = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            l.split_whitespace()
                .filter_map(|t| t.chars().next())
                .collect()
        })
        .collect();
    let d = rows.len();
    if rows.iter().any(|r| r.len() != d) {
        return Err(Error::Parse("grid is not square".into()));
    }
    let decode = |labels: &[char]| -> Result<Vec<Placement>> {
        let mut out = Vec::new();
        for &label in labels {
            let cells: Vec<(usize, usize)> = (0..d)
                .flat_map(|r| (0..d).map(move |c| (r, c)))
                .filter(|&(r, c)| rows[r][c] == label)
                .collect();
            let Some(&(r0, c0)) = cells.first() else {
                break;
            };
            let size = (cells.len() as f64).sqrt().round() as usize;
            let p = Placement::new(size, r0 + 1, c0 + 1);
            if size * size != cells.len()
                || !p.fits(d)
                || p.slots().any(|(r, c)| rows[r - 1][c - 1] != label)
            {
                return Err(Error::Parse(format!("label `{label}` is not a square")));
            }
            out.push(p);
        }
        Ok(out)
    };
    Ok(Formation {
        dim: d,
        placements: decode(&box_labels())?,
        symmetric_closure: decode(&phantom_labels())?,
    })
}

const CELL: usize = 40;

/// Standalone SVG with the main diagonal; phantoms are dashed.
pub fn render_svg(f: &Formation) -> String {
    let d = f.dim;
    let side = d * CELL;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{w}" viewBox="-2 -2 {w} {w}">"#,
        w = side + 4
    );
    let _ = writeln!(
        s,
        r##"<rect x="0" y="0" width="{side}" height="{side}" fill="#ffffff" stroke="#000000" stroke-width="2"/>"##
    );
    for k in 1..d {
        let x = k * CELL;
        let _ = writeln!(
            s,
            r##"<line x1="{x}" y1="0" x2="{x}" y2="{side}" stroke="#cccccc"/>"##
        );
        let _ = writeln!(
            s,
            r##"<line x1="0" y1="{x}" x2="{side}" y2="{x}" stroke="#cccccc"/>"##
        );
    }
    let labels = box_labels();
    let ghosts = phantom_labels();
    let mut draw = |p: &Placement, label: char, phantom: bool| {
        let (x, y, w) = ((p.col - 1) * CELL, (p.row - 1) * CELL, p.size * CELL);
        let style = if phantom {
            r##"fill="none" stroke="#555555" stroke-width="2" stroke-dasharray="6,4""##
        } else {
            r##"fill="#9ecae1" fill-opacity="0.6" stroke="#08519c" stroke-width="2""##
        };
        let _ = writeln!(
            s,
            r#"<rect x="{}" y="{}" width="{}" height="{}" {style}/>"#,
            x + 3,
            y + 3,
            w - 6,
            w - 6
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="16" text-anchor="middle" dominant-baseline="middle">{label}</text>"#,
            x + w / 2,
            y + w / 2
        );
    };
    for (p, &l) in f.placements.iter().zip(labels.iter().cycle()) {
        draw(p, l, false);
    }
    for (p, &l) in f.symmetric_closure.iter().zip(ghosts.iter().cycle()) {
        draw(p, l, true);
    }
    let _ = writeln!(
        s,
        r##"<line x1="0" y1="0" x2="{side}" y2="{side}" stroke="#d62728" stroke-width="1.5"/>"##
    );
    s.push_str("</svg>\n");
    s
}
