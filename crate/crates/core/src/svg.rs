//! Static SVG pictures: the staircase with a rectangle subdivision, and the
//! translated blocks of a two-label complex.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::complex::BlockComplex;
use crate::vertices::RectSubdivision;

const CELL: i64 = 40;
const PAD: i64 = 20;
const PALETTE: [&str; 6] = [
    "#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1", "#76b7b2",
];

/// Staircase `{(i, j) : 1 <= i <= j <= n}` drawn with row `i` from the top
/// and column `j` from the left; `b(i, j)` is written in each cell and every
/// rectangle of `s` gets a heavy border.
pub fn staircase_svg(s: &RectSubdivision, b: &[Vec<u64>]) -> String {
    staircases_svg(&[(String::new(), s)], b)
}

/// Several captioned staircases side by side.
pub fn staircases_svg(items: &[(String, &RectSubdivision)], b: &[Vec<u64>]) -> String {
    let n = items.first().map_or(0, |(_, s)| s.len()) as i64;
    let side = 2 * PAD + n * CELL;
    let (width, height) = (side * items.len().max(1) as i64, side + PAD);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    for (idx, (caption, s)) in items.iter().enumerate() {
        let left = idx as i64 * side;
        draw_staircase(&mut out, left, s, b);
        if !caption.is_empty() {
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">{caption}</text>"#,
                left + side / 2,
                side + PAD / 2
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

fn draw_staircase(out: &mut String, left: i64, s: &RectSubdivision, b: &[Vec<u64>]) {
    let n = s.len() as i64;
    for i in 1..=n {
        for j in i..=n {
            let (x, y) = (left + PAD + (j - 1) * CELL, PAD + (i - 1) * CELL);
            let _ = writeln!(
                out,
                r##"<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="none" stroke="#bbb"/>"##
            );
            let value = b[(i - 1) as usize][(j - 1) as usize];
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">{value}</text>"#,
                x + CELL / 2,
                y + CELL / 2 + 4
            );
        }
    }
    for (k, rect) in s.rects().iter().enumerate() {
        let (i0, i1) = min_max(rect.iter().map(|c| c.0 as i64));
        let (j0, j1) = min_max(rect.iter().map(|c| c.1 as i64));
        let _ = writeln!(
            out,
            r#"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="{}" stroke-width="3"><title>R{}</title></rect>"#,
            left + PAD + (j0 - 1) * CELL,
            PAD + (i0 - 1) * CELL,
            (j1 - j0 + 1) * CELL,
            (i1 - i0 + 1) * CELL,
            PALETTE[k % PALETTE.len()],
            k + 1
        );
    }
}

fn min_max(it: impl Iterator<Item = i64>) -> (i64, i64) {
    it.fold((i64::MAX, i64::MIN), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

fn cross(o: &[i64], a: &[i64], b: &[i64]) -> i64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Convex hull of planar points, counterclockwise (monotone chain).
fn hull_2d(points: &BTreeSet<Vec<i64>>) -> Vec<Vec<i64>> {
    let pts: Vec<&Vec<i64>> = points.iter().collect();
    if pts.len() < 3 {
        return pts.into_iter().cloned().collect();
    }
    let mut lower: Vec<&Vec<i64>> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<&Vec<i64>> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.into_iter().chain(upper).cloned().collect()
}

/// Translated blocks of a complex with two labels, `x_1` to the right and
/// `x_2` up. Returns `None` for any other number of labels.
pub fn complex_svg(bc: &BlockComplex) -> Option<String> {
    let all: BTreeSet<Vec<i64>> = bc
        .blocks
        .iter()
        .flat_map(|b| b.translated.iter().cloned())
        .collect();
    if all.iter().any(|p| p.len() != 2) || all.is_empty() {
        return None;
    }
    let (x0, x1) = min_max(all.iter().map(|p| p[0]));
    let (y0, y1) = min_max(all.iter().map(|p| p[1]));
    let width = 2 * PAD + (x1 - x0) * CELL;
    let height = 2 * PAD + (y1 - y0) * CELL;
    let sx = |x: i64| PAD + (x - x0) * CELL;
    let sy = |y: i64| PAD + (y1 - y) * CELL;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    for (k, block) in bc.blocks.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let outline: Vec<String> = hull_2d(&block.translated)
            .iter()
            .map(|p| format!("{},{}", sx(p[0]), sy(p[1])))
            .collect();
        let label: Vec<String> = block.chamber.order().iter().map(usize::to_string).collect();
        let _ = writeln!(
            out,
            r#"<polygon points="{}" fill="{color}" fill-opacity="0.25" stroke="{color}" stroke-width="2"><title>w = {}</title></polygon>"#,
            outline.join(" "),
            label.join("")
        );
    }
    for p in &all {
        let _ = writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="4" fill="black"><title>({}, {})</title></circle>"#,
            sx(p[0]),
            sy(p[1]),
            p[0],
            p[1]
        );
    }
    out.push_str("</svg>\n");
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::glue;
    use crate::poset::{build_poset, Subposet};
    use crate::vertices::subdivisions;

    #[test]
    fn hull_of_square_with_interior_point() {
        let pts: BTreeSet<Vec<i64>> = [[0, 0], [2, 0], [0, 2], [2, 2], [1, 1], [1, 0]]
            .iter()
            .map(|p| p.to_vec())
            .collect();
        assert_eq!(
            hull_2d(&pts),
            vec![vec![0, 0], vec![2, 0], vec![2, 2], vec![0, 2]]
        );
    }

    #[test]
    fn pictures_render() {
        let s = subdivisions(3).unwrap().next().unwrap();
        let b = vec![vec![2, 1, 1], vec![0, 1, 0], vec![0, 0, 1]];
        let svg = staircase_svg(&s, &b);
        assert_eq!(svg.matches("<title>R").count(), 3);

        let p = build_poset(&["a", "b", "c", "d", "e"], &[("a", "c"), ("b", "d")]).unwrap();
        let bc = glue(&Subposet::new(p, &["a", "b"]).unwrap()).unwrap();
        let svg = complex_svg(&bc).unwrap();
        assert_eq!(svg.matches("<polygon").count(), 2);
        assert_eq!(svg.matches("<circle").count(), 8);
    }
}
