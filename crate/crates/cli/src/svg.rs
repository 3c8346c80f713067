//! Schematic path drawings.
//!
//! Plate `p` is the horizontal line `y = 40p`. The path enters at the
//! origin, its `k`-th reflection sits at `(40k, 40 w_k)`, and a short stub
//! leaves towards `(40(m+1), 40 w_m - 40)`.

use std::fmt::Write as _;

use glasspath_core::error::{Error, Result};
use glasspath_core::words::{vector_of, AlternatingWord, Semantics};

const STEP: i64 = 40;
const MARGIN: i64 = 10;

pub fn render_svg(word: &AlternatingWord, n: usize) -> Result<String> {
    if !word.is_admissible(Semantics::Path) {
        return Err(Error::Inadmissible(word.to_string()));
    }
    vector_of(word.letters(), n)?;

    let m = word.len() as i64;
    let width = STEP * (m + 1);
    let height = STEP * n as i64;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="{}" height="{}">"#,
        -MARGIN,
        -MARGIN,
        width + 2 * MARGIN,
        height + 2 * MARGIN,
        width + 2 * MARGIN,
        height + 2 * MARGIN
    );
    let _ = writeln!(out, "<title>{}</title>", word.render(n));
    for p in 1..=n as i64 {
        let _ = writeln!(
            out,
            r#"<line class="plate" x1="0" y1="{y}" x2="{width}" y2="{y}" stroke="gray" stroke-dasharray="4 4"/>"#,
            y = STEP * p
        );
    }

    if let Some(&last) = word.letters().last() {
        let mut points = vec![(0, 0)];
        for (k, &w) in word.letters().iter().enumerate() {
            points.push((STEP * (k as i64 + 1), STEP * i64::from(w)));
        }
        let joined: Vec<String> = points.iter().map(|(x, y)| format!("{x},{y}")).collect();
        let _ = writeln!(
            out,
            r#"<polyline class="path" points="{}" fill="none" stroke="black"/>"#,
            joined.join(" ")
        );
        let (x, y) = points[points.len() - 1];
        let _ = writeln!(
            out,
            r#"<line class="exit" x1="{x}" y1="{y}" x2="{}" y2="{}" stroke="black"/>"#,
            STEP * (m + 1),
            STEP * i64::from(last) - STEP
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(letters: &[u32]) -> AlternatingWord {
        AlternatingWord::new(letters.to_vec()).unwrap()
    }

    #[test]
    fn two_reflections() {
        let svg = render_svg(&word(&[2, 1]), 2).unwrap();
        assert!(svg.contains(r#"points="0,0 40,80 80,40""#));
        assert!(svg.contains(r#"x1="80" y1="40" x2="120" y2="0""#));
        assert_eq!(svg.matches(r#"class="plate""#).count(), 2);
    }

    #[test]
    fn empty_word_draws_plates_only() {
        let svg = render_svg(&AlternatingWord::empty(), 3).unwrap();
        assert!(!svg.contains("polyline"));
        assert!(!svg.contains(r#"class="exit""#));
        assert_eq!(svg.matches(r#"class="plate""#).count(), 3);
    }

    #[test]
    fn figure_word() {
        let svg = render_svg(&word(&[2, 1, 3, 1]), 3).unwrap();
        assert!(svg.contains(r#"points="0,0 40,80 80,40 120,120 160,40""#));
        assert_eq!(svg, render_svg(&word(&[2, 1, 3, 1]), 3).unwrap());
    }

    #[test]
    fn rejects_bad_words() {
        assert!(matches!(
            render_svg(&word(&[1]), 2),
            Err(Error::Inadmissible(_))
        ));
        assert!(matches!(
            render_svg(&word(&[3, 1]), 2),
            Err(Error::LetterOutOfRange { .. })
        ));
    }
}
