//! Minimal SVG charts. The CSV written next to each chart is the record;
//! these are for eyeballing.

use std::fmt::Write;

use crate::diagnostics::{ProbabilityHistogram, SeriesPoint};

const W: f64 = 480.0;
const H: f64 = 320.0;
const PAD: f64 = 40.0;

fn frame(title: &str, body: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n\
         <text x=\"{x}\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">{title}</text>\n\
         <line x1=\"{PAD}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"black\"/>\n\
         <line x1=\"{PAD}\" y1=\"{PAD}\" x2=\"{PAD}\" y2=\"{b}\" stroke=\"black\"/>\n\
         {body}</svg>\n",
        x = W / 2.0,
        b = H - PAD,
        r = W - PAD,
    )
}

/// Series over `[0, max(1, values)]`, iterations on the x axis.
pub fn line_chart(title: &str, points: &[SeriesPoint]) -> String {
    let mut body = String::new();
    if points.is_empty() {
        return frame(title, &body);
    }
    let x_max = points.iter().map(|p| p.iteration).max().unwrap_or(0).max(1) as f64;
    let y_max = points.iter().map(|p| p.value).fold(1.0f64, f64::max);
    let y_min = points.iter().map(|p| p.value).fold(0.0f64, f64::min);
    let sx = |i: usize| PAD + (W - 2.0 * PAD) * i as f64 / x_max;
    let sy = |v: f64| H - PAD - (H - 2.0 * PAD) * (v - y_min) / (y_max - y_min);
    let coords: Vec<String> = points
        .iter()
        .map(|p| format!("{:.2},{:.2}", sx(p.iteration), sy(p.value)))
        .collect();
    let _ = writeln!(
        body,
        "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"{}\"/>",
        coords.join(" ")
    );
    for p in points {
        let _ = writeln!(
            body,
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"steelblue\"/>",
            sx(p.iteration),
            sy(p.value)
        );
    }
    let _ = writeln!(
        body,
        "<text x=\"{PAD}\" y=\"{:.2}\" font-size=\"10\" text-anchor=\"end\">{y_max}</text>\
         <text x=\"{PAD}\" y=\"{:.2}\" font-size=\"10\" text-anchor=\"end\">{y_min}</text>",
        PAD,
        H - PAD
    );
    frame(title, &body)
}

/// Side-by-side bars per bin, class 0 blue and class 1 orange.
pub fn histogram_chart(title: &str, h: &ProbabilityHistogram) -> String {
    let mut body = String::new();
    let bins = h.class0.len().max(1);
    let peak = h
        .class0
        .iter()
        .chain(&h.class1)
        .copied()
        .max()
        .unwrap_or(0)
        .max(1) as f64;
    let bin_w = (W - 2.0 * PAD) / bins as f64;
    for b in 0..h.class0.len() {
        for (offset, count, color) in [(0.0, h.class0[b], "#1f77b4"), (0.5, h.class1[b], "#ff7f0e")] {
            let height = (H - 2.0 * PAD) * count as f64 / peak;
            let _ = writeln!(
                body,
                "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"{color}\"/>",
                PAD + bin_w * (b as f64 + offset),
                H - PAD - height,
                bin_w / 2.0,
                height
            );
        }
    }
    frame(title, &body)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charts_are_well_formed() {
        let pts = [SeriesPoint { iteration: 0, value: 0.5 }, SeriesPoint { iteration: 3, value: 0.1 }];
        let svg = line_chart("cv", &pts);
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains("polyline"));
        let h = ProbabilityHistogram::from_probabilities(&[0.1, 0.9, 0.5], &[0, 1, 1], 20);
        assert_eq!(histogram_chart("p", &h).matches("<rect").count(), 1 + 40);
    }
}
