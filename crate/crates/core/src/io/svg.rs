//! Static scatter plot of a placement: one dot per user, sized by load and
//! coloured by cluster, plus a cross per UAV position.

use std::fmt::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::model::{Placement, Scenario};

const CANVAS: f64 = 480.0;
const MARGIN: f64 = 24.0;
const MARKER: f64 = 7.0;
const RADIUS_EPS: f64 = 1e-12;

const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
];

/// Dot radius: 2 for the lightest user, approaching 6 for the heaviest.
pub fn radius_for_load(load: f64, min_load: f64, max_load: f64) -> f64 {
    2.0 + 4.0 * (load - min_load) / (max_load - min_load + RADIUS_EPS)
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

pub fn render_svg(s: &Scenario, p: &Placement) -> Result<String> {
    render_svg_titled(s, p, "placement")
}

pub fn render_svg_titled(s: &Scenario, p: &Placement, title: &str) -> Result<String> {
    let area = &s.area;
    let scale = (CANVAS - 2.0 * MARGIN) / area.width().max(area.height());
    let width = 2.0 * MARGIN + area.width() * scale;
    let height = 2.0 * MARGIN + area.height() * scale;
    let px = |x: f64| MARGIN + (x - area.xmin) * scale;
    let py = |y: f64| MARGIN + (area.ymax - y) * scale;

    let min_load = s.users.iter().map(|u| u.load).fold(f64::INFINITY, f64::min);
    let max_load = s
        .users
        .iter()
        .map(|u| u.load)
        .fold(f64::NEG_INFINITY, f64::max);

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.3}\" height=\"{height:.3}\" viewBox=\"0 0 {width:.3} {height:.3}\">"
    );
    let _ = writeln!(out, "<title>{}</title>", escape(title));
    let _ = writeln!(
        out,
        "<rect class=\"area\" x=\"{:.3}\" y=\"{:.3}\" width=\"{:.3}\" height=\"{:.3}\" fill=\"white\" stroke=\"#444444\"/>",
        px(area.xmin),
        py(area.ymax),
        area.width() * scale,
        area.height() * scale
    );

    out.push_str("<g class=\"users\">\n");
    for u in &s.users {
        let c = p
            .cluster_of(&u.id)
            .ok_or_else(|| Error::UncoveredUser(u.id.clone()))?;
        if c >= p.k() {
            return Err(Error::ClusterOutOfRange {
                user: u.id.clone(),
                index: c,
                k: p.k(),
            });
        }
        let _ = writeln!(
            out,
            "<circle class=\"user\" data-id=\"{}\" data-cluster=\"{c}\" cx=\"{:.3}\" cy=\"{:.3}\" r=\"{:.3}\" fill=\"{}\" fill-opacity=\"0.85\"/>",
            escape(u.id.as_str()),
            px(u.x),
            py(u.y),
            radius_for_load(u.load, min_load, max_load),
            PALETTE[c % PALETTE.len()]
        );
    }
    out.push_str("</g>\n<g class=\"centroids\">\n");
    for (i, c) in p.centroids.iter().enumerate() {
        let (x, y) = (px(c.x), py(c.y));
        let _ = writeln!(
            out,
            "<path class=\"centroid\" data-cluster=\"{i}\" d=\"M {:.3} {:.3} L {:.3} {:.3} M {:.3} {:.3} L {:.3} {:.3}\" stroke=\"#000000\" stroke-width=\"2.5\" fill=\"none\"/>",
            x - MARKER,
            y - MARKER,
            x + MARKER,
            y + MARKER,
            x - MARKER,
            y + MARKER,
            x + MARKER,
            y - MARKER
        );
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}

pub fn write_svg(path: impl AsRef<Path>, s: &Scenario, p: &Placement, title: &str) -> Result<()> {
    super::write_text(path.as_ref(), &render_svg_titled(s, p, title)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Mode, SolveConfig};
    use crate::scenario::{generate, GenerateParams};

    fn solved(high_fraction: f64, k: usize) -> (Scenario, Placement) {
        let s = generate(&GenerateParams {
            seed: 21,
            n_users: 30,
            k,
            high_fraction,
            ..Default::default()
        })
        .unwrap();
        let p = crate::solve(&s, &SolveConfig::with_mode(Mode::WeightedReplication))
            .unwrap()
            .placement;
        (s, p)
    }

    #[test]
    fn element_counts() {
        let (s, p) = solved(0.3, 2);
        let svg = render_svg(&s, &p).unwrap();
        assert_eq!(svg.matches("class=\"centroid\"").count(), 2);
        assert_eq!(svg.matches("class=\"user\"").count(), 30);
    }

    #[test]
    fn equal_loads_share_one_radius() {
        let (s, p) = solved(0.0, 3);
        let svg = render_svg(&s, &p).unwrap();
        let radii: std::collections::BTreeSet<&str> = svg
            .split(" r=\"")
            .skip(1)
            .map(|rest| &rest[..rest.find('"').unwrap()])
            .collect();
        assert_eq!(radii.len(), 1);
        assert_eq!(radii.into_iter().next().unwrap(), "2.000");
    }

    #[test]
    fn heavier_users_get_bigger_dots() {
        assert_eq!(radius_for_load(1.0, 1.0, 8.0), 2.0);
        assert!((radius_for_load(8.0, 1.0, 8.0) - 6.0).abs() < 1e-9);
        assert!(radius_for_load(4.0, 1.0, 8.0) < radius_for_load(5.0, 1.0, 8.0));
    }

    #[test]
    fn deterministic_bytes() {
        let (s, p) = solved(0.3, 3);
        assert_eq!(render_svg(&s, &p).unwrap(), render_svg(&s, &p).unwrap());
    }

    #[test]
    fn self_contained() {
        let (s, p) = solved(0.3, 3);
        let svg = render_svg(&s, &p).unwrap();
        assert!(!svg.contains("href"));
        assert!(!svg.contains("url("));
    }

    #[test]
    fn uncovered_user() {
        let (s, mut p) = solved(0.3, 3);
        let first = s.users[0].id.clone();
        p.assignment.remove(&first);
        assert!(matches!(render_svg(&s, &p), Err(Error::UncoveredUser(id)) if id == first));
    }

    #[test]
    fn ids_are_escaped() {
        let (mut s, mut p) = solved(0.3, 3);
        let old = s.users[0].id.clone();
        let c = p.assignment.remove(&old).unwrap();
        s.users[0].id = crate::UserId::from("a<\"&>");
        p.assignment.insert(s.users[0].id.clone(), c);
        let svg = render_svg_titled(&s, &p, "x & y").unwrap();
        assert!(svg.contains("data-id=\"a&lt;&quot;&amp;&gt;\""));
        assert!(svg.contains("<title>x &amp; y</title>"));
    }
}
