//! SVG renderings of populations: an edge-count map of the whole
//! population, and a per-tour panel view highlighting shared edges.

use thiserror::Error;

use crate::diversity::Population;
use crate::instance::{edge_endpoints, Instance, Tour};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RenderError {
    #[error("instance {0:?} has no coordinates to draw")]
    MissingCoordinates(String),
    #[error("population is empty")]
    EmptyPopulation,
}

struct Frame {
    min_x: f64,
    max_y: f64,
    pad: f64,
    width: f64,
    height: f64,
    stroke: f64,
}

impl Frame {
    fn new(coords: &[(f64, f64)]) -> Frame {
        let min_x = coords.iter().map(|c| c.0).fold(f64::INFINITY, f64::min);
        let max_x = coords.iter().map(|c| c.0).fold(f64::NEG_INFINITY, f64::max);
        let min_y = coords.iter().map(|c| c.1).fold(f64::INFINITY, f64::min);
        let max_y = coords.iter().map(|c| c.1).fold(f64::NEG_INFINITY, f64::max);
        let span = (max_x - min_x).max(max_y - min_y).max(1.0);
        let pad = span * 0.05;
        Frame {
            min_x,
            max_y,
            pad,
            width: (max_x - min_x) + 2.0 * pad,
            height: (max_y - min_y) + 2.0 * pad,
            stroke: span / 180.0,
        }
    }

    // Flip y so larger coordinates are drawn higher.
    fn map(&self, p: (f64, f64), dx: f64) -> (f64, f64) {
        (p.0 - self.min_x + self.pad + dx, self.max_y - p.1 + self.pad)
    }
}

fn line(out: &mut String, a: (f64, f64), b: (f64, f64), style: &str) {
    out.push_str(&format!(
        "  <line x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" {}/>\n",
        a.0, a.1, b.0, b.1, style
    ));
}

fn vertices(out: &mut String, coords: &[(f64, f64)], frame: &Frame, dx: f64) {
    for &c in coords {
        let (x, y) = frame.map(c, dx);
        out.push_str(&format!(
            "  <circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"{:.3}\" fill=\"#000\"/>\n",
            x,
            y,
            frame.stroke * 1.6
        ));
    }
}

fn svg_open(width: f64, height: f64) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {:.3} {:.3}\" width=\"{}\" height=\"{}\">\n",
        width,
        height,
        720,
        (720.0 * height / width).round() as u64
    )
}

fn coords_of(instance: &Instance) -> Result<&[(f64, f64)], RenderError> {
    instance
        .coords()
        .ok_or_else(|| RenderError::MissingCoordinates(instance.name().to_string()))
}

/// Edge-count map: one segment per edge used by at least one tour,
/// opacity proportional to its count over the population size; the
/// optimal tour, when given, is stroked in red on top.
pub fn render_edge_counts(
    pop: &Population,
    instance: &Instance,
    opt_tour: Option<&Tour>,
) -> Result<String, RenderError> {
    if pop.is_empty() {
        return Err(RenderError::EmptyPopulation);
    }
    let coords = coords_of(instance)?;
    let frame = Frame::new(coords);
    let n = instance.n();
    let mu = pop.len() as f64;

    let mut out = svg_open(frame.width, frame.height);
    for (idx, &count) in pop.edge_counts().iter().enumerate() {
        if count == 0 {
            continue;
        }
        let (u, v) = edge_endpoints(n, crate::instance::EdgeId(idx as u32));
        let style = format!(
            "stroke=\"#000\" stroke-opacity=\"{:.4}\" stroke-width=\"{:.3}\"",
            count as f64 / mu,
            frame.stroke
        );
        line(
            &mut out,
            frame.map(coords[u as usize], 0.0),
            frame.map(coords[v as usize], 0.0),
            &style,
        );
    }
    if let Some(tour) = opt_tour {
        let style = format!(
            "stroke=\"red\" stroke-width=\"{:.3}\"",
            frame.stroke * 0.8
        );
        for (u, v) in tour.edges() {
            line(
                &mut out,
                frame.map(coords[u as usize], 0.0),
                frame.map(coords[v as usize], 0.0),
                &style,
            );
        }
    }
    vertices(&mut out, coords, &frame, 0.0);
    out.push_str("</svg>\n");
    Ok(out)
}

/// Panel view: one panel per tour, left to right in ascending cost
/// order. Edges shared by at least two tours are red, edges unique to
/// their tour blue.
pub fn render_population(pop: &Population, instance: &Instance) -> Result<String, RenderError> {
    if pop.is_empty() {
        return Err(RenderError::EmptyPopulation);
    }
    let coords = coords_of(instance)?;
    let frame = Frame::new(coords);
    let n = instance.n();

    let mut order: Vec<usize> = (0..pop.len()).collect();
    order.sort_by_key(|&i| (instance.tour_cost(pop.tour(i)), i));

    let total_width = frame.width * pop.len() as f64;
    let mut out = svg_open(total_width, frame.height);
    for (panel, &i) in order.iter().enumerate() {
        let dx = panel as f64 * frame.width;
        let tour = pop.tour(i);
        out.push_str(&format!(
            "<g class=\"panel\" data-cost=\"{}\">\n",
            instance.tour_cost(tour)
        ));
        for (u, v) in tour.edges() {
            let count = pop.edge_count_of(crate::instance::edge_id(n, u, v));
            let color = if count >= 2 { "red" } else { "blue" };
            let style = format!(
                "stroke=\"{color}\" stroke-width=\"{:.3}\"",
                frame.stroke
            );
            line(
                &mut out,
                frame.map(coords[u as usize], dx),
                frame.map(coords[v as usize], dx),
                &style,
            );
        }
        vertices(&mut out, coords, &frame, dx);
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::optimal_population;
    use crate::instance::Tour;

    fn pentagon() -> Instance {
        let coords = (0..5)
            .map(|i| {
                let a = std::f64::consts::TAU * i as f64 / 5.0;
                (50.0 + 40.0 * a.cos(), 50.0 + 40.0 * a.sin())
            })
            .collect();
        Instance::euclidean("pentagon", coords)
    }

    #[test]
    fn identical_population_draws_n_full_opacity_segments() {
        let inst = pentagon();
        let t = Tour::new(vec![0, 1, 2, 3, 4]).unwrap();
        let pop = Population::new(5, vec![t.clone(), t.clone(), t]);
        let svg = render_edge_counts(&pop, &inst, None).unwrap();
        assert_eq!(svg.matches("<line").count(), 5);
        assert_eq!(svg.matches("stroke-opacity=\"1.0000\"").count(), 5);
    }

    #[test]
    fn optimal_population_has_near_uniform_opacity() {
        let inst = pentagon();
        let pop = Population::new(5, optimal_population(5, 4));
        let svg = render_edge_counts(&pop, &inst, None).unwrap();
        let mut opacities: Vec<&str> = svg
            .split("stroke-opacity=\"")
            .skip(1)
            .map(|s| &s[..6])
            .collect();
        opacities.sort_unstable();
        opacities.dedup();
        assert!(
            opacities.len() <= 2,
            "counts spread > 1 in render: {opacities:?}"
        );
    }

    #[test]
    fn optimal_tour_is_stroked_in_red() {
        let inst = pentagon();
        let t = Tour::new(vec![0, 1, 2, 3, 4]).unwrap();
        let pop = Population::new(5, vec![t.clone(), t.clone()]);
        let svg = render_edge_counts(&pop, &inst, Some(&t)).unwrap();
        assert_eq!(svg.matches("stroke=\"red\"").count(), 5);
    }

    #[test]
    fn unit_instances_cannot_be_rendered() {
        let inst = Instance::unit(5);
        let t = Tour::new(vec![0, 1, 2, 3, 4]).unwrap();
        let pop = Population::new(5, vec![t.clone(), t]);
        assert_eq!(
            render_edge_counts(&pop, &inst, None),
            Err(RenderError::MissingCoordinates("unit-5".into()))
        );
        assert_eq!(
            render_population(&pop, &inst),
            Err(RenderError::MissingCoordinates("unit-5".into()))
        );
    }

    #[test]
    fn disjoint_tours_render_all_blue_and_identical_all_red() {
        let inst = Instance::euclidean(
            "hepta",
            (0..7)
                .map(|i| {
                    let a = std::f64::consts::TAU * i as f64 / 7.0;
                    (50.0 + 40.0 * a.cos(), 50.0 + 40.0 * a.sin())
                })
                .collect(),
        );
        let disjoint = Population::new(7, crate::decomposition::decompose(7).cycles);
        let svg = render_population(&disjoint, &inst).unwrap();
        assert_eq!(svg.matches("stroke=\"blue\"").count(), 21);
        assert_eq!(svg.matches("stroke=\"red\"").count(), 0);

        let t = Tour::new((0..7).collect()).unwrap();
        let same = Population::new(7, vec![t.clone(), t.clone(), t]);
        let svg = render_population(&same, &inst).unwrap();
        assert_eq!(svg.matches("stroke=\"red\"").count(), 21);
        assert_eq!(svg.matches("stroke=\"blue\"").count(), 0);
    }

    #[test]
    fn panels_are_sorted_by_cost_and_mark_unique_edges() {
        // The worked-example population P2 on pentagon coordinates:
        // T1's panel shows its three count-1 edges in blue.
        let inst = pentagon();
        let t1 = Tour::new(vec![0, 2, 4, 3, 1]).unwrap();
        let t2 = Tour::new(vec![0, 4, 3, 2, 1]).unwrap();
        let t4 = Tour::new(vec![0, 4, 1, 2, 3]).unwrap();
        let pop = Population::new(5, vec![t1.clone(), t2, t4]);
        let svg = render_population(&pop, &inst).unwrap();
        let panels: Vec<&str> = svg.split("<g class=\"panel\"").skip(1).collect();
        assert_eq!(panels.len(), 3);
        // Locate T1's panel by its cost.
        let t1_cost = inst.tour_cost(&t1).to_string();
        let t1_panel = panels
            .iter()
            .find(|p| p.starts_with(&format!(" data-cost=\"{t1_cost}\"")))
            .expect("T1 panel present");
        assert_eq!(t1_panel.matches("stroke=\"blue\"").count(), 3);
        assert_eq!(t1_panel.matches("stroke=\"red\"").count(), 2);
        // Ascending cost order.
        let costs: Vec<u64> = panels
            .iter()
            .map(|p| {
                let start = p.find("data-cost=\"").unwrap() + 11;
                let end = p[start..].find('"').unwrap();
                p[start..start + end].parse().unwrap()
            })
            .collect();
        assert!(costs.windows(2).all(|w| w[0] <= w[1]));
    }
}
