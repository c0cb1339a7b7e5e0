//! Balls and word norm with respect to `S = {t, a_0}`.

use std::collections::HashSet;

use rayon::prelude::*;

use super::element::GroupElement;
use super::spec::QuotientSpec;
use super::word::Generator;
use crate::error::{Error, Result};

pub const DEFAULT_RADIUS_CAP: u32 = 12;

const STEPS: [(Generator, i64); 4] =
    [(Generator::T, 1), (Generator::T, -1), (Generator::A(0), 1), (Generator::A(0), -1)];

fn check_cap(n: u32) -> Result<()> {
    if n > DEFAULT_RADIUS_CAP {
        return Err(Error::pre(format!("radius {n} exceeds the cap {DEFAULT_RADIUS_CAP}")));
    }
    Ok(())
}

/// Breadth-first spheres: `layers[k]` holds the elements of norm exactly
/// `k`, sorted canonically. Stops early once `stop` matches an element.
fn bfs(
    spec: &QuotientSpec,
    n: u32,
    stop: Option<&GroupElement>,
) -> Result<Vec<Vec<GroupElement>>> {
    let id = GroupElement::identity(spec);
    let mut seen: HashSet<GroupElement> = HashSet::from([id.clone()]);
    let mut layers = vec![vec![id]];
    for _ in 0..n {
        let frontier = layers.last().unwrap();
        if stop.is_some_and(|s| frontier.binary_search(s).is_ok()) {
            break;
        }
        let next: Vec<GroupElement> = frontier
            .par_iter()
            .map(|g| STEPS.iter().map(|&(s, e)| g.mul_gen(s, e)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        let mut layer: Vec<GroupElement> = Vec::new();
        for g in next {
            if !seen.contains(&g) {
                seen.insert(g.clone());
                layer.push(g);
            }
        }
        layer.par_sort();
        if layer.is_empty() {
            break;
        }
        layers.push(layer);
    }
    Ok(layers)
}

/// Spheres of radius `0..=n` in the Cayley graph of `spec` over `{t, a_0}`.
pub fn ball_layers(spec: &QuotientSpec, n: u32) -> Result<Vec<Vec<GroupElement>>> {
    check_cap(n)?;
    bfs(spec, n, None)
}

/// All elements of norm at most `n`, sorted canonically.
pub fn enumerate_ball(spec: &QuotientSpec, n: u32) -> Result<Vec<GroupElement>> {
    let mut all: Vec<GroupElement> = ball_layers(spec, n)?.into_iter().flatten().collect();
    all.par_sort();
    Ok(all)
}

/// Exact norm `||g||_S`, or `None` when it exceeds `radius_cap`.
pub fn word_norm(g: &GroupElement, radius_cap: u32) -> Result<Option<u32>> {
    check_cap(radius_cap)?;
    let layers = bfs(g.spec(), radius_cap, Some(g))?;
    Ok(layers.iter().position(|l| l.binary_search(g).is_ok()).map(|k| k as u32))
}
