//! Local grid refinement around an incumbent on the continuous dimensions.

use crate::grid::ResolvedGrid;
use crate::moo::ProblemDefinition;

const MAX_MOVES_PER_LEVEL: usize = 64;

#[derive(Debug, Clone)]
pub(crate) struct Refined {
    pub x: Vec<f64>,
    pub g: Vec<f64>,
    pub score: f64,
    pub evaluations: usize,
}

/// Pattern search on the continuous dimensions. Level `ℓ` probes the
/// `3^Dc − 1` neighbours at offsets `±h_d/2^ℓ`, where `h_d` is the widest
/// grid gap next to the incumbent, and moves while the score strictly
/// improves. Integral dimensions stay fixed. The score never decreases.
pub(crate) fn refine_local<S>(
    problem: &ProblemDefinition,
    grid: &ResolvedGrid,
    x0: Vec<f64>,
    g0: Vec<f64>,
    levels: usize,
    score: S,
) -> Refined
where
    S: Fn(&[f64]) -> f64,
{
    let start = score(&g0);
    let mut best = Refined { x: x0, g: g0, score: start, evaluations: 0 };
    if levels == 0 {
        return best;
    }
    let dims: Vec<usize> = (0..problem.dimension()).filter(|&d| !problem.integral()[d]).collect();
    let base: Vec<f64> = dims.iter().map(|&d| grid.local_step(d, best.x[d])).collect();
    let active: Vec<(usize, f64)> = dims.into_iter().zip(base).filter(|&(_, h)| h > 0.0).collect();
    if active.is_empty() {
        return best;
    }
    let neighbours = 3usize.pow(active.len() as u32);
    let mut g = vec![0.0; problem.objective_count()];
    let mut x = best.x.clone();
    for level in 1..=levels {
        let scale = 0.5f64.powi(level as i32);
        for _ in 0..MAX_MOVES_PER_LEVEL {
            let mut candidate: Option<(Vec<f64>, Vec<f64>, f64)> = None;
            for code in 0..neighbours {
                if code == neighbours / 2 {
                    continue; // all-zero offset
                }
                x.copy_from_slice(&best.x);
                let mut c = code;
                for &(d, h) in &active {
                    let offset = (c % 3) as f64 - 1.0;
                    c /= 3;
                    x[d] = (best.x[d] + offset * h * scale).clamp(problem.lower()[d], problem.upper()[d]);
                }
                if x == best.x || !problem.is_feasible(&x) {
                    continue;
                }
                problem.evaluate_into(&x, &mut g);
                best.evaluations += 1;
                let s = score(&g);
                let better = match &candidate {
                    None => s > best.score,
                    Some((cx, _, cs)) => s > *cs || (s == *cs && lex_less(&x, cx)),
                };
                if better {
                    candidate = Some((x.clone(), g.clone(), s));
                }
            }
            match candidate {
                Some((cx, cg, cs)) => {
                    best.x = cx;
                    best.g = cg;
                    best.score = cs;
                }
                None => break,
            }
        }
    }
    best
}

fn lex_less(a: &[f64], b: &[f64]) -> bool {
    for (x, y) in a.iter().zip(b) {
        if x < y {
            return true;
        }
        if x > y {
            return false;
        }
    }
    false
}
