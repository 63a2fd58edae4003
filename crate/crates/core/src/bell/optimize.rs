use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bipartite::BipartiteState;
use crate::error::{Error, Result};

use super::chsh::bell_parameter;
use super::families::ObservableFamily;

const DIAMETER_TOL: f64 = 1e-8;
const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizeConfig {
    pub starts: usize,
    pub max_evals: usize,
    pub seed: u64,
    /// Sampling interval [lo, hi) for each parameter's starting value.
    pub init_box: Vec<(f64, f64)>,
}

impl OptimizeConfig {
    /// Starts drawn uniformly from [0, 2π) in every coordinate.
    pub fn new(arity: usize, starts: usize, max_evals: usize, seed: u64) -> Self {
        Self {
            starts,
            max_evals,
            seed,
            init_box: vec![(0.0, TAU); arity],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BellResult {
    pub f_b: f64,
    pub params: Vec<f64>,
    pub evaluations: usize,
    pub family: String,
    pub seed: u64,
}

struct LocalRun {
    value: f64,
    x: Vec<f64>,
    evals: usize,
}

fn diameter(simplex: &[Vec<f64>]) -> f64 {
    let best = &simplex[0];
    simplex[1..]
        .iter()
        .map(|v| v.iter().zip(best).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt())
        .fold(0.0, f64::max)
}

fn towards(from: &[f64], to: &[f64], t: f64) -> Vec<f64> {
    from.iter().zip(to).map(|(a, b)| a + t * (b - a)).collect()
}

/// Minimizes `f` by the Nelder-Mead simplex method. Non-finite values rank
/// as +∞. The budget is checked once per iteration.
fn nelder_mead(f: &dyn Fn(&[f64]) -> f64, x0: &[f64], step: f64, max_evals: usize) -> LocalRun {
    let n = x0.len();
    let evals = std::cell::Cell::new(0usize);
    let eval = |x: &[f64]| {
        evals.set(evals.get() + 1);
        let v = f(x);
        if v.is_finite() {
            v
        } else {
            f64::INFINITY
        }
    };
    let mut simplex: Vec<Vec<f64>> = vec![x0.to_vec()];
    for i in 0..n {
        let mut v = x0.to_vec();
        v[i] += step;
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| eval(v)).collect();

    loop {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        if n == 0 || diameter(&simplex) < DIAMETER_TOL || evals.get() >= max_evals {
            break;
        }

        let centroid: Vec<f64> = (0..n)
            .map(|k| simplex[..n].iter().map(|v| v[k]).sum::<f64>() / n as f64)
            .collect();
        let worst = simplex[n].clone();
        let reflected = towards(&centroid, &worst, -REFLECT);
        let fr = eval(&reflected);

        if fr < values[0] {
            let expanded = towards(&centroid, &reflected, EXPAND);
            let fe = eval(&expanded);
            if fe < fr {
                simplex[n] = expanded;
                values[n] = fe;
            } else {
                simplex[n] = reflected;
                values[n] = fr;
            }
            continue;
        }
        if fr < values[n - 1] {
            simplex[n] = reflected;
            values[n] = fr;
            continue;
        }
        let (contracted, accept_below) = if fr < values[n] {
            (towards(&centroid, &reflected, CONTRACT), fr)
        } else {
            (towards(&centroid, &worst, CONTRACT), values[n])
        };
        let fc = eval(&contracted);
        if fc < accept_below || (fr < values[n] && fc <= fr) {
            simplex[n] = contracted;
            values[n] = fc;
            continue;
        }
        for i in 1..=n {
            simplex[i] = towards(&simplex[0], &simplex[i], SHRINK);
            values[i] = eval(&simplex[i]);
        }
    }
    LocalRun {
        value: values[0],
        x: simplex.swap_remove(0),
        evals: evals.get(),
    }
}

fn check_dims(state: &BipartiteState, family: &dyn ObservableFamily) -> Result<()> {
    if state.dims() != family.dims() {
        return Err(Error::domain(format!(
            "{} acts on {:?} but the state has dimensions {:?}",
            family.name(),
            family.dims(),
            state.dims()
        )));
    }
    Ok(())
}

fn objective<'a>(state: &'a BipartiteState, family: &'a dyn ObservableFamily) -> impl Fn(&[f64]) -> f64 + 'a {
    move |x: &[f64]| match family.build(x).and_then(|obs| bell_parameter(state, &obs)) {
        Ok(v) => -v,
        Err(_) => f64::NAN,
    }
}

fn finish(run: LocalRun, evaluations: usize, family: &dyn ObservableFamily, seed: u64) -> Result<BellResult> {
    if !run.value.is_finite() {
        return Err(Error::Numerical(format!(
            "no finite Bell factor after {evaluations} evaluations of {}",
            family.name()
        )));
    }
    Ok(BellResult {
        f_b: -run.value,
        params: run.x,
        evaluations,
        family: family.name().to_string(),
        seed,
    })
}

/// Multi-start Nelder-Mead maximization of F_B over the family's parameters.
/// Start `i` draws its initial point from a ChaCha8 stream `i` keyed by the
/// seed, so the result does not depend on the thread count.
pub fn optimize_bell(state: &BipartiteState, family: &dyn ObservableFamily, config: &OptimizeConfig) -> Result<BellResult> {
    if config.init_box.len() != family.arity() {
        return Err(Error::domain(format!(
            "{} has {} parameters but the start box has {}",
            family.name(),
            family.arity(),
            config.init_box.len()
        )));
    }
    if config.starts == 0 {
        return Err(Error::domain("at least one start is required"));
    }
    check_dims(state, family)?;
    let f = objective(state, family);
    let runs: Vec<LocalRun> = (0..config.starts)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(i as u64);
            let x0: Vec<f64> = config
                .init_box
                .iter()
                .map(|&(lo, hi)| if hi > lo { rng.random_range(lo..hi) } else { lo })
                .collect();
            let width = config.init_box.iter().map(|&(lo, hi)| hi - lo).fold(0.0, f64::max);
            let step = if width > 0.0 { 0.1 * width } else { 0.1 };
            nelder_mead(&f, &x0, step, config.max_evals)
        })
        .collect();
    let evaluations = runs.iter().map(|r| r.evals).sum();
    let best = runs
        .into_iter()
        .reduce(|best, r| if r.value < best.value { r } else { best })
        .expect("at least one start");
    finish(best, evaluations, family, config.seed)
}

/// Local Nelder-Mead refinement of F_B starting from `params`.
pub fn polish(state: &BipartiteState, family: &dyn ObservableFamily, params: &[f64], max_evals: usize) -> Result<BellResult> {
    if params.len() != family.arity() {
        return Err(Error::domain(format!(
            "{} takes {} parameters, got {}",
            family.name(),
            family.arity(),
            params.len()
        )));
    }
    check_dims(state, family)?;
    let f = objective(state, family);
    let run = nelder_mead(&f, params, 0.05, max_evals);
    let evals = run.evals;
    finish(run, evals, family, 0)
}
