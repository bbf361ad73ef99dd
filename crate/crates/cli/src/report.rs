use std::fmt::Write;

use qscissors_core::{OracleOutcome, Support};

use crate::format::csv_number;
use crate::point::{PlacementArg, PointParams, PointResult};

pub fn render_state(params: &PointParams, result: &PointResult, oracle: Option<&OracleOutcome>) -> String {
    let mut out = String::new();
    let placement = match params.placement {
        PlacementArg::A => "a (N photons at b_out, none at c_out; output mode a)",
        PlacementArg::B => "b (N photons at a_out, none at c_out; output mode b)",
    };
    let _ = writeln!(
        out,
        "input        {} (nbar = {})",
        params.input.name(),
        csv_number(params.nbar)
    );
    let _ = writeln!(out, "input cutoff {}", result.input.cutoff());
    let _ = writeln!(
        out,
        "device       s = {}, phi = {}, theta = {}, N = {}",
        csv_number(params.s),
        csv_number(params.phi),
        csv_number(params.theta),
        params.n
    );
    let _ = writeln!(out, "placement    {placement}");
    let _ = writeln!(out, "probability  {}", csv_number(result.probability));

    match &result.state {
        None => {
            let _ = writeln!(out, "state        undefined (outcome has zero probability)");
        }
        Some((state, metrics)) => {
            let support = match state.support {
                Support::MaxFock(n) => format!("max Fock number {n}"),
                Support::MinFock(n) => format!("min Fock number {n}"),
            };
            let _ = writeln!(out, "support      {support}");
            if state.dist.tail_mass() > 0.0 {
                let _ = writeln!(out, "tail bound   {}", csv_number(state.dist.tail_mass()));
            }
            let _ = writeln!(out, "mean         {}", csv_number(metrics.mean));
            let _ = writeln!(out, "variance     {}", csv_number(metrics.variance));
            let _ = writeln!(out, "mandel_q     {}", csv_number(metrics.mandel_q));
            let _ = writeln!(out, "hellinger_h  {}", csv_number(metrics.hellinger_h));
            let _ = writeln!(out, "distribution");
            for (n, p) in state.dist.probs().iter().enumerate() {
                // Long min-Fock tails are cut once they stop mattering.
                if n > params.n && *p < 1e-15 {
                    break;
                }
                let _ = writeln!(out, "  {n:>3}  {}", csv_number(*p));
            }
        }
    }

    if let Some(o) = oracle {
        let _ = writeln!(out, "oracle");
        let _ = writeln!(out, "  probability      {}", csv_number(o.probability));
        let _ = writeln!(
            out,
            "  |dp|             {}",
            csv_number((o.probability - result.probability).abs())
        );
        if let Some((state, _)) = &result.state {
            let (a, b) = (state.dist.probs(), o.dist.probs());
            let dev = (0..a.len().max(b.len()))
                .map(|i| (a.get(i).unwrap_or(&0.0) - b.get(i).unwrap_or(&0.0)).abs())
                .fold(0.0, f64::max);
            let _ = writeln!(out, "  max |d p_n|      {}", csv_number(dev));
        }
        if o.cutoff_warning {
            let _ = writeln!(
                out,
                "  warning: oracle cutoff truncated more than 1e-10 of the squeezed norm"
            );
        }
    }
    out
}
