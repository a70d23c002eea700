use ktruss::minimize::solve;

use crate::args::BenchArgs;
use crate::commands::{config, load, Out};
use crate::error::CliError;

pub const HEADER: [&str; 7] = ["k", "b", "algorithm", "rep", "followers_total", "time_ms", "candidates_evaluated"];

/// One CSV row per (k, b, algorithm, repetition). A cell that fails keeps
/// its row: the error text goes in `followers_total` and the numeric
/// columns stay empty.
pub fn run(args: &BenchArgs, out: Out, err: Out) -> Result<(), CliError> {
    let g = load(&args.input)?;
    let csv_err = |e: csv::Error| CliError::Input(format!("cannot write output: {e}"));
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER).map_err(csv_err)?;
    for &k in &args.ks {
        for &b in &args.bs {
            for &alg in &args.algorithms {
                for rep in 1..=args.reps {
                    let cell = [k.to_string(), b.to_string(), alg.to_string(), rep.to_string()];
                    let tail = match solve(&g, &config(k, b, alg, &args.solver)) {
                        Ok(r) => [
                            r.totals.followers.to_string(),
                            format!("{:.3}", r.timing.total_ms),
                            r.candidates_evaluated().to_string(),
                        ],
                        Err(e) => {
                            writeln!(err, "k={k} b={b} {alg} rep {rep}: {e}")
                                .map_err(|e| CliError::Input(e.to_string()))?;
                            [format!("error: {e}"), String::new(), String::new()]
                        }
                    };
                    w.write_record(cell.iter().chain(&tail)).map_err(csv_err)?;
                }
            }
        }
        w.flush().map_err(|e| CliError::Input(format!("cannot write output: {e}")))?;
    }
    w.flush().map_err(|e| CliError::Input(format!("cannot write output: {e}")))
}
