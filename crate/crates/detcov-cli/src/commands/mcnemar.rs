//! `detcov mcnemar`: compare two detectors' pass/fail tallies.

use clap::Args;
use detcov::stats::{McNemarCounts, mcnemar_z};
use serde_json::json;

use crate::Outcome;
use crate::report::{self, OutputOpts, RunReport};

#[derive(Debug, Args)]
pub struct McnemarArgs {
    /// Images where the left detector succeeded and the right failed
    #[arg(long, value_name = "N")]
    pub sf: u32,
    /// Images where the left detector failed and the right succeeded
    #[arg(long, value_name = "N")]
    pub fs: u32,
    /// Images where both detectors succeeded
    #[arg(long, default_value_t = 0, value_name = "N")]
    pub ss: u32,
    /// Images where both detectors failed
    #[arg(long, default_value_t = 0, value_name = "N")]
    pub ff: u32,
    #[command(flatten)]
    pub output: OutputOpts,
}

pub fn run(args: McnemarArgs) -> anyhow::Result<Outcome> {
    let counts = McNemarCounts { n_ss: args.ss, n_sf: args.sf, n_fs: args.fs, n_ff: args.ff };
    let result = mcnemar_z(&counts)?;

    let mut rep = RunReport::new(
        "mcnemar",
        json!({ "ss": args.ss, "sf": args.sf, "fs": args.fs, "ff": args.ff }),
    );
    rep.inputs = vec![format!("counts {}/{}/{}/{}", args.ss, args.sf, args.fs, args.ff)];
    rep.results = json!({
        "z": result.z,
        "signed_z": result.signed_z,
        "reliable": result.reliable,
        "discordant": counts.discordant(),
        "total": counts.total(),
    });

    let mut human = String::from("detcov mcnemar\n");
    human.push_str(&format!(
        "z {}  signed {}  discordant {}  total {}\n",
        args.output.num(result.z),
        args.output.num(result.signed_z),
        counts.discordant(),
        counts.total()
    ));
    if !result.reliable {
        human.push_str("unreliable: discordant count below 30\n");
    }

    report::emit(&rep, human, &args.output)?;
    Ok(Outcome::Clean)
}
