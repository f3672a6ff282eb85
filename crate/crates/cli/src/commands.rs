use std::path::Path;
use std::time::Instant;

use pooldesign_core::construct::{
    builtin, concatenate, concatenated_reed_solomon, dedupe_rows, identity_code, reed_solomon,
    trivial_code,
};
use pooldesign_core::decode::{decode_disjunct, decode_inhibitor, decode_superset};
use pooldesign_core::models::{result_disjunct, result_inhibitor, result_superset};
use pooldesign_core::simulate::{self, simulate};
use pooldesign_core::verify::{
    is_inhibitory_code, is_mds, is_separating, is_superimposed, is_superimposed_sl,
    oracle_disjunct_design, oracle_inhibitory_design, oracle_superset_design, spot_check_sl,
};
use pooldesign_core::{BitVector, Builtin, Complex, DefectiveSet, InhibitorInstance, VerifyReport};

use crate::input::{load_binary, load_code, load_qary, require, CliError, CliResult, Code};
use crate::{
    Bounds, Command, Construct, DecodeArgs, Model, Property, ResultArgs, SimulateArgs, VerifyArgs,
};

pub fn run(command: Command) -> CliResult<u8> {
    match command {
        Command::Construct { what, out } => {
            let text = construct(what)?;
            match out {
                Some(path) => write_file(&path, &text)?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Verify(args) => verify(args),
        Command::Decode(args) => decode(args),
        Command::Result(args) => result(args),
        Command::Simulate(args) => run_simulation(args),
    }
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn construct(what: Construct) -> CliResult<String> {
    Ok(match what {
        Construct::Trivial { t, s, l } => trivial_code(t, s, l)?.to_text(),
        Construct::Identity { t } => identity_code(t)?.to_text(),
        Construct::Rs { q, lambda, rows } => {
            let (code, _) = reed_solomon(q, lambda)?;
            match rows {
                Some(k) => code.take_rows(k)?.to_text(),
                None => code.to_text(),
            }
        }
        Construct::Concat { outer, inner } => {
            let outer = load_qary(Some(&outer))?;
            let inner = load_binary(Some(&inner))?;
            concatenate(&outer, &inner)?.to_text()
        }
        Construct::RsConcat {
            s,
            l,
            lambda,
            q,
            inner,
            verify,
        } => {
            let inner = load_binary(Some(&inner))?;
            if verify {
                let report = is_superimposed_sl(&inner, s, l)?;
                if !report.holds {
                    return Err(CliError::Usage(format!("inner code: {}", report.verdict())));
                }
            }
            concatenated_reed_solomon(s, l, lambda, q, &inner)?.to_text()
        }
        Construct::Builtin { name } => match builtin(&name)? {
            Builtin::Binary(x) => x.to_text(),
            Builtin::Qary(x) => x.to_text(),
        },
        Construct::Dedupe { code } => dedupe_rows(&load_binary(code.as_deref())?).to_text(),
        Construct::Restrict { code, keep } => {
            let keep = parse_columns(&keep)?;
            match load_code(code.as_deref())? {
                Code::Binary(x) => x.restrict_columns(&keep)?.to_text(),
                Code::Qary(x) => x.restrict_columns(&keep)?.to_text(),
            }
        }
    })
}

fn parse_columns(text: &str) -> CliResult<Vec<usize>> {
    text.split(',')
        .map(|f| match f.trim().parse::<usize>() {
            Ok(v) if v >= 1 => Ok(v - 1),
            _ => Err(CliError::Usage(format!("--keep: bad column {f:?}"))),
        })
        .collect()
}

fn verify(args: VerifyArgs) -> CliResult<u8> {
    let code = args.code.as_deref();
    let report = match args.property {
        Property::Superimposed => is_superimposed(&load_binary(code)?, require(args.s, "s")?)?,
        Property::Sl => is_superimposed_sl(
            &load_binary(code)?,
            require(args.s, "s")?,
            require(args.l, "l")?,
        )?,
        Property::Inhibitory => is_inhibitory_code(
            &load_binary(code)?,
            require(args.s, "s")?,
            require(args.iota, "i")?,
        )?,
        Property::Separating => is_separating(
            &load_qary(code)?,
            require(args.s, "s")?,
            require(args.l, "l")?,
        )?,
        Property::Mds => is_mds(&load_qary(code)?, require(args.k, "k")?)?,
        Property::DesignDisjunct => {
            oracle_disjunct_design(&load_binary(code)?, require(args.s, "s")?)?
        }
        Property::DesignSuperset => oracle_superset_design(
            &load_binary(code)?,
            require(args.s, "s")?,
            require(args.l, "l")?,
        )?,
        Property::DesignInhibitor => oracle_inhibitory_design(
            &load_binary(code)?,
            require(args.s, "s")?,
            require(args.iota, "i")?,
        )?,
        Property::Spot => spot_check_sl(
            &load_binary(code)?,
            require(args.s, "s")?,
            require(args.l, "l")?,
            args.trials,
            args.seed,
        )?,
    };
    print_report(&report, args.detail);
    Ok(if report.holds { 0 } else { 1 })
}

fn print_report(report: &VerifyReport, detail: bool) {
    println!("{}", report.verdict());
    if detail {
        print!("{}", report.detail());
    }
}

fn require_bound(value: Option<usize>, flag: &str, model: &str) -> CliResult<usize> {
    value.ok_or_else(|| CliError::Usage(format!("the {model} model needs --{flag}")))
}

fn simulation_model(model: Model, bounds: &Bounds) -> CliResult<simulate::Model> {
    let s = bounds.s;
    Ok(match model {
        Model::Disjunct => simulate::Model::Disjunct { s },
        Model::Superset => simulate::Model::Superset {
            s,
            l: require_bound(bounds.l, "l", "superset")?,
        },
        Model::Inhibitor => simulate::Model::Inhibitor {
            s,
            iota: require_bound(bounds.iota, "i", "inhibitor")?,
        },
    })
}

fn decode(args: DecodeArgs) -> CliResult<u8> {
    let x = load_binary(args.code.as_deref())?;
    let r: BitVector = args
        .result
        .trim()
        .parse()
        .map_err(|e| CliError::Format(format!("--result: {e}")))?;
    let model = simulation_model(args.model, &args.bounds)?;
    if args.verify {
        let report = match model {
            simulate::Model::Disjunct { s } => is_superimposed(&x, s)?,
            simulate::Model::Superset { s, l } => is_superimposed_sl(&x, s, l)?,
            simulate::Model::Inhibitor { s, iota } => is_inhibitory_code(&x, s, iota)?,
        };
        if !report.holds {
            eprintln!("code check: {}", report.verdict());
            return Ok(1);
        }
    }
    let decoded = match model {
        simulate::Model::Disjunct { s } => decode_disjunct(&x, &r, s)?.to_string(),
        simulate::Model::Superset { s, l } => decode_superset(&x, &r, s, l)?.to_string(),
        simulate::Model::Inhibitor { s, iota } => decode_inhibitor(&x, &r, s, iota)?.to_string(),
    };
    println!("{decoded}");
    Ok(0)
}

fn result(args: ResultArgs) -> CliResult<u8> {
    let x = load_binary(args.code.as_deref())?;
    let t = x.num_cols();
    let r = match args.model {
        Model::Disjunct => result_disjunct(&x, &DefectiveSet::parse(&args.instance, t)?)?,
        Model::Superset => result_superset(&x, &Complex::parse(&args.instance, t)?)?,
        Model::Inhibitor => result_inhibitor(&x, &InhibitorInstance::parse(&args.instance, t)?)?,
    };
    println!("{r}");
    Ok(0)
}

fn run_simulation(args: SimulateArgs) -> CliResult<u8> {
    let x = load_binary(args.code.as_deref())?;
    let model = simulation_model(args.model, &args.bounds)?;
    let start = Instant::now();
    let report = simulate(&x, model, args.trials, args.seed)?;
    // Timing goes to stderr so stdout stays byte-identical across runs.
    eprintln!("wall_time: {:.3}s", start.elapsed().as_secs_f64());
    print!("{report}");
    Ok(if report.failures() == 0 { 0 } else { 1 })
}
