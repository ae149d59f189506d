use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{value_parser, Arg, ArgAction, ArgMatches, Command};
use serde_json::{json, Value};

use tiltkit::gen::{generate, Bounds, GeneratorConfig, KINDS};
use tiltkit::ops;
use tiltkit::suites::{run_suite, run_trials, SUITES};
use tiltkit::CliError;

/// `(group, verb, help)`; an empty verb is a top-level command.
const DATA_COMMANDS: [(&str, &str, &str); 29] = [
    ("group", "snf", "Smith normal form of {\"matrix\": rows}"),
    ("group", "hom", "Hom(src, dst) of two groups"),
    ("b", "validate", "check a B-object and report H⁻¹, H⁰"),
    ("b", "compose", "q ∘ p for {\"p\", \"q\"}"),
    ("b", "add", "p + q for {\"p\", \"q\"}"),
    ("b", "equal", "whether two butterflies are equivalent"),
    ("b", "kernel", "kernel object and inclusion of a butterfly"),
    ("b", "cokernel", "cokernel object and projection of a butterfly"),
    ("b", "classify", "mono/epi/iso and inverse of a butterfly"),
    ("b", "les", "seven-term long exact sequence of a butterfly"),
    ("dec", "cohomology", "H^{-1,n} and H^{0,n} of a decorated complex"),
    ("dec", "compatible", "whether a decorated complex is compatible"),
    ("dec", "cone", "mapping cone of a decorated map"),
    ("dec", "hh", "heart cohomology objects of a chain complex"),
    ("dec", "freecover", "free cover of a decorated complex"),
    ("tot", "", "total decorated complex of a complex in B"),
    ("g", "", "complex in B of a compatible decorated complex"),
    ("link", "", "link of composable butterflies {\"p\", \"q\"}"),
    ("roof", "", "strict roof of a butterfly"),
    ("c", "validate", "check a 4-tuple [K1 ⊆ K2 ⊆ E ⊇ M]"),
    ("c", "h", "the group H of a 4-tuple"),
    ("c", "qprime", "Q′ of a group"),
    ("dg", "hom", "decorated Hom complex of {\"x\", \"y\"}"),
    ("dg", "strict-hom", "strict Hom complex of complexes in B"),
    ("dg", "rhom", "derived Hom via a semi-projective replacement"),
    ("dg", "check-enrich", "whether d preserves the decorated subcomplex"),
    ("dg", "quotient", "quotient of the decorated Hom complex"),
    ("dg", "replace", "semi-projective replacement of a B-object"),
    ("dg", "hom-b", "Hom_B of two B-objects"),
];

const GROUP_HELP: [(&str, &str); 5] = [
    ("group", "finitely generated abelian groups"),
    ("b", "objects and butterflies of the heart B"),
    ("dec", "decorated complexes"),
    ("c", "4-tuples of the second tilt"),
    ("dg", "Hom complexes and semi-projective replacements"),
];

fn input_arg() -> Arg {
    Arg::new("input").value_name("FILE").help("JSON input; standard input when omitted")
}

fn cli() -> Command {
    let mut cmd = Command::new("tiltkit")
        .about("Computations in the heart of a tilted t-structure on D(Ab), with randomized verification")
        .version(env!("CARGO_PKG_VERSION"))
        .subcommand_required(true)
        .arg_required_else_help(true)
        .arg(Arg::new("seed").long("seed").global(true).env("TILTKIT_SEED").value_parser(value_parser!(u64)).help("master seed [default: 42]"))
        .arg(Arg::new("trials").long("trials").global(true).value_parser(value_parser!(usize)).help("trials per suite, or instances for gen [default: 200]"))
        .arg(Arg::new("bounds").long("bounds").global(true).value_name("RANK,RELS,ENTRY,LEN").help("generator bounds [default: 3,4,9,4]"))
        .arg(Arg::new("json-errors").long("json-errors").global(true).action(ArgAction::SetTrue).help("report errors as JSON on stderr"))
        .arg(Arg::new("out").long("out").global(true).value_name("FILE").value_parser(value_parser!(PathBuf)).help("write output here instead of stdout"));
    let mut groups: Vec<(&str, Command)> = Vec::new();
    for (group, verb, help) in DATA_COMMANDS {
        if verb.is_empty() {
            cmd = cmd.subcommand(Command::new(group).about(help).arg(input_arg()));
            continue;
        }
        let sub = Command::new(verb).about(help).arg(input_arg());
        match groups.iter_mut().find(|(g, _)| *g == group) {
            Some((_, c)) => *c = c.clone().subcommand(sub),
            None => {
                let about = GROUP_HELP.iter().find(|(g, _)| *g == group).map_or("", |(_, h)| h);
                groups.push((group, Command::new(group).about(about).subcommand_required(true).subcommand(sub)))
            }
        }
    }
    for (_, c) in groups {
        cmd = cmd.subcommand(c);
    }
    cmd.subcommand(
        Command::new("verify")
            .about("run verification suites and print their reports")
            .arg(Arg::new("suite").long("suite").required(true).help(format!("one of {} or all", SUITES.join(", "))))
            .arg(Arg::new("trial").long("trial").value_parser(value_parser!(usize)).help("rerun a single trial by index")),
    )
    .subcommand(
        Command::new("gen")
            .about("emit random instances as a JSON array")
            .arg(Arg::new("kind").required(true).help(format!("one of {}", KINDS.join(", ")))),
    )
}

fn config(m: &ArgMatches) -> Result<GeneratorConfig, CliError> {
    let mut cfg = GeneratorConfig::default();
    if let Some(&s) = m.get_one::<u64>("seed") {
        cfg.seed = s;
    }
    if let Some(&t) = m.get_one::<usize>("trials") {
        if t == 0 {
            return Err(CliError::Usage("--trials must be positive".into()));
        }
        cfg.trials = t;
    }
    if let Some(b) = m.get_one::<String>("bounds") {
        cfg.bounds = Bounds::parse(b)?;
    }
    Ok(cfg)
}

fn read_input(m: &ArgMatches) -> Result<Value, CliError> {
    let text = match m.get_one::<String>("input") {
        Some(path) => std::fs::read_to_string(path)?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    serde_json::from_str(&text).map_err(|e| CliError::Invalid(format!("malformed JSON: {e}")))
}

/// Runs the parsed command; the flag says whether verification passed.
fn dispatch(m: &ArgMatches) -> Result<(Value, bool), CliError> {
    let (name, sub) = m.subcommand().expect("a subcommand is required");
    let cfg = config(m)?;
    match name {
        "verify" => {
            let which = sub.get_one::<String>("suite").expect("required");
            let only = sub.get_one::<usize>("trial").copied();
            if which == "all" && only.is_some() {
                return Err(CliError::Usage("--trial needs a single suite".into()));
            }
            if which == "all" {
                let reports = SUITES.iter().map(|s| run_suite(s, &cfg)).collect::<Result<Vec<_>, _>>()?;
                let ok = reports.iter().all(|r| r.passed());
                Ok((json!(reports), ok))
            } else {
                let r = run_trials(which, &cfg, only)?;
                let ok = r.passed();
                Ok((json!(r), ok))
            }
        }
        "gen" => {
            let kind = sub.get_one::<String>("kind").expect("required");
            Ok((Value::Array(generate(kind, &cfg, cfg.trials)?), true))
        }
        _ => {
            let (command, leaf) = match sub.subcommand() {
                Some((verb, leaf)) => (format!("{name} {verb}"), leaf),
                None => (name.to_string(), sub),
            };
            let input = read_input(leaf)?;
            Ok((ops::run(&command, &input)?, true))
        }
    }
}

fn report(err: &CliError, json_errors: bool) {
    if json_errors {
        eprintln!("{}", err.to_json());
    } else {
        eprintln!("tiltkit: {err}");
    }
}

fn emit(out: &Value, path: Option<&PathBuf>) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(out).expect("values serialize");
    text.push('\n');
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let json_errors = std::env::args().any(|a| a == "--json-errors");
    let m = match cli().try_get_matches() {
        Ok(m) => m,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand) {
                let _ = e.print();
                return ExitCode::from(if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand { 2 } else { 0 });
            }
            if !json_errors {
                let _ = e.print();
                return ExitCode::from(2);
            }
            report(&CliError::Usage(e.kind().to_string()), true);
            return ExitCode::from(2);
        }
    };
    let result = dispatch(&m).and_then(|(out, ok)| emit(&out, m.get_one::<PathBuf>("out")).map(|_| ok));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            report(&e, json_errors);
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
