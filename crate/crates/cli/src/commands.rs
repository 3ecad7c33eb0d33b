use hyperlat::json::{vector_to_json, JsonInt};
use hyperlat::{
    chamber_walk, charpoly, order_mod, roots_with_pairing, salem_degree, transfer_salem, verify_certificate,
    TransferOptions,
};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::json;
use tracing::info;

use crate::error::{CliError, ExitStatus};
use crate::io::{load_embedding, load_isometry, load_lattice, read_input, vector_arg, write_atomic};
use crate::{fixtures, Cli, Command};

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.output {
        Some(path) => {
            write_atomic(path, text)?;
            info!(path = %path.display(), "wrote result");
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn parse_int(text: &str, what: &str) -> Result<BigInt, CliError> {
    text.trim()
        .parse()
        .map_err(|_| hyperlat::Error::Invalid(format!("{what} must be an integer, got {text:?}")).into())
}

pub fn run(cli: &Cli) -> Result<ExitStatus, CliError> {
    match &cli.command {
        Command::Signature { lattice } => {
            let l = load_lattice(lattice)?;
            let sig = l.signature();
            emit(
                cli,
                &pretty(&json!({
                    "lattice": l.id(),
                    "rank": l.rank(),
                    "signature": [sig.positive, sig.negative],
                    "determinant": JsonInt(l.determinant()),
                    "hyperbolic": l.is_hyperbolic(),
                    "even": l.is_even(),
                })),
            )?;
        }
        Command::SalemDegree { lattice, isometry } => {
            let l = load_lattice(lattice)?;
            let f = load_isometry(isometry, &l)?;
            info!(charpoly = %charpoly(f.matrix())?, "characteristic polynomial");
            let (degree, report) = salem_degree(&f)?;
            info!(degree, "salem degree");
            emit(cli, &pretty(&report.to_json()))?;
        }
        Command::Transfer { lattice, isometry, embedding, ample, base } => {
            let l = load_lattice(lattice)?;
            let f = load_isometry(isometry, &l)?;
            let e = load_embedding(embedding, &l)?;
            let options = TransferOptions {
                ample: ample.as_deref().map(|a| vector_arg(&l, a)).transpose()?,
                base: base.as_deref().map(|b| vector_arg(e.sublattice(), b)).transpose()?,
                no_chamber: cli.no_chamber,
                order_cap: cli.cap_order,
                walk_cap: cli.cap_walk,
            };
            info!(index = %e.index(), "transfer");
            let cert = transfer_salem(&f, &e, &options)?;
            info!(degree = cert.input_degree, m = cert.m, order = cert.order_mod, hash = %cert.content_hash, "certificate");
            emit(cli, &cert.to_canonical_json())?;
        }
        Command::Verify { certificate } => {
            let text = read_input(certificate)?;
            let valid = verify_certificate(&text)?;
            info!(valid, "verify");
            emit(cli, &pretty(&json!({ "valid": valid })))?;
            if !valid {
                return Ok(ExitStatus::Assertion);
            }
        }
        Command::Roots { lattice, vector, pairing } => {
            let l = load_lattice(lattice)?;
            let v = vector_arg(&l, vector)?;
            let c = parse_int(pairing, "pairing")?;
            let roots = roots_with_pairing(&l, &v, &c)?;
            info!(count = roots.len(), "roots");
            let coords: Vec<_> = roots.iter().map(|r| vector_to_json(r.coords())).collect();
            emit(
                cli,
                &pretty(&json!({
                    "lattice": l.id(),
                    "vector": v.to_json(),
                    "pairing": JsonInt(c),
                    "roots": coords,
                })),
            )?;
        }
        Command::Walk { lattice, from, to } => {
            let l = load_lattice(lattice)?;
            let v = vector_arg(&l, from)?;
            let w = vector_arg(&l, to)?;
            let walk = chamber_walk(&l, &v, &w, cli.cap_walk)?;
            info!(length = walk.word.len(), "walk");
            emit(cli, &pretty(&json!({ "word": walk.word.to_json(), "end": walk.end.to_json() })))?;
        }
        Command::OrderMod { lattice, isometry, modulus } => {
            let l = load_lattice(lattice)?;
            let f = load_isometry(isometry, &l)?;
            let n = parse_int(modulus, "modulus")?;
            let order = order_mod(f.matrix(), &n, cli.cap_order)?;
            emit(cli, &pretty(&json!({ "lattice": l.id(), "modulus": JsonInt(n), "order": order })))?;
        }
        Command::Fixtures { name: None } => {
            let names = fixtures::names().map_err(|source| CliError::Io {
                path: fixtures::override_dir().unwrap_or_default(),
                source,
            })?;
            emit(cli, &pretty(&names))?;
        }
        Command::Fixtures { name: Some(name) } => {
            let name = name.strip_prefix('@').unwrap_or(name);
            emit(cli, &read_input(&format!("@{name}"))?)?;
        }
    }
    Ok(ExitStatus::Ok)
}
