//! Subcommands that print exact tables.

use std::fmt::Write as _;

use gamma0_hecke::congruence::parse_word;
use gamma0_hecke::farey::{farey_sequence, lns, m_of_q};
use gamma0_hecke::hecke::{gen_sm, gen_xm, h_tilde, is_in_xm, sigma, vector_hecke};
use gamma0_hecke::{CosetTable, Error, ExtendedRational, IntMatrix2, Result};
use serde::Serialize;

use crate::output::{formal_sum_tsv, lines, matrices_tsv, matrix_cells, Report};

pub fn farey(n: u32) -> Result<Report> {
    let seq = farey_sequence(n);
    Ok(Report::table(&seq, lines(&seq)))
}

pub fn left_neighbors(q: ExtendedRational) -> Result<Report> {
    let seq = lns(q)?;
    Ok(Report::table(&seq, lines(seq.entries())))
}

pub fn mq(q: ExtendedRational) -> Result<Report> {
    let x = m_of_q(q)?;
    Ok(Report::table(&x, formal_sum_tsv(&x)))
}

#[derive(Serialize)]
struct Cosets<'a> {
    mu: usize,
    reps: &'a [IntMatrix2],
}

pub fn cosets(n: u32) -> Result<Report> {
    let t = CosetTable::new(n)?;
    let mut tsv = String::from("index\ta\tb\tc\td\n");
    for (j, rep) in t.reps().iter().enumerate() {
        writeln!(tsv, "{j}\t{}", matrix_cells(rep)).unwrap();
    }
    Ok(Report::table(
        &Cosets {
            mu: t.mu(),
            reps: t.reps(),
        },
        tsv,
    ))
}

pub fn rho(n: u32, word: &str) -> Result<Report> {
    let t = CosetTable::new(n)?;
    let p = t.rho(&parse_word(word)?)?;
    let tsv = p.image().iter().map(ToString::to_string).collect::<Vec<_>>().join("\t") + "\n";
    Ok(Report::table(&p, tsv))
}

#[derive(Serialize)]
struct SigmaPair {
    a: IntMatrix2,
    image: IntMatrix2,
}

/// `A ↦ σ_g(A)` on `X_m`, or on the single matrix `A` when given.
pub fn sigma_map(m: i64, word: &str, a: Option<IntMatrix2>) -> Result<Report> {
    let g = parse_word(word)?;
    let domain = match a {
        Some(a) if a.det() != m || !is_in_xm(&a) => return Err(Error::NotInXm(a.to_string(), m)),
        Some(a) => vec![a],
        None => gen_xm(m)?,
    };
    let pairs = domain
        .into_iter()
        .map(|a| {
            Ok(SigmaPair {
                a,
                image: sigma(&g, &a)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut tsv = String::from("a\tb\tc\td\timage_a\timage_b\timage_c\timage_d\n");
    for p in &pairs {
        writeln!(tsv, "{}\t{}", matrix_cells(&p.a), matrix_cells(&p.image)).unwrap();
    }
    Ok(Report::table(&pairs, tsv))
}

pub fn hecke_scalar(m: i64) -> Result<Report> {
    let x = h_tilde(m)?;
    Ok(Report::table(&x, formal_sum_tsv(&x)))
}

pub fn hecke_vector(n: u32, m: i64) -> Result<Report> {
    let op = vector_hecke(&CosetTable::new(n)?, m)?;
    let mut tsv = String::from("row\tcol\tcoeff\ta\tb\tc\td\n");
    for (j, i, c, x) in op.all_terms() {
        writeln!(tsv, "{j}\t{i}\t{c}\t{}", matrix_cells(&x)).unwrap();
    }
    Ok(Report::table(&op, tsv))
}

pub fn sm(m: i64) -> Result<Report> {
    let list = gen_sm(m)?;
    Ok(Report::table(&list, matrices_tsv(&list)))
}
