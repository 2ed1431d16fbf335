//! Command implementations. Each one fills a [`Report`].

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use conlat_core::algebra::DEFAULT_CONGRUENCE_BUDGET;
use conlat_core::catalog::{identify, list_entries, CatalogId};
use conlat_core::document::AlgebraDocument;
use conlat_core::freese::classify::{
    classify_d2, classify_n5, generate_d1_square, generate_l14, Classification, ClassifyOptions,
};
use conlat_core::freese::lemmas::verify_lemma_suite;
use conlat_core::freese::patterns::{BoundsMode, D1Labels, D2Labels, N5Labels};
use conlat_core::freese::search::{search_d1_in, search_d2_in, search_n5_in, SearchOptions};
use conlat_core::lattice::{
    find_embedding, lattice_from_partitions, to_dot, FiniteLattice, DEFAULT_LATTICE_BUDGET,
};
use conlat_core::partition::Partition;

use crate::bundled::EXAMPLES;
use crate::report::{file_stem, sha256_hex, superscript, Artifact, Report};
use crate::{CatalogAction, Cli, CliError, Command, CommonArgs, PatternKind, TripleArgs};

pub(crate) fn dispatch(cli: &Cli, command: String) -> Result<Report, CliError> {
    let common = &cli.common;
    let mut report = Report::new(command);
    match &cli.command {
        Command::ClassifyN5 { labels, l14 } => cmd_classify_n5(&mut report, common, labels, *l14)?,
        Command::CheckD1 { labels } => cmd_check_d1(&mut report, common, labels)?,
        Command::ClassifyD2 { labels, mu, delta } => {
            cmd_classify_d2(&mut report, common, labels, mu.as_deref(), delta.as_deref())?
        }
        Command::LatticeAudit { target, partitions } => cmd_lattice_audit(&mut report, target, partitions)?,
        Command::Catalog { action } => match action {
            CatalogAction::List { max_index } => cmd_catalog_list(&mut report, *max_index)?,
            CatalogAction::Show { name } => cmd_catalog_show(&mut report, name)?,
        },
        Command::Examples { lemmas } => cmd_examples(&mut report, common, *lemmas)?,
        Command::Search {
            file,
            pattern,
            any_bottom,
            classify,
        } => cmd_search(&mut report, common, file, *pattern, *any_bottom, *classify)?,
    }
    if common.dot.is_none() {
        report.artifacts.clear();
    }
    Ok(report)
}

/// Reads and parses a document, returning it with the digest of its bytes.
pub fn load(path: &Path) -> Result<(AlgebraDocument, String), CliError> {
    let shown = path.display().to_string();
    let bytes = fs::read(path).map_err(|source| CliError::Read {
        path: shown.clone(),
        source,
    })?;
    let text = std::str::from_utf8(&bytes).map_err(|e| CliError::Read {
        path: shown.clone(),
        source: std::io::Error::new(std::io::ErrorKind::InvalidData, e),
    })?;
    let doc = AlgebraDocument::parse(text).map_err(|source| CliError::Document { path: shown, source })?;
    Ok((doc, sha256_hex(&bytes)))
}

fn named(doc: &AlgebraDocument, path: &Path, name: &str) -> Result<Partition, CliError> {
    doc.partition(name).cloned().map_err(|source| CliError::Document {
        path: path.display().to_string(),
        source,
    })
}

pub fn classify_options(common: &CommonArgs) -> ClassifyOptions {
    ClassifyOptions {
        mode: if common.relaxed_bounds {
            BoundsMode::Relaxed
        } else {
            BoundsMode::Strict
        },
        chain_budget: common.budget,
        ..ClassifyOptions::default()
    }
}

fn mode_name(opts: &ClassifyOptions) -> &'static str {
    match opts.mode {
        BoundsMode::Strict => "strict bounds",
        BoundsMode::Relaxed => "relaxed bounds",
    }
}

/// Symbols used when printing a chain: seed, bridge, outer.
struct ChainRoles {
    seed: &'static str,
    bridge: &'static str,
    outer: &'static str,
}

const N5_ROLES: ChainRoles = ChainRoles {
    seed: "γ",
    bridge: "β",
    outer: "α",
};

const D2_ROLES: ChainRoles = ChainRoles {
    seed: "δ",
    bridge: "μ",
    outer: "γ",
};

/// `γ⁰ < γ¹ < γ² = α` style summary of a stabilized chain.
pub fn chain_summary(c: &Classification, seed: &str, outer: &str) -> String {
    let Some(chain) = &c.chain else {
        return String::new();
    };
    let terms: Vec<String> = (0..=chain.stabilized_at)
        .map(|i| format!("{seed}{}", superscript(i)))
        .collect();
    let rel = if chain.reached_outer { "=" } else { "<" };
    format!("{} {rel} {outer}", terms.join(" < "))
}

fn write_classification(
    report: &mut Report,
    doc: &AlgebraDocument,
    c: &Classification,
    roles: Option<&ChainRoles>,
    doubled: &str,
    prefix: &str,
) -> Result<(), CliError> {
    report.field("subpower", format!("A({doubled}): {} elements", c.subpower_size));
    if let (Some(chain), Some(r)) = (&c.chain, roles) {
        report.field(
            "chain",
            format!("seed {}, bridge {}, outer {}", r.seed, r.bridge, r.outer),
        );
        for (i, p) in chain.chain.iter().enumerate() {
            report.field(&format!("  {}{}", r.seed, superscript(i)), doc.show(p));
        }
        report.field("  summary", chain_summary(c, r.seed, r.outer));
    }
    let entry = c.catalog.build()?;
    report.field("generators", c.generator_names.join(", "));
    report.field("generated", format!("{} elements", c.generated.lattice.len()));
    report.field("predicted", format!("{} ({} elements)", c.catalog, entry.lattice.len()));
    report.field(
        "witness",
        match &c.witness {
            Some(_) => format!("isomorphism onto {} verified", c.catalog),
            None => "none".to_string(),
        },
    );
    report.field(
        "observed",
        match c.observed {
            Some(id) => id.to_string(),
            None => format!("not in catalog ({} elements)", c.generated.lattice.len()),
        },
    );
    if c.witness.is_some() {
        report.field("elements", c.element_names.join(", "));
    }
    report.field("class", if c.agrees() { c.name() } else { "undetermined".to_string() });
    if !c.agrees() {
        report.mismatch();
    }
    report.artifacts.push(Artifact {
        file_name: format!("{prefix}-generated.dot"),
        contents: to_dot(&c.generated.lattice, &format!("{prefix} generated"), Some(&c.element_names)),
    });
    report.artifacts.push(Artifact {
        file_name: format!("{prefix}-{}.dot", file_stem(&c.catalog.to_string())),
        contents: to_dot(&entry.lattice, &c.catalog.to_string(), None),
    });
    Ok(())
}

fn echo_labels(report: &mut Report, doc: &AlgebraDocument, rows: &[(&str, &str, &Partition)]) {
    for (symbol, name, p) in rows {
        report.field(&format!("  {symbol} ({name})"), doc.show(p));
    }
}

fn cmd_classify_n5(report: &mut Report, common: &CommonArgs, a: &TripleArgs, l14: bool) -> Result<(), CliError> {
    let (doc, digest) = load(&a.file)?;
    report.digest = Some(digest);
    let labels = N5Labels {
        alpha: named(&doc, &a.file, &a.alpha)?,
        beta: named(&doc, &a.file, &a.beta)?,
        gamma: named(&doc, &a.file, &a.gamma)?,
    };
    let opts = classify_options(common);
    report.field("pattern", format!("N5, {}", mode_name(&opts)));
    echo_labels(
        report,
        &doc,
        &[
            ("α", &a.alpha, &labels.alpha),
            ("β", &a.beta, &labels.beta),
            ("γ", &a.gamma, &labels.gamma),
        ],
    );
    let c = classify_n5(&doc.algebra, &labels, &opts)?;
    write_classification(report, &doc, &c, Some(&N5_ROLES), "β", "n5")?;
    if l14 {
        report.line("lifted pentagon in Con(A(γ))");
        let c = generate_l14(&doc.algebra, &labels, &opts)?;
        write_classification(report, &doc, &c, None, "γ", "l14")?;
    }
    Ok(())
}

fn cmd_check_d1(report: &mut Report, common: &CommonArgs, a: &TripleArgs) -> Result<(), CliError> {
    let (doc, digest) = load(&a.file)?;
    report.digest = Some(digest);
    let labels = D1Labels {
        alpha: named(&doc, &a.file, &a.alpha)?,
        beta: named(&doc, &a.file, &a.beta)?,
        gamma: named(&doc, &a.file, &a.gamma)?,
    };
    let opts = classify_options(common);
    report.field("pattern", format!("D1, {}", mode_name(&opts)));
    echo_labels(
        report,
        &doc,
        &[
            ("α", &a.alpha, &labels.alpha),
            ("β", &a.beta, &labels.beta),
            ("γ", &a.gamma, &labels.gamma),
        ],
    );
    let c = generate_d1_square(&doc.algebra, &labels, &opts)?;
    write_classification(report, &doc, &c, None, "β", "d1")?;
    let d13 = CatalogId::D13.build()?.lattice;
    let d1 = CatalogId::D1.build()?.lattice;
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    report.field("D13 embeds", yes_no(find_embedding(&d13, &c.generated.lattice).is_some()));
    report.field("D1 embeds", yes_no(find_embedding(&d1, &c.generated.lattice).is_some()));
    Ok(())
}

fn cmd_classify_d2(
    report: &mut Report,
    common: &CommonArgs,
    a: &TripleArgs,
    mu: Option<&str>,
    delta: Option<&str>,
) -> Result<(), CliError> {
    let (doc, digest) = load(&a.file)?;
    report.digest = Some(digest);
    let alpha = named(&doc, &a.file, &a.alpha)?;
    let gamma = named(&doc, &a.file, &a.gamma)?;
    let labels = match (mu, delta) {
        (Some(m), Some(d)) => D2Labels {
            alpha,
            beta: doc.partitions.get(&a.beta).cloned(),
            gamma,
            mu: named(&doc, &a.file, m)?,
            delta: named(&doc, &a.file, d)?,
        },
        _ => D2Labels::from_coatoms(alpha, named(&doc, &a.file, &a.beta)?, gamma),
    };
    let opts = classify_options(common);
    report.field("pattern", format!("D2, {}", mode_name(&opts)));
    let mu_name = mu.unwrap_or("α ∧ β");
    let delta_name = delta.unwrap_or("β ∧ γ");
    let mut rows = vec![("α", a.alpha.as_str(), &labels.alpha)];
    if let Some(b) = &labels.beta {
        rows.push(("β", a.beta.as_str(), b));
    }
    rows.extend([
        ("γ", a.gamma.as_str(), &labels.gamma),
        ("μ", mu_name, &labels.mu),
        ("δ", delta_name, &labels.delta),
    ]);
    echo_labels(report, &doc, &rows);
    let c = classify_d2(&doc.algebra, &labels, &opts)?;
    write_classification(report, &doc, &c, Some(&D2_ROLES), "μ", "d2")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Predicate rows for one lattice; `labels` names its elements.
pub fn audit_lattice(report: &mut Report, l: &FiniteLattice, labels: &[String]) -> Result<(), CliError> {
    report.field("elements", l.len());
    report.field("modular", yes_no(l.is_modular()));
    report.field("distributive", yes_no(l.is_distributive()));
    report.field("meet-semidistributive", yes_no(l.is_meet_semidistributive()));
    report.field("join-semidistributive", yes_no(l.is_join_semidistributive()));
    match l.whitman_failure() {
        None => report.field("whitman", "yes"),
        Some((a, b, c, d)) => report.field(
            "whitman",
            format!(
                "no: {} ∧ {} ≤ {} ∨ {}",
                labels[a], labels[b], labels[c], labels[d]
            ),
        ),
    }
    report.field("projective", yes_no(l.is_projective()));
    for id in [CatalogId::N5, CatalogId::D1, CatalogId::D2] {
        let pattern = id.build()?.lattice;
        let row = match find_embedding(&pattern, l) {
            Some(e) => {
                let image: Vec<String> = (0..pattern.len())
                    .map(|i| format!("{}↦{}", pattern.label(i), labels[e.image(i)]))
                    .collect();
                format!("yes: {}", image.join(", "))
            }
            None => "no".to_string(),
        };
        report.field(&format!("contains {id}"), row);
    }
    report.field(
        "identified as",
        identify(l).map_or("not in catalog".to_string(), |id| id.to_string()),
    );
    Ok(())
}

fn cmd_lattice_audit(report: &mut Report, target: &str, partitions: &[String]) -> Result<(), CliError> {
    if let Some(name) = target.strip_prefix("catalog:") {
        let entry = name.parse::<CatalogId>()?.build()?;
        report.field("lattice", format!("catalog {}", entry.id));
        let labels = entry.lattice.labels().to_vec();
        audit_lattice(report, &entry.lattice, &labels)?;
        report.artifacts.push(Artifact {
            file_name: format!("audit-{}.dot", file_stem(&entry.id.to_string())),
            contents: to_dot(&entry.lattice, &entry.id.to_string(), None),
        });
        return Ok(());
    }
    let path = Path::new(target);
    let (doc, digest) = load(path)?;
    report.digest = Some(digest);
    let (names, gens): (Vec<String>, Vec<Partition>) = if !partitions.is_empty() {
        let gens = partitions
            .iter()
            .map(|n| named(&doc, path, n))
            .collect::<Result<_, _>>()?;
        (partitions.to_vec(), gens)
    } else if !doc.partitions.is_empty() {
        doc.partitions.iter().map(|(k, v)| (k.clone(), v.clone())).unzip()
    } else {
        let cons = doc.algebra.all_congruences_with_budget(DEFAULT_CONGRUENCE_BUDGET)?;
        let names = (0..cons.len()).map(|i| format!("c{i}")).collect();
        (names, cons)
    };
    report.field(
        "lattice",
        if doc.partitions.is_empty() && partitions.is_empty() {
            format!("Con(A), {} congruences", gens.len())
        } else {
            format!("generated by {}", names.join(", "))
        },
    );
    let g = lattice_from_partitions(&gens, DEFAULT_LATTICE_BUDGET)?;
    let labels: Vec<String> = (0..g.lattice.len()).map(|i| g.term(i, &names)).collect();
    audit_lattice(report, &g.lattice, &labels)?;
    report.artifacts.push(Artifact {
        file_name: "audit.dot".to_string(),
        contents: to_dot(&g.lattice, "audit", Some(&labels)),
    });
    Ok(())
}

fn cmd_catalog_list(report: &mut Report, max_index: usize) -> Result<(), CliError> {
    for id in list_entries(max_index) {
        let entry = id.build()?;
        report.field(&id.to_string(), format!("{} elements", entry.lattice.len()));
        report.artifacts.push(Artifact {
            file_name: format!("{}.dot", file_stem(&id.to_string())),
            contents: to_dot(&entry.lattice, &id.to_string(), None),
        });
    }
    Ok(())
}

fn cmd_catalog_show(report: &mut Report, name: &str) -> Result<(), CliError> {
    let entry = name.parse::<CatalogId>()?.build()?;
    let l = &entry.lattice;
    report.field("name", entry.id);
    report.field("elements", l.len());
    report.field("labels", l.labels().join(", "));
    for (a, b) in l.cover_pairs() {
        report.line(format!("  {} ⋖ {}", l.label(a), l.label(b)));
    }
    let mut by_element: BTreeMap<usize, Vec<&str>> = BTreeMap::new();
    for (name, &i) in entry.landmarks() {
        if name != l.label(i) {
            by_element.entry(i).or_default().push(name);
        }
    }
    for (i, aliases) in by_element {
        report.field(&format!("  alias of {}", l.label(i)), aliases.join(", "));
    }
    report.artifacts.push(Artifact {
        file_name: format!("{}.dot", file_stem(&entry.id.to_string())),
        contents: to_dot(l, &entry.id.to_string(), None),
    });
    Ok(())
}

fn cmd_examples(report: &mut Report, common: &CommonArgs, lemmas: bool) -> Result<(), CliError> {
    let all: String = EXAMPLES.iter().map(|e| e.text).collect();
    report.digest = Some(sha256_hex(all.as_bytes()));
    let opts = classify_options(common);
    report.line(format!(
        "{:<10}{:<10}{:<10}{:<22}{:<11}status",
        "example", "expected", "computed", "chain", "generated"
    ));
    let mut lemma_lines = Vec::new();
    for ex in &EXAMPLES {
        let doc = ex.document();
        let labels = ex.labels(&doc);
        let row = |computed: &str, chain: &str, generated: &str, ok: bool| {
            format!(
                "{:<10}{:<10}{:<10}{:<22}{:<11}{}",
                ex.name.trim_start_matches("ex_n5_"),
                ex.expected.to_string(),
                computed,
                chain,
                generated,
                if ok { "match" } else { "MISMATCH" }
            )
        };
        match classify_n5(&doc.algebra, &labels, &opts) {
            Ok(c) => {
                let chain = c.chain.as_ref().expect("pentagon classification has a chain");
                let mut ok = c.agrees()
                    && c.catalog == ex.expected
                    && c.observed == Some(ex.expected)
                    && chain.stabilized_at == ex.stabilized_at
                    && chain.reached_outer == ex.reaches_alpha;
                // documents may record intermediate chain terms as gamma1, gamma2, ..
                for (name, p) in &doc.partitions {
                    if let Some(i) = name.strip_prefix("gamma").and_then(|s| s.parse::<usize>().ok()) {
                        ok &= chain.get(i) == p;
                    }
                }
                if !ok {
                    report.mismatch();
                }
                report.line(row(
                    &c.name(),
                    &chain_summary(&c, "γ", "α"),
                    &c.generated.lattice.len().to_string(),
                    ok,
                ));
                report.artifacts.push(Artifact {
                    file_name: format!("{}-generated.dot", ex.name),
                    contents: to_dot(&c.generated.lattice, ex.name, Some(&c.element_names)),
                });
            }
            Err(e) => {
                report.mismatch();
                report.line(row("error", &e.to_string(), "-", false));
            }
        }
        if lemmas {
            match verify_lemma_suite(&doc.algebra, &labels) {
                Ok(r) => {
                    for check in &r.checks {
                        if check.failed() {
                            report.mismatch();
                        }
                        lemma_lines.push(format!("  {:<10}{check}", ex.name.trim_start_matches("ex_n5_")));
                    }
                }
                Err(e) => {
                    report.mismatch();
                    lemma_lines.push(format!("  {:<10}error: {e}", ex.name));
                }
            }
        }
    }
    if lemmas {
        report.line("lemma checks");
        report.lines.extend(lemma_lines);
    }
    Ok(())
}

fn cmd_search(
    report: &mut Report,
    common: &CommonArgs,
    file: &Path,
    pattern: PatternKind,
    any_bottom: bool,
    classify: bool,
) -> Result<(), CliError> {
    let (doc, digest) = load(file)?;
    report.digest = Some(digest);
    let alg = &doc.algebra;
    let search = SearchOptions {
        zero_bottom: !any_bottom,
        threads: common.threads,
        ..SearchOptions::default()
    };
    let cons = alg.all_congruences_with_budget(search.congruence_budget)?;
    report.field("congruences", cons.len());
    let opts = classify_options(common);
    let mut tally: BTreeMap<String, usize> = BTreeMap::new();
    let mut rows = Vec::new();
    let mut record = |triple: [&Partition; 3], outcome: Option<Result<Classification, _>>| {
        let mut line = format!(
            "α={} β={} γ={}",
            doc.show(triple[0]),
            doc.show(triple[1]),
            doc.show(triple[2])
        );
        let class = match outcome {
            None => None,
            Some(Ok(c)) if c.agrees() => Some(c.name()),
            Some(Ok(c)) => Some(format!("undetermined ({} elements)", c.generated.lattice.len())),
            Some(Err(e)) => Some(format!("error: {e}")),
        };
        if let Some(class) = class {
            line.push_str(&format!("  {class}"));
            *tally.entry(class).or_default() += 1;
        }
        rows.push(line);
    };
    let count = match pattern {
        PatternKind::N5 => {
            let found = search_n5_in(&cons, &search)?;
            for l in &found {
                let out = classify.then(|| classify_n5(alg, l, &opts));
                record([&l.alpha, &l.beta, &l.gamma], out);
            }
            found.len()
        }
        PatternKind::D1 => {
            let found = search_d1_in(&cons, &search)?;
            for l in &found {
                let out = classify.then(|| generate_d1_square(alg, l, &opts));
                record([&l.alpha, &l.beta, &l.gamma], out);
            }
            found.len()
        }
        PatternKind::D2 => {
            let found = search_d2_in(&cons, &search)?;
            for l in &found {
                let out = classify.then(|| classify_d2(alg, l, &opts));
                let beta = l.beta.as_ref().expect("search fills β");
                record([&l.alpha, beta, &l.gamma], out);
            }
            found.len()
        }
    };
    let name = match pattern {
        PatternKind::N5 => "N5",
        PatternKind::D1 => "D1",
        PatternKind::D2 => "D2",
    };
    report.field(&format!("labelled {name}"), count);
    report.lines.extend(rows);
    for (class, n) in &tally {
        if class.starts_with("undetermined") || class.starts_with("error") {
            report.mismatch();
        }
        report.field(&format!("  {class}"), n);
    }
    Ok(())
}
