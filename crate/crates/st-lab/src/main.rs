//! Command-line front end: enumerate triangulations of cyclic polytopes,
//! build the two higher Stasheff-Tamari orders, compare them, test the
//! lattice property, compute Boolean embeddings and green sequences, and
//! reproduce the order-equivalence and lattice tables.
//!
//! Exit codes: 0 success, 1 usage error, 2 resource cap exceeded.

use clap::{Parser, Subcommand, ValueEnum};
use st_core::algebra;
use st_core::error::Error;
use st_core::poset::{self, EnumerateOptions, OrderKind, StasheffTamariPoset};
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Duration;

const SCHEMA: &str = "st-lab/1";

#[derive(Parser)]
#[command(
    name = "st-lab",
    version,
    about = "Triangulations of cyclic polytopes and the higher Stasheff-Tamari orders",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Abort enumeration beyond this many triangulations.
    #[arg(long, global = true, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    max_elements: u64,

    /// Abort enumeration after this many seconds.
    #[arg(long, global = true, default_value_t = 600.0)]
    max_seconds: f64,

    /// Worker threads (default: all cores). Output does not depend on this.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FrameArg {
    Tilting,
    Cluster,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate all triangulations of C(m, delta).
    Enumerate {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        delta: u32,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Export the cover digraph of the first order.
    Hasse {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        delta: u32,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
    /// Decide whether the two orders coincide on S(m, delta).
    CompareOrders {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        delta: u32,
    },
    /// Decide whether the chosen order on S(m, delta) is a lattice.
    CheckLattice {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        delta: u32,
        /// 1 for the flip order, 2 for the submersion order.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2), default_value_t = 1)]
        order: u8,
    },
    /// Boolean-lattice embedding of the second order.
    Embed {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        delta: u32,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Maximal green sequences (one representative per equivalence class).
    Green {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[arg(long, value_enum, default_value_t = FrameArg::Cluster)]
        frame: FrameArg,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Reproduce the order-equivalence and lattice tables for C(c+delta, delta).
    Tables {
        /// Largest column to attempt in each row.
        #[arg(long, default_value_t = 8)]
        max_delta: u32,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints help/version through this path too.
            let _ = e.print();
            std::process::exit(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("st-lab: cannot configure {threads} threads: {e}");
            std::process::exit(1);
        }
    }
    if cli.max_seconds.is_nan() || cli.max_seconds <= 0.0 {
        eprintln!("st-lab: --max-seconds must be positive");
        std::process::exit(1);
    }
    let opts = EnumerateOptions {
        max_elements: cli.max_elements as usize,
        max_duration: Some(Duration::from_secs_f64(cli.max_seconds)),
    };
    let (text, code) = match run(&cli.command, opts) {
        Ok(pair) => pair,
        Err(Error::ResourceCap { visited, cap }) => (
            format!("resource cap exceeded after {visited} elements ({cap})\n"),
            2,
        ),
        Err(e) => {
            eprintln!("st-lab: {e}");
            std::process::exit(1);
        }
    };
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("st-lab: cannot write {}: {e}", path.display());
                std::process::exit(1);
            }
        }
        None => {
            use std::io::Write;
            // Tolerate a closed pipe (e.g. piping into `head`).
            let _ = std::io::stdout().write_all(text.as_bytes());
            let _ = std::io::stdout().flush();
        }
    }
    std::process::exit(code);
}

fn run(command: &Command, opts: EnumerateOptions) -> Result<(String, i32), Error> {
    match command {
        Command::Enumerate { m, delta, format } => cmd_enumerate(*m, *delta, *format, opts),
        Command::Hasse { m, delta, format } => cmd_hasse(*m, *delta, *format, opts),
        Command::CompareOrders { m, delta } => cmd_compare_orders(*m, *delta, opts),
        Command::CheckLattice { m, delta, order } => cmd_check_lattice(*m, *delta, *order, opts),
        Command::Embed { m, delta, format } => cmd_embed(*m, *delta, *format, opts),
        Command::Green {
            n,
            d,
            frame,
            format,
        } => cmd_green(*n, *d, *frame, *format, opts),
        Command::Tables { max_delta } => cmd_tables(*max_delta, opts),
    }
}

fn cmd_enumerate(
    m: u32,
    delta: u32,
    format: Format,
    opts: EnumerateOptions,
) -> Result<(String, i32), Error> {
    let p = poset::enumerate(m, delta, opts)?;
    let mut out = String::new();
    match format {
        Format::Json => {
            let mut v = p.to_json();
            v["schema"] = SCHEMA.into();
            writeln!(out, "{}", serde_json::to_string_pretty(&v).unwrap()).unwrap();
        }
        Format::Dot => {
            out.push_str(&p.to_dot());
        }
        Format::Table => {
            writeln!(out, "S({m},{delta}): {} triangulations", p.len()).unwrap();
            for (i, t) in p.elements().iter().enumerate() {
                writeln!(out, "{i:6}  {}", t.canonical_label()).unwrap();
            }
        }
    }
    Ok((out, 0))
}

fn cmd_hasse(
    m: u32,
    delta: u32,
    format: Format,
    opts: EnumerateOptions,
) -> Result<(String, i32), Error> {
    let p = poset::enumerate(m, delta, opts)?;
    let mut out = String::new();
    match format {
        Format::Json => {
            let mut v = p.to_json();
            v["schema"] = SCHEMA.into();
            writeln!(out, "{}", serde_json::to_string_pretty(&v).unwrap()).unwrap();
        }
        _ => out.push_str(&p.to_dot()),
    }
    Ok((out, 0))
}

fn cmd_compare_orders(m: u32, delta: u32, opts: EnumerateOptions) -> Result<(String, i32), Error> {
    let p = poset::enumerate(m, delta, opts)?;
    let mut out = String::new();
    match p.orders_diff_witness() {
        None => writeln!(out, "equal").unwrap(),
        Some((i, j)) => {
            writeln!(out, "unequal").unwrap();
            writeln!(
                out,
                "witness: elements {i} ({}) and {j} ({}): order1 {}, order2 {}",
                p.element(i).canonical_label(),
                p.element(j).canonical_label(),
                p.leq(OrderKind::Order1, i, j),
                p.leq(OrderKind::Order2, i, j),
            )
            .unwrap();
        }
    }
    Ok((out, 0))
}

fn cmd_check_lattice(
    m: u32,
    delta: u32,
    order: u8,
    opts: EnumerateOptions,
) -> Result<(String, i32), Error> {
    let p = poset::enumerate(m, delta, opts)?;
    let which = if order == 1 {
        OrderKind::Order1
    } else {
        OrderKind::Order2
    };
    let check = p.is_lattice(which);
    let mut out = String::new();
    if check.is_lattice {
        writeln!(out, "lattice").unwrap();
    } else {
        writeln!(out, "not a lattice").unwrap();
        if let Some((i, j)) = check.witness {
            writeln!(
                out,
                "witness: elements {i} ({}) and {j} ({}) have no join",
                p.element(i).canonical_label(),
                p.element(j).canonical_label(),
            )
            .unwrap();
        }
    }
    Ok((out, 0))
}

fn embedding_image(p: &StasheffTamariPoset, i: usize) -> Vec<st_core::VertexTuple> {
    match p.element(i) {
        poset::Triangulation::Even(t) => t.boolean_embedding(),
        poset::Triangulation::Odd(t) => poset::boolean_embedding_odd(t),
    }
}

fn cmd_embed(
    m: u32,
    delta: u32,
    format: Format,
    opts: EnumerateOptions,
) -> Result<(String, i32), Error> {
    let p = poset::enumerate(m, delta, opts)?;
    let odd = delta % 2 == 1;
    let d = if odd { (delta - 1) / 2 } else { delta / 2 };
    let ground = if odd {
        st_core::tuple::internal_tuples_odd(m, d)
    } else {
        st_core::tuple::internal_tuples_odd(m + 1, d)
    };
    let images: Vec<Vec<st_core::VertexTuple>> =
        (0..p.len()).map(|i| embedding_image(&p, i)).collect();
    let mut sorted = images.clone();
    sorted.sort();
    sorted.dedup();
    let injective = sorted.len() == images.len();
    let mut order_compatible = true;
    'outer: for i in 0..p.len() {
        for j in 0..p.len() {
            let included = if odd {
                images[j].iter().all(|t| images[i].contains(t))
            } else {
                images[i].iter().all(|t| images[j].contains(t))
            };
            if p.leq(OrderKind::Order2, i, j) != included {
                order_compatible = false;
                break 'outer;
            }
        }
    }
    let mut out = String::new();
    match format {
        Format::Json => {
            let v = serde_json::json!({
                "schema": SCHEMA,
                "m": m,
                "delta": delta,
                "order_reversed": odd,
                "ground_set": ground.iter().map(|t| t.entries().to_vec()).collect::<Vec<_>>(),
                "images": images
                    .iter()
                    .map(|im| im.iter().map(|t| t.entries().to_vec()).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
                "injective": injective,
                "order_compatible": order_compatible,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).unwrap()).unwrap();
        }
        _ => {
            writeln!(
                out,
                "embedding of S2({m},{delta}) into the Boolean lattice on {} tuples{}",
                ground.len(),
                if odd { " (order reversed)" } else { "" }
            )
            .unwrap();
            for (i, im) in images.iter().enumerate() {
                let label: Vec<String> = im.iter().map(|t| t.to_string()).collect();
                writeln!(out, "{i:6}  {{{}}}", label.join(", ")).unwrap();
            }
            writeln!(out, "injective: {injective}").unwrap();
            writeln!(out, "order compatible: {order_compatible}").unwrap();
        }
    }
    Ok((out, 0))
}

fn cmd_green(
    n: u32,
    d: u32,
    frame: FrameArg,
    format: Format,
    opts: EnumerateOptions,
) -> Result<(String, i32), Error> {
    let classes = algebra::green_sequences(n, d, opts)?;
    let classes: Vec<_> = match frame {
        FrameArg::Cluster => classes,
        FrameArg::Tilting => classes
            .into_iter()
            .map(|(t, c)| (t, c.as_tilting_frame()))
            .collect(),
    };
    let mut out = String::new();
    match format {
        Format::Json => {
            let v = serde_json::json!({
                "schema": SCHEMA,
                "n": n,
                "d": d,
                "classes": classes
                    .iter()
                    .map(|(t, c)| {
                        serde_json::json!({
                            "triangulation": t.to_json(),
                            "mutations": c.mutation_count(),
                            "chain": c.to_json(),
                        })
                    })
                    .collect::<Vec<_>>(),
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).unwrap()).unwrap();
        }
        _ => {
            writeln!(
                out,
                "{} green sequence classes for (n={n}, d={d})",
                classes.len()
            )
            .unwrap();
            for (t, c) in &classes {
                let sigma: Vec<String> = c.sigma().iter().map(|t| t.to_string()).collect();
                writeln!(
                    out,
                    "internal={:<16} mutations={:<3} sigma={{{}}}",
                    t.canonical_label(),
                    c.mutation_count(),
                    sigma.join(", ")
                )
                .unwrap();
            }
        }
    }
    Ok((out, 0))
}

/// One attempted table cell.
enum Cell {
    Done { equal: bool, lattice: bool },
    Capped,
}

fn cmd_tables(max_delta: u32, opts: EnumerateOptions) -> Result<(String, i32), Error> {
    // Rows (c, largest delta attempted). These are the desk-scale instances;
    // larger cells are reported as capped rather than attempted for days.
    let rows: &[(u32, u32)] = &[(4, 8), (5, 6), (6, 4)];
    let columns: Vec<u32> = (4..=max_delta.max(4)).collect();
    let mut capped = false;
    let mut cells: Vec<(u32, Vec<Option<Cell>>)> = Vec::new();
    for &(c, row_max) in rows {
        let mut row = Vec::new();
        for &delta in &columns {
            if delta > row_max {
                row.push(None);
                continue;
            }
            match poset::enumerate(c + delta, delta, opts) {
                Ok(p) => {
                    let equal = p.orders_equal();
                    let lattice = p.is_lattice(OrderKind::Order1).is_lattice;
                    row.push(Some(Cell::Done { equal, lattice }));
                }
                Err(Error::ResourceCap { .. }) => {
                    capped = true;
                    row.push(Some(Cell::Capped));
                }
                Err(e) => return Err(e),
            }
        }
        cells.push((c, row));
    }

    let mut out = String::new();
    let render = |out: &mut String, title: &str, pick: &dyn Fn(&Cell) -> bool| {
        writeln!(out, "{title}").unwrap();
        write!(out, "c\\delta").unwrap();
        for delta in &columns {
            write!(out, " {delta:>5}").unwrap();
        }
        out.push('\n');
        for (c, row) in &cells {
            let mut line = format!("{c:<7}");
            for cell in row {
                let mark = match cell {
                    None => " ",
                    Some(Cell::Capped) => "\u{2014}",
                    Some(cell) => {
                        if pick(cell) {
                            "\u{2713}"
                        } else {
                            "\u{2717}"
                        }
                    }
                };
                line.push_str(&format!(" {mark:>5}"));
            }
            writeln!(out, "{}", line.trim_end()).unwrap();
        }
    };
    render(
        &mut out,
        "Equivalence of the two orders on S(c+delta, delta)",
        &|c| match c {
            Cell::Done { equal, .. } => *equal,
            Cell::Capped => false,
        },
    );
    out.push('\n');
    render(
        &mut out,
        "Lattice property of the first order on S(c+delta, delta)",
        &|c| match c {
            Cell::Done { lattice, .. } => *lattice,
            Cell::Capped => false,
        },
    );
    Ok((out, if capped { 2 } else { 0 }))
}
