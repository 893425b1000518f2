//! Text and LaTeX renderings of artifacts. Both are pure functions of the
//! artifact, so exports are byte-for-byte reproducible.

use std::fmt::Write;
use std::sync::OnceLock;

use gaudin_core::manin::TalalaevOutput;
use gaudin_core::Report;
use regex::Regex;
use serde_json::Value;

use crate::commands::Artifact;

/// `0` where a bracket vanishes, `*` where it does not.
pub fn zero_pattern(zero: &[Vec<bool>]) -> String {
    zero.iter()
        .map(|row| row.iter().map(|&z| if z { "0" } else { "*" }).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn talalaev_text(t: &TalalaevOutput) -> String {
    let mut s = String::new();
    for (i, e) in t.qh().iter().enumerate() {
        let _ = writeln!(s, "QH_{i} = {e}");
    }
    for k in 1..=t.max_power() {
        for j in 0..=k {
            let _ = writeln!(s, "QTr^{k}_{j} = {}", t.qtr(k, j));
        }
    }
    s
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Plain-text rendering, as printed by the binary.
pub fn text(a: &Artifact) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "== {} {} on {} (seed {})", a.command, a.target, a.signature, a.seed);
    for o in &a.objects {
        let _ = writeln!(s, "-- {} [{}]", o.name, o.kind);
        for line in o.text.lines() {
            let _ = writeln!(s, "   {line}");
        }
    }
    for r in &a.reports {
        let _ = writeln!(s, "{r}");
    }
    if !a.reports.is_empty() {
        let _ = writeln!(s, "overall: {}", verdict(a.pass));
    }
    s
}

fn re(cell: &'static OnceLock<Regex>, pattern: &str) -> &'static Regex {
    cell.get_or_init(|| Regex::new(pattern).expect("static pattern"))
}

/// Maps a rendered polynomial or rational function to LaTeX math.
pub fn latexify(s: &str) -> String {
    static POWER: OnceLock<Regex> = OnceLock::new();
    static GEN: OnceLock<Regex> = OnceLock::new();
    static FRAC: OnceLock<Regex> = OnceLock::new();
    static SUB: OnceLock<Regex> = OnceLock::new();
    static UNIT: OnceLock<Regex> = OnceLock::new();
    let s = re(&UNIT, r"(^|[ (-])1 \* ").replace_all(s, "$1");
    let s = re(&POWER, r"\^(\d+)").replace_all(&s, "^{$1}");
    let s = re(&GEN, r"([exX])\[(\d+),(\d+)\]@(\d+)").replace_all(&s, "${1}^{($4)}_{$2$3}");
    let s = re(&FRAC, r"\b(\d+)/(\d+)\b").replace_all(&s, r"\tfrac{$1}{$2}");
    let s = re(&SUB, r"_(\d{2,})").replace_all(&s, "_{$1}");
    s.replace(" * ", r"\,").replace('*', r"\,").replace("ad(", r"\mathrm{ad}(")
}

/// Escapes free text for a LaTeX text-mode cell.
pub fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str(r"\textbackslash{}"),
            '{' | '}' | '_' | '&' | '%' | '$' | '#' => {
                out.push('\\');
                out.push(c);
            }
            '^' => out.push_str(r"\^{}"),
            '~' => out.push_str(r"\~{}"),
            _ => out.push(c),
        }
    }
    out
}

fn pmatrix(rows: &[Vec<String>]) -> String {
    let body: Vec<String> = rows.iter().map(|r| r.join(" & ")).collect();
    format!("\\begin{{pmatrix}}\n{}\n\\end{{pmatrix}}", body.join(" \\\\\n"))
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().map(|xs| xs.iter().map(|x| x.as_str().unwrap_or_default().to_string()).collect()).unwrap_or_default()
}

fn square(entries: &[String]) -> Vec<Vec<String>> {
    let n = (entries.len() as f64).sqrt().round() as usize;
    entries.chunks(n.max(1)).map(|c| c.iter().map(|e| latexify(e)).collect()).collect()
}

fn object_latex(kind: &str, name: &str, text: &str, data: &Value) -> String {
    let title = format!("\\paragraph{{{}}}\n", escape(name));
    let math = match kind {
        "lax_matrix" => pmatrix(&square(&strings(&data["entries"]))),
        "operator" => {
            let rows: Vec<Vec<String>> =
                data["blocks"].as_array().into_iter().flatten().map(|r| strings(r).iter().map(|b| latexify(b)).collect()).collect();
            pmatrix(&rows)
        }
        "commutation_matrix" => {
            let labels = strings(&data["labels"]);
            let rows: Vec<Vec<String>> = data["zero"]
                .as_array()
                .into_iter()
                .flatten()
                .map(|r| r.as_array().into_iter().flatten().map(|z| if z.as_bool() == Some(true) { "0" } else { "\\ast" }.to_string()).collect())
                .collect();
            let listing = labels.iter().enumerate().map(|(i, l)| format!("{}. {}", i + 1, escape(l))).collect::<Vec<_>>().join("; ");
            return format!("{title}Rows and columns: {listing}.\n\\[\n{}\n\\]\n", pmatrix(&rows));
        }
        "talalaev" => {
            let mut lines: Vec<String> =
                strings(&data["qh"]).iter().enumerate().map(|(i, e)| format!("QH_{{{i}}} &= {}", latexify(e))).collect();
            for (k, row) in data["qtr"].as_array().into_iter().flatten().enumerate() {
                for (j, e) in strings(row).iter().enumerate() {
                    lines.push(format!("QTr^{{{}}}_{{{j}}} &= {}", k + 1, latexify(e)));
                }
            }
            return format!("{title}\\begin{{align*}}\n{}\n\\end{{align*}}\n", lines.join(" \\\\\n"));
        }
        _ => latexify(text),
    };
    format!("{title}\\[\n{math}\n\\]\n")
}

fn report_rows(reports: &[Report]) -> String {
    let mut s = String::from("\\begin{tabular}{llrl}\ncheck & result & trials & witness \\\\\n\\hline\n");
    for r in reports {
        let witness = r.witnesses.first().map(|w| escape(&truncate(w, 80))).unwrap_or_default();
        let _ = writeln!(s, "{} & {} & {} & \\texttt{{{}}} \\\\", escape(&r.check), verdict(r.pass), r.trials, witness);
    }
    s.push_str("\\end{tabular}\n");
    s
}

fn truncate(s: &str, limit: usize) -> String {
    if s.chars().count() <= limit {
        s.to_string()
    } else {
        format!("{}...", s.chars().take(limit).collect::<String>())
    }
}

/// One section per artifact.
pub fn latex(a: &Artifact) -> String {
    let mut s = format!("\\section*{{{} {}}}\n{}, seed {}.\n\n", escape(&a.command), escape(&a.target), escape(&a.signature), a.seed);
    for o in &a.objects {
        s.push_str(&object_latex(&o.kind, &o.name, &o.text, &o.data));
        s.push('\n');
    }
    if !a.reports.is_empty() {
        s.push_str(&report_rows(&a.reports));
        let _ = writeln!(s, "\nOverall: {}.", verdict(a.pass));
    }
    s
}

/// Stand-alone document holding every artifact.
pub fn latex_document(artifacts: &[Artifact]) -> String {
    let mut s = String::from(
        "\\documentclass{article}\n\\usepackage[utf8]{inputenc}\n\\usepackage{amsmath}\n\\usepackage{amssymb}\n\\setcounter{MaxMatrixCols}{64}\n\\allowdisplaybreaks\n\\begin{document}\n\n",
    );
    for a in artifacts {
        s.push_str(&latex(a));
        s.push('\n');
    }
    s.push_str("\\end{document}\n");
    s
}
