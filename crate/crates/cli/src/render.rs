use crate::args::Format;
use crate::envelope::{ResultEnvelope, Sci};

pub fn render(env: &ResultEnvelope, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(env).expect("envelope serialises");
            s.push('\n');
            s
        }
        Format::Csv => csv(env),
        Format::Table => table(env),
    }
}

fn header(name: &str, unit: &str) -> String {
    if unit == "1" {
        name.to_string()
    } else {
        format!("{name} [{unit}]")
    }
}

fn csv(env: &ResultEnvelope) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut put = |record: Vec<String>| w.write_record(&record).expect("in-memory write");
    if let Some(t) = &env.table {
        put(t.columns.iter().map(|c| header(&c.name, &c.unit)).collect());
        for row in &t.rows {
            put(row.iter().map(|v| v.text(12)).collect());
        }
    } else {
        put(["name", "value", "unit", "dimension", "source", "mode"]
            .map(String::from)
            .to_vec());
        for o in &env.outputs {
            put(vec![
                o.name.clone(),
                o.value.text(12),
                o.unit.clone(),
                o.dimension.clone(),
                o.source.clone(),
                o.mode.map(|m| m.to_string()).unwrap_or_default(),
            ]);
        }
        if let Some(m) = &env.matrix {
            for (i, row) in m.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    put(vec![
                        format!("G[{i}][{j}]"),
                        v.text(12),
                        String::new(),
                        String::new(),
                        "bundle metric".into(),
                        String::new(),
                    ]);
                }
            }
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is UTF-8")
}

fn aligned(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|j| {
            rows.iter()
                .filter_map(|r| r.get(j))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s}{}", " ".repeat(w - s.chars().count())))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn table(env: &ResultEnvelope) -> String {
    let mut out = format!("{} ({} units)\n", env.command, env.unit_system);
    if !env.inputs.is_empty() {
        let rows: Vec<Vec<String>> = env
            .inputs
            .iter()
            .map(|i| vec![format!("  {}", i.name), Sci(i.value).text(6), i.unit.clone()])
            .collect();
        out.push_str("inputs\n");
        out.push_str(&aligned(&rows));
    }
    if !env.outputs.is_empty() {
        let rows: Vec<Vec<String>> = env
            .outputs
            .iter()
            .map(|o| {
                vec![
                    format!("  {}", o.name),
                    o.value.text(6),
                    o.unit.clone(),
                    o.mode.map(|m| m.to_string()).unwrap_or_default(),
                    o.source.clone(),
                ]
            })
            .collect();
        out.push_str("outputs\n");
        out.push_str(&aligned(&rows));
    }
    if let Some(m) = &env.matrix {
        out.push_str("bundle metric\n");
        let rows: Vec<Vec<String>> = m
            .iter()
            .map(|r| r.iter().map(|v| format!("  {}", v.text(6))).collect())
            .collect();
        out.push_str(&aligned(&rows));
    }
    if let Some(t) = &env.table {
        let mut rows = vec![t.columns.iter().map(|c| header(&c.name, &c.unit)).collect::<Vec<_>>()];
        rows.extend(t.rows.iter().map(|r| r.iter().map(|v| v.text(6)).collect()));
        out.push_str(&aligned(&rows));
    }
    for (name, value) in &env.flags {
        out.push_str(&format!("{name}: {value}\n"));
    }
    for note in &env.notes {
        out.push_str(&format!("note: {note}\n"));
    }
    out
}
