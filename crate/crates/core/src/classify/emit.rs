use super::table::ClassificationEntry;
use crate::algebra::{algebras_to_json, StructureConstants};

/// `[x1, x3]=x4, [x3, x2]=-x4`, products in index order.
pub fn products_text(a: &StructureConstants) -> String {
    let mut parts = Vec::new();
    for (i, j, v) in a.nonzero_products() {
        let mut rhs = String::new();
        for (k, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let name = a.basis_name(k);
            let t = c.to_text();
            let term = match t.as_str() {
                "1" => name,
                "-1" => format!("-{name}"),
                _ if t.contains(['+', '/']) || t[1..].contains('-') => format!("({t}){name}"),
                _ => format!("{t}{name}"),
            };
            if rhs.is_empty() {
                rhs = term;
            } else if let Some(neg) = term.strip_prefix('-') {
                rhs = format!("{rhs} - {neg}");
            } else {
                rhs = format!("{rhs} + {term}");
            }
        }
        parts.push(format!("[{}, {}]={rhs}", a.basis_name(i), a.basis_name(j)));
    }
    parts.join(", ")
}

/// The entries as a JSON array of algebra documents.
pub fn table_to_json(entries: &[ClassificationEntry]) -> String {
    let list: Vec<StructureConstants> = entries.iter().map(|e| e.algebra.clone()).collect();
    algebras_to_json(&list)
}

/// One numbered item per line, products comma-separated, constraints last.
pub fn table_to_markdown(title: &str, entries: &[ClassificationEntry]) -> String {
    let mut out = format!("## {title}\n\n");
    for (k, e) in entries.iter().enumerate() {
        let mut line = format!("{}. `{}`: {}", k + 1, e.label(), products_text(&e.algebra));
        let cons: Vec<String> = e
            .algebra
            .constraints()
            .iter()
            .map(|c| {
                let ex: Vec<String> = c.excluded.iter().map(|x| x.to_text()).collect();
                format!("{} ∉ {{{}}}", c.param, ex.join(", "))
            })
            .collect();
        if !cons.is_empty() {
            line.push_str(&format!(" ({})", cons.join("; ")));
        }
        out.push_str(&line);
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_algebras;
    use crate::classify::{dim3_solvable_table, nilpotent_table};

    #[test]
    fn product_text_examples() {
        let t = nilpotent_table(4);
        assert_eq!(products_text(&t[0].algebra), "[x1, x3]=x4, [x3, x2]=x4");
        let f3 = &dim3_solvable_table()[2].algebra;
        assert_eq!(products_text(f3), "[x, y]=y + (-1/4)z, [x, z]=y");
    }

    #[test]
    fn markdown_lists_items() {
        let md = table_to_markdown("dim 4", &nilpotent_table(4));
        assert_eq!(md.lines().filter(|l| l.starts_with(char::is_numeric)).count(), 6);
        assert!(md.contains("5. `B2(c) + C1`: [x1, x2]=x4, [x2, x1]=cx4, [x3, x3]=x4 (c ∉ {1, -1})"));
    }

    #[test]
    fn json_reloads() {
        for n in 4..=6 {
            let t = nilpotent_table(n);
            let json = table_to_json(&t);
            let back = parse_algebras(&json).unwrap();
            assert_eq!(back.len(), t.len());
            for (a, e) in back.iter().zip(&t) {
                assert!(a.same_products(&e.algebra));
                assert_eq!(a.constraints(), e.algebra.constraints());
            }
            assert_eq!(table_to_json(&t), json);
        }
    }
}
