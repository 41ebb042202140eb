use multikat::enumeration::{
    check_lemma_arrow, check_module_arrows, enumerate_based_multifunctors, enumerate_multifunctors,
    EnumerationError, LemmaError,
};
use multikat::gamma::{check_i_fully_faithful, coreflection_check, KTheoryOptions};
use multikat::homotopy::path_object_check;
use multikat::multicat::{build_e, build_terminal, module_data, monoid_data, BasedMulticategory};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

pub struct Row {
    pub input: String,
    pub lemma: &'static str,
    pub status: Status,
    pub detail: String,
}

fn row(input: &str, lemma: &'static str, outcome: Result<Result<String, String>, String>) -> Row {
    let (status, detail) = match outcome {
        Ok(Ok(d)) => (Status::Pass, d),
        Ok(Err(d)) => (Status::Fail, d),
        Err(d) => (Status::Skip, d),
    };
    Row {
        input: input.to_string(),
        lemma,
        status,
        detail,
    }
}

fn budget(e: EnumerationError) -> String {
    e.to_string()
}

/// Runs every lemma check on `m`. Budget exhaustion marks a row as skipped.
pub fn check_all(input: &str, m: &BasedMulticategory, levels: usize, budget_nodes: u64) -> Vec<Row> {
    let cap = m.arity_cap();
    let mut rows = Vec::new();

    rows.push(row(input, "lemma_arrow", match check_lemma_arrow(m, budget_nodes) {
        Ok(w) => Ok(Ok(format!(
            "{}/{} objects, {}/{} arrows",
            w.left_objects, w.right_objects, w.left_arrows, w.right_arrows
        ))),
        Err(LemmaError::Enumeration(e)) => Err(budget(e)),
        Err(LemmaError::NotIsomorphic(e)) => Ok(Err(e)),
    }));

    rows.push(row(input, "monoid_bijection", (|| {
        let functors = enumerate_multifunctors(&build_terminal(cap), m, budget_nodes).map_err(budget)?;
        let monoids: usize = m.objects().map(|a| monoid_data(m, a).len()).sum();
        Ok(if functors.len() == monoids {
            Ok(format!("{monoids} monoids"))
        } else {
            Err(format!("{} multifunctors from *, {monoids} monoids", functors.len()))
        })
    })()));

    rows.push(row(input, "module_bijection", (|| {
        let functors = enumerate_based_multifunctors(&build_e(cap), m, budget_nodes).map_err(budget)?;
        let modules = module_data(m).len();
        Ok(if functors.len() == modules {
            Ok(format!("{modules} modules"))
        } else {
            Err(format!("{} multifunctors from E, {modules} modules", functors.len()))
        })
    })()));

    rows.push(row(input, "module_arrows", match check_module_arrows(m, budget_nodes) {
        Ok(()) => Ok(Ok("unary module arrows are the transformation components".into())),
        Err(LemmaError::Enumeration(e)) => Err(budget(e)),
        Err(LemmaError::NotIsomorphic(e)) => Ok(Err(e)),
    }));

    let levels = levels.min(cap.saturating_sub(2));
    rows.push(row(input, "modules_levelwise", if cap < 3 {
        Err("arity cap below 3".into())
    } else {
        let options = KTheoryOptions {
            budget: budget_nodes,
            ..KTheoryOptions::default()
        };
        match coreflection_check(m, levels, options) {
            Err(e) if e.contains("budget") => Err(e),
            Err(e) => Ok(Err(e)),
            Ok(per_level) => Ok(match per_level.iter().position(|r| r.is_err()) {
                Some(n) => Err(format!("level {n}: {}", per_level[n].clone().unwrap_err())),
                None => Ok(format!("levels 0..={levels} isomorphic")),
            }),
        }
    }));

    rows.push(row(input, "path_object", match path_object_check(m, budget_nodes) {
        Err(e) => Err(budget(e)),
        Ok(r) if r.passes() => Ok(Ok("weak equivalence, diagonal, iso lifting".into())),
        Ok(r) => Ok(Err(format!(
            "weak equivalence {}, identities initial {}, diagonal {}, iso lifting {}",
            r.weak_equivalence.is_ok(),
            r.identities_initial,
            r.diagonal,
            r.iso_lifting.is_ok()
        ))),
    }));

    rows
}

/// The inclusion of Γ into 𝒢* does not depend on the input.
pub fn gstar_row(bound: usize) -> Row {
    let detail = format!("Γ(m, n) → 𝒢*(m, n) for m, n ≤ {bound}");
    row("*", "gstar_fully_faithful", Ok(if check_i_fully_faithful(bound) { Ok(detail) } else { Err(detail) }))
}
