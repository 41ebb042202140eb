use serde::Serialize;

use multikat::document::{InputDocument, SCHEMA_VERSION};
use multikat::gamma::GammaObject;
use multikat::homotopy::{extract_binary_tensor, outcome, BinaryTensor, KTheoryReport};
use multikat::multicat::BasedMulticategory;

use crate::Options;

#[derive(Serialize)]
struct Configuration {
    arity_cap: usize,
    levels: usize,
    budget: u64,
}

#[derive(Serialize)]
struct ReportDocument<'a> {
    schema_version: u32,
    input_digest: String,
    multicategory_digest: String,
    configuration: Configuration,
    #[serde(flatten)]
    report: &'a KTheoryReport,
    #[serde(serialize_with = "outcome")]
    tensor: Result<BinaryTensor, String>,
}

/// The report as canonical JSON: sorted keys, two-space indent, trailing
/// newline, nothing that depends on the run.
pub fn render(
    doc: &InputDocument,
    m: &BasedMulticategory,
    options: &Options,
    x: &GammaObject,
    report: &KTheoryReport,
) -> String {
    let tensor = match report.segal.iter().find(|v| v.level == 2) {
        Some(v) => match &v.certificate {
            Some(c) => extract_binary_tensor(x, c),
            None => Err("Segal condition not certified at level 2".into()),
        },
        None => Err("level 2 not computed".into()),
    };
    let document = ReportDocument {
        schema_version: SCHEMA_VERSION,
        input_digest: doc.digest(),
        multicategory_digest: m.digest(),
        configuration: Configuration {
            arity_cap: m.arity_cap(),
            levels: options.levels,
            budget: options.budget,
        },
        report,
        tensor,
    };
    let value = serde_json::to_value(&document).expect("reports serialize");
    let mut text = serde_json::to_string_pretty(&value).expect("values serialize");
    text.push('\n');
    text
}
