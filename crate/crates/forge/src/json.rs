//! JSON twins of the text outputs, and the string-model input format.

use serde::Deserialize;
use serde_json::{json, Value};

use forge_core::ahss::{Annotation, Page, SSState};
use forge_core::groupcoh::FiniteAbelianGroup;
use forge_core::twogroups::InvertibleStringModel;

use crate::ForgeError;

/// Same content as `emit_page`: entries, `d2` arrows (page 2) and the
/// annotations used (page ∞).
pub fn page_json(state: &SSState, page: Page) -> Result<Value, ForgeError> {
    let w = state.window;
    let entries: Vec<Value> = state
        .page(page)?
        .into_iter()
        .map(|((i, j), e)| json!({"i": i, "j": j, "group": e.to_string()}))
        .collect();
    let label = match page {
        Page::E2 => "2",
        Page::E3 => "3",
        Page::Infinity => "inf",
    };
    let mut v = json!({
        "spectrum": state.spectrum.name,
        "base": state.base.to_string(),
        "twist": state.spectrum.twist,
        "window": w,
        "page": label,
        "entries": entries,
    });
    match page {
        Page::E2 => {
            let d2: Vec<Value> = state
                .nonzero_d2()
                .into_iter()
                .filter(|((a, b), (c, _))| *c <= w && a + b <= w)
                .map(|((a, b), (c, d))| json!({"from": [a, b], "to": [c, d]}))
                .collect();
            v["d2"] = Value::Array(d2);
        }
        Page::E3 => {}
        Page::Infinity => {
            let notes: Vec<Value> = state
                .annotations()
                .iter()
                .map(|n| {
                    let (i, j) = n.source();
                    let kind = match n {
                        Annotation::Vanishes { .. } => json!("vanishes"),
                        Annotation::KillsTarget { kernel, .. } => json!({"kills_target": kernel}),
                    };
                    json!({"page": n.page(), "from": [i, j], "kind": kind, "citation": n.citation()})
                })
                .collect();
            v["annotations"] = Value::Array(notes);
        }
    }
    Ok(v)
}

/// `{"group": "Z2xZ4", "link": [..], "self": [..], "cheshire": [..] | null,
/// "pairing": [[..]]}`. Lists run over the invariant-factor generators of
/// `group`, smallest order first. Without `pairing` the closed pairing is used.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelJson {
    group: String,
    link: Vec<u8>,
    #[serde(rename = "self")]
    self_braiding: Vec<u8>,
    #[serde(default)]
    cheshire: Option<Vec<u64>>,
    #[serde(default)]
    pairing: Option<Vec<Vec<u8>>>,
}

pub fn model_from_json(text: &str) -> Result<InvertibleStringModel, ForgeError> {
    let m: ModelJson = serde_json::from_str(text)?;
    let group = FiniteAbelianGroup::parse(&m.group)?;
    let mut model = InvertibleStringModel::with_closed_pairing(group, m.link, m.self_braiding, m.cheshire);
    if let Some(p) = m.pairing {
        model.pairing = p;
    }
    Ok(model)
}
