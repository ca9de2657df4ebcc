//! Machine and human renderings of capability reports. JSON fields are
//! emitted in a fixed order with a schema version; dimensions are integers
//! and certificates an array of `name:status` strings.

use serde::Serialize;

use crate::closure::{CapabilityReport, Verdict};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
struct JsonOrders {
    group_order_exp: usize,
    witness_order_exp: usize,
}

#[derive(Serialize)]
struct JsonGroup {
    rank_gab: usize,
    rank_comm: usize,
    rank_g_mod_z: usize,
}

#[derive(Serialize)]
struct JsonReport {
    schema_version: u32,
    verdict: &'static str,
    capable: bool,
    dim_x: usize,
    dim_x_star: usize,
    dim_x_closure: usize,
    epicenter_dim: usize,
    certificates: Vec<String>,
    group: JsonGroup,
    orders: JsonOrders,
}

pub fn json_report(report: &CapabilityReport) -> String {
    let jr = JsonReport {
        schema_version: REPORT_SCHEMA_VERSION,
        verdict: match report.verdict {
            Verdict::Closed => "closed",
            Verdict::NotClosed => "not_closed",
        },
        capable: report.is_capable(),
        dim_x: report.dim_x,
        dim_x_star: report.dim_x_star,
        dim_x_closure: report.dim_x_closure,
        epicenter_dim: report.epicenter_dim,
        certificates: report.certificate_strings(),
        group: JsonGroup {
            rank_gab: report.group_view.rank_gab,
            rank_comm: report.group_view.rank_comm,
            rank_g_mod_z: report.group_view.rank_g_mod_z,
        },
        orders: JsonOrders {
            group_order_exp: report.group_order_exp,
            witness_order_exp: report.witness_order_exp,
        },
    };
    serde_json::to_string_pretty(&jr).expect("report serialization cannot fail")
}

pub fn text_report(report: &CapabilityReport) -> String {
    let verdict = match report.verdict {
        Verdict::Closed => "closed (capable)",
        Verdict::NotClosed => "not closed (not capable)",
    };
    let mut out = String::new();
    out.push_str(&format!("verdict: {verdict}\n"));
    out.push_str(&format!("dim X: {}\n", report.dim_x));
    out.push_str(&format!("dim X*: {}\n", report.dim_x_star));
    out.push_str(&format!("dim X**: {}\n", report.dim_x_closure));
    out.push_str(&format!("epicenter dim: {}\n", report.epicenter_dim));
    out.push_str(&format!(
        "certificates: {}\n",
        report.certificate_strings().join(", ")
    ));
    out.push_str(&format!(
        "group view: rank(G^ab)={}, rank([G,G])={}, rank(G/Z(G))={}\n",
        report.group_view.rank_gab, report.group_view.rank_comm, report.group_view.rank_g_mod_z
    ));
    out.push_str(&format!(
        "orders: |G| = p^{}, witness |H| = p^{}\n",
        report.group_order_exp, report.witness_order_exp
    ));
    // informational only: when the rank inequality is tight for a capable
    // group, some witness has a cyclic weight-3 layer
    let k = report.group_view.rank_comm;
    if report.verdict == Verdict::Closed
        && k > 0
        && 2 * report.group_view.rank_g_mod_z == 4 * k + k * (k - 1)
    {
        out.push_str("note: rank bound tight; a witness with cyclic weight-3 layer exists\n");
    }
    out
}
