//! Commands, default sweeps and deterministic reports.

pub mod descriptor;

use std::collections::BTreeSet;

use serde::Serialize;
use serde_json::{json, Value};

use crate::descent::{Frobenius, InnerTwist};
use crate::error::{Error, Result};
use crate::finite_tits::check_ftg_identities;
use crate::hecke::{self, emit_presentation, HeckeAlgebra, StableSection};
use crate::root_datum::RootType;

pub use descriptor::{parse_descriptor, GroupDescriptor, LatticeSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Command {
    Describe,
    VerifyCoxeter,
    FtgIdentities,
    SesCheck,
    DescentCheck,
    HeckeCheck,
    EmitPresentation,
}

impl Command {
    pub const ALL: [Command; 7] = [
        Command::Describe,
        Command::VerifyCoxeter,
        Command::FtgIdentities,
        Command::SesCheck,
        Command::DescentCheck,
        Command::HeckeCheck,
        Command::EmitPresentation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Describe => "describe",
            Command::VerifyCoxeter => "verify-coxeter",
            Command::FtgIdentities => "ftg-identities",
            Command::SesCheck => "ses-check",
            Command::DescentCheck => "descent-check",
            Command::HeckeCheck => "hecke-check",
            Command::EmitPresentation => "emit-presentation",
        }
    }
}

impl std::str::FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Command> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown command {s:?}")))
    }
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub radius: usize,
    pub seed: u64,
    pub include_e7: bool,
    pub level: usize,
    pub triples: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { radius: 6, seed: 0, include_e7: false, level: 0, triples: 500 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: &'static str,
    pub witness: Value,
}

impl Check {
    fn new(name: impl Into<String>, holds: bool, witness: Value) -> Check {
        Check { name: name.into(), status: if holds { "pass" } else { "fail" }, witness }
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Target {
    pub descriptor: String,
    pub data: Value,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub targets: Vec<Target>,
    pub holds: bool,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.holds {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.command);
        for t in &self.targets {
            out.push_str(&format!("[{}]\n", t.descriptor));
            for c in &t.checks {
                out.push_str(&format!("  {}: {}\n", c.name, c.status));
            }
        }
        out.push_str(&format!("holds: {}\n", self.holds));
        out
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn simple(kind: RootType, rank: usize, ad: bool) -> GroupDescriptor {
    GroupDescriptor::simple(kind, rank, if ad { LatticeSpec::Ad } else { LatticeSpec::Sc })
}

fn nu(node: usize, power: usize) -> InnerTwist {
    InnerTwist::Nu { node: node - 1, power }
}

/// Configurations run when no descriptor is given.
pub fn default_targets(cmd: Command, include_e7: bool) -> Vec<GroupDescriptor> {
    use RootType::*;
    let coxeter_types = [(A, 2), (A, 3), (A, 4), (B, 3), (C, 2), (C, 3), (D, 4), (G, 2), (F, 4)];
    let mut out: Vec<GroupDescriptor> = match cmd {
        Command::Describe => [(A, 1), (A, 2), (A, 3), (A, 4), (A, 5), (B, 3), (C, 3), (D, 4), (D, 5), (E, 6)]
            .into_iter()
            .map(|(k, n)| simple(k, n, true))
            .collect(),
        Command::VerifyCoxeter => coxeter_types
            .into_iter()
            .flat_map(|(k, n)| [simple(k, n, false), simple(k, n, true)])
            .collect(),
        Command::FtgIdentities => [(A, 2), (A, 3), (A, 4), (A, 5), (D, 4), (D, 5)]
            .into_iter()
            .map(|(k, n)| simple(k, n, false))
            .collect(),
        Command::SesCheck => {
            let mut v: Vec<GroupDescriptor> = [(A, 1), (A, 2), (B, 3), (C, 2), (G, 2)]
                .into_iter()
                .flat_map(|(k, n)| [simple(k, n, false), simple(k, n, true)])
                .collect();
            v.push(parse_descriptor("component=A1 lattice=1,0;0,1 central_rank=1").unwrap());
            v
        }
        Command::DescentCheck => {
            let mut v = vec![
                simple(A, 3, false).with_diagram(&[3, 2, 1]),
                simple(A, 3, true).with_diagram(&[3, 2, 1]),
                simple(A, 3, false).with_diagram(&[3, 2, 1]).with_inner(nu(1, 1)),
                simple(A, 3, true).with_diagram(&[3, 2, 1]).with_inner(nu(1, 1)),
            ];
            v.extend((1..=3).map(|p| simple(A, 3, true).with_inner(nu(1, p))));
            v.extend([1, 3, 4].map(|i| simple(D, 4, false).with_inner(nu(i, 1))));
            v.extend((1..=3).map(|p| simple(D, 5, false).with_inner(nu(5, p))));
            v.push(simple(D, 5, false).with_diagram(&[1, 2, 3, 5, 4]).with_inner(nu(5, 1)));
            v.push(simple(E, 6, false).with_inner(nu(1, 1)));
            v.push(simple(A, 1, false).with_inner(nu(1, 1)));
            v
        }
        Command::HeckeCheck => vec![
            simple(A, 2, false),
            simple(C, 2, false),
            simple(G, 2, false),
            simple(A, 1, true),
            simple(A, 3, false).with_diagram(&[3, 2, 1]),
            simple(A, 3, true).with_diagram(&[3, 2, 1]).with_inner(nu(1, 1)),
            simple(A, 3, true).with_inner(nu(1, 2)),
        ],
        Command::EmitPresentation => vec![
            simple(A, 1, false),
            simple(A, 2, false),
            simple(A, 1, true),
            simple(A, 3, false).with_diagram(&[3, 2, 1]),
        ],
    };
    if include_e7 {
        match cmd {
            Command::Describe => out.push(simple(E, 7, true)),
            Command::FtgIdentities => out.push(simple(E, 7, false)),
            Command::DescentCheck => out.push(simple(E, 7, false).with_inner(nu(7, 1))),
            _ => {}
        }
    }
    out
}

/// Adjoint length-zero group: invariant factors, elements by minuscule
/// node (1-based) and the cyclic generator.
pub fn table1(kind: RootType, n: usize) -> (Vec<i64>, Vec<usize>, Option<usize>) {
    use RootType::*;
    match kind {
        A => (vec![n as i64 + 1], (1..=n).collect(), Some(1)),
        B => (vec![2], vec![1], Some(1)),
        C => (vec![2], vec![n], Some(n)),
        D if n % 2 == 0 => (vec![2, 2], vec![1, n - 1, n], None),
        D => (vec![4], vec![1, n - 1, n], Some(n)),
        E if n == 6 => (vec![3], vec![1, 6], Some(1)),
        E if n == 7 => (vec![2], vec![7], Some(7)),
        _ => (vec![], vec![], None),
    }
}

fn describe(d: &GroupDescriptor, fr: &Frobenius) -> Result<(Value, Vec<Check>)> {
    let rd = fr.rd();
    let aff = fr.aff();
    let nodes: Vec<Value> = (0..aff.num_nodes())
        .map(|s| {
            let n = aff.nodes[s];
            let r = aff.node_root(s);
            json!({"node": s, "component": n.component, "label": n.label,
                   "gradient": rd.root_coords(r.root), "k": r.k})
        })
        .collect();
    let (factors, free) = aff.omega_structure();
    let generators: Vec<_> = aff.omega_generators().iter().map(|t| aff.view(t)).collect();
    let omega_size = aff.omega_elements().ok().map(|v| v.len());
    let data = json!({
        "datum": rd.to_string(),
        "dim": rd.dim(),
        "semisimple_rank": rd.rank(),
        "nodes": nodes,
        "coxeter_matrix": aff.coxeter_matrix(),
        "omega": {"invariant_factors": factors, "free_rank": free, "generators": generators, "order": omega_size},
        "s2_dim": rd.coroot_span_basis().len(),
        "extra_choice": fr.tits.extra_choice.iter().map(|e| e.bits(rd.dim())).collect::<Vec<_>>(),
        "sigma_star_nodes": fr.sigma_star_aff,
        "orbits": fr.orbits(),
    });
    let mut checks = Vec::new();
    if d.components.len() == 1 && d.res_copies == 1 && d.central_rank == 0 && d.lattice == LatticeSpec::Ad {
        let (kind, n) = d.components[0];
        let (exp_factors, exp_nodes, exp_gen) = table1(kind, n);
        let elements: BTreeSet<_> = aff.omega_elements()?.into_iter().collect();
        let mut listed = BTreeSet::from([aff.identity()]);
        for &i in &exp_nodes {
            listed.insert(aff.nu(i - 1)?);
        }
        let gen_order = exp_gen.map(|g| {
            let x = aff.nu(g - 1).unwrap();
            (1..=elements.len()).find(|&k| aff.pow(&x, k) == aff.identity()).unwrap()
        });
        let holds = factors == exp_factors
            && elements == listed
            && exp_nodes.len() + 1 == elements.len()
            && gen_order.map_or(true, |o| o == elements.len());
        checks.push(Check::new(
            "table1",
            holds,
            json!({"invariant_factors": factors, "expected": exp_factors, "elements": exp_nodes,
                   "generator": exp_gen, "generator_order": gen_order}),
        ));
    }
    Ok((data, checks))
}

fn run_target(cmd: Command, d: &GroupDescriptor, opts: &RunOptions) -> Result<Target> {
    let fr = d.build()?;
    let (data, checks) = match cmd {
        Command::Describe => describe(d, &fr)?,
        Command::VerifyCoxeter => {
            let cox = fr.tits.verify_coxeter();
            let (words, bad) = fr.tits.check_word_independence(opts.radius);
            let bad: Vec<_> = bad.iter().map(|x| fr.aff().view(x)).collect();
            (
                json!({"max_length": opts.radius}),
                vec![
                    Check::new("coxeter_relations", cox.all_hold, to_value(&cox)),
                    Check::new("cross_section", bad.is_empty(), json!({"words": words, "mismatches": bad})),
                ],
            )
        }
        Command::FtgIdentities => {
            let checks = check_ftg_identities(fr.rd())?
                .into_iter()
                .map(|c| Check::new(c.identity.clone(), c.holds, json!({"lhs": c.lhs, "rhs": c.rhs})))
                .collect();
            (Value::Null, checks)
        }
        Command::SesCheck => {
            let r = fr.tits.ses_check(opts.radius);
            (Value::Null, vec![Check::new("ses", r.holds, to_value(&r))])
        }
        Command::DescentCheck => {
            let r = fr.check(opts.radius, opts.seed)?;
            let checks = vec![
                Check::new("sigma_star_multiplicative", r.multiplicative, json!({"pairs": r.multiplicative_pairs})),
                Check::new("power_s", r.orbits.iter().all(|o| o.power_holds), to_value(&r.orbits)),
                Check::new("stable_coxeter", r.stable_coxeter.all_hold, to_value(&r.stable_coxeter)),
                Check::new("stable_equivariant", r.stable_equivariant, Value::Null),
                Check::new(
                    "sigma_star_on_omega",
                    r.omega.iter().all(|o| o.sigma_star_equals_sigma),
                    Value::Null,
                ),
                Check::new("m_tau_fixed", r.omega.iter().all(|o| o.m_tau_fixed.unwrap_or(true)), to_value(&r.omega)),
                Check::new(
                    "relative_squares",
                    r.relative.iter().all(|s| s.involution_fixed && s.square_holds && s.fixed_holds),
                    to_value(&r.relative),
                ),
                Check::new(
                    "kernel_equals_s2",
                    r.kernel_in_s2 && r.kernel_span_dim == r.s2_dim,
                    json!({"s2_dim": r.s2_dim, "kernel_span_dim": r.kernel_span_dim,
                           "relative_coroot_dim": r.relative_coroot_dim, "radius": r.kernel_radius}),
                ),
                Check::new("relative_cross_section", r.cross_section_consistent, Value::Null),
                Check::new("length_additivity", r.additivity_holds, json!({"pairs": r.additivity_pairs})),
            ];
            let data = json!({
                "sigma": r.sigma, "inner": r.inner, "z": r.z, "beta": r.beta, "k": r.k, "eta": r.eta,
                "g_z": r.g_z, "omega_ad_order": r.omega_ad_order, "coinvariant_order": r.coinvariant_order,
                "nu0_power": r.nu0_power, "stable_pinning": r.stable_pinning, "extra_choice": r.extra_choice,
                "sigma_star_nodes": r.sigma_star_nodes, "infinite_orbits": r.infinite_orbits,
                "braid_orders": r.braid_orders, "s2_exceeds_coroots": r.s2_exceeds_coroots,
            });
            (data, checks)
        }
        Command::HeckeCheck => {
            let r = hecke::hecke_check(&fr, opts.radius, opts.triples, opts.seed)?;
            let checks = vec![
                Check::new("quadratic", r.params.iter().all(|p| p.quadratic_holds), to_value(&r.params)),
                Check::new("associativity", r.associative, json!({"triples": r.associativity_triples})),
                Check::new("q1_specialization", r.q1_homomorphism, json!({"pairs": r.q1_pairs})),
                Check::new("braid_words", r.braid_compatible, json!({"words": r.braid_words})),
                Check::new("howe_tits_constants", r.constants_hold, to_value(&r.constants)),
                Check::new("collapsed_schema", r.schema_matches, json!({"pairs": r.schema_pairs})),
            ];
            (json!({"exponents": r.distinct_exponents, "basis_size": r.basis_size}), checks)
        }
        Command::EmitPresentation => {
            let alg = HeckeAlgebra::new(&fr)?;
            let sec = StableSection::new(&fr, &alg.rel)?;
            let schema = emit_presentation(&alg, &sec, opts.level)?;
            let constants = hecke::howe_tits_constants(&alg, &sec)?;
            let mut checks = vec![Check::new(
                "constants_in_s2",
                constants.iter().all(|c| c.in_s2 && c.identity_holds),
                to_value(&constants),
            )];
            if let Some(c) = &schema.collapsed {
                let (pairs, ok) = hecke::compare_schema(&alg, c, &sec.omega, 1, opts.radius.min(4));
                checks.push(Check::new("collapsed_matches_direct", ok, json!({"pairs": pairs})));
            }
            (to_value(&schema), checks)
        }
    };
    Ok(Target { descriptor: d.one_line(), data, checks })
}

/// Runs `cmd` on the given descriptors, or on the default sweep if empty.
pub fn run_command(cmd: Command, descriptors: &[GroupDescriptor], opts: &RunOptions) -> Result<Report> {
    let targets = if descriptors.is_empty() { default_targets(cmd, opts.include_e7) } else { descriptors.to_vec() };
    let targets = targets.iter().map(|d| run_target(cmd, d, opts)).collect::<Result<Vec<_>>>()?;
    let holds = targets.iter().all(|t| t.checks.iter().all(Check::passed));
    Ok(Report { command: cmd.name().to_string(), targets, holds })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn describe_a2_sc() {
        let d = parse_descriptor("type=A rank=2 isogeny=sc").unwrap();
        let r = run_command(Command::Describe, &[d], &RunOptions::default()).unwrap();
        let data = &r.targets[0].data;
        assert_eq!(data["nodes"].as_array().unwrap().len(), 3);
        assert_eq!(data["omega"]["order"], 1);
        assert_eq!(data["s2_dim"], 2);
        assert!(r.holds);
    }

    #[test]
    fn table1_sweep() {
        let r = run_command(Command::Describe, &[], &RunOptions::default()).unwrap();
        assert!(r.holds, "{}", r.to_text());
        assert_eq!(r.targets.len(), 10);
    }

    #[test]
    fn commands_parse() {
        for c in Command::ALL {
            assert_eq!(c.name().parse::<Command>().unwrap(), c);
        }
        assert!("frobnicate".parse::<Command>().is_err());
    }
}
