//! One function per subcommand; each runs over the matching corpus instances.

use std::cell::RefCell;
use std::collections::BTreeMap;

use clap::ValueEnum;
use serde_json::{json, Value};
use thiserror::Error;

use nori_core::bialgebra::{
    associativity_check, bialgebra_axiom_check, product_on_truncations, sigma_directed_system,
    sigma_element, tau_coherence, transition_compatible, BialgebraError, TauTable,
};
use nori_core::comodule::{
    canonical_embedding, check_comodule_axioms, extended_comodule, torsionfree_cover, Comodule,
    ComoduleError,
};
use nori_core::filtration::{
    compare_filtration_homology, filtration_complex, find_very_good_refinement,
    is_very_good_filtration, Filtration, FiltrationError,
};
use nori_core::linalg::{LinalgError, RatMatrix, Ring};
use nori_core::simplicial::{
    cech_comparison, cup_comparison, ez_aw_maps, induced_map_between, kunneth_ranks, les_exactness,
    product_pair, relative_cup_product, triple_boundary_between, CechData, PairHomology, PairMap,
    SimplicialComplex, SimplicialError, SimplicialMap, SimplicialPair,
};
use nori_core::tannaka::{
    commutation_constraints, end_algebra, transition_between, DiagramRep, EdgeKind, TannakaError,
    Truncation,
};

use crate::corpus::{module_of, parse_matrix, vertex, ComoduleSpec, Corpus, CorpusError};
use crate::report::{
    describe, inline_matrix, inline_vector, matrix, module, vector, CommandRun, InstanceReport,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error("{0}")]
    Input(String),
}

macro_rules! input_error {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Input(e.to_string())
            }
        }
    )*};
}
input_error!(
    LinalgError,
    SimplicialError,
    FiltrationError,
    TannakaError,
    ComoduleError,
    BialgebraError
);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Command {
    Homology,
    Les,
    TripleBoundary,
    Product,
    Kunneth,
    Cup,
    Cech,
    Filtration,
    CompareFiltration,
    VeryGoodSearch,
    EndAlgebra,
    Coalgebra,
    Coaction,
    Transition,
    FactorizationCheck,
    BialgebraCheck,
    Sigma,
    SigmaSystem,
    ComoduleCheck,
    TorsionfreeCover,
    /// Every command above over the whole corpus.
    All,
}

impl Command {
    pub const EACH: [Command; 20] = [
        Command::Homology,
        Command::Les,
        Command::TripleBoundary,
        Command::Product,
        Command::Kunneth,
        Command::Cup,
        Command::Cech,
        Command::Filtration,
        Command::CompareFiltration,
        Command::VeryGoodSearch,
        Command::EndAlgebra,
        Command::Coalgebra,
        Command::Coaction,
        Command::Transition,
        Command::FactorizationCheck,
        Command::BialgebraCheck,
        Command::Sigma,
        Command::SigmaSystem,
        Command::ComoduleCheck,
        Command::TorsionfreeCover,
    ];

    pub fn name(self) -> String {
        self.to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string()
    }

    /// `Z` for topology and comodules, `Q` for diagram algebra.
    pub fn default_ring(self) -> Ring {
        use Command::*;
        match self {
            EndAlgebra | Coalgebra | Coaction | Transition | FactorizationCheck
            | BialgebraCheck | Sigma | SigmaSystem => Ring::Q,
            _ => Ring::Z,
        }
    }
}

/// Shared state for one invocation.
pub struct Context<'a> {
    pub corpus: &'a Corpus,
    pub ring: Option<Ring>,
    pub budget: usize,
    pub depth: Option<usize>,
    diagrams: RefCell<BTreeMap<(String, Ring), DiagramRep>>,
}

impl<'a> Context<'a> {
    pub fn new(
        corpus: &'a Corpus,
        ring: Option<Ring>,
        budget: usize,
        depth: Option<usize>,
    ) -> Self {
        Context {
            corpus,
            ring,
            budget,
            depth,
            diagrams: RefCell::new(BTreeMap::new()),
        }
    }

    fn diagram(&self, name: &str, ring: Ring) -> Result<DiagramRep, CliError> {
        let key = (name.to_string(), ring);
        if let Some(d) = self.diagrams.borrow().get(&key) {
            return Ok(d.clone());
        }
        let d = self.corpus.diagram(name, ring)?;
        self.diagrams.borrow_mut().insert(key, d.clone());
        Ok(d)
    }

    /// Diagram and subdiagram of a named truncation.
    fn truncation(&self, name: &str, ring: Ring) -> Result<(DiagramRep, Truncation), CliError> {
        let spec = self.corpus.truncation_spec(name)?;
        let rep = self.diagram(&spec.diagram, ring)?;
        let sub = self.corpus.subdiagram(&rep, name)?;
        let t = Truncation::new(&rep, &sub)?;
        Ok((rep, t))
    }

    fn same_diagram(&self, names: &[&str]) -> Result<String, CliError> {
        let mut diagram = None;
        for n in names {
            let d = &self.corpus.truncation_spec(n)?.diagram;
            match &diagram {
                None => diagram = Some(d.clone()),
                Some(prev) if prev != d => {
                    return Err(CliError::Input(format!(
                        "truncations {names:?} come from different diagrams"
                    )))
                }
                _ => {}
            }
        }
        diagram.ok_or_else(|| CliError::Input("no truncations given".into()))
    }

    pub fn run(
        &self,
        command: Command,
        instance: Option<&str>,
    ) -> Result<Vec<CommandRun>, CliError> {
        if command == Command::All {
            return Command::EACH
                .iter()
                .map(|&c| self.run_one(c, None))
                .collect();
        }
        Ok(vec![self.run_one(command, instance)?])
    }

    fn run_one(&self, command: Command, instance: Option<&str>) -> Result<CommandRun, CliError> {
        let ring = self.ring.unwrap_or(command.default_ring());
        let f = &self.corpus.file;
        let names: Vec<&str> = match command {
            Command::Homology | Command::Les => f.pair.iter().map(|x| x.name.as_str()).collect(),
            Command::TripleBoundary => f.triple.iter().map(|x| x.name.as_str()).collect(),
            Command::Product | Command::Kunneth => {
                f.product.iter().map(|x| x.name.as_str()).collect()
            }
            Command::Cup => f.cup.iter().map(|x| x.name.as_str()).collect(),
            Command::Cech => f.cech.iter().map(|x| x.name.as_str()).collect(),
            Command::Filtration | Command::CompareFiltration => {
                f.filtration.iter().map(|x| x.name.as_str()).collect()
            }
            Command::VeryGoodSearch => f.search.iter().map(|x| x.name.as_str()).collect(),
            Command::EndAlgebra
            | Command::Coalgebra
            | Command::Coaction
            | Command::FactorizationCheck => f.truncation.iter().map(|x| x.name.as_str()).collect(),
            Command::Transition => f.transition.iter().map(|x| x.name.as_str()).collect(),
            Command::BialgebraCheck => f.bialgebra.iter().map(|x| x.name.as_str()).collect(),
            Command::Sigma => f.sigma.iter().map(|x| x.name.as_str()).collect(),
            Command::SigmaSystem => f.sigma_system.iter().map(|x| x.name.as_str()).collect(),
            Command::ComoduleCheck | Command::TorsionfreeCover => {
                f.comodule.iter().map(|x| x.name.as_str()).collect()
            }
            Command::All => unreachable!("expanded by run"),
        };
        let selected: Vec<&str> = match instance {
            Some(i) if !names.contains(&i) => {
                return Err(CliError::Input(format!(
                    "no `{}` instance named `{i}`",
                    command.name()
                )))
            }
            Some(i) => vec![i],
            None => names,
        };
        let mut instances = Vec::new();
        for name in selected {
            let mut r = InstanceReport::new(name);
            match command {
                Command::Homology => self.homology(&mut r, ring)?,
                Command::Les => self.les(&mut r, ring)?,
                Command::TripleBoundary => self.triple_boundary(&mut r, ring)?,
                Command::Product => self.product(&mut r, ring)?,
                Command::Kunneth => self.kunneth(&mut r)?,
                Command::Cup => self.cup(&mut r, ring)?,
                Command::Cech => self.cech(&mut r, ring)?,
                Command::Filtration => self.filtration(&mut r, ring)?,
                Command::CompareFiltration => self.compare_filtration(&mut r, ring)?,
                Command::VeryGoodSearch => self.very_good_search(&mut r, ring)?,
                Command::EndAlgebra => self.end_algebra(&mut r, ring)?,
                Command::Coalgebra => self.coalgebra(&mut r, ring)?,
                Command::Coaction => self.coaction(&mut r, ring)?,
                Command::Transition => self.transition(&mut r, ring)?,
                Command::FactorizationCheck => self.factorization(&mut r, ring)?,
                Command::BialgebraCheck => self.bialgebra(&mut r, ring)?,
                Command::Sigma => self.sigma(&mut r, ring)?,
                Command::SigmaSystem => self.sigma_system(&mut r, ring)?,
                Command::ComoduleCheck => self.comodule_check(&mut r, ring)?,
                Command::TorsionfreeCover => self.torsionfree_cover(&mut r, ring)?,
                Command::All => unreachable!(),
            }
            instances.push(r);
        }
        let passed = instances.iter().all(|i| i.passed);
        Ok(CommandRun {
            command: command.name(),
            ring: ring.to_string(),
            passed,
            instances,
        })
    }

    fn homology(&self, r: &mut InstanceReport, ring: Ring) -> Result<(), CliError> {
        let pair = self.corpus.pair(&r.instance)?;
        let h = PairHomology::new(pair, ring)?;
        let top = pair.space().dim().max(0) as usize;
        let mut degrees = Vec::new();
        let mut euler = 0i64;
        for n in 0..=top {
            let m = h.module(n);
            r.line(format!("n={n}: {}", describe(&m)));
            euler += if n % 2 == 0 {
                m.free_rank() as i64
            } else {
                -(m.free_rank() as i64)
            };
            degrees.push(module(&m));
        }
        let expected = pair.space().euler_characteristic() - pair.sub().euler_characteristic();
        r.check("euler characteristic", euler == expected);
        r.data = json!({ "degrees": degrees, "euler_characteristic": expected });
        Ok(())
    }

    fn les(&self, r: &mut InstanceReport, ring: Ring) -> Result<(), CliError> {
        let report = les_exactness(self.corpus.pair(&r.instance)?, ring)?;
        let mut nodes = Vec::new();
        for node in &report.nodes {
            let status = if node.exact {
                "exact".to_string()
            } else {
                format!("defect {}", describe(&node.defect))
            };
            r.line(format!("{}: {status}", node.node));
            r.check(format!("exact at {}", node.node), node.exact);
            nodes.push(json!({ "node": node.node, "composite_zero": node.composite_zero, "defect": module(&node.defect) }));
        }
        r.data = json!({ "nodes": nodes });
        Ok(())
    }

    fn triple_boundary(&self, r: &mut InstanceReport, ring: Ring) -> Result<(), CliError> {
        let spec = self
            .corpus
            .file
            .triple
            .iter()
            .find(|t| t.name == r.instance)
            .expect("listed");
        let x = self.corpus.complex(&spec.space)?.clone();
        let z = self.corpus.subcomplex(&x, &spec.middle, &spec.name)?;
        let w = self.corpus.subcomplex(&x, &spec.lower, &spec.name)?;
        if !w.is_subcomplex_of(&z) {
            return Err(CliError::Input(format!(
                "{}: lower is not contained in middle",
                spec.name
            )));
        }
        let xz = PairHomology::new(&SimplicialPair::new(x.clone(), z.clone())?, ring)?;
        let zw = PairHomology::new(&SimplicialPair::new(z.clone(), w.clone())?, ring)?;
        let xw = PairHomology::new(&SimplicialPair::new(x.clone(), w.clone())?, ring)?;
        let incl = PairMap::new(
            SimplicialPair::new(z.clone(), w.clone())?,
            SimplicialPair::new(x.clone(), w.clone())?,
            SimplicialMap::inclusion(&z, &x)?,
        )?;
        let mut maps = Vec::new();
        for n in 1..=(x.dim().max(0) as usize + 1) {
            let d = triple_boundary_between(&xz, &zw, n)?;
            let next = induced_map_between(&incl, &zw, &xw, n - 1)?;
            r.check(
                format!("boundary then inclusion vanishes in degree {n}"),
                d.then(&next)?.is_zero(),
            );
            r.line(format!(
                "n={n}: {} -> {}: {}",
                describe(d.source()),
                describe(d.target()),
                inline_matrix(d.matrix())
            ));
            maps.push(json!({ "degree": n, "source": module(d.source()), "target": module(d.target()), "matrix": matrix(d.matrix()) }));
        }
        r.data = json!({ "boundaries": maps });
        Ok(())
    }

    fn product_pairs(&self, name: &str) -> Result<(SimplicialPair, SimplicialPair), CliError> {
        let spec = self
            .corpus
            .file
            .product
            .iter()
            .find(|p| p.name == name)
            .expect("listed");
        Ok((
            self.corpus.pair(&spec.left)?.clone(),
            self.corpus.pair(&spec.right)?.clone(),
        ))
    }

    fn product(&self, r: &mut InstanceReport, ring: Ring) -> Result<(), CliError> {
        let (p1, p2) = self.product_pairs(&r.instance)?;
        let pc = ez_aw_maps(&p1, &p2, ring);
        r.check("shuffle map is a chain map", pc.ez_is_chain_map());
        r.check("front/back map is a chain map", pc.aw_is_chain_map());
        r.check("AW after EZ is the identity", pc.aw_ez_is_identity());
        r.check(
            "EZ after AW is the identity on homology",
            pc.ez_aw_is_identity_on_homology()?,
        );
        let h = PairHomology::new(&product_pair(&p1, &p2), ring)?;
        let degrees: Vec<Value> = h.modules().iter().map(module).collect();
        for (n, m) in h.modules().iter().enumerate() {
            r.line(format!("n={n}: {}", describe(m)));
        }
        let ranks: Vec<usize> = (0..pc.ez.len()).map(|n| pc.product.rank(n)).collect();
        r.data = json!({ "product_homology": degrees, "product_chain_ranks": ranks });
        Ok(())
    }

    fn kunneth(&self, r: &mut InstanceReport) -> Result<(), CliError> {
        let (p1, p2) = self.product_pairs(&r.instance)?;
        let ranks = kunneth_ranks(&p1, &p2)?;
        let mut rows = Vec::new();
        for (n, (lhs, rhs)) in ranks.iter().enumerate() {
            r.line(format!("n={n}: rank {lhs} vs {rhs} over Q"));
            r.check(format!("rank identity in degree {n}"), lhs == rhs);
            rows.push(json!({ "degree": n, "product": lhs, "tensor": rhs }));
        }
        r.data = json!({ "ranks_over_q": rows });
        Ok(())
    }

    fn cup(&self, r: &mut InstanceReport, ring: Ring) -> Result<(), CliError> {
        let spec = self
            .corpus
            .file
            .cup
            .iter()
            .find(|c| c.name == r.instance)
            .expect("listed");
        let x = self.corpus.complex(&spec.space)?.clone();
        let z1 = self.corpus.subcomplex(&x, &spec.first, &spec.name)?;
        let z2 = self.corpus.subcomplex(&x, &spec.second, &spec.name)?;
        let table = relative_cup_product(&x, &z1, &z2, spec.p, spec.q, ring)?;
        r.line(format!(
            "H^{}: {}; H^{}: {}; H^{}: {}",
            spec.p,
            describe(&table.left),
            spec.q,
            describe(&table.right),
            spec.p + spec.q,
            describe(&table.target)
        ));
        let mut entries = Vec::new();
        for (i, row) in table.entries.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                r.line(format!("a{i} ∪ b{j} = {}", inline_vector(c)));
                entries.push(json!({ "left": i, "right": j, "class": vector(c) }));
            }
        }
        let cmp = cup_comparison(&x, &z1, &z2, spec.p + spec.q, ring)?;
        r.check(
            "union and sum of subcomplexes give the same cohomology",
            cmp.is_isomorphism()?,
        );
        r.data = json!({
            "left": module(&table.left),
            "right": module(&table.right),
            "target": module(&table.target),
            "products": entries,
        });
        Ok(())
    }

    fn cech(&self, r: &mut InstanceReport, ring: Ring) -> Result<(), CliError> {
        let spec = self
            .corpus
            .file
            .cech
            .iter()
            .find(|c| c.name == r.instance)
            .expect("listed");
        let x = self.corpus.complex(&spec.space)?.clone();
        let sets = |fs: &[crate::corpus::Facets]| -> Result<Vec<SimplicialComplex>, CliError> {
            Ok(fs
                .iter()
                .map(|f| self.corpus.subcomplex(&x, f, &spec.name))
                .collect::<Result<_, _>>()?)
        };
        let data = CechData::new(x.clone(), sets(&spec.cover)?, sets(&spec.components)?)?;
        let mut rows = Vec::new();
        for (n, (tot, rel)) in cech_comparison(&data, ring)?.iter().enumerate() {
            r.line(format!(
                "n={n}: total {} | relative {}",
                describe(tot),
                describe(rel)
            ));
            r.check(format!("degree {n} agrees"), tot == rel);
            rows.push(json!({ "degree": n, "total": module(tot), "relative": module(rel) }));
        }
        r.data = json!({ "degrees": rows });
        Ok(())
    }

    fn filtration(&self, r: &mut InstanceReport, ring: Ring) -> Result<(), CliError> {
        let f = self.corpus.filtration(&r.instance)?;
        let fc = filtration_complex(&f, ring, false)?;
        let vg = is_very_good_filtration(&f)?;
        r.check(
            "differential squares to zero",
            fc.complex.squares_to_zero()?,
        );
        let terms: Vec<Value> = fc.complex.terms.iter().map(module).collect();
        for (i, t) in fc.complex.terms.iter().enumerate() {
            r.line(format!(
                "h_{i}(F_{i}, F_{}): {}",
                i as isize - 1,
                describe(t)
            ));
        }
        let diffs: Vec<Value> = fc
            .complex
            .diffs
            .iter()
            .map(|d| matrix(d.matrix()))
            .collect();
        r.line(format!(
            "very good: {}",
            if vg.is_very_good() { "yes" } else { "no" }
        ));
        r.data = json!({ "levels": levels_json(&f), "terms": terms, "differentials": diffs, "very_good": vg.is_very_good() });
        Ok(())
    }

    fn compare_filtration(&self, r: &mut InstanceReport, ring: Ring) -> Result<(), CliError> {
        let f = self.corpus.filtration(&r.instance)?;
        let cmp = compare_filtration_homology(&f, ring)?;
        report_comparison(r, &cmp, &f);
        Ok(())
    }

    fn very_good_search(&self, r: &mut InstanceReport, ring: Ring) -> Result<(), CliError> {
        let spec = self
            .corpus
            .file
            .search
            .iter()
            .find(|s| s.name == r.instance)
            .expect("listed");
        let start = match &spec.start {
            Some(f) => self.corpus.filtration(f)?,
            None => Filtration::trivial(self.corpus.complex(&spec.space)?.clone()),
        };
        match find_very_good_refinement(&start, self.budget) {
            Err(FiltrationError::BudgetExceeded(b)) => {
                r.fail("search finished within budget", json!({ "budget": b }));
            }
            Err(e) => return Err(e.into()),
            Ok(out) => {
                r.line(format!("candidates examined: {}", out.examined));
                match out.filtration {
                    None => r.fail(
                        "very good refinement found",
                        json!({ "examined": out.examined }),
                    ),
                    Some(found) => {
                        r.check("very good refinement found", true);
                        for (i, l) in found.levels().iter().enumerate() {
                            r.line(format!("F_{i}: {}", facets_text(l)));
                        }
                        let cmp = compare_filtration_homology(&found, ring)?;
                        r.check("result is very good", cmp.very_good);
                        report_comparison(r, &cmp, &found);
                        r.data["examined"] = json!(out.examined);
                    }
                }
            }
        }
        Ok(())
    }

    fn end_algebra(&self, r: &mut InstanceReport, ring: Ring) -> Result<(), CliError> {
        let (rep, t) = self.truncation(&r.instance, ring)?;
        let e = end_algebra(&rep, &t.subdiagram)?;
        r.line(format!("dimension {}", e.dim()));
        let mut basis = Vec::new();
        for i in 0..e.dim() {
            let mut parts = Vec::new();
            let mut comps = serde_json::Map::new();
            for &v in t.subdiagram.vertices() {
                let m = e.basis_component(i, v).expect("vertex in F");
                parts.push(format!("{}={}", rep.vertex(v).name, inline_matrix(&m)));
                comps.insert(rep.vertex(v).name.clone(), matrix(&m));
            }
            r.line(format!("e{i}: {}", parts.join(" ")));
            basis.push(Value::Object(comps));
        }
        r.check(
            "basis commutes with every edge",
            commutation_constraints(&rep, &t.subdiagram)
                .mul(e.basis())
                .is_zero(),
        );
        let id: Vec<_> = t
            .subdiagram
            .vertices()
            .iter()
            .flat_map(|&v| RatMatrix::identity(rep.rank(v)).entries().to_vec())
            .collect();
        r.check(
            "unit is the identity family",
            e.coordinates(&id).as_deref() == Some(e.unit()),
        );
        if ring == Ring::Z {
            r.check("integral basis is saturated", e.is_saturated());
        }
        r.data = json!({ "dimension": e.dim(), "ambient_dimension": e.ambient_dim(), "basis": basis, "unit": vector(e.unit()) });
        Ok(())
    }

    fn coalgebra(&self, r: &mut InstanceReport, ring: Ring) -> Result<(), CliError> {
        let (_, t) = self.truncation(&r.instance, ring)?;
        let c = &t.coalgebra;
        r.line(format!("rank {}", c.rank()));
        r.check("coassociative", c.is_coassociative());
        r.check("counital", c.is_counital());
        r.data = json!({ "rank": c.rank(), "comultiplication": matrix(c.delta()), "counit": matrix(c.counit()) });
        Ok(())
    }

    fn coaction(&self, r: &mut InstanceReport, ring: Ring) -> Result<(), CliError> {
        let (rep, t) = self.truncation(&r.instance, ring)?;
        let mut out = serde_json::Map::new();
        for &v in t.subdiagram.vertices() {
            let name = rep.vertex(v).name.clone();
            let co = t.coaction(&rep, v)?;
            let cert = check_comodule_axioms(&co.as_comodule(&t.coalgebra)?)?;
            r.check(format!("{name}: coassociative"), cert.coassociative);
            r.check(format!("{name}: counital"), cert.counital);
            r.line(format!("{name}: rho = {}", inline_matrix(&co.rho)));
            out.insert(
                name,
                json!({ "module": module(&co.module), "rho": matrix(&co.rho) }),
            );
        }
        r.data = Value::Object(out);
        Ok(())
    }

    fn transition(&self, r: &mut InstanceReport, ring: Ring) -> Result<(), CliError> {
        let spec = self
            .corpus
            .file
            .transition
            .iter()
            .find(|t| t.name == r.instance)
            .expect("listed");
        self.same_diagram(&[&spec.small, &spec.big])?;
        let (rep, small) = self.truncation(&spec.small, ring)?;
        let (_, big) = self.truncation(&spec.big, ring)?;
        let tm = transition_between(&rep, &small, &big)?;
        r.line(format!(
            "{} -> {}: {}",
            spec.small,
            spec.big,
            inline_matrix(&tm.matrix)
        ));
        r.check("coalgebra morphism", tm.is_coalgebra_morphism);
        r.check("intertwines coactions", tm.intertwines_coactions);
        r.data = json!({ "matrix": matrix(&tm.matrix) });
        Ok(())
    }

    fn factorization(&self, r: &mut InstanceReport, ring: Ring) -> Result<(), CliError> {
        let (rep, t) = self.truncation(&r.instance, ring)?;
        let cert = t.factorization_check(&rep)?;
        for (name, c) in &cert.comodules {
            r.check(format!("{name} is a comodule"), c.passed());
        }
        for (name, ok) in &cert.naturality {
            r.check(format!("{name} is a comodule morphism"), *ok);
        }
        r.check(
            "forgetful functor recovers the representation",
            cert.forgetful,
        );
        r.line(format!(
            "{} vertices, {} edges",
            cert.comodules.len(),
            cert.naturality.len()
        ));
        if !cert.passed() {
            r.witness = Some(json!({ "failing_edges": cert.failing_edges() }));
        }
        r.data = json!({ "vertices": cert.comodules.len(), "edges": cert.naturality.len() });
        Ok(())
    }

    fn bialgebra(&self, r: &mut InstanceReport, ring: Ring) -> Result<(), CliError> {
        let spec = self
            .corpus
            .file
            .bialgebra
            .iter()
            .find(|b| b.name == r.instance)
            .expect("listed");
        let mut names = vec![
            spec.left.as_str(),
            spec.right.as_str(),
            spec.target.as_str(),
        ];
        if let Some(s) = &spec.small {
            names.extend([s.left.as_str(), s.right.as_str(), s.target.as_str()]);
        }
        if let Some(a) = &spec.associativity {
            names.extend(
                [
                    &a.third,
                    &a.left_target,
                    &a.right_inner,
                    &a.right_target,
                    &a.common,
                ]
                .map(String::as_str),
            );
        }
        self.same_diagram(&names)?;
        let (rep, f) = self.truncation(&spec.left, ring)?;
        let (_, g) = self.truncation(&spec.right, ring)?;
        let (_, h) = self.truncation(&spec.target, ring)?;
        let unit = spec
            .unit
            .as_ref()
            .map(|u| {
                vertex(
                    &rep,
                    &self
                        .corpus
                        .truncation_spec(&spec.left)
                        .expect("checked")
                        .diagram,
                    u,
                )
            })
            .transpose()?;
        let taus = TauTable::new();
        let frag = match product_on_truncations(&rep, &f, &g, &h, &taus) {
            Ok(frag) => frag,
            Err(
                e @ (BialgebraError::ProductEscape { .. } | BialgebraError::IntegralEscape { .. }),
            ) => {
                r.fail(
                    "products land in the tensor product",
                    json!({ "error": e.to_string() }),
                );
                return Ok(());
            }
            Err(e) => return Err(e.into()),
        };
        let cert = bialgebra_axiom_check(&rep, &f, &g, &h, &frag, unit)?;
        r.check("comultiplication is multiplicative", cert.comultiplicative);
        r.check("counit is multiplicative", cert.counit_multiplicative);
        if let Some(ok) = cert.unit_group_like {
            r.check("unit is group-like", ok);
        }
        if let Some(ok) = cert.unit_law {
            r.check("unit law", ok);
        }
        if let Some(ok) = cert.commutative {
            r.check("commutative", ok);
        }
        if let Some(s) = &spec.small {
            let (_, fs) = self.truncation(&s.left, ring)?;
            let (_, gs) = self.truncation(&s.right, ring)?;
            let (_, hs) = self.truncation(&s.target, ring)?;
            let small = product_on_truncations(&rep, &fs, &gs, &hs, &taus)?;
            r.check(
                "compatible with transitions",
                transition_compatible(&rep, (&fs, &gs, &hs), (&f, &g, &h), &small, &frag)?,
            );
        }
        let mut structural: Vec<usize> = h.subdiagram.edges().to_vec();
        if let Some(a) = &spec.associativity {
            let (_, k) = self.truncation(&a.third, ring)?;
            let (_, q) = self.truncation(&a.left_target, ring)?;
            let (_, gk) = self.truncation(&a.right_inner, ring)?;
            let (_, s) = self.truncation(&a.right_target, ring)?;
            let (_, common) = self.truncation(&a.common, ring)?;
            let fg_k = product_on_truncations(&rep, &h, &k, &q, &taus)?;
            let g_k = product_on_truncations(&rep, &g, &k, &gk, &taus)?;
            let f_gk = product_on_truncations(&rep, &f, &gk, &s, &taus)?;
            r.check(
                "associative",
                associativity_check(&rep, &frag, &fg_k, &g_k, &f_gk, &common)?,
            );
            structural.extend(common.subdiagram.edges());
        }
        structural.sort_unstable();
        structural.dedup();
        let coherence = tau_coherence(&rep, &taus, &structural)?;
        for kind in [EdgeKind::Associator, EdgeKind::Swap, EdgeKind::Unit] {
            let of_kind: Vec<_> = coherence.iter().filter(|c| c.kind == kind).collect();
            if !of_kind.is_empty() {
                r.check(
                    format!("tau coherent with {} edges", kind.name()),
                    of_kind.iter().all(|c| c.holds),
                );
            }
        }
        let incoherent: Vec<&str> = coherence
            .iter()
            .filter(|c| !c.holds)
            .map(|c| c.edge.as_str())
            .collect();
        if !incoherent.is_empty() && r.witness.is_none() {
            r.witness = Some(json!({ "incoherent_edges": incoherent }));
        }
        if !cert.witnesses.is_empty() {
            let w: BTreeMap<&str, Value> = cert
                .witnesses
                .iter()
                .map(|(n, m)| (n.as_str(), matrix(m)))
                .collect();
            r.witness = Some(json!(w));
        }
        r.line(format!("mu: {} x {}", frag.mu.rows(), frag.mu.cols()));
        r.data = json!({ "mu": matrix(&frag.mu) });
        Ok(())
    }

    fn sigma(&self, r: &mut InstanceReport, ring: Ring) -> Result<(), CliError> {
        let spec = self
            .corpus
            .file
            .sigma
            .iter()
            .find(|s| s.name == r.instance)
            .expect("listed");
        let names: Vec<&str> = spec.truncations.iter().map(String::as_str).collect();
        let diagram = self.same_diagram(&names)?;
        let rep = self.diagram(&diagram, ring)?;
        let v = vertex(&rep, &diagram, &spec.vertex)?;
        let mut out = serde_json::Map::new();
        for n in &names {
            let sub = self.corpus.subdiagram(&rep, n)?;
            let s = sigma_element(&rep, &sub, v)?;
            r.check(
                format!("{n}: independent of the generator sign"),
                s.sign_independent,
            );
            r.check(format!("{n}: group-like"), s.group_like);
            r.line(format!("{n}: sigma = {}", inline_vector(&s.coordinates)));
            out.insert(n.to_string(), vector(&s.coordinates));
        }
        r.data = Value::Object(out);
        Ok(())
    }

    fn sigma_system(&self, r: &mut InstanceReport, ring: Ring) -> Result<(), CliError> {
        let spec = self
            .corpus
            .file
            .sigma_system
            .iter()
            .find(|s| s.name == r.instance)
            .expect("listed");
        let names: Vec<&str> = spec.chain.iter().map(String::as_str).collect();
        let diagram = self.same_diagram(&names)?;
        let rep = self.diagram(&diagram, ring)?;
        let v = vertex(&rep, &diagram, &spec.vertex)?;
        let chain = names
            .iter()
            .map(|n| self.corpus.subdiagram(&rep, n))
            .collect::<Result<Vec<_>, _>>()?;
        let depth = self.depth.unwrap_or(chain.len().saturating_sub(1));
        let sys = sigma_directed_system(&rep, &chain, v, depth, &TauTable::new())?;
        r.check(
            "all requested steps computed",
            sys.steps.len() == depth.min(chain.len().saturating_sub(1)),
        );
        let mut steps = Vec::new();
        for (k, s) in sys.steps.iter().enumerate() {
            r.line(format!(
                "{} -> {}: kernel dimension {}, eventual kernel dimension {}",
                names[k],
                names[k + 1],
                s.kernel.cols(),
                s.eventual_kernel.cols()
            ));
            steps.push(json!({
                "matrix": matrix(&s.matrix),
                "kernel": matrix(&s.kernel),
                "eventual_kernel": matrix(&s.eventual_kernel),
            }));
        }
        r.data = json!({ "sigma": vector(&sys.sigma), "depth": depth, "steps": steps });
        Ok(())
    }

    fn comodule(&self, spec: &ComoduleSpec, ring: Ring) -> Result<Comodule, CliError> {
        let (rep, t) = self.truncation(&spec.truncation, ring)?;
        let c = t.coalgebra.clone();
        let ctx = format!("comodule {}", spec.name);
        match (&spec.vertex, &spec.module, &spec.rho, &spec.extended) {
            (Some(v), None, None, None) => {
                let v = vertex(
                    &rep,
                    &self.corpus.truncation_spec(&spec.truncation)?.diagram,
                    v,
                )?;
                Ok(t.coaction(&rep, v)?.as_comodule(&c)?)
            }
            (None, Some(m), Some(rho), None) => {
                let module = module_of(m, ring, &ctx)?;
                let rho = parse_matrix(rho, module.generators(), &ctx)?;
                Ok(Comodule::new(c, module, rho)?)
            }
            (None, None, None, Some(m)) => Ok(extended_comodule(&c, &module_of(m, ring, &ctx)?)?),
            _ => Err(CliError::Input(format!(
                "{ctx}: give `vertex`, `module` with `rho`, or `extended`"
            ))),
        }
    }

    fn comodule_check(&self, r: &mut InstanceReport, ring: Ring) -> Result<(), CliError> {
        let spec = self
            .corpus
            .file
            .comodule
            .iter()
            .find(|c| c.name == r.instance)
            .expect("listed");
        let m = self.comodule(spec, ring)?;
        let cert = check_comodule_axioms(&m)?;
        r.check("coassociative", cert.coassociative);
        r.check("counital", cert.counital);
        if m.module().is_free() {
            let ext = extended_comodule(m.coalgebra(), m.module())?;
            r.check(
                "canonical embedding is a comodule morphism",
                m.is_morphism_to(&ext, &canonical_embedding(&m)),
            );
        }
        if !cert.passed() {
            r.witness = Some(json!({
                "coassociativity_defect": cert.coassociativity_defect.as_ref().map(matrix),
                "counit_defect": cert.counit_defect.as_ref().map(matrix),
            }));
        }
        r.line(format!(
            "{} over a rank {} coalgebra",
            describe(m.module()),
            m.coalgebra().rank()
        ));
        r.data = json!({ "module": module(m.module()), "coalgebra_rank": m.coalgebra().rank(), "rho": matrix(m.rho()) });
        Ok(())
    }

    fn torsionfree_cover(&self, r: &mut InstanceReport, ring: Ring) -> Result<(), CliError> {
        let spec = self
            .corpus
            .file
            .comodule
            .iter()
            .find(|c| c.name == r.instance)
            .expect("listed");
        let m = self.comodule(spec, ring)?;
        let cover = torsionfree_cover(&m)?;
        r.check("torsion-free", cover.torsion_free);
        r.check("comodule axioms", cover.axioms);
        r.check("surjective", cover.surjective);
        r.check("embedding is injective", cover.injective_embedding);
        r.check(
            "embedding is a comodule morphism",
            cover.embedding_is_morphism,
        );
        r.check(
            "surjection is a comodule morphism",
            cover.surjection_is_morphism,
        );
        r.line(format!(
            "{} covered by {}",
            describe(m.module()),
            describe(cover.cover.module())
        ));
        r.data = json!({
            "cover": module(cover.cover.module()),
            "free_module": module(&cover.free_module),
            "embedding": matrix(&cover.embedding),
            "surjection": matrix(cover.surjection.matrix()),
        });
        Ok(())
    }
}

fn facets_text(x: &SimplicialComplex) -> String {
    if x.is_empty() {
        return "∅".into();
    }
    x.facets()
        .iter()
        .map(|s| format!("{{{}}}", x.describe(s).join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn levels_json(f: &Filtration) -> Value {
    let levels: Vec<Value> = f
        .levels()
        .iter()
        .map(|l| Value::Array(l.facets().iter().map(|s| json!(l.describe(s))).collect()))
        .collect();
    Value::Array(levels)
}

fn report_comparison(
    r: &mut InstanceReport,
    cmp: &nori_core::filtration::FiltrationComparison,
    f: &Filtration,
) {
    let mut rows = Vec::new();
    for d in &cmp.degrees {
        r.line(format!(
            "n={}: filtration {} | space {}",
            d.degree,
            describe(&d.from_filtration),
            describe(&d.from_space)
        ));
        if cmp.very_good {
            r.check(format!("degree {} agrees", d.degree), d.matches);
        }
        rows.push(json!({ "degree": d.degree, "filtration": module(&d.from_filtration), "space": module(&d.from_space) }));
    }
    if !cmp.very_good {
        r.line("not very good: comparison is advisory");
    }
    r.data = json!({ "levels": levels_json(f), "very_good": cmp.very_good, "degrees": rows });
}
