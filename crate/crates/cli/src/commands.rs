use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clspace_core::bouquet::build;
use clspace_core::correspondence::{frame_to_space, space_to_frame};
use clspace_core::model_file::load_path;
use clspace_core::search::{find_countermodel_with, find_model_with};
use clspace_core::{
    gen, parse as parse_formula, BitopSpace, BouquetSpec, Formula, FrameClass, Loaded, ModelFile,
    Schema, SearchOptions, Valuation, VisserModel,
};

pub const DEFAULT_SEED: u64 = 20240611;

fn formula(text: &str) -> Result<Formula> {
    parse_formula(text).with_context(|| format!("cannot parse formula '{text}'"))
}

fn load(path: &Path) -> Result<Loaded> {
    load_path(path).with_context(|| format!("cannot load {}", path.display()))
}

fn emit(file: &ModelFile, output: Option<&Path>) -> Result<()> {
    match output {
        Some(path) => file.write(path).map_err(Into::into),
        None => {
            print!("{}", file.to_json());
            Ok(())
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn check(path: &Path, text: &str, point: Option<usize>) -> Result<bool> {
    let loaded = load(path)?;
    let f = formula(text)?;
    let empty = Valuation::new();
    let v = loaded.valuation().unwrap_or(&empty);
    let truth = match &loaded {
        Loaded::Frame { frame, .. } => VisserModel::new(frame.clone(), v.clone())?.truth_set(&f)?,
        Loaded::Space { space, .. } => space.eval(v, &f)?,
    };
    match point {
        Some(x) => {
            if x >= loaded.size() {
                bail!("point {x} is outside the carrier of size {}", loaded.size());
            }
            let holds = truth.contains(x);
            println!("{holds}");
            Ok(holds)
        }
        None => {
            println!("{truth}");
            Ok(truth.is_full())
        }
    }
}

pub fn validity(path: &Path, text: &str) -> Result<bool> {
    let loaded = load(path)?;
    let f = formula(text)?;
    let refutation = match &loaded {
        Loaded::Frame { frame, .. } => clspace_core::frames::frame_countermodel(frame, &f)?
            .map(|(v, x)| (v, format!("fails at {x}"))),
        Loaded::Space { space, .. } => space
            .falsifying_valuation(&f)?
            .map(|(v, truth)| (v, format!("truth set {truth}"))),
    };
    match refutation {
        None => {
            println!("valid");
            Ok(true)
        }
        Some((v, detail)) => {
            println!("not valid");
            println!("valuation: {v}");
            println!("{detail}");
            Ok(false)
        }
    }
}

pub fn classify(path: &Path) -> Result<bool> {
    match load(path)? {
        Loaded::Frame { frame, .. } => {
            let p = frame.properties();
            for (name, value) in [
                ("R transitive", p.r_transitive),
                ("R irreflexive", p.r_irreflexive),
                ("R acyclic", p.r_acyclic),
                ("S reflexive", p.s_reflexive),
                ("S transitive", p.s_transitive),
                ("xSyRz => xRz", p.clm_cond),
                ("R subset of S", p.r_subset_s),
                ("xRySz => xRz", p.ilp_cond),
                ("S;R acyclic", p.ilw_cond),
            ] {
                println!("{name:<16} {}", yes_no(value));
            }
            let logics: Vec<String> = frame.classify().iter().map(ToString::to_string).collect();
            println!("conditions hold for: {}", logics.join(", "));
        }
        Loaded::Space { space, .. } => classify_space(&space)?,
    }
    Ok(true)
}

fn classify_space(space: &BitopSpace) -> Result<()> {
    let cl = space.is_cl_space();
    println!("CL-space: {}", yes_no(cl));
    if !cl {
        return Ok(());
    }
    println!("IL-space: {}", yes_no(space.is_il_space()?));
    if space.size() <= clspace_core::bitopology::IL_CHAR_MAX_POINTS {
        let c = space.il_char_clauses()?;
        println!(
            "IL clauses: J5 valid {}, d(d(Y)∩U) ⊆ d(Y∩U) {}, d(d(X∖U)∩U) = ∅ {}, open core {}",
            yes_no(c.c1),
            yes_no(c.c2),
            yes_no(c.c3),
            yes_no(c.c4)
        );
    }
    Ok(())
}

/// `to_space`: `None` flips the kind.
pub fn convert(path: &Path, to_space: Option<bool>, output: Option<&Path>) -> Result<bool> {
    let loaded = load(path)?;
    let out = match (loaded, to_space) {
        (Loaded::Frame { frame, valuation }, None | Some(true)) => {
            ModelFile::from_space(&frame_to_space(&frame), valuation.as_ref())
        }
        (Loaded::Space { space, valuation }, None | Some(false)) => {
            ModelFile::from_frame(&space_to_frame(&space)?, valuation.as_ref())
        }
        (loaded, _) => ModelFile::from_loaded(&loaded),
    };
    out.load().context("converted model failed re-validation")?;
    emit(&out, output)?;
    Ok(true)
}

pub fn bouquet(
    paths: &[PathBuf],
    basepoints: Vec<usize>,
    k: usize,
    seed: u64,
    output: Option<&Path>,
) -> Result<bool> {
    let mut components = Vec::new();
    let mut given = Vec::new();
    for path in paths {
        match load(path)? {
            Loaded::Space { space, valuation } => {
                components.push(space);
                given.push(valuation);
            }
            Loaded::Frame { frame, valuation } => {
                components.push(frame_to_space(&frame));
                given.push(valuation);
            }
        }
    }
    let spec = BouquetSpec::new(components, basepoints, None, k)?;
    let b = build(&spec)?;

    let mut rng = gen::rng(seed);
    let vals: Vec<Valuation> = if given.iter().all(Option::is_some) && !given.is_empty() {
        given.into_iter().flatten().collect()
    } else {
        spec.components().iter().map(|c| gen::valuation(&mut rng, 3, c.size())).collect()
    };
    let bound: Vec<u32> = vals[0].variables().collect();
    let mut pool: Vec<Formula> = Schema::library().iter().map(Schema::instance).collect();
    for _ in 0..20 {
        let f = gen::formula(&mut rng, bound.len().max(1) as u32, 3);
        // rename p_i to the i-th bound variable
        let rename = (0..bound.len() as u32)
            .map(|i| (i, Formula::Var(bound[i as usize])))
            .collect();
        pool.push(f.substitute(&rename));
    }
    pool.retain(|f| f.variables().iter().all(|v| bound.contains(v)));

    let mut component_ok = true;
    let mut star_ok = true;
    for f in &pool {
        component_ok &= b.truth_lemma_components(&vals, f)?;
        star_ok &= b.truth_lemma_star(&vals, f)?;
    }
    let dead_ok = b.dead_end_check(&vals)? && b.outside_core_is_discrete();
    let scattered = b.space.is_cl_space();
    let lifted = b.lift_valuation(&vals)?;
    emit(&ModelFile::from_space(&b.space, Some(&lifted)), output)?;

    let table = [
        ("component truth lemma", component_ok),
        ("star truth lemma", star_ok),
        ("dead ends outside Y", dead_ok),
        ("scattered", scattered),
    ];
    eprintln!("bouquet on {} points, x* = {}, {} formulas", b.size(), b.star, pool.len());
    for (name, ok) in table {
        eprintln!("{name:<22} {}", if ok { "PASS" } else { "FAIL" });
    }
    Ok(table.iter().all(|(_, ok)| *ok))
}

fn read_gamma(query: &str) -> Result<Vec<Formula>> {
    match query.strip_prefix('@') {
        None => Ok(vec![formula(query)?]),
        Some(path) => {
            let text =
                std::fs::read_to_string(path).with_context(|| format!("cannot read {path}"))?;
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(formula)
                .collect()
        }
    }
}

pub fn search(
    query: &str,
    class: &str,
    max_n: usize,
    satisfy: bool,
    dedup: Option<bool>,
    output: Option<&Path>,
) -> Result<bool> {
    let gamma = read_gamma(query)?;
    let class: FrameClass = class.parse()?;
    let opts = SearchOptions { dedup };
    let result = if satisfy {
        find_model_with(&gamma, class, max_n, &opts)?
    } else {
        let f = Formula::conjunction(gamma);
        find_countermodel_with(&f, class, max_n, &opts)?
    };
    println!("verdict: {}", result.verdict);
    println!("frames explored: {}", result.frames_explored);
    if let Some(w) = &result.witness {
        println!("point: {}", w.point);
        println!("valuation: {}", w.model.valuation);
        emit(&ModelFile::from_model(&w.model), output)?;
    }
    // countermodel mode answers "is it valid?", satisfy mode "is it satisfiable?"
    Ok(result.witness.is_some() == satisfy)
}

pub fn parse(text: &str) -> Result<bool> {
    println!("{}", formula(text)?);
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_files_skip_comments_and_blanks() {
        let dir = std::env::temp_dir().join(format!("clspace-gamma-{}", std::process::id()));
        std::fs::write(&dir, "# header\n\n<>p0\n  [](p0 -> <>p1)  \n").unwrap();
        let gamma = read_gamma(&format!("@{}", dir.display())).unwrap();
        std::fs::remove_file(&dir).unwrap();
        assert_eq!(gamma, clspace_core::delta_family(1));
        assert_eq!(read_gamma("T").unwrap(), vec![Formula::Top]);
        assert!(read_gamma("@/nonexistent/gamma").is_err());
    }
}
