//! JSON interchange for the object kinds the CLI consumes and produces.
//! UTF-8 JSON with sorted keys on output is the single format; integers are
//! emitted as JSON numbers when they fit in 64 bits and as decimal strings
//! otherwise (inputs accept both).
//!
//! Key conventions:
//! - relation matrices and hom matrices are given column-wise: each entry of
//!   `"relations"` / `"matrix"` is one column, i.e. one element of the
//!   target generator space;
//! - `"d"` / `"s"` tables are keyed `"(level,index)"` where `level` is the
//!   target level of a simplicial face/degeneracy and the target level of a
//!   cosimplicial coface/codegeneracy (so cosimplicial `d^i` at key `(n,i)`
//!   maps level n-1 to level n);
//! - groupoid composition is diagrammatic: `"comp"` maps `"(f,g)"` to
//!   "f then g".

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::cosab::TruncCosimpAb;
use crate::cosimp::TruncCosimpSet;
use crate::error::{Error, Result};
use crate::fgab::{AbHom, FgAbGroup};
use crate::gpd::{gpd_functor, FinCategory, FinGroupoid, GpdFunctor};
use crate::intmat::IntMat;
use crate::postnikov::{DiagramMap, DiagramOfSpaces};
use crate::simp::{FinSet, SimpMap, TruncSimpAb, TruncSimpSet};
use crate::torsor::TruncCosimpGpd;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn as_obj(v: &Value, what: &str) -> Result<Map<String, Value>> {
    v.as_object()
        .cloned()
        .ok_or_else(|| parse_err(format!("{what} must be an object")))
}

fn get<'v>(o: &'v Map<String, Value>, key: &str) -> Result<&'v Value> {
    o.get(key).ok_or_else(|| parse_err(format!("missing key '{key}'")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| parse_err(format!("{what} must be a non-negative integer")))
}

fn as_str(v: &Value, what: &str) -> Result<String> {
    v.as_str()
        .map(|s| s.to_string())
        .ok_or_else(|| parse_err(format!("{what} must be a string")))
}

fn bigint_from(v: &Value) -> Result<BigInt> {
    if let Some(i) = v.as_i64() {
        return Ok(BigInt::from(i));
    }
    if let Some(u) = v.as_u64() {
        return Ok(BigInt::from(u));
    }
    if let Some(s) = v.as_str() {
        return s.parse().map_err(|_| parse_err(format!("not an integer: '{s}'")));
    }
    Err(parse_err("expected an integer or a decimal string"))
}

fn bigint_to(v: &BigInt) -> Value {
    match i64::try_from(v) {
        Ok(x) => json!(x),
        Err(_) => json!(v.to_string()),
    }
}

/// Parse a `"(a,b)"` key.
fn parse_pair_key(key: &str) -> Result<(String, String)> {
    let inner = key
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| parse_err(format!("key '{key}' is not of the form (a,b)")))?;
    let mut depth = 0;
    for (k, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                return Ok((inner[..k].to_string(), inner[k + 1..].to_string()))
            }
            _ => {}
        }
    }
    Err(parse_err(format!("key '{key}' is not of the form (a,b)")))
}

// ---------------------------------------------------------------- groups --

pub fn fgab_to_json(g: &FgAbGroup) -> Value {
    let cols: Vec<Value> = (0..g.relations().cols())
        .map(|j| Value::Array(g.relations().col(j).iter().map(bigint_to).collect()))
        .collect();
    json!({ "generators": g.generators(), "relations": cols })
}

pub fn fgab_from_json(v: &Value) -> Result<FgAbGroup> {
    let o = as_obj(v, "abelian group")?;
    let generators = as_usize(get(&o, "generators")?, "generators")?;
    let rel_val = get(&o, "relations")?
        .as_array()
        .ok_or_else(|| parse_err("relations must be an array of columns"))?;
    let mut cols = Vec::new();
    for col in rel_val {
        let arr = col
            .as_array()
            .ok_or_else(|| parse_err("each relation must be an array"))?;
        if arr.len() != generators {
            return Err(parse_err("relation column length must equal generators"));
        }
        cols.push(arr.iter().map(bigint_from).collect::<Result<Vec<_>>>()?);
    }
    FgAbGroup::new(generators, IntMat::from_cols(generators, cols))
}

pub fn hom_matrix_to_json(h: &AbHom) -> Value {
    let cols: Vec<Value> = (0..h.matrix().cols())
        .map(|j| Value::Array(h.matrix().col(j).iter().map(bigint_to).collect()))
        .collect();
    json!({ "matrix": cols })
}

pub fn hom_matrix_from_json(v: &Value, source: &FgAbGroup, target: &FgAbGroup) -> Result<AbHom> {
    let o = as_obj(v, "homomorphism")?;
    let cols_val = get(&o, "matrix")?
        .as_array()
        .ok_or_else(|| parse_err("matrix must be an array of columns"))?;
    if cols_val.len() != source.generators() {
        return Err(parse_err("matrix must have one column per source generator"));
    }
    let mut cols = Vec::new();
    for col in cols_val {
        let arr = col.as_array().ok_or_else(|| parse_err("each column must be an array"))?;
        if arr.len() != target.generators() {
            return Err(parse_err("column length must equal target generators"));
        }
        cols.push(arr.iter().map(bigint_from).collect::<Result<Vec<_>>>()?);
    }
    AbHom::new(
        source.clone(),
        target.clone(),
        IntMat::from_cols(target.generators(), cols),
    )
}

// -------------------------------------------------------- simplicial sets --

fn levels_to_json(levels: &[FinSet]) -> Value {
    Value::Array(
        levels
            .iter()
            .map(|l| Value::Array(l.labels().iter().map(|s| json!(s)).collect()))
            .collect(),
    )
}

fn levels_from_json(v: &Value) -> Result<Vec<FinSet>> {
    let arr = v.as_array().ok_or_else(|| parse_err("levels must be an array"))?;
    arr.iter()
        .map(|lvl| {
            let labels = lvl
                .as_array()
                .ok_or_else(|| parse_err("each level must be an array of labels"))?
                .iter()
                .map(|s| as_str(s, "label"))
                .collect::<Result<Vec<_>>>()?;
            FinSet::new(labels)
        })
        .collect()
}

pub fn simpset_to_json(x: &TruncSimpSet) -> Value {
    let m_top = x.trunc();
    let levels: Vec<FinSet> = (0..=m_top).map(|m| x.level(m).clone()).collect();
    let mut d_entries = Vec::new();
    for m in 1..=m_top {
        for i in 0..=m {
            let table: Vec<usize> = (0..x.level(m).len()).map(|e| x.face(m, i, e)).collect();
            d_entries.push((m, i, m, table));
        }
    }
    let mut s_entries = Vec::new();
    for m in 0..m_top {
        for i in 0..=m {
            let table: Vec<usize> = (0..x.level(m).len()).map(|e| x.degen(m, i, e)).collect();
            s_entries.push((m, i, m, table));
        }
    }
    // faces: key (m,i), source level m, target m-1; degens: key (m,i),
    // source m, target m+1
    let d = {
        let mut out = Map::new();
        for (m, i, _src, table) in &d_entries {
            let mut tm = Map::new();
            for (e, &y) in table.iter().enumerate() {
                tm.insert(levels[*m].label(e).to_string(), json!(levels[m - 1].label(y)));
            }
            out.insert(format!("({},{})", m, i), Value::Object(tm));
        }
        Value::Object(out)
    };
    let s = {
        let mut out = Map::new();
        for (m, i, _src, table) in &s_entries {
            let mut tm = Map::new();
            for (e, &y) in table.iter().enumerate() {
                tm.insert(levels[*m].label(e).to_string(), json!(levels[m + 1].label(y)));
            }
            out.insert(format!("({},{})", m, i), Value::Object(tm));
        }
        Value::Object(out)
    };
    json!({ "trunc": m_top, "levels": levels_to_json(&levels), "d": d, "s": s })
}

fn label_table_from_json(
    v: &Value,
    key: &str,
    src: &FinSet,
    tgt: &FinSet,
) -> Result<Vec<usize>> {
    let o = as_obj(v, &format!("table {key}"))?;
    let mut table = vec![usize::MAX; src.len()];
    for (label, image) in &o {
        let x = src
            .index(label)
            .ok_or_else(|| parse_err(format!("table {key}: unknown element '{label}'")))?;
        let img = as_str(image, "image")?;
        table[x] = tgt
            .index(&img)
            .ok_or_else(|| parse_err(format!("table {key}: unknown image '{img}'")))?;
    }
    if table.contains(&usize::MAX) {
        return Err(parse_err(format!("table {key} is not total")));
    }
    Ok(table)
}

pub fn simpset_from_json(v: &Value) -> Result<TruncSimpSet> {
    let o = as_obj(v, "simplicial set")?;
    let m_top = as_usize(get(&o, "trunc")?, "trunc")?;
    let levels = levels_from_json(get(&o, "levels")?)?;
    if levels.len() != m_top + 1 {
        return Err(parse_err("levels length must be trunc + 1"));
    }
    let d = as_obj(get(&o, "d")?, "d")?;
    let s = as_obj(get(&o, "s")?, "s")?;
    let mut faces = Vec::new();
    for m in 1..=m_top {
        let mut per_i = Vec::new();
        for i in 0..=m {
            let key = format!("({},{})", m, i);
            let val = d.get(&key).ok_or_else(|| parse_err(format!("missing face {key}")))?;
            per_i.push(label_table_from_json(val, &key, &levels[m], &levels[m - 1])?);
        }
        faces.push(per_i);
    }
    let mut degens = Vec::new();
    for m in 0..m_top {
        let mut per_i = Vec::new();
        for i in 0..=m {
            let key = format!("({},{})", m, i);
            let val = s.get(&key).ok_or_else(|| parse_err(format!("missing degeneracy {key}")))?;
            per_i.push(label_table_from_json(val, &key, &levels[m], &levels[m + 1])?);
        }
        degens.push(per_i);
    }
    TruncSimpSet::new(levels, faces, degens)
}

// ------------------------------------------------------ cosimplicial sets --

pub fn cosimpset_to_json(x: &TruncCosimpSet) -> Value {
    let n_top = x.trunc();
    let levels: Vec<FinSet> = (0..=n_top).map(|n| x.level(n).clone()).collect();
    let d = {
        let mut out = Map::new();
        for n in 1..=n_top {
            for i in 0..=n {
                let mut tm = Map::new();
                for e in 0..levels[n - 1].len() {
                    tm.insert(
                        levels[n - 1].label(e).to_string(),
                        json!(levels[n].label(x.coface(n, i, e))),
                    );
                }
                out.insert(format!("({},{})", n, i), Value::Object(tm));
            }
        }
        Value::Object(out)
    };
    let s = {
        let mut out = Map::new();
        for n in 0..n_top {
            for i in 0..=n {
                let mut tm = Map::new();
                for e in 0..levels[n + 1].len() {
                    tm.insert(
                        levels[n + 1].label(e).to_string(),
                        json!(levels[n].label(x.codegen(n, i, e))),
                    );
                }
                out.insert(format!("({},{})", n, i), Value::Object(tm));
            }
        }
        Value::Object(out)
    };
    json!({ "trunc": n_top, "levels": levels_to_json(&levels), "d": d, "s": s })
}

pub fn cosimpset_from_json(v: &Value) -> Result<TruncCosimpSet> {
    let o = as_obj(v, "cosimplicial set")?;
    let n_top = as_usize(get(&o, "trunc")?, "trunc")?;
    let levels = levels_from_json(get(&o, "levels")?)?;
    if levels.len() != n_top + 1 {
        return Err(parse_err("levels length must be trunc + 1"));
    }
    let d = as_obj(get(&o, "d")?, "d")?;
    let s = as_obj(get(&o, "s")?, "s")?;
    let mut cofaces = Vec::new();
    for n in 1..=n_top {
        let mut per_i = Vec::new();
        for i in 0..=n {
            let key = format!("({},{})", n, i);
            let val = d.get(&key).ok_or_else(|| parse_err(format!("missing coface {key}")))?;
            per_i.push(label_table_from_json(val, &key, &levels[n - 1], &levels[n])?);
        }
        cofaces.push(per_i);
    }
    let mut codegens = Vec::new();
    for n in 0..n_top {
        let mut per_i = Vec::new();
        for i in 0..=n {
            let key = format!("({},{})", n, i);
            let val = s
                .get(&key)
                .ok_or_else(|| parse_err(format!("missing codegeneracy {key}")))?;
            per_i.push(label_table_from_json(val, &key, &levels[n + 1], &levels[n])?);
        }
        codegens.push(per_i);
    }
    TruncCosimpSet::new(levels, cofaces, codegens)
}

// -------------------------------------------------------- abelian bundles --

pub fn simp_ab_to_json(a: &TruncSimpAb) -> Value {
    let m_top = a.trunc();
    let levels: Vec<Value> = (0..=m_top).map(|m| fgab_to_json(a.level(m))).collect();
    let mut d = Map::new();
    for m in 1..=m_top {
        for i in 0..=m {
            d.insert(format!("({},{})", m, i), hom_matrix_to_json(a.face(m, i)));
        }
    }
    let mut s = Map::new();
    for m in 0..m_top {
        for i in 0..=m {
            s.insert(format!("({},{})", m, i), hom_matrix_to_json(a.degen(m, i)));
        }
    }
    json!({ "trunc": m_top, "levels": levels, "d": d, "s": s })
}

pub fn simp_ab_from_json(v: &Value) -> Result<TruncSimpAb> {
    let o = as_obj(v, "simplicial abelian group")?;
    let m_top = as_usize(get(&o, "trunc")?, "trunc")?;
    let levels_val = get(&o, "levels")?
        .as_array()
        .ok_or_else(|| parse_err("levels must be an array"))?;
    if levels_val.len() != m_top + 1 {
        return Err(parse_err("levels length must be trunc + 1"));
    }
    let levels: Vec<FgAbGroup> = levels_val.iter().map(fgab_from_json).collect::<Result<_>>()?;
    let d = as_obj(get(&o, "d")?, "d")?;
    let s = as_obj(get(&o, "s")?, "s")?;
    let mut faces = Vec::new();
    for m in 1..=m_top {
        let mut per_i = Vec::new();
        for i in 0..=m {
            let key = format!("({},{})", m, i);
            let val = d.get(&key).ok_or_else(|| parse_err(format!("missing face {key}")))?;
            per_i.push(hom_matrix_from_json(val, &levels[m], &levels[m - 1])?);
        }
        faces.push(per_i);
    }
    let mut degens = Vec::new();
    for m in 0..m_top {
        let mut per_i = Vec::new();
        for i in 0..=m {
            let key = format!("({},{})", m, i);
            let val = s.get(&key).ok_or_else(|| parse_err(format!("missing degeneracy {key}")))?;
            per_i.push(hom_matrix_from_json(val, &levels[m], &levels[m + 1])?);
        }
        degens.push(per_i);
    }
    TruncSimpAb::new(levels, faces, degens)
}

pub fn cosimp_ab_to_json(a: &TruncCosimpAb) -> Value {
    let n_top = a.trunc();
    let levels: Vec<Value> = (0..=n_top).map(|n| fgab_to_json(a.level(n))).collect();
    let mut d = Map::new();
    for n in 1..=n_top {
        for i in 0..=n {
            d.insert(format!("({},{})", n, i), hom_matrix_to_json(a.coface(n, i)));
        }
    }
    let mut s = Map::new();
    for n in 0..n_top {
        for i in 0..=n {
            s.insert(format!("({},{})", n, i), hom_matrix_to_json(a.codegen(n, i)));
        }
    }
    json!({ "trunc": n_top, "levels": levels, "d": d, "s": s })
}

pub fn cosimp_ab_from_json(v: &Value) -> Result<TruncCosimpAb> {
    let o = as_obj(v, "cosimplicial abelian group")?;
    let n_top = as_usize(get(&o, "trunc")?, "trunc")?;
    let levels_val = get(&o, "levels")?
        .as_array()
        .ok_or_else(|| parse_err("levels must be an array"))?;
    if levels_val.len() != n_top + 1 {
        return Err(parse_err("levels length must be trunc + 1"));
    }
    let levels: Vec<FgAbGroup> = levels_val.iter().map(fgab_from_json).collect::<Result<_>>()?;
    let d = as_obj(get(&o, "d")?, "d")?;
    let s = as_obj(get(&o, "s")?, "s")?;
    let mut cofaces = Vec::new();
    for n in 1..=n_top {
        let mut per_i = Vec::new();
        for i in 0..=n {
            let key = format!("({},{})", n, i);
            let val = d.get(&key).ok_or_else(|| parse_err(format!("missing coface {key}")))?;
            per_i.push(hom_matrix_from_json(val, &levels[n - 1], &levels[n])?);
        }
        cofaces.push(per_i);
    }
    let mut codegens = Vec::new();
    for n in 0..n_top {
        let mut per_i = Vec::new();
        for i in 0..=n {
            let key = format!("({},{})", n, i);
            let val = s
                .get(&key)
                .ok_or_else(|| parse_err(format!("missing codegeneracy {key}")))?;
            per_i.push(hom_matrix_from_json(val, &levels[n + 1], &levels[n])?);
        }
        codegens.push(per_i);
    }
    TruncCosimpAb::new(levels, cofaces, codegens)
}

// -------------------------------------------------------------- groupoids --

pub fn groupoid_to_json(g: &FinGroupoid) -> Value {
    let morphisms: Vec<Value> = (0..g.morphisms().len())
        .map(|m| {
            json!({
                "name": g.morphisms().label(m),
                "src": g.objects().label(g.src(m)),
                "tgt": g.objects().label(g.tgt(m)),
            })
        })
        .collect();
    let id: BTreeMap<String, String> = (0..g.objects().len())
        .map(|x| {
            (
                g.objects().label(x).to_string(),
                g.morphisms().label(g.id(x)).to_string(),
            )
        })
        .collect();
    let mut comp = Map::new();
    for f in 0..g.morphisms().len() {
        for h in 0..g.morphisms().len() {
            if g.tgt(f) == g.src(h) {
                comp.insert(
                    format!("({},{})", g.morphisms().label(f), g.morphisms().label(h)),
                    json!(g.morphisms().label(g.comp(f, h))),
                );
            }
        }
    }
    let inv: BTreeMap<String, String> = (0..g.morphisms().len())
        .map(|m| {
            (
                g.morphisms().label(m).to_string(),
                g.morphisms().label(g.inv(m)).to_string(),
            )
        })
        .collect();
    json!({
        "objects": g.objects().labels(),
        "morphisms": morphisms,
        "id": id,
        "comp": comp,
        "inv": inv,
    })
}

pub fn groupoid_from_json(v: &Value) -> Result<FinGroupoid> {
    let o = as_obj(v, "groupoid")?;
    let objects = FinSet::new(
        get(&o, "objects")?
            .as_array()
            .ok_or_else(|| parse_err("objects must be an array"))?
            .iter()
            .map(|s| as_str(s, "object"))
            .collect::<Result<Vec<_>>>()?,
    )?;
    let mor_val = get(&o, "morphisms")?
        .as_array()
        .ok_or_else(|| parse_err("morphisms must be an array"))?;
    let mut names = Vec::new();
    let mut endpoints = Vec::new();
    for m in mor_val {
        let mo = as_obj(m, "morphism")?;
        let name = as_str(get(&mo, "name")?, "name")?;
        let src_l = as_str(get(&mo, "src")?, "src")?;
        let tgt_l = as_str(get(&mo, "tgt")?, "tgt")?;
        let s = objects
            .index(&src_l)
            .ok_or_else(|| parse_err(format!("unknown source object '{src_l}'")))?;
        let t = objects
            .index(&tgt_l)
            .ok_or_else(|| parse_err(format!("unknown target object '{tgt_l}'")))?;
        names.push(name.clone());
        endpoints.push((name, s, t));
    }
    let morphisms = FinSet::new(names)?;
    let mut src = vec![0; morphisms.len()];
    let mut tgt = vec![0; morphisms.len()];
    for (name, s, t) in &endpoints {
        let idx = morphisms.index(name).unwrap();
        src[idx] = *s;
        tgt[idx] = *t;
    }
    let id_o = as_obj(get(&o, "id")?, "id")?;
    let mut id = vec![usize::MAX; objects.len()];
    for (obj, mor) in &id_o {
        let x = objects
            .index(obj)
            .ok_or_else(|| parse_err(format!("unknown object '{obj}' in id")))?;
        let m = as_str(mor, "identity morphism")?;
        id[x] = morphisms
            .index(&m)
            .ok_or_else(|| parse_err(format!("unknown identity morphism '{m}'")))?;
    }
    if id.contains(&usize::MAX) {
        return Err(parse_err("id table is not total"));
    }
    let comp_o = as_obj(get(&o, "comp")?, "comp")?;
    let mut comp = BTreeMap::new();
    for (key, val) in &comp_o {
        let (f_l, g_l) = parse_pair_key(key)?;
        let f = morphisms
            .index(&f_l)
            .ok_or_else(|| parse_err(format!("unknown morphism '{f_l}' in comp")))?;
        let g = morphisms
            .index(&g_l)
            .ok_or_else(|| parse_err(format!("unknown morphism '{g_l}' in comp")))?;
        let h_l = as_str(val, "composite")?;
        let h = morphisms
            .index(&h_l)
            .ok_or_else(|| parse_err(format!("unknown composite '{h_l}'")))?;
        comp.insert((f, g), h);
    }
    let inv_o = as_obj(get(&o, "inv")?, "inv")?;
    let mut inv = vec![usize::MAX; morphisms.len()];
    for (f_l, g_v) in &inv_o {
        let f = morphisms
            .index(f_l)
            .ok_or_else(|| parse_err(format!("unknown morphism '{f_l}' in inv")))?;
        let g_l = as_str(g_v, "inverse")?;
        inv[f] = morphisms
            .index(&g_l)
            .ok_or_else(|| parse_err(format!("unknown inverse '{g_l}'")))?;
    }
    if inv.contains(&usize::MAX) {
        return Err(parse_err("inv table is not total"));
    }
    FinGroupoid::new(objects, morphisms, src, tgt, id, comp, inv)
}

pub fn cosimp_gpd_to_json(h: &TruncCosimpGpd) -> Value {
    let n_top = h.trunc();
    let levels: Vec<Value> = (0..=n_top).map(|n| groupoid_to_json(h.level(n))).collect();
    let functor_json = |f: &GpdFunctor, src: &FinGroupoid, tgt: &FinGroupoid| -> Value {
        let objects: BTreeMap<String, String> = (0..src.objects().len())
            .map(|x| {
                (
                    src.objects().label(x).to_string(),
                    tgt.objects().label(f.ob_map[x]).to_string(),
                )
            })
            .collect();
        let morphisms: BTreeMap<String, String> = (0..src.morphisms().len())
            .map(|m| {
                (
                    src.morphisms().label(m).to_string(),
                    tgt.morphisms().label(f.mor_map[m]).to_string(),
                )
            })
            .collect();
        json!({ "objects": objects, "morphisms": morphisms })
    };
    let mut d = Map::new();
    for n in 1..=n_top {
        for i in 0..=n {
            d.insert(
                format!("({},{})", n, i),
                functor_json(h.coface(n, i), h.level(n - 1), h.level(n)),
            );
        }
    }
    let mut s = Map::new();
    for n in 0..n_top {
        for i in 0..=n {
            s.insert(
                format!("({},{})", n, i),
                functor_json(h.codegen(n, i), h.level(n + 1), h.level(n)),
            );
        }
    }
    json!({ "trunc": n_top, "levels": levels, "d": d, "s": s })
}

fn functor_from_json(v: &Value, src: &FinGroupoid, tgt: &FinGroupoid) -> Result<GpdFunctor> {
    let o = as_obj(v, "functor")?;
    let ob_o = as_obj(get(&o, "objects")?, "functor objects")?;
    let mor_o = as_obj(get(&o, "morphisms")?, "functor morphisms")?;
    let mut ob_map = vec![usize::MAX; src.objects().len()];
    for (a, b) in &ob_o {
        let x = src
            .objects()
            .index(a)
            .ok_or_else(|| parse_err(format!("unknown object '{a}'")))?;
        let b_l = as_str(b, "image object")?;
        ob_map[x] = tgt
            .objects()
            .index(&b_l)
            .ok_or_else(|| parse_err(format!("unknown image object '{b_l}'")))?;
    }
    let mut mor_map = vec![usize::MAX; src.morphisms().len()];
    for (a, b) in &mor_o {
        let x = src
            .morphisms()
            .index(a)
            .ok_or_else(|| parse_err(format!("unknown morphism '{a}'")))?;
        let b_l = as_str(b, "image morphism")?;
        mor_map[x] = tgt
            .morphisms()
            .index(&b_l)
            .ok_or_else(|| parse_err(format!("unknown image morphism '{b_l}'")))?;
    }
    if ob_map.contains(&usize::MAX) || mor_map.contains(&usize::MAX) {
        return Err(parse_err("functor tables are not total"));
    }
    gpd_functor(src, tgt, ob_map, mor_map)
}

pub fn cosimp_gpd_from_json(v: &Value) -> Result<TruncCosimpGpd> {
    let o = as_obj(v, "cosimplicial groupoid")?;
    let n_top = as_usize(get(&o, "trunc")?, "trunc")?;
    let levels_val = get(&o, "levels")?
        .as_array()
        .ok_or_else(|| parse_err("levels must be an array"))?;
    if levels_val.len() != n_top + 1 {
        return Err(parse_err("levels length must be trunc + 1"));
    }
    let levels: Vec<FinGroupoid> =
        levels_val.iter().map(groupoid_from_json).collect::<Result<_>>()?;
    let d = as_obj(get(&o, "d")?, "d")?;
    let s = as_obj(get(&o, "s")?, "s")?;
    let mut cofaces = Vec::new();
    for n in 1..=n_top {
        let mut per_i = Vec::new();
        for i in 0..=n {
            let key = format!("({},{})", n, i);
            let val = d.get(&key).ok_or_else(|| parse_err(format!("missing coface {key}")))?;
            per_i.push(functor_from_json(val, &levels[n - 1], &levels[n])?);
        }
        cofaces.push(per_i);
    }
    let mut codegens = Vec::new();
    for n in 0..n_top {
        let mut per_i = Vec::new();
        for i in 0..=n {
            let key = format!("({},{})", n, i);
            let val = s
                .get(&key)
                .ok_or_else(|| parse_err(format!("missing codegeneracy {key}")))?;
            per_i.push(functor_from_json(val, &levels[n + 1], &levels[n])?);
        }
        codegens.push(per_i);
    }
    TruncCosimpGpd::new(levels, cofaces, codegens)
}

// --------------------------------------------------------- diagram bundle --

/// Parsed input for the Eilenberg-Mac Lane model command.
pub struct EmBundle {
    pub u: DiagramOfSpaces,
    pub v: DiagramOfSpaces,
    pub f: DiagramOfSpaces,
    pub include: DiagramMap,
    pub project: DiagramMap,
    pub degree: usize,
}

fn category_from_json(v: &Value) -> Result<FinCategory> {
    let o = as_obj(v, "category")?;
    let objects = FinSet::new(
        get(&o, "objects")?
            .as_array()
            .ok_or_else(|| parse_err("objects must be an array"))?
            .iter()
            .map(|s| as_str(s, "object"))
            .collect::<Result<Vec<_>>>()?,
    )?;
    let mor_val = get(&o, "morphisms")?
        .as_array()
        .ok_or_else(|| parse_err("morphisms must be an array"))?;
    let mut names = Vec::new();
    let mut endpoints = Vec::new();
    for m in mor_val {
        let mo = as_obj(m, "morphism")?;
        let name = as_str(get(&mo, "name")?, "name")?;
        let s = objects
            .index(&as_str(get(&mo, "src")?, "src")?)
            .ok_or_else(|| parse_err("unknown source"))?;
        let t = objects
            .index(&as_str(get(&mo, "tgt")?, "tgt")?)
            .ok_or_else(|| parse_err("unknown target"))?;
        names.push(name.clone());
        endpoints.push((name, s, t));
    }
    let morphisms = FinSet::new(names)?;
    let mut src = vec![0; morphisms.len()];
    let mut tgt = vec![0; morphisms.len()];
    for (name, s, t) in &endpoints {
        let idx = morphisms.index(name).unwrap();
        src[idx] = *s;
        tgt[idx] = *t;
    }
    let id_o = as_obj(get(&o, "id")?, "id")?;
    let mut id = vec![usize::MAX; objects.len()];
    for (obj, mor) in &id_o {
        let x = objects.index(obj).ok_or_else(|| parse_err("unknown object in id"))?;
        id[x] = morphisms
            .index(&as_str(mor, "identity")?)
            .ok_or_else(|| parse_err("unknown identity"))?;
    }
    if id.contains(&usize::MAX) {
        return Err(parse_err("id table is not total"));
    }
    let comp_o = as_obj(get(&o, "comp")?, "comp")?;
    let mut comp = BTreeMap::new();
    for (key, val) in &comp_o {
        let (f_l, g_l) = parse_pair_key(key)?;
        let f = morphisms.index(&f_l).ok_or_else(|| parse_err("unknown morphism in comp"))?;
        let g = morphisms.index(&g_l).ok_or_else(|| parse_err("unknown morphism in comp"))?;
        let h = morphisms
            .index(&as_str(val, "composite")?)
            .ok_or_else(|| parse_err("unknown composite"))?;
        comp.insert((f, g), h);
    }
    FinCategory::new(objects, morphisms, src, tgt, id, comp)
}

fn diagram_from_json(v: &Value, cat: &FinCategory) -> Result<DiagramOfSpaces> {
    let o = as_obj(v, "diagram")?;
    let spaces_o = as_obj(get(&o, "spaces")?, "spaces")?;
    let mut spaces = Vec::new();
    for x in 0..cat.objects().len() {
        let label = cat.objects().label(x);
        let sv = spaces_o
            .get(label)
            .ok_or_else(|| parse_err(format!("missing space for object '{label}'")))?;
        spaces.push(simpset_from_json(sv)?);
    }
    let maps_o = as_obj(get(&o, "maps")?, "maps")?;
    let mut maps = Vec::new();
    for m in 0..cat.morphisms().len() {
        let label = cat.morphisms().label(m);
        let mv = maps_o
            .get(label)
            .ok_or_else(|| parse_err(format!("missing map for morphism '{label}'")))?;
        maps.push(simp_map_from_json(mv, &spaces[cat.src(m)], &spaces[cat.tgt(m)])?);
    }
    DiagramOfSpaces::new(cat.clone(), spaces, maps)
}

fn simp_map_from_json(v: &Value, src: &TruncSimpSet, tgt: &TruncSimpSet) -> Result<SimpMap> {
    let o = as_obj(v, "simplicial map")?;
    let mut levels = Vec::new();
    for m in 0..=src.trunc() {
        let key = format!("({})", m);
        let val = o.get(&key).ok_or_else(|| parse_err(format!("missing map level {key}")))?;
        levels.push(label_table_from_json(val, &key, src.level(m), tgt.level(m))?);
    }
    SimpMap::new(src, tgt, levels)
}

pub fn simp_map_to_json(f: &SimpMap, src: &TruncSimpSet, tgt: &TruncSimpSet) -> Value {
    let mut o = Map::new();
    for (m, table) in f.levels.iter().enumerate() {
        let mut tm = Map::new();
        for (e, &y) in table.iter().enumerate() {
            tm.insert(src.level(m).label(e).to_string(), json!(tgt.level(m).label(y)));
        }
        o.insert(format!("({})", m), Value::Object(tm));
    }
    Value::Object(o)
}

fn diagram_map_from_json(
    v: &Value,
    src: &DiagramOfSpaces,
    tgt: &DiagramOfSpaces,
) -> Result<DiagramMap> {
    let o = as_obj(v, "diagram map")?;
    let mut components = Vec::new();
    for x in 0..src.category.objects().len() {
        let label = src.category.objects().label(x);
        let cv = o
            .get(label)
            .ok_or_else(|| parse_err(format!("missing component for object '{label}'")))?;
        components.push(simp_map_from_json(cv, &src.spaces[x], &tgt.spaces[x])?);
    }
    DiagramMap::new(src, tgt, components)
}

pub fn em_bundle_from_json(v: &Value) -> Result<EmBundle> {
    let o = as_obj(v, "diagram bundle")?;
    let cat = category_from_json(get(&o, "category")?)?;
    let u = diagram_from_json(get(&o, "u")?, &cat)?;
    let v_diag = diagram_from_json(get(&o, "v")?, &cat)?;
    let f = diagram_from_json(get(&o, "f")?, &cat)?;
    let include = diagram_map_from_json(get(&o, "include")?, &u, &v_diag)?;
    let project = diagram_map_from_json(get(&o, "project")?, &v_diag, &f)?;
    let degree = as_usize(get(&o, "degree")?, "degree")?;
    Ok(EmBundle { u, v: v_diag, f, include, project, degree })
}

// ------------------------------------------------------------------ bundle --

/// A parsed object bundle.
pub enum ParsedBundle {
    CosimpSet(TruncCosimpSet),
    CosimpAb(TruncCosimpAb),
    CosimpGpd(TruncCosimpGpd),
    SimpSet(TruncSimpSet),
    SimpAb(TruncSimpAb),
    Diagram(Box<EmBundle>),
}

impl ParsedBundle {
    pub fn kind(&self) -> &'static str {
        match self {
            ParsedBundle::CosimpSet(_) => "cosimplicial-set",
            ParsedBundle::CosimpAb(_) => "cosimplicial-ab",
            ParsedBundle::CosimpGpd(_) => "cosimplicial-gpd",
            ParsedBundle::SimpSet(_) => "simplicial-set",
            ParsedBundle::SimpAb(_) => "simplicial-ab",
            ParsedBundle::Diagram(_) => "diagram-bundle",
        }
    }
}

/// Parse a bundle from raw JSON text. Malformed JSON or schema problems are
/// `Error::Parse`; structural law violations surface as `Error::Validation`
/// from the constructors.
pub fn parse_bundle(text: &str) -> Result<ParsedBundle> {
    let v: Value = serde_json::from_str(text).map_err(|e| parse_err(format!("bad JSON: {e}")))?;
    let o = as_obj(&v, "bundle")?;
    let kind = as_str(get(&o, "kind")?, "kind")?;
    let payload = get(&o, "payload")?;
    match kind.as_str() {
        "cosimplicial-set" => Ok(ParsedBundle::CosimpSet(cosimpset_from_json(payload)?)),
        "cosimplicial-ab" => Ok(ParsedBundle::CosimpAb(cosimp_ab_from_json(payload)?)),
        "cosimplicial-gpd" => Ok(ParsedBundle::CosimpGpd(cosimp_gpd_from_json(payload)?)),
        "simplicial-set" => Ok(ParsedBundle::SimpSet(simpset_from_json(payload)?)),
        "simplicial-ab" => Ok(ParsedBundle::SimpAb(simp_ab_from_json(payload)?)),
        "diagram-bundle" => Ok(ParsedBundle::Diagram(Box::new(em_bundle_from_json(payload)?))),
        other => Err(parse_err(format!("unknown bundle kind '{other}'"))),
    }
}

/// Wrap a payload into a named bundle value.
pub fn bundle(kind: &str, name: &str, payload: Value) -> Value {
    json!({ "kind": kind, "name": name, "payload": payload })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fgab_round_trip() {
        let g = FgAbGroup::new(2, IntMat::diag(&[2, 3])).unwrap();
        let j = fgab_to_json(&g);
        let back = fgab_from_json(&j).unwrap();
        assert_eq!(g.invariant_factors(), back.invariant_factors());
        // string integers are accepted
        let big = serde_json::json!({
            "generators": 1,
            "relations": [["123456789012345678901234567890"]]
        });
        let parsed = fgab_from_json(&big).unwrap();
        assert_eq!(
            parsed.invariant_factors().torsion[0].to_string(),
            "123456789012345678901234567890"
        );
    }

    #[test]
    fn cosimpset_round_trip() {
        let x = crate::cosimp::delta_vertices(2);
        let j = cosimpset_to_json(&x);
        let back = cosimpset_from_json(&j).unwrap();
        assert_eq!(x, back);
    }

    #[test]
    fn simpset_round_trip() {
        let x = crate::simp::standard_simplex(2, 2);
        let j = simpset_to_json(&x);
        let back = simpset_from_json(&j).unwrap();
        assert_eq!(x, back);
    }

    #[test]
    fn cosimp_ab_round_trip() {
        let a = TruncCosimpAb::linearize(&crate::cosimp::delta_vertices(2));
        let j = cosimp_ab_to_json(&a);
        let back = cosimp_ab_from_json(&j).unwrap();
        for n in 0..=2 {
            assert_eq!(
                a.level(n).invariant_factors(),
                back.level(n).invariant_factors()
            );
        }
    }

    #[test]
    fn groupoid_round_trip() {
        let g = FinGroupoid::cyclic_group("*", 3).unwrap();
        let j = groupoid_to_json(&g);
        let back = groupoid_from_json(&j).unwrap();
        assert_eq!(g, back);

        let h = TruncCosimpGpd::constant(g, 1);
        let hj = cosimp_gpd_to_json(&h);
        let hback = cosimp_gpd_from_json(&hj).unwrap();
        assert_eq!(h.trunc(), hback.trunc());
    }

    #[test]
    fn corrupted_coface_is_a_validation_error() {
        let x = crate::cosimp::delta_vertices(2);
        let mut j = cosimpset_to_json(&x);
        // redirect one coface image to break the identities
        j["d"]["(1,0)"]["0"] = json!("0");
        let text = serde_json::to_string(&bundle("cosimplicial-set", "broken", j)).unwrap();
        match parse_bundle(&text) {
            Err(Error::Validation(_)) => {}
            other => panic!("expected validation error, got {:?}", other.err()),
        }
    }

    #[test]
    fn malformed_json_is_a_parse_error() {
        assert!(matches!(parse_bundle("{"), Err(Error::Parse(_))));
        assert!(matches!(
            parse_bundle("{\"kind\":\"nope\",\"payload\":{}}"),
            Err(Error::Parse(_))
        ));
    }
}
