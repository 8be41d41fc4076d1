//! Single-edit corruptions of a valid category of operators.

use super::{operator_category, sample_operad, OperatorCategory};
use crate::fincat::{ArrowId, ObjId};

fn object(c: &OperatorCategory, colors: &str) -> ObjId {
    let ids: Vec<usize> = colors.chars().map(|ch| c.operad.color_id(&ch.to_string()).expect("color")).collect();
    c.object_for(&ids).expect("object")
}

/// The arrow out of `source` over the pointed map `map` whose components
/// carry the given labels.
fn arrow(c: &OperatorCategory, source: &str, map: &str, labels: &[&str]) -> ArrowId {
    let x = object(c, source);
    c.total
        .outgoing(x)
        .iter()
        .copied()
        .find(|&f| {
            c.base.map(c.projection.arrows[f]).to_string() == map
                && c.components(f).iter().map(|p| p.label.to_string()).eq(labels.iter().map(|s| s.to_string()))
        })
        .unwrap_or_else(|| panic!("no arrow from {source} over {map} with {labels:?}"))
}

fn rewired(c: &OperatorCategory, g: ArrowId, f: ArrowId, h: ArrowId) -> OperatorCategory {
    let mut out = c.clone();
    out.total = c.total.with_composite(g, f, h);
    out.projection.source = out.total.clone();
    out
}

/// Ten named corruptions of the category of operators of the two-color
/// sample operad at arity bound 2. Each changes one composite, one marking
/// bit, one projection entry, or adds one object.
pub fn mutation_corpus() -> Vec<(String, OperatorCategory)> {
    let c = operator_category(&sample_operad(), 2);
    let mut out = Vec::new();

    let twist = arrow(&c, "bb", "2->2:[1,2]", &["t", "id"]);
    let lift = arrow(&c, "bb", "2->1:[1,0]", &["id"]);
    out.push(("lift-composite".to_string(), rewired(&c, lift, twist, lift)));

    let fold = arrow(&c, "aa", "2->1:[1,1]", &["m"]);
    let kill = arrow(&c, "a", "1->1:[0]", &["m"]);
    out.push(("wrong-base".to_string(), rewired(&c, kill, fold, fold)));

    let mut m = c.clone();
    m.marked[lift] = false;
    out.push(("unmarked-lift".to_string(), m));

    let mut m = c.clone();
    m.marked[fold] = true;
    out.push(("marked-active".to_string(), m));

    let p = arrow(&c, "a", "1->1:[1]", &["p"]);
    let mut m = c.clone();
    m.marked[p] = true;
    out.push(("marked-non-cocartesian".to_string(), m));

    let mut m = c.clone();
    m.projection.objects[object(&c, "b")] = 2;
    out.push(("object-moved".to_string(), m));

    let (total, z) = c.total.with_extra_object("<1>(z)");
    let mut m = c.clone();
    m.total = total.clone();
    m.projection.source = total;
    m.projection.objects.push(1);
    m.projection.arrows.push(c.base.arrow(&crate::finstar::PointedMap::identity(1)).expect("id"));
    m.marked.push(true);
    debug_assert_eq!(m.total.identity(z), m.marked.len() - 1);
    out.push(("extra-object".to_string(), m));

    let mut m = c.clone();
    m.projection.arrows[p] = c.base.arrow(&"1->1:[0]".parse().expect("map")).expect("in base");
    out.push(("arrow-projection".to_string(), m));

    let t = arrow(&c, "b", "1->1:[1]", &["t"]);
    let id_b = c.total.identity(object(&c, "b"));
    out.push(("identity-composite".to_string(), rewired(&c, id_b, t, id_b)));

    out.push(("segal-composition".to_string(), rewired(&c, t, t, t)));
    out
}
