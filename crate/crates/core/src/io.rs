//! JSON file formats for groups and relational structures.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::PermutationGroup;
use crate::perm::Permutation;
use crate::structures::{Digraph, RelationalStructure};

#[derive(Deserialize)]
struct GroupFile {
    degree: usize,
    generators: Option<Vec<String>>,
    generator_images: Option<Vec<Vec<usize>>>,
}

#[derive(Serialize)]
struct GroupOut<'a> {
    degree: usize,
    generators: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<&'a str>,
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

/// Reads a group from either the cycle-notation or the image-list form.
pub fn group_from_json(text: &str) -> Result<PermutationGroup> {
    let f: GroupFile = serde_json::from_str(text).map_err(parse_err)?;
    let gens = match (f.generators, f.generator_images) {
        (Some(cycles), None) => cycles
            .iter()
            .map(|c| Permutation::parse(c, f.degree))
            .collect::<Result<Vec<_>>>()?,
        (None, Some(images)) => images
            .into_iter()
            .map(|img| {
                if img.len() != f.degree {
                    return Err(Error::DegreeMismatch {
                        expected: f.degree,
                        found: img.len(),
                    });
                }
                Permutation::from_images(img)
            })
            .collect::<Result<Vec<_>>>()?,
        (None, None) => Vec::new(),
        (Some(_), Some(_)) => {
            return Err(Error::Parse("give either generators or generator_images, not both".into()))
        }
    };
    PermutationGroup::new(f.degree, gens)
}

/// Writes a group in cycle notation, optionally tagged with a name.
pub fn group_to_json(g: &PermutationGroup, name: Option<&str>) -> String {
    let out = GroupOut {
        degree: g.degree(),
        generators: g.generators().iter().map(|p| p.to_string()).collect(),
        name,
    };
    serde_json::to_string_pretty(&out).expect("group serializes")
}

#[derive(Deserialize)]
struct RelationFile {
    arity: usize,
    tuples: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StructureFile {
    vertices: usize,
    relations: Option<Vec<RelationFile>>,
    edges: Option<Vec<(usize, usize)>>,
}

#[derive(Serialize)]
struct RelationOut<'a> {
    arity: usize,
    tuples: Vec<&'a Vec<usize>>,
}

#[derive(Serialize)]
struct StructureOut<'a> {
    vertices: usize,
    relations: Vec<RelationOut<'a>>,
}

/// Reads a structure, accepting the digraph shorthand with `edges`.
pub fn structure_from_json(text: &str) -> Result<RelationalStructure> {
    let f: StructureFile = serde_json::from_str(text).map_err(parse_err)?;
    match (f.relations, f.edges) {
        (Some(rels), None) => RelationalStructure::new(
            f.vertices,
            rels.into_iter().map(|r| (r.arity, r.tuples)).collect(),
        ),
        (None, Some(edges)) => Ok(Digraph::new(f.vertices, edges)?.to_structure()),
        (None, None) => RelationalStructure::new(f.vertices, Vec::new()),
        (Some(_), Some(_)) => Err(Error::Parse("give either relations or edges, not both".into())),
    }
}

pub fn structure_to_json(r: &RelationalStructure) -> String {
    let out = StructureOut {
        vertices: r.vertices(),
        relations: r
            .relations()
            .iter()
            .map(|rel| RelationOut {
                arity: rel.arity,
                tuples: rel.tuples.iter().collect(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&out).expect("structure serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_group_forms() {
        let a = group_from_json(r#"{"degree": 4, "generators": ["(1 2 3 4)", "(1 2)"]}"#).unwrap();
        let b = group_from_json(r#"{"degree": 4, "generator_images": [[1,2,3,0],[1,0,2,3]]}"#).unwrap();
        assert_eq!(a.order_u128(), Some(24));
        assert!(a.same_group(&b));
    }

    #[test]
    fn group_round_trip() {
        let g = PermutationGroup::alternating(5);
        let back = group_from_json(&group_to_json(&g, Some("alt(5)"))).unwrap();
        assert!(g.same_group(&back));
    }

    #[test]
    fn group_errors() {
        assert!(matches!(group_from_json("{degree: 3"), Err(Error::Parse(_))));
        assert!(matches!(
            group_from_json(r#"{"degree": 3, "generators": ["(1 4)"]}"#),
            Err(Error::PointOutOfRange { .. })
        ));
        assert!(matches!(
            group_from_json(r#"{"degree": 3, "generator_images": [[1,0]]}"#),
            Err(Error::DegreeMismatch { .. })
        ));
        assert!(matches!(
            group_from_json(r#"{"degree": 3, "generators": [], "generator_images": []}"#),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn structures() {
        let d = structure_from_json(r#"{"vertices": 3, "edges": [[1,0],[2,1],[0,2]]}"#).unwrap();
        assert_eq!(d, Digraph::cycle_directed(3).unwrap().to_structure());
        let back = structure_from_json(&structure_to_json(&d)).unwrap();
        assert_eq!(back, d);
        assert!(matches!(
            structure_from_json(r#"{"vertices": 2, "edges": [[0,5]]}"#),
            Err(Error::VertexOutOfRange { .. })
        ));
    }
}
