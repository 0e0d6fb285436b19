use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::graph::{BipartiteGraph, VertexRef};
use crate::pattern::Pattern;

impl Serialize for VertexRef {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for VertexRef {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(|e: crate::Error| D::Error::custom(e.to_string()))
    }
}

impl Serialize for Pattern {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Pattern {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(|e: crate::Error| D::Error::custom(e.to_string()))
    }
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    a: usize,
    b: usize,
    edges: Vec<(usize, usize)>,
}

impl Serialize for BipartiteGraph {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphRepr { a: self.a(), b: self.b(), edges: self.edges().collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BipartiteGraph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = GraphRepr::deserialize(d)?;
        BipartiteGraph::from_edges(r.a, r.b, &r.edges).map_err(|e| D::Error::custom(e.to_string()))
    }
}
