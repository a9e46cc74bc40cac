#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "gcx/basis.hpp"
#include "gcx/complexes.hpp"
#include "gcx/linalg.hpp"

namespace gcx {

struct Chain {
    ComplexId id;
    std::map<std::string, mpq_class> terms;  // canonical encoding -> nonzero coefficient

    void add(const std::string& enc, const mpq_class& c);
    Chain& operator+=(const Chain& o);
    Chain& operator-=(const Chain& o);
    Chain& operator*=(const mpq_class& c);
    bool empty() const { return terms.empty(); }
    std::size_t size() const { return terms.size(); }
    mpq_class coeff(const std::string& enc) const;

    friend bool operator==(const Chain& a, const Chain& b) { return a.terms == b.terms; }
};

Chain operator+(Chain a, const Chain& b);
Chain operator-(Chain a, const Chain& b);
Chain operator*(const mpq_class& c, Chain a);

// Coefficient-weighted single generator, canonicalized.
Chain chain_of(const ComplexId& c, const LabeledGraph& g, const mpq_class& coeff = 1);

enum class DeltaPart { vertex_split, edge_retype, white_split, white_blacken };

// site: vertex index for splits, edge index for retype.
Chain delta_part(DeltaPart part, const ComplexId& c, const LabeledGraph& g, int site);
Chain delta(const ComplexId& c, const LabeledGraph& g);
Chain delta(const Chain& x);

// Order of the (edge, white vertex) pair created for each satellite of the
// white-to-black part: true puts the edge first. Pairs have even total
// degree so only the internal order matters.
inline constexpr bool kSatelliteEdgeFirst = true;

SparseMatrix delta_matrix(Workspace& ws, const ComplexId& c, int g, int k, const Field& f = Field::Q());

// Sum over vertices v of a of all ways of substituting b into v.
Chain pre_lie_insert(const ComplexId& c, const LabeledGraph& a, const LabeledGraph& b, bool require_generators = true);
Chain lie_bracket(const ComplexId& c, const LabeledGraph& a, const LabeledGraph& b);
Chain pre_lie_insert(const Chain& a, const Chain& b);
Chain lie_bracket(const Chain& a, const Chain& b);

enum class MapTag { f, s, z, j, iota, F_t, F_or, mu, inclusion, projection };

struct MapId {
    MapTag tag;
    ComplexId source;
    ComplexId target;
};

std::string map_tag_name(MapTag t);
MapTag parse_map_tag(const std::string& s);

// Standard source/target for a map at parameter d (the source's d).
// inclusion/projection need an explicit make_map(tag, source, target).
MapId make_map(MapTag tag, int d);
MapId make_map(MapTag tag, const ComplexId& source, const ComplexId& target);

Chain apply_map(const MapId& m, const LabeledGraph& g);
Chain apply_map(const MapId& m, const Chain& x);

// Degree shift of the map: target degree = source degree + map_degree.
int map_degree(const MapId& m);

SparseMatrix map_matrix(Workspace& ws, const MapId& m, int g, int k, const Field& f = Field::Q());

struct ChainMapViolation {
    int degree;
    std::string column;
};

struct ChainMapReport {
    MapId map;
    int g = 0;
    std::vector<int> degrees_checked;
    long long columns_checked = 0;
    std::vector<ChainMapViolation> violations;
    bool ok() const { return violations.empty(); }
};

ChainMapReport verify_chain_map(Workspace& ws, const MapId& m, int g);

// Relations of the trivalent quotient: one column per (graph, contractible
// solid edge), rows indexed by the trivalent basis at (g, k).
SparseMatrix relation_matrix(Workspace& ws, const ComplexId& c, int g, int k);
// Relation spans for quotient families (IHX for oGC3, the valence >= 5
// closure for GC_leq4); empty for other families.
SparseMatrix quotient_relations(Workspace& ws, const ComplexId& c, int g, int k);
// The ambient complex whose differential closure defines the quotient.
ComplexId quotient_ambient(const ComplexId& c);

}  // namespace gcx
