#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "freydlab/ring.hpp"

namespace freydlab {

struct Quiver {
    std::vector<std::string> vertices;
    struct Edge {
        std::string label;
        int src, dst;
    };
    std::vector<Edge> edges;

    int add_vertex(const std::string& name);
    int add_edge(const std::string& label, int src, int dst);
    int vertex_index(const std::string& name) const;  // -1 if absent
    int edge_index(const std::string& label) const;
    Quiver dual() const;
    bool is_acyclic() const;
};

// A composable edge word in a quiver; the empty word is the identity at src.
struct Path {
    int src = 0;
    std::vector<int> edges;

    int dst(const Quiver& q) const {
        return edges.empty() ? src : q.edges[edges.back()].dst;
    }
    bool valid(const Quiver& q) const;
    // g.after(f) = g∘f when f.dst == g.src (f's word first)
    static Path compose(const Quiver& q, const Path& g, const Path& f);
    bool operator==(const Path& o) const { return src == o.src && edges == o.edges; }
    bool operator<(const Path& o) const;
    std::string to_string(const Quiver& q) const;
};

// All paths u -> v of length <= maxlen, shortest first, lexicographic within
// a length.
std::vector<Path> enumerate_paths(const Quiver& q, int u, int v, int maxlen);

struct Decoration {
    struct Relation {
        Path lhs, rhs;  // parallel: same src and dst
    };
    std::vector<Relation> relations;
    std::vector<int> distinguished_vertices;
    std::vector<int> distinguished_edges;
};

// Explicit finite category; composition verified associative and unital on
// validate().
struct FinCat {
    std::vector<std::string> objects;
    struct Mor {
        std::string name;
        int src, dst;
    };
    std::vector<Mor> mors;
    std::vector<int> identity;           // per object
    std::vector<std::vector<int>> comp;  // comp[g][f] = g after f, -1 if shapes differ

    int compose(int g, int f) const;
    std::vector<int> hom(int u, int v) const;
    int mor_index(const std::string& name) const;
    void validate() const;  // throws NotACategory
    FinCat dual() const;
    std::optional<int> final_object() const;    // unique morphism into it from each object
    std::optional<int> initial_object() const;  // unique morphism out of it
    bool is_strictly_initial(int obj) const;

    static FinCat point();    // the one-object one-morphism category
    static FinCat ordinal2(); // 0 -> 1
    static FinCat chain(int n);  // poset 0 -> 1 -> ... -> n-1
    static FinCat from_monoid(const std::vector<std::string>& names,
                              const std::vector<std::vector<int>>& table, int unit);
};

// Bounded rewriting closure of the path category modulo the decoration's
// relations.  Throws NonFinite (naming paths that kept growing) when the
// class enumeration exceeds `bound` paths.
FinCat fincat_from_decoration(const Quiver& q, const Decoration& dec, int bound = 1000);

// The category of pairs over a distinguished subcategory: objects are the
// distinguished morphisms, morphisms are commuting squares.
struct PairCat {
    FinCat base;
    std::vector<int> distinguished;        // base morphism indices (sorted)
    std::vector<int> objects;              // = distinguished (object k is mors[objects[k]])
    struct Square {
        int h, k;  // base morphisms: h on targets, k on sources
        int src_obj, dst_obj;
        std::string name;
    };
    std::vector<Square> squares;
    FinCat cat;  // the pair category itself (objects/squares), validated

    int obj_of_mor(int base_mor) const;    // -1 if not distinguished
    int obj_target(int obj) const { return base.mors[objects[obj]].dst; }  // X of (X,Y)
    int obj_source(int obj) const { return base.mors[objects[obj]].src; }  // Y of (X,Y)
    std::string obj_name(int obj) const;
    int square_index(int h, int k, int src_obj, int dst_obj) const;
};

PairCat pairs_category(const FinCat& c, const std::vector<int>& distinguished);
std::vector<int> all_morphisms(const FinCat& c);

// Composable pair of distinguished morphisms f: Z->Y, g: Y->X with the
// induced squares alpha = (g, id): (Y,Z)->(X,Z) and beta = (id, f):
// (X,Z)->(X,Y).
struct Triple {
    int f, g, gf;              // base morphism indices
    int obj_yz, obj_xz, obj_xy;  // pair objects
    int alpha, beta;             // pair squares
    std::string name;
};

std::vector<Triple> enumerate_triples(const PairCat& p);

// Commuting square between the boundary spans of two triples; kappa is the
// induced middle square.
struct DelCube {
    int triple_from, triple_to;
    int gamma, delta, kappa;  // squares (Y,Z)->(Y',Z'), (X,Y)->(X',Y'), (X,Z)->(X',Z')
};

std::vector<DelCube> enumerate_del_cubes(const PairCat& p, const std::vector<Triple>& triples);

struct NoriDiagram {
    int lo, hi;
    Quiver quiver;
    // vertex v <-> (pair object, degree)
    std::vector<std::pair<int, int>> vertex_info;
    std::map<std::pair<int, int>, int> vertex_of;
    struct GammaEdge {
        int square, degree, edge;
    };
    struct DelEdge {
        int triple, degree, edge;  // from (obj_xy, degree) to (obj_yz, degree-1)
    };
    std::vector<GammaEdge> gamma_edges;
    std::vector<DelEdge> del_edges;
    std::vector<Triple> triples;
};

NoriDiagram nori_diagram(const PairCat& p, int lo, int hi);

}  // namespace freydlab
