#include "doctest.h"

#include "freydlab/diagram.hpp"

using namespace freydlab;

namespace {

Quiver loop_quiver() {
    Quiver q;
    q.add_vertex("*");
    q.add_edge("e", 0, 0);
    return q;
}

Quiver arrow_quiver() {
    Quiver q;
    q.add_vertex("0");
    q.add_vertex("1");
    q.add_edge("a", 0, 1);
    return q;
}

}  // namespace

TEST_CASE("path enumeration") {
    Quiver point;
    point.add_vertex("*");
    auto ps = enumerate_paths(point, 0, 0, 5);
    REQUIRE(ps.size() == 1);  // only the identity
    CHECK(ps[0].edges.empty());

    // loop: id, e, e^2, ...
    auto loops = enumerate_paths(loop_quiver(), 0, 0, 3);
    CHECK(loops.size() == 4);

    // one arrow: three morphisms total
    Quiver a = arrow_quiver();
    size_t total = 0;
    for (int u = 0; u < 2; ++u)
        for (int v = 0; v < 2; ++v) total += enumerate_paths(a, u, v, 10).size();
    CHECK(total == 3);
    CHECK(a.is_acyclic());
    CHECK_FALSE(loop_quiver().is_acyclic());
}

TEST_CASE("rewriting closure: loop with identity relation collapses to the point") {
    Quiver q = loop_quiver();
    Decoration dec;
    dec.relations.push_back({Path{0, {0}}, Path{0, {}}});  // e = id
    FinCat c = fincat_from_decoration(q, dec);
    CHECK(c.objects.size() == 1);
    CHECK(c.mors.size() == 1);
}

TEST_CASE("rewriting closure: free arrow quiver is already finite") {
    FinCat c = fincat_from_decoration(arrow_quiver(), Decoration{});
    CHECK(c.objects.size() == 2);
    CHECK(c.mors.size() == 3);
}

TEST_CASE("rewriting closure: idempotent loop gives the two-morphism monoid") {
    Quiver q = loop_quiver();
    Decoration dec;
    dec.relations.push_back({Path{0, {0, 0}}, Path{0, {0}}});  // e.e = e
    FinCat c = fincat_from_decoration(q, dec);
    CHECK(c.mors.size() == 2);
    int e = -1;
    for (size_t i = 0; i < c.mors.size(); ++i)
        if (static_cast<int>(i) != c.identity[0]) e = static_cast<int>(i);
    REQUIRE(e >= 0);
    CHECK(c.comp[e][e] == e);
}

TEST_CASE("rewriting closure: free loop does not terminate") {
    CHECK_THROWS_WITH_AS(fincat_from_decoration(loop_quiver(), Decoration{}, 50),
                         doctest::Contains("NonFinite"), Error);
}

TEST_CASE("pairs category on the ordinal 2") {
    FinCat two = FinCat::ordinal2();
    PairCat p = pairs_category(two, all_morphisms(two));
    CHECK(p.objects.size() == 3);  // (1,0), (0,0), (1,1)
    // brute-force square count: all (h,k) pairs with h f = f' k
    size_t squares = 0;
    for (int f : p.objects)
        for (int fp : p.objects)
            for (size_t h = 0; h < two.mors.size(); ++h)
                for (size_t k = 0; k < two.mors.size(); ++k) {
                    if (two.mors[h].src != two.mors[f].dst ||
                        two.mors[h].dst != two.mors[fp].dst)
                        continue;
                    if (two.mors[k].src != two.mors[f].src ||
                        two.mors[k].dst != two.mors[fp].src)
                        continue;
                    if (two.comp[static_cast<int>(h)][f] == two.comp[fp][static_cast<int>(k)])
                        ++squares;
                }
    CHECK(p.squares.size() == squares);

    PairCat pt = pairs_category(FinCat::point(), {0});
    CHECK(pt.objects.size() == 1);

    FinCat three = FinCat::chain(3);
    PairCat p3 = pairs_category(three, all_morphisms(three));
    CHECK(p3.objects.size() == 6);

    // non-closed distinguished set: u01 and u12 without u02
    std::vector<int> bad = {three.identity[0], three.identity[1], three.identity[2],
                            three.mor_index("u01"), three.mor_index("u12")};
    CHECK_THROWS_WITH_AS(pairs_category(three, bad), doctest::Contains("NotSubcategory"), Error);
}

TEST_CASE("triples") {
    FinCat two = FinCat::ordinal2();
    PairCat p = pairs_category(two, all_morphisms(two));
    auto ts = enumerate_triples(p);
    CHECK(ts.size() == 4);  // two identity-only ones plus the two listed pairs
    int nontrivial = 0;
    for (const auto& t : ts)
        if (t.f != two.identity[two.mors[t.f].src] || t.g != two.identity[two.mors[t.g].src])
            ++nontrivial;
    CHECK(nontrivial == 2);

    PairCat pt = pairs_category(FinCat::point(), {0});
    CHECK(enumerate_triples(pt).size() == 1);

    FinCat three = FinCat::chain(3);
    PairCat p3 = pairs_category(three, all_morphisms(three));
    bool found = false;
    for (const auto& t : enumerate_triples(p3))
        if (three.mors[t.f].name == "u01" && three.mors[t.g].name == "u12") found = true;
    CHECK(found);

    auto cubes = enumerate_del_cubes(p, ts);
    CHECK(cubes.size() >= ts.size());  // identity cubes at least
}

TEST_CASE("nori diagram shapes") {
    FinCat two = FinCat::ordinal2();
    PairCat p = pairs_category(two, all_morphisms(two));

    NoriDiagram d0 = nori_diagram(p, 0, 0);
    CHECK(d0.quiver.vertices.size() == 3);
    CHECK(d0.del_edges.empty());

    NoriDiagram d1 = nori_diagram(p, -1, 1);
    CHECK(d1.quiver.vertices.size() == 9);
    CHECK(d1.del_edges.size() == enumerate_triples(p).size() * 2);  // degrees 1 and 0
    for (const auto& de : d1.del_edges) {
        auto [src_obj, src_deg] = d1.vertex_info[d1.quiver.edges[de.edge].src];
        auto [dst_obj, dst_deg] = d1.vertex_info[d1.quiver.edges[de.edge].dst];
        CHECK(dst_deg == src_deg - 1);
    }

    PairCat pt = pairs_category(FinCat::point(), {0});
    NoriDiagram dp = nori_diagram(pt, -2, 2);
    CHECK(dp.quiver.vertices.size() == 5);
    CHECK(dp.del_edges.size() == 4);

    CHECK_THROWS_WITH_AS(nori_diagram(p, 1, 0), doctest::Contains("EmptyWindow"), Error);
}

TEST_CASE("duality is involutive") {
    Quiver a = arrow_quiver();
    Quiver aa = a.dual().dual();
    CHECK(aa.edges[0].src == a.edges[0].src);
    CHECK(aa.edges[0].dst == a.edges[0].dst);

    FinCat two = FinCat::ordinal2();
    FinCat d = two.dual();
    d.validate();
    int arrow = d.mor_index("u01");
    CHECK(d.mors[arrow].src == 1);
    CHECK(d.mors[arrow].dst == 0);
    FinCat dd = d.dual();
    dd.validate();
    CHECK(dd.mors[arrow].src == two.mors[arrow].src);

    CHECK(two.final_object() == 1);
    CHECK(two.initial_object() == 0);
    CHECK(FinCat::chain(3).is_strictly_initial(0));
}
