#include "freydlab/diagram.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>

namespace freydlab {

int Quiver::add_vertex(const std::string& name) {
    if (vertex_index(name) >= 0) throw Error("DuplicateLabel", "vertex " + name);
    vertices.push_back(name);
    return static_cast<int>(vertices.size()) - 1;
}

int Quiver::add_edge(const std::string& label, int src, int dst) {
    if (edge_index(label) >= 0) throw Error("DuplicateLabel", "edge " + label);
    if (src < 0 || src >= static_cast<int>(vertices.size()) || dst < 0 ||
        dst >= static_cast<int>(vertices.size()))
        throw Error("BadVertex", "edge " + label + " endpoints out of range");
    edges.push_back({label, src, dst});
    return static_cast<int>(edges.size()) - 1;
}

int Quiver::vertex_index(const std::string& name) const {
    for (size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == name) return static_cast<int>(i);
    return -1;
}

int Quiver::edge_index(const std::string& label) const {
    for (size_t i = 0; i < edges.size(); ++i)
        if (edges[i].label == label) return static_cast<int>(i);
    return -1;
}

Quiver Quiver::dual() const {
    Quiver d;
    d.vertices = vertices;
    for (const auto& e : edges) d.edges.push_back({e.label, e.dst, e.src});
    return d;
}

bool Quiver::is_acyclic() const {
    int n = static_cast<int>(vertices.size());
    std::vector<int> state(n, 0);
    std::function<bool(int)> dfs = [&](int v) {
        state[v] = 1;
        for (const auto& e : edges)
            if (e.src == v) {
                if (state[e.dst] == 1) return false;
                if (state[e.dst] == 0 && !dfs(e.dst)) return false;
            }
        state[v] = 2;
        return true;
    };
    for (int v = 0; v < n; ++v)
        if (state[v] == 0 && !dfs(v)) return false;
    return true;
}

bool Path::valid(const Quiver& q) const {
    int at = src;
    for (int e : edges) {
        if (e < 0 || e >= static_cast<int>(q.edges.size()) || q.edges[e].src != at) return false;
        at = q.edges[e].dst;
    }
    return true;
}

Path Path::compose(const Quiver& q, const Path& g, const Path& f) {
    if (f.dst(q) != g.src) throw Error("NotComposable", "path composition endpoint mismatch");
    Path r;
    r.src = f.src;
    r.edges = f.edges;
    r.edges.insert(r.edges.end(), g.edges.begin(), g.edges.end());
    return r;
}

bool Path::operator<(const Path& o) const {
    if (edges.size() != o.edges.size()) return edges.size() < o.edges.size();
    if (src != o.src) return src < o.src;
    return edges < o.edges;
}

std::string Path::to_string(const Quiver& q) const {
    if (edges.empty()) return "id_" + q.vertices[src];
    std::string s;
    for (size_t i = 0; i < edges.size(); ++i) s += (i ? "." : "") + q.edges[edges[i]].label;
    return s;
}

std::vector<Path> enumerate_paths(const Quiver& q, int u, int v, int maxlen) {
    std::vector<Path> out;
    std::deque<Path> work;
    work.push_back(Path{u, {}});
    while (!work.empty()) {
        Path p = work.front();
        work.pop_front();
        if (p.dst(q) == v) out.push_back(p);
        if (static_cast<int>(p.edges.size()) >= maxlen) continue;
        int at = p.dst(q);
        for (size_t e = 0; e < q.edges.size(); ++e)
            if (q.edges[e].src == at) {
                Path np = p;
                np.edges.push_back(static_cast<int>(e));
                work.push_back(np);
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int FinCat::compose(int g, int f) const {
    int r = comp[g][f];
    if (r < 0) throw Error("NotComposable", mors[g].name + " after " + mors[f].name);
    return r;
}

std::vector<int> FinCat::hom(int u, int v) const {
    std::vector<int> out;
    for (size_t i = 0; i < mors.size(); ++i)
        if (mors[i].src == u && mors[i].dst == v) out.push_back(static_cast<int>(i));
    return out;
}

int FinCat::mor_index(const std::string& name) const {
    for (size_t i = 0; i < mors.size(); ++i)
        if (mors[i].name == name) return static_cast<int>(i);
    return -1;
}

void FinCat::validate() const {
    int n = static_cast<int>(mors.size());
    if (identity.size() != objects.size()) throw Error("NotACategory", "missing identities");
    if (static_cast<int>(comp.size()) != n) throw Error("NotACategory", "bad table");
    for (size_t o = 0; o < objects.size(); ++o) {
        int id = identity[o];
        if (mors[id].src != static_cast<int>(o) || mors[id].dst != static_cast<int>(o))
            throw Error("NotACategory", "identity of " + objects[o] + " has wrong endpoints");
    }
    for (int g = 0; g < n; ++g)
        for (int f = 0; f < n; ++f) {
            int r = comp[g][f];
            bool composable = mors[f].dst == mors[g].src;
            if (!composable) {
                if (r != -1) throw Error("NotACategory", "composite of non-composable pair");
                continue;
            }
            if (r < 0 || r >= n) throw Error("NotACategory", "composition not closed");
            if (mors[r].src != mors[f].src || mors[r].dst != mors[g].dst)
                throw Error("NotACategory", "composite endpoints wrong");
        }
    for (int f = 0; f < n; ++f) {
        if (comp[identity[mors[f].dst]][f] != f || comp[f][identity[mors[f].src]] != f)
            throw Error("NotACategory", "identity law fails at " + mors[f].name);
    }
    for (int h = 0; h < n; ++h)
        for (int g = 0; g < n; ++g) {
            if (mors[g].dst != mors[h].src) continue;
            int hg = comp[h][g];
            for (int f = 0; f < n; ++f) {
                if (mors[f].dst != mors[g].src) continue;
                if (comp[h][comp[g][f]] != comp[hg][f])
                    throw Error("NotACategory", "associativity fails");
            }
        }
}

FinCat FinCat::dual() const {
    FinCat d;
    d.objects = objects;
    d.identity = identity;
    for (const auto& m : mors) d.mors.push_back({m.name, m.dst, m.src});
    int n = static_cast<int>(mors.size());
    d.comp.assign(n, std::vector<int>(n, -1));
    for (int g = 0; g < n; ++g)
        for (int f = 0; f < n; ++f) d.comp[g][f] = comp[f][g];
    return d;
}

std::optional<int> FinCat::final_object() const {
    for (size_t t = 0; t < objects.size(); ++t) {
        bool ok = true;
        for (size_t u = 0; u < objects.size() && ok; ++u)
            if (hom(static_cast<int>(u), static_cast<int>(t)).size() != 1) ok = false;
        if (ok) return static_cast<int>(t);
    }
    return std::nullopt;
}

std::optional<int> FinCat::initial_object() const {
    for (size_t t = 0; t < objects.size(); ++t) {
        bool ok = true;
        for (size_t u = 0; u < objects.size() && ok; ++u)
            if (hom(static_cast<int>(t), static_cast<int>(u)).size() != 1) ok = false;
        if (ok) return static_cast<int>(t);
    }
    return std::nullopt;
}

bool FinCat::is_strictly_initial(int obj) const {
    auto init = initial_object();
    if (!init || *init != obj) return false;
    for (size_t m = 0; m < mors.size(); ++m) {
        if (mors[m].dst != obj) continue;
        bool has_inverse = false;
        for (int r : hom(obj, mors[m].src))
            if (comp[r][static_cast<int>(m)] == identity[mors[m].src] &&
                comp[static_cast<int>(m)][r] == identity[obj])
                has_inverse = true;
        if (!has_inverse) return false;
    }
    return true;
}

FinCat FinCat::point() {
    FinCat c;
    c.objects = {"*"};
    c.mors = {{"id_*", 0, 0}};
    c.identity = {0};
    c.comp = {{0}};
    c.validate();
    return c;
}

FinCat FinCat::ordinal2() { return chain(2); }

FinCat FinCat::chain(int n) {
    FinCat c;
    for (int i = 0; i < n; ++i) c.objects.push_back(std::to_string(i));
    std::map<std::pair<int, int>, int> idx;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            std::string name = i == j ? "id_" + std::to_string(i)
                                      : "u" + std::to_string(i) + std::to_string(j);
            idx[{i, j}] = static_cast<int>(c.mors.size());
            c.mors.push_back({name, i, j});
        }
    for (int i = 0; i < n; ++i) c.identity.push_back(idx[{i, i}]);
    int m = static_cast<int>(c.mors.size());
    c.comp.assign(m, std::vector<int>(m, -1));
    for (int g = 0; g < m; ++g)
        for (int f = 0; f < m; ++f)
            if (c.mors[f].dst == c.mors[g].src)
                c.comp[g][f] = idx[{c.mors[f].src, c.mors[g].dst}];
    c.validate();
    return c;
}

FinCat FinCat::from_monoid(const std::vector<std::string>& names,
                           const std::vector<std::vector<int>>& table, int unit) {
    FinCat c;
    c.objects = {"*"};
    for (const auto& n : names) c.mors.push_back({n, 0, 0});
    c.identity = {unit};
    c.comp = table;
    c.validate();
    return c;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    int add() {
        parent.push_back(static_cast<int>(parent.size()));
        return parent.back();
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[std::max(a, b)] = std::min(a, b);
        return true;
    }
};

}  // namespace

FinCat fincat_from_decoration(const Quiver& q, const Decoration& dec, int bound) {
    for (const auto& rel : dec.relations) {
        if (!rel.lhs.valid(q) || !rel.rhs.valid(q))
            throw Error("BadRelation", "relation path not valid in the quiver");
        if (rel.lhs.src != rel.rhs.src || rel.lhs.dst(q) != rel.rhs.dst(q))
            throw Error("BadRelation", "relation sides are not parallel");
    }
    size_t max_rel_len = 1;
    for (const auto& rel : dec.relations)
        max_rel_len = std::max({max_rel_len, rel.lhs.edges.size(), rel.rhs.edges.size()});

    for (int level = static_cast<int>(max_rel_len) + 1;; ++level) {
        int L = 2 * level + 1;
        std::vector<Path> paths;
        std::map<Path, int> index;
        bool overflow = false;
        std::deque<Path> work;
        for (int v = 0; v < static_cast<int>(q.vertices.size()); ++v)
            work.push_back(Path{v, {}});
        while (!work.empty()) {
            Path p = work.front();
            work.pop_front();
            index[p] = static_cast<int>(paths.size());
            paths.push_back(p);
            if (static_cast<int>(paths.size()) > bound) {
                overflow = true;
                break;
            }
            if (static_cast<int>(p.edges.size()) >= L) continue;
            int at = p.dst(q);
            for (size_t e = 0; e < q.edges.size(); ++e)
                if (q.edges[e].src == at) {
                    Path np = p;
                    np.edges.push_back(static_cast<int>(e));
                    work.push_back(np);
                }
        }
        if (overflow) {
            std::string growing;
            int shown = 0;
            for (auto it = paths.rbegin(); it != paths.rend() && shown < 3; ++it, ++shown)
                growing += (shown ? ", " : "") + it->to_string(q);
            throw Error("NonFinite", "rewriting closure exceeded bound " + std::to_string(bound) +
                                         "; still growing: " + growing);
        }

        UnionFind uf;
        for (size_t i = 0; i < paths.size(); ++i) uf.add();
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t i = 0; i < paths.size(); ++i) {
                const Path& p = paths[i];
                for (const auto& rel : dec.relations) {
                    for (int dir = 0; dir < 2; ++dir) {
                        const Path& from = dir ? rel.rhs : rel.lhs;
                        const Path& to = dir ? rel.lhs : rel.rhs;
                        if (from.edges.size() > p.edges.size()) continue;
                        for (size_t pos = 0; pos + from.edges.size() <= p.edges.size(); ++pos) {
                            int at = p.src;
                            for (size_t t = 0; t < pos; ++t) at = q.edges[p.edges[t]].dst;
                            if (at != from.src) continue;
                            bool match = true;
                            for (size_t t = 0; t < from.edges.size() && match; ++t)
                                if (p.edges[pos + t] != from.edges[t]) match = false;
                            if (!match) continue;
                            Path np;
                            np.src = p.src;
                            np.edges.assign(p.edges.begin(), p.edges.begin() + pos);
                            np.edges.insert(np.edges.end(), to.edges.begin(), to.edges.end());
                            np.edges.insert(np.edges.end(),
                                            p.edges.begin() + pos + from.edges.size(),
                                            p.edges.end());
                            auto it = index.find(np);
                            if (it != index.end())
                                if (uf.unite(static_cast<int>(i), it->second)) changed = true;
                        }
                    }
                }
            }
        }

        std::map<int, Path> rep;
        for (size_t i = 0; i < paths.size(); ++i) {
            int r = uf.find(static_cast<int>(i));
            auto it = rep.find(r);
            if (it == rep.end() || paths[i] < it->second) rep[r] = paths[i];
        }
        size_t ell = 0;
        for (auto& [root, re] : rep) ell = std::max(ell, re.edges.size());
        if (static_cast<int>(2 * ell) > L) continue;

        bool closed = true;
        for (auto& [root, re] : rep) {
            if (!closed) break;
            for (auto& [root2, re2] : rep) {
                if (re.dst(q) != re2.src) continue;
                Path c = Path::compose(q, re2, re);
                if (index.find(c) == index.end()) {
                    closed = false;
                    break;
                }
            }
        }
        if (!closed) continue;

        std::vector<int> roots;
        std::map<int, int> mor_of_root;
        for (auto& [root, re] : rep) roots.push_back(root);
        std::sort(roots.begin(), roots.end(),
                  [&](int a, int b) { return rep[a] < rep[b]; });
        FinCat c;
        c.objects = q.vertices;
        for (int r : roots) {
            mor_of_root[r] = static_cast<int>(c.mors.size());
            c.mors.push_back({rep[r].to_string(q), rep[r].src, rep[r].dst(q)});
        }
        c.identity.assign(q.vertices.size(), -1);
        for (int v = 0; v < static_cast<int>(q.vertices.size()); ++v)
            c.identity[v] = mor_of_root[uf.find(index[Path{v, {}}])];
        int n = static_cast<int>(c.mors.size());
        c.comp.assign(n, std::vector<int>(n, -1));
        for (int gi = 0; gi < n; ++gi)
            for (int fi = 0; fi < n; ++fi) {
                const Path& fp = rep[roots[fi]];
                const Path& gp = rep[roots[gi]];
                if (fp.dst(q) != gp.src) continue;
                Path comp = Path::compose(q, gp, fp);
                c.comp[gi][fi] = mor_of_root[uf.find(index[comp])];
            }
        c.validate();
        return c;
    }
}

std::vector<int> all_morphisms(const FinCat& c) {
    std::vector<int> out(c.mors.size());
    for (size_t i = 0; i < out.size(); ++i) out[i] = static_cast<int>(i);
    return out;
}

int PairCat::obj_of_mor(int base_mor) const {
    for (size_t i = 0; i < objects.size(); ++i)
        if (objects[i] == base_mor) return static_cast<int>(i);
    return -1;
}

std::string PairCat::obj_name(int obj) const {
    int f = objects[obj];
    int x = base.mors[f].dst, y = base.mors[f].src;
    std::string plain = "(" + base.objects[x] + "," + base.objects[y] + ")";
    int same = 0;
    for (int d : distinguished)
        if (base.mors[d].src == y && base.mors[d].dst == x) ++same;
    if (same <= 1) return plain;
    return "(" + base.objects[x] + "," + base.objects[y] + ";" + base.mors[f].name + ")";
}

int PairCat::square_index(int h, int k, int src_obj, int dst_obj) const {
    for (size_t i = 0; i < squares.size(); ++i)
        if (squares[i].h == h && squares[i].k == k && squares[i].src_obj == src_obj &&
            squares[i].dst_obj == dst_obj)
            return static_cast<int>(i);
    return -1;
}

PairCat pairs_category(const FinCat& c, const std::vector<int>& distinguished_in) {
    c.validate();
    std::vector<int> dist = distinguished_in;
    std::sort(dist.begin(), dist.end());
    dist.erase(std::unique(dist.begin(), dist.end()), dist.end());
    auto in_dist = [&](int m) { return std::binary_search(dist.begin(), dist.end(), m); };
    for (int id : c.identity)
        if (!in_dist(id))
            throw Error("NotSubcategory", "identity " + c.mors[id].name + " not distinguished");
    for (int g : dist)
        for (int f : dist)
            if (c.mors[f].dst == c.mors[g].src && !in_dist(c.comp[g][f]))
                throw Error("NotSubcategory",
                            "composite " + c.mors[c.comp[g][f]].name + " missing");

    PairCat p;
    p.base = c;
    p.distinguished = dist;
    p.objects = dist;

    for (int so = 0; so < static_cast<int>(p.objects.size()); ++so)
        for (int to = 0; to < static_cast<int>(p.objects.size()); ++to) {
            int f = p.objects[so], fp = p.objects[to];
            for (int h : c.hom(c.mors[f].dst, c.mors[fp].dst))
                for (int k : c.hom(c.mors[f].src, c.mors[fp].src))
                    if (c.comp[h][f] == c.comp[fp][k]) {
                        PairCat::Square s;
                        s.h = h;
                        s.k = k;
                        s.src_obj = so;
                        s.dst_obj = to;
                        s.name = "(" + c.mors[h].name + "," + c.mors[k].name + ")";
                        p.squares.push_back(s);
                    }
        }

    FinCat pc;
    for (int o = 0; o < static_cast<int>(p.objects.size()); ++o)
        pc.objects.push_back(p.obj_name(o));
    for (size_t s = 0; s < p.squares.size(); ++s) {
        const auto& sq = p.squares[s];
        pc.mors.push_back({sq.name + ":" + pc.objects[sq.src_obj] + ">" + pc.objects[sq.dst_obj],
                           sq.src_obj, sq.dst_obj});
    }
    pc.identity.assign(pc.objects.size(), -1);
    for (int o = 0; o < static_cast<int>(p.objects.size()); ++o) {
        int f = p.objects[o];
        int idx = p.square_index(c.identity[c.mors[f].dst], c.identity[c.mors[f].src], o, o);
        pc.identity[o] = idx;
    }
    int n = static_cast<int>(p.squares.size());
    pc.comp.assign(n, std::vector<int>(n, -1));
    for (int g = 0; g < n; ++g)
        for (int f = 0; f < n; ++f) {
            if (p.squares[f].dst_obj != p.squares[g].src_obj) continue;
            int h = c.comp[p.squares[g].h][p.squares[f].h];
            int k = c.comp[p.squares[g].k][p.squares[f].k];
            pc.comp[g][f] = p.square_index(h, k, p.squares[f].src_obj, p.squares[g].dst_obj);
        }
    pc.validate();
    p.cat = pc;
    return p;
}

std::vector<Triple> enumerate_triples(const PairCat& p) {
    std::vector<Triple> out;
    const FinCat& c = p.base;
    for (int f : p.distinguished)
        for (int g : p.distinguished) {
            if (c.mors[f].dst != c.mors[g].src) continue;
            int gf = c.comp[g][f];
            Triple t;
            t.f = f;
            t.g = g;
            t.gf = gf;
            t.obj_yz = p.obj_of_mor(f);
            t.obj_xz = p.obj_of_mor(gf);
            t.obj_xy = p.obj_of_mor(g);
            int z = c.mors[f].src, x = c.mors[g].dst;
            t.alpha = p.square_index(g, c.identity[z], t.obj_yz, t.obj_xz);
            t.beta = p.square_index(c.identity[x], f, t.obj_xz, t.obj_xy);
            if (t.alpha < 0 || t.beta < 0) throw Error("Internal", "triple squares missing");
            t.name = "T(" + c.mors[f].name + "," + c.mors[g].name + ")";
            out.push_back(t);
        }
    return out;
}

std::vector<DelCube> enumerate_del_cubes(const PairCat& p, const std::vector<Triple>& triples) {
    std::vector<DelCube> out;
    const FinCat& c = p.base;
    for (size_t a = 0; a < triples.size(); ++a)
        for (size_t b = 0; b < triples.size(); ++b) {
            const Triple& t = triples[a];
            const Triple& u = triples[b];
            for (size_t gi = 0; gi < p.squares.size(); ++gi) {
                const auto& gsq = p.squares[gi];
                if (gsq.src_obj != t.obj_yz || gsq.dst_obj != u.obj_yz) continue;
                for (size_t di = 0; di < p.squares.size(); ++di) {
                    const auto& dsq = p.squares[di];
                    if (dsq.src_obj != t.obj_xy || dsq.dst_obj != u.obj_xy) continue;
                    if (c.comp[dsq.h][t.g] != c.comp[u.g][gsq.h]) continue;
                    if (c.comp[dsq.k][t.f] != c.comp[u.f][gsq.k]) continue;
                    int kappa = p.square_index(dsq.h, gsq.k, t.obj_xz, u.obj_xz);
                    if (kappa < 0) throw Error("Internal", "cube kappa missing");
                    out.push_back({static_cast<int>(a), static_cast<int>(b), static_cast<int>(gi),
                                   static_cast<int>(di), kappa});
                }
            }
        }
    return out;
}

NoriDiagram nori_diagram(const PairCat& p, int lo, int hi) {
    if (lo > hi) throw Error("EmptyWindow", "window [" + std::to_string(lo) + "," +
                                                std::to_string(hi) + "]");
    NoriDiagram d;
    d.lo = lo;
    d.hi = hi;
    d.triples = enumerate_triples(p);
    for (int o = 0; o < static_cast<int>(p.objects.size()); ++o)
        for (int i = lo; i <= hi; ++i) {
            int v = d.quiver.add_vertex(p.obj_name(o) + "@" + std::to_string(i));
            d.vertex_info.emplace_back(o, i);
            d.vertex_of[{o, i}] = v;
        }
    for (size_t s = 0; s < p.squares.size(); ++s)
        for (int i = lo; i <= hi; ++i) {
            int e = d.quiver.add_edge(
                "g:" + p.squares[s].name + ":" + p.obj_name(p.squares[s].src_obj) + ">" +
                    p.obj_name(p.squares[s].dst_obj) + "@" + std::to_string(i),
                d.vertex_of[{p.squares[s].src_obj, i}], d.vertex_of[{p.squares[s].dst_obj, i}]);
            d.gamma_edges.push_back({static_cast<int>(s), i, e});
        }
    for (size_t t = 0; t < d.triples.size(); ++t)
        for (int i = lo; i <= hi; ++i) {
            if (i - 1 < lo) continue;
            int e = d.quiver.add_edge("d:" + d.triples[t].name + "@" + std::to_string(i),
                                      d.vertex_of[{d.triples[t].obj_xy, i}],
                                      d.vertex_of[{d.triples[t].obj_yz, i - 1}]);
            d.del_edges.push_back({static_cast<int>(t), i, e});
        }
    return d;
}

}  // namespace freydlab
