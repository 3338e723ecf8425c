#include "freydlab/additive.hpp"

#include <algorithm>
#include <set>

namespace freydlab {

EnvPtr Env::free_base(Ring ring, Quiver q) {
    auto e = std::shared_ptr<Env>(new Env(std::move(ring), false));
    e->quiver_ = std::move(q);
    return e;
}

EnvPtr Env::finite_base(Ring ring, FinCat c) {
    c.validate();
    auto e = std::shared_ptr<Env>(new Env(std::move(ring), true));
    e->fincat_ = std::move(c);
    return e;
}

int Env::vertex_count() const {
    return finite_ ? static_cast<int>(fincat_.objects.size())
                   : static_cast<int>(quiver_.vertices.size());
}

std::string Env::vertex_name(int v) const {
    return finite_ ? fincat_.objects[v] : quiver_.vertices[v];
}

BaseMor Env::base_identity(int v) const {
    if (finite_) return BaseMor{v, v, {fincat_.identity[v]}};
    return BaseMor{v, v, {}};
}

bool Env::is_base_identity(const BaseMor& m) const {
    if (finite_) return m.word.size() == 1 && m.word[0] == fincat_.identity[m.src];
    return m.word.empty();
}

BaseMor Env::base_compose(const BaseMor& g, const BaseMor& f) const {
    if (f.dst != g.src) throw Error("NotComposable", "base morphism composition");
    if (finite_) return BaseMor{f.src, g.dst, {fincat_.comp[g.word[0]][f.word[0]]}};
    BaseMor r;
    r.src = f.src;
    r.dst = g.dst;
    r.word = f.word;
    r.word.insert(r.word.end(), g.word.begin(), g.word.end());
    return r;
}

std::string Env::base_mor_name(const BaseMor& m) const {
    if (finite_) return fincat_.mors[m.word[0]].name;
    Path p{m.src, m.word};
    return p.to_string(quiver_);
}

bool Env::hom_enumerable() const { return finite_ || quiver_.is_acyclic(); }

std::vector<BaseMor> Env::hom_basis(int u, int v) const {
    if (finite_) {
        std::vector<BaseMor> out;
        for (int m : fincat_.hom(u, v)) out.push_back(BaseMor{u, v, {m}});
        return out;
    }
    if (!quiver_.is_acyclic())
        throw Error("UnsupportedBase", "hom basis of a cyclic free base is infinite");
    return paths_up_to(u, v, static_cast<int>(quiver_.vertices.size()));
}

std::vector<BaseMor> Env::paths_up_to(int u, int v, int maxlen) const {
    if (finite_) return hom_basis(u, v);
    std::vector<BaseMor> out;
    for (const Path& p : enumerate_paths(quiver_, u, v, maxlen))
        out.push_back(BaseMor{u, v, p.edges});
    return out;
}

namespace {

void lin_add(const Ring& ring, LinComb& into, const BaseMor& m, const mpq_class& c) {
    auto it = into.find(m);
    mpq_class v = ring.canon(it == into.end() ? c : it->second + c);
    if (v == 0) {
        if (it != into.end()) into.erase(it);
    } else {
        into[m] = v;
    }
}

void shape_check(const AddMor& f, const AddMor& g) {
    if (f.env != g.env) {
        if (!f.env || !g.env || !(f.env->ring() == g.env->ring()))
            throw Error("RingMismatch", "morphisms over different envelopes");
    }
}

}  // namespace

AddMor am_zero(const EnvPtr& env, AddObj src, AddObj dst) {
    AddMor m;
    m.env = env;
    m.src = std::move(src);
    m.dst = std::move(dst);
    m.entries.assign(m.src.size() * m.dst.size(), {});
    return m;
}

AddMor am_identity(const EnvPtr& env, AddObj obj) {
    AddMor m = am_zero(env, obj, obj);
    for (size_t i = 0; i < obj.size(); ++i)
        m.at(static_cast<int>(i), static_cast<int>(i))[env->base_identity(obj[i])] = 1;
    return m;
}

AddMor am_single(const EnvPtr& env, const BaseMor& bm) {
    AddMor m = am_zero(env, {bm.src}, {bm.dst});
    m.at(0, 0)[bm] = 1;
    return m;
}

AddMor am_compose(const AddMor& g, const AddMor& f) {
    shape_check(f, g);
    if (f.dst != g.src) throw Error("ShapeMismatch", "compose: inner objects differ");
    const Ring& ring = f.env->ring();
    AddMor r = am_zero(f.env, f.src, g.dst);
    for (int k = 0; k < g.rows(); ++k)
        for (int j = 0; j < g.cols(); ++j) {
            const LinComb& gkj = g.at(k, j);
            if (gkj.empty()) continue;
            for (int i = 0; i < f.cols(); ++i) {
                const LinComb& fji = f.at(j, i);
                for (const auto& [gm, gc] : gkj)
                    for (const auto& [fm, fc] : fji)
                        lin_add(ring, r.at(k, i), f.env->base_compose(gm, fm), gc * fc);
            }
        }
    return r;
}

AddMor am_add(const AddMor& f, const AddMor& g) {
    shape_check(f, g);
    if (f.src != g.src || f.dst != g.dst) throw Error("ShapeMismatch", "add");
    const Ring& ring = f.env->ring();
    AddMor r = f;
    for (int j = 0; j < f.rows(); ++j)
        for (int i = 0; i < f.cols(); ++i)
            for (const auto& [m, c] : g.at(j, i)) lin_add(ring, r.at(j, i), m, c);
    return r;
}

AddMor am_neg(const AddMor& f) { return am_scale(f, mpq_class(-1)); }

AddMor am_sub(const AddMor& f, const AddMor& g) { return am_add(f, am_neg(g)); }

AddMor am_scale(const AddMor& f, const mpq_class& c) {
    const Ring& ring = f.env->ring();
    AddMor r = am_zero(f.env, f.src, f.dst);
    for (int j = 0; j < f.rows(); ++j)
        for (int i = 0; i < f.cols(); ++i)
            for (const auto& [m, v] : f.at(j, i)) lin_add(ring, r.at(j, i), m, c * v);
    return r;
}

bool am_is_zero(const AddMor& f) {
    for (const auto& e : f.entries)
        if (!e.empty()) return false;
    return true;
}

bool am_equal(const AddMor& f, const AddMor& g) {
    if (f.src != g.src || f.dst != g.dst) return false;
    return am_is_zero(am_sub(f, g));
}

void am_check(const AddMor& f) {
    for (int j = 0; j < f.rows(); ++j)
        for (int i = 0; i < f.cols(); ++i)
            for (const auto& [m, c] : f.at(j, i)) {
                if (m.src != f.src[i] || m.dst != f.dst[j])
                    throw Error("ShapeMismatch", "entry support outside its hom-set");
                (void)c;
            }
}

AddObj obj_concat(const AddObj& a, const AddObj& b) {
    AddObj r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

AddMor am_inject(const EnvPtr& env, const std::vector<AddObj>& parts, int k) {
    AddObj whole;
    for (const auto& p : parts) whole = obj_concat(whole, p);
    AddMor m = am_zero(env, parts[k], whole);
    int off = 0;
    for (int t = 0; t < k; ++t) off += static_cast<int>(parts[t].size());
    for (size_t i = 0; i < parts[k].size(); ++i)
        m.at(off + static_cast<int>(i), static_cast<int>(i))[env->base_identity(parts[k][i])] = 1;
    return m;
}

AddMor am_project(const EnvPtr& env, const std::vector<AddObj>& parts, int k) {
    AddObj whole;
    for (const auto& p : parts) whole = obj_concat(whole, p);
    AddMor m = am_zero(env, whole, parts[k]);
    int off = 0;
    for (int t = 0; t < k; ++t) off += static_cast<int>(parts[t].size());
    for (size_t i = 0; i < parts[k].size(); ++i)
        m.at(static_cast<int>(i), off + static_cast<int>(i))[env->base_identity(parts[k][i])] = 1;
    return m;
}

AddMor am_block_row(const AddMor& f, const AddMor& g) {
    if (f.dst != g.dst) throw Error("ShapeMismatch", "block row");
    AddMor r = am_zero(f.env, obj_concat(f.src, g.src), f.dst);
    for (int j = 0; j < f.rows(); ++j) {
        for (int i = 0; i < f.cols(); ++i) r.at(j, i) = f.at(j, i);
        for (int i = 0; i < g.cols(); ++i) r.at(j, f.cols() + i) = g.at(j, i);
    }
    return r;
}

AddMor am_block_col(const AddMor& f, const AddMor& g) {
    if (f.src != g.src) throw Error("ShapeMismatch", "block col");
    AddMor r = am_zero(f.env, f.src, obj_concat(f.dst, g.dst));
    for (int i = 0; i < f.cols(); ++i) {
        for (int j = 0; j < f.rows(); ++j) r.at(j, i) = f.at(j, i);
        for (int j = 0; j < g.rows(); ++j) r.at(f.rows() + j, i) = g.at(j, i);
    }
    return r;
}

AddMor am_dsum(const AddMor& f, const AddMor& g) {
    AddMor r = am_zero(f.env, obj_concat(f.src, g.src), obj_concat(f.dst, g.dst));
    for (int j = 0; j < f.rows(); ++j)
        for (int i = 0; i < f.cols(); ++i) r.at(j, i) = f.at(j, i);
    for (int j = 0; j < g.rows(); ++j)
        for (int i = 0; i < g.cols(); ++i) r.at(f.rows() + j, f.cols() + i) = g.at(j, i);
    return r;
}

// ---------------------------------------------------------------------------
// Envelope linear solver
// ---------------------------------------------------------------------------
namespace {

struct ColKey {
    int term_unknown, j, i;
    BaseMor m;
    bool operator<(const ColKey& o) const {
        if (term_unknown != o.term_unknown) return term_unknown < o.term_unknown;
        if (j != o.j) return j < o.j;
        if (i != o.i) return i < o.i;
        return m < o.m;
    }
};

struct RowKey {
    int eq, r, c;
    BaseMor m;
    bool operator<(const RowKey& o) const {
        if (eq != o.eq) return eq < o.eq;
        if (r != o.r) return r < o.r;
        if (c != o.c) return c < o.c;
        return m < o.m;
    }
};

bool word_has_prefix(const std::vector<int>& w, const std::vector<int>& pre) {
    if (pre.size() > w.size()) return false;
    return std::equal(pre.begin(), pre.end(), w.begin());
}

bool word_has_suffix(const std::vector<int>& w, const std::vector<int>& suf) {
    if (suf.size() > w.size()) return false;
    return std::equal(suf.rbegin(), suf.rend(), w.rbegin());
}

}  // namespace

std::optional<std::vector<AddMor>> env_solve(const EnvProblem& p, int widen) {
    if (p.equations.empty()) {
        std::vector<AddMor> out;
        return out;  // caller supplies shapes only when it has equations
    }
    const EnvPtr& env = p.equations[0].target.env;
    const Ring& ring = env->ring();
    size_t nu = p.unknowns.size();

    std::vector<std::map<std::pair<int, int>, std::set<BaseMor>>> cands(nu);
    bool enumerable = env->hom_enumerable();

    auto term_left = [&](const EnvTerm& t) {
        return t.left ? *t.left : am_identity(env, p.unknowns[t.unknown].second);
    };
    auto term_right = [&](const EnvTerm& t) {
        return t.right ? *t.right : am_identity(env, p.unknowns[t.unknown].first);
    };

    int max_word_len = 0;
    if (!enumerable)
        for (const auto& eq : p.equations)
            for (const auto& e : eq.target.entries)
                for (const auto& [m, c] : e)
                    max_word_len = std::max(max_word_len, static_cast<int>(m.word.size()));

    for (int attempt = 0; attempt < 2; ++attempt) {
        for (size_t u = 0; u < nu; ++u) cands[u].clear();
        if (enumerable) {
            for (const auto& eq : p.equations)
                for (const EnvTerm& t : eq.terms) {
                    const auto& [usrc, udst] = p.unknowns[t.unknown];
                    for (int j = 0; j < static_cast<int>(udst.size()); ++j)
                        for (int i = 0; i < static_cast<int>(usrc.size()); ++i) {
                            auto& slot = cands[t.unknown][{j, i}];
                            for (const BaseMor& m : env->hom_basis(usrc[i], udst[j]))
                                slot.insert(m);
                        }
                }
        } else {
            // split candidates, propagated: the known support of an equation
            // grows as other unknowns acquire candidates
            for (int round = 0; round < 3; ++round) {
                bool grew = false;
                for (const auto& eq : p.equations) {
                    // words known to appear in this equation
                    std::set<BaseMor> support;
                    for (const auto& e : eq.target.entries)
                        for (const auto& [m, c] : e) support.insert(m);
                    for (const EnvTerm& t : eq.terms) {
                        AddMor L = term_left(t), R = term_right(t);
                        const auto& [usrc, udst] = p.unknowns[t.unknown];
                        for (auto& [ji, set] : cands[t.unknown])
                            for (const BaseMor& w : set)
                                for (int r = 0; r < L.rows(); ++r)
                                    for (const auto& [lp, lc] : L.at(r, ji.first))
                                        for (int c = 0; c < R.cols(); ++c)
                                            for (const auto& [rp, rc] : R.at(ji.second, c))
                                                if (rp.dst == w.src && w.dst == lp.src)
                                                    support.insert(env->base_compose(
                                                        lp, env->base_compose(w, rp)));
                    }
                    for (const EnvTerm& t : eq.terms) {
                        AddMor L = term_left(t), R = term_right(t);
                        const auto& [usrc, udst] = p.unknowns[t.unknown];
                        for (int j = 0; j < static_cast<int>(udst.size()); ++j)
                            for (int i = 0; i < static_cast<int>(usrc.size()); ++i) {
                                auto& slot = cands[t.unknown][{j, i}];
                                size_t before = slot.size();
                                for (const BaseMor& q : support)
                                    for (int r = 0; r < L.rows(); ++r)
                                        for (const auto& [lp, lc] : L.at(r, j))
                                            for (int c = 0; c < R.cols(); ++c)
                                                for (const auto& [rp, rc] : R.at(i, c)) {
                                                    size_t need =
                                                        rp.word.size() + lp.word.size();
                                                    if (q.word.size() < need) continue;
                                                    if (!word_has_prefix(q.word, rp.word))
                                                        continue;
                                                    if (!word_has_suffix(q.word, lp.word))
                                                        continue;
                                                    BaseMor w;
                                                    w.src = usrc[i];
                                                    w.dst = udst[j];
                                                    w.word.assign(
                                                        q.word.begin() + rp.word.size(),
                                                        q.word.end() - lp.word.size());
                                                    if (w.src != rp.dst || w.dst != lp.src)
                                                        continue;
                                                    Path chk{w.src, w.word};
                                                    if (chk.valid(env->quiver()) &&
                                                        chk.dst(env->quiver()) == w.dst)
                                                        slot.insert(w);
                                                }
                                if (slot.size() != before) grew = true;
                            }
                    }
                }
                if (!grew) break;
            }
            if (attempt == 1)
                for (const auto& eq : p.equations)
                    for (const EnvTerm& t : eq.terms) {
                        const auto& [usrc, udst] = p.unknowns[t.unknown];
                        for (int j = 0; j < static_cast<int>(udst.size()); ++j)
                            for (int i = 0; i < static_cast<int>(usrc.size()); ++i)
                                for (const BaseMor& m : env->paths_up_to(
                                         usrc[i], udst[j], max_word_len + widen))
                                    cands[t.unknown][{j, i}].insert(m);
                    }
        }

        std::map<ColKey, int> colidx;
        for (size_t u = 0; u < nu; ++u)
            for (auto& [ji, set] : cands[u])
                for (const BaseMor& m : set)
                    colidx.emplace(ColKey{static_cast<int>(u), ji.first, ji.second, m}, 0);
        int nc = 0;
        for (auto& [k, v] : colidx) v = nc++;

        std::map<RowKey, int> rowidx;
        for (size_t e = 0; e < p.equations.size(); ++e) {
            const auto& eq = p.equations[e];
            for (int r = 0; r < eq.target.rows(); ++r)
                for (int c = 0; c < eq.target.cols(); ++c)
                    for (const auto& [m, v] : eq.target.at(r, c))
                        rowidx.emplace(RowKey{static_cast<int>(e), r, c, m}, 0);
            for (const EnvTerm& t : eq.terms) {
                AddMor L = term_left(t), R = term_right(t);
                for (auto& [ji, set] : cands[t.unknown])
                    for (const BaseMor& w : set)
                        for (int r = 0; r < L.rows(); ++r)
                            for (const auto& [lp, lc] : L.at(r, ji.first))
                                for (int c = 0; c < R.cols(); ++c)
                                    for (const auto& [rp, rc] : R.at(ji.second, c))
                                        if (rp.dst == w.src && w.dst == lp.src)
                                            rowidx.emplace(
                                                RowKey{static_cast<int>(e), r, c,
                                                       env->base_compose(
                                                           lp, env->base_compose(w, rp))},
                                                0);
            }
        }
        int nr = 0;
        for (auto& [k, v] : rowidx) v = nr++;

        Mat sys(ring, nr, nc), rhs(ring, nr, 1);
        for (size_t e = 0; e < p.equations.size(); ++e) {
            const auto& eq = p.equations[e];
            for (int r = 0; r < eq.target.rows(); ++r)
                for (int c = 0; c < eq.target.cols(); ++c)
                    for (const auto& [m, v] : eq.target.at(r, c))
                        rhs.set(rowidx[RowKey{static_cast<int>(e), r, c, m}], 0, v);
            for (const EnvTerm& t : eq.terms) {
                AddMor L = term_left(t), R = term_right(t);
                for (auto& [ji, set] : cands[t.unknown])
                    for (const BaseMor& w : set) {
                        int col = colidx[ColKey{t.unknown, ji.first, ji.second, w}];
                        for (int r = 0; r < L.rows(); ++r)
                            for (const auto& [lp, lc] : L.at(r, ji.first))
                                for (int c = 0; c < R.cols(); ++c)
                                    for (const auto& [rp, rc] : R.at(ji.second, c)) {
                                        if (rp.dst != w.src || w.dst != lp.src) continue;
                                        BaseMor m =
                                            env->base_compose(lp, env->base_compose(w, rp));
                                        int row = rowidx[RowKey{static_cast<int>(e), r, c, m}];
                                        sys.set(row, col, sys.at(row, col) + lc * rc);
                                    }
                    }
            }
        }
        auto sol = solve_right(sys, rhs);
        if (sol) {
            std::vector<AddMor> out;
            for (size_t u = 0; u < nu; ++u) {
                AddMor m = am_zero(env, p.unknowns[u].first, p.unknowns[u].second);
                for (auto& [ji, set] : cands[u])
                    for (const BaseMor& w : set) {
                        const mpq_class& c = sol->at(
                            colidx[ColKey{static_cast<int>(u), ji.first, ji.second, w}], 0);
                        if (c != 0) m.at(ji.first, ji.second)[w] = c;
                    }
                out.push_back(m);
            }
            return out;
        }
        if (enumerable) break;
    }
    return std::nullopt;
}

std::optional<AddMor> factor_right(const AddMor& f, const AddMor& g) {
    shape_check(f, g);
    if (f.dst != g.dst) throw Error("ShapeMismatch", "factor_right: codomains differ");
    EnvProblem p;
    p.unknowns.push_back({f.src, g.src});
    p.equations.push_back({{{g, 0, std::nullopt}}, f});
    auto sol = env_solve(p);
    if (!sol) return std::nullopt;
    return (*sol)[0];
}

std::optional<AddMor> factor_left(const AddMor& f, const AddMor& g) {
    shape_check(f, g);
    if (f.src != g.src) throw Error("ShapeMismatch", "factor_left: domains differ");
    EnvProblem p;
    p.unknowns.push_back({g.dst, f.dst});
    p.equations.push_back({{{std::nullopt, 0, g}}, f});
    auto sol = env_solve(p);
    if (!sol) return std::nullopt;
    return (*sol)[0];
}

AddObj delta_obj(int vertex) { return {vertex}; }

AddMor delta_edge(const EnvPtr& env, int edge) {
    const auto& e = env->quiver().edges[edge];
    return am_single(env, BaseMor{e.src, e.dst, {edge}});
}

AddMor delta_mor(const EnvPtr& env, const BaseMor& m) { return am_single(env, m); }

}  // namespace freydlab
