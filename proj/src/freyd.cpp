#include "freydlab/freyd.hpp"

#include <algorithm>
#include <sstream>

namespace freydlab {

Presentation pres_zero(const EnvPtr& env) {
    return {am_zero(env, {}, {}), am_zero(env, {}, {})};
}

Presentation pres_delta(const EnvPtr& env, int vertex) {
    return pres_delta_tuple(env, {vertex});
}

Presentation pres_delta_tuple(const EnvPtr& env, const AddObj& obj) {
    return {am_zero(env, {}, obj), am_zero(env, obj, {})};
}

Presentation pres_cokernel_datum(const AddMor& rel) {
    return {rel, am_zero(rel.env, rel.dst, {})};
}

Presentation pres_kernel_datum(const AddMor& cor) {
    return {am_zero(cor.env, {}, cor.src), cor};
}

Presentation pres_dsum(const Presentation& x, const Presentation& y) {
    return {am_dsum(x.rel, y.rel), am_dsum(x.cor, y.cor)};
}

void pres_check(const Presentation& x) {
    if (x.rel.dst != x.cor.src)
        throw Error("ShapeMismatch", "presentation layers do not share the middle object");
    am_check(x.rel);
    am_check(x.cor);
}

const EnvPtr& pres_env(const Presentation& x) { return x.rel.env; }

bool pres_is_zero(const Presentation& x) { return ab_is_zero(ab_identity(x)); }

namespace {

void key_mor(std::ostringstream& os, const AddMor& m) {
    os << "[";
    for (size_t i = 0; i < m.src.size(); ++i) os << (i ? "," : "") << m.src[i];
    os << ">";
    for (size_t i = 0; i < m.dst.size(); ++i) os << (i ? "," : "") << m.dst[i];
    os << ":";
    for (int j = 0; j < m.rows(); ++j)
        for (int i = 0; i < m.cols(); ++i)
            for (const auto& [bm, c] : m.at(j, i)) {
                os << j << "." << i << "=" << m.env->ring().to_string(c) << "*"
                   << m.env->base_mor_name(bm) << ";";
            }
    os << "]";
}

}  // namespace

std::string pres_key(const Presentation& x) {
    std::ostringstream os;
    os << pres_env(x)->ring().name();
    key_mor(os, x.rel);
    key_mor(os, x.cor);
    return os.str();
}

AbMor ab_identity(const Presentation& x) {
    const EnvPtr& env = pres_env(x);
    return {x, x, am_identity(env, x.rel.dst), am_identity(env, x.rel.src),
            am_identity(env, x.cor.dst)};
}

AbMor ab_zero_mor(const Presentation& x, const Presentation& y) {
    const EnvPtr& env = pres_env(x);
    return {x, y, am_zero(env, x.rel.dst, y.rel.dst), am_zero(env, x.rel.src, y.rel.src),
            am_zero(env, x.cor.dst, y.cor.dst)};
}

AbMor ab_compose(const AbMor& g, const AbMor& f) {
    return {f.src, g.dst, am_compose(g.mid, f.mid), am_compose(g.rel_wit, f.rel_wit),
            am_compose(g.cor_wit, f.cor_wit)};
}

AbMor ab_add(const AbMor& f, const AbMor& g) {
    return {f.src, f.dst, am_add(f.mid, g.mid), am_add(f.rel_wit, g.rel_wit),
            am_add(f.cor_wit, g.cor_wit)};
}

AbMor ab_sub(const AbMor& f, const AbMor& g) { return ab_add(f, ab_neg(g)); }

AbMor ab_neg(const AbMor& f) { return ab_scale(f, mpq_class(-1)); }

AbMor ab_scale(const AbMor& f, const mpq_class& c) {
    return {f.src, f.dst, am_scale(f.mid, c), am_scale(f.rel_wit, c), am_scale(f.cor_wit, c)};
}

std::optional<AbMor> ab_mor_try(const Presentation& src, const Presentation& dst,
                                const AddMor& mid) {
    auto sigma = factor_right(am_compose(mid, src.rel), dst.rel);
    if (!sigma) return std::nullopt;
    auto tau = factor_left(am_compose(dst.cor, mid), src.cor);
    if (!tau) return std::nullopt;
    return AbMor{src, dst, mid, *sigma, *tau};
}

AbMor ab_mor(const Presentation& src, const Presentation& dst, const AddMor& mid) {
    auto m = ab_mor_try(src, dst, mid);
    if (!m) throw Error("NotWellFormed", "morphism datum violates the layer squares");
    return *m;
}

AbMor ab_delta_map(const EnvPtr& env, const BaseMor& m) {
    return ab_mor(pres_delta(env, m.src), pres_delta(env, m.dst), am_single(env, m));
}

bool ab_equal(const AbMor& f, const AbMor& g) {
    if (f.src.rel.dst != g.src.rel.dst || f.dst.rel.dst != g.dst.rel.dst) return false;
    AddMor d = am_sub(f.mid, g.mid);
    if (am_is_zero(d)) return true;
    const EnvPtr& env = f.mid.env;
    EnvProblem p;
    p.unknowns.push_back({f.src.rel.dst, f.dst.rel.src});  // s : M_src -> R_dst
    p.unknowns.push_back({f.src.cor.dst, f.dst.rel.dst});  // t : C_src -> M_dst
    EnvEquation eq;
    eq.terms.push_back({f.dst.rel, 0, std::nullopt});
    eq.terms.push_back({std::nullopt, 1, f.src.cor});
    eq.target = d;
    p.equations.push_back(eq);
    (void)env;
    return env_solve(p).has_value();
}

bool ab_is_zero(const AbMor& f) { return ab_equal(f, ab_zero_mor(f.src, f.dst)); }

AbKernel ab_kernel(const AbMor& f) {
    const EnvPtr& env = f.mid.env;
    const Presentation& a = f.src;
    const Presentation& b = f.dst;
    const AddObj& ra = a.rel.src;
    const AddObj& ma = a.rel.dst;
    const AddObj& ca = a.cor.dst;
    const AddObj& rb = b.rel.src;
    const AddObj& mb = b.rel.dst;
    // K = (R_A + R_B -> M_A + R_B -> C_A + M_B)
    AddMor rel = am_block_col(am_block_row(a.rel, am_zero(env, rb, ma)),
                              am_block_row(f.rel_wit, am_identity(env, rb)));
    AddMor cor = am_block_col(am_block_row(a.cor, am_zero(env, rb, ca)),
                              am_block_row(f.mid, am_neg(b.rel)));
    Presentation k{rel, cor};
    AbMor incl{k, a, am_block_row(am_identity(env, ma), am_zero(env, rb, ma)),
               am_block_row(am_identity(env, ra), am_zero(env, rb, ra)),
               am_block_row(am_identity(env, ca), am_zero(env, mb, ca))};
    return {k, incl};
}

AbCokernel ab_cokernel(const AbMor& f) {
    const EnvPtr& env = f.mid.env;
    const Presentation& a = f.src;
    const Presentation& b = f.dst;
    const AddObj& ma = a.rel.dst;
    const AddObj& ca = a.cor.dst;
    const AddObj& rb = b.rel.src;
    const AddObj& mb = b.rel.dst;
    const AddObj& cb = b.cor.dst;
    // Q = (R_B + M_A -> M_B + C_A -> C_B + C_A)
    AddMor rel = am_block_col(am_block_row(b.rel, f.mid),
                              am_block_row(am_zero(env, rb, ca), am_neg(a.cor)));
    AddMor cor = am_block_col(am_block_row(b.cor, f.cor_wit),
                              am_block_row(am_zero(env, mb, ca), am_identity(env, ca)));
    Presentation q{rel, cor};
    AbMor proj{b, q, am_block_col(am_identity(env, mb), am_zero(env, mb, ca)),
               am_block_col(am_identity(env, rb), am_zero(env, rb, ma)),
               am_block_col(am_identity(env, cb), am_zero(env, cb, ca))};
    return {q, proj};
}

std::optional<AbMor> ab_lift(const AbMor& p, const AbMor& t) {
    // u : T -> K with p.u = t
    const EnvPtr& env = p.mid.env;
    const Presentation& kk = p.src;
    const Presentation& aa = p.dst;
    const Presentation& tt = t.src;
    EnvProblem pr;
    pr.unknowns.push_back({tt.rel.dst, kk.rel.dst});  // U : M_T -> M_K
    pr.unknowns.push_back({tt.rel.dst, aa.rel.src});  // S : M_T -> R_A
    pr.unknowns.push_back({tt.cor.dst, aa.rel.dst});  // W : C_T -> M_A
    pr.unknowns.push_back({tt.rel.src, kk.rel.src});  // sigma : R_T -> R_K
    pr.unknowns.push_back({tt.cor.dst, kk.cor.dst});  // tau : C_T -> C_K
    {
        EnvEquation eq;  // p.mid U + rel_A S + W cor_T = t.mid
        eq.terms.push_back({p.mid, 0, std::nullopt});
        eq.terms.push_back({aa.rel, 1, std::nullopt});
        eq.terms.push_back({std::nullopt, 2, tt.cor});
        eq.target = t.mid;
        pr.equations.push_back(eq);
    }
    {
        EnvEquation eq;  // U rel_T - rel_K sigma = 0
        eq.terms.push_back({std::nullopt, 0, tt.rel});
        eq.terms.push_back({am_neg(kk.rel), 3, std::nullopt});
        eq.target = am_zero(env, tt.rel.src, kk.rel.dst);
        pr.equations.push_back(eq);
    }
    {
        EnvEquation eq;  // cor_K U - tau cor_T = 0
        eq.terms.push_back({kk.cor, 0, std::nullopt});
        eq.terms.push_back({am_neg(am_identity(env, kk.cor.dst)), 4, tt.cor});
        eq.target = am_zero(env, tt.rel.dst, kk.cor.dst);
        pr.equations.push_back(eq);
    }
    auto sol = env_solve(pr);
    if (!sol) return std::nullopt;
    return AbMor{tt, kk, (*sol)[0], (*sol)[3], (*sol)[4]};
}

std::optional<AbMor> ab_colift(const AbMor& p, const AbMor& t) {
    // u : Q -> B with u.p = t
    const EnvPtr& env = p.mid.env;
    const Presentation& qq = p.dst;
    const Presentation& aa = p.src;
    const Presentation& bb = t.dst;
    EnvProblem pr;
    pr.unknowns.push_back({qq.rel.dst, bb.rel.dst});  // U : M_Q -> M_B
    pr.unknowns.push_back({aa.rel.dst, bb.rel.src});  // S : M_A -> R_B
    pr.unknowns.push_back({aa.cor.dst, bb.rel.dst});  // W : C_A -> M_B
    pr.unknowns.push_back({qq.rel.src, bb.rel.src});  // sigma : R_Q -> R_B
    pr.unknowns.push_back({qq.cor.dst, bb.cor.dst});  // tau : C_Q -> C_B
    {
        EnvEquation eq;  // U p.mid + rel_B S + W cor_A = t.mid
        eq.terms.push_back({std::nullopt, 0, p.mid});
        eq.terms.push_back({bb.rel, 1, std::nullopt});
        eq.terms.push_back({std::nullopt, 2, aa.cor});
        eq.target = t.mid;
        pr.equations.push_back(eq);
    }
    {
        EnvEquation eq;  // U rel_Q - rel_B sigma = 0
        eq.terms.push_back({std::nullopt, 0, qq.rel});
        eq.terms.push_back({am_neg(bb.rel), 3, std::nullopt});
        eq.target = am_zero(env, qq.rel.src, bb.rel.dst);
        pr.equations.push_back(eq);
    }
    {
        EnvEquation eq;  // cor_B U - tau cor_Q = 0
        eq.terms.push_back({bb.cor, 0, std::nullopt});
        eq.terms.push_back({am_neg(am_identity(env, bb.cor.dst)), 4, qq.cor});
        eq.target = am_zero(env, qq.rel.dst, bb.cor.dst);
        pr.equations.push_back(eq);
    }
    auto sol = env_solve(pr);
    if (!sol) return std::nullopt;
    return AbMor{qq, bb, (*sol)[0], (*sol)[3], (*sol)[4]};
}

AbImage ab_image(const AbMor& f) {
    AbCokernel c = ab_cokernel(f);
    AbKernel k = ab_kernel(c.proj);
    auto onto = ab_lift(k.incl, f);
    if (!onto) throw Error("Internal", "image factorization failed");
    return {k.obj, k.incl, *onto};
}

AbCoimage ab_coimage(const AbMor& f) {
    AbKernel k = ab_kernel(f);
    AbCokernel c = ab_cokernel(k.incl);
    auto from = ab_colift(c.proj, f);
    if (!from) throw Error("Internal", "coimage factorization failed");
    return {c.obj, c.proj, *from};
}

bool ab_is_mono(const AbMor& f) { return pres_is_zero(ab_kernel(f).obj); }
bool ab_is_epi(const AbMor& f) { return pres_is_zero(ab_cokernel(f).obj); }
bool ab_is_iso(const AbMor& f) { return ab_is_mono(f) && ab_is_epi(f); }

std::optional<AbMor> ab_inverse(const AbMor& f) {
    auto right = ab_lift(f, ab_identity(f.dst));
    if (!right) return std::nullopt;
    if (!ab_equal(ab_compose(*right, f), ab_identity(f.src))) return std::nullopt;
    return right;
}

AbMor ab_inject(const std::vector<Presentation>& parts, int k) {
    const EnvPtr& env = pres_env(parts[0]);
    std::vector<AddObj> rr, mm, cc;
    for (const auto& p : parts) {
        rr.push_back(p.rel.src);
        mm.push_back(p.rel.dst);
        cc.push_back(p.cor.dst);
    }
    Presentation whole = parts[0];
    for (size_t i = 1; i < parts.size(); ++i) whole = pres_dsum(whole, parts[i]);
    return {parts[k], whole, am_inject(env, mm, k), am_inject(env, rr, k),
            am_inject(env, cc, k)};
}

AbMor ab_project(const std::vector<Presentation>& parts, int k) {
    const EnvPtr& env = pres_env(parts[0]);
    std::vector<AddObj> rr, mm, cc;
    for (const auto& p : parts) {
        rr.push_back(p.rel.src);
        mm.push_back(p.rel.dst);
        cc.push_back(p.cor.dst);
    }
    Presentation whole = parts[0];
    for (size_t i = 1; i < parts.size(); ++i) whole = pres_dsum(whole, parts[i]);
    return {whole, parts[k], am_project(env, mm, k), am_project(env, rr, k),
            am_project(env, cc, k)};
}

// ---------------------------------------------------------------------------
// Hom presentations
// ---------------------------------------------------------------------------
namespace {

struct HomSpace {
    EnvPtr env;
    AddObj src, dst;
    struct Elem {
        int j, i;
        BaseMor m;
    };
    std::vector<Elem> basis;

    static HomSpace make(const EnvPtr& env, const AddObj& src, const AddObj& dst) {
        HomSpace s{env, src, dst, {}};
        for (int j = 0; j < static_cast<int>(dst.size()); ++j)
            for (int i = 0; i < static_cast<int>(src.size()); ++i)
                for (const BaseMor& m : env->hom_basis(src[i], dst[j]))
                    s.basis.push_back({j, i, m});
        return s;
    }
    int dim() const { return static_cast<int>(basis.size()); }
    Mat to_vec(const AddMor& f) const {
        Mat v(env->ring(), dim(), 1);
        AddMor rest = f;
        for (int t = 0; t < dim(); ++t) {
            auto it = rest.at(basis[t].j, basis[t].i).find(basis[t].m);
            if (it != rest.at(basis[t].j, basis[t].i).end()) {
                v.set(t, 0, it->second);
            }
        }
        return v;
    }
    AddMor from_vec(const Mat& v) const {
        AddMor f = am_zero(env, src, dst);
        for (int t = 0; t < dim(); ++t)
            if (v.at(t, 0) != 0) f.at(basis[t].j, basis[t].i)[basis[t].m] = v.at(t, 0);
        return f;
    }
    AddMor basis_mor(int t) const {
        AddMor f = am_zero(env, src, dst);
        f.at(basis[t].j, basis[t].i)[basis[t].m] = 1;
        return f;
    }
};

}  // namespace

namespace {

AbHom ab_hom_impl(const Presentation& x, const Presentation& y, int maxlen) {
    const EnvPtr& env = pres_env(x);
    if (maxlen < 0 && !env->hom_enumerable())
        throw Error("UnsupportedBase", "hom presentation needs an enumerable hom basis");
    const Ring& ring = env->ring();
    auto make_space = [&](const AddObj& src, const AddObj& dst) {
        if (maxlen < 0) return HomSpace::make(env, src, dst);
        HomSpace s{env, src, dst, {}};
        for (int j = 0; j < static_cast<int>(dst.size()); ++j)
            for (int i = 0; i < static_cast<int>(src.size()); ++i)
                for (const BaseMor& m : env->paths_up_to(src[i], dst[j], maxlen))
                    s.basis.push_back({j, i, m});
        return s;
    };
    HomSpace V = make_space(x.rel.dst, y.rel.dst);
    HomSpace Sg = make_space(x.rel.src, y.rel.src);
    HomSpace Tu = make_space(x.cor.dst, y.cor.dst);
    // composite words may get longer than maxlen; give the row spaces room
    auto make_row_space = [&](const AddObj& src, const AddObj& dst) {
        if (maxlen < 0) return HomSpace::make(env, src, dst);
        return make_space(src, dst);  // placeholder, replaced below
    };
    (void)make_row_space;
    int rowlen = maxlen < 0 ? -1 : 2 * maxlen + 1;
    auto make_wspace = [&](const AddObj& src, const AddObj& dst) {
        if (rowlen < 0) return HomSpace::make(env, src, dst);
        HomSpace s{env, src, dst, {}};
        for (int j = 0; j < static_cast<int>(dst.size()); ++j)
            for (int i = 0; i < static_cast<int>(src.size()); ++i)
                for (const BaseMor& m : env->paths_up_to(src[i], dst[j], rowlen))
                    s.basis.push_back({j, i, m});
        return s;
    };
    HomSpace W1 = make_wspace(x.rel.src, y.rel.dst);
    HomSpace W2 = make_wspace(x.rel.dst, y.cor.dst);

    // conditions: v.rel_x = rel_y.sigma  and  cor_y.v = tau.cor_x
    Mat sys(ring, W1.dim() + W2.dim(), V.dim() + Sg.dim() + Tu.dim());
    auto put_col = [&](int col, const Mat& top, const Mat& bot) {
        for (int r = 0; r < top.rows(); ++r) sys.set(r, col, top.at(r, 0));
        for (int r = 0; r < bot.rows(); ++r) sys.set(W1.dim() + r, col, bot.at(r, 0));
    };
    for (int t = 0; t < V.dim(); ++t) {
        AddMor v = V.basis_mor(t);
        put_col(t, W1.to_vec(am_compose(v, x.rel)), W2.to_vec(am_compose(y.cor, v)));
    }
    for (int t = 0; t < Sg.dim(); ++t) {
        AddMor s = Sg.basis_mor(t);
        put_col(V.dim() + t, W1.to_vec(am_neg(am_compose(y.rel, s))), Mat(ring, W2.dim(), 1));
    }
    for (int t = 0; t < Tu.dim(); ++t) {
        AddMor u = Tu.basis_mor(t);
        put_col(V.dim() + Sg.dim() + t, Mat(ring, W1.dim(), 1),
                W2.to_vec(am_neg(am_compose(u, x.cor))));
    }
    Mat compat = kernel_gens(sys);
    Mat gens_v = compat.row_range(0, V.dim());

    // homotopies rel_y . a + b . cor_x
    HomSpace A = make_space(x.rel.dst, y.rel.src);
    HomSpace B = make_space(x.cor.dst, y.rel.dst);
    Mat hom_t(ring, V.dim(), A.dim() + B.dim());
    for (int t = 0; t < A.dim(); ++t) {
        Mat col = V.to_vec(am_compose(y.rel, A.basis_mor(t)));
        for (int r = 0; r < V.dim(); ++r) hom_t.set(r, t, col.at(r, 0));
    }
    for (int t = 0; t < B.dim(); ++t) {
        Mat col = V.to_vec(am_compose(B.basis_mor(t), x.cor));
        for (int r = 0; r < V.dim(); ++r) hom_t.set(r, A.dim() + t, col.at(r, 0));
    }

    Mat rels(ring, compat.cols(), 0);
    if (compat.cols() > 0)
        rels = span_canonical_rows(
                   kernel_gens(gens_v.hstack(hom_t)).row_range(0, compat.cols()).transpose())
                   .transpose();
    FpModule module(ring, compat.cols(), rels);
    AbHom out{x, y, module, {}, {}, {}};
    for (int j = 0; j < compat.cols(); ++j) {
        out.gen_mids.push_back(V.from_vec(compat.col_range(j, j + 1)));
        Mat sg(ring, Sg.dim(), 1), tu(ring, Tu.dim(), 1);
        for (int t = 0; t < Sg.dim(); ++t) sg.set(t, 0, compat.at(V.dim() + t, j));
        for (int t = 0; t < Tu.dim(); ++t) tu.set(t, 0, compat.at(V.dim() + Sg.dim() + t, j));
        out.gen_sigmas.push_back(Sg.from_vec(sg));
        out.gen_taus.push_back(Tu.from_vec(tu));
    }
    return out;
}

}  // namespace

AbHom ab_hom(const Presentation& x, const Presentation& y) { return ab_hom_impl(x, y, -1); }

AbHom ab_hom_bounded(const Presentation& x, const Presentation& y, int maxlen) {
    return ab_hom_impl(x, y, maxlen);
}

AbMor AbHom::decode(const Mat& coeffs) const {
    const EnvPtr& env = pres_env(src);
    AddMor mid = am_zero(env, src.rel.dst, dst.rel.dst);
    AddMor sg = am_zero(env, src.rel.src, dst.rel.src);
    AddMor tu = am_zero(env, src.cor.dst, dst.cor.dst);
    for (size_t g = 0; g < gen_mids.size(); ++g) {
        const mpq_class& c = coeffs.at(static_cast<int>(g), 0);
        if (c == 0) continue;
        mid = am_add(mid, am_scale(gen_mids[g], c));
        sg = am_add(sg, am_scale(gen_sigmas[g], c));
        tu = am_add(tu, am_scale(gen_taus[g], c));
    }
    return AbMor{src, dst, mid, sg, tu};
}

bool pres_isomorphic(const Presentation& x, const Presentation& y, const AbMor** witness) {
    static thread_local AbMor last_witness = ab_identity(pres_zero(pres_env(x)));
    if (pres_key(x) == pres_key(y)) {
        last_witness = ab_identity(x);
        if (witness) *witness = &last_witness;
        return true;
    }
    bool xz = pres_is_zero(x), yz = pres_is_zero(y);
    if (xz || yz) {
        if (xz && yz) {
            last_witness = ab_zero_mor(x, y);
            if (witness) *witness = &last_witness;
            return true;
        }
        return false;
    }
    if (!pres_env(x)->hom_enumerable()) return false;
    AbHom h = ab_hom(x, y);
    const Ring& ring = pres_env(x)->ring();
    // single generators and pairwise combinations with unit coefficients
    std::vector<Mat> cands;
    for (int g = 0; g < h.module.gens; ++g) {
        Mat c(ring, h.module.gens, 1);
        c.set(g, 0, 1);
        cands.push_back(c);
        Mat d(ring, h.module.gens, 1);
        d.set(g, 0, -1);
        cands.push_back(d);
    }
    for (int g = 0; g < h.module.gens; ++g)
        for (int g2 = g + 1; g2 < h.module.gens; ++g2)
            for (long s : {1L, -1L}) {
                Mat c(ring, h.module.gens, 1);
                c.set(g, 0, 1);
                c.set(g2, 0, mpq_class(s));
                cands.push_back(c);
            }
    for (const Mat& c : cands) {
        AbMor f = h.decode(c);
        if (ab_is_iso(f)) {
            last_witness = f;
            if (witness) *witness = &last_witness;
            return true;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Duality
// ---------------------------------------------------------------------------

EnvPtr env_dual(const EnvPtr& env) {
    if (env->finite()) return Env::finite_base(env->ring(), env->fincat().dual());
    return Env::free_base(env->ring(), env->quiver().dual());
}

BaseMor base_dual(const BaseMor& m) {
    BaseMor d;
    d.src = m.dst;
    d.dst = m.src;
    d.word.assign(m.word.rbegin(), m.word.rend());
    return d;
}

AddMor am_dual(const EnvPtr& denv, const AddMor& f) {
    AddMor d = am_zero(denv, f.dst, f.src);
    for (int j = 0; j < f.rows(); ++j)
        for (int i = 0; i < f.cols(); ++i)
            for (const auto& [m, c] : f.at(j, i)) d.at(i, j)[base_dual(m)] = c;
    return d;
}

Presentation pres_dual(const EnvPtr& denv, const Presentation& x) {
    return {am_dual(denv, x.cor), am_dual(denv, x.rel)};
}

AbMor ab_dual(const EnvPtr& denv, const AbMor& f) {
    return {pres_dual(denv, f.dst), pres_dual(denv, f.src), am_dual(denv, f.mid),
            am_dual(denv, f.cor_wit), am_dual(denv, f.rel_wit)};
}

// ---------------------------------------------------------------------------
// Ring change
// ---------------------------------------------------------------------------

AddMor am_change_ring(const EnvPtr& newenv, const AddMor& f) {
    AddMor d = am_zero(newenv, f.src, f.dst);
    const Ring& ring = newenv->ring();
    for (int j = 0; j < f.rows(); ++j)
        for (int i = 0; i < f.cols(); ++i)
            for (const auto& [m, c] : f.at(j, i)) {
                mpq_class v = ring.canon(c);
                if (v != 0) d.at(j, i)[m] = v;
            }
    return d;
}

Presentation pres_change_ring(const EnvPtr& newenv, const Presentation& x) {
    return {am_change_ring(newenv, x.rel), am_change_ring(newenv, x.cor)};
}

AbMor ab_change_ring(const EnvPtr& newenv, const AbMor& f) {
    return {pres_change_ring(newenv, f.src), pres_change_ring(newenv, f.dst),
            am_change_ring(newenv, f.mid), am_change_ring(newenv, f.rel_wit),
            am_change_ring(newenv, f.cor_wit)};
}

// ---------------------------------------------------------------------------
// Point-base specifics
// ---------------------------------------------------------------------------
namespace {

void require_point_base(const EnvPtr& env) {
    bool pt = env->finite() && env->fincat().objects.size() == 1 &&
              env->fincat().mors.size() == 1;
    if (!pt) throw Error("WrongBase", "operation needs the one-point base");
}

AddMor scalar_on_point(const EnvPtr& env, const mpq_class& v) {
    return am_scale(am_identity(env, {0}), v);
}

}  // namespace

Presentation representable_at(const EnvPtr& env, const mpq_class& d) {
    require_point_base(env);
    return pres_kernel_datum(scalar_on_point(env, d));
}

Presentation simple_candidate(const EnvPtr& env, const mpz_class& p, int n) {
    require_point_base(env);
    if (env->ring().kind() != RingKind::Integers)
        throw Error("WrongRing", "simple candidates live over the integers");
    if (n < 1) throw Error("BadArgument", "prime power exponent must be positive");
    mpz_class pn, pn1, pnm1;
    mpz_pow_ui(pn.get_mpz_t(), p.get_mpz_t(), n);
    mpz_pow_ui(pn1.get_mpz_t(), p.get_mpz_t(), n + 1);
    mpz_pow_ui(pnm1.get_mpz_t(), p.get_mpz_t(), n - 1);
    Presentation yn = representable_at(env, mpq_class(pn));
    Presentation yup = representable_at(env, mpq_class(pn1));
    Presentation ydown = representable_at(env, mpq_class(pnm1));

    AbMor g1 = ab_mor(yn, yn, scalar_on_point(env, mpq_class(p)));
    AbMor g2 = ab_mor(yup, yn, scalar_on_point(env, mpq_class(p)));
    AbMor g3 = ab_mor(ydown, yn, scalar_on_point(env, mpq_class(1)));

    std::vector<Presentation> parts = {yn, yup, ydown};
    AbMor rad = ab_add(ab_add(ab_compose(g1, ab_project(parts, 0)),
                              ab_compose(g2, ab_project(parts, 1))),
                       ab_compose(g3, ab_project(parts, 2)));
    return ab_cokernel(rad).obj;
}

// ---------------------------------------------------------------------------
// Flat membership and projectivity
// ---------------------------------------------------------------------------

std::optional<FlatWitness> flat_membership(const Presentation& x, int bound) {
    const EnvPtr& env = pres_env(x);
    // delta tuples themselves
    if (am_is_zero(x.rel) && am_is_zero(x.cor) && x.cor.dst.empty() && x.rel.src.empty()) {
        auto node = std::make_shared<FlatNode>();
        node->kind = FlatNode::Kind::DeltaTuple;
        node->tuple = x.rel.dst;
        return FlatWitness{node, ab_identity(x)};
    }
    // trivial relation layer: x is the kernel of its corelation between deltas
    if (am_is_zero(x.rel)) {
        auto srcn = std::make_shared<FlatNode>();
        srcn->kind = FlatNode::Kind::DeltaTuple;
        srcn->tuple = x.cor.src;
        auto dstn = std::make_shared<FlatNode>();
        dstn->kind = FlatNode::Kind::DeltaTuple;
        dstn->tuple = x.cor.dst;
        auto node = std::make_shared<FlatNode>();
        node->kind = FlatNode::Kind::KernelOf;
        node->src = srcn;
        node->dst = dstn;
        node->mid = x.cor;
        AbMor kappa = ab_mor(pres_delta_tuple(env, x.cor.src), pres_delta_tuple(env, x.cor.dst),
                             x.cor);
        AbKernel k = ab_kernel(kappa);
        auto iso = ab_mor_try(k.obj, x, am_identity(env, x.cor.src));
        if (iso && ab_is_iso(*iso)) return FlatWitness{node, *iso};
    }
    if (!env->hom_enumerable()) return std::nullopt;
    // bounded search: kernels of single-basis-morphism maps between small
    // delta tuples
    int nv = env->vertex_count();
    std::vector<AddObj> tuples;
    for (int v = 0; v < nv; ++v) tuples.push_back({v});
    for (int v = 0; v < nv; ++v)
        for (int w = v; w < nv; ++w) tuples.push_back({v, w});
    int tried = 0;
    for (const AddObj& s : tuples)
        for (const AddObj& d : tuples) {
            if (tried >= bound * 16) return std::nullopt;
            HomSpace sp = HomSpace::make(env, s, d);
            for (int t = 0; t < sp.dim() && tried < bound * 16; ++t) {
                ++tried;
                AddMor g = sp.basis_mor(t);
                AbMor gg = ab_mor(pres_delta_tuple(env, s), pres_delta_tuple(env, d), g);
                AbKernel k = ab_kernel(gg);
                const AbMor* wit = nullptr;
                if (pres_isomorphic(k.obj, x, &wit)) {
                    auto srcn = std::make_shared<FlatNode>();
                    srcn->kind = FlatNode::Kind::DeltaTuple;
                    srcn->tuple = s;
                    auto dstn = std::make_shared<FlatNode>();
                    dstn->kind = FlatNode::Kind::DeltaTuple;
                    dstn->tuple = d;
                    auto node = std::make_shared<FlatNode>();
                    node->kind = FlatNode::Kind::KernelOf;
                    node->src = srcn;
                    node->dst = dstn;
                    node->mid = g;
                    return FlatWitness{node, *wit};
                }
            }
        }
    return std::nullopt;
}

bool is_projective_against(const Presentation& x, const AbMor& e) {
    if (!ab_is_epi(e)) throw Error("NotEpi", "lifting target is not an epimorphism");
    AbHom h = ab_hom(x, e.dst);
    for (int g = 0; g < h.module.gens; ++g) {
        Mat c(pres_env(x)->ring(), h.module.gens, 1);
        c.set(g, 0, 1);
        AbMor f = h.decode(c);
        if (!ab_lift(e, f).has_value()) return false;
    }
    return true;
}

}  // namespace freydlab
