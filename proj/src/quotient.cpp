#include "freydlab/quotient.hpp"

#include <set>

namespace freydlab {

CertPtr cert_gen(const Presentation& subject, int index) {
    auto c = std::make_shared<Certificate>();
    c->kind = Certificate::Kind::Gen;
    c->subject = subject;
    c->gen_index = index;
    return c;
}

CertPtr cert_zero(const Presentation& subject) {
    auto c = std::make_shared<Certificate>();
    c->kind = Certificate::Kind::Zero;
    c->subject = subject;
    return c;
}

CertPtr cert_iso(const Presentation& subject, const AbMor& iso, CertPtr other) {
    auto c = std::make_shared<Certificate>();
    c->kind = Certificate::Kind::IsoTo;
    c->subject = subject;
    c->witness = std::make_shared<AbMor>(iso);
    c->children = {std::move(other)};
    return c;
}

CertPtr cert_sub(const Presentation& subject, const AbMor& mono, CertPtr ambient) {
    auto c = std::make_shared<Certificate>();
    c->kind = Certificate::Kind::SubOf;
    c->subject = subject;
    c->witness = std::make_shared<AbMor>(mono);
    c->children = {std::move(ambient)};
    return c;
}

CertPtr cert_quot(const Presentation& subject, const AbMor& epi, CertPtr source) {
    auto c = std::make_shared<Certificate>();
    c->kind = Certificate::Kind::QuotOf;
    c->subject = subject;
    c->witness = std::make_shared<AbMor>(epi);
    c->children = {std::move(source)};
    return c;
}

CertPtr cert_ext(const Presentation& subject, const AbMor& mono, const AbMor& epi, CertPtr sub,
                 CertPtr quot) {
    auto c = std::make_shared<Certificate>();
    c->kind = Certificate::Kind::ExtOf;
    c->subject = subject;
    c->witness = std::make_shared<AbMor>(mono);
    c->witness2 = std::make_shared<AbMor>(epi);
    c->children = {std::move(sub), std::move(quot)};
    return c;
}

bool verify_certificate(const Certificate& cert, const std::vector<Presentation>& gens) {
    try {
        switch (cert.kind) {
            case Certificate::Kind::Gen:
                return cert.gen_index >= 0 && cert.gen_index < static_cast<int>(gens.size()) &&
                       pres_key(gens[cert.gen_index]) == pres_key(cert.subject);
            case Certificate::Kind::Zero:
                return pres_is_zero(cert.subject);
            case Certificate::Kind::IsoTo: {
                if (cert.children.size() != 1 || !cert.witness) return false;
                const AbMor& f = *cert.witness;
                if (pres_key(f.src) != pres_key(cert.children[0]->subject)) return false;
                if (pres_key(f.dst) != pres_key(cert.subject)) return false;
                return ab_is_iso(f) && verify_certificate(*cert.children[0], gens);
            }
            case Certificate::Kind::SubOf: {
                if (cert.children.size() != 1 || !cert.witness) return false;
                const AbMor& m = *cert.witness;
                if (pres_key(m.src) != pres_key(cert.subject)) return false;
                if (pres_key(m.dst) != pres_key(cert.children[0]->subject)) return false;
                return ab_is_mono(m) && verify_certificate(*cert.children[0], gens);
            }
            case Certificate::Kind::QuotOf: {
                if (cert.children.size() != 1 || !cert.witness) return false;
                const AbMor& e = *cert.witness;
                if (pres_key(e.dst) != pres_key(cert.subject)) return false;
                if (pres_key(e.src) != pres_key(cert.children[0]->subject)) return false;
                return ab_is_epi(e) && verify_certificate(*cert.children[0], gens);
            }
            case Certificate::Kind::ExtOf: {
                if (cert.children.size() != 2 || !cert.witness || !cert.witness2) return false;
                const AbMor& a = *cert.witness;
                const AbMor& b = *cert.witness2;
                if (pres_key(a.dst) != pres_key(cert.subject)) return false;
                if (pres_key(b.src) != pres_key(cert.subject)) return false;
                if (pres_key(a.src) != pres_key(cert.children[0]->subject)) return false;
                if (pres_key(b.dst) != pres_key(cert.children[1]->subject)) return false;
                if (!ab_is_mono(a) || !ab_is_epi(b)) return false;
                if (!ab_is_zero(ab_compose(b, a))) return false;
                AbKernel kb = ab_kernel(b);
                auto u = ab_lift(kb.incl, a);
                if (!u || !ab_is_epi(*u)) return false;  // exactness: im a = ker b
                return verify_certificate(*cert.children[0], gens) &&
                       verify_certificate(*cert.children[1], gens);
            }
        }
    } catch (const Error&) {
        return false;
    }
    return false;
}

SerreQuotient quotient_by_realization(const EnvPtr& env, Realization f) {
    SerreQuotient q;
    q.mode = SerreQuotient::Mode::Realization;
    q.env = env;
    q.functor = std::make_shared<Realization>(std::move(f));
    q.cert_db = std::make_shared<std::map<std::string, CertPtr>>();
    return q;
}

SerreQuotient quotient_by_gens(const EnvPtr& env, std::vector<Presentation> gens, int cert_bound,
                               std::vector<std::string> names) {
    SerreQuotient q;
    q.mode = SerreQuotient::Mode::Formal;
    q.env = env;
    q.gens = std::move(gens);
    q.gen_names = std::move(names);
    while (q.gen_names.size() < q.gens.size())
        q.gen_names.push_back("g" + std::to_string(q.gen_names.size()));
    q.cert_bound = cert_bound;
    q.cert_db = std::make_shared<std::map<std::string, CertPtr>>();
    return q;
}

void register_separator(SerreQuotient& q, const std::string& name, Realization f) {
    q.separators.emplace_back(name, std::make_shared<Realization>(std::move(f)));
}

namespace {

// literal direct-summand recognition: x is a leading or trailing block of g
std::optional<AbMor> summand_inclusion(const Presentation& x, const Presentation& g) {
    auto slice_rest = [&](const AddObj& whole, const AddObj& part,
                          bool leading) -> std::optional<AddObj> {
        if (part.size() > whole.size()) return std::nullopt;
        size_t off = leading ? 0 : whole.size() - part.size();
        for (size_t i = 0; i < part.size(); ++i)
            if (whole[off + i] != part[i]) return std::nullopt;
        AddObj rest;
        for (size_t i = 0; i < whole.size(); ++i)
            if (i < off || i >= off + part.size()) rest.push_back(whole[i]);
        return rest;
    };
    for (bool leading : {true, false}) {
        auto rr = slice_rest(g.rel.src, x.rel.src, leading);
        auto rm = slice_rest(g.rel.dst, x.rel.dst, leading);
        auto rc = slice_rest(g.cor.dst, x.cor.dst, leading);
        if (!rr || !rm || !rc) continue;
        const EnvPtr& env = pres_env(x);
        Presentation w{am_zero(env, *rr, *rm), am_zero(env, *rm, *rc)};
        // reconstruct w's matrices from g by complementary blocks: simplest is
        // to test the dsum key directly with both orders
        // try w as the complementary block of a plain direct sum
        // build candidate w by reading the complementary blocks of g
        auto read_block = [&](const AddMor& big, size_t roff, size_t coff, const AddObj& rsel,
                              const AddObj& csel) {
            AddMor m = am_zero(env, csel, rsel);
            for (size_t j = 0; j < rsel.size(); ++j)
                for (size_t i = 0; i < csel.size(); ++i)
                    m.at(static_cast<int>(j), static_cast<int>(i)) =
                        big.at(static_cast<int>(roff + j), static_cast<int>(coff + i));
            return m;
        };
        size_t mr = leading ? x.rel.dst.size() : 0;
        size_t cr = leading ? x.rel.src.size() : 0;
        size_t cc = leading ? x.cor.dst.size() : 0;
        w.rel = read_block(g.rel, mr, cr, *rm, *rr);
        w.cor = read_block(g.cor, cc, mr, *rc, *rm);
        Presentation combined = leading ? pres_dsum(x, w) : pres_dsum(w, x);
        if (pres_key(combined) != pres_key(g)) continue;
        AbMor inc = ab_inject({leading ? x : w, leading ? w : x}, leading ? 0 : 1);
        // retarget the inclusion to g itself (structurally equal)
        inc.dst = g;
        return inc;
    }
    return std::nullopt;
}

ZeroAnswer formal_is_zero(const SerreQuotient& q, const Presentation& x,
                          std::set<std::string>& in_progress, int depth);

CertPtr certify(const SerreQuotient& q, const Presentation& x, std::set<std::string>& in_progress,
                int depth) {
    std::string key = pres_key(x);
    auto cached = q.cert_db->find(key);
    if (cached != q.cert_db->end()) return cached->second;
    if (depth > q.cert_bound || in_progress.count(key)) return nullptr;
    in_progress.insert(key);
    CertPtr found;

    if (pres_is_zero(x)) found = cert_zero(x);

    if (!found)
        for (size_t i = 0; i < q.gens.size() && !found; ++i)
            if (pres_key(q.gens[i]) == key) found = cert_gen(x, static_cast<int>(i));

    if (!found)
        for (size_t i = 0; i < q.gens.size() && !found; ++i)
            if (auto inc = summand_inclusion(x, q.gens[i]))
                found = cert_sub(x, *inc, cert_gen(q.gens[i], static_cast<int>(i)));

    // subquotient of the delta tuple on the middle object
    if (!found) {
        const EnvPtr& env = pres_env(x);
        const AddObj& mid = x.rel.dst;
        bool is_plain_delta = am_is_zero(x.rel) && am_is_zero(x.cor) && x.rel.src.empty() &&
                              x.cor.dst.empty();
        if (!mid.empty() && !is_plain_delta) {
            // certify each Delta(v) first
            std::vector<CertPtr> vertex_certs;
            bool all = true;
            for (int v : mid) {
                CertPtr cv = certify(q, pres_delta(env, v), in_progress, depth + 1);
                if (!cv) {
                    all = false;
                    break;
                }
                vertex_certs.push_back(cv);
            }
            if (all) {
                // extension chain for the delta tuple
                CertPtr tuple_cert = vertex_certs[0];
                Presentation acc = pres_delta(env, mid[0]);
                for (size_t t = 1; t < mid.size(); ++t) {
                    Presentation nxt = pres_delta(env, mid[t]);
                    Presentation whole = pres_dsum(acc, nxt);
                    AbMor a = ab_inject({acc, nxt}, 0);
                    AbMor b = ab_project({acc, nxt}, 1);
                    tuple_cert = cert_ext(whole, a, b, tuple_cert, vertex_certs[t]);
                    acc = whole;
                }
                // K = ker(cor as a map of delta tuples), a subobject of the tuple
                AbMor kappa = ab_mor(pres_delta_tuple(env, mid),
                                     pres_delta_tuple(env, x.cor.dst), x.cor);
                AbKernel k = ab_kernel(kappa);
                CertPtr kcert = cert_sub(k.obj, k.incl, tuple_cert);
                // X is the quotient of K by the relation layer
                auto qmor = ab_mor_try(k.obj, x, am_identity(env, mid));
                if (qmor && ab_is_epi(*qmor)) found = cert_quot(x, *qmor, kcert);
            }
        }
    }

    in_progress.erase(key);
    if (found) (*q.cert_db)[key] = found;
    return found;
}

ZeroAnswer formal_is_zero(const SerreQuotient& q, const Presentation& x,
                          std::set<std::string>& in_progress, int depth) {
    CertPtr c = certify(q, x, in_progress, depth);
    if (c) return {ZeroAnswer::Verdict::Yes, c, "certificate"};
    // registered separators that kill every generator give sound No answers
    for (const auto& [name, f] : q.separators) {
        bool kills = true;
        for (const auto& g : q.gens)
            if (!realize_is_zero(*f, g)) {
                kills = false;
                break;
            }
        if (kills && !realize_is_zero(*f, x))
            return {ZeroAnswer::Verdict::No, nullptr, "separated by realization " + name};
    }
    if (q.gens.empty()) {
        Realization id = Realization::constant(q.env);
        if (!realize_is_zero(id, x))
            return {ZeroAnswer::Verdict::No, nullptr,
                    "empty generator set; the constant realization separates"};
    }
    return {ZeroAnswer::Verdict::Unknown, nullptr, "bounded search exhausted"};
}

}  // namespace

ZeroAnswer is_zero_in_quotient(const SerreQuotient& q, const Presentation& x) {
    if (q.mode == SerreQuotient::Mode::Realization) {
        RealizedObj r = realize_obj(*q.functor, x);
        auto inv = module_invariants(r.h);
        if (inv.is_zero()) return {ZeroAnswer::Verdict::Yes, nullptr, "F(x) = 0"};
        return {ZeroAnswer::Verdict::No, nullptr, "F(x) = " + inv.to_string()};
    }
    std::set<std::string> in_progress;
    return formal_is_zero(q, x, in_progress, 0);
}

namespace {

// encode a module map F(x) -> F(y) in the coordinates of hom_module(Fx, Fy)
std::optional<Mat> encode_hom(const HomModule& hm, const Mat& value) {
    const Ring& ring = hm.src.ring;
    int n = hm.dst.gens, m = hm.src.gens;
    Mat g(ring, n * m, static_cast<int>(hm.generator_mats.size()));
    for (size_t j = 0; j < hm.generator_mats.size(); ++j) {
        Mat v = vec_cols(hm.generator_mats[j]);
        for (int r = 0; r < n * m; ++r) g.set(r, static_cast<int>(j), v.at(r, 0));
    }
    Mat theta = kron(Mat::identity(ring, m), hm.dst.rels);
    auto sol = solve_right(g.hstack(theta), vec_cols(value));
    if (!sol) return std::nullopt;
    return sol->row_range(0, g.cols());
}

bool spans_equal(const FpModule& ambient, const Mat& e1, const Mat& e2) {
    bool a = e2.cols() == 0 ? e1.is_zero()
                            : solve_right(e2.hstack(ambient.rels), e1).has_value();
    bool b = e1.cols() == 0 ? e2.is_zero()
                            : solve_right(e1.hstack(ambient.rels), e2).has_value();
    return a && b;
}

}  // namespace

QuotientHom quotient_hom(const SerreQuotient& q, const Presentation& x, const Presentation& y,
                         int sat_bound, int len0) {
    if (q.mode != SerreQuotient::Mode::Realization)
        throw Error("FormalModeUnsupported", "quotient homs need realization mode");
    const Realization& F = *q.functor;
    const EnvPtr& env = q.env;
    RealizedObj fx = realize_obj(F, x), fy = realize_obj(F, y);
    if (is_zero_module(fx.h) || is_zero_module(fy.h))
        return {FpModule::zero(env->ring()), 0, true};
    HomModule hm = hom_module(fx.h, fy.h);
    bool enumerable = env->hom_enumerable();

    Presentation xs = x;
    AbMor chain = ab_identity(x);  // xs -> x
    Mat span(env->ring(), hm.hom.gens, 0);
    Mat prev_span = span;
    int stage = 0;
    for (int s = 0; s <= sat_bound; ++s) {
        RealizedObj fxs = realize_obj(F, xs);
        ModMap chain_val = realize_mor(F, chain, fxs, fx);
        auto inv_chain = mod_inverse(chain_val);
        if (!inv_chain) break;  // descent stopped being an F-isomorphism
        AbHom fam = enumerable ? ab_hom(xs, y) : ab_hom_bounded(xs, y, len0 + s);
        for (int g = 0; g < fam.module.gens; ++g) {
            Mat c(env->ring(), fam.module.gens, 1);
            c.set(g, 0, 1);
            AbMor mor = fam.decode(c);
            ModMap val = realize_mor(F, mor, fxs, fy);
            ModMap through_x = compose(val, *inv_chain);
            auto coeffs = encode_hom(hm, through_x.mat);
            if (!coeffs) throw Error("Internal", "realized hom failed to encode");
            span = span.hstack(*coeffs);
        }
        if (s > 0 && spans_equal(hm.hom, prev_span, span)) {
            ModMap sub(FpModule::free(env->ring(), prev_span.cols()), hm.hom, prev_span);
            return {mod_image(sub).module, stage, true};
        }
        prev_span = span;
        stage = s;
        // visible-part descent for the next stage
        if (s < sat_bound) {
            std::vector<Presentation> parts;
            std::vector<AbMor> maps;
            for (int v = 0; v < env->vertex_count(); ++v) {
                Presentation dv = pres_delta(env, v);
                AbHom pts = enumerable ? ab_hom(dv, xs) : ab_hom_bounded(dv, xs, len0 + s);
                for (int g = 0; g < pts.module.gens; ++g) {
                    Mat c(env->ring(), pts.module.gens, 1);
                    c.set(g, 0, 1);
                    parts.push_back(dv);
                    maps.push_back(pts.decode(c));
                }
            }
            if (!parts.empty()) {
                AbMor e = ab_zero_mor(parts.size() == 1 ? parts[0] : parts[0], xs);
                // assemble sum of g_k . proj_k on the direct sum
                Presentation whole = parts[0];
                for (size_t t = 1; t < parts.size(); ++t) whole = pres_dsum(whole, parts[t]);
                e = ab_zero_mor(whole, xs);
                for (size_t t = 0; t < parts.size(); ++t)
                    e = ab_add(e, ab_compose(maps[t], ab_project(parts, static_cast<int>(t))));
                AbImage im = ab_image(e);
                chain = ab_compose(chain, im.incl);
                xs = im.obj;
            }
        }
    }
    ModMap sub(FpModule::free(env->ring(), span.cols()), hm.hom, span);
    return {mod_image(sub).module, stage, false};
}

}  // namespace freydlab
