#include "freydlab/realize.hpp"

namespace freydlab {

Realization Realization::make(const EnvPtr& env, std::vector<FpModule> vertex_mods,
                              std::vector<ModMap> edge_maps) {
    Realization r(env);
    if (static_cast<int>(vertex_mods.size()) != env->vertex_count())
        throw Error("BadArgument", "one module per base vertex required");
    r.vertex_mods_ = std::move(vertex_mods);
    r.edge_maps_ = std::move(edge_maps);
    if (env->finite()) {
        const FinCat& c = env->fincat();
        if (r.edge_maps_.size() != c.mors.size())
            throw Error("BadArgument", "one map per base morphism required");
        for (size_t m = 0; m < c.mors.size(); ++m) {
            const ModMap& em = r.edge_maps_[m];
            if (!map_well_formed(em))
                throw Error("RelationViolation", "value of " + c.mors[m].name + " is not a map");
        }
        for (size_t o = 0; o < c.objects.size(); ++o)
            if (!maps_equal(r.edge_maps_[c.identity[o]],
                            ModMap::identity(r.vertex_mods_[o])))
                throw Error("RelationViolation", "identity of " + c.objects[o] +
                                                     " is not assigned the identity map");
        for (size_t g = 0; g < c.mors.size(); ++g)
            for (size_t f = 0; f < c.mors.size(); ++f) {
                if (c.mors[f].dst != c.mors[g].src) continue;
                int gf = c.comp[g][f];
                if (!maps_equal(compose(r.edge_maps_[g], r.edge_maps_[f]), r.edge_maps_[gf]))
                    throw Error("RelationViolation",
                                "composite " + c.mors[gf].name + " of " + c.mors[f].name +
                                    " and " + c.mors[g].name + " is violated");
            }
    } else {
        const Quiver& q = env->quiver();
        if (r.edge_maps_.size() != q.edges.size())
            throw Error("BadArgument", "one map per quiver edge required");
        for (size_t e = 0; e < q.edges.size(); ++e)
            if (!map_well_formed(r.edge_maps_[e]))
                throw Error("RelationViolation",
                            "value of edge " + q.edges[e].label + " is not a map");
    }
    return r;
}

Realization Realization::constant(const EnvPtr& env) {
    Realization r(env);
    const Ring& ring = env->ring();
    int nv = env->vertex_count();
    for (int v = 0; v < nv; ++v) r.vertex_mods_.push_back(FpModule::free(ring, 1));
    size_t ne = env->finite() ? env->fincat().mors.size() : env->quiver().edges.size();
    for (size_t e = 0; e < ne; ++e)
        r.edge_maps_.push_back(ModMap::identity(FpModule::free(ring, 1)));
    return r;
}

FpModule Realization::tuple_value(const AddObj& obj) const {
    FpModule m = FpModule::zero(env_->ring());
    for (int v : obj) m = direct_sum(m, vertex_mods_[v]);
    return m;
}

ModMap Realization::base_value(const BaseMor& m) const {
    if (env_->finite()) return edge_maps_[m.word[0]];
    ModMap acc = ModMap::identity(vertex_mods_[m.src]);
    for (int e : m.word) acc = compose(edge_maps_[e], acc);
    return acc;
}

ModMap Realization::add_value(const AddMor& f) const {
    FpModule src = tuple_value(f.src), dst = tuple_value(f.dst);
    Mat mat(env_->ring(), dst.gens, src.gens);
    int roff = 0;
    for (int j = 0; j < f.rows(); ++j) {
        int coff = 0;
        int rstep = vertex_mods_[f.dst[j]].gens;
        for (int i = 0; i < f.cols(); ++i) {
            int cstep = vertex_mods_[f.src[i]].gens;
            Mat block(env_->ring(), rstep, cstep);
            for (const auto& [m, c] : f.at(j, i)) {
                ModMap bm = base_value(m);
                block = block + bm.mat.scaled(c);
            }
            for (int r = 0; r < rstep; ++r)
                for (int cc = 0; cc < cstep; ++cc)
                    if (block.at(r, cc) != 0) mat.set(roff + r, coff + cc, block.at(r, cc));
            coff += cstep;
        }
        roff += rstep;
    }
    return ModMap(src, dst, mat);
}

RealizedObj realize_obj(const Realization& f, const Presentation& x) {
    ModMap rho = f.add_value(x.rel);
    ModMap kappa = f.add_value(x.cor);
    SubKernel ker = mod_kernel(kappa);
    QuotCokernel cok = mod_cokernel(rho);
    // h = image of ker(kappa) inside coker(rho)
    ModMap comp = compose(cok.proj, ker.incl);
    SubImage im = mod_image(comp);
    return RealizedObj{im.module, ker.incl.mat, kappa.src, rho.mat};
}

ModMap realize_mor(const Realization& f, const AbMor& g, const RealizedObj& rx,
                   const RealizedObj& ry) {
    ModMap mid = f.add_value(g.mid);
    // transport generators: image of an x-generator, rewritten in terms of the
    // y-generators modulo the relation layer and the ambient relations
    Mat moved = mid.mat * rx.gens_in_mid;
    Mat sys = ry.gens_in_mid.hstack(ry.rel_cols).hstack(ry.mid_value.rels);
    auto sol = solve_right(sys, moved);
    if (!sol) throw Error("Internal", "realized morphism does not preserve the subquotient");
    Mat coeff = sol->row_range(0, ry.gens_in_mid.cols());
    return ModMap(rx.h, ry.h, coeff);
}

bool realize_is_zero(const Realization& f, const Presentation& x) {
    return is_zero_module(realize_obj(f, x).h);
}

}  // namespace freydlab
