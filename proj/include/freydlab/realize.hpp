#pragma once

#include "freydlab/freyd.hpp"

namespace freydlab {

// Assignment of fp modules to base vertices and module maps to base edges
// (free base) or base morphisms (finite base), extended to the whole free
// abelian category by exactness.
class Realization {
public:
    static Realization make(const EnvPtr& env, std::vector<FpModule> vertex_mods,
                            std::vector<ModMap> edge_maps);  // RelationViolation

    // The evaluation r_R at the ring over any base: every vertex becomes the
    // free rank-one module and every base morphism the identity.
    static Realization constant(const EnvPtr& env);

    const EnvPtr& env() const { return env_; }
    const FpModule& vertex_value(int v) const { return vertex_mods_[v]; }

    FpModule tuple_value(const AddObj& obj) const;
    ModMap base_value(const BaseMor& m) const;
    ModMap add_value(const AddMor& f) const;

private:
    Realization(EnvPtr env) : env_(std::move(env)) {}
    EnvPtr env_;
    std::vector<FpModule> vertex_mods_;
    std::vector<ModMap> edge_maps_;
};

// Realized presentation: the subquotient im(ker cor -> coker rel) with its
// generators kept as explicit elements of the middle value module.
struct RealizedObj {
    FpModule h;
    Mat gens_in_mid;    // middle-value coordinates of the h generators
    FpModule mid_value; // value of the middle object
    Mat rel_cols;       // image generators of the relation layer
};

RealizedObj realize_obj(const Realization& f, const Presentation& x);
ModMap realize_mor(const Realization& f, const AbMor& g, const RealizedObj& rx,
                   const RealizedObj& ry);
bool realize_is_zero(const Realization& f, const Presentation& x);

}  // namespace freydlab
