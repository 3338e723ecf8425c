#pragma once

#include <memory>
#include <optional>

#include "freydlab/diagram.hpp"
#include "freydlab/linalg.hpp"

namespace freydlab {

// A base morphism of the envelope's generating category: an edge word for a
// free path base (empty word = identity), a single table index for a finite
// base.
struct BaseMor {
    int src = 0, dst = 0;
    std::vector<int> word;

    bool operator==(const BaseMor& o) const {
        return src == o.src && dst == o.dst && word == o.word;
    }
    bool operator<(const BaseMor& o) const {
        if (src != o.src) return src < o.src;
        if (dst != o.dst) return dst < o.dst;
        if (word.size() != o.word.size()) return word.size() < o.word.size();
        return word < o.word;
    }
};

using LinComb = std::map<BaseMor, mpq_class>;
using AddObj = std::vector<int>;  // tuple of base vertices; empty = zero object

// R-linear additive envelope of a path category or finite category.  Hom-sets
// are free R-modules on the base morphisms; objects are finite vertex tuples.
class Env : public std::enable_shared_from_this<Env> {
public:
    static std::shared_ptr<const Env> free_base(Ring ring, Quiver q);
    static std::shared_ptr<const Env> finite_base(Ring ring, FinCat c);

    const Ring& ring() const { return ring_; }
    bool finite() const { return finite_; }
    const Quiver& quiver() const { return quiver_; }
    const FinCat& fincat() const { return fincat_; }

    int vertex_count() const;
    std::string vertex_name(int v) const;

    BaseMor base_identity(int v) const;
    bool is_base_identity(const BaseMor& m) const;
    BaseMor base_compose(const BaseMor& g, const BaseMor& f) const;
    std::string base_mor_name(const BaseMor& m) const;

    // Full hom basis; finite bases always, free bases only when acyclic.
    bool hom_enumerable() const;
    std::vector<BaseMor> hom_basis(int u, int v) const;

    // All base morphisms u -> v with word length <= maxlen (free base only).
    std::vector<BaseMor> paths_up_to(int u, int v, int maxlen) const;

private:
    Env(Ring r, bool fin) : ring_(std::move(r)), finite_(fin) {}
    Ring ring_;
    bool finite_;
    Quiver quiver_;
    FinCat fincat_;
};

using EnvPtr = std::shared_ptr<const Env>;

// Matrix morphism of the envelope: entry (j, i) is an R-combination of base
// morphisms src[i] -> dst[j].
struct AddMor {
    EnvPtr env;
    AddObj src, dst;
    std::vector<LinComb> entries;  // row-major, dst.size() x src.size()

    LinComb& at(int j, int i) { return entries[static_cast<size_t>(j) * src.size() + i]; }
    const LinComb& at(int j, int i) const {
        return entries[static_cast<size_t>(j) * src.size() + i];
    }
    int rows() const { return static_cast<int>(dst.size()); }
    int cols() const { return static_cast<int>(src.size()); }
};

AddMor am_zero(const EnvPtr& env, AddObj src, AddObj dst);
AddMor am_identity(const EnvPtr& env, AddObj obj);
AddMor am_single(const EnvPtr& env, const BaseMor& m);  // 1x1 on one base morphism
AddMor am_compose(const AddMor& g, const AddMor& f);
AddMor am_add(const AddMor& f, const AddMor& g);
AddMor am_sub(const AddMor& f, const AddMor& g);
AddMor am_neg(const AddMor& f);
AddMor am_scale(const AddMor& f, const mpq_class& c);
bool am_is_zero(const AddMor& f);
bool am_equal(const AddMor& f, const AddMor& g);
void am_check(const AddMor& f);  // entry supports live in the right hom-sets

// Biproduct structure on concatenated tuples.
AddObj obj_concat(const AddObj& a, const AddObj& b);
AddMor am_inject(const EnvPtr& env, const std::vector<AddObj>& parts, int k);
AddMor am_project(const EnvPtr& env, const std::vector<AddObj>& parts, int k);
AddMor am_block_row(const AddMor& f, const AddMor& g);  // [f g] : f.src + g.src -> dst
AddMor am_block_col(const AddMor& f, const AddMor& g);  // [f; g] : src -> f.dst + g.dst
AddMor am_dsum(const AddMor& f, const AddMor& g);

// Linear systems over the envelope: each equation reads
//   sum_t  left_t . X_{u(t)} . right_t  ==  target,
// where each unknown X_u has a prescribed shape and missing left/right
// factors mean identities.  Over cyclic free bases the candidate supports are
// generated from split positions of the known words (propagated across
// equations, optionally widened), which makes the solver sound and
// complete-on-candidates; over enumerable bases it is complete.
struct EnvTerm {
    std::optional<AddMor> left;
    int unknown;
    std::optional<AddMor> right;
};
struct EnvEquation {
    std::vector<EnvTerm> terms;
    AddMor target;
};
struct EnvProblem {
    std::vector<std::pair<AddObj, AddObj>> unknowns;  // (src, dst) shapes
    std::vector<EnvEquation> equations;
};

std::optional<std::vector<AddMor>> env_solve(const EnvProblem& p, int widen = 2);

// h with g∘h = f (and the left-sided variant h with h∘g = f).
std::optional<AddMor> factor_right(const AddMor& f, const AddMor& g);
std::optional<AddMor> factor_left(const AddMor& f, const AddMor& g);

// Universal additive representation of the base.
AddObj delta_obj(int vertex);
AddMor delta_edge(const EnvPtr& env, int edge);      // free base edge
AddMor delta_mor(const EnvPtr& env, const BaseMor& m);

}  // namespace freydlab
