#ifndef QELLR_ENHANCED_HPP
#define QELLR_ENHANCED_HPP

#include <memory>
#include <optional>
#include <vector>

#include "qellr/chartable.hpp"
#include "qellr/cochain.hpp"

namespace qellr {

// Finite model of an enhanced centralizer at level L:
//   (Z_{d o} x|_pi E) / <(-d, g^)>,  d = L/|g|, o = order of g^ in E,
// where E is the central extension of the centralizer by Z/m and g^ = (g, 0)
// unless overridden. An element is stored as (k, x) with k in [0, d), so the
// loop parameter is t = k/d. Element index is k + d * x.
struct EnhancedModel {
    GroupPtr base;
    int g = 0;
    int level = 1;
    int d = 1;
    int64_t o = 1;
    bool real = true;                        // centralizer C^R(g) or C_G(g)
    Subgroup centralizer;                    // inside base
    std::shared_ptr<const Extension> ext;    // E
    int ghat = 0;                            // element of E
    GroupPtr group;                          // the model
    int64_t m = 1;

    int encode(int k, int x) const { return k + d * x; }
    int k_of(int e) const { return e % d; }
    int x_of(int e) const { return e / d; }
    int central() const { return encode(0, ext->encode(0, m > 1 ? 1 : 0)); }
    // element t = 1/d
    int rotation_generator() const;
    // rotation homomorphism to Z_d (t mod 1)
    int rotation(int e) const { return k_of(e); }
    // projection to O_2 data (t mod 1, pi)
    std::pair<int, int> o2(int e) const { return {k_of(e), group->odd(e) ? 1 : 0}; }
};

// alpha (degree 3, plain) optional; real = false builds Lambda_G(g) over C_G(g).
EnhancedModel enhanced_model(const GroupPtr& grp, int g, int level, const Cochain* alpha = nullptr, bool real = true);
// Model on a given extension with a chosen lift g^ of g (must be Real central).
EnhancedModel enhanced_model_on(const GroupPtr& grp, int g, int level, const Subgroup& centralizer,
                                std::shared_ptr<const Extension> ext, int ghat, bool real);

// Verifies x g^ x^-1 = g^^{pi(x)} for every x in E.
bool check_real_central(const EnhancedModel& model);
// (k, x) -> (k * L'/L, x); checks homomorphism, injectivity and rotation compatibility.
bool check_level_embedding(const EnhancedModel& small, const EnhancedModel& big);
// Kernel of the O_2 projection equals {(0, x) : x even in E}.
bool check_o2_kernel(const EnhancedModel& model);

struct IgIsomorphism {
    EnhancedModel source;
    EnhancedModel target;  // model at w g^-1 w^-1 with lift phi(g^)^-1
    std::vector<int> map;
    int64_t lift_shift = 0;  // z-part of the target lift
    bool homomorphism = false;
    bool bijective = false;
    bool inverts_centre = false;
    bool inverts_rotation = false;
    bool ok() const { return homomorphism && bijective && inverts_centre && inverts_rotation; }
};
// g must be even (+1 part), w odd. The map (t,(h,z)) -> (-t, (w h w^-1, f(h) - z)).
IgIsomorphism i_g_isomorphism(const Cochain& alpha, int g, int w, int level);

struct ModelIrrep {
    int rho = 0;        // twisted irrep of the even part of E
    Rational lambda;    // q-exponent in (1/o)Z mod d
    int64_t degree = 1;
    int indicator = 0;  // graded indicator inside the model (0 if ungraded model)
};
std::vector<ModelIrrep> model_irreps(const EnhancedModel& model);

}  // namespace qellr

#endif
