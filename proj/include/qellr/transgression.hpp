#ifndef QELLR_TRANSGRESSION_HPP
#define QELLR_TRANSGRESSION_HPP

#include <functional>
#include <memory>

#include "qellr/cochain.hpp"

namespace qellr {

// Cochain on the action groupoid ker(pi) // G^ (Real conjugation). A tuple
// [s_n|...|s_1]x starts at object x; s_1 acts first. Twisted cochains carry the
// coefficient action of pi.
class GroupoidCochain {
public:
    using Eval = std::function<int64_t(const int*, int)>;

    GroupoidCochain() = default;
    GroupoidCochain(GroupPtr base, int degree, bool twisted, int64_t modulus, Eval eval);

    const GroupPtr& base() const { return base_; }
    int degree() const { return degree_; }
    bool twisted() const { return twisted_; }
    int64_t modulus() const { return m_; }
    int64_t at(const int* t, int obj) const { return mod((*eval_)(t, obj), m_); }
    int64_t operator()(std::initializer_list<int> t, int obj) const { return at(std::data(t), obj); }

    // Dense copy (tuples over G^, objects over ker pi).
    GroupoidCochain materialized() const;

private:
    GroupPtr base_;
    int degree_ = 0;
    bool twisted_ = false;
    int64_t m_ = 1;
    std::shared_ptr<const Eval> eval_;
};

GroupoidCochain groupoid_differential(const GroupoidCochain& c);
// Compare on all tuples and kernel objects; even_only restricts to ker pi morphisms.
bool groupoid_equal(const GroupoidCochain& a, const GroupoidCochain& b, bool even_only = false);
GroupoidCochain groupoid_negate(const GroupoidCochain& a);

// Loop transgression on a trivially graded group, lambda of any degree >= 1.
GroupoidCochain transgress(const Cochain& lambda);

// Reflection twisted transgression of a plain 3-cochain (values twisted, degree 2).
GroupoidCochain real_transgress(const Cochain& alpha);
// Degree-2 companion on plain cochains, fixed by the cochain-map property.
GroupoidCochain real_transgress_deg2(const Cochain& lambda);
// Twisted 2-cochain to plain 1-cochain.
GroupoidCochain real_transgress_ref(const Cochain& theta);
// Twisted 1-cochain to plain 0-cochain.
GroupoidCochain real_transgress_ref_deg1(const Cochain& mu);

// Restriction to the automorphism group of object g: a cochain on the stabiliser.
Cochain component(const GroupoidCochain& c, int g, const Subgroup& stabilizer);
// Restriction along the double cover (even morphisms only) as a trivially graded groupoid cochain.
GroupoidCochain restrict_even(const GroupoidCochain& c, const GroupPtr& kernel_group, const std::vector<int>& to_parent);

// Transport on the extension groupoid of a twisted 2-cocycle c at object g:
// phi_s(h, z) = (s h s^-1, c([s|h]g) - c([s h s^-1|s]g) + pi(s) z) for h fixing g.
int64_t transport_coefficient(const GroupoidCochain& c, int s, int h, int g);

struct RealCentralReport {
    bool ok = true;
    int64_t checked = 0;
};
// Checks (s,z)(g,0)(s,z)^-1 = (g,0)^{pi(s)} in the extension of C^R(g) for every s, z.
RealCentralReport check_real_central(const Cochain& alpha, int g);

// For g and odd w: the map ^aC_G(g) -> ^aC_G(w.g), (h, z) -> (w h w^-1, f(h) - z) with
// f(h) = c([w|h]g) - c([w h w^-1|w]g). True if it is an isomorphism inverting the centre.
bool check_i_g(const Cochain& alpha, int g, int w);

}  // namespace qellr

#endif
