#ifndef QELLR_GROUP_HPP
#define QELLR_GROUP_HPP

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace qellr {

struct OrderBoundExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Order bound from QELLR_ORDER_BOUND (default 10000).
int64_t order_bound();
void check_order_bound(int64_t n, const std::string& what);

// Finite group with a Z/2-grading pi: G^ -> {+1,-1}. Element 0 is the identity.
class GradedGroup {
public:
    GradedGroup() = default;
    // table[a*n+b] = a*b; throws std::invalid_argument when axioms fail
    GradedGroup(int n, std::vector<int> table, std::vector<int> pi, std::string name = "");

    int order() const { return n_; }
    int mul(int a, int b) const { return table_[static_cast<size_t>(a) * n_ + b]; }
    int inv(int a) const { return inv_[a]; }
    int pi(int a) const { return pi_[a]; }
    bool odd(int a) const { return pi_[a] < 0; }
    bool graded() const { return omega_ >= 0; }
    // smallest odd element, -1 when trivially graded
    int omega() const { return omega_; }
    int elem_order(int a) const { return ord_[a]; }
    int power(int a, int64_t k) const;
    int exponent() const;
    int conj(int s, int g) const { return mul(mul(s, g), inv(s)); }
    // Real conjugation s.g = s g^{pi(s)} s^{-1}
    int real_conj(int s, int g) const { return conj(s, pi_[s] > 0 ? g : inv(g)); }
    bool commute(int a, int b) const { return mul(a, b) == mul(b, a); }
    std::vector<int> kernel() const;
    const std::vector<int>& table() const { return table_; }
    const std::vector<int>& grading() const { return pi_; }
    const std::string& name() const { return name_; }
    void set_name(std::string s) { name_ = std::move(s); }

private:
    int n_ = 0;
    std::vector<int> table_;
    std::vector<int> inv_;
    std::vector<int> pi_;
    std::vector<int> ord_;
    int omega_ = -1;
    std::string name_;
};

using GroupPtr = std::shared_ptr<const GradedGroup>;

// Closed subset of a parent group, indexed in parent order.
struct Subgroup {
    GroupPtr parent;
    GroupPtr group;
    std::vector<int> to_parent;
    std::vector<int> from_parent;  // -1 outside
    bool contains(int parent_elem) const { return from_parent[parent_elem] >= 0; }
};

Subgroup make_subgroup(const GroupPtr& parent, std::vector<int> elements, const std::string& name = "");
std::vector<int> generated_subgroup(const GradedGroup& g, const std::vector<int>& gens);

// G / N for a normal subgroup N inside ker pi. section[q] is the least element of the coset.
struct Quotient {
    GroupPtr group;
    std::vector<int> proj;
    std::vector<int> section;
};
Quotient quotient_group(const GroupPtr& g, const std::vector<int>& normal, const std::string& name = "");

// Permutation generators (images of 0..d-1), composition (ab)(x) = a(b(x)).
GroupPtr build_group(const std::vector<std::vector<int>>& generators, const std::vector<int>& pi_of_generators,
                     const std::string& name = "");
GroupPtr cyclic_group(int n, bool graded = false);
GroupPtr dihedral_group(int n);  // order 2n, reflections odd
GroupPtr symmetric_group(int n, bool sign_graded = false);
GroupPtr quaternion_group();
GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b);
GroupPtr split_graded(const GroupPtr& a);  // a x Z/2 with the Z/2 factor odd
GroupPtr trivial_group();
GroupPtr ungraded(const GroupPtr& a);  // same table, grading forgotten
// Family syntax: cyclic:n, cyclic_graded:n, dihedral:n, symmetric:n, symmetric_sign:n,
// quaternion:8, split(X), product(X,Y), ungraded(X)
GroupPtr group_from_spec(const std::string& spec);

// Conjugacy data. For Real classes the domain is ker(pi) under Real conjugation by all
// of G^; sign is -1 when an odd element fixes the class and +1 otherwise.
struct ClassData {
    std::vector<int> reps;
    std::vector<int> class_of;  // -1 outside the domain
    std::vector<std::vector<int>> members;
    std::vector<int> sign;
    int count() const { return static_cast<int>(reps.size()); }
    int size(int c) const { return static_cast<int>(members[c].size()); }
};

ClassData ordinary_classes(const GradedGroup& g);  // all elements, conjugation by all
ClassData kernel_classes(const GradedGroup& g);    // ker pi, conjugation by ker pi
ClassData real_classes(const GradedGroup& g);

std::vector<int> centralizer(const GradedGroup& g, int x);         // ordinary, all elements
std::vector<int> real_centralizer(const GradedGroup& g, int x);    // {s : s.x = x}
std::vector<int> kernel_centralizer(const GradedGroup& g, int x);  // commuting elements of ker pi

// Real commuting pairs (g,h) in ker pi, up to simultaneous Real conjugation; g is a
// Real class representative and h is minimal in its C^R(g)-orbit.
struct PairClass {
    int g;
    int h;
    int orbit_size;
};
std::vector<PairClass> real_pair_classes(const GradedGroup& g);
std::vector<PairClass> ordinary_pair_classes(const GradedGroup& g);  // pairs in ker pi

// Graded wreath product: (g_1..g_N; sigma) with all g_i of the same grade,
// (g;s)(h;t) = (g_i h_{s^-1(i)}; s t), pi = pi(g_1).
struct WreathGroup {
    GroupPtr base;
    int N = 0;
    GroupPtr group;
    std::vector<std::vector<int>> comps;
    std::vector<std::vector<int>> perms;
    int index_of(const std::vector<int>& comp, const std::vector<int>& perm) const;
    std::vector<int> lookup;  // dense code -> index, -1 if not uniform
    std::vector<std::vector<int>> all_perms;
};

std::shared_ptr<const WreathGroup> graded_wreath(const GroupPtr& base, int N);

// Permutation helpers (0-based images).
std::vector<int> perm_compose(const std::vector<int>& a, const std::vector<int>& b);  // a after b
std::vector<int> perm_inverse(const std::vector<int>& a);
std::vector<std::vector<int>> perm_cycles(const std::vector<int>& a);  // min entry first
std::vector<std::vector<int>> all_permutations(int N);

// Left G^-set: act[g*size + x] = g.x
struct GSet {
    int size = 0;
    std::vector<int> act;
    int apply(int g, int x) const { return act[static_cast<size_t>(g) * size + x]; }
};
void validate_gset(const GradedGroup& g, const GSet& x);
GSet point_gset(const GradedGroup& g);
// X |_| X over G x Z/2, the odd generator swapping the copies
GSet trivial_cover(const GradedGroup& g, const GSet& x);

// All subgroups (as sorted element lists), via joins of cyclic subgroups.
std::vector<std::vector<int>> all_subgroups(const GradedGroup& g);

// Homomorphisms G^ -> Z/k as value vectors.
std::vector<std::vector<int>> homomorphisms_to_cyclic(const GradedGroup& g, int k);

bool is_normal(const GradedGroup& g, const std::vector<int>& sub);

}  // namespace qellr

#endif
