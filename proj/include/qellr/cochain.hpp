#ifndef QELLR_COCHAIN_HPP
#define QELLR_COCHAIN_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "qellr/group.hpp"
#include "qellr/rational.hpp"

namespace qellr {

// Cochain BG^ -> (1/m)Z/Z stored as numerators in [0, m). A tuple [x_n|...|x_1] is
// passed left to right, t[0] = x_n. Twisted cochains use the coefficient action of pi.
class Cochain {
public:
    using Eval = std::function<int64_t(const int*)>;

    Cochain() = default;
    Cochain(GroupPtr base, int degree, bool twisted, int64_t modulus, std::vector<int64_t> dense);
    Cochain(GroupPtr base, int degree, bool twisted, int64_t modulus, Eval eval);

    const GroupPtr& base() const { return base_; }
    int degree() const { return degree_; }
    bool twisted() const { return twisted_; }
    int64_t modulus() const { return m_; }
    bool dense() const { return !dense_.empty() || degree_ == 0; }

    int64_t at(const int* t) const;
    int64_t operator()(const std::vector<int>& t) const { return at(t.data()); }
    int64_t operator()(std::initializer_list<int> t) const { return at(std::data(t)); }

    // Number of tuples |G^|^degree.
    int64_t tuple_count() const;
    Cochain materialized() const;
    Cochain with_modulus(int64_t M) const;

private:
    GroupPtr base_;
    int degree_ = 0;
    bool twisted_ = false;
    int64_t m_ = 1;
    std::vector<int64_t> dense_;
    std::shared_ptr<const Eval> eval_;
};

// Iterate over all tuples of a given length (lexicographic).
void for_each_tuple(int n, int len, const std::function<void(const int*)>& f);

Cochain zero_cochain(const GroupPtr& base, int degree, bool twisted, int64_t m);
Cochain differential(const Cochain& c);
Cochain add(const Cochain& a, const Cochain& b);
Cochain negate(const Cochain& a);
Cochain scale(const Cochain& a, int64_t k);
bool equal(const Cochain& a, const Cochain& b);
bool is_cocycle(const Cochain& c);
bool is_normalized(const Cochain& c);

// Pullback along a graded homomorphism phi: H -> base given elementwise.
Cochain pullback(const Cochain& c, const GroupPtr& H, const std::vector<int>& phi);
Cochain restrict_to(const Cochain& c, const Subgroup& s);

Cochain random_cochain(const GroupPtr& base, int degree, bool twisted, int64_t m, std::mt19937_64& rng);

// Exact cocycle sampling: kernel of d over Z/m when small, else pullbacks of cyclic
// generators plus coboundaries.
class CocycleSampler {
public:
    CocycleSampler(GroupPtr base, int degree, bool twisted, int64_t m);
    Cochain sample(std::mt19937_64& rng) const;
    bool exact_basis() const { return !basis_.empty(); }

private:
    GroupPtr base_;
    int degree_;
    bool twisted_;
    int64_t m_;
    std::vector<std::vector<int64_t>> basis_;  // over normalized tuples
    std::vector<Cochain> generators_;
};

Cochain random_cocycle(const GroupPtr& base, int degree, bool twisted, int64_t m, uint64_t seed);

// Standard degree-3 generator of Z/k pulled back along phi: G^ -> Z/k, in (1/m)Z/Z (k | m).
Cochain cyclic_pullback_cocycle(const GroupPtr& base, const std::vector<int>& phi, int k, int64_t m);

// Returns gamma with a - b = d(gamma) when it exists.
std::optional<Cochain> cohomologous(const Cochain& a, const Cochain& b);

// Central extension of G^ by Z/m from a degree-2 cocycle:
// (w2,z2)(w1,z1) = (w2 w1, theta[w2|w1] + z2 + pi(w2) z1), element index w*m + z.
struct Extension {
    GroupPtr base;
    int64_t m = 1;
    GroupPtr group;
    int encode(int w, int64_t z) const { return static_cast<int>(w * m + mod(z, m)); }
    int base_of(int e) const { return static_cast<int>(e / m); }
    int64_t z_of(int e) const { return e % m; }
};
std::shared_ptr<const Extension> central_extension(const Cochain& theta);

}  // namespace qellr

#endif
