#ifndef QELLR_POWER_HPP
#define QELLR_POWER_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "qellr/cochain.hpp"
#include "qellr/cyclotomic.hpp"
#include "qellr/group.hpp"
#include "qellr/qellr.hpp"

namespace qellr {

// wp_N(a)[a_1|...|a_n] = sum_j a[g_{1,j} | g_{2,s1^-1(j)} | g_{3,(s1 s2)^-1(j)} | ...], a_i = (g_i; s_i).
// N = 0 gives the zero cochain on the trivial group.
Cochain wreath_twist(const Cochain& a, const std::shared_ptr<const WreathGroup>& W);

// Inclusion G wr (S_N wr S_M) -> G wr S_{MN}: the block j carries f_j and
// (tau; s) . (j, k) = (s(j), tau_{s(j)}(k)). The mutated variant uses tau_j instead.
enum class BlockEmbedding { Standard, Mutated };
std::vector<int> block_embedding(const WreathGroup& outer, const WreathGroup& inner, const WreathGroup& big,
                                 BlockEmbedding kind = BlockEmbedding::Standard);

struct TwistIdentityReport {
    bool unit = true;         // wp_0 = 0 and wp_1 = a
    bool cochain_map = true;  // d wp_N = wp_N d
    bool external = true;     // wp_M x wp_N = i^* wp_{M+N}
    bool composite = true;    // wp_M wp_N = i^* wp_{MN}
    bool product = true;      // wp_N(a + b) = i^*(wp_N a x wp_N b)
    bool embedding_hom = true;
    int64_t tuples = 0;       // tuples compared
    bool exhaustive = true;
    bool all() const { return unit && cochain_map && external && composite && product && embedding_hom; }
};
// Exhaustive when the tuple count is at most `budget`, otherwise a seeded sample of that size.
TwistIdentityReport verify_twist_identities(const Cochain& a, const Cochain& b, int M, int N,
                                            BlockEmbedding kind = BlockEmbedding::Standard,
                                            int64_t budget = 20000000, uint64_t seed = 0);

// Character of V^{x N} on the even part of the wreath group: prod over cycles of chi(g_{i_k} ... g_{i_1}).
std::vector<Cyc> power_rep(const std::vector<Cyc>& chi, const WreathGroup& W);
// Twisted version: chi on the extension E of the base by theta (level one). Values on the extension of W
// by wp_N(theta), indexed like W_ext.
std::vector<Cyc> power_rep_twisted(const Extension& E, const std::vector<Cyc>& chi, const WreathGroup& W,
                                   const Extension& W_ext);
// Tensor construction oracle: rho given as square matrices per base element (rows of Cyc).
using CycMatrix = std::vector<std::vector<Cyc>>;
Cyc tensor_power_trace(const std::vector<CycMatrix>& rho, const WreathGroup& W, int element);

// Cycle combinatorics of (g; sigma).
struct CycleData {
    struct Cycle {
        std::vector<int> points;  // (i_1, ..., i_k) with sigma(i_l) = i_{l+1}, minimal entry first
        int product = 0;          // g_{i_k} ... g_{i_1}
        int block = 0;
    };
    std::vector<Cycle> cycles;                  // ordered by length, then first entry
    std::vector<std::vector<int>> blocks;       // W^sigma_i as cycle indices; first entry in theta_k
    int length(int c) const { return static_cast<int>(cycles[c].points.size()); }
};
CycleData cycle_data(const WreathGroup& W, int element);

struct BetaCoefficient {
    int from = 0;      // cycle i
    int to = 0;        // cycle j = tau(i)
    int offset = 0;    // m_i
    int value = 0;     // beta (even) or beta hat (odd), first expression
    int alternative = 0;  // second expression
    bool odd = false;
    bool in_transporter = false;  // value in T^R(g_j-product, g_i-product)
    bool grade_ok = false;
};
// (h; tau) must lie in the Real centralizer of (g; sigma).
std::vector<BetaCoefficient> beta_coefficients(const WreathGroup& W, int element, int h);

// Real class invariant of an even element: the sorted (cycle length, kernel class of the cycle product)
// pairs, minimized over the simultaneous action of an odd element. base_kernel = kernel_classes(base).
std::vector<std::pair<int, int>> cycle_type_invariant(const WreathGroup& W, int element,
                                                      const ClassData& base_kernel);

// Target of the N-th power operation: the space over the graded wreath product (Z/2 for N = 0 when Real).
struct PowerSpace {
    std::shared_ptr<const WreathGroup> wreath;  // null for N = 0
    int N = 0;
    QEllRSpace space;
};
PowerSpace power_space(const QEllRSpace& S, int N, int jobs = 1);

// P_N on untwisted point classes (Real or complex, following S). Rejects twisted input.
QClass power_operation(const QEllRSpace& S, const QClass& x, const PowerSpace& T);
// Truncated stringy version: coefficients up to q^P.
TateSeries stringy_power(const QEllRSpace& S, const QClass& x, const PowerSpace& T, int64_t P);

// Graded homomorphism W_M x_{Z2} W_N -> W_{M+N} on the fibered product's element order.
std::vector<int> external_embedding(const WreathGroup& A, const WreathGroup& B, const WreathGroup& AB);

}  // namespace qellr

#endif
