#ifndef QELLR_TATE_HPP
#define QELLR_TATE_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qellr/rational.hpp"

namespace qellr {

// Integer Laurent polynomials in q^{1/d}, with a primitive n-th root of unity adjoined (n = 1: none).
struct TateRing {
    int n = 1;
    int64_t d = 1;
};

// Monomial unit u q^e with u a root of unity exp(2 pi i angle), angle in [0, 1).
struct TateUnit {
    Rational angle;
    Rational e;

    // sign * zeta_n^a * q^e
    static TateUnit make(int sign, int n, int64_t a, const Rational& e);
    TateUnit operator*(const TateUnit& o) const;
    TateUnit inverse() const;
    TateUnit pow(int64_t k) const;
    bool lies_in(const TateRing& R) const;
    // (sign, a) with u = sign * zeta_n^a, a in [0, n) and sign = +1 when possible; throws outside +-mu_n
    std::pair<int, int64_t> root_of_unity(int n) const;
    bool operator==(const TateUnit& o) const { return angle == o.angle && e == o.e; }
    bool operator<(const TateUnit& o) const { return angle < o.angle || (angle == o.angle && e < o.e); }
    std::string str() const;
};
TateUnit q_power(const Rational& e);

// N-torsion point (xi, i/N) with xi^N = q^i and 0 <= i < N.
struct TatePoint {
    int N = 1;
    TateUnit xi;
    int i = 0;
    bool operator==(const TatePoint& o) const { return N == o.N && xi == o.xi && i == o.i; }
    bool operator<(const TatePoint& o) const;
    std::string str() const;
};

bool is_torsion_point(const TatePoint& p);
// Throws std::invalid_argument unless p is an N-torsion point.
void check_torsion_point(const TatePoint& p);
TatePoint tate_identity(int N);
TatePoint multiply(const TatePoint& p1, const TatePoint& p2);
TatePoint invert(const TatePoint& p);
TatePoint power(const TatePoint& p, int64_t k);

// All monomial-unit N-torsion points over R, in a fixed order.
std::vector<TatePoint> torsion_points(int N, const TateRing& R);
// The ring Z[q^{+-1/N}][zeta_N] over which T[N] is split.
TateRing split_ring(int N);

// a_N(zeta^j) = (zeta^j, 0) and b_N(xi, i/N) = i/N mod Z.
TatePoint a_N(int N, int64_t j);
Rational b_N(const TatePoint& p);

struct ExactnessReport {
    bool a_injective = true;
    bool composite_zero = true;      // b_N o a_N = 0
    bool kernel_is_image = true;     // ker b_N = im a_N
    bool surjective = true;          // b_N onto Z[1/N]/Z over the split ring
    bool integral_surjective = false;  // b_N over Z[q^{+-1}][zeta_N] (only i = 0 occurs)
    bool inversion_diagram = true;   // iota a_N = a_N inv, b_N iota = -b_N
    bool all() const {
        return a_injective && composite_zero && kernel_is_image && surjective && inversion_diagram;
    }
};
ExactnessReport exactness_check(int N);

struct GroupAxiomReport {
    int64_t points = 0;
    bool closure = true;
    bool identity = true;
    bool associative = true;
    bool commutative = true;
    bool inverse = true;        // p * invert(p) = 1
    bool involutive = true;     // invert(invert(p)) = p
    bool swaps_sheets = true;   // invert maps T_i to T_{N-i}
    bool all() const { return closure && identity && associative && commutative && inverse && involutive && swaps_sheets; }
};
// Exhaustive over torsion_points(N, split_ring(N)).
GroupAxiomReport check_group_axioms(int N);

// T[N] -> mu_N x Z[1/N]/Z, (zeta^j q^{i/N}, i/N) -> (j, i).
std::pair<int64_t, int> split_iso(const TatePoint& p);
TatePoint split_inverse(int N, int64_t j, int i);
struct SplitReport {
    bool bijective = true;
    bool homomorphism = true;
    bool involution_matches = true;  // iota(alpha^j, i/N) = (alpha^-j, (N-i)/N)
    int64_t fixed_points = 0;        // of iota
    int64_t two_torsion = 0;         // of mu_N x Z/N
    bool all() const { return bijective && homomorphism && involution_matches && fixed_points == two_torsion; }
};
SplitReport check_split(int N);

// Sheets T_i[N] = Spec Z[q^{+-1}][x]/(x^N - q^i) against the presentation of qell_point(Z_N).
struct TorsionComparison {
    std::vector<std::string> tate_relations;
    std::vector<std::string> qell_relations;
    std::vector<int64_t> tate_ranks;  // rank of each sheet over Z[q^{+-1}]
    std::vector<int64_t> qell_ranks;  // rank of the matching component
    bool match = false;
};
TorsionComparison torsion_vs_qell(int N);

// TR[N]: fixed points of f -> iota o f o Ad_omega^* on Hom(Z_N^*, T) for Z_N inside D_2N.
struct RealFixedPoints {
    int64_t points = 0;
    int64_t fixed = 0;
    int64_t qellr_rank = 0;
    bool trivial_on_classes = false;  // the grading fixes every conjugacy class of Z_N
    bool all() const { return fixed == points && fixed == qellr_rank && trivial_on_classes; }
};
RealFixedPoints real_fixed_points(int N);

// c : QEllR_{Z_N}(pt) -> QEll_{Z_N}(pt) is a bijection on bases with no q-shift, and ranks agree
// (the base change of KR_T(pt) -> K_T(pt) at degree 0).
struct PullbackReport {
    int64_t qellr_rank = 0;
    int64_t qell_rank = 0;
    bool bijective = false;
    bool all_real = false;
    bool all() const { return qellr_rank == qell_rank && bijective && all_real; }
};
PullbackReport pullback_square(int N);

// Coefficients of q^0..q^P of the Tate curve Weierstrass coefficients.
std::vector<int64_t> tate_a4(int P);  // -5 sum sigma_3(m) q^m
std::vector<int64_t> tate_a6(int P);  // (1/12) sum (7 sigma_5(m) + 5 sigma_3(m)) q^m

}  // namespace qellr

#endif
