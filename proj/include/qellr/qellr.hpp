#ifndef QELLR_QELLR_HPP
#define QELLR_QELLR_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qellr/chartable.hpp"
#include "qellr/cochain.hpp"
#include "qellr/transgression.hpp"

namespace qellr {

// Laurent polynomial in q with integer coefficients: power -> coefficient.
using LPoly = std::map<int64_t, int64_t>;
// Series in rational powers of q with cyclotomic coefficients.
using QSeries = std::map<Rational, Cyc>;

// A basis element: a Real (or complex) twisted irreducible of the stabilizer extension
// together with its q-exponent lambda in [0, 1), fixed by the rotation condition
// rho(g, 0) = deg * exp(2 pi i lambda).
struct QBasis {
    int irrep = 0;      // index into irreps.real
    RealType type = RealType::Complex;
    Rational lambda;
    int64_t degree = 1;  // degree of the underlying complex character
};

struct QComponent {
    int g = 0;           // class representative (in the space's group)
    int point = -1;      // orbit representative in X^g
    int sign = 1;        // -1 when the stabilizer has odd elements
    Subgroup stabilizer;  // C^R(g) or C(g), intersected with Stab(point)
    std::shared_ptr<const Extension> ext;
    int ghat = 0;        // (g, 0) in ext
    int64_t o = 1;       // order of ghat, the level at which exponents live
    TwistedIrreps irreps;
    std::vector<QBasis> basis;

    int rank() const { return static_cast<int>(basis.size()); }
    // underlying complex character of basis b at ext element e (even)
    Cyc value(int b, int e) const { return irreps.forgot_value(basis[b].irrep, e); }
    // e for (h, z) with h in the parent group
    int lift(int h, int64_t z = 0) const { return ext->encode(stabilizer.from_parent[h], z); }
};

// Degree-0 quasi-elliptic data of X // G. real = true: Real theory of a graded group.
// real = false: complex theory of the ungraded group (for a graded input, its kernel).
struct QEllRSpace {
    GroupPtr group;            // graded group for real, ungraded group otherwise
    Subgroup embed;            // group inside the original (identity for real)
    bool real = true;
    std::optional<Cochain> alpha;  // on the original group
    int64_t m = 1;
    GSet X;                    // action of the original group
    GroupoidCochain tau;       // transgressed 2-cocycle on the loop groupoid of group
    std::vector<QComponent> comps;

    bool twisted() const { return alpha.has_value(); }
    int64_t rank() const;
    int find_component(int g, int point = 0) const;
};

// jobs: number of worker threads for component construction (results are ordered).
QEllRSpace qellr_gset(const GroupPtr& grp, const GSet& X, const Cochain* alpha = nullptr, int jobs = 1);
QEllRSpace qellr_point(const GroupPtr& grp, const Cochain* alpha = nullptr, int jobs = 1);
// Complex theory of ker(pi) (or of the whole group when it is ungraded).
QEllRSpace qell_gset(const GroupPtr& grp, const GSet& X, const Cochain* alpha = nullptr, int jobs = 1);
QEllRSpace qell_point(const GroupPtr& grp, const Cochain* alpha = nullptr, int jobs = 1);

// Element: coefficient polynomial per component and basis element.
struct QClass {
    std::vector<std::vector<LPoly>> c;
    bool operator==(const QClass& o) const { return c == o.c; }
};
QClass zero_class(const QEllRSpace& S);
QClass basis_class(const QEllRSpace& S, int comp, int b, int64_t power = 0);
QClass unit_class(const QEllRSpace& S);  // untwisted only
QClass random_class(const QEllRSpace& S, std::mt19937_64& rng, int terms = 4);
QClass add(const QClass& a, const QClass& b);
QClass scale_q(const QClass& a, int64_t k);  // multiply by q^k
// Ring product on untwisted spaces (componentwise tensor product).
QClass multiply(const QEllRSpace& S, const QClass& a, const QClass& b);
// Coefficients of a character (values on the even part of the component's extension) in the
// component basis; throws if not an integral combination.
std::vector<int64_t> decompose_in_component(const QComponent& c, const std::vector<Cyc>& values_on_ext);

// Character of a class on an untwisted complex point space: the series sum_b n_b chi_b(h) q^(lambda_b + k)
// at the loop gamma with automorphism h (both in the space's parent group, gamma even, h in C(gamma)).
class ClassCharacter {
public:
    explicit ClassCharacter(const QEllRSpace& complex);
    QSeries operator()(const QClass& x, int gamma, int h) const;
    // component of gamma and u with gamma = u g u^-1 (space indices)
    std::pair<int, int> locate(int gamma) const;

private:
    const QEllRSpace* S_;
    std::vector<int> comp_of_, conj_by_;
};
// Class on an untwisted point space (Real or complex) from its character: f(gamma, h) with gamma a
// component representative and h in the even part of its stabilizer, both in the parent group.
// Throws when f is not an integral (Real) combination compatible with the rotation condition.
QClass class_from_character(const QEllRSpace& S, const std::function<QSeries(int, int)>& f);
// Pullback along a graded homomorphism phi : small.parent -> big.parent (untwisted points).
QClass restrict_class(const QEllRSpace& big, const QClass& x, const QEllRSpace& small, const std::vector<int>& phi);
QSeries series_mul(const QSeries& a, const QSeries& b);

// Forgetful map QEllR -> QEll as a matrix: (comp, b) -> list of (comp', b', multiplicity, q-shift).
struct ForgetfulMap {
    struct Term {
        int comp;
        int b;
        int64_t mult;
        int64_t shift;
    };
    std::vector<std::vector<std::vector<Term>>> image;
    QClass apply(const QEllRSpace& target, const QClass& x) const;
};
ForgetfulMap forgetful(const QEllRSpace& real, const QEllRSpace& complex);

// Character sheets. Points only. Real spaces give ph on Real pair classes, complex spaces ch.
struct Sheet {
    std::vector<PairClass> pairs;  // in the space's group
    std::vector<QSeries> values;
    bool operator==(const Sheet& o) const;
};
Sheet character_sheet(const QEllRSpace& S, const QClass& x);
// c on sheets: transport along phi_s with the coefficient zeta_m^{-kappa}.
Sheet sheet_forget(const QEllRSpace& real, const QEllRSpace& complex, const Sheet& s);
// Equivariance of a Real sheet under C^R(g,h) with the twisted coefficient character.
bool sheet_invariant(const QEllRSpace& real, const Sheet& s);
// z-part kappa of phi_s((h,0)^{pi(s)}), where phi_s : E_g -> E_{s.g}.
int64_t transport_kappa(const QEllRSpace& real, int s, int g, int h);

// Presentations.
struct RingPresentation {
    std::string ground;  // "Z[q^{+-1}]" or "KR(pt)[q^{+-1}]" (degree 0)
    std::vector<std::string> generators;
    std::vector<std::string> relations;
};
// For a cyclic kernel Z_n: per component m, x_m = U_1 q^{m/n} with x_m^n = q^m, verified in the ring.
std::vector<RingPresentation> cyclic_presentation(const QEllRSpace& S);

// Rotation condition on every basis element: lambda * o integral and rho(g,0) = deg e^{2 pi i lambda}.
bool check_rotation_condition(const QEllRSpace& S);
// Rank of the component of g from the enhanced model at level |g| (Real-counted irreps).
int64_t model_component_rank(const QEllRSpace& S, int comp);

// Change of group: components of X x_H G // G matched with those of X // H.
struct ChangeOfGroup {
    QEllRSpace induced;  // over G
    QEllRSpace local;    // over H
    std::vector<int> match;  // induced component -> local component
    bool bijective = false;
};
// hsub: graded subgroup of grp, X an H-set (action of hsub.group).
ChangeOfGroup change_of_group(const Subgroup& hsub, const GSet& X, const Cochain* alpha = nullptr);
GSet induce_gset(const Subgroup& hsub, const GSet& X);

// Real induction on points, untwisted: image of basis element (comp, b) of the subgroup space.
QClass induction(const QEllRSpace& big, const QEllRSpace& small, const Subgroup& hsub, const QClass& a);
struct TransferIdeal {
    std::vector<std::vector<std::vector<int64_t>>> span;  // per component, spanning vectors
    std::vector<int64_t> quotient_rank;                  // per component
    std::vector<std::vector<int64_t>> torsion;           // per component, invariant factors > 1
};
TransferIdeal transfer_ideal(const QEllRSpace& S);

// Tate completion truncated at q^P.
struct TateSeries {
    std::vector<std::vector<LPoly>> c;
    int64_t truncation = 0;
    bool rotation_ok = true;
};
TateSeries tate_completion(const QEllRSpace& S, const QClass& x, int64_t P);

// Kunneth on points, untwisted: x over G^, y over H^, into the space of G^ x_{Z2} H^.
GroupPtr fibered_product(const GroupPtr& a, const GroupPtr& b);
QClass kunneth(const QEllRSpace& A, const QEllRSpace& B, const QEllRSpace& AB, const QClass& x, const QClass& y);

// Swap cover: QEllR(X + X // G x Z2) against QEll(X // G); true if the forgetful map restricted to
// the first copy is a bijection on bases.
bool trivial_cover_reduction(const GroupPtr& g, const GSet& X, const Cochain* alpha = nullptr);

// Involution V -> conj(w^* V) on the complex point data of ker(pi); returns the permutation of
// (comp, b) flattened, and the rank of the fixed sublattice.
struct Involution {
    std::vector<std::pair<int, int>> basis;  // flattened (comp, b)
    std::vector<int> perm;
    int64_t fixed_rank = 0;
};
Involution rep_ring_involution(const GroupPtr& graded);

}  // namespace qellr

#endif
