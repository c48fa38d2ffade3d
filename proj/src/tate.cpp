#include "qellr/tate.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "qellr/qellr.hpp"

namespace qellr {

TateUnit TateUnit::make(int sign, int n, int64_t a, const Rational& e) {
    if (n < 1) throw std::invalid_argument("root of unity order must be positive");
    if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
    TateUnit u;
    u.angle = (Rational(mod(a, n), n) + Rational(sign < 0 ? 1 : 0, 2)).frac();
    u.e = e;
    return u;
}

TateUnit TateUnit::operator*(const TateUnit& o) const {
    TateUnit u;
    u.angle = (angle + o.angle).frac();
    u.e = e + o.e;
    return u;
}

TateUnit TateUnit::inverse() const {
    TateUnit u;
    u.angle = (-angle).frac();
    u.e = -e;
    return u;
}

TateUnit TateUnit::pow(int64_t k) const {
    TateUnit u;
    u.angle = (angle * Rational(k)).frac();
    u.e = e * Rational(k);
    return u;
}

bool TateUnit::lies_in(const TateRing& R) const {
    bool root = (angle * Rational(R.n)).is_integer() || ((angle - Rational(1, 2)) * Rational(R.n)).is_integer();
    return root && (e * Rational(R.d)).is_integer();
}

std::pair<int, int64_t> TateUnit::root_of_unity(int n) const {
    Rational a = angle * Rational(n);
    if (a.is_integer()) return {1, a.num()};
    Rational b = (angle - Rational(1, 2)).frac() * Rational(n);
    if (b.is_integer()) return {-1, b.num()};
    throw std::invalid_argument("root of unity outside +-mu_" + std::to_string(n));
}

std::string TateUnit::str() const {
    std::string s;
    if (!angle.is_zero()) s = "exp(2 pi i " + angle.str() + ")";
    if (!e.is_zero()) s += (s.empty() ? "" : " ") + std::string("q^") + e.str();
    return s.empty() ? "1" : s;
}

TateUnit q_power(const Rational& e) {
    TateUnit u;
    u.e = e;
    return u;
}

bool TatePoint::operator<(const TatePoint& o) const {
    if (N != o.N) return N < o.N;
    if (i != o.i) return i < o.i;
    return xi < o.xi;
}

std::string TatePoint::str() const { return "(" + xi.str() + ", " + std::to_string(i) + "/" + std::to_string(N) + ")"; }

bool is_torsion_point(const TatePoint& p) {
    if (p.N < 1 || p.i < 0 || p.i >= p.N) return false;
    return p.xi.pow(p.N) == q_power(Rational(p.i));
}

void check_torsion_point(const TatePoint& p) {
    if (!is_torsion_point(p))
        throw std::invalid_argument("not an N-torsion point: xi^N != q^i for " + p.str());
}

TatePoint tate_identity(int N) { return TatePoint{N, q_power(Rational(0)), 0}; }

TatePoint multiply(const TatePoint& p1, const TatePoint& p2) {
    if (p1.N != p2.N) throw std::invalid_argument("torsion points of different level");
    check_torsion_point(p1);
    check_torsion_point(p2);
    TatePoint r;
    r.N = p1.N;
    r.xi = p1.xi * p2.xi;
    r.i = p1.i + p2.i;
    if (r.i >= r.N) {
        r.xi = r.xi * q_power(Rational(-1));
        r.i -= r.N;
    }
    return r;
}

TatePoint invert(const TatePoint& p) {
    check_torsion_point(p);
    if (p.i == 0) return TatePoint{p.N, p.xi.inverse(), 0};
    return TatePoint{p.N, p.xi.inverse() * q_power(Rational(1)), p.N - p.i};
}

TatePoint power(const TatePoint& p, int64_t k) {
    TatePoint base = k < 0 ? invert(p) : p;
    TatePoint r = tate_identity(p.N);
    for (int64_t t = 0; t < (k < 0 ? -k : k); ++t) r = multiply(r, base);
    return r;
}

TateRing split_ring(int N) { return TateRing{N, N}; }

std::vector<TatePoint> torsion_points(int N, const TateRing& R) {
    if (N < 1) throw std::invalid_argument("N must be positive");
    std::vector<TatePoint> out;
    for (int i = 0; i < N; ++i) {
        Rational e(i, N);
        if (!(e * Rational(R.d)).is_integer()) continue;
        // roots of unity s zeta_n^a with (s zeta^a)^N = 1
        std::set<TateUnit> units;
        for (int s : {1, -1})
            for (int64_t a = 0; a < R.n; ++a) {
                TateUnit u = TateUnit::make(s, R.n, a, e);
                if (u.pow(N) == q_power(Rational(i))) units.insert(u);
            }
        for (const auto& u : units) out.push_back(TatePoint{N, u, i});
    }
    return out;
}

TatePoint a_N(int N, int64_t j) { return TatePoint{N, TateUnit::make(1, N, j, Rational(0)), 0}; }

Rational b_N(const TatePoint& p) { return Rational(p.i, p.N); }

ExactnessReport exactness_check(int N) {
    ExactnessReport r;
    auto pts = torsion_points(N, split_ring(N));
    std::set<TatePoint> image;
    for (int64_t j = 0; j < N; ++j) {
        TatePoint p = a_N(N, j);
        if (!is_torsion_point(p)) r.a_injective = false;
        image.insert(p);
        if (!b_N(p).is_zero()) r.composite_zero = false;
        if (!(invert(p) == a_N(N, -j))) r.inversion_diagram = false;
        for (int64_t k = 0; k < N; ++k)
            if (!(multiply(p, a_N(N, k)) == a_N(N, j + k))) r.a_injective = false;
    }
    if (static_cast<int>(image.size()) != N) r.a_injective = false;
    std::set<TatePoint> kernel;
    std::set<int> hit;
    for (const auto& p : pts) {
        if (b_N(p).is_zero()) kernel.insert(p);
        hit.insert(p.i);
        if (!(b_N(invert(p)) == (-b_N(p)).frac())) r.inversion_diagram = false;
        for (const auto& q : pts)
            if (!(b_N(multiply(p, q)) == (b_N(p) + b_N(q)).frac())) r.composite_zero = false;
    }
    r.kernel_is_image = kernel == image;
    r.surjective = static_cast<int>(hit.size()) == N;
    std::set<int> hit_integral;
    for (const auto& p : torsion_points(N, TateRing{N, 1})) hit_integral.insert(p.i);
    r.integral_surjective = static_cast<int>(hit_integral.size()) == N;
    return r;
}

GroupAxiomReport check_group_axioms(int N) {
    GroupAxiomReport r;
    auto pts = torsion_points(N, split_ring(N));
    r.points = static_cast<int64_t>(pts.size());
    std::set<TatePoint> all(pts.begin(), pts.end());
    TatePoint one = tate_identity(N);
    const TateRing R = split_ring(N);
    for (const auto& p : pts) {
        if (!(multiply(p, one) == p) || !(multiply(one, p) == p)) r.identity = false;
        TatePoint ip = invert(p);
        if (!(multiply(p, ip) == one)) r.inverse = false;
        if (!(invert(ip) == p)) r.involutive = false;
        if (ip.i != (N - p.i) % N) r.swaps_sheets = false;
        for (const auto& q : pts) {
            TatePoint pq = multiply(p, q);
            if (!all.count(pq) || !pq.xi.lies_in(R)) r.closure = false;
            if (!(pq == multiply(q, p))) r.commutative = false;
            for (const auto& s : pts)
                if (!(multiply(pq, s) == multiply(p, multiply(q, s)))) r.associative = false;
        }
    }
    return r;
}

std::pair<int64_t, int> split_iso(const TatePoint& p) {
    check_torsion_point(p);
    TateUnit u = p.xi * q_power(-Rational(p.i, p.N));
    Rational j = u.angle * Rational(p.N);
    if (!u.e.is_zero() || !j.is_integer()) throw std::invalid_argument("point is not over the split ring");
    return {j.num(), p.i};
}

TatePoint split_inverse(int N, int64_t j, int i) {
    return TatePoint{N, TateUnit::make(1, N, j, Rational(0)) * q_power(Rational(i, N)), i};
}

SplitReport check_split(int N) {
    SplitReport r;
    auto pts = torsion_points(N, split_ring(N));
    std::set<std::pair<int64_t, int>> images;
    for (const auto& p : pts) {
        auto s = split_iso(p);
        images.insert(s);
        if (!(split_inverse(N, s.first, s.second) == p)) r.bijective = false;
        auto t = split_iso(invert(p));
        if (t != std::make_pair(mod(-s.first, N), static_cast<int>(mod(N - s.second, N)))) r.involution_matches = false;
        if (invert(p) == p) ++r.fixed_points;
        for (const auto& q : pts) {
            auto u = split_iso(q);
            auto w = split_iso(multiply(p, q));
            if (w != std::make_pair(mod(s.first + u.first, N), static_cast<int>(mod(s.second + u.second, N))))
                r.homomorphism = false;
        }
    }
    if (static_cast<int64_t>(images.size()) != static_cast<int64_t>(N) * N) r.bijective = false;
    int64_t two = 0;
    for (int j = 0; j < N; ++j)
        if ((2 * j) % N == 0) ++two;
    r.two_torsion = two * two;
    return r;
}

TorsionComparison torsion_vs_qell(int N) {
    TorsionComparison t;
    for (int i = 0; i < N; ++i) {
        t.tate_relations.push_back("x_" + std::to_string(i) + "^" + std::to_string(N) + " - q^" + std::to_string(i));
        t.tate_ranks.push_back(N);  // basis 1, x, ..., x^{N-1}
    }
    auto S = qell_point(cyclic_group(N));
    auto pres = cyclic_presentation(S);
    std::vector<std::pair<int, int64_t>> by_m;
    for (size_t c = 0; c < pres.size(); ++c) {
        int m = std::stoi(pres[c].generators[0].substr(2));
        by_m.emplace_back(m, S.comps[c].rank());
        t.qell_relations.push_back(pres[c].relations[0]);
    }
    std::sort(by_m.begin(), by_m.end());
    for (auto [m, rk] : by_m) t.qell_ranks.push_back(rk);
    std::vector<std::string> a = t.tate_relations, b = t.qell_relations;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    t.match = a == b && t.tate_ranks == t.qell_ranks && static_cast<int>(by_m.size()) == N;
    for (int m = 0; m < static_cast<int>(by_m.size()) && t.match; ++m)
        if (by_m[m].first != m) t.match = false;
    return t;
}

RealFixedPoints real_fixed_points(int N) {
    RealFixedPoints r;
    auto pts = torsion_points(N, split_ring(N));
    r.points = static_cast<int64_t>(pts.size());
    // a homomorphism f : Z_N^* -> T[N] is its value p on a generator; Ad_omega^* inverts Z_N^*
    for (const auto& p : pts)
        if (invert(power(p, N - 1)) == p) ++r.fixed;
    auto D = dihedral_group(N);
    ClassData rc = real_classes(*D);
    r.trivial_on_classes = rc.count() == N;
    for (int c = 0; c < rc.count(); ++c)
        if (rc.size(c) != 1) r.trivial_on_classes = false;
    r.qellr_rank = qellr_point(D).rank();
    return r;
}

PullbackReport pullback_square(int N) {
    PullbackReport r;
    auto D = dihedral_group(N);
    auto R = qellr_point(D);
    auto C = qell_point(D);
    r.qellr_rank = R.rank();
    r.qell_rank = C.rank();
    r.all_real = true;
    for (const auto& c : R.comps)
        for (const auto& b : c.basis)
            if (b.type != RealType::R) r.all_real = false;
    auto F = forgetful(R, C);
    std::set<std::pair<int, int>> targets;
    bool ok = true;
    for (const auto& comp : F.image)
        for (const auto& terms : comp) {
            if (terms.size() != 1 || terms[0].mult != 1 || terms[0].shift != 0) ok = false;
            for (const auto& t : terms) targets.insert({t.comp, t.b});
        }
    r.bijective = ok && static_cast<int64_t>(targets.size()) == r.qell_rank;
    return r;
}

namespace {

int64_t divisor_power_sum(int64_t m, int k) {
    int64_t s = 0;
    for (int64_t n = 1; n <= m; ++n)
        if (m % n == 0) {
            int64_t p = 1;
            for (int j = 0; j < k; ++j) p *= n;
            s += p;
        }
    return s;
}

}  // namespace

std::vector<int64_t> tate_a4(int P) {
    std::vector<int64_t> c(std::max(P, 0) + 1, 0);
    for (int m = 1; m <= P; ++m) c[m] = -5 * divisor_power_sum(m, 3);
    return c;
}

std::vector<int64_t> tate_a6(int P) {
    std::vector<int64_t> c(std::max(P, 0) + 1, 0);
    for (int m = 1; m <= P; ++m) {
        int64_t s = 7 * divisor_power_sum(m, 5) + 5 * divisor_power_sum(m, 3);
        if (s % 12 != 0) throw std::logic_error("a6 coefficient is not integral");
        c[m] = s / 12;
    }
    return c;
}

}  // namespace qellr
