#include "qellr/enhanced.hpp"

#include <stdexcept>

#include "qellr/transgression.hpp"

namespace qellr {

namespace {

std::shared_ptr<const Extension> centralizer_extension(const GroupPtr& grp, int g, const Subgroup& C, const Cochain* alpha) {
    if (alpha) {
        if (alpha->degree() != 3) throw std::invalid_argument("twist must be a degree-3 cochain");
        if (alpha->base() != grp && alpha->base()->table() != grp->table())
            throw std::invalid_argument("twist lives on a different group");
        if (!is_cocycle(*alpha)) throw std::invalid_argument("twist is not a cocycle");
        auto tau = real_transgress(*alpha).materialized();
        return central_extension(component(tau, g, C));
    }
    return central_extension(zero_cochain(C.group, 2, C.group->graded(), 1));
}

}  // namespace

int EnhancedModel::rotation_generator() const {
    if (d > 1) return encode(1, ext->encode(0, 0));
    return encode(0, ghat);
}

EnhancedModel enhanced_model_on(const GroupPtr& grp, int g, int level, const Subgroup& centralizer,
                                std::shared_ptr<const Extension> ext, int ghat, bool real) {
    int og = grp->elem_order(g);
    if (level <= 0 || level % og != 0) throw std::invalid_argument("level must be a positive multiple of the order of g");
    EnhancedModel M;
    M.base = grp;
    M.g = g;
    M.level = level;
    M.d = level / og;
    M.real = real;
    M.centralizer = centralizer;
    M.ext = ext;
    M.m = ext->m;
    M.ghat = ghat;
    const GradedGroup& E = *ext->group;
    if (centralizer.to_parent[ext->base_of(ghat)] != g) throw std::invalid_argument("lift does not cover g");
    M.o = E.elem_order(ghat);
    int d = M.d;
    int64_t N64 = static_cast<int64_t>(d) * E.order();
    check_order_bound(N64, "enhanced model");
    int N = static_cast<int>(N64);
    int ghi = E.inv(ghat);
    std::vector<int> table(static_cast<size_t>(N) * N), pi(N);
    for (int a = 0; a < N; ++a) {
        int ka = a % d, xa = a / d;
        pi[a] = E.pi(xa);
        for (int b = 0; b < N; ++b) {
            int kb = b % d, xb = b / d;
            int t = ka + (E.odd(xa) ? -kb : kb);
            int x = E.mul(xa, xb);
            if (t >= d) {
                t -= d;
                x = E.mul(ghat, x);
            } else if (t < 0) {
                t += d;
                x = E.mul(ghi, x);
            }
            table[static_cast<size_t>(a) * N + b] = t + d * x;
        }
    }
    std::string name = std::string(real ? "LambdaR" : "Lambda") + "(" + grp->name() + "," + std::to_string(g) + ",L=" +
                       std::to_string(level) + (M.m > 1 ? ",m=" + std::to_string(M.m) : "") + ")";
    M.group = std::make_shared<GradedGroup>(N, std::move(table), std::move(pi), name);
    return M;
}

EnhancedModel enhanced_model(const GroupPtr& grp, int g, int level, const Cochain* alpha, bool real) {
    if (g < 0 || g >= grp->order()) throw std::invalid_argument("element out of range");
    if (grp->odd(g)) throw std::invalid_argument("enhanced centralizers are defined for even elements");
    std::vector<int> cent = real ? real_centralizer(*grp, g) : kernel_centralizer(*grp, g);
    Subgroup C = make_subgroup(grp, cent, real ? "C^R(g)" : "C(g)");
    auto ext = centralizer_extension(grp, g, C, alpha);
    return enhanced_model_on(grp, g, level, C, ext, ext->encode(C.from_parent[g], 0), real);
}

bool check_real_central(const EnhancedModel& M) {
    const GradedGroup& E = *M.ext->group;
    int ghi = E.inv(M.ghat);
    for (int x = 0; x < E.order(); ++x)
        if (E.mul(E.mul(x, M.ghat), E.inv(x)) != (E.odd(x) ? ghi : M.ghat)) return false;
    // the relation element is trivial in the model
    const GradedGroup& G = *M.group;
    int r = M.encode(0, M.ghat);
    int step = M.d > 1 ? M.encode(1, M.ext->encode(0, 0)) : r;
    int back = G.power(step, M.d);
    return back == r;
}

bool check_level_embedding(const EnhancedModel& a, const EnhancedModel& b) {
    if (b.level % a.level != 0 || a.ext->group->table() != b.ext->group->table() || a.ghat != b.ghat) return false;
    int s = b.level / a.level;
    int N = a.group->order();
    std::vector<int> phi(N);
    std::vector<char> hit(b.group->order(), 0);
    for (int e = 0; e < N; ++e) {
        phi[e] = b.encode(a.k_of(e) * s, a.x_of(e));
        if (hit[phi[e]]) return false;
        hit[phi[e]] = 1;
        if (b.rotation(phi[e]) != a.rotation(e) * s) return false;
        if (b.group->pi(phi[e]) != a.group->pi(e)) return false;
    }
    for (int x = 0; x < N; ++x)
        for (int y = 0; y < N; ++y)
            if (phi[a.group->mul(x, y)] != b.group->mul(phi[x], phi[y])) return false;
    return true;
}

bool check_o2_kernel(const EnhancedModel& M) {
    const GradedGroup& G = *M.group;
    int d = M.d;
    int count = 0;
    for (int e = 0; e < G.order(); ++e) {
        auto [k, p] = M.o2(e);
        bool in_kernel = k == 0 && p == 0;
        bool expected = M.k_of(e) == 0 && !M.ext->group->odd(M.x_of(e));
        if (in_kernel != expected) return false;
        count += in_kernel;
    }
    // O_2 projection is a homomorphism into Z_d x| Z_2
    for (int a = 0; a < G.order(); ++a)
        for (int b = 0; b < G.order(); ++b) {
            auto [ka, pa] = M.o2(a);
            auto [kb, pb] = M.o2(b);
            auto [kc, pc] = M.o2(G.mul(a, b));
            if (kc != static_cast<int>(mod(ka + (pa ? -kb : kb), d)) || pc != (pa ^ pb)) return false;
        }
    int even = 0;
    for (int x = 0; x < M.ext->group->order(); ++x) even += !M.ext->group->odd(x);
    return count == even && even == static_cast<int>(kernel_centralizer(*M.base, M.g).size() * M.m);
}

IgIsomorphism i_g_isomorphism(const Cochain& alpha, int g, int w, int level) {
    GroupPtr G = alpha.base();
    if (G->odd(g)) throw std::invalid_argument("i_g needs g in the +1 part");
    if (!G->odd(w)) throw std::invalid_argument("i_g needs an odd element");
    for (int s : real_centralizer(*G, g))
        if (G->odd(s)) throw std::invalid_argument("i_g needs a class of sign +1; use the Real model");
    IgIsomorphism R;
    R.source = enhanced_model(G, g, level, &alpha, false);
    auto tau = real_transgress(alpha).materialized();
    int g2 = G->real_conj(w, g);
    const Subgroup& C1 = R.source.centralizer;
    Subgroup C2 = make_subgroup(G, kernel_centralizer(*G, g2), "C(g)");
    auto E2 = central_extension(component(tau, g2, C2));
    const auto& E1 = R.source.ext;
    int64_t m = E1->m;
    auto phiE = [&](int e) {
        int h = C1.to_parent[E1->base_of(e)];
        int hw = G->conj(w, h);
        int64_t f = transport_coefficient(tau, w, h, g);
        return E2->encode(C2.from_parent[hw], f - E1->z_of(e));
    };
    int lift = E2->group->inv(phiE(R.source.ghat));
    R.lift_shift = E2->z_of(lift);
    R.target = enhanced_model_on(G, g2, level, C2, E2, lift, false);
    const EnhancedModel& S = R.source;
    const EnhancedModel& T = R.target;
    int N = S.group->order();
    if (T.group->order() != N) return R;
    R.map.assign(N, 0);
    std::vector<char> hit(N, 0);
    R.bijective = true;
    R.inverts_rotation = true;
    for (int e = 0; e < N; ++e) {
        int k = S.k_of(e);
        int x = phiE(S.x_of(e));
        // (-k/d, x) = (0, lift^-1 ... ) normalised into [0, d)
        int img = k == 0 ? T.encode(0, x) : T.encode(T.d - k, E2->group->mul(E2->group->inv(lift), x));
        R.map[e] = img;
        if (hit[img]) R.bijective = false;
        hit[img] = 1;
        if (T.rotation(img) != static_cast<int>(mod(-k, T.d))) R.inverts_rotation = false;
    }
    R.homomorphism = true;
    for (int a = 0; a < N && R.homomorphism; ++a)
        for (int b = 0; b < N; ++b)
            if (R.map[S.group->mul(a, b)] != T.group->mul(R.map[a], R.map[b])) {
                R.homomorphism = false;
                break;
            }
    R.inverts_centre = true;
    for (int64_t z = 0; z < m; ++z)
        if (R.map[S.encode(0, E1->encode(0, z))] != T.encode(0, E2->encode(0, -z))) R.inverts_centre = false;
    return R;
}

std::vector<ModelIrrep> model_irreps(const EnhancedModel& M) {
    TwistedIrreps TM = twisted_irreps(M.group, M.central(), M.m);
    TwistedIrreps TE = twisted_irreps(M.ext);
    const GradedGroup& E = *M.ext->group;
    int rot = M.rotation_generator();
    int64_t n = M.d * M.o;
    std::vector<ModelIrrep> out;
    for (int k = 0; k < TM.count(); ++k) {
        ModelIrrep r;
        r.degree = TM.degree(k);
        r.indicator = M.group->graded() ? TM.indicator[k] : 0;
        Cyc v = TM.value(k, rot);
        int64_t a = -1;
        for (int64_t j = 0; j < n; ++j)
            if (v == Cyc::zeta(static_cast<int>(n), j) * Rational(r.degree)) {
                a = j;
                break;
            }
        if (a < 0) throw std::logic_error("rotation does not act by a scalar");
        r.lambda = Rational(a, M.o);
        r.rho = -1;
        for (int j = 0; j < TE.count() && r.rho < 0; ++j) {
            bool same = TE.degree(j) == r.degree;
            for (int x = 0; x < E.order() && same; ++x)
                if (!E.odd(x) && TE.value(j, x) != TM.value(k, M.encode(0, x))) same = false;
            if (same) r.rho = j;
        }
        if (r.rho < 0) throw std::logic_error("model irrep does not restrict irreducibly");
        out.push_back(r);
    }
    return out;
}

}  // namespace qellr
