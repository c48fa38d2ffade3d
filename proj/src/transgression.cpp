#include "qellr/transgression.hpp"

#include <stdexcept>

namespace qellr {

GroupoidCochain::GroupoidCochain(GroupPtr base, int degree, bool twisted, int64_t modulus, Eval eval)
    : base_(std::move(base)), degree_(degree), twisted_(twisted), m_(modulus),
      eval_(std::make_shared<const Eval>(std::move(eval))) {}

GroupoidCochain GroupoidCochain::materialized() const {
    int n = base_->order();
    int64_t count = 1;
    for (int i = 0; i < degree_; ++i) count *= n;
    if (count * n > 20000000) return *this;
    auto table = std::make_shared<std::vector<int64_t>>(count * n, 0);
    std::vector<int> kernel = base_->kernel();
    int64_t idx = 0;
    for_each_tuple(n, degree_, [&](const int* t) {
        for (int x : kernel) (*table)[idx * n + x] = at(t, x);
        ++idx;
    });
    int deg = degree_;
    return GroupoidCochain(base_, degree_, twisted_, m_, [table, n, deg](const int* t, int x) {
        int64_t c = 0;
        for (int i = 0; i < deg; ++i) c = c * n + t[i];
        return (*table)[c * n + x];
    });
}

GroupoidCochain groupoid_differential(const GroupoidCochain& c) {
    GroupPtr g = c.base();
    int len = c.degree() + 1;
    bool tw = c.twisted();
    return GroupoidCochain(g, len, tw, c.modulus(), [c, g, len, tw](const int* t, int x) {
        int sub[64];
        int64_t acc = 0;
        for (int i = 1; i < len; ++i) sub[i - 1] = t[i];
        acc += ((tw && g->odd(t[0])) ? -1 : 1) * c.at(sub, x);
        for (int j = 1; j < len; ++j) {
            int p = len - j - 1, k = 0;
            for (int i = 0; i < p; ++i) sub[k++] = t[i];
            sub[k++] = g->mul(t[p], t[p + 1]);
            for (int i = p + 2; i < len; ++i) sub[k++] = t[i];
            acc += (((len - j) % 2 == 0) ? 1 : -1) * c.at(sub, x);
        }
        for (int i = 0; i + 1 < len; ++i) sub[i] = t[i];
        acc += ((len % 2 == 0) ? 1 : -1) * c.at(sub, g->real_conj(t[len - 1], x));
        return acc;
    });
}

bool groupoid_equal(const GroupoidCochain& a, const GroupoidCochain& b, bool even_only) {
    if (a.degree() != b.degree()) return false;
    const GroupPtr& g = a.base();
    int64_t M = lcm64(a.modulus(), b.modulus());
    int64_t sa = M / a.modulus(), sb = M / b.modulus();
    std::vector<int> kernel = g->kernel();
    bool ok = true;
    for_each_tuple(g->order(), a.degree(), [&](const int* t) {
        if (!ok) return;
        if (even_only)
            for (int i = 0; i < a.degree(); ++i)
                if (g->odd(t[i])) return;
        for (int x : kernel)
            if (mod(a.at(t, x) * sa, M) != mod(b.at(t, x) * sb, M)) {
                ok = false;
                return;
            }
    });
    return ok;
}

GroupoidCochain groupoid_negate(const GroupoidCochain& a) {
    return GroupoidCochain(a.base(), a.degree(), a.twisted(), a.modulus(),
                           [a](const int* t, int x) { return -a.at(t, x); });
}

GroupoidCochain transgress(const Cochain& lambda) {
    if (lambda.degree() < 1) throw std::invalid_argument("transgression needs degree >= 1");
    if (lambda.base()->graded()) throw std::invalid_argument("loop transgression needs a trivially graded group");
    GroupPtr g = lambda.base();
    int n = lambda.degree() - 1;
    return GroupoidCochain(g, n, false, lambda.modulus(), [lambda, g, n](const int* t, int gamma) {
        int T[64];
        int64_t acc = 0;
        int P = 0;  // g_i ... g_1
        for (int i = 0; i <= n; ++i) {
            if (i > 0) P = g->mul(t[n - i], P);
            int gi = g->conj(P, gamma);
            int k = 0;
            for (int a = 0; a < n - i; ++a) T[k++] = t[a];
            T[k++] = gi;
            for (int a = n - i; a < n; ++a) T[k++] = t[a];
            acc += (((n - i) % 2 == 0) ? 1 : -1) * lambda.at(T);
        }
        return acc;
    });
}

GroupoidCochain real_transgress(const Cochain& alpha) {
    if (alpha.degree() != 3 || alpha.twisted()) throw std::invalid_argument("reflection transgression needs a plain 3-cochain");
    GroupPtr G = alpha.base();
    return GroupoidCochain(G, 2, true, alpha.modulus(), [alpha, G](const int* t, int g) {
        const GradedGroup& H = *G;
        int s2 = t[0], s1 = t[1];
        bool o1 = H.odd(s1), o2 = H.odd(s2);
        int gi = H.inv(g);
        int64_t acc = 0;
        if (o1 && o2) acc += alpha({g, gi, g});
        if (o2) {
            int gp = o1 ? gi : g;   // g^{p1}
            int gm = H.inv(gp);     // g^{-p1}
            int a = H.conj(s1, gm), b = H.conj(s1, gp);
            acc += alpha({a, b, s1}) + alpha({s1, gm, gp}) - alpha({a, s1, gp});
        }
        int gP = (o1 != o2) ? gi : g;
        int s21 = H.mul(s2, s1);
        acc += alpha({s2, s1, gP}) + alpha({H.conj(s21, gP), s2, s1}) - alpha({s2, H.conj(s1, gP), s1});
        return acc;
    });
}

GroupoidCochain real_transgress_deg2(const Cochain& lambda) {
    if (lambda.degree() != 2 || lambda.twisted()) throw std::invalid_argument("expects a plain 2-cochain");
    GroupPtr G = lambda.base();
    return GroupoidCochain(G, 1, true, lambda.modulus(), [lambda, G](const int* t, int g) {
        int s = t[0];
        int gp = G->odd(s) ? G->inv(g) : g;
        int64_t acc = lambda({G->conj(s, gp), s}) - lambda({s, gp});
        if (G->odd(s)) acc += lambda({G->inv(g), g});
        return acc;
    });
}

GroupoidCochain real_transgress_ref(const Cochain& theta) {
    if (theta.degree() != 2 || !theta.twisted()) throw std::invalid_argument("expects a twisted 2-cochain");
    GroupPtr G = theta.base();
    return GroupoidCochain(G, 1, false, theta.modulus(), [theta, G](const int* t, int g) {
        int s = t[0];
        int gp = G->odd(s) ? G->inv(g) : g;
        int64_t acc = theta({G->conj(s, gp), s}) - theta({s, gp});
        if (G->odd(s)) acc -= theta({G->inv(g), g});
        return acc;
    });
}

GroupoidCochain real_transgress_ref_deg1(const Cochain& mu) {
    if (mu.degree() != 1 || !mu.twisted()) throw std::invalid_argument("expects a twisted 1-cochain");
    return GroupoidCochain(mu.base(), 0, false, mu.modulus(), [mu](const int*, int g) { return mu({g}); });
}

Cochain component(const GroupoidCochain& c, int g, const Subgroup& stab) {
    int deg = c.degree();
    std::vector<int> tp = stab.to_parent;
    for (int x : tp)
        if (c.base()->real_conj(x, g) != g) throw std::invalid_argument("component subgroup does not fix the object");
    Cochain r(stab.group, deg, c.twisted() && stab.group->graded(), c.modulus(), [c, g, tp, deg](const int* t) {
        int u[64];
        for (int i = 0; i < deg; ++i) u[i] = tp[t[i]];
        return c.at(u, g);
    });
    return r.tuple_count() <= 200000 ? r.materialized() : r;
}

GroupoidCochain restrict_even(const GroupoidCochain& c, const GroupPtr& kernel_group, const std::vector<int>& to_parent) {
    int deg = c.degree();
    return GroupoidCochain(kernel_group, deg, false, c.modulus(), [c, to_parent, deg](const int* t, int x) {
        int u[64];
        for (int i = 0; i < deg; ++i) u[i] = to_parent[t[i]];
        return c.at(u, to_parent[x]);
    });
}

int64_t transport_coefficient(const GroupoidCochain& c, int s, int h, int g) {
    const GradedGroup& G = *c.base();
    return mod(c({s, h}, g) - c({G.conj(s, h), s}, g), c.modulus());
}

RealCentralReport check_real_central(const Cochain& alpha, int g) {
    RealCentralReport rep;
    GroupPtr G = alpha.base();
    auto tau = real_transgress(alpha).materialized();
    Subgroup C = make_subgroup(G, real_centralizer(*G, g));
    auto ext = central_extension(component(tau, g, C));
    const GradedGroup& E = *ext->group;
    int gh = ext->encode(C.from_parent[g], 0);
    int ghi = E.inv(gh);
    for (int x = 0; x < E.order(); ++x) {
        int y = E.mul(E.mul(x, gh), E.inv(x));
        ++rep.checked;
        if (y != (E.odd(x) ? ghi : gh)) rep.ok = false;
    }
    return rep;
}

bool check_i_g(const Cochain& alpha, int g, int w) {
    GroupPtr G = alpha.base();
    if (!G->odd(w)) throw std::invalid_argument("i_g needs an odd element");
    auto tau = real_transgress(alpha).materialized();
    int g2 = G->real_conj(w, g);
    Subgroup C1 = make_subgroup(G, kernel_centralizer(*G, g));
    Subgroup C2 = make_subgroup(G, kernel_centralizer(*G, g2));
    auto E1 = central_extension(component(tau, g, C1));
    auto E2 = central_extension(component(tau, g2, C2));
    int64_t m = E1->m;
    int N = E1->group->order();
    if (N != E2->group->order()) return false;
    std::vector<int> phi(N);
    std::vector<char> hit(N, 0);
    for (int e = 0; e < N; ++e) {
        int h = C1.to_parent[E1->base_of(e)];
        int64_t z = E1->z_of(e);
        int hw = G->conj(w, h);
        if (!C2.contains(hw)) return false;
        int64_t f = transport_coefficient(tau, w, h, g);
        phi[e] = E2->encode(C2.from_parent[hw], f - z);
        if (hit[phi[e]]) return false;
        hit[phi[e]] = 1;
    }
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
            if (phi[E1->group->mul(a, b)] != E2->group->mul(phi[a], phi[b])) return false;
    for (int64_t z = 0; z < m; ++z)
        if (phi[E1->encode(0, z)] != E2->encode(0, -z)) return false;
    return true;
}

}  // namespace qellr
