#include "qellr/mackey.hpp"

#include <numeric>
#include <stdexcept>

namespace qellr {

int64_t real_irrep_count(const TwistedIrreps& t) { return static_cast<int64_t>(t.real.size()); }

bool MackeyData::identity_holds() const {
    int64_t sum = 0;
    for (const auto& o : orbits) {
        if (!o.nu) return false;
        sum += o.count_nu;
    }
    return sum == count_total;
}

MackeyData mackey_decompose(const GroupPtr& grp, const std::vector<int>& normal, const Cochain* theta) {
    const GradedGroup& G = *grp;
    if (!is_normal(G, normal)) throw std::invalid_argument("H is not normal");
    for (int h : normal)
        if (G.odd(h)) throw std::invalid_argument("H must be trivially graded");
    MackeyData D;
    D.group = grp;
    D.normal = normal;
    if (theta) {
        if (theta->degree() != 2) throw std::invalid_argument("twist must be a degree-2 cocycle");
        D.ext = central_extension(*theta);
    } else {
        D.ext = central_extension(zero_cochain(grp, 2, G.graded(), 1));
    }
    const Extension& X = *D.ext;
    const GradedGroup& E = *X.group;
    int64_t m = X.m;
    std::vector<char> in_h(G.order(), 0);
    for (int h : normal) in_h[h] = 1;
    std::vector<int> ht;
    for (int e = 0; e < E.order(); ++e)
        if (in_h[X.base_of(e)]) ht.push_back(e);
    D.h_tilde = make_subgroup(X.group, ht, "H~");
    const Subgroup& Ht = D.h_tilde;
    int zc = X.encode(0, m > 1 ? 1 : 0);
    D.irreps_h = twisted_irreps(Ht.group, Ht.from_parent[zc], m);
    const TwistedIrreps& IH = D.irreps_h;
    int nh = IH.count();
    auto rho = [&](int k, int e) { return IH.value(k, Ht.from_parent[e]); };

    // Real action of G^ on Irr^theta(H)
    auto act = [&](int g, int k) {
        int eps = X.encode(g, 0), ei = E.inv(eps);
        for (int j = 0; j < nh; ++j) {
            if (IH.degree(j) != IH.degree(k)) continue;
            bool same = true;
            for (int e : ht) {
                Cyc v = rho(k, E.mul(E.mul(ei, e), eps));
                if (G.odd(g)) v = v.conj();
                if (rho(j, e) != v) {
                    same = false;
                    break;
                }
            }
            if (same) return j;
        }
        throw std::logic_error("action does not permute twisted irreps");
    };

    std::vector<int> orbit_of(nh, -1);
    for (int k = 0; k < nh; ++k) {
        if (orbit_of[k] >= 0) continue;
        MackeyOrbit O;
        int id = static_cast<int>(D.orbits.size());
        for (int g = 0; g < G.order(); ++g) {
            int j = act(g, k);
            if (orbit_of[j] < 0) {
                orbit_of[j] = id;
                O.members.push_back(j);
            }
            if (j == k) O.stabilizer.push_back(g);
        }
        Subgroup S = make_subgroup(grp, O.stabilizer, "G(rho)");
        std::vector<int> hs;
        for (int h : normal) hs.push_back(S.from_parent[h]);
        O.quotient = quotient_group(S.group, hs, "Q(rho)");
        if (IH.degree(k) == 1) {
            // pushout of the extension along rho: nu(q1,q2) = pi(q1 q2) a(s12^-1 s1 s2)
            int64_t M = 1;
            for (int e : ht) M = lcm64(M, E.elem_order(e));
            std::vector<int64_t> a(E.order(), -1);
            for (int e : ht) {
                Cyc v = rho(k, e);
                for (int64_t j = 0; j < M; ++j)
                    if (v == Cyc::zeta(static_cast<int>(M), j)) {
                        a[e] = j;
                        break;
                    }
                if (a[e] < 0) throw std::logic_error("linear character value is not a root of unity");
            }
            const Quotient& Q = O.quotient;
            int nq = Q.group->order();
            std::vector<int> sec(nq);
            for (int q = 0; q < nq; ++q) sec[q] = X.encode(S.to_parent[Q.section[q]], 0);
            GroupPtr QG = Q.group;
            Cochain nu(QG, 2, QG->graded(), M, [=, &E](const int* t) -> int64_t {
                int q12 = QG->mul(t[0], t[1]);
                int h = E.mul(E.inv(sec[q12]), E.mul(sec[t[0]], sec[t[1]]));
                return QG->odd(q12) ? -a[h] : a[h];
            });
            O.nu = nu.materialized();
            O.nu_modulus = M;
            O.count_nu = real_irrep_count(twisted_irreps(central_extension(*O.nu)));
        }
        D.orbits.push_back(std::move(O));
    }

    TwistedIrreps TG = twisted_irreps(D.ext);
    D.count_total = real_irrep_count(TG);
    for (size_t r = 0; r < TG.real.size(); ++r) {
        int found = -1;
        for (int k = 0; k < nh && found < 0; ++k) {
            Cyc acc(0);
            for (int e : ht) acc += TG.forgot_value(static_cast<int>(r), e) * rho(k, e).conj();
            if (!acc.is_zero()) found = orbit_of[k];
        }
        if (found < 0) throw std::logic_error("irrep restricts to zero on H");
        ++D.orbits[found].count_over;
    }
    return D;
}

}  // namespace qellr
