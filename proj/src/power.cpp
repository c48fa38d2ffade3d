#include "qellr/power.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace qellr {

namespace {

std::shared_ptr<const std::vector<std::vector<int>>> inverse_perms(const WreathGroup& W) {
    auto inv = std::make_shared<std::vector<std::vector<int>>>();
    for (const auto& p : W.perms) inv->push_back(perm_inverse(p));
    return inv;
}

// Compare two evaluators over tuples of a group, exhaustively or on a seeded sample.
bool same_on_tuples(int order, int degree, const std::function<int64_t(const int*)>& f,
                    const std::function<int64_t(const int*)>& g, int64_t m, int64_t budget, uint64_t seed,
                    TwistIdentityReport& rep) {
    int64_t total = 1;
    bool exhaustive = true;
    for (int i = 0; i < degree; ++i) {
        total *= order;
        if (total > budget) exhaustive = false;
    }
    bool ok = true;
    if (exhaustive) {
        for_each_tuple(order, degree, [&](const int* t) {
            if (ok && mod(f(t) - g(t), m) != 0) ok = false;
        });
        rep.tuples += total;
    } else {
        std::mt19937_64 rng(seed);
        std::vector<int> t(degree);
        for (int64_t s = 0; s < budget && ok; ++s) {
            for (auto& v : t) v = static_cast<int>(rng() % order);
            if (mod(f(t.data()) - g(t.data()), m) != 0) ok = false;
        }
        rep.tuples += budget;
        rep.exhaustive = false;
    }
    return ok;
}

bool is_homomorphism(const GradedGroup& A, const GradedGroup& B, const std::vector<int>& phi) {
    for (int a = 0; a < A.order(); ++a) {
        if (A.pi(a) != B.pi(phi[a])) return false;
        for (int b = 0; b < A.order(); ++b)
            if (phi[A.mul(a, b)] != B.mul(phi[a], phi[b])) return false;
    }
    return true;
}

int cycle_product(const GradedGroup& G, const std::vector<int>& comp, const std::vector<int>& cyc) {
    int x = 0;
    for (int p : cyc) x = G.mul(comp[p], x);
    return x;
}

}  // namespace

Cochain wreath_twist(const Cochain& a, const std::shared_ptr<const WreathGroup>& W) {
    if (a.base()->table() != W->base->table()) throw std::invalid_argument("cochain and wreath base differ");
    int n = a.degree(), N = W->N;
    if (n > 16) throw std::invalid_argument("cochain degree too large");
    auto inv = inverse_perms(*W);
    return Cochain(W->group, n, a.twisted(), a.modulus(), [a, W, inv, n, N](const int* t) {
        int64_t acc = 0;
        int x[16];
        for (int j = 0; j < N; ++j) {
            int p = j;
            for (int r = 0; r < n; ++r) {
                x[r] = W->comps[t[r]][p];
                p = (*inv)[t[r]][p];
            }
            acc += a.at(x);
        }
        return acc;
    });
}

std::vector<int> block_embedding(const WreathGroup& outer, const WreathGroup& inner, const WreathGroup& big,
                                 BlockEmbedding kind) {
    int M = outer.N, N = inner.N;
    if (big.N != M * N || outer.base->table() != inner.group->table() || inner.base->table() != big.base->table())
        throw std::invalid_argument("block embedding needs G wr (S_N wr S_M) -> G wr S_MN");
    std::vector<int> phi(outer.group->order());
    for (int e = 0; e < outer.group->order(); ++e) {
        const auto& f = outer.comps[e];
        const auto& s = outer.perms[e];
        std::vector<int> comp(M * N), mu(M * N);
        for (int j = 0; j < M; ++j)
            for (int k = 0; k < N; ++k) {
                comp[j * N + k] = inner.comps[f[j]][k];
                int src = kind == BlockEmbedding::Standard ? f[s[j]] : f[j];
                mu[j * N + k] = s[j] * N + inner.perms[src][k];
            }
        phi[e] = big.index_of(comp, mu);
        if (phi[e] < 0) throw std::logic_error("block embedding left the wreath product");
    }
    return phi;
}

std::vector<int> external_embedding(const WreathGroup& A, const WreathGroup& B, const WreathGroup& AB) {
    int M = A.N, N = B.N;
    if (AB.N != M + N) throw std::invalid_argument("external embedding needs W_M, W_N -> W_{M+N}");
    std::vector<int> phi;
    for (int x = 0; x < A.group->order(); ++x)
        for (int y = 0; y < B.group->order(); ++y) {
            if (A.group->pi(x) != B.group->pi(y)) continue;
            std::vector<int> comp(A.comps[x]), perm(A.perms[x]);
            comp.insert(comp.end(), B.comps[y].begin(), B.comps[y].end());
            for (int v : B.perms[y]) perm.push_back(v + M);
            phi.push_back(AB.index_of(comp, perm));
        }
    return phi;
}

TwistIdentityReport verify_twist_identities(const Cochain& a, const Cochain& b, int M, int N, BlockEmbedding kind,
                                            int64_t budget, uint64_t seed) {
    if (M < 0 || N < 0) throw std::invalid_argument("power indices must be non-negative");
    if (a.degree() != b.degree() || a.modulus() != b.modulus() || a.base()->table() != b.base()->table() ||
        a.twisted() != b.twisted())
        throw std::invalid_argument("twist identities need cochains of the same shape");
    const GroupPtr& G = a.base();
    int n = a.degree();
    int64_t m = a.modulus();
    TwistIdentityReport rep;
    auto ev = [](const Cochain& c) { return [c](const int* t) { return c.at(t); }; };

    auto W0 = graded_wreath(G, 0);
    auto W1 = graded_wreath(G, 1);
    Cochain p0 = wreath_twist(a, W0), p1 = wreath_twist(a, W1);
    std::vector<int> id1(W1->group->order());
    for (int e = 0; e < W1->group->order(); ++e) id1[e] = W1->comps[e][0];
    rep.unit = same_on_tuples(W0->group->order(), n, ev(p0), [](const int*) { return int64_t(0); }, m, budget, seed, rep) &&
               same_on_tuples(W1->group->order(), n, ev(p1), [&](const int* t) {
                   std::vector<int> x(n);
                   for (int r = 0; r < n; ++r) x[r] = id1[t[r]];
                   return a(x);
               }, m, budget, seed, rep);

    for (int K : {M, N}) {
        if (K == 0) continue;
        auto W = graded_wreath(G, K);
        Cochain lhs = differential(wreath_twist(a, W));
        Cochain rhs = wreath_twist(differential(a), W);
        rep.cochain_map = rep.cochain_map && same_on_tuples(W->group->order(), n + 1, ev(lhs), ev(rhs), m, budget, seed, rep);
    }

    if (M > 0 && N > 0) {
        auto WM = graded_wreath(G, M), WN = graded_wreath(G, N), WMN = graded_wreath(G, M + N);
        auto ext = external_embedding(*WM, *WN, *WMN);
        std::vector<std::pair<int, int>> pairs;
        for (int x = 0; x < WM->group->order(); ++x)
            for (int y = 0; y < WN->group->order(); ++y)
                if (WM->group->pi(x) == WN->group->pi(y)) pairs.emplace_back(x, y);
        GroupPtr F = fibered_product(WM->group, WN->group);
        rep.embedding_hom = rep.embedding_hom && is_homomorphism(*F, *WMN->group, ext);
        Cochain pM = wreath_twist(a, WM), pN = wreath_twist(a, WN), pMN = wreath_twist(a, WMN);
        rep.external = same_on_tuples(F->order(), n, [&](const int* t) {
            std::vector<int> x(n), y(n);
            for (int r = 0; r < n; ++r) {
                x[r] = pairs[t[r]].first;
                y[r] = pairs[t[r]].second;
            }
            return pM(x) + pN(y);
        }, [&](const int* t) {
            std::vector<int> z(n);
            for (int r = 0; r < n; ++r) z[r] = ext[t[r]];
            return pMN(z);
        }, m, budget, seed, rep);

        auto Wbig = graded_wreath(G, M * N);
        auto outer = graded_wreath(WN->group, M);
        auto iota = block_embedding(*outer, *WN, *Wbig, kind);
        rep.embedding_hom = rep.embedding_hom && is_homomorphism(*outer->group, *Wbig->group, iota);
        Cochain nested = wreath_twist(wreath_twist(a, WN), outer);
        Cochain flat = wreath_twist(a, Wbig);
        rep.composite = same_on_tuples(outer->group->order(), n, ev(nested), [&](const int* t) {
            std::vector<int> z(n);
            for (int r = 0; r < n; ++r) z[r] = iota[t[r]];
            return flat(z);
        }, m, budget, seed, rep);
    }

    if (N > 0) {
        auto WN = graded_wreath(G, N);
        Cochain lhs = wreath_twist(add(a, b), WN);
        Cochain pa = wreath_twist(a, WN), pb = wreath_twist(b, WN);
        rep.product = same_on_tuples(WN->group->order(), n, ev(lhs), [&](const int* t) { return pa.at(t) + pb.at(t); },
                                     m, budget, seed, rep);
    }
    return rep;
}

std::vector<Cyc> power_rep(const std::vector<Cyc>& chi, const WreathGroup& W) {
    const GradedGroup& B = *W.base;
    if (static_cast<int>(chi.size()) != B.order()) throw std::invalid_argument("character has the wrong length");
    std::vector<Cyc> out(W.group->order(), Cyc(0));
    for (int e = 0; e < W.group->order(); ++e) {
        if (W.group->odd(e)) continue;
        Cyc v(1);
        for (const auto& c : perm_cycles(W.perms[e])) v *= chi[cycle_product(B, W.comps[e], c)];
        out[e] = v;
    }
    return out;
}

std::vector<Cyc> power_rep_twisted(const Extension& E, const std::vector<Cyc>& chi, const WreathGroup& W,
                                   const Extension& W_ext) {
    const GradedGroup& X = *E.group;
    if (E.base->table() != W.base->table() || W_ext.base->table() != W.group->table() || E.m != W_ext.m)
        throw std::invalid_argument("power_rep_twisted: incompatible extensions");
    if (static_cast<int>(chi.size()) != X.order()) throw std::invalid_argument("character has the wrong length");
    std::vector<Cyc> out(W_ext.group->order(), Cyc(0));
    for (int e = 0; e < W_ext.group->order(); ++e) {
        int w = W_ext.base_of(e);
        if (W.group->odd(w)) continue;
        Cyc v = Cyc::zeta(static_cast<int>(E.m), W_ext.z_of(e));
        for (const auto& c : perm_cycles(W.perms[w])) {
            int x = E.encode(0, 0);
            for (int p : c) x = X.mul(E.encode(W.comps[w][p], 0), x);
            v *= chi[x];
        }
        out[e] = v;
    }
    return out;
}

Cyc tensor_power_trace(const std::vector<CycMatrix>& rho, const WreathGroup& W, int element) {
    int N = W.N;
    if (static_cast<int>(rho.size()) != W.base->order()) throw std::invalid_argument("one matrix per base element");
    size_t d = rho.empty() ? 0 : rho[0].size();
    const auto& g = W.comps[element];
    auto sinv = perm_inverse(W.perms[element]);
    Cyc total(0);
    std::vector<size_t> b(N, 0);
    while (true) {
        Cyc term(1);
        for (int i = 0; i < N && !term.is_zero(); ++i) term *= rho[g[i]][b[i]][b[sinv[i]]];
        total += term;
        int i = N - 1;
        while (i >= 0 && ++b[i] == d) b[i--] = 0;
        if (i < 0) break;
    }
    return total;
}

CycleData cycle_data(const WreathGroup& W, int element) {
    if (W.group->odd(element)) throw std::invalid_argument("cycle data needs an element of the wreath kernel");
    const GradedGroup& B = *W.base;
    CycleData D;
    auto cyc = perm_cycles(W.perms[element]);
    std::stable_sort(cyc.begin(), cyc.end(), [](const auto& x, const auto& y) {
        return x.size() != y.size() ? x.size() < y.size() : x[0] < y[0];
    });
    for (auto& c : cyc) D.cycles.push_back({c, cycle_product(B, W.comps[element], c), -1});
    for (size_t i = 0; i < D.cycles.size(); ++i) {
        if (D.cycles[i].block >= 0) continue;
        int blk = static_cast<int>(D.blocks.size());
        D.blocks.emplace_back();
        for (size_t j = i; j < D.cycles.size(); ++j) {
            if (D.cycles[j].block >= 0 || D.cycles[j].points.size() != D.cycles[i].points.size()) continue;
            bool iso = false;
            for (int w = 0; w < B.order() && !iso; ++w)
                iso = B.real_conj(w, D.cycles[i].product) == D.cycles[j].product;
            if (iso) {
                D.cycles[j].block = blk;
                D.blocks[blk].push_back(static_cast<int>(j));
            }
        }
    }
    return D;
}

std::vector<BetaCoefficient> beta_coefficients(const WreathGroup& W, int element, int h) {
    const GradedGroup& G = *W.group;
    const GradedGroup& B = *W.base;
    if (G.real_conj(h, element) != element) throw std::invalid_argument("beta needs an element of the Real centralizer");
    CycleData D = cycle_data(W, element);
    std::vector<int> cyc_of(W.N), pos(W.N);
    for (size_t c = 0; c < D.cycles.size(); ++c)
        for (size_t p = 0; p < D.cycles[c].points.size(); ++p) {
            cyc_of[D.cycles[c].points[p]] = static_cast<int>(c);
            pos[D.cycles[c].points[p]] = static_cast<int>(p);
        }
    const auto& g = W.comps[element];
    const auto& hs = W.comps[h];
    const auto& tau = W.perms[h];
    bool odd = G.odd(h);
    std::vector<BetaCoefficient> out;
    for (size_t c = 0; c < D.cycles.size(); ++c) {
        const auto& I = D.cycles[c].points;
        int k = static_cast<int>(I.size());
        int jc = cyc_of[tau[I[0]]];
        const auto& J = D.cycles[jc].points;
        int q = pos[tau[I[0]]];
        // even: tau(i_l) = j_{l+m}; odd: tau(i_l) = j_{m-l} (1-based positions)
        int m = odd ? static_cast<int>(mod(q + 2, k)) : q;
        auto at = [&](const std::vector<int>& P, int l) { return P[static_cast<size_t>(mod(l - 1, k))]; };
        BetaCoefficient bc;
        bc.from = static_cast<int>(c);
        bc.to = jc;
        bc.offset = m;
        bc.odd = odd;
        int first = hs[at(J, k)];
        if (odd) {
            int tail = 0;
            for (int r = 1; r <= m; ++r) tail = B.mul(g[at(I, r)], tail);
            first = B.mul(first, tail);
        } else {
            for (int r = k + 1 - m; r <= k; ++r) first = B.mul(first, B.inv(g[at(I, r)]));
        }
        int second = 0;
        for (int r = 1; r <= m; ++r) second = B.mul(second, B.inv(g[at(J, r)]));
        second = B.mul(second, hs[at(J, m)]);
        bc.value = first;
        bc.alternative = second;
        bc.in_transporter = B.real_conj(first, D.cycles[jc].product) == D.cycles[c].product;
        bc.grade_ok = B.pi(first) == G.pi(h);
        out.push_back(bc);
    }
    return out;
}

std::vector<std::pair<int, int>> cycle_type_invariant(const WreathGroup& W, int element,
                                                      const ClassData& base_kernel) {
    const GradedGroup& G = *W.base;
    std::vector<std::pair<int, int>> inv, flipped;
    for (const auto& c : perm_cycles(W.perms[element])) {
        int p = cycle_product(G, W.comps[element], c);
        int k = static_cast<int>(c.size());
        inv.emplace_back(k, base_kernel.class_of[p]);
        if (G.graded()) flipped.emplace_back(k, base_kernel.class_of[G.real_conj(G.omega(), p)]);
    }
    std::sort(inv.begin(), inv.end());
    std::sort(flipped.begin(), flipped.end());
    if (G.graded() && flipped < inv) return flipped;
    return inv;
}

PowerSpace power_space(const QEllRSpace& S, int N, int jobs) {
    if (N < 0) throw std::invalid_argument("power index must be non-negative");
    PowerSpace T;
    T.N = N;
    const GroupPtr& base = S.embed.parent;
    if (N == 0) {
        T.space = S.real ? qellr_point(cyclic_group(2, true)) : qell_point(trivial_group());
        return T;
    }
    T.wreath = graded_wreath(base, N);
    T.space = S.real ? qellr_point(T.wreath->group, nullptr, jobs) : qell_point(T.wreath->group, nullptr, jobs);
    return T;
}

QClass power_operation(const QEllRSpace& S, const QClass& x, const PowerSpace& T) {
    if (S.twisted())
        throw std::invalid_argument(
            "power operations are implemented for untwisted classes only; compatibility of the twisted "
            "construction with the Real structure is an open problem");
    if (S.X.size != 1) throw std::invalid_argument("power operations are implemented on a point");
    if (T.space.real != S.real) throw std::invalid_argument("power target has the wrong type");
    if (T.N == 0) return unit_class(T.space);
    const WreathGroup& W = *T.wreath;
    if (W.base->table() != S.embed.parent->table()) throw std::invalid_argument("power target over another group");
    QEllRSpace C = S.real ? qell_point(S.embed.parent) : S;
    QClass xc = S.real ? forgetful(S, C).apply(C, x) : x;
    ClassCharacter chi(C);
    const GradedGroup& G = *W.group;
    return class_from_character(T.space, [&](int gp, int hp) {
        auto cyc = perm_cycles(W.perms[gp]);
        std::vector<int> cyc_of(W.N);
        for (size_t c = 0; c < cyc.size(); ++c)
            for (int p : cyc[c]) cyc_of[p] = static_cast<int>(c);
        std::vector<char> seen(cyc.size(), 0);
        QSeries out{{Rational(0), Cyc(1)}};
        for (size_t c0 = 0; c0 < cyc.size(); ++c0) {
            if (seen[c0]) continue;
            int ell = 0;
            size_t c = c0;
            do {
                seen[c] = 1;
                c = cyc_of[W.perms[hp][cyc[c][0]]];
                ++ell;
            } while (c != c0);
            int k = static_cast<int>(cyc[c0].size());
            int i1 = cyc[c0][0];
            int Q = G.power(hp, ell);
            auto it = std::find(cyc[c0].begin(), cyc[c0].end(), W.perms[Q][i1]);
            if (it == cyc[c0].end()) throw std::logic_error("orbit power left its cycle");
            int m = static_cast<int>(it - cyc[c0].begin());
            int Dl = G.mul(G.power(G.inv(gp), m), Q);
            if (W.perms[Dl][i1] != i1) throw std::logic_error("diagonal part moves its base point");
            int d = W.comps[Dl][i1];
            int gamma = W.comps[G.power(gp, k)][i1];
            QSeries f;
            for (const auto& [e, v] : chi(xc, gamma, d)) {
                Rational r = e * Rational(m, k);
                f[e * Rational(ell, k)] += v * Cyc::zeta(static_cast<int>(r.den()), mod(r.num(), r.den()));
            }
            out = series_mul(out, f);
        }
        return out;
    });
}

TateSeries stringy_power(const QEllRSpace& S, const QClass& x, const PowerSpace& T, int64_t P) {
    return tate_completion(T.space, power_operation(S, x, T), P);
}

}  // namespace qellr
