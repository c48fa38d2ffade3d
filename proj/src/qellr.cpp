#include "qellr/qellr.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "qellr/enhanced.hpp"
#include "qellr/linalg.hpp"

namespace qellr {

namespace {

struct ComponentSeed {
    int g;
    int point;
    std::vector<int> orbit;
    std::vector<int> stab;
};

Rational lambda_of(const Cyc& v, int64_t deg, int64_t o) {
    for (int64_t k = 0; k < o; ++k)
        if (v == Cyc::zeta(static_cast<int>(o), k) * Rational(deg)) return Rational(k, o);
    throw std::logic_error("g does not act by a root of unity of the expected order");
}

int64_t forgot_degree(const TwistedIrreps& t, int r) {
    const auto& ri = t.real[r];
    int64_t d = t.degree(ri.a);
    return ri.type == RealType::R || ri.type == RealType::Complex ? d : 2 * d;
}

QComponent build_component(const QEllRSpace& S, const ComponentSeed& seed) {
    QComponent c;
    c.g = seed.g;
    c.point = seed.point;
    c.stabilizer = make_subgroup(S.group, seed.stab, "Stab");
    c.sign = c.stabilizer.group->graded() ? -1 : 1;
    c.ext = central_extension(component(S.tau, seed.g, c.stabilizer));
    c.ghat = c.lift(seed.g, 0);
    c.o = c.ext->group->elem_order(c.ghat);
    c.irreps = twisted_irreps(c.ext);
    for (int r = 0; r < static_cast<int>(c.irreps.real.size()); ++r) {
        QBasis b;
        b.irrep = r;
        b.type = c.irreps.real[r].type;
        int a = c.irreps.real[r].a;
        b.lambda = lambda_of(c.irreps.value(a, c.ghat), c.irreps.degree(a), c.o);
        b.degree = forgot_degree(c.irreps, r);
        c.basis.push_back(b);
    }
    return c;
}

QEllRSpace build_space(const GroupPtr& orig, const GSet& X, const Cochain* alpha, bool real, int jobs) {
    validate_gset(*orig, X);
    QEllRSpace S;
    S.real = real;
    S.X = X;
    if (real) {
        if (!orig->graded()) throw std::invalid_argument("the Real theory needs a non-trivial grading");
        std::vector<int> all(orig->order());
        std::iota(all.begin(), all.end(), 0);
        S.embed = make_subgroup(orig, all, orig->name());
        S.group = orig;
    } else {
        S.embed = make_subgroup(orig, orig->kernel(), orig->graded() ? "ker(" + orig->name() + ")" : orig->name());
        S.group = S.embed.group;
    }
    if (alpha) {
        if (alpha->degree() != 3) throw std::invalid_argument("twist must be a degree-3 cochain");
        if (alpha->base()->table() != orig->table()) throw std::invalid_argument("twist lives on a different group");
        if (!is_cocycle(*alpha)) throw std::invalid_argument("twist is not a cocycle");
        S.alpha = *alpha;
        S.m = alpha->modulus();
        if (real)
            S.tau = real_transgress(*alpha).materialized();
        else
            S.tau = transgress(S.group->table() == orig->table() && !orig->graded() ? *alpha : restrict_to(*alpha, S.embed))
                        .materialized();
    } else {
        S.tau = GroupoidCochain(S.group, 2, real, 1, [](const int*, int) -> int64_t { return 0; });
    }
    const GradedGroup& G = *S.group;
    ClassData cd = real ? real_classes(G) : ordinary_classes(G);
    std::vector<ComponentSeed> seeds;
    for (int g : cd.reps) {
        std::vector<int> C = real ? real_centralizer(G, g) : centralizer(G, g);
        int gp = S.embed.to_parent[g];
        std::vector<char> seen(X.size, 0);
        for (int x = 0; x < X.size; ++x) {
            if (seen[x] || X.apply(gp, x) != x) continue;
            ComponentSeed s;
            s.g = g;
            s.point = x;
            for (int c : C) {
                int y = X.apply(S.embed.to_parent[c], x);
                if (!seen[y]) {
                    seen[y] = 1;
                    s.orbit.push_back(y);
                }
                if (y == x) s.stab.push_back(c);
            }
            std::sort(s.orbit.begin(), s.orbit.end());
            seeds.push_back(std::move(s));
        }
    }
    S.comps.resize(seeds.size());
    int workers = std::max(1, std::min<int>(jobs, static_cast<int>(seeds.size())));
    if (workers == 1) {
        for (size_t i = 0; i < seeds.size(); ++i) S.comps[i] = build_component(S, seeds[i]);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::exception_ptr> errors(workers);
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                try {
                    for (size_t i = next++; i < seeds.size(); i = next++) S.comps[i] = build_component(S, seeds[i]);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        for (auto& t : pool) t.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }
    return S;
}

// Values of a character of the even part of comp's extension, listed per extension element.
std::vector<Cyc> ext_values(const QComponent& c, const std::function<Cyc(int)>& f) {
    const GradedGroup& E = *c.ext->group;
    std::vector<Cyc> v(E.order());
    for (int e = 0; e < E.order(); ++e)
        if (!E.odd(e)) v[e] = f(e);
    return v;
}

void add_shifted(LPoly& out, const LPoly& p, int64_t mult, int64_t shift) {
    for (auto [k, v] : p) {
        int64_t& t = out[k + shift];
        t += mult * v;
        if (t == 0) out.erase(k + shift);
    }
}

LPoly poly_mul(const LPoly& a, const LPoly& b) {
    LPoly r;
    for (auto [i, x] : a)
        for (auto [j, y] : b) {
            int64_t& t = r[i + j];
            t += x * y;
        }
    for (auto it = r.begin(); it != r.end();)
        it = it->second == 0 ? r.erase(it) : std::next(it);
    return r;
}

int64_t integer_shift(const Rational& a, const Rational& b) {
    Rational d = a - b;
    if (!d.is_integer()) throw std::logic_error("q-exponents differ by a non-integer");
    return d.num();
}

void clean(QSeries& s) {
    for (auto it = s.begin(); it != s.end();)
        it = it->second.is_zero() ? s.erase(it) : std::next(it);
}

}  // namespace

int64_t QEllRSpace::rank() const {
    int64_t r = 0;
    for (const auto& c : comps) r += c.rank();
    return r;
}

int QEllRSpace::find_component(int g, int point) const {
    for (size_t i = 0; i < comps.size(); ++i)
        if (comps[i].g == g && comps[i].point == point) return static_cast<int>(i);
    return -1;
}

QEllRSpace qellr_gset(const GroupPtr& grp, const GSet& X, const Cochain* alpha, int jobs) {
    return build_space(grp, X, alpha, true, jobs);
}
QEllRSpace qellr_point(const GroupPtr& grp, const Cochain* alpha, int jobs) {
    return build_space(grp, point_gset(*grp), alpha, true, jobs);
}
QEllRSpace qell_gset(const GroupPtr& grp, const GSet& X, const Cochain* alpha, int jobs) {
    return build_space(grp, X, alpha, false, jobs);
}
QEllRSpace qell_point(const GroupPtr& grp, const Cochain* alpha, int jobs) {
    return build_space(grp, point_gset(*grp), alpha, false, jobs);
}

// ---- elements ----

QClass zero_class(const QEllRSpace& S) {
    QClass x;
    for (const auto& c : S.comps) x.c.emplace_back(c.rank());
    return x;
}

QClass basis_class(const QEllRSpace& S, int comp, int b, int64_t power) {
    QClass x = zero_class(S);
    x.c.at(comp).at(b)[power] = 1;
    return x;
}

QClass unit_class(const QEllRSpace& S) {
    if (S.twisted()) throw std::invalid_argument("twisted spaces carry no unit");
    QClass x = zero_class(S);
    for (size_t i = 0; i < S.comps.size(); ++i) {
        const QComponent& c = S.comps[i];
        const GradedGroup& E = *c.ext->group;
        for (int b = 0; b < c.rank(); ++b) {
            if (c.basis[b].degree != 1) continue;
            bool trivial = true;
            for (int e = 0; e < E.order() && trivial; ++e)
                if (!E.odd(e) && c.value(b, e) != Cyc(1)) trivial = false;
            if (trivial) {
                x.c[i][b][0] = 1;
                break;
            }
        }
    }
    return x;
}

QClass random_class(const QEllRSpace& S, std::mt19937_64& rng, int terms) {
    QClass x = zero_class(S);
    if (S.rank() == 0) return x;
    for (int t = 0; t < terms; ++t) {
        int i;
        do i = static_cast<int>(rng() % S.comps.size());
        while (S.comps[i].rank() == 0);
        int b = static_cast<int>(rng() % S.comps[i].rank());
        int64_t k = static_cast<int64_t>(rng() % 5) - 2;
        int64_t v = static_cast<int64_t>(rng() % 7) - 3;
        if (v == 0) v = 1;
        add_shifted(x.c[i][b], LPoly{{k, v}}, 1, 0);
    }
    return x;
}

QClass add(const QClass& a, const QClass& b) {
    QClass r = a;
    for (size_t i = 0; i < b.c.size(); ++i)
        for (size_t j = 0; j < b.c[i].size(); ++j) add_shifted(r.c[i][j], b.c[i][j], 1, 0);
    return r;
}

QClass scale_q(const QClass& a, int64_t k) {
    QClass r;
    for (const auto& comp : a.c) {
        r.c.emplace_back();
        for (const auto& p : comp) {
            LPoly q;
            for (auto [e, v] : p) q[e + k] = v;
            r.c.back().push_back(q);
        }
    }
    return r;
}

std::vector<int64_t> decompose_in_component(const QComponent& c, const std::vector<Cyc>& f) {
    const TwistedIrreps& T = c.irreps;
    const GradedGroup& E = *c.ext->group;
    int64_t n0 = T.ungraded.group->order();
    std::vector<Rational> mult(T.count());
    for (int k = 0; k < T.count(); ++k) {
        Cyc acc(0);
        for (int e = 0; e < E.order(); ++e)
            if (!E.odd(e) && !f[e].is_zero()) acc += f[e] * T.value(k, e).conj();
        if (!acc.is_rational()) throw std::domain_error("character pairing is not rational");
        mult[k] = acc.rational() / Rational(n0);
        if (!mult[k].is_integer()) throw std::domain_error("not a virtual character of the component");
    }
    std::vector<int64_t> out;
    for (const auto& ri : T.real) {
        Rational v = mult[ri.a];
        if (ri.type == RealType::C && !(mult[ri.b] == v)) throw std::domain_error("not a Real character (C pair)");
        if (ri.type == RealType::H) {
            if (v.num() % 2 != 0) throw std::domain_error("not a Real character (H type)");
            v = v / Rational(2);
        }
        out.push_back(v.num());
    }
    return out;
}

QClass multiply(const QEllRSpace& S, const QClass& a, const QClass& b) {
    if (S.twisted()) throw std::invalid_argument("ring structure is only defined on untwisted spaces");
    QClass r = zero_class(S);
    for (size_t i = 0; i < S.comps.size(); ++i) {
        const QComponent& c = S.comps[i];
        for (int u = 0; u < c.rank(); ++u) {
            if (a.c[i][u].empty()) continue;
            for (int v = 0; v < c.rank(); ++v) {
                if (b.c[i][v].empty()) continue;
                auto coeff = decompose_in_component(c, ext_values(c, [&](int e) { return c.value(u, e) * c.value(v, e); }));
                LPoly p = poly_mul(a.c[i][u], b.c[i][v]);
                for (int w = 0; w < c.rank(); ++w)
                    if (coeff[w] != 0)
                        add_shifted(r.c[i][w], p, coeff[w],
                                    integer_shift(c.basis[u].lambda + c.basis[v].lambda, c.basis[w].lambda));
            }
        }
    }
    return r;
}

// ---- forgetful map ----

namespace {

// Underlying character of real basis b, transported along phi_s to the complex component t and
// evaluated at the elements of t's extension.
std::vector<Cyc> transported_values(const QEllRSpace& R, const QComponent& src, int b, int s, const QEllRSpace& C,
                                    const QComponent& t) {
    const GradedGroup& G = *R.group;
    const Extension& Et = *t.ext;
    int si = G.inv(s);
    return ext_values(t, [&](int e) {
        int hp = C.embed.to_parent[t.stabilizer.to_parent[Et.base_of(e)]];
        int64_t z1 = Et.z_of(e);
        int h = G.conj(si, hp);
        int64_t T = transport_coefficient(R.tau, s, h, src.g);
        int64_t z = G.odd(s) ? T - z1 : z1 - T;
        Cyc v = src.value(b, src.lift(h, z));
        return G.odd(s) ? v.conj() : v;
    });
}

}  // namespace

ForgetfulMap forgetful(const QEllRSpace& R, const QEllRSpace& C) {
    if (!R.real || C.real) throw std::invalid_argument("forgetful goes from a Real space to a complex one");
    if (R.m != C.m || R.X.size != C.X.size) throw std::invalid_argument("spaces do not match");
    const GradedGroup& G = *R.group;
    ForgetfulMap F;
    F.image.resize(R.comps.size());
    for (size_t i = 0; i < R.comps.size(); ++i) {
        const QComponent& src = R.comps[i];
        F.image[i].resize(src.rank());
        std::vector<char> done(C.comps.size(), 0);
        for (int s = 0; s < G.order(); ++s) {
            int g1 = G.real_conj(s, src.g);
            int x1 = R.X.apply(s, src.point);
            int gk = C.embed.from_parent[g1];
            int j = gk < 0 ? -1 : C.find_component(gk, x1);
            if (j < 0 || done[j]) continue;
            done[j] = 1;
            const QComponent& t = C.comps[j];
            for (int b = 0; b < src.rank(); ++b) {
                auto coeff = decompose_in_component(t, transported_values(R, src, b, s, C, t));
                for (int w = 0; w < t.rank(); ++w)
                    if (coeff[w] != 0)
                        F.image[i][b].push_back({j, w, coeff[w], integer_shift(src.basis[b].lambda, t.basis[w].lambda)});
            }
        }
    }
    return F;
}

QClass ForgetfulMap::apply(const QEllRSpace& target, const QClass& x) const {
    QClass r = zero_class(target);
    for (size_t i = 0; i < image.size(); ++i)
        for (size_t b = 0; b < image[i].size(); ++b) {
            if (x.c[i][b].empty()) continue;
            for (const auto& t : image[i][b]) add_shifted(r.c[t.comp][t.b], x.c[i][b], t.mult, t.shift);
        }
    return r;
}

// ---- character sheets ----

bool Sheet::operator==(const Sheet& o) const {
    if (values.size() != o.values.size()) return false;
    for (size_t i = 0; i < values.size(); ++i) {
        if (pairs[i].g != o.pairs[i].g || pairs[i].h != o.pairs[i].h) return false;
        QSeries a = values[i], b = o.values[i];
        clean(a);
        clean(b);
        if (a.size() != b.size()) return false;
        for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib)
            if (!(ia->first == ib->first) || ia->second != ib->second) return false;
    }
    return true;
}

Sheet character_sheet(const QEllRSpace& S, const QClass& x) {
    if (S.X.size != 1) throw std::invalid_argument("character sheets are computed for a point");
    Sheet sh;
    sh.pairs = S.real ? real_pair_classes(*S.group) : ordinary_pair_classes(*S.group);
    for (const auto& p : sh.pairs) {
        int i = S.find_component(p.g, 0);
        if (i < 0) throw std::logic_error("pair class without component");
        const QComponent& c = S.comps[i];
        QSeries v;
        int e = c.lift(p.h, 0);
        for (int b = 0; b < c.rank(); ++b) {
            if (x.c[i][b].empty()) continue;
            Cyc chi = c.value(b, e);
            for (auto [k, n] : x.c[i][b]) v[Rational(k) + c.basis[b].lambda] += chi * Rational(n);
        }
        clean(v);
        sh.values.push_back(v);
    }
    return sh;
}

int64_t transport_kappa(const QEllRSpace& R, int s, int g, int h) {
    const GradedGroup& G = *R.group;
    if (!G.odd(s)) return transport_coefficient(R.tau, s, h, g);
    int hi = G.inv(h);
    return mod(transport_coefficient(R.tau, s, hi, g) + R.tau({hi, h}, g), R.m);
}

Sheet sheet_forget(const QEllRSpace& R, const QEllRSpace& C, const Sheet& s) {
    const GradedGroup& G = *R.group;
    Sheet out;
    out.pairs = ordinary_pair_classes(*C.group);
    for (const auto& p : out.pairs) {
        int g1 = C.embed.to_parent[p.g], h1 = C.embed.to_parent[p.h];
        bool found = false;
        QSeries v;
        for (size_t i = 0; i < s.pairs.size() && !found; ++i)
            for (int t = 0; t < G.order(); ++t) {
                if (G.real_conj(t, s.pairs[i].g) != g1 || G.real_conj(t, s.pairs[i].h) != h1) continue;
                int64_t kappa = transport_kappa(R, t, s.pairs[i].g, s.pairs[i].h);
                Cyc f = Cyc::zeta(static_cast<int>(R.m), -kappa);
                for (const auto& [e, c] : s.values[i]) v[e] = c * f;
                found = true;
                break;
            }
        if (!found) throw std::logic_error("ordinary pair not covered by a Real pair class");
        clean(v);
        out.values.push_back(v);
    }
    return out;
}

bool sheet_invariant(const QEllRSpace& R, const Sheet& s) {
    const GradedGroup& G = *R.group;
    for (size_t i = 0; i < s.pairs.size(); ++i) {
        int g = s.pairs[i].g, h = s.pairs[i].h;
        for (int t : real_centralizer(G, g)) {
            if (G.real_conj(t, h) != h) continue;
            Cyc f = Cyc::zeta(static_cast<int>(R.m), -transport_kappa(R, t, g, h));
            for (const auto& [e, c] : s.values[i])
                if (c * f != c) return false;
        }
    }
    return true;
}

// ---- presentations and rotation data ----

std::vector<RingPresentation> cyclic_presentation(const QEllRSpace& S) {
    if (S.twisted() || S.X.size != 1) throw std::invalid_argument("cyclic presentation needs an untwisted point");
    const GradedGroup& G = *S.group;
    std::vector<int> K = G.kernel();
    int n = static_cast<int>(K.size());
    int r = -1;
    for (int x : K)
        if (G.elem_order(x) == n) {
            r = x;
            break;
        }
    if (r < 0) throw std::invalid_argument("kernel is not cyclic");
    std::vector<int> logr(G.order(), -1);
    for (int j = 0, x = 0; j < n; ++j, x = G.mul(r, x)) logr[x] = j;
    QClass one = unit_class(S);
    std::vector<RingPresentation> out;
    for (size_t i = 0; i < S.comps.size(); ++i) {
        const QComponent& c = S.comps[i];
        int m = logr[c.g];
        int e = c.lift(r, 0);
        int xb = -1;
        for (int b = 0; b < c.rank(); ++b)
            if (c.basis[b].degree == 1 && c.value(b, e) == Cyc::zeta(n, 1)) xb = b;
        if (xb < 0) throw std::invalid_argument("no generator U_1 in component");
        // x_m = U_1 q^{lambda}; its powers run through the basis and x_m^n = q^m
        QClass x = basis_class(S, static_cast<int>(i), xb);
        QClass p = one;
        for (size_t j = 0; j < S.comps.size(); ++j)
            if (j != i) p.c[j].assign(S.comps[j].rank(), LPoly{});
        std::vector<char> hit(c.rank(), 0);
        for (int k = 0; k < n; ++k) {
            int nz = 0, which = -1;
            for (int b = 0; b < c.rank(); ++b)
                if (!p.c[i][b].empty()) {
                    ++nz;
                    which = b;
                }
            if (nz != 1 || p.c[i][which].size() != 1 || p.c[i][which].begin()->second != 1 || hit[which])
                throw std::logic_error("powers of x_m do not form a basis");
            hit[which] = 1;
            p = multiply(S, p, x);
        }
        QClass expect = zero_class(S);
        expect.c[i] = scale_q(one, m).c[i];
        if (!(p == expect)) throw std::logic_error("x_m^n differs from q^m");
        RingPresentation rp;
        rp.ground = S.real ? "KR(pt)[q^{+-1}]" : "Z[q^{+-1}]";
        std::string xm = "x_" + std::to_string(m);
        rp.generators.push_back(xm);
        rp.relations.push_back(xm + "^" + std::to_string(n) + " - q^" + std::to_string(m));
        out.push_back(rp);
    }
    return out;
}

bool check_rotation_condition(const QEllRSpace& S) {
    for (const auto& c : S.comps)
        for (int b = 0; b < c.rank(); ++b) {
            const QBasis& q = c.basis[b];
            if (q.lambda < Rational(0) || q.lambda >= Rational(1)) return false;
            Rational lo = q.lambda * Rational(c.o);
            if (!lo.is_integer()) return false;
            if (c.value(b, c.ghat) != Cyc::zeta(static_cast<int>(c.o), lo.num()) * Rational(q.degree)) return false;
        }
    return true;
}

int64_t model_component_rank(const QEllRSpace& S, int comp) {
    const QComponent& c = S.comps.at(comp);
    int og = S.group->elem_order(c.g);
    EnhancedModel M = enhanced_model_on(S.group, c.g, 2 * og, c.stabilizer, c.ext, c.ghat, S.real);
    TwistedIrreps T = twisted_irreps(M.group, M.central(), M.m);
    int rot = M.rotation_generator();
    int64_t n = M.d * M.o;
    int64_t count = 0;
    for (const auto& ri : T.real) {
        Cyc v = T.value(ri.a, rot);
        int64_t deg = T.degree(ri.a);
        for (int64_t k = 0; k < n; ++k)
            if (v == Cyc::zeta(static_cast<int>(n), k) * Rational(deg)) {
                if (Rational(k, M.o) < Rational(1)) ++count;
                break;
            }
    }
    return count;
}

// ---- change of group ----

GSet induce_gset(const Subgroup& hsub, const GSet& X) {
    const GradedGroup& G = *hsub.parent;
    int n = G.order();
    std::vector<int> coset(n, -1), reps;
    for (int g = 0; g < n; ++g) {
        if (coset[g] >= 0) continue;
        int c = static_cast<int>(reps.size());
        reps.push_back(g);
        for (int h : hsub.to_parent) coset[G.mul(g, h)] = c;
    }
    int k = static_cast<int>(reps.size());
    GSet Y;
    Y.size = k * X.size;
    Y.act.assign(static_cast<size_t>(n) * Y.size, 0);
    for (int g = 0; g < n; ++g)
        for (int i = 0; i < k; ++i) {
            int y = G.mul(g, reps[i]);
            int j = coset[y];
            int h = hsub.from_parent[G.mul(G.inv(reps[j]), y)];
            for (int x = 0; x < X.size; ++x) Y.act[static_cast<size_t>(g) * Y.size + i * X.size + x] = j * X.size + X.apply(h, x);
        }
    return Y;
}

ChangeOfGroup change_of_group(const Subgroup& hsub, const GSet& X, const Cochain* alpha) {
    const GroupPtr& G = hsub.parent;
    const GroupPtr& H = hsub.group;
    bool real = G->graded();
    if (real && !H->graded()) throw std::invalid_argument("subgroup must be graded");
    ChangeOfGroup R;
    GSet Y = induce_gset(hsub, X);
    std::optional<Cochain> aH;
    if (alpha) aH = restrict_to(*alpha, hsub);
    R.induced = build_space(G, Y, alpha, real, 1);
    R.local = build_space(H, X, aH ? &*aH : nullptr, real, 1);
    const GradedGroup& GG = *R.induced.group;
    const GradedGroup& HG = *R.local.group;
    std::vector<int> hits(R.local.comps.size(), 0);
    R.bijective = true;
    for (const auto& c : R.induced.comps) {
        int j = -1;
        int gp = R.induced.embed.to_parent[c.g];
        for (int k = 0; k < GG.order() && j < 0; ++k) {
            int kp = R.induced.embed.to_parent[k];
            int y = Y.apply(kp, c.point);
            if (y >= X.size) continue;  // not in the copy [e, X]
            int h = hsub.from_parent[G->real_conj(kp, gp)];
            if (h < 0) throw std::logic_error("stabiliser of [e,x] escapes the subgroup");
            // move (h, y) to a component representative of the local space
            for (int s = 0; s < H->order() && j < 0; ++s) {
                int hs = H->real_conj(s, h);
                int ys = X.apply(s, y);
                int hl = R.local.embed.from_parent[hs];
                if (hl < 0) continue;
                int cand = R.local.find_component(hl, ys);
                if (cand >= 0) j = cand;
            }
        }
        R.match.push_back(j);
        if (j < 0) {
            R.bijective = false;
            continue;
        }
        ++hits[j];
        const QComponent& l = R.local.comps[j];
        std::vector<Rational> a, b;
        for (const auto& q : c.basis) a.push_back(q.lambda);
        for (const auto& q : l.basis) b.push_back(q.lambda);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (c.stabilizer.group->order() != l.stabilizer.group->order() || c.sign != l.sign || a != b)
            R.bijective = false;
    }
    (void)HG;
    for (int h : hits)
        if (h != 1) R.bijective = false;
    return R;
}

// ---- induction and transfer ----

QClass induction(const QEllRSpace& big, const QEllRSpace& small, const Subgroup& hsub, const QClass& a) {
    if (big.twisted() || small.twisted()) throw std::invalid_argument("induction is implemented for untwisted spaces");
    if (big.X.size != 1 || small.X.size != 1) throw std::invalid_argument("induction is implemented on points");
    const GradedGroup& G = *big.group;
    QClass r = zero_class(big);
    // parent of small.group elements inside big.group
    auto up = [&](int h) {
        int orig = small.embed.to_parent[h];
        int inG = hsub.to_parent[orig];
        return big.embed.from_parent[inG];
    };
    for (size_t i = 0; i < small.comps.size(); ++i) {
        const QComponent& cs = small.comps[i];
        int hg = up(cs.g);
        int j = -1, s = -1;
        for (int t = 0; t < G.order() && j < 0; ++t) {
            int cand = big.find_component(G.real_conj(t, hg), 0);
            if (cand >= 0) {
                j = cand;
                s = t;
            }
        }
        if (j < 0) throw std::logic_error("class of the subgroup not found in the group");
        const QComponent& cb = big.comps[j];
        const GradedGroup& Sb = *cb.stabilizer.group;
        // f: character on s C_H(h) s^-1 (even part), transported
        std::vector<int> fmap(G.order(), -1);  // element of big.group -> small stabilizer index
        for (int u = 0; u < cs.stabilizer.group->order(); ++u) {
            int x = up(cs.stabilizer.to_parent[u]);
            fmap[G.conj(s, x)] = u;
        }
        int n0 = 0;
        for (int u = 0; u < cs.stabilizer.group->order(); ++u) n0 += !cs.stabilizer.group->odd(u);
        int eps = -1;
        for (int u = 0; u < Sb.order() && eps < 0; ++u)
            if (Sb.odd(u)) eps = cb.stabilizer.to_parent[u];
        bool hyperbolic = !cs.stabilizer.group->graded() && cb.stabilizer.group->graded();
        for (int b = 0; b < cs.rank(); ++b) {
            if (a.c[i][b].empty()) continue;
            auto f = [&](int y) -> Cyc {
                int u = fmap[y];
                if (u < 0 || cs.stabilizer.group->odd(u)) return Cyc(0);
                Cyc v = cs.value(b, cs.ext->encode(u, 0));
                return G.odd(s) ? v.conj() : v;
            };
            auto ind = [&](int y) -> Cyc {
                Cyc acc(0);
                for (int u = 0; u < Sb.order(); ++u) {
                    if (Sb.odd(u)) continue;
                    int x = cb.stabilizer.to_parent[u];
                    acc += f(G.conj(x, y));
                }
                return acc * Rational(1, n0);
            };
            auto vals = ext_values(cb, [&](int e) {
                int y = cb.stabilizer.to_parent[cb.ext->base_of(e)];
                Cyc v = ind(y);
                if (hyperbolic) v += ind(G.conj(G.inv(eps), y)).conj();
                return v;
            });
            auto coeff = decompose_in_component(cb, vals);
            for (int w = 0; w < cb.rank(); ++w)
                if (coeff[w] != 0)
                    add_shifted(r.c[j][w], a.c[i][b], coeff[w], integer_shift(cs.basis[b].lambda, cb.basis[w].lambda));
        }
    }
    return r;
}

TransferIdeal transfer_ideal(const QEllRSpace& S) {
    if (S.twisted() || S.X.size != 1) throw std::invalid_argument("transfer ideal needs an untwisted point");
    const GroupPtr& orig = S.embed.parent;
    const GradedGroup& G = *orig;
    int kernel = static_cast<int>(G.kernel().size());
    TransferIdeal T;
    T.span.resize(S.comps.size());
    for (const auto& sub : all_subgroups(G)) {
        if (static_cast<int>(sub.size()) == G.order()) continue;
        Subgroup H = make_subgroup(orig, sub, "H");
        if (S.real) {
            if (!H.group->graded()) continue;
            int k = 0;
            for (int x : sub) k += !G.odd(x);
            if (k == kernel) continue;
        }
        QEllRSpace small = build_space(H.group, point_gset(*H.group), nullptr, S.real, 1);
        for (size_t i = 0; i < small.comps.size(); ++i)
            for (int b = 0; b < small.comps[i].rank(); ++b) {
                QClass img = induction(S, small, H, basis_class(small, static_cast<int>(i), b));
                for (size_t j = 0; j < S.comps.size(); ++j) {
                    std::vector<int64_t> v(S.comps[j].rank(), 0);
                    bool any = false;
                    for (int w = 0; w < S.comps[j].rank(); ++w)
                        for (auto [k, n] : img.c[j][w]) {
                            if (k != 0) throw std::logic_error("induction shifted a q-exponent");
                            v[w] += n;
                            any = any || n != 0;
                        }
                    if (any) T.span[j].push_back(v);
                }
            }
    }
    for (size_t j = 0; j < S.comps.size(); ++j) {
        int r = S.comps[j].rank();
        IntMatrix A = T.span[j];
        if (A.empty()) {
            T.quotient_rank.push_back(r);
            T.torsion.emplace_back();
            continue;
        }
        int64_t rk = static_cast<int64_t>(rational_rank(A));
        T.quotient_rank.push_back(r - rk);
        std::vector<int64_t> tors;
        for (int64_t d : integer_invariant_factors(A))
            if (d > 1) tors.push_back(d);
        T.torsion.push_back(tors);
    }
    return T;
}

// ---- Tate completion ----

TateSeries tate_completion(const QEllRSpace& S, const QClass& x, int64_t P) {
    TateSeries t;
    t.truncation = P;
    for (const auto& comp : x.c) {
        t.c.emplace_back();
        for (const auto& p : comp) {
            LPoly q;
            for (auto [k, v] : p)
                if (k <= P) q[k] = v;
            t.c.back().push_back(q);
        }
    }
    t.rotation_ok = check_rotation_condition(S);
    return t;
}

// ---- Kunneth ----

namespace {

std::vector<std::pair<int, int>> fibered_pairs(const GradedGroup& a, const GradedGroup& b) {
    std::vector<std::pair<int, int>> out;
    for (int x = 0; x < a.order(); ++x)
        for (int y = 0; y < b.order(); ++y)
            if (a.pi(x) == b.pi(y)) out.emplace_back(x, y);
    return out;
}

}  // namespace

GroupPtr fibered_product(const GroupPtr& a, const GroupPtr& b) {
    auto P = fibered_pairs(*a, *b);
    int n = static_cast<int>(P.size());
    check_order_bound(n, "fibered product");
    std::map<std::pair<int, int>, int> idx;
    for (int i = 0; i < n; ++i) idx[P[i]] = i;
    std::vector<int> table(static_cast<size_t>(n) * n), pi(n);
    for (int i = 0; i < n; ++i) {
        pi[i] = a->pi(P[i].first);
        for (int j = 0; j < n; ++j)
            table[static_cast<size_t>(i) * n + j] = idx[{a->mul(P[i].first, P[j].first), b->mul(P[i].second, P[j].second)}];
    }
    return std::make_shared<GradedGroup>(n, std::move(table), std::move(pi), a->name() + " x_Z2 " + b->name());
}

QClass kunneth(const QEllRSpace& A, const QEllRSpace& B, const QEllRSpace& AB, const QClass& x, const QClass& y) {
    if (A.twisted() || B.twisted() || AB.twisted()) throw std::invalid_argument("Kunneth is implemented untwisted");
    if (A.real != B.real || A.real != AB.real) throw std::invalid_argument("mixed Real and complex spaces");
    const GradedGroup& Ga = *A.group;
    const GradedGroup& Gb = *B.group;
    auto P = fibered_pairs(*A.embed.parent, *B.embed.parent);
    QClass r = zero_class(AB);
    for (size_t t = 0; t < AB.comps.size(); ++t) {
        const QComponent& ct = AB.comps[t];
        auto [ga_o, gb_o] = P[AB.embed.to_parent[ct.g]];
        int ga = A.embed.from_parent[ga_o], gb = B.embed.from_parent[gb_o];
        for (size_t i = 0; i < A.comps.size(); ++i) {
            int s = -1;
            for (int u = 0; u < Ga.order() && s < 0; ++u)
                if (Ga.real_conj(u, A.comps[i].g) == ga) s = u;
            if (s < 0) continue;
            for (size_t j = 0; j < B.comps.size(); ++j) {
                int s2 = -1;
                for (int u = 0; u < Gb.order() && s2 < 0; ++u)
                    if (Gb.real_conj(u, B.comps[j].g) == gb) s2 = u;
                if (s2 < 0) continue;
                const QComponent& ca = A.comps[i];
                const QComponent& cb = B.comps[j];
                for (int ba = 0; ba < ca.rank(); ++ba) {
                    if (x.c[i][ba].empty()) continue;
                    for (int bb = 0; bb < cb.rank(); ++bb) {
                        if (y.c[j][bb].empty()) continue;
                        auto vals = ext_values(ct, [&](int e) {
                            auto [u, v] = P[AB.embed.to_parent[ct.stabilizer.to_parent[ct.ext->base_of(e)]]];
                            int ua = Ga.conj(Ga.inv(s), A.embed.from_parent[u]);
                            int vb = Gb.conj(Gb.inv(s2), B.embed.from_parent[v]);
                            Cyc fa = ca.value(ba, ca.lift(ua, 0));
                            Cyc fb = cb.value(bb, cb.lift(vb, 0));
                            if (Ga.odd(s)) fa = fa.conj();
                            if (Gb.odd(s2)) fb = fb.conj();
                            return fa * fb;
                        });
                        auto coeff = decompose_in_component(ct, vals);
                        LPoly p = poly_mul(x.c[i][ba], y.c[j][bb]);
                        for (int w = 0; w < ct.rank(); ++w)
                            if (coeff[w] != 0)
                                add_shifted(r.c[t][w], p, coeff[w],
                                            integer_shift(ca.basis[ba].lambda + cb.basis[bb].lambda, ct.basis[w].lambda));
                    }
                }
            }
        }
    }
    return r;
}

// ---- swap cover and involution ----

bool trivial_cover_reduction(const GroupPtr& g, const GSet& X, const Cochain* alpha) {
    if (g->graded()) throw std::invalid_argument("swap cover needs an ungraded group");
    GroupPtr Gh = direct_product(g, cyclic_group(2, true));
    GSet XX = trivial_cover(*g, X);
    std::optional<Cochain> ah;
    if (alpha) {
        std::vector<int> proj(Gh->order());
        for (int i = 0; i < Gh->order(); ++i) proj[i] = i % g->order();
        ah = pullback(*alpha, Gh, proj);
    }
    QEllRSpace R = qellr_gset(Gh, XX, ah ? &*ah : nullptr);
    QEllRSpace C = qell_gset(Gh, XX, ah ? &*ah : nullptr);
    QEllRSpace D = qell_gset(g, X, alpha);
    ForgetfulMap F = forgetful(R, C);
    // components of C on the first copy correspond to those of D
    std::vector<int> cmap(C.comps.size(), -1);
    for (size_t j = 0; j < C.comps.size(); ++j) {
        if (C.comps[j].point >= X.size) continue;
        int gk = C.embed.to_parent[C.comps[j].g] % g->order();
        cmap[j] = D.find_component(gk, C.comps[j].point);
        if (cmap[j] < 0 || D.comps[cmap[j]].rank() != C.comps[j].rank()) return false;
    }
    std::vector<int> hits;
    std::vector<int> offset(D.comps.size() + 1, 0);
    for (size_t j = 0; j < D.comps.size(); ++j) offset[j + 1] = offset[j] + D.comps[j].rank();
    hits.assign(offset.back(), 0);
    for (const auto& comp : F.image)
        for (const auto& terms : comp) {
            int inside = 0;
            for (const auto& t : terms) {
                if (cmap[t.comp] < 0) continue;
                if (t.mult != 1 || t.shift != 0) return false;
                ++inside;
                ++hits[offset[cmap[t.comp]] + t.b];
            }
            if (inside != 1) return false;
        }
    for (int h : hits)
        if (h != 1) return false;
    return true;
}

Involution rep_ring_involution(const GroupPtr& graded) {
    if (!graded->graded()) throw std::invalid_argument("involution needs a graded group");
    const GradedGroup& G = *graded;
    QEllRSpace C = qell_point(graded);
    Involution I;
    std::vector<int> offset(C.comps.size() + 1, 0);
    for (size_t j = 0; j < C.comps.size(); ++j) {
        offset[j + 1] = offset[j] + C.comps[j].rank();
        for (int b = 0; b < C.comps[j].rank(); ++b) I.basis.emplace_back(static_cast<int>(j), b);
    }
    I.perm.assign(I.basis.size(), -1);
    for (size_t j = 0; j < C.comps.size(); ++j) {
        const QComponent& c = C.comps[j];
        int gp = C.embed.to_parent[c.g];
        int target = -1, s = -1;
        for (int t = 0; t < G.order() && target < 0; ++t) {
            if (!G.odd(t)) continue;
            int k = C.embed.from_parent[G.real_conj(t, gp)];
            int cand = C.find_component(k, 0);
            if (cand >= 0) {
                target = cand;
                s = t;
            }
        }
        const QComponent& tc = C.comps[target];
        for (int b = 0; b < c.rank(); ++b) {
            auto vals = ext_values(tc, [&](int e) {
                int hp = C.embed.to_parent[tc.stabilizer.to_parent[tc.ext->base_of(e)]];
                int h = C.embed.from_parent[G.conj(G.inv(s), hp)];
                return c.value(b, c.lift(h, 0)).conj();
            });
            auto coeff = decompose_in_component(tc, vals);
            int img = -1;
            for (int w = 0; w < tc.rank(); ++w)
                if (coeff[w] != 0) {
                    if (coeff[w] != 1 || img >= 0) throw std::logic_error("involution is not a basis permutation");
                    img = w;
                }
            I.perm[offset[j] + b] = offset[target] + img;
        }
    }
    std::vector<char> seen(I.perm.size(), 0);
    for (size_t i = 0; i < I.perm.size(); ++i) {
        if (seen[i]) continue;
        ++I.fixed_rank;
        for (size_t k = i; !seen[k]; k = I.perm[k]) seen[k] = 1;
    }
    return I;
}

// ---- characters ----

QSeries series_mul(const QSeries& a, const QSeries& b) {
    QSeries r;
    for (const auto& [i, x] : a)
        for (const auto& [j, y] : b) r[i + j] += x * y;
    clean(r);
    return r;
}

ClassCharacter::ClassCharacter(const QEllRSpace& C) : S_(&C) {
    if (C.real || C.twisted() || C.X.size != 1)
        throw std::invalid_argument("class characters need an untwisted complex point space");
    const GradedGroup& G = *C.group;
    comp_of_.assign(G.order(), -1);
    conj_by_.assign(G.order(), -1);
    for (size_t i = 0; i < C.comps.size(); ++i)
        for (int u = 0; u < G.order(); ++u) {
            int y = G.conj(u, C.comps[i].g);
            if (comp_of_[y] < 0) {
                comp_of_[y] = static_cast<int>(i);
                conj_by_[y] = u;
            }
        }
}

std::pair<int, int> ClassCharacter::locate(int gamma) const {
    int y = S_->embed.from_parent.at(gamma);
    if (y < 0 || comp_of_[y] < 0) throw std::invalid_argument("loop outside the space");
    return {comp_of_[y], conj_by_[y]};
}

QSeries ClassCharacter::operator()(const QClass& x, int gamma, int h) const {
    const GradedGroup& G = *S_->group;
    auto [i, u] = locate(gamma);
    int hs = S_->embed.from_parent.at(h);
    if (hs < 0 || !G.commute(hs, S_->embed.from_parent[gamma]))
        throw std::invalid_argument("automorphism does not centralize the loop");
    const QComponent& c = S_->comps[i];
    int e = c.lift(G.mul(G.mul(G.inv(u), hs), u), 0);
    QSeries v;
    for (int b = 0; b < c.rank(); ++b) {
        if (x.c[i][b].empty()) continue;
        Cyc chi = c.value(b, e);
        for (auto [k, n] : x.c[i][b]) v[Rational(k) + c.basis[b].lambda] += chi * Rational(n);
    }
    clean(v);
    return v;
}

QClass class_from_character(const QEllRSpace& S, const std::function<QSeries(int, int)>& f) {
    if (S.twisted() || S.X.size != 1) throw std::invalid_argument("class_from_character needs an untwisted point space");
    QClass x = zero_class(S);
    for (size_t i = 0; i < S.comps.size(); ++i) {
        const QComponent& c = S.comps[i];
        const GradedGroup& E = *c.ext->group;
        int gp = S.embed.to_parent[c.g];
        std::map<Rational, std::vector<Cyc>> by_exp;
        for (int e = 0; e < E.order(); ++e) {
            if (E.odd(e) || c.ext->z_of(e) != 0) continue;
            int hp = S.embed.to_parent[c.stabilizer.to_parent[c.ext->base_of(e)]];
            for (const auto& [k, v] : f(gp, hp)) {
                auto& vals = by_exp[k];
                if (vals.empty()) vals.assign(E.order(), Cyc(0));
                vals[e] = v;
            }
        }
        for (auto& [k, vals] : by_exp) {
            auto coeff = decompose_in_component(c, vals);
            for (int b = 0; b < c.rank(); ++b)
                if (coeff[b] != 0) add_shifted(x.c[i][b], LPoly{{integer_shift(k, c.basis[b].lambda), coeff[b]}}, 1, 0);
        }
    }
    return x;
}

QClass restrict_class(const QEllRSpace& big, const QClass& x, const QEllRSpace& small, const std::vector<int>& phi) {
    if (big.real && !small.real) throw std::invalid_argument("restrict a Real class into a Real space");
    const GroupPtr& bg = big.embed.parent;
    QEllRSpace C = big.real ? qell_point(bg) : big;
    QClass xc = big.real ? forgetful(big, C).apply(C, x) : x;
    ClassCharacter chi(C);
    return class_from_character(small, [&](int g, int h) { return chi(xc, phi.at(g), phi.at(h)); });
}

}  // namespace qellr
