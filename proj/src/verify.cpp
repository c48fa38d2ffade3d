#include "qellr/verify.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <sstream>

#include "qellr/enhanced.hpp"
#include "qellr/mackey.hpp"
#include "qellr/power.hpp"
#include "qellr/qellr.hpp"
#include "qellr/tate.hpp"
#include "qellr/transgression.hpp"

namespace qellr {

namespace {

// Tally of named checks; the detail string lists failures first.
struct Tally {
    int64_t checks = 0;
    int64_t failures = 0;
    std::string first_failure;
    void expect(bool ok, const std::string& what) {
        ++checks;
        if (!ok) {
            if (failures == 0) first_failure = what;
            ++failures;
        }
    }
    std::string detail(const std::string& extra) const {
        std::ostringstream o;
        o << checks - failures << "/" << checks << " checks";
        if (!extra.empty()) o << ", " << extra;
        if (failures) o << "; first failure: " << first_failure;
        return o.str();
    }
};

CriterionResult timed(int id, const std::string& name, const std::function<std::pair<bool, std::string>()>& f) {
    CriterionResult r;
    r.id = id;
    r.name = name;
    auto t0 = std::chrono::steady_clock::now();
    try {
        auto [ok, detail] = f();
        r.pass = ok;
        r.detail = detail;
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

// 1. d^2 = 0, the transgression chain-map identities and the restriction square.
std::pair<bool, std::string> transgression_suite(const VerifyOptions& opt) {
    Tally t;
    int per_group = opt.quick ? 10 : 100;
    const int64_t m = 12;
    for (const char* spec : {"dihedral:2", "dihedral:3", "dihedral:4", "split(symmetric:3)"}) {
        auto G = group_from_spec(spec);
        Subgroup K = make_subgroup(G, G->kernel());
        std::mt19937_64 rng(1000 + opt.seed);
        for (int s = 0; s < per_group; ++s) {
            std::string tag = std::string(spec) + " #" + std::to_string(s);
            Cochain lam = random_cochain(G, 2, false, m, rng);
            Cochain mu = random_cochain(G, 1, true, m, rng);
            Cochain th = random_cochain(G, 2, true, m, rng);
            Cochain a = random_cochain(G, 3, false, m, rng);
            Cochain lk = random_cochain(K.group, 1 + s % 3, false, m, rng);
            t.expect(is_cocycle(differential(lam)), tag + " d^2 plain");
            t.expect(is_cocycle(differential(th)), tag + " d^2 twisted");
            t.expect(groupoid_equal(real_transgress(differential(lam)),
                                    groupoid_negate(groupoid_differential(real_transgress_deg2(lam)))),
                     tag + " reflection chain map");
            t.expect(groupoid_equal(real_transgress_ref(differential(mu)),
                                    groupoid_negate(groupoid_differential(real_transgress_ref_deg1(mu)))),
                     tag + " twisted reflection chain map");
            t.expect(groupoid_equal(transgress(differential(lk)), groupoid_negate(groupoid_differential(transgress(lk)))),
                     tag + " loop chain map");
            t.expect(groupoid_equal(restrict_even(real_transgress(a), K.group, K.to_parent), transgress(restrict_to(a, K))),
                     tag + " restriction square (degree 3)");
            t.expect(groupoid_equal(restrict_even(real_transgress_ref(th), K.group, K.to_parent),
                                    transgress(restrict_to(th, K))),
                     tag + " restriction square (degree 2)");
        }
    }
    return {t.failures == 0, t.detail(std::to_string(4 * per_group) + " cochains")};
}

// 2. Real centrality and the i_g isomorphisms.
std::pair<bool, std::string> structure_lemmas(const VerifyOptions& opt) {
    Tally t;
    auto D8 = dihedral_group(4);
    int cocycles = opt.quick ? 5 : 20;
    for (int s = 0; s < cocycles; ++s) {
        Cochain a = random_cocycle(D8, 3, false, 4, 2000 + opt.seed + s);
        for (int g : D8->kernel()) {
            t.expect(check_real_central(a, g).ok, "cocycle " + std::to_string(s) + " g=" + std::to_string(g));
            auto M = enhanced_model(D8, g, 2 * D8->elem_order(g), &a);
            t.expect(check_real_central(M), "model of cocycle " + std::to_string(s));
        }
    }
    auto G = group_from_spec("product(symmetric:3,cyclic_graded:6)");
    int w = G->omega();
    int classes = 0;
    ClassData rc = real_classes(*G);
    for (uint64_t s = 0; s < 3; ++s) {
        Cochain a = s == 0 ? zero_cochain(G, 3, false, 3) : random_cocycle(G, 3, false, 3, 2100 + opt.seed + s);
        for (int c = 0; c < rc.count(); ++c) {
            if (rc.sign[c] < 0) continue;
            int g = rc.reps[c];
            auto I = i_g_isomorphism(a, g, w, 2 * G->elem_order(g));
            t.expect(I.ok(), "i_g at class " + std::to_string(c));
            t.expect(check_i_g(a, g, w), "i_g on extensions at class " + std::to_string(c));
            ++classes;
        }
    }
    return {t.failures == 0 && classes > 0, t.detail(std::to_string(classes) + " +1-class isomorphisms")};
}

// 3. Presentations of the cyclic point spaces.
std::pair<bool, std::string> cyclic_presentations(const VerifyOptions&) {
    Tally t;
    for (int n = 1; n <= 6; ++n) {
        std::vector<std::string> expect;
        for (int m = 0; m < n; ++m) expect.push_back("x_" + std::to_string(m) + "^" + std::to_string(n) + " - q^" + std::to_string(m));
        for (bool real : {false, true}) {
            auto S = real ? qellr_point(dihedral_group(n)) : qell_point(cyclic_group(n));
            auto P = cyclic_presentation(S);
            std::string tag = (real ? "dihedral:" : "cyclic:") + std::to_string(n);
            t.expect(static_cast<int>(P.size()) == n, tag + " component count");
            std::vector<std::string> rel(n);
            for (size_t c = 0; c < P.size(); ++c) {
                int m = std::stoi(P[c].generators[0].substr(2));
                if (m >= 0 && m < n) rel[m] = P[c].relations[0];
                t.expect(S.comps[c].rank() == n, tag + " rank");
                if (real)
                    for (const auto& b : S.comps[c].basis) t.expect(b.type == RealType::R, tag + " real type");
                t.expect(P[c].ground == (real ? "KR(pt)[q^{+-1}]" : "Z[q^{+-1}]"), tag + " ground ring");
            }
            t.expect(rel == expect, tag + " relations");
        }
    }
    return {t.failures == 0, t.detail("n <= 6")};
}

// 4. Every irreducible of Z_n under D_2n, and of its enhanced models, has indicator +1.
std::pair<bool, std::string> real_type_theorem(const VerifyOptions&) {
    Tally t;
    int64_t irreps = 0;
    for (int n = 1; n <= 6; ++n) {
        auto D = dihedral_group(n);
        Subgroup K = make_subgroup(D, D->kernel());
        auto T = character_table(K.group);
        for (int r = 0; r < T->count(); ++r) {
            int ind = graded_indicator(*D, [&](int x) { return T->value(r, K.from_parent[x]); }, n);
            t.expect(ind == 1, "Z_" + std::to_string(n) + " irrep " + std::to_string(r));
            ++irreps;
        }
        for (int j = 0; j < n; ++j)
            for (int k : {1, 2}) {
                auto M = enhanced_model(D, j, k * D->elem_order(j));
                for (const auto& r : model_irreps(M)) {
                    t.expect(r.indicator == 1, "model of r^" + std::to_string(j) + " in D_" + std::to_string(2 * n));
                    ++irreps;
                }
            }
    }
    return {t.failures == 0, t.detail(std::to_string(irreps) + " irreducibles")};
}

std::vector<int> central_involutions(const GradedGroup& G) {
    std::vector<int> out;
    for (int x = 0; x < G.order(); ++x) {
        if (G.odd(x) || G.mul(x, x) != 0) continue;
        bool central = true;
        for (int y = 0; y < G.order() && central; ++y) central = G.commute(x, y);
        if (central) out.push_back(x);
    }
    return out;
}

bool mackey_counts(const MackeyData& D) {
    int64_t members = 0, over = 0;
    for (const auto& o : D.orbits) {
        members += static_cast<int64_t>(o.members.size());
        over += o.count_over;
        if (!o.nu || o.count_nu != o.count_over) return false;
    }
    return members == D.irreps_h.count() && over == D.count_total && D.identity_holds();
}

// Rotation configuration Z_L x| C^R(g) with H = Z_L: every nu equals the transgressed cocycle at g.
bool rotation_configuration(uint64_t seed) {
    auto D8 = dihedral_group(4);
    Cochain a = random_cocycle(D8, 3, false, 4, seed);
    int g = 1, L = 8;
    auto tau = real_transgress(a).materialized();
    Subgroup C = make_subgroup(D8, real_centralizer(*D8, g));
    Cochain th = component(tau, g, C);
    const GradedGroup& CR = *C.group;
    int n = CR.order(), N = L * n;
    std::vector<int> table(static_cast<size_t>(N) * N), pi(N);
    for (int x = 0; x < N; ++x) {
        pi[x] = CR.pi(x / L);
        for (int y = 0; y < N; ++y) {
            int k = static_cast<int>(mod(x % L + CR.pi(x / L) * (y % L), L));
            table[static_cast<size_t>(x) * N + y] = k + L * CR.mul(x / L, y / L);
        }
    }
    auto G = std::make_shared<GradedGroup>(N, std::move(table), std::move(pi), "Z_L x| C^R(g)");
    std::vector<int> proj(N), H;
    for (int x = 0; x < N; ++x) proj[x] = x / L;
    for (int k = 0; k < L; ++k) H.push_back(k);
    Cochain thG = pullback(th, G, proj);
    auto D = mackey_decompose(G, H, &thG);
    if (static_cast<int>(D.orbits.size()) != L) return false;
    for (const auto& o : D.orbits) {
        if (o.members.size() != 1 || !o.nu) return false;
        const Quotient& Q = o.quotient;
        Subgroup S = make_subgroup(G, o.stabilizer);
        int64_t scale = o.nu_modulus / th.modulus();
        for (int q1 = 0; q1 < Q.group->order(); ++q1)
            for (int q2 = 0; q2 < Q.group->order(); ++q2) {
                int c1 = S.to_parent[Q.section[q1]] / L, c2 = S.to_parent[Q.section[q2]] / L;
                if ((*o.nu)({q1, q2}) != mod(th({c1, c2}) * scale, o.nu_modulus)) return false;
            }
    }
    return mackey_counts(D);
}

// 5. Orbit sums of Mackey data against direct twisted Real irreducible counts.
std::pair<bool, std::string> mackey_suite(const VerifyOptions& opt) {
    Tally t;
    for (int m = 1; m <= 6; ++m) {
        auto G = group_from_spec("split(cyclic:" + std::to_string(m) + ")");
        std::vector<int> H;
        for (int x = 0; x < m; ++x) H.push_back(x);
        t.expect(mackey_counts(mackey_decompose(G, H)), "split(cyclic:" + std::to_string(m) + ")");
    }
    for (const char* spec : {"dihedral:4", "ungraded(dihedral:4)", "split(quaternion:8)", "quaternion:8"}) {
        auto G = group_from_spec(spec);
        t.expect(mackey_counts(mackey_decompose(G, central_involutions(*G))), std::string(spec) + " centre");
    }
    t.expect(mackey_counts(mackey_decompose(dihedral_group(4), {0, 1, 2, 3})), "dihedral:4 rotations");
    auto D8 = dihedral_group(4);
    for (uint64_t s = 1; s <= 2; ++s) {
        Cochain th = random_cocycle(D8, 2, true, 4, 3000 + opt.seed + s);
        t.expect(mackey_counts(mackey_decompose(D8, {0, 1, 2, 3}, &th)), "twisted dihedral:4 rotations");
        t.expect(mackey_counts(mackey_decompose(D8, {0, 2}, &th)), "twisted dihedral:4 centre");
    }
    t.expect(rotation_configuration(3100 + opt.seed), "rotation model");
    return {t.failures == 0 && t.checks >= 5, t.detail(std::to_string(t.checks) + " configurations")};
}

// 6. Tate curve torsion points.
std::pair<bool, std::string> tate_suite(const VerifyOptions&) {
    Tally t;
    for (int N = 1; N <= 6; ++N) {
        t.expect(check_group_axioms(N).all(), "group axioms N=" + std::to_string(N));
        t.expect(check_split(N).all(), "splitting N=" + std::to_string(N));
    }
    for (int N = 1; N <= 8; ++N) t.expect(exactness_check(N).all(), "exactness N=" + std::to_string(N));
    for (int N = 1; N <= 4; ++N) {
        t.expect(torsion_vs_qell(N).match, "sheets vs qell N=" + std::to_string(N));
        t.expect(real_fixed_points(N).all(), "TR[N] N=" + std::to_string(N));
        t.expect(pullback_square(N).all(), "pullback square N=" + std::to_string(N));
    }
    return {t.failures == 0, t.detail("N <= 6 exhaustive")};
}

std::vector<CycMatrix> regular_plus_linear(const GroupPtr& G) {
    auto K = make_subgroup(G, G->kernel());
    auto T = character_table(K.group);
    std::vector<int> lin;
    for (int r = 0; r < T->count(); ++r)
        if (T->degree(r) == 1) lin.push_back(r);
    int k = K.group->order();
    size_t d = k + lin.size();
    std::vector<CycMatrix> rho(G->order(), CycMatrix(d, std::vector<Cyc>(d, Cyc(0))));
    for (int g = 0; g < G->order(); ++g) {
        int gk = K.from_parent[g];
        if (gk < 0) continue;
        for (int b = 0; b < k; ++b) rho[g][K.group->mul(gk, b)][b] = Cyc(1);
        for (size_t i = 0; i < lin.size(); ++i) rho[g][k + i][k + i] = T->value(lin[i], gk);
    }
    return rho;
}

// 7. Wreath twists and power operations.
std::pair<bool, std::string> power_suite(const VerifyOptions& opt) {
    Tally t;
    auto D4 = dihedral_group(2);
    std::mt19937_64 rng(4000 + opt.seed);
    for (int deg : {2, 3}) {
        Cochain a = random_cochain(D4, deg, true, 4, rng), b = random_cochain(D4, deg, true, 4, rng);
        for (int M = 0; M <= 2; ++M)
            for (int N = 0; N <= 2; ++N) {
                if (opt.quick && deg == 3 && M == 2 && N == 2) continue;
                auto r = verify_twist_identities(a, b, M, N);
                t.expect(r.all() && r.exhaustive, "twist identities degree " + std::to_string(deg) + " M=" +
                                                      std::to_string(M) + " N=" + std::to_string(N));
            }
    }
    for (const char* spec : {"cyclic:2", "cyclic:3", "cyclic:4", "product(cyclic:2,cyclic:2)", "cyclic_graded:2",
                             "cyclic_graded:4", "dihedral:2", "split(cyclic:2)"}) {
        auto G = group_from_spec(spec);
        auto rho = regular_plus_linear(G);
        std::vector<Cyc> chi;
        for (const auto& A : rho) {
            Cyc tr(0);
            for (size_t i = 0; i < A.size(); ++i) tr += A[i][i];
            chi.push_back(tr);
        }
        for (int N = 1; N <= 3; ++N) {
            auto W = graded_wreath(G, N);
            auto P = power_rep(chi, *W);
            bool ok = true;
            for (int e = 0; e < W->group->order() && ok; ++e)
                if (!W->group->odd(e)) ok = P[e] == tensor_power_trace(rho, *W, e);
            t.expect(ok, std::string("tensor oracle ") + spec + " N=" + std::to_string(N));
        }
    }
    for (const char* spec : {"cyclic_graded:2", "dihedral:2", "dihedral:3"}) {
        auto G = group_from_spec(spec);
        for (bool real : {true, false}) {
            auto S = real ? qellr_point(G) : qell_point(G);
            auto T0 = power_space(S, 0, opt.jobs), T1 = power_space(S, 1, opt.jobs);
            for (int k = 0; k < 4; ++k) {
                QClass x = random_class(S, rng, 4);
                t.expect(power_operation(S, x, T0) == unit_class(T0.space), std::string("P_0 on ") + spec);
                t.expect(power_operation(S, x, T1) == x, std::string("P_1 on ") + spec);
            }
        }
    }
    auto R = qellr_point(cyclic_group(2, true));
    std::vector<PowerSpace> TZ;
    for (int N = 0; N <= 4; ++N) TZ.push_back(power_space(R, N, opt.jobs));
    for (int M = 1; M <= 3; ++M)
        for (int N = 1; M + N <= 4; ++N) {
            auto F = qellr_point(fibered_product(TZ[M].wreath->group, TZ[N].wreath->group));
            auto phi = external_embedding(*TZ[M].wreath, *TZ[N].wreath, *TZ[M + N].wreath);
            for (int k = 0; k < 3; ++k) {
                QClass x = random_class(R, rng, 3);
                t.expect(kunneth(TZ[M].space, TZ[N].space, F, power_operation(R, x, TZ[M]),
                                 power_operation(R, x, TZ[N])) ==
                             restrict_class(TZ[M + N].space, power_operation(R, x, TZ[M + N]), F, phi),
                         "external product M=" + std::to_string(M) + " N=" + std::to_string(N));
            }
        }
    int maxN = opt.quick ? 2 : 3;
    for (const char* spec : {"dihedral:2", "dihedral:3", "split(cyclic:3)"}) {
        auto G = group_from_spec(spec);
        auto RG = qellr_point(G), CG = qell_point(G);
        auto c = forgetful(RG, CG);
        for (int N = 2; N <= maxN; ++N) {
            auto TR = power_space(RG, N, opt.jobs), TC = power_space(CG, N, opt.jobs);
            auto cW = forgetful(TR.space, TC.space);
            for (int k = 0; k < 3; ++k) {
                QClass x = random_class(RG, rng, 3);
                t.expect(cW.apply(TC.space, power_operation(RG, x, TR)) == power_operation(CG, c.apply(CG, x), TC),
                         std::string("forgetful square ") + spec + " N=" + std::to_string(N));
            }
        }
    }
    return {t.failures == 0, t.detail("")};
}

// 8. ch o c = c o ph on every basis class.
std::pair<bool, std::string> character_suite(const VerifyOptions& opt) {
    Tally t;
    int64_t classes = 0;
    for (const char* spec : {"dihedral:2", "dihedral:4"}) {
        auto G = group_from_spec(spec);
        for (uint64_t s : {0ull, 1ull, 2ull}) {
            std::optional<Cochain> a;
            if (s) a = random_cocycle(G, 3, false, 4, 5000 + opt.seed + s);
            auto R = qellr_point(G, a ? &*a : nullptr, opt.jobs);
            auto C = qell_point(G, a ? &*a : nullptr, opt.jobs);
            auto F = forgetful(R, C);
            for (int i = 0; i < static_cast<int>(R.comps.size()); ++i)
                for (int b = 0; b < R.comps[i].rank(); ++b) {
                    QClass x = basis_class(R, i, b);
                    Sheet ph = character_sheet(R, x);
                    t.expect(sheet_invariant(R, ph), std::string(spec) + " invariance");
                    t.expect(character_sheet(C, F.apply(C, x)) == sheet_forget(R, C, ph),
                             std::string(spec) + " comp " + std::to_string(i) + " basis " + std::to_string(b));
                    ++classes;
                }
        }
    }
    return {t.failures == 0, t.detail(std::to_string(classes) + " basis classes")};
}

}  // namespace

std::vector<CriterionResult> run_property_suite(const VerifyOptions& opt) {
    std::vector<CriterionResult> out;
    out.push_back(timed(1, "transgression suite", [&] { return transgression_suite(opt); }));
    out.push_back(timed(2, "structure lemmas", [&] { return structure_lemmas(opt); }));
    out.push_back(timed(3, "cyclic presentations", [&] { return cyclic_presentations(opt); }));
    out.push_back(timed(4, "real type theorem", [&] { return real_type_theorem(opt); }));
    out.push_back(timed(5, "mackey counts", [&] { return mackey_suite(opt); }));
    out.push_back(timed(6, "tate suite", [&] { return tate_suite(opt); }));
    out.push_back(timed(7, "power suite", [&] { return power_suite(opt); }));
    out.push_back(timed(8, "character suite", [&] { return character_suite(opt); }));
    return out;
}

CriterionResult determinism_check(const VerifyOptions& opt, const std::string& first_report) {
    std::string second;
    CriterionResult r = timed(9, "determinism", [&] {
        second = render_report(run_property_suite(opt));
        return std::make_pair(second == first_report, std::string("second run ") +
                                                          (second == first_report ? "byte-identical" : "differs"));
    });
    return r;
}

std::vector<CriterionResult> run_verify(const VerifyOptions& opt) {
    auto out = run_property_suite(opt);
    out.push_back(determinism_check(opt, render_report(out)));
    return out;
}

std::string render_report(const std::vector<CriterionResult>& results) {
    std::ostringstream o;
    for (const auto& r : results)
        o << (r.pass ? "PASS" : "FAIL") << "  " << r.id << "  " << r.name << ": " << r.detail << "\n";
    return o.str();
}

}  // namespace qellr
