#include "qellr/chartable.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace qellr {

namespace {

int64_t powmod(int64_t b, int64_t e, int64_t p) {
    int64_t r = 1;
    b %= p;
    if (b < 0) b += p;
    while (e > 0) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

int64_t invmod(int64_t a, int64_t p) { return powmod(mod(a, p), p - 2, p); }

bool is_prime(int64_t n) {
    if (n < 2) return false;
    for (int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

int64_t primitive_root(int64_t p) {
    std::vector<int64_t> fac;
    int64_t n = p - 1;
    for (int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            fac.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) fac.push_back(n);
    for (int64_t g = 2;; ++g) {
        bool ok = true;
        for (int64_t f : fac)
            if (powmod(g, (p - 1) / f, p) == 1) ok = false;
        if (ok) return g;
    }
}

using Mat = std::vector<std::vector<int64_t>>;

// Rows of a basis in reduced row echelon form; returns pivot columns.
std::vector<int> rref(Mat& B, int64_t p) {
    std::vector<int> piv;
    size_t r = 0;
    size_t cols = B.empty() ? 0 : B[0].size();
    for (size_t c = 0; c < cols && r < B.size(); ++c) {
        size_t k = r;
        while (k < B.size() && B[k][c] == 0) ++k;
        if (k == B.size()) continue;
        std::swap(B[k], B[r]);
        int64_t inv = invmod(B[r][c], p);
        for (auto& v : B[r]) v = v * inv % p;
        for (size_t i = 0; i < B.size(); ++i) {
            if (i == r || B[i][c] == 0) continue;
            int64_t f = B[i][c];
            for (size_t j = 0; j < cols; ++j) B[i][j] = mod(B[i][j] - f * B[r][j], p);
        }
        piv.push_back(static_cast<int>(c));
        ++r;
    }
    B.resize(r);
    return piv;
}

// Null space of a square matrix mod p.
Mat nullspace(Mat M, int64_t p) {
    size_t n = M.size();
    size_t cols = n ? M[0].size() : 0;
    auto piv = rref(M, p);
    std::vector<char> is_piv(cols, 0);
    for (int c : piv) is_piv[c] = 1;
    Mat out;
    for (size_t f = 0; f < cols; ++f) {
        if (is_piv[f]) continue;
        std::vector<int64_t> v(cols, 0);
        v[f] = 1;
        for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = mod(-M[i][f], p);
        out.push_back(v);
    }
    return out;
}

// Characteristic polynomial (monic, low degree first) via Hessenberg reduction.
std::vector<int64_t> charpoly(Mat H, int64_t p) {
    int n = static_cast<int>(H.size());
    for (int j = 0; j < n - 2; ++j) {
        int i = j + 1;
        while (i < n && H[i][j] == 0) ++i;
        if (i == n) continue;
        if (i != j + 1) {
            std::swap(H[i], H[j + 1]);
            for (int r = 0; r < n; ++r) std::swap(H[r][i], H[r][j + 1]);
        }
        int64_t inv = invmod(H[j + 1][j], p);
        for (int k = j + 2; k < n; ++k) {
            if (H[k][j] == 0) continue;
            int64_t f = H[k][j] * inv % p;
            for (int c = 0; c < n; ++c) H[k][c] = mod(H[k][c] - f * H[j + 1][c], p);
            for (int r = 0; r < n; ++r) H[r][j + 1] = (H[r][j + 1] + f * H[r][k]) % p;
        }
    }
    std::vector<std::vector<int64_t>> P(n + 1);
    P[0] = {1};
    for (int k = 1; k <= n; ++k) {
        // P_k = (x - h_kk) P_{k-1} - sum_{i<k} h_{ik} prod_{j=i+1}^{k} h_{j,j-1} P_{i-1}
        std::vector<int64_t> r(k + 1, 0);
        for (int i = 0; i < k; ++i) {
            r[i + 1] = (r[i + 1] + P[k - 1][i]) % p;
            r[i] = mod(r[i] - H[k - 1][k - 1] * P[k - 1][i], p);
        }
        int64_t prod = 1;
        for (int i = k - 1; i >= 1; --i) {
            prod = prod * H[i][i - 1] % p;
            int64_t c = H[i - 1][k - 1] * prod % p;
            for (size_t t = 0; t < P[i - 1].size(); ++t) r[t] = mod(r[t] - c * P[i - 1][t], p);
        }
        P[k] = r;
    }
    return P[n];
}

int64_t polyeval(const std::vector<int64_t>& f, int64_t x, int64_t p) {
    int64_t r = 0;
    for (size_t i = f.size(); i-- > 0;) r = (r * x + f[i]) % p;
    return r;
}

struct Attempt {
    bool ok = false;
    std::vector<std::vector<int64_t>> mults;  // per character: flattened class x e
    std::vector<int64_t> degrees;
};

Attempt dixon(const GradedGroup& G, const ClassData& cd, int e, int64_t p) {
    Attempt res;
    int r = cd.count();
    int n = G.order();
    // structure constants A_j[k][l] = #{x in C_j : x^-1 g_l in C_k}
    std::vector<Mat> A(r, Mat(r, std::vector<int64_t>(r, 0)));
    for (int l = 0; l < r; ++l) {
        int gl = cd.reps[l];
        for (int x = 0; x < n; ++x) A[cd.class_of[x]][cd.class_of[G.mul(G.inv(x), gl)]][l]++;
    }
    for (auto& M : A)
        for (auto& row : M)
            for (auto& v : row) v %= p;
    std::vector<Mat> spaces;
    {
        Mat I(r, std::vector<int64_t>(r, 0));
        for (int i = 0; i < r; ++i) I[i][i] = 1;
        spaces.push_back(I);
    }
    for (int j = 1; j < r; ++j) {
        bool all_one = true;
        for (auto& s : spaces)
            if (s.size() > 1) all_one = false;
        if (all_one) break;
        std::vector<Mat> next;
        for (auto& S : spaces) {
            if (S.size() == 1) {
                next.push_back(S);
                continue;
            }
            auto piv = rref(S, p);
            size_t d = S.size();
            // restricted matrix in coordinates given by pivot entries
            Mat R(d, std::vector<int64_t>(d, 0));
            for (size_t i = 0; i < d; ++i) {
                std::vector<int64_t> img(r, 0);
                for (int k = 0; k < r; ++k) {
                    int64_t acc = 0;
                    for (int l = 0; l < r; ++l) acc = (acc + A[j][k][l] * S[i][l]) % p;
                    img[k] = acc;
                }
                for (size_t c = 0; c < d; ++c) R[c][i] = img[piv[c]];
            }
            auto cp = charpoly(R, p);
            size_t found = 0;
            std::vector<Mat> parts;
            for (int64_t lam = 0; lam < p && found < d; ++lam) {
                if (polyeval(cp, lam, p) != 0) continue;
                Mat M = R;
                for (size_t i = 0; i < d; ++i) M[i][i] = mod(M[i][i] - lam, p);
                Mat ns = nullspace(M, p);
                if (ns.empty()) continue;
                Mat part;
                for (auto& y : ns) {
                    std::vector<int64_t> v(r, 0);
                    for (size_t i = 0; i < d; ++i)
                        if (y[i] != 0)
                            for (int l = 0; l < r; ++l) v[l] = (v[l] + y[i] * S[i][l]) % p;
                    part.push_back(v);
                }
                found += part.size();
                parts.push_back(part);
            }
            if (found != d) return res;  // not diagonalisable over F_p: degenerate prime
            for (auto& q : parts) next.push_back(q);
        }
        spaces = std::move(next);
    }
    for (auto& s : spaces)
        if (s.size() != 1) return res;
    if (static_cast<int>(spaces.size()) != r) return res;
    // inverse classes and power maps
    std::vector<int> inv_class(r);
    for (int l = 0; l < r; ++l) inv_class[l] = cd.class_of[G.inv(cd.reps[l])];
    std::vector<std::vector<int>> powmap(r, std::vector<int>(e));
    for (int l = 0; l < r; ++l) {
        int x = 0;
        for (int s = 0; s < e; ++s) {
            powmap[l][s] = cd.class_of[x];
            x = G.mul(x, cd.reps[l]);
        }
    }
    int64_t w = powmod(primitive_root(p), (p - 1) / e, p);
    int64_t einv = invmod(e, p);
    for (auto& s : spaces) {
        std::vector<int64_t> v = s[0];
        if (v[0] == 0) return res;
        int64_t nv = invmod(v[0], p);
        for (auto& x : v) x = x * nv % p;
        int64_t S = 0;
        for (int l = 0; l < r; ++l) S = (S + v[l] * v[inv_class[l]] % p * invmod(cd.size(l), p)) % p;
        if (S == 0) return res;
        int64_t d2 = n % p * invmod(S, p) % p;
        int64_t d = 0;
        for (int64_t c = 1; c * c <= n; ++c)
            if (c * c % p == d2 && n % c == 0) {
                d = c;
                break;
            }
        if (d == 0) return res;
        std::vector<int64_t> chi(r);
        for (int l = 0; l < r; ++l) chi[l] = d * v[l] % p * invmod(cd.size(l), p) % p;
        std::vector<int64_t> flat(static_cast<size_t>(r) * e, 0);
        for (int l = 0; l < r; ++l) {
            int64_t total = 0;
            for (int k = 0; k < e; ++k) {
                int64_t acc = 0;
                for (int s2 = 0; s2 < e; ++s2) acc = (acc + chi[powmap[l][s2]] * powmod(w, mod(-int64_t(k) * s2, e), p)) % p;
                acc = acc * einv % p;
                if (acc > d) return res;
                flat[static_cast<size_t>(l) * e + k] = acc;
                total += acc;
            }
            if (total != d) return res;
        }
        res.mults.push_back(flat);
        res.degrees.push_back(d);
    }
    res.ok = true;
    return res;
}

std::string table_key(const GradedGroup& g) {
    std::string k(reinterpret_cast<const char*>(g.table().data()), g.table().size() * sizeof(int));
    return std::to_string(g.order()) + ":" + k;
}

}  // namespace

int64_t CharacterTable::degree(int irrep) const { return chars[irrep][0].rational().num(); }

TablePtr character_table(const GroupPtr& g) {
    static std::mutex mu;
    static std::map<std::string, TablePtr> cache;
    std::string key = table_key(*g);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) {
            if (it->second->group == g) return it->second;
            auto t = std::make_shared<CharacterTable>(*it->second);
            t->group = g;
            return t;
        }
    }
    check_order_bound(g->order(), "character table");
    auto t = std::make_shared<CharacterTable>();
    t->group = g;
    t->classes = ordinary_classes(*g);
    int e = g->exponent();
    t->exponent = e;
    int64_t lower = static_cast<int64_t>(2 * std::sqrt(static_cast<double>(g->order()))) + 1;
    int64_t p = 1;
    Attempt a;
    while (!a.ok) {
        do {
            p += e;
        } while (!is_prime(p) || p <= lower);
        a = dixon(*g, t->classes, e, p);
        if (p > 1000000) throw std::runtime_error("character table: no usable prime");
    }
    t->prime = p;
    int r = t->classes.count();
    std::vector<size_t> order(a.mults.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
        if (a.degrees[x] != a.degrees[y]) return a.degrees[x] < a.degrees[y];
        return a.mults[x] > a.mults[y];
    });
    for (size_t i : order) {
        ClassFunction row(r);
        for (int l = 0; l < r; ++l) {
            std::vector<Rational> c(e);
            for (int k = 0; k < e; ++k) c[k] = Rational(a.mults[i][static_cast<size_t>(l) * e + k]);
            row[l] = Cyc::from_powers(e, c);
        }
        t->chars.push_back(row);
    }
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, t);
    return t;
}

Rational inner_product(const CharacterTable& t, const ClassFunction& a, const ClassFunction& b) {
    Cyc acc(0);
    for (int l = 0; l < t.classes.count(); ++l) acc += a[l] * b[l].conj() * Rational(t.classes.size(l));
    return acc.rational() / Rational(t.group->order());
}

std::vector<int64_t> decompose(const CharacterTable& t, const ClassFunction& f) {
    std::vector<int64_t> out;
    for (const auto& chi : t.chars) {
        Rational r = inner_product(t, f, chi);
        if (!r.is_integer()) throw std::domain_error("class function is not a virtual character");
        out.push_back(r.num());
    }
    return out;
}

ClassFunction class_function(const CharacterTable& t, const std::function<Cyc(int)>& value_at_elem) {
    ClassFunction f;
    for (int rep : t.classes.reps) f.push_back(value_at_elem(rep));
    return f;
}

ClassFunction induce(const CharacterTable& sub, const Subgroup& s, const CharacterTable& parent, const ClassFunction& f) {
    const GradedGroup& G = *parent.group;
    ClassFunction out;
    for (int g : parent.classes.reps) {
        Cyc acc(0);
        for (int x = 0; x < G.order(); ++x) {
            int y = s.from_parent[G.conj(x, g)];
            if (y >= 0) acc += f[sub.classes.class_of[y]];
        }
        out.push_back(acc * Rational(1, s.group->order()));
    }
    return out;
}

ClassFunction restrict_char(const CharacterTable& parent, const Subgroup& s, const CharacterTable& sub, const ClassFunction& f) {
    ClassFunction out;
    for (int h : sub.classes.reps) out.push_back(f[parent.classes.class_of[s.to_parent[h]]]);
    return out;
}

const char* real_type_name(RealType t) {
    switch (t) {
        case RealType::R: return "R";
        case RealType::C: return "C";
        case RealType::H: return "H";
        default: return "complex";
    }
}

int graded_indicator(const GradedGroup& grp, const std::function<Cyc(int)>& chi, int64_t kernel_order) {
    Cyc acc(0);
    for (int s = 0; s < grp.order(); ++s)
        if (grp.odd(s)) acc += chi(grp.mul(s, s));
    Rational v = acc.rational() / Rational(kernel_order);
    if (!(v == Rational(1) || v == Rational(0) || v == Rational(-1)))
        throw std::domain_error("graded indicator outside {-1,0,1}: character is reducible");
    return static_cast<int>(v.num());
}

Cyc TwistedIrreps::value(int k, int ext_elem) const {
    int u = ungraded.from_parent[ext_elem];
    if (u < 0) throw std::invalid_argument("twisted character evaluated at an odd element");
    return table->value(rows[k], u);
}

int64_t TwistedIrreps::degree(int k) const { return table->degree(rows[k]); }

Cyc TwistedIrreps::forgot_value(int r, int ext_elem) const {
    const auto& ri = real[r];
    switch (ri.type) {
        case RealType::R:
        case RealType::Complex: return value(ri.a, ext_elem);
        case RealType::H: return value(ri.a, ext_elem) * Rational(2);
        case RealType::C: return value(ri.a, ext_elem) + value(ri.b, ext_elem);
    }
    return Cyc(0);
}

TwistedIrreps twisted_irreps(const std::shared_ptr<const Extension>& ext) {
    return twisted_irreps(ext->group, ext->encode(0, ext->m > 1 ? 1 : 0), ext->m);
}

TwistedIrreps twisted_irreps(const GroupPtr& group, int central, int64_t m) {
    TwistedIrreps T;
    T.group = group;
    T.central = central;
    T.m = m;
    const GradedGroup& E = *group;
    T.ungraded = make_subgroup(group, E.kernel(), "ungraded");
    T.table = character_table(T.ungraded.group);
    int zeta_elem = central;
    int zu = T.ungraded.from_parent[zeta_elem];
    Cyc zeta = Cyc::zeta(static_cast<int>(m), 1);
    for (int i = 0; i < T.table->count(); ++i) {
        Cyc d(T.table->degree(i));
        if (T.table->value(i, zu) == d * zeta) T.rows.push_back(i);
    }
    int n = T.count();
    T.partner.assign(n, -1);
    bool graded = E.graded();
    for (int k = 0; k < n; ++k) {
        if (!graded) {
            T.indicator.push_back(0);
            T.type.push_back(RealType::Complex);
            T.partner[k] = k;
            continue;
        }
        int ind = graded_indicator(E, [&](int x) { return T.value(k, x); }, T.ungraded.group->order());
        T.indicator.push_back(ind);
        T.type.push_back(ind == 1 ? RealType::R : ind == 0 ? RealType::C : RealType::H);
    }
    if (graded) {
        int eps = E.omega();
        int eps_inv = E.inv(eps);
        for (int k = 0; k < n; ++k) {
            // psi(x) = conj(chi(eps^-1 x eps))
            std::vector<int> reps = T.table->classes.reps;
            for (int j = 0; j < n; ++j) {
                bool same = true;
                for (int u : reps) {
                    int x = T.ungraded.to_parent[u];
                    if (!(T.value(j, x) == T.value(k, E.mul(E.mul(eps_inv, x), eps)).conj())) {
                        same = false;
                        break;
                    }
                }
                if (same) {
                    T.partner[k] = j;
                    break;
                }
            }
            if (T.partner[k] < 0) throw std::logic_error("twisted irrep without Real partner");
            if ((T.partner[k] == k) != (T.type[k] != RealType::C))
                throw std::logic_error("Real type inconsistent with partner");
        }
    }
    for (int k = 0; k < n; ++k) {
        if (T.type[k] == RealType::C && T.partner[k] < k) continue;
        T.real.push_back({T.type[k], k, T.partner[k]});
    }
    return T;
}

}  // namespace qellr
