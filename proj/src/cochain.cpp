#include "qellr/cochain.hpp"

#include <stdexcept>

#include "qellr/linalg.hpp"

namespace qellr {

namespace {

int64_t ipow(int64_t b, int e) {
    int64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

int64_t tuple_code(const int* t, int len, int n) {
    int64_t c = 0;
    for (int i = 0; i < len; ++i) c = c * n + t[i];
    return c;
}

// Terms of the coboundary of a (len-1)-cochain at the len-tuple t:
// f(coef, subtuple) for each nonvanishing face.
template <class F>
void coboundary_terms(const GradedGroup& g, bool twisted, const int* t, int len, F&& f) {
    int sub[64];
    // first face drops the leftmost entry
    for (int i = 1; i < len; ++i) sub[i - 1] = t[i];
    f((twisted && g.odd(t[0])) ? -1 : 1, sub);
    for (int j = 1; j < len; ++j) {
        int p = len - j - 1;
        int k = 0;
        for (int i = 0; i < p; ++i) sub[k++] = t[i];
        sub[k++] = g.mul(t[p], t[p + 1]);
        for (int i = p + 2; i < len; ++i) sub[k++] = t[i];
        f(((len - j) % 2 == 0) ? 1 : -1, sub);
    }
    for (int i = 0; i + 1 < len; ++i) sub[i] = t[i];
    f((len % 2 == 0) ? 1 : -1, sub);
}

}  // namespace

Cochain::Cochain(GroupPtr base, int degree, bool twisted, int64_t modulus, std::vector<int64_t> dense)
    : base_(std::move(base)), degree_(degree), twisted_(twisted), m_(modulus), dense_(std::move(dense)) {
    if (m_ <= 0) throw std::invalid_argument("cochain modulus must be positive");
    if (static_cast<int64_t>(dense_.size()) != tuple_count())
        throw std::invalid_argument("dense cochain has wrong number of entries");
    for (auto& v : dense_) v = mod(v, m_);
}

Cochain::Cochain(GroupPtr base, int degree, bool twisted, int64_t modulus, Eval eval)
    : base_(std::move(base)), degree_(degree), twisted_(twisted), m_(modulus),
      eval_(std::make_shared<const Eval>(std::move(eval))) {
    if (m_ <= 0) throw std::invalid_argument("cochain modulus must be positive");
}

int64_t Cochain::tuple_count() const { return ipow(base_->order(), degree_); }

int64_t Cochain::at(const int* t) const {
    if (!dense_.empty()) return dense_[tuple_code(t, degree_, base_->order())];
    if (eval_) return mod((*eval_)(t), m_);
    return 0;
}

Cochain Cochain::materialized() const {
    if (!dense_.empty()) return *this;
    std::vector<int64_t> v(tuple_count());
    int64_t i = 0;
    for_each_tuple(base_->order(), degree_, [&](const int* t) { v[i++] = at(t); });
    return Cochain(base_, degree_, twisted_, m_, std::move(v));
}

Cochain Cochain::with_modulus(int64_t M) const {
    if (M == m_) return *this;
    if (M % m_ != 0) throw std::invalid_argument("modulus change must be to a multiple");
    int64_t s = M / m_;
    Cochain c = *this;
    return Cochain(base_, degree_, twisted_, M, [c, s](const int* t) { return c.at(t) * s; });
}

void for_each_tuple(int n, int len, const std::function<void(const int*)>& f) {
    std::vector<int> t(std::max(len, 1), 0);
    while (true) {
        f(t.data());
        int i = len - 1;
        while (i >= 0 && ++t[i] == n) t[i--] = 0;
        if (i < 0) break;
    }
}

Cochain zero_cochain(const GroupPtr& base, int degree, bool twisted, int64_t m) {
    return Cochain(base, degree, twisted, m, [](const int*) { return int64_t(0); });
}

Cochain differential(const Cochain& c) {
    GroupPtr g = c.base();
    int len = c.degree() + 1;
    bool tw = c.twisted();
    Cochain d(g, len, tw, c.modulus(), [c, g, len, tw](const int* t) {
        int64_t acc = 0;
        coboundary_terms(*g, tw, t, len, [&](int coef, const int* sub) { acc += coef * c.at(sub); });
        return acc;
    });
    if (d.tuple_count() <= 200000) return d.materialized();
    return d;
}

namespace {
void check_compatible(const Cochain& a, const Cochain& b) {
    if (a.base() != b.base() && a.base()->table() != b.base()->table())
        throw std::invalid_argument("cochains live on different groups");
    if (a.degree() != b.degree() || a.twisted() != b.twisted())
        throw std::invalid_argument("cochains differ in degree or twisting");
}
}  // namespace

Cochain add(const Cochain& a, const Cochain& b) {
    check_compatible(a, b);
    int64_t M = lcm64(a.modulus(), b.modulus());
    Cochain x = a.with_modulus(M), y = b.with_modulus(M);
    Cochain r(a.base(), a.degree(), a.twisted(), M, [x, y](const int* t) { return x.at(t) + y.at(t); });
    return r.tuple_count() <= 200000 ? r.materialized() : r;
}

Cochain negate(const Cochain& a) { return scale(a, -1); }

Cochain scale(const Cochain& a, int64_t k) {
    Cochain r(a.base(), a.degree(), a.twisted(), a.modulus(), [a, k](const int* t) { return a.at(t) * k; });
    return r.tuple_count() <= 200000 ? r.materialized() : r;
}

bool equal(const Cochain& a, const Cochain& b) {
    check_compatible(a, b);
    int64_t M = lcm64(a.modulus(), b.modulus());
    int64_t sa = M / a.modulus(), sb = M / b.modulus();
    bool ok = true;
    for_each_tuple(a.base()->order(), a.degree(), [&](const int* t) {
        if (ok && mod(a.at(t) * sa, M) != mod(b.at(t) * sb, M)) ok = false;
    });
    return ok;
}

bool is_cocycle(const Cochain& c) {
    Cochain d = differential(c);
    bool ok = true;
    for_each_tuple(c.base()->order(), d.degree(), [&](const int* t) {
        if (ok && d.at(t) != 0) ok = false;
    });
    return ok;
}

bool is_normalized(const Cochain& c) {
    bool ok = true;
    for_each_tuple(c.base()->order(), c.degree(), [&](const int* t) {
        if (!ok) return;
        for (int i = 0; i < c.degree(); ++i)
            if (t[i] == 0) {
                if (c.at(t) != 0) ok = false;
                return;
            }
    });
    return ok;
}

Cochain pullback(const Cochain& c, const GroupPtr& H, const std::vector<int>& phi) {
    if (static_cast<int>(phi.size()) != H->order()) throw std::invalid_argument("pullback map has wrong size");
    int deg = c.degree();
    bool tw = c.twisted() && H->graded();
    Cochain r(H, deg, tw, c.modulus(), [c, phi, deg](const int* t) {
        int u[64];
        for (int i = 0; i < deg; ++i) u[i] = phi[t[i]];
        return c.at(u);
    });
    return r.tuple_count() <= 200000 ? r.materialized() : r;
}

Cochain restrict_to(const Cochain& c, const Subgroup& s) { return pullback(c, s.group, s.to_parent); }

Cochain random_cochain(const GroupPtr& base, int degree, bool twisted, int64_t m, std::mt19937_64& rng) {
    int64_t count = ipow(base->order(), degree);
    if (count > 5000000) throw OrderBoundExceeded("random cochain too large to store");
    std::vector<int64_t> v(count, 0);
    int64_t i = 0;
    for_each_tuple(base->order(), degree, [&](const int* t) {
        bool normal = true;
        for (int k = 0; k < degree; ++k)
            if (t[k] == 0) normal = false;
        int64_t r = static_cast<int64_t>(rng() % static_cast<uint64_t>(m));
        v[i++] = normal ? r : 0;
    });
    return Cochain(base, degree, twisted, m, std::move(v));
}

namespace {

// Normalized tuples: entries in 1..n-1, column index in base n-1.
int64_t normal_code(const int* t, int len, int n) {
    int64_t c = 0;
    for (int i = 0; i < len; ++i) {
        if (t[i] == 0) return -1;
        c = c * (n - 1) + (t[i] - 1);
    }
    return c;
}

IntMatrix coboundary_matrix(const GradedGroup& g, int degree, bool twisted) {
    int n = g.order();
    int64_t cols = ipow(n - 1, degree), rows = ipow(n - 1, degree + 1);
    if (rows * cols > 60000000) throw OrderBoundExceeded("coboundary matrix too large");
    IntMatrix A(rows, std::vector<int64_t>(cols, 0));
    std::vector<int> t(degree + 1, 1);
    for (int64_t r = 0; r < rows; ++r) {
        int64_t x = r;
        for (int i = degree; i >= 0; --i) {
            t[i] = static_cast<int>(x % (n - 1)) + 1;
            x /= n - 1;
        }
        coboundary_terms(g, twisted, t.data(), degree + 1, [&](int coef, const int* sub) {
            int64_t c = normal_code(sub, degree, n);
            if (c >= 0) A[r][c] += coef;
        });
    }
    return A;
}

Cochain from_normal_vector(const GroupPtr& g, int degree, bool twisted, int64_t m, const std::vector<int64_t>& v) {
    int n = g->order();
    std::vector<int64_t> dense(ipow(n, degree), 0);
    int64_t i = 0;
    for_each_tuple(n, degree, [&](const int* t) {
        int64_t c = normal_code(t, degree, n);
        dense[i++] = c >= 0 ? v[c] : 0;
    });
    return Cochain(g, degree, twisted, m, std::move(dense));
}

}  // namespace

Cochain cyclic_pullback_cocycle(const GroupPtr& base, const std::vector<int>& phi, int k, int64_t m) {
    if (m % k != 0) throw std::invalid_argument("cyclic generator needs k | m");
    int64_t s = m / k;
    return Cochain(base, 3, false, m, [phi, k, s](const int* t) {
        int a = phi[t[0]], b = phi[t[1]], c = phi[t[2]];
        return static_cast<int64_t>(a) * ((b + c) / k) * s;
    }).materialized();
}

CocycleSampler::CocycleSampler(GroupPtr base, int degree, bool twisted, int64_t m)
    : base_(std::move(base)), degree_(degree), twisted_(twisted), m_(m) {
    int n = base_->order();
    int64_t cols = ipow(n - 1, degree), rows = ipow(n - 1, degree + 1);
    if (n > 1 && rows * cols <= 1500000) {
        auto A = coboundary_matrix(*base_, degree, twisted);
        basis_ = kernel_mod(A, cols, m);
        if (basis_.empty()) basis_.push_back(std::vector<int64_t>(cols, 0));
        return;
    }
    if (!twisted && degree == 3) {
        for (int k = 2; k <= m; ++k) {
            if (m % k != 0) continue;
            for (const auto& phi : homomorphisms_to_cyclic(*base_, k)) generators_.push_back(cyclic_pullback_cocycle(base_, phi, k, m));
        }
    }
    if (!twisted && degree == 2) {
        for (int k = 2; k <= m; ++k) {
            if (m % k != 0) continue;
            auto homs = homomorphisms_to_cyclic(*base_, k);
            int64_t s = m / k;
            for (const auto& a : homs)
                for (const auto& b : homs)
                    generators_.push_back(
                        Cochain(base_, 2, false, m, [a, b, s](const int* t) { return int64_t(a[t[0]]) * b[t[1]] * s; })
                            .materialized());
        }
    }
}

Cochain CocycleSampler::sample(std::mt19937_64& rng) const {
    auto um = static_cast<uint64_t>(m_);
    if (!basis_.empty()) {
        size_t cols = basis_[0].size();
        std::vector<int64_t> v(cols, 0);
        for (const auto& b : basis_) {
            int64_t c = static_cast<int64_t>(rng() % um);
            for (size_t i = 0; i < cols; ++i) v[i] = mod(v[i] + c * b[i], m_);
        }
        return from_normal_vector(base_, degree_, twisted_, m_, v);
    }
    Cochain acc = differential(random_cochain(base_, degree_ - 1, twisted_, m_, rng)).materialized();
    for (const auto& g : generators_) {
        int64_t c = static_cast<int64_t>(rng() % um);
        if (c != 0) acc = add(acc, scale(g, c));
    }
    return acc.materialized();
}

Cochain random_cocycle(const GroupPtr& base, int degree, bool twisted, int64_t m, uint64_t seed) {
    std::mt19937_64 rng(seed);
    return CocycleSampler(base, degree, twisted, m).sample(rng);
}

std::optional<Cochain> cohomologous(const Cochain& a, const Cochain& b) {
    check_compatible(a, b);
    int64_t M = lcm64(a.modulus(), b.modulus());
    const GroupPtr& g = a.base();
    int n = g->order(), deg = a.degree();
    if (deg == 0) {
        if (mod(a.with_modulus(M).at(nullptr) - b.with_modulus(M).at(nullptr), M) == 0)
            return zero_cochain(g, 0, a.twisted(), M);
        return std::nullopt;
    }
    Cochain diff = add(a, negate(b)).with_modulus(M);
    if (n == 1) {
        int64_t v = diff.at(std::vector<int>(deg, 0).data());
        if (v == 0) return zero_cochain(g, deg - 1, a.twisted(), M);
        return std::nullopt;
    }
    // normalize: the difference must vanish on tuples containing the identity
    // only after correction; use the full (unnormalized) system for safety
    int64_t cols = ipow(n, deg - 1), rows = ipow(n, deg);
    if (rows * cols > 30000000) throw OrderBoundExceeded("cohomology test too large");
    IntMatrix A(rows, std::vector<int64_t>(cols, 0));
    std::vector<int64_t> rhs(rows);
    int64_t r = 0;
    for_each_tuple(n, deg, [&](const int* t) {
        coboundary_terms(*g, a.twisted(), t, deg, [&](int coef, const int* sub) {
            A[r][tuple_code(sub, deg - 1, n)] += coef;
        });
        rhs[r] = diff.at(t);
        ++r;
    });
    auto sol = solve_mod(A, rhs, M);
    if (!sol) return std::nullopt;
    return Cochain(g, deg - 1, a.twisted(), M, *sol);
}

std::shared_ptr<const Extension> central_extension(const Cochain& theta) {
    if (theta.degree() != 2) throw std::invalid_argument("central extension needs a degree-2 cochain");
    const GroupPtr& g = theta.base();
    int n = g->order();
    int64_t m = theta.modulus();
    check_order_bound(n * m, "central extension");
    if (m > 1) {
        // exhaustive on small bases, a fixed sample of triples beyond
        bool ok = true;
        if (static_cast<int64_t>(n) * n * n <= 5000000) {
            ok = is_cocycle(theta);
        } else {
            Cochain d = differential(theta);
            std::mt19937_64 rng(0x5eed);
            int t[3];
            for (int s = 0; s < 200000 && ok; ++s) {
                for (int& v : t) v = static_cast<int>(rng() % n);
                ok = d.at(t) == 0;
            }
        }
        if (!ok) throw std::invalid_argument("extension data is not a cocycle");
        if (!is_normalized(theta)) throw std::invalid_argument("extension data is not normalized");
    }
    auto ext = std::make_shared<Extension>();
    ext->base = g;
    ext->m = m;
    int N = static_cast<int>(n * m);
    std::vector<int> table(static_cast<size_t>(N) * N), pi(N);
    for (int x = 0; x < N; ++x) {
        int w2 = static_cast<int>(x / m);
        int64_t z2 = x % m;
        pi[x] = g->pi(w2);
        for (int y = 0; y < N; ++y) {
            int w1 = static_cast<int>(y / m);
            int64_t z1 = y % m;
            int64_t z = theta({w2, w1}) + z2 + (theta.twisted() ? g->pi(w2) : 1) * z1;
            table[static_cast<size_t>(x) * N + y] = static_cast<int>(g->mul(w2, w1) * m + mod(z, m));
        }
    }
    ext->group = std::make_shared<GradedGroup>(N, std::move(table), std::move(pi), "ext(" + g->name() + ")");
    return ext;
}

}  // namespace qellr
