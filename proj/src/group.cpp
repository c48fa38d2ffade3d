#include "qellr/group.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>

#include "qellr/rational.hpp"

namespace qellr {

int64_t order_bound() {
    const char* env = std::getenv("QELLR_ORDER_BOUND");
    if (env != nullptr) {
        char* end = nullptr;
        long long v = std::strtoll(env, &end, 10);
        if (end != env && v > 0) return v;
    }
    return 10000;
}

void check_order_bound(int64_t n, const std::string& what) {
    if (n > order_bound())
        throw OrderBoundExceeded(what + " of order " + std::to_string(n) + " exceeds bound " +
                                 std::to_string(order_bound()));
}

GradedGroup::GradedGroup(int n, std::vector<int> table, std::vector<int> pi, std::string name)
    : n_(n), table_(std::move(table)), pi_(std::move(pi)), name_(std::move(name)) {
    if (n <= 0 || table_.size() != static_cast<size_t>(n) * n || pi_.size() != static_cast<size_t>(n))
        throw std::invalid_argument("group table has wrong shape");
    for (int v : table_)
        if (v < 0 || v >= n) throw std::invalid_argument("group table entry out of range");
    for (int a = 0; a < n; ++a)
        if (mul(0, a) != a || mul(a, 0) != a) throw std::invalid_argument("element 0 is not the identity");
    inv_.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b)
            if (mul(a, b) == 0) {
                inv_[a] = b;
                break;
            }
        if (inv_[a] < 0 || mul(inv_[a], a) != 0) throw std::invalid_argument("element without inverse");
    }
    // associativity: exhaustive up to order 64, sampled beyond
    uint64_t state = 0x9e3779b97f4a7c15ULL;
    auto next = [&]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return static_cast<int>(state % static_cast<uint64_t>(n));
    };
    if (n <= 64) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (mul(mul(a, b), c) != mul(a, mul(b, c))) throw std::invalid_argument("table is not associative");
    } else {
        for (int s = 0; s < 20000; ++s) {
            int a = next(), b = next(), c = next();
            if (mul(mul(a, b), c) != mul(a, mul(b, c))) throw std::invalid_argument("table is not associative");
        }
    }
    for (int v : pi_)
        if (v != 1 && v != -1) throw std::invalid_argument("grading values must be +1 or -1");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (pi_[mul(a, b)] != pi_[a] * pi_[b]) throw std::invalid_argument("grading is not a homomorphism");
    ord_.assign(n, 0);
    for (int a = 0; a < n; ++a) {
        int k = 1, x = a;
        while (x != 0) {
            x = mul(x, a);
            ++k;
        }
        ord_[a] = k;
    }
    for (int a = 0; a < n; ++a)
        if (pi_[a] < 0) {
            omega_ = a;
            break;
        }
}

int GradedGroup::power(int a, int64_t k) const {
    int64_t o = ord_[a];
    k %= o;
    if (k < 0) k += o;
    int x = 0;
    for (int64_t i = 0; i < k; ++i) x = mul(x, a);
    return x;
}

int GradedGroup::exponent() const {
    int64_t e = 1;
    for (int o : ord_) e = std::lcm(e, static_cast<int64_t>(o));
    return static_cast<int>(e);
}

std::vector<int> GradedGroup::kernel() const {
    std::vector<int> k;
    for (int a = 0; a < n_; ++a)
        if (pi_[a] > 0) k.push_back(a);
    return k;
}

Subgroup make_subgroup(const GroupPtr& parent, std::vector<int> elements, const std::string& name) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    if (elements.empty() || elements[0] != 0) throw std::invalid_argument("subgroup must contain the identity");
    Subgroup s;
    s.parent = parent;
    s.to_parent = elements;
    s.from_parent.assign(parent->order(), -1);
    int n = static_cast<int>(elements.size());
    for (int i = 0; i < n; ++i) s.from_parent[elements[i]] = i;
    std::vector<int> table(static_cast<size_t>(n) * n), pi(n);
    for (int i = 0; i < n; ++i) {
        pi[i] = parent->pi(elements[i]);
        for (int j = 0; j < n; ++j) {
            int p = s.from_parent[parent->mul(elements[i], elements[j])];
            if (p < 0) throw std::invalid_argument("subset is not closed under multiplication");
            table[static_cast<size_t>(i) * n + j] = p;
        }
    }
    s.group = std::make_shared<GradedGroup>(n, std::move(table), std::move(pi), name);
    return s;
}

std::vector<int> generated_subgroup(const GradedGroup& g, const std::vector<int>& gens) {
    std::vector<char> in(g.order(), 0);
    std::vector<int> out{0};
    in[0] = 1;
    for (size_t i = 0; i < out.size(); ++i) {
        for (int s : gens) {
            int y = g.mul(out[i], s);
            if (!in[y]) {
                in[y] = 1;
                out.push_back(y);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> perm_compose(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> r(b.size());
    for (size_t i = 0; i < b.size(); ++i) r[i] = a[b[i]];
    return r;
}

std::vector<int> perm_inverse(const std::vector<int>& a) {
    std::vector<int> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<int>(i);
    return r;
}

std::vector<std::vector<int>> perm_cycles(const std::vector<int>& a) {
    std::vector<std::vector<int>> cyc;
    std::vector<char> seen(a.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (seen[i]) continue;
        std::vector<int> c;
        int x = static_cast<int>(i);
        while (!seen[x]) {
            seen[x] = 1;
            c.push_back(x);
            x = a[x];
        }
        cyc.push_back(c);
    }
    return cyc;
}

std::vector<std::vector<int>> all_permutations(int N) {
    std::vector<int> p(N);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

GroupPtr build_group(const std::vector<std::vector<int>>& generators, const std::vector<int>& pi_of_generators,
                     const std::string& name) {
    if (generators.size() != pi_of_generators.size())
        throw std::invalid_argument("generators and gradings differ in length");
    size_t d = 0;
    for (const auto& g : generators) d = std::max(d, g.size());
    std::vector<std::vector<int>> gens;
    for (const auto& g : generators) {
        std::vector<int> p(d);
        std::iota(p.begin(), p.end(), 0);
        std::vector<char> hit(d, 0);
        for (size_t i = 0; i < g.size(); ++i) {
            if (g[i] < 0 || static_cast<size_t>(g[i]) >= g.size() || hit[g[i]])
                throw std::invalid_argument("generator is not a permutation");
            hit[g[i]] = 1;
            p[i] = g[i];
        }
        gens.push_back(p);
    }
    std::vector<int> id(d);
    std::iota(id.begin(), id.end(), 0);
    std::map<std::vector<int>, int> index{{id, 0}};
    std::vector<std::vector<int>> elems{id};
    std::vector<int> pi{1};
    for (size_t i = 0; i < elems.size(); ++i) {
        for (size_t s = 0; s < gens.size(); ++s) {
            auto y = perm_compose(elems[i], gens[s]);
            if (index.count(y)) continue;
            check_order_bound(static_cast<int64_t>(elems.size()) + 1, "generated group");
            index[y] = static_cast<int>(elems.size());
            elems.push_back(y);
            pi.push_back(pi[i] * pi_of_generators[s]);
        }
    }
    int n = static_cast<int>(elems.size());
    std::vector<int> table(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) table[static_cast<size_t>(a) * n + b] = index.at(perm_compose(elems[a], elems[b]));
    return std::make_shared<GradedGroup>(n, std::move(table), std::move(pi), name);
}

GroupPtr cyclic_group(int n, bool graded) {
    if (n <= 0) throw std::invalid_argument("cyclic order must be positive");
    if (graded && n % 2 != 0) throw std::invalid_argument("graded cyclic group needs even order");
    check_order_bound(n, "cyclic group");
    std::vector<int> table(static_cast<size_t>(n) * n), pi(n);
    for (int a = 0; a < n; ++a) {
        pi[a] = (graded && a % 2 == 1) ? -1 : 1;
        for (int b = 0; b < n; ++b) table[static_cast<size_t>(a) * n + b] = (a + b) % n;
    }
    return std::make_shared<GradedGroup>(n, std::move(table), std::move(pi),
                                         (graded ? "cyclic_graded:" : "cyclic:") + std::to_string(n));
}

GroupPtr dihedral_group(int n) {
    if (n <= 0) throw std::invalid_argument("dihedral parameter must be positive");
    check_order_bound(2 * static_cast<int64_t>(n), "dihedral group");
    int N = 2 * n;
    // index k + n*e for r^k s^e
    std::vector<int> table(static_cast<size_t>(N) * N), pi(N);
    for (int x = 0; x < N; ++x) {
        int a = x % n, e = x / n;
        pi[x] = e ? -1 : 1;
        for (int y = 0; y < N; ++y) {
            int b = y % n, f = y / n;
            int k = mod(a + (e ? -b : b), n);
            table[static_cast<size_t>(x) * N + y] = k + n * ((e + f) % 2);
        }
    }
    return std::make_shared<GradedGroup>(N, std::move(table), std::move(pi), "dihedral:" + std::to_string(n));
}

GroupPtr symmetric_group(int n, bool sign_graded) {
    if (n <= 0) throw std::invalid_argument("symmetric degree must be positive");
    int64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    check_order_bound(f, "symmetric group");
    auto perms = all_permutations(n);
    std::map<std::vector<int>, int> index;
    for (size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<int>(i);
    int N = static_cast<int>(perms.size());
    std::vector<int> table(static_cast<size_t>(N) * N), pi(N);
    for (int a = 0; a < N; ++a) {
        int sgn = 1;
        for (const auto& c : perm_cycles(perms[a]))
            if (c.size() % 2 == 0) sgn = -sgn;
        pi[a] = sign_graded ? sgn : 1;
        for (int b = 0; b < N; ++b) table[static_cast<size_t>(a) * N + b] = index[perm_compose(perms[a], perms[b])];
    }
    return std::make_shared<GradedGroup>(N, std::move(table), std::move(pi),
                                         (sign_graded ? "symmetric_sign:" : "symmetric:") + std::to_string(n));
}

GroupPtr quaternion_group() {
    // index 2*u + s for s in {+,-}, u in {1,i,j,k}
    static const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int unit_sgn[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    std::vector<int> table(64), pi(8, 1);
    for (int x = 0; x < 8; ++x)
        for (int y = 0; y < 8; ++y) {
            int u = x / 2, v = y / 2;
            int s = (x % 2 + y % 2 + unit_sgn[u][v]) % 2;
            table[x * 8 + y] = 2 * unit_mul[u][v] + s;
        }
    return std::make_shared<GradedGroup>(8, std::move(table), std::move(pi), "quaternion:8");
}

GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b) {
    int na = a->order(), nb = b->order();
    check_order_bound(static_cast<int64_t>(na) * nb, "direct product");
    int N = na * nb;
    std::vector<int> table(static_cast<size_t>(N) * N), pi(N);
    for (int x = 0; x < N; ++x) {
        pi[x] = a->pi(x % na) * b->pi(x / na);
        for (int y = 0; y < N; ++y)
            table[static_cast<size_t>(x) * N + y] = a->mul(x % na, y % na) + na * b->mul(x / na, y / na);
    }
    return std::make_shared<GradedGroup>(N, std::move(table), std::move(pi),
                                         "product(" + a->name() + "," + b->name() + ")");
}

GroupPtr split_graded(const GroupPtr& a) {
    auto p = direct_product(a, cyclic_group(2, true));
    auto g = std::make_shared<GradedGroup>(*p);
    g->set_name("split(" + a->name() + ")");
    return g;
}

GroupPtr trivial_group() { return std::make_shared<GradedGroup>(1, std::vector<int>{0}, std::vector<int>{1}, "trivial"); }

namespace {

size_t matching_paren(const std::string& s, size_t open) {
    int depth = 0;
    for (size_t i = open; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        if (s[i] == ')' && --depth == 0) return i;
    }
    throw std::invalid_argument("unbalanced parentheses in group spec");
}

int parse_int(const std::string& s) {
    size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("bad integer in group spec: " + s);
    return v;
}

}  // namespace

GroupPtr ungraded(const GroupPtr& a) {
    return std::make_shared<GradedGroup>(a->order(), a->table(), std::vector<int>(a->order(), 1),
                                         "ungraded(" + a->name() + ")");
}

GroupPtr group_from_spec(const std::string& spec) {
    auto lp = spec.find('(');
    if (lp != std::string::npos) {
        std::string head = spec.substr(0, lp);
        size_t rp = matching_paren(spec, lp);
        if (rp != spec.size() - 1) throw std::invalid_argument("trailing characters in group spec");
        std::string inner = spec.substr(lp + 1, rp - lp - 1);
        if (head == "split") return split_graded(group_from_spec(inner));
        if (head == "ungraded") return ungraded(group_from_spec(inner));
        if (head == "product") {
            int depth = 0;
            for (size_t i = 0; i < inner.size(); ++i) {
                if (inner[i] == '(') ++depth;
                if (inner[i] == ')') --depth;
                if (inner[i] == ',' && depth == 0)
                    return direct_product(group_from_spec(inner.substr(0, i)), group_from_spec(inner.substr(i + 1)));
            }
            throw std::invalid_argument("product needs two factors");
        }
        throw std::invalid_argument("unknown group constructor: " + head);
    }
    auto c = spec.find(':');
    std::string fam = spec.substr(0, c);
    if (fam == "trivial") return trivial_group();
    if (c == std::string::npos) throw std::invalid_argument("group family needs a parameter: " + spec);
    int n = parse_int(spec.substr(c + 1));
    if (fam == "cyclic") return cyclic_group(n, false);
    if (fam == "cyclic_graded") return cyclic_group(n, true);
    if (fam == "dihedral") return dihedral_group(n);
    if (fam == "symmetric") return symmetric_group(n, false);
    if (fam == "symmetric_sign") return symmetric_group(n, true);
    if (fam == "quaternion") {
        if (n != 8) throw std::invalid_argument("only quaternion:8 is available");
        return quaternion_group();
    }
    throw std::invalid_argument("unknown group family: " + fam);
}

namespace {

ClassData orbit_classes(const GradedGroup& g, const std::vector<int>& domain, const std::vector<int>& actors,
                        bool real) {
    ClassData cd;
    cd.class_of.assign(g.order(), -1);
    std::vector<char> in_domain(g.order(), 0);
    for (int x : domain) in_domain[x] = 1;
    for (int x : domain) {
        if (cd.class_of[x] >= 0) continue;
        int c = cd.count();
        cd.reps.push_back(x);
        std::vector<int> mem;
        int sign = 1;
        for (int s : actors) {
            int y = real ? g.real_conj(s, x) : g.conj(s, x);
            if (y == x && g.odd(s)) sign = -1;
            if (cd.class_of[y] < 0) {
                cd.class_of[y] = c;
                mem.push_back(y);
            }
        }
        std::sort(mem.begin(), mem.end());
        cd.members.push_back(mem);
        cd.sign.push_back(sign);
    }
    return cd;
}

std::vector<int> all_elements(const GradedGroup& g) {
    std::vector<int> v(g.order());
    std::iota(v.begin(), v.end(), 0);
    return v;
}

}  // namespace

ClassData ordinary_classes(const GradedGroup& g) {
    auto all = all_elements(g);
    ClassData cd = orbit_classes(g, all, all, false);
    std::fill(cd.sign.begin(), cd.sign.end(), 1);
    return cd;
}

ClassData kernel_classes(const GradedGroup& g) {
    auto k = g.kernel();
    return orbit_classes(g, k, k, false);
}

ClassData real_classes(const GradedGroup& g) { return orbit_classes(g, g.kernel(), all_elements(g), true); }

std::vector<int> centralizer(const GradedGroup& g, int x) {
    std::vector<int> c;
    for (int s = 0; s < g.order(); ++s)
        if (g.commute(s, x)) c.push_back(s);
    return c;
}

std::vector<int> real_centralizer(const GradedGroup& g, int x) {
    std::vector<int> c;
    for (int s = 0; s < g.order(); ++s)
        if (g.real_conj(s, x) == x) c.push_back(s);
    return c;
}

std::vector<int> kernel_centralizer(const GradedGroup& g, int x) {
    std::vector<int> c;
    for (int s = 0; s < g.order(); ++s)
        if (!g.odd(s) && g.commute(s, x)) c.push_back(s);
    return c;
}

namespace {

std::vector<PairClass> pair_classes(const GradedGroup& g, bool real) {
    ClassData cd = real ? real_classes(g) : kernel_classes(g);
    std::vector<PairClass> out;
    for (int x : cd.reps) {
        auto stab = real ? real_centralizer(g, x) : kernel_centralizer(g, x);
        auto cent = kernel_centralizer(g, x);
        std::vector<char> seen(g.order(), 0);
        for (int h : cent) {
            if (seen[h]) continue;
            int cnt = 0;
            for (int s : stab) {
                int y = real ? g.real_conj(s, h) : g.conj(s, h);
                if (!seen[y]) {
                    seen[y] = 1;
                    ++cnt;
                }
            }
            out.push_back({x, h, cnt});
        }
    }
    return out;
}

}  // namespace

std::vector<PairClass> real_pair_classes(const GradedGroup& g) { return pair_classes(g, true); }
std::vector<PairClass> ordinary_pair_classes(const GradedGroup& g) { return pair_classes(g, false); }

int WreathGroup::index_of(const std::vector<int>& comp, const std::vector<int>& perm) const {
    int rank = static_cast<int>(std::lower_bound(all_perms.begin(), all_perms.end(), perm) - all_perms.begin());
    int64_t code = rank;
    int n = base->order();
    for (int i = 0; i < N; ++i) code = code * n + comp[i];
    return lookup[code];
}

std::shared_ptr<const WreathGroup> graded_wreath(const GroupPtr& base, int N) {
    auto w = std::make_shared<WreathGroup>();
    w->base = base;
    w->N = N;
    w->all_perms = all_permutations(N);
    int n = base->order();
    int64_t tuples = 1;
    for (int i = 0; i < N; ++i) tuples *= n;
    int64_t total = tuples * static_cast<int64_t>(w->all_perms.size());
    check_order_bound(total / (base->graded() ? (int64_t(1) << std::max(0, N - 1)) : 1), "graded wreath product");
    w->lookup.assign(total, -1);
    std::vector<int> pi;
    for (size_t p = 0; p < w->all_perms.size(); ++p) {
        std::vector<int> comp(N, 0);
        for (int64_t t = 0; t < tuples; ++t) {
            int64_t r = t;
            for (int i = N - 1; i >= 0; --i) {
                comp[i] = static_cast<int>(r % n);
                r /= n;
            }
            bool uniform = true;
            for (int i = 1; i < N; ++i)
                if (base->pi(comp[i]) != base->pi(comp[0])) uniform = false;
            if (!uniform) continue;
            w->lookup[static_cast<int64_t>(p) * tuples + t] = static_cast<int>(w->comps.size());
            w->comps.push_back(comp);
            w->perms.push_back(w->all_perms[p]);
            pi.push_back(N == 0 ? 1 : base->pi(comp[0]));
        }
    }
    int M = static_cast<int>(w->comps.size());
    std::vector<int> table(static_cast<size_t>(M) * M);
    for (int a = 0; a < M; ++a) {
        auto sinv = perm_inverse(w->perms[a]);
        for (int b = 0; b < M; ++b) {
            std::vector<int> c(N);
            for (int i = 0; i < N; ++i) c[i] = base->mul(w->comps[a][i], w->comps[b][sinv[i]]);
            table[static_cast<size_t>(a) * M + b] = w->index_of(c, perm_compose(w->perms[a], w->perms[b]));
        }
    }
    w->group = std::make_shared<GradedGroup>(M, std::move(table), std::move(pi),
                                             "wreath(" + base->name() + "," + std::to_string(N) + ")");
    return w;
}

void validate_gset(const GradedGroup& g, const GSet& x) {
    if (x.size < 0 || x.act.size() != static_cast<size_t>(g.order()) * x.size)
        throw std::invalid_argument("G-set action table has wrong shape");
    for (int v : x.act)
        if (v < 0 || v >= x.size) throw std::invalid_argument("G-set action value out of range");
    for (int p = 0; p < x.size; ++p)
        if (x.apply(0, p) != p) throw std::invalid_argument("identity does not act trivially");
    for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b)
            for (int p = 0; p < x.size; ++p)
                if (x.apply(a, x.apply(b, p)) != x.apply(g.mul(a, b), p))
                    throw std::invalid_argument("G-set table is not an action");
}

GSet point_gset(const GradedGroup& g) {
    GSet x;
    x.size = 1;
    x.act.assign(g.order(), 0);
    return x;
}

GSet trivial_cover(const GradedGroup& g, const GSet& x) {
    // elements of g x Z/2 are indexed a + |g|*e as in split_graded
    int n = g.order();
    GSet y;
    y.size = 2 * x.size;
    y.act.resize(static_cast<size_t>(2 * n) * y.size);
    for (int e = 0; e < 2; ++e)
        for (int a = 0; a < n; ++a)
            for (int c = 0; c < 2; ++c)
                for (int p = 0; p < x.size; ++p)
                    y.act[static_cast<size_t>(a + n * e) * y.size + p + x.size * c] =
                        x.apply(a, p) + x.size * ((c + e) % 2);
    return y;
}

std::vector<std::vector<int>> all_subgroups(const GradedGroup& g) {
    std::set<std::vector<int>> subs;
    std::vector<std::vector<int>> cyclic;
    for (int a = 0; a < g.order(); ++a) {
        auto c = generated_subgroup(g, {a});
        if (subs.insert(c).second) cyclic.push_back(c);
    }
    std::vector<std::vector<int>> frontier(subs.begin(), subs.end());
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& s : frontier)
            for (const auto& c : cyclic) {
                std::vector<int> gens = s;
                gens.insert(gens.end(), c.begin(), c.end());
                auto j = generated_subgroup(g, gens);
                if (subs.insert(j).second) next.push_back(j);
            }
        frontier = std::move(next);
    }
    std::vector<std::vector<int>> out(subs.begin(), subs.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

std::vector<std::vector<int>> homomorphisms_to_cyclic(const GradedGroup& g, int k) {
    // greedy generating set
    std::vector<int> gens;
    std::vector<int> span{0};
    for (int a = 0; a < g.order(); ++a) {
        if (std::binary_search(span.begin(), span.end(), a)) continue;
        gens.push_back(a);
        span = generated_subgroup(g, gens);
    }
    std::vector<std::vector<int>> out;
    std::vector<int> img(gens.size(), 0);
    while (true) {
        std::vector<int> val(g.order(), -1);
        val[0] = 0;
        std::vector<int> queue{0};
        bool ok = true;
        for (size_t i = 0; i < queue.size() && ok; ++i) {
            for (size_t s = 0; s < gens.size(); ++s) {
                int y = g.mul(queue[i], gens[s]);
                int v = (val[queue[i]] + img[s]) % k;
                if (val[y] < 0) {
                    val[y] = v;
                    queue.push_back(y);
                } else if (val[y] != v) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) {
            for (int a = 0; a < g.order() && ok; ++a)
                for (int b = 0; b < g.order(); ++b)
                    if (val[g.mul(a, b)] != (val[a] + val[b]) % k) {
                        ok = false;
                        break;
                    }
        }
        if (ok) out.push_back(val);
        size_t i = 0;
        while (i < img.size() && ++img[i] == k) img[i++] = 0;
        if (i == img.size()) break;
    }
    return out;
}

Quotient quotient_group(const GroupPtr& g, const std::vector<int>& normal, const std::string& name) {
    const GradedGroup& G = *g;
    if (!is_normal(G, normal)) throw std::invalid_argument("subgroup is not normal");
    for (int x : normal)
        if (G.odd(x)) throw std::invalid_argument("quotient by a subgroup with odd elements");
    Quotient Q;
    int n = G.order();
    Q.proj.assign(n, -1);
    for (int x = 0; x < n; ++x) {
        if (Q.proj[x] >= 0) continue;
        int q = static_cast<int>(Q.section.size());
        Q.section.push_back(x);
        for (int h : normal) Q.proj[G.mul(x, h)] = q;
    }
    int k = static_cast<int>(Q.section.size());
    std::vector<int> table(static_cast<size_t>(k) * k), pi(k);
    for (int a = 0; a < k; ++a) {
        pi[a] = G.pi(Q.section[a]);
        for (int b = 0; b < k; ++b) table[static_cast<size_t>(a) * k + b] = Q.proj[G.mul(Q.section[a], Q.section[b])];
    }
    Q.group = std::make_shared<GradedGroup>(k, std::move(table), std::move(pi), name.empty() ? G.name() + "/N" : name);
    return Q;
}

bool is_normal(const GradedGroup& g, const std::vector<int>& sub) {
    std::vector<char> in(g.order(), 0);
    for (int x : sub) in[x] = 1;
    for (int s = 0; s < g.order(); ++s)
        for (int x : sub)
            if (!in[g.conj(s, x)]) return false;
    return true;
}

}  // namespace qellr
