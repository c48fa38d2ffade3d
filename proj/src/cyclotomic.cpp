#include "qellr/cyclotomic.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>

namespace qellr {

int euler_phi(int m) {
    int r = m;
    int n = m;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            r -= r / p;
        }
    }
    if (n > 1) r -= r / n;
    return r;
}

const std::vector<int64_t>& cyclotomic_poly(int m) {
    static std::recursive_mutex mu;
    static std::map<int, std::unique_ptr<std::vector<int64_t>>> cache;
    std::lock_guard<std::recursive_mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return *it->second;
    // x^m - 1 divided by Phi_d for proper divisors d
    std::vector<int64_t> p(m + 1, 0);
    p[0] = -1;
    p[m] = 1;
    for (int d = 1; d < m; ++d) {
        if (m % d != 0) continue;
        std::vector<int64_t> q;
        {
            std::vector<int64_t> phid = cyclotomic_poly(d);
            int dp = static_cast<int>(p.size()) - 1;
            int dd = static_cast<int>(phid.size()) - 1;
            q.assign(dp - dd + 1, 0);
            std::vector<int64_t> r = p;
            for (int k = dp - dd; k >= 0; --k) {
                int64_t c = r[k + dd];
                q[k] = c;
                for (int j = 0; j <= dd; ++j) r[k + j] -= c * phid[j];
            }
        }
        p = q;
    }
    auto ins = cache.emplace(m, std::make_unique<std::vector<int64_t>>(p));
    return *ins.first->second;
}

namespace {

std::vector<Rational> reduce_poly(int m, std::vector<Rational> p) {
    const auto& phi = cyclotomic_poly(m);
    int d = static_cast<int>(phi.size()) - 1;
    for (int k = static_cast<int>(p.size()) - 1; k >= d; --k) {
        if (p[k].is_zero()) continue;
        Rational c = p[k];
        for (int j = 0; j <= d; ++j) {
            if (phi[j] != 0) p[k - d + j] -= c * Rational(phi[j]);
        }
    }
    p.resize(d);
    if (p.empty()) p.push_back(Rational(0));
    return p;
}

}  // namespace

Cyc Cyc::from_powers(int m, const std::vector<Rational>& coeffs) {
    std::vector<Rational> p(std::max<size_t>(m, 1), Rational(0));
    for (size_t k = 0; k < coeffs.size(); ++k) p[k % m] += coeffs[k];
    Cyc r;
    r.m_ = m;
    r.c_ = reduce_poly(m, p);
    return r;
}

Cyc Cyc::zeta(int m, int64_t k) {
    std::vector<Rational> p(m, Rational(0));
    p[mod(k, m)] = Rational(1);
    return from_powers(m, p);
}

bool Cyc::is_zero() const {
    for (const auto& x : c_)
        if (!x.is_zero()) return false;
    return true;
}

bool Cyc::is_rational() const {
    for (size_t k = 1; k < c_.size(); ++k)
        if (!c_[k].is_zero()) return false;
    return true;
}

Rational Cyc::rational() const {
    if (!is_rational()) throw std::domain_error("cyclotomic value is not rational");
    return c_[0];
}

Cyc Cyc::lift(int M) const {
    if (M == m_) return *this;
    if (M % m_ != 0) throw std::invalid_argument("cyclotomic lift to non-multiple order");
    int s = M / m_;
    std::vector<Rational> p(M, Rational(0));
    for (size_t k = 0; k < c_.size(); ++k) p[k * s] = c_[k];
    return from_powers(M, p);
}

Cyc Cyc::galois(int64_t j) const {
    std::vector<Rational> p(m_, Rational(0));
    for (size_t k = 0; k < c_.size(); ++k) p[mod(static_cast<int64_t>(k) * j, m_)] += c_[k];
    return from_powers(m_, p);
}

Cyc Cyc::conj() const { return galois(-1); }

Cyc operator+(const Cyc& a, const Cyc& b) {
    int M = static_cast<int>(lcm64(a.m_, b.m_));
    Cyc x = a.lift(M), y = b.lift(M);
    for (size_t k = 0; k < x.c_.size(); ++k) x.c_[k] += y.c_[k];
    return x;
}

Cyc operator-(const Cyc& a, const Cyc& b) { return a + (-b); }

Cyc Cyc::operator-() const {
    Cyc r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

Cyc Cyc::operator*(const Rational& r) const {
    Cyc x = *this;
    for (auto& v : x.c_) v *= r;
    return x;
}

Cyc operator*(const Cyc& a, const Cyc& b) {
    if (a.m_ == 1) return b * a.c_[0];
    if (b.m_ == 1) return a * b.c_[0];
    int M = static_cast<int>(lcm64(a.m_, b.m_));
    Cyc x = a.lift(M), y = b.lift(M);
    std::vector<Rational> p(x.c_.size() + y.c_.size(), Rational(0));
    for (size_t i = 0; i < x.c_.size(); ++i) {
        if (x.c_[i].is_zero()) continue;
        for (size_t j = 0; j < y.c_.size(); ++j) {
            if (!y.c_[j].is_zero()) p[i + j] += x.c_[i] * y.c_[j];
        }
    }
    Cyc r;
    r.m_ = M;
    r.c_ = reduce_poly(M, p);
    return r;
}

bool operator==(const Cyc& a, const Cyc& b) {
    int M = static_cast<int>(lcm64(a.m_, b.m_));
    return a.lift(M).c_ == b.lift(M).c_;
}

Cyc Cyc::reduced() const {
    for (int d = 1; d <= m_; ++d) {
        if (m_ % d != 0) continue;
        // solve this = sum_k a_k zeta_d^k in the basis of Q(zeta_m)
        int phid = euler_phi(d);
        std::vector<Rational> coeffs(phid, Rational(0));
        std::vector<std::vector<Rational>> cols;
        for (int k = 0; k < phid; ++k) cols.push_back(Cyc::zeta(d, k).lift(m_).c_);
        size_t rows = c_.size();
        std::vector<std::vector<Rational>> A(rows, std::vector<Rational>(phid + 1));
        for (size_t r = 0; r < rows; ++r) {
            for (int k = 0; k < phid; ++k) A[r][k] = cols[k][r];
            A[r][phid] = c_[r];
        }
        size_t pr = 0;
        std::vector<int> pc;
        for (int k = 0; k < phid && pr < rows; ++k) {
            size_t piv = pr;
            while (piv < rows && A[piv][k].is_zero()) ++piv;
            if (piv == rows) continue;
            std::swap(A[piv], A[pr]);
            Rational inv = Rational(1) / A[pr][k];
            for (auto& v : A[pr]) v *= inv;
            for (size_t r = 0; r < rows; ++r) {
                if (r == pr || A[r][k].is_zero()) continue;
                Rational f = A[r][k];
                for (int j = 0; j <= phid; ++j) A[r][j] -= f * A[pr][j];
            }
            pc.push_back(k);
            ++pr;
        }
        bool consistent = true;
        for (size_t r = pr; r < rows; ++r)
            if (!A[r][phid].is_zero()) consistent = false;
        if (!consistent) continue;
        for (size_t r = 0; r < pc.size(); ++r) coeffs[pc[r]] = A[r][phid];
        Cyc cand;
        cand.m_ = d;
        cand.c_ = coeffs;
        return cand;
    }
    return *this;
}

std::string Cyc::str() const {
    std::string s;
    bool first = true;
    for (size_t k = 0; k < c_.size(); ++k) {
        if (c_[k].is_zero()) continue;
        if (!first) s += " + ";
        first = false;
        s += c_[k].str();
        if (k > 0) s += "*z" + std::to_string(m_) + "^" + std::to_string(k);
    }
    return first ? "0" : s;
}

}  // namespace qellr
