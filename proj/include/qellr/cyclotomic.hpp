#ifndef QELLR_CYCLOTOMIC_HPP
#define QELLR_CYCLOTOMIC_HPP

#include <string>
#include <vector>

#include "qellr/rational.hpp"

namespace qellr {

// Element of Q(zeta_m) in the power basis 1, z, ..., z^(phi(m)-1) modulo Phi_m.
class Cyc {
public:
    Cyc() : m_(1), c_{Rational(0)} {}
    Cyc(int64_t n) : m_(1), c_{Rational(n)} {}
    Cyc(const Rational& r) : m_(1), c_{r} {}

    // zeta_m^k
    static Cyc zeta(int m, int64_t k);
    // sum_k coeffs[k] zeta_m^k, coeffs of any length
    static Cyc from_powers(int m, const std::vector<Rational>& coeffs);

    int order() const { return m_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    Rational rational() const;

    Cyc lift(int M) const;
    Cyc conj() const;
    Cyc galois(int64_t j) const;

    friend Cyc operator+(const Cyc& a, const Cyc& b);
    friend Cyc operator-(const Cyc& a, const Cyc& b);
    friend Cyc operator*(const Cyc& a, const Cyc& b);
    Cyc operator-() const;
    Cyc operator*(const Rational& r) const;
    Cyc& operator+=(const Cyc& o) { return *this = *this + o; }
    Cyc& operator-=(const Cyc& o) { return *this = *this - o; }
    Cyc& operator*=(const Cyc& o) { return *this = *this * o; }
    friend bool operator==(const Cyc& a, const Cyc& b);
    friend bool operator!=(const Cyc& a, const Cyc& b) { return !(a == b); }

    // Smallest equivalent field.
    Cyc reduced() const;
    std::string str() const;

private:
    int m_;
    std::vector<Rational> c_;
};

// Euler phi and the cyclotomic polynomial (integer coefficients, low degree first).
int euler_phi(int m);
const std::vector<int64_t>& cyclotomic_poly(int m);

}  // namespace qellr

#endif
