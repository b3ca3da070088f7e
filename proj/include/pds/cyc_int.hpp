#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace pds {

/// Exact element of Z[zeta] for zeta a primitive p-th root of unity (p prime).
///
/// Values are stored as integer coefficient vectors of length p in the group
/// ring Z[x]/(x^p - 1); the ring of interest is the quotient by the ideal
/// generated by 1 + x + ... + x^{p-1}, so two vectors represent the same
/// number exactly when their coefficient-wise difference is constant. The
/// canonical representative has last coefficient zero. All comparisons and
/// queries go through that normal form, so character sums computed in any
/// order compare equal.
class CycInt {
  public:
    explicit CycInt(std::int64_t p) : p_(p), c_(std::size_t(p), 0) {
        if (p < 2) throw std::invalid_argument("CycInt: p must be a prime >= 2");
    }

    static CycInt integer(std::int64_t p, std::int64_t n) {
        CycInt z(p);
        z.c_[0] = n;
        return z;
    }

    /// zeta^t (t taken mod p).
    static CycInt root_power(std::int64_t p, std::int64_t t) {
        CycInt z(p);
        t %= p;
        if (t < 0) t += p;
        z.c_[std::size_t(t)] = 1;
        return z;
    }

    /// Adopt a raw length-p coefficient vector.
    static CycInt from_coeffs(std::int64_t p, std::vector<std::int64_t> coeffs) {
        if (std::int64_t(coeffs.size()) != p)
            throw std::invalid_argument("CycInt: coefficient vector must have length p");
        CycInt z(p);
        z.c_ = std::move(coeffs);
        return z;
    }

    std::int64_t p() const { return p_; }
    const std::vector<std::int64_t>& raw() const { return c_; }

    /// Add zeta^t in place; the workhorse of character-sum accumulation.
    void add_root_power(std::int64_t t) {
        t %= p_;
        if (t < 0) t += p_;
        ++c_[std::size_t(t)];
    }

    CycInt& operator+=(const CycInt& o) {
        check_same(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }

    CycInt& operator-=(const CycInt& o) {
        check_same(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }

    friend CycInt operator+(CycInt a, const CycInt& b) { return a += b; }
    friend CycInt operator-(CycInt a, const CycInt& b) { return a -= b; }

    CycInt operator-() const {
        CycInt r(p_);
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = -c_[i];
        return r;
    }

    /// Cyclic convolution: exact multiplication in Z[x]/(x^p - 1).
    friend CycInt operator*(const CycInt& a, const CycInt& b) {
        a.check_same(b);
        CycInt r(a.p_);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                std::size_t k = i + j;
                if (k >= std::size_t(a.p_)) k -= std::size_t(a.p_);
                r.c_[k] += a.c_[i] * b.c_[j];
            }
        }
        return r;
    }

    friend CycInt operator*(std::int64_t n, const CycInt& a) {
        CycInt r(a.p_);
        for (std::size_t i = 0; i < a.c_.size(); ++i) r.c_[i] = n * a.c_[i];
        return r;
    }

    /// Complex conjugation zeta -> zeta^{-1}: index reversal.
    CycInt conj() const {
        CycInt r(p_);
        r.c_[0] = c_[0];
        for (std::size_t i = 1; i < c_.size(); ++i) r.c_[std::size_t(p_) - i] = c_[i];
        return r;
    }

    /// Canonical representative: subtract the last coefficient from all
    /// (allowed because 1 + zeta + ... + zeta^{p-1} = 0).
    std::vector<std::int64_t> canonical() const {
        std::vector<std::int64_t> v(c_);
        const std::int64_t last = v.back();
        if (last != 0)
            for (auto& x : v) x -= last;
        return v;
    }

    bool is_rational_integer() const {
        const auto v = canonical();
        for (std::size_t i = 1; i < v.size(); ++i)
            if (v[i] != 0) return false;
        return true;
    }

    /// The value as an ordinary integer; throws when the value is irrational.
    std::int64_t as_integer() const {
        const auto v = canonical();
        for (std::size_t i = 1; i < v.size(); ++i)
            if (v[i] != 0)
                throw std::domain_error("CycInt::as_integer: value is not a rational integer");
        return v[0];
    }

    friend bool operator==(const CycInt& a, const CycInt& b) {
        a.check_same(b);
        return a.canonical() == b.canonical();
    }

    friend bool operator!=(const CycInt& a, const CycInt& b) { return !(a == b); }

    /// "12" for rational values, else "3 - 2*z^1 + ..." on the canonical form.
    std::string to_string() const {
        const auto v = canonical();
        bool rational = true;
        for (std::size_t i = 1; i < v.size(); ++i)
            if (v[i] != 0) rational = false;
        if (rational) return std::to_string(v[0]);
        std::string out;
        bool first = true;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] == 0) continue;
            const std::int64_t mag = v[i] < 0 ? -v[i] : v[i];
            if (first) {
                if (v[i] < 0) out += "-";
                first = false;
            } else {
                out += v[i] < 0 ? " - " : " + ";
            }
            if (i == 0) {
                out += std::to_string(mag);
            } else {
                if (mag != 1) out += std::to_string(mag) + "*";
                out += "z^" + std::to_string(i);
            }
        }
        return out.empty() ? "0" : out;
    }

  private:
    void check_same(const CycInt& o) const {
        if (p_ != o.p_) throw std::invalid_argument("CycInt: mixed root orders");
    }

    std::int64_t p_;
    std::vector<std::int64_t> c_;
};

}  // namespace pds
