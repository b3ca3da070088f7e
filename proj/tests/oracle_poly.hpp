#pragma once
// Independent check model for finite-field tests: plain coefficient-vector
// arithmetic in F_p[x]/(f), no logarithm tables.  Deliberately simple and
// slow; everything is recomputed from the modulus.

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace oracle {

using Coords = std::vector<std::int64_t>;

class PolyField {
  public:
    PolyField(std::int64_t p, std::vector<std::int64_t> modulus)
        : p_(p), f_(std::move(modulus)), d_(int(f_.size()) - 1) {
        std::int64_t order = 1;
        for (int i = 0; i < d_; ++i) order *= p_;
        Coords cur(std::size_t(d_), 0);
        cur[0] = 1;
        for (std::int64_t j = 0; j + 1 < order; ++j) {
            power_.push_back(cur);
            cur = times_x(cur);
        }
        if (cur != power_.front()) throw std::runtime_error("oracle: x is not primitive");
    }

    std::int64_t p() const { return p_; }
    int degree() const { return d_; }
    std::int64_t mult_order() const { return std::int64_t(power_.size()); }

    const Coords& alpha_pow(std::int64_t j) const {
        return power_[std::size_t(((j % mult_order()) + mult_order()) % mult_order())];
    }

    Coords zero() const { return Coords(std::size_t(d_), 0); }

    Coords add(const Coords& a, const Coords& b) const {
        Coords c(static_cast<std::size_t>(d_));
        for (int i = 0; i < d_; ++i) c[std::size_t(i)] = (a[std::size_t(i)] + b[std::size_t(i)]) % p_;
        return c;
    }

    Coords mul(const Coords& a, const Coords& b) const {
        Coords wide(std::size_t(2 * d_ - 1), 0);
        for (int i = 0; i < d_; ++i)
            for (int j = 0; j < d_; ++j)
                wide[std::size_t(i + j)] =
                    (wide[std::size_t(i + j)] + a[std::size_t(i)] * b[std::size_t(j)]) % p_;
        // Reduce by f, eliminating the leading coefficients one at a time.
        for (int k = 2 * d_ - 2; k >= d_; --k) {
            const std::int64_t c = wide[std::size_t(k)];
            if (c == 0) continue;
            for (int i = 0; i <= d_; ++i) {
                const int pos = k - d_ + i;
                wide[std::size_t(pos)] =
                    ((wide[std::size_t(pos)] - c * f_[std::size_t(i)]) % p_ + p_) % p_;
            }
        }
        wide.resize(std::size_t(d_));
        return wide;
    }

    bool is_zero(const Coords& a) const {
        for (std::int64_t c : a)
            if (c != 0) return false;
        return true;
    }

    // Discrete log by table scan; -1 for the zero vector.
    std::int64_t dlog(const Coords& a) const {
        if (is_zero(a)) return -1;
        for (std::int64_t j = 0; j < mult_order(); ++j)
            if (power_[std::size_t(j)] == a) return j;
        throw std::runtime_error("oracle: vector not in the power table");
    }

  private:
    Coords times_x(Coords a) const {
        const std::int64_t lead = a[std::size_t(d_ - 1)];
        for (int i = d_ - 1; i > 0; --i) a[std::size_t(i)] = a[std::size_t(i - 1)];
        a[0] = 0;
        if (lead)
            for (int i = 0; i < d_; ++i)
                a[std::size_t(i)] =
                    ((a[std::size_t(i)] - lead * f_[std::size_t(i)]) % p_ + p_) % p_;
        return a;
    }

    std::int64_t p_;
    std::vector<std::int64_t> f_;
    int d_;
    std::vector<Coords> power_;
};

}  // namespace oracle
