#pragma once

#include "mbs/polynomial.hpp"

namespace mbs {

// Multivariate polynomial truncated at a fixed total degree.  Products drop
// every monomial above the cap, which keeps the general residue engine's
// numerators finite.
class TruncSeries {
  public:
    explicit TruncSeries(unsigned cap) : cap_(cap) {}
    TruncSeries(Polynomial p, unsigned cap) : cap_(cap), poly_(truncate(std::move(p), cap)) {}

    unsigned cap() const { return cap_; }
    const Polynomial& poly() const { return poly_; }
    bool is_zero() const { return poly_.is_zero(); }

    TruncSeries& operator+=(const TruncSeries& o) {
        poly_ += o.poly_;
        poly_ = truncate(std::move(poly_), cap_);
        return *this;
    }
    TruncSeries& operator*=(const TruncSeries& o) {
        poly_ = truncate(poly_ * o.poly_, cap_);
        return *this;
    }
    TruncSeries& operator*=(const Rational& s) {
        poly_ *= s;
        return *this;
    }
    friend TruncSeries operator*(TruncSeries a, const TruncSeries& b) { return a *= b; }
    friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }

    static Polynomial truncate(Polynomial p, unsigned cap) {
        Polynomial out;
        for (const auto& [k, c] : p.terms()) {
            unsigned d = 0;
            for (unsigned e : k) d += e;
            if (d <= cap) out += Polynomial::monomial(c, k);
        }
        return out;
    }

  private:
    unsigned cap_;
    Polynomial poly_;
};

}  // namespace mbs
