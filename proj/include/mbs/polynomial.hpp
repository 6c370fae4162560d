#pragma once

#include <map>
#include <string>
#include <vector>

#include "mbs/rational.hpp"

namespace mbs {

// Sparse multivariate polynomial over Rational.  Variables are identified by
// index; exponent vectors of different lengths are compatible (shorter ones
// are implicitly zero-padded), so a default-constructed value is the zero
// polynomial in any number of variables.
class Polynomial {
  public:
    using Key = std::vector<unsigned>;

    Polynomial() = default;
    explicit Polynomial(const Rational& c) {
        if (c != 0) terms_[Key{}] = c;
    }

    static Polynomial monomial(const Rational& c, Key exps) {
        Polynomial p;
        if (c != 0) {
            trim(exps);
            p.terms_[std::move(exps)] = c;
        }
        return p;
    }
    static Polynomial variable(unsigned i) {
        Key k(i + 1, 0);
        k[i] = 1;
        return monomial(Rational(1), std::move(k));
    }

    bool is_zero() const { return terms_.empty(); }
    const std::map<Key, Rational>& terms() const { return terms_; }

    unsigned num_vars() const {
        size_t n = 0;
        for (const auto& [k, c] : terms_) n = std::max(n, k.size());
        return static_cast<unsigned>(n);
    }

    unsigned total_degree() const {
        unsigned d = 0;
        for (const auto& [k, c] : terms_) {
            unsigned s = 0;
            for (unsigned e : k) s += e;
            d = std::max(d, s);
        }
        return d;
    }

    Polynomial& operator+=(const Polynomial& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, -c);
        return *this;
    }
    Polynomial& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [k, c] : terms_) c *= s;
        return *this;
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
    friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
    friend Polynomial operator-(Polynomial a) {
        for (auto& [k, c] : a.terms_) c = -c;
        return a;
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial p;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) {
                Key k(std::max(ka.size(), kb.size()), 0);
                for (size_t i = 0; i < ka.size(); ++i) k[i] += ka[i];
                for (size_t i = 0; i < kb.size(); ++i) k[i] += kb[i];
                p.add_term(std::move(k), ca * cb);
            }
        return p;
    }
    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.terms_ == b.terms_;
    }

    Polynomial pow(unsigned n) const {
        Polynomial r(Rational(1)), base = *this;
        while (n) {
            if (n & 1) r *= base;
            base *= base;
            n >>= 1;
        }
        return r;
    }

    Rational eval(const std::vector<Rational>& x) const {
        Rational acc(0);
        for (const auto& [k, c] : terms_) {
            Rational t = c;
            for (size_t i = 0; i < k.size(); ++i)
                if (k[i]) t *= pow_rational(x.at(i), static_cast<long>(k[i]));
            acc += t;
        }
        return acc;
    }

    // Substitutes polynomials for the variables.
    Polynomial subst(const std::vector<Polynomial>& x) const {
        Polynomial acc;
        for (const auto& [k, c] : terms_) {
            Polynomial t{c};
            for (size_t i = 0; i < k.size(); ++i)
                if (k[i]) t *= x.at(i).pow(k[i]);
            acc += t;
        }
        return acc;
    }

    std::string to_string(const std::string& var = "x") const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [k, c] : terms_) {
            if (!out.empty()) out += " + ";
            out += format_rational(c);
            for (size_t i = 0; i < k.size(); ++i) {
                if (!k[i]) continue;
                out += "*" + var + std::to_string(i + 1);
                if (k[i] > 1) out += "^" + std::to_string(k[i]);
            }
        }
        return out;
    }

  private:
    static void trim(Key& k) {
        while (!k.empty() && k.back() == 0) k.pop_back();
    }
    void add_term(Key k, const Rational& c) {
        if (c == 0) return;
        trim(k);
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(std::move(k), c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    std::map<Key, Rational> terms_;
};

}  // namespace mbs
