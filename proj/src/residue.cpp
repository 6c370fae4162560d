#include "mbs/residue.hpp"

namespace mbs {

namespace {

// Coefficient of var^e in p, as a polynomial with that variable removed
// (exponent set to zero).
Polynomial coefficient_of(const Polynomial& p, unsigned var, unsigned e) {
    Polynomial out;
    for (const auto& [k, c] : p.terms()) {
        unsigned d = var < k.size() ? k[var] : 0;
        if (d != e) continue;
        Polynomial::Key nk = k;
        if (var < nk.size()) nk[var] = 0;
        out += Polynomial::monomial(c, nk);
    }
    return out;
}

unsigned degree_in(const Polynomial& p, unsigned var) {
    unsigned d = 0;
    for (const auto& [k, c] : p.terms())
        if (var < k.size()) d = std::max(d, k[var]);
    return d;
}

Rational res_stage(int j, const Polynomial& num, const std::vector<DenFactor>& den) {
    if (num.is_zero()) return Rational(0);
    if (j == 0) {
        if (!den.empty()) throw std::logic_error("iterated_residue_general: leftover denominator");
        Rational c(0);
        for (const auto& [k, coeff] : num.terms()) {
            bool constant = true;
            for (unsigned e : k)
                if (e) constant = false;
            if (constant) c = coeff;
            // Non-constant leftovers cannot occur: all variables have been
            // eliminated by the time j reaches 0.
        }
        return c;
    }
    unsigned var = static_cast<unsigned>(j - 1);

    unsigned pure_power = 0;
    Rational pure_scale(1);
    struct Mixed {
        Rational c;
        Vec residual;
        unsigned power;
    };
    std::vector<Mixed> mixed;
    std::vector<DenFactor> outer;
    for (const auto& d : den) {
        const Rational& cj = d.form[var];
        if (cj == 0) {
            outer.push_back(d);
            continue;
        }
        bool pure = true;
        for (size_t t = 0; t < d.form.size(); ++t)
            if (t != var && d.form[t] != 0) pure = false;
        if (pure) {
            pure_power += d.power;
            pure_scale *= pow_rational(cj, static_cast<long>(d.power));
        } else {
            Vec res = d.form;
            res[var] = 0;
            mixed.push_back({cj, std::move(res), d.power});
        }
    }
    if (pure_power == 0) return Rational(0);

    unsigned dmax = degree_in(num, var);
    Rational total(0);
    // Choose a numerator degree d and expansion orders n_i with
    // d + sum n_i = pure_power - 1.
    std::function<void(size_t, unsigned, const Rational&, std::vector<DenFactor>&)> rec =
        [&](size_t i, unsigned used, const Rational& scalar, std::vector<DenFactor>& newden) {
            if (used > pure_power - 1) return;
            if (i == mixed.size()) {
                unsigned d = pure_power - 1 - used;
                if (d > dmax) return;
                Polynomial slice = coefficient_of(num, var, d);
                if (slice.is_zero()) return;
                total += scalar * res_stage(j - 1, slice, newden);
                return;
            }
            const Mixed& m = mixed[i];
            Rational cn(1);
            for (unsigned nn = 0; used + nn <= pure_power - 1; ++nn) {
                Rational coeff = Rational(binomial(m.power - 1 + nn, nn)) * cn;
                newden.push_back({m.residual, m.power + nn});
                rec(i + 1, used + nn, scalar * coeff, newden);
                newden.pop_back();
                cn *= -m.c;
            }
        };
    std::vector<DenFactor> newden = outer;
    rec(0, 0, Rational(1) / pure_scale, newden);
    return total;
}

}  // namespace

Rational iterated_residue_general(int r, const Polynomial& num, std::vector<DenFactor> den) {
    for (const auto& d : den)
        if (d.form.size() != static_cast<size_t>(r))
            throw std::invalid_argument("denominator form arity mismatch");
    return res_stage(r, num, den);
}

}  // namespace mbs
