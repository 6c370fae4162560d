#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "mbs/bernoulli.hpp"
#include "mbs/linalg.hpp"
#include "mbs/polynomial.hpp"
#include "mbs/rational.hpp"

namespace mbs {

// A denominator factor 1/<form, t>^power, with the linear form written in the
// sigma-coordinates t_1..t_r.
struct DenFactor {
    Vec form;
    unsigned power;
};

// General iterated residue Res_{t_1}(...(Res_{t_r} num/den)...): expands each
// factor that mixes t_j with outer variables as a geometric series around
// t_j = 0 and extracts the t_j^{-1} coefficient stage by stage.  Intended for
// tests and ad-hoc expressions; the production path is residue_product below.
Rational iterated_residue_general(int r, const Polynomial& num, std::vector<DenFactor> den);

namespace detail {

struct CanonForm {
    Vec form;         // primitive integer vector, first nonzero coefficient > 0
    Rational scale;   // original = scale * form
};

inline CanonForm canonicalize_form(const Vec& f) {
    Integer lcm(1), gcd(0);
    for (const auto& c : f) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
    Vec w(f.size());
    for (size_t i = 0; i < f.size(); ++i) {
        w[i] = f[i] * Rational(lcm);
        mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), w[i].get_num_mpz_t());
    }
    if (gcd == 0) throw std::invalid_argument("zero linear form in denominator");
    int sign = 1;
    for (const auto& c : w) {
        if (c == 0) continue;
        if (c < 0) sign = -1;
        break;
    }
    Rational g = Rational(gcd) * sign;
    for (auto& c : w) c /= g;
    return {std::move(w), g / Rational(lcm)};
}

}  // namespace detail

// Batched product-form iterated residue.
//
// Computes, for each slot b,
//     Res^sigma [ (prod_j f_j^{(b)}(t_j)) / (prod_k <form_k, t>^{p_k}) ]
// where f_j^{(b)} is given by its coefficient table ftabs[b][j].  The
// combinatorial elimination (stages j = r down to 1) is shared across slots;
// only the scalar updates are per-slot.  This is what makes coset sums and
// Weyl translates cheap: they differ only in the univariate factors.
//
// C must support: default construction (zero), +=, *(C, C), *=(Rational).
template <class C>
std::vector<C> residue_product(int r, const std::vector<DenFactor>& denominator,
                               const std::vector<std::vector<std::vector<C>>>& ftabs) {
    const size_t slots = ftabs.size();
    std::vector<C> result(slots);

    // Intern canonical forms.
    std::map<Vec, int> form_ids;
    std::vector<Vec> forms;
    auto intern = [&](const Vec& v) {
        auto it = form_ids.find(v);
        if (it != form_ids.end()) return it->second;
        int id = static_cast<int>(forms.size());
        forms.push_back(v);
        form_ids.emplace(v, id);
        return id;
    };

    using DenKey = std::vector<std::pair<int, unsigned>>;  // sorted (form id, power)
    std::map<DenKey, std::vector<C>> state;

    {
        DenKey key;
        Rational scale(1);
        std::map<int, unsigned> merged;
        for (const auto& d : denominator) {
            if (d.power == 0) continue;
            auto cf = detail::canonicalize_form(d.form);
            scale *= pow_rational(cf.scale, -static_cast<long>(d.power));
            merged[intern(cf.form)] += d.power;
        }
        for (const auto& [id, p] : merged) key.emplace_back(id, p);
        std::vector<C> vals(slots);
        for (size_t b = 0; b < slots; ++b) {
            vals[b] = C(Rational(1));
            vals[b] *= scale;
        }
        state.emplace(std::move(key), std::move(vals));
    }

    for (int j = r - 1; j >= 0; --j) {  // eliminate variable t_{j+1} (0-based j)
        std::map<DenKey, std::vector<C>> next;
        for (auto& [den, vals] : state) {
            unsigned pure_power = 0;
            struct Mixed {
                Rational c;        // coefficient of t_j in the canonical form
                int residual_id;   // interned canonical form with t_j zeroed
                Rational rscale;   // residual = rscale * canonical form
                unsigned power;
            };
            std::vector<Mixed> mixed;
            DenKey outer;
            for (const auto& [id, p] : den) {
                const Vec& f = forms[static_cast<size_t>(id)];
                if (f[static_cast<size_t>(j)] == 0) {
                    outer.emplace_back(id, p);
                    continue;
                }
                bool pure = true;
                for (size_t t = 0; t < f.size(); ++t)
                    if (static_cast<int>(t) != j && f[t] != 0) {
                        pure = false;
                        break;
                    }
                if (pure) {
                    // Canonical pure form is exactly t_j (coefficient 1).
                    pure_power += p;
                } else {
                    Vec res = f;
                    Rational c = res[static_cast<size_t>(j)];
                    res[static_cast<size_t>(j)] = 0;
                    auto cf = detail::canonicalize_form(res);
                    mixed.push_back({c, intern(cf.form), cf.scale, p});
                }
            }
            if (pure_power == 0) continue;  // no pole at t_j = 0

            // Enumerate expansion orders n_i for the mixed factors with
            // sum <= pure_power - 1; the pick from f_j is the remainder.
            std::vector<unsigned> alloc(mixed.size(), 0);
            std::function<void(size_t, unsigned, const Rational&, DenKey)> rec =
                [&](size_t i, unsigned used, const Rational& scalar, DenKey newden) {
                    if (i == mixed.size()) {
                        unsigned e = pure_power - 1 - used;
                        DenKey key = newden;
                        std::sort(key.begin(), key.end());
                        // Merge duplicate ids.
                        DenKey merged;
                        for (const auto& [id, p] : key) {
                            if (!merged.empty() && merged.back().first == id)
                                merged.back().second += p;
                            else
                                merged.emplace_back(id, p);
                        }
                        auto& slot_vals = next[merged];
                        if (slot_vals.empty()) slot_vals.resize(slots);
                        for (size_t b = 0; b < slots; ++b) {
                            if (e >= ftabs[b][static_cast<size_t>(j)].size()) continue;
                            C add = vals[b] * ftabs[b][static_cast<size_t>(j)][e];
                            add *= scalar;
                            slot_vals[b] += add;
                        }
                        return;
                    }
                    const Mixed& m = mixed[i];
                    // 1/(c t_j + residual)^p = sum_n C(p-1+n, n) (-c)^n t_j^n
                    //                          / residual^{p+n}
                    // cn accumulates (-c)^nn / rscale^{p+nn}.
                    Rational cn = pow_rational(m.rscale, -static_cast<long>(m.power));
                    for (unsigned nn = 0; used + nn <= pure_power - 1; ++nn) {
                        Rational sc = Rational(binomial(m.power - 1 + nn, nn)) * cn;
                        DenKey nd = newden;
                        nd.emplace_back(m.residual_id, m.power + nn);
                        rec(i + 1, used + nn, scalar * sc, std::move(nd));
                        cn *= -m.c / m.rscale;
                    }
                };
            rec(0, 0, Rational(1), outer);
        }
        state = std::move(next);
    }

    for (auto& [den, vals] : state) {
        if (!den.empty()) throw std::logic_error("residue_product: leftover denominator");
        for (size_t b = 0; b < slots; ++b) result[b] += vals[b];
    }
    return result;
}

}  // namespace mbs
