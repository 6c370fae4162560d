#include "mbs/szenes.hpp"

#include <functional>
#include <map>

#include "mbs/bernoulli.hpp"
#include "mbs/linalg.hpp"
#include "mbs/residue.hpp"

namespace mbs {

namespace {

// Lexicographic pair index of (i, j), 0 <= i < j < r.
int pair_index(int r, int i, int j) {
    int idx = 0;
    for (int a = 0; a < i; ++a) idx += r - 1 - a;
    return idx + (j - i - 1);
}

// Maps family-root-keyed exponents onto the core equation list.
// A core order: pairs lex.  BC core order: shorts, plus pairs, minus pairs.
std::vector<unsigned> exponents_on_core(const RootSystemSpec& sys, const ExponentMap& s) {
    int r = sys.rank;
    size_t nroots = static_cast<size_t>(sys.num_positive_roots());
    if (s.s.size() != nroots)
        throw std::invalid_argument("exponent list size mismatch for " + sys.name());
    int pairs = r * (r - 1) / 2;
    std::vector<unsigned> out;
    switch (sys.family) {
        case Family::A:
            return s.s;  // same lexicographic order
        case Family::B: {
            // Root order: e_i-e_j lex, e_i asc, e_i+e_j lex.
            out.assign(static_cast<size_t>(r + 2 * pairs), 0);
            size_t p = 0;
            for (int i = 0; i < r; ++i)
                for (int j = i + 1; j < r; ++j)
                    out[static_cast<size_t>(r + pairs + pair_index(r, i, j))] = s.s[p++];
            for (int i = 0; i < r; ++i) out[static_cast<size_t>(i)] = s.s[p++];
            for (int i = 0; i < r; ++i)
                for (int j = i + 1; j < r; ++j)
                    out[static_cast<size_t>(r + pair_index(r, i, j))] = s.s[p++];
            return out;
        }
        case Family::C: {
            // Root order: 2e_i asc, e_i+e_j lex, e_i-e_j lex — matches the
            // BC core order directly.
            return s.s;
        }
        case Family::D:
            throw std::logic_error("family D is decomposed before reaching the core");
    }
    throw std::logic_error("bad family");
}

struct Transform {
    Rational scale{1};
    Vec shift;     // in core ambient coordinates
    int drop = 0;  // 1-based original coordinate to delete first (0 = none)

    Vec apply(const Vec& v) const {
        Vec w = drop ? drop_coordinate(v, drop) : v;
        for (size_t i = 0; i < w.size(); ++i) w[i] = scale * w[i] + shift[i];
        return w;
    }
    Vec apply_direction(const Vec& d) const { return drop ? drop_coordinate(d, drop) : d; }
};

struct CoreJob {
    const CoreArrangement* core;
    std::vector<unsigned> s_eq;
    Rational prefactor;  // applied to every slot
    std::vector<Transform> slots;
};

std::vector<CoreJob> build_jobs(const RootSystemSpec& sys, Lattice lattice, const ExponentMap& s) {
    if (!lattice_matches_family(sys.family, lattice))
        throw std::invalid_argument("lattice " + lattice_name(lattice) +
                                    " is incompatible with family " + family_name(sys.family));
    int r = sys.rank;
    std::vector<CoreJob> jobs;
    switch (sys.family) {
        case Family::A: {
            CoreJob job;
            job.core = &a_core(r);
            job.s_eq = exponents_on_core(sys, s);
            auto reps = coset_representatives(sys, lattice);
            job.prefactor = Rational(1, static_cast<int>(reps.size()));
            for (auto& lam : reps) job.slots.push_back(Transform{Rational(1), std::move(lam), 0});
            jobs.push_back(std::move(job));
            return jobs;
        }
        case Family::C: {
            CoreJob job;
            job.core = &bc_core(r);
            job.s_eq = exponents_on_core(sys, s);
            job.prefactor = 1;
            job.slots.push_back(Transform{Rational(1), Vec(static_cast<size_t>(r), Rational(0)), 0});
            jobs.push_back(std::move(job));
            return jobs;
        }
        case Family::B: {
            CoreJob job;
            job.core = &bc_core(r);
            job.s_eq = exponents_on_core(sys, s);
            // c2 / 2^{r-1}, c2 = 2^{sum of pair exponents}.
            unsigned pair_total = 0;
            for (int i = r; i < static_cast<int>(job.s_eq.size()); ++i)
                pair_total += job.s_eq[static_cast<size_t>(i)];
            job.prefactor = pow_rational(Rational(2), static_cast<long>(pair_total)) /
                            pow_rational(Rational(2), r - 1);
            for (auto& lam : coset_representatives(sys, lattice)) {
                Vec half(lam.size());
                for (size_t i = 0; i < lam.size(); ++i) half[i] = lam[i] / 2;
                job.slots.push_back(Transform{Rational(1, 2), std::move(half), 0});
            }
            jobs.push_back(std::move(job));
            return jobs;
        }
        case Family::D: {
            auto dec = d_decomposition(sys, s);
            RootSystemSpec bsys = make_spec(Family::B, r);
            auto bjobs = build_jobs(bsys, Lattice::CorootB, dec.b_exponents);
            for (auto& j : bjobs) jobs.push_back(std::move(j));
            for (const auto& piece : dec.pieces) {
                CoreJob job;
                job.core = &bc_core(r - 1);
                job.s_eq = piece.s;
                job.prefactor = piece.c;
                job.slots.push_back(
                    Transform{Rational(1), Vec(static_cast<size_t>(r - 1), Rational(0)), piece.k});
                jobs.push_back(std::move(job));
            }
            return jobs;
        }
    }
    throw std::logic_error("bad family");
}

// Denominator of the sigma-term: t_i (from the 1/(1-e^{t_i}) rewrite) and the
// exponent-carrying equations in sigma coordinates.
std::vector<DenFactor> sigma_denominator(const CoreArrangement& core, const OrderedBasis& sigma,
                                         const std::vector<unsigned>& s_eq) {
    int r = core.rank;
    std::vector<DenFactor> den;
    for (int i = 0; i < r; ++i) {
        Vec t(static_cast<size_t>(r), Rational(0));
        t[static_cast<size_t>(i)] = 1;
        den.push_back({std::move(t), 1});
    }
    for (size_t q = 0; q < core.equations.size(); ++q) {
        if (!s_eq[q]) continue;
        den.push_back({c_coeffs(sigma, core.equations[q]), s_eq[q]});
    }
    return den;
}

// Limit value of the fractional part along direction delta.
Rational frac_limit(const Rational& c, const Rational& c_delta) {
    if (!is_integer(c)) return frac(c);
    return c_delta > 0 ? Rational(0) : Rational(1);
}

// The floor constant subtracted in the tope polynomial, one-sided.
Rational floor_limit(const Rational& c, const Rational& c_delta) {
    if (!is_integer(c)) return Rational(floor_int(c));
    return c_delta > 0 ? c : c - 1;
}

void check_generic(const CoreArrangement& core, size_t sigma_idx, const Vec& c_delta) {
    for (size_t i = 0; i < c_delta.size(); ++i)
        if (c_delta[i] == 0)
            throw GenericityFailure(
                "limit direction pairs to zero with dual functional " + std::to_string(i + 1) +
                " of diagonal basis " + std::to_string(sigma_idx + 1) +
                " (functional = " + format_vector(core.bases[sigma_idx].dual[i]) + ")");
}

Rational eval_jobs_numeric(const std::vector<CoreJob>& jobs, const Vec& v, const Vec& delta) {
    Rational total(0);
    for (const auto& job : jobs) {
        const auto& core = *job.core;
        int r = core.rank;
        unsigned S = 0;
        for (unsigned x : job.s_eq) S += x;
        Rational sign_r = (r % 2) ? Rational(-1) : Rational(1);
        std::vector<Vec> points;
        points.reserve(job.slots.size());
        for (const auto& t : job.slots) points.push_back(t.apply(v));

        std::map<Rational, std::vector<Rational>> ftab_cache;
        auto table_for = [&](const Rational& u) -> const std::vector<Rational>& {
            auto it = ftab_cache.find(u);
            if (it != ftab_cache.end()) return it->second;
            return ftab_cache.emplace(u, exp_todd_coeffs(u, S)).first->second;
        };

        for (size_t si = 0; si < core.bases.size(); ++si) {
            const auto& sigma = core.bases[si];
            Vec delta_core = job.slots[0].apply_direction(delta);
            Vec c_delta = c_coeffs(sigma, delta_core);
            check_generic(core, si, c_delta);
            auto den = sigma_denominator(core, sigma, job.s_eq);
            std::vector<std::vector<std::vector<Rational>>> ftabs(points.size());
            for (size_t b = 0; b < points.size(); ++b) {
                Vec c = c_coeffs(sigma, points[b]);
                ftabs[b].resize(static_cast<size_t>(r));
                for (int i = 0; i < r; ++i)
                    ftabs[b][static_cast<size_t>(i)] =
                        table_for(frac_limit(c[static_cast<size_t>(i)], c_delta[static_cast<size_t>(i)]));
            }
            auto res = residue_product<Rational>(r, den, ftabs);
            for (const auto& x : res) total += job.prefactor * sign_r * x;
        }
    }
    return total;
}

Vec base_direction(const RootSystemSpec& sys) {
    static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23};
    int n = sys.ambient_dim();
    Vec d(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) d[static_cast<size_t>(i)] = Rational(1, primes[i]);
    if (sys.family == Family::A) {
        Rational mean(0);
        for (const auto& x : d) mean += x;
        mean /= n;
        for (auto& x : d) x -= mean;
    }
    return d;
}

// Deterministic perturbation sequence: attempt k halves coordinate i a total
// of k*(i+1) times, changing all coordinate ratios.
Vec perturbed_direction(const RootSystemSpec& sys, int attempt) {
    Vec d = base_direction(sys);
    for (size_t i = 0; i < d.size(); ++i)
        d[i] /= pow_rational(Rational(2), static_cast<long>(attempt) * static_cast<long>(i + 1));
    if (sys.family == Family::A) {
        Rational mean(0);
        for (const auto& x : d) mean += x;
        mean /= static_cast<int>(d.size());
        for (auto& x : d) x -= mean;
    }
    return d;
}

// Runs fn with the supplied direction, or with the deterministic default
// sequence (retrying on genericity failures) when none is given.
template <class F>
auto with_direction(const RootSystemSpec& sys, const std::optional<Vec>& delta, F&& fn) {
    if (delta) {
        if (delta->size() != static_cast<size_t>(sys.ambient_dim()))
            throw std::invalid_argument("limit direction has wrong dimension");
        return fn(*delta);
    }
    for (int attempt = 0;; ++attempt) {
        try {
            return fn(perturbed_direction(sys, attempt));
        } catch (const GenericityFailure&) {
            if (attempt >= 64) throw;
        }
    }
}

void check_point_dim(const RootSystemSpec& sys, const Vec& v) {
    if (v.size() != static_cast<size_t>(sys.ambient_dim()))
        throw std::invalid_argument("point has wrong dimension for " + sys.name());
    if (sys.family == Family::A) {
        Rational sum(0);
        for (const auto& x : v) sum += x;
        if (sum != 0)
            throw std::invalid_argument("type A points must have coordinate sum zero");
    }
}

}  // namespace

std::vector<Rational> default_direction(const RootSystemSpec& sys) { return base_direction(sys); }

Rational bernoulli_limit(const RootSystemSpec& sys, Lattice lattice, const ExponentMap& s,
                         const std::vector<Rational>& v, const std::optional<Vec>& delta) {
    check_point_dim(sys, v);
    auto jobs = build_jobs(sys, lattice, s);
    return with_direction(sys, delta,
                          [&](const Vec& d) { return eval_jobs_numeric(jobs, v, d); });
}

Rational bernoulli_eval(const RootSystemSpec& sys, Lattice lattice, const ExponentMap& s,
                        const std::vector<Rational>& v) {
    check_point_dim(sys, v);
    std::string wall;
    if (!is_regular(sys, lattice, v, &wall))
        throw NonRegularPoint("point " + format_vector(v) + " is not regular: " + wall);
    return bernoulli_limit(sys, lattice, s, v);
}

Rational StepPolynomial::eval(const std::vector<Rational>& v) const {
    Rational total(0);
    for (const auto& term : terms) {
        Rational t = term.coeff;
        for (const auto& f : term.factors)
            t *= pow_rational(frac(f.scale * dot(f.form, v) + f.shift), static_cast<long>(f.exp));
        total += t;
    }
    return total;
}

namespace {

// Embeds a core-coordinate vector back into the original ambient coordinates
// (re-inserting the dropped coordinate as zero).
Vec embed_form(const Vec& f, int drop, int ambient) {
    if (!drop) return f;
    Vec out(static_cast<size_t>(ambient), Rational(0));
    size_t src = 0;
    for (int i = 0; i < ambient; ++i) {
        if (i == drop - 1) continue;
        out[static_cast<size_t>(i)] = f[src++];
    }
    return out;
}

// Coefficient tables of e^{u t} * t/(e^t - 1) for a symbolic or polynomial u.
std::vector<Polynomial> exp_todd_poly(const Polynomial& u, unsigned S) {
    auto todd = todd_coeffs(S);
    std::vector<Polynomial> upow(S + 1);
    upow[0] = Polynomial(Rational(1));
    Rational fact(1);
    for (unsigned a = 1; a <= S; ++a) upow[a] = upow[a - 1] * u;
    std::vector<Polynomial> f(S + 1);
    for (unsigned e = 0; e <= S; ++e) {
        Polynomial acc;
        Rational afact(1);
        for (unsigned a = 0; a <= e; ++a) {
            if (a) afact *= Rational(a);
            acc += upow[a] * (todd[e - a] / afact);
        }
        f[e] = std::move(acc);
    }
    (void)fact;
    return f;
}

}  // namespace

StepPolynomial step_polynomial(const RootSystemSpec& sys, Lattice lattice, const ExponentMap& s) {
    auto jobs = build_jobs(sys, lattice, s);
    int ambient = sys.ambient_dim();
    StepPolynomial out;
    out.ambient_dim = ambient;

    for (const auto& job : jobs) {
        const auto& core = *job.core;
        int r = core.rank;
        unsigned S = 0;
        for (unsigned x : job.s_eq) S += x;
        Rational sign_r = (r % 2) ? Rational(-1) : Rational(1);

        // Symbolic u-variables: one polynomial slot shared by all cosets.
        std::vector<std::vector<std::vector<Polynomial>>> ftabs(1);
        ftabs[0].resize(static_cast<size_t>(r));
        for (int i = 0; i < r; ++i)
            ftabs[0][static_cast<size_t>(i)] =
                exp_todd_poly(Polynomial::variable(static_cast<unsigned>(i)), S);

        for (size_t si = 0; si < core.bases.size(); ++si) {
            const auto& sigma = core.bases[si];
            auto den = sigma_denominator(core, sigma, job.s_eq);
            Polynomial res = residue_product<Polynomial>(r, den, ftabs)[0];

            for (const auto& t : job.slots) {
                for (const auto& [key, coeff] : res.terms()) {
                    StepTerm term;
                    term.coeff = coeff * job.prefactor * sign_r;
                    for (size_t i = 0; i < key.size(); ++i) {
                        if (!key[i]) continue;
                        StepFactor f;
                        f.form = embed_form(sigma.dual[i], t.drop, ambient);
                        f.scale = t.scale;
                        f.shift = dot(sigma.dual[i], t.shift);
                        f.exp = key[i];
                        term.factors.push_back(std::move(f));
                    }
                    out.terms.push_back(std::move(term));
                }
            }
        }
    }
    return out;
}

Polynomial tope_polynomial(const RootSystemSpec& sys, Lattice lattice, const ExponentMap& s,
                           const std::vector<Rational>& sample, const std::optional<Vec>& delta) {
    check_point_dim(sys, sample);
    std::string wall;
    if (!is_regular(sys, lattice, sample, &wall))
        throw NonRegularPoint("sample point " + format_vector(sample) + " is not regular: " + wall);
    auto jobs = build_jobs(sys, lattice, s);
    int ambient = sys.ambient_dim();

    return with_direction(sys, delta, [&](const Vec& d) {
        Polynomial total;
        for (const auto& job : jobs) {
            const auto& core = *job.core;
            int r = core.rank;
            unsigned S = 0;
            for (unsigned x : job.s_eq) S += x;
            Rational sign_r = (r % 2) ? Rational(-1) : Rational(1);

            for (size_t si = 0; si < core.bases.size(); ++si) {
                const auto& sigma = core.bases[si];
                Vec delta_core = job.slots[0].apply_direction(d);
                Vec c_delta = c_coeffs(sigma, delta_core);
                check_generic(core, si, c_delta);
                auto den = sigma_denominator(core, sigma, job.s_eq);

                std::vector<std::vector<std::vector<Polynomial>>> ftabs(job.slots.size());
                for (size_t b = 0; b < job.slots.size(); ++b) {
                    const auto& t = job.slots[b];
                    Vec c_sample = c_coeffs(sigma, t.apply(sample));
                    ftabs[b].resize(static_cast<size_t>(r));
                    for (int i = 0; i < r; ++i) {
                        // u_i(v) = c_i^sigma(transform(v)) - floor constant.
                        Polynomial u{dot(sigma.dual[static_cast<size_t>(i)], t.shift) -
                                     floor_limit(c_sample[static_cast<size_t>(i)],
                                                 c_delta[static_cast<size_t>(i)])};
                        Vec form = embed_form(sigma.dual[static_cast<size_t>(i)], t.drop, ambient);
                        for (int x = 0; x < ambient; ++x)
                            if (form[static_cast<size_t>(x)] != 0)
                                u += Polynomial::variable(static_cast<unsigned>(x)) *
                                     (t.scale * form[static_cast<size_t>(x)]);
                        ftabs[b][static_cast<size_t>(i)] = exp_todd_poly(u, S);
                    }
                }
                auto res = residue_product<Polynomial>(r, den, ftabs);
                for (const auto& p : res) total += p * (job.prefactor * sign_r);
            }
        }
        return total;
    });
}

}  // namespace mbs
