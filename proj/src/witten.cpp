#include "mbs/witten.hpp"

#include <sstream>

#include "mbs/bernoulli.hpp"
#include "mbs/szenes.hpp"

namespace mbs {

namespace {

// Table of c_vol parameters per family: q, f, p, |Z|, |W|.
struct VolParams {
    Rational q, f;
    long p;
    Rational z, w;
};

VolParams vol_params(const RootSystemSpec& sys) {
    const long r = sys.rank;
    switch (sys.family) {
        case Family::A:
            return {1, r + 1, 0, r + 1, Rational(factorial(static_cast<unsigned>(r + 1)))};
        case Family::B:
            return {2, 2, r, 2,
                    Rational(factorial(static_cast<unsigned>(r))) * pow_rational(2, r)};
        case Family::C:
            return {pow_rational(2, r - 1), 2, r * (r - 1), 2,
                    Rational(factorial(static_cast<unsigned>(r))) * pow_rational(2, r)};
        case Family::D:
            return {1, 4, 0, 4,
                    Rational(factorial(static_cast<unsigned>(r))) * pow_rational(2, r - 1)};
    }
    throw std::logic_error("vol_params: bad family");
}

// Simple roots as linear forms on the ambient e-coordinates.
std::vector<std::vector<Rational>> simple_root_forms(const RootSystemSpec& sys) {
    const int r = sys.rank;
    const int n = sys.ambient_dim();
    std::vector<std::vector<Rational>> out;
    auto form = [&](std::initializer_list<std::pair<int, int>> entries) {
        std::vector<Rational> f(n, 0);
        for (auto [idx, c] : entries) f[static_cast<size_t>(idx)] = c;
        return f;
    };
    for (int i = 0; i + 1 < (sys.family == Family::A ? n : r); ++i)
        out.push_back(form({{i, 1}, {i + 1, -1}}));
    switch (sys.family) {
        case Family::A:
            break;
        case Family::B:
            out.push_back(form({{r - 1, 1}}));
            break;
        case Family::C:
            out.push_back(form({{r - 1, 2}}));
            break;
        case Family::D:
            out.push_back(form({{r - 2, 1}, {r - 1, 1}}));
            break;
    }
    return out;
}

std::vector<Rational> highest_root_form(const RootSystemSpec& sys) {
    const int n = sys.ambient_dim();
    std::vector<Rational> f(n, 0);
    switch (sys.family) {
        case Family::A:
            f[0] = 1;
            f[static_cast<size_t>(n - 1)] = -1;
            break;
        case Family::B:
        case Family::D:
            f[0] = 1;
            f[1] = 1;
            break;
        case Family::C:
            f[0] = 2;
            break;
    }
    return f;
}

std::string form_to_string(const std::vector<Rational>& f) {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) continue;
        if (!first) os << (f[i] > 0 ? "+" : "");
        os << format_rational(f[i]) << "*a" << (i + 1);
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

void check_marking(const RootSystemSpec& sys, const std::vector<Rational>& a) {
    if (static_cast<int>(a.size()) != sys.ambient_dim())
        throw InvalidMarking("marking has " + std::to_string(a.size()) + " coordinates, " +
                             sys.name() + " needs " + std::to_string(sys.ambient_dim()));
    std::string why;
    if (!in_alcove(sys, a, &why))
        throw InvalidMarking("marking outside the open fundamental alcove: " + why);
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    Rational s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

std::vector<std::vector<Rational>> simple_coroots(const RootSystemSpec& sys) {
    const int r = sys.rank;
    const int n = sys.ambient_dim();
    std::vector<std::vector<Rational>> out;
    auto vec = [&](std::initializer_list<std::pair<int, int>> entries) {
        std::vector<Rational> v(n, 0);
        for (auto [idx, c] : entries) v[static_cast<size_t>(idx)] = c;
        return v;
    };
    for (int i = 0; i + 1 < (sys.family == Family::A ? n : r); ++i)
        out.push_back(vec({{i, 1}, {i + 1, -1}}));
    switch (sys.family) {
        case Family::A:
            break;
        case Family::B:
            out.push_back(vec({{r - 1, 2}}));  // H_{e_r} = 2 e^r
            break;
        case Family::C:
            out.push_back(vec({{r - 1, 1}}));  // H_{2 e_r} = e^r
            break;
        case Family::D:
            out.push_back(vec({{r - 2, 1}, {r - 1, 1}}));
            break;
    }
    return out;
}

std::vector<Rational> point_from_coroot_coeffs(const RootSystemSpec& sys,
                                               const std::vector<Rational>& coeffs) {
    auto cr = simple_coroots(sys);
    if (coeffs.size() != cr.size())
        throw InvalidMarking("expected " + std::to_string(cr.size()) +
                             " simple-coroot coefficients, got " + std::to_string(coeffs.size()));
    std::vector<Rational> a(static_cast<size_t>(sys.ambient_dim()), 0);
    for (size_t i = 0; i < cr.size(); ++i)
        for (size_t x = 0; x < a.size(); ++x) a[x] += coeffs[i] * cr[i][x];
    return a;
}

bool in_alcove(const RootSystemSpec& sys, const std::vector<Rational>& a, std::string* why) {
    if (static_cast<int>(a.size()) != sys.ambient_dim()) {
        if (why) *why = "wrong dimension";
        return false;
    }
    for (const auto& f : simple_root_forms(sys)) {
        if (dot(f, a) <= 0) {
            if (why) *why = form_to_string(f) + " > 0 fails";
            return false;
        }
    }
    auto theta = highest_root_form(sys);
    if (dot(theta, a) >= 1) {
        if (why) *why = form_to_string(theta) + " < 1 fails";
        return false;
    }
    return true;
}

Rational witten_series(const RootSystemSpec& sys, const MarkingSet& markings) {
    const int g = markings.genus;
    const int s = markings.count();
    if (g < 0) throw InvalidMarking("negative genus");
    if (s == 0 && g < 2) throw InvalidMarking("no markings requires genus >= 2");
    const unsigned m = static_cast<unsigned>(2 * g - 2 + s);
    ExponentMap exps = uniform_exponents(sys, m);
    const Lattice lat = default_lattice(sys.family);
    const size_t n = static_cast<size_t>(sys.ambient_dim());

    if (s == 0) {
        std::vector<Rational> zero(n, 0);
        return bernoulli_limit(sys, lat, exps, zero);
    }
    for (const auto& a : markings.points) check_marking(sys, a);

    const auto& W = weyl_elements(sys);
    std::vector<size_t> idx(static_cast<size_t>(s), 0);
    Rational total = 0;
    while (true) {
        std::vector<Rational> v(n, 0);
        int sign = 1;
        for (int j = 0; j < s; ++j) {
            const WeylElement& w = W[idx[static_cast<size_t>(j)]];
            auto wa = weyl_apply(w, markings.points[static_cast<size_t>(j)]);
            for (size_t x = 0; x < n; ++x) v[x] += wa[x];
            sign *= w.sign;
        }
        total += Rational(sign) * bernoulli_limit(sys, lat, exps, v);
        int j = s - 1;
        while (j >= 0 && ++idx[static_cast<size_t>(j)] == W.size()) {
            idx[static_cast<size_t>(j)] = 0;
            --j;
        }
        if (j < 0) break;
    }
    return total;
}

Rational c_vol(const RootSystemSpec& sys, int genus, int num_markings) {
    const VolParams P = vol_params(sys);
    const long g = genus;
    const long s = num_markings;
    Rational c = pow_rational(2, P.p * (2 * g - 2 + s));
    c *= pow_rational(P.f * P.q, g - 1);
    c *= P.z;
    if (((g - 1) * sys.num_positive_roots()) % 2 != 0) c = -c;
    c /= P.w;
    return c;
}

Rational volume(const RootSystemSpec& sys, const MarkingSet& markings) {
    return c_vol(sys, markings.genus, markings.count()) * witten_series(sys, markings);
}

Rational volume_one_marking(const RootSystemSpec& sys, int genus, const std::vector<Rational>& a) {
    if (genus < 0) throw InvalidMarking("negative genus");
    check_marking(sys, a);
    const VolParams P = vol_params(sys);
    const long g = genus;
    Rational c = pow_rational(P.f * P.q, g - 1) * P.z * pow_rational(2, P.p * (2 * g - 1));
    if (((g - 1) * sys.num_positive_roots()) % 2 != 0) c = -c;
    ExponentMap exps = uniform_exponents(sys, static_cast<unsigned>(2 * g - 1));
    return c * bernoulli_limit(sys, default_lattice(sys.family), exps, a);
}

PiValue zeta_even(const RootSystemSpec& sys, const ExponentMap& s) {
    const auto& roots = positive_roots(sys);
    if (s.s.size() != roots.size())
        throw std::invalid_argument("exponent list does not match the positive roots");
    // Root length classes: for B the short roots are e_i, for C the long
    // roots are 2e_i; A and D have a single class.
    auto is_special_length = [&](const std::string& label) {
        return label.find('+') == std::string::npos && label.find('-') == std::string::npos;
    };
    Rational cls[2] = {-1, -1};
    for (size_t i = 0; i < roots.size(); ++i) {
        if (s.s[i] == 0 || s.s[i] % 2 != 0)
            throw std::invalid_argument("zeta exponents must be positive even integers (root " +
                                        roots[i].root_label + " has " + std::to_string(s.s[i]) +
                                        ")");
        int k = is_special_length(roots[i].root_label) ? 1 : 0;
        if (cls[k] == -1)
            cls[k] = s.s[i];
        else if (cls[k] != Rational(s.s[i]))
            throw std::invalid_argument(
                "zeta exponents must be constant on each root length class");
    }
    const unsigned S = s.total();
    std::vector<Rational> zero(static_cast<size_t>(sys.ambient_dim()), 0);
    Rational b = bernoulli_limit(sys, default_lattice(sys.family), s, zero);
    Rational coeff = pow_rational(2, S) * b / vol_params(sys).w;
    if ((S / 2) % 2 != 0) coeff = -coeff;
    return {coeff, S};
}

PiValue mzv(int depth, unsigned two_k) {
    if (depth < 1) throw std::invalid_argument("mzv depth must be >= 1");
    if (two_k == 0 || two_k % 2 != 0)
        throw std::invalid_argument("mzv weight must be a positive even integer");
    auto sys = make_spec(Family::C, depth);
    // Weight 2k on the long roots 2e_i (equations e^i), 0 on e_i +/- e_j.
    ExponentMap s{std::vector<unsigned>(positive_roots(sys).size(), 0)};
    for (int i = 0; i < depth; ++i) s.s[static_cast<size_t>(i)] = two_k;
    std::vector<Rational> zero(static_cast<size_t>(depth), 0);
    Rational b = bernoulli_limit(sys, Lattice::CorootC, s, zero);
    const unsigned k = two_k / 2;
    const unsigned S = two_k * static_cast<unsigned>(depth);
    Rational coeff = pow_rational(2, S) * b / vol_params(sys).w;
    if ((k * static_cast<unsigned>(depth)) % 2 != 0) coeff = -coeff;
    return {coeff, S};
}

Rational verlinde_su2(const Rational& t, long ell, int genus) {
    if (!(t > 0 && 2 * t < 1)) throw std::invalid_argument("marking parameter needs 0 < t < 1/2");
    if (ell <= 0) throw std::invalid_argument("level must be positive");
    if (genus < 1) throw std::invalid_argument("genus must be >= 1");
    Rational tl = t * Rational(ell);
    if (!is_integer(tl) || tl <= 0)
        throw std::invalid_argument("t*ell must be a positive integer");

    const unsigned deg = static_cast<unsigned>(2 * genus - 1);
    // c(n): Taylor coefficients of e^{x(g-2t)} (x/(e^x-1))^{2g-1}.
    std::vector<Rational> todd = todd_coeffs(deg);
    std::vector<Rational> pw(deg + 1, 0);
    pw[0] = 1;
    for (unsigned rep = 0; rep < deg; ++rep) {
        std::vector<Rational> nx(deg + 1, 0);
        for (unsigned i = 0; i <= deg; ++i)
            for (unsigned j = 0; i + j <= deg; ++j) nx[i + j] += pw[i] * todd[j];
        pw = std::move(nx);
    }
    std::vector<Rational> ex = exp_coeffs(Rational(genus) - 2 * t, deg);
    std::vector<Rational> c(deg + 1, 0);
    for (unsigned i = 0; i <= deg; ++i)
        for (unsigned j = 0; i + j <= deg; ++j) c[i + j] += pw[i] * ex[j];

    Rational sum = 0;
    for (unsigned n = 0; n <= deg; ++n) {
        unsigned p = deg - n;
        sum += c[n] * pow_rational(Rational(ell) + 2, p) * bernoulli_poly(p, t) /
               Rational(factorial(p));
    }
    Rational v = pow_rational(2, genus - 1) * pow_rational(Rational(ell) + 2, genus - 1) * 2 * sum;
    if (genus % 2 != 0) v = -v;
    return v;
}

}  // namespace mbs
