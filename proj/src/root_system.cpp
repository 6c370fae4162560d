#include "mbs/root_system.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "mbs/linalg.hpp"

namespace mbs {

namespace {

Vec unit(int n, int i) {
    Vec v(static_cast<size_t>(n), Rational(0));
    v[static_cast<size_t>(i)] = 1;
    return v;
}

// e^i - e^j (0-based), n ambient coordinates.
Vec diff_vec(int n, int i, int j) {
    Vec v(static_cast<size_t>(n), Rational(0));
    v[static_cast<size_t>(i)] = 1;
    v[static_cast<size_t>(j)] = -1;
    return v;
}

Vec sum_vec(int n, int i, int j) {
    Vec v(static_cast<size_t>(n), Rational(0));
    v[static_cast<size_t>(i)] = 1;
    v[static_cast<size_t>(j)] += 1;
    return v;
}

std::string e_label(int i) { return "e" + std::to_string(i + 1); }

// Coordinates of a sum-zero integer vector in the simple-coroot basis
// e^i - e^{i+1}: the partial sums.
Vec a_lattice_coords(const Vec& x) {
    Vec c(x.size() - 1);
    Rational acc(0);
    for (size_t i = 0; i + 1 < x.size(); ++i) {
        acc += x[i];
        c[i] = acc;
    }
    return c;
}

void finish_basis(OrderedBasis& b, Family fam) {
    b.dual = dual_functionals(b.alphas);
    Mat coords;
    for (const auto& a : b.alphas)
        coords.push_back(fam == Family::A ? a_lattice_coords(a) : a);
    Rational det = determinant(coords);
    b.unimodular = (det == 1 || det == -1);
}

}  // namespace

std::string family_name(Family f) {
    switch (f) {
        case Family::A: return "A";
        case Family::B: return "B";
        case Family::C: return "C";
        case Family::D: return "D";
    }
    return "?";
}

Family parse_family(const std::string& s) {
    if (s == "A" || s == "a") return Family::A;
    if (s == "B" || s == "b") return Family::B;
    if (s == "C" || s == "c") return Family::C;
    if (s == "D" || s == "d") return Family::D;
    throw std::invalid_argument("unknown family: " + s);
}

std::string lattice_name(Lattice l) {
    switch (l) {
        case Lattice::CorootA: return "coroot-A";
        case Lattice::CoweightA: return "coweight-A";
        case Lattice::CorootB: return "coroot-B";
        case Lattice::CorootC: return "coroot-C";
        case Lattice::CorootD: return "coroot-D";
    }
    return "?";
}

Lattice parse_lattice(const std::string& s) {
    if (s == "coroot-A") return Lattice::CorootA;
    if (s == "coweight-A") return Lattice::CoweightA;
    if (s == "coroot-B") return Lattice::CorootB;
    if (s == "coroot-C") return Lattice::CorootC;
    if (s == "coroot-D") return Lattice::CorootD;
    throw std::invalid_argument("unknown lattice: " + s);
}

Lattice default_lattice(Family f) {
    switch (f) {
        case Family::A: return Lattice::CorootA;
        case Family::B: return Lattice::CorootB;
        case Family::C: return Lattice::CorootC;
        case Family::D: return Lattice::CorootD;
    }
    throw std::logic_error("bad family");
}

bool lattice_matches_family(Family f, Lattice l) {
    switch (l) {
        case Lattice::CorootA:
        case Lattice::CoweightA: return f == Family::A;
        case Lattice::CorootB: return f == Family::B;
        case Lattice::CorootC: return f == Family::C;
        case Lattice::CorootD: return f == Family::D;
    }
    return false;
}

int RootSystemSpec::num_positive_roots() const {
    switch (family) {
        case Family::A: return rank * (rank + 1) / 2;
        case Family::B:
        case Family::C: return rank * rank;
        case Family::D: return rank * (rank - 1);
    }
    return 0;
}

RootSystemSpec make_spec(Family f, int rank) {
    int lo = 1, hi = 8;
    if (f == Family::B) lo = 2;
    if (f == Family::D) lo = 3;
    if (rank < lo || rank > hi)
        throw std::invalid_argument("invalid rank " + std::to_string(rank) + " for family " +
                                    family_name(f));
    return RootSystemSpec{f, rank};
}

const std::vector<Root>& positive_roots(const RootSystemSpec& sys) {
    static std::map<std::pair<int, int>, std::vector<Root>> cache;
    auto key = std::make_pair(static_cast<int>(sys.family), sys.rank);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::vector<Root> roots;
    int r = sys.rank, n = sys.ambient_dim();
    auto pair_label = [](const std::string& a, const std::string& b, char op) {
        return a + op + b;
    };
    switch (sys.family) {
        case Family::A:
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    roots.push_back({pair_label(e_label(i), e_label(j), '-'),
                                     pair_label(e_label(i), e_label(j), '-'), diff_vec(n, i, j)});
            break;
        case Family::B:
            // Canonical order: e_i-e_j lex, short roots e_i ascending, e_i+e_j lex.
            for (int i = 0; i < r; ++i)
                for (int j = i + 1; j < r; ++j)
                    roots.push_back({pair_label(e_label(i), e_label(j), '-'),
                                     pair_label(e_label(i), e_label(j), '-'), diff_vec(n, i, j)});
            for (int i = 0; i < r; ++i) {
                Vec c = unit(n, i);
                c[static_cast<size_t>(i)] = 2;
                roots.push_back({e_label(i), "2" + e_label(i), c});
            }
            for (int i = 0; i < r; ++i)
                for (int j = i + 1; j < r; ++j)
                    roots.push_back({pair_label(e_label(i), e_label(j), '+'),
                                     pair_label(e_label(i), e_label(j), '+'), sum_vec(n, i, j)});
            break;
        case Family::C:
            // Canonical order: long roots 2e_i ascending, e_i+e_j lex, e_i-e_j lex.
            for (int i = 0; i < r; ++i)
                roots.push_back({"2" + e_label(i), e_label(i), unit(n, i)});
            for (int i = 0; i < r; ++i)
                for (int j = i + 1; j < r; ++j)
                    roots.push_back({pair_label(e_label(i), e_label(j), '+'),
                                     pair_label(e_label(i), e_label(j), '+'), sum_vec(n, i, j)});
            for (int i = 0; i < r; ++i)
                for (int j = i + 1; j < r; ++j)
                    roots.push_back({pair_label(e_label(i), e_label(j), '-'),
                                     pair_label(e_label(i), e_label(j), '-'), diff_vec(n, i, j)});
            break;
        case Family::D:
            for (int i = 0; i < r; ++i)
                for (int j = i + 1; j < r; ++j)
                    roots.push_back({pair_label(e_label(i), e_label(j), '-'),
                                     pair_label(e_label(i), e_label(j), '-'), diff_vec(n, i, j)});
            for (int i = 0; i < r; ++i)
                for (int j = i + 1; j < r; ++j)
                    roots.push_back({pair_label(e_label(i), e_label(j), '+'),
                                     pair_label(e_label(i), e_label(j), '+'), sum_vec(n, i, j)});
            break;
    }
    return cache.emplace(key, std::move(roots)).first->second;
}

int parse_root_label(const RootSystemSpec& sys, const std::string& label) {
    const auto& roots = positive_roots(sys);
    for (size_t i = 0; i < roots.size(); ++i)
        if (roots[i].root_label == label || roots[i].coroot_label == label)
            return static_cast<int>(i);
    throw std::invalid_argument("unknown root label '" + label + "' for " + sys.name());
}

ExponentMap uniform_exponents(const RootSystemSpec& sys, unsigned m) {
    return ExponentMap{std::vector<unsigned>(static_cast<size_t>(sys.num_positive_roots()), m)};
}

std::vector<Rational> c_coeffs(const OrderedBasis& sigma, const std::vector<Rational>& v) {
    std::vector<Rational> c(sigma.dual.size());
    for (size_t i = 0; i < sigma.dual.size(); ++i) c[i] = dot(sigma.dual[i], v);
    return c;
}

const CoreArrangement& a_core(int rank) {
    static std::map<int, CoreArrangement> cache;
    auto it = cache.find(rank);
    if (it != cache.end()) return it->second;

    CoreArrangement core;
    core.rank = rank;
    core.ambient = rank + 1;
    int n = rank + 1;
    std::map<std::pair<int, int>, int> eq_index;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            eq_index[{i, j}] = static_cast<int>(core.equations.size());
            core.equations.push_back(diff_vec(n, i, j));
            core.equation_labels.push_back(e_label(i) + "-" + e_label(j));
        }

    // Diagonal set D_W: permutations w of the first r letters (fixing the
    // last), sigma_w = [e^{w(1)}-e^{w(2)}, ..., e^{w(r)}-e^{n}].
    std::vector<int> perm(static_cast<size_t>(rank));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        OrderedBasis b;
        for (int i = 0; i < rank; ++i) {
            int a = perm[static_cast<size_t>(i)];
            int c = (i + 1 < rank) ? perm[static_cast<size_t>(i + 1)] : n - 1;
            b.alphas.push_back(diff_vec(n, a, c));
            b.equation_indices.push_back(a < c ? eq_index[{a, c}] : eq_index[{c, a}]);
        }
        finish_basis(b, Family::A);
        core.bases.push_back(std::move(b));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return cache.emplace(rank, std::move(core)).first->second;
}

const CoreArrangement& bc_core(int rank) {
    static std::map<int, CoreArrangement> cache;
    auto it = cache.find(rank);
    if (it != cache.end()) return it->second;

    CoreArrangement core;
    core.rank = rank;
    core.ambient = rank;
    int r = rank;
    // Short equations e^1..e^r, then e^i+e^j lex, then e^i-e^j lex.
    std::map<std::pair<int, int>, int> plus_idx, minus_idx;
    for (int i = 0; i < r; ++i) {
        core.equations.push_back(unit(r, i));
        core.equation_labels.push_back(e_label(i));
    }
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
            plus_idx[{i, j}] = static_cast<int>(core.equations.size());
            core.equations.push_back(sum_vec(r, i, j));
            core.equation_labels.push_back(e_label(i) + "+" + e_label(j));
        }
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
            minus_idx[{i, j}] = static_cast<int>(core.equations.size());
            core.equations.push_back(diff_vec(r, i, j));
            core.equation_labels.push_back(e_label(i) + "-" + e_label(j));
        }

    // Flag bases: alpha_i in {e^i} u {e^i +- e^j, j < i}; (2r-1)!! of them.
    std::vector<OrderedBasis> partial(1);
    for (int i = 0; i < r; ++i) {
        std::vector<OrderedBasis> next;
        for (const auto& b : partial) {
            {
                OrderedBasis nb = b;
                nb.alphas.push_back(unit(r, i));
                nb.equation_indices.push_back(i);
                next.push_back(std::move(nb));
            }
            for (int j = 0; j < i; ++j) {
                OrderedBasis nb = b;
                nb.alphas.push_back(sum_vec(r, j, i));
                nb.equation_indices.push_back(plus_idx[{j, i}]);
                next.push_back(std::move(nb));
                OrderedBasis nb2 = b;
                nb2.alphas.push_back(diff_vec(r, i, j));  // e^i - e^j, j < i
                nb2.equation_indices.push_back(minus_idx[{j, i}]);
                next.push_back(std::move(nb2));
            }
        }
        partial = std::move(next);
    }
    for (auto& b : partial) {
        finish_basis(b, Family::C);
        core.bases.push_back(std::move(b));
    }
    return cache.emplace(rank, std::move(core)).first->second;
}

const std::vector<OrderedBasis>& flag_bases(const RootSystemSpec& sys) {
    switch (sys.family) {
        case Family::A: return a_core(sys.rank).bases;
        case Family::B:
        case Family::C: return bc_core(sys.rank).bases;
        case Family::D:
            throw std::invalid_argument(
                "family D has no flag diagonal set; use d_decomposition");
    }
    throw std::logic_error("bad family");
}

const std::vector<WeylElement>& weyl_elements(const RootSystemSpec& sys) {
    static std::map<std::pair<int, int>, std::vector<WeylElement>> cache;
    auto key = std::make_pair(static_cast<int>(sys.family), sys.rank);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    int n = sys.ambient_dim();
    std::vector<WeylElement> out;
    std::vector<int> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    auto parity = [](const std::vector<int>& p) {
        int inv = 0;
        for (size_t i = 0; i < p.size(); ++i)
            for (size_t j = i + 1; j < p.size(); ++j)
                if (p[i] > p[j]) ++inv;
        return (inv % 2 == 0) ? 1 : -1;
    };
    std::sort(perm.begin(), perm.end());
    do {
        int ps = parity(perm);
        if (sys.family == Family::A) {
            out.push_back({perm, std::vector<int>(static_cast<size_t>(n), 1), ps});
            continue;
        }
        unsigned limit = 1u << n;
        for (unsigned mask = 0; mask < limit; ++mask) {
            int flips = __builtin_popcount(mask);
            if (sys.family == Family::D && (flips % 2)) continue;
            std::vector<int> signs(static_cast<size_t>(n), 1);
            for (int i = 0; i < n; ++i)
                if (mask & (1u << i)) signs[static_cast<size_t>(i)] = -1;
            out.push_back({perm, signs, ps * ((flips % 2) ? -1 : 1)});
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return cache.emplace(key, std::move(out)).first->second;
}

std::vector<Rational> weyl_apply(const WeylElement& w, const std::vector<Rational>& v) {
    std::vector<Rational> out(v.size());
    for (size_t i = 0; i < v.size(); ++i)
        out[static_cast<size_t>(w.perm[i])] = Rational(w.signs[i]) * v[i];
    return out;
}

std::vector<std::vector<Rational>> dual_lattice_basis(const RootSystemSpec& sys, Lattice l) {
    int r = sys.rank, n = sys.ambient_dim();
    Mat basis;
    switch (l) {
        case Lattice::CorootA:  // Gamma = weight lattice P_A
            for (int i = 0; i < r; ++i) {
                Vec w(static_cast<size_t>(n), Rational(-(i + 1), n));
                for (int k = 0; k <= i; ++k) w[static_cast<size_t>(k)] += 1;
                basis.push_back(std::move(w));
            }
            break;
        case Lattice::CoweightA:  // Gamma = root lattice Q_A
            for (int i = 0; i < r; ++i) basis.push_back(diff_vec(n, i, i + 1));
            break;
        case Lattice::CorootC:  // Gamma = P_C = Z^r
            for (int i = 0; i < r; ++i) basis.push_back(unit(n, i));
            break;
        case Lattice::CorootB:
        case Lattice::CorootD:  // Gamma = P_B = P_D
            for (int i = 0; i + 1 < r; ++i) basis.push_back(unit(n, i));
            {
                Vec h(static_cast<size_t>(n), Rational(1, 2));
                basis.push_back(std::move(h));
            }
            break;
    }
    return basis;
}

std::vector<std::vector<Rational>> lattice_basis(const RootSystemSpec& sys, Lattice l) {
    int r = sys.rank, n = sys.ambient_dim();
    Mat basis;
    switch (l) {
        case Lattice::CorootA:
            for (int i = 0; i < r; ++i) basis.push_back(diff_vec(n, i, i + 1));
            break;
        case Lattice::CoweightA:
            for (int i = 0; i < r; ++i) {
                Vec w(static_cast<size_t>(n), Rational(-(i + 1), n));
                for (int k = 0; k <= i; ++k) w[static_cast<size_t>(k)] += 1;
                basis.push_back(std::move(w));
            }
            break;
        case Lattice::CorootC:
            for (int i = 0; i < r; ++i) basis.push_back(unit(n, i));
            break;
        case Lattice::CorootB:
        case Lattice::CorootD:  // even-coordinate-sum integer vectors
            for (int i = 0; i + 1 < r; ++i) basis.push_back(diff_vec(n, i, i + 1));
            basis.push_back(sum_vec(n, r - 2, r - 1));
            break;
    }
    return basis;
}

namespace {

const std::vector<Vec>& arrangement_equations(const RootSystemSpec& sys) {
    switch (sys.family) {
        case Family::A: return a_core(sys.rank).equations;
        case Family::B:
        case Family::C: return bc_core(sys.rank).equations;
        case Family::D: {
            static std::map<int, std::vector<Vec>> cache;
            auto it = cache.find(sys.rank);
            if (it != cache.end()) return it->second;
            std::vector<Vec> eqs;
            int r = sys.rank;
            for (int i = 0; i < r; ++i)
                for (int j = i + 1; j < r; ++j) {
                    eqs.push_back(diff_vec(r, i, j));
                    eqs.push_back(sum_vec(r, i, j));
                }
            return cache.emplace(sys.rank, std::move(eqs)).first->second;
        }
    }
    throw std::logic_error("bad family");
}

}  // namespace

const std::vector<std::vector<Rational>>& wall_normals(const RootSystemSpec& sys, Lattice l) {
    static std::map<std::tuple<int, int, int>, std::vector<Vec>> cache;
    auto key = std::make_tuple(static_cast<int>(sys.family), sys.rank, static_cast<int>(l));
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    const auto& eqs = arrangement_equations(sys);
    Mat gamma_basis = dual_lattice_basis(sys, l);
    int r = sys.rank;
    std::set<Vec> seen;  // primitive coordinate vectors in the Gamma basis
    std::vector<Vec> normals;

    std::vector<int> pick(static_cast<size_t>(r - 1));
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == r - 1) {
            Mat rows;
            for (int idx : pick) rows.push_back(eqs[static_cast<size_t>(idx)]);
            if (rank_of(rows) != static_cast<size_t>(r - 1)) return;
            if (sys.family == Family::A)
                rows.push_back(Vec(eqs[0].size(), Rational(1)));  // stay in sum-zero U
            auto ker = kernel_vector(rows);
            if (!ker) return;
            auto coords = coordinates_in_basis(gamma_basis, *ker);
            if (!coords) throw std::logic_error("wall normal outside Gamma span");
            // Scale to a primitive integer coordinate vector, first nonzero > 0.
            Integer lcm(1), gcd(0);
            for (const auto& c : *coords)
                mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
            Vec prim(coords->size());
            for (size_t i = 0; i < coords->size(); ++i) {
                Rational x = (*coords)[i] * Rational(lcm);
                mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), x.get_num_mpz_t());
                prim[i] = x;
            }
            for (auto& x : prim) x /= Rational(gcd);
            for (const auto& x : prim) {
                if (x == 0) continue;
                if (x < 0)
                    for (auto& y : prim) y = -y;
                break;
            }
            if (!seen.insert(prim).second) return;
            Vec normal(eqs[0].size(), Rational(0));
            for (size_t i = 0; i < prim.size(); ++i)
                for (size_t j = 0; j < normal.size(); ++j)
                    normal[j] += prim[i] * gamma_basis[i][j];
            normals.push_back(std::move(normal));
            return;
        }
        for (int i = start; i <= static_cast<int>(eqs.size()) - (r - 1 - depth); ++i) {
            pick[static_cast<size_t>(depth)] = i;
            rec(i + 1, depth + 1);
        }
    };
    if (r == 1) {
        // Rank 1: the single admissible wall is the origin's lattice of
        // translates; normal = primitive generator of Gamma.
        normals.push_back(gamma_basis[0]);
    } else {
        rec(0, 0);
    }
    return cache.emplace(key, std::move(normals)).first->second;
}

bool is_regular(const RootSystemSpec& sys, Lattice l, const std::vector<Rational>& v,
                std::string* wall_out) {
    for (const auto& g : wall_normals(sys, l)) {
        Rational p = dot(g, v);
        if (is_integer(p)) {
            if (wall_out)
                *wall_out = "<gamma, v> = " + format_rational(p) +
                            " for wall normal gamma = " + format_vector(g);
            return false;
        }
    }
    return true;
}

std::vector<std::vector<Rational>> coset_representatives(const RootSystemSpec& sys, Lattice l) {
    int r = sys.rank, n = sys.ambient_dim();
    std::vector<Vec> reps;
    if (l == Lattice::CorootA) {
        reps.push_back(Vec(static_cast<size_t>(n), Rational(0)));
        return reps;
    }
    if (l == Lattice::CoweightA) {
        // lambda_j = (j/(r+1)) xi, xi = sum_j (e^j - e^{r+1}).
        Vec xi(static_cast<size_t>(n), Rational(1));
        xi[static_cast<size_t>(n - 1)] = Rational(-r);
        for (int j = 0; j <= r; ++j) {
            Vec lam(static_cast<size_t>(n));
            for (int k = 0; k < n; ++k)
                lam[static_cast<size_t>(k)] = Rational(j, r + 1) * xi[static_cast<size_t>(k)];
            reps.push_back(std::move(lam));
        }
        return reps;
    }
    if (l == Lattice::CorootB || l == Lattice::CorootD) {
        // F: sums of even-size subsets of {e^1..e^r}; 2^{r-1} elements.
        for (unsigned mask = 0; mask < (1u << r); ++mask) {
            if (__builtin_popcount(mask) % 2) continue;
            Vec lam(static_cast<size_t>(n), Rational(0));
            for (int i = 0; i < r; ++i)
                if (mask & (1u << i)) lam[static_cast<size_t>(i)] = 1;
            reps.push_back(std::move(lam));
        }
        return reps;
    }
    reps.push_back(Vec(static_cast<size_t>(n), Rational(0)));  // coroot-C: trivial
    return reps;
}

std::vector<Rational> drop_coordinate(const std::vector<Rational>& v, int k) {
    std::vector<Rational> out;
    for (size_t i = 0; i < v.size(); ++i)
        if (static_cast<int>(i) != k - 1) out.push_back(v[i]);
    return out;
}

DDecomposition d_decomposition(const RootSystemSpec& sys, const ExponentMap& s) {
    if (sys.family != Family::D) throw std::invalid_argument("d_decomposition requires family D");
    int r = sys.rank;
    const auto& droots = positive_roots(sys);
    // Index exponents by (i<j, sign): first r(r-1)/2 are minus pairs, then plus.
    auto minus_s = [&](int i, int j) {  // 0-based i<j
        int idx = 0;
        for (int a = 0; a < i; ++a) idx += r - 1 - a;
        idx += j - i - 1;
        return s.s[static_cast<size_t>(idx)];
    };
    auto plus_s = [&](int i, int j) {
        int base = r * (r - 1) / 2;
        int idx = 0;
        for (int a = 0; a < i; ++a) idx += r - 1 - a;
        idx += j - i - 1;
        return s.s[static_cast<size_t>(base + idx)];
    };
    (void)droots;

    DDecomposition dec;
    // B_r exponents: canonical B order is [e_i-e_j lex][e_i asc][e_i+e_j lex].
    RootSystemSpec bsys = make_spec(Family::B, r);
    dec.b_exponents.s.assign(static_cast<size_t>(bsys.num_positive_roots()), 0);
    {
        size_t p = 0;
        for (int i = 0; i < r; ++i)
            for (int j = i + 1; j < r; ++j) dec.b_exponents.s[p++] = minus_s(i, j);
        p += static_cast<size_t>(r);  // short roots stay 0
        for (int i = 0; i < r; ++i)
            for (int j = i + 1; j < r; ++j) dec.b_exponents.s[p++] = plus_s(i, j);
    }

    for (int k = 0; k < r; ++k) {  // deleted coordinate, 0-based
        DDecomposition::Piece piece;
        piece.k = k + 1;
        unsigned sgn_exp = 0;
        for (int j = k + 1; j < r; ++j) sgn_exp += minus_s(k, j);
        piece.c = (sgn_exp % 2) ? Rational(-1) : Rational(1);

        const auto& core = bc_core(r - 1);
        piece.s.assign(core.equations.size(), 0);
        auto new_index = [&](int i) { return i - (i > k ? 1 : 0); };
        // Merged exponents on the short equations e^{i'}.
        for (int i = 0; i < r; ++i) {
            if (i == k) continue;
            int lo = std::min(i, k), hi = std::max(i, k);
            piece.s[static_cast<size_t>(new_index(i))] = minus_s(lo, hi) + plus_s(lo, hi);
        }
        // Pair equations keep their exponents.
        int rm = r - 1;
        auto plus_pos = [&](int i, int j) {  // 0-based i<j in the reduced coords
            int idx = 0;
            for (int a = 0; a < i; ++a) idx += rm - 1 - a;
            return rm + idx + (j - i - 1);
        };
        auto minus_pos = [&](int i, int j) {
            return plus_pos(i, j) + rm * (rm - 1) / 2;
        };
        for (int i = 0; i < r; ++i) {
            if (i == k) continue;
            for (int j = i + 1; j < r; ++j) {
                if (j == k) continue;
                int ni = new_index(i), nj = new_index(j);
                piece.s[static_cast<size_t>(minus_pos(ni, nj))] = minus_s(i, j);
                piece.s[static_cast<size_t>(plus_pos(ni, nj))] = plus_s(i, j);
            }
        }
        dec.pieces.push_back(std::move(piece));
    }
    return dec;
}

}  // namespace mbs
