#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mbs/rational.hpp"

namespace mbs {

enum class Family { A, B, C, D };

std::string family_name(Family f);
Family parse_family(const std::string& s);

// Lattices the evaluation pipelines support, named as in the CLI.
enum class Lattice { CorootA, CoweightA, CorootB, CorootC, CorootD };

std::string lattice_name(Lattice l);
Lattice parse_lattice(const std::string& s);
Lattice default_lattice(Family f);          // the coroot lattice of the family
bool lattice_matches_family(Family f, Lattice l);

struct RootSystemSpec {
    Family family;
    int rank;

    // Vectors are written in the standard basis of R^n; type A uses n = rank+1
    // coordinates (sum-zero subspace), the other families n = rank.
    int ambient_dim() const { return family == Family::A ? rank + 1 : rank; }
    int num_positive_roots() const;
    std::string name() const { return family_name(family) + "_" + std::to_string(rank); }
};

RootSystemSpec make_spec(Family f, int rank);  // validates the rank range

// A positive root together with its coroot H_alpha (the hyperplane equation).
struct Root {
    std::string root_label;    // e.g. "e1-e2", "e1", "2e1"
    std::string coroot_label;  // e.g. "e1-e2", "2e1", "e1"
    std::vector<Rational> coroot;
};

// Positive coroots in the canonical per-family order (see README); the order
// is only a convenience for positional input, exponents are keyed by label.
const std::vector<Root>& positive_roots(const RootSystemSpec& sys);

// Accepts either the root label or the coroot label; returns the root index.
int parse_root_label(const RootSystemSpec& sys, const std::string& label);

// Exponents s_alpha keyed by position in positive_roots(sys).
struct ExponentMap {
    std::vector<unsigned> s;
    unsigned total() const {
        unsigned t = 0;
        for (unsigned x : s) t += x;
        return t;
    }
};

ExponentMap uniform_exponents(const RootSystemSpec& sys, unsigned m);

// An ordered basis sigma of the equation set, with exact dual functionals:
// dual[i] satisfies <dual[i], alphas[j]> = delta_ij on the span (for type A,
// dual vectors are chosen with coordinate sum zero).
struct OrderedBasis {
    std::vector<int> equation_indices;            // into the owning equation list
    std::vector<std::vector<Rational>> alphas;    // the basis vectors
    std::vector<std::vector<Rational>> dual;      // c_i^sigma(v) = <dual[i], v>
    bool unimodular = false;
};

// c_i^sigma(v) for i = 1..r.
std::vector<Rational> c_coeffs(const OrderedBasis& sigma, const std::vector<Rational>& v);

// The two core arrangements every pipeline reduces to: type A (equations
// e^i - e^j, lattice = sum-zero integer vectors) and type BC (equations
// e^i, e^i+e^j, e^i-e^j, lattice = Z^r).  `bases` is the diagonal set of the
// arrangement, unimodular for the respective lattice.
struct CoreArrangement {
    int rank;
    int ambient;
    std::vector<std::vector<Rational>> equations;
    std::vector<std::string> equation_labels;
    std::vector<OrderedBasis> bases;
};

// Equation order — A core: e^i-e^j lex (i<j); BC core: e^1..e^r, then
// e^i+e^j lex, then e^i-e^j lex.
const CoreArrangement& a_core(int rank);
const CoreArrangement& bc_core(int rank);

// Diagonal flag bases for the family itself (A or B/C share the BC set);
// family D is rejected — it is handled by d_decomposition.
const std::vector<OrderedBasis>& flag_bases(const RootSystemSpec& sys);

// Signed-permutation Weyl element: maps e_i -> signs[i] * e_{perm[i]}.
struct WeylElement {
    std::vector<int> perm;
    std::vector<int> signs;  // +1/-1; all +1 for type A
    int sign;                // determinant
};

const std::vector<WeylElement>& weyl_elements(const RootSystemSpec& sys);
std::vector<Rational> weyl_apply(const WeylElement& w, const std::vector<Rational>& v);

// Basis of the dual lattice Gamma = dual of the working lattice.
std::vector<std::vector<Rational>> dual_lattice_basis(const RootSystemSpec& sys, Lattice l);

// Basis of the working lattice Lambda itself.
std::vector<std::vector<Rational>> lattice_basis(const RootSystemSpec& sys, Lattice l);

// True iff v avoids every admissible affine wall; on failure *wall_out (if
// given) receives a description of a violated wall.
bool is_regular(const RootSystemSpec& sys, Lattice l, const std::vector<Rational>& v,
                std::string* wall_out = nullptr);

// All primitive wall normals gamma_W in Gamma (used for regularity and for
// genericity of limit directions).
const std::vector<std::vector<Rational>>& wall_normals(const RootSystemSpec& sys, Lattice l);

// Coset representatives used by the composite pipelines:
//  - (A, coweight-A): lambda_j = (j/(r+1)) xi, j = 0..r  (index r+1)
//  - (B, coroot-B) and (D, coroot-D): the set F = {sums of even-size subsets
//    of {e^1..e^r}} (index 2^{r-1})
std::vector<std::vector<Rational>> coset_representatives(const RootSystemSpec& sys, Lattice l);

// Decomposition of a D_r series into a B_r piece and C_{r-1}-type pieces
// (one per deleted coordinate k).
struct DDecomposition {
    ExponentMap b_exponents;  // on B_r positive roots: pairs kept, shorts 0
    struct Piece {
        int k;                    // 1-based deleted coordinate
        Rational c;               // sign c_k
        std::vector<unsigned> s;  // exponents on bc_core(rank-1) equations
    };
    std::vector<Piece> pieces;
};
DDecomposition d_decomposition(const RootSystemSpec& sys, const ExponentMap& s);

// Drops coordinate k (1-based) from v.
std::vector<Rational> drop_coordinate(const std::vector<Rational>& v, int k);

}  // namespace mbs
