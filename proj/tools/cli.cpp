#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mbs/oracle.hpp"
#include "mbs/szenes.hpp"
#include "mbs/witten.hpp"

using json = nlohmann::ordered_json;
using namespace mbs;

namespace {

struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<Rational> parse_point(const std::string& s) {
    std::vector<Rational> v;
    for (const auto& part : split_csv(s)) {
        try {
            v.push_back(parse_rational(part));
        } catch (const std::exception& e) {
            throw UsageError("bad rational '" + part + "': " + e.what());
        }
    }
    return v;
}

// Common exponent options: --all m, --exp "label=value,...", or a positional
// list with an explicit --order.
struct ExpOptions {
    std::optional<unsigned> all;
    std::string map;
    std::string list;
    std::string order;

    void attach(CLI::App* cmd) {
        cmd->add_option("--all", all, "uniform exponent on every positive root");
        cmd->add_option("--exp", map,
                        "comma-separated label=value pairs (root or coroot labels); "
                        "unmentioned roots get 0");
        cmd->add_option("--exp-list", list,
                        "comma-separated exponents in the order named by --order");
        cmd->add_option("--order", order,
                        "exponent order for --exp-list; only 'canonical' (the documented "
                        "per-family root order) is defined");
    }

    ExponentMap resolve(const RootSystemSpec& sys) const {
        const int given = (all ? 1 : 0) + (!map.empty() ? 1 : 0) + (!list.empty() ? 1 : 0);
        if (given != 1)
            throw UsageError("exactly one of --all, --exp, --exp-list must be given");
        if (all) return uniform_exponents(sys, *all);
        const auto& roots = positive_roots(sys);
        ExponentMap s{std::vector<unsigned>(roots.size(), 0)};
        if (!map.empty()) {
            std::vector<bool> seen(roots.size(), false);
            for (const auto& item : split_csv(map)) {
                auto eq = item.rfind('=');
                if (eq == std::string::npos)
                    throw UsageError("bad exponent entry '" + item + "' (expected label=value)");
                const std::string label = item.substr(0, eq);
                int idx;
                try {
                    idx = parse_root_label(sys, label);
                } catch (const std::exception& e) {
                    throw UsageError(e.what());
                }
                if (seen[static_cast<size_t>(idx)])
                    throw UsageError("duplicate exponent for root '" + label + "'");
                seen[static_cast<size_t>(idx)] = true;
                try {
                    s.s[static_cast<size_t>(idx)] =
                        static_cast<unsigned>(std::stoul(item.substr(eq + 1)));
                } catch (const std::exception&) {
                    throw UsageError("bad exponent value in '" + item + "'");
                }
            }
            return s;
        }
        if (order != "canonical")
            throw UsageError("--exp-list requires --order canonical");
        auto parts = split_csv(list);
        if (parts.size() != roots.size())
            throw UsageError("expected " + std::to_string(roots.size()) + " exponents, got " +
                             std::to_string(parts.size()));
        for (size_t i = 0; i < parts.size(); ++i) {
            try {
                s.s[i] = static_cast<unsigned>(std::stoul(parts[i]));
            } catch (const std::exception&) {
                throw UsageError("bad exponent value '" + parts[i] + "'");
            }
        }
        return s;
    }

    json describe(const RootSystemSpec& sys) const {
        json j = json::array();
        auto s = resolve(sys);
        const auto& roots = positive_roots(sys);
        for (size_t i = 0; i < roots.size(); ++i)
            j.push_back({{"root", roots[i].root_label},
                         {"coroot", roots[i].coroot_label},
                         {"exp", s.s[i]}});
        return j;
    }
};

struct SystemOptions {
    std::string family;
    int rank = 0;
    std::string lattice;

    void attach(CLI::App* cmd, bool with_lattice = true) {
        cmd->add_option("--family", family, "root system family: A, B, C or D")->required();
        cmd->add_option("--rank", rank, "root system rank")->required();
        if (with_lattice)
            cmd->add_option("--lattice", lattice,
                            "lattice name (coroot-A, coweight-A, coroot-B, coroot-C, coroot-D); "
                            "defaults to the family's coroot lattice");
    }

    RootSystemSpec spec() const {
        try {
            return make_spec(parse_family(family), rank);
        } catch (const std::exception& e) {
            throw UsageError(e.what());
        }
    }

    Lattice resolve_lattice(const RootSystemSpec& sys) const {
        if (lattice.empty()) return default_lattice(sys.family);
        Lattice l;
        try {
            l = parse_lattice(lattice);
        } catch (const std::exception& e) {
            throw UsageError(e.what());
        }
        if (!lattice_matches_family(sys.family, l))
            throw UsageError("lattice " + lattice + " does not belong to family " +
                             family_name(sys.family));
        return l;
    }
};

std::string rat(const Rational& q) { return format_rational(q); }

json point_json(const std::vector<Rational>& v) {
    json j = json::array();
    for (const auto& x : v) j.push_back(rat(x));
    return j;
}

json polynomial_json(const Polynomial& p, const std::string& var) {
    json terms = json::array();
    for (const auto& [key, coeff] : p.terms()) {
        json powers = json::array();
        for (unsigned e : key) powers.push_back(e);
        terms.push_back({{"coeff", rat(coeff)}, {"powers", powers}});
    }
    return {{"variable", var}, {"terms", terms}, {"text", p.to_string(var)}};
}

json step_polynomial_json(const StepPolynomial& sp) {
    json terms = json::array();
    for (const auto& t : sp.terms) {
        json factors = json::array();
        for (const auto& f : t.factors) {
            json form = json::array();
            for (const auto& c : f.form) form.push_back(rat(c));
            factors.push_back({{"form", form},
                               {"scale", rat(f.scale)},
                               {"shift", rat(f.shift)},
                               {"exp", f.exp}});
        }
        terms.push_back({{"coeff", rat(t.coeff)}, {"factors", factors}});
    }
    return {{"ambient_dim", sp.ambient_dim}, {"terms", terms}};
}

void emit(const json& query, const json& result, const std::string& kind,
          std::chrono::steady_clock::time_point t0) {
    json doc;
    doc["query"] = query;
    doc["result"] = result;
    doc["result_kind"] = kind;
    doc["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
    std::cout << doc.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact evaluation of multiple Bernoulli series for classical root systems"};
    app.require_subcommand(1);

    // bernoulli
    auto* cb = app.add_subcommand("bernoulli", "evaluate the series at a point");
    SystemOptions b_sys;
    ExpOptions b_exp;
    std::string b_at, b_mode = "limit", b_dir;
    b_sys.attach(cb);
    b_exp.attach(cb);
    cb->add_option("--at", b_at, "evaluation point, comma-separated rationals")->required();
    cb->add_option("--mode", b_mode, "value (requires a regular point) or limit (default)");
    cb->add_option("--direction", b_dir, "explicit limit direction (comma-separated rationals)");

    // step-poly
    auto* cs = app.add_subcommand("step-poly", "closed-form step polynomial");
    SystemOptions s_sys;
    ExpOptions s_exp;
    std::string s_out;
    size_t s_max = 512;
    s_sys.attach(cs);
    s_exp.attach(cs);
    cs->add_option("--output", s_out, "write the step polynomial JSON to this file");
    cs->add_option("--max-terms", s_max,
                   "inline at most this many terms on stdout (larger needs --output)");

    // tope-poly
    auto* ct = app.add_subcommand("tope-poly", "polynomial on the tope of a sample point");
    SystemOptions t_sys;
    ExpOptions t_exp;
    std::string t_at, t_dir;
    t_sys.attach(ct);
    t_exp.attach(ct);
    ct->add_option("--at", t_at, "sample point selecting the tope")->required();
    ct->add_option("--direction", t_dir, "explicit limit direction");

    // witten-volume
    auto* cw = app.add_subcommand("witten-volume", "moduli space volume");
    SystemOptions w_sys;
    int w_genus = 0;
    std::vector<std::string> w_marks, w_marks_coroot;
    bool w_series = false;
    w_sys.attach(cw, false);
    cw->add_option("--genus", w_genus, "genus g")->required();
    cw->add_option("--marking", w_marks, "marking point in e-coordinates (repeatable)");
    cw->add_option("--marking-coroot", w_marks_coroot,
                   "marking as simple-coroot coefficients (repeatable)");
    cw->add_flag("--series", w_series, "print the bare series value instead of the volume");

    // zeta
    auto* cz = app.add_subcommand("zeta", "zeta value at v = 0 for even symmetric exponents");
    SystemOptions z_sys;
    ExpOptions z_exp;
    z_sys.attach(cz, false);
    z_exp.attach(cz);

    // mzv
    auto* cm = app.add_subcommand("mzv", "multiple zeta value zeta_r(2k,...,2k)");
    int m_depth = 0;
    unsigned m_weight = 0;
    cm->add_option("--depth", m_depth, "depth r")->required();
    cm->add_option("--weight", m_weight, "uniform even weight 2k")->required();

    // verlinde-su2
    auto* cv = app.add_subcommand("verlinde-su2", "exact SU(2) Verlinde number");
    std::string v_t;
    long v_level = 0;
    int v_genus = 0;
    cv->add_option("--t", v_t, "marking parameter t (rational, 0 < t < 1/2)")->required();
    cv->add_option("--level", v_level, "level ell (t*ell must be a positive integer)")->required();
    cv->add_option("--genus", v_genus, "genus g >= 1")->required();

    // oracle-check
    auto* co = app.add_subcommand("oracle-check", "certify the engine against a truncated sum");
    SystemOptions o_sys;
    ExpOptions o_exp;
    std::string o_at;
    long o_radius = 200;
    unsigned o_precision = 64;
    double o_tol = 1e-5;
    o_sys.attach(co);
    o_exp.attach(co);
    co->add_option("--at", o_at, "evaluation point (defaults to the origin)");
    co->add_option("--radius", o_radius, "box radius M in dual-lattice coefficients");
    co->add_option("--precision", o_precision, "working mantissa bits (>64 switches to quad)");
    co->add_option("--rel-tol", o_tol, "relative tolerance for the comparison");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    const auto t0 = std::chrono::steady_clock::now();
    try {
        if (*cb) {
            auto sys = b_sys.spec();
            Lattice lat = b_sys.resolve_lattice(sys);
            ExponentMap s = b_exp.resolve(sys);
            auto v = parse_point(b_at);
            json query = {{"subcommand", "bernoulli"},      {"family", sys.name()},
                          {"lattice", lattice_name(lat)},   {"exponents", b_exp.describe(sys)},
                          {"at", point_json(v)},            {"mode", b_mode}};
            Rational r;
            if (b_mode == "value") {
                r = bernoulli_eval(sys, lat, s, v);
            } else if (b_mode == "limit") {
                std::optional<std::vector<Rational>> dir;
                if (!b_dir.empty()) dir = parse_point(b_dir);
                r = bernoulli_limit(sys, lat, s, v, dir);
            } else {
                throw UsageError("--mode must be value or limit");
            }
            emit(query, rat(r), "rational", t0);
        } else if (*cs) {
            auto sys = s_sys.spec();
            Lattice lat = s_sys.resolve_lattice(sys);
            ExponentMap s = s_exp.resolve(sys);
            json query = {{"subcommand", "step-poly"},
                          {"family", sys.name()},
                          {"lattice", lattice_name(lat)},
                          {"exponents", s_exp.describe(sys)}};
            StepPolynomial sp = step_polynomial(sys, lat, s);
            json body = step_polynomial_json(sp);
            if (!s_out.empty()) {
                std::ofstream f(s_out);
                if (!f) throw UsageError("cannot open output file " + s_out);
                f << body.dump(2) << "\n";
                emit(query, {{"file", s_out}, {"terms", sp.term_count()}}, "step_polynomial", t0);
            } else if (sp.term_count() > s_max) {
                throw UsageError("step polynomial has " + std::to_string(sp.term_count()) +
                                 " terms (> --max-terms); pass --output FILE");
            } else {
                emit(query, body, "step_polynomial", t0);
            }
        } else if (*ct) {
            auto sys = t_sys.spec();
            Lattice lat = t_sys.resolve_lattice(sys);
            ExponentMap s = t_exp.resolve(sys);
            auto v = parse_point(t_at);
            std::optional<std::vector<Rational>> dir;
            if (!t_dir.empty()) dir = parse_point(t_dir);
            json query = {{"subcommand", "tope-poly"},
                          {"family", sys.name()},
                          {"lattice", lattice_name(lat)},
                          {"exponents", t_exp.describe(sys)},
                          {"at", point_json(v)}};
            Polynomial p = tope_polynomial(sys, lat, s, v, dir);
            emit(query, polynomial_json(p, "v"), "polynomial", t0);
        } else if (*cw) {
            auto sys = w_sys.spec();
            MarkingSet ms;
            ms.genus = w_genus;
            for (const auto& m : w_marks) ms.points.push_back(parse_point(m));
            for (const auto& m : w_marks_coroot)
                ms.points.push_back(point_from_coroot_coeffs(sys, parse_point(m)));
            json marks = json::array();
            for (const auto& p : ms.points) marks.push_back(point_json(p));
            json query = {{"subcommand", "witten-volume"},
                          {"family", sys.name()},
                          {"genus", w_genus},
                          {"markings", marks},
                          {"series", w_series}};
            Rational r = w_series ? witten_series(sys, ms)
                       : ms.count() == 1 ? volume_one_marking(sys, w_genus, ms.points[0])
                                         : volume(sys, ms);
            emit(query, rat(r), "rational", t0);
        } else if (*cz) {
            auto sys = z_sys.spec();
            ExponentMap s = z_exp.resolve(sys);
            json query = {{"subcommand", "zeta"},
                          {"family", sys.name()},
                          {"exponents", z_exp.describe(sys)}};
            PiValue z = zeta_even(sys, s);
            emit(query, {{"coeff", rat(z.coeff)}, {"pi_power", z.pi_power}}, "pi_value", t0);
        } else if (*cm) {
            json query = {{"subcommand", "mzv"}, {"depth", m_depth}, {"weight", m_weight}};
            PiValue z = mzv(m_depth, m_weight);
            emit(query, {{"coeff", rat(z.coeff)}, {"pi_power", z.pi_power}}, "pi_value", t0);
        } else if (*cv) {
            Rational t;
            try {
                t = parse_rational(v_t);
            } catch (const std::exception& e) {
                throw UsageError(e.what());
            }
            json query = {{"subcommand", "verlinde-su2"},
                          {"t", rat(t)},
                          {"level", v_level},
                          {"genus", v_genus}};
            emit(query, rat(verlinde_su2(t, v_level, v_genus)), "rational", t0);
        } else if (*co) {
            auto sys = o_sys.spec();
            Lattice lat = o_sys.resolve_lattice(sys);
            ExponentMap s = o_exp.resolve(sys);
            std::vector<Rational> v(static_cast<size_t>(sys.ambient_dim()), 0);
            if (!o_at.empty()) v = parse_point(o_at);
            json query = {{"subcommand", "oracle-check"}, {"family", sys.name()},
                          {"lattice", lattice_name(lat)}, {"exponents", o_exp.describe(sys)},
                          {"at", point_json(v)},          {"radius", o_radius},
                          {"precision", o_precision},     {"rel_tol", o_tol}};
            Rational engine = bernoulli_limit(sys, lat, s, v);
            OracleResult o = direct_sum(sys, lat, s, v, {o_radius, o_precision, true});
            CompareReport rep = compare(engine, o, o_tol);
            json body = {{"pass", rep.pass},
                         {"engine", rat(engine)},
                         {"oracle", o.value},
                         {"relative_error", rep.relative_error},
                         {"tail_estimate", o.error_estimate},
                         {"terms", o.terms},
                         {"detail", rep.detail}};
            emit(query, body, "report", t0);
            return rep.pass ? 0 : 2;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
