#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "z4ap/bounds.hpp"
#include "z4ap/cosets.hpp"
#include "z4ap/lemma.hpp"
#include "z4ap/poly_io.hpp"
#include "z4ap/search.hpp"
#include "z4ap/set_io.hpp"

using json = nlohmann::ordered_json;
using namespace z4ap;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct Common {
    int precision = 50;
    int threads = 1;
    bool no_timestamp = false;
};

std::string iso_now() {
    auto t = std::chrono::system_clock::to_time_t(
        std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json header(const std::string& command, const Common& c) {
    json j;
    j["schema"] = 1;
    j["command"] = command;
    if (!c.no_timestamp) j["timestamp"] = iso_now();
    return j;
}

json common_config(const Common& c) {
    json j;
    j["precision"] = c.precision;
    j["threads"] = c.threads;
    j["no_timestamp"] = c.no_timestamp;
    return j;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

std::uint64_t fresh_seed() {
    std::random_device rd;
    return (std::uint64_t(rd()) << 32) ^ rd();
}

std::vector<std::string> set_strings(const PointSet& s) {
    std::vector<std::string> out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) out.push_back(s.at(i).str());
    return out;
}

json rich_report_json(const RichCosetReport& r, const std::string& eps_text) {
    json j;
    j["epsilon"] = eps_text;
    j["eps_value"] = r.eps_value;
    j["threshold"] = r.threshold;
    j["threshold_log2"] = r.threshold_log2;
    j["rich_count"] = r.rich_count;
    j["bound"] = r.bound;
    j["bound_log2"] = r.bound_log2;
    j["vacuous"] = r.vacuous;
    j["assertion_holds"] = r.assertion_holds;
    j["precision_bits"] = r.precision_bits;
    return j;
}

json trace_json(const ReplayTrace& t) {
    json j;
    j["n"] = t.n;
    j["ceil_2eps_n"] = t.ceil_2eps_n;
    j["d"] = t.d;
    j["hypothesis_satisfiable"] = t.hypothesis_satisfiable;
    j["contradiction_found"] = t.contradiction_found;
    j["all_ok"] = t.all_ok;
    j["steps"] = json::array();
    for (const ReplayStep& s : t.steps)
        j["steps"].push_back(
            {{"name", s.name}, {"ok", s.ok}, {"detail", s.detail}});
    return j;
}

int run_gamma(const Common& c, double tol) {
    GammaResult g = compute_gamma(tol);
    json j = header("gamma", c);
    j["config"] = common_config(c);
    j["config"]["tol"] = tol;
    j["gamma"] = g.gamma;
    j["eps_star"] = g.eps_star;
    j["iterations"] = g.iterations;
    j["tolerance_achieved"] = g.tolerance_achieved;
    emit(j);
    return kOk;
}

int run_bound(const Common& c, int n, const std::vector<unsigned long>& factors) {
    json j = header("bound", c);
    j["config"] = common_config(c);
    j["config"]["n"] = n;
    j["config"]["factors"] = factors;
    j["gamma"] = compute_gamma(1e-12).gamma;
    j["theorem"] = theorem_bound(n);
    j["finite"] = finite_bound(n);
    if (!factors.empty()) {
        CorollaryBound cb = corollary_bound(InvariantFactorization{factors});
        j["corollary"] = {
            {"rk4", cb.rk4}, {"order", cb.order}, {"bound", cb.bound}};
    }
    emit(j);
    return kOk;
}

int run_entropy_table(const Common& c, int max_n) {
    std::cout << "# schema=1\n# command=entropy-table\n";
    std::cout << "# max_n=" << max_n << " precision=" << c.precision
              << " threads=" << c.threads << "\n";
    if (!c.no_timestamp) std::cout << "# timestamp=" << iso_now() << "\n";
    std::cout << "n,z,sum,sum_log2,n_entropy_log2,holds,precision_bits\n";
    bool all = true;
    for (int n = 2; n <= max_n; ++n)
        for (int z = 1; 2 * z <= n; ++z) {
            EntropyBoundCheck e = check_entropy_bound(n, Rational(z), c.precision);
            all = all && e.holds;
            std::cout << n << "," << z << "," << e.lhs.get_str() << ","
                      << e.lhs_log2 << "," << e.rhs_log2 << ","
                      << (e.holds ? 1 : 0) << "," << e.precision_bits << "\n";
        }
    return all ? kOk : kCheckFailed;
}

int run_search(const Common& c, int n, const std::string& method_name,
               std::uint64_t seed, bool seed_given, std::uint64_t budget,
               bool budget_given, const std::string& out_path) {
    auto method = parse_method(method_name);
    if (!method) throw CLI::ValidationError(
        "--method", "expected exhaustive, bnb, greedy or restart");
    bool randomized = *method == SearchMethod::greedy ||
                      *method == SearchMethod::random_restart;
    if (randomized && !seed_given) seed = fresh_seed();

    SearchResult r;
    if (randomized)
        r = budget_given ? heuristic_r3(n, *method, seed, budget)
                         : heuristic_r3(n, *method, seed);
    else
        r = exact_r3(n, budget_given ? budget : 0, *method);

    json j = header("search", c);
    j["config"] = common_config(c);
    j["config"]["n"] = n;
    j["config"]["method"] = to_string(*method);
    if (randomized) j["config"]["seed"] = seed;
    if (budget_given) j["config"]["budget"] = budget;
    if (!out_path.empty()) j["config"]["out"] = out_path;
    j["n"] = r.n;
    j["method"] = to_string(r.method);
    j["best_size"] = r.best_size;
    j["exact"] = r.exact_flag;
    j["nodes_explored"] = r.nodes_explored;
    if (randomized) j["seed"] = seed;
    j["witness"] = set_strings(r.witness);
    if (!out_path.empty()) {
        std::vector<std::string> comments{
            "search witness, method " + to_string(r.method) + ", size " +
            std::to_string(r.best_size)};
        write_set_file(out_path, r.witness, comments);
    }
    emit(j);
    return kOk;
}

int run_verify(const Common& c, const std::string& path) {
    VerifyReport v = verify_file(path, c.precision);
    json j = header("verify", c);
    j["config"] = common_config(c);
    j["config"]["file"] = path;
    j["n"] = v.n;
    j["size"] = v.size;
    j["progression_free"] = v.progression_free;
    if (v.violation)
        j["violation"] = {{"a", v.violation->a.str()},
                          {"b", v.violation->b.str()},
                          {"c", v.violation->c.str()}};
    j["cosets"] = {{"nonempty", v.nonempty_cosets},
                   {"max_count", v.max_coset_count}};
    const IntegralCheckReport& ic = v.integral;
    j["integral"] = {{"total", ic.total.get_str()},
                     {"step_integral", ic.step_integral.get_str()},
                     {"identity_exact", ic.identity_exact},
                     {"x0", ic.x0},
                     {"head_value", ic.head_value},
                     {"head_cap_log2", ic.head_cap_log2},
                     {"head_bounded", ic.head_bounded},
                     {"tail_step", ic.tail_step},
                     {"tail_quadrature", ic.tail_quadrature},
                     {"tail_rel_err", ic.tail_rel_err},
                     {"tail_ok", ic.tail_ok},
                     {"all_ok", ic.all_ok}};
    j["rich_grid"] = json::array();
    for (int k = 1; k <= 24; ++k)
        j["rich_grid"].push_back(rich_report_json(
            v.rich_grid[static_cast<std::size_t>(k - 1)],
            std::to_string(k) + "/100"));
    j["rich_all_hold"] = v.rich_all_hold;
    j["bounds"] = {{"theorem", v.theorem_bound_value},
                   {"finite", v.finite_bound_value},
                   {"within_theorem", v.within_theorem_bound},
                   {"within_finite", v.within_finite_bound}};
    j["all_ok"] = v.all_ok;
    emit(j);
    return v.all_ok ? kOk : kCheckFailed;
}

int run_cosets(const Common& c, const std::string& path,
               const std::string& eps_text, bool replay) {
    PointSet a = read_set_file(path);
    Rational eps = parse_rational(eps_text);
    RichCosetReport r = rich_coset_report(a, eps, c.precision);

    // disjointness exercised over the widest valid selection: every
    // nonempty coset
    CosetDecomposition dec = coset_decompose(a);
    std::vector<GroupVector> all_reps;
    all_reps.reserve(dec.parts.size());
    for (const auto& part : dec.parts) all_reps.push_back(part.representative);
    BCResult bc = build_B_and_C(a, all_reps);

    json j = header("cosets", c);
    j["config"] = common_config(c);
    j["config"]["file"] = path;
    j["config"]["eps"] = eps_text;
    j["config"]["replay"] = replay;
    j["n"] = r.n;
    j["size"] = a.size();
    json rich = rich_report_json(r, eps_text);
    for (auto& [k, v] : rich.items()) j[k] = v;
    j["rich"] = json::array();
    for (const GroupVector& g : rich_cosets(a, eps, c.precision))
        j["rich"].push_back(g.str());
    j["disjointness_ok"] = bc.disjoint;
    j["b_size"] = bc.b.size();
    j["c_size"] = bc.c.size();

    bool ok = bc.disjoint && (r.vacuous || r.assertion_holds);
    if (replay) {
        ReplayTrace t = replay_proposition(a, eps, c.precision);
        j["trace"] = trace_json(t);
        ok = ok && t.all_ok;
    }
    j["all_ok"] = ok;
    emit(j);
    return ok ? kOk : kCheckFailed;
}

MultilinearPoly random_poly(int n, int d, int p, std::mt19937_64& rng) {
    std::vector<std::pair<Monomial, int>> terms;
    for (Monomial m : monomials_up_to(n, d)) {
        int coeff = static_cast<int>(rng() % static_cast<std::uint64_t>(p));
        if (coeff) terms.emplace_back(m, coeff);
    }
    if (terms.empty()) terms.emplace_back(0u, 1);
    return MultilinearPoly::from_terms(n, p, std::move(terms));
}

FpPointSet random_points(int n, int p, std::size_t count,
                         std::mt19937_64& rng) {
    if (count > (std::size_t(1) << (2 * std::min(n, 15))))
        throw DomainError("set size exceeds the point space");
    std::set<std::vector<std::uint8_t>> seen;
    while (seen.size() < count) {
        std::vector<std::uint8_t> pt(static_cast<std::size_t>(n));
        for (auto& x : pt)
            x = static_cast<std::uint8_t>(rng() % static_cast<std::uint64_t>(p));
        seen.insert(std::move(pt));
    }
    FpPointSet out;
    out.n = n;
    out.p = p;
    out.pts.assign(seen.begin(), seen.end());
    return out;
}

FpPointSet points_from_set_file(const std::string& path, int p) {
    PointSet s = read_set_file(path);
    FpPointSet out;
    out.n = s.dim();
    out.p = p;
    for (std::size_t i = 0; i < s.size(); ++i) {
        GroupVector g = s.at(i);
        std::vector<std::uint8_t> pt(static_cast<std::size_t>(out.n));
        for (int k = 0; k < out.n; ++k) {
            int digit = g.digit(k);
            if (digit >= p)
                throw DomainError("point digit " + std::to_string(digit) +
                                  " outside F_" + std::to_string(p));
            pt[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(digit);
        }
        out.pts.push_back(std::move(pt));
    }
    return out;
}

void dump_matrix_csv(std::ostream& os,
                     const std::vector<std::vector<std::uint8_t>>& m) {
    for (const auto& row : m) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << int(row[i]);
        os << "\n";
    }
}

int run_lemma_demo(const Common& c, const std::string& poly_path,
                   const std::string& set_path, bool random, int n, int degree,
                   int p, std::size_t set_size, int d_flag, bool d_given,
                   std::uint64_t seed, bool seed_given,
                   const std::string& dump_prefix) {
    MultilinearPoly poly;
    FpPointSet pts;
    bool used_random = false;
    if (!poly_path.empty() != !set_path.empty())
        throw CLI::ValidationError("lemma-demo",
                                   "--poly and --set go together");
    if (!poly_path.empty()) {
        poly = read_poly_file(poly_path);
        pts = points_from_set_file(set_path, poly.field());
        if (pts.n != poly.nvars())
            throw DimensionError("polynomial has " +
                                 std::to_string(poly.nvars()) +
                                 " variables, points have " +
                                 std::to_string(pts.n));
    } else {
        used_random = true;
        (void)random;  // default mode when no files are given
        if (!seed_given) seed = fresh_seed();
        std::mt19937_64 rng(seed);
        poly = random_poly(n, degree, p, rng);
        pts = random_points(n, p, set_size, rng);
    }
    int d = d_given ? d_flag : (used_random ? degree : poly.degree());

    LemmaCertificate cert = build_certificate(poly, pts, d, c.threads);
    LemmaReport rep = check_lemma(poly, pts, d, c.threads);

    json j = header("lemma-demo", c);
    j["config"] = common_config(c);
    if (!poly_path.empty()) {
        j["config"]["poly"] = poly_path;
        j["config"]["set"] = set_path;
    } else {
        j["config"]["random"] = true;
        j["config"]["n"] = n;
        j["config"]["degree"] = degree;
        j["config"]["p"] = p;
        j["config"]["set_size"] = set_size;
        j["config"]["seed"] = seed;
    }
    j["config"]["d"] = d;
    if (!dump_prefix.empty()) j["config"]["dump"] = dump_prefix;
    j["n"] = cert.n;
    j["p"] = cert.p;
    j["d"] = cert.d;
    j["m"] = rep.m.get_str();
    j["two_m"] = mpz_class(2 * rep.m).get_str();
    j["set_size"] = rep.set_size;
    j["size_ok"] = rep.size_ok;
    j["hypothesis_ok"] = rep.hypothesis_ok;
    j["p0_zero"] = rep.p0_zero;
    j["u_rank"] = rep.u_rank;
    j["contract_ok"] = rep.contract_ok;
    if (rep.size_ok && rep.hypothesis_ok) {
        IndependenceResult iw = independence_witness(cert);
        j["independence"] = {{"u_rank", iw.u_rank},
                             {"set_size", iw.set_size},
                             {"two_m", iw.two_m},
                             {"rank_equals_size", iw.rank_equals_size}};
    }
    if (!dump_prefix.empty()) {
        write_poly_file(dump_prefix + ".poly.txt", poly);
        std::ofstream gs(dump_prefix + ".gram.csv");
        dump_matrix_csv(gs, cert.gram);
        std::ofstream us(dump_prefix + ".u.csv");
        dump_matrix_csv(us, cert.u);
        std::ofstream vs(dump_prefix + ".v.csv");
        dump_matrix_csv(vs, cert.v);
        j["dumped"] = {dump_prefix + ".poly.txt", dump_prefix + ".gram.csv",
                       dump_prefix + ".u.csv", dump_prefix + ".v.csv"};
    }
    emit(j);
    return rep.contract_ok ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "verification and exploration toolkit for progression-free subsets "
        "of Z_4^n"};
    app.require_subcommand(1);

    Common c;
    app.add_option("--precision", c.precision,
                   "decimal digits for certified comparisons")
        ->envname("Z4AP_PRECISION")
        ->check(CLI::Range(5, 10000));
    app.add_option("--threads", c.threads, "worker thread cap")
        ->check(CLI::Range(1, 256));
    app.add_flag("--no-timestamp", c.no_timestamp,
                 "omit the timestamp field (stable output for diffing)");

    int exit_code = kOk;

    auto* g = app.add_subcommand("gamma", "the exponent constant");
    g->fallthrough();
    double tol = 1e-12;
    g->add_option("--tol", tol, "maximizer tolerance")
        ->check(CLI::Range(1e-15, 1e-2));
    g->callback([&] { exit_code = run_gamma(c, tol); });

    auto* b = app.add_subcommand("bound", "size bounds for Z_4^n and beyond");
    b->fallthrough();
    int bound_n = 1;
    std::vector<unsigned long> factors;
    b->add_option("--n", bound_n, "dimension")->required()
        ->check(CLI::Range(1, 1024));
    b->add_option("--factors", factors,
                  "invariant factors m_1|...|m_k of a finite abelian group");
    b->callback([&] { exit_code = run_bound(c, bound_n, factors); });

    auto* e = app.add_subcommand("entropy-table",
                                 "CSV sweep of the binomial-entropy bound");
    e->fallthrough();
    int max_n = 16;
    e->add_option("--max-n", max_n, "largest dimension")->required()
        ->check(CLI::Range(1, 200));
    e->callback([&] { exit_code = run_entropy_table(c, max_n); });

    auto* s = app.add_subcommand("search", "maximum progression-free subsets");
    s->fallthrough();
    int search_n = 1;
    std::string method = "bnb";
    std::uint64_t seed = 0, budget = 0;
    std::string out_path;
    s->add_option("--n", search_n, "dimension")->required()
        ->check(CLI::Range(1, 10));
    s->add_option("--method", method, "exhaustive|bnb|greedy|restart");
    auto* seed_opt = s->add_option("--seed", seed, "RNG seed");
    auto* budget_opt = s->add_option("--budget", budget, "node/move budget");
    s->add_option("--out", out_path, "write the witness as a set file");
    s->callback([&] {
        exit_code = run_search(c, search_n, method, seed, seed_opt->count() > 0,
                               budget, budget_opt->count() > 0, out_path);
    });

    auto* v = app.add_subcommand("verify", "consolidated checks on a set file");
    v->fallthrough();
    std::string verify_file_path;
    v->add_option("--file", verify_file_path, "set file")
        ->required()->check(CLI::ExistingFile);
    v->callback([&] { exit_code = run_verify(c, verify_file_path); });

    auto* co = app.add_subcommand("cosets", "rich coset report for a set file");
    co->fallthrough();
    std::string cosets_file, eps_text;
    bool replay = false;
    co->add_option("--file", cosets_file, "set file")
        ->required()->check(CLI::ExistingFile);
    co->add_option("--eps", eps_text, "epsilon in (0, 1/4), decimal or p/q")
        ->required();
    co->add_flag("--replay", replay, "attach the step-by-step proof replay");
    co->callback([&] { exit_code = run_cosets(c, cosets_file, eps_text, replay); });

    auto* l = app.add_subcommand("lemma-demo",
                                 "rank certificate on a polynomial and set");
    l->fallthrough();
    std::string poly_path, set_path, dump_prefix;
    bool random = false;
    int ld_n = 4, ld_degree = 2, ld_p = 2, ld_d = 0;
    std::size_t set_size = 6;
    std::uint64_t ld_seed = 0;
    l->add_option("--poly", poly_path, "polynomial file")
        ->check(CLI::ExistingFile);
    l->add_option("--set", set_path, "point set file")
        ->check(CLI::ExistingFile);
    l->add_flag("--random", random, "random instance (the default mode)");
    l->add_option("--n", ld_n, "variables")->check(CLI::Range(1, 15));
    l->add_option("--degree", ld_degree, "random polynomial degree cap");
    l->add_option("--p", ld_p, "field size")->check(CLI::IsMember({2, 3, 5, 7, 11, 13, 17}));
    l->add_option("--set-size", set_size, "number of points");
    auto* ld_d_opt = l->add_option("--d", ld_d, "declared degree bound");
    auto* ld_seed_opt = l->add_option("--seed", ld_seed, "RNG seed");
    l->add_option("--dump", dump_prefix,
                  "write <prefix>.poly.txt and <prefix>.{gram,u,v}.csv");
    l->callback([&] {
        exit_code = run_lemma_demo(c, poly_path, set_path, random, ld_n,
                                   ld_degree, ld_p, set_size, ld_d,
                                   ld_d_opt->count() > 0, ld_seed,
                                   ld_seed_opt->count() > 0, dump_prefix);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& ex) {
        return app.exit(ex);
    } catch (const CLI::ParseError& ex) {
        app.exit(ex);
        return kUsage;
    } catch (const ParseError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kUsage;
    } catch (const DimensionError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kUsage;
    } catch (const DomainError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kUsage;
    } catch (const CapacityError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kUsage;
    } catch (const Error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kCheckFailed;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kCheckFailed;
    }
    return exit_code;
}
