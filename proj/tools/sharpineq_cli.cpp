// Command-line front end: sharp-constant tables, verification suites,
// quotient minimization, transport demos, and plot-ready CSV emission.
//
// Subcommands: constants, verify, optimize, transport, plotdata.
// Exit codes: 0 success, 1 verification failure, 2 usage error.
// Every output embeds a manifest (command, parameters, seed, tolerances,
// version); re-running the same command reproduces the bytes exactly, so
// wall time goes to stderr only.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sharpineq/optimizer.hpp"
#include "sharpineq/quadrature.hpp"
#include "sharpineq/transport.hpp"
#include "sharpineq/verifier.hpp"

using nlohmann::json;
using namespace sharpineq;

namespace {

constexpr const char* kVersion = "0.3.0";

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<double> parse_doubles(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size()) throw CLI::ValidationError("bad number: " + tok);
        out.push_back(v);
    }
    if (out.empty()) throw CLI::ValidationError("empty list: " + s);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> parse_ints(const std::string& s) {
    std::vector<int> out;
    const auto dots = s.find("..");
    if (dots != std::string::npos) {
        const int lo = std::stoi(s.substr(0, dots));
        const int hi = std::stoi(s.substr(dots + 2));
        if (hi < lo) throw CLI::ValidationError("bad range: " + s);
        for (int i = lo; i <= hi; ++i) out.push_back(i);
        return out;
    }
    for (double v : parse_doubles(s)) {
        if (v != std::floor(v)) throw CLI::ValidationError("not integer: " + s);
        out.push_back(static_cast<int>(v));
    }
    return out;
}

// "lq:2" -> exponent of the l^q norm on the ambient space
double parse_norm_exponent(const std::string& s) {
    if (s.rfind("lq:", 0) != 0)
        throw CLI::ValidationError("bad norm spec (expected lq:<q>): " + s);
    const double q = std::stod(s.substr(3));
    if (!(q >= 1.0)) throw CLI::ValidationError("norm exponent must be >= 1");
    return q;
}

// Grid tasks run on a worker pool capped by SHARPINEQ_THREADS; results are
// indexed, so the output order is the (canonical, pre-sorted) task order.
template <typename Work>
void run_pool(int n_tasks, Work&& work) {
    if (n_tasks <= 0) return;
    int threads = static_cast<int>(std::thread::hardware_concurrency());
    if (const char* env = std::getenv("SHARPINEQ_THREADS"))
        threads = std::atoi(env);
    threads = std::clamp(threads, 1, n_tasks);
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i; (i = next.fetch_add(1)) < n_tasks;) work(i);
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

struct Output {
    json manifest;
    std::vector<std::string> columns; // CSV column order
    std::vector<json> records;
};

std::string csv_cell(const json& v) {
    if (v.is_null()) return "";
    if (v.is_number_float()) return fmt17(v.get<double>());
    if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.get<std::string>();
}

int write_output(const Output& out, const std::string& path,
                 const std::string& format) {
    std::string text;
    if (format == "json") {
        json doc;
        doc["manifest"] = out.manifest;
        doc["records"] = out.records;
        text = doc.dump(2) + "\n";
    } else {
        std::ostringstream os;
        os << "# manifest " << out.manifest.dump() << "\n";
        for (size_t i = 0; i < out.columns.size(); ++i)
            os << (i ? "," : "") << out.columns[i];
        os << "\n";
        for (const json& r : out.records) {
            for (size_t i = 0; i < out.columns.size(); ++i)
                os << (i ? "," : "")
                   << csv_cell(r.contains(out.columns[i]) ? r[out.columns[i]]
                                                          : json());
            os << "\n";
        }
        text = os.str();
    }
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        std::ofstream f(path, std::ios::binary);
        if (!f) {
            std::cerr << "cannot open output file: " << path << "\n";
            return 2;
        }
        f << text;
    }
    return 0;
}

json make_manifest(const std::string& command, json params,
                   std::uint64_t seed, json tolerances) {
    return {{"command", command},
            {"params", std::move(params)},
            {"seed", seed},
            {"tolerances", std::move(tolerances)},
            {"version", kVersion}};
}

// ---------------------------------------------------------------- constants

struct ConstantsArgs {
    std::string n = "2", a = "1", p = "2", alpha = "", kind = "sobolev";
    std::string norm = "lq:2";
};

int cmd_constants(const ConstantsArgs& args, const std::string& out_path,
                  const std::string& format) {
    const auto ns = parse_ints(args.n);
    const auto as = parse_doubles(args.a);
    const auto ps = parse_doubles(args.p);
    const auto alphas =
        args.alpha.empty() ? std::vector<double>{} : parse_doubles(args.alpha);
    const double qn = parse_norm_exponent(args.norm);

    std::vector<std::string> kinds;
    {
        std::stringstream ss(args.kind);
        std::string tok;
        while (std::getline(ss, tok, ',')) kinds.push_back(tok);
        if (kinds.size() == 1 && kinds[0] == "all")
            kinds = {"sobolev", "gn", "logsob"};
        for (const auto& k : kinds)
            if (k != "sobolev" && k != "gn" && k != "logsob")
                throw CLI::ValidationError("unknown kind: " + k);
        std::sort(kinds.begin(), kinds.end());
    }
    if (std::find(kinds.begin(), kinds.end(), "gn") != kinds.end() &&
        alphas.empty())
        throw CLI::ValidationError("kind gn needs --alpha");

    struct Task { std::string kind; int n; double a, p, alpha; };
    std::vector<Task> tasks;
    for (const auto& k : kinds)
        for (int n : ns)
            for (double a : as)
                for (double p : ps) {
                    if (k == "gn")
                        for (double al : alphas) tasks.push_back({k, n, a, p, al});
                    else
                        tasks.push_back({k, n, a, p, 0.0});
                }

    std::vector<json> records(tasks.size());
    run_pool(static_cast<int>(tasks.size()), [&](int i) {
        const Task& t = tasks[i];
        json r{{"kind", t.kind}, {"n", t.n}, {"m", 1}, {"a", t.a},
               {"p", t.p},       {"norm", args.norm}};
        if (t.kind == "gn") r["alpha"] = t.alpha;
        try {
            const auto dom =
                WeightedDomain::half_space(t.n, t.a, NormSpec::lq(qn, t.n));
            SharpConstant c;
            if (t.kind == "sobolev")
                c = t.p == 1.0 ? sobolev_l1_constant(dom)
                               : sobolev_constant(dom, t.p);
            else if (t.kind == "gn")
                c = gn_constant(dom, t.p, t.alpha);
            else
                c = logsob_constant(dom, t.p);
            r["status"] = "ok";
            r["log_value"] = c.log_value;
            r["value"] = c.value();
            if (t.kind == "gn") {
                r["theta"] = c.theta;
            }
        } catch (const std::exception& e) {
            r["status"] = std::string("parameter-error: ") + e.what();
        }
        records[i] = r;
    });

    Output out;
    out.manifest = make_manifest(
        "constants",
        {{"n", args.n}, {"a", args.a}, {"p", args.p}, {"alpha", args.alpha},
         {"kind", args.kind}, {"norm", args.norm}, {"format", format}},
        kDefaultSeed, json::object());
    out.columns = {"kind", "n", "m", "a", "p", "alpha", "norm",
                   "status", "log_value", "value", "theta"};
    out.records = std::move(records);
    return write_output(out, out_path, format);
}

// ------------------------------------------------------------------ verify

struct VerifyArgs {
    std::string suite = "all";
    std::string alpha = "";
    bool quick = false;
    double tol = 0.0; // 0 = per-check default
    std::uint64_t seed = kDefaultSeed;
};

json quotient_record(const std::string& suite, const std::string& check,
                     const QuotientReport& q, json params) {
    return {{"suite", suite},   {"check", check},
            {"params", std::move(params)}, {"lhs", q.lhs},
            {"rhs", q.rhs},     {"deficit", q.deficit},
            {"tolerance", q.tolerance},    {"pass", q.pass}};
}

json gap_record(const std::string& suite, const std::string& check,
                double gap, double tol, json params) {
    return {{"suite", suite}, {"check", check}, {"params", std::move(params)},
            {"gap", gap},     {"tolerance", tol}, {"pass", gap >= -tol}};
}

json eq_record(const std::string& suite, const std::string& check,
               double gap, double tol, json params) {
    return {{"suite", suite}, {"check", check}, {"params", std::move(params)},
            {"gap", gap},     {"tolerance", tol},
            {"pass", std::abs(gap) <= tol}};
}

std::vector<std::pair<int, double>> verify_domains() {
    return {{1, 0.5}, {2, 1.0}, {3, 2.5}};
}

void verify_sobolev(const VerifyArgs& va, std::vector<json>& recs) {
    const double tol = va.tol > 0 ? va.tol : 1e-8;
    const int seeds = va.quick ? 3 : 10;
    for (auto [n, a] : verify_domains()) {
        const auto dom = WeightedDomain::half_space(n, a, NormSpec::lq(2.0, n));
        for (double p : {1.5, 2.0}) {
            if (p >= dom.n_a) continue;
            json par{{"n", n}, {"a", a}, {"p", p}};
            auto q = sobolev_quotient(dom, p, sobolev_extremal(dom, p), tol);
            q.pass = std::abs(q.deficit) <= tol;
            recs.push_back(quotient_record("sobolev", "extremal-equality", q, par));
            for (std::uint64_t s = 1; s <= static_cast<std::uint64_t>(seeds); ++s) {
                const auto f = random_spline_profile(
                    dom, va.seed + s, (dom.n_a - p) / p + 0.2);
                auto qs = sobolev_quotient(dom, p, f, tol);
                json ps = par;
                ps["seed"] = va.seed + s;
                recs.push_back(quotient_record("sobolev", "random-soundness", qs, ps));
            }
        }
    }
}

void verify_gn(const VerifyArgs& va, std::vector<json>& recs) {
    const double tol = va.tol > 0 ? va.tol : 1e-7;
    const auto alphas = va.alpha.empty() ? std::vector<double>{0.5, 0.9, 1.8}
                                         : parse_doubles(va.alpha);
    const int seeds = va.quick ? 2 : 6;
    for (auto [n, a] : verify_domains()) {
        const auto dom = WeightedDomain::half_space(n, a, NormSpec::lq(2.0, n));
        for (double p : {1.5, 2.0}) {
            if (p >= dom.n_a) continue;
            for (double al : alphas) {
                json par{{"n", n}, {"a", a}, {"p", p}, {"alpha", al}};
                try {
                    auto q = gn_quotient(dom, p, al, gn_extremal(dom, p, al), tol);
                    q.pass = std::abs(q.deficit) <= tol;
                    recs.push_back(quotient_record("gn", "extremal-equality", q, par));
                } catch (const std::exception& e) {
                    recs.push_back({{"suite", "gn"}, {"check", "extremal-equality"},
                                    {"params", par},
                                    {"status", std::string("parameter-error: ") + e.what()},
                                    {"pass", true}});
                    continue;
                }
                for (std::uint64_t s = 1; s <= static_cast<std::uint64_t>(seeds); ++s) {
                    const double pa = al * p - al + 1.0;
                    const double mt = std::max({dom.n_a / (al * p), dom.n_a / pa,
                                                (dom.n_a - p) / p}) + 0.3;
                    const auto f = random_spline_profile(dom, va.seed + s, mt);
                    auto qs = gn_quotient(dom, p, al, f, 1e-8);
                    json ps = par;
                    ps["seed"] = va.seed + s;
                    recs.push_back(quotient_record("gn", "random-soundness", qs, ps));
                }
            }
        }
    }
}

void verify_logsob(const VerifyArgs& va, std::vector<json>& recs) {
    const double tol = va.tol > 0 ? va.tol : 1e-7;
    const int seeds = va.quick ? 3 : 10;
    for (auto [n, a] : verify_domains()) {
        const auto dom = WeightedDomain::half_space(n, a, NormSpec::lq(2.0, n));
        for (double p : {1.5, 2.0}) {
            json par{{"n", n}, {"a", a}, {"p", p}};
            for (double c : {0.5, 2.0}) {
                auto q = logsob_deficit(dom, p, logsob_extremal(dom, p, c), tol);
                q.pass = std::abs(q.deficit) <= tol;
                json ps = par;
                ps["c"] = c;
                recs.push_back(quotient_record("logsob", "gaussian-equality", q, ps));
            }
            for (std::uint64_t s = 1; s <= static_cast<std::uint64_t>(seeds); ++s) {
                // generous tail margin: the entropy integrand carries an
                // extra ln f factor, so slow tails strain the quadrature
                const auto f =
                    random_spline_profile(dom, va.seed + s, dom.n_a / p + 0.6);
                auto qs = logsob_deficit(dom, p, f, 1e-8);
                json ps = par;
                ps["seed"] = va.seed + s;
                recs.push_back(quotient_record("logsob", "random-soundness", qs, ps));
            }
        }
        // p = 1: ball indicators achieve equality via the perimeter term
        for (double R : {0.5, 2.0}) {
            auto q = logsob_deficit(dom, 1.0, indicator_extremal(dom, R, 1.0), tol);
            q.pass = std::abs(q.deficit) <= tol;
            recs.push_back(quotient_record("logsob", "indicator-equality", q,
                                           {{"n", n}, {"a", a}, {"R", R}}));
        }
    }
}

void verify_duality(const VerifyArgs& va, std::vector<json>& recs) {
    const double tol = va.tol > 0 ? va.tol : 1e-7;
    for (auto [n, a] : verify_domains()) {
        const auto dom = WeightedDomain::half_space(n, a, NormSpec::lq(2.0, n));
        const double p = 1.5;
        if (p >= dom.n_a) continue;
        const double ps = dom.n_a * p / (dom.n_a - p);
        const auto h = sobolev_extremal(dom, p);
        json par{{"n", n}, {"a", a}, {"p", p}};
        const auto eq = duality_gap_sobolev(dom, p, h, h);
        recs.push_back(eq_record("duality", "sobolev-extremal-pair",
                                 eq.gap, tol, par));
        const auto g = perturb(dom, h, 1.0, 0.5, 0.05, ps);
        recs.push_back(gap_record("duality", "sobolev-perturbed-g",
                                  duality_gap_sobolev(dom, p, h, g).gap, 1e-8, par));
        const double q = p / (p - 1.0);
        const double mu_p = std::pow(q, 1.0 / q);
        for (double al : {1.8, 0.5}) {
            json pa = par;
            pa["alpha"] = al;
            if (al > 1.0 && al > dom.n_a / (dom.n_a - p)) continue;
            const auto hg = gn_extremal(dom, p, al);
            const auto e2 = duality_gap_gn(dom, p, al, hg, hg, mu_p);
            recs.push_back(eq_record("duality", "gn-extremal-pair",
                                     e2.gap, tol, pa));
            const auto off = duality_gap_gn(dom, p, al, hg, hg, 1.5 * mu_p);
            json po = pa;
            po["mu_factor"] = 1.5;
            recs.push_back({{"suite", "duality"}, {"check", "gn-mu-strictness"},
                            {"params", po}, {"gap", off.gap},
                            {"tolerance", 1e-4}, {"pass", off.gap > 1e-4}});
        }
    }
}

void verify_dimred(const VerifyArgs& va, std::vector<json>& recs) {
    const double tol = va.tol > 0 ? va.tol : 1e-10;
    struct Case { int n; double p, a; };
    for (const Case& c : {Case{1, 2.0, 0.0}, Case{1, 2.5, 0.0},
                          Case{2, 1.5, 1.0}, Case{3, 2.0, 0.0}}) {
        json par{{"n", c.n}, {"p", c.p}, {"a", c.a}};
        try {
            const auto rep =
                dimension_reduction_check(c.n, c.p, c.a, NormSpec::lq(2.0, c.n));
            const bool ok = std::abs(rep.diff) <= tol &&
                            std::abs(rep.extremal_ratio - 1.0) <= 1e-8;
            recs.push_back({{"suite", "dimred"}, {"check", "assembly-vs-closed"},
                            {"params", par}, {"branch", rep.branch},
                            {"diff", rep.diff},
                            {"extremal_ratio", rep.extremal_ratio},
                            {"tolerance", tol}, {"pass", ok}});
        } catch (const std::exception& e) {
            // points outside the admissible p-range are reported, not failed
            recs.push_back({{"suite", "dimred"}, {"check", "assembly-vs-closed"},
                            {"params", par},
                            {"status", std::string("parameter-error: ") + e.what()},
                            {"pass", true}});
        }
    }
}

void verify_tensor(const VerifyArgs& va, std::vector<json>& recs) {
    (void)va;
    struct Case { int n; double a, p; };
    for (const Case& c : {Case{1, 1.0, 1.5}, Case{2, 0.5, 3.0}}) {
        const auto block =
            WeightedDomain::half_space(c.n, c.a, NormSpec::lq(2.0, c.n));
        const auto rep = tensorization_limit(block, c.p, {2, 10, 50, 200, 1000});
        json par{{"n", c.n}, {"a", c.a}, {"p", c.p}};
        const double g200 = std::abs(rep.rel_gap[3]);
        const double g1000 = std::abs(rep.rel_gap[4]);
        const bool ok = g200 <= 0.01 && g1000 <= 0.002 && rep.gap_monotone;
        recs.push_back({{"suite", "tensor"}, {"check", "stirling-limit"},
                        {"params", par}, {"rel_gap_200", rep.rel_gap[3]},
                        {"rel_gap_1000", rep.rel_gap[4]},
                        {"monotone", rep.gap_monotone}, {"pass", ok}});
    }
}

void verify_transport(const VerifyArgs& va, std::vector<json>& recs) {
    const double tol = va.tol > 0 ? va.tol : 1e-8;
    const int seeds = va.quick ? 4 : 12;
    const auto dom = WeightedDomain::half_space(2, 1.0, NormSpec::lq(2.0, 2));
    const double gmin = 1.0 - 1.0 / dom.n_a;
    const auto F0 = bump_density(dom, 1.2, 3.0);
    const auto eq = lemma21_check(dom, gmin, F0, F0);
    recs.push_back(eq_record("transport", "identity-equality", eq.gap, 1e-7,
                             {{"n", 2}, {"a", 1.0}, {"gamma", gmin}}));
    for (std::uint64_t s = 1; s <= static_cast<std::uint64_t>(seeds); ++s) {
        const auto F = random_bump_density(dom, va.seed + 2 * s);
        const auto G = random_bump_density(dom, va.seed + 2 * s + 1);
        for (double gamma : {gmin, 1.2, 2.0}) {
            const auto r = lemma21_check(dom, gamma, F, G);
            recs.push_back(gap_record("transport", "random-pair-gap", r.gap, tol,
                                      {{"n", 2}, {"a", 1.0}, {"gamma", gamma},
                                       {"seed", va.seed + 2 * s}}));
        }
    }
    const auto F = random_bump_density(dom, va.seed + 101);
    const auto G = random_bump_density(dom, va.seed + 102);
    for (double gamma : {gmin, 1.5}) {
        const auto d = lemma21_decomposition(dom, gamma, F, G);
        const bool ok = d.amgm_term >= -1e-8 && d.boundary_term >= -1e-8 &&
                        std::abs(d.residual) <= 1e-6;
        recs.push_back({{"suite", "transport"}, {"check", "gap-decomposition"},
                        {"params", {{"n", 2}, {"a", 1.0}, {"gamma", gamma}}},
                        {"amgm_term", d.amgm_term},
                        {"boundary_term", d.boundary_term},
                        {"residual", d.residual}, {"pass", ok}});
    }
}

int cmd_verify(const VerifyArgs& va, const std::string& out_path,
               const std::string& format) {
    static const std::vector<std::string> known{
        "sobolev", "gn", "logsob", "duality", "dimred", "tensor", "transport"};
    if (va.suite != "all" &&
        std::find(known.begin(), known.end(), va.suite) == known.end())
        throw CLI::ValidationError("unknown suite: " + va.suite);
    if (!va.alpha.empty())
        for (double al : parse_doubles(va.alpha))
            if (al == 1.0)
                throw CLI::ValidationError(
                    "alpha = 1 is excluded from the GN family");

    std::vector<json> recs;
    auto want = [&](const char* s) {
        return va.suite == "all" || va.suite == s;
    };
    if (want("sobolev")) verify_sobolev(va, recs);
    if (want("gn")) verify_gn(va, recs);
    if (want("logsob")) verify_logsob(va, recs);
    if (want("duality")) verify_duality(va, recs);
    if (want("dimred")) verify_dimred(va, recs);
    if (want("tensor")) verify_tensor(va, recs);
    if (want("transport")) verify_transport(va, recs);

    int failures = 0;
    for (const json& r : recs)
        if (!r.value("pass", true)) ++failures;

    Output out;
    out.manifest = make_manifest(
        "verify",
        {{"suite", va.suite}, {"alpha", va.alpha}, {"quick", va.quick},
         {"format", format}},
        va.seed, {{"tol", va.tol}});
    out.manifest["failures"] = failures;
    out.columns = {"suite", "check", "params", "lhs", "rhs", "deficit",
                   "gap", "tolerance", "pass", "status"};
    for (json& r : recs)
        if (r.contains("params") && !r["params"].is_string())
            r["params"] = r["params"].dump();
    out.records = std::move(recs);
    const int rc = write_output(out, out_path, format);
    if (rc != 0) return rc;
    if (failures > 0) {
        std::cerr << failures << " verification record(s) failed\n";
        return 1;
    }
    return 0;
}

// ---------------------------------------------------------------- optimize

struct OptimizeArgs {
    int n = 2;
    double a = 1.0, p = 2.0, alpha = 0.0;
    std::string kind = "sobolev", init = "gaussian", norm = "lq:2";
    int budget = 5000, restarts = 3;
    std::uint64_t seed = kDefaultSeed;
};

int cmd_optimize(const OptimizeArgs& oa, const std::string& out_path,
                 const std::string& format) {
    QuotientKind kind;
    if (oa.kind == "sobolev") kind = QuotientKind::Sobolev;
    else if (oa.kind == "gn-super") kind = QuotientKind::GNsuper;
    else if (oa.kind == "gn-sub") kind = QuotientKind::GNsub;
    else if (oa.kind == "logsob") kind = QuotientKind::LogSob;
    else throw CLI::ValidationError("unknown objective kind: " + oa.kind);

    const auto dom = WeightedDomain::half_space(
        oa.n, oa.a, NormSpec::lq(parse_norm_exponent(oa.norm), oa.n));
    RadialProfile init;
    if (oa.init == "gaussian") {
        init = logsob_extremal(dom, std::max(oa.p, 1.5), 0.5);
    } else if (oa.init == "extremal") {
        init = kind == QuotientKind::Sobolev ? sobolev_extremal(dom, oa.p)
               : kind == QuotientKind::LogSob ? logsob_extremal(dom, oa.p, 1.0)
                                              : gn_extremal(dom, oa.p, oa.alpha);
    } else if (oa.init.rfind("spline:", 0) == 0) {
        const auto s = std::stoull(oa.init.substr(7));
        init = random_spline_profile(dom, s, dom.n_a / std::min(oa.p, 1.5) + 0.5);
    } else {
        throw CLI::ValidationError("unknown init: " + oa.init);
    }

    OptimizerOptions opts;
    opts.budget = oa.budget;
    opts.restarts = oa.restarts;
    opts.seed = oa.seed;
    const auto run = minimize_quotient(dom, kind, oa.p, oa.alpha, init, opts);

    Output out;
    out.manifest = make_manifest(
        "optimize",
        {{"n", oa.n}, {"a", oa.a}, {"p", oa.p}, {"alpha", oa.alpha},
         {"kind", oa.kind}, {"init", oa.init}, {"norm", oa.norm},
         {"budget", oa.budget}, {"restarts", oa.restarts}, {"format", format}},
        oa.seed, json::object());
    out.columns = {"kind", "initial_value", "best_value", "sharp_value",
                   "rel_gap", "evaluations", "converged", "sound"};
    out.records = {{{"kind", oa.kind},
                    {"initial_value", run.initial_value},
                    {"best_value", run.best_value},
                    {"sharp_value", run.sharp_value},
                    {"rel_gap", run.best_value / run.sharp_value - 1.0},
                    {"evaluations", run.evaluations},
                    {"converged", run.converged},
                    {"sound", run.best_value >= run.sharp_value - 1e-6}}};
    return write_output(out, out_path, format);
}

// ---------------------------------------------------------------- transport

struct TransportArgs {
    int n = 2;
    double a = 1.0;
    std::string gamma = "";
    std::string seeds = "1..4";
    std::uint64_t seed = kDefaultSeed;
};

int cmd_transport(const TransportArgs& ta, const std::string& out_path,
                  const std::string& format) {
    const auto dom =
        WeightedDomain::half_space(ta.n, ta.a, NormSpec::lq(2.0, ta.n));
    const double gmin = 1.0 - 1.0 / dom.n_a;
    const auto gammas =
        ta.gamma.empty() ? std::vector<double>{gmin, 1.2, 2.0}
                         : parse_doubles(ta.gamma);
    const auto seeds = parse_ints(ta.seeds);

    std::vector<json> recs;
    for (int s : seeds) {
        const auto F = random_bump_density(dom, ta.seed + 2 * s);
        const auto G = random_bump_density(dom, ta.seed + 2 * s + 1);
        for (double gamma : gammas) {
            json r{{"n", ta.n}, {"a", ta.a}, {"seed", s}, {"gamma", gamma}};
            try {
                const auto d = lemma21_decomposition(dom, gamma, F, G);
                r["status"] = "ok";
                r["lhs"] = d.totals.lhs;
                r["rhs"] = d.totals.rhs;
                r["gap"] = d.totals.gap;
                r["amgm_term"] = d.amgm_term;
                r["boundary_term"] = d.boundary_term;
                r["residual"] = d.residual;
            } catch (const std::exception& e) {
                r["status"] = std::string("parameter-error: ") + e.what();
            }
            recs.push_back(std::move(r));
        }
    }

    Output out;
    out.manifest = make_manifest(
        "transport",
        {{"n", ta.n}, {"a", ta.a}, {"gamma", ta.gamma}, {"seeds", ta.seeds},
         {"format", format}},
        ta.seed, json::object());
    out.columns = {"n", "a", "seed", "gamma", "status", "lhs", "rhs",
                   "gap", "amgm_term", "boundary_term", "residual"};
    out.records = std::move(recs);
    return write_output(out, out_path, format);
}

// ---------------------------------------------------------------- plotdata

struct PlotArgs {
    std::string kind;
    int n = 2;
    double a = 1.0, p = 2.0, alpha = 2.0;
    std::uint64_t seed = kDefaultSeed;
};

int cmd_plotdata(const PlotArgs& pa, const std::string& out_path,
                 const std::string& format) {
    const auto dom =
        WeightedDomain::half_space(pa.n, pa.a, NormSpec::lq(2.0, pa.n));
    Output out;
    out.manifest = make_manifest(
        "plotdata",
        {{"kind", pa.kind}, {"n", pa.n}, {"a", pa.a}, {"p", pa.p},
         {"alpha", pa.alpha}, {"format", format}},
        pa.seed, json::object());

    if (pa.kind == "extremal-profiles") {
        out.columns = {"profile", "r", "value"};
        struct Named { const char* name; RadialProfile f; };
        std::vector<Named> profs;
        profs.push_back({"sobolev", sobolev_extremal(dom, pa.p)});
        profs.push_back({"gn", gn_extremal(dom, pa.p, pa.alpha)});
        profs.push_back({"gaussian", logsob_extremal(dom, pa.p, 1.0)});
        for (const auto& np : profs)
            for (int i = 0; i <= 200; ++i) {
                const double r = 0.01 * std::pow(1e4, i / 200.0);
                out.records.push_back(
                    {{"profile", np.name}, {"r", r}, {"value", np.f.value(r)}});
            }
    } else if (pa.kind == "deficit-vs-perturbation") {
        out.columns = {"amplitude", "deficit"};
        const double ps = dom.n_a * pa.p / (dom.n_a - pa.p);
        const auto h = sobolev_extremal(dom, pa.p);
        for (int i = 0; i <= 20; ++i) {
            const double eps = 0.01 * i;
            const auto f =
                eps == 0.0 ? h : perturb(dom, h, 1.0, 0.5, eps, ps);
            out.records.push_back(
                {{"amplitude", eps},
                 {"deficit", sobolev_quotient(dom, pa.p, f).deficit}});
        }
    } else if (pa.kind == "tensorization-convergence") {
        out.columns = {"k", "log_ck", "log_limit", "rel_gap"};
        const auto rep = tensorization_limit(
            dom, pa.p, {2, 5, 10, 20, 50, 100, 200, 500, 1000});
        for (size_t i = 0; i < rep.k.size(); ++i)
            out.records.push_back({{"k", rep.k[i]},
                                   {"log_ck", rep.log_ck[i]},
                                   {"log_limit", rep.log_limit},
                                   {"rel_gap", rep.rel_gap[i]}});
    } else if (pa.kind == "transport-map") {
        out.columns = {"r", "psi", "psi_prime"};
        const auto F = random_bump_density(dom, pa.seed);
        const auto G = random_bump_density(dom, pa.seed + 1);
        const auto map = radial_brenier(dom, F, G);
        for (int i = 1; i <= 200; ++i) {
            const double r = map.source_support * i / 200.0;
            out.records.push_back({{"r", r},
                                   {"psi", map.psi(r)},
                                   {"psi_prime", map.psi_prime(r)}});
        }
    } else {
        throw CLI::ValidationError("unknown plotdata kind: " + pa.kind);
    }
    return write_output(out, out_path, format);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sharp weighted Sobolev / Gagliardo-Nirenberg inequality "
                 "verification toolkit"};
    app.require_subcommand(1);

    std::string out_path, format = "json";
    bool format_given = false;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", out_path, "output file (default stdout)");
        sub->add_option("--format", format, "json|csv")
            ->check(CLI::IsMember({"json", "csv"}))
            ->each([&](const std::string&) { format_given = true; });
    };

    ConstantsArgs ca;
    auto* c = app.add_subcommand("constants", "sharp constant tables");
    add_common(c);
    c->add_option("--n", ca.n, "ambient dimensions, e.g. 1..3 or 1,2");
    c->add_option("--a", ca.a, "weight exponents, comma list");
    c->add_option("--p", ca.p, "integrability exponents, comma list");
    c->add_option("--alpha", ca.alpha, "GN alphas, comma list");
    c->add_option("--kind", ca.kind, "sobolev,gn,logsob or all");
    c->add_option("--norm", ca.norm, "norm spec lq:<q>");

    VerifyArgs va;
    auto* v = app.add_subcommand("verify", "verification suites");
    add_common(v);
    v->add_option("suite", va.suite,
                  "sobolev|gn|logsob|duality|dimred|tensor|transport|all");
    v->add_option("--alpha", va.alpha, "GN alphas override");
    v->add_flag("--quick", va.quick, "reduced seed counts");
    v->add_option("--tol", va.tol, "tolerance override");
    v->add_option("--seed", va.seed, "base seed");

    OptimizeArgs oa;
    auto* o = app.add_subcommand("optimize", "quotient minimization");
    add_common(o);
    o->add_option("--n", oa.n);
    o->add_option("--a", oa.a);
    o->add_option("--p", oa.p);
    o->add_option("--alpha", oa.alpha);
    o->add_option("--kind", oa.kind, "sobolev|gn-super|gn-sub|logsob");
    o->add_option("--init", oa.init, "gaussian|extremal|spline:<seed>");
    o->add_option("--norm", oa.norm);
    o->add_option("--budget", oa.budget);
    o->add_option("--restarts", oa.restarts);
    o->add_option("--seed", oa.seed);

    TransportArgs ta;
    auto* t = app.add_subcommand("transport", "transport inequality demos");
    add_common(t);
    t->add_option("--n", ta.n);
    t->add_option("--a", ta.a);
    t->add_option("--gamma", ta.gamma, "comma list");
    t->add_option("--seeds", ta.seeds, "density pair seeds, list or range");
    t->add_option("--seed", ta.seed, "base seed");

    PlotArgs pa;
    auto* pl = app.add_subcommand("plotdata", "plot-ready tables");
    add_common(pl);
    pl->add_option("kind", pa.kind,
                   "extremal-profiles|deficit-vs-perturbation|"
                   "tensorization-convergence|transport-map")
        ->required();
    pl->add_option("--n", pa.n);
    pl->add_option("--a", pa.a);
    pl->add_option("--p", pa.p);
    pl->add_option("--alpha", pa.alpha);
    pl->add_option("--seed", pa.seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const auto t0 = std::chrono::steady_clock::now();
    int rc = 0;
    try {
        if (*c) {
            rc = cmd_constants(ca, out_path, format);
        } else if (*v) {
            rc = cmd_verify(va, out_path, format);
        } else if (*o) {
            rc = cmd_optimize(oa, out_path, format);
        } else if (*t) {
            rc = cmd_transport(ta, out_path, format);
        } else if (*pl) {
            rc = cmd_plotdata(pa, out_path,
                              format_given ? format : "csv");
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    std::cerr << "wall_time_s " << wall << "\n";
    return rc;
}
