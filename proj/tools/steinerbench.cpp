// steinerbench: sampling, spectra, spanning-tree counts and limit laws of
// random Steiner complexes from the command line.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "steiner/steiner.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace steiner;

namespace {

struct Common {
    int d = 1;
    int k = 3;
    std::vector<unsigned> ns;
    int trials = 1;
    int trial = 0;
    std::uint64_t seed = 1;
    std::vector<int> radii;
    int lmax = 4;
    std::string out;
    std::string in;
    std::string format = "csv";
    bool deterministic = false;
    unsigned threads = 0;
};

json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

// Writes to the file, or stdout when path is empty.
void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(path);
    if (!os) throw ValidationError("cannot write " + path);
    os << text;
}

Vertex single_n(const Common& c) {
    if (c.ns.size() != 1) throw ValidationError("exactly one --n expected");
    return c.ns.front();
}

// Complex from --in, or sampled from (--d, --k, --n, --seed, --trial).
PureComplex load_or_sample(const Common& c) {
    if (!c.in.empty()) {
        std::ifstream is(c.in);
        if (!is) throw ValidationError("cannot read " + c.in);
        return read_complex(is);
    }
    const Vertex n = single_n(c);
    SeededRng rng(c.seed, trial_stream(n, c.trial));
    return steiner_complex(n, c.d, c.k, rng);
}

void add_model(CLI::App* s, Common& c) {
    s->add_option("--d", c.d, "dimension")->check(CLI::PositiveNumber);
    s->add_option("--k", c.k, "number of Steiner systems")->check(CLI::PositiveNumber);
    s->add_option("--n", c.ns, "vertex count(s)");
    s->add_option("--seed", c.seed, "master seed");
}

void add_input(CLI::App* s, Common& c) {
    add_model(s, c);
    s->add_option("--in", c.in, "complex file (header 'n d', one face per line)");
    s->add_option("--trial", c.trial, "trial index used when sampling")->check(CLI::NonNegativeNumber);
}

ExperimentConfig config_from(const Common& c) {
    ExperimentConfig cfg;
    cfg.d = c.d;
    cfg.k = c.k;
    cfg.ns.assign(c.ns.begin(), c.ns.end());
    cfg.trials = c.trials;
    cfg.radii = c.radii;
    cfg.seed = c.seed;
    cfg.lmax = c.lmax;
    cfg.out = c.out;
    cfg.format = c.format;
    cfg.threads = c.threads;
    cfg.deterministic = c.deterministic;
    return cfg;
}

int cmd_sample(const Common& c) {
    const Vertex n = single_n(c);
    if (c.trials == 1 && c.out.empty()) {
        SeededRng rng(c.seed, trial_stream(n, 0));
        write_complex(std::cout, steiner_complex(n, c.d, c.k, rng));
        return 0;
    }
    if (c.out.empty()) throw ValidationError("--out directory required for several trials");
    fs::create_directories(c.out);
    for (int t = 0; t < c.trials; ++t) {
        SeededRng rng(c.seed, trial_stream(n, t));
        const auto X = steiner_complex(n, c.d, c.k, rng);
        std::ofstream os(fs::path(c.out) / ("complex_n" + std::to_string(n) + "_t" + std::to_string(t) + ".txt"));
        write_complex(os, X);
    }
    return 0;
}

int cmd_spectrum(const Common& c, const std::string& op, std::size_t bins) {
    if (op != "laplacian" && op != "adjacency") throw ValidationError("--op must be laplacian or adjacency");
    const auto X = load_or_sample(c);
    const auto eigs = eigenvalues(op == "laplacian" ? laplacian_matrix(X) : adjacency_matrix(X));
    const auto s = esd(eigs, trivial_zero_count(X), c.lmax, bins);
    std::ostringstream os;
    os << "bin_lo,bin_hi,mass\n";
    for (std::size_t i = 0; i < bins; ++i)
        os << format_double(s.histogram.edges[i]) << ',' << format_double(s.histogram.edges[i + 1]) << ','
           << format_double(s.histogram.masses[i]) << '\n';
    json j;
    j["op"] = op;
    j["n"] = X.n();
    j["d"] = X.d();
    j["trivial_zero_count"] = s.trivial_zero_count;
    j["moments"] = s.moments;
    j["min_eigenvalue"] = s.eigenvalues.front();
    j["max_eigenvalue"] = s.eigenvalues.back();
    if (c.out.empty()) {
        std::cout << os.str() << j.dump(2) << '\n';
    } else {
        emit(c.out, os.str());
        emit(c.out + ".json", j.dump(2) + "\n");
    }
    return 0;
}

int cmd_sst(const Common& c, bool oracle) {
    const auto X = load_or_sample(c);
    const auto kr = kappa_d(X);
    json j;
    j["log_kappa"] = num(kr.log_kappa);
    j["kappa_root"] = kappa_root(kr, X.n(), X.d());
    j["trivial_zeros"] = kr.trivial_zero_count;
    j["flag"] = kr.nontrivial_zero_flag;
    if (kr.ambiguous_zero) j["warning"] = "eigenvalue close to the zero cut";
    if (oracle) j["exact"] = brute_force_kappa(X).str();
    emit(c.out, j.dump(2) + "\n");
    return 0;
}

int cmd_oracle(const Common& c) {
    const auto X = load_or_sample(c);
    const auto kr = kappa_d(X);
    const BigInt exact = brute_force_kappa(X);
    const double le = exact == 0 ? -INFINITY : std::log(exact.convert_to<double>());
    const bool agree = (exact == 0) ? kr.nontrivial_zero_flag : std::abs(le - kr.log_kappa) <= 1e-6;
    json j;
    j["exact"] = exact.str();
    j["log_exact"] = num(le);
    j["log_kappa"] = num(kr.log_kappa);
    j["agree"] = agree;
    emit(c.out, j.dump(2) + "\n");
    return agree ? 0 : 1;
}

int cmd_limit(const Common& c, const std::string& table) {
    const LimitLawParams p(c.d, c.k);
    json j;
    j["d"] = c.d;
    j["k"] = c.k;
    j["support_nu"] = {p.I_lo, p.I_hi};
    j["support_mu"] = {p.J_lo, p.J_hi};
    if (c.k >= c.d + 2) {
        j["xi_closed_form"] = xi_closed_form(c.d, c.k);
        j["xi_quadrature"] = xi_quadrature(c.d, c.k);
        j["xi_chebyshev"] = xi_chebyshev(c.d, c.k);
        j["chebyshev_terms"] = chebyshev_plan(p).N;
    }
    std::vector<double> m;
    for (int l = 0; l <= c.lmax; ++l) m.push_back(nu_moment(p, l));
    j["nu_moments"] = m;
    if (table.empty()) {
        emit(c.out, j.dump(2) + "\n");
        return 0;
    }
    double lo = 0, hi = 0;
    long steps = 0;
    char s1 = 0, s2 = 0;
    std::istringstream ts(table);
    if (!(ts >> lo >> s1 >> hi >> s2 >> steps) || s1 != ':' || s2 != ':' || steps < 2 || !(hi > lo))
        throw ValidationError("--table expects lo:hi:steps with steps >= 2");
    std::ostringstream os;
    os << "x,nu,mu\n";
    for (long i = 0; i < steps; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
        os << format_double(x) << ',' << format_double(nu_density(p, x)) << ',' << format_double(mu_density(p, x)) << '\n';
    }
    std::cerr << j.dump(2) << '\n';
    emit(c.out, os.str());
    return 0;
}

int cmd_local(const Common& c) {
    const Vertex n = single_n(c);
    if (c.radii.empty()) throw ValidationError("--r required");
    auto cfg = config_from(c);
    cfg.validate();
    std::vector<std::vector<double>> fr(static_cast<std::size_t>(c.trials));
    std::vector<std::string> failed(fr.size());
    detail::parallel_for(fr.size(), c.threads, [&](std::size_t t) {
        try {
            SeededRng rng(c.seed, trial_stream(n, static_cast<int>(t)));
            const auto X = steiner_complex(n, c.d, c.k, rng);
            for (int r : c.radii) fr[t].push_back(arboreal_fraction(X, c.k, r));
        } catch (const SamplerExhausted& e) {
            failed[t] = e.what();
        }
    });
    std::ostringstream os;
    if (c.format == "json") {
        json rows = json::array();
        for (std::size_t t = 0; t < fr.size(); ++t)
            for (std::size_t i = 0; i < fr[t].size(); ++i)
                rows.push_back({{"trial", t}, {"n", n}, {"r", c.radii[i]}, {"fraction", fr[t][i]}});
        os << rows.dump(2) << '\n';
    } else {
        os << "trial,n,r,fraction\n";
        for (std::size_t t = 0; t < fr.size(); ++t)
            for (std::size_t i = 0; i < fr[t].size(); ++i)
                os << t << ',' << n << ',' << c.radii[i] << ',' << format_double(fr[t][i]) << '\n';
    }
    emit(c.out, os.str());
    for (const auto& f : failed)
        if (!f.empty()) throw SamplerExhausted(f);
    return 0;
}

int cmd_converge(const Common& c, const std::string& save_dir) {
    const auto cfg = config_from(c);
    ComplexSink sink;
    if (!save_dir.empty()) {
        fs::create_directories(save_dir);
        sink = [&](Vertex n, int t, const PureComplex& X) {
            std::ofstream os(fs::path(save_dir) / ("complex_n" + std::to_string(n) + "_t" + std::to_string(t) + ".txt"));
            write_complex(os, X);
        };
    }
    const auto rows = run_converge(cfg, sink);
    std::ostringstream os;
    if (cfg.format == "json") {
        json arr = json::array();
        for (const auto& r : rows) {
            json o;
            o["n"] = r.n;
            o["trial"] = r.trial;
            o["status"] = r.ok ? "ok" : "skipped";
            if (!r.ok) o["reason"] = r.reason;
            o["kappa_root"] = num(r.kappa_root);
            o["log_kappa"] = num(r.log_kappa);
            o["trivial_zeros"] = r.trivial_zeros;
            o["min_degree"] = r.min_degree;
            o["max_degree"] = r.max_degree;
            o["spectral_floor"] = num(r.spectral_floor);
            o["arboreal_fractions"] = r.arboreal_fractions;
            o["moments"] = r.moments;
            arr.push_back(o);
        }
        json doc{{"schema", 1}, {"d", cfg.d}, {"k", cfg.k}, {"seed", cfg.seed}, {"rows", arr}};
        if (!cfg.deterministic) doc["generated"] = utc_timestamp();
        os << doc.dump(2) << '\n';
    } else {
        write_converge_csv(os, cfg, rows);
    }
    emit(cfg.out, os.str());
    return 0;
}

int cmd_gap(const Common& c, double eps) {
    auto cfg = config_from(c);
    cfg.gap_epsilon = eps;
    const auto rep = run_gap_report(cfg, single_n(c));
    for (const auto& w : rep.warnings) std::cerr << "warning: " << w << '\n';
    std::ostringstream os;
    if (cfg.format == "json") {
        json arr = json::array();
        for (const auto& t : rep.trials)
            arr.push_back({{"trial", t.trial},
                           {"ok", t.ok},
                           {"largest_nontrivial", num(t.largest_nontrivial)},
                           {"threshold", num(t.threshold)},
                           {"passes", t.passes},
                           {"min_degree", t.min_degree}});
        os << json{{"n", rep.n}, {"d", rep.d}, {"k", rep.k}, {"pass_fraction", rep.pass_fraction()},
                   {"warnings", rep.warnings}, {"trials", arr}}.dump(2)
           << '\n';
    } else {
        os << "# schema=1\ntrial,n,largest_nontrivial,threshold,passes,min_degree\n";
        for (const auto& t : rep.trials)
            os << t.trial << ',' << rep.n << ',' << format_double(t.largest_nontrivial) << ','
               << format_double(t.threshold) << ',' << (t.passes ? 1 : 0) << ',' << t.min_degree << '\n';
    }
    emit(cfg.out, os.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random Steiner complexes: spectra, spanning trees, limit laws"};
    app.require_subcommand(1);
    Common c;
    std::string op = "laplacian", table, save_dir;
    std::size_t bins = 40;
    bool oracle = false;
    double eps = 0.1;

    auto* sample = app.add_subcommand("sample", "sample Steiner complexes");
    add_model(sample, c);
    sample->add_option("--trials", c.trials)->check(CLI::PositiveNumber);
    sample->add_option("--out", c.out, "output directory");

    auto* spectrum = app.add_subcommand("spectrum", "spectral histogram and moments");
    add_input(spectrum, c);
    spectrum->add_option("--op", op)->check(CLI::IsMember({"laplacian", "adjacency"}));
    spectrum->add_option("--bins", bins)->check(CLI::PositiveNumber);
    spectrum->add_option("--lmax", c.lmax)->check(CLI::Range(0, 12));
    spectrum->add_option("--out", c.out, "CSV path; a .json sidecar is written next to it");

    auto* sst = app.add_subcommand("sst", "weighted spanning-tree count");
    add_input(sst, c);
    sst->add_flag("--oracle", oracle, "also run the exact enumeration");
    sst->add_option("--out", c.out);

    auto* orc = app.add_subcommand("oracle", "exact enumeration against the matrix-tree route");
    add_input(orc, c);
    orc->add_option("--out", c.out);

    auto* limit = app.add_subcommand("limit", "limiting laws and xi");
    limit->add_option("--d", c.d)->check(CLI::PositiveNumber);
    limit->add_option("--k", c.k)->check(CLI::PositiveNumber);
    limit->add_option("--lmax", c.lmax)->check(CLI::Range(0, 12));
    limit->add_option("--table", table, "lo:hi:steps density table");
    limit->add_option("--out", c.out);

    auto* local = app.add_subcommand("local", "fraction of arboreal neighbourhoods");
    add_model(local, c);
    local->add_option("--r", c.radii)->required();
    local->add_option("--trials", c.trials)->check(CLI::PositiveNumber);
    local->add_option("--format", c.format)->check(CLI::IsMember({"csv", "json"}));
    local->add_option("--threads", c.threads);
    local->add_option("--out", c.out);

    auto* conv = app.add_subcommand("converge", "ensemble convergence table");
    add_model(conv, c);
    conv->add_option("--trials", c.trials)->check(CLI::NonNegativeNumber);
    conv->add_option("--r", c.radii);
    conv->add_option("--lmax", c.lmax)->check(CLI::Range(0, 12));
    conv->add_option("--format", c.format)->check(CLI::IsMember({"csv", "json"}));
    conv->add_flag("--deterministic", c.deterministic, "omit the timestamp line");
    conv->add_option("--threads", c.threads);
    conv->add_option("--save-dir", save_dir, "persist every sampled complex here");
    conv->add_option("--out", c.out);

    auto* gap = app.add_subcommand("gap", "largest non-trivial adjacency eigenvalue");
    add_model(gap, c);
    gap->add_option("--trials", c.trials)->check(CLI::PositiveNumber);
    gap->add_option("--epsilon", eps);
    gap->add_option("--format", c.format)->check(CLI::IsMember({"csv", "json"}));
    gap->add_option("--threads", c.threads);
    gap->add_option("--out", c.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*sample) return cmd_sample(c);
        if (*spectrum) return cmd_spectrum(c, op, bins);
        if (*sst) return cmd_sst(c, oracle);
        if (*orc) return cmd_oracle(c);
        if (*limit) return cmd_limit(c, table);
        if (*local) return cmd_local(c);
        if (*conv) return cmd_converge(c, save_dir);
        if (*gap) return cmd_gap(c, eps);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const GuardExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const SamplerExhausted& e) {
        std::cerr << "sampler exhausted: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
