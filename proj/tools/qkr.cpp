// Command-line front end: leakage tables, capacity sweeps, certificate
// verification, numerical POVM search and the artificial-noise extension.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qkr/capacity.hpp"
#include "qkr/povm_search.hpp"
#include "qkr/verify.hpp"

namespace {

using namespace qkr;

std::string csv_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string table_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct BetaRange {
    double lo = 0.0, hi = 0.0, step = 0.0;
};

BetaRange parse_range(const std::string& text, double max_hi) {
    BetaRange r;
    char colon1 = 0, colon2 = 0;
    std::istringstream in(text);
    if (!(in >> r.lo >> colon1 >> r.hi >> colon2 >> r.step) || colon1 != ':' ||
        colon2 != ':' || !(in >> std::ws).eof())
        throw CLI::ValidationError("--beta-range", "expected LO:HI:STEP");
    if (!(r.step > 0.0) || r.lo > r.hi || r.lo < 0.0 || r.hi > max_hi)
        throw CLI::ValidationError(
            "--beta-range", "need 0 <= LO <= HI <= " + table_num(max_hi) +
                                " and STEP > 0");
    return r;
}

std::vector<double> grid(const BetaRange& r) {
    std::vector<double> g;
    const int n = static_cast<int>(std::floor((r.hi - r.lo) / r.step + 1e-9));
    for (int i = 0; i <= n; ++i) g.push_back(r.lo + i * r.step);
    return g;
}

std::vector<Scheme> schemes_for(const std::string& filter) {
    if (filter == "4") return {four_state()};
    if (filter == "6") return {six_state()};
    if (filter == "8") return {eight_state()};
    return all_schemes();
}

std::vector<Measure> measures_for(const std::string& filter) {
    if (filter == "shannon") return {Measure::Shannon};
    if (filter == "min") return {Measure::MinEntropy};
    return {Measure::Shannon, Measure::MinEntropy};
}

/// Output sink: file when --out is given, stdout otherwise.
struct Sink {
    std::ofstream file;
    std::ostream* out = &std::cout;

    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file.open(path);
            if (!file)
                throw CLI::ValidationError("--out", "cannot open '" + path + "'");
            out = &file;
        }
    }
    std::ostream& stream() { return *out; }
};

std::string argmax_names(const std::vector<AttackKind>& set) {
    std::string s;
    for (AttackKind a : set) {
        if (!s.empty()) s += '+';
        s += attack_name(a);
    }
    return s;
}

int cmd_table(double beta, const std::string& measure_filter,
              const std::string& out_path) {
    check_noise(beta);
    Sink sink(out_path);
    std::ostream& os = sink.stream();
    for (Measure m : measures_for(measure_filter)) {
        os << (m == Measure::Shannon ? "Shannon leakage" : "Min-entropy leakage")
           << " at beta = " << table_num(beta) << "\n";
        os << "attack      4-state       6-state       8-state\n";
        for (AttackKind a : all_attacks()) {
            char line[160];
            std::snprintf(line, sizeof(line), "%-6s", attack_name(a));
            os << line;
            for (const auto& sc : all_schemes()) {
                const double v = leakage(sc, a, m, beta);
                const auto ml = max_leakage(sc, m, beta);
                const bool top = std::find(ml.argmax.begin(), ml.argmax.end(), a) !=
                                 ml.argmax.end();
                std::snprintf(line, sizeof(line), "%12s%s", table_num(v).c_str(),
                              top ? "*" : " ");
                os << line;
            }
            os << "\n";
        }
        os << "(* marks the strongest attack per scheme)\n\n";
    }
    return 0;
}

int cmd_sweep(const BetaRange& range, const std::string& scheme_filter,
              const std::string& measure_filter, const std::string& out_path) {
    Sink sink(out_path);
    std::ostream& os = sink.stream();
    os << "beta,scheme,measure,attack,leakage,capacity,argmax_attack\n";
    for (double beta : grid(range))
        for (const auto& sc : schemes_for(scheme_filter))
            for (Measure m : measures_for(measure_filter)) {
                const auto pt = capacity_point(sc, m, beta);
                const std::string top = argmax_names(pt.argmax);
                for (AttackKind a : all_attacks())
                    os << csv_num(beta) << ',' << sc.name() << ','
                       << measure_name(m) << ',' << attack_name(a) << ','
                       << csv_num(leakage(sc, a, m, beta)) << ','
                       << csv_num(pt.capacity_raw) << ',' << top << "\n";
            }
    return 0;
}

int cmd_verify(double perturb, const std::string& out_path) {
    Sink sink(out_path);
    std::ostream& os = sink.stream();
    const auto checks = run_checks(perturb);
    int fails = 0;
    for (const auto& c : checks) {
        os << "CHECK " << c.name << (c.pass ? " PASS " : " FAIL ") << c.detail
           << "\n";
        if (!c.pass) ++fails;
    }
    os << checks.size() << " checks, " << fails << " failures\n";
    return fails == 0 ? 0 : 1;
}

int cmd_search(const std::string& scheme_filter,
               const std::vector<double>& betas, std::uint64_t seed, int budget,
               const std::string& out_path) {
    if (scheme_filter == "all")
        throw CLI::ValidationError("--scheme", "search needs one scheme: 4, 6 or 8");
    Sink sink(out_path);
    std::ostream& os = sink.stream();
    const Scheme sc = schemes_for(scheme_filter)[0];
    for (double beta : betas) {
        check_noise(beta);
        SearchConfig cfg;
        cfg.outcomes = sc.size();
        cfg.symmetry = scheme_symmetry(sc);
        cfg.seed = seed;
        cfg.starts = budget;
        const auto ens = zeta_ensemble(sc, beta);
        const auto res = multi_start_search(ens, cfg);
        nlohmann::ordered_json rec;
        rec["scheme"] = sc.name();
        rec["beta"] = beta;
        rec["measure"] = "shannon";
        rec["seed"] = seed;
        rec["starts"] = budget;
        rec["best_entropy"] = res.entropy;
        rec["gap_to_conjecture"] = res.entropy - conjectured_entropy(sc, beta);
        rec["converged"] = res.converged;
        rec["rng"] = kRngName;
        os << rec.dump() << "\n";
    }
    return 0;
}

int cmd_noise(const BetaRange& range, const std::string& out_path) {
    Sink sink(out_path);
    std::ostream& os = sink.stream();
    os << "beta,epsilon_opt,capacity_plain,capacity_opt\n";
    for (double beta : grid(range)) {
        const auto n = optimize_epsilon(beta);
        os << csv_num(beta) << ',' << csv_num(n.eps_opt) << ','
           << csv_num(c_prime(0.0, beta)) << ',' << csv_num(n.c_opt) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"attacks, capacities and POVM search for qubit key recycling"};
    app.require_subcommand(1);

    std::string scheme = "all", measure = "both", out_path, range_text;
    double beta = 0.1, perturb = 0.0;
    std::uint64_t seed = 1;
    int budget = 729;
    std::vector<double> betas;

    auto* table = app.add_subcommand("table", "per-attack leakage table at one beta");
    table->add_option("--beta", beta, "bit error rate in [0, 1/2]");
    table->add_option("--measure", measure)->check(CLI::IsMember({"shannon", "min", "both"}));
    table->add_option("--out", out_path, "output path (default stdout)");

    auto* sweep = app.add_subcommand("sweep", "leakage/capacity CSV over a beta grid");
    sweep->add_option("--beta-range", range_text, "grid LO:HI:STEP")->required();
    sweep->add_option("--scheme", scheme)->check(CLI::IsMember({"4", "6", "8", "all"}));
    sweep->add_option("--measure", measure)->check(CLI::IsMember({"shannon", "min", "both"}));
    sweep->add_option("--out", out_path);

    auto* verify = app.add_subcommand("verify", "run the certificate and invariant suite");
    verify->add_option("--perturb", perturb, "tamper scale for sensitivity testing");
    verify->add_option("--out", out_path);

    auto* search = app.add_subcommand("search", "numerical POVM search (JSON lines)");
    search->add_option("--scheme", scheme)->check(CLI::IsMember({"4", "6", "8"}))->required();
    search->add_option("--beta", betas, "one or more bit error rates");
    search->add_option("--beta-range", range_text, "grid LO:HI:STEP");
    search->add_option("--seed", seed);
    search->add_option("--budget", budget, "number of local-search starts")
        ->check(CLI::PositiveNumber);
    search->add_option("--out", out_path);

    auto* noise = app.add_subcommand("noise", "artificial-noise capacity CSV");
    noise->add_option("--beta-range", range_text, "grid LO:HI:STEP within [0, 0.2]")->required();
    noise->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
        if (table->parsed()) return cmd_table(beta, measure, out_path);
        if (sweep->parsed())
            return cmd_sweep(parse_range(range_text, 0.5), scheme, measure, out_path);
        if (verify->parsed()) return cmd_verify(perturb, out_path);
        if (search->parsed()) {
            if (!range_text.empty())
                for (double b : grid(parse_range(range_text, 0.5)))
                    betas.push_back(b);
            if (betas.empty())
                throw CLI::ValidationError("--beta", "search needs --beta or --beta-range");
            return cmd_search(scheme, betas, seed, budget, out_path);
        }
        if (noise->parsed())
            return cmd_noise(parse_range(range_text, 0.2), out_path);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
