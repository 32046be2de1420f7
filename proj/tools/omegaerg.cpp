// Command-line front end: every subcommand maps onto one library entry
// point and emits CSV (stdout or --out). Exit codes: 0 success, 1 failed
// verification sweep or I/O error, 2 usage error.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "omegaerg/asymptotics.hpp"
#include "omegaerg/csv.hpp"
#include "omegaerg/dynamics.hpp"
#include "omegaerg/maximal.hpp"
#include "omegaerg/rearrangement.hpp"
#include "omegaerg/weights.hpp"

namespace oe = omegaerg;

namespace {

struct RunConfig {
    std::string subcommand;
    std::uint64_t k_max = 1000000;
    std::string kind_name = "big-omega";
    std::vector<std::uint64_t> checkpoints;
    std::string corpus = "delta";
    std::vector<std::uint64_t> seeds{1};
    std::string out_path = "-";
    std::string cache_path;
    unsigned verbosity = 0;

    oe::WeightKind kind() const {
        if (kind_name == "little-omega") return oe::WeightKind::LittleOmega;
        if (kind_name == "big-omega") return oe::WeightKind::BigOmega;
        throw std::invalid_argument("unknown weight kind: " + kind_name);
    }
};

class OutputFile {
public:
    explicit OutputFile(const std::string& path) {
        if (path != "-") {
            file_.open(path, std::ios::binary);
            if (!file_) throw std::runtime_error("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
}

oe::WeightTable obtain_table(const RunConfig& cfg) {
    if (cfg.cache_path.empty()) return oe::build_weight_table(cfg.k_max, cfg.kind());
    std::filesystem::path path(cfg.cache_path);
    if (path.is_relative()) {
        if (const char* dir = std::getenv("OMEGAERG_CACHE_DIR")) path = std::filesystem::path(dir) / path;
    }
    if (std::filesystem::exists(path)) {
        oe::WeightTable table = oe::load_weight_table_file(path.string());
        if (table.k_max() != cfg.k_max || table.kind() != cfg.kind())
            throw std::runtime_error("cache file does not match requested table: " + path.string());
        return table;
    }
    oe::WeightTable table = oe::build_weight_table(cfg.k_max, cfg.kind());
    oe::dump_weight_table_file(table, path.string());
    return table;
}

// ---- corpus -------------------------------------------------------------

// delta | indicator:<len> | random:<density>:<seed>; the scale sweep
// resizes indicator and random members, deltas have no length.
struct CorpusSpec {
    enum class Kind { Delta, Indicator, Random } kind = Kind::Delta;
    std::uint64_t len = 4096;
    double density = 0.1;
    std::uint64_t seed = 1;
};

CorpusSpec parse_corpus(const std::string& text) {
    const auto parts = split(text, ':');
    CorpusSpec spec;
    if (parts.empty()) throw std::invalid_argument("empty corpus spec");
    if (parts[0] == "delta") {
        if (parts.size() != 1) throw std::invalid_argument("delta takes no parameters");
        spec.kind = CorpusSpec::Kind::Delta;
    } else if (parts[0] == "indicator") {
        spec.kind = CorpusSpec::Kind::Indicator;
        if (parts.size() == 2) spec.len = std::stoull(parts[1]);
        else if (parts.size() != 1) throw std::invalid_argument("indicator:<len>");
    } else if (parts[0] == "random") {
        spec.kind = CorpusSpec::Kind::Random;
        if (parts.size() != 3) throw std::invalid_argument("random:<density>:<seed>");
        spec.density = std::stod(parts[1]);
        spec.seed = std::stoull(parts[2]);
        if (!(spec.density > 0.0 && spec.density <= 1.0))
            throw std::invalid_argument("corpus density must lie in (0,1]");
    } else {
        throw std::invalid_argument("unknown corpus: " + parts[0]);
    }
    return spec;
}

// Random members carry Exp(1) masses: real-valued heights make level sets
// at lambda = 1 nontrivial, unlike 0/1 indicators.
oe::LatticeFunction make_corpus_member(const CorpusSpec& spec, std::uint64_t len) {
    switch (spec.kind) {
    case CorpusSpec::Kind::Delta:
        return oe::LatticeFunction(1, {1.0});
    case CorpusSpec::Kind::Indicator:
        return oe::LatticeFunction(1, std::vector<double>(len, 1.0));
    case CorpusSpec::Kind::Random: {
        std::mt19937_64 rng(spec.seed);
        std::vector<double> mass(len, 0.0);
        for (auto& v : mass) {
            const double u1 = static_cast<double>(rng() >> 11) * 0x1p-53;
            const double u2 = static_cast<double>(rng() >> 11) * 0x1p-53;
            if (u1 < spec.density) v = -std::log1p(-u2);
        }
        return oe::LatticeFunction(1, std::move(mass));
    }
    }
    throw std::logic_error("unreachable corpus kind");
}

// ---- subcommands ----------------------------------------------------------

int run_sieve(const RunConfig& cfg) {
    const oe::WeightTable table = obtain_table(cfg);
    OutputFile out(cfg.out_path);
    out.stream() << "n,g,prefix\n";
    for (std::uint64_t n = 1; n <= table.k_max(); ++n)
        out.stream() << n << ',' << table.value(n) << ',' << table.prefix_sum(n) << '\n';
    return 0;
}

int run_asymptotics(const RunConfig& cfg, const std::string& diagnostic, unsigned m) {
    const oe::WeightTable table = obtain_table(cfg);
    const std::vector<std::uint64_t> cps =
        cfg.checkpoints.empty() ? oe::default_checkpoints() : cfg.checkpoints;

    oe::RatioSeries series;
    double fitted = 0.0;
    bool has_fitted = false;
    std::string fitted_name;
    if (diagnostic == "hardy-wright") {
        series = oe::hardy_wright_drift(table, cps);
    } else if (diagnostic == "mertens") {
        auto f = oe::mertens_drift(table, cps);
        series = std::move(f.series);
        fitted = f.fitted; has_fitted = true; fitted_name = "empirical C_P";
    } else if (diagnostic == "norton") {
        series = oe::norton_ratio(table, cps);
    } else if (diagnostic == "power-sum") {
        auto f = oe::power_sum_ratio(table, cps);
        series = std::move(f.series);
        fitted = f.fitted; has_fitted = true; fitted_name = "fitted max constant";
    } else if (diagnostic == "delange") {
        series = oe::delange_ratio(table, m, cps);
    } else if (diagnostic == "s-power") {
        auto f = oe::s_power_lower_constant(table, cps);
        series = std::move(f.series);
        fitted = f.fitted; has_fitted = true; fitted_name = "fitted min constant";
    } else if (diagnostic == "dyadic") {
        const auto d = oe::dyadic_comparability(table, cps.back());
        series = {"dyadic_comparability", table.kind(), {cps.back()}, {d.c_r}};
        fitted = static_cast<double>(d.argmax_k); has_fitted = true; fitted_name = "argmax K";
    } else {
        throw std::invalid_argument("unknown diagnostic: " + diagnostic);
    }

    OutputFile out(cfg.out_path);
    oe::csvio::write_ratio_series(series, out.stream());
    if (has_fitted && cfg.verbosity > 0)
        std::cerr << series.label << ": " << fitted_name << " = "
                  << oe::csvio::format_real(fitted) << "\n";
    return 0;
}

int run_rearrange_test(const RunConfig& cfg, unsigned max_k, unsigned max_nu,
                       const std::string& grid, std::uint64_t samples) {
    const auto bounds = split(grid, '.');
    if (bounds.size() != 3 || !bounds[1].empty())
        throw std::invalid_argument("grid must look like a..b");
    const long long grid_lo = std::stoll(bounds[0]);
    const long long grid_hi = std::stoll(bounds[2]);
    if (grid_lo < 0 || grid_hi < grid_lo) throw std::invalid_argument("bad grid range");

    std::uint64_t cases = 0, passed = 0, failed = 0;
    long long min_slack = -1;
    bool have_slack = false;

    // Exhaustive part. Composing every permutation with a fixed one on the
    // right reindexes the outer sum, so the first permutation can be pinned
    // to the identity; each enumerated tuple represents a full class.
    for (unsigned k = 1; k <= max_k; ++k) {
        std::vector<std::uint32_t> identity(k);
        for (unsigned i = 0; i < k; ++i) identity[i] = i;
        std::vector<std::vector<std::uint32_t>> all_perms;
        {
            std::vector<std::uint32_t> p = identity;
            do all_perms.push_back(p);
            while (std::next_permutation(p.begin(), p.end()));
        }
        std::vector<long long> b(k, grid_lo);
        for (;;) {
            for (unsigned nu = 1; nu <= max_nu; ++nu) {
                // free permutations: positions 2..nu
                std::vector<std::size_t> idx(nu > 1 ? nu - 1 : 0, 0);
                for (;;) {
                    oe::PermutationSystem<long long> sys;
                    sys.b = b;
                    sys.perms.push_back(identity);
                    for (std::size_t i : idx) sys.perms.push_back(all_perms[i]);
                    const auto w = oe::verify_inequality(sys);
                    ++cases;
                    if (w.holds) ++passed; else ++failed;
                    const long long slack = w.rhs - w.lhs;
                    if (!have_slack || slack < min_slack) { min_slack = slack; have_slack = true; }
                    // advance the (nu-1)-digit counter over all_perms
                    std::size_t d = 0;
                    for (; d < idx.size(); ++d) {
                        if (++idx[d] < all_perms.size()) break;
                        idx[d] = 0;
                    }
                    if (d == idx.size()) break;
                }
            }
            // advance b over the grid
            unsigned d = 0;
            for (; d < k; ++d) {
                if (++b[d] <= grid_hi) break;
                b[d] = grid_lo;
            }
            if (d == k) break;
        }
    }

    // Random part: swap normalization on sampled systems.
    std::mt19937_64 rng(cfg.seeds.empty() ? 1 : cfg.seeds.front());
    std::uint64_t trace_failures = 0;
    for (std::uint64_t s = 0; s < samples; ++s) {
        const unsigned k = 1 + static_cast<unsigned>(rng() % max_k);
        const unsigned nu = 1 + static_cast<unsigned>(rng() % max_nu);
        oe::PermutationSystem<long long> sys;
        sys.b.resize(k);
        for (auto& v : sys.b)
            v = static_cast<long long>(rng() % static_cast<std::uint64_t>(grid_hi - grid_lo + 1)) +
                grid_lo;
        for (unsigned j = 0; j < nu; ++j) {
            std::vector<std::uint32_t> p(k);
            for (unsigned i = 0; i < k; ++i) p[i] = i;
            std::shuffle(p.begin(), p.end(), rng);
            sys.perms.push_back(std::move(p));
        }
        const auto w = oe::verify_inequality(sys);
        const auto res = oe::swap_normalize(sys);
        bool ok = w.holds && res.trace.back() == w.rhs;
        for (std::size_t i = 0; ok && i + 1 < res.trace.size(); ++i)
            if (res.trace[i + 1] < res.trace[i]) ok = false;
        ++cases;
        if (ok) ++passed; else { ++failed; ++trace_failures; }
        const long long slack = w.rhs - w.lhs;
        if (!have_slack || slack < min_slack) { min_slack = slack; have_slack = true; }
    }

    OutputFile out(cfg.out_path);
    out.stream() << "cases,passed,failed,min_slack\n"
                 << cases << ',' << passed << ',' << failed << ',' << min_slack << '\n';
    if (failed > 0) {
        std::cerr << "rearrange-test: " << failed << " failures ("
                  << trace_failures << " from swap traces)\n";
        return 1;
    }
    return 0;
}

int run_maximal(const RunConfig& cfg, double lambda, const std::string& mode_name,
                const std::vector<unsigned>& scale_exps) {
    const oe::WeightTable table = obtain_table(cfg);
    const CorpusSpec corpus = parse_corpus(cfg.corpus);
    const oe::MaximalMode mode = [&] {
        if (mode_name == "full") return oe::MaximalMode::Full;
        if (mode_name == "dyadic") return oe::MaximalMode::Dyadic;
        throw std::invalid_argument("mode must be full or dyadic");
    }();

    OutputFile out(cfg.out_path);
    out.stream() << "corpus,scale,lambda,count,l1,ratio\n";
    std::vector<std::uint64_t> lens;
    if (corpus.kind == CorpusSpec::Kind::Delta) {
        lens.push_back(1);
    } else if (scale_exps.empty()) {
        lens.push_back(corpus.len);
    } else {
        for (unsigned s : scale_exps) lens.push_back(std::uint64_t(1) << s);
    }
    for (std::uint64_t len : lens) {
        const oe::LatticeFunction phi = make_corpus_member(corpus, len);
        const oe::MaximalReport rep = oe::level_set_report(phi, lambda, table, mode);
        out.stream() << cfg.corpus << ',' << len << ',' << oe::csvio::format_real(lambda) << ','
                     << rep.level_count << ',' << oe::csvio::format_real(rep.l1_mass) << ','
                     << oe::csvio::format_real(rep.ratio) << '\n';
    }
    return 0;
}

int run_dynamics(const RunConfig& cfg, const std::string& system_name,
                 const std::string& observable_name, double alpha,
                 const std::string& p_list) {
    const oe::WeightTable table = obtain_table(cfg);
    const std::vector<std::uint64_t> cps =
        cfg.checkpoints.empty() ? oe::default_checkpoints() : cfg.checkpoints;

    std::vector<double> p;
    for (const auto& tok : split(p_list, ',')) if (!tok.empty()) p.push_back(std::stod(tok));

    const auto parts = split(observable_name, ':');
    oe::Observable obs = [&]() -> oe::Observable {
        if (parts[0] == "indicator") {
            if (parts.size() != 3) throw std::invalid_argument("indicator:<a>:<b>");
            return oe::Observable::interval_indicator(std::stod(parts[1]), std::stod(parts[2]));
        }
        if (parts[0] == "exponential") {
            if (parts.size() != 2) throw std::invalid_argument("exponential:<frequency>");
            return oe::Observable::exponential(std::stoi(parts[1]));
        }
        if (parts[0] == "cylinder") {
            if (parts.size() != 2) throw std::invalid_argument("cylinder:<word>");
            std::vector<std::uint32_t> word;
            for (char c : parts[1]) {
                if (c < '0' || c > '9') throw std::invalid_argument("cylinder word must be digits");
                word.push_back(static_cast<std::uint32_t>(c - '0'));
            }
            return oe::Observable::cylinder(std::move(word), p);
        }
        throw std::invalid_argument("unknown observable: " + parts[0]);
    }();

    OutputFile out(cfg.out_path);
    out.stream() << "system,observable,x0_index,K,weighted_error,unweighted_error\n";
    for (std::size_t i = 0; i < cfg.seeds.size(); ++i) {
        const std::uint64_t seed = cfg.seeds[i];
        oe::SystemSpec spec = [&] {
            if (system_name == "rotation")
                return alpha > 0.0 ? oe::SystemSpec::rotation(alpha) : oe::SystemSpec::rotation();
            if (system_name == "doubling") return oe::SystemSpec::doubling(seed);
            if (system_name == "bernoulli") return oe::SystemSpec::bernoulli(p, seed);
            throw std::invalid_argument("unknown system: " + system_name);
        }();
        double x0 = 0.0;
        if (spec.kind == oe::SystemSpec::Kind::Rotation) {
            std::mt19937_64 rng(seed);
            x0 = static_cast<double>(rng() >> 11) * 0x1p-53;
        }
        const oe::ConvergenceSeries series = oe::convergence_report(spec, obs, x0, cps, table);
        for (std::size_t c = 0; c < cps.size(); ++c)
            out.stream() << system_name << ',' << observable_name << ',' << i << ',' << cps[c]
                         << ',' << oe::csvio::format_real(series.weighted_error[c]) << ','
                         << oe::csvio::format_real(series.unweighted_error[c]) << '\n';
    }
    return 0;
}

int run_certify(const RunConfig& cfg, const std::vector<unsigned>& scale_exps) {
    const oe::WeightTable table = obtain_table(cfg);
    const CorpusSpec corpus = parse_corpus(cfg.corpus);

    std::vector<std::uint64_t> lens;
    if (corpus.kind == CorpusSpec::Kind::Delta) lens.push_back(1);
    else if (scale_exps.empty()) lens.push_back(corpus.len);
    else for (unsigned s : scale_exps) lens.push_back(std::uint64_t(1) << s);

    std::vector<oe::LatticeFunction> members;
    for (std::uint64_t len : lens) members.push_back(make_corpus_member(corpus, len));

    // Fitted constant from localized moment sweeps at scales with
    // floor(loglog K) = 2, then a factor-2 safety margin.
    std::vector<std::uint64_t> fit_scales;
    for (std::uint64_t k : {2048ull, 4096ull, 8192ull})
        if (k <= table.k_max()) fit_scales.push_back(k);
    double fitted = oe::fit_localized_constant(members, fit_scales, table);
    if (fitted <= 0.0) fitted = 0.5;  // degenerate corpus; keep thresholds finite
    const double c_gmax = 2.0 * fitted;

    OutputFile out(cfg.out_path);
    out.stream() << "corpus,scale,l1,direct,small_bound,rminus_bound,rplus_bound,"
                    "certificate_bound,cgmax,violations,ok\n";
    bool all_ok = true;
    for (std::size_t i = 0; i < members.size(); ++i) {
        const auto cert = oe::claim_certificate(members[i], table, c_gmax);
        all_ok = all_ok && cert.ok && cert.rminus_violations == 0;
        out.stream() << cfg.corpus << ',' << lens[i] << ','
                     << oe::csvio::format_real(cert.l1_mass) << ',' << cert.direct_count << ','
                     << oe::csvio::format_real(cert.small_bound) << ','
                     << oe::csvio::format_real(cert.rminus_bound) << ','
                     << oe::csvio::format_real(cert.rplus_bound) << ','
                     << oe::csvio::format_real(cert.certificate_bound) << ','
                     << oe::csvio::format_real(cert.c_gmax) << ',' << cert.rminus_violations
                     << ',' << (cert.ok ? 1 : 0) << '\n';
    }
    return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"prime-divisor weighted averages, maximal operators, and verification sweeps"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string checkpoints_text, seeds_text, scale_exps_text;

    auto add_common = [&](CLI::App* sub, bool with_table) {
        sub->add_option("--out", cfg.out_path, "output path, - for stdout");
        sub->add_flag_function("-v,--verbose", [&](std::int64_t n) { cfg.verbosity = static_cast<unsigned>(n); },
                               "print fitted constants to stderr");
        if (with_table) {
            sub->add_option("--kmax", cfg.k_max, "sieve bound")->check(CLI::PositiveNumber);
            sub->add_option("--kind", cfg.kind_name, "little-omega | big-omega")
                ->check(CLI::IsMember({"little-omega", "big-omega"}));
            sub->add_option("--cache", cfg.cache_path,
                            "binary table cache (OMEGAERG_CACHE_DIR prefixes relative paths)");
        }
    };

    auto* sieve = app.add_subcommand("sieve", "emit n, g(n), S_{g,n}");
    add_common(sieve, true);

    auto* asym = app.add_subcommand("asymptotics", "finite-K diagnostics of the prefix sums");
    std::string diagnostic = "hardy-wright";
    unsigned delange_m = 1;
    asym->add_option("--diagnostic", diagnostic,
                     "hardy-wright | mertens | norton | power-sum | delange | s-power | dyadic");
    asym->add_option("--m", delange_m, "moment for delange");
    asym->add_option("--checkpoints", checkpoints_text, "comma separated K values");
    add_common(asym, true);

    auto* rear = app.add_subcommand("rearrange-test", "exhaustive and random inequality sweeps");
    unsigned max_k = 4, max_nu = 3;
    std::string grid = "0..3";
    std::uint64_t samples = 0;
    rear->add_option("--max-k", max_k, "largest system size")->check(CLI::PositiveNumber);
    rear->add_option("--max-nu", max_nu, "largest permutation count")->check(CLI::PositiveNumber);
    rear->add_option("--grid", grid, "integer value grid a..b");
    rear->add_option("--samples", samples, "random swap-normalization samples");
    rear->add_option("--seed", seeds_text, "seed for the random part");
    add_common(rear, false);

    auto* maxi = app.add_subcommand("maximal", "level-set counts of the maximal operators");
    double lambda = 1.0;
    std::string mode_name = "full";
    maxi->add_option("--corpus", cfg.corpus, "delta | indicator:<len> | random:<density>:<seed>");
    maxi->add_option("--lambda", lambda, "level")->check(CLI::PositiveNumber);
    maxi->add_option("--mode", mode_name, "full | dyadic");
    maxi->add_option("--scale-exps", scale_exps_text, "support lengths 2^s, comma separated");
    add_common(maxi, true);

    auto* dyn = app.add_subcommand("dynamics", "weighted Birkhoff averages on model systems");
    std::string system_name = "rotation", observable_name = "indicator:0:0.5", p_list = "0.5,0.5";
    double alpha = 0.0;
    dyn->add_option("--system", system_name, "rotation | doubling | bernoulli");
    dyn->add_option("--observable", observable_name,
                    "indicator:<a>:<b> | exponential:<freq> | cylinder:<word>");
    dyn->add_option("--alpha", alpha, "rotation angle, 0 keeps the golden default");
    dyn->add_option("--p", p_list, "Bernoulli probabilities, comma separated");
    dyn->add_option("--seeds", seeds_text, "one starting point / system seed per entry");
    dyn->add_option("--checkpoints", checkpoints_text, "comma separated K values");
    add_common(dyn, true);

    auto* cert = app.add_subcommand("certify", "three-part level-set certificates");
    cert->add_option("--corpus", cfg.corpus, "delta | indicator:<len> | random:<density>:<seed>");
    cert->add_option("--scale-exps", scale_exps_text, "support lengths 2^s, comma separated");
    add_common(cert, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        cfg.checkpoints.clear();
        for (const auto& tok : split(checkpoints_text, ','))
            if (!tok.empty()) cfg.checkpoints.push_back(std::stoull(tok));
        if (!seeds_text.empty()) {
            cfg.seeds.clear();
            for (const auto& tok : split(seeds_text, ','))
                if (!tok.empty()) cfg.seeds.push_back(std::stoull(tok));
        }
        std::vector<unsigned> scale_exps;
        for (const auto& tok : split(scale_exps_text, ','))
            if (!tok.empty()) scale_exps.push_back(static_cast<unsigned>(std::stoul(tok)));

        if (sieve->parsed()) { cfg.subcommand = "sieve"; return run_sieve(cfg); }
        if (asym->parsed()) { cfg.subcommand = "asymptotics"; return run_asymptotics(cfg, diagnostic, delange_m); }
        if (rear->parsed()) { cfg.subcommand = "rearrange-test"; return run_rearrange_test(cfg, max_k, max_nu, grid, samples); }
        if (maxi->parsed()) { cfg.subcommand = "maximal"; return run_maximal(cfg, lambda, mode_name, scale_exps); }
        if (dyn->parsed()) { cfg.subcommand = "dynamics"; return run_dynamics(cfg, system_name, observable_name, alpha, p_list); }
        if (cert->parsed()) { cfg.subcommand = "certify"; return run_certify(cfg, scale_exps); }
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
