// covdens: certified density bounds, covering decisions and primitive lists.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>

#include "covdens/moments.hpp"
#include "covdens/multiples.hpp"
#include "covdens/partition.hpp"
#include "covdens/primitives.hpp"
#include "covdens/report.hpp"
#include "covdens/solver.hpp"

namespace fs = std::filesystem;
using namespace covdens;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitMissingCache = 3;
constexpr int kExitCertification = 4;

struct RunConfig {
    std::size_t q_index = 10000;
    int bits = kDefaultBits;
    int z_exponent = 46;
    unsigned threads = 1;
    std::string mode = "abundant";
    bool shared_w = false;
    long timeout_ms = 30000;
    std::string cache_dir;
    std::string output;
    std::string number;
    std::string limit = "1000";
    std::string variant = "stronger";
    std::string primitives_file;
};

fs::path cache_dir(const RunConfig& c) {
    if (!c.cache_dir.empty()) return c.cache_dir;
    if (const char* env = std::getenv("COVDENS_CACHE_DIR")) return env;
    return ".covdens-cache";
}

/// Writes to --output when given, else stdout.
void emit(const RunConfig& c, const std::string& text) {
    if (c.output.empty() || c.output == "-") {
        std::cout << text;
        return;
    }
    std::ofstream os(c.output);
    os << text;
}

/// Accepts plain digits, "10^k" and "1ek".
BigInt parse_big(const std::string& s) {
    std::smatch m;
    if (std::regex_match(s, m, std::regex(R"((\d+)\^(\d+))"))) {
        BigInt r;
        mpz_ui_pow_ui(r.get_mpz_t(), std::stoul(m[1]), std::stoul(m[2]));
        return r;
    }
    if (std::regex_match(s, m, std::regex(R"((\d+)[eE](\d+))"))) {
        BigInt r;
        mpz_ui_pow_ui(r.get_mpz_t(), 10, std::stoul(m[2]));
        return r * BigInt(m[1].str());
    }
    if (std::regex_match(s, std::regex(R"(\d+)"))) return BigInt(s);
    throw CLI::ValidationError("limit", "not an integer: " + s);
}

int cmd_moments_build(const RunConfig& c) {
    const fs::path dir = cache_dir(c);
    fs::create_directories(dir);
    const fs::path p = dir / MomentCache::file_name(c.q_index, c.bits);
    MomentCache m = MomentCache::build(c.q_index, c.bits, [](double f) {
        std::cerr << "\rsweep " << static_cast<int>(100 * f) << "%" << std::flush;
    });
    std::cerr << '\n';
    m.save(p);
    std::cout << p.string() << '\n';
    return kExitOk;
}

int cmd_bounds(const RunConfig& c) {
    const fs::path p = cache_dir(c) / MomentCache::file_name(c.q_index, c.bits);
    if (!fs::exists(p)) {
        std::cerr << "moment cache not found: " << p.string() << " (run `covdens moments build --q-index " << c.q_index
                  << " --bits " << c.bits << "`)\n";
        return kExitMissingCache;
    }
    MomentCache cache = MomentCache::load(p);
    EngineOptions o;
    o.mode = c.mode == "covering" ? EngineMode::Covering : EngineMode::Abundant;
    o.z_exponent = c.z_exponent;
    o.threads = c.threads;
    o.shared_w = c.shared_w;
    PartitionEngine engine(cache, o);
    BoundsReport r = engine.run();
    emit(c, bounds_to_json(r).dump() + "\n");
    std::cerr << r.upper.to_labelled(kReportDigits) << '\n' << r.lower.to_labelled(kReportDigits) << '\n';
    if (r.lower.compare(r.upper) > 0) {
        std::cerr << "certification failure: lower exceeds upper\n";
        return kExitCertification;
    }
    return kExitOk;
}

int cmd_decide(const RunConfig& c) {
    BigInt n = parse_big(c.number);
    if (n < 2 || !n.fits_ulong_p()) throw CLI::ValidationError("N", "must be an integer in [2, 2^64)");
    const Factorization f = factorize(n.get_ui());
    SolveBudget b;
    b.time = std::chrono::milliseconds(c.timeout_ms);
    SolveOutcome o = decide_covering(f, b);
    std::ostringstream os;
    os << status_name(o.status) << '\n';
    if (o.status == SolveStatus::Covering) os << witness_text(o.witness);
    emit(c, os.str());
    std::cerr << "nodes " << o.nodes_explored << ", " << o.elapsed.count() << " ms\n";
    if (o.status == SolveStatus::Covering && !verify_cover(f, o.witness)) {
        std::cerr << "certification failure: witness does not cover\n";
        return kExitCertification;
    }
    return kExitOk;
}

int cmd_primitives(const RunConfig& c) {
    BigInt lim = parse_big(c.limit);
    if (!lim.fits_ulong_p()) throw CLI::ValidationError("limit", "too large");
    SolveBudget b;
    b.time = std::chrono::milliseconds(c.timeout_ms);
    std::ostringstream os;
    write_csv_header(os);
    if (lim >= 2)
        for (const auto& r : enumerate_primitives(lim.get_ui(), b)) write_csv_row(os, r);
    emit(c, os.str());
    return kExitOk;
}

int cmd_table1(const RunConfig& c) {
    const StructuredVariant v = c.variant == "sun" ? StructuredVariant::Sun : StructuredVariant::Stronger;
    emit(c, std::to_string(count_structured(parse_big(c.limit), v)) + "\n");
    return kExitOk;
}

int cmd_clower(const RunConfig& c) {
    std::ifstream is(c.primitives_file);
    if (!is) throw CLI::ValidationError("--primitives", "cannot read " + c.primitives_file);
    std::vector<std::uint64_t> g;
    std::string line;
    const std::regex lead(R"(^\s*(\d+))");
    while (std::getline(is, line)) {
        std::smatch m;
        if (line.find("Unknown") != std::string::npos || line.find("unknown") != std::string::npos) continue;
        if (std::regex_search(line, m, lead)) g.push_back(std::stoull(m[1]));
    }
    const MultiplesQuery q = MultiplesQuery::reduced(g);
    const DensityResult r = density_exact(q);
    std::ostringstream os;
    if (r.exact) {
        os << RoundedReal::from_rational(*r.exact, Direction::Down).to_labelled(kReportDigits) << " [exact density of multiples, "
           << q.generators().size() << " generators]\n";
    } else {
        int depth = q.generators().size() <= 40 ? 4 : 2;
        os << density_lower(q, depth).to_labelled(kReportDigits) << " [inclusion-exclusion truncated at depth " << depth
           << ", " << q.generators().size() << " generators]\n";
    }
    emit(c, os.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certified densities of abundant and covering numbers"};
    app.require_subcommand(1);
    RunConfig c;
    auto common = [&](CLI::App* s) {
        s->add_option("--cache-dir", c.cache_dir, "Moment cache directory (default $COVDENS_CACHE_DIR or .covdens-cache)");
        s->add_option("-o,--output", c.output, "Output file (default stdout)");
    };

    CLI::App* moments = app.add_subcommand("moments", "Moment tables");
    moments->require_subcommand(1);
    CLI::App* build = moments->add_subcommand("build", "Build and store a moment cache");
    build->add_option("--q-index", c.q_index, "Number of cached primes")->check(CLI::PositiveNumber);
    build->add_option("--bits", c.bits, "Precision in bits")->check(CLI::Range(static_cast<int>(kMinBits), 4096));
    common(build);

    CLI::App* bounds = app.add_subcommand("bounds", "Certified density bounds");
    bounds->add_option("--mode", c.mode)->check(CLI::IsMember({"abundant", "covering"}));
    bounds->add_option("--z-exp", c.z_exponent, "Z = 2^-z")->check(CLI::Range(1, 100));
    bounds->add_option("--q-index", c.q_index)->check(CLI::PositiveNumber);
    bounds->add_option("--bits", c.bits)->check(CLI::Range(static_cast<int>(kMinBits), 4096));
    bounds->add_option("--threads", c.threads)->check(CLI::PositiveNumber);
    bounds->add_flag("--shared-w", c.shared_w, "Classify W1 by h(a) >= 2 in covering mode too");
    common(bounds);

    CLI::App* decide = app.add_subcommand("decide", "Decide whether N is a covering number");
    decide->add_option("N", c.number)->required();
    decide->add_option("--timeout-ms", c.timeout_ms)->check(CLI::PositiveNumber);
    common(decide);

    CLI::App* prims = app.add_subcommand("primitives", "Primitive covering numbers as CSV");
    prims->add_option("--limit", c.limit)->required();
    prims->add_option("--timeout-ms", c.timeout_ms)->check(CLI::PositiveNumber);
    common(prims);

    CLI::App* table1 = app.add_subcommand("table1", "Count the structured primitive families");
    table1->add_option("--limit", c.limit)->required();
    table1->add_option("--variant", c.variant)->check(CLI::IsMember({"sun", "stronger"}));
    common(table1);

    CLI::App* clower = app.add_subcommand("clower", "Lower bound from the density of multiples");
    clower->add_option("--primitives", c.primitives_file)->required();
    common(clower);

    try {
        app.parse(argc, argv);
        if (*build) return cmd_moments_build(c);
        if (*bounds) return cmd_bounds(c);
        if (*decide) return cmd_decide(c);
        if (*prims) return cmd_primitives(c);
        if (*table1) return cmd_table1(c);
        if (*clower) return cmd_clower(c);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kExitUsage;
}
