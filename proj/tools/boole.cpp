// boole: estimate, verify and enumerate for affine Boole transformations.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "boole/cli.hpp"

namespace {

using boole::cli::RunConfig;

struct Flags {
    RunConfig config;
    std::string format = "json";
    std::string config_path;
    double x0 = 0.0;
};

/// Options shared by every subcommand. Returns name -> option for "was it given" checks.
std::vector<std::pair<std::string, CLI::Option*>> add_common(CLI::App& sub, Flags& f)
{
    std::vector<std::pair<std::string, CLI::Option*>> opts;
    opts.emplace_back("a", sub.add_option("--a", f.config.a, "location parameter a"));
    opts.emplace_back("b", sub.add_option("--b", f.config.b, "scale parameter b > 0"));
    opts.emplace_back("seed", sub.add_option("--seed", f.config.seed, "64-bit seed"));
    opts.emplace_back("format", sub.add_option("--format", f.format, "json or csv")
                                    ->check(CLI::IsMember({"json", "csv"})));
    opts.emplace_back("output", sub.add_option("--output,-o", f.config.output, "output path (default stdout)"));
    sub.add_option("--config", f.config_path, "JSON file with option overrides");
    return opts;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Lyapunov exponents, ergodic averages and integral identities of affine Boole maps"};
    app.require_subcommand(1);

    Flags f;
    std::vector<std::pair<std::string, CLI::Option*>> given;
    auto common = [&](CLI::App* sub) {
        auto o = add_common(*sub, f);
        given.insert(given.end(), o.begin(), o.end());
        return sub;
    };
    auto with_n = [&](CLI::App* sub, const char* help) {
        given.emplace_back("n", sub->add_option("--n", f.config.n, help));
        return sub;
    };
    auto with_x0 = [&](CLI::App* sub) {
        given.emplace_back("x0", sub->add_option("--x0", f.x0, "initial point (default: Cauchy(a,b) draw from --seed)"));
        return sub;
    };
    auto with_run = [&](CLI::App* sub) {
        given.emplace_back("burn_in", sub->add_option("--burn-in", f.config.burn_in, "iterates skipped before averaging"));
        given.emplace_back("replicas", sub->add_option("--replicas", f.config.replicas, "independent starting points"));
        given.emplace_back("threads", sub->add_option("--threads", f.config.threads, "worker threads (0: all cores)"));
        given.emplace_back("pole_tolerance",
                           sub->add_option("--pole-tol", f.config.pole_tolerance, "near-pole flag radius, units of b"));
        return sub;
    };

    auto* lyap = with_run(with_x0(with_n(common(app.add_subcommand("lyapunov", "Lyapunov exponent by Birkhoff average")),
                                         "orbit length")));
    auto* birk = with_run(with_x0(with_n(common(app.add_subcommand("birkhoff", "Birkhoff average of an observable")),
                                         "orbit length")));
    given.emplace_back("observable", birk->add_option("--observable", f.config.observable, "observable name"));
    auto* verify = common(app.add_subcommand("verify", "run the quadrature and invariance verification suite"));
    given.emplace_back("tol", verify->add_option("--tol", f.config.tol, "quadrature tolerance"));
    auto* orbit = with_x0(with_n(common(app.add_subcommand("orbit", "dump an orbit x_0..x_n")), "number of steps"));
    given.emplace_back("pole_tolerance", orbit->add_option("--pole-tol", f.config.pole_tolerance, "pole flag radius"));
    auto* exceptional = common(app.add_subcommand("exceptional", "enumerate starting points that hit the pole"));
    given.emplace_back("k", exceptional->add_option("--k", f.config.k, "depth, 1..8"));
    auto* sample = with_n(common(app.add_subcommand("sample", "draw Cauchy(a,b) samples")), "sample count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return boole::cli::kUsageError;
    }

    RunConfig& c = f.config;
    for (auto* sub : {lyap, birk, verify, orbit, exceptional, sample})
        if (sub->parsed())
            c.subcommand = sub->get_name();
    c.format = f.format == "csv" ? boole::cli::Format::csv : boole::cli::Format::json;

    std::vector<std::string> explicit_keys;
    for (const auto& [key, opt] : given)
        if (opt->count() > 0)
            explicit_keys.push_back(key);
    if (std::find(explicit_keys.begin(), explicit_keys.end(), "x0") != explicit_keys.end())
        c.x0 = f.x0;

    try {
        if (!f.config_path.empty()) {
            std::ifstream in(f.config_path);
            if (!in)
                throw boole::cli::UsageError("cannot open config file " + f.config_path);
            boole::cli::apply_json(c, boole::Json::parse(in), explicit_keys);
        }
    } catch (const boole::Json::exception& e) {
        std::cerr << "usage error: bad config file: " << e.what() << "\n";
        return boole::cli::kUsageError;
    } catch (const boole::cli::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return boole::cli::kUsageError;
    }

    boole::cli::CommandOutput result;
    try {
        result = boole::cli::run(c);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return boole::cli::kVerificationFailure;
    }

    if (c.output.empty()) {
        std::cout << result.out;
    } else {
        std::ofstream out(c.output, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write " << c.output << "\n";
            return boole::cli::kVerificationFailure;
        }
        out << result.out;
    }
    std::cerr << result.err;
    return result.status;
}
