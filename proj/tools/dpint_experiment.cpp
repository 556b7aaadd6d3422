// Command-line front end for the experiment runner.
//
//   dpint-experiment <confine|degrees|heights|decompose> [--spec FILE] [flags]
//
// Flags override the values read from the spec file. Exit status:
//   0 success, 1 unexpected failure, 2 parse/validation failure,
//   3 singular orbit, 4 precision exhausted, 5 coefficient pole.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "dpint/experiment.hpp"

namespace {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kValidation = 2,
    kSingularOrbit = 3,
    kPrecisionExhausted = 4,
    kPole = 5,
};

struct Overrides {
    std::string spec_path;
    std::optional<std::string> out;
    std::optional<std::string> format;
    std::optional<long> window;
    std::optional<double> delta;
    std::optional<std::string> places;
    std::optional<long> steps;
    bool fast_degrees = false;
};

void add_options(CLI::App& sub, Overrides& o) {
    sub.add_option("--spec", o.spec_path, "experiment spec file (key = value lines)")->check(CLI::ExistingFile);
    sub.add_option("--out", o.out, "output path (default: stdout)");
    sub.add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub.add_option("--window", o.window, "Laurent window (orders kept past the leading term)");
    sub.add_option("--delta", o.delta, "delta in (0, 1/2)");
    sub.add_option("--places", o.places, "comma-separated places, e.g. 2,3,5,inf");
    sub.add_option("--steps", o.steps, "number of recurrence steps");
    sub.add_flag("--fast-degrees", o.fast_degrees, "modular degree computation (degrees only)");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw dpint::ValidationError("spec", "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

dpint::ExperimentSpec build_spec(dpint::ExperimentKind kind, const Overrides& o) {
    dpint::ExperimentSpec spec = dpint::ExperimentSpec::defaults(kind);
    if (!o.spec_path.empty()) {
        spec = dpint::parse_spec(read_file(o.spec_path));
        if (spec.kind != kind) {
            throw dpint::ValidationError("kind", std::string("spec file is '") + to_string(spec.kind) +
                                                     "' but the subcommand is '" + to_string(kind) + "'");
        }
    }
    if (o.out) spec.set("out", *o.out);
    if (o.format) spec.set("format", *o.format);
    if (o.window) spec.window = *o.window;
    if (o.delta) spec.delta = *o.delta;
    if (o.places) spec.set("places", *o.places);
    if (o.steps) spec.steps = *o.steps;
    if (o.fast_degrees) {
        if (kind != dpint::ExperimentKind::degrees) {
            throw dpint::ValidationError("fast_degrees", "only meaningful for the degrees subcommand");
        }
        spec.fast_degrees = true;
    }
    spec.validate();
    return spec;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Integrability experiments for y(j+1) + y(j-1) = (a y^2 + b y + c) / y^2"};
    app.set_version_flag("--version", std::string(dpint::kEngineName) + " " + dpint::kEngineVersion);
    app.require_subcommand(1);

    Overrides opts;
    std::optional<dpint::ExperimentKind> kind;
    for (auto k : {dpint::ExperimentKind::confine, dpint::ExperimentKind::degrees, dpint::ExperimentKind::heights,
                   dpint::ExperimentKind::decompose}) {
        CLI::App* sub = app.add_subcommand(to_string(k), std::string("run a ") + to_string(k) + " experiment");
        add_options(*sub, opts);
        sub->callback([&kind, k] { kind = k; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kValidation;
    }

    try {
        dpint::ExperimentSpec spec = build_spec(*kind, opts);
        dpint::RunReport report = dpint::run(spec);
        std::string text = report.render(spec.format);
        if (spec.out.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(spec.out);
            if (!out) throw std::runtime_error("cannot write '" + spec.out + "'");
            out << text;
        }
        return kOk;
    } catch (const dpint::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kValidation;
    } catch (const dpint::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kValidation;
    } catch (const dpint::SingularOrbitError& e) {
        std::cerr << "singular orbit: " << e.what() << "\n";
        return kSingularOrbit;
    } catch (const dpint::PrecisionExhausted& e) {
        std::cerr << "precision exhausted: " << e.what() << "\n";
        return kPrecisionExhausted;
    } catch (const dpint::PoleError& e) {
        std::cerr << "coefficient pole: " << e.what() << "\n";
        return kPole;
    } catch (const dpint::DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
}
