#include <cstddef>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "slgamma/errors.hpp"
#include "slgamma/jorgensen.hpp"
#include "slgamma/matrix_io.hpp"
#include "slgamma/moebius.hpp"
#include "slgamma/scalar.hpp"

namespace {

using namespace slgamma;

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;      // unreadable input or bad usage
constexpr int kExitValidation = 2; // matrix fails the SL(Gamma) conditions
constexpr int kExitNotDiagonal = 3;
constexpr int kExitDiverged = 4;
constexpr int kExitBudget = 5;

struct Options {
    std::string mode;  // "", "rational" or "float"; files override when present
    double tol = 1e-12;
    std::size_t max_steps = 100;
    double overflow_bound = 1e30;
    std::string csv_path;
    std::uint64_t seed = 0;  // reserved for test generators; commands are deterministic
    std::vector<std::string> files;
    std::string r_range, w0_range;
};

/// Loads a matrix file and checks its scalar_mode against what the command
/// expects (set by the first file or by --mode).
nlohmann::json load_with_mode(const std::string& path, std::string& mode) {
    nlohmann::json j = io::load_json_file(path);
    const std::string file_mode = io::detect_scalar_mode(j);
    if (mode.empty()) {
        mode = file_mode;
    } else if (mode != file_mode) {
        throw Error("scalar mode mismatch: expected " + mode + ", file " + path +
                    " declares " + file_mode);
    }
    return j;
}

void emit(const std::string& text, const std::string& csv_path) {
    if (csv_path.empty()) {
        std::cout << text;
    } else {
        io::save_text_file(csv_path, text);
    }
}

template <class S>
int run_validate(const nlohmann::json& j, const Options& opt) {
    CliffordMatrix<S> g = io::matrix_from_json<S>(j);
    const ValidationOutcome out = validate_best(g, opt.tol);
    std::cout << "level=" << to_string(out.achieved) << " Delta=" << out.delta_text
              << "\n";
    if (!out.blocker.empty()) std::cout << "blocker: " << out.blocker << "\n";
    return out.achieved >= ValidationLevel::DeterminantChecked ? kExitOk
                                                               : kExitValidation;
}

template <class S>
std::pair<CliffordMatrix<S>, CliffordMatrix<S>> load_pair(const nlohmann::json& jf,
                                                          const nlohmann::json& jg,
                                                          double tol) {
    CliffordMatrix<S> f =
        validate(io::matrix_from_json<S>(jf), ValidationLevel::DeterminantChecked, tol);
    CliffordMatrix<S> g =
        validate(io::matrix_from_json<S>(jg), ValidationLevel::DeterminantChecked, tol);
    return {std::move(f), std::move(g)};
}

template <class S>
int run_jorgensen(const nlohmann::json& jf, const nlohmann::json& jg,
                  const Options& opt) {
    auto [f, g] = load_pair<S>(jf, jg, opt.tol);
    diagonal_hyperbolic_params(f, opt.tol);  // required shape; throws otherwise
    const JorgensenReport<S> rep = jorgensen_value(f, g, opt.tol);
    nlohmann::json j = io::report_to_json(rep);
    const S one = scalar_traits<S>::from_int(1);
    if (scalar_eq(rep.J, one, opt.tol)) {
        j["J_flag"] = "J = 1";
    } else if (rep.J < one) {
        j["J_flag"] = "J < 1";
    } else {
        j["J_flag"] = "J > 1";
    }
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

template <class S>
int run_iterate(const nlohmann::json& jf, const nlohmann::json& jg,
                const Options& opt) {
    auto [f, g] = load_pair<S>(jf, jg, opt.tol);
    const IterationTrace<S> trace =
        iterate(f, g, opt.max_steps, opt.tol, opt.overflow_bound);
    emit(io::trace_to_csv(trace), opt.csv_path);
    std::ostream& status = opt.csv_path.empty() ? std::cerr : std::cout;
    status << "status=" << to_string(trace.status)
           << " steps=" << trace.states.size() - 1 << "\n";
    switch (trace.status) {
        case IterationStatus::Converged: return kExitOk;
        case IterationStatus::Diverged: return kExitDiverged;
        case IterationStatus::BudgetExhausted: return kExitBudget;
    }
    return kExitBudget;
}

template <class S>
int run_certificate(const nlohmann::json& jf, const nlohmann::json& jg,
                    const Options& opt) {
    auto [f, g] = load_pair<S>(jf, jg, opt.tol);
    const CertificateOutcome<S> cert =
        strictness_certificate(f, g, opt.max_steps, opt.tol);
    std::cout << io::certificate_to_json(cert).dump(2) << "\n";
    return kExitOk;
}

/// Range syntax: comma-separated items, each a scalar literal or an
/// inclusive sweep "start:stop:step" in the active scalar mode.
template <class S>
std::vector<S> parse_range(const std::string& text) {
    const auto parse_one = [](const std::string& item) -> S {
        auto v = scalar_traits<S>::parse(item);
        if (!v) throw Error("bad range value: '" + item + "'");
        return *v;
    };
    std::vector<S> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        const std::string item = text.substr(pos, comma - pos);
        if (item.empty()) throw Error("empty range item");
        const std::size_t c1 = item.find(':');
        if (c1 == std::string::npos) {
            out.push_back(parse_one(item));
        } else {
            const std::size_t c2 = item.find(':', c1 + 1);
            if (c2 == std::string::npos) {
                throw Error("sweep must be start:stop:step, got '" + item + "'");
            }
            const S start = parse_one(item.substr(0, c1));
            const S stop = parse_one(item.substr(c1 + 1, c2 - c1 - 1));
            const S step = parse_one(item.substr(c2 + 1));
            const S zero = scalar_traits<S>::from_int(0);
            if (!(step > zero)) throw Error("sweep step must be positive");
            if (stop < start) throw Error("sweep stop must be >= start");
            S limit = stop;
            if constexpr (!scalar_traits<S>::exact) {
                limit += step * 1e-9;  // keep the endpoint despite roundoff
            }
            // start + i * step, not accumulation: keeps float grid points at
            // the nearest representable and rational sweeps in small terms
            for (long i = 0;; ++i) {
                const S v = start + scalar_traits<S>::from_int(i) * step;
                if (v > limit) break;
                out.push_back(v);
            }
        }
        pos = comma + 1;
    }
    return out;
}

template <class S>
int run_scan(const Options& opt) {
    const std::vector<S> r_values = parse_range<S>(opt.r_range);
    const std::vector<S> w0_values = parse_range<S>(opt.w0_range);
    const ScanResult<S> result =
        scan_grid(r_values, w0_values, opt.max_steps, opt.tol);
    for (const S& r : result.skipped_r) {
        std::cerr << "warning: skipped r = " << scalar_traits<S>::to_string(r)
                  << " (needs r != 0 and |r| != 1)\n";
    }
    emit(io::scan_to_csv(result.rows), opt.csv_path);
    return kExitOk;
}

int exit_code_for(const Error& e) {
    if (dynamic_cast<const NotDiagonalHyperbolic*>(&e)) return kExitNotDiagonal;
    if (dynamic_cast<const DeterminantNotOne*>(&e) ||
        dynamic_cast<const EntryNotVectorCondition*>(&e) ||
        dynamic_cast<const MissingGammaEvidence*>(&e)) {
        return kExitValidation;
    }
    return kExitParse;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Clifford-algebra Moebius group toolkit: SL(Gamma) validation, "
                 "Jorgensen functional, conjugation iteration, strictness "
                 "certificates and parameter scans"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--mode", opt.mode, "scalar mode (rational|float); file-based "
                                       "commands take the mode from the files")
        ->check(CLI::IsMember({"rational", "float"}));
    app.add_option("--tol", opt.tol, "absolute tolerance (float mode)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--max-steps", opt.max_steps, "iteration budget")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--overflow-bound", opt.overflow_bound,
                   "entry norm above which the iteration reports divergence")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--csv", opt.csv_path, "write CSV output to this path");
    app.add_option("--seed", opt.seed,
                   "reserved for test generators; commands are deterministic");

    CLI::App* cmd_validate =
        app.add_subcommand("validate", "check the SL(Gamma) conditions of a matrix");
    cmd_validate->add_option("matrix", opt.files, "matrix JSON file")
        ->required()
        ->expected(1);

    CLI::App* cmd_jorgensen = app.add_subcommand(
        "jorgensen", "evaluate J(f, g) = |tr^2(f) - 4| + |tr([f, g]) - 2|");
    cmd_jorgensen
        ->add_option("files", opt.files, "matrix JSON files: diagonal f, then g")
        ->required()
        ->expected(2);

    CLI::App* cmd_iterate = app.add_subcommand(
        "iterate", "run g_{m+1} = g_m f g_m^{-1} and emit the w_m trace CSV");
    cmd_iterate
        ->add_option("files", opt.files, "matrix JSON files: diagonal f, then g")
        ->required()
        ->expected(2);

    CLI::App* cmd_certificate = app.add_subcommand(
        "certificate", "replay the strictness argument on a candidate pair");
    cmd_certificate
        ->add_option("files", opt.files, "matrix JSON files: diagonal f, then g")
        ->required()
        ->expected(2);

    CLI::App* cmd_scan = app.add_subcommand(
        "scan", "certificate sweep over f = diag(r, 1/r), g = [[1, w0], [1, 1 + w0]]");
    cmd_scan->add_option("--r-range", opt.r_range,
                         "r values: comma list and/or start:stop:step sweeps")
        ->required();
    cmd_scan->add_option("--w0-range", opt.w0_range,
                         "w0 values: comma list and/or start:stop:step sweeps")
        ->required();
    cmd_scan->add_option("--steps", opt.max_steps, "certificate step budget")
        ->check(CLI::PositiveNumber);

    // global options remain usable after the subcommand name
    for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    }

    try {
        if (*cmd_scan) {
            if (opt.mode.empty()) opt.mode = "float";  // throughput default
            return opt.mode == "rational" ? run_scan<Rational>(opt)
                                          : run_scan<double>(opt);
        }
        std::string mode = opt.mode;
        std::vector<nlohmann::json> docs;
        docs.reserve(opt.files.size());
        for (const std::string& path : opt.files) {
            docs.push_back(load_with_mode(path, mode));
        }
        const bool rational = mode == "rational";
        if (*cmd_validate) {
            return rational ? run_validate<Rational>(docs[0], opt)
                            : run_validate<double>(docs[0], opt);
        }
        if (*cmd_jorgensen) {
            return rational ? run_jorgensen<Rational>(docs[0], docs[1], opt)
                            : run_jorgensen<double>(docs[0], docs[1], opt);
        }
        if (*cmd_iterate) {
            return rational ? run_iterate<Rational>(docs[0], docs[1], opt)
                            : run_iterate<double>(docs[0], docs[1], opt);
        }
        if (*cmd_certificate) {
            return rational ? run_certificate<Rational>(docs[0], docs[1], opt)
                            : run_certificate<double>(docs[0], docs[1], opt);
        }
        std::cerr << "no subcommand selected\n";
        return kExitParse;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
}
