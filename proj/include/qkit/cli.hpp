// Copyright 2026 The qkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: a menu-driven interactive session and scriptable
// subcommands (backends, algorithms, run, experiment). Both take the
// registries as arguments, so algorithms or backends added at startup show
// up here without changes to this file.

#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "qkit/algorithms.hpp"
#include "qkit/experiments.hpp"

namespace qkit::cli {

inline constexpr const char *kConfigEnv = "QKIT_CONFIG";

/// Front-end settings, read from a key=value file named by $QKIT_CONFIG.
/// Recognised keys: backend, seed, verbosity, jobs, qubit_cap.
struct CliConfig {
    std::string default_backend = LocalStatevectorBackend::kName;
    std::optional<std::uint64_t> seed;  // unset: fresh entropy per run
    int verbosity = 1;                  // 0 hides circuit drawings and banners
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    std::size_t qubit_cap = kDefaultQubitCap;

    static CliConfig parse(std::string_view text) {
        CliConfig c;
        std::istringstream in{std::string(text)};
        std::string line;
        std::size_t lineno = 0;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        auto number = [](const std::string &key, const std::string &v) {
            return std::get<std::uint64_t>(
                parse_value(ParamSpec::natural(key, 0, std::numeric_limits<std::uint64_t>::max(), ""), v));
        };
        while (std::getline(in, line)) {
            ++lineno;
            line = trim(line);
            if (line.empty() || line[0] == '#') {
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                throw ValidationError("config", "line " + std::to_string(lineno) + " is not key=value");
            }
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key == "backend") {
                c.default_backend = value;
            } else if (key == "seed") {
                c.seed = number(key, value);
            } else if (key == "verbosity") {
                c.verbosity = static_cast<int>(std::min<std::uint64_t>(number(key, value), 2));
            } else if (key == "jobs") {
                c.jobs = static_cast<unsigned>(std::clamp<std::uint64_t>(number(key, value), 1, 1024));
            } else if (key == "qubit_cap") {
                c.qubit_cap = static_cast<std::size_t>(std::clamp<std::uint64_t>(number(key, value), 1, 30));
            } else {
                throw ValidationError("config", "unknown key '" + key + "' on line " + std::to_string(lineno));
            }
        }
        return c;
    }

    static CliConfig load(const std::string &path) {
        std::ifstream in(path);
        if (!in) {
            throw IoError("cannot read config file '" + path + "'");
        }
        std::stringstream buf;
        buf << in.rdbuf();
        return parse(buf.str());
    }

    static CliConfig from_environment() {
        const char *path = std::getenv(kConfigEnv);
        return path != nullptr && *path != '\0' ? load(path) : CliConfig{};
    }
};

/// The registries and settings a front end works against.
struct Toolkit {
    BackendRegistry backends;
    AlgorithmRegistry algorithms;
    CliConfig config;

    static Toolkit shipped(CliConfig config = {}) {
        Toolkit t{BackendRegistry::with_defaults(config.qubit_cap), shipped_algorithms(config.qubit_cap), config};
        t.backends.get(t.config.default_backend);
        return t;
    }
};

inline std::string quote_arg(const std::string &s) {
    if (!s.empty() && s.find_first_of(" \t'\"\\$") == std::string::npos) {
        return s;
    }
    std::string q = "'";
    for (char c : s) {
        q += c == '\'' ? std::string("'\\''") : std::string(1, c);
    }
    return q + "'";
}

/// Batch command line that reproduces a run.
inline std::string replay_command(const AlgorithmDescriptor &d, const Params &p, const AlgorithmResult &r) {
    std::ostringstream out;
    out << "run " << d.name;
    for (const auto &spec : d.params) {
        out << " --" << spec.name << " " << quote_arg(format_value(p.get(spec.name)));
    }
    out << " --backend " << r.backend << " --shots " << r.shots << " --seed " << r.seed;
    return out.str();
}

/// Shared by both front ends so equal seeds print equal results.
inline void print_result(std::ostream &out, const AlgorithmResult &r, int verbosity) {
    if (verbosity > 0 && !r.circuit.is_null()) {
        out << draw(r.circuit);
    }
    out << r.text << "\n";
    if (r.shots > 1) {
        out << render_histogram(r.counts);
    }
}

inline void print_backends(std::ostream &out, const BackendRegistry &backends) {
    for (const auto &b : backends.list()) {
        out << b.name << "  max_qubits=" << b.max_qubits << "  " << (b.deterministic ? "seeded" : "unseeded") << "  "
            << b.description << "\n";
    }
}

inline void print_algorithms(std::ostream &out, const AlgorithmRegistry &algorithms) {
    for (const auto &d : algorithms.descriptors()) {
        out << d.name << "  " << d.description << "\n";
        for (const auto &p : d.params) {
            out << "    --" << p.name << " <" << param_kind_name(p.kind) << ">  " << p.description << "\n";
        }
    }
}

/// Scriptable entry point. `args` excludes the program name.
/// Returns 0 on success (an aborted BB84 run is a success), 1 on usage or
/// validation errors, 2 on internal errors.
inline int batch_command(const std::vector<std::string> &args, const Toolkit &tk, std::ostream &out,
                         std::ostream &err) {
    CLI::App app{"qkit: quantum algorithm toolkit on an embedded statevector simulator", "qkit"};
    app.require_subcommand(1);
    bool quiet = false;
    app.add_flag("-q,--quiet", quiet, "omit circuit drawings");

    app.add_subcommand("backends", "list execution backends");
    app.add_subcommand("algorithms", "list algorithms and their parameters");

    auto *run = app.add_subcommand("run", "run an algorithm once or as a histogram");
    run->require_subcommand(1);
    struct RunOptions {
        std::map<std::string, std::string> raw;
        std::string backend;
        std::uint64_t shots = 1;
        std::optional<std::uint64_t> seed;
    };
    std::map<std::string, RunOptions> run_options;
    for (const auto &d : tk.algorithms.descriptors()) {
        auto &o = run_options[d.name];
        o.backend = tk.config.default_backend;
        auto *sub = run->add_subcommand(d.name, d.description);
        for (const auto &p : d.params) {
            sub->add_option("--" + p.name, o.raw[p.name], p.description)->required();
        }
        sub->add_option("--backend", o.backend, "backend name");
        sub->add_option("--shots", o.shots, "samples; 1 runs once, more gives a histogram");
        sub->add_option("--seed", o.seed, "seed for a replayable run");
    }

    auto *experiment = app.add_subcommand("experiment", "experimental mode");
    experiment->require_subcommand(1);
    auto *hist = experiment->add_subcommand("histogram", "repeat an algorithm and print outcome,count CSV");
    std::string hist_algorithm;
    std::vector<std::string> hist_params;
    std::uint64_t hist_shots = 1000;
    std::optional<std::uint64_t> hist_seed;
    std::string hist_backend = tk.config.default_backend;
    hist->add_option("--algorithm", hist_algorithm, "algorithm name")->required();
    hist->add_option("--params", hist_params, "parameter values in declaration order");
    hist->add_option("--shots", hist_shots, "number of samples");
    hist->add_option("--seed", hist_seed, "seed");
    hist->add_option("--backend", hist_backend, "backend name");

    auto *heat = experiment->add_subcommand("bb84-heatmap", "BB84 secure fraction over length x density");
    std::size_t max_bits = 0;
    double density_step = 0;
    std::uint64_t iterations = 0;
    std::optional<std::uint64_t> heat_seed;
    std::string heat_out;
    unsigned heat_jobs = tk.config.jobs;
    std::string heat_format = "ascii";
    heat->add_option("--max-bits", max_bits, "largest message length in bits")->required();
    heat->add_option("--density-step", density_step, "interception density step")->required();
    heat->add_option("--iterations", iterations, "protocol runs per cell")->required();
    heat->add_option("--seed", heat_seed, "master seed");
    heat->add_option("--out", heat_out, "write the grid as CSV to this file");
    heat->add_option("--jobs", heat_jobs, "worker threads");
    heat->add_option("--format", heat_format, "stdout format")->check(CLI::IsMember({"ascii", "csv"}));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return 1;
    }

    const int verbosity = quiet ? 0 : tk.config.verbosity;
    try {
        if (app.got_subcommand("backends")) {
            print_backends(out, tk.backends);
            return 0;
        }
        if (app.got_subcommand("algorithms")) {
            print_algorithms(out, tk.algorithms);
            return 0;
        }
        if (app.got_subcommand(run)) {
            const auto *chosen = run->get_subcommands().front();
            const auto &d = tk.algorithms.get(chosen->get_name());
            const auto &o = run_options.at(d.name);
            std::vector<std::string> raw;
            for (const auto &p : d.params) {
                raw.push_back(o.raw.at(p.name));
            }
            const Params params = parse_params(d, raw);
            const auto seed = o.seed ? o.seed : tk.config.seed;
            auto r = run_algorithm(d, params, tk.backends, o.backend, o.shots, seed);
            err << "backend: " << r.backend << "  seed: " << r.seed << "\n";
            print_result(out, r, verbosity);
            return 0;
        }
        if (experiment->got_subcommand(hist)) {
            const auto &d = tk.algorithms.get(hist_algorithm);
            const Params params = parse_params(d, hist_params);
            auto h = run_histogram(d, params, hist_shots, tk.backends, hist_backend,
                                   hist_seed ? hist_seed : tk.config.seed);
            err << "backend: " << hist_backend << "  seed: " << h.seed << "\n";
            out << h.csv;
            return 0;
        }
        if (experiment->got_subcommand(heat)) {
            const std::uint64_t seed = heat_seed ? *heat_seed : (tk.config.seed ? *tk.config.seed : entropy_seed());
            err << "seed: " << seed << "\n";
            auto grid = run_heatmap(max_bits, density_step, iterations, seed, std::max(1u, heat_jobs));
            if (!heat_out.empty()) {
                write_heatmap_csv(grid, heat_out);
                err << "wrote " << heat_out << "\n";
            }
            out << (heat_format == "csv" ? heatmap_csv(grid) : render_ascii(grid));
            return 0;
        }
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return 2;
    }
    err << app.help();
    return 1;
}

/// Menu loop over `in`. End of input quits with status 0.
class InteractiveSession {
   public:
    InteractiveSession(std::istream &in, std::ostream &out, const Toolkit &tk)
        : in_(in), out_(out), tk_(tk), backend_(tk.config.default_backend) {}

    int run() {
        if (tk_.config.verbosity > 0) {
            out_ << "qkit interactive session\n"
                 << "guest mode: only local simulator backends are available, no account needed\n";
        }
        while (true) {
            out_ << "\n[backend: " << backend_ << "]\n"
                 << "  1) list backends\n"
                 << "  2) select backend\n"
                 << "  3) list algorithms\n"
                 << "  4) run an algorithm\n"
                 << "  q) quit\n";
            auto choice = ask("> ");
            if (!choice || *choice == "q" || *choice == "quit" || *choice == "0") {
                return 0;
            }
            bool keep_going = true;
            if (*choice == "1") {
                print_backends(out_, tk_.backends);
            } else if (*choice == "2") {
                keep_going = select_backend();
            } else if (*choice == "3") {
                print_algorithms(out_, tk_.algorithms);
            } else if (*choice == "4") {
                keep_going = run_algorithm_menu();
            } else {
                out_ << "unknown choice '" << *choice << "'\n";
            }
            if (!keep_going) {
                return 0;
            }
        }
    }

   private:
    std::optional<std::string> ask(const std::string &prompt) {
        out_ << prompt << std::flush;
        std::string line;
        if (!std::getline(in_, line)) {
            out_ << "\n";
            return std::nullopt;
        }
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        return line;
    }

    /// Accepts a 1-based index into `names` or one of the names.
    static std::optional<std::string> pick(const std::vector<std::string> &names, const std::string &answer) {
        if (std::find(names.begin(), names.end(), answer) != names.end()) {
            return answer;
        }
        try {
            auto idx = std::get<std::uint64_t>(parse_value(ParamSpec::natural("choice", 1, names.size(), ""), answer));
            return names[idx - 1];
        } catch (const ValidationError &) {
            return std::nullopt;
        }
    }

    bool select_backend() {
        std::vector<std::string> names;
        for (const auto &b : tk_.backends.list()) {
            out_ << "  " << names.size() + 1 << ") " << b.name << "\n";
            names.push_back(b.name);
        }
        auto answer = ask("backend (number or name): ");
        if (!answer) {
            return false;
        }
        if (auto name = pick(names, *answer)) {
            backend_ = *name;
            out_ << "selected backend " << backend_ << "\n";
        } else {
            out_ << "unknown backend '" << *answer << "'\n";
        }
        return true;
    }

    bool run_algorithm_menu() {
        std::vector<std::string> names;
        for (const auto &[name, description] : tk_.algorithms.list()) {
            out_ << "  " << names.size() + 1 << ") " << name << "  " << description << "\n";
            names.push_back(name);
        }
        auto answer = ask("algorithm (number or name): ");
        if (!answer) {
            return false;
        }
        auto name = pick(names, *answer);
        if (!name) {
            out_ << "unknown algorithm '" << *answer << "'\n";
            return true;
        }
        const auto &d = tk_.algorithms.get(*name);
        out_ << d.explanation << "\n";

        Params params;
        for (const auto &spec : d.params) {
            while (true) {
                auto raw = ask(spec.name + " (" + spec.description + "): ");
                if (!raw) {
                    return false;
                }
                try {
                    params.set(spec.name, parse_value(spec, *raw));
                    break;
                } catch (const ValidationError &e) {
                    out_ << "error: " << e.what() << "\n";
                }
            }
        }

        std::uint64_t shots = 1;
        while (true) {
            auto mode = ask("mode: 1) run one time  2) run multiple times: ");
            if (!mode) {
                return false;
            }
            if (*mode == "1") {
                break;
            }
            if (*mode == "2") {
                auto n = ask_natural("shots", 2);
                if (!n) {
                    return false;
                }
                shots = *n;
                break;
            }
            out_ << "please answer 1 or 2\n";
        }

        std::optional<std::uint64_t> seed = tk_.config.seed;
        while (true) {
            auto raw = ask("seed (blank for random): ");
            if (!raw) {
                return false;
            }
            if (raw->empty()) {
                break;
            }
            try {
                seed = std::get<std::uint64_t>(
                    parse_value(ParamSpec::natural("seed", 0, std::numeric_limits<std::uint64_t>::max(), ""), *raw));
                break;
            } catch (const ValidationError &e) {
                out_ << "error: " << e.what() << "\n";
            }
        }

        try {
            auto r = qkit::run_algorithm(d, params, tk_.backends, backend_, shots, seed);
            out_ << "seed: " << r.seed << "\n";
            print_result(out_, r, tk_.config.verbosity);
            out_ << "replay: " << replay_command(d, params, r) << "\n";
        } catch (const Error &e) {
            out_ << "error: " << e.what() << "\n";
        }
        return true;
    }

    std::optional<std::uint64_t> ask_natural(const std::string &name, std::uint64_t min) {
        const auto spec = ParamSpec::natural(name, min, 10'000'000, "");
        while (true) {
            auto raw = ask(name + ": ");
            if (!raw) {
                return std::nullopt;
            }
            try {
                return std::get<std::uint64_t>(parse_value(spec, *raw));
            } catch (const ValidationError &e) {
                out_ << "error: " << e.what() << "\n";
            }
        }
    }

    std::istream &in_;
    std::ostream &out_;
    const Toolkit &tk_;
    std::string backend_;
};

inline int interactive_session(std::istream &in, std::ostream &out, const Toolkit &tk) {
    return InteractiveSession(in, out, tk).run();
}

/// Program entry: no arguments (or "interactive") starts the menu session.
inline int main_entry(int argc, char **argv, Toolkit tk) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty() || (args.size() == 1 && args[0] == "interactive")) {
        return interactive_session(std::cin, std::cout, tk);
    }
    return batch_command(args, tk, std::cout, std::cerr);
}

}  // namespace qkit::cli
