// effkan: command-line driver for the simplicial Kan fibration toolkit.
// Subcommands: validate | lift | check | awfs-decompose | report.
// Exit codes: 0 success, 1 violations/counterexamples, 2 usage or parse errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "effkan/awfs.hpp"
#include "effkan/json_io.hpp"
#include "effkan/kan.hpp"
#include "effkan/simplicial.hpp"

namespace {

using namespace effkan;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw UsageError("parse error in '" + path + "': " + e.what());
    }
    return j;
}

LoadedInstance builtin_instance(const std::string& kind, const std::string& arg, int truncation) {
    LoadedInstance out;
    if (kind == "constant") {
        FiniteMalcevAlgebra M;
        if (arg == "heyting2") M = FiniteMalcevAlgebra::heyting2();
        else if (arg.size() > 1 && arg[0] == 'Z') M = FiniteMalcevAlgebra::cyclic(std::stoi(arg.substr(1)));
        else throw UsageError("unknown constant algebra '" + arg + "' (try Z2 or heyting2)");
        out.source = std::make_unique<TruncatedSimplicialSet>(constant_algebra(M, truncation));
    } else if (kind == "nerve") {
        if (arg.size() < 2 || arg[0] != 'Z') throw UsageError("unknown nerve group '" + arg + "' (try Z2)");
        out.source = std::make_unique<TruncatedSimplicialSet>(
            nerve_abelian(FiniteAbelianGroup::cyclic(std::stoi(arg.substr(1))), truncation));
    } else {
        throw UsageError("unknown generator kind '" + kind + "'");
    }
    out.target = std::make_unique<TruncatedSimplicialSet>(
        constant_algebra(FiniteMalcevAlgebra::singleton(), truncation));
    out.map = to_terminal(*out.source, *out.target);
    out.section = section_from_point(*out.source, 0);
    return out;
}

LoadedInstance load_instance(const std::string& generator, const std::string& input_path,
                             int truncation) {
    if (!input_path.empty()) return instance_from_json(read_json_file(input_path));
    if (generator.empty())
        throw UsageError("no instance: pass an input file or --generator kind:arg");
    const auto colon = generator.find(':');
    if (colon == std::string::npos) throw UsageError("generator must look like nerve:Z2");
    const std::string kind = generator.substr(0, colon);
    const std::string arg = generator.substr(colon + 1);
    if (kind == "file") return instance_from_json(read_json_file(arg));
    return builtin_instance(kind, arg, truncation);
}

ValidationReport validate_instance(const LoadedInstance& inst) {
    ValidationReport merged = validate(*inst.source);
    auto absorb = [&merged](const ValidationReport& r) {
        merged.instances += r.instances;
        merged.violations.insert(merged.violations.end(), r.violations.begin(), r.violations.end());
    };
    absorb(validate(*inst.target));
    absorb(validate(inst.map));
    if (inst.section) absorb(validate_section(inst.map, *inst.section));
    return merged;
}

void print_report(const CheckReport& report, const std::string& format) {
    if (format == "json") {
        std::cout << to_json(report).dump(2) << "\n";
        return;
    }
    std::cout << "checker " << report.checker << ": instances=" << report.instances
              << " independent=" << report.independent_count
              << " failures=" << report.failures.size() << " "
              << (report.pass() ? "PASS" : "FAIL") << "\n";
    for (const std::string& f : report.failures) std::cout << "  " << f << "\n";
}

// facet lists look like "(0,1);(1,0)" or "(0),(1)": split at top-level
// separators only
std::vector<std::string> split_facets(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : text) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (depth == 0 && (c == ',' || c == ';')) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
            continue;
        }
        if (c == ' ' && depth == 0) continue;
        cur += c;
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

struct CheckConfig {
    std::string generator;
    std::string input;
    int truncation = 4;
    int maxdim = 3;
    int jobs = 1;
    std::uint64_t cap = 10'000'000;
    std::uint64_t sample = 0;  // 0 = exhaustive
    std::uint64_t seed = 0;
    int max_ambient = 3;
    int max_len = 2;
    std::string format = "text";
};

void add_instance_flags(CLI::App* cmd, CheckConfig& cfg) {
    cmd->add_option("--generator", cfg.generator,
                    "builtin instance (constant:Z2, nerve:Z2, constant:heyting2, file:PATH)");
    cmd->add_option("--truncation", cfg.truncation, "truncation level for builtin generators");
    cmd->add_option("--format", cfg.format, "output format (text|json)")
        ->check(CLI::IsMember({"text", "json"}));
}

LiftAssignment assignment_for(const LoadedInstance& inst, int bound) {
    if (!inst.section)
        throw UsageError("instance has no degeneracy-section; cannot build Malcev lifts");
    return malcev_assignment(inst.map, *inst.section, bound);
}

void enforce_cap(const LoadedInstance& inst, const CheckConfig& cfg, int bound) {
    if (cfg.sample > 0) return;
    const std::uint64_t estimate = estimate_problem_count(inst.map, bound);
    if (estimate > cfg.cap)
        throw UsageError("refusing exhaustive sweep: estimated " + std::to_string(estimate) +
                         " problems exceeds cap " + std::to_string(cfg.cap) +
                         " (raise --cap or use --sample with --seed)");
}

CheckReport run_check(const std::string& property, const LoadedInstance& inst,
                      const CheckConfig& cfg) {
    const int N = inst.source->truncation;
    const SampleSpec sample{cfg.sample, cfg.seed};
    if (property == "kan" || property == "dp" || property == "dsquares") {
        if (cfg.maxdim > N) throw UsageError("maxdim exceeds the truncation");
        enforce_cap(inst, cfg, cfg.maxdim);
        const LiftAssignment L = assignment_for(inst, cfg.maxdim);
        if (property == "kan")
            return check_lift_correctness(inst.map, L, cfg.maxdim, cfg.jobs, sample);
        if (property == "dp")
            return check_degenerate_preferring(inst.map, L, cfg.maxdim, cfg.jobs, sample);
        return check_D_squares(inst.map, L, cfg.maxdim, cfg.jobs, sample);
    }
    if (property == "symmetric" || property == "effective") {
        if (cfg.maxdim + 1 > N)
            throw UsageError("maxdim+1 exceeds the truncation (pullbacks raise dimension)");
        enforce_cap(inst, cfg, cfg.maxdim + 1);
        const LiftAssignment L = assignment_for(inst, cfg.maxdim + 1);
        if (property == "symmetric")
            return check_symmetric_effective(inst.map, L, cfg.maxdim, cfg.jobs, sample);
        return check_effective(inst.map, duplicate_signs(L), cfg.maxdim, cfg.jobs, sample);
    }
    if (property == "facesquares") {
        if (cfg.max_ambient > N) throw UsageError("max-ambient exceeds the truncation");
        const int horn_dim = std::min(cfg.maxdim, N);
        const LiftAssignment L = assignment_for(inst, horn_dim);
        SquareSweepParams params{cfg.max_ambient, cfg.max_len, horn_dim, false};
        return check_face_squares(inst.map, provider_from(L), params, cfg.jobs, sample);
    }
    throw UsageError("unknown property '" + property +
                     "' (kan|dp|symmetric|effective|dsquares|facesquares)");
}

int cmd_validate(const CheckConfig& cfg, const std::string& input) {
    LoadedInstance inst = load_instance(cfg.generator, input, cfg.truncation);
    ValidationReport report = validate_instance(inst);
    const json doc = to_json(report, "validate");
    if (cfg.format == "json") {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << "validate: instances=" << report.instances
                  << " violations=" << report.violations.size() << " "
                  << (report.ok() ? "PASS" : "FAIL") << "\n";
        for (const std::string& v : report.violations) std::cout << "  " << v << "\n";
    }
    return report.ok() ? kExitOk : kExitViolation;
}

int cmd_lift(const CheckConfig& cfg, const std::string& horn, const std::string& facets,
             const std::string& base, const std::string& problem_path, bool trace) {
    LoadedInstance inst = load_instance(cfg.generator, cfg.input, cfg.truncation);
    if (ValidationReport v = validate_instance(inst); !v.ok()) {
        std::cerr << "instance invalid: " << v.violations.front() << "\n";
        return kExitViolation;
    }
    if (!inst.section) throw UsageError("instance has no degeneracy-section");

    LiftingProblem p;
    if (!problem_path.empty()) {
        p = problem_from_json(inst.map, read_json_file(problem_path));
    } else {
        const auto parts = split_facets(horn);
        if (parts.size() != 2) throw UsageError("--horn must look like n,m");
        const HornSpec spec{std::stoi(parts[0]), std::stoi(parts[1])};
        if (!horn_spec_valid(spec)) throw UsageError("invalid horn spec");
        p.horn.spec = spec;
        p.horn.facets.assign(static_cast<std::size_t>(spec.n) + 1, kNoElem);
        const auto names = split_facets(facets);
        if (static_cast<int>(names.size()) != spec.n)
            throw UsageError("expected " + std::to_string(spec.n) + " facets for this horn");
        std::size_t idx = 0;
        for (int k = 0; k <= spec.n; ++k) {
            if (k == spec.m) continue;
            const auto e = inst.source->find(spec.n - 1, names[idx++]);
            if (!e) throw UsageError("no element named '" + names[idx - 1] + "' at level " +
                                     std::to_string(spec.n - 1));
            p.horn.facets[static_cast<std::size_t>(k)] = *e;
        }
        if (!base.empty()) {
            const auto y = inst.target->find(spec.n, base);
            if (!y) throw UsageError("no base element named '" + base + "'");
            p.base = *y;
        } else if (inst.target->size(spec.n) == 1) {
            p.base = 0;
        } else {
            throw UsageError("--base required when the target is not a point");
        }
    }

    if (auto err = problem_error(inst.map, p)) {
        std::cerr << "invalid lifting problem: " << *err << "\n";
        return kExitViolation;
    }
    const auto w = trace_malcev(inst.map, *inst.section, p);
    const Elem filler = w.back().second;
    const int n = p.horn.spec.n;
    if (cfg.format == "json") {
        json doc{{"command", "lift"},
                 {"problem", problem_to_json(inst.map, p)},
                 {"filler", inst.source->name(n, filler)}};
        if (trace) {
            json steps = json::array();
            for (const auto& [k, value] : w)
                steps.push_back(json{{"k", k}, {"value", inst.source->name(n, value)}});
            doc["trace"] = steps;
        }
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << "filler = " << inst.source->name(n, filler) << "\n";
        if (trace)
            for (const auto& [k, value] : w)
                std::cout << "w[" << k << "] = " << inst.source->name(n, value) << "\n";
    }
    return kExitOk;
}

int cmd_check(const CheckConfig& cfg, const std::string& property) {
    LoadedInstance inst = load_instance(cfg.generator, cfg.input, cfg.truncation);
    if (ValidationReport v = validate_instance(inst); !v.ok()) {
        std::cerr << "instance invalid: " << v.violations.front() << "\n";
        return kExitViolation;
    }
    CheckReport report = run_check(property, inst, cfg);
    print_report(report, cfg.format);
    return report.pass() ? kExitOk : kExitViolation;
}

int cmd_report(const CheckConfig& cfg) {
    LoadedInstance inst = load_instance(cfg.generator, cfg.input, cfg.truncation);
    const ValidationReport v = validate_instance(inst);
    json reports = json::array();
    reports.push_back(to_json(v, "validate"));
    bool all_ok = v.ok();
    if (cfg.format == "text")
        std::cout << "validate: " << (v.ok() ? "PASS" : "FAIL") << " (" << v.instances
                  << " instances)\n";
    if (v.ok()) {
        for (const std::string property :
             {"kan", "dp", "symmetric", "effective", "dsquares", "facesquares"}) {
            CheckReport report = run_check(property, inst, cfg);
            all_ok = all_ok && report.pass();
            reports.push_back(to_json(report));
            if (cfg.format == "text") print_report(report, cfg.format);
        }
    }
    if (cfg.format == "json") {
        const json doc{{"command", "report"},
                       {"truncation", inst.source->truncation},
                       {"maxdim", cfg.maxdim},
                       {"reports", reports}};
        std::cout << doc.dump(2) << "\n";
    }
    return all_ok ? kExitOk : kExitViolation;
}

int cmd_awfs_decompose(const CheckConfig& cfg, const std::string& input) {
    const SequenceSquare sq = square_from_json(read_json_file(input));
    const auto squares = decompose_horizontal(sq);
    if (cfg.format == "json") {
        json doc{{"command", "awfs-decompose"}, {"decomposable", squares.has_value()}};
        if (squares) {
            json parts = json::array();
            for (const SequenceSquare& part : *squares) parts.push_back(to_json(part));
            doc["squares"] = parts;
        }
        std::cout << doc.dump(2) << "\n";
    } else if (squares) {
        std::cout << "decomposed into " << squares->size()
                  << " face/degeneracy squares (outermost first)\n";
        for (const SequenceSquare& part : *squares) std::cout << "  " << describe(part) << "\n";
    } else {
        std::cout << "NotFound: no face/degeneracy decomposition along the canonical word\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"effkan: lifting structures on truncated simplicial Malcev algebras"};
    app.require_subcommand(1);

    CheckConfig cfg;
    std::string positional_input;
    std::string property;
    std::string horn, facets, base, problem_path;
    bool trace = false;

    CLI::App* validate_cmd = app.add_subcommand("validate", "check all structural laws of an instance");
    add_instance_flags(validate_cmd, cfg);
    validate_cmd->add_option("input", positional_input, "instance JSON file");

    CLI::App* lift_cmd = app.add_subcommand("lift", "solve one horn lifting problem");
    add_instance_flags(lift_cmd, cfg);
    lift_cmd->add_option("--input", cfg.input, "instance JSON file");
    lift_cmd->add_option("--horn", horn, "horn spec n,m");
    lift_cmd->add_option("--facets", facets, "facet names in ascending k order, e.g. (1);(1)");
    lift_cmd->add_option("--base", base, "base simplex name (optional over a point)");
    lift_cmd->add_option("--problem", problem_path, "problem JSON file instead of flags");
    lift_cmd->add_flag("--trace", trace, "print the helper sequence w_k in encounter order");

    CLI::App* check_cmd = app.add_subcommand("check", "run one property checker exhaustively");
    add_instance_flags(check_cmd, cfg);
    check_cmd->add_option("property", property,
                          "kan | dp | symmetric | effective | dsquares | facesquares")
        ->required();
    check_cmd->add_option("--input", cfg.input, "instance JSON file");
    check_cmd->add_option("--maxdim", cfg.maxdim, "largest horn dimension swept");
    check_cmd->add_option("--jobs", cfg.jobs, "worker threads (output is identical for any value)");
    check_cmd->add_option("--cap", cfg.cap, "refuse exhaustive sweeps above this problem estimate");
    check_cmd->add_option("--sample", cfg.sample, "check a random sample instead of refusing");
    check_cmd->add_option("--seed", cfg.seed, "seed for --sample");
    check_cmd->add_option("--max-ambient", cfg.max_ambient, "facesquares: largest sieve ambient");
    check_cmd->add_option("--max-len", cfg.max_len, "facesquares: longest target sequence");

    CLI::App* report_cmd = app.add_subcommand("report", "validate plus every checker");
    add_instance_flags(report_cmd, cfg);
    report_cmd->add_option("--input", cfg.input, "instance JSON file");
    report_cmd->add_option("--maxdim", cfg.maxdim, "largest horn dimension swept");
    report_cmd->add_option("--jobs", cfg.jobs, "worker threads");
    report_cmd->add_option("--max-ambient", cfg.max_ambient, "facesquares: largest sieve ambient");
    report_cmd->add_option("--max-len", cfg.max_len, "facesquares: longest target sequence");

    CLI::App* decompose_cmd =
        app.add_subcommand("awfs-decompose", "split a pullback square into face/degeneracy squares");
    decompose_cmd->add_option("input", positional_input, "square JSON file")->required();
    decompose_cmd->add_option("--format", cfg.format, "output format (text|json)")
        ->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(validate_cmd)) return cmd_validate(cfg, positional_input);
        if (app.got_subcommand(lift_cmd)) return cmd_lift(cfg, horn, facets, base, problem_path, trace);
        if (app.got_subcommand(check_cmd)) return cmd_check(cfg, property);
        if (app.got_subcommand(report_cmd)) return cmd_report(cfg);
        if (app.got_subcommand(decompose_cmd)) return cmd_awfs_decompose(cfg, positional_input);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
