#include "cli.hpp"

#include "crnf/error.hpp"
#include "crnf/io.hpp"
#include "crnf/random.hpp"

#include <CLI11.hpp>

#include <optional>
#include <ostream>
#include <string>

namespace crnf::cli {

namespace {

struct RunConfig {
    std::string command;
    std::string input;
    std::string output;
    std::string map;
    std::optional<int> degree;
    bool moser_only = false;
    bool verify_after = false;
    bool emit_map = false;
    std::uint64_t seed = 1;
    int n_vars = 1;
    int s = 3;
    std::string profile = "generic";
};

/// Raised for bad option combinations; reported like a parse error.
struct UsageError : ParseError {
    using ParseError::ParseError;
};

Manifold load_manifold(const RunConfig &cfg)
{
    if (cfg.input.empty()) {
        throw UsageError(cfg.command + ": --input is required");
    }
    io::Json doc = io::read_json_file(cfg.input);
    // A report produced by another command carries its manifold inside.
    if (doc.is_object() && doc.contains("status") && doc.contains("manifold")) {
        doc = doc["manifold"];
    }
    Manifold m = io::manifold_from_json(doc);
    if (cfg.degree) {
        if (*cfg.degree > m.max_degree()) {
            throw UsageError("--degree " + std::to_string(*cfg.degree) + " exceeds the document degree " +
                             std::to_string(m.max_degree()));
        }
        m = m.truncated(*cfg.degree);
    }
    return m;
}

void emit(const RunConfig &cfg, const io::Json &doc, std::ostream &out)
{
    const std::string text = doc.dump(2) + "\n";
    if (cfg.output.empty()) {
        out << text;
    } else {
        io::write_file_atomic(cfg.output, text);
    }
}

std::string describe_s(const InvariantData &inv)
{
    if (!inv.s) {
        return "s undetermined";
    }
    return "s=" + std::to_string(*inv.s) + (inv.nondegenerate ? ", nondegenerate" : ", degenerate");
}

// Trace and reality conditions only.
ResidualReport moser_residuals(const Manifold &m)
{
    return verify_normal_form(m, InvariantData{});
}

int cmd_invariants(const RunConfig &cfg, std::ostream &out, std::ostream &err)
{
    const Manifold m = load_manifold(cfg);
    const MoserResult r = extended_moser(m);
    const InvariantData inv = moser_invariants(r.normalized);
    io::ReportParts parts{"invariants", &inv, cfg.emit_map ? &r.map : nullptr, &r.normalized};
    emit(cfg, io::report_to_json(parts), out);
    err << "invariants: " << describe_s(inv) << "\n";
    return kExitOk;
}

int moser_report(const RunConfig &cfg, const Manifold &m, std::ostream &out, std::ostream &err)
{
    const MoserResult r = extended_moser(m);
    const InvariantData inv = moser_invariants(r.normalized);
    const ResidualReport res = moser_residuals(r.normalized);
    const std::vector<SolverLogEntry> log;
    const bool ok = r.certificate.ok() && res.all_zero();
    io::ReportParts parts{ok ? kStatusPartial : "certificate violated", &inv, cfg.emit_map ? &r.map : nullptr,
                          &r.normalized, &res, &log};
    emit(cfg, io::report_to_json(parts), out);
    err << "moser: " << parts.status << ", " << describe_s(inv) << ", " << res.nonzero_count()
        << " nonzero residuals\n";
    return ok ? kExitOk : kExitDomain;
}

int cmd_moser(const RunConfig &cfg, std::ostream &out, std::ostream &err)
{
    return moser_report(cfg, load_manifold(cfg), out, err);
}

int cmd_normalize(const RunConfig &cfg, std::ostream &out, std::ostream &err)
{
    const Manifold m = load_manifold(cfg);
    if (cfg.moser_only) {
        return moser_report(cfg, m, out, err);
    }
    NormalFormReport r;
    try {
        r = full_normalize(m);
    } catch (const DegenerateDeltaError &e) {
        const Manifold partial = extended_moser(m).normalized;
        const InvariantData inv = moser_invariants(partial);
        io::ReportParts parts{"degenerate Delta", &inv, nullptr, &partial};
        emit(cfg, io::report_to_json(parts), out);
        err << "normalize: " << e.what() << "\n";
        return kExitDomain;
    }
    ResidualReport residuals = r.residuals;
    std::string status = r.status;
    if (cfg.verify_after) {
        // Invariants are re-derived from the output alone.
        residuals = verify_normal_form(r.normalized, moser_invariants(r.normalized));
        if (!residuals.all_zero()) {
            status = "verification failed";
        }
    }
    io::ReportParts parts{status, &r.invariants, cfg.emit_map ? &r.map : nullptr, &r.normalized, &residuals,
                          &r.solver_log};
    emit(cfg, io::report_to_json(parts), out);
    err << "normalize: " << status << ", " << describe_s(r.invariants) << ", " << r.solver_log.size()
        << " kernel solves, " << residuals.nonzero_count() << " nonzero residuals\n";
    return status == "verification failed" ? kExitDomain : kExitOk;
}

int cmd_verify(const RunConfig &cfg, std::ostream &out, std::ostream &err)
{
    const Manifold m = load_manifold(cfg);
    const InvariantData inv = moser_invariants(m);
    const ResidualReport res = verify_normal_form(m, inv);
    const std::string status = res.all_zero() ? "normal form verified" : "normalization conditions violated";
    io::ReportParts parts{status, &inv, nullptr, &m, &res};
    emit(cfg, io::report_to_json(parts), out);
    err << "verify: " << status << ", " << res.nonzero_count() << " of " << res.entries.size()
        << " conditions nonzero\n";
    return kExitOk;
}

int cmd_apply(const RunConfig &cfg, std::ostream &out, std::ostream &err)
{
    const Manifold m = load_manifold(cfg);
    if (cfg.map.empty()) {
        throw UsageError("apply: --map is required");
    }
    io::Json doc = io::read_json_file(cfg.map);
    if (doc.is_object() && doc.contains("status") && doc.contains("map")) {
        doc = doc["map"];
    }
    const FormalMap t = io::map_from_json(doc);
    if (t.n_vars() != m.n_vars()) {
        throw UsageError("apply: map has " + std::to_string(t.n_vars()) + " variables, manifold has " +
                         std::to_string(m.n_vars()));
    }
    const Manifold image = push_forward(m, t);
    io::ReportParts parts{"applied", nullptr, cfg.emit_map ? &t : nullptr, &image};
    emit(cfg, io::report_to_json(parts), out);
    err << "apply: pushed forward through grade " << t.max_normal_weight() << "\n";
    return kExitOk;
}

int cmd_random(const RunConfig &cfg, std::ostream &out, std::ostream &err)
{
    if (!cfg.degree) {
        throw UsageError("random: --degree is required");
    }
    const Manifold m = random_manifold(cfg.seed, cfg.n_vars, *cfg.degree, cfg.s, parse_profile(cfg.profile));
    emit(cfg, io::manifold_to_json(m), out);
    err << "random: seed " << cfg.seed << ", " << m.phi().parts().size() << " parts\n";
    return kExitOk;
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    RunConfig cfg;
    CLI::App app{"Exact normal forms of codimension-two real submanifolds at a CR singular point", "crnf"};
    app.add_option("command", cfg.command, "invariants, moser, normalize, verify, apply or random")
        ->required()
        ->check(CLI::IsMember({"invariants", "moser", "normalize", "verify", "apply", "random"}));
    app.add_option("--input", cfg.input, "manifold document");
    app.add_option("--output", cfg.output, "report path (stdout when absent)");
    app.add_option("--degree", cfg.degree, "truncation degree, at most the document degree")
        ->check(CLI::NonNegativeNumber);
    app.add_flag("--moser-only", cfg.moser_only, "normalize: stop after the partial normal form");
    app.add_flag("--verify-after", cfg.verify_after, "normalize: re-verify the output independently");
    app.add_flag("--emit-map", cfg.emit_map, "include the map in the report");
    app.add_option("--seed", cfg.seed, "random: generator seed");
    app.add_option("--map", cfg.map, "apply: map document");
    app.add_option("--n-vars", cfg.n_vars, "random: number of variables")->check(CLI::Range(1, 7));
    app.add_option("--s", cfg.s, "random: degree of Delta")->check(CLI::Range(3, 255));
    app.add_option("--profile", cfg.profile, "random: pure-only, mixed or generic");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "crnf: " << e.what() << "\n";
        return kExitIo;
    }

    try {
        if (cfg.command == "invariants") {
            return cmd_invariants(cfg, out, err);
        }
        if (cfg.command == "moser") {
            return cmd_moser(cfg, out, err);
        }
        if (cfg.command == "normalize") {
            return cmd_normalize(cfg, out, err);
        }
        if (cfg.command == "verify") {
            return cmd_verify(cfg, out, err);
        }
        if (cfg.command == "apply") {
            return cmd_apply(cfg, out, err);
        }
        return cmd_random(cfg, out, err);
    } catch (const ParseError &e) {
        err << "crnf: " << e.what() << "\n";
        return kExitIo;
    } catch (const IoError &e) {
        err << "crnf: " << e.what() << "\n";
        return kExitIo;
    } catch (const DimensionError &e) {
        err << "crnf: " << e.what() << "\n";
        return kExitIo;
    } catch (const DomainError &e) {
        err << "crnf: " << e.what() << "\n";
        return kExitDomain;
    }
}

} // namespace crnf::cli
