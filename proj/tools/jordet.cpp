// jordet: exact-arithmetic toolkit for Jordan product determined points of
// M_n. Subcommands: decide, replay, derivable, multiplicative, kernel.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jordet/catalogs_bundled.hpp"
#include "jordet/json_io.hpp"

using namespace jordet;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 2;
constexpr int kExitNegative = 3;
constexpr int kExitInconclusive = 4;
constexpr int kExitContradiction = 5;

struct Clock {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    long long ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    }
};

ojson envelope(const std::string& command, ojson inputs, ojson result, long long elapsed_ms) {
    ojson e;
    e["schema_version"] = "1";
    e["command"] = command;
    e["inputs"] = std::move(inputs);
    e["result"] = std::move(result);
    e["elapsed_ms"] = elapsed_ms;
    return e;
}

void emit_json(const ojson& doc) { std::cout << doc.dump(2) << "\n"; }

int emit_error(const std::string& command, const std::string& format, const Error& err) {
    if (format == "text") {
        std::cerr << "error (" << err.code() << "): " << err.what() << "\n";
    } else {
        ojson doc;
        doc["schema_version"] = "1";
        doc["command"] = command;
        ojson e;
        e["code"] = err.code();
        e["message"] = err.what();
        doc["error"] = std::move(e);
        emit_json(doc);
    }
    return kExitInputError;
}

template <class F>
int with_field_ring(const RingSpec& spec, F&& f) {
    switch (spec.kind) {
        case RingKind::Rationals: {
            QRing r;
            return f(r);
        }
        case RingKind::PrimeField: {
            FpRing r(spec.modulus);
            return f(r);
        }
        case RingKind::ResidueRing:
            throw CapabilityError("ring " + spec.name() + " is replay-only; this command needs a field");
    }
    throw RingRejected("unknown ring kind");
}

std::string catalog_text(const std::string& name) {
    auto read_file = [](const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ParseError("cannot open catalog '" + path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    if (name == "t22" || name == "t23") {
        if (const char* dir = std::getenv("JORDET_CATALOG_DIR"))
            return read_file(std::string(dir) + "/" + name + ".cat");
        return std::string(name == "t22" ? bundled_t22() : bundled_t23());
    }
    return read_file(name);
}

/// Point indices of a matrix unit, or nullopt.
template <class R>
std::optional<std::pair<int, int>> unit_indices(const R& ring, const Matrix<R>& a) {
    std::optional<std::pair<int, int>> found;
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) {
            if (ring.is_zero(a.at(i, j))) continue;
            if (!ring.eq(a.at(i, j), ring.one()) || found) return std::nullopt;
            found = {i + 1, j + 1};
        }
    return found;
}

struct DecideArgs {
    int n = 0;
    std::string point, ring, strategy = "random", format = "json";
    std::uint64_t seed = 0;
    long long max_samples = 5000;
    bool no_early_exit = false;
    int threads = 1;
};

int run_decide(const DecideArgs& args) {
    auto spec = parse_ring(args.ring);
    return with_field_ring(spec, [&](const auto& ring) -> int {
        using R = std::decay_t<decltype(ring)>;
        Clock clock;
        auto a = parse_point(ring, args.n, args.point);

        Strategy<R> strategy;
        if (args.strategy == "exhaustive") {
            strategy = ExhaustiveStrategy{!args.no_early_exit, args.threads};
        } else if (args.strategy == "random") {
            strategy = RandomStrategy{args.seed, args.max_samples};
        } else if (args.strategy.rfind("structured:", 0) == 0) {
            auto name = args.strategy.substr(11);
            auto cat = parse_catalog(catalog_text(name));
            auto ij = unit_indices(ring, a);
            if (!ij) throw PreconditionFailed("structured strategy needs a matrix-unit point");
            std::vector<int> pt = cat.point_kind == PointKind::Diag ? std::vector<int>{ij->first}
                                                                    : std::vector<int>{ij->first, ij->second};
            if (cat.point_kind == PointKind::Diag && ij->first != ij->second)
                throw PreconditionFailed("catalog " + cat.name + " targets diagonal units");
            if (cat.point_kind == PointKind::OffDiag && ij->first == ij->second)
                throw PreconditionFailed("catalog " + cat.name + " targets off-diagonal units");
            strategy = StructuredStrategy<R>{name, structured_witnesses(ring, cat, args.n, pt)};
        } else {
            throw ParseError("unknown strategy '" + args.strategy + "'");
        }

        auto rep = decide(ring, a, strategy);

        ojson inputs;
        inputs["n"] = args.n;
        inputs["point"] = args.point;
        inputs["ring"] = spec.name();
        inputs["strategy"] = args.strategy;
        inputs["seed"] = args.seed;
        inputs["max_samples"] = args.max_samples;
        inputs["early_exit"] = !args.no_early_exit;
        inputs["threads"] = args.threads;

        if (args.format == "text") {
            std::cout << "decide: verdict " << verdict_name(rep.verdict) << "\n"
                      << "dim_sym2 " << rep.dim_sym2 << ", dim_kernel " << rep.dim_kernel << ", dim_span "
                      << rep.dim_span << "\n"
                      << "samples_used " << rep.samples_used << "\n";
            if (rep.certificate) std::cout << "certificate: present\n";
        } else {
            emit_json(envelope("decide", std::move(inputs), decision_result_json(ring, rep), clock.ms()));
        }
        switch (rep.verdict) {
            case Verdict::Determined: return kExitOk;
            case Verdict::NotDetermined: return kExitNegative;
            case Verdict::Inconclusive: return kExitInconclusive;
        }
        return kExitInconclusive;
    });
}

struct ReplayArgs {
    std::string catalog, ring, format = "json";
    int n = 0;
    int s = 0, p = 0, q = 0;
};

int run_replay(const ReplayArgs& args) {
    auto spec = parse_ring(args.ring);
    auto cat = parse_catalog(catalog_text(args.catalog));
    std::vector<int> pt;
    if (cat.point_kind == PointKind::Diag) {
        if (args.s <= 0) throw PreconditionFailed("catalog " + cat.name + " needs --s");
        pt = {args.s};
    } else {
        if (args.p <= 0 || args.q <= 0) throw PreconditionFailed("catalog " + cat.name + " needs --p and --q");
        pt = {args.p, args.q};
    }

    auto finish = [&](const auto& ring, const ReplayReport& rep, long long ms) -> int {
        ojson inputs;
        inputs["catalog"] = args.catalog;
        inputs["n"] = args.n;
        if (cat.point_kind == PointKind::Diag) {
            inputs["s"] = args.s;
        } else {
            inputs["p"] = args.p;
            inputs["q"] = args.q;
        }
        inputs["ring"] = ring.spec().name();
        if (args.format == "text") {
            std::cout << "replay: catalog " << rep.catalog << ", n " << rep.n << "\n"
                      << "instantiations_checked " << rep.instantiations_checked << "\n"
                      << "identity_failures " << rep.identity_failures.size() << ", membership_failures "
                      << rep.membership_failures.size() << "\n";
            for (const auto& f : rep.identity_failures)
                std::cout << "  identity " << f.step_id << " [" << f.assignment << "] (" << f.anchor
                          << "): " << f.detail << "\n";
            for (const auto& f : rep.membership_failures)
                std::cout << "  membership " << f.step_id << " [" << f.assignment << "] (" << f.anchor
                          << "): " << f.detail << "\n";
            if (rep.kernel_checked)
                std::cout << "kernel_span_ok " << (rep.kernel_span_ok ? "true" : "false") << " ("
                          << rep.relation_span_dim << "/" << rep.kernel_dim << ")\n";
            else
                std::cout << "kernel phase skipped (replay-only ring)\n";
            std::cout << "success " << (rep.success() ? "true" : "false") << "\n";
        } else {
            emit_json(envelope("replay", std::move(inputs), replay_result_json(rep), ms));
        }
        return rep.success() ? kExitOk : kExitNegative;
    };

    Clock clock;
    switch (spec.kind) {
        case RingKind::Rationals: {
            QRing ring;
            return finish(ring, run_catalog(ring, cat, args.n, pt), clock.ms());
        }
        case RingKind::PrimeField: {
            FpRing ring(spec.modulus);
            return finish(ring, run_catalog(ring, cat, args.n, pt), clock.ms());
        }
        case RingKind::ResidueRing: {
            ZmRing ring(spec.modulus);
            return finish(ring, run_catalog(ring, cat, args.n, pt), clock.ms());
        }
    }
    throw RingRejected("unknown ring kind");
}

struct DerivableArgs {
    int n = 0;
    std::string point, ring, strategy = "random", format = "json";
    std::uint64_t seed = 0;
    long long max_samples = 5000;
    bool no_early_exit = false;
};

int run_derivable(const DerivableArgs& args) {
    auto spec = parse_ring(args.ring);
    return with_field_ring(spec, [&](const auto& ring) -> int {
        using R = std::decay_t<decltype(ring)>;
        Clock clock;
        auto a = parse_point(ring, args.n, args.point);
        Strategy<R> strategy;
        if (args.strategy == "exhaustive")
            strategy = ExhaustiveStrategy{!args.no_early_exit, 1};
        else if (args.strategy == "random")
            strategy = RandomStrategy{args.seed, args.max_samples};
        else
            throw ParseError("derivable supports strategies exhaustive and random");
        auto rep = derivable_space(ring, a, strategy);

        ojson inputs;
        inputs["n"] = args.n;
        inputs["point"] = args.point;
        inputs["ring"] = spec.name();
        inputs["strategy"] = args.strategy;
        inputs["seed"] = args.seed;
        inputs["max_samples"] = args.max_samples;
        if (args.format == "text") {
            std::cout << "derivable: constraint_rank " << rep.constraint_rank << ", solution_dim "
                      << rep.solution_dim << "\n"
                      << "all_solutions_are_jordan_derivations "
                      << (rep.all_solutions_are_jordan_derivations ? "true" : "false") << "\n"
                      << "pairs_used " << rep.pairs_used << "\n";
        } else {
            emit_json(envelope("derivable", std::move(inputs), derivable_result_json(ring, rep), clock.ms()));
        }
        return rep.all_solutions_are_jordan_derivations ? kExitOk : kExitNegative;
    });
}

struct MultArgs {
    int n = 0;
    std::string point, ring, map_file, strategy = "random", format = "json";
    std::uint64_t seed = 0;
    long long max_samples = 5000;
};

int run_multiplicative(const MultArgs& args) {
    auto spec = parse_ring(args.ring);
    return with_field_ring(spec, [&](const auto& ring) -> int {
        using R = std::decay_t<decltype(ring)>;
        Clock clock;
        auto a = parse_point(ring, args.n, args.point);
        auto phi = linmap_from_file(ring, args.map_file);
        Strategy<R> strategy;
        if (args.strategy == "exhaustive")
            strategy = ExhaustiveStrategy{true, 1};
        else if (args.strategy == "random")
            strategy = RandomStrategy{args.seed, args.max_samples};
        else
            throw ParseError("multiplicative supports strategies exhaustive and random");
        auto rep = multiplicative_check(ring, phi, a, strategy);

        ojson inputs;
        inputs["n"] = args.n;
        inputs["point"] = args.point;
        inputs["ring"] = spec.name();
        inputs["strategy"] = args.strategy;
        inputs["seed"] = args.seed;
        inputs["max_samples"] = args.max_samples;
        inputs["map"] = args.map_file;
        if (args.format == "text") {
            std::cout << "multiplicative: outcome " << mult_outcome_name(rep.outcome) << "\n"
                      << "pairs_checked " << rep.pairs_checked << "\n"
                      << "paper_contradiction " << (rep.paper_contradiction ? "true" : "false") << "\n";
        } else {
            emit_json(envelope("multiplicative", std::move(inputs), mult_result_json(ring, rep), clock.ms()));
        }
        if (rep.paper_contradiction) return kExitContradiction;
        switch (rep.outcome) {
            case MultOutcome::ConclusionHolds: return kExitOk;
            case MultOutcome::HypothesisFails: return kExitNegative;
            case MultOutcome::ConclusionFails: return kExitNegative;
        }
        return kExitNegative;
    });
}

struct KernelArgs {
    int n = 0;
    std::string ring, format = "json";
    bool dump_basis = false;
};

int run_kernel(const KernelArgs& args) {
    auto spec = parse_ring(args.ring);
    return with_field_ring(spec, [&](const auto& ring) -> int {
        Clock clock;
        auto kernel = kernel_of_jordan(ring, args.n);
        ojson inputs;
        inputs["n"] = args.n;
        inputs["ring"] = spec.name();
        inputs["dump_basis"] = args.dump_basis;
        ojson result;
        result["dim_sym2"] = sym_dim(args.n);
        result["dim_kernel"] = static_cast<long>(kernel.size());
        if (args.dump_basis) {
            ojson basis = ojson::array();
            for (const auto& v : kernel) basis.push_back(vector_json(ring, v));
            result["basis"] = std::move(basis);
        }
        if (args.format == "text") {
            std::cout << "kernel: dim_sym2 " << sym_dim(args.n) << ", dim_kernel " << kernel.size() << "\n";
            if (args.dump_basis)
                for (const auto& v : kernel) {
                    for (std::size_t i = 0; i < v.size(); ++i)
                        std::cout << (i ? " " : "") << ring.str(v[i]);
                    std::cout << "\n";
                }
        } else {
            emit_json(envelope("kernel", std::move(inputs), std::move(result), clock.ms()));
        }
        return kExitOk;
    });
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact decision, proof replay and applications for Jordan product determined points of M_n"};
    app.require_subcommand(1);

    DecideArgs dec;
    auto* cmd_decide = app.add_subcommand("decide", "decide whether a point is Jordan product determined");
    cmd_decide->add_option("--n", dec.n, "matrix size")->required();
    cmd_decide->add_option("--point", dec.point, "point (e:i,j or m:{i,j=coeff;...})")->required();
    cmd_decide->add_option("--ring", dec.ring, "coefficient ring (q | fp:P | zm:M)")->required();
    cmd_decide->add_option("--strategy", dec.strategy, "exhaustive | random | structured:CATALOG");
    cmd_decide->add_option("--seed", dec.seed, "random strategy seed");
    cmd_decide->add_option("--max-samples", dec.max_samples, "random strategy sample budget");
    cmd_decide->add_flag("--no-early-exit", dec.no_early_exit, "complete the sweep even after saturation");
    cmd_decide->add_option("--threads", dec.threads, "workers for the exhaustive sweep");
    cmd_decide->add_option("--format", dec.format, "json | text");

    ReplayArgs rep;
    auto* cmd_replay = app.add_subcommand("replay", "replay a witness catalog at a point");
    cmd_replay->add_option("--catalog", rep.catalog, "t22 | t23 | path")->required();
    cmd_replay->add_option("--n", rep.n, "matrix size")->required();
    cmd_replay->add_option("--s", rep.s, "diagonal point index");
    cmd_replay->add_option("--p", rep.p, "off-diagonal row index");
    cmd_replay->add_option("--q", rep.q, "off-diagonal column index");
    cmd_replay->add_option("--ring", rep.ring, "coefficient ring (q | fp:P | zm:M)")->required();
    cmd_replay->add_option("--format", rep.format, "json | text");

    DerivableArgs der;
    auto* cmd_derivable = app.add_subcommand("derivable", "solve the space of maps Jordan-derivable at a point");
    cmd_derivable->add_option("--n", der.n, "matrix size")->required();
    cmd_derivable->add_option("--point", der.point, "point")->required();
    cmd_derivable->add_option("--ring", der.ring, "coefficient ring")->required();
    cmd_derivable->add_option("--strategy", der.strategy, "exhaustive | random");
    cmd_derivable->add_option("--seed", der.seed, "random strategy seed");
    cmd_derivable->add_option("--max-samples", der.max_samples, "random strategy sample budget");
    cmd_derivable->add_flag("--no-early-exit", der.no_early_exit, "complete the sweep even after saturation");
    cmd_derivable->add_option("--format", der.format, "json | text");

    MultArgs mul;
    auto* cmd_mult = app.add_subcommand("multiplicative", "check Jordan multiplicativity propagation for a map");
    cmd_mult->add_option("--n", mul.n, "matrix size")->required();
    cmd_mult->add_option("--point", mul.point, "point")->required();
    cmd_mult->add_option("--ring", mul.ring, "coefficient ring")->required();
    cmd_mult->add_option("--map", mul.map_file, "LinMap JSON file")->required();
    cmd_mult->add_option("--strategy", mul.strategy, "exhaustive | random");
    cmd_mult->add_option("--seed", mul.seed, "random strategy seed");
    cmd_mult->add_option("--max-samples", mul.max_samples, "random strategy sample budget");
    cmd_mult->add_option("--format", mul.format, "json | text");

    KernelArgs ker;
    auto* cmd_kernel = app.add_subcommand("kernel", "dimension (and basis) of ker J on Sym^2(M_n)");
    cmd_kernel->add_option("--n", ker.n, "matrix size")->required();
    cmd_kernel->add_option("--ring", ker.ring, "coefficient ring")->required();
    cmd_kernel->add_flag("--dump-basis", ker.dump_basis, "include the kernel basis");
    cmd_kernel->add_option("--format", ker.format, "json | text");

    std::string command = "?", format = "json";
    try {
        app.parse(argc, argv);
        if (cmd_decide->parsed()) {
            command = "decide";
            format = dec.format;
            return run_decide(dec);
        }
        if (cmd_replay->parsed()) {
            command = "replay";
            format = rep.format;
            return run_replay(rep);
        }
        if (cmd_derivable->parsed()) {
            command = "derivable";
            format = der.format;
            return run_derivable(der);
        }
        if (cmd_mult->parsed()) {
            command = "multiplicative";
            format = mul.format;
            return run_multiplicative(mul);
        }
        if (cmd_kernel->parsed()) {
            command = "kernel";
            format = ker.format;
            return run_kernel(ker);
        }
        return kExitInputError;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        return emit_error(command, format, ParseError(e.what()));
    } catch (const Error& e) {
        return emit_error(command, format, e);
    } catch (const std::exception& e) {
        return emit_error(command, format, Error("internal", e.what()));
    }
}
