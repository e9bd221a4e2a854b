#include "scheme_forge/error.hpp"
#include "scheme_forge/kernels.hpp"
#include "scheme_forge/reconstruct.hpp"
#include "scheme_forge/serialize.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace scheme_forge;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kInvalid = 2;

struct RunConfig {
    std::optional<long> t;
    std::string krein;
    std::string abc;
    std::string in;
    std::string hemi;
    std::string out;
    std::string format = "json";
    std::optional<std::uint64_t> seed;
    bool exhaustive = false;
};

// Thrown for mathematical validation failures (exit 2).
struct ValidationFailure {
    std::string what;
};

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n')
            std::cout << '\n';
        return;
    }
    std::ofstream f(cfg.out);
    if (!f)
        throw Error(ErrorKind::Parse, "cannot open output file", cfg.out);
    f << text;
    if (!text.empty() && text.back() != '\n')
        f << '\n';
}

json read_json(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw Error(ErrorKind::Parse, "cannot open input file", path);
    try {
        return json::parse(f);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Parse, "input is not valid JSON", path + ": " + e.what());
    }
}

void require_t(const RunConfig& cfg) {
    if (!cfg.t)
        throw Error(ErrorKind::BadParameter, "--t is required");
}

void require_t3(const RunConfig& cfg) {
    if (cfg.t && *cfg.t != 3)
        throw Error(ErrorKind::BadParameter, "the concrete geometry is only available for t = 3",
                    "t = " + std::to_string(*cfg.t));
}

void fail_report(const ValidationReport& rep) {
    if (const Check* c = rep.first_failure())
        throw ValidationFailure{c->name + (c->witness.empty() ? "" : ": " + c->witness)};
}

std::array<std::size_t, 3> parse_abc(const std::string& text) {
    std::array<std::size_t, 3> v{};
    std::istringstream is(text);
    std::string item;
    std::size_t i = 0;
    while (std::getline(is, item, ',')) {
        if (i == 3)
            throw Error(ErrorKind::Parse, "--abc takes three comma-separated classes", text);
        try {
            std::size_t used = 0;
            const long x = std::stol(item, &used);
            if (used != item.size() || x < 1 || x > 4)
                throw std::invalid_argument(item);
            v[i++] = static_cast<std::size_t>(x);
        } catch (const std::logic_error&) {
            throw Error(ErrorKind::Parse, "--abc entries must be classes in 1..4", text);
        }
    }
    if (i != 3)
        throw Error(ErrorKind::Parse, "--abc takes three comma-separated classes", text);
    return v;
}

SchemeParameters params_for(const RunConfig& cfg) {
    if (!cfg.krein.empty()) {
        const KreinArray k = KreinArray::parse(cfg.krein);
        return derive_parameters(k, detect_family_parameter(k));
    }
    require_t(cfg);
    return derive_parameters(hemisystem_krein_array(*cfg.t), cfg.t);
}

GQ load_gq(const RunConfig& cfg) { return cfg.in.empty() ? build_hermitian_gq() : gq_from_json(read_json(cfg.in)); }

Hemisystem load_hemisystem(const RunConfig& cfg, const GQ& gq) {
    if (!cfg.hemi.empty())
        return hemisystem_from_json(read_json(cfg.hemi));
    return find_hemisystem(gq, {cfg.seed});
}

int cmd_params(const RunConfig& cfg) {
    if (!cfg.krein.empty() && cfg.t)
        throw Error(ErrorKind::Parse, "give either --t or --krein, not both");
    const SchemeParameters sp = params_for(cfg);
    const ValidationReport rep = validate(sp);
    emit(cfg, cfg.format == "md" ? to_markdown(sp) : to_json(sp).dump(2));
    fail_report(rep);
    return kOk;
}

int cmd_triple(const RunConfig& cfg) {
    require_t(cfg);
    const auto abc = parse_abc(cfg.abc);
    const TripleConfig tc{derive_parameters(hemisystem_krein_array(*cfg.t), cfg.t), abc[0], abc[1], abc[2]};
    if (tc.is_vacuous()) {
        emit(cfg, vacuous_triple_json().dump(2));
        return kOk;
    }
    const TripleSolution sol = nonneg_force(solve(build_widened_system(tc)));
    emit(cfg, triple_to_json(sol).dump(2));
    return kOk;
}

int cmd_build_gq(const RunConfig& cfg) {
    require_t3(cfg);
    const GQ gq = build_hermitian_gq();
    emit(cfg, to_json(gq).dump());
    fail_report(verify_gq(gq));
    return kOk;
}

int cmd_hemisystem(const RunConfig& cfg) {
    require_t3(cfg);
    const GQ gq = load_gq(cfg);
    const Hemisystem h = find_hemisystem(gq, {cfg.seed});
    emit(cfg, to_json(h).dump());
    return kOk;
}

int cmd_scheme(const RunConfig& cfg) {
    require_t3(cfg);
    const GQ gq = load_gq(cfg);
    const RelationScheme sch = scheme_from_hemisystem(gq, load_hemisystem(cfg, gq));
    const CountedParameters cp = verify_scheme(sch);
    emit(cfg, to_json(sch).dump());
    if (!cp.consistency)
        throw ValidationFailure{"scheme constancy: " + cp.witness};
    return kOk;
}

int cmd_reconstruct(const RunConfig& cfg) {
    RelationScheme sch = [&] {
        if (!cfg.in.empty())
            return scheme_from_json(read_json(cfg.in));
        const GQ gq = build_hermitian_gq();
        return scheme_from_hemisystem(gq, find_hemisystem(gq, {cfg.seed}));
    }();
    const ReconstructedGQ rec = reconstruct_gq(sch);
    const std::vector<Element> U = recover_hemisystem(sch, 0);
    ValidationReport checks = rec.report;
    checks.checks.push_back(check_dual_hemisystem(rec.cliques, U));
    emit(cfg, to_json(rec, U, checks).dump());
    fail_report(checks);
    return kOk;
}

// Stage-by-stage run at t = 3 with a pass/fail line per stage.
int cmd_pipeline(const RunConfig& cfg) {
    if (!cfg.t)
        throw Error(ErrorKind::BadParameter, "--t is required");
    require_t3(cfg);
    int status = kOk;
    auto stage = [&](const std::string& name, auto&& body) {
        if (status != kOk) {
            std::cout << "[skip] " << name << '\n';
            return;
        }
        try {
            const std::string detail = body();
            std::cout << "[pass] " << name << (detail.empty() ? "" : " (" + detail + ")") << '\n';
        } catch (const Error& e) {
            std::cout << "[FAIL] " << name << ": " << e.what() << (e.witness().empty() ? "" : " [" + e.witness() + "]")
                      << '\n';
            status = kInvalid;
        } catch (const ValidationFailure& v) {
            std::cout << "[FAIL] " << name << ": " << v.what << '\n';
            status = kInvalid;
        }
    };

    GQ gq;
    Hemisystem hemi;
    std::optional<RelationScheme> sch;
    const SchemeParameters params = derive_parameters(hemisystem_krein_array(3), 3);

    stage("build-gq", [&] {
        gq = build_hermitian_gq();
        fail_report(verify_gq(gq));
        return std::to_string(gq.point_count()) + " points, " + std::to_string(gq.line_count()) + " lines";
    });
    stage("hemisystem", [&] {
        hemi = find_hemisystem(gq, {cfg.seed});
        if (const Check c = check_hemisystem(gq, complement(gq, hemi)); !c.passed)
            throw ValidationFailure{"complement: " + c.witness};
        return std::to_string(hemi.lines.size()) + " lines";
    });
    stage("scheme", [&] {
        sch.emplace(scheme_from_hemisystem(gq, hemi));
        const CountedParameters cp = verify_scheme(*sch);
        if (!cp.consistency)
            throw ValidationFailure{cp.witness};
        return std::string("constancy holds");
    });
    stage("parameters", [&] {
        fail_report(validate(params));
        if (verify_scheme(*sch).to_tensor() != params.p)
            throw ValidationFailure{"counted p differs from the derived p"};
        return std::string("counted p equals derived p");
    });
    stage("triples", [&] {
        const auto systems = kernels::compile_systems(params);
        const auto triples = cfg.exhaustive ? kernels::all_triples(*sch)
                                            : kernels::sample_triples(*sch, 10000, cfg.seed.value_or(1));
        const kernels::TripleSweep sw = kernels::sweep_triples(*sch, systems, triples);
        if (sw.violations != 0) {
            const auto& w = *sw.witness;
            throw ValidationFailure{std::to_string(sw.violations) + " violating triples, first (" +
                                    std::to_string(w[0]) + ", " + std::to_string(w[1]) + ", " +
                                    std::to_string(w[2]) + ") equation " + std::to_string(sw.witness_equation)};
        }
        return std::to_string(sw.checked) + " triples";
    });
    std::optional<ReconstructedGQ> rec;
    stage("reconstruct", [&] {
        rec.emplace(reconstruct_gq(*sch));
        return std::to_string(rec->cliques.size()) + " cliques, dual order (" + std::to_string(rec->dual.s()) + ", " +
               std::to_string(rec->dual.t()) + ")";
    });
    stage("recover-U", [&] {
        const std::vector<Element> U = recover_hemisystem(*sch, hemi.lines.front());
        if (U != hemi.lines)
            throw ValidationFailure{"recovered set differs from the hemisystem"};
        if (const Check c = check_dual_hemisystem(rec->cliques, U); !c.passed)
            throw ValidationFailure{c.witness};
        return std::to_string(U.size()) + " elements";
    });
    std::cout << (status == kOk ? "pipeline: all stages pass" : "pipeline: failed") << '\n';
    return status;
}

} // namespace

int main(int argc, char** argv) {
    configure_threads_from_env();

    CLI::App app{"Exact parameter, triple and geometry toolkit for the hemisystem association schemes"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_t = [&](CLI::App* sub) {
        sub->add_option("--t", cfg.t, "odd family parameter t >= 3");
    };
    auto add_out = [&](CLI::App* sub) { sub->add_option("--out", cfg.out, "output path (default stdout)"); };

    auto* params = app.add_subcommand("params", "eigenmatrices, intersection and Krein numbers");
    add_t(params);
    params->add_option("--krein", cfg.krein, "Krein array \"b0,b1,b2,b3;c1,c2,c3,c4\"");
    params->add_option("--format", cfg.format, "json or md")->check(CLI::IsMember({"json", "md"}));
    add_out(params);

    auto* triple = app.add_subcommand("triple", "solve the widened triple intersection system");
    add_t(triple);
    triple->add_option("--abc", cfg.abc, "classes A,B,C in 1..4")->required();
    add_out(triple);

    auto* build_gq = app.add_subcommand("build-gq", "Hermitian GQ of order (9,3)");
    add_t(build_gq);
    add_out(build_gq);

    auto* hemisystem = app.add_subcommand("hemisystem", "search for a hemisystem");
    add_t(hemisystem);
    hemisystem->add_option("--in", cfg.in, "gq.json (default: Hermitian GQ)");
    hemisystem->add_option("--seed", cfg.seed, "shuffle the line order with this seed");
    add_out(hemisystem);

    auto* scheme = app.add_subcommand("scheme", "4-class scheme on the lines");
    add_t(scheme);
    scheme->add_option("--in", cfg.in, "gq.json (default: Hermitian GQ)");
    scheme->add_option("--hemi", cfg.hemi, "hemi.json (default: search)");
    scheme->add_option("--seed", cfg.seed, "hemisystem search seed");
    add_out(scheme);

    auto* reconstruct = app.add_subcommand("reconstruct", "recover the GQ and hemisystem from a scheme");
    reconstruct->add_option("--in", cfg.in, "scheme.json (default: build at t = 3)");
    reconstruct->add_option("--seed", cfg.seed, "hemisystem search seed");
    add_out(reconstruct);

    auto* pipeline = app.add_subcommand("pipeline", "end-to-end run with a line per stage");
    add_t(pipeline);
    pipeline->add_option("--seed", cfg.seed, "hemisystem search and triple sampling seed");
    pipeline->add_flag("--exhaustive", cfg.exhaustive, "check every ordered triple instead of a sample");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*params)
            return cmd_params(cfg);
        if (*triple)
            return cmd_triple(cfg);
        if (*build_gq)
            return cmd_build_gq(cfg);
        if (*hemisystem)
            return cmd_hemisystem(cfg);
        if (*scheme)
            return cmd_scheme(cfg);
        if (*reconstruct)
            return cmd_reconstruct(cfg);
        return cmd_pipeline(cfg);
    } catch (const ValidationFailure& v) {
        std::cerr << "validation failed: " << v.what << '\n';
        return kInvalid;
    } catch (const Error& e) {
        std::cerr << e.what();
        if (!e.witness().empty())
            std::cerr << " [" << e.witness() << ']';
        std::cerr << '\n';
        switch (e.kind()) {
        case ErrorKind::Parse:
        case ErrorKind::BadParameter:
            return kUsage;
        default:
            return kInvalid;
        }
    }
}
